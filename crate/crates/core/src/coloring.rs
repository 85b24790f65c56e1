use std::fmt::Write as _;

use crate::error::{Result, SscError};
use crate::graph::{content_lines, expect_end, Graph};

/// Colour per vertex, with 0 meaning "uncoloured". `q` is the palette size
/// the colouring was produced for.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
    q: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    Undominated,
    ColourRepeated(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub valid: bool,
    pub violations: Vec<(usize, ViolationKind)>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, q: usize) -> Result<Self> {
        if let Some((v, &c)) = colors.iter().enumerate().find(|(_, &c)| c > q) {
            return Err(SscError::Contract(format!(
                "vertex {v} has colour {c} outside palette 1..={q}"
            )));
        }
        Ok(Coloring { colors, q })
    }

    /// Palette size taken as the largest colour present.
    pub fn from_colors(colors: Vec<usize>) -> Self {
        let q = colors.iter().copied().max().unwrap_or(0);
        Coloring { colors, q }
    }

    pub fn uncolored(n: usize, q: usize) -> Self {
        Coloring { colors: vec![0; n], q }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn palette(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn with_palette(mut self, q: usize) -> Result<Self> {
        let colors = std::mem::take(&mut self.colors);
        Self::new(colors, q)
    }

    pub fn num_colors_used(&self) -> usize {
        let mut seen: Vec<usize> = self.colors.iter().copied().filter(|&c| c != 0).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Renumbers used colours to 1..k in order of first appearance.
    pub fn compacted(&self) -> Coloring {
        let mut map = std::collections::HashMap::new();
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if c == 0 {
                    0
                } else {
                    let next = map.len() + 1;
                    *map.entry(c).or_insert(next)
                }
            })
            .collect();
        Coloring::from_colors(colors)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, &c) in self.colors.iter().enumerate() {
            if c != 0 {
                writeln!(s, "c {v} {c}").unwrap();
            }
        }
        s
    }
}

/// Parses `c <v> <colour>` lines for a graph on `n` vertices.
pub fn parse_coloring(text: &str, n: usize) -> Result<Coloring> {
    let mut colors = vec![0; n];
    for (ln, toks) in content_lines(text) {
        if toks[0] != "c" {
            return Err(SscError::parse(ln, format!("unknown record '{}'", toks[0])));
        }
        let num = |i: usize| -> Result<usize> {
            let t = toks
                .get(i)
                .ok_or_else(|| SscError::parse(ln, "expected 'c <v> <colour>'"))?;
            t.parse()
                .map_err(|_| SscError::parse(ln, format!("bad integer '{t}'")))
        };
        let (v, c) = (num(1)?, num(2)?);
        expect_end(&toks, 3, ln)?;
        if v >= n {
            return Err(SscError::parse(ln, format!("vertex {v} out of range (n={n})")));
        }
        colors[v] = c;
    }
    Ok(Coloring::from_colors(colors))
}

/// Checks the definition directly: every closed neighbourhood holds at least
/// one coloured vertex and no colour twice.
pub fn verify(g: &Graph, col: &Coloring) -> Result<ValidityReport> {
    if col.len() != g.n() {
        return Err(SscError::Contract(format!(
            "colouring covers {} vertices, graph has {}",
            col.len(),
            g.n()
        )));
    }
    let mut violations = Vec::new();
    // stamp[c] == v+1 means colour c already seen in N[v]
    let mut stamp = vec![0usize; col.palette() + 1];
    let mut reported = vec![0usize; col.palette() + 1];
    for v in 0..g.n() {
        let mut dominated = false;
        let mut visit = |w: usize, dominated: &mut bool| {
            let c = col.color(w);
            if c == 0 {
                return;
            }
            *dominated = true;
            if stamp[c] == v + 1 {
                if reported[c] != v + 1 {
                    reported[c] = v + 1;
                    violations.push((v, ViolationKind::ColourRepeated(c)));
                }
            } else {
                stamp[c] = v + 1;
            }
        };
        visit(v, &mut dominated);
        for &w in g.neighbors(v) {
            visit(w, &mut dominated);
        }
        if !dominated {
            violations.push((v, ViolationKind::Undominated));
        }
    }
    Ok(ValidityReport {
        valid: violations.is_empty(),
        violations,
    })
}

/// Shorthand for `verify(..).valid`, treating a length mismatch as invalid.
pub fn is_valid(g: &Graph, col: &Coloring) -> bool {
    verify(g, col).map(|r| r.valid).unwrap_or(false)
}
