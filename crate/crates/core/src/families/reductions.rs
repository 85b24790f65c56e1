use crate::error::{Result, SscError};
use crate::graph::{content_lines, expect_end, Graph};

/// Exact cover by 3-sets: universe {0..3n}, sets of three distinct elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X3cInstance {
    universe: usize,
    sets: Vec<[usize; 3]>,
}

impl X3cInstance {
    pub fn new(universe: usize, sets: Vec<[usize; 3]>) -> Result<Self> {
        if !universe.is_multiple_of(3) {
            return Err(SscError::Contract(format!("universe size {universe} not a multiple of 3")));
        }
        for s in &sets {
            if s.iter().any(|&x| x >= universe) {
                return Err(SscError::Contract(format!("set {s:?} leaves the universe")));
            }
            if s[0] == s[1] || s[1] == s[2] || s[0] == s[2] {
                return Err(SscError::Contract(format!("set {s:?} has a repeated element")));
            }
        }
        Ok(X3cInstance { universe, sets })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn sets(&self) -> &[[usize; 3]] {
        &self.sets
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("x3c {} {}\n", self.universe, self.sets.len());
        for s in &self.sets {
            out.push_str(&format!("{} {} {}\n", s[0], s[1], s[2]));
        }
        out
    }
}

/// `x3c <3n> <m>` followed by m lines of three 0-based element indices.
pub fn parse_x3c(text: &str) -> Result<X3cInstance> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| SscError::parse(1, "missing 'x3c <3n> <m>' header"))?;
    if header[0] != "x3c" || header.len() < 3 {
        return Err(SscError::parse(hl, "expected 'x3c <3n> <m>' header"));
    }
    let num = |t: &str, line: usize| {
        t.parse::<usize>()
            .map_err(|_| SscError::parse(line, format!("bad number '{t}'")))
    };
    let universe = num(header[1], hl)?;
    let m = num(header[2], hl)?;
    expect_end(&header, 3, hl)?;
    let mut sets = Vec::with_capacity(m);
    for (line, toks) in lines {
        if toks.len() != 3 {
            return Err(SscError::parse(line, "expected three elements"));
        }
        sets.push([num(toks[0], line)?, num(toks[1], line)?, num(toks[2], line)?]);
    }
    if sets.len() != m {
        return Err(SscError::parse(hl, format!("header promises {m} sets, found {}", sets.len())));
    }
    X3cInstance::new(universe, sets).map_err(|e| SscError::parse(hl, e.to_string()))
}

/// Brute force over sub-collections of size universe/3.
pub fn x3c_has_exact_cover(inst: &X3cInstance) -> bool {
    fn go(inst: &X3cInstance, from: usize, covered: u64, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        (from..inst.sets.len()).any(|j| {
            let mask = inst.sets[j].iter().fold(0u64, |m, &x| m | 1 << x);
            mask & covered == 0 && go(inst, j + 1, covered | mask, left - 1)
        })
    }
    assert!(inst.universe <= 64, "brute force limited to 64 elements");
    go(inst, 0, 0, inst.universe / 3)
}

/// Vertex ids of the gadgets in the reduced graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X3cGadgets {
    pub x: Vec<usize>,
    pub d: Vec<usize>,
    pub t: Vec<usize>,
    pub v: Vec<usize>,
    pub v_prime: Vec<usize>,
    pub palette: Vec<usize>,
}

fn star(centre: usize, leaves: usize, edges: &mut Vec<(usize, usize)>, fresh: &mut dyn FnMut() -> usize) {
    for _ in 0..leaves {
        edges.push((centre, fresh()));
    }
}

/// Element gadget: x_i – d_i, d_i with q children each carrying q+1 leaves.
/// Set gadget: t_j with leaves v_j, v'_j; x_i – t_j when element i lies in
/// set j. Palette: path p_1..p_q, each with q+1 leaves; v_j – p_1..p_{q-1}.
pub fn x3c_to_ssc(inst: &X3cInstance, q: usize) -> Result<(Graph, X3cGadgets)> {
    if q < 2 {
        return Err(SscError::Contract("the reduction needs q >= 2".into()));
    }
    let mut n = 0;
    let mut fresh = || {
        n += 1;
        n - 1
    };
    let mut edges = Vec::new();
    let mut gad = X3cGadgets {
        x: Vec::new(),
        d: Vec::new(),
        t: Vec::new(),
        v: Vec::new(),
        v_prime: Vec::new(),
        palette: Vec::new(),
    };
    for _ in 0..inst.universe {
        let x = fresh();
        let d = fresh();
        edges.push((x, d));
        for _ in 0..q {
            let c = fresh();
            edges.push((d, c));
            star(c, q + 1, &mut edges, &mut fresh);
        }
        gad.x.push(x);
        gad.d.push(d);
    }
    for s in &inst.sets {
        let t = fresh();
        let v = fresh();
        let v2 = fresh();
        edges.extend([(t, v), (t, v2)]);
        for &e in s {
            edges.push((gad.x[e], t));
        }
        gad.t.push(t);
        gad.v.push(v);
        gad.v_prime.push(v2);
    }
    for i in 0..q {
        let p = fresh();
        if i > 0 {
            edges.push((gad.palette[i - 1], p));
        }
        star(p, q + 1, &mut edges, &mut fresh);
        gad.palette.push(p);
    }
    for &v in &gad.v {
        for &p in &gad.palette[..q - 1] {
            edges.push((v, p));
        }
    }
    Ok((Graph::from_edges(n, &edges)?, gad))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordalGadgets {
    /// v'_i for every source vertex (a clique).
    pub vertex: Vec<usize>,
    /// e'_j for every source edge, in `g.edges()` order.
    pub edge: Vec<usize>,
    /// r_j, root of the subtree hung on e'_j.
    pub root: Vec<usize>,
}

/// Chordal graph that is k-colourable iff g has a vertex cover of size k.
pub fn vc_to_chordal(g: &Graph, k: usize) -> Result<(Graph, ChordalGadgets)> {
    if k == 0 {
        return Err(SscError::Contract("the reduction needs k >= 1".into()));
    }
    let nv = g.n();
    let mut edges: Vec<(usize, usize)> =
        (0..nv).flat_map(|u| (u + 1..nv).map(move |v| (u, v))).collect();
    let mut next = nv;
    let mut gad = ChordalGadgets {
        vertex: (0..nv).collect(),
        edge: Vec::new(),
        root: Vec::new(),
    };
    for (a, b) in g.edges() {
        let e = next;
        let r = next + 1;
        next += 2;
        edges.extend([(a, e), (b, e), (e, r)]);
        for _ in 0..k {
            let c = next;
            next += 1;
            edges.push((r, c));
            for _ in 0..=k {
                edges.push((c, next));
                next += 1;
            }
        }
        gad.edge.push(e);
        gad.root.push(r);
    }
    Ok((Graph::from_edges(next, &edges)?, gad))
}

/// Maximum cardinality search, then a check that the reverse visiting order
/// is a perfect elimination ordering.
pub fn is_chordal(g: &Graph) -> bool {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex");
        visited[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !visited[w] {
                weight[w] += 1;
            }
        }
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // for v, its earlier neighbours must form a clique; it suffices that the
    // latest of them is adjacent to all the others
    order.iter().all(|&v| {
        let earlier: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| pos[w] < pos[v]).collect();
        let Some(&p) = earlier.iter().max_by_key(|&&w| pos[w]) else {
            return true;
        };
        earlier.iter().all(|&w| w == p || g.has_edge(p, w))
    })
}
