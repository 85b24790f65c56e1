use std::collections::BTreeSet;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use ssc_core::families::{generate, FamilySpec};
use ssc_core::param::{cluster_deletion_set, min_vertex_cover, modular_decomposition, type_partition};
use ssc_core::{solve, Algorithm, Graph, SolveOptions, SscError};

use crate::family::sized;

pub const HEADER: &str = "instance,family,size,algo,q,n,m,vc,t,cvd,mw,answer,colors,wall_ms";

/// Parameter searches stop at these sizes; the column is left empty beyond.
const VC_CAP: usize = 20;
const CVD_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixLine {
    pub family: String,
    pub sizes: Vec<usize>,
    pub algos: Vec<Algorithm>,
    pub qs: Vec<usize>,
}

fn list<T>(field: &str, ln: usize, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    field
        .split(',')
        .map(|t| f(t).with_context(|| format!("matrix line {ln}")))
        .collect()
}

/// `<family> <sizes> <algos> <qs>` per line, each a comma list; `#` starts a
/// comment. Example: `path 6,9,12 oracle,twdp 1`.
pub fn parse_matrix(text: &str) -> Result<Vec<MatrixLine>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ln = i + 1;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 {
            bail!("matrix line {ln}: expected '<family> <sizes> <algos> <qs>'");
        }
        let num = |t: &str| t.parse::<usize>().with_context(|| format!("bad number '{t}'"));
        out.push(MatrixLine {
            family: toks[0].to_string(),
            sizes: list(toks[1], ln, num)?,
            algos: list(toks[2], ln, |t| Ok(t.parse::<Algorithm>()?))?,
            qs: list(toks[3], ln, num)?,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Yes(usize),
    No,
    /// Budget exceeded or the algorithm does not apply.
    Skipped(String),
}

#[derive(Debug, Clone)]
pub struct Record {
    pub instance: String,
    pub family: String,
    pub size: usize,
    pub algo: Algorithm,
    pub q: usize,
    pub n: usize,
    pub m: usize,
    pub params: Params,
    pub answer: Answer,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Default)]
pub struct Params {
    pub vc: Option<usize>,
    pub t: usize,
    pub cvd: Option<usize>,
    pub mw: usize,
}

fn params(g: &Graph) -> Params {
    Params {
        vc: min_vertex_cover(g, VC_CAP).ok().flatten().map(|x| x.len()),
        t: type_partition(g).len(),
        cvd: cluster_deletion_set(g, CVD_CAP).ok().flatten().map(|x| x.len()),
        mw: modular_decomposition(g).width(),
    }
}

impl Record {
    pub fn to_csv(&self) -> String {
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        let (answer, colors) = match &self.answer {
            Answer::Yes(c) => ("YES", c.to_string()),
            Answer::No => ("NO", String::new()),
            Answer::Skipped(_) => ("SKIP", String::new()),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{:.3}",
            self.instance,
            self.family,
            self.size,
            self.algo,
            self.q,
            self.n,
            self.m,
            opt(self.params.vc),
            self.params.t,
            opt(self.params.cvd),
            self.params.mw,
            answer,
            colors,
            self.wall_ms
        )
    }

    pub fn to_text(&self) -> String {
        let answer = match &self.answer {
            Answer::Yes(c) => format!("YES ({c} colours)"),
            Answer::No => "NO".into(),
            Answer::Skipped(why) => format!("skipped: {why}"),
        };
        format!(
            "{:<16} {:<9} q={} n={} m={}: {} [{:.1} ms]",
            self.instance, self.algo, self.q, self.n, self.m, answer, self.wall_ms
        )
    }
}

struct Job {
    instance: String,
    family: String,
    size: usize,
    spec: FamilySpec,
    algo: Algorithm,
    q: usize,
}

/// Expands the matrix in declaration order: size, then q, then algorithm.
fn jobs(matrix: &[MatrixLine], seed: u64) -> Result<Vec<Job>> {
    let mut out = Vec::new();
    for line in matrix {
        for &size in &line.sizes {
            let spec = sized(&line.family, size, seed)?;
            for &q in &line.qs {
                for &algo in &line.algos {
                    out.push(Job {
                        instance: format!("{}-{size}", line.family),
                        family: line.family.clone(),
                        size,
                        spec: spec.clone(),
                        algo,
                        q,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn run_job(job: &Job, opts: &SolveOptions) -> Result<Record> {
    let inst = generate(&job.spec)?;
    let g = &inst.graph;
    let start = Instant::now();
    let answer = match solve(g, job.q, job.algo, opts) {
        Ok(rep) => match rep.witness {
            Some(w) => Answer::Yes(w.num_colors_used()),
            None => Answer::No,
        },
        Err(e @ (SscError::Resource(_) | SscError::Unsupported(_))) => Answer::Skipped(e.to_string()),
        Err(e) => return Err(e.into()),
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(Record {
        instance: job.instance.clone(),
        family: job.family.clone(),
        size: job.size,
        algo: job.algo,
        q: job.q,
        n: g.n(),
        m: g.m(),
        params: params(g),
        answer,
        wall_ms,
    })
}

/// Runs every job, concurrently, and returns records in matrix order.
pub fn run(matrix: &[MatrixLine], seed: u64, opts: &SolveOptions, threads: Option<usize>) -> Result<Vec<Record>> {
    let jobs = jobs(matrix, seed)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        pool = pool.num_threads(t);
    }
    let pool = pool.build()?;
    pool.install(|| jobs.par_iter().map(|j| run_job(j, opts)).collect())
}

/// (instance, q) pairs on which two algorithms gave different decisions.
pub fn mismatches(records: &[Record]) -> Vec<(String, usize)> {
    let mut bad = BTreeSet::new();
    for a in records {
        for b in records {
            if a.instance == b.instance && a.q == b.q {
                let decided = |r: &Record| match r.answer {
                    Answer::Yes(_) => Some(true),
                    Answer::No => Some(false),
                    Answer::Skipped(_) => None,
                };
                if let (Some(x), Some(y)) = (decided(a), decided(b)) {
                    if x != y {
                        bad.insert((a.instance.clone(), a.q));
                    }
                }
            }
        }
    }
    bad.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_parsing() {
        let m = parse_matrix("# paths\npath 6,9 oracle,twdp 1\n\ncycle 4 auto 1,2 # trailing\n").unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[0].sizes, vec![6, 9]);
        assert_eq!(m[0].algos, vec![Algorithm::Oracle, Algorithm::TwDp]);
        assert_eq!(m[1].qs, vec![1, 2]);
        assert!(parse_matrix("path 6 oracle").is_err());
        assert!(parse_matrix("path 6 magic 1").is_err());
        assert!(parse_matrix("").unwrap().is_empty());
    }

    #[test]
    fn records_keep_matrix_order_and_agree() {
        let m = parse_matrix("path 6,9,12 oracle,twdp 1\ncycle 4,5 vc,mw,oracle 1,2").unwrap();
        let recs = run(&m, 0, &SolveOptions::default(), Some(4)).unwrap();
        assert_eq!(recs.len(), 6 + 12);
        let order: Vec<_> = recs.iter().take(6).map(|r| (r.size, r.algo)).collect();
        assert_eq!(order[0], (6, Algorithm::Oracle));
        assert_eq!(order[1], (6, Algorithm::TwDp));
        assert_eq!(order[5], (12, Algorithm::TwDp));
        assert!(recs[..6].iter().all(|r| r.answer == Answer::Yes(1)));
        assert!(mismatches(&recs).is_empty());
        let header_cols = HEADER.split(',').count();
        assert!(recs.iter().all(|r| r.to_csv().split(',').count() == header_cols));
    }
}
