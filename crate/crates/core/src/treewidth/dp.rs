//! Dynamic program over a nice tree decomposition.
//!
//! Every bag vertex carries a status (Black = coloured, White = uncoloured
//! and already dominated, Grey = uncoloured and not yet dominated), its
//! colour, and a trace over the palette: for colour i, `Zero` means i never
//! occurs in N[v], `One` means it occurs exactly once among the vertices and
//! edges seen so far, `FutureOne` means it will be supplied by an edge that
//! is introduced later.

use rustc_hash::FxHashMap as HashMap;

use super::decomposition::{heuristic_tree_decomposition, Strategy};
use super::nice::{nicify, NiceTreeDecomposition, NodeKind};
use crate::coloring::Coloring;
use crate::error::{Result, SscError};
use crate::graph::Graph;

pub const MAX_DP_COLORS: usize = 8;
const DEFAULT_MAX_ENTRIES: usize = 4_000_000;

const BLACK: u32 = 0;
const WHITE: u32 = 1;
const GREY: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trace {
    Zero,
    One,
    FutureOne,
}

/// Per-vertex state packed into a `u32`: status in bits 0-1, colour in bits
/// 2-5, and the trace as a base-3 number from bit 6 up.
#[derive(Debug, Clone)]
struct Codec {
    pow3: Vec<u32>,
    /// base-3 trace value -> (One-mask, FutureOne-mask)
    masks: Vec<(u32, u32)>,
}

impl Codec {
    fn new(q: usize) -> Self {
        let pow3: Vec<u32> = (0..q).map(|i| 3u32.pow(i as u32)).collect();
        let masks = (0..3u32.pow(q as u32))
            .map(|mut gamma| {
                let (mut one, mut fut) = (0, 0);
                for i in 0..q {
                    match gamma % 3 {
                        1 => one |= 1 << i,
                        2 => fut |= 1 << i,
                        _ => {}
                    }
                    gamma /= 3;
                }
                (one, fut)
            })
            .collect();
        Codec { pow3, masks }
    }

    fn pack(&self, status: u32, color: usize, one: u32, fut: u32) -> u32 {
        let mut gamma = 0;
        let (mut o, mut f) = (one, fut & !one);
        while o != 0 {
            gamma += self.pow3[o.trailing_zeros() as usize];
            o &= o - 1;
        }
        while f != 0 {
            gamma += 2 * self.pow3[f.trailing_zeros() as usize];
            f &= f - 1;
        }
        status | (color as u32) << 2 | gamma << 6
    }

    /// (status, colour, One-mask, FutureOne-mask); colour i is bit i-1.
    #[inline]
    fn unpack(&self, s: u32) -> (u32, usize, u32, u32) {
        let (one, fut) = self.masks[(s >> 6) as usize];
        (s & 3, (s >> 2 & 15) as usize, one, fut)
    }

    #[cfg(test)]
    fn trace(&self, s: u32, color: usize) -> Trace {
        match (s >> 6) / self.pow3[color - 1] % 3 {
            0 => Trace::Zero,
            1 => Trace::One,
            _ => Trace::FutureOne,
        }
    }

    fn is_valid(&self, s: u32) -> bool {
        let (f, c, one, _) = self.unpack(s);
        match f {
            BLACK => c != 0 && one >> (c - 1) & 1 == 1,
            WHITE => c == 0 && one != 0,
            GREY => c == 0 && one == 0,
            _ => false,
        }
    }
}

/// What a node still has to receive from edges introduced above it.
///
/// For each bag vertex: the bag positions it still has an edge to, and how
/// many of its edges go to vertices not yet seen. Entries are pruned when
/// their pending FutureOne colours cannot be delivered: each pending edge
/// to a black bag vertex delivers exactly that vertex's colour, every other
/// edge at most one colour.
struct Frontier {
    pending: Vec<Vec<usize>>,
    outside: Vec<usize>,
}

impl Frontier {
    fn new(g: &Graph, bag: &[usize], deg: &[usize], introduced: &[(usize, usize)]) -> Self {
        let mut pending = vec![Vec::new(); bag.len()];
        for (a, &u) in bag.iter().enumerate() {
            for (z, &v) in bag.iter().enumerate() {
                if u != v && g.has_edge(u, v) && !introduced.contains(&(u.min(v), u.max(v))) {
                    pending[a].push(z);
                }
            }
        }
        let outside = bag
            .iter()
            .enumerate()
            .map(|(a, &v)| g.degree(v) - deg[a] - pending[a].len())
            .collect();
        Frontier { pending, outside }
    }

    fn admits(&self, codec: &Codec, key: &[u32]) -> bool {
        for (k, &s) in key.iter().enumerate() {
            let (f, _, _, fut) = codec.unpack(s);
            if f == GREY && fut == 0 {
                return false;
            }
            let mut forced = 0u32;
            for &j in &self.pending[k] {
                let (fj, cj, _, _) = codec.unpack(key[j]);
                if fj == BLACK {
                    let bit = 1 << (cj - 1);
                    if forced & bit != 0 || fut & bit == 0 {
                        return false;
                    }
                    forced |= bit;
                }
            }
            if (fut & !forced).count_ones() as usize > self.outside[k] {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy)]
enum Prov {
    Leaf,
    One(u32),
    Two(u32, u32),
}

struct Table {
    width: usize,
    keys: Vec<u32>,
    prov: Vec<Prov>,
}

impl Table {
    fn len(&self) -> usize {
        self.prov.len()
    }

    fn key(&self, i: usize) -> &[u32] {
        &self.keys[i * self.width..(i + 1) * self.width]
    }
}

struct Builder {
    table: Table,
    index: HashMap<Vec<u32>, u32>,
    cap: usize,
}

impl Builder {
    fn new(width: usize, cap: usize) -> Self {
        Builder {
            table: Table {
                width,
                keys: Vec::new(),
                prov: Vec::new(),
            },
            index: HashMap::default(),
            cap,
        }
    }

    fn insert(&mut self, key: &[u32], prov: Prov) -> Result<()> {
        if self.index.contains_key(key) {
            return Ok(());
        }
        if self.table.len() >= self.cap {
            return Err(SscError::Resource(format!(
                "DP table exceeded {} entries",
                self.cap
            )));
        }
        self.index.insert(key.to_vec(), self.table.len() as u32);
        self.table.keys.extend_from_slice(key);
        self.table.prov.push(prov);
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DpOptions {
    /// Per-node table size cap; exceeding it is a resource error.
    pub max_entries: usize,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions {
            max_entries: DEFAULT_MAX_ENTRIES,
        }
    }
}

/// Decides whether `g` has a subset square colouring with at most `q`
/// colours and reconstructs one if so.
pub fn solve_dp(g: &Graph, ntd: &NiceTreeDecomposition, q: usize) -> Result<Option<Coloring>> {
    solve_dp_with(g, ntd, q, &DpOptions::default())
}

pub fn solve_dp_with(
    g: &Graph,
    ntd: &NiceTreeDecomposition,
    q: usize,
    opts: &DpOptions,
) -> Result<Option<Coloring>> {
    if q > MAX_DP_COLORS {
        return Err(SscError::Resource(format!(
            "treewidth DP supports at most {MAX_DP_COLORS} colours, asked for {q}"
        )));
    }
    ntd.validate(g)?;
    if g.n() == 0 {
        return Ok(Some(Coloring::uncolored(0, q)));
    }
    if q == 0 {
        return Ok(None);
    }
    let codec = Codec::new(q);
    let full = (1u32 << q) - 1;
    let per_vertex = (3 * (q + 1)) as f64 * 3f64.powi(q as i32);

    let mut tables: Vec<Table> = Vec::with_capacity(ntd.len());
    // degree of each bag vertex within the subgraph processed so far
    let mut degs: Vec<Vec<usize>> = Vec::with_capacity(ntd.len());
    // introduced edges whose endpoints are both still in the bag
    let mut inner: Vec<Vec<(usize, usize)>> = Vec::with_capacity(ntd.len());

    for node in &ntd.nodes {
        let bag = &node.bag;
        let pos = |v: usize| bag.binary_search(&v).expect("vertex in bag");
        let (deg, edges_in_bag) = match node.kind {
            NodeKind::Leaf => (Vec::new(), Vec::new()),
            NodeKind::IntroduceVertex(v) => {
                let c = node.children[0];
                let mut d = degs[c].clone();
                d.insert(pos(v), 0);
                (d, inner[c].clone())
            }
            NodeKind::IntroduceEdge(u, v) => {
                let c = node.children[0];
                let mut d = degs[c].clone();
                d[pos(u)] += 1;
                d[pos(v)] += 1;
                let mut e = inner[c].clone();
                e.push((u, v));
                (d, e)
            }
            NodeKind::Forget(v) => {
                let c = node.children[0];
                let p = ntd.nodes[c].bag.binary_search(&v).expect("forgotten vertex in child");
                let mut d = degs[c].clone();
                d.remove(p);
                let mut e = inner[c].clone();
                e.retain(|&(a, z)| a != v && z != v);
                (d, e)
            }
            NodeKind::Join => {
                let (c1, c2) = (node.children[0], node.children[1]);
                assert!(
                    inner[c1].is_empty() && inner[c2].is_empty(),
                    "join bag must be edgeless below the join"
                );
                let d = degs[c1].iter().zip(&degs[c2]).map(|(a, b)| a + b).collect();
                (d, Vec::new())
            }
        };
        let frontier = Frontier::new(g, bag, &deg, &edges_in_bag);
        let mut b = Builder::new(bag.len(), opts.max_entries);
        let emit = |b: &mut Builder, key: &[u32], prov: Prov| -> Result<()> {
            if frontier.admits(&codec, key) {
                b.insert(key, prov)?;
            }
            Ok(())
        };

        match node.kind {
            NodeKind::Leaf => emit(&mut b, &[], Prov::Leaf)?,
            NodeKind::IntroduceVertex(v) => {
                let p = pos(v);
                let budget = g.degree(v);
                let mut cands = Vec::new();
                for color in 1..=q {
                    let own = 1u32 << (color - 1);
                    for fut in 0..=full {
                        if fut & own == 0 && fut.count_ones() as usize <= budget {
                            cands.push(codec.pack(BLACK, color, own, fut));
                        }
                    }
                }
                for fut in 1..=full {
                    if fut.count_ones() as usize <= budget {
                        cands.push(codec.pack(GREY, 0, 0, fut));
                    }
                }
                let child = &tables[node.children[0]];
                let mut key = Vec::with_capacity(bag.len());
                for i in 0..child.len() {
                    let ck = child.key(i);
                    for &s in &cands {
                        key.clear();
                        key.extend_from_slice(&ck[..p]);
                        key.push(s);
                        key.extend_from_slice(&ck[p..]);
                        emit(&mut b, &key, Prov::One(i as u32))?;
                    }
                }
            }
            NodeKind::IntroduceEdge(u, v) => {
                let (pu, pv) = (pos(u), pos(v));
                let child = &tables[node.children[0]];
                let mut key = Vec::with_capacity(bag.len());
                for i in 0..child.len() {
                    let ck = child.key(i);
                    let (fu, cu, ou, xu) = codec.unpack(ck[pu]);
                    let (fv, cv, ov, xv) = codec.unpack(ck[pv]);
                    let (mut nu, mut nv) = ((fu, ou, xu), (fv, ov, xv));
                    if fu == BLACK {
                        // v's pending colour c(u) is now realised
                        let bit = 1 << (cu - 1);
                        if xv & bit == 0 {
                            continue;
                        }
                        nv = (if fv == BLACK { BLACK } else { WHITE }, ov | bit, xv & !bit);
                    }
                    if fv == BLACK {
                        let bit = 1 << (cv - 1);
                        if xu & bit == 0 {
                            continue;
                        }
                        nu = (if fu == BLACK { BLACK } else { WHITE }, ou | bit, xu & !bit);
                    }
                    key.clear();
                    key.extend_from_slice(ck);
                    key[pu] = codec.pack(nu.0, cu, nu.1, nu.2);
                    key[pv] = codec.pack(nv.0, cv, nv.1, nv.2);
                    emit(&mut b, &key, Prov::One(i as u32))?;
                }
            }
            NodeKind::Forget(v) => {
                let c = node.children[0];
                let p = ntd.nodes[c].bag.binary_search(&v).expect("forgotten vertex in child");
                let child = &tables[c];
                let mut key = Vec::with_capacity(bag.len());
                for i in 0..child.len() {
                    let ck = child.key(i);
                    let (f, _, _, fut) = codec.unpack(ck[p]);
                    if f == GREY || fut != 0 {
                        continue;
                    }
                    key.clear();
                    key.extend_from_slice(&ck[..p]);
                    key.extend_from_slice(&ck[p + 1..]);
                    emit(&mut b, &key, Prov::One(i as u32))?;
                }
            }
            NodeKind::Join => {
                let (t1, t2) = (&tables[node.children[0]], &tables[node.children[1]]);
                let unpack_all = |t: &Table, i: usize| -> Vec<(u32, usize, u32, u32)> {
                    t.key(i).iter().map(|&s| codec.unpack(s)).collect()
                };
                // entries can only pair up when colours and non-Zero
                // positions agree everywhere
                let signature = |u: &[(u32, usize, u32, u32)]| -> Vec<u32> {
                    u.iter().map(|&(_, c, o, x)| (c as u32) << 8 | o | x).collect()
                };
                let mut groups: HashMap<Vec<u32>, Vec<u32>> = HashMap::default();
                let mut unpacked2 = Vec::with_capacity(t2.len());
                for j in 0..t2.len() {
                    let u = unpack_all(t2, j);
                    groups.entry(signature(&u)).or_default().push(j as u32);
                    unpacked2.push(u);
                }
                let mut key = vec![0u32; bag.len()];
                for i in 0..t1.len() {
                    let s1 = unpack_all(t1, i);
                    let Some(group) = groups.get(&signature(&s1)) else {
                        continue;
                    };
                    'pair: for &j in group {
                        let s2 = &unpacked2[j as usize];
                        for k in 0..bag.len() {
                            let (_, c, o1, x1) = s1[k];
                            let (_, _, o2, x2) = s2[k];
                            // a black vertex sees its own colour on both sides
                            let own = if c == 0 { 0 } else { 1 << (c - 1) };
                            if o1 & o2 & !own != 0 {
                                continue 'pair;
                            }
                            let one = o1 | o2;
                            let fut = (x1 | x2) & !one;
                            let f = if c != 0 {
                                BLACK
                            } else if one != 0 {
                                WHITE
                            } else {
                                GREY
                            };
                            key[k] = codec.pack(f, c, one, fut);
                        }
                        emit(&mut b, &key, Prov::Two(i as u32, j))?;
                    }
                }
            }
        }
        let table = b.table;
        debug_assert!(
            (0..table.len()).all(|i| table.key(i).iter().all(|&s| codec.is_valid(s))),
            "stored an invalid tuple"
        );
        assert!(
            table.len() as f64 <= per_vertex.powi(bag.len() as i32),
            "table size exceeds the (3(q+1)3^q)^bag envelope"
        );
        if table.len() == 0 {
            return Ok(None);
        }
        tables.push(table);
        degs.push(deg);
        inner.push(edges_in_bag);
    }

    let root = &tables[ntd.root];
    if root.len() == 0 {
        return Ok(None);
    }
    let mut colors = vec![0usize; g.n()];
    let mut stack = vec![(ntd.root, 0usize)];
    while let Some((t, i)) = stack.pop() {
        let node = &ntd.nodes[t];
        for (k, &v) in node.bag.iter().enumerate() {
            colors[v] = codec.unpack(tables[t].key(i)[k]).1;
        }
        match tables[t].prov[i] {
            Prov::Leaf => {}
            Prov::One(j) => stack.push((node.children[0], j as usize)),
            Prov::Two(a, b) => {
                stack.push((node.children[0], a as usize));
                stack.push((node.children[1], b as usize));
            }
        }
    }
    Ok(Some(Coloring::new(colors, q)?))
}

/// Heuristic decomposition (min-fill), nicification, then [`solve_dp`].
pub fn solve_treewidth(g: &Graph, q: usize) -> Result<Option<Coloring>> {
    let td = heuristic_tree_decomposition(g, Strategy::MinFill);
    let ntd = nicify(&td, g)?;
    solve_dp(g, &ntd, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_valid;

    #[test]
    fn codec_roundtrip() {
        let c = Codec::new(3);
        let s = c.pack(BLACK, 2, 0b010, 0b101);
        assert_eq!(c.unpack(s), (BLACK, 2, 0b010, 0b101));
        assert_eq!(c.trace(s, 1), Trace::FutureOne);
        assert_eq!(c.trace(s, 2), Trace::One);
        assert!(c.is_valid(s));
        assert!(!c.is_valid(c.pack(GREY, 0, 0b1, 0)));
    }

    #[test]
    fn path_and_cycle() {
        let p5 = Graph::path(5);
        let w = solve_treewidth(&p5, 1).unwrap().unwrap();
        assert!(is_valid(&p5, &w));
        assert_eq!(w.num_colors_used(), 1);
        assert!(solve_treewidth(&Graph::cycle(4), 1).unwrap().is_none());
        let w = solve_treewidth(&Graph::cycle(4), 2).unwrap().unwrap();
        assert!(is_valid(&Graph::cycle(4), &w));
    }

    #[test]
    fn isolated_vertices_get_coloured() {
        let g = Graph::empty(3);
        let w = solve_treewidth(&g, 1).unwrap().unwrap();
        assert_eq!(w.colors(), &[1, 1, 1]);
    }

    #[test]
    fn too_many_colours() {
        assert!(matches!(
            solve_treewidth(&Graph::path(3), 9),
            Err(SscError::Resource(_))
        ));
    }
}
