//! Canonical labeling of incidence structures by partition refinement and
//! backtracking over individualized vertices, with automorphism pruning.
//!
//! The structure is viewed as a bipartite graph with vertices 0..v (points) and
//! v..v+b (blocks); the two sides are never mixed. A leaf of the search tree is a
//! discrete ordered partition, read off as a relabeled incidence matrix. The
//! canonical form is the greatest leaf under (refinement trace, matrix) order.

use std::collections::VecDeque;

use num_bigint::BigUint;
use sha2::{Digest, Sha256};

use crate::designs::IncidenceStructure;
use crate::error::{Error, ResourceLimit, Result};
use crate::gf2::BitMatrix;

/// Default limit on search tree nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Canonical incidence matrix plus the relabelings that produce it from the input:
/// input point p becomes column `point_labels[p]`, input block i becomes row
/// `block_labels[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalForm {
    pub matrix: BitMatrix,
    pub point_labels: Vec<usize>,
    pub block_labels: Vec<usize>,
}

impl CanonicalForm {
    /// SHA-256 of the canonical matrix bytes, as lowercase hex.
    pub fn hash(&self) -> String {
        matrix_hash(&self.matrix)
    }
}

pub fn matrix_hash(m: &BitMatrix) -> String {
    let digest = Sha256::digest(m.to_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Result of a full search: canonical form and automorphism group data.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub form: CanonicalForm,
    /// Order of the automorphism group of the incidence structure.
    pub group_order: BigUint,
    /// Generators found, as permutations of points followed by blocks.
    pub generators: Vec<Vec<u32>>,
    pub nodes: u64,
}

impl SearchResult {
    /// Generators restricted to the point set.
    pub fn point_generators(&self) -> Vec<Vec<usize>> {
        let v = self.form.point_labels.len();
        self.generators
            .iter()
            .map(|g| g[..v].iter().map(|&x| x as usize).collect())
            .collect()
    }
}

struct Graph {
    v: usize,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    fn new(d: &IncidenceStructure) -> Graph {
        let v = d.points();
        let b = d.num_blocks();
        let mut adj = vec![Vec::new(); v + b];
        for i in 0..b {
            for p in d.block(i) {
                adj[v + i].push(p as u32);
                adj[p].push((v + i) as u32);
            }
        }
        Graph { v, adj }
    }

    fn size(&self) -> usize {
        self.adj.len()
    }
}

#[derive(Clone)]
struct Partition {
    lab: Vec<u32>,
    pos: Vec<u32>,
    // Start position of the cell containing each vertex.
    cell: Vec<u32>,
    // Length of the cell starting at each position (meaningful at starts only).
    len: Vec<u32>,
    cells: usize,
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h.rotate_left(7) ^ x).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

impl Partition {
    fn new(g: &Graph) -> Partition {
        let n = g.size();
        let mut p = Partition {
            lab: (0..n as u32).collect(),
            pos: (0..n as u32).collect(),
            cell: vec![0; n],
            len: vec![0; n],
            cells: 0,
        };
        if g.v > 0 {
            p.len[0] = g.v as u32;
            p.cells += 1;
        }
        if n > g.v {
            for x in g.v..n {
                p.cell[x] = g.v as u32;
            }
            p.len[g.v] = (n - g.v) as u32;
            p.cells += 1;
        }
        p
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn cell_starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut s = 0;
        std::iter::from_fn(move || {
            if s >= self.lab.len() {
                return None;
            }
            let cur = s;
            s += self.len[s] as usize;
            Some(cur)
        })
    }

    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in self.cell_starts() {
            let l = self.len[s];
            if l > 1 && best.is_none_or(|b| l < self.len[b]) {
                best = Some(s);
            }
        }
        best
    }

    fn open_cells(&self) -> usize {
        self.cell_starts().filter(|&s| self.len[s] > 1).count()
    }

    /// Splits vertex u off the front of its cell; returns the singleton's start.
    fn individualize(&mut self, u: u32) -> usize {
        let s = self.cell[u as usize] as usize;
        let l = self.len[s] as usize;
        let pu = self.pos[u as usize] as usize;
        let other = self.lab[s];
        self.lab.swap(s, pu);
        self.pos[other as usize] = pu as u32;
        self.pos[u as usize] = s as u32;
        self.len[s] = 1;
        self.len[s + 1] = (l - 1) as u32;
        for i in s + 1..s + l {
            self.cell[self.lab[i] as usize] = (s + 1) as u32;
        }
        self.cells += 1;
        s
    }

    /// Refines to the coarsest equitable partition finer than the current one,
    /// starting from the given splitter cells; returns a hash of the refinement trace.
    fn refine(&mut self, g: &Graph, scratch: &mut Scratch, initial: &[usize]) -> u64 {
        let n = self.lab.len();
        let mut trace = 0x5bd1_e995u64;
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in initial {
            if !scratch.in_queue[s] {
                scratch.in_queue[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(ws) = queue.pop_front() {
            scratch.in_queue[ws] = false;
            if self.cells == n {
                continue;
            }
            let wl = self.len[ws] as usize;
            trace = mix(trace, (ws as u64) << 32 | wl as u64);
            scratch.splitter.clear();
            scratch.splitter.extend_from_slice(&self.lab[ws..ws + wl]);
            for k in 0..wl {
                let u = scratch.splitter[k] as usize;
                for &w in &g.adj[u] {
                    let w = w as usize;
                    if scratch.count[w] == 0 {
                        // Move w into the touched tail of its cell.
                        let c = self.cell[w] as usize;
                        let t = scratch.touched[c] as usize;
                        if t == 0 {
                            scratch.cell_bits[c / 64] |= 1 << (c % 64);
                        }
                        let dst = c + self.len[c] as usize - 1 - t;
                        let pw = self.pos[w] as usize;
                        let other = self.lab[dst];
                        self.lab[pw] = other;
                        self.pos[other as usize] = pw as u32;
                        self.lab[dst] = w as u32;
                        self.pos[w] = dst as u32;
                        scratch.touched[c] += 1;
                    }
                    scratch.count[w] += 1;
                }
            }
            for k in 0..scratch.cell_bits.len() {
                while scratch.cell_bits[k] != 0 {
                    let bit = scratch.cell_bits[k].trailing_zeros() as usize;
                    scratch.cell_bits[k] &= scratch.cell_bits[k] - 1;
                    let c = k * 64 + bit;
                    let l = self.len[c] as usize;
                    let t = scratch.touched[c] as usize;
                    scratch.touched[c] = 0;
                    let first = scratch.count[self.lab[c + l - 1] as usize];
                    if t == l
                        && self.lab[c..c + l]
                            .iter()
                            .all(|&x| scratch.count[x as usize] == first)
                    {
                        trace = mix(trace, (c as u64) << 20 | first as u64);
                    } else {
                        self.split(c, l, t, scratch, &mut queue, &mut trace);
                    }
                    for i in c + l - t..c + l {
                        scratch.count[self.lab[i] as usize] = 0;
                    }
                }
            }
        }
        mix(trace, self.cells as u64)
    }

    /// Splits the cell at c, whose last t entries were touched, into fragments
    /// ordered by neighbor count (untouched first).
    fn split(
        &mut self,
        c: usize,
        l: usize,
        t: usize,
        scratch: &mut Scratch,
        queue: &mut VecDeque<usize>,
        trace: &mut u64,
    ) {
        let tail = c + l - t;
        scratch.items.clear();
        for i in tail..c + l {
            let x = self.lab[i];
            scratch.items.push((scratch.count[x as usize], x));
        }
        scratch.items.sort_unstable_by_key(|&(k, _)| k);
        scratch.frags.clear();
        if tail > c {
            scratch.frags.push((c, tail - c));
            *trace = mix(*trace, (tail - c) as u64);
        }
        let mut start = tail;
        for i in 0..t {
            let (k, x) = scratch.items[i];
            let p = tail + i;
            self.lab[p] = x;
            self.pos[x as usize] = p as u32;
            if i + 1 == t || scratch.items[i + 1].0 != k {
                scratch.frags.push((start, p + 1 - start));
                *trace = mix(*trace, (k as u64) << 32 | (p + 1 - start) as u64);
                start = p + 1;
            }
        }
        for &(fs, fl) in &scratch.frags {
            self.len[fs] = fl as u32;
        }
        for &(fs, fl) in &scratch.frags {
            if fs != c {
                for i in fs..fs + fl {
                    self.cell[self.lab[i] as usize] = fs as u32;
                }
            }
        }
        let frags = &scratch.frags;
        self.cells += frags.len() - 1;
        if scratch.in_queue[c] {
            for &(fs, _) in &frags[1..] {
                scratch.in_queue[fs] = true;
                queue.push_back(fs);
            }
        } else {
            let largest = frags
                .iter()
                .enumerate()
                .max_by(|a, b| a.1 .1.cmp(&b.1 .1).then(b.0.cmp(&a.0)))
                .map(|(i, _)| i)
                .expect("at least two fragments");
            for (i, &(fs, _)) in frags.iter().enumerate() {
                if i != largest {
                    scratch.in_queue[fs] = true;
                    queue.push_back(fs);
                }
            }
        }
    }
}

struct Scratch {
    count: Vec<u32>,
    // Number of touched entries per cell start during one splitter pass.
    touched: Vec<u32>,
    cell_bits: Vec<u64>,
    in_queue: Vec<bool>,
    splitter: Vec<u32>,
    items: Vec<(u32, u32)>,
    frags: Vec<(usize, usize)>,
}

impl Scratch {
    fn new(n: usize) -> Scratch {
        Scratch {
            count: vec![0; n],
            touched: vec![0; n],
            cell_bits: vec![0; n.div_ceil(64)],
            in_queue: vec![false; n],
            splitter: Vec::new(),
            items: Vec::new(),
            frags: Vec::new(),
        }
    }
}

struct Leaf {
    inv: Vec<u64>,
    lab: Vec<u32>,
    cert: BitMatrix,
    path: Vec<u32>,
}

struct Search<'a> {
    g: &'a Graph,
    d: &'a IncidenceStructure,
    scratch: Scratch,
    nodes: u64,
    budget: u64,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<u32>>,
    first_cells: Vec<Vec<u32>>,
    path: Vec<u32>,
    inv: Vec<u64>,
}

/// Union-find over vertices for orbit computations.
struct Orbits {
    parent: Vec<u32>,
}

impl Orbits {
    fn new(n: usize) -> Orbits {
        Orbits {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = x;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

fn lex_cmp(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    a.cmp(b)
}

impl<'a> Search<'a> {
    fn certificate(&self, lab: &[u32]) -> BitMatrix {
        let v = self.g.v;
        let n = self.g.size();
        let mut pos = vec![0usize; n];
        for (i, &x) in lab.iter().enumerate() {
            pos[x as usize] = i;
        }
        let mut m = BitMatrix::zeros(n - v, v);
        for (i, &x) in lab[v..].iter().enumerate() {
            for &p in &self.g.adj[x as usize] {
                m.set(i, pos[p as usize], true);
            }
        }
        m
    }

    fn orbits_fixing(&self, prefix: &[u32]) -> Orbits {
        let mut o = Orbits::new(self.g.size());
        for gen in &self.generators {
            if prefix.iter().all(|&x| gen[x as usize] == x) {
                for (x, &y) in gen.iter().enumerate() {
                    o.union(x as u32, y);
                }
            }
        }
        o
    }

    fn add_generator(&mut self, from: &[u32], to: &[u32]) {
        let mut gen = vec![0u32; self.g.size()];
        for (&a, &b) in from.iter().zip(to) {
            gen[a as usize] = b;
        }
        if gen.iter().enumerate().any(|(i, &x)| x as usize != i) && !self.generators.contains(&gen)
        {
            self.generators.push(gen);
        }
    }

    fn leaf(&mut self, part: &Partition) -> Option<usize> {
        let cert = self.certificate(&part.lab);
        let leaf = Leaf {
            inv: self.inv.clone(),
            lab: part.lab.clone(),
            cert,
            path: self.path.clone(),
        };
        let Some(first) = &self.first else {
            self.first_cells.truncate(self.path.len());
            self.best = Some(Leaf {
                inv: leaf.inv.clone(),
                lab: leaf.lab.clone(),
                cert: leaf.cert.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if first.inv == leaf.inv && first.cert == leaf.cert {
            let from = first.lab.clone();
            let back = common_prefix(&first.path, &leaf.path);
            self.add_generator(&from, &leaf.lab);
            return Some(back);
        }
        let best = self
            .best
            .as_ref()
            .expect("best leaf exists once the first does");
        match lex_cmp(&leaf.inv, &best.inv).then_with(|| leaf.cert.cmp(&best.cert)) {
            std::cmp::Ordering::Equal => {
                let from = best.lab.clone();
                let back = common_prefix(&best.path, &leaf.path);
                self.add_generator(&from, &leaf.lab);
                Some(back)
            }
            std::cmp::Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Less => None,
        }
    }

    fn explore(&mut self, part: &Partition) -> Result<Option<usize>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::ResourceLimit(ResourceLimit {
                budget: self.budget,
                open_cells: part.open_cells(),
                depth: self.path.len(),
            }));
        }
        if part.is_discrete() {
            return Ok(self.leaf(part));
        }
        let depth = self.path.len();
        let s = part
            .target_cell()
            .expect("a non-discrete partition has an open cell");
        let mut children: Vec<u32> = part.lab[s..s + part.len[s] as usize].to_vec();
        children.sort_unstable();
        if self.first.is_none() {
            self.first_cells.push(children.clone());
        }
        let mut explored: Vec<u32> = Vec::new();
        let mut orbit_gens = usize::MAX;
        let mut orbits = Orbits::new(0);
        for &c in &children {
            if !explored.is_empty() {
                if orbit_gens != self.generators.len() {
                    orbits = self.orbits_fixing(&self.path);
                    orbit_gens = self.generators.len();
                }
                let rc = orbits.find(c);
                if explored.iter().any(|&e| orbits.find(e) == rc) {
                    continue;
                }
            }
            explored.push(c);
            let mut child = part.clone();
            let singleton = child.individualize(c);
            let h = child.refine(self.g, &mut self.scratch, &[singleton]);
            self.path.push(c);
            self.inv.push(h);
            let prune = match (&self.first, &self.best) {
                (Some(first), Some(best)) => {
                    let k = self.inv.len();
                    let eq_first = first.inv.len() >= k && first.inv[..k] == self.inv[..];
                    let vs_best = lex_cmp(&self.inv, &best.inv[..k.min(best.inv.len())]);
                    !eq_first && vs_best == std::cmp::Ordering::Less
                }
                _ => false,
            };
            let r = if prune { None } else { self.explore(&child)? };
            self.path.pop();
            self.inv.pop();
            if let Some(level) = r {
                if level < depth {
                    return Ok(Some(level));
                }
            }
        }
        Ok(None)
    }

    fn group_order(&self) -> BigUint {
        let first = self.first.as_ref().expect("search reached a leaf");
        let mut order = BigUint::from(1u32);
        for (d, cell) in self.first_cells.iter().enumerate() {
            let mut o = self.orbits_fixing(&first.path[..d]);
            let r = o.find(first.path[d]);
            let size = cell.iter().filter(|&&x| o.find(x) == r).count();
            order *= BigUint::from(size);
        }
        order
    }
}

fn common_prefix(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Runs the full canonical labeling search under a node budget.
pub fn search(d: &IncidenceStructure, budget: u64) -> Result<SearchResult> {
    let g = Graph::new(d);
    let n = g.size();
    let mut part = Partition::new(&g);
    let mut scratch = Scratch::new(n.max(1));
    let starts: Vec<usize> = part.cell_starts().collect();
    let h = part.refine(&g, &mut scratch, &starts);
    let mut s = Search {
        g: &g,
        d,
        scratch,
        nodes: 0,
        budget,
        first: None,
        best: None,
        generators: Vec::new(),
        first_cells: Vec::new(),
        path: Vec::new(),
        inv: vec![h],
    };
    s.explore(&part)?;
    let group_order = s.group_order();
    let best = s.best.take().expect("search reached a leaf");
    let v = g.v;
    let mut point_labels = vec![0usize; v];
    let mut block_labels = vec![0usize; n - v];
    for (i, &x) in best.lab.iter().enumerate() {
        let x = x as usize;
        if x < v {
            point_labels[x] = i;
        } else {
            block_labels[x - v] = i - v;
        }
    }
    debug_assert_eq!(s.d.points(), v);
    Ok(SearchResult {
        form: CanonicalForm {
            matrix: best.cert,
            point_labels,
            block_labels,
        },
        group_order,
        generators: s.generators,
        nodes: s.nodes,
    })
}

pub fn canonical_form(d: &IncidenceStructure) -> Result<CanonicalForm> {
    canonical_form_with_budget(d, DEFAULT_NODE_BUDGET)
}

pub fn canonical_form_with_budget(d: &IncidenceStructure, budget: u64) -> Result<CanonicalForm> {
    Ok(search(d, budget)?.form)
}

/// Order of the automorphism group (point and block permutations preserving incidence).
pub fn aut_group_order(d: &IncidenceStructure, budget: u64) -> Result<BigUint> {
    Ok(search(d, budget)?.group_order)
}

/// Point and block bijections from one structure onto another: point p of the first
/// is point `point_map[p]` of the second, and likewise for blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsomorphismWitness {
    pub point_map: Vec<usize>,
    pub block_map: Vec<usize>,
}

impl IsomorphismWitness {
    /// Checks the witness directly: block i of `a` maps onto block `block_map[i]` of `b`.
    pub fn verify(&self, a: &IncidenceStructure, b: &IncidenceStructure) -> bool {
        if a.points() != b.points() || a.num_blocks() != b.num_blocks() {
            return false;
        }
        if self.point_map.len() != a.points() || self.block_map.len() != a.num_blocks() {
            return false;
        }
        if !is_bijection(&self.point_map) || !is_bijection(&self.block_map) {
            return false;
        }
        match a.relabel(&self.point_map, &self.block_map) {
            Ok(r) => r.matrix() == b.matrix(),
            Err(_) => false,
        }
    }

    /// The witness from canonical forms of two isomorphic structures.
    pub fn from_forms(a: &CanonicalForm, b: &CanonicalForm) -> IsomorphismWitness {
        let mut point_inv = vec![0; b.point_labels.len()];
        for (q, &l) in b.point_labels.iter().enumerate() {
            point_inv[l] = q;
        }
        let mut block_inv = vec![0; b.block_labels.len()];
        for (j, &l) in b.block_labels.iter().enumerate() {
            block_inv[l] = j;
        }
        IsomorphismWitness {
            point_map: a.point_labels.iter().map(|&l| point_inv[l]).collect(),
            block_map: a.block_labels.iter().map(|&l| block_inv[l]).collect(),
        }
    }
}

fn is_bijection(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter()
        .all(|&x| x < seen.len() && !std::mem::replace(&mut seen[x], true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fano() -> IncidenceStructure {
        let lines = [
            [0, 1, 2],
            [0, 3, 4],
            [0, 5, 6],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
        ];
        let blocks: Vec<Vec<usize>> = lines.iter().map(|l| l.to_vec()).collect();
        IncidenceStructure::from_blocks(7, &blocks).unwrap()
    }

    fn shuffle(d: &IncidenceStructure, rng: &mut ChaCha8Rng) -> IncidenceStructure {
        let mut p: Vec<usize> = (0..d.points()).collect();
        let mut b: Vec<usize> = (0..d.num_blocks()).collect();
        p.shuffle(rng);
        b.shuffle(rng);
        d.relabel(&p, &b).unwrap()
    }

    #[test]
    fn fano_plane_group_order() {
        assert_eq!(
            aut_group_order(&fano(), 1000).unwrap(),
            BigUint::from(168u32)
        );
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let d = fano();
        let c = canonical_form(&d).unwrap();
        for _ in 0..20 {
            let r = shuffle(&d, &mut rng);
            let cr = canonical_form(&r).unwrap();
            assert_eq!(cr.matrix, c.matrix);
            let w = IsomorphismWitness::from_forms(&c, &cr);
            assert!(w.verify(&d, &r));
        }
    }

    #[test]
    fn distinguishes_non_isomorphic_structures() {
        // Two 2-regular structures on 6 points: one hexagon versus two triangles.
        let hex: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
        let tri: Vec<Vec<usize>> = vec![
            vec![0, 1],
            vec![1, 2],
            vec![2, 0],
            vec![3, 4],
            vec![4, 5],
            vec![5, 3],
        ];
        let a = canonical_form(&IncidenceStructure::from_blocks(6, &hex).unwrap()).unwrap();
        let b = canonical_form(&IncidenceStructure::from_blocks(6, &tri).unwrap()).unwrap();
        assert_ne!(a.matrix, b.matrix);
        assert_ne!(a.hash(), b.hash());
    }

    #[test]
    fn cycle_group_orders() {
        let hex: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
        let d = IncidenceStructure::from_blocks(6, &hex).unwrap();
        assert_eq!(aut_group_order(&d, 1000).unwrap(), BigUint::from(12u32));
        let tri: Vec<Vec<usize>> = vec![
            vec![0, 1],
            vec![1, 2],
            vec![2, 0],
            vec![3, 4],
            vec![4, 5],
            vec![5, 3],
        ];
        let d = IncidenceStructure::from_blocks(6, &tri).unwrap();
        assert_eq!(aut_group_order(&d, 1000).unwrap(), BigUint::from(72u32));
    }

    #[test]
    fn budget_is_enforced() {
        let e = canonical_form_with_budget(&fano(), 2).unwrap_err();
        assert!(matches!(
            e,
            Error::ResourceLimit(ResourceLimit { budget: 2, .. })
        ));
    }

    #[test]
    fn witness_rejects_wrong_maps() {
        let d = fano();
        let id: Vec<usize> = (0..7).collect();
        let w = IsomorphismWitness {
            point_map: id.clone(),
            block_map: id.clone(),
        };
        assert!(w.verify(&d, &d));
        let mut swapped = id.clone();
        swapped.swap(0, 6);
        let w = IsomorphismWitness {
            point_map: swapped,
            block_map: id,
        };
        assert!(!w.verify(&d, &d));
    }
}
