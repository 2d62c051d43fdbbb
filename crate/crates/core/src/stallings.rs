//! Folded core graphs of finitely generated subgroups.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::automorphisms::Automorphism;
use crate::error::{Error, Result};
use crate::words::{push_reduced, Letter, Word};

/// Default cap on the number of prefixes visited by
/// [`fixed_subgroup_approx`].
pub const DEFAULT_NODE_LIMIT: usize = 20_000_000;

/// A folded, connected core graph with base vertex `0`.
///
/// Vertices are numbered by breadth-first search from the base, visiting
/// outgoing letters in the order `x1, X1, x2, X2, ...`, so two graphs of the
/// same subgroup compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubgroupGraph {
    rank: usize,
    /// `adj[v][ordinal]` is the endpoint of the edge leaving `v` labelled by
    /// the letter with that ordinal.
    adj: Vec<Vec<Option<usize>>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut v: usize) -> usize {
        while self.0[v] != v {
            self.0[v] = self.0[self.0[v]];
            v = self.0[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.0[hi] = lo;
        true
    }
}

impl SubgroupGraph {
    pub fn trivial(rank: usize) -> SubgroupGraph {
        SubgroupGraph {
            rank,
            adj: vec![vec![None; 2 * rank]],
        }
    }

    /// Builds from positive edges `(source, generator index, target)` on
    /// vertices `0..vertex_count`, folding, pruning and renumbering.
    fn from_edges(rank: usize, vertex_count: usize, mut edges: Vec<(usize, usize, usize)>) -> Self {
        let mut uf = UnionFind((0..vertex_count).collect());
        loop {
            let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
            let mut merged = false;
            for &(s, l, t) in &edges {
                let (s, t) = (uf.find(s), uf.find(t));
                for (key, other) in [((s, 2 * l), t), ((t, 2 * l + 1), s)] {
                    match seen.get(&key) {
                        Some(&prev) => merged |= uf.union(prev, other),
                        None => {
                            seen.insert(key, other);
                        }
                    }
                }
            }
            for e in edges.iter_mut() {
                *e = (uf.find(e.0), e.1, uf.find(e.2));
            }
            edges.sort_unstable();
            edges.dedup();
            if !merged {
                break;
            }
        }
        let mut adj = vec![vec![None; 2 * rank]; vertex_count];
        for &(s, l, t) in &edges {
            adj[s][2 * (l - 1)] = Some(t);
            adj[t][2 * (l - 1) + 1] = Some(s);
        }
        SubgroupGraph::core_of(rank, adj, uf.find(0))
    }

    /// Prunes hanging trees from a folded adjacency table and renumbers
    /// the component of `base`.
    fn core_of(rank: usize, mut adj: Vec<Vec<Option<usize>>>, base: usize) -> Self {
        let degree = |row: &Vec<Option<usize>>| row.iter().filter(|e| e.is_some()).count();
        let mut stack: Vec<usize> = (0..adj.len())
            .filter(|&v| v != base && degree(&adj[v]) == 1)
            .collect();
        while let Some(v) = stack.pop() {
            if degree(&adj[v]) != 1 {
                continue;
            }
            let o = adj[v].iter().position(Option::is_some).unwrap();
            let u = adj[v][o].take().unwrap();
            adj[u][o ^ 1] = None;
            if u != base && degree(&adj[u]) == 1 {
                stack.push(u);
            }
        }
        let mut order = vec![usize::MAX; adj.len()];
        let mut visit = vec![base];
        order[base] = 0;
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            for t in adj[v].iter().flatten() {
                if order[*t] == usize::MAX {
                    order[*t] = visit.len();
                    visit.push(*t);
                    queue.push_back(*t);
                }
            }
        }
        let renumbered = visit
            .iter()
            .map(|&v| adj[v].iter().map(|e| e.map(|t| order[t])).collect())
            .collect();
        SubgroupGraph {
            rank,
            adj: renumbered,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Positive edges `(source, generator index, target)`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (s, row) in self.adj.iter().enumerate() {
            for i in 0..self.rank {
                if let Some(t) = row[2 * i] {
                    out.push((s, i + 1, t));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().flatten().filter(|e| e.is_some()).count() / 2
    }

    fn step(&self, v: usize, l: Letter) -> Option<usize> {
        self.adj[v][l.ordinal()]
    }

    pub fn contains(&self, w: &Word) -> Result<bool> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: w.rank(),
            });
        }
        let mut v = 0;
        for &l in w.letters() {
            match self.step(v, l) {
                Some(t) => v = t,
                None => return Ok(false),
            }
        }
        Ok(v == 0)
    }

    /// A free basis read off a breadth-first spanning tree.
    pub fn basis(&self) -> Vec<Word> {
        let n = self.adj.len();
        let mut path: Vec<Option<Vec<Letter>>> = vec![None; n];
        let mut tree = vec![vec![false; 2 * self.rank]; n];
        path[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for o in 0..2 * self.rank {
                if let Some(t) = self.adj[v][o] {
                    if path[t].is_none() {
                        let mut p = path[v].clone().unwrap();
                        p.push(Letter::from_ordinal(o));
                        path[t] = Some(p);
                        tree[v][o] = true;
                        tree[t][o ^ 1] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut out = Vec::new();
        for (s, l, t) in self.edges() {
            let o = 2 * (l - 1);
            if tree[s][o] {
                continue;
            }
            let mut buf = Vec::new();
            for &m in path[s].as_ref().unwrap() {
                push_reduced(&mut buf, m);
            }
            push_reduced(&mut buf, Letter::gen(l));
            for m in path[t].as_ref().unwrap().iter().rev() {
                push_reduced(&mut buf, m.inverse());
            }
            out.push(Word::from_reduced(self.rank, buf));
        }
        out
    }

    /// Whether the subgroup of `self` is contained in that of `other`.
    pub fn is_subgroup_of(&self, other: &SubgroupGraph) -> Result<bool> {
        for b in self.basis() {
            if !other.contains(&b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One `source letter target` line per positive edge.
    pub fn to_edge_list(&self) -> String {
        self.edges()
            .iter()
            .map(|(s, l, t)| format!("{s} x{l} {t}\n"))
            .collect()
    }
}

impl fmt::Display for SubgroupGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

impl fmt::Debug for SubgroupGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubgroupGraph(rank {}) {{ ", self.rank)?;
        for (s, l, t) in self.edges() {
            write!(f, "{s}-x{l}->{t} ")?;
        }
        f.write_str("}")
    }
}

/// Stallings graph of the subgroup generated by `generators`.
pub fn fold(rank: usize, generators: &[Word]) -> Result<SubgroupGraph> {
    let mut edges = Vec::new();
    let mut next = 1;
    for g in generators {
        if g.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: g.rank(),
            });
        }
        let n = g.len();
        for (i, l) in g.letters().iter().enumerate() {
            let s = if i == 0 { 0 } else { next + i - 1 };
            let t = if i + 1 == n { 0 } else { next + i };
            if l.is_inverse() {
                edges.push((t, l.index(), s));
            } else {
                edges.push((s, l.index(), t));
            }
        }
        next += n.saturating_sub(1);
    }
    Ok(SubgroupGraph::from_edges(rank, next, edges))
}

/// Rank of the subgroup: `|E| - |V| + 1`.
pub fn graph_rank(g: &SubgroupGraph) -> usize {
    g.edge_count() + 1 - g.vertex_count()
}

/// Graph of the intersection of the two subgroups.
pub fn intersect(g1: &SubgroupGraph, g2: &SubgroupGraph) -> Result<SubgroupGraph> {
    if g1.rank != g2.rank {
        return Err(Error::RankMismatch {
            expected: g1.rank,
            found: g2.rank,
        });
    }
    let rank = g1.rank;
    let mut index: HashMap<(usize, usize), usize> = HashMap::from([((0, 0), 0)]);
    let mut pairs = vec![(0, 0)];
    let mut adj: Vec<Vec<Option<usize>>> = vec![vec![None; 2 * rank]];
    let mut i = 0;
    while i < pairs.len() {
        let (a, b) = pairs[i];
        for o in 0..2 * rank {
            if let (Some(ta), Some(tb)) = (g1.adj[a][o], g2.adj[b][o]) {
                let j = *index.entry((ta, tb)).or_insert_with(|| {
                    pairs.push((ta, tb));
                    adj.push(vec![None; 2 * rank]);
                    pairs.len() - 1
                });
                adj[i][o] = Some(j);
            }
        }
        i += 1;
    }
    Ok(SubgroupGraph::core_of(rank, adj, 0))
}

/// Subgroup generated by all fixed words of `f` of length at most
/// `max_len`, within the default node limit.
pub fn fixed_subgroup_approx(f: &Automorphism, max_len: usize) -> Result<SubgroupGraph> {
    fixed_subgroup_approx_with_limit(f, max_len, DEFAULT_NODE_LIMIT)
}

/// As [`fixed_subgroup_approx`] with an explicit cap on enumerated words.
///
/// A reduced word `p q⁻¹` is fixed exactly when `f(p)⁻¹ p = f(q)⁻¹ q`, so
/// only words of length up to `⌈max_len / 2⌉` are enumerated, shortest
/// first, and grouped by that value. Within a group with shortest member
/// `r`, the words `p r⁻¹` with `|p| + |r| ≤ max_len` generate every fixed
/// word of length at most `max_len` whose halves fall in the group.
pub fn fixed_subgroup_approx_with_limit(
    f: &Automorphism,
    max_len: usize,
    node_limit: usize,
) -> Result<SubgroupGraph> {
    let rank = f.rank();
    let half = max_len.div_ceil(2);
    let letter_images: Vec<Word> = (0..2 * rank)
        .map(|o| f.apply(&Word::from_reduced(rank, vec![Letter::from_ordinal(o)])))
        .collect();
    let mut shortest: HashMap<Word, Word> = HashMap::new();
    let mut candidates: Vec<Word> = Vec::new();
    let mut layer = vec![(Word::identity(rank), Word::identity(rank))];
    let mut explored = 1usize;
    for len in 0..=half {
        let mut next = Vec::new();
        for (p, key) in layer {
            match shortest.get(&key) {
                Some(r) => {
                    if p.len() + r.len() <= max_len {
                        candidates.push(&p * &r.inverse());
                    }
                }
                None => {
                    shortest.insert(key.clone(), p.clone());
                }
            }
            if len == half {
                continue;
            }
            for (o, image) in letter_images.iter().enumerate() {
                let l = Letter::from_ordinal(o);
                if p.last() == Some(l.inverse()) {
                    continue;
                }
                explored += 1;
                if explored > node_limit {
                    return Err(Error::Budget {
                        explored,
                        limit: node_limit,
                    });
                }
                let x = Word::from_reduced(rank, vec![l]);
                let key = &(&image.inverse() * &key) * &x;
                next.push((&p * &x, key));
            }
        }
        layer = next;
    }
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut generators: Vec<Word> = Vec::new();
    let mut graph = SubgroupGraph::trivial(rank);
    for c in candidates {
        if !graph.contains(&c)? {
            generators.push(c);
            graph = fold(rank, &generators)?;
        }
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(text: &str, rank: usize) -> Word {
        Word::parse(text, rank).unwrap()
    }

    fn g(rank: usize, gens: &[&str]) -> SubgroupGraph {
        fold(rank, &gens.iter().map(|s| w(s, rank)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn fold_examples() {
        let c = g(2, &["x1"]);
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edges(), vec![(0, 1, 0)]);
        assert_eq!(graph_rank(&c), 1);
        let h = g(2, &["x1", "x2 x1 X2"]);
        assert_eq!(graph_rank(&h), 2);
        assert_eq!(h.edges(), vec![(0, 1, 0), (0, 2, 1), (1, 1, 1)]);
        let t = g(2, &[]);
        assert_eq!(graph_rank(&t), 0);
        assert_eq!(t, SubgroupGraph::trivial(2));
    }

    #[test]
    fn fold_is_order_independent() {
        assert_eq!(
            g(3, &["x1 x2", "x3 X1", "x2 x2"]),
            g(3, &["x2 x2", "x1 x2", "x3 X1"])
        );
        // different generating sets of the same subgroup
        assert_eq!(g(2, &["x1", "x2"]), g(2, &["x1 x2", "x2"]));
        assert_eq!(g(2, &["x1 x1", "x1 x1 x1"]), g(2, &["x1"]));
    }

    #[test]
    fn contains_examples() {
        let c = g(2, &["x1"]);
        assert!(c.contains(&w("x1 x1", 2)).unwrap());
        assert!(!c.contains(&w("x2", 2)).unwrap());
        assert!(g(2, &["x1 x2"]).contains(&w("x1 x2 x1 x2", 2)).unwrap());
        assert!(c.contains(&w("x1", 3)).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(graph_rank(&SubgroupGraph::trivial(3)), 0);
        assert_eq!(graph_rank(&g(2, &["x1", "x2"])), 2);
        assert_eq!(graph_rank(&g(2, &["x1 x2 X1", "x1 x1"])), 2);
        assert_eq!(
            g(2, &["x1 x2 X1", "x1 x1"]).edges(),
            vec![(0, 1, 1), (1, 1, 0), (1, 2, 1)]
        );
        // a commutator and its conjugate stay independent
        assert_eq!(graph_rank(&g(2, &["x1 x2 X1 X2", "x2 x1 x2 X1 X2 X2"])), 2);
    }

    #[test]
    fn intersect_examples() {
        let a = g(3, &["x1", "x2"]);
        let b = g(3, &["x1", "x3"]);
        let i = intersect(&a, &b).unwrap();
        assert_eq!(graph_rank(&i), 1);
        assert_eq!(i, g(3, &["x1"]));
        assert_eq!(intersect(&a, &a).unwrap(), a);
        assert_eq!(
            intersect(&g(2, &["x1"]), &g(2, &["x2"])).unwrap(),
            SubgroupGraph::trivial(2)
        );
        // <x1^2> ∩ <x1^3> = <x1^6>
        let six = intersect(&g(2, &["x1 x1"]), &g(2, &["x1 x1 x1"])).unwrap();
        assert_eq!(six, g(2, &["x1 x1 x1 x1 x1 x1"]));
    }

    #[test]
    fn basis_generates_the_subgroup() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..300 {
            let rank = rng.gen_range(2..=3);
            let gens: Vec<Word> = (0..rng.gen_range(0..4))
                .map(|_| Word::random(rank, rng.gen_range(1..6), &mut rng))
                .collect();
            let h = fold(rank, &gens).unwrap();
            let basis = h.basis();
            assert_eq!(basis.len(), graph_rank(&h));
            assert_eq!(fold(rank, &basis).unwrap(), h);
        }
    }

    #[test]
    fn closure_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..200 {
            let rank = rng.gen_range(2..=3);
            let gens: Vec<Word> = (0..rng.gen_range(1..4))
                .map(|_| Word::random(rank, rng.gen_range(1..5), &mut rng))
                .collect();
            let h = fold(rank, &gens).unwrap();
            for a in &gens {
                assert!(h.contains(a).unwrap());
                assert!(h.contains(&a.inverse()).unwrap());
                for b in &gens {
                    assert!(h.contains(&(a * b)).unwrap());
                    assert!(h.contains(&(a * &b.inverse())).unwrap());
                }
            }
            assert_eq!(graph_rank(&intersect(&h, &h).unwrap()), graph_rank(&h));
        }
    }

    #[test]
    fn fixed_subgroup_examples() {
        let qc = Automorphism::from_involution(vec![w("X1", 2), w("x1 x2 X1", 2)]).unwrap();
        assert_eq!(graph_rank(&fixed_subgroup_approx(&qc, 6).unwrap()), 0);
        let psi =
            Automorphism::from_involution(vec![w("X1", 3), w("x1 x2 X1", 3), w("x3", 3)]).unwrap();
        let fx = fixed_subgroup_approx(&psi, 4).unwrap();
        assert_eq!(fx, g(3, &["x3"]));
        let id = fixed_subgroup_approx(&Automorphism::identity(3), 2).unwrap();
        assert_eq!(graph_rank(&id), 3);
        // the swap sends x1 x2 to x2 x1 and fixes nothing
        let swap = Automorphism::from_involution(vec![w("x2", 2), w("x1", 2)]).unwrap();
        assert_eq!(
            fixed_subgroup_approx(&swap, 6).unwrap(),
            SubgroupGraph::trivial(2)
        );
    }

    #[test]
    fn fixed_subgroup_budget() {
        let r = fixed_subgroup_approx_with_limit(&Automorphism::identity(3), 6, 100);
        assert!(matches!(r, Err(Error::Budget { .. })));
    }

    /// Brute enumeration without pruning, as an oracle for the pruned search.
    fn brute_fixed(f: &Automorphism, max_len: usize) -> SubgroupGraph {
        let rank = f.rank();
        let mut layer = vec![Word::identity(rank)];
        let mut fixed = Vec::new();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &layer {
                for o in 0..2 * rank {
                    let l = Letter::from_ordinal(o);
                    if p.last() == Some(l.inverse()) {
                        continue;
                    }
                    let q = p * &Word::from_reduced(rank, vec![l]);
                    if f.apply(&q) == q {
                        fixed.push(q.clone());
                    }
                    next.push(q);
                }
            }
            layer = next;
        }
        fold(rank, &fixed).unwrap()
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let bases = [
            vec!["x1", "X2", "x3"],
            vec!["X1", "x1 x2 X1", "x3"],
            vec!["x2", "x1", "x3"],
            vec!["X1", "x1 x2 X1", "x1 x3 X1"],
        ];
        for b in &bases {
            let f = Automorphism::from_involution(b.iter().map(|s| w(s, 3)).collect()).unwrap();
            for _ in 0..5 {
                let s = crate::automorphisms::random_automorphism_with(
                    3,
                    rng.gen_range(0..3),
                    &mut rng,
                )
                .unwrap();
                let h = f.conjugate_by(&s).unwrap();
                assert_eq!(
                    fixed_subgroup_approx(&h, 5).unwrap(),
                    brute_fixed(&h, 5),
                    "{h}"
                );
            }
        }
    }
}
