//! Whitehead's algorithm: greedy cyclic-length descent and primitivity.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::automorphisms::{cached_whitehead_generators, whitehead_moves};
use crate::error::{Error, Result};
use crate::words::Word;

/// Default cap on the number of distinct words visited by
/// [`primitive_census_brute`].
pub const DEFAULT_CENSUS_BUDGET: usize = 2_000_000;

/// Record of a greedy descent. Each move is the position of the applied
/// generator in [`whitehead_moves`] order together with the cyclic length
/// reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimizationTrace {
    pub start: Word,
    pub end: Word,
    pub moves: Vec<(usize, usize)>,
}

impl MinimizationTrace {
    pub fn end_cyclic_len(&self) -> usize {
        self.end.cyclic_len()
    }

    /// Human-readable labels of the applied moves.
    pub fn move_labels(&self) -> Vec<String> {
        let moves = whitehead_moves(self.start.rank());
        self.moves
            .iter()
            .map(|&(id, _)| moves[id].to_string())
            .collect()
    }
}

/// Repeatedly applies the first Whitehead generator that strictly shortens
/// the cyclic core, until none does. `end` is cyclically reduced.
pub fn whitehead_minimize(w: &Word) -> MinimizationTrace {
    let gens = cached_whitehead_generators(w.rank());
    let mut cur = w.cyclic_reduce().0;
    let mut moves = Vec::new();
    'descent: loop {
        for (id, g) in gens.iter().enumerate() {
            let next = g.apply(&cur).cyclic_reduce().0;
            if next.len() < cur.len() {
                moves.push((id, next.len()));
                cur = next;
                continue 'descent;
            }
        }
        break;
    }
    MinimizationTrace {
        start: w.clone(),
        end: cur,
        moves,
    }
}

/// Whether `w` belongs to some basis of the free group.
pub fn is_primitive(w: &Word) -> bool {
    whitehead_minimize(w).end_cyclic_len() == 1
}

/// Words of length at most `max_len` in the orbit of `x1`, found by
/// breadth-first search through Whitehead moves to depth `3·max_len`,
/// keeping intermediate words of length at most `2·max_len + 2`.
///
/// Intended as an independent cross-check for [`is_primitive`] at small
/// scale; it never consults the descent.
pub fn primitive_census_brute(rank: usize, max_len: usize) -> Result<BTreeSet<Word>> {
    primitive_census_brute_with_budget(rank, max_len, DEFAULT_CENSUS_BUDGET)
}

pub fn primitive_census_brute_with_budget(
    rank: usize,
    max_len: usize,
    budget: usize,
) -> Result<BTreeSet<Word>> {
    let gens = cached_whitehead_generators(rank);
    let cap = 2 * max_len + 2;
    let start = Word::generator(rank, 1);
    let mut seen: HashSet<Word> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((w, depth)) = queue.pop_front() {
        if depth == 3 * max_len {
            continue;
        }
        for g in gens.iter() {
            let next = g.apply(&w);
            if next.len() > cap || seen.contains(&next) {
                continue;
            }
            if seen.len() >= budget {
                return Err(Error::Budget {
                    explored: seen.len(),
                    limit: budget,
                });
            }
            seen.insert(next.clone());
            queue.push_back((next, depth + 1));
        }
    }
    Ok(seen.into_iter().filter(|w| w.len() <= max_len).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::abelianize_word;
    use crate::automorphisms::random_automorphism_with;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(text: &str, rank: usize) -> Word {
        Word::parse(text, rank).unwrap()
    }

    #[test]
    fn minimize_examples() {
        let t = whitehead_minimize(&w("x1", 2));
        assert_eq!(t.end, w("x1", 2));
        assert!(t.moves.is_empty());
        assert_eq!(whitehead_minimize(&w("x1 x2 X1", 2)).end_cyclic_len(), 1);
        let sq = whitehead_minimize(&w("x1 x1", 2));
        assert_eq!(sq.end, w("x1 x1", 2));
        assert!(sq.moves.is_empty());
    }

    #[test]
    fn primitive_examples() {
        assert!(is_primitive(&w("x2", 2)));
        assert!(!is_primitive(&w("x1 x1", 2)));
        assert!(is_primitive(&w("x1", 2).conjugate(&w("x2", 2))));
        assert!(is_primitive(&w("x1 x2 x2", 2)));
        assert!(!is_primitive(&w("x1 x2 X1 X2", 2)));
        assert!(!is_primitive(&Word::identity(2)));
        assert!(is_primitive(&w("X1", 1)));
    }

    #[test]
    fn trace_lengths_strictly_decrease() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let rank = rng.gen_range(2..=3);
            let u = Word::random(rank, rng.gen_range(0..12), &mut rng);
            let t = whitehead_minimize(&u);
            let mut prev = u.cyclic_len();
            for &(_, len) in &t.moves {
                assert!(len < prev);
                prev = len;
            }
            assert_eq!(t.end_cyclic_len(), prev);
            assert_eq!(t.move_labels().len(), t.moves.len());
        }
    }

    #[test]
    fn primitivity_is_automorphism_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..200 {
            let rank = rng.gen_range(2..=3);
            let f = random_automorphism_with(rank, rng.gen_range(1..6), &mut rng).unwrap();
            let g = random_automorphism_with(rank, rng.gen_range(1..6), &mut rng).unwrap();
            let p = f.apply(&Word::generator(rank, rng.gen_range(1..=rank)));
            assert!(is_primitive(&p), "{p}");
            assert!(is_primitive(&g.apply(&p)));
            let n = g.apply(&w("x1 x1", rank));
            assert!(!is_primitive(&n));
        }
    }

    #[test]
    fn census_examples() {
        let one = primitive_census_brute(2, 1).unwrap();
        let expect: BTreeSet<Word> = ["x1", "X1", "x2", "X2"].iter().map(|s| w(s, 2)).collect();
        assert_eq!(one, expect);
        let three = primitive_census_brute(2, 3).unwrap();
        assert!(three.contains(&w("x1 x2 X1", 2)));
        assert!(!three.contains(&w("x1 x1", 2)));
        for p in &three {
            assert_eq!(abelianize_word(p).content(), 1, "{p}");
        }
        assert!(matches!(
            primitive_census_brute_with_budget(2, 3, 10),
            Err(Error::Budget { .. })
        ));
    }
}
