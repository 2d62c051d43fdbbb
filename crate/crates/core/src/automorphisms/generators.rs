use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::words::{Letter, Word};

use super::{Automorphism, Endomorphism};

/// What a multiplier-type Whitehead move does to one generator `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveAction {
    Fix,
    /// `x ↦ x a`
    RightMultiply,
    /// `x ↦ a⁻¹ x`
    LeftMultiplyInverse,
    /// `x ↦ a⁻¹ x a`
    Conjugate,
}

impl MoveAction {
    const ALL: [MoveAction; 4] = [
        MoveAction::Fix,
        MoveAction::RightMultiply,
        MoveAction::LeftMultiplyInverse,
        MoveAction::Conjugate,
    ];
}

/// A Whitehead automorphism.
///
/// `Multiplier` moves fix the generator of `letter` and act on every other
/// generator according to `actions` (indexed by generator, the multiplier's
/// own slot is always `Fix`). `Permutation` moves send generator `i` to the
/// letter `images[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WhiteheadMove {
    Multiplier {
        letter: Letter,
        actions: Vec<MoveAction>,
    },
    Permutation {
        images: Vec<Letter>,
    },
}

impl WhiteheadMove {
    pub fn rank(&self) -> usize {
        match self {
            WhiteheadMove::Multiplier { actions, .. } => actions.len(),
            WhiteheadMove::Permutation { images } => images.len(),
        }
    }

    pub fn image(&self, index: usize) -> Word {
        let rank = self.rank();
        let x = Letter::gen(index);
        let letters: Vec<Letter> = match self {
            WhiteheadMove::Multiplier { letter, actions } => {
                let a = *letter;
                match actions[index - 1] {
                    MoveAction::Fix => vec![x],
                    MoveAction::RightMultiply => vec![x, a],
                    MoveAction::LeftMultiplyInverse => vec![a.inverse(), x],
                    MoveAction::Conjugate => vec![a.inverse(), x, a],
                }
            }
            WhiteheadMove::Permutation { images } => vec![images[index - 1]],
        };
        Word::from_reduced(rank, letters)
    }

    pub fn inverse(&self) -> WhiteheadMove {
        match self {
            WhiteheadMove::Multiplier { letter, actions } => WhiteheadMove::Multiplier {
                letter: letter.inverse(),
                actions: actions.clone(),
            },
            WhiteheadMove::Permutation { images } => {
                let mut inv = vec![Letter::gen(1); images.len()];
                for (i, l) in images.iter().enumerate() {
                    inv[l.index() - 1] = Letter::new(i + 1, l.is_inverse());
                }
                WhiteheadMove::Permutation { images: inv }
            }
        }
    }

    pub fn to_endomorphism(&self) -> Endomorphism {
        Endomorphism {
            rank: self.rank(),
            images: (1..=self.rank()).map(|i| self.image(i)).collect(),
        }
    }

    pub fn to_automorphism(&self) -> Automorphism {
        Automorphism::from_trusted(self.to_endomorphism(), self.inverse().to_endomorphism())
    }
}

impl fmt::Display for WhiteheadMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WhiteheadMove::Multiplier { letter, .. } => write!(f, "W[{letter}](")?,
            WhiteheadMove::Permutation { .. } => f.write_str("P(")?,
        }
        for i in 1..=self.rank() {
            if i > 1 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.image(i))?;
        }
        f.write_str(")")
    }
}

/// All nontrivial Whitehead moves of the given rank, in a fixed order.
///
/// Multiplier moves come first, grouped by multiplier letter in the order
/// `x1, X1, x2, X2, ...`; within a group the actions on the remaining
/// generators count up in base four (`Fix < RightMultiply <
/// LeftMultiplyInverse < Conjugate`, lowest generator most significant).
/// Signed permutations other than the identity follow, permutations in
/// lexicographic order and sign patterns counting up for each.
pub fn whitehead_moves(rank: usize) -> Vec<WhiteheadMove> {
    assert!(rank >= 1, "rank must be positive");
    let mut out = Vec::new();
    let others = rank - 1;
    for ordinal in 0..2 * rank {
        let letter = Letter::from_ordinal(ordinal);
        for code in 1..4usize.pow(others as u32) {
            let mut actions = vec![MoveAction::Fix; rank];
            let mut rem = code;
            let slots: Vec<usize> = (1..=rank).filter(|&i| i != letter.index()).collect();
            for &slot in slots.iter().rev() {
                actions[slot - 1] = MoveAction::ALL[rem % 4];
                rem /= 4;
            }
            out.push(WhiteheadMove::Multiplier { letter, actions });
        }
    }
    for perm in permutations(rank) {
        for mask in 0..(1usize << rank) {
            let identity = mask == 0 && perm.iter().enumerate().all(|(i, &p)| p == i + 1);
            if identity {
                continue;
            }
            let images = perm
                .iter()
                .enumerate()
                .map(|(i, &p)| Letter::new(p, mask >> (rank - 1 - i) & 1 == 1))
                .collect();
            out.push(WhiteheadMove::Permutation { images });
        }
    }
    out
}

/// The Whitehead moves as verified automorphisms, in [`whitehead_moves`] order.
pub fn whitehead_generators(rank: usize) -> Vec<Automorphism> {
    whitehead_moves(rank)
        .iter()
        .map(WhiteheadMove::to_automorphism)
        .collect()
}

/// Shared copy of [`whitehead_generators`], built once per rank.
pub fn cached_whitehead_generators(rank: usize) -> Arc<Vec<Automorphism>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Automorphism>>>>> = OnceLock::new();
    let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
    map.entry(rank)
        .or_insert_with(|| Arc::new(whitehead_generators(rank)))
        .clone()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i + 1);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn w(text: &str, rank: usize) -> Word {
        Word::parse(text, rank).unwrap()
    }

    #[test]
    fn counts() {
        // 2r letters × (4^(r-1) - 1) multiplier moves, plus 2^r r! - 1 signed permutations
        assert_eq!(whitehead_moves(2).len(), 4 * 3 + 8 - 1);
        assert_eq!(whitehead_moves(3).len(), 6 * 15 + 48 - 1);
        assert_eq!(whitehead_moves(4).len(), 8 * 63 + 384 - 1);
    }

    #[test]
    fn rank_two_contains_nielsen_move_and_swap() {
        let gens = whitehead_generators(2);
        let images = |a: &Automorphism| a.images().to_vec();
        assert!(gens
            .iter()
            .any(|g| images(g) == vec![w("x1", 2), w("x2 x1", 2)]));
        assert!(gens
            .iter()
            .any(|g| images(g) == vec![w("x2", 2), w("x1", 2)]));
    }

    #[test]
    fn closed_under_inverse() {
        for rank in 2..=3 {
            let gens = whitehead_generators(rank);
            let forwards: HashSet<Vec<Word>> = gens.iter().map(|g| g.images().to_vec()).collect();
            for g in &gens {
                g.verify_inverse().unwrap();
                assert!(forwards.contains(g.inverse().images()));
            }
        }
    }

    #[test]
    fn move_inverse_matches_automorphism_inverse() {
        for m in whitehead_moves(3) {
            assert_eq!(
                m.inverse().to_endomorphism(),
                *m.to_automorphism().backward()
            );
        }
    }
}
