//! Decompositions of inverted elements, centralizers of single-block
//! involutions, and recognition of conjugations by powers of primitive
//! elements.

mod acc;
mod centralizer;
mod decompose;
mod primitive_power;

pub use acc::{eval_acc_formula, kkprime_product_conjugacy_check, KkVerdict};
pub use centralizer::{
    centralizer_form, extend_from_block, restrict_to_block, sample_centralizer, CentralizerForm,
    CentralizerVariant,
};
pub use decompose::{
    conjugation_subgroup_member, decompose_inverted, primitive_inverted_form,
    InvertedDecomposition, PrimitiveInvertedForm,
};
pub use primitive_power::{
    build_pi_sample, designated_pi_pairs, is_conjugation_by_primitive_power,
    product_of_conjugate_symmetries, ConjugateSymmetries, PrimitivePowerCertificate,
};

use crate::automorphisms::Automorphism;
use crate::error::{Error, Result};
use crate::involutions::{recognize_canonical, Role};
use crate::words::{Letter, Word};

/// Coordinates of an involution acting canonically with a single block:
/// the head `x`, the letters `Y` it conjugates, and the fixed letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFrame {
    pub rank: usize,
    pub head: usize,
    pub tail: Vec<usize>,
    pub fixed: Vec<usize>,
}

impl BlockFrame {
    /// Reads the frame off `phi`, which must act canonically on the standard
    /// generators with no swapped pairs and exactly one block.
    pub fn of(phi: &Automorphism) -> Result<BlockFrame> {
        let (data, roles) = recognize_canonical(phi).ok_or_else(|| {
            Error::Precondition("involution does not act canonically on the generators".into())
        })?;
        if data.pairs != 0 || data.blocks.len() != 1 {
            return Err(Error::Precondition(format!(
                "expected a single block and no swapped pairs, found {data}"
            )));
        }
        let rank = phi.rank();
        let pick = |keep: &dyn Fn(Role) -> bool| -> Vec<usize> {
            (1..=rank).filter(|&i| keep(roles[i - 1])).collect()
        };
        let head = pick(&|r| r == Role::Head)[0];
        Ok(BlockFrame {
            rank,
            head,
            tail: pick(&|r| r == Role::Conjugated { head }),
            fixed: pick(&|r| r == Role::Fixed),
        })
    }

    /// Whether this is a quasi-conjugation: no fixed letters.
    pub fn is_quasi_conjugation(&self) -> bool {
        self.fixed.is_empty()
    }

    pub fn head_word(&self) -> Word {
        Word::generator(self.rank, self.head)
    }

    /// Rewrites a word in the letters of `Y` as a word of the free group
    /// of rank `|Y|`, the `j`-th tail letter becoming `x_j`.
    pub fn to_block(&self, w: &Word) -> Option<Word> {
        if !w.uses_only(|i| self.tail.contains(&i)) {
            return None;
        }
        let pos = |i: usize| self.tail.iter().position(|&t| t == i).unwrap() + 1;
        w.relabel(self.tail.len(), |i| Letter::gen(pos(i))).ok()
    }

    /// Inverse of [`BlockFrame::to_block`].
    pub fn from_block(&self, w: &Word) -> Word {
        w.relabel(self.rank, |j| Letter::gen(self.tail[j - 1]))
            .expect("tail letters lie within the rank")
    }
}
