//! Canonical forms of involutions.
//!
//! Every involution of a free group acts, on a suitable basis, by fixing
//! letters `u`, swapping pairs `z ↔ z'`, and on each block `{x} ∪ Y_x` by
//! `x ↦ x⁻¹`, `y ↦ x y x⁻¹`. [`CanonicalData`] records the shape of such a
//! basis.

mod invariants;
mod search;
mod witness;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automorphisms::{Automorphism, Endomorphism};
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

pub use invariants::{
    extract_invariants, extract_invariants_with, is_quasi_conjugation, is_quasi_conjugation_with,
    is_symmetry, same_canonical_form, same_canonical_form_with, FixRank, InvolutionInvariants,
};
pub use search::{find_canonical_basis, CanonicalBasis, SearchConfig};
pub use witness::{commuting_conjugate_witness, ConjugateWitness};

/// Three-valued answer for questions decided by bounded search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

/// Shape of a canonical basis: `fixed` letters `u`, `pairs` swapped pairs
/// and one block per entry of `blocks`, each entry being `|Y_x| + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalData {
    pub fixed: usize,
    pub pairs: usize,
    pub blocks: Vec<usize>,
}

impl CanonicalData {
    /// Blocks are stored in decreasing order.
    pub fn new(fixed: usize, pairs: usize, mut blocks: Vec<usize>) -> Result<CanonicalData> {
        if blocks.contains(&0) {
            return Err(Error::Precondition("block sizes must be positive".into()));
        }
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CanonicalData {
            fixed,
            pairs,
            blocks,
        })
    }

    pub fn from_json(text: &str) -> Result<CanonicalData> {
        let d: CanonicalData =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        CanonicalData::new(d.fixed, d.pairs, d.blocks)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn rank(&self) -> usize {
        self.fixed + 2 * self.pairs + self.blocks.iter().sum::<usize>()
    }

    pub fn is_soft(&self) -> bool {
        self.pairs == 0
    }

    /// True when the described map is the identity.
    pub fn is_trivial(&self) -> bool {
        self.pairs == 0 && self.blocks.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Every shape of the given rank with at least one pair or block, in a
    /// fixed order.
    pub fn enumerate(rank: usize) -> Vec<CanonicalData> {
        let mut out = Vec::new();
        for pairs in 0..=rank / 2 {
            for fixed in 0..=rank - 2 * pairs {
                let rest = rank - 2 * pairs - fixed;
                for blocks in partitions(rest, rest) {
                    let d = CanonicalData {
                        fixed,
                        pairs,
                        blocks,
                    };
                    if !d.is_trivial() {
                        out.push(d);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for CanonicalData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "U={} Z={} blocks={:?}",
            self.fixed, self.pairs, self.blocks
        )
    }
}

/// Partitions of `n` into parts of size at most `max`, parts decreasing.
fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// What a generator does under a canonical involution; generator indices
/// are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Fixed,
    PairFirst { partner: usize },
    PairSecond { partner: usize },
    Head,
    Conjugated { head: usize },
}

/// Roles of the generators in the standard layout: fixed letters, then
/// pairs `z, z'`, then blocks in decreasing size with the head first.
pub fn layout(data: &CanonicalData) -> Vec<Role> {
    let mut roles = vec![Role::Fixed; data.fixed];
    for _ in 0..data.pairs {
        let i = roles.len() + 1;
        roles.push(Role::PairFirst { partner: i + 1 });
        roles.push(Role::PairSecond { partner: i });
    }
    let mut blocks = data.blocks.clone();
    blocks.sort_unstable_by(|a, b| b.cmp(a));
    for size in blocks {
        let head = roles.len() + 1;
        roles.push(Role::Head);
        roles.extend((1..size).map(|_| Role::Conjugated { head }));
    }
    roles
}

/// Image of generator `i` under the involution with the given roles.
pub(crate) fn role_image(rank: usize, roles: &[Role], i: usize) -> Word {
    let g = Letter::gen(i);
    let letters = match roles[i - 1] {
        Role::Fixed => vec![g],
        Role::PairFirst { partner } | Role::PairSecond { partner } => vec![Letter::gen(partner)],
        Role::Head => vec![g.inverse()],
        Role::Conjugated { head } => {
            let x = Letter::gen(head);
            vec![x, g, x.inverse()]
        }
    };
    Word::from_reduced(rank, letters)
}

/// An involution in standard canonical layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalInvolution {
    pub data: CanonicalData,
    pub roles: Vec<Role>,
    pub automorphism: Automorphism,
}

impl CanonicalInvolution {
    /// 1 for the identity (no pairs, no blocks), 2 otherwise.
    pub fn order(&self) -> usize {
        if self.data.is_trivial() {
            1
        } else {
            2
        }
    }

    /// Indices of the fixed letters.
    pub fn fixed_letters(&self) -> Vec<usize> {
        self.indices(|r| r == Role::Fixed)
    }

    /// Indices of the block heads.
    pub fn heads(&self) -> Vec<usize> {
        self.indices(|r| r == Role::Head)
    }

    /// The letters conjugated by `head`.
    pub fn block_tail(&self, head: usize) -> Vec<usize> {
        self.indices(|r| r == Role::Conjugated { head })
    }

    fn indices(&self, keep: impl Fn(Role) -> bool) -> Vec<usize> {
        (1..=self.roles.len())
            .filter(|&i| keep(self.roles[i - 1]))
            .collect()
    }
}

/// The involution of the given shape on the standard layout.
pub fn build_canonical(data: &CanonicalData, rank: usize) -> Result<CanonicalInvolution> {
    if data.blocks.contains(&0) {
        return Err(Error::Precondition("block sizes must be positive".into()));
    }
    if data.rank() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            found: data.rank(),
        });
    }
    let data = CanonicalData::new(data.fixed, data.pairs, data.blocks.clone())?;
    let roles = layout(&data);
    let images = (1..=rank).map(|i| role_image(rank, &roles, i)).collect();
    let forward = Endomorphism::new(images)?;
    let automorphism = Automorphism::from_trusted(forward.clone(), forward);
    Ok(CanonicalInvolution {
        data,
        roles,
        automorphism,
    })
}

/// Reads off a canonical basis when `f` already acts canonically on the
/// standard generators, in any arrangement.
pub fn recognize_canonical(f: &Automorphism) -> Option<(CanonicalData, Vec<Role>)> {
    recognize_images(f.forward())
}

pub(crate) fn recognize_images(f: &Endomorphism) -> Option<(CanonicalData, Vec<Role>)> {
    let rank = f.rank();
    let mut roles = vec![Role::Fixed; rank];
    let single = |w: &Word| (w.len() == 1).then(|| w.letters()[0]);
    for i in 1..=rank {
        let im = f.image(i);
        let g = Letter::gen(i);
        roles[i - 1] = if let Some(l) = single(im) {
            if l == g {
                Role::Fixed
            } else if l == g.inverse() {
                Role::Head
            } else if !l.is_inverse() && single(f.image(l.index())) == Some(g) {
                if i < l.index() {
                    Role::PairFirst { partner: l.index() }
                } else {
                    Role::PairSecond { partner: l.index() }
                }
            } else {
                return None;
            }
        } else if im.len() == 3 {
            let ls = im.letters();
            if ls[1] != g || ls[0] != ls[2].inverse() || ls[0].is_inverse() {
                return None;
            }
            let h = ls[0].index();
            if h == i || single(f.image(h)) != Some(ls[0].inverse()) {
                return None;
            }
            Role::Conjugated { head: h }
        } else {
            return None;
        };
    }
    let fixed = roles.iter().filter(|&&r| r == Role::Fixed).count();
    let pairs = roles
        .iter()
        .filter(|r| matches!(r, Role::PairFirst { .. }))
        .count();
    let blocks = (1..=rank)
        .filter(|&i| roles[i - 1] == Role::Head)
        .map(|h| {
            1 + roles
                .iter()
                .filter(|&&r| r == Role::Conjugated { head: h })
                .count()
        })
        .collect();
    Some((CanonicalData::new(fixed, pairs, blocks).ok()?, roles))
}

/// Necessary condition for the conjugacy class of the involution to be
/// anti-commutative: no pairs, at least one block, all blocks of one size
/// `s`, and fewer than `s` fixed letters.
pub fn acc_necessary(data: &CanonicalData) -> bool {
    match data.blocks.first() {
        Some(&s) => data.pairs == 0 && data.blocks.iter().all(|&b| b == s) && data.fixed < s,
        None => false,
    }
}
