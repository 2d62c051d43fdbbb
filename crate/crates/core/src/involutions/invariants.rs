use serde::Serialize;

use crate::abelian::{block_count_from_trace, induced_matrix, is_soft, IntMatrix};
use crate::automorphisms::Automorphism;
use crate::error::{Error, Result};
use crate::stallings::{fixed_subgroup_approx, graph_rank};

use super::search::{find_canonical_basis, SearchConfig};
use super::{CanonicalData, Tri};

/// Rank of the fixed subgroup, exact or as a lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum FixRank {
    Exact(usize),
    AtLeast(usize),
}

impl FixRank {
    pub fn value(self) -> usize {
        match self {
            FixRank::Exact(v) | FixRank::AtLeast(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, FixRank::Exact(_))
    }
}

/// Conjugacy invariants of an involution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionInvariants {
    pub rank: usize,
    pub soft: bool,
    pub fix_rank: FixRank,
    /// Number of blocks; only defined for soft involutions.
    pub block_count: Option<usize>,
    /// Block sizes in decreasing order, when they are determined.
    pub blocks: Option<Vec<usize>>,
    /// Full shape, when a canonical basis was exhibited.
    pub canonical: Option<CanonicalData>,
    /// Word length up to which fixed words were enumerated.
    pub fix_len_bound: usize,
}

/// Invariants with the default canonical-basis search; fixed words are
/// enumerated up to length `budget`.
pub fn extract_invariants(f: &Automorphism, budget: usize) -> Result<InvolutionInvariants> {
    extract_invariants_with(f, budget, &SearchConfig::default())
}

pub fn extract_invariants_with(
    f: &Automorphism,
    budget: usize,
    config: &SearchConfig,
) -> Result<InvolutionInvariants> {
    if !f.is_involution() {
        return Err(Error::NotInvolution);
    }
    let rank = f.rank();
    let soft = is_soft(f)?;
    let block_count = if soft {
        Some(block_count_from_trace(f)?)
    } else {
        None
    };
    let lower = graph_rank(&fixed_subgroup_approx(f, budget)?);
    let canonical = find_canonical_basis(f, config).map(|b| b.canonical.data);
    let fix_rank = match (&canonical, block_count) {
        (Some(d), _) => FixRank::Exact(d.fixed),
        // |U| + |X| ≤ rank, so reaching the bound pins |U| down
        (None, Some(bc)) if lower + bc == rank => FixRank::Exact(lower),
        _ => FixRank::AtLeast(lower),
    };
    let blocks = match (&canonical, block_count, fix_rank) {
        (Some(d), _, _) => Some(d.blocks.clone()),
        (None, Some(bc), FixRank::Exact(u)) => forced_partition(rank - u, bc),
        _ => None,
    };
    Ok(InvolutionInvariants {
        rank,
        soft,
        fix_rank,
        block_count,
        blocks,
        canonical,
        fix_len_bound: budget,
    })
}

/// The unique partition of `n` into `k` positive parts, if there is only one.
fn forced_partition(n: usize, k: usize) -> Option<Vec<usize>> {
    if k == 0 {
        return (n == 0).then(Vec::new);
    }
    if n < k {
        return None;
    }
    if k == 1 {
        return Some(vec![n]);
    }
    match n - k {
        0 => Some(vec![1; k]),
        1 => {
            let mut v = vec![1; k];
            v[0] = 2;
            Some(v)
        }
        _ => None,
    }
}

pub fn same_canonical_form(f: &Automorphism, g: &Automorphism, budget: usize) -> Result<Tri> {
    same_canonical_form_with(f, g, budget, &SearchConfig::default())
}

/// Decides conjugacy of soft involutions from their invariants; `Unknown`
/// when either input is not soft or the invariants do not settle it.
pub fn same_canonical_form_with(
    f: &Automorphism,
    g: &Automorphism,
    budget: usize,
    config: &SearchConfig,
) -> Result<Tri> {
    if f.rank() != g.rank() {
        return Err(Error::RankMismatch {
            expected: f.rank(),
            found: g.rank(),
        });
    }
    if !f.is_involution() || !g.is_involution() {
        return Err(Error::NotInvolution);
    }
    if !is_soft(f)? || !is_soft(g)? {
        return Ok(Tri::Unknown);
    }
    let a = extract_invariants_with(f, budget, config)?;
    let b = extract_invariants_with(g, budget, config)?;
    Ok(compare_soft(&a, &b))
}

pub(crate) fn compare_soft(a: &InvolutionInvariants, b: &InvolutionInvariants) -> Tri {
    if a.block_count != b.block_count {
        return Tri::No;
    }
    if let (Some(x), Some(y)) = (&a.blocks, &b.blocks) {
        return Tri::from_bool(a.fix_rank == b.fix_rank && x == y);
    }
    match (a.fix_rank, b.fix_rank) {
        (FixRank::Exact(x), FixRank::Exact(y)) if x != y => Tri::No,
        (FixRank::Exact(x), FixRank::AtLeast(y)) | (FixRank::AtLeast(y), FixRank::Exact(x))
            if y > x =>
        {
            Tri::No
        }
        _ => Tri::Unknown,
    }
}

/// Involution inverting every element of some basis, recognized by its
/// action `-id` on the abelianization.
pub fn is_symmetry(f: &Automorphism) -> bool {
    f.is_involution() && induced_matrix(f.forward()) == IntMatrix::scalar(f.rank(), -1)
}

pub fn is_quasi_conjugation(f: &Automorphism, budget: usize) -> Tri {
    is_quasi_conjugation_with(f, budget, &SearchConfig::default())
}

/// Soft involution with one block and trivial fixed subgroup. `Unknown`
/// when the fixed subgroup could not be certified trivial.
pub fn is_quasi_conjugation_with(f: &Automorphism, budget: usize, config: &SearchConfig) -> Tri {
    if !f.is_involution() || !matches!(is_soft(f), Ok(true)) {
        return Tri::No;
    }
    if block_count_from_trace(f) != Ok(1) {
        return Tri::No;
    }
    match extract_invariants_with(f, budget, config) {
        Ok(inv) => match inv.fix_rank {
            FixRank::Exact(0) => Tri::Yes,
            FixRank::AtLeast(0) => Tri::Unknown,
            _ => Tri::No,
        },
        Err(_) => Tri::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::random_automorphism_with;
    use crate::involutions::build_canonical;
    use crate::words::Word;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(text: &str, rank: usize) -> Word {
        Word::parse(text, rank).unwrap()
    }

    fn canon(fixed: usize, pairs: usize, blocks: &[usize]) -> Automorphism {
        let d = CanonicalData::new(fixed, pairs, blocks.to_vec()).unwrap();
        build_canonical(&d, d.rank()).unwrap().automorphism
    }

    #[test]
    fn extract_examples() {
        let qc = extract_invariants(&canon(0, 0, &[3]), 8).unwrap();
        assert!(qc.soft);
        assert_eq!(qc.fix_rank, FixRank::Exact(0));
        assert_eq!(qc.block_count, Some(1));
        let sym = extract_invariants(&canon(0, 0, &[1, 1, 1]), 8).unwrap();
        assert_eq!(
            (sym.soft, sym.fix_rank, sym.block_count),
            (true, FixRank::Exact(0), Some(3))
        );
        let swap = extract_invariants(&canon(0, 1, &[]), 8).unwrap();
        assert!(!swap.soft);
        assert_eq!(swap.block_count, None);
        assert_eq!(swap.fix_rank, FixRank::Exact(0));
        assert_eq!(
            extract_invariants(&Automorphism::identity(2), 4),
            Err(Error::NotInvolution)
        );
    }

    #[test]
    fn forced_partitions() {
        assert_eq!(forced_partition(4, 1), Some(vec![4]));
        assert_eq!(forced_partition(3, 3), Some(vec![1, 1, 1]));
        assert_eq!(forced_partition(4, 3), Some(vec![2, 1, 1]));
        assert_eq!(forced_partition(6, 3), None);
        assert_eq!(forced_partition(2, 3), None);
    }

    #[test]
    fn same_form_examples() {
        let a = Automorphism::from_involution(vec![w("X1", 2), w("x1 x2 X1", 2)]).unwrap();
        let b = Automorphism::from_involution(vec![w("X1", 2), w("X1 x2 X1", 2)]).unwrap();
        assert_eq!(same_canonical_form(&a, &b, 6), Ok(Tri::Yes));
        assert_eq!(
            same_canonical_form(&a, &canon(0, 0, &[1, 1]), 6),
            Ok(Tri::No)
        );
        let s1 = canon(0, 1, &[]);
        let s2 = Automorphism::from_involution(vec![w("x2", 2), w("x1", 2)])
            .unwrap()
            .conjugate_by(&canon(0, 0, &[1, 1]))
            .unwrap();
        assert_eq!(same_canonical_form(&s1, &s2, 6), Ok(Tri::Unknown));
        assert_eq!(
            same_canonical_form(&a, &Automorphism::identity(2), 6),
            Err(Error::NotInvolution)
        );
    }

    #[test]
    fn symmetry_and_quasi_conjugation_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        assert!(is_symmetry(&canon(0, 0, &[1, 1, 1])));
        assert!(!is_symmetry(&canon(0, 0, &[2])));
        for rank in 2..=4 {
            assert_eq!(is_quasi_conjugation(&canon(0, 0, &[rank]), 8), Tri::Yes);
            let sym = canon(0, 0, &vec![1; rank]);
            assert_eq!(is_quasi_conjugation(&sym, 8), Tri::No);
            let s = random_automorphism_with(rank, 10, &mut rng).unwrap();
            assert!(is_symmetry(&sym.conjugate_by(&s).unwrap()));
        }
        assert_eq!(is_quasi_conjugation(&canon(1, 0, &[2]), 8), Tri::No);
        assert_eq!(is_quasi_conjugation(&Automorphism::identity(2), 8), Tri::No);
    }

    #[test]
    fn invariants_are_conjugation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for rank in 2..=4 {
            for d in CanonicalData::enumerate(rank) {
                let f = build_canonical(&d, rank).unwrap().automorphism;
                let base = extract_invariants(&f, 8).unwrap();
                for _ in 0..3 {
                    let s = random_automorphism_with(rank, rng.gen_range(1..10), &mut rng).unwrap();
                    let g = f.conjugate_by(&s).unwrap();
                    let budget = 2 * g.forward().max_image_len() + 2;
                    let inv = extract_invariants(&g, budget.min(12)).unwrap();
                    assert_eq!(inv.soft, base.soft);
                    assert_eq!(inv.block_count, base.block_count);
                    assert_eq!(inv.fix_rank, base.fix_rank, "{d} via {g}");
                    assert_eq!(inv.canonical, Some(d.clone()));
                    if d.is_soft() {
                        assert_eq!(same_canonical_form(&f, &g, 8), Ok(Tri::Yes));
                    }
                }
            }
        }
    }

    #[test]
    fn quasi_conjugation_survives_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for rank in 2..=3 {
            let qc = canon(0, 0, &[rank]);
            for _ in 0..10 {
                let s = random_automorphism_with(rank, 10, &mut rng).unwrap();
                assert_eq!(
                    is_quasi_conjugation(&qc.conjugate_by(&s).unwrap(), 8),
                    Tri::Yes
                );
            }
        }
    }
}
