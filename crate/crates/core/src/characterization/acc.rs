use serde::Serialize;

use crate::automorphisms::Automorphism;
use crate::error::{Error, Result};
use crate::involutions::{
    extract_invariants, find_canonical_basis, FixRank, InvolutionInvariants, SearchConfig, Tri,
};

use super::centralizer::normalize;
use super::{extend_from_block, restrict_to_block, BlockFrame};

/// Word-length budget for fixed-subgroup enumeration when comparing
/// products.
const PRODUCT_FIX_BUDGET: usize = 10;

/// Anti-commutativity of the conjugacy class of `v`, with the universal
/// quantifier restricted to `universe`: `v` is an involution, and whenever
/// `v` and a conjugate `u v u⁻¹` commute they are equal.
///
/// `false` is always backed by a concrete element of `universe`; `true`
/// only says no counterexample was found there.
pub fn eval_acc_formula(v: &Automorphism, universe: &[Automorphism]) -> bool {
    if !v.is_involution() {
        return false;
    }
    universe.iter().all(|u| match v.conjugated_with(u) {
        Ok(vu) => vu == *v || !matches!(v.commutes_with(&vu), Ok(true)),
        Err(_) => true,
    })
}

/// Outcome of comparing `phi ∘ psi` with `phi ∘ psi_prime`. When the
/// verdict is `yes`, `conjugator` satisfies
/// `conjugator⁻¹ ∘ (phi ∘ psi) ∘ conjugator = phi ∘ psi_prime`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KkVerdict {
    pub verdict: Tri,
    #[serde(skip)]
    pub conjugator: Option<Automorphism>,
}

impl KkVerdict {
    fn of(verdict: Tri) -> KkVerdict {
        KkVerdict {
            verdict,
            conjugator: None,
        }
    }
}

/// Decides whether `phi ∘ psi` and `phi ∘ psi_prime` are conjugate for
/// involutions `psi`, `psi_prime` commuting with `phi`.
///
/// For a quasi-conjugation `phi`, when both arguments act the same way on
/// the head `x` their restrictions to the block subgroup are compared by
/// canonical basis; a conjugator there extends by fixing `x` to a map
/// commuting with `phi` that conjugates one product into the other. Failing
/// that, differing conjugacy invariants of the two products give `no`;
/// anything else is `unknown`.
pub fn kkprime_product_conjugacy_check(
    phi: &Automorphism,
    psi: &Automorphism,
    psi_prime: &Automorphism,
) -> Result<KkVerdict> {
    for g in [psi, psi_prime] {
        if g.rank() != phi.rank() {
            return Err(Error::RankMismatch {
                expected: phi.rank(),
                found: g.rank(),
            });
        }
        if !g.commutes_with(phi)? {
            return Err(Error::Precondition(format!(
                "{g} does not commute with {phi}"
            )));
        }
    }
    if psi == psi_prime {
        return Ok(KkVerdict {
            verdict: Tri::Yes,
            conjugator: Some(Automorphism::identity(phi.rank())),
        });
    }
    let product = phi.compose(psi)?;
    let product_prime = phi.compose(psi_prime)?;
    if let Some(sigma) = block_conjugator(phi, psi, psi_prime)? {
        if product.conjugate_by(&sigma)? == product_prime {
            return Ok(KkVerdict {
                verdict: Tri::Yes,
                conjugator: Some(sigma),
            });
        }
    }
    Ok(KkVerdict::of(compare_products(&product, &product_prime)?))
}

fn block_conjugator(
    phi: &Automorphism,
    psi: &Automorphism,
    psi_prime: &Automorphism,
) -> Result<Option<Automorphism>> {
    let Ok(frame) = BlockFrame::of(phi) else {
        return Ok(None);
    };
    if !frame.is_quasi_conjugation() {
        return Ok(None);
    }
    let (v1, _, _, t1) = normalize(&frame, phi, psi)?;
    let (v2, _, _, t2) = normalize(&frame, phi, psi_prime)?;
    if v1 != v2 {
        return Ok(None);
    }
    let theta = restrict_to_block(&frame, &t1)?;
    let theta_prime = restrict_to_block(&frame, &t2)?;
    let pi = if theta == theta_prime {
        Automorphism::identity(theta.rank())
    } else if theta.is_identity() || theta_prime.is_identity() {
        return Ok(None);
    } else {
        let config = SearchConfig::default();
        let (Some(b1), Some(b2)) = (
            find_canonical_basis(&theta, &config),
            find_canonical_basis(&theta_prime, &config),
        ) else {
            return Ok(None);
        };
        if b1.data() != b2.data() {
            return Ok(None);
        }
        b1.conjugator.compose(&b2.conjugator.inverse())?
    };
    if theta.conjugate_by(&pi)? != theta_prime {
        return Ok(None);
    }
    Ok(Some(extend_from_block(&frame, &pi)))
}

/// `no` when a conjugacy invariant separates the two involutions (or an
/// involution from the identity), `unknown` otherwise.
fn compare_products(f: &Automorphism, g: &Automorphism) -> Result<Tri> {
    match (f.is_identity(), g.is_identity()) {
        (true, true) => return Ok(Tri::Yes),
        (true, false) | (false, true) => return Ok(Tri::No),
        _ => {}
    }
    if !f.is_involution() || !g.is_involution() {
        return Ok(Tri::Unknown);
    }
    let a = extract_invariants(f, PRODUCT_FIX_BUDGET)?;
    let b = extract_invariants(g, PRODUCT_FIX_BUDGET)?;
    Ok(if separated(&a, &b) {
        Tri::No
    } else {
        Tri::Unknown
    })
}

fn separated(a: &InvolutionInvariants, b: &InvolutionInvariants) -> bool {
    if a.soft != b.soft || a.block_count != b.block_count {
        return true;
    }
    if let (Some(x), Some(y)) = (&a.canonical, &b.canonical) {
        return x != y;
    }
    if let (Some(x), Some(y)) = (&a.blocks, &b.blocks) {
        if x != y {
            return true;
        }
    }
    match (a.fix_rank, b.fix_rank) {
        (FixRank::Exact(x), FixRank::Exact(y)) => x != y,
        (FixRank::Exact(x), FixRank::AtLeast(y)) | (FixRank::AtLeast(y), FixRank::Exact(x)) => {
            y > x
        }
        _ => false,
    }
}
