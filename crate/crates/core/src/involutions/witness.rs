use crate::automorphisms::{Automorphism, Endomorphism};
use crate::error::{Error, Result};
use crate::words::Word;

use super::{acc_necessary, build_canonical, CanonicalData, CanonicalInvolution};

/// Two distinct commuting conjugates: `psi = sigma⁻¹ ∘ phi ∘ sigma`.
#[derive(Clone, Debug)]
pub struct ConjugateWitness {
    pub phi: Automorphism,
    pub psi: Automorphism,
    pub sigma: Automorphism,
}

impl ConjugateWitness {
    /// Checks conjugacy, commutation and distinctness on the basis.
    pub fn verify(&self) -> Result<bool> {
        Ok(self.phi.conjugate_by(&self.sigma)? == self.psi
            && self.phi.commutes_with(&self.psi)?
            && self.phi != self.psi)
    }
}

/// For a shape whose conjugacy class fails the anti-commutativity
/// condition of [`acc_necessary`], builds the involution together with a
/// distinct conjugate commuting with it.
///
/// A swapped pair is replaced by `z ↦ z'⁻¹, z' ↦ z⁻¹`; a block no larger
/// than the fixed part trades places with fixed letters; two blocks of
/// different sizes are interleaved after rewriting them in the twisted
/// form `a ↦ x⁻¹ a x⁻¹`.
pub fn commuting_conjugate_witness(data: &CanonicalData) -> Result<ConjugateWitness> {
    if acc_necessary(data) {
        return Err(Error::NotApplicable);
    }
    if data.is_trivial() {
        return Err(Error::Precondition(
            "the identity has no conjugate other than itself".into(),
        ));
    }
    let rank = data.rank();
    let canon = build_canonical(data, rank)?;
    let sigma = if data.pairs > 0 {
        pair_flip(&canon)
    } else if let Some(&s) = data.blocks.iter().rev().find(|&&s| s <= data.fixed) {
        block_swap(&canon, s)
    } else {
        unequal_blocks(&canon)
    }?;
    let phi = canon.automorphism;
    let psi = phi.conjugate_by(&sigma)?;
    let witness = ConjugateWitness { phi, psi, sigma };
    debug_assert!(witness.verify().unwrap_or(false));
    Ok(witness)
}

fn permutation(rank: usize, target: &[usize]) -> Result<Automorphism> {
    let mut inv = vec![0; rank];
    for (j, &t) in target.iter().enumerate() {
        inv[t - 1] = j + 1;
    }
    Automorphism::new(
        target.iter().map(|&t| Word::generator(rank, t)).collect(),
        inv.iter().map(|&t| Word::generator(rank, t)).collect(),
    )
}

/// Inverts the second letter of the first pair.
fn pair_flip(canon: &CanonicalInvolution) -> Result<Automorphism> {
    let rank = canon.automorphism.rank();
    let z2 = canon.data.fixed + 2;
    let images: Vec<Word> = (1..=rank)
        .map(|i| {
            let g = Word::generator(rank, i);
            if i == z2 {
                g.inverse()
            } else {
                g
            }
        })
        .collect();
    Automorphism::from_involution(images)
}

/// Exchanges the last block of size `s` with the first `s` fixed letters.
fn block_swap(canon: &CanonicalInvolution, s: usize) -> Result<Automorphism> {
    let rank = canon.automorphism.rank();
    let head = *canon
        .heads()
        .iter()
        .rev()
        .find(|&&h| canon.block_tail(h).len() + 1 == s)
        .expect("block of the requested size");
    let mut target: Vec<usize> = (1..=rank).collect();
    for k in 0..s {
        target[k] = head + k;
        target[head + k - 1] = k + 1;
    }
    permutation(rank, &target)
}

/// Two blocks of different sizes: heads `x` (larger) and `c` (smaller).
///
/// Write `Y_x = {a} ∪ B ∪ E` and `Y_c = D` with `|B| = |D|`. After the
/// change of basis `beta` sending `y ↦ x y` on `Y_x` and `d ↦ c d` on `D`,
/// the involution reads `x ↦ x⁻¹, a ↦ x⁻¹ a x⁻¹, ...`; the permutation
/// `tau` exchanging `a ↔ c` and `B ↔ D` conjugates it to a commuting
/// involution. The conjugator is `beta ∘ tau ∘ beta⁻¹`.
fn unequal_blocks(canon: &CanonicalInvolution) -> Result<Automorphism> {
    let rank = canon.automorphism.rank();
    let heads = canon.heads();
    let size = |h: usize| canon.block_tail(h).len() + 1;
    let x = heads[0];
    let c = *heads
        .iter()
        .find(|&&h| size(h) < size(x))
        .ok_or(Error::NotApplicable)?;
    let ys = canon.block_tail(x);
    let ds = canon.block_tail(c);
    let gen = |i: usize| Word::generator(rank, i);
    let mut fwd: Vec<Word> = (1..=rank).map(gen).collect();
    let mut bwd = fwd.clone();
    for &y in &ys {
        fwd[y - 1] = &gen(x) * &gen(y);
        bwd[y - 1] = &gen(x).inverse() * &gen(y);
    }
    for &d in &ds {
        fwd[d - 1] = &gen(c) * &gen(d);
        bwd[d - 1] = &gen(c).inverse() * &gen(d);
    }
    let beta = Automorphism::new(fwd, bwd)?;
    let mut target: Vec<usize> = (1..=rank).collect();
    target[ys[0] - 1] = c;
    target[c - 1] = ys[0];
    for (b, d) in ys[1..].iter().zip(&ds) {
        target[b - 1] = *d;
        target[d - 1] = *b;
    }
    let tau = permutation(rank, &target)?;
    debug_assert!(Endomorphism::identity(rank) == *tau.compose(&tau)?.forward());
    beta.compose(&tau)?.compose(&beta.inverse())
}
