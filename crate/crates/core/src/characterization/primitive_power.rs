use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian::induced_matrix;
use crate::automorphisms::Automorphism;
use crate::error::{Error, Result};
use crate::words::Word;

use super::{sample_centralizer, BlockFrame};

/// Evidence that an automorphism is conjugation by `x^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimitivePowerCertificate {
    pub x: Word,
    pub k: i64,
    pub verified: bool,
}

impl PrimitivePowerCertificate {
    pub fn conjugation(&self) -> Automorphism {
        Automorphism::inner(&self.x.pow(self.k))
    }

    /// Compares `tau` with conjugation by `x^k` on every generator.
    pub fn verify(&self, tau: &Automorphism) -> bool {
        self.x.rank() == tau.rank() && self.conjugation() == *tau
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

fn quasi_conjugation_frame(phi: &Automorphism) -> Result<BlockFrame> {
    let frame = BlockFrame::of(phi)?;
    if !frame.is_quasi_conjugation() {
        return Err(Error::Precondition(
            "expected a quasi-conjugation acting canonically".into(),
        ));
    }
    Ok(frame)
}

fn inversion_on(rank: usize, letters: &[usize]) -> Automorphism {
    let images = (1..=rank)
        .map(|i| {
            let g = Word::generator(rank, i);
            if letters.contains(&i) {
                g.inverse()
            } else {
                g
            }
        })
        .collect();
    Automorphism::from_involution(images).expect("sign change is an involution")
}

fn elementary(rank: usize, changes: &[(usize, Word, Word)]) -> Result<Automorphism> {
    let mut fwd: Vec<Word> = (1..=rank).map(|i| Word::generator(rank, i)).collect();
    let mut bwd = fwd.clone();
    for (i, f, b) in changes {
        fwd[i - 1] = f.clone();
        bwd[i - 1] = b.clone();
    }
    Automorphism::new(fwd, bwd)
}

/// The two explicit pairs of conjugate involutions commuting with the
/// quasi-conjugation `phi`, written on its block letters `a, b, c, ...`.
///
/// The first pair inverts every block letter, respectively `a` and each
/// `a⁻¹ y⁻¹ a`; the composite is conjugation by `a` on the block. The second
/// pair exchanges `a ↦ b⁻¹, b ↦ a⁻¹` and `a ↦ ab, b ↦ b⁻¹`; one of its
/// composites sends `a` to `b`.
pub fn designated_pi_pairs(phi: &Automorphism) -> Result<Vec<(Automorphism, Automorphism)>> {
    let frame = quasi_conjugation_frame(phi)?;
    let rank = frame.rank;
    if frame.tail.len() < 2 {
        return Err(Error::UnsupportedRank {
            rank,
            requirement: "rank at least 3",
        });
    }
    let g = |i: usize| Word::generator(rank, i);
    let (a, b) = (frame.tail[0], frame.tail[1]);
    let sigma = inversion_on(rank, &frame.tail);
    let shear: Vec<(usize, Word, Word)> = frame.tail[1..]
        .iter()
        .map(|&y| (y, &g(y) * &g(a), &g(y) * &g(a).inverse()))
        .collect();
    let sigma_prime = sigma.conjugated_with(&elementary(rank, &shear)?)?;
    let swap = elementary(
        rank,
        &[
            (a, g(b).inverse(), g(b).inverse()),
            (b, g(a).inverse(), g(a).inverse()),
        ],
    )?;
    let twist = elementary(
        rank,
        &[(
            b,
            (&g(a) * &g(b)).inverse(),
            &g(a).inverse() * &g(b).inverse(),
        )],
    )?;
    let swap_prime = swap.conjugated_with(&twist)?;
    Ok(vec![(sigma, sigma_prime), (swap, swap_prime)])
}

/// A finite sample of the family of products `σ ∘ σ'` of conjugate
/// automorphisms commuting with the quasi-conjugation `phi`: both orders of
/// the designated pairs, then `trials` seeded products with `σ` drawn from
/// the centralizer and `σ'` its conjugate by another centralizer element.
/// Every member is checked to fix the head and preserve the block subgroup.
pub fn build_pi_sample(phi: &Automorphism, trials: usize, seed: u64) -> Result<Vec<Automorphism>> {
    let frame = quasi_conjugation_frame(phi)?;
    if frame.rank < 3 {
        return Err(Error::UnsupportedRank {
            rank: frame.rank,
            requirement: "rank at least 3",
        });
    }
    let mut out = Vec::with_capacity(trials + 4);
    for (s, t) in designated_pi_pairs(phi)? {
        out.push(s.compose(&t)?);
        out.push(t.compose(&s)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let s = sample_centralizer(phi, 6, &mut rng)?;
        let r = sample_centralizer(phi, 6, &mut rng)?;
        out.push(s.compose(&s.conjugated_with(&r)?)?);
    }
    let x = frame.head_word();
    for p in &out {
        let keeps_block = frame
            .tail
            .iter()
            .all(|&y| p.image(y).uses_only(|i| frame.tail.contains(&i)));
        if p.apply(&x) != x || !keeps_block {
            return Err(Error::Precondition(format!("{p} does not fix the head")));
        }
    }
    Ok(out)
}

/// Recognizes conjugation by a power of the head `x` of the
/// quasi-conjugation `phi`.
///
/// In rank 2 the test is exact: commuting with the map fixing `x` and
/// inverting the other letter, not being an involution, and acting with
/// determinant 1 on the abelianization. In higher rank it uses commutation
/// with every member of `pi_sample`, which only approximates the full
/// family. A certificate is returned only after it has been checked on the
/// basis; a map passing the test but failing the check yields
/// `SampleInconclusive`.
pub fn is_conjugation_by_primitive_power(
    tau: &Automorphism,
    phi: &Automorphism,
    pi_sample: &[Automorphism],
) -> Result<Option<PrimitivePowerCertificate>> {
    let frame = quasi_conjugation_frame(phi)?;
    let rank = frame.rank;
    if tau.rank() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            found: tau.rank(),
        });
    }
    if tau.is_involution() {
        return Ok(None);
    }
    let sample_size = if rank == 2 {
        let psi = inversion_on(rank, &frame.tail);
        if !tau.commutes_with(&psi)? || induced_matrix(tau.forward()).determinant() != 1.into() {
            return Ok(None);
        }
        1
    } else {
        for p in pi_sample {
            if !tau.commutes_with(p)? {
                return Ok(None);
            }
        }
        pi_sample.len()
    };
    let inconclusive = Error::SampleInconclusive { sample_size };
    let x = frame.head_word();
    let a = Word::generator(rank, frame.tail[0]);
    let (core, conj) = tau.apply(&a).cyclic_reduce();
    if core != a || !conj.uses_only(|i| i == frame.head) {
        return Err(inconclusive);
    }
    let k = conj.letters().iter().map(|l| l.sign() as i64).sum();
    let cert = PrimitivePowerCertificate {
        x,
        k,
        verified: true,
    };
    if !cert.verify(tau) {
        return Err(inconclusive);
    }
    Ok(Some(cert))
}

/// Two conjugate symmetries whose composite is conjugation by `x^k`:
/// `alpha` inverts every generator, `alpha_prime` inverts `x` and sends each
/// other generator `y` to `x^-k y⁻¹ x^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateSymmetries {
    pub alpha: Automorphism,
    pub alpha_prime: Automorphism,
    /// `alpha_prime = conjugator ∘ alpha ∘ conjugator⁻¹`.
    pub conjugator: Automorphism,
}

impl ConjugateSymmetries {
    /// `alpha ∘ alpha_prime`.
    pub fn product(&self) -> Automorphism {
        self.alpha
            .compose(&self.alpha_prime)
            .expect("ranks agree by construction")
    }
}

pub fn product_of_conjugate_symmetries(
    x_index: usize,
    k: i64,
    rank: usize,
) -> Result<ConjugateSymmetries> {
    if rank < 2 {
        return Err(Error::UnsupportedRank {
            rank,
            requirement: "rank at least 2",
        });
    }
    if x_index == 0 || x_index > rank {
        return Err(Error::LetterOutOfRange {
            index: x_index,
            rank,
        });
    }
    let all: Vec<usize> = (1..=rank).collect();
    let alpha = inversion_on(rank, &all);
    let xk = Word::generator(rank, x_index).pow(k);
    let others: Vec<usize> = all.into_iter().filter(|&i| i != x_index).collect();
    let mut images: Vec<Word> = (1..=rank).map(|i| Word::generator(rank, i)).collect();
    images[x_index - 1] = images[x_index - 1].inverse();
    for &y in &others {
        images[y - 1] = images[y - 1].inverse().conjugate(&xk.inverse());
    }
    let alpha_prime = Automorphism::from_involution(images)?;
    let shear: Vec<(usize, Word, Word)> = others
        .iter()
        .map(|&y| {
            let g = Word::generator(rank, y);
            (y, &xk.inverse() * &g, &xk * &g)
        })
        .collect();
    let conjugator = elementary(rank, &shear)?;
    let out = ConjugateSymmetries {
        alpha,
        alpha_prime,
        conjugator,
    };
    debug_assert_eq!(
        out.alpha.conjugated_with(&out.conjugator),
        Ok(out.alpha_prime.clone())
    );
    debug_assert_eq!(out.product(), Automorphism::inner(&xk));
    Ok(out)
}
