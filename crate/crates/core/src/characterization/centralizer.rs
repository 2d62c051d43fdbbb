use rand::Rng;
use serde::Serialize;

use crate::automorphisms::{cached_whitehead_generators, Automorphism, Endomorphism};
use crate::error::{Error, Result};
use crate::words::Word;

use super::BlockFrame;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CentralizerVariant {
    FixesX,
    InvertsX,
    NotInCentralizer,
}

/// Shape of an automorphism commuting with a single-block involution.
///
/// For a quasi-conjugation with block `{x} ∪ Y` the commuting maps are
/// `x ↦ x, y ↦ θ(y)` and `x ↦ x⁻¹, y ↦ x θ(y) x⁻¹` with `θ` an
/// automorphism of `⟨Y⟩`. With one extra fixed letter `u` both shapes are
/// further conjugated by `u^shift`, and `u ↦ u^fixed_sign`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerForm {
    pub variant: CentralizerVariant,
    /// `θ(y)` for the letters `y` of the block, in order.
    pub theta_images: Option<Vec<Word>>,
    pub shift: Option<i64>,
    pub fixed_sign: Option<i32>,
}

impl CentralizerForm {
    fn outside() -> CentralizerForm {
        CentralizerForm {
            variant: CentralizerVariant::NotInCentralizer,
            theta_images: None,
            shift: None,
            fixed_sign: None,
        }
    }

    /// The endomorphism this form describes, or `None` outside the
    /// centralizer.
    pub fn rebuild(&self, frame: &BlockFrame) -> Option<Endomorphism> {
        let theta = self.theta_images.as_ref()?;
        let rank = frame.rank;
        let x = frame.head_word();
        let inverts = self.variant == CentralizerVariant::InvertsX;
        let outer = match frame.fixed.first() {
            Some(&u) => Word::generator(rank, u).pow(self.shift.unwrap_or(0)),
            None => Word::identity(rank),
        };
        let mut images: Vec<Word> = (1..=rank).map(|i| Word::generator(rank, i)).collect();
        images[frame.head - 1] = if inverts { x.inverse() } else { x.clone() }.conjugate(&outer);
        for (&y, t) in frame.tail.iter().zip(theta) {
            let inner = if inverts { t.conjugate(&x) } else { t.clone() };
            images[y - 1] = inner.conjugate(&outer);
        }
        if let (Some(&u), Some(e)) = (frame.fixed.first(), self.fixed_sign) {
            images[u - 1] = Word::generator(rank, u).pow(e as i64);
        }
        Endomorphism::new(images).ok()
    }
}

/// Splits a commuting `sigma` as `ι ∘ rest` with `ι` conjugation by a power
/// of the fixed letter and `rest` sending `x` to `x^±1`, then folds the
/// inverting case into the fixing one by composing with `phi`. Returns the
/// variant, the shift, the sign on the fixed letter, and the resulting map
/// preserving `⟨Y⟩`.
pub(crate) fn normalize(
    frame: &BlockFrame,
    phi: &Automorphism,
    sigma: &Automorphism,
) -> Result<(CentralizerVariant, Option<i64>, Option<i32>, Automorphism)> {
    let outside = || Error::Precondition(format!("{sigma} commutes but fits neither form"));
    let (core, conj) = sigma.image(frame.head).cyclic_reduce();
    let (shift, fixed_sign, rest) = match frame.fixed.first() {
        Some(&u) => {
            if !conj.uses_only(|i| i == u) {
                return Err(outside());
            }
            let k: i64 = conj.letters().iter().map(|l| l.sign() as i64).sum();
            let e = match sigma.image(u).letters() {
                [l] if l.index() == u => l.sign(),
                _ => return Err(outside()),
            };
            let shift_map = Automorphism::inner(&conj);
            (Some(k), Some(e), shift_map.inverse().compose(sigma)?)
        }
        None => {
            if !conj.is_identity() {
                return Err(outside());
            }
            (None, None, sigma.clone())
        }
    };
    let x = frame.head_word();
    let (variant, fixing) = if core == x {
        (CentralizerVariant::FixesX, rest)
    } else if core == x.inverse() {
        (CentralizerVariant::InvertsX, phi.compose(&rest)?)
    } else {
        return Err(outside());
    };
    debug_assert_eq!(fixing.image(frame.head), &x);
    if frame
        .tail
        .iter()
        .any(|&y| !fixing.image(y).uses_only(|i| frame.tail.contains(&i)))
    {
        return Err(outside());
    }
    Ok((variant, shift, fixed_sign, fixing))
}

/// Classifies `sigma` against the canonical single-block involution `phi`
/// (a quasi-conjugation, or one block plus one fixed letter).
pub fn centralizer_form(phi: &Automorphism, sigma: &Automorphism) -> Result<CentralizerForm> {
    let frame = BlockFrame::of(phi)?;
    if frame.fixed.len() > 1 {
        return Err(Error::Precondition(format!(
            "at most one fixed letter supported, found {}",
            frame.fixed.len()
        )));
    }
    if sigma.rank() != phi.rank() {
        return Err(Error::RankMismatch {
            expected: phi.rank(),
            found: sigma.rank(),
        });
    }
    if !sigma.commutes_with(phi)? {
        return Ok(CentralizerForm::outside());
    }
    let (variant, shift, fixed_sign, fixing) = normalize(&frame, phi, sigma)?;
    let theta_images = frame
        .tail
        .iter()
        .map(|&y| fixing.image(y).clone())
        .collect();
    let form = CentralizerForm {
        variant,
        theta_images: Some(theta_images),
        shift,
        fixed_sign,
    };
    debug_assert_eq!(form.rebuild(&frame).as_ref(), Some(sigma.forward()));
    Ok(form)
}

/// The automorphism of the free group on the block letters induced by a
/// map fixing `x` and preserving `⟨Y⟩`.
pub fn restrict_to_block(frame: &BlockFrame, tau: &Automorphism) -> Result<Automorphism> {
    let side = |e: &Endomorphism| -> Result<Vec<Word>> {
        frame
            .tail
            .iter()
            .map(|&y| {
                frame.to_block(e.image(y)).ok_or_else(|| {
                    Error::Precondition(format!("{} leaves the block subgroup", e.image(y)))
                })
            })
            .collect()
    };
    Automorphism::new(side(tau.forward())?, side(tau.backward())?)
}

/// Extends an automorphism of the free group on the block letters by the
/// identity on every other generator.
pub fn extend_from_block(frame: &BlockFrame, theta: &Automorphism) -> Automorphism {
    let side = |e: &Endomorphism| -> Vec<Word> {
        let mut images: Vec<Word> = (1..=frame.rank)
            .map(|i| Word::generator(frame.rank, i))
            .collect();
        for (j, &y) in frame.tail.iter().enumerate() {
            images[y - 1] = frame.from_block(e.image(j + 1));
        }
        images
    };
    Automorphism::new(side(theta.forward()), side(theta.backward()))
        .expect("extension of an automorphism")
}

/// Product of at most `len` random generators of the centralizer of `phi`:
/// extended Whitehead generators of the block, `phi` itself, and for a
/// fixed letter `u` the conjugation by `u` and the inversion of `u`.
pub fn sample_centralizer<R: Rng + ?Sized>(
    phi: &Automorphism,
    len: usize,
    rng: &mut R,
) -> Result<Automorphism> {
    let frame = BlockFrame::of(phi)?;
    let rank = frame.rank;
    let mut gens: Vec<Automorphism> = Vec::new();
    if !frame.tail.is_empty() {
        gens.extend(
            cached_whitehead_generators(frame.tail.len())
                .iter()
                .map(|g| extend_from_block(&frame, g)),
        );
    }
    gens.push(phi.clone());
    for &u in &frame.fixed {
        let gu = Word::generator(rank, u);
        gens.push(Automorphism::inner(&gu));
        let mut images: Vec<Word> = (1..=rank).map(|i| Word::generator(rank, i)).collect();
        images[u - 1] = gu.inverse();
        gens.push(Automorphism::from_involution(images)?);
    }
    let mut out = Automorphism::identity(rank);
    for _ in 0..rng.gen_range(0..=len) {
        out = out.compose(&gens[rng.gen_range(0..gens.len())])?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::random_automorphism_with;
    use crate::involutions::{build_canonical, CanonicalData};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(text: &str, rank: usize) -> Word {
        Word::parse(text, rank).unwrap()
    }

    fn words(texts: &[&str], rank: usize) -> Vec<Word> {
        texts.iter().map(|t| w(t, rank)).collect()
    }

    fn canon(fixed: usize, blocks: &[usize]) -> Automorphism {
        let d = CanonicalData::new(fixed, 0, blocks.to_vec()).unwrap();
        build_canonical(&d, d.rank()).unwrap().automorphism
    }

    #[test]
    fn centralizer_examples() {
        let qc = canon(0, &[3]);
        let swap = Automorphism::from_involution(words(&["x1", "x3", "x2"], 3)).unwrap();
        let f = centralizer_form(&qc, &swap).unwrap();
        assert_eq!(f.variant, CentralizerVariant::FixesX);
        assert_eq!(f.theta_images, Some(words(&["x3", "x2"], 3)));
        let f = centralizer_form(&qc, &qc).unwrap();
        assert_eq!(f.variant, CentralizerVariant::InvertsX);
        assert_eq!(f.theta_images, Some(words(&["x2", "x3"], 3)));
        let qc2 = canon(0, &[2]);
        let shear =
            Automorphism::new(words(&["x1", "x2 x1"], 2), words(&["x1", "x2 X1"], 2)).unwrap();
        assert_eq!(
            centralizer_form(&qc2, &shear).unwrap().variant,
            CentralizerVariant::NotInCentralizer
        );
    }

    #[test]
    fn shifted_forms_with_a_fixed_letter() {
        let phi = canon(1, &[2]);
        let frame = BlockFrame::of(&phi).unwrap();
        let u = w("x1", 3);
        let shifted = Automorphism::inner(&u.pow(2)).compose(&phi).unwrap();
        let f = centralizer_form(&phi, &shifted).unwrap();
        assert_eq!(f.variant, CentralizerVariant::InvertsX);
        assert_eq!((f.shift, f.fixed_sign), (Some(2), Some(1)));
        assert_eq!(f.rebuild(&frame).as_ref(), Some(shifted.forward()));
    }

    #[test]
    fn centralizer_samples_classify() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for phi in [
            canon(0, &[2]),
            canon(0, &[3]),
            canon(0, &[4]),
            canon(1, &[2]),
        ] {
            let frame = BlockFrame::of(&phi).unwrap();
            for _ in 0..150 {
                let s = sample_centralizer(&phi, 6, &mut rng).unwrap();
                assert!(s.commutes_with(&phi).unwrap());
                let f = centralizer_form(&phi, &s).unwrap();
                assert_ne!(f.variant, CentralizerVariant::NotInCentralizer);
                assert_eq!(f.rebuild(&frame).as_ref(), Some(s.forward()));
                let theta = match f.variant {
                    CentralizerVariant::FixesX => s.clone(),
                    _ => phi.compose(&s).unwrap(),
                };
                if frame.fixed.is_empty() {
                    let r = restrict_to_block(&frame, &theta).unwrap();
                    assert_eq!(extend_from_block(&frame, &r), theta);
                }
            }
            for _ in 0..150 {
                let s =
                    random_automorphism_with(phi.rank(), rng.gen_range(1..8), &mut rng).unwrap();
                let f = centralizer_form(&phi, &s).unwrap();
                assert_eq!(
                    f.variant == CentralizerVariant::NotInCentralizer,
                    !s.commutes_with(&phi).unwrap()
                );
            }
        }
    }
}
