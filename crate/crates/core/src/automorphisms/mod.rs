//! Endomorphisms and automorphisms of a free group given by basis images.
//!
//! Composition follows the usual convention for maps: `f.compose(&g)` is
//! `f ∘ g`, so `g` acts first.

mod generators;
mod json;

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::words::{push_reduced, Word};

pub use generators::{
    cached_whitehead_generators, whitehead_generators, whitehead_moves, MoveAction, WhiteheadMove,
};
pub use json::AutomorphismJson;

/// Default bound on the length of any basis image produced by composition.
pub const DEFAULT_MAX_IMAGE_LEN: usize = 10_000;

static MAX_IMAGE_LEN: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_IMAGE_LEN);

pub fn max_image_len() -> usize {
    MAX_IMAGE_LEN.load(Ordering::Relaxed)
}

pub fn set_max_image_len(limit: usize) {
    MAX_IMAGE_LEN.store(limit, Ordering::Relaxed);
}

/// A map of the free group of rank `rank` determined by generator images.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    rank: usize,
    images: Vec<Word>,
}

impl Endomorphism {
    /// The endomorphism sending generator `i` to `images[i - 1]`.
    pub fn new(images: Vec<Word>) -> Result<Endomorphism> {
        let rank = images.len();
        for im in &images {
            if im.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: im.rank(),
                });
            }
        }
        Ok(Endomorphism { rank, images })
    }

    pub fn identity(rank: usize) -> Endomorphism {
        Endomorphism {
            rank,
            images: (1..=rank).map(|i| Word::generator(rank, i)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of generator `index` (1-based).
    pub fn image(&self, index: usize) -> &Word {
        &self.images[index - 1]
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn total_image_len(&self) -> usize {
        self.images.iter().map(Word::len).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, im)| im.len() == 1 && im.letters()[0].signed() == (i + 1) as i32)
    }

    /// Substitutes the images for the letters of `w` and reduces.
    pub fn try_apply(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: w.rank(),
            });
        }
        Ok(self.apply(w))
    }

    /// Unchecked [`Endomorphism::try_apply`]; panics on rank mismatch.
    pub fn apply(&self, w: &Word) -> Word {
        assert_eq!(w.rank(), self.rank, "apply: rank mismatch");
        let mut buf = Vec::with_capacity(w.len() * 2);
        for l in w.letters() {
            let im = &self.images[l.index() - 1];
            if l.is_inverse() {
                for m in im.letters().iter().rev() {
                    push_reduced(&mut buf, m.inverse());
                }
            } else {
                for &m in im.letters() {
                    push_reduced(&mut buf, m);
                }
            }
        }
        Word::from_reduced(self.rank, buf)
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        self.compose_with_limit(other, max_image_len())
    }

    pub(crate) fn compose_with_limit(
        &self,
        other: &Endomorphism,
        limit: usize,
    ) -> Result<Endomorphism> {
        if other.rank != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        let mut images = Vec::with_capacity(self.rank);
        for im in &other.images {
            let out = self.apply(im);
            if out.len() > limit {
                return Err(Error::LengthLimit {
                    len: out.len(),
                    limit,
                });
            }
            images.push(out);
        }
        Ok(Endomorphism {
            rank: self.rank,
            images,
        })
    }

    /// Extensional equality on the basis.
    pub fn try_equal(&self, other: &Endomorphism) -> Result<bool> {
        if other.rank != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(self.images == other.images)
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, im) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{} -> {}", i + 1, im)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// An automorphism together with a verified two-sided inverse.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    forward: Endomorphism,
    backward: Endomorphism,
}

impl Automorphism {
    /// Pairs `images` with `inverse_images` after checking that both
    /// composites fix every generator.
    pub fn new(images: Vec<Word>, inverse_images: Vec<Word>) -> Result<Automorphism> {
        let forward = Endomorphism::new(images)?;
        let backward = Endomorphism::new(inverse_images)?;
        Automorphism::from_parts(forward, backward)
    }

    pub fn from_parts(forward: Endomorphism, backward: Endomorphism) -> Result<Automorphism> {
        if forward.rank != backward.rank {
            return Err(Error::RankMismatch {
                expected: forward.rank,
                found: backward.rank,
            });
        }
        let aut = Automorphism { forward, backward };
        aut.verify_inverse()?;
        Ok(aut)
    }

    /// Accepts `images` as its own inverse if the map squares to the identity.
    pub fn from_involution(images: Vec<Word>) -> Result<Automorphism> {
        let forward = Endomorphism::new(images)?;
        Automorphism::from_parts(forward.clone(), forward)
    }

    /// Constructor for pairs that are inverse by construction; still
    /// checked in debug builds.
    pub(crate) fn from_trusted(forward: Endomorphism, backward: Endomorphism) -> Automorphism {
        let aut = Automorphism { forward, backward };
        debug_assert!(aut.verify_inverse().is_ok());
        aut
    }

    pub fn identity(rank: usize) -> Automorphism {
        let id = Endomorphism::identity(rank);
        Automorphism {
            forward: id.clone(),
            backward: id,
        }
    }

    /// Conjugation `w ↦ t w t^-1`.
    pub fn inner(t: &Word) -> Automorphism {
        let rank = t.rank();
        let ti = t.inverse();
        let conj = |a: &Word, b: &Word| -> Endomorphism {
            Endomorphism {
                rank,
                images: (1..=rank)
                    .map(|i| &(a * &Word::generator(rank, i)) * b)
                    .collect(),
            }
        };
        Automorphism {
            forward: conj(t, &ti),
            backward: conj(&ti, t),
        }
    }

    pub fn verify_inverse(&self) -> Result<()> {
        let fb = self.forward.compose(&self.backward)?;
        if !fb.is_identity() {
            return Err(Error::NotInverse(format!("forward ∘ backward = {{{fb}}}")));
        }
        let bf = self.backward.compose(&self.forward)?;
        if !bf.is_identity() {
            return Err(Error::NotInverse(format!("backward ∘ forward = {{{bf}}}")));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.forward.rank
    }

    pub fn forward(&self) -> &Endomorphism {
        &self.forward
    }

    pub fn backward(&self) -> &Endomorphism {
        &self.backward
    }

    pub fn images(&self) -> &[Word] {
        &self.forward.images
    }

    pub fn image(&self, index: usize) -> &Word {
        self.forward.image(index)
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    pub fn apply(&self, w: &Word) -> Word {
        self.forward.apply(w)
    }

    pub fn try_apply(&self, w: &Word) -> Result<Word> {
        self.forward.try_apply(w)
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        Ok(Automorphism {
            forward: self.forward.compose(&other.forward)?,
            backward: other.backward.compose(&self.backward)?,
        })
    }

    /// `sigma^-1 ∘ self ∘ sigma`.
    pub fn conjugate_by(&self, sigma: &Automorphism) -> Result<Automorphism> {
        sigma.inverse().compose(&self.compose(sigma)?)
    }

    /// `u ∘ self ∘ u^-1`.
    pub fn conjugated_with(&self, u: &Automorphism) -> Result<Automorphism> {
        u.compose(&self.compose(&u.inverse())?)
    }

    pub fn commutes_with(&self, other: &Automorphism) -> Result<bool> {
        Ok(self.forward.compose(&other.forward)? == other.forward.compose(&self.forward)?)
    }

    pub fn is_identity(&self) -> bool {
        self.forward.is_identity()
    }

    /// True iff `self ≠ id` and `self ∘ self = id`.
    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.forward == self.backward
    }

    pub fn pow(&self, n: i64) -> Result<Automorphism> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Automorphism::identity(self.rank());
        for _ in 0..n.unsigned_abs() {
            out = out.compose(&base)?;
        }
        Ok(out)
    }

    /// Least `k ≤ n` with `self^k = id`. Powers whose images outgrow the
    /// composition guard are treated as not the identity.
    pub fn order_at_most(&self, n: usize) -> Option<usize> {
        let mut power = self.forward.clone();
        for k in 1..=n {
            if power.is_identity() {
                return Some(k);
            }
            power = self.forward.compose(&power).ok()?;
        }
        None
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.forward, f)
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism{{{}}}", self.forward)
    }
}

/// Product of `length` Whitehead generators drawn uniformly from `rng`,
/// composed left to right as drawn.
pub fn random_automorphism_with<R: Rng + ?Sized>(
    rank: usize,
    length: usize,
    rng: &mut R,
) -> Result<Automorphism> {
    let moves = cached_whitehead_generators(rank);
    let mut out = Automorphism::identity(rank);
    for _ in 0..length {
        out = out.compose(&moves[rng.gen_range(0..moves.len())])?;
    }
    Ok(out)
}

/// Deterministic random automorphism: the same `(rank, length, seed)`
/// always yields the same map.
pub fn random_automorphism(rank: usize, length: usize, seed: u64) -> Result<Automorphism> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_automorphism_with(rank, length, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, rank: usize) -> Word {
        Word::parse(text, rank).unwrap()
    }

    fn aut(images: &[&str], inverse: &[&str]) -> Result<Automorphism> {
        let rank = images.len();
        Automorphism::new(
            images.iter().map(|s| w(s, rank)).collect(),
            inverse.iter().map(|s| w(s, rank)).collect(),
        )
    }

    fn qc() -> Automorphism {
        aut(&["X1", "x1 x2 X1"], &["X1", "x1 x2 X1"]).unwrap()
    }

    #[test]
    fn make_automorphism_examples() {
        let sym = aut(&["X1", "x2"], &["X1", "x2"]).unwrap();
        assert!(sym.is_involution());
        assert!(qc().is_involution());
        assert!(matches!(
            aut(&["x1 x1", "x2"], &["x1", "x2"]),
            Err(Error::NotInverse(_))
        ));
        let e = Automorphism::new(vec![w("x1", 2), w("x2", 2)], vec![w("x1", 3), w("x2", 3)]);
        assert!(matches!(e, Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn apply_examples() {
        assert_eq!(qc().apply(&w("x1 x2", 2)), w("x2 X1", 2));
        assert!(qc().apply(&Word::identity(2)).is_identity());
        let u = w("x1 X2 x2 x2 X1", 2);
        assert_eq!(Automorphism::identity(2).apply(&u), u);
        assert!(qc().try_apply(&w("x1", 3)).is_err());
    }

    #[test]
    fn compose_and_equal_examples() {
        let q = qc();
        assert!(q.compose(&q).unwrap().is_identity());
        assert_eq!(q.compose(&Automorphism::identity(2)).unwrap(), q);
        let cube = q.compose(&q).unwrap().compose(&q).unwrap();
        assert!(q.forward().try_equal(cube.forward()).unwrap());
        let sym = aut(&["X1", "X2"], &["X1", "X2"]).unwrap();
        assert!(!sym.forward().try_equal(q.forward()).unwrap());
        assert!(Endomorphism::identity(2)
            .try_equal(&Endomorphism::identity(2))
            .unwrap());
    }

    #[test]
    fn compose_convention_right_factor_first() {
        // f: x1 -> x1 x2, g: swap; (f∘g)(x1) = f(x2) = x2
        let f = aut(&["x1 x2", "x2"], &["x1 X2", "x2"]).unwrap();
        let g = aut(&["x2", "x1"], &["x2", "x1"]).unwrap();
        let fg = f.compose(&g).unwrap();
        assert_eq!(fg.image(1), &w("x2", 2));
        assert_eq!(fg.image(2), &w("x1 x2", 2));
        fg.verify_inverse().unwrap();
    }

    #[test]
    fn compose_guard() {
        let f = aut(&["x1 x2 x1", "x2"], &["X1", "x2"]);
        assert!(f.is_err());
        let t = aut(&["x1 x2", "x2"], &["x1 X2", "x2"]).unwrap();
        let fwd = t.forward();
        let mut p = fwd.clone();
        let mut hit = false;
        for _ in 0..20 {
            match fwd.compose_with_limit(&p, 8) {
                Ok(q) => p = q,
                Err(Error::LengthLimit { .. }) => {
                    hit = true;
                    break;
                }
                Err(e) => panic!("{e}"),
            }
        }
        assert!(hit);
    }

    #[test]
    fn order_examples() {
        assert_eq!(qc().order_at_most(5), Some(2));
        assert_eq!(Automorphism::identity(2).order_at_most(5), Some(1));
        let t = aut(&["x1", "x1 x2"], &["x1", "X1 x2"]).unwrap();
        assert_eq!(t.order_at_most(10), None);
        let rot = aut(&["x2", "X1"], &["X2", "x1"]).unwrap();
        assert_eq!(rot.order_at_most(10), Some(4));
    }

    #[test]
    fn inner_automorphism() {
        let t = w("x1 x2", 3);
        let c = Automorphism::inner(&t);
        assert_eq!(c.apply(&w("x3", 3)), w("x1 x2 x3 X2 X1", 3));
        c.verify_inverse().unwrap();
    }

    #[test]
    fn random_automorphism_examples() {
        assert!(random_automorphism(3, 0, 1).unwrap().is_identity());
        assert_eq!(
            random_automorphism(3, 12, 9).unwrap(),
            random_automorphism(3, 12, 9).unwrap()
        );
        random_automorphism(3, 20, 7)
            .unwrap()
            .verify_inverse()
            .unwrap();
    }

    #[test]
    fn apply_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            let rank = rng.gen_range(2..=4);
            let f = random_automorphism_with(rank, rng.gen_range(0..4), &mut rng).unwrap();
            let u = Word::random(rank, rng.gen_range(0..8), &mut rng);
            let v = Word::random(rank, rng.gen_range(0..8), &mut rng);
            assert_eq!(f.apply(&(&u * &v)), &f.apply(&u) * &f.apply(&v));
        }
    }

    #[test]
    fn compose_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..300 {
            let [f, g, h] = [0; 3].map(|_| random_automorphism_with(3, 2, &mut rng).unwrap());
            let left = f.compose(&g).unwrap().compose(&h).unwrap();
            let right = f.compose(&g.compose(&h).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn order_two_iff_nontrivial_square_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let sym = aut(&["X1", "X2"], &["X1", "X2"]).unwrap();
        for _ in 0..200 {
            let s = random_automorphism_with(2, 3, &mut rng).unwrap();
            for f in [s.clone(), sym.conjugate_by(&s).unwrap()] {
                let sq = f.compose(&f).unwrap();
                let expect = !f.is_identity() && sq.is_identity();
                assert_eq!(f.order_at_most(2) == Some(2), expect);
            }
        }
    }
}
