use serde::Serialize;

use crate::automorphisms::Automorphism;
use crate::error::{Error, Result};
use crate::involutions::{recognize_canonical, Role};
use crate::stallings::fold;
use crate::whitehead::is_primitive;
use crate::words::{Letter, Word};

use super::BlockFrame;

/// `a = phi(w) · head · w⁻¹`, where `head` is a block head or absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvertedDecomposition {
    pub w: Word,
    pub head: Option<usize>,
}

impl InvertedDecomposition {
    /// `phi(w) · head · w⁻¹`.
    pub fn reassemble(&self, phi: &Automorphism) -> Word {
        let h = match self.head {
            Some(x) => Word::generator(self.w.rank(), x),
            None => Word::identity(self.w.rank()),
        };
        &(&phi.apply(&self.w) * &h) * &self.w.inverse()
    }
}

/// Writes an element inverted by a canonical involution without swapped
/// pairs as `phi(w) · x · w⁻¹` with `x` a block head, or as `phi(w) · w⁻¹`.
///
/// `F` splits as the free product of the fixed letters and one factor per
/// block, each preserved by `phi`. Matching the syllables of `a` against
/// those of `a⁻¹ = phi(a)` peels off `a = p · v · phi(p)⁻¹` with `v` in a
/// single block. Inside the block with head `x`, `phi` is conjugation by
/// `x` composed with the map inverting `x` and fixing the rest, which
/// reduces the problem for `v` to the same peeling for `v · x` over the
/// factors generated by single letters.
pub fn decompose_inverted(phi: &Automorphism, a: &Word) -> Result<InvertedDecomposition> {
    let (data, roles) = recognize_canonical(phi).ok_or_else(|| {
        Error::Precondition("involution does not act canonically on the generators".into())
    })?;
    if data.pairs != 0 {
        return Err(Error::Precondition(format!(
            "swapped pairs are not supported, found {data}"
        )));
    }
    if a.rank() != phi.rank() {
        return Err(Error::RankMismatch {
            expected: phi.rank(),
            found: a.rank(),
        });
    }
    if phi.apply(a) != a.inverse() {
        return Err(Error::NotInverted);
    }
    let rank = phi.rank();
    let factor = |l: Letter| match roles[l.index() - 1] {
        Role::Head => l.index(),
        Role::Conjugated { head } => head,
        _ => 0,
    };
    let runs = split_runs(a.letters(), factor);
    let half = runs.len() / 2;
    let p = Word::from_letters(rank, runs[..half].concat()).expect("subword of a reduced word");
    let phi_p = phi.apply(&p);
    let out = if runs.len() % 2 == 0 {
        InvertedDecomposition {
            w: phi_p,
            head: None,
        }
    } else {
        let middle = &runs[half];
        let x = factor(middle[0]);
        if x == 0 {
            unreachable!("a nontrivial fixed syllable cannot be inverted");
        }
        let v = Word::from_letters(rank, middle.iter().copied()).expect("syllable");
        let (w, head) = decompose_in_block(&v, x);
        InvertedDecomposition {
            w: &phi_p * &w,
            head,
        }
    };
    debug_assert_eq!(&out.reassemble(phi), a);
    Ok(out)
}

/// Maximal runs of consecutive letters with the same key.
fn split_runs(letters: &[Letter], key: impl Fn(Letter) -> usize) -> Vec<Vec<Letter>> {
    let mut runs: Vec<Vec<Letter>> = Vec::new();
    for &l in letters {
        match runs.last_mut() {
            Some(run) if key(run[0]) == key(l) => run.push(l),
            _ => runs.push(vec![l]),
        }
    }
    runs
}

/// `v` lies in the block with head `x` and is inverted there. With `e`
/// the map inverting `x` and fixing every other letter, `u = v x` satisfies
/// `e(u) = u⁻¹`, so `u = p x^j e(p)⁻¹`, and then
/// `w = x e(p) x^-s` works with `2s + e - 1 = j`.
fn decompose_in_block(v: &Word, x: usize) -> (Word, Option<usize>) {
    let rank = v.rank();
    let gx = Word::generator(rank, x);
    let u = v * &gx;
    let runs = split_runs(u.letters(), Letter::index);
    let half = runs.len() / 2;
    let j: i64 = if runs.len().is_multiple_of(2) {
        0
    } else {
        debug_assert_eq!(runs[half][0].index(), x);
        runs[half].iter().map(|l| l.sign() as i64).sum()
    };
    let flip = |i: usize| {
        if i == x {
            Letter::gen(i).inverse()
        } else {
            Letter::gen(i)
        }
    };
    let ep = Word::from_letters(rank, runs[..half].concat())
        .and_then(|p| p.relabel(rank, flip))
        .expect("subword of a reduced word");
    let (s, head) = if j % 2 == 0 {
        (j / 2, Some(x))
    } else {
        ((j + 1) / 2, None)
    };
    (&(&gx * &ep) * &gx.pow(-s), head)
}

/// Whether `phi(c) = x c x⁻¹` for the block head `x`. Such `c` are exactly
/// the elements of the subgroup generated by the letters the head
/// conjugates.
pub fn conjugation_subgroup_member(phi: &Automorphism, x: usize, c: &Word) -> bool {
    let gx = Word::generator(phi.rank(), x);
    c.rank() == phi.rank() && phi.apply(c) == c.conjugate(&gx)
}

/// `a = v · x^sign · v⁻¹` with `v` in the fixed subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimitiveInvertedForm {
    pub v: Word,
    pub sign: i32,
}

/// For an involution with one block `{x} ∪ Y`, fixed letters `U` and no
/// swapped pairs, writes a primitive element it inverts as a conjugate of
/// `x^±1` by an element of `⟨U⟩`.
pub fn primitive_inverted_form(alpha: &Automorphism, a: &Word) -> Result<PrimitiveInvertedForm> {
    let frame = BlockFrame::of(alpha)?;
    if a.rank() != alpha.rank() {
        return Err(Error::RankMismatch {
            expected: alpha.rank(),
            found: a.rank(),
        });
    }
    if alpha.apply(a) != a.inverse() {
        return Err(Error::NotInverted);
    }
    if !is_primitive(a) {
        return Err(Error::NotPrimitive);
    }
    let x = frame.head;
    let (core, b) = a.cyclic_reduce();
    let sign = match core.letters() {
        [l] if l.index() == x => l.sign(),
        _ => {
            return Err(Error::Precondition(format!(
                "cyclic core {core} is not a power of the head"
            )))
        }
    };
    let drift = &b.inverse() * &alpha.apply(&b);
    if !drift.uses_only(|i| i == x) {
        return Err(Error::Precondition(format!(
            "{drift} does not commute with the head"
        )));
    }
    let k: i64 = drift.letters().iter().map(|l| l.sign() as i64).sum();
    if k % 2 != 0 {
        return Err(Error::Precondition(format!("odd drift exponent {k}")));
    }
    let v = &b * &Word::generator(alpha.rank(), x).pow(k / 2);
    let fixed_gens: Vec<Word> = frame
        .fixed
        .iter()
        .map(|&u| Word::generator(alpha.rank(), u))
        .collect();
    if !fold(alpha.rank(), &fixed_gens)?.contains(&v)? {
        return Err(Error::Precondition(format!("{v} is not fixed")));
    }
    let out = PrimitiveInvertedForm { v, sign };
    debug_assert_eq!(
        &Word::generator(alpha.rank(), x)
            .pow(sign as i64)
            .conjugate(&out.v),
        a
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::abelianize_word;
    use crate::involutions::{build_canonical, CanonicalData};
    use crate::stallings::fold;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(text: &str, rank: usize) -> Word {
        Word::parse(text, rank).unwrap()
    }

    fn canon(fixed: usize, blocks: &[usize]) -> Automorphism {
        let d = CanonicalData::new(fixed, 0, blocks.to_vec()).unwrap();
        build_canonical(&d, d.rank()).unwrap().automorphism
    }

    #[test]
    fn decompose_examples() {
        let qc = canon(0, &[2]);
        let d = decompose_inverted(&qc, &w("x1", 2)).unwrap();
        assert_eq!(
            d,
            InvertedDecomposition {
                w: Word::identity(2),
                head: Some(1)
            }
        );
        let d = decompose_inverted(&qc, &w("x1 x2 X1 X2", 2)).unwrap();
        assert_eq!(
            d,
            InvertedDecomposition {
                w: w("x2", 2),
                head: None
            }
        );
        assert_eq!(
            decompose_inverted(&qc, &w("x2", 2)),
            Err(Error::NotInverted)
        );
        let swap = Automorphism::from_involution(vec![w("x2", 2), w("x1", 2)]).unwrap();
        assert!(matches!(
            decompose_inverted(&swap, &w("x1 X2", 2)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn decomposition_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for rank in 2..=4 {
            let shapes: Vec<CanonicalData> = CanonicalData::enumerate(rank)
                .into_iter()
                .filter(|d| d.pairs == 0)
                .collect();
            for _ in 0..300 {
                let d = &shapes[rng.gen_range(0..shapes.len())];
                let c = build_canonical(d, rank).unwrap();
                let phi = &c.automorphism;
                let heads = c.heads();
                let u = Word::random(rank, rng.gen_range(0..=8), &mut rng);
                let head = if rng.gen_bool(0.5) {
                    Some(heads[rng.gen_range(0..heads.len())])
                } else {
                    None
                };
                let a = InvertedDecomposition { w: u, head }.reassemble(phi);
                let got = decompose_inverted(phi, &a).unwrap();
                assert_eq!(got.reassemble(phi), a, "{d}: {a}");
                if head.is_none() {
                    assert!(abelianize_word(&a).is_even());
                }
            }
        }
    }

    #[test]
    fn head_is_determined() {
        let mut rng = ChaCha8Rng::seed_from_u64(62);
        let c = build_canonical(&CanonicalData::new(1, 0, vec![2, 1]).unwrap(), 4).unwrap();
        for _ in 0..200 {
            let head = c.heads()[rng.gen_range(0..2)];
            let u = Word::random(4, rng.gen_range(0..8), &mut rng);
            let a = InvertedDecomposition {
                w: u,
                head: Some(head),
            }
            .reassemble(&c.automorphism);
            assert_eq!(
                decompose_inverted(&c.automorphism, &a).unwrap().head,
                Some(head)
            );
        }
    }

    #[test]
    fn conjugation_subgroup_examples() {
        let qc = canon(0, &[2]);
        assert!(conjugation_subgroup_member(&qc, 1, &w("x2", 2)));
        assert!(!conjugation_subgroup_member(&qc, 1, &w("x1", 2)));
        let qc3 = canon(0, &[3]);
        assert!(conjugation_subgroup_member(&qc3, 1, &w("x2 X3", 3)));
        let tail = fold(3, &[w("x2", 3), w("x3", 3)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(63);
        for _ in 0..500 {
            let c = Word::random(3, rng.gen_range(0..6), &mut rng);
            if conjugation_subgroup_member(&qc3, 1, &c) {
                assert!(tail.contains(&c).unwrap(), "{c}");
            }
            if tail.contains(&c).unwrap() {
                assert!(conjugation_subgroup_member(&qc3, 1, &c));
            }
        }
    }

    #[test]
    fn primitive_inverted_examples() {
        let alpha = Automorphism::from_involution(vec![w("X1", 2), w("x2", 2)]).unwrap();
        let f = primitive_inverted_form(&alpha, &w("x2 x1 X2", 2)).unwrap();
        assert_eq!((f.v, f.sign), (w("x2", 2), 1));
        let f = primitive_inverted_form(&alpha, &w("x1", 2)).unwrap();
        assert_eq!((f.v, f.sign), (Word::identity(2), 1));
        let f = primitive_inverted_form(&alpha, &w("X1", 2)).unwrap();
        assert_eq!((f.v, f.sign), (Word::identity(2), -1));
        assert_eq!(
            primitive_inverted_form(&alpha, &w("x2", 2)),
            Err(Error::NotInverted)
        );
        assert_eq!(
            primitive_inverted_form(&alpha, &w("x1 x1 x1", 2)),
            Err(Error::NotPrimitive)
        );
    }

    #[test]
    fn primitive_inverted_elements_are_conjugates_of_the_head() {
        let mut rng = ChaCha8Rng::seed_from_u64(64);
        let alpha = canon(2, &[2]);
        let x = Word::generator(4, 3);
        for _ in 0..300 {
            let v = Word::random(2, rng.gen_range(0..6), &mut rng)
                .with_rank(4)
                .unwrap();
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let a = x.pow(sign).conjugate(&v);
            let f = primitive_inverted_form(&alpha, &a).unwrap();
            assert_eq!((f.v, f.sign as i64), (v, sign));
        }
        for _ in 0..300 {
            let u = Word::random(4, rng.gen_range(0..6), &mut rng);
            let a = InvertedDecomposition {
                w: u,
                head: Some(3),
            }
            .reassemble(&alpha);
            match primitive_inverted_form(&alpha, &a) {
                Ok(f) => assert!(f.v.uses_only(|i| i <= 2)),
                Err(e) => assert_eq!(e, Error::NotPrimitive, "{a}"),
            }
        }
    }
}
