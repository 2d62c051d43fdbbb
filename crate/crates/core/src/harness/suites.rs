use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::{abelianize_word, induced_matrix};
use crate::automorphisms::{random_automorphism_with, Automorphism};
use crate::characterization::{
    build_pi_sample, centralizer_form, decompose_inverted, eval_acc_formula, extend_from_block,
    is_conjugation_by_primitive_power, kkprime_product_conjugacy_check,
    product_of_conjugate_symmetries, sample_centralizer, BlockFrame, CentralizerVariant,
    InvertedDecomposition,
};
use crate::error::Result;
use crate::involutions::{
    acc_necessary, build_canonical, commuting_conjugate_witness, is_symmetry, CanonicalData, Tri,
};
use crate::words::Word;

use super::{meskin_census, Suite};

type Outcome = std::result::Result<(), String>;

/// Elements of the seeded universe used for the anti-commutativity formula.
const ACC_UNIVERSE: usize = 200;
/// Random products added to the designated ones in the product family.
const PI_RANDOM: usize = 50;

/// Inputs shared by all trials of one run.
pub(super) struct Context {
    suite: Suite,
    rank: usize,
    shapes: Vec<CanonicalData>,
    phi: Automorphism,
    pi: Vec<Automorphism>,
    notes: Vec<String>,
}

fn canonical(d: &CanonicalData) -> Automorphism {
    build_canonical(d, d.rank())
        .expect("enumerated shapes are valid")
        .automorphism
}

fn quasi_conjugation(rank: usize) -> Automorphism {
    canonical(&CanonicalData::new(0, 0, vec![rank]).expect("valid shape"))
}

fn symmetry(rank: usize) -> Automorphism {
    canonical(&CanonicalData::new(0, 0, vec![1; rank]).expect("valid shape"))
}

fn random_aut(rank: usize, max_len: usize, rng: &mut ChaCha8Rng) -> Result<Automorphism> {
    let len = rng.gen_range(1..=max_len);
    random_automorphism_with(rank, len, rng)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::error::Error) -> String {
    format!("error: {e}")
}

impl Context {
    pub(super) fn new(suite: Suite, rank: usize, seed: u64) -> Result<Context> {
        let mut notes = Vec::new();
        let mut shapes = Vec::new();
        let mut pi = Vec::new();
        match suite {
            Suite::LemmaInverse => {
                shapes = CanonicalData::enumerate(rank)
                    .into_iter()
                    .filter(|d| d.pairs == 0)
                    .collect();
            }
            Suite::AccWitness => {
                shapes = CanonicalData::enumerate(rank)
                    .into_iter()
                    .filter(|d| !acc_necessary(d))
                    .collect();
                notes.push(format!(
                    "{} shapes fail the necessary condition; universe size {ACC_UNIVERSE}",
                    shapes.len()
                ));
            }
            Suite::QcNotSquare => {
                shapes = CanonicalData::enumerate(rank);
            }
            Suite::KkProducts => {
                shapes = CanonicalData::enumerate(rank - 1)
                    .into_iter()
                    .filter(|d| d.is_soft())
                    .collect();
            }
            Suite::PiCentralizer => {
                pi = build_pi_sample(&quasi_conjugation(rank), PI_RANDOM, seed)?;
                notes.push(format!("product family sample size {}", pi.len()));
            }
            Suite::MeskinCensus => {
                let c = meskin_census(rank);
                notes.push(format!(
                    "rank {rank}: {} classes ({} soft, {} non-soft)",
                    c.total(),
                    c.soft,
                    c.non_soft
                ));
            }
            _ => {}
        }
        Ok(Context {
            suite,
            rank,
            shapes,
            phi: quasi_conjugation(rank),
            pi,
            notes,
        })
    }

    pub(super) fn notes(&self) -> Vec<String> {
        self.notes.clone()
    }

    pub(super) fn trial(&self, index: usize, seed: u64) -> Outcome {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rng = &mut rng;
        match self.suite {
            Suite::LemmaInverse => self.lemma_inverse(rng),
            Suite::Centralizer => self.centralizer(index, rng),
            Suite::AccWitness => self.acc_witness(index, rng),
            Suite::QcAnticommute => self.anticommute(index, rng),
            Suite::QcNotSquare => self.not_square(rng),
            Suite::SymmetrySquare => self.symmetry_square(index, rng),
            Suite::KkProducts => self.kk_products(index, rng),
            Suite::PiCentralizer => self.pi_centralizer(index, rng),
            Suite::ConjRank2 => self.conj_rank2(index, rng),
            Suite::MeskinCensus => self.census(),
        }
    }

    fn lemma_inverse(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let d = &self.shapes[rng.gen_range(0..self.shapes.len())];
        let c = build_canonical(d, self.rank).map_err(err)?;
        let phi = &c.automorphism;
        let heads = c.heads();
        let w = Word::random(self.rank, rng.gen_range(0..=8), rng);
        let head = if !heads.is_empty() && rng.gen_bool(0.5) {
            Some(heads[rng.gen_range(0..heads.len())])
        } else {
            None
        };
        let a = InvertedDecomposition { w, head }.reassemble(phi);
        if head.is_none() {
            check(abelianize_word(&a).is_even(), || {
                format!("{a} is not even ({d})")
            })?;
        }
        let got = decompose_inverted(phi, &a).map_err(err)?;
        check(got.reassemble(phi) == a && got.head == head, || {
            format!(
                "{d}: a = {a} decomposed as w = {}, head {:?}",
                got.w, got.head
            )
        })
    }

    fn centralizer(&self, index: usize, rng: &mut ChaCha8Rng) -> Outcome {
        let phi = &self.phi;
        let frame = BlockFrame::of(phi).map_err(err)?;
        if index.is_multiple_of(2) {
            let s = sample_centralizer(phi, 6, rng).map_err(err)?;
            let f = centralizer_form(phi, &s).map_err(err)?;
            check(
                f.variant != CentralizerVariant::NotInCentralizer
                    && f.rebuild(&frame).as_ref() == Some(s.forward()),
                || format!("{s} misclassified as {:?}", f.variant),
            )
        } else {
            let s = loop {
                let s = random_aut(self.rank, 8, rng).map_err(err)?;
                if !s.commutes_with(phi).map_err(err)? {
                    break s;
                }
            };
            let f = centralizer_form(phi, &s).map_err(err)?;
            check(f.variant == CentralizerVariant::NotInCentralizer, || {
                format!("{s} misclassified as {:?}", f.variant)
            })
        }
    }

    fn universe(&self, rng: &mut ChaCha8Rng) -> Result<Vec<Automorphism>> {
        (0..ACC_UNIVERSE)
            .map(|_| random_aut(self.rank, 8, rng))
            .collect()
    }

    fn acc_witness(&self, index: usize, rng: &mut ChaCha8Rng) -> Outcome {
        let slot = index % (self.shapes.len() + 2);
        if slot < self.shapes.len() {
            let d = &self.shapes[slot];
            let wit = commuting_conjugate_witness(d).map_err(err)?;
            check(wit.verify().map_err(err)?, || {
                format!("witness for {d} fails")
            })?;
            check(!eval_acc_formula(&wit.phi, &[wit.sigma.inverse()]), || {
                format!("formula misses the witness for {d}")
            })
        } else {
            let v = if slot == self.shapes.len() {
                self.phi.clone()
            } else {
                symmetry(self.rank)
            };
            let universe = self.universe(rng).map_err(err)?;
            check(eval_acc_formula(&v, &universe), || {
                format!("anti-commutativity formula fails for {v}")
            })
        }
    }

    fn anticommute(&self, index: usize, rng: &mut ChaCha8Rng) -> Outcome {
        let phi = if index.is_multiple_of(2) {
            self.phi.clone()
        } else {
            symmetry(self.rank)
        };
        let s = random_aut(self.rank, 10, rng).map_err(err)?;
        let g = phi.conjugate_by(&s).map_err(err)?;
        check(!g.commutes_with(&phi).map_err(err)? || g == phi, || {
            format!("{g} commutes with {phi} but differs")
        })
    }

    fn not_square(&self, rng: &mut ChaCha8Rng) -> Outcome {
        let s = random_aut(self.rank, 6, rng).map_err(err)?;
        let q = self.phi.conjugate_by(&s).map_err(err)?;
        let det = induced_matrix(q.forward()).determinant();
        check(det == BigInt::from(-1), || {
            format!("{q} has determinant {det}")
        })?;
        let d = &self.shapes[rng.gen_range(0..self.shapes.len())];
        let base = canonical(d);
        let f = base
            .conjugate_by(&random_aut(self.rank, 5, rng).map_err(err)?)
            .map_err(err)?;
        let f2 = base
            .conjugate_by(&random_aut(self.rank, 5, rng).map_err(err)?)
            .map_err(err)?;
        let p = f.compose(&f2).map_err(err)?;
        let det = induced_matrix(p.forward()).determinant();
        check(det == BigInt::from(1), || {
            format!("product {p} of conjugates of {d} has determinant {det}")
        })
    }

    fn symmetry_square(&self, index: usize, rng: &mut ChaCha8Rng) -> Outcome {
        let rank = self.rank;
        let mut images = Vec::with_capacity(rank);
        for i in (1..=rank).step_by(2) {
            images.push(Word::generator(rank, i + 1).inverse());
            images.push(Word::generator(rank, i));
        }
        let mut back = Vec::with_capacity(rank);
        for i in (1..=rank).step_by(2) {
            back.push(Word::generator(rank, i + 1));
            back.push(Word::generator(rank, i).inverse());
        }
        let root = Automorphism::new(images, back).map_err(err)?;
        let s = if index == 0 {
            Automorphism::identity(rank)
        } else {
            random_aut(rank, 10, rng).map_err(err)?
        };
        let psi = root.conjugate_by(&s).map_err(err)?;
        let square = psi.compose(&psi).map_err(err)?;
        let target = symmetry(rank).conjugate_by(&s).map_err(err)?;
        check(square == target && is_symmetry(&square), || {
            format!("square of {psi} is {square}")
        })
    }

    fn kk_products(&self, index: usize, rng: &mut ChaCha8Rng) -> Outcome {
        let phi = &self.phi;
        let frame = BlockFrame::of(phi).map_err(err)?;
        let m = self.rank - 1;
        let (shape, inverting) = if index.is_multiple_of(2) {
            (CanonicalData::new(0, 0, vec![1; m]).map_err(err)?, true)
        } else {
            (
                self.shapes[rng.gen_range(0..self.shapes.len())].clone(),
                false,
            )
        };
        let base = canonical(&shape);
        let mut psis = Vec::new();
        for _ in 0..2 {
            let r = random_automorphism_with(m, rng.gen_range(0..6), rng).map_err(err)?;
            let theta = base.conjugate_by(&r).map_err(err)?;
            let ext = extend_from_block(&frame, &theta);
            psis.push(if inverting {
                phi.compose(&ext).map_err(err)?
            } else {
                ext
            });
        }
        let v = kkprime_product_conjugacy_check(phi, &psis[0], &psis[1]).map_err(err)?;
        let verified = match &v.conjugator {
            Some(s) => {
                phi.compose(&psis[0])
                    .and_then(|p| p.conjugate_by(s))
                    .map_err(err)?
                    == phi.compose(&psis[1]).map_err(err)?
            }
            None => false,
        };
        check(v.verdict == Tri::Yes && verified, || {
            format!(
                "products with {} and {} not shown conjugate ({})",
                psis[0], psis[1], v.verdict
            )
        })
    }

    fn pi_centralizer(&self, index: usize, rng: &mut ChaCha8Rng) -> Outcome {
        let phi = &self.phi;
        let k = (index % 7) as i64 - 3;
        let tau = Automorphism::inner(&Word::generator(self.rank, 1).pow(k));
        match is_conjugation_by_primitive_power(&tau, phi, &self.pi).map_err(err)? {
            Some(c) if c.k == k && c.verify(&tau) => {}
            other => return Err(format!("conjugation by x^{k} gave {other:?}")),
        }
        check(
            is_conjugation_by_primitive_power(phi, phi, &self.pi)
                .map_err(err)?
                .is_none(),
            || "the quasi-conjugation itself was certified".into(),
        )?;
        let s = loop {
            let s = random_aut(self.rank, 8, rng).map_err(err)?;
            if !self.commutes_with_sample(&s).map_err(err)? {
                break s;
            }
        };
        match is_conjugation_by_primitive_power(&s, phi, &self.pi).map_err(err)? {
            None => Ok(()),
            Some(c) => Err(format!("{s} certified as {}", c.to_json())),
        }
    }

    fn commutes_with_sample(&self, s: &Automorphism) -> Result<bool> {
        for p in &self.pi {
            if !s.commutes_with(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn conj_rank2(&self, index: usize, rng: &mut ChaCha8Rng) -> Outcome {
        let phi = &self.phi;
        let k = (index % 11) as i64 - 5;
        let x = Word::generator(self.rank, 1);
        let target = Automorphism::inner(&x.pow(k));
        let pair = product_of_conjugate_symmetries(1, k, self.rank).map_err(err)?;
        check(
            pair.product() == target
                && pair.alpha.conjugated_with(&pair.conjugator).map_err(err)? == pair.alpha_prime,
            || format!("symmetries for k = {k} do not compose to conjugation"),
        )?;
        match is_conjugation_by_primitive_power(&target, phi, &[]).map_err(err)? {
            Some(c) if c.k == k => {}
            other => return Err(format!("conjugation by x^{k} gave {other:?}")),
        }
        let s = random_aut(self.rank, 8, rng).map_err(err)?;
        match is_conjugation_by_primitive_power(&s, phi, &[]) {
            Ok(Some(c)) if !c.verify(&s) => Err(format!("false certificate for {s}")),
            Ok(_) => Ok(()),
            Err(e) => Err(err(e)),
        }
    }

    fn census(&self) -> Outcome {
        let c = meskin_census(self.rank);
        match self.rank {
            2 => check(c.total() == 4, || {
                format!("{} classes in rank 2", c.total())
            }),
            3 => check(c.soft == 6, || format!("{} soft classes in rank 3", c.soft)),
            _ => Ok(()),
        }
    }
}
