//! Products of a quasi-conjugation with commuting involutions, compared
//! up to conjugacy.
use fgaut::automorphisms::{random_automorphism, Automorphism};
use fgaut::characterization::{extend_from_block, kkprime_product_conjugacy_check, BlockFrame};
use fgaut::involutions::{build_canonical, CanonicalData};
use fgaut::words::Word;

fn main() -> fgaut::error::Result<()> {
    let phi = build_canonical(&CanonicalData::new(0, 0, vec![3])?, 3)?.automorphism;
    let frame = BlockFrame::of(&phi)?;
    let sym = build_canonical(&CanonicalData::new(0, 0, vec![1, 1])?, 2)?.automorphism;

    let psi = phi.compose(&extend_from_block(&frame, &sym))?;
    let theta = sym.conjugate_by(&random_automorphism(2, 5, 4)?)?;
    let psi2 = phi.compose(&extend_from_block(&frame, &theta))?;
    let v = kkprime_product_conjugacy_check(&phi, &psi, &psi2)?;
    println!("psi  = {psi}\npsi' = {psi2}\nverdict {}", v.verdict);
    if let Some(s) = v.conjugator {
        println!("conjugator {s}");
    }

    let phi = build_canonical(&CanonicalData::new(1, 0, vec![2])?, 3)?.automorphism;
    let w = |s: &str| Word::parse(s, 3).unwrap();
    let natural = Automorphism::from_involution(vec![w("X1"), w("X2"), w("x2 X3 X2")])?;
    let displaced =
        Automorphism::from_involution(vec![w("X1"), w("x1 X2 X1"), w("x1 x2 X3 X2 X1")])?;
    let v = kkprime_product_conjugacy_check(&phi, &natural, &displaced)?;
    println!("with a fixed letter: verdict {}", v.verdict);
    Ok(())
}
