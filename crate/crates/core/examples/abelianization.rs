//! Exponent-sum vectors and the induced integer matrix with its exact
//! determinant.
use fgaut::abelian::{abelianize_word, induced_matrix};
use fgaut::automorphisms::Automorphism;
use fgaut::words::Word;

fn main() -> fgaut::error::Result<()> {
    let w = |s: &str| Word::parse(s, 3).unwrap();
    println!(
        "x1 x2 X1 x3 x3 -> {:?}",
        abelianize_word(&w("x1 x2 X1 x3 x3")).entries()
    );

    let qc = Automorphism::from_involution(vec![w("X1"), w("x1 x2 X1"), w("x1 x3 X1")])?;
    let m = induced_matrix(qc.forward());
    println!("quasi-conjugation matrix:\n{m}");
    println!("determinant {}  trace {}", m.determinant(), m.trace());

    let sym = Automorphism::from_involution(vec![w("X1"), w("X2"), w("X3")])?;
    let p = qc.compose(&sym.conjugate_by(&qc)?)?;
    println!(
        "det of a product of two conjugate involutions: {}",
        induced_matrix(p.forward()).determinant()
    );
    Ok(())
}
