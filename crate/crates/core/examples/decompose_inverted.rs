//! Elements sent to their inverse by a canonical involution, written as
//! phi(w) w^-1 or phi(w) x w^-1.
use fgaut::abelian::abelianize_word;
use fgaut::characterization::{decompose_inverted, primitive_inverted_form, InvertedDecomposition};
use fgaut::involutions::{build_canonical, CanonicalData};
use fgaut::words::Word;

fn main() -> fgaut::error::Result<()> {
    let phi = build_canonical(&CanonicalData::new(1, 0, vec![2])?, 3)?.automorphism;
    println!("phi = {phi}");
    for (w, head) in [
        ("x2 x3", None),
        ("x1 X3 x2", Some(2)),
        ("x3 x3 x1", Some(2)),
        ("1", Some(2)),
    ] {
        let a = InvertedDecomposition {
            w: Word::parse(w, 3)?,
            head,
        }
        .reassemble(&phi);
        let d = decompose_inverted(&phi, &a)?;
        println!(
            "a = {a:<24} -> w = {:<12} head {:?}  abelianized {:?}",
            d.w.to_string(),
            d.head,
            abelianize_word(&a).entries()
        );
        assert_eq!(d.reassemble(&phi), a);
    }

    let a = Word::parse("x1 x1 X2 X1 X1", 3)?;
    let f = primitive_inverted_form(&phi, &a)?;
    println!(
        "primitive {a} is v x2^sign v^-1 with v = {}, sign {}",
        f.v, f.sign
    );
    Ok(())
}
