//! Automorphisms as basis images: composition, inversion, conjugation and
//! the JSON wire form.
use fgaut::automorphisms::{random_automorphism, whitehead_generators, Automorphism};
use fgaut::words::Word;

fn main() -> fgaut::error::Result<()> {
    let rank = 2;
    let w = |s: &str| Word::parse(s, rank).unwrap();

    // Right transvection x1 -> x1 x2 and its inverse.
    let t = Automorphism::new(vec![w("x1 x2"), w("x2")], vec![w("x1 X2"), w("x2")])?;
    let swap = Automorphism::from_involution(vec![w("x2"), w("x1")])?;

    let ts = t.compose(&swap)?;
    println!("t = {t}");
    println!("s = {swap}");
    println!("t o s = {ts}");
    println!("t^-1 = {}", t.inverse());
    println!("s^-1 t s = {}", t.conjugate_by(&swap)?);
    println!("t(x1 x2 X1) = {}", t.apply(&w("x1 x2 X1")));

    let json = ts.to_json();
    println!("json: {json}");
    assert_eq!(Automorphism::from_json(&json)?, ts);

    println!(
        "{} Whitehead generators in rank {rank}",
        whitehead_generators(rank).len()
    );
    let r = random_automorphism(rank, 6, 7)?;
    println!("random product of 6 generators: {r}");
    assert!(r.compose(&r.inverse())?.is_identity());
    Ok(())
}
