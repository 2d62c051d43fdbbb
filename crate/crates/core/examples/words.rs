//! Parsing, free reduction and cyclic reduction of words.
use fgaut::words::Word;

fn main() -> fgaut::error::Result<()> {
    let w = Word::parse("x1 x2 X2 x3 x1 X3", 3)?;
    println!("reduced:       {w} (length {})", w.len());

    let (core, conj) = w.cyclic_reduce();
    println!("cyclic core:   {core}");
    println!("conjugator:    {conj}");
    assert_eq!(core.conjugate(&conj), w);

    let u = Word::parse("x1 x2", 3)?;
    println!("u * u^-1:      {}", &u * &u.inverse());
    println!("u^3:           {}", u.pow(3));
    println!(
        "commutator:    {}",
        &(&u * &w) * &(&u.inverse() * &w.inverse())
    );
    Ok(())
}
