//! Stallings graphs of finitely generated subgroups: membership, rank and
//! intersection.
use fgaut::stallings::{fold, graph_rank, intersect};
use fgaut::words::Word;

fn main() -> fgaut::error::Result<()> {
    let w = |s: &str| Word::parse(s, 3).unwrap();

    let h = fold(3, &[w("x1 x2"), w("x2 x1"), w("x1 x1")])?;
    println!(
        "<x1x2, x2x1, x1x1> has rank {} and graph\n{h}",
        graph_rank(&h)
    );
    println!(
        "basis: {:?}",
        h.basis().iter().map(Word::to_string).collect::<Vec<_>>()
    );
    for s in ["x1 x2 x2 x1", "x2 x2", "x1 x1 x1 x2 x1"] {
        println!("contains {s}? {}", h.contains(&w(s))?);
    }

    let a = fold(3, &[w("x1"), w("x2")])?;
    let b = fold(3, &[w("x1"), w("x3")])?;
    let i = intersect(&a, &b)?;
    println!(
        "<x1,x2> meet <x1,x3>: rank {}, basis {:?}",
        graph_rank(&i),
        i.basis().iter().map(Word::to_string).collect::<Vec<_>>()
    );
    Ok(())
}
