//! Whitehead minimization and primitivity, checked against brute force.
use fgaut::whitehead::{is_primitive, primitive_census_brute, whitehead_minimize};
use fgaut::words::Word;

fn main() -> fgaut::error::Result<()> {
    for s in [
        "x1 x2 X1",
        "x1 x2 x1 x2 x2",
        "x1 x2 X1 X2",
        "x1 x1 x2",
        "x1 x2 x2 x1 x2",
    ] {
        let w = Word::parse(s, 2)?;
        let t = whitehead_minimize(&w);
        println!(
            "{s:<18} primitive: {:<5} minimal form {} via {:?}",
            is_primitive(&w),
            t.end,
            t.move_labels()
        );
    }

    let brute = primitive_census_brute(2, 4)?;
    println!("{} primitive words of length <= 4 in rank 2", brute.len());
    Ok(())
}
