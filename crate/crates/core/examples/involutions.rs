//! Involution invariants: canonical shapes, recognition of a disguised
//! involution and the class census.
use fgaut::automorphisms::random_automorphism;
use fgaut::harness::meskin_census;
use fgaut::involutions::{
    build_canonical, extract_invariants, find_canonical_basis, same_canonical_form, CanonicalData,
    SearchConfig,
};

fn main() -> fgaut::error::Result<()> {
    for rank in 2..=3 {
        let c = meskin_census(rank);
        println!("rank {rank}: {} classes, {} soft", c.total(), c.soft);
    }

    let shape = CanonicalData::new(1, 0, vec![2])?;
    let phi = build_canonical(&shape, 3)?.automorphism;
    let disguised = phi.conjugate_by(&random_automorphism(3, 4, 11)?)?;
    println!("canonical {shape}: {phi}");
    println!("disguised:   {disguised}");

    let inv = extract_invariants(&disguised, 10)?;
    println!("invariants:  {}", serde_json::to_string(&inv).unwrap());
    if let Some(b) = find_canonical_basis(&disguised, &SearchConfig::default()) {
        println!(
            "recovered shape {} with basis {:?}",
            b.data(),
            b.basis()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        );
    }
    println!(
        "same class as phi: {}",
        same_canonical_form(&phi, &disguised, 10)?
    );
    Ok(())
}
