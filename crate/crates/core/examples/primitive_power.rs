//! Recognizing conjugation by a power of the head, in rank 3 through the
//! product family and in rank 2 directly; conjugation as a product of two
//! conjugate symmetries.
use fgaut::automorphisms::Automorphism;
use fgaut::characterization::{
    build_pi_sample, is_conjugation_by_primitive_power, product_of_conjugate_symmetries,
};
use fgaut::involutions::{build_canonical, CanonicalData};
use fgaut::words::Word;

fn main() -> fgaut::error::Result<()> {
    let phi = build_canonical(&CanonicalData::new(0, 0, vec![3])?, 3)?.automorphism;
    let pi = build_pi_sample(&phi, 50, 7)?;
    println!("product family sample: {} maps", pi.len());
    for k in [-2, 0, 3] {
        let tau = Automorphism::inner(&Word::generator(3, 1).pow(k));
        let cert = is_conjugation_by_primitive_power(&tau, &phi, &pi)?;
        println!(
            "conjugation by x1^{k}: {}",
            cert.map(|c| c.to_json()).unwrap_or_default()
        );
    }
    println!(
        "phi itself: {:?}",
        is_conjugation_by_primitive_power(&phi, &phi, &pi)?
    );

    let qc2 = build_canonical(&CanonicalData::new(0, 0, vec![2])?, 2)?.automorphism;
    let pair = product_of_conjugate_symmetries(1, 3, 2)?;
    println!(
        "alpha  = {}\nalpha' = {}\nproduct = {}",
        pair.alpha,
        pair.alpha_prime,
        pair.product()
    );
    let cert = is_conjugation_by_primitive_power(&pair.product(), &qc2, &[])?;
    println!(
        "rank 2 certificate: {}",
        cert.map(|c| c.to_json()).unwrap_or_default()
    );
    Ok(())
}
