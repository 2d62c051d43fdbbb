//! Classes failing the shape condition contain distinct commuting
//! conjugates; the anti-commutativity formula sees the witness.
use fgaut::automorphisms::random_automorphism;
use fgaut::characterization::eval_acc_formula;
use fgaut::involutions::{
    acc_necessary, build_canonical, commuting_conjugate_witness, CanonicalData,
};

fn main() -> fgaut::error::Result<()> {
    for d in CanonicalData::enumerate(3) {
        if acc_necessary(&d) {
            let phi = build_canonical(&d, 3)?.automorphism;
            let universe: Vec<_> = (0..200)
                .map(|s| random_automorphism(3, 5, s))
                .collect::<Result<_, _>>()?;
            println!(
                "{d}: passes the shape condition; formula on 200 samples: {}",
                eval_acc_formula(&phi, &universe)
            );
            continue;
        }
        let wit = commuting_conjugate_witness(&d)?;
        println!("{d}: fails");
        println!("   phi = {}", wit.phi);
        println!("   psi = {}", wit.psi);
        println!(
            "   verified: {}  formula: {}",
            wit.verify()?,
            eval_acc_formula(&wit.phi, &[wit.sigma.inverse()])
        );
    }
    Ok(())
}
