//! The centralizer of a quasi-conjugation: sampling members and sorting
//! maps into the two forms.
use fgaut::automorphisms::random_automorphism;
use fgaut::characterization::{centralizer_form, sample_centralizer, BlockFrame};
use fgaut::involutions::{build_canonical, CanonicalData};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fgaut::error::Result<()> {
    let phi = build_canonical(&CanonicalData::new(0, 0, vec![3])?, 3)?.automorphism;
    let frame = BlockFrame::of(&phi)?;
    println!("phi = {phi} (head x{}, block {:?})", frame.head, frame.tail);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..4 {
        let s = sample_centralizer(&phi, 4, &mut rng)?;
        let f = centralizer_form(&phi, &s)?;
        println!(
            "{s}\n   {:?}, rebuilt exactly: {}",
            f.variant,
            f.rebuild(&frame).as_ref() == Some(s.forward())
        );
    }
    let r = random_automorphism(3, 5, 1)?;
    println!("{r}\n   {:?}", centralizer_form(&phi, &r)?.variant);
    Ok(())
}
