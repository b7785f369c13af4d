//! Full replay of the Q-period factorization, with the derivation log.
//!
//! Run with `cargo run --example factorization_replay`.

use periodcalc::period::{replay_factorization, PeriodContext, ReplayOptions};
use periodcalc::shape::CMShape;
use periodcalc::spectral::HCParameter;

fn main() {
    let mut ctx = PeriodContext::new(CMShape::with_default_labels(1));
    // A = (7, 0, −7): gaps 7 = n + 4 at rank 3.
    let a = HCParameter::from_doubled(3, vec![vec![14, 0, -14]]).unwrap();
    let report = replay_factorization(&mut ctx, &a, 1, &ReplayOptions::default()).unwrap();
    print!("{}", report.to_text(&ctx));

    // Corrupting a single axiom schema must leave an open residual.
    let opts = ReplayOptions {
        fault: periodcalc::period::Fault::parse("rs-split"),
        ..ReplayOptions::default()
    };
    let mut ctx2 = PeriodContext::new(CMShape::with_default_labels(1));
    let broken = replay_factorization(&mut ctx2, &a, 1, &opts).unwrap();
    println!(
        "\nwith an injected fault the verdict is: {:?}",
        broken.verdict
    );
}
