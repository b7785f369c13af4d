//! Critical-value comparison: the automorphic product formula against the
//! Deligne-period expression with motivic split indices.
//!
//! Run with `cargo run --example deligne_verification`.

use periodcalc::half::HalfInt;
use periodcalc::critical::critical_set;
use periodcalc::period::{verify_main_conjecture, PeriodContext};
use periodcalc::shape::CMShape;
use periodcalc::spectral::InfinityType;

fn main() {
    let shape = CMShape::with_default_labels(1);
    let a = InfinityType::from_doubled(3, vec![vec![14, 0, -14]]).unwrap();
    let b = InfinityType::from_doubled(2, vec![vec![13, 1]]).unwrap();

    let cs = critical_set(&a, &b).unwrap();
    let members: Vec<String> = cs.members.iter().map(|h| h.to_string()).collect();
    println!("critical points: {{{}}}", members.join(", "));

    for &s0 in &cs.members {
        let mut ctx = PeriodContext::new(shape.clone());
        let report = verify_main_conjecture(&mut ctx, "Pi", &a, "Pi2", &b, s0, None).unwrap();
        println!(
            "s0 = {s0}: verdict {:?}, residual 2*pi*i exponent {:?}",
            report.verdict,
            report.two_pi_i_exponent()
        );
        assert!(report.verdict.is_closed());
    }

    // The residual exponent is d·n·n'·(s0 + (n+n'−2)/2), the motivic point.
    let mut ctx = PeriodContext::new(shape);
    let report =
        verify_main_conjecture(&mut ctx, "Pi", &a, "Pi2", &b, HalfInt::HALF, None).unwrap();
    assert_eq!(report.two_pi_i_exponent(), Some(12));
    println!("at s0 = 1/2 the exponent is d*n*n'*m = 12");
}
