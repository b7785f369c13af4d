//! Critical sets of a Rankin–Selberg pair and the shift dictionary.
//!
//! Run with `cargo run --example critical_sets`.

use periodcalc::critical::{
    check_shift_dictionary, critical_set, motivic_critical_set, tensor_hodge_all_embeddings,
};
use periodcalc::spectral::InfinityType;

fn main() {
    // Exponents (4, 0, −4) against (7/2, 1/2) at a single place.
    let a = InfinityType::from_doubled(3, vec![vec![8, 0, -8]]).unwrap();
    let b = InfinityType::from_doubled(2, vec![vec![7, 1]]).unwrap();

    let cs = critical_set(&a, &b).unwrap();
    let members: Vec<String> = cs.members.iter().map(|h| h.to_string()).collect();
    println!("critical set: {{{}}}", members.join(", "));
    println!("bound: (−{m}, {m}]", m = cs.upper);

    let motivic = motivic_critical_set(&tensor_hodge_all_embeddings(&a, &b)).unwrap();
    println!("motivic critical integers: {motivic:?}");
    println!(
        "shift dictionary m = s0 + (n+n'-2)/2: {}",
        check_shift_dictionary(&a, &b).unwrap()
    );

    // Opposite parities always admit the central point 1/2.
    assert!(cs.members.contains(&periodcalc::HalfInt::HALF));
}
