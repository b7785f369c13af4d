//! Descent bookkeeping: marked parameters, derived rank-(n−1) data, Hodge
//! numbers and cohomology degrees.
//!
//! Run with `cargo run --example descent_parameters`.

use periodcalc::descent::{
    coh_degree_prime, hc_of_q, hc_prime_of_q, hodge_numbers_h, hodge_numbers_h_prime,
    pi_prime_infinity_type,
};
use periodcalc::shape::PlaceId;
use periodcalc::spectral::HCParameter;

fn main() {
    let v0 = PlaceId(0);
    let a = HCParameter::from_doubled(3, vec![vec![8, 0, -8]]).unwrap(); // A = (4, 0, −4)
    println!("parameter A = (4, 0, -4), rank 3");

    for q in 0..=1 {
        let aq = hc_of_q(&a, q, v0).unwrap();
        let at = aq.at(v0);
        let entries: Vec<String> = at.entries.iter().map(|h| h.to_string()).collect();
        println!(
            "A({q}): ({} ; marked {})",
            entries.join(" > "),
            at.marked.unwrap()
        );

        let prime = hc_prime_of_q(&a, q, v0).unwrap();
        let entries: Vec<String> = prime.at(v0).entries.iter().map(|h| h.to_string()).collect();
        println!(
            "A'({q}): ({} ; marked {})",
            entries.join(" > "),
            prime.at(v0).marked.unwrap()
        );

        let b = pi_prime_infinity_type(&a, q, v0).unwrap();
        let entries: Vec<String> = b.per_place[0].iter().map(|h| h.to_string()).collect();
        println!("derived exponents b: ({})", entries.join(", "));

        let hp = hodge_numbers_h_prime(&a, q, v0).unwrap();
        println!("derived Hodge pairs: {:?}", hp.pairs);
        println!(
            "derived cohomology degree q' = n − q − 2 = {}",
            coh_degree_prime(3, q).unwrap()
        );
        println!();
    }

    let (h, h_conj) = hodge_numbers_h(&a, v0);
    println!("Hodge pairs of the rank-3 datum: {:?}", h.pairs);
    println!("conjugate pairs: {:?}", h_conj.pairs);
}
