//! Split-index tables: the automorphic gap counts, the Hodge-side counts,
//! and the reflection identity.
//!
//! Run with `cargo run --example split_indices`.

use periodcalc::hodge::{
    automorphic_split_indices, hodge_type_from_infinity_type, motivic_split_indices,
    reflection_check,
};
use periodcalc::shape::PlaceId;
use periodcalc::spectral::InfinityType;

fn main() {
    let a = InfinityType::from_doubled(3, vec![vec![8, 0, -8]]).unwrap();
    let b = InfinityType::from_doubled(2, vec![vec![7, 1]]).unwrap();
    let v = PlaceId(0);

    for barred in [false, true] {
        let sp = automorphic_split_indices(&a, &b, v, barred).unwrap();
        let h = hodge_type_from_infinity_type(&a, v, barred);
        let h2 = hodge_type_from_infinity_type(&b, v, barred);
        let motivic = motivic_split_indices(&h, &h2).unwrap();
        println!(
            "sp at {}: automorphic {:?}, motivic {:?}, sum {}",
            if barred { "conjugate embedding" } else { "embedding" },
            sp.entries,
            motivic.entries,
            sp.sum()
        );
        assert_eq!(sp.entries, motivic.entries);
        assert_eq!(sp.sum(), b.n as i64);
    }

    println!(
        "reflection identity sp(i, conj; conj) = sp(i, ·, bar) = sp(n−i): {}",
        reflection_check(&a, &b, v).unwrap()
    );

    // The Hodge types driving the motivic count:
    let h = hodge_type_from_infinity_type(&a, v, false);
    println!("Hodge pairs of the first datum (w = {}): {:?}", h.weight, h.pairs);
}
