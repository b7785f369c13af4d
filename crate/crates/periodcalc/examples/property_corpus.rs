//! Seeded random property run: dictionary, sum rules, reflection, and the
//! shift dictionary over a generated corpus.
//!
//! Run with `cargo run --example property_corpus`.

use periodcalc::corpus::{corpus, CorpusParams};
use periodcalc::critical::check_shift_dictionary;
use periodcalc::hodge::{
    automorphic_split_indices, hodge_type_from_infinity_type, motivic_split_indices,
    reflection_check,
};

fn main() {
    let params = CorpusParams {
        seed: 7,
        count: 100,
        max_n: 6,
        max_d: 3,
    };
    let mut dictionary_ok = 0usize;
    let mut reflection_ok = 0usize;
    let mut shift_ok = 0usize;
    let instances = corpus(&params);
    for inst in &instances {
        let mut all_tables = true;
        for place in inst.shape.places() {
            for barred in [false, true] {
                let auto =
                    automorphic_split_indices(&inst.a, &inst.b, place, barred).unwrap();
                let h = hodge_type_from_infinity_type(&inst.a, place, barred);
                let h2 = hodge_type_from_infinity_type(&inst.b, place, barred);
                let motivic = motivic_split_indices(&h, &h2).unwrap();
                all_tables &= auto.entries == motivic.entries;
            }
        }
        if all_tables {
            dictionary_ok += 1;
        }
        if inst
            .shape
            .places()
            .all(|p| reflection_check(&inst.a, &inst.b, p).unwrap())
        {
            reflection_ok += 1;
        }
        if check_shift_dictionary(&inst.a, &inst.b).unwrap() {
            shift_ok += 1;
        }
    }
    println!(
        "corpus seed={} count={}: dictionary {}/{}, reflection {}/{}, shift {}/{}",
        params.seed,
        params.count,
        dictionary_ok,
        instances.len(),
        reflection_ok,
        instances.len(),
        shift_ok,
        instances.len()
    );
    assert_eq!(dictionary_ok, instances.len());
    assert_eq!(reflection_ok, instances.len());
    assert_eq!(shift_ok, instances.len());
}
