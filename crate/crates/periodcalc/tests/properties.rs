//! Property tests for the library invariants.

use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use periodcalc::corpus::{random_monomial, random_pair, random_spectrum};
use periodcalc::critical::{critical_set, has_critical_points};
use periodcalc::half::HalfInt;
use periodcalc::hodge::{
    automorphic_split_indices, hodge_type_from_infinity_type, motivic_split_indices,
    reflection_check,
};
use periodcalc::period::{
    assert_equivalent, normalize, PeriodContext, SymbolClass, Verdict,
};
use periodcalc::shape::CMShape;
use periodcalc::spectral::{
    dual_and_conjugate, infinity_type_from_weight, is_m_regular, weight_from_infinity_type,
    HighestWeight, InfinityType, Involution, WeightAtPlace,
};

fn dominant_weight(rng: &mut impl Rng, strict: bool) -> HighestWeight {
    let n = rng.gen_range(1..=6usize);
    let d = rng.gen_range(1..=3usize);
    let lo = i64::from(strict);
    let per_place = (0..d)
        .map(|_| {
            let mut top = rng.gen_range(-6..=6i64);
            let mut iota = Vec::with_capacity(n);
            let mut bar = Vec::with_capacity(n);
            let mut bar_top = rng.gen_range(-6..=6i64);
            for _ in 0..n {
                iota.push(top);
                bar.push(bar_top);
                top -= rng.gen_range(lo..=4i64);
                bar_top -= rng.gen_range(lo..=4i64);
            }
            WeightAtPlace { iota, bar }
        })
        .collect();
    HighestWeight::new(n, per_place).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn weight_round_trip_on_iota_components(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = dominant_weight(&mut rng, false);
        let a = infinity_type_from_weight(&mu).unwrap();
        let back = weight_from_infinity_type(&a).unwrap();
        for (w1, w2) in mu.per_place.iter().zip(&back.per_place) {
            prop_assert_eq!(&w1.iota, &w2.iota);
        }
        prop_assert!(back.bar_synthetic);
    }

    #[test]
    fn one_regularity_is_strict_dominance(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = dominant_weight(&mut rng, false);
        let strict = mu.per_place.iter().all(|w| {
            w.iota.windows(2).all(|p| p[0] > p[1]) && w.bar.windows(2).all(|p| p[0] > p[1])
        });
        prop_assert_eq!(is_m_regular(&mu, 1), strict);
    }

    #[test]
    fn involutions_square_to_identity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=6usize);
        let d = rng.gen_range(1..=3usize);
        let a = random_spectrum(&mut rng, n, d, 8, 4);
        let dual = dual_and_conjugate(&a, Involution::Dual);
        prop_assert_eq!(dual_and_conjugate(&dual, Involution::Dual), a.clone());
        let conj = dual_and_conjugate(&a, Involution::Conjugate);
        prop_assert_eq!(dual_and_conjugate(&conj, Involution::Conjugate), a.clone());
        // dual ∘ conjugate is the identity on the stored data
        prop_assert_eq!(
            dual_and_conjugate(&dual_and_conjugate(&a, Involution::Conjugate), Involution::Dual),
            a
        );
    }

    #[test]
    fn critical_set_is_symmetric_and_interval(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = random_pair(&mut rng, 6, 3);
        let cs = critical_set(&pair.a, &pair.b).unwrap();
        let cs2 = critical_set(&pair.b, &pair.a).unwrap();
        prop_assert_eq!(&cs, &cs2);
        // interval structure: consecutive members differ by one, closed on
        // the right at the bound, open on the left
        for w in cs.members.windows(2) {
            prop_assert_eq!(w[1] - w[0], HalfInt::ONE);
        }
        if let Some(&last) = cs.members.last() {
            prop_assert_eq!(last, cs.upper);
        }
        for &m in &cs.members {
            prop_assert!(m > cs.lower && m <= cs.upper);
        }
    }

    #[test]
    fn split_dictionary_and_sums(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = random_pair(&mut rng, 6, 3);
        for place in pair.shape.places() {
            for barred in [false, true] {
                let auto = automorphic_split_indices(&pair.a, &pair.b, place, barred).unwrap();
                let h = hodge_type_from_infinity_type(&pair.a, place, barred);
                let h2 = hodge_type_from_infinity_type(&pair.b, place, barred);
                let motivic = motivic_split_indices(&h, &h2).unwrap();
                prop_assert_eq!(&auto.entries, &motivic.entries);
                prop_assert_eq!(auto.sum(), pair.b.n as i64);
                prop_assert!(auto.entries.iter().all(|&e| e >= 0));
            }
            prop_assert!(reflection_check(&pair.a, &pair.b, place).unwrap());
        }
    }

    #[test]
    fn split_vector_stable_under_non_crossing_shifts(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = random_pair(&mut rng, 6, 3);
        let shift = HalfInt::from_int(rng.gen_range(-2..=2i64));
        // shift every entry of b; keep only instances where no shifted entry
        // crosses any −a_i
        let shifted = InfinityType::new(
            pair.b.n,
            pair.b
                .per_place
                .iter()
                .map(|v| v.iter().map(|&x| x + shift).collect())
                .collect(),
        )
        .unwrap();
        if !has_critical_points(&pair.a, &shifted).unwrap() {
            return Ok(());
        }
        for place in pair.shape.places() {
            let negated: Vec<HalfInt> =
                pair.a.per_place[place.0].iter().map(|&x| -x).collect();
            let crossing = pair.b.per_place[place.0].iter().any(|&b| {
                negated.iter().any(|&t| {
                    (b < t && b + shift > t) || (b > t && b + shift < t)
                })
            });
            if crossing {
                continue;
            }
            for barred in [false, true] {
                let before =
                    automorphic_split_indices(&pair.a, &pair.b, place, barred).unwrap();
                let after =
                    automorphic_split_indices(&pair.a, &shifted, place, barred).unwrap();
                prop_assert_eq!(before.entries, after.entries);
            }
        }
    }

    #[test]
    fn equivalence_is_reflexive_symmetric_transitive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ctx = PeriodContext::new(CMShape::with_default_labels(2));
        let rep_a = ctx.register_rep("Pi", 3);
        let rep_b = ctx.register_rep("Pi2", 2);
        let reps = [rep_a, rep_b];
        let x = random_monomial(&mut rng, &ctx, &reps);
        let y = random_monomial(&mut rng, &ctx, &reps);
        let z = random_monomial(&mut rng, &ctx, &reps);

        // reflexive: x ∼ x with empty residual
        let refl = assert_equivalent(&ctx, &x, &x, &[]).unwrap();
        prop_assert!(refl.residual.is_unit());
        prop_assert_eq!(&refl.verdict, &Verdict::Closed);

        // symmetric: residuals invert
        let xy = assert_equivalent(&ctx, &x, &y, &[SymbolClass::TwoPiI]).unwrap();
        let yx = assert_equivalent(&ctx, &y, &x, &[SymbolClass::TwoPiI]).unwrap();
        prop_assert_eq!(&xy.residual, &yx.residual.inverse());

        // transitive: residuals multiply
        let yz = assert_equivalent(&ctx, &y, &z, &[]).unwrap();
        let xz = assert_equivalent(&ctx, &x, &z, &[]).unwrap();
        let (combined, _) = normalize(&ctx, &xy.residual.mul(&yz.residual)).unwrap();
        prop_assert_eq!(&combined, &xz.residual);
    }
}
