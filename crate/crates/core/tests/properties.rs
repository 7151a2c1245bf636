use catmaj_core::functionals::klimesh_f;
use catmaj_core::geometry::{in_p, in_s, in_t, rado_decompose};
use catmaj_core::relations::{majorize, submajorize, supermajorize, trumped};
use catmaj_core::vectors::tensor;
use catmaj_core::{DVector, Outcome, ScanConfig};
use proptest::prelude::*;

fn positive(d: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<f64>> {
    d.prop_flat_map(|d| prop::collection::vec(0.05f64..1.0, d))
}

/// `y` plus a convex combination of three rearrangements of it.
fn majorized_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    positive(2..=6).prop_flat_map(|y| {
        let d = y.len();
        let perms = prop::collection::vec(Just((0..d).collect::<Vec<_>>()).prop_shuffle(), 3);
        let weights = prop::collection::vec(0.05f64..1.0, 3);
        (Just(y), perms, weights).prop_map(|(y, perms, w)| {
            let total: f64 = w.iter().sum();
            let mut x = vec![0.0; y.len()];
            for (perm, wi) in perms.iter().zip(&w) {
                for (i, &p) in perm.iter().enumerate() {
                    x[i] += wi / total * y[p];
                }
            }
            (x, y)
        })
    })
}

fn v(values: &[f64]) -> DVector {
    DVector::float(values.to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn klimesh_is_permutation_invariant(x in positive(1..=6), r in -20.0f64..20.0) {
        let mut rev = x.clone();
        rev.reverse();
        let (a, b) = (klimesh_f(r, &v(&x)).to_f64(), klimesh_f(r, &v(&rev)).to_f64());
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn majorization_implies_weak_forms((x, y) in majorized_pair()) {
        let (x, y) = (v(&x), v(&y));
        prop_assert!(majorize(&x, &y).holds);
        prop_assert!(submajorize(&x, &y).holds);
        prop_assert!(supermajorize(&x, &y).holds);
    }

    #[test]
    fn containment_chain((x, y) in majorized_pair()) {
        let (x, y) = (v(&x), v(&y));
        let cfg = ScanConfig::default();
        prop_assert!(in_s(&x, &y).unwrap());
        prop_assert!(!in_t(&x, &y, &cfg).unwrap().is_fails());
        prop_assert!(!in_p(&x, &y, &cfg).unwrap().is_fails());
    }

    #[test]
    fn tensoring_preserves_majorization((x, y) in majorized_pair(), z in positive(1..=3)) {
        let z = v(&z);
        prop_assert!(majorize(&tensor(&v(&x), &z), &tensor(&v(&y), &z)).holds);
    }

    #[test]
    fn rado_reconstructs((x, y) in majorized_pair()) {
        let dec = rado_decompose(&v(&x), &v(&y)).unwrap();
        prop_assert!(dec.reconstruction_error <= 1e-12);
        prop_assert!((dec.weight_sum() - 1.0).abs() <= 1e-12);
        prop_assert!(dec.terms.iter().all(|t| t.weight > 0.0));
    }

    #[test]
    fn trumping_is_scale_invariant(
        (x, y) in majorized_pair(),
        c in 0.1f64..10.0,
        flip in any::<bool>(),
    ) {
        let (x, y) = if flip { (y, x) } else { (x, y) };
        let cfg = ScanConfig::default();
        let base = trumped(&v(&x), &v(&y), &cfg).unwrap().verdict.outcome();
        let scale = |u: &[f64]| v(&u.iter().map(|e| e * c).collect::<Vec<_>>());
        let scaled = trumped(&scale(&x), &scale(&y), &cfg).unwrap().verdict.outcome();
        // Tied extremes leave the verdict at the margin, where rounding may tip it.
        let conclusive = |o: Outcome| o != Outcome::Inconclusive;
        if conclusive(base) && conclusive(scaled) {
            prop_assert_eq!(base, scaled);
        }
    }

    #[test]
    fn exact_and_float_majorization_agree(
        x in prop::collection::vec(1u32..20, 4),
        y in prop::collection::vec(1u32..20, 4),
    ) {
        let (sx, sy) = (x.iter().sum::<u32>(), y.iter().sum::<u32>());
        // Rescale to a common total so the comparison is not trivially false.
        let xs: Vec<u32> = x.iter().map(|e| e * sy).collect();
        let ys: Vec<u32> = y.iter().map(|e| e * sx).collect();
        let exact = majorize(
            &DVector::from_integers(xs.iter().copied()).unwrap(),
            &DVector::from_integers(ys.iter().copied()).unwrap(),
        );
        let float = majorize(
            &v(&xs.iter().map(|&e| e as f64).collect::<Vec<_>>()),
            &v(&ys.iter().map(|&e| e as f64).collect::<Vec<_>>()),
        );
        prop_assert!(exact.exact && !float.exact);
        prop_assert_eq!(exact.holds, float.holds);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trumped_set_is_convex(
        (a, y) in majorized_pair(),
        seed in prop::collection::vec(0.05f64..1.0, 6),
    ) {
        let cfg = ScanConfig::default();
        // Second member of T(y): a mixture of a with the uniform vector.
        let mean = y.iter().sum::<f64>() / y.len() as f64;
        let t = seed[0];
        let b: Vec<f64> = a.iter().map(|e| t * e + (1.0 - t) * mean).collect();
        let (ya, yb) = (in_t(&v(&a), &v(&y), &cfg).unwrap(), in_t(&v(&b), &v(&y), &cfg).unwrap());
        prop_assume!(ya.is_holds() && yb.is_holds());
        let mid: Vec<f64> = a.iter().zip(&b).map(|(p, q)| 0.5 * (p + q)).collect();
        prop_assert!(!in_t(&v(&mid), &v(&y), &cfg).unwrap().is_fails());
    }
}
