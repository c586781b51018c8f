use multmap::kernel::{extended_kernel, float_divisibility_nullity, in_span, w_space};
use multmap::poly::Poly;
use multmap::sample::{random_squarefree_exact, trial_rng};
use multmap::scalar::{ComplexFloats, GaussianRationals, Rationals};
use proptest::prelude::*;

#[test]
fn square_free_rationals_have_trivial_w() {
    let k = Rationals;
    for t in 0..200u64 {
        let n = 2 + (t as usize % 11);
        let f = random_squarefree_exact(n, 9, &k, &mut trial_rng(31, t)).unwrap();
        let r = w_space(&f, &k).unwrap();
        assert_eq!(r.w_dim, 0, "{}", f.pretty(&k));
        assert!(r.thm_checks.all_passed());
    }
}

fn small_monic(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 1..=max_len).prop_map(|mut v| {
        v.push(1);
        v
    })
}

/// Monic `p² q`, so that nonzero kernels actually occur.
fn with_square_factor() -> impl Strategy<Value = Poly<multmap::scalar::Rational>> {
    (small_monic(2), small_monic(3)).prop_map(|(p, q)| {
        let k = Rationals;
        let p = Poly::from_ints(&p, &k);
        let q = Poly::from_ints(&q, &k);
        p.pow(2, &k).mul(&q, &k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_and_dimension_law(f in prop_oneof![small_monic(7).prop_map(|c| Poly::from_ints(&c, &Rationals)), with_square_factor()]) {
        let k = Rationals;
        prop_assume!(f.degree().finite().unwrap_or(0) >= 2);
        let r = w_space(&f, &k).unwrap();
        for q in &r.w_basis {
            prop_assert!(f.bracket(q, &k).rem(&f, &k).unwrap().is_zero());
        }
        let ext = extended_kernel(&f, &k).unwrap();
        prop_assert_eq!(ext.len(), 1 + r.w_dim);
        prop_assert!(in_span(&f.derivative(&k), &ext, &k));
        prop_assert!(r.thm_checks.all_passed(), "{:?}", r.thm_checks.failures());
    }

    #[test]
    fn exact_and_float_dimensions_agree(f in with_square_factor()) {
        let g = GaussianRationals;
        let exact = f.map(&g, |c| multmap::scalar::GaussianRational::real(c.clone()));
        let w = w_space(&exact, &g).unwrap().w_dim;
        let shadow = exact.map(&ComplexFloats, |c| c.to_complex());
        prop_assert_eq!(float_divisibility_nullity(&shadow, 1e-8).unwrap(), w);
    }
}
