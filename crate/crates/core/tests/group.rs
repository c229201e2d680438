mod common;

use common::*;
use jimm_core::{
    cf_of_surd, decompose, dyer, fixed_point, jimm_surd, verify_fe6, BigMobius, Error, JimmResult, Terms,
};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

/// A matrix of determinant `+-1` with first column `(a, c)`, from Bezout.
fn bezout_matrix() -> impl Strategy<Value = BigMobius> {
    (-500i64..=500, -500i64..=500, any::<bool>(), -3i64..=3).prop_filter_map("not coprime", |(a, c, neg, k)| {
        let e = a.extended_gcd(&c);
        if e.gcd != 1 {
            return None;
        }
        // a x + c y = 1  =>  [[a, -y], [c, x]] has det 1; shift by k columns.
        let (b, d) = (-e.y + k * a, e.x + k * c);
        let (b, d) = if neg { (-b, -d) } else { (b, d) };
        BigMobius::from_i64(a, b, c, d).ok()
    })
}

fn period_of(x: &jimm_core::BigSurd) -> (Vec<BigInt>, Vec<BigInt>) {
    match cf_of_surd(x, usize::MAX).unwrap().terms {
        Terms::Periodic { preperiod, period } => (preperiod, period),
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(config(1_000, 21))]

    #[test]
    fn dyer_is_an_involution(w in any_word(40)) {
        let m: BigMobius = w.to_matrix();
        prop_assert_eq!(dyer(&dyer(&m)), m.clone());
        prop_assert_eq!(w.dyer().dyer().to_matrix::<BigInt>(), m);
    }

    #[test]
    fn dyer_is_a_homomorphism(w1 in any_word(40), w2 in any_word(40)) {
        let (m1, m2): (BigMobius, BigMobius) = (w1.to_matrix(), w2.to_matrix());
        prop_assert_eq!(dyer(&(&m1 * &m2)), &dyer(&m1) * &dyer(&m2));
        // Letter substitution agrees with the matrix route.
        prop_assert_eq!(w1.dyer().to_matrix::<BigInt>(), dyer(&m1));
    }

    #[test]
    fn decomposition_recomposes(m in bezout_matrix()) {
        prop_assert_eq!(decompose(&m).to_matrix::<BigInt>(), m);
    }

    #[test]
    fn word_matrices_recompose(w in any_word(40)) {
        let m: BigMobius = w.to_matrix();
        prop_assert_eq!(decompose(&m).to_matrix::<BigInt>(), m);
    }
}

proptest! {
    #![proptest_config(config(500, 22))]

    #[test]
    fn fe6_holds(w in any_word(20), x in non_noble_surd()) {
        let m: BigMobius = w.to_matrix();
        prop_assert_eq!(verify_fe6(&m, &x), Ok(true));
    }

    #[test]
    fn fixed_points_are_fixed(w in any_word(12)) {
        let m: BigMobius = w.to_matrix();
        match fixed_point(&m) {
            Ok(x) => {
                let JimmResult::Surd { value } = jimm_surd(&x) else { panic!("noble fixed point {x}") };
                prop_assert_eq!(value, m.apply_surd(&x));
            }
            Err(Error::NotHyperbolic { .. }) => {
                let n = &dyer(&m) * &m;
                let (tr, det) = (n.trace(), n.det());
                let disc = tr.clone() * tr - BigInt::from(4) * det;
                let hyperbolic = disc > BigInt::from(0) && disc.sqrt().pow(2) != disc && n.entries().2 != &BigInt::from(0);
                prop_assert!(!hyperbolic);
            }
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn dyer_is_outer() {
    let t2 = BigMobius::from_i64(1, 2, 0, 1).unwrap();
    let tr = dyer(&t2).trace();
    assert!(tr != BigInt::from(2) && tr != BigInt::from(-2), "trace {tr}");
    assert_eq!(dyer(&BigMobius::t()).trace(), BigInt::from(1));
}

#[test]
fn powers_of_t_fix_one_k_blocks() {
    for k in 0..=10usize {
        let m = BigMobius::t().pow(k as u32 + 1);
        let x = fixed_point(&m).unwrap();
        let mut period = vec![BigInt::from(1); k];
        period.push(BigInt::from(k as i64 + 2));
        assert_eq!(period_of(&x), (vec![BigInt::from(1)], period), "k = {k}");
        let JimmResult::Surd { value } = jimm_surd(&x) else { panic!() };
        assert_eq!(value, m.apply_surd(&x));
    }
}
