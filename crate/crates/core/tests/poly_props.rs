use netquality::poly::{geometric_factor, geometric_series, inverse_p0, p_poly, p_poly_closed, top_window_product, trunc_mul};
use netquality::IntPoly;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn naive_product(mu: &[usize], m: usize) -> IntPoly {
    mu.iter().fold(IntPoly::one(), |acc, &x| {
        let f = &IntPoly::monomial(BigInt::one(), x) - &IntPoly::monomial(BigInt::one(), m + 1);
        &acc * &f
    })
}

fn mu_profile() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0usize..=12, 1usize..=10).prop_flat_map(|(m, s)| (Just(m), proptest::collection::vec(0..=m + 1, s)))
}

proptest! {
    #[test]
    fn top_window_matches_full_product((m, mu) in mu_profile()) {
        let s = mu.len();
        let full = naive_product(&mu, m);
        let w = top_window_product(&mu, m).unwrap();
        let base = (s - 1) * (m + 1);
        for j in 0..=m + 1 {
            prop_assert_eq!(w.coeff(j), full.coeff(base + j), "j = {}", j);
        }
    }

    #[test]
    fn sum_and_closed_forms_agree(b in 2u32..=5, n in 0usize..=12, h: usize) {
        let h = h % (n + 1);
        prop_assert_eq!(p_poly(h, n, b).unwrap(), p_poly_closed(h, n, b).unwrap());
    }

    #[test]
    fn p_at_one(b in 2u32..=7, n in 0usize..=10, h: usize) {
        let h = h % (n + 1);
        let v = p_poly(h, n, b).unwrap().eval(&BigInt::one());
        // the character sum over a ball is b^n at the origin and 0 elsewhere
        let expected = if h == 0 { num_traits::pow(BigInt::from(b), n) } else { BigInt::zero() };
        prop_assert_eq!(v, expected);
    }

    #[test]
    fn geometric_series_inverts(b in 2u32..=7, m in 0usize..=12) {
        // (1 - bz) G(z) = 1 - z  mod z^{m+1}
        let g = geometric_series(b, m);
        let lhs = trunc_mul(&g, &IntPoly::new(vec![BigInt::one(), -BigInt::from(b)]), m);
        let rhs = IntPoly::from_i64(&[1, -1]).truncate(m);
        prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
    }

    #[test]
    fn geometric_factor_is_a_power(b in 2u32..=5, m in 0usize..=8, s in 1usize..=6) {
        let g = geometric_series(b, m);
        let mut naive = IntPoly::one();
        for _ in 0..s {
            naive = (&naive * &g).truncate(m);
        }
        let gf = geometric_factor(b, m, s);
        prop_assert_eq!(gf.coeffs(), naive.coeffs());
    }

    #[test]
    fn division_by_one_minus_cz_is_exact(c in -4i64..=4, q in proptest::collection::vec(-9i64..=9, 0..8)) {
        let q = IntPoly::from_i64(&q);
        let f = &q * &IntPoly::from_i64(&[1, -c]);
        prop_assert_eq!(f.div_one_minus(&BigInt::from(c)).unwrap(), q);
    }
}

#[test]
fn small_cases() {
    assert_eq!(p_poly(1, 1, 2).unwrap(), IntPoly::from_i64(&[1, -1]));
    assert_eq!(p_poly(0, 2, 2).unwrap(), IntPoly::from_i64(&[1, 1, 2]));
    assert_eq!(p_poly(2, 2, 3).unwrap(), IntPoly::from_i64(&[1, 2, -3]));
    assert_eq!(inverse_p0(2, 1), IntPoly::from_i64(&[1, 1, -2]));
    assert!(p_poly(3, 2, 2).is_err());
    assert!(p_poly(0, 2, 1).is_err());
    assert!(top_window_product(&[3], 1).is_err());
    assert!(IntPoly::from_i64(&[1, 0, 1]).div_one_minus(&BigInt::one()).is_err());
}
