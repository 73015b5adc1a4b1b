mod common;

use netquality::oracle::{dual_enumerate, dual_weight_enumerator, general_enumerator_bruteforce, t_by_intervals};
use netquality::wep::{
    full_wep, general_lower_bound, general_wep, overline_gw, projection_wep, t_from_wep, truncated_wep,
};
use netquality::{Accumulator, DigitMatrix, GroupSpec, OracleBounds};
use num_bigint::BigInt;
use proptest::prelude::*;

fn pow(b: u32, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(b), e)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn full_enumerator_matches_dual(f in common::group_factors(), m in 0usize..=3, s in 1usize..=3, n in 1usize..=3, seed: u64) {
        let spec = GroupSpec::new(f).unwrap();
        let b = spec.order();
        prop_assume!((b as u64).pow((n * s) as u32) <= 1 << 16);
        let net = common::random_group_net(seed, &spec, m, s, n);
        let w = full_wep(&net).unwrap();
        let dual = dual_enumerate(&net, &OracleBounds::default()).unwrap();
        let oracle = dual_weight_enumerator(&dual);
        let counts = w.counts().unwrap();
        prop_assert_eq!(counts.len(), n * s + 1);
        for (a, c) in counts.iter().enumerate() {
            prop_assert_eq!(c, &oracle.coeff(a), "degree {}", a);
        }
        // ∑ N_a = |P⊥| = b^{ns} / |P|
        let total: BigInt = counts.iter().sum();
        prop_assert_eq!(total * common::distinct_points(&net), pow(b, n * s));
    }

    #[test]
    fn injective_nets_have_dual_size_b_to_ns_minus_m(b in 2u32..=3, m in 1usize..=4, s in 1usize..=4, seed: u64) {
        let net = common::random_net(seed, b, m, s, m);
        prop_assume!(common::is_injective(&net));
        let total: BigInt = full_wep(&net).unwrap().counts().unwrap().iter().sum();
        prop_assert_eq!(total, pow(b, m * s - m));
    }

    #[test]
    fn truncation_is_a_prefix(b in 2u32..=3, m in 1usize..=4, s in 1usize..=4, n in 1usize..=5, seed: u64, ell in 1usize..=20) {
        let net = common::random_net(seed, b, m, s, n);
        let full = full_wep(&net).unwrap().counts().unwrap();
        let w = truncated_wep(&net, ell).unwrap();
        prop_assert_eq!(w.valid_to(), ell.min(n * s));
        let t = w.counts().unwrap();
        prop_assert_eq!(&t[..], &full[..t.len()]);
    }

    #[test]
    fn accumulation_is_additive(b in 2u32..=3, m in 1usize..=6, s in 1usize..=4, seed: u64, cuts in proptest::collection::vec(any::<u64>(), 0..4)) {
        let net = common::random_net(seed, b, m, s, m);
        let total = net.num_points();
        let mut cuts: Vec<u64> = cuts.into_iter().map(|c| c % total).collect();
        cuts.push(0);
        cuts.push(total);
        cuts.sort();
        cuts.dedup();
        let mut acc = Accumulator::new(b, s, m);
        for w in cuts.windows(2) {
            acc.accumulate(&net, w[0]..w[1]).unwrap();
        }
        prop_assert_eq!(acc.finalize(m).unwrap(), truncated_wep(&net, m).unwrap());
    }

    #[test]
    fn projections_read_off_gw(b in 2u32..=3, m in 1usize..=4, s in 1usize..=5, seed: u64) {
        let net = common::random_net(seed, b, m, s, m);
        let gw = overline_gw(&net).unwrap();
        let t = t_from_wep(&truncated_wep(&net, m).unwrap(), m).unwrap();
        for mask in 1u32..1 << s {
            let u: Vec<usize> = (1..=s).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let p = projection_wep(&gw, &u).unwrap();
            let direct = truncated_wep(&net.project(&u).unwrap(), m).unwrap();
            prop_assert_eq!(&p, &direct, "u = {:?}", u);
            prop_assert!(t_from_wep(&p, m).unwrap() <= t);
        }
    }

    #[test]
    fn general_enumerator_matches_character_sums(f in common::group_factors(), m in 0usize..=2, s in 1usize..=2, n in 1usize..=3, seed: u64) {
        let spec = GroupSpec::new(f).unwrap();
        let b = spec.order();
        let count = (b as u64).pow(m as u32);
        prop_assume!((b as u64).pow((n * s) as u32) * count <= 1 << 18);
        let mut r = common::rng(seed);
        let points: Vec<DigitMatrix> = (0..count).map(|_| common::random_matrix(&mut r, b, s, n)).collect();
        let w = general_wep(&points, b, m).unwrap();
        let oracle = general_enumerator_bruteforce(&points, &spec, &OracleBounds::default()).unwrap();
        for a in 0..=w.valid_to() {
            prop_assert_eq!(w.scaled_coeff(a), oracle.coeff(a), "degree {}", a);
        }
    }

    #[test]
    fn general_bound_is_exact_on_nets(b in 2u32..=3, m in 1usize..=4, s in 1usize..=3, seed: u64) {
        let net = common::random_net(seed, b, m, s, m);
        let points = common::point_list(&net);
        prop_assert_eq!(
            general_lower_bound(&points, b, m).unwrap(),
            t_from_wep(&truncated_wep(&net, m).unwrap(), m).unwrap()
        );
    }
}

#[test]
fn worked_examples() {
    let rep = netquality::net::net_from_matrices(2, &[vec![vec![1]], vec![vec![1]]]).unwrap();
    let w = full_wep(&rep).unwrap();
    assert_eq!(w.counts().unwrap(), vec![BigInt::from(1), 0.into(), 1.into()]);
    let vdc = common::van_der_corput(2);
    let w = full_wep(&vdc).unwrap();
    assert_eq!(w.scaled(), &common::poly_from(&[4, 0, 0, 8, 4]));
    assert_eq!(w.scale_label(), "2^2");
    assert_eq!(w.min_weight(), 3);
}

/// Moves every point of the top corner cell `[1 - 1/b, 1)^s` onto its
/// lower-left corner. Each row keeps its first digit, so μ* is unchanged.
fn shift_corner(points: &[DigitMatrix], b: u32) -> Vec<DigitMatrix> {
    let top = (b - 1) as u16;
    points
        .iter()
        .map(|p| {
            let (s, n) = p.shape();
            if (0..s).all(|i| p.get(i, 0) == top) {
                let mut d = vec![0; s * n];
                for i in 0..s {
                    d[i * n] = top;
                }
                DigitMatrix::from_flat(s, n, d).unwrap()
            } else {
                p.clone()
            }
        })
        .collect()
}

#[test]
fn shifted_net_keeps_its_bound() {
    let net = common::van_der_corput(5);
    let points = common::point_list(&net);
    let bounds = OracleBounds::default();
    assert_eq!(t_by_intervals(&points, 2, 5, 2, &bounds).unwrap(), 0);
    let shifted = shift_corner(&points, 2);
    assert_ne!(shifted, points);
    assert_eq!(general_wep(&shifted, 2, 5).unwrap(), general_wep(&points, 2, 5).unwrap());
    assert_eq!(general_lower_bound(&shifted, 2, 5).unwrap(), 0);
    assert!(t_by_intervals(&shifted, 2, 5, 2, &bounds).unwrap() >= 3);
}

#[test]
fn input_errors() {
    let net = common::van_der_corput(2);
    assert!(truncated_wep(&net, 0).is_err());
    let pts = common::point_list(&net);
    assert!(general_wep(&pts[..3], 2, 2).is_err());
    assert!(general_wep(&pts, 1, 2).is_err());
    let mut bad = pts.clone();
    bad[0] = DigitMatrix::zeros(1, 2);
    assert!(general_wep(&bad, 2, 2).is_err());
    let mut acc = Accumulator::new(2, 2, 2);
    assert!(acc.accumulate(&net, 1..4).is_err());
    assert!(acc.finalize(2).is_err());
    acc.accumulate(&net, 0..4).unwrap();
    assert!(acc.finalize(3).is_err());
    assert!(Accumulator::new(3, 2, 2).accumulate(&net, 0..4).is_err());
}
