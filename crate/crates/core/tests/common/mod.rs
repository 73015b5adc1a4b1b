#![allow(dead_code)]

use std::collections::HashSet;

use netquality::poly::IntPoly;
use netquality::{Digit, DigitMatrix, DigitalNet, GroupSpec};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random `n × m` generating matrices over `Z_b`.
pub fn random_matrices(rng: &mut impl Rng, b: u32, m: usize, s: usize, n: usize) -> Vec<Vec<Vec<u64>>> {
    (0..s)
        .map(|_| {
            (0..n)
                .map(|_| (0..m).map(|_| rng.gen_range(0..b as u64)).collect())
                .collect()
        })
        .collect()
}

pub fn random_net(seed: u64, b: u32, m: usize, s: usize, n: usize) -> DigitalNet {
    let mut r = rng(seed);
    DigitalNet::from_matrices(GroupSpec::cyclic(b).unwrap(), &random_matrices(&mut r, b, m, s, n)).unwrap()
}

pub fn random_matrix(rng: &mut impl Rng, b: u32, s: usize, n: usize) -> DigitMatrix {
    let digits = (0..s * n).map(|_| rng.gen_range(0..b) as Digit).collect();
    DigitMatrix::from_flat(s, n, digits).unwrap()
}

/// A net over an arbitrary group from random explicit generators.
pub fn random_group_net(seed: u64, spec: &GroupSpec, m: usize, s: usize, n: usize) -> DigitalNet {
    let mut r = rng(seed);
    let gens = (0..m).map(|_| random_matrix(&mut r, spec.order(), s, n)).collect();
    DigitalNet::from_generators(spec.clone(), s, n, gens).unwrap()
}

pub fn van_der_corput(m: usize) -> DigitalNet {
    let id: Vec<Vec<u64>> = (0..m).map(|i| (0..m).map(|j| (i == j) as u64).collect()).collect();
    let rev: Vec<Vec<u64>> = (0..m).map(|i| (0..m).map(|j| (i + j + 1 == m) as u64).collect()).collect();
    DigitalNet::from_matrices(GroupSpec::cyclic(2).unwrap(), &[id, rev]).unwrap()
}

pub fn point_list(net: &DigitalNet) -> Vec<DigitMatrix> {
    net.points().map(|(_, x)| x).collect()
}

pub fn distinct_points(net: &DigitalNet) -> usize {
    net.points().map(|(_, x)| x).collect::<HashSet<_>>().len()
}

pub fn is_injective(net: &DigitalNet) -> bool {
    distinct_points(net) as u64 == net.num_points()
}

pub fn poly_from(v: &[i64]) -> IntPoly {
    IntPoly::from_i64(v)
}

/// Group factor lists of order at most 12, cyclic and not.
pub fn group_factors() -> impl Strategy<Value = Vec<u32>> {
    prop_oneof![
        Just(vec![2]),
        Just(vec![3]),
        Just(vec![4]),
        Just(vec![5]),
        Just(vec![6]),
        Just(vec![2, 2]),
        Just(vec![2, 3]),
        Just(vec![3, 3]),
        Just(vec![2, 2, 2]),
        Just(vec![4, 2]),
        Just(vec![2, 6]),
        Just(vec![12]),
    ]
}
