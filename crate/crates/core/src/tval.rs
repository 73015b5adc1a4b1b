//! t-values from the inverse identity, reading only the top `m + 2`
//! coefficients of
//!
//! ```text
//! Q(z) = -p(0; z)^s + b^{sm-m} ∑_l ∏_i (z^{μ(x_{l,i} b^m)} - z^{m+1}),
//! ```
//!
//! whose degree is `s(m+1) - minNRT(P⊥)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coeff::{add_into, to_big, Coeff};
use crate::error::{Error, Result};
use crate::net::DigitalNet;
use crate::poly::families::reciprocal_window;
use crate::poly::{inverse_p0, IntPoly};
use crate::wep::{t_from_wep, truncated_wep};

/// How a t-value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Alg1,
    Alg2,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Alg1 => "alg1",
            Method::Alg2 => "alg2",
            Method::Oracle => "oracle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TValueReport {
    pub t: usize,
    pub method: Method,
    /// `deg Q`; only set by [`t_value_alg2`], and `None` when the window
    /// vanishes (one-dimensional nets with a trivial dual).
    pub deg_q: Option<usize>,
    /// For [`t_value_alg2`], the exact coefficients of `Q` at degrees
    /// `(s-1)(m+1), …, s(m+1) - 1`; for [`t_value_alg1`], the scaled
    /// enumerator coefficients `0..=m`.
    pub window: Vec<BigInt>,
}

type WindowKey = (u32, usize, usize);

/// The top `m + 2` coefficients of `p(0; z)^s`, highest degree first.
fn p0_power_top(b: u32, m: usize, s: usize) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<WindowKey, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(w) = cache.lock().unwrap().get(&(b, m, s)) {
        return w.clone();
    }
    let mut rev = inverse_p0(b, m).into_coeffs();
    rev.resize(m + 2, BigInt::zero());
    rev.reverse();
    let top = IntPoly::new(rev).pow_trunc(s, m + 1);
    let w: Arc<Vec<BigInt>> = Arc::new((0..=m + 1).map(|k| top.coeff(k)).collect());
    cache.lock().unwrap().insert((b, m, s), w.clone());
    w
}

struct WindowSum<C> {
    acc: Vec<C>,
    buf: Vec<C>,
    m: usize,
}

impl<C: Coeff> WindowSum<C> {
    fn new(m: usize) -> Self {
        WindowSum {
            acc: vec![C::zero(); m + 2],
            buf: vec![C::zero(); m + 2],
            m,
        }
    }

    fn add(&mut self, mu_star: &[u32]) {
        let m = self.m;
        // exponent m+1-μ(x b^m) is ν*(x)
        let d = mu_star.iter().map(|&x| if x == 0 { m + 1 } else { x as usize });
        reciprocal_window(d, &mut self.buf);
        add_into(&mut self.acc, &self.buf);
    }

    fn merge(mut self, other: Self) -> Self {
        add_into(&mut self.acc, &other.acc);
        self
    }
}

fn window_sums<C: Coeff>(net: &DigitalNet) -> Vec<BigInt> {
    let m = net.m();
    let sum = net.fold_mu_star(
        0..net.num_points(),
        || WindowSum::<C>::new(m),
        |a, mu| a.add(mu),
        WindowSum::merge,
    );
    to_big(sum.acc)
}

/// The t-value by the inverse identity. Requires digit depth `n = m`.
pub fn t_value_alg2(net: &DigitalNet) -> Result<TValueReport> {
    let (b, m, s) = (net.base(), net.m(), net.s());
    if net.n() != m {
        return Err(Error::InvalidArgument(format!(
            "the inverse identity needs n = m, got n = {} and m = {m}",
            net.n()
        )));
    }
    if m == 0 {
        return Ok(TValueReport {
            t: 0,
            method: Method::Alg2,
            deg_q: None,
            window: Vec::new(),
        });
    }
    let sums = if s <= 62 {
        window_sums::<i128>(net)
    } else {
        window_sums::<BigInt>(net)
    };
    let top = p0_power_top(b, m, s);
    let factor = num_traits::pow(BigInt::from(b), s * m - m);
    // index k ↔ degree s(m+1) - k
    let q: Vec<BigInt> = (0..=m + 1).map(|k| &factor * &sums[k] - &top[k]).collect();
    if !q[0].is_zero() {
        return Err(Error::Internal(format!(
            "leading coefficient of Q at degree {} is {}, expected 0",
            s * (m + 1),
            q[0]
        )));
    }
    let window: Vec<BigInt> = q[1..].iter().rev().cloned().collect();
    match (1..=m + 1).find(|&k| !q[k].is_zero()) {
        Some(k) => Ok(TValueReport {
            t: m + 1 - k,
            method: Method::Alg2,
            deg_q: Some(s * (m + 1) - k),
            window,
        }),
        // only possible when P⊥ = {0}, i.e. s = 1 and an injective net
        None if s == 1 => Ok(TValueReport {
            t: 0,
            method: Method::Alg2,
            deg_q: None,
            window,
        }),
        None => Err(Error::Internal(
            "Q vanishes on its top window for s ≥ 2".into(),
        )),
    }
}

/// The t-value read off the truncated enumerator with `ℓ = m`.
pub fn t_value_alg1(net: &DigitalNet) -> Result<TValueReport> {
    let m = net.m();
    if m == 0 {
        return Ok(TValueReport {
            t: 0,
            method: Method::Alg1,
            deg_q: None,
            window: Vec::new(),
        });
    }
    let w = truncated_wep(net, m)?;
    Ok(TValueReport {
        t: t_from_wep(&w, m)?,
        method: Method::Alg1,
        deg_q: None,
        window: (0..=m).map(|a| w.scaled_coeff(a)).collect(),
    })
}
