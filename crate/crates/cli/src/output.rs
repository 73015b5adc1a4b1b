//! Serialization helpers shared by the commands.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use netquality::{DigitalNet, Provenance, WeightEnumerator};

use crate::CliError;

/// `num / den` in lowest terms, as `"p"` or `"p/q"`.
pub fn exact(num: &BigInt, den: &BigInt) -> String {
    if num.is_zero() {
        return "0".into();
    }
    let g = num.gcd(den);
    let (mut p, mut q) = (num / &g, den / &g);
    if q < BigInt::zero() {
        p = -p;
        q = -q;
    }
    if q.is_one() {
        p.to_string()
    } else {
        format!("{p}/{q}")
    }
}

pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Input(format!("csv: {e}"));
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(&r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// The enumerator's exact coefficients `N_0, …, N_{valid_to}`.
pub fn coefficients(w: &WeightEnumerator) -> Vec<String> {
    (0..=w.valid_to()).map(|a| exact(&w.scaled_coeff(a), w.scale())).collect()
}

pub fn enumerator_json(w: &WeightEnumerator) -> Value {
    json!({
        "scale": w.scale_label(),
        "coeffs": coefficients(w),
        "valid_to": w.valid_to(),
    })
}

pub fn enumerator_csv(w: &WeightEnumerator) -> Result<String, CliError> {
    csv_text(
        &["degree", "coefficient"],
        coefficients(w).into_iter().enumerate().map(|(a, c)| vec![a.to_string(), c]),
    )
}

/// A net in the file format, for counterexample dumps.
pub fn net_json(net: &DigitalNet) -> Value {
    let spec = net.spec();
    let group = if spec.is_cyclic() {
        json!({ "b": spec.order() })
    } else {
        json!({ "group": spec.factors() })
    };
    let mut v = group;
    v["s"] = json!(net.s());
    v["m"] = json!(net.m());
    v["n"] = json!(net.n());
    let gens = net.generators();
    match net.provenance() {
        Provenance::Matrices => {
            let mats: Vec<Vec<Vec<u16>>> = (0..net.s())
                .map(|j| (0..net.n()).map(|r| gens.iter().map(|g| g.get(j, r)).collect()).collect())
                .collect();
            v["matrices"] = json!(mats);
        }
        Provenance::Explicit => {
            let g: Vec<Vec<Vec<u16>>> = gens
                .iter()
                .map(|g| (0..net.s()).map(|j| g.row(j).to_vec()).collect())
                .collect();
            v["generators"] = json!(g);
        }
    }
    v
}
