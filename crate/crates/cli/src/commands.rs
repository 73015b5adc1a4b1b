//! The `tval`, `wep` and `check` commands.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use netquality::oracle::{dual_enumerate, dual_weight_enumerator, min_nrt, net_t_by_intervals, t_by_intervals};
use netquality::sobol::build_matrices;
use netquality::tval::{t_value_alg1, t_value_alg2};
use netquality::wep::{
    full_wep, general_lower_bound, general_wep, overline_gw_with, projection_wep, truncated_wep, worst_projection,
    GwOptions,
};
use netquality::{DigitalNet, GroupSpec, OracleBounds, TValueReport};

use crate::input::{direction_table, NetFile, PointsFile};
use crate::output::{csv_text, enumerator_csv, enumerator_json, exact, json_text, net_json};
use crate::{Algorithm, CliError, Format, Outcome, RunConfig, Source, Status, WepMode};

fn ok(text: String) -> Result<Outcome, CliError> {
    Ok(Outcome {
        text,
        status: Status::Ok,
    })
}

fn sobol_net(entries: &[netquality::DirectionEntry], s: usize, m: usize) -> Result<DigitalNet, CliError> {
    let mats = build_matrices(entries, s, m)?;
    Ok(DigitalNet::from_matrices(GroupSpec::cyclic(2)?, &mats)?)
}

/// The single net named by a `--net` or single-cell `--sobol` source.
fn single_net(source: &Source) -> Result<DigitalNet, CliError> {
    match source {
        Source::Net(path) => NetFile::load(path),
        Source::Sobol { table, dims, m } => {
            let (_, entries) = direction_table(table)?;
            sobol_net(&entries, dims.lo, m.lo)
        }
        _ => unreachable!("validated by RunConfig"),
    }
}

/// One t-value with the method label used in output.
struct TValue {
    t: usize,
    method: &'static str,
    deg_q: Option<Option<usize>>,
}

fn window_text(r: &TValueReport) -> String {
    let w: Vec<String> = r.window.iter().map(BigInt::to_string).collect();
    format!("[{}]", w.join(", "))
}

fn t_value(net: &DigitalNet, alg: Algorithm, bounds: &OracleBounds) -> Result<TValue, CliError> {
    Ok(match alg {
        Algorithm::Alg1 => TValue {
            t: t_value_alg1(net)?.t,
            method: "alg1",
            deg_q: None,
        },
        Algorithm::Alg2 => {
            let r = t_value_alg2(net)?;
            TValue {
                t: r.t,
                method: "alg2",
                deg_q: Some(r.deg_q),
            }
        }
        Algorithm::Both => {
            let a1 = t_value_alg1(net)?;
            let a2 = t_value_alg2(net)?;
            if a1.t != a2.t {
                return Err(CliError::Disagreement(format!(
                    "alg1 gives t = {} (coefficients {}), alg2 gives t = {} (degQ {:?}, window {}) for net {}",
                    a1.t,
                    window_text(&a1),
                    a2.t,
                    a2.deg_q,
                    window_text(&a2),
                    serde_json::to_string(&net_json(net)).expect("values serialize"),
                )));
            }
            TValue {
                t: a2.t,
                method: "both",
                deg_q: Some(a2.deg_q),
            }
        }
        Algorithm::Oracle => TValue {
            t: net_t_by_intervals(net, bounds)?,
            method: "oracle",
            deg_q: None,
        },
    })
}

fn t_json(v: &TValue) -> Value {
    let mut j = json!({ "t": v.t, "method": v.method });
    if let Some(d) = v.deg_q {
        j["degQ"] = json!(d);
    }
    j
}

/// t-values for one net, or a Sobol' grid.
pub fn cmd_tval(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if let Source::Sobol { table, dims, m } = &cfg.source {
        let (label, entries) = direction_table(table)?;
        let mut grid = Vec::new();
        for mm in m.iter() {
            let mut row = Vec::new();
            for s in dims.iter() {
                row.push(t_value(&sobol_net(&entries, s, mm)?, cfg.algorithm, &cfg.bounds)?);
            }
            grid.push((mm, row));
        }
        return ok(match cfg.format {
            Format::Json => {
                let cells: Vec<Value> = grid
                    .iter()
                    .flat_map(|(mm, row)| {
                        dims.iter().zip(row).map(move |(s, v)| {
                            let mut j = t_json(v);
                            j["s"] = json!(s);
                            j["m"] = json!(mm);
                            j
                        })
                    })
                    .collect();
                json_text(&json!({ "directions": label, "cells": cells }))
            }
            Format::Csv => {
                let mut header = vec!["m \\ s".to_string()];
                header.extend(dims.iter().map(|s| s.to_string()));
                let header: Vec<&str> = header.iter().map(String::as_str).collect();
                csv_text(
                    &header,
                    grid.iter().map(|(mm, row)| {
                        let mut r = vec![mm.to_string()];
                        r.extend(row.iter().map(|v| v.t.to_string()));
                        r
                    }),
                )?
            }
        });
    }
    let net = single_net(&cfg.source)?;
    let v = t_value(&net, cfg.algorithm, &cfg.bounds)?;
    ok(match cfg.format {
        Format::Json => json_text(&t_json(&v)),
        Format::Csv => csv_text(
            &["t", "method", "degQ"],
            [vec![
                v.t.to_string(),
                v.method.to_string(),
                v.deg_q.flatten().map_or(String::new(), |d| d.to_string()),
            ]],
        )?,
    })
}

/// The dual weight enumerator, its multivariate form, or projections.
pub fn cmd_wep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if let Source::Points(path) = &cfg.source {
        let ps = PointsFile::load(path)?;
        let w = general_wep(&ps.points, ps.spec.order(), ps.m)?;
        return ok(match cfg.format {
            Format::Json => {
                let mut j = enumerator_json(&w);
                j["source"] = json!("points");
                json_text(&j)
            }
            Format::Csv => enumerator_csv(&w)?,
        });
    }
    let net = single_net(&cfg.source)?;
    let w = match &cfg.wep {
        WepMode::Full => full_wep(&net)?,
        WepMode::Truncated(ell) => truncated_wep(&net, ell.unwrap_or(net.m().max(1)))?,
        WepMode::Gw { cap, project, worst } => {
            let opts = GwOptions {
                cap: *cap,
                ..Default::default()
            };
            let gw = overline_gw_with(&net, &opts)?;
            if let Some(u) = project {
                let w = projection_wep(&gw, u)?;
                return ok(match cfg.format {
                    Format::Json => {
                        let mut j = enumerator_json(&w);
                        j["u"] = json!(u);
                        json_text(&j)
                    }
                    Format::Csv => enumerator_csv(&w)?,
                });
            }
            if let Some(sp) = worst {
                let r = worst_projection(&gw, *sp)?;
                return ok(match cfg.format {
                    Format::Json => json_text(&json!({
                        "s_prime": sp,
                        "u": r.u,
                        "t": r.t,
                        "degree": r.degree,
                    })),
                    Format::Csv => csv_text(
                        &["s_prime", "u", "t", "degree"],
                        [vec![
                            sp.to_string(),
                            r.u.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
                            r.t.to_string(),
                            r.degree.map_or(String::new(), |d| d.to_string()),
                        ]],
                    )?,
                });
            }
            let terms: Vec<(Vec<u32>, String)> = gw
                .poly()
                .terms()
                .map(|(e, c)| (e.to_vec(), exact(c, gw.scale())))
                .collect();
            return ok(match cfg.format {
                Format::Json => {
                    let terms: Vec<Value> = terms
                        .iter()
                        .map(|(e, c)| json!({ "exponents": e, "coeff": c }))
                        .collect();
                    json_text(&json!({
                        "scale": format!("{}^{}", net.base(), net.m()),
                        "cap": gw.cap(),
                        "terms": terms,
                    }))
                }
                Format::Csv => {
                    let mut header: Vec<String> = (1..=net.s()).map(|i| format!("e{i}")).collect();
                    header.push("coefficient".into());
                    let header: Vec<&str> = header.iter().map(String::as_str).collect();
                    csv_text(
                        &header,
                        terms.into_iter().map(|(e, c)| {
                            let mut r: Vec<String> = e.iter().map(u32::to_string).collect();
                            r.push(c);
                            r
                        }),
                    )?
                }
            });
        }
    };
    ok(match cfg.format {
        Format::Json => json_text(&enumerator_json(&w)),
        Format::Csv => enumerator_csv(&w)?,
    })
}

struct Check {
    name: &'static str,
    pass: bool,
}

/// Every path on one net, against the dual and interval oracles.
fn check_net(net: &DigitalNet, bounds: &OracleBounds) -> Result<(Vec<Check>, Value), CliError> {
    let (m, s) = (net.m(), net.s());
    let a1 = t_value_alg1(net)?;
    let a2 = if net.n() == m { Some(t_value_alg2(net)?) } else { None };
    let iv = net_t_by_intervals(net, bounds)?;
    let dual = dual_enumerate(net, bounds)?;
    let nrt = min_nrt(&dual)?;
    let full = full_wep(net)?;
    let oracle_wep = dual_weight_enumerator(&dual);
    let counts = full.counts();
    let wep_match = counts
        .as_ref()
        .is_some_and(|c| c.iter().enumerate().all(|(a, x)| *x == oracle_wep.coeff(a)) && oracle_wep.coeffs().len() <= c.len());

    let mut checks = vec![
        Check {
            name: "alg1 = intervals",
            pass: a1.t == iv,
        },
        Check {
            name: "intervals = m+1-minNRT",
            pass: iv == (m + 1).saturating_sub(nrt),
        },
        Check {
            name: "full enumerator = dual enumerator",
            pass: wep_match,
        },
    ];
    if let Some(r) = &a2 {
        checks.push(Check {
            name: "alg2 = intervals",
            pass: r.t == iv,
        });
        let expected_deg = (dual.elements.len() > 1).then(|| s * (m + 1) - nrt);
        checks.push(Check {
            name: "degQ = s(m+1)-minNRT",
            pass: r.deg_q == expected_deg,
        });
    }
    let values = json!({
        "alg1": a1.t,
        "alg2": a2.as_ref().map(|r| r.t),
        "degQ": a2.as_ref().and_then(|r| r.deg_q),
        "intervals": iv,
        "minNRT": nrt,
        "dual_size": dual.elements.len(),
    });
    Ok((checks, values))
}

fn random_net(rng: &mut ChaCha8Rng, b: u32, m: usize, s: usize) -> Result<DigitalNet, CliError> {
    let mats: Vec<Vec<Vec<u64>>> = (0..s)
        .map(|_| (0..m).map(|_| (0..m).map(|_| rng.gen_range(0..b as u64)).collect()).collect())
        .collect();
    Ok(DigitalNet::from_matrices(GroupSpec::cyclic(b)?, &mats)?)
}

/// Oracle cross-checks on a net, a random suite, or a raw point set.
pub fn cmd_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match &cfg.source {
        Source::Random { b, m, s, count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut failures = Vec::new();
            for i in 0..*count {
                let net = random_net(&mut rng, *b, *m, *s)?;
                let (checks, values) = check_net(&net, &cfg.bounds)?;
                if checks.iter().any(|c| !c.pass) {
                    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
                    failures.push(json!({
                        "instance": i,
                        "failed": failed,
                        "values": values,
                        "net": net_json(&net),
                    }));
                }
            }
            let agree = count - failures.len();
            let status = if failures.is_empty() { Status::Ok } else { Status::Failed };
            let text = match cfg.format {
                Format::Json => json_text(&json!({
                    "instances": count,
                    "agree": agree,
                    "pass": failures.is_empty(),
                    "failures": failures,
                })),
                Format::Csv => csv_text(
                    &["instances", "agree"],
                    [vec![count.to_string(), agree.to_string()]],
                )?,
            };
            Ok(Outcome { text, status })
        }
        Source::Points(path) => {
            let ps = PointsFile::load(path)?;
            let bound = general_lower_bound(&ps.points, ps.spec.order(), ps.m)?;
            let t = t_by_intervals(&ps.points, ps.spec.order(), ps.m, ps.s, &cfg.bounds)?;
            let status = if bound <= t { Status::Ok } else { Status::Failed };
            let text = match cfg.format {
                Format::Json => json_text(&json!({
                    "lower_bound": bound,
                    "oracle_t": t,
                    "strict": bound < t,
                    "pass": bound <= t,
                })),
                Format::Csv => csv_text(
                    &["lower_bound", "oracle_t", "strict"],
                    [vec![bound.to_string(), t.to_string(), (bound < t).to_string()]],
                )?,
            };
            Ok(Outcome { text, status })
        }
        source => {
            let net = single_net(source)?;
            let (checks, values) = check_net(&net, &cfg.bounds)?;
            let pass = checks.iter().all(|c| c.pass);
            let text = match cfg.format {
                Format::Json => {
                    let list: Vec<Value> = checks
                        .iter()
                        .map(|c| json!({ "name": c.name, "pass": c.pass }))
                        .collect();
                    let mut j = json!({ "pass": pass, "checks": list, "values": values });
                    if !pass {
                        j["net"] = net_json(&net);
                    }
                    json_text(&j)
                }
                Format::Csv => csv_text(
                    &["check", "pass"],
                    checks.iter().map(|c| vec![c.name.to_string(), c.pass.to_string()]),
                )?,
            };
            Ok(Outcome {
                text,
                status: if pass { Status::Ok } else { Status::Failed },
            })
        }
    }
}
