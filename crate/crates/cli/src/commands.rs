//! Subcommand bodies. Each returns a JSON report and whether every contract
//! it checks was met.

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use padic_voa::axioms::{heisenberg_basis_upto, AxiomLab, DefectReport};
use padic_voa::fock::HeisenbergState;
use padic_voa::kummer::{family_character, family_index, kummer_bound, kummer_check};
use padic_voa::linear::Monomial;
use padic_voa::modes::Heisenberg;
use padic_voa::qseries::{
    character, eisenstein_g, eisenstein_g2_stabilized, eisenstein_g2_star, normalized_character,
    qseries_padic_distance, QSeries,
};
use padic_voa::scalar::{format_rational, int, is_prime, norm_exponent, NormExponent, Rational};
use padic_voa::virasoro::{pbw_basis_upto, Virasoro, VirasoroState};

use crate::expr::{parse_state, ExprError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Core(#[from] padic_voa::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

pub type Report = (Value, bool);

pub fn rational_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn norm_json(e: NormExponent) -> Value {
    match e {
        NormExponent::NegInfinity => Value::String("-inf".into()),
        NormExponent::Finite(n) => json!(n),
    }
}

pub fn qseries_json(s: &QSeries) -> Value {
    json!({
        "offset": rational_json(s.offset()),
        "coeffs": s.coeffs().iter().map(rational_json).collect::<Vec<_>>(),
        "order": s.order(),
    })
}

fn defect_json<K: Monomial>(r: &DefectReport<K>) -> Value {
    let params: serde_json::Map<String, Value> = r.parameters.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    json!({
        "inputs": r.inputs,
        "parameters": params,
        "norm_exponent": norm_json(r.norm_exponent),
        "defect": r.defect.to_string(),
    })
}

fn require_prime(p: u64) -> Result<(), CliError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(padic_voa::Error::NotPrime(p).into())
    }
}

pub fn character_cmd(prime: u64, state: &str, qmax: usize, eta: bool) -> Result<Report, CliError> {
    require_prime(prime)?;
    let v = parse_state(state)?.to_heisenberg()?;
    let series = if eta { normalized_character(&v, qmax) } else { character(&v, qmax) };
    let norms: Vec<Value> = series.coeffs().iter().map(|c| norm_json(norm_exponent(c, prime))).collect();
    let report = json!({
        "command": "character",
        "state": v.to_string(),
        "prime": prime,
        "normalized": eta,
        "series": qseries_json(&series),
        "norm_exponents": norms,
    });
    Ok((report, true))
}

pub fn eisenstein_cmd(
    k: Option<i64>,
    star: bool,
    stabilized: bool,
    prime: Option<u64>,
    qmax: usize,
) -> Result<Report, CliError> {
    let (series, label) = match (k, star || stabilized, prime) {
        (Some(k), false, _) => (eisenstein_g(k, qmax)?, format!("G{k}")),
        (None, true, Some(p)) if stabilized => (eisenstein_g2_stabilized(p, qmax)?, "G2 - p G2(q^p)".to_string()),
        (None, true, Some(p)) => (eisenstein_g2_star(p, qmax)?, "G2*".to_string()),
        (None, true, None) => return Err(CliError::Usage("--star and --stabilized need --prime".into())),
        _ => return Err(CliError::Usage("give either --k K or --star/--stabilized with --prime P".into())),
    };
    let report = json!({
        "command": "eisenstein",
        "series_name": label,
        "prime": prime,
        "series": qseries_json(&series),
    });
    Ok((report, true))
}

pub fn kummer_cmd(prime: u64, amax: u32, qmax: usize) -> Result<Report, CliError> {
    let g2_star = eisenstein_g2_star(prime, qmax)?.scale(&int(2));
    let stabilized = eisenstein_g2_stabilized(prime, qmax)?.scale(&int(2));
    let mut pairs = Vec::new();
    for a in 0..=amax {
        for b in a..=amax {
            pairs.push((a, b));
        }
    }
    let congruences = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<(Value, bool), CliError> {
            let rep = kummer_check(prime, a, b)?;
            let ok = rep.norm_exponent.at_most(kummer_bound(a));
            let entry = json!({
                "a": a,
                "b": b,
                "r": rep.parameter("r"),
                "s": rep.parameter("s"),
                "norm_exponent": norm_json(rep.norm_exponent),
                "bound": kummer_bound(a),
                "ok": ok,
            });
            Ok((entry, ok))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let limits = (0..=amax)
        .into_par_iter()
        .map(|a| -> Result<(Value, bool), CliError> {
            let f = family_character(prime, a, qmax)?;
            let d_star = qseries_padic_distance(&f, &g2_star, prime, qmax)?;
            let d_stab = qseries_padic_distance(&f, &stabilized, prime, qmax)?;
            let per_coeff: Vec<Value> = f
                .coeffs()
                .iter()
                .zip(g2_star.coeffs())
                .map(|(x, y)| norm_json(norm_exponent(&(x - y), prime)))
                .collect();
            let ok = d_star.at_most(kummer_bound(a));
            let entry = json!({
                "a": a,
                "r": family_index(prime, a),
                "distance_g2_star": norm_json(d_star),
                "coefficient_exponents": per_coeff,
                "distance_stabilized": norm_json(d_stab),
                "bound": kummer_bound(a),
                "ok": ok,
            });
            Ok((entry, ok))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let ok = congruences.iter().chain(&limits).all(|(_, ok)| *ok);
    let report = json!({
        "command": "kummer",
        "prime": prime,
        "amax": amax,
        "qmax": qmax,
        "congruences": congruences.into_iter().map(|(v, _)| v).collect::<Vec<_>>(),
        "limits": limits.into_iter().map(|(v, _)| v).collect::<Vec<_>>(),
        "ok": ok,
    });
    Ok((report, ok))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Jacobi,
    Commutator,
    Locality,
    Isometry,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::Commutator => "commutator",
            Suite::Locality => "locality",
            Suite::Isometry => "isometry",
        }
    }

    pub fn default_grade(self) -> u32 {
        match self {
            Suite::Commutator => 4,
            _ => 3,
        }
    }

    pub fn default_window(self) -> i64 {
        match self {
            Suite::Jacobi => 2,
            Suite::Commutator => 3,
            Suite::Locality | Suite::Isometry => 4,
        }
    }
}

fn triples(states: &[HeisenbergState]) -> Vec<(&HeisenbergState, &HeisenbergState, &HeisenbergState)> {
    states.iter().flat_map(|u| states.iter().flat_map(move |v| states.iter().map(move |w| (u, v, w)))).collect()
}

fn isometry_samples(basis: &[HeisenbergState], p: u64) -> Vec<HeisenbergState> {
    let pq = int(p as i64);
    let vac = HeisenbergState::vacuum();
    basis
        .iter()
        .flat_map(|b| {
            [b.clone(), b.scale(&pq), b.scale(&pq.recip()), b + &vac.scale(&pq), &b.scale(&pq) + &vac]
        })
        .collect()
}

pub fn axioms_cmd(suite: Suite, grade: u32, window: i64, prime: u64) -> Result<Report, CliError> {
    require_prime(prime)?;
    let lab = AxiomLab::new(Heisenberg::shared(), prime);
    let monomials = heisenberg_basis_upto(grade);
    let states: Vec<HeisenbergState> = monomials.iter().cloned().map(HeisenbergState::monomial).collect();
    let w = window;
    let (checks, failures): (usize, Vec<Value>) = match suite {
        Suite::Jacobi => {
            let per: Vec<(usize, Vec<Value>)> = triples(&states)
                .par_iter()
                .map(|(u, v, x)| {
                    let mut out = (0, Vec::new());
                    for r in -w..=w {
                        for s in -w..=w {
                            for t in -w..=w {
                                out.0 += 1;
                                let rep = lab.jacobi_defect(u, v, x, r, s, t);
                                if !rep.is_zero() {
                                    out.1.push(defect_json(&rep));
                                }
                            }
                        }
                    }
                    out
                })
                .collect();
            fold(per)
        }
        Suite::Commutator => {
            let per: Vec<(usize, Vec<Value>)> = triples(&states)
                .par_iter()
                .map(|(u, v, x)| {
                    let mut out = (0, Vec::new());
                    for i in -w..=w {
                        for j in -w..=w {
                            out.0 += 2;
                            let c = lab.commutator_defect(u, v, x, i, j);
                            if !c.is_zero() {
                                out.1.push(json!({"identity": "commutator", "report": defect_json(&c)}));
                            }
                            let a = lab.associator_defect(u, v, x, i, j);
                            if !a.is_zero() {
                                out.1.push(json!({"identity": "associator", "report": defect_json(&a)}));
                            }
                        }
                    }
                    out
                })
                .collect();
            fold(per)
        }
        Suite::Locality => {
            let per: Vec<(usize, Vec<Value>)> = triples(&states)
                .par_iter()
                .map(|(u, v, x)| {
                    let n = (u.max_weight().unwrap_or(0) + v.max_weight().unwrap_or(0)) as i64;
                    let profile = lab.locality_profile(u, v, x, n + 2, w);
                    let bad: Vec<Value> = profile
                        .iter()
                        .filter(|(t, e)| *t >= n && !e.is_neg_infinity())
                        .map(|(t, e)| {
                            json!({"inputs": [u.to_string(), v.to_string(), x.to_string()], "t": t, "norm_exponent": norm_json(*e)})
                        })
                        .collect();
                    (3, bad)
                })
                .collect();
            fold(per)
        }
        Suite::Isometry => {
            let samples = isometry_samples(&states, prime);
            let mut bad = Vec::new();
            for a in &samples {
                let (lhs, rhs) = lab.isometry_probe(a, &monomials, -w..=w)?;
                if lhs != rhs {
                    bad.push(json!({"state": a.to_string(), "lhs": norm_json(lhs), "rhs": norm_json(rhs)}));
                }
            }
            (samples.len(), bad)
        }
    };
    let ok = failures.is_empty();
    let report = json!({
        "command": "axioms",
        "suite": suite.name(),
        "grade": grade,
        "window": window,
        "prime": prime,
        "checks": checks,
        "exceptions": failures.len(),
        "defects": failures,
        "ok": ok,
    });
    Ok((report, ok))
}

fn fold(per: Vec<(usize, Vec<Value>)>) -> (usize, Vec<Value>) {
    per.into_iter().fold((0, Vec::new()), |mut acc, (n, mut v)| {
        acc.0 += n;
        acc.1.append(&mut v);
        acc
    })
}

pub fn virasoro_cmd(cprime: &Rational, grade: u32, window: i64, prime: u64) -> Result<Report, CliError> {
    require_prime(prime)?;
    let vir = Virasoro::new(cprime.clone());
    let words = pbw_basis_upto(grade);
    let w = window;
    let integer_charge = cprime.is_integer();
    let per: Vec<(usize, Vec<Value>, bool)> = words
        .par_iter()
        .map(|word| {
            let s = VirasoroState::monomial(word.clone());
            let mut checks = 0;
            let mut bad = Vec::new();
            let mut integral = true;
            for m in -w..=w {
                integral &= vir.l_action(m, &s).is_integral();
                for n in -w..=w {
                    checks += 1;
                    let rep = vir.bracket_defect(m, n, &s, prime);
                    if !rep.is_zero() {
                        bad.push(defect_json(&rep));
                    }
                }
            }
            (checks, bad, integral)
        })
        .collect();
    let mut checks = 0;
    let mut defects = Vec::new();
    let mut integral = true;
    for (c, mut b, i) in per {
        checks += c;
        defects.append(&mut b);
        integral &= i;
    }
    let ok = defects.is_empty() && (!integer_charge || integral);
    let report = json!({
        "command": "virasoro",
        "cprime": rational_json(cprime),
        "central_charge": rational_json(&vir.central_charge()),
        "grade": grade,
        "window": window,
        "basis_size": words.len(),
        "checks": checks,
        "exceptions": defects.len(),
        "defects": defects,
        "integral": if integer_charge { json!(integral) } else { Value::Null },
        "ok": ok,
    });
    Ok((report, ok))
}
