use num_bigint::BigInt;
use serde_json::{json, Value};

use qnorm_core::diagrams::{CrossingHistogram, PairingFamily};
use qnorm_core::exact::{catalan, HighComplex, HighFloat, QPolynomial};
use qnorm_core::formulas::{
    closed_form_r, corteel_partition_function, printed_closed_form_r, r_via_decomposition,
    touchard_riordan, BTable, Multiplicity, CLOSED_FORM_MAX_K,
};
use qnorm_core::norms::{
    a11_value, a3_limit_probe, crossing_counts, gamma_n, gamma_n_factored, lambda_n_with,
    least_magnitude_root, polynomial_value, semicircular_limit_probe_with,
    taylor_coefficients_from_counts, Branch, CountSource, RootReport,
};

use crate::args::*;
use crate::output::{big, bigs, complex, csv_text, f64_text, float, params, rational};
use crate::{CliError, Context, Outcome, Rendered};

/// Largest `n` of the circular root scan without `--extended`.
pub const ROOTS_DEFAULT_CEILING: usize = 10;

pub fn dispatch(cmd: &Command, ctx: &Context) -> Result<Outcome, CliError> {
    match cmd {
        Command::Enumerate(a) => enumerate(a, ctx),
        Command::Btable(a) => btable(a, ctx),
        Command::Tr(a) => polynomial_command("tr", a, ctx, touchard_riordan),
        Command::Corteel(a) => polynomial_command("corteel", a, ctx, corteel_partition_function),
        Command::Rnk(a) => rnk(a, ctx),
        Command::Norm(a) => norm(a, ctx),
        Command::Taylor(a) => taylor(a, ctx),
        Command::Probe(a) => probe(a, ctx),
        Command::Roots(a) => roots(a, ctx),
        Command::Selftest(a) => crate::selftest::run(a, ctx),
    }
}

fn histogram_json(h: &CrossingHistogram) -> Value {
    let rows: Vec<Value> = h
        .counts
        .iter()
        .map(|(k, c)| json!({ "n": h.n, "k": k, "count": big(c) }))
        .collect();
    json!({ "family": h.family.as_str(), "n": h.n, "histogram": rows, "total": big(&h.total()) })
}

fn enumerate(a: &EnumerateArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let h = ctx.enumerator.histogram(a.n, a.family.into())?;
    let rendered = match a.format {
        Format::Csv => Rendered::Csv(csv_text(
            &["n", "k", "count"],
            h.counts
                .iter()
                .map(|(k, c)| vec![h.n.to_string(), k.to_string(), c.to_string()]),
        )),
        Format::Json => Rendered::Json {
            params: params(&[
                ("n", json!(a.n)),
                ("family", json!(PairingFamily::from(a.family).as_str())),
            ]),
            results: histogram_json(&h),
        },
    };
    Ok(Outcome::ok("enumerate", rendered))
}

fn btable(a: &BtableArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let (source, table) = if a.regenerate {
        ("enumeration", BTable::regenerate(a.max_k, &ctx.enumerator)?)
    } else {
        if a.max_k > CLOSED_FORM_MAX_K {
            return Err(CliError::Usage(format!(
                "built-in tables stop at k = {CLOSED_FORM_MAX_K}; use --regenerate"
            )));
        }
        let t = if a.corrected {
            BTable::corrected()
        } else {
            BTable::printed()
        };
        let kept = t
            .entries()
            .filter(|&(_, k, _)| k <= a.max_k)
            .map(|(n, k, c)| ((n, k), c.clone()));
        let name = if a.corrected { "corrected" } else { "printed" };
        (name, BTable::from_entries(a.max_k, kept)?)
    };
    let rendered = match a.format {
        Format::Csv => Rendered::Csv(csv_text(
            &["n", "k", "count"],
            table
                .entries()
                .map(|(n, k, c)| vec![n.to_string(), k.to_string(), c.to_string()]),
        )),
        Format::Json => {
            let entries: Vec<Value> = table
                .entries()
                .map(|(n, k, c)| json!({ "n": n, "k": k, "b": big(c) }))
                .collect();
            let printed = BTable::printed();
            let differences: Vec<Value> = table
                .differences(&printed)
                .into_iter()
                .filter(|d| d.0 <= a.max_k)
                .map(|(n, k, ours, theirs)| {
                    json!({ "n": n, "k": k, "value": big(&ours), "printed": big(&theirs) })
                })
                .collect();
            Rendered::Json {
                params: params(&[("max_k", json!(a.max_k)), ("source", json!(source))]),
                results: json!({
                    "entries": entries,
                    "differences_from_printed": differences,
                    "matches_printed": differences.is_empty(),
                }),
            }
        }
    };
    Ok(Outcome::ok("btable", rendered))
}

fn polynomial_command(
    name: &'static str,
    a: &PolyArgs,
    ctx: &Context,
    build: fn(usize) -> qnorm_core::Result<QPolynomial>,
) -> Result<Outcome, CliError> {
    let p = build(a.n)?;
    let mut results = json!({
        "n": a.n,
        "coefficients": bigs(p.to_dense()?.iter()),
        "degree": p.degree().unwrap_or(0),
        "total": big(&p.eval_at_one()),
    });
    let mut ps = vec![("n", json!(a.n))];
    if let Some(at) = &a.at {
        let point = Point::parse(at).map_err(CliError::Usage)?;
        ps.push(("at", json!(at)));
        if point.is_real() {
            let v = p.eval_rational(&point.re)?;
            results["value"] = rational(&v);
            results["value_float"] = float(&HighFloat::from_rational(&v, ctx.precision));
        } else {
            ps.push(("precision_bits", json!(ctx.precision)));
            results["value"] = complex(&polynomial_value(&p, &point.to_complex(ctx.precision))?);
        }
    }
    Ok(Outcome::ok(
        name,
        Rendered::Json {
            params: params(&ps),
            results,
        },
    ))
}

fn printed_convolution(n: usize, k: usize) -> qnorm_core::Result<BigInt> {
    r_via_decomposition(n, k, &BTable::printed(), Multiplicity::BlockSize)
}

fn corrected_convolution(n: usize, k: usize) -> qnorm_core::Result<BigInt> {
    r_via_decomposition(n, k, &BTable::corrected(), Multiplicity::ComponentType)
}

fn rnk(a: &RnkArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let by = |m: RnkMethod| -> Result<BigInt, CliError> {
        Ok(match (m, a.printed) {
            (RnkMethod::Closed, false) => closed_form_r(a.n, a.k)?,
            (RnkMethod::Closed, true) => printed_closed_form_r(a.n, a.k)?,
            (RnkMethod::Convolution, false) => corrected_convolution(a.n, a.k)?,
            (RnkMethod::Convolution, true) => printed_convolution(a.n, a.k)?,
            (RnkMethod::Enumerate, _) => ctx
                .enumerator
                .histogram(a.n, PairingFamily::ParityReversing)?
                .get(a.k),
        })
    };
    let r = by(a.method)?;
    let mut results = json!({ "n": a.n, "k": a.k, "method": a.method.as_str(), "r": big(&r) });
    let mut failure = None;
    if a.verify {
        let mut checks = serde_json::Map::new();
        let mut agree = true;
        for m in [
            RnkMethod::Closed,
            RnkMethod::Convolution,
            RnkMethod::Enumerate,
        ] {
            match by(m) {
                Ok(v) => {
                    agree &= v == r;
                    checks.insert(m.as_str().into(), big(&v));
                }
                Err(CliError::Ceiling(_)) => {
                    checks.insert(m.as_str().into(), Value::Null);
                }
                Err(e) => return Err(e),
            }
        }
        results["checks"] = Value::Object(checks);
        results["agree"] = json!(agree);
        if !agree {
            failure = Some(CliError::Internal(format!(
                "methods disagree on r({}, {})",
                a.n, a.k
            )));
        }
    }
    let ps = params(&[
        ("n", json!(a.n)),
        ("k", json!(a.k)),
        ("method", json!(a.method.as_str())),
        ("verify", json!(a.verify)),
        ("printed", json!(a.printed)),
    ]);
    Ok(Outcome {
        command: "rnk",
        rendered: Rendered::Json {
            params: ps,
            results,
        },
        failure,
    })
}

fn norm(a: &NormArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let point = Point::parse(&a.q).map_err(CliError::Usage)?;
    let q = point.to_complex(ctx.precision);
    let mut results = json!({ "n": a.n, "operator": a.op.as_str(), "q": complex(&q) });
    let sample = match a.op {
        Operator::Semicircular => gamma_n(a.n, &q)?,
        Operator::Circular => {
            let r = ctx
                .enumerator
                .histogram(a.n, PairingFamily::ParityReversing)?
                .to_polynomial();
            lambda_n_with(a.n, &r, &q)?
        }
    };
    let value = match (a.op, Branch::from(a.branch)) {
        (Operator::Semicircular, Branch::Factored) => gamma_n_factored(a.n, &q)?,
        (Operator::Circular, Branch::Factored) => {
            return Err(CliError::Usage(
                "the factored branch is semicircular only".into(),
            ))
        }
        _ => sample.value.clone(),
    };
    results["inner"] = complex(&sample.inner);
    results["phase"] = float(&sample.phase);
    results["modulus"] = float(&value.abs());
    results["value"] = complex(&value);
    results["branch"] = json!(Branch::from(a.branch).as_str());
    let ps = params(&[
        ("op", json!(a.op.as_str())),
        ("n", json!(a.n)),
        ("q", json!(a.q)),
        ("branch", json!(Branch::from(a.branch).as_str())),
        ("precision_bits", json!(ctx.precision)),
    ]);
    Ok(Outcome::ok(
        "norm",
        Rendered::Json {
            params: ps,
            results,
        },
    ))
}

fn source(printed: bool) -> CountSource {
    if printed {
        CountSource::Printed
    } else {
        CountSource::Enumerated
    }
}

fn taylor(a: &TaylorArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let counts = if a.max_k <= CLOSED_FORM_MAX_K || a.printed {
        crossing_counts(a.n, a.max_k, source(a.printed))?
    } else {
        let h = ctx
            .enumerator
            .histogram(a.n, PairingFamily::ParityReversing)
            .map_err(|e| {
                CliError::Ceiling(format!(
                    "k > {CLOSED_FORM_MAX_K} needs enumerated counts: {e}"
                ))
            })?;
        (0..=a.max_k).map(|k| h.get(k)).collect()
    };
    let mut by_method = Vec::new();
    for m in a.method.methods() {
        by_method.push((
            m,
            taylor_coefficients_from_counts(a.n, &counts, m, ctx.precision)?,
        ));
    }
    let first = &by_method[0].1;
    let agree = by_method.iter().all(|(_, c)| {
        c.iter()
            .zip(first)
            .all(|(x, y)| x.rational_part == y.rational_part)
    });
    let coefficients: Vec<Value> = first
        .iter()
        .enumerate()
        .map(|(k, a)| json!({ "k": k, "rational": rational(&a.rational_part), "value": float(&a.float_value) }))
        .collect();
    let results = json!({
        "n": a.n,
        "counts": bigs(counts.iter()),
        "prefactor": { "base": big(&catalan(a.n as u64)), "exponent": format!("1/{}", 2 * a.n) },
        "coefficients": coefficients,
        "methods": by_method.iter().map(|(m, _)| m.as_str()).collect::<Vec<_>>(),
        "agree": agree,
    });
    let failure = (!agree).then(|| CliError::Internal("Taylor methods disagree".into()));
    let ps = params(&[
        ("n", json!(a.n)),
        ("max_k", json!(a.max_k)),
        ("method", json!(format!("{:?}", a.method).to_lowercase())),
        ("printed", json!(a.printed)),
        ("precision_bits", json!(ctx.precision)),
    ]);
    Ok(Outcome {
        command: "taylor",
        rendered: Rendered::Json {
            params: ps,
            results,
        },
        failure,
    })
}

fn strictly(values: &[HighFloat], decreasing: bool) -> bool {
    values
        .windows(2)
        .all(|w| if decreasing { w[1] < w[0] } else { w[1] > w[0] })
}

fn probe(a: &ProbeArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let mut ps = vec![("which", json!(a.which.as_str())), ("grid", json!(a.grid))];
    let results = match a.which {
        ProbeKind::A3 => {
            let v: Vec<HighFloat> = a
                .grid
                .iter()
                .map(|&n| a3_limit_probe(n))
                .collect::<Result<_, _>>()?;
            let rows: Vec<Value> = a
                .grid
                .iter()
                .zip(&v)
                .map(|(n, x)| json!({ "n": n, "a3": float(x) }))
                .collect();
            json!({ "sequence": rows })
        }
        ProbeKind::A11 => {
            ps.push(("printed", json!(a.printed)));
            let v: Vec<HighFloat> = a
                .grid
                .iter()
                .map(|&n| a11_value(n, source(a.printed)))
                .collect::<Result<_, _>>()?;
            let rows: Vec<Value> = a
                .grid
                .iter()
                .zip(&v)
                .map(|(&n, x)| {
                    let ratio = x.div(&HighFloat::from_i64(-5 * n as i64, x.precision()));
                    json!({ "n": n, "a11": float(x), "ratio_to_minus_5n": float(&ratio) })
                })
                .collect();
            let mags: Vec<HighFloat> = v.iter().map(HighFloat::abs).collect();
            json!({ "sequence": rows, "magnitude_strictly_increasing": strictly(&mags, false) })
        }
        ProbeKind::Limit => {
            let point = Point::parse(&a.q).map_err(CliError::Usage)?;
            let q = point.to_complex(ctx.precision);
            ps.push(("q", json!(a.q)));
            ps.push(("branch", json!(Branch::from(a.branch).as_str())));
            ps.push(("precision_bits", json!(ctx.precision)));
            let errs = semicircular_limit_probe_with(&q, &a.grid, a.branch.into())?;
            let target = HighComplex::from_f64(2.0, 0.0, ctx.precision)
                .div(&HighComplex::one(ctx.precision).sub(&q).principal_root(2));
            let rows: Vec<Value> = errs
                .iter()
                .map(|(n, e)| json!({ "n": n, "error": float(e) }))
                .collect();
            let e: Vec<HighFloat> = errs.into_iter().map(|(_, e)| e).collect();
            json!({ "target": complex(&target), "sequence": rows, "strictly_decreasing": strictly(&e, true) })
        }
    };
    Ok(Outcome::ok(
        "probe",
        Rendered::Json {
            params: params(&ps),
            results,
        },
    ))
}

fn report_json(n: usize, r: &RootReport) -> Value {
    let upper: Vec<Value> = r
        .upper_half()
        .map(|z| json!({ "re": f64_text(z.re), "im": f64_text(z.im) }))
        .collect();
    json!({
        "n": n,
        "degree": r.degree,
        "least": {
            "re": f64_text(r.least.re),
            "im": f64_text(r.least.im),
            "magnitude": f64_text(r.least.norm()),
        },
        "upper_half_roots": upper,
        "residual": f64_text(r.residual),
        "iterations": r.iterations,
    })
}

fn roots(a: &RootsArgs, ctx: &Context) -> Result<Outcome, CliError> {
    if a.n_from < 2 || a.n_to < a.n_from {
        return Err(CliError::Usage("need 2 <= n-from <= n-to".into()));
    }
    if a.operator == Operator::Circular && a.n_to > ROOTS_DEFAULT_CEILING && !a.extended {
        return Err(CliError::Ceiling(format!(
            "circular roots past n = {ROOTS_DEFAULT_CEILING} need --extended"
        )));
    }
    let mut reports = Vec::new();
    for n in a.n_from..=a.n_to {
        let p = match a.operator {
            Operator::Circular => ctx
                .enumerator
                .histogram(n, PairingFamily::ParityReversing)?
                .to_polynomial(),
            Operator::Semicircular => touchard_riordan(n)?,
        };
        reports.push((n, least_magnitude_root(&p)?));
    }
    let decreasing = reports
        .windows(2)
        .all(|w| w[1].1.least.norm() < w[0].1.least.norm());
    let rendered = match a.format {
        Format::Csv => Rendered::Csv(csv_text(
            &["n", "re", "im", "magnitude"],
            reports.iter().map(|(n, r)| {
                vec![
                    n.to_string(),
                    f64_text(r.least.re),
                    f64_text(r.least.im),
                    f64_text(r.least.norm()),
                ]
            }),
        )),
        Format::Json => Rendered::Json {
            params: params(&[
                ("n_from", json!(a.n_from)),
                ("n_to", json!(a.n_to)),
                ("operator", json!(a.operator.as_str())),
                ("extended", json!(a.extended)),
            ]),
            results: json!({
                "reports": reports.iter().map(|(n, r)| report_json(*n, r)).collect::<Vec<_>>(),
                "least_magnitudes_strictly_decreasing": decreasing,
                "max_residual": f64_text(reports.iter().map(|r| r.1.residual).fold(0.0, f64::max)),
            }),
        },
    };
    Ok(Outcome::ok("roots", rendered))
}
