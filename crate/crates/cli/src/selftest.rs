use serde_json::{json, Value};

use qnorm_core::diagrams::PairingFamily;
use qnorm_core::exact::{double_factorial_odd, factorial, QPolynomial};
use qnorm_core::formulas::{
    closed_form_r, corteel_partition_function, factorial_functional_residual, r_via_decomposition,
    totals_with_unit, touchard_riordan, BTable, Multiplicity, CLOSED_FORM_MAX_K,
};
use qnorm_core::norms::{least_magnitude_root, taylor_coefficients, TaylorMethod};

use crate::args::{Level, SelftestArgs};
use crate::output::params;
use crate::{CliError, Context, Outcome, Rendered};

type Check = Result<(bool, String), CliError>;

struct Sizes {
    parity: usize,
    all: usize,
    reference: usize,
    closed: usize,
    taylor: usize,
    roots: usize,
}

fn sizes(level: Level) -> Sizes {
    match level {
        Level::Quick => Sizes {
            parity: 8,
            all: 6,
            reference: 7,
            closed: 8,
            taylor: 12,
            roots: 8,
        },
        Level::Full => Sizes {
            parity: 10,
            all: 8,
            reference: 9,
            closed: 10,
            taylor: 50,
            roots: 10,
        },
    }
}

fn totals(ctx: &Context, s: &Sizes) -> Check {
    for n in 1..=s.parity {
        let h = ctx
            .enumerator
            .histogram(n, PairingFamily::ParityReversing)?;
        if h.total() != factorial(n as u64) {
            return Ok((false, format!("parity total at n = {n}")));
        }
    }
    for n in 1..=s.all {
        let h = ctx.enumerator.histogram(n, PairingFamily::All)?;
        if h.total() != double_factorial_odd(n as u64) {
            return Ok((false, format!("pairing total at n = {n}")));
        }
    }
    Ok((
        true,
        format!("n! through {}, (2n-1)!! through {}", s.parity, s.all),
    ))
}

fn fast_vs_reference(ctx: &Context, s: &Sizes) -> Check {
    for n in 1..=s.reference {
        for f in [
            PairingFamily::ParityReversing,
            PairingFamily::ConnectedParityReversing,
        ] {
            if ctx.enumerator.histogram(n, f)? != ctx.enumerator.reference_histogram(n, f)? {
                return Ok((false, format!("{f} at n = {n}")));
            }
        }
    }
    Ok((true, format!("n <= {}", s.reference)))
}

fn crossing_polynomials(ctx: &Context, s: &Sizes) -> Check {
    for n in 1..=s.all {
        let h = ctx.enumerator.histogram(n, PairingFamily::All)?;
        if touchard_riordan(n)? != h.to_polynomial() {
            return Ok((false, format!("all pairings at n = {n}")));
        }
        if corteel_partition_function(n)? != ctx.enumerator.directed_crossing_polynomial(n)? {
            return Ok((false, format!("directed crossings at n = {n}")));
        }
    }
    Ok((true, format!("n <= {}", s.all)))
}

fn closed_forms(ctx: &Context, s: &Sizes) -> Check {
    let table = BTable::corrected();
    for n in 1..=s.closed {
        let h = ctx
            .enumerator
            .histogram(n, PairingFamily::ParityReversing)?;
        for k in 0..=CLOSED_FORM_MAX_K {
            let c = closed_form_r(n, k)?;
            if c != h.get(k) || c != r_via_decomposition(n, k, &table, Multiplicity::ComponentType)?
            {
                return Ok((false, format!("r({n}, {k})")));
            }
        }
    }
    Ok((true, format!("n <= {}, k <= {CLOSED_FORM_MAX_K}", s.closed)))
}

fn connected_table(ctx: &Context, s: &Sizes) -> Check {
    let frozen = BTable::corrected();
    let max_k = s.closed.min(CLOSED_FORM_MAX_K);
    let fresh = BTable::regenerate(max_k, &ctx.enumerator)?;
    let bad = fresh.entries().find(|&(n, k, c)| &frozen.get(n, k) != c);
    Ok(match bad {
        Some((n, k, _)) => (false, format!("b({n}, {k})")),
        None => (true, format!("k <= {max_k}")),
    })
}

fn functional_equation(ctx: &Context, s: &Sizes) -> Check {
    let rows: Vec<QPolynomial> = std::iter::once(QPolynomial::constant(1))
        .chain(
            (1..=s.parity)
                .map(|n| {
                    ctx.enumerator
                        .histogram(n, PairingFamily::ConnectedParityReversing)
                        .map(|h| h.to_polynomial())
                })
                .collect::<Result<Vec<_>, _>>()?,
        )
        .collect();
    let b = totals_with_unit(&rows);
    let ok = factorial_functional_residual(s.parity, &b)?.is_zero();
    Ok((ok, format!("order {}", s.parity)))
}

fn taylor_agreement(s: &Sizes) -> Check {
    for n in 1..=s.taylor {
        let a = taylor_coefficients(n, CLOSED_FORM_MAX_K, TaylorMethod::FaaDiBruno)?;
        let b = taylor_coefficients(n, CLOSED_FORM_MAX_K, TaylorMethod::SeriesLog)?;
        if a.iter()
            .zip(&b)
            .any(|(x, y)| x.rational_part != y.rational_part)
        {
            return Ok((false, format!("n = {n}")));
        }
    }
    Ok((true, format!("n <= {}, k <= {CLOSED_FORM_MAX_K}", s.taylor)))
}

fn root_residuals(ctx: &Context, s: &Sizes) -> Check {
    let mut worst: f64 = 0.0;
    for n in 3..=s.roots {
        let p = ctx
            .enumerator
            .histogram(n, PairingFamily::ParityReversing)?
            .to_polynomial();
        let r = least_magnitude_root(&p)?;
        worst = worst.max(r.residual);
    }
    Ok((
        worst < 1e-10,
        format!("max residual {worst:.3e} for n <= {}", s.roots),
    ))
}

fn domination(ctx: &Context, s: &Sizes) -> Check {
    for n in 1..=s.all {
        let r = ctx
            .enumerator
            .histogram(n, PairingFamily::ParityReversing)?;
        let t = touchard_riordan(n)?;
        for (k, c) in &r.counts {
            if c > &t.coefficient(*k as i64) {
                return Ok((false, format!("r({n}, {k}) > t({n}, {k})")));
            }
        }
    }
    Ok((true, format!("n <= {}", s.all)))
}

pub fn run(a: &SelftestArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let s = sizes(a.level);
    let checks: Vec<(&str, Check)> = vec![
        ("histogram_totals", totals(ctx, &s)),
        ("fast_search_matches_reference", fast_vs_reference(ctx, &s)),
        (
            "generating_polynomials_match_enumeration",
            crossing_polynomials(ctx, &s),
        ),
        (
            "closed_forms_match_enumeration_and_convolution",
            closed_forms(ctx, &s),
        ),
        (
            "connected_table_matches_enumeration",
            connected_table(ctx, &s),
        ),
        (
            "factorial_functional_equation",
            functional_equation(ctx, &s),
        ),
        ("taylor_methods_agree", taylor_agreement(&s)),
        ("root_residuals", root_residuals(ctx, &s)),
        ("termwise_domination", domination(ctx, &s)),
    ];
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for (name, check) in checks {
        let (ok, detail) = check?;
        if !ok {
            failed.push(name);
        }
        rows.push(json!({ "name": name, "ok": ok, "detail": detail }));
    }
    let failure = (!failed.is_empty())
        .then(|| CliError::Internal(format!("selftest failed: {}", failed.join(", "))));
    let level = match a.level {
        Level::Quick => "quick",
        Level::Full => "full",
    };
    Ok(Outcome {
        command: "selftest",
        rendered: Rendered::Json {
            params: params(&[("level", json!(level))]),
            results: json!({ "checks": Value::Array(rows), "passed": failed.is_empty() }),
        },
        failure,
    })
}
