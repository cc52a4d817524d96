//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Roots for n = 11 and 12 are included with `--extended` (after `--` on the
//! cargo command line) or when `QNORM_EXTENDED` is set.

use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use qnorm_cli::{Cli, Rendered};
use qnorm_core::diagrams::{CrossingHistogram, Enumerator, PairingFamily};
use qnorm_core::exact::{
    catalan, double_factorial_odd, factorial, BigInt, HighComplex, QPolynomial, DEFAULT_PRECISION,
};
use qnorm_core::formulas::{
    closed_form_r, corteel_partition_function, crossing_functional_residual,
    factorial_functional_residual, r_via_decomposition, totals_with_unit, touchard_riordan, BTable,
    Multiplicity, CLOSED_FORM_MAX_K,
};
use qnorm_core::norms::{
    a11_value, a3_limit_probe, alternating_sum_bounds_check, gamma_n, lambda_n,
    least_magnitude_root, semicircular_limit_probe, semicircular_limit_probe_with,
    taylor_coefficients, Branch, CountSource, TaylorMethod,
};
use qnorm_validation::{fmt_seq, strictly_decreasing, strictly_increasing, Scorecard, Verdict};

const LIMIT_GRID: [usize; 3] = [10, 100, 1000];
const A11_GRID: [usize; 5] = [50, 100, 200, 400, 800];

fn enumerator() -> Enumerator {
    Enumerator::default()
}

fn hist(n: usize, f: PairingFamily) -> CrossingHistogram {
    enumerator()
        .histogram(n, f)
        .expect("enumeration within ceiling")
}

fn point(re: f64, im: f64) -> HighComplex {
    HighComplex::from_f64(re, im, DEFAULT_PRECISION)
}

fn coefficient_sum(p: &QPolynomial) -> BigInt {
    p.to_dense().expect("polynomial").into_iter().sum()
}

fn cli_json(args: &[&str]) -> Value {
    let cli = Cli::try_parse_from(std::iter::once("qnorm").chain(args.iter().copied()))
        .expect("arguments parse");
    match qnorm_cli::run(&cli).expect("command runs").rendered {
        Rendered::Json { results, .. } => results,
        Rendered::Csv(_) => panic!("expected JSON output"),
    }
}

fn connected_table_regenerates() -> Verdict {
    let r = cli_json(&["btable", "--regenerate", "--max-k", "11"]);
    let diffs = r["differences_from_printed"]
        .as_array()
        .expect("difference list");
    if r["matches_printed"] == Value::Bool(true) {
        return Verdict::pass("regenerated table equals the printed one for n <= 11, k <= 11");
    }
    let listed: Vec<String> = diffs
        .iter()
        .map(|d| {
            format!(
                "b({},{}) printed {} enumerated {}",
                d["n"],
                d["k"],
                str_of(&d["printed"]),
                str_of(&d["value"])
            )
        })
        .collect();
    Verdict::fail(format!(
        "{} entries differ: {}",
        listed.len(),
        listed.join(", ")
    ))
}

fn str_of(v: &Value) -> &str {
    v.as_str().unwrap_or("?")
}

fn cardinalities() -> Verdict {
    let mut parts = Vec::new();
    let parity_ok =
        (1..=11).all(|n| hist(n, PairingFamily::ParityReversing).total() == factorial(n as u64));
    parts.push(Verdict::check(parity_ok, "parity totals n! for n <= 11"));
    let all_ok =
        (1..=8).all(|n| hist(n, PairingFamily::All).total() == double_factorial_odd(n as u64));
    parts.push(Verdict::check(all_ok, "pairing totals (2n-1)!! for n <= 8"));
    let bad: Vec<usize> = (1..=200)
        .filter(|&n| {
            touchard_riordan(n).map(|t| coefficient_sum(&t)).ok()
                != Some(double_factorial_odd(n as u64))
        })
        .collect();
    parts.push(Verdict::check(
        bad.is_empty(),
        format!("T_n(1) = (2n-1)!! for n <= 200, failures {bad:?}"),
    ));
    Verdict::all(parts)
}

fn all_pairings_polynomial() -> Verdict {
    let mismatch: Vec<usize> = (1..=8)
        .filter(|&n| touchard_riordan(n).ok() != Some(hist(n, PairingFamily::All).to_polynomial()))
        .collect();
    let division: Vec<usize> = (1..=500)
        .filter(|&n| touchard_riordan(n).is_err())
        .collect();
    Verdict::all(vec![
        Verdict::check(
            mismatch.is_empty(),
            format!("equals enumeration for n <= 8, mismatches {mismatch:?}"),
        ),
        Verdict::check(
            division.is_empty(),
            format!("exact division clean for n <= 500, failures {division:?}"),
        ),
    ])
}

fn directed_polynomial() -> Verdict {
    let e = enumerator();
    let mismatch: Vec<usize> = (1..=8)
        .filter(|&n| corteel_partition_function(n).ok() != e.directed_crossing_polynomial(n).ok())
        .collect();
    let laurent: Vec<usize> = (1..=100)
        .filter(|&n| corteel_partition_function(n).is_err())
        .collect();
    Verdict::all(vec![
        Verdict::check(
            mismatch.is_empty(),
            format!("equals enumeration for n <= 8, mismatches {mismatch:?}"),
        ),
        Verdict::check(
            laurent.is_empty(),
            format!("negative powers cancel for n <= 100, failures {laurent:?}"),
        ),
    ])
}

fn closed_forms() -> Verdict {
    let mut bad_enum = Vec::new();
    for n in 1..=10 {
        let h = hist(n, PairingFamily::ParityReversing);
        for k in 0..=CLOSED_FORM_MAX_K {
            if closed_form_r(n, k).ok() != Some(h.get(k)) {
                bad_enum.push((n, k));
            }
        }
    }
    let table = BTable::corrected();
    let mut bad_conv = Vec::new();
    let mut bad_low = Vec::new();
    for n in 1..=300 {
        for k in 0..=CLOSED_FORM_MAX_K {
            let via = r_via_decomposition(n, k, &table, Multiplicity::ComponentType).ok();
            if closed_form_r(n, k).ok() != via {
                bad_conv.push((n, k));
            }
        }
        let zero = BigInt::from(0);
        if closed_form_r(n, 0).ok() != Some(catalan(n as u64))
            || closed_form_r(n, 1).ok() != Some(zero.clone())
            || closed_form_r(n, 2).ok() != Some(zero)
        {
            bad_low.push(n);
        }
    }
    let row: Vec<BigInt> = hist(5, PairingFamily::ParityReversing)
        .counts
        .into_values()
        .collect();
    let expected: Vec<BigInt> = [42, 45, 20, 2, 5, 5, 1]
        .into_iter()
        .map(BigInt::from)
        .collect();
    let row_ok = row == expected && row.iter().sum::<BigInt>() == factorial(5);
    Verdict::all(vec![
        Verdict::check(
            bad_enum.is_empty(),
            format!("equal enumeration for n <= 10, k <= 11, mismatches {bad_enum:?}"),
        ),
        Verdict::check(
            bad_conv.is_empty(),
            format!("equal the component convolution for n <= 300, mismatches {bad_conv:?}"),
        ),
        Verdict::check(
            bad_low.is_empty(),
            format!("r(n,0) = C_n and r(n,1) = r(n,2) = 0 for n <= 300, failures {bad_low:?}"),
        ),
        Verdict::check(row_ok, "n = 5 row 42+45+20+2+5+5+1 = 120"),
    ])
}

fn extremal_counts() -> Verdict {
    let mut bad = Vec::new();
    for n in 3..=10 {
        let h = hist(n, PairingFamily::ParityReversing);
        let (k, count) = if n % 2 == 1 {
            (n * (n - 1) / 2, 1)
        } else {
            (n * (n - 2) / 2, 2)
        };
        if h.max_key() != Some(k) || h.get(k) != BigInt::from(count) {
            bad.push(format!("max at n = {n}"));
        }
    }
    for n in 1..=10 {
        let c = hist(n, PairingFamily::ConnectedParityReversing);
        let min = c.counts.keys().next().copied();
        let expected = match n {
            1 => Some((0, 1)),
            2 => None,
            3 => Some((3, 1)),
            _ => Some((n, 2)),
        };
        let got = min.map(|k| (k, c.get(k)));
        if got != expected.map(|(k, v)| (k, BigInt::from(v))) {
            bad.push(format!("connected minimum at n = {n}"));
        }
    }
    Verdict::check(
        bad.is_empty(),
        format!("maxima for n = 3..10 and connected minima for n <= 10, failures {bad:?}"),
    )
}

fn functional_equations() -> Verdict {
    let e = enumerator();
    let connected: Vec<QPolynomial> = std::iter::once(QPolynomial::constant(1))
        .chain((1..=10).map(|n| {
            e.histogram(n, PairingFamily::ConnectedParityReversing)
                .unwrap()
                .to_polynomial()
        }))
        .collect();
    let b = totals_with_unit(&connected);
    let totals_ok = factorial_functional_residual(10, &b)
        .map(|r| r.is_zero())
        .unwrap_or(false);
    let r_rows: Vec<QPolynomial> = std::iter::once(QPolynomial::constant(1))
        .chain((1..=10).map(|n| {
            e.histogram(n, PairingFamily::ParityReversing)
                .unwrap()
                .to_polynomial()
        }))
        .collect();
    let crossing_ok = crossing_functional_residual(10, &connected, &r_rows)
        .map(|r| r.is_zero())
        .unwrap_or(false);
    let low: Vec<BigInt> = [1, 0, 1, 2, 13].into_iter().map(BigInt::from).collect();
    let low_ok = b[1..=5] == low[..];
    let printed = BTable::printed();
    let columns_ok = (1..=5).all(|n| printed.column_sum(n) == b[n]);
    Verdict::all(vec![
        Verdict::check(totals_ok, "totals equation through order 10"),
        Verdict::check(crossing_ok, "crossing equation through order 10"),
        Verdict::check(low_ok, format!("b_1..b_5 = {:?}", &b[1..=5])),
        Verdict::check(columns_ok, "complete printed columns n <= 5 sum to b_n"),
    ])
}

fn limit_errors(q: &HighComplex, branch: Branch) -> Vec<f64> {
    semicircular_limit_probe_with(q, &LIMIT_GRID, branch)
        .expect("probe")
        .into_iter()
        .map(|(_, e)| e.to_f64())
        .collect()
}

fn semicircular_limit(card: &Scorecard) -> Verdict {
    let mut parts = Vec::new();
    for (label, re, im) in [
        ("0", 0.0, 0.0),
        ("1/2", 0.5, 0.0),
        ("-1/2", -0.5, 0.0),
        ("0.5i", 0.0, 0.5),
    ] {
        let errs: Vec<f64> = semicircular_limit_probe(&point(re, im), &LIMIT_GRID)
            .expect("probe")
            .into_iter()
            .map(|(_, e)| e.to_f64())
            .collect();
        let finite = errs.iter().all(|e| e.is_finite());
        parts.push(Verdict::check(
            finite && strictly_decreasing(&errs),
            format!(
                "q = {label}: errors {} over n = 10, 100, 1000",
                fmt_seq(&errs)
            ),
        ));
        if label == "0" {
            parts.push(Verdict::check(
                errs[2] < 0.02,
                format!("|gamma_1000(0) - 2| = {:.6} < 0.02", errs[2]),
            ));
        }
    }
    card.info(format!(
        "continuous-branch errors at q = 0.5i: {}",
        fmt_seq(&limit_errors(&point(0.0, 0.5), Branch::Factored))
    ));
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in [5, 10, 20, 50, 100] {
        for r in [0.0, 0.3, 0.6, 0.9] {
            for (dir, re, im) in [("+", r, 0.0), ("i", 0.0, r), ("-", -r, 0.0)] {
                if r == 0.0 && dir != "+" {
                    continue;
                }
                checked += 1;
                let c = alternating_sum_bounds_check(n, &point(re, im)).expect("bounds");
                if !c.ok {
                    failures.push(format!(
                        "(n={n}, q={}{r}: lower {:.6e} mid {:.6e} upper {:.6e})",
                        if dir == "i" {
                            "i*"
                        } else if dir == "-" {
                            "-"
                        } else {
                            ""
                        },
                        c.lower.to_f64(),
                        c.mid.to_f64(),
                        c.upper.to_f64()
                    ));
                }
            }
        }
    }
    parts.push(Verdict::check(
        failures.is_empty(),
        format!(
            "alternating-sum bounds on {checked} grid points, {} failures {}",
            failures.len(),
            failures.join(" ")
        ),
    ));
    Verdict::all(parts)
}

fn taylor(card: &Scorecard) -> Verdict {
    let mut disagree = Vec::new();
    let mut nonzero_low = Vec::new();
    for n in 1..=50 {
        let a = taylor_coefficients(n, CLOSED_FORM_MAX_K, TaylorMethod::FaaDiBruno).expect("faa");
        let b = taylor_coefficients(n, CLOSED_FORM_MAX_K, TaylorMethod::SeriesLog).expect("series");
        if a.iter()
            .zip(&b)
            .any(|(x, y)| x.rational_part != y.rational_part)
        {
            disagree.push(n);
        }
        let zero = [1, 2]
            .iter()
            .all(|&k| a[k].rational_part == BigInt::from(0).into());
        if !zero {
            nonzero_low.push(n);
        }
    }
    let a3 = a3_limit_probe(2000).expect("a3").to_f64();
    let a11 = |n: usize, s: CountSource| a11_value(n, s).expect("a11").to_f64();
    let ratio = a11(1000, CountSource::Enumerated) / (-5.0 * 1000.0);
    let mags: Vec<f64> = A11_GRID
        .iter()
        .map(|&n| a11(n, CountSource::Enumerated).abs())
        .collect();
    let printed: Vec<f64> = A11_GRID
        .iter()
        .chain(&[1000])
        .map(|&n| a11(n, CountSource::Printed) / (-5.0 * n as f64))
        .collect();
    card.info(format!(
        "a11/(-5n) with the printed connected counts, n = 50..800, 1000: {}",
        fmt_seq(&printed)
    ));
    Verdict::all(vec![
        Verdict::check(
            disagree.is_empty(),
            format!("methods agree exactly for n <= 50, k <= 11, mismatches {disagree:?}"),
        ),
        Verdict::check(
            nonzero_low.is_empty(),
            format!("a1 = a2 = 0 for n <= 50, failures {nonzero_low:?}"),
        ),
        Verdict::check(
            (a3 - 1.0).abs() <= 0.02,
            format!("a3 at n = 2000 is {a3:.6}"),
        ),
        Verdict::check(
            (0.85..=1.15).contains(&ratio),
            format!("a11/(-5n) at n = 1000 is {ratio:.6}, want [0.85, 1.15]"),
        ),
        Verdict::check(
            strictly_increasing(&mags),
            format!("|a11| over n = 50, 100, 200, 400, 800: {}", fmt_seq(&mags)),
        ),
    ])
}

fn roots(extended: bool) -> Verdict {
    let top = if extended { 12 } else { 10 };
    let mut mags = Vec::new();
    let mut worst: f64 = 0.0;
    let mut cube = f64::NAN;
    for n in 3..=top {
        let p = hist(n, PairingFamily::ParityReversing).to_polynomial();
        let rep = least_magnitude_root(&p).expect("roots");
        worst = worst.max(rep.residual);
        mags.push(rep.least.norm());
        if n == 3 {
            cube = (rep.least.norm() - 5f64.cbrt()).abs();
        }
    }
    let scope = if extended {
        "n = 3..12"
    } else {
        "n = 3..10 (n = 11, 12 need --extended)"
    };
    Verdict::all(vec![
        Verdict::check(
            cube < 1e-9,
            format!("|least root of R_3| - 5^(1/3) = {cube:.2e}"),
        ),
        Verdict::check(
            strictly_decreasing(&mags),
            format!(
                "least moduli strictly decreasing for {scope}: {}",
                fmt_seq(&mags)
            ),
        ),
        Verdict::check(worst < 1e-10, format!("max residual {worst:.2e}")),
    ])
}

fn domination() -> Verdict {
    let mut bad = Vec::new();
    for n in 1..=8 {
        let r = hist(n, PairingFamily::ParityReversing);
        let t = touchard_riordan(n).expect("polynomial");
        if r.counts.iter().any(|(&k, c)| c > &t.coefficient(k as i64)) {
            bad.push(format!("coefficients at n = {n}"));
        }
        for q in [0.1, 0.5, 0.9] {
            let l = lambda_n(n, &point(q, 0.0)).expect("lambda").value;
            let g = gamma_n(n, &point(q, 0.0)).expect("gamma").value;
            if !(l.im.is_zero() && g.im.is_zero() && l.re <= g.re) {
                bad.push(format!("values at n = {n}, q = {q}"));
            }
        }
    }
    Verdict::check(
        bad.is_empty(),
        format!("termwise and at q = 0.1, 0.5, 0.9 for n <= 8, failures {bad:?}"),
    )
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let extended =
        args.iter().any(|a| a == "--extended") || std::env::var_os("QNORM_EXTENDED").is_some();
    let mut card = Scorecard::new();
    card.run(1, connected_table_regenerates);
    card.run(2, cardinalities);
    card.run(3, all_pairings_polynomial);
    card.run(4, directed_polynomial);
    card.run(5, closed_forms);
    card.run(6, extremal_counts);
    card.run(7, functional_equations);
    let info = Scorecard::new();
    card.run(8, || semicircular_limit(&info));
    card.run(9, || taylor(&info));
    card.run(10, || roots(extended));
    card.run(11, domination);
    println!("{}", card.summary());
    if card.failed().is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
