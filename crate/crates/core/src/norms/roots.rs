use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{HighComplex, HighFloat, QPolynomial};

/// Relative residual at which the simultaneous iteration stops.
pub const ROOT_TOLERANCE: f64 = 1e-12;
pub const ROOT_ITERATION_CAP: usize = 2000;

/// Angle offset of the starting circle, in turns.
const START_ROTATION: f64 = 0.618_033_988_749_894_8;
const POLISH_PRECISION: usize = 192;

/// All complex roots of a polynomial with the one of least modulus singled out.
#[derive(Clone, Debug)]
pub struct RootReport {
    pub degree: usize,
    /// Roots with multiplicity, ordered by modulus then phase in `[0, 2pi)`.
    pub roots: Vec<Complex64>,
    pub least: Complex64,
    /// Largest `|P(z)| / sum_j |c_j| |z|^j` over the roots.
    pub residual: f64,
    pub iterations: usize,
}

impl RootReport {
    /// Roots with nonnegative imaginary part, in report order.
    pub fn upper_half(&self) -> impl Iterator<Item = &Complex64> {
        self.roots.iter().filter(|z| z.im >= 0.0)
    }
}

fn phase_turn(z: &Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Value, derivative and the absolute-value scale `sum |c_j| |z|^j`.
fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::zero();
    let mut d = Complex64::zero();
    let mut s = 0.0;
    let r = z.norm();
    for &a in c.iter().rev() {
        d = d * z + p;
        p = p * z + a;
        s = s * r + a.abs();
    }
    (p, d, s)
}

fn relative_residual_high(c: &[BigInt], z: Complex64) -> f64 {
    let hz = HighComplex::from_f64(z.re, z.im, POLISH_PRECISION);
    let mut p = HighComplex::zero(POLISH_PRECISION);
    for a in c.iter().rev() {
        p = p
            .mul(&hz)
            .add(&HighComplex::from_bigint(a, POLISH_PRECISION));
    }
    let r = z.norm();
    let scale = c.iter().rev().fold(0.0, |s, a| {
        s * r + a.to_f64().unwrap_or(f64::INFINITY).abs()
    });
    p.abs().to_f64() / scale
}

/// Newton steps in extended precision, rounded back to `f64`.
fn polish(c: &[BigInt], z: Complex64) -> Complex64 {
    let mut hz = HighComplex::from_f64(z.re, z.im, POLISH_PRECISION);
    for _ in 0..3 {
        let mut p = HighComplex::zero(POLISH_PRECISION);
        let mut d = HighComplex::zero(POLISH_PRECISION);
        for a in c.iter().rev() {
            d = d.mul(&hz).add(&p);
            p = p
                .mul(&hz)
                .add(&HighComplex::from_bigint(a, POLISH_PRECISION));
        }
        if d.is_zero() || p.is_zero() {
            break;
        }
        hz = hz.sub(&p.div(&d));
    }
    let (re, im) = hz.to_f64_pair();
    let out = Complex64::new(re, im);
    if out.is_finite() && relative_residual_high(c, out) <= relative_residual_high(c, z) {
        out
    } else {
        z
    }
}

/// Averages each root in the upper half plane with its nearest partner in
/// the lower half; near-real roots become real.
fn symmetrize(roots: &mut [Complex64]) {
    for z in roots.iter_mut() {
        if z.im.abs() <= 1e-14 * z.norm().max(1.0) {
            z.im = 0.0;
        }
    }
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] || roots[i].im <= 0.0 {
            continue;
        }
        let target = roots[i].conj();
        let partner = (0..roots.len())
            .filter(|&j| !used[j] && j != i && roots[j].im < 0.0)
            .min_by(|&a, &b| {
                (roots[a] - target)
                    .norm()
                    .total_cmp(&(roots[b] - target).norm())
            });
        if let Some(j) = partner {
            let re = 0.5 * (roots[i].re + roots[j].re);
            let im = 0.5 * (roots[i].im - roots[j].im);
            roots[i] = Complex64::new(re, im);
            roots[j] = Complex64::new(re, -im);
            used[i] = true;
            used[j] = true;
        }
    }
}

/// Positive root of `|c_d| x^d - sum_{j<d} |c_j| x^j`, the tight Cauchy
/// bound on root moduli. Found by bisection on `ln x`.
fn cauchy_radius(c: &[f64]) -> f64 {
    let d = c.len() - 1;
    let lead = c[d].abs();
    let excess = |t: f64| -> f64 {
        c[..d]
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != 0.0)
            .map(|(j, a)| (a.abs() / lead).ln() + (j as f64 - d as f64) * t)
            .map(f64::exp)
            .sum::<f64>()
            - 1.0
    };
    let loose = 1.0 + c[..d].iter().map(|a| (a / lead).abs()).fold(0.0, f64::max);
    let (mut lo, mut hi) = (-700.0f64, loose.ln());
    if excess(hi) > 0.0 {
        return loose;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi.exp()
}

/// Every root of `p` by Aberth iteration, and the root of least modulus.
///
/// Starting points sit on a circle of radius `max(1, Cauchy bound)` with a
/// fixed irrational rotation, so runs are reproducible. Roots at the origin
/// (from a positive valuation) are split off exactly.
pub fn least_magnitude_root(p: &QPolynomial) -> Result<RootReport> {
    let dense = p.to_dense()?;
    let degree = match p.degree() {
        Some(d) if d >= 1 => d as usize,
        _ => return Err(Error::NoRoots),
    };
    let valuation = dense.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let exact: Vec<BigInt> = dense[valuation..=degree].to_vec();
    let c: Vec<f64> = exact
        .iter()
        .map(|a| a.to_f64().filter(|x| x.is_finite()))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidArgument("coefficients exceed the f64 range".into()))?;
    let d = c.len() - 1;

    let mut roots = vec![Complex64::zero(); valuation];
    let mut iterations = 0;
    if d > 0 {
        let radius = cauchy_radius(&c).max(1.0);
        let mut z: Vec<Complex64> = (0..d)
            .map(|j| {
                let t = 2.0 * PI * (j as f64 + START_ROTATION) / d as f64;
                Complex64::from_polar(radius, t)
            })
            .collect();
        let mut worst = f64::INFINITY;
        while iterations < ROOT_ITERATION_CAP {
            iterations += 1;
            worst = 0.0;
            for i in 0..d {
                let (v, dv, s) = horner(&c, z[i]);
                let rel = if s > 0.0 { v.norm() / s } else { 0.0 };
                worst = f64::max(worst, rel);
                if v.is_zero() {
                    continue;
                }
                let ratio = v / dv;
                let repulsion: Complex64 = (0..d)
                    .filter(|&j| j != i)
                    .map(|j| (z[i] - z[j]).inv())
                    .sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                if step.is_finite() {
                    z[i] -= step;
                } else {
                    // Coincident iterates: move off the collision.
                    z[i] *= Complex64::from_polar(1.0 + 1e-7, 1e-3 * START_ROTATION);
                }
            }
            if worst < ROOT_TOLERANCE {
                break;
            }
        }
        if worst >= ROOT_TOLERANCE {
            return Err(Error::NoConvergence {
                iterations,
                residual: worst,
            });
        }
        roots.extend(z.into_iter().map(|w| polish(&exact, w)));
    }
    symmetrize(&mut roots);
    roots.sort_by(|a, b| {
        a.norm()
            .total_cmp(&b.norm())
            .then(phase_turn(a).total_cmp(&phase_turn(b)))
    });
    let residual = roots[valuation..]
        .iter()
        .map(|z| relative_residual_high(&exact, *z))
        .fold(0.0, f64::max);
    let smallest = roots[0].norm();
    let least = *roots
        .iter()
        .filter(|z| z.norm() <= smallest * (1.0 + 1e-12))
        .min_by(|a, b| phase_turn(a).total_cmp(&phase_turn(b)))
        .expect("at least one root");
    Ok(RootReport {
        degree,
        roots,
        least,
        residual,
        iterations,
    })
}

/// `|least root|` rendered in extended precision from the `f64` root.
pub fn least_modulus(report: &RootReport, precision: usize) -> HighFloat {
    HighComplex::from_f64(report.least.re, report.least.im, precision).abs()
}
