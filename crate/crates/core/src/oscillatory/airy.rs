//! Airy function of the first kind for real arguments.
//!
//! * `|x| <= 5`: Maclaurin series.
//! * `x > 5`: exponentially decaying asymptotic expansion.
//! * `-12 <= x < -5`: Taylor continuation of the ODE `y'' = x y` from unit-spaced
//!   nodes seeded by the series at `x = -5`. The oscillatory asymptotic
//!   expansion only reaches 1e-10 absolute accuracy beyond `|x| ≈ 12`.
//! * `x < -12`: oscillatory asymptotic expansion.

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::OnceLock;

/// `Ai(0) = 3^(-2/3) / Γ(2/3)`.
pub const AI_ZERO: f64 = 0.355_028_053_887_817_2;
/// `-Ai'(0) = 3^(-1/3) / Γ(1/3)`.
const AIP_ZERO_NEG: f64 = 0.258_819_403_792_806_8;

pub const SERIES_LIMIT: f64 = 5.0;
const CONTINUATION_LIMIT: f64 = 12.0;

pub fn airy_ai(x: f64) -> f64 {
    airy_ai_with_derivative(x).0
}

pub fn airy_ai_prime(x: f64) -> f64 {
    airy_ai_with_derivative(x).1
}

/// `(Ai(x), Ai'(x))`.
pub fn airy_ai_with_derivative(x: f64) -> (f64, f64) {
    if x.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    if x.abs() <= SERIES_LIMIT {
        series(x)
    } else if x > 0.0 {
        if x == f64::INFINITY {
            (0.0, 0.0)
        } else {
            asymptotic_positive(x)
        }
    } else if x >= -CONTINUATION_LIMIT {
        continuation(x)
    } else if x == f64::NEG_INFINITY {
        (0.0, f64::NAN)
    } else {
        asymptotic_negative(-x)
    }
}

fn series(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    // f = Σ 3^k (1/3)_k x^{3k} / (3k)!,  g = Σ 3^k (2/3)_k x^{3k+1} / (3k+1)!
    let (mut f, mut tf) = (1.0, 1.0);
    let (mut g, mut tg) = (x, x);
    // f' = Σ_{k≥1} x^{3k-1} Π(3j-2) / (3k-1)!,  g' = Σ x^{3k} Π(3j-1) / (3k)!
    let (mut fp, mut tfp) = (0.5 * x * x, 0.5 * x * x);
    let (mut gp, mut tgp) = (1.0, 1.0);
    for k in 1..200 {
        let k3 = 3.0 * k as f64;
        tf *= x3 / (k3 * (k3 - 1.0));
        tg *= x3 / ((k3 + 1.0) * k3);
        tfp *= x3 / (k3 * (k3 + 2.0));
        tgp *= x3 / ((k3 - 2.0) * k3);
        f += tf;
        g += tg;
        fp += tfp;
        gp += tgp;
        let small = |t: f64, s: f64| t.abs() <= 1e-17 * s.abs().max(1e-300);
        if small(tf, f) && small(tg, g) && small(tfp, fp) && small(tgp, gp) {
            break;
        }
    }
    (AI_ZERO * f - AIP_ZERO_NEG * g, AI_ZERO * fp - AIP_ZERO_NEG * gp)
}

// u_k, v_k of the large-argument expansions
fn asymptotic_coefficients() -> &'static ([f64; 40], [f64; 40]) {
    static COEF: OnceLock<([f64; 40], [f64; 40])> = OnceLock::new();
    COEF.get_or_init(|| {
        let mut u = [0.0; 40];
        let mut v = [0.0; 40];
        u[0] = 1.0;
        v[0] = 1.0;
        for k in 1..40 {
            let kf = k as f64;
            u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
            v[k] = -u[k] * (6.0 * kf + 1.0) / (6.0 * kf - 1.0);
        }
        (u, v)
    })
}

/// `Σ (-1)^k c_k z^{-k}`, stopped at the smallest term.
fn alternating_sum(c: &[f64; 40], zeta: f64, stride: usize, offset: usize) -> f64 {
    let mut sum: f64 = 0.0;
    let mut prev = f64::INFINITY;
    let mut sign = 1.0;
    let mut k = offset;
    while k < c.len() {
        let term = c[k] / zeta.powi(k as i32);
        if term.abs() > prev || term.abs() < 1e-18 * sum.abs() {
            break;
        }
        sum += sign * term;
        prev = term.abs();
        sign = -sign;
        k += stride;
    }
    sum
}

fn asymptotic_positive(x: f64) -> (f64, f64) {
    let (u, v) = asymptotic_coefficients();
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.powf(0.25);
    let ai = e / q * alternating_sum(u, zeta, 1, 0);
    let aip = -e * q * alternating_sum(v, zeta, 1, 0);
    (ai, aip)
}

fn asymptotic_negative(x: f64) -> (f64, f64) {
    let (u, v) = asymptotic_coefficients();
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let (s, c) = (zeta + FRAC_PI_4).sin_cos();
    let q = x.powf(0.25);
    let norm = 1.0 / PI.sqrt();
    let ai = norm / q * (s * alternating_sum(u, zeta, 2, 0) - c * alternating_sum(u, zeta, 2, 1));
    let aip = norm * q * (-c * alternating_sum(v, zeta, 2, 0) - s * alternating_sum(v, zeta, 2, 1));
    (ai, aip)
}

/// Taylor step of `y'' = x y` from `(y, y')` at `center` to `center + t`.
fn taylor_step(center: f64, y: f64, yp: f64, t: f64) -> (f64, f64) {
    let mut c_prev = 0.0; // c_{m-1}
    let mut c_m = y;
    let mut c_next = yp;
    let mut value = y;
    let mut deriv = 0.0;
    let mut tp = 1.0; // t^m
    for m in 0..120 {
        // value += c_{m+1} t^{m+1}, deriv += (m+1) c_{m+1} t^m
        deriv += (m + 1) as f64 * c_next * tp;
        tp *= t;
        value += c_next * tp;
        let c_new = (center * c_m + c_prev) / (((m + 2) * (m + 1)) as f64);
        c_prev = c_m;
        c_m = c_next;
        c_next = c_new;
        if m > 8 && (c_next * tp * t).abs() < 1e-18 && (c_m * tp).abs() < 1e-18 {
            break;
        }
    }
    (value, deriv)
}

fn continuation_nodes() -> &'static Vec<(f64, f64, f64)> {
    static NODES: OnceLock<Vec<(f64, f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| {
        let mut nodes = Vec::new();
        let (mut y, mut yp) = series(-SERIES_LIMIT);
        let mut x = -SERIES_LIMIT;
        nodes.push((x, y, yp));
        while x > -CONTINUATION_LIMIT {
            let (ny, nyp) = taylor_step(x, y, yp, -1.0);
            x -= 1.0;
            y = ny;
            yp = nyp;
            nodes.push((x, y, yp));
        }
        nodes
    })
}

fn continuation(x: f64) -> (f64, f64) {
    let nodes = continuation_nodes();
    let idx = ((-SERIES_LIMIT - x).round() as usize).min(nodes.len() - 1);
    let (c, y, yp) = nodes[idx];
    taylor_step(c, y, yp, x - c)
}
