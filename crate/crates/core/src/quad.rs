//! Real-valued quadrature: adaptive Gauss-Kronrod, Gauss-Legendre panels and
//! cumulative integrals over sorted grids.

use std::sync::OnceLock;

use crate::error::{Error, Result};

// Kronrod 15-point abscissae / weights and the embedded 7-point Gauss weights
// (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_SUBDIVISIONS: usize = 2000;

/// Single G7-K15 step: returns `(integral, error estimate)`.
pub fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs();
    (value, err)
}

/// Globally adaptive G7-K15 integration to `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (v, e) = gauss_kronrod_15(&f, a, b);
    let mut pieces = vec![(a, b, v, e)];
    loop {
        let total: f64 = neumaier_sum(pieces.iter().map(|p| p.2));
        let err: f64 = pieces.iter().map(|p| p.3).sum();
        let target = abs_tol.max(rel_tol * total.abs());
        if err <= target {
            return Ok(total);
        }
        if pieces.len() >= MAX_SUBDIVISIONS {
            return Err(Error::Quadrature {
                lower: a,
                upper: b,
                estimate: err,
                requested: target,
                intervals: pieces.len(),
            });
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (lo, hi, _, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gauss_kronrod_15(&f, lo, mid);
        let (v2, e2) = gauss_kronrod_15(&f, mid, hi);
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
}

/// `∫_{origin}^{x} f` at every point of an ascending grid, reusing the running
/// total between consecutive points.
pub fn cumulative<F: Fn(f64) -> f64>(f: F, origin: f64, grid: &[f64], abs_tol: f64, rel_tol: f64) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(grid.len());
    let Some(&first) = grid.first() else {
        return Ok(out);
    };
    let mut acc = NeumaierAccumulator::default();
    acc.add(integrate(&f, origin, first, abs_tol, rel_tol)?);
    out.push(acc.value());
    for w in grid.windows(2) {
        if w[1] < w[0] {
            return Err(Error::Precondition("cumulative grid must be ascending".into()));
        }
        acc.add(integrate(&f, w[0], w[1], abs_tol, rel_tol)?);
        out.push(acc.value());
    }
    Ok(out)
}

#[derive(Default, Clone, Copy, Debug)]
pub struct NeumaierAccumulator {
    sum: f64,
    compensation: f64,
}

impl NeumaierAccumulator {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = NeumaierAccumulator::default();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Order of the Gauss-Legendre panels used by the oscillatory engines.
pub const PANEL_ORDER: usize = 16;

pub(crate) fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_ORDER))
}

/// Composite Gauss-Legendre nodes and weights over `[a, b]` split into
/// `panels` equal panels.
pub fn composite_gauss_legendre(a: f64, b: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = panel_rule();
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * gx.len());
    let mut weights = Vec::with_capacity(panels * gx.len());
    for p in 0..panels {
        let lo = a + h * p as f64;
        for (x, w) in gx.iter().zip(gw) {
            nodes.push(lo + 0.5 * h * (x + 1.0));
            weights.push(0.5 * h * w);
        }
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(16);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // degree 30 is within 2n - 1
        let i: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(30)).sum();
        assert!((i - 2.0 / 31.0).abs() < 1e-14);
        for pair in x.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        let v = integrate(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-12, 1e-13).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((v - exact).abs() / exact < 1e-12);
    }

    #[test]
    fn non_convergence_is_reported() {
        let err = integrate(|x: f64| (1.0 / x).sin() / x, 1e-12, 1.0, 1e-15, 0.0).unwrap_err();
        assert!(matches!(err, Error::Quadrature { .. }));
    }

    #[test]
    fn cumulative_matches_closed_form() {
        let grid: Vec<f64> = (0..50).map(|i| -1.0 + 0.1 * i as f64).collect();
        let c = cumulative(f64::exp, 0.0, &grid, 1e-14, 1e-14).unwrap();
        for (x, v) in grid.iter().zip(c) {
            assert!((v - x.exp_m1()).abs() < 1e-13);
        }
    }

    #[test]
    fn composite_rule_covers_interval() {
        let (x, w) = composite_gauss_legendre(-2.0, 3.0, 7);
        assert_eq!(x.len(), 7 * PANEL_ORDER);
        assert!((w.iter().sum::<f64>() - 5.0).abs() < 1e-13);
        let i: f64 = x.iter().zip(&w).map(|(x, w)| w * (5.0 * x).cos()).sum();
        let exact = ((15.0f64).sin() - (-10.0f64).sin()) / 5.0;
        assert!((i - exact).abs() < 1e-13);
    }
}
