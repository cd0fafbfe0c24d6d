//! Flat-spacetime linear algebra.
//!
//! Components are indexed with `0` as the temporal coordinate and the metric
//! is `diag(-1, +1, +1, +1)`. With this signature a unit four-velocity has
//! `u·u = -1` and the proper jolt `σ = j - (a·a) u` is orthogonal to `u`.

use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Minkowski metric `η_{μν}`.
pub const METRIC: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// A spacetime vector in transmitter coordinates `(x^μ)`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([0.0; 4]);

    /// Creates a four-vector, panicking on NaN or infinite components.
    pub fn new(c0: f64, c1: f64, c2: f64, c3: f64) -> Self {
        Self::try_new(c0, c1, c2, c3).expect("four-vector components must be finite")
    }

    pub fn try_new(c0: f64, c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let v = FourVector([c0, c1, c2, c3]);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("four-vector"))
        }
    }

    pub fn basis(index: usize) -> Self {
        let mut c = [0.0; 4];
        c[index] = 1.0;
        FourVector(c)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Minkowski inner product.
    pub fn dot(&self, other: &FourVector) -> f64 {
        minkowski_dot(self, other)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.dot(self)
    }

    /// `sqrt(|v·v|)`, the magnitude regardless of causal character.
    pub fn magnitude(&self) -> f64 {
        self.norm_sqr().abs().sqrt()
    }

    /// Covariant components `v_μ = η_{μν} v^ν`.
    pub fn lower(&self) -> FourVector {
        FourVector([-self.0[0], self.0[1], self.0[2], self.0[3]])
    }

    /// Plain component sum `Σ_μ k_μ v^μ`, no metric. Used when `self` already
    /// holds covariant components.
    pub fn contract(&self, other: &FourVector) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }
}

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, index: usize) -> &f64 {
        &self.0[index]
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector(self.0.map(|c| -c))
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, rhs: f64) -> FourVector {
        FourVector(self.0.map(|c| c * rhs))
    }
}

impl Mul<FourVector> for f64 {
    type Output = FourVector;
    fn mul(self, rhs: FourVector) -> FourVector {
        rhs * self
    }
}

/// `-a0 b0 + a1 b1 + a2 b2 + a3 b3`.
pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    -a.0[0] * b.0[0] + a.0[1] * b.0[1] + a.0[2] * b.0[2] + a.0[3] * b.0[3]
}

/// Relativistic Doppler factor `sqrt((1 - β) / (1 + β))` for a receiver
/// receding along the propagation direction with speed ratio `β`.
pub fn doppler_factor(beta: f64) -> Result<f64> {
    if !beta.is_finite() || beta.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "|beta| = {} must be below 1 (superluminal otherwise)",
            beta.abs()
        )));
    }
    Ok(((1.0 - beta) / (1.0 + beta)).sqrt())
}

/// Orthonormal frame; `e[0]` timelike, `e[1..4]` spacelike.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tetrad {
    pub e: [FourVector; 4],
}

impl Tetrad {
    /// Orthonormality tolerance for frames passed in by callers.
    pub const GRAM_TOLERANCE: f64 = 1e-9;

    pub fn new(e0: FourVector, e1: FourVector, e2: FourVector, e3: FourVector) -> Self {
        Tetrad { e: [e0, e1, e2, e3] }
    }

    /// The transmitter frame `(e_μ)`.
    pub fn identity() -> Self {
        Tetrad {
            e: std::array::from_fn(FourVector::basis),
        }
    }

    /// Frame of an observer moving with speed ratio `beta` along `+x`.
    pub fn boost_x(beta: f64) -> Result<Self> {
        doppler_factor(beta)?;
        let gamma = 1.0 / (1.0 - beta * beta).sqrt();
        Ok(Tetrad::new(
            FourVector::new(gamma, gamma * beta, 0.0, 0.0),
            FourVector::new(gamma * beta, gamma, 0.0, 0.0),
            FourVector::basis(2),
            FourVector::basis(3),
        ))
    }

    pub fn gram(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.e[i].dot(&self.e[j])))
    }

    /// Largest entry of `|G - η|`.
    pub fn gram_deviation(&self) -> f64 {
        let g = self.gram();
        let mut worst: f64 = 0.0;
        for (i, row) in g.iter().enumerate() {
            for (j, &gij) in row.iter().enumerate() {
                let target = if i == j { METRIC[i] } else { 0.0 };
                worst = worst.max((gij - target).abs());
            }
        }
        worst
    }

    pub fn check_orthonormal(&self, tolerance: f64) -> Result<()> {
        if !self.e.iter().all(FourVector::is_finite) {
            return Err(Error::NonFinite("tetrad"));
        }
        let dev = self.gram_deviation();
        if dev > tolerance {
            return Err(Error::Precondition(format!(
                "tetrad is not orthonormal: Gram deviation {dev:e} exceeds {tolerance:e}"
            )));
        }
        Ok(())
    }

    pub(crate) fn map(&self, f: impl Fn(&FourVector) -> FourVector) -> Tetrad {
        Tetrad {
            e: std::array::from_fn(|i| f(&self.e[i])),
        }
    }

    pub(crate) fn axpy(&self, scale: f64, other: &Tetrad) -> Tetrad {
        Tetrad {
            e: std::array::from_fn(|i| self.e[i] + other.e[i] * scale),
        }
    }
}

/// Continuous-wave plane wave emitted by the stationary transmitter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWave {
    pub f0: f64,
    pub khat: [f64; 3],
    pub e0: f64,
}

impl PlaneWave {
    pub fn new(f0: f64, khat: [f64; 3], e0: f64) -> Result<Self> {
        if !(f0.is_finite() && e0.is_finite() && khat.iter().all(|c| c.is_finite())) {
            return Err(Error::NonFinite("plane wave"));
        }
        if f0 <= 0.0 {
            return Err(Error::Domain(format!("carrier frequency must be positive, got {f0}")));
        }
        let norm = khat.iter().map(|c| c * c).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "propagation direction must be a unit vector, |khat| = {norm}"
            )));
        }
        Ok(PlaneWave { f0, khat, e0 })
    }

    /// Wave along `+x` with unit amplitude.
    pub fn along_x(f0: f64) -> Result<Self> {
        Self::new(f0, [1.0, 0.0, 0.0], 1.0)
    }

    /// Free-space wavenumber `2π f0 / c` in rad/m.
    pub fn k0(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.f0 / SPEED_OF_LIGHT
    }

    pub fn covector(&self) -> FourVector {
        wave_covector(self)
    }
}

/// `k_μ = (1, -k̂1, -k̂2, -k̂3)`; the received phase along a worldline is
/// `k0 · k_μ z^μ` taken as a plain component sum.
pub fn wave_covector(wave: &PlaneWave) -> FourVector {
    FourVector([1.0, -wave.khat[0], -wave.khat[1], -wave.khat[2]])
}
