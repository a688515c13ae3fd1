//! Scalar arithmetic at a root of unity (or at a generic point of the unit
//! circle): complex powers `q^x`, q-numbers `[x]`, principal half powers and
//! ratios of q-Gamma functions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DEFAULT_ZERO_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_RELATION_TOLERANCE: f64 = 1e-9;
/// Generic mode requires `q^k != 1` for every `1 <= k <= GENERIC_ORDER_BOUND`.
pub const GENERIC_ORDER_BOUND: u32 = 1000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QMode {
    /// `q = exp(2 pi i k / m)` with `m` odd and `gcd(k, m) = 1`.
    RootOfUnity { m: u32, k: u32 },
    /// `q = exp(i phase)`, not a root of unity of small order.
    Generic { phase: f64 },
}

#[derive(Clone, Debug)]
pub struct QContext {
    mode: QMode,
    q: Complex64,
    log_q: Complex64,
    lambda: Complex64,
    pub zero_tolerance: f64,
    pub relation_tolerance: f64,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl QContext {
    /// `q = exp(2 pi i / m)`.
    pub fn root_of_unity(m: u32) -> Result<Self> {
        Self::root_of_unity_with(m, 1)
    }

    pub fn root_of_unity_with(m: u32, k: u32) -> Result<Self> {
        if m < 3 || m.is_multiple_of(2) {
            return Err(Error::InvalidContext(format!(
                "order m must be odd and at least 3, got {m}"
            )));
        }
        if k == 0 || k >= m || gcd(k, m) != 1 {
            return Err(Error::InvalidContext(format!(
                "root index k = {k} is not coprime to m = {m} in 1..m"
            )));
        }
        // principal logarithm: angle in (-pi, pi]
        let mut angle = 2.0 * PI * f64::from(k) / f64::from(m);
        if angle > PI {
            angle -= 2.0 * PI;
        }
        Ok(Self::from_angle(QMode::RootOfUnity { m, k }, angle))
    }

    pub fn generic(phase: f64) -> Result<Self> {
        if !phase.is_finite() {
            return Err(Error::InvalidContext("phase must be finite".into()));
        }
        let angle = (phase + PI).rem_euclid(2.0 * PI) - PI;
        let ctx = Self::from_angle(QMode::Generic { phase }, angle);
        for order in 1..=GENERIC_ORDER_BOUND {
            let qk = ctx.qpow(Complex64::new(f64::from(order), 0.0));
            if (qk - 1.0).norm() < 1e-9 {
                return Err(Error::InvalidContext(format!(
                    "phase {phase} gives q^{order} = 1; use root-of-unity mode"
                )));
            }
        }
        Ok(ctx)
    }

    fn from_angle(mode: QMode, angle: f64) -> Self {
        let log_q = Complex64::new(0.0, angle);
        let q = log_q.exp();
        let lambda = q - q.inv();
        Self {
            mode,
            q,
            log_q,
            lambda,
            zero_tolerance: DEFAULT_ZERO_TOLERANCE,
            relation_tolerance: DEFAULT_RELATION_TOLERANCE,
        }
    }

    pub fn with_tolerances(mut self, zero: f64, relation: f64) -> Self {
        self.zero_tolerance = zero;
        self.relation_tolerance = relation;
        self
    }

    pub fn mode(&self) -> QMode {
        self.mode
    }

    /// The order `m` in root-of-unity mode.
    pub fn order(&self) -> Option<u32> {
        match self.mode {
            QMode::RootOfUnity { m, .. } => Some(m),
            QMode::Generic { .. } => None,
        }
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.order().is_some()
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    /// `lambda = q - q^{-1}`.
    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    /// `q^x = exp(x log q)` with the principal logarithm of `q`.
    pub fn qpow(&self, x: Complex64) -> Complex64 {
        (x * self.log_q).exp()
    }

    /// `q^n` for an integer exponent.
    pub fn qpow_int(&self, n: i64) -> Complex64 {
        let n = match self.mode {
            QMode::RootOfUnity { m, .. } => n.rem_euclid(i64::from(m)),
            QMode::Generic { .. } => n,
        };
        self.qpow(Complex64::new(n as f64, 0.0))
    }

    /// The q-number `[x] = (q^x - q^{-x}) / (q - q^{-1})`.
    pub fn qnum(&self, x: Complex64) -> Complex64 {
        let s = x * self.log_q;
        (s.exp() - (-s).exp()) / self.lambda
    }

    /// `[delta + twice / 2]`, reducing `twice` modulo `2m` in root mode so
    /// that congruent arguments evaluate to bit-identical values.
    ///
    /// Odd in `(delta, twice)` exactly: negating both negates the result.
    pub(crate) fn qnum_half_shift(&self, delta: Complex64, twice: i64) -> Complex64 {
        let twice = match self.mode {
            QMode::RootOfUnity { m, .. } => twice.rem_euclid(2 * i64::from(m)),
            QMode::Generic { .. } => twice,
        };
        self.qnum(delta + Complex64::new(twice as f64 / 2.0, 0.0))
    }

    /// Whether `[twice / 2]` vanishes exactly. At an odd root of unity
    /// `[t/2] = 0` iff `q^t = 1` iff `m | t`; at generic q iff `t = 0`.
    pub fn half_integer_bracket_vanishes(&self, twice: i64) -> bool {
        match self.mode {
            QMode::RootOfUnity { m, .. } => twice.rem_euclid(i64::from(m)) == 0,
            QMode::Generic { .. } => twice == 0,
        }
    }

    /// `Gamma_q(x + n) / Gamma_q(x) = [x][x+1]...[x+n-1]`.
    pub fn qgamma_ratio(&self, x: Complex64, n: u32) -> Complex64 {
        (0..n)
            .map(|j| self.qnum(x + f64::from(j)))
            .fold(Complex64::new(1.0, 0.0), |acc, b| acc * b)
    }
}

/// Principal square root, cut along the negative real axis. Values within
/// rounding of the cut are snapped onto it so that a negative real argument
/// always maps to `+i sqrt(|z|)`, independent of the sign of a stray
/// imaginary rounding residue.
pub fn half_power(z: Complex64) -> Complex64 {
    let scale = z.norm();
    if scale == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if z.im.abs() <= 1e-14 * scale {
        return if z.re >= 0.0 {
            Complex64::new(z.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-z.re).sqrt())
        };
    }
    z.sqrt()
}
