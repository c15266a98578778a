//! Symbolic analytic functions on the unit disc.
//!
//! A [`FunctionSpec`] is a small expression tree over five kinds of functions:
//! polynomials, lacunary series, logarithmic kernels `-scale·log(1 - λz)`,
//! rational powers `scale / (w₀ - z)^t` and finite sums. Every kind can be
//! evaluated in closed form, differentiated symbolically and expanded into
//! exact Taylor coefficients, which is what the integration operator
//! `T_g f(z) = ∫₀^z f(w) g'(w) dw` needs at coefficient level.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// `1 - c·z`, with the real part formed by fused multiply-adds so that
/// `1 - r·r` keeps full relative precision for `r` close to one.
#[inline]
fn one_minus_product(c: Complex64, z: Complex64) -> Complex64 {
    let re = (-c.re).mul_add(z.re, c.im.mul_add(z.im, 1.0));
    let im = -(c.re.mul_add(z.im, c.im * z.re));
    Complex64::new(re, im)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }
}

/// `Σ α_k z^{n_k}` with strictly increasing exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct Lacunary {
    exponents: Vec<u64>,
    coeffs: Vec<Complex64>,
    /// Declared gap ratio `q₀ > 1` with `n_{k+1}/n_k ≥ q₀`, if claimed.
    ratio: Option<f64>,
}

impl Lacunary {
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn ratio(&self) -> Option<f64> {
        self.ratio
    }

    /// `inf_k n_{k+1}/n_k` over the stored exponents.
    pub fn min_gap_ratio(&self) -> f64 {
        self.exponents.windows(2).map(|w| w[1] as f64 / w[0] as f64).fold(f64::INFINITY, f64::min)
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        let mut power = ONE;
        let mut last = 0u64;
        let mut acc = ZERO;
        for (&n, &a) in self.exponents.iter().zip(&self.coeffs) {
            power *= z.powu((n - last) as u32);
            last = n;
            acc += a * power;
        }
        acc
    }
}

/// `z ↦ -scale · log(1 - λz)` on the principal branch, `|λ| ≤ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogKernel {
    lambda: Complex64,
    scale: Complex64,
}

impl LogKernel {
    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        -self.scale * one_minus_product(self.lambda, z).ln()
    }
}

/// `z ↦ scale / (w₀ - z)^t` with `|w₀| ≥ 1` and `t > 0`.
///
/// Internally the function is kept as `lead · (1 - c z)^{-t}` with `c = 1/w₀`
/// and `lead = scale · w₀^{-t}`, which is the continuation from `z = 0` and
/// never touches a branch cut inside the disc.
#[derive(Clone, Debug)]
pub struct RationalPower {
    pole: Complex64,
    power: f64,
    scale: Complex64,
    recip: Complex64,
    lead: Complex64,
}

impl PartialEq for RationalPower {
    fn eq(&self, other: &Self) -> bool {
        self.pole == other.pole && self.power == other.power && self.scale == other.scale
    }
}

impl RationalPower {
    pub fn pole(&self) -> Complex64 {
        self.pole
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    /// `1/w₀`.
    pub fn pole_reciprocal(&self) -> Complex64 {
        self.recip
    }

    /// The constant `lead` in `lead · (1 - z/w₀)^{-t}`.
    pub fn lead(&self) -> Complex64 {
        self.lead
    }

    fn integer_power(&self) -> Option<i32> {
        (self.power.fract() == 0.0 && self.power <= i32::MAX as f64).then_some(self.power as i32)
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        let base = one_minus_product(self.recip, z);
        let denom = match self.integer_power() {
            Some(n) => base.powi(n),
            None => base.powf(self.power),
        };
        self.lead / denom
    }
}

/// Symbolic description of an analytic function on the unit disc.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    Polynomial(Polynomial),
    Lacunary(Lacunary),
    LogKernel(LogKernel),
    RationalPower(RationalPower),
    Sum(Vec<FunctionSpec>),
}

fn check_finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("{what} is not finite")))
    }
}

impl FunctionSpec {
    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        for c in &coeffs {
            check_finite(*c, "polynomial coefficient")?;
        }
        let coeffs = if coeffs.is_empty() { vec![ZERO] } else { coeffs };
        Ok(FunctionSpec::Polynomial(Polynomial { coeffs }))
    }

    /// Polynomial from real coefficients.
    pub fn real_polynomial(coeffs: &[f64]) -> Self {
        FunctionSpec::Polynomial(Polynomial {
            coeffs: if coeffs.is_empty() {
                vec![ZERO]
            } else {
                coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect()
            },
        })
    }

    pub fn constant(c: Complex64) -> Self {
        FunctionSpec::Polynomial(Polynomial { coeffs: vec![c] })
    }

    /// `c · z^n`.
    pub fn monomial(n: usize, c: Complex64) -> Self {
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[n] = c;
        FunctionSpec::Polynomial(Polynomial { coeffs })
    }

    /// Sparse series `Σ α_k z^{n_k}`. Exponents must be strictly increasing;
    /// when `ratio` is given every consecutive quotient must be at least
    /// `ratio > 1`.
    pub fn lacunary(exponents: Vec<u64>, coeffs: Vec<Complex64>, ratio: Option<f64>) -> Result<Self> {
        if exponents.len() != coeffs.len() {
            return Err(Error::InvalidSpec(format!(
                "lacunary series has {} exponents but {} coefficients",
                exponents.len(),
                coeffs.len()
            )));
        }
        if exponents.iter().any(|&n| n > u32::MAX as u64) {
            return Err(Error::InvalidSpec("lacunary exponent exceeds 2^32".into()));
        }
        for c in &coeffs {
            check_finite(*c, "lacunary coefficient")?;
        }
        if exponents.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Lacunarity("exponents must be strictly increasing".into()));
        }
        if let Some(q0) = ratio {
            if !(q0 > 1.0) {
                return Err(Error::Lacunarity(format!("declared ratio {q0} must exceed 1")));
            }
            if exponents.first() == Some(&0) {
                return Err(Error::Lacunarity("a lacunary sequence has positive exponents".into()));
            }
            for w in exponents.windows(2) {
                let r = w[1] as f64 / w[0] as f64;
                if r < q0 {
                    return Err(Error::Lacunarity(format!(
                        "n_{{k+1}}/n_k = {}/{} = {r} is below the declared ratio {q0}",
                        w[1], w[0]
                    )));
                }
            }
        }
        Ok(FunctionSpec::Lacunary(Lacunary { exponents, coeffs, ratio }))
    }

    /// `-log(1 - λz)`.
    pub fn log_kernel(lambda: Complex64) -> Result<Self> {
        Self::scaled_log_kernel(lambda, ONE)
    }

    /// `-scale · log(1 - λz)`.
    pub fn scaled_log_kernel(lambda: Complex64, scale: Complex64) -> Result<Self> {
        check_finite(lambda, "lambda")?;
        check_finite(scale, "scale")?;
        if lambda.norm() > 1.0 {
            return Err(Error::PoleInsideDisc(format!(
                "log kernel with |lambda| = {} > 1 has its branch point at 1/lambda inside the disc",
                lambda.norm()
            )));
        }
        Ok(FunctionSpec::LogKernel(LogKernel { lambda, scale }))
    }

    /// `scale / (pole - z)^power`.
    pub fn rational_power(pole: Complex64, power: f64, scale: Complex64) -> Result<Self> {
        check_finite(pole, "pole")?;
        check_finite(scale, "scale")?;
        if !(power > 0.0) || !power.is_finite() {
            return Err(Error::InvalidSpec(format!("power {power} must be positive")));
        }
        if pole.norm() < 1.0 {
            return Err(Error::PoleInsideDisc(format!("{pole}")));
        }
        let recip = pole.inv();
        let lead = scale * principal_pow(pole, -power);
        Ok(FunctionSpec::RationalPower(RationalPower { pole, power, scale, recip, lead }))
    }

    /// `lead · (1 - c z)^{-power}` with `|c| ≤ 1`; `c = 0` gives a constant.
    pub fn kernel(c: Complex64, power: f64, lead: Complex64) -> Result<Self> {
        check_finite(c, "kernel point")?;
        if c == ZERO {
            return Ok(FunctionSpec::constant(lead));
        }
        if c.norm() > 1.0 {
            return Err(Error::PoleInsideDisc(format!("{}", c.inv())));
        }
        if !(power > 0.0) || !power.is_finite() {
            return Err(Error::InvalidSpec(format!("power {power} must be positive")));
        }
        let pole = c.inv();
        let scale = lead * principal_pow(pole, power);
        Ok(FunctionSpec::RationalPower(RationalPower { pole, power, scale, recip: c, lead }))
    }

    pub fn sum(parts: Vec<FunctionSpec>) -> Self {
        FunctionSpec::Sum(parts)
    }

    /// The identity `z ↦ z`.
    pub fn identity() -> Self {
        FunctionSpec::real_polynomial(&[0.0, 1.0])
    }

    /// Point evaluation inside the open disc.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        if !(z.norm() < 1.0) {
            return Err(Error::OutsideDisc(format!("{z}")));
        }
        Ok(self.eval(z))
    }

    /// Point evaluation without the `|z| < 1` check. Callers guarantee the
    /// point lies in the open disc.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            FunctionSpec::Polynomial(p) => p.eval(z),
            FunctionSpec::Lacunary(l) => l.eval(z),
            FunctionSpec::LogKernel(k) => k.eval(z),
            FunctionSpec::RationalPower(r) => r.eval(z),
            FunctionSpec::Sum(parts) => parts.iter().map(|p| p.eval(z)).sum(),
        }
    }

    /// Exact symbolic derivative.
    pub fn derivative(&self) -> FunctionSpec {
        match self {
            FunctionSpec::Polynomial(p) => {
                let coeffs: Vec<Complex64> = p.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect();
                FunctionSpec::Polynomial(Polynomial { coeffs: if coeffs.is_empty() { vec![ZERO] } else { coeffs } })
            }
            FunctionSpec::Lacunary(l) => {
                let (exponents, coeffs) = l
                    .exponents
                    .iter()
                    .zip(&l.coeffs)
                    .filter(|(&n, _)| n > 0)
                    .map(|(&n, &c)| (n - 1, c * n as f64))
                    .unzip();
                FunctionSpec::Lacunary(Lacunary { exponents, coeffs, ratio: None })
            }
            FunctionSpec::LogKernel(k) => {
                if k.lambda == ZERO {
                    return FunctionSpec::constant(ZERO);
                }
                // d/dz -s·log(1 - λz) = s·λ/(1 - λz)
                FunctionSpec::kernel(k.lambda, 1.0, k.scale * k.lambda).expect("|lambda| <= 1")
            }
            FunctionSpec::RationalPower(r) => FunctionSpec::RationalPower(RationalPower {
                pole: r.pole,
                power: r.power + 1.0,
                scale: r.scale * r.power,
                recip: r.recip,
                lead: r.lead * r.power * r.recip,
            }),
            FunctionSpec::Sum(parts) => FunctionSpec::Sum(parts.iter().map(|p| p.derivative()).collect()),
        }
    }

    /// `c · f`.
    pub fn scaled(&self, c: Complex64) -> FunctionSpec {
        match self {
            FunctionSpec::Polynomial(p) => {
                FunctionSpec::Polynomial(Polynomial { coeffs: p.coeffs.iter().map(|&a| a * c).collect() })
            }
            FunctionSpec::Lacunary(l) => FunctionSpec::Lacunary(Lacunary {
                exponents: l.exponents.clone(),
                coeffs: l.coeffs.iter().map(|&a| a * c).collect(),
                ratio: l.ratio,
            }),
            FunctionSpec::LogKernel(k) => FunctionSpec::LogKernel(LogKernel { lambda: k.lambda, scale: k.scale * c }),
            FunctionSpec::RationalPower(r) => {
                FunctionSpec::RationalPower(RationalPower { scale: r.scale * c, lead: r.lead * c, ..r.clone() })
            }
            FunctionSpec::Sum(parts) => FunctionSpec::Sum(parts.iter().map(|p| p.scaled(c)).collect()),
        }
    }

    /// `z ↦ f(e^{iα} z)`.
    pub fn rotated(&self, alpha: f64) -> FunctionSpec {
        let u = Complex64::from_polar(1.0, alpha);
        match self {
            FunctionSpec::Polynomial(p) => FunctionSpec::Polynomial(Polynomial {
                coeffs: p
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, &a)| a * Complex64::from_polar(1.0, alpha * k as f64))
                    .collect(),
            }),
            FunctionSpec::Lacunary(l) => FunctionSpec::Lacunary(Lacunary {
                exponents: l.exponents.clone(),
                coeffs: l
                    .exponents
                    .iter()
                    .zip(&l.coeffs)
                    .map(|(&n, &a)| a * Complex64::from_polar(1.0, alpha * n as f64))
                    .collect(),
                ratio: l.ratio,
            }),
            FunctionSpec::LogKernel(k) => FunctionSpec::LogKernel(LogKernel { lambda: k.lambda * u, scale: k.scale }),
            FunctionSpec::RationalPower(r) => {
                FunctionSpec::kernel(r.recip * u, r.power, r.lead).expect("rotation preserves |c|")
            }
            FunctionSpec::Sum(parts) => FunctionSpec::Sum(parts.iter().map(|p| p.rotated(alpha)).collect()),
        }
    }

    /// Exact Taylor coefficients `a_0..a_N`.
    pub fn coefficients(&self, n: usize) -> CoeffVector {
        let mut out = vec![ZERO; n + 1];
        self.accumulate_coefficients(&mut out);
        CoeffVector { coeffs: out }
    }

    fn accumulate_coefficients(&self, out: &mut [Complex64]) {
        match self {
            FunctionSpec::Polynomial(p) => {
                for (o, &c) in out.iter_mut().zip(&p.coeffs) {
                    *o += c;
                }
            }
            FunctionSpec::Lacunary(l) => {
                for (&k, &c) in l.exponents.iter().zip(&l.coeffs) {
                    if let Some(o) = out.get_mut(k as usize) {
                        *o += c;
                    }
                }
            }
            FunctionSpec::LogKernel(k) => {
                // -log(1 - λz) = Σ_{k≥1} λ^k z^k / k
                let mut lp = ONE;
                for (deg, o) in out.iter_mut().enumerate().skip(1) {
                    lp *= k.lambda;
                    *o += k.scale * lp / deg as f64;
                }
            }
            FunctionSpec::RationalPower(r) => {
                // (1 - cz)^{-t} = Σ (t)_k / k! · c^k z^k
                let mut term = r.lead;
                for (deg, o) in out.iter_mut().enumerate() {
                    if deg > 0 {
                        term *= r.recip * ((r.power + (deg - 1) as f64) / deg as f64);
                    }
                    *o += term;
                }
            }
            FunctionSpec::Sum(parts) => {
                for p in parts {
                    p.accumulate_coefficients(out);
                }
            }
        }
    }

    /// Largest exponent carried by polynomial and lacunary parts. Log and
    /// rational kernels report `None` (infinite series).
    pub fn polynomial_degree(&self) -> Option<u64> {
        match self {
            FunctionSpec::Polynomial(p) => Some(p.coeffs.len().saturating_sub(1) as u64),
            FunctionSpec::Lacunary(l) => Some(l.exponents.last().copied().unwrap_or(0)),
            FunctionSpec::LogKernel(k) if k.lambda == ZERO || k.scale == ZERO => Some(0),
            FunctionSpec::LogKernel(_) | FunctionSpec::RationalPower(_) => None,
            FunctionSpec::Sum(parts) => {
                parts.iter().map(|p| p.polynomial_degree()).try_fold(0u64, |acc, d| d.map(|d| acc.max(d)))
            }
        }
    }

    /// Parse a JSON function spec.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SpecDoc = serde_json::from_str(text)?;
        doc.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SpecDoc::from(self)).expect("spec documents always serialize")
    }
}

fn principal_pow(z: Complex64, t: f64) -> Complex64 {
    if t.fract() == 0.0 && t.abs() <= i32::MAX as f64 {
        z.powi(t as i32)
    } else {
        z.powf(t)
    }
}

/// Taylor coefficients indexed by degree.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffVector {
    pub coeffs: Vec<Complex64>,
}

impl CoeffVector {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn into_spec(self) -> FunctionSpec {
        FunctionSpec::Polynomial(Polynomial { coeffs: if self.coeffs.is_empty() { vec![ZERO] } else { self.coeffs } })
    }
}

impl std::ops::Index<usize> for CoeffVector {
    type Output = Complex64;

    fn index(&self, k: usize) -> &Complex64 {
        &self.coeffs[k]
    }
}

/// Coefficients `d_0..d_N` of `T_g f(z) = ∫₀^z f(w) g'(w) dw`.
///
/// `d_0 = 0` and `d_{k+1} = (1/(k+1)) Σ_{m≤k} a_m b'_{k-m}`.
pub fn tg_apply(f: &FunctionSpec, g: &FunctionSpec, n: usize) -> CoeffVector {
    let a = f.coefficients(n);
    let b = g.derivative().coefficients(n);
    let mut d = vec![ZERO; n + 1];
    for k in 0..n {
        let conv: Complex64 = (0..=k).map(|m| a.coeffs[m] * b.coeffs[k - m]).sum();
        d[k + 1] = conv / (k + 1) as f64;
    }
    CoeffVector { coeffs: d }
}

/// `T_g f` as a closed-form spec, for polynomial `f` and symbols whose
/// derivative is a polynomial or `s·λ/(1 - λz)` with `|λ| = 1`.
///
/// For such `g` the result is exact for all `|z| < 1`, unlike the truncated
/// coefficient vector of [`tg_apply`].
pub fn tg_closed_form(f: &FunctionSpec, g: &FunctionSpec) -> Result<FunctionSpec> {
    let FunctionSpec::Polynomial(fp) = f else {
        return Err(Error::NoClosedForm("f must be a polynomial".into()));
    };
    match g {
        FunctionSpec::Polynomial(_) => {
            let deg = fp.coeffs.len() - 1 + g.polynomial_degree().unwrap_or(0) as usize;
            Ok(tg_apply(f, g, deg).into_spec())
        }
        FunctionSpec::LogKernel(k) => {
            if k.lambda == ZERO || k.scale == ZERO {
                return Ok(FunctionSpec::constant(ZERO));
            }
            if (k.lambda.norm() - 1.0).abs() > 1e-15 {
                return Err(Error::NoClosedForm("log kernel needs |lambda| = 1".into()));
            }
            // ∫₀^z w^m λ/(1-λw) dw = λ^{-m} (-log(1-λz) - Σ_{j=1}^m (λz)^j / j)
            let lam = k.lambda;
            let mut log_weight = ZERO;
            let mut poly = vec![ZERO; fp.coeffs.len()];
            let mut lam_inv_m = ONE;
            for (m, &a) in fp.coeffs.iter().enumerate() {
                if m > 0 {
                    lam_inv_m /= lam;
                }
                if a == ZERO {
                    continue;
                }
                let w = k.scale * a * lam_inv_m;
                log_weight += w;
                let mut lj = ONE;
                for (j, slot) in poly.iter_mut().enumerate().take(m + 1).skip(1) {
                    lj *= lam;
                    *slot -= w * lj / j as f64;
                }
            }
            Ok(FunctionSpec::Sum(vec![
                FunctionSpec::scaled_log_kernel(lam, log_weight)?,
                FunctionSpec::Polynomial(Polynomial { coeffs: poly }),
            ]))
        }
        FunctionSpec::Sum(parts) => {
            Ok(FunctionSpec::Sum(parts.iter().map(|p| tg_closed_form(f, p)).collect::<Result<_>>()?))
        }
        _ => Err(Error::NoClosedForm("symbol kind not supported".into())),
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Polynomial(p) => write!(f, "polynomial(degree {})", p.coeffs.len() - 1),
            FunctionSpec::Lacunary(l) => write!(f, "lacunary({} terms)", l.exponents.len()),
            FunctionSpec::LogKernel(k) => write!(f, "-{}·log(1 - ({})z)", k.scale, k.lambda),
            FunctionSpec::RationalPower(r) => write!(f, "{}/({} - z)^{}", r.scale, r.pole, r.power),
            FunctionSpec::Sum(parts) => write!(f, "sum({} parts)", parts.len()),
        }
    }
}

// JSON document form. Complex numbers are `[re, im]` pairs.

type Pair = [f64; 2];

fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

fn cplx(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn unit_pair() -> Pair {
    [1.0, 0.0]
}

fn is_unit_pair(p: &Pair) -> bool {
    *p == [1.0, 0.0]
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum SpecDoc {
    Polynomial {
        coeffs: Vec<Pair>,
    },
    Lacunary {
        exponents: Vec<u64>,
        coeffs: Vec<Pair>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ratio: Option<f64>,
    },
    LogKernel {
        lambda: Pair,
        #[serde(default = "unit_pair", skip_serializing_if = "is_unit_pair")]
        scale: Pair,
    },
    RationalPower {
        pole: Pair,
        power: f64,
        #[serde(default = "unit_pair")]
        scale: Pair,
    },
    Sum {
        parts: Vec<SpecDoc>,
    },
}

impl TryFrom<SpecDoc> for FunctionSpec {
    type Error = Error;

    fn try_from(doc: SpecDoc) -> Result<Self> {
        match doc {
            SpecDoc::Polynomial { coeffs } => FunctionSpec::polynomial(coeffs.into_iter().map(cplx).collect()),
            SpecDoc::Lacunary { exponents, coeffs, ratio } => {
                FunctionSpec::lacunary(exponents, coeffs.into_iter().map(cplx).collect(), ratio)
            }
            SpecDoc::LogKernel { lambda, scale } => FunctionSpec::scaled_log_kernel(cplx(lambda), cplx(scale)),
            SpecDoc::RationalPower { pole, power, scale } => {
                FunctionSpec::rational_power(cplx(pole), power, cplx(scale))
            }
            SpecDoc::Sum { parts } => {
                Ok(FunctionSpec::Sum(parts.into_iter().map(FunctionSpec::try_from).collect::<Result<_>>()?))
            }
        }
    }
}

impl From<&FunctionSpec> for SpecDoc {
    fn from(spec: &FunctionSpec) -> Self {
        match spec {
            FunctionSpec::Polynomial(p) => SpecDoc::Polynomial { coeffs: p.coeffs.iter().copied().map(pair).collect() },
            FunctionSpec::Lacunary(l) => SpecDoc::Lacunary {
                exponents: l.exponents.clone(),
                coeffs: l.coeffs.iter().copied().map(pair).collect(),
                ratio: l.ratio,
            },
            FunctionSpec::LogKernel(k) => SpecDoc::LogKernel { lambda: pair(k.lambda), scale: pair(k.scale) },
            FunctionSpec::RationalPower(r) => {
                SpecDoc::RationalPower { pole: pair(r.pole), power: r.power, scale: pair(r.scale) }
            }
            FunctionSpec::Sum(parts) => SpecDoc::Sum { parts: parts.iter().map(SpecDoc::from).collect() },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn parse_examples() {
        let id = FunctionSpec::from_json(r#"{"kind":"polynomial","coeffs":[[0,0],[1,0]]}"#).unwrap();
        assert_eq!(id, FunctionSpec::identity());
        let lg = FunctionSpec::from_json(r#"{"kind":"log_kernel","lambda":[1,0]}"#).unwrap();
        assert_eq!(lg, FunctionSpec::log_kernel(c(1.0)).unwrap());
    }

    #[test]
    fn parse_rejections() {
        // non-increasing exponents
        assert!(matches!(
            FunctionSpec::from_json(r#"{"kind":"lacunary","exponents":[1,1],"coeffs":[[1,0],[1,0]]}"#),
            Err(Error::Lacunarity(_))
        ));
        // [1,2,3] is increasing; accepted without a declared ratio
        assert!(
            FunctionSpec::from_json(r#"{"kind":"lacunary","exponents":[1,2,3],"coeffs":[[1,0],[1,0],[1,0]]}"#).is_ok()
        );
        // inf ratio 3/2 clears a declared 1.5 but not 2
        let doc =
            |r: f64| format!(r#"{{"kind":"lacunary","exponents":[1,2,3],"coeffs":[[1,0],[1,0],[1,0]],"ratio":{r}}}"#);
        assert!(FunctionSpec::from_json(&doc(1.5)).is_ok());
        assert!(matches!(FunctionSpec::from_json(&doc(2.0)), Err(Error::Lacunarity(_))));
        assert!(matches!(
            FunctionSpec::from_json(r#"{"kind":"rational_power","pole":[0.5,0],"power":2,"scale":[1,0]}"#),
            Err(Error::PoleInsideDisc(_))
        ));
        assert!(FunctionSpec::from_json(r#"{"kind":"bessel"}"#).is_err());
        assert!(FunctionSpec::from_json(r#"{"kind":"polynomial"}"#).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let lg = FunctionSpec::log_kernel(c(1.0)).unwrap();
        assert_eq!(lg.evaluate(c(0.0)).unwrap(), c(0.0));
        let p = FunctionSpec::real_polynomial(&[1.0, 1.0]);
        assert_eq!(p.evaluate(c(0.5)).unwrap(), c(1.5));
        let eps = 0.25;
        let u = FunctionSpec::rational_power(c(1.0 + eps), 3.0, c(eps * eps)).unwrap();
        assert!(close(u.evaluate(c(0.0)).unwrap(), c(0.032), 1e-15));
        assert!(matches!(lg.evaluate(c(1.0)), Err(Error::OutsideDisc(_))));
        assert!(lg.evaluate(Complex64::new(0.8, 0.7)).is_err());
    }

    #[test]
    fn derivative_examples() {
        let lg = FunctionSpec::log_kernel(c(1.0)).unwrap();
        let d = lg.derivative();
        for r in [0.0, 0.3, 0.9, 0.999] {
            assert!(close(d.eval(c(r)), c(1.0 / (1.0 - r)), 1e-12 / (1.0 - r)));
            let dd = d.derivative().eval(c(r));
            assert!(close(dd, c(1.0 / (1.0 - r).powi(2)), 1e-12 / (1.0 - r).powi(2)));
        }
        let cube = FunctionSpec::monomial(3, c(1.0));
        assert_eq!(cube.derivative(), FunctionSpec::real_polynomial(&[0.0, 0.0, 3.0]));
    }

    #[test]
    fn coefficient_examples() {
        let lg = FunctionSpec::log_kernel(c(1.0)).unwrap();
        let a = lg.coefficients(3);
        assert_eq!(a.coeffs, vec![c(0.0), c(1.0), c(0.5), c(1.0 / 3.0)]);
        let lac = FunctionSpec::lacunary(vec![1, 2, 4, 8], vec![c(1.0); 4], Some(2.0)).unwrap();
        assert_eq!(lac.coefficients(5).coeffs, vec![c(0.0), c(1.0), c(1.0), c(0.0), c(1.0), c(0.0)]);
        let geo = FunctionSpec::rational_power(c(2.0), 1.0, c(1.0)).unwrap();
        let g = geo.coefficients(2);
        assert!(close(g[0], c(0.5), 1e-16) && close(g[1], c(0.25), 1e-16) && close(g[2], c(0.125), 1e-16));
    }

    #[test]
    fn coefficient_zero_matches_value_at_origin() {
        let spec = FunctionSpec::sum(vec![
            FunctionSpec::rational_power(Complex64::new(0.0, 1.5), 2.5, Complex64::new(1.0, -2.0)).unwrap(),
            FunctionSpec::log_kernel(Complex64::new(0.6, 0.8)).unwrap(),
            FunctionSpec::real_polynomial(&[3.0, 1.0]),
        ]);
        assert!(close(spec.coefficients(0)[0], spec.eval(c(0.0)), 1e-14));
    }

    #[test]
    fn tg_examples() {
        let one = FunctionSpec::constant(c(1.0));
        let lg = FunctionSpec::log_kernel(c(1.0)).unwrap();
        let d = tg_apply(&one, &lg, 5);
        assert_eq!(d.coeffs, lg.coefficients(5).coeffs);

        let d = tg_apply(&one, &FunctionSpec::identity(), 3);
        assert_eq!(d.coeffs, vec![c(0.0), c(1.0), c(0.0), c(0.0)]);

        let f = FunctionSpec::monomial(2, c(2.0));
        let d = tg_apply(&f, &lg, 4);
        let expect = [0.0, 0.0, 0.0, 2.0 / 3.0, 0.5];
        for (k, e) in expect.iter().enumerate() {
            assert!(close(d[k], c(*e), 1e-15), "degree {k}");
        }
    }

    #[test]
    fn tg_closed_form_matches_coefficients() {
        let lg = FunctionSpec::log_kernel(Complex64::from_polar(1.0, 0.7)).unwrap();
        let f = FunctionSpec::polynomial(vec![c(0.5), Complex64::new(0.0, 1.0), c(0.0), c(-2.0)]).unwrap();
        let closed = tg_closed_form(&f, &lg).unwrap();
        let series = tg_apply(&f, &lg, 200).into_spec();
        for z in [c(0.3), Complex64::new(-0.2, 0.4), Complex64::new(0.1, -0.55)] {
            assert!(close(closed.eval(z), series.eval(z), 1e-12));
        }
        // ℓ¹-copy functions: T_g(N z^N) with g = -log(1-z)
        let n = 8;
        let f = FunctionSpec::monomial(n, c(n as f64));
        let closed = tg_closed_form(&f, &FunctionSpec::log_kernel(c(1.0)).unwrap()).unwrap();
        let coeffs = closed.coefficients(40);
        let direct = tg_apply(&f, &FunctionSpec::log_kernel(c(1.0)).unwrap(), 40);
        for k in 0..=40 {
            assert!(close(coeffs[k], direct[k], 1e-13), "degree {k}");
        }
    }

    #[test]
    fn rotation_and_scaling() {
        let spec = FunctionSpec::sum(vec![
            FunctionSpec::rational_power(c(1.3), 1.5, c(2.0)).unwrap(),
            FunctionSpec::log_kernel(c(1.0)).unwrap(),
            FunctionSpec::lacunary(vec![1, 3, 9], vec![c(1.0), c(-1.0), c(0.5)], Some(3.0)).unwrap(),
        ]);
        let alpha = 0.4;
        let z = Complex64::new(0.3, -0.5);
        let rot = spec.rotated(alpha);
        assert!(close(rot.eval(z), spec.eval(z * Complex64::from_polar(1.0, alpha)), 1e-13));
        let k = Complex64::new(-2.0, 0.5);
        assert!(close(spec.scaled(k).eval(z), spec.eval(z) * k, 1e-13));
    }

    #[test]
    fn json_round_trip() {
        let spec = FunctionSpec::sum(vec![
            FunctionSpec::rational_power(Complex64::new(1.1, 0.3), 2.5, c(0.1)).unwrap(),
            FunctionSpec::scaled_log_kernel(c(1.0), c(3.0)).unwrap(),
            FunctionSpec::lacunary(vec![2, 4], vec![c(1.0), c(2.0)], Some(2.0)).unwrap(),
        ]);
        let back = FunctionSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
    }
}
