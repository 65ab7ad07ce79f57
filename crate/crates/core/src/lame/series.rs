//! Truncated Laurent series in the local coordinate ξ, generic over the
//! coefficient ring: exact (`MultiPoly`) for the residual oracle, complex
//! floating for perturbed eigenvalue checks.
//!
//! The Weierstrass expansion used throughout:
//! `℘(ξ) = ξ⁻² + Σ_{k≥2} c_k ξ^{2k−2}` with `c₂ = g₂/20`, `c₃ = g₃/28` and
//! `c_k = 3/((2k+1)(k−3)) Σ_{m=2}^{k−2} c_m c_{k−m}` for k ≥ 4.

use crate::exact::{MultiPoly, Rational};
use num_complex::Complex64;

/// Coefficient ring operations needed by the series arithmetic.
pub trait Coeff: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Exact division by a nonzero integer.
    fn div_int(&self, n: i64) -> Self;
}

impl Coeff for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::from_int(1)
    }
    fn from_int(n: i64) -> Self {
        MultiPoly::from_int(n)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        MultiPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        MultiPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        MultiPoly::mul(self, o)
    }
    fn div_int(&self, n: i64) -> Self {
        self.scale(&Rational::from_pair(1, n))
    }
}

impl Coeff for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div_int(&self, n: i64) -> Self {
        self / (n as f64)
    }
}

/// Laurent series `Σ_i coeffs[i]·ξ^(lead+i)`, truncated after `coeffs.len()`
/// terms. Binary operations truncate to the common reliable window.
#[derive(Clone, Debug)]
pub struct Series<C: Coeff> {
    pub lead: i32,
    pub coeffs: Vec<C>,
}

impl<C: Coeff> Series<C> {
    pub fn new(lead: i32, coeffs: Vec<C>) -> Self {
        Series { lead, coeffs }
    }

    pub fn constant(c: C, len: usize) -> Self {
        let mut coeffs = vec![C::zero(); len];
        if !coeffs.is_empty() {
            coeffs[0] = c;
        }
        Series { lead: 0, coeffs }
    }

    /// Exponent of the last reliable coefficient.
    pub fn top(&self) -> i32 {
        self.lead + self.coeffs.len() as i32 - 1
    }

    pub fn coeff_at(&self, exp: i32) -> C {
        let idx = exp - self.lead;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            C::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let lead = self.lead.min(other.lead);
        let top = self.top().min(other.top());
        let len = (top - lead + 1).max(0) as usize;
        let coeffs = (0..len)
            .map(|i| {
                let e = lead + i as i32;
                self.coeff_at(e).add(&other.coeff_at(e))
            })
            .collect();
        Series { lead, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&C::from_int(-1)))
    }

    pub fn scale(&self, c: &C) -> Self {
        Series {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Truncation: reliable up to min over windows.
        let lead = self.lead + other.lead;
        let top = (self.top() + other.lead).min(other.top() + self.lead);
        let len = (top - lead + 1).max(0) as usize;
        let mut coeffs = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Series { lead, coeffs }
    }

    pub fn pow(&self, n: u32) -> Self {
        let len = self.coeffs.len();
        let mut acc = Series::constant(C::one(), len);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// d/dξ.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<C> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = self.lead + i as i32;
                c.mul(&C::from_int(e as i64))
            })
            .collect();
        // term ξ^e ↦ e·ξ^{e−1}; the e = 0 coefficient becomes 0 but stays in
        // place so the window just shifts.
        Series {
            lead: self.lead - 1,
            coeffs,
        }
    }

    /// Square root of a series whose leading exponent is even and whose
    /// leading coefficient is exactly 1.
    pub fn sqrt_unit(&self) -> Self {
        assert!(self.lead % 2 == 0, "sqrt needs an even leading exponent");
        assert!(
            !self.coeffs.is_empty() && self.coeffs[0].sub(&C::one()).is_zero(),
            "sqrt needs leading coefficient 1"
        );
        let n = self.coeffs.len();
        let mut y: Vec<C> = vec![C::zero(); n];
        y[0] = C::one();
        for k in 1..n {
            // y_k = (f_k − Σ_{i=1}^{k−1} y_i y_{k−i}) / 2
            let mut s = self.coeffs[k].clone();
            for i in 1..k {
                s = s.sub(&y[i].mul(&y[k - i]));
            }
            y[k] = s.div_int(2);
        }
        Series {
            lead: self.lead / 2,
            coeffs: y,
        }
    }
}

/// Exact Weierstrass ℘ as a Laurent series with `n_coeffs` coefficients
/// starting at ξ⁻², over ℚ[g₂, g₃].
pub fn weierstrass_p_exact(n_coeffs: usize) -> Series<MultiPoly> {
    let cks = weierstrass_c_coeffs(n_coeffs / 2 + 3);
    let mut coeffs = vec![MultiPoly::zero(); n_coeffs];
    coeffs[0] = MultiPoly::from_int(1); // ξ⁻²
    for (k, ck) in cks.iter().enumerate().skip(2) {
        // c_k multiplies ξ^{2k−2}; index relative to lead −2 is 2k.
        let idx = 2 * k;
        if idx < n_coeffs {
            coeffs[idx] = ck.clone();
        }
    }
    Series::new(-2, coeffs)
}

/// The recurrence coefficients c_k (c_0, c_1 unused, c₂ = g₂/20, c₃ = g₃/28,
/// c_k = 3/((2k+1)(k−3))·Σ_{m=2}^{k−2} c_m c_{k−m}).
fn weierstrass_c_coeffs(up_to: usize) -> Vec<MultiPoly> {
    let mut c = vec![MultiPoly::zero(); up_to.max(4)];
    if up_to > 2 {
        c[2] = MultiPoly::var("g2").scale(&Rational::from_pair(1, 20));
    }
    if up_to > 3 {
        c[3] = MultiPoly::var("g3").scale(&Rational::from_pair(1, 28));
    }
    for k in 4..up_to {
        let mut s = MultiPoly::zero();
        for m in 2..=k - 2 {
            s = s.add(&c[m].mul(&c[k - m]));
        }
        let factor = Rational::from(3)
            / (Rational::from((2 * k + 1) as i64) * Rational::from((k - 3) as i64));
        c[k] = s.scale(&factor);
    }
    c
}

/// Numeric ℘ series for given (possibly complex) invariants.
pub fn weierstrass_p_numeric(n_coeffs: usize, g2: Complex64, g3: Complex64) -> Series<Complex64> {
    let exact = weierstrass_p_exact(n_coeffs);
    let coeffs = exact
        .coeffs
        .iter()
        .map(|p| {
            p.eval_complex(&|v| match v {
                "g2" => g2,
                "g3" => g3,
                _ => panic!("unexpected variable {v} in ℘ series"),
            })
        })
        .collect();
    Series::new(exact.lead, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_series_satisfies_weierstrass_ode() {
        // (℘′)² = 4℘³ − g₂℘ − g₃, exactly, through many orders.
        let n = 24;
        let p = weierstrass_p_exact(n);
        let dp = p.derivative();
        let lhs = dp.mul(&dp);
        let g2 = MultiPoly::var("g2");
        let g3 = MultiPoly::var("g3");
        let rhs = p
            .pow(3)
            .scale(&MultiPoly::from_int(4))
            .sub(&p.scale(&g2))
            .sub(&Series::constant(g3, n));
        let diff = lhs.sub(&rhs);
        for c in &diff.coeffs {
            assert!(c.is_zero(), "ODE residual at some order: {c:?}");
        }
    }

    #[test]
    fn p_double_prime_identity() {
        // ℘″ = 6℘² − g₂/2
        let n = 20;
        let p = weierstrass_p_exact(n);
        let lhs = p.derivative().derivative();
        let rhs = p
            .pow(2)
            .scale(&MultiPoly::from_int(6))
            .sub(&Series::constant(
                MultiPoly::var("g2").scale(&Rational::from_pair(1, 2)),
                n,
            ));
        let diff = lhs.sub(&rhs);
        for c in &diff.coeffs {
            assert!(c.is_zero());
        }
    }

    #[test]
    fn sqrt_squares_back() {
        // sqrt(℘·ξ² shifted to unit form) squared reproduces the series.
        let n = 16;
        let p = weierstrass_p_exact(n);
        // ℘ − e has unit leading coefficient at ξ⁻².
        let pe = p.sub(&Series::constant(MultiPoly::var("e"), n));
        let s = pe.sqrt_unit();
        let diff = s.mul(&s).sub(&pe);
        for c in &diff.coeffs {
            assert!(c.is_zero());
        }
    }

    #[test]
    fn numeric_matches_exact() {
        let g2 = Complex64::new(4.0, 0.0);
        let g3 = Complex64::new(1.0, 0.0);
        let pn = weierstrass_p_numeric(12, g2, g3);
        let pe = weierstrass_p_exact(12);
        for (i, c) in pn.coeffs.iter().enumerate() {
            let want = pe.coeffs[i].eval_complex(&|v| match v {
                "g2" => g2,
                "g3" => g3,
                _ => unreachable!(),
            });
            assert!((c - want).norm() < 1e-12);
        }
    }
}
