//! Function-field arithmetic on superelliptic plane curves `wᵏ = p(z)`
//! (k = 2 hyperelliptic, k = 3 trigonal).
//!
//! A [`CurveFunction`] is an element of the function field in the normal form
//! `N(z, w)/D(z)` with `deg_w N < k`; multiplication reduces `wᵏ → p(z)`.
//! Denominators are kept lazily (no GCD cancellation); equality always goes
//! through cross-multiplication and [`CurveFunction::is_zero_on_curve`].
//! Curves may carry extra coefficient-field relations (`u³ = 5`, `i² = −1`,
//! `g₃ = −σ⁶` is handled by substitution before construction) so that the
//! Halphen covers with radical scalings verify by exact polynomial identity.

use crate::exact::{e_cubic_rule, MultiPoly, Rational, RewriteRule};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum CurveError {
    #[error("curve {0} is degenerate (p = 0)")]
    Degenerate(String),
    #[error("curve {0} is flagged singular; holomorphic data is not defined on the plane model")]
    Singular(String),
    #[error("unsupported curve family: {0}")]
    UnsupportedFamily(String),
}

/// Plane curve `wᵏ = p(z)` with optional extra relations on coefficients.
#[derive(Clone)]
pub struct PlaneCurve {
    pub k: u8,
    pub p: MultiPoly,
    pub label: String,
    pub singular: bool,
    /// Relations adjoining radicals to the coefficient field, e.g. `u³ → 5`.
    pub extra_rules: Vec<RewriteRule>,
}

impl fmt::Debug for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: w^{} = {}", self.label, self.k, self.p)
    }
}

impl PlaneCurve {
    fn build(
        k: u8,
        p: MultiPoly,
        label: &str,
        singular: bool,
        extra_rules: Vec<RewriteRule>,
    ) -> Arc<Self> {
        assert!(k == 2 || k == 3, "only w² and w³ curves are supported");
        assert!(!p.is_zero(), "curve polynomial must be nonzero");
        Arc::new(PlaneCurve {
            k,
            p,
            label: label.to_string(),
            singular,
            extra_rules,
        })
    }

    pub fn new(k: u8, p: MultiPoly, label: &str) -> Arc<Self> {
        Self::build(k, p, label, false, Vec::new())
    }

    pub fn new_singular(k: u8, p: MultiPoly, label: &str) -> Arc<Self> {
        Self::build(k, p, label, true, Vec::new())
    }

    pub fn with_rules(k: u8, p: MultiPoly, label: &str, rules: Vec<RewriteRule>) -> Arc<Self> {
        Self::build(k, p, label, false, rules)
    }

    fn w_rule(&self) -> RewriteRule {
        RewriteRule::new("w", self.k as u16, self.p.clone())
    }

    /// All rewrite rules active on this curve: the curve relation itself, the
    /// Weierstrass cubic for a generic root `e`, and any radical relations.
    pub fn rules(&self) -> Vec<RewriteRule> {
        let mut rules = vec![self.w_rule(), e_cubic_rule()];
        rules.extend(self.extra_rules.iter().cloned());
        rules
    }

    pub fn reduce(&self, poly: &MultiPoly) -> MultiPoly {
        poly.reduce(&self.rules())
    }

    /// Genus of the supported families (table-driven).
    pub fn genus(&self) -> Result<u32, CurveError> {
        if self.singular {
            return Err(CurveError::Singular(self.label.clone()));
        }
        let d = self.p.degree_in("z");
        match self.k {
            2 if (3..=8).contains(&d) => Ok((d - 1) / 2),
            3 if d == 4 => Ok(3),
            _ => Err(CurveError::UnsupportedFamily(format!(
                "w^{} = polynomial of z-degree {}",
                self.k, d
            ))),
        }
    }
}

/// Element of the function field of a [`PlaneCurve`], stored as
/// `N(z, w)/D(z)` with `deg_w N < k` and `D` free of `w`.
#[derive(Clone)]
pub struct CurveFunction {
    curve: Arc<PlaneCurve>,
    num: MultiPoly,
    den: MultiPoly,
}

impl fmt::Debug for CurveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl CurveFunction {
    pub fn new(curve: &Arc<PlaneCurve>, num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator on {}", curve.label);
        assert_eq!(den.degree_in("w"), 0, "denominator must not involve w");
        CurveFunction {
            num: curve.reduce(&num),
            den,
            curve: curve.clone(),
        }
    }

    /// Normal form of a polynomial expression in z, w and parameters.
    pub fn from_poly(curve: &Arc<PlaneCurve>, expr: MultiPoly) -> Self {
        Self::new(curve, expr, MultiPoly::from_int(1))
    }

    pub fn zero(curve: &Arc<PlaneCurve>) -> Self {
        Self::from_poly(curve, MultiPoly::zero())
    }

    pub fn curve(&self) -> &Arc<PlaneCurve> {
        &self.curve
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    /// Components `r_j(z)` of `Σ r_j(z) wʲ` as (numerator, denominator) pairs
    /// over the common denominator.
    pub fn components(&self) -> Vec<(MultiPoly, MultiPoly)> {
        let coeffs = self.num.coeffs_in("w");
        let mut out = Vec::with_capacity(self.curve.k as usize);
        for j in 0..self.curve.k as usize {
            let n = coeffs.get(j).cloned().unwrap_or_else(MultiPoly::zero);
            out.push((n, self.den.clone()));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        Self::new(&self.curve, num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CurveFunction {
            curve: self.curve.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            &self.curve,
            self.num.mul(&other.num),
            self.den.mul(&other.den),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::from_poly(&self.curve, MultiPoly::from_int(1));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CurveFunction {
            curve: self.curve.clone(),
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, q: &MultiPoly) -> Self {
        Self::new(&self.curve, self.num.mul(q), self.den.clone())
    }

    pub fn div_poly(&self, q: &MultiPoly) -> Self {
        Self::new(&self.curve, self.num.clone(), self.den.mul(q))
    }

    /// True iff the function vanishes identically on the curve: the numerator
    /// reduces to zero modulo `wᵏ − p(z)` and the coefficient relations.
    pub fn is_zero_on_curve(&self) -> bool {
        self.curve.reduce(&self.num).is_zero()
    }

    pub fn equals_on_curve(&self, other: &Self) -> bool {
        self.sub(other).is_zero_on_curve()
    }

    /// d/dz along the curve, using `dw/dz = p′(z)/(k·w^{k−1}) = p′(z)·w/(k·p)`.
    pub fn derivative_on_curve(&self) -> Result<Self, CurveError> {
        if self.curve.p.is_zero() {
            return Err(CurveError::Degenerate(self.curve.label.clone()));
        }
        let k = MultiPoly::from_int(self.curve.k as i64);
        let p = &self.curve.p;
        let dp = p.derivative("z");
        let nz = self.num.derivative("z");
        let nw = self.num.derivative("w");
        let dz_part = nz.mul(&self.den).sub(&self.num.mul(&self.den.derivative("z")));
        // (N_z D − N D_z)·k·p + N_w·p′·w·D, over k·p·D².
        let num = dz_part
            .mul(&k)
            .mul(p)
            .add(&nw.mul(&dp).mul(&MultiPoly::var("w")).mul(&self.den));
        let den = k.mul(p).mul(&self.den).mul(&self.den);
        Ok(Self::new(&self.curve, num, den))
    }
}

/// Holomorphic differential `coefficient · dz`.
#[derive(Clone, Debug)]
pub struct CurveDifferential {
    pub coeff: CurveFunction,
    /// Human-readable tag such as `dz/w` or `z dz/w^2`.
    pub label: String,
}

/// Basis of holomorphic differentials for the supported families:
/// hyperelliptic `w² = p(z)` of genus g gives `zⁱ dz/w` (0 ≤ i < g); the
/// trigonal quartic family gives `dz/w, dz/w², z dz/w²`.
pub fn holomorphic_basis(curve: &Arc<PlaneCurve>) -> Result<Vec<CurveDifferential>, CurveError> {
    let genus = curve.genus()?;
    let p = &curve.p;
    match curve.k {
        2 => {
            // 1/w = w/p on the curve.
            let mut out = Vec::new();
            for i in 0..genus {
                let num = MultiPoly::var("w").mul(&MultiPoly::var("z").pow(i));
                let coeff = CurveFunction::new(curve, num, p.clone());
                let label = match i {
                    0 => "dz/w".to_string(),
                    1 => "z dz/w".to_string(),
                    _ => format!("z^{} dz/w", i),
                };
                out.push(CurveDifferential { coeff, label });
            }
            Ok(out)
        }
        3 => {
            // 1/w = w²/p, 1/w² = w/p.
            let w = MultiPoly::var("w");
            let z = MultiPoly::var("z");
            let du1 = CurveFunction::new(curve, w.pow(2), p.clone());
            let du2 = CurveFunction::new(curve, w.clone(), p.clone());
            let du3 = CurveFunction::new(curve, w.mul(&z), p.clone());
            Ok(vec![
                CurveDifferential {
                    coeff: du1,
                    label: "dz/w".to_string(),
                },
                CurveDifferential {
                    coeff: du2,
                    label: "dz/w^2".to_string(),
                },
                CurveDifferential {
                    coeff: du3,
                    label: "z dz/w^2".to_string(),
                },
            ])
        }
        _ => unreachable!(),
    }
}

/// JSON schema for curves: extra rules serialized inline.
#[derive(Serialize, Deserialize)]
pub struct CurveJson {
    pub k: u8,
    pub p: MultiPoly,
    pub label: String,
    #[serde(default)]
    pub singular: bool,
    #[serde(default)]
    pub rules: Vec<RuleJson>,
}

#[derive(Serialize, Deserialize)]
pub struct RuleJson {
    pub var: String,
    pub power: u16,
    pub replacement: MultiPoly,
}

impl CurveJson {
    pub fn from_curve(c: &PlaneCurve) -> Self {
        CurveJson {
            k: c.k,
            p: c.p.clone(),
            label: c.label.clone(),
            singular: c.singular,
            rules: c
                .extra_rules
                .iter()
                .map(|r| RuleJson {
                    var: r.var.clone(),
                    power: r.power,
                    replacement: r.replacement.clone(),
                })
                .collect(),
        }
    }

    pub fn into_curve(self) -> Result<Arc<PlaneCurve>, String> {
        if self.k != 2 && self.k != 3 {
            return Err(format!("unsupported k = {}", self.k));
        }
        if self.p.is_zero() {
            return Err("curve polynomial is zero".to_string());
        }
        let mut rules = Vec::new();
        for r in self.rules {
            if r.power == 0 || r.replacement.degree_in(&r.var) >= r.power as u32 {
                return Err(format!("rule for {} does not lower the degree", r.var));
            }
            rules.push(RewriteRule::new(&r.var, r.power, r.replacement));
        }
        Ok(Arc::new(PlaneCurve {
            k: self.k,
            p: self.p,
            label: self.label,
            singular: self.singular,
            extra_rules: rules,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weierstrass_curve() -> Arc<PlaneCurve> {
        // w² = 4z³ − g₂z − g₃
        let p = MultiPoly::monomial(&[("z", 3)], Rational::from(4))
            .sub(&MultiPoly::var("g2").mul(&MultiPoly::var("z")))
            .sub(&MultiPoly::var("g3"));
        PlaneCurve::new(2, p, "weierstrass")
    }

    fn halphen_curve() -> Arc<PlaneCurve> {
        // w³ = (z² + 25g₃/4)(z² − 135g₃/4)
        let z2 = MultiPoly::var("z").pow(2);
        let g3 = MultiPoly::var("g3");
        let f1 = z2.add(&g3.scale(&Rational::from_pair(25, 4)));
        let f2 = z2.sub(&g3.scale(&Rational::from_pair(135, 4)));
        PlaneCurve::new(3, f1.mul(&f2), "halphen")
    }

    #[test]
    fn w_square_reduces_to_p() {
        let c = weierstrass_curve();
        let f = CurveFunction::from_poly(&c, MultiPoly::var("w").pow(2));
        assert_eq!(f.num(), &c.p);
    }

    #[test]
    fn halphen_w_cubed() {
        let c = halphen_curve();
        let f = CurveFunction::from_poly(&c, MultiPoly::var("w").pow(3));
        assert_eq!(f.num(), &c.p);
        // w⁴ → w·p(z)
        let f4 = CurveFunction::from_poly(&c, MultiPoly::var("w").pow(4));
        assert_eq!(f4.num(), &MultiPoly::var("w").mul(&c.p));
    }

    #[test]
    fn zero_tests() {
        let c = weierstrass_curve();
        let w2 = CurveFunction::from_poly(&c, MultiPoly::var("w").pow(2));
        let p = CurveFunction::from_poly(&c, c.p.clone());
        assert!(w2.sub(&p).is_zero_on_curve());
        let w = CurveFunction::from_poly(&c, MultiPoly::var("w"));
        assert!(w.sub(&w).is_zero_on_curve());
        let z = CurveFunction::from_poly(&c, MultiPoly::var("z"));
        assert!(!z.is_zero_on_curve());
    }

    #[test]
    fn derivative_examples() {
        let c = weierstrass_curve();
        let z = CurveFunction::from_poly(&c, MultiPoly::var("z"));
        let dz = z.derivative_on_curve().unwrap();
        assert!(dz
            .sub(&CurveFunction::from_poly(&c, MultiPoly::from_int(1)))
            .is_zero_on_curve());

        // d(w)/dz = p′/(2w) → as a function: p′·w/(2p)
        let w = CurveFunction::from_poly(&c, MultiPoly::var("w"));
        let dw = w.derivative_on_curve().unwrap();
        let expect = CurveFunction::new(
            &c,
            c.p.derivative("z").mul(&MultiPoly::var("w")),
            c.p.scale(&Rational::from(2)),
        );
        assert!(dw.sub(&expect).is_zero_on_curve());

        // d(w²)/dz = p′ for both k = 2 and k = 3
        for curve in [weierstrass_curve(), halphen_curve()] {
            let wk = CurveFunction::from_poly(&curve, MultiPoly::var("w").pow(curve.k as u32));
            let dwk = wk.derivative_on_curve().unwrap();
            let expect = CurveFunction::from_poly(&curve, curve.p.derivative("z"));
            assert!(dwk.sub(&expect).is_zero_on_curve());
        }
    }

    #[test]
    fn leibniz_rule_on_samples() {
        let c = halphen_curve();
        let z = MultiPoly::var("z");
        let w = MultiPoly::var("w");
        let g3 = MultiPoly::var("g3");
        let samples = [
            CurveFunction::from_poly(&c, z.mul(&w).add(&g3)),
            CurveFunction::new(&c, w.pow(2).add(&z.pow(3)), z.add(&MultiPoly::from_int(2))),
            CurveFunction::from_poly(&c, w.pow(2).sub(&z.scale(&Rational::from(5)))),
        ];
        for f in &samples {
            for g in &samples {
                let lhs = f.mul(g).derivative_on_curve().unwrap();
                let rhs = f
                    .derivative_on_curve()
                    .unwrap()
                    .mul(g)
                    .add(&g.derivative_on_curve().unwrap().mul(f));
                assert!(lhs.sub(&rhs).is_zero_on_curve());
            }
        }
    }

    #[test]
    fn holomorphic_bases() {
        // elliptic curve: genus 1, {dz/w}
        let c = weierstrass_curve();
        let basis = holomorphic_basis(&c).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].label, "dz/w");

        // Halphen trigonal: {dz/w, dz/w², z dz/w²}
        let h = halphen_curve();
        let basis = holomorphic_basis(&h).unwrap();
        let labels: Vec<&str> = basis.iter().map(|d| d.label.as_str()).collect();
        assert_eq!(labels, ["dz/w", "dz/w^2", "z dz/w^2"]);

        // singular curves are refused
        let sing = PlaneCurve::new_singular(
            2,
            MultiPoly::var("z").pow(2).mul(
                &MultiPoly::var("g3")
                    .scale(&Rational::from(27))
                    .sub(&MultiPoly::var("z").pow(3).scale(&Rational::from(4))),
            ),
            "n2-equianharmonic",
        );
        assert!(matches!(
            holomorphic_basis(&sing),
            Err(CurveError::Singular(_))
        ));
    }

    #[test]
    fn normal_form_multiplicative_property() {
        let c = halphen_curve();
        let z = MultiPoly::var("z");
        let w = MultiPoly::var("w");
        let a = z.pow(2).add(&w.pow(2).scale(&Rational::from(3)));
        let b = w.pow(4).sub(&z.clone());
        let nf_ab = CurveFunction::from_poly(&c, a.mul(&b));
        let nf_a_nf_b = CurveFunction::from_poly(&c, a).mul(&CurveFunction::from_poly(&c, b));
        assert!(nf_ab.sub(&nf_a_nf_b).is_zero_on_curve());
    }

    #[test]
    fn curve_json_round_trip() {
        let h = halphen_curve();
        let j = CurveJson::from_curve(&h);
        let s = serde_json::to_string(&j).unwrap();
        let parsed: CurveJson = serde_json::from_str(&s).unwrap();
        let h2 = parsed.into_curve().unwrap();
        assert_eq!(h2.k, h.k);
        assert_eq!(h2.p, h.p);
    }
}
