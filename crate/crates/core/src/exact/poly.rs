//! Sparse multivariate polynomials over exact rationals.
//!
//! `MultiPoly` is the substrate for every symbolic computation in the crate:
//! spectral-curve factors, cover verification, radical-extension identities.
//! Terms live in a `BTreeMap` keyed by dense exponent vectors over an ordered
//! variable context; contexts are merged by symbol-name union so that equality
//! and arithmetic are well defined across polynomials built independently.
//!
//! Algebraic relations (`4e³ = g₂e + g₃`, `wᵏ = p(z)`, `u³ = 5`, `i² = −1`, …)
//! are expressed as [`RewriteRule`]s: `var^power → replacement` applied to a
//! fixed point. This one mechanism covers the root-of-the-cubic substitution,
//! curve normal forms and the radical adjunctions needed by the Halphen covers.

use super::rational::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Invariants: `vars` is sorted and duplicate-free, every exponent vector has
/// length `vars.len()`, and no stored coefficient is zero.
#[derive(Clone, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u16>, Rational>,
}

/// Rewrite rule `var^power → replacement`, with `deg_var(replacement) < power`
/// so that repeated application terminates.
#[derive(Clone, Debug)]
pub struct RewriteRule {
    pub var: String,
    pub power: u16,
    pub replacement: MultiPoly,
}

impl RewriteRule {
    pub fn new(var: &str, power: u16, replacement: MultiPoly) -> Self {
        assert!(power > 0);
        assert!(
            replacement.degree_in(var) < power as u32,
            "replacement must lower the degree in {var}"
        );
        RewriteRule {
            var: var.to_string(),
            power,
            replacement,
        }
    }
}

/// The defining relation of the Weierstrass cubic: `e` is a generic root of
/// `4t³ − g₂t − g₃`, i.e. `e³ → (g₂e + g₃)/4`.
pub fn e_cubic_rule() -> RewriteRule {
    let repl = MultiPoly::var("e")
        .scale(&Rational::from_pair(1, 4))
        .mul(&MultiPoly::var("g2"))
        .add(&MultiPoly::var("g3").scale(&Rational::from_pair(1, 4)));
    RewriteRule::new("e", 3, repl)
}

/// Reduce powers of `e` with the cubic relation `4e³ = g₂e + g₃`. Idempotent.
pub fn reduce_e(p: &MultiPoly) -> MultiPoly {
    p.reduce(&[e_cubic_rule()])
}

fn merge_vars(a: &[String], b: &[String]) -> (Vec<String>, Vec<usize>, Vec<usize>) {
    let mut merged: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
    merged.sort();
    merged.dedup();
    let map_a = a
        .iter()
        .map(|v| merged.binary_search(v).unwrap())
        .collect();
    let map_b = b
        .iter()
        .map(|v| merged.binary_search(v).unwrap())
        .collect();
    (merged, map_a, map_b)
}

fn remap_exp(exp: &[u16], map: &[usize], new_len: usize) -> Vec<u16> {
    let mut out = vec![0u16; new_len];
    for (i, &e) in exp.iter().enumerate() {
        out[map[i]] += e;
    }
    out
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from(n))
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(&[(name, 1)], Rational::one())
    }

    /// `coef · Π var^exp`.
    pub fn monomial(vars_exps: &[(&str, u16)], coef: Rational) -> Self {
        if coef.is_zero() {
            return Self::zero();
        }
        let mut pairs: Vec<(&str, u16)> = vars_exps.to_vec();
        pairs.sort_by_key(|(v, _)| *v);
        let mut vars = Vec::new();
        let mut exp = Vec::new();
        for (v, e) in pairs {
            if let Some(i) = vars.iter().position(|x: &String| x == v) {
                exp[i] += e;
            } else {
                vars.push(v.to_string());
                exp.push(e);
            }
        }
        let mut terms = BTreeMap::new();
        terms.insert(exp, coef);
        MultiPoly { vars, terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Constant term as a rational (the coefficient of the trivial monomial).
    pub fn constant_part(&self) -> Rational {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// If the polynomial is a constant, return it.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            Some(self.constant_part())
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            None => 0,
            Some(i) => self
                .terms
                .keys()
                .map(|e| e[i] as u32)
                .max()
                .unwrap_or(0),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    /// Re-express over the union context with `other`; returns both remapped.
    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let (vars, ma, mb) = merge_vars(&self.vars, &other.vars);
        let n = vars.len();
        let a = MultiPoly {
            vars: vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (remap_exp(e, &ma, n), c.clone()))
                .collect(),
        };
        let b = MultiPoly {
            vars,
            terms: other
                .terms
                .iter()
                .map(|(e, c)| (remap_exp(e, &mb, n), c.clone()))
                .collect(),
        };
        (a, b)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (e, c) in b.terms {
            let entry = a.terms.entry(e).or_insert_with(Rational::zero);
            *entry += c;
        }
        a.normalized()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let n = a.vars.len();
        let mut terms: BTreeMap<Vec<u16>, Rational> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let mut e = vec![0u16; n];
                for i in 0..n {
                    e[i] = ea[i] + eb[i];
                }
                let entry = terms.entry(e).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        MultiPoly {
            vars: a.vars,
            terms,
        }
        .normalized()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut result = Self::constant(Rational::one());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Coefficients with respect to `var`: entry `i` is the coefficient of
    /// `var^i` (a polynomial in the remaining context).
    pub fn coeffs_in(&self, var: &str) -> Vec<MultiPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![
            MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new()
            };
            d + 1
        ];
        match self.var_index(var) {
            None => {
                out[0] = self.clone();
            }
            Some(i) => {
                for (e, c) in &self.terms {
                    let k = e[i] as usize;
                    let mut e2 = e.clone();
                    e2[i] = 0;
                    out[k].terms.insert(e2, c.clone());
                }
            }
        }
        out
    }

    /// Substitute a polynomial for a variable.
    pub fn subst(&self, var: &str, value: &MultiPoly) -> Self {
        let coeffs = self.coeffs_in(var);
        let mut acc = MultiPoly::zero();
        // Horner over powers of `value`.
        for c in coeffs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    pub fn derivative(&self, var: &str) -> Self {
        match self.var_index(var) {
            None => Self::zero(),
            Some(i) => {
                let terms = self
                    .terms
                    .iter()
                    .filter(|(e, _)| e[i] > 0)
                    .map(|(e, c)| {
                        let mut e2 = e.clone();
                        e2[i] -= 1;
                        (e2, c * &Rational::from(e[i] as i64))
                    })
                    .collect();
                MultiPoly {
                    vars: self.vars.clone(),
                    terms,
                }
                .normalized()
            }
        }
    }

    /// Apply rewrite rules to a fixed point.
    pub fn reduce(&self, rules: &[RewriteRule]) -> Self {
        let mut p = self.clone();
        loop {
            let mut changed = false;
            for rule in rules {
                let idx = match p.var_index(&rule.var) {
                    Some(i) if p.terms.keys().any(|e| e[i] >= rule.power) => i,
                    _ => continue,
                };
                changed = true;
                let mut next = MultiPoly {
                    vars: p.vars.clone(),
                    terms: BTreeMap::new(),
                };
                let mut high = Vec::new();
                for (e, c) in &p.terms {
                    if e[idx] >= rule.power {
                        high.push((e.clone(), c.clone()));
                    } else {
                        next.terms.insert(e.clone(), c.clone());
                    }
                }
                let mut acc = next;
                for (mut e, c) in high {
                    e[idx] -= rule.power;
                    let mono = MultiPoly {
                        vars: p.vars.clone(),
                        terms: [(e, c)].into_iter().collect(),
                    };
                    acc = acc.add(&mono.mul(&rule.replacement));
                }
                p = acc;
            }
            if !changed {
                return p;
            }
        }
    }

    /// Leading term in lexicographic order over the (sorted) context.
    fn leading(&self) -> Option<(Vec<u16>, Rational)> {
        self.terms
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
    }

    /// Exact division: `Some(q)` with `self = q·div` when the division is
    /// exact, `None` otherwise.
    pub fn div_exact(&self, div: &Self) -> Option<Self> {
        assert!(!div.is_zero(), "division by zero polynomial");
        let (mut r, d) = self.aligned(div);
        let n = r.vars.len();
        let (ld_e, ld_c) = d.leading().unwrap();
        let mut q = MultiPoly {
            vars: r.vars.clone(),
            terms: BTreeMap::new(),
        };
        while !r.is_zero() {
            let (lr_e, lr_c) = r.leading().unwrap();
            let mut e = vec![0u16; n];
            for i in 0..n {
                if lr_e[i] < ld_e[i] {
                    return None;
                }
                e[i] = lr_e[i] - ld_e[i];
            }
            let c = &lr_c / &ld_c;
            let t = MultiPoly {
                vars: r.vars.clone(),
                terms: [(e, c)].into_iter().collect(),
            };
            q = q.add(&t);
            r = r.sub(&t.mul(&d));
        }
        Some(q)
    }

    /// Greatest common rational content of the coefficients (positive), with
    /// the convention content(0) = 1.
    pub fn content(&self) -> Rational {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return Rational::one();
        }
        let mut num_gcd = BigInt::from(0);
        let mut den_lcm = BigInt::from(1);
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rational::new(num_gcd, den_lcm)
    }

    /// Indices of variables that occur with a positive exponent.
    fn used_vars(&self) -> Vec<bool> {
        let mut used = vec![false; self.vars.len()];
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                used[i] |= k > 0;
            }
        }
        used
    }

    /// Evaluate with `f64` values; `env` is queried only for variables that
    /// actually occur.
    pub fn eval_f64(&self, env: &dyn Fn(&str) -> f64) -> f64 {
        let used = self.used_vars();
        let vals: Vec<f64> = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| if used[i] { env(v) } else { 0.0 })
            .collect();
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = c.to_f64();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= vals[i].powi(k as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluate with complex values; `env` is queried only for variables that
    /// actually occur.
    pub fn eval_complex(
        &self,
        env: &dyn Fn(&str) -> num_complex::Complex64,
    ) -> num_complex::Complex64 {
        let used = self.used_vars();
        let zero = num_complex::Complex64::new(0.0, 0.0);
        let vals: Vec<num_complex::Complex64> = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| if used[i] { env(v) } else { zero })
            .collect();
        let mut acc = zero;
        for (e, c) in &self.terms {
            let mut t = num_complex::Complex64::new(c.to_f64(), 0.0);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= vals[i].powu(k as u32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Iterate terms as (exponent-vector, coefficient) against `vars()`.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Rational)> {
        self.terms.iter()
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // High-degree terms first reads better for curve equations.
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], k)
                    }
                })
                .collect();
            let mono = mono.join("*");
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", c, mono)?;
            }
        }
        Ok(())
    }
}

/// JSON form: `{"vars": [...], "terms": [{"exp": [...], "coef": "n/d"}]}`.
#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u16>,
    coef: Rational,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| TermJson {
                exp: e.clone(),
                coef: c.clone(),
            })
            .collect();
        PolyJson {
            vars: self.vars.clone(),
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = PolyJson::deserialize(d)?;
        let mut sorted = raw.vars.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != raw.vars.len() {
            return Err(D::Error::custom("duplicate variable in context"));
        }
        let map: Vec<usize> = raw
            .vars
            .iter()
            .map(|v| sorted.binary_search(v).unwrap())
            .collect();
        let n = sorted.len();
        let mut terms: BTreeMap<Vec<u16>, Rational> = BTreeMap::new();
        for t in raw.terms {
            if t.exp.len() != raw.vars.len() {
                return Err(D::Error::custom(format!(
                    "exponent vector length {} does not match {} variables",
                    t.exp.len(),
                    raw.vars.len()
                )));
            }
            if t.coef.is_zero() {
                continue;
            }
            let e = remap_exp(&t.exp, &map, n);
            let entry = terms.entry(e).or_insert_with(Rational::zero);
            *entry += t.coef;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(MultiPoly {
            vars: sorted,
            terms,
        })
    }
}

/// Resultant of `p` and `q` with respect to `var`, as the determinant of the
/// Sylvester matrix (computed fraction-free).
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly, String> {
    let m = p.degree_in(var) as usize;
    let n = q.degree_in(var) as usize;
    if m == 0 || n == 0 {
        return Err(format!("not bivariate in {var}: degrees {m} and {n}"));
    }
    let pc = p.coeffs_in(var);
    let qc = q.coeffs_in(var);
    let size = m + n;
    let mut rows: Vec<Vec<MultiPoly>> = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![MultiPoly::zero(); size];
        for (j, c) in pc.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![MultiPoly::zero(); size];
        for (j, c) in qc.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    Ok(super::matrix::det_bareiss(rows))
}

/// Norm of `f` over the three roots of the monic cubic
/// `t³ − s₁t² + s₂t − s₃`: computes `Π f(eᵢ)` by evaluating `f` on the
/// companion matrix and taking the determinant. `f` must have degree ≤ 2 in
/// `var` (reduce with the cubic relation first).
pub fn product_over_cubic_roots(
    f: &MultiPoly,
    var: &str,
    s1: &MultiPoly,
    s2: &MultiPoly,
    s3: &MultiPoly,
) -> MultiPoly {
    let coeffs = f.coeffs_in(var);
    assert!(
        coeffs.len() <= 3,
        "degree in {var} must be ≤ 2 after reduction"
    );
    let a = coeffs.first().cloned().unwrap_or_else(MultiPoly::zero);
    let b = coeffs.get(1).cloned().unwrap_or_else(MultiPoly::zero);
    let c = coeffs.get(2).cloned().unwrap_or_else(MultiPoly::zero);
    // Companion matrix M of t³ − s₁t² + s₂t − s₃ in the basis {1, t, t²}:
    // columns M·1 = t, M·t = t², M·t² = s₃·1 − s₂·t + s₁·t².
    let zero = MultiPoly::zero;
    let one = || MultiPoly::from_int(1);
    let m = [
        [zero(), zero(), s3.clone()],
        [one(), zero(), s2.neg()],
        [zero(), one(), s1.clone()],
    ];
    // f(M) = a·I + b·M + c·M².
    let mut m2 = [
        [zero(), zero(), zero()],
        [zero(), zero(), zero()],
        [zero(), zero(), zero()],
    ];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = MultiPoly::zero();
            for k in 0..3 {
                acc = acc.add(&m[i][k].mul(&m[k][j]));
            }
            m2[i][j] = acc;
        }
    }
    let mut fm = [
        [zero(), zero(), zero()],
        [zero(), zero(), zero()],
        [zero(), zero(), zero()],
    ];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = m[i][j].mul(&b).add(&m2[i][j].mul(&c));
            if i == j {
                acc = acc.add(&a);
            }
            fm[i][j] = acc;
        }
    }
    // 3×3 determinant by cofactors.
    let det = fm[0][0]
        .mul(&fm[1][1].mul(&fm[2][2]).sub(&fm[1][2].mul(&fm[2][1])))
        .sub(&fm[0][1].mul(&fm[1][0].mul(&fm[2][2]).sub(&fm[1][2].mul(&fm[2][0]))))
        .add(&fm[0][2].mul(&fm[1][0].mul(&fm[2][1]).sub(&fm[1][1].mul(&fm[2][0]))));
    det
}

/// `Π f(eᵢ)` over the roots of `4t³ − g₂t − g₃` (σ₁ = 0, σ₂ = −g₂/4,
/// σ₃ = g₃/4), for `f` with generic-root variable `e`.
pub fn product_over_weierstrass_roots(f: &MultiPoly) -> MultiPoly {
    let f = reduce_e(f);
    let s1 = MultiPoly::zero();
    let s2 = MultiPoly::var("g2").scale(&Rational::from_pair(-1, 4));
    let s3 = MultiPoly::var("g3").scale(&Rational::from_pair(1, 4));
    product_over_cubic_roots(&f, "e", &s1, &s2, &s3)
}

#[cfg(test)]
mod tests {
    use super::*;

    use super::super::expr::poly as p;

    #[test]
    fn difference_of_squares() {
        let a = p("z + 1");
        let b = p("z - 1");
        assert_eq!(a.mul(&b), p("z^2 - 1"));
    }

    #[test]
    fn additive_identity() {
        let a = p("4 t^3 - g2 t - g3");
        assert_eq!(a.add(&MultiPoly::zero()), a);
    }

    #[test]
    fn symmetric_cube_product() {
        // Π (z + 3eᵢ) over the roots of 4t³ − g₂t − g₃.
        let f = p("z + 3 e");
        let got = product_over_weierstrass_roots(&f);
        let want = p("z^3 - 9/4 g2 z + 27/4 g3");
        assert_eq!(got, want);
    }

    #[test]
    fn symmetric_product_matches_numeric_roots() {
        // Independent oracle: substitute numeric roots of 4t³ − g₂t − g₃.
        let f = p("z + 3 e");
        let sym = product_over_weierstrass_roots(&f);
        for (g2v, g3v) in [(4.0, 1.0), (2.0, 0.5), (7.0, -2.0)] {
            let roots = crate::numeric::real_cubic_roots(g2v, g3v);
            assert_eq!(roots.len(), 3);
            for zv in [-1.3, 0.0, 2.7] {
                let direct: f64 = roots.iter().map(|e| zv + 3.0 * e).product();
                let via_sym = sym.eval_f64(&|v| match v {
                    "z" => zv,
                    "g2" => g2v,
                    "g3" => g3v,
                    _ => unreachable!(),
                });
                assert!(
                    (direct - via_sym).abs() < 1e-9 * (1.0 + direct.abs()),
                    "mismatch at z={zv} g2={g2v} g3={g3v}: {direct} vs {via_sym}"
                );
            }
        }
    }

    #[test]
    fn reduce_e_examples() {
        let e3 = p("e^3");
        assert_eq!(reduce_e(&e3), p("1/4 g2 e + 1/4 g3"));
        let e4 = p("e^4");
        assert_eq!(reduce_e(&e4), p("1/4 g2 e^2 + 1/4 g3 e"));
        let rel = p("4 e^3 - g2 e - g3");
        assert!(reduce_e(&rel.pow(2)).is_zero());
        // idempotent
        let q = p("e^5 + z e^4 - 2 e");
        assert_eq!(reduce_e(&reduce_e(&q)), reduce_e(&q));
    }

    #[test]
    fn resultant_examples() {
        // Res_x(x²−1, x−2) = p(2) = 3
        let r = resultant(&p("x^2 - 1"), &p("x - 2"), "x").unwrap();
        assert_eq!(r, p("3"));
        // Res_x(x−a, x−b) = ±(a−b); Sylvester convention gives b − a here:
        // det [[1, −a],[1, −b]] = −b + a ... fixed by the determinant itself.
        let r = resultant(&p("x - a"), &p("x - b"), "x").unwrap();
        assert!(r == p("a - b") || r == p("b - a"));
        // degree-zero input errors
        assert!(resultant(&p("a"), &p("x - b"), "x").is_err());
    }

    #[test]
    fn resultant_detects_common_root() {
        // (x − t)(x − 1) and (x − t)(x + 2) share the root t.
        let a = p("x - t").mul(&p("x - 1"));
        let b = p("x - t").mul(&p("x + 2"));
        assert!(resultant(&a, &b, "x").unwrap().is_zero());
        let c = p("x - t").mul(&p("x - 1"));
        let d = p("x + 2").mul(&p("x - 3"));
        assert!(!resultant(&c, &d, "x").unwrap().is_zero());
    }

    #[test]
    fn exact_division() {
        let a = p("z^2 - 1");
        let q = a.div_exact(&p("z - 1")).unwrap();
        assert_eq!(q, p("z + 1"));
        assert!(a.div_exact(&p("z - 2")).is_none());
    }

    #[test]
    fn subst_and_derivative() {
        let f = p("z^3 - 2 z");
        let g = f.subst("z", &p("w + 1"));
        let back = g.subst("w", &p("z - 1"));
        assert_eq!(back, f);
        assert_eq!(f.derivative("z"), p("3 z^2 - 2"));
    }

    #[test]
    fn json_round_trip() {
        let f = p("4 z^3 - g2 z - g3");
        let s = serde_json::to_string(&f).unwrap();
        let g: MultiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        assert!(s.contains("\"vars\""));
    }
}
