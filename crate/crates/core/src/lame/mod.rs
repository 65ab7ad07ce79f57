//! Lamé spectral curves by the finite-form eigenfunction ansatz.
//!
//! For integer n the operator `L = d²/dξ² − n(n+1)℘(ξ)` acting on the four
//! finite-dimensional ansatz spaces (one symmetric type, three root-attached
//! types built from `sᵢ = √(℘ − eᵢ)`) closes exactly; the characteristic
//! polynomials of the four operator blocks are the factors `f_s`, `f_i` of the
//! spectral curve `w² = f_s(z)·Π f_i(z)`. Everything here is exact over
//! ℚ[g₂, g₃] with a generic Weierstrass root `e` reduced by `4e³ = g₂e + g₃`.
//!
//! The independent oracle is [`series_residual_check_exact`]: substitute the
//! constructed eigenfunction into the Lamé equation as a Laurent series in ξ
//! and demand that every coefficient vanish identically.

pub mod series;

use crate::exact::{
    e_cubic_rule, product_over_weierstrass_roots, reduce_e, MultiPoly, PolyMatrix, Rational,
    RewriteRule,
};
use crate::numeric::{poly_roots, real_cubic_roots};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use series::{weierstrass_p_exact, weierstrass_p_numeric, Series};

#[derive(Debug, thiserror::Error)]
pub enum LameError {
    #[error("n must be ≥ 1, got {0}")]
    BadN(i64),
    #[error("n = {0} exceeds the configured maximum {1}")]
    NTooLarge(u32, u32),
    #[error("ansatz type is empty for this n")]
    EmptyType,
    #[error("series order {0} too small; need at least {1}")]
    OrderTooSmall(usize, usize),
    #[error("z* is not an eigenvalue: {0}")]
    NotARoot(String),
}

pub const MAX_N: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AnsatzKind {
    Symmetric,
    RootAttached,
}

/// One of the four eigenfunction types for a given n.
///
/// `prefactor[i] = 1` means the factor `sᵢ = √(℘ − eᵢ)` is present; the
/// polynomial part has degree `poly_degree` in ℘ (`None` marks the empty
/// symmetric type at n = 1).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnsatzType {
    pub parity: Parity,
    pub kind: AnsatzKind,
    pub attached_root: Option<usize>,
    pub prefactor: [u8; 3],
    pub poly_degree: Option<u32>,
}

impl AnsatzType {
    pub fn dimension(&self) -> usize {
        self.poly_degree.map(|d| d as usize + 1).unwrap_or(0)
    }
}

/// The four ansatz types for n: one symmetric and three root-attached, with
/// dimensions summing to 2n+1.
pub fn enumerate_types(n: i64) -> Result<Vec<AnsatzType>, LameError> {
    if n < 1 {
        return Err(LameError::BadN(n));
    }
    let n = n as u32;
    let mut out = Vec::with_capacity(4);
    if n % 2 == 0 {
        out.push(AnsatzType {
            parity: Parity::Even,
            kind: AnsatzKind::Symmetric,
            attached_root: None,
            prefactor: [0, 0, 0],
            poly_degree: Some(n / 2),
        });
        for i in 0..3usize {
            let mut pref = [1u8; 3];
            pref[i] = 0; // root i attaches the product s_j s_k, j,k ≠ i
            out.push(AnsatzType {
                parity: Parity::Even,
                kind: AnsatzKind::RootAttached,
                attached_root: Some(i + 1),
                prefactor: pref,
                poly_degree: Some(n / 2 - 1),
            });
        }
    } else {
        out.push(AnsatzType {
            parity: Parity::Odd,
            kind: AnsatzKind::Symmetric,
            attached_root: None,
            prefactor: [1, 1, 1],
            poly_degree: if n >= 3 { Some((n - 3) / 2) } else { None },
        });
        for i in 0..3usize {
            let mut pref = [0u8; 3];
            pref[i] = 1;
            out.push(AnsatzType {
                parity: Parity::Odd,
                kind: AnsatzKind::RootAttached,
                attached_root: Some(i + 1),
                prefactor: pref,
                poly_degree: Some((n - 1) / 2),
            });
        }
    }
    debug_assert_eq!(
        out.iter().map(|t| t.dimension()).sum::<usize>(),
        2 * n as usize + 1
    );
    Ok(out)
}

fn var(name: &str) -> MultiPoly {
    MultiPoly::var(name)
}

/// Image of the basis element `prefactor·℘^r` under `d²/dξ² − n(n+1)℘`,
/// written as `prefactor·(polynomial in ℘)`; returns that polynomial over
/// ℚ[e, g₂, g₃], e-reduced.
///
/// Derivation uses only `d℘ = ℘′`, `dsᵢ = sⱼs_k`, `sᵢ² = ℘ − eᵢ`,
/// `(℘′)² = 4Π(℘ − eᵢ)`, `℘″ = 6℘² − g₂/2` and the symmetric-function
/// identities `eⱼ + e_k = −eᵢ`, `eⱼe_k = eᵢ² − g₂/4` for the two roots not
/// attached generically.
fn operator_image(n: u32, ty: &AnsatzType, r: u32) -> MultiPoly {
    let p = var("P");
    let e = var("e");
    let g2 = var("g2");
    let g3 = var("g3");
    let nn1 = MultiPoly::from_int((n as i64) * (n as i64 + 1));

    let q = p.pow(r);
    let qp = if r == 0 {
        MultiPoly::zero()
    } else {
        p.pow(r - 1).scale(&Rational::from(r as i64))
    };
    let qpp = if r < 2 {
        MultiPoly::zero()
    } else {
        p.pow(r - 2).scale(&Rational::from((r * (r - 1)) as i64))
    };

    // (℘′)² and ℘″ as polynomials in ℘.
    let dp2 = p
        .pow(3)
        .scale(&Rational::from(4))
        .sub(&g2.mul(&p))
        .sub(&g3);
    let ppp = p
        .pow(2)
        .scale(&Rational::from(6))
        .sub(&g2.scale(&Rational::from_pair(1, 2)));
    // (℘ − eⱼ)(℘ − e_k) with the attached root generic.
    let quad = p
        .pow(2)
        .add(&e.mul(&p))
        .add(&e.pow(2))
        .sub(&g2.scale(&Rational::from_pair(1, 4)));
    let lin = p.scale(&Rational::from(2)).add(&e);
    let pme = p.sub(&e);

    let image = match (ty.kind, ty.parity) {
        // f = Q(℘): f″ = Q″(℘′)² + Q′℘″
        (AnsatzKind::Symmetric, Parity::Even) => qpp
            .mul(&dp2)
            .add(&qp.mul(&ppp))
            .sub(&nn1.mul(&p).mul(&q)),
        // f = sⱼs_k Q: f″/(sⱼs_k) = R + 2(℘−eᵢ)R′, R = (2℘+eᵢ)Q + 2(℘−eⱼ)(℘−e_k)Q′
        (AnsatzKind::RootAttached, Parity::Even) => {
            let r_poly = lin.mul(&q).add(&quad.mul(&qp).scale(&Rational::from(2)));
            let rp = r_poly.derivative("P");
            r_poly
                .add(&pme.mul(&rp).scale(&Rational::from(2)))
                .sub(&nn1.mul(&p).mul(&q))
        }
        // f = sᵢQ: f″/sᵢ = (2℘+eᵢ)R + 2(℘−eⱼ)(℘−e_k)R′, R = Q + 2(℘−eᵢ)Q′
        (AnsatzKind::RootAttached, Parity::Odd) => {
            let r_poly = q.add(&pme.mul(&qp).scale(&Rational::from(2)));
            let rp = r_poly.derivative("P");
            lin.mul(&r_poly)
                .add(&quad.mul(&rp).scale(&Rational::from(2)))
                .sub(&nn1.mul(&p).mul(&q))
        }
        // f = (℘′/2)Q: f′ = S(℘), S = (3℘²−g₂/4)Q + ((℘′)²/2)Q′; f″ = ℘′·S′
        (AnsatzKind::Symmetric, Parity::Odd) => {
            let s = p
                .pow(2)
                .scale(&Rational::from(3))
                .sub(&g2.scale(&Rational::from_pair(1, 4)))
                .mul(&q)
                .add(&dp2.scale(&Rational::from_pair(1, 2)).mul(&qp));
            s.derivative("P")
                .scale(&Rational::from(2))
                .sub(&nn1.mul(&p).mul(&q))
        }
    };
    reduce_e(&image)
}

/// Square matrix of `d²/dξ² − n(n+1)℘` on the type's basis
/// `{prefactor·℘^r, 0 ≤ r ≤ d}`, over ℚ[g₂, g₃, e].
pub fn operator_matrix(n: u32, ty: &AnsatzType) -> Result<PolyMatrix, LameError> {
    let d = ty.poly_degree.ok_or(LameError::EmptyType)? as usize;
    let dim = d + 1;
    let mut m = PolyMatrix::zero(dim, dim);
    for r in 0..=d {
        let image = operator_image(n, ty, r as u32);
        let coeffs = image.coeffs_in("P");
        assert!(
            coeffs.len() <= dim,
            "ansatz space not invariant: image degree {} > {} (n={}, type {:?})",
            coeffs.len() - 1,
            d,
            n,
            ty
        );
        for (i, c) in coeffs.iter().enumerate() {
            *m.get_mut(i, r) = c.clone();
        }
    }
    Ok(m)
}

/// The assembled spectral-curve data for one n.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralCurveResult {
    pub n: u32,
    /// Symmetric factor, free of `e` after reduction.
    pub f_s: MultiPoly,
    /// Root-attached factor with the generic root `e`.
    pub f_i: MultiPoly,
    /// `f_s·Π f_i` with the product taken over the three roots, monic in z.
    pub expanded: MultiPoly,
    /// Leading-coefficient convention of `expanded` (monic here).
    pub normalization: Rational,
}

/// Construct the Lamé spectral curve for n by the finite-form ansatz.
pub fn lame_curve(n: u32) -> Result<SpectralCurveResult, LameError> {
    if n < 1 {
        return Err(LameError::BadN(n as i64));
    }
    if n > MAX_N {
        return Err(LameError::NTooLarge(n, MAX_N));
    }
    let types = enumerate_types(n as i64)?;
    let sym = &types[0];
    let attached = &types[1];

    let f_s = if sym.dimension() == 0 {
        MultiPoly::from_int(1)
    } else {
        reduce_e(&operator_matrix(n, sym)?.charpoly("z"))
    };
    assert!(
        f_s.degree_in("e") == 0,
        "symmetric factor must not involve the generic root"
    );
    let f_i = reduce_e(&operator_matrix(n, attached)?.charpoly("z"));

    let deg_fs = f_s.degree_in("z");
    let deg_fi = f_i.degree_in("z");
    assert_eq!(
        deg_fs + 3 * deg_fi,
        2 * n + 1,
        "dimension bookkeeping broken at n = {n}"
    );

    let prod = product_over_weierstrass_roots(&f_i);
    let expanded = f_s.mul(&prod);
    assert_eq!(expanded.degree_in("z"), 2 * n + 1);

    Ok(SpectralCurveResult {
        n,
        f_s,
        f_i,
        expanded,
        normalization: Rational::one(),
    })
}

/// How the eigenvalue is specified when extracting an exact eigenvector.
#[derive(Clone, Debug)]
pub enum Eigenvalue {
    /// The generic root `zs` of the type's characteristic polynomial.
    GenericRoot,
    /// An exact rational eigenvalue.
    Exact(Rational),
}

fn adjugate(m: &PolyMatrix) -> PolyMatrix {
    let n = m.rows();
    if n == 1 {
        return PolyMatrix::identity(1);
    }
    let mut adj = PolyMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            // cofactor C_ji goes to entry (i, j)
            let mut sub = Vec::with_capacity((n - 1) * (n - 1));
            for r in 0..n {
                if r == j {
                    continue;
                }
                for c in 0..n {
                    if c == i {
                        continue;
                    }
                    sub.push(m.get(r, c).clone());
                }
            }
            let minor = PolyMatrix::new(n - 1, n - 1, sub).det_cofactor();
            *adj.get_mut(i, j) = if (i + j) % 2 == 0 { minor } else { minor.neg() };
        }
    }
    adj
}

/// Rewrite rule `zs^d → zs^d − charpoly(zs)` expressing that `zs` is a root.
fn charpoly_rule(cp: &MultiPoly) -> RewriteRule {
    let d = cp.degree_in("z") as u16;
    let zs = var("zs");
    let cp_zs = cp.subst("z", &zs);
    let repl = zs.pow(d as u32).sub(&cp_zs);
    RewriteRule::new("zs", d, repl)
}

/// Exact kernel vector of `z*·I − M` for the given ansatz type, in the basis
/// `{prefactor·℘^r}` (columns of the adjugate). Normalized so the last nonzero
/// entry is 1 when that division is exact in the quotient ring; otherwise the
/// unnormalized kernel column is returned.
pub fn eigenfunction_exact(
    n: u32,
    ty: &AnsatzType,
    z_star: &Eigenvalue,
) -> Result<Vec<MultiPoly>, LameError> {
    let m = operator_matrix(n, ty)?;
    let dim = m.rows();
    let cp = reduce_e(&m.charpoly("z"));
    let (zs, rules): (MultiPoly, Vec<RewriteRule>) = match z_star {
        Eigenvalue::GenericRoot => {
            let rule = charpoly_rule(&cp);
            (var("zs"), vec![e_cubic_rule(), rule])
        }
        Eigenvalue::Exact(r) => {
            let v = MultiPoly::constant(r.clone());
            let check = reduce_e(&cp.subst("z", &v));
            if !check.is_zero() {
                return Err(LameError::NotARoot(format!("charpoly({r}) = {check} ≠ 0")));
            }
            (v, vec![e_cubic_rule()])
        }
    };
    let mut a = PolyMatrix::zero(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut entry = m.get(i, j).neg();
            if i == j {
                entry = entry.add(&zs);
            }
            *a.get_mut(i, j) = entry;
        }
    }
    let adj = adjugate(&a);
    for col in 0..dim {
        let column: Vec<MultiPoly> = (0..dim).map(|i| adj.get(i, col).reduce(&rules)).collect();
        if column.iter().all(|c| c.is_zero()) {
            continue;
        }
        let last = column.iter().rposition(|c| !c.is_zero()).unwrap();
        let pivot = column[last].clone();
        let mut normalized = Vec::with_capacity(dim);
        let mut ok = true;
        for c in &column {
            match c.div_exact(&pivot) {
                Some(q) => normalized.push(q.reduce(&rules)),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        return Ok(if ok { normalized } else { column });
    }
    Err(LameError::NotARoot(
        "adjugate vanished identically (eigenvalue of higher multiplicity)".to_string(),
    ))
}

/// Numeric kernel vector of `z*·I − M` with invariants and the attached root
/// instantiated; rejects `z*` when `det(z*I − M)` is not small.
pub fn eigenfunction_numeric(
    n: u32,
    ty: &AnsatzType,
    z_star: Complex64,
    g2: Complex64,
    g3: Complex64,
    e: Complex64,
    tol: f64,
) -> Result<Vec<Complex64>, LameError> {
    let m = operator_matrix(n, ty)?;
    let dim = m.rows();
    let env = |v: &str| match v {
        "g2" => g2,
        "g3" => g3,
        "e" => e,
        other => panic!("unexpected variable {other} in operator matrix"),
    };
    let mut a = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = -m.get(i, j).eval_complex(&env);
            if i == j {
                *slot += z_star;
            }
        }
    }
    let det = numeric_det(&a);
    let scale: f64 = a.iter().flatten().map(|x| x.norm()).fold(1.0, f64::max);
    if det.norm() > tol * scale.powi(dim as i32) {
        return Err(LameError::NotARoot(format!(
            "determinant {:.3e} above tolerance",
            det.norm()
        )));
    }
    let adj = numeric_adjugate(&a);
    let mut best: Option<Vec<Complex64>> = None;
    let mut best_norm = 0.0;
    for col in 0..dim {
        let column: Vec<Complex64> = (0..dim).map(|i| adj[i][col]).collect();
        let norm: f64 = column.iter().map(|x| x.norm()).sum();
        if norm > best_norm {
            best_norm = norm;
            best = Some(column);
        }
    }
    let column = best.ok_or_else(|| LameError::NotARoot("zero adjugate".to_string()))?;
    let last = column
        .iter()
        .rposition(|c| c.norm() > 1e-12 * best_norm.max(1e-300))
        .unwrap();
    let pivot = column[last];
    Ok(column.into_iter().map(|c| c / pivot).collect())
}

fn numeric_det(a: &[Vec<Complex64>]) -> Complex64 {
    let n = a.len();
    let mut m: Vec<Vec<Complex64>> = a.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&i, &j| m[i][k].norm().partial_cmp(&m[j][k].norm()).unwrap())
            .unwrap();
        if m[piv][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != k {
            m.swap(piv, k);
            det = -det;
        }
        det *= m[k][k];
        let inv = Complex64::new(1.0, 0.0) / m[k][k];
        for i in k + 1..n {
            let f = m[i][k] * inv;
            for j in k..n {
                let sub = f * m[k][j];
                m[i][j] -= sub;
            }
        }
    }
    det
}

fn numeric_adjugate(a: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    if n == 1 {
        return vec![vec![Complex64::new(1.0, 0.0)]];
    }
    let mut adj = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut sub = Vec::with_capacity(n - 1);
            for r in 0..n {
                if r == j {
                    continue;
                }
                let mut row = Vec::with_capacity(n - 1);
                for c in 0..n {
                    if c == i {
                        continue;
                    }
                    row.push(a[r][c]);
                }
                sub.push(row);
            }
            let minor = numeric_det(&sub);
            adj[i][j] = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    adj
}

/// Prefactor of the type as an exact Laurent series (generic root `e`).
fn prefactor_series_exact(ty: &AnsatzType, n_coeffs: usize) -> Series<MultiPoly> {
    let p = weierstrass_p_exact(n_coeffs);
    match (ty.kind, ty.parity) {
        (AnsatzKind::Symmetric, Parity::Even) => {
            Series::constant(MultiPoly::from_int(1), n_coeffs)
        }
        // sⱼs_k = √(℘² + e℘ + e² − g₂/4)
        (AnsatzKind::RootAttached, Parity::Even) => {
            let e = var("e");
            let shift = e.pow(2).sub(&var("g2").scale(&Rational::from_pair(1, 4)));
            p.pow(2)
                .add(&p.scale(&e))
                .add(&Series::constant(shift, n_coeffs))
                .sqrt_unit()
        }
        // sᵢ = √(℘ − e)
        (AnsatzKind::RootAttached, Parity::Odd) => {
            p.sub(&Series::constant(var("e"), n_coeffs)).sqrt_unit()
        }
        // s₁s₂s₃ = ℘′/2
        (AnsatzKind::Symmetric, Parity::Odd) => p
            .derivative()
            .scale(&MultiPoly::constant(Rational::from_pair(1, 2))),
    }
}

fn prefactor_series_numeric(
    ty: &AnsatzType,
    n_coeffs: usize,
    g2: Complex64,
    g3: Complex64,
    e: Complex64,
) -> Series<Complex64> {
    let exact = prefactor_series_exact(ty, n_coeffs);
    let coeffs = exact
        .coeffs
        .iter()
        .map(|c| {
            c.eval_complex(&|v| match v {
                "g2" => g2,
                "g3" => g3,
                "e" => e,
                other => panic!("unexpected variable {other}"),
            })
        })
        .collect();
    Series::new(exact.lead, coeffs)
}

/// Exact series residual of the candidate eigenfunction for `z*`: substitutes
/// `prefactor·Σ v_r ℘^r` into the Lamé equation and reduces every Laurent
/// coefficient modulo the cubic relation and the characteristic polynomial of
/// `z*`. Returns the largest surviving coefficient magnitude — exactly 0 for
/// true eigenfunctions.
pub fn series_residual_check_exact(
    n: u32,
    ty: &AnsatzType,
    z_star: &Eigenvalue,
    order: usize,
) -> Result<f64, LameError> {
    let min_order = 2 * n as usize + 4;
    if order < min_order {
        return Err(LameError::OrderTooSmall(order, min_order));
    }
    let vec = eigenfunction_exact(n, ty, z_star)?;
    let m = operator_matrix(n, ty)?;
    let cp = reduce_e(&m.charpoly("z"));
    let (z_poly, rules): (MultiPoly, Vec<RewriteRule>) = match z_star {
        Eigenvalue::GenericRoot => (var("zs"), vec![e_cubic_rule(), charpoly_rule(&cp)]),
        Eigenvalue::Exact(r) => (MultiPoly::constant(r.clone()), vec![e_cubic_rule()]),
    };

    let n_coeffs = order + 2 * n as usize + 10;
    let p = weierstrass_p_exact(n_coeffs);
    let pref = prefactor_series_exact(ty, n_coeffs);
    let mut w = Series::constant(MultiPoly::zero(), n_coeffs);
    for (r, v) in vec.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        w = w.add(&pref.mul(&p.pow(r as u32)).scale(v));
    }
    let nn1 = MultiPoly::from_int((n as i64) * (n as i64 + 1));
    let residual = w
        .derivative()
        .derivative()
        .sub(&p.mul(&w).scale(&nn1))
        .sub(&w.scale(&z_poly));

    let mut max = 0.0f64;
    for (i, c) in residual.coeffs.iter().enumerate() {
        let exp = residual.lead + i as i32;
        if exp > order as i32 {
            break;
        }
        let reduced = c.reduce(&rules);
        if !reduced.is_zero() {
            let norm: f64 = reduced.terms().map(|(_, coef)| coef.to_f64().abs()).sum();
            max = max.max(norm);
        }
    }
    Ok(max)
}

/// Numeric analogue of the series residual, for floating `z*` (and numeric
/// invariants). Non-eigenvalues produce a decisively nonzero residual.
pub fn series_residual_check_numeric(
    n: u32,
    ty: &AnsatzType,
    z_star: Complex64,
    g2: Complex64,
    g3: Complex64,
    e: Complex64,
    order: usize,
) -> Result<f64, LameError> {
    let min_order = 2 * n as usize + 4;
    if order < min_order {
        return Err(LameError::OrderTooSmall(order, min_order));
    }
    // the residual itself is the judge, so accept any z* here
    let vec = eigenfunction_numeric(n, ty, z_star, g2, g3, e, f64::INFINITY)?;
    let n_coeffs = order + 2 * n as usize + 10;
    let p = weierstrass_p_numeric(n_coeffs, g2, g3);
    let pref = prefactor_series_numeric(ty, n_coeffs, g2, g3, e);
    let zero = Complex64::new(0.0, 0.0);
    let mut w = Series::constant(zero, n_coeffs);
    for (r, v) in vec.iter().enumerate() {
        w = w.add(&pref.mul(&p.pow(r as u32)).scale(v));
    }
    let nn1 = Complex64::new((n * (n + 1)) as f64, 0.0);
    let residual = w
        .derivative()
        .derivative()
        .sub(&p.mul(&w).scale(&nn1))
        .sub(&w.scale(&z_star));
    let mut max = 0.0f64;
    for (i, c) in residual.coeffs.iter().enumerate() {
        let exp = residual.lead + i as i32;
        if exp > order as i32 {
            break;
        }
        max = max.max(c.norm());
    }
    Ok(max)
}

/// Band edges at numeric invariants, computed from the four operator matrices
/// (numeric Faddeev–LeVerrier then root finding) — the oracle side of the
/// expanded-curve consistency check.
pub fn band_edges_from_matrices(n: u32, g2: f64, g3: f64) -> Result<Vec<Complex64>, LameError> {
    let roots = real_cubic_roots(g2, g3);
    let types = enumerate_types(n as i64)?;
    let mut edges = Vec::with_capacity(2 * n as usize + 1);
    for ty in &types {
        if ty.dimension() == 0 {
            continue;
        }
        let m = operator_matrix(n, ty)?;
        let e_values: Vec<Complex64> = match ty.kind {
            AnsatzKind::Symmetric => vec![Complex64::new(0.0, 0.0)],
            AnsatzKind::RootAttached => {
                let i = ty.attached_root.unwrap() - 1;
                vec![Complex64::new(roots[i], 0.0)]
            }
        };
        for e in e_values {
            let dim = m.rows();
            let mut num = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
            for (i, row) in num.iter_mut().enumerate() {
                for (j, slot) in row.iter_mut().enumerate() {
                    *slot = m.get(i, j).eval_complex(&|v| match v {
                        "g2" => Complex64::new(g2, 0.0),
                        "g3" => Complex64::new(g3, 0.0),
                        "e" => e,
                        other => panic!("unexpected variable {other}"),
                    });
                }
            }
            edges.extend(numeric_eigenvalues(&num));
        }
    }
    Ok(edges)
}

/// Eigenvalues via the numeric characteristic polynomial (Faddeev–LeVerrier)
/// and Durand–Kerner roots.
fn numeric_eigenvalues(a: &[Vec<Complex64>]) -> Vec<Complex64> {
    let n = a.len();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let mut mk = a.to_vec();
    for k in 1..=n {
        let tr: Complex64 = (0..n).map(|i| mk[i][i]).sum();
        let ck = -tr / (k as f64);
        coeffs[n - k] = ck;
        if k < n {
            for (i, row) in mk.iter_mut().enumerate() {
                row[i] += ck;
            }
            let mut next = vec![vec![Complex64::new(0.0, 0.0); n]; n];
            for (i, row) in next.iter_mut().enumerate() {
                for (j, slot) in row.iter_mut().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for l in 0..n {
                        acc += a[i][l] * mk[l][j];
                    }
                    *slot = acc;
                }
            }
            mk = next;
        }
    }
    poly_roots(&coeffs)
}

/// Roots of the expanded spectral polynomial at numeric invariants.
pub fn expanded_roots(result: &SpectralCurveResult, g2: f64, g3: f64) -> Vec<Complex64> {
    let coeffs: Vec<Complex64> = result
        .expanded
        .coeffs_in("z")
        .iter()
        .map(|c| {
            c.eval_complex(&|v| match v {
                "g2" => Complex64::new(g2, 0.0),
                "g3" => Complex64::new(g3, 0.0),
                other => panic!("unexpected variable {other} in expanded curve"),
            })
        })
        .collect();
    poly_roots(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::exact::poly;

    #[test]
    fn type_dimensions() {
        let t2 = enumerate_types(2).unwrap();
        assert_eq!(t2[0].dimension(), 2);
        assert!(t2[1..].iter().all(|t| t.dimension() == 1));
        let t3 = enumerate_types(3).unwrap();
        assert_eq!(t3[0].dimension(), 1);
        assert!(t3[1..].iter().all(|t| t.dimension() == 2));
        let t1 = enumerate_types(1).unwrap();
        assert_eq!(t1[0].dimension(), 0);
        assert!(t1[1..].iter().all(|t| t.dimension() == 1));
        assert!(enumerate_types(0).is_err());
        for n in 1..=8 {
            let total: usize = enumerate_types(n)
                .unwrap()
                .iter()
                .map(|t| t.dimension())
                .sum();
            assert_eq!(total, 2 * n as usize + 1);
        }
    }

    #[test]
    fn operator_matrices_small_n() {
        // n = 1 root-attached: 1×1 matrix [e]
        let t1 = enumerate_types(1).unwrap();
        let m = operator_matrix(1, &t1[1]).unwrap();
        assert_eq!(m.rows(), 1);
        assert_eq!(m.get(0, 0), &poly("e"));

        // n = 2 symmetric on basis (1, ℘): [[0, −g2/2], [−6, 0]]
        let t2 = enumerate_types(2).unwrap();
        let m = operator_matrix(2, &t2[0]).unwrap();
        assert_eq!(m.get(0, 0), &MultiPoly::zero());
        assert_eq!(m.get(0, 1), &poly("-1/2 g2"));
        assert_eq!(m.get(1, 0), &poly("-6"));
        assert_eq!(m.get(1, 1), &MultiPoly::zero());

        // n = 3 symmetric: 1×1 zero matrix
        let t3 = enumerate_types(3).unwrap();
        let m = operator_matrix(3, &t3[0]).unwrap();
        assert!(m.get(0, 0).is_zero());

        // empty type errors
        assert!(matches!(
            operator_matrix(1, &t1[0]),
            Err(LameError::EmptyType)
        ));
    }

    #[test]
    fn table_rows_n1_to_n5() {
        let r1 = lame_curve(1).unwrap();
        assert_eq!(r1.f_s, poly("1"));
        assert_eq!(r1.f_i, poly("z - e"));

        let r2 = lame_curve(2).unwrap();
        assert_eq!(r2.f_s, poly("z^2 - 3 g2"));
        assert_eq!(r2.f_i, poly("z + 3 e"));

        let r3 = lame_curve(3).unwrap();
        assert_eq!(r3.f_s, poly("z"));
        assert_eq!(r3.f_i, poly("z^2 - 6 z e + 45 e^2 - 15 g2"));

        let r4 = lame_curve(4).unwrap();
        assert_eq!(r4.f_s, poly("z^3 - 52 g2 z + 560 g3"));
        assert_eq!(r4.f_i, poly("z^2 + 10 z e - 7 g2 - 35 e^2"));

        let r5 = lame_curve(5).unwrap();
        assert_eq!(r5.f_s, poly("z^2 - 27 g2"));
        let f_i_paper = reduce_e(&poly(
            "z^3 - 15 z^2 e + 315 e^2 z - 132 g2 z + 675 e^3 + 540 g3",
        ));
        assert_eq!(r5.f_i, f_i_paper);
    }

    #[test]
    fn expanded_degree_and_monic() {
        for n in 1..=6 {
            let r = lame_curve(n).unwrap();
            assert_eq!(r.expanded.degree_in("z"), 2 * n + 1);
            let lead = r.expanded.coeffs_in("z").pop().unwrap();
            assert_eq!(lead, MultiPoly::from_int(1));
        }
    }

    #[test]
    fn eigenvectors_match_known_cases() {
        // n = 1 root-attached at z = e → (1)
        let t1 = enumerate_types(1).unwrap();
        let v = eigenfunction_exact(1, &t1[1], &Eigenvalue::GenericRoot).unwrap();
        assert_eq!(v, vec![MultiPoly::from_int(1)]);

        // n = 2 symmetric at z² = 3g₂ → (−zs/6, 1) ≡ (−g₂/(2z), 1)
        let t2 = enumerate_types(2).unwrap();
        let v = eigenfunction_exact(2, &t2[0], &Eigenvalue::GenericRoot).unwrap();
        assert_eq!(v[1], MultiPoly::from_int(1));
        assert_eq!(v[0], poly("-1/6 zs"));

        // n = 3 symmetric at z = 0 → (1): the eigenfunction ℘′/2
        let t3 = enumerate_types(3).unwrap();
        let v = eigenfunction_exact(3, &t3[0], &Eigenvalue::Exact(Rational::zero())).unwrap();
        assert_eq!(v, vec![MultiPoly::from_int(1)]);

        // non-roots are rejected in exact mode
        assert!(matches!(
            eigenfunction_exact(3, &t3[0], &Eigenvalue::Exact(Rational::from(1))),
            Err(LameError::NotARoot(_))
        ));
    }

    #[test]
    fn series_residual_exact_zero() {
        let t1 = enumerate_types(1).unwrap();
        let r = series_residual_check_exact(1, &t1[1], &Eigenvalue::GenericRoot, 10).unwrap();
        assert_eq!(r, 0.0);

        let t3 = enumerate_types(3).unwrap();
        let r = series_residual_check_exact(3, &t3[0], &Eigenvalue::Exact(Rational::zero()), 12)
            .unwrap();
        assert_eq!(r, 0.0);

        assert!(matches!(
            series_residual_check_exact(3, &t3[0], &Eigenvalue::Exact(Rational::zero()), 5),
            Err(LameError::OrderTooSmall(5, 10))
        ));
    }

    #[test]
    fn series_residual_all_types_up_to_n6() {
        for n in 1..=6u32 {
            for ty in enumerate_types(n as i64).unwrap() {
                if ty.dimension() == 0 {
                    continue;
                }
                let r = series_residual_check_exact(
                    n,
                    &ty,
                    &Eigenvalue::GenericRoot,
                    2 * n as usize + 6,
                )
                .unwrap();
                assert_eq!(r, 0.0, "nonzero residual at n={n}, type {ty:?}");
            }
        }
    }

    #[test]
    fn perturbed_eigenvalue_fails_residual() {
        // n = 2, z* = √(3g₂) + 1 at (g₂, g₃) = (4, 1) must not be an eigenvalue.
        let t2 = enumerate_types(2).unwrap();
        let g2 = Complex64::new(4.0, 0.0);
        let g3 = Complex64::new(1.0, 0.0);
        let z_star = Complex64::new((12.0f64).sqrt() + 1.0, 0.0);
        let r =
            series_residual_check_numeric(2, &t2[0], z_star, g2, g3, Complex64::new(0.0, 0.0), 10)
                .unwrap();
        assert!(r > 1e-3, "perturbed eigenvalue gave residual {r}");

        // while the true eigenvalue passes at numeric precision
        let z_true = Complex64::new((12.0f64).sqrt(), 0.0);
        let r =
            series_residual_check_numeric(2, &t2[0], z_true, g2, g3, Complex64::new(0.0, 0.0), 10)
                .unwrap();
        assert!(r < 1e-8, "true eigenvalue gave residual {r}");
    }

    #[test]
    fn band_edges_match_expanded_roots() {
        for n in 1..=5u32 {
            let result = lame_curve(n).unwrap();
            let mut from_matrices: Vec<Complex64> = band_edges_from_matrices(n, 4.0, 1.0).unwrap();
            let mut from_curve = expanded_roots(&result, 4.0, 1.0);
            assert_eq!(from_matrices.len(), 2 * n as usize + 1);
            assert_eq!(from_curve.len(), 2 * n as usize + 1);
            let key = |z: &Complex64| (z.re, z.im);
            from_matrices.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
            from_curve.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
            for (a, b) in from_matrices.iter().zip(&from_curve) {
                assert!(
                    (a - b).norm() < 1e-9,
                    "band edge mismatch at n={n}: {a} vs {b}"
                );
            }
        }
    }
}
