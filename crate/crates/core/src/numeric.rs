//! Small numeric kernels shared across the numeric modules: polynomial root
//! finding (Durand–Kerner), dense complex linear algebra at the 2×2/3×3 scale,
//! and a Jacobi eigensolver for small real symmetric matrices.

use num_complex::Complex64;

/// All complex roots of `Σ cᵢ xⁱ` (coefficients low-to-high) by Durand–Kerner
/// iteration on the monic normalization. Robust at the degrees used here
/// (≤ 21) when the coefficients are moderate.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while let Some(last) = c.last() {
        if last.norm() == 0.0 && c.len() > 1 {
            c.pop();
        } else {
            break;
        }
    }
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    // scale to balance coefficients: radius from the Cauchy bound
    let bound = 1.0
        + monic[..n]
            .iter()
            .map(|a| a.norm())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(bound.min(1.5) * 0.7 + 0.2, angle)
        })
        .collect();
    let eval = |x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in monic.iter().rev() {
            acc = acc * x + a;
        }
        acc
    };
    for _ in 0..600 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                z[i] += Complex64::new(1e-6, 1e-6);
                continue;
            }
            let delta = eval(z[i]) / denom;
            z[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-14 * bound.max(1.0) {
            break;
        }
    }
    // Newton polish each root against the monic polynomial.
    let eval_d = |x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in (1..=n).rev() {
            acc = acc * x + monic[k] * (k as f64);
        }
        acc
    };
    for zi in z.iter_mut() {
        for _ in 0..30 {
            let d = eval_d(*zi);
            if d.norm() < 1e-300 {
                break;
            }
            let step = eval(*zi) / d;
            *zi -= step;
            if step.norm() < 1e-15 * (1.0 + zi.norm()) {
                break;
            }
        }
    }
    z
}

/// Real roots of `4t³ − g₂t − g₃`, ascending. Panics if the cubic has a
/// complex pair (all curves handled here have real branch data).
pub fn real_cubic_roots(g2: f64, g3: f64) -> Vec<f64> {
    let coeffs = [
        Complex64::new(-g3, 0.0),
        Complex64::new(-g2, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(4.0, 0.0),
    ];
    let mut roots: Vec<f64> = poly_roots(&coeffs)
        .into_iter()
        .map(|z| {
            assert!(
                z.im.abs() < 1e-9 * (1.0 + z.re.abs()),
                "complex root where real expected: {z}"
            );
            z.re
        })
        .collect();
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

/// Dense complex matrix as rows; only the tiny sizes used for period algebra.
pub type CMat = Vec<Vec<Complex64>>;

pub fn cmat_zero(n: usize, m: usize) -> CMat {
    vec![vec![Complex64::new(0.0, 0.0); m]; n]
}

pub fn cmat_identity(n: usize) -> CMat {
    let mut m = cmat_zero(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn cmat_mul(a: &CMat, b: &CMat) -> CMat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut out = cmat_zero(n, m);
    for i in 0..n {
        for j in 0..m {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..k {
                acc += a[i][l] * b[l][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn cmat_transpose(a: &CMat) -> CMat {
    let (n, m) = (a.len(), a[0].len());
    let mut out = cmat_zero(m, n);
    for i in 0..n {
        for j in 0..m {
            out[j][i] = a[i][j];
        }
    }
    out
}

pub fn cmat_sub(a: &CMat, b: &CMat) -> CMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

/// Solve `A·X = B` by Gaussian elimination with partial pivoting.
pub fn cmat_solve(a: &CMat, b: &CMat) -> Option<CMat> {
    let n = a.len();
    let m = b[0].len();
    let mut aug: CMat = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend_from_slice(&b[i]);
            row
        })
        .collect();
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| {
            aug[i][k]
                .norm()
                .partial_cmp(&aug[j][k].norm())
                .unwrap()
        })?;
        if aug[piv][k].norm() < 1e-300 {
            return None;
        }
        aug.swap(k, piv);
        let inv = Complex64::new(1.0, 0.0) / aug[k][k];
        for j in k..n + m {
            aug[k][j] *= inv;
        }
        for i in 0..n {
            if i != k && aug[i][k].norm() != 0.0 {
                let f = aug[i][k];
                for j in k..n + m {
                    let sub = f * aug[k][j];
                    aug[i][j] -= sub;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn cmat_inv(a: &CMat) -> Option<CMat> {
    cmat_solve(a, &cmat_identity(a.len()))
}

pub fn cmat_max_abs(a: &CMat) -> f64 {
    a.iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Eigenvalues of a small real symmetric matrix by cyclic Jacobi rotations.
pub fn sym_eigenvalues(mat: &[Vec<f64>]) -> Vec<f64> {
    let n = mat.len();
    let mut a: Vec<Vec<f64>> = mat.to_vec();
    for _ in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}
