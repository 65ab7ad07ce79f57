//! Complete elliptic integral of the first kind via the arithmetic–geometric
//! mean, for complex modulus k with the principal branch (|k| < 1 region and
//! continuations off the real cut).
//!
//! `K(k) = π / (2·AGM(1, √(1−k²)))`; the complex AGM takes the square-root
//! branch with `Re(b/a) ≥ 0` at every step (the "right choice"), which keeps
//! the iteration on the principal value.

use num_complex::Complex64;

#[derive(Debug, thiserror::Error)]
pub enum EllipticError {
    #[error("K(k) diverges at k² = 1")]
    Divergent,
}

/// AGM of two complex numbers with the principal branch selection.
pub fn agm(a0: Complex64, b0: Complex64) -> Complex64 {
    let mut a = a0;
    let mut b = b0;
    for _ in 0..64 {
        let an = 0.5 * (a + b);
        let mut bn = (a * b).sqrt();
        // choose the root with |an − bn| ≤ |an + bn|
        if (an - bn).norm() > (an + bn).norm() {
            bn = -bn;
        }
        a = an;
        b = bn;
        if (a - b).norm() <= 1e-17 * a.norm().max(1.0) {
            break;
        }
    }
    0.5 * (a + b)
}

/// Complete elliptic integral `K(k) = ∫₀^{π/2} dθ/√(1 − k² sin²θ)`.
///
/// Relative error ≤ 1e−13 for |k| ≤ 0.95 and complex k away from the
/// singular points k² = 1.
pub fn elliptic_k(k: Complex64) -> Result<Complex64, EllipticError> {
    let one = Complex64::new(1.0, 0.0);
    let k2 = k * k;
    if (k2 - one).norm() < 1e-14 {
        return Err(EllipticError::Divergent);
    }
    let kp = (one - k2).sqrt();
    let m = agm(one, kp);
    Ok(Complex64::new(std::f64::consts::FRAC_PI_2, 0.0) / m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periods::quad::gauss_legendre;

    /// Quadrature oracle: direct Gauss–Legendre on the defining integral.
    pub fn k_by_quadrature(k: Complex64) -> Complex64 {
        let (nodes, weights) = gauss_legendre(200);
        let mut acc = Complex64::new(0.0, 0.0);
        // θ = (π/4)(t+1), t ∈ [−1, 1]
        for (t, w) in nodes.iter().zip(weights) {
            let theta = std::f64::consts::FRAC_PI_4 * (t + 1.0);
            let s = theta.sin();
            let integrand =
                Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - k * k * s * s).sqrt();
            acc += integrand * w;
        }
        acc * std::f64::consts::FRAC_PI_4
    }

    #[test]
    fn k_at_zero_is_half_pi() {
        let k = elliptic_k(Complex64::new(0.0, 0.0)).unwrap();
        assert!((k.re - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!(k.im.abs() < 1e-15);
    }

    #[test]
    fn k_matches_quadrature_at_samples() {
        for kv in [1.0 / std::f64::consts::SQRT_2, 0.6] {
            let k = Complex64::new(kv, 0.0);
            let agm = elliptic_k(k).unwrap();
            let quad = k_by_quadrature(k);
            assert!(
                (agm - quad).norm() < 1e-12,
                "K({kv}) mismatch: {agm} vs {quad}"
            );
        }
    }

    #[test]
    fn k_matches_quadrature_on_grids() {
        // 50 real moduli in (0, 1) and 50 complex moduli with |k| ≤ 0.9
        for i in 0..50 {
            let kv = (i as f64 + 0.5) / 51.0;
            let k = Complex64::new(kv, 0.0);
            let d = (elliptic_k(k).unwrap() - k_by_quadrature(k)).norm();
            assert!(d < 1e-11, "real k={kv}: err {d:.2e}");
        }
        for i in 0..50 {
            let angle = 2.0 * std::f64::consts::PI * (i as f64) / 50.0;
            let r = 0.1 + 0.8 * ((i * 7 % 50) as f64) / 50.0;
            let k = Complex64::from_polar(r, angle);
            let d = (elliptic_k(k).unwrap() - k_by_quadrature(k)).norm();
            assert!(d < 1e-11, "complex k={k}: err {d:.2e}");
        }
    }

    #[test]
    fn divergence_at_one() {
        assert!(elliptic_k(Complex64::new(1.0, 0.0)).is_err());
    }
}
