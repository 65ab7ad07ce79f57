//! Matrices over `MultiPoly` and fraction-free linear algebra.
//!
//! Characteristic polynomials come from the Faddeev–LeVerrier recursion
//! (divisions only by integers, so no rational-function blowup in the
//! coefficient ring); determinants from Bareiss elimination (all divisions
//! exact by construction).

use super::poly::MultiPoly;
use super::rational::Rational;

/// Rectangular matrix with polynomial entries sharing one variable context.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<MultiPoly>) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        assert_eq!(data.len(), rows * cols, "shape mismatch");
        PolyMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![MultiPoly::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = MultiPoly::from_int(1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut MultiPoly {
        &mut self.data[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn matmul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = PolyMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = MultiPoly::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                *out.get_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add(b))
            .collect();
        PolyMatrix::new(self.rows, self.cols, data)
    }

    pub fn scale_poly(&self, c: &MultiPoly) -> PolyMatrix {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        PolyMatrix::new(self.rows, self.cols, data)
    }

    pub fn trace(&self) -> MultiPoly {
        assert!(self.is_square());
        let mut acc = MultiPoly::zero();
        for i in 0..self.rows {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    /// Determinant via cofactor expansion; fine for the small operator
    /// matrices, used as the independent check against Bareiss.
    pub fn det_cofactor(&self) -> MultiPoly {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = MultiPoly::zero();
        for j in 0..n {
            if self.get(0, j).is_zero() {
                continue;
            }
            let minor = self.minor(0, j);
            let term = self.get(0, j).mul(&minor.det_cofactor());
            acc = if j % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }

    fn minor(&self, row: usize, col: usize) -> PolyMatrix {
        let n = self.rows;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            if i == row {
                continue;
            }
            for j in 0..n {
                if j == col {
                    continue;
                }
                data.push(self.get(i, j).clone());
            }
        }
        PolyMatrix::new(n - 1, n - 1, data)
    }

    /// Monic characteristic polynomial `det(var·I − M)` by Faddeev–LeVerrier.
    ///
    /// Preconditions: square matrix, `var` not among the entry variables.
    pub fn charpoly(&self, var: &str) -> MultiPoly {
        assert!(self.is_square(), "characteristic polynomial of non-square matrix");
        for entry in &self.data {
            assert!(
                entry.degree_in(var) == 0,
                "charpoly variable {var} already occurs in the matrix"
            );
        }
        let n = self.rows;
        let x = MultiPoly::var(var);
        // M_1 = A, c_{n-1} = -tr(M_1); M_{k+1} = A (M_k + c_{n-k} I).
        let mut coeffs = vec![MultiPoly::zero(); n + 1];
        coeffs[n] = MultiPoly::from_int(1);
        let mut mk = self.clone();
        for k in 1..=n {
            let ck = mk
                .trace()
                .scale(&Rational::from_pair(-1, k as i64));
            coeffs[n - k] = ck.clone();
            if k < n {
                let mut shifted = mk;
                for i in 0..n {
                    let d = shifted.get(i, i).add(&ck);
                    *shifted.get_mut(i, i) = d;
                }
                mk = self.matmul(&shifted);
            }
        }
        let mut acc = MultiPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            acc = acc.add(&c.mul(&x.pow(k as u32)));
        }
        acc
    }
}

/// Determinant by Bareiss fraction-free elimination. Consumes the rows.
pub fn det_bareiss(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square input required");
    let mut sign = false;
    let mut prev = MultiPoly::from_int(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is exact");
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> MultiPoly {
        MultiPoly::from_int(n)
    }

    #[test]
    fn charpoly_swap_matrix() {
        let m = PolyMatrix::new(2, 2, vec![c(0), c(1), c(1), c(0)]);
        let cp = m.charpoly("x");
        let want = MultiPoly::var("x").pow(2).sub(&c(1));
        assert_eq!(cp, want);
    }

    #[test]
    fn charpoly_identity_cubed() {
        let m = PolyMatrix::identity(3);
        let cp = m.charpoly("x");
        let want = MultiPoly::var("x").sub(&c(1)).pow(3);
        assert_eq!(cp, want);
    }

    #[test]
    fn charpoly_n2_symmetric_block() {
        // [[0, −g2/2], [−6, 0]] → x² − 3g₂
        let g2 = MultiPoly::var("g2");
        let m = PolyMatrix::new(
            2,
            2,
            vec![
                MultiPoly::zero(),
                g2.scale(&Rational::from_pair(-1, 2)),
                c(-6),
                MultiPoly::zero(),
            ],
        );
        let cp = m.charpoly("z");
        let want = MultiPoly::var("z").pow(2).sub(&g2.scale(&Rational::from(3)));
        assert_eq!(cp, want);
    }

    #[test]
    fn charpoly_matches_cofactor_determinant() {
        // det(x·I − M) by cofactors must agree with Faddeev–LeVerrier for
        // random small integer matrices.
        let mut seed = 0x243f6a88u64;
        let mut rng = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        for n in 1..=4usize {
            for _ in 0..5 {
                let data: Vec<MultiPoly> = (0..n * n).map(|_| c(rng())).collect();
                let m = PolyMatrix::new(n, n, data);
                let cp = m.charpoly("x");
                let mut xi = PolyMatrix::zero(n, n);
                for i in 0..n {
                    for j in 0..n {
                        *xi.get_mut(i, j) = if i == j {
                            MultiPoly::var("x").sub(m.get(i, j))
                        } else {
                            m.get(i, j).neg()
                        };
                    }
                }
                assert_eq!(cp, xi.det_cofactor());
            }
        }
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let g2 = MultiPoly::var("g2");
        let rows = vec![
            vec![MultiPoly::var("z"), g2.clone(), c(1)],
            vec![c(2), MultiPoly::var("z").pow(2), g2.clone()],
            vec![c(0), c(5), MultiPoly::var("z")],
        ];
        let m = PolyMatrix::new(3, 3, rows.iter().flatten().cloned().collect());
        assert_eq!(det_bareiss(rows), m.det_cofactor());
    }
}
