use super::{ComplexScalar, Real};
use crate::error::{Error, Result};

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: Real> {
    rows: usize,
    cols: usize,
    bits: u32,
    entries: Vec<ComplexScalar<R>>,
}

impl<R: Real> Matrix<R> {
    pub fn new(rows: usize, cols: usize, entries: Vec<ComplexScalar<R>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let bits = entries.first().map_or(53, |e| e.bits());
        Ok(Matrix {
            rows,
            cols,
            bits,
            entries,
        })
    }

    /// Empty `0x0` matrix whose determinant is produced at `bits` precision.
    pub fn empty(bits: u32) -> Self {
        Matrix {
            rows: 0,
            cols: 0,
            bits,
            entries: Vec::new(),
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> ComplexScalar<R>,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        let bits = entries.first().map_or(53, |e| e.bits());
        Matrix {
            rows,
            cols,
            bits,
            entries,
        }
    }

    pub fn try_from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<ComplexScalar<R>>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j)?);
            }
        }
        let bits = entries.first().map_or(53, |e| e.bits());
        Ok(Matrix {
            rows,
            cols,
            bits,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ComplexScalar<R> {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[ComplexScalar<R>] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
///
/// The pivot is the entry of maximum modulus in the current column, ties
/// going to the lowest row index. A vanishing pivot column makes the
/// determinant exactly zero; tiny pivots are used as they are.
pub fn det<R: Real>(m: &Matrix<R>) -> Result<ComplexScalar<R>> {
    if m.rows != m.cols {
        return Err(Error::Shape(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let bits = m.bits;
    if n == 0 {
        return Ok(ComplexScalar::one(bits));
    }
    let mut a = m.entries.clone();
    let mut acc = ComplexScalar::one(bits);
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col * n + col].abs();
        for row in col + 1..n {
            let v = a[row * n + col].abs();
            if v > best {
                best = v;
                piv = row;
            }
        }
        if best.is_zero() {
            return Ok(ComplexScalar::zero(bits));
        }
        if piv != col {
            for j in 0..n {
                a.swap(col * n + j, piv * n + j);
            }
            acc = -acc;
        }
        let p = a[col * n + col].clone();
        acc = acc * &p;
        let inv = p.recip()?;
        for row in col + 1..n {
            let factor = a[row * n + col].clone() * &inv;
            if factor.is_zero() {
                continue;
            }
            for j in col + 1..n {
                let upd = factor.clone() * &a[col * n + j];
                a[row * n + j] = a[row * n + j].clone() - upd;
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Complex64;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::from_f64(re, im, 53)
    }

    /// Laplace expansion along the first row; independent of elimination.
    fn laplace(m: &Matrix<f64>) -> Complex64 {
        let n = m.rows();
        if n == 0 {
            return c(1.0, 0.0);
        }
        let mut acc = c(0.0, 0.0);
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, |r, s| {
                m.get(r + 1, if s < j { s } else { s + 1 }).clone()
            });
            let term = m.get(0, j).clone() * laplace(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn empty_and_scalar_determinants() {
        let e = Matrix::<f64>::new(0, 0, vec![]).unwrap();
        assert_eq!(det(&e).unwrap(), c(1.0, 0.0));
        let one = Matrix::new(1, 1, vec![c(2.5, -1.0)]).unwrap();
        assert_eq!(det(&one).unwrap(), c(2.5, -1.0));
    }

    #[test]
    fn repeated_rows_give_zero() {
        let m = Matrix::new(
            3,
            3,
            vec![
                c(1.0, 0.5),
                c(2.0, 0.0),
                c(-1.0, 1.0),
                c(0.3, 0.2),
                c(0.1, -0.7),
                c(4.0, 0.0),
                c(1.0, 0.5),
                c(2.0, 0.0),
                c(-1.0, 1.0),
            ],
        )
        .unwrap();
        assert!(det(&m).unwrap().abs_f64() < 1e-14);
    }

    #[test]
    fn non_square_is_a_shape_error() {
        let m = Matrix::<f64>::new(2, 3, vec![c(1.0, 0.0); 6]).unwrap();
        assert!(matches!(det(&m), Err(Error::Shape(_))));
        assert!(Matrix::<f64>::new(2, 2, vec![c(1.0, 0.0); 3]).is_err());
    }

    #[test]
    fn empty_determinant_at_requested_precision() {
        let e = Matrix::<crate::scalar::Mp>::empty(128);
        assert_eq!(det(&e).unwrap().bits(), 128);
    }

    fn entries(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n)
    }

    fn build(n: usize, v: &[(f64, f64)]) -> Matrix<f64> {
        Matrix::new(n, n, v.iter().map(|&(a, b)| c(a, b)).collect()).unwrap()
    }

    proptest! {
        #[test]
        fn matches_laplace_expansion(v in entries(3)) {
            let m = build(3, &v);
            let d = det(&m).unwrap();
            let l = laplace(&m);
            let scale = 1.0f64.max(l.abs_f64());
            prop_assert!((d - l).abs_f64() / scale < 1e-12);
        }

        #[test]
        fn row_permutation_flips_sign_by_parity(v in entries(4), perm in Just([2usize, 0, 3, 1])) {
            let m = build(4, &v);
            let d = det(&m).unwrap();
            let p = Matrix::from_fn(4, 4, |i, j| m.get(perm[i], j).clone());
            // [2,0,3,1] is the 4-cycle 0->2->3->1->0, an odd permutation.
            let dp = det(&p).unwrap();
            let scale = 1e-300f64.max(d.abs_f64());
            prop_assert!((dp + &d).abs_f64() / scale < 1e-12 || d.abs_f64() < 1e-12);
        }

        #[test]
        fn transpose_preserves_determinant(v in entries(4)) {
            let m = build(4, &v);
            let d = det(&m).unwrap();
            let dt = det(&m.transpose()).unwrap();
            prop_assert!((d - &dt).abs_f64() <= 1e-12 * 1.0f64.max(dt.abs_f64()));
        }
    }
}
