//! Dense linear solves for desk-scale systems.
//!
//! Gaussian elimination with partial pivoting, generic over real and complex
//! scalars. System sizes here are at most a few hundred, so O(n³) dense is
//! the right tool (sparsity is an explicit non-goal).

use crate::error::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;

/// Scalar types the solver accepts.
pub trait Scalar:
    Copy
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
{
    fn zero() -> Self;
    /// Modulus used for pivot selection.
    fn modulus(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
}

const PIVOT_FLOOR: f64 = 1e-13;

/// Solve `a · x = b` for square `a`. `a` and `b` are copied, not mutated.
pub fn solve<S: Scalar>(a: &Array2<S>, b: &[S]) -> Result<Vec<S>> {
    let n = a.nrows();
    if a.ncols() != n || b.len() != n {
        return Err(Error::Shape(format!(
            "solve: matrix {}x{} with rhs of length {}",
            a.nrows(),
            a.ncols(),
            b.len()
        )));
    }
    // Row-major working copy augmented with b.
    let mut m: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut row: Vec<S> = (0..n).map(|j| a[[i, j]]).collect();
            row.push(b[i]);
            row
        })
        .collect();

    for col in 0..n {
        let (pivot_row, pivot_mag) = (col..n)
            .map(|r| (r, m[r][col].modulus()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("non-empty pivot range");
        if pivot_mag < PIVOT_FLOOR {
            return Err(Error::SingularMatrix {
                col,
                pivot: pivot_mag,
            });
        }
        m.swap(col, pivot_row);
        let pivot = m[col][col];
        for r in col + 1..n {
            let factor = m[r][col] / pivot;
            if factor.modulus() == 0.0 {
                continue;
            }
            for c in col..=n {
                let upd = m[col][c] * factor;
                m[r][c] = m[r][c] - upd;
            }
        }
    }

    let mut x = vec![S::zero(); n];
    for row in (0..n).rev() {
        let mut acc = m[row][n];
        for c in row + 1..n {
            acc = acc - m[row][c] * x[c];
        }
        x[row] = acc / m[row][row];
    }
    Ok(x)
}
