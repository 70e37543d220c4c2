//! LSQR (Paige and Saunders) for dense least-squares problems.

use nalgebra::{DMatrix, DVector};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LsqrOptions {
    /// Relative tolerance for both stopping tests.
    pub tolerance: f64,
    /// `None` means `10 · columns`.
    pub max_iter: Option<usize>,
}

impl Default for LsqrOptions {
    fn default() -> Self {
        LsqrOptions {
            tolerance: 1e-10,
            max_iter: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LsqrSolution {
    pub x: DVector<f64>,
    pub iterations: usize,
    /// `‖Ax − b‖`, recomputed from the returned `x`.
    pub residual_norm: f64,
    /// `‖Ax − b‖ / ‖b‖` (zero when `b = 0`).
    pub relative_residual: f64,
    /// `‖r‖ ≤ tol‖b‖`: the system was solved.
    pub consistent: bool,
    /// `‖Aᵀr‖ ≤ tol‖A‖‖r‖`: `x` is a least-squares solution.
    pub least_squares: bool,
}

impl LsqrSolution {
    pub fn converged(&self) -> bool {
        self.consistent || self.least_squares
    }
}

fn normalize(v: &mut DVector<f64>) -> f64 {
    let n = v.norm();
    if n > 0.0 {
        *v /= n;
    }
    n
}

pub fn lsqr(a: &DMatrix<f64>, b: &DVector<f64>, opts: &LsqrOptions) -> LsqrSolution {
    let n = a.ncols();
    let tol = opts.tolerance;
    let max_iter = opts.max_iter.unwrap_or(10 * n);
    let b_norm = b.norm();
    let mut x = DVector::zeros(n);

    let mut u = b.clone();
    let mut beta = normalize(&mut u);
    let mut v = a.tr_mul(&u);
    let mut alpha = normalize(&mut v);
    let mut w = v.clone();
    let mut phi_bar = beta;
    let mut rho_bar = alpha;
    let mut a_norm2 = 0.0;
    let mut iterations = 0;
    let mut consistent = beta == 0.0;
    let mut least_squares = alpha == 0.0;

    while !(consistent || least_squares) && iterations < max_iter {
        iterations += 1;
        u = a * &v - &u * alpha;
        beta = normalize(&mut u);
        a_norm2 += alpha * alpha + beta * beta;
        v = a.tr_mul(&u) - &v * beta;
        alpha = normalize(&mut v);

        let rho = rho_bar.hypot(beta);
        let c = rho_bar / rho;
        let s = beta / rho;
        let theta = s * alpha;
        rho_bar = -c * alpha;
        let phi = c * phi_bar;
        phi_bar *= s;

        x.axpy(phi / rho, &w, 1.0);
        w = &v - &w * (theta / rho);

        let r_norm = phi_bar;
        let ar_norm = phi_bar * alpha * c.abs();
        consistent = r_norm <= tol * b_norm;
        least_squares = ar_norm <= tol * a_norm2.sqrt() * r_norm;
    }

    let residual_norm = (a * &x - b).norm();
    LsqrSolution {
        x,
        iterations,
        residual_norm,
        relative_residual: if b_norm > 0.0 { residual_norm / b_norm } else { 0.0 },
        consistent,
        least_squares,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_square_system() {
        let a = DMatrix::from_row_slice(3, 3, &[4.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0]);
        let x_true = DVector::from_vec(vec![1.0, -2.0, 0.5]);
        let b = &a * &x_true;
        let sol = lsqr(&a, &b, &LsqrOptions::default());
        assert!(sol.converged());
        assert!((sol.x - x_true).norm() < 1e-10);
    }

    #[test]
    fn overdetermined_gives_normal_equation_solution() {
        let a = DMatrix::from_row_slice(4, 2, &[1.0, 0.0, 1.0, 1.0, 1.0, 2.0, 1.0, 3.0]);
        let b = DVector::from_vec(vec![1.0, 2.0, 2.0, 5.0]);
        let sol = lsqr(&a, &b, &LsqrOptions::default());
        let oracle = (a.transpose() * &a).lu().solve(&(a.transpose() * &b)).unwrap();
        assert!(sol.least_squares);
        assert!((sol.x - oracle).norm() < 1e-9);
    }

    #[test]
    fn zero_rhs_returns_zero() {
        let a = DMatrix::identity(3, 3);
        let sol = lsqr(&a, &DVector::zeros(3), &LsqrOptions::default());
        assert_eq!(sol.iterations, 0);
        assert_eq!(sol.x, DVector::zeros(3));
    }
}
