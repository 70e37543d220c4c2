//! One-dimensional second-order finite differences on uniform grids.
//!
//! Interior nodes use the central stencil, the two end nodes use the one-sided
//! three-point stencils, so the truncation error is `O(h²)` everywhere and the
//! operator is exact for polynomials up to degree two.

use std::ops::{Add, Mul, Sub};

use crate::{Error, Result};

/// Derivative of `f` sampled with spacing `h`. Requires at least three samples.
pub fn derivative<T>(f: &[T], h: f64) -> Result<Vec<T>>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    let n = f.len();
    if n < 3 {
        return Err(Error::GridTooSmall { required: 3, got: n });
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(derivative_at(f, i, h));
    }
    Ok(out)
}

/// Derivative at a single node; `f.len() >= 3` is the caller's responsibility.
#[inline]
pub fn derivative_at<T>(f: &[T], i: usize, h: f64) -> T
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    let n = f.len();
    let inv = 0.5 / h;
    if i == 0 {
        (f[1] * 4.0 - f[0] * 3.0 - f[2]) * inv
    } else if i == n - 1 {
        (f[n - 1] * 3.0 - f[n - 2] * 4.0 + f[n - 3]) * inv
    } else {
        (f[i + 1] - f[i - 1]) * inv
    }
}

/// Same stencils applied to a strided view: `get(k)` returns sample `k` of `n`.
pub(crate) fn derivative_strided<T, F>(n: usize, i: usize, h: f64, get: F) -> T
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
    F: Fn(usize) -> T,
{
    let inv = 0.5 / h;
    if i == 0 {
        (get(1) * 4.0 - get(0) * 3.0 - get(2)) * inv
    } else if i == n - 1 {
        (get(n - 1) * 3.0 - get(n - 2) * 4.0 + get(n - 3)) * inv
    } else {
        (get(i + 1) - get(i - 1)) * inv
    }
}

/// Quadrature weights `w` for which `Σ wᵢ (D f)ᵢ = f_last − f_first` holds
/// exactly for the stencils above (a summation-by-parts norm). They integrate
/// constants exactly: `Σ wᵢ = (n − 1) h`.
pub fn summation_weights(n: usize, h: f64) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![0.0],
        2 => vec![0.5 * h, 0.5 * h],
        3 => vec![0.5 * h, h, 0.5 * h],
        _ => {
            let mut w = vec![h; n];
            w[0] = 0.25 * h;
            w[1] = 1.25 * h;
            w[n - 2] = 1.25 * h;
            w[n - 1] = 0.25 * h;
            w
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_quadratics() {
        let h = 0.1;
        let f: Vec<f64> = (0..7).map(|i| {
            let s = i as f64 * h;
            2.0 * s * s - 3.0 * s + 1.0
        }).collect();
        let d = derivative(&f, h).unwrap();
        for (i, di) in d.iter().enumerate() {
            let s = i as f64 * h;
            assert!((di - (4.0 * s - 3.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn summation_by_parts_telescopes() {
        for n in 3..12 {
            let h = 0.37;
            let f: Vec<f64> = (0..n).map(|i| ((i * 7 + 3) % 5) as f64 - 0.3 * i as f64).collect();
            let d = derivative(&f, h).unwrap();
            let w = summation_weights(n, h);
            let sum: f64 = w.iter().zip(&d).map(|(a, b)| a * b).sum();
            assert!((sum - (f[n - 1] - f[0])).abs() < 1e-12, "n = {n}");
            assert!((w.iter().sum::<f64>() - (n - 1) as f64 * h).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_two_samples() {
        assert!(matches!(
            derivative(&[1.0, 2.0], 0.1),
            Err(Error::GridTooSmall { required: 3, got: 2 })
        ));
    }
}
