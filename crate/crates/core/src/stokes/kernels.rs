use std::f64::consts::PI;

/// The blob `φ_ε(r)`; integrates to one over space.
pub fn blob_phi(r: f64, epsilon: f64) -> f64 {
    let e2 = epsilon * epsilon;
    15.0 * e2 * e2 / (8.0 * PI * (r * r + e2).powf(3.5))
}

/// Radial kernels of the blob.
///
/// `G` solves `ΔG = φ_ε` and `B` solves `ΔB = G` (radial Laplacians in three
/// dimensions), normalized so that far from the blob `G → −1/(4πr)` and
/// `B′ → −1/(8π)`:
///
/// - `G′(r) = r(2r² + 5ε²) / (8πR⁵)`
/// - `G(r)  = −(2r² + 3ε²) / (8πR³)`
/// - `B′(r) = −r / (8πR)`
/// - `B″(r) = −ε² / (8πR³)`
///
/// with `R² = r² + ε²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Kernels {
    pub g_prime: f64,
    pub g: f64,
    pub b_prime: f64,
    pub b_second: f64,
}

pub fn blob_kernels(r: f64, epsilon: f64) -> Kernels {
    let e2 = epsilon * epsilon;
    let r2 = r * r;
    let big2 = r2 + e2;
    let big = big2.sqrt();
    let big3 = big2 * big;
    Kernels {
        g_prime: r * (2.0 * r2 + 5.0 * e2) / (8.0 * PI * big3 * big2),
        g: -(2.0 * r2 + 3.0 * e2) / (8.0 * PI * big3),
        b_prime: -r / (8.0 * PI * big),
        b_second: -e2 / (8.0 * PI * big3),
    }
}

/// `G′(r)/r`, finite at `r = 0`.
pub fn pressure_factor(r: f64, epsilon: f64) -> f64 {
    let e2 = epsilon * epsilon;
    let big2 = r * r + e2;
    (2.0 * r * r + 5.0 * e2) / (8.0 * PI * big2 * big2 * big2.sqrt())
}

/// Profile `c(r)` of the regularized rotlet `u = c(r) T×x / μ`; equals
/// `G′(r)/(2r)` and tends to `1/(8πr³)`.
pub fn rotlet_factor(r: f64, epsilon: f64) -> f64 {
    0.5 * pressure_factor(r, epsilon)
}

/// Velocity per unit force at the centre of a blob, `1/(4πμε)`.
pub fn self_mobility(viscosity: f64, epsilon: f64) -> f64 {
    1.0 / (4.0 * PI * viscosity * epsilon)
}

/// The two scalar coefficients of the regularized Stokeslet,
/// `μu = a(r) f + b(r) (f·x) x`, with the `r → 0` limits taken analytically.
pub(crate) fn stokeslet_coefficients(r: f64, epsilon: f64) -> (f64, f64) {
    // a = B′/r − G, b = (rB″ − B′)/r³
    let e2 = epsilon * epsilon;
    let r2 = r * r;
    let big2 = r2 + e2;
    let big3 = big2 * big2.sqrt();
    ((r2 + 2.0 * e2) / (8.0 * PI * big3), 1.0 / (8.0 * PI * big3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blob_values() {
        let e = 0.3;
        assert!((blob_phi(0.0, e) - 15.0 / (8.0 * PI * e.powi(3))).abs() < 1e-12);
        let at_e = 15.0 / (8.0 * PI * 2f64.powf(3.5) * e.powi(3));
        assert!((blob_phi(e, e) - at_e).abs() < 1e-12 * at_e);
        assert!(blob_phi(2.0 * e, e) < blob_phi(e, e));
    }

    #[test]
    fn kernels_are_finite_at_the_centre() {
        let k = blob_kernels(0.0, 0.1);
        assert_eq!(k.g_prime, 0.0);
        assert!(k.g.is_finite() && k.b_second.is_finite());
        assert_eq!(k.b_prime, 0.0);
    }

    #[test]
    fn coefficients_match_kernel_combination() {
        let e = 0.2;
        for r in [0.05, 0.2, 1.0, 7.0] {
            let k = blob_kernels(r, e);
            let (a, b) = stokeslet_coefficients(r, e);
            assert!((a - (k.b_prime / r - k.g)).abs() < 1e-13 * a.abs());
            assert!((b - (r * k.b_second - k.b_prime) / r.powi(3)).abs() < 1e-9 * b.abs());
            assert!((pressure_factor(r, e) - k.g_prime / r).abs() < 1e-13 * pressure_factor(r, e));
        }
    }

    #[test]
    fn far_field_limits() {
        let e = 1e-3;
        let r = 1e3 * e;
        let k = blob_kernels(r, e);
        assert!((k.g_prime * 4.0 * PI * r * r - 1.0).abs() < 1e-4);
        assert!((k.b_prime * 8.0 * PI + 1.0).abs() < 1e-4);
        assert!((k.g * 4.0 * PI * r + 1.0).abs() < 1e-4);
    }
}
