use super::kernels::stokeslet_coefficients;
use super::lsqr::{lsqr, LsqrOptions};
use super::FluidParams;
use crate::{Error, Mat3, Result, Vec3};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

/// Dense `3N × 3N` map from stacked point forces to stacked velocities at the
/// same points.
#[derive(Clone, Debug, PartialEq)]
pub struct MobilityMatrix {
    pub points: Vec<Vec3>,
    pub matrix: DMatrix<f64>,
}

impl MobilityMatrix {
    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn block(&self, i: usize, j: usize) -> Mat3 {
        self.matrix.fixed_view::<3, 3>(3 * i, 3 * j).into_owned()
    }

    pub fn apply(&self, forces: &[Vec3]) -> Vec<Vec3> {
        unstack(&(&self.matrix * stack(forces)))
    }

    /// Largest `|M_ab − M_ba|`.
    pub fn max_asymmetry(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).amax()
    }
}

fn stack(v: &[Vec3]) -> DVector<f64> {
    DVector::from_iterator(3 * v.len(), v.iter().flat_map(|x| x.iter().copied()))
}

fn unstack(v: &DVector<f64>) -> Vec<Vec3> {
    v.as_slice().chunks_exact(3).map(|c| Vec3::new(c[0], c[1], c[2])).collect()
}

/// Block `(i, j)` is `(a(r) I + b(r) d dᵀ)/μ` with `d = xᵢ − xⱼ`, so diagonal
/// blocks are `I/(4πμε)`.
pub fn assemble_mobility(points: &[Vec3], fp: &FluidParams) -> Result<MobilityMatrix> {
    let n = points.len();
    if n == 0 {
        return Err(Error::InvalidArgument("mobility needs at least one point".into()));
    }
    let rows: Vec<Vec<Mat3>> = points
        .par_iter()
        .map(|xi| {
            points
                .iter()
                .map(|xj| {
                    let d = xi - xj;
                    let (a, b) = stokeslet_coefficients(d.norm(), fp.epsilon);
                    (Mat3::identity() * a + d * d.transpose() * b) / fp.viscosity
                })
                .collect()
        })
        .collect();
    let mut matrix = DMatrix::zeros(3 * n, 3 * n);
    for (i, row) in rows.iter().enumerate() {
        for (j, block) in row.iter().enumerate() {
            matrix.fixed_view_mut::<3, 3>(3 * i, 3 * j).copy_from(block);
        }
    }
    Ok(MobilityMatrix {
        points: points.to_vec(),
        matrix,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ForceSolve {
    pub forces: Vec<Vec3>,
    /// `‖MF − U‖ / ‖U‖`.
    pub relative_residual: f64,
    pub iterations: usize,
    /// `false` when the system had no exact solution and a least-squares
    /// solution was returned.
    pub consistent: bool,
}

/// Forces whose induced velocities best match `velocities` in the
/// least-squares sense.
pub fn solve_forces_for_velocities(m: &MobilityMatrix, velocities: &[Vec3]) -> Result<ForceSolve> {
    solve_forces_for_velocities_with(m, velocities, &LsqrOptions::default())
}

pub fn solve_forces_for_velocities_with(
    m: &MobilityMatrix,
    velocities: &[Vec3],
    opts: &LsqrOptions,
) -> Result<ForceSolve> {
    if velocities.len() != m.n_points() {
        return Err(Error::InvalidArgument(format!(
            "{} velocities for {} points",
            velocities.len(),
            m.n_points()
        )));
    }
    let sol = lsqr(&m.matrix, &stack(velocities), opts);
    if !sol.converged() {
        return Err(Error::NoConvergence {
            residual: sol.relative_residual,
            iterations: sol.iterations,
        });
    }
    Ok(ForceSolve {
        forces: unstack(&sol.x),
        relative_residual: sol.relative_residual,
        iterations: sol.iterations,
        consistent: sol.consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stokes::self_mobility;

    #[test]
    fn single_point_is_scaled_identity() {
        let fp = FluidParams::new(2.0, 0.05).unwrap();
        let m = assemble_mobility(&[Vec3::new(1.0, 2.0, 3.0)], &fp).unwrap();
        let c = self_mobility(2.0, 0.05);
        assert!((m.block(0, 0) - Mat3::identity() * c).amax() < 1e-12 * c);
        let u = Vec3::new(0.3, -0.1, 0.2);
        let sol = solve_forces_for_velocities(&m, &[u]).unwrap();
        assert!((sol.forces[0] - u / c).norm() < 1e-12 * (u / c).norm());
    }

    #[test]
    fn coincident_points_give_least_squares() {
        let fp = FluidParams::new(1.0, 0.1).unwrap();
        let x = Vec3::new(0.1, 0.0, 0.0);
        let m = assemble_mobility(&[x, x], &fp).unwrap();
        let sol = solve_forces_for_velocities(&m, &[Vec3::x(), Vec3::y()]).unwrap();
        assert!(!sol.consistent);
        // both points see the mean of the two requested velocities
        let c = self_mobility(1.0, 0.1);
        let expected = (Vec3::x() + Vec3::y()) * 0.5;
        let u = m.apply(&sol.forces);
        assert!((u[0] - expected).norm() < 1e-8 && (u[1] - expected).norm() < 1e-8);
        assert!((sol.forces[0] - sol.forces[1]).norm() < 1e-8 / c);
    }

    #[test]
    fn wrong_length_is_rejected() {
        let fp = FluidParams::new(1.0, 0.1).unwrap();
        let m = assemble_mobility(&[Vec3::zeros()], &fp).unwrap();
        assert!(solve_forces_for_velocities(&m, &[]).is_err());
    }
}
