use super::semi::RodState;
use crate::kinematics::{rotation_from_p, RotationVector};
use crate::{Mat3, Result, Vec3};

/// Node positions and director frames of a rod state.
///
/// `r₀` is the stored base position; further nodes follow by trapezoidal
/// quadrature of `r_s = D ν` with `D = exp([p]×)`.
pub fn reconstruct_centerline(state: &RodState) -> Result<(Vec<Vec3>, Vec<Mat3>)> {
    let n = state.n_nodes();
    if n == 1 {
        return Ok((
            vec![state.base_position],
            vec![rotation_from_p(&RotationVector(state.p[0]))],
        ));
    }
    let (_, nu) = state.strains()?;
    let frames = state.frames();
    let mut r = Vec::with_capacity(n);
    r.push(state.base_position);
    for i in 0..n - 1 {
        let step = (frames[i] * nu[i] + frames[i + 1] * nu[i + 1]) * (0.5 * state.ds);
        r.push(r[i] + step);
    }
    Ok((r, frames))
}
