use crate::fd;
use crate::{Error, Mat3, Result, Vec3};

use super::full::FullState;

/// Material and geometric constants of a rod.
///
/// `inertia` holds the principal second moments of the cross-section (m⁴), so
/// `density * inertia` is the rotary inertia per unit length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RodParameters {
    pub density: f64,
    pub area: f64,
    pub inertia: Vec3,
    /// Stiffnesses for `κ₁, κ₂, κ₃` (N·m²).
    pub bend_stiffness: Vec3,
    /// Stiffnesses for `ν₁, ν₂, ν₃` (N).
    pub shear_stiffness: Vec3,
    pub ref_curvature: Vec3,
    pub ref_strain: Vec3,
}

impl RodParameters {
    /// Solid circular cross-section of radius `radius` made of an isotropic
    /// material with Young's modulus `young` and shear modulus `shear`.
    pub fn circular(radius: f64, density: f64, young: f64, shear: f64) -> Self {
        let area = std::f64::consts::PI * radius * radius;
        let i = 0.25 * area * radius * radius;
        RodParameters {
            density,
            area,
            inertia: Vec3::new(i, i, 2.0 * i),
            bend_stiffness: Vec3::new(young * i, young * i, shear * 2.0 * i),
            shear_stiffness: Vec3::new(shear * area, shear * area, young * area),
            ref_curvature: Vec3::zeros(),
            ref_strain: Vec3::z(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, x: f64| {
            if x > 0.0 && x.is_finite() {
                Ok(())
            } else {
                Err(Error::Validation {
                    key: name.to_string(),
                    constraint: "must be > 0".into(),
                })
            }
        };
        positive("density", self.density)?;
        positive("area", self.area)?;
        for k in 0..3 {
            positive("inertia", self.inertia[k])?;
            positive("bend_stiffness", self.bend_stiffness[k])?;
            positive("shear_stiffness", self.shear_stiffness[k])?;
        }
        Ok(())
    }
}

/// Linear constitutive law: `m_k = K_bend,k (κ_k − κ̄_k)`, `n_k = K_shear,k (ν_k − ν̄_k)`.
pub fn constitutive_forces(kappa: &Vec3, nu: &Vec3, params: &RodParameters) -> (Vec3, Vec3) {
    constitutive_with_reference(kappa, nu, params, &params.ref_curvature, &params.ref_strain)
}

fn constitutive_with_reference(
    kappa: &Vec3,
    nu: &Vec3,
    params: &RodParameters,
    kappa_ref: &Vec3,
    nu_ref: &Vec3,
) -> (Vec3, Vec3) {
    (
        params.bend_stiffness.component_mul(&(kappa - kappa_ref)),
        params.shear_stiffness.component_mul(&(nu - nu_ref)),
    )
}

/// Second-order `∂_s` on nodes; see [`crate::fd`].
pub fn spatial_derivative(field: &[Vec3], ds: f64) -> Result<Vec<Vec3>> {
    fd::derivative(field, ds)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndCondition {
    /// Position and orientation held fixed.
    Clamped,
    /// Contact force and torque vanish.
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Boundary {
    pub base: EndCondition,
    pub tip: EndCondition,
}

impl Default for Boundary {
    fn default() -> Self {
        Boundary {
            base: EndCondition::Clamped,
            tip: EndCondition::Free,
        }
    }
}

impl Boundary {
    pub fn free() -> Self {
        Boundary {
            base: EndCondition::Free,
            tip: EndCondition::Free,
        }
    }
}

/// Body-frame force (N/m) and torque (N·m/m) densities per node.
#[derive(Clone, Debug, PartialEq)]
pub struct ExternalLoads {
    pub force: Vec<Vec3>,
    pub torque: Vec<Vec3>,
}

impl ExternalLoads {
    pub fn zeros(n: usize) -> Self {
        ExternalLoads {
            force: vec![Vec3::zeros(); n],
            torque: vec![Vec3::zeros(); n],
        }
    }
}

/// A rod: parameters, per-node reference strains and end conditions.
#[derive(Clone, Debug)]
pub struct RodModel {
    pub params: RodParameters,
    pub ref_curvature: Vec<Vec3>,
    pub ref_strain: Vec<Vec3>,
    pub boundary: Boundary,
}

impl RodModel {
    /// Uniform reference strains taken from `params`.
    pub fn uniform(params: RodParameters, n_nodes: usize, boundary: Boundary) -> Self {
        RodModel {
            params,
            ref_curvature: vec![params.ref_curvature; n_nodes],
            ref_strain: vec![params.ref_strain; n_nodes],
            boundary,
        }
    }

    /// Reference strains equal to the discrete strains of `fields`, making that
    /// configuration exactly stress free.
    pub fn relaxed_at(params: RodParameters, fields: &FullState, boundary: Boundary) -> Self {
        RodModel {
            params,
            ref_curvature: fields.kappa.clone(),
            ref_strain: fields.nu.clone(),
            boundary,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.ref_curvature.len()
    }

    /// Contact torques and forces per node, zeroed at free ends.
    pub fn contact_loads(&self, kappa: &[Vec3], nu: &[Vec3]) -> (Vec<Vec3>, Vec<Vec3>) {
        let n = kappa.len();
        let mut m = Vec::with_capacity(n);
        let mut f = Vec::with_capacity(n);
        for i in 0..n {
            let (mi, ni) =
                constitutive_with_reference(&kappa[i], &nu[i], &self.params, &self.ref_curvature[i], &self.ref_strain[i]);
            m.push(mi);
            f.push(ni);
        }
        if n > 0 {
            if self.boundary.base == EndCondition::Free {
                m[0] = Vec3::zeros();
                f[0] = Vec3::zeros();
            }
            if self.boundary.tip == EndCondition::Free {
                m[n - 1] = Vec3::zeros();
                f[n - 1] = Vec3::zeros();
            }
        }
        (m, f)
    }

    /// Kinetic plus elastic energy, integrated with [`fd::summation_weights`].
    pub fn energy(&self, fields: &FullState) -> f64 {
        let p = &self.params;
        let w = fd::summation_weights(fields.kappa.len(), fields.ds);
        let rho_j = p.inertia * p.density;
        let mut e = 0.0;
        for i in 0..fields.kappa.len() {
            let dk = fields.kappa[i] - self.ref_curvature[i];
            let dn = fields.nu[i] - self.ref_strain[i];
            let kinetic = 0.5 * p.density * p.area * fields.v[i].norm_squared()
                + 0.5 * rho_j.dot(&fields.omega[i].component_mul(&fields.omega[i]));
            let elastic = 0.5 * p.bend_stiffness.dot(&dk.component_mul(&dk))
                + 0.5 * p.shear_stiffness.dot(&dn.component_mul(&dn));
            e += w[i] * (kinetic + elastic);
        }
        e
    }
}

/// `(ω_t, v_t)` per node from the balance laws.
///
/// With `frames = None`, `m_s + κ×m` is evaluated as `D m + κ×m`. With the
/// director frames `Rᵢ` given, it is evaluated as `Rᵢᵀ D(R m)ᵢ`, the same
/// quantity differenced in the fixed frame; that form telescopes under
/// [`fd::summation_weights`], so the internal loads carry no net force or
/// torque. Nodes at clamped ends get zero rates.
pub fn dynamic_rhs(
    fields: &FullState,
    loads: &ExternalLoads,
    model: &RodModel,
    frames: Option<&[Mat3]>,
) -> Result<(Vec<Vec3>, Vec<Vec3>)> {
    let n = fields.kappa.len();
    if n < 3 {
        return Err(Error::GridTooSmall { required: 3, got: n });
    }
    let p = &model.params;
    let rho_j = p.inertia * p.density;
    let rho_a = p.density * p.area;
    let (m, f) = model.contact_loads(&fields.kappa, &fields.nu);

    let (torque_div, force_div): (Vec<Vec3>, Vec<Vec3>) = match frames {
        None => {
            let m_s = fd::derivative(&m, fields.ds)?;
            let n_s = fd::derivative(&f, fields.ds)?;
            (
                (0..n).map(|i| m_s[i] + fields.kappa[i].cross(&m[i])).collect(),
                (0..n).map(|i| n_s[i] + fields.kappa[i].cross(&f[i])).collect(),
            )
        }
        Some(r) => {
            let rm: Vec<Vec3> = (0..n).map(|i| r[i] * m[i]).collect();
            let rn: Vec<Vec3> = (0..n).map(|i| r[i] * f[i]).collect();
            let d_rm = fd::derivative(&rm, fields.ds)?;
            let d_rn = fd::derivative(&rn, fields.ds)?;
            (
                (0..n).map(|i| r[i].transpose() * d_rm[i]).collect(),
                (0..n).map(|i| r[i].transpose() * d_rn[i]).collect(),
            )
        }
    };

    let mut omega_t = Vec::with_capacity(n);
    let mut v_t = Vec::with_capacity(n);
    for i in 0..n {
        let w = fields.omega[i];
        let jw = rho_j.component_mul(&w);
        let torque = torque_div[i] + fields.nu[i].cross(&f[i]) - w.cross(&jw) + loads.torque[i];
        omega_t.push(torque.component_div(&rho_j));
        let force = force_div[i] - w.cross(&(fields.v[i] * rho_a)) + loads.force[i];
        v_t.push(force / rho_a);
    }
    if model.boundary.base == EndCondition::Clamped {
        omega_t[0] = Vec3::zeros();
        v_t[0] = Vec3::zeros();
    }
    if model.boundary.tip == EndCondition::Clamped {
        omega_t[n - 1] = Vec3::zeros();
        v_t[n - 1] = Vec3::zeros();
    }
    Ok((omega_t, v_t))
}
