//! Kinematic fields sampled on a uniform `(s, t)` grid and the residuals of
//! the two compatibility equations.

use std::ops::{Index, IndexMut};

use super::rotation::body_rate_from_p;
use super::strain_velocity_from_q;
use crate::fd::derivative_strided;
use crate::{Error, Result, Vec3};

/// Uniform tensor grid over `[s_min, s_max] × [t_min, t_max]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub s_min: f64,
    pub s_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub n_s: usize,
    pub n_t: usize,
}

impl GridSpec {
    pub fn new(s_range: (f64, f64), t_range: (f64, f64), n_s: usize, n_t: usize) -> Result<Self> {
        if n_s < 2 || n_t < 2 {
            return Err(Error::GridTooSmall {
                required: 2,
                got: n_s.min(n_t),
            });
        }
        if !(s_range.1 > s_range.0) || !(t_range.1 > t_range.0) {
            return Err(Error::InvalidArgument("grid ranges must be strictly increasing".into()));
        }
        Ok(GridSpec {
            s_min: s_range.0,
            s_max: s_range.1,
            t_min: t_range.0,
            t_max: t_range.1,
            n_s,
            n_t,
        })
    }

    /// The unit square with `n × n` samples.
    pub fn unit_square(n: usize) -> Result<Self> {
        Self::new((0.0, 1.0), (0.0, 1.0), n, n)
    }

    pub fn ds(&self) -> f64 {
        (self.s_max - self.s_min) / (self.n_s - 1) as f64
    }

    pub fn dt(&self) -> f64 {
        (self.t_max - self.t_min) / (self.n_t - 1) as f64
    }

    pub fn s(&self, i: usize) -> f64 {
        self.s_min + i as f64 * self.ds()
    }

    pub fn t(&self, j: usize) -> f64 {
        self.t_min + j as f64 * self.dt()
    }

    pub fn len(&self) -> usize {
        self.n_s * self.n_t
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Values on a [`GridSpec`], stored with `t` varying fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField<T> {
    n_s: usize,
    n_t: usize,
    data: Vec<T>,
}

impl<T: Copy> GridField<T> {
    pub fn filled(grid: &GridSpec, value: T) -> Self {
        GridField {
            n_s: grid.n_s,
            n_t: grid.n_t,
            data: vec![value; grid.len()],
        }
    }

    pub fn from_fn(grid: &GridSpec, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(grid.len());
        for i in 0..grid.n_s {
            for j in 0..grid.n_t {
                data.push(f(i, j));
            }
        }
        GridField {
            n_s: grid.n_s,
            n_t: grid.n_t,
            data,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_s, self.n_t)
    }

    pub fn values(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> GridField<U> {
        GridField {
            n_s: self.n_s,
            n_t: self.n_t,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }
}

impl GridField<Vec3> {
    /// Largest Euclidean norm over all samples.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `∂_s` by second-order differences.
    pub fn d_ds(&self, ds: f64) -> Result<Self> {
        if self.n_s < 3 {
            return Err(Error::GridTooSmall { required: 3, got: self.n_s });
        }
        Ok(GridField {
            n_s: self.n_s,
            n_t: self.n_t,
            data: (0..self.n_s)
                .flat_map(|i| (0..self.n_t).map(move |j| (i, j)))
                .map(|(i, j)| derivative_strided(self.n_s, i, ds, |k| self[(k, j)]))
                .collect(),
        })
    }

    /// `∂_t` by second-order differences.
    pub fn d_dt(&self, dt: f64) -> Result<Self> {
        if self.n_t < 3 {
            return Err(Error::GridTooSmall { required: 3, got: self.n_t });
        }
        Ok(GridField {
            n_s: self.n_s,
            n_t: self.n_t,
            data: (0..self.n_s)
                .flat_map(|i| (0..self.n_t).map(move |j| (i, j)))
                .map(|(i, j)| derivative_strided(self.n_t, j, dt, |k| self[(i, k)]))
                .collect(),
        })
    }
}

impl<T> Index<(usize, usize)> for GridField<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n_t + j]
    }
}

impl<T> IndexMut<(usize, usize)> for GridField<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n_t + j]
    }
}

/// `p`, `q` and their first partial derivatives at one `(s, t)` point.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParameterSample {
    pub p: Vec3,
    pub p_s: Vec3,
    pub p_t: Vec3,
    pub q: Vec3,
    pub q_s: Vec3,
    pub q_t: Vec3,
}

/// Twist `ω`, Darboux vector `κ`, linear strain `ν` and velocity `v` on a grid.
#[derive(Clone, Debug)]
pub struct KinematicFields {
    pub grid: GridSpec,
    pub omega: GridField<Vec3>,
    pub kappa: GridField<Vec3>,
    pub nu: GridField<Vec3>,
    pub v: GridField<Vec3>,
}

impl KinematicFields {
    pub fn zeros(grid: GridSpec) -> Self {
        let z = GridField::filled(&grid, Vec3::zeros());
        KinematicFields {
            grid,
            omega: z.clone(),
            kappa: z.clone(),
            nu: z.clone(),
            v: z,
        }
    }

    /// Evaluates the closed-form solution for a `(p, q)` pair given together
    /// with its exact derivatives.
    pub fn from_parameterization(grid: GridSpec, f: impl Fn(f64, f64) -> ParameterSample) -> Self {
        let mut out = KinematicFields::zeros(grid);
        for i in 0..grid.n_s {
            for j in 0..grid.n_t {
                let x = f(grid.s(i), grid.t(j));
                let omega = body_rate_from_p(&x.p, &x.p_t);
                let kappa = body_rate_from_p(&x.p, &x.p_s);
                let (nu, v) = strain_velocity_from_q(x.q, x.q_s, x.q_t, kappa, omega);
                out.omega[(i, j)] = omega;
                out.kappa[(i, j)] = kappa;
                out.nu[(i, j)] = nu;
                out.v[(i, j)] = v;
            }
        }
        out
    }
}

/// Residuals `h₁ = κ_t − ω_s + ω×κ` and `h₂ = ν_t − v_s − κ×v + ω×ν`.
///
/// Derivatives are second order in the interior and at the boundary, so an
/// exact solution yields residuals of order `h²`.
pub fn kinematic_residuals(fields: &KinematicFields) -> Result<(GridField<Vec3>, GridField<Vec3>)> {
    let g = &fields.grid;
    if g.n_s < 3 || g.n_t < 3 {
        return Err(Error::GridTooSmall {
            required: 3,
            got: g.n_s.min(g.n_t),
        });
    }
    let (ds, dt) = (g.ds(), g.dt());
    let kappa_t = fields.kappa.d_dt(dt)?;
    let omega_s = fields.omega.d_ds(ds)?;
    let nu_t = fields.nu.d_dt(dt)?;
    let v_s = fields.v.d_ds(ds)?;
    let h1 = GridField::from_fn(g, |i, j| {
        let (w, k) = (fields.omega[(i, j)], fields.kappa[(i, j)]);
        kappa_t[(i, j)] - omega_s[(i, j)] + w.cross(&k)
    });
    let h2 = GridField::from_fn(g, |i, j| {
        let (w, k) = (fields.omega[(i, j)], fields.kappa[(i, j)]);
        let (nu, v) = (fields.nu[(i, j)], fields.v[(i, j)]);
        nu_t[(i, j)] - v_s[(i, j)] - k.cross(&v) + w.cross(&nu)
    });
    Ok((h1, h2))
}
