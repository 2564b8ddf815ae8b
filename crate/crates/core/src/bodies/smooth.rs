//! Smooth (C²₊) convex bodies described on the sphere by the support
//! function and the principal radii of curvature.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;

use super::UnitVector;
use crate::algebra::binomial_f64;
use crate::error::{Error, Result};
use crate::quadrature::SphereQuadrature;

/// Radii at or below this are reported as a convexity violation.
pub const DEGENERATE_RADIUS: f64 = 1e-12;

/// Default finite-difference step for [`GenericSupport`].
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Quadrature level used to bracket `beta` for bodies without a closed form.
const BETA_SCAN_LEVEL: u32 = 6;

type SupportFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A body known only through its support function on the sphere.
///
/// Gradients and Hessians are taken by central differences of the
/// 1-homogeneous extension `x -> |x| h(x/|x|)`.
#[derive(Clone)]
pub struct GenericSupport {
    support: Arc<SupportFn>,
    step: f64,
}

impl GenericSupport {
    fn extended(&self, x: &[f64]) -> f64 {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let dir: Vec<f64> = x.iter().map(|v| v / norm).collect();
        norm * (self.support)(&dir)
    }

    pub fn step(&self) -> f64 {
        self.step
    }
}

impl fmt::Debug for GenericSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GenericSupport")
            .field("step", &self.step)
            .finish_non_exhaustive()
    }
}

/// `base + t B^n_2`: support `h + t`, radii `r_i + t`.
#[derive(Debug, Clone)]
pub struct ParallelBodyView {
    base: Arc<SmoothBody>,
    offset: f64,
}

impl ParallelBodyView {
    pub fn base(&self) -> &SmoothBody {
        &self.base
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }
}

#[derive(Debug, Clone)]
pub enum SmoothKind {
    Ball { radius: f64 },
    Ellipsoid { axes: Vec<f64> },
    Generic(GenericSupport),
    Parallel(ParallelBodyView),
}

#[derive(Debug, Clone)]
pub struct SmoothBody {
    dim: usize,
    kind: SmoothKind,
}

/// Support value and principal radii at one normal direction.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalData {
    pub support: f64,
    /// Ascending principal radii `r_1..r_{n-1}`.
    pub radii: Vec<f64>,
    /// Normalized elementary symmetric functions `s_0..s_{n-1}` of the radii.
    pub sym: Vec<f64>,
}

impl LocalData {
    fn new(support: f64, mut radii: Vec<f64>) -> Self {
        radii.sort_by(f64::total_cmp);
        let sym = normalized_symmetric(&radii);
        Self {
            support,
            radii,
            sym,
        }
    }

    /// Curvature function `f = r_1 ... r_{n-1}`.
    pub fn curvature_function(&self) -> f64 {
        *self.sym.last().expect("at least s_0")
    }

    /// `H_j = s_{n-1-j} / s_{n-1}`, normalized symmetric function of the
    /// principal curvatures at the matching boundary point.
    pub fn h_curvature(&self, j: usize) -> f64 {
        let top = self.sym.len() - 1;
        self.sym[top - j] / self.sym[top]
    }

    /// `(H_1, ..., H_{n-1})`.
    pub fn h_curvatures(&self) -> Vec<f64> {
        (1..self.sym.len()).map(|j| self.h_curvature(j)).collect()
    }
}

/// `s_j = binom(k, j)^{-1} e_j(r)` for `j = 0..=k`, `k = r.len()`.
pub fn normalized_symmetric(r: &[f64]) -> Vec<f64> {
    let k = r.len();
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for (count, &ri) in r.iter().enumerate() {
        for j in (1..=count + 1).rev() {
            e[j] += ri * e[j - 1];
        }
    }
    e.iter()
        .enumerate()
        .map(|(j, &ej)| ej / binomial_f64(k, j))
        .collect()
}

/// Orthonormal basis of the tangent space `u^⊥`, via a Householder reflection.
pub fn tangent_basis(u: &[f64]) -> Vec<Vec<f64>> {
    let n = u.len();
    let sign = if u[0] >= 0.0 { 1.0 } else { -1.0 };
    let mut v = u.to_vec();
    v[0] += sign;
    let vv: f64 = v.iter().map(|x| x * x).sum();
    (1..n)
        .map(|col| {
            (0..n)
                .map(|row| {
                    let id = if row == col { 1.0 } else { 0.0 };
                    id - 2.0 * v[row] * v[col] / vv
                })
                .collect()
        })
        .collect()
}

fn symmetric_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 1 {
        return vec![m[(0, 0)]];
    }
    let mut vals: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals
}

impl SmoothBody {
    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        check_dim(dim)?;
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidBody(format!("ball radius must be positive, got {radius}")));
        }
        Ok(Self {
            dim,
            kind: SmoothKind::Ball { radius },
        })
    }

    pub fn ellipsoid(axes: Vec<f64>) -> Result<Self> {
        check_dim(axes.len())?;
        if axes.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
            return Err(Error::InvalidBody(format!(
                "ellipsoid semi-axes must be positive, got {axes:?}"
            )));
        }
        Ok(Self {
            dim: axes.len(),
            kind: SmoothKind::Ellipsoid { axes },
        })
    }

    /// Body given by a support function on unit vectors of `R^dim`.
    pub fn generic<F>(dim: usize, support: F, step: f64) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        check_dim(dim)?;
        if !(step > 0.0) {
            return Err(Error::InvalidArgument(format!("finite-difference step must be positive, got {step}")));
        }
        Ok(Self {
            dim,
            kind: SmoothKind::Generic(GenericSupport {
                support: Arc::new(support),
                step,
            }),
        })
    }

    /// Generic wrapper that only sees `other`'s support function.
    pub fn generic_from(other: &SmoothBody, step: f64) -> Result<Self> {
        let inner = other.clone();
        Self::generic(
            other.dim,
            move |u| inner.support(&UnitVector::from_unit_unchecked(u.to_vec())),
            step,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &SmoothKind {
        &self.kind
    }

    /// Support function `h_K(u)`.
    pub fn support(&self, u: &UnitVector) -> f64 {
        let u = u.as_slice();
        match &self.kind {
            SmoothKind::Ball { radius } => *radius,
            SmoothKind::Ellipsoid { axes } => axes
                .iter()
                .zip(u)
                .map(|(a, x)| a * a * x * x)
                .sum::<f64>()
                .sqrt(),
            SmoothKind::Generic(g) => (g.support)(u),
            SmoothKind::Parallel(view) => {
                view.base.support(&UnitVector::from_unit_unchecked(u.to_vec())) + view.offset
            }
        }
    }

    /// Reverse Gauss map: the boundary point with outer normal `u`, `∇h(u)`.
    pub fn boundary_point(&self, u: &UnitVector) -> Vec<f64> {
        let us = u.as_slice();
        match &self.kind {
            SmoothKind::Ball { radius } => us.iter().map(|x| radius * x).collect(),
            SmoothKind::Ellipsoid { axes } => {
                let h = self.support(u);
                axes.iter().zip(us).map(|(a, x)| a * a * x / h).collect()
            }
            SmoothKind::Generic(g) => {
                let d = g.step;
                (0..self.dim)
                    .map(|i| {
                        let mut plus = us.to_vec();
                        let mut minus = us.to_vec();
                        plus[i] += d;
                        minus[i] -= d;
                        (g.extended(&plus) - g.extended(&minus)) / (2.0 * d)
                    })
                    .collect()
            }
            SmoothKind::Parallel(view) => view
                .base
                .boundary_point(u)
                .iter()
                .zip(us)
                .map(|(x, ui)| x + view.offset * ui)
                .collect(),
        }
    }

    /// Principal radii of curvature at `u`, ascending.
    pub fn principal_radii(&self, u: &UnitVector) -> Result<Vec<f64>> {
        let radii = self.raw_radii(u);
        if let Some(&bad) = radii.iter().find(|&&r| !(r > DEGENERATE_RADIUS)) {
            return Err(Error::NonConvexDetected {
                radius: bad,
                direction: u.as_slice().to_vec(),
            });
        }
        Ok(radii)
    }

    fn raw_radii(&self, u: &UnitVector) -> Vec<f64> {
        let n = self.dim;
        let us = u.as_slice();
        match &self.kind {
            SmoothKind::Ball { radius } => vec![*radius; n - 1],
            SmoothKind::Ellipsoid { axes } => {
                let h = self.support(u);
                if n == 2 {
                    let ab = axes[0] * axes[1];
                    return vec![ab * ab / (h * h * h)];
                }
                // D²h = A²/h - (A²u)(A²u)^T / h³ on u^⊥
                let a2u: Vec<f64> = axes.iter().zip(us).map(|(a, x)| a * a * x).collect();
                let basis = tangent_basis(us);
                let m = DMatrix::from_fn(n - 1, n - 1, |i, j| {
                    let mut diag = 0.0;
                    for k in 0..n {
                        diag += basis[i][k] * axes[k] * axes[k] * basis[j][k];
                    }
                    let pi: f64 = basis[i].iter().zip(&a2u).map(|(b, v)| b * v).sum();
                    let pj: f64 = basis[j].iter().zip(&a2u).map(|(b, v)| b * v).sum();
                    diag / h - pi * pj / (h * h * h)
                });
                symmetric_eigenvalues(m)
            }
            SmoothKind::Generic(g) => {
                let d = g.step;
                let basis = tangent_basis(us);
                let shifted = |a: usize, sa: f64, b: usize, sb: f64| -> f64 {
                    let x: Vec<f64> = (0..n)
                        .map(|k| us[k] + sa * d * basis[a][k] + sb * d * basis[b][k])
                        .collect();
                    g.extended(&x)
                };
                let centre = g.extended(us);
                let m = DMatrix::from_fn(n - 1, n - 1, |i, j| {
                    if i == j {
                        (shifted(i, 1.0, i, 0.0) - 2.0 * centre + shifted(i, -1.0, i, 0.0)) / (d * d)
                    } else {
                        (shifted(i, 1.0, j, 1.0) - shifted(i, 1.0, j, -1.0) - shifted(i, -1.0, j, 1.0)
                            + shifted(i, -1.0, j, -1.0))
                            / (4.0 * d * d)
                    }
                });
                symmetric_eigenvalues(m)
            }
            SmoothKind::Parallel(view) => view
                .base
                .raw_radii(u)
                .into_iter()
                .map(|r| r + view.offset)
                .collect(),
        }
    }

    /// Support value, radii and symmetric functions together.
    pub fn local_data(&self, u: &UnitVector) -> Result<LocalData> {
        let radii = self.principal_radii(u)?;
        Ok(LocalData::new(self.support(u), radii))
    }

    /// `s_j(u)`; `s_0 = 1` and `s_{n-1} = f_K(u)`.
    pub fn sym_radii(&self, u: &UnitVector, j: usize) -> Result<f64> {
        self.check_index(j)?;
        Ok(self.local_data(u)?.sym[j])
    }

    /// `H_j` at `ξ̄_K(u)`, computed as `s_{n-1-j}(u) / s_{n-1}(u)`.
    pub fn h_curvature(&self, u: &UnitVector, j: usize) -> Result<f64> {
        self.check_index(j)?;
        Ok(self.local_data(u)?.h_curvature(j))
    }

    pub fn curvature_function(&self, u: &UnitVector) -> Result<f64> {
        Ok(self.local_data(u)?.curvature_function())
    }

    /// Radial function of the polar body, `1 / h_K(u)`.
    pub fn polar_radial(&self, u: &UnitVector) -> f64 {
        1.0 / self.support(u)
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j >= self.dim {
            return Err(Error::InvalidArgument(format!(
                "symmetric function index {j} outside 0..={}",
                self.dim - 1
            )));
        }
        Ok(())
    }

    /// The outer parallel body `K + t B^n_2`.
    pub fn parallel_transform(&self, t: f64) -> Result<SmoothBody> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidArgument(format!("parallel offset must be non-negative, got {t}")));
        }
        let kind = match &self.kind {
            SmoothKind::Ball { radius } => SmoothKind::Ball { radius: radius + t },
            SmoothKind::Parallel(view) => SmoothKind::Parallel(ParallelBodyView {
                base: view.base.clone(),
                offset: view.offset + t,
            }),
            _ => SmoothKind::Parallel(ParallelBodyView {
                base: Arc::new(self.clone()),
                offset: t,
            }),
        };
        Ok(Self {
            dim: self.dim,
            kind,
        })
    }

    /// The dilate `λK`.
    pub fn scaled(&self, lambda: f64) -> Result<SmoothBody> {
        if !(lambda > 0.0) {
            return Err(Error::InvalidArgument(format!("scale must be positive, got {lambda}")));
        }
        match &self.kind {
            SmoothKind::Ball { radius } => Self::ball(self.dim, radius * lambda),
            SmoothKind::Ellipsoid { axes } => {
                Self::ellipsoid(axes.iter().map(|a| a * lambda).collect())
            }
            SmoothKind::Generic(g) => {
                let f = g.support.clone();
                Self::generic(self.dim, move |u| lambda * f(u), g.step)
            }
            SmoothKind::Parallel(view) => {
                let base = view.base.scaled(lambda)?;
                base.parallel_transform(view.offset * lambda)
            }
        }
    }

    /// `β(K) = min_u h_K(u)`.
    ///
    /// Closed form for balls and ellipsoids; otherwise the minimum over a
    /// fine sphere grid, lowered by one Lipschitz step of the grid.
    pub fn beta(&self) -> f64 {
        match &self.kind {
            SmoothKind::Ball { radius } => *radius,
            SmoothKind::Ellipsoid { axes } => axes.iter().copied().fold(f64::INFINITY, f64::min),
            SmoothKind::Parallel(view) => view.base.beta() + view.offset,
            SmoothKind::Generic(_) => self.radius_bounds().inner,
        }
    }

    /// Origin-centred in- and out-radius brackets around `β(K)`.
    pub fn radius_bounds(&self) -> RadiusBounds {
        match &self.kind {
            SmoothKind::Ball { radius } => RadiusBounds {
                inner: *radius,
                beta: *radius,
                outer: *radius,
            },
            SmoothKind::Ellipsoid { axes } => {
                let lo = axes.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = axes.iter().copied().fold(0.0, f64::max);
                RadiusBounds {
                    inner: lo,
                    beta: lo,
                    outer: hi,
                }
            }
            _ => {
                let q = SphereQuadrature::build(self.dim, BETA_SCAN_LEVEL)
                    .expect("dimension validated at construction");
                let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
                for u in q.nodes() {
                    let h = self.support(u);
                    lo = lo.min(h);
                    hi = hi.max(h);
                }
                // h is hi-Lipschitz on the sphere
                let slack = hi * q.mesh_width();
                RadiusBounds {
                    inner: lo - slack,
                    beta: lo,
                    outer: hi + slack,
                }
            }
        }
    }
}

/// `λ(K) ≤ β(K) ≤ Λ(K)` about the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusBounds {
    /// Certified radius of an origin-centred ball inside `K`.
    pub inner: f64,
    /// Estimate of `min h_K`.
    pub beta: f64,
    /// Radius of an origin-centred ball containing `K`.
    pub outer: f64,
}

fn check_dim(dim: usize) -> Result<()> {
    if !(2..=5).contains(&dim) {
        return Err(Error::UnsupportedDimension {
            dim,
            reason: "smooth bodies are supported for 2 <= n <= 5",
        });
    }
    Ok(())
}
