//! Coordinate-chart backend: metrics given as smooth component functions on
//! an open set of ℝ⁴, differentiated by nested central differences.
//!
//! The computation chain at a point x:
//!  1. Γ^s_{jr} = ½ g^{sm}(∂_j g_{mr} + ∂_r g_{mj} − ∂_m g_{jr}) with
//!     central differences of the components,
//!  2. Riem^s_{r i j} = ∂ᵢΓ^s_{jr} − ∂ⱼΓ^s_{ir} + Γ^s_{im}Γ^m_{jr}
//!     − Γ^s_{jm}Γ^m_{ir} (each ∂Γ again a central difference, so curvature
//!     costs two nested levels of metric evaluations),
//!  3. lower the first index with g, rebase to the orthonormal frame
//!     produced by Gram-Schmidt on the coordinate basis (orientation forced
//!     positive), and negate so the (0,4) tensor satisfies the same
//!     R(X,Y) = ∇_{[X,Y]} − [∇_X,∇_Y] convention as the exact backend.
//! Ricci and scalar reported from this backend are sphere-positive in both
//! slots of `PointCurvature` (the chart has no second reporting basis).
//!
//! There is no torsion here: the τ-dependent identities live on the exact
//! backend. The chart exists to exercise conformal statements, so it also
//! carries 1-forms and the conformal scalar curvature
//! s^w = s − (3/2)‖θ‖² − 3δθ with δθ = −(det g)^{−1/2} ∂ᵢ(√(det g) gⁱʲθⱼ).
//!
//! Everything is f64; with the default step 1e−4 the noise floor is well
//! under the 1e−4..1e−3 tolerances used for chart assertions, and halving
//! the step shrinks errors about fourfold (second-order differences).

use crate::invariant_geometry::{op6_of, ricci_std_frame, Curv4, PointCurvature};
use crate::linalg::{det4, mat4_inverse, mat4_zero, vec4_zero, Mat4};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ChartError {
    #[error("point (or its difference neighborhood) is outside the metric's domain")]
    DomainViolation,
    #[error("metric is not positive definite at the queried point")]
    NotPositiveDefinite,
}

pub type MetricFn = Arc<dyn Fn(&[f64; 4]) -> [[f64; 4]; 4] + Send + Sync>;
pub type DomainFn = Arc<dyn Fn(&[f64; 4]) -> bool + Send + Sync>;
pub type ScalarFn = Arc<dyn Fn(&[f64; 4]) -> f64 + Send + Sync>;

/// A metric on a chart: component function, difference step, domain guard.
/// Components must return a symmetric matrix; positive definiteness is
/// checked at query time.
#[derive(Clone)]
pub struct ChartMetric {
    pub name: String,
    components: MetricFn,
    pub fd_step: f64,
    domain: DomainFn,
}

impl ChartMetric {
    pub fn new(name: impl Into<String>, components: MetricFn, fd_step: f64) -> Self {
        assert!(fd_step > 0.0, "difference step must be positive");
        ChartMetric { name: name.into(), components, fd_step, domain: Arc::new(|_| true) }
    }

    pub fn with_domain(mut self, domain: DomainFn) -> Self {
        self.domain = domain;
        self
    }

    pub fn at(&self, x: &[f64; 4]) -> [[f64; 4]; 4] {
        (self.components)(x)
    }

    pub fn in_domain(&self, x: &[f64; 4]) -> bool {
        (self.domain)(x)
    }
}

impl std::fmt::Debug for ChartMetric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChartMetric")
            .field("name", &self.name)
            .field("fd_step", &self.fd_step)
            .finish()
    }
}

pub const DEFAULT_FD_STEP: f64 = 1e-4;

pub fn euclidean() -> ChartMetric {
    ChartMetric::new(
        "euclidean",
        Arc::new(|_| {
            let mut g = [[0.0; 4]; 4];
            for i in 0..4 {
                g[i][i] = 1.0;
            }
            g
        }),
        DEFAULT_FD_STEP,
    )
}

/// Round sphere of radius r in stereographic coordinates:
/// gᵢⱼ = 4r⁴/(r²+|x|²)² δᵢⱼ, scalar curvature 12/r².
pub fn round_sphere(r: f64) -> ChartMetric {
    assert!(r > 0.0, "radius must be positive");
    ChartMetric::new(
        format!("round_sphere({r})"),
        Arc::new(move |x| {
            let n2: f64 = x.iter().map(|v| v * v).sum();
            let c = 2.0 * r * r / (r * r + n2);
            let mut g = [[0.0; 4]; 4];
            for i in 0..4 {
                g[i][i] = c * c;
            }
            g
        }),
        DEFAULT_FD_STEP,
    )
}

/// Pointwise rescale g ↦ e^{f}·g on the same domain.
pub fn conformal_rescale(base: &ChartMetric, f: ScalarFn) -> ChartMetric {
    let inner = base.components.clone();
    ChartMetric {
        name: format!("conformal({})", base.name),
        components: Arc::new(move |x| {
            let scale = f(x).exp();
            let mut g = inner(x);
            for row in &mut g {
                for v in row.iter_mut() {
                    *v *= scale;
                }
            }
            g
        }),
        fd_step: base.fd_step,
        domain: base.domain.clone(),
    }
}

fn shifted(x: &[f64; 4], axis: usize, delta: f64) -> [f64; 4] {
    let mut y = *x;
    y[axis] += delta;
    y
}

fn domain_ok(metric: &ChartMetric, x: &[f64; 4]) -> bool {
    if !metric.in_domain(x) {
        return false;
    }
    let h = metric.fd_step;
    for i in 0..4 {
        for d in [-2.0 * h, -h, h, 2.0 * h] {
            if !metric.in_domain(&shifted(x, i, d)) {
                return false;
            }
        }
    }
    true
}

/// Γ[s][j][r] = Γ^s_{jr} at x by central differences of the components.
fn christoffel(metric: &ChartMetric, x: &[f64; 4]) -> Result<[[[f64; 4]; 4]; 4], ChartError> {
    let h = metric.fd_step;
    let g0 = metric.at(x);
    let ginv = mat4_inverse(&g0).ok_or(ChartError::NotPositiveDefinite)?;
    let mut dg = [[[0.0f64; 4]; 4]; 4];
    for i in 0..4 {
        let gp = metric.at(&shifted(x, i, h));
        let gm = metric.at(&shifted(x, i, -h));
        for m in 0..4 {
            for r in 0..4 {
                dg[i][m][r] = (gp[m][r] - gm[m][r]) / (2.0 * h);
            }
        }
    }
    let mut gamma = [[[0.0f64; 4]; 4]; 4];
    for s in 0..4 {
        for j in 0..4 {
            for r in 0..4 {
                let mut acc = 0.0;
                for m in 0..4 {
                    acc += ginv[s][m] * (dg[j][m][r] + dg[r][m][j] - dg[m][j][r]);
                }
                gamma[s][j][r] = 0.5 * acc;
            }
        }
    }
    Ok(gamma)
}

/// Orthonormal frame rows P[a] from Gram-Schmidt on the coordinate basis;
/// orientation forced positive by flipping the last vector if needed.
fn gs_frame(g: &[[f64; 4]; 4]) -> Result<[[f64; 4]; 4], ChartError> {
    let ip = |u: &[f64; 4], v: &[f64; 4]| -> f64 {
        let mut acc = 0.0;
        for p in 0..4 {
            for q in 0..4 {
                acc += u[p] * g[p][q] * v[q];
            }
        }
        acc
    };
    let mut frame = [[0.0f64; 4]; 4];
    for a in 0..4 {
        let mut v = [0.0f64; 4];
        v[a] = 1.0;
        for b in 0..a {
            let c = ip(&v, &frame[b]);
            for p in 0..4 {
                v[p] -= c * frame[b][p];
            }
        }
        let n2 = ip(&v, &v);
        if n2 <= 0.0 {
            return Err(ChartError::NotPositiveDefinite);
        }
        let inv = 1.0 / n2.sqrt();
        for p in 0..4 {
            frame[a][p] = v[p] * inv;
        }
    }
    if det4(&frame) < 0.0 {
        for p in 0..4 {
            frame[3][p] = -frame[3][p];
        }
    }
    Ok(frame)
}

/// Curvature data at one chart point, in the frame produced by `gs_frame`,
/// with the exact backend's curvature sign convention. Torsion-free: the
/// τ-dependent slots are zero and rd_op equals rnabla_op.
pub fn curvature_at(
    metric: &ChartMetric,
    point: &[f64; 4],
) -> Result<PointCurvature<f64>, ChartError> {
    if !domain_ok(metric, point) {
        return Err(ChartError::DomainViolation);
    }
    let h = metric.fd_step;
    let g0 = metric.at(point);
    let frame = gs_frame(&g0)?;
    let gamma0 = christoffel(metric, point)?;

    let mut dgamma = [[[[0.0f64; 4]; 4]; 4]; 4];
    for i in 0..4 {
        let gp = christoffel(metric, &shifted(point, i, h))?;
        let gm = christoffel(metric, &shifted(point, i, -h))?;
        for s in 0..4 {
            for j in 0..4 {
                for r in 0..4 {
                    dgamma[i][s][j][r] = (gp[s][j][r] - gm[s][j][r]) / (2.0 * h);
                }
            }
        }
    }

    // Riem^s_{r i j}, then lower the upper index.
    let mut riem = [[[[0.0f64; 4]; 4]; 4]; 4];
    for s in 0..4 {
        for r in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    let mut acc = dgamma[i][s][j][r] - dgamma[j][s][i][r];
                    for m in 0..4 {
                        acc += gamma0[s][i][m] * gamma0[m][j][r];
                        acc -= gamma0[s][j][m] * gamma0[m][i][r];
                    }
                    riem[s][r][i][j] = acc;
                }
            }
        }
    }
    let mut r4c = [[[[0.0f64; 4]; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for r in 0..4 {
                for t in 0..4 {
                    let mut acc = 0.0;
                    for s in 0..4 {
                        acc += g0[t][s] * riem[s][r][i][j];
                    }
                    r4c[i][j][r][t] = acc;
                }
            }
        }
    }

    // Rebase one index at a time, then flip to the exact backend's sign.
    let contract = |src: &[[[[f64; 4]; 4]; 4]; 4], stage: usize| {
        let mut out = [[[[0.0f64; 4]; 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let mut acc = 0.0;
                        for m in 0..4 {
                            let v = match stage {
                                0 => src[m][b][c][d],
                                1 => src[a][m][c][d],
                                2 => src[a][b][m][d],
                                _ => src[a][b][c][m],
                            };
                            let row = match stage {
                                0 => a,
                                1 => b,
                                2 => c,
                                _ => d,
                            };
                            acc += frame[row][m] * v;
                        }
                        out[a][b][c][d] = acc;
                    }
                }
            }
        }
        out
    };
    let mut r4 = r4c;
    for stage in 0..4 {
        r4 = contract(&r4, stage);
    }
    let r4_paper: Box<Curv4<f64>> = Box::new(std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            std::array::from_fn(|c| std::array::from_fn(|d| -r4[a][b][c][d]))
        })
    }));

    let op = op6_of(&r4_paper);
    let ricci_std = ricci_std_frame(&r4_paper);
    let mut scalar_std = 0.0;
    for i in 0..4 {
        scalar_std += ricci_std[i][i];
    }
    Ok(PointCurvature {
        rnabla_op: op.clone(),
        rd_op: op,
        ricci: ricci_std.clone(),
        scalar_curv: scalar_std,
        ricci_std,
        scalar_std,
        nabla_tau: mat4_zero(),
        delta_tau: 0.0,
        dtau: [0.0; 6],
        tau_norm2: 0.0,
        tau_frame: vec4_zero(),
    })
}

/// A 1-form on the chart, by its coordinate components.
#[derive(Clone)]
pub struct ChartOneForm {
    components: Arc<dyn Fn(&[f64; 4]) -> [f64; 4] + Send + Sync>,
}

impl ChartOneForm {
    pub fn new(components: Arc<dyn Fn(&[f64; 4]) -> [f64; 4] + Send + Sync>) -> Self {
        ChartOneForm { components }
    }

    pub fn zero() -> Self {
        ChartOneForm { components: Arc::new(|_| [0.0; 4]) }
    }

    pub fn at(&self, x: &[f64; 4]) -> [f64; 4] {
        (self.components)(x)
    }
}

/// df by central differences.
pub fn d_of_function(f: ScalarFn, fd_step: f64) -> ChartOneForm {
    assert!(fd_step > 0.0);
    ChartOneForm::new(Arc::new(move |x| {
        std::array::from_fn(|i| {
            (f(&shifted(x, i, fd_step)) - f(&shifted(x, i, -fd_step))) / (2.0 * fd_step)
        })
    }))
}

fn inverse_at(metric: &ChartMetric, x: &[f64; 4]) -> Result<Mat4<f64>, ChartError> {
    mat4_inverse(&metric.at(x)).ok_or(ChartError::NotPositiveDefinite)
}

/// Conformal scalar curvature s^w = s − (3/2)‖θ‖² − 3δθ of the Weyl
/// structure (g, θ) at a point. Under g ↦ e^f g, θ ↦ θ + df it scales by
/// e^{−f}.
pub fn conformal_scalar_at(
    metric: &ChartMetric,
    theta: &ChartOneForm,
    point: &[f64; 4],
) -> Result<f64, ChartError> {
    let pc = curvature_at(metric, point)?;
    let ginv = inverse_at(metric, point)?;
    let th = theta.at(point);
    let mut norm2 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            norm2 += ginv[i][j] * th[i] * th[j];
        }
    }
    // δθ = −(det g)^{−1/2} ∂ᵢ(√(det g) gⁱʲ θⱼ).
    let h = metric.fd_step;
    let weighted = |x: &[f64; 4]| -> Result<[f64; 4], ChartError> {
        let g = metric.at(x);
        let inv = mat4_inverse(&g).ok_or(ChartError::NotPositiveDefinite)?;
        let w = det4(&g).sqrt();
        let t = theta.at(x);
        Ok(std::array::from_fn(|i| {
            let mut acc = 0.0;
            for j in 0..4 {
                acc += inv[i][j] * t[j];
            }
            w * acc
        }))
    };
    let mut div = 0.0;
    for i in 0..4 {
        let vp = weighted(&shifted(point, i, h))?;
        let vm = weighted(&shifted(point, i, -h))?;
        div += (vp[i] - vm[i]) / (2.0 * h);
    }
    let delta_theta = -div / det4(&metric.at(point)).sqrt();
    Ok(pc.scalar_std - 1.5 * norm2 - 3.0 * delta_theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature_analysis::{decompose, is_asd, is_sd};
    use crate::linalg::{mat4_frob2, mat6_frob2};

    const P1: [f64; 4] = [0.3, -0.7, 0.2, 0.5];

    #[test]
    fn euclidean_curvature_is_numerically_zero() {
        let pc = curvature_at(&euclidean(), &P1).unwrap();
        assert!(mat6_frob2(&pc.rnabla_op).sqrt() < 1e-8);
        assert!(mat4_frob2(&pc.ricci_std).sqrt() < 1e-8);
    }

    #[test]
    fn unit_sphere_has_constant_curvature_twelve() {
        let sphere = round_sphere(1.0);
        for x in [[0.0; 4], P1, [1.1, 0.4, -0.3, 0.0]] {
            let pc = curvature_at(&sphere, &x).unwrap();
            assert!((pc.scalar_std - 12.0).abs() < 1e-3, "s={} at {:?}", pc.scalar_std, x);
            let dec = decompose(&pc.rnabla_op, &pc.ricci_std, &pc.scalar_std, 1e-4).unwrap();
            assert!(dec.wplus_norm2().sqrt() < 1e-4);
            assert!(dec.wminus_norm2().sqrt() < 1e-4);
            assert!(dec.b_norm2().sqrt() < 1e-4);
        }
        // Radius 2 scales the scalar by 1/4.
        let pc = curvature_at(&round_sphere(2.0), &P1).unwrap();
        assert!((pc.scalar_std - 3.0).abs() < 1e-3);
    }

    #[test]
    fn domain_and_definiteness_guards() {
        let guarded = euclidean().with_domain(Arc::new(|x| x[0].abs() < 1.0));
        assert_eq!(
            curvature_at(&guarded, &[2.0, 0.0, 0.0, 0.0]).unwrap_err(),
            ChartError::DomainViolation
        );
        // Just inside the guard but with the neighborhood crossing it.
        assert!(curvature_at(&guarded, &[0.99999999, 0.0, 0.0, 0.0]).is_err());
        let lorentzian = ChartMetric::new(
            "indefinite",
            Arc::new(|_| {
                let mut g = [[0.0; 4]; 4];
                g[0][0] = -1.0;
                for i in 1..4 {
                    g[i][i] = 1.0;
                }
                g
            }),
            DEFAULT_FD_STEP,
        );
        assert_eq!(
            curvature_at(&lorentzian, &[0.0; 4]).unwrap_err(),
            ChartError::NotPositiveDefinite
        );
    }

    #[test]
    fn conformal_rescale_composes_pointwise() {
        let same = conformal_rescale(&euclidean(), Arc::new(|_| 0.0));
        assert_eq!(same.at(&P1), euclidean().at(&P1));
        // e^f times euclidean with f = log(4/(1+|x|²)²) is the unit sphere.
        let synthetic = conformal_rescale(
            &euclidean(),
            Arc::new(|x: &[f64; 4]| {
                let n2: f64 = x.iter().map(|v| v * v).sum();
                (4.0 / ((1.0 + n2) * (1.0 + n2))).ln()
            }),
        );
        let pc = curvature_at(&synthetic, &P1).unwrap();
        assert!((pc.scalar_std - 12.0).abs() < 1e-3);
    }

    #[test]
    fn conformal_scalar_closed_forms() {
        // Euclidean with constant θ = c·dx₁: s^w = −(3/2)c².
        let c = 0.8;
        let constant = ChartOneForm::new(Arc::new(move |_| [c, 0.0, 0.0, 0.0]));
        let sw = conformal_scalar_at(&euclidean(), &constant, &P1).unwrap();
        assert!((sw + 1.5 * c * c).abs() < 1e-6, "sw={sw}");
        // Gauge invariance from the flat representative: s^w(e^f δ, df) = 0.
        let f: ScalarFn = Arc::new(|x: &[f64; 4]| 0.5 * x[0]);
        let rescaled = conformal_rescale(&euclidean(), f.clone());
        let theta = d_of_function(f, DEFAULT_FD_STEP);
        let sw = conformal_scalar_at(&rescaled, &theta, &P1).unwrap();
        assert!(sw.abs() < 1e-3, "sw={sw}");
    }

    #[test]
    fn weyl_predicates_survive_conformal_rescale() {
        // S²×ℝ² is not conformally flat: both predicates false, before and
        // after rescaling. The sphere keeps both true.
        let s2xr2 = ChartMetric::new(
            "s2xr2",
            Arc::new(|x: &[f64; 4]| {
                let n2 = x[0] * x[0] + x[1] * x[1];
                let c = 2.0 / (1.0 + n2);
                let mut g = [[0.0; 4]; 4];
                g[0][0] = c * c;
                g[1][1] = c * c;
                g[2][2] = 1.0;
                g[3][3] = 1.0;
                g
            }),
            DEFAULT_FD_STEP,
        );
        let f: ScalarFn = Arc::new(|x: &[f64; 4]| 0.5 * x[0]);
        for (metric, expect_flat) in [
            (round_sphere(1.0), true),
            (s2xr2, false),
        ] {
            let rescaled = conformal_rescale(&metric, f.clone());
            for m in [&metric, &rescaled] {
                let pc = curvature_at(m, &P1).unwrap();
                let dec =
                    decompose(&pc.rnabla_op, &pc.ricci_std, &pc.scalar_std, 1e-4).unwrap();
                assert_eq!(is_sd(&dec, 1e-4), expect_flat, "{}", m.name);
                assert_eq!(is_asd(&dec, 1e-4), expect_flat, "{}", m.name);
            }
        }
    }
}
