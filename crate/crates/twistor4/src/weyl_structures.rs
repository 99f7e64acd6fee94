//! Weyl structures: torsion-free connections with ∇^w g = θ⊗g.
//!
//! For a metric g and a 1-form θ the Weyl connection is
//!   ∇^w_X Y = ∇_X Y − ½[θ(X)Y + θ(Y)X − g(X,Y)θ♯] ,
//! torsion-free but not metric unless θ = 0. Its symmetrized Ricci tensor
//! has the closed form (dimension n, here instantiated at n = 4)
//!   Ric^sym = Ric + (n−2)/2·𝒮(∇θ) − (n−2)/4·(‖θ‖²g − θ⊗θ) − ½(δθ)g ,
//! with 𝒮(∇θ)(X,Y) = ½[(∇_Xθ)Y + (∇_Yθ)X]. The final-term grouping in the
//! classical display is ambiguous; the grouping above is the one whose trace
//! reproduces the conformal scalar curvature
//!   s^w = s − (n−1)(n−2)/4·‖θ‖² − (n−1)·δθ ,
//! and it is verified against the curvature of the Weyl connection itself
//! (the two-path tests).
//!
//! Einstein-Weyl means Ric^sym is proportional to g; since trace(Ric^sym) =
//! s^w exactly, the residual is Ric^sym − (s^w/4)g.
//!
//! Torsion enters through two distinct sign conventions, both exposed:
//! the conformal-scalar criterion reads θ = +τ, the Einstein-Weyl Ricci
//! identity reads θ = −τ. Use `conformal_weyl_structure` and
//! `einstein_weyl_structure` rather than picking a sign by hand.
//!
//! Ricci and scalar throughout are the sphere-positive pair.

use crate::invariant_geometry::{
    analyze, codiff, levi_civita, nabla_tau_table, orthonormal_frame, Connection, GeometryError,
    InvariantGeometry, OrthonormalFrame,
};
use crate::linalg::{Mat4, Vec4};
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum WeylError {
    #[error("conformal gauge factor must be positive")]
    NonPositiveGauge,
}

/// A metric together with the 1-form of a Weyl structure. `theta` components
/// live on the dual of the algebra basis, like the geometry's τ.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylStructure<S: Scalar> {
    pub geometry: InvariantGeometry<S>,
    pub theta: Vec4<S>,
}

/// The Weyl structure with θ = +τ: its conformal scalar curvature vanishes
/// exactly when the scalar-curvature identity of the (o,o) twistor
/// components holds.
pub fn conformal_weyl_structure<S: Scalar>(geom: &InvariantGeometry<S>) -> WeylStructure<S> {
    WeylStructure { geometry: geom.clone(), theta: geom.tau.clone() }
}

/// The Weyl structure with θ = −τ: it is Einstein-Weyl exactly when the
/// Ricci identity of the (o,−o) twistor components holds.
pub fn einstein_weyl_structure<S: Scalar>(geom: &InvariantGeometry<S>) -> WeylStructure<S> {
    WeylStructure {
        geometry: geom.clone(),
        theta: std::array::from_fn(|i| S::zero() - geom.tau[i].clone()),
    }
}

fn theta_frame<S: Scalar>(frame: &OrthonormalFrame<S>, theta: &Vec4<S>) -> Vec4<S> {
    std::array::from_fn(|i| {
        let mut acc = S::zero();
        for p in 0..4 {
            acc += frame.vectors[i][p].clone() * theta[p].clone();
        }
        acc
    })
}

/// ∇^w in the orthonormal frame. Torsion-free; metric only when θ = 0.
pub fn weyl_connection<S: Scalar>(ws: &WeylStructure<S>) -> Result<Connection<S>, GeometryError> {
    let frame = orthonormal_frame(&ws.geometry)?;
    let lc = levi_civita(&frame);
    let th = theta_frame(&frame, &ws.theta);
    let half = S::from_ratio(1, 2);
    let mut gamma = lc.gamma.clone();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let mut corr = S::zero();
                if j == k {
                    corr += th[i].clone();
                }
                if i == k {
                    corr += th[j].clone();
                }
                if i == j {
                    corr -= th[k].clone();
                }
                gamma[i][j][k] = gamma[i][j][k].clone() - half.clone() * corr;
            }
        }
    }
    let metric = th.iter().all(|x| x.is_zero());
    Ok(Connection { gamma, metric, torsion_free: true })
}

/// The closed Ricci formula for any dimension n ≥ 3, on frame components.
pub fn ricci_sym_general_n<S: Scalar>(
    ricci_std: &Mat4<S>,
    nabla_theta: &Mat4<S>,
    delta_theta: &S,
    theta_frame: &Vec4<S>,
    theta_norm2: &S,
    n: i64,
) -> Mat4<S> {
    let c_sym = S::from_ratio(n - 2, 2);
    let c_quad = S::from_ratio(n - 2, 4);
    let half = S::from_ratio(1, 2);
    std::array::from_fn(|x| {
        std::array::from_fn(|y| {
            let mut v = ricci_std[x][y].clone();
            let sym = half.clone()
                * (nabla_theta[x][y].clone() + nabla_theta[y][x].clone());
            v += c_sym.clone() * sym;
            let mut quad = S::zero();
            if x == y {
                quad += theta_norm2.clone();
            }
            quad -= theta_frame[x].clone() * theta_frame[y].clone();
            v -= c_quad.clone() * quad;
            if x == y {
                v -= half.clone() * delta_theta.clone();
            }
            v
        })
    })
}

/// θ-dependent inputs of the Ricci formula, extracted from a geometry.
struct ThetaData<S: Scalar> {
    frame_comps: Vec4<S>,
    nabla: Mat4<S>,
    delta: S,
    norm2: S,
}

fn theta_data<S: Scalar>(
    frame: &OrthonormalFrame<S>,
    lc: &Connection<S>,
    theta: &Vec4<S>,
) -> ThetaData<S> {
    let tf = theta_frame(frame, theta);
    let nabla = nabla_tau_table(lc, &tf);
    let delta = codiff(lc, &tf);
    let mut norm2 = S::zero();
    for i in 0..4 {
        norm2 += tf[i].clone() * tf[i].clone();
    }
    ThetaData { frame_comps: tf, nabla, delta, norm2 }
}

/// Everything θ-independent the Einstein-Weyl residual needs, extracted once
/// so parameter scans do not re-differentiate the geometry per grid point.
#[derive(Debug, Clone)]
pub struct WeylScanContext<S: Scalar> {
    pub frame: OrthonormalFrame<S>,
    pub levi_civita: Connection<S>,
    pub ricci_std: Mat4<S>,
    pub scalar_std: S,
}

pub fn weyl_scan_context<S: Scalar>(
    geom: &InvariantGeometry<S>,
) -> Result<WeylScanContext<S>, GeometryError> {
    let a = analyze(geom)?;
    Ok(WeylScanContext {
        frame: a.frame,
        levi_civita: a.levi_civita,
        ricci_std: a.point.ricci_std,
        scalar_std: a.point.scalar_std,
    })
}

/// Symmetrized Ricci of the Weyl connection, by the closed formula at n = 4.
pub fn ricci_sym<S: Scalar>(ws: &WeylStructure<S>) -> Result<Mat4<S>, GeometryError> {
    let ctx = weyl_scan_context(&ws.geometry)?;
    Ok(ricci_sym_with(&ctx, &ws.theta))
}

pub fn ricci_sym_with<S: Scalar>(ctx: &WeylScanContext<S>, theta: &Vec4<S>) -> Mat4<S> {
    let td = theta_data(&ctx.frame, &ctx.levi_civita, theta);
    ricci_sym_general_n(&ctx.ricci_std, &td.nabla, &td.delta, &td.frame_comps, &td.norm2, 4)
}

/// The same tensor from the curvature of ∇^w itself: contraction
/// Σᵢ R^w(X,Fᵢ,Y,Fᵢ), then symmetrization. Exact agreement with `ricci_sym`
/// is the two-path validation of the closed formula.
pub fn ricci_sym_via_curvature<S: Scalar>(
    ws: &WeylStructure<S>,
) -> Result<Mat4<S>, GeometryError> {
    let frame = orthonormal_frame(&ws.geometry)?;
    let conn = weyl_connection(ws)?;
    let r4 = crate::invariant_geometry::curvature_tensor(&conn, &frame);
    let ric = crate::invariant_geometry::ricci_std_frame(&r4);
    let half = S::from_ratio(1, 2);
    Ok(std::array::from_fn(|x| {
        std::array::from_fn(|y| half.clone() * (ric[x][y].clone() + ric[y][x].clone()))
    }))
}

pub fn conformal_scalar_general_n<S: Scalar>(
    scalar_std: &S,
    theta_norm2: &S,
    delta_theta: &S,
    n: i64,
) -> S {
    scalar_std.clone()
        - S::from_ratio((n - 1) * (n - 2), 4) * theta_norm2.clone()
        - S::from_ratio(n - 1, 1) * delta_theta.clone()
}

/// s^w = s − (3/2)‖θ‖² − 3δθ, the trace of `ricci_sym`.
pub fn conformal_scalar<S: Scalar>(ws: &WeylStructure<S>) -> Result<S, GeometryError> {
    let ctx = weyl_scan_context(&ws.geometry)?;
    Ok(conformal_scalar_with(&ctx, &ws.theta))
}

pub fn conformal_scalar_with<S: Scalar>(ctx: &WeylScanContext<S>, theta: &Vec4<S>) -> S {
    let td = theta_data(&ctx.frame, &ctx.levi_civita, theta);
    conformal_scalar_general_n(&ctx.scalar_std, &td.norm2, &td.delta, 4)
}

/// Ric^sym − (s^w/4)·g on frame components; zero exactly for Einstein-Weyl.
pub fn einstein_weyl_residual<S: Scalar>(
    ws: &WeylStructure<S>,
) -> Result<Mat4<S>, GeometryError> {
    let ctx = weyl_scan_context(&ws.geometry)?;
    Ok(einstein_weyl_residual_with(&ctx, &ws.theta))
}

pub fn einstein_weyl_residual_with<S: Scalar>(
    ctx: &WeylScanContext<S>,
    theta: &Vec4<S>,
) -> Mat4<S> {
    let ric = ricci_sym_with(ctx, theta);
    let mut trace = S::zero();
    for i in 0..4 {
        trace += ric[i][i].clone();
    }
    let quarter = S::from_ratio(1, 4) * trace;
    std::array::from_fn(|x| {
        std::array::from_fn(|y| {
            let mut v = ric[x][y].clone();
            if x == y {
                v -= quarter.clone();
            }
            v
        })
    })
}

/// Rescale the metric by the constant conformal factor e^f (passed as the
/// factor itself, so rational factors stay rational); θ is unchanged since
/// df = 0. The conformal scalar of the result is 1/e_f times the original.
pub fn gauge_transform<S: Scalar>(
    ws: &WeylStructure<S>,
    e_f: &S,
) -> Result<WeylStructure<S>, WeylError> {
    if e_f.to_f64() <= 0.0 {
        return Err(WeylError::NonPositiveGauge);
    }
    let mut out = ws.clone();
    for i in 0..4 {
        for j in 0..4 {
            out.geometry.gram[i][j] = e_f.clone() * out.geometry.gram[i][j].clone();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_flat, make_g_lambda};
    use crate::linalg::vec4_zero;
    use crate::scalar::{rat, Rat};

    fn frob2(m: &Mat4<Rat>) -> Rat {
        let mut acc = rat(0, 1);
        for i in 0..4 {
            for j in 0..4 {
                acc += m[i][j].clone() * m[i][j].clone();
            }
        }
        acc
    }

    #[test]
    fn zero_theta_degenerates_to_levi_civita() {
        let geom = make_g_lambda(rat(1, 1), rat(1, 1)).unwrap();
        let ws = WeylStructure { geometry: geom.clone(), theta: vec4_zero() };
        let conn = weyl_connection(&ws).unwrap();
        let frame = orthonormal_frame(&geom).unwrap();
        let lc = levi_civita(&frame);
        assert_eq!(conn.gamma, lc.gamma);
        assert!(conn.metric);
        let a = analyze(&geom).unwrap();
        assert_eq!(ricci_sym(&ws).unwrap(), a.point.ricci_std);
        assert_eq!(conformal_scalar(&ws).unwrap(), a.point.scalar_std);
    }

    #[test]
    fn flat_constant_theta_closed_forms() {
        let mut geom = make_flat::<Rat>();
        geom.tau = vec4_zero();
        let theta = [rat(2, 1), rat(-1, 1), rat(0, 1), rat(3, 1)];
        let ws = WeylStructure { geometry: geom, theta: theta.clone() };
        let conn = weyl_connection(&ws).unwrap();
        // ∇^w g = θ⊗g componentwise.
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let defect = rat(0, 1)
                        - conn.gamma[i][j][k].clone()
                        - conn.gamma[i][k][j].clone();
                    let expect = if j == k { theta[i].clone() } else { rat(0, 1) };
                    assert_eq!(defect, expect);
                }
            }
        }
        // Ric^sym = −½(‖θ‖²g − θ⊗θ) when ∇θ = 0, δθ = 0, Ric = 0.
        let ric = ricci_sym(&ws).unwrap();
        let n2 = rat(4 + 1 + 9, 1);
        for x in 0..4 {
            for y in 0..4 {
                let mut expect = theta[x].clone() * theta[y].clone();
                if x == y {
                    expect = expect - n2.clone();
                }
                assert_eq!(ric[x][y], expect / rat(2, 1));
            }
        }
    }

    #[test]
    fn two_paths_agree_and_trace_is_conformal_scalar() {
        let mut geom = make_g_lambda(rat(2, 1), rat(2, 1)).unwrap();
        geom.tau = [rat(1, 3), rat(-2, 1), rat(5, 7), rat(1, 1)];
        let ws = conformal_weyl_structure(&geom);
        let formula = ricci_sym(&ws).unwrap();
        let curved = ricci_sym_via_curvature(&ws).unwrap();
        assert_eq!(formula, curved);
        let mut trace = rat(0, 1);
        for i in 0..4 {
            trace += formula[i][i].clone();
        }
        assert_eq!(trace, conformal_scalar(&ws).unwrap());
    }

    #[test]
    fn conformal_scalar_roots_of_the_solvable_family() {
        // k=1, τ = μα¹: s^w = −(3/2)(μ² + 8μ + 15), vanishing at −3 and −5.
        for (mu, zero) in [(rat(-3, 1), true), (rat(-5, 1), true), (rat(1, 1), false)] {
            let mut geom = make_g_lambda(rat(0, 1), rat(1, 1)).unwrap();
            geom.tau = [mu, rat(0, 1), rat(0, 1), rat(0, 1)];
            let ws = conformal_weyl_structure(&geom);
            assert_eq!(conformal_scalar(&ws).unwrap().is_zero(), zero);
        }
    }

    #[test]
    fn einstein_weyl_residual_separates_the_metrics() {
        let g2 = make_g_lambda(rat(1, 1), rat(2, 1)).unwrap();
        let r2 = einstein_weyl_residual(&einstein_weyl_structure(&g2)).unwrap();
        assert!(frob2(&r2).is_zero());
        let g1 = make_g_lambda(rat(1, 1), rat(1, 1)).unwrap();
        let r1 = einstein_weyl_residual(&einstein_weyl_structure(&g1)).unwrap();
        assert!(!frob2(&r1).is_zero());
    }

    #[test]
    fn gauge_transform_scales_the_conformal_scalar() {
        let geom = make_g_lambda(rat(0, 1), rat(2, 1)).unwrap();
        let ws = einstein_weyl_structure(&geom);
        let before = conformal_scalar(&ws).unwrap();
        let after_ws = gauge_transform(&ws, &rat(4, 1)).unwrap();
        let after = conformal_scalar(&after_ws).unwrap();
        assert_eq!(after, before / rat(4, 1));
        // Einstein-Weyl is conformally invariant.
        let res = einstein_weyl_residual(&after_ws).unwrap();
        assert!(frob2(&res).is_zero());
        assert_eq!(gauge_transform(&ws, &rat(-1, 1)), Err(WeylError::NonPositiveGauge));
    }
}
