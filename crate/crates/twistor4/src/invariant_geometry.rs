//! Exact curvature of left-invariant metrics on 4-dimensional Lie groups.
//!
//! A geometry is a Lie algebra with structure constants c^k_{ij}, a
//! positive-definite Gram matrix on the chosen basis, an orientation sign,
//! and a torsion 1-form τ. Everything is evaluated at the identity: for
//! left-invariant fields the Koszul formula degenerates to
//!   2g(∇_XY, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y),
//! the curvature map is the algebraic
//!   R(X,Y) = ∇_{[X,Y]} − [∇_X, ∇_Y],
//! d and δ act on invariant forms by dω(X,Y) = −ω([X,Y]) and
//! δω = −Σᵢ(∇_{Fᵢ}ω)(Fᵢ), with (∇_Xω)(Y) = −ω(∇_XY).
//!
//! The metric connection with skew torsion is D = ∇ + ½T, where the torsion
//! 3-form 𝒯 is the Hodge dual of τ in the oriented orthonormal frame:
//!   𝒯₂₃₄ = −τ₁, 𝒯₁₃₄ = τ₂, 𝒯₁₂₄ = −τ₃, 𝒯₁₂₃ = τ₄.
//!
//! Sign conventions. The curvature map above fixes all tensors; its two
//! Ricci contractions differ by a global sign for torsion-free connections.
//! `PointCurvature` carries both: `ricci`/`scalar_curv` use the contraction
//! Σᵢ R4(Fᵢ,X,Y,Fᵢ) that reproduces the classical diagonal tables of the
//! solvable catalog family, reported in the algebra's own basis;
//! `ricci_std`/`scalar_std` use Σᵢ R4(X,Fᵢ,Y,Fᵢ), the sign under which round
//! spheres have positive scalar curvature. Every operator identity in this
//! library (curvature decomposition, Weyl-structure formulas, integrability
//! conditions) closes with the `_std` pair, and `scalar_std` equals the trace
//! of the curvature operator on Λ²; the two reports differ only by sign.

use crate::bivector_algebra::{Bivector, PAIRS};
use crate::linalg::{mat6_trace, vec4_zero, Mat4, Mat6, Vec4};
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("structure constants are not antisymmetric in the bracket slots")]
    NotAntisymmetric,
    #[error("Jacobi identity fails on basis triple ({0},{1},{2})")]
    JacobiViolation(usize, usize, usize),
    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("orthonormalization requires a square root this scalar type cannot represent")]
    IrrationalFrame,
    #[error("parameter {0} must be positive")]
    NonPositiveParameter(&'static str),
}

/// Structure constants of a 4-dimensional Lie algebra: [eᵢ,eⱼ] = Σ c[i][j][k] e_k.
pub type Structure<S> = [[[S; 4]; 4]; 4];

pub fn structure_zero<S: Scalar>() -> Structure<S> {
    std::array::from_fn(|_| std::array::from_fn(|_| vec4_zero()))
}

/// Record [eᵢ,eⱼ] = Σ comps, filling the antisymmetric slot as well.
pub fn set_bracket<S: Scalar>(c: &mut Structure<S>, i: usize, j: usize, comps: &[(usize, S)]) {
    for (k, v) in comps {
        c[i][j][*k] = v.clone();
        c[j][i][*k] = S::zero() - v.clone();
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra4<S: Scalar> {
    c: Structure<S>,
}

impl<S: Scalar> LieAlgebra4<S> {
    /// Antisymmetry and the Jacobi identity are verified exactly; silent
    /// non-Lie input would invalidate every curvature identity downstream.
    pub fn new(c: Structure<S>) -> Result<Self, GeometryError> {
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    if !(c[i][j][k].clone() + c[j][i][k].clone()).is_zero() {
                        return Err(GeometryError::NotAntisymmetric);
                    }
                }
            }
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                for k in (j + 1)..4 {
                    for l in 0..4 {
                        let mut acc = S::zero();
                        for m in 0..4 {
                            acc += c[j][k][m].clone() * c[i][m][l].clone();
                            acc += c[k][i][m].clone() * c[j][m][l].clone();
                            acc += c[i][j][m].clone() * c[k][m][l].clone();
                        }
                        if !acc.is_zero() {
                            return Err(GeometryError::JacobiViolation(i, j, k));
                        }
                    }
                }
            }
        }
        Ok(LieAlgebra4 { c })
    }

    pub fn structure(&self) -> &Structure<S> {
        &self.c
    }

    pub fn abelian() -> Self {
        LieAlgebra4 { c: structure_zero() }
    }
}

/// Left-invariant metric data on a 4-dimensional Lie group, seen at the
/// identity. `tau` holds the components of the torsion 1-form on the dual of
/// the algebra basis (not the orthonormal frame).
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantGeometry<S: Scalar> {
    pub algebra: LieAlgebra4<S>,
    pub gram: Mat4<S>,
    /// ±1: which orientation of (e₁,…,e₄) counts as positive.
    pub orientation: i8,
    pub tau: Vec4<S>,
}

/// Oriented orthonormal frame (F₁,…,F₄) produced by Gram–Schmidt on the
/// algebra basis, together with the structure constants rebased to it.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalFrame<S: Scalar> {
    /// vectors[i] = algebra-basis coordinates of Fᵢ.
    pub vectors: [Vec4<S>; 4],
    /// [Fᵢ,Fⱼ] = Σ c[i][j][k] F_k.
    pub c: Structure<S>,
    /// basis_in_frame[p][m] = g(e_p, F_m), the frame coordinates of e_p.
    pub basis_in_frame: [Vec4<S>; 4],
}

/// Connection coefficients in the orthonormal frame: ∇_{Fᵢ}Fⱼ = Σ gamma[i][j][k] F_k.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection<S: Scalar> {
    pub gamma: [[[S; 4]; 4]; 4],
    /// gamma[i][j][k] = −gamma[i][k][j] holds exactly when true.
    pub metric: bool,
    pub torsion_free: bool,
}

/// The (0,4) curvature tensor in frame components: curv4[i][j][k][l] = g(R(Fᵢ,Fⱼ)F_k, F_l).
pub type Curv4<S> = [[[[S; 4]; 4]; 4]; 4];

/// All curvature data of one geometry at one point, bases as per module docs.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCurvature<S: Scalar> {
    /// ℛ^∇ on Λ² in the s-basis: rnabla_op[i][j] = g(ℛ^∇(s_j), s_i).
    pub rnabla_op: Mat6<S>,
    /// ℛ^D of the skew-torsion connection, same basis and pairing.
    pub rd_op: Mat6<S>,
    /// Ricci in the algebra's original basis, catalog-table sign.
    pub ricci: Mat4<S>,
    /// Trace of `ricci` with respect to g.
    pub scalar_curv: S,
    /// Ricci in frame components, sphere-positive sign: feeds every identity.
    pub ricci_std: Mat4<S>,
    /// = trace(rnabla_op) = −scalar_curv.
    pub scalar_std: S,
    /// nabla_tau[i][j] = (∇_{Fᵢ}τ)(Fⱼ).
    pub nabla_tau: Mat4<S>,
    pub delta_tau: S,
    /// dτ as Eᵢ∧Eⱼ-pair components in the oriented frame.
    pub dtau: [S; 6],
    pub tau_norm2: S,
    /// τ(Fᵢ).
    pub tau_frame: Vec4<S>,
}

/// Gram–Schmidt frame, positively oriented for `geom.orientation`.
///
/// The pivots of Gram–Schmidt are the only square roots in the library; a
/// rational gram whose pivots are not perfect squares is rejected rather
/// than approximated.
pub fn orthonormal_frame<S: Scalar>(
    geom: &InvariantGeometry<S>,
) -> Result<OrthonormalFrame<S>, GeometryError> {
    let g = &geom.gram;
    for i in 0..4 {
        for j in 0..4 {
            if !(g[i][j].clone() - g[j][i].clone()).is_zero() {
                return Err(GeometryError::NotPositiveDefinite);
            }
        }
    }
    let ip = |a: &Vec4<S>, b: &Vec4<S>| -> S {
        let mut acc = S::zero();
        for i in 0..4 {
            for j in 0..4 {
                acc += a[i].clone() * g[i][j].clone() * b[j].clone();
            }
        }
        acc
    };
    let mut frame: [Vec4<S>; 4] = std::array::from_fn(|_| vec4_zero());
    for i in 0..4 {
        let mut u: Vec4<S> = std::array::from_fn(|p| if p == i { S::one() } else { S::zero() });
        for j in 0..i {
            let coeff = ip(&u, &frame[j]);
            for p in 0..4 {
                u[p] = u[p].clone() - coeff.clone() * frame[j][p].clone();
            }
        }
        let n2 = ip(&u, &u);
        if n2.to_f64() <= 0.0 {
            return Err(GeometryError::NotPositiveDefinite);
        }
        let n = n2.try_sqrt().ok_or(GeometryError::IrrationalFrame)?;
        let inv = S::one() / n;
        frame[i] = std::array::from_fn(|p| inv.clone() * u[p].clone());
    }
    if geom.orientation < 0 {
        frame[3] = std::array::from_fn(|p| S::zero() - frame[3][p].clone());
    }

    let basis_in_frame: [Vec4<S>; 4] = std::array::from_fn(|p| {
        std::array::from_fn(|m| {
            let mut acc = S::zero();
            for q in 0..4 {
                acc += g[p][q].clone() * frame[m][q].clone();
            }
            acc
        })
    });

    let c0 = geom.algebra.structure();
    let mut c = structure_zero();
    for i in 0..4 {
        for j in 0..4 {
            // [F_i, F_j] in algebra-basis coordinates, then re-expanded.
            let mut br = vec4_zero::<S>();
            for p in 0..4 {
                if frame[i][p].is_zero() {
                    continue;
                }
                for q in 0..4 {
                    if frame[j][q].is_zero() {
                        continue;
                    }
                    let f = frame[i][p].clone() * frame[j][q].clone();
                    for k in 0..4 {
                        br[k] += f.clone() * c0[p][q][k].clone();
                    }
                }
            }
            for m in 0..4 {
                let mut acc = S::zero();
                for k in 0..4 {
                    acc += br[k].clone() * basis_in_frame[k][m].clone();
                }
                c[i][j][m] = acc;
            }
        }
    }
    Ok(OrthonormalFrame { vectors: frame, c, basis_in_frame })
}

/// Koszul formula in an orthonormal frame of a Lie algebra:
/// Γ[i][j][k] = g(∇_{Fᵢ}Fⱼ, F_k) = ½(c_{ijk} − c_{jki} + c_{kij}).
pub fn levi_civita<S: Scalar>(frame: &OrthonormalFrame<S>) -> Connection<S> {
    let half = S::from_ratio(1, 2);
    let mut gamma: [[[S; 4]; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| vec4_zero()));
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                gamma[i][j][k] = half.clone()
                    * (frame.c[i][j][k].clone() - frame.c[j][k][i].clone()
                        + frame.c[k][i][j].clone());
            }
        }
    }
    Connection { gamma, metric: true, torsion_free: true }
}

/// The torsion 3-form 𝒯 = ∗τ, fully antisymmetrized frame components.
pub fn torsion_three_form<S: Scalar>(tau_frame: &Vec4<S>) -> [[[S; 4]; 4]; 4] {
    let mut t: [[[S; 4]; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| vec4_zero()));
    let mut set = |i: usize, j: usize, k: usize, v: S| {
        t[i][j][k] = v.clone();
        t[j][k][i] = v.clone();
        t[k][i][j] = v.clone();
        t[j][i][k] = S::zero() - v.clone();
        t[i][k][j] = S::zero() - v.clone();
        t[k][j][i] = S::zero() - v;
    };
    set(1, 2, 3, S::zero() - tau_frame[0].clone());
    set(0, 2, 3, tau_frame[1].clone());
    set(0, 1, 3, S::zero() - tau_frame[2].clone());
    set(0, 1, 2, tau_frame[3].clone());
    t
}

/// D = ∇ + ½T. `tau_frame` holds τ(Fᵢ); metricity is preserved because the
/// added term is skew in (j,k).
pub fn torsion_connection<S: Scalar>(lc: &Connection<S>, tau_frame: &Vec4<S>) -> Connection<S> {
    debug_assert!(lc.torsion_free && lc.metric);
    let t = torsion_three_form(tau_frame);
    let half = S::from_ratio(1, 2);
    let mut gamma = lc.gamma.clone();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                gamma[i][j][k] = gamma[i][j][k].clone() + half.clone() * t[i][j][k].clone();
            }
        }
    }
    let torsion_free = tau_frame.iter().all(|x| x.is_zero());
    Connection { gamma, metric: true, torsion_free }
}

/// (0,4) curvature of any frame connection on a Lie algebra:
/// R(X,Y) = ∇_{[X,Y]} − [∇_X, ∇_Y], paired against the orthonormal frame.
pub fn curvature_tensor<S: Scalar>(
    conn: &Connection<S>,
    frame: &OrthonormalFrame<S>,
) -> Box<Curv4<S>> {
    let g = &conn.gamma;
    let c = &frame.c;
    let mut r: Box<Curv4<S>> =
        Box::new(std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| vec4_zero()))));
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let mut acc = S::zero();
                    for m in 0..4 {
                        acc += c[i][j][m].clone() * g[m][k][l].clone();
                        acc -= g[i][m][l].clone() * g[j][k][m].clone();
                        acc += g[j][m][l].clone() * g[i][k][m].clone();
                    }
                    r[i][j][k][l] = acc;
                }
            }
        }
    }
    r
}

/// The curvature operator on Λ² in the s-basis, by the literal pairing
/// op6[i][j] = g(ℛ(s_j), s_i) with R4 values on wedge pairs.
pub fn op6_of<S: Scalar>(r4: &Curv4<S>) -> Mat6<S> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = S::zero();
            for (pi, &(p1, p2)) in PAIRS.iter().enumerate() {
                let cj = s_basis_coeff::<S>(j, pi);
                if cj == 0 {
                    continue;
                }
                for (qi, &(q1, q2)) in PAIRS.iter().enumerate() {
                    let ci = s_basis_coeff::<S>(i, qi);
                    if ci == 0 {
                        continue;
                    }
                    let term = r4[p1][p2][q1][q2].clone();
                    acc += S::from_ratio(cj * ci, 1) * term;
                }
            }
            acc
        })
    })
}

fn s_basis_coeff<S: Scalar>(k: usize, p: usize) -> i64 {
    // Same table as bivector_algebra::S_BASIS; reproduced through the public
    // s_unit constructor would cost allocations in this hot path.
    const T: [[i64; 6]; 6] = [
        [1, 0, 0, 0, 0, 1],
        [0, 1, 0, 0, -1, 0],
        [0, 0, 1, 1, 0, 0],
        [1, 0, 0, 0, 0, -1],
        [0, 1, 0, 0, 1, 0],
        [0, 0, 1, -1, 0, 0],
    ];
    T[k][p]
}

/// `curvature` of the module contract: operator plus (0,4) tensor.
pub fn curvature<S: Scalar>(
    conn: &Connection<S>,
    frame: &OrthonormalFrame<S>,
) -> (Mat6<S>, Box<Curv4<S>>) {
    let r4 = curvature_tensor(conn, frame);
    (op6_of(&r4), r4)
}

/// Sphere-positive Ricci contraction in frame components: Σᵢ R4(X,Fᵢ,Y,Fᵢ).
pub fn ricci_std_frame<S: Scalar>(r4: &Curv4<S>) -> Mat4<S> {
    std::array::from_fn(|x| {
        std::array::from_fn(|y| {
            let mut acc = S::zero();
            for i in 0..4 {
                acc += r4[x][i][y][i].clone();
            }
            acc
        })
    })
}

/// Reported Ricci and scalar for the invariant backend: the contraction
/// Σᵢ R4(Fᵢ,X,Y,Fᵢ), pushed to the algebra's original basis where the
/// catalog family's diagonal table lives. Expects Levi-Civita curvature.
pub fn ricci_scalar<S: Scalar>(r4: &Curv4<S>, frame: &OrthonormalFrame<S>) -> (Mat4<S>, S) {
    let std = ricci_std_frame(r4);
    let cat: Mat4<S> = std::array::from_fn(|i| std::array::from_fn(|j| S::zero() - std[i][j].clone()));
    let mut scalar = S::zero();
    for i in 0..4 {
        scalar += cat[i][i].clone();
    }
    let q = &frame.basis_in_frame;
    let basis: Mat4<S> = std::array::from_fn(|p| {
        std::array::from_fn(|r| {
            let mut acc = S::zero();
            for m in 0..4 {
                for n in 0..4 {
                    acc += q[p][m].clone() * q[r][n].clone() * cat[m][n].clone();
                }
            }
            acc
        })
    });
    (basis, scalar)
}

/// ℛ^D from ℛ^∇ and torsion data, through the closed formula
/// g(R^D(X,Y)Z,U) = g(R^∇(X,Y)Z,U) − ½[(∇_X𝒯)(Y,Z,U) − (∇_Y𝒯)(X,Z,U)]
///                + ¼Σₑ[𝒯(X,U,Fₑ)𝒯(Y,Z,Fₑ) − 𝒯(X,Z,Fₑ)𝒯(Y,U,Fₑ)].
pub fn curvature_via_formula<S: Scalar>(
    rnabla4: &Curv4<S>,
    lc: &Connection<S>,
    tau_frame: &Vec4<S>,
) -> Mat6<S> {
    let t = torsion_three_form(tau_frame);
    let g = &lc.gamma;
    let nab_t = |i: usize, a: usize, b: usize, c: usize| -> S {
        let mut acc = S::zero();
        for m in 0..4 {
            acc -= g[i][a][m].clone() * t[m][b][c].clone();
            acc -= g[i][b][m].clone() * t[a][m][c].clone();
            acc -= g[i][c][m].clone() * t[a][b][m].clone();
        }
        acc
    };
    let half = S::from_ratio(1, 2);
    let quarter = S::from_ratio(1, 4);
    let mut rd: Box<Curv4<S>> =
        Box::new(std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| vec4_zero()))));
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                for u in 0..4 {
                    let mut acc = rnabla4[x][y][z][u].clone();
                    acc -= half.clone() * (nab_t(x, y, z, u) - nab_t(y, x, z, u));
                    let mut quad = S::zero();
                    for e in 0..4 {
                        quad += t[x][u][e].clone() * t[y][z][e].clone();
                        quad -= t[x][z][e].clone() * t[y][u][e].clone();
                    }
                    acc += quarter.clone() * quad;
                    rd[x][y][z][u] = acc;
                }
            }
        }
    }
    op6_of(&rd)
}

/// dω of an invariant 1-form, as Eᵢ∧Eⱼ-pair components in the frame.
pub fn ext_d<S: Scalar>(omega_frame: &Vec4<S>, frame: &OrthonormalFrame<S>) -> [S; 6] {
    std::array::from_fn(|p| {
        let (i, j) = PAIRS[p];
        let mut acc = S::zero();
        for k in 0..4 {
            acc -= frame.c[i][j][k].clone() * omega_frame[k].clone();
        }
        acc
    })
}

/// nt[i][j] = (∇_{Fᵢ}ω)(Fⱼ) = −ω(∇_{Fᵢ}Fⱼ) for an invariant 1-form.
pub fn nabla_tau_table<S: Scalar>(conn: &Connection<S>, omega_frame: &Vec4<S>) -> Mat4<S> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = S::zero();
            for k in 0..4 {
                acc -= conn.gamma[i][j][k].clone() * omega_frame[k].clone();
            }
            acc
        })
    })
}

/// δω = −Σᵢ(∇_{Fᵢ}ω)(Fᵢ) over the orthonormal frame.
pub fn codiff<S: Scalar>(conn: &Connection<S>, omega_frame: &Vec4<S>) -> S {
    let nt = nabla_tau_table(conn, omega_frame);
    let mut acc = S::zero();
    for i in 0..4 {
        acc -= nt[i][i].clone();
    }
    acc
}

/// Evaluate a 2-form (pair components) on a bivector by the literal wedge
/// expansion ω(ΣₚaₚEᵢ∧Eⱼ) = Σₚaₚω(Eᵢ,Eⱼ) — no ½ factor, unlike `inner2`.
pub fn two_form_on_bivector<S: Scalar>(form_pairs: &[S; 6], b: &Bivector<S>) -> S {
    let mut acc = S::zero();
    for p in 0..6 {
        acc += form_pairs[p].clone() * b.e[p].clone();
    }
    acc
}

/// One geometry, fully differentiated: frame, both connections, both
/// curvature tensors and operators, and all τ data in frame components.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryAnalysis<S: Scalar> {
    pub frame: OrthonormalFrame<S>,
    pub levi_civita: Connection<S>,
    pub torsion_conn: Connection<S>,
    pub torsion3: [[[S; 4]; 4]; 4],
    pub point: PointCurvature<S>,
    pub rnabla4: Box<Curv4<S>>,
    pub rd4: Box<Curv4<S>>,
}

pub fn analyze<S: Scalar>(geom: &InvariantGeometry<S>) -> Result<GeometryAnalysis<S>, GeometryError> {
    let frame = orthonormal_frame(geom)?;
    let tau_frame: Vec4<S> = std::array::from_fn(|i| {
        let mut acc = S::zero();
        for p in 0..4 {
            acc += frame.vectors[i][p].clone() * geom.tau[p].clone();
        }
        acc
    });
    let lc = levi_civita(&frame);
    let dconn = torsion_connection(&lc, &tau_frame);
    let torsion3 = torsion_three_form(&tau_frame);
    let (rnabla_op, rnabla4) = curvature(&lc, &frame);
    let (rd_op, rd4) = curvature(&dconn, &frame);
    let (ricci, scalar_curv) = ricci_scalar(&rnabla4, &frame);
    let ricci_std = ricci_std_frame(&rnabla4);
    let scalar_std = mat6_trace(&rnabla_op);
    let nabla_tau = nabla_tau_table(&lc, &tau_frame);
    let delta_tau = codiff(&lc, &tau_frame);
    let dtau = ext_d(&tau_frame, &frame);
    let mut tau_norm2 = S::zero();
    for i in 0..4 {
        tau_norm2 += tau_frame[i].clone() * tau_frame[i].clone();
    }
    Ok(GeometryAnalysis {
        frame,
        levi_civita: lc,
        torsion_conn: dconn,
        torsion3,
        point: PointCurvature {
            rnabla_op,
            rd_op,
            ricci,
            scalar_curv,
            ricci_std,
            scalar_std,
            nabla_tau,
            delta_tau,
            dtau,
            tau_norm2,
            tau_frame,
        },
        rnabla4,
        rd4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_g_lambda;
    use crate::linalg::mat4_identity;
    use crate::scalar::{rat, Rat};

    fn flat_geom() -> InvariantGeometry<Rat> {
        InvariantGeometry {
            algebra: LieAlgebra4::abelian(),
            gram: mat4_identity(),
            orientation: 1,
            tau: vec4_zero(),
        }
    }

    #[test]
    fn abelian_connection_and_curvature_vanish() {
        let a = analyze(&flat_geom()).unwrap();
        assert!(a.levi_civita.gamma.iter().flatten().flatten().all(|x| x.is_zero()));
        assert!(a.point.rnabla_op.iter().flatten().all(|x| x.is_zero()));
    }

    #[test]
    fn jacobi_violation_is_rejected() {
        let mut c = structure_zero::<Rat>();
        set_bracket(&mut c, 0, 1, &[(2, rat(1, 1))]);
        set_bracket(&mut c, 0, 2, &[(3, rat(1, 1))]);
        set_bracket(&mut c, 1, 2, &[(1, rat(1, 1))]);
        assert!(matches!(LieAlgebra4::new(c), Err(GeometryError::JacobiViolation(..))));
    }

    #[test]
    fn frame_of_diagonal_gram_rescales_first_vector() {
        let geom = make_g_lambda(rat(0, 1), rat(2, 1)).unwrap();
        let f = orthonormal_frame(&geom).unwrap();
        assert_eq!(f.vectors[0], [rat(1, 2), rat(0, 1), rat(0, 1), rat(0, 1)]);
        for i in 1..4 {
            let mut expected = vec4_zero::<Rat>();
            expected[i] = rat(1, 1);
            assert_eq!(f.vectors[i], expected);
        }
    }

    #[test]
    fn indefinite_gram_is_rejected() {
        let mut geom = flat_geom();
        geom.gram[2][2] = rat(-1, 1);
        assert_eq!(orthonormal_frame(&geom), Err(GeometryError::NotPositiveDefinite));
    }

    #[test]
    fn irrational_frame_is_rejected_for_rationals() {
        let mut geom = flat_geom();
        geom.gram[0][0] = rat(2, 1);
        assert_eq!(orthonormal_frame(&geom), Err(GeometryError::IrrationalFrame));
    }

    #[test]
    fn koszul_on_the_solvable_family() {
        // k=1: ∇_{E₄}E₄ = 2E₁ in the frame (=basis at k=1).
        let geom = make_g_lambda(rat(0, 1), rat(1, 1)).unwrap();
        let f = orthonormal_frame(&geom).unwrap();
        let lc = levi_civita(&f);
        assert_eq!(lc.gamma[3][3], [rat(2, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        // torsion of the output vanishes on all basis pairs
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let t = lc.gamma[i][j][k].clone() - lc.gamma[j][i][k].clone()
                        - f.c[i][j][k].clone();
                    assert!(t.is_zero());
                }
            }
        }
    }

    #[test]
    fn torsion_connection_is_metric_and_recovers_tau() {
        let geom = make_g_lambda(rat(1, 1), rat(1, 1)).unwrap();
        let f = orthonormal_frame(&geom).unwrap();
        let lc = levi_civita(&f);
        // τ = E₄-dual: the only independent 3-form slot is 𝒯₁₂₃ = 1.
        let tau = [rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)];
        let t = torsion_three_form(&tau);
        assert_eq!(t[0][1][2], rat(1, 1));
        assert_eq!(t[1][0][2], rat(-1, 1));
        assert!(t[0][1][3].is_zero() && t[0][2][3].is_zero() && t[1][2][3].is_zero());
        let d = torsion_connection(&lc, &tau);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    // metricity: g(D_XY,Z) + g(Y,D_XZ) = 0
                    assert!((d.gamma[i][j][k].clone() + d.gamma[i][k][j].clone()).is_zero());
                }
            }
        }
    }

    #[test]
    fn rnabla_operator_is_symmetric_and_traces_to_scalar() {
        for k in [rat(1, 1), rat(2, 1)] {
            let geom = make_g_lambda(rat(1, 1), k.clone()).unwrap();
            let a = analyze(&geom).unwrap();
            for i in 0..6 {
                for j in 0..6 {
                    assert_eq!(a.point.rnabla_op[i][j], a.point.rnabla_op[j][i]);
                }
            }
            let expect_cat = rat(22, 1) / (k.clone() * k.clone()) + rat(1, 2);
            assert_eq!(a.point.scalar_curv, expect_cat);
            assert_eq!(a.point.scalar_std, rat(0, 1) - expect_cat);
        }
    }

    #[test]
    fn formula_path_reproduces_direct_torsion_curvature() {
        let mut geom = make_g_lambda(rat(2, 1), rat(2, 1)).unwrap();
        geom.tau = [rat(3, 2), rat(-1, 1), rat(2, 5), rat(7, 3)];
        let a = analyze(&geom).unwrap();
        let via = curvature_via_formula(&a.rnabla4, &a.levi_civita, &a.point.tau_frame);
        assert_eq!(via, a.point.rd_op);
        // τ=0 degenerates to ℛ^∇
        let zero = vec4_zero::<Rat>();
        let same = curvature_via_formula(&a.rnabla4, &a.levi_civita, &zero);
        assert_eq!(same, a.point.rnabla_op);
    }

    #[test]
    fn invariant_coframe_derivatives_of_the_family() {
        // k=1 frame = basis; dual coframe α: dα¹=0, dα²=−α¹∧α²−λα¹∧α³,
        // dα³=λα¹∧α²−α¹∧α³, dα⁴=−2α¹∧α⁴+α²∧α³.
        let lam = rat(3, 1);
        let geom = make_g_lambda(lam.clone(), rat(1, 1)).unwrap();
        let f = orthonormal_frame(&geom).unwrap();
        let alpha = |i: usize| -> Vec4<Rat> {
            std::array::from_fn(|p| if p == i { rat(1, 1) } else { rat(0, 1) })
        };
        // PAIRS order: 12, 13, 14, 23, 24, 34
        assert_eq!(ext_d(&alpha(0), &f), std::array::from_fn(|_| rat(0, 1)));
        let d2 = ext_d(&alpha(1), &f);
        assert_eq!(d2, [rat(-1, 1), rat(0, 1) - lam.clone(), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        let d3 = ext_d(&alpha(2), &f);
        assert_eq!(d3, [lam.clone(), rat(-1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        let d4 = ext_d(&alpha(3), &f);
        assert_eq!(d4, [rat(0, 1), rat(0, 1), rat(-2, 1), rat(1, 1), rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn codifferential_table_trace() {
        // trace of (∇τ) table = −δτ; on the family δτ = 4μ₁/k².
        let mut geom = make_g_lambda(rat(0, 1), rat(2, 1)).unwrap();
        geom.tau = [rat(5, 3), rat(1, 2), rat(-7, 1), rat(2, 9)];
        let a = analyze(&geom).unwrap();
        let expected = rat(4, 1) * rat(5, 3) / rat(4, 1);
        assert_eq!(a.point.delta_tau, expected);
        let mut tr = rat(0, 1);
        for i in 0..4 {
            tr = tr + a.point.nabla_tau[i][i].clone();
        }
        assert_eq!(tr, rat(0, 1) - expected);
    }

    #[test]
    fn flat_constant_tau_has_zero_nabla() {
        let mut geom = flat_geom();
        geom.tau = [rat(1, 1), rat(2, 1), rat(3, 1), rat(4, 1)];
        let a = analyze(&geom).unwrap();
        assert!(a.point.nabla_tau.iter().flatten().all(|x| x.is_zero()));
        assert!(a.point.delta_tau.is_zero());
        assert!(a.point.dtau.iter().all(|x| x.is_zero()));
    }
}
