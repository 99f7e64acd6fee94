//! Example geometries with exactly known curvature, and the solvers that
//! reproduce their integrability loci.
//!
//! The centerpiece is the solvable family: brackets
//!   [E₁,E₂] = E₂ − λE₃ ,  [E₁,E₃] = λE₂ + E₃ ,  [E₁,E₄] = 2E₄ ,
//!   [E₂,E₃] = −E₄ ,
//! with the metric g_k making (1/k·E₁, E₂, E₃, E₄) orthonormal. Its
//! curvature is independent of λ, diagonal Ricci (6, 4/k²+½, 4/k²+½,
//! 8/k²−½) in the family's own sign convention, scalar 22/k²+½, and
//! 𝒲₊ = 0 exactly for k ∈ {1,2}.
//!
//! `solve_conf_locus` finds where the scalar identity s = (3/2)‖τ‖² + 3δτ
//! holds along an affine τ-family. The identity is sensitive to the sign
//! convention of s, so the solver returns the locus for both readings:
//! `standard` uses the sphere-positive scalar (the branch matched by the
//! brute-force Nijenhuis oracle; k=1 roots μ₁ ∈ {−3, −5}), while
//! `opposite_sign` substitutes −s (k=1 roots μ₁ = −4±√31). Downstream
//! checks consume the standard branch.

use crate::invariant_geometry::{
    levi_civita, orthonormal_frame, set_bracket, structure_zero, GeometryError,
    InvariantGeometry, LieAlgebra4,
};
use crate::linalg::{mat4_zero, vec4_zero, Mat4, Vec4};
use crate::scalar::{DetRng, Scalar};
use crate::weyl_structures::{
    conformal_scalar_with, einstein_weyl_residual_with, weyl_scan_context, WeylScanContext,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CatalogError {
    #[error("J must be a g-orthogonal complex structure (J² = −Id, JᵀgJ = g)")]
    NotOrthogonalComplexStructure,
    #[error("the scalar-identity locus is empty")]
    NoSolution,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The solvable family (G_λ, g_k). τ defaults to zero.
pub fn make_g_lambda<S: Scalar>(lambda: S, k: S) -> Result<InvariantGeometry<S>, GeometryError> {
    if k.to_f64() <= 0.0 {
        return Err(GeometryError::NonPositiveParameter("k"));
    }
    let mut c = structure_zero::<S>();
    let neg_lambda = S::zero() - lambda.clone();
    set_bracket(&mut c, 0, 1, &[(1, S::one()), (2, neg_lambda)]);
    set_bracket(&mut c, 0, 2, &[(1, lambda), (2, S::one())]);
    set_bracket(&mut c, 0, 3, &[(3, S::from_ratio(2, 1))]);
    set_bracket(&mut c, 1, 2, &[(3, S::zero() - S::one())]);
    let algebra = LieAlgebra4::new(c)?;
    let mut gram = mat4_zero::<S>();
    gram[0][0] = k.clone() * k;
    for i in 1..4 {
        gram[i][i] = S::one();
    }
    Ok(InvariantGeometry { algebra, gram, orientation: 1, tau: vec4_zero() })
}

/// Abelian algebra, identity metric: everything flat.
pub fn make_flat<S: Scalar>() -> InvariantGeometry<S> {
    let algebra = LieAlgebra4::new(structure_zero::<S>()).expect("abelian is a Lie algebra");
    let mut gram = mat4_zero::<S>();
    for i in 0..4 {
        gram[i][i] = S::one();
    }
    InvariantGeometry { algebra, gram, orientation: 1, tau: vec4_zero() }
}

/// su(2) ⊕ ℝ with the product of the unit round metric and a unit line:
/// [e₁,e₂] = 2e₃ cyclically, e₄ central. Conformally flat (both Weyl
/// blocks vanish), Ricci diag(2,2,2,0) in the sphere-positive convention.
pub fn make_hopf<S: Scalar>() -> InvariantGeometry<S> {
    let two = S::from_ratio(2, 1);
    let mut c = structure_zero::<S>();
    set_bracket(&mut c, 0, 1, &[(2, two.clone())]);
    set_bracket(&mut c, 1, 2, &[(0, two.clone())]);
    set_bracket(&mut c, 2, 0, &[(1, two)]);
    let algebra = LieAlgebra4::new(c).expect("su(2) ⊕ ℝ satisfies Jacobi");
    let mut gram = mat4_zero::<S>();
    for i in 0..4 {
        gram[i][i] = S::one();
    }
    InvariantGeometry { algebra, gram, orientation: 1, tau: vec4_zero() }
}

/// The standard invariant complex structure on the Hopf geometry:
/// J e₁ = e₂, J e₄ = e₃ (columns of the matrix are the images).
pub fn hopf_standard_j<S: Scalar>() -> Mat4<S> {
    let mut j = mat4_zero::<S>();
    j[1][0] = S::one();
    j[0][1] = S::zero() - S::one();
    j[2][3] = S::one();
    j[3][2] = S::zero() - S::one();
    j
}

/// Lee form θ = (δΩ)∘J of an invariant Hermitian structure, Ω(X,Y) = g(X,JY).
/// Returned as a covector on the algebra basis, directly usable as τ.
pub fn lee_form<S: Scalar>(
    geom: &InvariantGeometry<S>,
    j: &Mat4<S>,
) -> Result<Vec4<S>, CatalogError> {
    // J² = −Id.
    for a in 0..4 {
        for b in 0..4 {
            let mut acc = S::zero();
            for m in 0..4 {
                acc += j[a][m].clone() * j[m][b].clone();
            }
            let expect = if a == b { S::zero() - S::one() } else { S::zero() };
            if acc != expect {
                return Err(CatalogError::NotOrthogonalComplexStructure);
            }
        }
    }
    // JᵀgJ = g.
    for x in 0..4 {
        for y in 0..4 {
            let mut acc = S::zero();
            for a in 0..4 {
                for b in 0..4 {
                    acc += j[a][x].clone() * geom.gram[a][b].clone() * j[b][y].clone();
                }
            }
            if acc != geom.gram[x][y] {
                return Err(CatalogError::NotOrthogonalComplexStructure);
            }
        }
    }
    let frame = orthonormal_frame(geom)?;
    let lc = levi_civita(&frame);
    // J in frame components: jf[m][n] = g(J F_n, F_m) = Ω(F_m, F_n).
    let mut jf = mat4_zero::<S>();
    for n in 0..4 {
        let mut w = vec4_zero::<S>();
        for a in 0..4 {
            for p in 0..4 {
                w[a] += j[a][p].clone() * frame.vectors[n][p].clone();
            }
        }
        for m in 0..4 {
            let mut acc = S::zero();
            for p in 0..4 {
                for q in 0..4 {
                    acc += w[p].clone()
                        * geom.gram[p][q].clone()
                        * frame.vectors[m][q].clone();
                }
            }
            jf[m][n] = acc;
        }
    }
    // δΩ(F_j) = Σᵢ Γ[i][i][m]Ω[m][j] + Γ[i][j][m]Ω[i][m].
    let mut delta_omega = vec4_zero::<S>();
    for jj in 0..4 {
        let mut acc = S::zero();
        for i in 0..4 {
            for m in 0..4 {
                acc += lc.gamma[i][i][m].clone() * jf[m][jj].clone();
                acc += lc.gamma[i][jj][m].clone() * jf[i][m].clone();
            }
        }
        delta_omega[jj] = acc;
    }
    // θ(F_n) = δΩ(J F_n), then push to the algebra basis.
    let theta_frame: Vec4<S> = std::array::from_fn(|n| {
        let mut acc = S::zero();
        for m in 0..4 {
            acc += jf[m][n].clone() * delta_omega[m].clone();
        }
        acc
    });
    Ok(std::array::from_fn(|p| {
        let mut acc = S::zero();
        for m in 0..4 {
            acc += frame.basis_in_frame[p][m].clone() * theta_frame[m].clone();
        }
        acc
    }))
}

/// An affine family τ(μ) = τ₀ + Σ μ_a · direction_a over one geometry
/// (τ₀ is the geometry's own τ).
#[derive(Debug, Clone)]
pub struct TauFamily<S: Scalar> {
    pub geometry: InvariantGeometry<S>,
    pub directions: Vec<Vec4<S>>,
}

/// Real roots of a monic quadratic μ² + pμ + q: `base ± √rad` when rad ≥ 0.
#[derive(Debug, Clone, PartialEq)]
pub enum QuadRoots<S: Scalar> {
    Pair { base: S, rad: S },
    Empty,
}

/// c + Σ lin_a μ_a + Σ quad_ab μ_a μ_b with quad symmetric, normalized so
/// the first nonzero diagonal quad entry is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm<S: Scalar> {
    pub quad: Vec<Vec<S>>,
    pub lin: Vec<S>,
    pub constant: S,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConfLocus<S: Scalar> {
    /// One direction: monic coefficients [q, p, 1] of μ² + pμ + q and its
    /// real roots.
    Univariate { quadratic: [S; 3], roots: QuadRoots<S> },
    /// Several directions: the normalized quadratic relation itself.
    Relation(QuadraticForm<S>),
}

/// The locus under the sphere-positive scalar (`standard`) and under the
/// substitution s ↦ −s (`opposite_sign`). Integrability lives on the
/// standard branch.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfLocusResult<S: Scalar> {
    pub standard: ConfLocus<S>,
    pub opposite_sign: ConfLocus<S>,
}

fn conf_eval<S: Scalar>(
    ctx: &WeylScanContext<S>,
    branch_sign: i64,
    family: &TauFamily<S>,
    mu: &[S],
) -> S {
    let mut theta: Vec4<S> = family.geometry.tau.clone();
    for (a, dir) in family.directions.iter().enumerate() {
        for p in 0..4 {
            theta[p] += mu[a].clone() * dir[p].clone();
        }
    }
    let mut c = conformal_scalar_with(ctx, &theta);
    if branch_sign < 0 {
        c = c - S::from_ratio(2, 1) * ctx.scalar_std.clone();
    }
    c
}

fn locus_of_branch<S: Scalar>(
    ctx: &WeylScanContext<S>,
    family: &TauFamily<S>,
    branch_sign: i64,
) -> ConfLocus<S> {
    let p = family.directions.len();
    let eval = |mu: &[S]| conf_eval(ctx, branch_sign, family, mu);
    let zero_mu = vec![S::zero(); p];
    let constant = eval(&zero_mu);
    let unit = |a: usize, v: i64| -> Vec<S> {
        let mut mu = vec![S::zero(); p];
        mu[a] = S::from_ratio(v, 1);
        mu
    };
    let half = S::from_ratio(1, 2);
    if p == 1 {
        let cp = eval(&unit(0, 1));
        let cm = eval(&unit(0, -1));
        let quad = half.clone() * (cp.clone() + cm.clone()) - constant.clone();
        let lin = half * (cp - cm);
        assert!(!quad.is_zero(), "conf locus needs a nonzero direction");
        let pc = lin / quad.clone();
        let qc = constant / quad;
        let base = S::zero() - half_of(&pc);
        let rad = base.clone() * base.clone() - qc.clone();
        let roots = if rad.to_f64() < 0.0 {
            QuadRoots::Empty
        } else {
            QuadRoots::Pair { base, rad }
        };
        return ConfLocus::Univariate { quadratic: [qc, pc, S::one()], roots };
    }
    let mut lin = vec![S::zero(); p];
    let mut quad = vec![vec![S::zero(); p]; p];
    for a in 0..p {
        let cp = eval(&unit(a, 1));
        let cm = eval(&unit(a, -1));
        lin[a] = half.clone() * (cp.clone() - cm.clone());
        quad[a][a] = half.clone() * (cp + cm) - constant.clone();
    }
    for a in 0..p {
        for b in (a + 1)..p {
            let mut mu = vec![S::zero(); p];
            mu[a] = S::one();
            mu[b] = S::one();
            let cab = eval(&mu);
            let cross = cab
                - constant.clone()
                - lin[a].clone()
                - lin[b].clone()
                - quad[a][a].clone()
                - quad[b][b].clone();
            quad[a][b] = half.clone() * cross.clone();
            quad[b][a] = half.clone() * cross;
        }
    }
    // Normalize by the first nonzero diagonal entry.
    let pivot = (0..p)
        .map(|a| quad[a][a].clone())
        .find(|v| !v.is_zero())
        .expect("conf locus needs a nonzero direction");
    for a in 0..p {
        lin[a] = lin[a].clone() / pivot.clone();
        for b in 0..p {
            quad[a][b] = quad[a][b].clone() / pivot.clone();
        }
    }
    ConfLocus::Relation(QuadraticForm { quad, lin, constant: constant / pivot })
}

fn half_of<S: Scalar>(v: &S) -> S {
    S::from_ratio(1, 2) * v.clone()
}

/// Solve the scalar identity along the family; exact closed form. Errors
/// with NoSolution when the standard univariate locus has no real point.
pub fn solve_conf_locus<S: Scalar>(
    family: &TauFamily<S>,
) -> Result<ConfLocusResult<S>, CatalogError> {
    assert!(!family.directions.is_empty(), "family needs at least one direction");
    let ctx = weyl_scan_context(&family.geometry)?;
    let standard = locus_of_branch(&ctx, family, 1);
    let opposite_sign = locus_of_branch(&ctx, family, -1);
    if let ConfLocus::Univariate { roots: QuadRoots::Empty, .. } = standard {
        return Err(CatalogError::NoSolution);
    }
    Ok(ConfLocusResult { standard, opposite_sign })
}

/// One grid point that passed the Einstein-Weyl residual threshold.
#[derive(Debug, Clone)]
pub struct ScanHit<S: Scalar> {
    pub tau: Vec4<S>,
    pub residual: f64,
}

/// Scan left-invariant τ candidates for the Einstein-Weyl property of the
/// Weyl structure with θ = −τ. Residual is the raw Frobenius norm of
/// Ric^sym − (trace/4)g; grid order is preserved in the hits.
pub fn einstein_weyl_scan<S: Scalar>(
    geom: &InvariantGeometry<S>,
    grid: &[Vec4<S>],
    tol: f64,
) -> Result<Vec<ScanHit<S>>, GeometryError> {
    let ctx = weyl_scan_context(geom)?;
    let mut hits = Vec::new();
    for tau in grid {
        let theta: Vec4<S> = std::array::from_fn(|i| S::zero() - tau[i].clone());
        let res = einstein_weyl_residual_with(&ctx, &theta);
        let mut n2 = 0.0;
        for row in &res {
            for v in row {
                let x = v.to_f64();
                n2 += x * x;
            }
        }
        let residual = n2.sqrt();
        if residual < tol {
            hits.push(ScanHit { tau: tau.clone(), residual });
        }
    }
    Ok(hits)
}

/// n evenly spaced rationals from lo to hi inclusive (endpoints as integer
/// pairs numerator/denominator).
pub fn mu_grid<S: Scalar>(lo: (i64, i64), hi: (i64, i64), n: usize) -> Vec<S> {
    assert!(n >= 2);
    let lo_s = S::from_ratio(lo.0, lo.1);
    let hi_s = S::from_ratio(hi.0, hi.1);
    (0..n)
        .map(|i| {
            lo_s.clone()
                + (hi_s.clone() - lo_s.clone()) * S::from_ratio(i as i64, (n - 1) as i64)
        })
        .collect()
}

/// The full 4-dimensional product grid of τ covectors over one value list.
pub fn tau_product_grid<S: Scalar>(values: &[S]) -> Vec<Vec4<S>> {
    let mut grid = Vec::with_capacity(values.len().pow(4));
    for a in values {
        for b in values {
            for c in values {
                for d in values {
                    grid.push([a.clone(), b.clone(), c.clone(), d.clone()]);
                }
            }
        }
    }
    grid
}

/// Deterministic random geometry: ℝ ⋉ ℝ³ with [E₁, Eᵢ] = Σⱼ Aⱼᵢ Eⱼ on the
/// abelian ideal span(E₂,E₃,E₄) (Jacobi holds for any A), metric UᵀU with
/// U upper triangular and positive rational diagonal, so the orthonormal
/// frame stays rational. τ is zero; pair with `sample_random_tau`.
pub fn sample_random_geometry<S: Scalar>(rng: &mut DetRng) -> InvariantGeometry<S> {
    let mut c = structure_zero::<S>();
    for i in 1..4 {
        let comps: Vec<(usize, S)> = (1..4).map(|j| (j, rng.rat_in(-4, 5, 2))).collect();
        set_bracket(&mut c, 0, i, &comps);
    }
    let algebra =
        LieAlgebra4::new(c).expect("semidirect products with abelian ideal satisfy Jacobi");
    let mut u = mat4_zero::<S>();
    for i in 0..4 {
        u[i][i] = rng.rat_in(1, 3, 2);
        for j in (i + 1)..4 {
            u[i][j] = rng.rat_in(-2, 3, 3);
        }
    }
    let mut gram = mat4_zero::<S>();
    for p in 0..4 {
        for q in 0..4 {
            let mut acc = S::zero();
            for a in 0..4 {
                acc += u[a][p].clone() * u[a][q].clone();
            }
            gram[p][q] = acc;
        }
    }
    InvariantGeometry { algebra, gram, orientation: 1, tau: vec4_zero() }
}

pub fn sample_random_tau<S: Scalar>(rng: &mut DetRng) -> Vec4<S> {
    std::array::from_fn(|_| rng.rat_in(-6, 7, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant_geometry::analyze;
    use crate::curvature_analysis::decompose;
    use crate::invariant_geometry::ext_d;
    use crate::scalar::{rat, Rat};
    use crate::weyl_structures::{conformal_scalar, WeylStructure};

    #[test]
    fn solvable_family_matches_the_printed_curvature() {
        for (kn, kd) in [(1i64, 1i64), (2, 1), (3, 1)] {
            let k = rat(kn, kd);
            let geom = make_g_lambda(rat(0, 1), k.clone()).unwrap();
            let a = analyze(&geom).unwrap();
            let k2 = k.clone() * k.clone();
            let expect = [
                rat(6, 1),
                rat(4, 1) / k2.clone() + rat(1, 2),
                rat(4, 1) / k2.clone() + rat(1, 2),
                rat(8, 1) / k2.clone() - rat(1, 2),
            ];
            for i in 0..4 {
                for j in 0..4 {
                    let want = if i == j { expect[i].clone() } else { rat(0, 1) };
                    assert_eq!(a.point.ricci[i][j], want, "k={:?} entry ({},{})", k, i, j);
                }
            }
            assert_eq!(a.point.scalar_curv, rat(22, 1) / k2 + rat(1, 2));
        }
        // Curvature does not depend on λ.
        let a0 = analyze(&make_g_lambda(rat(0, 1), rat(2, 1)).unwrap()).unwrap();
        let a5 = analyze(&make_g_lambda(rat(5, 1), rat(2, 1)).unwrap()).unwrap();
        assert_eq!(a0.point.ricci, a5.point.ricci);
        assert_eq!(a0.point.rnabla_op, a5.point.rnabla_op);
    }

    #[test]
    fn nonpositive_k_is_rejected() {
        assert_eq!(
            make_g_lambda(rat(0, 1), rat(0, 1)).unwrap_err(),
            GeometryError::NonPositiveParameter("k")
        );
        assert!(make_g_lambda(rat(1, 1), rat(-2, 1)).is_err());
    }

    #[test]
    fn lambda_sign_change_is_an_isometry() {
        // (E₃,E₄) ↦ (−E₃,−E₄) identifies the algebras for ±λ; with the
        // diagonal metric every curvature invariant coincides.
        let ap = analyze(&make_g_lambda(rat(3, 1), rat(3, 2)).unwrap()).unwrap();
        let am = analyze(&make_g_lambda(rat(-3, 1), rat(3, 2)).unwrap()).unwrap();
        assert_eq!(ap.point.ricci_std, am.point.ricci_std);
        assert_eq!(ap.point.rnabla_op, am.point.rnabla_op);
        assert_eq!(ap.point.scalar_std, am.point.scalar_std);
    }

    #[test]
    fn hopf_is_conformally_flat_with_closed_lee_form() {
        let geom = make_hopf::<Rat>();
        let a = analyze(&geom).unwrap();
        let dec = decompose(&a.point.rnabla_op, &a.point.ricci_std, &a.point.scalar_std, 0.0)
            .unwrap();
        assert!(dec.wplus_norm2().is_zero());
        assert!(dec.wminus_norm2().is_zero());
        let mut expect_ric = mat4_zero::<Rat>();
        for i in 0..3 {
            expect_ric[i][i] = rat(2, 1);
        }
        assert_eq!(a.point.ricci_std, expect_ric);

        let lee = lee_form(&geom, &hopf_standard_j()).unwrap();
        assert_eq!(lee, [rat(0, 1), rat(0, 1), rat(0, 1), rat(2, 1)]);
        // dθ = 0 exactly (the frame is the algebra basis here).
        let dlee = ext_d(&lee, &a.frame);
        assert!(dlee.iter().all(|v| v.is_zero()));
        // Conformal scalar with θ = the Lee form vanishes exactly.
        let ws = WeylStructure { geometry: geom, theta: lee };
        assert!(conformal_scalar(&ws).unwrap().is_zero());
    }

    #[test]
    fn lee_form_rejects_non_complex_or_non_orthogonal_input() {
        let geom = make_flat::<Rat>();
        let mut not_acs = mat4_zero::<Rat>();
        for i in 0..4 {
            not_acs[i][i] = rat(1, 1);
        }
        assert_eq!(
            lee_form(&geom, &not_acs).unwrap_err(),
            CatalogError::NotOrthogonalComplexStructure
        );
        // A genuine complex structure that is not orthogonal for this gram.
        let mut stretched = make_flat::<Rat>();
        stretched.gram[0][0] = rat(4, 1);
        assert_eq!(
            lee_form(&stretched, &hopf_standard_j()).unwrap_err(),
            CatalogError::NotOrthogonalComplexStructure
        );
        // Constant J on the flat geometry has vanishing Lee form.
        let lee = lee_form(&geom, &hopf_standard_j()).unwrap();
        assert!(lee.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn univariate_conf_locus_on_both_branches() {
        let family = TauFamily {
            geometry: make_g_lambda(rat(0, 1), rat(1, 1)).unwrap(),
            directions: vec![[rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]],
        };
        let locus = solve_conf_locus(&family).unwrap();
        // Standard branch: μ² + 8μ + 15, roots −4 ± 1.
        assert_eq!(
            locus.standard,
            ConfLocus::Univariate {
                quadratic: [rat(15, 1), rat(8, 1), rat(1, 1)],
                roots: QuadRoots::Pair { base: rat(-4, 1), rad: rat(1, 1) },
            }
        );
        // Opposite branch: μ² + 8μ − 15, roots −4 ± √31.
        assert_eq!(
            locus.opposite_sign,
            ConfLocus::Univariate {
                quadratic: [rat(-15, 1), rat(8, 1), rat(1, 1)],
                roots: QuadRoots::Pair { base: rat(-4, 1), rad: rat(31, 1) },
            }
        );

        // Flat: −(3/2)μ² = 0, double root 0.
        let flat_family = TauFamily {
            geometry: make_flat::<Rat>(),
            directions: vec![[rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]],
        };
        let locus = solve_conf_locus(&flat_family).unwrap();
        assert_eq!(
            locus.standard,
            ConfLocus::Univariate {
                quadratic: [rat(0, 1), rat(0, 1), rat(1, 1)],
                roots: QuadRoots::Pair { base: rat(0, 1), rad: rat(0, 1) },
            }
        );

        // k=3: the standard locus is empty.
        let empty_family = TauFamily {
            geometry: make_g_lambda(rat(0, 1), rat(3, 1)).unwrap(),
            directions: vec![[rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]],
        };
        assert_eq!(solve_conf_locus(&empty_family).unwrap_err(), CatalogError::NoSolution);

        // Hopf along α⁴: s = 6, ‖θ‖² = μ², δθ = 0 → μ² − 4, roots ±2.
        let hopf_family = TauFamily {
            geometry: make_hopf::<Rat>(),
            directions: vec![[rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)]],
        };
        let locus = solve_conf_locus(&hopf_family).unwrap();
        assert_eq!(
            locus.standard,
            ConfLocus::Univariate {
                quadratic: [rat(-4, 1), rat(0, 1), rat(1, 1)],
                roots: QuadRoots::Pair { base: rat(0, 1), rad: rat(4, 1) },
            }
        );
    }

    #[test]
    fn two_parameter_conf_locus_relations() {
        let family = TauFamily {
            geometry: make_g_lambda(rat(0, 1), rat(2, 1)).unwrap(),
            directions: vec![
                [rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
                [rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)],
            ],
        };
        let locus = solve_conf_locus(&family).unwrap();
        let expect = |constant: Rat| QuadraticForm {
            quad: vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(4, 1)]],
            lin: vec![rat(8, 1), rat(0, 1)],
            constant,
        };
        // Standard: (μ₁+4)² + 4μ₄² = 0, the single point (−4, 0).
        assert_eq!(locus.standard, ConfLocus::Relation(expect(rat(16, 1))));
        // Opposite: μ₁² + 8μ₁ − 16 + 4μ₄² = 0, an ellipse.
        assert_eq!(locus.opposite_sign, ConfLocus::Relation(expect(rat(-16, 1))));
    }

    #[test]
    fn einstein_weyl_scan_finds_only_the_einstein_point() {
        let vals = mu_grid::<Rat>((-1, 1), (1, 1), 3);
        let grid = tau_product_grid(&vals);
        assert_eq!(grid.len(), 81);
        let g2 = make_g_lambda(rat(1, 1), rat(2, 1)).unwrap();
        let hits = einstein_weyl_scan(&g2, &grid, 1e-9).unwrap();
        assert_eq!(hits.len(), 1);
        assert!(hits[0].tau.iter().all(|v| v.is_zero()));
        assert_eq!(hits[0].residual, 0.0);
        let g1 = make_g_lambda(rat(1, 1), rat(1, 1)).unwrap();
        assert!(einstein_weyl_scan(&g1, &grid, 1e-9).unwrap().is_empty());
        let flat_hits = einstein_weyl_scan(&make_flat::<Rat>(), &grid, 1e-9).unwrap();
        assert_eq!(flat_hits.len(), 1);
        assert!(flat_hits[0].tau.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn grid_helpers_are_even_and_inclusive() {
        let g = mu_grid::<Rat>((-2, 1), (2, 1), 9);
        assert_eq!(g.len(), 9);
        assert_eq!(g[0], rat(-2, 1));
        assert_eq!(g[4], rat(0, 1));
        assert_eq!(g[8], rat(2, 1));
        assert_eq!(g[1], rat(-3, 2));
    }

    #[test]
    fn random_samples_are_deterministic_and_well_formed() {
        let mut rng = DetRng::new(11);
        let g: InvariantGeometry<Rat> = sample_random_geometry(&mut rng);
        let t: Vec4<Rat> = sample_random_tau(&mut rng);
        let mut geom = g.clone();
        geom.tau = t;
        // The orthonormal frame must come out rational (gram = UᵀU).
        assert!(analyze(&geom).is_ok());
        let mut rng2 = DetRng::new(11);
        let g2: InvariantGeometry<Rat> = sample_random_geometry(&mut rng2);
        assert_eq!(g.gram, g2.gram);
        assert_eq!(g.algebra.structure(), g2.algebra.structure());
    }
}
