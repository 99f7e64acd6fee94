//! Algebraic decomposition of a Levi-Civita curvature operator on Λ².
//!
//! In the s-basis adapted to an oriented orthonormal frame the symmetric
//! curvature operator splits as
//!   ℛ^∇ = s/6·Id + ℬ + 𝒲₊ + 𝒲₋ ,
//! where 𝒲± live in the diagonal 3×3 blocks (trace-free) and ℬ, built from
//! the Ricci tensor by
//!   ℬ(X∧Y) = ρ(X)∧Y + X∧ρ(Y) − (s/2)·X∧Y ,
//! fills exactly the two off-diagonal blocks. Einstein means ℬ = 0;
//! self-dual (anti-self-dual) means 𝒲₋ = 0 (𝒲₊ = 0).
//!
//! `decompose` does not trust its inputs to be mutually consistent: the
//! operator trace must equal the scalar curvature, the diagonal blocks must
//! be trace-adjusted trace-free, and the off-diagonal blocks must coincide
//! with ℬ computed independently from the Ricci tensor. Any failure is an
//! `InconsistentInput` error, which is what makes fault injection on a
//! corrupted operator detectable.
//!
//! Ricci and scalar here are the sphere-positive pair (`ricci_std`,
//! `scalar_std` of `PointCurvature`); the table-signed report pair does not
//! satisfy these identities.

use crate::bivector_algebra::{wedge, Bivector, Summand, PAIRS};
use crate::linalg::{basis_vec4, mat3_frob2, Mat3, Mat4, Mat6, Vec4};
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CurvatureError {
    #[error("curvature data are mutually inconsistent: {0}")]
    InconsistentInput(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureDecomposition<S: Scalar> {
    /// s/6, the coefficient of the identity summand.
    pub scalar_part: S,
    /// The Ricci block: nonzero only in the two off-diagonal 3×3 blocks.
    pub b_op: Mat6<S>,
    /// Trace-free block on the self-dual summand.
    pub wplus: Mat3<S>,
    /// Trace-free block on the anti-self-dual summand.
    pub wminus: Mat3<S>,
}

impl<S: Scalar> CurvatureDecomposition<S> {
    pub fn wplus_norm2(&self) -> S {
        mat3_frob2(&self.wplus)
    }
    pub fn wminus_norm2(&self) -> S {
        mat3_frob2(&self.wminus)
    }
    pub fn b_norm2(&self) -> S {
        let mut acc = S::zero();
        for i in 0..6 {
            for j in 0..6 {
                acc += self.b_op[i][j].clone() * self.b_op[i][j].clone();
            }
        }
        acc
    }
    pub fn weyl_norm2(&self, summand: Summand) -> S {
        match summand {
            Summand::Plus => self.wplus_norm2(),
            Summand::Minus => self.wminus_norm2(),
        }
    }
}

/// The Ricci block operator as a 6×6 matrix in the s-basis, computed from
/// the (frame, sphere-positive) Ricci tensor and scalar curvature alone.
pub fn ricci_block_op<S: Scalar>(ricci_std: &Mat4<S>, scalar_std: &S) -> Mat6<S> {
    let half_s = S::from_ratio(1, 2) * scalar_std.clone();
    let rho = |i: usize| -> Vec4<S> { std::array::from_fn(|j| ricci_std[i][j].clone()) };
    let mut cols: [[S; 6]; 6] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
    for j in 0..6 {
        let sj = Bivector::<S>::s_unit(j);
        let mut image = Bivector::<S>::zero();
        for p in 0..6 {
            if sj.e[p].is_zero() {
                continue;
            }
            let (a, b) = PAIRS[p];
            let fa = basis_vec4::<S>(a);
            let fb = basis_vec4::<S>(b);
            let mut term = wedge(&rho(a), &fb);
            term = term.add(&wedge(&fa, &rho(b)));
            term = term.sub(&wedge(&fa, &fb).scale(&half_s));
            image = image.add(&term.scale(&sj.e[p]));
        }
        cols[j] = image.s;
    }
    std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()))
}

fn is_small<S: Scalar>(frob2: &S, scale2: &S, tol: f64) -> bool {
    if S::exact() {
        frob2.is_zero()
    } else {
        frob2.to_f64() <= tol * tol * (1.0 + scale2.to_f64())
    }
}

/// Split a symmetric curvature operator into scalar, Ricci, and Weyl parts,
/// verifying every structural identity along the way. `tol` only matters for
/// floating-point scalars; exact scalars are held to exact equality.
pub fn decompose<S: Scalar>(
    rnabla_op: &Mat6<S>,
    ricci_std: &Mat4<S>,
    scalar_std: &S,
    tol: f64,
) -> Result<CurvatureDecomposition<S>, CurvatureError> {
    let mut op_frob2 = S::zero();
    for i in 0..6 {
        for j in 0..6 {
            op_frob2 += rnabla_op[i][j].clone() * rnabla_op[i][j].clone();
        }
    }

    let mut asym = S::zero();
    for i in 0..6 {
        for j in 0..6 {
            let d = rnabla_op[i][j].clone() - rnabla_op[j][i].clone();
            asym += d.clone() * d;
        }
    }
    if !is_small(&asym, &op_frob2, tol) {
        return Err(CurvatureError::InconsistentInput("operator is not symmetric"));
    }

    let mut trace = S::zero();
    for i in 0..6 {
        trace += rnabla_op[i][i].clone();
    }
    let tdiff = trace - scalar_std.clone();
    let tdiff2 = tdiff.clone() * tdiff;
    if !is_small(&tdiff2, &op_frob2, tol) {
        return Err(CurvatureError::InconsistentInput(
            "operator trace does not equal the scalar curvature",
        ));
    }

    let sixth = S::from_ratio(1, 6) * scalar_std.clone();
    let wplus: Mat3<S> = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut v = rnabla_op[i][j].clone();
            if i == j {
                v = v - sixth.clone();
            }
            v
        })
    });
    let wminus: Mat3<S> = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut v = rnabla_op[i + 3][j + 3].clone();
            if i == j {
                v = v - sixth.clone();
            }
            v
        })
    });
    for w in [&wplus, &wminus] {
        let mut tr = S::zero();
        for i in 0..3 {
            tr += w[i][i].clone();
        }
        let tr2 = tr.clone() * tr;
        if !is_small(&tr2, &op_frob2, tol) {
            return Err(CurvatureError::InconsistentInput(
                "diagonal block traces are not each half the scalar curvature",
            ));
        }
    }

    let b_full = ricci_block_op(ricci_std, scalar_std);
    // ℬ must itself have no diagonal blocks (automatic for symmetric Ricci).
    let mut b_diag = S::zero();
    let mut b_off: Mat6<S> = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
    for i in 0..6 {
        for j in 0..6 {
            if (i < 3) == (j < 3) {
                b_diag += b_full[i][j].clone() * b_full[i][j].clone();
            } else {
                b_off[i][j] = b_full[i][j].clone();
            }
        }
    }
    if !is_small(&b_diag, &op_frob2, tol) {
        return Err(CurvatureError::InconsistentInput("Ricci tensor is not symmetric"));
    }
    let mut b_mismatch = S::zero();
    for i in 0..6 {
        for j in 0..6 {
            if (i < 3) != (j < 3) {
                let d = rnabla_op[i][j].clone() - b_off[i][j].clone();
                b_mismatch += d.clone() * d;
            }
        }
    }
    if !is_small(&b_mismatch, &op_frob2, tol) {
        return Err(CurvatureError::InconsistentInput(
            "off-diagonal blocks do not match the Ricci block operator",
        ));
    }

    let dec = CurvatureDecomposition { scalar_part: sixth, b_op: b_off, wplus, wminus };

    // Reassembly: scalar + Weyl blocks + Ricci blocks = input.
    let mut reasm = S::zero();
    for i in 0..6 {
        for j in 0..6 {
            let mut v = dec.b_op[i][j].clone();
            if i < 3 && j < 3 {
                v += dec.wplus[i][j].clone();
            }
            if i >= 3 && j >= 3 {
                v += dec.wminus[i - 3][j - 3].clone();
            }
            if i == j {
                v += dec.scalar_part.clone();
            }
            let d = rnabla_op[i][j].clone() - v;
            reasm += d.clone() * d;
        }
    }
    if !is_small(&reasm, &op_frob2, tol) {
        return Err(CurvatureError::InconsistentInput("decomposition does not reassemble"));
    }
    Ok(dec)
}

pub fn is_einstein<S: Scalar>(dec: &CurvatureDecomposition<S>, tol: f64) -> bool {
    let n2 = dec.b_norm2();
    if S::exact() {
        n2.is_zero()
    } else {
        n2.to_f64() <= tol * tol
    }
}

pub fn is_sd<S: Scalar>(dec: &CurvatureDecomposition<S>, tol: f64) -> bool {
    let n2 = dec.wminus_norm2();
    if S::exact() {
        n2.is_zero()
    } else {
        n2.to_f64() <= tol * tol
    }
}

pub fn is_asd<S: Scalar>(dec: &CurvatureDecomposition<S>, tol: f64) -> bool {
    let n2 = dec.wplus_norm2();
    if S::exact() {
        n2.is_zero()
    } else {
        n2.to_f64() <= tol * tol
    }
}
