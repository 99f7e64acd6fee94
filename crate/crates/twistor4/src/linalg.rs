//! Small fixed-size linear algebra over a generic scalar.
//!
//! Dimension 4 (tangent space) and 6 (bivector space) are hard-coded; no
//! general-n machinery. All helpers are pure functions on plain arrays.

use crate::scalar::Scalar;

pub type Vec4<S> = [S; 4];
pub type Mat4<S> = [[S; 4]; 4];
pub type Vec6<S> = [S; 6];
pub type Mat6<S> = [[S; 6]; 6];
pub type Mat3<S> = [[S; 3]; 3];

pub fn vec4_zero<S: Scalar>() -> Vec4<S> {
    std::array::from_fn(|_| S::zero())
}

pub fn mat4_zero<S: Scalar>() -> Mat4<S> {
    std::array::from_fn(|_| vec4_zero())
}

pub fn mat4_identity<S: Scalar>() -> Mat4<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { S::one() } else { S::zero() }))
}

pub fn vec6_zero<S: Scalar>() -> Vec6<S> {
    std::array::from_fn(|_| S::zero())
}

pub fn mat6_zero<S: Scalar>() -> Mat6<S> {
    std::array::from_fn(|_| vec6_zero())
}

pub fn mat3_zero<S: Scalar>() -> Mat3<S> {
    std::array::from_fn(|_| std::array::from_fn(|_| S::zero()))
}

pub fn basis_vec4<S: Scalar>(i: usize) -> Vec4<S> {
    let mut v = vec4_zero();
    v[i] = S::one();
    v
}

pub fn vec4_add<S: Scalar>(a: &Vec4<S>, b: &Vec4<S>) -> Vec4<S> {
    std::array::from_fn(|i| a[i].clone() + b[i].clone())
}

pub fn vec4_sub<S: Scalar>(a: &Vec4<S>, b: &Vec4<S>) -> Vec4<S> {
    std::array::from_fn(|i| a[i].clone() - b[i].clone())
}

pub fn vec4_scale<S: Scalar>(c: &S, a: &Vec4<S>) -> Vec4<S> {
    std::array::from_fn(|i| c.clone() * a[i].clone())
}

pub fn vec4_dot<S: Scalar>(a: &Vec4<S>, b: &Vec4<S>) -> S {
    let mut acc = S::zero();
    for i in 0..4 {
        acc += a[i].clone() * b[i].clone();
    }
    acc
}

/// Inner product with respect to a symmetric bilinear form.
pub fn vec4_dot_gram<S: Scalar>(g: &Mat4<S>, a: &Vec4<S>, b: &Vec4<S>) -> S {
    let mut acc = S::zero();
    for i in 0..4 {
        for j in 0..4 {
            acc += a[i].clone() * g[i][j].clone() * b[j].clone();
        }
    }
    acc
}

pub fn mat4_mul<S: Scalar>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = S::zero();
            for k in 0..4 {
                acc += a[i][k].clone() * b[k][j].clone();
            }
            acc
        })
    })
}

pub fn mat4_vec<S: Scalar>(a: &Mat4<S>, v: &Vec4<S>) -> Vec4<S> {
    std::array::from_fn(|i| {
        let mut acc = S::zero();
        for k in 0..4 {
            acc += a[i][k].clone() * v[k].clone();
        }
        acc
    })
}

pub fn mat4_transpose<S: Scalar>(a: &Mat4<S>) -> Mat4<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub fn mat4_add<S: Scalar>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].clone() + b[i][j].clone()))
}

pub fn mat4_sub<S: Scalar>(a: &Mat4<S>, b: &Mat4<S>) -> Mat4<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].clone() - b[i][j].clone()))
}

pub fn mat4_scale<S: Scalar>(c: &S, a: &Mat4<S>) -> Mat4<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| c.clone() * a[i][j].clone()))
}

pub fn mat4_trace<S: Scalar>(a: &Mat4<S>) -> S {
    let mut acc = S::zero();
    for i in 0..4 {
        acc += a[i][i].clone();
    }
    acc
}

pub fn mat4_frob2<S: Scalar>(a: &Mat4<S>) -> S {
    let mut acc = S::zero();
    for i in 0..4 {
        for j in 0..4 {
            acc += a[i][j].clone() * a[i][j].clone();
        }
    }
    acc
}

pub fn mat6_vec<S: Scalar>(a: &Mat6<S>, v: &Vec6<S>) -> Vec6<S> {
    std::array::from_fn(|i| {
        let mut acc = S::zero();
        for k in 0..6 {
            acc += a[i][k].clone() * v[k].clone();
        }
        acc
    })
}

pub fn mat6_trace<S: Scalar>(a: &Mat6<S>) -> S {
    let mut acc = S::zero();
    for i in 0..6 {
        acc += a[i][i].clone();
    }
    acc
}

pub fn mat6_sub<S: Scalar>(a: &Mat6<S>, b: &Mat6<S>) -> Mat6<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].clone() - b[i][j].clone()))
}

pub fn mat6_frob2<S: Scalar>(a: &Mat6<S>) -> S {
    let mut acc = S::zero();
    for i in 0..6 {
        for j in 0..6 {
            acc += a[i][j].clone() * a[i][j].clone();
        }
    }
    acc
}

pub fn mat3_frob2<S: Scalar>(a: &Mat3<S>) -> S {
    let mut acc = S::zero();
    for i in 0..3 {
        for j in 0..3 {
            acc += a[i][j].clone() * a[i][j].clone();
        }
    }
    acc
}

pub fn mat3_trace<S: Scalar>(a: &Mat3<S>) -> S {
    a[0][0].clone() + a[1][1].clone() + a[2][2].clone()
}

pub fn det4<S: Scalar>(m: &Mat4<S>) -> S {
    // Laplace expansion along the first row; 4x4 only, exactness matters
    // more than speed here.
    let minor = |r: usize, c: usize| -> S {
        let rows: Vec<usize> = (0..4).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..4).filter(|&j| j != c).collect();
        let a = |i: usize, j: usize| m[rows[i]][cols[j]].clone();
        a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
            - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
    };
    let mut acc = S::zero();
    for c in 0..4 {
        let term = m[0][c].clone() * minor(0, c);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Gaussian elimination with partial pivoting (by nonzero test for exact
/// scalars, by magnitude for floats). Returns None for singular input.
pub fn mat4_inverse<S: Scalar>(m: &Mat4<S>) -> Option<Mat4<S>> {
    let mut a: Vec<Vec<S>> = (0..4)
        .map(|i| {
            let mut row: Vec<S> = m[i].to_vec();
            for j in 0..4 {
                row.push(if i == j { S::one() } else { S::zero() });
            }
            row
        })
        .collect();
    for col in 0..4 {
        let pivot = (col..4).max_by(|&r1, &r2| {
            a[r1][col]
                .abs()
                .to_f64()
                .partial_cmp(&a[r2][col].abs().to_f64())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[pivot][col].is_zero() {
            return None;
        }
        a.swap(col, pivot);
        let inv = S::one() / a[col][col].clone();
        for j in 0..8 {
            a[col][j] = a[col][j].clone() * inv.clone();
        }
        for r in 0..4 {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..8 {
                    let d = f.clone() * a[col][j].clone();
                    a[r][j] = a[r][j].clone() - d;
                }
            }
        }
    }
    Some(std::array::from_fn(|i| std::array::from_fn(|j| a[i][4 + j].clone())))
}
