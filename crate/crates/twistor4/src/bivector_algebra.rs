//! Exact linear algebra of Λ²ℝ⁴ over an oriented orthonormal frame.
//!
//! Conventions, fixed once for the whole library:
//!
//! * The metric on Λ² carries the ½ factor: g(v₁∧v₂, v₃∧v₄) = ½·det[g(vᵢ,vⱼ)],
//!   so |Eᵢ∧Eⱼ|² = ½ and the six bivectors
//!     s₁± = E₁∧E₂ ± E₃∧E₄,
//!     s₂± = E₁∧E₃ ± E₄∧E₂,
//!     s₃± = E₁∧E₄ ± E₂∧E₃
//!   form an orthonormal basis. The Hodge star fixes the splitting
//!   Λ² = Λ²₊ ⊕ Λ²₋ with ⋆s±ᵢ = ±s±ᵢ.
//! * A bivector a acts on tangent vectors through the skew endomorphism K_a
//!   defined by g(K_aX, Y) = 2g(a, X∧Y); for unit a this is an orthogonal
//!   complex structure, and K_a∘K_b = −g(a,b)Id ± K_{a×b} on Λ²± makes each
//!   summand a copy of the oriented Euclidean 3-space with its cross product.
//! * (s₁±, s₂±, s₃±) is declared positively oriented in its summand; `cross`
//!   is the cross product of that orientation.

use crate::linalg::{mat4_zero, Mat4, Vec4};
use crate::scalar::Scalar;
use thiserror::Error;

/// Index pairs (i, j), i<j, fixing the Eᵢ∧Eⱼ component order of a bivector.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

// Rows: s1+, s2+, s3+, s1-, s2-, s3- as integer coefficients on the PAIRS
// components. Note s2± = E1∧E3 ∓ E2∧E4 (the middle pair is E4∧E2).
const S_BASIS: [[i64; 6]; 6] = [
    [1, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, -1, 0],
    [0, 0, 1, 1, 0, 0],
    [1, 0, 0, 0, 0, -1],
    [0, 1, 0, 0, 1, 0],
    [0, 0, 1, -1, 0, 0],
];

/// Which half of Λ² = Λ²₊ ⊕ Λ²₋ a bivector (or twistor fiber) lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Summand {
    Plus,
    Minus,
}

impl Summand {
    pub fn opposite(self) -> Summand {
        match self {
            Summand::Plus => Summand::Minus,
            Summand::Minus => Summand::Plus,
        }
    }

    /// +1 on Λ²₊, −1 on Λ²₋; the sign that decorates most fiber formulas.
    pub fn sign<S: Scalar>(self) -> S {
        match self {
            Summand::Plus => S::one(),
            Summand::Minus => S::zero() - S::one(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Summand::Plus => "+",
            Summand::Minus => "-",
        }
    }

    pub fn sign_i8(self) -> i8 {
        match self {
            Summand::Plus => 1,
            Summand::Minus => -1,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BivectorError {
    #[error("operands do not lie in a common summand of the Hodge splitting")]
    MixedSummand,
    #[error("matrix is not antisymmetric, so it is not K_a for any bivector a")]
    NotAntisymmetric,
}

/// Element of Λ²ℝ⁴, stored eagerly in both component systems.
///
/// `e[p]` is the coefficient on the PAIRS[p] basis bivector Eᵢ∧Eⱼ; `s[k]` is
/// the coefficient on (s₁⁺, s₂⁺, s₃⁺, s₁⁻, s₂⁻, s₃⁻). The two agree under the
/// fixed change of basis, and |a|² = Σ s[k]² = ½ Σ e[p]².
#[derive(Debug, Clone, PartialEq)]
pub struct Bivector<S: Scalar> {
    pub e: [S; 6],
    pub s: [S; 6],
}

impl<S: Scalar> Bivector<S> {
    pub fn zero() -> Self {
        Bivector {
            e: std::array::from_fn(|_| S::zero()),
            s: std::array::from_fn(|_| S::zero()),
        }
    }

    pub fn from_e(e: [S; 6]) -> Self {
        // s-coefficient k = g(a, s_k) = ½ Σ_p e_p (s_k)_p by orthonormality.
        let half = S::from_ratio(1, 2);
        let s = std::array::from_fn(|k| {
            let mut acc = S::zero();
            for p in 0..6 {
                if S_BASIS[k][p] != 0 {
                    acc += S::from_ratio(S_BASIS[k][p], 1) * e[p].clone();
                }
            }
            half.clone() * acc
        });
        Bivector { e, s }
    }

    pub fn from_s(s: [S; 6]) -> Self {
        let e = std::array::from_fn(|p| {
            let mut acc = S::zero();
            for k in 0..6 {
                if S_BASIS[k][p] != 0 {
                    acc += S::from_ratio(S_BASIS[k][p], 1) * s[k].clone();
                }
            }
            acc
        });
        Bivector { e, s }
    }

    /// The k-th s-basis bivector, k in 0..6 ordered (s₁⁺,s₂⁺,s₃⁺,s₁⁻,s₂⁻,s₃⁻).
    pub fn s_unit(k: usize) -> Self {
        let mut s: [S; 6] = std::array::from_fn(|_| S::zero());
        s[k] = S::one();
        Bivector::from_s(s)
    }

    /// Embed 3 coordinates on (s₁,s₂,s₃) of one summand.
    pub fn from_summand(coords: &[S; 3], summand: Summand) -> Self {
        let mut s: [S; 6] = std::array::from_fn(|_| S::zero());
        let off = match summand {
            Summand::Plus => 0,
            Summand::Minus => 3,
        };
        for i in 0..3 {
            s[off + i] = coords[i].clone();
        }
        Bivector::from_s(s)
    }

    pub fn plus_coords(&self) -> [S; 3] {
        std::array::from_fn(|i| self.s[i].clone())
    }

    pub fn minus_coords(&self) -> [S; 3] {
        std::array::from_fn(|i| self.s[3 + i].clone())
    }

    pub fn summand_coords(&self, summand: Summand) -> [S; 3] {
        match summand {
            Summand::Plus => self.plus_coords(),
            Summand::Minus => self.minus_coords(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.s.iter().all(|x| x.is_zero())
    }

    pub fn norm2(&self) -> S {
        let mut acc = S::zero();
        for k in 0..6 {
            acc += self.s[k].clone() * self.s[k].clone();
        }
        acc
    }

    /// The summand containing the bivector, if it lies in exactly one.
    /// Zero belongs to both and reports None, as does a mixed bivector;
    /// callers that must distinguish check `is_zero` first.
    pub fn pure_summand(&self) -> Option<Summand> {
        let plus_zero = self.s[..3].iter().all(|x| x.is_zero());
        let minus_zero = self.s[3..].iter().all(|x| x.is_zero());
        match (plus_zero, minus_zero) {
            (false, true) => Some(Summand::Plus),
            (true, false) => Some(Summand::Minus),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Bivector {
            e: std::array::from_fn(|p| self.e[p].clone() + other.e[p].clone()),
            s: std::array::from_fn(|k| self.s[k].clone() + other.s[k].clone()),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Bivector {
            e: std::array::from_fn(|p| self.e[p].clone() - other.e[p].clone()),
            s: std::array::from_fn(|k| self.s[k].clone() - other.s[k].clone()),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Bivector {
            e: std::array::from_fn(|p| c.clone() * self.e[p].clone()),
            s: std::array::from_fn(|k| c.clone() * self.s[k].clone()),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&(S::zero() - S::one()))
    }
}

/// X ∧ Y in Eᵢ∧Eⱼ components.
pub fn wedge<S: Scalar>(x: &Vec4<S>, y: &Vec4<S>) -> Bivector<S> {
    Bivector::from_e(std::array::from_fn(|p| {
        let (i, j) = PAIRS[p];
        x[i].clone() * y[j].clone() - x[j].clone() * y[i].clone()
    }))
}

/// The ½-scaled inner product on Λ²; the s-basis is orthonormal for it.
pub fn inner2<S: Scalar>(a: &Bivector<S>, b: &Bivector<S>) -> S {
    let mut acc = S::zero();
    for k in 0..6 {
        acc += a.s[k].clone() * b.s[k].clone();
    }
    acc
}

/// Hodge star: +1 on the s⁺ coordinates, −1 on the s⁻ coordinates.
pub fn hodge<S: Scalar>(a: &Bivector<S>) -> Bivector<S> {
    let mut s = a.s.clone();
    for k in 3..6 {
        s[k] = S::zero() - s[k].clone();
    }
    Bivector::from_s(s)
}

/// Split a = a₊ + a₋ into its self-dual and anti-self-dual parts.
pub fn sd_split<S: Scalar>(a: &Bivector<S>) -> (Bivector<S>, Bivector<S>) {
    let mut sp = a.s.clone();
    let mut sm = a.s.clone();
    for k in 0..3 {
        sm[k] = S::zero();
    }
    for k in 3..6 {
        sp[k] = S::zero();
    }
    (Bivector::from_s(sp), Bivector::from_s(sm))
}

/// The skew endomorphism K_a with g(K_aX, Y) = 2g(a, X∧Y).
///
/// Column i of the matrix holds the components of K_a(Eᵢ); the pair
/// component a_{ij} (i<j) lands at [j][i] so that K_{E₁∧E₂}: E₁ ↦ E₂.
pub fn endo_of<S: Scalar>(a: &Bivector<S>) -> Mat4<S> {
    let mut k = mat4_zero();
    for p in 0..6 {
        let (i, j) = PAIRS[p];
        k[j][i] = a.e[p].clone();
        k[i][j] = S::zero() - a.e[p].clone();
    }
    k
}

/// Inverse of `endo_of`; rejects matrices that are not antisymmetric.
pub fn bivector_of<S: Scalar>(k: &Mat4<S>) -> Result<Bivector<S>, BivectorError> {
    for i in 0..4 {
        for j in 0..4 {
            if !(k[i][j].clone() + k[j][i].clone()).is_zero() {
                return Err(BivectorError::NotAntisymmetric);
            }
        }
    }
    Ok(Bivector::from_e(std::array::from_fn(|p| {
        let (i, j) = PAIRS[p];
        k[j][i].clone()
    })))
}

/// Trace pairing on endomorphisms: G(P,Q) = −½·tr(PQ); G(K_a,K_b) = 2g(a,b).
pub fn endo_pairing<S: Scalar>(p: &Mat4<S>, q: &Mat4<S>) -> S {
    let mut tr = S::zero();
    for i in 0..4 {
        for j in 0..4 {
            tr += p[i][j].clone() * q[j][i].clone();
        }
    }
    S::from_ratio(-1, 2) * tr
}

pub(crate) fn cross3<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

/// Cross product of the oriented Euclidean 3-space Λ²±.
///
/// Both operands must lie in one common summand (zero belongs to both);
/// the result equals ±½[K_a, K_b] as a bivector, + on Λ²₊ and − on Λ²₋.
pub fn cross<S: Scalar>(a: &Bivector<S>, b: &Bivector<S>) -> Result<Bivector<S>, BivectorError> {
    if a.is_zero() || b.is_zero() {
        return Ok(Bivector::zero());
    }
    let sa = a.pure_summand().ok_or(BivectorError::MixedSummand)?;
    let sb = b.pure_summand().ok_or(BivectorError::MixedSummand)?;
    if sa != sb {
        return Err(BivectorError::MixedSummand);
    }
    let c = cross3(&a.summand_coords(sa), &b.summand_coords(sa));
    Ok(Bivector::from_summand(&c, sa))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{basis_vec4, mat4_identity, mat4_mul, mat4_vec, vec4_add};
    use crate::scalar::{rat, Rat};

    fn e(i: usize) -> Vec4<Rat> {
        basis_vec4(i)
    }

    #[test]
    fn wedge_basis_and_antisymmetry() {
        let b = wedge(&e(0), &e(1));
        assert_eq!(b.e[0], rat(1, 1));
        assert!(b.e[1..].iter().all(|x| x.is_zero()));
        let x = vec4_add(&e(0), &e(2));
        assert!(wedge(&x, &x).is_zero());
        // bilinearity: (E1+E3)∧E2 = E1∧E2 − E2∧E3
        let b = wedge(&x, &e(1));
        assert_eq!(b.e[0], rat(1, 1));
        assert_eq!(b.e[3], rat(-1, 1));
    }

    #[test]
    fn inner2_normalization() {
        let e12 = wedge(&e(0), &e(1));
        assert_eq!(inner2(&e12, &e12), rat(1, 2));
        let s1p: Bivector<Rat> = Bivector::s_unit(0);
        assert_eq!(inner2(&s1p, &s1p), rat(1, 1));
        let s2m: Bivector<Rat> = Bivector::s_unit(4);
        assert_eq!(inner2(&s1p, &s2m), rat(0, 1));
    }

    #[test]
    fn hodge_involution_and_eigenvectors() {
        let e12 = wedge(&e(0), &e(1));
        let h = hodge(&e12);
        assert_eq!(h, wedge(&e(2), &e(3)));
        assert_eq!(hodge(&h), e12);
        let s2p: Bivector<Rat> = Bivector::s_unit(1);
        assert_eq!(hodge(&s2p), s2p);
        let s3m: Bivector<Rat> = Bivector::s_unit(5);
        assert_eq!(hodge(&s3m), s3m.neg());
    }

    #[test]
    fn split_of_a_pair_bivector() {
        let e12 = wedge(&e(0), &e(1));
        let (p, m) = sd_split(&e12);
        let s1p: Bivector<Rat> = Bivector::s_unit(0);
        let s1m: Bivector<Rat> = Bivector::s_unit(3);
        assert_eq!(p, s1p.scale(&rat(1, 2)));
        assert_eq!(m, s1m.scale(&rat(1, 2)));
        assert_eq!(p.add(&m), e12);
    }

    #[test]
    fn endo_of_s1_plus_action() {
        let k = endo_of::<Rat>(&Bivector::s_unit(0));
        assert_eq!(mat4_vec(&k, &e(0)), e(1));
        assert_eq!(mat4_vec(&k, &e(1)), e(0).map(|x| -x));
        assert_eq!(mat4_vec(&k, &e(2)), e(3));
        assert_eq!(mat4_vec(&k, &e(3)), e(2).map(|x| -x));
    }

    #[test]
    fn unit_bivector_endo_squares_to_minus_id() {
        // mixed unit bivector: (3/5)s1+ + (4/5)s2-  is not unit (mixed), use
        // a unit element of one summand instead plus a plain pair bivector.
        let a: Bivector<Rat> =
            Bivector::from_summand(&[rat(3, 5), rat(0, 1), rat(4, 5)], Summand::Plus);
        assert_eq!(a.norm2(), rat(1, 1));
        let k = endo_of(&a);
        let k2 = mat4_mul(&k, &k);
        let minus_id = mat4_identity::<Rat>().map(|r| r.map(|x| -x));
        assert_eq!(k2, minus_id);
    }

    #[test]
    fn bivector_of_inverts_endo_of() {
        let b: Bivector<Rat> = Bivector::s_unit(4);
        assert_eq!(bivector_of(&endo_of(&b)).unwrap(), b);
        let mut not_skew = mat4_identity::<Rat>();
        not_skew[0][1] = rat(2, 1);
        assert_eq!(bivector_of(&not_skew), Err(BivectorError::NotAntisymmetric));
    }

    #[test]
    fn cross_orientation_and_errors() {
        let s = |k: usize| -> Bivector<Rat> { Bivector::s_unit(k) };
        assert_eq!(cross(&s(0), &s(1)).unwrap(), s(2));
        assert_eq!(cross(&s(3), &s(4)).unwrap(), s(5));
        assert!(cross(&s(0), &s(0)).unwrap().is_zero());
        assert_eq!(cross(&s(0), &s(4)), Err(BivectorError::MixedSummand));
        assert_eq!(cross(&s(0).add(&s(3)), &s(1)), Err(BivectorError::MixedSummand));
        assert!(cross(&Bivector::zero(), &s(0)).unwrap().is_zero());
    }

    #[test]
    fn composition_identity_on_each_summand() {
        // K_a K_b = −g(a,b)Id ± K_{a×b}, + on Λ²₊ and − on Λ²₋.
        for (off, summand, sgn) in [(0usize, Summand::Plus, 1i64), (3, Summand::Minus, -1)] {
            let a: Bivector<Rat> =
                Bivector::from_summand(&[rat(1, 2), rat(-2, 3), rat(3, 7)], summand);
            let b: Bivector<Rat> =
                Bivector::from_summand(&[rat(5, 1), rat(1, 4), rat(-1, 2)], summand);
            let _ = off;
            let lhs = mat4_mul(&endo_of(&a), &endo_of(&b));
            let g = inner2(&a, &b);
            let kc = endo_of(&cross(&a, &b).unwrap());
            let rhs: Mat4<Rat> = std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let diag = if i == j { -g.clone() } else { rat(0, 1) };
                    diag + rat(sgn, 1) * kc[i][j].clone()
                })
            });
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn opposite_summands_commute_and_pairing_matches() {
        let a: Bivector<Rat> =
            Bivector::from_summand(&[rat(1, 1), rat(2, 1), rat(-1, 3)], Summand::Plus);
        let b: Bivector<Rat> =
            Bivector::from_summand(&[rat(4, 5), rat(0, 1), rat(7, 2)], Summand::Minus);
        let (ka, kb) = (endo_of(&a), endo_of(&b));
        assert_eq!(mat4_mul(&ka, &kb), mat4_mul(&kb, &ka));
        assert_eq!(endo_pairing(&ka, &kb), rat(2, 1) * inner2(&a, &b));
        assert_eq!(endo_pairing(&ka, &ka), rat(2, 1) * inner2(&a, &a));
    }
}
