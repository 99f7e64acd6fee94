//! Pointwise model of the product twistor fibers and the Nijenhuis oracle.
//!
//! A fiber point of one twistor sphere is a unit bivector σ in a fixed
//! summand Λ²±; its vertical tangent space is σ^⊥ inside that summand, and
//! the fiber complex structure is 𝒥_σV = σ×V on Λ²₊ and −(σ×V) on Λ²₋.
//! A fiber point of the product is a pair J = (J₁,J₂) with independent
//! summand tags, and the four vertical structures are
//!   K₁V = (𝒥₁V₁, 𝒥₂V₂),  K₂V = (𝒥₁V₁, −𝒥₂V₂),  K₃ = −K₂,  K₄ = −K₁.
//! The horizontal structure is always K_{σ₁}, the endomorphism of the first
//! factor.
//!
//! The Nijenhuis tensor of the product structure splits into a horizontal
//! part (torsion only), a vertical part (curvature of the torsion connection
//! acting on each fiber coordinate), and a mixed part that is identically
//! zero for m ∈ {1,2} and equals 2·K_{σ₁}(K_{V₁}X) for m ∈ {3,4}. The
//! curvature acts on a fiber coordinate by
//!   ℛ^D(X∧Y)·σ = ±proj±(ℛ^D(X∧Y)) × σ  on Λ²± ,
//! the same sign rule as 𝒥. The curvature action on the pair J is read
//! componentwise (each factor's operator applied to its own σ); the source
//! text leaves this implicit.
//!
//! `brute_force_check` quantifies the three components over all six frame
//! pairs and a deterministic sample of fiber points, demanding exact zeros
//! in rational mode. It is the ground truth the theorem-level checkers are
//! audited against.

use crate::bivector_algebra::{cross3, endo_of, wedge, Bivector, Summand};
use crate::invariant_geometry::GeometryAnalysis;
use crate::linalg::{mat4_vec, mat6_vec, Mat4, Mat6, Vec4, Vec6};
use crate::scalar::{DetRng, Scalar};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TwistorError {
    #[error("bivector is not a unit element of the required summand")]
    NotUnit,
    #[error("bivector has components in both summands")]
    MixedSummand,
    #[error("vector is not vertical at the given fiber point")]
    NotVertical,
}

/// Verticality and unit-norm checks on the float backend use this slack;
/// the rational backend ignores it and demands exact equalities.
const CHECK_TOL: f64 = 1e-9;

fn scalar_is_zero<S: Scalar>(x: &S) -> bool {
    if S::exact() {
        x.is_zero()
    } else {
        x.to_f64().abs() <= CHECK_TOL
    }
}

/// A point of one twistor sphere: a unit bivector in a declared summand.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistorPoint<S: Scalar> {
    pub sigma: Bivector<S>,
    pub summand: Summand,
}

impl<S: Scalar> TwistorPoint<S> {
    pub fn new(sigma: Bivector<S>, summand: Summand) -> Result<Self, TwistorError> {
        let unit_defect = sigma.norm2() - S::one();
        if !scalar_is_zero(&unit_defect) {
            return Err(TwistorError::NotUnit);
        }
        match sigma.pure_summand() {
            Some(s) if s == summand => Ok(TwistorPoint { sigma, summand }),
            Some(_) => Err(TwistorError::NotVertical),
            None => Err(TwistorError::MixedSummand),
        }
    }

    /// Coordinates in the three-dimensional summand.
    pub fn coords3(&self) -> [S; 3] {
        self.summand_coords(&self.sigma)
    }

    fn summand_coords(&self, b: &Bivector<S>) -> [S; 3] {
        b.summand_coords(self.summand)
    }

    /// The associated almost complex structure on the base tangent space.
    pub fn endo(&self) -> Mat4<S> {
        endo_of(&self.sigma)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductFiberPoint<S: Scalar> {
    pub j1: TwistorPoint<S>,
    pub j2: TwistorPoint<S>,
}

/// A vertical tangent vector of the product fiber: one bivector per factor,
/// each orthogonal to that factor's σ inside the same summand.
#[derive(Debug, Clone, PartialEq)]
pub struct VerticalVector<S: Scalar> {
    pub v1: Bivector<S>,
    pub v2: Bivector<S>,
}

fn check_vertical<S: Scalar>(p: &TwistorPoint<S>, v: &Bivector<S>) -> Result<(), TwistorError> {
    if v.is_zero() {
        return Ok(());
    }
    match v.pure_summand() {
        Some(s) if s == p.summand => {}
        Some(_) => return Err(TwistorError::NotVertical),
        None => return Err(TwistorError::MixedSummand),
    }
    let mut ip = S::zero();
    let sc = p.coords3();
    let vc = p.summand_coords(v);
    for i in 0..3 {
        ip += sc[i].clone() * vc[i].clone();
    }
    if scalar_is_zero(&ip) {
        Ok(())
    } else {
        Err(TwistorError::NotVertical)
    }
}

impl<S: Scalar> VerticalVector<S> {
    pub fn new(
        j: &ProductFiberPoint<S>,
        v1: Bivector<S>,
        v2: Bivector<S>,
    ) -> Result<Self, TwistorError> {
        check_vertical(&j.j1, &v1)?;
        check_vertical(&j.j2, &v2)?;
        Ok(VerticalVector { v1, v2 })
    }

    pub fn is_zero(&self) -> bool {
        self.v1.is_zero() && self.v2.is_zero()
    }
}

/// 𝒥_σ V: the fiber complex structure applied to a vertical vector.
pub fn vertical_cs<S: Scalar>(
    p: &TwistorPoint<S>,
    v: &Bivector<S>,
) -> Result<Bivector<S>, TwistorError> {
    check_vertical(p, v)?;
    if v.is_zero() {
        return Ok(Bivector::zero());
    }
    let c = cross3(&p.coords3(), &p.summand_coords(v));
    let mut out = Bivector::from_summand(&c, p.summand);
    if p.summand == Summand::Minus {
        out = out.neg();
    }
    Ok(out)
}

/// Per-factor signs of K_m relative to (𝒥₁, 𝒥₂).
pub fn k_m_signs(m: u8) -> (i8, i8) {
    match m {
        1 => (1, 1),
        2 => (1, -1),
        3 => (-1, 1),
        4 => (-1, -1),
        _ => panic!("m must be in 1..=4"),
    }
}

/// K_m applied to a vertical vector of the product fiber.
pub fn k_m<S: Scalar>(
    m: u8,
    j: &ProductFiberPoint<S>,
    v: &VerticalVector<S>,
) -> Result<VerticalVector<S>, TwistorError> {
    let (s1, s2) = k_m_signs(m);
    let mut w1 = vertical_cs(&j.j1, &v.v1)?;
    let mut w2 = vertical_cs(&j.j2, &v.v2)?;
    if s1 < 0 {
        w1 = w1.neg();
    }
    if s2 < 0 {
        w2 = w2.neg();
    }
    Ok(VerticalVector { v1: w1, v2: w2 })
}

/// Horizontal Nijenhuis component for a (1,2) torsion tensor in frame
/// components: T(X,Y) − T(J₁X,J₁Y) + J₁T(J₁X,Y) + J₁T(X,J₁Y).
pub fn horizontal_nijenhuis<S: Scalar>(
    t: &[[[S; 4]; 4]; 4],
    j1: &TwistorPoint<S>,
    x: &Vec4<S>,
    y: &Vec4<S>,
) -> Vec4<S> {
    let jm = j1.endo();
    let jx = mat4_vec(&jm, x);
    let jy = mat4_vec(&jm, y);
    let t_of = |a: &Vec4<S>, b: &Vec4<S>| -> Vec4<S> {
        std::array::from_fn(|k| {
            let mut acc = S::zero();
            for i in 0..4 {
                if a[i].is_zero() {
                    continue;
                }
                for j in 0..4 {
                    acc += a[i].clone() * b[j].clone() * t[i][j][k].clone();
                }
            }
            acc
        })
    };
    let t1 = t_of(x, y);
    let t2 = t_of(&jx, &jy);
    let t3 = mat4_vec(&jm, &t_of(&jx, y));
    let t4 = mat4_vec(&jm, &t_of(x, &jy));
    std::array::from_fn(|k| t1[k].clone() - t2[k].clone() + t3[k].clone() + t4[k].clone())
}

/// ℛ^D(X∧Y) acting on one fiber coordinate, in summand coordinates:
/// ±proj±(ℛ^D(X∧Y)) × σ.
fn fiber_action<S: Scalar>(op_image_s: &Vec6<S>, p: &TwistorPoint<S>) -> [S; 3] {
    let proj: [S; 3] = match p.summand {
        Summand::Plus => std::array::from_fn(|i| op_image_s[i].clone()),
        Summand::Minus => std::array::from_fn(|i| op_image_s[i + 3].clone()),
    };
    let c = cross3(&proj, &p.coords3());
    match p.summand {
        Summand::Plus => c,
        Summand::Minus => std::array::from_fn(|i| S::zero() - c[i].clone()),
    }
}

/// Curvature action of ℛ^D on a single twistor point (a vertical vector).
pub fn curvature_fiber_action<S: Scalar>(
    rd_op: &Mat6<S>,
    xy: &Bivector<S>,
    p: &TwistorPoint<S>,
) -> Bivector<S> {
    let image = mat6_vec(rd_op, &xy.s);
    Bivector::from_summand(&fiber_action(&image, p), p.summand)
}

/// Vertical Nijenhuis component:
/// −R^D(X,Y)J + R^D(J₁X,J₁Y)J − K_m(R^D(J₁X,Y)J + R^D(X,J₁Y)J),
/// the curvature acting componentwise on J = (σ₁,σ₂).
pub fn vertical_nijenhuis<S: Scalar>(
    m: u8,
    rd_op: &Mat6<S>,
    j: &ProductFiberPoint<S>,
    x: &Vec4<S>,
    y: &Vec4<S>,
) -> VerticalVector<S> {
    let (sg1, sg2) = k_m_signs(m);
    let jm = j.j1.endo();
    let jx = mat4_vec(&jm, x);
    let jy = mat4_vec(&jm, y);
    let images: [Vec6<S>; 4] = [
        mat6_vec(rd_op, &wedge(x, y).s),
        mat6_vec(rd_op, &wedge(&jx, &jy).s),
        mat6_vec(rd_op, &wedge(&jx, y).s),
        mat6_vec(rd_op, &wedge(x, &jy).s),
    ];
    let factor = |p: &TwistorPoint<S>, sgn: i8| -> Bivector<S> {
        let a: [[S; 3]; 4] = std::array::from_fn(|k| fiber_action(&images[k], p));
        let sum34: [S; 3] = std::array::from_fn(|i| a[2][i].clone() + a[3][i].clone());
        let eps: i8 = match p.summand {
            Summand::Plus => 1,
            Summand::Minus => -1,
        };
        let k_term = cross3(&p.coords3(), &sum34);
        let total_sign = sgn * eps;
        let n: [S; 3] = std::array::from_fn(|i| {
            let mut v = a[1][i].clone() - a[0][i].clone();
            let kt = k_term[i].clone();
            if total_sign > 0 {
                v = v - kt;
            } else {
                v = v + kt;
            }
            v
        });
        Bivector::from_summand(&n, p.summand)
    };
    VerticalVector { v1: factor(&j.j1, sg1), v2: factor(&j.j2, sg2) }
}

/// Mixed Nijenhuis component on (X^h, V): identically zero for m ∈ {1,2},
/// and 2·K_{σ₁}(K_{V₁}X) for m ∈ {3,4}.
pub fn mixed_nijenhuis<S: Scalar>(
    m: u8,
    j: &ProductFiberPoint<S>,
    v: &VerticalVector<S>,
    x: &Vec4<S>,
) -> Result<Vec4<S>, TwistorError> {
    check_vertical(&j.j1, &v.v1)?;
    check_vertical(&j.j2, &v.v2)?;
    let _ = k_m_signs(m);
    if m <= 2 {
        return Ok(std::array::from_fn(|_| S::zero()));
    }
    let kv = endo_of(&v.v1);
    let work = mat4_vec(&j.j1.endo(), &mat4_vec(&kv, x));
    Ok(std::array::from_fn(|k| S::from_ratio(2, 1) * work[k].clone()))
}

/// Deterministic fiber samples: one list of unit bivectors per summand.
#[derive(Debug, Clone)]
pub struct FiberSamples<S: Scalar> {
    pub plus: Vec<Bivector<S>>,
    pub minus: Vec<Bivector<S>>,
}

impl<S: Scalar> FiberSamples<S> {
    pub fn sphere(&self, summand: Summand) -> &[Bivector<S>] {
        match summand {
            Summand::Plus => &self.plus,
            Summand::Minus => &self.minus,
        }
    }
}

fn sphere_samples<S: Scalar>(n: usize, seed: u64, summand: Summand) -> Vec<Bivector<S>> {
    let mut pts: Vec<[S; 3]> = Vec::with_capacity(n);
    for i in 0..3 {
        for sign in [1i64, -1] {
            let mut v: [S; 3] = std::array::from_fn(|_| S::zero());
            v[i] = S::from_ratio(sign, 1);
            pts.push(v);
        }
    }
    // Stereographic images of a lattice of rational points: exactly unit
    // norm, so the rational backend can demand exact residual zeros. The
    // coarse denominator keeps every sample coordinate small enough that
    // downstream rational products stay single-limb.
    let mut rng = DetRng::new(seed);
    while pts.len() < n {
        let u = S::from_ratio((rng.next_u64() >> 16) as i64 % 17 - 8, 4);
        let v = S::from_ratio((rng.next_u64() >> 16) as i64 % 17 - 8, 4);
        let uu = u.clone() * u.clone() + v.clone() * v.clone();
        let d = uu.clone() + S::one();
        let two = S::from_ratio(2, 1);
        let cand = [
            two.clone() * u / d.clone(),
            two * v / d.clone(),
            (uu - S::one()) / d,
        ];
        if pts.iter().any(|p| *p == cand) {
            continue;
        }
        pts.push(cand);
    }
    pts.into_iter().map(|c| Bivector::from_summand(&c, summand)).collect()
}

/// The 6 signed basis points of each sphere plus deterministic rational
/// stereographic points up to n per sphere.
pub fn sample_fibers<S: Scalar>(n_per_sphere: usize, seed: u64) -> FiberSamples<S> {
    assert!(n_per_sphere >= 6, "need at least the six signed basis points");
    FiberSamples {
        plus: sphere_samples(n_per_sphere, seed, Summand::Plus),
        minus: sphere_samples(n_per_sphere, seed.wrapping_add(1), Summand::Minus),
    }
}

/// Where and how large the worst Nijenhuis residual was.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteOutcome {
    pub ok: bool,
    pub max_residual: f64,
    /// Populated when the residual is nonzero: fiber indices, frame pair,
    /// and which Nijenhuis component witnessed it.
    pub witness: Option<String>,
}

struct ResidualTracker<S: Scalar> {
    exact_zero: bool,
    max: S,
    // |max| as f64, cached so the hot path never converts the running
    // maximum again.
    max_f64: f64,
    where_: Option<(usize, Option<usize>, usize, &'static str)>,
}

impl<S: Scalar> ResidualTracker<S> {
    fn new() -> Self {
        ResidualTracker { exact_zero: true, max: S::zero(), max_f64: 0.0, where_: None }
    }

    fn update(&mut self, value: &S, s1: usize, s2: Option<usize>, pair: usize, tag: &'static str) {
        if value.is_zero() {
            return;
        }
        let af = value.to_f64().abs();
        self.update_pre(value, af, s1, s2, pair, tag);
    }

    /// `update` with |value| as f64 already in hand; several trackers share
    /// one residual value, so the conversion is hoisted out.
    fn update_pre(
        &mut self,
        value: &S,
        abs_f64: f64,
        s1: usize,
        s2: Option<usize>,
        pair: usize,
        tag: &'static str,
    ) {
        if value.is_zero() {
            return;
        }
        self.exact_zero = false;
        if self.where_.is_none() || abs_f64 > self.max_f64 {
            self.max = value.abs();
            self.max_f64 = abs_f64;
            self.where_ = Some((s1, s2, pair, tag));
        }
    }

    fn outcome(&self, tol: f64) -> BruteOutcome {
        let max = self.max_f64;
        let ok = if S::exact() { self.exact_zero } else { max <= tol };
        let witness = self.where_.map(|(s1, s2, pair, tag)| {
            let (i, j) = crate::bivector_algebra::PAIRS[pair];
            match s2 {
                Some(s2) => format!(
                    "{tag} residual {max:.3e} at sigma1 #{s1}, sigma2 #{s2}, frame pair (F{}, F{})",
                    i + 1,
                    j + 1
                ),
                None => format!(
                    "{tag} residual {max:.3e} at sigma1 #{s1}, frame pair (F{}, F{})",
                    i + 1,
                    j + 1
                ),
            }
        });
        BruteOutcome { ok, max_residual: max, witness }
    }
}

fn basis_vec<S: Scalar>(i: usize) -> Vec4<S> {
    std::array::from_fn(|p| if p == i { S::one() } else { S::zero() })
}

/// First nonzero tangent vector of the fiber sphere at σ, unnormalized.
fn first_tangent<S: Scalar>(sigma3: &[S; 3]) -> [S; 3] {
    for a in 0..3 {
        let mut e: [S; 3] = std::array::from_fn(|_| S::zero());
        e[a] = S::one();
        let c = cross3(sigma3, &e);
        if c.iter().any(|x| !x.is_zero()) {
            return c;
        }
    }
    unreachable!("unit bivector has no vanishing cross with all basis vectors")
}

/// ℛ applied to the two J-combined wedges of a frame pair: the images of
/// Jx∧Jy − x∧y and of Jx∧y + x∧Jy. By linearity these two carry everything
/// the vertical Nijenhuis component needs, at half the 6×6 applications.
fn curvature_pair_images<S: Scalar>(
    rd: &Mat6<S>,
    jm: &Mat4<S>,
    a: usize,
    b: usize,
) -> (Vec6<S>, Vec6<S>) {
    let x = basis_vec::<S>(a);
    let y = basis_vec::<S>(b);
    let jx: Vec4<S> = std::array::from_fn(|r| jm[r][a].clone());
    let jy: Vec4<S> = std::array::from_fn(|r| jm[r][b].clone());
    let w01 = wedge(&jx, &jy).sub(&wedge(&x, &y));
    let w34 = wedge(&jx, &y).add(&wedge(&x, &jy));
    (mat6_vec(rd, &w01.s), mat6_vec(rd, &w34.s))
}

/// σ-independent seed of the vertical Nijenhuis residual on one summand:
/// d = π(ℛ(Jx∧Jy − x∧y)) and s = π(ℛ(Jx∧y + x∧Jy)). Against a fiber point
/// σ the residual is ±(cross(d, σ) ∓ kt) with kt = σ×(s×σ) expanded by the
/// Lagrange identity to s⟨σ,σ⟩ − σ⟨s,σ⟩. The leading summand sign is
/// dropped: the trackers consume only zero tests and magnitudes.
struct VerticalSeed<S: Scalar> {
    d: [S; 3],
    s: [S; 3],
}

impl<S: Scalar> VerticalSeed<S> {
    fn of(img01: &Vec6<S>, img34: &Vec6<S>, half: Summand) -> Self {
        let off = match half {
            Summand::Plus => 0,
            Summand::Minus => 3,
        };
        VerticalSeed {
            d: std::array::from_fn(|i| img01[off + i].clone()),
            s: std::array::from_fn(|i| img34[off + i].clone()),
        }
    }

    /// The two sign variants (cross(d,σ) − kt, cross(d,σ) + kt); the first
    /// applies when the K_m sign times the summand sign is positive.
    fn variants(&self, sigma: &[S; 3], norm2: &S) -> ([S; 3], [S; 3]) {
        let cd = cross3(&self.d, sigma);
        let mut sd = S::zero();
        for i in 0..3 {
            sd += self.s[i].clone() * sigma[i].clone();
        }
        let unit = *norm2 == S::one();
        let kt: [S; 3] = std::array::from_fn(|i| {
            let lead = if unit {
                self.s[i].clone()
            } else {
                self.s[i].clone() * norm2.clone()
            };
            lead - sigma[i].clone() * sd.clone()
        });
        let minus: [S; 3] = std::array::from_fn(|i| cd[i].clone() - kt[i].clone());
        let plus: [S; 3] = std::array::from_fn(|i| cd[i].clone() + kt[i].clone());
        (minus, plus)
    }

    /// variants() specialized to σ = ±e_axis: cross(d, σ) is a signed
    /// permutation of d, and kt is s with the axis entry zeroed since
    /// ⟨σ,σ⟩ = 1 and σ⟨s,σ⟩ = s_axis·e_axis. No multiplications, same
    /// exact values as the general path.
    fn variants_basis(&self, axis: usize, neg: bool) -> ([S; 3], [S; 3]) {
        let z = S::zero;
        let d = &self.d;
        let cd: [S; 3] = match axis {
            0 => [z(), d[2].clone(), -d[1].clone()],
            1 => [-d[2].clone(), z(), d[0].clone()],
            _ => [d[1].clone(), -d[0].clone(), z()],
        };
        let cd: [S; 3] = if neg { cd.map(|c| -c) } else { cd };
        let kt: [S; 3] =
            std::array::from_fn(|i| if i == axis { z() } else { self.s[i].clone() });
        let minus: [S; 3] = std::array::from_fn(|i| cd[i].clone() - kt[i].clone());
        let plus: [S; 3] = std::array::from_fn(|i| cd[i].clone() + kt[i].clone());
        (minus, plus)
    }
}

/// Recognizes σ = ±e_axis, returning (axis, negated).
fn basis_axis<S: Scalar>(c: &[S; 3]) -> Option<(usize, bool)> {
    let one = S::one();
    let mut found = None;
    for (i, v) in c.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        if found.is_some() {
            return None;
        }
        if *v == one {
            found = Some((i, false));
        } else if *v == -one.clone() {
            found = Some((i, true));
        } else {
            return None;
        }
    }
    found
}

fn norm2_3<S: Scalar>(v: &[S; 3]) -> S {
    let mut acc = S::zero();
    for x in v {
        acc += x.clone() * x.clone();
    }
    acc
}

fn abs_f64_3<S: Scalar>(v: &[S; 3]) -> [f64; 3] {
    std::array::from_fn(|i| if v[i].is_zero() { 0.0 } else { v[i].to_f64().abs() })
}

/// Evaluate all three Nijenhuis components of 𝒥^m on component (o₁,o₂) over
/// every frame pair and all sampled fiber-point pairs.
pub fn brute_force_check_detailed<S: Scalar>(
    m: u8,
    pair: (Summand, Summand),
    analysis: &GeometryAnalysis<S>,
    samples: &FiberSamples<S>,
    tol: f64,
) -> BruteOutcome {
    let (sg1, sg2) = k_m_signs(m);
    let rd = &analysis.point.rd_op;
    let t3 = &analysis.torsion3;
    let torsion_free = t3.iter().flatten().flatten().all(|v| v.is_zero());
    let mut tracker = ResidualTracker::<S>::new();

    let sphere1 = samples.sphere(pair.0);
    let sphere2 = samples.sphere(pair.1);
    let eps1: i8 = pair.0.sign_i8();
    let eps2: i8 = pair.1.sign_i8();
    let tsign1 = sg1 as i64 * eps1 as i64;
    let tsign2 = sg2 as i64 * eps2 as i64;

    for (i1, sig1) in sphere1.iter().enumerate() {
        let p1 = TwistorPoint { sigma: sig1.clone(), summand: pair.0 };
        let jm = p1.endo();
        let sig1c = p1.coords3();
        let n1 = norm2_3(&sig1c);

        // Per frame pair: the σ₂-independent residual seeds on both factors.
        let mut seeds: Vec<VerticalSeed<S>> = Vec::with_capacity(6);
        for (pidx, &(a, b)) in crate::bivector_algebra::PAIRS.iter().enumerate() {
            let (img01, img34) = curvature_pair_images(rd, &jm, a, b);

            // Horizontal component: torsion only.
            if !torsion_free {
                let hor = horizontal_nijenhuis(t3, &p1, &basis_vec(a), &basis_vec(b));
                for c in &hor {
                    tracker.update(c, i1, None, pidx, "horizontal");
                }
            }

            // Factor-1 vertical component: independent of σ₂.
            let seed1 = VerticalSeed::of(&img01, &img34, pair.0);
            let (vminus, vplus) = seed1.variants(&sig1c, &n1);
            let v = if tsign1 > 0 { vminus } else { vplus };
            for c in &v {
                tracker.update(c, i1, None, pidx, "vertical factor 1");
            }
            seeds.push(VerticalSeed::of(&img01, &img34, pair.1));
        }

        // Mixed component, m=3,4: one witness vertical vector per σ₁.
        if m >= 3 {
            let tangent = first_tangent(&sig1c);
            let vb = Bivector::from_summand(&tangent, pair.0);
            let kv = endo_of(&vb);
            let x = basis_vec::<S>(0);
            let work = mat4_vec(&jm, &mat4_vec(&kv, &x));
            for c in &work {
                let doubled = S::from_ratio(2, 1) * c.clone();
                tracker.update(&doubled, i1, None, 0, "mixed");
            }
        }

        // Factor-2 vertical component over the second sphere.
        for (i2, sig2) in sphere2.iter().enumerate() {
            let sig2c = sig2.summand_coords(pair.1);
            let n2 = norm2_3(&sig2c);
            for (pidx, seed) in seeds.iter().enumerate() {
                let (vminus, vplus) = seed.variants(&sig2c, &n2);
                let v = if tsign2 > 0 { vminus } else { vplus };
                for c in &v {
                    tracker.update(c, i1, Some(i2), pidx, "vertical factor 2");
                }
            }
        }
    }
    tracker.outcome(tol)
}

/// Verdict and worst residual of the sampled Nijenhuis evaluation.
pub fn brute_force_check<S: Scalar>(
    m: u8,
    pair: (Summand, Summand),
    analysis: &GeometryAnalysis<S>,
    samples: &FiberSamples<S>,
    tol: f64,
) -> (bool, f64) {
    let out = brute_force_check_detailed(m, pair, analysis, samples, tol);
    (out.ok, out.max_residual)
}

/// All sixteen (m, component-pair) brute verdicts in one sweep, sharing the
/// curvature images across m and across the second sphere. Produces the same
/// outcomes as sixteen `brute_force_check_detailed` calls.
pub fn brute_force_check_all<S: Scalar>(
    analysis: &GeometryAnalysis<S>,
    samples: &FiberSamples<S>,
    tol: f64,
) -> Vec<(u8, (Summand, Summand), BruteOutcome)> {
    let rd = &analysis.point.rd_op;
    let t3 = &analysis.torsion3;
    let both = [Summand::Plus, Summand::Minus];
    let mut trackers: Vec<(u8, (Summand, Summand), ResidualTracker<S>)> = Vec::new();
    for m in 1..=4u8 {
        for o1 in both {
            for o2 in both {
                trackers.push((m, (o1, o2), ResidualTracker::new()));
            }
        }
    }
    let idx_of = |m: u8, o1: Summand, o2: Summand| -> usize {
        let a = if o1 == Summand::Plus { 0 } else { 1 };
        let b = if o2 == Summand::Plus { 0 } else { 1 };
        ((m - 1) as usize) * 4 + a * 2 + b
    };

    let torsion_free = t3.iter().flatten().flatten().all(|v| v.is_zero());

    for o1 in both {
        let eps1 = o1.sign_i8();
        let sphere1 = samples.sphere(o1);
        for (i1, sig1) in sphere1.iter().enumerate() {
            let p1 = TwistorPoint { sigma: sig1.clone(), summand: o1 };
            let jm = p1.endo();
            let sig1c = p1.coords3();
            let n1 = norm2_3(&sig1c);
            let bk1 = basis_axis(&sig1c);

            // Per frame pair: residual seeds on both summands, each variant
            // converted to f64 once and shared across the (m, o₂) trackers.
            let mut seeds: Vec<[VerticalSeed<S>; 2]> = Vec::with_capacity(6);
            for (pidx, &(a, b)) in crate::bivector_algebra::PAIRS.iter().enumerate() {
                let (img01, img34) = curvature_pair_images(rd, &jm, a, b);
                let seed_both = [
                    VerticalSeed::of(&img01, &img34, Summand::Plus),
                    VerticalSeed::of(&img01, &img34, Summand::Minus),
                ];

                let hor = if torsion_free {
                    None
                } else {
                    Some(horizontal_nijenhuis(t3, &p1, &basis_vec(a), &basis_vec(b)))
                };
                let fhor: Option<[f64; 4]> = hor.as_ref().map(|h| {
                    std::array::from_fn(|i| {
                        if h[i].is_zero() {
                            0.0
                        } else {
                            h[i].to_f64().abs()
                        }
                    })
                });
                let seed1 = &seed_both[if o1 == Summand::Plus { 0 } else { 1 }];
                let (vminus, vplus) = match bk1 {
                    Some((axis, ng)) => seed1.variants_basis(axis, ng),
                    None => seed1.variants(&sig1c, &n1),
                };
                let fminus = abs_f64_3(&vminus);
                let fplus = abs_f64_3(&vplus);
                for m in 1..=4u8 {
                    let (sg1, _) = k_m_signs(m);
                    let (v, f) = if sg1 as i64 * eps1 as i64 > 0 {
                        (&vminus, &fminus)
                    } else {
                        (&vplus, &fplus)
                    };
                    for o2 in both {
                        let t = &mut trackers[idx_of(m, o1, o2)].2;
                        if let (Some(h), Some(fh)) = (&hor, &fhor) {
                            for i in 0..4 {
                                t.update_pre(&h[i], fh[i], i1, None, pidx, "horizontal");
                            }
                        }
                        for i in 0..3 {
                            t.update_pre(&v[i], f[i], i1, None, pidx, "vertical factor 1");
                        }
                    }
                }
                seeds.push(seed_both);
            }

            {
                // Mixed obstruction for m=3,4: first witness per σ₁.
                let tangent = first_tangent(&sig1c);
                let vb = Bivector::from_summand(&tangent, o1);
                let kv = endo_of(&vb);
                let x = basis_vec::<S>(0);
                let work = mat4_vec(&jm, &mat4_vec(&kv, &x));
                let fwork: [f64; 4] = std::array::from_fn(|i| {
                    if work[i].is_zero() {
                        0.0
                    } else {
                        2.0 * work[i].to_f64().abs()
                    }
                });
                let doubled: [S; 4] =
                    std::array::from_fn(|i| S::from_ratio(2, 1) * work[i].clone());
                for m in 3..=4u8 {
                    for o2 in both {
                        let t = &mut trackers[idx_of(m, o1, o2)].2;
                        for i in 0..4 {
                            t.update_pre(&doubled[i], fwork[i], i1, None, 0, "mixed");
                        }
                    }
                }
            }

            for o2 in both {
                let eps2 = o2.sign_i8();
                let half = if o2 == Summand::Plus { 0 } else { 1 };
                let sphere2 = samples.sphere(o2);
                for (i2, sig2) in sphere2.iter().enumerate() {
                    let sig2c = sig2.summand_coords(o2);
                    let n2 = norm2_3(&sig2c);
                    let bk2 = basis_axis(&sig2c);
                    for (pidx, seed_both) in seeds.iter().enumerate() {
                        let (vminus, vplus) = match bk2 {
                            Some((axis, ng)) => seed_both[half].variants_basis(axis, ng),
                            None => seed_both[half].variants(&sig2c, &n2),
                        };
                        let fminus = abs_f64_3(&vminus);
                        let fplus = abs_f64_3(&vplus);
                        for m in 1..=4u8 {
                            let (_, sg2) = k_m_signs(m);
                            let (v, f) = if sg2 as i64 * eps2 as i64 > 0 {
                                (&vminus, &fminus)
                            } else {
                                (&vplus, &fplus)
                            };
                            let t = &mut trackers[idx_of(m, o1, o2)].2;
                            for i in 0..3 {
                                t.update_pre(
                                    &v[i],
                                    f[i],
                                    i1,
                                    Some(i2),
                                    pidx,
                                    "vertical factor 2",
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    trackers.into_iter().map(|(m, pr, t)| (m, pr, t.outcome(tol))).collect()
}
