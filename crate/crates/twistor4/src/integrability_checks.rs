//! Integrability deciders for the four product-twistor structures, decided
//! three independent ways and cross-audited.
//!
//! For a component pair (o₁,o₂) of 𝒵×𝒵 and structure index m:
//!
//!  * identity route: the curvature identities. Same-summand pairs (o,o)
//!    need 𝒲_o = 0, the scalar identity s = (3/2)‖τ‖² + 3·sgn(o)·δτ, and
//!    dτ vanishing on the three s-basis bivectors of summand o. Cross pairs
//!    (o,−o) need 𝒲_o = 0 and the Ricci identity
//!      ρ = sgn(o)·𝒮(∇τ) − ½τ⊗τ + ⅛(2s + 2·sgn(o)·δτ + ‖τ‖²)g .
//!    Structures m = 3,4 are never integrable: the mixed Nijenhuis term
//!    2·K_{σ₁}K_{V₁}X is nonzero for every fiber point since the K's are
//!    invertible.
//!  * operator-block route: the matching block of the 6×6 matrix of ℛ^D
//!    must vanish, together with the 𝒲 flag; see
//!    `same_summand_block_norm2` and `cross_summand_block_norm2`. For the
//!    same-summand pair the 𝒲 flag is implied by the block (the block is
//!    𝒲_o plus a trace part plus the antisymmetric dτ part, and these
//!    cannot cancel), so conjoining it is redundant but harmless.
//!  * sampled route: the brute-force Nijenhuis oracle of
//!    `twistor_structures`, pointwise over fiber samples and frame pairs.
//!
//! m = 1 and m = 2 lead to the same conditions in every route, which the
//! audit confirms rather than assumes.
//!
//! Scalar and Ricci here are the sphere-positive convention throughout;
//! residuals are reported divided by (1 + ‖ℛ^∇‖_F) so one tolerance is
//! meaningful across geometries of different curvature scale.

use crate::bivector_algebra::{Bivector, Summand};
use crate::curvature_analysis::{decompose, CurvatureDecomposition};
use crate::invariant_geometry::{two_form_on_bivector, GeometryAnalysis, PointCurvature};
use crate::linalg::{mat6_frob2, Mat6, Vec4};
use crate::scalar::Scalar;
use crate::twistor_structures::{
    brute_force_check_all, mixed_nijenhuis, FiberSamples, ProductFiberPoint, TwistorPoint,
    VerticalVector,
};

/// Frobenius norm squared of the diagonal block g(ℛ^D(sᵢ^o), sⱼ^o).
pub fn same_summand_block_norm2<S: Scalar>(op: &Mat6<S>, summand: Summand) -> S {
    let off = match summand {
        Summand::Plus => 0,
        Summand::Minus => 3,
    };
    let mut acc = S::zero();
    for i in 0..3 {
        for j in 0..3 {
            let v = op[off + i][off + j].clone();
            acc += v.clone() * v;
        }
    }
    acc
}

/// Frobenius norm squared of the block g(ℛ^D(sⱼ^{from}), sᵢ^{to}), the
/// obstruction block for the (from, to) component pair.
pub fn cross_summand_block_norm2<S: Scalar>(op: &Mat6<S>, from: Summand, to: Summand) -> S {
    assert_ne!(from, to, "cross block needs distinct summands");
    let col = match from {
        Summand::Plus => 0,
        Summand::Minus => 3,
    };
    let row = match to {
        Summand::Plus => 0,
        Summand::Minus => 3,
    };
    let mut acc = S::zero();
    for i in 0..3 {
        for j in 0..3 {
            let v = op[row + i][col + j].clone();
            acc += v.clone() * v;
        }
    }
    acc
}

/// Per-check residuals and flags. Residuals are normalized Frobenius norms
/// (f64); a condition absent from the pair's route is None.
#[derive(Debug, Clone)]
pub struct CheckBreakdown {
    /// 𝒲 block of the first component's summand vanishes.
    pub weyl_flag: bool,
    pub weyl_residual: f64,
    pub conf_residual: Option<f64>,
    pub dtau_residual: Option<f64>,
    pub ricci_residual: Option<f64>,
    /// Norm of the matching ℛ^D block (m ≤ 2), or of the mixed-term
    /// witness vector (m ≥ 3).
    pub block_residual: f64,
    /// Verdict of the operator-block route alone; the audit compares this
    /// against the identity-route verdict and the sampled oracle.
    pub block_flag: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub m: u8,
    pub pair: (Summand, Summand),
    /// Conjunction of the identity-route condition flags.
    pub verdict: bool,
    pub breakdown: CheckBreakdown,
}

/// All sixteen (m, pair) records for one geometry.
#[derive(Debug, Clone)]
pub struct IntegrabilityReport {
    pub records: Vec<CheckRecord>,
    pub tol: f64,
    pub backend: &'static str,
}

fn scale_of<S: Scalar>(pc: &PointCurvature<S>) -> f64 {
    1.0 + mat6_frob2(&pc.rnabla_op).to_f64().sqrt()
}

fn norm2_ok<S: Scalar>(n2: &S, scale: f64, tol: f64) -> bool {
    if S::exact() {
        n2.is_zero()
    } else {
        n2.to_f64().sqrt() / scale <= tol
    }
}

fn signed_ok<S: Scalar>(v: &S, scale: f64, tol: f64) -> bool {
    if S::exact() {
        v.is_zero()
    } else {
        v.to_f64().abs() / scale <= tol
    }
}

fn decomposition_of<S: Scalar>(pc: &PointCurvature<S>, tol: f64) -> CurvatureDecomposition<S> {
    decompose(&pc.rnabla_op, &pc.ricci_std, &pc.scalar_std, tol)
        .expect("Levi-Civita curvature operator must decompose")
}

/// Integrability of the fiberwise structure on the single twistor space of
/// one summand: true iff the matching 𝒲 block vanishes. Independent of τ.
pub fn check_single_twistor<S: Scalar>(
    pc: &PointCurvature<S>,
    summand: Summand,
    tol: f64,
) -> bool {
    let dec = decomposition_of(pc, tol);
    norm2_ok(&dec.weyl_norm2(summand), scale_of(pc), tol)
}

fn sgn_scalar<S: Scalar>(o: Summand) -> S {
    match o {
        Summand::Plus => S::one(),
        Summand::Minus => S::zero() - S::one(),
    }
}

/// Identity-route decision for a same-summand pair (o, o), m ∈ {1, 2}.
pub fn check_same_pair<S: Scalar>(
    pc: &PointCurvature<S>,
    m: u8,
    o: Summand,
    tol: f64,
) -> CheckRecord {
    assert!(m == 1 || m == 2, "same-pair identities apply to m in {{1,2}}");
    let scale = scale_of(pc);
    let dec = decomposition_of(pc, tol);
    let weyl_n2 = dec.weyl_norm2(o);
    let weyl_flag = norm2_ok(&weyl_n2, scale, tol);

    let p = pc;
    let sgn: S = sgn_scalar(o);
    let conf = p.scalar_std.clone()
        - S::from_ratio(3, 2) * p.tau_norm2.clone()
        - S::from_ratio(3, 1) * sgn.clone() * p.delta_tau.clone();
    let conf_flag = signed_ok(&conf, scale, tol);

    let off = match o {
        Summand::Plus => 0,
        Summand::Minus => 3,
    };
    let mut dtau_n2 = S::zero();
    for i in 0..3 {
        let v = two_form_on_bivector(&p.dtau, &Bivector::s_unit(off + i));
        dtau_n2 += v.clone() * v;
    }
    let dtau_flag = norm2_ok(&dtau_n2, scale, tol);

    let block_n2 = same_summand_block_norm2(&p.rd_op, o);
    let block_flag = weyl_flag && norm2_ok(&block_n2, scale, tol);

    CheckRecord {
        m,
        pair: (o, o),
        verdict: weyl_flag && conf_flag && dtau_flag,
        breakdown: CheckBreakdown {
            weyl_flag,
            weyl_residual: weyl_n2.to_f64().sqrt() / scale,
            conf_residual: Some(conf.to_f64().abs() / scale),
            dtau_residual: Some(dtau_n2.to_f64().sqrt() / scale),
            ricci_residual: None,
            block_residual: block_n2.to_f64().sqrt() / scale,
            block_flag,
            witness: None,
        },
    }
}

/// Residual matrix of the cross-pair Ricci identity, frame components.
fn ricci_identity_residual<S: Scalar>(pc: &PointCurvature<S>, o: Summand) -> [[S; 4]; 4] {
    let p = pc;
    let sgn: S = sgn_scalar(o);
    let half = S::from_ratio(1, 2);
    let trace_coeff = S::from_ratio(1, 8)
        * (S::from_ratio(2, 1) * p.scalar_std.clone()
            + S::from_ratio(2, 1) * sgn.clone() * p.delta_tau.clone()
            + p.tau_norm2.clone());
    std::array::from_fn(|x| {
        std::array::from_fn(|y| {
            let sym = half.clone()
                * (p.nabla_tau[x][y].clone() + p.nabla_tau[y][x].clone());
            let mut rhs = sgn.clone() * sym
                - half.clone() * p.tau_frame[x].clone() * p.tau_frame[y].clone();
            if x == y {
                rhs += trace_coeff.clone();
            }
            p.ricci_std[x][y].clone() - rhs
        })
    })
}

/// Identity-route decision for a cross pair (o, −o), m ∈ {1, 2}.
pub fn check_cross_pair<S: Scalar>(
    pc: &PointCurvature<S>,
    m: u8,
    o: Summand,
    tol: f64,
) -> CheckRecord {
    assert!(m == 1 || m == 2, "cross-pair identities apply to m in {{1,2}}");
    let scale = scale_of(pc);
    let dec = decomposition_of(pc, tol);
    let weyl_n2 = dec.weyl_norm2(o);
    let weyl_flag = norm2_ok(&weyl_n2, scale, tol);

    let res = ricci_identity_residual(pc, o);
    let mut ricci_n2 = S::zero();
    for row in &res {
        for v in row {
            ricci_n2 += v.clone() * v.clone();
        }
    }
    let ricci_flag = norm2_ok(&ricci_n2, scale, tol);

    let block_n2 = cross_summand_block_norm2(&pc.rd_op, o, o.opposite());
    let block_flag = weyl_flag && norm2_ok(&block_n2, scale, tol);

    CheckRecord {
        m,
        pair: (o, o.opposite()),
        verdict: weyl_flag && ricci_flag,
        breakdown: CheckBreakdown {
            weyl_flag,
            weyl_residual: weyl_n2.to_f64().sqrt() / scale,
            conf_residual: None,
            dtau_residual: None,
            ricci_residual: Some(ricci_n2.to_f64().sqrt() / scale),
            block_residual: block_n2.to_f64().sqrt() / scale,
            block_flag,
            witness: None,
        },
    }
}

/// m ∈ {3, 4}: never integrable. The record carries the nonzero mixed-term
/// witness 2·K_{σ₁}K_{V₁}X evaluated at σ = s₁ of each component's summand,
/// V₁ = s₂ of the first, X = F₁.
pub fn check_m34<S: Scalar>(
    pc: &PointCurvature<S>,
    m: u8,
    pair: (Summand, Summand),
    tol: f64,
) -> CheckRecord {
    assert!(m == 3 || m == 4, "mixed-term obstruction applies to m in {{3,4}}");
    let scale = scale_of(pc);
    let dec = decomposition_of(pc, tol);
    let weyl_n2 = dec.weyl_norm2(pair.0);

    let (o1, o2) = pair;
    let off = |o: Summand| if o == Summand::Plus { 0 } else { 3 };
    let j = ProductFiberPoint {
        j1: TwistorPoint::new(Bivector::s_unit(off(o1)), o1).expect("s-basis point"),
        j2: TwistorPoint::new(Bivector::s_unit(off(o2)), o2).expect("s-basis point"),
    };
    let v = VerticalVector::new(
        &j,
        Bivector::s_unit(off(o1) + 1),
        Bivector::s_unit(off(o2) + 1),
    )
    .expect("s₂ is vertical at s₁");
    let x: Vec4<S> = std::array::from_fn(|i| if i == 0 { S::one() } else { S::zero() });
    let mixed = mixed_nijenhuis(m, &j, &v, &x).expect("vertical inputs");
    let mut witness_n2 = S::zero();
    for c in &mixed {
        witness_n2 += c.clone() * c.clone();
    }
    let comps: Vec<String> = mixed.iter().map(|c| format!("{}", c.to_f64())).collect();

    CheckRecord {
        m,
        pair,
        verdict: false,
        breakdown: CheckBreakdown {
            weyl_flag: norm2_ok(&weyl_n2, scale, tol),
            weyl_residual: weyl_n2.to_f64().sqrt() / scale,
            conf_residual: None,
            dtau_residual: None,
            ricci_residual: None,
            block_residual: witness_n2.to_f64().sqrt() / scale,
            block_flag: norm2_ok(&witness_n2, scale, tol),
            witness: Some(format!(
                "mixed term 2 K_sigma1 K_V1 X = [{}] at sigma1 = s1, V1 = s2, X = F1",
                comps.join(", ")
            )),
        },
    }
}

/// Dispatch on m and the component pair.
pub fn check_pair<S: Scalar>(
    pc: &PointCurvature<S>,
    m: u8,
    pair: (Summand, Summand),
    tol: f64,
) -> CheckRecord {
    match m {
        1 | 2 => {
            if pair.0 == pair.1 {
                check_same_pair(pc, m, pair.0, tol)
            } else {
                check_cross_pair(pc, m, pair.0, tol)
            }
        }
        3 | 4 => check_m34(pc, m, pair, tol),
        _ => panic!("structure index must be 1..=4"),
    }
}

pub const COMPONENT_PAIRS: [(Summand, Summand); 4] = [
    (Summand::Plus, Summand::Plus),
    (Summand::Plus, Summand::Minus),
    (Summand::Minus, Summand::Plus),
    (Summand::Minus, Summand::Minus),
];

pub fn integrability_report<S: Scalar>(pc: &PointCurvature<S>, tol: f64) -> IntegrabilityReport {
    let mut records = Vec::with_capacity(16);
    for m in 1..=4u8 {
        for pair in COMPONENT_PAIRS {
            records.push(check_pair(pc, m, pair, tol));
        }
    }
    IntegrabilityReport {
        records,
        tol,
        backend: if S::exact() { "exact" } else { "float" },
    }
}

/// One row of the three-way audit.
#[derive(Debug, Clone)]
pub struct AuditRow {
    pub m: u8,
    pub pair: (Summand, Summand),
    pub identities: bool,
    pub blocks: bool,
    pub sampled: bool,
    pub sampled_residual: f64,
    pub agree: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone)]
pub struct AuditTable {
    pub rows: Vec<AuditRow>,
    pub all_agree: bool,
}

/// Decide every (m, pair) three ways and compare. Any disagreement carries
/// the witnessing fiber point and frame pair from the sampled route.
pub fn audit_equivalence<S: Scalar>(
    a: &GeometryAnalysis<S>,
    samples: &FiberSamples<S>,
    tol: f64,
) -> AuditTable {
    let sweep = brute_force_check_all(a, samples, tol);
    let mut rows = Vec::with_capacity(16);
    let mut all_agree = true;
    for m in 1..=4u8 {
        for pair in COMPONENT_PAIRS {
            let rec = check_pair(&a.point, m, pair, tol);
            let outcome = &sweep
                .iter()
                .find(|(mm, pp, _)| *mm == m && *pp == pair)
                .expect("sweep covers all sixteen cases")
                .2;
            let agree = rec.verdict == rec.breakdown.block_flag
                && rec.breakdown.block_flag == outcome.ok;
            all_agree &= agree;
            let witness = outcome
                .witness
                .clone()
                .or_else(|| rec.breakdown.witness.clone());
            rows.push(AuditRow {
                m,
                pair,
                identities: rec.verdict,
                blocks: rec.breakdown.block_flag,
                sampled: outcome.ok,
                sampled_residual: outcome.max_residual,
                agree,
                witness,
            });
        }
    }
    AuditTable { rows, all_agree }
}
