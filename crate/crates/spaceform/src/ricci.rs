//! Ricci tensors and scalar curvatures per connection: direct frame
//! contraction (the ground truth), the printed closed forms evaluated
//! verbatim, and the re-derived closed forms that must match the direct
//! values. Also the minimality-theorem and equality checkers.
//!
//! Contraction convention: S(X,Y) = sum_i R(E_i, X, Y, E_i) over the tangent
//! frame, the one reproducing the printed g(TX,TY) blocks. The deformed
//! curvatures lack pair symmetry, so the alternative last-slot-first
//! convention is available behind `ContractionConvention` for sensitivity
//! analysis; the two differ only for the semisymmetric non-metric kind.
//!
//! The derived coefficient tables come from an independent symbolic frame
//! contraction of the closed-form curvatures through the Gauss equation and
//! are frozen here as constants. The deformed shape operators A~_k are
//! non-symmetric for the Schouten-van Kampen and Tanaka-Webster kinds, which
//! is why the quadratic blocks read g(A~_k^2 X, Y) and tr(A~_k^2) instead of
//! their symmetric spellings.

use serde::Serialize;

use crate::connection::ConnectionKind;
use crate::contact::{sasakian_params, SpaceFormParams};
use crate::error::{Error, Result};
use crate::frame::{Matrix, Sampler, Vector};
use crate::submanifold::{DistributionSplit, SffClass, Submanifold};

/// Which reading of a closed form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormVariant {
    AsPrinted,
    OracleDerived,
}

/// Which closed form family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RicciForm {
    General,
    Asi,
    Sasakian(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ContractionConvention {
    #[default]
    FirstLast,
    LastFirst,
}

/// Citation keys of the printed formulas adjudicated by this module.
pub fn ricci_citation(kind: ConnectionKind, form: &RicciForm) -> &'static str {
    match (kind, form) {
        (ConnectionKind::LeviCivita, _) => "ambient contraction",
        (ConnectionKind::SemisymmetricMetric, RicciForm::General) => "Eq (3.1)",
        (ConnectionKind::SemisymmetricMetric, RicciForm::Asi) => "Eq (3.2)",
        (ConnectionKind::SemisymmetricMetric, RicciForm::Sasakian(_)) => "Eq (3.3)",
        (ConnectionKind::SemisymmetricNonMetric, RicciForm::General) => "Eq (4.1)",
        (ConnectionKind::SemisymmetricNonMetric, RicciForm::Asi) => "Eq (4.2)",
        (ConnectionKind::SemisymmetricNonMetric, RicciForm::Sasakian(_)) => "Eq (4.3)",
        (ConnectionKind::SchoutenVanKampen, RicciForm::General) => "Eq (5.1)",
        (ConnectionKind::SchoutenVanKampen, RicciForm::Asi) => "Eq (5.2)",
        (ConnectionKind::SchoutenVanKampen, RicciForm::Sasakian(_)) => "Eq (5.3)",
        (ConnectionKind::TanakaWebster, RicciForm::General) => "Eq (6.1)",
        (ConnectionKind::TanakaWebster, RicciForm::Asi) => "Eq (6.2)",
        (ConnectionKind::TanakaWebster, RicciForm::Sasakian(_)) => "Eq (6.3)",
    }
}

pub fn scalar_citation(kind: ConnectionKind) -> &'static str {
    match kind {
        ConnectionKind::LeviCivita => "ambient contraction",
        ConnectionKind::SemisymmetricMetric => "Eq (3.4)",
        ConnectionKind::SemisymmetricNonMetric => "Eq (4.4)",
        ConnectionKind::SchoutenVanKampen => "Eq (5.4)",
        ConnectionKind::TanakaWebster => "Eq (6.4)",
    }
}

pub fn theorem_citation(kind: ConnectionKind) -> &'static str {
    match kind {
        ConnectionKind::LeviCivita => "ambient minimality relations",
        ConnectionKind::SemisymmetricMetric => "Theorem 3.1",
        ConnectionKind::SemisymmetricNonMetric => "Theorem 4.1",
        ConnectionKind::SchoutenVanKampen => "Theorem 5.1",
        ConnectionKind::TanakaWebster => "Theorem 6.1",
    }
}

/// Direct frame contraction of the Gauss-equation induced curvature; the
/// ground truth every closed form is judged against.
pub fn ricci_direct(
    sub: &Submanifold,
    kind: ConnectionKind,
    params: &SpaceFormParams,
    x: &Vector,
    y: &Vector,
) -> Result<f64> {
    ricci_direct_with(sub, kind, params, x, y, ContractionConvention::FirstLast)
}

pub fn ricci_direct_with(
    sub: &Submanifold,
    kind: ConnectionKind,
    params: &SpaceFormParams,
    x: &Vector,
    y: &Vector,
    convention: ContractionConvention,
) -> Result<f64> {
    sub.ensure_tangent(x)?;
    sub.ensure_tangent(y)?;
    let mut s = 0.0;
    for e in &sub.tangent_frame {
        s += match convention {
            ContractionConvention::FirstLast => sub.induced_curvature(kind, params, e, x, y, e)?,
            ContractionConvention::LastFirst => sub.induced_curvature(kind, params, x, e, e, y)?,
        };
    }
    Ok(s)
}

/// The normalized double contraction (1/(m(m+1))) sum_{i,j} R(E_i,E_j,E_j,E_i).
pub fn scalar_direct(sub: &Submanifold, kind: ConnectionKind, params: &SpaceFormParams) -> f64 {
    let m = sub.m() as f64;
    let mut s = 0.0;
    for ei in &sub.tangent_frame {
        for ej in &sub.tangent_frame {
            s += sub
                .induced_curvature(kind, params, ei, ej, ej, ei)
                .expect("frame vectors are tangent");
        }
    }
    s / (m * (m + 1.0))
}

/// Deformed shape operators for every normal direction, in frame coordinates.
pub fn deformed_shape_operators(
    sub: &Submanifold,
    kind: ConnectionKind,
    params: &SpaceFormParams,
) -> Vec<Matrix> {
    (0..sub.normal_count())
        .map(|k| {
            sub.deformed_shape_operator(kind, params, k)
                .expect("index in range")
        })
        .collect()
}

/// Trace block of a Ricci closed form at (X, Y), in frame coordinates.
///
/// as printed:      sum_k (m+1)(tr A~_k) g(A~_k X, Y)
/// oracle derived:  sum_k (tr A~_k) g(A~_k X, Y)
pub(crate) fn ricci_h_trace(
    operators: &[Matrix],
    m: usize,
    cx: &Vector,
    cy: &Vector,
    variant: FormVariant,
) -> f64 {
    let factor = match variant {
        FormVariant::AsPrinted => m as f64 + 1.0,
        FormVariant::OracleDerived => 1.0,
    };
    operators
        .iter()
        .map(|a| factor * a.trace() * (a * cx).dot(cy))
        .sum()
}

/// Quadratic shape block of a Ricci closed form (with its minus sign).
///
/// as printed:      - sum_k g(A~_k X, A~_k Y)
/// oracle derived:  - sum_k g(A~_k^2 X, Y)
pub(crate) fn ricci_h_quadratic(
    operators: &[Matrix],
    cx: &Vector,
    cy: &Vector,
    variant: FormVariant,
) -> f64 {
    let mut total = 0.0;
    for a in operators {
        let acx = a * cx;
        total -= match variant {
            FormVariant::AsPrinted => acx.dot(&(a * cy)),
            FormVariant::OracleDerived => (a * acx).dot(cy),
        };
    }
    total
}

fn ricci_h_block(
    operators: &[Matrix],
    m: usize,
    cx: &Vector,
    cy: &Vector,
    variant: FormVariant,
) -> f64 {
    ricci_h_trace(operators, m, cx, cy, variant) + ricci_h_quadratic(operators, cx, cy, variant)
}

/// Scalar-curvature shape blocks.
///
/// as printed:      (m+1)^2 |H~|^2 - |h~|^2  = sum_k [(tr A~_k)^2 - tr(A~_k^T A~_k)]
/// oracle derived:  sum_k [(tr A~_k)^2 - tr(A~_k^2)]
pub(crate) fn scalar_h_block(operators: &[Matrix], variant: FormVariant) -> f64 {
    let mut total = 0.0;
    for a in operators {
        let tr = a.trace();
        total += tr * tr
            - match variant {
                FormVariant::AsPrinted => (a.transpose() * a).trace(),
                FormVariant::OracleDerived => (a * a).trace(),
            };
    }
    total
}

/// Ambient (h-free) coefficients of the general Ricci forms on the block
/// basis {g(X,Y), g(TX,TY), eta(X)eta(Y), g(TX,Y)}.
pub(crate) fn general_coefficients(
    kind: ConnectionKind,
    params: &SpaceFormParams,
    m: f64,
    variant: FormVariant,
) -> [f64; 4] {
    let (f1, f2, f3) = (params.f1, params.f2, params.f3);
    let psi = params.psi();
    match (variant, kind) {
        (_, ConnectionKind::LeviCivita) => [m * f1 - f3, 3.0 * f2, -(m - 1.0) * f3, 0.0],
        (FormVariant::OracleDerived, ConnectionKind::SemisymmetricMetric) => [
            m * (f1 - 1.0) - (f3 - 1.0),
            3.0 * f2,
            -(m - 1.0) * (f3 - 1.0),
            (m - 1.0) * psi,
        ],
        (FormVariant::AsPrinted, ConnectionKind::SemisymmetricMetric) => [
            m * f1 - (f3 - 1.0),
            3.0 * f2,
            -(m - 1.0) * (f3 - 1.0),
            (m - 1.0) * psi,
        ],
        (FormVariant::OracleDerived, ConnectionKind::SemisymmetricNonMetric) => {
            [m * f1 - f3, 3.0 * f2, -(m - 1.0) * f3 + m, m * psi]
        }
        (FormVariant::AsPrinted, ConnectionKind::SemisymmetricNonMetric) => [
            m * f1 - (f3 - 1.0),
            3.0 * f2,
            -(m - 1.0) * (f3 - 1.0) - m,
            psi,
        ],
        (_, ConnectionKind::SchoutenVanKampen) => {
            let c = f3 + psi * psi;
            [m * f1 - c, 3.0 * f2 + psi * psi, -(m - 1.0) * c, 0.0]
        }
        (_, ConnectionKind::TanakaWebster) => {
            let c = f3 + psi * psi;
            [
                m * f1 - c,
                3.0 * f2 + 2.0 * psi + psi * psi,
                -(m - 1.0) * c,
                0.0,
            ]
        }
    }
}

/// Per-cluster coefficient of g(U^l X, U^l Y) plus the eta and g(TX,Y)
/// coefficients of the almost semi-invariant Ricci forms.
pub(crate) fn asi_coefficients(
    kind: ConnectionKind,
    params: &SpaceFormParams,
    m: f64,
    lambda2: f64,
    variant: FormVariant,
) -> f64 {
    let (f1, f2, f3) = (params.f1, params.f2, params.f3);
    let psi = params.psi();
    match (variant, kind) {
        (_, ConnectionKind::LeviCivita) => m * f1 + 3.0 * f2 * lambda2 - f3,
        (FormVariant::OracleDerived, ConnectionKind::SemisymmetricMetric) => {
            m * (f1 - 1.0) + 3.0 * f2 * lambda2 - f3 + 1.0
        }
        (FormVariant::AsPrinted, ConnectionKind::SemisymmetricMetric) => {
            m * f1 + 3.0 * f2 * lambda2 - f3 + 1.0
        }
        (FormVariant::OracleDerived, ConnectionKind::SemisymmetricNonMetric) => {
            m * f1 + 3.0 * f2 * lambda2 - f3
        }
        (FormVariant::AsPrinted, ConnectionKind::SemisymmetricNonMetric) => {
            m * f1 + 3.0 * f2 * lambda2 - f3 + 1.0
        }
        (_, ConnectionKind::SchoutenVanKampen) => {
            m * f1 + 3.0 * f2 * lambda2 - f3 + psi * psi * (lambda2 - 1.0)
        }
        (_, ConnectionKind::TanakaWebster) => {
            m * f1 + (3.0 * f2 + 2.0 * psi) * lambda2 - f3 + psi * psi * (lambda2 - 1.0)
        }
    }
}

pub(crate) fn asi_eta_t_coefficients(
    kind: ConnectionKind,
    params: &SpaceFormParams,
    m: f64,
    variant: FormVariant,
) -> (f64, f64) {
    let psi = params.psi();
    match (variant, kind) {
        (_, ConnectionKind::LeviCivita) => (m * psi, 0.0),
        (FormVariant::OracleDerived, ConnectionKind::SemisymmetricMetric) => {
            (m * psi, (m - 1.0) * psi)
        }
        (FormVariant::AsPrinted, ConnectionKind::SemisymmetricMetric) => {
            (m * (psi + 1.0), (m - 1.0) * psi)
        }
        (FormVariant::OracleDerived, ConnectionKind::SemisymmetricNonMetric) => {
            (m * (psi + 1.0), m * psi)
        }
        (FormVariant::AsPrinted, ConnectionKind::SemisymmetricNonMetric) => (m * psi, psi),
        (_, ConnectionKind::SchoutenVanKampen) | (_, ConnectionKind::TanakaWebster) => {
            (m * (psi - psi * psi), 0.0)
        }
    }
}

/// Printed Sasakian corollary coefficients: per-cluster coefficient of
/// g(U^l X, U^l Y) and the eta and g(TX,Y) coefficients. The corollaries
/// omit the eta term for the semisymmetric kinds and print a spurious
/// 2m eta(X)eta(Y) for the other two.
pub(crate) fn sasakian_printed_coefficients(
    kind: ConnectionKind,
    c: f64,
    m: f64,
    lambda2: f64,
) -> Option<(f64, f64, f64)> {
    let base = (m - 1.0 + 3.0 * lambda2) * c;
    match kind {
        ConnectionKind::LeviCivita => None,
        ConnectionKind::SemisymmetricMetric => {
            Some(((base + 3.0 * (m - lambda2) + 5.0) / 4.0, 0.0, m - 1.0))
        }
        ConnectionKind::SemisymmetricNonMetric => {
            Some(((base + 3.0 * (m - lambda2) + 5.0) / 4.0, 0.0, 1.0))
        }
        ConnectionKind::SchoutenVanKampen => {
            Some(((base + 3.0 * (m - 1.0) + lambda2) / 4.0, 2.0 * m, 0.0))
        }
        ConnectionKind::TanakaWebster => {
            Some(((base + 3.0 * (m - 1.0 + 3.0 * lambda2)) / 4.0, 2.0 * m, 0.0))
        }
    }
}

/// Evaluation context shared by the closed forms: block quantities at (X, Y).
pub(crate) struct Blocks {
    pub(crate) g_xy: f64,
    pub(crate) theta: f64,
    pub(crate) eta_xy: f64,
    pub(crate) t_xy: f64,
    pub(crate) cluster_u: Vec<(f64, f64)>, // (lambda^2, g(U^l X, U^l Y))
    pub(crate) cx: Vector,
    pub(crate) cy: Vector,
}

pub(crate) fn blocks(
    sub: &Submanifold,
    split: Option<&DistributionSplit>,
    x: &Vector,
    y: &Vector,
) -> Blocks {
    let g = &sub.acs.g;
    let tx = sub.t_apply(x);
    let ty = sub.t_apply(y);
    let cluster_u = split
        .map(|s| {
            s.clusters
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    (
                        c.lambda * c.lambda,
                        g.inner(&s.project(i, g, x), &s.project(i, g, y)),
                    )
                })
                .collect()
        })
        .unwrap_or_default();
    Blocks {
        g_xy: g.inner(x, y),
        theta: g.inner(&tx, &ty),
        eta_xy: sub.acs.eta(x) * sub.acs.eta(y),
        t_xy: g.inner(&tx, y),
        cluster_u,
        cx: Vector::from_vec(sub.tangent_coords(x)),
        cy: Vector::from_vec(sub.tangent_coords(y)),
    }
}

/// Ambient (h-free) part of a Ricci closed form.
fn ricci_ambient(
    kind: ConnectionKind,
    params: &SpaceFormParams,
    m: f64,
    form: &RicciForm,
    variant: FormVariant,
    b: &Blocks,
) -> f64 {
    match (form, variant) {
        (RicciForm::General, _) => {
            let [cg, ct, ce, ctt] = general_coefficients(kind, params, m, variant);
            cg * b.g_xy + ct * b.theta + ce * b.eta_xy + ctt * b.t_xy
        }
        (RicciForm::Asi, _) => {
            let mut s = 0.0;
            for &(l2, u) in &b.cluster_u {
                s += asi_coefficients(kind, params, m, l2, variant) * u;
            }
            let (ce, ct) = asi_eta_t_coefficients(kind, params, m, variant);
            s + ce * b.eta_xy + ct * b.t_xy
        }
        (RicciForm::Sasakian(c), FormVariant::AsPrinted) => {
            match sasakian_printed_coefficients(kind, *c, m, 0.0) {
                None => {
                    // no printed corollary for this kind: fall back to the
                    // derived reading
                    ricci_ambient(
                        kind,
                        params,
                        m,
                        &RicciForm::Asi,
                        FormVariant::OracleDerived,
                        b,
                    )
                }
                Some(_) => {
                    let mut s = 0.0;
                    for &(l2, u) in &b.cluster_u {
                        let (coef, _, _) = sasakian_printed_coefficients(kind, *c, m, l2)
                            .expect("printed form exists");
                        s += coef * u;
                    }
                    let (_, ce, ct) = sasakian_printed_coefficients(kind, *c, m, 0.0)
                        .expect("printed form exists");
                    s + ce * b.eta_xy + ct * b.t_xy
                }
            }
        }
        (RicciForm::Sasakian(_), FormVariant::OracleDerived) => {
            ricci_ambient(kind, params, m, &RicciForm::Asi, variant, b)
        }
    }
}

/// A Ricci closed form evaluated at (X, Y).
///
/// `AsPrinted` follows the typeset lemma or corollary verbatim, including the
/// (m+1) trace factor; `OracleDerived` evaluates the re-derived form, which
/// matches `ricci_direct`. The ambient kind has no printed lemma, so its two
/// variants coincide. The asi and Sasakian families need the distribution
/// split; the Sasakian family additionally requires params to be the
/// Sasakian substitution of its parameter c.
#[allow(clippy::too_many_arguments)]
pub fn ricci_closed(
    sub: &Submanifold,
    kind: ConnectionKind,
    params: &SpaceFormParams,
    x: &Vector,
    y: &Vector,
    form: &RicciForm,
    variant: FormVariant,
    split: Option<&DistributionSplit>,
) -> Result<f64> {
    sub.ensure_tangent(x)?;
    sub.ensure_tangent(y)?;
    let variant = if kind == ConnectionKind::LeviCivita {
        FormVariant::OracleDerived
    } else {
        variant
    };
    if matches!(form, RicciForm::Asi | RicciForm::Sasakian(_)) && split.is_none() {
        return Err(Error::MissingSplit);
    }
    if let RicciForm::Sasakian(c) = form {
        let want = sasakian_params(*c);
        if (params.f1 - want.f1).abs() > 1e-12
            || (params.f2 - want.f2).abs() > 1e-12
            || (params.f3 - want.f3).abs() > 1e-12
        {
            return Err(Error::InvalidConfig(
                "sasakian form requires params = sasakian_params(c)".into(),
            ));
        }
    }
    let m = sub.m() as f64;
    let b = blocks(sub, split, x, y);
    let ambient = ricci_ambient(kind, params, m, form, variant, &b);
    let operators = deformed_shape_operators(sub, kind, params);
    Ok(ambient + ricci_h_block(&operators, sub.m(), &b.cx, &b.cy, variant))
}

/// Leading constant of the scalar closed form (the lone f1 term; the
/// re-derived semisymmetric-metric version carries f1 - 1 instead).
pub(crate) fn scalar_base(
    kind: ConnectionKind,
    params: &SpaceFormParams,
    variant: FormVariant,
) -> f64 {
    match (variant, kind) {
        (FormVariant::OracleDerived, ConnectionKind::SemisymmetricMetric) => params.f1 - 1.0,
        _ => params.f1,
    }
}

/// The f-dependent bracket that sits under the 1/(m(m+1)) normalization,
/// with Q = sum_lambda n(lambda) lambda^2. Identical between variants: the
/// printed brackets contract correctly.
pub(crate) fn scalar_inner(kind: ConnectionKind, params: &SpaceFormParams, m: f64, q: f64) -> f64 {
    let (f2, f3) = (params.f2, params.f3);
    let psi = params.psi();
    match kind {
        ConnectionKind::LeviCivita => 3.0 * f2 * q - 2.0 * m * f3,
        ConnectionKind::SemisymmetricMetric => 3.0 * f2 * q - 2.0 * m * (f3 - 1.0),
        ConnectionKind::SemisymmetricNonMetric => 3.0 * f2 * q - 2.0 * m * f3 + m,
        ConnectionKind::SchoutenVanKampen => {
            (3.0 * f2 + psi * psi) * q - 2.0 * m * (f3 + psi * psi)
        }
        ConnectionKind::TanakaWebster => {
            (3.0 * f2 + 2.0 * psi + psi * psi) * q - 2.0 * m * (f3 + psi * psi)
        }
    }
}

/// Ambient (h-free) part of the scalar closed form: the f1 term plus the
/// normalized inner bracket.
fn scalar_ambient(
    kind: ConnectionKind,
    params: &SpaceFormParams,
    m: f64,
    q: f64,
    variant: FormVariant,
) -> f64 {
    scalar_base(kind, params, variant) + scalar_inner(kind, params, m, q) / (m * (m + 1.0))
}

/// Whether the printed scalar formula places its shape blocks outside the
/// 1/(m(m+1)) normalization (the first two kinds do, the last two do not).
pub(crate) fn printed_h_outside(kind: ConnectionKind) -> bool {
    matches!(
        kind,
        ConnectionKind::SemisymmetricMetric | ConnectionKind::SemisymmetricNonMetric
    )
}

/// The scalar closed form. `AsPrinted` follows the typeset bracket placement
/// exactly; `OracleDerived` matches `scalar_direct`. The ambient kind has no
/// printed formula, so its two variants coincide.
pub fn scalar_closed(
    sub: &Submanifold,
    kind: ConnectionKind,
    params: &SpaceFormParams,
    split: &DistributionSplit,
    variant: FormVariant,
) -> f64 {
    let variant = if kind == ConnectionKind::LeviCivita {
        FormVariant::OracleDerived
    } else {
        variant
    };
    let m = sub.m() as f64;
    let q: f64 = split
        .clusters
        .iter()
        .map(|c| c.multiplicity as f64 * c.lambda * c.lambda)
        .sum();
    let ambient = scalar_ambient(kind, params, m, q, variant);
    let operators = deformed_shape_operators(sub, kind, params);
    let hb = scalar_h_block(&operators, variant);
    match variant {
        FormVariant::OracleDerived => ambient + hb / (m * (m + 1.0)),
        FormVariant::AsPrinted => {
            if printed_h_outside(kind) {
                ambient + hb
            } else {
                ambient + hb / (m * (m + 1.0))
            }
        }
    }
}

/// Theorem right side for inequality (i): the asi Ricci form without its
/// shape blocks.
pub fn theorem_ricci_bound(
    sub: &Submanifold,
    kind: ConnectionKind,
    params: &SpaceFormParams,
    split: &DistributionSplit,
    x: &Vector,
    variant: FormVariant,
) -> f64 {
    let b = blocks(sub, Some(split), x, x);
    ricci_ambient(kind, params, sub.m() as f64, &RicciForm::Asi, variant, &b)
}

/// Theorem right side for inequality (ii): the scalar form without its shape
/// blocks.
pub fn theorem_scalar_bound(
    sub: &Submanifold,
    kind: ConnectionKind,
    params: &SpaceFormParams,
    split: &DistributionSplit,
    variant: FormVariant,
) -> f64 {
    let m = sub.m() as f64;
    let q: f64 = split
        .clusters
        .iter()
        .map(|c| c.multiplicity as f64 * c.lambda * c.lambda)
        .sum();
    scalar_ambient(kind, params, m, q, variant)
}

/// Observed behaviour of one inequality over the sampled directions.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityObservation {
    pub checks: usize,
    pub violations: usize,
    pub worst_slack: f64,
    pub witness: Option<TheoremWitness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremWitness {
    pub x: Vec<f64>,
    pub direct: f64,
    pub bound: f64,
    pub slack: f64,
}

/// Per-connection report of the minimality-theorem checks on one minimal
/// submanifold configuration.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub kind: ConnectionKind,
    pub x_trials: usize,
    pub inequality_i_printed: InequalityObservation,
    pub inequality_i_derived: InequalityObservation,
    /// max |measured slack - sum_k g(A~_k X, A~_k^T X)| over the trials
    pub slack_identity_max: f64,
    /// max |sum_k (tr A~_k) g(A~_k X, X)| and |(m+1) g(h~(X,X), H~)|
    pub minimality_identity_max: f64,
    pub inequality_ii_printed: InequalityObservation,
    pub inequality_ii_derived: InequalityObservation,
}

fn observe(
    obs: &mut InequalityObservation,
    slack: f64,
    tol: f64,
    x: &Vector,
    direct: f64,
    bound: f64,
) {
    obs.checks += 1;
    if slack < obs.worst_slack {
        obs.worst_slack = slack;
    }
    if slack < -tol {
        obs.violations += 1;
        if obs.witness.is_none() {
            obs.witness = Some(TheoremWitness {
                x: x.iter().copied().collect(),
                direct,
                bound,
                slack,
            });
        }
    }
}

fn empty_observation() -> InequalityObservation {
    InequalityObservation {
        checks: 0,
        violations: 0,
        worst_slack: f64::INFINITY,
        witness: None,
    }
}

/// Checks inequality (i) against both closed-form variants, verifies the
/// measured slack against the re-derived residual identity
/// sum_k g(A~_k X, A~_k^T X), checks the minimality identity, and checks
/// inequality (ii) against both variants. The submanifold must be minimal
/// for the kind.
pub fn theorem_inequalities(
    sub: &Submanifold,
    kind: ConnectionKind,
    params: &SpaceFormParams,
    split: &DistributionSplit,
    sampler: &mut Sampler,
    x_trials: usize,
    tol: f64,
) -> Result<TheoremReport> {
    match sub.classify_sff(kind, params, 1e-10) {
        SffClass::Minimal | SffClass::TotallyGeodesic => {}
        SffClass::Generic => return Err(Error::NotMinimal),
    }
    let operators = deformed_shape_operators(sub, kind, params);
    let mp1 = sub.m() + 1;
    let mut report = TheoremReport {
        kind,
        x_trials,
        inequality_i_printed: empty_observation(),
        inequality_i_derived: empty_observation(),
        slack_identity_max: 0.0,
        minimality_identity_max: 0.0,
        inequality_ii_printed: empty_observation(),
        inequality_ii_derived: empty_observation(),
    };

    let h_mean = sub.mean_curvature(kind, params);
    for _ in 0..x_trials {
        let x = sub.random_tangent(sampler);
        let direct = ricci_direct(sub, kind, params, &x, &x)?;
        let bound_p = theorem_ricci_bound(sub, kind, params, split, &x, FormVariant::AsPrinted);
        let bound_d = theorem_ricci_bound(sub, kind, params, split, &x, FormVariant::OracleDerived);
        observe(
            &mut report.inequality_i_printed,
            bound_p - direct,
            tol,
            &x,
            direct,
            bound_p,
        );
        observe(
            &mut report.inequality_i_derived,
            bound_d - direct,
            tol,
            &x,
            direct,
            bound_d,
        );

        let cx = Vector::from_vec(sub.tangent_coords(&x));
        let mut predicted = 0.0;
        let mut trace_term = 0.0;
        for a in &operators {
            let acx = a * &cx;
            predicted += (a * &acx).dot(&cx);
            trace_term += a.trace() * acx.dot(&cx);
        }
        report.slack_identity_max = report
            .slack_identity_max
            .max(((bound_d - direct) - predicted).abs());
        let hxx = sub.deformed_sff(kind, params, &x, &x)?;
        let mean_term = (mp1 as f64) * sub.acs.inner(&hxx, &h_mean);
        report.minimality_identity_max = report
            .minimality_identity_max
            .max(trace_term.abs())
            .max(mean_term.abs());
    }

    let tau = scalar_direct(sub, kind, params);
    let sb_p = theorem_scalar_bound(sub, kind, params, split, FormVariant::AsPrinted);
    let sb_d = theorem_scalar_bound(sub, kind, params, split, FormVariant::OracleDerived);
    let zero = Vector::zeros(sub.acs.dim());
    observe(
        &mut report.inequality_ii_printed,
        sb_p - tau,
        tol,
        &zero,
        tau,
        sb_p,
    );
    observe(
        &mut report.inequality_ii_derived,
        sb_d - tau,
        tol,
        &zero,
        tau,
        sb_d,
    );
    Ok(report)
}

/// Equality report for totally geodesic submanifolds: the re-derived bounds
/// must be attained exactly; the printed gaps are recorded, not asserted.
#[derive(Debug, Clone, Serialize)]
pub struct EqualityReport {
    pub kind: ConnectionKind,
    pub max_ricci_gap_derived: f64,
    pub max_scalar_gap_derived: f64,
    pub max_ricci_gap_printed: f64,
    pub max_scalar_gap_printed: f64,
    pub pass: bool,
    pub tol: f64,
}

pub fn equality_check(
    sub: &Submanifold,
    kind: ConnectionKind,
    params: &SpaceFormParams,
    split: &DistributionSplit,
    sampler: &mut Sampler,
    tol: f64,
) -> Result<EqualityReport> {
    if sub.classify_sff(kind, params, 1e-10) != SffClass::TotallyGeodesic {
        return Err(Error::NotTotallyGeodesic);
    }
    let mut xs: Vec<Vector> = sub.tangent_frame.clone();
    for _ in 0..20 {
        xs.push(sub.random_tangent(sampler));
    }
    let mut max_d = 0.0f64;
    let mut max_p = 0.0f64;
    for x in &xs {
        let direct = ricci_direct(sub, kind, params, x, x)?;
        let bd = theorem_ricci_bound(sub, kind, params, split, x, FormVariant::OracleDerived);
        let bp = theorem_ricci_bound(sub, kind, params, split, x, FormVariant::AsPrinted);
        max_d = max_d.max((direct - bd).abs());
        max_p = max_p.max((direct - bp).abs());
    }
    let tau = scalar_direct(sub, kind, params);
    let sd =
        (tau - theorem_scalar_bound(sub, kind, params, split, FormVariant::OracleDerived)).abs();
    let sp = (tau - theorem_scalar_bound(sub, kind, params, split, FormVariant::AsPrinted)).abs();
    Ok(EqualityReport {
        kind,
        max_ricci_gap_derived: max_d,
        max_scalar_gap_derived: sd,
        max_ricci_gap_printed: max_p,
        max_scalar_gap_printed: sp,
        pass: max_d <= tol && sd <= tol,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::canonical_structure;
    use crate::submanifold::random_minimal_sff;

    fn p(f1: f64, f2: f64, f3: f64) -> SpaceFormParams {
        SpaceFormParams::new(f1, f2, f3)
    }

    /// The pinned configuration: n=2, span{e1,e3,xi}, h=0, semisymmetric
    /// metric connection, params (1,0,0).
    fn pinned<'a>(acs: &'a crate::contact::AlmostContactStructure) -> Submanifold<'a> {
        let span = vec![acs.basis_vector(0), acs.basis_vector(2), acs.xi.clone()];
        Submanifold::build(acs, &span, None).unwrap()
    }

    #[test]
    fn pinned_regression_values() {
        let acs = canonical_structure(2).unwrap();
        let sub = pinned(&acs);
        let kind = ConnectionKind::SemisymmetricMetric;
        let params = p(1.0, 0.0, 0.0);
        let e1 = acs.basis_vector(0);
        let xi = acs.xi.clone();
        let split = sub.asi_split(1e-8).unwrap();

        let s11 = ricci_direct(&sub, kind, &params, &e1, &e1).unwrap();
        let sxx = ricci_direct(&sub, kind, &params, &xi, &xi).unwrap();
        assert!((s11 - 1.0).abs() <= 1e-12, "got {s11}");
        assert!((sxx - 2.0).abs() <= 1e-12, "got {sxx}");

        let p11 = ricci_closed(
            &sub,
            kind,
            &params,
            &e1,
            &e1,
            &RicciForm::General,
            FormVariant::AsPrinted,
            None,
        )
        .unwrap();
        let pxx = ricci_closed(
            &sub,
            kind,
            &params,
            &xi,
            &xi,
            &RicciForm::General,
            FormVariant::AsPrinted,
            None,
        )
        .unwrap();
        assert!((p11 - 3.0).abs() <= 1e-12, "got {p11}");
        assert!((pxx - 4.0).abs() <= 1e-12, "got {pxx}");

        let d11 = ricci_closed(
            &sub,
            kind,
            &params,
            &e1,
            &e1,
            &RicciForm::General,
            FormVariant::OracleDerived,
            None,
        )
        .unwrap();
        let dxx = ricci_closed(
            &sub,
            kind,
            &params,
            &xi,
            &xi,
            &RicciForm::General,
            FormVariant::OracleDerived,
            None,
        )
        .unwrap();
        assert!((d11 - 1.0).abs() <= 1e-12 && (dxx - 2.0).abs() <= 1e-12);

        let tau = scalar_direct(&sub, kind, &params);
        assert!((tau - 2.0 / 3.0).abs() <= 1e-12, "got {tau}");
        let tp = scalar_closed(&sub, kind, &params, &split, FormVariant::AsPrinted);
        assert!((tp - 5.0 / 3.0).abs() <= 1e-12, "got {tp}");
        let td = scalar_closed(&sub, kind, &params, &split, FormVariant::OracleDerived);
        assert!((td - tau).abs() <= 1e-12);

        // asi forms at the pinned configuration
        let a11 = ricci_closed(
            &sub,
            kind,
            &params,
            &e1,
            &e1,
            &RicciForm::Asi,
            FormVariant::AsPrinted,
            Some(&split),
        )
        .unwrap();
        assert!((a11 - 3.0).abs() <= 1e-12);
        let ad11 = ricci_closed(
            &sub,
            kind,
            &params,
            &e1,
            &e1,
            &RicciForm::Asi,
            FormVariant::OracleDerived,
            Some(&split),
        )
        .unwrap();
        assert!((ad11 - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn sasakian_corollary_pinned() {
        // c = 1, invariant sub (lambda = 1, m = 2), h = 0: printed coefficient
        // ((m-1+3)c + 3(m-1) + 5)/4 = 3 so S(e1,e1) = 3
        let acs = canonical_structure(2).unwrap();
        let sub = pinned(&acs);
        let split = sub.asi_split(1e-8).unwrap();
        let e1 = acs.basis_vector(0);
        let params = sasakian_params(1.0);
        let v = ricci_closed(
            &sub,
            ConnectionKind::SemisymmetricMetric,
            &params,
            &e1,
            &e1,
            &RicciForm::Sasakian(1.0),
            FormVariant::AsPrinted,
            Some(&split),
        )
        .unwrap();
        assert!((v - 3.0).abs() <= 1e-12, "got {v}");

        // mismatched params are rejected
        assert!(ricci_closed(
            &sub,
            ConnectionKind::SemisymmetricMetric,
            &p(1.0, 1.0, 0.0),
            &e1,
            &e1,
            &RicciForm::Sasakian(1.0),
            FormVariant::AsPrinted,
            Some(&split),
        )
        .is_err());

        // missing split is rejected
        assert!(matches!(
            ricci_closed(
                &sub,
                ConnectionKind::SemisymmetricMetric,
                &params,
                &e1,
                &e1,
                &RicciForm::Asi,
                FormVariant::AsPrinted,
                None,
            ),
            Err(Error::MissingSplit)
        ));
    }

    #[test]
    fn zero_params_zero_sff_gives_zero_ricci() {
        let acs = canonical_structure(2).unwrap();
        let sub = pinned(&acs);
        let params = p(0.0, 0.0, 0.0);
        let mut s = Sampler::new(51);
        for _ in 0..10 {
            let x = sub.random_tangent(&mut s);
            let y = sub.random_tangent(&mut s);
            let v = ricci_direct(&sub, ConnectionKind::LeviCivita, &params, &x, &y).unwrap();
            assert!(v.abs() <= 1e-13);
        }
        assert!(scalar_direct(&sub, ConnectionKind::LeviCivita, &params).abs() <= 1e-14);
    }

    fn random_sub_with_minimal_sff<'a>(
        acs: &'a crate::contact::AlmostContactStructure,
        m: usize,
        s: &mut Sampler,
    ) -> Submanifold<'a> {
        let d = acs.dim();
        loop {
            let mut raw: Vec<Vector> = Vec::new();
            for _ in 0..m {
                let mut v = s.unit_vector(d);
                v[d - 1] = 0.0;
                raw.push(v);
            }
            raw.push(acs.xi.clone());
            if let Ok(sub) = Submanifold::build(acs, &raw, None) {
                if sub.m() == m {
                    let sff = random_minimal_sff(&sub, s);
                    let spanning = sub.tangent_frame.clone();
                    return Submanifold::build(acs, &spanning, Some(sff)).unwrap();
                }
            }
        }
    }

    #[test]
    fn oracle_coherence_random_configs() {
        // the re-derived closed forms must match direct contraction for all
        // five kinds on generic submanifolds with generic symmetric sff
        let acs = canonical_structure(3).unwrap();
        let mut s = Sampler::new(52);
        for kind in ConnectionKind::ALL {
            for trial in 0..25 {
                let m = if trial % 2 == 0 { 2 } else { 4 };
                let sub = random_sub_with_minimal_sff(&acs, m, &mut s);
                // overwrite with a non-minimal generic sff
                let mp1 = sub.m() + 1;
                let nf = sub.normal_count();
                let coeffs = s.symmetric_coeffs(mp1, nf);
                let sff = crate::submanifold::SecondFundamentalForm::from_coeffs(mp1, nf, coeffs)
                    .unwrap();
                let spanning = sub.tangent_frame.clone();
                let sub = Submanifold::build(&acs, &spanning, Some(sff)).unwrap();
                let split = sub.asi_split(1e-8).unwrap();
                let params = p(
                    s.scalar(-2.0, 2.0),
                    s.scalar(-2.0, 2.0),
                    s.scalar(-2.0, 2.0),
                );
                let x = sub.random_tangent(&mut s);
                let y = sub.random_tangent(&mut s);
                let direct = ricci_direct(&sub, kind, &params, &x, &y).unwrap();
                let gen = ricci_closed(
                    &sub,
                    kind,
                    &params,
                    &x,
                    &y,
                    &RicciForm::General,
                    FormVariant::OracleDerived,
                    None,
                )
                .unwrap();
                let asi = ricci_closed(
                    &sub,
                    kind,
                    &params,
                    &x,
                    &y,
                    &RicciForm::Asi,
                    FormVariant::OracleDerived,
                    Some(&split),
                )
                .unwrap();
                assert!(
                    (direct - gen).abs() <= 1e-9,
                    "{kind:?} general: {direct} vs {gen}"
                );
                assert!(
                    (direct - asi).abs() <= 1e-9,
                    "{kind:?} asi: {direct} vs {asi}"
                );
                let tau = scalar_direct(&sub, kind, &params);
                let tc = scalar_closed(&sub, kind, &params, &split, FormVariant::OracleDerived);
                assert!((tau - tc).abs() <= 1e-9, "{kind:?} scalar: {tau} vs {tc}");
                // definition chase: m(m+1) tau = sum_i S(E_i, E_i)
                let mut trace_s = 0.0;
                for e in &sub.tangent_frame {
                    trace_s += ricci_direct(&sub, kind, &params, e, e).unwrap();
                }
                let m = sub.m() as f64;
                assert!((m * (m + 1.0) * tau - trace_s).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn contraction_conventions_differ_only_for_non_metric_kind() {
        let acs = canonical_structure(3).unwrap();
        let mut s = Sampler::new(53);
        let sub = random_sub_with_minimal_sff(&acs, 4, &mut s);
        let params = p(1.3, -0.7, 0.4);
        for kind in ConnectionKind::ALL {
            let mut max_gap = 0.0f64;
            for _ in 0..10 {
                let x = sub.random_tangent(&mut s);
                let y = sub.random_tangent(&mut s);
                let a = ricci_direct_with(
                    &sub,
                    kind,
                    &params,
                    &x,
                    &y,
                    ContractionConvention::FirstLast,
                )
                .unwrap();
                let b = ricci_direct_with(
                    &sub,
                    kind,
                    &params,
                    &x,
                    &y,
                    ContractionConvention::LastFirst,
                )
                .unwrap();
                max_gap = max_gap.max((a - b).abs());
            }
            if kind == ConnectionKind::SemisymmetricNonMetric {
                assert!(
                    max_gap > 1e-3,
                    "expected the conventions to differ for {kind:?}"
                );
            } else {
                assert!(max_gap <= 1e-12, "{kind:?} gap {max_gap}");
            }
        }
    }

    #[test]
    fn minimal_slack_identity() {
        // for minimal subs the slack against the derived bound equals
        // sum_k g(A~_k X, A~_k^T X); for the symmetric kinds this is
        // sum_k |A~_k X|^2 >= 0
        let acs = canonical_structure(3).unwrap();
        let mut s = Sampler::new(54);
        for kind in ConnectionKind::ALL {
            for trial in 0..10 {
                let m = if trial % 2 == 0 { 2 } else { 4 };
                let sub = random_sub_with_minimal_sff(&acs, m, &mut s);
                let split = sub.asi_split(1e-8).unwrap();
                let params = p(
                    s.scalar(-2.0, 2.0),
                    s.scalar(-2.0, 2.0),
                    s.scalar(-2.0, 2.0),
                );
                let report =
                    theorem_inequalities(&sub, kind, &params, &split, &mut s, 10, 1e-10).unwrap();
                assert!(
                    report.slack_identity_max <= 1e-9,
                    "{kind:?}: {}",
                    report.slack_identity_max
                );
                assert!(report.minimality_identity_max <= 1e-12, "{kind:?}");
                if matches!(
                    kind,
                    ConnectionKind::LeviCivita
                        | ConnectionKind::SemisymmetricMetric
                        | ConnectionKind::SemisymmetricNonMetric
                ) {
                    assert_eq!(report.inequality_i_derived.violations, 0, "{kind:?}");
                    assert_eq!(report.inequality_ii_derived.violations, 0, "{kind:?}");
                }
            }
        }
    }

    #[test]
    fn ambient_kind_has_one_reading() {
        // no printed lemma exists for the ambient connection: both variants
        // evaluate the re-derived form and match the direct contraction
        let acs = canonical_structure(3).unwrap();
        let mut s = Sampler::new(63);
        let sub = random_sub_with_minimal_sff(&acs, 2, &mut s);
        let mp1 = sub.m() + 1;
        let nf = sub.normal_count();
        let coeffs = s.symmetric_coeffs(mp1, nf);
        let sff = crate::submanifold::SecondFundamentalForm::from_coeffs(mp1, nf, coeffs).unwrap();
        let spanning = sub.tangent_frame.clone();
        let sub = Submanifold::build(&acs, &spanning, Some(sff)).unwrap();
        let split = sub.asi_split(1e-8).unwrap();
        let params = p(1.1, -0.6, 0.4);
        let x = sub.random_tangent(&mut s);
        let kind = ConnectionKind::LeviCivita;
        let direct = ricci_direct(&sub, kind, &params, &x, &x).unwrap();
        for variant in [FormVariant::AsPrinted, FormVariant::OracleDerived] {
            let v = ricci_closed(
                &sub,
                kind,
                &params,
                &x,
                &x,
                &RicciForm::General,
                variant,
                None,
            )
            .unwrap();
            assert!((v - direct).abs() <= 1e-12);
            let t = scalar_closed(&sub, kind, &params, &split, variant);
            assert!((t - scalar_direct(&sub, kind, &params)).abs() <= 1e-12);
        }
    }

    #[test]
    fn minimal_sff_only_lowers_the_scalar() {
        // for minimal h the shape contribution to the derived scalar form is
        // -|h~|^2 / (m(m+1)) for the symmetric kinds
        let acs = canonical_structure(3).unwrap();
        let mut s = Sampler::new(62);
        let span = vec![acs.basis_vector(0), acs.basis_vector(4), acs.xi.clone()];
        let probe = Submanifold::build(&acs, &span, None).unwrap();
        let sff = random_minimal_sff(&probe, &mut s);
        let mut h_norm_sq = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..probe.normal_count() {
                    h_norm_sq += sff.get(i, j, k) * sff.get(i, j, k);
                }
            }
        }
        let with_h = Submanifold::build(&acs, &span, Some(sff)).unwrap();
        let split = with_h.asi_split(1e-8).unwrap();
        let params = p(1.2, -0.5, 0.3);
        for kind in [
            ConnectionKind::LeviCivita,
            ConnectionKind::SemisymmetricMetric,
            ConnectionKind::SemisymmetricNonMetric,
        ] {
            let tau_h = scalar_closed(&with_h, kind, &params, &split, FormVariant::OracleDerived);
            let tau_0 = scalar_closed(&probe, kind, &params, &split, FormVariant::OracleDerived);
            let m = with_h.m() as f64;
            let drop = tau_h - tau_0;
            assert!(
                (drop + h_norm_sq / (m * (m + 1.0))).abs() <= 1e-12,
                "{kind:?}"
            );
            assert!(drop <= 0.0, "{kind:?}");
        }
    }

    #[test]
    fn theorem_requires_minimality() {
        let acs = canonical_structure(2).unwrap();
        let span = vec![acs.basis_vector(0), acs.basis_vector(2), acs.xi.clone()];
        let mut sff = crate::submanifold::SecondFundamentalForm::zeros(3, 2);
        sff.set(0, 0, 0, 1.0); // nonzero trace
        let sub = Submanifold::build(&acs, &span, Some(sff)).unwrap();
        let split = sub.asi_split(1e-8).unwrap();
        let mut s = Sampler::new(55);
        let r = theorem_inequalities(
            &sub,
            ConnectionKind::LeviCivita,
            &p(1.0, 0.0, 0.0),
            &split,
            &mut s,
            5,
            1e-10,
        );
        assert!(matches!(r, Err(Error::NotMinimal)));
    }

    #[test]
    fn monotone_ordering_true_gaps() {
        // printed minus derived theorem-(i) RHS: m g(X,X) for ssm, zero for
        // svk/tw, and the sign-indefinite sum |U X|^2 - m eta(X)^2 for ssnm
        // (counterexample X = xi).
        let acs = canonical_structure(3).unwrap();
        let mut s = Sampler::new(56);
        for trial in 0..10 {
            let m = if trial % 2 == 0 { 2 } else { 4 };
            let sub = random_sub_with_minimal_sff(&acs, m, &mut s);
            let split = sub.asi_split(1e-8).unwrap();
            let params = p(
                s.scalar(-2.0, 2.0),
                s.scalar(-2.0, 2.0),
                s.scalar(-2.0, 2.0),
            );
            for _ in 0..10 {
                let x = sub.random_tangent(&mut s);
                let gxx = acs.inner(&x, &x);
                let eta2 = acs.eta(&x) * acs.eta(&x);
                let gap = |kind| {
                    theorem_ricci_bound(&sub, kind, &params, &split, &x, FormVariant::AsPrinted)
                        - theorem_ricci_bound(
                            &sub,
                            kind,
                            &params,
                            &split,
                            &x,
                            FormVariant::OracleDerived,
                        )
                };
                let mf = sub.m() as f64;
                assert!((gap(ConnectionKind::SemisymmetricMetric) - mf * gxx).abs() <= 1e-10);
                assert!(gap(ConnectionKind::SchoutenVanKampen).abs() <= 1e-10);
                assert!(gap(ConnectionKind::TanakaWebster).abs() <= 1e-10);
                let want = (gxx - eta2) - mf * eta2;
                assert!((gap(ConnectionKind::SemisymmetricNonMetric) - want).abs() <= 1e-10);
            }
        }
        // the ssnm counterexample at X = xi: printed bound below the true value
        let sub = random_sub_with_minimal_sff(&acs, 2, &mut s);
        let split = sub.asi_split(1e-8).unwrap();
        let params = p(0.0, 0.0, 0.0);
        let spanning = sub.tangent_frame.clone();
        let sub = Submanifold::build(&acs, &spanning, None).unwrap(); // h = 0
        let xi = acs.xi.clone();
        let direct = ricci_direct(
            &sub,
            ConnectionKind::SemisymmetricNonMetric,
            &params,
            &xi,
            &xi,
        )
        .unwrap();
        let printed = theorem_ricci_bound(
            &sub,
            ConnectionKind::SemisymmetricNonMetric,
            &params,
            &split,
            &xi,
            FormVariant::AsPrinted,
        );
        assert!((direct - 2.0).abs() <= 1e-12);
        assert!(printed.abs() <= 1e-12);
    }

    #[test]
    fn equality_for_totally_geodesic_invariant_subs() {
        let acs = canonical_structure(3).unwrap();
        // invariant sub: span{e1, e4, xi}
        let span = vec![acs.basis_vector(0), acs.basis_vector(3), acs.xi.clone()];
        let sub = Submanifold::build(&acs, &span, None).unwrap();
        let split = sub.asi_split(1e-8).unwrap();
        let mut s = Sampler::new(57);
        for kind in ConnectionKind::ALL {
            let params = p(
                s.scalar(-2.0, 2.0),
                s.scalar(-2.0, 2.0),
                s.scalar(-2.0, 2.0),
            );
            let report = equality_check(&sub, kind, &params, &split, &mut s, 1e-10).unwrap();
            assert!(report.pass, "{kind:?}: {report:?}");
        }
    }

    #[test]
    fn equality_records_printed_gap() {
        let acs = canonical_structure(2).unwrap();
        let sub = pinned(&acs);
        let split = sub.asi_split(1e-8).unwrap();
        let mut s = Sampler::new(58);
        let report = equality_check(
            &sub,
            ConnectionKind::SemisymmetricMetric,
            &p(1.0, 0.0, 0.0),
            &split,
            &mut s,
            1e-10,
        )
        .unwrap();
        assert!(report.pass);
        // printed asi bound at e1 is 3 while the direct value is 1
        assert!((report.max_ricci_gap_printed - 2.0).abs() <= 1e-10);
    }

    #[test]
    fn equality_requires_totally_geodesic() {
        let acs = canonical_structure(2).unwrap();
        let span = vec![acs.basis_vector(0), acs.basis_vector(2), acs.xi.clone()];
        let mut s = Sampler::new(59);
        let probe = Submanifold::build(&acs, &span, None).unwrap();
        let sff = random_minimal_sff(&probe, &mut s);
        let sub = Submanifold::build(&acs, &span, Some(sff)).unwrap();
        let split = sub.asi_split(1e-8).unwrap();
        let r = equality_check(
            &sub,
            ConnectionKind::LeviCivita,
            &p(1.0, 0.0, 0.0),
            &split,
            &mut s,
            1e-10,
        );
        assert!(matches!(r, Err(Error::NotTotallyGeodesic)));
    }

    #[test]
    fn tw_equality_at_psi_zero_matches_levi_civita() {
        let acs = canonical_structure(3).unwrap();
        let span = vec![acs.basis_vector(0), acs.basis_vector(3), acs.xi.clone()];
        let sub = Submanifold::build(&acs, &span, None).unwrap();
        let split = sub.asi_split(1e-8).unwrap();
        let params = p(0.8, -0.4, 0.8); // f1 = f3
        let mut s = Sampler::new(60);
        for _ in 0..20 {
            let x = sub.random_tangent(&mut s);
            let tw = ricci_direct(&sub, ConnectionKind::TanakaWebster, &params, &x, &x).unwrap();
            let lc = ricci_direct(&sub, ConnectionKind::LeviCivita, &params, &x, &x).unwrap();
            assert!((tw - lc).abs() <= 1e-12);
            let btw = theorem_ricci_bound(
                &sub,
                ConnectionKind::TanakaWebster,
                &params,
                &split,
                &x,
                FormVariant::OracleDerived,
            );
            let blc = theorem_ricci_bound(
                &sub,
                ConnectionKind::LeviCivita,
                &params,
                &split,
                &x,
                FormVariant::OracleDerived,
            );
            assert!((btw - blc).abs() <= 1e-12);
        }
    }

    #[test]
    fn sasakian_coherence_of_derived_forms() {
        // derived sasakian == derived asi at the substituted params, and the
        // printed cluster coefficients agree for all four corollaries; the
        // printed eta blocks are the known discrepancies.
        let acs = canonical_structure(3).unwrap();
        let mut s = Sampler::new(61);
        for c in [1.0, 5.0, -3.0] {
            let params = sasakian_params(c);
            let sub = random_sub_with_minimal_sff(&acs, 4, &mut s);
            let split = sub.asi_split(1e-8).unwrap();
            for kind in ConnectionKind::ALL {
                for _ in 0..5 {
                    let x = sub.random_tangent(&mut s);
                    let y = sub.random_tangent(&mut s);
                    let a = ricci_closed(
                        &sub,
                        kind,
                        &params,
                        &x,
                        &y,
                        &RicciForm::Sasakian(c),
                        FormVariant::OracleDerived,
                        Some(&split),
                    )
                    .unwrap();
                    let b = ricci_closed(
                        &sub,
                        kind,
                        &params,
                        &x,
                        &y,
                        &RicciForm::Asi,
                        FormVariant::OracleDerived,
                        Some(&split),
                    )
                    .unwrap();
                    assert!((a - b).abs() <= 1e-12);
                }
            }
            // cluster coefficients of the printed corollaries match the
            // printed asi lemmas under substitution
            let m = sub.m() as f64;
            for kind in [
                ConnectionKind::SemisymmetricMetric,
                ConnectionKind::SemisymmetricNonMetric,
                ConnectionKind::SchoutenVanKampen,
                ConnectionKind::TanakaWebster,
            ] {
                for l2 in [0.0, 0.25, 1.0] {
                    let (coef, _, _) = sasakian_printed_coefficients(kind, c, m, l2).unwrap();
                    let asi = asi_coefficients(kind, &params, m, l2, FormVariant::AsPrinted);
                    assert!(
                        (coef - asi).abs() <= 1e-12,
                        "{kind:?} c={c} l2={l2}: {coef} vs {asi}"
                    );
                }
            }
        }
    }
}
