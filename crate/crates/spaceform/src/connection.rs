//! The four connection deformations, their covariant derivatives under the
//! df = 0 convention, a general deformed-curvature oracle, the printed
//! closed-form curvatures (term by term, as typeset), and the comparator
//! that adjudicates the closed forms against the oracle.

use serde::Serialize;

use crate::contact::{gssf_curvature, AlmostContactStructure, SpaceFormParams};
use crate::error::Result;
use crate::frame::{Sampler, Vector};

/// The five connections every operation in this module accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ConnectionKind {
    LeviCivita,
    SemisymmetricMetric,
    SemisymmetricNonMetric,
    SchoutenVanKampen,
    TanakaWebster,
}

impl ConnectionKind {
    pub const ALL: [ConnectionKind; 5] = [
        ConnectionKind::LeviCivita,
        ConnectionKind::SemisymmetricMetric,
        ConnectionKind::SemisymmetricNonMetric,
        ConnectionKind::SchoutenVanKampen,
        ConnectionKind::TanakaWebster,
    ];

    /// Citation key of the printed curvature closed form for this kind.
    pub fn curvature_citation(self) -> &'static str {
        match self {
            ConnectionKind::LeviCivita => "Eq (1.1)",
            ConnectionKind::SemisymmetricMetric => "Eq (2.11)",
            ConnectionKind::SemisymmetricNonMetric => "Eq (2.13)",
            ConnectionKind::SchoutenVanKampen => "Eq (2.15)",
            ConnectionKind::TanakaWebster => "Eq (2.17)",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ConnectionKind::LeviCivita => "levi-civita",
            ConnectionKind::SemisymmetricMetric => "semisymmetric-metric",
            ConnectionKind::SemisymmetricNonMetric => "semisymmetric-non-metric",
            ConnectionKind::SchoutenVanKampen => "schouten-van-kampen",
            ConnectionKind::TanakaWebster => "tanaka-webster",
        }
    }
}

impl std::str::FromStr for ConnectionKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "levi-civita" | "lc" => Ok(ConnectionKind::LeviCivita),
            "semisymmetric-metric" | "ssm" => Ok(ConnectionKind::SemisymmetricMetric),
            "semisymmetric-non-metric" | "ssnm" => Ok(ConnectionKind::SemisymmetricNonMetric),
            "schouten-van-kampen" | "svk" => Ok(ConnectionKind::SchoutenVanKampen),
            "tanaka-webster" | "tw" => Ok(ConnectionKind::TanakaWebster),
            other => Err(format!("unknown connection kind: {other}")),
        }
    }
}

/// D(X,Y) = (deformed connection minus Levi-Civita), as the printed
/// difference term of each connection relation.
pub fn deformation(
    kind: ConnectionKind,
    acs: &AlmostContactStructure,
    params: &SpaceFormParams,
    x: &Vector,
    y: &Vector,
) -> Vector {
    let psi = params.psi();
    let (ex, ey) = (acs.eta(x), acs.eta(y));
    match kind {
        ConnectionKind::LeviCivita => Vector::zeros(acs.dim()),
        ConnectionKind::SemisymmetricMetric => x * ey - &acs.xi * acs.inner(x, y),
        ConnectionKind::SemisymmetricNonMetric => x * ey,
        ConnectionKind::SchoutenVanKampen => {
            let px = acs.phi_apply(x);
            let c = acs.inner(&px, y);
            px * (psi * ey) - &acs.xi * (psi * c)
        }
        ConnectionKind::TanakaWebster => {
            let px = acs.phi_apply(x);
            let py = acs.phi_apply(y);
            let c = acs.inner(&px, y);
            py * ex + px * (psi * ey) - &acs.xi * (psi * c)
        }
    }
}

/// (nabla_X phi)(Y) = (f1-f3)[g(X,Y) xi - eta(Y) X].
pub fn structure_derivative_phi(
    acs: &AlmostContactStructure,
    params: &SpaceFormParams,
    x: &Vector,
    y: &Vector,
) -> Vector {
    let psi = params.psi();
    &acs.xi * (psi * acs.inner(x, y)) - x * (psi * acs.eta(y))
}

/// nabla_X xi = -(f1-f3) phi X.
pub fn structure_derivative_xi(
    acs: &AlmostContactStructure,
    params: &SpaceFormParams,
    x: &Vector,
) -> Vector {
    acs.phi_apply(x) * (-params.psi())
}

/// (nabla_X eta)(Y) = g(nabla_X xi, Y).
fn structure_derivative_eta(
    acs: &AlmostContactStructure,
    params: &SpaceFormParams,
    x: &Vector,
    y: &Vector,
) -> f64 {
    acs.inner(&structure_derivative_xi(acs, params, x), y)
}

/// (nabla_X D)(Y,Z), expanded by the covariant product rule with nabla g = 0
/// and df = 0 at the point. Only eta, xi and phi differentiate.
pub fn deformation_derivative(
    kind: ConnectionKind,
    acs: &AlmostContactStructure,
    params: &SpaceFormParams,
    x: &Vector,
    y: &Vector,
    z: &Vector,
) -> Vector {
    let psi = params.psi();
    match kind {
        ConnectionKind::LeviCivita => Vector::zeros(acs.dim()),
        // D(Y,Z) = eta(Z) Y - g(Y,Z) xi
        ConnectionKind::SemisymmetricMetric => {
            y * structure_derivative_eta(acs, params, x, z)
                - structure_derivative_xi(acs, params, x) * acs.inner(y, z)
        }
        // D(Y,Z) = eta(Z) Y
        ConnectionKind::SemisymmetricNonMetric => y * structure_derivative_eta(acs, params, x, z),
        // D(Y,Z) = psi [eta(Z) phi Y - g(phi Y, Z) xi]
        ConnectionKind::SchoutenVanKampen => {
            let dphi_y = structure_derivative_phi(acs, params, x, y);
            (acs.phi_apply(y) * structure_derivative_eta(acs, params, x, z) + &dphi_y * acs.eta(z)
                - &acs.xi * acs.inner(&dphi_y, z)
                - structure_derivative_xi(acs, params, x) * acs.inner(&acs.phi_apply(y), z))
                * psi
        }
        // D(Y,Z) = eta(Y) phi Z + the Schouten-van Kampen part
        ConnectionKind::TanakaWebster => {
            let extra = acs.phi_apply(z) * structure_derivative_eta(acs, params, x, y)
                + structure_derivative_phi(acs, params, x, z) * acs.eta(y);
            extra + deformation_derivative(ConnectionKind::SchoutenVanKampen, acs, params, x, y, z)
        }
    }
}

/// Ground-truth deformed curvature:
///
///   R~(X,Y)Z = R(X,Y)Z + (nabla_X D)(Y,Z) - (nabla_Y D)(X,Z)
///              + D(X, D(Y,Z)) - D(Y, D(X,Z))
///
/// with R the ambient space-form curvature. The printed closed forms are the
/// hypotheses judged against this.
pub fn curvature_oracle(
    kind: ConnectionKind,
    acs: &AlmostContactStructure,
    params: &SpaceFormParams,
    x: &Vector,
    y: &Vector,
    z: &Vector,
) -> Result<Vector> {
    let mut out = gssf_curvature(acs, params, x, y, z)?;
    if kind == ConnectionKind::LeviCivita {
        return Ok(out);
    }
    out += deformation_derivative(kind, acs, params, x, y, z)
        - deformation_derivative(kind, acs, params, y, x, z);
    let dyz = deformation(kind, acs, params, y, z);
    let dxz = deformation(kind, acs, params, x, z);
    out += deformation(kind, acs, params, x, &dyz) - deformation(kind, acs, params, y, &dxz);
    Ok(out)
}

/// One labeled term of a printed curvature closed form.
pub struct CurvatureTerm {
    pub label: &'static str,
    pub value: Vector,
}

/// The printed closed form of the given kind, term by term as typeset.
pub fn curvature_closed_terms(
    kind: ConnectionKind,
    acs: &AlmostContactStructure,
    params: &SpaceFormParams,
    x: &Vector,
    y: &Vector,
    z: &Vector,
) -> Vec<CurvatureTerm> {
    let g = |a: &Vector, b: &Vector| acs.inner(a, b);
    let (f1, f2, f3) = (params.f1, params.f2, params.f3);
    let psi = params.psi();
    let px = acs.phi_apply(x);
    let py = acs.phi_apply(y);
    let pz = acs.phi_apply(z);
    let (ex, ey, ez) = (acs.eta(x), acs.eta(y), acs.eta(z));

    let metric_block = |c: f64| x * (c * g(y, z)) - y * (c * g(x, z));
    let phi_block =
        |c: f64| &py * (c * g(x, &pz)) - &px * (c * g(y, &pz)) + &pz * (2.0 * c * g(x, &py));
    let eta_block = |c: f64| {
        y * (c * ex * ez) - x * (c * ey * ez) + &acs.xi * (c * (g(x, z) * ey - g(y, z) * ex))
    };

    match kind {
        ConnectionKind::LeviCivita => vec![
            CurvatureTerm {
                label: "f1{g(Y,Z)X-g(X,Z)Y}",
                value: metric_block(f1),
            },
            CurvatureTerm {
                label: "f2{phi terms}",
                value: phi_block(f2),
            },
            CurvatureTerm {
                label: "f3{eta terms}",
                value: eta_block(f3),
            },
        ],
        ConnectionKind::SemisymmetricMetric => vec![
            CurvatureTerm {
                label: "(f1-1){g(Y,Z)X-g(X,Z)Y}",
                value: metric_block(f1 - 1.0),
            },
            CurvatureTerm {
                label: "f2{phi terms}",
                value: phi_block(f2),
            },
            CurvatureTerm {
                label: "(f3-1){eta terms}",
                value: eta_block(f3 - 1.0),
            },
            CurvatureTerm {
                label: "(f1-f3){g(X,phiZ)Y-g(Y,phiZ)X+g(Y,Z)phiX-g(X,Z)phiY}",
                value: y * (psi * g(x, &pz)) - x * (psi * g(y, &pz)) + &px * (psi * g(y, z))
                    - &py * (psi * g(x, z)),
            },
        ],
        ConnectionKind::SemisymmetricNonMetric => vec![
            CurvatureTerm {
                label: "f1{g(Y,Z)X-g(X,Z)Y}",
                value: metric_block(f1),
            },
            CurvatureTerm {
                label: "f2{phi terms}",
                value: phi_block(f2),
            },
            CurvatureTerm {
                label: "f3{eta terms}",
                value: eta_block(f3),
            },
            CurvatureTerm {
                label: "(f1-f3)[g(X,phiZ)Y-g(Y,phiZ)X]",
                value: y * (psi * g(x, &pz)) - x * (psi * g(y, &pz)),
            },
            CurvatureTerm {
                label: "eta(Y)eta(Z)X-eta(X)eta(Z)Y",
                value: x * (ey * ez) - y * (ex * ez),
            },
        ],
        ConnectionKind::SchoutenVanKampen => vec![
            CurvatureTerm {
                label: "f1{g(Y,Z)X-g(X,Z)Y}",
                value: metric_block(f1),
            },
            CurvatureTerm {
                label: "f2{phi terms}",
                value: phi_block(f2),
            },
            CurvatureTerm {
                label: "{f3+(f1-f3)^2}{eta terms}",
                value: eta_block(f3 + psi * psi),
            },
            CurvatureTerm {
                label: "(f1-f3)^2{g(X,phiZ)phiY-g(Y,phiZ)phiX}",
                value: &py * (psi * psi * g(x, &pz)) - &px * (psi * psi * g(y, &pz)),
            },
        ],
        ConnectionKind::TanakaWebster => vec![
            CurvatureTerm {
                label: "f1{g(Y,Z)X-g(X,Z)Y}",
                value: metric_block(f1),
            },
            CurvatureTerm {
                label: "f2{phi terms}",
                value: phi_block(f2),
            },
            CurvatureTerm {
                label: "{f3+(f1-f3)^2}{eta terms}",
                value: eta_block(f3 + psi * psi),
            },
            CurvatureTerm {
                label: "(f1-f3)^2{g(X,phiZ)phiY-g(Y,phiZ)phiX}",
                value: &py * (psi * psi * g(x, &pz)) - &px * (psi * psi * g(y, &pz)),
            },
            CurvatureTerm {
                label: "2(f1-f3)g(X,phiY)phiZ",
                value: &pz * (2.0 * psi * g(x, &py)),
            },
        ],
    }
}

/// The printed closed form, summed.
pub fn curvature_closed(
    kind: ConnectionKind,
    acs: &AlmostContactStructure,
    params: &SpaceFormParams,
    x: &Vector,
    y: &Vector,
    z: &Vector,
) -> Vector {
    curvature_closed_terms(kind, acs, params, x, y, z)
        .into_iter()
        .fold(Vector::zeros(acs.dim()), |acc, t| acc + t.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch,
}

/// Witness of the first mismatching trial, with the residual decomposed over
/// the printed terms (norm of each term and its overlap with the residual).
#[derive(Debug, Clone, Serialize)]
pub struct MismatchWitness {
    pub params: (f64, f64, f64),
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    pub residual: Vec<f64>,
    pub residual_norm: f64,
    pub per_term: Vec<TermResidual>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TermResidual {
    pub label: String,
    pub term_norm: f64,
    pub residual_overlap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub kind: ConnectionKind,
    pub trials: usize,
    pub max_residual: f64,
    pub verdict: Verdict,
    pub witness: Option<MismatchWitness>,
}

/// Draws (params, X, Y, Z) per trial, compares closed form against the
/// oracle, and reports the worst residual. The first mismatch is stored with
/// a per-printed-term decomposition.
pub fn compare_curvature(
    kind: ConnectionKind,
    acs: &AlmostContactStructure,
    sampler: &mut Sampler,
    trials: usize,
    param_range: (f64, f64),
    tol: f64,
) -> Result<ComparisonReport> {
    assert!(trials >= 1, "trials must be >= 1");
    let d = acs.dim();
    let (lo, hi) = param_range;
    let mut max_residual = 0.0f64;
    let mut witness = None;
    for _ in 0..trials {
        let params = SpaceFormParams::new(
            sampler.scalar(lo, hi),
            sampler.scalar(lo, hi),
            sampler.scalar(lo, hi),
        );
        let x = sampler.unit_vector(d);
        let y = sampler.unit_vector(d);
        let z = sampler.unit_vector(d);
        let closed = curvature_closed(kind, acs, &params, &x, &y, &z);
        let oracle = curvature_oracle(kind, acs, &params, &x, &y, &z)?;
        let residual = &closed - &oracle;
        let rnorm = acs.g.norm(&residual);
        if rnorm > max_residual {
            max_residual = rnorm;
        }
        if rnorm > tol && witness.is_none() {
            let per_term = curvature_closed_terms(kind, acs, &params, &x, &y, &z)
                .into_iter()
                .map(|t| TermResidual {
                    label: t.label.to_string(),
                    term_norm: acs.g.norm(&t.value),
                    residual_overlap: acs.inner(&t.value, &residual),
                })
                .collect();
            witness = Some(MismatchWitness {
                params: (params.f1, params.f2, params.f3),
                x: x.iter().copied().collect(),
                y: y.iter().copied().collect(),
                z: z.iter().copied().collect(),
                residual: residual.iter().copied().collect(),
                residual_norm: rnorm,
                per_term,
            });
        }
    }
    let verdict = if max_residual <= tol {
        Verdict::Match
    } else {
        Verdict::Mismatch
    };
    Ok(ComparisonReport {
        kind,
        trials,
        max_residual,
        verdict,
        witness,
    })
}
