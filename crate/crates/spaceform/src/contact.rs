//! Almost contact metric structures (phi, xi, eta, g), their validation, the
//! ambient three-function space-form curvature, and the tangential/normal
//! split of phi along a submanifold frame.

use crate::error::{Error, Result};
use crate::frame::{project, Matrix, Metric, Vector};

/// The structure triple (f1, f2, f3), treated as scalars at the evaluation
/// point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceFormParams {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
}

impl SpaceFormParams {
    pub fn new(f1: f64, f2: f64, f3: f64) -> Self {
        Self { f1, f2, f3 }
    }

    /// The recurring combination f1 - f3.
    pub fn psi(&self) -> f64 {
        self.f1 - self.f3
    }
}

/// Sasakian specialization: f1 = (c+3)/4, f2 = f3 = (c-1)/4.
pub fn sasakian_params(c: f64) -> SpaceFormParams {
    SpaceFormParams::new((c + 3.0) / 4.0, (c - 1.0) / 4.0, (c - 1.0) / 4.0)
}

/// An almost contact metric structure over an orthonormalizable ambient frame.
///
/// eta is stored by g-duality with xi, so g(X, xi) = eta(X) holds by
/// construction. `validate` is the gatekeeper for user-supplied structures;
/// the constructor only checks shapes.
#[derive(Debug, Clone)]
pub struct AlmostContactStructure {
    pub n: usize,
    pub phi: Matrix,
    pub xi: Vector,
    pub g: Metric,
}

impl AlmostContactStructure {
    pub fn new(n: usize, phi: Matrix, xi: Vector, g: Metric) -> Result<Self> {
        let d = 2 * n + 1;
        if phi.nrows() != d || phi.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: phi.nrows(),
            });
        }
        if xi.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: xi.len(),
            });
        }
        if g.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: g.dim(),
            });
        }
        Ok(Self { n, phi, xi, g })
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    pub fn eta(&self, x: &Vector) -> f64 {
        self.g.inner(x, &self.xi)
    }

    pub fn phi_apply(&self, x: &Vector) -> Vector {
        &self.phi * x
    }

    pub fn inner(&self, a: &Vector, b: &Vector) -> f64 {
        self.g.inner(a, b)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = Vector::zeros(self.dim());
        v[i] = 1.0;
        v
    }
}

/// The standard model: g = identity, xi = e_{2n+1}, phi e_i = e_{n+i} and
/// phi e_{n+i} = -e_i for 1 <= i <= n, phi xi = 0.
pub fn canonical_structure(n: usize) -> Result<AlmostContactStructure> {
    if n == 0 {
        return Err(Error::InvalidConfig(
            "ambient parameter n must be >= 1".into(),
        ));
    }
    let d = 2 * n + 1;
    let mut phi = Matrix::zeros(d, d);
    for i in 0..n {
        phi[(n + i, i)] = 1.0;
        phi[(i, n + i)] = -1.0;
    }
    let mut xi = Vector::zeros(d);
    xi[d - 1] = 1.0;
    AlmostContactStructure::new(n, phi, xi, Metric::identity(d))
}

/// Max residual of each structure identity, evaluated on all frame pairs.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    /// (identity label, max residual) in a fixed order.
    pub residuals: Vec<(String, f64)>,
    pub pass: bool,
    pub tol: f64,
}

impl ValidationReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, (_, r)| m.max(*r))
    }
}

/// Checks the four defining identities on the standard frame:
/// phi^2 X = -X + eta(X) xi; phi xi = 0; eta(xi) = 1; eta(phi X) = 0;
/// g(phi X, phi Y) = g(X,Y) - eta(X) eta(Y); g(phi X, Y) = -g(X, phi Y).
pub fn validate(acs: &AlmostContactStructure, tol: f64) -> ValidationReport {
    let d = acs.dim();
    let frame: Vec<Vector> = (0..d).map(|i| acs.basis_vector(i)).collect();

    let mut r_phi_sq = 0.0f64;
    let mut r_eta = 0.0f64;
    let mut r_compat = 0.0f64;
    let mut r_skew = 0.0f64;

    r_eta = r_eta.max((acs.eta(&acs.xi) - 1.0).abs());
    r_phi_sq = r_phi_sq.max(acs.g.norm(&acs.phi_apply(&acs.xi)));

    for x in &frame {
        let px = acs.phi_apply(x);
        let want = -x + &acs.xi * acs.eta(x);
        r_phi_sq = r_phi_sq.max(acs.g.norm(&(acs.phi_apply(&px) - want)));
        r_eta = r_eta.max(acs.eta(&px).abs());
        for y in &frame {
            let py = acs.phi_apply(y);
            r_compat = r_compat
                .max((acs.inner(&px, &py) - (acs.inner(x, y) - acs.eta(x) * acs.eta(y))).abs());
            r_skew = r_skew.max((acs.inner(&px, y) + acs.inner(x, &py)).abs());
        }
    }

    let residuals = vec![
        ("Eq (2.1)".to_string(), r_phi_sq),
        ("Eq (2.2)".to_string(), r_eta),
        ("Eq (2.3)".to_string(), r_compat),
        ("Eq (2.4)".to_string(), r_skew),
    ];
    let pass = residuals.iter().all(|(_, r)| *r <= tol);
    ValidationReport {
        residuals,
        pass,
        tol,
    }
}

/// The ambient curvature of a generalized Sasakian-space-form, exactly as the
/// three-function closed form reads:
///
///   R(X,Y)Z = f1 {g(Y,Z)X - g(X,Z)Y}
///           + f2 {g(X,phiZ)phiY - g(Y,phiZ)phiX + 2 g(X,phiY)phiZ}
///           + f3 {eta(X)eta(Z)Y - eta(Y)eta(Z)X
///                 + g(X,Z)eta(Y)xi - g(Y,Z)eta(X)xi}
pub fn gssf_curvature(
    acs: &AlmostContactStructure,
    params: &SpaceFormParams,
    x: &Vector,
    y: &Vector,
    z: &Vector,
) -> Result<Vector> {
    let d = acs.dim();
    for v in [x, y, z] {
        if v.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: v.len(),
            });
        }
    }
    let g = |a: &Vector, b: &Vector| acs.inner(a, b);
    let px = acs.phi_apply(x);
    let py = acs.phi_apply(y);
    let pz = acs.phi_apply(z);
    let (ex, ey, ez) = (acs.eta(x), acs.eta(y), acs.eta(z));

    let mut out = x * (params.f1 * g(y, z)) - y * (params.f1 * g(x, z));
    out += &py * (params.f2 * g(x, &pz)) - &px * (params.f2 * g(y, &pz))
        + &pz * (2.0 * params.f2 * g(x, &py));
    out += y * (params.f3 * ex * ez) - x * (params.f3 * ey * ez)
        + &acs.xi * (params.f3 * (g(x, z) * ey - g(y, z) * ex));
    Ok(out)
}

/// phi X = TX + FX along a g-orthonormal tangent frame: T is the projected
/// part, F the remainder. X must lie in the span.
pub fn tf_split(
    acs: &AlmostContactStructure,
    tangent_basis: &[Vector],
    x: &Vector,
) -> Result<(Vector, Vector)> {
    let px_span = project(x, tangent_basis, &acs.g)?;
    let span_residual = acs.g.norm(&(x - px_span));
    if span_residual > 1e-8 {
        return Err(Error::NotInSpan {
            residual: span_residual,
        });
    }
    let phix = acs.phi_apply(x);
    let t = project(&phix, tangent_basis, &acs.g)?;
    let f = phix - &t;
    Ok((t, f))
}
