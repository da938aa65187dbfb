//! Submanifolds with xi tangent: frames, second fundamental forms per
//! connection, shape operators, Gauss-equation induced curvature, mean
//! curvature and minimality, and the almost semi-invariant splitting of the
//! tangential part of phi.

use serde::Serialize;

use crate::connection::{curvature_closed, deformation, ConnectionKind};
use crate::contact::{AlmostContactStructure, SpaceFormParams};
use crate::error::{Error, Result};
use crate::frame::{orthonormalize, project, symmetric_spectrum, Matrix, Sampler, Vector};

/// Coefficients h[i][j][k] with h(E_i, E_j) = sum_k h[i][j][k] F_k, symmetric
/// in (i, j).
#[derive(Debug, Clone)]
pub struct SecondFundamentalForm {
    frame: usize,
    normals: usize,
    coeffs: Vec<f64>,
}

impl SecondFundamentalForm {
    pub fn zeros(frame: usize, normals: usize) -> Self {
        Self {
            frame,
            normals,
            coeffs: vec![0.0; frame * frame * normals],
        }
    }

    pub fn from_coeffs(frame: usize, normals: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != frame * frame * normals {
            return Err(Error::SffShape {
                expected: format!("{frame}x{frame}x{normals}"),
                got: format!("{} entries", coeffs.len()),
            });
        }
        let sff = Self {
            frame,
            normals,
            coeffs,
        };
        for i in 0..frame {
            for j in (i + 1)..frame {
                for k in 0..normals {
                    if (sff.get(i, j, k) - sff.get(j, i, k)).abs() > 1e-12 {
                        return Err(Error::SffAsymmetric { i, j, k });
                    }
                }
            }
        }
        Ok(sff)
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.coeffs[(i * self.frame + j) * self.normals + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.coeffs[(i * self.frame + j) * self.normals + k] = v;
        self.coeffs[(j * self.frame + i) * self.normals + k] = v;
    }

    pub fn frame(&self) -> usize {
        self.frame
    }

    pub fn normals(&self) -> usize {
        self.normals
    }
}

/// Classification of a second fundamental form for a given connection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SffClass {
    TotallyGeodesic,
    Minimal,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusterClass {
    Invariant,
    AntiInvariant,
    Slant,
}

/// One eigenvalue cluster of -T^2 restricted to the xi-complement D, reported
/// as lambda = sqrt(mu) with a g-orthonormal basis of its eigenspace.
#[derive(Debug, Clone)]
pub struct DistributionCluster {
    pub lambda: f64,
    pub multiplicity: usize,
    pub basis: Vec<Vector>,
    pub class: ClusterClass,
}

#[derive(Debug, Clone)]
pub struct DistributionSplit {
    pub clusters: Vec<DistributionCluster>,
}

impl DistributionSplit {
    /// U^lambda X for the given cluster.
    pub fn project(&self, cluster: usize, g: &crate::frame::Metric, x: &Vector) -> Vector {
        let mut out = Vector::zeros(x.len());
        for b in &self.clusters[cluster].basis {
            out += b * g.inner(x, b);
        }
        out
    }

    pub fn total_multiplicity(&self) -> usize {
        self.clusters.iter().map(|c| c.multiplicity).sum()
    }
}

/// A pointwise submanifold frame: tangent frame with xi last, completed by a
/// normal frame, plus the stored (Levi-Civita) second fundamental form.
#[derive(Debug, Clone)]
pub struct Submanifold<'a> {
    pub acs: &'a AlmostContactStructure,
    pub tangent_frame: Vec<Vector>,
    pub normal_frame: Vec<Vector>,
    pub sff: SecondFundamentalForm,
}

impl<'a> Submanifold<'a> {
    /// Builds the frames from a spanning set that must contain xi in its
    /// span; the stored sff is validated symmetric (absent means zero).
    pub fn build(
        acs: &'a AlmostContactStructure,
        spanning: &[Vector],
        sff: Option<SecondFundamentalForm>,
    ) -> Result<Self> {
        let g = &acs.g;
        let span_basis = orthonormalize(spanning, g, 1e-10)?;
        let xi_proj = project(&acs.xi, &span_basis, g)?;
        let xi_residual = g.norm(&(&acs.xi - xi_proj));
        if xi_residual > 1e-8 {
            return Err(Error::XiNotTangent);
        }
        // re-orthonormalize with xi first, then rotate it to the last slot
        let mut with_xi = vec![acs.xi.clone()];
        with_xi.extend(span_basis);
        let reordered = orthonormalize(&with_xi, g, 1e-10)?;
        let mut tangent_frame: Vec<Vector> = reordered[1..].to_vec();
        tangent_frame.push(reordered[0].clone());

        let d = acs.dim();
        let m = tangent_frame.len() - 1;
        let mut full = tangent_frame.clone();
        let mut normal_frame = Vec::with_capacity(d - m - 1);
        for i in 0..d {
            let candidate = acs.basis_vector(i);
            let mut w = candidate;
            for _ in 0..2 {
                for b in &full {
                    let c = g.inner(&w, b);
                    w -= b * c;
                }
            }
            let n = g.norm(&w);
            if n > 1e-8 {
                let unit = w / n;
                full.push(unit.clone());
                normal_frame.push(unit);
            }
        }
        debug_assert_eq!(normal_frame.len(), 2 * acs.n - m);

        let sff = match sff {
            Some(s) => {
                if s.frame() != m + 1 || s.normals() != normal_frame.len() {
                    return Err(Error::SffShape {
                        expected: format!("{}x{}x{}", m + 1, m + 1, normal_frame.len()),
                        got: format!("{}x{}x{}", s.frame(), s.frame(), s.normals()),
                    });
                }
                s
            }
            None => SecondFundamentalForm::zeros(m + 1, normal_frame.len()),
        };
        Ok(Self {
            acs,
            tangent_frame,
            normal_frame,
            sff,
        })
    }

    /// Tangent dimension minus one (the frame is E_1..E_m, E_{m+1} = xi).
    pub fn m(&self) -> usize {
        self.tangent_frame.len() - 1
    }

    pub fn normal_count(&self) -> usize {
        self.normal_frame.len()
    }

    pub fn tangent_coords(&self, x: &Vector) -> Vec<f64> {
        self.tangent_frame
            .iter()
            .map(|e| self.acs.inner(x, e))
            .collect()
    }

    fn tangential(&self, x: &Vector) -> Vector {
        let mut out = Vector::zeros(x.len());
        for e in &self.tangent_frame {
            out += e * self.acs.inner(x, e);
        }
        out
    }

    pub fn ensure_tangent(&self, x: &Vector) -> Result<()> {
        let residual = self.acs.g.norm(&(x - self.tangential(x)));
        if residual > 1e-8 {
            return Err(Error::NotTangent { residual });
        }
        Ok(())
    }

    /// TX: tangential part of phi X.
    pub fn t_apply(&self, x: &Vector) -> Vector {
        self.tangential(&self.acs.phi_apply(x))
    }

    /// FX: normal part of phi X.
    pub fn f_apply(&self, x: &Vector) -> Vector {
        let px = self.acs.phi_apply(x);
        &px - self.tangential(&px)
    }

    /// h(X,Y) as an ambient normal vector (Levi-Civita form, bilinear in the
    /// frame coordinates).
    pub fn lc_sff(&self, x: &Vector, y: &Vector) -> Vector {
        let cx = self.tangent_coords(x);
        let cy = self.tangent_coords(y);
        let mut out = Vector::zeros(self.acs.dim());
        for (k, fk) in self.normal_frame.iter().enumerate() {
            let mut c = 0.0;
            for (i, &xi_c) in cx.iter().enumerate() {
                if xi_c == 0.0 {
                    continue;
                }
                for (j, &yj_c) in cy.iter().enumerate() {
                    c += xi_c * yj_c * self.sff.get(i, j, k);
                }
            }
            out += fk * c;
        }
        out
    }

    /// Levi-Civita shape operator A_k in frame coordinates, from
    /// g(A_k X, Y) = g(h(X,Y), F_k).
    pub fn shape_operator(&self, k: usize) -> Result<Matrix> {
        if k >= self.normal_count() {
            return Err(Error::NormalIndexOutOfRange {
                index: k,
                count: self.normal_count(),
            });
        }
        let mp1 = self.m() + 1;
        Ok(Matrix::from_fn(mp1, mp1, |j, i| self.sff.get(i, j, k)))
    }

    /// h~(X,Y) = h(X,Y) + normal part of D(X,Y). Non-symmetric for the
    /// Schouten-van Kampen and Tanaka-Webster kinds.
    pub fn deformed_sff(
        &self,
        kind: ConnectionKind,
        params: &SpaceFormParams,
        x: &Vector,
        y: &Vector,
    ) -> Result<Vector> {
        self.ensure_tangent(x)?;
        self.ensure_tangent(y)?;
        let d = deformation(kind, self.acs, params, x, y);
        let normal_part = &d - self.tangential(&d);
        Ok(self.lc_sff(x, y) + normal_part)
    }

    /// Deformed shape operator in frame coordinates:
    /// g(A~_k X, Y) = g(h~(X,Y), F_k), X in the Weingarten slot.
    pub fn deformed_shape_operator(
        &self,
        kind: ConnectionKind,
        params: &SpaceFormParams,
        k: usize,
    ) -> Result<Matrix> {
        if k >= self.normal_count() {
            return Err(Error::NormalIndexOutOfRange {
                index: k,
                count: self.normal_count(),
            });
        }
        let mp1 = self.m() + 1;
        let fk = &self.normal_frame[k];
        let mut mat = Matrix::zeros(mp1, mp1);
        for i in 0..mp1 {
            for j in 0..mp1 {
                let h = self
                    .deformed_sff(kind, params, &self.tangent_frame[i], &self.tangent_frame[j])
                    .expect("frame vectors are tangent");
                mat[(j, i)] = self.acs.inner(&h, fk);
            }
        }
        Ok(mat)
    }

    /// H~ = (1/(m+1)) sum_i h~(E_i, E_i); equals the Levi-Civita mean
    /// curvature for every kind because the deformation's normal trace
    /// vanishes (F xi = 0).
    pub fn mean_curvature(&self, kind: ConnectionKind, params: &SpaceFormParams) -> Vector {
        let mut out = Vector::zeros(self.acs.dim());
        for e in &self.tangent_frame {
            out += self
                .deformed_sff(kind, params, e, e)
                .expect("frame vectors are tangent");
        }
        out / (self.m() as f64 + 1.0)
    }

    /// totally geodesic iff every h~(E_i,E_j) vanishes; minimal iff H~ does.
    pub fn classify_sff(
        &self,
        kind: ConnectionKind,
        params: &SpaceFormParams,
        tol: f64,
    ) -> SffClass {
        let mut max_h = 0.0f64;
        for ei in &self.tangent_frame {
            for ej in &self.tangent_frame {
                let h = self
                    .deformed_sff(kind, params, ei, ej)
                    .expect("frame vectors are tangent");
                max_h = max_h.max(self.acs.g.norm(&h));
            }
        }
        if max_h <= tol {
            return SffClass::TotallyGeodesic;
        }
        if self.acs.g.norm(&self.mean_curvature(kind, params)) <= tol {
            return SffClass::Minimal;
        }
        SffClass::Generic
    }

    /// Induced curvature via the Gauss equation solved for it:
    /// R(X,Y,Z,W) = Rbar(X,Y,Z,W) + g(h~(X,W),h~(Y,Z)) - g(h~(X,Z),h~(Y,W)),
    /// with Rbar the printed ambient closed form for the kind.
    pub fn induced_curvature(
        &self,
        kind: ConnectionKind,
        params: &SpaceFormParams,
        x: &Vector,
        y: &Vector,
        z: &Vector,
        w: &Vector,
    ) -> Result<f64> {
        for v in [x, y, z, w] {
            self.ensure_tangent(v)?;
        }
        let ambient = self
            .acs
            .inner(&curvature_closed(kind, self.acs, params, x, y, z), w);
        let hxw = self.deformed_sff(kind, params, x, w)?;
        let hyz = self.deformed_sff(kind, params, y, z)?;
        let hxz = self.deformed_sff(kind, params, x, z)?;
        let hyw = self.deformed_sff(kind, params, y, w)?;
        Ok(ambient + self.acs.inner(&hxw, &hyz) - self.acs.inner(&hxz, &hyw))
    }

    /// Eigendecomposition of -T^2 on D = tangent complement of xi, with
    /// eigenvalues clamped to [0,1] and reported as lambda = sqrt(mu).
    pub fn asi_split(&self, tol: f64) -> Result<DistributionSplit> {
        let d = self.acs.dim();
        let g = &self.acs.g;
        // T as an ambient operator: project, apply phi, project
        let mut p = Matrix::zeros(d, d);
        for e in &self.tangent_frame {
            p += e * (g.entries() * e).transpose();
        }
        let t = &p * &self.acs.phi * &p;
        let minus_t2 = -(&t * &t);
        let d_basis = &self.tangent_frame[..self.m()];
        if d_basis.is_empty() {
            return Ok(DistributionSplit { clusters: vec![] });
        }
        let spectrum = symmetric_spectrum(&minus_t2, d_basis, g, tol)?;
        let clusters = spectrum
            .into_iter()
            .map(|c| {
                let mu = c.eigenvalue.clamp(0.0, 1.0);
                let lambda = mu.sqrt();
                let class = if (mu - 1.0).abs() <= tol.max(1e-12) {
                    ClusterClass::Invariant
                } else if mu.abs() <= tol.max(1e-12) {
                    ClusterClass::AntiInvariant
                } else {
                    ClusterClass::Slant
                };
                DistributionCluster {
                    lambda,
                    multiplicity: c.eigenvectors.len(),
                    basis: c.eigenvectors,
                    class,
                }
            })
            .collect();
        let split = DistributionSplit { clusters };
        debug_assert_eq!(split.total_multiplicity(), self.m());
        Ok(split)
    }

    /// Random unit vector in the tangent span.
    pub fn random_tangent(&self, sampler: &mut Sampler) -> Vector {
        let coeffs = sampler.unit_vector(self.m() + 1);
        let mut out = Vector::zeros(self.acs.dim());
        for (c, e) in coeffs.iter().zip(&self.tangent_frame) {
            out += e * *c;
        }
        out
    }
}

/// Residual report for the slant identity
/// g(TX,TY) = sum_lambda lambda^2 g(U^l X, U^l Y).
#[derive(Debug, Clone, Serialize)]
pub struct SlantReport {
    pub trials: usize,
    pub max_residual: f64,
    pub pass: bool,
}

pub fn verify_slant_identity(
    sub: &Submanifold,
    split: &DistributionSplit,
    sampler: &mut Sampler,
    trials: usize,
    tol: f64,
) -> SlantReport {
    let g = &sub.acs.g;
    let mut max_residual = 0.0f64;
    for _ in 0..trials {
        let x = sub.random_tangent(sampler);
        let y = sub.random_tangent(sampler);
        let lhs = g.inner(&sub.t_apply(&x), &sub.t_apply(&y));
        let mut rhs = 0.0;
        for (ci, c) in split.clusters.iter().enumerate() {
            rhs +=
                c.lambda * c.lambda * g.inner(&split.project(ci, g, &x), &split.project(ci, g, &y));
        }
        max_residual = max_residual.max((lhs - rhs).abs());
    }
    SlantReport {
        trials,
        max_residual,
        pass: max_residual <= tol,
    }
}

/// Symmetric coefficients with every trace removed, so the result is minimal
/// for all five connections.
pub fn random_minimal_sff(sub: &Submanifold, sampler: &mut Sampler) -> SecondFundamentalForm {
    let mp1 = sub.m() + 1;
    let nf = sub.normal_count();
    let coeffs = sampler.symmetric_coeffs(mp1, nf);
    let mut sff =
        SecondFundamentalForm::from_coeffs(mp1, nf, coeffs).expect("symmetric by construction");
    for k in 0..nf {
        let trace: f64 = (0..mp1).map(|i| sff.get(i, i, k)).sum();
        for i in 0..mp1 {
            let v = sff.get(i, i, k) - trace / mp1 as f64;
            sff.set(i, i, k, v);
        }
    }
    sff
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::canonical_structure;

    fn p(f1: f64, f2: f64, f3: f64) -> SpaceFormParams {
        SpaceFormParams::new(f1, f2, f3)
    }

    fn e(acs: &AlmostContactStructure, i: usize) -> Vector {
        acs.basis_vector(i)
    }

    #[test]
    fn build_invariant_sub() {
        let acs = canonical_structure(2).unwrap();
        let span = vec![e(&acs, 0), e(&acs, 2), acs.xi.clone()];
        let sub = Submanifold::build(&acs, &span, None).unwrap();
        assert_eq!(sub.m(), 2);
        assert_eq!(sub.normal_count(), 2);
        assert!((sub.tangent_frame.last().unwrap() - &acs.xi).norm() < 1e-14);
        // normal frame spans {e2, e4}
        for f in &sub.normal_frame {
            assert!(f[0].abs() < 1e-12 && f[2].abs() < 1e-12 && f[4].abs() < 1e-12);
        }
    }

    #[test]
    fn build_requires_xi() {
        let acs = canonical_structure(2).unwrap();
        let span = vec![e(&acs, 0), e(&acs, 1)];
        assert!(matches!(
            Submanifold::build(&acs, &span, None),
            Err(Error::XiNotTangent)
        ));
    }

    #[test]
    fn build_anti_invariant_sub() {
        let acs = canonical_structure(2).unwrap();
        let span = vec![e(&acs, 0), e(&acs, 3), acs.xi.clone()];
        let sub = Submanifold::build(&acs, &span, None).unwrap();
        // phi e1 = e3 and phi e4 = -e2 are both normal
        for x in [e(&acs, 0), e(&acs, 3)] {
            assert!(sub.t_apply(&x).norm() < 1e-12);
        }
    }

    #[test]
    fn build_rejects_asymmetric_sff() {
        let acs = canonical_structure(2).unwrap();
        let span = vec![e(&acs, 0), e(&acs, 2), acs.xi.clone()];
        let mut coeffs = vec![0.0; 3 * 3 * 2];
        coeffs[2] = 1.0; // h[0][1][0] without the mirror
        assert!(SecondFundamentalForm::from_coeffs(3, 2, coeffs.clone()).is_err());
        coeffs[6] = 1.0; // h[1][0][0]
        let sff = SecondFundamentalForm::from_coeffs(3, 2, coeffs).unwrap();
        assert!(Submanifold::build(&acs, &span, Some(sff)).is_ok());
    }

    #[test]
    fn build_rejects_wrong_shape() {
        let acs = canonical_structure(2).unwrap();
        let span = vec![e(&acs, 0), e(&acs, 2), acs.xi.clone()];
        let sff = SecondFundamentalForm::zeros(4, 2);
        assert!(matches!(
            Submanifold::build(&acs, &span, Some(sff)),
            Err(Error::SffShape { .. })
        ));
    }

    #[test]
    fn shape_operator_examples() {
        let acs = canonical_structure(2).unwrap();
        let span = vec![e(&acs, 0), e(&acs, 2), acs.xi.clone()];
        let sub = Submanifold::build(&acs, &span, None).unwrap();
        assert!(sub.shape_operator(0).unwrap().abs().max() == 0.0);
        assert!(sub.shape_operator(5).is_err());

        let mut sff = SecondFundamentalForm::zeros(3, 2);
        sff.set(0, 0, 0, 1.0);
        let sub = Submanifold::build(&acs, &span, Some(sff)).unwrap();
        let a1 = sub.shape_operator(0).unwrap();
        let mut e1c = Vector::zeros(3);
        e1c[0] = 1.0;
        let mut e2c = Vector::zeros(3);
        e2c[1] = 1.0;
        assert!((&a1 * &e1c - e1c).norm() < 1e-14);
        assert!((&a1 * &e2c).norm() < 1e-14);
        // symmetry of h makes A_k self-adjoint on the frame
        let mut s = Sampler::new(41);
        let sff = random_minimal_sff(&sub, &mut s);
        let sub = Submanifold::build(&acs, &span, Some(sff)).unwrap();
        for k in 0..2 {
            let a = sub.shape_operator(k).unwrap();
            assert!((&a - a.transpose()).abs().max() <= 1e-12);
        }
    }

    #[test]
    fn deformed_sff_cases() {
        let acs = canonical_structure(2).unwrap();
        // invariant sub, h = 0: every kind vanishes
        let inv =
            Submanifold::build(&acs, &[e(&acs, 0), e(&acs, 2), acs.xi.clone()], None).unwrap();
        let params = p(1.7, 0.3, -0.4);
        for kind in ConnectionKind::ALL {
            for ei in &inv.tangent_frame {
                for ej in &inv.tangent_frame {
                    assert!(inv.deformed_sff(kind, &params, ei, ej).unwrap().norm() < 1e-12);
                }
            }
        }
        // anti-invariant sub, psi = 1: the Schouten-van Kampen form picks up
        // eta(Y) F X and is visibly non-symmetric
        let anti =
            Submanifold::build(&acs, &[e(&acs, 0), e(&acs, 3), acs.xi.clone()], None).unwrap();
        let params = p(1.0, 0.0, 0.0);
        let h1 = anti
            .deformed_sff(
                ConnectionKind::SchoutenVanKampen,
                &params,
                &e(&acs, 0),
                &acs.xi.clone(),
            )
            .unwrap();
        assert!((h1 - e(&acs, 2)).norm() < 1e-13);
        let h2 = anti
            .deformed_sff(
                ConnectionKind::SchoutenVanKampen,
                &params,
                &acs.xi.clone(),
                &e(&acs, 0),
            )
            .unwrap();
        assert!(h2.norm() < 1e-13);
        // the semisymmetric-metric deformation stays tangent: h~ = h
        let mut s = Sampler::new(42);
        let sff = random_minimal_sff(&anti, &mut s);
        let anti =
            Submanifold::build(&acs, &[e(&acs, 0), e(&acs, 3), acs.xi.clone()], Some(sff)).unwrap();
        for _ in 0..20 {
            let x = anti.random_tangent(&mut s);
            let y = anti.random_tangent(&mut s);
            let lhs = anti
                .deformed_sff(ConnectionKind::SemisymmetricMetric, &params, &x, &y)
                .unwrap();
            assert!((lhs - anti.lc_sff(&x, &y)).norm() <= 1e-12);
        }
        // rejects non-tangent input
        assert!(anti
            .deformed_sff(
                ConnectionKind::LeviCivita,
                &params,
                &e(&acs, 1),
                &acs.xi.clone()
            )
            .is_err());
    }

    #[test]
    fn mean_curvature_cases() {
        let acs = canonical_structure(2).unwrap();
        let span = vec![e(&acs, 0), e(&acs, 2), acs.xi.clone()];
        let zero = Submanifold::build(&acs, &span, None).unwrap();
        let params = p(0.8, -1.2, 0.1);
        for kind in ConnectionKind::ALL {
            assert!(zero.mean_curvature(kind, &params).norm() < 1e-13);
        }
        // h(E_i, E_j) = delta_ij F_1 gives H = F_1
        let mut sff = SecondFundamentalForm::zeros(3, 2);
        for i in 0..3 {
            sff.set(i, i, 0, 1.0);
        }
        let sub = Submanifold::build(&acs, &span, Some(sff)).unwrap();
        let h = sub.mean_curvature(ConnectionKind::LeviCivita, &params);
        assert!((h - &sub.normal_frame[0]).norm() < 1e-13);
        // deformed mean curvature equals the Levi-Civita one
        let mut s = Sampler::new(43);
        let span2 = vec![e(&acs, 0), e(&acs, 3), acs.xi.clone()];
        let mut sff = SecondFundamentalForm::zeros(3, 2);
        for i in 0..3 {
            for j in i..3 {
                for k in 0..2 {
                    sff.set(i, j, k, s.scalar(-1.0, 1.0));
                }
            }
        }
        let sub = Submanifold::build(&acs, &span2, Some(sff)).unwrap();
        let lc = sub.mean_curvature(ConnectionKind::LeviCivita, &params);
        for kind in ConnectionKind::ALL {
            let hk = sub.mean_curvature(kind, &params);
            assert!((hk - &lc).norm() <= 1e-12, "{kind:?}");
        }
    }

    #[test]
    fn classify_cases() {
        let acs = canonical_structure(2).unwrap();
        let params = p(1.0, 0.0, 0.0); // psi = 1
        let inv =
            Submanifold::build(&acs, &[e(&acs, 0), e(&acs, 2), acs.xi.clone()], None).unwrap();
        for kind in ConnectionKind::ALL {
            assert_eq!(
                inv.classify_sff(kind, &params, 1e-10),
                SffClass::TotallyGeodesic
            );
        }
        let anti =
            Submanifold::build(&acs, &[e(&acs, 0), e(&acs, 3), acs.xi.clone()], None).unwrap();
        assert_eq!(
            anti.classify_sff(ConnectionKind::SchoutenVanKampen, &params, 1e-10),
            SffClass::Minimal
        );
        let mut s = Sampler::new(44);
        let sff = random_minimal_sff(&anti, &mut s);
        let anti =
            Submanifold::build(&acs, &[e(&acs, 0), e(&acs, 3), acs.xi.clone()], Some(sff)).unwrap();
        assert_eq!(
            anti.classify_sff(ConnectionKind::LeviCivita, &params, 1e-10),
            SffClass::Minimal
        );
    }

    #[test]
    fn induced_curvature_pinned() {
        let acs = canonical_structure(2).unwrap();
        let span = vec![e(&acs, 0), e(&acs, 2), acs.xi.clone()];
        let sub = Submanifold::build(&acs, &span, None).unwrap();
        let params = p(1.0, 0.0, 0.0);
        let (e1, e3) = (e(&acs, 0), e(&acs, 2));
        let r = sub
            .induced_curvature(ConnectionKind::LeviCivita, &params, &e1, &e3, &e3, &e1)
            .unwrap();
        assert!((r - 1.0).abs() < 1e-13);

        // h(e1,e1) = F1, h(e3,e3) = -F1 cancels it by the Gauss equation
        let mut sff = SecondFundamentalForm::zeros(3, 2);
        sff.set(0, 0, 0, 1.0);
        sff.set(1, 1, 0, -1.0);
        let sub = Submanifold::build(&acs, &span, Some(sff)).unwrap();
        let r = sub
            .induced_curvature(ConnectionKind::LeviCivita, &params, &e1, &e3, &e3, &e1)
            .unwrap();
        assert!(r.abs() < 1e-13);

        let zero = Submanifold::build(&acs, &span, None).unwrap();
        let r = zero
            .induced_curvature(
                ConnectionKind::LeviCivita,
                &p(0.0, 0.0, 0.0),
                &e1,
                &e3,
                &e3,
                &e1,
            )
            .unwrap();
        assert!(r.abs() < 1e-14);

        assert!(zero
            .induced_curvature(
                ConnectionKind::LeviCivita,
                &params,
                &e(&acs, 1),
                &e3,
                &e3,
                &e1
            )
            .is_err());
    }

    #[test]
    fn asi_split_cases() {
        let acs = canonical_structure(2).unwrap();
        let inv =
            Submanifold::build(&acs, &[e(&acs, 0), e(&acs, 2), acs.xi.clone()], None).unwrap();
        let split = inv.asi_split(1e-8).unwrap();
        assert_eq!(split.clusters.len(), 1);
        assert_eq!(split.clusters[0].class, ClusterClass::Invariant);
        assert_eq!(split.clusters[0].multiplicity, 2);
        assert!((split.clusters[0].lambda - 1.0).abs() < 1e-12);

        let anti =
            Submanifold::build(&acs, &[e(&acs, 0), e(&acs, 3), acs.xi.clone()], None).unwrap();
        let split = anti.asi_split(1e-8).unwrap();
        assert_eq!(split.clusters.len(), 1);
        assert_eq!(split.clusters[0].class, ClusterClass::AntiInvariant);
        assert!(split.clusters[0].lambda.abs() < 1e-12);

        // slant plane at 60 degrees: lambda = 1/2
        let u = e(&acs, 1) * (3.0f64.sqrt() / 2.0) + e(&acs, 2) * 0.5;
        let slant = Submanifold::build(&acs, &[e(&acs, 0), u, acs.xi.clone()], None).unwrap();
        let split = slant.asi_split(1e-8).unwrap();
        assert_eq!(split.clusters.len(), 1);
        assert_eq!(split.clusters[0].class, ClusterClass::Slant);
        assert!((split.clusters[0].lambda - 0.5).abs() < 1e-12);
        assert_eq!(split.clusters[0].multiplicity, 2);
    }

    #[test]
    fn asi_split_mixed_two_clusters() {
        let acs = canonical_structure(3).unwrap();
        let v = e(&acs, 4) * 0.5 + e(&acs, 5) * (3.0f64.sqrt() / 2.0);
        let span = vec![e(&acs, 0), e(&acs, 3), e(&acs, 1), v, acs.xi.clone()];
        let sub = Submanifold::build(&acs, &span, None).unwrap();
        assert_eq!(sub.m(), 4);
        let split = sub.asi_split(1e-8).unwrap();
        assert_eq!(split.clusters.len(), 2);
        assert!((split.clusters[0].lambda - 1.0).abs() < 1e-12);
        assert!((split.clusters[1].lambda - 0.5).abs() < 1e-12);
        assert_eq!(split.clusters[0].multiplicity, 2);
        assert_eq!(split.clusters[1].multiplicity, 2);
    }

    #[test]
    fn slant_identity_cases() {
        let acs = canonical_structure(2).unwrap();
        let u = e(&acs, 1) * (3.0f64.sqrt() / 2.0) + e(&acs, 2) * 0.5;
        let slant = Submanifold::build(&acs, &[e(&acs, 0), u, acs.xi.clone()], None).unwrap();
        let split = slant.asi_split(1e-8).unwrap();
        let e1 = e(&acs, 0);
        let te1 = slant.t_apply(&e1);
        assert!((acs.inner(&te1, &te1) - 0.25).abs() < 1e-13);
        let txi = slant.t_apply(&acs.xi.clone());
        assert!(txi.norm() < 1e-13);

        let mut s = Sampler::new(45);
        let report = verify_slant_identity(&slant, &split, &mut s, 200, 1e-10);
        assert!(report.pass, "residual {}", report.max_residual);
    }

    #[test]
    fn f_norm_per_cluster() {
        // |F X|^2 = (1 - lambda^2) |X|^2 within a single cluster
        let acs = canonical_structure(3).unwrap();
        let v = e(&acs, 4) * 0.5 + e(&acs, 5) * (3.0f64.sqrt() / 2.0);
        let span = vec![e(&acs, 0), e(&acs, 3), e(&acs, 1), v, acs.xi.clone()];
        let sub = Submanifold::build(&acs, &span, None).unwrap();
        let split = sub.asi_split(1e-8).unwrap();
        let mut s = Sampler::new(46);
        for c in &split.clusters {
            for _ in 0..100 {
                let mut x = Vector::zeros(acs.dim());
                for b in &c.basis {
                    x += b * s.scalar(-1.0, 1.0);
                }
                let fx = sub.f_apply(&x);
                let want = (1.0 - c.lambda * c.lambda) * acs.inner(&x, &x);
                assert!((acs.inner(&fx, &fx) - want).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn t_is_skew_and_projectors_resolve() {
        let acs = canonical_structure(3).unwrap();
        let mut s = Sampler::new(47);
        let raw = vec![
            s.unit_vector(7),
            s.unit_vector(7),
            s.unit_vector(7),
            acs.xi.clone(),
        ];
        let sub = Submanifold::build(&acs, &raw, None).unwrap();
        let split = sub.asi_split(1e-8).unwrap();
        for _ in 0..100 {
            let x = sub.random_tangent(&mut s);
            let y = sub.random_tangent(&mut s);
            assert!(
                (acs.inner(&sub.t_apply(&x), &y) + acs.inner(&x, &sub.t_apply(&y))).abs() <= 1e-12
            );
            let mut resolved = Vector::zeros(7);
            for ci in 0..split.clusters.len() {
                resolved += split.project(ci, &acs.g, &x);
            }
            let want = &x - &acs.xi * acs.eta(&x);
            assert!((resolved - want).norm() <= 1e-10);
        }
    }

    #[test]
    fn random_minimal_sff_is_minimal_for_all_kinds() {
        let acs = canonical_structure(3).unwrap();
        let mut s = Sampler::new(48);
        let raw = vec![s.unit_vector(7), s.unit_vector(7), acs.xi.clone()];
        let probe = Submanifold::build(&acs, &raw, None).unwrap();
        let sff = random_minimal_sff(&probe, &mut s);
        let sub = Submanifold::build(&acs, &raw, Some(sff)).unwrap();
        let params = p(1.4, -0.8, 0.3);
        for k in 0..sub.normal_count() {
            let a = sub.shape_operator(k).unwrap();
            assert!(a.trace().abs() <= 1e-12);
        }
        for kind in ConnectionKind::ALL {
            assert!(sub.mean_curvature(kind, &params).norm() <= 1e-12);
        }
    }

    #[test]
    fn gauss_consistency_for_zero_sff() {
        // with h~ = 0 the induced curvature equals the ambient closed form
        let acs = canonical_structure(2).unwrap();
        let inv =
            Submanifold::build(&acs, &[e(&acs, 0), e(&acs, 2), acs.xi.clone()], None).unwrap();
        let mut s = Sampler::new(49);
        for kind in ConnectionKind::ALL {
            for _ in 0..20 {
                let params = p(
                    s.scalar(-2.0, 2.0),
                    s.scalar(-2.0, 2.0),
                    s.scalar(-2.0, 2.0),
                );
                let (x, y, z, w) = (
                    inv.random_tangent(&mut s),
                    inv.random_tangent(&mut s),
                    inv.random_tangent(&mut s),
                    inv.random_tangent(&mut s),
                );
                let induced = inv
                    .induced_curvature(kind, &params, &x, &y, &z, &w)
                    .unwrap();
                let ambient = acs.inner(&curvature_closed(kind, &acs, &params, &x, &y, &z), &w);
                assert!((induced - ambient).abs() <= 1e-12);
            }
        }
    }
}
