//! Dense linear/multilinear algebra over a fixed inner-product space, plus
//! the deterministic sampler used by every randomized check.
//!
//! Everything here is frame-contracted: subspaces are always carried as
//! explicit g-orthonormal bases in ambient coordinates, never as abstract
//! handles.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

/// Post-projection norm below which a vector is dropped by Gram-Schmidt.
pub const DEFAULT_DROP_TOL: f64 = 1e-8;
/// Default tolerance for residual comparisons.
pub const DEFAULT_COMPARE_TOL: f64 = 1e-9;
/// Orthonormality slack accepted when a basis is consumed, not produced.
pub const BASIS_CHECK_TOL: f64 = 1e-8;

/// Symmetric positive-definite inner product.
#[derive(Debug, Clone)]
pub struct Metric {
    entries: Matrix,
}

impl Metric {
    pub fn new(entries: Matrix) -> Result<Self> {
        let (r, c) = entries.shape();
        if r != c {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: c,
            });
        }
        let sym_residual = (&entries - entries.transpose()).abs().max();
        if sym_residual > 1e-12 {
            return Err(Error::NotPositiveDefinite);
        }
        let eig = entries.clone().symmetric_eigen();
        if eig.eigenvalues.iter().any(|&ev| ev <= 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Self { entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: Matrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn inner(&self, a: &Vector, b: &Vector) -> f64 {
        (a.transpose() * &self.entries * b)[(0, 0)]
    }

    pub fn norm(&self, a: &Vector) -> f64 {
        self.inner(a, a).max(0.0).sqrt()
    }
}

/// Gram-Schmidt with drop: returns a g-orthonormal sequence spanning the same
/// subspace, preserving order of first appearance. Vectors whose
/// post-projection g-norm falls below `tol` are dropped.
pub fn orthonormalize(vectors: &[Vector], g: &Metric, tol: f64) -> Result<Vec<Vector>> {
    if vectors.is_empty() {
        return Err(Error::EmptySpan);
    }
    let d = vectors[0].len();
    let mut basis: Vec<Vector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: v.len(),
            });
        }
        let mut w = v.clone();
        // two passes keep orthogonality near machine precision
        for _ in 0..2 {
            for b in &basis {
                let c = g.inner(&w, b);
                w -= b * c;
            }
        }
        let n = g.norm(&w);
        if n >= tol {
            basis.push(w / n);
        }
    }
    if basis.is_empty() {
        return Err(Error::EmptySpan);
    }
    Ok(basis)
}

fn gram_residual(basis: &[Vector], g: &Metric) -> f64 {
    let mut worst = 0.0f64;
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g.inner(bi, bj) - want).abs());
        }
    }
    worst
}

/// Orthogonal projection onto span(basis): sum_i g(v, b_i) b_i.
pub fn project(v: &Vector, basis: &[Vector], g: &Metric) -> Result<Vector> {
    let residual = gram_residual(basis, g);
    if residual > BASIS_CHECK_TOL {
        return Err(Error::NotOrthonormal { residual });
    }
    let mut out = Vector::zeros(v.len());
    for b in basis {
        out += b * g.inner(v, b);
    }
    Ok(out)
}

/// One eigenvalue cluster of a g-self-adjoint operator restricted to a span.
#[derive(Debug, Clone)]
pub struct SpectralCluster {
    pub eigenvalue: f64,
    pub eigenvectors: Vec<Vector>,
}

/// Eigendecomposition of `a` restricted to span(basis), clustered by the
/// absolute gap `tol` and sorted by descending eigenvalue.
///
/// The restriction must be g-self-adjoint and must map the span into itself,
/// both to tolerance `tol`; the offending residual is reported otherwise.
pub fn symmetric_spectrum(
    a: &Matrix,
    basis: &[Vector],
    g: &Metric,
    tol: f64,
) -> Result<Vec<SpectralCluster>> {
    if basis.is_empty() {
        return Err(Error::EmptySpan);
    }
    let residual = gram_residual(basis, g);
    if residual > BASIS_CHECK_TOL {
        return Err(Error::NotOrthonormal { residual });
    }
    let k = basis.len();
    let mut restricted = Matrix::zeros(k, k);
    for (j, bj) in basis.iter().enumerate() {
        let abj = a * bj;
        for (i, bi) in basis.iter().enumerate() {
            restricted[(i, j)] = g.inner(&abj, bi);
        }
        // invariance: A b_j must be reproduced by its span components
        let mut back = Vector::zeros(bj.len());
        for (i, bi) in basis.iter().enumerate() {
            back += bi * restricted[(i, j)];
        }
        let inv_residual = g.norm(&(abj - back));
        if inv_residual > tol {
            return Err(Error::NotInvariant {
                residual: inv_residual,
            });
        }
    }
    let adj_residual = (&restricted - restricted.transpose()).abs().max();
    if adj_residual > tol {
        return Err(Error::NotSelfAdjoint {
            residual: adj_residual,
        });
    }

    let sym = (&restricted + restricted.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).unwrap());

    let mut clusters: Vec<SpectralCluster> = Vec::new();
    let mut last_value = f64::INFINITY;
    for &idx in &order {
        let value = eig.eigenvalues[idx];
        let mut vec = Vector::zeros(basis[0].len());
        for (i, bi) in basis.iter().enumerate() {
            vec += bi * eig.eigenvectors[(i, idx)];
        }
        if (last_value - value).abs() <= tol {
            clusters.last_mut().unwrap().eigenvectors.push(vec);
        } else {
            clusters.push(SpectralCluster {
                eigenvalue: value,
                eigenvectors: vec![vec],
            });
        }
        last_value = value;
    }

    for cluster in &clusters {
        for v in &cluster.eigenvectors {
            let res = g.norm(&(a * v - v * cluster.eigenvalue));
            if res > 10.0 * tol {
                return Err(Error::NotInvariant { residual: res });
            }
        }
    }
    Ok(clusters)
}

/// Deterministic sampler: identical seed and call sequence reproduce identical
/// outputs bit-exactly. Parallel trials derive independent samplers from
/// (seed, trial index) instead of sharing one.
#[derive(Debug, Clone)]
pub struct Sampler {
    seed: u64,
    counter: u64,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            counter: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for trial `index` of a run seeded with `seed`.
    pub fn derive(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index.wrapping_add(1));
        Self {
            seed,
            counter: 0,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn counter(&self) -> u64 {
        self.counter
    }

    pub fn unit_vector(&mut self, d: usize) -> Vector {
        self.counter += 1;
        loop {
            let v = Vector::from_fn(d, |_, _| self.rng.sample::<f64, _>(StandardNormal));
            let n = v.norm();
            if n > 1e-6 {
                return v / n;
            }
        }
    }

    pub fn scalar(&mut self, lo: f64, hi: f64) -> f64 {
        assert!(lo < hi, "scalar range requires lo < hi");
        self.counter += 1;
        lo + (hi - lo) * self.rng.gen::<f64>()
    }

    /// Symmetric coefficients c[i][j][k] = c[j][i][k], entries uniform in
    /// [-1, 1], flattened as i*frame*normals + j*normals + k.
    pub fn symmetric_coeffs(&mut self, frame: usize, normals: usize) -> Vec<f64> {
        self.counter += 1;
        let mut c = vec![0.0; frame * frame * normals];
        for i in 0..frame {
            for j in i..frame {
                for k in 0..normals {
                    let v = -1.0 + 2.0 * self.rng.gen::<f64>();
                    c[(i * frame + j) * normals + k] = v;
                    c[(j * frame + i) * normals + k] = v;
                }
            }
        }
        c
    }
}
