//! Kähler differentials of a commutative extension: the augmentation ideal
//! `I = ker(mu: B (x)_A B -> B)`, the module of differentials `I / I^2`
//! with its universal derivation, and witnesses that it is nonzero.
//!
//! Everything is computed degree by degree so that generators, relations,
//! and witnesses stay homogeneous.

use crate::algebra::{AlgebraError, GradedAlgebra, TensorSquare};
use crate::matrix::Matrix;
use crate::module::{ModuleError, PresentedModule};
use crate::ring::Scalar;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DifferentialsError {
    #[error("differentials are defined here only for commutative algebras")]
    NotCommutative,
    #[error("a homogeneous element of the ideal failed to lie in the span of its generators")]
    IdealSpanBroken,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Module generators of the augmentation ideal `ker mu`, one homogeneous
/// column per generator.
#[derive(Clone, Debug)]
pub struct AugmentationIdeal {
    /// `n^2 x m` matrix whose columns span the kernel of `mu`.
    pub generators: Matrix,
    /// Total degree of each generator column.
    pub degrees: Vec<i64>,
}

/// Compute module generators of `ker mu`, degree by degree: for each total
/// degree the kernel of the corresponding block of `mu` is computed
/// separately, so every generator column is homogeneous.
pub fn augmentation_ideal(algebra: &GradedAlgebra) -> AugmentationIdeal {
    let ring = algebra.base();
    let ts = TensorSquare::new(algebra, false);
    let rank = ts.rank();

    let mut totals: Vec<i64> = (0..rank).map(|idx| ts.total_degree(idx)).collect();
    let mut degrees_present = totals.clone();
    degrees_present.sort_unstable();
    degrees_present.dedup();

    let mu = ts.mu_matrix();
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    let mut degrees: Vec<i64> = Vec::new();

    for &t in &degrees_present {
        let idxs: Vec<usize> = (0..rank).filter(|&i| totals[i] == t).collect();
        let block = mu.select_columns(&idxs);
        let kernel = block.kernel_basis();
        for c in 0..kernel.cols() {
            let small = kernel.column(c);
            let mut full = vec![ring.zero(); rank];
            for (slot, &idx) in idxs.iter().enumerate() {
                full[idx] = small[slot].clone();
            }
            columns.push(full);
            degrees.push(t);
        }
    }
    totals.clear();

    AugmentationIdeal {
        generators: Matrix::from_columns(ring, rank, &columns),
        degrees,
    }
}

impl AugmentationIdeal {
    /// Express a homogeneous element of the ideal in the generators of its
    /// degree, returning full-length coefficient coordinates.
    pub fn express(&self, target: &[Scalar], degree: i64) -> Option<Vec<Scalar>> {
        let ring = self.generators.ring();
        let idxs: Vec<usize> = (0..self.degrees.len())
            .filter(|&c| self.degrees[c] == degree)
            .collect();
        let block = self.generators.select_columns(&idxs);
        let small = block.solve(target)?;
        let mut full = vec![ring.zero(); self.degrees.len()];
        for (slot, &c) in idxs.iter().enumerate() {
            full[c] = small[slot].clone();
        }
        Some(full)
    }
}

/// The module of differentials of a commutative extension, presented by
/// the generators of the augmentation ideal modulo its square, together
/// with the universal derivation.
#[derive(Clone, Debug)]
pub struct KaehlerModule {
    /// `I / I^2` as a finitely presented graded module.
    pub module: PresentedModule,
    pub ideal: AugmentationIdeal,
    /// `m x n` matrix; column `k` is `d(e_k)` in ideal-generator
    /// coordinates.
    pub derivation: Matrix,
}

/// Build `I / I^2` with its universal derivation `d(b) = b (x) 1 - 1 (x) b`.
///
/// Relations come in two homogeneous families: syzygies among the ideal
/// generators (computed per degree), and expressions of the pairwise
/// products of generators (which span `I^2` because the generators span `I`
/// as a module and multiplication is bilinear).
pub fn kaehler_module(algebra: &GradedAlgebra) -> Result<KaehlerModule, DifferentialsError> {
    if !algebra.is_commutative() {
        return Err(DifferentialsError::NotCommutative);
    }
    let ring = algebra.base();
    let ts = TensorSquare::new(algebra, false);
    let ideal = augmentation_ideal(algebra);
    let m = ideal.degrees.len();

    let mut relation_columns: Vec<Vec<Scalar>> = Vec::new();

    // Syzygies among the generators, degree by degree.
    let mut distinct = ideal.degrees.clone();
    distinct.sort_unstable();
    distinct.dedup();
    for &t in &distinct {
        let idxs: Vec<usize> = (0..m).filter(|&c| ideal.degrees[c] == t).collect();
        let block = ideal.generators.select_columns(&idxs);
        let syzygies = block.kernel_basis();
        for c in 0..syzygies.cols() {
            let small = syzygies.column(c);
            let mut full = vec![ring.zero(); m];
            for (slot, &idx) in idxs.iter().enumerate() {
                full[idx] = small[slot].clone();
            }
            relation_columns.push(full);
        }
    }

    // Products of generator pairs span I^2.
    for i in 0..m {
        for j in i..m {
            let gi = ideal.generators.column(i);
            let gj = ideal.generators.column(j);
            let product = ts.multiply(&gi, &gj);
            if product.iter().all(Scalar::is_zero) {
                continue;
            }
            let coords = ideal
                .express(&product, ideal.degrees[i] + ideal.degrees[j])
                .ok_or(DifferentialsError::IdealSpanBroken)?;
            relation_columns.push(coords);
        }
    }

    let relations = Matrix::from_columns(ring, m, &relation_columns);
    let module = PresentedModule::new(ring.clone(), ideal.degrees.clone(), relations)?;

    // Universal derivation on basis elements.
    let unit = algebra.unit().to_vec();
    let mut derivation_cols = Vec::with_capacity(algebra.rank());
    for k in 0..algebra.rank() {
        let b = algebra.basis_vector(k);
        let db = sub_vec(ring, &ts.tensor_of(&b, &unit), &ts.tensor_of(&unit, &b));
        let coords = ideal
            .express(&db, algebra.degree(k))
            .ok_or(DifferentialsError::IdealSpanBroken)?;
        derivation_cols.push(coords);
    }
    let derivation = Matrix::from_columns(ring, m, &derivation_cols);

    Ok(KaehlerModule {
        module,
        ideal,
        derivation,
    })
}

fn sub_vec(ring: &crate::ring::BaseRing, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| ring.sub(x, y)).collect()
}

impl KaehlerModule {
    /// `u * d(v)` for basis elements, in ideal-generator coordinates: the
    /// class of `(u (x) 1) * (v (x) 1 - 1 (x) v)`.
    pub fn action_on_derivation(
        &self,
        algebra: &GradedAlgebra,
        u: usize,
        v: usize,
    ) -> Result<Vec<Scalar>, DifferentialsError> {
        let ring = algebra.base();
        let ts = TensorSquare::new(algebra, false);
        let unit = algebra.unit().to_vec();
        let ub = algebra.basis_vector(u);
        let vb = algebra.basis_vector(v);
        let dv = sub_vec(ring, &ts.tensor_of(&vb, &unit), &ts.tensor_of(&unit, &vb));
        let product = ts.multiply(&ts.tensor_of(&ub, &unit), &dv);
        self.ideal
            .express(&product, algebra.degree(u) + algebra.degree(v))
            .ok_or(DifferentialsError::IdealSpanBroken)
    }

    /// Check the Leibniz rule `d(uv) = u dv + v du` in the quotient for one
    /// basis pair.
    pub fn leibniz_holds(
        &self,
        algebra: &GradedAlgebra,
        u: usize,
        v: usize,
    ) -> Result<bool, DifferentialsError> {
        let ring = algebra.base();
        let ts = TensorSquare::new(algebra, false);
        let unit = algebra.unit().to_vec();
        let ub = algebra.basis_vector(u);
        let vb = algebra.basis_vector(v);
        let uv = algebra.multiply(&ub, &vb)?;
        let duv = sub_vec(ring, &ts.tensor_of(&uv, &unit), &ts.tensor_of(&unit, &uv));
        // d is degree-preserving; uv is homogeneous of the combined degree.
        let degree = algebra.degree(u) + algebra.degree(v);
        let duv_coords = self
            .ideal
            .express(&duv, degree)
            .ok_or(DifferentialsError::IdealSpanBroken)?;
        let u_dv = self.action_on_derivation(algebra, u, v)?;
        let v_du = self.action_on_derivation(algebra, v, u)?;
        let mut defect = duv_coords;
        for (slot, value) in defect.iter_mut().enumerate() {
            *value = ring.sub(value, &ring.add(&u_dv[slot], &v_du[slot]));
        }
        Ok(self.module.element_is_zero(&defect)?)
    }
}

/// A homogeneous generator of the differentials module that is nonzero in
/// the quotient.
#[derive(Clone, Debug, Serialize)]
pub struct NontrivialityWitness {
    pub degree: i64,
    /// Index of the witnessing ideal generator.
    pub generator: usize,
    /// Its representative in tensor-square coordinates.
    pub tensor_representative: Vec<Scalar>,
}

/// Find a homogeneous class demonstrating that the differentials module is
/// nonzero, or return `None` when it is zero.
///
/// Generators are scanned by degree — positive degrees ascending, then
/// negative degrees descending from `-1`, then degree zero — so the witness
/// sits as close to degree zero as possible. If every generator class
/// vanishes the module itself is zero, since the generator classes span it.
pub fn nontrivial_class(
    algebra: &GradedAlgebra,
) -> Result<Option<NontrivialityWitness>, DifferentialsError> {
    let km = kaehler_module(algebra)?;
    let m = km.ideal.degrees.len();
    let ring = algebra.base();

    let mut order: Vec<i64> = Vec::new();
    let mut positives: Vec<i64> = km.ideal.degrees.iter().copied().filter(|&d| d > 0).collect();
    positives.sort_unstable();
    positives.dedup();
    let mut negatives: Vec<i64> = km.ideal.degrees.iter().copied().filter(|&d| d < 0).collect();
    negatives.sort_unstable();
    negatives.dedup();
    negatives.reverse();
    order.extend(positives);
    order.extend(negatives);
    if km.ideal.degrees.contains(&0) {
        order.push(0);
    }

    for d in order {
        for g in 0..m {
            if km.ideal.degrees[g] != d {
                continue;
            }
            let mut coords = vec![ring.zero(); m];
            coords[g] = ring.one();
            if !km.module.element_is_zero(&coords)? {
                return Ok(Some(NontrivialityWitness {
                    degree: d,
                    generator: g,
                    tensor_representative: km.ideal.generators.column(g),
                }));
            }
        }
    }
    Ok(None)
}
