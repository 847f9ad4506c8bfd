//! Galois theory of a finite extension: fixed subrings, the classifying
//! map `h: B (x)_A B -> prod_G B`, Galois certificates, traces, and dual
//! bases.
//!
//! Throughout, `B` is a finite free `A`-algebra with a finite group `G`
//! acting by automorphisms. The extension is Galois exactly when the fixed
//! subring is `A` itself and `h(x (x) y) = (x * g(y))_g` is bijective; the
//! certificate stores an explicit inverse matrix for `h` and is rechecked
//! from scratch, so a verified certificate does not depend on trusting the
//! solver.

use crate::algebra::{GradedAlgebra, TensorSquare};
use crate::group::GroupAction;
use crate::matrix::{Matrix, MatrixError};
use crate::ring::Scalar;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GaloisError {
    #[error("action matrices do not match the algebra rank")]
    ShapeMismatch,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Basis of the fixed subring `B^G`, as columns fixed by every group
/// element, together with whether that subring is exactly `A * 1`.
#[derive(Clone, Debug, Serialize)]
pub struct FixedSubring {
    /// Spanning set of the kernel of `(M(g) - I)_g`, one coordinate vector
    /// per generator.
    pub generators: Vec<Vec<Scalar>>,
    /// True when every generator is a base-ring multiple of the unit.
    pub is_base: bool,
}

/// Compute the fixed subring `B^G` as the kernel of the stacked maps
/// `M(g) - I`, and decide whether it equals `A * 1`.
///
/// A generator lies in `A * 1` when it solves `unit * t = generator` for a
/// base scalar `t`; stacking the unit as a one-column matrix makes that a
/// linear question.
pub fn fixed_subring(algebra: &GradedAlgebra, action: &GroupAction) -> Result<FixedSubring, GaloisError> {
    let ring = algebra.base();
    let n = algebra.rank();
    let identity = Matrix::identity(ring, n);
    let mut stacked: Option<Matrix> = None;
    for g in 0..action.order() {
        let m = action.matrix(g);
        if m.rows() != n || m.cols() != n {
            return Err(GaloisError::ShapeMismatch);
        }
        let diff = m.sub(&identity)?;
        stacked = Some(match stacked {
            None => diff,
            Some(s) => s.vstack(&diff)?,
        });
    }
    let stacked = stacked.unwrap_or_else(|| Matrix::zero(ring, 0, n));
    let kernel = stacked.kernel_basis();
    let unit_column = Matrix::from_columns(ring, n, &[algebra.unit().to_vec()]);
    let mut generators = Vec::new();
    let mut is_base = true;
    for col in 0..kernel.cols() {
        let gen = kernel.column(col);
        if unit_column.solve(&gen).is_none() {
            is_base = false;
        }
        generators.push(gen);
    }
    Ok(FixedSubring { generators, is_base })
}

/// The map `h: B (x)_A B -> prod_{g in G} B` sending `x (x) y` to the tuple
/// `(x * g(y))_g`, as a `(|G| * n) x n^2` matrix. Rows are grouped by group
/// element in index order; the block for `g` has column `(i, j)` equal to
/// `e_i * g(e_j)`.
pub fn h_map(algebra: &GradedAlgebra, action: &GroupAction) -> Result<Matrix, GaloisError> {
    let ring = algebra.base();
    let n = algebra.rank();
    let square = TensorSquare::new(algebra, false);
    let mut blocks: Vec<Matrix> = Vec::with_capacity(action.order());
    for g in 0..action.order() {
        let mut cols = Vec::with_capacity(square.rank());
        for idx in 0..square.rank() {
            let (i, j) = square.pair(idx);
            let gj = action.matrix(g).column(j);
            let product = algebra
                .multiply(&algebra.basis_vector(i), &gj)
                .expect("rank-checked");
            cols.push(product);
        }
        blocks.push(Matrix::from_columns(ring, n, &cols));
    }
    let mut out = blocks[0].clone();
    for b in &blocks[1..] {
        out = out.vstack(b)?;
    }
    Ok(out)
}

/// Certificate that an extension with action is Galois: the fixed subring
/// is the base, and `h` is bijective with an explicit inverse.
#[derive(Clone, Debug, Serialize)]
pub struct GaloisCertificate {
    pub fixed_subring_is_base: bool,
    pub h_bijective: bool,
    /// Inverse of `h` as a matrix, present when `h` is bijective and square.
    pub h_inverse: Option<Matrix>,
    /// Diagnostic: invariant factors of coker(h) when not bijective.
    pub failure_diagnostic: Option<String>,
}

/// Outcome of the Galois check.
#[derive(Clone, Debug, Serialize)]
pub struct GaloisReport {
    pub is_galois: bool,
    pub fixed: FixedSubring,
    pub certificate: Option<GaloisCertificate>,
    /// Why the check failed, when it did.
    pub failure: Option<String>,
}

/// Decide whether the action makes `B / A` a Galois extension, producing a
/// certificate that is rechecked before being returned.
///
/// `h` is bijective over a commutative base exactly when it is square
/// (`|G| * n = n^2`) and its Smith normal form has all-unit diagonal. The
/// returned inverse is `v * d^{-1} * u`, rechecked by multiplying against
/// `h` on both sides.
pub fn is_galois(algebra: &GradedAlgebra, action: &GroupAction) -> Result<GaloisReport, GaloisError> {
    let fixed = fixed_subring(algebra, action)?;
    let h = h_map(algebra, action)?;
    let ring = algebra.base();

    let square_shape = h.rows() == h.cols();
    let mut h_bijective = false;
    let mut h_inverse = None;
    let mut failure_diagnostic = None;

    if square_shape {
        let snf = h.smith_normal_form();
        let diag = snf.diagonal();
        let all_units = diag.len() == h.rows() && diag.iter().all(|d| ring.is_unit(d));
        if all_units {
            // inverse = v * d^{-1} * u.
            let mut d_inv = Matrix::zero(ring, h.cols(), h.rows());
            for (k, dk) in diag.iter().enumerate() {
                let inv = ring.inv(dk).expect("unit diagonal");
                d_inv.set(k, k, inv);
            }
            let candidate = snf.v.mul(&d_inv)?.mul(&snf.u)?;
            let left = candidate.mul(&h)?;
            let right = h.mul(&candidate)?;
            if left.is_identity() && right.is_identity() {
                h_bijective = true;
                h_inverse = Some(candidate);
            } else {
                failure_diagnostic =
                    Some("computed inverse failed recheck".to_string());
            }
        } else {
            failure_diagnostic = Some(format!(
                "h is square but not invertible: SNF diagonal {:?}",
                diag.iter().map(|d| d.to_decimal()).collect::<Vec<_>>()
            ));
        }
    } else {
        failure_diagnostic = Some(format!(
            "h is {}x{}, not square: |G| * rank != rank^2",
            h.rows(),
            h.cols()
        ));
    }

    let is_galois = fixed.is_base && h_bijective;
    let failure = if is_galois {
        None
    } else {
        let mut reasons = Vec::new();
        if !fixed.is_base {
            reasons.push("fixed subring is larger than the base".to_string());
        }
        if !h_bijective {
            reasons.push(
                failure_diagnostic
                    .clone()
                    .unwrap_or_else(|| "h is not bijective".to_string()),
            );
        }
        Some(reasons.join("; "))
    };

    let certificate = Some(GaloisCertificate {
        fixed_subring_is_base: fixed.is_base,
        h_bijective,
        h_inverse,
        failure_diagnostic,
    });

    Ok(GaloisReport {
        is_galois,
        fixed,
        certificate,
        failure,
    })
}

/// The trace map `tr(x) = sum_g g(x)`, as an `n x n` matrix.
pub fn trace_matrix(action: &GroupAction) -> Result<Matrix, GaloisError> {
    let mut out: Option<Matrix> = None;
    for g in 0..action.order() {
        let m = action.matrix(g).clone();
        out = Some(match out {
            None => m,
            Some(s) => s.add(&m)?,
        });
    }
    Ok(out.expect("group has at least the identity"))
}

/// A dual basis for the trace form: pairs `(x_i, y_i)` with
/// `sum_i tr(z * y_i) * x_i = z` for all `z`.
#[derive(Clone, Debug, Serialize)]
pub struct DualBasis {
    /// Pairs of coordinate vectors `(x_i, y_i)`.
    pub pairs: Vec<(Vec<Scalar>, Vec<Scalar>)>,
    /// The preimage `h^{-1}(delta_e)` that produced the pairs, as tensor
    /// coordinates.
    pub tensor_coords: Vec<Scalar>,
}

/// Compute a dual basis for a Galois extension from the inverse of `h`.
///
/// The target tuple is `delta_e`: the unit of `B` in the identity block and
/// zero elsewhere. Its preimage `xi = h^{-1}(delta_e) = sum x_i (x) y_i`
/// satisfies `sum_i x_i * g(y_i) = delta_{g,e}`, which is exactly the dual
/// basis property for the trace form. The formula is rechecked on every
/// basis vector before returning.
pub fn dual_basis(
    algebra: &GradedAlgebra,
    action: &GroupAction,
    certificate: &GaloisCertificate,
) -> Result<Option<DualBasis>, GaloisError> {
    let Some(h_inv) = &certificate.h_inverse else {
        return Ok(None);
    };
    let ring = algebra.base();
    let n = algebra.rank();
    let order = action.order();

    // delta_e: unit coordinates in the identity element's block.
    let mut target = vec![ring.zero(); order * n];
    let id_block = action.group.identity() * n;
    for (k, c) in algebra.unit().iter().enumerate() {
        target[id_block + k] = c.clone();
    }
    let xi = h_inv.mul_vec(&target)?;

    let square = TensorSquare::new(algebra, false);
    let mut pairs = Vec::new();
    for i in 0..n {
        let mut y = vec![ring.zero(); n];
        let mut any = false;
        for j in 0..n {
            let c = &xi[square.index(i, j)];
            if !c.is_zero() {
                any = true;
            }
            y[j] = c.clone();
        }
        if any {
            pairs.push((algebra.basis_vector(i), y));
        }
    }

    // Recheck: for every basis z, sum_i tr(z * y_i) * x_i = z. The scalar
    // tr(z * y_i) must itself be a base multiple of the unit; extract it by
    // solving against the unit column.
    let tr = trace_matrix(action)?;
    let unit_column = Matrix::from_columns(ring, n, &[algebra.unit().to_vec()]);
    for z_idx in 0..n {
        let z = algebra.basis_vector(z_idx);
        let mut total = vec![ring.zero(); n];
        for (x, y) in &pairs {
            let zy = algebra.multiply(&z, y).expect("rank-checked");
            let traced = tr.mul_vec(&zy)?;
            let Some(scalar) = unit_column.solve(&traced) else {
                return Ok(None);
            };
            total = algebra.add(&total, &algebra.scale(&scalar[0], x));
        }
        if total != z {
            return Ok(None);
        }
    }

    Ok(Some(DualBasis {
        pairs,
        tensor_coords: xi,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{validate_algebra, AlgebraSpec, BasisElement};
    use crate::group::FiniteGroup;
    use crate::ring::BaseRing;

    /// F_4 = F_2[w]/(w^2 + w + 1) over F_2 with Frobenius.
    fn f4_with_frobenius() -> (GradedAlgebra, GroupAction) {
        let f2 = BaseRing::prime_field(2).unwrap();
        let spec = AlgebraSpec {
            base: f2.clone(),
            basis: vec![
                BasisElement { name: "1".into(), degree: 0 },
                BasisElement { name: "w".into(), degree: 0 },
            ],
            unit: vec![f2.one(), f2.zero()],
            structure: vec![
                (0, 0, 0, f2.one()),
                (0, 1, 1, f2.one()),
                (1, 0, 1, f2.one()),
                // w^2 = w + 1.
                (1, 1, 0, f2.one()),
                (1, 1, 1, f2.one()),
            ],
            commutative: true,
        };
        let b = validate_algebra(&spec).unwrap();
        let c2 = FiniteGroup::cyclic(2);
        let id = Matrix::identity(&f2, 2);
        // Frobenius: w -> w^2 = 1 + w; 1 -> 1.
        let frob = Matrix::from_i64_rows(&f2, &[&[1, 1], &[0, 1]]);
        let action = GroupAction::validate(c2, &b, vec![id, frob], true).unwrap();
        (b, action)
    }

    #[test]
    fn frobenius_fixes_only_the_prime_field() {
        let (b, action) = f4_with_frobenius();
        let fixed = fixed_subring(&b, &action).unwrap();
        assert!(fixed.is_base);
        assert_eq!(fixed.generators.len(), 1);
    }

    #[test]
    fn f4_is_galois_with_verified_inverse() {
        let (b, action) = f4_with_frobenius();
        let report = is_galois(&b, &action).unwrap();
        assert!(report.is_galois, "failure: {:?}", report.failure);
        let cert = report.certificate.unwrap();
        assert!(cert.h_bijective);
        assert!(cert.h_inverse.is_some());
    }

    #[test]
    fn f4_dual_basis_matches_hand_computation() {
        let (b, action) = f4_with_frobenius();
        let report = is_galois(&b, &action).unwrap();
        let cert = report.certificate.unwrap();
        let dual = dual_basis(&b, &action, &cert).unwrap().expect("dual basis exists");
        // Hand computation: xi = 1 (x) 1 + 1 (x) w + w (x) 1 solves
        // h(xi) = (1, 0): at g = e, 1*1 + 1*w + w*1 = 1 + 2w = 1; at
        // g = Frobenius, 1*1 + 1*(1+w) + w*1 = 2 + 2w = 0.
        let square = TensorSquare::new(&b, false);
        let one = b.base().one();
        let mut expected = vec![b.base().zero(); 4];
        expected[square.index(0, 0)] = one.clone();
        expected[square.index(0, 1)] = one.clone();
        expected[square.index(1, 0)] = one.clone();
        assert_eq!(dual.tensor_coords, expected);
    }

    #[test]
    fn trivial_action_on_f4_is_not_galois() {
        let (b, _) = f4_with_frobenius();
        let f2 = b.base().clone();
        let c2 = FiniteGroup::cyclic(2);
        let id = Matrix::identity(&f2, 2);
        let action = GroupAction::validate(c2, &b, vec![id.clone(), id], false).unwrap();
        let report = is_galois(&b, &action).unwrap();
        assert!(!report.is_galois);
        // Fixed subring is all of F_4, strictly larger than F_2.
        assert!(!report.fixed.is_base);
    }
}
