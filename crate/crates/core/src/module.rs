//! Finitely presented modules over a base ring, graded by generator degrees.
//!
//! A module is a cokernel: generators are the rows of the relation matrix,
//! relation columns are the columns. Isomorphism testing goes through Smith
//! normal form invariant factors, which are a complete invariant over `Z`,
//! `Z/n`, and prime fields.

use crate::matrix::{kernel_basis, smith_normal_form, solve, Matrix};
use crate::ring::{BaseRing, Scalar};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("relation matrix has {matrix_rows} rows but there are {generators} generators")]
    ShapeMismatch { matrix_rows: usize, generators: usize },
    #[error("relation column {column} touches generators of different degrees ({left} and {right})")]
    InhomogeneousRelation { column: usize, left: i64, right: i64 },
    #[error("modules live over different base rings")]
    RingMismatch,
    #[error("element has length {got}, expected one coordinate per generator ({expected})")]
    BadElementLength { got: usize, expected: usize },
}

/// A finitely presented module: `base^g / column-span(relations)`, with a
/// degree attached to each generator. Every relation column must be
/// degree-homogeneous.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedModule {
    base: BaseRing,
    generator_degrees: Vec<i64>,
    relations: Matrix,
}

impl PresentedModule {
    pub fn new(
        base: BaseRing,
        generator_degrees: Vec<i64>,
        relations: Matrix,
    ) -> Result<PresentedModule, ModuleError> {
        if relations.rows() != generator_degrees.len() {
            return Err(ModuleError::ShapeMismatch {
                matrix_rows: relations.rows(),
                generators: generator_degrees.len(),
            });
        }
        for col in 0..relations.cols() {
            let mut seen: Option<i64> = None;
            for row in 0..relations.rows() {
                if relations.get(row, col).is_zero() {
                    continue;
                }
                let d = generator_degrees[row];
                match seen {
                    None => seen = Some(d),
                    Some(prev) if prev != d => {
                        return Err(ModuleError::InhomogeneousRelation {
                            column: col,
                            left: prev,
                            right: d,
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(PresentedModule {
            base,
            generator_degrees,
            relations,
        })
    }

    /// An ungraded module: all generators sit in degree 0.
    pub fn ungraded(base: BaseRing, generators: usize, relations: Matrix) -> Result<PresentedModule, ModuleError> {
        PresentedModule::new(base, vec![0; generators], relations)
    }

    /// The free module of the given rank (no relations).
    pub fn free(base: BaseRing, degrees: Vec<i64>) -> PresentedModule {
        let relations = Matrix::zero(&base, degrees.len(), 0);
        PresentedModule {
            base,
            generator_degrees: degrees,
            relations,
        }
    }

    /// `Z/d` (or `base/(d)`) on a single generator of degree 0.
    pub fn cyclic(base: BaseRing, d: i64) -> PresentedModule {
        let relations = Matrix::from_i64_rows(&base, &[&[d]]);
        PresentedModule {
            base,
            generator_degrees: vec![0],
            relations,
        }
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    pub fn generators(&self) -> usize {
        self.generator_degrees.len()
    }

    pub fn generator_degrees(&self) -> &[i64] {
        &self.generator_degrees
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    /// True when the module is trivial: the relation columns span all of
    /// `base^g`, detected by a fully-unit Smith diagonal.
    pub fn is_zero(&self) -> bool {
        let g = self.generators();
        if g == 0 {
            return true;
        }
        let snf = smith_normal_form(&self.relations);
        snf.unit_count() == g
    }

    /// True when the element (coordinates over the generators) maps to zero
    /// in the quotient, i.e. lies in the span of the relation columns.
    pub fn element_is_zero(&self, coords: &[Scalar]) -> Result<bool, ModuleError> {
        if coords.len() != self.generators() {
            return Err(ModuleError::BadElementLength {
                got: coords.len(),
                expected: self.generators(),
            });
        }
        Ok(matches!(solve(&self.relations, coords), Ok(Some(_))))
    }

    /// Invariant factors: a complete isomorphism invariant of the underlying
    /// module (degrees are not part of the fingerprint).
    pub fn invariant_factors(&self) -> InvariantFactors {
        let snf = smith_normal_form(&self.relations);
        let diag = snf.diagonal();
        let g = self.generators();
        match self.base.modulus() {
            None => {
                let mut torsion: Vec<BigInt> = Vec::new();
                let mut covered = 0usize;
                for e in &diag {
                    if e.is_zero() {
                        break;
                    }
                    covered += 1;
                    if !e.is_one() {
                        torsion.push(e.as_bigint().clone());
                    }
                }
                InvariantFactors {
                    free_rank: g - covered,
                    torsion,
                }
            }
            Some(n) => {
                // Each generator contributes a cyclic factor base/(d) with d a
                // divisor of the modulus; uncovered generators contribute a
                // full base/(0) = base factor, recorded as d = n.
                let mut torsion: Vec<BigInt> = Vec::new();
                for i in 0..g {
                    let d = diag.get(i).cloned().unwrap_or_else(|| self.base.zero());
                    if d.is_one() {
                        continue;
                    }
                    if d.is_zero() {
                        torsion.push(n.clone());
                    } else {
                        torsion.push(d.as_bigint().clone());
                    }
                }
                torsion.sort();
                InvariantFactors {
                    free_rank: 0,
                    torsion,
                }
            }
        }
    }

    /// Direct sum, concatenating generators and block-summing relations.
    pub fn direct_sum(&self, other: &PresentedModule) -> Result<PresentedModule, ModuleError> {
        if self.base != other.base {
            return Err(ModuleError::RingMismatch);
        }
        let mut degrees = self.generator_degrees.clone();
        degrees.extend_from_slice(&other.generator_degrees);
        let top = self
            .relations
            .hstack(&Matrix::zero(&self.base, self.generators(), other.relations.cols()))
            .expect("shape");
        let bottom = Matrix::zero(&self.base, other.generators(), self.relations.cols())
            .hstack(&other.relations)
            .expect("shape");
        let relations = top.vstack(&bottom).expect("shape");
        PresentedModule::new(self.base.clone(), degrees, relations)
    }
}

/// Serialize big integers as decimal strings, matching scalar encoding.
mod decimal_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|n| n.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .into_iter()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|e| serde::de::Error::custom(format!("bad factor {t:?}: {e}")))
            })
            .collect()
    }
}

/// SNF invariant factors of a finitely presented module: a free rank plus a
/// divisibility chain of torsion factors (each `d` standing for `base/(d)`).
/// Over a modular base the free rank is folded into factors equal to the
/// modulus, so equality of fingerprints is equivalence of modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantFactors {
    pub free_rank: usize,
    #[serde(with = "decimal_strings")]
    pub torsion: Vec<BigInt>,
}

impl InvariantFactors {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("free^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("cyclic({t})"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Tensor product `M (x) N` over the base ring: generators are pairs (indexed
/// `i * g_N + j`) with added degrees; relations are `rel(M) (x) id` and
/// `id (x) rel(N)`.
pub fn tensor_modules(m: &PresentedModule, n: &PresentedModule) -> Result<PresentedModule, ModuleError> {
    if m.base() != n.base() {
        return Err(ModuleError::RingMismatch);
    }
    let base = m.base().clone();
    let gm = m.generators();
    let gn = n.generators();
    let mut degrees = Vec::with_capacity(gm * gn);
    for dm in m.generator_degrees() {
        for dn in n.generator_degrees() {
            degrees.push(dm + dn);
        }
    }
    let id_m = Matrix::identity(&base, gm);
    let id_n = Matrix::identity(&base, gn);
    let left = m.relations().kronecker(&id_n);
    let right = id_m.kronecker(n.relations());
    let relations = left.hstack(&right).expect("same row count");
    PresentedModule::new(base, degrees, relations)
}

/// The syzygy presentation of the submodule spanned by the columns of
/// `gens` inside a free module: generators are the columns, relations are the
/// dependencies among them.
pub fn span_presentation(base: &BaseRing, gens: &Matrix, degrees: Vec<i64>) -> Result<PresentedModule, ModuleError> {
    let syzygies = kernel_basis(gens);
    PresentedModule::new(base.clone(), degrees, syzygies)
}
