//! Finite groups given by explicit multiplication tables, and their actions
//! on graded algebras by ring automorphisms.

use crate::algebra::GradedAlgebra;
use crate::matrix::Matrix;
use crate::ring::Scalar;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("multiplication table is not {size} x {size}")]
    BadTableShape { size: usize },
    #[error("table entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("identity element {identity} fails at {g}")]
    IdentityFails { identity: usize, g: usize },
    #[error("associativity fails at ({a}, {b}, {c})")]
    AssociativityFails { a: usize, b: usize, c: usize },
    #[error("element {g} has no inverse")]
    NoInverse { g: usize },
}

/// A finite group: element names and a full multiplication table, with
/// `table[g][h]` the index of the product `g * h`. Index 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validate the table: shape, closure, identity at index 0,
    /// associativity, inverses.
    pub fn validate(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup, GroupError> {
        let size = names.len();
        if table.len() != size || table.iter().any(|row| row.len() != size) {
            return Err(GroupError::BadTableShape { size });
        }
        for (r, row) in table.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(GroupError::EntryOutOfRange { row: r, col: c, value: v });
                }
            }
        }
        for g in 0..size {
            if table[0][g] != g || table[g][0] != g {
                return Err(GroupError::IdentityFails { identity: 0, g });
            }
        }
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::AssociativityFails { a, b, c });
                    }
                }
            }
        }
        for g in 0..size {
            if !(0..size).any(|h| table[g][h] == 0 && table[h][g] == 0) {
                return Err(GroupError::NoInverse { g });
            }
        }
        Ok(FiniteGroup { names, table })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order())
            .find(|&h| self.table[g][h] == 0)
            .expect("validated group has inverses")
    }

    /// The cyclic group of order `n`, elements `g^0 .. g^{n-1}`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1, "cyclic group needs positive order");
        let names = (0..n)
            .map(|i| if i == 0 { "e".to_string() } else { format!("g^{i}") })
            .collect();
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteGroup { names, table }
    }

    /// Direct product, elements ordered lexicographically.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let na = a.order();
        let nb = b.order();
        let mut names = Vec::with_capacity(na * nb);
        for i in 0..na {
            for j in 0..nb {
                names.push(format!("({},{})", a.names[i], b.names[j]));
            }
        }
        let idx = |i: usize, j: usize| i * nb + j;
        let mut table = vec![vec![0usize; na * nb]; na * nb];
        for i1 in 0..na {
            for j1 in 0..nb {
                for i2 in 0..na {
                    for j2 in 0..nb {
                        table[idx(i1, j1)][idx(i2, j2)] =
                            idx(a.mul(i1, i2), b.mul(j1, j2));
                    }
                }
            }
        }
        FiniteGroup { names, table }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ActionViolation {
    MatrixShape { g: usize },
    UnitNotFixed { g: usize },
    NotMultiplicative { g: usize, i: usize, j: usize },
    DegreeNotPreserved { g: usize, basis: usize },
    NotComposition { g: usize, h: usize },
    IdentityNotIdentity,
    NotInjective { g: usize, h: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("group action axioms violated: {0:?}")]
    Axioms(Vec<ActionViolation>),
    #[error("need one matrix per group element: got {got}, expected {expected}")]
    MatrixCount { got: usize, expected: usize },
}

/// A group acting on a graded algebra by degree-preserving ring
/// automorphisms, one matrix per group element in basis coordinates.
#[derive(Clone, Debug)]
pub struct GroupAction {
    pub group: FiniteGroup,
    pub matrices: Vec<Matrix>,
    /// Whether distinct group elements were required to act distinctly.
    pub faithfulness_checked: bool,
}

impl GroupAction {
    /// Validate matrices as a left action by graded ring automorphisms:
    /// each matrix fixes the unit, respects products and degrees; matrices
    /// compose along the group table (`M(g) M(h) = M(gh)`); the identity
    /// acts as the identity matrix; and, when `require_faithful` is set,
    /// distinct elements act by distinct matrices.
    ///
    /// Invertibility of each matrix is implied: `M(g) M(g^{-1}) = M(e) = I`.
    pub fn validate(
        group: FiniteGroup,
        algebra: &GradedAlgebra,
        matrices: Vec<Matrix>,
        require_faithful: bool,
    ) -> Result<GroupAction, ActionError> {
        let order = group.order();
        if matrices.len() != order {
            return Err(ActionError::MatrixCount {
                got: matrices.len(),
                expected: order,
            });
        }
        let n = algebra.rank();
        let _ring = algebra.base();
        let mut violations = Vec::new();

        for (g, m) in matrices.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                violations.push(ActionViolation::MatrixShape { g });
            }
        }
        if !violations.is_empty() {
            return Err(ActionError::Axioms(violations));
        }

        for (g, m) in matrices.iter().enumerate() {
            // Unit is fixed.
            let unit: Vec<Scalar> = algebra.unit().to_vec();
            if m.mul_vec(&unit).unwrap() != unit {
                violations.push(ActionViolation::UnitNotFixed { g });
            }
            // Degree preservation: image of a basis vector stays in its
            // degree component.
            for i in 0..n {
                let image = m.column(i);
                for (k, c) in image.iter().enumerate() {
                    if !c.is_zero() && algebra.degree(k) != algebra.degree(i) {
                        violations.push(ActionViolation::DegreeNotPreserved { g, basis: i });
                        break;
                    }
                }
            }
            // Multiplicativity on basis pairs: g(e_i e_j) = g(e_i) g(e_j).
            for i in 0..n {
                for j in 0..n {
                    let lhs = m.mul_vec(&algebra.basis_product(i, j)).unwrap();
                    let rhs = algebra
                        .multiply(&m.column(i), &m.column(j))
                        .expect("columns have algebra rank");
                    if lhs != rhs {
                        violations.push(ActionViolation::NotMultiplicative { g, i, j });
                    }
                }
            }
        }

        // Identity element acts as the identity matrix.
        if !matrices[group.identity()].is_identity() {
            violations.push(ActionViolation::IdentityNotIdentity);
        }

        // Left action: M(g) M(h) = M(g h).
        for g in 0..order {
            for h in 0..order {
                let prod = matrices[g].mul(&matrices[h]).expect("square same-size");
                if prod != matrices[group.mul(g, h)] {
                    violations.push(ActionViolation::NotComposition { g, h });
                }
            }
        }

        if require_faithful {
            for g in 0..order {
                for h in g + 1..order {
                    if matrices[g] == matrices[h] {
                        violations.push(ActionViolation::NotInjective { g, h });
                    }
                }
            }
        }

        if violations.is_empty() {
            Ok(GroupAction {
                group,
                matrices,
                faithfulness_checked: require_faithful,
            })
        } else {
            Err(ActionError::Axioms(violations))
        }
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    /// Apply a group element to an element of the algebra.
    pub fn apply(&self, g: usize, x: &[Scalar]) -> Vec<Scalar> {
        self.matrices[g].mul_vec(x).expect("length checked by caller")
    }
}
