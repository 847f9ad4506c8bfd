//! Instance and module file formats.
//!
//! Both documents are UTF-8 JSON with an explicit `format` version tag.
//! Scalars serialize as decimal strings, so integer width is never
//! ambiguous. Serialization is canonical — field order is fixed and the
//! structure table is sorted — and `parse` followed by `to_json` is the
//! identity on canonical documents.

use crate::algebra::{validate_algebra, AlgebraError, AlgebraSpec, BasisElement, GradedAlgebra};
use crate::group::{ActionError, FiniteGroup, GroupAction, GroupError};
use crate::matrix::Matrix;
use crate::module::{ModuleError, PresentedModule};
use crate::ring::{BaseRing, Scalar};
use serde::{Deserialize, Serialize};

pub const INSTANCE_FORMAT: &str = "gradext-instance/1";
pub const MODULE_FORMAT: &str = "gradext-module/1";

/// Errors raised while reading a document.
#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Parse(String),
    #[error("unsupported format tag {got:?}, expected {want:?}")]
    Format { got: String, want: &'static str },
    #[error("algebra axioms failed: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("group table invalid: {0}")]
    Group(#[from] GroupError),
    #[error("group action invalid: {0}")]
    Action(#[from] ActionError),
    #[error("module presentation invalid: {0}")]
    Module(#[from] ModuleError),
    #[error("document has an action section but no group section")]
    ActionWithoutGroup,
    #[error("document has a group section but no action section")]
    GroupWithoutAction,
    #[error("action matrix {index} is not {n}x{n}")]
    ActionShape { index: usize, n: usize },
}

/// A finite group as a name list and a multiplication table;
/// `table[g][h]` is the index of `g * h` and index 0 is the identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<Scalar>> {
    (0..m.rows()).map(|r| m.row(r)).collect()
}

fn matrix_from_rows(
    base: &BaseRing,
    n: usize,
    rows: &[Vec<Scalar>],
    index: usize,
) -> Result<Matrix, DocumentError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(DocumentError::ActionShape { index, n });
    }
    Ok(Matrix::from_fn(base, n, n, |r, c| rows[r][c].clone()))
}

fn realize_action(
    algebra_base: &BaseRing,
    rank: usize,
    group: &Option<GroupDocument>,
    action: &Option<Vec<Vec<Vec<Scalar>>>>,
) -> Result<Option<(FiniteGroup, Vec<Matrix>)>, DocumentError> {
    match (group, action) {
        (None, None) => Ok(None),
        (None, Some(_)) => Err(DocumentError::ActionWithoutGroup),
        (Some(_), None) => Err(DocumentError::GroupWithoutAction),
        (Some(g), Some(mats)) => {
            let group = FiniteGroup::validate(g.names.clone(), g.table.clone())?;
            let matrices = mats
                .iter()
                .enumerate()
                .map(|(i, rows)| matrix_from_rows(algebra_base, rank, rows, i))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Some((group, matrices)))
        }
    }
}

/// A graded algebra instance, optionally with a group action.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub format: String,
    pub base: BaseRing,
    pub basis: Vec<BasisElement>,
    pub unit: Vec<Scalar>,
    pub structure: Vec<(usize, usize, usize, Scalar)>,
    pub commutative: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDocument>,
    /// One matrix per group element, as rows of entries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<Vec<Scalar>>>>,
}

impl InstanceDocument {
    pub fn from_algebra(algebra: &GradedAlgebra, action: Option<&GroupAction>) -> InstanceDocument {
        let spec = algebra.to_spec();
        InstanceDocument {
            format: INSTANCE_FORMAT.to_string(),
            base: spec.base,
            basis: spec.basis,
            unit: spec.unit,
            structure: spec.structure,
            commutative: spec.commutative,
            group: action.map(|a| GroupDocument {
                names: a.group.names.clone(),
                table: a.group.table.clone(),
            }),
            action: action.map(|a| a.matrices.iter().map(matrix_rows).collect()),
        }
    }

    pub fn parse(text: &str) -> Result<InstanceDocument, DocumentError> {
        let doc: InstanceDocument =
            serde_json::from_str(text).map_err(|e| DocumentError::Parse(e.to_string()))?;
        if doc.format != INSTANCE_FORMAT {
            return Err(DocumentError::Format {
                got: doc.format,
                want: INSTANCE_FORMAT,
            });
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    /// Validate the document into a live algebra and optional action.
    pub fn realize(&self) -> Result<(GradedAlgebra, Option<GroupAction>), DocumentError> {
        let spec = AlgebraSpec {
            base: self.base.clone(),
            basis: self.basis.clone(),
            unit: self.unit.clone(),
            structure: self.structure.clone(),
            commutative: self.commutative,
        };
        let algebra = validate_algebra(&spec)?;
        let action = match realize_action(algebra.base(), algebra.rank(), &self.group, &self.action)? {
            None => None,
            Some((group, matrices)) => {
                Some(GroupAction::validate(group, &algebra, matrices, false)?)
            }
        };
        Ok((algebra, action))
    }
}

/// A finitely presented graded module, optionally with a group action on
/// its generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleDocument {
    pub format: String,
    pub base: BaseRing,
    pub generator_degrees: Vec<i64>,
    /// Relation columns; each column has one entry per generator.
    pub relations: Vec<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<Vec<Scalar>>>>,
}

impl ModuleDocument {
    pub fn from_module(module: &PresentedModule) -> ModuleDocument {
        let relations = (0..module.relations().cols())
            .map(|c| module.relations().column(c))
            .collect();
        ModuleDocument {
            format: MODULE_FORMAT.to_string(),
            base: module.base().clone(),
            generator_degrees: module.generator_degrees().to_vec(),
            relations,
            group: None,
            action: None,
        }
    }

    pub fn parse(text: &str) -> Result<ModuleDocument, DocumentError> {
        let doc: ModuleDocument =
            serde_json::from_str(text).map_err(|e| DocumentError::Parse(e.to_string()))?;
        if doc.format != MODULE_FORMAT {
            return Err(DocumentError::Format {
                got: doc.format,
                want: MODULE_FORMAT,
            });
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn realize(&self) -> Result<PresentedModule, DocumentError> {
        let gens = self.generator_degrees.len();
        for (i, col) in self.relations.iter().enumerate() {
            if col.len() != gens {
                return Err(DocumentError::Parse(format!(
                    "relation column {i} has {} entries, expected {gens}",
                    col.len()
                )));
            }
        }
        let relations = Matrix::from_columns(&self.base, gens, &self.relations);
        Ok(PresentedModule::new(
            self.base.clone(),
            self.generator_degrees.clone(),
            relations,
        )?)
    }

    /// The group and action matrices, when present.
    pub fn realize_action(&self) -> Result<Option<(FiniteGroup, Vec<Matrix>)>, DocumentError> {
        realize_action(
            &self.base,
            self.generator_degrees.len(),
            &self.group,
            &self.action,
        )
    }
}
