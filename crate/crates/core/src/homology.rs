//! Homological machinery over the exact base rings: free resolutions of
//! presented modules, Tor in each homological degree, graded Tor of graded
//! modules, and group cohomology through the bar cochain complex.
//!
//! All homology is computed by one subquotient routine that works with
//! presentations throughout, so it is correct over `Z/n` as well as over
//! `Z` and prime fields (where relations never vanish from sight). Nothing
//! special-cases homological degree zero.

use crate::group::FiniteGroup;
use crate::matrix::{Matrix, MatrixError};
use crate::module::{InvariantFactors, ModuleError, PresentedModule};
use crate::ring::{BaseRing, Scalar};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("a boundary failed to lie in the span of the cycles: {0}")]
    SpanBroken(String),
    #[error("group does not act on the module: {0}")]
    BadAction(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A free resolution `... -> F_2 -> F_1 -> F_0 -> M -> 0`, stored as the
/// list of differentials; `differentials[0]` is the presentation matrix of
/// `M` itself.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub base: BaseRing,
    /// `ranks[i]` is the rank of `F_i`.
    pub ranks: Vec<usize>,
    /// `differentials[i]` maps `F_{i+1} -> F_i`.
    pub differentials: Vec<Matrix>,
    /// Whether the resolution reached a zero kernel (and is therefore a
    /// complete resolution rather than a truncation).
    pub complete: bool,
}

/// Resolve a module by iterated kernels: each next differential is a
/// spanning matrix of the kernel of the previous one. Over `Z` and over
/// fields this terminates by itself; over `Z/n` resolutions can be
/// periodic, so `max_steps` truncates.
pub fn free_resolution(module: &PresentedModule, max_steps: usize) -> Resolution {
    let base = module.base().clone();
    let mut ranks = vec![module.generators()];
    let mut differentials = vec![module.relations().clone()];
    ranks.push(differentials[0].cols());
    let mut complete = false;
    while differentials.len() < max_steps {
        let last = differentials.last().unwrap();
        if last.cols() == 0 {
            complete = true;
            break;
        }
        let next = last.kernel_basis();
        if next.cols() == 0 {
            complete = true;
            break;
        }
        ranks.push(next.cols());
        differentials.push(next);
    }
    if let Some(last) = differentials.last() {
        if last.cols() == 0 || last.kernel_basis().cols() == 0 {
            complete = true;
        }
    }
    Resolution {
        base,
        ranks,
        differentials,
        complete,
    }
}

impl Resolution {
    /// The differential `F_{i+1} -> F_i`, a zero-width matrix beyond the
    /// stored length.
    pub fn differential(&self, i: usize) -> Matrix {
        if i < self.differentials.len() {
            self.differentials[i].clone()
        } else {
            let rows = self.ranks.get(i).copied().unwrap_or(0);
            Matrix::zero(&self.base, rows, 0)
        }
    }

    /// Check that consecutive differentials compose to zero and that every
    /// kernel element of one differential lies in the image of the next.
    pub fn verify(&self) -> bool {
        for i in 0..self.differentials.len() {
            let d_i = &self.differentials[i];
            let d_next = self.differential(i + 1);
            if d_next.cols() > 0 {
                let composite = d_i.mul(&d_next).expect("chain shapes");
                if !composite.is_zero() {
                    return false;
                }
            }
            if i + 1 < self.differentials.len() || self.complete {
                let kernel = d_i.kernel_basis();
                for c in 0..kernel.cols() {
                    if d_next.solve(&kernel.column(c)).is_none() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Homology of `ker(out) / im(inn)` where both maps act between modules
/// presented with relations: the source of `out` carries
/// `relations_here`, the target of `out` carries `relations_next`.
///
/// Cycles are the solutions of `out(x) in span(relations_next)`, computed
/// as the projection of the kernel of `[out | -relations_next]`.
/// Boundaries are the columns of `inn` together with `relations_here`;
/// each is expressed in the cycle generators and those expressions,
/// together with the syzygies of the cycle matrix, present the homology.
fn middle_homology(
    out: &Matrix,
    inn: &Matrix,
    relations_here: &Matrix,
    relations_next: &Matrix,
) -> Result<PresentedModule, HomologyError> {
    let ring = out.ring().clone();
    let ambient = out.cols();

    let slack = if relations_next.cols() > 0 {
        let negated = relations_next.scale(&ring.neg(&ring.one()));
        out.hstack(&negated)?
    } else {
        out.clone()
    };
    let big_kernel = slack.kernel_basis();
    let mut cycle_cols: Vec<Vec<Scalar>> = Vec::new();
    for c in 0..big_kernel.cols() {
        let full = big_kernel.column(c);
        let projected: Vec<Scalar> = full[..ambient].to_vec();
        if projected.iter().any(|s| !s.is_zero()) {
            cycle_cols.push(projected);
        }
    }
    let cycles = Matrix::from_columns(&ring, ambient, &cycle_cols);
    let z = cycles.cols();

    let mut relation_cols: Vec<Vec<Scalar>> = Vec::new();

    // Syzygies among the cycle generators.
    let syzygies = cycles.kernel_basis();
    for c in 0..syzygies.cols() {
        relation_cols.push(syzygies.column(c));
    }

    // Boundaries and ambient relations, expressed in the cycles.
    for (label, w) in [("boundary", inn), ("relation", relations_here)] {
        for c in 0..w.cols() {
            let col = w.column(c);
            if col.iter().all(Scalar::is_zero) {
                continue;
            }
            let coords = cycles.solve(&col).ok_or_else(|| {
                HomologyError::SpanBroken(format!("{label} column {c} not in cycle span"))
            })?;
            relation_cols.push(coords);
        }
    }

    let relations = Matrix::from_columns(&ring, z, &relation_cols);
    Ok(PresentedModule::new(ring, vec![0; z], relations)?)
}

/// `Tor_p(M, N)` as a presented module.
///
/// The resolution of `M` is tensored with `N`, keeping the relations of
/// `N` in every term (the terms are presented modules, not free ones), and
/// homology is taken with the subquotient routine. Degree `p = 0` runs
/// through exactly the same code path and recovers `M (x) N`.
pub fn tor(m: &PresentedModule, n: &PresentedModule, p: usize) -> Result<PresentedModule, HomologyError> {
    let ring = m.base().clone();
    let resolution = free_resolution(m, p + 2);
    let g_n = n.generators();
    let r_n = n.relations();

    // Rank of F_i (x) N in generators, and its relation matrix I (x) R_N.
    let rank_f = |i: usize| resolution.ranks.get(i).copied().unwrap_or(0);
    let term_relations = |i: usize| -> Matrix {
        let blocks = rank_f(i);
        Matrix::identity(&ring, blocks).kronecker(r_n)
    };
    let tensored = |i: usize| -> Matrix {
        // d_i (x) I_{g_N} : F_i (x) N -> F_{i-1} (x) N, where
        // differentials[i-1] stores d_i.
        resolution.differential(i).kronecker(&Matrix::identity(&ring, g_n))
    };

    // D_p : C_p -> C_{p-1}; for p = 0 the target is zero.
    let d_out = if p == 0 {
        Matrix::zero(&ring, 0, rank_f(0) * g_n)
    } else {
        tensored(p - 1)
    };
    let d_in = tensored(p);
    let rel_here = term_relations(p);
    let rel_next = if p == 0 {
        Matrix::zero(&ring, 0, 0)
    } else {
        term_relations(p - 1)
    };

    middle_homology(&d_out, &d_in, &rel_here, &rel_next)
}

/// One degree piece of a graded Tor computation.
#[derive(Clone, Debug, Serialize)]
pub struct GradedTorSummand {
    pub left_degree: i64,
    pub right_degree: i64,
    pub fingerprint: InvariantFactors,
}

/// The full degree-`q` piece: the direct sum over `i + j = q` of
/// `Tor_p(M_i, N_j)`.
#[derive(Clone, Debug)]
pub struct GradedTorPiece {
    pub degree: i64,
    pub module: PresentedModule,
    pub summands: Vec<GradedTorSummand>,
}

/// Extract the degree-`d` piece of a graded presented module as a module
/// in its own right (with all generators re-tagged to degree zero for
/// ungraded downstream computations the callers may do).
pub fn degree_piece(m: &PresentedModule, d: i64) -> PresentedModule {
    let keep: Vec<usize> = (0..m.generators())
        .filter(|&g| m.generator_degrees()[g] == d)
        .collect();
    let relations = m.relations();
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for c in 0..relations.cols() {
        let col = relations.column(c);
        let touches: Vec<usize> = (0..col.len()).filter(|&r| !col[r].is_zero()).collect();
        if touches.is_empty() {
            continue;
        }
        // Homogeneous columns sit entirely inside one degree.
        if touches.iter().all(|r| keep.contains(r)) {
            cols.push(keep.iter().map(|&r| col[r].clone()).collect());
        }
    }
    let relations = Matrix::from_columns(m.base(), keep.len(), &cols);
    PresentedModule::new(m.base().clone(), vec![0; keep.len()], relations)
        .expect("all degrees zero makes any relation homogeneous")
}

/// Graded `Tor_p(M, N)`: each bidegree pair contributes
/// `Tor_p(M_i, N_j)` in total degree `i + j`. Pieces are returned sorted by
/// degree, with per-pair fingerprints retained.
pub fn graded_tor(
    m: &PresentedModule,
    n: &PresentedModule,
    p: usize,
) -> Result<Vec<GradedTorPiece>, HomologyError> {
    let mut m_degrees: Vec<i64> = m.generator_degrees().to_vec();
    m_degrees.sort_unstable();
    m_degrees.dedup();
    let mut n_degrees: Vec<i64> = n.generator_degrees().to_vec();
    n_degrees.sort_unstable();
    n_degrees.dedup();

    let mut totals: Vec<i64> = Vec::new();
    for &i in &m_degrees {
        for &j in &n_degrees {
            totals.push(i + j);
        }
    }
    totals.sort_unstable();
    totals.dedup();

    let mut out = Vec::new();
    for q in totals {
        let mut piece: Option<PresentedModule> = None;
        let mut summands = Vec::new();
        for &i in &m_degrees {
            let j = q - i;
            if !n_degrees.contains(&j) {
                continue;
            }
            let m_i = degree_piece(m, i);
            let n_j = degree_piece(n, j);
            let t = tor(&m_i, &n_j, p)?;
            summands.push(GradedTorSummand {
                left_degree: i,
                right_degree: j,
                fingerprint: t.invariant_factors(),
            });
            let retagged = retag_degrees(&t, q);
            piece = Some(match piece {
                None => retagged,
                Some(acc) => acc.direct_sum(&retagged)?,
            });
        }
        let module = piece.unwrap_or_else(|| {
            PresentedModule::new(m.base().clone(), Vec::new(), Matrix::zero(m.base(), 0, 0))
                .expect("empty module")
        });
        out.push(GradedTorPiece {
            degree: q,
            module,
            summands,
        });
    }
    Ok(out)
}

fn retag_degrees(m: &PresentedModule, degree: i64) -> PresentedModule {
    PresentedModule::new(
        m.base().clone(),
        vec![degree; m.generators()],
        m.relations().clone(),
    )
    .expect("uniform degrees keep homogeneity")
}

/// A finite group acting linearly on a presented module: one matrix per
/// group element in generator coordinates. The axioms are only required to
/// hold modulo the relations, and the relation span must be preserved.
#[derive(Clone, Debug)]
pub struct GModule {
    pub group: FiniteGroup,
    pub module: PresentedModule,
    pub action: Vec<Matrix>,
}

impl GModule {
    pub fn validate(
        group: FiniteGroup,
        module: PresentedModule,
        action: Vec<Matrix>,
    ) -> Result<GModule, HomologyError> {
        let g_count = group.order();
        if action.len() != g_count {
            return Err(HomologyError::BadAction(format!(
                "need {g_count} matrices, got {}",
                action.len()
            )));
        }
        let m = module.generators();
        for (g, mat) in action.iter().enumerate() {
            if mat.rows() != m || mat.cols() != m {
                return Err(HomologyError::BadAction(format!(
                    "matrix for element {g} is {}x{}, module has {m} generators",
                    mat.rows(),
                    mat.cols()
                )));
            }
            // Relations must map into the relation span.
            let relations = module.relations();
            for c in 0..relations.cols() {
                let image = mat.mul_vec(&relations.column(c))?;
                if relations.solve(&image).is_none() {
                    return Err(HomologyError::BadAction(format!(
                        "element {g} does not preserve relation {c}"
                    )));
                }
            }
        }
        // Identity and composition, modulo relations.
        let congruent = |a: &Matrix, b: &Matrix| -> Result<bool, HomologyError> {
            let diff = a.sub(b)?;
            for c in 0..diff.cols() {
                if !module.element_is_zero(&diff.column(c))? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        let identity = Matrix::identity(module.base(), m);
        if !congruent(&action[group.identity()], &identity)? {
            return Err(HomologyError::BadAction(
                "identity element does not act as the identity".into(),
            ));
        }
        for g in 0..g_count {
            for h in 0..g_count {
                let prod = action[g].mul(&action[h])?;
                if !congruent(&prod, &action[group.mul(g, h)])? {
                    return Err(HomologyError::BadAction(format!(
                        "action not compatible with the group table at ({g}, {h})"
                    )));
                }
            }
        }
        Ok(GModule {
            group,
            module,
            action,
        })
    }

    /// The trivial action of a group on a module.
    pub fn trivial(group: FiniteGroup, module: PresentedModule) -> GModule {
        let m = module.generators();
        let identity = Matrix::identity(module.base(), m);
        let action = vec![identity; group.order()];
        GModule {
            group,
            module,
            action,
        }
    }
}

/// Index of a tuple `(g_1, ..., g_s)` in the bar complex ordering: mixed
/// radix, `g_1` most significant.
fn tuple_index(tuple: &[usize], order: usize) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

/// All `s`-tuples of group elements, in index order.
fn tuples(order: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..s {
        let mut next = Vec::with_capacity(out.len() * order);
        for t in &out {
            for g in 0..order {
                let mut t2 = t.clone();
                t2.push(g);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// The bar differential `delta^s : Maps(G^s, M) -> Maps(G^{s+1}, M)`.
///
/// `(delta f)(g_1, ..., g_{s+1}) = g_1 f(g_2, ..., g_{s+1})
///   + sum_i (-1)^i f(g_1, ..., g_i g_{i+1}, ..., g_{s+1})
///   + (-1)^{s+1} f(g_1, ..., g_s)`.
fn bar_differential(gm: &GModule, s: usize) -> Matrix {
    let ring = gm.module.base().clone();
    let m = gm.module.generators();
    let order = gm.group.order();
    let source_tuples = order.pow(s as u32);
    let target_tuples = order.pow((s + 1) as u32);
    let mut out = Matrix::zero(&ring, target_tuples * m, source_tuples * m);

    let minus_one = ring.neg(&ring.one());
    for tuple in tuples(order, s + 1) {
        let row_block = tuple_index(&tuple, order) * m;

        // Action term: g_1 * f(g_2, ..., g_{s+1}).
        let rest = &tuple[1..];
        let col_block = tuple_index(rest, order) * m;
        let g1 = &gm.action[tuple[0]];
        for r in 0..m {
            for c in 0..m {
                let v = g1.get(r, c);
                if !v.is_zero() {
                    let prev = out.get(row_block + r, col_block + c).clone();
                    out.set(row_block + r, col_block + c, ring.add(&prev, v));
                }
            }
        }

        // Merge terms with alternating signs.
        let mut sign = minus_one.clone();
        for i in 0..s {
            let mut merged = Vec::with_capacity(s);
            merged.extend_from_slice(&tuple[..i]);
            merged.push(gm.group.mul(tuple[i], tuple[i + 1]));
            merged.extend_from_slice(&tuple[i + 2..]);
            let col_block = tuple_index(&merged, order) * m;
            for r in 0..m {
                let prev = out.get(row_block + r, col_block + r).clone();
                out.set(row_block + r, col_block + r, ring.add(&prev, &sign));
            }
            sign = ring.neg(&sign);
        }

        // Drop-last term, sign (-1)^{s+1}.
        let dropped = &tuple[..s];
        let col_block = tuple_index(dropped, order) * m;
        for r in 0..m {
            let prev = out.get(row_block + r, col_block + r).clone();
            out.set(row_block + r, col_block + r, ring.add(&prev, &sign));
        }
    }
    out
}

/// `H^s(G, M)` through the bar cochain complex, as a presented module.
pub fn group_cohomology(gm: &GModule, s: usize) -> Result<PresentedModule, HomologyError> {
    let ring = gm.module.base().clone();
    let m = gm.module.generators();
    let order = gm.group.order();
    let r_m = gm.module.relations();

    let term_relations = |level: usize| -> Matrix {
        let blocks = order.pow(level as u32);
        Matrix::identity(&ring, blocks).kronecker(r_m)
    };

    let delta_out = bar_differential(gm, s);
    let delta_in = if s == 0 {
        Matrix::zero(&ring, m, 0)
    } else {
        bar_differential(gm, s - 1)
    };

    middle_homology(
        &delta_out,
        &delta_in,
        &term_relations(s),
        &term_relations(s + 1),
    )
}

/// Whether `M (x) M` is nonzero, with its fingerprint as evidence.
pub fn tensor_self_nonzero(
    m: &PresentedModule,
) -> Result<(bool, InvariantFactors), HomologyError> {
    let square = crate::module::tensor_modules(m, m)?;
    let fingerprint = square.invariant_factors();
    Ok((!square.is_zero(), fingerprint))
}
