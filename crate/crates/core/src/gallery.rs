//! Named example algebras and seeded random instance generation.
//!
//! The fixture constructors build the standard test subjects of the
//! workbench: coordinate product algebras carrying the translation action
//! of a finite group, finite field extensions with their Frobenius action,
//! a graded 2x2 matrix algebra whose off-diagonal units sit in degrees
//! `+2` and `-2`, and truncated polynomial algebras with a chosen generator
//! degree. [`random_graded_algebra`] produces validated pseudo-random
//! algebras from sampled sparse structure constants, and [`run_fuzz`]
//! drives the property-harness lanes of [`TheoremLane`] over seeded trial
//! batches. Generation is a pure function of the seed, so every reported
//! trial is replayable from its printed seed.

use crate::algebra::{validate_algebra, AlgebraError, AlgebraSpec, BasisElement, GradedAlgebra};
use crate::differentials::nontrivial_class;
use crate::galois::is_galois;
use crate::group::{ActionError, FiniteGroup, GroupAction};
use crate::matrix::Matrix;
use crate::ring::{BaseRing, RingError, Scalar};
use crate::separable::{degree_zero_regular, separability_idempotent};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Errors from fixture construction and random generation.
#[derive(Debug, Clone, thiserror::Error)]
pub enum GalleryError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("group action rejected: {0}")]
    Action(#[from] ActionError),
    #[error("no monic irreducible polynomial of degree {n} over F_{p} was found")]
    NoIrreducibleFound { p: u64, n: usize },
    #[error("random generation gave up after {attempts} rejected attempts")]
    GenerationExhausted { attempts: u64 },
    #[error("bad generator parameters: {0}")]
    BadParams(String),
}

/// The coordinate product algebra `prod_{g in G} A` together with the
/// left-translation action permuting coordinates. The basis is the family
/// of coordinate idempotents `e_g`, all in degree zero, and `g` sends
/// `e_k` to `e_{g k}`. The action is faithful and always certifies as
/// Galois over `A`.
pub fn make_trivial_galois(base: &BaseRing, group: &FiniteGroup) -> (GradedAlgebra, GroupAction) {
    let n = group.order();
    let basis = group
        .names
        .iter()
        .map(|g| BasisElement {
            name: format!("e_{g}"),
            degree: 0,
        })
        .collect();
    let structure = (0..n).map(|i| (i, i, i, base.one())).collect();
    let spec = AlgebraSpec {
        base: base.clone(),
        basis,
        unit: vec![base.one(); n],
        structure,
        commutative: true,
    };
    let algebra = validate_algebra(&spec).expect("coordinate product algebra satisfies the axioms");
    let matrices = (0..n)
        .map(|g| {
            Matrix::from_fn(base, n, n, |r, c| {
                if r == group.mul(g, c) {
                    base.one()
                } else {
                    base.zero()
                }
            })
        })
        .collect();
    let action = GroupAction::validate(group.clone(), &algebra, matrices, true)
        .expect("left translation is a faithful action by algebra automorphisms");
    (algebra, action)
}

/// Remainder of `a` modulo the monic polynomial `b`, coefficients mod `p`,
/// ascending order.
fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    while a.len() > db {
        let lead = *a.last().expect("nonempty");
        let da = a.len() - 1;
        if lead != 0 {
            for i in 0..db {
                let sub = (lead * b[i]) % p;
                let pos = da - db + i;
                a[pos] = (a[pos] + p - sub) % p;
            }
        }
        a.pop();
    }
    a
}

/// Coefficients of `x^e` modulo the monic degree-`n` polynomial `f`,
/// ascending order, length `n`.
fn x_power_mod(e: usize, f: &[u64], p: u64) -> Vec<u64> {
    let n = f.len() - 1;
    let mut acc = vec![0u64; 1];
    acc[0] = 1;
    for _ in 0..e {
        acc.insert(0, 0);
        acc = poly_rem(acc, f, p);
    }
    acc.resize(n, 0);
    acc
}

/// Exhaustive search for a monic irreducible polynomial of degree `n` over
/// `F_p`, by trial division against every monic polynomial of degree at
/// most `n / 2`. Candidates are scanned in ascending lexicographic order
/// of their coefficient vectors, so the result is deterministic.
fn find_irreducible(p: u64, n: usize) -> Option<Vec<u64>> {
    let count = (p as u128).checked_pow(n as u32)?;
    'candidate: for counter in 0..count {
        let mut f = Vec::with_capacity(n + 1);
        let mut c = counter;
        for _ in 0..n {
            f.push((c % p as u128) as u64);
            c /= p as u128;
        }
        f.push(1);
        for d in 1..=n / 2 {
            let divisors = (p as u128).pow(d as u32);
            for dcounter in 0..divisors {
                let mut g = Vec::with_capacity(d + 1);
                let mut c = dcounter;
                for _ in 0..d {
                    g.push((c % p as u128) as u64);
                    c /= p as u128;
                }
                g.push(1);
                if poly_rem(f.clone(), &g, p).iter().all(|&x| x == 0) {
                    continue 'candidate;
                }
            }
        }
        return Some(f);
    }
    None
}

/// The field with `p^n` elements as an algebra over `F_p`, with the cyclic
/// group of order `n` acting by powers of the Frobenius `a -> a^p`. The
/// basis is `1, w, ..., w^{n-1}` for a root `w` of the found irreducible
/// polynomial; all degrees are zero.
pub fn make_finite_field_ext(p: u64, n: usize) -> Result<(GradedAlgebra, GroupAction), GalleryError> {
    if n == 0 {
        return Err(GalleryError::BadParams(
            "extension degree must be at least 1".into(),
        ));
    }
    let size = (p as u128)
        .checked_pow(n as u32)
        .filter(|&s| s <= 1 << 16)
        .ok_or_else(|| GalleryError::BadParams(format!("field size {p}^{n} exceeds 2^16")))?;
    let _ = size;
    let base = BaseRing::prime_field(p as i64)?;
    let f = find_irreducible(p, n).ok_or(GalleryError::NoIrreducibleFound { p, n })?;

    let basis = (0..n)
        .map(|i| BasisElement {
            name: if i == 0 {
                "1".to_string()
            } else if i == 1 {
                "w".to_string()
            } else {
                format!("w^{i}")
            },
            degree: 0,
        })
        .collect();
    let mut unit = vec![base.zero(); n];
    unit[0] = base.one();
    let mut structure = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let prod = x_power_mod(i + j, &f, p);
            for (k, &c) in prod.iter().enumerate() {
                if c != 0 {
                    structure.push((i, j, k, base.scalar_from_i64(c as i64)));
                }
            }
        }
    }
    let spec = AlgebraSpec {
        base: base.clone(),
        basis,
        unit,
        structure,
        commutative: true,
    };
    let algebra = validate_algebra(&spec)?;

    // Frobenius matrix: column j holds the coordinates of (w^j)^p = w^{jp}.
    let frob_cols: Vec<Vec<Scalar>> = (0..n)
        .map(|j| {
            x_power_mod(j * p as usize, &f, p)
                .into_iter()
                .map(|c| base.scalar_from_i64(c as i64))
                .collect()
        })
        .collect();
    let frob = Matrix::from_columns(&base, n, &frob_cols);
    let mut matrices = vec![Matrix::identity(&base, n)];
    for k in 1..n {
        let next = matrices[k - 1].mul(&frob).expect("square matrices over one ring");
        matrices.push(next);
    }
    let action = GroupAction::validate(FiniteGroup::cyclic(n), &algebra, matrices, true)?;
    Ok((algebra, action))
}

/// The 2x2 matrix algebra over `A` graded so that the off-diagonal units
/// carry degrees `+2` and `-2`: basis `E11, E22` in degree zero, `E12` in
/// degree `+2`, `E21` in degree `-2`, with the matrix-unit multiplication
/// table. Noncommutative; the unit is `E11 + E22`.
pub fn make_matrix_example(base: &BaseRing) -> GradedAlgebra {
    let labels = [(1usize, 1usize), (2, 2), (1, 2), (2, 1)];
    let degrees = [0i64, 0, 2, -2];
    let names = ["E11", "E22", "E12", "E21"];
    let index_of = |r: usize, c: usize| labels.iter().position(|&l| l == (r, c)).expect("matrix unit");
    let basis = (0..4)
        .map(|i| BasisElement {
            name: names[i].to_string(),
            degree: degrees[i],
        })
        .collect();
    let mut structure = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            let (r1, c1) = labels[a];
            let (r2, c2) = labels[b];
            if c1 == r2 {
                structure.push((a, b, index_of(r1, c2), base.one()));
            }
        }
    }
    let spec = AlgebraSpec {
        base: base.clone(),
        basis,
        unit: vec![base.one(), base.one(), base.zero(), base.zero()],
        structure,
        commutative: false,
    };
    validate_algebra(&spec).expect("matrix units satisfy the algebra axioms")
}

/// The truncated polynomial algebra `A[x]/(x^m)` with `deg x = k`: basis
/// `1, x, ..., x^{m-1}` where `x^i` has degree `i * k`. Commutative.
pub fn make_truncated_poly(base: &BaseRing, m: usize, k: i64) -> GradedAlgebra {
    assert!(m >= 2, "truncation order must be at least 2");
    let basis = (0..m)
        .map(|i| BasisElement {
            name: if i == 0 {
                "1".to_string()
            } else if i == 1 {
                "x".to_string()
            } else {
                format!("x^{i}")
            },
            degree: i as i64 * k,
        })
        .collect();
    let mut unit = vec![base.zero(); m];
    unit[0] = base.one();
    let mut structure = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i + j < m {
                structure.push((i, j, i + j, base.one()));
            }
        }
    }
    let spec = AlgebraSpec {
        base: base.clone(),
        basis,
        unit,
        structure,
        commutative: true,
    };
    validate_algebra(&spec).expect("truncated polynomial algebra satisfies the axioms")
}

/// Names accepted by [`named_example`], in presentation order.
pub const EXAMPLE_NAMES: [&str; 7] = [
    "f4",
    "f8",
    "f9",
    "axa",
    "z4-c2",
    "matrix-4-6",
    "dual-numbers",
];

/// Construct one of the named example instances. Returns the algebra
/// together with its Galois action when the example carries one, or `None`
/// for a name not in [`EXAMPLE_NAMES`].
pub fn named_example(name: &str) -> Option<(GradedAlgebra, Option<GroupAction>)> {
    let example = match name {
        "f4" | "f8" | "f9" => {
            let (p, n) = match name {
                "f4" => (2, 2),
                "f8" => (2, 3),
                _ => (3, 2),
            };
            let (algebra, action) =
                make_finite_field_ext(p, n).expect("fixed parameters are a prime power");
            (algebra, Some(action))
        }
        "axa" => {
            let base = BaseRing::prime_field(2).expect("2 is prime");
            let (algebra, action) = make_trivial_galois(&base, &FiniteGroup::cyclic(2));
            (algebra, Some(action))
        }
        "z4-c2" => {
            let base = BaseRing::integers_mod(4).expect("4 is a valid modulus");
            let (algebra, action) = make_trivial_galois(&base, &FiniteGroup::cyclic(2));
            (algebra, Some(action))
        }
        "matrix-4-6" => {
            let base = BaseRing::prime_field(2).expect("2 is prime");
            (make_matrix_example(&base), None)
        }
        "dual-numbers" => {
            let base = BaseRing::prime_field(2).expect("2 is prime");
            (make_truncated_poly(&base, 2, 1), None)
        }
        _ => return None,
    };
    Some(example)
}

/// Direct product of two algebras over the same base ring: basis the
/// disjoint union with cross products zero, unit the pair of units.
pub fn product_algebra(
    left: &GradedAlgebra,
    right: &GradedAlgebra,
) -> Result<GradedAlgebra, GalleryError> {
    if left.base() != right.base() {
        return Err(GalleryError::BadParams(
            "product factors live over different base rings".into(),
        ));
    }
    let base = left.base().clone();
    let n1 = left.rank();
    let mut basis: Vec<BasisElement> = left
        .basis()
        .iter()
        .map(|b| BasisElement {
            name: format!("l_{}", b.name),
            degree: b.degree,
        })
        .collect();
    basis.extend(right.basis().iter().map(|b| BasisElement {
        name: format!("r_{}", b.name),
        degree: b.degree,
    }));
    let mut unit: Vec<Scalar> = left.unit().to_vec();
    unit.extend(right.unit().iter().cloned());
    let mut structure = Vec::new();
    for spec_entry in left.to_spec().structure {
        structure.push(spec_entry);
    }
    for (i, j, k, c) in right.to_spec().structure {
        structure.push((i + n1, j + n1, k + n1, c));
    }
    let spec = AlgebraSpec {
        base,
        basis,
        unit,
        structure,
        commutative: left.is_commutative() && right.is_commutative(),
    };
    Ok(validate_algebra(&spec)?)
}

/// Base-ring selection for random generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BaseChoice {
    Integers,
    Modular { n: u64 },
    PrimeField { p: u64 },
    /// Rotate through a small palette of rings, seed-determined.
    Mixed,
}

impl BaseChoice {
    fn resolve(&self, rng: &mut ChaCha8Rng) -> Result<BaseRing, GalleryError> {
        match self {
            BaseChoice::Integers => Ok(BaseRing::integers()),
            BaseChoice::Modular { n } => Ok(BaseRing::integers_mod(*n as i64)?),
            BaseChoice::PrimeField { p } => Ok(BaseRing::prime_field(*p as i64)?),
            BaseChoice::Mixed => {
                let roll = rng.random_range(0..16u32);
                Ok(match roll {
                    0 | 1 | 2 => BaseRing::prime_field(2).expect("2 is prime"),
                    3 | 4 | 5 => BaseRing::prime_field(3).expect("3 is prime"),
                    6 | 7 => BaseRing::prime_field(5).expect("5 is prime"),
                    8 | 9 => BaseRing::integers_mod(4).expect("4 >= 2"),
                    10 | 11 => BaseRing::integers_mod(6).expect("6 >= 2"),
                    12 => BaseRing::integers_mod(8).expect("8 >= 2"),
                    13 => BaseRing::integers_mod(9).expect("9 >= 2"),
                    _ => BaseRing::integers(),
                })
            }
        }
    }

    /// Like [`BaseChoice::resolve`] but never yields the integers; used by
    /// lanes that want finite enumeration to stay conclusive.
    fn resolve_finite(&self, rng: &mut ChaCha8Rng) -> Result<BaseRing, GalleryError> {
        match self {
            BaseChoice::Integers => Ok(BaseRing::prime_field(2).expect("2 is prime")),
            BaseChoice::Mixed => {
                let roll = rng.random_range(0..14u32);
                Ok(match roll {
                    0 | 1 | 2 => BaseRing::prime_field(2).expect("2 is prime"),
                    3 | 4 | 5 => BaseRing::prime_field(3).expect("3 is prime"),
                    6 | 7 => BaseRing::prime_field(5).expect("5 is prime"),
                    8 | 9 => BaseRing::integers_mod(4).expect("4 >= 2"),
                    10 | 11 => BaseRing::integers_mod(6).expect("6 >= 2"),
                    12 => BaseRing::integers_mod(8).expect("8 >= 2"),
                    _ => BaseRing::integers_mod(9).expect("9 >= 2"),
                })
            }
            other => other.resolve(rng),
        }
    }
}

/// Parameters for seeded random generation. The same seed and parameters
/// always produce the same instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub seed: u64,
    /// Upper bound for the basis rank of generated algebras.
    pub max_rank: usize,
    /// Inclusive bounds for sampled basis degrees.
    pub degree_range: (i64, i64),
    pub base: BaseChoice,
    /// Force every generated algebra to be commutative.
    pub commutative: bool,
    /// Upper bound for the order of generated groups.
    pub group_order: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            seed: 0,
            max_rank: 4,
            degree_range: (-2, 3),
            base: BaseChoice::Mixed,
            commutative: false,
            group_order: 4,
        }
    }
}

/// A generated instance: a validated algebra, an optional validated group
/// action, the name of the construction that produced it, and how many
/// sampled structure tables were rejected before one validated.
#[derive(Clone, Debug)]
pub struct GeneratedInstance {
    pub algebra: GradedAlgebra,
    pub action: Option<GroupAction>,
    pub construction: String,
    pub rejections: u64,
}

/// Degree profiles for sparse random generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum DegreeShape {
    /// Degrees sampled from the configured range.
    Within,
    /// Degrees clamped to be nonnegative.
    Connective,
    /// The unit is the only degree-zero basis element; all others positive.
    SoleZeroPositive,
    /// The unit is the only degree-zero basis element; index 1 is negative
    /// and the rest are nonzero of either sign.
    NegativePart,
    /// At least two degree-zero basis elements and at least one positive.
    WideZeroPositive,
}

fn random_scalar(rng: &mut ChaCha8Rng, ring: &BaseRing) -> Scalar {
    match ring.element_count() {
        Some(count) => {
            let n = u64::try_from(count).expect("palette rings are small");
            ring.canon(BigInt::from(rng.random_range(0..n)))
        }
        None => ring.scalar_from_i64(rng.random_range(-3..=3)),
    }
}

/// Units of the base ring, for scaling actions. Over the integers only
/// `1` and `-1` are units; finite rings are enumerated.
fn units_of(ring: &BaseRing) -> Vec<Scalar> {
    if ring.is_finite() {
        ring.elements().into_iter().filter(|c| ring.is_unit(c)).collect()
    } else {
        vec![ring.one(), ring.scalar_from_i64(-1)]
    }
}

/// Multiplicative order of a unit `c`.
fn unit_order(ring: &BaseRing, c: &Scalar) -> usize {
    let mut acc = c.clone();
    let mut d = 1usize;
    while !acc.is_one() {
        acc = ring.mul(&acc, c);
        d += 1;
        assert!(d <= 1 << 16, "unit order computation ran away");
    }
    d
}

/// `c^e` in the base ring, allowing negative exponents for units.
fn scalar_pow(ring: &BaseRing, c: &Scalar, e: i64) -> Scalar {
    let base = if e >= 0 {
        c.clone()
    } else {
        ring.inv(c).expect("scaling constants are units")
    };
    let mut acc = ring.one();
    for _ in 0..e.unsigned_abs() {
        acc = ring.mul(&acc, &base);
    }
    acc
}

/// Attach the weighted scaling action `e_i -> c^{w_i} e_i` for a random
/// unit `c`, as an action of the cyclic group of order `ord(c)`. This is
/// an automorphism whenever every nonzero structure constant `(i, j, k)`
/// has `w_i + w_j = w_k` and the unit is supported on weight-zero indices;
/// basis degrees always satisfy that, as do monomial exponents in a
/// truncated polynomial algebra.
fn attach_weighted_scaling(
    rng: &mut ChaCha8Rng,
    algebra: &GradedAlgebra,
    weights: &[i64],
) -> GroupAction {
    let ring = algebra.base();
    let units = units_of(ring);
    let c = units[rng.random_range(0..units.len())].clone();
    let order = unit_order(ring, &c);
    let n = algebra.rank();
    let matrices = (0..order)
        .map(|j| {
            Matrix::from_fn(ring, n, n, |r, col| {
                if r == col {
                    scalar_pow(ring, &c, j as i64 * weights[r])
                } else {
                    ring.zero()
                }
            })
        })
        .collect();
    GroupAction::validate(FiniteGroup::cyclic(order), algebra, matrices, false)
        .expect("weighted scaling by a unit is an action by automorphisms")
}

/// Attach the trivial action of a cyclic group: every element acts as the
/// identity matrix.
fn attach_trivial_action(rng: &mut ChaCha8Rng, algebra: &GradedAlgebra, max_order: usize) -> GroupAction {
    let g = rng.random_range(1..=max_order.max(1));
    let matrices = vec![Matrix::identity(algebra.base(), algebra.rank()); g];
    GroupAction::validate(FiniteGroup::cyclic(g), algebra, matrices, false)
        .expect("identity matrices form a trivial action")
}

const MAX_GENERATION_ATTEMPTS: u64 = 64;

/// Sample a sparse structure-constant table and validate it, repairing
/// what can be repaired structurally (the unit row and column are forced,
/// degree-incompatible products are dropped, commutativity is enforced by
/// mirroring) and rejecting tables that still fail validation — in
/// practice only associativity is left to chance. Rejections are counted;
/// after [`MAX_GENERATION_ATTEMPTS`] failures generation gives up.
fn gen_sparse(
    rng: &mut ChaCha8Rng,
    params: &GeneratorParams,
    shape: DegreeShape,
    force_commutative: bool,
) -> Result<(GradedAlgebra, u64), GalleryError> {
    let (lo, hi) = params.degree_range;
    if lo > hi {
        return Err(GalleryError::BadParams(format!(
            "degree range ({lo}, {hi}) is empty"
        )));
    }
    let base = match shape {
        DegreeShape::Within | DegreeShape::Connective => params.base.resolve(rng)?,
        _ => params.base.resolve_finite(rng)?,
    };
    let min_rank = match shape {
        DegreeShape::Within | DegreeShape::Connective => {
            // A range that excludes zero must force a second basis element,
            // so a nonzero degree actually appears.
            if lo > 0 || hi < 0 {
                2
            } else {
                1
            }
        }
        DegreeShape::SoleZeroPositive | DegreeShape::NegativePart => 2,
        DegreeShape::WideZeroPositive => 3,
    };
    let max_rank = params.max_rank.clamp(min_rank, 4);
    let commutative = force_commutative || params.commutative || rng.random_bool(0.5);
    let mut rejections = 0u64;

    for _ in 0..MAX_GENERATION_ATTEMPTS {
        let rank = rng.random_range(min_rank..=max_rank);
        let mut degrees = vec![0i64];
        for i in 1..rank {
            let d = match shape {
                DegreeShape::Within => rng.random_range(lo..=hi),
                DegreeShape::Connective => rng.random_range(lo.max(0)..=hi.max(0)),
                DegreeShape::SoleZeroPositive => rng.random_range(1..=hi.max(1)),
                DegreeShape::NegativePart => {
                    if i == 1 {
                        rng.random_range(lo.min(-1)..=-1)
                    } else {
                        let allowed: Vec<i64> =
                            (lo.min(-1)..=hi).filter(|&d| d != 0).collect();
                        allowed[rng.random_range(0..allowed.len())]
                    }
                }
                DegreeShape::WideZeroPositive => {
                    if i == 1 {
                        0
                    } else if i == 2 {
                        rng.random_range(1..=hi.max(1))
                    } else {
                        rng.random_range(0..=hi.max(1))
                    }
                }
            };
            degrees.push(d);
        }

        let basis: Vec<BasisElement> = (0..rank)
            .map(|i| BasisElement {
                name: format!("b{i}"),
                degree: degrees[i],
            })
            .collect();
        let mut unit = vec![base.zero(); rank];
        unit[0] = base.one();
        let mut structure: Vec<(usize, usize, usize, Scalar)> = Vec::new();
        for j in 0..rank {
            structure.push((0, j, j, base.one()));
            if j != 0 {
                structure.push((j, 0, j, base.one()));
            }
        }
        for i in 1..rank {
            let j_start = if commutative { i } else { 1 };
            for j in j_start..rank {
                if rng.random_bool(0.5) {
                    continue;
                }
                let want = degrees[i] + degrees[j];
                let targets: Vec<usize> =
                    (0..rank).filter(|&k| degrees[k] == want).collect();
                if targets.is_empty() {
                    continue;
                }
                let k = targets[rng.random_range(0..targets.len())];
                let c = random_scalar(rng, &base);
                if c.is_zero() {
                    continue;
                }
                structure.push((i, j, k, c.clone()));
                if commutative && i != j {
                    structure.push((j, i, k, c));
                }
            }
        }
        let spec = AlgebraSpec {
            base: base.clone(),
            basis,
            unit,
            structure,
            commutative,
        };
        match validate_algebra(&spec) {
            Ok(algebra) => return Ok((algebra, rejections)),
            Err(_) => rejections += 1,
        }
    }
    Err(GalleryError::GenerationExhausted {
        attempts: MAX_GENERATION_ATTEMPTS,
    })
}

/// Sign constraints for the generator degree of a truncated polynomial
/// instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SignConstraint {
    Any,
    NonNegative,
    Positive,
    Negative,
}

fn gen_truncated(
    rng: &mut ChaCha8Rng,
    params: &GeneratorParams,
    sign: SignConstraint,
    finite_base: bool,
) -> Result<GradedAlgebra, GalleryError> {
    let base = if finite_base {
        params.base.resolve_finite(rng)?
    } else {
        params.base.resolve(rng)?
    };
    let m = rng.random_range(2..=params.max_rank.clamp(2, 4));
    let (lo, hi) = params.degree_range;
    let k = match sign {
        SignConstraint::Any => rng.random_range(lo.min(0)..=hi.max(0)),
        SignConstraint::NonNegative => rng.random_range(0..=hi.max(0)),
        SignConstraint::Positive => rng.random_range(1..=hi.max(1)),
        SignConstraint::Negative => rng.random_range(lo.min(-1)..=-1),
    };
    Ok(make_truncated_poly(&base, m, k))
}

fn gen_product_translation(
    rng: &mut ChaCha8Rng,
    params: &GeneratorParams,
) -> Result<GeneratedInstance, GalleryError> {
    let base = params.base.resolve(rng)?;
    let max_order = params.group_order.clamp(1, 4);
    let group = if rng.random_bool(0.75) || max_order < 4 {
        FiniteGroup::cyclic(rng.random_range(1..=max_order))
    } else {
        FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
    };
    let (algebra, action) = make_trivial_galois(&base, &group);
    Ok(GeneratedInstance {
        algebra,
        action: Some(action),
        construction: "product-translation".into(),
        rejections: 0,
    })
}

fn gen_finite_field(
    rng: &mut ChaCha8Rng,
    params: &GeneratorParams,
) -> Result<GeneratedInstance, GalleryError> {
    let pool: [(u64, usize); 9] = [
        (2, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 1),
        (3, 2),
        (5, 1),
        (5, 2),
        (7, 1),
    ];
    let allowed: Vec<(u64, usize)> = pool
        .iter()
        .copied()
        .filter(|&(_, n)| n <= params.max_rank.max(1))
        .collect();
    let (p, n) = allowed[rng.random_range(0..allowed.len())];
    let (algebra, action) = make_finite_field_ext(p, n)?;
    Ok(GeneratedInstance {
        algebra,
        action: Some(action),
        construction: format!("finite-field-{p}-{n}"),
        rejections: 0,
    })
}

/// Sample a validated algebra from sparse random structure constants,
/// honoring the degree range and commutativity flag, with an optional
/// weighted-scaling or trivial action attached. Rejection statistics are
/// reported on the returned instance.
pub fn random_graded_algebra(params: &GeneratorParams) -> Result<GeneratedInstance, GalleryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (algebra, rejections) = gen_sparse(&mut rng, params, DegreeShape::Within, params.commutative)?;
    let action = match rng.random_range(0..3u32) {
        0 => {
            let weights: Vec<i64> = algebra.basis().iter().map(|b| b.degree).collect();
            Some(attach_weighted_scaling(&mut rng, &algebra, &weights))
        }
        1 => Some(attach_trivial_action(&mut rng, &algebra, params.group_order)),
        _ => None,
    };
    Ok(GeneratedInstance {
        algebra,
        action,
        construction: "sparse-structure".into(),
        rejections,
    })
}

/// The property-harness lanes. Each lane pairs a seeded instance
/// distribution (guaranteeing the lane's hypotheses by construction where
/// possible) with a conclusion check; a counterexample would indicate a
/// defect in this crate's computations, so the fuzz driver records every
/// trial for replay.
///
/// The token strings are the lane names accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremLane {
    /// A certified Galois action over a degree-zero base forces every
    /// basis degree to zero. Token `thm-3.2`.
    GaloisGradeCollapse,
    /// A commutative separable algebra whose degree-zero part has no zero
    /// divisors is concentrated in degree zero. Token `thm-4.2`.
    SeparableRegularCollapse,
    /// For connective algebras, separability alone forces concentration in
    /// degree zero. Token `rmk-4.3`.
    ConnectiveSeparableCollapse,
    /// A connective commutative algebra whose degree-zero part is spanned
    /// by the unit and which has a nonzero positive part admits a nonzero
    /// differentials class. Token `lemma-5.3`.
    PositiveDegreeWitness,
    /// A commutative algebra whose degree-zero part is spanned by the unit
    /// and which has a nonzero negative part admits a nonzero
    /// differentials class. Token `lemma-5.8`.
    NegativeDegreeWitness,
    /// The positive-part conclusion persists when the degree-zero part is
    /// larger than the span of the unit. Token `rmk-5.5`.
    WideZeroPartWitness,
}

impl TheoremLane {
    pub fn all() -> [TheoremLane; 6] {
        [
            TheoremLane::GaloisGradeCollapse,
            TheoremLane::SeparableRegularCollapse,
            TheoremLane::ConnectiveSeparableCollapse,
            TheoremLane::PositiveDegreeWitness,
            TheoremLane::NegativeDegreeWitness,
            TheoremLane::WideZeroPartWitness,
        ]
    }

    /// The command-line token naming this lane.
    pub fn token(&self) -> &'static str {
        match self {
            TheoremLane::GaloisGradeCollapse => "thm-3.2",
            TheoremLane::SeparableRegularCollapse => "thm-4.2",
            TheoremLane::ConnectiveSeparableCollapse => "rmk-4.3",
            TheoremLane::PositiveDegreeWitness => "lemma-5.3",
            TheoremLane::NegativeDegreeWitness => "lemma-5.8",
            TheoremLane::WideZeroPartWitness => "rmk-5.5",
        }
    }

    pub fn parse(token: &str) -> Option<TheoremLane> {
        TheoremLane::all().into_iter().find(|l| l.token() == token)
    }
}

/// Configuration for a fuzz batch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub trials: u64,
    pub seed: u64,
    pub max_rank: usize,
    pub degree_range: (i64, i64),
    pub base: BaseChoice,
    pub group_order: usize,
    /// Worker threads; trial outcomes are identical for any value.
    pub jobs: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 100,
            seed: 0,
            max_rank: 4,
            degree_range: (-2, 3),
            base: BaseChoice::Mixed,
            group_order: 4,
            jobs: 1,
        }
    }
}

/// Derive the instance seed for one trial from the batch seed. Uses the
/// SplitMix64 finalizer over a golden-ratio stream, so per-trial seeds are
/// independent of job count and computable in isolation for replay.
pub fn trial_seed(batch_seed: u64, trial: u64) -> u64 {
    let mut z = batch_seed.wrapping_add(trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generate the instance a lane examines for a given instance seed.
pub fn lane_instance(
    lane: TheoremLane,
    instance_seed: u64,
    cfg: &FuzzConfig,
) -> Result<GeneratedInstance, GalleryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed);
    let params = GeneratorParams {
        seed: instance_seed,
        max_rank: cfg.max_rank,
        degree_range: cfg.degree_range,
        base: cfg.base,
        commutative: false,
        group_order: cfg.group_order,
    };
    let roll = rng.random_range(0..100u32);
    match lane {
        TheoremLane::GaloisGradeCollapse => {
            if roll < 25 {
                gen_product_translation(&mut rng, &params)
            } else if roll < 45 {
                gen_finite_field(&mut rng, &params)
            } else if roll < 75 {
                let algebra = gen_truncated(&mut rng, &params, SignConstraint::Any, false)?;
                let weights: Vec<i64> = (0..algebra.rank() as i64).collect();
                let action = attach_weighted_scaling(&mut rng, &algebra, &weights);
                Ok(GeneratedInstance {
                    algebra,
                    action: Some(action),
                    construction: "truncated-poly-scaling".into(),
                    rejections: 0,
                })
            } else {
                let (algebra, rejections) = gen_sparse(&mut rng, &params, DegreeShape::Within, false)?;
                let action = if rng.random_bool(0.5) {
                    let weights: Vec<i64> = algebra.basis().iter().map(|b| b.degree).collect();
                    attach_weighted_scaling(&mut rng, &algebra, &weights)
                } else {
                    attach_trivial_action(&mut rng, &algebra, params.group_order)
                };
                Ok(GeneratedInstance {
                    algebra,
                    action: Some(action),
                    construction: "sparse-structure".into(),
                    rejections,
                })
            }
        }
        TheoremLane::SeparableRegularCollapse | TheoremLane::ConnectiveSeparableCollapse => {
            let connective = lane == TheoremLane::ConnectiveSeparableCollapse;
            if roll < 15 {
                let mut inst = gen_product_translation(&mut rng, &params)?;
                inst.action = None;
                Ok(inst)
            } else if roll < 30 {
                let mut inst = gen_finite_field(&mut rng, &params)?;
                inst.action = None;
                Ok(inst)
            } else if roll < 55 {
                let sign = if connective {
                    SignConstraint::NonNegative
                } else {
                    SignConstraint::Any
                };
                let algebra = gen_truncated(&mut rng, &params, sign, false)?;
                Ok(GeneratedInstance {
                    algebra,
                    action: None,
                    construction: "truncated-poly".into(),
                    rejections: 0,
                })
            } else if roll < 70 {
                let base = params.base.resolve(&mut rng)?;
                let sign = if connective {
                    SignConstraint::NonNegative
                } else {
                    SignConstraint::Any
                };
                let small = GeneratorParams {
                    max_rank: 3,
                    ..params.clone()
                };
                let left = {
                    let m = rng.random_range(2..=3);
                    let (lo, hi) = small.degree_range;
                    let k = match sign {
                        SignConstraint::NonNegative => rng.random_range(0..=hi.max(0)),
                        _ => rng.random_range(lo.min(0)..=hi.max(0)),
                    };
                    make_truncated_poly(&base, m, k)
                };
                let right = make_truncated_poly(&base, rng.random_range(2..=3), 0);
                let algebra = product_algebra(&left, &right)?;
                Ok(GeneratedInstance {
                    algebra,
                    action: None,
                    construction: "product-pair".into(),
                    rejections: 0,
                })
            } else {
                let shape = if connective {
                    DegreeShape::Connective
                } else {
                    DegreeShape::Within
                };
                let (algebra, rejections) = gen_sparse(&mut rng, &params, shape, true)?;
                Ok(GeneratedInstance {
                    algebra,
                    action: None,
                    construction: "sparse-structure".into(),
                    rejections,
                })
            }
        }
        TheoremLane::PositiveDegreeWitness => {
            if roll < 45 {
                let algebra = gen_truncated(&mut rng, &params, SignConstraint::Positive, true)?;
                Ok(GeneratedInstance {
                    algebra,
                    action: None,
                    construction: "truncated-poly".into(),
                    rejections: 0,
                })
            } else {
                let (algebra, rejections) =
                    gen_sparse(&mut rng, &params, DegreeShape::SoleZeroPositive, true)?;
                Ok(GeneratedInstance {
                    algebra,
                    action: None,
                    construction: "sparse-structure".into(),
                    rejections,
                })
            }
        }
        TheoremLane::NegativeDegreeWitness => {
            if roll < 45 {
                let algebra = gen_truncated(&mut rng, &params, SignConstraint::Negative, true)?;
                Ok(GeneratedInstance {
                    algebra,
                    action: None,
                    construction: "truncated-poly".into(),
                    rejections: 0,
                })
            } else {
                let (algebra, rejections) =
                    gen_sparse(&mut rng, &params, DegreeShape::NegativePart, true)?;
                Ok(GeneratedInstance {
                    algebra,
                    action: None,
                    construction: "sparse-structure".into(),
                    rejections,
                })
            }
        }
        TheoremLane::WideZeroPartWitness => {
            if roll < 50 {
                let base = params.base.resolve_finite(&mut rng)?;
                let m = rng.random_range(2..=3);
                let k = rng.random_range(1..=params.degree_range.1.max(1));
                let left = make_truncated_poly(&base, m, k);
                let right = if rng.random_bool(0.5) {
                    make_truncated_poly(&base, rng.random_range(2..=3), 0)
                } else {
                    make_trivial_galois(&base, &FiniteGroup::cyclic(rng.random_range(1..=2))).0
                };
                let algebra = product_algebra(&left, &right)?;
                Ok(GeneratedInstance {
                    algebra,
                    action: None,
                    construction: "product-pair".into(),
                    rejections: 0,
                })
            } else {
                let (algebra, rejections) =
                    gen_sparse(&mut rng, &params, DegreeShape::WideZeroPositive, true)?;
                Ok(GeneratedInstance {
                    algebra,
                    action: None,
                    construction: "sparse-structure".into(),
                    rejections,
                })
            }
        }
    }
}

/// Outcome of checking one instance against a lane's hypotheses and
/// conclusion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaneEvaluation {
    pub hypotheses_met: bool,
    /// `Some(true)` when the conclusion was checked and held, `Some(false)`
    /// for a counterexample, `None` when the conclusion never came up
    /// (hypotheses unmet or the triggering predicate was false).
    pub conclusion_holds: Option<bool>,
    /// Whether the lane's triggering predicate fired (a Galois verdict, a
    /// separability certificate, or a witness found); used as the harness
    /// sensitivity counter.
    pub positive: bool,
    pub note: Option<String>,
}

fn degrees_of(algebra: &GradedAlgebra) -> Vec<i64> {
    algebra.basis().iter().map(|b| b.degree).collect()
}

/// Whether the degree-zero part is exactly the span of the unit: a single
/// degree-zero basis element carrying the unit, up to a unit scalar.
fn unit_spans_zero_part(algebra: &GradedAlgebra) -> bool {
    let zero_indices = algebra.degree_indices(0);
    if zero_indices.len() != 1 {
        return false;
    }
    let idx = zero_indices[0];
    algebra.unit().iter().enumerate().all(|(i, c)| {
        if i == idx {
            algebra.base().is_unit(c)
        } else {
            c.is_zero()
        }
    })
}

/// Evaluate one instance against a lane.
pub fn evaluate_lane(lane: TheoremLane, inst: &GeneratedInstance) -> LaneEvaluation {
    let algebra = &inst.algebra;
    let degrees = degrees_of(algebra);
    let all_zero = degrees.iter().all(|&d| d == 0);
    let connective = degrees.iter().all(|&d| d >= 0);
    let has_positive = degrees.iter().any(|&d| d > 0);
    let has_negative = degrees.iter().any(|&d| d < 0);

    match lane {
        TheoremLane::GaloisGradeCollapse => {
            let Some(action) = &inst.action else {
                return LaneEvaluation {
                    hypotheses_met: false,
                    conclusion_holds: None,
                    positive: false,
                    note: Some("no action attached".into()),
                };
            };
            match is_galois(algebra, action) {
                Err(e) => LaneEvaluation {
                    hypotheses_met: true,
                    conclusion_holds: Some(false),
                    positive: false,
                    note: Some(format!("galois check errored: {e}")),
                },
                Ok(report) if report.is_galois => LaneEvaluation {
                    hypotheses_met: true,
                    conclusion_holds: Some(all_zero),
                    positive: true,
                    note: Some(format!("galois verdict true; degrees {degrees:?}")),
                },
                Ok(report) => LaneEvaluation {
                    hypotheses_met: true,
                    conclusion_holds: None,
                    positive: false,
                    note: report.failure,
                },
            }
        }
        TheoremLane::SeparableRegularCollapse => {
            if !algebra.is_commutative() {
                return LaneEvaluation {
                    hypotheses_met: false,
                    conclusion_holds: None,
                    positive: false,
                    note: Some("not commutative".into()),
                };
            }
            let sep = separability_idempotent(algebra);
            if !sep.separable {
                return LaneEvaluation {
                    hypotheses_met: true,
                    conclusion_holds: None,
                    positive: false,
                    note: Some("no separability idempotent".into()),
                };
            }
            let reg = degree_zero_regular(algebra);
            let regular = reg.zero_part_regular_in_algebra == Some(true)
                && reg.zero_part_domain == Some(true);
            if !regular {
                return LaneEvaluation {
                    hypotheses_met: true,
                    conclusion_holds: None,
                    positive: false,
                    note: Some("degree-zero regularity not established".into()),
                };
            }
            LaneEvaluation {
                hypotheses_met: true,
                conclusion_holds: Some(all_zero),
                positive: true,
                note: Some(format!("separable and regular; degrees {degrees:?}")),
            }
        }
        TheoremLane::ConnectiveSeparableCollapse => {
            if !algebra.is_commutative() || !connective {
                return LaneEvaluation {
                    hypotheses_met: false,
                    conclusion_holds: None,
                    positive: false,
                    note: Some("not commutative connective".into()),
                };
            }
            let sep = separability_idempotent(algebra);
            if !sep.separable {
                return LaneEvaluation {
                    hypotheses_met: true,
                    conclusion_holds: None,
                    positive: false,
                    note: Some("no separability idempotent".into()),
                };
            }
            LaneEvaluation {
                hypotheses_met: true,
                conclusion_holds: Some(all_zero),
                positive: true,
                note: Some(format!("separable; degrees {degrees:?}")),
            }
        }
        TheoremLane::PositiveDegreeWitness
        | TheoremLane::NegativeDegreeWitness
        | TheoremLane::WideZeroPartWitness => {
            let hypotheses_met = algebra.is_commutative()
                && match lane {
                    TheoremLane::PositiveDegreeWitness => {
                        connective && unit_spans_zero_part(algebra) && has_positive
                    }
                    TheoremLane::NegativeDegreeWitness => {
                        unit_spans_zero_part(algebra) && has_negative
                    }
                    _ => {
                        connective
                            && algebra.degree_indices(0).len() >= 2
                            && has_positive
                    }
                };
            if !hypotheses_met {
                return LaneEvaluation {
                    hypotheses_met: false,
                    conclusion_holds: None,
                    positive: false,
                    note: Some(format!("hypotheses unmet; degrees {degrees:?}")),
                };
            }
            match nontrivial_class(algebra) {
                Ok(Some(witness)) => LaneEvaluation {
                    hypotheses_met: true,
                    conclusion_holds: Some(true),
                    positive: true,
                    note: Some(format!("witness in degree {}", witness.degree)),
                },
                Ok(None) => LaneEvaluation {
                    hypotheses_met: true,
                    conclusion_holds: Some(false),
                    positive: false,
                    note: Some("differentials module is zero".into()),
                },
                Err(e) => LaneEvaluation {
                    hypotheses_met: true,
                    conclusion_holds: Some(false),
                    positive: false,
                    note: Some(format!("differentials check errored: {e}")),
                },
            }
        }
    }
}

/// One trial's record in a fuzz report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub instance_seed: u64,
    pub construction: String,
    pub generated: bool,
    pub hypotheses_met: bool,
    pub conclusion_holds: Option<bool>,
    pub positive: bool,
    pub note: Option<String>,
}

/// Aggregated outcome of a fuzz batch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub lane: String,
    pub trials: u64,
    pub generated: u64,
    pub generation_failures: u64,
    pub hypotheses_met: u64,
    pub conclusions_checked: u64,
    /// Trials whose triggering predicate fired; the harness sensitivity
    /// counter.
    pub positives: u64,
    pub counterexamples: Vec<TrialRecord>,
    pub records: Vec<TrialRecord>,
}

fn run_trial(lane: TheoremLane, cfg: &FuzzConfig, trial: u64) -> TrialRecord {
    let instance_seed = trial_seed(cfg.seed, trial);
    let mut record = replay_trial(lane, instance_seed, cfg);
    record.trial = trial;
    record
}

/// Re-run a single trial from its instance seed, independent of the batch
/// it came from. The returned record carries trial number `0`.
pub fn replay_trial(lane: TheoremLane, instance_seed: u64, cfg: &FuzzConfig) -> TrialRecord {
    let trial = 0;
    match lane_instance(lane, instance_seed, cfg) {
        Err(e) => TrialRecord {
            trial,
            instance_seed,
            construction: "-".into(),
            generated: false,
            hypotheses_met: false,
            conclusion_holds: None,
            positive: false,
            note: Some(e.to_string()),
        },
        Ok(inst) => {
            let ev = evaluate_lane(lane, &inst);
            TrialRecord {
                trial,
                instance_seed,
                construction: inst.construction.clone(),
                generated: true,
                hypotheses_met: ev.hypotheses_met,
                conclusion_holds: ev.conclusion_holds,
                positive: ev.positive,
                note: ev.note,
            }
        }
    }
}

/// Run a seeded fuzz batch for one lane. Per-trial seeds derive from the
/// batch seed alone, so the report is byte-identical for any job count.
pub fn run_fuzz(lane: TheoremLane, cfg: &FuzzConfig) -> FuzzReport {
    let jobs = cfg
        .jobs
        .max(1)
        .min(usize::try_from(cfg.trials).unwrap_or(usize::MAX).max(1));
    let records: Vec<TrialRecord> = if jobs <= 1 {
        (0..cfg.trials).map(|t| run_trial(lane, cfg, t)).collect()
    } else {
        let per = cfg.trials.div_ceil(jobs as u64);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs as u64)
                .map(|w| {
                    let lo = w * per;
                    let hi = (lo + per).min(cfg.trials);
                    scope.spawn(move || {
                        (lo..hi)
                            .map(|t| run_trial(lane, cfg, t))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            let mut all = Vec::with_capacity(cfg.trials as usize);
            for h in handles {
                all.extend(h.join().expect("fuzz worker panicked"));
            }
            all
        })
    };
    let mut report = FuzzReport {
        lane: lane.token().to_string(),
        trials: cfg.trials,
        generated: 0,
        generation_failures: 0,
        hypotheses_met: 0,
        conclusions_checked: 0,
        positives: 0,
        counterexamples: Vec::new(),
        records: Vec::new(),
    };
    for r in &records {
        if r.generated {
            report.generated += 1;
        } else {
            report.generation_failures += 1;
        }
        if r.hypotheses_met {
            report.hypotheses_met += 1;
        }
        if r.conclusion_holds.is_some() {
            report.conclusions_checked += 1;
        }
        if r.positive {
            report.positives += 1;
        }
        if r.conclusion_holds == Some(false) {
            report.counterexamples.push(r.clone());
        }
    }
    report.records = records;
    report
}
