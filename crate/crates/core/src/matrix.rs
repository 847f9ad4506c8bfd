//! Dense exact matrices over a [`BaseRing`] and Smith normal form.
//!
//! The single computational primitive is Smith normal form over `Z` with
//! tracked unimodular transforms. Modular rings reuse it: the normal form of
//! a matrix over `Z/n` is the integer normal form reduced and canonicalized
//! mod `n`, and solving / kernel computation over `Z/n` lift to `Z` with
//! `n * identity` relation columns adjoined.

use crate::ring::{BaseRing, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Errors from shape-sensitive matrix operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrices live over different base rings")]
    RingMismatch,
}

/// A dense `rows x cols` matrix with canonical entries.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    ring: BaseRing,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.ring)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(ring: &BaseRing, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &BaseRing, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_fn(
        ring: &BaseRing,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut m = Matrix::zero(ring, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, ring.canon(f(r, c).as_bigint().clone()));
            }
        }
        m
    }

    pub fn from_i64_rows(ring: &BaseRing, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::from_fn(ring, r, c, |i, j| ring.scalar_from_i64(rows[i][j]))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ring: &BaseRing, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        assert!(cols.iter().all(|c| c.len() == rows), "ragged columns");
        Matrix::from_fn(ring, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.data[r * self.cols + c] = self.ring.canon(value.as_bigint().clone());
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        (0..self.cols).map(|c| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_same_shape(other)?;
        Ok(Matrix::from_fn(&self.ring, self.rows, self.cols, |r, c| {
            self.ring.add(self.get(r, c), other.get(r, c))
        }))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_same_shape(other)?;
        Ok(Matrix::from_fn(&self.ring, self.rows, self.cols, |r, c| {
            self.ring.sub(self.get(r, c), other.get(r, c))
        }))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows, self.cols, |r, c| {
            self.ring.mul(self.get(r, c), s)
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.ring != other.ring {
            return Err(MatrixError::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(&self.ring, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).clone();
                    out.set(r, c, self.ring.add(&cur, &self.ring.mul(a, b)));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} * vec[{}]",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![self.ring.zero(); self.rows];
        for r in 0..self.rows {
            let mut acc = self.ring.zero();
            for c in 0..self.cols {
                let a = self.get(r, c);
                if a.is_zero() || v[c].is_zero() {
                    continue;
                }
                acc = self.ring.add(&acc, &self.ring.mul(a, &v[c]));
            }
            out[r] = acc;
        }
        Ok(out)
    }

    /// Stack side by side: `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.ring != other.ring {
            return Err(MatrixError::RingMismatch);
        }
        if self.rows != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "hstack {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(&self.ring, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        }))
    }

    /// Stack on top of each other: `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.ring != other.ring {
            return Err(MatrixError::RingMismatch);
        }
        if self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "vstack {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(&self.ring, self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.get(r, c).clone()
            } else {
                other.get(r - self.rows, c).clone()
            }
        }))
    }

    /// Keep the listed columns, in order.
    pub fn select_columns(&self, indices: &[usize]) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows, indices.len(), |r, c| {
            self.get(r, indices[c]).clone()
        })
    }

    /// Keep the listed rows, in order.
    pub fn select_rows(&self, indices: &[usize]) -> Matrix {
        Matrix::from_fn(&self.ring, indices.len(), self.cols, |r, c| {
            self.get(indices[r], c).clone()
        })
    }

    /// Kronecker product, with `(rA, rB)` mapping to row `rA * other.rows + rB`.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring, "kronecker over mismatched rings");
        Matrix::from_fn(
            &self.ring,
            self.rows * other.rows,
            self.cols * other.cols,
            |r, c| {
                let (ra, rb) = (r / other.rows, r % other.rows);
                let (ca, cb) = (c / other.cols, c % other.cols);
                self.ring.mul(self.get(ra, ca), other.get(rb, cb))
            },
        )
    }

    /// Exact determinant (square matrices). Computed fraction-free over the
    /// integer lift, then reduced, so it is valid over all three rings.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return self.ring.one();
        }
        // Bareiss fraction-free elimination over Z.
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c).as_bigint().clone()).collect())
            .collect();
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return self.ring.zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num.checked_div(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        self.ring.canon(a[n - 1][n - 1].clone() * BigInt::from(sign))
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<(), MatrixError> {
        if self.ring != other.ring {
            return Err(MatrixError::RingMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

/// Smith normal form `u * m * v = d` with `u`, `v` invertible over the ring
/// and `d` diagonal with each entry dividing the next.
///
/// Over `Z` the diagonal is non-negative; over `Z/n` every nonzero diagonal
/// entry is the canonical divisor `gcd(lift, n)` of the modulus (so over a
/// prime field the diagonal is ones followed by zeros).
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
}

impl SmithNormalForm {
    /// The diagonal entries `d_0, d_1, ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// Number of leading diagonal entries that are units.
    pub fn unit_count(&self) -> usize {
        let ring = self.d.ring().clone();
        self.diagonal().iter().take_while(|e| ring.is_unit(e)).count()
    }

    /// Number of nonzero diagonal entries.
    pub fn nonzero_count(&self) -> usize {
        self.diagonal().iter().take_while(|e| !e.is_zero()).count()
    }
}

/// Integer worker: u * m * v = d over Z, u and v unimodular, d diagonal with
/// a non-negative divisibility chain.
fn snf_integer(mut a: Vec<Vec<BigInt>>, rows: usize, cols: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| (0..rows).map(|c| if r == c { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut v: Vec<Vec<BigInt>> = (0..cols)
        .map(|r| (0..cols).map(|c| if r == c { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();

    // Row op: row_i <- s*row_i + t*row_j ; row_j <- p*row_i + q*row_j, applied
    // to both the working matrix and u. The 2x2 block [[s,t],[p,q]] must be
    // unimodular.
    fn row_pair(m: &mut [Vec<BigInt>], i: usize, j: usize, s: &BigInt, t: &BigInt, p: &BigInt, q: &BigInt) {
        let cols = m[0].len();
        for c in 0..cols {
            let a = m[i][c].clone();
            let b = m[j][c].clone();
            m[i][c] = s * &a + t * &b;
            m[j][c] = p * &a + q * &b;
        }
    }
    fn col_pair(m: &mut [Vec<BigInt>], i: usize, j: usize, s: &BigInt, t: &BigInt, p: &BigInt, q: &BigInt) {
        for row in m.iter_mut() {
            let a = row[i].clone();
            let b = row[j].clone();
            row[i] = s * &a + t * &b;
            row[j] = p * &a + q * &b;
        }
    }

    let mut t = 0usize;
    while t < rows.min(cols) {
        // Pick the smallest nonzero entry of the trailing submatrix as pivot.
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if !a[r][c].is_zero()
                    && pivot.is_none_or(|(pr, pc)| a[r][c].abs() < a[pr][pc].abs())
                {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        if pr != t {
            a.swap(pr, t);
            u.swap(pr, t);
        }
        if pc != t {
            for row in a.iter_mut() {
                row.swap(pc, t);
            }
            for row in v.iter_mut() {
                row.swap(pc, t);
            }
        }

        'clear: loop {
            // Clear column t with unimodular row pairs. When the pivot divides
            // the target a plain shear removes it without touching row t;
            // otherwise a Bezout pair replaces the pivot by the (strictly
            // smaller) gcd. Termination rests on that dichotomy: shears never
            // re-dirty anything, and every Bezout pair shrinks |pivot|.
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let x = a[t][t].clone();
                let y = a[r][t].clone();
                let (q, rem) = y.div_rem(&x);
                if rem.is_zero() {
                    let (one, zero, neg_q) = (BigInt::one(), BigInt::zero(), -q);
                    row_pair(&mut a, t, r, &one, &zero, &neg_q, &one);
                    row_pair(&mut u, t, r, &one, &zero, &neg_q, &one);
                } else {
                    let e = x.extended_gcd(&y);
                    let (s, w, g) = (e.x, e.y, e.gcd);
                    let (xq, neg_yq) = (&x / &g, -(&y / &g));
                    row_pair(&mut a, t, r, &s, &w, &neg_yq, &xq);
                    row_pair(&mut u, t, r, &s, &w, &neg_yq, &xq);
                }
            }
            // Clear row t the same way; only a Bezout pair can re-dirty
            // column t below the pivot.
            let mut dirtied_column = false;
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let x = a[t][t].clone();
                let y = a[t][c].clone();
                let (q, rem) = y.div_rem(&x);
                if rem.is_zero() {
                    let (one, zero, neg_q) = (BigInt::one(), BigInt::zero(), -q);
                    col_pair(&mut a, t, c, &one, &zero, &neg_q, &one);
                    col_pair(&mut v, t, c, &one, &zero, &neg_q, &one);
                } else {
                    let e = x.extended_gcd(&y);
                    let (s, w, g) = (e.x, e.y, e.gcd);
                    let (xq, neg_yq) = (&x / &g, -(&y / &g));
                    col_pair(&mut a, t, c, &s, &w, &neg_yq, &xq);
                    col_pair(&mut v, t, c, &s, &w, &neg_yq, &xq);
                    dirtied_column = true;
                }
            }
            if dirtied_column && (t + 1..rows).any(|r| !a[r][t].is_zero()) {
                continue 'clear;
            }
            // Pull any entry the pivot does not divide into row t and redo.
            let p = a[t][t].clone();
            let mut offender = None;
            'scan: for r in t + 1..rows {
                for c in t + 1..cols {
                    if !(&a[r][c] % &p).is_zero() {
                        offender = Some(r);
                        break 'scan;
                    }
                }
            }
            if let Some(r) = offender {
                let one = BigInt::one();
                let zero = BigInt::zero();
                row_pair(&mut a, t, r, &one, &one, &zero, &one);
                row_pair(&mut u, t, r, &one, &one, &zero, &one);
                continue 'clear;
            }
            break;
        }
        t += 1;
    }

    // Sign-normalize the diagonal.
    for i in 0..rows.min(cols) {
        if a[i][i].is_negative() {
            for c in 0..cols {
                a[i][c] = -a[i][c].clone();
            }
            for c in 0..rows {
                u[i][c] = -u[i][c].clone();
            }
        }
    }
    (u, a, v)
}

impl Matrix {
    /// Method form of [`smith_normal_form`].
    pub fn smith_normal_form(&self) -> SmithNormalForm {
        smith_normal_form(self)
    }

    /// Method form of [`solve`]; panics on a wrong-length right-hand side.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        solve(self, b).expect("right-hand side length matches row count")
    }

    /// Method form of [`kernel_basis`].
    pub fn kernel_basis(&self) -> Matrix {
        kernel_basis(self)
    }
}

/// Smith normal form over the matrix's own ring.
pub fn smith_normal_form(m: &Matrix) -> SmithNormalForm {
    let ring = m.ring().clone();
    let lift: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).as_bigint().clone()).collect())
        .collect();
    let (u, d, v) = snf_integer(lift, m.rows(), m.cols());
    let to_matrix = |raw: &Vec<Vec<BigInt>>, rows: usize, cols: usize| {
        Matrix::from_fn(&ring, rows, cols, |r, c| ring.canon(raw[r][c].clone()))
    };
    let mut u = to_matrix(&u, m.rows(), m.rows());
    let mut d = to_matrix(&d, m.rows(), m.cols());
    let v = to_matrix(&v, m.cols(), m.cols());

    // Canonicalize modular diagonals: every nonzero entry becomes the divisor
    // gcd(lift, n) of the modulus, absorbing the unit part into u.
    if ring.is_finite() {
        for i in 0..d.rows().min(d.cols()) {
            let entry = d.get(i, i).clone();
            if entry.is_zero() {
                continue;
            }
            let (unit, divisor) = ring
                .unit_times_divisor(&entry)
                .expect("finite ring factorization");
            if unit.is_one() {
                continue;
            }
            let scale = ring.inv(&unit).expect("unit part is invertible");
            d.set(i, i, divisor);
            for c in 0..u.cols() {
                let cur = u.get(i, c).clone();
                u.set(i, c, ring.mul(&cur, &scale));
            }
        }
    }
    SmithNormalForm { u, d, v }
}

/// A particular solution `x` of `m x = b`, or `None` when no solution exists.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, MatrixError> {
    if b.len() != m.rows() {
        return Err(MatrixError::DimensionMismatch(format!(
            "solve: {} rows vs rhs of length {}",
            m.rows(),
            b.len()
        )));
    }
    let ring = m.ring().clone();
    match ring.modulus() {
        None => Ok(solve_integer(m, b)),
        Some(n) => {
            // Lift to Z and adjoin n*I columns: m x = b (mod n) iff
            // [m | nI] (x; t) = b over Z for some integer t.
            let z = BaseRing::integers();
            let lift = Matrix::from_fn(&z, m.rows(), m.cols(), |r, c| {
                z.canon(m.get(r, c).as_bigint().clone())
            });
            let n_scalar = z.canon(n.clone());
            let n_block = Matrix::identity(&z, m.rows()).scale(&n_scalar);
            let wide = lift.hstack(&n_block)?;
            let b_lift: Vec<Scalar> = b.iter().map(|s| z.canon(s.as_bigint().clone())).collect();
            Ok(solve_integer(&wide, &b_lift).map(|xt| {
                xt[..m.cols()]
                    .iter()
                    .map(|s| ring.canon(s.as_bigint().clone()))
                    .collect()
            }))
        }
    }
}

fn solve_integer(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let ring = m.ring().clone();
    let snf = smith_normal_form(m);
    let c = snf.u.mul_vec(b).expect("shape");
    let diag = snf.diagonal();
    let mut y = vec![ring.zero(); m.cols()];
    for (i, ci) in c.iter().enumerate() {
        match diag.get(i) {
            Some(di) if !di.is_zero() => {
                y[i] = ring.div_exact(ci, di)?;
            }
            _ => {
                // Zero diagonal entry or row beyond the diagonal: the
                // transformed rhs must vanish there.
                if !ci.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(snf.v.mul_vec(&y).expect("shape"))
}

/// Columns generating the kernel `{x : m x = 0}` as a module.
///
/// Over `Z` the columns are a lattice basis; over `Z/n` they generate the
/// kernel including its torsion part (via the lifted `n*I` relation columns).
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let ring = m.ring().clone();
    match ring.modulus() {
        None => kernel_integer(m),
        Some(n) => {
            let z = BaseRing::integers();
            let lift = Matrix::from_fn(&z, m.rows(), m.cols(), |r, c| {
                z.canon(m.get(r, c).as_bigint().clone())
            });
            let n_scalar = z.canon(n.clone());
            let n_block = Matrix::identity(&z, m.rows()).scale(&n_scalar);
            let wide = lift.hstack(&n_block).expect("shape");
            let big_kernel = kernel_integer(&wide);
            let mut cols: Vec<Vec<Scalar>> = Vec::new();
            for j in 0..big_kernel.cols() {
                let col: Vec<Scalar> = (0..m.cols())
                    .map(|r| ring.canon(big_kernel.get(r, j).as_bigint().clone()))
                    .collect();
                if col.iter().any(|s| !s.is_zero()) {
                    cols.push(col);
                }
            }
            Matrix::from_columns(&ring, m.cols(), &cols)
        }
    }
}

fn kernel_integer(m: &Matrix) -> Matrix {
    let snf = smith_normal_form(m);
    let nonzero = snf.nonzero_count();
    let free: Vec<usize> = (nonzero..m.cols()).collect();
    snf.v.select_columns(&free)
}

/// True when `x` lies in the column span of `gens` (as a module over the ring).
pub fn in_column_span(gens: &Matrix, x: &[Scalar]) -> bool {
    matches!(solve(gens, x), Ok(Some(_)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z() -> BaseRing {
        BaseRing::integers()
    }

    #[test]
    fn snf_of_diag_2_3_is_diag_1_6() {
        let m = Matrix::from_i64_rows(&z(), &[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&m);
        let d = snf.diagonal();
        assert_eq!(d[0], z().scalar_from_i64(1));
        assert_eq!(d[1], z().scalar_from_i64(6));
        let umv = snf.u.mul(&m).unwrap().mul(&snf.v).unwrap();
        assert_eq!(umv, snf.d);
        assert!(snf.u.det().as_bigint().magnitude().is_one());
        assert!(snf.v.det().as_bigint().magnitude().is_one());
    }

    #[test]
    fn solve_over_f2() {
        let f2 = BaseRing::prime_field(2).unwrap();
        let m = Matrix::from_i64_rows(&f2, &[&[1, 1], &[0, 1]]);
        let b = vec![f2.scalar_from_i64(0), f2.scalar_from_i64(1)];
        let x = solve(&m, &b).unwrap().unwrap();
        assert_eq!(x, vec![f2.one(), f2.one()]);
    }

    #[test]
    fn solve_detects_unsolvable_over_z() {
        let m = Matrix::from_i64_rows(&z(), &[&[2]]);
        let b = vec![z().scalar_from_i64(3)];
        assert_eq!(solve(&m, &b).unwrap(), None);
    }

    #[test]
    fn solve_torsion_over_z4() {
        let z4 = BaseRing::integers_mod(4).unwrap();
        let m = Matrix::from_i64_rows(&z4, &[&[2]]);
        let b = vec![z4.scalar_from_i64(2)];
        let x = solve(&m, &b).unwrap().expect("2x = 2 solvable mod 4");
        // Any valid representative is accepted.
        assert_eq!(m.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn kernel_of_multiplication_by_two_mod_four() {
        let z4 = BaseRing::integers_mod(4).unwrap();
        let m = Matrix::from_i64_rows(&z4, &[&[2]]);
        let k = kernel_basis(&m);
        // The kernel is exactly {0, 2}: generated by 2, and 2 must lie in the
        // span of the generators.
        assert!(k.cols() >= 1);
        for j in 0..k.cols() {
            let g = k.column(j);
            assert!(m.mul_vec(&g).unwrap().iter().all(Scalar::is_zero));
        }
        assert!(in_column_span(&k, &[z4.scalar_from_i64(2)]));
        assert!(!in_column_span(&k, &[z4.scalar_from_i64(1)]));
    }

    #[test]
    fn kernel_over_z_is_a_lattice_basis() {
        // x + y + z = 0 over Z: kernel of a 1x3 matrix is free of rank 2.
        let m = Matrix::from_i64_rows(&z(), &[&[1, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        for j in 0..k.cols() {
            assert!(m.mul_vec(&k.column(j)).unwrap().iter().all(Scalar::is_zero));
        }
        // (1, -2, 1) is in the kernel, so it must be an integer combination.
        let v = vec![
            z().scalar_from_i64(1),
            z().scalar_from_i64(-2),
            z().scalar_from_i64(1),
        ];
        assert!(in_column_span(&k, &v));
    }

    #[test]
    fn modular_snf_diagonal_entries_divide_the_modulus() {
        let z12 = BaseRing::integers_mod(12).unwrap();
        let m = Matrix::from_i64_rows(&z12, &[&[8, 2], &[4, 6]]);
        let snf = smith_normal_form(&m);
        let umv = snf.u.mul(&m).unwrap().mul(&snf.v).unwrap();
        assert_eq!(umv, snf.d);
        assert!(z12.is_unit(&snf.u.det()));
        assert!(z12.is_unit(&snf.v.det()));
        for e in snf.diagonal() {
            if !e.is_zero() {
                assert!(
                    num_bigint::BigInt::from(12).is_multiple_of(e.as_bigint()),
                    "{e} should divide 12"
                );
            }
        }
    }

    #[test]
    fn empty_shapes_are_handled() {
        let m = Matrix::zero(&z(), 3, 0);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d.rows(), 3);
        assert_eq!(snf.d.cols(), 0);
        assert_eq!(kernel_basis(&m).cols(), 0);
        assert_eq!(
            solve(&m, &[z().zero(), z().zero(), z().zero()]).unwrap(),
            Some(vec![])
        );
        assert_eq!(
            solve(&m, &[z().one(), z().zero(), z().zero()]).unwrap(),
            None
        );
    }

    fn arb_ring() -> impl Strategy<Value = BaseRing> {
        prop_oneof![
            Just(BaseRing::integers()),
            (2u32..13).prop_map(|n| BaseRing::integers_mod(n).unwrap()),
            prop_oneof![Just(2i64), Just(3), Just(5), Just(7)]
                .prop_map(|p| BaseRing::prime_field(p).unwrap()),
        ]
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (arb_ring(), 1usize..5, 1usize..5).prop_flat_map(|(ring, r, c)| {
            proptest::collection::vec(-9i64..10, r * c).prop_map(move |vals| {
                Matrix::from_fn(&ring, r, c, |i, j| ring.scalar_from_i64(vals[i * c + j]))
            })
        })
    }

    proptest! {
        #[test]
        fn snf_transform_identity_and_chain(m in arb_matrix()) {
            let ring = m.ring().clone();
            let snf = smith_normal_form(&m);
            let umv = snf.u.mul(&m).unwrap().mul(&snf.v).unwrap();
            prop_assert_eq!(&umv, &snf.d);
            prop_assert!(ring.is_unit(&snf.u.det()));
            prop_assert!(ring.is_unit(&snf.v.det()));
            // Off-diagonal zero.
            for r in 0..snf.d.rows() {
                for c in 0..snf.d.cols() {
                    if r != c {
                        prop_assert!(snf.d.get(r, c).is_zero());
                    }
                }
            }
            // Divisibility chain on the integer lifts.
            let diag = snf.diagonal();
            for w in diag.windows(2) {
                let (a, b) = (w[0].as_bigint(), w[1].as_bigint());
                if a.is_zero() {
                    prop_assert!(b.is_zero());
                } else {
                    prop_assert!((b % a).is_zero(), "{} should divide {}", a, b);
                }
            }
        }

        #[test]
        fn kernel_columns_are_killed(m in arb_matrix()) {
            let k = kernel_basis(&m);
            for j in 0..k.cols() {
                let img = m.mul_vec(&k.column(j)).unwrap();
                prop_assert!(img.iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn solve_reproduces_rhs(m in arb_matrix(), xs in proptest::collection::vec(-5i64..6, 16)) {
            let ring = m.ring().clone();
            let x: Vec<Scalar> = (0..m.cols()).map(|i| ring.scalar_from_i64(xs[i])).collect();
            let b = m.mul_vec(&x).unwrap();
            let found = solve(&m, &b).unwrap().expect("constructed system is solvable");
            prop_assert_eq!(m.mul_vec(&found).unwrap(), b);
        }
    }

    #[test]
    fn kernel_exhaustive_cross_check_small_modular() {
        // Exhaustively enumerate kernels of small matrices over small modular
        // rings and check they coincide with the span of kernel_basis.
        for n in [2i64, 3, 4, 6] {
            let ring = BaseRing::integers_mod(n).unwrap();
            let entries: Vec<i64> = (0..n).collect();
            for a in &entries {
                for b in &entries {
                    for c in &entries {
                        for d in &entries {
                            let m = Matrix::from_i64_rows(&ring, &[&[*a, *b], &[*c, *d]]);
                            let k = kernel_basis(&m);
                            for x0 in &entries {
                                for x1 in &entries {
                                    let x = vec![ring.scalar_from_i64(*x0), ring.scalar_from_i64(*x1)];
                                    let in_kernel =
                                        m.mul_vec(&x).unwrap().iter().all(Scalar::is_zero);
                                    assert_eq!(
                                        in_kernel,
                                        in_column_span(&k, &x),
                                        "kernel membership mismatch mod {n} for {m:?} at {x:?}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
