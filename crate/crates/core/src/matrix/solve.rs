use crate::error::{Error, Result};
use crate::matrix::hermite::{col_hermite, echelon, rank};
use crate::matrix::smith::smith;
use crate::matrix::PolyMatrix;
use crate::poly::Poly;

impl PolyMatrix {
    /// Square with a nonzero constant determinant.
    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.det()?.is_unit())
    }

    /// The maximal minors generate the unit ideal.
    pub fn is_left_prime(&self) -> Result<bool> {
        Ok(self.minor_gcd()?.is_one())
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn has_full_row_rank(&self) -> bool {
        self.rank() == self.rows()
    }
}

/// Module basis of `{x : A·xᵀ = 0}` as the rows of an `(n-k) × n` matrix.
///
/// The rows are the last `n-k` columns of the right Smith transform `V`,
/// brought to row Hermite form. Because `V` is unimodular the basis is
/// saturated: the returned matrix is left prime.
pub fn right_kernel_basis(a: &PolyMatrix) -> Result<PolyMatrix> {
    let (k, n) = a.shape();
    let d = smith(a)?;
    let tail: Vec<usize> = (k..n).collect();
    let h = d.v.select_columns(&tail).transpose();
    Ok(echelon(&h).0)
}

/// The unique `m` with `m·A = v`, or `None` when `v` is not in the row span.
pub fn solve_left(a: &PolyMatrix, v: &[Poly]) -> Result<Option<Vec<Poly>>> {
    let (k, n) = a.shape();
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for {} columns",
            v.len(),
            n
        )));
    }
    if k > n {
        return Err(Error::RankDeficient);
    }
    let field = a.field();
    if k == 0 {
        return Ok(v.iter().all(Poly::is_zero).then(Vec::new));
    }
    let d = col_hermite(a)?;
    let l = &d.form;
    if (0..k).any(|i| l.get(i, i).is_zero()) {
        return Err(Error::RankDeficient);
    }
    let w = d.transform.left_apply(v)?;
    if w[k..].iter().any(|e| !e.is_zero()) {
        return Ok(None);
    }
    let mut m = vec![Poly::zero(field); k];
    for j in (0..k).rev() {
        let mut rhs = w[j].clone();
        for (i, mi) in m.iter().enumerate().skip(j + 1) {
            rhs = &rhs - &(mi * l.get(i, j));
        }
        let (q, r) = rhs.divrem(l.get(j, j))?;
        if !r.is_zero() {
            return Ok(None);
        }
        m[j] = q;
    }
    Ok(Some(m))
}

/// Inverse of a unimodular matrix, read off its row reduction to `I`.
pub fn unimodular_inverse(a: &PolyMatrix) -> Result<PolyMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare);
    }
    let (h, u) = echelon(a);
    if h != PolyMatrix::identity(a.field(), a.rows()) {
        return Err(Error::MalformedInput("matrix is not unimodular".into()));
    }
    Ok(u)
}
