//! Matrices over `F_q[z]` and their canonical forms.

mod hermite;
mod smith;
mod solve;

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{split_top_level, vec_content, Poly};

pub use hermite::{col_hermite, row_hermite, HermiteDecomposition, Side};
pub use smith::{smith, SmithDecomposition};
pub use solve::{right_kernel_basis, solve_left, unimodular_inverse};

/// Dense `rows × cols` matrix of polynomials, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix[{}x{}]({self})", self.rows, self.cols)
    }
}

impl PolyMatrix {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(PolyMatrix { field: field.clone(), rows, cols, entries })
    }

    pub fn from_rows(field: &FieldSpec, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        PolyMatrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![Poly::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = PolyMatrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Poly::one(field);
        }
        m
    }

    /// `[I_k 0]` of shape `k × n`.
    pub fn identity_padded(field: &FieldSpec, k: usize, n: usize) -> Self {
        let mut m = PolyMatrix::zeros(field, k, n);
        for i in 0..k.min(n) {
            m.set(i, i, Poly::one(field));
        }
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Poly) {
        debug_assert!(value.field() == &self.field);
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Every entry is a constant.
    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(Poly::is_constant)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { field: self.field.clone(), rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(&self.field);
                for t in 0..self.cols {
                    let a = self.get(i, t);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * other.get(t, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        let row = PolyMatrix::from_rows(&self.field, vec![v.to_vec()])?;
        Ok(row.mul(self)?.entries)
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(PolyMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, c: &Poly) -> Self {
        PolyMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// `[self other]`.
    pub fn hstack(&self, other: &PolyMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(other.row(i)).cloned().collect())
            .collect();
        PolyMatrix::from_rows(&self.field, rows).map(|m| m.with_shape(self.rows, self.cols + other.cols))
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &PolyMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(PolyMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Prepend a single row.
    pub fn with_top_row(&self, row: &[Poly]) -> Result<Self> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} for {} columns",
                row.len(),
                self.cols
            )));
        }
        let top = PolyMatrix::new(&self.field, 1, self.cols, row.to_vec())?;
        top.vstack(self)
    }

    /// `diag(self, other)`.
    pub fn block_diag(&self, other: &PolyMatrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out =
            PolyMatrix::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { field: self.field.clone(), rows: self.rows, cols: cols.len(), entries }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let entries = rows.iter().flat_map(|&i| self.row(i).iter().cloned()).collect();
        PolyMatrix { field: self.field.clone(), rows: rows.len(), cols: self.cols, entries }
    }

    fn with_shape(mut self, rows: usize, cols: usize) -> Self {
        // from_rows cannot infer the width of a matrix with no rows.
        self.rows = rows;
        self.cols = cols;
        self
    }

    // Elementary operations used by the reductions.

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += factor · row[source]`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Poly) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(source, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(target, j) + &(factor * s);
            self.set(target, j, v);
        }
    }

    /// `col[target] += factor · col[source]`.
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &Poly) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, source);
            if s.is_zero() {
                continue;
            }
            let v = self.get(i, target) + &(factor * s);
            self.set(i, target, v);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: FieldElement) {
        for j in 0..self.cols {
            let v = self.get(i, j).scale(c);
            self.set(i, j, v);
        }
    }

    /// Determinant: cofactor expansion up to 4×4, fraction-free
    /// elimination above.
    pub fn det(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        if self.rows <= 4 {
            Ok(self.det_laplace())
        } else {
            Ok(self.det_bareiss())
        }
    }

    pub(crate) fn det_laplace(&self) -> Poly {
        fn go(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Poly {
            let f = m.field();
            match rows.len() {
                0 => Poly::one(f),
                1 => m.get(rows[0], cols[0]).clone(),
                _ => {
                    let mut acc = Poly::zero(f);
                    for (idx, &c) in cols.iter().enumerate() {
                        let a = m.get(rows[0], c);
                        if a.is_zero() {
                            continue;
                        }
                        let rest: Vec<usize> =
                            cols.iter().copied().filter(|&x| x != c).collect();
                        let term = a * &go(m, &rows[1..], &rest);
                        acc = if idx % 2 == 0 { &acc + &term } else { &acc - &term };
                    }
                    acc
                }
            }
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        go(self, &idx, &idx)
    }

    pub(crate) fn det_bareiss(&self) -> Poly {
        let f = self.field.clone();
        let n = self.rows;
        if n == 0 {
            return Poly::one(&f);
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = Poly::one(&f);
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return Poly::zero(&f),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(m.get(i, j) * m.get(k, k)) - &(m.get(i, k) * m.get(k, j));
                    let v = num.div_exact(&prev).expect("Bareiss division is exact");
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        if negate {
            -&d
        } else {
            d
        }
    }

    /// All `k × k` minors for a `k × n` matrix, columns chosen in
    /// lexicographic order.
    pub fn maximal_minors(&self) -> Result<Vec<Poly>> {
        if self.rows > self.cols {
            return Err(Error::ShapeUnsupported(format!(
                "{}x{} has more rows than columns",
                self.rows, self.cols
            )));
        }
        Ok((0..self.cols)
            .combinations(self.rows)
            .map(|cols| self.select_columns(&cols).det().expect("square"))
            .collect())
    }

    /// Monic gcd of the maximal minors.
    pub fn minor_gcd(&self) -> Result<Poly> {
        let minors = self.maximal_minors()?;
        vec_content(&minors)
    }

    /// Parse `e,e,e ; e,e,e`: rows separated by `;`, entries by `,`.
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        let rows = split_top_level(s, ';')?
            .into_iter()
            .map(|row| parse_vector(field, row))
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(field, rows)
            .map_err(|e| Error::Parse(format!("inconsistent matrix: {e}")))
    }
}

/// Parse a comma separated row vector of polynomials.
pub fn parse_vector(field: &FieldSpec, s: &str) -> Result<Vec<Poly>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty vector".into()));
    }
    split_top_level(s, ',')?
        .into_iter()
        .map(|e| Poly::parse(field, e))
        .collect()
}

pub fn format_vector(v: &[Poly]) -> String {
    v.iter().map(ToString::to_string).join(",")
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = (0..self.rows).map(|i| format_vector(self.row(i))).join(" ; ");
        write!(f, "{rows}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(field: &FieldSpec, s: &str) -> PolyMatrix {
        PolyMatrix::parse(field, s).unwrap()
    }

    #[test]
    fn product_examples() {
        let f5 = FieldSpec::prime(5).unwrap();
        let g = m(&f5, "3,z,1,3*z ; 1,2*z+4,2,z+2");
        assert!(g.mul(&g.transpose()).unwrap().is_zero());

        let f2 = FieldSpec::prime(2).unwrap();
        let ones = m(&f2, "1,1,1,1");
        assert!(ones.mul(&ones.transpose()).unwrap().is_zero());
        let a = m(&f2, "z,1 ; 0,z+1");
        assert_eq!(a.mul(&PolyMatrix::identity(&f2, 2)).unwrap(), a);
        assert!(matches!(a.mul(&ones), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn constant_minor_of_f5_example() {
        let f5 = FieldSpec::prime(5).unwrap();
        let g = m(&f5, "3,z,1,3*z ; 1,2*z+4,2,z+2");
        let minor = g.select_columns(&[0, 1]).det().unwrap();
        assert_eq!(minor, Poly::from_ints(&f5, &[2]));
    }

    #[test]
    fn laplace_and_bareiss_agree() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = m(&f3, "z,1,2,0 ; 1,z^2,0,1 ; 2*z,0,1,z ; 1,1,1,z+2");
        assert_eq!(a.det_laplace(), a.det_bareiss());
        let b = m(&f3, "0,1,0 ; 1,0,0 ; 0,0,z");
        assert_eq!(b.det_bareiss(), Poly::parse(&f3, "2*z").unwrap());
        assert_eq!(b.det_laplace(), b.det_bareiss());
    }

    #[test]
    fn text_round_trip() {
        let f2 = FieldSpec::prime(2).unwrap();
        let s = "1,1,1,1 ; 0,z^2+z+1,z,z^2+1";
        assert_eq!(m(&f2, s).to_string(), s);
        assert_eq!(m(&f2, "1,1,1,1;0,z^2+z+1,z,z^2+1").to_string(), s);
        assert!(PolyMatrix::parse(&f2, "1,1 ; 1").is_err());
    }

    #[test]
    fn stacking() {
        let f2 = FieldSpec::prime(2).unwrap();
        let a = m(&f2, "1,1");
        let d = a.block_diag(&a).unwrap();
        assert_eq!(d, m(&f2, "1,1,0,0 ; 0,0,1,1"));
        assert_eq!(a.vstack(&a).unwrap().shape(), (2, 2));
        assert_eq!(a.hstack(&a).unwrap(), m(&f2, "1,1,1,1"));
    }
}
