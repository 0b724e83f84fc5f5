use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Row,
    Column,
}

/// A Hermite form together with the unimodular transform producing it:
/// `transform · input = form` on the row side, `input · transform = form`
/// on the column side.
#[derive(Debug, Clone)]
pub struct HermiteDecomposition {
    pub form: PolyMatrix,
    pub transform: PolyMatrix,
    pub side: Side,
}

/// Reduced row echelon form over `F_q[z]` for a matrix of any shape.
///
/// Pivots are monic, entries above a pivot have strictly smaller degree
/// than the pivot, zero rows come last. The pivot in each elimination round
/// is the lowest-degree nonzero entry of the column, ties going to the
/// smallest row index.
pub(crate) fn echelon(a: &PolyMatrix) -> (PolyMatrix, PolyMatrix) {
    let field = a.field().clone();
    let (rows, cols) = a.shape();
    let mut h = a.clone();
    let mut u = PolyMatrix::identity(&field, rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut found = false;
        loop {
            let pivot = (r..rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by_key(|&i| (h.get(i, c).degree(), i));
            let Some(p) = pivot else { break };
            found = true;
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let (q, rem) = h.get(i, c).divrem(h.get(r, c)).expect("pivot is nonzero");
                let factor = -&q;
                h.add_row_multiple(i, r, &factor);
                u.add_row_multiple(i, r, &factor);
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        let inv = field.inv(h.get(r, c).lc()).expect("pivot is nonzero");
        h.scale_row(r, inv);
        u.scale_row(r, inv);
        for i in 0..r {
            if h.get(i, c).is_zero() {
                continue;
            }
            let (q, _) = h.get(i, c).divrem(h.get(r, c)).expect("pivot is nonzero");
            let factor = -&q;
            h.add_row_multiple(i, r, &factor);
            u.add_row_multiple(i, r, &factor);
        }
        r += 1;
    }
    (h, u)
}

/// Number of nonzero rows in the echelon form.
pub(crate) fn rank(a: &PolyMatrix) -> usize {
    let (h, _) = echelon(a);
    (0..h.rows()).filter(|&i| h.row(i).iter().any(|e| !e.is_zero())).count()
}

fn require_wide(a: &PolyMatrix) -> Result<()> {
    if a.rows() > a.cols() {
        return Err(Error::ShapeUnsupported(format!(
            "Hermite form needs k <= n, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

/// Row Hermite form `U·A`.
pub fn row_hermite(a: &PolyMatrix) -> Result<HermiteDecomposition> {
    require_wide(a)?;
    let (form, transform) = echelon(a);
    Ok(HermiteDecomposition { form, transform, side: Side::Row })
}

/// Column Hermite form `A·V = [L 0]`, `L` lower triangular with monic
/// diagonal and entries left of each pivot of smaller degree.
pub fn col_hermite(a: &PolyMatrix) -> Result<HermiteDecomposition> {
    require_wide(a)?;
    let (h, u) = echelon(&a.transpose());
    Ok(HermiteDecomposition {
        form: h.transpose(),
        transform: u.transpose(),
        side: Side::Column,
    })
}
