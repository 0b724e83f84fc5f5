use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;

/// `u · input · v = s` with `u`, `v` unimodular and `s = [diag(γ_1..γ_k) 0]`.
///
/// The invariant factors are ordered so that each one divides its
/// *predecessor*: `γ_{i+1} | γ_i`. This is the reverse of the more common
/// ascending convention.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: PolyMatrix,
    pub s: PolyMatrix,
    pub v: PolyMatrix,
}

impl SmithDecomposition {
    pub fn invariant_factors(&self) -> Vec<Poly> {
        (0..self.s.rows()).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Whether `s = [I_k 0]`.
    pub fn is_identity_padded(&self) -> bool {
        self.s == PolyMatrix::identity_padded(self.s.field(), self.s.rows(), self.s.cols())
    }
}

/// Smith form of a full-row-rank `k × n` matrix (`k <= n`).
pub fn smith(a: &PolyMatrix) -> Result<SmithDecomposition> {
    let field = a.field().clone();
    let (k, n) = a.shape();
    if k > n {
        return Err(Error::RankDeficient);
    }
    let mut s = a.clone();
    let mut u = PolyMatrix::identity(&field, k);
    let mut v = PolyMatrix::identity(&field, n);

    for t in 0..k {
        loop {
            let pivot = (t..k)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !s.get(i, j).is_zero())
                .min_by_key(|&(i, j)| (s.get(i, j).degree(), i, j));
            let Some((pi, pj)) = pivot else {
                return Err(Error::RankDeficient);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..k {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = s.get(i, t).divrem(s.get(t, t))?;
                let factor = -&q;
                s.add_row_multiple(i, t, &factor);
                u.add_row_multiple(i, t, &factor);
                clean &= r.is_zero();
            }
            for j in t + 1..n {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = s.get(t, j).divrem(s.get(t, t))?;
                let factor = -&q;
                s.add_col_multiple(j, t, &factor);
                v.add_col_multiple(j, t, &factor);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the whole trailing block; otherwise pull
            // an offending row in and go again with a smaller pivot.
            let offender = (t + 1..k).find(|&i| {
                (t + 1..n).any(|j| !s.get(t, t).divides(s.get(i, j)))
            });
            match offender {
                Some(i) => {
                    let one = Poly::one(&field);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        let inv = field.inv(s.get(t, t).lc())?;
        s.scale_row(t, inv);
        u.scale_row(t, inv);
    }

    // The elimination yields γ_1 | γ_2 | ... ; reorder to the descending
    // chain. Stable, so equal factors keep their positions.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(s.get(i, i).degree()));
    let col_order: Vec<usize> = order.iter().copied().chain(k..n).collect();
    let s = s.select_rows(&order).select_columns(&col_order);
    let u = u.select_rows(&order);
    let v = v.select_columns(&col_order);
    debug_assert_eq!(u.mul(a).and_then(|ua| ua.mul(&v)).as_ref(), Ok(&s));
    Ok(SmithDecomposition { u, s, v })
}
