//! Exhaustive enumeration of small self-dual code families.

use std::collections::HashSet;

use itertools::Itertools;
use rayon::prelude::*;
use serde_json::json;

use crate::code::{ConvolutionalCode, DistanceReport, DistanceStatus};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::PolyMatrix;
use crate::poly::Poly;

/// Per-record cap on the free-distance search; the bound is lowered until
/// the search fits.
pub const RECORD_SEARCH_CAP: u128 = 1 << 18;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub generator: PolyMatrix,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub degree: usize,
    pub distance: Option<DistanceReport>,
}

impl ClassificationRecord {
    /// `target_bound` is lowered as needed to respect [`RECORD_SEARCH_CAP`].
    pub fn from_code(code: &ConvolutionalCode, target_bound: usize) -> Self {
        let distance = (0..=target_bound)
            .rev()
            .find_map(|b| code.free_distance_with_cap(b, RECORD_SEARCH_CAP).ok());
        ClassificationRecord {
            generator: code.canonical_generator().clone(),
            q: code.field().order(),
            n: code.length(),
            k: code.dimension(),
            degree: code.degree(),
            distance,
        }
    }

    fn dfree_text(&self) -> String {
        match &self.distance {
            Some(d) if d.status == DistanceStatus::StableUnderBound => format!("dfree={}", d.value),
            Some(d) => format!("dfree<={}", d.value),
            None => "dfree=?".to_string(),
        }
    }

    /// `q=<q> n=<n> k=<k> delta=<δ> dfree=<v>|dfree<=<v> gen=<matrix>`
    pub fn catalog_line(&self) -> String {
        format!(
            "q={} n={} k={} delta={} {} gen={}",
            self.q,
            self.n,
            self.k,
            self.degree,
            self.dfree_text(),
            self.generator
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (dfree, status, bound) = match &self.distance {
            Some(d) => (
                json!(d.value),
                json!(if d.is_stable() { "stable" } else { "upper-bound" }),
                json!(d.search_bound),
            ),
            None => (json!(null), json!("unknown"), json!(null)),
        };
        json!({
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "delta": self.degree,
            "dfree": dfree,
            "dfree_status": status,
            "dfree_bound": bound,
            "gen": self.generator.to_string(),
        })
    }
}

/// All polynomials of degree `<= max_deg`, ordered lexicographically by
/// coefficient vector `(c_0, …, c_D)`.
pub fn polys_up_to(field: &FieldSpec, max_deg: usize) -> Vec<Poly> {
    let q = field.order() as usize;
    let len = max_deg + 1;
    let total = q.pow(len as u32);
    (0..total)
        .map(|mut idx| {
            let mut coeffs = vec![field.zero(); len];
            for c in coeffs.iter_mut().rev() {
                *c = field.element((idx % q) as u32).expect("digit below q");
                idx /= q;
            }
            Poly::from_coeffs(field, coeffs)
        })
        .collect()
}

/// Keep the first code of each canonical class, preserving order.
fn dedup_codes(codes: Vec<ConvolutionalCode>) -> Vec<ConvolutionalCode> {
    let mut seen = HashSet::new();
    codes
        .into_iter()
        .filter(|c| seen.insert(c.canonical_generator().to_string()))
        .collect()
}

fn records(codes: &[ConvolutionalCode], bound: usize) -> Vec<ClassificationRecord> {
    codes.par_iter().map(|c| ClassificationRecord::from_code(c, bound)).collect()
}

fn double_diagonal_codes(field: &FieldSpec, k: usize) -> Vec<ConvolutionalCode> {
    let roots = field.square_roots_of_minus_one();
    if roots.is_empty() || k == 0 {
        return Vec::new();
    }
    let choices = (0..k).map(|_| roots.iter().copied()).multi_cartesian_product();
    let codes = choices
        .map(|bs| {
            let mut g = PolyMatrix::identity_padded(field, k, 2 * k);
            for (i, b) in bs.into_iter().enumerate() {
                g.set(i, k + i, Poly::constant(field, b));
            }
            let code = ConvolutionalCode::new(g).expect("identity block has full rank");
            assert!(code.is_self_dual(), "double diagonal generator is not self-dual");
            code
        })
        .collect();
    dedup_codes(codes)
}

/// Self-dual `(2, 1)` codes: the generators `(1, b)` with `b² = -1`.
pub fn classify_21(field: &FieldSpec) -> Vec<ClassificationRecord> {
    records(&double_diagonal_codes(field, 1), 4)
}

/// Self-dual `(2, 1)` generators `(g_1, g_2)` with an entry of positive
/// degree and both degrees `<= max_deg`. Always empty; exposed so that the
/// claim can be checked.
pub fn scan_nonconstant_21(field: &FieldSpec, max_deg: usize) -> Vec<PolyMatrix> {
    let polys = polys_up_to(field, max_deg);
    polys
        .par_iter()
        .flat_map_iter(|g1| {
            polys.iter().filter_map(move |g2| {
                if g1.is_constant() && g2.is_constant() {
                    return None;
                }
                if !(&(g1 * g1) + &(g2 * g2)).is_zero() {
                    return None;
                }
                let g = PolyMatrix::from_rows(field, vec![vec![g1.clone(), g2.clone()]]).ok()?;
                let code = ConvolutionalCode::new(g).ok()?;
                code.is_self_dual().then(|| code.generator().clone())
            })
        })
        .collect()
}

/// `[[1,1,1,1],[0, g_23+g_24, g_23, g_24]]` for all coprime pairs of degree
/// `<= max_deg`, in lexicographic order of the pair. Not deduplicated.
pub fn enumerate_42_binary(max_deg: usize) -> Vec<ConvolutionalCode> {
    let field = FieldSpec::prime(2).expect("2 is prime");
    let polys = polys_up_to(&field, max_deg);
    let ones = vec![Poly::one(&field); 4];
    let mut found: Vec<(usize, usize, ConvolutionalCode)> = polys
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, g23)| {
            let field = &field;
            let ones = &ones;
            polys.iter().enumerate().filter_map(move |(j, g24)| {
                if !Poly::gcd(g23, g24).ok()?.is_one() {
                    return None;
                }
                let second = vec![Poly::zero(field), g23 + g24, g23.clone(), g24.clone()];
                let g = PolyMatrix::from_rows(field, vec![ones.clone(), second]).ok()?;
                let code = ConvolutionalCode::new(g).expect("rows are independent");
                assert!(code.is_self_dual(), "coprime pair gave a non-self-dual code");
                Some((i, j, code))
            })
        })
        .collect();
    found.sort_by_key(|&(i, j, _)| (i, j));
    found.into_iter().map(|(_, _, c)| c).collect()
}

/// Binary self-dual `(4, 2)` codes from coprime pairs of degree `<= max_deg`,
/// deduplicated by canonical generator.
pub fn classify_42_binary(max_deg: usize) -> Vec<ClassificationRecord> {
    records(&dedup_codes(enumerate_42_binary(max_deg)), max_deg + 4)
}

/// Self-dual `(2k, k)` codes `[I_k  diag(b_1, …, b_k)]` with `b_i² = -1`;
/// `None` when `-1` has no square root.
pub fn classify_double_diagonal(field: &FieldSpec, k: usize) -> Option<Vec<ClassificationRecord>> {
    let codes = double_diagonal_codes(field, k);
    (!codes.is_empty()).then(|| records(&codes, 4))
}

/// Whether `g` is `k × 2k` with both `k × k` blocks upper triangular.
pub fn has_double_triangular_pattern(g: &PolyMatrix) -> bool {
    let (k, n) = g.shape();
    n == 2 * k && (0..k).all(|i| (0..i).all(|j| g.get(i, j).is_zero() && g.get(i, k + j).is_zero()))
}

/// Reduce a binary self-dual double upper triangular generator to
/// `[I_k I_k]` by unimodular row operations.
pub fn reduce_double_triangular(g: &PolyMatrix) -> Result<PolyMatrix> {
    if !g.field().is_binary() {
        return Err(Error::NotBinary);
    }
    if !has_double_triangular_pattern(g) {
        return Err(Error::NotTriangularPattern);
    }
    let code = ConvolutionalCode::new(g.clone())
        .map_err(|_| Error::NotSelfDual("generator is rank deficient".into()))?;
    if !code.is_self_dual() {
        return Err(Error::NotSelfDual("double triangular generator".into()));
    }
    let k = g.rows();
    let mut h = g.clone();
    // Invariant: rows below t are e_s + e_{k+s}, and row t is zero outside
    // columns t and k+t.
    for t in (0..k).rev() {
        if !h.get(t, t).is_one() || !h.get(t, k + t).is_one() {
            return Err(Error::NotSelfDual(format!("row {} does not reduce to a unit pair", t + 1)));
        }
        for i in 0..t {
            let factor = h.get(i, t).clone();
            if &factor != h.get(i, k + t) {
                return Err(Error::NotSelfDual(format!("row {} is not orthogonal to row {}", i + 1, t + 1)));
            }
            if !factor.is_zero() {
                h.add_row_multiple(i, t, &factor);
            }
        }
    }
    let target = double_identity(g.field(), k);
    debug_assert_eq!(h, target);
    debug_assert_eq!(
        code.canonical_generator(),
        ConvolutionalCode::new(target.clone()).expect("full rank").canonical_generator()
    );
    Ok(h)
}

/// `[I_k I_k]`.
pub fn double_identity(field: &FieldSpec, k: usize) -> PolyMatrix {
    let i = PolyMatrix::identity(field, k);
    i.hstack(&i).expect("same field and height")
}
