//! Convolutional codes as row spans of full-rank polynomial matrices.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::{right_kernel_basis, row_hermite, smith, solve_left, PolyMatrix};
use crate::poly::Poly;

/// Default cap on the number of messages a free-distance search may visit.
pub const DEFAULT_SEARCH_CAP: u128 = 1 << 24;

/// An `(n, k)` convolutional code given by a full-row-rank generator.
#[derive(Debug, Clone)]
pub struct ConvolutionalCode {
    generator: PolyMatrix,
    canonical: OnceLock<PolyMatrix>,
    degree: OnceLock<usize>,
}

/// Two codes are equal when their canonical generators coincide.
impl PartialEq for ConvolutionalCode {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_generator() == other.canonical_generator()
    }
}

impl Eq for ConvolutionalCode {}

impl ConvolutionalCode {
    pub fn new(generator: PolyMatrix) -> Result<Self> {
        if generator.rows() > generator.cols() || !generator.has_full_row_rank() {
            return Err(Error::RankDeficient);
        }
        Ok(ConvolutionalCode { generator, canonical: OnceLock::new(), degree: OnceLock::new() })
    }

    /// The `(0, 0)` code, neutral for direct sums.
    pub fn empty(field: &FieldSpec) -> Self {
        ConvolutionalCode::new(PolyMatrix::zeros(field, 0, 0)).expect("empty matrix has full rank")
    }

    pub fn parse(field: &FieldSpec, s: &str) -> Result<Self> {
        ConvolutionalCode::new(PolyMatrix::parse(field, s)?)
    }

    pub fn generator(&self) -> &PolyMatrix {
        &self.generator
    }

    pub fn field(&self) -> &FieldSpec {
        self.generator.field()
    }

    /// Code length `n`.
    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    /// Rank `k`.
    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    /// Highest degree among the `k × k` minors of the generator.
    pub fn degree(&self) -> usize {
        *self.degree.get_or_init(|| {
            self.generator
                .maximal_minors()
                .expect("k <= n")
                .iter()
                .filter_map(Poly::degree)
                .max()
                .unwrap_or(0)
        })
    }

    /// Row Hermite form of the generator; identical for equal codes.
    pub fn canonical_generator(&self) -> &PolyMatrix {
        self.canonical
            .get_or_init(|| row_hermite(&self.generator).expect("k <= n").form)
    }

    /// `C^⊥ = ker G`, generated by a saturated kernel basis, so the dual is
    /// always non-catastrophic.
    pub fn dual(&self) -> ConvolutionalCode {
        let h = right_kernel_basis(&self.generator).expect("generator has full row rank");
        ConvolutionalCode::new(h).expect("kernel basis has full row rank")
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.generator
            .mul(&self.generator.transpose())
            .expect("shapes agree")
            .is_zero()
    }

    /// Smith form is `[I_k 0]`.
    pub fn is_noncatastrophic(&self) -> bool {
        smith(&self.generator)
            .expect("generator has full row rank")
            .is_identity_padded()
    }

    /// `G` is a parity-check matrix of its own code: `rowspan G = ker G`.
    pub fn is_parity_check(&self) -> bool {
        let n = self.length();
        let k = self.dimension();
        if n != 2 * k {
            return false;
        }
        let kernel = right_kernel_basis(&self.generator).expect("generator has full row rank");
        row_hermite(&kernel).expect("k <= n").form == *self.canonical_generator()
    }

    /// Non-catastrophic with `G·Gᵀ = 0`; always false unless `n = 2k`.
    pub fn is_self_dual(&self) -> bool {
        if self.length() != 2 * self.dimension() {
            return false;
        }
        let verdict = self.is_self_orthogonal() && self.is_noncatastrophic();
        debug_assert_eq!(
            verdict,
            self.is_parity_check(),
            "self-duality criteria disagree for {}",
            self.generator
        );
        verdict
    }

    /// Encode a message row vector.
    pub fn encode(&self, message: &[Poly]) -> Result<Vec<Poly>> {
        if message.len() != self.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "message of length {} for dimension {}",
                message.len(),
                self.dimension()
            )));
        }
        if message.is_empty() {
            return Ok(vec![Poly::zero(self.field()); self.length()]);
        }
        self.generator.left_apply(message)
    }

    pub fn contains(&self, v: &[Poly]) -> Result<bool> {
        Ok(solve_left(&self.generator, v)?.is_some())
    }

    pub fn free_distance(&self, bound: usize) -> Result<DistanceReport> {
        self.free_distance_with_cap(bound, DEFAULT_SEARCH_CAP)
    }

    /// Minimum codeword weight over nonzero messages whose components all
    /// have degree at most `bound`. Messages are taken up to a scalar: the
    /// leading coefficient of the first nonzero component is one.
    ///
    /// The result is flagged stable when the minimum over messages of
    /// degree `<= bound - 1` is already the same. This is a heuristic
    /// indication, not a proof that the free distance has been reached.
    pub fn free_distance_with_cap(&self, bound: usize, cap: u128) -> Result<DistanceReport> {
        let k = self.dimension();
        if k == 0 {
            return Err(Error::DimensionMismatch("the zero code has no free distance".into()));
        }
        let q = self.field().order() as u128;
        let positions = k * (bound + 1);
        let candidates = search_size(q, positions).unwrap_or(u128::MAX);
        if candidates > cap {
            return Err(Error::SearchSpaceTooLarge(candidates));
        }
        let search = MessageSearch::new(self, bound);
        let (best, best_below) = (0..positions)
            .into_par_iter()
            .map(|lead| search.run(lead))
            .reduce(|| (usize::MAX, usize::MAX), |a, b| (a.0.min(b.0), a.1.min(b.1)));
        let status = if bound >= 1 && best_below == best {
            DistanceStatus::StableUnderBound
        } else {
            DistanceStatus::UpperBound
        };
        Ok(DistanceReport { value: best, search_bound: bound, status })
    }
}

/// `(q^positions - 1) / (q - 1)`, the number of normalised messages.
fn search_size(q: u128, positions: usize) -> Option<u128> {
    let total = q.checked_pow(u32::try_from(positions).ok()?)?;
    Some((total - 1) / (q - 1))
}

/// Flattened codeword coefficients: entry `j`, degree `d` at `j * span + d`.
struct MessageSearch {
    field: FieldSpec,
    bound: usize,
    /// `basis[p]` is the codeword of the message with a single one at
    /// digit position `p`; positions run over components, each from degree
    /// `bound` down to zero.
    basis: Vec<Vec<FieldElement>>,
}

impl MessageSearch {
    fn new(code: &ConvolutionalCode, bound: usize) -> Self {
        let g = code.generator();
        let span = g.max_degree().unwrap_or(0) + bound + 1;
        let n = g.cols();
        let field = code.field().clone();
        let mut basis = Vec::with_capacity(g.rows() * (bound + 1));
        for i in 0..g.rows() {
            for d in (0..=bound).rev() {
                let mut word = vec![field.zero(); n * span];
                for (j, entry) in g.row(i).iter().enumerate() {
                    for (e, &c) in entry.coeffs().iter().enumerate() {
                        word[j * span + d + e] = c;
                    }
                }
                basis.push(word);
            }
        }
        MessageSearch { field, bound, basis }
    }

    fn is_top(&self, position: usize) -> bool {
        position.is_multiple_of(self.bound + 1)
    }

    fn axpy(&self, word: &mut [FieldElement], c: FieldElement, position: usize) {
        let f = &self.field;
        for (w, &b) in word.iter_mut().zip(&self.basis[position]) {
            if !b.is_zero() {
                *w = f.add(*w, f.mul(c, b));
            }
        }
    }

    /// Minimum weight over all messages whose first nonzero digit sits at
    /// `lead` and equals one; second value restricted to messages with
    /// every component of degree below the bound.
    fn run(&self, lead: usize) -> (usize, usize) {
        let f = &self.field;
        let q = f.order();
        let free: Vec<usize> = (lead + 1..self.basis.len()).collect();
        let mut digits = vec![0u32; free.len()];
        let mut word = self.basis[lead].clone();
        let mut top_nonzero = usize::from(self.is_top(lead));
        let mut best = usize::MAX;
        let mut best_below = usize::MAX;
        loop {
            let wt = word.iter().filter(|c| !c.is_zero()).count();
            best = best.min(wt);
            if top_nonzero == 0 {
                best_below = best_below.min(wt);
            }
            // odometer step
            let mut idx = free.len();
            loop {
                if idx == 0 {
                    return (best, best_below);
                }
                idx -= 1;
                let pos = free[idx];
                let old = digits[idx];
                let new = if old + 1 == q { 0 } else { old + 1 };
                let delta = f.sub(
                    f.element(new).expect("in range"),
                    f.element(old).expect("in range"),
                );
                self.axpy(&mut word, delta, pos);
                digits[idx] = new;
                if self.is_top(pos) {
                    if old == 0 {
                        top_nonzero += 1;
                    } else if new == 0 {
                        top_nonzero -= 1;
                    }
                }
                if new != 0 {
                    break;
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceStatus {
    /// Minimum unchanged between bound `B - 1` and `B`.
    StableUnderBound,
    UpperBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    pub value: usize,
    pub search_bound: usize,
    pub status: DistanceStatus,
}

impl DistanceReport {
    pub fn is_stable(&self) -> bool {
        self.status == DistanceStatus::StableUnderBound
    }
}

impl fmt::Display for DistanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            DistanceStatus::StableUnderBound => {
                write!(f, "d_free = {} (stable at bound {})", self.value, self.search_bound)
            }
            DistanceStatus::UpperBound => {
                write!(f, "d_free <= {} (bound {})", self.value, self.search_bound)
            }
        }
    }
}

/// Hamming weight summed over all polynomial coefficients.
pub fn weight(v: &[Poly]) -> usize {
    v.iter().map(Poly::weight).sum()
}
