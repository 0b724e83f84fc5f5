//! Constructions producing new self-dual codes from known ones.

use itertools::Itertools;

use crate::code::ConvolutionalCode;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::{col_hermite, right_kernel_basis, solve_left, unimodular_inverse, PolyMatrix};
use crate::poly::{vec_content, Poly};

fn require_self_dual(c: &ConvolutionalCode, what: &str) -> Result<()> {
    if c.is_self_dual() {
        Ok(())
    } else {
        Err(Error::NotSelfDual(what.to_string()))
    }
}

/// Self-dual by construction; re-checked anyway.
fn verified(generator: PolyMatrix, what: &str) -> Result<ConvolutionalCode> {
    let code = ConvolutionalCode::new(generator)
        .map_err(|_| Error::NotSelfDual(format!("{what} output is rank deficient")))?;
    require_self_dual(&code, &format!("{what} output"))?;
    Ok(code)
}

/// Block-diagonal sum of two self-dual codes.
pub fn direct_sum(c1: &ConvolutionalCode, c2: &ConvolutionalCode) -> Result<ConvolutionalCode> {
    if c1.field() != c2.field() {
        return Err(Error::FieldMismatch);
    }
    require_self_dual(c1, "first summand")?;
    require_self_dual(c2, "second summand")?;
    let code = verified(c1.generator().block_diag(c2.generator())?, "direct sum")?;
    debug_assert_eq!(code.degree(), c1.degree() + c2.degree());
    Ok(code)
}

/// One factor `M·A` of an orthogonal chain with `M·Mᵀ = λ·I`.
#[derive(Debug, Clone)]
pub struct OrthogonalStep {
    pub m: PolyMatrix,
    pub lambda: Poly,
    pub a: PolyMatrix,
}

impl OrthogonalStep {
    /// Column permutation only: `M = I`, `λ = 1`. Output column `j` is
    /// input column `perm[j]` (zero-based).
    pub fn permutation(field: &FieldSpec, perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut a = PolyMatrix::zeros(field, n, n);
        for (j, &p) in perm.iter().enumerate() {
            if p >= n {
                return Err(Error::NotPermutation);
            }
            a.set(p, j, Poly::one(field));
        }
        Ok(OrthogonalStep { m: PolyMatrix::identity(field, n), lambda: Poly::one(field), a })
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.lambda.is_zero() || !self.lambda.is_constant() {
            return Err(Error::NotUnit(self.lambda.to_string()));
        }
        for (name, mat) in [("M", &self.m), ("A", &self.a)] {
            if mat.shape() != (n, n) {
                return Err(Error::DimensionMismatch(format!(
                    "{name} is {}x{}, expected {n}x{n}",
                    mat.rows(),
                    mat.cols()
                )));
            }
        }
        let mmt = self.m.mul(&self.m.transpose())?;
        if mmt != PolyMatrix::identity(self.m.field(), n).scale(&self.lambda) {
            return Err(Error::NotOrthogonalScaled);
        }
        if !is_permutation(&self.a) {
            return Err(Error::NotPermutation);
        }
        Ok(())
    }
}

fn is_permutation(a: &PolyMatrix) -> bool {
    let unit_count = |v: Vec<&Poly>| {
        v.iter().all(|e| e.is_zero() || e.is_one()) && v.iter().filter(|e| e.is_one()).count() == 1
    };
    (0..a.rows()).all(|i| unit_count(a.row(i).iter().collect()))
        && (0..a.cols()).all(|j| unit_count((0..a.rows()).map(|i| a.get(i, j)).collect()))
}

/// `G·M_1·A_1 ⋯ M_r·A_r`.
pub fn orthogonal_chain(c: &ConvolutionalCode, steps: &[OrthogonalStep]) -> Result<ConvolutionalCode> {
    require_self_dual(c, "input")?;
    let mut g = c.generator().clone();
    for step in steps {
        if step.m.field() != c.field() || step.a.field() != c.field() {
            return Err(Error::FieldMismatch);
        }
        step.validate(c.length())?;
        g = g.mul(&step.m)?.mul(&step.a)?;
    }
    verified(g, "orthogonal chain")
}

/// Extend a self-dual `(2k, k)` code to `(2k+2, k+1)`: first row
/// `(-a⁻¹, 0, f)`, then `(a·y_i, b·y_i, g_i)` with `y_i = f·g_iᵀ`.
pub fn building_up(
    c: &ConvolutionalCode,
    f: &[Poly],
    a: FieldElement,
    b: FieldElement,
) -> Result<ConvolutionalCode> {
    let field = c.field();
    if field.sqrt_of_minus_one().is_none() {
        return Err(Error::FieldObstruction(field.order() as u64));
    }
    if !field.contains(a) || !field.contains(b) || a.is_zero() || b.is_zero() {
        return Err(Error::BadScalars);
    }
    if !field.add(field.square(a), field.square(b)).is_zero() {
        return Err(Error::BadScalars);
    }
    require_self_dual(c, "input")?;
    if f.len() != c.length() {
        return Err(Error::DimensionMismatch(format!(
            "f has length {}, code length is {}",
            f.len(),
            c.length()
        )));
    }
    let a_inv = field.inv(a)?;
    let target = Poly::constant(field, field.neg(field.square(a_inv)));
    if Poly::dot(f, f)? != target {
        return Err(Error::BadVector);
    }
    let mut rows = Vec::with_capacity(c.dimension() + 1);
    let mut first = vec![Poly::constant(field, field.neg(a_inv)), Poly::zero(field)];
    first.extend_from_slice(f);
    rows.push(first);
    for g in c.generator().row_vectors() {
        let y = Poly::dot(f, &g)?;
        let mut row = vec![y.scale(a), y.scale(b)];
        row.extend(g);
        rows.push(row);
    }
    verified(PolyMatrix::from_rows(field, rows)?, "building-up")
}

fn require_binary_self_dual(c: &ConvolutionalCode) -> Result<()> {
    if !c.field().is_binary() {
        return Err(Error::NotBinary);
    }
    require_self_dual(c, "input")
}

/// Prepend the paired columns `(a_i, a_i)` to a binary self-dual generator.
/// The result is self-orthogonal.
pub fn hm_extend(c: &ConvolutionalCode, a_vec: &[Poly]) -> Result<PolyMatrix> {
    require_binary_self_dual(c)?;
    if a_vec.len() != c.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "{} polynomials for dimension {}",
            a_vec.len(),
            c.dimension()
        )));
    }
    let rows = c
        .generator()
        .row_vectors()
        .into_iter()
        .zip(a_vec)
        .map(|(g, a)| [vec![a.clone(), a.clone()], g].concat())
        .collect();
    PolyMatrix::from_rows(c.field(), rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletionKind {
    NonTrivial,
    TrivialOnly,
}

impl CompletionKind {
    pub fn label(self) -> &'static str {
        match self {
            CompletionKind::NonTrivial => "non-trivial",
            CompletionKind::TrivialOnly => "trivial-only",
        }
    }
}

/// Outcome of a completion search. The generator is `[f; G̃]`; for
/// `TrivialOnly` it is the trivial completion with `f = e`.
#[derive(Debug, Clone)]
pub struct CompletionResult {
    pub kind: CompletionKind,
    pub generator: PolyMatrix,
    pub witness_f: Vec<Poly>,
}

/// `e = (1, 1, 0, …, 0)` of length `n`.
pub fn trivial_row(field: &FieldSpec, n: usize) -> Vec<Poly> {
    (0..n)
        .map(|j| if j < 2 { Poly::one(field) } else { Poly::zero(field) })
        .collect()
}

fn all_ones(field: &FieldSpec, n: usize) -> Vec<Poly> {
    vec![Poly::one(field); n]
}

fn malformed(msg: &str) -> Error {
    Error::MalformedInput(msg.to_string())
}

/// Structural checks on an extended matrix `G̃`: binary, `k × (2k+2)`,
/// paired leading columns, self-orthogonal, and the tail generating a
/// self-dual code.
fn validate_extended(g: &PolyMatrix) -> Result<()> {
    let (k, n) = g.shape();
    if !g.field().is_binary() {
        return Err(malformed("extended matrix must be binary"));
    }
    if k == 0 || n != 2 * k + 2 {
        return Err(malformed("extended matrix must be k x (2k+2) with k >= 1"));
    }
    if (0..k).any(|i| g.get(i, 0) != g.get(i, 1)) {
        return Err(malformed("first two columns are not paired"));
    }
    if !g.mul(&g.transpose())?.is_zero() {
        return Err(malformed("extended matrix is not self-orthogonal"));
    }
    let tail = g.select_columns(&(2..n).collect_vec());
    let tail_ok = ConvolutionalCode::new(tail).is_ok_and(|c| c.is_self_dual());
    if !tail_ok {
        return Err(malformed("trailing columns do not generate a self-dual code"));
    }
    Ok(())
}

/// `[f; G̃]` is self-dual and does not contain `e`.
pub fn is_nontrivial_witness(g_tilde: &PolyMatrix, f: &[Poly]) -> Result<bool> {
    validate_extended(g_tilde)?;
    if f.len() != g_tilde.cols() {
        return Err(Error::DimensionMismatch(format!(
            "f has length {}, expected {}",
            f.len(),
            g_tilde.cols()
        )));
    }
    let Ok(code) = ConvolutionalCode::new(g_tilde.with_top_row(f)?) else {
        return Ok(false);
    };
    let e = trivial_row(g_tilde.field(), g_tilde.cols());
    Ok(code.is_self_dual() && !code.contains(&e)?)
}

/// Search a row `f` so that `[f; G̃]` is a non-trivial self-dual completion.
///
/// A non-trivial completion exists exactly when the all-ones vector lies in
/// the row span of `G̃`.
pub fn find_completion(g_tilde: &PolyMatrix) -> Result<CompletionResult> {
    validate_extended(g_tilde)?;
    let field = g_tilde.field();
    let n = g_tilde.cols();
    let e = trivial_row(field, n);
    if solve_left(g_tilde, &all_ones(field, n))?.is_none() {
        return Ok(CompletionResult {
            kind: CompletionKind::TrivialOnly,
            generator: g_tilde.with_top_row(&e)?,
            witness_f: e,
        });
    }

    let with_e = g_tilde.with_top_row(&e)?;
    let kernel = right_kernel_basis(g_tilde)?;
    let rows = kernel.row_vectors();
    let singles = rows.iter().cloned();
    let pairs = rows
        .iter()
        .tuple_combinations()
        .map(|(u, v)| u.iter().zip(v).map(|(x, y)| x + y).collect_vec());
    for candidate in singles.chain(pairs) {
        if solve_left(&with_e, &candidate)?.is_some() {
            continue;
        }
        // The kernel is saturated, so dividing by the content stays inside it.
        let content = vec_content(&candidate)?;
        let f = candidate.iter().map(|c| c.div_exact(&content)).collect::<Result<Vec<_>>>()?;
        debug_assert!(kernel_contains(&kernel, &f));
        if is_nontrivial_witness(g_tilde, &f)? {
            return nontrivial(g_tilde, f);
        }
    }
    nontrivial(g_tilde, quotient_complement(&with_e, &kernel)?)
}

fn kernel_contains(kernel: &PolyMatrix, f: &[Poly]) -> bool {
    solve_left(kernel, f).is_ok_and(|m| m.is_some())
}

fn nontrivial(g_tilde: &PolyMatrix, f: Vec<Poly>) -> Result<CompletionResult> {
    let generator = g_tilde.with_top_row(&f)?;
    let code = verified(generator.clone(), "completion")?;
    let e = trivial_row(g_tilde.field(), g_tilde.cols());
    if code.contains(&e)? {
        return Err(Error::NotSelfDual("completion search produced a trivial completion".into()));
    }
    Ok(CompletionResult { kind: CompletionKind::NonTrivial, generator, witness_f: f })
}

/// A kernel vector completing the rows of `[G̃; e]` to a basis of the kernel.
///
/// `[G̃; e] = P·K` with `P` left prime, so `P·V = [I 0]` for unimodular `V`.
/// The rows of `V⁻¹·K` form a basis of the kernel whose first rows are
/// `[G̃; e]`; the last one is returned.
fn quotient_complement(with_e: &PolyMatrix, kernel: &PolyMatrix) -> Result<Vec<Poly>> {
    let field = with_e.field();
    let coords = with_e
        .row_vectors()
        .iter()
        .map(|r| solve_left(kernel, r)?.ok_or_else(|| malformed("row outside the kernel")))
        .collect::<Result<Vec<_>>>()?;
    let p = PolyMatrix::from_rows(field, coords)?;
    let d = col_hermite(&p)?;
    let expected = PolyMatrix::identity_padded(field, p.rows(), p.cols());
    if d.form != expected {
        return Err(malformed("trivial completion is not left prime"));
    }
    let inv = unimodular_inverse(&d.transform)?;
    let r = inv.row(inv.rows() - 1);
    kernel.left_apply(r)
}

/// `e` lies in the row span of `G_1`. For self-dual codes containing the
/// trivial completion's generator this is equivalent to equality of codes.
pub fn is_trivial_completion(g1: &PolyMatrix) -> Result<bool> {
    let (r, n) = g1.shape();
    if !g1.field().is_binary() {
        return Err(malformed("completion must be binary"));
    }
    if r < 2 || n != 2 * r {
        return Err(malformed("completion must be (k+1) x (2k+2) with k >= 1"));
    }
    if (1..r).any(|i| g1.get(i, 0) != g1.get(i, 1)) {
        return Err(malformed("rows below the first are not paired"));
    }
    let code = ConvolutionalCode::new(g1.clone()).map_err(|_| malformed("completion is rank deficient"))?;
    if !code.is_self_dual() {
        return Err(malformed("completion is not self-dual"));
    }
    code.contains(&trivial_row(g1.field(), n))
}

/// `a` with `Σ a_i·b_i = 1` where `b·G` is the all-ones vector; the
/// extension by this `a` always admits a non-trivial completion.
pub fn default_a_vec(c: &ConvolutionalCode) -> Result<Vec<Poly>> {
    require_binary_self_dual(c)?;
    let field = c.field();
    let b = solve_left(c.generator(), &all_ones(field, c.length()))?
        .ok_or_else(|| Error::NotSelfDual("all-ones vector is not a codeword".into()))?;
    // Invariant: g = Σ_{j<i} a_j·b_j.
    let mut g = Poly::zero(field);
    let mut a: Vec<Poly> = Vec::with_capacity(b.len());
    for bi in &b {
        let (next, s, t) = Poly::xgcd(&g, bi)?;
        for aj in a.iter_mut() {
            *aj = &*aj * &s;
        }
        a.push(t);
        g = next;
    }
    debug_assert!(g.is_one());
    Ok(a)
}
