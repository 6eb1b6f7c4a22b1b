//! The symplectic Lie algebra at the reference point of Siegel space, and
//! centralizers of group actions inside it.
//!
//! Work in the frame (holomorphic forms, their conjugates), so complex
//! cohomology is `ℂ^{2g}` and the intersection form is `Q = [[0, iI], [-iI, 0]]`.
//! The reference complex structure is `J₀ = diag(iI, -iI)`; it satisfies
//! `J₀² = -I`, `J₀ᵗ Q J₀ = Q` and `Q(x, J₀x) > 0` on real vectors, all of
//! which are verified exactly.
//!
//! A real symplectic Lie algebra element that commutes with the real
//! structure is determined by a pair of `g×g` blocks
//!
//! ```text
//! U = [[C, D̄], [D, C̄]],   C* = -C (k-part),   Dᵗ = D (p-part),
//! ```
//!
//! the Cartan decomposition with respect to `J₀`: `k` is the `+1` eigenspace
//! of `Ad(J₀)` (elements commuting with `J₀`) and `p` the `-1` eigenspace.
//! For a group acting through symplectic generators `diag(A₀, conj A₀)` the
//! centralizer conditions decouple into
//!
//! ```text
//! Z_k:  C A₀ = A₀ C,          Z_p:  D A₀ = conj(A₀) D,
//! ```
//!
//! linear conditions over the maximal real subfield once every complex entry
//! is split into real and imaginary parts.  The complex structure on the
//! `p`-part is left multiplication by `J₀`, which in block terms is
//! `D ↦ -i·D`, and the trace form of the ambient algebra restricts to
//! `⟨X, Y⟩ = 2·Re tr(conj(D_X) D_Y)`.

use num::BigRational;

use crate::covers::GroupAction;
use crate::crosscheck::{check_span_dimension, checked_kernel, Backend};
use crate::cyclotomic::linalg::{express_in_rows, rows_to_matrix};
use crate::cyclotomic::{determinant, rref, CycMatrix, CycNum};
use crate::error::{Error, Result};

/// Which summand of the Cartan decomposition `g = k ⊕ p` an element
/// occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// Commutes with `J₀` (block `C`, skew-hermitian).
    K,
    /// Anticommutes with `J₀` (block `D`, symmetric).
    P,
    /// Both blocks populated.
    Mixed,
}

/// An element `U = [[C, D̄], [D, C̄]]` of the symplectic algebra in the
/// frame (forms, conjugate forms), stored through its determining blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElement {
    pub genus: usize,
    pub conductor: u32,
    /// Skew-hermitian `k`-block.
    pub c: CycMatrix,
    /// Symmetric `p`-block.
    pub d: CycMatrix,
}

impl AlgElement {
    /// The zero element.
    pub fn zero(genus: usize, conductor: u32) -> Self {
        AlgElement {
            genus,
            conductor,
            c: CycMatrix::zero(genus, genus, conductor),
            d: CycMatrix::zero(genus, genus, conductor),
        }
    }

    /// Build from both blocks, verifying the shape constraints exactly.
    pub fn from_parts(c: CycMatrix, d: CycMatrix) -> Result<Self> {
        let genus = c.rows();
        let conductor = c.conductor();
        if !c.is_square() || !d.is_square() || d.rows() != genus {
            return Err(Error::Internal("algebra blocks must be square of one size".into()));
        }
        if d.conductor() != conductor {
            return Err(Error::ConductorMismatch(
                "algebra blocks live in different fields".into(),
            ));
        }
        if conductor % 4 != 0 {
            return Err(Error::InvalidConductor(
                "algebra elements need 4 | conductor for re/im splitting".into(),
            ));
        }
        if !c.is_skew_hermitian() {
            return Err(Error::WrongPart("k-block is not skew-hermitian".into()));
        }
        if !d.is_symmetric() {
            return Err(Error::WrongPart("p-block is not symmetric".into()));
        }
        Ok(AlgElement {
            genus,
            conductor,
            c,
            d,
        })
    }

    /// A pure `k`-part element.
    pub fn from_k(c: CycMatrix) -> Result<Self> {
        let d = CycMatrix::zero(c.rows(), c.cols(), c.conductor());
        Self::from_parts(c, d)
    }

    /// A pure `p`-part element.
    pub fn from_p(d: CycMatrix) -> Result<Self> {
        let c = CycMatrix::zero(d.rows(), d.cols(), d.conductor());
        Self::from_parts(c, d)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    /// Cartan summand of this element (zero counts as `K`).
    pub fn part(&self) -> Part {
        match (self.c.is_zero(), self.d.is_zero()) {
            (_, true) => Part::K,
            (true, false) => Part::P,
            (false, false) => Part::Mixed,
        }
    }

    /// The `k`-summand `(C, 0)`.
    pub fn k_part(&self) -> Self {
        AlgElement {
            genus: self.genus,
            conductor: self.conductor,
            c: self.c.clone(),
            d: CycMatrix::zero(self.genus, self.genus, self.conductor),
        }
    }

    /// The `p`-summand `(0, D)`.
    pub fn p_part(&self) -> Self {
        AlgElement {
            genus: self.genus,
            conductor: self.conductor,
            c: CycMatrix::zero(self.genus, self.genus, self.conductor),
            d: self.d.clone(),
        }
    }

    /// The full `2g × 2g` matrix `[[C, D̄], [D, C̄]]`.
    pub fn full_matrix(&self) -> CycMatrix {
        CycMatrix::from_blocks(&self.c, &self.d.conj(), &self.d, &self.c.conj())
    }

    /// Lie bracket, computed on full matrices and re-read off the blocks.
    pub fn bracket(&self, other: &Self) -> Self {
        let x = self.full_matrix();
        let y = other.full_matrix();
        let full = &(&x * &y) - &(&y * &x);
        let g = self.genus;
        let c = full.block(0, 0, g);
        let d = full.block(g, 0, g);
        debug_assert_eq!(full.block(0, g, g), d.conj(), "bracket block structure");
        debug_assert_eq!(full.block(g, g, g), c.conj(), "bracket block structure");
        debug_assert!(c.is_skew_hermitian() && d.is_symmetric(), "bracket shape");
        AlgElement {
            genus: g,
            conductor: self.conductor,
            c,
            d,
        }
    }

    /// Scale by an element of the real subfield (real scalars preserve both
    /// block shapes).
    pub fn scale_real(&self, s: &CycNum) -> Self {
        debug_assert!(s.is_real(), "scaling by a non-real scalar breaks shapes");
        AlgElement {
            genus: self.genus,
            conductor: self.conductor,
            c: self.c.scale(s),
            d: self.d.scale(s),
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        AlgElement {
            genus: self.genus,
            conductor: self.conductor,
            c: self.c.scale_rational(q),
            d: self.d.scale_rational(q),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgElement {
            genus: self.genus,
            conductor: self.conductor,
            c: &self.c + &other.c,
            d: &self.d + &other.d,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AlgElement {
            genus: self.genus,
            conductor: self.conductor,
            c: &self.c - &other.c,
            d: &self.d - &other.d,
        }
    }

    /// Real-subfield coordinates: real and imaginary part of every `C`
    /// entry (row-major), then of every `D` entry — `4g²` values.
    pub fn coords(&self) -> Vec<CycNum> {
        let g = self.genus;
        let mut out = Vec::with_capacity(4 * g * g);
        for mat in [&self.c, &self.d] {
            for r in 0..g {
                for c in 0..g {
                    let e = mat.get(r, c);
                    out.push(e.re());
                    out.push(e.im().expect("conductor divisible by 4"));
                }
            }
        }
        out
    }

    /// Rebuild an element from [`AlgElement::coords`] output.
    pub fn from_coords(genus: usize, conductor: u32, coords: &[CycNum]) -> Self {
        assert_eq!(coords.len(), 4 * genus * genus, "coordinate length");
        let i = CycNum::imaginary_unit(conductor).expect("conductor divisible by 4");
        let mut blocks = Vec::new();
        for b in 0..2 {
            let base = b * 2 * genus * genus;
            blocks.push(CycMatrix::from_fn(genus, genus, conductor, |r, c| {
                let k = base + 2 * (r * genus + c);
                &coords[k] + &(&i * &coords[k + 1])
            }));
        }
        let d = blocks.pop().unwrap();
        let c = blocks.pop().unwrap();
        AlgElement {
            genus,
            conductor,
            c,
            d,
        }
    }
}

/// The reference point `J₀` of Siegel space together with the intersection
/// form, both verified exactly at construction.
#[derive(Clone, Debug)]
pub struct BasePoint {
    pub genus: usize,
    pub conductor: u32,
    /// `diag(iI, -iI)`.
    pub j0: CycMatrix,
    /// `[[0, iI], [-iI, 0]]`.
    pub q: CycMatrix,
}

/// Construct and verify the reference complex structure for an action:
/// `J₀² = -I`, `J₀ᵗ Q J₀ = Q`, positivity of `Q(x, J₀ x)` on the real
/// points, `AᵗQA = Q` for every symplectic generator, and `A J₀ = J₀ A`
/// (generators are block-diagonal in the eigenframe of `J₀`).
pub fn base_point(action: &GroupAction) -> Result<BasePoint> {
    let g = action.genus;
    let m = action.conductor;
    let i = CycNum::imaginary_unit(m)?;
    let eye = CycMatrix::identity(g, m);
    let zero = CycMatrix::zero(g, g, m);
    let j0 = CycMatrix::block_diagonal(&eye.scale(&i), &eye.scale(&i.conj()));
    let q = CycMatrix::from_blocks(&zero, &eye.scale(&i), &eye.scale(&i.conj()), &zero);

    let full_eye = CycMatrix::identity(2 * g, m);
    if &(&j0 * &j0) + &full_eye != CycMatrix::zero(2 * g, 2 * g, m) {
        return Err(Error::Internal("J₀² ≠ -I".into()));
    }
    if &(&j0.transpose() * &q) * &j0 != q {
        return Err(Error::Internal("J₀ does not preserve the intersection form".into()));
    }
    for (idx, a) in action.symplectic.iter().enumerate() {
        if &(&a.transpose() * &q) * a != q {
            return Err(Error::Internal(format!(
                "symplectic generator {idx} does not preserve the intersection form"
            )));
        }
        if &(a * &j0) != &(&j0 * a) {
            return Err(Error::NotBlockDiagonal(idx));
        }
    }
    verify_taming(&j0, &q)?;
    Ok(BasePoint {
        genus: g,
        conductor: m,
        j0,
        q,
    })
}

/// Verify `Q(x, J₀x) > 0` on the real points: assemble the Gram matrix of
/// `B(x, y) = xᵗ Q J₀ y` on a real spanning set and check positive
/// definiteness by exact Sylvester leading minors.
fn verify_taming(j0: &CycMatrix, q: &CycMatrix) -> Result<()> {
    let m = q.conductor();
    let two_g = q.rows();
    let g = two_g / 2;
    let i = CycNum::imaginary_unit(m)?;
    // Real vectors in the (forms, conjugate forms) frame have shape
    // (u, conj u); a real basis is e_j + e_{g+j} and i·e_j - i·e_{g+j}.
    let mut span: Vec<Vec<CycNum>> = Vec::with_capacity(two_g);
    for j in 0..g {
        let mut v = vec![CycNum::zero(m); two_g];
        v[j] = CycNum::one(m);
        v[g + j] = CycNum::one(m);
        span.push(v);
    }
    for j in 0..g {
        let mut w = vec![CycNum::zero(m); two_g];
        w[j] = i.clone();
        w[g + j] = i.conj();
        span.push(w);
    }
    let apply = |mat: &CycMatrix, v: &[CycNum]| -> Vec<CycNum> {
        (0..mat.rows())
            .map(|r| {
                let mut acc = CycNum::zero(m);
                for c in 0..mat.cols() {
                    if !mat.get(r, c).is_zero() && !v[c].is_zero() {
                        acc = &acc + &(mat.get(r, c) * &v[c]);
                    }
                }
                acc
            })
            .collect()
    };
    let gram = CycMatrix::from_fn(two_g, two_g, m, |a, b| {
        let jv = apply(j0, &span[b]);
        let qjv = apply(q, &jv);
        let mut acc = CycNum::zero(m);
        for k in 0..two_g {
            acc = &acc + &(&span[a][k] * &qjv[k]);
        }
        acc
    });
    for a in 0..two_g {
        for b in 0..two_g {
            if !gram.get(a, b).is_real() {
                return Err(Error::Internal("taming Gram matrix has non-real entries".into()));
            }
        }
    }
    if gram.transpose() != gram {
        return Err(Error::Internal("taming Gram matrix is not symmetric".into()));
    }
    for k in 1..=two_g {
        let minor = determinant(&gram.block(0, 0, k));
        if minor.sign()? != std::cmp::Ordering::Greater {
            return Err(Error::Internal(format!(
                "leading {k}×{k} minor of the taming form is not positive"
            )));
        }
    }
    Ok(())
}

/// A subspace of `k`, `p` (or their sum), kept as a canonical echelonized
/// basis of [`AlgElement`]s over the maximal real subfield.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub part: Part,
    pub genus: usize,
    pub conductor: u32,
    pub basis: Vec<AlgElement>,
}

impl Subspace {
    /// Span of the given elements, canonicalised by row reduction of their
    /// coordinate vectors.
    pub fn from_elements(
        part: Part,
        genus: usize,
        conductor: u32,
        elements: &[AlgElement],
    ) -> Self {
        let cols = 4 * genus * genus;
        let rows: Vec<Vec<CycNum>> = elements.iter().map(AlgElement::coords).collect();
        let (reduced, pivots) = rref(&rows_to_matrix(&rows, cols, conductor));
        let basis = (0..pivots.len())
            .map(|r| {
                let coords: Vec<CycNum> =
                    (0..cols).map(|c| reduced.get(r, c).clone()).collect();
                AlgElement::from_coords(genus, conductor, &coords)
            })
            .collect();
        Subspace {
            part,
            genus,
            conductor,
            basis,
        }
    }

    /// Real dimension = number of basis elements.
    pub fn real_dim(&self) -> usize {
        self.basis.len()
    }

    /// Complex dimension with respect to the complex structure `ι`;
    /// verifies `ι`-stability and evenness first.
    pub fn complex_dim(&self) -> Result<usize> {
        if !self.is_iota_stable()? {
            return Err(Error::Internal(
                "complex dimension of a non-ι-stable subspace".into(),
            ));
        }
        debug_assert!(self.real_dim() % 2 == 0);
        Ok(self.real_dim() / 2)
    }

    /// Coordinate matrix of the basis (one row per element).
    pub fn coords_matrix(&self) -> CycMatrix {
        let rows: Vec<Vec<CycNum>> = self.basis.iter().map(AlgElement::coords).collect();
        rows_to_matrix(&rows, 4 * self.genus * self.genus, self.conductor)
    }

    /// Exact membership test.
    pub fn contains(&self, x: &AlgElement) -> bool {
        let (reduced, pivots) = rref(&self.coords_matrix());
        express_in_rows(&x.coords(), &reduced, &pivots).is_some()
    }

    /// Does this subspace contain every basis element of `other`?
    pub fn contains_all(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|x| self.contains(x))
    }

    /// Is the subspace stable under the complex structure `D ↦ -iD`?
    /// (Only meaningful for `p`-part subspaces.)
    pub fn is_iota_stable(&self) -> Result<bool> {
        for x in &self.basis {
            if !self.contains(&complex_structure(x)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Span of the union of two subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut elems = self.basis.clone();
        elems.extend(other.basis.iter().cloned());
        let part = if self.part == other.part {
            self.part
        } else {
            Part::Mixed
        };
        Subspace::from_elements(part, self.genus, self.conductor, &elems)
    }

    /// The element `Σ coeffs[a] · basis[a]` for real-subfield coefficients.
    pub fn combination(&self, coeffs: &[CycNum]) -> AlgElement {
        assert_eq!(coeffs.len(), self.basis.len(), "coefficient count");
        let mut acc = AlgElement::zero(self.genus, self.conductor);
        for (s, b) in coeffs.iter().zip(&self.basis) {
            if !s.is_zero() {
                acc = acc.add(&b.scale_real(s));
            }
        }
        acc
    }

    /// Orthogonal complement of `self` inside `ambient` with respect to the
    /// trace form (both must be `p`-part subspaces).
    pub fn orthogonal_complement_in(
        &self,
        ambient: &Subspace,
        backend: Backend,
    ) -> Result<Subspace> {
        if self.part != Part::P || ambient.part != Part::P {
            return Err(Error::WrongPart(
                "trace-form complement is defined on p-part subspaces".into(),
            ));
        }
        let n = ambient.real_dim();
        let sys = CycMatrix::from_fn(self.real_dim(), n, self.conductor, |r, c| {
            trace_form(&ambient.basis[c], &self.basis[r]).expect("p-part elements")
        });
        let ker = checked_kernel(&sys, backend, "trace-form orthogonal complement")?;
        let elems: Vec<AlgElement> = ker
            .vectors
            .iter()
            .map(|v| ambient.combination(v))
            .collect();
        Ok(Subspace::from_elements(
            Part::P,
            self.genus,
            self.conductor,
            &elems,
        ))
    }
}

/// The complex structure on the `p`-part: left multiplication by `J₀`,
/// i.e. `D ↦ -i·D`.  Squares to `-1`.  Rejects elements with a `k`-part.
pub fn complex_structure(x: &AlgElement) -> Result<AlgElement> {
    if !x.c.is_zero() {
        return Err(Error::WrongPart(
            "complex structure acts on the p-part only".into(),
        ));
    }
    let minus_i = CycNum::imaginary_unit(x.conductor)?.conj();
    Ok(AlgElement {
        genus: x.genus,
        conductor: x.conductor,
        c: x.c.clone(),
        d: x.d.scale(&minus_i),
    })
}

/// The restriction of the ambient trace form to the `p`-part:
/// `⟨X, Y⟩ = tr(X·Y)|_p = 2·Re tr(conj(D_X) · D_Y)`, an element of the real
/// subfield.  Positive definite: `⟨X, X⟩ = 2·Σ |(D_X)_{jk}|²`.
pub fn trace_form(x: &AlgElement, y: &AlgElement) -> Result<CycNum> {
    if !x.c.is_zero() || !y.c.is_zero() {
        return Err(Error::WrongPart("trace form is evaluated on the p-part".into()));
    }
    let t = (&x.d.conj() * &y.d).trace();
    Ok(&t + &t.conj())
}

/// Accumulates one complex-linear (and conjugate-linear) equation over
/// complex unknowns, expanded into two rows over the real subfield.
struct EquationBuf {
    re: Vec<CycNum>,
    im: Vec<CycNum>,
}

/// A homogeneous system over complex unknowns `z_u = x_u + i·y_u`, stored as
/// real-subfield rows over the interleaved variables `(x_0, y_0, x_1, …)`.
pub(crate) struct ComplexSystem {
    n_unknowns: usize,
    conductor: u32,
    rows: Vec<Vec<CycNum>>,
}

impl ComplexSystem {
    pub(crate) fn new(n_unknowns: usize, conductor: u32) -> Self {
        assert_eq!(conductor % 4, 0, "complex splitting needs 4 | conductor");
        ComplexSystem {
            n_unknowns,
            conductor,
            rows: Vec::new(),
        }
    }

    fn equation(&self) -> EquationBuf {
        EquationBuf {
            re: vec![CycNum::zero(self.conductor); 2 * self.n_unknowns],
            im: vec![CycNum::zero(self.conductor); 2 * self.n_unknowns],
        }
    }

    /// Add `coeff · z_u` to an equation.
    fn add_term(&self, eq: &mut EquationBuf, u: usize, coeff: &CycNum) {
        if coeff.is_zero() {
            return;
        }
        let a = coeff.re();
        let b = coeff.im().expect("4 | conductor");
        // (a + ib)(x + iy) = (ax - by) + i(bx + ay)
        eq.re[2 * u] = &eq.re[2 * u] + &a;
        eq.re[2 * u + 1] = &eq.re[2 * u + 1] - &b;
        eq.im[2 * u] = &eq.im[2 * u] + &b;
        eq.im[2 * u + 1] = &eq.im[2 * u + 1] + &a;
    }

    /// Add `coeff · conj(z_u)` to an equation.
    fn add_conj_term(&self, eq: &mut EquationBuf, u: usize, coeff: &CycNum) {
        if coeff.is_zero() {
            return;
        }
        let a = coeff.re();
        let b = coeff.im().expect("4 | conductor");
        // (a + ib)(x - iy) = (ax + by) + i(bx - ay)
        eq.re[2 * u] = &eq.re[2 * u] + &a;
        eq.re[2 * u + 1] = &eq.re[2 * u + 1] + &b;
        eq.im[2 * u] = &eq.im[2 * u] + &b;
        eq.im[2 * u + 1] = &eq.im[2 * u + 1] - &a;
    }

    fn push(&mut self, eq: EquationBuf) {
        self.rows.push(eq.re);
        self.rows.push(eq.im);
    }

    /// Solve, returning complex solution vectors `z = (z_0, …)`.
    pub(crate) fn solve(&self, backend: Backend, context: &str) -> Result<Vec<Vec<CycNum>>> {
        let sys = rows_to_matrix(&self.rows, 2 * self.n_unknowns, self.conductor);
        let ker = checked_kernel(&sys, backend, context)?;
        let i = CycNum::imaginary_unit(self.conductor)?;
        Ok(ker
            .vectors
            .iter()
            .map(|v| {
                (0..self.n_unknowns)
                    .map(|u| &v[2 * u] + &(&i * &v[2 * u + 1]))
                    .collect()
            })
            .collect())
    }
}

/// Centralizer of the action inside one Cartan summand.
///
/// * `Part::K`: skew-hermitian `C` with `C A₀ = A₀ C` for every generator;
/// * `Part::P`: symmetric `D` with `D A₀ = conj(A₀) D` for every generator.
///
/// Returns a canonical echelonized basis; dimensions are exact.
pub fn centralizer(action: &GroupAction, part: Part, backend: Backend) -> Result<Subspace> {
    let g = action.genus;
    let m = action.conductor;
    let idx = |j: usize, k: usize| j * g + k;
    let mut sys = ComplexSystem::new(g * g, m);
    match part {
        Part::K => {
            for a in &action.generators {
                for j in 0..g {
                    for k in 0..g {
                        // (CA - AC)_{jk} = Σ_l C_{jl} A_{lk} - A_{jl} C_{lk}
                        let mut eq = sys.equation();
                        for l in 0..g {
                            sys.add_term(&mut eq, idx(j, l), a.get(l, k));
                            sys.add_term(&mut eq, idx(l, k), &-a.get(j, l));
                        }
                        sys.push(eq);
                    }
                }
            }
            // C* = -C: C_{jk} + conj(C_{kj}) = 0.
            for j in 0..g {
                for k in j..g {
                    let mut eq = sys.equation();
                    sys.add_term(&mut eq, idx(j, k), &CycNum::one(m));
                    sys.add_conj_term(&mut eq, idx(k, j), &CycNum::one(m));
                    sys.push(eq);
                }
            }
        }
        Part::P => {
            for a in &action.generators {
                for j in 0..g {
                    for k in 0..g {
                        // (DA - conj(A)D)_{jk}
                        let mut eq = sys.equation();
                        for l in 0..g {
                            sys.add_term(&mut eq, idx(j, l), a.get(l, k));
                            sys.add_term(&mut eq, idx(l, k), &-&a.get(j, l).conj());
                        }
                        sys.push(eq);
                    }
                }
            }
            // Dᵗ = D.
            for j in 0..g {
                for k in (j + 1)..g {
                    let mut eq = sys.equation();
                    sys.add_term(&mut eq, idx(j, k), &CycNum::one(m));
                    sys.add_term(&mut eq, idx(k, j), &-&CycNum::one(m));
                    sys.push(eq);
                }
            }
        }
        Part::Mixed => {
            return Err(Error::WrongPart(
                "centralizer is computed per Cartan summand; use full_centralizer".into(),
            ));
        }
    }
    let context = format!("centralizer Z_{:?}", part);
    let sols = sys.solve(backend, &context)?;
    let elems: Vec<AlgElement> = sols
        .iter()
        .map(|z| {
            let block = CycMatrix::from_fn(g, g, m, |j, k| z[idx(j, k)].clone());
            match part {
                Part::K => AlgElement::from_k(block),
                _ => AlgElement::from_p(block),
            }
        })
        .collect::<Result<_>>()?;
    let sub = Subspace::from_elements(part, g, m, &elems);
    check_span_dimension(
        &sub.basis.iter().map(AlgElement::coords).collect::<Vec<_>>(),
        4 * g * g,
        m,
        sub.real_dim(),
        backend,
        &context,
    )?;
    Ok(sub)
}

/// Centralizer of the action in the whole algebra, solved jointly over both
/// blocks (used to verify `Z_g = Z_k ⊕ Z_p` rather than assuming it).
pub fn full_centralizer(action: &GroupAction, backend: Backend) -> Result<Subspace> {
    let g = action.genus;
    let m = action.conductor;
    let c_idx = |j: usize, k: usize| j * g + k;
    let d_idx = |j: usize, k: usize| g * g + j * g + k;
    let mut sys = ComplexSystem::new(2 * g * g, m);
    for a in &action.generators {
        let ac = a.conj();
        for j in 0..g {
            for k in 0..g {
                // Upper-left block of [U, diag(A, conj A)]: CA - AC.
                let mut eq = sys.equation();
                for l in 0..g {
                    sys.add_term(&mut eq, c_idx(j, l), a.get(l, k));
                    sys.add_term(&mut eq, c_idx(l, k), &-a.get(j, l));
                }
                sys.push(eq);
                // Lower-left block: DA - conj(A)D.
                let mut eq = sys.equation();
                for l in 0..g {
                    sys.add_term(&mut eq, d_idx(j, l), a.get(l, k));
                    sys.add_term(&mut eq, d_idx(l, k), &-ac.get(j, l));
                }
                sys.push(eq);
                // Upper-right block: conj(D)·conj(A) - A·conj(D).
                let mut eq = sys.equation();
                for l in 0..g {
                    sys.add_conj_term(&mut eq, d_idx(j, l), ac.get(l, k));
                    sys.add_conj_term(&mut eq, d_idx(l, k), &-a.get(j, l));
                }
                sys.push(eq);
                // Lower-right block: conj(C)·conj(A) - conj(A)·conj(C).
                let mut eq = sys.equation();
                for l in 0..g {
                    sys.add_conj_term(&mut eq, c_idx(j, l), ac.get(l, k));
                    sys.add_conj_term(&mut eq, c_idx(l, k), &-ac.get(j, l));
                }
                sys.push(eq);
            }
        }
    }
    for j in 0..g {
        for k in j..g {
            let mut eq = sys.equation();
            sys.add_term(&mut eq, c_idx(j, k), &CycNum::one(m));
            sys.add_conj_term(&mut eq, c_idx(k, j), &CycNum::one(m));
            sys.push(eq);
            if k > j {
                let mut eq = sys.equation();
                sys.add_term(&mut eq, d_idx(j, k), &CycNum::one(m));
                sys.add_term(&mut eq, d_idx(k, j), &-&CycNum::one(m));
                sys.push(eq);
            }
        }
    }
    let sols = sys.solve(backend, "full centralizer Z_g")?;
    let elems: Vec<AlgElement> = sols
        .iter()
        .map(|z| {
            let c = CycMatrix::from_fn(g, g, m, |j, k| z[c_idx(j, k)].clone());
            let d = CycMatrix::from_fn(g, g, m, |j, k| z[d_idx(j, k)].clone());
            AlgElement::from_parts(c, d)
        })
        .collect::<Result<_>>()?;
    Ok(Subspace::from_elements(Part::Mixed, g, m, &elems))
}
