//! Decomposition of the invariant tangent space into irreducible factors.
//!
//! The fixed locus of the group action is a totally geodesic submanifold
//! whose tangent space at the reference point is `p' = Z_p(Γ)` and whose
//! holonomy algebra is `k' = [p', p']`.  This module computes `k'`, splits
//! `p'` into irreducible `ad(k')`-invariant complex subspaces, certifies
//! irreducibility through the commutant, determines the real rank of each
//! factor, and performs the trivial-isotypic split used when the quotient
//! curve is elliptic.
//!
//! Every decision is exact: a factor is declared irreducible if and only if
//! the commutant of `{ad(c) : c ∈ k'} ∪ {ι}` on it has real dimension 2
//! (scalars `a + b·ι`).  Since `k'` consists of skew-hermitian blocks it
//! integrates to a compact group, the module is semisimple, and the
//! commutant dimension is a complete invariant — no numerical judgement is
//! involved.  Reducible spaces are split along exact kernels
//! `ker(T - a - b·ι)` for a non-scalar commutant element `T`; eigenvalue
//! proposals come from the rational root theorem, from certified numerical
//! root-finding, and from roots of unity of the ambient conductor, but a
//! proposal only counts once the kernel is verified nonzero in exact
//! arithmetic.  If no proposal splits a reducible space the failure is
//! reported as an error, never approximated away.

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cartan::{complex_structure, trace_form, AlgElement, Part, Subspace};
use crate::covers::IsotypicDims;
use crate::crosscheck::{approx_rational, checked_kernel, embed_c64, poly_roots, Backend};
use crate::cyclotomic::linalg::{express_in_rows, rows_to_matrix};
use crate::cyclotomic::{kernel_over_real_subfield, rref, CycMatrix, CycNum};
use crate::error::{Error, Result};

/// An irreducible piece of the invariant tangent space.
#[derive(Clone, Debug)]
pub struct Factor {
    /// The subspace of `p'` itself.
    pub space: Subspace,
    /// Its holonomy `[W, W] ⊆ k'`.
    pub k_part: Subspace,
    /// Complex dimension of `space`.
    pub complex_dim: usize,
    /// Real dimension of `k_part`.
    pub k_real_dim: usize,
    /// Real rank: dimension of a maximal abelian subspace.
    pub rank: usize,
    /// Real dimension of the commutant of `ad(k') ∪ {ι}` on `space`.
    pub commutant_real_dim: usize,
    /// Certified by `commutant_real_dim == 2`.
    pub irreducible: bool,
}

/// The split of `p'` induced by the trivial-isotypic block when the
/// quotient curve is elliptic.
#[derive(Clone, Debug)]
pub struct PrymSplit {
    /// Elements supported on the leading trivial-isotypic block of `D`.
    pub w1: Subspace,
    /// Trace-form orthogonal complement of `w1` in `p'`.
    pub w2: Subspace,
}

/// The holonomy algebra `k' = [p', p']`: the exact span of all pairwise
/// brackets of basis elements.  Verifies that the span lies in the `k`-part
/// and that `[[p', p'], p'] ⊆ p'` (bracket closure of the fixed locus).
pub fn derived_k(zp: &Subspace) -> Result<Subspace> {
    if zp.part != Part::P {
        return Err(Error::WrongPart(
            "holonomy algebra is computed from a p-part subspace".into(),
        ));
    }
    let mut brackets = Vec::new();
    for (i, x) in zp.basis.iter().enumerate() {
        for y in &zp.basis[i + 1..] {
            let b = x.bracket(y);
            if !b.d.is_zero() {
                return Err(Error::Internal(
                    "bracket of p-part elements left the k-part".into(),
                ));
            }
            if !b.is_zero() {
                brackets.push(b);
            }
        }
    }
    let kprime = Subspace::from_elements(Part::K, zp.genus, zp.conductor, &brackets);
    for c in &kprime.basis {
        for w in &zp.basis {
            if !zp.contains(&ad_action(c, w)?) {
                return Err(Error::Internal(
                    "p-part subspace is not stable under its own holonomy".into(),
                ));
            }
        }
    }
    Ok(kprime)
}

/// The adjoint action of a `k`-element on a `p`-element: the bracket
/// `[c, d]`, which lands in the `p`-part with block `C̄D - DC`.
pub fn ad_action(c: &AlgElement, d: &AlgElement) -> Result<AlgElement> {
    if !c.d.is_zero() {
        return Err(Error::WrongPart("adjoint operator must be a k-element".into()));
    }
    if !d.c.is_zero() {
        return Err(Error::WrongPart("adjoint argument must be a p-element".into()));
    }
    let b = c.bracket(d);
    debug_assert!(b.c.is_zero(), "[k, p] ⊆ p");
    Ok(b)
}

/// Flatten a matrix row-major.
fn vec_of(mat: &CycMatrix) -> Vec<CycNum> {
    let mut out = Vec::with_capacity(mat.rows() * mat.cols());
    for r in 0..mat.rows() {
        for c in 0..mat.cols() {
            out.push(mat.get(r, c).clone());
        }
    }
    out
}

/// Matrix of a linear map on `w` in the basis of `w`: column `b` holds the
/// coefficients of `image(basis[b])`.
fn map_matrix(
    w: &Subspace,
    image: impl Fn(&AlgElement) -> Result<AlgElement>,
    what: &str,
) -> Result<CycMatrix> {
    let n = w.real_dim();
    let (reduced, pivots) = rref(&w.coords_matrix());
    let mut cols = Vec::with_capacity(n);
    for b in &w.basis {
        let y = image(b)?;
        let coeffs = express_in_rows(&y.coords(), &reduced, &pivots).ok_or_else(|| {
            Error::Internal(format!("subspace is not stable under {what}"))
        })?;
        cols.push(coeffs);
    }
    Ok(CycMatrix::from_fn(n, n, w.conductor, |r, b| cols[b][r].clone()))
}

/// Matrix of `ad(c)` restricted to `w`.
fn ad_matrix(c: &AlgElement, w: &Subspace) -> Result<CycMatrix> {
    map_matrix(w, |x| ad_action(c, x), "the adjoint action")
}

/// Matrix of the complex structure `ι` restricted to `w`.
fn iota_matrix(w: &Subspace) -> Result<CycMatrix> {
    map_matrix(w, complex_structure, "the complex structure")
}

/// Basis of the commutant `{T ∈ End(w) : T ad(c) = ad(c) T ∀ c ∈ k',
/// T ι = ι T}`, as matrices in the basis of `w`.  Its real dimension is the
/// irreducibility certificate: 2 means scalars `a + b·ι` only.
pub fn commutant(w: &Subspace, kprime: &Subspace, backend: Backend) -> Result<Vec<CycMatrix>> {
    let n = w.real_dim();
    let m = w.conductor;
    let mut gens = Vec::with_capacity(kprime.real_dim() + 1);
    for c in &kprime.basis {
        gens.push(ad_matrix(c, w)?);
    }
    gens.push(iota_matrix(w)?);
    // Unknowns: the n² entries of T over the real subfield, row-major.
    let idx = |j: usize, k: usize| j * n + k;
    let mut rows = Vec::new();
    for gmat in &gens {
        for j in 0..n {
            for k in 0..n {
                // (TG - GT)_{jk} = Σ_l T_{jl} G_{lk} - G_{jl} T_{lk}.
                let mut row = vec![CycNum::zero(m); n * n];
                for l in 0..n {
                    row[idx(j, l)] = &row[idx(j, l)] + gmat.get(l, k);
                    row[idx(l, k)] = &row[idx(l, k)] - gmat.get(j, l);
                }
                rows.push(row);
            }
        }
    }
    let sys = rows_to_matrix(&rows, n * n, m);
    let ker = checked_kernel(&sys, backend, "commutant of the holonomy action")?;
    Ok(ker
        .vectors
        .iter()
        .map(|v| CycMatrix::from_fn(n, n, m, |j, k| v[idx(j, k)].clone()))
        .collect())
}

/// Monic minimal polynomial of `t` over the real subfield, little-endian.
fn minimal_polynomial(t: &CycMatrix) -> Vec<CycNum> {
    let n = t.rows();
    let m = t.conductor();
    let mut powers: Vec<Vec<CycNum>> = vec![vec_of(&CycMatrix::identity(n, m))];
    let mut cur = CycMatrix::identity(n, m);
    for deg in 1..=n {
        cur = &cur * t;
        powers.push(vec_of(&cur));
        // Dependence Σ_j c_j T^j = 0 with c_deg ≠ 0 ⟺ nonzero kernel of the
        // matrix whose columns are the flattened powers.
        let sys = CycMatrix::from_fn(n * n, deg + 1, m, |r, c| powers[c][r].clone());
        let ker = kernel_over_real_subfield(&sys).expect("real coefficients");
        if let Some(v) = ker.vectors.first() {
            let lead = v.last().unwrap();
            debug_assert!(!lead.is_zero(), "lower powers were independent");
            let inv = lead.inv();
            return v.iter().map(|c| c * &inv).collect();
        }
    }
    unreachable!("an n×n matrix satisfies a polynomial of degree ≤ n");
}

/// Divisors of `v` (absolute value), or `None` when `v` is too large to
/// enumerate cheaply.
fn small_divisors(v: &BigInt) -> Option<Vec<u64>> {
    let v: u64 = v.abs().try_into().ok()?;
    if v == 0 || v > 1_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(d);
            out.push(v / d);
        }
        d += 1;
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

/// Rational eigenvalue proposals for a polynomial over the real subfield:
/// project coefficients to ℚ by the Galois average, clear denominators, and
/// apply the rational root theorem.
fn rational_root_proposals(poly: &[CycNum]) -> Vec<BigRational> {
    let averaged: Vec<BigRational> = poly.iter().map(CycNum::rational_average).collect();
    // Strip trailing zeros (should not happen for a monic poly) and factor
    // out x^k, which contributes the proposal 0.
    let mut proposals = Vec::new();
    let first_nonzero = match averaged.iter().position(|c| !c.is_zero()) {
        Some(k) => k,
        None => return proposals,
    };
    if first_nonzero > 0 {
        proposals.push(BigRational::zero());
    }
    let trimmed = &averaged[first_nonzero..];
    if trimmed.len() < 2 {
        return proposals;
    }
    let denom_lcm = trimmed
        .iter()
        .fold(BigInt::one(), |acc, c| num::integer::lcm(acc, c.denom().clone()));
    let scale = BigRational::from(denom_lcm);
    let ints: Vec<BigInt> = trimmed.iter().map(|c| (c * &scale).to_integer()).collect();
    let (Some(ps), Some(qs)) = (
        small_divisors(&ints[0]),
        small_divisors(ints.last().unwrap()),
    ) else {
        return proposals;
    };
    for p in ps.iter().take(24) {
        for q in qs.iter().take(8) {
            let r = BigRational::new(BigInt::from(*p), BigInt::from(*q));
            proposals.push(r.clone());
            proposals.push(-r);
        }
    }
    proposals
}

/// Exact eigenspace `ker(T - a·I - b·J)` over the real subfield.
fn eigen_kernel(
    t: &CycMatrix,
    j: &CycMatrix,
    a: &CycNum,
    b: &CycNum,
    backend: Backend,
) -> Result<Vec<Vec<CycNum>>> {
    let n = t.rows();
    let eye = CycMatrix::identity(n, t.conductor());
    let shifted = &(t - &eye.scale(a)) - &j.scale(b);
    let ker = checked_kernel(&shifted, backend, "eigenvalue split of the commutant")?;
    Ok(ker.vectors)
}

/// Split a reducible invariant subspace along an exact eigenspace of a
/// non-scalar commutant element.
fn split_once(
    w: &Subspace,
    comm: &[CycMatrix],
    backend: Backend,
) -> Result<(Subspace, Subspace)> {
    let n = w.real_dim();
    let m = w.conductor;
    let jmat = iota_matrix(w)?;
    let eye = CycMatrix::identity(n, m);
    // A commutant element outside span{I, J} must exist when the commutant
    // has dimension > 2.
    let scalars = rows_to_matrix(&[vec_of(&eye), vec_of(&jmat)], n * n, m);
    let (reduced, pivots) = rref(&scalars);
    let t = comm
        .iter()
        .find(|t| express_in_rows(&vec_of(t), &reduced, &pivots).is_none())
        .ok_or_else(|| Error::Internal("reducible space with scalar-only commutant".into()))?;

    let mut proposals: Vec<(CycNum, CycNum)> = Vec::new();
    let zero = CycNum::zero(m);
    // 1. Rational proposals from the minimal polynomial.
    let min_poly = minimal_polynomial(t);
    for r in rational_root_proposals(&min_poly) {
        proposals.push((CycNum::from_rational(m, r), zero.clone()));
    }
    // 2. Gaussian-rational proposals recognised from numerical roots.
    let coeffs: Vec<_> = min_poly.iter().map(embed_c64).collect();
    for root in poly_roots(&coeffs) {
        let a = approx_rational(root.re, 1_000_000);
        let b = approx_rational(root.im, 1_000_000);
        let a = CycNum::from_rational(m, a);
        let b = CycNum::from_rational(m, b);
        proposals.push((a.clone(), b.clone()));
        proposals.push((a, &zero - &b));
    }
    // 3. Roots of unity of the ambient conductor.
    for k in 0..m {
        let z = CycNum::root_of_unity(m, k as i64);
        proposals.push((z.re(), z.im()?));
    }
    for (a, b) in &proposals {
        let ker = eigen_kernel(t, &jmat, a, b, backend)?;
        if ker.is_empty() || ker.len() == n {
            continue;
        }
        let elems: Vec<AlgElement> = ker.iter().map(|v| w.combination(v)).collect();
        let w1 = Subspace::from_elements(Part::P, w.genus, m, &elems);
        let w2 = w1.orthogonal_complement_in(w, backend)?;
        if w1.real_dim() + w2.real_dim() != n {
            return Err(Error::Internal(
                "eigenspace and its orthogonal complement do not fill the space".into(),
            ));
        }
        return Ok((w1, w2));
    }
    Err(Error::UnsplittableOverField {
        dim_r: n,
        commutant_dim: comm.len(),
        conductor: m,
    })
}

/// Decompose `zp` into pairwise orthogonal, `ι`-stable, `ad(k')`-stable
/// irreducible complex subspaces, with exact certificates.
///
/// `kprime` must be `derived_k(zp)`.  Each returned factor carries its own
/// holonomy `[W, W]`, complex dimension, rank, and commutant dimension; a
/// factor with vanishing holonomy (a euclidean factor) is an error, as is a
/// reducible space that cannot be split over the ambient field.
pub fn invariant_factors(
    zp: &Subspace,
    kprime: &Subspace,
    backend: Backend,
) -> Result<Vec<Factor>> {
    let mut leaves: Vec<(Subspace, usize)> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    if zp.real_dim() > 0 {
        queue.push_back(zp.clone());
    }
    while let Some(w) = queue.pop_front() {
        let comm = commutant(&w, kprime, backend)?;
        debug_assert!(comm.len() >= 2, "commutant always contains 1 and ι");
        if comm.len() == 2 {
            leaves.push((w, 2));
        } else {
            let (w1, w2) = split_once(&w, &comm, backend)?;
            queue.push_back(w1);
            queue.push_back(w2);
        }
    }
    // Deterministic presentation: sort by complex dimension, then by the
    // canonical coordinate matrix of the echelonized basis.
    leaves.sort_by(|a, b| {
        let da = a.0.real_dim();
        let db = b.0.real_dim();
        da.cmp(&db).then_with(|| {
            format!("{:?}", a.0.coords_matrix()).cmp(&format!("{:?}", b.0.coords_matrix()))
        })
    });
    let mut factors = Vec::with_capacity(leaves.len());
    for (idx, (space, comm_dim)) in leaves.into_iter().enumerate() {
        let k_part = derived_k(&space)?;
        if k_part.real_dim() == 0 {
            return Err(Error::EuclideanFactor(idx));
        }
        let complex_dim = space.complex_dim()?;
        let rank = factor_rank(&space, backend)?;
        factors.push(Factor {
            complex_dim,
            k_real_dim: k_part.real_dim(),
            rank,
            commutant_real_dim: comm_dim,
            irreducible: comm_dim == 2,
            space,
            k_part,
        });
    }
    // Factors must fill zp and be pairwise trace-orthogonal.
    let mut total = 0;
    for (i, f) in factors.iter().enumerate() {
        total += f.space.real_dim();
        for g in &factors[i + 1..] {
            for x in &f.space.basis {
                for y in &g.space.basis {
                    if !trace_form(x, y)?.is_zero() {
                        return Err(Error::Internal("factors are not orthogonal".into()));
                    }
                }
            }
        }
    }
    if total != zp.real_dim() {
        return Err(Error::Internal("factor dimensions do not sum up".into()));
    }
    Ok(factors)
}

/// Centralizer `{Y ∈ w : [x, Y] = 0}` of an element inside a `p`-part
/// subspace.
fn bracket_centralizer(w: &Subspace, x: &AlgElement, backend: Backend) -> Result<Subspace> {
    let n = w.real_dim();
    let coord_len = 4 * w.genus * w.genus;
    let images: Vec<Vec<CycNum>> = w.basis.iter().map(|b| x.bracket(b).coords()).collect();
    let sys = CycMatrix::from_fn(coord_len, n, w.conductor, |r, b| images[b][r].clone());
    let ker = checked_kernel(&sys, backend, "abelian-subspace centralizer")?;
    let elems: Vec<AlgElement> = ker.vectors.iter().map(|v| w.combination(v)).collect();
    Ok(Subspace::from_elements(Part::P, w.genus, w.conductor, &elems))
}

/// Do all pairs of basis elements commute?
fn is_abelian(w: &Subspace) -> bool {
    for (i, x) in w.basis.iter().enumerate() {
        for y in &w.basis[i + 1..] {
            if !x.bracket(y).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Real rank of an invariant subspace: the dimension of a maximal abelian
/// subspace.  A sampled element `X` is accepted when `Z_w(X)` is itself
/// abelian — then `Z_w(X)` is maximal abelian (any abelian superspace
/// centralizes `X`, hence lies back inside), so its dimension is the rank.
/// Samples follow a fixed deterministic schedule; if none is accepted the
/// rank is reported undecidable rather than guessed.
pub fn factor_rank(space: &Subspace, backend: Backend) -> Result<usize> {
    let n = space.real_dim();
    if n == 0 {
        return Err(Error::Internal("rank of the zero space".into()));
    }
    let mut schedules: Vec<Vec<BigRational>> = vec![
        vec![BigRational::one(); n],
        (0..n).map(|k| BigRational::from(BigInt::from(k as i64 + 1))).collect(),
        (0..n)
            .map(|k| BigRational::from(BigInt::from(3i64).pow(k as u32)))
            .collect(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ab11);
    while schedules.len() < 40 {
        schedules.push(
            (0..n)
                .map(|_| {
                    BigRational::new(
                        BigInt::from(rng.gen_range(-9i64..=9)),
                        BigInt::from(rng.gen_range(1i64..=3)),
                    )
                })
                .collect(),
        );
    }
    let mut accepted = Vec::new();
    for coeffs in &schedules {
        let x = space
            .basis
            .iter()
            .zip(coeffs)
            .fold(AlgElement::zero(space.genus, space.conductor), |acc, (b, q)| {
                acc.add(&b.scale_rational(q))
            });
        if x.is_zero() {
            continue;
        }
        let z = bracket_centralizer(space, &x, backend)?;
        if is_abelian(&z) {
            accepted.push(z.real_dim());
            if accepted.len() >= 3 {
                break;
            }
        }
    }
    accepted
        .into_iter()
        .min()
        .ok_or(Error::RankUndecided(n))
}

/// Does `ad(c)` preserve `w` for every basis element `c` of `kprime`?
fn is_ad_stable(w: &Subspace, kprime: &Subspace) -> Result<bool> {
    for c in &kprime.basis {
        for x in &w.basis {
            if !w.contains(&ad_action(c, x)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Split `p'` along the trivial-isotypic block when the quotient curve is
/// elliptic: `W₁` consists of the elements whose `D`-block is supported on
/// the leading `t×t` corner (`t` = multiplicity of the trivial character),
/// `W₂` is its trace-form orthogonal complement.  Both are verified
/// `ad(k')`-stable and `dim_C W₁ = t(t+1)/2`.
pub fn prym_split(zp: &Subspace, dims: &IsotypicDims, backend: Backend) -> Result<PrymSplit> {
    if dims.base_genus != 1 {
        return Err(Error::NotElliptic(dims.base_genus));
    }
    let rank = dims.dims.keys().next().map(|k| k.len()).unwrap_or(0);
    let t = dims.dim(&vec![0u32; rank]) as usize;
    let g = zp.genus;
    let m = zp.conductor;
    let n = zp.real_dim();
    // Coefficients α with Σ α_b basis[b] supported on the leading t×t
    // block of D: two real-subfield rows per forbidden entry.
    let coords: Vec<Vec<CycNum>> = zp.basis.iter().map(AlgElement::coords).collect();
    let mut rows = Vec::new();
    for r in 0..g {
        for c in 0..g {
            if r < t && c < t {
                continue;
            }
            let off = 2 * g * g + 2 * (r * g + c);
            for part in 0..2 {
                rows.push((0..n).map(|b| coords[b][off + part].clone()).collect());
            }
        }
    }
    let sys = rows_to_matrix(&rows, n, m);
    let ker = checked_kernel(&sys, backend, "trivial-isotypic block membership")?;
    let elems: Vec<AlgElement> = ker.vectors.iter().map(|v| zp.combination(v)).collect();
    let w1 = Subspace::from_elements(Part::P, g, m, &elems);
    let w2 = w1.orthogonal_complement_in(zp, backend)?;
    if w1.complex_dim()? != t * (t + 1) / 2 {
        return Err(Error::Internal(
            "trivial-isotypic block has unexpected dimension".into(),
        ));
    }
    if w1.real_dim() + w2.real_dim() != n {
        return Err(Error::Internal("trivial-isotypic split is not a direct sum".into()));
    }
    let kprime = derived_k(zp)?;
    if !is_ad_stable(&w1, &kprime)? || !is_ad_stable(&w2, &kprime)? {
        return Err(Error::Internal(
            "trivial-isotypic split is not holonomy-stable".into(),
        ));
    }
    Ok(PrymSplit { w1, w2 })
}
