//! Exact computation of the symmetric space attached to a finite abelian
//! group acting on a Siegel upper half-space.
//!
//! A finite abelian group Γ acting on a genus-`g` curve acts on the first
//! cohomology of the curve and hence, through period matrices, on the Siegel
//! space 𝔖 of complex structures `J` compatible with the intersection form
//! `Q` (that is, `J² = -I`, `J` preserves `Q`, and `Q(x, Jx) > 0`).  The
//! subspace 𝔖^Γ fixed by the group is itself a symmetric space, and its
//! isomorphism type is decided by finitely many integers that can be computed
//! with exact arithmetic in a cyclotomic field:
//!
//! * the complex dimension of the (-1)-eigenspace `p' = Z_p(Γ)` of the Cartan
//!   involution restricted to the centralizer of the action,
//! * the real dimension of the holonomy algebra `k' = [p', p']`, and
//! * the rank, i.e. the dimension of a maximal abelian subspace of `p'`.
//!
//! The crate is organised bottom-up:
//!
//! * [`cyclotomic`] — arithmetic in `ℚ(ζ_N)`, matrices over it, and exact
//!   kernel computations over the maximal real subfield;
//! * [`covers`] — branch data of abelian Galois covers, character eigenspace
//!   dimensions, and the induced unitary generators on holomorphic forms;
//! * [`cartan`] — the base complex structure `J₀`, centralizers inside the
//!   symplectic Lie algebra, and the complex structure on its `p`-part;
//! * [`decomp`] — bracket closures, module decomposition of `p'` into
//!   irreducible pieces, ranks, and the elliptic/anti-invariant split;
//! * [`classify`] — matching the computed invariants against the catalogue of
//!   irreducible Hermitian symmetric domains;
//! * [`crosscheck`] — a floating-point twin of every dimension computation,
//!   used to guard the exact backend.
//!
//! All decisions (kernel dimensions, positivity, irreducibility, ranks) are
//! made in exact arithmetic; floating point is only ever used to *propose*
//! candidates or to *cross-check* integers produced exactly.

pub mod cartan;
pub mod classify;
pub mod covers;
pub mod crosscheck;
pub mod cyclotomic;
pub mod decomp;
mod error;

pub use crosscheck::Backend;
pub use error::{Error, Result};
