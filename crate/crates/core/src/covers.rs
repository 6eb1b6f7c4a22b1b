//! Abelian Galois covers of curves: branch data, character eigenspace
//! dimensions, and the induced action on holomorphic forms.
//!
//! A Galois cover `C → C'` with abelian Galois group `G`, base genus `g'` and
//! `r` branch points is encoded by the local monodromy residues
//! `a_1, …, a_r ∈ G \ {0}` with `Σ a_i = 0`; for `g' = 0` the residues must
//! additionally generate `G` (otherwise the total space is disconnected).
//!
//! The group acts on the space of holomorphic 1-forms of `C`, which splits
//! into character eigenspaces.  For a character `χ` write `χ(a) =
//! e^{2πi·θ_χ(a)}` with `θ_χ(a) ∈ [0, 1)`; the eigenspace dimensions are
//!
//! ```text
//! dim V_χ = g' - 1 + Σ_i θ_χ(a_i)     (χ non-trivial)
//! dim V_triv = g'
//! ```
//!
//! For cyclic `G = ℤ/m`, `g' = 0` this reduces to the familiar sum
//! `-1 + Σ_i [n·a_i]_m / m` for the character of index `n`.  The total
//! `Σ_χ dim V_χ` always reproduces the Riemann–Hurwitz genus
//! `2g - 2 = |G|(2g' - 2) + Σ_i |G|(1 - 1/ord(a_i))`, which is asserted.
//!
//! Each group generator then acts on forms as a diagonal unitary matrix `A₀`
//! whose diagonal lists the character values, one block per character, and on
//! cohomology in the frame (forms, conjugate forms) as the symplectic matrix
//! `diag(A₀, conj A₀)`.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigRational};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{CycMatrix, CycNum};
use crate::error::{Error, Result};

/// A finite abelian group `ℤ/m_1 × … × ℤ/m_k`, elements as residue tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    moduli: Vec<u32>,
}

impl AbelianGroup {
    /// A product of cyclic groups; every modulus must be at least 2.
    pub fn new(moduli: Vec<u32>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::BadGroup("empty modulus list".into()));
        }
        if let Some(m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::BadGroup(format!("modulus {m} < 2")));
        }
        Ok(AbelianGroup { moduli })
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().map(|&m| m as u64).product()
    }

    /// Smallest `e` with `e·a = 0` for all `a`.
    pub fn exponent(&self) -> u32 {
        self.moduli.iter().fold(1u32, |acc, &m| acc.lcm(&m))
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.moduli.len()]
    }

    /// Reduce an integer tuple to canonical residues.
    pub fn reduce(&self, raw: &[i64]) -> Result<Vec<u32>> {
        if raw.len() != self.moduli.len() {
            return Err(Error::BadGroup(format!(
                "element has {} coordinates, group has {} factors",
                raw.len(),
                self.moduli.len()
            )));
        }
        Ok(raw
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| x.rem_euclid(m as i64) as u32)
            .collect())
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect()
    }

    pub fn neg(&self, a: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (m - x % m) % m)
            .collect()
    }

    pub fn is_zero(&self, a: &[u32]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Order of an element.
    pub fn order_of(&self, a: &[u32]) -> u32 {
        a.iter()
            .zip(&self.moduli)
            .fold(1u32, |acc, (&x, &m)| acc.lcm(&(m / m.gcd(&x))))
    }

    /// All elements in lexicographic order (the zero tuple first).
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for &m in &self.moduli {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for prefix in &out {
                for x in 0..m {
                    let mut e = prefix.clone();
                    e.push(x);
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }

    /// The standard generators `e_1, …, e_k`.
    pub fn standard_generators(&self) -> Vec<Vec<u32>> {
        (0..self.moduli.len())
            .map(|j| {
                let mut e = self.zero();
                e[j] = 1;
                e
            })
            .collect()
    }

    /// Do the given elements generate the whole group?
    pub fn generates(&self, elems: &[Vec<u32>]) -> bool {
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        seen.insert(self.zero());
        let mut frontier = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for a in elems {
                let y = self.add(&x, a);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.len() as u64 == self.order()
    }

    /// Characters of the group, indexed by dual tuples in lexicographic
    /// order; the trivial character (zero tuple) comes first.
    pub fn characters(&self) -> Vec<Vec<u32>> {
        self.elements()
    }

    /// The pairing fraction `θ_χ(a) ∈ [0, 1)` with `χ(a) = e^{2πi·θ}`.
    pub fn character_fraction(&self, chi: &[u32], a: &[u32]) -> BigRational {
        let mut acc = BigRational::zero();
        for ((&t, &x), &m) in chi.iter().zip(a).zip(&self.moduli) {
            acc += BigRational::new(BigInt::from(t as u64 * x as u64), BigInt::from(m));
        }
        let floor = acc.floor();
        acc - floor
    }

    /// The exponent `e` with `χ(a) = ζ_M^e` for an ambient conductor `M`
    /// divisible by every modulus.
    pub fn character_exponent(&self, chi: &[u32], a: &[u32], conductor: u32) -> i64 {
        let mut acc: i64 = 0;
        for ((&t, &x), &m) in chi.iter().zip(a).zip(&self.moduli) {
            debug_assert_eq!(conductor % m, 0, "conductor not divisible by modulus");
            acc += (t as i64 * x as i64) * (conductor / m) as i64;
        }
        acc.rem_euclid(conductor as i64)
    }
}

/// Branch data of an abelian Galois cover: group, base genus, and local
/// monodromy residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    pub group: AbelianGroup,
    pub base_genus: u32,
    pub branch: Vec<Vec<u32>>,
}

impl CoverSpec {
    /// Validate and build branch data.  Residue tuples are canonicalised
    /// modulo the group; identity residues, a nonzero total sum, and (for
    /// base genus 0) non-generating residues are rejected.
    pub fn new(group: AbelianGroup, base_genus: u32, branch: Vec<Vec<i64>>) -> Result<Self> {
        let mut reduced = Vec::with_capacity(branch.len());
        for (i, raw) in branch.iter().enumerate() {
            let a = group.reduce(raw)?;
            if group.is_zero(&a) {
                return Err(Error::IdentityMonodromy(i));
            }
            reduced.push(a);
        }
        let total = reduced
            .iter()
            .fold(group.zero(), |acc, a| group.add(&acc, a));
        if !group.is_zero(&total) {
            return Err(Error::InconsistentMonodromy(format!("{total:?}")));
        }
        if base_genus == 0 && !group.generates(&reduced) {
            return Err(Error::DisconnectedCover);
        }
        Ok(CoverSpec {
            group,
            base_genus,
            branch: reduced,
        })
    }

    /// Genus of the total space by Riemann–Hurwitz.
    pub fn genus(&self) -> u32 {
        let n = BigRational::from_integer(BigInt::from(self.group.order()));
        let mut rhs = &n * BigRational::from_integer(BigInt::from(2 * self.base_genus as i64 - 2));
        for a in &self.branch {
            let d = self.group.order_of(a);
            rhs += &n * (BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(d)));
        }
        // 2g - 2 = rhs
        let g = (rhs + BigRational::from_integer(BigInt::from(2)))
            / BigRational::from_integer(BigInt::from(2));
        assert!(g.is_integer() && !g.is_negative(), "Riemann-Hurwitz genus must be a nonnegative integer");
        g.to_integer().try_into().expect("genus fits in u32")
    }
}

/// Character eigenspace dimensions of the action on holomorphic forms,
/// plus the genus bookkeeping of the underlying cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicDims {
    /// Dimension per character, every character present (zeros included),
    /// in lexicographic dual order.
    pub dims: BTreeMap<Vec<u32>, u32>,
    /// Total `Σ_χ dim V_χ` = genus of the total space.
    pub genus: u32,
    /// Genus of the base curve (= multiplicity of the trivial character).
    pub base_genus: u32,
}

impl IsotypicDims {
    pub fn dim(&self, chi: &[u32]) -> u32 {
        *self.dims.get(chi).unwrap_or(&0)
    }
}

/// Compute all character eigenspace dimensions of a cover.
pub fn eigenspace_dims(spec: &CoverSpec) -> Result<IsotypicDims> {
    let group = &spec.group;
    let gp = BigRational::from_integer(BigInt::from(spec.base_genus));
    let mut dims = BTreeMap::new();
    let mut total = 0u32;
    for chi in group.characters() {
        let d = if group.is_zero(&chi) {
            gp.clone()
        } else {
            let mut acc = &gp - BigRational::one();
            for a in &spec.branch {
                acc += group.character_fraction(&chi, a);
            }
            acc
        };
        if !d.is_integer() || d.is_negative() {
            return Err(Error::Internal(format!(
                "character dimension {d} for χ = {chi:?} is not a nonnegative integer"
            )));
        }
        let d: u32 = d.to_integer().try_into().expect("dimension fits in u32");
        total += d;
        dims.insert(chi, d);
    }
    if total != spec.genus() {
        return Err(Error::Internal(format!(
            "Σ character dimensions = {total} disagrees with the Riemann-Hurwitz genus {}",
            spec.genus()
        )));
    }
    Ok(IsotypicDims {
        dims,
        genus: total,
        base_genus: spec.base_genus,
    })
}

/// The group action on cohomology: one unitary generator `A₀` per group
/// generator acting on holomorphic forms, and the corresponding symplectic
/// generator `diag(A₀, conj A₀)` on the frame (forms, conjugate forms).
#[derive(Clone, Debug)]
pub struct GroupAction {
    /// Genus `g` (size of each `A₀`).
    pub genus: usize,
    /// Ambient conductor: a multiple of 4 and of every generator order.
    pub conductor: u32,
    /// Unitary generators on holomorphic forms.
    pub generators: Vec<CycMatrix>,
    /// Symplectic generators `diag(A₀, conj A₀)` of size `2g`.
    pub symplectic: Vec<CycMatrix>,
}

fn symplectic_of(a0: &CycMatrix) -> CycMatrix {
    CycMatrix::block_diagonal(a0, &a0.conj())
}

/// Build the diagonal action of the group on forms from its eigenspace
/// dimensions: the trivial character block first, then the remaining
/// characters in lexicographic dual order, each character `χ` contributing
/// `dim V_χ` diagonal entries `χ(e_j)` for the `j`-th standard generator.
pub fn build_action(group: &AbelianGroup, dims: &IsotypicDims) -> Result<GroupAction> {
    let conductor = group
        .moduli()
        .iter()
        .fold(4u32, |acc, &m| acc.lcm(&m));
    let genus = dims.genus as usize;
    let mut generators = Vec::new();
    for e in group.standard_generators() {
        let mut diag = Vec::with_capacity(genus);
        for chi in group.characters() {
            let d = dims.dim(&chi);
            if d == 0 {
                continue;
            }
            let value =
                CycNum::root_of_unity(conductor, group.character_exponent(&chi, &e, conductor));
            for _ in 0..d {
                diag.push(value.clone());
            }
        }
        debug_assert_eq!(diag.len(), genus);
        generators.push(CycMatrix::diagonal(&diag, conductor));
    }
    for (i, a) in generators.iter().enumerate() {
        if !a.is_unitary() {
            return Err(Error::NotUnitary(i));
        }
        for b in &generators[..i] {
            if &(a * b) != &(b * a) {
                return Err(Error::Internal(
                    "generators of an abelian action must commute".into(),
                ));
            }
        }
    }
    let symplectic = generators.iter().map(symplectic_of).collect();
    Ok(GroupAction {
        genus,
        conductor,
        generators,
        symplectic,
    })
}

/// Wrap explicitly given unitary generators on forms as a group action.
///
/// All matrices must be square of one size and share one conductor; they are
/// re-embedded into `lcm(4, conductor)` so that the imaginary unit exists in
/// the ambient field.
pub fn load_explicit_action(matrices: &[CycMatrix]) -> Result<GroupAction> {
    let Some(first) = matrices.first() else {
        return Err(Error::BadGroup("no generator matrices supplied".into()));
    };
    if !first.is_square() {
        return Err(Error::BadGroup("generator matrices must be square".into()));
    }
    let genus = first.rows();
    let base_conductor = first.conductor();
    for (i, m) in matrices.iter().enumerate() {
        if !m.is_square() || m.rows() != genus {
            return Err(Error::BadGroup(format!(
                "generator {i} has size {}×{}, expected {genus}×{genus}",
                m.rows(),
                m.cols()
            )));
        }
        if m.conductor() != base_conductor {
            return Err(Error::ConductorMismatch(format!(
                "generator {i} lives in ℚ(ζ_{}), generator 0 in ℚ(ζ_{})",
                m.conductor(),
                base_conductor
            )));
        }
    }
    let conductor = base_conductor.lcm(&4);
    let mut generators = Vec::with_capacity(matrices.len());
    for (i, m) in matrices.iter().enumerate() {
        let m = m.embed(conductor)?;
        if !m.is_unitary() {
            return Err(Error::NotUnitary(i));
        }
        generators.push(m);
    }
    let symplectic = generators.iter().map(symplectic_of).collect();
    Ok(GroupAction {
        genus,
        conductor,
        generators,
        symplectic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyclic(m: u32) -> AbelianGroup {
        AbelianGroup::new(vec![m]).unwrap()
    }

    /// Independent oracle for cyclic covers of the line: the eigenspace of
    /// the index-`n` character has dimension `-1 + Σ_i [n·a_i]_m / m`.
    fn cyclic_base0_oracle(m: u32, branch: &[u32], n: u32) -> i64 {
        let mut num: i64 = 0;
        for &a in branch {
            num += ((n as i64 * a as i64).rem_euclid(m as i64)) as i64;
        }
        assert_eq!(num % m as i64, 0, "oracle requires Σ ≡ 0");
        -1 + num / m as i64
    }

    #[test]
    fn cyclic_cover_of_the_line_matches_direct_sum() {
        // ℤ/3, base genus 0, residues (1, 1, 2, 2): dims 0, 1, 1, genus 2.
        let spec = CoverSpec::new(cyclic(3), 0, vec![vec![1], vec![1], vec![2], vec![2]]).unwrap();
        let dims = eigenspace_dims(&spec).unwrap();
        assert_eq!(dims.dim(&[0]), 0);
        assert_eq!(dims.dim(&[1]), 1);
        assert_eq!(dims.dim(&[2]), 1);
        assert_eq!(dims.genus, 2);
        for n in 1..3 {
            assert_eq!(
                dims.dim(&[n]) as i64,
                cyclic_base0_oracle(3, &[1, 1, 2, 2], n)
            );
        }
    }

    #[test]
    fn elliptic_covers_used_by_the_fixture_families() {
        // ℤ/2 over genus 1 with two branch points: dims (1, 1), genus 2.
        let spec = CoverSpec::new(cyclic(2), 1, vec![vec![1], vec![1]]).unwrap();
        let dims = eigenspace_dims(&spec).unwrap();
        assert_eq!((dims.dim(&[0]), dims.dim(&[1])), (1, 1));
        assert_eq!(dims.genus, 2);

        // ℤ/2 over genus 1 with four branch points: dims (1, 2), genus 3.
        let spec = CoverSpec::new(cyclic(2), 1, vec![vec![1]; 4]).unwrap();
        let dims = eigenspace_dims(&spec).unwrap();
        assert_eq!((dims.dim(&[0]), dims.dim(&[1])), (1, 2));
        assert_eq!(dims.genus, 3);

        // ℤ/3 over genus 1 branched at (1, 2): dims (1, 1, 1), genus 3.
        let spec = CoverSpec::new(cyclic(3), 1, vec![vec![1], vec![2]]).unwrap();
        let dims = eigenspace_dims(&spec).unwrap();
        assert_eq!((dims.dim(&[0]), dims.dim(&[1]), dims.dim(&[2])), (1, 1, 1));
        assert_eq!(dims.genus, 3);

        // ℤ/4 over genus 1 branched at (2, 2): dims (1, 1, 0, 1), genus 3.
        let spec = CoverSpec::new(cyclic(4), 1, vec![vec![2], vec![2]]).unwrap();
        let dims = eigenspace_dims(&spec).unwrap();
        assert_eq!(dims.dim(&[0]), 1);
        assert_eq!(dims.dim(&[1]), 1);
        assert_eq!(dims.dim(&[2]), 0);
        assert_eq!(dims.dim(&[3]), 1);
        assert_eq!(dims.genus, 3);

        // ℤ/3 over genus 1 with three branch points at residue 1:
        // dims (1, 1, 2), genus 4.
        let spec = CoverSpec::new(cyclic(3), 1, vec![vec![1]; 3]).unwrap();
        let dims = eigenspace_dims(&spec).unwrap();
        assert_eq!((dims.dim(&[0]), dims.dim(&[1]), dims.dim(&[2])), (1, 1, 2));
        assert_eq!(dims.genus, 4);
    }

    #[test]
    fn klein_cover_of_the_line() {
        // (ℤ/2)² over genus 0 with residues (1,0)², (0,1)², (1,1)²:
        // the three non-trivial characters each get dimension 1, genus 3.
        let group = AbelianGroup::new(vec![2, 2]).unwrap();
        let spec = CoverSpec::new(
            group,
            0,
            vec![
                vec![1, 0],
                vec![1, 0],
                vec![0, 1],
                vec![0, 1],
                vec![1, 1],
                vec![1, 1],
            ],
        )
        .unwrap();
        let dims = eigenspace_dims(&spec).unwrap();
        assert_eq!(dims.dim(&[0, 0]), 0);
        assert_eq!(dims.dim(&[0, 1]), 1);
        assert_eq!(dims.dim(&[1, 0]), 1);
        assert_eq!(dims.dim(&[1, 1]), 1);
        assert_eq!(dims.genus, 3);
    }

    #[test]
    fn klein_branch_data_is_forced_by_its_dimensions() {
        // Brute-force every length-6 vector of nonzero (ℤ/2)² residues: the
        // ones with zero sum, full generation, and eigenspace dims (1, 1, 1)
        // are exactly the permutations of the vector used above.
        let group = AbelianGroup::new(vec![2, 2]).unwrap();
        let nonzero = [[1u32, 0], [0, 1], [1, 1]];
        let mut hits = 0;
        let mut counts_match = 0;
        for code in 0..3u32.pow(6) {
            let mut c = code;
            let mut branch = Vec::new();
            for _ in 0..6 {
                branch.push(nonzero[(c % 3) as usize].to_vec());
                c /= 3;
            }
            let total = branch
                .iter()
                .fold(group.zero(), |acc, a| group.add(&acc, a));
            if !group.is_zero(&total) || !group.generates(&branch) {
                continue;
            }
            let spec = CoverSpec::new(
                group.clone(),
                0,
                branch.iter().map(|a| a.iter().map(|&x| x as i64).collect()).collect(),
            )
            .unwrap();
            let dims = eigenspace_dims(&spec).unwrap();
            if [[0u32, 1], [1, 0], [1, 1]].iter().all(|chi| dims.dim(chi) == 1) {
                hits += 1;
                let mut counts = BTreeMap::new();
                for a in &branch {
                    *counts.entry(a.clone()).or_insert(0u32) += 1;
                }
                if counts.values().all(|&c| c == 2) {
                    counts_match += 1;
                }
            }
        }
        assert!(hits > 0, "no branch vector reproduces the dimensions");
        assert_eq!(
            hits, counts_match,
            "every solution uses each nonzero residue exactly twice"
        );
    }

    #[test]
    fn invalid_branch_data_is_rejected() {
        assert!(matches!(
            CoverSpec::new(cyclic(3), 0, vec![vec![1], vec![1]]),
            Err(Error::InconsistentMonodromy(_))
        ));
        assert!(matches!(
            CoverSpec::new(cyclic(3), 1, vec![vec![3], vec![3]]),
            Err(Error::IdentityMonodromy(0))
        ));
        // ℤ/4 branched only over the 2-torsion cannot be connected over genus 0.
        assert!(matches!(
            CoverSpec::new(cyclic(4), 0, vec![vec![2], vec![2]]),
            Err(Error::DisconnectedCover)
        ));
        assert!(matches!(AbelianGroup::new(vec![]), Err(Error::BadGroup(_))));
        assert!(matches!(AbelianGroup::new(vec![1]), Err(Error::BadGroup(_))));
    }

    #[test]
    fn action_diagonals_follow_character_order() {
        // ℤ/4 branched at (2, 2) over genus 1: characters 0, 1, 3 populate
        // blocks of size 1, so A₀ = diag(1, i, -i) at conductor 4.
        let spec = CoverSpec::new(cyclic(4), 1, vec![vec![2], vec![2]]).unwrap();
        let action = build_action(&spec.group, &eigenspace_dims(&spec).unwrap()).unwrap();
        assert_eq!(action.conductor, 4);
        assert_eq!(action.genus, 3);
        let a0 = &action.generators[0];
        assert_eq!(*a0.get(0, 0), CycNum::one(4));
        assert_eq!(*a0.get(1, 1), CycNum::root_of_unity(4, 1));
        assert_eq!(*a0.get(2, 2), CycNum::root_of_unity(4, 3));

        // The Klein action gets A₀ = diag(1,-1,-1), B₀ = diag(-1,1,-1) in
        // the character order (0,1) < (1,0) < (1,1).
        let group = AbelianGroup::new(vec![2, 2]).unwrap();
        let spec = CoverSpec::new(
            group,
            0,
            vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1], vec![1, 1], vec![1, 1]],
        )
        .unwrap();
        let action = build_action(&spec.group, &eigenspace_dims(&spec).unwrap()).unwrap();
        assert_eq!(action.conductor, 4);
        let minus_one = CycNum::from_integer(4, -1);
        let one = CycNum::one(4);
        let diag = |m: &CycMatrix, j: usize| m.get(j, j).clone();
        // First generator (1, 0): values χ(e₁) for χ = (0,1), (1,0), (1,1).
        assert_eq!(diag(&action.generators[0], 0), one);
        assert_eq!(diag(&action.generators[0], 1), minus_one);
        assert_eq!(diag(&action.generators[0], 2), minus_one);
        // Second generator (0, 1).
        assert_eq!(diag(&action.generators[1], 0), minus_one);
        assert_eq!(diag(&action.generators[1], 1), one);
        assert_eq!(diag(&action.generators[1], 2), minus_one);
    }

    #[test]
    fn symplectic_generators_preserve_the_intersection_form() {
        let spec = CoverSpec::new(cyclic(3), 1, vec![vec![1], vec![2]]).unwrap();
        let action = build_action(&spec.group, &eigenspace_dims(&spec).unwrap()).unwrap();
        let g = action.genus;
        let m = action.conductor;
        let i = CycNum::imaginary_unit(m).unwrap();
        let q = CycMatrix::from_blocks(
            &CycMatrix::zero(g, g, m),
            &CycMatrix::identity(g, m).scale(&i),
            &CycMatrix::identity(g, m).scale(&(-&i)),
            &CycMatrix::zero(g, g, m),
        );
        for s in &action.symplectic {
            assert_eq!(&(&s.transpose() * &q) * s, q, "AᵗQA = Q fails");
        }
        // Generator orders divide the group exponent.
        for a in &action.generators {
            let mut p = CycMatrix::identity(g, m);
            for _ in 0..3 {
                p = &p * a;
            }
            assert_eq!(p, CycMatrix::identity(g, m));
        }
    }

    #[test]
    fn explicit_loading_validates_inputs() {
        let a = CycMatrix::diagonal(
            &[
                CycNum::root_of_unity(4, 3),
                CycNum::root_of_unity(4, 3),
                CycNum::root_of_unity(4, 1),
            ],
            4,
        );
        let action = load_explicit_action(&[a.clone()]).unwrap();
        assert_eq!(action.genus, 3);
        assert_eq!(action.conductor, 4);
        assert_eq!(action.symplectic[0].block(0, 0, 3), action.generators[0]);
        assert_eq!(
            action.symplectic[0].block(3, 3, 3),
            action.generators[0].conj()
        );

        // Odd conductors are re-embedded so that i exists.
        let b = CycMatrix::diagonal(
            &[
                CycNum::root_of_unity(3, 2),
                CycNum::root_of_unity(3, 2),
                CycNum::root_of_unity(3, 1),
            ],
            3,
        );
        let action = load_explicit_action(&[b.clone()]).unwrap();
        assert_eq!(action.conductor, 12);

        // A non-unitary matrix is rejected.
        let mut bad = CycMatrix::identity(2, 4);
        bad.set(0, 1, CycNum::one(4));
        assert!(matches!(
            load_explicit_action(&[bad]),
            Err(Error::NotUnitary(0))
        ));

        // Mixed conductors are rejected.
        assert!(matches!(
            load_explicit_action(&[a, b]),
            Err(Error::ConductorMismatch(_))
        ));

        assert!(matches!(
            load_explicit_action(&[]),
            Err(Error::BadGroup(_))
        ));
    }

    fn arb_cyclic_base0_spec() -> impl Strategy<Value = (u32, Vec<u32>)> {
        (2u32..=6, proptest::collection::vec(1i64..=5, 2..=6)).prop_filter_map(
            "need zero sum, nonzero residues, generation",
            |(m, raw)| {
                let mut branch: Vec<u32> = raw
                    .iter()
                    .map(|&x| (x.rem_euclid(m as i64)) as u32)
                    .filter(|&x| x != 0)
                    .collect();
                if branch.is_empty() {
                    return None;
                }
                // Close up the sum with one extra residue.
                let s: u32 = branch.iter().sum::<u32>() % m;
                if s != 0 {
                    branch.push(m - s);
                }
                let group = cyclic(m);
                let elems: Vec<Vec<u32>> = branch.iter().map(|&x| vec![x]).collect();
                if !group.generates(&elems) {
                    return None;
                }
                Some((m, branch))
            },
        )
    }

    proptest! {
        /// On random cyclic covers of the line the closed-form dimensions
        /// match the direct evaluation of the character sums.
        #[test]
        fn random_cyclic_covers_match_oracle((m, branch) in arb_cyclic_base0_spec()) {
            let spec = CoverSpec::new(
                cyclic(m),
                0,
                branch.iter().map(|&x| vec![x as i64]).collect(),
            ).unwrap();
            let dims = eigenspace_dims(&spec).unwrap();
            for n in 1..m {
                prop_assert_eq!(
                    dims.dim(&[n]) as i64,
                    cyclic_base0_oracle(m, &branch, n)
                );
            }
        }

        /// Σ dims equals the Riemann–Hurwitz genus on random two-factor
        /// covers over random base genus, and is invariant under permuting
        /// the branch points.
        #[test]
        fn random_covers_satisfy_riemann_hurwitz(
            m1 in 2u32..=4,
            m2 in 2u32..=3,
            base in 1u32..=2,
            raw in proptest::collection::vec((0i64..=3, 0i64..=2), 1..=5),
            swap in 0usize..=4,
        ) {
            let group = AbelianGroup::new(vec![m1, m2]).unwrap();
            let mut branch: Vec<Vec<i64>> = raw
                .iter()
                .map(|&(x, y)| vec![x.rem_euclid(m1 as i64), y.rem_euclid(m2 as i64)])
                .filter(|a| !(a[0] == 0 && a[1] == 0))
                .collect();
            // Close the sum.
            let sx: i64 = branch.iter().map(|a| a[0]).sum();
            let sy: i64 = branch.iter().map(|a| a[1]).sum();
            let closer = vec![(-sx).rem_euclid(m1 as i64), (-sy).rem_euclid(m2 as i64)];
            if !(closer[0] == 0 && closer[1] == 0) {
                branch.push(closer);
            }
            let spec = CoverSpec::new(group, base, branch.clone()).unwrap();
            let dims = eigenspace_dims(&spec).unwrap();
            prop_assert_eq!(dims.genus, spec.genus());
            prop_assert_eq!(dims.base_genus, base);
            if branch.len() > 1 {
                let k = swap % branch.len();
                branch.rotate_left(k);
                let permuted = CoverSpec::new(spec.group.clone(), base, branch).unwrap();
                prop_assert_eq!(eigenspace_dims(&permuted).unwrap().dims, dims.dims);
            }
        }
    }
}
