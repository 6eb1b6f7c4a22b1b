//! Structural invariants of the full pipeline, exercised across a corpus of
//! group actions: cyclic actions given by explicit diagonal unitaries, the
//! Klein four-group action, and covers of an elliptic curve built from
//! branch data.
//!
//! These are the load-bearing algebraic identities: the centralizer splits
//! as `Z_g = Z_k ⊕ Z_p`, bracket closure of the fixed tangent space, the
//! stability of trace-form complements, `ι`-stability and evenness of the
//! factors, agreement of the commutant certificate with vector closure, the
//! absence of euclidean factors, and invariance of every classification
//! output under unitary conjugation of the input action.

use num::BigRational;
use siegel_core::cartan::{centralizer, complex_structure, full_centralizer, Part, Subspace};
use siegel_core::classify::{classify_factor, compose_label};
use siegel_core::covers::{
    build_action, eigenspace_dims, load_explicit_action, AbelianGroup, CoverSpec, GroupAction,
};
use siegel_core::cyclotomic::{CycMatrix, CycNum};
use siegel_core::decomp::{ad_action, derived_k, invariant_factors, Factor};
use siegel_core::Backend;

fn zeta(n: u32, k: i64) -> CycNum {
    CycNum::root_of_unity(n, k)
}

fn diag_action(conductor: u32, exps: &[i64]) -> GroupAction {
    let entries: Vec<CycNum> = exps.iter().map(|&k| zeta(conductor, k)).collect();
    load_explicit_action(&[CycMatrix::diagonal(&entries, conductor)]).unwrap()
}

/// The named cyclic and Klein actions used throughout, with the expected
/// product label of the fixed symmetric space.
fn corpus() -> Vec<(&'static str, GroupAction, &'static str)> {
    let minus = CycNum::from_integer(4, -1);
    let klein = load_explicit_action(&[
        CycMatrix::diagonal(&[CycNum::one(4), minus.clone(), minus.clone()], 4),
        CycMatrix::diagonal(&[minus.clone(), CycNum::one(4), minus], 4),
    ])
    .unwrap();
    vec![
        ("hyperelliptic genus 2", diag_action(2, &[1, 1]), "𝔖₂"),
        ("order-3 genus 3", diag_action(3, &[2, 2, 1]), "B₂(ℂ)"),
        ("order-4 genus 3", diag_action(4, &[3, 3, 1]), "B₂(ℂ)"),
        ("order-3 genus 4", diag_action(3, &[2, 2, 2, 1]), "B₃(ℂ)"),
        ("order-6 genus 4", diag_action(6, &[5, 5, 2, 1]), "B₂(ℂ)"),
        (
            "order-5 genus 6",
            diag_action(5, &[4, 4, 4, 3, 3, 2]),
            "B₂(ℂ)",
        ),
        ("klein genus 3", klein, "B₁(ℂ)×B₁(ℂ)×B₁(ℂ)"),
        ("trivial genus 3", diag_action(4, &[0, 0, 0]), "𝔖₃"),
    ]
}

/// Covers of an elliptic curve, built from branch data.
fn elliptic_corpus() -> Vec<(&'static str, GroupAction, &'static str)> {
    let mut out = Vec::new();
    for (name, moduli, branch, label) in [
        ("double cover, two points", vec![2u32], vec![vec![1i64], vec![1]], "B₁(ℂ)×B₁(ℂ)"),
        (
            "double cover, four points",
            vec![2],
            vec![vec![1]; 4],
            "B₁(ℂ)×𝔖₂",
        ),
        (
            "triple cover, three points",
            vec![3],
            vec![vec![1]; 3],
            "B₁(ℂ)×B₂(ℂ)",
        ),
    ] {
        let group = AbelianGroup::new(moduli).unwrap();
        let spec = CoverSpec::new(group.clone(), 1, branch).unwrap();
        let dims = eigenspace_dims(&spec).unwrap();
        let action = build_action(&group, &dims).unwrap();
        out.push((name, action, label));
    }
    out
}

struct Pipeline {
    zp: Subspace,
    zk: Subspace,
    kprime: Subspace,
    factors: Vec<Factor>,
}

fn run(action: &GroupAction, backend: Backend) -> Pipeline {
    let zp = centralizer(action, Part::P, backend).unwrap();
    let zk = centralizer(action, Part::K, backend).unwrap();
    let kprime = derived_k(&zp).unwrap();
    let factors = invariant_factors(&zp, &kprime, backend).unwrap();
    Pipeline {
        zp,
        zk,
        kprime,
        factors,
    }
}

fn label_of(factors: &[Factor]) -> String {
    let labels: Vec<_> = factors
        .iter()
        .map(|f| {
            classify_factor(f.complex_dim as u32, f.k_real_dim as u32, f.rank as u32).unwrap()
        })
        .collect();
    compose_label(&labels)
}

#[test]
fn centralizer_splits_into_cartan_summands_everywhere() {
    for (name, action, _) in corpus().into_iter().chain(elliptic_corpus()) {
        let zk = centralizer(&action, Part::K, Backend::Exact).unwrap();
        let zp = centralizer(&action, Part::P, Backend::Exact).unwrap();
        let zg = full_centralizer(&action, Backend::Exact).unwrap();
        assert_eq!(
            zg.real_dim(),
            zk.real_dim() + zp.real_dim(),
            "direct sum fails for {name}"
        );
        for x in &zg.basis {
            assert!(zk.contains(&x.k_part()), "{name}: k-projection escapes Z_k");
            assert!(zp.contains(&x.p_part()), "{name}: p-projection escapes Z_p");
        }
    }
}

#[test]
fn bracket_closure_of_the_fixed_tangent_space() {
    for (name, action, _) in corpus().into_iter().chain(elliptic_corpus()) {
        let p = run(&action, Backend::Exact);
        // [[p', p'], p'] ⊆ p' (derived_k verifies this internally; assert
        // again explicitly) and [k', k'] ⊆ k'.
        for c in &p.kprime.basis {
            for w in &p.zp.basis {
                assert!(
                    p.zp.contains(&ad_action(c, w).unwrap()),
                    "{name}: ad(k') leaves p'"
                );
            }
        }
        for (i, a) in p.kprime.basis.iter().enumerate() {
            for b in &p.kprime.basis[i + 1..] {
                assert!(
                    p.kprime.contains(&a.bracket(b)),
                    "{name}: k' is not a subalgebra"
                );
            }
        }
        // k' sits inside the k-centralizer.
        assert!(p.zk.contains_all(&p.kprime), "{name}: k' outside Z_k");
    }
}

#[test]
fn orthogonal_complements_of_stable_subspaces_are_stable() {
    for (name, action, _) in corpus().into_iter().chain(elliptic_corpus()) {
        let p = run(&action, Backend::Exact);
        for f in &p.factors {
            let comp = f
                .space
                .orthogonal_complement_in(&p.zp, Backend::Exact)
                .unwrap();
            assert_eq!(
                comp.real_dim() + f.space.real_dim(),
                p.zp.real_dim(),
                "{name}: complement dimension"
            );
            for c in &p.kprime.basis {
                for x in &comp.basis {
                    assert!(
                        comp.contains(&ad_action(c, x).unwrap()),
                        "{name}: complement is not ad-stable"
                    );
                }
            }
            for x in &comp.basis {
                assert!(
                    comp.contains(&complex_structure(x).unwrap()),
                    "{name}: complement is not ι-stable"
                );
            }
        }
    }
}

#[test]
fn factors_are_iota_stable_even_dimensional_and_non_euclidean() {
    for (name, action, _) in corpus().into_iter().chain(elliptic_corpus()) {
        let p = run(&action, Backend::Crosscheck);
        let total: usize = p.factors.iter().map(|f| f.space.real_dim()).sum();
        assert_eq!(total, p.zp.real_dim(), "{name}: factors must fill p'");
        for f in &p.factors {
            assert!(f.space.is_iota_stable().unwrap(), "{name}: ι-stability");
            assert_eq!(f.space.real_dim() % 2, 0, "{name}: even real dimension");
            assert_eq!(f.space.real_dim(), 2 * f.complex_dim);
            assert!(f.k_real_dim >= 1, "{name}: euclidean factor");
            assert!(f.irreducible && f.commutant_real_dim == 2, "{name}");
            assert!(f.rank >= 1 && f.rank <= f.complex_dim, "{name}: rank range");
        }
    }
}

#[test]
fn commutant_certificate_agrees_with_vector_closure() {
    // On an irreducible factor, the closure of any single basis vector
    // under ad(k') and ι spans the whole factor.
    for (name, action, _) in corpus().into_iter().chain(elliptic_corpus()) {
        let p = run(&action, Backend::Exact);
        for f in &p.factors {
            for seed in &f.space.basis {
                let mut span = Subspace::from_elements(
                    Part::P,
                    f.space.genus,
                    f.space.conductor,
                    std::slice::from_ref(seed),
                );
                loop {
                    let mut extended = span.basis.clone();
                    for x in &span.basis {
                        extended.push(complex_structure(x).unwrap());
                        for c in &p.kprime.basis {
                            extended.push(ad_action(c, x).unwrap());
                        }
                    }
                    let next = Subspace::from_elements(
                        Part::P,
                        f.space.genus,
                        f.space.conductor,
                        &extended,
                    );
                    if next.real_dim() == span.real_dim() {
                        break;
                    }
                    span = next;
                }
                assert_eq!(
                    span.real_dim(),
                    f.space.real_dim(),
                    "{name}: closure of a basis vector is the whole factor"
                );
            }
        }
    }
}

#[test]
fn classification_of_the_corpus_is_as_expected() {
    for (name, action, expected) in corpus().into_iter().chain(elliptic_corpus()) {
        let p = run(&action, Backend::Crosscheck);
        assert_eq!(label_of(&p.factors), expected, "label of {name}");
    }
}

#[test]
fn classification_is_invariant_under_unitary_conjugation() {
    // Conjugate each one-generator action by an exact rational rotation
    // mixing the first two coordinates, plus a genuinely complex unitary
    // mixing of the last two; every invariant must be unchanged.
    let rot = |g: usize, m: u32| {
        let q = |n: i64, d: i64| {
            CycNum::from_rational(m, BigRational::new(n.into(), d.into()))
        };
        let mut u = CycMatrix::identity(g, m);
        u.set(0, 0, q(3, 5));
        u.set(0, 1, q(4, 5));
        u.set(1, 0, q(-4, 5));
        u.set(1, 1, q(3, 5));
        if g >= 4 {
            let i = CycNum::imaginary_unit(m).unwrap();
            u.set(g - 2, g - 2, &q(5, 13) * &i);
            u.set(g - 2, g - 1, q(12, 13));
            u.set(g - 1, g - 2, q(-12, 13));
            u.set(g - 1, g - 1, &q(5, 13) * &i.conj());
        }
        u
    };
    for (name, action, expected) in corpus() {
        if action.generators.len() != 1 {
            continue;
        }
        let g = action.genus;
        let m = action.conductor;
        let u = rot(g, m);
        assert!(u.is_unitary(), "{name}: conjugator must be unitary");
        let conj = &(&u * &action.generators[0]) * &u.adjoint();
        let conj_action = load_explicit_action(&[conj]).unwrap();
        let base = run(&action, Backend::Crosscheck);
        let moved = run(&conj_action, Backend::Crosscheck);
        assert_eq!(base.zp.real_dim(), moved.zp.real_dim(), "{name}");
        assert_eq!(base.kprime.real_dim(), moved.kprime.real_dim(), "{name}");
        let mut a: Vec<_> = base
            .factors
            .iter()
            .map(|f| (f.complex_dim, f.k_real_dim, f.rank))
            .collect();
        let mut b: Vec<_> = moved
            .factors
            .iter()
            .map(|f| (f.complex_dim, f.k_real_dim, f.rank))
            .collect();
        a.sort();
        b.sort();
        assert_eq!(a, b, "{name}: factor invariants moved under conjugation");
        assert_eq!(label_of(&base.factors), expected, "{name}");
        assert_eq!(label_of(&moved.factors), expected, "{name} (conjugated)");
    }
}

#[test]
fn exhaustive_sweep_of_order_four_diagonal_actions() {
    // Every multiset of ζ₄-powers on three coordinates: the pipeline must
    // complete with consistent dimensions and a classifiable label.
    for a in 0..4i64 {
        for b in a..4 {
            for c in b..4 {
                let action = diag_action(4, &[a, b, c]);
                let p = run(&action, Backend::Crosscheck);
                let zg = full_centralizer(&action, Backend::Exact).unwrap();
                assert_eq!(zg.real_dim(), p.zk.real_dim() + p.zp.real_dim());
                let total: usize = p.factors.iter().map(|f| f.space.real_dim()).sum();
                assert_eq!(total, p.zp.real_dim());
                if p.zp.real_dim() > 0 {
                    // Complex dimension of p' bounds the number of factors.
                    assert!(p.factors.len() <= p.zp.complex_dim().unwrap());
                    let _ = label_of(&p.factors);
                }
            }
        }
    }
}
