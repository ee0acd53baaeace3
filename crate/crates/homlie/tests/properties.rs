//! Property tests for the field layer and the structural invariants that
//! hold across randomly generated instances.

use homlie::algebra::CentralizerMode;
use homlie::gfp::{self, MatFp, PolyMat, PolyVec, Scalar, VecFp};
use homlie::oracle::{self, Construction, GenSpec};
use homlie::restricted::{
    self, is_restrictable, p_structure_delta, s_terms, verify_p_structure, PStructure, VerifyMode,
};
use homlie::subspace::Subspace;
use proptest::prelude::*;

const SMALL_PRIMES: [u32; 3] = [2, 3, 5];

fn arb_prime() -> impl Strategy<Value = u32> {
    prop::sample::select(SMALL_PRIMES.to_vec())
}

proptest! {
    #[test]
    fn solve_affine_returns_full_solution_set(
        p in arb_prime(),
        seed in prop::collection::vec(0u32..5, 12),
    ) {
        let a = {
            let mut m = MatFp::zeros(p, 3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    m.set(i, j, Scalar::new(seed[i * 3 + j] as i64, p));
                }
            }
            m
        };
        let b = VecFp::from_entries(p, &[seed[9] as i64, seed[10] as i64, seed[11] as i64]);
        let sol = gfp::solve_affine(&a, &b).unwrap();
        if sol.solvable {
            let all = sol.enumerate();
            prop_assert_eq!(all.len() as u64, gfp::element_count(p, sol.kernel_basis.len()));
            for x in &all {
                prop_assert_eq!(a.mul_vec(x), b.clone());
            }
        } else {
            // Exhaustive confirmation that no solution exists.
            for x in gfp::all_vectors(p, 3) {
                prop_assert_ne!(a.mul_vec(&x), b.clone());
            }
        }
    }

    #[test]
    fn poly_apply_matches_pointwise_products(p in arb_prime(), flat in prop::collection::vec(0u32..5, 12)) {
        let constant = {
            let mut m = MatFp::zeros(p, 2, 2);
            for i in 0..2 { for j in 0..2 { m.set(i, j, Scalar::new(flat[i*2+j] as i64, p)); } }
            m
        };
        let linear = {
            let mut m = MatFp::zeros(p, 2, 2);
            for i in 0..2 { for j in 0..2 { m.set(i, j, Scalar::new(flat[4+i*2+j] as i64, p)); } }
            m
        };
        let v = VecFp::from_entries(p, &[flat[8] as i64, flat[9] as i64]);
        let w = VecFp::from_entries(p, &[flat[10] as i64, flat[11] as i64]);
        let m = PolyMat::affine(&constant, &linear);
        let pv = PolyVec::from_const(&v);
        let pw = PolyVec::from_const(&w);
        // Distributes over addition.
        let lhs = m.apply(&pv.add(&pw)).unwrap();
        let rhs = m.apply(&pv).unwrap().add(&m.apply(&pw).unwrap());
        prop_assert_eq!(&lhs, &rhs);
        // Interpolation consistency: evaluation commutes with application.
        for k in 0..p {
            let ks = Scalar::new(k as i64, p);
            prop_assert_eq!(lhs.eval(ks), m.eval(ks).mul_vec(&v.add(&w)));
        }
    }

    #[test]
    fn fermat_scalars(p in arb_prime(), k in 0u32..13) {
        let s = Scalar::new((k % p) as i64, p);
        prop_assert_eq!(s.pow(p), s);
    }

    #[test]
    fn subspace_sum_contains_both(p in arb_prime(), flat in prop::collection::vec(0u32..5, 12)) {
        let vectors: Vec<VecFp> = flat
            .chunks(3)
            .map(|c| VecFp::from_entries(p, &[c[0] as i64, c[1] as i64, c[2] as i64]))
            .collect();
        let u = Subspace::span(p, 3, &vectors[..2]);
        let w = Subspace::span(p, 3, &vectors[2..]);
        let sum = u.sum(&w);
        prop_assert!(sum.contains_subspace(&u));
        prop_assert!(sum.contains_subspace(&w));
        let i = u.intersect(&w);
        prop_assert!(u.contains_subspace(&i));
        prop_assert!(w.contains_subspace(&i));
        // Dimension formula.
        prop_assert_eq!(sum.dim() + i.dim(), u.dim() + w.dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Twisting a generated ordinary Lie algebra by one of its bracket
    /// morphisms always lands in the multiplicative class.
    #[test]
    fn yau_twists_are_multiplicative(seed in 0u64..500) {
        let spec = GenSpec { p: 2, dim: 3, seed, construction: Construction::YauTwist, count: 1 };
        let inst = oracle::random_instance(&spec).unwrap();
        prop_assert!(inst.algebra.axiom_report().is_multiplicative_hom_lie());
    }

    /// Synthesis agrees with the element-by-element ground truth.
    #[test]
    fn synthesis_matches_bruteforce(seed in 0u64..300) {
        let spec = GenSpec { p: 2, dim: 3, seed, construction: Construction::YauTwist, count: 1 };
        let inst = oracle::random_instance(&spec).unwrap();
        let brute = oracle::brute_restrictable(&inst.algebra, oracle::DESK_BUDGET).unwrap();
        prop_assert_eq!(is_restrictable(&inst.algebra).decision, brute.decision);
    }

    /// Every synthesized structure passes the independent exhaustive audit.
    #[test]
    fn synthesized_structures_audit_clean(seed in 0u64..200) {
        let spec = GenSpec { p: 2, dim: 3, seed, construction: Construction::YauTwist, count: 1 };
        let inst = oracle::random_instance(&spec).unwrap();
        if let Some(pmap) = &inst.pmap {
            let audit = oracle::exhaustive_restricted_audit(pmap, oracle::DESK_BUDGET).unwrap();
            prop_assert!(audit.ok, "audit violation: {:?}", audit.violation);
        }
    }

    /// Short vanishing series in low dimension forces restrictability.
    #[test]
    fn nilpotent_with_short_series_restrictable(seed in 0u64..200, p in prop::sample::select(vec![2u32, 3])) {
        let spec = GenSpec { p, dim: 3, seed, construction: Construction::Nilpotent, count: 1 };
        let inst = oracle::random_instance(&spec).unwrap();
        let series = inst.algebra.lower_central_series();
        prop_assert!(series.nilpotent);
        if series.class.unwrap() <= (p + 1) as usize && inst.algebra.dim() < (p + 2) as usize {
            prop_assert!(is_restrictable(&inst.algebra).decision);
        }
    }

    /// Regular twists collapse the two centralizer readings.
    #[test]
    fn regular_centralizers_agree(seed in 0u64..200) {
        let spec = GenSpec { p: 2, dim: 3, seed, construction: Construction::YauTwist, count: 1 };
        let inst = oracle::random_instance(&spec).unwrap();
        let l = &inst.algebra;
        if l.alpha().is_invertible() {
            let full = Subspace::full(l.p(), l.dim());
            prop_assert_eq!(
                l.centralizer(&full, CentralizerMode::AlphaTwisted),
                l.centralizer(&full, CentralizerMode::Ordinary)
            );
        }
    }

    /// The count law: the number of structures is |C(L)|^n when nonzero.
    #[test]
    fn enumeration_count_law(seed in 0u64..100) {
        let spec = GenSpec { p: 2, dim: 2, seed, construction: Construction::YauTwist, count: 1 };
        let inst = oracle::random_instance(&spec).unwrap();
        let l = &inst.algebra;
        let all = restricted::enumerate_p_structures(l, 1 << 12).unwrap();
        if !all.is_empty() {
            let expected = gfp::element_count(l.p(), l.center().dim()).pow(l.dim() as u32);
            prop_assert_eq!(all.len() as u64, expected);
        }
    }

    /// Deltas of coexisting structures are linear maps into the center.
    #[test]
    fn delta_law_on_generated_instances(seed in 0u64..60) {
        let spec = GenSpec { p: 2, dim: 2, seed, construction: Construction::YauTwist, count: 1 };
        let inst = oracle::random_instance(&spec).unwrap();
        let all = restricted::enumerate_p_structures(&inst.algebra, 1 << 12).unwrap();
        for p1 in &all {
            for p2 in &all {
                let delta = p_structure_delta(p1, p2).unwrap();
                prop_assert!(delta.valid);
            }
        }
    }

    /// Direct sums of restricted structures verify exhaustively.
    #[test]
    fn direct_sums_stay_restricted(seed in 0u64..60) {
        let spec = GenSpec { p: 2, dim: 2, seed, construction: Construction::YauTwist, count: 2 };
        let insts = oracle::random_instances(&spec).unwrap();
        if let (Some(p1), Some(p2)) = (&insts[0].pmap, &insts[1].pmap) {
            let sum = restricted::direct_sum_p(p1, p2).unwrap();
            prop_assert!(verify_p_structure(&sum, VerifyMode::Exhaustive).unwrap().ok);
        }
    }

    /// The leading interpolation coefficient of the correction chain
    /// vanishes on every pair of every generated instance.
    #[test]
    fn correction_terms_always_defined(seed in 0u64..60, p in prop::sample::select(vec![2u32, 3])) {
        let spec = GenSpec { p, dim: 2, seed, construction: Construction::YauTwist, count: 1 };
        let inst = oracle::random_instance(&spec).unwrap();
        let l = &inst.algebra;
        for x in l.elements() {
            for y in l.elements() {
                prop_assert!(s_terms(l, &x, &y).is_ok());
            }
        }
    }

    /// Quotients of restrictable instances by ideal lines stay restrictable.
    #[test]
    fn quotients_stay_restrictable(seed in 0u64..100) {
        let spec = GenSpec { p: 2, dim: 3, seed, construction: Construction::YauTwist, count: 1 };
        let inst = oracle::random_instance(&spec).unwrap();
        let l = &inst.algebra;
        if inst.pmap.is_none() {
            return Ok(());
        }
        for j in 0..l.dim() {
            let line = Subspace::span(l.p(), l.dim(), &[l.basis_vector(j)]);
            if l.is_sub_or_ideal(&line).ideal {
                let (q, proj) = l.quotient(&line).unwrap();
                prop_assert!(proj.check(None).is_morphism());
                prop_assert!(is_restrictable(&q).decision);
            }
        }
    }
}

/// Direct-sum commutativity up to the evident swap isomorphism.
#[test]
fn direct_sum_commutes_up_to_swap() {
    use homlie::fixtures;
    use homlie::morphisms::HomMorphism;
    let a = fixtures::nonab2(2);
    let b = fixtures::heis3(2);
    let ab = a.direct_sum(&b).unwrap();
    let ba = b.direct_sum(&a).unwrap();
    let n = ab.dim();
    let mut swap = MatFp::zeros(2, n, n);
    for j in 0..a.dim() {
        swap.set(b.dim() + j, j, Scalar::one(2));
    }
    for j in 0..b.dim() {
        swap.set(j, a.dim() + j, Scalar::one(2));
    }
    let iso = HomMorphism::new(ab, ba, swap).unwrap();
    assert!(iso.check(None).is_morphism());
    assert!(iso.is_injective() && iso.is_surjective());
}

/// Tampered images always fail verification in basis mode, and basis mode
/// never disagrees with the exhaustive mode on small instances.
#[test]
fn verify_modes_agree_on_small_instances() {
    use homlie::fixtures;
    let l = fixtures::heis3(2);
    for images in [
        vec![l.zero_vector(), l.zero_vector(), l.zero_vector()],
        vec![l.basis_vector(2), l.zero_vector(), l.zero_vector()],
        vec![l.basis_vector(0), l.zero_vector(), l.zero_vector()],
        vec![l.basis_vector(1), l.basis_vector(2), l.basis_vector(0)],
    ] {
        let pmap = PStructure::new(&l, images).unwrap();
        let basis = verify_p_structure(&pmap, VerifyMode::Basis).unwrap().ok;
        let exhaustive = verify_p_structure(&pmap, VerifyMode::Exhaustive).unwrap().ok;
        assert_eq!(basis, exhaustive);
    }
}
