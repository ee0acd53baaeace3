//! The executable property suite: every structural result the library
//! implements is turned into a named, self-contained check that runs against
//! the bundled fixtures plus a caller-supplied corpus of generated instances.
//!
//! The manifest [`REQUIRED_CASES`] is the completeness contract: the suite
//! runs exactly these cases, and an acceptance test fails if any case is
//! missing, extra, or failing.

use crate::algebra::{AdMode, HomLieAlgebra};
use crate::envelopes::PEnvelope;
use crate::fixtures;
use crate::gfp::{self, MatFp, Scalar, VecFp};
use crate::morphisms::{form_report, graph_check, pull_p, push_p, BilinearForm, HomMorphism};
use crate::morphisms::MorphismError;
use crate::oracle::{
    all_morphism_matrices, brute_restrictable, exhaustive_restricted_audit, find_isomorphism,
    random_instances, Construction, GenSpec, DESK_BUDGET,
};
use crate::restricted::{
    ad_chain, enumerate_p_structures, fixed_point_p_mapping_check, is_restrictable,
    p_closure, p_flag_check, p_structure_delta, s_terms, synthesize_p_structure,
    verify_p_structure, PStructure, VerifyMode,
};
use crate::subspace::Subspace;
use serde::Serialize;

/// Complete list of suite cases; the suite executes exactly this set.
pub const REQUIRED_CASES: &[&str] = &[
    "axiom_flags",
    "subalgebra_ideal_flags",
    "lower_central_series",
    "fixed_point_pmapping_comparator",
    "restricted_axioms_audit",
    "char2_special_forms",
    "p_closure_generated",
    "semilinear_center",
    "center_is_p_ideal",
    "matrix_frobenius_restricted",
    "unique_pmap_2dim",
    "abelian_semilinear_restricted",
    "delta_p_semilinear_into_center",
    "basis_determines_pmap",
    "vanishing_on_center_choice",
    "synthesis_from_basis_targets",
    "direct_sum_restricted",
    "morphism_axioms",
    "graph_subalgebra_equivalence",
    "pushforward_image_restricted",
    "pullback_preimage_restricted",
    "restrictable_bruteforce_definition",
    "abelian_restrictable",
    "nilpotent_small_restrictable",
    "projected_twist_restrictable",
    "restrictable_iff_restricted",
    "surjective_image_restrictable",
    "direct_sum_restrictable_iff",
    "commuting_ideals_sum_restrictable",
    "central_quotient_restrictable_iff",
    "p_subalgebra_power_criterion",
    "associative_form_restrictable",
    "envelope_definition_check",
    "envelope_central_ideal_minimize",
    "envelope_decompose_minimal",
    "minimal_envelopes_isomorphic",
    "minimal_iff_center_inside_image",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusInstance {
    pub label: String,
    pub algebra: HomLieAlgebra,
    pub pmap: Option<PStructure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub outcomes: Vec<CaseOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn case(&self, id: &str) -> Option<&CaseOutcome> {
        self.outcomes.iter().find(|o| o.id == id)
    }

    pub fn executed_ids(&self) -> Vec<&str> {
        self.outcomes.iter().map(|o| o.id.as_str()).collect()
    }
}

/// Fixtures plus a light sweep of seeded generated instances.
pub fn default_corpus() -> Vec<CorpusInstance> {
    let mut corpus = Vec::new();
    let mut push = |label: &str, algebra: HomLieAlgebra| {
        let pmap = is_restrictable(&algebra).witness;
        corpus.push(CorpusInstance {
            label: label.to_string(),
            algebra,
            pmap,
        });
    };
    push("ab1", fixtures::ab1(2));
    push("ab2", fixtures::ab(2, 2));
    push("nonab2", fixtures::nonab2(2));
    push("nonab2-p3", fixtures::nonab2(3));
    push("proj_twist2", fixtures::proj_twist2(2));
    push("heis3", fixtures::heis3(2));
    push("nr3", fixtures::nr3());
    let (shift_l, shift_p) = fixtures::shift2();
    corpus.push(CorpusInstance {
        label: "shift2".into(),
        algebra: shift_l,
        pmap: Some(shift_p),
    });
    let specs = [
        GenSpec {
            p: 2,
            dim: 3,
            seed: 101,
            construction: Construction::YauTwist,
            count: 4,
        },
        GenSpec {
            p: 3,
            dim: 2,
            seed: 102,
            construction: Construction::YauTwist,
            count: 2,
        },
        GenSpec {
            p: 2,
            dim: 2,
            seed: 103,
            construction: Construction::RandomMultiplicative,
            count: 3,
        },
        GenSpec {
            p: 2,
            dim: 3,
            seed: 104,
            construction: Construction::Nilpotent,
            count: 2,
        },
        GenSpec {
            p: 3,
            dim: 3,
            seed: 105,
            construction: Construction::Nilpotent,
            count: 2,
        },
        GenSpec {
            p: 2,
            dim: 4,
            seed: 106,
            construction: Construction::DirectSum,
            count: 2,
        },
    ];
    for spec in &specs {
        for inst in random_instances(spec).expect("seeded generation succeeds") {
            corpus.push(CorpusInstance {
                label: inst.label,
                algebra: inst.algebra,
                pmap: inst.pmap,
            });
        }
    }
    corpus
}

type CaseFn = fn(&[CorpusInstance]) -> Result<String, String>;

/// Runs every manifest case against the corpus; failures are findings, not
/// panics.
pub fn theorem_suite(corpus: &[CorpusInstance]) -> SuiteReport {
    let cases: Vec<(&str, CaseFn)> = vec![
        ("axiom_flags", case_axiom_flags),
        ("subalgebra_ideal_flags", case_subalgebra_ideal_flags),
        ("lower_central_series", case_lower_central_series),
        (
            "fixed_point_pmapping_comparator",
            case_fixed_point_comparator,
        ),
        ("restricted_axioms_audit", case_restricted_axioms_audit),
        ("char2_special_forms", case_char2_special_forms),
        ("p_closure_generated", case_p_closure_generated),
        ("semilinear_center", case_semilinear_center),
        ("center_is_p_ideal", case_center_is_p_ideal),
        ("matrix_frobenius_restricted", case_matrix_frobenius),
        ("unique_pmap_2dim", case_unique_pmap_2dim),
        ("abelian_semilinear_restricted", case_abelian_semilinear),
        ("delta_p_semilinear_into_center", case_delta_law),
        ("basis_determines_pmap", case_basis_determines),
        ("vanishing_on_center_choice", case_vanishing_on_center),
        ("synthesis_from_basis_targets", case_synthesis_targets),
        ("direct_sum_restricted", case_direct_sum_restricted),
        ("morphism_axioms", case_morphism_axioms),
        ("graph_subalgebra_equivalence", case_graph_equivalence),
        ("pushforward_image_restricted", case_pushforward),
        ("pullback_preimage_restricted", case_pullback),
        (
            "restrictable_bruteforce_definition",
            case_restrictable_bruteforce,
        ),
        ("abelian_restrictable", case_abelian_restrictable),
        ("nilpotent_small_restrictable", case_nilpotent_restrictable),
        ("projected_twist_restrictable", case_projected_twist),
        ("restrictable_iff_restricted", case_restrictable_iff),
        ("surjective_image_restrictable", case_surjective_image),
        ("direct_sum_restrictable_iff", case_direct_sum_iff),
        (
            "commuting_ideals_sum_restrictable",
            case_commuting_ideals_sum,
        ),
        (
            "central_quotient_restrictable_iff",
            case_central_quotient_iff,
        ),
        ("p_subalgebra_power_criterion", case_power_criterion),
        ("associative_form_restrictable", case_form_restrictable),
        ("envelope_definition_check", case_envelope_definition),
        ("envelope_central_ideal_minimize", case_envelope_minimize),
        ("envelope_decompose_minimal", case_envelope_decompose),
        ("minimal_envelopes_isomorphic", case_minimal_isomorphic),
        (
            "minimal_iff_center_inside_image",
            case_minimal_center_criterion,
        ),
    ];
    let outcomes = cases
        .into_iter()
        .map(|(id, case)| match case(corpus) {
            Ok(detail) => CaseOutcome {
                id: id.to_string(),
                passed: true,
                detail,
            },
            Err(detail) => CaseOutcome {
                id: id.to_string(),
                passed: false,
                detail,
            },
        })
        .collect();
    SuiteReport { outcomes }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn restricted_pool() -> Vec<(String, PStructure)> {
    let mut pool = Vec::new();
    let mut add = |label: &str, p: PStructure| pool.push((label.to_string(), p));
    add(
        "nonab2",
        synthesize_p_structure(&fixtures::nonab2(2), &[]).unwrap(),
    );
    let heis = fixtures::heis3(2);
    add(
        "heis3-zero",
        PStructure::new(&heis, vec![heis.zero_vector(); 3]).unwrap(),
    );
    add(
        "heis3-ez",
        PStructure::new(
            &heis,
            vec![heis.basis_vector(2), heis.zero_vector(), heis.zero_vector()],
        )
        .unwrap(),
    );
    let proj = fixtures::proj_twist2(2);
    add(
        "proj_twist2-zero",
        PStructure::new(&proj, vec![proj.zero_vector(); 2]).unwrap(),
    );
    let (_, shift) = fixtures::shift2();
    add("shift2", shift);
    pool
}

fn case_axiom_flags(corpus: &[CorpusInstance]) -> Result<String, String> {
    let r = fixtures::nonab2(2).axiom_report();
    ensure(
        r.alternating && r.hom_jacobi && r.multiplicative && r.regular && r.involutive
            && !r.abelian,
        "nonabelian 2-dim flags wrong",
    )?;
    let r = fixtures::proj_twist2(2).axiom_report();
    ensure(
        r.hom_jacobi && r.multiplicative && !r.regular && !r.involutive && r.abelian,
        "projected twist flags wrong",
    )?;
    for inst in corpus {
        ensure(
            inst.algebra.axiom_report().is_multiplicative_hom_lie(),
            format!("{} fails the core axioms", inst.label),
        )?;
    }
    Ok(format!("{} corpus instances pass the axioms", corpus.len()))
}

fn case_subalgebra_ideal_flags(_: &[CorpusInstance]) -> Result<String, String> {
    let l = fixtures::nonab2(2);
    let span_x = Subspace::span(2, 2, &[l.basis_vector(1)]);
    let span_h = Subspace::span(2, 2, &[l.basis_vector(0)]);
    let rx = l.is_sub_or_ideal(&span_x);
    let rh = l.is_sub_or_ideal(&span_h);
    ensure(rx.subalgebra && rx.ideal, "span{x} must be an ideal")?;
    ensure(rh.subalgebra && !rh.ideal, "span{h} must be a non-ideal subalgebra")?;
    let heis = fixtures::heis3(2);
    let span_z = Subspace::span(2, 3, &[heis.basis_vector(2)]);
    ensure(heis.is_sub_or_ideal(&span_z).ideal, "center line must be an ideal")?;
    Ok("subalgebra and ideal flags verified".into())
}

fn case_lower_central_series(corpus: &[CorpusInstance]) -> Result<String, String> {
    let dims = |l: &HomLieAlgebra| -> Vec<usize> {
        l.lower_central_series().terms.iter().map(|t| t.dim()).collect()
    };
    ensure(dims(&fixtures::heis3(2)) == vec![3, 1, 0], "heis3 series")?;
    ensure(dims(&fixtures::nonab2(2)) == vec![2, 1], "nonab2 series")?;
    ensure(dims(&fixtures::ab1(2)) == vec![1, 0], "ab1 series")?;
    ensure(
        fixtures::heis3(2).lower_central_series().class == Some(3),
        "heis3 class",
    )?;
    let mut nilpotent_count = 0;
    for inst in corpus {
        let series = inst.algebra.lower_central_series();
        if series.nilpotent {
            nilpotent_count += 1;
            ensure(
                series.terms.last().unwrap().is_zero(),
                format!("{}: nilpotent series must end at zero", inst.label),
            )?;
        }
    }
    Ok(format!("{nilpotent_count} nilpotent corpus instances"))
}

fn case_fixed_point_comparator(_: &[CorpusInstance]) -> Result<String, String> {
    let pmap = synthesize_p_structure(&fixtures::nonab2(2), &[]).unwrap();
    let r = fixed_point_p_mapping_check(&pmap).map_err(|e| e.to_string())?;
    ensure(r.strict_ok && r.p_structure_ok, "identity twist: both notions hold")?;

    let l = fixtures::proj_twist2(2);
    let escaping = PStructure::new(&l, vec![l.basis_vector(1), l.zero_vector()]).unwrap();
    let r = fixed_point_p_mapping_check(&escaping).map_err(|e| e.to_string())?;
    ensure(
        r.p_structure_ok && !r.strict_ok && !r.maps_fixed_into_fixed,
        "singular twist: general notion holds, strict one fails",
    )?;

    let ab = fixtures::ab(2, 2);
    let zero = PStructure::new(&ab, vec![ab.zero_vector(); 2]).unwrap();
    let r = fixed_point_p_mapping_check(&zero).map_err(|e| e.to_string())?;
    ensure(r.strict_ok && r.p_structure_ok, "abelian zero map: both hold")?;
    Ok("strict fixed-point notion is strictly stronger".into())
}

fn case_restricted_axioms_audit(corpus: &[CorpusInstance]) -> Result<String, String> {
    let mut audited = 0;
    for inst in corpus {
        if let Some(pmap) = &inst.pmap {
            if inst.algebra.element_count().pow(2) > DESK_BUDGET {
                continue;
            }
            let report = exhaustive_restricted_audit(pmap, DESK_BUDGET)
                .map_err(|e| format!("{}: {e}", inst.label))?;
            ensure(
                report.ok,
                format!("{}: audit violation {:?}", inst.label, report.violation),
            )?;
            audited += 1;
        }
    }
    // A deliberately corrupted structure must be caught.
    let l = fixtures::nonab2(2);
    let tampered = PStructure::new(&l, vec![l.basis_vector(0), l.basis_vector(1)]).unwrap();
    let report = exhaustive_restricted_audit(&tampered, DESK_BUDGET).map_err(|e| e.to_string())?;
    ensure(!report.ok, "tampered structure must fail the audit")?;
    Ok(format!("{audited} structures audited exhaustively"))
}

fn case_char2_special_forms(_: &[CorpusInstance]) -> Result<String, String> {
    let mut checked = 0;
    for (label, pmap) in restricted_pool() {
        let l = pmap.algebra();
        if l.p() != 2 {
            continue;
        }
        let alpha = l.alpha();
        let els: Vec<VecFp> = l.elements().collect();
        for x in &els {
            for y in &els {
                // Correction reduces to the bracket.
                let st = s_terms(l, x, y).map_err(|e| e.to_string())?;
                ensure(
                    st.terms() == [l.bracket(x, y)],
                    format!("{label}: s-term must equal the bracket at p=2"),
                )?;
                // Square of a sum expands with a single bracket correction.
                let lhs = pmap.eval(&x.add(y));
                let rhs = pmap.eval(x).add(&pmap.eval(y)).add(&l.bracket(x, y));
                ensure(lhs == rhs, format!("{label}: additivity at p=2"))?;
                // Operator identity in bracket form.
                let left = l.bracket(&pmap.eval(x), &alpha.mul_vec(y));
                let right = l.bracket(&alpha.mul_vec(x), &l.bracket(x, y));
                ensure(left == right, format!("{label}: operator identity at p=2"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs checked in characteristic 2"))
}

fn case_p_closure_generated(_: &[CorpusInstance]) -> Result<String, String> {
    let (l, pmap) = fixtures::shift2();
    let a = l.basis_vector(0);
    let b = l.basis_vector(1);
    ensure(p_closure(&pmap, &[a]).is_full(), "closure of the shifted generator")?;
    ensure(
        p_closure(&pmap, &[b.clone()]) == Subspace::span(2, 2, &[b]),
        "closure of the terminal generator",
    )?;
    ensure(p_closure(&pmap, &[]).is_zero(), "empty closure")?;
    let heis = fixtures::heis3(2);
    let hp = PStructure::new(
        &heis,
        vec![heis.basis_vector(2), heis.zero_vector(), heis.zero_vector()],
    )
    .unwrap();
    ensure(
        p_closure(&hp, &[heis.basis_vector(0), heis.basis_vector(1)]).is_full(),
        "two generators close to everything",
    )?;
    Ok("generated p-subalgebras behave".into())
}

fn case_semilinear_center(corpus: &[CorpusInstance]) -> Result<String, String> {
    // Scalar p-th powers fix the field, so p-semilinear = linear here.
    for p in [2u32, 3, 5] {
        for k in 0..p {
            let s = Scalar::new(k as i64, p);
            ensure(s.pow(p) == s, format!("k^p != k at p={p}"))?;
        }
    }
    let mut regular_count = 0;
    for inst in corpus {
        let l = &inst.algebra;
        if l.alpha().is_invertible() {
            let full = Subspace::full(l.p(), l.dim());
            ensure(
                l.centralizer(&full, crate::algebra::CentralizerMode::AlphaTwisted)
                    == l.centralizer(&full, crate::algebra::CentralizerMode::Ordinary),
                format!("{}: twisted and plain centralizers differ for regular twist", inst.label),
            )?;
            regular_count += 1;
        }
    }
    ensure(
        fixtures::proj_twist2(2).center().is_full(),
        "zero bracket puts everything in the center",
    )?;
    Ok(format!("{regular_count} regular instances with matching centralizers"))
}

fn case_center_is_p_ideal(corpus: &[CorpusInstance]) -> Result<String, String> {
    let mut checked = 0;
    for inst in corpus {
        let Some(pmap) = &inst.pmap else { continue };
        if !inst.algebra.alpha().is_invertible() {
            continue;
        }
        let center = inst.algebra.center();
        let flags = p_flag_check(pmap, &center);
        ensure(
            flags.p_ideal,
            format!("{}: twisted center must be a p-ideal", inst.label),
        )?;
        checked += 1;
    }
    ensure(checked > 0, "no regular restricted instances in corpus")?;
    Ok(format!("{checked} centers verified as p-ideals"))
}

fn case_matrix_frobenius(_: &[CorpusInstance]) -> Result<String, String> {
    let mut audited = 0;
    let swap = MatFp::from_rows(2, &[vec![0, 1], vec![1, 0]]);
    let upper = MatFp::from_rows(2, &[vec![1, 1], vec![0, 1]]);
    for (m, p, s) in [
        (1usize, 2u32, MatFp::identity(2, 1)),
        (1, 3, MatFp::identity(3, 1)),
        (2, 2, MatFp::identity(2, 2)),
        (2, 2, swap),
        (2, 2, upper),
        (2, 3, MatFp::identity(3, 2)),
    ] {
        let (l, pmap) = fixtures::gl_example(m, p, &s).map_err(|e| e.to_string())?;
        ensure(
            l.axiom_report().is_multiplicative_hom_lie(),
            format!("matrix algebra m={m} p={p} fails axioms"),
        )?;
        let report =
            exhaustive_restricted_audit(&pmap, DESK_BUDGET).map_err(|e| e.to_string())?;
        ensure(report.ok, format!("matrix algebra m={m} p={p} fails the audit"))?;
        audited += 1;
    }
    Ok(format!("{audited} twisted matrix algebras audited"))
}

fn case_unique_pmap_2dim(_: &[CorpusInstance]) -> Result<String, String> {
    for p in [2u32, 3, 5] {
        let l = fixtures::nonab2(p);
        ensure(l.center().is_zero(), format!("center must vanish at p={p}"))?;
        let all = enumerate_p_structures(&l, DESK_BUDGET).map_err(|e| e.to_string())?;
        ensure(all.len() == 1, format!("{} structures at p={p}", all.len()))?;
        let pmap = &all[0];
        // Closed form: (a h + b x)^[p] = a^p h + a^(p-1) b x.
        for a in 0..p as i64 {
            for b in 0..p as i64 {
                let v = VecFp::from_entries(p, &[a, b]);
                let sa = Scalar::new(a, p);
                let sb = Scalar::new(b, p);
                let mut expected = l.zero_vector();
                expected.set(0, sa.pow(p));
                expected.set(1, sa.pow(p - 1).mul(sb));
                ensure(
                    pmap.eval(&v) == expected,
                    format!("closed form fails at p={p}, ({a},{b})"),
                )?;
            }
        }
    }
    Ok("unique structure matches the closed form for p in {2,3,5}".into())
}

fn case_abelian_semilinear(_: &[CorpusInstance]) -> Result<String, String> {
    // Abelian multiplicative algebras: any twisted linear map is a valid
    // p-map once composed with alpha^(p-1).
    let mut audited = 0;
    for p in [2u32, 3] {
        let twists = [
            MatFp::identity(p, 2),
            MatFp::from_rows(p, &[vec![1, 0], vec![0, 0]]),
            MatFp::from_rows(p, &[vec![0, 1], vec![1, 0]]),
        ];
        let maps = [
            MatFp::zeros(p, 2, 2),
            MatFp::identity(p, 2),
            MatFp::from_rows(p, &[vec![0, 1], vec![0, 0]]),
            MatFp::from_rows(p, &[vec![1, 1], vec![1, 1]]),
        ];
        for twist in &twists {
            let base = fixtures::ab(p, 2);
            let l = base.yau_twist(twist).map_err(|e| e.to_string())?;
            let alpha_pow = l.alpha_power(p - 1);
            for f in &maps {
                let images: Vec<VecFp> =
                    (0..2).map(|j| alpha_pow.mul_vec(&f.col(j))).collect();
                let pmap = PStructure::new(&l, images).map_err(|e| e.to_string())?;
                let report =
                    exhaustive_restricted_audit(&pmap, DESK_BUDGET).map_err(|e| e.to_string())?;
                ensure(report.ok, format!("abelian construction fails at p={p}"))?;
                audited += 1;
            }
        }
    }
    Ok(format!("{audited} twisted-linear abelian p-maps audited"))
}

fn case_delta_law(corpus: &[CorpusInstance]) -> Result<String, String> {
    let mut pairs_checked = 0;
    for inst in corpus {
        let l = &inst.algebra;
        if inst.pmap.is_none() || l.element_count() > 64 {
            continue;
        }
        let all = match enumerate_p_structures(l, 64) {
            Ok(all) => all,
            Err(_) => continue,
        };
        for p1 in &all {
            for p2 in &all {
                let delta = p_structure_delta(p1, p2).map_err(|e| e.to_string())?;
                ensure(
                    delta.valid,
                    format!("{}: delta is not a central linear map", inst.label),
                )?;
                pairs_checked += 1;
            }
        }
        // Converse: shifting by any linear map into the center stays valid.
        let base = &all[0];
        let center = l.center();
        if !center.is_zero() {
            let shift = center.basis()[0].clone();
            let images: Vec<VecFp> =
                (0..l.dim()).map(|j| base.image(j).add(&shift)).collect();
            let shifted = PStructure::new(l, images).map_err(|e| e.to_string())?;
            ensure(
                verify_p_structure(&shifted, VerifyMode::Basis)
                    .map_err(|e| e.to_string())?
                    .ok,
                format!("{}: central shift must stay a p-structure", inst.label),
            )?;
        }
    }
    ensure(pairs_checked > 0, "no structure pairs checked")?;
    Ok(format!("{pairs_checked} structure pairs differ by central maps"))
}

/// Evaluation with the support taken in an arbitrary order; genuine
/// structures do not care.
fn eval_in_order(pmap: &PStructure, x: &VecFp, order: &[usize]) -> VecFp {
    let l = pmap.algebra();
    let p = l.p();
    let mut val = l.zero_vector();
    let mut partial = l.zero_vector();
    for &j in order {
        let c = x.get(j);
        if c.is_zero() {
            continue;
        }
        let term = l.basis_vector(j).scale(c);
        let st = s_terms(l, &partial, &term).expect("valid algebra");
        val = val.add(&pmap.image(j).scale(c.pow(p))).add(&st.sum());
        partial = partial.add(&term);
    }
    val
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for slot in 0..=rest.len() {
            let mut perm = rest.clone();
            perm.insert(slot, n - 1);
            out.push(perm);
        }
    }
    out
}

fn case_basis_determines(_: &[CorpusInstance]) -> Result<String, String> {
    // Two structures that agree on the basis are the same map: evaluation is
    // forced, independently of the support order used to expand elements.
    let mut pool: Vec<(String, PStructure)> = restricted_pool();
    // A four-dimensional instance so the permutation sweep covers n = 4.
    let four = crate::restricted::direct_sum_p(
        &synthesize_p_structure(&fixtures::nonab2(2), &[]).unwrap(),
        &pool
            .iter()
            .find(|(label, _)| label == "shift2")
            .map(|(_, p)| p.clone())
            .expect("shift2 is in the pool"),
    )
    .map_err(|e| e.to_string())?;
    pool.push(("nonab2+shift2".into(), four));
    let mut checked = 0;
    for (label, pmap) in pool {
        let l = pmap.algebra();
        if l.dim() > 4 {
            continue;
        }
        for order in permutations(l.dim()) {
            for x in l.elements() {
                ensure(
                    eval_in_order(&pmap, &x, &order) == pmap.eval(&x),
                    format!("{label}: evaluation depends on support order {order:?}"),
                )?;
                checked += 1;
            }
        }
    }
    // Trivial-center algebras admit at most one structure.
    for l in [fixtures::nonab2(2), fixtures::nonab2(3)] {
        ensure(l.center().is_zero(), "expected trivial center")?;
        let count = enumerate_p_structures(&l, DESK_BUDGET)
            .map_err(|e| e.to_string())?
            .len();
        ensure(count <= 1, "trivial center admits at most one structure")?;
    }
    Ok(format!("{checked} order-independence evaluations"))
}

fn case_vanishing_on_center(corpus: &[CorpusInstance]) -> Result<String, String> {
    // Scoped to regular twists: there the twisted center is the plain
    // center, it is a p-ideal, and subtracting the restriction of the p-map
    // yields a structure vanishing on it. With a singular twist the twisted
    // center can carry a nonzero bracket and the additivity law rules such a
    // structure out (zero twist on the nonabelian plane, for example).
    let mut witnessed = 0;
    for inst in corpus {
        let l = &inst.algebra;
        if inst.pmap.is_none() || l.element_count() > 64 || !l.alpha().is_invertible() {
            continue;
        }
        let Ok(all) = enumerate_p_structures(l, 256) else {
            continue;
        };
        if all.is_empty() {
            continue;
        }
        let center = l.center();
        let found = all.iter().any(|pmap| {
            center
                .elements()
                .iter()
                .all(|c| pmap.eval(c).is_zero())
        });
        ensure(
            found,
            format!("{}: no structure vanishing on the center", inst.label),
        )?;
        witnessed += 1;
    }
    ensure(witnessed > 0, "no instances examined")?;
    Ok(format!("{witnessed} instances admit a center-vanishing structure"))
}

fn case_synthesis_targets(corpus: &[CorpusInstance]) -> Result<String, String> {
    let mut exercised = 0;
    for inst in corpus {
        let Some(base) = &inst.pmap else { continue };
        let l = &inst.algebra;
        let center = l.center();
        let shift = center
            .basis()
            .first()
            .cloned()
            .unwrap_or_else(|| l.zero_vector());
        let targets: Vec<Option<VecFp>> = (0..l.dim())
            .map(|j| Some(base.image(j).add(&shift)))
            .collect();
        let synthesized =
            synthesize_p_structure(l, &targets).map_err(|e| format!("{}: {e}", inst.label))?;
        for j in 0..l.dim() {
            ensure(
                synthesized.image(j) == targets[j].as_ref().unwrap(),
                format!("{}: synthesis must hit the requested targets", inst.label),
            )?;
        }
        ensure(
            verify_p_structure(&synthesized, VerifyMode::Basis)
                .map_err(|e| e.to_string())?
                .ok,
            format!("{}: synthesized structure must verify", inst.label),
        )?;
        // Determinism: same targets, same result.
        let again = synthesize_p_structure(l, &targets).map_err(|e| e.to_string())?;
        ensure(again == synthesized, "synthesis must be deterministic")?;
        exercised += 1;
    }
    ensure(exercised > 0, "no restricted instances to synthesize on")?;
    Ok(format!("{exercised} target syntheses verified"))
}

fn case_direct_sum_restricted(corpus: &[CorpusInstance]) -> Result<String, String> {
    let pool: Vec<&CorpusInstance> = corpus
        .iter()
        .filter(|inst| inst.pmap.is_some() && inst.algebra.dim() <= 3)
        .collect();
    let mut audited = 0;
    for (i, left) in pool.iter().enumerate() {
        let right = pool[(i * 7 + 3) % pool.len()];
        if left.algebra.p() != right.algebra.p() {
            continue;
        }
        if gfp::element_count(left.algebra.p(), left.algebra.dim() + right.algebra.dim()).pow(2)
            > DESK_BUDGET
        {
            continue;
        }
        let sum = crate::restricted::direct_sum_p(
            left.pmap.as_ref().unwrap(),
            right.pmap.as_ref().unwrap(),
        )
        .map_err(|e| e.to_string())?;
        let report = exhaustive_restricted_audit(&sum, DESK_BUDGET).map_err(|e| e.to_string())?;
        ensure(
            report.ok,
            format!("sum of {} and {} fails the audit", left.label, right.label),
        )?;
        audited += 1;
    }
    ensure(audited >= 5, format!("only {audited} sums audited"))?;
    Ok(format!("{audited} direct sums audited exhaustively"))
}

fn case_morphism_axioms(_: &[CorpusInstance]) -> Result<String, String> {
    let l = fixtures::nonab2(2);
    let pmap = synthesize_p_structure(&l, &[]).unwrap();
    let id = HomMorphism::identity(&l);
    ensure(
        id.check(Some((&pmap, &pmap))).is_restricted_morphism(),
        "identity must be a restricted morphism",
    )?;
    let heis = fixtures::heis3(2);
    let span_z = Subspace::span(2, 3, &[heis.basis_vector(2)]);
    let (_, proj) = heis.quotient(&span_z).map_err(|e| e.to_string())?;
    ensure(proj.check(None).is_morphism(), "projection must be a morphism")?;
    let bad = HomMorphism::new(
        l.clone(),
        l.clone(),
        MatFp::from_rows(2, &[vec![1, 1], vec![0, 0]]),
    )
    .unwrap();
    let report = bad.check(None);
    ensure(
        !report.preserves_brackets && report.bracket_witness == Some((0, 1)),
        "bracket violation must be caught with its witness",
    )?;
    Ok("morphism conditions verified".into())
}

fn case_graph_equivalence(_: &[CorpusInstance]) -> Result<String, String> {
    let pool = restricted_pool();
    let mut agreements = 0;
    for (ls, ps) in &pool {
        for (lt, pt) in &pool {
            let source = ps.algebra();
            let target = pt.algebra();
            if source.p() != target.p() || source.dim() + target.dim() > 6 {
                continue;
            }
            let matrices = all_morphism_matrices(source, target, DESK_BUDGET)
                .map_err(|e| e.to_string())?;
            for m in matrices {
                let phi = HomMorphism::new(source.clone(), target.clone(), m).unwrap();
                let report = graph_check(&phi, ps, pt).map_err(|e| e.to_string())?;
                ensure(
                    report.verdicts_agree,
                    format!("graph and morphism verdicts disagree between {ls} and {lt}"),
                )?;
                agreements += 1;
            }
        }
    }
    ensure(agreements >= 20, format!("only {agreements} triples checked"))?;
    Ok(format!("{agreements} graph/morphism verdicts agree"))
}

fn case_pushforward(_: &[CorpusInstance]) -> Result<String, String> {
    let mut pushed_ok = 0;
    // Quotient projections of p-ideals push the structure onto the quotient.
    let heis = fixtures::heis3(2);
    let hp = PStructure::new(
        &heis,
        vec![heis.basis_vector(2), heis.zero_vector(), heis.zero_vector()],
    )
    .unwrap();
    let span_z = Subspace::span(2, 3, &[heis.basis_vector(2)]);
    let (_, proj) = heis.quotient(&span_z).map_err(|e| e.to_string())?;
    let result = push_p(&proj, &hp).map_err(|e| e.to_string())?;
    let audit = exhaustive_restricted_audit(&result.pushed, DESK_BUDGET)
        .map_err(|e| e.to_string())?;
    ensure(audit.ok, "pushed structure fails the audit")?;
    pushed_ok += 1;

    // Every well-defined push along the morphism pool must audit clean.
    let pool = restricted_pool();
    for (ls, ps) in &pool {
        for (lt, pt) in &pool {
            let source = ps.algebra();
            let target = pt.algebra();
            if source.p() != target.p() || source.dim() + target.dim() > 6 {
                continue;
            }
            let matrices = all_morphism_matrices(source, target, DESK_BUDGET)
                .map_err(|e| e.to_string())?;
            for m in matrices {
                let phi = HomMorphism::new(source.clone(), target.clone(), m).unwrap();
                match push_p(&phi, ps) {
                    Ok(result) => {
                        let audit = exhaustive_restricted_audit(&result.pushed, DESK_BUDGET)
                            .map_err(|e| e.to_string())?;
                        ensure(
                            audit.ok,
                            format!("push from {ls} to {lt} fails the audit"),
                        )?;
                        pushed_ok += 1;
                    }
                    Err(MorphismError::IllDefined { .. }) => continue,
                    Err(other) => return Err(format!("unexpected push error: {other}")),
                }
            }
        }
    }

    // The diagonal quotient of the shift algebra is the canonical
    // ill-defined case.
    let (g, shift) = fixtures::shift2();
    let diag = Subspace::span(2, 2, &[VecFp::from_entries(2, &[1, 1])]);
    let (_, dproj) = g.quotient(&diag).map_err(|e| e.to_string())?;
    ensure(
        matches!(push_p(&dproj, &shift), Err(MorphismError::IllDefined { .. })),
        "diagonal quotient must be ill-defined",
    )?;
    Ok(format!("{pushed_ok} pushforwards audited"))
}

fn case_pullback(_: &[CorpusInstance]) -> Result<String, String> {
    // Identity pullback on a p-subalgebra.
    let l = fixtures::nonab2(2);
    let span_h = Subspace::span(2, 2, &[l.basis_vector(0)]);
    let (sub, _) = l.restrict_to_subalgebra(&span_h).map_err(|e| e.to_string())?;
    let q = PStructure::new(&sub, vec![sub.basis_vector(0)]).unwrap();
    let pulled = pull_p(&HomMorphism::identity(&l), &span_h, &q).map_err(|e| e.to_string())?;
    ensure(pulled.preimage == span_h, "identity pullback keeps the subalgebra")?;
    let audit =
        exhaustive_restricted_audit(&pulled.pulled, DESK_BUDGET).map_err(|e| e.to_string())?;
    ensure(audit.ok, "pulled structure fails the audit")?;

    // Pull through an isomorphism (basis swap of the shift algebra).
    let (g, shift) = fixtures::shift2();
    let swap = MatFp::from_rows(2, &[vec![0, 1], vec![1, 0]]);
    let iso = HomMorphism::new(g.clone(), g.clone(), swap).unwrap();
    ensure(iso.check(None).is_morphism(), "swap must be a morphism")?;
    let full = Subspace::full(2, 2);
    let pulled = pull_p(&iso, &full, &shift).map_err(|e| e.to_string())?;
    let audit =
        exhaustive_restricted_audit(&pulled.pulled, DESK_BUDGET).map_err(|e| e.to_string())?;
    ensure(audit.ok, "conjugated structure fails the audit")?;
    ensure(
        pulled.pulled.image(1) == &g.basis_vector(0),
        "conjugated shift must send b to a",
    )?;

    // Kernel meeting the preimage is rejected.
    let zero = HomMorphism::new(g.clone(), g.clone(), MatFp::zeros(2, 2, 2)).unwrap();
    ensure(
        matches!(
            pull_p(&zero, &full, &shift),
            Err(MorphismError::NotInvertibleOnPreimage)
        ),
        "kernel through the preimage must be rejected",
    )?;
    Ok("pullbacks verified".into())
}

fn case_restrictable_bruteforce(corpus: &[CorpusInstance]) -> Result<String, String> {
    let brute = brute_restrictable(&fixtures::nr3(), DESK_BUDGET).map_err(|e| e.to_string())?;
    ensure(!brute.decision, "nr3 must fail the element check")?;
    ensure(
        brute.failing_element == Some(fixtures::nr3().basis_vector(0)),
        "first failing element must be the first basis vector",
    )?;
    let mut agreed = 0;
    for inst in corpus {
        if inst.algebra.element_count() > DESK_BUDGET {
            continue;
        }
        let brute =
            brute_restrictable(&inst.algebra, DESK_BUDGET).map_err(|e| e.to_string())?;
        ensure(
            brute.decision == inst.pmap.is_some(),
            format!("{}: brute and synthesis disagree", inst.label),
        )?;
        agreed += 1;
    }
    Ok(format!("{agreed} instances agree element-wise"))
}

fn case_abelian_restrictable(corpus: &[CorpusInstance]) -> Result<String, String> {
    let mut checked = 0;
    for inst in corpus {
        if inst.algebra.axiom_report().abelian {
            ensure(
                is_restrictable(&inst.algebra).decision,
                format!("{}: abelian must be restrictable", inst.label),
            )?;
            checked += 1;
        }
    }
    for p in [2u32, 3, 5] {
        ensure(is_restrictable(&fixtures::ab(p, 2)).decision, "abelian fixture")?;
        checked += 1;
    }
    Ok(format!("{checked} abelian instances restrictable"))
}

fn case_nilpotent_restrictable(corpus: &[CorpusInstance]) -> Result<String, String> {
    let mut checked = 0;
    for inst in corpus {
        let series = inst.algebra.lower_central_series();
        let vanishing_power = series
            .class
            .map(|c| c <= (inst.algebra.p() + 1) as usize)
            .unwrap_or(false);
        if vanishing_power && inst.algebra.dim() < (inst.algebra.p() + 2) as usize {
            ensure(
                is_restrictable(&inst.algebra).decision,
                format!("{}: short series forces restrictability", inst.label),
            )?;
            checked += 1;
        }
    }
    ensure(
        is_restrictable(&fixtures::heis3(2)).decision,
        "heis3 at p=2 has dim 3 < p+2",
    )?;
    Ok(format!("{} nilpotent instances verified", checked + 1))
}

fn case_projected_twist(_: &[CorpusInstance]) -> Result<String, String> {
    let l = fixtures::proj_twist2(2);
    ensure(is_restrictable(&l).decision, "projected twist must be restrictable")?;
    let brute = brute_restrictable(&l, DESK_BUDGET).map_err(|e| e.to_string())?;
    ensure(brute.decision, "element check must agree")?;
    let count = enumerate_p_structures(&l, DESK_BUDGET)
        .map_err(|e| e.to_string())?
        .len();
    ensure(count == 16, format!("expected 16 structures, found {count}"))?;
    Ok("projected twist restrictable with 16 structures".into())
}

/// Every multiplicative 2-dimensional algebra over GF(2): bracket value of
/// the generator pair crossed with all twists.
fn all_two_dim_multiplicative() -> Vec<HomLieAlgebra> {
    let mut out = Vec::new();
    for bracket in gfp::all_vectors(2, 2) {
        for twist_flat in gfp::all_vectors(2, 4) {
            let mut alpha = MatFp::zeros(2, 2, 2);
            for r in 0..2 {
                for c in 0..2 {
                    alpha.set(r, c, twist_flat.get(r * 2 + c));
                }
            }
            let candidate = HomLieAlgebra::from_bracket_pairs(
                2,
                vec!["u".into(), "v".into()],
                &[(0, 1, bracket.clone())],
                alpha,
            )
            .expect("shape is valid");
            if candidate.axiom_report().is_multiplicative_hom_lie() {
                out.push(candidate);
            }
        }
    }
    out
}

fn case_restrictable_iff(corpus: &[CorpusInstance]) -> Result<String, String> {
    let all = all_two_dim_multiplicative();
    for l in &all {
        let synth = is_restrictable(l).decision;
        let brute = brute_restrictable(l, DESK_BUDGET)
            .map_err(|e| e.to_string())?
            .decision;
        ensure(
            synth == brute,
            "synthesis and element check must agree on the 2-dim sweep",
        )?;
    }
    for inst in corpus {
        if inst.algebra.element_count() > DESK_BUDGET {
            continue;
        }
        let brute = brute_restrictable(&inst.algebra, DESK_BUDGET)
            .map_err(|e| e.to_string())?
            .decision;
        ensure(
            is_restrictable(&inst.algebra).decision == brute,
            format!("{}: equivalence fails", inst.label),
        )?;
    }
    Ok(format!("{} two-dimensional instances swept", all.len()))
}

fn case_surjective_image(corpus: &[CorpusInstance]) -> Result<String, String> {
    let mut checked = 0;
    for inst in corpus {
        if !is_restrictable(&inst.algebra).decision {
            continue;
        }
        let l = &inst.algebra;
        // Quotient by every line that happens to be an ideal.
        for j in 0..l.dim() {
            let line = Subspace::span(l.p(), l.dim(), &[l.basis_vector(j)]);
            if !l.is_sub_or_ideal(&line).ideal {
                continue;
            }
            let (q, proj) = l.quotient(&line).map_err(|e| e.to_string())?;
            ensure(proj.is_surjective(), "projections are surjective")?;
            ensure(
                is_restrictable(&q).decision,
                format!("{}: quotient must stay restrictable", inst.label),
            )?;
            checked += 1;
        }
    }
    ensure(checked > 0, "no ideal lines found in corpus")?;
    Ok(format!("{checked} surjective images stay restrictable"))
}

fn case_direct_sum_iff(corpus: &[CorpusInstance]) -> Result<String, String> {
    let mut pool: Vec<&CorpusInstance> = corpus
        .iter()
        .filter(|inst| inst.algebra.p() == 2 && inst.algebra.dim() <= 3)
        .collect();
    pool.truncate(6);
    let nr = fixtures::nr3();
    let mut checked = 0;
    for left in &pool {
        for right in &pool {
            let sum = left.algebra.direct_sum(&right.algebra).map_err(|e| e.to_string())?;
            let expected = is_restrictable(&left.algebra).decision
                && is_restrictable(&right.algebra).decision;
            ensure(
                is_restrictable(&sum).decision == expected,
                format!("sum equivalence fails for {} + {}", left.label, right.label),
            )?;
            checked += 1;
        }
        // The non-restrictable summand forces the sum to fail.
        let sum = left.algebra.direct_sum(&nr).map_err(|e| e.to_string())?;
        ensure(
            !is_restrictable(&sum).decision,
            format!("{} + nr3 must not be restrictable", left.label),
        )?;
        checked += 1;
    }
    Ok(format!("{checked} direct sums decided both ways"))
}

fn case_commuting_ideals_sum(_: &[CorpusInstance]) -> Result<String, String> {
    // Block sums give commuting ideals covering the algebra; both summands
    // restrictable forces the whole.
    let cases = [
        (fixtures::nonab2(2), fixtures::heis3(2)),
        (fixtures::proj_twist2(2), fixtures::ab(2, 2)),
        (fixtures::nonab2(2), fixtures::ab1(2)),
    ];
    for (a, b) in cases {
        let l = a.direct_sum(&b).map_err(|e| e.to_string())?;
        let first: Vec<VecFp> = (0..a.dim()).map(|j| l.basis_vector(j)).collect();
        let second: Vec<VecFp> = (0..b.dim()).map(|j| l.basis_vector(a.dim() + j)).collect();
        let i1 = Subspace::span(l.p(), l.dim(), &first);
        let i2 = Subspace::span(l.p(), l.dim(), &second);
        ensure(
            l.is_sub_or_ideal(&i1).ideal && l.is_sub_or_ideal(&i2).ideal,
            "blocks must be ideals",
        )?;
        ensure(i1.sum(&i2).is_full(), "blocks must cover the algebra")?;
        for u in i1.basis() {
            for v in i2.basis() {
                ensure(l.bracket(u, v).is_zero(), "blocks must commute")?;
            }
        }
        ensure(
            is_restrictable(&l).decision,
            "sum of commuting restrictable ideals must be restrictable",
        )?;
    }
    Ok("commuting ideal sums restrictable".into())
}

fn case_central_quotient_iff(_: &[CorpusInstance]) -> Result<String, String> {
    // Matrix algebra at p=3: derived subalgebra plus center covers
    // everything, and the scalar line is a central ideal.
    let (l, _) = fixtures::gl_example(2, 3, &MatFp::identity(3, 2)).map_err(|e| e.to_string())?;
    let center = l.center();
    let derived: Vec<VecFp> = {
        let mut gens = Vec::new();
        for i in 0..l.dim() {
            for j in 0..l.dim() {
                gens.push(l.bracket_basis(i, j).clone());
            }
        }
        gens
    };
    let derived_span = Subspace::span(l.p(), l.dim(), &derived);
    ensure(
        derived_span.sum(&center).is_full(),
        "derived subalgebra plus center must cover the matrix algebra",
    )?;
    ensure(l.alpha().is_invertible(), "twist must be regular")?;
    let scalar_line = center.clone();
    ensure(
        l.is_sub_or_ideal(&scalar_line).ideal,
        "scalar line must be an ideal",
    )?;
    let (q, _) = l.quotient(&scalar_line).map_err(|e| e.to_string())?;
    let whole = is_restrictable(&l).decision;
    let quotiented = is_restrictable(&q).decision;
    ensure(
        whole == quotiented && whole,
        "restrictability must transfer across the central quotient",
    )?;

    // Abelian instance: center is everything, any line works.
    let ab = fixtures::ab(2, 2);
    let line = Subspace::span(2, 2, &[ab.basis_vector(0)]);
    let (abq, _) = ab.quotient(&line).map_err(|e| e.to_string())?;
    ensure(
        is_restrictable(&ab).decision == is_restrictable(&abq).decision,
        "abelian central quotient equivalence",
    )?;
    Ok("central quotient equivalence verified".into())
}

/// All subspaces of GF(2)^n for tiny n, via spans of element subsets.
fn all_subspaces_f2(n: usize) -> Vec<Subspace> {
    let elements: Vec<VecFp> = gfp::all_vectors(2, n).skip(1).collect();
    let mut seen = Vec::new();
    for mask in 0u32..(1 << elements.len()) {
        let gens: Vec<VecFp> = elements
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, v)| v.clone())
            .collect();
        let s = Subspace::span(2, n, &gens);
        if !seen.contains(&s) {
            seen.push(s);
        }
    }
    seen
}

fn case_power_criterion(_: &[CorpusInstance]) -> Result<String, String> {
    let mut checked = 0;
    for l in [fixtures::nonab2(2), fixtures::heis3(2), fixtures::proj_twist2(2)] {
        let structures = enumerate_p_structures(&l, DESK_BUDGET).map_err(|e| e.to_string())?;
        ensure(!structures.is_empty(), "pool algebras are restrictable")?;
        for h in all_subspaces_f2(l.dim()) {
            if !l.is_sub_or_ideal(&h).subalgebra {
                continue;
            }
            // Chain of every element lands in the twisted adjoints of H.
            let mut chain_inside = true;
            'outer: for x in h.elements() {
                let target = ad_chain(&l, &x).vectorize();
                if h.is_zero() {
                    if !target.is_zero() {
                        chain_inside = false;
                    }
                    continue;
                }
                let cols: Vec<VecFp> = h
                    .basis()
                    .iter()
                    .map(|b| l.ad_matrix(b, AdMode::AlphaTwisted).vectorize())
                    .collect();
                let system = MatFp::from_cols(l.p(), target.len(), &cols);
                match gfp::solve_affine(&system, &target) {
                    Ok(sol) => {
                        if !sol.solvable {
                            chain_inside = false;
                            break 'outer;
                        }
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
            let some_structure_closes = structures
                .iter()
                .any(|pmap| p_flag_check(pmap, &h).p_subalgebra);
            ensure(
                chain_inside == some_structure_closes,
                format!(
                    "power criterion mismatch on a subalgebra of dim {} (chain {chain_inside}, closure {some_structure_closes})",
                    h.dim()
                ),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} subalgebras decided both ways"))
}

fn case_form_restrictable(_: &[CorpusInstance]) -> Result<String, String> {
    // Solvable 2-dim: associative forms exist but are all degenerate.
    let l = fixtures::nonab2(2);
    let diag = BilinearForm::new(&l, MatFp::from_rows(2, &[vec![1, 0], vec![0, 0]])).unwrap();
    let report = form_report(&l, &diag, None).map_err(|e| e.to_string())?;
    ensure(report.associative && !report.nondegenerate, "rank-1 diagonal form")?;
    let zero = BilinearForm::new(&l, MatFp::zeros(2, 2, 2)).unwrap();
    let rz = form_report(&l, &zero, None).map_err(|e| e.to_string())?;
    ensure(rz.associative && !rz.nondegenerate, "zero form")?;

    // Trace-zero 2x2 matrices at p=3 carry the nondegenerate trace form and
    // have no center: the theorem forces restrictability.
    let sl2 = HomLieAlgebra::from_bracket_pairs(
        3,
        vec!["h".into(), "e".into(), "f".into()],
        &[
            (0, 1, VecFp::from_entries(3, &[0, 2, 0])),
            (0, 2, VecFp::from_entries(3, &[0, 0, 1])),
            (1, 2, VecFp::from_entries(3, &[1, 0, 0])),
        ],
        MatFp::identity(3, 3),
    )
    .map_err(|e| e.to_string())?;
    ensure(
        sl2.axiom_report().is_multiplicative_hom_lie(),
        "trace-zero algebra must satisfy the axioms",
    )?;
    let trace_form = BilinearForm::new(
        &sl2,
        MatFp::from_rows(3, &[vec![2, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]),
    )
    .unwrap();
    let rt = form_report(&sl2, &trace_form, None).map_err(|e| e.to_string())?;
    ensure(rt.associative, "trace form must be associative")?;
    ensure(rt.nondegenerate, "trace form must be nondegenerate")?;
    ensure(rt.center_trivial, "trace-zero algebra has no center")?;
    ensure(rt.forces_restrictable, "hook must trigger")?;
    ensure(
        rt.restrictable == Some(true),
        "nondegenerate associative form forces restrictability",
    )?;
    // Unit form on the abelian line: nondegenerate but the center is not
    // trivial, so the hook stays quiet.
    let ab = fixtures::ab1(2);
    let unit = BilinearForm::new(&ab, MatFp::identity(2, 1)).unwrap();
    let ru = form_report(&ab, &unit, None).map_err(|e| e.to_string())?;
    ensure(
        ru.associative && ru.nondegenerate && !ru.forces_restrictable,
        "abelian line keeps the hook quiet",
    )?;
    Ok("form criteria verified, including the forcing case".into())
}

fn ab1_in_shift2() -> PEnvelope {
    let base = fixtures::ab1(2);
    let (_, pmap) = fixtures::shift2();
    let embed = MatFp::from_rows(2, &[vec![1], vec![0]]);
    PEnvelope::new(base, pmap, embed).unwrap()
}

fn self_envelope(l: &HomLieAlgebra) -> PEnvelope {
    let pmap = synthesize_p_structure(l, &[]).unwrap();
    PEnvelope::new(l.clone(), pmap, MatFp::identity(l.p(), l.dim())).unwrap()
}

fn case_envelope_definition(_: &[CorpusInstance]) -> Result<String, String> {
    ensure(ab1_in_shift2().check().ok(), "shift envelope must check")?;
    ensure(
        self_envelope(&fixtures::nonab2(2)).check().ok(),
        "self-envelope must check",
    )?;
    let base = fixtures::nonab2(2);
    let sum = base.direct_sum(&fixtures::ab1(2)).map_err(|e| e.to_string())?;
    let pmap = synthesize_p_structure(&sum, &[]).map_err(|e| e.to_string())?;
    let mut embed = MatFp::zeros(2, 3, 2);
    embed.set(0, 0, Scalar::one(2));
    embed.set(1, 1, Scalar::one(2));
    let padded = PEnvelope::new(base, pmap, embed).unwrap();
    let report = padded.check();
    ensure(
        !report.ok() && !report.closure_is_everything,
        "padded embedding must fail the closure condition",
    )?;
    Ok("envelope definition checks".into())
}

fn case_envelope_minimize(_: &[CorpusInstance]) -> Result<String, String> {
    let minimal = ab1_in_shift2().minimize().map_err(|e| e.to_string())?;
    ensure(
        minimal.restricted().algebra().dim() == 1,
        "minimization must reach dimension 1",
    )?;
    ensure(minimal.restricted().image(0).is_zero(), "minimal p-map vanishes")?;
    ensure(minimal.check().ok(), "minimized envelope must check")?;
    ensure(minimal.minimality().minimal, "minimized envelope must be minimal")?;

    let kept = self_envelope(&fixtures::heis3(2)).minimize().map_err(|e| e.to_string())?;
    ensure(
        kept.restricted().algebra().dim() == 3,
        "already minimal envelopes are kept",
    )?;

    // Swap twist on the abelian plane, embedded along the diagonal: the
    // center escapes the image but its only twist-stable line is the image
    // itself, so minimization has to stop with an explicit obstruction
    // instead of a silent non-minimal result.
    let swap_base = fixtures::ab1(2);
    let swap_g = HomLieAlgebra::from_bracket_pairs(
        2,
        vec!["a".into(), "b".into()],
        &[],
        MatFp::from_rows(2, &[vec![0, 1], vec![1, 0]]),
    )
    .map_err(|e| e.to_string())?;
    let swap_pmap = PStructure::new(
        &swap_g,
        vec![swap_g.basis_vector(0), swap_g.zero_vector()],
    )
    .map_err(|e| e.to_string())?;
    let diag = MatFp::from_rows(2, &[vec![1], vec![1]]);
    let blocked = PEnvelope::new(swap_base, swap_pmap, diag).map_err(|e| e.to_string())?;
    ensure(blocked.check().ok(), "diagonal embedding must be an envelope")?;
    ensure(!blocked.minimality().minimal, "diagonal envelope is not minimal")?;
    ensure(
        matches!(
            blocked.minimize(),
            Err(crate::envelopes::EnvelopeError::Obstruction { .. })
        ),
        "blocked minimization must report its obstruction",
    )?;
    Ok("central-ideal minimization verified, obstruction reported where stuck".into())
}

fn case_envelope_decompose(_: &[CorpusInstance]) -> Result<String, String> {
    let e = ab1_in_shift2();
    let d = e.decompose().map_err(|e| e.to_string())?;
    let g = e.restricted().algebra();
    let h = &d.sub_space;
    let j = &d.ideal;
    ensure(h.intersect(j).is_zero(), "components must intersect trivially")?;
    ensure(h.sum(j).is_full(), "components must cover the algebra")?;
    ensure(j.stable_under(g.alpha()), "ideal must be twist-stable")?;
    for v in j.basis() {
        for k in 0..g.dim() {
            ensure(
                j.contains(&g.bracket(v, &g.basis_vector(k))),
                "ideal must absorb brackets",
            )?;
        }
    }
    ensure(
        g.center().contains_subspace(j),
        "ideal must be central",
    )?;
    ensure(h.contains(&e.embedding().col(0)), "image must sit inside the part")?;
    ensure(
        d.sub_envelope.restricted().image(0).is_zero(),
        "fresh p-map must vanish where the original shifted",
    )?;
    // The original p-map does not stabilize the part, which is why the fresh
    // one is required.
    let original_image = e.restricted().eval(&e.embedding().col(0));
    ensure(
        !h.contains(&original_image),
        "original p-map escapes the part on this example",
    )?;
    ensure(d.sub_envelope.check().ok(), "part must be an envelope")?;
    ensure(d.sub_envelope.minimality().minimal, "part must be minimal")?;

    let trivial = self_envelope(&fixtures::heis3(2)).decompose().map_err(|e| e.to_string())?;
    ensure(trivial.ideal.is_zero(), "minimal envelopes decompose trivially")?;
    Ok("decomposition assertions verified".into())
}

fn case_minimal_isomorphic(_: &[CorpusInstance]) -> Result<String, String> {
    // Two minimal envelopes of the one-dimensional abelian base: the
    // minimized shift envelope and the self-envelope.
    let minimized = ab1_in_shift2().minimize().map_err(|e| e.to_string())?;
    let direct = self_envelope(&fixtures::ab1(2));
    ensure(direct.minimality().minimal, "self-envelope is minimal")?;
    let iso = find_isomorphism(
        minimized.restricted().algebra(),
        direct.restricted().algebra(),
        DESK_BUDGET,
    )
    .map_err(|e| e.to_string())?;
    ensure(iso.is_some(), "minimal envelopes must be isomorphic")?;

    // Different p-structures on the Heisenberg algebra give distinct minimal
    // self-envelopes of the same base, all isomorphic as algebras.
    let heis = fixtures::heis3(2);
    let structures = enumerate_p_structures(&heis, DESK_BUDGET).map_err(|e| e.to_string())?;
    for pmap in &structures {
        let env = PEnvelope::new(heis.clone(), pmap.clone(), MatFp::identity(2, 3)).unwrap();
        ensure(env.minimality().minimal, "self-envelopes of heis3 are minimal")?;
        let iso = find_isomorphism(pmap.algebra(), &heis, DESK_BUDGET)
            .map_err(|e| e.to_string())?;
        ensure(iso.is_some(), "self-envelope isomorphism must exist")?;
    }
    Ok(format!(
        "{} minimal envelopes pairwise isomorphic",
        structures.len() + 2
    ))
}

fn case_minimal_center_criterion(_: &[CorpusInstance]) -> Result<String, String> {
    let e = ab1_in_shift2();
    let m = e.minimality();
    ensure(!m.minimal && m.base_involutive, "shift envelope is not minimal")?;
    // Not minimal: minimization strictly shrinks it.
    let minimized = e.minimize().map_err(|e| e.to_string())?;
    ensure(
        minimized.restricted().algebra().dim() < e.restricted().algebra().dim(),
        "non-minimal envelope must shrink",
    )?;
    // Center inside the image: minimization cannot shrink.
    for l in [fixtures::heis3(2), fixtures::nonab2(2)] {
        let env = self_envelope(&l);
        ensure(env.minimality().minimal, "criterion holds for self-envelopes")?;
        let kept = env.minimize().map_err(|e| e.to_string())?;
        ensure(
            kept.restricted().algebra().dim() == l.dim(),
            "minimal envelope must be kept unchanged",
        )?;
    }
    Ok("center criterion characterizes minimality".into())
}
