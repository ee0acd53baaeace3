//! Ground-truth brute-force verifiers and instance generators.
//!
//! Everything here re-derives its answers from first principles: chains are
//! evaluated as nested brackets, correction terms are recovered by
//! interpolation from concrete evaluations, and membership questions are
//! solved element by element. Any divergence from the main-path verifiers is
//! a bug by definition, which is what the property suite in
//! [`suite`](crate::oracle::suite) checks.

pub mod suite;

use crate::algebra::{AlgebraError, HomLieAlgebra};
use crate::gfp::{self, GfpError, MatFp, Scalar, VecFp};
use crate::restricted::{is_restrictable, PStructure, RestrictedError};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Default element budget for the brute-force routines.
pub const DESK_BUDGET: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Field(#[from] GfpError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Restricted(#[from] RestrictedError),
    #[error("exhaustive routine needs {needed} elements, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("generator exhausted its attempt budget after {attempts} tries")]
    GenerationBudget { attempts: u32 },
    #[error("correction-term interpolation is inconsistent; structure constants are corrupted")]
    InterpolationInconsistent,
}

/// First axiom violated by an audited p-structure, with the witness data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AuditViolation {
    OperatorIdentity { x: VecFp, y: VecFp },
    Homogeneity { k: u32, x: VecFp },
    Additivity { x: VecFp, y: VecFp },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub ok: bool,
    pub checked_elements: u64,
    pub violation: Option<AuditViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteReport {
    pub decision: bool,
    pub checked_elements: u64,
    pub failing_element: Option<VecFp>,
}

/// Nested-bracket chain with `factors` factors:
/// [alpha^(factors-1) x, [ ... [alpha x, [x, y]] ... ]].
fn nested_chain(l: &HomLieAlgebra, x: &VecFp, y: &VecFp, factors: u32) -> VecFp {
    let mut acc = y.clone();
    let mut twisted = x.clone();
    for f in 0..factors {
        if f > 0 {
            twisted = l.apply_alpha(&twisted);
        }
        acc = l.bracket(&twisted, &acc);
    }
    acc
}

/// Correction terms recovered independently of the symbolic route: the
/// (p-1)-factor chain is evaluated at every concrete scalar k and the
/// coefficient vectors are obtained by solving the interpolation system.
fn interpolated_s_terms(
    l: &HomLieAlgebra,
    x: &VecFp,
    y: &VecFp,
) -> Result<Vec<VecFp>, OracleError> {
    let p = l.p();
    let n = l.dim();
    // Values of the chain at k = 0 .. p-1.
    let mut values = Vec::with_capacity(p as usize);
    for k in 0..p {
        let combined = x.scale(Scalar::new(k as i64, p)).add(y);
        values.push(nested_chain(l, &combined, x, p - 1));
    }
    // Sum over i of (i s_i) k^(i-1) has degree <= p-2; solve the Vandermonde
    // system per coordinate for the p-1 unknown vectors i*s_i.
    let unknowns = (p - 1) as usize;
    let mut vandermonde = MatFp::zeros(p, p as usize, unknowns);
    for k in 0..p {
        for i in 0..unknowns {
            vandermonde.set(
                k as usize,
                i,
                Scalar::new(k as i64, p).pow(i as u32),
            );
        }
    }
    let mut scaled_terms = vec![VecFp::zeros(p, n); unknowns];
    for coord in 0..n {
        let mut rhs = VecFp::zeros(p, p as usize);
        for (k, v) in values.iter().enumerate() {
            rhs.set(k, v.get(coord));
        }
        let sol = gfp::solve_affine(&vandermonde, &rhs)?;
        let Some(sol) = sol.particular else {
            return Err(OracleError::InterpolationInconsistent);
        };
        for i in 0..unknowns {
            let mut t = scaled_terms[i].clone();
            t.set(coord, sol.get(i));
            scaled_terms[i] = t;
        }
    }
    Ok(scaled_terms
        .into_iter()
        .enumerate()
        .map(|(idx, t)| t.scale(Scalar::new((idx + 1) as i64, p).inv()))
        .collect())
}

/// Checks the three restrictedness axioms over every element, scalar and
/// pair, with bracket chains and correction terms recomputed from scratch.
pub fn exhaustive_restricted_audit(
    pmap: &PStructure,
    budget: u64,
) -> Result<AuditReport, OracleError> {
    let l = pmap.algebra();
    let p = l.p();
    let count = l.element_count();
    let pairs = count.saturating_mul(count);
    if pairs > budget {
        return Err(OracleError::BudgetExceeded {
            needed: pairs,
            budget,
        });
    }
    let elements: Vec<VecFp> = l.elements().collect();
    let values: Vec<VecFp> = elements.iter().map(|x| pmap.eval(x)).collect();
    let twist = l.alpha_power(p - 1);

    for (x, value) in elements.iter().zip(&values) {
        for j in 0..l.dim() {
            let y = l.basis_vector(j);
            let lhs = l.bracket(value, &twist.mul_vec(&y));
            let rhs = nested_chain(l, x, &y, p);
            if lhs != rhs {
                return Ok(AuditReport {
                    ok: false,
                    checked_elements: count,
                    violation: Some(AuditViolation::OperatorIdentity { x: x.clone(), y }),
                });
            }
        }
    }
    for k in 0..p {
        let ks = Scalar::new(k as i64, p);
        let kp = ks.pow(p);
        for (x, value) in elements.iter().zip(&values) {
            if pmap.eval(&x.scale(ks)) != value.scale(kp) {
                return Ok(AuditReport {
                    ok: false,
                    checked_elements: count,
                    violation: Some(AuditViolation::Homogeneity { k, x: x.clone() }),
                });
            }
        }
    }
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            let terms = interpolated_s_terms(l, x, y)?;
            let mut expected = values[i].add(&values[j]);
            for t in &terms {
                expected = expected.add(t);
            }
            if pmap.eval(&x.add(y)) != expected {
                return Ok(AuditReport {
                    ok: false,
                    checked_elements: count,
                    violation: Some(AuditViolation::Additivity {
                        x: x.clone(),
                        y: y.clone(),
                    }),
                });
            }
        }
    }
    Ok(AuditReport {
        ok: true,
        checked_elements: count,
        violation: None,
    })
}

/// Whether the p-factor chain of this single element lies in the set of
/// twisted adjoint operators.
pub fn element_chain_in_ad_image(l: &HomLieAlgebra, x: &VecFp) -> Result<bool, OracleError> {
    let p = l.p();
    let n = l.dim();
    let twist = l.alpha_power(p - 1);
    // Unknown y: operator z -> [y, alpha^(p-1) z], columns over basis y.
    let mut system = MatFp::zeros(l.p(), n * n, n);
    for i in 0..n {
        let ei = l.basis_vector(i);
        for j in 0..n {
            let col = l.bracket(&ei, &twist.mul_vec(&l.basis_vector(j)));
            for r in 0..n {
                system.set(r * n + j, i, col.get(r));
            }
        }
    }
    let mut rhs = VecFp::zeros(l.p(), n * n);
    for j in 0..n {
        let val = nested_chain(l, x, &l.basis_vector(j), p);
        for r in 0..n {
            rhs.set(r * n + j, val.get(r));
        }
    }
    Ok(gfp::solve_affine(&system, &rhs)?.solvable)
}

/// Element-by-element restrictability: every p-factor chain must be a
/// twisted adjoint operator.
pub fn brute_restrictable(l: &HomLieAlgebra, budget: u64) -> Result<BruteReport, OracleError> {
    let count = l.element_count();
    if count > budget {
        return Err(OracleError::BudgetExceeded {
            needed: count,
            budget,
        });
    }
    for x in l.elements() {
        if !element_chain_in_ad_image(l, &x)? {
            return Ok(BruteReport {
                decision: false,
                checked_elements: count,
                failing_element: Some(x),
            });
        }
    }
    Ok(BruteReport {
        decision: true,
        checked_elements: count,
        failing_element: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Construction {
    /// Twist a seeded ordinary Lie algebra by one of its bracket morphisms.
    YauTwist,
    /// Rejection-sample structure constants and a twist.
    RandomMultiplicative,
    /// Strictly graded constants, guaranteeing a vanishing series.
    Nilpotent,
    /// Sum of two smaller seeded instances.
    DirectSum,
}

/// Deterministic generator request; identical specs produce identical
/// instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenSpec {
    pub p: u32,
    pub dim: usize,
    pub seed: u64,
    pub construction: Construction,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratedInstance {
    pub label: String,
    pub algebra: HomLieAlgebra,
    /// Canonical p-structure when the instance turned out restrictable.
    pub pmap: Option<PStructure>,
}

const GENERATION_ATTEMPTS: u32 = 20_000;

fn random_vector(rng: &mut ChaCha8Rng, p: u32, n: usize) -> VecFp {
    let entries: Vec<i64> = (0..n).map(|_| rng.random_range(0..p) as i64).collect();
    VecFp::from_entries(p, &entries)
}

fn random_matrix(rng: &mut ChaCha8Rng, p: u32, rows: usize, cols: usize) -> MatFp {
    let mut m = MatFp::zeros(p, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, Scalar::new(rng.random_range(0..p) as i64, p));
        }
    }
    m
}

fn random_invertible(rng: &mut ChaCha8Rng, p: u32, n: usize) -> MatFp {
    loop {
        let m = random_matrix(rng, p, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Ordinary Lie algebra built from summands of the known small families,
/// then conjugated by a random change of basis.
fn seeded_lie_algebra(rng: &mut ChaCha8Rng, p: u32, dim: usize) -> HomLieAlgebra {
    use crate::fixtures;
    let mut remaining = dim;
    let mut parts: Vec<HomLieAlgebra> = Vec::new();
    while remaining > 0 {
        let choice = rng.random_range(0..3u32);
        let part = match choice {
            0 if remaining >= 3 => fixtures::heis3(p),
            1 if remaining >= 2 => fixtures::nonab2(p),
            _ => fixtures::ab1(p),
        };
        remaining -= part.dim();
        parts.push(part);
    }
    let mut algebra = parts
        .pop()
        .expect("at least one summand for positive dimension");
    while let Some(part) = parts.pop() {
        algebra = algebra.direct_sum(&part).expect("same modulus");
    }
    // Conjugate the structure constants by a random invertible matrix.
    let t = random_invertible(rng, p, dim);
    let t_inv = t.inverse().expect("invertible by construction");
    let names: Vec<String> = (1..=dim).map(|i| format!("g{i}")).collect();
    let mut brackets = vec![vec![VecFp::zeros(p, dim); dim]; dim];
    for (i, row) in brackets.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let b = algebra.bracket(&t_inv.col(i), &t_inv.col(j));
            *entry = t.mul_vec(&b);
        }
    }
    HomLieAlgebra::from_structure_constants(p, names, brackets, MatFp::identity(p, dim))
        .expect("conjugated table is well-formed")
}

/// A bracket morphism of the given ordinary Lie algebra found by rejection,
/// with identity and zero as guaranteed fallbacks.
fn seeded_lie_morphism(rng: &mut ChaCha8Rng, l: &HomLieAlgebra, attempts: u32) -> MatFp {
    let n = l.dim();
    let p = l.p();
    for _ in 0..attempts {
        let a = random_matrix(rng, p, n, n);
        let mut ok = true;
        'check: for i in 0..n {
            for j in 0..n {
                if a.mul_vec(l.bracket_basis(i, j)) != l.bracket(&a.col(i), &a.col(j)) {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok {
            return a;
        }
    }
    if rng.random_range(0..2u32) == 0 {
        MatFp::identity(p, n)
    } else {
        MatFp::zeros(p, n, n)
    }
}

fn generate_one(
    spec: &GenSpec,
    index: usize,
    rng: &mut ChaCha8Rng,
) -> Result<HomLieAlgebra, OracleError> {
    let p = spec.p;
    let dim = spec.dim;
    match spec.construction {
        Construction::YauTwist => {
            let lie = seeded_lie_algebra(rng, p, dim);
            let a = seeded_lie_morphism(rng, &lie, 200);
            Ok(lie.yau_twist(&a).expect("twist by a checked morphism"))
        }
        Construction::RandomMultiplicative => {
            for _ in 0..GENERATION_ATTEMPTS {
                let mut pairs = Vec::new();
                for i in 0..dim {
                    for j in (i + 1)..dim {
                        pairs.push((i, j, random_vector(rng, p, dim)));
                    }
                }
                let names: Vec<String> = (1..=dim).map(|i| format!("g{i}")).collect();
                let alpha = random_matrix(rng, p, dim, dim);
                let candidate = HomLieAlgebra::from_bracket_pairs(p, names, &pairs, alpha)
                    .expect("shape is valid");
                if candidate.axiom_report().is_multiplicative_hom_lie() {
                    return Ok(candidate);
                }
            }
            Err(OracleError::GenerationBudget {
                attempts: GENERATION_ATTEMPTS,
            })
        }
        Construction::Nilpotent => {
            for _ in 0..GENERATION_ATTEMPTS {
                let mut pairs = Vec::new();
                for i in 0..dim {
                    for j in (i + 1)..dim {
                        // Strictly graded: the bracket lands above both indices.
                        let mut v = VecFp::zeros(p, dim);
                        for k in (j + 1)..dim {
                            v.set(k, Scalar::new(rng.random_range(0..p) as i64, p));
                        }
                        pairs.push((i, j, v));
                    }
                }
                let names: Vec<String> = (1..=dim).map(|i| format!("g{i}")).collect();
                let candidate =
                    HomLieAlgebra::from_bracket_pairs(p, names, &pairs, MatFp::identity(p, dim))
                        .expect("shape is valid");
                if !candidate.axiom_report().hom_jacobi {
                    continue;
                }
                let series = candidate.lower_central_series();
                if series.nilpotent && series.class.unwrap_or(usize::MAX) <= (p + 1) as usize {
                    return Ok(candidate);
                }
            }
            Err(OracleError::GenerationBudget {
                attempts: GENERATION_ATTEMPTS,
            })
        }
        Construction::DirectSum => {
            if dim < 2 {
                return generate_one(
                    &GenSpec {
                        construction: Construction::YauTwist,
                        ..*spec
                    },
                    index,
                    rng,
                );
            }
            let left_dim = 1 + (index % dim.saturating_sub(1).max(1));
            let right_dim = dim - left_dim.min(dim - 1);
            let left = generate_one(
                &GenSpec {
                    dim: left_dim.min(dim - 1).max(1),
                    construction: Construction::YauTwist,
                    ..*spec
                },
                index,
                rng,
            )?;
            let right = generate_one(
                &GenSpec {
                    dim: right_dim.max(1),
                    construction: Construction::YauTwist,
                    ..*spec
                },
                index,
                rng,
            )?;
            Ok(left.direct_sum(&right)?)
        }
    }
}

/// Deterministically generates `spec.count` instances; every output passes
/// the multiplicative Hom-Lie axioms, and restrictable outputs carry their
/// canonical p-structure.
pub fn random_instances(spec: &GenSpec) -> Result<Vec<GeneratedInstance>, OracleError> {
    gfp::validate_prime(spec.p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    for index in 0..spec.count {
        let algebra = generate_one(spec, index, &mut rng)?;
        debug_assert!(algebra.axiom_report().is_multiplicative_hom_lie());
        let pmap = is_restrictable(&algebra).witness;
        out.push(GeneratedInstance {
            label: format!(
                "{:?}-p{}-d{}-s{}-{}",
                spec.construction, spec.p, spec.dim, spec.seed, index
            ),
            algebra,
            pmap,
        });
    }
    Ok(out)
}

/// Single-instance convenience wrapper.
pub fn random_instance(spec: &GenSpec) -> Result<GeneratedInstance, OracleError> {
    let mut all = random_instances(&GenSpec { count: 1, ..*spec })?;
    Ok(all.remove(0))
}

/// Every morphism matrix between the two algebras, by exhausting the matrix
/// space; intended for the smallest dimensions only.
pub fn all_morphism_matrices(
    source: &HomLieAlgebra,
    target: &HomLieAlgebra,
    budget: u64,
) -> Result<Vec<MatFp>, OracleError> {
    let entries = source.dim() * target.dim();
    let space = gfp::element_count(source.p(), entries);
    if space > budget {
        return Err(OracleError::BudgetExceeded {
            needed: space,
            budget,
        });
    }
    let mut out = Vec::new();
    for flat in gfp::all_vectors(source.p(), entries) {
        let mut m = MatFp::zeros(source.p(), target.dim(), source.dim());
        for r in 0..target.dim() {
            for c in 0..source.dim() {
                m.set(r, c, flat.get(r * source.dim() + c));
            }
        }
        if m.mul(source.alpha()) != target.alpha().mul(&m) {
            continue;
        }
        let mut ok = true;
        'outer: for i in 0..source.dim() {
            for j in 0..source.dim() {
                if m.mul_vec(source.bracket_basis(i, j)) != target.bracket(&m.col(i), &m.col(j)) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            out.push(m);
        }
    }
    Ok(out)
}

/// Exhaustive search for an invertible morphism between two algebras.
pub fn find_isomorphism(
    l: &HomLieAlgebra,
    m: &HomLieAlgebra,
    budget: u64,
) -> Result<Option<MatFp>, OracleError> {
    if l.dim() != m.dim() || l.p() != m.p() {
        return Ok(None);
    }
    Ok(all_morphism_matrices(l, m, budget)?
        .into_iter()
        .find(|cand| cand.is_invertible()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::restricted::synthesize_p_structure;

    #[test]
    fn audit_passes_on_unique_structure() {
        let l = fixtures::nonab2(2);
        let pmap = synthesize_p_structure(&l, &[]).unwrap();
        let report = exhaustive_restricted_audit(&pmap, DESK_BUDGET).unwrap();
        assert!(report.ok);
        assert_eq!(report.checked_elements, 4);
    }

    #[test]
    fn audit_fails_on_tampered_structure() {
        let l = fixtures::nonab2(2);
        let tampered =
            PStructure::new(&l, vec![l.basis_vector(0), l.basis_vector(1)]).unwrap();
        let report = exhaustive_restricted_audit(&tampered, DESK_BUDGET).unwrap();
        assert!(!report.ok);
        assert!(matches!(
            report.violation,
            Some(AuditViolation::OperatorIdentity { .. })
        ));
    }

    #[test]
    fn audit_matrix_algebra() {
        let (l, pmap) = fixtures::gl_example(2, 2, &MatFp::identity(2, 2)).unwrap();
        assert_eq!(l.dim(), 4);
        assert!(exhaustive_restricted_audit(&pmap, DESK_BUDGET).unwrap().ok);

        let swap = MatFp::from_rows(2, &[vec![0, 1], vec![1, 0]]);
        let (_, pmap2) = fixtures::gl_example(2, 2, &swap).unwrap();
        assert!(exhaustive_restricted_audit(&pmap2, DESK_BUDGET).unwrap().ok);
    }

    #[test]
    fn brute_agrees_with_synthesis_on_fixtures() {
        for (l, expected) in [
            (fixtures::nonab2(2), true),
            (fixtures::proj_twist2(2), true),
            (fixtures::heis3(2), true),
            (fixtures::nr3(), false),
        ] {
            let brute = brute_restrictable(&l, DESK_BUDGET).unwrap();
            assert_eq!(brute.decision, expected);
            assert_eq!(is_restrictable(&l).decision, expected);
        }
    }

    #[test]
    fn brute_failing_element_matches_synthesis_index() {
        let l = fixtures::nr3();
        let brute = brute_restrictable(&l, DESK_BUDGET).unwrap();
        let failing = brute.failing_element.unwrap();
        assert_eq!(failing, l.basis_vector(0));
        assert!(!element_chain_in_ad_image(&l, &failing).unwrap());
    }

    #[test]
    fn generator_is_deterministic() {
        let spec = GenSpec {
            p: 2,
            dim: 3,
            seed: 7,
            construction: Construction::YauTwist,
            count: 3,
        };
        let a = random_instances(&spec).unwrap();
        let b = random_instances(&spec).unwrap();
        assert_eq!(a, b);
        for inst in &a {
            assert!(inst.algebra.axiom_report().is_multiplicative_hom_lie());
        }
    }

    #[test]
    fn nilpotent_generator_contract() {
        let spec = GenSpec {
            p: 3,
            dim: 3,
            seed: 11,
            construction: Construction::Nilpotent,
            count: 2,
        };
        for inst in random_instances(&spec).unwrap() {
            let series = inst.algebra.lower_central_series();
            assert!(series.nilpotent);
            assert!(series.class.unwrap() <= 4);
        }
    }

    #[test]
    fn direct_sum_generator_contract() {
        let spec = GenSpec {
            p: 2,
            dim: 4,
            seed: 3,
            construction: Construction::DirectSum,
            count: 2,
        };
        for inst in random_instances(&spec).unwrap() {
            assert_eq!(inst.algebra.dim(), 4);
            assert!(inst.algebra.axiom_report().is_multiplicative_hom_lie());
        }
    }

    #[test]
    fn isomorphism_search_finds_identity() {
        let l = fixtures::nonab2(2);
        let iso = find_isomorphism(&l, &l, DESK_BUDGET).unwrap();
        assert!(iso.is_some());
        let m = fixtures::ab(2, 2);
        assert!(find_isomorphism(&l, &m, DESK_BUDGET).unwrap().is_none());
    }
}
