//! Finite-dimensional p-envelopes: verification, minimality, minimization by
//! quotients of central ideals, and the direct-sum decomposition into a
//! minimal sub-envelope plus a central ideal.

use crate::algebra::{AlgebraError, HomLieAlgebra};
use crate::gfp::{self, GfpError, MatFp, VecFp};
use crate::morphisms::{HomMorphism, MorphismError};
use crate::restricted::{
    p_closure, restrict_p_structure, synthesize_p_structure, verify_p_structure, PStructure,
    RestrictedError, VerifyMode,
};
use crate::subspace::Subspace;
use serde::Serialize;
use thiserror::Error;

/// Search cap for the decomposition's enumeration of center-valued shifts.
pub const DECOMPOSE_SEARCH_BUDGET: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnvelopeError {
    #[error(transparent)]
    Field(#[from] GfpError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Restricted(#[from] RestrictedError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error("not a p-envelope: {0:?}")]
    NotAnEnvelope(EnvelopeReport),
    #[error("minimization obstructed: no twist-stable central subspace avoids the embedded image, yet the center is not inside it ({detail})")]
    Obstruction { detail: String },
    #[error("no decomposition found within the search bound {search_bound}")]
    NotFound { search_bound: u64 },
    #[error("search needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
}

/// A restricted algebra G together with an injective morphism from the base
/// whose p-closure generates all of G.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PEnvelope {
    base: HomLieAlgebra,
    env: PStructure,
    /// Columns are the images of the base basis vectors in G coordinates.
    embedding: MatFp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnvelopeReport {
    pub embedding_is_morphism: bool,
    pub embedding_injective: bool,
    pub pmap_is_p_structure: bool,
    pub closure_is_everything: bool,
}

impl EnvelopeReport {
    pub fn ok(&self) -> bool {
        self.embedding_is_morphism
            && self.embedding_injective
            && self.pmap_is_p_structure
            && self.closure_is_everything
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    /// The twisted center of G sits inside the embedded image.
    pub minimal: bool,
    /// The criterion is backed by theory only for involutive bases; when this
    /// is false the verdict is advisory.
    pub base_involutive: bool,
    pub center_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// Minimal sub-envelope carrying a freshly chosen p-structure.
    pub sub_envelope: PEnvelope,
    /// The sub-envelope's ambient subspace inside the original G.
    pub sub_space: Subspace,
    /// Central ideal complementing the sub-envelope.
    pub ideal: Subspace,
}

impl PEnvelope {
    pub fn new(
        base: HomLieAlgebra,
        env: PStructure,
        embedding: MatFp,
    ) -> Result<Self, EnvelopeError> {
        let g = env.algebra();
        if base.p() != g.p() {
            return Err(EnvelopeError::Algebra(AlgebraError::ModulusMismatch(
                base.p(),
                g.p(),
            )));
        }
        if embedding.rows() != g.dim() || embedding.cols() != base.dim() {
            return Err(EnvelopeError::Algebra(AlgebraError::Malformed(format!(
                "embedding must be {} x {}",
                g.dim(),
                base.dim()
            ))));
        }
        Ok(PEnvelope {
            base,
            env,
            embedding,
        })
    }

    pub fn base(&self) -> &HomLieAlgebra {
        &self.base
    }

    /// The restricted algebra G with its p-structure.
    pub fn restricted(&self) -> &PStructure {
        &self.env
    }

    pub fn embedding(&self) -> &MatFp {
        &self.embedding
    }

    /// Embedded image of the base inside G.
    pub fn image(&self) -> Subspace {
        let cols: Vec<VecFp> = (0..self.base.dim()).map(|j| self.embedding.col(j)).collect();
        Subspace::span(self.base.p(), self.env.algebra().dim(), &cols)
    }

    pub fn embedding_morphism(&self) -> Result<HomMorphism, MorphismError> {
        HomMorphism::new(
            self.base.clone(),
            self.env.algebra().clone(),
            self.embedding.clone(),
        )
    }

    /// Verifies the definition: the embedding is an injective morphism, the
    /// p-map is a genuine p-structure, and the p-closure of the image is G.
    pub fn check(&self) -> EnvelopeReport {
        let morphism_ok = self
            .embedding_morphism()
            .map(|m| m.check(None).is_morphism())
            .unwrap_or(false);
        let injective = self.embedding.rank() == self.base.dim();
        let pmap_ok = verify_p_structure(&self.env, VerifyMode::Basis)
            .map(|r| r.ok)
            .unwrap_or(false);
        let image_basis: Vec<VecFp> = (0..self.base.dim())
            .map(|j| self.embedding.col(j))
            .collect();
        let closure_full = p_closure(&self.env, &image_basis).is_full();
        EnvelopeReport {
            embedding_is_morphism: morphism_ok,
            embedding_injective: injective,
            pmap_is_p_structure: pmap_ok,
            closure_is_everything: closure_full,
        }
    }

    /// Minimality criterion: C(G) inside the embedded image.
    pub fn minimality(&self) -> MinimalityReport {
        let g = self.env.algebra();
        let center = g.center();
        MinimalityReport {
            minimal: self.image().contains_subspace(&center),
            base_involutive: self.base.axiom_report().involutive,
            center_dim: center.dim(),
        }
    }

    /// Shrinks the envelope by repeatedly quotienting out a maximal
    /// twist-stable central subspace that misses the embedded image, then
    /// regenerating the p-closure of the image inside the quotient. Ends at
    /// a minimal envelope or reports the obstruction.
    pub fn minimize(&self) -> Result<PEnvelope, EnvelopeError> {
        let report = self.check();
        if !report.ok() {
            return Err(EnvelopeError::NotAnEnvelope(report));
        }
        let mut current = self.clone();
        loop {
            let g = current.env.algebra().clone();
            let plain_center = g.center_ordinary();
            if g.alpha().is_invertible() {
                assert_eq!(
                    g.center(),
                    plain_center,
                    "for a regular twist the twisted and plain centers coincide"
                );
            }
            let image = current.image();
            let stable = greedy_stable_avoiding(&g, &plain_center, &image)?;
            if stable.is_zero() {
                break;
            }
            let (quotient, projection) = g.quotient(&stable)?;
            let quotient_pmap = match synthesize_p_structure(&quotient, &[]) {
                Ok(pm) => pm,
                Err(RestrictedError::NotRestrictable { basis_index }) => {
                    return Err(EnvelopeError::Obstruction {
                        detail: format!(
                            "quotient lost restrictability at basis index {basis_index}"
                        ),
                    })
                }
                Err(other) => return Err(other.into()),
            };
            let new_cols: Vec<VecFp> = (0..current.base.dim())
                .map(|j| projection.apply(&current.embedding.col(j)))
                .collect();
            let closure = p_closure(&quotient_pmap, &new_cols);
            let sub_pmap = restrict_p_structure(&quotient_pmap, &closure)?;
            let embed_cols: Vec<VecFp> = new_cols
                .iter()
                .map(|c| {
                    closure
                        .coords(c)
                        .expect("projected image lies inside its own closure")
                })
                .collect();
            let embedding = MatFp::from_cols(g.p(), closure.dim(), &embed_cols);
            current = PEnvelope::new(current.base.clone(), sub_pmap, embedding)?;
        }
        let minimality = current.minimality();
        if minimality.minimal {
            Ok(current)
        } else {
            Err(EnvelopeError::Obstruction {
                detail: format!(
                    "center dimension {} still escapes the image",
                    minimality.center_dim
                ),
            })
        }
    }

    /// Splits G = H ⊕ J with H a minimal sub-envelope containing the image
    /// and J a central twist-stable ideal. H carries a freshly chosen
    /// p-structure (the original one shifted into the center), because the
    /// original p-map need not stabilize H.
    pub fn decompose(&self) -> Result<Decomposition, EnvelopeError> {
        let report = self.check();
        if !report.ok() {
            return Err(EnvelopeError::NotAnEnvelope(report));
        }
        let g = self.env.algebra().clone();
        let center = g.center();
        let image_cols: Vec<VecFp> = (0..self.base.dim()).map(|j| self.embedding.col(j)).collect();

        let shift_coords = center.dim() * g.dim();
        let search_space = gfp::element_count(g.p(), shift_coords);
        if search_space > DECOMPOSE_SEARCH_BUDGET {
            return Err(EnvelopeError::BudgetExceeded {
                needed: search_space,
                budget: DECOMPOSE_SEARCH_BUDGET,
            });
        }

        // Enumerate every center-valued linear shift of the p-map; each shift
        // yields another genuine p-structure. Rank the resulting closures of
        // the image by dimension and take the first that splits off a central
        // complement ideal and verifies as a minimal envelope.
        let mut candidates: Vec<(usize, u64, PStructure, Subspace)> = Vec::new();
        for (counter, combo) in gfp::all_vectors(g.p(), shift_coords).enumerate() {
            let mut images = Vec::with_capacity(g.dim());
            for j in 0..g.dim() {
                let mut shift = g.zero_vector();
                for (t, b) in center.basis().iter().enumerate() {
                    shift = shift.add(&b.scale(combo.get(j * center.dim() + t)));
                }
                images.push(self.env.image(j).add(&shift));
            }
            let shifted = PStructure::new(&g, images)?;
            let closure = p_closure(&shifted, &image_cols);
            candidates.push((closure.dim(), counter as u64, shifted, closure));
        }
        candidates.sort_by_key(|(dim, counter, _, _)| (*dim, *counter));

        for (_, _, shifted, closure) in &candidates {
            let Some(ideal) = central_complement(&g, &center, closure) else {
                continue;
            };
            let sub_pmap = restrict_p_structure(shifted, closure)?;
            let embed_cols: Vec<VecFp> = image_cols
                .iter()
                .map(|c| {
                    closure
                        .coords(c)
                        .expect("the closure contains the image by construction")
                })
                .collect();
            let embedding = MatFp::from_cols(g.p(), closure.dim(), &embed_cols);
            let sub_envelope = PEnvelope::new(self.base.clone(), sub_pmap, embedding)?;
            if !sub_envelope.check().ok() || !sub_envelope.minimality().minimal {
                continue;
            }
            return Ok(Decomposition {
                sub_envelope,
                sub_space: closure.clone(),
                ideal,
            });
        }
        Err(EnvelopeError::NotFound {
            search_bound: search_space,
        })
    }
}

/// Greedy maximal twist-stable subspace of `pool` with trivial intersection
/// with `avoid`. Finds a nonzero answer whenever one exists, since any such
/// subspace contains a twist-closed line orbit.
fn greedy_stable_avoiding(
    g: &HomLieAlgebra,
    pool: &Subspace,
    avoid: &Subspace,
) -> Result<Subspace, EnvelopeError> {
    let count = gfp::element_count(g.p(), pool.dim());
    if count > gfp::DEFAULT_ELEMENT_BUDGET {
        return Err(EnvelopeError::BudgetExceeded {
            needed: count,
            budget: gfp::DEFAULT_ELEMENT_BUDGET,
        });
    }
    let mut current = Subspace::zero(g.p(), g.dim());
    for candidate in pool.elements() {
        if candidate.is_zero() || current.contains(&candidate) {
            continue;
        }
        // Twist-orbit closure of the candidate on top of what we have.
        let mut gens: Vec<VecFp> = current.basis().to_vec();
        gens.push(candidate);
        let mut orbit = Subspace::span(g.p(), g.dim(), &gens);
        loop {
            let mut next_gens: Vec<VecFp> = orbit.basis().to_vec();
            for v in orbit.basis() {
                next_gens.push(g.apply_alpha(v));
            }
            let next = Subspace::span(g.p(), g.dim(), &next_gens);
            if next == orbit {
                break;
            }
            orbit = next;
        }
        if pool.contains_subspace(&orbit) && orbit.intersect(avoid).is_zero() {
            current = orbit;
        }
    }
    Ok(current)
}

/// Twist-stable ideal inside the center complementing `sub` in G, grown
/// greedily from twist orbits; `None` when the complement cannot be filled.
fn central_complement(
    g: &HomLieAlgebra,
    center: &Subspace,
    sub: &Subspace,
) -> Option<Subspace> {
    let wanted = g.dim() - sub.dim();
    let mut ideal = Subspace::zero(g.p(), g.dim());
    if wanted == 0 {
        return Some(ideal);
    }
    for candidate in center.elements() {
        if candidate.is_zero() {
            continue;
        }
        let mut gens: Vec<VecFp> = ideal.basis().to_vec();
        gens.push(candidate);
        let mut orbit = Subspace::span(g.p(), g.dim(), &gens);
        loop {
            let mut next_gens: Vec<VecFp> = orbit.basis().to_vec();
            for v in orbit.basis() {
                next_gens.push(g.apply_alpha(v));
            }
            let next = Subspace::span(g.p(), g.dim(), &next_gens);
            if next == orbit {
                break;
            }
            orbit = next;
        }
        if !center.contains_subspace(&orbit) || !orbit.intersect(sub).is_zero() {
            continue;
        }
        ideal = orbit;
        if ideal.dim() == wanted {
            break;
        }
    }
    if ideal.dim() != wanted {
        return None;
    }
    // Ideal conditions; for regular twists centrality already forces them.
    if !g.is_sub_or_ideal(&ideal).ideal {
        return None;
    }
    Some(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::restricted::synthesize_p_structure;

    /// ab1 embedded in the shift algebra: the standard non-minimal envelope.
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

    #[test]
    fn shift2_envelope_checks() {
        let e = ab1_in_shift2();
        assert!(e.check().ok());
    }

    #[test]
    fn self_envelopes_check_and_are_minimal() {
        for l in [fixtures::nonab2(2), fixtures::heis3(2)] {
            let e = self_envelope(&l);
            assert!(e.check().ok());
            assert!(e.minimality().minimal);
        }
    }

    #[test]
    fn padded_envelope_fails_closure() {
        // Embedding nonab2 into nonab2 ⊕ ab1 leaves the extra summand
        // unreachable, so the closure condition fails.
        let base = fixtures::nonab2(2);
        let sum = base.direct_sum(&fixtures::ab1(2)).unwrap();
        let pmap = synthesize_p_structure(&sum, &[]).unwrap();
        let mut embed = MatFp::zeros(2, 3, 2);
        embed.set(0, 0, gfp::Scalar::one(2));
        embed.set(1, 1, gfp::Scalar::one(2));
        let e = PEnvelope::new(base, pmap, embed).unwrap();
        let report = e.check();
        assert!(report.embedding_is_morphism && report.embedding_injective);
        assert!(!report.closure_is_everything);
        assert!(!report.ok());
    }

    #[test]
    fn shift2_envelope_not_minimal() {
        let e = ab1_in_shift2();
        let m = e.minimality();
        assert!(!m.minimal);
        assert!(m.base_involutive);
    }

    #[test]
    fn minimize_shift2_envelope() {
        let e = ab1_in_shift2();
        let minimal = e.minimize().unwrap();
        assert_eq!(minimal.restricted().algebra().dim(), 1);
        assert!(minimal.restricted().image(0).is_zero());
        assert!(minimal.check().ok());
        assert!(minimal.minimality().minimal);
    }

    #[test]
    fn minimize_keeps_minimal_envelope() {
        let l = fixtures::heis3(2);
        let e = self_envelope(&l);
        let minimal = e.minimize().unwrap();
        assert_eq!(minimal.restricted().algebra().dim(), 3);
    }

    #[test]
    fn minimize_rejects_non_envelope() {
        let base = fixtures::nonab2(2);
        let sum = base.direct_sum(&fixtures::ab1(2)).unwrap();
        let pmap = synthesize_p_structure(&sum, &[]).unwrap();
        let mut embed = MatFp::zeros(2, 3, 2);
        embed.set(0, 0, gfp::Scalar::one(2));
        embed.set(1, 1, gfp::Scalar::one(2));
        let e = PEnvelope::new(base, pmap, embed).unwrap();
        assert!(matches!(
            e.minimize(),
            Err(EnvelopeError::NotAnEnvelope(_))
        ));
    }

    #[test]
    fn decompose_shift2_envelope() {
        let e = ab1_in_shift2();
        let d = e.decompose().unwrap();
        let g = e.restricted().algebra();
        // H = span{a} with a fresh vanishing p-map, J = span{b}.
        assert_eq!(d.sub_space, Subspace::span(2, 2, &[g.basis_vector(0)]));
        assert_eq!(d.ideal, Subspace::span(2, 2, &[g.basis_vector(1)]));
        assert!(d.sub_envelope.restricted().image(0).is_zero());
        assert!(d.sub_envelope.check().ok());
        assert!(d.sub_envelope.minimality().minimal);
        // Direct sum assertions.
        assert!(d.sub_space.intersect(&d.ideal).is_zero());
        assert_eq!(d.sub_space.sum(&d.ideal).dim(), 2);
    }

    #[test]
    fn decompose_minimal_is_trivial() {
        let e = self_envelope(&fixtures::heis3(2));
        let d = e.decompose().unwrap();
        assert!(d.ideal.is_zero());
        assert_eq!(d.sub_space.dim(), 3);
    }
}
