//! Morphisms of (restricted) Hom-Lie algebras, graph subalgebras, transport
//! of p-structures along morphisms, and associative bilinear forms.

use crate::algebra::{AlgebraError, HomLieAlgebra};
use crate::gfp::{self, GfpError, MatFp, VecFp, DEFAULT_ELEMENT_BUDGET};
use crate::restricted::{
    self, direct_sum_p, is_restrictable, p_flag_check, PStructure, RestrictedError, VerifyMode,
};
use crate::subspace::Subspace;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error(transparent)]
    Field(#[from] GfpError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Restricted(#[from] RestrictedError),
    #[error("source and target moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("matrix shape {rows}x{cols} does not map source dim {source_dim} into target dim {target_dim}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        source_dim: usize,
        target_dim: usize,
    },
    #[error("the map is not a morphism of Hom-Lie algebras")]
    NotAMorphism,
    #[error("a p-structure was supplied for the wrong algebra")]
    WrongAlgebra,
    #[error(
        "pushforward is ill-defined: representatives differing by the kernel have different images"
    )]
    IllDefined { x1: VecFp, x2: VecFp },
    #[error("the kernel meets the preimage, so the map cannot be inverted there")]
    NotInvertibleOnPreimage,
    #[error("a transported image lands outside the image of the preimage")]
    ValueOutsideImage,
    #[error("exhaustive check needs {needed} elements, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
}

/// A linear map between Hom-Lie algebras; column j of `matrix` holds the
/// target coordinates of the image of the j-th source basis vector.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HomMorphism {
    source: HomLieAlgebra,
    target: HomLieAlgebra,
    matrix: MatFp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictedMorphismReport {
    /// Images of basis p-images match p-images of basis images.
    pub basis_ok: bool,
    /// Same over all elements (skipped when over budget).
    pub exhaustive_ok: Option<bool>,
    pub witness: Option<VecFp>,
}

impl RestrictedMorphismReport {
    pub fn is_restricted(&self) -> bool {
        self.basis_ok && self.exhaustive_ok.unwrap_or(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub commutes_with_twists: bool,
    pub preserves_brackets: bool,
    /// First failing basis pair of the bracket check.
    pub bracket_witness: Option<(usize, usize)>,
    pub restricted: Option<RestrictedMorphismReport>,
}

impl MorphismReport {
    pub fn is_morphism(&self) -> bool {
        self.commutes_with_twists && self.preserves_brackets
    }

    pub fn is_restricted_morphism(&self) -> bool {
        self.is_morphism()
            && self
                .restricted
                .as_ref()
                .map(|r| r.is_restricted())
                .unwrap_or(false)
    }
}

/// Agreement record between the graph criterion and the direct restricted
/// morphism check; the two verdicts coincide for genuine p-structures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub graph: Subspace,
    pub graph_is_p_subalgebra: bool,
    pub restricted_morphism: bool,
    pub verdicts_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PushResult {
    /// Image of the source inside the target, in target coordinates.
    pub image: Subspace,
    /// Induced p-structure on the image subalgebra.
    pub pushed: PStructure,
    /// Columns are the image basis vectors in target coordinates.
    pub inclusion: MatFp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PullResult {
    /// Preimage of the subalgebra, in source coordinates.
    pub preimage: Subspace,
    /// Induced p-structure on the preimage subalgebra.
    pub pulled: PStructure,
}

impl HomMorphism {
    pub fn new(
        source: HomLieAlgebra,
        target: HomLieAlgebra,
        matrix: MatFp,
    ) -> Result<Self, MorphismError> {
        if source.p() != target.p() {
            return Err(MorphismError::ModulusMismatch(source.p(), target.p()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() || matrix.p() != source.p()
        {
            return Err(MorphismError::ShapeMismatch {
                rows: matrix.rows(),
                cols: matrix.cols(),
                source_dim: source.dim(),
                target_dim: target.dim(),
            });
        }
        Ok(HomMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(l: &HomLieAlgebra) -> Self {
        HomMorphism {
            source: l.clone(),
            target: l.clone(),
            matrix: MatFp::identity(l.p(), l.dim()),
        }
    }

    pub fn source(&self) -> &HomLieAlgebra {
        &self.source
    }

    pub fn target(&self) -> &HomLieAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &MatFp {
        &self.matrix
    }

    pub fn apply(&self, x: &VecFp) -> VecFp {
        self.matrix.mul_vec(x)
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::kernel_of(&self.matrix)
    }

    pub fn image(&self) -> Subspace {
        let cols: Vec<VecFp> = (0..self.source.dim()).map(|j| self.matrix.col(j)).collect();
        Subspace::span(self.target.p(), self.target.dim(), &cols)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_full()
    }

    /// Morphism conditions on basis pairs, plus (when both p-structures are
    /// supplied) commutation with the p-maps on the basis and over all
    /// elements within budget.
    pub fn check(&self, restricted_with: Option<(&PStructure, &PStructure)>) -> MorphismReport {
        let commutes_with_twists =
            self.matrix.mul(self.source.alpha()) == self.target.alpha().mul(&self.matrix);
        let mut preserves_brackets = true;
        let mut bracket_witness = None;
        'outer: for i in 0..self.source.dim() {
            for j in 0..self.source.dim() {
                let lhs = self.apply(self.source.bracket_basis(i, j));
                let rhs = self
                    .target
                    .bracket(&self.matrix.col(i), &self.matrix.col(j));
                if lhs != rhs {
                    preserves_brackets = false;
                    bracket_witness = Some((i, j));
                    break 'outer;
                }
            }
        }
        let restricted = restricted_with.map(|(ps, pt)| {
            if ps.algebra() != &self.source || pt.algebra() != &self.target {
                return RestrictedMorphismReport {
                    basis_ok: false,
                    exhaustive_ok: Some(false),
                    witness: None,
                };
            }
            let mut basis_ok = true;
            let mut witness = None;
            for j in 0..self.source.dim() {
                let lhs = self.apply(ps.image(j));
                let rhs = pt.eval(&self.matrix.col(j));
                if lhs != rhs {
                    basis_ok = false;
                    witness = Some(self.source.basis_vector(j));
                    break;
                }
            }
            let count = self.source.element_count();
            let exhaustive_ok = if count <= DEFAULT_ELEMENT_BUDGET {
                let mut ok = true;
                for x in self.source.elements() {
                    if self.apply(&ps.eval(&x)) != pt.eval(&self.apply(&x)) {
                        ok = false;
                        if witness.is_none() {
                            witness = Some(x);
                        }
                        break;
                    }
                }
                Some(ok)
            } else {
                None
            };
            RestrictedMorphismReport {
                basis_ok,
                exhaustive_ok,
                witness,
            }
        });
        MorphismReport {
            commutes_with_twists,
            preserves_brackets,
            bracket_witness,
            restricted,
        }
    }
}

/// Builds the graph of the map inside the direct sum carrying the blockwise
/// p-structure and compares its p-subalgebra verdict with the direct
/// restricted-morphism verdict.
pub fn graph_check(
    phi: &HomMorphism,
    p_source: &PStructure,
    p_target: &PStructure,
) -> Result<GraphReport, MorphismError> {
    if p_source.algebra() != phi.source() || p_target.algebra() != phi.target() {
        return Err(MorphismError::WrongAlgebra);
    }
    let sum_p = direct_sum_p(p_source, p_target)?;
    let sum = sum_p.algebra();
    let sdim = phi.source().dim();
    let tdim = phi.target().dim();
    let mut gens = Vec::with_capacity(sdim);
    for j in 0..sdim {
        let mut v = VecFp::zeros(sum.p(), sdim + tdim);
        v.set(j, gfp::Scalar::one(sum.p()));
        let img = phi.matrix().col(j);
        for t in 0..tdim {
            v.set(sdim + t, img.get(t));
        }
        gens.push(v);
    }
    let graph = Subspace::span(sum.p(), sdim + tdim, &gens);
    let graph_is_p_subalgebra = p_flag_check(&sum_p, &graph).p_subalgebra;
    let restricted_morphism = phi
        .check(Some((p_source, p_target)))
        .is_restricted_morphism();
    Ok(GraphReport {
        graph,
        graph_is_p_subalgebra,
        restricted_morphism,
        verdicts_agree: graph_is_p_subalgebra == restricted_morphism,
    })
}

/// Transports a p-structure to the image subalgebra: f(x) -> f(x^[p]).
/// The map is only well defined when representatives modulo the kernel push
/// to the same value, which is checked exhaustively before constructing the
/// result.
pub fn push_p(f: &HomMorphism, pmap: &PStructure) -> Result<PushResult, MorphismError> {
    if pmap.algebra() != f.source() {
        return Err(MorphismError::WrongAlgebra);
    }
    if !f.check(None).is_morphism() {
        return Err(MorphismError::NotAMorphism);
    }
    let kernel = f.kernel();
    if !kernel.is_zero() {
        let count = f
            .source()
            .element_count()
            .saturating_mul(gfp::element_count(f.source().p(), kernel.dim()));
        if count > DEFAULT_ELEMENT_BUDGET {
            return Err(MorphismError::BudgetExceeded {
                needed: count,
                budget: DEFAULT_ELEMENT_BUDGET,
            });
        }
        for x in f.source().elements() {
            let base = f.apply(&pmap.eval(&x));
            for k in kernel.elements() {
                if k.is_zero() {
                    continue;
                }
                let shifted = x.add(&k);
                if f.apply(&pmap.eval(&shifted)) != base {
                    return Err(MorphismError::IllDefined {
                        x1: x,
                        x2: shifted,
                    });
                }
            }
        }
    }
    let image = f.image();
    let (image_algebra, inclusion) = f.target().restrict_to_subalgebra(&image)?;
    let mut images = Vec::with_capacity(image.dim());
    for w in image.basis() {
        // Any preimage works once well-definedness has been established.
        let pre = gfp::solve_affine(f.matrix(), w)?
            .particular
            .expect("basis vectors of the image are in the image");
        let pushed_value = f.apply(&pmap.eval(&pre));
        let coords = image
            .coords(&pushed_value)
            .ok_or(MorphismError::ValueOutsideImage)?;
        images.push(coords);
    }
    let pushed = PStructure::new(&image_algebra, images)?;
    Ok(PushResult {
        image,
        pushed,
        inclusion,
    })
}

/// Pulls a p-structure on a subalgebra of the target back to its preimage:
/// x -> f^{-1}(f(x)^[p]). Requires the map to be invertible where the formula
/// needs it, i.e. the kernel may not meet the preimage.
pub fn pull_p(
    f: &HomMorphism,
    sub: &Subspace,
    q: &PStructure,
) -> Result<PullResult, MorphismError> {
    if !f.check(None).is_morphism() {
        return Err(MorphismError::NotAMorphism);
    }
    let (sub_algebra, _) = f.target().restrict_to_subalgebra(sub)?;
    if q.algebra() != &sub_algebra {
        return Err(MorphismError::WrongAlgebra);
    }
    // Preimage = kernel of (reduce modulo sub) ∘ f.
    let n = f.source().dim();
    let reduced_cols: Vec<VecFp> = (0..n).map(|j| sub.reduce(&f.matrix().col(j))).collect();
    let reduced = MatFp::from_cols(f.source().p(), f.target().dim(), &reduced_cols);
    let preimage = Subspace::kernel_of(&reduced);
    if !f.kernel().intersect(&preimage).is_zero() {
        return Err(MorphismError::NotInvertibleOnPreimage);
    }
    let (pre_algebra, _) = f.source().restrict_to_subalgebra(&preimage)?;
    let mut images = Vec::with_capacity(preimage.dim());
    for v in preimage.basis() {
        let fv = f.apply(v);
        let fv_coords = sub
            .coords(&fv)
            .expect("preimage basis maps into the subalgebra by construction");
        let q_value = sub.from_coords(&q.eval(&fv_coords));
        let sol = gfp::solve_affine(f.matrix(), &q_value)?;
        let Some(pre) = sol.particular else {
            return Err(MorphismError::ValueOutsideImage);
        };
        let coords = preimage
            .coords(&pre)
            .ok_or(MorphismError::ValueOutsideImage)?;
        images.push(coords);
    }
    let pulled = PStructure::new(&pre_algebra, images)?;
    Ok(PullResult { preimage, pulled })
}

/// Symmetric bilinear form on an algebra, given by its Gram matrix.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BilinearForm {
    matrix: MatFp,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("the form matrix must be symmetric")]
    NotSymmetric,
    #[error("the form matrix must be n x n over the algebra's field")]
    ShapeMismatch,
}

impl BilinearForm {
    pub fn new(l: &HomLieAlgebra, matrix: MatFp) -> Result<Self, FormError> {
        if matrix.rows() != l.dim() || matrix.cols() != l.dim() || matrix.p() != l.p() {
            return Err(FormError::ShapeMismatch);
        }
        if matrix != matrix.transpose() {
            return Err(FormError::NotSymmetric);
        }
        Ok(BilinearForm { matrix })
    }

    pub fn matrix(&self) -> &MatFp {
        &self.matrix
    }

    pub fn pair(&self, x: &VecFp, y: &VecFp) -> gfp::Scalar {
        let mut acc = gfp::Scalar::zero(self.matrix.p());
        for i in 0..self.matrix.rows() {
            for j in 0..self.matrix.cols() {
                acc = acc.add(x.get(i).mul(self.matrix.get(i, j)).mul(y.get(j)));
            }
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormReport {
    /// form(x, [y, z]) = form([x, alpha^(p-1) y], z) on all basis triples.
    pub associative: bool,
    pub associativity_witness: Option<(usize, usize, usize)>,
    pub nondegenerate: bool,
    pub center_trivial: bool,
    /// When the form is associative and nondegenerate and the twisted center
    /// vanishes, restrictability follows; the cross-checked decision is
    /// recorded here.
    pub forces_restrictable: bool,
    pub restrictable: Option<bool>,
    /// Validity of the supplied p-structure, when one was given.
    pub supplied_pmap_ok: Option<bool>,
}

/// Checks associativity against the twisted argument, nondegeneracy by rank,
/// and records the restrictability consequence when the hypotheses hold.
pub fn form_report(
    l: &HomLieAlgebra,
    form: &BilinearForm,
    pmap: Option<&PStructure>,
) -> Result<FormReport, MorphismError> {
    let twist = l.alpha_power(l.p() - 1);
    let mut associative = true;
    let mut associativity_witness = None;
    'outer: for i in 0..l.dim() {
        for j in 0..l.dim() {
            for k in 0..l.dim() {
                let lhs = form.pair(&l.basis_vector(i), l.bracket_basis(j, k));
                let twisted_j = twist.mul_vec(&l.basis_vector(j));
                let rhs = form.pair(
                    &l.bracket(&l.basis_vector(i), &twisted_j),
                    &l.basis_vector(k),
                );
                if lhs != rhs {
                    associative = false;
                    associativity_witness = Some((i, j, k));
                    break 'outer;
                }
            }
        }
    }
    let nondegenerate = form.matrix().rank() == l.dim();
    let center_trivial = l.center().is_zero();
    let forces_restrictable = associative && nondegenerate && center_trivial;
    let restrictable = if forces_restrictable {
        Some(is_restrictable(l).decision)
    } else {
        None
    };
    let supplied_pmap_ok = match pmap {
        Some(p) if p.algebra() == l => {
            Some(restricted::verify_p_structure(p, VerifyMode::Basis)?.ok)
        }
        Some(_) => return Err(MorphismError::WrongAlgebra),
        None => None,
    };
    Ok(FormReport {
        associative,
        associativity_witness,
        nondegenerate,
        center_trivial,
        forces_restrictable,
        restrictable,
        supplied_pmap_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::restricted::synthesize_p_structure;

    #[test]
    fn identity_is_restricted_morphism() {
        let l = fixtures::nonab2(2);
        let pmap = synthesize_p_structure(&l, &[]).unwrap();
        let id = HomMorphism::identity(&l);
        let report = id.check(Some((&pmap, &pmap)));
        assert!(report.is_morphism());
        assert!(report.is_restricted_morphism());
    }

    #[test]
    fn bracket_violation_detected() {
        let l = fixtures::nonab2(2);
        // h -> h, x -> h collapses the bracket incorrectly.
        let m = MatFp::from_rows(2, &[vec![1, 1], vec![0, 0]]);
        let f = HomMorphism::new(l.clone(), l, m).unwrap();
        let report = f.check(None);
        assert!(report.commutes_with_twists);
        assert!(!report.preserves_brackets);
        assert_eq!(report.bracket_witness, Some((0, 1)));
    }

    #[test]
    fn quotient_projection_is_morphism() {
        let heis = fixtures::heis3(2);
        let span_z = Subspace::span(2, 3, &[heis.basis_vector(2)]);
        let (_, proj) = heis.quotient(&span_z).unwrap();
        assert!(proj.check(None).is_morphism());
        assert!(proj.is_surjective());
    }

    #[test]
    fn graph_agreement_on_identity() {
        let l = fixtures::nonab2(2);
        let pmap = synthesize_p_structure(&l, &[]).unwrap();
        let id = HomMorphism::identity(&l);
        let report = graph_check(&id, &pmap, &pmap).unwrap();
        assert!(report.graph_is_p_subalgebra);
        assert!(report.restricted_morphism);
        assert!(report.verdicts_agree);
    }

    #[test]
    fn graph_agreement_on_non_restricted_map() {
        // Identity between two different p-structures on heis3 is a morphism
        // but not restricted; the graph criterion must agree.
        let l = fixtures::heis3(2);
        let p1 = PStructure::new(
            &l,
            vec![l.basis_vector(2), l.zero_vector(), l.zero_vector()],
        )
        .unwrap();
        let p2 = PStructure::new(&l, vec![l.zero_vector(); 3]).unwrap();
        let id = HomMorphism::identity(&l);
        let report = graph_check(&id, &p1, &p2).unwrap();
        assert!(!report.restricted_morphism);
        assert!(!report.graph_is_p_subalgebra);
        assert!(report.verdicts_agree);

        // The zero map between the same pair is restricted: phi(e^[2]) =
        // phi(z) = 0 = (phi e)^[2].
        let zero = HomMorphism::new(l.clone(), l.clone(), MatFp::zeros(2, 3, 3)).unwrap();
        let zr = graph_check(&zero, &p1, &p2).unwrap();
        assert!(zr.restricted_morphism);
        assert!(zr.graph_is_p_subalgebra);
        assert!(zr.verdicts_agree);
    }

    #[test]
    fn push_through_quotient() {
        let heis = fixtures::heis3(2);
        let span_z = Subspace::span(2, 3, &[heis.basis_vector(2)]);
        let (_, proj) = heis.quotient(&span_z).unwrap();
        let pmap = PStructure::new(
            &heis,
            vec![heis.basis_vector(2), heis.zero_vector(), heis.zero_vector()],
        )
        .unwrap();
        let pushed = push_p(&proj, &pmap).unwrap();
        assert!(pushed.image.is_full());
        assert!(pushed.pushed.images().iter().all(|v| v.is_zero()));
        assert!(pushed
            .pushed
            .verify(VerifyMode::Exhaustive)
            .unwrap()
            .ok);
    }

    #[test]
    fn push_identity_keeps_structure() {
        let l = fixtures::nonab2(2);
        let pmap = synthesize_p_structure(&l, &[]).unwrap();
        let pushed = push_p(&HomMorphism::identity(&l), &pmap).unwrap();
        assert_eq!(pushed.pushed.images(), pmap.images());
    }

    #[test]
    fn push_ill_defined_on_diagonal_quotient() {
        let (g, shift) = fixtures::shift2();
        let diag = Subspace::span(2, 2, &[VecFp::from_entries(2, &[1, 1])]);
        let (_, proj) = g.quotient(&diag).unwrap();
        match push_p(&proj, &shift) {
            Err(MorphismError::IllDefined { x1, x2 }) => {
                assert_eq!(x1.add(&x2), VecFp::from_entries(2, &[1, 1]));
            }
            other => panic!("expected ill-defined, got {other:?}"),
        }
    }

    #[test]
    fn pull_through_identity() {
        let l = fixtures::nonab2(2);
        let span_h = Subspace::span(2, 2, &[l.basis_vector(0)]);
        let (sub_algebra, _) = l.restrict_to_subalgebra(&span_h).unwrap();
        let q = PStructure::new(&sub_algebra, vec![sub_algebra.basis_vector(0)]).unwrap();
        let pulled = pull_p(&HomMorphism::identity(&l), &span_h, &q).unwrap();
        assert_eq!(pulled.preimage, span_h);
        assert_eq!(pulled.pulled.image(0), &pulled.pulled.algebra().basis_vector(0));
        assert!(pulled.pulled.verify(VerifyMode::Exhaustive).unwrap().ok);
    }

    #[test]
    fn pull_rejects_kernel_meeting_preimage() {
        let l = fixtures::proj_twist2(2);
        let zero_map = HomMorphism::new(l.clone(), l.clone(), MatFp::zeros(2, 2, 2)).unwrap();
        let full = Subspace::full(2, 2);
        let q = PStructure::new(&l, vec![l.zero_vector(); 2]).unwrap();
        assert!(matches!(
            pull_p(&zero_map, &full, &q),
            Err(MorphismError::NotInvertibleOnPreimage)
        ));
    }

    #[test]
    fn form_on_nonab2() {
        let l = fixtures::nonab2(2);
        let form = BilinearForm::new(&l, MatFp::from_rows(2, &[vec![1, 0], vec![0, 0]])).unwrap();
        let report = form_report(&l, &form, None).unwrap();
        assert!(report.associative);
        assert!(!report.nondegenerate);
    }

    #[test]
    fn zero_and_full_forms() {
        let l = fixtures::nonab2(2);
        let zero = BilinearForm::new(&l, MatFp::zeros(2, 2, 2)).unwrap();
        let rz = form_report(&l, &zero, None).unwrap();
        assert!(rz.associative && !rz.nondegenerate);

        let ab = fixtures::ab1(2);
        let unit = BilinearForm::new(&ab, MatFp::identity(2, 1)).unwrap();
        let ru = form_report(&ab, &unit, None).unwrap();
        assert!(ru.associative && ru.nondegenerate);
        // Center is everything, so the restrictability hook stays silent.
        assert!(!ru.forces_restrictable);
    }

    #[test]
    fn asymmetric_form_rejected() {
        let l = fixtures::nonab2(2);
        let m = MatFp::from_rows(2, &[vec![0, 1], vec![0, 0]]);
        assert!(matches!(
            BilinearForm::new(&l, m),
            Err(FormError::NotSymmetric)
        ));
    }
}
