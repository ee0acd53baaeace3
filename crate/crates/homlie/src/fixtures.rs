//! Small named algebras used throughout the tests, the oracle suite and the
//! bundled example files, plus the full matrix-algebra construction.

use crate::algebra::{AlgebraError, HomLieAlgebra};
use crate::gfp::{MatFp, Scalar, VecFp};
use crate::restricted::PStructure;

/// Abelian algebra of dimension n with identity twist; names a1..an.
pub fn ab(p: u32, n: usize) -> HomLieAlgebra {
    let names = if n == 1 {
        vec!["a".to_string()]
    } else {
        (1..=n).map(|i| format!("a{i}")).collect()
    };
    HomLieAlgebra::from_bracket_pairs(p, names, &[], MatFp::identity(p, n))
        .expect("abelian construction is well-formed")
}

/// One-dimensional abelian algebra, basis name `a`.
pub fn ab1(p: u32) -> HomLieAlgebra {
    ab(p, 1)
}

/// The two-dimensional nonabelian algebra: basis h, x with [h, x] = x and
/// identity twist.
pub fn nonab2(p: u32) -> HomLieAlgebra {
    HomLieAlgebra::from_bracket_pairs(
        p,
        vec!["h".into(), "x".into()],
        &[(0, 1, VecFp::from_entries(p, &[0, 1]))],
        MatFp::identity(p, 2),
    )
    .expect("nonab2 construction is well-formed")
}

/// The twist of `nonab2` by the projection h -> h, x -> 0: the bracket
/// collapses to zero and the twist is singular, so the result is abelian,
/// multiplicative and not regular.
pub fn proj_twist2(p: u32) -> HomLieAlgebra {
    let a = MatFp::from_rows(p, &[vec![1, 0], vec![0, 0]]);
    nonab2(p)
        .yau_twist(&a)
        .expect("projection is a bracket morphism of nonab2")
}

/// Heisenberg algebra: basis e, f, z with [e, f] = z, identity twist.
pub fn heis3(p: u32) -> HomLieAlgebra {
    HomLieAlgebra::from_bracket_pairs(
        p,
        vec!["e".into(), "f".into(), "z".into()],
        &[(0, 1, VecFp::from_entries(p, &[0, 0, 1]))],
        MatFp::identity(p, 3),
    )
    .expect("heis3 construction is well-formed")
}

/// Three-dimensional algebra over GF(2) that admits no p-structure:
/// basis x, u, v with [x, u] = v, [x, v] = u + v, identity twist.
/// The square of ad(x) on span{u, v} escapes the span of ad-images.
pub fn nr3() -> HomLieAlgebra {
    HomLieAlgebra::from_bracket_pairs(
        2,
        vec!["x".into(), "u".into(), "v".into()],
        &[
            (0, 1, VecFp::from_entries(2, &[0, 0, 1])),
            (0, 2, VecFp::from_entries(2, &[0, 1, 1])),
        ],
        MatFp::identity(2, 3),
    )
    .expect("nr3 construction is well-formed")
}

/// Two-dimensional abelian restricted algebra over GF(2) whose p-map shifts
/// the basis: a -> b -> 0. The p-closure of span{a} is everything, which
/// makes it the standard envelope example.
pub fn shift2() -> (HomLieAlgebra, PStructure) {
    let l = HomLieAlgebra::from_bracket_pairs(
        2,
        vec!["a".into(), "b".into()],
        &[],
        MatFp::identity(2, 2),
    )
    .expect("shift2 construction is well-formed");
    let images = vec![VecFp::from_entries(2, &[0, 1]), VecFp::zeros(2, 2)];
    let pmap = PStructure::new(&l, images).expect("images have the right shape");
    (l, pmap)
}

/// The full m x m matrix algebra under the commutator, twisted by
/// conjugation with `s`, together with its p-structure
/// e_j -> alpha^(p-1)(e_j^p) built from the matrix p-th power.
///
/// Basis entries are E{r}{c} (1-indexed), column-major over the unit
/// matrices, and the twist A -> s A s^{-1} is always a bracket morphism.
pub fn gl_example(
    m: usize,
    p: u32,
    s: &MatFp,
) -> Result<(HomLieAlgebra, PStructure), AlgebraError> {
    let s_inv = s.inverse().ok_or(AlgebraError::Singular)?;
    let n = m * m;
    let names: Vec<String> = (0..n)
        .map(|idx| format!("E{}{}", idx / m + 1, idx % m + 1))
        .collect();

    let unit = |idx: usize| -> MatFp {
        let mut e = MatFp::zeros(p, m, m);
        e.set(idx / m, idx % m, Scalar::one(p));
        e
    };
    let to_coords = |mat: &MatFp| -> VecFp {
        let mut v = VecFp::zeros(p, n);
        for r in 0..m {
            for c in 0..m {
                v.set(r * m + c, mat.get(r, c));
            }
        }
        v
    };
    let conj = |mat: &MatFp| -> MatFp { s.mul(mat).mul(&s_inv) };

    // Ordinary Lie algebra gl_m with the commutator bracket, twist = id.
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let (ei, ej) = (unit(i), unit(j));
            let comm = ei.mul(&ej).sub(&ej.mul(&ei));
            pairs.push((i, j, to_coords(&comm)));
        }
    }
    let lie = HomLieAlgebra::from_bracket_pairs(p, names, &pairs, MatFp::identity(p, n))?;

    // Conjugation as a matrix acting on coordinates.
    let mut alpha = MatFp::zeros(p, n, n);
    for j in 0..n {
        let col = to_coords(&conj(&unit(j)));
        for r in 0..n {
            alpha.set(r, j, col.get(r));
        }
    }
    let twisted = lie.yau_twist(&alpha)?;

    // p-structure on basis entries: twist^(p-1) of the matrix p-th power.
    let alpha_pow = twisted.alpha_power(p - 1);
    let images: Vec<VecFp> = (0..n)
        .map(|j| alpha_pow.mul_vec(&to_coords(&unit(j).pow(p))))
        .collect();
    let pmap = PStructure::new(&twisted, images)
        .expect("image coordinates match the algebra dimension");
    Ok((twisted, pmap))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_well_formed() {
        for l in [
            ab1(2),
            ab(3, 2),
            nonab2(2),
            nonab2(3),
            proj_twist2(2),
            heis3(2),
            heis3(3),
            nr3(),
            shift2().0,
        ] {
            assert!(
                l.axiom_report().is_multiplicative_hom_lie(),
                "fixture failed axioms"
            );
        }
    }

    #[test]
    fn gl2_identity_conjugation() {
        let (l, pmap) = gl_example(2, 2, &MatFp::identity(2, 2)).unwrap();
        assert_eq!(l.dim(), 4);
        assert!(l.axiom_report().is_multiplicative_hom_lie());
        // With s = I the p-structure squares matrices: E11^2 = E11, E12^2 = 0.
        assert_eq!(pmap.images()[0], l.basis_vector(0));
        assert!(pmap.images()[1].is_zero());
    }

    #[test]
    fn gl1_is_abelian_with_frobenius() {
        let (l, pmap) = gl_example(1, 3, &MatFp::identity(3, 1)).unwrap();
        assert!(l.axiom_report().abelian);
        // a^3 = a in the 1-dimensional matrix algebra.
        assert_eq!(pmap.images()[0], l.basis_vector(0));
    }

    #[test]
    fn gl_rejects_singular_conjugator() {
        let s = MatFp::zeros(2, 2, 2);
        assert!(matches!(gl_example(2, 2, &s), Err(AlgebraError::Singular)));
    }
}
