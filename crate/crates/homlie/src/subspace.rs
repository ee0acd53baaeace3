//! Subspaces of GF(p)^n in canonical reduced-echelon form.
//!
//! Centers, centralizers, ideals, graphs, series terms and fixed-point sets
//! are all carried around as `Subspace` values. The basis is always the
//! reduced echelon basis, so equal subspaces compare equal structurally.

use crate::gfp::{all_vectors, MatFp, Scalar, VecFp};
use serde::Serialize;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Subspace {
    p: u32,
    ambient: usize,
    /// Rows of the canonical reduced-echelon basis; no zero rows.
    basis: Vec<VecFp>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        Subspace::span(p, ambient, &(0..ambient).map(|i| VecFp::unit(p, ambient, i)).collect::<Vec<_>>())
    }

    /// Canonicalizes the span of the given vectors.
    pub fn span(p: u32, ambient: usize, vectors: &[VecFp]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length differs from ambient dim");
            assert_eq!(v.p(), p, "modulus mismatch");
        }
        if vectors.is_empty() {
            return Subspace::zero(p, ambient);
        }
        let mut m = MatFp::zeros(p, vectors.len(), ambient);
        for (i, v) in vectors.iter().enumerate() {
            for j in 0..ambient {
                m.set(i, j, v.get(j));
            }
        }
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        Subspace {
            p,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[VecFp] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `v` modulo this subspace: the pivot
    /// coordinates are eliminated, leaving a vector supported away from them.
    pub fn reduce(&self, v: &VecFp) -> VecFp {
        let mut out = v.clone();
        for (row, &pc) in self.pivots.iter().enumerate() {
            let c = out.get(pc);
            if !c.is_zero() {
                out = out.sub(&self.basis[row].scale(c));
            }
        }
        out
    }

    pub fn contains(&self, v: &VecFp) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coords(&self, v: &VecFp) -> Option<VecFp> {
        if !self.contains(v) {
            return None;
        }
        let mut c = VecFp::zeros(self.p, self.dim());
        for (row, &pc) in self.pivots.iter().enumerate() {
            c.set(row, v.get(pc));
        }
        Some(c)
    }

    /// Reconstructs the ambient vector with the given basis coordinates.
    pub fn from_coords(&self, c: &VecFp) -> VecFp {
        assert_eq!(c.len(), self.dim());
        let mut out = VecFp::zeros(self.p, self.ambient);
        for (row, b) in self.basis.iter().enumerate() {
            out = out.add(&b.scale(c.get(row)));
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.p, self.ambient, &vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let d1 = self.dim();
        let d2 = other.dim();
        if d1 == 0 || d2 == 0 {
            return Subspace::zero(self.p, self.ambient);
        }
        // Columns are the two bases; kernel elements (a, b) encode
        // sum(a_i u_i) = sum(b_j w_j), i.e. intersection members.
        let mut m = MatFp::zeros(self.p, self.ambient, d1 + d2);
        for (i, u) in self.basis.iter().enumerate() {
            for r in 0..self.ambient {
                m.set(r, i, u.get(r));
            }
        }
        for (j, w) in other.basis.iter().enumerate() {
            for r in 0..self.ambient {
                m.set(r, d1 + j, w.get(r).neg());
            }
        }
        let mut members = Vec::new();
        for kv in m.kernel_basis() {
            let mut x = VecFp::zeros(self.p, self.ambient);
            for (i, u) in self.basis.iter().enumerate() {
                x = x.add(&u.scale(kv.get(i)));
            }
            members.push(x);
        }
        Subspace::span(self.p, self.ambient, &members)
    }

    /// Image of this subspace under a linear map given by `m` (columns act on
    /// ambient coordinates).
    pub fn apply_map(&self, m: &MatFp) -> Subspace {
        let images: Vec<VecFp> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(self.p, m.rows(), &images)
    }

    /// Every element of the subspace; p^dim of them, coordinate 0 of the
    /// internal basis varying fastest.
    pub fn elements(&self) -> Vec<VecFp> {
        all_vectors(self.p, self.dim())
            .map(|c| self.from_coords(&c))
            .collect()
    }

    /// Whether `m · v` stays inside the subspace for every basis vector.
    pub fn stable_under(&self, m: &MatFp) -> bool {
        self.basis.iter().all(|v| self.contains(&m.mul_vec(v)))
    }

    /// The standard-basis complement read off the echelon pivots: unit
    /// vectors at the non-pivot coordinates.
    pub fn pivot_complement(&self) -> Vec<VecFp> {
        (0..self.ambient)
            .filter(|i| !self.pivots.contains(i))
            .map(|i| VecFp::unit(self.p, self.ambient, i))
            .collect()
    }

    /// Kernel of a matrix as a subspace of its column space domain.
    pub fn kernel_of(m: &MatFp) -> Subspace {
        Subspace::span(m.p(), m.cols(), &m.kernel_basis())
    }

    pub fn scalar_one(&self) -> Scalar {
        Scalar::one(self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::VecFp;

    #[test]
    fn span_canonicalizes() {
        let a = Subspace::span(
            2,
            3,
            &[
                VecFp::from_entries(2, &[1, 1, 0]),
                VecFp::from_entries(2, &[0, 1, 1]),
            ],
        );
        let b = Subspace::span(
            2,
            3,
            &[
                VecFp::from_entries(2, &[1, 0, 1]),
                VecFp::from_entries(2, &[0, 1, 1]),
            ],
        );
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn membership_and_coords() {
        let s = Subspace::span(
            3,
            3,
            &[
                VecFp::from_entries(3, &[1, 0, 2]),
                VecFp::from_entries(3, &[0, 1, 1]),
            ],
        );
        let v = VecFp::from_entries(3, &[2, 1, 2]);
        assert!(s.contains(&v));
        let c = s.coords(&v).unwrap();
        assert_eq!(s.from_coords(&c), v);
        assert!(!s.contains(&VecFp::from_entries(3, &[0, 0, 1])));
    }

    #[test]
    fn sum_and_intersection() {
        let u = Subspace::span(2, 3, &[VecFp::from_entries(2, &[1, 0, 0])]);
        let w = Subspace::span(
            2,
            3,
            &[
                VecFp::from_entries(2, &[1, 1, 0]),
                VecFp::from_entries(2, &[0, 0, 1]),
            ],
        );
        let s = u.sum(&w);
        assert_eq!(s.dim(), 3);
        let i = u.intersect(&w);
        assert!(i.is_zero());

        let w2 = Subspace::span(
            2,
            3,
            &[
                VecFp::from_entries(2, &[1, 0, 0]),
                VecFp::from_entries(2, &[0, 1, 1]),
            ],
        );
        let i2 = u.intersect(&w2);
        assert_eq!(i2, u);
    }

    #[test]
    fn elements_enumeration() {
        let s = Subspace::span(
            2,
            3,
            &[
                VecFp::from_entries(2, &[1, 0, 1]),
                VecFp::from_entries(2, &[0, 1, 0]),
            ],
        );
        let els = s.elements();
        assert_eq!(els.len(), 4);
        assert!(els.iter().all(|v| s.contains(v)));
    }

    #[test]
    fn pivot_complement_spans_rest() {
        let s = Subspace::span(2, 3, &[VecFp::from_entries(2, &[0, 1, 1])]);
        let comp = s.pivot_complement();
        assert_eq!(comp.len(), 2);
        let total = s.sum(&Subspace::span(2, 3, &comp));
        assert!(total.is_full());
    }
}
