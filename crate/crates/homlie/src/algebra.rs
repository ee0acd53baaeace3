//! The Hom-Lie algebra data model and its structural operations.
//!
//! An algebra is a prime p, a basis with names, a table of structure
//! constants for the bracket, and a twist matrix. Everything is finite
//! dimensional over GF(p) and all checks are exhaustive over basis tuples,
//! which suffices by multilinearity.

use crate::gfp::{self, all_vectors, GfpError, MatFp, Scalar, VecFp};
use crate::morphisms::HomMorphism;
use crate::subspace::Subspace;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] GfpError),
    #[error("desk-scale limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("malformed structure constants: {0}")]
    Malformed(String),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("the twist candidate is not a bracket morphism (pair {0}, {1})")]
    NotALieMorphism(usize, usize),
    #[error("the base algebra must satisfy the ordinary Lie axioms, found violation: {0}")]
    NotALieAlgebra(String),
    #[error("matrix is singular")]
    Singular,
    #[error("the given subspace is not an ideal")]
    NotAnIdeal,
    #[error("the given subspace is not a subalgebra")]
    NotASubalgebra,
}

/// Desk-scale caps. The defaults keep every exhaustive routine cheap; callers
/// that know better can lift them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_prime: u32,
    pub max_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_prime: gfp::DEFAULT_MAX_PRIME,
            max_dim: 16,
        }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits {
            max_prime: u32::MAX,
            max_dim: usize::MAX,
        }
    }
}

/// A finite-dimensional algebra (L, [.,.], alpha) over GF(p).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HomLieAlgebra {
    p: u32,
    dim: usize,
    names: Vec<String>,
    /// brackets[i][j] = coordinates of [e_i, e_j].
    brackets: Vec<Vec<VecFp>>,
    /// Column j = coordinates of alpha(e_j).
    alpha: MatFp,
}

/// One failed axiom check with the basis indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub indices: Vec<usize>,
}

/// Flags for every axiom, each computed independently by exhaustive basis
/// checks; `counterexample` records the first failure in check order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub alternating: bool,
    pub hom_jacobi: bool,
    pub multiplicative: bool,
    pub regular: bool,
    pub involutive: bool,
    pub abelian: bool,
    pub counterexample: Option<Counterexample>,
}

impl AxiomReport {
    /// The well-formedness gate used by parsers and constructors from raw
    /// data: bracket is alternating, Hom-Jacobi holds, twist is a morphism.
    pub fn is_multiplicative_hom_lie(&self) -> bool {
        self.alternating && self.hom_jacobi && self.multiplicative
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdMode {
    /// Matrix of y -> [x, y].
    Plain,
    /// ad(x) composed with the (p-1)-th twist power.
    AlphaTwisted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralizerMode {
    /// Vanishing brackets against twisted arguments: [x, alpha^(p-1)(y)] = 0.
    AlphaTwisted,
    /// Plain vanishing brackets: [x, y] = 0.
    Ordinary,
}

/// Terms of the descending central series with the nilpotency verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub terms: Vec<Subspace>,
    pub nilpotent: bool,
    /// First k (1-based) with L^k = 0, when the series reaches zero.
    pub class: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubIdealReport {
    pub subalgebra: bool,
    pub ideal: bool,
}

impl HomLieAlgebra {
    /// Builds an algebra from a full structure-constant table. Only shape and
    /// residue consistency are enforced here; axiom violations are the
    /// business of [`HomLieAlgebra::axiom_report`].
    pub fn from_structure_constants(
        p: u32,
        names: Vec<String>,
        brackets: Vec<Vec<VecFp>>,
        alpha: MatFp,
    ) -> Result<Self, AlgebraError> {
        Self::from_structure_constants_with_limits(p, names, brackets, alpha, Limits::default())
    }

    pub fn from_structure_constants_with_limits(
        p: u32,
        names: Vec<String>,
        brackets: Vec<Vec<VecFp>>,
        alpha: MatFp,
        limits: Limits,
    ) -> Result<Self, AlgebraError> {
        gfp::validate_prime(p)?;
        if p > limits.max_prime {
            return Err(AlgebraError::LimitExceeded(format!(
                "p = {p} exceeds cap {}",
                limits.max_prime
            )));
        }
        let dim = names.len();
        if dim > limits.max_dim {
            return Err(AlgebraError::LimitExceeded(format!(
                "dim = {dim} exceeds cap {}",
                limits.max_dim
            )));
        }
        if brackets.len() != dim || brackets.iter().any(|row| row.len() != dim) {
            return Err(AlgebraError::Malformed(format!(
                "bracket table must be {dim} x {dim}"
            )));
        }
        for row in &brackets {
            for v in row {
                if v.len() != dim {
                    return Err(AlgebraError::Malformed(
                        "bracket coordinates must have the algebra dimension".into(),
                    ));
                }
                if v.p() != p {
                    return Err(AlgebraError::ModulusMismatch(v.p(), p));
                }
            }
        }
        if alpha.rows() != dim || alpha.cols() != dim {
            return Err(AlgebraError::Malformed("twist matrix must be n x n".into()));
        }
        if alpha.p() != p {
            return Err(AlgebraError::ModulusMismatch(alpha.p(), p));
        }
        {
            let mut seen = names.clone();
            seen.sort();
            seen.dedup();
            if seen.len() != dim {
                return Err(AlgebraError::Malformed("duplicate basis names".into()));
            }
        }
        Ok(HomLieAlgebra {
            p,
            dim,
            names,
            brackets,
            alpha,
        })
    }

    /// Convenience constructor from sparse upper-triangular bracket data.
    /// Diagonal entries are zero and [e_j, e_i] = -[e_i, e_j] is filled in.
    pub fn from_bracket_pairs(
        p: u32,
        names: Vec<String>,
        pairs: &[(usize, usize, VecFp)],
        alpha: MatFp,
    ) -> Result<Self, AlgebraError> {
        Self::from_bracket_pairs_with_limits(p, names, pairs, alpha, Limits::default())
    }

    pub fn from_bracket_pairs_with_limits(
        p: u32,
        names: Vec<String>,
        pairs: &[(usize, usize, VecFp)],
        alpha: MatFp,
        limits: Limits,
    ) -> Result<Self, AlgebraError> {
        gfp::validate_prime(p)?;
        let dim = names.len();
        let mut brackets = vec![vec![VecFp::zeros(p, dim); dim]; dim];
        for (i, j, v) in pairs {
            if i == j {
                return Err(AlgebraError::Malformed(format!(
                    "diagonal bracket [e_{i}, e_{i}] must be zero"
                )));
            }
            if *i >= dim || *j >= dim {
                return Err(AlgebraError::Malformed("basis index out of range".into()));
            }
            if !brackets[*i][*j].is_zero() || !brackets[*j][*i].is_zero() {
                return Err(AlgebraError::Malformed(format!(
                    "bracket pair ({i}, {j}) given twice"
                )));
            }
            brackets[*i][*j] = v.clone();
            brackets[*j][*i] = v.neg();
        }
        Self::from_structure_constants_with_limits(p, names, brackets, alpha, limits)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn alpha(&self) -> &MatFp {
        &self.alpha
    }

    /// alpha^k as a matrix.
    pub fn alpha_power(&self, k: u32) -> MatFp {
        self.alpha.pow(k)
    }

    pub fn basis_vector(&self, j: usize) -> VecFp {
        VecFp::unit(self.p, self.dim, j)
    }

    pub fn zero_vector(&self) -> VecFp {
        VecFp::zeros(self.p, self.dim)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &VecFp {
        &self.brackets[i][j]
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &VecFp, y: &VecFp) -> VecFp {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = self.zero_vector();
        for i in x.support() {
            let xi = x.get(i);
            for j in y.support() {
                let c = xi.mul(y.get(j));
                out = out.add(&self.brackets[i][j].scale(c));
            }
        }
        out
    }

    pub fn apply_alpha(&self, x: &VecFp) -> VecFp {
        self.alpha.mul_vec(x)
    }

    /// Every element of the underlying space, p^n of them.
    pub fn elements(&self) -> impl Iterator<Item = VecFp> {
        all_vectors(self.p, self.dim)
    }

    pub fn element_count(&self) -> u64 {
        gfp::element_count(self.p, self.dim)
    }

    /// Exhaustive axiom checks over basis tuples. Each flag is computed
    /// independently; in particular `multiplicative` is never inferred from
    /// `regular` even though automorphisms are morphisms.
    pub fn axiom_report(&self) -> AxiomReport {
        let mut counterexample = None;
        let note = |check: &str, indices: Vec<usize>, slot: &mut Option<Counterexample>| {
            if slot.is_none() {
                *slot = Some(Counterexample {
                    check: check.to_string(),
                    indices,
                });
            }
        };

        let mut alternating = true;
        'alt: for i in 0..self.dim {
            if !self.brackets[i][i].is_zero() {
                alternating = false;
                note("alternating", vec![i, i], &mut counterexample);
                break 'alt;
            }
            for j in (i + 1)..self.dim {
                if self.brackets[j][i] != self.brackets[i][j].neg() {
                    alternating = false;
                    note("alternating", vec![i, j], &mut counterexample);
                    break 'alt;
                }
            }
        }

        let mut hom_jacobi = true;
        'jac: for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    if !self.hom_jacobi_sum(i, j, k).is_zero() {
                        hom_jacobi = false;
                        note("hom-jacobi", vec![i, j, k], &mut counterexample);
                        break 'jac;
                    }
                }
            }
        }

        let mut multiplicative = true;
        'mul: for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = self.apply_alpha(&self.brackets[i][j]);
                let rhs = self.bracket(&self.alpha.col(i), &self.alpha.col(j));
                if lhs != rhs {
                    multiplicative = false;
                    note("multiplicative", vec![i, j], &mut counterexample);
                    break 'mul;
                }
            }
        }

        let regular = self.alpha.is_invertible();
        if !regular {
            note("regular", vec![], &mut counterexample);
        }

        // An involution must also be a morphism by definition, so the flag
        // conjoins the independently computed multiplicativity.
        let squared = self.alpha.mul(&self.alpha);
        let involutive = multiplicative && squared == MatFp::identity(self.p, self.dim);
        if !involutive {
            note("involutive", vec![], &mut counterexample);
        }

        let mut abelian = true;
        'ab: for i in 0..self.dim {
            for j in 0..self.dim {
                if !self.brackets[i][j].is_zero() {
                    abelian = false;
                    note("abelian", vec![i, j], &mut counterexample);
                    break 'ab;
                }
            }
        }

        AxiomReport {
            alternating,
            hom_jacobi,
            multiplicative,
            regular,
            involutive,
            abelian,
            counterexample,
        }
    }

    /// [alpha(e_i), [e_j, e_k]] + [alpha(e_j), [e_k, e_i]] + [alpha(e_k), [e_i, e_j]]
    fn hom_jacobi_sum(&self, i: usize, j: usize, k: usize) -> VecFp {
        let ai = self.alpha.col(i);
        let aj = self.alpha.col(j);
        let ak = self.alpha.col(k);
        let t1 = self.bracket(&ai, &self.brackets[j][k]);
        let t2 = self.bracket(&aj, &self.brackets[k][i]);
        let t3 = self.bracket(&ak, &self.brackets[i][j]);
        t1.add(&t2).add(&t3)
    }

    /// Element-level Hom-Jacobi over all p^(3n) triples; defense in depth for
    /// the basis-triple argument. Desk scale only.
    pub fn hom_jacobi_exhaustive(&self) -> bool {
        let els: Vec<VecFp> = self.elements().collect();
        for x in &els {
            for y in &els {
                for z in &els {
                    let ax = self.apply_alpha(x);
                    let ay = self.apply_alpha(y);
                    let az = self.apply_alpha(z);
                    let sum = self
                        .bracket(&ax, &self.bracket(y, z))
                        .add(&self.bracket(&ay, &self.bracket(z, x)))
                        .add(&self.bracket(&az, &self.bracket(x, y)));
                    if !sum.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Matrix of the adjoint operator of `x`.
    pub fn ad_matrix(&self, x: &VecFp, mode: AdMode) -> MatFp {
        let cols: Vec<VecFp> = (0..self.dim)
            .map(|j| self.bracket(x, &self.basis_vector(j)))
            .collect();
        let plain = MatFp::from_cols(self.p, self.dim, &cols);
        match mode {
            AdMode::Plain => plain,
            AdMode::AlphaTwisted => plain.mul(&self.alpha_power(self.p - 1)),
        }
    }

    /// Descending central series L^1 = L, L^(k+1) = [L^k, L], computed until
    /// stabilization. The stabilized repeat term is not included.
    pub fn lower_central_series(&self) -> SeriesReport {
        let mut terms = vec![Subspace::full(self.p, self.dim)];
        loop {
            let prev = terms.last().unwrap();
            let mut gens = Vec::new();
            for v in prev.basis() {
                for j in 0..self.dim {
                    gens.push(self.bracket(v, &self.basis_vector(j)));
                }
            }
            let next = Subspace::span(self.p, self.dim, &gens);
            if &next == prev {
                break;
            }
            let is_zero = next.is_zero();
            terms.push(next);
            if is_zero {
                break;
            }
        }
        let nilpotent = terms.last().unwrap().is_zero();
        let class = if nilpotent { Some(terms.len()) } else { None };
        SeriesReport {
            terms,
            nilpotent,
            class,
        }
    }

    /// Elements whose bracket with (twisted) members of S vanishes. With
    /// S = L and the twisted mode this is the uniqueness-controlling center;
    /// the ordinary mode gives the plain center.
    pub fn centralizer(&self, s: &Subspace, mode: CentralizerMode) -> Subspace {
        assert_eq!(s.ambient(), self.dim);
        if s.is_zero() {
            return Subspace::full(self.p, self.dim);
        }
        let twist = self.alpha_power(self.p - 1);
        let mut stacked = MatFp::zeros(self.p, self.dim * s.dim(), self.dim);
        for (row_block, y) in s.basis().iter().enumerate() {
            let target = match mode {
                CentralizerMode::AlphaTwisted => twist.mul_vec(y),
                CentralizerMode::Ordinary => y.clone(),
            };
            // Matrix of x -> [x, target], columns over basis x.
            for i in 0..self.dim {
                let col = self.bracket(&self.basis_vector(i), &target);
                for r in 0..self.dim {
                    stacked.set(row_block * self.dim + r, i, col.get(r));
                }
            }
        }
        Subspace::kernel_of(&stacked)
    }

    /// The twisted center C(L).
    pub fn center(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.p, self.dim), CentralizerMode::AlphaTwisted)
    }

    /// The ordinary center {x : [x, y] = 0 for all y}.
    pub fn center_ordinary(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.p, self.dim), CentralizerMode::Ordinary)
    }

    /// Fixed points of the twist.
    pub fn fixed_point_set(&self) -> Subspace {
        let diff = self.alpha.sub(&MatFp::identity(self.p, self.dim));
        Subspace::kernel_of(&diff)
    }

    pub fn is_sub_or_ideal(&self, h: &Subspace) -> SubIdealReport {
        assert_eq!(h.ambient(), self.dim);
        let alpha_stable = h.stable_under(&self.alpha);
        let mut closed_hh = true;
        'hh: for u in h.basis() {
            for v in h.basis() {
                if !h.contains(&self.bracket(u, v)) {
                    closed_hh = false;
                    break 'hh;
                }
            }
        }
        let mut closed_hl = true;
        'hl: for u in h.basis() {
            for j in 0..self.dim {
                if !h.contains(&self.bracket(u, &self.basis_vector(j))) {
                    closed_hl = false;
                    break 'hl;
                }
            }
        }
        SubIdealReport {
            subalgebra: alpha_stable && closed_hh,
            ideal: alpha_stable && closed_hl,
        }
    }

    /// Smallest subalgebra containing the generators: iterate the span under
    /// the bracket and the twist until stable. Terminates in at most n rounds.
    pub fn subalgebra_closure(&self, generators: &[VecFp]) -> Subspace {
        let mut current = Subspace::span(self.p, self.dim, generators);
        loop {
            let mut gens: Vec<VecFp> = current.basis().to_vec();
            for v in current.basis() {
                gens.push(self.apply_alpha(v));
                for w in current.basis() {
                    gens.push(self.bracket(v, w));
                }
            }
            let next = Subspace::span(self.p, self.dim, &gens);
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// Block-diagonal sum: component-wise bracket and twist. Colliding basis
    /// names on the right side get primes appended.
    pub fn direct_sum(&self, other: &HomLieAlgebra) -> Result<HomLieAlgebra, AlgebraError> {
        if self.p != other.p {
            return Err(AlgebraError::ModulusMismatch(self.p, other.p));
        }
        let n = self.dim + other.dim;
        let mut names = self.names.clone();
        for name in &other.names {
            let mut candidate = name.clone();
            while names.contains(&candidate) {
                candidate.push('\'');
            }
            names.push(candidate);
        }
        let embed_left = |v: &VecFp| -> VecFp {
            let mut out = VecFp::zeros(self.p, n);
            for i in 0..self.dim {
                out.set(i, v.get(i));
            }
            out
        };
        let embed_right = |v: &VecFp| -> VecFp {
            let mut out = VecFp::zeros(self.p, n);
            for i in 0..other.dim {
                out.set(self.dim + i, v.get(i));
            }
            out
        };
        let mut brackets = vec![vec![VecFp::zeros(self.p, n); n]; n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                brackets[i][j] = embed_left(&self.brackets[i][j]);
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                brackets[self.dim + i][self.dim + j] = embed_right(&other.brackets[i][j]);
            }
        }
        let mut alpha = MatFp::zeros(self.p, n, n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                alpha.set(i, j, self.alpha.get(i, j));
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                alpha.set(self.dim + i, self.dim + j, other.alpha.get(i, j));
            }
        }
        HomLieAlgebra::from_structure_constants(self.p, names, brackets, alpha)
    }

    /// Quotient by an ideal, presented on the canonical complement of the
    /// ideal's echelon pivots. Returns the quotient together with the
    /// projection morphism.
    pub fn quotient(
        &self,
        ideal: &Subspace,
    ) -> Result<(HomLieAlgebra, HomMorphism), AlgebraError> {
        if !self.is_sub_or_ideal(ideal).ideal {
            return Err(AlgebraError::NotAnIdeal);
        }
        let complement: Vec<usize> = (0..self.dim)
            .filter(|i| !ideal.pivots().contains(i))
            .collect();
        let q_dim = complement.len();
        let names: Vec<String> = complement.iter().map(|&i| self.names[i].clone()).collect();
        // Project v to quotient coordinates: reduce modulo the ideal, then
        // read off the complement coordinates.
        let project = |v: &VecFp| -> VecFp {
            let reduced = ideal.reduce(v);
            let mut out = VecFp::zeros(self.p, q_dim);
            for (t, &i) in complement.iter().enumerate() {
                out.set(t, reduced.get(i));
            }
            out
        };
        let mut brackets = vec![vec![VecFp::zeros(self.p, q_dim); q_dim]; q_dim];
        for (a, &i) in complement.iter().enumerate() {
            for (b, &j) in complement.iter().enumerate() {
                brackets[a][b] = project(&self.brackets[i][j]);
            }
        }
        let mut alpha = MatFp::zeros(self.p, q_dim, q_dim);
        for (b, &j) in complement.iter().enumerate() {
            let col = project(&self.alpha.col(j));
            for a in 0..q_dim {
                alpha.set(a, b, col.get(a));
            }
        }
        let quotient = HomLieAlgebra::from_structure_constants(self.p, names, brackets, alpha)?;
        let proj_cols: Vec<VecFp> = (0..self.dim).map(|j| project(&self.basis_vector(j))).collect();
        let matrix = MatFp::from_cols(self.p, q_dim, &proj_cols);
        let projection = HomMorphism::new(self.clone(), quotient.clone(), matrix)
            .expect("projection dimensions are consistent by construction");
        Ok((quotient, projection))
    }

    /// Re-coordinatizes a subalgebra on its echelon basis, returning the
    /// restricted algebra and the inclusion matrix (columns = basis vectors).
    /// Basis rows are named after their pivot coordinate in the ambient
    /// algebra.
    pub fn restrict_to_subalgebra(
        &self,
        h: &Subspace,
    ) -> Result<(HomLieAlgebra, MatFp), AlgebraError> {
        if !self.is_sub_or_ideal(h).subalgebra {
            return Err(AlgebraError::NotASubalgebra);
        }
        let d = h.dim();
        let names: Vec<String> = h.pivots().iter().map(|&i| self.names[i].clone()).collect();
        let coords = |v: &VecFp| -> VecFp {
            h.coords(v)
                .expect("subalgebra closure guarantees membership")
        };
        let mut brackets = vec![vec![VecFp::zeros(self.p, d); d]; d];
        for (a, u) in h.basis().iter().enumerate() {
            for (b, v) in h.basis().iter().enumerate() {
                brackets[a][b] = coords(&self.bracket(u, v));
            }
        }
        let mut alpha = MatFp::zeros(self.p, d, d);
        for (b, v) in h.basis().iter().enumerate() {
            let col = coords(&self.apply_alpha(v));
            for a in 0..d {
                alpha.set(a, b, col.get(a));
            }
        }
        let restricted = HomLieAlgebra::from_structure_constants(self.p, names, brackets, alpha)?;
        let inclusion = MatFp::from_cols(self.p, self.dim, h.basis());
        Ok((restricted, inclusion))
    }

    /// Twists an ordinary Lie algebra (twist = id) by a bracket morphism A:
    /// new bracket = A([.,.]), new twist = A. The result is multiplicative.
    pub fn yau_twist(&self, a: &MatFp) -> Result<HomLieAlgebra, AlgebraError> {
        let report = self.axiom_report();
        if self.alpha != MatFp::identity(self.p, self.dim)
            || !report.alternating
            || !report.hom_jacobi
        {
            return Err(AlgebraError::NotALieAlgebra(
                report
                    .counterexample
                    .map(|c| format!("{} at {:?}", c.check, c.indices))
                    .unwrap_or_else(|| "twist is not the identity".into()),
            ));
        }
        if a.rows() != self.dim || a.cols() != self.dim || a.p() != self.p {
            return Err(AlgebraError::Malformed("twist matrix must be n x n".into()));
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = a.mul_vec(&self.brackets[i][j]);
                let rhs = self.bracket(&a.col(i), &a.col(j));
                if lhs != rhs {
                    return Err(AlgebraError::NotALieMorphism(i, j));
                }
            }
        }
        let mut brackets = vec![vec![VecFp::zeros(self.p, self.dim); self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                brackets[i][j] = a.mul_vec(&self.brackets[i][j]);
            }
        }
        HomLieAlgebra::from_structure_constants(
            self.p,
            self.names.clone(),
            brackets,
            a.clone(),
        )
    }

    /// Parses a linear combination over this algebra's basis names; used by
    /// callers that accept element expressions.
    pub fn vector_of(&self, coeffs: &[(i64, &str)]) -> Option<VecFp> {
        let mut out = self.zero_vector();
        for (c, name) in coeffs {
            let i = self.name_index(name)?;
            let s = Scalar::new(*c, self.p);
            out.set(i, out.get(i).add(s));
        }
        Some(out)
    }
}
