//! Lie algebras from structure constants: Jacobi validation, the
//! Chevalley-Eilenberg complex, structure flags, symplectic derivations, and
//! co-symplectic structures - checking a given pair, deciding existence with
//! a witness or a zero-polynomial certificate, and the two directions of the
//! correspondence between co-symplectic algebras in dimension 2n+1 and
//! symplectic algebras in dimension 2n with a compatible derivation.
//!
//! Conventions: the structure table stores d e^k = Σ_{i<j} c^k_ij e^i∧e^j on
//! the dual basis, which corresponds to brackets [e_i, e_j] = -Σ_k c^k_ij e_k.
//! A tuple like (0,0,12) therefore means d e^3 = e^1∧e^2 and [e_1,e_2] = -e_3.

use crate::cdga::{Cdga, CdgaError, Element, GeneratorTable};
use crate::linalg::{self, LinalgError, Matrix, Subspace};
use crate::multipoly::MultiPoly;
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("invalid structure constants: {0}")]
    InvalidStructure(String),
    #[error("basis names must be listed in their natural sorted order (got `{0}` before `{1}`)")]
    BasisOrder(String, String),
    #[error("Jacobi identity fails: d² e^{dual} has term e^{i}∧e^{j}∧e^{k}", dual = .dual + 1, i = .triple.0 + 1, j = .triple.1 + 1, k = .triple.2 + 1)]
    Jacobi {
        dual: usize,
        triple: (usize, usize, usize),
    },
    #[error("dimension {0} is even; co-symplectic structures need odd dimension")]
    EvenDimension(usize),
    #[error("cochain has wrong degree: expected {expected}")]
    WrongDegree { expected: usize },
    #[error("symplectic-derivation data invalid: {0}")]
    BadDerivationData(String),
    #[error("co-symplectic check failed: {0}")]
    NotCosymplectic(String),
    #[error("kernel of eta is not an ideal (bracket of basis vectors {0}, {1} escapes)")]
    KernelNotIdeal(usize, usize),
    #[error(transparent)]
    Cdga(#[from] CdgaError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Structure coefficients of one dual generator: de^k as a map
/// (i, j) -> coefficient with i < j, 0-indexed.
pub type StructureRow = BTreeMap<(usize, usize), Rational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    structure: Vec<StructureRow>,
}

impl LieAlgebra {
    pub fn new(
        dim: usize,
        basis_names: Option<Vec<String>>,
        structure: Vec<StructureRow>,
    ) -> Result<Self, LieError> {
        let basis_names =
            basis_names.unwrap_or_else(|| (1..=dim).map(|i| format!("e{i}")).collect());
        if basis_names.len() != dim {
            return Err(LieError::InvalidStructure(format!(
                "{} basis names for dimension {dim}",
                basis_names.len()
            )));
        }
        // the CE generator table sorts by natural name order; requiring the
        // input to already be sorted keeps index semantics unambiguous
        for w in basis_names.windows(2) {
            let t = GeneratorTable::degree_one(&[w[0].as_str(), w[1].as_str()])?;
            if t.name(0) != w[0] {
                return Err(LieError::BasisOrder(w[0].clone(), w[1].clone()));
            }
        }
        if structure.len() != dim {
            return Err(LieError::InvalidStructure(format!(
                "{} structure rows for dimension {dim}",
                structure.len()
            )));
        }
        for row in &structure {
            for &(i, j) in row.keys() {
                if i >= j || j >= dim {
                    return Err(LieError::InvalidStructure(format!(
                        "index pair ({}, {}) out of range",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let mut structure = structure;
        for row in &mut structure {
            row.retain(|_, c| !c.is_zero());
        }
        Ok(LieAlgebra {
            dim,
            basis_names,
            structure,
        })
    }

    /// Abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::new(dim, None, vec![BTreeMap::new(); dim]).unwrap()
    }

    /// Compact-tuple constructor: slot k lists (coefficient, i, j) terms so
    /// that de^k = Σ c·e^i∧e^j, indices 1-based.
    pub fn from_tuple(slots: &[&[(i64, usize, usize)]]) -> Result<Self, LieError> {
        let dim = slots.len();
        let structure = slots
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .map(|&(c, i, j)| ((i - 1, j - 1), crate::rational::int(c)))
                    .collect()
            })
            .collect();
        LieAlgebra::new(dim, None, structure)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn structure(&self) -> &[StructureRow] {
        &self.structure
    }

    /// [e_i, e_j] as a coordinate vector; i, j are 0-indexed.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        if i == j {
            return out;
        }
        let (a, b, negate) = if i < j { (i, j, true) } else { (j, i, false) };
        for (k, row) in self.structure.iter().enumerate() {
            if let Some(c) = row.get(&(a, b)) {
                out[k] = if negate { -c.clone() } else { c.clone() };
            }
        }
        out
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() || i == j {
                    continue;
                }
                let w = self.bracket_basis(i, j);
                for (o, wk) in out.iter_mut().zip(&w) {
                    *o += &u[i] * &v[j] * wk;
                }
            }
        }
        out
    }

    /// Matrix of ad_{e_i}; columns are the images of the basis vectors.
    pub fn ad_basis(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |r, c| self.bracket_basis(i, c)[r].clone())
    }

    /// True iff d² = 0 on the Chevalley-Eilenberg complex, which is
    /// equivalent to the Jacobi identity; reports the first failing triple.
    pub fn jacobi_check(&self) -> Result<(), LieError> {
        match self.ce_builder()?.verify_d_squared() {
            Ok(()) => Ok(()),
            Err(CdgaError::DSquared { generator, residual }) => {
                let dual = self
                    .basis_names
                    .iter()
                    .position(|n| *n == generator)
                    .unwrap_or(0);
                let triple = parse_first_triple(&residual, &self.basis_names);
                Err(LieError::Jacobi { dual, triple })
            }
            Err(e) => Err(e.into()),
        }
    }

    fn ce_builder(&self) -> Result<crate::cdga::CdgaBuilder, LieError> {
        let names: Vec<&str> = self.basis_names.iter().map(String::as_str).collect();
        let table = GeneratorTable::degree_one(&names)?;
        let mut builder = Cdga::builder(table.clone()).truncation(self.dim + 1);
        for (k, row) in self.structure.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let mut value = Element::zero(table.clone());
            for (&(i, j), c) in row {
                let m = Element::generator(table.clone(), i)
                    .wedge(&Element::generator(table.clone(), j))?;
                value = value.add(&m.scale(c))?;
            }
            builder = builder.differential(&self.basis_names[k], value)?;
        }
        Ok(builder)
    }

    /// The Chevalley-Eilenberg CDGA: degree-1 generators dual to the basis,
    /// generator differentials from the structure constants, truncation n+1.
    pub fn ce_cdga(&self) -> Result<Cdga, LieError> {
        self.jacobi_check()?;
        Ok(self.ce_builder()?.build()?)
    }

    /// Degree-1 cochain from coordinates in the dual basis.
    pub fn one_cochain(&self, table: &Arc<GeneratorTable>, coords: &[Rational]) -> Element {
        assert_eq!(coords.len(), self.dim);
        let mut acc = Element::zero(table.clone());
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                acc = acc
                    .add(&Element::generator(table.clone(), i).scale(c))
                    .expect("same table");
            }
        }
        acc
    }

    /// Degree-2 cochain from an antisymmetric Gram matrix.
    pub fn two_cochain_from_gram(&self, table: &Arc<GeneratorTable>, gram: &Matrix) -> Element {
        assert!(gram.rows() == self.dim && gram.cols() == self.dim);
        let mut acc = Element::zero(table.clone());
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let c = gram.at(i, j);
                if !c.is_zero() {
                    let m = Element::generator(table.clone(), i)
                        .wedge(&Element::generator(table.clone(), j))
                        .expect("same table");
                    acc = acc.add(&m.scale(c)).expect("same table");
                }
            }
        }
        acc
    }

    /// Antisymmetric Gram matrix of a degree-2 cochain.
    pub fn gram_of_two_cochain(&self, f: &Element) -> Matrix {
        let mut gram = Matrix::zero(self.dim, self.dim);
        for (mono, c) in f.terms() {
            let factors = mono.factors();
            let (i, j) = (factors[0] as usize, factors[1] as usize);
            gram.set(i, j, c.clone());
            gram.set(j, i, -c.clone());
        }
        gram
    }

    /// Nilpotency, solvability, unimodularity, and the basis-element
    /// complete-solvability test (all roots of char(ad_{e_i}) real; this is a
    /// necessary condition for complete solvability, which quantifies over
    /// the whole algebra).
    pub fn structure_flags(&self) -> Result<StructureFlags, LieError> {
        let full = Subspace::full(self.dim);
        let bracket_span = |a: &Subspace, b: &Subspace| -> Subspace {
            let mut vectors = Vec::new();
            for u in a.basis() {
                for v in b.basis() {
                    vectors.push(self.bracket(u, v));
                }
            }
            Subspace::from_vectors(self.dim, vectors)
        };
        let nilpotent = {
            let mut current = full.clone();
            loop {
                let next = bracket_span(&full, &current);
                if next.is_zero() {
                    break true;
                }
                if next.dim() == current.dim() {
                    break false;
                }
                current = next;
            }
        };
        let solvable = {
            let mut current = full.clone();
            loop {
                let next = bracket_span(&current, &current);
                if next.is_zero() {
                    break true;
                }
                if next.dim() == current.dim() {
                    break false;
                }
                current = next;
            }
        };
        let unimodular = (0..self.dim).all(|i| self.ad_basis(i).trace().is_zero());
        let mut completely_solvable_on_basis = solvable;
        if solvable {
            for i in 0..self.dim {
                let cp = self.ad_basis(i).char_poly()?;
                if !cp.all_roots_real() {
                    completely_solvable_on_basis = false;
                    break;
                }
            }
        }
        Ok(StructureFlags {
            nilpotent,
            solvable,
            unimodular,
            completely_solvable_on_basis,
        })
    }
}

fn parse_first_triple(residual: &str, names: &[String]) -> (usize, usize, usize) {
    // residual renders like "e1^e2^e3" or "-1/2*e1^e2^e3 + ..."
    let first_term = residual
        .split(" + ")
        .next()
        .unwrap_or(residual)
        .split(" - ")
        .next()
        .unwrap_or(residual);
    let body = first_term.rsplit('*').next().unwrap_or(first_term);
    let idx: Vec<usize> = body
        .trim_start_matches('-')
        .split('^')
        .filter_map(|n| names.iter().position(|m| m == n.trim()))
        .collect();
    match idx.as_slice() {
        [a, b, c, ..] => (*a, *b, *c),
        _ => (0, 0, 0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureFlags {
    pub nilpotent: bool,
    pub solvable: bool,
    pub unimodular: bool,
    pub completely_solvable_on_basis: bool,
}

/// A symplectic Lie algebra with a candidate derivation: the input of the
/// extension direction and the output of the splitting direction.
#[derive(Debug, Clone)]
pub struct SymplecticDerivationData {
    pub h: LieAlgebra,
    /// Closed nondegenerate 2-cochain over h's Chevalley-Eilenberg table.
    pub omega: Element,
    /// Derivation matrix, columns are images of basis vectors.
    pub d: Matrix,
}

/// Per-condition report of [`check_symplectic_derivation`].
#[derive(Debug, Clone)]
pub struct SymplecticDerivationReport {
    pub is_derivation: bool,
    pub first_derivation_failure: Option<(usize, usize)>,
    pub is_infinitesimal_symplectic: bool,
    pub omega_closed: bool,
    pub omega_nondegenerate: bool,
}

impl SymplecticDerivationReport {
    pub fn all_ok(&self) -> bool {
        self.is_derivation
            && self.is_infinitesimal_symplectic
            && self.omega_closed
            && self.omega_nondegenerate
    }
}

/// D[u,v] = [Du,v] + [u,Dv] on all basis pairs; returns the first failing
/// pair if any.
pub fn is_derivation(h: &LieAlgebra, d: &Matrix) -> (bool, Option<(usize, usize)>) {
    let n = h.dim();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.apply(&h.bracket_basis(i, j));
            let du = d.col(i);
            let dv = d.col(j);
            let rhs: Vec<Rational> = h
                .bracket(&du, &linalg::unit_vector(n, j))
                .iter()
                .zip(&h.bracket(&linalg::unit_vector(n, i), &dv))
                .map(|(a, b)| a + b)
                .collect();
            if lhs != rhs {
                return (false, Some((i, j)));
            }
        }
    }
    (true, None)
}

/// Reports separately whether D is a derivation, whether ω is closed and
/// nondegenerate, and whether DᵗΩ + ΩD = 0 for the Gram matrix Ω of ω.
pub fn check_symplectic_derivation(
    data: &SymplecticDerivationData,
) -> Result<SymplecticDerivationReport, LieError> {
    let h = &data.h;
    let n = h.dim();
    if data.d.rows() != n || data.d.cols() != n {
        return Err(LieError::BadDerivationData(format!(
            "derivation matrix is {}x{}, algebra has dimension {n}",
            data.d.rows(),
            data.d.cols()
        )));
    }
    let (is_derivation, first_failure) = is_derivation(h, &data.d);
    let ce = h.ce_cdga()?;
    let omega_closed = ce.differential(&data.omega)?.is_zero();
    let gram = h.gram_of_two_cochain(&data.omega);
    let omega_nondegenerate = !gram.det().is_zero();
    let relation = data.d.transpose().mul(&gram).add(&gram.mul(&data.d));
    let is_infinitesimal_symplectic = relation.is_zero();
    Ok(SymplecticDerivationReport {
        is_derivation,
        first_derivation_failure: first_failure,
        is_infinitesimal_symplectic,
        omega_closed,
        omega_nondegenerate,
    })
}

/// Diagnostics of a co-symplectic check: both closedness conditions and the
/// exact coefficient of the volume monomial in η∧Fⁿ.
#[derive(Debug, Clone)]
pub struct CosymplecticReport {
    pub d_eta_zero: bool,
    pub d_f_zero: bool,
    pub volume_coefficient: Rational,
}

impl CosymplecticReport {
    pub fn passes(&self) -> bool {
        self.d_eta_zero && self.d_f_zero && !self.volume_coefficient.is_zero()
    }
}

/// Verifies dη = 0, dF = 0 and η∧Fⁿ ≠ 0 on a (2n+1)-dimensional algebra.
pub fn cosymplectic_check(
    algebra: &LieAlgebra,
    eta: &Element,
    f: &Element,
) -> Result<CosymplecticReport, LieError> {
    let dim = algebra.dim();
    if dim % 2 == 0 {
        return Err(LieError::EvenDimension(dim));
    }
    let n = dim / 2;
    if eta.degree().unwrap_or(1) != 1 {
        return Err(LieError::WrongDegree { expected: 1 });
    }
    if f.degree().unwrap_or(2) != 2 {
        return Err(LieError::WrongDegree { expected: 2 });
    }
    let ce = algebra.ce_cdga()?;
    let d_eta_zero = ce.differential(eta)?.is_zero();
    let d_f_zero = ce.differential(f)?.is_zero();
    let volume = eta.wedge(&f.pow(n)?)?;
    let top_coords = ce.element_coords_at(&volume, dim)?;
    let volume_coefficient = top_coords.first().cloned().unwrap_or_else(Rational::zero);
    Ok(CosymplecticReport {
        d_eta_zero,
        d_f_zero,
        volume_coefficient,
    })
}

/// Verdict of the existence decision. `NotExists` carries the certificate:
/// the full symbolic expansion of the volume coefficient over the closed
/// cochain spaces came out as the zero polynomial.
#[derive(Debug, Clone)]
pub enum CosymplecticExistence {
    Exists { eta: Element, f: Element },
    NotExists { certificate: NonexistenceCertificate },
}

#[derive(Debug, Clone)]
pub struct NonexistenceCertificate {
    pub closed_one_cochains: usize,
    pub closed_two_cochains: usize,
    /// Coefficient of the volume monomial of η∧Fⁿ as a polynomial in the
    /// coordinates of Z¹ × Z²; identically zero.
    pub polynomial: MultiPoly,
}

/// Decides whether any co-symplectic structure exists by expanding the
/// volume coefficient of η∧Fⁿ symbolically over Z¹ × Z². A nonzero
/// polynomial yields a rational witness by a deterministic scan (which
/// cannot fail on a nonzero polynomial); the zero polynomial is a proof of
/// nonexistence, never the result of sampling.
pub fn cosymplectic_exists(algebra: &LieAlgebra) -> Result<CosymplecticExistence, LieError> {
    let dim = algebra.dim();
    if dim % 2 == 0 {
        return Err(LieError::EvenDimension(dim));
    }
    let n = dim / 2;
    let ce = algebra.ce_cdga()?;
    let z1 = ce.cocycle_subspace(1).clone();
    let z2 = ce.cocycle_subspace(2).clone();
    let pair_basis = linalg::lex_subsets(dim, 2);
    let nvars = z1.dim() + z2.dim();

    // symbolic η = Σ a_i z1_i and F = Σ b_j z2_j over bitmask monomials
    let mut eta_sym: BTreeMap<u64, MultiPoly> = BTreeMap::new();
    for (i, v) in z1.basis().iter().enumerate() {
        let var = MultiPoly::variable(nvars, i);
        for (coord, c) in v.iter().enumerate() {
            if !c.is_zero() {
                add_term(&mut eta_sym, 1 << coord, var.scale(c));
            }
        }
    }
    let mut f_sym: BTreeMap<u64, MultiPoly> = BTreeMap::new();
    for (j, v) in z2.basis().iter().enumerate() {
        let var = MultiPoly::variable(nvars, z1.dim() + j);
        for (idx, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let mask = (1u64 << pair_basis[idx][0]) | (1u64 << pair_basis[idx][1]);
                add_term(&mut f_sym, mask, var.scale(c));
            }
        }
    }
    let mut acc = eta_sym;
    for _ in 0..n {
        acc = symbolic_wedge(&acc, &f_sym);
    }
    let full_mask = (1u64 << dim) - 1;
    let polynomial = acc
        .get(&full_mask)
        .cloned()
        .unwrap_or_else(|| MultiPoly::zero(nvars));

    match polynomial.nonzero_point() {
        None => Ok(CosymplecticExistence::NotExists {
            certificate: NonexistenceCertificate {
                closed_one_cochains: z1.dim(),
                closed_two_cochains: z2.dim(),
                polynomial,
            },
        }),
        Some(point) => {
            let table = ce.table().clone();
            let mut eta_coords = vec![Rational::zero(); dim];
            for (i, v) in z1.basis().iter().enumerate() {
                for (coord, c) in v.iter().enumerate() {
                    eta_coords[coord] += &point[i] * c;
                }
            }
            let eta = algebra.one_cochain(&table, &eta_coords);
            let mut gram = Matrix::zero(dim, dim);
            for (j, v) in z2.basis().iter().enumerate() {
                for (idx, c) in v.iter().enumerate() {
                    let (a, b) = (pair_basis[idx][0], pair_basis[idx][1]);
                    let add = &point[z1.dim() + j] * c;
                    gram.set(a, b, gram.at(a, b) + &add);
                    gram.set(b, a, gram.at(b, a) - &add);
                }
            }
            let f = algebra.two_cochain_from_gram(&table, &gram);
            let report = cosymplectic_check(algebra, &eta, &f)?;
            if !report.passes() {
                return Err(LieError::NotCosymplectic(
                    "witness produced by the existence scan failed re-validation".to_string(),
                ));
            }
            Ok(CosymplecticExistence::Exists { eta, f })
        }
    }
}

fn add_term(map: &mut BTreeMap<u64, MultiPoly>, mask: u64, poly: MultiPoly) {
    match map.get_mut(&mask) {
        Some(p) => {
            let sum = p.add(&poly);
            if sum.is_zero() {
                map.remove(&mask);
            } else {
                *p = sum;
            }
        }
        None => {
            if !poly.is_zero() {
                map.insert(mask, poly);
            }
        }
    }
}

/// Wedge of bitmask forms in degree-1 generators; the sign is the parity of
/// index crossings between the two sets.
fn symbolic_wedge(
    a: &BTreeMap<u64, MultiPoly>,
    b: &BTreeMap<u64, MultiPoly>,
) -> BTreeMap<u64, MultiPoly> {
    let mut out = BTreeMap::new();
    for (&ma, pa) in a {
        for (&mb, pb) in b {
            if ma & mb != 0 {
                continue;
            }
            let mut crossings = 0u32;
            let mut rest = mb;
            while rest != 0 {
                let bit = rest.trailing_zeros();
                crossings += (ma >> (bit + 1)).count_ones();
                rest &= rest - 1;
            }
            let mut term = pa.mul(pb);
            if crossings % 2 == 1 {
                term = term.scale(&-Rational::one());
            }
            add_term(&mut out, ma | mb, term);
        }
    }
    out
}

/// Output of the splitting direction: the symplectic data on ker η plus the
/// chosen transversal vector ξ and the embedding of the new basis.
#[derive(Debug, Clone)]
pub struct SplitOutcome {
    pub data: SymplecticDerivationData,
    /// ξ in the coordinates of the original algebra, normalized so η(ξ) = 1.
    pub xi: Vec<Rational>,
    /// Basis vectors of ker η (echelon-canonical) inside the original algebra.
    pub h_basis: Vec<Vec<Rational>>,
}

/// Builds the (2n+1)-dimensional algebra ℝξ ⊕_D h with [ξ, u] = D(u), plus
/// η = ξ-dual and F = ω extended by zero. The output always passes
/// [`cosymplectic_check`].
pub fn extend_by_derivation(
    data: &SymplecticDerivationData,
    xi_name: &str,
) -> Result<(LieAlgebra, Element, Element), LieError> {
    let report = check_symplectic_derivation(data)?;
    if !report.all_ok() {
        return Err(LieError::BadDerivationData(format!("{report:?}")));
    }
    let h = &data.h;
    let n2 = h.dim();
    let dim = n2 + 1;
    let mut names: Vec<String> = h.basis_names().to_vec();
    names.push(xi_name.to_string());
    let mut structure: Vec<StructureRow> = h.structure().to_vec();
    structure.push(BTreeMap::new());
    // de^k gains D_{k,i} e^i ∧ e^ξ from [ξ, e_i] = D(e_i)
    for (k, row) in structure.iter_mut().enumerate().take(n2) {
        for i in 0..n2 {
            let c = data.d.at(k, i);
            if !c.is_zero() {
                let entry = row.entry((i, n2)).or_insert_with(Rational::zero);
                *entry += c;
            }
        }
        row.retain(|_, c| !c.is_zero());
    }
    let extended = LieAlgebra::new(dim, Some(names), structure)?;
    let ce = extended.ce_cdga()?;
    let table = ce.table().clone();
    let eta = extended.one_cochain(&table, &linalg::unit_vector(dim, n2));
    let gram_h = h.gram_of_two_cochain(&data.omega);
    let mut gram = Matrix::zero(dim, dim);
    for i in 0..n2 {
        for j in 0..n2 {
            gram.set(i, j, gram_h.at(i, j).clone());
        }
    }
    let f = extended.two_cochain_from_gram(&table, &gram);
    let check = cosymplectic_check(&extended, &eta, &f)?;
    if !check.passes() {
        return Err(LieError::NotCosymplectic(
            "extension failed its own co-symplectic check".to_string(),
        ));
    }
    Ok((extended, eta, f))
}

/// Splits a co-symplectic algebra along ker η: h = ker η (verified to be an
/// ideal), D = ad_ξ restricted to h, ω = F restricted to h. The output
/// always passes [`check_symplectic_derivation`].
///
/// ξ is the canonical completion vector (η(ξ) = 1, zero along the echelon
/// pivots of ker η) corrected inside h so that F(x, ξ) = 0 for every x in h.
/// The correction is the unique ω-dual of x ↦ -F(x, ξ) and vanishes whenever
/// F has no η-component; without it, ad_ξ picks up the term F([u,v], ξ) and
/// need not be an infinitesimal symplectic transformation.
pub fn split_cosymplectic(
    algebra: &LieAlgebra,
    eta: &Element,
    f: &Element,
) -> Result<SplitOutcome, LieError> {
    let report = cosymplectic_check(algebra, eta, f)?;
    if !report.passes() {
        return Err(LieError::NotCosymplectic(format!(
            "d_eta_zero={}, d_f_zero={}, volume={}",
            report.d_eta_zero,
            report.d_f_zero,
            crate::rational::display(&report.volume_coefficient)
        )));
    }
    let dim = algebra.dim();
    let ce = algebra.ce_cdga()?;
    let eta_coords = ce.element_coords_at(eta, 1)?;
    let eta_row = Matrix::from_rows(vec![eta_coords.clone()]);
    let kernel = eta_row.kernel_basis();
    debug_assert_eq!(kernel.dim(), dim - 1);

    // the unique coordinate that is not a pivot of ker η carries ξ
    let pivot_coords: Vec<usize> = kernel
        .basis()
        .iter()
        .map(|v| v.iter().position(|c| !c.is_zero()).unwrap())
        .collect();
    let q = (0..dim)
        .find(|c| !pivot_coords.contains(c))
        .expect("kernel of a nonzero functional has one non-pivot coordinate");
    let mut xi = vec![Rational::zero(); dim];
    xi[q] = Rational::one() / eta_coords[q].clone();

    let h_basis: Vec<Vec<Rational>> = kernel.basis().to_vec();
    let m = dim - 1;

    // correct ξ inside ker η so that F(x, ξ) = 0 for all x in ker η: solve
    // Ω_h w = -λ with λ_a = F(h_a, ξ) and add Σ w_a h_a
    let gram_g = algebra.gram_of_two_cochain(f);
    let embed = Matrix::from_fn(dim, m, |r, c| h_basis[c][r].clone());
    let gram_h = embed.transpose().mul(&gram_g).mul(&embed);
    let lambda: Vec<Rational> = (0..m)
        .map(|a| linalg::dot(&h_basis[a], &gram_g.apply(&xi)))
        .collect();
    if !linalg::vec_is_zero(&lambda) {
        let rhs: Vec<Rational> = lambda.iter().map(|c| -c.clone()).collect();
        let w = gram_h
            .solve(&rhs)
            .expect("restriction of F to ker η is nondegenerate");
        for (a, wa) in w.iter().enumerate() {
            if !wa.is_zero() {
                for (xc, hc) in xi.iter_mut().zip(&h_basis[a]) {
                    *xc += wa * hc;
                }
            }
        }
    }
    // brackets of h-basis vectors, re-expressed in the echelon basis
    let mut structure: Vec<StructureRow> = vec![BTreeMap::new(); m];
    for a in 0..m {
        for b in a + 1..m {
            let w = algebra.bracket(&h_basis[a], &h_basis[b]);
            let coords = kernel
                .coordinates(&w)
                .ok_or(LieError::KernelNotIdeal(a, b))?;
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    structure[k].insert((a, b), -c);
                }
            }
        }
    }
    let h = LieAlgebra::new(m, None, structure)?;

    let mut d = Matrix::zero(m, m);
    for (a, hv) in h_basis.iter().enumerate() {
        let w = algebra.bracket(&xi, hv);
        let coords = kernel
            .coordinates(&w)
            .ok_or(LieError::KernelNotIdeal(a, a))?;
        for (k, c) in coords.into_iter().enumerate() {
            if !c.is_zero() {
                d.set(k, a, c);
            }
        }
    }

    let h_ce = h.ce_cdga()?;
    let omega = h.two_cochain_from_gram(h_ce.table(), &gram_h);

    let data = SymplecticDerivationData { h, omega, d };
    let check = check_symplectic_derivation(&data)?;
    if !check.all_ok() {
        return Err(LieError::BadDerivationData(format!(
            "split produced invalid symplectic-derivation data: {check:?}"
        )));
    }
    Ok(SplitOutcome { data, xi, h_basis })
}

/// Exact obstruction data for "no symplectic form on h is compatible with
/// the derivation D": the linear space of closed ω with DᵗΩ + ΩD = 0 and the
/// Pfaffian of its generic element. A zero Pfaffian polynomial proves that
/// every closed 2-cochain compatible with D is degenerate.
#[derive(Debug, Clone)]
pub struct DerivationCompatibility {
    /// Basis of { ω ∈ Z² : DᵗΩ + ΩD = 0 }.
    pub compatible_closed: Vec<Element>,
    /// Pfaffian of the generic element of that space.
    pub pfaffian: MultiPoly,
    /// True iff some compatible symplectic form exists (pfaffian ≢ 0).
    pub compatible_symplectic_exists: bool,
}

pub fn derivation_compatibility(
    h: &LieAlgebra,
    d: &Matrix,
) -> Result<DerivationCompatibility, LieError> {
    let dim = h.dim();
    if dim % 2 != 0 {
        return Err(LieError::BadDerivationData(format!(
            "symplectic compatibility needs even dimension, got {dim}"
        )));
    }
    let ce = h.ce_cdga()?;
    let z2 = ce.cocycle_subspace(2).clone();
    let pair_basis = linalg::lex_subsets(dim, 2);
    // columns: Z² basis; rows: entries of DᵗΩ + ΩD
    let mut rows = Vec::new();
    for z in z2.basis() {
        let mut gram = Matrix::zero(dim, dim);
        for (idx, c) in z.iter().enumerate() {
            let (a, b) = (pair_basis[idx][0], pair_basis[idx][1]);
            gram.set(a, b, c.clone());
            gram.set(b, a, -c.clone());
        }
        let rel = d.transpose().mul(&gram).add(&gram.mul(d));
        let mut row = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                row.push(rel.at(i, j).clone());
            }
        }
        rows.push(row);
    }
    let solution = if rows.is_empty() {
        Subspace::zero(0)
    } else {
        Matrix::from_rows(rows).transpose().kernel_basis()
    };

    let nvars = solution.dim();
    let mut sym = vec![vec![MultiPoly::zero(nvars); dim]; dim];
    let mut compatible_closed = Vec::new();
    for (v, coeffs) in solution.basis().iter().enumerate() {
        let var = MultiPoly::variable(nvars, v);
        let mut gram = Matrix::zero(dim, dim);
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (idx, zc) in z2.basis()[j].iter().enumerate() {
                if zc.is_zero() {
                    continue;
                }
                let (a, b) = (pair_basis[idx][0], pair_basis[idx][1]);
                let contrib = c * zc;
                gram.set(a, b, gram.at(a, b) + &contrib);
                gram.set(b, a, gram.at(b, a) - &contrib);
                sym[a][b] = sym[a][b].add(&var.scale(&contrib));
                sym[b][a] = sym[b][a].add(&var.scale(&-contrib.clone()));
            }
        }
        compatible_closed.push(h.two_cochain_from_gram(ce.table(), &gram));
    }
    let pfaffian = symbolic_pfaffian(&sym, (0..dim).collect(), nvars);
    let compatible_symplectic_exists = !pfaffian.is_zero();
    Ok(DerivationCompatibility {
        compatible_closed,
        pfaffian,
        compatible_symplectic_exists,
    })
}

/// A basis of the closed 2-cochains consisting entirely of symplectic
/// (nondegenerate) forms, when one exists. Members are found greedily as
/// z_i + t·u over small t and previously available directions.
pub fn spanning_symplectic_family(h: &LieAlgebra) -> Result<Option<Vec<Element>>, LieError> {
    let dim = h.dim();
    if dim % 2 != 0 {
        return Err(LieError::BadDerivationData(format!(
            "symplectic forms need even dimension, got {dim}"
        )));
    }
    let ce = h.ce_cdga()?;
    let z2 = ce.cocycle_subspace(2).clone();
    let pair_basis = linalg::lex_subsets(dim, 2);
    let to_gram = |coords: &[Rational]| {
        let mut gram = Matrix::zero(dim, dim);
        for (idx, c) in coords.iter().enumerate() {
            let (a, b) = (pair_basis[idx][0], pair_basis[idx][1]);
            gram.set(a, b, c.clone());
            gram.set(b, a, -c.clone());
        }
        gram
    };
    let ambient = z2.basis().first().map_or(0, Vec::len);
    let mut chosen: Vec<Vec<Rational>> = Vec::new();
    let mut span = Subspace::zero(ambient);
    for z in z2.basis() {
        let mut directions: Vec<Vec<Rational>> = vec![vec![Rational::zero(); ambient]];
        directions.extend(z2.basis().iter().cloned());
        directions.extend(chosen.iter().cloned());
        let mut found = None;
        'search: for u in &directions {
            for t in [0i64, 1, -1, 2, -2, 3, -3] {
                let tq = crate::rational::int(t);
                let candidate: Vec<Rational> =
                    z.iter().zip(u).map(|(a, b)| a + &tq * b).collect();
                if span.contains(&candidate) {
                    continue;
                }
                if !to_gram(&candidate).det().is_zero() {
                    found = Some(candidate);
                    break 'search;
                }
            }
        }
        let Some(candidate) = found else {
            return Ok(None);
        };
        span = span.sum(&Subspace::from_vectors(ambient, vec![candidate.clone()]))?;
        chosen.push(candidate);
    }
    Ok(Some(
        chosen
            .iter()
            .map(|coords| h.two_cochain_from_gram(ce.table(), &to_gram(coords)))
            .collect(),
    ))
}

fn symbolic_pfaffian(m: &[Vec<MultiPoly>], active: Vec<usize>, nvars: usize) -> MultiPoly {
    if active.is_empty() {
        return MultiPoly::constant(nvars, Rational::one());
    }
    let first = active[0];
    let mut acc = MultiPoly::zero(nvars);
    for (pos, &j) in active.iter().enumerate().skip(1) {
        let entry = &m[first][j];
        if entry.is_zero() {
            continue;
        }
        let mut rest = active.clone();
        rest.remove(pos);
        rest.remove(0);
        let sub = symbolic_pfaffian(m, rest, nvars);
        let mut term = entry.mul(&sub);
        if pos % 2 == 0 {
            term = term.scale(&-Rational::one());
        }
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_tuple(&[&[], &[], &[(1, 1, 2)]]).unwrap()
    }

    /// (0,0,12,13,14+23)
    fn nilpotent_5d_a() -> LieAlgebra {
        LieAlgebra::from_tuple(&[&[], &[], &[(1, 1, 2)], &[(1, 1, 3)], &[(1, 1, 4), (1, 2, 3)]])
            .unwrap()
    }

    /// (0,0,12,13,14)
    fn nilpotent_5d_b() -> LieAlgebra {
        LieAlgebra::from_tuple(&[&[], &[], &[(1, 1, 2)], &[(1, 1, 3)], &[(1, 1, 4)]]).unwrap()
    }

    /// (0,0,12,13,23)
    fn nilpotent_5d_c() -> LieAlgebra {
        LieAlgebra::from_tuple(&[&[], &[], &[(1, 1, 2)], &[(1, 1, 3)], &[(1, 2, 3)]]).unwrap()
    }

    /// The solvable 5-dimensional algebra with da1 = -a1^a5 etc.
    pub(crate) fn solvable_5d() -> LieAlgebra {
        LieAlgebra::from_tuple(&[
            &[(-1, 1, 5)],
            &[(1, 2, 5)],
            &[(-1, 1, 5), (-1, 3, 5)],
            &[(-1, 2, 5), (1, 4, 5)],
            &[],
        ])
        .unwrap()
    }

    /// Derivation of the abelian 4-dimensional algebra used to build the
    /// solvable example above; columns are images.
    pub(crate) fn derivation_5d() -> Matrix {
        Matrix::from_i64(&[
            &[-1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[-1, 0, -1, 0],
            &[0, -1, 0, 1],
        ])
    }

    fn omega_e14_e23(h: &LieAlgebra) -> Element {
        let mut gram = Matrix::zero(4, 4);
        gram.set(0, 3, int(1));
        gram.set(3, 0, int(-1));
        gram.set(1, 2, int(1));
        gram.set(2, 1, int(-1));
        let ce = h.ce_cdga().unwrap();
        h.two_cochain_from_gram(ce.table(), &gram)
    }

    #[test]
    fn jacobi_check_cases() {
        assert!(heisenberg().jacobi_check().is_ok());
        assert!(solvable_5d().jacobi_check().is_ok());
        let bad = LieAlgebra::from_tuple(&[&[], &[(1, 1, 2)], &[(1, 2, 3)]]).unwrap();
        match bad.jacobi_check() {
            Err(LieError::Jacobi { dual, triple }) => {
                assert_eq!(dual, 2);
                assert_eq!(triple, (0, 1, 2));
            }
            other => panic!("expected Jacobi failure, got {other:?}"),
        }
    }

    #[test]
    fn ce_cdga_structure() {
        let g = nilpotent_5d_a();
        let ce = g.ce_cdga().unwrap();
        let e5 = ce.generator("e5").unwrap();
        let e1 = ce.generator("e1").unwrap();
        let e2 = ce.generator("e2").unwrap();
        let e3 = ce.generator("e3").unwrap();
        let e4 = ce.generator("e4").unwrap();
        let expected = e1
            .wedge(&e4)
            .unwrap()
            .add(&e2.wedge(&e3).unwrap())
            .unwrap();
        assert_eq!(ce.differential(&e5).unwrap(), expected);

        let ab = LieAlgebra::abelian(4).ce_cdga().unwrap();
        for name in ["e1", "e2", "e3", "e4"] {
            let g = ab.generator(name).unwrap();
            assert!(ab.differential(&g).unwrap().is_zero());
        }
    }

    #[test]
    fn ce_cdga_solvable_3d_betti() {
        // de1 = -e1^e3, de2 = e2^e3
        let g = LieAlgebra::from_tuple(&[&[(-1, 1, 3)], &[(1, 2, 3)], &[]]).unwrap();
        let ce = g.ce_cdga().unwrap();
        assert_eq!(ce.betti_vector(3).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn structure_flags_cases() {
        let h = heisenberg().structure_flags().unwrap();
        assert!(h.nilpotent && h.solvable && h.unimodular && h.completely_solvable_on_basis);

        let s = solvable_5d().structure_flags().unwrap();
        assert!(!s.nilpotent);
        assert!(s.solvable && s.unimodular && s.completely_solvable_on_basis);

        let b = nilpotent_5d_b().structure_flags().unwrap();
        assert!(b.nilpotent);

        // sl2-like: de1 = -2*e1^e2 -- not solvable? use a genuinely
        // non-solvable bracket table instead: [e1,e2]=-e3,[e2,e3]=-e1,[e3,e1]=-e2
        let so3 = LieAlgebra::from_tuple(&[&[(1, 2, 3)], &[(-1, 1, 3)], &[(1, 1, 2)]]).unwrap();
        so3.jacobi_check().unwrap();
        let f = so3.structure_flags().unwrap();
        assert!(!f.solvable && !f.nilpotent && f.unimodular);
        assert!(!f.completely_solvable_on_basis);
    }

    #[test]
    fn symplectic_derivation_checks() {
        let h = LieAlgebra::abelian(4);
        let data = SymplecticDerivationData {
            h: h.clone(),
            omega: omega_e14_e23(&h),
            d: derivation_5d(),
        };
        let report = check_symplectic_derivation(&data).unwrap();
        assert!(report.all_ok(), "{report:?}");

        let id = SymplecticDerivationData {
            h: h.clone(),
            omega: omega_e14_e23(&h),
            d: Matrix::identity(4),
        };
        let report = check_symplectic_derivation(&id).unwrap();
        assert!(report.is_derivation && report.omega_closed && report.omega_nondegenerate);
        assert!(!report.is_infinitesimal_symplectic);
    }

    #[test]
    fn cosymplectic_check_cases() {
        let g = nilpotent_5d_a();
        let ce = g.ce_cdga().unwrap();
        let table = ce.table().clone();
        let eta = g.one_cochain(&table, &crate::linalg::unit_vector(5, 0));
        let mut gram = Matrix::zero(5, 5);
        gram.set(1, 4, int(1));
        gram.set(4, 1, int(-1));
        gram.set(2, 3, int(-1));
        gram.set(3, 2, int(1));
        let f = g.two_cochain_from_gram(&table, &gram);
        let report = cosymplectic_check(&g, &eta, &f).unwrap();
        assert!(report.passes(), "{report:?}");

        let h = heisenberg();
        let hce = h.ce_cdga().unwrap();
        let ht = hce.table().clone();
        let eta = h.one_cochain(&ht, &crate::linalg::unit_vector(3, 0));
        let f = hce
            .generator("e2")
            .unwrap()
            .wedge(&hce.generator("e3").unwrap())
            .unwrap();
        assert!(cosymplectic_check(&h, &eta, &f).unwrap().passes());

        let bad_eta = h.one_cochain(&ht, &crate::linalg::unit_vector(3, 2));
        let report = cosymplectic_check(&h, &bad_eta, &f).unwrap();
        assert!(!report.d_eta_zero);
        assert!(!report.passes());

        assert!(matches!(
            cosymplectic_check(&LieAlgebra::abelian(4), &eta, &f),
            Err(LieError::EvenDimension(4))
        ));
    }

    #[test]
    fn existence_verdicts() {
        match cosymplectic_exists(&nilpotent_5d_a()).unwrap() {
            CosymplecticExistence::Exists { eta, f } => {
                let r = cosymplectic_check(&nilpotent_5d_a(), &eta, &f).unwrap();
                assert!(r.passes());
            }
            other => panic!("expected existence, got {other:?}"),
        }
        match cosymplectic_exists(&nilpotent_5d_b()).unwrap() {
            CosymplecticExistence::Exists { .. } => {}
            other => panic!("expected existence, got {other:?}"),
        }
        match cosymplectic_exists(&nilpotent_5d_c()).unwrap() {
            CosymplecticExistence::NotExists { certificate } => {
                assert!(certificate.polynomial.is_zero());
                assert_eq!(certificate.closed_one_cochains, 2);
                assert_eq!(certificate.closed_two_cochains, 6);
            }
            other => panic!("expected nonexistence, got {other:?}"),
        }
        match cosymplectic_exists(&LieAlgebra::abelian(3)).unwrap() {
            CosymplecticExistence::Exists { .. } => {}
            other => panic!("expected existence, got {other:?}"),
        }
    }

    #[test]
    fn extend_matches_solvable_example() {
        let h = LieAlgebra::abelian(4);
        let data = SymplecticDerivationData {
            h: h.clone(),
            omega: omega_e14_e23(&h),
            d: derivation_5d(),
        };
        let (g, eta, f) = extend_by_derivation(&data, "e5").unwrap();
        assert_eq!(g.structure(), solvable_5d().structure());
        let report = cosymplectic_check(&g, &eta, &f).unwrap();
        assert!(report.passes());
        // brackets: [xi, e1] = -e1 - e3 and so on
        let xi = crate::linalg::unit_vector(5, 4);
        let e1 = crate::linalg::unit_vector(5, 0);
        let b = g.bracket(&xi, &e1);
        assert_eq!(b, vec![int(-1), int(0), int(-1), int(0), int(0)]);
    }

    #[test]
    fn extend_trivial_cases() {
        let h = LieAlgebra::abelian(2);
        let ce = h.ce_cdga().unwrap();
        let omega = ce
            .generator("e1")
            .unwrap()
            .wedge(&ce.generator("e2").unwrap())
            .unwrap();
        let data = SymplecticDerivationData {
            h,
            omega,
            d: Matrix::zero(2, 2),
        };
        let (g, eta, _f) = extend_by_derivation(&data, "e3").unwrap();
        assert_eq!(g.structure(), LieAlgebra::abelian(3).structure());
        assert_eq!(eta.render(), "e3");
    }

    #[test]
    fn split_recovers_extension_data() {
        let (g, eta, f) = {
            let h = LieAlgebra::abelian(4);
            let data = SymplecticDerivationData {
                h: h.clone(),
                omega: omega_e14_e23(&h),
                d: derivation_5d(),
            };
            extend_by_derivation(&data, "e5").unwrap()
        };
        let split = split_cosymplectic(&g, &eta, &f).unwrap();
        assert_eq!(split.data.h.structure(), LieAlgebra::abelian(4).structure());
        assert_eq!(split.data.d, derivation_5d());
        assert_eq!(split.xi, crate::linalg::unit_vector(5, 4));
        assert_eq!(
            split.data.omega,
            omega_e14_e23(&LieAlgebra::abelian(4))
        );
    }

    #[test]
    fn split_heisenberg() {
        let h = heisenberg();
        let ce = h.ce_cdga().unwrap();
        let t = ce.table().clone();
        let eta = h.one_cochain(&t, &crate::linalg::unit_vector(3, 0));
        let f = ce
            .generator("e2")
            .unwrap()
            .wedge(&ce.generator("e3").unwrap())
            .unwrap();
        let split = split_cosymplectic(&h, &eta, &f).unwrap();
        // h = span(e2, e3) is abelian; D = ad_{e1} = [[0,0],[-1,0]] on (e2,e3)
        assert_eq!(split.data.h.structure(), LieAlgebra::abelian(2).structure());
        assert_eq!(split.data.d, Matrix::from_i64(&[&[0, 0], &[-1, 0]]));
    }

    #[test]
    fn kodaira_thurston_derivation_obstruction() {
        // (0,0,0,23), with the derivation induced by the ambient bracket:
        // k2 -> -k3, k3 -> -k1
        let kt = LieAlgebra::from_tuple(&[&[], &[], &[], &[(1, 2, 3)]]).unwrap();
        let d = Matrix::from_i64(&[
            &[0, 0, -1, 0],
            &[0, 0, 0, 0],
            &[0, -1, 0, 0],
            &[0, 0, 0, 0],
        ]);
        assert!(is_derivation(&kt, &d).0);
        let compat = derivation_compatibility(&kt, &d).unwrap();
        assert!(!compat.compatible_symplectic_exists);
        assert!(compat.pfaffian.is_zero());
        // the algebra itself has plenty of symplectic forms
        let family = spanning_symplectic_family(&kt).unwrap().unwrap();
        assert_eq!(family.len(), 5);
        for omega in &family {
            let data = SymplecticDerivationData {
                h: kt.clone(),
                omega: omega.clone(),
                d: d.clone(),
            };
            let report = check_symplectic_derivation(&data).unwrap();
            assert!(report.omega_closed && report.omega_nondegenerate);
            assert!(!report.is_infinitesimal_symplectic);
        }
    }

    #[test]
    fn rejects_unsorted_basis_names() {
        let err = LieAlgebra::new(
            2,
            Some(vec!["x".to_string(), "a".to_string()]),
            vec![BTreeMap::new(), BTreeMap::new()],
        );
        assert!(matches!(err, Err(LieError::BasisOrder(_, _))));
    }
}
