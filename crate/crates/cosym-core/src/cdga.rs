//! Finite-type graded-commutative differential algebra engine.
//!
//! Elements are signed rational combinations of canonical monomials in graded
//! generators; the product carries the exact Koszul signs and the differential
//! extends generator values by the Leibniz rule. Per-degree cohomology, cup
//! products and the Poincaré pairing are extracted by exact linear algebra.
//!
//! Monomials are kept sorted by (degree, name) of their generators with the
//! sign normalized on construction, so equality of elements is structural
//! equality. Cocycle representatives are chosen echelon-canonically, which
//! makes every computed basis deterministic across runs.

use crate::linalg::{Matrix, Subspace};
use crate::rational::Rational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CdgaError {
    #[error("generator table mismatch between operands")]
    TableMismatch,
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{0}` has degree 0; degrees must be >= 1")]
    DegreeZero(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("differential of `{name}` has degree {got}, expected {expected}")]
    BadDifferentialDegree {
        name: String,
        got: String,
        expected: usize,
    },
    #[error("d² != 0 at generator `{generator}`: d(d({generator})) = {residual}")]
    DSquared { generator: String, residual: String },
    #[error("degree {degree} exceeds truncation {truncation}")]
    TruncationExceeded { degree: usize, truncation: usize },
    #[error("truncation degree is required when a generator has even degree")]
    TruncationRequired,
    #[error("element of degree {0} is not a cocycle")]
    NotCocycle(usize),
    #[error("top cohomology has dimension {0}, pairing needs dimension 1")]
    TopNotOneDimensional(usize),
    #[error("cup tensor inconsistency: {0}")]
    RingInconsistency(String),
}

/// A graded generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// Compares names the way a human orders indexed symbols: common textual
/// prefix, then numeric suffix value ("e2" before "e10").
fn natural_name_key(name: &str) -> (String, Option<u64>, String) {
    let trimmed = name.trim_end_matches(|c: char| c.is_ascii_digit());
    let suffix = &name[trimmed.len()..];
    (trimmed.to_string(), suffix.parse().ok(), name.to_string())
}

/// The generator table of a free graded-commutative algebra. Generators are
/// stored sorted by (degree, natural name order); indices refer to this
/// canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTable {
    gens: Vec<Generator>,
}

impl GeneratorTable {
    pub fn new(mut gens: Vec<Generator>) -> Result<Arc<Self>, CdgaError> {
        for g in &gens {
            if g.degree == 0 {
                return Err(CdgaError::DegreeZero(g.name.clone()));
            }
        }
        gens.sort_by_cached_key(|g| (g.degree, natural_name_key(&g.name)));
        for pair in gens.windows(2) {
            if pair[0].name == pair[1].name {
                return Err(CdgaError::DuplicateGenerator(pair[0].name.clone()));
            }
        }
        Ok(Arc::new(GeneratorTable { gens }))
    }

    /// Degree-1 generators named `names`, in the given order.
    pub fn degree_one(names: &[&str]) -> Result<Arc<Self>, CdgaError> {
        GeneratorTable::new(
            names
                .iter()
                .map(|n| Generator {
                    name: n.to_string(),
                    degree: 1,
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.gens[idx].degree
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.gens[idx].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    fn is_odd(&self, idx: usize) -> bool {
        self.gens[idx].degree % 2 == 1
    }

    /// Total degree of all generators; for a pure exterior algebra this is
    /// the top degree of the algebra.
    pub fn total_degree(&self) -> usize {
        self.gens.iter().map(|g| g.degree).sum()
    }

    pub fn has_even_generator(&self) -> bool {
        self.gens.iter().any(|g| g.degree % 2 == 0)
    }
}

/// Canonical monomial: generator indices in ascending order, one entry per
/// factor (even generators may repeat, odd ones never do).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(idx: usize) -> Self {
        Monomial(vec![idx as u32])
    }

    pub fn factors(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self, table: &GeneratorTable) -> usize {
        self.0.iter().map(|&i| table.degree(i as usize)).sum()
    }

    /// Merge two sorted words with the Koszul sign; `None` when an odd
    /// generator repeats. The sign is -1 to the number of (odd, odd) pairs
    /// that cross during the merge.
    fn merge(&self, other: &Monomial, table: &GeneratorTable) -> Option<(Monomial, bool)> {
        let a = &self.0;
        let b = &other.0;
        let mut crossings = 0usize;
        // odd entries of `a` strictly greater than a given b-entry must be
        // jumped over by that entry
        for &bi in b {
            if !table.is_odd(bi as usize) {
                continue;
            }
            crossings += a
                .iter()
                .filter(|&&ai| ai > bi && table.is_odd(ai as usize))
                .count();
            if a.contains(&bi) {
                return None;
            }
        }
        // odd duplicates within the pair where b-entry is even are impossible
        // (an even generator never collides fatally), but an odd a-entry equal
        // to an odd b-entry was caught above
        let mut merged = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] <= b[j]) {
                merged.push(a[i]);
                i += 1;
            } else {
                merged.push(b[j]);
                j += 1;
            }
        }
        Some((Monomial(merged), crossings % 2 == 1))
    }

    fn render(&self, table: &GeneratorTable) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&i| table.name(i as usize).to_string())
            .collect::<Vec<_>>()
            .join("^")
    }
}

/// Homogeneous element of the free graded-commutative algebra over a shared
/// generator table.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Element {
    pub fn zero(table: Arc<GeneratorTable>) -> Self {
        Element {
            table,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: Arc<GeneratorTable>) -> Self {
        Element::from_terms(table, vec![(Monomial::unit(), Rational::one())])
    }

    pub fn generator(table: Arc<GeneratorTable>, idx: usize) -> Self {
        Element::from_terms(table, vec![(Monomial::generator(idx), Rational::one())])
    }

    pub fn generator_by_name(table: Arc<GeneratorTable>, name: &str) -> Result<Self, CdgaError> {
        let idx = table
            .index_of(name)
            .ok_or_else(|| CdgaError::UnknownGenerator(name.to_string()))?;
        Ok(Element::generator(table, idx))
    }

    pub fn from_terms(table: Arc<GeneratorTable>, terms: Vec<(Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(m).or_insert_with(Rational::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        Element { table, terms: map }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero element, error if mixed.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.degree(&self.table));
        let first = degs.next()?;
        debug_assert!(degs.all(|d| d == first), "non-homogeneous element");
        Some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree(&self.table));
        match degs.next() {
            None => true,
            Some(first) => degs.all(|d| d == first),
        }
    }

    fn same_table(&self, other: &Element) -> Result<(), CdgaError> {
        if Arc::ptr_eq(&self.table, &other.table) || self.table == other.table {
            Ok(())
        } else {
            Err(CdgaError::TableMismatch)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, CdgaError> {
        self.same_table(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Element {
            table: self.table.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &Element) -> Result<Element, CdgaError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Element {
        if s.is_zero() {
            return Element::zero(self.table.clone());
        }
        Element {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Graded-commutative product with exact Koszul signs.
    pub fn wedge(&self, other: &Element) -> Result<Element, CdgaError> {
        self.same_table(other)?;
        let mut out: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, flip)) = ma.merge(mb, &self.table) {
                    let mut c = ca * cb;
                    if flip {
                        c = -c;
                    }
                    let entry = out.entry(m).or_insert_with(Rational::zero);
                    *entry += c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Element {
            table: self.table.clone(),
            terms: out,
        })
    }

    pub fn pow(&self, n: usize) -> Result<Element, CdgaError> {
        let mut acc = Element::one(self.table.clone());
        for _ in 0..n {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let sign_negative = c.is_negative();
            if i == 0 {
                if sign_negative {
                    out.push('-');
                }
            } else {
                out.push_str(if sign_negative { " - " } else { " + " });
            }
            let body = m.render(&self.table);
            if mag.is_one() && !m.factors().is_empty() {
                out.push_str(&body);
            } else if m.factors().is_empty() {
                out.push_str(&crate::rational::display(&mag));
            } else {
                out.push_str(&format!("{}*{}", crate::rational::display(&mag), body));
            }
        }
        out
    }
}

/// Builder for a [`Cdga`]: a generator table, a differential per generator
/// and a truncation degree. `build` validates that the differential raises
/// degree by one and squares to zero.
pub struct CdgaBuilder {
    table: Arc<GeneratorTable>,
    diffs: Vec<Element>,
    truncation: Option<usize>,
}

impl CdgaBuilder {
    pub fn new(table: Arc<GeneratorTable>) -> Self {
        let diffs = (0..table.len())
            .map(|_| Element::zero(table.clone()))
            .collect();
        CdgaBuilder {
            table,
            diffs,
            truncation: None,
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn differential(mut self, name: &str, value: Element) -> Result<Self, CdgaError> {
        let idx = self
            .table
            .index_of(name)
            .ok_or_else(|| CdgaError::UnknownGenerator(name.to_string()))?;
        if !Arc::ptr_eq(value.table(), &self.table) && **value.table() != *self.table {
            return Err(CdgaError::TableMismatch);
        }
        self.diffs[idx] = value;
        Ok(self)
    }

    pub fn truncation(mut self, t: usize) -> Self {
        self.truncation = Some(t);
        self
    }

    /// d(d(g)) for every generator; reports the first failure.
    pub fn verify_d_squared(&self) -> Result<(), CdgaError> {
        for (idx, dg) in self.diffs.iter().enumerate() {
            let dd = raw_differential(&self.table, &self.diffs, dg)?;
            if !dd.is_zero() {
                return Err(CdgaError::DSquared {
                    generator: self.table.name(idx).to_string(),
                    residual: dd.render(),
                });
            }
        }
        Ok(())
    }

    pub fn build(self) -> Result<Cdga, CdgaError> {
        for (idx, dg) in self.diffs.iter().enumerate() {
            if !dg.is_homogeneous() {
                return Err(CdgaError::NotHomogeneous);
            }
            let expected = self.table.degree(idx) + 1;
            if let Some(got) = dg.degree() {
                if got != expected {
                    return Err(CdgaError::BadDifferentialDegree {
                        name: self.table.name(idx).to_string(),
                        got: got.to_string(),
                        expected,
                    });
                }
            }
        }
        self.verify_d_squared()?;
        let truncation = match self.truncation {
            Some(t) => t,
            None => {
                if self.table.has_even_generator() {
                    return Err(CdgaError::TruncationRequired);
                }
                self.table.total_degree() + 1
            }
        };
        let degree_data = (0..=truncation).map(|_| OnceLock::new()).collect();
        let cohom_data = (0..=truncation).map(|_| OnceLock::new()).collect();
        Ok(Cdga {
            table: self.table,
            diffs: self.diffs,
            truncation,
            degree_data,
            cohom_data,
        })
    }
}

/// Leibniz extension of the generator differentials; needs no degree bound.
fn raw_differential(
    table: &Arc<GeneratorTable>,
    diffs: &[Element],
    a: &Element,
) -> Result<Element, CdgaError> {
    let mut acc = Element::zero(table.clone());
    for (mono, coeff) in a.terms() {
        let word = mono.factors();
        let mut sign_positive = true;
        for (j, &g) in word.iter().enumerate() {
            let dg = &diffs[g as usize];
            if !dg.is_zero() {
                let prefix = Element::from_terms(
                    table.clone(),
                    vec![(Monomial(word[..j].to_vec()), Rational::one())],
                );
                let suffix = Element::from_terms(
                    table.clone(),
                    vec![(Monomial(word[j + 1..].to_vec()), Rational::one())],
                );
                let mut term = prefix.wedge(dg)?.wedge(&suffix)?;
                let mut c = coeff.clone();
                if !sign_positive {
                    c = -c;
                }
                term = term.scale(&c);
                acc = acc.add(&term)?;
            }
            if table.is_odd(g as usize) {
                sign_positive = !sign_positive;
            }
        }
    }
    Ok(acc)
}

/// Per-degree data computed lazily: the monomial basis and, below the
/// truncation, the differential matrix, cocycles, coboundaries and the
/// echelon-canonical cohomology representatives.
struct DegreeBasis {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

struct DegreeCohomology {
    /// d: degree k -> k+1 in the monomial bases, columns are images.
    d_matrix: Matrix,
    cocycles: Subspace,
    coboundaries: Subspace,
    reps: Vec<Vec<Rational>>,
}

/// A finite-type CDGA, immutable after construction. All queries are
/// re-entrant; lazy caches use `OnceLock`.
pub struct Cdga {
    table: Arc<GeneratorTable>,
    diffs: Vec<Element>,
    truncation: usize,
    degree_data: Vec<OnceLock<DegreeBasis>>,
    cohom_data: Vec<OnceLock<DegreeCohomology>>,
}

impl Cdga {
    pub fn builder(table: Arc<GeneratorTable>) -> CdgaBuilder {
        CdgaBuilder::new(table)
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn generator_differential(&self, idx: usize) -> &Element {
        &self.diffs[idx]
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.table.clone())
    }

    pub fn generator(&self, name: &str) -> Result<Element, CdgaError> {
        Element::generator_by_name(self.table.clone(), name)
    }

    /// Leibniz differential, guarded by the truncation.
    pub fn differential(&self, a: &Element) -> Result<Element, CdgaError> {
        if let Some(deg) = a.degree() {
            if deg >= self.truncation {
                return Err(CdgaError::TruncationExceeded {
                    degree: deg,
                    truncation: self.truncation,
                });
            }
        }
        raw_differential(&self.table, &self.diffs, a)
    }

    fn degree_basis(&self, k: usize) -> &DegreeBasis {
        self.degree_data[k].get_or_init(|| {
            let basis = enumerate_monomials(&self.table, k);
            let index = basis
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), i))
                .collect();
            DegreeBasis { basis, index }
        })
    }

    pub fn basis(&self, k: usize) -> &[Monomial] {
        assert!(k <= self.truncation, "degree beyond truncation");
        &self.degree_basis(k).basis
    }

    pub fn basis_dim(&self, k: usize) -> usize {
        self.basis(k).len()
    }

    pub fn element_coords(&self, a: &Element) -> Result<Vec<Rational>, CdgaError> {
        let Some(deg) = a.degree() else {
            // the zero element has no intrinsic degree; callers that know the
            // degree should use `element_coords_at`
            return Ok(Vec::new());
        };
        self.element_coords_at(a, deg)
    }

    pub fn element_coords_at(&self, a: &Element, k: usize) -> Result<Vec<Rational>, CdgaError> {
        if k > self.truncation {
            return Err(CdgaError::TruncationExceeded {
                degree: k,
                truncation: self.truncation,
            });
        }
        let data = self.degree_basis(k);
        let mut coords = vec![Rational::zero(); data.basis.len()];
        for (m, c) in a.terms() {
            let idx = data
                .index
                .get(m)
                .copied()
                .expect("monomial outside the enumerated basis");
            coords[idx] = c.clone();
        }
        Ok(coords)
    }

    pub fn coords_to_element(&self, k: usize, coords: &[Rational]) -> Element {
        let data = self.degree_basis(k);
        assert_eq!(coords.len(), data.basis.len());
        Element::from_terms(
            self.table.clone(),
            data.basis
                .iter()
                .cloned()
                .zip(coords.iter().cloned())
                .collect(),
        )
    }

    fn cohomology_data(&self, k: usize) -> &DegreeCohomology {
        assert!(k < self.truncation, "cohomology needs degree < truncation");
        self.cohom_data[k].get_or_init(|| {
            let rows = self.basis_dim(k + 1);
            let cols = self.basis_dim(k);
            let mut d_matrix = Matrix::zero(rows, cols);
            for j in 0..cols {
                let mono = self.basis(k)[j].clone();
                let e = Element::from_terms(
                    self.table.clone(),
                    vec![(mono, Rational::one())],
                );
                let de = raw_differential(&self.table, &self.diffs, &e)
                    .expect("differential of a basis monomial");
                let coords = self
                    .element_coords_at(&de, k + 1)
                    .expect("differential lands one degree up");
                for (i, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        d_matrix.set(i, j, c);
                    }
                }
            }
            let cocycles = d_matrix.kernel_basis();
            let coboundaries = if k == 0 {
                Subspace::zero(cols)
            } else {
                let prev_rows = self.basis_dim(k);
                let prev_cols = self.basis_dim(k - 1);
                let prev = &self.cohomology_data(k - 1).d_matrix;
                debug_assert_eq!((prev.rows(), prev.cols()), (prev_rows, prev_cols));
                prev.image_basis()
            };
            let reps = cocycles.quotient_representatives(&coboundaries);
            DegreeCohomology {
                d_matrix,
                cocycles,
                coboundaries,
                reps,
            }
        })
    }

    /// Betti number and echelon-canonical cocycle representatives.
    pub fn cohomology_basis(&self, k: usize) -> Result<(usize, Vec<Element>), CdgaError> {
        if k >= self.truncation {
            return Err(CdgaError::TruncationExceeded {
                degree: k,
                truncation: self.truncation,
            });
        }
        let data = self.cohomology_data(k);
        let reps = data
            .reps
            .iter()
            .map(|coords| self.coords_to_element(k, coords))
            .collect();
        Ok((data.reps.len(), reps))
    }

    pub fn betti(&self, k: usize) -> Result<usize, CdgaError> {
        Ok(self.cohomology_basis(k)?.0)
    }

    pub fn betti_vector(&self, max_degree: usize) -> Result<Vec<usize>, CdgaError> {
        (0..=max_degree).map(|k| self.betti(k)).collect()
    }

    pub fn is_cocycle(&self, a: &Element) -> Result<bool, CdgaError> {
        Ok(self.differential(a)?.is_zero())
    }

    /// Coordinates of the cohomology class of a cocycle in the canonical
    /// representative basis of its degree.
    pub fn class_coords(&self, a: &Element, k: usize) -> Result<Vec<Rational>, CdgaError> {
        if !self.is_cocycle(a)? {
            return Err(CdgaError::NotCocycle(k));
        }
        let data = self.cohomology_data(k);
        if data.reps.is_empty() {
            return Ok(Vec::new());
        }
        let dim = self.basis_dim(k);
        let cob = data.coboundaries.basis();
        let cols = data.reps.len() + cob.len();
        let m = Matrix::from_fn(dim, cols, |r, c| {
            if c < data.reps.len() {
                data.reps[c][r].clone()
            } else {
                cob[c - data.reps.len()][r].clone()
            }
        });
        let target = self.element_coords_at(a, k)?;
        let sol = m
            .solve(&target)
            .expect("cocycle must lie in representatives + coboundaries");
        Ok(sol[..data.reps.len()].to_vec())
    }

    pub fn is_exact(&self, a: &Element, k: usize) -> Result<bool, CdgaError> {
        Ok(crate::linalg::vec_is_zero(&self.class_coords(a, k)?))
    }

    /// Echelon-canonical preimage under d of a degree-k target; `None` when
    /// the target is not exact.
    pub fn solve_d(&self, k: usize, target: &Element) -> Result<Option<Element>, CdgaError> {
        assert!(k >= 1, "preimages live one degree down");
        if k > self.truncation {
            return Err(CdgaError::TruncationExceeded {
                degree: k,
                truncation: self.truncation,
            });
        }
        let data = self.cohomology_data(k - 1);
        let target_coords = self.element_coords_at(target, k)?;
        match data.d_matrix.solve(&target_coords) {
            None => Ok(None),
            Some(sol) => Ok(Some(self.coords_to_element(k - 1, &sol))),
        }
    }

    pub fn cocycle_subspace(&self, k: usize) -> &Subspace {
        &self.cohomology_data(k).cocycles
    }

    pub fn coboundary_subspace(&self, k: usize) -> &Subspace {
        &self.cohomology_data(k).coboundaries
    }

    /// Extracts the cohomology ring up to `max_degree` (inclusive), with cup
    /// tensors computed by wedging representatives; the Poincaré pairing is
    /// filled when the top cohomology is one-dimensional.
    pub fn cohomology_ring(&self, max_degree: usize) -> Result<CohomologyRing, CdgaError> {
        if max_degree + 1 > self.truncation {
            return Err(CdgaError::TruncationExceeded {
                degree: max_degree + 1,
                truncation: self.truncation,
            });
        }
        let mut dims = Vec::with_capacity(max_degree + 1);
        let mut labels = Vec::with_capacity(max_degree + 1);
        let mut reps: Vec<Vec<Element>> = Vec::with_capacity(max_degree + 1);
        for k in 0..=max_degree {
            let (betti, r) = self.cohomology_basis(k)?;
            dims.push(betti);
            labels.push(r.iter().map(Element::render).collect());
            reps.push(r);
        }
        let mut cup = HashMap::new();
        for p in 1..=max_degree {
            for q in p..=max_degree {
                if p + q > max_degree {
                    continue;
                }
                let mut table = Vec::with_capacity(dims[p]);
                for i in 0..dims[p] {
                    let mut row = Vec::with_capacity(dims[q]);
                    for j in 0..dims[q] {
                        let w = reps[p][i].wedge(&reps[q][j])?;
                        row.push(self.class_coords(&w, p + q)?);
                    }
                    table.push(row);
                }
                cup.insert((p, q), table);
            }
        }
        CohomologyRing::assemble(dims, labels, cup)
    }
}

/// All monomials of total degree k, ascending lexicographic order.
fn enumerate_monomials(table: &GeneratorTable, k: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut word: Vec<u32> = Vec::new();
    fn rec(
        table: &GeneratorTable,
        next_gen: usize,
        remaining: usize,
        word: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(Monomial(word.clone()));
            return;
        }
        if next_gen == table.len() {
            return;
        }
        let deg = table.degree(next_gen);
        let max_mult = if table.is_odd(next_gen) {
            1
        } else {
            remaining / deg
        };
        for mult in 0..=max_mult {
            if mult * deg > remaining {
                break;
            }
            if mult > 0 {
                word.extend(std::iter::repeat_n(next_gen as u32, mult));
            }
            rec(table, next_gen + 1, remaining - mult * deg, word, out);
            for _ in 0..mult {
                word.pop();
            }
        }
    }
    rec(table, 0, k, &mut word, &mut out);
    out.sort();
    out
}

/// Per-degree Betti bases with cup-product tensors and, when the top degree
/// is one-dimensional, the Poincaré pairing against the fundamental class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyRing {
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    /// cup[(p,q)][i][j] for 1 <= p <= q, p+q <= top: coordinates in H^{p+q}.
    cup: HashMap<(usize, usize), Vec<Vec<Vec<Rational>>>>,
    /// Pairing matrices H^p x H^{top-p} -> Q via the fundamental coordinate.
    pairing: Option<Vec<Matrix>>,
}

impl CohomologyRing {
    /// Build from per-degree dimensions, labels and cup tensors given for
    /// p <= q; symmetric counterparts are derived by graded commutativity.
    pub fn assemble(
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        cup: HashMap<(usize, usize), Vec<Vec<Vec<Rational>>>>,
    ) -> Result<Self, CdgaError> {
        if dims.first() != Some(&1) {
            return Err(CdgaError::RingInconsistency(
                "H^0 must be one-dimensional".to_string(),
            ));
        }
        let top = dims.len() - 1;
        let mut ring = CohomologyRing {
            dims,
            labels,
            cup,
            pairing: None,
        };
        ring.validate()?;
        if ring.dims[top] == 1 {
            let mut pairing = Vec::with_capacity(top + 1);
            for p in 0..=top {
                let q = top - p;
                let m = Matrix::from_fn(ring.dims[p], ring.dims[q], |i, j| {
                    let coords = ring.cup_basis(p, q, i, j);
                    coords.first().cloned().unwrap_or_else(Rational::zero)
                });
                pairing.push(m);
            }
            ring.pairing = Some(pairing);
        }
        Ok(ring)
    }

    /// The full exterior algebra on `names` (degree 1 each) viewed as the
    /// cohomology ring of a torus.
    pub fn exterior(names: &[&str]) -> Result<Self, CdgaError> {
        let table = GeneratorTable::degree_one(names)?;
        let n = names.len();
        let cdga = Cdga::builder(table).truncation(n + 1).build()?;
        cdga.cohomology_ring(n)
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, p: usize) -> usize {
        self.dims.get(p).copied().unwrap_or(0)
    }

    pub fn labels(&self, p: usize) -> &[String] {
        &self.labels[p]
    }

    /// Cup of two basis classes, as coordinates in H^{p+q}.
    pub fn cup_basis(&self, p: usize, q: usize, i: usize, j: usize) -> Vec<Rational> {
        let target_dim = self.dim(p + q);
        if target_dim == 0 {
            return Vec::new();
        }
        if p == 0 || q == 0 {
            // H^0 is spanned by 1
            let mut out = vec![Rational::zero(); target_dim];
            out[if p == 0 { j } else { i }] = Rational::one();
            return out;
        }
        if p <= q {
            self.cup
                .get(&(p, q))
                .map(|t| t[i][j].clone())
                .unwrap_or_else(|| vec![Rational::zero(); target_dim])
        } else {
            let mut v = self.cup_basis(q, p, j, i);
            if (p * q) % 2 == 1 {
                for c in &mut v {
                    *c = -c.clone();
                }
            }
            v
        }
    }

    /// Bilinear extension of the cup product to coordinate vectors.
    pub fn cup(&self, p: usize, q: usize, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim(p + q)];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                for (k, c) in self.cup_basis(p, q, i, j).iter().enumerate() {
                    out[k] += ui * vj * c;
                }
            }
        }
        out
    }

    pub fn pairing(&self, p: usize) -> Result<&Matrix, CdgaError> {
        match &self.pairing {
            Some(ms) => Ok(&ms[p]),
            None => Err(CdgaError::TopNotOneDimensional(
                self.dims[self.top_degree()],
            )),
        }
    }

    /// Poincaré pairing of coordinate vectors in H^p and H^{top-p}.
    pub fn pair(&self, p: usize, u: &[Rational], v: &[Rational]) -> Result<Rational, CdgaError> {
        let m = self.pairing(p)?;
        let mut acc = Rational::zero();
        for i in 0..u.len() {
            for j in 0..v.len() {
                acc += &u[i] * m.at(i, j) * &v[j];
            }
        }
        Ok(acc)
    }

    /// Structural coherence: graded commutativity and associativity of the
    /// stored cup tensors.
    pub fn validate(&self) -> Result<(), CdgaError> {
        let top = self.top_degree();
        for p in 1..=top {
            for q in 1..=top {
                if p + q > top {
                    continue;
                }
                for i in 0..self.dim(p) {
                    for j in 0..self.dim(q) {
                        let uv = self.cup_basis(p, q, i, j);
                        let mut vu = self.cup_basis(q, p, j, i);
                        if (p * q) % 2 == 1 {
                            for c in &mut vu {
                                *c = -c.clone();
                            }
                        }
                        if uv != vu {
                            return Err(CdgaError::RingInconsistency(format!(
                                "graded commutativity fails at H^{p}[{i}] * H^{q}[{j}]"
                            )));
                        }
                    }
                }
            }
        }
        for p in 1..=top {
            for q in 1..=top {
                for r in 1..=top {
                    if p + q + r > top {
                        continue;
                    }
                    for i in 0..self.dim(p) {
                        for j in 0..self.dim(q) {
                            for k in 0..self.dim(r) {
                                let left = {
                                    let uv = self.cup_basis(p, q, i, j);
                                    let w = crate::linalg::unit_vector(self.dim(r), k);
                                    self.cup(p + q, r, &uv, &w)
                                };
                                let right = {
                                    let vw = self.cup_basis(q, r, j, k);
                                    let u = crate::linalg::unit_vector(self.dim(p), i);
                                    self.cup(p, q + r, &u, &vw)
                                };
                                if left != right {
                                    return Err(CdgaError::RingInconsistency(format!(
                                        "associativity fails at H^{p}[{i}], H^{q}[{j}], H^{r}[{k}]"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
