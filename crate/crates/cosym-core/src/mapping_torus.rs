//! Mapping-torus cohomology and formality analysis from a fiber cohomology
//! ring and per-degree pullback matrices.
//!
//! For a fiber N with pullback φ*, the cohomology of the torus splits as
//! H^p(M) ≅ C^{p-1} ⊕ K^p with K = ker(φ*-id) and C = coker(φ*-id). The
//! multiplicity r of the eigenvalue 1 in the minimal polynomial of φ*_p is
//! read off the stabilizing filtration ker(φ*_p-id)^j. When r ≥ 2 the torus
//! is non-formal and a Massey-product witness is constructed and checked
//! against the Poincaré pairing of the fiber; when the partial-model
//! hypotheses hold with r = 1 the torus is p-formal. Everything else stays
//! inconclusive: only certified verdicts are emitted.

use crate::cdga::{Cdga, CdgaError, CohomologyRing, Element, Generator, GeneratorTable};
use crate::linalg::{self, Eigen1Filtration, LinalgError, Matrix, Subspace};
use crate::rational::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TorusError {
    #[error("mapping-torus spec invalid:\n{}", .0.join("\n"))]
    Invalid(Vec<String>),
    #[error("eigenvalue 1 of φ*_{p} has multiplicity {r}, witness needs r >= 2")]
    MultiplicityTooLow { p: usize, r: usize },
    #[error("partial-model hypotheses violated:\n{}", .0.join("\n"))]
    ModelHypothesis(Vec<String>),
    #[error(transparent)]
    Cdga(#[from] CdgaError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Fiber cohomology ring plus the pullback matrix per degree. Columns of
/// `phi[k]` are the images of the degree-k basis classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingTorusSpec {
    pub fiber: CohomologyRing,
    pub phi: Vec<Matrix>,
    /// Optional declared symplectic class in H² coordinates; validation
    /// checks it is fixed by φ*, which forces the eigenvalue 1 at p = 2.
    pub symplectic_class: Option<Vec<Rational>>,
}

/// phi[k] = k-th exterior power of the degree-1 pullback; the right notion
/// for fibers whose ring is the exterior algebra on degree-1 classes (tori).
pub fn phi_from_exterior_powers(phi1: &Matrix, top: usize) -> Vec<Matrix> {
    (0..=top).map(|k| phi1.exterior_power(k)).collect()
}

impl MappingTorusSpec {
    pub fn new(
        fiber: CohomologyRing,
        phi: Vec<Matrix>,
        symplectic_class: Option<Vec<Rational>>,
    ) -> Self {
        MappingTorusSpec {
            fiber,
            phi,
            symplectic_class,
        }
    }

    pub fn top_degree(&self) -> usize {
        self.fiber.top_degree()
    }

    /// Full invariant check with per-failure diagnostics: ring coherence,
    /// identity in degrees 0 and n (orientation), perfect Poincaré pairing,
    /// ring-endomorphism property on all stored basis pairs, pairing
    /// invariance, and fixedness of a declared symplectic class.
    pub fn validate(&self) -> Result<(), TorusError> {
        let mut issues = Vec::new();
        let n = self.top_degree();
        if let Err(e) = self.fiber.validate() {
            issues.push(format!("fiber ring: {e}"));
        }
        if self.phi.len() != n + 1 {
            issues.push(format!(
                "need {} pullback matrices (degrees 0..={n}), got {}",
                n + 1,
                self.phi.len()
            ));
            return Err(TorusError::Invalid(issues));
        }
        for (k, m) in self.phi.iter().enumerate() {
            let d = self.fiber.dim(k);
            if m.rows() != d || m.cols() != d {
                issues.push(format!(
                    "phi[{k}] is {}x{}, H^{k} has dimension {d}",
                    m.rows(),
                    m.cols()
                ));
            }
        }
        if !issues.is_empty() {
            return Err(TorusError::Invalid(issues));
        }
        if self.phi[0] != Matrix::identity(self.fiber.dim(0)) {
            issues.push("phi[0] must be the identity on H^0".to_string());
        }
        match self.fiber.pairing(0) {
            Err(_) => issues.push(format!(
                "top cohomology must be one-dimensional for the pairing, got dim {}",
                self.fiber.dim(n)
            )),
            Ok(_) => {
                if self.phi[n] != Matrix::identity(self.fiber.dim(n)) {
                    issues.push(
                        "phi must be the identity on the top degree (orientation-preserving)"
                            .to_string(),
                    );
                }
                for p in 0..=n {
                    let pm = self.fiber.pairing(p).expect("pairing present");
                    if pm.rows() != pm.cols() || pm.det().is_zero() {
                        issues.push(format!(
                            "Poincaré pairing H^{p} x H^{} is not perfect",
                            n - p
                        ));
                    }
                }
            }
        }
        // φ*(u ∪ v) = φ*u ∪ φ*v on all stored basis pairs
        for p in 1..n {
            for q in p..n {
                if p + q > n {
                    continue;
                }
                for i in 0..self.fiber.dim(p) {
                    for j in 0..self.fiber.dim(q) {
                        let lhs = self.phi[p + q].apply(&self.fiber.cup_basis(p, q, i, j));
                        let rhs = self
                            .fiber
                            .cup(p, q, &self.phi[p].col(i), &self.phi[q].col(j));
                        if lhs != rhs {
                            issues.push(format!(
                                "φ* is not a ring endomorphism at H^{p}[{i}] ∪ H^{q}[{j}]"
                            ));
                        }
                    }
                }
            }
        }
        // pairing invariance <φ*u, φ*v> = <u, v>
        if self.fiber.pairing(0).is_ok() {
            for p in 0..=n {
                let pm = self.fiber.pairing(p).expect("pairing present");
                let transported = self.phi[p].transpose().mul(pm).mul(&self.phi[n - p]);
                if transported != *pm {
                    issues.push(format!("pairing is not φ*-invariant in degree {p}"));
                }
            }
        }
        if let Some(s) = &self.symplectic_class {
            if s.len() != self.fiber.dim(2) || linalg::vec_is_zero(s) {
                issues.push("declared symplectic class must be a nonzero H² vector".to_string());
            } else if self.phi[2].apply(s) != *s {
                issues.push("declared symplectic class is not fixed by φ*".to_string());
            }
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(TorusError::Invalid(issues))
        }
    }
}

/// Kernels, cokernel representatives and the Betti numbers of the torus,
/// degrees 0..=n+1.
#[derive(Debug, Clone)]
pub struct TorusCohomology {
    pub betti: Vec<usize>,
    /// K_p = ker(φ*_p - id), echelon-canonical, p = 0..=n.
    pub kernels: Vec<Subspace>,
    /// Echelon-canonical representatives of C_p = H^p / im(φ*_p - id).
    pub cokernel_reps: Vec<Vec<Vec<Rational>>>,
}

/// Exact kernels and cokernels per degree; betti[p] = dim K_p + dim C_{p-1}.
pub fn mv_cohomology(spec: &MappingTorusSpec) -> Result<TorusCohomology, TorusError> {
    spec.validate()?;
    let n = spec.top_degree();
    let mut kernels = Vec::with_capacity(n + 1);
    let mut cokernel_reps = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let dim = spec.fiber.dim(p);
        let shifted = spec.phi[p].sub(&Matrix::identity(dim));
        let kernel = shifted.kernel_basis();
        let image = shifted.image_basis();
        let full = Subspace::full(dim);
        cokernel_reps.push(full.quotient_representatives(&image));
        kernels.push(kernel);
    }
    let mut betti = Vec::with_capacity(n + 2);
    for p in 0..=n + 1 {
        let k_dim = if p <= n { kernels[p].dim() } else { 0 };
        let c_dim = if p == 0 { 0 } else { cokernel_reps[p - 1].len() };
        betti.push(k_dim + c_dim);
    }
    Ok(TorusCohomology {
        betti,
        kernels,
        cokernel_reps,
    })
}

/// Generalized eigenspace data of φ*_p at λ = 1.
pub fn eigen1_data(spec: &MappingTorusSpec, p: usize) -> Result<Eigen1Filtration, TorusError> {
    spec.validate()?;
    Ok(spec.phi[p].eigen1_filtration()?)
}

/// The Massey-obstruction data extracted from a degree with multiplicity
/// r ≥ 2: β in K₂∖K₁, α = φ*β - β, and a class ξ in im(φ*_{n-p} - id) that
/// pairs nontrivially with β. Every invariant is re-checked on construction.
#[derive(Debug, Clone)]
pub struct MasseyWitness {
    pub p: usize,
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
    pub xi: Vec<Rational>,
    pub kappa: Rational,
}

pub fn massey_witness(spec: &MappingTorusSpec, p: usize) -> Result<MasseyWitness, TorusError> {
    spec.validate()?;
    let n = spec.top_degree();
    let filtration = spec.phi[p].eigen1_filtration()?;
    if filtration.r < 2 {
        return Err(TorusError::MultiplicityTooLow {
            p,
            r: filtration.r,
        });
    }
    let k1 = &filtration.kernels[0];
    let k2 = &filtration.kernels[1];
    let shifted = spec.phi[p].sub(&Matrix::identity(spec.fiber.dim(p)));

    // first echelon basis vector of K₂ outside K₁, normalized so that
    // α = φ*β - β has leading coefficient 1
    let beta_raw = k2
        .basis()
        .iter()
        .find(|v| !k1.contains(v))
        .expect("r >= 2 gives K2 strictly larger than K1");
    let alpha_raw = shifted.apply(beta_raw);
    let lead = alpha_raw
        .iter()
        .find(|c| !c.is_zero())
        .expect("φ*β - β is nonzero for β outside K₁")
        .clone();
    let alpha: Vec<Rational> = alpha_raw.iter().map(|c| c / &lead).collect();
    let beta: Vec<Rational> = beta_raw.iter().map(|c| c / &lead).collect();

    // scan the image of φ*_{n-p} - id for a class pairing nontrivially with β;
    // the perfect pairing of the fiber guarantees a basis vector works
    let dual_shifted = spec.phi[n - p].sub(&Matrix::identity(spec.fiber.dim(n - p)));
    let image = dual_shifted.image_basis();
    let mut found = None;
    for xi in image.basis() {
        let kappa = spec.fiber.pair(p, &beta, xi)?;
        if !kappa.is_zero() {
            found = Some((xi.clone(), kappa));
            break;
        }
    }
    let Some((xi, kappa)) = found else {
        return Err(TorusError::Invalid(vec![format!(
            "no image class of degree {} pairs with β; the pairing cannot be perfect",
            n - p
        )]));
    };

    // machine-checked proof obligations
    let mut obligations = Vec::new();
    if !k1.contains(&alpha) {
        obligations.push("α is not fixed by φ*".to_string());
    }
    if !shifted.image_basis().contains(&alpha) {
        obligations.push("α is not in im(φ*-id)".to_string());
    }
    if !spec.fiber.pair(p, &alpha, &xi)?.is_zero() {
        obligations.push("<α, ξ> must vanish".to_string());
    }
    if !obligations.is_empty() {
        return Err(TorusError::Invalid(obligations));
    }
    Ok(MasseyWitness {
        p,
        alpha,
        beta,
        xi,
        kappa,
    })
}

/// One layer G_j = K_j / K_{j-1} of the degree-p generators of the partial
/// model, with echelon-canonical coset representatives.
#[derive(Debug, Clone)]
pub struct ModelLayer {
    pub labels: Vec<String>,
    pub reps: Vec<Vec<Rational>>,
}

/// The partial minimal model ⋀(a) ⊗ ⋀(W^p): one closed degree-1 generator a,
/// layered degree-p generators with dw = a·F(w) where F is induced by
/// φ*_p - id, built as an actual CDGA so its cohomology can be compared with
/// the Mayer-Vietoris answer.
#[derive(Debug, Clone)]
pub struct PartialMinimalModel {
    pub p: usize,
    pub a_label: String,
    pub layers: Vec<ModelLayer>,
    /// dw = a · Σ c_k w', stored per generator label.
    pub differential: BTreeMap<String, Vec<(String, Rational)>>,
    pub fragment_betti: Vec<usize>,
}

pub fn partial_minimal_model(
    spec: &MappingTorusSpec,
    p: usize,
) -> Result<PartialMinimalModel, TorusError> {
    spec.validate()?;
    let mut violations = Vec::new();
    if p < 2 {
        violations.push("partial models are built for p >= 2 only".to_string());
    }
    for k in 1..p.min(spec.top_degree() + 1) {
        let dim = spec.fiber.dim(k);
        if dim == 0 {
            continue;
        }
        let shifted = spec.phi[k].sub(&Matrix::identity(dim));
        if shifted.kernel_basis().dim() != 0 {
            violations.push(format!("φ*_{k} - id must be invertible below degree {p}"));
        }
    }
    if p > spec.top_degree() {
        violations.push(format!("degree {p} exceeds the fiber top degree"));
        return Err(TorusError::ModelHypothesis(violations));
    }
    let filtration = spec.phi[p].eigen1_filtration()?;
    if filtration.r == 0 {
        violations.push(format!("φ*_{p} has no eigenvalue 1"));
    }
    if !violations.is_empty() {
        return Err(TorusError::ModelHypothesis(violations));
    }

    let dim = spec.fiber.dim(p);
    let r = filtration.r;
    let zero = Subspace::zero(dim);
    let mut layers = Vec::with_capacity(r);
    for j in 0..r {
        let below = if j == 0 {
            &zero
        } else {
            &filtration.kernels[j - 1]
        };
        let reps = filtration.kernels[j].quotient_representatives(below);
        let labels = (0..reps.len())
            .map(|i| format!("w{}_{}", j + 1, i + 1))
            .collect();
        layers.push(ModelLayer { labels, reps });
    }

    // F: G_j -> G_{j-1} induced by φ*_p - id; coordinates taken modulo K_{j-2}
    let shifted = spec.phi[p].sub(&Matrix::identity(dim));
    let mut differential: BTreeMap<String, Vec<(String, Rational)>> = BTreeMap::new();
    for j in 0..r {
        for (label, w) in layers[j].labels.iter().zip(&layers[j].reps) {
            if j == 0 {
                differential.insert(label.clone(), Vec::new());
                continue;
            }
            let image = shifted.apply(w);
            let modulo = if j >= 2 {
                filtration.kernels[j - 2].clone()
            } else {
                Subspace::zero(dim)
            };
            let prev = &layers[j - 1];
            let cols: Vec<Vec<Rational>> = prev
                .reps
                .iter()
                .cloned()
                .chain(modulo.basis().iter().cloned())
                .collect();
            let m = Matrix::from_fn(dim, cols.len(), |rr, cc| cols[cc][rr].clone());
            let sol = m.solve(&image).expect("φ*-id maps K_j into K_{j-1}");
            let entry = prev
                .labels
                .iter()
                .cloned()
                .zip(sol.iter().cloned())
                .filter(|(_, c)| !c.is_zero())
                .collect();
            differential.insert(label.clone(), entry);
        }
    }

    // realize the fragment as a CDGA and compute its cohomology
    let mut gens = vec![Generator {
        name: "a".to_string(),
        degree: 1,
    }];
    for layer in &layers {
        for label in &layer.labels {
            gens.push(Generator {
                name: label.clone(),
                degree: p,
            });
        }
    }
    let table = GeneratorTable::new(gens)?;
    let mut builder = Cdga::builder(table.clone()).truncation(p + 2);
    let a = Element::generator_by_name(table.clone(), "a")?;
    for (label, terms) in &differential {
        if terms.is_empty() {
            continue;
        }
        let mut value = Element::zero(table.clone());
        for (target, c) in terms {
            let w = Element::generator_by_name(table.clone(), target)?;
            value = value.add(&a.wedge(&w)?.scale(c))?;
        }
        builder = builder.differential(label, value)?;
    }
    let fragment = builder.build()?;
    let fragment_betti = fragment.betti_vector(p + 1)?;

    // the fragment must agree with Mayer-Vietoris through degree p and
    // inject into [a]·coker(φ*_p - id) at degree p+1
    let torus = mv_cohomology(spec)?;
    let mut mismatches = Vec::new();
    for k in 0..=p {
        if fragment_betti[k] != torus.betti[k] {
            mismatches.push(format!(
                "fragment H^{k} has dimension {}, torus has {}",
                fragment_betti[k], torus.betti[k]
            ));
        }
    }
    let coker_dim = torus.cokernel_reps[p].len();
    if fragment_betti[p + 1] != coker_dim {
        mismatches.push(format!(
            "fragment H^{} has dimension {}, expected coker dimension {}",
            p + 1,
            fragment_betti[p + 1],
            coker_dim
        ));
    }
    if !mismatches.is_empty() {
        return Err(TorusError::ModelHypothesis(mismatches));
    }

    Ok(PartialMinimalModel {
        p,
        a_label: "a".to_string(),
        layers,
        differential,
        fragment_betti,
    })
}

/// Per-degree eigenvalue report for the verdict checklist.
#[derive(Debug, Clone)]
pub struct DegreeEigenReport {
    pub p: usize,
    pub dims: Vec<usize>,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    NonFormal { p: usize },
    PFormal { p: usize },
    Inconclusive,
}

/// Verdict plus the hypothesis checklist and, when available, the witness
/// and the partial model. The logic is deliberately conservative: NonFormal
/// only with an r ≥ 2 certificate, PFormal only under the exact partial-model
/// hypotheses, everything else Inconclusive.
#[derive(Debug, Clone)]
pub struct FormalityReport {
    pub verdict: Verdict,
    pub checklist: Vec<DegreeEigenReport>,
    pub witness: Option<MasseyWitness>,
    pub model: Option<PartialMinimalModel>,
}

pub fn formality_verdict(spec: &MappingTorusSpec) -> Result<FormalityReport, TorusError> {
    spec.validate()?;
    let n = spec.top_degree();
    let mut checklist = Vec::with_capacity(n);
    for p in 1..=n {
        let f = spec.phi[p].eigen1_filtration()?;
        checklist.push(DegreeEigenReport {
            p,
            dims: f.dims.clone(),
            r: f.r,
        });
    }
    if let Some(report) = checklist.iter().find(|c| c.r >= 2) {
        let p = report.p;
        let witness = massey_witness(spec, p)?;
        let hypotheses_hold = p >= 2 && checklist[..p - 1].iter().all(|c| c.r == 0);
        let model = if hypotheses_hold {
            Some(partial_minimal_model(spec, p)?)
        } else {
            None
        };
        return Ok(FormalityReport {
            verdict: Verdict::NonFormal { p },
            checklist,
            witness: Some(witness),
            model,
        });
    }
    if let Some(report) = checklist.iter().find(|c| c.r == 1) {
        let p = report.p;
        if p >= 2 {
            let model = partial_minimal_model(spec, p)?;
            return Ok(FormalityReport {
                verdict: Verdict::PFormal { p },
                checklist,
                witness: None,
                model: Some(model),
            });
        }
    }
    Ok(FormalityReport {
        verdict: Verdict::Inconclusive,
        checklist,
        witness: None,
        model: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn t4_phi1() -> Matrix {
        Matrix::from_i64(&[
            &[-1, 0, 0, 0],
            &[0, -1, 0, 0],
            &[0, 0, -1, 0],
            &[0, 0, 1, -1],
        ])
    }

    fn t4_spec() -> MappingTorusSpec {
        let fiber = CohomologyRing::exterior(&["e1", "e2", "e3", "e4"]).unwrap();
        let phi = phi_from_exterior_powers(&t4_phi1(), 4);
        // F = e12 + e34 is fixed by φ*
        let mut sympl = vec![int(0); 6];
        sympl[0] = int(1);
        sympl[5] = int(1);
        MappingTorusSpec::new(fiber, phi, Some(sympl))
    }

    fn a_torus_spec() -> MappingTorusSpec {
        let a = Matrix::from_i64(&[&[2, 1, 0, 0], &[1, 1, 0, 0], &[2, 1, 2, 1], &[1, 1, 1, 1]]);
        let fiber = CohomologyRing::exterior(&["e1", "e2", "e3", "e4"]).unwrap();
        let phi = phi_from_exterior_powers(&a, 4);
        // -2*e13 + e14 + e23 + 2*e24 is a fixed nondegenerate class
        let sympl = vec![int(0), int(-2), int(1), int(1), int(2), int(0)];
        MappingTorusSpec::new(fiber, phi, Some(sympl))
    }

    /// Genus-k surface ring with symplectic basis x1,y1,..,xk,yk.
    fn surface_ring(k: usize) -> CohomologyRing {
        let mut labels1 = Vec::new();
        for i in 1..=k {
            labels1.push(format!("x{i}"));
            labels1.push(format!("y{i}"));
        }
        let mut cup = std::collections::HashMap::new();
        let mut table = vec![vec![vec![int(0)]; 2 * k]; 2 * k];
        for i in 0..k {
            table[2 * i][2 * i + 1] = vec![int(1)];
            table[2 * i + 1][2 * i] = vec![int(-1)];
        }
        cup.insert((1, 1), table);
        CohomologyRing::assemble(
            vec![1, 2 * k, 1],
            vec![
                vec!["1".to_string()],
                labels1,
                vec!["vol".to_string()],
            ],
            cup,
        )
        .unwrap()
    }

    /// φ* with a single unipotent block: x1 -> x1 + y1.
    fn sigma_spec(k: usize, blocks: usize) -> MappingTorusSpec {
        let mut phi1 = Matrix::identity(2 * k);
        for b in 0..blocks {
            phi1.set(2 * b + 1, 2 * b, int(1));
        }
        let phi = vec![Matrix::identity(1), phi1, Matrix::identity(1)];
        MappingTorusSpec::new(surface_ring(k), phi, Some(vec![int(1)]))
    }

    #[test]
    fn validate_t4() {
        t4_spec().validate().unwrap();
    }

    #[test]
    fn validate_rejects_orientation_reversal() {
        let mut spec = t4_spec();
        spec.phi[4] = Matrix::from_i64(&[&[-1]]);
        match spec.validate() {
            Err(TorusError::Invalid(issues)) => {
                assert!(issues.iter().any(|m| m.contains("orientation")), "{issues:?}");
            }
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn validate_rejects_non_ring_endomorphism() {
        let mut spec = t4_spec();
        // break functoriality in degree 2 while keeping dimensions right
        spec.phi[2] = Matrix::identity(6);
        assert!(spec.validate().is_err());
    }

    #[test]
    fn validate_sigma() {
        sigma_spec(2, 1).validate().unwrap();
        sigma_spec(2, 2).validate().unwrap();
    }

    #[test]
    fn betti_of_identity_torus() {
        // φ = id on T²: the 3-torus
        let fiber = CohomologyRing::exterior(&["x", "y"]).unwrap();
        let phi = vec![Matrix::identity(1), Matrix::identity(2), Matrix::identity(1)];
        let spec = MappingTorusSpec::new(fiber, phi, None);
        let c = mv_cohomology(&spec).unwrap();
        assert_eq!(c.betti, vec![1, 3, 3, 1]);
        let report = formality_verdict(&spec).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn betti_of_t4_torus() {
        let c = mv_cohomology(&t4_spec()).unwrap();
        assert_eq!(c.betti, vec![1, 1, 4, 4, 1, 1]);
        let expected_k2 = Subspace::from_vectors(
            6,
            vec![
                linalg::unit_vector(6, 0),
                linalg::unit_vector(6, 2),
                linalg::unit_vector(6, 4),
                linalg::unit_vector(6, 5),
            ],
        );
        assert_eq!(c.kernels[2], expected_k2);
    }

    #[test]
    fn betti_of_sigma_tori() {
        for k in 1..=2 {
            let c = mv_cohomology(&sigma_spec(k, 1)).unwrap();
            assert_eq!(c.betti, vec![1, 2 * k, 2 * k, 1]);
        }
        let c = mv_cohomology(&sigma_spec(2, 2)).unwrap();
        assert_eq!(c.betti, vec![1, 3, 3, 1]);
    }

    #[test]
    fn eigen_data_cases() {
        let f = eigen1_data(&t4_spec(), 2).unwrap();
        assert_eq!(f.dims, vec![4, 6]);
        assert_eq!(f.r, 2);

        let f = eigen1_data(&sigma_spec(1, 1), 1).unwrap();
        assert_eq!(f.dims, vec![1, 2]);
        assert_eq!(f.r, 2);

        let f = eigen1_data(&sigma_spec(3, 1), 1).unwrap();
        assert_eq!(f.dims, vec![5, 6]);
        assert_eq!(f.r, 2);

        let f = eigen1_data(&a_torus_spec(), 2).unwrap();
        assert_eq!(f.dims, vec![2, 3, 4]);
        assert_eq!(f.r, 3);
        assert_eq!(f.jordan_blocks(), vec![1, 3]);
    }

    #[test]
    fn witness_t4() {
        let w = massey_witness(&t4_spec(), 2).unwrap();
        // β = -e13, α = e14, ξ = e24, κ = 1
        assert_eq!(w.beta, vec![int(0), int(-1), int(0), int(0), int(0), int(0)]);
        assert_eq!(w.alpha, linalg::unit_vector(6, 2));
        assert_eq!(w.xi, linalg::unit_vector(6, 4));
        assert_eq!(w.kappa, int(1));
    }

    #[test]
    fn witness_sigma1() {
        let w = massey_witness(&sigma_spec(1, 1), 1).unwrap();
        assert_eq!(w.beta, linalg::unit_vector(2, 0));
        assert_eq!(w.alpha, linalg::unit_vector(2, 1));
        assert_eq!(w.xi, linalg::unit_vector(2, 1));
        assert_eq!(w.kappa, int(1));
    }

    #[test]
    fn witness_needs_multiplicity() {
        let err = massey_witness(&t4_spec(), 1);
        assert!(matches!(err, Err(TorusError::MultiplicityTooLow { p: 1, r: 0 })));
    }

    #[test]
    fn witness_a_torus_obligations() {
        let spec = a_torus_spec();
        let w = massey_witness(&spec, 2).unwrap();
        assert!(!w.kappa.is_zero());
        assert!(spec.fiber.pair(2, &w.alpha, &w.xi).unwrap().is_zero());
    }

    #[test]
    fn verdict_t4_nonformal_with_model() {
        let report = formality_verdict(&t4_spec()).unwrap();
        assert_eq!(report.verdict, Verdict::NonFormal { p: 2 });
        let w = report.witness.unwrap();
        assert_eq!(w.alpha, linalg::unit_vector(6, 2));
        let model = report.model.unwrap();
        assert_eq!(model.layers.len(), 2);
        assert_eq!(model.layers[0].reps.len(), 4);
        assert_eq!(model.layers[1].reps.len(), 2);
        // non-closed generators map into a·G1
        for label in &model.layers[1].labels {
            assert!(!model.differential[label].is_empty());
        }
    }

    #[test]
    fn verdict_sigma_nonformal_p1() {
        let report = formality_verdict(&sigma_spec(2, 1)).unwrap();
        assert_eq!(report.verdict, Verdict::NonFormal { p: 1 });
        assert!(report.witness.is_some());
        assert!(report.model.is_none());
    }

    #[test]
    fn verdict_a_torus() {
        let report = formality_verdict(&a_torus_spec()).unwrap();
        assert_eq!(report.verdict, Verdict::NonFormal { p: 2 });
        let model = report.model.unwrap();
        let dims: Vec<usize> = model.layers.iter().map(|l| l.reps.len()).collect();
        assert_eq!(dims, vec![2, 1, 1]);
    }

    #[test]
    fn model_p_formal_case() {
        // a fiber where φ*₁ - id is invertible and φ*₂ fixes exactly a
        // 1-dimensional space with r = 1: reuse the 4-torus with φ = -id
        let phi1 = Matrix::identity(4).scale(&int(-1));
        let fiber = CohomologyRing::exterior(&["e1", "e2", "e3", "e4"]).unwrap();
        let spec = MappingTorusSpec::new(fiber, phi_from_exterior_powers(&phi1, 4), None);
        spec.validate().unwrap();
        let report = formality_verdict(&spec).unwrap();
        assert_eq!(report.verdict, Verdict::PFormal { p: 2 });
        let model = report.model.unwrap();
        assert_eq!(model.layers.len(), 1);
        // W^p all closed
        for labels in model.layers.iter().map(|l| &l.labels) {
            for label in labels {
                assert!(model.differential[label].is_empty());
            }
        }
    }

    #[test]
    fn model_hypothesis_violations_reported() {
        let err = partial_minimal_model(&sigma_spec(1, 1), 1);
        assert!(matches!(err, Err(TorusError::ModelHypothesis(_))));
        // eigenvalue 1 present at degree 1 for φ = id blocks p = 2
        let fiber = CohomologyRing::exterior(&["x", "y"]).unwrap();
        let phi = vec![Matrix::identity(1), Matrix::identity(2), Matrix::identity(1)];
        let spec = MappingTorusSpec::new(fiber, phi, None);
        let err = partial_minimal_model(&spec, 2);
        assert!(matches!(err, Err(TorusError::ModelHypothesis(_))));
    }

    #[test]
    fn duality_and_euler_of_torus_betti() {
        for spec in [t4_spec(), a_torus_spec(), sigma_spec(2, 1), sigma_spec(2, 2)] {
            let c = mv_cohomology(&spec).unwrap();
            let n = c.betti.len();
            let euler: i64 = c
                .betti
                .iter()
                .enumerate()
                .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            assert_eq!(euler, 0);
            for p in 0..n {
                assert_eq!(c.betti[p], c.betti[n - 1 - p], "duality at {p}");
            }
            // betti[p] = dim K_p + dim K_{p-1}
            for p in 1..n - 1 {
                assert_eq!(c.betti[p], c.kernels[p].dim() + c.kernels[p - 1].dim());
            }
        }
    }
}
