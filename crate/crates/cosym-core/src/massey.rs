//! Triple and quadruple Massey products in finite CDGAs.
//!
//! The triple product ⟨[x],[y],[z]⟩ is computed from the standard defining
//! equations ds = (-1)^|x| x·y and dt = (-1)^|y| y·z with the cocycle
//! w = (-1)^|x| x·t + (-1)^(|x|+|y|-1) s·z, and compared against the exact
//! indeterminacy subspace [x]·H + H·[z]. All cochain solutions are
//! echelon-canonical, so reported representatives are deterministic.
//!
//! The quadruple product searches for a compatible defining system by
//! linear algebra (the two interior exactness conditions are affine in the
//! cocycle corrections of the secondary cochains) and reports one value
//! together with an enumerated variation family: the classes [x1]·H and
//! H·[x4], the first-order value changes along the kernel of the joint
//! system, and the second-order mixed differences. Every reachable value
//! lies in the affine span of that family, so a representative outside the
//! span certifies genuine nonvanishing. Vanishing is only certified when
//! the computed representative class is exactly zero: the full set of
//! values over all defining systems is a quadratic image, not a subspace.

use crate::cdga::{Cdga, CdgaError, Element};
use crate::linalg::{self, Matrix, Subspace};
use crate::rational::Rational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MasseyError {
    #[error("input of degree {0} is not a cocycle")]
    NotCocycle(usize),
    #[error("zero element needs an explicit degree")]
    ZeroNeedsDegree,
    #[error("element is not homogeneous of degree {0}")]
    WrongDegree(usize),
    #[error("product ⟨..⟩ undefined: [{0}]·[{1}] is not exact")]
    ProductNotExact(usize, usize),
    #[error("no defining system: the joint correction system is unsolvable ({0})")]
    NoDefiningSystem(String),
    #[error("product needs cochains of degree {needed}, truncation is {truncation}")]
    DegreeTooHigh { needed: usize, truncation: usize },
    #[error(transparent)]
    Cdga(#[from] CdgaError),
}

/// A closed homogeneous element with its degree pinned; the degree makes
/// zero classes usable as product inputs.
#[derive(Debug, Clone)]
pub struct Cocycle {
    pub element: Element,
    pub degree: usize,
}

impl Cocycle {
    pub fn new(c: &Cdga, element: Element, degree: usize) -> Result<Self, MasseyError> {
        if let Some(d) = element.degree() {
            if d != degree {
                return Err(MasseyError::WrongDegree(degree));
            }
        }
        if !c.differential(&element)?.is_zero() {
            return Err(MasseyError::NotCocycle(degree));
        }
        Ok(Cocycle { element, degree })
    }

    pub fn infer(c: &Cdga, element: Element) -> Result<Self, MasseyError> {
        let degree = element.degree().ok_or(MasseyError::ZeroNeedsDegree)?;
        Cocycle::new(c, element, degree)
    }
}

/// Result of a Massey product computation. `indeterminacy_complete`
/// distinguishes the triple case (the variation span is exactly the
/// indeterminacy, so `nonzero` and `vanishes` are complementary) from the
/// quadruple case (nonvanishing is certified, vanishing only by a zero
/// representative).
#[derive(Debug, Clone)]
pub struct MasseyVerdict {
    pub defined: bool,
    pub degree: usize,
    pub representative: Element,
    pub representative_class: Vec<Rational>,
    /// Span of the enumerated variation classes inside H^degree.
    pub indeterminacy: Subspace,
    pub indeterminacy_complete: bool,
    pub nonzero: bool,
    pub vanishes: bool,
}

fn bar(e: &Element, degree: usize) -> Element {
    if degree % 2 == 1 {
        e.scale(&-Rational::one())
    } else {
        e.clone()
    }
}

fn guard_truncation(c: &Cdga, needed: usize) -> Result<(), MasseyError> {
    if needed >= c.truncation() {
        return Err(MasseyError::DegreeTooHigh {
            needed,
            truncation: c.truncation(),
        });
    }
    Ok(())
}

/// Span of [rep·z] (or [z·rep]) over the representatives of H^h_degree.
fn side_indeterminacy(
    c: &Cdga,
    fixed: &Cocycle,
    h_degree: usize,
    fixed_on_left: bool,
    target: usize,
) -> Result<Vec<Vec<Rational>>, MasseyError> {
    let mut out = Vec::new();
    let (_, reps) = c.cohomology_basis(h_degree)?;
    for rep in reps {
        let prod = if fixed_on_left {
            fixed.element.wedge(&rep)?
        } else {
            rep.wedge(&fixed.element)?
        };
        out.push(c.class_coords(&prod, target)?);
    }
    Ok(out)
}

/// ⟨[x],[y],[z]⟩ with echelon-canonical defining cochains and the exact
/// indeterminacy subspace [x]·H^{|y|+|z|-1} + H^{|x|+|y|-1}·[z].
pub fn triple_massey(
    c: &Cdga,
    x: &Cocycle,
    y: &Cocycle,
    z: &Cocycle,
) -> Result<MasseyVerdict, MasseyError> {
    let target = x.degree + y.degree + z.degree - 1;
    guard_truncation(c, target)?;

    let xy = bar(&x.element, x.degree).wedge(&y.element)?;
    let s = c
        .solve_d(x.degree + y.degree, &xy)?
        .ok_or(MasseyError::ProductNotExact(x.degree, y.degree))?;
    let yz = bar(&y.element, y.degree).wedge(&z.element)?;
    let t = c
        .solve_d(y.degree + z.degree, &yz)?
        .ok_or(MasseyError::ProductNotExact(y.degree, z.degree))?;

    let w = bar(&x.element, x.degree)
        .wedge(&t)?
        .add(&bar(&s, x.degree + y.degree - 1).wedge(&z.element)?)?;
    let class = c.class_coords(&w, target)?;

    let mut variations = side_indeterminacy(c, x, y.degree + z.degree - 1, true, target)?;
    variations.extend(side_indeterminacy(
        c,
        z,
        x.degree + y.degree - 1,
        false,
        target,
    )?);
    let betti = class.len();
    let indeterminacy = Subspace::from_vectors(betti, variations);
    let nonzero = !indeterminacy.contains(&class);
    Ok(MasseyVerdict {
        defined: true,
        degree: target,
        representative: w,
        representative_class: class.clone(),
        indeterminacy_complete: true,
        nonzero,
        vanishes: indeterminacy.contains(&class),
        indeterminacy,
    })
}

/// Defining-system state for the quadruple product: corrections of the three
/// secondary cochains, laid out as one coordinate vector over the cocycle
/// bases of their degrees.
struct QuadrupleSystem<'a> {
    c: &'a Cdga,
    x: [&'a Cocycle; 4],
    s12: Element,
    s23: Element,
    s34: Element,
    deg12: usize,
    deg23: usize,
    z12_basis: Vec<Element>,
    z23_basis: Vec<Element>,
    z34_basis: Vec<Element>,
}

impl<'a> QuadrupleSystem<'a> {
    fn corrections(&self, assignment: &[Rational]) -> (Element, Element, Element) {
        let n12 = self.z12_basis.len();
        let n23 = self.z23_basis.len();
        let combine = |basis: &[Element], coeffs: &[Rational], base: &Element| {
            let mut acc = base.clone();
            for (b, co) in basis.iter().zip(coeffs) {
                if !co.is_zero() {
                    acc = acc.add(&b.scale(co)).expect("same table");
                }
            }
            acc
        };
        let a12 = combine(&self.z12_basis, &assignment[..n12], &self.s12);
        let a23 = combine(&self.z23_basis, &assignment[n12..n12 + n23], &self.s23);
        let a34 = combine(&self.z34_basis, &assignment[n12 + n23..], &self.s34);
        (a12, a23, a34)
    }

    /// The two cocycles whose exactness the defining system requires.
    fn interior_targets(&self, assignment: &[Rational]) -> Result<(Element, Element), MasseyError> {
        let (a12, a23, a34) = self.corrections(assignment);
        let u13 = bar(&self.x[0].element, self.x[0].degree)
            .wedge(&a23)?
            .add(&bar(&a12, self.deg12).wedge(&self.x[2].element)?)?;
        let u24 = bar(&self.x[1].element, self.x[1].degree)
            .wedge(&a34)?
            .add(&bar(&a23, self.deg23).wedge(&self.x[3].element)?)?;
        Ok((u13, u24))
    }

    /// Value class of the defining system at the given correction assignment.
    fn value_class(&self, assignment: &[Rational]) -> Result<Vec<Rational>, MasseyError> {
        let (a12, _a23, a34) = self.corrections(assignment);
        let (u13, u24) = self.interior_targets(assignment)?;
        let a13 = self
            .c
            .solve_d(self.deg12 + self.x[2].degree, &u13)?
            .ok_or_else(|| MasseyError::NoDefiningSystem("u13 not exact".to_string()))?;
        let a24 = self
            .c
            .solve_d(self.deg23 + self.x[3].degree, &u24)?
            .ok_or_else(|| MasseyError::NoDefiningSystem("u24 not exact".to_string()))?;
        let deg13 = self.deg12 + self.x[2].degree - 1;
        let value = bar(&self.x[0].element, self.x[0].degree)
            .wedge(&a24)?
            .add(&bar(&a12, self.deg12).wedge(&a34)?)?
            .add(&bar(&a13, deg13).wedge(&self.x[3].element)?)?;
        let target = self.target();
        Ok(self.c.class_coords(&value, target)?)
    }

    fn target(&self) -> usize {
        self.x.iter().map(|c| c.degree).sum::<usize>() - 2
    }
}

/// ⟨[x1],[x2],[x3],[x4]⟩. Searches for a compatible defining system by
/// solving the joint affine system for cocycle corrections of a12, a23, a34;
/// reports the echelon-canonical solution's value and the variation family
/// described in the module docs.
pub fn quadruple_massey(c: &Cdga, inputs: [&Cocycle; 4]) -> Result<MasseyVerdict, MasseyError> {
    let degrees: Vec<usize> = inputs.iter().map(|i| i.degree).collect();
    let target: usize = degrees.iter().sum::<usize>() - 2;
    guard_truncation(c, target)?;

    // primary products must be exact
    let mut secondary = Vec::new();
    for k in 0..3 {
        let prod = bar(&inputs[k].element, inputs[k].degree).wedge(&inputs[k + 1].element)?;
        let s = c
            .solve_d(degrees[k] + degrees[k + 1], &prod)?
            .ok_or(MasseyError::ProductNotExact(degrees[k], degrees[k + 1]))?;
        secondary.push(s);
    }
    let deg12 = degrees[0] + degrees[1] - 1;
    let deg23 = degrees[1] + degrees[2] - 1;
    let deg34 = degrees[2] + degrees[3] - 1;
    let cocycle_elements = |deg: usize| -> Result<Vec<Element>, MasseyError> {
        let basis = c.cocycle_subspace(deg).clone();
        Ok(basis
            .basis()
            .iter()
            .map(|v| c.coords_to_element(deg, v))
            .collect())
    };
    let system = QuadrupleSystem {
        c,
        x: inputs,
        s12: secondary[0].clone(),
        s23: secondary[1].clone(),
        s34: secondary[2].clone(),
        deg12,
        deg23,
        z12_basis: cocycle_elements(deg12)?,
        z23_basis: cocycle_elements(deg23)?,
        z34_basis: cocycle_elements(deg34)?,
    };
    let nvars = system.z12_basis.len() + system.z23_basis.len() + system.z34_basis.len();
    let h13 = c.betti(deg12 + degrees[2])?;
    let h24 = c.betti(deg23 + degrees[3])?;

    // affine system: rows are the class coordinates of u13 and u24
    let zero_assignment = vec![Rational::zero(); nvars];
    let class_of = |assignment: &[Rational]| -> Result<Vec<Rational>, MasseyError> {
        let (u13, u24) = system.interior_targets(assignment)?;
        let mut row = c.class_coords(&u13, deg12 + degrees[2])?;
        row.extend(c.class_coords(&u24, deg23 + degrees[3])?);
        Ok(row)
    };
    let base = class_of(&zero_assignment)?;
    let mut columns = Vec::with_capacity(nvars);
    for v in 0..nvars {
        let mut unit = zero_assignment.clone();
        unit[v] = Rational::one();
        let shifted = class_of(&unit)?;
        columns.push(
            shifted
                .iter()
                .zip(&base)
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        );
    }
    let rows = h13 + h24;
    let m = Matrix::from_fn(rows, nvars, |r, col| columns[col][r].clone());
    let rhs: Vec<Rational> = base.iter().map(|b| -b.clone()).collect();
    let Some(solution) = m.solve(&rhs) else {
        return Err(MasseyError::NoDefiningSystem(format!(
            "interior exactness system with {rows} equations in {nvars} unknowns"
        )));
    };
    let kernel = m.kernel_basis();

    let rep_class = system.value_class(&solution)?;
    let representative = {
        // rebuild the representative element for reporting
        let (a12, _a23, a34) = system.corrections(&solution);
        let (u13, u24) = system.interior_targets(&solution)?;
        let a13 = c.solve_d(deg12 + degrees[2], &u13)?.expect("solvable");
        let a24 = c.solve_d(deg23 + degrees[3], &u24)?.expect("solvable");
        bar(&inputs[0].element, degrees[0])
            .wedge(&a24)?
            .add(&bar(&a12, deg12).wedge(&a34)?)?
            .add(&bar(&a13, deg12 + degrees[2] - 1).wedge(&inputs[3].element)?)?
    };

    // variation family
    let mut variations = side_indeterminacy(c, inputs[0], deg23 + degrees[3] - 1, true, target)?;
    variations.extend(side_indeterminacy(
        c,
        inputs[3],
        deg12 + degrees[2] - 1,
        false,
        target,
    )?);
    let add_assign = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    };
    let diff = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    };
    let kernel_vectors: Vec<Vec<Rational>> = kernel.basis().to_vec();
    let mut first_order = Vec::new();
    for k in &kernel_vectors {
        let v = system.value_class(&add_assign(&solution, k))?;
        first_order.push(diff(&v, &rep_class));
    }
    variations.extend(first_order.iter().cloned());
    // second-order mixed differences capture the bilinear part of the value
    for (i, ki) in kernel_vectors.iter().enumerate() {
        for kj in kernel_vectors.iter().skip(i) {
            let vij = system.value_class(&add_assign(&add_assign(&solution, ki), kj))?;
            let vi = system.value_class(&add_assign(&solution, ki))?;
            let vj = system.value_class(&add_assign(&solution, kj))?;
            let mixed = diff(&diff(&vij, &vi), &diff(&vj, &rep_class));
            variations.push(mixed);
        }
    }

    let betti = rep_class.len();
    let indeterminacy = Subspace::from_vectors(betti, variations);
    let nonzero = !indeterminacy.contains(&rep_class);
    let vanishes = linalg::vec_is_zero(&rep_class);
    Ok(MasseyVerdict {
        defined: true,
        degree: target,
        representative,
        representative_class: rep_class,
        indeterminacy,
        indeterminacy_complete: false,
        nonzero,
        vanishes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::LieAlgebra;
    use crate::rational::{int, rat};

    fn heisenberg_ce() -> Cdga {
        LieAlgebra::from_tuple(&[&[], &[], &[(1, 1, 2)]])
            .unwrap()
            .ce_cdga()
            .unwrap()
    }

    fn solvable_ce() -> Cdga {
        LieAlgebra::from_tuple(&[
            &[(-1, 1, 5)],
            &[(1, 2, 5)],
            &[(-1, 1, 5), (-1, 3, 5)],
            &[(-1, 2, 5), (1, 4, 5)],
            &[],
        ])
        .unwrap()
        .ce_cdga()
        .unwrap()
    }

    fn cocycle(c: &Cdga, e: Element) -> Cocycle {
        Cocycle::infer(c, e).unwrap()
    }

    #[test]
    fn heisenberg_triple() {
        let c = heisenberg_ce();
        let e1 = cocycle(&c, c.generator("e1").unwrap());
        let e2 = cocycle(&c, c.generator("e2").unwrap());
        let v = triple_massey(&c, &e1, &e1, &e2).unwrap();
        let e13 = c
            .generator("e1")
            .unwrap()
            .wedge(&c.generator("e3").unwrap())
            .unwrap();
        assert_eq!(v.representative, e13);
        assert!(v.indeterminacy.is_zero());
        assert!(v.nonzero);
        assert!(!v.vanishes);
    }

    #[test]
    fn abelian_triple_vanishes() {
        let c = LieAlgebra::abelian(3).ce_cdga().unwrap();
        let e1 = cocycle(&c, c.generator("e1").unwrap());
        let v = triple_massey(&c, &e1, &e1, &e1).unwrap();
        assert!(v.representative.is_zero());
        assert!(v.vanishes);
        assert!(!v.nonzero);
    }

    #[test]
    fn heisenberg_triple_with_negated_class() {
        // the mapping-torus picture of the Heisenberg manifold pairs the
        // circle class with ξ₂ = -[e2]
        let c = heisenberg_ce();
        let e1 = cocycle(&c, c.generator("e1").unwrap());
        let xi2 = cocycle(&c, c.generator("e2").unwrap().scale(&int(-1)));
        let v = triple_massey(&c, &e1, &e1, &xi2).unwrap();
        assert!(v.nonzero);
    }

    #[test]
    fn triple_undefined_when_products_survive() {
        let c = solvable_ce();
        // [a1^a4 + a2^a3] ∪ [a5] != 0
        let omega = c
            .generator("e1")
            .unwrap()
            .wedge(&c.generator("e4").unwrap())
            .unwrap()
            .add(
                &c.generator("e2")
                    .unwrap()
                    .wedge(&c.generator("e3").unwrap())
                    .unwrap(),
            )
            .unwrap();
        let omega = cocycle(&c, omega);
        let a5 = cocycle(&c, c.generator("e5").unwrap());
        assert!(matches!(
            triple_massey(&c, &omega, &a5, &a5),
            Err(MasseyError::ProductNotExact(2, 1))
        ));
    }

    #[test]
    fn solvable_defining_identities() {
        // d(1/2 (a1^a4 - a2^a3)) = a1^a2^a5 and d(a3^a4) = (a1^a4 - a2^a3)^a5
        let c = solvable_ce();
        let w = |x: &str, y: &str| {
            c.generator(x)
                .unwrap()
                .wedge(&c.generator(y).unwrap())
                .unwrap()
        };
        let half_diff = w("e1", "e4").sub(&w("e2", "e3")).unwrap().scale(&rat(1, 2));
        let a125 = w("e1", "e2").wedge(&c.generator("e5").unwrap()).unwrap();
        assert_eq!(c.differential(&half_diff).unwrap(), a125);
        let lhs = c.differential(&w("e3", "e4")).unwrap();
        let rhs = w("e1", "e4")
            .sub(&w("e2", "e3"))
            .unwrap()
            .wedge(&c.generator("e5").unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn solvable_quadruple_product() {
        let c = solvable_ce();
        let w = |x: &str, y: &str| {
            c.generator(x)
                .unwrap()
                .wedge(&c.generator(y).unwrap())
                .unwrap()
        };
        let a12 = cocycle(&c, w("e1", "e2"));
        let a5 = cocycle(&c, c.generator("e5").unwrap());
        let v = quadruple_massey(&c, [&a12, &a5, &a5, &a5]).unwrap();
        assert!(v.defined);
        assert!(v.nonzero, "{v:?}");
        assert!(!v.vanishes);
        // representative = 1/2 [a3^a4^a5] up to the variation family
        let target = w("e3", "e4")
            .wedge(&c.generator("e5").unwrap())
            .unwrap()
            .scale(&rat(1, 2));
        let target_class = c.class_coords(&target, 3).unwrap();
        let difference: Vec<Rational> = v
            .representative_class
            .iter()
            .zip(&target_class)
            .map(|(a, b)| a - b)
            .collect();
        assert!(v.indeterminacy.contains(&difference));
    }

    #[test]
    fn quadruple_with_zero_entry() {
        let c = heisenberg_ce();
        let zero = Cocycle::new(&c, c.zero(), 1).unwrap();
        let e1 = cocycle(&c, c.generator("e1").unwrap());
        let v = quadruple_massey(&c, [&zero, &e1, &e1, &e1]).unwrap();
        assert!(v.defined);
        assert!(v.vanishes);
        assert!(!v.nonzero);
    }

    #[test]
    fn truncation_guard() {
        let c = heisenberg_ce();
        let e12 = cocycle(
            &c,
            c.generator("e1")
                .unwrap()
                .wedge(&c.generator("e2").unwrap())
                .unwrap(),
        );
        // target degree 2+2+2-1 = 5 > truncation-1
        let err = triple_massey(&c, &e12, &e12, &e12);
        assert!(matches!(err, Err(MasseyError::DegreeTooHigh { .. })));
    }

    #[test]
    fn rejects_non_cocycle_inputs() {
        let c = heisenberg_ce();
        let e3 = c.generator("e3").unwrap();
        assert!(matches!(
            Cocycle::infer(&c, e3),
            Err(MasseyError::NotCocycle(1))
        ));
    }
}
