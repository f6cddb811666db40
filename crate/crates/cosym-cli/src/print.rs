//! Canonical printers for the three document kinds. Printing then parsing
//! reproduces the parsed payload exactly (the round-trip contract of the
//! file formats).

use crate::parse::{CdgaDocument, TorusDocument};
use cosym_core::liealg::LieAlgebra;
use cosym_core::linalg::Matrix;
use cosym_core::mapping_torus::MappingTorusSpec;
use cosym_core::rational::{display, Rational};
use num_traits::{One, Signed};
use std::fmt::Write;

fn coeff_prefix(c: &Rational) -> String {
    if c.abs().is_one() {
        String::new()
    } else {
        format!("{}*", display(&c.abs()))
    }
}

/// Sum rendering with `+`/`-` separators from signed terms.
fn join_terms(terms: &[(Rational, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, body)) in terms.iter().enumerate() {
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&coeff_prefix(c));
        out.push_str(body);
    }
    out
}

pub fn print_lie(l: &LieAlgebra) -> String {
    let default_names: Vec<String> = (1..=l.dim()).map(|i| format!("e{i}")).collect();
    let compact_ok = l.dim() <= 9 && l.basis_names() == default_names.as_slice();
    if compact_ok {
        let slots: Vec<String> = l
            .structure()
            .iter()
            .map(|row| {
                let terms: Vec<(Rational, String)> = row
                    .iter()
                    .map(|(&(i, j), c)| (c.clone(), format!("{}{}", i + 1, j + 1)))
                    .collect();
                join_terms(&terms)
            })
            .collect();
        format!("lie compact ({})\n", slots.join(","))
    } else {
        let mut out = format!(
            "lie dim {} basis {}\n",
            l.dim(),
            l.basis_names().join(" ")
        );
        for (k, row) in l.structure().iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let terms: Vec<(Rational, String)> = row
                .iter()
                .map(|(&(i, j), c)| {
                    (
                        c.clone(),
                        format!("{}^{}", l.basis_names()[i], l.basis_names()[j]),
                    )
                })
                .collect();
            writeln!(out, "d {} = {}", l.basis_names()[k], join_terms(&terms)).unwrap();
        }
        out
    }
}

pub fn print_cdga(doc: &CdgaDocument) -> String {
    let cdga = &doc.cdga;
    let mut out = match doc.truncation_given {
        Some(t) => format!("cdga truncation {t}\n"),
        None => "cdga\n".to_string(),
    };
    for g in cdga.table().generators() {
        writeln!(out, "gen {} {}", g.name, g.degree).unwrap();
    }
    for (idx, g) in cdga.table().generators().iter().enumerate() {
        let dg = cdga.generator_differential(idx);
        if !dg.is_zero() {
            writeln!(out, "d {} = {}", g.name, dg.render()).unwrap();
        }
    }
    out
}

pub fn matrix_text(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| display(m.at(r, c)))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

pub fn print_torus(doc: &TorusDocument) -> String {
    print_torus_parts(&doc.spec, doc.exterior_names.as_deref(), doc.derived_powers)
}

/// Prints a bare spec, using the exterior shorthand when the fiber ring and
/// pullbacks are exactly the exterior-power data of the degree-1 labels.
pub fn print_torus_spec(spec: &MappingTorusSpec) -> String {
    let names: Vec<String> = spec.fiber.labels(1).to_vec();
    let exterior = {
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        match cosym_core::cdga::CohomologyRing::exterior(&refs) {
            Ok(ring) if ring == spec.fiber => {
                let powers = cosym_core::mapping_torus::phi_from_exterior_powers(
                    &spec.phi[1],
                    spec.top_degree(),
                );
                powers == spec.phi
            }
            _ => false,
        }
    };
    if exterior {
        print_torus_parts(spec, Some(&names), true)
    } else {
        print_torus_parts(spec, None, false)
    }
}

fn print_torus_parts(
    spec: &MappingTorusSpec,
    exterior_names: Option<&[String]>,
    derived_powers: bool,
) -> String {
    let n = spec.top_degree();
    let mut out = "mapping-torus\n".to_string();
    if let (Some(names), true) = (exterior_names, derived_powers) {
        writeln!(
            out,
            "fiber exterior dim {} basis {}",
            names.len(),
            names.join(" ")
        )
        .unwrap();
        writeln!(out, "phi 1 = {}", matrix_text(&spec.phi[1])).unwrap();
        writeln!(out, "derive-exterior-powers = true").unwrap();
    } else {
        writeln!(out, "fiber dim {n}").unwrap();
        for k in 1..=n {
            writeln!(out, "h {k} = {}", spec.fiber.labels(k).join(" ")).unwrap();
        }
        for p in 1..=n {
            for q in p..=n {
                if p + q > n {
                    continue;
                }
                for i in 0..spec.fiber.dim(p) {
                    for j in 0..spec.fiber.dim(q) {
                        if p == q && j < i {
                            continue;
                        }
                        let value = spec.fiber.cup_basis(p, q, i, j);
                        let entries: Vec<String> = value
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                            .map(|(k, c)| format!("({k}, {})", display(c)))
                            .collect();
                        if !entries.is_empty() {
                            writeln!(
                                out,
                                "cup ({p}:{i}, {q}:{j}) -> {}",
                                entries.join(" + ")
                            )
                            .unwrap();
                        }
                    }
                }
            }
        }
        writeln!(out, "fundamental = ({n}:0)").unwrap();
        for (k, m) in spec.phi.iter().enumerate() {
            writeln!(out, "phi {k} = {}", matrix_text(m)).unwrap();
        }
    }
    if let Some(s) = &spec.symplectic_class {
        let labels = spec.fiber.labels(2);
        let terms: Vec<(Rational, String)> = s
            .iter()
            .zip(labels)
            .filter(|(c, _)| !num_traits::Zero::is_zero(*c))
            .map(|(c, l)| (c.clone(), l.clone()))
            .collect();
        writeln!(out, "symplectic = {}", join_terms(&terms)).unwrap();
    }
    out
}

/// Coordinate vector rendered against basis labels.
pub fn class_in_labels(coords: &[Rational], labels: &[String]) -> String {
    let terms: Vec<(Rational, String)> = coords
        .iter()
        .zip(labels)
        .filter(|(c, _)| !num_traits::Zero::is_zero(*c))
        .map(|(c, l)| (c.clone(), l.clone()))
        .collect();
    join_terms(&terms)
}
