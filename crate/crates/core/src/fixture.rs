//! The labelled 35-vertex colouring of `J_2(4,2)`: loading the plain-text
//! fixture and checking it against a built graph.
//!
//! File format: `#` comments and blank lines are ignored; a block is a label
//! line `A<k>` followed by one line of digits per matrix row; class lines look
//! like `L1: A1 A10 A12 A15 A17`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::GrassmannGraph;
use crate::matrix::{stack_rank, FqMatrix};
use crate::subspace::canonicalize;

/// The shipped transcription.
pub const DEFAULT_FIXTURE: &str = include_str!("../data/j2_4_2_partition.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    /// `(label, rows of digits)` in file order.
    pub matrices: Vec<(String, Vec<Vec<u32>>)>,
    /// `(class name, member labels)` in file order.
    pub classes: Vec<(String, Vec<String>)>,
}

fn parse_digits(line: &str, lineno: usize) -> Result<Vec<u32>> {
    line.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| c.to_digit(36).ok_or_else(|| Error::Fixture(format!("line {lineno}: bad digit {c:?}"))))
        .collect()
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Fixture> {
        let mut matrices: Vec<(String, Vec<Vec<u32>>)> = Vec::new();
        let mut classes = Vec::new();
        let mut in_block = false;
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                in_block = false;
                continue;
            }
            if let Some((name, members)) = line.split_once(':') {
                in_block = false;
                let members: Vec<String> = members.split_whitespace().map(str::to_owned).collect();
                classes.push((name.trim().to_owned(), members));
            } else if line.starts_with(|c: char| c.is_ascii_alphabetic()) {
                if matrices.iter().any(|(l, _)| l == line) {
                    return Err(Error::Fixture(format!("line {lineno}: duplicate label {line}")));
                }
                matrices.push((line.to_owned(), Vec::new()));
                in_block = true;
            } else if in_block {
                let row = parse_digits(line, lineno)?;
                matrices.last_mut().expect("block open").1.push(row);
            } else {
                return Err(Error::Fixture(format!("line {lineno}: matrix row outside a labelled block")));
            }
        }
        if let Some((label, _)) = matrices.iter().find(|(_, rows)| rows.is_empty()) {
            return Err(Error::Fixture(format!("label {label} has no rows")));
        }
        Ok(Fixture { matrices, classes })
    }

    pub fn load(path: &Path) -> Result<Fixture> {
        Fixture::parse(&std::fs::read_to_string(path)?)
    }

    pub fn default_fixture() -> Fixture {
        Fixture::parse(DEFAULT_FIXTURE).expect("shipped fixture parses")
    }

    /// Moves `label` into class `to`, removing it from every other class.
    pub fn move_label(&mut self, label: &str, to: &str) {
        for (name, members) in &mut self.classes {
            members.retain(|l| l != label);
            if name == to {
                members.push(label.to_owned());
            }
        }
    }

    /// Removes `label` from both the matrix list and the classes.
    pub fn delete_label(&mut self, label: &str) {
        self.matrices.retain(|(l, _)| l != label);
        for (_, members) in &mut self.classes {
            members.retain(|l| l != label);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Malformed,
    Duplicate,
    Coverage,
    Partition,
    Independence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub labels: Vec<String>,
    /// Rank of the two matrices stacked, for pairwise violations.
    pub stacked_rank: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureReport {
    pub labels: usize,
    pub classes: usize,
    /// All labelled matrices are distinct vertices.
    pub distinct: bool,
    /// The labelled matrices exhaust the vertex set.
    pub covers: bool,
    /// The classes partition the labels.
    pub partition: bool,
    /// No class contains an edge.
    pub independent: bool,
    /// Number of classes, when everything above holds.
    pub chi_upper: Option<usize>,
    pub violations: Vec<Violation>,
    /// `colour[v]`: class index of vertex `v`, when the fixture is a proper colouring.
    #[serde(skip)]
    pub colouring: Option<Vec<usize>>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.distinct && self.covers && self.partition && self.independent
    }
}

/// Checks the fixture against `g`: labels name distinct vertices covering
/// `V(g)`, the classes partition the labels, and each class is independent.
pub fn verify_fixture_partition(g: &GrassmannGraph, fx: &Fixture) -> Result<FixtureReport> {
    let spec = g.spec();
    let mut violations = Vec::new();
    let mut matrix_of: BTreeMap<&str, FqMatrix> = BTreeMap::new();
    let mut vertex_of: BTreeMap<&str, usize> = BTreeMap::new();
    let mut owner: BTreeMap<usize, &str> = BTreeMap::new();
    let mut distinct = true;

    for (label, rows) in &fx.matrices {
        let shape_ok = rows.len() == g.m() && rows.iter().all(|r| r.len() == g.n());
        let matrix = if shape_ok { FqMatrix::from_rows(spec, rows).ok() } else { None };
        let Some(matrix) = matrix else {
            distinct = false;
            violations.push(Violation {
                kind: ViolationKind::Malformed,
                labels: vec![label.clone()],
                stacked_rank: None,
                detail: format!("expected a {}x{} matrix over F_{}", g.m(), g.n(), g.q()),
            });
            continue;
        };
        let s = canonicalize(&matrix);
        let id = match (s.dim() == g.m()).then(|| g.id_of(&s)).flatten() {
            Some(id) => id,
            None => {
                distinct = false;
                violations.push(Violation {
                    kind: ViolationKind::Malformed,
                    labels: vec![label.clone()],
                    stacked_rank: None,
                    detail: format!("rank {} is not {}", s.dim(), g.m()),
                });
                continue;
            }
        };
        if let Some(prev) = owner.get(&id) {
            distinct = false;
            violations.push(Violation {
                kind: ViolationKind::Duplicate,
                labels: vec![(*prev).to_owned(), label.clone()],
                stacked_rank: Some(stack_rank(&matrix_of[prev], &matrix)?),
                detail: format!("both span vertex {id}"),
            });
        } else {
            owner.insert(id, label);
        }
        matrix_of.insert(label, matrix);
        vertex_of.insert(label, id);
    }

    let uncovered: Vec<usize> = (0..g.vertex_count()).filter(|v| !owner.contains_key(v)).collect();
    let covers = uncovered.is_empty();
    if !covers {
        violations.push(Violation {
            kind: ViolationKind::Coverage,
            labels: Vec::new(),
            stacked_rank: None,
            detail: format!(
                "{} labelled vertices, {} in graph; missing {}",
                owner.len(),
                g.vertex_count(),
                uncovered.iter().map(|&v| g.vertex(v).to_string()).collect::<Vec<_>>().join(", ")
            ),
        });
    }

    let mut partition = true;
    let mut class_of: BTreeMap<&str, usize> = BTreeMap::new();
    for (ci, (name, members)) in fx.classes.iter().enumerate() {
        for label in members {
            if !vertex_of.contains_key(label.as_str()) && !fx.matrices.iter().any(|(l, _)| l == label) {
                partition = false;
                violations.push(Violation {
                    kind: ViolationKind::Partition,
                    labels: vec![label.clone()],
                    stacked_rank: None,
                    detail: format!("{name} names an unknown label"),
                });
            } else if let Some(&prev) = class_of.get(label.as_str()) {
                partition = false;
                violations.push(Violation {
                    kind: ViolationKind::Partition,
                    labels: vec![label.clone()],
                    stacked_rank: None,
                    detail: format!("in both {} and {name}", fx.classes[prev].0),
                });
            } else {
                class_of.insert(label, ci);
            }
        }
    }
    let unassigned: BTreeSet<&str> =
        fx.matrices.iter().map(|(l, _)| l.as_str()).filter(|l| !class_of.contains_key(l)).collect();
    if !unassigned.is_empty() {
        partition = false;
        violations.push(Violation {
            kind: ViolationKind::Coverage,
            labels: unassigned.iter().map(|&l| l.to_owned()).collect(),
            stacked_rank: None,
            detail: "labels in no class".to_owned(),
        });
    }

    let mut independent = true;
    for (name, members) in &fx.classes {
        let known: Vec<&str> = members.iter().map(String::as_str).filter(|l| vertex_of.contains_key(l)).collect();
        for (i, a) in known.iter().enumerate() {
            for b in &known[i + 1..] {
                if g.adjacent(vertex_of[a], vertex_of[b]) {
                    independent = false;
                    violations.push(Violation {
                        kind: ViolationKind::Independence,
                        labels: vec![(*a).to_owned(), (*b).to_owned()],
                        stacked_rank: Some(stack_rank(&matrix_of[a], &matrix_of[b])?),
                        detail: format!("adjacent pair inside {name}"),
                    });
                }
            }
        }
    }

    let ok = distinct && covers && partition && independent;
    let colouring = ok.then(|| {
        let mut colour = vec![0; g.vertex_count()];
        for (label, &ci) in &class_of {
            colour[vertex_of[label]] = ci;
        }
        colour
    });
    Ok(FixtureReport {
        labels: fx.matrices.len(),
        classes: fx.classes.len(),
        distinct,
        covers,
        partition,
        independent,
        chi_upper: ok.then_some(fx.classes.len()),
        violations,
        colouring,
    })
}
