use grassmann_lab::config::Bounds;
use grassmann_lab::field::field_of_order;
use grassmann_lab::fixture::{verify_fixture_partition, Fixture, ViolationKind, DEFAULT_FIXTURE};
use grassmann_lab::graph::build_graph;
use sha2::{Digest, Sha256};

const FIXTURE_SHA256: &str = "cc60ea4b3eae9589fc65bc0ab7d6a7e77b6ed7af200efa44f2c4c797a17506ac";

#[test]
fn shipped_file_is_unchanged() {
    let on_disk = std::fs::read(concat!(env!("CARGO_MANIFEST_DIR"), "/data/j2_4_2_partition.txt")).unwrap();
    assert_eq!(on_disk, DEFAULT_FIXTURE.as_bytes());
    let digest: String = Sha256::digest(&on_disk).iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(digest, FIXTURE_SHA256);
}

#[test]
fn classes_as_transcribed() {
    let fx = Fixture::default_fixture();
    let classes: Vec<String> = fx.classes.iter().map(|(n, m)| format!("{n}: {}", m.join(" "))).collect();
    assert_eq!(
        classes,
        [
            "L1: A1 A10 A12 A15 A17",
            "L2: A2 A6 A20 A19 A34",
            "L3: A3 A8 A21 A22 A35",
            "L4: A5 A9 A18 A24 A29",
            "L5: A7 A14 A23 A27 A33",
            "L6: A4 A13 A25 A28 A30",
            "L7: A11 A16 A26 A31 A32",
        ]
    );
    let labels: Vec<&str> = fx.matrices.iter().map(|(l, _)| l.as_str()).collect();
    let expect: Vec<String> = (1..=35).map(|i| format!("A{i}")).collect();
    assert_eq!(labels, expect);
}

#[test]
fn every_class_is_independent_by_stacked_rank() {
    // Independent of the graph: adjacent iff the stacked 4x4 matrix has rank 3.
    let f = field_of_order(2).unwrap();
    let fx = Fixture::default_fixture();
    let matrix = |label: &str| {
        let rows = &fx.matrices.iter().find(|(l, _)| l == label).unwrap().1;
        grassmann_lab::FqMatrix::from_rows(&f, rows).unwrap()
    };
    for (_, members) in &fx.classes {
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                let r = grassmann_lab::matrix::stack_rank(&matrix(a), &matrix(b)).unwrap();
                assert_eq!(r, 4, "{a} and {b}");
            }
        }
    }
}

#[test]
fn mutations_are_caught() {
    let g = build_graph(&field_of_order(2).unwrap(), 4, 2, &Bounds::default()).unwrap();
    let mut moved = Fixture::default_fixture();
    moved.move_label("A2", "L1");
    let r = verify_fixture_partition(&g, &moved).unwrap();
    assert!(!r.passed());
    assert!(r
        .violations
        .iter()
        .any(|v| v.kind == ViolationKind::Independence && v.labels == ["A1", "A2"] && v.stacked_rank == Some(3)));

    let mut deleted = Fixture::default_fixture();
    deleted.delete_label("A17");
    let r = verify_fixture_partition(&g, &deleted).unwrap();
    assert!(!r.covers);
    assert!(r.violations.iter().any(|v| v.kind == ViolationKind::Coverage));

    let mut dropped_from_class = Fixture::default_fixture();
    dropped_from_class.classes[0].1.retain(|l| l != "A17");
    let r = verify_fixture_partition(&g, &dropped_from_class).unwrap();
    assert!(!r.partition);
    assert!(r.violations.iter().any(|v| v.kind == ViolationKind::Coverage && v.labels == ["A17"]));
}
