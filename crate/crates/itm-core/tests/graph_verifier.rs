//! Closure of the comparison step from the two seed states, the win-lose
//! dynamics on it, and the non-degeneracy verifier, with golden counts
//! frozen after the first verified enumeration.

use itm_core::perm::Letter;
use itm_core::scalar::{Rat, Scalar};
use itm_core::seed_states;
use itm_core::simplicial::{Mat4, SimplicialSystem, Target};
use num_bigint::BigInt;

fn r(n: i64, d: i64) -> Rat {
    Rat::from_ratio(n, d)
}

fn full() -> SimplicialSystem {
    SimplicialSystem::build(&seed_states(), 4096).unwrap()
}

#[test]
fn closure_counts_are_stable() {
    let g = full();
    assert_eq!(g.vertices().len(), 192);
    assert_eq!(g.edges().len(), 360);
    let rotation = g
        .edges()
        .iter()
        .filter(|e| e.to == Target::Rotation)
        .count();
    assert_eq!(rotation, 84);
    assert_eq!(g.pruned().edges().len(), 276);
    // the seeds come first
    assert_eq!(g.vertices()[0].to_string(), "ADBCD | CDBD_A");
    assert_eq!(g.vertices()[1].to_string(), "ABCBD | CBDB_A");
}

#[test]
fn every_vertex_has_at_most_two_distinct_out_labels() {
    let g = full();
    for v in 0..g.vertices().len() {
        let mut labels: Vec<Letter> = g
            .out_edges(v)
            .iter()
            .map(|&i| g.edges()[i].label())
            .collect();
        assert!(labels.len() <= 2);
        labels.dedup();
        assert_eq!(
            labels.len(),
            g.out_edges(v).len(),
            "labels at vertex {v} must be distinct"
        );
    }
}

#[test]
fn edge_matrices_are_elementary_and_unimodular() {
    let g = full();
    for e in g.edges() {
        let m = e.matrix();
        assert_eq!(m.det(), BigInt::from(1));
        assert!(m.is_nonnegative());
        let off: BigInt = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .map(|(i, j)| m.0[i][j].clone())
            .sum();
        assert_eq!(off, BigInt::from(1));
    }
}

#[test]
fn verifier_passes_on_the_enumerated_system() {
    let verdict = full().pruned().verify_strongly_nondegenerating();
    assert!(verdict.pass(), "{}", verdict.render());
    assert!(verdict.render().ends_with("verdict: PASS\n"));
}

#[test]
fn toy_two_loop_system_fails_the_winlose_check() {
    // one vertex beating itself with A and B forever never lets C or D play
    let toy = SimplicialSystem::from_parts(
        vec!["v".into()],
        vec![
            (0, Some(0), Letter::B, Letter::A),
            (0, Some(0), Letter::A, Letter::B),
        ],
    );
    let verdict = toy.verify_strongly_nondegenerating();
    assert!(!verdict.pass());
    assert!(verdict.render().ends_with("verdict: FAIL\n"));
    let rep = toy.check_every_letter_wins_loses();
    assert!(!rep.pass());
    for c in &rep.letters {
        let expect_fail = matches!(c.letter, Letter::C | Letter::D);
        assert_eq!(c.loses_witness.is_some(), expect_fail, "loses {}", c.letter);
        assert_eq!(c.wins_witness.is_some(), expect_fail, "wins {}", c.letter);
    }
}

#[test]
fn winlose_apply_matches_the_worked_projective_step() {
    let g = full();
    // at the first seed the comparison is A against D; with A twice as long
    // the loser D is subtracted and the vector renormalizes to uniform
    let lambda = [r(2, 5), r(1, 5), r(1, 5), r(1, 5)];
    let (ei, to, next) = g.winlose_apply(0, &lambda).unwrap().unwrap();
    let e = &g.edges()[ei];
    assert_eq!(e.winner, Letter::A);
    assert_eq!(e.loser, Letter::D);
    assert_eq!(to, Target::Vertex(3));
    assert_eq!(g.vertices()[3].to_string(), "ADDBC | CDBD_A");
    assert_eq!(next, [r(1, 4), r(1, 4), r(1, 4), r(1, 4)]);
    // a tie yields no edge
    let tie = [r(1, 4), r(1, 4), r(1, 4), r(1, 4)];
    assert_eq!(g.winlose_apply(0, &tie).unwrap(), None);
}

#[test]
fn path_matrices_compose_and_stay_unimodular() {
    let g = full();
    assert_eq!(g.path_matrix(&[]).unwrap(), Mat4::identity());
    let first = g.out_edges(0)[0];
    assert_eq!(g.path_matrix(&[first]).unwrap(), g.edges()[first].matrix());
    // walk ten edges greedily and check the product
    let mut at = 0usize;
    let mut path = Vec::new();
    for _ in 0..10 {
        let ei = *g
            .out_edges(at)
            .iter()
            .find(|&&i| matches!(g.edges()[i].to, Target::Vertex(_)))
            .unwrap();
        path.push(ei);
        let Target::Vertex(u) = g.edges()[ei].to else { unreachable!() };
        at = u;
    }
    let m = g.path_matrix(&path).unwrap();
    assert_eq!(m.det(), BigInt::from(1));
    assert!(m.is_nonnegative());
    // out of order edges are rejected
    let bad = vec![path[3], path[0]];
    assert!(g.path_matrix(&bad).is_err());
}

#[test]
fn dumps_are_deterministic() {
    let a = full();
    let b = full();
    assert_eq!(a.to_text(), b.to_text());
    assert_eq!(a.to_dot(), b.to_dot());
    assert!(a.to_text().starts_with("# itm comparison graph v1\n"));
    assert!(a.to_dot().starts_with("digraph comparison {"));
}
