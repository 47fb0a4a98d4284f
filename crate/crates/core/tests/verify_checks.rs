use std::time::Instant;

use efc_core::decomposition::{DecompositionTree, Part};
use efc_core::formulations::{
    circuit_dominant_ef, cographic_independence_ef, explicit_flat_ef, graphic_independence_ef, pair_formulation_cographic,
    pair_formulation_graphic, regular_pipeline, signed_representation, PipelineOptions,
};
use efc_core::lp::ExtendedFormulation;
use efc_core::matroid::{r10, Graph, DEFAULT_CAP};
use efc_core::verify::*;

fn timed<T>(label: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    eprintln!("{label}: {:.2?}", t.elapsed());
    out
}

fn assert_pass(r: &VerificationReport) {
    assert!(r.passed(), "{r}");
}

// Petersen and the full two-K5 run live in the efc acceptance target.
#[test]
fn graphic_suite() {
    for (name, g) in [("K4", Graph::complete(4)), ("K5", Graph::complete(5)), ("K33", Graph::complete_bipartite(3, 3))] {
        let ef = graphic_independence_ef(&g).unwrap();
        let r = timed(name, || check_projection_equality(&ef, &g.cycle_matroid(), 200, 42));
        eprint!("{r}");
        assert_pass(&r);
    }
}

#[test]
fn cographic_suite() {
    for (name, g) in [("K4", Graph::complete(4)), ("K5", Graph::complete(5)), ("K33", Graph::complete_bipartite(3, 3))] {
        let ef = cographic_independence_ef(&g).unwrap();
        let r = timed(name, || check_projection_equality(&ef, &g.bond_matroid(), 200, 42));
        eprint!("{r}");
        assert_pass(&r);
    }
}

#[test]
fn r10_flats() {
    let m = r10();
    let ef = explicit_flat_ef(&m, DEFAULT_CAP).unwrap();
    let r = timed("r10", || check_projection_equality(&ef, &m, 200, 42));
    eprint!("{r}");
    assert_pass(&r);
}

fn two_k5() -> DecompositionTree {
    let k5 = Graph::complete(5);
    let mut right = Graph::new();
    for e in k5.edges() {
        let rename = |v: &str| format!("{v}'");
        let name = if ["e12", "e13", "e23"].contains(&e.name.as_str()) { e.name.clone() } else { format!("f{}", &e.name[1..]) };
        right.add_edge(&name, &rename(&k5.vertices()[e.u]), &rename(&k5.vertices()[e.v])).unwrap();
    }
    let mut t = DecompositionTree::new();
    t.add_node("a", Part::graphic(k5)).unwrap();
    t.add_node("b", Part::graphic(right)).unwrap();
    t.add_edge("a", "b", &["e12", "e13", "e23"]).unwrap();
    t
}

#[test]
fn three_sum_structure() {
    let t = two_k5();
    let (a, b) = (t.node(0).part.matroid().clone(), t.node(1).part.matroid().clone());
    let r = timed("3sum", || check_3sum_bases(&a, &b, DEFAULT_CAP).unwrap());
    eprint!("{r}");
    assert_pass(&r);
}

#[test]
fn pipeline_two_k5() {
    let t = two_k5();
    let out = timed("build", || regular_pipeline(&t, &PipelineOptions::default()).unwrap());
    let m = t.compose().unwrap();
    let r = timed("pipeline", || check_projection_equality(&out.ef, &m, 40, 42));
    eprint!("{r}");
    assert_pass(&r);
    let s = check_size_bounds(SizeLedger::Pipeline(&out), "two-k5");
    eprint!("{s}");
    assert_pass(&s);
}

#[test]
fn sandwich() {
    let k5 = Graph::complete(5);
    let tri = [["e12".to_string(), "e13".into(), "e23".into()]];
    let p = pair_formulation_graphic(&k5, &tri).unwrap();
    let r = timed("pair graphic", || check_pair_sandwich(&p, &k5.cycle_matroid(), 100, 42));
    eprint!("{r}");
    assert_pass(&r);
    eprint!("{}", check_size_bounds(SizeLedger::Pair { pair: &p, vertices: 5, edges: 10 }, "k5"));
    let k4 = Graph::complete(4);
    let star: Vec<String> = k4.incident(0).into_iter().map(|k| k4.edges()[k].name.clone()).collect();
    let p = pair_formulation_cographic(&k4, &[[star[0].clone(), star[1].clone(), star[2].clone()]]).unwrap();
    let r = timed("pair cographic", || check_pair_sandwich(&p, &k4.bond_matroid(), 100, 42));
    eprint!("{r}");
    assert_pass(&r);
    eprint!("{}", check_size_bounds(SizeLedger::Pair { pair: &p, vertices: 4, edges: 6 }, "k4*"));
}

#[test]
fn dominants() {
    for (name, part) in [
        ("K4", Part::graphic(Graph::complete(4))),
        ("K5*", Part::cographic(Graph::complete(5))),
        ("r10", Part::r10(r10()).unwrap()),
    ] {
        let cd = circuit_dominant_ef(&signed_representation(&part)).unwrap();
        let r = timed(name, || check_circuit_dominant(&cd, 100, 42, DEFAULT_CAP).unwrap());
        eprint!("{r}");
        assert_pass(&r);
        let s = check_size_bounds(SizeLedger::Dominant(&cd), name);
        eprint!("{s}");
        assert_pass(&s);
    }
}

#[test]
fn solver() {
    let r = timed("solver", || check_solver(100, 42));
    eprint!("{r}");
    assert_pass(&r);
}

#[test]
fn mutations() {
    let g = Graph::complete(4);
    let ef = graphic_independence_ef(&g).unwrap();
    for row in ["ub:e12", "ub:e13", "ub:e34", "arb", "flow:2:1"] {
        let mut lp = ef.lp.clone();
        lp.remove_row(row).unwrap();
        let bad = ExtendedFormulation::new(lp, ef.ground.clone(), ef.projection.clone()).unwrap();
        let r = check_projection_equality(&bad, &g.cycle_matroid(), 200, 42);
        eprintln!("{row}: {}", r.failures().next().map_or("NOT CAUGHT".into(), |c| c.detail.clone()));
        assert!(!r.passed());
    }
}
