use efc_core::formulations::graphic_independence_ef;
use efc_core::lp::{solve, LinearProgram, Rational, Sense, Status};
use efc_core::matroid::{independent_sets, BinaryMatroid, Graph, DEFAULT_CAP};
use efc_core::verify::{check_solver, exhaustive_max_independent, greedy_max_independent};
use proptest::prelude::*;

/// A binary matroid from up to 4 rows over `n` columns.
fn binary_matroid() -> impl Strategy<Value = BinaryMatroid> {
    (1usize..=10, 1usize..=4).prop_flat_map(|(n, r)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), r).prop_map(move |rows| {
            let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            let rows: Vec<String> = rows.iter().map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect()).collect();
            let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
            BinaryMatroid::from_strings(&names, &rows).unwrap()
        })
    })
}

/// A random simple graph on up to 6 vertices.
fn graph() -> impl Strategy<Value = Graph> {
    (2usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |keep| {
            let mut g = Graph::new();
            let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            for ((a, b), k) in pairs.zip(keep) {
                if k {
                    g.add_edge(&format!("e{a}_{b}"), &a.to_string(), &b.to_string()).unwrap();
                }
            }
            g
        })
    })
}

fn mask(n: usize, bits: u64) -> u64 {
    bits & ((1u64 << n) - 1)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn rank_is_submodular(m in binary_matroid(), a in any::<u64>(), b in any::<u64>()) {
        let (a, b) = (mask(m.len(), a), mask(m.len(), b));
        let r = |s: u64| m.rank_mask(s);
        prop_assert!(r(a | b) + r(a & b) <= r(a) + r(b));
        prop_assert!(r(a & b) <= r(a) && r(a) <= r(a | b));
        prop_assert!(r(a) <= a.count_ones() as usize);
    }

    #[test]
    fn dual_rank_formula(m in binary_matroid(), s in any::<u64>()) {
        let s = mask(m.len(), s);
        let full = mask(m.len(), u64::MAX);
        let d = m.dual();
        prop_assert_eq!(d.rank_mask(s), s.count_ones() as usize + m.rank_mask(full & !s) - m.full_rank());
    }

    #[test]
    fn greedy_matches_exhaustive(m in binary_matroid(), w in proptest::collection::vec(-9i64..=9, 10)) {
        let w = &w[..m.len()];
        prop_assert_eq!(greedy_max_independent(&m, w), exhaustive_max_independent(&m, w, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn independent_sets_are_the_rank_tight_ones(m in binary_matroid()) {
        let listed = independent_sets(&m, DEFAULT_CAP).unwrap();
        let brute: Vec<u64> = (0..1u64 << m.len()).filter(|&s| m.rank_mask(s) == s.count_ones() as usize).collect();
        let mut listed_sorted = listed.clone();
        listed_sorted.sort_unstable();
        prop_assert_eq!(listed_sorted, brute);
    }

    #[test]
    fn graphic_rank_counts_components(g in graph()) {
        let m = g.cycle_matroid();
        let touched = g.touched_vertices(&(0..g.edge_count()).collect::<Vec<_>>()).len();
        let comps = g.components().into_iter().filter(|c| c.len() > 1 || !g.incident(c[0]).is_empty()).count();
        prop_assert_eq!(m.full_rank(), touched - comps);
    }

    #[test]
    fn graphic_formulation_optimum_is_greedy(g in graph(), w in proptest::collection::vec(-9i64..=9, 15)) {
        prop_assume!(g.edge_count() > 0 && g.is_connected());
        let ef = graphic_independence_ef(&g).unwrap();
        let w = &w[..g.edge_count()];
        let wq: Vec<Rational> = w.iter().map(|&x| Rational::from_integer(x)).collect();
        prop_assert_eq!(ef.maximize_over_projection(&wq), Some(greedy_max_independent(&g.cycle_matroid(), w)));
    }

    #[test]
    fn simplex_optimum_is_feasible_and_bounds_the_box(c in proptest::collection::vec(-5i64..=5, 3), rhs in 1i64..=6) {
        // max c.x over x in [0,2]^3 with x0 + x1 + x2 <= rhs.
        let mut lp = LinearProgram::new();
        let two = Some(Rational::from_integer(2));
        let vars: Vec<_> = (0..3).map(|i| lp.add_var(&format!("x{i}"), Some(Rational::zero()), two.clone()).unwrap()).collect();
        lp.add_row("sum", vars.iter().map(|&v| (v, Rational::one())), Sense::Le, Rational::from_integer(rhs)).unwrap();
        let obj: Vec<_> = vars.iter().zip(&c).map(|(&v, &x)| (v, Rational::from_integer(x))).collect();
        let sol = solve(&lp, &obj, true);
        prop_assert_eq!(sol.status, Status::Optimal);
        prop_assert!(lp.is_feasible_point(&sol.primal));
        // Brute force over the integer grid; the box and sum row are TU so
        // the optimum sits on an integer point.
        let mut best = i64::MIN;
        for x in 0..27 {
            let p = [x % 3, x / 3 % 3, x / 9];
            if p.iter().sum::<i64>() <= rhs {
                best = best.max(p.iter().zip(&c).map(|(a, b)| a * b).sum());
            }
        }
        prop_assert_eq!(sol.value, Some(Rational::from_integer(best)));
    }
}

#[test]
fn solver_check_is_seeded() {
    assert_eq!(check_solver(20, 5), check_solver(20, 5));
}
