//! Results must not depend on the spanning forest, edge orientation or
//! component layout, and reports must be reproducible.

mod common;

use flowpoly_core::counting::{polynomial_with_forest, CountKind, DEFAULT_GUARD};
use flowpoly_core::families::{default_corpus, generate_family};
use flowpoly_core::graph::{classify, spanning_forest, Graph, SpanningForest};
use flowpoly_core::poly::Polynomial;
use flowpoly_core::polytope::{
    contains_points, ehrhart_polynomial, flow_polytope, reflexivity_check, signed_unit_vectors,
    tension_polytope, HPolytope,
};
use flowpoly_core::constraints::is_palindromic;
use flowpoly_core::vectors::hstar_vector;
use flowpoly_core::verify::{verify_graph, VerifyOptions};
use num_rational::BigRational;
use rand::seq::SliceRandom;

fn corpus() -> Vec<(String, Graph)> {
    default_corpus(5, 8)
        .unwrap()
        .into_iter()
        .map(|e| (e.id, e.graph))
        .collect()
}

fn polys(g: &Graph, forest: &SpanningForest) -> Vec<Polynomial> {
    CountKind::ALL
        .iter()
        .map(|&kind| {
            polynomial_with_forest(g, forest, kind, DEFAULT_GUARD)
                .unwrap()
                .polynomial
        })
        .collect()
}

fn random_forests(g: &Graph, seed: u64, count: usize) -> Vec<SpanningForest> {
    let mut rng = common::rng(seed);
    (0..count)
        .map(|_| {
            let mut order: Vec<usize> = (0..g.edge_count()).collect();
            order.shuffle(&mut rng);
            SpanningForest::greedy(g, &order).unwrap()
        })
        .collect()
}

#[test]
fn forest_choice_does_not_matter() {
    for (i, (id, g)) in corpus().into_iter().enumerate() {
        let base = spanning_forest(&g);
        let expected = polys(&g, &base);
        let l_f = ehrhart_polynomial(&flow_polytope(&base)).unwrap();
        let l_t = ehrhart_polynomial(&tension_polytope(&base)).unwrap();
        for forest in random_forests(&g, i as u64, 3) {
            assert_eq!(polys(&g, &forest), expected, "{id} forest {:?}", forest.forest_edges());
            assert_eq!(ehrhart_polynomial(&flow_polytope(&forest)).unwrap(), l_f, "{id}");
            assert_eq!(ehrhart_polynomial(&tension_polytope(&forest)).unwrap(), l_t, "{id}");
        }
    }
}

#[test]
fn reorienting_an_edge_does_not_matter() {
    for (id, g) in corpus() {
        let expected = polys(&g, &spanning_forest(&g));
        for e in 0..g.edge_count() {
            let h = g.with_reversed_edge(e);
            assert_eq!(polys(&h, &spanning_forest(&h)), expected, "{id} edge {e}");
        }
    }
}

#[test]
fn polynomials_multiply_over_components() {
    let graphs: Vec<Graph> = corpus().into_iter().map(|(_, g)| g).collect();
    // ten pairs whose union stays within the enumeration guard
    let small = |g: &Graph| {
        let c = classify(g);
        (c.tension_rank(), c.cyclomatic_number)
    };
    let pairs: Vec<(usize, usize)> = (0..graphs.len())
        .map(|i| (i, (7 * i + 3) % graphs.len()))
        .filter(|&(a, b)| {
            let ((ta, ra), (tb, rb)) = (small(&graphs[a]), small(&graphs[b]));
            ta + tb <= 5 && ra + rb <= 5
        })
        .take(10)
        .collect();
    assert_eq!(pairs.len(), 10);
    for (a, b) in pairs {
        let (ga, gb) = (&graphs[a], &graphs[b]);
        let union = ga.disjoint_union(gb);
        assert_eq!(classify(&union).component_count, 2);
        let product: Vec<Polynomial> = polys(ga, &spanning_forest(ga))
            .iter()
            .zip(polys(gb, &spanning_forest(gb)))
            .map(|(p, q)| p * &q)
            .collect();
        assert_eq!(polys(&union, &spanning_forest(&union)), product, "{ga} + {gb}");
        let f = spanning_forest(&union);
        let (fa, fb) = (spanning_forest(ga), spanning_forest(gb));
        for build in [flow_polytope, tension_polytope] {
            let whole = ehrhart_polynomial(&build(&f)).unwrap();
            let parts = &ehrhart_polynomial(&build(&fa)).unwrap() * &ehrhart_polynomial(&build(&fb)).unwrap();
            assert_eq!(whole, parts);
        }
    }
}

#[test]
fn flow_and_tension_closure() {
    for (id, g) in corpus() {
        let forest = spanning_forest(&g);
        // each fundamental cycle vector is an integral flow
        for sigma in forest.cycle_vectors() {
            for v in 0..g.vertex_count() {
                let net: i64 = g
                    .edges()
                    .iter()
                    .zip(sigma)
                    .map(|(edge, &s)| i64::from(s) * (i64::from(edge.head == v) - i64::from(edge.tail == v)))
                    .sum();
                assert_eq!(net, 0, "{id}");
            }
        }
        // assembled tensions are orthogonal to every cycle
        let mut rng = common::rng(7);
        for _ in 0..5 {
            let t0: Vec<i64> = (0..forest.tension_dim())
                .map(|_| rand::Rng::gen_range(&mut rng, -5..=5))
                .collect();
            let t = forest.assemble_tension(&t0);
            for sigma in forest.cycle_vectors() {
                let dot: i64 = t.iter().zip(sigma).map(|(x, &s)| x * i64::from(s)).sum();
                assert_eq!(dot, 0, "{id}");
            }
        }
    }
}

fn hstar(p: &HPolytope) -> Vec<BigRational> {
    hstar_vector(&ehrhart_polynomial(p).unwrap(), p.dim())
        .unwrap()
        .entries()
        .to_vec()
}

fn dominated(small: &[BigRational], big: &[BigRational]) -> bool {
    small.len() == big.len() && small.iter().zip(big).all(|(a, b)| a <= b)
}

#[test]
fn subpolytope_monotonicity() {
    for (id, g) in corpus() {
        let forest = spanning_forest(&g);
        let f = flow_polytope(&forest);
        let r = f.dim();
        assert!(contains_points(&f, &signed_unit_vectors(r)).unwrap(), "{id}");
        let h = hstar(&f);
        assert!(dominated(&hstar(&HPolytope::cross_polytope(r)), &h), "{id}");
        assert!(dominated(&h, &hstar(&HPolytope::cube(r, -1, 1))), "{id}");

        // dropping a non-forest edge keeps the forest and enlarges T_G
        let t = tension_polytope(&forest);
        let ht = hstar(&t);
        for &e in forest.non_forest_edges() {
            let kept: Vec<(u32, u32)> = g
                .edge_ids()
                .into_iter()
                .enumerate()
                .filter(|&(i, _)| i != e)
                .map(|(_, p)| p)
                .collect();
            let sub = Graph::new(g.vertices().to_vec(), &kept).unwrap();
            let sub_edges: Vec<usize> = forest
                .forest_edges()
                .iter()
                .map(|&x| if x > e { x - 1 } else { x })
                .collect();
            let sub_forest = SpanningForest::from_forest_edges(&sub, &sub_edges).unwrap();
            assert!(dominated(&ht, &hstar(&tension_polytope(&sub_forest))), "{id} minus {e}");
        }
    }
}

#[test]
fn reflexive_iff_palindromic() {
    let mut polytopes = vec![
        HPolytope::cube(2, 0, 1),
        HPolytope::cube(2, -1, 2),
        HPolytope::cube(3, -1, 1),
        HPolytope::cross_polytope(3),
    ];
    for (_, g) in corpus() {
        let forest = spanning_forest(&g);
        polytopes.push(flow_polytope(&forest));
        polytopes.push(tension_polytope(&forest));
    }
    for p in polytopes {
        let reflexive = reflexivity_check(&p, 3).unwrap().reflexive;
        assert_eq!(reflexive, is_palindromic(&hstar(&p)), "{p:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    for spec in ["complete:4", "theta:1:2:2", "bouquet:2", "star:4"] {
        let g = generate_family(spec).unwrap();
        let a = serde_json::to_string(&verify_graph(spec, &g, &VerifyOptions::default()).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_graph(spec, &g, &VerifyOptions::default()).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn counts_are_integers() {
    for (id, g) in corpus() {
        for p in polys(&g, &spanning_forest(&g)) {
            for k in 0..10 {
                assert!(p.evaluate_int(k).is_integer(), "{id}");
            }
        }
    }
}
