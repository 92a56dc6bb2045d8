mod common;

use std::collections::BTreeSet;

use brauer::tilt::*;
use brauer::walks::*;
use brauer::BrauerGraph;
use common::load;
use proptest::prelude::*;

const W1: &str = "1+ 2- 3+ 6b- 5b+ 4b- 3b+ 2b- 1b+ 4-";

fn edges(g: &BrauerGraph, names: &[&str]) -> Vec<usize> {
    names.iter().map(|n| g.edge(n).unwrap()).collect()
}

#[test]
fn stalk_complex() {
    let g = load("g1");
    let w = make_signed_walk(&g, "e+").unwrap();
    let t = complex_of_walk(&g, &w);
    assert_eq!(t.degree0, vec![0]);
    assert!(t.degree_minus1.is_empty());
    assert_eq!(walk_of_complex(&g, &t).unwrap(), w);
    let t = complex_of_walk(&g, &w.negated());
    assert_eq!((t.degree0.len(), t.degree_minus1.len()), (0, 1));
}

#[test]
fn two_edge_line_complex() {
    let g = load("line2");
    let w = make_signed_walk(&g, "a+ b-").unwrap();
    let t = complex_of_walk(&g, &w);
    assert_eq!(t.degree0, edges(&g, &["E1"]));
    assert_eq!(t.degree_minus1, edges(&g, &["E2"]));
    let want = PathLabel::between(&g, g.half("A").unwrap(), g.half("b").unwrap());
    assert_eq!(t.entries(), vec![(0, 0, want)]);
    assert_eq!(walk_of_complex(&g, &t).unwrap(), w);
}

#[test]
fn running_example_complex() {
    let g = load("six_edge");
    let w = make_signed_walk(&g, W1).unwrap();
    let t = complex_of_walk(&g, &w);
    let mut d0 = t.degree0.clone();
    let mut d1 = t.degree_minus1.clone();
    d0.sort();
    d1.sort();
    assert_eq!(d0, { let mut v = edges(&g, &["E1", "E3", "E5", "E3", "E1"]); v.sort(); v });
    assert_eq!(d1, { let mut v = edges(&g, &["E2", "E6", "E4", "E2", "E4"]); v.sort(); v });
    let es = t.entries();
    assert_eq!(es.len(), 9);
    assert!(es.iter().all(|(_, _, p)| p.is_short(&g)));
    assert!(walk_of_complex(&g, &t).unwrap() == w);
}

#[test]
fn long_entry_is_rejected() {
    let g = load("line2");
    let mut t = TwoTermComplex::new(edges(&g, &["E1"]), edges(&g, &["E2"]));
    t.differential[0][0] = Some(PathLabel::Path {
        start: g.half("A").unwrap(),
        power: 1,
        steps: 1,
    });
    assert_eq!(walk_of_complex(&g, &t), Err(TiltError::NotShortString { row: 0, col: 0 }));

    let t = TwoTermComplex::new(edges(&g, &["E1"]), edges(&g, &["E1"]));
    assert!(matches!(walk_of_complex(&g, &t), Err(TiltError::SummandOverlap(_))));
    let t = TwoTermComplex::new(edges(&g, &["E1"]), edges(&g, &["E2"]));
    assert_eq!(walk_of_complex(&g, &t), Err(TiltError::Disconnected));
}

#[test]
fn dictionary_round_trips() {
    for name in common::ALL {
        let g = load(name);
        let cap = discrete_length_bound(&g).unwrap_or(4);
        for w in enumerate_admissible_walks(&g, cap).walks {
            let t = complex_of_walk(&g, &w);
            assert_eq!(t.degree0.len() + t.degree_minus1.len(), w.len(), "{name}");
            let back = walk_of_complex(&g, &t).unwrap();
            assert_eq!(back, w, "{name}: {}", w.to_text(&g));
            let [f, b] = w.both(&g);
            assert!(complex_of_oriented(&g, &f).same_up_to_reordering(&complex_of_oriented(&g, &b)));
        }
    }
}

#[test]
fn stalk_hom_vanishing() {
    let g = load("g1");
    let p = make_signed_walk(&g, "e+").unwrap();
    let m = make_signed_walk(&g, "e-").unwrap();
    assert!(hom_vanishes_into_shift(&g, &p, &m).vanishes);
    let r = hom_vanishes_into_shift(&g, &m, &p);
    assert!(!r.vanishes);
    assert_eq!(r.u2_witness.map(|u| u.case), Some(U2Case::I));
}

#[test]
fn running_example_hom_witness() {
    let g = load("six_edge");
    let w = make_signed_walk(&g, W1).unwrap();
    let r = hom_vanishes_into_shift(&g, &w, &w);
    assert!(!r.vanishes);
    let u = r.u2_witness.expect("witness");
    let rev: Vec<usize> = w.halves().iter().rev().map(|&h| g.partner(h)).collect();
    assert_eq!(u.w, rev);
    assert_eq!(u.w_prime, w.halves());
    assert_eq!((u.i, u.j, u.case), (8, 10, U2Case::IV));
}

#[test]
fn single_edge_sets_and_order() {
    for name in ["g1", "g1_m3"] {
        let g = load(name);
        let sets = enumerate_two_term_tilting(&g, None).unwrap();
        let ser: Vec<Vec<String>> = sets.iter().map(|s| s.serialize(&g)).collect();
        assert_eq!(ser, vec![vec!["e+".to_string()], vec!["e-".to_string()]]);
        let plus = sets.iter().find(|s| s.is_all_stalks(Sign::Plus)).unwrap();
        let minus = sets.iter().find(|s| s.is_all_stalks(Sign::Minus)).unwrap();
        assert!(order_ge(&g, plus, minus));
        assert!(!order_ge(&g, minus, plus));
        let q = hasse_quiver(&g, None).unwrap();
        assert_eq!(q.nodes.len(), 2);
        assert_eq!(q.arrows.len(), 1);
        let (a, b) = q.arrows[0];
        assert_eq!(q.nodes[a].walks, vec!["e+"]);
        assert_eq!(q.nodes[b].walks, vec!["e-"]);
    }
}

#[test]
fn two_edge_line_sets() {
    let g = load("line2");
    let sets = enumerate_two_term_tilting(&g, None).unwrap();
    assert_eq!(sets.len(), 6);
    for s in &sets {
        assert_eq!(s.walks.len(), 2);
        assert!(is_admissible_set(&g, &s.walks));
    }
    let q = hasse_quiver(&g, None).unwrap();
    assert!(q.is_connected());
    assert_eq!(q.sources().len(), 1);
    assert_eq!(q.sinks().len(), 1);
    assert!(q.to_dot().starts_with("digraph"));
    let v: serde_json::Value = serde_json::from_str(&q.to_json()).unwrap();
    assert_eq!(v["arrows"].as_array().unwrap().len(), q.arrows.len());
}

#[test]
fn single_loop_quiver_connected() {
    let g = load("loop");
    let q = hasse_quiver(&g, None).unwrap();
    assert!(q.is_connected());
    assert!(q.nodes.len() >= 2);
}

#[test]
fn infinite_graph_needs_cap() {
    let g = load("digon");
    assert_eq!(enumerate_two_term_tilting(&g, None), Err(TiltError::NotEnumerable));
    let sets = enumerate_two_term_tilting(&g, Some(4)).unwrap();
    assert!(!sets.is_empty());
    for s in &sets {
        assert_eq!(s.walks.len(), 2);
        assert!(is_admissible_set(&g, &s.walks));
    }
}

// Compatible pairs are exactly those with vanishing shifted Homs both ways.
#[test]
fn compatibility_is_two_sided_hom_vanishing() {
    for name in ["line3", "star3", "triangle", "loop_pendant", "six_edge"] {
        let g = load(name);
        let ws = enumerate_admissible_walks(&g, 3).walks;
        for a in &ws {
            for b in &ws {
                let both = hom_vanishes_into_shift(&g, a, b).vanishes && hom_vanishes_into_shift(&g, b, a).vanishes;
                assert_eq!(compatible(&g, a, b), both, "{name}: {} / {}", a.to_text(&g), b.to_text(&g));
            }
        }
    }
}

#[test]
fn multiplicities_do_not_change_the_poset() {
    for name in common::CORPUS {
        let g = load(name);
        let h = load(&format!("{name}_m3"));
        let p = two_tilt_poset(&g, None).unwrap();
        let q = two_tilt_poset(&h, None).unwrap();
        let sp: Vec<Vec<String>> = p.sets.iter().map(|s| s.serialize(&g)).collect();
        let sq: Vec<Vec<String>> = q.sets.iter().map(|s| s.serialize(&h)).collect();
        assert_eq!(sp, sq, "{name}");
        assert_eq!(p.ge, q.ge, "{name}");
    }
}

#[test]
fn posets_on_corpus() {
    for name in common::with_variants() {
        let g = load(&name);
        let p = two_tilt_poset(&g, None).unwrap();
        let n = p.sets.len();
        for a in 0..n {
            assert!(p.ge[a][a]);
            for b in 0..n {
                if a != b {
                    assert!(!(p.ge[a][b] && p.ge[b][a]), "{name}");
                }
                for c in 0..n {
                    assert!(!(p.ge[a][b] && p.ge[b][c]) || p.ge[a][c], "{name}");
                }
            }
        }
        let max = p.maxima();
        let min = p.minima();
        assert_eq!(max.len(), 1, "{name}");
        assert_eq!(min.len(), 1, "{name}");
        assert!(p.sets[max[0]].is_all_stalks(Sign::Plus));
        assert!(p.sets[min[0]].is_all_stalks(Sign::Minus));
        assert!(hasse_quiver(&g, None).unwrap().is_connected(), "{name}");
        for s in &p.sets {
            assert_eq!(s.walks.len(), g.edge_count());
            let covered: BTreeSet<usize> = s.walks.iter().flat_map(|w| w.edges(&g)).collect();
            assert_eq!(covered.len(), g.edge_count());
        }
    }
}

fn brute_cliques(adj: &[BTreeSet<usize>]) -> BTreeSet<Vec<usize>> {
    let n = adj.len();
    let is_clique = |m: u32| {
        (0..n).all(|a| m >> a & 1 == 0 || (a + 1..n).all(|b| m >> b & 1 == 0 || adj[a].contains(&b)))
    };
    let mut out = BTreeSet::new();
    for m in 0u32..1 << n {
        if !is_clique(m) {
            continue;
        }
        if (0..n).any(|x| m >> x & 1 == 0 && is_clique(m | 1 << x)) {
            continue;
        }
        out.insert((0..n).filter(|&x| m >> x & 1 == 1).collect());
    }
    out
}

proptest! {
    #[test]
    fn cliques_match_brute_force(n in 1usize..9, bits in any::<u64>()) {
        let mut adj = vec![BTreeSet::new(); n];
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                if bits >> k & 1 == 1 {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
                k += 1;
            }
        }
        let got: BTreeSet<Vec<usize>> = maximal_cliques(&adj)
            .into_iter()
            .map(|mut c| { c.sort(); c })
            .collect();
        prop_assert_eq!(got, brute_cliques(&adj));
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

// Trees give the central binomial coefficient; one odd cycle gives 2^(2n-1).
#[test]
fn complete_set_counts() {
    for name in common::ALL.iter().filter(|n| load(n).is_tilting_discrete()) {
        let g = load(name);
        let n = g.edge_count() as u64;
        let want = if g.cycle_profile().betti == 0 { binomial(2 * n, n) } else { 1 << (2 * n - 1) };
        let got = enumerate_two_term_tilting(&g, None).unwrap().len() as u64;
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn walks_may_cross_a_tree_edge_twice() {
    let g = load("loop_pendant");
    let w = make_signed_walk(&g, "P+ L- p+").unwrap();
    assert!(is_admissible(&g, &w));
    assert!(w.len() > g.edge_count());
    assert!(!enumerate_admissible_walks(&g, g.edge_count()).stabilized);
    let en = enumerate_admissible_walks(&g, discrete_length_bound(&g).unwrap());
    assert!(en.stabilized);
    assert!(en.walks.contains(&w));
    assert_eq!(enumerate_two_term_tilting(&g, None).unwrap().len(), 8);
    let g = load("tri_pendant");
    let w = make_signed_walk(&g, "P+ C- B+ A- p+").unwrap();
    assert!(is_admissible(&g, &w));
}
