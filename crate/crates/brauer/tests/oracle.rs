mod common;

use brauer::oracle::*;
use brauer::tilt::*;
use brauer::walks::*;
use brauer::BrauerGraph;
use common::load;
use proptest::prelude::*;

const W1: &str = "1+ 2- 3+ 6b- 5b+ 4b- 3b+ 2b- 1b+ 4-";
const P: i64 = 1_000_000_007;

fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow(rows[rank][c], P - 2);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % P;
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] - f * rows[rank][k]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    b = b.rem_euclid(P);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn colour_count(g: &BrauerGraph, alg: &PathAlgebra, t: &HomTarget, f: usize) -> usize {
    match t {
        HomTarget::Zero => 0,
        HomTarget::Projective(e) => alg.hom_basis(*e, f).len(),
        HomTarget::String(w) => w.colors(g).iter().filter(|&&c| c == f).count(),
    }
}

// dim of H⁰ and H⁻¹ of a complex at the idempotent of `f`.
fn cohomology_at(alg: &PathAlgebra, g: &BrauerGraph, t: &TwoTermComplex, f: usize) -> (usize, usize) {
    let row_off: Vec<Vec<usize>> = t.degree0.iter().map(|&x| alg.hom_basis(x, f)).collect();
    let col_off: Vec<Vec<usize>> = t.degree_minus1.iter().map(|&y| alg.hom_basis(y, f)).collect();
    let n0: usize = row_off.iter().map(|b| b.len()).sum();
    let n1: usize = col_off.iter().map(|b| b.len()).sum();
    let mut m = vec![vec![0i64; n0]; n1];
    let mut ci = 0;
    for (c, basis) in col_off.iter().enumerate() {
        for &u in basis {
            let mut ri = 0;
            for (r, rb) in row_off.iter().enumerate() {
                if let Some(p) = t.differential[r][c] {
                    let p = alg.of_label(g, p).expect("label in algebra");
                    if let Some(prod) = alg.mul(p, u) {
                        let k = rb.iter().position(|&b| b == prod).expect("product lands in row summand");
                        m[ci][ri + k] = 1;
                    }
                }
                ri += rb.len();
            }
            ci += 1;
        }
    }
    let rk = rank_mod_p(m);
    (n0 - rk, n1 - rk)
}

#[test]
fn algebra_dimensions() {
    assert_eq!(PathAlgebra::new(&load("g1")).dim(), 2);
    let g = load("triple_edge");
    assert_eq!(PathAlgebra::new(&g).projective_dim(g.edge("E1").unwrap()), 6);
    let g = load("two_loop");
    let alg = PathAlgebra::new(&g);
    assert_eq!(alg.projective_dim(g.edge("E").unwrap()), 8);
    assert_eq!(alg.projective_dim(g.edge("F").unwrap()), 8);
    assert_eq!(alg.dim(), 16);
    for name in common::ALL {
        let g = load(name);
        let alg = PathAlgebra::new(&g);
        assert_eq!(alg.dim(), algebra_dim_formula(&g), "{name}");
        let total: usize = (0..g.edge_count()).map(|e| alg.projective_dim(e)).sum();
        assert_eq!(total, alg.dim());
    }
}

#[test]
fn stalk_strings() {
    let g = load("g1");
    let p = make_signed_walk(&g, "e+").unwrap();
    assert_eq!(strings_of_walk(&g, &p), (HomTarget::Projective(0), HomTarget::Zero));
    assert_eq!(strings_of_walk(&g, &p.negated()), (HomTarget::Zero, HomTarget::Projective(0)));
}

#[test]
fn running_example_strings() {
    let g = load("six_edge");
    let w = make_signed_walk(&g, W1).unwrap();
    let (HomTarget::String(m), HomTarget::String(n)) = strings_of_walk(&g, &w) else {
        panic!("strings expected");
    };
    let names = |s: &StringWord| s.colors(&g).iter().map(|&c| g.edge_name(c).to_string()).collect::<Vec<_>>().join(" ");
    assert_eq!(names(&m), "E6 E4 E3 E1 E2 E3 E4 E6 E5 E4 E3 E2 E1 E3");
    assert_eq!(m.heights(), vec![0, 1, 2, 3, 2, 3, 2, 1, 2, 1, 2, 1, 2, 1]);
    assert_eq!(names(&n), "E2 E3 E4 E6 E5 E4 E3 E2 E1 E3 E4 E5");
    m.check(&g).unwrap();
    n.check(&g).unwrap();
    let alg = PathAlgebra::new(&g);
    assert!(hom_dim(&g, &alg, &HomTarget::String(m), &HomTarget::String(n)) > 0);
    assert!(!pretilting_oracle(&g, &alg, &w, &w));
}

#[test]
fn hook_presentation() {
    let g = load("triple_edge");
    let h = |t: &str| g.half(t).unwrap();
    let hook = StringWord::from_letters(
        &g,
        vec![
            Letter { arrow: h("1"), inverse: false },
            Letter { arrow: h("2"), inverse: false },
        ],
        0,
    );
    let t = min_proj_presentation(&g, &hook).unwrap();
    assert_eq!(t.degree0, vec![g.edge("E1").unwrap()]);
    assert_eq!(t.degree_minus1, vec![g.edge("E2").unwrap()]);
    assert_eq!(t.entries(), vec![(0, 0, PathLabel::between(&g, h("1b"), h("2b")))]);
}

#[test]
fn simple_at_truncated_edge() {
    let g = load("line2");
    let t = min_proj_presentation(&g, &StringWord::trivial(g.edge("E1").unwrap())).unwrap();
    let w = make_signed_walk(&g, "a+ b-").unwrap();
    assert!(t.same_up_to_reordering(&complex_of_walk(&g, &w)));
    assert_eq!(strings_of_walk(&g, &w).0, HomTarget::String(StringWord::trivial(0)));
}

#[test]
fn presentations_match_walk_complexes() {
    for name in common::ALL {
        let g = load(name);
        let cap = discrete_length_bound(&g).unwrap_or(4);
        for w in enumerate_admissible_walks(&g, cap).walks {
            if w.len() < 2 {
                continue;
            }
            let HomTarget::String(m) = strings_of_walk(&g, &w).0 else {
                panic!("{name}: M is a string for walks of length at least 2");
            };
            let p = min_proj_presentation(&g, &m).unwrap();
            assert!(p.same_up_to_reordering(&complex_of_walk(&g, &w)), "{name}: {}", w.to_text(&g));
        }
    }
}

#[test]
fn cohomology_dimension_vectors() {
    for name in common::ALL {
        let g = load(name);
        let alg = PathAlgebra::new(&g);
        let cap = discrete_length_bound(&g).unwrap_or(4);
        for w in enumerate_signed_walks(&g, cap).0 {
            let t = complex_of_walk(&g, &w);
            let (m, n) = strings_of_walk(&g, &w);
            for f in 0..g.edge_count() {
                let (h0, h1) = cohomology_at(&alg, &g, &t, f);
                assert_eq!(h0, colour_count(&g, &alg, &m, f), "{name} H0 {} at {f}", w.to_text(&g));
                assert_eq!(h1, colour_count(&g, &alg, &n, f), "{name} H-1 {} at {f}", w.to_text(&g));
            }
        }
    }
}

#[test]
fn projective_homs_count_colours() {
    let mut checked = 0;
    for name in ["six_edge", "triangle_m3", "two_loop", "star3_m3"] {
        let g = load(name);
        let alg = PathAlgebra::new(&g);
        for s in enumerate_strings(&g, 5).into_iter().step_by(5).take(20) {
            for e in 0..g.edge_count() {
                let want = s.colors(&g).iter().filter(|&&c| c == e).count();
                assert_eq!(hom_dim(&g, &alg, &HomTarget::Projective(e), &HomTarget::String(s.clone())), want);
            }
            checked += 1;
        }
    }
    assert!(checked >= 50, "{checked}");
}

#[test]
fn string_homs_agree_with_linear_algebra() {
    for name in common::ALL {
        let g = load(name);
        let alg = PathAlgebra::new(&g);
        if alg.dim() > 30 {
            continue;
        }
        let mut targets: Vec<HomTarget> = enumerate_strings(&g, 3).into_iter().map(HomTarget::String).collect();
        targets.extend((0..g.edge_count()).map(HomTarget::Projective));
        let mods: Vec<ExplicitModule> = targets.iter().map(|t| ExplicitModule::of_target(&g, &alg, t)).collect();
        for (x, mx) in targets.iter().zip(&mods) {
            for (y, my) in targets.iter().zip(&mods) {
                assert_eq!(hom_dim(&g, &alg, x, y), linear_hom_dim(&alg, mx, my), "{name}: {x:?} -> {y:?}");
            }
        }
    }
}

#[test]
fn shifted_homs_agree_with_homotopy_classes() {
    for name in ["line2", "line3_m3", "star3", "loop_m3", "loop_pendant", "triangle", "digon"] {
        let g = load(name);
        let alg = PathAlgebra::new(&g);
        let (ws, _) = enumerate_signed_walks(&g, 3);
        for a in &ws {
            for b in &ws {
                assert_eq!(
                    hom_vanishes_into_shift(&g, a, b).vanishes,
                    homotopy_vanishes(&g, &alg, a, b),
                    "{name}: {} -> {}",
                    a.to_text(&g),
                    b.to_text(&g)
                );
            }
        }
    }
}

#[test]
fn pretilting_examples() {
    let g = load("g1");
    let alg = PathAlgebra::new(&g);
    let p = make_signed_walk(&g, "e+").unwrap();
    assert!(!pretilting_oracle(&g, &alg, &p, &p.negated()));
    let g = load("line2");
    let alg = PathAlgebra::new(&g);
    let a = make_signed_walk(&g, "a+").unwrap();
    let ab = make_signed_walk(&g, "a+ b-").unwrap();
    assert_eq!(pretilting_oracle(&g, &alg, &a, &ab), compatible(&g, &a, &ab));
}

#[test]
fn crosscheck_small_cases() {
    let r = crosscheck_bijection(&load("g1"), 1);
    assert_eq!((r.walks, r.pairs, r.disagreements.len()), (2, 3, 0));
    let r = crosscheck_bijection(&load("line2"), 2);
    assert!(r.disagreements.is_empty());
    let r = crosscheck_bijection(&load("six_edge"), 4);
    assert!(r.disagreements.is_empty(), "{:?}", r.disagreements);
}

#[test]
fn invalid_strings_are_rejected() {
    let g = load("line2");
    let a = g.half("A").unwrap();
    let bad = StringWord {
        start: 0,
        letters: vec![Letter { arrow: a, inverse: false }, Letter { arrow: a, inverse: false }],
    };
    assert!(bad.check(&g).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn string_inverse_is_the_same_module(idx in any::<prop::sample::Index>()) {
        let g = load("triangle_m3");
        let alg = PathAlgebra::new(&g);
        let ss = enumerate_strings(&g, 4);
        let s = &ss[idx.index(ss.len())];
        let t = s.inverse(&g);
        prop_assert_eq!(t.inverse(&g), s.clone());
        prop_assert_eq!(s.canonical(&g), t.canonical(&g));
        let x = HomTarget::String(s.clone());
        let y = HomTarget::String(t);
        prop_assert_eq!(hom_dim(&g, &alg, &x, &x), hom_dim(&g, &alg, &y, &x));
    }
}
