use std::collections::HashSet;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use carkwork::cark::{
    expand_cark, path_on_spine, reverse_path, revolve_around_spine, spine_signature, NodeKind,
};
use carkwork::geometry::{
    from_disk, geodesic_of_element, geodesic_of_form, sample_geodesic, to_disk, Model,
};
use carkwork::modular_group::{
    matrix_to_word, word_meet, word_to_matrix, ElementKind, Letter, Word,
};
use carkwork::quadratic_forms::{form_of_element, QuadForm};
use carkwork::reduction::{cark_reduce_path, gauss_reduce, lagrange_reduce};
use carkwork::representation::{automorph, solve_form, solve_form_report};
use carkwork::sunburst::{enumerate_cells, neighbors, recenter, translate};

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    (
        any::<bool>(),
        prop::collection::vec(any::<bool>(), 0..=max_len),
    )
        .prop_map(|(start_s, picks)| {
            let mut s_next = start_s;
            let letters = picks
                .into_iter()
                .map(|pick| {
                    let l = if s_next {
                        Letter::S
                    } else if pick {
                        Letter::L
                    } else {
                        Letter::L2
                    };
                    s_next = !s_next;
                    l
                })
                .collect();
            Word::new(letters).unwrap()
        })
}

fn form_strategy(bound: i64) -> impl Strategy<Value = QuadForm> {
    (-bound..=bound, -bound..=bound, -bound..=bound)
        .prop_map(|(a, b, c)| QuadForm::from_i64(a, b, c))
}

fn indefinite(bound: i64) -> impl Strategy<Value = QuadForm> {
    form_strategy(bound).prop_filter("indefinite", |f| f.is_indefinite())
}

/// A small-discriminant form moved away from its spine by a word.
fn far_form() -> impl Strategy<Value = QuadForm> {
    (indefinite(6), word_strategy(16)).prop_map(|(f, w)| f.act(&w.to_matrix()))
}

fn spine_form() -> impl Strategy<Value = QuadForm> {
    indefinite(12).prop_map(|f| cark_reduce_path(&f).unwrap().end)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn words_round_trip(w in word_strategy(40)) {
        prop_assert_eq!(matrix_to_word(&word_to_matrix(w.letters())), w);
    }

    #[test]
    fn reverse_path_inverts(w in word_strategy(30)) {
        let r = reverse_path(&w);
        prop_assert_eq!(r.to_matrix(), w.to_matrix().inverse());
        prop_assert_eq!(reverse_path(&r), w);
    }

    #[test]
    fn meet_is_a_common_prefix(u in word_strategy(20), v in word_strategy(20)) {
        let m = word_meet(&u, &v);
        prop_assert!(u.letters().starts_with(m.letters()));
        prop_assert!(v.letters().starts_with(m.letters()));
        let n = m.len();
        prop_assert!(n == u.len() || n == v.len() || u.letters()[n] != v.letters()[n]);
    }

    #[test]
    fn action_is_a_right_action(f in form_strategy(1000), u in word_strategy(12), v in word_strategy(12)) {
        let (m1, m2) = (u.to_matrix(), v.to_matrix());
        prop_assert_eq!(f.act(&m1.multiply(&m2)), f.act(&m1).act(&m2));
        prop_assert_eq!(f.act(&m1).discriminant(), f.discriminant());
    }

    #[test]
    fn action_is_substitution(f in form_strategy(100), w in word_strategy(10), x in -50i64..50, y in -50i64..50) {
        let m = w.to_matrix();
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        let (mx, my) = m.apply(&x, &y);
        prop_assert_eq!(f.act(&m).evaluate(&x, &y), f.evaluate(&mx, &my));
    }

    #[test]
    fn elements_fix_their_forms(w in word_strategy(16)) {
        let m = w.to_matrix();
        prop_assume!(m.classify() == ElementKind::Hyperbolic);
        let f = form_of_element(&m).unwrap();
        prop_assert!(f.is_indefinite());
        prop_assert!(f.is_primitive());
        prop_assert_eq!(f.act(&m), f);
    }

    #[test]
    fn gauss_reduction_is_sound(f in far_form()) {
        let path = gauss_reduce(&f).unwrap();
        prop_assert!(path.end.is_gauss_reduced().unwrap());
        prop_assert_eq!(f.act(&path.total_matrix), path.end.clone());
        prop_assert_eq!(path.end.discriminant(), f.discriminant());
    }

    #[test]
    fn cark_descent_reaches_the_spine(f in far_form()) {
        let path = cark_reduce_path(&f).unwrap();
        prop_assert!(path.end.is_on_spine().unwrap());
        prop_assert_eq!(f.act(&path.total_matrix), path.end.clone());
        let mins: Vec<BigInt> = path.forms().map(|g| g.a.abs().min(g.c.abs())).collect();
        prop_assert!(mins.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn definite_forms_lagrange_reduce(a in 1i64..200, b in -200i64..200, c in 1i64..200, neg in any::<bool>()) {
        let f = QuadForm::from_i64(a, b, c);
        prop_assume!(f.discriminant().is_negative());
        let f = if neg { f.negate() } else { f };
        let path = lagrange_reduce(&f).unwrap();
        let end = if neg { path.end.negate() } else { path.end.clone() };
        prop_assert!(end.is_lagrange_reduced().unwrap());
        prop_assert_eq!(f.act(&path.total_matrix), path.end);
    }

    #[test]
    fn spines_close_and_agree(f in spine_form()) {
        let cycle = revolve_around_spine(&f).unwrap();
        prop_assert_eq!(&cycle.forms[0], &f);
        prop_assert_eq!(cycle.len(), 2 * cycle.turns.len());
        let sig = spine_signature(&cycle);
        for g in &cycle.forms {
            prop_assert!(g.is_on_spine().unwrap());
            prop_assert_eq!(g.discriminant(), f.discriminant());
            prop_assert_eq!(spine_signature(&revolve_around_spine(g).unwrap()), sig.clone());
        }
    }

    #[test]
    fn spine_paths_are_sound(f in spine_form(), i in 0usize..64) {
        let cycle = revolve_around_spine(&f).unwrap();
        let g = &cycle.forms[i % cycle.len()];
        let w = path_on_spine(&f, g).unwrap();
        prop_assert_eq!(&f.act(&w.to_matrix()), g);
        let back = path_on_spine(g, &f).unwrap();
        prop_assert_eq!(&g.act(&back.to_matrix()), &f);
    }

    #[test]
    fn automorphs_fix_forms(f in far_form()) {
        let a = automorph(&f).unwrap();
        prop_assert!(!a.is_identity());
        prop_assert_eq!(f.act(&a), f);
    }

    #[test]
    fn solutions_are_sound_and_frontiers_bounded(f in indefinite(9), n in -40i64..=40) {
        prop_assume!(n != 0);
        let n = BigInt::from(n);
        let report = solve_form_report(&f, &n).unwrap();
        if let Some(s) = &report.solution {
            prop_assert_eq!(f.evaluate(&s.x, &s.y), n.clone());
            let m = word_to_matrix(&report.path_letters);
            let found = f.act(&m.inverse());
            prop_assert!(found.a == &n / (&report.scale * &report.scale)
                || found.c == &n / (&report.scale * &report.scale));
        }
    }

    #[test]
    fn solver_finds_what_brute_force_finds(f in indefinite(6), n in -15i64..=15) {
        prop_assume!(n != 0);
        let (a, b, c) = (
            i64::try_from(&f.a).unwrap(),
            i64::try_from(&f.b).unwrap(),
            i64::try_from(&f.c).unwrap(),
        );
        let brute = (-40i64..=40).any(|x| (-40i64..=40).any(|y| a * x * x + b * x * y + c * y * y == n));
        let got = solve_form(&f, &BigInt::from(n)).unwrap();
        if brute {
            prop_assert!(got.is_some(), "{} = {} has solutions", f, n);
        }
    }

    #[test]
    fn geodesics_correspond(w in word_strategy(14)) {
        let m = w.to_matrix();
        prop_assume!(m.classify() == ElementKind::Hyperbolic);
        let g = geodesic_of_element(&m).unwrap();
        let h = geodesic_of_form(&form_of_element(&m).unwrap()).unwrap();
        prop_assert_eq!(&g.center, &h.center);
        prop_assert_eq!(&g.radius_squared, &h.radius_squared);
        prop_assert_eq!(&g.endpoints, &h.endpoints);
    }

    #[test]
    fn samples_lie_on_the_arc(f in indefinite(40), n in 2usize..80) {
        prop_assume!(!f.a.is_zero());
        let g = geodesic_of_form(&f).unwrap();
        let c = Complex64::new(g.center_f64(), 0.0);
        let pts = sample_geodesic(&g, n, Model::HalfPlane).unwrap();
        prop_assert_eq!(pts.len(), n);
        let (lo, hi) = g.endpoints_f64();
        prop_assert!((pts[0].re - lo).abs() < 1e-9 && (pts[n - 1].re - hi).abs() < 1e-9);
        for z in &pts {
            prop_assert!(z.im >= 0.0);
            prop_assert!(((z - c).norm() - g.radius_f64()).abs() < 1e-9 * g.radius_f64().max(1.0));
        }
        for z in sample_geodesic(&g, n, Model::Disk).unwrap() {
            prop_assert!(z.norm() <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn cayley_round_trip(x in -20.0f64..20.0, y in 0.0f64..20.0) {
        let z = Complex64::new(x, y);
        prop_assert!((from_disk(to_disk(z)) - z).norm() < 1e-12 * z.norm().max(1.0));
        prop_assert!(to_disk(z).norm() <= 1.0 + 1e-15);
    }

    #[test]
    fn recentering_moves_labels_only(w in word_strategy(12)) {
        let base = enumerate_cells(5).unwrap();
        let moved = recenter(&w, 5).unwrap();
        prop_assert_eq!(&moved.cells[0].word, &w);
        for i in 0..base.len() {
            prop_assert_eq!(neighbors(&base, i).unwrap(), neighbors(&moved, i).unwrap());
            prop_assert_eq!(base.cells[i].start, moved.cells[i].start);
        }
        let back = translate(&moved, &w.to_matrix().inverse());
        for (x, y) in back.cells.iter().zip(&base.cells) {
            prop_assert_eq!(&x.word, &y.word);
        }
        let distinct: HashSet<_> = moved.cells.iter().map(|c| &c.word).collect();
        prop_assert_eq!(distinct.len(), moved.len());
    }
}

#[test]
fn neighbourhood_is_symmetric() {
    let layout = enumerate_cells(7).unwrap();
    for i in 0..layout.len() {
        for j in neighbors(&layout, i).unwrap() {
            assert!(neighbors(&layout, j).unwrap().contains(&i), "{i} ~ {j}");
        }
    }
}

#[test]
fn cark_graphs_have_bounded_valency() {
    for f in [
        QuadForm::from_i64(1, 1, -1),
        QuadForm::from_i64(-14, 2, 1),
        QuadForm::from_i64(5, 11, 3),
    ] {
        for depth in 0..5 {
            let g = expand_cark(&f, depth).unwrap();
            let d = f.discriminant();
            assert!(g.edges.iter().all(|e| e.form.discriminant() == d));
            assert_eq!(g.edges.iter().filter(|e| e.marked).count(), 1);
            for node in &g.nodes {
                let deg = g.degree(node.id);
                match node.kind {
                    NodeKind::White => assert!(deg <= 2),
                    NodeKind::Black => assert!(deg <= 3),
                }
            }
            let forms: HashSet<_> = g.edges.iter().map(|e| &e.form).collect();
            assert_eq!(forms.len(), g.edges.len());
        }
    }
}
