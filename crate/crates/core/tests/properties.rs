use proptest::prelude::*;

use linarr::formats::{parse_arr, render_arr};
use linarr::geom::{intersect, Arrangement, Line, Meet};
use linarr::group::{
    abelianization, euler_characteristic, free_reduce, simplify, tietze3_multiply, Letter, Presentation, Word,
};
use linarr::poset::build_affine_poset;
use linarr::rational::{rat, GaussianRational};

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -3i64..=3).prop_map(|(n, d, im)| GaussianRational::new(rat(n, d), rat(im, 2)))
}

fn real_coeffs() -> impl Strategy<Value = (i64, i64, i64)> {
    (-4i64..=4, -4i64..=4, -4i64..=4).prop_filter("nondegenerate", |(a, b, _)| *a != 0 || *b != 0)
}

fn word(gens: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, any::<bool>()), 0..12).prop_map(|ls| {
        Word::raw(ls.into_iter().map(|(g, p)| if p { Letter::pos(g) } else { Letter::neg(g) }).collect())
    })
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(word(n), 1..5).prop_map(move |rels| {
            let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            Presentation::with_names(&names, rels.iter().map(free_reduce).collect()).unwrap()
        })
    })
}

fn real_arrangement() -> impl Strategy<Value = Arrangement> {
    prop::collection::vec(real_coeffs(), 1..7).prop_filter_map("distinct lines", |cs| {
        let lines = cs
            .into_iter()
            .enumerate()
            .map(|(i, (a, b, c))| Line::real(rat(a, 1), rat(b, 1), rat(c, 1), format!("L{}", i + 1)).unwrap())
            .collect();
        Arrangement::new(lines).ok()
    })
}

proptest! {
    #[test]
    fn normalization_is_scale_invariant(
        a in gaussian(), b in gaussian(), c in gaussian(), k in gaussian(),
    ) {
        prop_assume!(!(a.is_zero() && b.is_zero()) && !k.is_zero());
        let l = Line::new(a.clone(), b.clone(), c.clone(), "l").unwrap();
        let scaled = Line::new(&a * &k, &b * &k, &c * &k, "l").unwrap();
        prop_assert_eq!(l, scaled);
    }

    #[test]
    fn intersection_lies_on_both_lines((a1, b1, c1) in real_coeffs(), (a2, b2, c2) in real_coeffs()) {
        let l = Line::real(rat(a1, 1), rat(b1, 1), rat(c1, 1), "l").unwrap();
        let m = Line::real(rat(a2, 1), rat(b2, 1), rat(c2, 1), "m").unwrap();
        match intersect(&l, &m) {
            Meet::Point(p) => prop_assert!(l.contains(&p) && m.contains(&p)),
            Meet::Parallel => prop_assert!(l.is_parallel_to(&m) && !l.same_locus(&m)),
            Meet::EqualLines => prop_assert!(l.same_locus(&m)),
        }
    }

    #[test]
    fn render_parse_round_trip(arr in real_arrangement()) {
        prop_assert_eq!(parse_arr(&render_arr(&arr)).unwrap(), arr);
    }

    #[test]
    fn pairs_are_accounted_for(arr in real_arrangement()) {
        prop_assert!(build_affine_poset(&arr).pair_accounting_holds());
    }

    #[test]
    fn free_reduce_is_idempotent(w in word(4)) {
        let once = free_reduce(&w);
        prop_assert_eq!(free_reduce(&once), once.clone());
        prop_assert_eq!(once.exponent_sum(0), w.exponent_sum(0));
    }

    #[test]
    fn simplify_preserves_invariants(p in presentation()) {
        let (q, moves) = simplify(&p);
        prop_assert_eq!(abelianization(&q), abelianization(&p));
        prop_assert_eq!(euler_characteristic(&q), euler_characteristic(&p));
        // Replaying the log reproduces the result.
        let mut r = p.clone();
        for m in &moves {
            r.apply(m).unwrap();
        }
        prop_assert_eq!(r, q);
    }

    #[test]
    fn tietze3_conserves_invariants(p in presentation(), i in 0usize..5, j in 0usize..5) {
        let n = p.relators().len();
        prop_assume!(n > 1 && i % n != j % n);
        let q = tietze3_multiply(&p, i % n, j % n).unwrap();
        prop_assert_eq!(abelianization(&q), abelianization(&p));
        prop_assert_eq!(euler_characteristic(&q), euler_characteristic(&p));
    }
}
