use proptest::prelude::*;

use ramify::connection::{curve_intersection, intersection_via_irr, is_isomorphic, Place};
use ramify::corpus::{self, ConnOptions};
use ramify::germ::{self, GoodParam};
use ramify::lft::{self, LftKind};
use ramify::parse::parse_series;
use ramify::resolve;
use ramify::stokes::{self, OrderSequence, PermSequence};
use ramify::{CycNum, DualPuiseuxChar, Error, PuiseuxSeries, Q};

fn cyc() -> impl Strategy<Value = CycNum> {
    (
        prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]),
        prop::collection::vec((-6i64..=6, 1i64..=4), 1..5),
    )
        .prop_map(|(n, cs)| {
            cs.iter()
                .enumerate()
                .fold(CycNum::zero(), |acc, (i, &(a, b))| &acc + &(&CycNum::frac(a, b) * &CycNum::zeta(n, i as i64)))
        })
}

fn nonzero_cyc() -> impl Strategy<Value = CycNum> {
    cyc().prop_filter("nonzero", |c| !c.is_zero())
}

/// `ram`, leading exponent, coefficients; the series is known to `lo + 10`.
fn series_with(lo: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = PuiseuxSeries> {
    series_ram(1..=3, lo)
}

fn series_ram(
    ram: std::ops::RangeInclusive<u32>,
    lo: std::ops::RangeInclusive<i64>,
) -> impl Strategy<Value = PuiseuxSeries> {
    (ram, lo, nonzero_cyc(), prop::collection::vec(prop::option::of(-3i64..=3), 0..8)).prop_map(
        |(r, lo, lead, rest)| {
            let mut terms = vec![(lo, lead)];
            for (i, c) in rest.iter().enumerate() {
                if let Some(c) = c.filter(|c| *c != 0) {
                    terms.push((lo + 1 + i as i64, CycNum::from_int(c)));
                }
            }
            PuiseuxSeries::new(r, lo + 10, terms)
        },
    )
}

fn good_param() -> impl Strategy<Value = GoodParam> {
    (2u32..=6, prop::collection::btree_map(3i64..=30, -3i64..=3, 1..5))
        .prop_filter_map("good parametrization", |(m, terms)| {
            let terms: Vec<(i64, CycNum)> = terms
                .into_iter()
                .filter(|(k, c)| *c != 0 && *k > m as i64)
                .map(|(k, c)| (k, CycNum::from_int(c)))
                .collect();
            let g = terms.iter().fold(m as i64, |g, (k, _)| num_integer::gcd(g, *k));
            if terms.is_empty() || g != 1 {
                return None;
            }
            GoodParam::x_primary(m, PuiseuxSeries::new(1, ramify::puiseux::EXACT, terms)).ok()
        })
}

fn dpc() -> impl Strategy<Value = DualPuiseuxChar> {
    let all = resolve::enumerate_dpcs(8, 24, 3);
    prop::sample::select(all)
}

fn order_sequence() -> impl Strategy<Value = OrderSequence> {
    (2usize..=5, 1usize..=6).prop_flat_map(|(n, h)| {
        prop::collection::vec(Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), h + 1)
            .prop_map(move |orders| OrderSequence { labels: (0..n).collect(), orders })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn roots_of_powers(a in nonzero_cyc(), n in 2u32..=3) {
        let b = a.pow(n as i64).unwrap();
        let r = b.try_nth_root(n).unwrap();
        prop_assert_eq!(r.pow(n as i64).unwrap(), b);
    }

    #[test]
    fn order_is_additive(f in series_with(-4..=4), g in series_with(-4..=4)) {
        let fg = f.mul(&g);
        prop_assert_eq!(fg.ord().unwrap(), f.ord().unwrap() + g.ord().unwrap());
    }

    #[test]
    fn inverse_round_trip(f in series_with(-4..=4)) {
        let one = f.mul(&f.inverse().unwrap());
        prop_assert!(one.agrees_with(&PuiseuxSeries::constant(CycNum::one())));
        prop_assert!(one.trunc().unwrap() > Q::from_integer(0));
    }

    #[test]
    fn revert_round_trip(f in series_ram(1..=1, 1..=3)) {
        let psi = match f.revert() {
            Err(Error::NotRepresentable(_)) => return Ok(()),
            r => r.unwrap(),
        };
        let id = PuiseuxSeries::compose(&f, &psi).unwrap();
        prop_assert!(id.agrees_with(&PuiseuxSeries::monomial(CycNum::one(), Q::from_integer(1))));
        prop_assert!(id.trunc().unwrap() > Q::from_integer(1));
    }

    #[test]
    fn render_parse_round_trip(f in series_with(-4..=2)) {
        let back = parse_series(&f.render("x"), None).unwrap();
        prop_assert_eq!(back.normalize_ram(), f.normalize_ram());
    }

    #[test]
    fn blowup_characteristic(p in good_param()) {
        let c = germ::puiseux_char(&p).unwrap();
        prop_assume!(!c.is_regular());
        let b = germ::blowup(&p).unwrap();
        prop_assert_eq!(germ::blowup_char(&c).unwrap(), germ::puiseux_char(&b).unwrap());
    }

    #[test]
    fn intersection_symmetry(a in good_param(), b in good_param()) {
        prop_assume!(!germ::same_germ(&a, &b).unwrap());
        prop_assert_eq!(
            germ::intersection_number(&a, &b).unwrap(),
            germ::intersection_number(&b, &a).unwrap()
        );
    }

    #[test]
    fn intersection_formula(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let da = corpus::random_dpc(&mut r, 2..=5, 14, 2, |_| true);
        let db = corpus::random_dpc(&mut r, 2..=5, 14, 2, |_| true);
        let a = corpus::random_conn_with(&mut r, &da, Place::Infinity, ConnOptions::default());
        let b = corpus::random_conn_with(&mut r, &db, Place::Infinity, ConnOptions::default());
        prop_assume!(a.q() != b.q() || !is_isomorphic(&a, &b).unwrap());
        prop_assert_eq!(intersection_via_irr(&a, &b).unwrap(), curve_intersection(&a, &b).unwrap());
    }

    #[test]
    fn lft_char_inverts(d in dpc(), kind in prop::sample::select(vec![LftKind::ZERO_INF, LftKind::INF_ZERO, LftKind::INF_INF])) {
        let Ok(out) = lft::lft_char(kind, &d) else { return Ok(()) };
        prop_assert_eq!(lft::lft_char(kind.inverted(), &out).unwrap(), d);
    }

    #[test]
    fn lft_series_matches_char(seed in any::<u64>(), kind in prop::sample::select(vec![LftKind::ZERO_INF, LftKind::INF_ZERO, LftKind::INF_INF])) {
        let mut r = corpus::rng(seed);
        let d = corpus::random_dpc(&mut r, 2..=5, 12, 2, |d| match kind {
            LftKind::INF_ZERO => d.p < d.q,
            LftKind::INF_INF => d.p > d.q,
            _ => true,
        });
        let c = corpus::random_conn_with(&mut r, &d, kind.place_in(), ConnOptions::default());
        let out = match lft::lft_series(kind, &c) {
            Err(Error::NotRepresentable(_)) => return Ok(()),
            o => o.unwrap(),
        };
        prop_assert_eq!(out.dual_puiseux_char().unwrap(), lft::lft_char(kind, &d).unwrap());
    }

    #[test]
    fn plan_iff_resolvable(d in dpc()) {
        let p = resolve::plan(&d);
        prop_assert_eq!(p.success, resolve::is_resolvable(&d));
        if p.success {
            prop_assert!(p.len() <= resolve::length_bound(&d));
            prop_assert_eq!(p.terminal.q, 1);
        }
    }

    #[test]
    fn permutation_round_trip(s in order_sequence()) {
        let p = stokes::to_permutations(&s);
        prop_assert_eq!(stokes::to_orders(&p, &s.labels), s);
    }

    #[test]
    fn conjugates_are_found(s in order_sequence(), w in (2usize..=5).prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())) {
        let p = stokes::to_permutations(&s);
        prop_assume!(w.len() == p.n);
        let mut inv = vec![0; w.len()];
        for (i, &x) in w.iter().enumerate() {
            inv[x] = i;
        }
        // r'_ν = ω r_ν ω^{-1}
        let word: Vec<Vec<usize>> = p.word.iter().map(|r| (0..p.n).map(|x| w[r[inv[x]]]).collect()).collect();
        let q = PermSequence { word, ..p.clone() };
        let found = stokes::conjugacy_check(&p, &q).unwrap().expect("conjugate exists");
        for (r, r2) in p.word.iter().zip(&q.word) {
            for x in 0..p.n {
                prop_assert_eq!(found[r[x]], r2[found[x]]);
            }
        }
    }

    #[test]
    fn rep_dimension_is_irregularity(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let d = corpus::random_dpc(&mut r, 2..=6, 14, 2, |_| true);
        let c = corpus::random_conn_with(&mut r, &d, Place::Zero, ConnOptions::default());
        let st = stokes::Stokes::new(&c, 192).unwrap();
        prop_assert_eq!(stokes::rep_dimension(&st.full, &vec![1; st.full.n()]), d.irr_end());
    }

    #[test]
    fn wall_supports(seed in any::<u64>(), inside in any::<bool>()) {
        let mut r = corpus::rng(seed);
        let s = corpus::random_semigroup(&mut r, 20);
        let alpha = corpus::random_unit_on(&mut r, &s, inside);
        let inv = alpha.inverse().unwrap();
        prop_assert_eq!(s.supports(&inv), s.supports(&alpha));
        prop_assert_eq!(s.supports_star(&inv), s.supports_star(&alpha));
        let rev = alpha.shift(Q::from_integer(1)).revert().unwrap().shift(Q::from_integer(-1));
        prop_assert_eq!(s.supports(&rev), s.supports(&alpha));
        prop_assert_eq!(s.supports_star(&rev), s.supports_star(&alpha));
    }
}
