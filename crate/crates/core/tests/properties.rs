use gbinv_core::firstfall::{first_fall_degree, syz_dim, triv_dim, triv_space};
use gbinv_core::groebner::{buchberger, GbLimits};
use gbinv_core::macaulay::{lazard_closure, v_space};
use gbinv_core::regularity::{betti_numbers, default_jmax, hilbert_series};
use gbinv_core::{Analyzer, Limits, Monomial, OrderKind, PolySystem, Polynomial, PrimeField, TermOrder};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(rng: &mut ChaCha8Rng, n: usize, p: u64, deg: u16, homogeneous: bool) -> Polynomial {
    let field = PrimeField::new(p).unwrap();
    let mut f = Polynomial::zero(n, field);
    while f.degree() != deg as i64 {
        let mut e = vec![0u16; n];
        let target = if homogeneous || rng.gen_bool(0.4) { deg } else { rng.gen_range(0..=deg) };
        for _ in 0..target {
            e[rng.gen_range(0..n)] += 1;
        }
        f.add_term(Monomial::new(e), rng.gen_range(1..p) as u32);
    }
    for _ in 0..rng.gen_range(0..4) {
        let mut e = vec![0u16; n];
        let target = if homogeneous { deg } else { rng.gen_range(0..=deg) };
        for _ in 0..target {
            e[rng.gen_range(0..n)] += 1;
        }
        f.add_term(Monomial::new(e), rng.gen_range(1..p) as u32);
    }
    if f.is_zero() {
        random_poly(rng, n, p, deg, homogeneous)
    } else {
        f
    }
}

fn random_system(seed: u64, homogeneous: bool) -> PolySystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3);
    let p = [3u64, 5, 7][rng.gen_range(0..3)];
    let r = rng.gen_range(1..=3);
    let mut gens: Vec<Polynomial> = Vec::new();
    while gens.len() < r {
        let d = rng.gen_range(1..=3);
        let f = random_poly(&mut rng, n, p, d, homogeneous);
        if f.degree() == d as i64 && (!homogeneous || f.is_homogeneous()) {
            gens.push(f);
        }
    }
    PolySystem::with_default_names(PrimeField::new(p).unwrap(), n, gens).unwrap()
}

fn drl(n: usize) -> TermOrder {
    TermOrder::degrevlex(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn groebner_basis_is_reduced_and_order_of_generators_is_irrelevant(seed in any::<u64>()) {
        let s = random_system(seed, false);
        let o = drl(s.nvars());
        let gb = buchberger(&s, &o, GbLimits::default()).unwrap();
        prop_assert!(gb.is_reduced());
        prop_assert!(gb.satisfies_buchberger_criterion());
        for g in s.generators() {
            prop_assert!(gb.contains(g));
        }
        let mut rev: Vec<Polynomial> = s.generators().to_vec();
        rev.reverse();
        let s2 = PolySystem::with_default_names(s.field(), s.nvars(), rev).unwrap();
        let gb2 = buchberger(&s2, &o, GbLimits::default()).unwrap();
        prop_assert_eq!(gb.elements(), gb2.elements());
    }

    #[test]
    fn truncated_ideal_dimension_grows(seed in any::<u64>()) {
        let s = random_system(seed, false);
        let gb = buchberger(&s, &drl(s.nvars()), GbLimits::default()).unwrap();
        let mut last = 0;
        for d in 0..10 {
            let dim = gb.truncated_ideal_dim(d).unwrap();
            prop_assert!(dim >= last);
            last = dim;
        }
    }

    #[test]
    fn closures_are_monotone_reduced_and_inside_the_ideal(seed in any::<u64>()) {
        let s = random_system(seed, false);
        let n = s.nvars();
        let gb = buchberger(&s, &drl(n), GbLimits::default()).unwrap();
        let mut prev = None;
        for d in 0..=6 {
            let v = v_space(&s, d).unwrap();
            prop_assert!(v.is_reduced_echelon());
            for f in v.rows() {
                prop_assert!(gb.contains(f));
            }
            if let Some(prev) = &prev {
                let prev: &gbinv_core::EchelonBasis = prev;
                for f in prev.rows() {
                    prop_assert!(v.contains(f).unwrap());
                }
            }
            let g = lazard_closure(&s, d, &TermOrder::standard(OrderKind::Grlex, n)).unwrap();
            prop_assert_eq!(g.dim(), v.dim());
            prev = Some(v);
        }
    }

    #[test]
    fn homogeneous_systems_have_no_falls(seed in any::<u64>()) {
        let s = random_system(seed, true);
        let mut a = Analyzer::new(s.clone(), Limits::default());
        prop_assert_eq!(a.last_fall_degree(&drl(s.nvars())).unwrap().map(|l| l.value), Some(0));
        let t = a.degree_equality_table(8).unwrap();
        prop_assert!(t.rows.iter().all(|r| r.saturated && r.stable));
    }

    #[test]
    fn solving_degree_bounds_and_order_independence(seed in any::<u64>()) {
        let s = random_system(seed, false);
        let n = s.nvars();
        let mut a = Analyzer::new(s, Limits::default());
        let d1 = a.last_fall_degree(&drl(n)).unwrap().map(|l| l.value);
        let d2 = a
            .last_fall_degree(&TermOrder::standard(OrderKind::Grlex, n))
            .unwrap()
            .map(|l| l.value);
        prop_assert_eq!(d1, d2);
        if let (Some(sd), Some(df)) = (a.solving_degree(&drl(n)).unwrap(), d1) {
            let mg = a.max_gb_degree(&drl(n)).unwrap();
            prop_assert!(sd >= df && sd >= mg);
            prop_assert_eq!(sd, df.max(mg));
        }
    }

    #[test]
    fn fall_degrees_of_ideal_elements_stay_below_last_fall(seed in any::<u64>(), k in 0usize..4) {
        let s = random_system(seed, false);
        let n = s.nvars();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
        let mut a = Analyzer::new(s.clone(), Limits::default());
        let Some(lf) = a.last_fall_degree(&drl(n)).unwrap() else { return Ok(()); };
        let gb = a.groebner(&drl(n)).unwrap().clone();
        if gb.is_unit_ideal() {
            return Ok(());
        }
        // a random combination of Gröbner basis elements with small multipliers
        let mut f = Polynomial::zero(n, s.field());
        for g in gb.elements() {
            let m = random_poly(&mut rng, n, s.field().modulus() as u64, k as u16 % 2, false);
            f = f.checked_add(&g.checked_mul(&m).unwrap()).unwrap();
        }
        if f.is_zero() {
            return Ok(());
        }
        if let Some(ev) = a.degree_fall_of(&f).unwrap() {
            if ev.is_fall() {
                prop_assert!(ev.reached_at <= lf.value);
            }
        }
    }

    #[test]
    fn betti_numbers_match_the_hilbert_numerator(seed in any::<u64>()) {
        let s = random_system(seed, false);
        let h = s.homogenized("h").unwrap();
        let jmax = default_jmax(&h);
        let betti = betti_numbers(&h, jmax, GbLimits::default()).unwrap();
        let gb = buchberger(&h, &drl(h.nvars()), GbLimits::default()).unwrap();
        let hs = hilbert_series(&gb).unwrap();
        let mut num = hs.numerator().to_vec();
        num.resize(jmax + 1, 0);
        let mut euler = betti.euler_numerator();
        euler.resize(jmax + 1, 0);
        prop_assert_eq!(&euler[..=jmax], &num[..=jmax]);
        prop_assert_eq!(betti.get(0, 0), 1);
    }

    #[test]
    fn trivial_syzygies_are_syzygies(seed in any::<u64>()) {
        let s = random_system(seed, false);
        let q = s.field().modulus() as u64;
        let top = s.top_system();
        for t in triv_space(&top, 4, q).unwrap() {
            prop_assert!(t.is_syzygy_of(top.generators(), q as u16));
        }
        let dff = first_fall_degree(&s, q, 6).unwrap();
        for d in 0..=6 {
            let sy = syz_dim(&top, d, q).unwrap();
            let tr = triv_dim(&top, d, q).unwrap();
            prop_assert!(tr <= sy);
            if dff.is_none_or(|f| d < f) {
                prop_assert_eq!(tr, sy);
            }
        }
    }
}
