use nccremona::commrat::{commutativize, RatFn};
use nccremona::ncexpr::{normalize, reverse};
use nccremona::random::Sampler;
use nccremona::repeq::{represent, RepEnv, Series};
use nccremona::syntax::{parse_comm, parse_nc, print_comm, print_nc};
use nccremona::vmatrix::{comm_det, decompose};
use nccremona::{CommRat, ExprStore, Rational};
use num_rational::Rational64;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 32, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn commutativization_is_a_ring_map(seed in any::<u64>()) {
        let s = ExprStore::new();
        let mut rng = Sampler::new(seed);
        let a = rng.expr(&s, 4).unwrap();
        let b = rng.expr(&s, 4).unwrap();
        let (pa, pb) = (commutativize(&s, a).unwrap(), commutativize(&s, b).unwrap());
        let sum = commutativize(&s, s.add(a, b).unwrap()).unwrap();
        let prod = commutativize(&s, s.mul(a, b).unwrap()).unwrap();
        prop_assert!(sum.equals(&(&pa + &pb)));
        prop_assert!(prod.equals(&(&pa * &pb)));
    }

    #[test]
    fn normalize_is_idempotent_and_preserves_shadow(seed in any::<u64>()) {
        let s = ExprStore::new();
        let e = Sampler::new(seed).expr(&s, 6).unwrap();
        let n = normalize(&s, e).unwrap();
        prop_assert_eq!(normalize(&s, n).unwrap(), n);
        prop_assert!(commutativize(&s, n).unwrap().equals(&commutativize(&s, e).unwrap()));
    }

    #[test]
    fn reverse_is_an_involution(seed in any::<u64>()) {
        let s = ExprStore::new();
        let e = Sampler::new(seed).expr(&s, 6).unwrap();
        let r = reverse(&s, e).unwrap();
        prop_assert_eq!(reverse(&s, r).unwrap(), e);
        prop_assert!(commutativize(&s, r).unwrap().equals(&commutativize(&s, e).unwrap()));
    }

    #[test]
    fn parse_print_round_trip(seed in any::<u64>()) {
        let s = ExprStore::new();
        let e = Sampler::new(seed).expr(&s, 8).unwrap();
        let text = print_nc(&s, e);
        prop_assert_eq!(parse_nc(&s, &text).unwrap(), e, "{}", text);
    }

    #[test]
    fn comm_print_parse_is_stable(seed in any::<u64>()) {
        let s = ExprStore::new();
        let f = commutativize(&s, Sampler::new(seed).expr(&s, 5).unwrap()).unwrap();
        let g = parse_comm(&print_comm(&f)).unwrap();
        prop_assert!(g.equals(&f));
        prop_assert_eq!(print_comm(&g), print_comm(&f));
    }

    #[test]
    fn rational_functions_form_a_field(seed in any::<u64>()) {
        let s = ExprStore::new();
        let mut rng = Sampler::new(seed);
        let mut draw = || commutativize(&s, rng.expr(&s, 3).unwrap()).unwrap();
        let (a, b, c) = (draw(), draw(), draw());
        prop_assert!((&(&a + &b) * &c).equals(&(&(&a * &c) + &(&b * &c))));
        prop_assert!((&(&a * &b) * &c).equals(&(&a * &(&b * &c))));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).equals(&CommRat::one()));
        }
        let r = a.reduce();
        prop_assert!(r.equals(&a));
        prop_assert_eq!(r.reduce().to_string(), r.to_string());
    }

    #[test]
    fn ratio_law(seed in any::<u64>(), k in 1usize..=3) {
        let s = ExprStore::new();
        let m = Sampler::new(seed).vmatrix(k, 2);
        prop_assume!(!comm_det(&m).is_zero());
        let d = decompose(&s, &m, None).unwrap();
        let phi = commutativize(&s, d.delta).unwrap();
        let lhs = &phi * &CommRat::from_poly(d.minor_det.clone());
        prop_assert!(lhs.equals(&CommRat::from_poly(comm_det(&m))));
    }

    #[test]
    fn series_inverse(seed in any::<u64>()) {
        let s = ExprStore::new();
        let mut rng = Sampler::new(seed);
        let e = rng.expr(&s, 3).unwrap();
        prop_assume!(!commutativize(&s, e).unwrap().is_zero());
        let env = RepEnv::random(1, 3, 2, seed);
        let series = represent(&s, e, &env).unwrap().entry(0, 0);
        let product = &series * &series.inv().unwrap();
        prop_assert!(product.equals(&Series::constant(CommRat::one(), 3)));
    }

    #[test]
    fn small_rationals_agree_with_big(a in -20i64..20, b in 1i64..20, c in -20i64..20) {
        let small = RatFn::<Rational64>::x().scale(&Rational64::new(a, b)) + RatFn::constant(Rational64::from_integer(c));
        let big = CommRat::x().scale(&Rational::new(a.into(), b.into())) + CommRat::constant(Rational::from_integer(c.into()));
        let (x, y) = (Rational64::new(3, 7), Rational64::new(-2, 5));
        let v = small.eval(&x, &y).unwrap();
        let w = big.eval(&Rational::new(3.into(), 7.into()), &Rational::new((-2).into(), 5.into())).unwrap();
        prop_assert_eq!(Rational::new((*v.numer()).into(), (*v.denom()).into()), w);
    }
}

#[test]
fn floating_point_shadow_is_close() {
    let f = RatFn::<f64>::x() * RatFn::<f64>::y() - RatFn::one();
    let g = f.div(&RatFn::x()).unwrap();
    let v = g.eval(&2.0, &3.0).unwrap();
    assert!((v - 2.5).abs() < 1e-12);
}
