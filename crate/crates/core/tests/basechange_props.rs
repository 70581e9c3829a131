mod common;

use common::*;
use frobpow::basechange::{check_length_identity, check_hk_multiplicativity, extend_ideal};
use frobpow::groebner::{colon, length};
use frobpow::report::Outcome;
use frobpow::Ideal;
use proptest::prelude::*;
use rand::Rng;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn lengths_multiply(p in prime(), seed in any::<u64>()) {
        let mut rng = rng(seed);
        let x = random_extension(&mut rng, p);
        let i = random_m_primary(&mut rng, &x.base, 3);
        let zt = random_m_primary(&mut rng, &x.fiber.ring, 3);
        let mut gens = x.extend(&i).unwrap().gens().to_vec();
        gens.extend(zt.gens().iter().map(|g| x.from_fiber(g)));
        let s = Ideal::new(&x.total, gens).unwrap();
        prop_assert_eq!(length(&s).unwrap(), length(&i).unwrap() * length(&zt).unwrap());
    }

    #[test]
    fn flat_colon_identity(p in prime(), seed in any::<u64>()) {
        let mut rng = rng(seed);
        let x = random_extension(&mut rng, p);
        let i = random_ideal(&mut rng, &x.base, 2, 3);
        let u = random_poly(&mut rng, &x.base, 2, 2);
        let q = p.pow(rng.gen_range(0..=2));
        let lhs = extend_ideal(&x, &colon(&i, &u).unwrap(), q, true).unwrap();
        let rhs = colon(&extend_ideal(&x, &i, q, true).unwrap(), &x.from_base(&u)).unwrap();
        prop_assert_eq!(lhs.groebner().unwrap(), rhs.groebner().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn length_identity_holds_on_cm_fibers(p in prime(), seed in any::<u64>()) {
        let mut rng = rng(seed);
        let x = random_extension(&mut rng, p);
        let i = random_m_primary(&mut rng, &x.base, 3);
        let emax = match p { 2 => 3, 3 => 2, _ => 1 };
        let rep = check_length_identity(&x, &i, 1..=emax).unwrap();
        prop_assert_eq!(rep.outcome, Outcome::Pass, "{}", rep.to_text());
        let rep = check_hk_multiplicativity(&x, &i, 1..=emax).unwrap();
        prop_assert_eq!(rep.outcome, Outcome::Pass, "{}", rep.to_text());
    }

    #[test]
    fn reports_are_reproducible(p in prime(), seed in any::<u64>()) {
        let mut rng = rng(seed);
        let x = random_extension(&mut rng, p);
        let i = random_m_primary(&mut rng, &x.base, 2);
        let a = serde_json::to_string(&check_length_identity(&x, &i, 1..=2).unwrap()).unwrap();
        let b = serde_json::to_string(&check_length_identity(&x, &i, 1..=2).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}
