use frobpow::{Poly, Ring, Term};
use proptest::prelude::*;

fn ring_for(p: u64, n: usize) -> Ring {
    let names = ["x", "y", "z"];
    Ring::polynomial(p, &names[..n]).unwrap()
}

/// Terms as (coefficient, exponents); the ring sorts and merges them.
fn raw_terms(n: usize) -> impl Strategy<Value = Vec<(u32, Vec<u32>)>> {
    prop::collection::vec((0u32..1000, prop::collection::vec(0u32..4, n)), 0..6)
}

fn build(ring: &Ring, raw: &[(u32, Vec<u32>)]) -> Poly {
    let terms = raw
        .iter()
        .map(|(c, e)| Term { coeff: c % ring.characteristic() as u32, mono: frobpow::Monomial::from_exponents(e) })
        .filter(|t| t.coeff != 0)
        .collect();
    ring.from_terms(terms)
}

fn well_formed(ring: &Ring, f: &Poly) -> bool {
    let ord = ring.order();
    f.terms().iter().all(|t| t.coeff != 0 && (t.coeff as u64) < ring.characteristic())
        && f.terms().windows(2).all(|w| ord.cmp(&w[0].mono, &w[1].mono) == std::cmp::Ordering::Greater)
}

fn setup() -> impl Strategy<Value = (u64, usize)> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_pow_is_repeated_product(((p, n), raw, e) in setup().prop_flat_map(|s| (Just(s), raw_terms(s.1), 0u32..=3))) {
        let ring = ring_for(p, n);
        let f = build(&ring, &raw);
        let q = p.pow(e);
        prop_assume!(q <= 27);
        let mut prod = ring.one();
        for _ in 0..q {
            prod = ring.mul(&prod, &f);
        }
        prop_assert_eq!(ring.frobenius_pow(&f, q).unwrap(), prod);
    }

    #[test]
    fn print_parse_round_trip(((p, n), raw) in setup().prop_flat_map(|s| (Just(s), raw_terms(s.1)))) {
        let ring = ring_for(p, n);
        let f = build(&ring, &raw);
        let text = ring.display(&f);
        let g = ring.parse_poly(&text).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(ring.display(&g), text);
    }

    #[test]
    fn arithmetic_keeps_terms_sorted_and_nonzero(((p, n), a, b) in setup().prop_flat_map(|s| (Just(s), raw_terms(s.1), raw_terms(s.1)))) {
        let ring = ring_for(p, n);
        let f = build(&ring, &a);
        let g = build(&ring, &b);
        for h in [ring.add(&f, &g), ring.sub(&f, &g), ring.mul(&f, &g), ring.sub(&f, &f), ring.scale(&f, 2), ring.pow(&g, 3)] {
            prop_assert!(well_formed(&ring, &h), "{:?}", h);
        }
        prop_assert!(ring.sub(&f, &f).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quotient_ring_round_trip(raw in raw_terms(3), p in prop::sample::select(vec![2u64, 3, 7])) {
        let ring = Ring::parse(&format!("GF({p})[z,x,y]/(x^3+y^3+z^3)")).unwrap();
        let f = build(&ring, &raw);
        let text = ring.display(&f);
        prop_assert_eq!(ring.parse_poly(&text).unwrap(), f);
    }
}
