#![allow(dead_code)]

use frobpow::basechange::{build_extension, FiberPresentation, FlatExtension};
use frobpow::{Ideal, Monomial, Poly, Ring, Term};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn monomials_up_to(nvars: usize, max_deg: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    for v in 0..nvars {
        let mut next = Vec::new();
        for m in &out {
            for k in 1..=max_deg {
                let mut e = m.exponents().to_vec();
                e[v] += k;
                if e.iter().sum::<u32>() <= max_deg {
                    next.push(Monomial::from_exponents(&e));
                }
            }
        }
        out.extend(next);
    }
    out
}

pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    monomials_up_to(nvars, deg).into_iter().filter(|m| m.degree() == deg as u64).collect()
}

fn from_monos(rng: &mut StdRng, ring: &Ring, pool: &[Monomial], nterms: usize) -> Poly {
    let p = ring.characteristic() as u32;
    let terms = pool
        .choose_multiple(rng, nterms.min(pool.len()))
        .map(|m| Term { coeff: rng.gen_range(1..p), mono: m.clone() })
        .collect();
    ring.from_terms(terms)
}

pub fn random_poly(rng: &mut StdRng, ring: &Ring, max_deg: u32, max_terms: usize) -> Poly {
    let pool = monomials_up_to(ring.nvars(), max_deg);
    let n = rng.gen_range(1..=max_terms);
    from_monos(rng, ring, &pool, n)
}

pub fn random_homogeneous(rng: &mut StdRng, ring: &Ring, deg: u32, max_terms: usize) -> Poly {
    let pool = monomials_of_degree(ring.nvars(), deg);
    let n = rng.gen_range(1..=max_terms);
    from_monos(rng, ring, &pool, n)
}

/// Generators without constant term, so the ideal is proper.
pub fn random_ideal(rng: &mut StdRng, ring: &Ring, max_gens: usize, max_deg: u32) -> Ideal {
    let pool: Vec<Monomial> = monomials_up_to(ring.nvars(), max_deg).into_iter().filter(|m| !m.is_one()).collect();
    let n = rng.gen_range(1..=max_gens);
    let gens = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            from_monos(rng, ring, &pool, k)
        })
        .collect();
    Ideal::new(ring, gens).unwrap()
}

/// Pure powers of every variable plus a random extra generator.
pub fn random_m_primary(rng: &mut StdRng, ring: &Ring, max_pow: u32) -> Ideal {
    let n = ring.nvars();
    let mut gens: Vec<Poly> = (0..n).map(|v| ring.pow(&ring.var(v), rng.gen_range(1..=max_pow) as u64)).collect();
    if rng.gen_bool(0.5) {
        let pool: Vec<Monomial> = monomials_up_to(n, max_pow).into_iter().filter(|m| !m.is_one()).collect();
        gens.push(from_monos(rng, ring, &pool, 2));
    }
    Ideal::new(ring, gens).unwrap()
}

pub fn ring(text: &str) -> Ring {
    Ring::parse(text).unwrap()
}

/// Cohen-Macaulay fibers with a system of parameters, over `GF(p)`.
pub fn fiber_catalog(p: u64) -> Vec<(String, &'static str)> {
    vec![
        (format!("GF({p})[s]/(s^2)"), "()"),
        (format!("GF({p})[s]/(s^3)"), "()"),
        (format!("GF({p})[u,v]/(u*v)"), "(u+v)"),
        (format!("GF({p})[w]"), "(w)"),
        (format!("GF({p})[u,v]/(u^2+v^2)"), "(v)"),
        (format!("GF({p})[u,v]"), "(u, v)"),
    ]
}

/// `R = GF(p)[x]` or `GF(p)[x,y]` tensored with a random catalog fiber.
pub fn random_extension(rng: &mut StdRng, p: u64) -> FlatExtension {
    let base = if rng.gen_bool(0.5) { format!("GF({p})[x]") } else { format!("GF({p})[x,y]") };
    let fibers = fiber_catalog(p);
    let (t, z) = fibers.choose(rng).unwrap();
    extension(&base, t, z)
}

pub fn extension(base: &str, fiber: &str, z: &str) -> FlatExtension {
    let r = ring(base);
    let t = ring(fiber);
    build_extension(&r, FiberPresentation::parse(&t, z).unwrap()).unwrap()
}
