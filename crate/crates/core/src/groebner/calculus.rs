//! Ideal operations in `A = F_p[x]/J`: sums, products, intersections and colons.
//!
//! Everything is computed on preimages in the ambient polynomial ring, where
//! every ideal of `A` corresponds to an ideal containing `J`.

use crate::error::Result;
use crate::poly::Poly;
use crate::ring::Ring;

use super::buchberger::groebner_basis;
use super::ideal::Ideal;
use super::reduce::divide_exact;

/// `I + K`.
pub fn sum(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    i.check_same_ring(k)?;
    let mut gens = i.gens().to_vec();
    gens.extend(k.gens().iter().cloned());
    Ideal::new(i.ring(), gens)
}

/// `I * K`, generated by pairwise products.
pub fn product(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    i.check_same_ring(k)?;
    let ring = i.ring();
    let mut gens = Vec::with_capacity(i.gens().len() * k.gens().len());
    for f in i.gens() {
        for g in k.gens() {
            gens.push(ring.mul(f, g));
        }
    }
    Ideal::new(ring, gens)
}

/// Drops generators that already vanish in `A`.
fn prune_relations(ring: &Ring, gens: Vec<Poly>) -> Result<Vec<Poly>> {
    if ring.is_polynomial_ring() {
        return Ok(gens);
    }
    let j = Ideal::zero(ring);
    let mut out = Vec::new();
    for g in gens {
        if !j.contains(&g)? {
            out.push(g);
        }
    }
    Ok(out)
}

/// Ambient intersection of two generator lists via `t*F + (1-t)*G`, eliminating `t`.
fn ambient_intersection(ring: &Ring, f: &[Poly], g: &[Poly]) -> Result<Vec<Poly>> {
    let n = ring.nvars();
    let ext = ring.ambient().eliminating_extension(&["t"]);
    let t = ext.var(n);
    let one_minus_t = ext.sub(&ext.one(), &t);
    let mut gens = Vec::with_capacity(f.len() + g.len());
    for a in f {
        gens.push(ext.mul(&t, &ext.extend_poly(a, 1)));
    }
    for b in g {
        gens.push(ext.mul(&one_minus_t, &ext.extend_poly(b, 1)));
    }
    let gb = groebner_basis(&ext, &gens)?;
    Ok(gb
        .into_iter()
        .filter(|h| h.terms().iter().all(|t| t.mono.exponents()[n] == 0))
        .map(|h| {
            // dropping a zero exponent in the eliminated block keeps the base order
            Poly::from_sorted(
                h.terms()
                    .iter()
                    .map(|t| crate::poly::Term { coeff: t.coeff, mono: t.mono.truncated(n) })
                    .collect(),
            )
        })
        .collect())
}

fn with_relations(i: &Ideal) -> Vec<Poly> {
    let mut v = i.gens().to_vec();
    v.extend(i.ring().relations().iter().cloned());
    v
}

/// `I ∩ K`.
pub fn intersect(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    i.check_same_ring(k)?;
    let ring = i.ring();
    if i.is_unit()? {
        return Ok(k.clone());
    }
    if k.is_unit()? {
        return Ok(i.clone());
    }
    let gens = ambient_intersection(ring, &with_relations(i), &with_relations(k))?;
    Ideal::new(ring, prune_relations(ring, gens)?)
}

/// `(I : f) = {g : g f ∈ I}`.
///
/// When `f` vanishes in `A/I` (in particular when `f = 0` in `A`) the result is
/// the unit ideal; use [`colon_by_element`] to tell that case apart.
pub fn colon(i: &Ideal, f: &Poly) -> Result<Ideal> {
    Ok(colon_by_element(i, f)?.into_ideal())
}

/// Result of a colon by a single element.
#[derive(Debug, Clone)]
pub enum Colon {
    /// `f ∈ I`, so every element multiplies `f` into `I`.
    Unit(Ideal),
    Proper(Ideal),
}

impl Colon {
    pub fn into_ideal(self) -> Ideal {
        match self {
            Colon::Unit(i) | Colon::Proper(i) => i,
        }
    }
}

pub fn colon_by_element(i: &Ideal, f: &Poly) -> Result<Colon> {
    let ring = i.ring();
    if i.contains(f)? {
        return Ok(Colon::Unit(Ideal::unit(ring)));
    }
    let amb = ring.ambient();
    let inter = ambient_intersection(ring, &with_relations(i), std::slice::from_ref(f))?;
    let gens = inter
        .iter()
        .map(|h| divide_exact(&amb, h, f).expect("intersection with (f) consists of multiples of f"))
        .collect();
    Ok(Colon::Proper(Ideal::new(ring, prune_relations(ring, gens)?)?))
}

/// `(I : K) = ∩_k (I : k)` over the generators of `K`.
pub fn colon_ideal(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    i.check_same_ring(k)?;
    let mut acc = Ideal::unit(i.ring());
    for g in k.gens() {
        let c = colon(i, g)?;
        acc = intersect(&acc, &c)?;
    }
    Ok(acc)
}
