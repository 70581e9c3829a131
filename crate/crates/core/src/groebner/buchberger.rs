use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::Ring;

use super::reduce::reduce_full;

/// S-polynomial of two monic polynomials.
pub(crate) fn s_polynomial(ring: &Ring, f: &Poly, g: &Poly) -> Poly {
    let (lf, lg) = (&f.terms()[0].mono, &g.terms()[0].mono);
    let l = lf.lcm(lg);
    let a = ring.mul_term(f, 1, &lf.quotient_of(&l));
    let b = ring.mul_term(g, 1, &lg.quotient_of(&l));
    ring.sub(&a, &b)
}

/// Reduced Gröbner basis of `input` in the ambient polynomial ring of `ring`.
///
/// Pairs are processed by the normal strategy: smallest lcm degree first,
/// ties broken by creation order. The coprime criterion and the chain
/// criterion discard redundant pairs. Output is monic and sorted by
/// descending leading monomial.
pub fn groebner_basis(ring: &Ring, input: &[Poly]) -> Result<Vec<Poly>> {
    let ring = ring.ambient();
    for f in input {
        ring.check_member(f)?;
    }
    let base_degree = input.iter().map(Poly::total_degree).max().unwrap_or(0);
    // bracket powers of degree d legitimately grow by a multiple of d
    let allowed_growth = ring.limits().degree_cap.max(base_degree);
    let degree_limit = base_degree.saturating_add(allowed_growth);

    let mut basis: Vec<Poly> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    // (lcm degree, sequence number, i, j)
    let mut queue: BTreeSet<(u64, u64, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut seq = 0u64;

    let mut push = |h: Poly,
                    basis: &mut Vec<Poly>,
                    leads: &mut Vec<Monomial>,
                    queue: &mut BTreeSet<(u64, u64, usize, usize)>,
                    pending: &mut HashSet<(usize, usize)>| {
        let h = ring.make_monic(&h);
        let lh = h.terms()[0].mono.clone();
        let k = basis.len();
        for (i, li) in leads.iter().enumerate() {
            if li.is_coprime(&lh) {
                continue;
            }
            queue.insert((li.lcm(&lh).degree(), seq, i, k));
            pending.insert((i, k));
            seq += 1;
        }
        basis.push(h);
        leads.push(lh);
    };

    for f in input {
        let h = reduce_full(&ring, f, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![ring.one()]);
        }
        push(h, &mut basis, &mut leads, &mut queue, &mut pending);
    }

    while let Some(entry) = queue.pop_first() {
        let (deg, _, i, j) = entry;
        pending.remove(&(i, j));
        if deg > degree_limit {
            return Err(Error::Resource(format!(
                "S-pair degree {deg} exceeds allowed growth {allowed_growth} above input degree {base_degree}"
            )));
        }
        let l = leads[i].lcm(&leads[j]);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&ring, &basis[i], &basis[j]);
        let h = reduce_full(&ring, &s, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![ring.one()]);
        }
        push(h, &mut basis, &mut leads, &mut queue, &mut pending);
    }

    Ok(interreduce(&ring, basis))
}

/// Minimalizes and tail-reduces a Gröbner basis.
fn interreduce(ring: &Ring, basis: Vec<Poly>) -> Vec<Poly> {
    let mut keep: Vec<Poly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = &g.terms()[0].mono;
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let lh = &h.terms()[0].mono;
            k != i && lh.divides(lg) && (lh != lg || k < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let reduced: Vec<Poly> = (0..keep.len())
        .map(|i| {
            let others: Vec<Poly> = keep
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, g)| g.clone())
                .collect();
            ring.make_monic(&reduce_full(ring, &keep[i], &others))
        })
        .collect();
    let mut out = reduced;
    out.sort_by(|a, b| ring.order().cmp(&b.terms()[0].mono, &a.terms()[0].mono));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gb(ring: &Ring, gens: &[&str]) -> Vec<String> {
        let polys: Vec<Poly> = gens.iter().map(|s| ring.parse_poly(s).unwrap()).collect();
        groebner_basis(ring, &polys).unwrap().iter().map(|g| ring.display(g)).collect()
    }

    #[test]
    fn already_reduced() {
        let r = Ring::polynomial(2, &["x", "y"]).unwrap();
        assert_eq!(gb(&r, &["x", "y"]), vec!["x", "y"]);
    }

    #[test]
    fn fermat_modulo_two_variables() {
        let r = Ring::polynomial(7, &["x", "y", "z"]).unwrap();
        assert_eq!(gb(&r, &["x^3+y^3+z^3", "x", "y"]), vec!["z^3", "x", "y"]);
    }

    #[test]
    fn unit_ideal() {
        let r = Ring::polynomial(3, &["x", "y"]).unwrap();
        assert_eq!(gb(&r, &["x*y-1", "x^2"]), vec!["1"]);
    }

    #[test]
    fn degree_cap_is_a_resource_error() {
        let pres = crate::ring::RingPresentation::parse("GF(5)[x,y,z]").unwrap();
        let r = Ring::with_limits(&pres, crate::ring::Limits { degree_cap: 0, basis_cap: 10 }).unwrap();
        let polys: Vec<Poly> =
            ["x^2*y - z^3", "x*y^2 - x*z + y"].iter().map(|s| r.parse_poly(s).unwrap()).collect();
        assert!(matches!(groebner_basis(&r, &polys), Err(Error::Resource(_))));
    }
}
