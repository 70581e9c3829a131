use std::collections::BTreeMap;

use crate::monomial::{Monomial, OrderKey};
use crate::poly::{merge_terms, Poly, Term};
use crate::ring::Ring;

/// Full multivariate division of `f` by a list of monic polynomials.
///
/// The first basis element whose leading monomial divides the current
/// leading term is used. Work terms live in an ordered map so that each
/// reduction step costs `O(|g| log |f|)` rather than a full merge.
pub(crate) fn reduce_full(ring: &Ring, f: &Poly, basis: &[Poly]) -> Poly {
    if basis.is_empty() || f.is_zero() {
        return f.clone();
    }
    if basis.iter().any(|g| g.is_constant()) {
        return Poly::zero();
    }
    let order = *ring.order();
    let field = ring.field();
    let mut work: BTreeMap<OrderKey, (u32, Monomial)> = f
        .terms()
        .iter()
        .map(|t| (order.key(&t.mono), (t.coeff, t.mono.clone())))
        .collect();
    let mut rem = Vec::new();
    while let Some((_, (c, m))) = work.pop_last() {
        let Some(g) = basis.iter().find(|g| g.terms()[0].mono.divides(&m)) else {
            rem.push(Term { coeff: c, mono: m });
            continue;
        };
        let shift = g.terms()[0].mono.quotient_of(&m);
        let factor = field.neg(c);
        for t in &g.terms()[1..] {
            let mono = t.mono.mul(&shift);
            let key = order.key(&mono);
            let add = field.mul(factor, t.coeff);
            match work.entry(key) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let v = field.add(e.get().0, add);
                    if v == 0 {
                        e.remove();
                    } else {
                        e.get_mut().0 = v;
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert((add, mono));
                }
            }
        }
    }
    Poly::from_sorted(rem)
}

/// Exact quotient `f / g` in the polynomial ring, or `None` if `g` does not divide `f`.
pub(crate) fn divide_exact(ring: &Ring, f: &Poly, g: &Poly) -> Option<Poly> {
    let lead = g.lead()?;
    let inv = ring.field().inv(lead.coeff);
    let mut rest = f.clone();
    let mut quotient = Vec::new();
    while let Some(t) = rest.lead() {
        if !lead.mono.divides(&t.mono) {
            return None;
        }
        let c = ring.field().mul(t.coeff, inv);
        let m = lead.mono.quotient_of(&t.mono);
        let sub = ring.mul_term(g, ring.field().neg(c), &m);
        rest = Poly::from_sorted(merge_terms(rest.terms(), sub.terms(), 1, ring.field(), |a, b| {
            ring.order().cmp(a, b)
        }));
        quotient.push(Term { coeff: c, mono: m });
    }
    Some(Poly::from_sorted(quotient))
}
