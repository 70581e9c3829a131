//! Numerical invariants read off the leading-term ideal: standard monomials,
//! length, Krull dimension, Hilbert series, socle.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::Ring;

use super::calculus::colon_ideal;
use super::ideal::Ideal;

/// Standard monomials of `A/I`, or a marker that there are infinitely many.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardMonomials {
    Finite(Vec<Monomial>),
    Infinite,
}

impl StandardMonomials {
    pub fn len(&self) -> Option<usize> {
        match self {
            StandardMonomials::Finite(v) => Some(v.len()),
            StandardMonomials::Infinite => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }
}

/// Per-variable bound on exponents of standard monomials, if every variable
/// has a pure power among the leading monomials.
fn staircase_box(leads: &[Monomial], nvars: usize) -> Option<Vec<u32>> {
    let mut bound = vec![u32::MAX; nvars];
    for m in leads {
        if let Some(v) = m.pure_power_var() {
            bound[v] = bound[v].min(m.exponents()[v]);
        }
    }
    bound.iter().all(|&b| b != u32::MAX).then_some(bound)
}

/// Depth-first walk over monomials outside the leading-term ideal.
fn walk_standard(
    leads: &[Monomial],
    bound: &[u32],
    cap: usize,
    mut visit: impl FnMut(&Monomial),
) -> Result<usize> {
    let n = bound.len();
    let mut count = 0usize;
    let mut current = Monomial::one(n);
    // recursive descent on variable index; multiples of a leading monomial are pruned
    fn rec(
        var: usize,
        current: &mut Monomial,
        leads: &[Monomial],
        bound: &[u32],
        cap: usize,
        count: &mut usize,
        visit: &mut dyn FnMut(&Monomial),
    ) -> Result<()> {
        if var == bound.len() {
            *count += 1;
            if *count > cap {
                return Err(Error::Resource(format!("standard monomial basis exceeds cap {cap}")));
            }
            visit(current);
            return Ok(());
        }
        for e in 0..bound[var] {
            current.exps_mut()[var] = e;
            // a divisible prefix stays divisible once more exponents are added
            if leads.iter().any(|l| l.divides(current)) {
                break;
            }
            rec(var + 1, current, leads, bound, cap, count, visit)?;
        }
        current.exps_mut()[var] = 0;
        Ok(())
    }
    rec(0, &mut current, leads, bound, cap, &mut count, &mut visit)?;
    Ok(count)
}

/// Standard monomials of `A/I`, sorted ascending in the ring order.
pub fn standard_monomials(i: &Ideal, cap: usize) -> Result<StandardMonomials> {
    let leads = i.lead_monomials()?;
    if leads.iter().any(Monomial::is_one) {
        return Ok(StandardMonomials::Finite(Vec::new()));
    }
    let Some(bound) = staircase_box(&leads, i.ring().nvars()) else {
        return Ok(StandardMonomials::Infinite);
    };
    let mut out = Vec::new();
    walk_standard(&leads, &bound, cap, |m| out.push(m.clone()))?;
    let order = *i.ring().order();
    out.sort_by(|a, b| order.cmp(a, b));
    Ok(StandardMonomials::Finite(out))
}

/// `dim_{F_p} A/I`, which is the length since every residue field is `F_p`.
pub fn length(i: &Ideal) -> Result<u64> {
    let leads = i.lead_monomials()?;
    if leads.iter().any(Monomial::is_one) {
        return Ok(0);
    }
    let bound = staircase_box(&leads, i.ring().nvars()).ok_or(Error::NotZeroDimensional)?;
    Ok(walk_standard(&leads, &bound, i.ring().limits().basis_cap, |_| {})? as u64)
}

/// Krull dimension of `A/I`: the largest set of variables containing the
/// support of no leading monomial. Returns `-1` for the unit ideal.
pub fn krull_dim(i: &Ideal) -> Result<i64> {
    let leads = i.lead_monomials()?;
    if leads.iter().any(Monomial::is_one) {
        return Ok(-1);
    }
    Ok(max_independent_sets(&leads, i.ring().nvars()).0 as i64)
}

/// Size of the largest independent set, and whether all maximal independent
/// sets (by inclusion) share that size.
fn max_independent_sets(leads: &[Monomial], n: usize) -> (usize, bool) {
    assert!(n < 64, "too many variables for subset enumeration");
    let supports: Vec<u64> = leads
        .iter()
        .map(|m| m.exponents().iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |acc, (v, _)| acc | 1 << v))
        .collect();
    let independent = |s: u64| supports.iter().all(|&sup| sup & !s != 0);
    let mut best = 0usize;
    let mut maximal_sizes = std::collections::BTreeSet::new();
    for s in 0u64..(1u64 << n) {
        if !independent(s) {
            continue;
        }
        best = best.max(s.count_ones() as usize);
        let is_maximal = (0..n).all(|v| s & (1 << v) != 0 || !independent(s | 1 << v));
        if is_maximal {
            maximal_sizes.insert(s.count_ones());
        }
    }
    (best, maximal_sizes.len() <= 1)
}

/// Hilbert series `h(t) / (1-t)^dim` of a graded quotient `A/I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    /// Coefficients of `h`, constant term first.
    pub numerator: Vec<i64>,
    pub dim: i64,
    /// `h(1)`.
    pub multiplicity: i64,
}

impl HilbertSeries {
    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        for (k, &c) in self.numerator.iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match k {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{k}"),
            });
        }
        let num = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        format!("({num})/(1-t)^{}", self.dim)
    }
}

fn poly_t_sub(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, &c) in b.iter().enumerate() {
        a[k + shift] -= c;
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(Monomial::degree);
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N` of `HS(F_p[x]/M) = N(t)/(1-t)^n` for a monomial ideal `M`.
pub(crate) fn monomial_numerator(gens: Vec<Monomial>) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    let n = gens[0].nvars();
    // pivot on a variable shared by two generators; none means pairwise coprime
    let mut pivot = None;
    'outer: for v in 0..n {
        let mut seen = 0;
        for g in &gens {
            if g.exponents()[v] > 0 {
                seen += 1;
                if seen == 2 {
                    pivot = Some(v);
                    break 'outer;
                }
            }
        }
    }
    match pivot {
        None => {
            let mut acc = vec![1i64];
            for g in &gens {
                let d = g.degree() as usize;
                let prev = acc.clone();
                poly_t_sub(&mut acc, &prev, d);
            }
            acc
        }
        Some(v) => {
            // N(M) = N(M + (x_v)) + t * N(M : x_v)
            let x = Monomial::variable(n, v, 1);
            let mut plus = gens.clone();
            plus.push(x.clone());
            let quotient: Vec<Monomial> = gens
                .iter()
                .map(|g| {
                    let mut e = g.exponents().to_vec();
                    e[v] = e[v].saturating_sub(1);
                    Monomial::from_exponents(&e)
                })
                .collect();
            let mut a = monomial_numerator(plus);
            let b = monomial_numerator(quotient);
            let neg_b: Vec<i64> = b.iter().map(|c| -c).collect();
            poly_t_sub(&mut a, &neg_b, 1);
            a
        }
    }
}

pub fn hilbert_series(i: &Ideal) -> Result<HilbertSeries> {
    let ring = i.ring();
    for f in i.gens().iter().chain(ring.relations()) {
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous(ring.display(f)));
        }
    }
    let leads = i.lead_monomials()?;
    if leads.iter().any(Monomial::is_one) {
        return Ok(HilbertSeries { numerator: vec![], dim: -1, multiplicity: 0 });
    }
    let mut num = monomial_numerator(leads);
    let mut k = 0i64;
    // divide by (1 - t) while h(1) = 0
    while !num.is_empty() && num.iter().sum::<i64>() == 0 {
        let mut q = vec![0i64; num.len() - 1];
        let mut carry = 0i64;
        for (idx, c) in num.iter().take(num.len() - 1).enumerate() {
            carry += c;
            q[idx] = carry;
        }
        num = q;
        k += 1;
    }
    while num.last() == Some(&0) {
        num.pop();
    }
    let multiplicity = num.iter().sum();
    Ok(HilbertSeries { numerator: num, dim: ring.nvars() as i64 - k, multiplicity })
}

pub fn multiplicity(i: &Ideal) -> Result<i64> {
    Ok(hilbert_series(i)?.multiplicity)
}

/// Primary to the ideal generated by all variables: proper, zero-dimensional,
/// and some power of every variable lies in `I`.
pub fn is_m_primary(i: &Ideal) -> Result<bool> {
    if i.is_unit()? {
        return Ok(false);
    }
    let len = match length(i) {
        Ok(l) => l,
        Err(Error::NotZeroDimensional) => return Ok(false),
        Err(e) => return Err(e),
    };
    let ring = i.ring();
    for v in 0..ring.nvars() {
        let power = ring.monomial(Monomial::variable(ring.nvars(), v, len.max(1) as u32));
        if !i.contains(&power)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of the socle `(I : m)/I`, as normal forms modulo `I`.
pub fn socle(i: &Ideal) -> Result<Vec<Poly>> {
    if !is_m_primary(i)? {
        return Err(Error::NotMPrimary);
    }
    let ring = i.ring();
    let top = colon_ideal(i, &Ideal::maximal(ring))?;
    // m kills (I:m)/I, so the images of the generators span it over F_p
    let mut pivots: Vec<Poly> = Vec::new();
    for g in top.gens() {
        let mut v = i.normal_form(g)?;
        loop {
            let Some(lead) = v.lead().cloned() else { break };
            match pivots.iter().find(|b| b.terms()[0].mono == lead.mono) {
                Some(b) => {
                    let c = ring.field().neg(lead.coeff);
                    v = ring.add(&v, &ring.scale(b, c));
                }
                None => break,
            }
        }
        if !v.is_zero() {
            pivots.push(ring.make_monic(&v));
        }
    }
    pivots.sort_by(|a, b| ring.order().cmp(&b.terms()[0].mono, &a.terms()[0].mono));
    Ok(pivots)
}

pub fn is_irreducible(i: &Ideal) -> Result<bool> {
    Ok(socle(i)?.len() == 1)
}

/// `n` generators of height at least `n`, height taken as `dim A - dim A/I`.
pub fn is_parameter_ideal(i: &Ideal) -> Result<bool> {
    let ring = i.ring();
    if i.is_unit()? {
        return Ok(false);
    }
    let whole = Ideal::zero(ring);
    let (dim_a, equidimensional) = {
        let leads = whole.lead_monomials()?;
        max_independent_sets(&leads, ring.nvars())
    };
    if !equidimensional {
        log::warn!(
            "{} may not be equidimensional; height via dimension difference can be wrong",
            ring.describe()
        );
    }
    let dim_quot = krull_dim(i)?;
    let n = i.gens().len() as i64;
    Ok(dim_a as i64 - dim_quot >= n)
}

/// `dim A` of the presented ring.
pub fn ring_dim(ring: &Ring) -> Result<i64> {
    krull_dim(&Ideal::zero(ring))
}
