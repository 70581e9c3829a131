use std::cmp::Ordering;

use crate::monomial::Monomial;

/// A nonzero coefficient times a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: u32,
    pub mono: Monomial,
}

/// Polynomial over `F_p` with terms strictly descending in the ambient order.
///
/// A `Poly` does not carry its ring; all arithmetic goes through
/// [`Ring`](crate::ring::Ring), which knows the field and the order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub(crate) terms: Vec<Term>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    /// Builds from terms already sorted strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted(terms: Vec<Term>) -> Self {
        Poly { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = t.mono.degree();
                self.terms.iter().all(|s| s.mono.degree() == d)
            }
        }
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.last().is_some_and(|t| t.mono.is_one())
    }

    pub fn nvars(&self) -> Option<usize> {
        self.terms.first().map(|t| t.mono.nvars())
    }
}

/// Merges two sorted term lists, `a + scale * b`, dropping zeros.
pub(crate) fn merge_terms(
    a: &[Term],
    b: &[Term],
    scale: u32,
    field: &crate::field::PrimeField,
    cmp: impl Fn(&Monomial, &Monomial) -> Ordering,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match cmp(&a[i].mono, &b[j].mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = field.mul(b[j].coeff, scale);
                if c != 0 {
                    out.push(Term { coeff: c, mono: b[j].mono.clone() });
                }
                j += 1;
            }
            Ordering::Equal => {
                let c = field.add(a[i].coeff, field.mul(b[j].coeff, scale));
                if c != 0 {
                    out.push(Term { coeff: c, mono: a[i].mono.clone() });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = field.mul(t.coeff, scale);
        if c != 0 {
            out.push(Term { coeff: c, mono: t.mono.clone() });
        }
    }
    out
}
