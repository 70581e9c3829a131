use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Exps = SmallVec<[u32; 8]>;

/// Exponent vector of a power product, one entry per ambient variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Exps,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial { exps: SmallVec::from_slice(exps) }
    }

    pub fn variable(nvars: usize, index: usize, power: u32) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = power;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = Exps::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(
                a.checked_add(*b)
                    .ok_or_else(|| Error::ExponentOverflow("monomial product".into()))?,
            );
        }
        Ok(Monomial { exps })
    }

    pub fn pow(&self, k: u64) -> Result<Monomial> {
        let mut exps = Exps::with_capacity(self.exps.len());
        for &a in &self.exps {
            let e = (a as u64)
                .checked_mul(k)
                .filter(|&e| e <= u32::MAX as u64)
                .ok_or_else(|| Error::ExponentOverflow(format!("monomial power {k}")))?;
            exps.push(e as u32);
        }
        Ok(Monomial { exps })
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Support is contained in the variables flagged by `allowed`.
    pub fn supported_in(&self, allowed: &[bool]) -> bool {
        self.exps.iter().zip(allowed).all(|(e, ok)| *e == 0 || *ok)
    }

    /// Index of the single variable of a pure power `x_i^k`, `k > 0`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub(crate) fn extended(&self, extra: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat_n(0, extra));
        Monomial { exps }
    }

    pub(crate) fn truncated(&self, n: usize) -> Monomial {
        Monomial { exps: SmallVec::from_slice(&self.exps[..n]) }
    }

    pub(crate) fn exps_mut(&mut self) -> &mut Exps {
        &mut self.exps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    #[default]
    Grevlex,
}

impl std::fmt::Display for OrderKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderKind::Lex => write!(f, "lex"),
            OrderKind::Grevlex => write!(f, "grevlex"),
        }
    }
}

/// Monomial order with variable priority equal to declaration order.
///
/// `elim_from = Some(k)` turns it into an elimination order for the trailing
/// variables `k..n`: total degree in that block is compared first, ties are
/// broken by `kind` over all variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub elim_from: Option<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind) -> Self {
        MonomialOrder { kind, elim_from: None }
    }

    pub fn eliminating(kind: OrderKind, from: usize) -> Self {
        MonomialOrder { kind, elim_from: Some(from) }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if let Some(k) = self.elim_from {
            let da: u64 = a.exps[k..].iter().map(|&e| e as u64).sum();
            let db: u64 = b.exps[k..].iter().map(|&e| e as u64).sum();
            match da.cmp(&db) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match self.kind {
            OrderKind::Lex => a.exps.cmp(&b.exps),
            OrderKind::Grevlex => match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {
                    for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                        match x.cmp(y) {
                            Ordering::Equal => continue,
                            o => return o.reverse(),
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            },
        }
    }

    /// Sort key whose lexicographic order agrees with `cmp`.
    pub(crate) fn key(&self, m: &Monomial) -> OrderKey {
        let mut k = OrderKey::new();
        if let Some(from) = self.elim_from {
            k.push(m.exps[from..].iter().map(|&e| e as u64).sum());
        }
        match self.kind {
            OrderKind::Lex => k.extend(m.exps.iter().map(|&e| e as u64)),
            OrderKind::Grevlex => {
                k.push(m.degree());
                k.extend(m.exps.iter().rev().map(|&e| u64::MAX - e as u64));
            }
        }
        k
    }

    pub(crate) fn monomial_from_key(&self, key: &OrderKey) -> Monomial {
        let body = if self.elim_from.is_some() { &key[1..] } else { &key[..] };
        match self.kind {
            OrderKind::Lex => Monomial { exps: body.iter().map(|&e| e as u32).collect() },
            OrderKind::Grevlex => Monomial {
                exps: body[1..].iter().rev().map(|&e| (u64::MAX - e) as u32).collect(),
            },
        }
    }
}

pub(crate) type OrderKey = SmallVec<[u64; 10]>;
