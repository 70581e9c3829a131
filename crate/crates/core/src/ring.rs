use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder, OrderKind};
use crate::parse;
use crate::poly::{merge_terms, Poly, Term};

/// Serializable description of `F_p[vars]/(relations)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingPresentation {
    pub p: u64,
    pub vars: Vec<String>,
    #[serde(default)]
    pub order: OrderKind,
    #[serde(default)]
    pub relations: Vec<String>,
}

impl RingPresentation {
    pub fn parse(text: &str) -> Result<Self> {
        parse::parse_ring_text(text)
    }
}

/// Resource caps applied to Gröbner and basis computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Allowed S-pair degree growth above the largest input degree `d`; the
    /// effective growth is `max(degree_cap, d)`.
    pub degree_cap: u64,
    /// Largest standard-monomial basis that will be enumerated.
    pub basis_cap: usize,
}

pub const DEFAULT_DEGREE_CAP: u64 = 64;
pub const DEFAULT_BASIS_CAP: usize = 2_000_000;

impl Default for Limits {
    fn default() -> Self {
        Limits { degree_cap: DEFAULT_DEGREE_CAP, basis_cap: DEFAULT_BASIS_CAP }
    }
}

impl Limits {
    /// Applies an override in the form `N` (basis cap) or `basis=N,degree=M`.
    pub fn with_override(mut self, spec: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("cannot parse resource cap `{spec}`"));
        let spec = spec.trim();
        if let Ok(n) = spec.parse::<usize>() {
            self.basis_cap = n;
            return Ok(self);
        }
        for part in spec.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            match k.trim() {
                "basis" => self.basis_cap = v.trim().parse().map_err(|_| bad())?,
                "degree" => self.degree_cap = v.trim().parse().map_err(|_| bad())?,
                _ => return Err(bad()),
            }
        }
        Ok(self)
    }

    /// Defaults, overridden by `FROBPOW_CAP` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var("FROBPOW_CAP") {
            Ok(v) => Limits::default().with_override(&v),
            Err(_) => Ok(Limits::default()),
        }
    }
}

#[derive(Debug)]
struct RingData {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
    relations: Vec<Poly>,
    limits: Limits,
}

/// A presented ring `A = F_p[x_1..x_n]/J`. Cheap to clone.
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.vars == other.0.vars
                && self.0.order == other.0.order
                && self.0.relations == other.0.relations)
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new(p: u64, vars: &[&str], order: OrderKind, relations: &[&str]) -> Result<Ring> {
        Ring::from_presentation(&RingPresentation {
            p,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            order,
            relations: relations.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn polynomial(p: u64, vars: &[&str]) -> Result<Ring> {
        Ring::new(p, vars, OrderKind::Grevlex, &[])
    }

    pub fn parse(text: &str) -> Result<Ring> {
        Ring::from_presentation(&RingPresentation::parse(text)?)
    }

    pub fn from_presentation(pres: &RingPresentation) -> Result<Ring> {
        Ring::with_limits(pres, Limits::default())
    }

    pub fn with_limits(pres: &RingPresentation, limits: Limits) -> Result<Ring> {
        let field = PrimeField::new(pres.p)?;
        let mut seen = std::collections::HashSet::new();
        for v in &pres.vars {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Invalid(format!("bad variable name `{v}`")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        if pres.vars.is_empty() {
            return Err(Error::Invalid("a ring needs at least one variable".into()));
        }
        let skeleton = Ring(Arc::new(RingData {
            field,
            vars: pres.vars.clone(),
            order: MonomialOrder::new(pres.order),
            relations: Vec::new(),
            limits,
        }));
        let mut relations = Vec::new();
        for r in &pres.relations {
            let f = skeleton.parse_poly(r)?;
            if f.is_zero() {
                return Err(Error::Invalid(format!("relation `{r}` is zero")));
            }
            relations.push(f);
        }
        Ok(skeleton.with_relations(relations))
    }

    /// Same ambient polynomial ring with a different relation list.
    pub(crate) fn with_relations(&self, relations: Vec<Poly>) -> Ring {
        Ring(Arc::new(RingData {
            field: self.0.field,
            vars: self.0.vars.clone(),
            order: self.0.order,
            relations,
            limits: self.0.limits,
        }))
    }

    /// The ambient polynomial ring `F_p[x]` (no relations).
    pub fn ambient(&self) -> Ring {
        if self.0.relations.is_empty() {
            self.clone()
        } else {
            self.with_relations(Vec::new())
        }
    }

    pub fn with_new_limits(&self, limits: Limits) -> Ring {
        Ring(Arc::new(RingData {
            field: self.0.field,
            vars: self.0.vars.clone(),
            order: self.0.order,
            relations: self.0.relations.clone(),
            limits,
        }))
    }

    /// Appends variables (no relations added) under an order that eliminates them.
    pub(crate) fn eliminating_extension(&self, names: &[&str]) -> Ring {
        let n = self.nvars();
        let mut vars = self.0.vars.clone();
        vars.extend(names.iter().map(|s| format!("_{s}")));
        Ring(Arc::new(RingData {
            field: self.0.field,
            vars,
            order: MonomialOrder::eliminating(self.0.order.kind, n),
            relations: Vec::new(),
            limits: self.0.limits,
        }))
    }

    pub fn field(&self) -> &PrimeField {
        &self.0.field
    }

    pub fn characteristic(&self) -> u64 {
        self.0.field.characteristic() as u64
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn relations(&self) -> &[Poly] {
        &self.0.relations
    }

    pub fn limits(&self) -> Limits {
        self.0.limits
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.0.relations.is_empty()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn presentation(&self) -> RingPresentation {
        RingPresentation {
            p: self.characteristic(),
            vars: self.0.vars.clone(),
            order: self.0.order.kind,
            relations: self.0.relations.iter().map(|f| self.display(f)).collect(),
        }
    }

    pub fn describe(&self) -> String {
        let mut s = format!("GF({})[{}]", self.characteristic(), self.0.vars.join(","));
        if !self.0.relations.is_empty() {
            let rels: Vec<String> = self.0.relations.iter().map(|f| self.display(f)).collect();
            write!(s, "/({})", rels.join(", ")).unwrap();
        }
        if self.0.order.kind != OrderKind::Grevlex {
            write!(s, ":{}", self.0.order.kind).unwrap();
        }
        s
    }

    // ----- construction -----

    pub fn zero(&self) -> Poly {
        Poly::zero()
    }

    pub fn one(&self) -> Poly {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> Poly {
        let c = self.0.field.from_i64(c);
        if c == 0 {
            Poly::zero()
        } else {
            Poly::from_sorted(vec![Term { coeff: c, mono: Monomial::one(self.nvars()) }])
        }
    }

    pub fn var(&self, index: usize) -> Poly {
        self.monomial(Monomial::variable(self.nvars(), index, 1))
    }

    pub fn monomial(&self, mono: Monomial) -> Poly {
        Poly::from_sorted(vec![Term { coeff: 1, mono }])
    }

    pub fn term(&self, coeff: u32, mono: Monomial) -> Poly {
        let c = coeff % self.0.field.characteristic();
        if c == 0 {
            Poly::zero()
        } else {
            Poly::from_sorted(vec![Term { coeff: c, mono }])
        }
    }

    /// Sorts and combines arbitrary terms into canonical form.
    pub fn from_terms(&self, terms: Vec<Term>) -> Poly {
        let mut acc: BTreeMap<crate::monomial::OrderKey, u32> = BTreeMap::new();
        let order = self.0.order;
        for t in terms {
            let e = acc.entry(order.key(&t.mono)).or_insert(0);
            *e = self.0.field.add(*e, t.coeff);
        }
        Poly::from_sorted(
            acc.into_iter()
                .rev()
                .filter(|(_, c)| *c != 0)
                .map(|(k, coeff)| Term { coeff, mono: order.monomial_from_key(&k) })
                .collect(),
        )
    }

    pub fn parse_poly(&self, text: &str) -> Result<Poly> {
        let terms = parse::parse_terms(text, &self.0.vars, &self.0.field)?;
        Ok(self.from_terms(terms))
    }

    pub fn parse_generators(&self, text: &str) -> Result<Vec<Poly>> {
        parse::parse_generator_list(text, &self.0.vars, &self.0.field)
            .map(|gens| gens.into_iter().map(|t| self.from_terms(t)).collect())
    }

    pub fn display(&self, f: &Poly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, t) in f.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let mut factors = Vec::new();
            if t.coeff != 1 || t.mono.is_one() {
                factors.push(t.coeff.to_string());
            }
            for (v, &e) in self.0.vars.iter().zip(t.mono.exponents()) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }

    /// Checks that every monomial of `f` has this ring's variable count.
    pub fn check_member(&self, f: &Poly) -> Result<()> {
        match f.terms.iter().find(|t| t.mono.nvars() != self.nvars()) {
            Some(t) => Err(Error::RingMismatch(format!(
                "polynomial has {} variables, ring has {}",
                t.mono.nvars(),
                self.nvars()
            ))),
            None => Ok(()),
        }
    }

    // ----- arithmetic in the ambient polynomial ring -----

    pub fn add(&self, f: &Poly, g: &Poly) -> Poly {
        Poly::from_sorted(merge_terms(&f.terms, &g.terms, 1, &self.0.field, |a, b| self.0.order.cmp(a, b)))
    }

    pub fn sub(&self, f: &Poly, g: &Poly) -> Poly {
        let m1 = self.0.field.neg(1);
        Poly::from_sorted(merge_terms(&f.terms, &g.terms, m1, &self.0.field, |a, b| self.0.order.cmp(a, b)))
    }

    pub fn neg(&self, f: &Poly) -> Poly {
        self.scale(f, self.0.field.neg(1))
    }

    pub fn scale(&self, f: &Poly, c: u32) -> Poly {
        let c = c % self.0.field.characteristic();
        if c == 0 {
            return Poly::zero();
        }
        Poly::from_sorted(
            f.terms
                .iter()
                .map(|t| Term { coeff: self.0.field.mul(t.coeff, c), mono: t.mono.clone() })
                .collect(),
        )
    }

    /// `c * m * f`; multiplication by a monomial preserves term order.
    pub fn mul_term(&self, f: &Poly, c: u32, m: &Monomial) -> Poly {
        let c = c % self.0.field.characteristic();
        if c == 0 {
            return Poly::zero();
        }
        Poly::from_sorted(
            f.terms
                .iter()
                .map(|t| Term { coeff: self.0.field.mul(t.coeff, c), mono: t.mono.mul(m) })
                .collect(),
        )
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Poly {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        let (small, big) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        if small.len() == 1 {
            let t = &small.terms[0];
            return self.mul_term(big, t.coeff, &t.mono);
        }
        let mut terms = Vec::with_capacity(f.len() * g.len());
        for a in &f.terms {
            for b in &g.terms {
                terms.push(Term { coeff: self.0.field.mul(a.coeff, b.coeff), mono: a.mono.mul(&b.mono) });
            }
        }
        self.from_terms(terms)
    }

    pub fn pow(&self, f: &Poly, mut k: u64) -> Poly {
        let mut acc = self.one();
        let mut base = f.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `f^q` for `q = p^e`, computed term-wise as `sum c_i^q m_i^q`.
    pub fn frobenius_pow(&self, f: &Poly, q: u64) -> Result<Poly> {
        let p = self.characteristic();
        if !is_power_of(q, p) {
            return Err(Error::NotFrobeniusPower { q, p });
        }
        let terms = f
            .terms
            .iter()
            .map(|t| {
                // c^p = c in F_p
                Ok(Term { coeff: t.coeff, mono: t.mono.pow(q)? })
            })
            .collect::<Result<Vec<_>>>()?;
        // m -> m^q preserves any monomial order
        Ok(Poly::from_sorted(terms))
    }

    pub fn make_monic(&self, f: &Poly) -> Poly {
        match f.lead() {
            None => Poly::zero(),
            Some(t) if t.coeff == 1 => f.clone(),
            Some(t) => self.scale(f, self.0.field.inv(t.coeff)),
        }
    }

    pub fn derivative(&self, f: &Poly, var: usize) -> Poly {
        let terms = f
            .terms
            .iter()
            .filter(|t| t.mono.exponents()[var] > 0)
            .filter_map(|t| {
                let e = t.mono.exponents()[var];
                let c = self.0.field.mul(t.coeff, e % self.0.field.characteristic());
                (c != 0).then(|| {
                    let mut m = t.mono.clone();
                    m.exps_mut()[var] -= 1;
                    Term { coeff: c, mono: m }
                })
            })
            .collect();
        self.from_terms(terms)
    }

    /// Evaluates the substitution `x_i -> 0` for flagged variables.
    pub fn kill_vars(&self, f: &Poly, killed: &[bool]) -> Poly {
        let keep: Vec<bool> = killed.iter().map(|k| !k).collect();
        Poly::from_sorted(f.terms.iter().filter(|t| t.mono.supported_in(&keep)).cloned().collect())
    }

    /// Re-sorts a polynomial written in another ring's variables via an index map
    /// (`map[i]` = index in `self` of the source variable `i`).
    pub fn transport(&self, f: &Poly, map: &[usize]) -> Poly {
        let terms = f
            .terms
            .iter()
            .map(|t| {
                let mut m = Monomial::one(self.nvars());
                for (i, &e) in t.mono.exponents().iter().enumerate() {
                    m.exps_mut()[map[i]] += e;
                }
                Term { coeff: t.coeff, mono: m }
            })
            .collect();
        self.from_terms(terms)
    }

    pub(crate) fn extend_poly(&self, f: &Poly, extra: usize) -> Poly {
        // trailing zero exponents keep the relative order of existing terms
        Poly::from_sorted(
            f.terms.iter().map(|t| Term { coeff: t.coeff, mono: t.mono.extended(extra) }).collect(),
        )
    }
}

pub fn is_power_of(q: u64, p: u64) -> bool {
    let mut x = q;
    if x == 0 {
        return false;
    }
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let r = Ring::polynomial(2, &["x", "y", "z"]).unwrap();
        let f = r.parse_poly("x^3+y^3+z^3").unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.terms().iter().all(|t| t.coeff == 1));

        let r7 = Ring::polynomial(7, &["x", "y"]).unwrap();
        assert!(r7.parse_poly("7*x").unwrap().is_zero());

        let r3 = Ring::polynomial(3, &["x", "y"]).unwrap();
        assert_eq!(r3.parse_poly("x*y - y*x + 2").unwrap(), r3.constant(2));
    }

    #[test]
    fn add_mul_examples() {
        let r = Ring::polynomial(3, &["x", "y"]).unwrap();
        let p = |s: &str| r.parse_poly(s).unwrap();
        assert_eq!(r.add(&p("x+y"), &p("x+2*y")), p("2*x"));
        assert_eq!(r.mul(&p("x+y"), &p("x-y")), p("x^2-y^2"));
        assert!(r.mul(&p("x^2+y"), &r.zero()).is_zero());
    }

    #[test]
    fn frobenius_examples() {
        let r2 = Ring::polynomial(2, &["x", "y"]).unwrap();
        assert_eq!(r2.frobenius_pow(&r2.parse_poly("x+y").unwrap(), 2).unwrap(), r2.parse_poly("x^2+y^2").unwrap());
        let r3 = Ring::polynomial(3, &["x", "y"]).unwrap();
        assert_eq!(r3.frobenius_pow(&r3.parse_poly("x+y^2").unwrap(), 3).unwrap(), r3.parse_poly("x^3+y^6").unwrap());
        assert!(matches!(r3.frobenius_pow(&r3.one(), 6), Err(Error::NotFrobeniusPower { .. })));
    }

    #[test]
    fn relations_are_validated() {
        assert!(Ring::new(3, &["x"], OrderKind::Grevlex, &["3*x"]).is_err());
        assert!(Ring::new(3, &["x", "x"], OrderKind::Grevlex, &[]).is_err());
        assert!(matches!(Ring::new(3, &["x"], OrderKind::Grevlex, &["y"]), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn limits_override() {
        let l = Limits::default().with_override("basis=10,degree=5").unwrap();
        assert_eq!((l.basis_cap, l.degree_cap), (10, 5));
        assert_eq!(Limits::default().with_override("77").unwrap().basis_cap, 77);
        assert!(Limits::default().with_override("nope").is_err());
    }

    #[test]
    fn display_then_parse() {
        let r = Ring::polynomial(5, &["x", "y", "z"]).unwrap();
        let f = r.parse_poly("3*x^2*y - z + 4").unwrap();
        assert_eq!(r.parse_poly(&r.display(&f)).unwrap(), f);
    }
}
