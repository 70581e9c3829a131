use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::Ring;

use super::buchberger::groebner_basis;
use super::reduce::reduce_full;

struct IdealData {
    ring: Ring,
    gens: Vec<Poly>,
    gb: OnceLock<Result<Arc<[Poly]>>>,
}

/// An ideal of a presented ring, given by generators.
///
/// The reduced Gröbner basis of `gens + relations` is computed on first use
/// and shared between clones. Concurrent callers block on a single computation.
#[derive(Clone)]
pub struct Ideal(Arc<IdealData>);

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal{}", self.display())
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            ring.check_member(g)?;
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal(Arc::new(IdealData { ring: ring.clone(), gens, gb: OnceLock::new() })))
    }

    /// An ideal whose reduced Gröbner basis is already known.
    pub(crate) fn with_groebner(ring: &Ring, gens: Vec<Poly>, gb: Vec<Poly>) -> Ideal {
        let cell = OnceLock::new();
        let _ = cell.set(Ok(Arc::from(gb)));
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal(Arc::new(IdealData { ring: ring.clone(), gens, gb: cell }))
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Ideal> {
        Ideal::new(ring, ring.parse_generators(text)?)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new()).expect("empty generator list")
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![ring.one()]).expect("constant generator")
    }

    /// The homogeneous maximal ideal generated by all variables.
    pub fn maximal(ring: &Ring) -> Ideal {
        Ideal::new(ring, (0..ring.nvars()).map(|i| ring.var(i)).collect()).expect("variables")
    }

    /// The ideal generated by the relations of the presentation, i.e. zero in `A`.
    pub(crate) fn relations_ideal(ring: &Ring) -> Ideal {
        Ideal::zero(ring)
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.0.gens
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.0.gens.iter().map(|g| self.0.ring.display(g)).collect();
        format!("({})", parts.join(", "))
    }

    pub fn gens_text(&self) -> Vec<String> {
        self.0.gens.iter().map(|g| self.0.ring.display(g)).collect()
    }

    /// Reduced Gröbner basis of `gens + relations` in the ambient polynomial ring.
    pub fn groebner(&self) -> Result<&[Poly]> {
        let res = self.0.gb.get_or_init(|| {
            let mut all = self.0.gens.clone();
            all.extend(self.0.ring.relations().iter().cloned());
            groebner_basis(&self.0.ring, &all).map(Arc::from)
        });
        match res {
            Ok(gb) => Ok(gb),
            Err(e) => Err(e.clone()),
        }
    }

    pub fn groebner_text(&self) -> Result<Vec<String>> {
        Ok(self.groebner()?.iter().map(|g| self.0.ring.display(g)).collect())
    }

    pub fn lead_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(self.groebner()?.iter().map(|g| g.terms()[0].mono.clone()).collect())
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        self.0.ring.check_member(f)?;
        Ok(reduce_full(&self.0.ring, f, self.groebner()?))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.iter().any(Poly::is_constant))
    }

    /// True when every generator vanishes in `A`.
    pub fn is_zero_ideal(&self) -> Result<bool> {
        let relations = Ideal::relations_ideal(&self.0.ring);
        for g in self.gens() {
            if !relations.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub(crate) fn check_same_ring(&self, other: &Ideal) -> Result<()> {
        if self.0.ring != other.0.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.0.ring.describe(), other.0.ring.describe())));
        }
        Ok(())
    }

    /// `other ⊆ self` in `A`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_same_ring(other)?;
        for g in other.gens() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals of `A`, decided by comparing reduced Gröbner bases.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_same_ring(other)?;
        Ok(self.groebner()? == other.groebner()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat(p: u64) -> Ring {
        Ring::parse(&format!("GF({p})[x,y,z]/(x^3+y^3+z^3)")).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let r = fermat(7);
        let i = Ideal::parse(&r, "(x, y)").unwrap();
        let z2 = r.parse_poly("z^2").unwrap();
        assert_eq!(i.normal_form(&z2).unwrap(), z2);
        assert!(i.contains(&r.parse_poly("x").unwrap()).unwrap());

        let r2 = fermat(2);
        let i2 = Ideal::parse(&r2, "(x^2, y^2)").unwrap();
        assert!(i2.normal_form(&r2.parse_poly("z^4").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn gb_is_shared_between_clones() {
        let r = fermat(7);
        let i = Ideal::parse(&r, "(x, y)").unwrap();
        let j = i.clone();
        let a = i.groebner().unwrap().as_ptr();
        let b = j.groebner().unwrap().as_ptr();
        assert_eq!(a, b);
    }

    #[test]
    fn mismatch_detected() {
        let a = Ideal::parse(&fermat(7), "(x)").unwrap();
        let b = Ideal::parse(&fermat(2), "(x)").unwrap();
        assert!(matches!(a.same_ideal(&b), Err(Error::RingMismatch(_))));
    }
}
