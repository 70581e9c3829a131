use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::ring::is_power_of;

/// `q = p^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FrobeniusExponent {
    pub e: u32,
    pub q: u64,
}

impl FrobeniusExponent {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| Error::ExponentOverflow(format!("{p}^{e} does not fit monomial exponents")))?;
        Ok(FrobeniusExponent { e, q })
    }

    pub fn from_q(p: u64, q: u64) -> Result<Self> {
        if !is_power_of(q, p) {
            return Err(Error::NotFrobeniusPower { q, p });
        }
        let mut e = 0;
        let mut x = q;
        while x > 1 {
            x /= p;
            e += 1;
        }
        FrobeniusExponent::new(p, e)
    }
}

/// `I^[q]`, generated by the `q`-th powers of the given generators.
///
/// Over a polynomial ring the `q`-th powers of the reduced Gröbner basis of
/// `I` are the reduced Gröbner basis of `I^[q]`: Frobenius is additive, so
/// S-polynomials and their standard representations are raised to the `q`-th
/// power along with the basis.
pub fn frobenius_power(i: &Ideal, q: FrobeniusExponent) -> Result<Ideal> {
    let ring = i.ring();
    let gens = i.gens().iter().map(|g| ring.frobenius_pow(g, q.q)).collect::<Result<Vec<_>>>()?;
    if ring.is_polynomial_ring() {
        let gb = i.groebner()?.iter().map(|g| ring.frobenius_pow(g, q.q)).collect::<Result<Vec<_>>>()?;
        return Ok(Ideal::with_groebner(ring, gens, gb));
    }
    Ideal::new(ring, gens)
}

/// `I^[p^e]` for `e = 0..=emax`; entry `e` is `(q, I^[q])`.
pub(crate) fn ladder(i: &Ideal, emax: u32) -> Result<Vec<(u64, Ideal)>> {
    let p = i.ring().characteristic();
    (0..=emax)
        .map(|e| {
            let q = FrobeniusExponent::new(p, e)?;
            Ok((q.q, frobenius_power(i, q)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn bracket_power_examples() {
        let r = Ring::polynomial(3, &["x", "y"]).unwrap();
        let i = Ideal::parse(&r, "(x, y^2)").unwrap();
        let q = FrobeniusExponent::new(3, 1).unwrap();
        let iq = frobenius_power(&i, q).unwrap();
        assert!(iq.same_ideal(&Ideal::parse(&r, "(x^3, y^6)").unwrap()).unwrap());
        assert!(frobenius_power(&Ideal::zero(&r), q).unwrap().is_zero_ideal().unwrap());
    }

    #[test]
    fn generating_set_independence() {
        let r = Ring::polynomial(2, &["x", "y"]).unwrap();
        let q = FrobeniusExponent::new(2, 2).unwrap();
        let a = frobenius_power(&Ideal::parse(&r, "(x+y, y)").unwrap(), q).unwrap();
        let b = frobenius_power(&Ideal::parse(&r, "(x, y)").unwrap(), q).unwrap();
        assert_eq!(a.groebner().unwrap(), b.groebner().unwrap());
    }

    #[test]
    fn powered_basis_matches_buchberger() {
        let r = Ring::polynomial(3, &["x", "y", "z"]).unwrap();
        let i = Ideal::parse(&r, "(x^2 + y*z, x*y - z^2, y^3 + x)").unwrap();
        for e in 1..=2 {
            let q = FrobeniusExponent::new(3, e).unwrap();
            let fast = frobenius_power(&i, q).unwrap();
            let gens = i.gens().iter().map(|g| r.frobenius_pow(g, q.q).unwrap()).collect();
            let slow = Ideal::new(&r, gens).unwrap();
            assert_eq!(fast.groebner().unwrap(), slow.groebner().unwrap());
        }
    }

    #[test]
    fn exponent_validation() {
        assert!(FrobeniusExponent::from_q(3, 6).is_err());
        assert_eq!(FrobeniusExponent::from_q(3, 27).unwrap().e, 3);
        assert!(FrobeniusExponent::new(65537, 3).is_err());
    }
}
