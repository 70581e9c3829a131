//! Closure membership verdicts.
//!
//! Membership in the Frobenius closure is only semi-decidable and membership
//! in the tight closure needs a certified test element and test exponent, so
//! the verdicts carry how strong the evidence is instead of a plain boolean.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::Poly;

use super::power::{ladder, FrobeniusExponent};
use super::strategy::{TestElement, TestElementStrategy};

/// Where a test exponent came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Polynomial ring with `c = 1` and `Q = 1`.
    RegularRing,
    UserAsserted,
}

/// `c`, `I`, `Q` such that `c u^q ∈ I^[q]` for some `q >= Q` forces `u ∈ I*`.
#[derive(Debug, Clone)]
pub struct TestExponentCertificate {
    pub c: Poly,
    pub ideal: Ideal,
    pub q: u64,
    pub provenance: Provenance,
}

impl TestExponentCertificate {
    pub fn regular(ideal: &Ideal) -> Result<Self> {
        let ring = ideal.ring();
        if !ring.is_polynomial_ring() {
            return Err(Error::InvalidStrategy("regular-ring certificate needs a polynomial ring".into()));
        }
        Ok(TestExponentCertificate { c: ring.one(), ideal: ideal.clone(), q: 1, provenance: Provenance::RegularRing })
    }

    fn validate(&self, ideal: &Ideal) -> Result<()> {
        if !self.ideal.same_ideal(ideal)? {
            return Err(Error::InvalidStrategy("certificate was issued for a different ideal".into()));
        }
        if self.provenance == Provenance::RegularRing
            && !(ideal.ring().is_polynomial_ring() && self.c == ideal.ring().one() && self.q == 1)
        {
            return Err(Error::InvalidStrategy("regular-ring certificate requires J = 0, c = 1, Q = 1".into()));
        }
        if self.q == 0 {
            return Err(Error::InvalidStrategy("test exponent must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub c: String,
    pub q: u64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    InIdeal,
    InFrobeniusClosure { q: u64 },
    CertifiedIn { q: u64, certificate: CertificateSummary },
    /// `c^N u^q ∈ I^[q]` for every `e <= emax`.
    EvidenceIn { emax: u32, c: String, power: u32 },
    /// `c^N u^q ∉ I^[q]` at `witness_q`; excludes `u` if `c^N` is a test element.
    ExcludedAssuming { c: String, power: u32, witness_q: u64 },
    /// No `q <= p^emax` with `u^q ∈ I^[q]`; not a proof of non-membership.
    NoFrobeniusWitness { emax: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvidenceRow {
    pub e: u32,
    pub q: u64,
    pub check: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureVerdict {
    #[serde(flatten)]
    pub verdict: Verdict,
    /// No unproved assumption (test element or test exponent) is involved.
    pub unconditional: bool,
    pub evidence: Vec<EvidenceRow>,
    pub notes: Vec<String>,
}

impl ClosureVerdict {
    fn new(verdict: Verdict, unconditional: bool, evidence: Vec<EvidenceRow>) -> Self {
        ClosureVerdict { verdict, unconditional, evidence, notes: Vec::new() }
    }

    /// InIdeal, InFrobeniusClosure, CertifiedIn or EvidenceIn.
    pub fn indicates_membership(&self) -> bool {
        matches!(
            self.verdict,
            Verdict::InIdeal | Verdict::InFrobeniusClosure { .. } | Verdict::CertifiedIn { .. } | Verdict::EvidenceIn { .. }
        )
    }

    /// Membership that does not rest on evidence alone.
    pub fn proves_membership(&self) -> bool {
        matches!(self.verdict, Verdict::InIdeal | Verdict::InFrobeniusClosure { .. } | Verdict::CertifiedIn { .. })
    }

    pub fn label(&self) -> String {
        match &self.verdict {
            Verdict::InIdeal => "InIdeal".into(),
            Verdict::InFrobeniusClosure { q } => format!("InFrobeniusClosure({q})"),
            Verdict::CertifiedIn { q, .. } => format!("CertifiedIn({q})"),
            Verdict::EvidenceIn { emax, c, power } => format!("EvidenceIn(emax={emax}, c=({c})^{power})"),
            Verdict::ExcludedAssuming { c, power, witness_q } => {
                let kind = if self.unconditional { "Excluded" } else { "ExcludedAssuming" };
                format!("{kind}(c=({c})^{power}, q={witness_q})")
            }
            Verdict::NoFrobeniusWitness { emax } => format!("NoFrobeniusWitness(emax={emax})"),
        }
    }
}

/// Shared state for repeated closure queries against one ideal.
pub(crate) struct ClosureContext {
    pub ideal: Ideal,
    /// `(q, I^[q])` for `e = 0..=emax`.
    pub powers: Vec<(u64, Ideal)>,
    pub emax: u32,
}

impl ClosureContext {
    pub fn new(ideal: &Ideal, emax: u32) -> Result<Self> {
        Ok(ClosureContext { ideal: ideal.clone(), powers: ladder(ideal, emax)?, emax })
    }

    /// `mult * u^q ∈ I^[q]` at level `e`.
    pub fn member_at(&self, e: u32, mult: &Poly, u: &Poly) -> Result<bool> {
        let ring = self.ideal.ring();
        let (q, iq) = &self.powers[e as usize];
        let uq = ring.frobenius_pow(u, *q)?;
        iq.contains(&ring.mul(mult, &uq))
    }

    fn frobenius_scan(&self, u: &Poly, rows: &mut Vec<EvidenceRow>) -> Result<Option<u64>> {
        let one = self.ideal.ring().one();
        for e in 1..=self.emax {
            let q = self.powers[e as usize].0;
            let hit = self.member_at(e, &one, u)?;
            rows.push(EvidenceRow { e, q, check: format!("u^{q} in I^[{q}]"), pass: hit });
            if hit {
                return Ok(Some(q));
            }
        }
        Ok(None)
    }

    pub fn frobenius_closure(&self, u: &Poly) -> Result<ClosureVerdict> {
        if self.ideal.contains(u)? {
            return Ok(ClosureVerdict::new(Verdict::InIdeal, true, Vec::new()));
        }
        let mut rows = Vec::new();
        Ok(match self.frobenius_scan(u, &mut rows)? {
            Some(q) => ClosureVerdict::new(Verdict::InFrobeniusClosure { q }, true, rows),
            None if self.ideal.ring().is_polynomial_ring() => {
                let mut v = ClosureVerdict::new(Verdict::NoFrobeniusWitness { emax: self.emax }, true, rows);
                v.notes.push("polynomial ring: Frobenius is flat, so I^F = I and u is not in I^F".into());
                v
            }
            None => ClosureVerdict::new(Verdict::NoFrobeniusWitness { emax: self.emax }, false, rows),
        })
    }

    pub fn tight_closure(
        &self,
        u: &Poly,
        te: &TestElement,
        cert: Option<&TestExponentCertificate>,
    ) -> Result<ClosureVerdict> {
        let ring = self.ideal.ring();
        if self.ideal.contains(u)? {
            return Ok(ClosureVerdict::new(Verdict::InIdeal, true, Vec::new()));
        }
        let mut rows = Vec::new();
        if let Some(q) = self.frobenius_scan(u, &mut rows)? {
            return Ok(ClosureVerdict::new(Verdict::InFrobeniusClosure { q }, true, rows));
        }
        if let Some(cert) = cert {
            cert.validate(&self.ideal)?;
            let p = ring.characteristic();
            let mut q = 1u64;
            while q < cert.q {
                q = q.checked_mul(p).ok_or_else(|| Error::ExponentOverflow("certificate exponent".into()))?;
            }
            let fq = FrobeniusExponent::from_q(p, q)?;
            let iq = super::power::frobenius_power(&self.ideal, fq)?;
            let hit = iq.contains(&ring.mul(&cert.c, &ring.frobenius_pow(u, q)?))?;
            rows.push(EvidenceRow { e: fq.e, q, check: format!("certificate c*u^{q} in I^[{q}]"), pass: hit });
            if hit {
                let summary = CertificateSummary { c: ring.display(&cert.c), q: cert.q, provenance: cert.provenance };
                let mut v = ClosureVerdict::new(
                    Verdict::CertifiedIn { q, certificate: summary },
                    cert.provenance == Provenance::RegularRing,
                    rows,
                );
                if cert.provenance == Provenance::UserAsserted {
                    v.notes.push("membership rests on the user-asserted test exponent".into());
                }
                return Ok(v);
            }
        }
        // a polynomial ring has I* = I, so c = 1 is a test element and exclusion is certain
        let (mult, c_text, power) = if te.regular {
            (ring.one(), "1".to_string(), 1)
        } else {
            (te.element.clone(), te.c.clone(), te.power)
        };
        for e in 1..=self.emax {
            let q = self.powers[e as usize].0;
            let hit = self.member_at(e, &mult, u)?;
            rows.push(EvidenceRow { e, q, check: format!("c^N*u^{q} in I^[{q}]"), pass: hit });
            if !hit {
                let mut v = ClosureVerdict::new(
                    Verdict::ExcludedAssuming { c: c_text, power, witness_q: q },
                    te.regular,
                    rows,
                );
                v.notes.push(if te.regular {
                    "polynomial ring: every ideal is tightly closed, exclusion is unconditional".into()
                } else {
                    "sound exclusion only if c^N is a test element".into()
                });
                return Ok(v);
            }
        }
        let mut v = ClosureVerdict::new(Verdict::EvidenceIn { emax: self.emax, c: c_text, power }, false, rows);
        v.notes.push("checked only for q <= p^emax".into());
        Ok(v)
    }
}

/// Least `q = p^e`, `1 <= e <= emax`, with `u^q ∈ I^[q]`.
pub fn frobenius_closure_test(u: &Poly, i: &Ideal, emax: u32) -> Result<ClosureVerdict> {
    i.ring().check_member(u)?;
    ClosureContext::new(i, emax)?.frobenius_closure(u)
}

/// Runs the verdict ladder: ideal membership, Frobenius closure, certificate,
/// then the `c^N u^q ∈ I^[q]` scan for `e = 1..=emax`.
pub fn tight_closure_test(
    u: &Poly,
    i: &Ideal,
    strategy: &TestElementStrategy,
    cert: Option<&TestExponentCertificate>,
    emax: u32,
) -> Result<ClosureVerdict> {
    i.ring().check_member(u)?;
    let te = strategy.resolve(i.ring())?;
    ClosureContext::new(i, emax)?.tight_closure(u, &te, cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn fermat(p: u64) -> Ring {
        Ring::parse(&format!("GF({p})[z,x,y]/(x^3+y^3+z^3)")).unwrap()
    }

    #[test]
    fn frobenius_closure_examples() {
        let r = fermat(2);
        let i = Ideal::parse(&r, "(x, y)").unwrap();
        let v = frobenius_closure_test(&r.parse_poly("z^2").unwrap(), &i, 3).unwrap();
        assert_eq!(v.verdict, Verdict::InFrobeniusClosure { q: 2 });
        let v = frobenius_closure_test(&r.parse_poly("x*z").unwrap(), &i, 3).unwrap();
        assert_eq!(v.verdict, Verdict::InIdeal);

        let r7 = fermat(7);
        let i7 = Ideal::parse(&r7, "(x, y)").unwrap();
        let v = frobenius_closure_test(&r7.parse_poly("z^2").unwrap(), &i7, 3).unwrap();
        assert_eq!(v.verdict, Verdict::NoFrobeniusWitness { emax: 3 });
        assert!(!v.unconditional);
        assert_eq!(v.evidence.iter().map(|r| r.q).collect::<Vec<_>>(), vec![7, 49, 343]);
    }

    #[test]
    fn regular_ring_exclusion_is_unconditional() {
        let r = Ring::polynomial(3, &["x", "y"]).unwrap();
        let i = Ideal::parse(&r, "(x^2, y^2)").unwrap();
        let v = tight_closure_test(&r.parse_poly("x*y").unwrap(), &i, &TestElementStrategy::Unit, None, 3).unwrap();
        assert!(matches!(v.verdict, Verdict::ExcludedAssuming { witness_q: 3, .. }));
        assert!(v.unconditional);
        let cert = TestExponentCertificate::regular(&i).unwrap();
        let v = tight_closure_test(&r.parse_poly("x*y").unwrap(), &i, &TestElementStrategy::Unit, Some(&cert), 2)
            .unwrap();
        assert!(v.unconditional && !v.indicates_membership());
    }

    #[test]
    fn certificate_for_other_ideal_is_rejected() {
        let r = Ring::polynomial(3, &["x", "y"]).unwrap();
        let i = Ideal::parse(&r, "(x^2, y^2)").unwrap();
        let other = TestExponentCertificate::regular(&Ideal::parse(&r, "(x, y)").unwrap()).unwrap();
        let res = tight_closure_test(&r.parse_poly("x*y").unwrap(), &i, &TestElementStrategy::Unit, Some(&other), 1);
        assert!(matches!(res, Err(Error::InvalidStrategy(_))));
    }

    #[test]
    fn user_certificate_yields_certified_membership() {
        let r = fermat(7);
        let i = Ideal::parse(&r, "(x, y)").unwrap();
        let z = r.parse_poly("z").unwrap();
        let cert = TestExponentCertificate { c: z.clone(), ideal: i.clone(), q: 7, provenance: Provenance::UserAsserted };
        let v = tight_closure_test(
            &r.parse_poly("z^2").unwrap(),
            &i,
            &TestElementStrategy::explicit(z, 1),
            Some(&cert),
            1,
        )
        .unwrap();
        assert!(matches!(v.verdict, Verdict::CertifiedIn { q: 7, .. }));
        assert!(!v.unconditional);
    }
}
