use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{is_m_primary, standard_monomials, Ideal, StandardMonomials};

use super::strategy::TestElementStrategy;
use super::verdict::{ClosureContext, ClosureVerdict, Verdict};

/// One standard-monomial representative of `A/I` and its verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CandidateEntry {
    pub element: String,
    #[serde(flatten)]
    pub verdict: ClosureVerdict,
}

/// `I` plus every representative whose verdict indicates closure membership.
#[derive(Debug, Clone)]
pub struct ClosureCandidate {
    pub ideal: Ideal,
    pub candidate: Ideal,
    /// `I` plus the representatives with a Frobenius-closure witness.
    pub frobenius_part: Ideal,
    pub entries: Vec<CandidateEntry>,
    pub test_element: String,
    pub emax: u32,
}

impl ClosureCandidate {
    /// No verdict rests on an unproved test element.
    pub fn unconditional(&self) -> bool {
        self.entries.iter().all(|e| e.verdict.unconditional)
    }

    /// Representatives that landed in the candidate.
    pub fn members(&self) -> impl Iterator<Item = &CandidateEntry> {
        self.entries.iter().filter(|e| e.verdict.indicates_membership())
    }

    pub fn is_closed(&self) -> Result<bool> {
        self.candidate.same_ideal(&self.ideal)
    }
}

/// Candidate for `I*` from verdicts on a monomial basis of `A/I`.
pub fn tight_closure_candidate(i: &Ideal, strategy: &TestElementStrategy, emax: u32) -> Result<ClosureCandidate> {
    let ring = i.ring();
    if !is_m_primary(i)? {
        return Err(Error::NotMPrimary);
    }
    let te = strategy.resolve(ring)?;
    let reps = match standard_monomials(i, ring.limits().basis_cap)? {
        StandardMonomials::Finite(v) => v,
        StandardMonomials::Infinite => return Err(Error::NotMPrimary),
    };
    let ctx = ClosureContext::new(i, emax)?;
    let verdicts: Vec<ClosureVerdict> = reps
        .par_iter()
        .map(|m| ctx.tight_closure(&ring.monomial(m.clone()), &te, None))
        .collect::<Result<_>>()?;
    let mut cand_gens = i.gens().to_vec();
    let mut frob_gens = i.gens().to_vec();
    let mut entries = Vec::with_capacity(reps.len());
    for (m, verdict) in reps.into_iter().zip(verdicts) {
        let u = ring.monomial(m);
        if verdict.indicates_membership() {
            cand_gens.push(u.clone());
        }
        if matches!(verdict.verdict, Verdict::InFrobeniusClosure { .. }) {
            frob_gens.push(u.clone());
        }
        entries.push(CandidateEntry { element: ring.display(&u), verdict });
    }
    Ok(ClosureCandidate {
        ideal: i.clone(),
        candidate: Ideal::new(ring, cand_gens)?,
        frobenius_part: Ideal::new(ring, frob_gens)?,
        entries,
        test_element: format!("({})^{}", te.c, te.power),
        emax,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn fermat_two_gains_z_squared_by_frobenius() {
        let r = Ring::parse("GF(2)[z,x,y]/(x^3+y^3+z^3)").unwrap();
        let i = Ideal::parse(&r, "(x, y)").unwrap();
        let c = tight_closure_candidate(&i, &TestElementStrategy::explicit(r.parse_poly("z").unwrap(), 1), 3).unwrap();
        assert!(c.candidate.same_ideal(&Ideal::parse(&r, "(x, y, z^2)").unwrap()).unwrap());
        let z2 = c.entries.iter().find(|e| e.element == "z^2").unwrap();
        assert_eq!(z2.verdict.verdict, Verdict::InFrobeniusClosure { q: 2 });
        assert!(c.frobenius_part.same_ideal(&c.candidate).unwrap());
    }

    #[test]
    fn regular_ring_candidate_is_the_ideal() {
        let r = Ring::polynomial(3, &["x", "y"]).unwrap();
        let i = Ideal::parse(&r, "(x^2, x*y, y^3)").unwrap();
        let c = tight_closure_candidate(&i, &TestElementStrategy::Unit, 2).unwrap();
        assert!(c.is_closed().unwrap());
        assert!(c.unconditional());
        assert_eq!(c.entries.len(), 4);
    }

    #[test]
    fn requires_m_primary() {
        let r = Ring::polynomial(3, &["x", "y"]).unwrap();
        let i = Ideal::parse(&r, "(x)").unwrap();
        assert!(matches!(tight_closure_candidate(&i, &TestElementStrategy::Unit, 1), Err(Error::NotMPrimary)));
    }
}
