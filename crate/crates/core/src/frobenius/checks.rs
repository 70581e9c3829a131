use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{colon, is_m_primary, product, socle, standard_monomials, Ideal, StandardMonomials};
use crate::poly::Poly;
use crate::report::VerificationReport;
use crate::ring::Ring;

use super::candidate::tight_closure_candidate;
use super::strategy::TestElementStrategy;
use super::verdict::{ClosureContext, TestExponentCertificate, Verdict};

/// First index `i` with `((z_1..z_{i-1}) : z_i) != (z_1..z_{i-1})`, if any.
pub fn regular_sequence_failure(ring: &Ring, z: &[Poly]) -> Result<Option<usize>> {
    for i in 0..z.len() {
        let prefix = Ideal::new(ring, z[..i].to_vec())?;
        if prefix.contains(&z[i])? {
            return Ok(Some(i));
        }
        if !colon(&prefix, &z[i])?.same_ideal(&prefix)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn require_regular_sequence(ring: &Ring, z: &[Poly]) -> Result<Ideal> {
    let zi = Ideal::new(ring, z.to_vec())?;
    if let Some(i) = regular_sequence_failure(ring, z)? {
        return Err(Error::Hypothesis(format!("{} is not a regular sequence (fails at position {})", zi.display(), i + 1)));
    }
    if !is_m_primary(&zi)? {
        return Err(Error::Hypothesis(format!("{} is not a system of parameters", zi.display())));
    }
    Ok(zi)
}

/// `T I*cand = T I`.
pub fn strong_test_ideal_check(
    t: &Ideal,
    i: &Ideal,
    strategy: &TestElementStrategy,
    emax: u32,
) -> Result<VerificationReport> {
    t.check_same_ring(i)?;
    let mut rep = VerificationReport::new("strong-test-ideal");
    rep.param("T", t.display()).param("I", i.display()).param("emax", emax);
    let cand = tight_closure_candidate(i, strategy, emax)?;
    rep.param("I*cand", cand.candidate.display()).param("test_element", &cand.test_element);
    let lhs = product(t, &cand.candidate)?;
    let rhs = product(t, i)?;
    let eq = lhs.same_ideal(&rhs)?;
    rep.record("T*I*cand = T*I", gb_text(&lhs)?, gb_text(&rhs)?, eq);
    if !cand.unconditional() {
        rep.conditional = true;
        rep.note("I*cand rests on test-element evidence");
    }
    Ok(rep.finish())
}

pub(crate) fn gb_text(i: &Ideal) -> Result<String> {
    Ok(format!("({})", i.groebner_text()?.join(", ")))
}

/// No standard representative of `A/(z)` (nor a socle element) has a
/// Frobenius-closure witness with `q <= p^emax`.
pub fn f_injectivity_check(ring: &Ring, z: &[Poly], emax: u32) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("f-injective");
    let zi = Ideal::new(ring, z.to_vec())?;
    rep.param("ring", ring.describe()).param("z", zi.display()).param("emax", emax);
    let zi = match require_regular_sequence(ring, z) {
        Ok(zi) => zi,
        Err(Error::Hypothesis(why)) => return Ok(rep.precondition_failed(why)),
        Err(e) => return Err(e),
    };
    let mut elems: Vec<Poly> = match standard_monomials(&zi, ring.limits().basis_cap)? {
        StandardMonomials::Finite(v) => v.into_iter().map(|m| ring.monomial(m)).collect(),
        StandardMonomials::Infinite => return Err(Error::NotMPrimary),
    };
    let soc = socle(&zi)?;
    for s in &soc {
        if !elems.contains(s) {
            elems.push(s.clone());
        }
    }
    let ctx = ClosureContext::new(&zi, emax)?;
    let verdicts = elems.par_iter().map(|u| ctx.frobenius_closure(u)).collect::<Result<Vec<_>>>()?;
    for (u, v) in elems.iter().zip(&verdicts) {
        let witness = match v.verdict {
            Verdict::InFrobeniusClosure { q } => format!("({})^{q} in {}^[{q}]", ring.display(u), zi.display()),
            _ => "none".into(),
        };
        rep.record(format!("witness for {}", ring.display(u)), witness, "none", !v.indicates_membership());
    }
    if soc.len() == 1 {
        rep.note("socle is one-dimensional, so the socle check covers all of (z)^F/(z)");
    }
    let witnessed = verdicts.iter().any(|v| v.indicates_membership());
    if !ring.is_polynomial_ring() && !witnessed {
        rep.conditional = true;
        rep.note(format!("no Frobenius-closure witness up to q = p^{emax}; not a proof"));
    }
    Ok(rep.finish())
}

/// `(z)*cand = (z)`.
pub fn f_rationality_check(
    ring: &Ring,
    z: &[Poly],
    strategy: &TestElementStrategy,
    emax: u32,
) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("f-rational");
    let zi = Ideal::new(ring, z.to_vec())?;
    rep.param("ring", ring.describe()).param("z", zi.display()).param("emax", emax);
    let zi = match require_regular_sequence(ring, z) {
        Ok(zi) => zi,
        Err(Error::Hypothesis(why)) => return Ok(rep.precondition_failed(why)),
        Err(e) => return Err(e),
    };
    let cand = tight_closure_candidate(&zi, strategy, emax)?;
    rep.param("test_element", &cand.test_element);
    for e in cand.members() {
        if matches!(e.verdict.verdict, Verdict::InIdeal) {
            continue;
        }
        let kind = if e.verdict.proves_membership() { "counterexample" } else { "evidence against" };
        rep.record(format!("{} outside (z)", e.element), e.verdict.label(), kind, false);
    }
    let closed = cand.is_closed()?;
    rep.record("(z)*cand = (z)", cand.candidate.display(), zi.display(), closed);
    if !cand.unconditional() {
        rep.conditional = true;
        rep.note("exclusions assume the chosen element is a test element");
    }
    Ok(rep.finish())
}

/// Empirical test-exponent bound for `(c, I)`.
#[derive(Debug, Clone, Serialize)]
pub struct TestExponentSearch {
    /// Representatives outside `I*cand`.
    pub excluded: Vec<String>,
    /// Largest `q` at which some excluded `u` has `c u^q ∈ I^[q]`.
    pub largest_q: Option<u64>,
    /// `p * largest_q`, or 1 when nothing passes.
    pub bound: u64,
    /// The bound is a proved value (regular ring with `c = 1`).
    pub certified: bool,
    #[serde(skip)]
    pub certificate: Option<TestExponentCertificate>,
}

/// Searches `e = 0..=emax` for excluded representatives `u` with `c u^q ∈ I^[q]`.
pub fn test_exponent_search(
    c: &Poly,
    i: &Ideal,
    strategy: &TestElementStrategy,
    emax: u32,
) -> Result<TestExponentSearch> {
    let ring = i.ring();
    ring.check_member(c)?;
    let cand = tight_closure_candidate(i, strategy, emax)?;
    let excluded: Vec<Poly> = cand
        .entries
        .iter()
        .filter(|e| !e.verdict.indicates_membership())
        .map(|e| ring.parse_poly(&e.element))
        .collect::<Result<_>>()?;
    let ctx = ClosureContext::new(i, emax)?;
    let hits = (0..=emax)
        .into_par_iter()
        .map(|e| {
            for u in &excluded {
                if ctx.member_at(e, c, u)? {
                    return Ok(Some(ctx.powers[e as usize].0));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<Option<u64>>>>()?;
    let largest_q = hits.into_iter().flatten().max();
    let bound = largest_q.map_or(1, |q| q * ring.characteristic());
    let regular = ring.is_polynomial_ring() && *c == ring.one();
    let certificate = if regular { Some(TestExponentCertificate::regular(i)?) } else { None };
    Ok(TestExponentSearch {
        excluded: excluded.iter().map(|u| ring.display(u)).collect(),
        largest_q,
        bound,
        certified: regular && bound == 1,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Outcome;

    #[test]
    fn regular_sequence_detection() {
        let r = Ring::parse("GF(2)[u,v]/(u*v)").unwrap();
        assert_eq!(regular_sequence_failure(&r, &r.parse_generators("(u+v)").unwrap()).unwrap(), None);
        assert_eq!(regular_sequence_failure(&r, &r.parse_generators("(u)").unwrap()).unwrap(), Some(0));
    }

    #[test]
    fn node_is_f_injective_and_fermat_two_is_not() {
        let t = Ring::parse("GF(2)[u,v]/(u*v)").unwrap();
        let rep = f_injectivity_check(&t, &t.parse_generators("(u+v)").unwrap(), 3).unwrap();
        assert_eq!(rep.outcome, Outcome::ConditionalPass);

        let f = Ring::parse("GF(2)[z,x,y]/(x^3+y^3+z^3)").unwrap();
        let rep = f_injectivity_check(&f, &f.parse_generators("(x, y)").unwrap(), 3).unwrap();
        assert_eq!(rep.outcome, Outcome::Fail);
        assert!(rep.records.iter().any(|r| r.label == "witness for z^2" && r.lhs == "(z^2)^2 in (x, y)^[2]"));
    }

    #[test]
    fn regular_ring_is_f_rational_unconditionally() {
        let r = Ring::polynomial(3, &["x", "y"]).unwrap();
        let rep = f_rationality_check(&r, &r.parse_generators("(x, y)").unwrap(), &TestElementStrategy::Unit, 2).unwrap();
        assert_eq!(rep.outcome, Outcome::Pass);
    }

    #[test]
    fn strong_test_ideal_trivial_cases() {
        let r = Ring::polynomial(3, &["x", "y"]).unwrap();
        let i = Ideal::parse(&r, "(x^2, y)").unwrap();
        let rep = strong_test_ideal_check(&Ideal::unit(&r), &i, &TestElementStrategy::Unit, 2).unwrap();
        assert_eq!(rep.outcome, Outcome::Pass);
        let rep = strong_test_ideal_check(&Ideal::zero(&r), &i, &TestElementStrategy::Unit, 2).unwrap();
        assert_eq!(rep.outcome, Outcome::Pass);
    }

    #[test]
    fn regular_test_exponent_is_certified() {
        let r = Ring::polynomial(3, &["x", "y"]).unwrap();
        let i = Ideal::parse(&r, "(x^2, y^2)").unwrap();
        let s = test_exponent_search(&r.one(), &i, &TestElementStrategy::Unit, 3).unwrap();
        assert_eq!((s.bound, s.certified, s.largest_q), (1, true, None));
        assert_eq!(s.excluded.len(), 4);
    }
}
