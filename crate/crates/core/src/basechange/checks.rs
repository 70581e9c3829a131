use std::ops::RangeInclusive;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frobenius::{
    check_gorenstein_sop, f_injectivity_check, f_rationality_check, frobenius_power, gb_text, is_nonzerodivisor,
    ratio, regular_sequence_failure, tau_truncated, test_exponent_search, tight_closure_candidate,
    FrobeniusExponent, TestElementStrategy, Verdict,
};
use crate::groebner::{is_m_primary, krull_dim, length, multiplicity, sum, Ideal};
use crate::poly::Poly;
use crate::report::VerificationReport;
use crate::ring::Ring;

use super::{extend_ideal, FlatExtension};

fn range_text(r: &RangeInclusive<u32>) -> String {
    format!("{}..={}", r.start(), r.end())
}

fn dim(ring: &Ring) -> Result<i64> {
    krull_dim(&Ideal::zero(ring))
}

/// `l(S/(I^[q], z^[q])S)`, `l(R/I^[q])` and `l(S/(mS, z^[q])S)` for one `e`.
struct LengthRow {
    e: u32,
    q: u64,
    l_s: u64,
    l_r: u64,
    l_fib: u64,
}

fn length_rows(x: &FlatExtension, i: &Ideal, range: &RangeInclusive<u32>) -> Result<Vec<LengthRow>> {
    let p = x.base.characteristic();
    let ms = x.base_maximal()?;
    range
        .clone()
        .into_par_iter()
        .map(|e| {
            let q = FrobeniusExponent::new(p, e)?;
            let iq = frobenius_power(i, q)?;
            let l_r = length(&iq)?;
            let l_s = length(&extend_ideal(x, &iq, q.q, false)?)?;
            let zq = Ideal::new(&x.total, x.z().iter().map(|g| x.total.pow(g, q.q)).collect())?;
            let l_fib = length(&sum(&ms, &zq)?)?;
            Ok(LengthRow { e, q: q.q, l_s, l_r, l_fib })
        })
        .collect()
}

fn length_preconditions(x: &FlatExtension, i: &Ideal, rep: VerificationReport) -> Result<std::result::Result<VerificationReport, VerificationReport>> {
    if !is_m_primary(i)? {
        return Err(Error::NotMPrimary);
    }
    if let Some(k) = regular_sequence_failure(&x.fiber.ring, &x.fiber.z)? {
        return Ok(Err(rep.precondition_failed(format!("fiber is not Cohen-Macaulay along z (z_{} is a zero divisor)", k + 1))));
    }
    Ok(Ok(rep))
}

/// `l_S(S/(I^[q], z^[q])S) = l_R(R/I^[q]) * l_S(S/(mS, z^[q])S)` for each `e`.
pub fn check_length_identity(x: &FlatExtension, i: &Ideal, range: RangeInclusive<u32>) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("length-identity");
    rep.param("extension", x.describe()).param("I", i.display()).param("z", x.fiber.z_ideal()?.display());
    rep.param("e", range_text(&range));
    let mut rep = match length_preconditions(x, i, rep)? {
        Ok(r) => r,
        Err(r) => return Ok(r),
    };
    for row in length_rows(x, i, &range)? {
        rep.record(
            format!("e={} q={}", row.e, row.q),
            row.l_s,
            format!("{} * {} = {}", row.l_r, row.l_fib, row.l_r * row.l_fib),
            row.l_s == row.l_r * row.l_fib,
        );
    }
    Ok(rep.finish())
}

/// Row-wise `ratio_S(e) = ratio_R(e) * ratio_T(e)`.
pub fn check_hk_multiplicativity(
    x: &FlatExtension,
    i: &Ideal,
    range: RangeInclusive<u32>,
) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("hk-product");
    rep.param("extension", x.describe()).param("I", i.display()).param("z", x.fiber.z_ideal()?.display());
    rep.param("e", range_text(&range));
    let mut rep = match length_preconditions(x, i, rep)? {
        Ok(r) => r,
        Err(r) => return Ok(r),
    };
    let (d_r, d_t, d_s) = (dim(&x.base)?, dim(&x.fiber.ring)?, dim(&x.total)?);
    rep.record("dim S = dim R + dim T", d_s, format!("{} + {}", d_r, d_t), d_s == d_r + d_t);
    let zi = x.fiber.z_ideal()?;
    let p = x.base.characteristic();
    let fiber_lengths = range
        .clone()
        .into_par_iter()
        .map(|e| length(&frobenius_power(&zi, FrobeniusExponent::new(p, e)?)?))
        .collect::<Result<Vec<u64>>>()?;
    for (row, l_t) in length_rows(x, i, &range)?.into_iter().zip(fiber_lengths) {
        let rs = ratio(row.l_s, row.q, d_s);
        let rr = ratio(row.l_r, row.q, d_r);
        let rt = ratio(l_t, row.q, d_t);
        let prod = &rr * &rt;
        rep.record(format!("e={} q={}", row.e, row.q), &rs, format!("{rr} * {rt} = {prod}"), rs == prod);
    }
    Ok(rep.finish())
}

/// Row-wise `l(S/m_S^[q])/q^{d_S} <= e(T) * l(R/m_R^[q])/q^{d_R}`, plus the
/// two ingredient inequalities at each row.
pub fn check_kunz_inequality(x: &FlatExtension, range: RangeInclusive<u32>) -> Result<VerificationReport> {
    let t = &x.fiber.ring;
    if t.relations().iter().any(|f| !f.is_homogeneous()) {
        return Err(Error::NotHomogeneous(format!("fiber relations of {}", t.describe())));
    }
    let mut rep = VerificationReport::new("kunz-inequality");
    rep.param("extension", x.describe()).param("z", x.fiber.z_ideal()?.display()).param("e", range_text(&range));
    let e_t = multiplicity(&Ideal::zero(t))?;
    rep.param("e(T)", e_t);
    let (d_r, d_t, d_s) = (dim(&x.base)?, dim(t)?, dim(&x.total)?);
    let e_t_big = BigRational::from_integer(e_t.into());
    let p = x.base.characteristic();
    let m_r = Ideal::maximal(&x.base);
    let m_s = Ideal::maximal(&x.total);
    let m_t = Ideal::maximal(t);
    let ms_z = sum(&x.base_maximal()?, &Ideal::new(&x.total, x.z())?)?;
    let rows = range
        .clone()
        .into_par_iter()
        .map(|e| {
            let q = FrobeniusExponent::new(p, e)?;
            Ok((
                q.q,
                length(&frobenius_power(&m_s, q)?)?,
                length(&frobenius_power(&m_r, q)?)?,
                length(&frobenius_power(&m_t, q)?)?,
                length(&frobenius_power(&ms_z, q)?)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    for (e, (q, l_s, l_r, l_t, l_mz)) in range.zip(rows) {
        let rs = ratio(l_s, q, d_s);
        let rr = ratio(l_r, q, d_r);
        let rt = ratio(l_t, q, d_t);
        let rmz = ratio(l_mz, q, d_s);
        let bound = &e_t_big * &rr;
        rep.record(format!("e={e}: row_S <= e(T)*row_R"), &rs, format!("{e_t} * {rr} = {bound}"), rs <= bound);
        rep.record(format!("e={e}: row_S <= row(mS+zS)"), &rs, &rmz, rs <= rmz);
        rep.record(format!("e={e}: row_T <= e(T)"), &rt, e_t, rt <= e_t_big);
    }
    rep.note("finite-e rows only; no limit is taken");
    Ok(rep.finish())
}

fn fiber_is_gorenstein(x: &FlatExtension) -> Result<bool> {
    match check_gorenstein_sop(&x.fiber.ring, &x.fiber.z) {
        Ok(()) => Ok(true),
        Err(Error::Hypothesis(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// `(I + (z)^t)S` equals its tight-closure candidate, given that `I` does in `R`.
pub fn check_tightly_closed_extension(
    x: &FlatExtension,
    i: &Ideal,
    t: u64,
    strategy: &TestElementStrategy,
    emax: u32,
) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("tight-extension");
    rep.param("extension", x.describe()).param("I", i.display()).param("z", x.fiber.z_ideal()?.display());
    rep.param("t", t).param("emax", emax).param("strategy", strategy.describe(&x.base));
    if !is_m_primary(i)? {
        return Ok(rep.precondition_failed(format!("{} is not m-primary", i.display())));
    }
    let cand_r = tight_closure_candidate(i, strategy, emax)?;
    if !cand_r.is_closed()? {
        let outside = || cand_r.members().filter(|e| !matches!(e.verdict.verdict, Verdict::InIdeal));
        let witness = outside()
            .find(|e| e.verdict.proves_membership())
            .or_else(|| outside().next())
            .map(|e| format!("{} is {}", e.element, e.verdict.label()))
            .unwrap_or_default();
        return Ok(rep.precondition_failed(format!("{} is not tightly closed in R: {}", i.display(), witness)));
    }
    if !cand_r.unconditional() {
        rep.conditional = true;
        rep.note("I tightly closed in R rests on test-element evidence");
    }
    let path = if fiber_is_gorenstein(x)? {
        "gorenstein-fiber"
    } else if regular_sequence_failure(&x.fiber.ring, &x.fiber.z)?.is_none() && t == 1 {
        "cm-fiber"
    } else {
        return Ok(rep.precondition_failed("fiber is neither Gorenstein along z nor Cohen-Macaulay with t = 1"));
    };
    rep.param("path", path);
    let finj = f_injectivity_check(&x.fiber.ring, &x.fiber.z, emax)?;
    if !finj.passed() {
        return Ok(rep.precondition_failed("fiber has a Frobenius-closure witness, so it is not F-injective"));
    }
    if finj.conditional {
        rep.conditional = true;
    }
    let strat_s = strategy.transport(&x.base, &x.total)?;
    rep.param("strategy_S", strat_s.describe(&x.total));
    let j = extend_ideal(x, i, t, false)?;
    let cand_s = tight_closure_candidate(&j, &strat_s, emax)?;
    for e in cand_s.members() {
        if matches!(e.verdict.verdict, Verdict::InIdeal) {
            continue;
        }
        let kind = if e.verdict.proves_membership() { "counterexample" } else { "evidence against" };
        rep.record(format!("{} outside (I, z^t)S", e.element), e.verdict.label(), kind, false);
    }
    rep.record("(I, z^t)S*cand = (I, z^t)S", cand_s.candidate.display(), j.display(), cand_s.is_closed()?);
    rep.param("basis_size", cand_s.entries.len());
    if !cand_s.unconditional() {
        rep.conditional = true;
        rep.note(format!("exclusions in S assume {} is a test element", cand_s.test_element));
    }
    Ok(rep.finish())
}

/// Empirical `exp(c^2, I, R) >= exp(c, IS + zS, S)`.
pub fn check_test_exponent_transfer(
    x: &FlatExtension,
    c: &Poly,
    i: &Ideal,
    strategy: &TestElementStrategy,
    emax: u32,
) -> Result<VerificationReport> {
    let r = &x.base;
    let mut rep = VerificationReport::new("test-exponent-transfer");
    rep.param("extension", x.describe()).param("I", i.display()).param("c", r.display(c)).param("emax", emax);
    r.check_member(c)?;
    if !fiber_is_gorenstein(x)? {
        return Ok(rep.precondition_failed("fiber is not Gorenstein along z"));
    }
    let finj = f_injectivity_check(&x.fiber.ring, &x.fiber.z, emax)?;
    if !finj.passed() {
        return Ok(rep.precondition_failed("fiber is not F-injective"));
    }
    let c_s = x.from_base(c);
    if !is_nonzerodivisor(r, c)? || !is_nonzerodivisor(&x.total, &c_s)? {
        return Ok(rep.precondition_failed(format!("{} is a zero divisor", r.display(c))));
    }
    let c2 = r.mul(c, c);
    let search_r = test_exponent_search(&c2, i, strategy, emax)?;
    let strat_s = strategy.transport(r, &x.total)?;
    let j = extend_ideal(x, i, 1, false)?;
    let search_s = test_exponent_search(&c_s, &j, &strat_s, emax)?;
    rep.param("excluded_R", search_r.excluded.join(", "));
    rep.param("excluded_S", search_s.excluded.join(", "));
    rep.record(
        "bound_R(c^2, I) >= bound_S(c, IS+zS)",
        search_r.bound,
        search_s.bound,
        search_r.bound >= search_s.bound,
    );
    if r.is_polynomial_ring() && *c == r.one() {
        let cert = test_exponent_search(c, i, &TestElementStrategy::Unit, emax)?;
        rep.record("certified exp(1, I, R)", cert.bound, 1, cert.certified && cert.bound == 1);
    }
    if !(search_r.certified && search_s.certified) {
        rep.conditional = true;
        rep.note("bounds come from a finite search over q <= p^emax");
    }
    Ok(rep.finish())
}

/// Per truncation level: `(J_t : J_t*) = (I_t : I_t*)S + (z^t)S` and
/// `tau_t(S) = tau_t(R)S + (z^t)S`, with `J_t = (I_t, z^t)S`.
pub fn check_tau_extension(
    x: &FlatExtension,
    z_r: &[Poly],
    tmax: u32,
    strategy: &TestElementStrategy,
    emax: u32,
) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("tau-extension");
    let zr = Ideal::new(&x.base, z_r.to_vec())?;
    rep.param("extension", x.describe()).param("z_R", zr.display()).param("z", x.fiber.z_ideal()?.display());
    rep.param("tmax", tmax).param("emax", emax);
    let mut z_s: Vec<Poly> = z_r.iter().map(|g| x.from_base(g)).collect();
    z_s.extend(x.z());
    for (ring, z, label) in [(&x.base, z_r.to_vec(), "R"), (&x.total, z_s.clone(), "S")] {
        match check_gorenstein_sop(ring, &z) {
            Ok(()) => {}
            Err(Error::Hypothesis(why)) => return Ok(rep.precondition_failed(format!("{label}: {why}"))),
            Err(e) => return Err(e),
        }
    }
    let finj = f_injectivity_check(&x.fiber.ring, &x.fiber.z, emax)?;
    let fiber_ok = if finj.passed() {
        rep.param("fiber", "f-injective");
        true
    } else {
        let t_strategy = if x.fiber.ring.is_polynomial_ring() { TestElementStrategy::Unit } else { TestElementStrategy::default() };
        let frat = f_rationality_check(&x.fiber.ring, &x.fiber.z, &t_strategy, emax)?;
        rep.param("fiber", "f-rational");
        frat.passed()
    };
    if !fiber_ok {
        return Ok(rep.precondition_failed("fiber shows neither F-injectivity nor F-rationality evidence"));
    }
    let strat_s = strategy.transport(&x.base, &x.total)?;
    rep.param("strategy", strategy.describe(&x.base)).param("strategy_S", strat_s.describe(&x.total));
    let tau_r = tau_truncated(&x.base, z_r, tmax, strategy, emax)?;
    let tau_s = tau_truncated(&x.total, &z_s, tmax, &strat_s, emax)?;
    for (lr, ls) in tau_r.levels.iter().zip(&tau_s.levels) {
        let zt = Ideal::new(&x.total, x.z().iter().map(|g| x.total.pow(g, lr.t as u64)).collect())?;
        let colon_r_s = sum(&x.extend(&lr.colon)?, &zt)?;
        rep.record(
            format!("t={}: (J_t : J_t*) = (I_t : I_t*)S + (z^t)", lr.t),
            gb_text(&ls.colon)?,
            gb_text(&colon_r_s)?,
            ls.colon.same_ideal(&colon_r_s)?,
        );
        let tau_r_s = sum(&x.extend(&lr.tau)?, &zt)?;
        rep.record(
            format!("t={}: tau_t(S) = tau_t(R)S + (z^t)", lr.t),
            gb_text(&ls.tau)?,
            gb_text(&tau_r_s)?,
            ls.tau.same_ideal(&tau_r_s)?,
        );
    }
    if let Some(t) = tau_r.stabilized_at {
        rep.param("stabilized_R", t);
    }
    rep.param("tau_R", gb_text(tau_r.last())?);
    rep.param("tau_S", gb_text(tau_s.last())?);
    rep.note("the identity tau(R)S = tau(S) holds in the limit; finite levels carry the (z^t) term");
    if !(tau_r.unconditional() && tau_s.unconditional()) || finj.conditional {
        rep.conditional = true;
        rep.note("closure candidates rest on test-element evidence");
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basechange::{build_extension, FiberPresentation};
    use crate::report::Outcome;

    fn ext(r: &str, t: &str, z: &str) -> FlatExtension {
        let r = Ring::parse(r).unwrap();
        let t = Ring::parse(t).unwrap();
        build_extension(&r, FiberPresentation::parse(&t, z).unwrap()).unwrap()
    }

    #[test]
    fn length_identity_examples() {
        let x = ext("GF(3)[x]", "GF(3)[y]/(y^3)", "()");
        let i = Ideal::parse(&x.base, "(x^2)").unwrap();
        let rep = check_length_identity(&x, &i, 1..=3).unwrap();
        assert_eq!(rep.outcome, Outcome::Pass);
        assert_eq!(rep.records.iter().map(|r| r.lhs.as_str()).collect::<Vec<_>>(), ["18", "54", "162"]);

        let x = ext("GF(2)[x]", "GF(2)[u,v]/(u*v)", "(u+v)");
        let i = Ideal::parse(&x.base, "(x^3)").unwrap();
        let rep = check_length_identity(&x, &i, 1..=3).unwrap();
        assert_eq!(rep.outcome, Outcome::Pass);
        assert_eq!(rep.records[0].rhs, "6 * 4 = 24");
    }

    #[test]
    fn hk_and_kunz_rows() {
        let x = ext("GF(2)[x]", "GF(2)[u,v]/(u*v)", "(u+v)");
        let i = Ideal::parse(&x.base, "(x^3)").unwrap();
        assert_eq!(check_hk_multiplicativity(&x, &i, 1..=3).unwrap().outcome, Outcome::Pass);
        let rep = check_kunz_inequality(&x, 1..=3).unwrap();
        assert_eq!(rep.outcome, Outcome::Pass);
        assert_eq!(rep.parameters["e(T)"], "2");
    }

    #[test]
    fn negative_control_is_refused() {
        let x = ext("GF(2)[z,x,y]/(x^3+y^3+z^3)", "GF(2)[w]", "(w)");
        let i = Ideal::parse(&x.base, "(x, y)").unwrap();
        let rep = check_tightly_closed_extension(&x, &i, 1, &TestElementStrategy::default(), 3).unwrap();
        assert_eq!(rep.outcome, Outcome::PreconditionFailed);
        assert!(rep.notes[0].contains("InFrobeniusClosure(2)"), "{}", rep.to_text());
    }

    #[test]
    fn regular_base_node_fiber_transfer() {
        let x = ext("GF(3)[x]", "GF(3)[u,v]/(u*v)", "(u+v)");
        let i = Ideal::parse(&x.base, "(x^2)").unwrap();
        let rep = check_test_exponent_transfer(&x, &x.base.one(), &i, &TestElementStrategy::Unit, 3).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
        assert_eq!(rep.records[0].lhs, "1");
        assert_eq!(rep.records[0].rhs, "1");
    }
}
