use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{colon_ideal, intersect, is_m_primary, is_parameter_ideal, socle, Ideal};
use crate::poly::Poly;
use crate::ring::Ring;

use super::candidate::tight_closure_candidate;
use super::strategy::TestElementStrategy;

#[derive(Debug, Clone)]
pub struct TauLevel {
    pub t: u32,
    /// `I_t = (z_1^t, ..., z_d^t)`.
    pub ideal: Ideal,
    pub candidate: Ideal,
    /// `(I_t : I_t*cand)`.
    pub colon: Ideal,
    /// Intersection of the colons for `s <= t`.
    pub tau: Ideal,
    pub unconditional: bool,
}

#[derive(Debug, Clone)]
pub struct TauTruncation {
    pub levels: Vec<TauLevel>,
    /// First `t` with `tau_t = tau_{t+1}`, if seen within range.
    pub stabilized_at: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauLevelText {
    pub t: u32,
    pub ideal: String,
    pub candidate: String,
    pub colon: String,
    pub tau: String,
    pub unconditional: bool,
}

impl TauTruncation {
    pub fn last(&self) -> &Ideal {
        &self.levels.last().expect("tmax >= 1").tau
    }

    pub fn unconditional(&self) -> bool {
        self.levels.iter().all(|l| l.unconditional)
    }

    pub fn levels_text(&self) -> Result<Vec<TauLevelText>> {
        self.levels
            .iter()
            .map(|l| {
                Ok(TauLevelText {
                    t: l.t,
                    ideal: l.ideal.display(),
                    candidate: l.candidate.display(),
                    colon: l.colon.display(),
                    tau: format!("({})", l.tau.groebner_text()?.join(", ")),
                    unconditional: l.unconditional,
                })
            })
            .collect()
    }
}

/// `(z_1^t, ..., z_d^t)`.
pub fn truncation(ring: &Ring, z: &[Poly], t: u32) -> Result<Ideal> {
    Ideal::new(ring, z.iter().map(|g| ring.pow(g, t as u64)).collect())
}

/// Checks that `(z)` is an m-primary parameter ideal with one-dimensional socle.
pub fn check_gorenstein_sop(ring: &Ring, z: &[Poly]) -> Result<()> {
    let i = Ideal::new(ring, z.to_vec())?;
    if !is_m_primary(&i)? || !is_parameter_ideal(&i)? {
        return Err(Error::Hypothesis(format!("{} is not a system of parameters", i.display())));
    }
    let s = socle(&i)?;
    if s.len() != 1 {
        return Err(Error::Hypothesis(format!(
            "socle of {} has dimension {}, so it is not irreducible",
            i.display(),
            s.len()
        )));
    }
    Ok(())
}

/// `tau_t = ∩_{s<=t} (I_s : I_s*cand)` for `t = 1..=tmax`.
pub fn tau_truncated(
    ring: &Ring,
    z: &[Poly],
    tmax: u32,
    strategy: &TestElementStrategy,
    emax: u32,
) -> Result<TauTruncation> {
    if tmax == 0 {
        return Err(Error::Invalid("tmax must be at least 1".into()));
    }
    check_gorenstein_sop(ring, z)?;
    let mut levels: Vec<TauLevel> = Vec::new();
    let mut stabilized_at = None;
    for t in 1..=tmax {
        let it = truncation(ring, z, t)?;
        let cand = tight_closure_candidate(&it, strategy, emax)?;
        let colon = colon_ideal(&it, &cand.candidate)?;
        let tau = match levels.last() {
            Some(prev) => intersect(&prev.tau, &colon)?,
            None => colon.clone(),
        };
        if stabilized_at.is_none() {
            if let Some(prev) = levels.last() {
                if prev.tau.same_ideal(&tau)? {
                    stabilized_at = Some(prev.t);
                }
            }
        }
        levels.push(TauLevel { t, ideal: it, candidate: cand.candidate.clone(), colon, tau, unconditional: cand.unconditional() });
    }
    Ok(TauTruncation { levels, stabilized_at })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_ring_tau_is_unit() {
        let r = Ring::polynomial(3, &["x", "y"]).unwrap();
        let z = r.parse_generators("(x, y)").unwrap();
        let tau = tau_truncated(&r, &z, 2, &TestElementStrategy::Unit, 2).unwrap();
        assert!(tau.levels.iter().all(|l| l.tau.is_unit().unwrap()));
        assert_eq!(tau.stabilized_at, Some(1));
        assert!(tau.unconditional());
    }

    #[test]
    fn single_level_is_the_colon() {
        let r = Ring::parse("GF(2)[z,x,y]/(x^3+y^3+z^3)").unwrap();
        let z = r.parse_generators("(x, y)").unwrap();
        let tau = tau_truncated(&r, &z, 1, &TestElementStrategy::explicit(r.parse_poly("z").unwrap(), 1), 2).unwrap();
        assert_eq!(tau.levels.len(), 1);
        assert!(tau.last().same_ideal(&Ideal::maximal(&r)).unwrap());
        assert_eq!(tau.stabilized_at, None);
    }

    #[test]
    fn non_gorenstein_sop_is_refused() {
        let r = Ring::polynomial(3, &["x", "y"]).unwrap();
        let z = r.parse_generators("(x^2, x*y, y^2)").unwrap();
        assert!(matches!(check_gorenstein_sop(&r, &z), Err(Error::Hypothesis(_))));
    }
}
