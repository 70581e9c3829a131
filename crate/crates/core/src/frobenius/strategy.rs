use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{colon, Ideal};
use crate::poly::Poly;
use crate::ring::Ring;

/// How the multiplier `c` in `c u^q ∈ I^[q]` is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TestElementStrategy {
    /// A user-supplied element, raised to `power`.
    Explicit { c: Poly, power: u32 },
    /// A partial derivative of the relations, raised to `power`.
    Jacobian { power: u32 },
    /// `c = 1`; only valid in a polynomial ring.
    Unit,
}

/// Default exponent for derived test elements.
pub const DEFAULT_TEST_POWER: u32 = 2;

impl Default for TestElementStrategy {
    fn default() -> Self {
        TestElementStrategy::Jacobian { power: DEFAULT_TEST_POWER }
    }
}

/// A validated multiplier `c^N` for a specific ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TestElement {
    #[serde(skip)]
    pub base: Poly,
    #[serde(skip)]
    pub element: Poly,
    pub c: String,
    pub power: u32,
    pub mode: &'static str,
    /// The ring is a polynomial ring, so `I* = I` and every verdict is unconditional.
    pub regular: bool,
}

/// `(0 :_A c) = 0` in `A`. A nonzerodivisor lies outside every minimal prime.
pub fn is_nonzerodivisor(ring: &Ring, c: &Poly) -> Result<bool> {
    let zero = Ideal::zero(ring);
    if zero.contains(c)? {
        return Ok(false);
    }
    if ring.is_polynomial_ring() {
        return Ok(true);
    }
    let ann = colon(&zero, c)?;
    ann.is_zero_ideal()
}

impl TestElementStrategy {
    pub fn explicit(c: Poly, power: u32) -> Self {
        TestElementStrategy::Explicit { c, power }
    }

    pub fn describe(&self, ring: &Ring) -> String {
        match self {
            TestElementStrategy::Explicit { c, power } => format!("explicit({})^{power}", ring.display(c)),
            TestElementStrategy::Jacobian { power } => format!("jacobian^{power}"),
            TestElementStrategy::Unit => "unit".into(),
        }
    }

    /// Validates against `ring` and produces `c^N`.
    pub fn resolve(&self, ring: &Ring) -> Result<TestElement> {
        let regular = ring.is_polynomial_ring();
        let (base, power, mode) = match self {
            TestElementStrategy::Unit => {
                if !regular {
                    return Err(Error::InvalidStrategy(
                        "unit test element requires a polynomial ring (no relations)".into(),
                    ));
                }
                (ring.one(), 1, "unit")
            }
            TestElementStrategy::Explicit { c, power } => {
                ring.check_member(c)?;
                if !is_nonzerodivisor(ring, c)? {
                    return Err(Error::InvalidStrategy(format!(
                        "{} is zero or a zero divisor, so it lies in a minimal prime",
                        ring.display(c)
                    )));
                }
                (c.clone(), *power, "explicit")
            }
            TestElementStrategy::Jacobian { power } => {
                if regular {
                    (ring.one(), *power, "jacobian")
                } else {
                    (jacobian_element(ring)?, *power, "jacobian")
                }
            }
        };
        if power == 0 && mode != "unit" {
            return Err(Error::InvalidStrategy("test element power must be at least 1".into()));
        }
        let element = ring.pow(&base, power as u64);
        Ok(TestElement { c: ring.display(&base), element, base, power, mode, regular })
    }

    /// The same strategy read in a larger ring whose variables extend `from`'s.
    pub fn transport(&self, from: &Ring, to: &Ring) -> Result<TestElementStrategy> {
        Ok(match self {
            TestElementStrategy::Explicit { c, power } => {
                let map: Vec<usize> = from
                    .vars()
                    .iter()
                    .map(|v| to.var_index(v).ok_or_else(|| Error::UnknownVariable(v.clone())))
                    .collect::<Result<_>>()?;
                TestElementStrategy::Explicit { c: to.transport(c, &map), power: *power }
            }
            TestElementStrategy::Jacobian { power } => TestElementStrategy::Jacobian { power: *power },
            TestElementStrategy::Unit if to.is_polynomial_ring() => TestElementStrategy::Unit,
            // c = 1 as the element common to both rings
            TestElementStrategy::Unit => TestElementStrategy::Explicit { c: to.one(), power: 1 },
        })
    }
}

/// First nonzerodivisor among the partial derivatives of the relations, else
/// the sum of all of them.
fn jacobian_element(ring: &Ring) -> Result<Poly> {
    let mut sum = ring.zero();
    for r in ring.relations() {
        for v in 0..ring.nvars() {
            let d = ring.derivative(r, v);
            if d.is_zero() {
                continue;
            }
            if is_nonzerodivisor(ring, &d)? {
                return Ok(ring.make_monic(&d));
            }
            sum = ring.add(&sum, &d);
        }
    }
    if !sum.is_zero() && is_nonzerodivisor(ring, &sum)? {
        return Ok(ring.make_monic(&sum));
    }
    Err(Error::InvalidStrategy("no partial derivative of the relations is a nonzerodivisor".into()))
}
