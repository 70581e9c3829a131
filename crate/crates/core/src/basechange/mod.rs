//! Split flat extensions `S = R ⊗_{F_p} T` on disjoint variable blocks, and
//! the identities that can be checked on them.

mod checks;

pub use checks::{
    check_hk_multiplicativity, check_kunz_inequality, check_length_identity, check_tau_extension,
    check_test_exponent_transfer, check_tightly_closed_extension,
};

use crate::error::{Error, Result};
use crate::groebner::{is_m_primary, is_parameter_ideal, Ideal};
use crate::poly::Poly;
use crate::ring::{is_power_of, Ring, RingPresentation};

/// The closed fiber `T` with a system of parameters `z`.
#[derive(Debug, Clone)]
pub struct FiberPresentation {
    pub ring: Ring,
    pub z: Vec<Poly>,
}

impl FiberPresentation {
    pub fn new(ring: &Ring, z: Vec<Poly>) -> Result<Self> {
        for g in &z {
            ring.check_member(g)?;
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(format!("s.o.p. element {}", ring.display(g))));
            }
        }
        let zi = Ideal::new(ring, z.clone())?;
        if zi.gens().len() != z.len() || !is_m_primary(&zi)? || !is_parameter_ideal(&zi)? {
            return Err(Error::Hypothesis(format!("{} is not a system of parameters of {}", zi.display(), ring.describe())));
        }
        Ok(FiberPresentation { ring: ring.clone(), z })
    }

    pub fn parse(ring: &Ring, z: &str) -> Result<Self> {
        FiberPresentation::new(ring, ring.parse_generators(z)?)
    }

    pub fn z_ideal(&self) -> Result<Ideal> {
        Ideal::new(&self.ring, self.z.clone())
    }
}

/// `S = R ⊗ T` with `vars(S) = vars(R) ++ vars(T)`.
#[derive(Debug, Clone)]
pub struct FlatExtension {
    pub base: Ring,
    pub fiber: FiberPresentation,
    pub total: Ring,
    base_map: Vec<usize>,
    fiber_map: Vec<usize>,
}

pub fn build_extension(r: &Ring, fiber: FiberPresentation) -> Result<FlatExtension> {
    let t = &fiber.ring;
    if r.characteristic() != t.characteristic() {
        return Err(Error::RingMismatch(format!("{} and {} differ in characteristic", r.describe(), t.describe())));
    }
    for v in t.vars() {
        if r.var_index(v).is_some() {
            return Err(Error::DuplicateVariable(v.clone()));
        }
    }
    let mut vars = r.vars().to_vec();
    vars.extend(t.vars().iter().cloned());
    let mut relations: Vec<String> = r.relations().iter().map(|f| r.display(f)).collect();
    relations.extend(t.relations().iter().map(|f| t.display(f)));
    let pres = RingPresentation { p: r.characteristic(), vars, order: r.order().kind, relations };
    let total = Ring::with_limits(&pres, r.limits())?;
    let nr = r.nvars();
    let x = FlatExtension {
        base: r.clone(),
        base_map: (0..nr).collect(),
        fiber_map: (nr..nr + t.nvars()).collect(),
        total,
        fiber,
    };
    x.check_fiber()?;
    Ok(x)
}

impl FlatExtension {
    /// `S/mS ≅ T`: the relations of `S` with the base variables set to zero
    /// generate the same ideal as the relations of `T`.
    fn check_fiber(&self) -> Result<()> {
        let t = &self.fiber.ring;
        let s = &self.total;
        let mut killed = vec![false; s.nvars()];
        for &i in &self.base_map {
            killed[i] = true;
        }
        // after killing the base block, base exponents are zero and map anywhere
        let back: Vec<usize> = (0..s.nvars()).map(|i| i.saturating_sub(self.base.nvars())).collect();
        let amb = t.ambient();
        let reduced: Vec<Poly> =
            s.relations().iter().map(|f| amb.transport(&s.kill_vars(f, &killed), &back)).collect();
        let lhs = Ideal::new(&amb, reduced)?;
        let rhs = Ideal::new(&amb, t.relations().to_vec())?;
        if !lhs.same_ideal(&rhs)? {
            return Err(Error::Hypothesis("closed fiber of the extension is not the given fiber ring".into()));
        }
        Ok(())
    }

    pub fn from_base(&self, f: &Poly) -> Poly {
        self.total.transport(f, &self.base_map)
    }

    pub fn from_fiber(&self, f: &Poly) -> Poly {
        self.total.transport(f, &self.fiber_map)
    }

    /// `IS`.
    pub fn extend(&self, i: &Ideal) -> Result<Ideal> {
        if i.ring() != &self.base {
            return Err(Error::RingMismatch("ideal does not live in the base ring".into()));
        }
        Ideal::new(&self.total, i.gens().iter().map(|g| self.from_base(g)).collect())
    }

    /// `z` as elements of `S`.
    pub fn z(&self) -> Vec<Poly> {
        self.fiber.z.iter().map(|g| self.from_fiber(g)).collect()
    }

    /// `mS`, the base maximal ideal extended.
    pub fn base_maximal(&self) -> Result<Ideal> {
        self.extend(&Ideal::maximal(&self.base))
    }

    pub fn describe(&self) -> String {
        format!("{} ⊗ {}", self.base.describe(), self.fiber.ring.describe())
    }
}

/// `(I + (z_1^t, ..., z_d^t))S`; with `bracket`, `t` must be a power of `p`.
pub fn extend_ideal(x: &FlatExtension, i: &Ideal, t: u64, bracket: bool) -> Result<Ideal> {
    let s = &x.total;
    if bracket && !is_power_of(t, s.characteristic()) {
        return Err(Error::NotFrobeniusPower { q: t, p: s.characteristic() });
    }
    if t == 0 {
        return Err(Error::Invalid("power of z must be positive".into()));
    }
    let mut gens: Vec<Poly> = x.extend(i)?.gens().to_vec();
    gens.extend(x.z().iter().map(|g| s.pow(g, t)));
    Ideal::new(s, gens)
}
