//! The quotient log pair `(S_n, Δ)` of a Reeb ray `ξ_v` in the `w`-Sasaki cone.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{int_u, Rational};
use crate::join::{make_join, parse_pair, FanoBase, JoinSpec, WeightVector};

/// Primitive ray `v = (v1, v2)` of the Reeb cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReebRay {
    v1: u64,
    v2: u64,
}

impl ReebRay {
    pub fn new(v1: u64, v2: u64) -> Result<Self> {
        if v1 == 0 || v2 == 0 {
            return Err(Error::InvalidInput(format!(
                "ray components must be positive, got ({v1},{v2})"
            )));
        }
        if v1.gcd(&v2) != 1 {
            return Err(Error::InvalidInput(format!(
                "ray ({v1},{v2}) is not primitive"
            )));
        }
        Ok(ReebRay { v1, v2 })
    }

    pub fn v1(&self) -> u64 {
        self.v1
    }

    pub fn v2(&self) -> u64 {
        self.v2
    }

    pub fn is_diagonal(&self) -> bool {
        self.v1 == 1 && self.v2 == 1
    }
}

impl fmt::Display for ReebRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.v1, self.v2)
    }
}

impl FromStr for ReebRay {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = parse_pair(s)?;
        ReebRay::new(a, b)
    }
}

/// The two sections of the ruled surface `S_n`; `D1` is `z2 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Divisor {
    D1,
    D2,
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Divisor::D1 => "D1",
            Divisor::D2 => "D2",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BranchComponent {
    pub divisor: Divisor,
    pub ramification: u64,
}

impl BranchComponent {
    /// `1 − 1/m`
    pub fn coefficient(&self) -> Rational {
        Rational::one() - Rational::new(1.into(), self.ramification.into())
    }
}

/// Fiber `ℂP¹[v1,v2]/ℤ_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiberDescriptor {
    pub v1: u64,
    pub v2: u64,
    pub m: u64,
}

impl fmt::Display for FiberDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CP^1[{},{}]/Z_{}", self.v1, self.v2, self.m)
    }
}

/// Lens space `L(p; q1, q2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LensSpace {
    pub p: u64,
    pub q1: u64,
    pub q2: u64,
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({}; {}, {})", self.p, self.q1, self.q2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regularity {
    Regular,
    QuasiRegularWithBranching,
}

impl fmt::Display for Regularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regularity::Regular => "regular",
            Regularity::QuasiRegularWithBranching => "quasi_regular_with_branching",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReebQuotient {
    pub s: u64,
    pub m: u64,
    pub m1: u64,
    pub m2: u64,
    /// `|n|`; see `orientation_reversed`.
    pub degree_n: u64,
    /// Set when `w1·v2 < w2·v1`. The signed degree is then `−degree_n`
    /// and the ramification indices on `D1`, `D2` are exchanged in `branch`.
    pub orientation_reversed: bool,
    /// Components with ramification index > 1.
    pub branch: Vec<BranchComponent>,
    pub fiber: FiberDescriptor,
    pub orb_pi1_order: u64,
    pub lens_fiber: LensSpace,
    pub regularity: Regularity,
}

impl ReebQuotient {
    pub fn signed_degree(&self) -> i128 {
        if self.orientation_reversed {
            -(self.degree_n as i128)
        } else {
            self.degree_n as i128
        }
    }

    /// `Δ` as `(divisor, 1 − 1/m)` pairs; empty when there is no branching.
    pub fn branch_divisor(&self) -> Vec<(Divisor, Rational)> {
        self.branch
            .iter()
            .map(|b| (b.divisor, b.coefficient()))
            .collect()
    }

    /// Ramification index along `d`, 1 when unbranched.
    pub fn ramification(&self, d: Divisor) -> u64 {
        self.branch
            .iter()
            .find(|b| b.divisor == d)
            .map_or(1, |b| b.ramification)
    }

    pub fn delta_string(&self) -> String {
        if self.branch.is_empty() {
            return "0".into();
        }
        self.branch
            .iter()
            .map(|b| {
                let c = b.coefficient();
                format!("({}/{}){}", c.numer(), c.denom(), b.divisor)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn narrow(x: u128, what: &'static str) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Overflow(what))
}

/// `w1·v2 − w2·v1`, rejecting rays parallel to `w`.
fn cross(w: WeightVector, v: ReebRay) -> Result<i128> {
    let a = w.w1() as i128 * v.v2() as i128;
    let b = w.w2() as i128 * v.v1() as i128;
    if a == b {
        return Err(Error::DegenerateRay {
            w1: w.w1(),
            w2: w.w2(),
            v1: v.v1(),
            v2: v.v2(),
        });
    }
    Ok(a - b)
}

pub fn reeb_quotient(join: &JoinSpec, v: ReebRay) -> Result<ReebQuotient> {
    let w = join.w;
    let c = cross(w, v)?;
    let c_abs = c.unsigned_abs();
    let l1 = join.l1 as u128;
    let l2 = join.l2 as u128;
    let s = c_abs.gcd(&l2);
    let m = l2 / s;
    let m1 = narrow(v.v1() as u128 * m, "m1")?;
    let m2 = narrow(v.v2() as u128 * m, "m2")?;
    let degree_n = narrow(
        l1.checked_mul(c_abs).ok_or(Error::Overflow("n"))? / s,
        "n",
    )?;
    let orientation_reversed = c < 0;
    let (r1, r2) = if orientation_reversed { (m2, m1) } else { (m1, m2) };
    let branch = [(Divisor::D1, r1), (Divisor::D2, r2)]
        .into_iter()
        .filter(|&(_, r)| r > 1)
        .map(|(divisor, ramification)| BranchComponent {
            divisor,
            ramification,
        })
        .collect();
    let m = m as u64;
    let regularity = if m1 == 1 && m2 == 1 {
        Regularity::Regular
    } else {
        Regularity::QuasiRegularWithBranching
    };
    Ok(ReebQuotient {
        s: s as u64,
        m,
        m1,
        m2,
        degree_n,
        orientation_reversed,
        branch,
        fiber: FiberDescriptor {
            v1: v.v1(),
            v2: v.v2(),
            m,
        },
        orb_pi1_order: m,
        lens_fiber: LensSpace {
            p: join.l2,
            q1: narrow(l1 * w.w1() as u128, "l1*w1")?,
            q2: narrow(l1 * w.w2() as u128, "l1*w2")?,
        },
        regularity,
    })
}

/// Orbit periods in units of `2π`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitPeriods {
    pub generic: Rational,
    /// Period along `z2 = 0`.
    pub at_d1: Rational,
    /// Period along `z1 = 0`.
    pub at_d2: Rational,
}

/// Generic period `1/s`; along `D1` the period is `K/(v1·|w|)` and along
/// `D2` it is `K/(v2·|w|)`, with `K = gcd(I_N, |w|)`.
pub fn orbit_periods(join: &JoinSpec, v: ReebRay) -> Result<OrbitPeriods> {
    join.w
        .require_inhomogeneous("orbit periods are derived for w != (1,1)")?;
    let q = reeb_quotient(join, v)?;
    let k = int_u(join.index_gcd());
    let norm = int_u(join.w.norm());
    Ok(OrbitPeriods {
        generic: Rational::new(1.into(), q.s.into()),
        at_d1: &k / (int_u(v.v1()) * &norm),
        at_d2: &k / (int_u(v.v2()) * &norm),
    })
}

/// `w = (p+q, p−q)/gcd(p+q, p−q)`.
pub fn ypq_weights(p: u64, q: u64) -> Result<WeightVector> {
    if p < 2 || q == 0 || q >= p || p.gcd(&q) != 1 {
        return Err(Error::InvalidPQ(format!(
            "need coprime 1 <= q < p with p > 1, got (p,q) = ({p},{q})"
        )));
    }
    let a = p.checked_add(q).ok_or(Error::Overflow("p+q"))?;
    let b = p - q;
    let g = a.gcd(&b);
    WeightVector::new(a / g, b / g)
}

/// The `Y^{p,q}` quotient: `w` from `(p, q)` over `ℂP¹` at `v = (1,1)`.
pub fn ypq_quotient(p: u64, q: u64) -> Result<ReebQuotient> {
    let w = ypq_weights(p, q)?;
    let join = make_join(&FanoBase::projective_space(1)?, w)?;
    reeb_quotient(&join, ReebRay::new(1, 1)?)
}
