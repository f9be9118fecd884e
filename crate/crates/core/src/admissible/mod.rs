//! Admissible metrics on the quotient `(S_n, Δ)`: the profile `F(𝔷)`, the
//! Kähler–Einstein condition and its Einstein ray, the quasi-regular family,
//! Ricci solitons and extremal metrics.

mod extremal;
mod family;
mod soliton;

pub use extremal::{solve_extremal, solve_linear_system, ExtremalSolution};
pub use family::{
    lemma_integrals, quasiregular_family, t_from_k, t_from_k_linear, ypq_bridge, ypq_from_ab,
    FamilyMember, YpqBridge,
};
pub use soliton::{solve_soliton, soliton_function, SolitonSolution, BRACKET_LIMIT};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    int, int_u, isolate_roots_with_precision, rational_roots, Bound, ExactPolynomial,
    IsolatingInterval, Rational,
};
use crate::join::{JoinSpec, WeightVector};
use crate::quotient::{reeb_quotient, ReebQuotient, ReebRay, Regularity};

/// Data fixing an admissible Kähler class on `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleData {
    pub d_n: u32,
    /// `s_{N_n} = I_N / n`, with `n` signed.
    pub scalar_s: Rational,
    pub r: Rational,
    pub m1: u64,
    pub m2: u64,
}

impl AdmissibleData {
    pub fn new(d_n: u32, scalar_s: Rational, r: Rational, m1: u64, m2: u64) -> Result<Self> {
        if d_n == 0 || m1 == 0 || m2 == 0 {
            return Err(Error::InvalidInput(
                "admissible data needs d_N, m1, m2 >= 1".into(),
            ));
        }
        if r.is_zero() || r.abs() >= Rational::one() {
            return Err(Error::InvalidInput(format!(
                "admissible data needs 0 < |r| < 1, got r = {r}"
            )));
        }
        if scalar_s.signum() != r.signum() {
            return Err(Error::InvalidInput(
                "s_N and r must have the same sign".into(),
            ));
        }
        Ok(AdmissibleData {
            d_n,
            scalar_s,
            r,
            m1,
            m2,
        })
    }

    /// Data of the quotient by `ξ_v`: `r = (w1v2 − w2v1)/(w1v2 + w2v1)`,
    /// `s = I_N/n` and `mᵢ = vᵢ·m`.
    pub fn from_ray(join: &JoinSpec, v: ReebRay) -> Result<Self> {
        let q = reeb_quotient(join, v)?;
        Ok(Self::from_quotient(join, v, &q))
    }

    pub(crate) fn from_quotient(join: &JoinSpec, v: ReebRay, q: &ReebQuotient) -> Self {
        let (t, c) = ratios(join.w, v);
        // (c − t)/(c + t) equals the cross-ratio formula after dividing by w1·v1.
        let r = (&c - &t) / (&c + &t);
        let scalar_s = Rational::new(
            BigInt::from(join.base.fano_index),
            BigInt::from(q.signed_degree()),
        );
        AdmissibleData {
            d_n: join.base.d_n,
            scalar_s,
            r,
            m1: q.m1,
            m2: q.m2,
        }
    }

    /// `𝔭(𝔷) = (1 + r𝔷)^{d_N}`
    pub fn p_poly(&self) -> ExactPolynomial {
        ExactPolynomial::linear(Rational::one(), self.r.clone()).pow(self.d_n)
    }

    /// `(1 − 𝔷)/m2 − (1 + 𝔷)/m1`
    pub fn boundary_line(&self) -> ExactPolynomial {
        let a = Rational::new(1.into(), self.m2.into());
        let b = Rational::new(1.into(), self.m1.into());
        ExactPolynomial::linear(&a - &b, -(a + b))
    }

    /// `((1 − 𝔷)/m2 − (1 + 𝔷)/m1)·𝔭(𝔷)`, the integrand of the KE condition.
    pub fn ke_integrand(&self) -> ExactPolynomial {
        self.boundary_line() * self.p_poly()
    }

    /// `λ` with `2λ = 1/m1 + 1/m2`.
    pub fn lambda(&self) -> Rational {
        (Rational::new(1.into(), self.m1.into()) + Rational::new(1.into(), self.m2.into()))
            / int(2)
    }

    /// `2r·s − ((1+r)/m2 + (1−r)/m1)`; zero iff the admissible class is a
    /// multiple of `c₁^orb`.
    pub fn class_condition_residual(&self) -> Rational {
        let one = Rational::one();
        let lhs = int(2) * &self.r * &self.scalar_s;
        let rhs = (&one + &self.r) / int_u(self.m2) + (&one - &self.r) / int_u(self.m1);
        lhs - rhs
    }

    /// Target values `F′(−1) = 2𝔭(−1)/m2`, `F′(1) = −2𝔭(1)/m1`.
    pub fn endpoint_slopes(&self) -> (Rational, Rational) {
        let p = self.p_poly();
        (
            int(2) * p.eval(&int(-1)) / int_u(self.m2),
            int(-2) * p.eval(&int(1)) / int_u(self.m1),
        )
    }

    /// Which of the four endpoint conditions `F` satisfies exactly.
    pub fn check_endpoints(&self, f: &ExactPolynomial) -> EndpointCheck {
        let df = f.derivative();
        let (lo, hi) = self.endpoint_slopes();
        EndpointCheck {
            f_at_minus_one: f.eval(&int(-1)),
            f_at_one: f.eval(&int(1)),
            slope_at_minus_one: df.eval(&int(-1)) == lo,
            slope_at_one: df.eval(&int(1)) == hi,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointCheck {
    pub f_at_minus_one: Rational,
    /// Vanishes iff the KE integral condition holds (for the KE profile).
    pub f_at_one: Rational,
    pub slope_at_minus_one: bool,
    pub slope_at_one: bool,
}

impl EndpointCheck {
    pub fn all_hold(&self) -> bool {
        self.f_at_minus_one.is_zero()
            && self.f_at_one.is_zero()
            && self.slope_at_minus_one
            && self.slope_at_one
    }
}

/// `F(𝔷) = ∫_{−1}^𝔷 ((1−u)/m2 − (1+u)/m1)(1+ru)^{d_N} du`.
pub fn ke_profile(data: &AdmissibleData) -> ExactPolynomial {
    data.ke_integrand().antiderivative_from(&int(-1))
}

/// `t = w2/w1` and `c = v2/v1`.
pub fn ratios(w: WeightVector, v: ReebRay) -> (Rational, Rational) {
    (
        Rational::new(w.w2().into(), w.w1().into()),
        Rational::new(v.v2().into(), v.v1().into()),
    )
}

/// `f(c) = ∫_{−1}^1 ((1−c) − (1+c)𝔷)((c+t) + (c−t)𝔷)^{d_N} d𝔷`, evaluated
/// at `t = w2/w1`, `c = v2/v1`.
pub fn ke_defect(w: WeightVector, v: ReebRay, d_n: u32) -> Result<Rational> {
    let (t, c) = ratios(w, v);
    if t == c {
        return Err(Error::DegenerateRay {
            w1: w.w1(),
            w2: w.w2(),
            v1: v.v1(),
            v2: v.v2(),
        });
    }
    let one = Rational::one();
    let left = ExactPolynomial::linear(&one - &c, -(&one + &c));
    let right = ExactPolynomial::linear(&c + &t, &c - &t).pow(d_n);
    Ok((left * right).integrate(&int(-1), &int(1)))
}

fn binomial(n: u32, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| {
        acc * int_u(u64::from(n - i)) / int_u(u64::from(i + 1))
    })
}

/// `f` as a polynomial in `c` of degree `d_N + 1`, from
/// `((c+t) + (c−t)𝔷)^d = Σ C(d,j) c^j t^{d−j} (1+𝔷)^j (1−𝔷)^{d−j}`.
pub fn defect_polynomial(t: &Rational, d_n: u32) -> ExactPolynomial {
    let minus = ExactPolynomial::from_ints(&[1, -1]);
    let plus = ExactPolynomial::from_ints(&[1, 1]);
    let (lo, hi) = (int(-1), int(1));
    let mut coeffs = vec![Rational::zero(); d_n as usize + 2];
    for j in 0..=d_n {
        let kernel = plus.pow(j) * minus.pow(d_n - j);
        // ((1−c) − (1+c)𝔷) = (1 − 𝔷) − c(1 + 𝔷)
        let a = (&minus * &kernel).integrate(&lo, &hi);
        let b = (&plus * &kernel).integrate(&lo, &hi);
        let weight = binomial(d_n, j) * t.pow((d_n - j) as i32);
        coeffs[j as usize] += &weight * a;
        coeffs[j as usize + 1] -= weight * b;
    }
    ExactPolynomial::new(coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RayClass {
    Regular,
    QuasiRegular,
    Irregular,
}

impl std::fmt::Display for RayClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RayClass::Regular => "regular",
            RayClass::QuasiRegular => "quasi_regular",
            RayClass::Irregular => "irregular",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootValue {
    Rational(Rational),
    Interval(IsolatingInterval),
}

/// One Einstein ray `c` in `(t, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeRoot {
    pub value: RootValue,
    pub multiplicity: u32,
    pub classification: RayClass,
    /// Present for rational roots: `c = v2/v1`.
    pub v: Option<ReebRay>,
    pub quotient: Option<ReebQuotient>,
    pub lambda: Option<Rational>,
}

impl KeRoot {
    pub fn is_rational(&self) -> bool {
        matches!(self.value, RootValue::Rational(_))
    }

    pub fn approx(&self) -> f64 {
        match &self.value {
            RootValue::Rational(c) => crate::exact::to_f64(c),
            RootValue::Interval(iv) => iv.approx(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeSolution {
    pub t: Rational,
    pub defect_polynomial: ExactPolynomial,
    pub roots: Vec<KeRoot>,
}

/// Every root of `f` in `(t, ∞)`, each classified: rational roots give a ray
/// `v` whose quotient decides regular versus quasi-regular; irrational roots
/// are irregular and come back as isolating intervals of width ≤ `precision`.
pub fn solve_ke_ray(join: &JoinSpec, precision: &Rational) -> Result<KeSolution> {
    let w = join.w;
    if w.w1() == w.w2() {
        return Err(Error::UnsupportedWeight {
            w1: w.w1(),
            w2: w.w2(),
            reason: "the Einstein ray search assumes 0 < t < 1",
        });
    }
    if !precision.is_positive() {
        return Err(Error::InvalidInput("precision must be positive".into()));
    }
    let t = Rational::new(w.w2().into(), w.w1().into());
    let f = defect_polynomial(&t, join.base.d_n);
    let rational = rational_roots(&f);
    let intervals = isolate_roots_with_precision(
        &f,
        &Bound::Finite(t.clone()),
        &Bound::PosInfinity,
        precision,
    );
    let mut roots = Vec::with_capacity(intervals.len());
    for iv in intervals {
        let exact = rational.iter().find(|c| iv.contains(c)).cloned();
        let root = match exact {
            Some(c) => {
                let v = ReebRay::new(
                    u64::try_from(c.denom()).map_err(|_| Error::Overflow("v1"))?,
                    u64::try_from(c.numer()).map_err(|_| Error::Overflow("v2"))?,
                )?;
                let q = reeb_quotient(join, v)?;
                let data = AdmissibleData::from_quotient(join, v, &q);
                KeRoot {
                    value: RootValue::Rational(c),
                    multiplicity: iv.multiplicity,
                    classification: match q.regularity {
                        Regularity::Regular => RayClass::Regular,
                        Regularity::QuasiRegularWithBranching => RayClass::QuasiRegular,
                    },
                    v: Some(v),
                    quotient: Some(q),
                    lambda: Some(data.lambda()),
                }
            }
            None => KeRoot {
                multiplicity: iv.multiplicity,
                value: RootValue::Interval(iv),
                classification: RayClass::Irregular,
                v: None,
                quotient: None,
                lambda: None,
            },
        };
        roots.push(root);
    }
    Ok(KeSolution {
        t,
        defect_polynomial: f,
        roots,
    })
}
