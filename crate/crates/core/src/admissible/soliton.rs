use num_traits::Zero;

use super::AdmissibleData;
use crate::error::{Error, Result};
use crate::exact::{int, to_f64, Rational};
use crate::join::JoinSpec;
use crate::quotient::ReebRay;

/// Outward search stops at `|a| = 2¹⁰`.
pub const BRACKET_LIMIT: u64 = 1 << 10;

/// Below this `|a|` the moment series is used instead of the closed form.
const SERIES_RADIUS: f64 = 1.0;

/// `G(a) = ∫_{−1}^1 e^{−a𝔷} q(𝔷) d𝔷` for the KE integrand `q`, up to a
/// positive factor.
///
/// For `|a| ≤ 1` this is `Σ (−a)ⁿ/n! · ∫𝔷ⁿq`. Otherwise the closed form
/// `Σᵢ [q⁽ⁱ⁾(−1)e^{a} − q⁽ⁱ⁾(1)e^{−a}] / a^{i+1}` is evaluated after
/// multiplying through by `e^{−|a|}`, which keeps it finite for large `|a|`
/// without changing its sign.
#[derive(Clone, Debug)]
pub struct SolitonFunction {
    derivs_minus: Vec<f64>,
    derivs_plus: Vec<f64>,
    moments: Vec<f64>,
    at_zero: Rational,
}

pub fn soliton_function(data: &AdmissibleData) -> SolitonFunction {
    let q = data.ke_integrand();
    let (lo, hi) = (int(-1), int(1));
    let mut derivs_minus = Vec::new();
    let mut derivs_plus = Vec::new();
    let mut d = q.clone();
    while !d.is_zero() {
        derivs_minus.push(to_f64(&d.eval(&lo)));
        derivs_plus.push(to_f64(&d.eval(&hi)));
        d = d.derivative();
    }
    // Moments ∫𝔷ⁿq; terms beyond n = 40 are below 2·max|q|/40! for |a| ≤ 1.
    // ∫_{−1}^1 𝔷^{n+i} = 2/(n+i+1) for even n+i, 0 otherwise.
    let moments = (0..40usize)
        .map(|n| {
            let mu = q
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(i, _)| (n + i) % 2 == 0)
                .fold(Rational::zero(), |acc, (i, c)| {
                    acc + c * Rational::new(2.into(), (n + i + 1).into())
                });
            to_f64(&mu)
        })
        .collect();
    SolitonFunction {
        derivs_minus,
        derivs_plus,
        moments,
        at_zero: q.integrate(&lo, &hi),
    }
}

impl SolitonFunction {
    /// `G(0)`, exactly.
    pub fn at_zero(&self) -> &Rational {
        &self.at_zero
    }

    /// `e^{−|a|}·G(a)`: same sign as `G(a)`.
    pub fn scaled(&self, a: f64) -> f64 {
        if a == 0.0 {
            return to_f64(&self.at_zero);
        }
        if a.abs() <= SERIES_RADIUS {
            let mut term = 1.0;
            let mut sum = 0.0;
            for (n, mu) in self.moments.iter().enumerate() {
                if n > 0 {
                    term *= -a / n as f64;
                }
                sum += term * mu;
            }
            return sum * (-a.abs()).exp();
        }
        let decay = (-2.0 * a.abs()).exp();
        let (near, far) = if a > 0.0 { (1.0, -decay) } else { (decay, -1.0) };
        let mut sum = 0.0;
        let mut power = a;
        for (qm, qp) in self.derivs_minus.iter().zip(&self.derivs_plus) {
            sum += (qm * near + qp * far) / power;
            power *= a;
        }
        sum
    }

    pub fn sign(&self, a: f64) -> i8 {
        let g = self.scaled(a);
        if g > 0.0 {
            1
        } else if g < 0.0 {
            -1
        } else {
            0
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolitonSolution {
    pub a: f64,
    pub a_lo: f64,
    pub a_hi: f64,
    pub bracket_width: f64,
    /// `G(0)`, which equals the KE defect up to a positive factor.
    pub g_at_zero: Rational,
    /// The ray is Kähler–Einstein and `a = 0` exactly.
    pub exact_zero: bool,
}

/// Root of `G` bracketed by outward doubling from `±2⁻¹⁰` (on the side
/// where `G` must change sign, given `G(0)` and `G → ±∞` as `a → ±∞`),
/// then bisected to width `tol`.
pub fn solve_soliton(join: &JoinSpec, v: ReebRay, tol: f64) -> Result<SolitonSolution> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let data = AdmissibleData::from_ray(join, v)?;
    let g = soliton_function(&data);
    let at_zero = g.at_zero().clone();
    if at_zero.is_zero() {
        return Ok(SolitonSolution {
            a: 0.0,
            a_lo: 0.0,
            a_hi: 0.0,
            bracket_width: 0.0,
            g_at_zero: at_zero,
            exact_zero: true,
        });
    }
    // G(0) > 0 puts the root at negative a, G(0) < 0 at positive a.
    let direction = if at_zero > Rational::zero() { -1.0 } else { 1.0 };
    let zero_sign = -direction as i8;
    let limit = BRACKET_LIMIT as f64;
    let mut inner = 0.0;
    let mut outer = direction / 1024.0;
    while g.sign(outer) == zero_sign {
        inner = outer;
        outer *= 2.0;
        if outer.abs() > limit {
            return Err(Error::BracketNotFound {
                limit: BRACKET_LIMIT,
            });
        }
    }
    let (mut lo, mut hi) = if inner < outer {
        (inner, outer)
    } else {
        (outer, inner)
    };
    let lo_sign = g.sign(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = g.sign(mid);
        if s == 0 {
            lo = mid;
            hi = mid;
            break;
        }
        if s == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(SolitonSolution {
        a: 0.5 * (lo + hi),
        a_lo: lo,
        a_hi: hi,
        bracket_width: hi - lo,
        g_at_zero: at_zero,
        exact_zero: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::join::{make_join, FanoBase, WeightVector};

    fn join(w1: u64, w2: u64) -> JoinSpec {
        let cp1 = FanoBase::projective_space(1).unwrap();
        make_join(&cp1, WeightVector::new(w1, w2).unwrap()).unwrap()
    }

    /// Direct composite Simpson quadrature of `G` as an independent oracle.
    fn simpson(data: &AdmissibleData, a: f64) -> f64 {
        let q = data.ke_integrand();
        let n = 20_000;
        let h = 2.0 / n as f64;
        let f = |z: f64| (-a * z).exp() * q.eval_f64(z);
        let mut s = f(-1.0) + f(1.0);
        for i in 1..n {
            let z = -1.0 + i as f64 * h;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(z);
        }
        s * h / 3.0
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let j = join(3, 1);
        let data = AdmissibleData::from_ray(&j, ReebRay::new(1, 1).unwrap()).unwrap();
        let g = soliton_function(&data);
        for a in [-7.5, -2.0, -1.0, -0.3, 1e-7, 0.5, 1.0, 1.5, 4.0] {
            let expected = simpson(&data, a) * (-f64::abs(a)).exp();
            let got = g.scaled(a);
            assert!(
                (got - expected).abs() < 1e-9 * expected.abs().max(1.0),
                "a = {a}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn three_one_diagonal() {
        let j = join(3, 1);
        let sol = solve_soliton(&j, ReebRay::new(1, 1).unwrap(), 1e-12).unwrap();
        assert_eq!(sol.g_at_zero, rat(-2, 3));
        assert!(sol.a > 0.0);
        assert!(sol.bracket_width <= 1e-12);
        let data = AdmissibleData::from_ray(&j, ReebRay::new(1, 1).unwrap()).unwrap();
        let g = soliton_function(&data);
        assert!(g.sign(sol.a_lo) < 0 && g.sign(sol.a_hi) > 0);
    }

    #[test]
    fn einstein_ray_gives_zero() {
        let j = join(5, 2);
        let sol = solve_soliton(&j, ReebRay::new(5, 4).unwrap(), 1e-10).unwrap();
        assert!(sol.exact_zero);
        assert_eq!(sol.a, 0.0);
    }
}
