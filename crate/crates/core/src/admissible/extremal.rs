use num_traits::{One, Zero};

use super::{AdmissibleData, EndpointCheck};
use crate::error::{Error, Result};
use crate::exact::{int, positive_on_open_interval, ExactPolynomial, Rational};
use crate::join::JoinSpec;
use crate::quotient::ReebRay;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalSolution {
    pub data: AdmissibleData,
    /// Degree ≤ 2, with `F″ = (1 + r𝔷)^{d_N − 1}·P`.
    pub p: ExactPolynomial,
    pub f: ExactPolynomial,
    pub endpoints: EndpointCheck,
    /// `F > 0` on `(−1, 1)`, certified by Sturm counting.
    pub positive: bool,
}

/// Exact Gaussian elimination with row pivoting on the first nonzero entry.
pub fn solve_linear_system(
    mut a: Vec<Vec<Rational>>,
    mut b: Vec<Rational>,
) -> Result<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] / &a[col][col];
            for k in col..n {
                let sub = &factor * &a[col][k];
                a[row][k] -= sub;
            }
            let sub = &factor * &b[col];
            b[row] -= sub;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            acc -= &a[row][k] * &x[k];
        }
        x[row] = acc / &a[row][row];
    }
    Ok(x)
}

/// Extremal profile on the quotient by `ξ_v`.
///
/// `F = C0 + C1(𝔷+1) + Σⱼ pⱼ Bⱼ(𝔷)` where `Bⱼ` is the double antiderivative
/// from `−1` of `(1 + r𝔷)^{d_N−1}𝔷ʲ`. The five unknowns `p0, p1, p2, C0, C1`
/// are fixed by `F(±1) = 0`, the two endpoint slopes and
/// `P(−1/r) = 2·d_N·s·r`.
pub fn solve_extremal(join: &JoinSpec, v: ReebRay) -> Result<ExtremalSolution> {
    let data = AdmissibleData::from_ray(join, v)?;
    let (lo, hi) = (int(-1), int(1));
    let weight = ExactPolynomial::linear(Rational::one(), data.r.clone()).pow(data.d_n - 1);
    let basis: Vec<ExactPolynomial> = (0..3)
        .map(|j| {
            (&weight * &ExactPolynomial::monomial(Rational::one(), j))
                .antiderivative_from(&lo)
                .antiderivative_from(&lo)
        })
        .collect();
    let shifted = ExactPolynomial::from_ints(&[1, 1]);
    let one = ExactPolynomial::one();
    // Columns: p0, p1, p2, C0, C1.
    let columns: Vec<ExactPolynomial> = basis
        .iter()
        .cloned()
        .chain([one, shifted])
        .collect();
    let value_row = |x: &Rational| columns.iter().map(|c| c.eval(x)).collect::<Vec<_>>();
    let slope_row = |x: &Rational| {
        columns
            .iter()
            .map(|c| c.derivative().eval(x))
            .collect::<Vec<_>>()
    };
    let root = -Rational::one() / &data.r;
    let mut p_row: Vec<Rational> = (0..3).map(|j| root.pow(j)).collect();
    p_row.extend([Rational::zero(), Rational::zero()]);

    let (slope_lo, slope_hi) = data.endpoint_slopes();
    let target_p = int(2) * Rational::from_integer(data.d_n.into()) * &data.scalar_s * &data.r;
    let a = vec![
        value_row(&lo),
        value_row(&hi),
        slope_row(&lo),
        slope_row(&hi),
        p_row,
    ];
    let b = vec![Rational::zero(), Rational::zero(), slope_lo, slope_hi, target_p];
    let x = solve_linear_system(a, b)?;

    let p = ExactPolynomial::new(x[..3].to_vec());
    let f = columns
        .iter()
        .zip(&x)
        .fold(ExactPolynomial::zero(), |acc, (c, coef)| acc + c.scale(coef));
    let endpoints = data.check_endpoints(&f);
    let positive = positive_on_open_interval(&f, &lo, &hi);
    Ok(ExtremalSolution {
        data,
        p,
        f,
        endpoints,
        positive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::ke_profile;
    use crate::exact::rat;
    use crate::join::{make_join, FanoBase, WeightVector};

    fn join(w1: u64, w2: u64) -> JoinSpec {
        let cp1 = FanoBase::projective_space(1).unwrap();
        make_join(&cp1, WeightVector::new(w1, w2).unwrap()).unwrap()
    }

    #[test]
    fn linear_solver() {
        let a = vec![vec![int(0), int(2)], vec![int(3), int(1)]];
        let x = solve_linear_system(a, vec![int(4), int(5)]).unwrap();
        assert_eq!(x, vec![int(1), int(2)]);
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(
            solve_linear_system(singular, vec![int(1), int(1)]),
            Err(Error::SingularSystem)
        );
    }

    #[test]
    fn einstein_ray_reproduces_ke_profile() {
        let j = join(5, 2);
        let sol = solve_extremal(&j, ReebRay::new(5, 4).unwrap()).unwrap();
        assert_eq!(sol.f, ke_profile(&sol.data));
        assert_eq!(
            sol.f,
            ExactPolynomial::from_ints(&[13, 3, -13, -3]).scale(&rat(1, 420))
        );
        assert!(sol.positive);
    }

    #[test]
    fn three_one_diagonal_is_positive() {
        let j = join(3, 1);
        let sol = solve_extremal(&j, ReebRay::new(1, 1).unwrap()).unwrap();
        assert!(sol.endpoints.all_hold());
        assert!(sol.positive);
        assert!(sol.p.degree().unwrap_or(0) <= 2);
    }
}
