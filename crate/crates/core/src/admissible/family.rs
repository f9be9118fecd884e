use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{int, ExactPolynomial, Rational};
use crate::join::{make_join, FanoBase, JoinSpec, WeightVector};
use crate::quotient::{ypq_weights, ReebRay};

/// `(A, B) = (∫(1−𝔷)K, ∫(1+𝔷)K)` over `[−1, 1]` with
/// `K = ((k+1) + (k−1)𝔷)^{d_N}`. For `k > 1`, `0 < A < B`.
pub fn lemma_integrals(k: &Rational, d_n: u32) -> (Rational, Rational) {
    let one = Rational::one();
    let kernel = ExactPolynomial::linear(k + &one, k - &one).pow(d_n);
    let (lo, hi) = (int(-1), int(1));
    let a = (ExactPolynomial::from_ints(&[1, -1]) * &kernel).integrate(&lo, &hi);
    let b = (ExactPolynomial::from_ints(&[1, 1]) * &kernel).integrate(&lo, &hi);
    (a, b)
}

fn check_k(k: &Rational) -> Result<()> {
    if k <= &Rational::one() {
        return Err(Error::InvalidK(format!("{}/{}", k.numer(), k.denom())));
    }
    Ok(())
}

/// `t(k) = A / (k·B)`: the weight ratio for which `c = k·t` is an Einstein ray.
pub fn t_from_k(k: &Rational, d_n: u32) -> Result<Rational> {
    check_k(k)?;
    let (a, b) = lemma_integrals(k, d_n);
    Ok(a / (k * b))
}

/// Closed form for `d_N = 1`: `t = (2+k)/(k(1+2k))`.
pub fn t_from_k_linear(k: &Rational) -> Result<Rational> {
    check_k(k)?;
    Ok((int(2) + k) / (k * (int(1) + int(2) * k)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub k: Rational,
    pub t: Rational,
    pub c: Rational,
    pub w: WeightVector,
    pub v: ReebRay,
    /// Present when a base was supplied.
    pub join: Option<JoinSpec>,
}

fn to_u64(x: &BigInt, what: &'static str) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Overflow(what))
}

/// The quasi-regular Einstein ray attached to a rational `k > 1`:
/// `w2/w1 = t(k)` and `v2/v1 = k·t(k)`, both in lowest terms.
pub fn quasiregular_family(
    k: &Rational,
    d_n: u32,
    base: Option<&FanoBase>,
) -> Result<FamilyMember> {
    let t = t_from_k(k, d_n)?;
    let c = k * &t;
    let w = WeightVector::new(to_u64(t.denom(), "w1")?, to_u64(t.numer(), "w2")?)?;
    let v = ReebRay::new(to_u64(c.denom(), "v1")?, to_u64(c.numer(), "v2")?)?;
    let join = base.map(|b| make_join(b, w)).transpose()?;
    Ok(FamilyMember {
        k: k.clone(),
        t,
        c,
        w,
        v,
        join,
    })
}

/// `Y^{p,q}` in join language: `w = (p+q, p−q)/g`, `l1 = g`, `l2 = p` with
/// `g = gcd(p+q, p−q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct YpqBridge {
    pub p: u64,
    pub q: u64,
    pub w: WeightVector,
    pub l1: u64,
    pub l2: u64,
}

impl YpqBridge {
    /// `k = (q + √(4p² − 3q²)) / (2(p − q))` when `4p² − 3q²` is a square.
    pub fn quasi_regular_k(&self) -> Option<Rational> {
        let (p, q) = (BigInt::from(self.p), BigInt::from(self.q));
        let disc = BigInt::from(4) * &p * &p - BigInt::from(3) * &q * &q;
        let n = disc.sqrt();
        (&n * &n == disc).then(|| Rational::new(&q + n, BigInt::from(2) * (&p - &q)))
    }
}

pub fn ypq_bridge(p: u64, q: u64) -> Result<YpqBridge> {
    let w = ypq_weights(p, q)?;
    Ok(YpqBridge {
        p,
        q,
        w,
        l1: (p + q).gcd(&(p - q)),
        l2: p,
    })
}

/// `k = a/b` in lowest terms gives `p = ab + a² + b²`, `q = a² − b²`.
pub fn ypq_from_ab(a: u64, b: u64) -> Result<(u64, u64)> {
    if b == 0 || a <= b || a.gcd(&b) != 1 {
        return Err(Error::InvalidPQ(format!(
            "need coprime a > b >= 1, got (a,b) = ({a},{b})"
        )));
    }
    let (a, b) = (a as u128, b as u128);
    let p = a * b + a * a + b * b;
    let q = a * a - b * b;
    Ok((
        u64::try_from(p).map_err(|_| Error::Overflow("p"))?,
        u64::try_from(q).map_err(|_| Error::Overflow("q"))?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::ke_defect;
    use crate::exact::rat;
    use num_traits::{Signed, Zero};

    #[test]
    fn k_two_in_dimension_one() {
        let m = quasiregular_family(&int(2), 1, None).unwrap();
        assert_eq!(m.t, rat(2, 5));
        assert_eq!(t_from_k_linear(&int(2)).unwrap(), rat(2, 5));
        assert_eq!((m.w.w1(), m.w.w2()), (5, 2));
        assert_eq!((m.v.v1(), m.v.v2()), (5, 4));
        assert!(ke_defect(m.w, m.v, 1).unwrap().is_zero());
    }

    #[test]
    fn k_two_in_dimension_two() {
        let m = quasiregular_family(&int(2), 2, None).unwrap();
        assert!(ke_defect(m.w, m.v, 2).unwrap().is_zero());
        assert!(m.t.is_positive() && m.t < Rational::one());
    }

    #[test]
    fn k_must_exceed_one() {
        assert!(matches!(t_from_k(&int(1), 1), Err(Error::InvalidK(_))));
        assert!(matches!(
            quasiregular_family(&rat(1, 2), 1, None),
            Err(Error::InvalidK(_))
        ));
    }

    #[test]
    fn ypq_examples() {
        let b = ypq_bridge(7, 3).unwrap();
        assert_eq!((b.w.w1(), b.w.w2(), b.l1, b.l2), (5, 2, 2, 7));
        assert_eq!(b.quasi_regular_k(), Some(int(2)));
        let b = ypq_bridge(2, 1).unwrap();
        assert_eq!((b.w.w1(), b.w.w2(), b.l1, b.l2), (3, 1, 1, 2));
        assert_eq!(b.quasi_regular_k(), None);
        assert_eq!(ypq_from_ab(2, 1).unwrap(), (7, 3));
        assert!(matches!(ypq_from_ab(2, 2), Err(Error::InvalidPQ(_))));
        assert!(matches!(ypq_bridge(6, 3), Err(Error::InvalidPQ(_))));
    }
}
