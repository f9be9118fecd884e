use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{default_precision, sign_of, to_f64, ExactPolynomial, Rational};

/// Endpoint of a search range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl From<Rational> for Bound {
    fn from(value: Rational) -> Self {
        Bound::Finite(value)
    }
}

/// Sturm chain of the square-free part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<ExactPolynomial>,
}

impl SturmSequence {
    /// Builds `p₀ = sqf(p)`, `p₁ = p₀′`, `pᵢ₊₁ = −rem(pᵢ₋₁, pᵢ)`. Every
    /// member is rescaled by a positive constant to primitive integer
    /// coefficients, which leaves all signs intact and keeps the
    /// coefficients small.
    pub fn new(p: &ExactPolynomial) -> Self {
        let p0 = p.square_free_part().positive_primitive();
        let mut chain = vec![p0.clone()];
        if p0.degree().unwrap_or(0) == 0 {
            return SturmSequence { chain };
        }
        chain.push(p0.derivative().positive_primitive());
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push((-r).positive_primitive());
        }
        SturmSequence { chain }
    }

    pub fn square_free(&self) -> &ExactPolynomial {
        &self.chain[0]
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, bound: &Bound) -> usize {
        match bound {
            Bound::Finite(x) => Self::variations(self.chain.iter().map(|p| sign_of(&p.eval(x)))),
            Bound::PosInfinity => {
                Self::variations(self.chain.iter().map(|p| sign_of(&p.leading())))
            }
            Bound::NegInfinity => Self::variations(self.chain.iter().map(|p| {
                let s = sign_of(&p.leading());
                if p.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            })),
        }
    }

    /// Distinct real roots in the open interval `(lo, hi)`.
    pub fn count_open(&self, lo: &Bound, hi: &Bound) -> usize {
        let above = self.variations_at(lo);
        let below = self.variations_at(hi);
        // V(a) - V(b) counts roots in (a, b]; drop b itself when it is a root.
        let half_open = above.saturating_sub(below);
        match hi {
            Bound::Finite(x) if self.chain[0].eval(x).is_zero() => half_open.saturating_sub(1),
            _ => half_open,
        }
    }
}

/// Open interval `(lo, hi)` containing exactly one distinct root of the
/// polynomial it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    /// `+1` when the square-free part increases through the root, `-1` when it
    /// decreases.
    pub sign_change: i8,
    pub multiplicity: u32,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    /// Strict containment.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    /// Bisects (against the square-free part `sqf`) until the width is at
    /// most `width`.
    pub fn refine(&self, sqf: &ExactPolynomial, width: &Rational) -> Self {
        let two = Rational::from_integer(BigInt::from(2));
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        let lo_sign = sign_of(&sqf.eval(&lo));
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / &two;
            let s = sign_of(&sqf.eval(&mid));
            if s == 0 {
                // Exact rational root: centre a small interval on it.
                let delta = width.min(&(&hi - &lo)).clone() / Rational::from_integer(4.into());
                lo = &mid - &delta;
                hi = &mid + &delta;
                break;
            }
            if s == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        IsolatingInterval {
            lo,
            hi,
            sign_change: self.sign_change,
            multiplicity: self.multiplicity,
        }
    }
}

/// Strict upper bound `1 + max |aᵢ / aₙ|` on the modulus of every root.
pub fn cauchy_bound(p: &ExactPolynomial) -> Rational {
    let lead = p.leading().abs();
    let n = p.coeffs().len();
    let max = p.coeffs()[..n.saturating_sub(1)]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    max + Rational::one()
}

/// Number of distinct real roots of `p` in `(lo, hi)`.
pub fn count_roots(p: &ExactPolynomial, lo: &Bound, hi: &Bound) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    SturmSequence::new(p).count_open(lo, hi)
}

/// Isolates every distinct real root of `p` in `(lo, hi)` and refines each
/// interval to the default width 10⁻¹².
pub fn isolate_roots(p: &ExactPolynomial, lo: &Bound, hi: &Bound) -> Vec<IsolatingInterval> {
    isolate_roots_with_precision(p, lo, hi, &default_precision())
}

/// Isolates every distinct real root of `p` in the open range `(lo, hi)`.
///
/// Roots are counted with a Sturm sequence of the square-free part and
/// separated by bisection; each interval is then refined to `width`. The
/// multiplicity of each root is read off the square-free decomposition.
/// Intervals come back sorted and pairwise disjoint.
pub fn isolate_roots_with_precision(
    p: &ExactPolynomial,
    lo: &Bound,
    hi: &Bound,
    width: &Rational,
) -> Vec<IsolatingInterval> {
    assert!(!p.is_zero(), "root isolation of the zero polynomial");
    if p.degree() == Some(0) {
        return Vec::new();
    }
    let sturm = SturmSequence::new(p);
    let sqf = sturm.square_free().clone();
    let bound = cauchy_bound(&sqf);
    let lo = match lo {
        Bound::NegInfinity => -bound.clone(),
        Bound::Finite(x) => x.max(&-bound.clone()).clone(),
        Bound::PosInfinity => return Vec::new(),
    };
    let hi = match hi {
        Bound::PosInfinity => bound,
        Bound::Finite(x) => x.min(&bound).clone(),
        Bound::NegInfinity => return Vec::new(),
    };
    if lo >= hi {
        return Vec::new();
    }

    let two = Rational::from_integer(BigInt::from(2));
    let mut isolated: Vec<(Rational, Rational)> = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let count = sturm.count_open(&Bound::Finite(a.clone()), &Bound::Finite(b.clone()));
        match count {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                // Split away from roots so both halves stay open intervals
                // whose union misses nothing.
                let mut offset = Rational::zero();
                let mut step = (&b - &a) / Rational::from_integer(BigInt::from(4));
                let mid = loop {
                    let m = (&a + &b) / &two + &offset;
                    if !sqf.eval(&m).is_zero() {
                        break m;
                    }
                    step /= &two;
                    offset = step.clone();
                };
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
    }
    isolated.sort();

    let factors = p.square_free_decomposition();
    isolated
        .into_iter()
        .map(|(a, b)| {
            let multiplicity = factors
                .iter()
                .find(|(f, _)| {
                    count_roots(f, &Bound::Finite(a.clone()), &Bound::Finite(b.clone())) == 1
                })
                .map(|(_, m)| *m)
                .unwrap_or(1);
            let interval = IsolatingInterval {
                lo: a,
                hi: b,
                sign_change: 0,
                multiplicity,
            };
            tighten_endpoints(interval, &sqf).refine(&sqf, width)
        })
        .collect()
}

/// A caller-supplied endpoint may itself be a root of the square-free part
/// (the range is open). Such an endpoint is moved inward, staying on the
/// near side of the interior root, so that the sign change is visible.
fn tighten_endpoints(mut iv: IsolatingInterval, sqf: &ExactPolynomial) -> IsolatingInterval {
    let sturm = SturmSequence::new(sqf);
    let two = Rational::from_integer(BigInt::from(2));
    if sqf.eval(&iv.lo).is_zero() {
        let mut step = iv.width() / &two;
        loop {
            let candidate = &iv.lo + &step;
            if !sqf.eval(&candidate).is_zero()
                && sturm.count_open(&Bound::Finite(iv.lo.clone()), &Bound::Finite(candidate.clone())) == 0
            {
                iv.lo = candidate;
                break;
            }
            step /= &two;
        }
    }
    if sqf.eval(&iv.hi).is_zero() {
        let mut step = iv.width() / &two;
        loop {
            let candidate = &iv.hi - &step;
            if !sqf.eval(&candidate).is_zero()
                && sturm.count_open(&Bound::Finite(candidate.clone()), &Bound::Finite(iv.hi.clone())) == 0
            {
                iv.hi = candidate;
                break;
            }
            step /= &two;
        }
    }
    iv.sign_change = sign_of(&sqf.eval(&iv.hi));
    iv
}

/// True iff `p(𝔷) > 0` for every `𝔷` in the open interval `(a, b)`: no root
/// inside (Sturm count) and a positive interior sample.
pub fn positive_on_open_interval(p: &ExactPolynomial, a: &Rational, b: &Rational) -> bool {
    if p.is_zero() || a >= b {
        return false;
    }
    if count_roots(p, &Bound::Finite(a.clone()), &Bound::Finite(b.clone())) > 0 {
        return false;
    }
    let mid = (a + b) / Rational::from_integer(BigInt::from(2));
    p.eval(&mid).is_positive()
}

/// All rational roots of a nonzero polynomial, ascending.
///
/// After clearing denominators the square-free part is a primitive integer
/// polynomial with leading coefficient `L`; every rational root has the form
/// `N / L`. Each real root is isolated to width below `1 / L`, so at most one
/// such candidate lies in its interval, and the candidate is verified by
/// exact evaluation.
pub fn rational_roots(p: &ExactPolynomial) -> Vec<Rational> {
    assert!(!p.is_zero(), "rational roots of the zero polynomial");
    if p.degree() == Some(0) {
        return Vec::new();
    }
    let sqf = p.square_free_part();
    let ints = sqf.primitive_integer_coeffs();
    let lead = ints.last().cloned().unwrap_or_else(BigInt::one).abs();
    let width = Rational::new(BigInt::one(), &lead * BigInt::from(2));
    let lead_q = Rational::from_integer(lead.clone());
    let mut roots = Vec::new();
    for iv in isolate_roots_with_precision(&sqf, &Bound::NegInfinity, &Bound::PosInfinity, &width) {
        let first = (&iv.lo * &lead_q).ceil().to_integer();
        let last = (&iv.hi * &lead_q).floor().to_integer();
        let mut n = first;
        while n <= last {
            let candidate = Rational::new(n.clone(), lead.clone());
            if iv.contains(&candidate) && sqf.eval(&candidate).is_zero() {
                roots.push(candidate);
            }
            n += 1;
        }
    }
    roots.sort();
    roots
}
