//! The join `M ⋆_{l1,l2} S³_w`: weights, Fano bases, relative Fano indices
//! and regular Reeb rays in the `w`-Sasaki cone.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::quotient::ReebRay;

/// Coprime weights `w = (w1, w2)` with `w1 ≥ w2 ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVector {
    w1: u64,
    w2: u64,
}

impl WeightVector {
    pub fn new(w1: u64, w2: u64) -> Result<Self> {
        if w1 == 0 || w2 == 0 {
            return Err(Error::InvalidInput(format!(
                "weights must be positive, got ({w1},{w2})"
            )));
        }
        if w1.gcd(&w2) != 1 {
            return Err(Error::InvalidInput(format!(
                "weights ({w1},{w2}) are not coprime"
            )));
        }
        if w1 < w2 {
            return Err(Error::InvalidInput(format!(
                "weights must satisfy w1 >= w2, got ({w1},{w2})"
            )));
        }
        // |w| must fit; everything downstream is bounded by products of it.
        w1.checked_add(w2).ok_or(Error::Overflow("|w|"))?;
        Ok(WeightVector { w1, w2 })
    }

    pub fn w1(&self) -> u64 {
        self.w1
    }

    pub fn w2(&self) -> u64 {
        self.w2
    }

    /// `|w| = w1 + w2`
    pub fn norm(&self) -> u64 {
        self.w1 + self.w2
    }

    /// `W = w1·w2`
    pub fn product(&self) -> Result<u64> {
        self.w1.checked_mul(self.w2).ok_or(Error::Overflow("w1*w2"))
    }

    /// `w = (1,1)`, excluded by the regularity results.
    pub fn is_homogeneous(&self) -> bool {
        self.w1 == 1 && self.w2 == 1
    }

    pub(crate) fn require_inhomogeneous(&self, reason: &'static str) -> Result<()> {
        if self.is_homogeneous() {
            Err(Error::UnsupportedWeight {
                w1: self.w1,
                w2: self.w2,
                reason,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.w1, self.w2)
    }
}

/// Parses `"a,b"` (optionally parenthesized).
pub(crate) fn parse_pair(text: &str) -> Result<(u64, u64)> {
    let bad = || Error::InvalidInput(format!("expected a pair like 3,1, got {text:?}"));
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

impl FromStr for WeightVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = parse_pair(s)?;
        WeightVector::new(a, b)
    }
}

/// Cohomology family of the base; selects the ring constructor in
/// [`crate::topology`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseFamily {
    /// `ℂP^r`
    ProjectiveSpace(u32),
    /// `ℂP¹ × ℂP¹`
    QuadricProduct,
    /// `ℂP² # k·(−ℂP²)`, `1 ≤ k ≤ 8`
    DelPezzo(u8),
    /// Only `(I_N, d_N)` known.
    Custom,
}

/// Kähler–Einstein Fano base `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FanoBase {
    pub name: String,
    /// Complex dimension.
    pub d_n: u32,
    pub fano_index: u64,
    pub family: BaseFamily,
}

impl FanoBase {
    pub fn projective_space(r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("projective space needs r >= 1".into()));
        }
        Ok(FanoBase {
            name: format!("CP^{r}"),
            d_n: r,
            fano_index: u64::from(r) + 1,
            family: BaseFamily::ProjectiveSpace(r),
        })
    }

    pub fn quadric_product() -> Self {
        FanoBase {
            name: "CP^1 x CP^1".into(),
            d_n: 2,
            fano_index: 2,
            family: BaseFamily::QuadricProduct,
        }
    }

    /// Blow-up of `ℂP²` at `k` generic points; Fano index 1 for every `k`.
    pub fn del_pezzo(k: u8) -> Result<Self> {
        if !(1..=8).contains(&k) {
            return Err(Error::InvalidInput(format!(
                "del Pezzo surfaces need 1 <= k <= 8, got {k}"
            )));
        }
        Ok(FanoBase {
            name: format!("CP^2 # {k}(-CP^2)"),
            d_n: 2,
            fano_index: 1,
            family: BaseFamily::DelPezzo(k),
        })
    }

    pub fn custom(fano_index: u64, d_n: u32) -> Result<Self> {
        if fano_index == 0 || d_n == 0 {
            return Err(Error::InvalidInput(format!(
                "custom base needs I_N >= 1 and d_N >= 1, got I_N = {fano_index}, d_N = {d_n}"
            )));
        }
        Ok(FanoBase {
            name: format!("custom(I_N={fano_index}, d_N={d_n})"),
            d_n,
            fano_index,
            family: BaseFamily::Custom,
        })
    }

    /// Inverse of the [`FromStr`] grammar.
    pub fn spec_string(&self) -> String {
        match self.family {
            BaseFamily::ProjectiveSpace(r) => format!("cpn:{r}"),
            BaseFamily::QuadricProduct => "quadric".into(),
            BaseFamily::DelPezzo(k) => format!("delpezzo:{k}"),
            BaseFamily::Custom => format!("custom:{},{}", self.fano_index, self.d_n),
        }
    }
}

impl FromStr for FanoBase {
    type Err = Error;

    /// `cpn:<r>` | `quadric` | `delpezzo:<k>` | `custom:<I_N>,<d_N>`
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidInput(format!(
                "unknown base {s:?}; expected cpn:<r>, quadric, delpezzo:<k> or custom:<I_N>,<d_N>"
            ))
        };
        let s = s.trim();
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "cpn" => FanoBase::projective_space(arg.parse().map_err(|_| bad())?),
            "quadric" if arg.is_empty() => Ok(FanoBase::quadric_product()),
            "delpezzo" => FanoBase::del_pezzo(arg.parse().map_err(|_| bad())?),
            "custom" => {
                let (i, d) = parse_pair(arg).map_err(|_| bad())?;
                FanoBase::custom(i, u32::try_from(d).map_err(|_| bad())?)
            }
            _ => Err(bad()),
        }
    }
}

/// The join with its relative Fano indices and smoothness certificate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JoinSpec {
    pub base: FanoBase,
    pub w: WeightVector,
    pub l1: u64,
    pub l2: u64,
    /// `gcd(l2, l1·w1·w2)`, equal to 1 for every constructed join.
    pub smoothness_gcd: u64,
}

impl JoinSpec {
    /// `K = gcd(I_N, |w|)`
    pub fn index_gcd(&self) -> u64 {
        self.base.fano_index.gcd(&self.w.norm())
    }
}

/// Builds the join with `l1 = I_N / gcd(|w|, I_N)` and `l2 = |w| / gcd(|w|, I_N)`,
/// the unique coprime solution of `l2·I_N = |w|·l1`.
pub fn make_join(base: &FanoBase, w: WeightVector) -> Result<JoinSpec> {
    let norm = w.norm();
    let g = norm.gcd(&base.fano_index);
    let l1 = base.fano_index / g;
    let l2 = norm / g;
    let l1w1w2 = (l1 as u128) * (w.w1() as u128) * (w.w2() as u128);
    let smoothness_gcd = (l2 as u128).gcd(&l1w1w2) as u64;
    if smoothness_gcd != 1 {
        return Err(Error::SmoothnessViolation {
            l1,
            l2,
            gcd: smoothness_gcd,
        });
    }
    Ok(JoinSpec {
        base: base.clone(),
        w,
        l1,
        l2,
        smoothness_gcd,
    })
}

/// The `w`-Sasaki cone has a regular Reeb field exactly at `v = (1,1)` and
/// only when `l2` divides `w1 − w2`.
pub fn has_regular_ray(join: &JoinSpec, v: ReebRay) -> Result<bool> {
    join.w
        .require_inhomogeneous("regular rays are classified for w != (1,1)")?;
    Ok(v.is_diagonal() && (join.w.w1() - join.w.w2()) % join.l2 == 0)
}

/// All `w ≠ (1,1)` whose cone over `base` contains a regular Reeb field,
/// sorted lexicographically.
///
/// For each divisor `K` of `I_N` and `1 ≤ j < K` the candidate is
/// `((K+j)/g, (K−j)/g)` with `g = gcd(K+j, K−j)`; it is kept only when
/// `gcd(I_N, |w|)` really equals `K`.
pub fn enumerate_regular_cones(base: &FanoBase) -> Vec<WeightVector> {
    let index = base.fano_index;
    let mut found: Vec<WeightVector> = (1..=index)
        .filter(|k| index % k == 0)
        .flat_map(|k| {
            (1..k).filter_map(move |j| {
                let g = (k + j).gcd(&(k - j));
                let w = WeightVector::new((k + j) / g, (k - j) / g).ok()?;
                (index.gcd(&w.norm()) == k).then_some(w)
            })
        })
        .collect();
    found.sort();
    found.dedup();
    found
}
