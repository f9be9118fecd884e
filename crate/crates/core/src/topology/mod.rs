//! Integral cohomology rings of the join families, weight classes with
//! isomorphic rings, and the homotopy and homeomorphism obstructions for the
//! 7-dimensional sphere joins.

mod ring;

pub use ring::{derive_groups, smith_diagonal, AbelianGroup, Generator, Relation, RingPresentation};

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact::factorize;
use crate::join::{make_join, FanoBase, WeightVector};

fn gen(name: &str, degree: u32) -> Generator {
    Generator {
        name: name.into(),
        degree,
    }
}

fn exps(n: usize, set: &[(usize, u32)]) -> Vec<u32> {
    let mut e = vec![0; n];
    for &(i, k) in set {
        e[i] = k;
    }
    e
}

/// `l1 = (r+1)/gcd(|w|, r+1)`, the relative Fano index over `ℂP^r`.
pub fn sphere_join_l1(r: u32, w: WeightVector) -> u64 {
    let index = u64::from(r) + 1;
    index / w.norm().gcd(&index)
}

/// `ℤ[x,y]/(W·l1²·x², x^{r+1}, x²y, y²)` with `deg x = 2`, `deg y = 2r+1`:
/// the join `S^{2r+1} ⋆ S³_w` over `ℂP^r`.
pub fn cohomology_sphere_join(r: u32, w: WeightVector) -> Result<RingPresentation> {
    if r < 2 {
        return Err(Error::InvalidInput(format!(
            "sphere joins need r >= 2, got {r}"
        )));
    }
    let l1 = sphere_join_l1(r, w);
    let order = BigUint::from(w.w1()) * w.w2() * l1 * l1;
    let gens = vec![gen("x", 2), gen("y", 2 * r + 1)];
    let rels = vec![
        Relation::monomial(order, exps(2, &[(0, 2)])),
        Relation::monomial(1, exps(2, &[(0, r + 1)])),
        Relation::monomial(1, exps(2, &[(0, 2), (1, 1)])),
        Relation::monomial(1, exps(2, &[(1, 2)])),
    ];
    Ok(RingPresentation::new(gens, rels, 2 * r + 3))
}

/// `(l1, l2)` over `ℂP¹ × ℂP¹`: `(1, |w|/2)` for even `|w|`, else `(2, |w|)`.
pub fn quadric_join_indices(w: WeightVector) -> (u64, u64) {
    let norm = w.norm();
    if norm % 2 == 0 {
        (1, norm / 2)
    } else {
        (2, norm)
    }
}

/// `ℤ[x,y,u,z]/(x², l2·xy, W·l1²·y², z², u², zu, zx, ux, uy, y³)`, with
/// `x, y` of degree 2 and `z, u` of degree 5. The class `y³` lies in
/// `H⁶ = 0` and is listed so the graded pieces follow from the presentation.
pub fn cohomology_quadric_join(w: WeightVector) -> Result<RingPresentation> {
    let (l1, l2) = quadric_join_indices(w);
    let base = FanoBase::quadric_product();
    let join = make_join(&base, w)?;
    debug_assert_eq!((join.l1, join.l2), (l1, l2));
    let order = BigUint::from(w.w1()) * w.w2() * l1 * l1;
    let (x, y, u, z) = (0, 1, 2, 3);
    let gens = vec![gen("x", 2), gen("y", 2), gen("u", 5), gen("z", 5)];
    let e = |set: &[(usize, u32)]| exps(4, set);
    let rels = vec![
        Relation::monomial(1, e(&[(x, 2)])),
        Relation::monomial(l2, e(&[(x, 1), (y, 1)])),
        Relation::monomial(order, e(&[(y, 2)])),
        Relation::monomial(1, e(&[(z, 2)])),
        Relation::monomial(1, e(&[(u, 2)])),
        Relation::monomial(1, e(&[(z, 1), (u, 1)])),
        Relation::monomial(1, e(&[(z, 1), (x, 1)])),
        Relation::monomial(1, e(&[(u, 1), (x, 1)])),
        Relation::monomial(1, e(&[(u, 1), (y, 1)])),
        Relation::monomial(1, e(&[(y, 3)])),
    ];
    Ok(RingPresentation::new(gens, rels, 7))
}

/// The join of the anticanonical circle bundle over `ℂP² # k(−ℂP²)` with
/// `S³_w`. Degree-2 classes `s, α₁…α_k` satisfy `αᵢαⱼ = 0`, `W·s² = 0`,
/// `|w|·αᵢs = 0`. Degree-5 classes `β₀…β_k` pair with them so that
/// `αᵢβᵢ = sβ₀` spans `H⁷` and every other product in degree 7 vanishes;
/// `s³ = 0` records `H⁶ = 0`.
pub fn cohomology_delpezzo_join(k: u8, w: WeightVector) -> Result<RingPresentation> {
    if !(1..=8).contains(&k) {
        return Err(Error::InvalidInput(format!(
            "del Pezzo joins need 1 <= k <= 8, got {k}"
        )));
    }
    let k = usize::from(k);
    let n = 2 * (k + 1);
    // s = 0, αᵢ = i, β_j = k + 1 + j
    let s = 0;
    let alpha = |i: usize| i;
    let beta = |j: usize| k + 1 + j;
    let mut gens = vec![gen("s", 2)];
    gens.extend((1..=k).map(|i| gen(&format!("a{i}"), 2)));
    gens.extend((0..=k).map(|j| gen(&format!("b{j}"), 5)));

    let e = |set: &[(usize, u32)]| {
        let mut v = vec![0u32; n];
        for &(i, p) in set {
            v[i] += p;
        }
        v
    };
    let mut rels = Vec::new();
    for i in 1..=k {
        for j in i..=k {
            rels.push(Relation::monomial(1, e(&[(alpha(i), 1), (alpha(j), 1)])));
        }
    }
    rels.push(Relation::monomial(w.product()?, e(&[(s, 2)])));
    for i in 1..=k {
        rels.push(Relation::monomial(w.norm(), e(&[(alpha(i), 1), (s, 1)])));
    }
    rels.push(Relation::monomial(1, e(&[(s, 3)])));
    for j in 1..=k {
        rels.push(Relation::monomial(1, e(&[(s, 1), (beta(j), 1)])));
    }
    for i in 1..=k {
        for j in 0..=k {
            if j == 0 || j != i {
                rels.push(Relation::monomial(1, e(&[(alpha(i), 1), (beta(j), 1)])));
            }
        }
        rels.push(Relation::binomial(
            e(&[(alpha(i), 1), (beta(i), 1)]),
            e(&[(s, 1), (beta(0), 1)]),
        ));
    }
    let mut ring = RingPresentation::new(gens, rels, 7);
    // H⁴ as a product of k copies of ℤ_{|w|} and one ℤ_W.
    let mut written = vec![BigUint::from(w.norm()); k];
    written.push(BigUint::from(w.product()?));
    let h4 = AbelianGroup::new(0, written);
    debug_assert_eq!(ring.group(4), h4);
    ring.groups_by_degree.insert(4, h4);
    Ok(ring)
}

/// Weight vectors over `ℂP^r` sharing `H⁴`, grouped by `l1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightClass {
    pub l1: u64,
    /// `|H⁴| = W·l1²`
    pub h4_order: BigUint,
    /// `P_W⁰` / `P_W¹` for `r = 2`.
    pub label: Option<&'static str>,
    pub members: Vec<WeightVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    pub product: u64,
    pub r: u32,
    /// Number of distinct primes of `W`.
    pub prime_count: usize,
    /// All coprime `w1 > w2` with `w1·w2 = W`, sorted by `w1` descending.
    pub members: Vec<WeightVector>,
    pub classes: Vec<WeightClass>,
}

/// All coprime factorizations `W = w1·w2` with `w1 > w2` (just `(1,1)` for
/// `W = 1`), split by the order of `H⁴` of the sphere join over `ℂP^r`.
pub fn partition_classes(product: u64, r: u32) -> Result<ClassPartition> {
    if product == 0 {
        return Err(Error::InvalidInput("W must be positive".into()));
    }
    if r < 2 {
        return Err(Error::InvalidInput(format!(
            "sphere joins need r >= 2, got {r}"
        )));
    }
    let prime_powers: Vec<u64> = factorize(product)?
        .into_iter()
        .map(|(p, a)| p.pow(a))
        .collect();
    let k = prime_powers.len();
    let mut members = Vec::new();
    for mask in 0u64..(1 << k) {
        let w1: u64 = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| prime_powers[i])
            .product();
        let w2 = product / w1;
        if w1 > w2 || product == 1 {
            members.push(WeightVector::new(w1, w2)?);
        }
    }
    members.sort_by(|a, b| b.cmp(a));
    members.dedup();

    let mut classes: Vec<WeightClass> = Vec::new();
    for &w in &members {
        let l1 = sphere_join_l1(r, w);
        match classes.iter_mut().find(|c| c.l1 == l1) {
            Some(c) => c.members.push(w),
            None => classes.push(WeightClass {
                l1,
                h4_order: BigUint::from(product) * l1 * l1,
                label: None,
                members: vec![w],
            }),
        }
    }
    classes.sort_by_key(|c| c.l1);
    if r == 2 {
        for c in &mut classes {
            c.label = Some(if c.l1 == 1 { "P^0" } else { "P^1" });
        }
    }
    Ok(ClassPartition {
        product,
        r,
        prime_count: k,
        members,
        classes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equivalent,
    Inequivalent,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equivalent => "equivalent",
            Verdict::Inequivalent => "inequivalent",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyVerdict {
    pub verdict: Verdict,
    /// `|H⁴|` of both manifolds.
    pub h4_orders: (BigUint, BigUint),
    /// `l1²·W`, present once both `H⁴` agree.
    pub modulus: Option<BigUint>,
    /// `l2(w)³` and `l2(w′)³` reduced mod `modulus`.
    pub cubes: Option<(BigUint, BigUint)>,
    pub reason: &'static str,
}

/// Homotopy type of `M⁷_w` and `M⁷_{w′}` over `ℂP²`: equivalent exactly
/// when `l2(w′)³ ≡ ±l2(w)³` in the units mod `l1²·W`, decided when `|H⁴|`
/// is odd.
pub fn homotopy_equivalent_7(w: WeightVector, w_prime: WeightVector) -> Result<HomotopyVerdict> {
    let cp2 = FanoBase::projective_space(2)?;
    let a = make_join(&cp2, w)?;
    let b = make_join(&cp2, w_prime)?;
    let order = |j: &crate::join::JoinSpec| -> Result<BigUint> {
        Ok(BigUint::from(j.w.product()?) * j.l1 * j.l1)
    };
    let h4_orders = (order(&a)?, order(&b)?);
    if h4_orders.0 != h4_orders.1 {
        return Ok(HomotopyVerdict {
            verdict: Verdict::Inequivalent,
            h4_orders,
            modulus: None,
            cubes: None,
            reason: "orders of H^4 differ",
        });
    }
    let modulus = h4_orders.0.clone();
    if modulus.is_even() {
        return Ok(HomotopyVerdict {
            verdict: Verdict::Inconclusive,
            h4_orders,
            modulus: Some(modulus),
            cubes: None,
            reason: "order of H^4 is even",
        });
    }
    let cube = |l2: u64| BigUint::from(l2).modpow(&BigUint::from(3u32), &modulus);
    let (ca, cb) = (cube(a.l2), cube(b.l2));
    let neg_ca = (&modulus - &ca) % &modulus;
    let verdict = if cb == ca || cb == neg_ca {
        Verdict::Equivalent
    } else {
        Verdict::Inequivalent
    };
    Ok(HomotopyVerdict {
        verdict,
        h4_orders,
        modulus: Some(modulus),
        cubes: Some((ca, cb)),
        reason: "cubes of l2 compared up to sign in the units",
    })
}

/// First Pontrjagin class of `M⁷_w` as `(residue, modulus)`, residue in
/// `[0, modulus)`: `−6|w|² mod 9W` when `3 ∤ |w|`, `−6(|w|/3)² mod W`
/// otherwise.
pub fn p1_residue(w: WeightVector) -> Result<(BigUint, BigUint)> {
    let product = BigUint::from(w.product()?);
    let norm = w.norm();
    let (base, modulus) = if norm % 3 == 0 {
        (BigUint::from(norm / 3), product)
    } else {
        (BigUint::from(norm), product * 9u32)
    };
    let sq = (&base * &base) % &modulus;
    let six_sq = (sq * 6u32) % &modulus;
    let residue = (&modulus - six_sq) % &modulus;
    Ok((residue, modulus))
}

/// Necessary condition for `M⁷_w ≅ M⁷_{w′}` (homeomorphism):
/// `2|w′|² ≡ 2|w|² mod 3W`. `false` certifies the two are not homeomorphic.
pub fn homeo_obstruction(w: WeightVector, w_prime: WeightVector) -> Result<bool> {
    let product = w.product()?;
    if product != w_prime.product()? {
        return Err(Error::InvalidInput(format!(
            "w1*w2 must agree: {w} gives {product}, {w_prime} gives {}",
            w_prime.product()?
        )));
    }
    if product % 2 == 0 {
        return Err(Error::ParityError(product));
    }
    let modulus = BigUint::from(product) * 3u32;
    let twice_sq = |n: u64| (BigUint::from(n).pow(2) * 2u32) % &modulus;
    Ok(twice_sq(w.norm()) == twice_sq(w_prime.norm()))
}

/// Manifold families whose `π₄` is recorded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pi4Family {
    /// `M⁷_w`, a circle quotient of `S⁵ × S³`.
    SphereJoin,
    /// 3-Sasakian circle quotients of `SU(3)`.
    ThreeSasakianSu3,
}

/// `π₄` from the long exact homotopy sequence of the covering circle
/// bundle: `π₄(S⁵ × S³) = ℤ₂`, `π₄(SU(3)) = 0`.
pub fn pi4(family: Pi4Family) -> AbelianGroup {
    match family {
        Pi4Family::SphereJoin => AbelianGroup::cyclic(2u32),
        Pi4Family::ThreeSasakianSu3 => AbelianGroup::trivial(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: u64, b: u64) -> WeightVector {
        WeightVector::new(a, b).unwrap()
    }

    fn cyc(n: u64) -> AbelianGroup {
        AbelianGroup::cyclic(n)
    }

    #[test]
    fn sphere_join_groups() {
        let ring = cohomology_sphere_join(2, w(2, 1)).unwrap();
        assert_eq!(ring.group(4), cyc(2));
        assert_eq!(ring.group(0), AbelianGroup::free(1));
        assert_eq!(ring.group(2), AbelianGroup::free(1));
        assert_eq!(ring.group(5), AbelianGroup::free(1));
        assert_eq!(ring.group(7), AbelianGroup::free(1));
        assert!(ring.group(6).is_trivial());
        assert_eq!(cohomology_sphere_join(2, w(3, 1)).unwrap().group(4), cyc(27));
        // (1,1): |w| = 2 is prime to 3, so l1 = 3 and H⁴ = ℤ₉
        assert_eq!(cohomology_sphere_join(2, w(1, 1)).unwrap().group(4), cyc(9));

        let ring = cohomology_sphere_join(4, w(3, 2)).unwrap();
        for j in 2..=4 {
            assert_eq!(ring.group(2 * j), cyc(6));
        }
        assert_eq!(ring.group(9), AbelianGroup::free(1));
        assert_eq!(ring.group(11), AbelianGroup::free(1));
        assert!(ring.satisfies_poincare_duality());
        assert_eq!(ring.relation_strings()[0], "6*x^2");
    }

    #[test]
    fn quadric_join_groups() {
        assert_eq!(quadric_join_indices(w(3, 1)), (1, 2));
        let ring = cohomology_quadric_join(w(3, 1)).unwrap();
        assert!(ring.relation_strings().contains(&"2*x*y".to_string()));
        assert!(ring.relation_strings().contains(&"3*y^2".to_string()));
        assert_eq!(ring.group(4), AbelianGroup::new(0, vec![2u32.into(), 3u32.into()]));

        assert_eq!(quadric_join_indices(w(5, 2)), (2, 7));
        let ring = cohomology_quadric_join(w(5, 2)).unwrap();
        assert!(ring.relation_strings().contains(&"7*x*y".to_string()));
        assert!(ring.relation_strings().contains(&"40*y^2".to_string()));
        assert_eq!(ring.group(2), AbelianGroup::free(2));
        assert_eq!(ring.group(5), AbelianGroup::free(2));
        assert_eq!(ring.group(7), AbelianGroup::free(1));
        assert!(ring.satisfies_poincare_duality());

        let ring = cohomology_quadric_join(w(1, 1)).unwrap();
        assert!(ring.relation_strings().contains(&"x*y".to_string()));
        assert!(ring.relation_strings().contains(&"y^2".to_string()));
        assert!(ring.group(4).is_trivial());
    }

    #[test]
    fn delpezzo_join_groups() {
        let ring = cohomology_delpezzo_join(3, w(2, 1)).unwrap();
        assert_eq!(ring.group(4).as_written(), "(Z_3)^3 x Z_2");
        assert_eq!(ring.group(4), AbelianGroup::new(0, vec![3u32.into(), 3u32.into(), 6u32.into()]));
        assert_eq!(ring.group(2), AbelianGroup::free(4));
        assert_eq!(ring.group(5), AbelianGroup::free(4));
        assert_eq!(ring.group(7), AbelianGroup::free(1));
        for q in [1, 3, 6] {
            assert!(ring.group(q).is_trivial());
        }
        assert!(ring.satisfies_poincare_duality());

        let a = cohomology_delpezzo_join(1, w(3, 2)).unwrap().group(4);
        let b = cohomology_delpezzo_join(1, w(5, 1)).unwrap().group(4);
        assert_eq!(a, cyc(30));
        assert_eq!(b, cyc(30));
    }

    #[test]
    fn partitions() {
        let p = partition_classes(15, 2).unwrap();
        assert_eq!(p.members, vec![w(15, 1), w(5, 3)]);
        assert_eq!(p.classes.len(), 1);
        assert_eq!(p.classes[0].label, Some("P^1"));

        let p = partition_classes(6545, 2).unwrap();
        let expected: Vec<WeightVector> = [
            (6545, 1),
            (1309, 5),
            (935, 7),
            (595, 11),
            (385, 17),
            (187, 35),
            (119, 55),
            (85, 77),
        ]
        .iter()
        .map(|&(a, b)| w(a, b))
        .collect();
        assert_eq!(p.members, expected);
        assert_eq!(p.classes[0].label, Some("P^0"));

        assert_eq!(partition_classes(1, 2).unwrap().members, vec![w(1, 1)]);
        // r = 4: |w| = 7 gives l1 = 5, |w| = 5 gives l1 = 1
        let p = partition_classes(6, 4).unwrap();
        assert_eq!(p.classes.len(), 2);
        assert_eq!(p.classes[0].members, vec![w(3, 2)]);
        assert_eq!(p.classes[1].members, vec![w(6, 1)]);
    }

    #[test]
    fn homotopy_examples() {
        let v = homotopy_equivalent_7(w(15, 1), w(5, 3)).unwrap();
        assert_eq!(v.verdict, Verdict::Inequivalent);
        assert_eq!(v.modulus, Some(135u32.into()));
        assert_eq!(v.cubes, Some((46u32.into(), 107u32.into())));
        assert_eq!(
            homotopy_equivalent_7(w(5, 3), w(5, 3)).unwrap().verdict,
            Verdict::Equivalent
        );
        assert_eq!(
            homotopy_equivalent_7(w(3, 2), w(6, 1)).unwrap().verdict,
            Verdict::Inconclusive
        );
        assert_eq!(
            homotopy_equivalent_7(w(2, 1), w(5, 1)).unwrap().verdict,
            Verdict::Inequivalent
        );
    }

    #[test]
    fn p1_examples() {
        assert_eq!(p1_residue(w(3, 1)).unwrap(), (12u32.into(), 27u32.into()));
        assert_eq!(p1_residue(w(2, 1)).unwrap(), (0u32.into(), 2u32.into()));
        // |w| = 2: −24 mod 9
        assert_eq!(p1_residue(w(1, 1)).unwrap(), (3u32.into(), 9u32.into()));
    }

    #[test]
    fn homeo_examples() {
        assert!(homeo_obstruction(w(5, 3), w(5, 3)).unwrap());
        assert!(!homeo_obstruction(w(15, 1), w(5, 3)).unwrap());
        // 2·162² ≡ 13218 and 2·174² ≡ 1647 (mod 19635)
        assert!(!homeo_obstruction(w(85, 77), w(119, 55)).unwrap());
        assert_eq!(homeo_obstruction(w(3, 2), w(6, 1)), Err(Error::ParityError(6)));
    }

    #[test]
    fn pi4_distinguishes_families() {
        assert_ne!(pi4(Pi4Family::SphereJoin), pi4(Pi4Family::ThreeSasakianSu3));
    }
}
