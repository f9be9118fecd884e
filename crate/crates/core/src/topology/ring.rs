use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Finitely generated abelian group `ℤ^rank ⊕ ⨁ ℤ_{dᵢ}`.
///
/// `cyclic_factors` keeps the factors in the order and shape they were
/// supplied; `invariant_factors` is the canonical form `d₁ | d₂ | …` with all
/// `dᵢ > 1`. Equality compares the canonical form only.
#[derive(Clone, Debug, Eq)]
pub struct AbelianGroup {
    pub free_rank: u32,
    pub cyclic_factors: Vec<BigUint>,
    pub invariant_factors: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn new(free_rank: u32, cyclic_factors: Vec<BigUint>) -> Self {
        let cyclic_factors: Vec<BigUint> =
            cyclic_factors.into_iter().filter(|c| !c.is_one()).collect();
        let invariant_factors = invariant_form(&cyclic_factors);
        AbelianGroup {
            free_rank,
            cyclic_factors,
            invariant_factors,
        }
    }

    pub fn trivial() -> Self {
        Self::new(0, Vec::new())
    }

    pub fn free(rank: u32) -> Self {
        Self::new(rank, Vec::new())
    }

    pub fn cyclic(order: impl Into<BigUint>) -> Self {
        Self::new(0, vec![order.into()])
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigUint {
        self.invariant_factors.iter().product()
    }

    /// Same group with torsion written in invariant-factor form.
    pub fn torsion(&self) -> AbelianGroup {
        Self::new(0, self.invariant_factors.clone())
    }

    fn render(&self, factors: &[BigUint]) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        // Collapse runs of equal factors into powers.
        let mut i = 0;
        while i < factors.len() {
            let mut j = i;
            while j < factors.len() && factors[j] == factors[i] {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z_{}", factors[i]));
            } else {
                parts.push(format!("(Z_{})^{}", factors[i], j - i));
            }
            i = j;
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" x ")
        }
    }

    /// Rendering in the supplied cyclic factors, e.g. `(Z_3)^3 x Z_2`.
    pub fn as_written(&self) -> String {
        self.render(&self.cyclic_factors)
    }
}

impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.invariant_factors == other.invariant_factors
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&self.invariant_factors))
    }
}

/// Replaces every pair `(a, b)` by `(gcd, lcm)` until the list is a
/// divisibility chain, then drops units.
fn invariant_form(factors: &[BigUint]) -> Vec<BigUint> {
    let mut d: Vec<BigUint> = factors.to_vec();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.retain(|x| !x.is_one());
    d
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Integer combination of monomials set to zero; exponents are indexed by
/// generator position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(BigInt, Vec<u32>)>,
}

impl Relation {
    pub fn monomial(coeff: impl Into<BigInt>, exponents: Vec<u32>) -> Self {
        Relation {
            terms: vec![(coeff.into(), exponents)],
        }
    }

    pub fn binomial(a: Vec<u32>, b: Vec<u32>) -> Self {
        Relation {
            terms: vec![(BigInt::one(), a), (-BigInt::one(), b)],
        }
    }

    fn degree(&self, gens: &[Generator]) -> u32 {
        let (_, e) = &self.terms[0];
        monomial_degree(e, gens)
    }

    pub fn render(&self, gens: &[Generator]) -> String {
        let mut out = String::new();
        for (k, (c, e)) in self.terms.iter().enumerate() {
            let mono = render_monomial(e, gens);
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&mono);
        }
        out
    }
}

fn monomial_degree(e: &[u32], gens: &[Generator]) -> u32 {
    e.iter().zip(gens).map(|(k, g)| k * g.degree).sum()
}

fn render_monomial(e: &[u32], gens: &[Generator]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(gens)
        .filter(|(k, _)| **k > 0)
        .map(|(k, g)| {
            if *k == 1 {
                g.name.clone()
            } else {
                format!("{}^{}", g.name, k)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Graded-commutative ring `ℤ[generators]/(relations)` truncated above `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
    pub dim: u32,
    pub groups_by_degree: BTreeMap<u32, AbelianGroup>,
}

impl RingPresentation {
    /// Builds the presentation and derives every graded piece from it.
    pub fn new(generators: Vec<Generator>, relations: Vec<Relation>, dim: u32) -> Self {
        let groups_by_degree = derive_groups(&generators, &relations, dim);
        RingPresentation {
            generators,
            relations,
            dim,
            groups_by_degree,
        }
    }

    pub fn group(&self, degree: u32) -> AbelianGroup {
        self.groups_by_degree
            .get(&degree)
            .cloned()
            .unwrap_or_else(AbelianGroup::trivial)
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|r| r.render(&self.generators))
            .collect()
    }

    /// `rank Hᵠ = rank H^{dim−q}` and `tors Hᵠ ≅ tors H^{dim+1−q}`.
    pub fn satisfies_poincare_duality(&self) -> bool {
        (0..=self.dim).all(|q| {
            let h = self.group(q);
            let rank_ok = h.free_rank == self.group(self.dim - q).free_rank;
            let tors_ok = q == 0 || h.torsion() == self.group(self.dim + 1 - q).torsion();
            rank_ok && tors_ok
        })
    }
}

/// All exponent vectors of total degree `d`; odd generators square to zero.
fn monomials_of_degree(gens: &[Generator], d: u32) -> Vec<Vec<u32>> {
    fn walk(gens: &[Generator], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == gens.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let g = &gens[i];
        let cap = if g.degree % 2 == 1 { 1 } else { left / g.degree };
        for k in 0..=cap.min(left / g.degree) {
            cur.push(k);
            walk(gens, i + 1, left - k * g.degree, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    walk(gens, 0, d, &mut Vec::new(), &mut out);
    out
}

/// `Hᵈ = ℤ^{monomials of degree d} / (relations · monomials)`, reduced to
/// Smith normal form. Products of two odd generators never land in degree
/// `≤ dim` for the supported families, so no signs arise.
pub fn derive_groups(
    gens: &[Generator],
    relations: &[Relation],
    dim: u32,
) -> BTreeMap<u32, AbelianGroup> {
    let mut groups = BTreeMap::new();
    for d in 0..=dim {
        let basis = monomials_of_degree(gens, d);
        if basis.is_empty() {
            groups.insert(d, AbelianGroup::trivial());
            continue;
        }
        let index: BTreeMap<&Vec<u32>, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for rel in relations {
            let e = rel.degree(gens);
            if e > d {
                continue;
            }
            for mult in monomials_of_degree(gens, d - e) {
                let mut row = vec![BigInt::zero(); basis.len()];
                let mut any = false;
                for (c, mono) in &rel.terms {
                    let prod: Vec<u32> = mono.iter().zip(&mult).map(|(a, b)| a + b).collect();
                    let vanishes = prod
                        .iter()
                        .zip(gens)
                        .any(|(k, g)| g.degree % 2 == 1 && *k > 1);
                    if vanishes {
                        continue;
                    }
                    if let Some(&col) = index.get(&prod) {
                        row[col] += c;
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
        let (rank, diag) = smith_diagonal(rows, basis.len());
        let torsion = diag
            .into_iter()
            .map(|x| x.abs().to_biguint().expect("absolute value"))
            .collect();
        groups.insert(d, AbelianGroup::new((basis.len() - rank) as u32, torsion));
    }
    groups
}

/// Diagonalizes an integer matrix by unimodular row and column operations.
/// Returns the rank and the nonzero diagonal entries.
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>, ncols: usize) -> (usize, Vec<BigInt>) {
    let nrows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..ncols {
                    let sub = &q * &a[t][j];
                    a[i][j] -= sub;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // A remainder smaller than the pivot survived; move it in place.
            let mut best = (t, t);
            for i in t..nrows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    (diag.len(), diag)
}
