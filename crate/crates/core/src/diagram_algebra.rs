//! Exact arithmetic in the partition algebra `Par_d(δ)` and the Brauer
//! algebra `Br_d(δ)`: diagram product, symmetric-group embedding, generators,
//! diagram/orbit basis change, and centralizer bases.
//!
//! Coefficients live in `ℤ[δ]` with the parameter kept formal, so a single
//! computation certifies every specialization; evaluation at a rational `δ`
//! happens only at API boundaries.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use crate::partitions::{
    conjugation_orbits, enumerate_partitions, moebius, Permutation, SetPartition,
};
use crate::{Caps, Error, Result};

/// Polynomial in the formal parameter `δ` with integer coefficients.
/// Zero coefficients are never stored; the zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeltaPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl DeltaPoly {
    pub fn zero() -> Self {
        DeltaPoly::default()
    }

    pub fn one() -> Self {
        DeltaPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        DeltaPoly { coeffs }
    }

    /// The monomial `δ^k`.
    pub fn delta_pow(k: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(k, BigInt::one());
        DeltaPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&k, v)| (k, v))
    }

    pub fn add_assign(&mut self, other: &DeltaPoly) {
        for (&k, v) in &other.coeffs {
            let entry = self.coeffs.entry(k).or_insert_with(BigInt::zero);
            *entry += v;
            if entry.is_zero() {
                self.coeffs.remove(&k);
            }
        }
    }

    pub fn mul(&self, other: &DeltaPoly) -> DeltaPoly {
        let mut out = DeltaPoly::zero();
        for (&ka, va) in &self.coeffs {
            for (&kb, vb) in &other.coeffs {
                let entry = out.coeffs.entry(ka + kb).or_insert_with(BigInt::zero);
                *entry += va * vb;
                if entry.is_zero() {
                    out.coeffs.remove(&(ka + kb));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> DeltaPoly {
        if c.is_zero() {
            return DeltaPoly::zero();
        }
        DeltaPoly {
            coeffs: self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> DeltaPoly {
        DeltaPoly {
            coeffs: self.coeffs.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }

    /// Ring homomorphism `ℤ[δ] → ℚ` at `δ = value`.
    pub fn eval(&self, value: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut pow = BigRational::one();
        let mut current = 0u32;
        for (&k, c) in &self.coeffs {
            while current < k {
                pow *= value;
                current += 1;
            }
            acc += BigRational::from(c.clone()) * &pow;
        }
        acc
    }
}

impl fmt::Display for DeltaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*δ")?,
                _ => write!(f, "{c}*δ^{k}")?,
            }
        }
        Ok(())
    }
}

/// Which coordinates an element is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Diagram,
    Orbit,
}

/// Which diagram algebra a basis request refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algebra {
    Partition,
    Brauer,
}

/// A finite `ℤ[δ]`-linear combination of set partitions of `[1, 2d]`,
/// tagged with the basis its coordinates refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    d: usize,
    basis: Basis,
    terms: BTreeMap<SetPartition, DeltaPoly>,
}

impl AlgebraElement {
    pub fn zero(d: usize, basis: Basis) -> Self {
        AlgebraElement {
            d,
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element for a single partition with coefficient 1.
    pub fn from_partition(p: SetPartition, basis: Basis) -> Result<Self> {
        if p.size() % 2 != 0 {
            return Err(Error::SizeMismatch {
                left: p.size(),
                right: p.size() + 1,
            });
        }
        let d = p.size() / 2;
        let mut terms = BTreeMap::new();
        terms.insert(p, DeltaPoly::one());
        Ok(AlgebraElement {
            d,
            basis: basis,
            terms,
        })
    }

    /// The identity diagram `{{i, i'}}`.
    pub fn identity(d: usize) -> Self {
        embed_permutation(&Permutation::identity(d))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SetPartition, &DeltaPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, p: &SetPartition) -> DeltaPoly {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, p: SetPartition, c: DeltaPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p).or_insert_with(DeltaPoly::zero);
        entry.add_assign(&c);
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(key) = key {
                self.terms.remove(&key);
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &DeltaPoly) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.d, self.basis);
        for (p, v) in &self.terms {
            out.add_term(p.clone(), v.mul(c));
        }
        out
    }

    fn check_compatible(&self, other: &AlgebraElement) -> Result<()> {
        if self.d != other.d {
            return Err(Error::SizeMismatch {
                left: self.d,
                right: other.d,
            });
        }
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                expected: match self.basis {
                    Basis::Diagram => "diagram",
                    Basis::Orbit => "orbit",
                },
            });
        }
        Ok(())
    }

    /// Evaluates every coefficient at `δ = value`, yielding the coordinate
    /// vector over partitions (zero coordinates omitted).
    pub fn eval_delta(&self, value: &BigRational) -> BTreeMap<SetPartition, BigRational> {
        self.terms
            .iter()
            .filter_map(|(p, c)| {
                let v = c.eval(value);
                if v.is_zero() {
                    None
                } else {
                    Some((p.clone(), v))
                }
            })
            .collect()
    }

    /// Stable JSON form, e.g.
    /// `{"d":2,"basis":"diagram","terms":[{"partition":"1 3|2 4","coeff":[[0,"1"]]}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(p, c)| {
                let coeff: Vec<serde_json::Value> = c
                    .coeffs()
                    .map(|(k, v)| serde_json::json!([k, v.to_string()]))
                    .collect();
                serde_json::json!({ "partition": p.to_string(), "coeff": coeff })
            })
            .collect();
        serde_json::json!({
            "d": self.d,
            "basis": match self.basis { Basis::Diagram => "diagram", Basis::Orbit => "orbit" },
            "terms": terms,
        })
    }

    /// Parses the JSON form produced by [`AlgebraElement::to_json`].
    pub fn from_json(value: &serde_json::Value) -> Result<AlgebraElement> {
        let bad = |m: &str| Error::Parse(format!("algebra element json: {m}"));
        let d = value["d"].as_u64().ok_or_else(|| bad("missing d"))? as usize;
        let basis = match value["basis"].as_str() {
            Some("diagram") => Basis::Diagram,
            Some("orbit") => Basis::Orbit,
            _ => return Err(bad("basis must be \"diagram\" or \"orbit\"")),
        };
        let mut out = AlgebraElement::zero(d, basis);
        for term in value["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let p: SetPartition = term["partition"]
                .as_str()
                .ok_or_else(|| bad("partition"))?
                .parse()?;
            if p.size() != 2 * d {
                return Err(Error::SizeMismatch {
                    left: p.size(),
                    right: 2 * d,
                });
            }
            let mut poly = DeltaPoly::zero();
            for pair in term["coeff"].as_array().ok_or_else(|| bad("coeff"))? {
                let k = pair[0].as_u64().ok_or_else(|| bad("exponent"))? as u32;
                let c: BigInt = pair[1]
                    .as_str()
                    .ok_or_else(|| bad("coefficient string"))?
                    .parse()
                    .map_err(|_| bad("coefficient value"))?;
                poly.add_assign(&DeltaPoly::delta_pow(k).scale(&c));
            }
            out.add_term(p, poly);
        }
        Ok(out)
    }
}

/// Stacks `p1` on top of `p2`, identifies the middle row, and returns the
/// resulting partition together with the number of connected components that
/// were removed because they lay entirely in the middle row.
///
/// Union-find over `3d` nodes: result bottom `0..d`, middle `d..2d`
/// (top of `p2` glued to bottom of `p1`), result top `2d..3d`.
pub fn compose_partitions(
    p1: &SetPartition,
    p2: &SetPartition,
) -> Result<(SetPartition, u32)> {
    if p1.size() != p2.size() {
        return Err(Error::SizeMismatch {
            left: p1.size(),
            right: p2.size(),
        });
    }
    if p1.size() % 2 != 0 {
        return Err(Error::SizeMismatch {
            left: p1.size(),
            right: p1.size() + 1,
        });
    }
    let d = p1.size() / 2;
    let mut uf = UnionFind::new(3 * d);
    // p2 occupies result bottom (elements 1..=d -> nodes 0..d) and the middle
    // (elements d+1..=2d -> nodes d..2d); element e sits at node e-1 either way.
    for block in p2.blocks() {
        for w in block.windows(2) {
            uf.union(w[0] - 1, w[1] - 1);
        }
    }
    // p1 occupies the middle (bottom elements 1..=d -> nodes d..2d) and the
    // result top (elements d+1..=2d -> nodes 2d..3d): element e at node d+e-1.
    for block in p1.blocks() {
        for w in block.windows(2) {
            uf.union(d + w[0] - 1, d + w[1] - 1);
        }
    }
    // Result partition on [1, 2d]: bottom i -> node i-1, top d+j -> node 2d+j-1.
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in 1..=2 * d {
        let node = if e <= d { e - 1 } else { d + e - 1 };
        groups.entry(uf.find(node)).or_default().push(e);
    }
    let result = SetPartition::new(2 * d, groups.into_values().collect())?;
    // Removed components: middle-only roots.
    let mut middle_roots: Vec<usize> = (d..2 * d).map(|v| uf.find(v)).collect();
    middle_roots.sort_unstable();
    middle_roots.dedup();
    let mut outer_roots: Vec<usize> = (0..d)
        .chain(2 * d..3 * d)
        .map(|v| uf.find(v))
        .collect();
    outer_roots.sort_unstable();
    outer_roots.dedup();
    let removed = middle_roots
        .iter()
        .filter(|r| outer_roots.binary_search(r).is_err())
        .count() as u32;
    Ok((result, removed))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Bilinear extension of the diagram product
/// `D_{π1} · D_{π2} = δ^{[π1 ∗ π2]} D_{π1 ∗ π2}` (first factor on top).
pub fn multiply(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    if a.d != b.d {
        return Err(Error::SizeMismatch {
            left: a.d,
            right: b.d,
        });
    }
    if a.basis != Basis::Diagram || b.basis != Basis::Diagram {
        return Err(Error::BasisMismatch {
            expected: "diagram",
        });
    }
    let mut out = AlgebraElement::zero(a.d, Basis::Diagram);
    for (p1, c1) in &a.terms {
        for (p2, c2) in &b.terms {
            let (q, removed) = compose_partitions(p1, p2)?;
            let coeff = c1.mul(c2).mul(&DeltaPoly::delta_pow(removed));
            out.add_term(q, coeff);
        }
    }
    Ok(out)
}

/// The diagram `D_σ` with blocks `{i, σ(i)'}`. The embedding is a group
/// homomorphism: `multiply(embed(σ), embed(τ)) = embed(στ)`.
pub fn embed_permutation(sigma: &Permutation) -> AlgebraElement {
    let d = sigma.degree();
    let blocks = (1..=d).map(|i| vec![i, d + sigma.apply(i)]).collect();
    let p = SetPartition::new(2 * d, blocks).expect("valid permutation diagram");
    AlgebraElement::from_partition(p, Basis::Diagram).expect("even size")
}

/// The crossing generator `s_j`: strands `j` and `j+1` swapped.
pub fn generator_s(d: usize, j: usize) -> Result<AlgebraElement> {
    if j == 0 || j >= d {
        return Err(Error::IndexOutOfRange { index: j, d });
    }
    Ok(embed_permutation(&Permutation::transposition(d, j)?))
}

/// The hook generator `e_j`: blocks `{j, j+1}` and `{j', (j+1)'}`, identity
/// elsewhere.
pub fn generator_e(d: usize, j: usize) -> Result<AlgebraElement> {
    if j == 0 || j >= d {
        return Err(Error::IndexOutOfRange { index: j, d });
    }
    let mut blocks: Vec<Vec<usize>> = vec![vec![j, j + 1], vec![d + j, d + j + 1]];
    for i in 1..=d {
        if i != j && i != j + 1 {
            blocks.push(vec![i, d + i]);
        }
    }
    let p = SetPartition::new(2 * d, blocks)?;
    AlgebraElement::from_partition(p, Basis::Diagram)
}

/// Rewrites diagram coordinates in the orbit basis using the Möbius matrix:
/// `x_π = Σ_{π ⪯ ρ} μ(π, ρ) D_ρ`, inverted as
/// `orbit coordinate of τ = Σ_{ρ ⪯ τ} (diagram coordinate of ρ)`.
pub fn to_orbit_basis(a: &AlgebraElement) -> Result<AlgebraElement> {
    if a.basis != Basis::Diagram {
        return Err(Error::BasisMismatch {
            expected: "diagram",
        });
    }
    let mut out = AlgebraElement::zero(a.d, Basis::Orbit);
    for (p, c) in &a.terms {
        for tau in p.coarsenings() {
            out.add_term(tau, c.clone());
        }
    }
    Ok(out)
}

/// Rewrites orbit coordinates in the diagram basis (inverse of
/// [`to_orbit_basis`]); exact roundtrip.
pub fn from_orbit_basis(a: &AlgebraElement) -> Result<AlgebraElement> {
    if a.basis != Basis::Orbit {
        return Err(Error::BasisMismatch { expected: "orbit" });
    }
    let mut out = AlgebraElement::zero(a.d, Basis::Diagram);
    for (p, c) in &a.terms {
        for rho in p.coarsenings() {
            let mu = moebius(p, &rho)?;
            out.add_term(rho, c.scale(&mu));
        }
    }
    Ok(out)
}

/// The universe a centralizer basis is drawn from: all of `Π_{2d}` or the
/// Brauer diagrams only.
fn universe(d: usize, algebra: Algebra, caps: &Caps) -> Result<Vec<SetPartition>> {
    let all = enumerate_partitions(2 * d, caps)?;
    Ok(match algebra {
        Algebra::Partition => all,
        Algebra::Brauer => all.into_iter().filter(|p| p.is_brauer()).collect(),
    })
}

/// Orbit sums `γ = Σ_{π in orbit} D_π`, one per conjugation orbit, in
/// deterministic order (by minimal orbit element). This is a basis of the
/// centralizer of the symmetric group inside the algebra.
pub fn centralizer_basis(
    d: usize,
    algebra: Algebra,
    caps: &Caps,
) -> Result<Vec<AlgebraElement>> {
    let orbits = conjugation_orbits(d, &universe(d, algebra, caps)?)?;
    Ok(orbits
        .into_iter()
        .map(|orbit| {
            let mut el = AlgebraElement::zero(d, Basis::Diagram);
            for p in orbit {
                el.add_term(p, DeltaPoly::one());
            }
            el
        })
        .collect())
}

/// Orbit sums in orbit-basis coordinates, `Σ_{π in orbit} x_π`; combined with
/// the block-count filtration these give centralizer bases inside the image
/// of the tensor-power realization.
pub fn centralizer_basis_orbit(d: usize, caps: &Caps) -> Result<Vec<AlgebraElement>> {
    let orbits = conjugation_orbits(d, &universe(d, Algebra::Partition, caps)?)?;
    Ok(orbits
        .into_iter()
        .map(|orbit| {
            let mut el = AlgebraElement::zero(d, Basis::Orbit);
            for p in orbit {
                el.add_term(p, DeltaPoly::one());
            }
            el
        })
        .collect())
}

/// True iff all blocks of `p` have size exactly two.
pub fn is_brauer(p: &SetPartition) -> bool {
    p.is_brauer()
}
