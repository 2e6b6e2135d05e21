//! Set partitions of `[1, m]`, the refinement lattice with its Möbius
//! function, permutations, and the two-sided relabeling action on partitions
//! of `[1, 2d]`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num::BigInt;

use crate::{Caps, Error, Result};

/// A set partition of `{1, ..., size}` in canonical form.
///
/// Blocks are pairwise disjoint, nonempty, and cover the ground set. The
/// canonical form sorts elements inside each block and orders blocks by their
/// minima, so two values are equal exactly when they are the same partition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    size: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Builds a partition from arbitrary blocks, validating and canonicalizing.
    pub fn new(size: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; size + 1];
        let mut total = 0usize;
        let mut canon: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::Parse("empty block".into()));
            }
            block.sort_unstable();
            for &e in &block {
                if e == 0 || e > size {
                    return Err(Error::Parse(format!(
                        "element {e} outside ground set [1, {size}]"
                    )));
                }
                if seen[e] {
                    return Err(Error::Parse(format!("element {e} repeated")));
                }
                seen[e] = true;
                total += 1;
            }
            canon.push(block);
        }
        if total != size {
            return Err(Error::Parse(format!(
                "blocks cover {total} elements, expected {size}"
            )));
        }
        canon.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { size, blocks: canon })
    }

    /// Builds a partition from a restricted-growth string: `rgs[i]` is the
    /// block id of element `i + 1`, with ids assigned in order of first
    /// appearance. First-appearance ids make the block order canonical.
    pub fn from_rgs(rgs: &[usize]) -> Self {
        let nblocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); nblocks];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        SetPartition { size: rgs.len(), blocks }
    }

    /// The discrete partition `{{1}, {2}, ..., {m}}`.
    pub fn finest(size: usize) -> Self {
        SetPartition {
            size,
            blocks: (1..=size).map(|e| vec![e]).collect(),
        }
    }

    /// Size of the ground set.
    pub fn size(&self) -> usize {
        self.size
    }

    /// The blocks in canonical order.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks, written `|π|`.
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing `element` (canonical block order).
    pub fn block_of(&self, element: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&element).is_ok())
            .expect("element within ground set")
    }

    /// Restricted-growth string of the partition: block id per element.
    pub fn to_rgs(&self) -> Vec<usize> {
        let mut rgs = vec![0usize; self.size];
        for (id, block) in self.blocks.iter().enumerate() {
            for &e in block {
                rgs[e - 1] = id;
            }
        }
        rgs
    }

    /// True iff every block of `self` is contained in a block of `coarser`.
    pub fn is_refinement(&self, coarser: &SetPartition) -> Result<bool> {
        if self.size != coarser.size {
            return Err(Error::SizeMismatch {
                left: self.size,
                right: coarser.size,
            });
        }
        let rgs = coarser.to_rgs();
        Ok(self
            .blocks
            .iter()
            .all(|b| b.iter().all(|&e| rgs[e - 1] == rgs[b[0] - 1])))
    }

    /// All coarsenings of `self` (partitions `ρ` with `self ⪯ ρ`), obtained by
    /// partitioning the set of blocks, in restricted-growth order.
    pub fn coarsenings(&self) -> Vec<SetPartition> {
        let k = self.num_blocks();
        let mut out = Vec::new();
        for grouping in RgsIter::new(k) {
            let ngroups = grouping.iter().copied().max().map_or(0, |m| m + 1);
            let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); ngroups];
            for (block_id, &group) in grouping.iter().enumerate() {
                blocks[group].extend_from_slice(&self.blocks[block_id]);
            }
            for b in &mut blocks {
                b.sort_unstable();
            }
            blocks.sort_unstable_by_key(|b| b[0]);
            out.push(SetPartition { size: self.size, blocks });
        }
        out
    }

    /// True iff every block has size exactly two (a perfect matching).
    pub fn is_brauer(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 2)
    }
}

impl fmt::Display for SetPartition {
    /// Canonical text form: blocks joined by `|`, elements by spaces,
    /// e.g. `1 3|2 4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut max = 0usize;
        for part in s.split('|') {
            let block: Vec<usize> = part
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad element {t:?}")))
                })
                .collect::<Result<_>>()?;
            if block.is_empty() {
                return Err(Error::Parse("empty block in input".into()));
            }
            max = max.max(*block.iter().max().unwrap());
            blocks.push(block);
        }
        SetPartition::new(max, blocks)
    }
}

/// Iterator over all restricted-growth strings of length `m`, in
/// lexicographic order. Yields `Bell(m)` strings without duplicates.
pub struct RgsIter {
    rgs: Vec<usize>,
    /// `max_prefix[i]` = max of `rgs[0..i]`; `max_prefix[0] = 0` is unused.
    max_prefix: Vec<usize>,
    /// Positions `0..fixed` never change (prefix-restricted iteration).
    fixed: usize,
    started: bool,
    done: bool,
}

impl RgsIter {
    pub fn new(m: usize) -> Self {
        RgsIter {
            rgs: vec![0; m],
            max_prefix: vec![0; m],
            fixed: 1,
            started: false,
            done: m == 0,
        }
    }

    /// Restricted-growth strings of length `m` extending a fixed prefix
    /// (which must itself satisfy the restricted-growth condition).
    pub fn with_prefix(m: usize, prefix: &[usize]) -> Self {
        assert!(prefix.len() <= m, "prefix longer than the string");
        let mut rgs = vec![0usize; m];
        rgs[..prefix.len()].copy_from_slice(prefix);
        let mut max_prefix = vec![0usize; m];
        let mut running = 0usize;
        for i in 0..m {
            max_prefix[i] = running;
            assert!(rgs[i] <= running + 1, "prefix is not restricted-growth");
            running = running.max(rgs[i]);
        }
        RgsIter {
            rgs,
            max_prefix,
            fixed: prefix.len().max(1),
            started: false,
            done: m == 0,
        }
    }
}

impl Iterator for RgsIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            // Length zero has exactly one (empty) restricted-growth string.
            if !self.started && self.rgs.is_empty() {
                self.started = true;
                return Some(Vec::new());
            }
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.rgs.clone());
        }
        let m = self.rgs.len();
        let mut i = m;
        while i > self.fixed {
            i -= 1;
            if self.rgs[i] <= self.max_prefix[i] {
                self.rgs[i] += 1;
                let mut running = self.max_prefix[i].max(self.rgs[i]);
                for j in i + 1..m {
                    self.rgs[j] = 0;
                    self.max_prefix[j] = running;
                    running = running.max(self.rgs[j]);
                }
                return Some(self.rgs.clone());
            }
        }
        self.done = true;
        None
    }
}

/// All set partitions of `[1, m]` in restricted-growth order.
pub fn enumerate_partitions(m: usize, caps: &Caps) -> Result<Vec<SetPartition>> {
    if m == 0 {
        return Err(Error::Parse("ground set must be nonempty".into()));
    }
    caps.check_partition_size(m)?;
    Ok(RgsIter::new(m).map(|rgs| SetPartition::from_rgs(&rgs)).collect())
}

/// Bell numbers `B(0), B(1), ..., B(m)` via the Bell triangle.
pub fn bell_numbers(m: usize) -> Vec<BigInt> {
    let mut bells = Vec::with_capacity(m + 1);
    bells.push(BigInt::from(1));
    let mut row = vec![BigInt::from(1)];
    for _ in 1..=m {
        bells.push(row.last().unwrap().clone());
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for v in &row {
            let last: BigInt = next.last().unwrap().clone();
            next.push(last + v);
        }
        row = next;
    }
    bells
}

/// Möbius function of the interval `[finer, coarser]` in the partition
/// lattice: the product over blocks `B` of `coarser` of
/// `(-1)^(k-1) (k-1)!` where `k` is the number of blocks of `finer` inside
/// `B`. Validated against lattice inversion by the test suite.
pub fn moebius(finer: &SetPartition, coarser: &SetPartition) -> Result<BigInt> {
    if !finer.is_refinement(coarser)? {
        return Err(Error::NotARefinement);
    }
    let rgs = coarser.to_rgs();
    let mut counts = vec![0usize; coarser.num_blocks()];
    for block in finer.blocks() {
        counts[rgs[block[0] - 1]] += 1;
    }
    let mut result = BigInt::from(1);
    for k in counts {
        let mut factor = BigInt::from(1);
        for j in 1..k {
            factor *= BigInt::from(j);
        }
        if k % 2 == 0 {
            factor = -factor;
        }
        result *= factor;
    }
    Ok(result)
}

/// A permutation of `{1, ..., degree}`, stored as the image array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d + 1];
        for &v in &images {
            if v == 0 || v > d || seen[v] {
                return Err(Error::Parse(format!("not a bijection of [1, {d}]")));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(d: usize) -> Self {
        Permutation {
            images: (1..=d).collect(),
        }
    }

    /// The simple transposition `(j, j+1)` in degree `d`.
    pub fn transposition(d: usize, j: usize) -> Result<Self> {
        if j == 0 || j >= d {
            return Err(Error::IndexOutOfRange { index: j, d });
        }
        let mut images: Vec<usize> = (1..=d).collect();
        images.swap(j - 1, j);
        Ok(Permutation { images })
    }

    /// The `d`-cycle `(1 2 ... d)`.
    pub fn cycle(d: usize) -> Self {
        let images = (1..=d).map(|i| i % d + 1).collect();
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::SizeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0usize; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// All permutations of degree `d` in lexicographic order of image arrays.
    pub fn all(d: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=d).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            // next_permutation in lexicographic order
            let n = current.len();
            if n < 2 {
                break;
            }
            let mut i = n - 1;
            while i > 0 && current[i - 1] >= current[i] {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            let mut j = n - 1;
            while current[j] <= current[i - 1] {
                j -= 1;
            }
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// The two-sided relabeling `σ ∗ π ∗ τ` on a partition of `[1, 2d]`: top
/// elements `d + j` are renamed to `d + σ(j)` and bottom elements `k` to
/// `τ⁻¹(k)`. This matches stacking the permutation diagrams above and below
/// `π`; the composition contract is pinned by the diagram-product tests.
pub fn conjugate(
    sigma: &Permutation,
    p: &SetPartition,
    tau: &Permutation,
) -> Result<SetPartition> {
    if p.size() % 2 != 0 {
        return Err(Error::SizeMismatch {
            left: p.size(),
            right: p.size() + 1,
        });
    }
    let d = p.size() / 2;
    if sigma.degree() != d || tau.degree() != d {
        return Err(Error::SizeMismatch {
            left: sigma.degree().min(tau.degree()),
            right: d,
        });
    }
    let tau_inv = tau.inverse();
    let blocks = p
        .blocks()
        .iter()
        .map(|block| {
            block
                .iter()
                .map(|&e| {
                    if e <= d {
                        tau_inv.apply(e)
                    } else {
                        d + sigma.apply(e - d)
                    }
                })
                .collect()
        })
        .collect();
    SetPartition::new(2 * d, blocks)
}

/// Conjugation `σ.π = σ ∗ π ∗ σ⁻¹`, the symmetric-group action on `Π_{2d}`.
pub fn conjugate_by(sigma: &Permutation, p: &SetPartition) -> Result<SetPartition> {
    conjugate(sigma, p, &sigma.inverse())
}

/// Splits `universe` into conjugation orbits under `S_d`, each orbit sorted,
/// orbits ordered by their minimal element. Errors if the universe is not
/// closed under conjugation.
pub fn conjugation_orbits(
    d: usize,
    universe: &[SetPartition],
) -> Result<Vec<Vec<SetPartition>>> {
    let index: HashMap<&SetPartition, usize> =
        universe.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let generators: Vec<Permutation> = (1..d)
        .map(|j| Permutation::transposition(d, j))
        .collect::<Result<_>>()?;
    let mut assigned = vec![false; universe.len()];
    let mut orbits: BTreeMap<SetPartition, BTreeSet<SetPartition>> = BTreeMap::new();
    for start in 0..universe.len() {
        if assigned[start] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        let mut queue = vec![start];
        assigned[start] = true;
        while let Some(i) = queue.pop() {
            orbit.insert(universe[i].clone());
            for g in &generators {
                let img = conjugate_by(g, &universe[i])?;
                match index.get(&img) {
                    Some(&j) => {
                        if !assigned[j] {
                            assigned[j] = true;
                            queue.push(j);
                        }
                    }
                    None => {
                        return Err(Error::ClosureViolation {
                            missing: img.to_string(),
                        })
                    }
                }
            }
        }
        let min = orbit.iter().next().unwrap().clone();
        orbits.insert(min, orbit);
    }
    Ok(orbits
        .into_values()
        .map(|set| set.into_iter().collect())
        .collect())
}

/// Burnside count of conjugation orbits: averages fixed points over all of
/// `S_d`. Exponential in `d`; used as an independent cross-check oracle.
pub fn orbit_count_burnside(d: usize, universe: &[SetPartition]) -> Result<usize> {
    let set: HashSet<&SetPartition> = universe.iter().collect();
    let mut total = 0usize;
    let mut group_order = 0usize;
    for sigma in Permutation::all(d) {
        group_order += 1;
        for p in universe {
            let img = conjugate_by(&sigma, p)?;
            if !set.contains(&img) {
                return Err(Error::ClosureViolation {
                    missing: img.to_string(),
                });
            }
            if img == *p {
                total += 1;
            }
        }
    }
    Ok(total / group_order)
}
