//! Matrix realizations on tensor powers `V^{⊗d}` with `dim V = n`: the
//! partition-algebra action, place permutations, the orthogonal and
//! symplectic Brauer-generator actions, and exact commutant / rank / span
//! computations inside `End(V^{⊗d})`.
//!
//! Tensor indices use the most-significant-digit-first mixed-radix encoding:
//! digit 1 of a tuple is most significant.

use std::collections::{BTreeMap, HashMap, HashSet};

use num::{BigInt, BigRational, One, Zero};

use crate::diagram_algebra::AlgebraElement;
use crate::exact::{Echelon, ExactMatrix, GaussMatrix, GaussRational, SparseVec, SubspaceBasis};
use crate::partitions::{enumerate_partitions, moebius, Permutation, SetPartition};
use crate::{Caps, Error, Result};

/// A tuple in `[1, n]^d` with its mixed-radix code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorIndex {
    n: usize,
    digits: Vec<usize>,
}

impl TensorIndex {
    pub fn new(n: usize, digits: Vec<usize>) -> Result<Self> {
        if digits.iter().any(|&x| x == 0 || x > n) {
            return Err(Error::Parse(format!("digits must lie in [1, {n}]")));
        }
        Ok(TensorIndex { n, digits })
    }

    pub fn encode(&self) -> usize {
        encode_tuple(self.n, &self.digits)
    }

    pub fn decode(n: usize, d: usize, mut code: usize) -> Self {
        let mut digits = vec![1usize; d];
        for k in (0..d).rev() {
            digits[k] = code % n + 1;
            code /= n;
        }
        TensorIndex { n, digits }
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }
}

pub fn encode_tuple(n: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &x| acc * n + (x - 1))
}

fn one() -> BigRational {
    BigRational::one()
}

/// The matrix of a single diagram acting on `V^{⊗d}`: the entry at
/// (bottom tuple, top tuple) is 1 when the concatenated `2d`-tuple is
/// constant on every block of `p`.
pub fn psi_partition_matrix(
    n: usize,
    d: usize,
    p: &SetPartition,
    caps: &Caps,
) -> Result<ExactMatrix> {
    caps.check_tensor_dim(n, d)?;
    if p.size() != 2 * d {
        return Err(Error::SizeMismatch {
            left: p.size(),
            right: 2 * d,
        });
    }
    let dim = n.pow(d as u32);
    let rgs = p.to_rgs();
    let nblocks = p.num_blocks();
    // One matrix entry per assignment of values to blocks.
    let mut assignment = vec![1usize; nblocks];
    let mut triplets = Vec::new();
    loop {
        let mut bottom = 0usize;
        for k in 0..d {
            bottom = bottom * n + (assignment[rgs[k]] - 1);
        }
        let mut top = 0usize;
        for k in d..2 * d {
            top = top * n + (assignment[rgs[k]] - 1);
        }
        triplets.push((bottom, top, one()));
        // Advance the mixed-radix assignment.
        let mut k = nblocks;
        loop {
            if k == 0 {
                return Ok(ExactMatrix::from_triplets(dim, dim, triplets));
            }
            k -= 1;
            if assignment[k] < n {
                assignment[k] += 1;
                for a in assignment.iter_mut().skip(k + 1) {
                    *a = 1;
                }
                break;
            }
        }
    }
}

/// Matrix of the place permutation `v_w ↦ v_{w∘σ}` with
/// `(w∘σ)_k = w_{σ(k)}`.
pub fn place_permutation_matrix(
    n: usize,
    d: usize,
    sigma: &Permutation,
    caps: &Caps,
) -> Result<ExactMatrix> {
    caps.check_tensor_dim(n, d)?;
    if sigma.degree() != d {
        return Err(Error::SizeMismatch {
            left: sigma.degree(),
            right: d,
        });
    }
    let dim = n.pow(d as u32);
    let mut triplets = Vec::with_capacity(dim);
    for code in 0..dim {
        let w = TensorIndex::decode(n, d, code);
        let permuted: Vec<usize> = (1..=d).map(|k| w.digits()[sigma.apply(k) - 1]).collect();
        triplets.push((encode_tuple(n, &permuted), code, one()));
    }
    Ok(ExactMatrix::from_triplets(dim, dim, triplets))
}

/// The bilinear-form flavor behind a Brauer-generator action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormFlavor {
    /// Symmetric form with Gram matrix the identity.
    OrthQ,
    /// Symmetric form pairing `v_i` with `v_{n+1-i}`.
    OrthQPrime,
    /// Skew form with Gram matrix `J_n` (requires even `n`).
    Symp,
}

/// Matrices of the generators `s_1..s_{d-1}`, `e_1..e_{d-1}` on `V^{⊗d}`.
#[derive(Debug, Clone)]
pub struct BrauerGenerators {
    pub s: Vec<ExactMatrix>,
    pub e: Vec<ExactMatrix>,
}

/// Local operator on `V ⊗ V` lifted to factors `(j, j+1)` of `V^{⊗d}`.
fn lift_local(local: &ExactMatrix, n: usize, d: usize, j: usize) -> ExactMatrix {
    let left = ExactMatrix::identity(n.pow((j - 1) as u32));
    let right = ExactMatrix::identity(n.pow((d - j - 1) as u32));
    left.kron(local).kron(&right)
}

fn local_swap(n: usize) -> ExactMatrix {
    let mut triplets = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            triplets.push((b * n + a, a * n + b, one()));
        }
    }
    ExactMatrix::from_triplets(n * n, n * n, triplets)
}

pub fn brauer_generator_matrices(
    flavor: FormFlavor,
    n: usize,
    d: usize,
    caps: &Caps,
) -> Result<BrauerGenerators> {
    caps.check_tensor_dim(n, d)?;
    if flavor == FormFlavor::Symp && n % 2 != 0 {
        return Err(Error::OddSymplecticDimension { n });
    }
    let swap = local_swap(n);
    let local_s = match flavor {
        FormFlavor::OrthQ | FormFlavor::OrthQPrime => swap,
        FormFlavor::Symp => swap.scale(&-one()),
    };
    // e acts as |u><w|: the coefficient functional is the bilinear form on
    // the two factors and u is the form's dual tensor.
    let bar = |i: usize| n + 1 - i;
    let mut triplets = Vec::new();
    match flavor {
        FormFlavor::OrthQ => {
            for k in 1..=n {
                for i in 1..=n {
                    triplets.push(((k - 1) * n + (k - 1), (i - 1) * n + (i - 1), one()));
                }
            }
        }
        FormFlavor::OrthQPrime => {
            for k in 1..=n {
                for i in 1..=n {
                    triplets.push((
                        (k - 1) * n + (bar(k) - 1),
                        (i - 1) * n + (bar(i) - 1),
                        one(),
                    ));
                }
            }
        }
        FormFlavor::Symp => {
            let m = n / 2;
            // u = Σ_k (v_{m+k} ⊗ v_k - v_k ⊗ v_{m+k}); form value on (i, j).
            let mut u = Vec::new();
            for k in 1..=m {
                u.push(((m + k - 1) * n + (k - 1), one()));
                u.push(((k - 1) * n + (m + k - 1), -one()));
            }
            for i in 1..=n {
                for j in 1..=n {
                    let form = if j == i + m {
                        one()
                    } else if i > m && j + m == i {
                        -one()
                    } else {
                        continue;
                    };
                    for (ucoord, uval) in &u {
                        triplets.push((*ucoord, (i - 1) * n + (j - 1), uval * &form));
                    }
                }
            }
        }
    }
    let local_e = ExactMatrix::from_triplets(n * n, n * n, triplets);

    let mut s = Vec::with_capacity(d.saturating_sub(1));
    let mut e = Vec::with_capacity(d.saturating_sub(1));
    for j in 1..d {
        s.push(lift_local(&local_s, n, d, j));
        e.push(lift_local(&local_e, n, d, j));
    }
    Ok(BrauerGenerators { s, e })
}

/// Echelon basis of the smallest subalgebra of `End(V^{⊗d})` spanned by the
/// given matrices, closed under products; with `include_identity` the
/// identity matrix is adjoined. Grows the span by right-multiplication until
/// a fixpoint.
pub fn algebra_span(
    generators: &[ExactMatrix],
    include_identity: bool,
) -> Result<SubspaceBasis> {
    let dim = match generators.first() {
        Some(g) => g.nrows(),
        None => {
            return Err(Error::Parse("algebra_span needs at least one generator".into()))
        }
    };
    for g in generators {
        if g.nrows() != dim || g.ncols() != dim {
            return Err(Error::SizeMismatch {
                left: g.nrows() * g.ncols(),
                right: dim * dim,
            });
        }
    }
    let ambient = dim * dim;
    let mut ech = Echelon::new();
    let mut vectors: Vec<SparseVec> = Vec::new();
    let mut queue: Vec<ExactMatrix> = Vec::new();
    let mut seeds: Vec<ExactMatrix> = Vec::new();
    if include_identity {
        seeds.push(ExactMatrix::identity(dim));
    }
    seeds.extend(generators.iter().cloned());
    for m in seeds {
        let flat = m.flatten();
        if ech.insert_rational(flat.clone()) {
            vectors.push(flat);
            queue.push(m);
        }
    }
    let mut cursor = 0;
    while cursor < queue.len() {
        let current = queue[cursor].clone();
        cursor += 1;
        for g in generators {
            let product = current.mul(g)?;
            let flat = product.flatten();
            if ech.insert_rational(flat.clone()) {
                vectors.push(flat);
                queue.push(product);
            }
        }
    }
    Ok(SubspaceBasis::from_vectors(ambient, vectors))
}

/// Rank/kernel structure of the diagram action on `V^{⊗d}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageKernelReport {
    /// Rank of the span of the diagram matrices.
    pub rank: usize,
    /// `Bell(2d) - rank`.
    pub kernel_dim: usize,
    /// Number of partitions with at most `n` blocks.
    pub expected_rank: usize,
    /// Every orbit-basis element with more than `n` blocks maps to zero.
    pub kernel_vanishing_ok: bool,
    /// The images of the orbit-basis elements with at most `n` blocks are
    /// linearly independent.
    pub image_independent_ok: bool,
}

/// Computes the rank of `span{Ψ(D_π)}` together with the orbit-basis
/// image/kernel checks.
///
/// Coordinates of `End(V^{⊗d})` are grouped by the equality pattern of the
/// `2d`-tuple indexing them; every matrix in the span is constant on each
/// group, so the rank computation runs on one representative coordinate per
/// pattern. Patterns with at most `n` blocks are exactly those that occur.
pub fn image_rank_partition(n: usize, d: usize, caps: &Caps) -> Result<ImageKernelReport> {
    caps.check_tensor_dim(n, d)?;
    let parts = enumerate_partitions(2 * d, caps)?;
    let columns: Vec<SetPartition> = parts
        .iter()
        .filter(|p| p.num_blocks() <= n)
        .cloned()
        .collect();
    let col_index: HashMap<&SetPartition, usize> =
        columns.iter().enumerate().map(|(i, p)| (p, i)).collect();

    // Rank of the diagram matrices in pattern coordinates.
    let mut ech = Echelon::new();
    for p in &parts {
        let mut row: Vec<(usize, BigInt)> = p
            .coarsenings()
            .into_iter()
            .filter_map(|t| col_index.get(&t).map(|&i| (i, BigInt::one())))
            .collect();
        row.sort_by_key(|e| e.0);
        ech.insert_integer(row);
    }
    let rank = ech.rank();

    // Orbit-basis images, computed as Möbius sums per pattern column.
    let mut kernel_vanishing_ok = true;
    let mut image_ech = Echelon::new();
    let mut image_count = 0usize;
    for p in &parts {
        let mut entries: BTreeMap<usize, BigInt> = BTreeMap::new();
        for rho in p.coarsenings() {
            let mu = moebius(p, &rho)?;
            for tau in rho.coarsenings() {
                if let Some(&i) = col_index.get(&tau) {
                    let v = entries.entry(i).or_insert_with(BigInt::zero);
                    *v += &mu;
                }
            }
        }
        entries.retain(|_, v| !v.is_zero());
        if p.num_blocks() > n {
            if !entries.is_empty() {
                kernel_vanishing_ok = false;
            }
        } else {
            image_count += 1;
            image_ech.insert_integer(entries.into_iter().collect());
        }
    }
    let image_independent_ok = image_ech.rank() == image_count;

    Ok(ImageKernelReport {
        rank,
        kernel_dim: parts.len() - rank,
        expected_rank: columns.len(),
        kernel_vanishing_ok,
        image_independent_ok,
    })
}

/// Basis of `{X : XA = AX for all A}`, optionally intersected with a given
/// subspace, solved exactly.
///
/// When every action matrix is a permutation matrix and no subspace is given,
/// the constraints only identify coordinates of `X` pairwise, so the solver
/// runs as orbit detection on coordinates; the output equals the generic
/// nullspace solve.
pub fn commutant(
    actions: &[ExactMatrix],
    within: Option<&SubspaceBasis>,
) -> Result<SubspaceBasis> {
    let dim = match (actions.first(), within) {
        (Some(a), _) => a.nrows(),
        (None, Some(w)) => {
            let mut n = 1usize;
            while n * n < w.ambient_dim() {
                n += 1;
            }
            n
        }
        (None, None) => {
            return Err(Error::Parse(
                "commutant needs action matrices or a subspace".into(),
            ))
        }
    };
    for a in actions {
        if a.nrows() != dim || a.ncols() != dim {
            return Err(Error::SizeMismatch {
                left: a.nrows() * a.ncols(),
                right: dim * dim,
            });
        }
    }
    let ambient = dim * dim;
    if let Some(w) = within {
        if w.ambient_dim() != ambient {
            return Err(Error::SizeMismatch {
                left: w.ambient_dim(),
                right: ambient,
            });
        }
        return commutant_within(actions, w, dim);
    }

    let perms: Option<Vec<Vec<usize>>> =
        actions.iter().map(ExactMatrix::as_permutation).collect();
    if let Some(perms) = perms {
        return Ok(commutant_of_permutations(dim, &perms));
    }

    // Generic path: unknowns are the entries of X, constraints XA - AX = 0.
    let mut ech = Echelon::new();
    for a in actions {
        let a_cols = a.transpose();
        for i in 0..dim {
            for j in 0..dim {
                let mut row: BTreeMap<usize, BigRational> = BTreeMap::new();
                // (XA)[i,j] = Σ_k X[i,k] A[k,j]
                for (k, v) in a_cols.row(j) {
                    let e = row.entry(i * dim + k).or_insert_with(BigRational::zero);
                    *e += v;
                }
                // -(AX)[i,j] = -Σ_k A[i,k] X[k,j]
                for (k, v) in a.row(i) {
                    let e = row.entry(k * dim + j).or_insert_with(BigRational::zero);
                    *e -= v;
                }
                let row: SparseVec =
                    row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    ech.insert_rational(row);
                }
            }
        }
    }
    Ok(SubspaceBasis::from_vectors(ambient, ech.nullspace(ambient)))
}

/// Orbit-indicator basis of the coordinate-identification system
/// `X[σa, σb] = X[a, b]`.
fn commutant_of_permutations(dim: usize, perms: &[Vec<usize>]) -> SubspaceBasis {
    let ambient = dim * dim;
    let mut parent: Vec<usize> = (0..ambient).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in perms {
        for a in 0..dim {
            for b in 0..dim {
                let x = find(&mut parent, a * dim + b);
                let y = find(&mut parent, p[a] * dim + p[b]);
                if x != y {
                    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut orbits: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for c in 0..ambient {
        let r = find(&mut parent, c);
        orbits.entry(r).or_default().push((c, BigRational::one()));
    }
    SubspaceBasis::from_rref_rows(ambient, orbits.into_values().collect())
}

fn commutant_within(
    actions: &[ExactMatrix],
    within: &SubspaceBasis,
    dim: usize,
) -> Result<SubspaceBasis> {
    let ambient = dim * dim;
    let m = within.dim();
    if m == 0 || actions.is_empty() {
        return Ok(within.clone());
    }
    let basis_mats: Vec<ExactMatrix> = within
        .rows()
        .iter()
        .map(|row| ExactMatrix::from_flat(dim, dim, row))
        .collect();
    let mut ech = Echelon::new();
    let mut seen: HashSet<Vec<(usize, BigInt)>> = HashSet::new();
    for a in actions {
        // coordinate -> Σ_k c_k (B_k A - A B_k)[coordinate]
        let mut per_coord: HashMap<usize, SparseVec> = HashMap::new();
        for (k, b) in basis_mats.iter().enumerate() {
            let diff = b.mul(a)?.sub(&a.mul(b)?)?;
            for (coord, value) in diff.flatten() {
                per_coord.entry(coord).or_default().push((k, value));
            }
        }
        for (_, row) in per_coord {
            let normalized = crate::exact::normalize_for_dedup(row);
            if normalized.is_empty() || !seen.insert(normalized.clone()) {
                continue;
            }
            ech.insert_integer(normalized);
        }
    }
    let coefficient_vectors = ech.nullspace(m);
    let vectors: Vec<SparseVec> = coefficient_vectors
        .into_iter()
        .map(|coeffs| {
            let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
            for (k, c) in coeffs {
                for (coord, v) in within.rows()[k].iter() {
                    let e = acc.entry(*coord).or_insert_with(BigRational::zero);
                    *e += &c * v;
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        })
        .collect();
    Ok(SubspaceBasis::from_vectors(ambient, vectors))
}

/// Basis of the Lie algebra `{a : aᵀM + Ma = 0}` for the flavor's Gram
/// matrix `M`.
fn lie_algebra_basis(flavor: FormFlavor, n: usize) -> Result<Vec<ExactMatrix>> {
    if flavor == FormFlavor::Symp && n % 2 != 0 {
        return Err(Error::OddSymplecticDimension { n });
    }
    let gram = match flavor {
        FormFlavor::OrthQ => ExactMatrix::identity(n),
        FormFlavor::OrthQPrime => {
            ExactMatrix::from_triplets(n, n, (0..n).map(|i| (i, n - 1 - i, one())))
        }
        FormFlavor::Symp => {
            let m = n / 2;
            let mut triplets = Vec::new();
            for k in 0..m {
                triplets.push((k, m + k, one()));
                triplets.push((m + k, k, -one()));
            }
            ExactMatrix::from_triplets(n, n, triplets)
        }
    };
    // Constraint rows for (aᵀM + Ma)[i,j] = 0 over the n² unknowns a[r,c].
    let mut ech = Echelon::new();
    let gram_t = gram.transpose();
    for i in 0..n {
        for j in 0..n {
            let mut row: BTreeMap<usize, BigRational> = BTreeMap::new();
            // (aᵀM)[i,j] = Σ_k a[k,i] M[k,j]
            for (k, v) in gram_t.row(j) {
                let e = row.entry(k * n + i).or_insert_with(BigRational::zero);
                *e += v;
            }
            // (Ma)[i,j] = Σ_k M[i,k] a[k,j]
            for (k, v) in gram.row(i) {
                let e = row.entry(k * n + j).or_insert_with(BigRational::zero);
                *e += v;
            }
            let row: SparseVec = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            if !row.is_empty() {
                ech.insert_rational(row);
            }
        }
    }
    Ok(ech
        .nullspace(n * n)
        .into_iter()
        .map(|v| ExactMatrix::from_flat(n, n, &v))
        .collect())
}

/// Diagonal action `Σ_k 1⊗…⊗a⊗…⊗1` on `V^{⊗d}`.
fn diagonal_action(a: &ExactMatrix, n: usize, d: usize) -> Result<ExactMatrix> {
    let dim = n.pow(d as u32);
    let mut acc = ExactMatrix::zeros(dim, dim);
    for k in 1..=d {
        let left = ExactMatrix::identity(n.pow((k - 1) as u32));
        let right = ExactMatrix::identity(n.pow((d - k) as u32));
        acc = acc.add(&left.kron(a).kron(&right))?;
    }
    Ok(acc)
}

/// A group element of negative determinant preserving the flavor's form;
/// together with the Lie algebra it cuts invariants of the full orthogonal
/// group. (Symplectic groups are connected, so no such element is needed.)
fn disconnected_component_element(flavor: FormFlavor, n: usize) -> Option<ExactMatrix> {
    match flavor {
        FormFlavor::OrthQ => {
            let mut triplets = vec![(0usize, 0usize, -one())];
            for i in 1..n {
                triplets.push((i, i, one()));
            }
            Some(ExactMatrix::from_triplets(n, n, triplets))
        }
        FormFlavor::OrthQPrime => {
            if n == 1 {
                return Some(ExactMatrix::from_triplets(1, 1, [(0, 0, -one())]));
            }
            let mut triplets = Vec::new();
            for i in 0..n {
                let target = if i == 0 {
                    n - 1
                } else if i == n - 1 {
                    0
                } else {
                    i
                };
                triplets.push((target, i, one()));
            }
            Some(ExactMatrix::from_triplets(n, n, triplets))
        }
        FormFlavor::Symp => None,
    }
}

/// Basis of `End_G(V^{⊗d})` for the flavor's group, computed from the Lie
/// algebra (connected-group invariants in characteristic zero) plus one
/// orientation-reversing element for the orthogonal flavors.
pub fn lie_commutant(flavor: FormFlavor, n: usize, d: usize, caps: &Caps) -> Result<SubspaceBasis> {
    caps.check_tensor_dim(n, d)?;
    let mut constraints = Vec::new();
    for a in lie_algebra_basis(flavor, n)? {
        constraints.push(diagonal_action(&a, n, d)?);
    }
    if let Some(r) = disconnected_component_element(flavor, n) {
        let mut tensor = ExactMatrix::identity(1);
        for _ in 0..d {
            tensor = tensor.kron(&r);
        }
        constraints.push(tensor);
    }
    if constraints.is_empty() {
        // Rank-zero Lie algebra and no reflection: the full endomorphism space.
        let dim = n.pow(d as u32);
        return Ok(SubspaceBasis::from_rref_rows(
            dim * dim,
            (0..dim * dim)
                .map(|c| vec![(c, BigRational::one())])
                .collect(),
        ));
    }
    commutant(&constraints, None)
}

/// Which group the conjugation invariants refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// Permutation matrices.
    Sym,
    /// Orthogonal group of the identity Gram matrix.
    OrthQ,
    /// Orthogonal group of the reversal Gram matrix.
    OrthQPrime,
    /// Symplectic group.
    Symp,
}

/// Basis of `End_G(V^{⊗d})` for the group of permutation matrices, computed
/// as the commutant of the tensor action of two generators.
pub fn permutation_group_commutant(n: usize, d: usize, caps: &Caps) -> Result<SubspaceBasis> {
    caps.check_tensor_dim(n, d)?;
    let dim = n.pow(d as u32);
    if n <= 1 {
        return Ok(SubspaceBasis::from_rref_rows(
            dim * dim,
            (0..dim * dim)
                .map(|c| vec![(c, BigRational::one())])
                .collect(),
        ));
    }
    let mut actions = Vec::new();
    for g in [Permutation::transposition(n, 1)?, Permutation::cycle(n)] {
        let p = ExactMatrix::from_triplets(
            n,
            n,
            (1..=n).map(|i| (g.apply(i) - 1, i - 1, one())),
        );
        let mut tensor = ExactMatrix::identity(1);
        for _ in 0..d {
            tensor = tensor.kron(&p);
        }
        actions.push(tensor);
    }
    commutant(&actions, None)
}

/// Dimension of the commutant of the place-permutation action of `S_d`
/// inside `End_G(V^{⊗d})`.
pub fn centralizer_dimension_in_commutant(
    group: GroupKind,
    n: usize,
    d: usize,
    caps: &Caps,
) -> Result<usize> {
    caps.check_tensor_dim(n, d)?;
    let within = match group {
        GroupKind::Sym => permutation_group_commutant(n, d, caps)?,
        GroupKind::OrthQ => lie_commutant(FormFlavor::OrthQ, n, d, caps)?,
        GroupKind::OrthQPrime => lie_commutant(FormFlavor::OrthQPrime, n, d, caps)?,
        GroupKind::Symp => lie_commutant(FormFlavor::Symp, n, d, caps)?,
    };
    if d <= 1 {
        return Ok(within.dim());
    }
    let mut place = Vec::new();
    for sigma in [Permutation::transposition(d, 1)?, Permutation::cycle(d)] {
        place.push(place_permutation_matrix(n, d, &sigma, caps)?);
    }
    Ok(commutant(&place, Some(&within))?.dim())
}

/// The basis-change matrix between the two orthogonal forms over `ℚ(i)`:
/// its columns carry `v_i ↦ v_i + i·v_{n+1-i}` on the first half,
/// `v_i ↦ -(i/2)·v_i + (1/2)·v_{n+1-i}` on the second half, and fix a middle
/// basis vector. Satisfies `φᵀφ = I'` (it carries the identity form to the
/// reversal form).
pub fn orthogonal_isometry_matrix(n: usize) -> GaussMatrix {
    let mut phi = GaussMatrix::zeros(n);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for i in 1..=n {
        let bar = n + 1 - i;
        if 2 * i <= n {
            phi.set(i - 1, i - 1, GaussRational::one());
            phi.set(bar - 1, i - 1, GaussRational::i());
        } else if 2 * i == n + 1 {
            phi.set(i - 1, i - 1, GaussRational::one());
        } else {
            phi.set(
                i - 1,
                i - 1,
                GaussRational {
                    re: BigRational::zero(),
                    im: -half.clone(),
                },
            );
            phi.set(
                bar - 1,
                i - 1,
                GaussRational {
                    re: half.clone(),
                    im: BigRational::zero(),
                },
            );
        }
    }
    phi
}

/// Verifies over `ℚ(i)` that conjugating every reversal-form generator matrix
/// by the tensor power of the isometry yields the identity-form generator
/// matrix: `Ψ_q(g) = φ^{⊗d} Ψ_{q'}(g) (φ^{⊗d})⁻¹` entrywise.
pub fn isometry_conjugation_check(n: usize, d: usize, caps: &Caps) -> Result<bool> {
    let gens_qp = brauer_generator_matrices(FormFlavor::OrthQPrime, n, d, caps)?;
    let gens_q = brauer_generator_matrices(FormFlavor::OrthQ, n, d, caps)?;
    let phi = orthogonal_isometry_matrix(n);
    let mut phi_tensor = GaussMatrix::identity(1);
    for _ in 0..d {
        phi_tensor = phi_tensor.kron(&phi);
    }
    let phi_tensor_inv = phi_tensor.inverse();
    for (primed, plain) in gens_qp
        .s
        .iter()
        .zip(&gens_q.s)
        .chain(gens_qp.e.iter().zip(&gens_q.e))
    {
        let conjugated = phi_tensor
            .mul(&GaussMatrix::from_exact(primed))
            .mul(&phi_tensor_inv);
        if conjugated != GaussMatrix::from_exact(plain) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evaluates a diagram-basis element at `δ = value` and sums the matrices of
/// its terms.
pub fn psi_of_element(
    element: &AlgebraElement,
    n: usize,
    caps: &Caps,
) -> Result<ExactMatrix> {
    if element.basis() != crate::diagram_algebra::Basis::Diagram {
        return Err(Error::BasisMismatch {
            expected: "diagram",
        });
    }
    let d = element.d();
    caps.check_tensor_dim(n, d)?;
    let dim = n.pow(d as u32);
    let mut acc = ExactMatrix::zeros(dim, dim);
    let delta = BigRational::from(BigInt::from(n as i64));
    for (p, coeff) in element.terms() {
        let c = coeff.eval(&delta);
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&psi_partition_matrix(n, d, p, caps)?.scale(&c))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_algebra::{
        embed_permutation, multiply, AlgebraElement, Basis,
    };
    use rand::{Rng, SeedableRng};

    fn caps() -> Caps {
        Caps::default()
    }

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn q(x: i64) -> BigRational {
        BigRational::from(BigInt::from(x))
    }

    #[test]
    fn tensor_index_roundtrip() {
        for code in 0..27 {
            let t = TensorIndex::decode(3, 3, code);
            assert_eq!(t.encode(), code);
        }
        assert_eq!(encode_tuple(2, &[1, 2]), 1);
        assert_eq!(encode_tuple(2, &[2, 1]), 2);
    }

    #[test]
    fn diagram_matrices_small() {
        // Identity diagram acts as the identity.
        let id = psi_partition_matrix(2, 1, &sp("1 2"), &caps()).unwrap();
        assert_eq!(id, ExactMatrix::identity(2));
        // The two-singleton diagram acts as the all-ones matrix.
        let bars = psi_partition_matrix(2, 1, &sp("1|2"), &caps()).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(bars.get(r, c), q(1));
            }
        }
        let id2 = psi_partition_matrix(3, 2, &sp("1 3|2 4"), &caps()).unwrap();
        assert_eq!(id2, ExactMatrix::identity(9));
    }

    #[test]
    fn place_permutation_swap_example() {
        let sigma = Permutation::transposition(2, 1).unwrap();
        let m = place_permutation_matrix(2, 2, &sigma, &caps()).unwrap();
        // Positions (1,2) <-> (2,1) swap; diagonal positions fixed.
        assert_eq!(m.get(0, 0), q(1));
        assert_eq!(m.get(2, 1), q(1));
        assert_eq!(m.get(1, 2), q(1));
        assert_eq!(m.get(3, 3), q(1));
        assert_eq!(m.mul(&m).unwrap(), ExactMatrix::identity(4));
    }

    #[test]
    fn diagram_action_extends_place_permutations() {
        for n in 2..=3usize {
            for d in 1..=3usize {
                for sigma in Permutation::all(d) {
                    let direct = place_permutation_matrix(n, d, &sigma, &caps()).unwrap();
                    let embedded = embed_permutation(&sigma);
                    let diagram = embedded.terms().next().unwrap().0;
                    let via_diagram =
                        psi_partition_matrix(n, d, diagram, &caps()).unwrap();
                    assert_eq!(direct, via_diagram, "n={n} d={d} sigma={sigma}");
                }
            }
        }
    }

    #[test]
    fn action_reverses_products() {
        // Ψ(a)Ψ(b) = Ψ(b·a) at δ = n: the action is an anti-homomorphism of
        // the diagram product.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(47);
        for n in 2..=3usize {
            for d in 1..=2usize {
                let parts = enumerate_partitions(2 * d, &caps()).unwrap();
                for _ in 0..40 {
                    let pa = &parts[rng.gen_range(0..parts.len())];
                    let pb = &parts[rng.gen_range(0..parts.len())];
                    let a = AlgebraElement::from_partition(pa.clone(), Basis::Diagram)
                        .unwrap();
                    let b = AlgebraElement::from_partition(pb.clone(), Basis::Diagram)
                        .unwrap();
                    let lhs = psi_partition_matrix(n, d, pa, &caps())
                        .unwrap()
                        .mul(&psi_partition_matrix(n, d, pb, &caps()).unwrap())
                        .unwrap();
                    let rhs =
                        psi_of_element(&multiply(&b, &a).unwrap(), n, &caps()).unwrap();
                    assert_eq!(lhs, rhs, "n={n} a={pa} b={pb}");
                }
            }
        }
    }

    #[test]
    fn brauer_generator_relations() {
        for n in 2..=3usize {
            for flavor in [FormFlavor::OrthQ, FormFlavor::OrthQPrime] {
                let gens = brauer_generator_matrices(flavor, n, 2, &caps()).unwrap();
                let s = &gens.s[0];
                let e = &gens.e[0];
                let id = ExactMatrix::identity(n * n);
                assert_eq!(s.mul(s).unwrap(), id);
                assert_eq!(e.mul(e).unwrap(), e.scale(&q(n as i64)));
                assert_eq!(s.mul(e).unwrap(), *e);
                assert_eq!(e.mul(s).unwrap(), *e);
            }
        }
        for n in [2usize, 4] {
            let gens = brauer_generator_matrices(FormFlavor::Symp, n, 2, &caps()).unwrap();
            let s = &gens.s[0];
            let e = &gens.e[0];
            let id = ExactMatrix::identity(n * n);
            assert_eq!(s.mul(s).unwrap(), id);
            assert_eq!(e.mul(e).unwrap(), e.scale(&q(-(n as i64))));
            assert_eq!(s.mul(e).unwrap(), *e);
            assert_eq!(e.mul(s).unwrap(), *e);
        }
        assert!(matches!(
            brauer_generator_matrices(FormFlavor::Symp, 3, 2, &caps()),
            Err(Error::OddSymplecticDimension { n: 3 })
        ));
    }

    #[test]
    fn span_examples() {
        let id = ExactMatrix::identity(4);
        assert_eq!(algebra_span(&[id], false).unwrap().dim(), 1);

        let sigma = Permutation::transposition(2, 1).unwrap();
        let swap = place_permutation_matrix(2, 2, &sigma, &caps()).unwrap();
        assert_eq!(algebra_span(&[swap], true).unwrap().dim(), 2);
    }

    #[test]
    fn diagram_span_is_already_an_algebra() {
        // The linear span of all diagram matrices is closed under products;
        // growing it as an algebra does not change the dimension.
        let n = 2;
        let d = 2;
        let mats: Vec<ExactMatrix> = enumerate_partitions(2 * d, &caps())
            .unwrap()
            .iter()
            .map(|p| psi_partition_matrix(n, d, p, &caps()).unwrap())
            .collect();
        let linear = SubspaceBasis::from_vectors(
            (n * n) * (n * n),
            mats.iter().map(ExactMatrix::flatten).collect(),
        );
        let algebra = algebra_span(&mats, true).unwrap();
        assert_eq!(linear.dim(), 8);
        assert_eq!(algebra.dim(), 8);
        assert_eq!(linear, algebra);
    }

    #[test]
    fn image_rank_small_cases() {
        let r = image_rank_partition(4, 2, &caps()).unwrap();
        assert_eq!(r.rank, 15);
        assert_eq!(r.kernel_dim, 0);
        assert!(r.kernel_vanishing_ok && r.image_independent_ok);

        let r = image_rank_partition(1, 1, &caps()).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.expected_rank, 1);

        let r = image_rank_partition(2, 2, &caps()).unwrap();
        assert_eq!(r.rank, 8);
        assert_eq!(r.expected_rank, 8);
        assert_eq!(r.kernel_dim, 7);
    }

    #[test]
    fn image_rank_matches_raw_computation() {
        for n in 1..=3usize {
            for d in 1..=2usize {
                let mut ech = Echelon::new();
                for p in enumerate_partitions(2 * d, &caps()).unwrap() {
                    ech.insert_rational(
                        psi_partition_matrix(n, d, &p, &caps()).unwrap().flatten(),
                    );
                }
                let compressed = image_rank_partition(n, d, &caps()).unwrap();
                assert_eq!(ech.rank(), compressed.rank, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn commutant_of_identity_is_everything() {
        let basis = commutant(&[ExactMatrix::identity(3)], None).unwrap();
        assert_eq!(basis.dim(), 9);
    }

    #[test]
    fn commutant_fast_path_matches_generic() {
        // Strip the permutation structure by scaling with 1 (still exact) and
        // compare against the generic nullspace on a non-permutation listing.
        for (n, d) in [(2usize, 2usize), (3, 1)] {
            let sigma = Permutation::transposition(n, 1).unwrap();
            let p = ExactMatrix::from_triplets(
                n,
                n,
                (1..=n).map(|i| (sigma.apply(i) - 1, i - 1, q(1))),
            );
            let mut tensor = ExactMatrix::identity(1);
            for _ in 0..d {
                tensor = tensor.kron(&p);
            }
            let fast = commutant(std::slice::from_ref(&tensor), None).unwrap();
            // Force the generic path by adding the same constraint scaled by 2:
            // 2·tensor is not a permutation matrix but imposes the same
            // commutation constraints.
            let generic = commutant(&[tensor.scale(&q(2))], None).unwrap();
            assert_eq!(fast, generic);
        }
    }

    #[test]
    fn place_permutation_commutant_dimension() {
        // d = 2, n = 2: the commutant of the flip splits over its eigenspaces
        // of dimensions 3 and 1, giving 3² + 1² = 10 (the Schur algebra).
        let mut place = Vec::new();
        for sigma in Permutation::all(2) {
            place.push(place_permutation_matrix(2, 2, &sigma, &caps()).unwrap());
        }
        let basis = commutant(&place, None).unwrap();
        assert_eq!(basis.dim(), 10);
        // The diagram action spans the (smaller) permutation-group commutant.
        let report = image_rank_partition(2, 2, &caps()).unwrap();
        assert_eq!(report.rank, 8);
        assert_eq!(permutation_group_commutant(2, 2, &caps()).unwrap().dim(), 8);
    }

    #[test]
    fn permutation_group_commutant_dimension_counts_patterns() {
        for n in 2..=3usize {
            let basis = permutation_group_commutant(n, 2, &caps()).unwrap();
            let expected = enumerate_partitions(4, &caps())
                .unwrap()
                .iter()
                .filter(|p| p.num_blocks() <= n)
                .count();
            assert_eq!(basis.dim(), expected, "n = {n}");
        }
    }

    #[test]
    fn lie_commutant_dimensions() {
        // so(2) + reflection: V is irreducible for the full orthogonal group.
        assert_eq!(lie_commutant(FormFlavor::OrthQ, 2, 1, &caps()).unwrap().dim(), 1);
        // Without the reflection so(2) alone would leave 2 dimensions at d=1;
        // the projector pair appears at d = 2 where the dimension is 3.
        assert_eq!(lie_commutant(FormFlavor::OrthQ, 2, 2, &caps()).unwrap().dim(), 3);
        assert_eq!(
            lie_commutant(FormFlavor::OrthQPrime, 3, 2, &caps()).unwrap().dim(),
            3
        );
        // sp(2) = sl(2): V⊗V splits into two distinct irreducibles.
        assert_eq!(lie_commutant(FormFlavor::Symp, 2, 2, &caps()).unwrap().dim(), 2);
    }

    #[test]
    fn symplectic_image_rank_matches_lie_commutant() {
        for n in [2usize, 4] {
            let gens = brauer_generator_matrices(FormFlavor::Symp, n, 2, &caps()).unwrap();
            let all: Vec<ExactMatrix> = gens.s.into_iter().chain(gens.e).collect();
            let span = algebra_span(&all, true).unwrap();
            let lie = lie_commutant(FormFlavor::Symp, n, 2, &caps()).unwrap();
            assert_eq!(span.dim(), lie.dim(), "n = {n}");
        }
    }

    #[test]
    fn generator_images_lie_in_the_group_commutant() {
        for (flavor, form) in [
            (FormFlavor::OrthQ, FormFlavor::OrthQ),
            (FormFlavor::OrthQPrime, FormFlavor::OrthQPrime),
        ] {
            for n in 2..=3usize {
                let gens = brauer_generator_matrices(flavor, n, 2, &caps()).unwrap();
                let lie = lie_commutant(form, n, 2, &caps()).unwrap();
                let all: Vec<ExactMatrix> = gens.s.into_iter().chain(gens.e).collect();
                let span = algebra_span(&all, true).unwrap();
                for row in span.rows() {
                    assert!(lie.contains(row), "flavor {flavor:?} n = {n}");
                }
            }
        }
        let gens = brauer_generator_matrices(FormFlavor::Symp, 2, 2, &caps()).unwrap();
        let lie = lie_commutant(FormFlavor::Symp, 2, 2, &caps()).unwrap();
        for m in gens.s.iter().chain(&gens.e) {
            assert!(lie.contains(&m.flatten()));
        }
    }

    #[test]
    fn centralizer_dimensions_match_graph_counts() {
        // d = 2, n = 4 (stable range): 11 unlabeled multidigraphs.
        assert_eq!(
            centralizer_dimension_in_commutant(GroupKind::Sym, 4, 2, &caps()).unwrap(),
            11
        );
        // Orthogonal and symplectic flavors at d = 2: three cycle unions.
        for kind in [GroupKind::OrthQ, GroupKind::OrthQPrime] {
            for n in 2..=3usize {
                assert_eq!(
                    centralizer_dimension_in_commutant(kind, n, 2, &caps()).unwrap(),
                    3,
                    "{kind:?} n = {n}"
                );
            }
        }
        assert_eq!(
            centralizer_dimension_in_commutant(GroupKind::Symp, 4, 2, &caps()).unwrap(),
            3
        );
    }

    #[test]
    fn isometry_carries_identity_form_to_reversal_form() {
        for n in 2..=4usize {
            let phi = orthogonal_isometry_matrix(n);
            // φᵀ φ = I' (the reversal Gram matrix) over ℚ(i).
            let mut product = GaussMatrix::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    let mut acc = GaussRational::zero();
                    for k in 0..n {
                        acc = acc.add(&phi.get(k, i).mul(phi.get(k, j)));
                    }
                    product.set(i, j, acc);
                }
            }
            let mut reversal = GaussMatrix::zeros(n);
            for i in 0..n {
                reversal.set(i, n - 1 - i, GaussRational::one());
            }
            assert_eq!(product, reversal, "n = {n}");
        }
    }

    #[test]
    fn isometry_conjugation_matches_generators() {
        for n in 2..=3usize {
            for d in 1..=2usize {
                assert!(
                    isometry_conjugation_check(n, d, &caps()).unwrap(),
                    "n = {n}, d = {d}"
                );
            }
        }
    }

    #[test]
    fn rank_invariant_under_input_order() {
        use rand::seq::SliceRandom;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        let mut mats: Vec<ExactMatrix> = enumerate_partitions(4, &caps())
            .unwrap()
            .iter()
            .map(|p| psi_partition_matrix(2, 2, p, &caps()).unwrap())
            .collect();
        let mut reference = Echelon::new();
        for m in &mats {
            reference.insert_rational(m.flatten());
        }
        for _ in 0..5 {
            mats.shuffle(&mut rng);
            let mut e = Echelon::new();
            for m in &mats {
                e.insert_rational(m.flatten());
            }
            assert_eq!(e.rank(), reference.rank());
        }
    }
}
