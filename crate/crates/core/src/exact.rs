//! Exact sparse linear algebra over the rationals: matrices, echelon forms,
//! rank, nullspaces and reduced subspace bases, plus a small Gaussian-rational
//! (`ℚ(i)`) dense matrix type used by the isometry-conjugation check.
//!
//! Elimination is integer-preserving: rows are kept as content-free integer
//! vectors and combined by cross-multiplication, which avoids rational blow-up
//! on the 0/1-heavy inputs that dominate here. Rational output (reduced
//! echelon with unit pivots) is produced only at the boundary.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::{Error, Result};

/// Sparse vector: index/value pairs sorted by index, no stored zeros.
pub type SparseVec = Vec<(usize, BigRational)>;

type IntRow = Vec<(usize, BigInt)>;

fn strip_zeros_int(row: &mut IntRow) {
    row.retain(|(_, v)| !v.is_zero());
}

/// Divides out the content (gcd) and makes the leading coefficient positive.
fn normalize_int(mut row: IntRow) -> IntRow {
    strip_zeros_int(&mut row);
    if row.is_empty() {
        return row;
    }
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let negate = row[0].1.is_negative();
    if !g.is_one() || negate {
        for (_, v) in &mut row {
            *v = &*v / &g;
            if negate {
                *v = -std::mem::take(v);
            }
        }
    }
    row
}

/// `ca * a + cb * b` as a merged sparse integer row.
fn combine_int(a: &[(usize, BigInt)], ca: &BigInt, b: &[(usize, BigInt)], cb: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ia, va)), Some((ib, vb))) if ia == ib => {
                let v = ca * va + cb * vb;
                if !v.is_zero() {
                    out.push((*ia, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ia, va)), Some((ib, _))) if ia < ib => {
                out.push((*ia, ca * va));
                i += 1;
            }
            (Some(_), Some((ib, vb))) => {
                out.push((*ib, cb * vb));
                j += 1;
            }
            (Some((ia, va)), None) => {
                out.push((*ia, ca * va));
                i += 1;
            }
            (None, Some((ib, vb))) => {
                out.push((*ib, cb * vb));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Incremental echelon structure over sparse integer rows, keyed by pivot
/// column. Rank accumulates as independent rows arrive.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces and stores an integer row; returns true if it was independent
    /// of the rows seen so far.
    pub fn insert_integer(&mut self, row: IntRow) -> bool {
        let mut row = normalize_int(row);
        loop {
            if row.is_empty() {
                return false;
            }
            let lead = row[0].0;
            match self.pivots.get(&lead) {
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(pivot) => {
                    let p_lead = pivot[0].1.clone();
                    let c = -row[0].1.clone();
                    row = normalize_int(combine_int(&row, &p_lead, pivot, &c));
                }
            }
        }
    }

    /// Clears denominators and inserts. Returns true if independent.
    pub fn insert_rational(&mut self, row: SparseVec) -> bool {
        self.insert_integer(clear_denominators(row))
    }

    /// Reduces a rational row by the stored pivots; the remainder is zero
    /// exactly when the row lies in the row space.
    pub fn reduce_rational(&self, row: SparseVec) -> SparseVec {
        let mut row = row;
        row.retain(|(_, v)| !v.is_zero());
        loop {
            let Some((lead, lead_val)) = row.first().cloned() else {
                return row;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                return row;
            };
            let factor = lead_val / BigRational::from(pivot[0].1.clone());
            let mut out: SparseVec = Vec::with_capacity(row.len() + pivot.len());
            let (mut i, mut j) = (0usize, 0usize);
            while i < row.len() || j < pivot.len() {
                match (row.get(i), pivot.get(j)) {
                    (Some((ia, va)), Some((ib, vb))) if ia == ib => {
                        let v = va - &factor * BigRational::from(vb.clone());
                        if !v.is_zero() {
                            out.push((*ia, v));
                        }
                        i += 1;
                        j += 1;
                    }
                    (Some((ia, va)), Some((ib, _))) if ia < ib => {
                        out.push((*ia, va.clone()));
                        i += 1;
                    }
                    (Some(_), Some((ib, vb))) => {
                        out.push((*ib, -(&factor * BigRational::from(vb.clone()))));
                        j += 1;
                    }
                    (Some((ia, va)), None) => {
                        out.push((*ia, va.clone()));
                        i += 1;
                    }
                    (None, Some((ib, vb))) => {
                        out.push((*ib, -(&factor * BigRational::from(vb.clone()))));
                        j += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            row = out;
        }
    }

    /// Fully back-reduced rational rows with unit pivots, sorted by pivot
    /// column: the unique reduced echelon presentation of the row space.
    pub fn rref_rows(&self) -> Vec<SparseVec> {
        let pivot_cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut reduced: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for &p in pivot_cols.iter().rev() {
            let row = &self.pivots[&p];
            let lead = BigRational::from(row[0].1.clone());
            let mut rq: SparseVec = row
                .iter()
                .map(|(i, v)| (*i, BigRational::from(v.clone()) / &lead))
                .collect();
            // Eliminate entries at higher pivot columns using already-reduced rows.
            let targets: Vec<(usize, BigRational)> = rq
                .iter()
                .filter(|(i, _)| *i > p && reduced.contains_key(i))
                .map(|(i, v)| (*i, v.clone()))
                .collect();
            for (col, coeff) in targets {
                let other = &reduced[&col];
                rq = sub_scaled(&rq, other, &coeff);
            }
            reduced.insert(p, rq);
        }
        reduced.into_values().collect()
    }

    /// Basis of the solution space of `(stored rows) · x = 0` over
    /// `unknowns` coordinates, as reduced echelon rows.
    pub fn nullspace(&self, unknowns: usize) -> Vec<SparseVec> {
        let rref = self.rref_rows();
        let pivot_of_row: Vec<usize> = rref.iter().map(|r| r[0].0).collect();
        let mut is_pivot = vec![false; unknowns];
        for &p in &pivot_of_row {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::new();
        for f in 0..unknowns {
            if is_pivot[f] {
                continue;
            }
            let mut v: SparseVec = vec![(f, BigRational::one())];
            for (ri, row) in rref.iter().enumerate() {
                if let Ok(k) = row.binary_search_by_key(&f, |e| e.0) {
                    v.push((pivot_of_row[ri], -row[k].1.clone()));
                }
            }
            v.sort_by_key(|e| e.0);
            vectors.push(v);
        }
        // Re-echelonize for the unique reduced presentation.
        let mut ech = Echelon::new();
        for v in vectors {
            ech.insert_rational(v);
        }
        ech.rref_rows()
    }
}

fn sub_scaled(a: &SparseVec, b: &SparseVec, c: &BigRational) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ia, va)), Some((ib, vb))) if ia == ib => {
                let v = va - c * vb;
                if !v.is_zero() {
                    out.push((*ia, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ia, va)), Some((ib, _))) if ia < ib => {
                out.push((*ia, va.clone()));
                i += 1;
            }
            (Some(_), Some((ib, vb))) => {
                out.push((*ib, -(c * vb)));
                j += 1;
            }
            (Some((ia, va)), None) => {
                out.push((*ia, va.clone()));
                i += 1;
            }
            (None, Some((ib, vb))) => {
                out.push((*ib, -(c * vb)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Integer normalization used to deduplicate constraint rows before
/// elimination: denominators cleared, content divided out, leading sign
/// positive.
pub fn normalize_for_dedup(row: SparseVec) -> Vec<(usize, BigInt)> {
    normalize_int(clear_denominators(row))
}

fn clear_denominators(row: SparseVec) -> IntRow {
    let mut lcm = BigInt::one();
    for (_, v) in &row {
        lcm = lcm.lcm(v.denom());
    }
    row.into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| {
            let scaled = v.numer() * (&lcm / v.denom());
            (i, scaled)
        })
        .collect()
}

/// A linear subspace presented by its unique reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient: usize,
    rows: Vec<SparseVec>,
}

impl SubspaceBasis {
    /// Echelonizes arbitrary spanning vectors into the reduced presentation.
    pub fn from_vectors(ambient: usize, vectors: Vec<SparseVec>) -> Self {
        let mut ech = Echelon::new();
        for v in vectors {
            debug_assert!(v.iter().all(|(i, _)| *i < ambient));
            ech.insert_rational(v);
        }
        SubspaceBasis {
            ambient,
            rows: ech.rref_rows(),
        }
    }

    /// Wraps rows that are already in reduced echelon form (disjoint leading
    /// columns, unit pivots); used by fast paths that produce such rows
    /// directly.
    pub(crate) fn from_rref_rows(ambient: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.windows(2).all(|w| w[0][0].0 < w[1][0].0));
        SubspaceBasis { ambient, rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Membership test by reduction against the basis.
    pub fn contains(&self, vector: &SparseVec) -> bool {
        let mut ech = Echelon::new();
        for r in &self.rows {
            ech.insert_rational(r.clone());
        }
        ech.reduce_rational(vector.clone()).is_empty()
    }

    /// Coordinate-list text: one `index numerator/denominator` pair per line,
    /// rows separated by `;` lines.
    pub fn to_coord_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            for (i, v) in row {
                let _ = writeln!(out, "{} {}/{}", i, v.numer(), v.denom());
            }
            let _ = writeln!(out, ";");
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ambient": self.ambient,
            "dim": self.dim(),
            "rows": self.rows.iter().map(|row| {
                row.iter().map(|(i, v)| {
                    serde_json::json!([i, v.numer().to_string(), v.denom().to_string()])
                }).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

/// Sparse matrix over `ℚ`, row-major, no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigRational)>>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, BigRational::one())]).collect();
        ExactMatrix {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Builds from (row, col, value) triplets; duplicate coordinates are
    /// summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, BigRational)>,
    ) -> Self {
        let mut maps: Vec<BTreeMap<usize, BigRational>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet out of bounds");
            let entry = maps[r].entry(c).or_insert_with(BigRational::zero);
            *entry += v;
        }
        let data = maps
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        ExactMatrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.data[r]
            .binary_search_by_key(&c, |e| e.0)
            .map(|k| self.data[r][k].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn row(&self, r: usize) -> &[(usize, BigRational)] {
        &self.data[r]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn scale(&self, c: &BigRational) -> ExactMatrix {
        if c.is_zero() {
            return ExactMatrix::zeros(self.rows, self.cols);
        }
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(j, v)| (*j, v * c)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| sub_scaled(a, b, &-BigRational::one()))
            .collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| sub_scaled(a, b, &BigRational::one()))
            .collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn check_same_shape(&self, other: &ExactMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::SizeMismatch {
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
            for (k, v) in row {
                for (j, w) in &other.data[*k] {
                    let entry = acc.entry(*j).or_insert_with(BigRational::zero);
                    *entry += v * w;
                }
            }
            data.push(
                acc.into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .collect::<Vec<_>>(),
            );
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut data: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Kronecker product with the most-significant-factor-first index
    /// convention: `(A ⊗ B)[ia·rb + ib, ja·cb + jb] = A[ia,ja] B[ib,jb]`.
    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); rows];
        for (ra, rowa) in self.data.iter().enumerate() {
            for (rb, rowb) in other.data.iter().enumerate() {
                let out = &mut data[ra * other.rows + rb];
                for (ca, va) in rowa {
                    for (cb, vb) in rowb {
                        out.push((ca * other.cols + cb, va * vb));
                    }
                }
                out.sort_by_key(|e| e.0);
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// If this is a 0/1 permutation matrix, returns `perm` with
    /// `M e_j = e_{perm[j]}`.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        if self.rows != self.cols {
            return None;
        }
        let mut perm = vec![usize::MAX; self.cols];
        for (r, row) in self.data.iter().enumerate() {
            if row.len() != 1 || !row[0].1.is_one() {
                return None;
            }
            let c = row[0].0;
            if perm[c] != usize::MAX {
                return None;
            }
            perm[c] = r;
        }
        perm.iter().all(|&v| v != usize::MAX).then_some(perm)
    }

    /// Flattens to a sparse vector over row-major coordinates `r·cols + c`.
    pub fn flatten(&self) -> SparseVec {
        let mut out = Vec::with_capacity(self.nnz());
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out.push((r * self.cols + c, v.clone()));
            }
        }
        out
    }

    /// Inverse of [`ExactMatrix::flatten`] for a known shape.
    pub fn from_flat(rows: usize, cols: usize, flat: &SparseVec) -> ExactMatrix {
        ExactMatrix::from_triplets(
            rows,
            cols,
            flat.iter().map(|(i, v)| (i / cols, i % cols, v.clone())),
        )
    }

    /// Coordinate-list text: `row col numerator/denominator` per line.
    pub fn to_coord_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                let _ = writeln!(out, "{} {} {}/{}", r, c, v.numer(), v.denom());
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.data.iter().enumerate().flat_map(|(r, row)| {
                row.iter().map(move |(c, v)| {
                    serde_json::json!([r, c, v.numer().to_string(), v.denom().to_string()])
                })
            }).collect::<Vec<_>>(),
        })
    }
}

/// Exact Gaussian rational `re + im·i` with `i² = -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn zero() -> Self {
        GaussRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussRational {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        GaussRational {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        GaussRational {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        GaussRational {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn neg(&self) -> Self {
        GaussRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        let norm = &self.re * &self.re + &self.im * &self.im;
        assert!(!norm.is_zero(), "inverse of zero");
        GaussRational {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        }
    }
}

/// Dense square matrix over `ℚ(i)`; only used at tiny sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussMatrix {
    n: usize,
    data: Vec<GaussRational>,
}

impl GaussMatrix {
    pub fn zeros(n: usize) -> Self {
        GaussMatrix {
            n,
            data: vec![GaussRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = GaussMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, GaussRational::one());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussRational {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussRational) {
        self.data[r * self.n + c] = v;
    }

    pub fn from_exact(m: &ExactMatrix) -> GaussMatrix {
        assert_eq!(m.nrows(), m.ncols());
        let mut out = GaussMatrix::zeros(m.nrows());
        for r in 0..m.nrows() {
            for (c, v) in m.row(r) {
                out.set(r, *c, GaussRational::from_rational(v.clone()));
            }
        }
        out
    }

    pub fn mul(&self, other: &GaussMatrix) -> GaussMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = GaussMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &GaussMatrix) -> GaussMatrix {
        let n = self.n * other.n;
        let mut out = GaussMatrix::zeros(n);
        for ia in 0..self.n {
            for ja in 0..self.n {
                let a = self.get(ia, ja);
                if a.is_zero() {
                    continue;
                }
                for ib in 0..other.n {
                    for jb in 0..other.n {
                        let b = other.get(ib, jb);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(ia * other.n + ib, ja * other.n + jb, a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// Gauss-Jordan inverse over the exact field; panics if singular.
    pub fn inverse(&self) -> GaussMatrix {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = GaussMatrix::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .expect("matrix is singular");
            if pivot_row != col {
                for j in 0..n {
                    let tmp = a.get(col, j).clone();
                    a.set(col, j, a.get(pivot_row, j).clone());
                    a.set(pivot_row, j, tmp);
                    let tmp = inv.get(col, j).clone();
                    inv.set(col, j, inv.get(pivot_row, j).clone());
                    inv.set(pivot_row, j, tmp);
                }
            }
            let scale = a.get(col, col).inv();
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&scale));
                inv.set(col, j, inv.get(col, j).mul(&scale));
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let av = a.get(r, j).sub(&factor.mul(a.get(col, j)));
                    a.set(r, j, av);
                    let iv = inv.get(r, j).sub(&factor.mul(inv.get(col, j)));
                    inv.set(r, j, iv);
                }
            }
        }
        inv
    }
}
