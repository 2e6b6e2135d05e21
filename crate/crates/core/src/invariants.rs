//! Dimension oracles for conjugation-invariant polynomials on matrices:
//! a classwise Molien-series computation for the permutation group, the
//! graph-census predictions, and Hilbert tables with stability flags.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::graphs::{census, CensusOptions};
use crate::{Caps, Error, Result};

/// A conjugacy class of the permutation group on `n` letters: the cycle
/// lengths (sorted descending) and the class size
/// `n! / Π_k (k^{m_k} · m_k!)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleType {
    parts: Vec<usize>,
    class_size: BigInt,
}

impl CycleType {
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn class_size(&self) -> &BigInt {
        &self.class_size
    }
}

/// All cycle types of the permutation group on `n` letters.
pub fn cycle_types(n: usize) -> Vec<CycleType> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn recurse(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            current.push(part);
            recurse(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut partitions = Vec::new();
    recurse(n, n, &mut current, &mut partitions);
    let n_factorial = factorial(n);
    for parts in partitions {
        let mut denominator = BigInt::one();
        let mut k = 0;
        while k < parts.len() {
            let part = parts[k];
            let mut mult = 0usize;
            while k < parts.len() && parts[k] == part {
                mult += 1;
                k += 1;
            }
            denominator *= BigInt::from(part).pow(mult as u32) * factorial(mult);
        }
        out.push(CycleType {
            class_size: &n_factorial / denominator,
            parts,
        });
    }
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Truncated power series `Σ coeffs[k] t^k` over `ℚ`.
#[derive(Debug, Clone)]
struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    fn one(truncation: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); truncation + 1];
        coeffs[0] = BigRational::one();
        Series { coeffs }
    }

    /// Multiplies by `1 / (1 - t^period)` = `Σ_k t^{k·period}`.
    fn mul_geometric(&mut self, period: usize) {
        let truncation = self.coeffs.len() - 1;
        for k in period..=truncation {
            let prev = self.coeffs[k - period].clone();
            self.coeffs[k] += prev;
        }
    }
}

/// Dimension of the degree-`d` conjugation invariants of the permutation
/// group acting on `n × n` matrix coordinates, by classwise Molien
/// averaging.
///
/// A permutation with cycle lengths `c_1, ..., c_r` permutes the `c_i · c_j`
/// coordinates in block `(i, j)` in `gcd(c_i, c_j)` cycles of length
/// `lcm(c_i, c_j)`; the class contributes the `t^d` coefficient of the
/// product of the corresponding geometric series.
pub fn molien_dim_sym(n: usize, d: usize, caps: &Caps) -> Result<u64> {
    caps.check("molien n", n, caps.molien_max_n)?;
    caps.check("molien d", d, caps.molien_max_d)?;
    if n == 0 {
        return Ok(u64::from(d == 0));
    }
    if d == 0 {
        return Ok(1);
    }
    let classes = cycle_types(n);
    let contributions: Vec<BigRational> = classes
        .par_iter()
        .map(|class| {
            let mut series = Series::one(d);
            for (i, &ci) in class.parts().iter().enumerate() {
                for (j, &cj) in class.parts().iter().enumerate() {
                    let _ = (i, j);
                    let g = ci.gcd(&cj);
                    let l = ci / g * cj;
                    for _ in 0..g {
                        series.mul_geometric(l);
                    }
                }
            }
            BigRational::from(class.class_size().clone()) * &series.coeffs[d]
        })
        .collect();
    let total: BigRational = contributions
        .into_iter()
        .fold(BigRational::zero(), |acc, c| acc + c);
    let average = total / BigRational::from(factorial(n));
    if !average.is_integer() || average.is_negative() {
        return Err(Error::Parse(format!(
            "Molien average is not a nonnegative integer: {average} (n={n}, d={d})"
        )));
    }
    let value = average.to_integer();
    u64::try_from(&value)
        .map_err(|_| Error::Parse(format!("Molien value {value} overflows u64")))
}

/// Which family of groups a graph-count prediction refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountGroup {
    Sym,
    Orth,
    Symp,
}

/// A predicted dimension, or a marker that the inputs are outside the range
/// where the prediction applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum GraphCountResult {
    Dimension(u64),
    OutOfRange,
}

impl GraphCountResult {
    pub fn value(self) -> Option<u64> {
        match self {
            GraphCountResult::Dimension(v) => Some(v),
            GraphCountResult::OutOfRange => None,
        }
    }
}

/// The dimension of the degree-`d` conjugation invariants predicted purely
/// by graph counting: multidigraphs with at most `n` vertices for the
/// permutation group, cycle unions for the orthogonal (`n ≥ d`) and
/// symplectic (`n ≥ 2d`, `n` even) groups. Requests outside those ranges
/// yield [`GraphCountResult::OutOfRange`].
pub fn graph_count_dim(
    group: CountGroup,
    n: usize,
    d: usize,
    caps: &Caps,
) -> Result<GraphCountResult> {
    if d == 0 {
        // Constants are invariant for every group.
        return Ok(GraphCountResult::Dimension(1));
    }
    match group {
        CountGroup::Sym => {
            if n == 0 {
                return Ok(GraphCountResult::Dimension(0));
            }
            let graphs = census(
                d,
                CensusOptions {
                    max_vertices: Some(n),
                    ..Default::default()
                },
                caps,
            )?;
            Ok(GraphCountResult::Dimension(graphs.len() as u64))
        }
        CountGroup::Orth => {
            if n < d {
                return Ok(GraphCountResult::OutOfRange);
            }
            let graphs = census(
                d,
                CensusOptions {
                    cycles_only: true,
                    ..Default::default()
                },
                caps,
            )?;
            Ok(GraphCountResult::Dimension(graphs.len() as u64))
        }
        CountGroup::Symp => {
            if n % 2 != 0 {
                return Err(Error::OddSymplecticDimension { n });
            }
            if n < 2 * d {
                return Ok(GraphCountResult::OutOfRange);
            }
            let graphs = census(
                d,
                CensusOptions {
                    cycles_only: true,
                    ..Default::default()
                },
                caps,
            )?;
            Ok(GraphCountResult::Dimension(graphs.len() as u64))
        }
    }
}

/// Table of invariant dimensions, rows indexed by `n`, columns by `d`, with
/// per-column stability thresholds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertTable {
    pub group: String,
    pub n_values: Vec<usize>,
    pub d_values: Vec<usize>,
    /// `entries[i][j]` = dimension at `(n_values[i], d_values[j])`.
    pub entries: Vec<Vec<u64>>,
    /// For each column `d`: `Some(2d)` when the entries are constant for all
    /// `n ≥ 2d` within the table, otherwise `None`.
    pub stable_from: Vec<Option<usize>>,
}

impl HilbertTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n");
        for d in &self.d_values {
            out.push_str(&format!(",d={d}"));
        }
        out.push('\n');
        for (i, n) in self.n_values.iter().enumerate() {
            out.push_str(&n.to_string());
            for v in &self.entries[i] {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Molien dimensions for the permutation group over ranges of `n` and `d`,
/// with stability flagged per column where the tabulated entries are
/// constant from `n = 2d` on.
pub fn hilbert_table(
    n_values: Vec<usize>,
    d_values: Vec<usize>,
    caps: &Caps,
) -> Result<HilbertTable> {
    let mut entries = Vec::with_capacity(n_values.len());
    for &n in &n_values {
        let mut row = Vec::with_capacity(d_values.len());
        for &d in &d_values {
            row.push(molien_dim_sym(n, d, caps)?);
        }
        entries.push(row);
    }
    let stable_from = d_values
        .iter()
        .enumerate()
        .map(|(j, &d)| {
            let threshold = 2 * d;
            let tail: Vec<u64> = n_values
                .iter()
                .enumerate()
                .filter(|(_, &n)| n >= threshold)
                .map(|(i, _)| entries[i][j])
                .collect();
            if !tail.is_empty() && tail.iter().all(|&v| v == tail[0]) {
                Some(threshold)
            } else {
                None
            }
        })
        .collect();
    Ok(HilbertTable {
        group: "sym".into(),
        n_values,
        d_values,
        entries,
        stable_from,
    })
}
