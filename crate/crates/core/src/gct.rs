//! Generalized cycle types of Brauer diagrams: strings over the alphabet
//! `{U, L, T}` up to cyclic shift and reversal, the trace procedure reading
//! them off a perfect matching, and the mutually inverse maps between cycle
//! types and disjoint unions of directed cycles.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graphs::{is_cycle_union, Multidigraph};
use crate::partitions::SetPartition;
use crate::{Caps, Error, Result};

/// The three letters; `U < L < T` is the order used for canonical
/// representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UltLetter {
    U,
    L,
    T,
}

impl UltLetter {
    pub const ALL: [UltLetter; 3] = [UltLetter::U, UltLetter::L, UltLetter::T];

    fn as_char(self) -> char {
        match self {
            UltLetter::U => 'U',
            UltLetter::L => 'L',
            UltLetter::T => 'T',
        }
    }

    fn from_char(c: char) -> Result<Self> {
        match c {
            'U' => Ok(UltLetter::U),
            'L' => Ok(UltLetter::L),
            'T' => Ok(UltLetter::T),
            other => Err(Error::Parse(format!("bad letter {other:?}"))),
        }
    }
}

/// A nonempty word over `{U, L, T}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UltString {
    letters: Vec<UltLetter>,
}

impl UltString {
    pub fn new(letters: Vec<UltLetter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Parse("empty string".into()));
        }
        Ok(UltString { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[UltLetter] {
        &self.letters
    }

    fn shifted(&self, k: usize) -> UltString {
        let n = self.letters.len();
        UltString {
            letters: (0..n).map(|i| self.letters[(i + k) % n]).collect(),
        }
    }

    fn reversed(&self) -> UltString {
        UltString {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }
}

impl fmt::Display for UltString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for UltString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        UltString::new(s.chars().map(UltLetter::from_char).collect::<Result<_>>()?)
    }
}

/// Equivalence class of strings under cyclic shift and reversal, stored via
/// its canonical representative: the minimum over the orbit in the
/// `U < L < T` lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UltClass {
    representative: UltString,
}

impl UltClass {
    pub fn representative(&self) -> &UltString {
        &self.representative
    }

    pub fn len(&self) -> usize {
        self.representative.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for UltClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.representative.fmt(f)
    }
}

/// Canonicalizes a string: minimum over all shifts and both reading
/// directions.
pub fn canonicalize_string(s: &UltString) -> UltClass {
    let n = s.len();
    let mut best = s.clone();
    for base in [s.clone(), s.reversed()] {
        for k in 0..n {
            let candidate = base.shifted(k);
            if candidate.letters < best.letters {
                best = candidate;
            }
        }
    }
    UltClass {
        representative: best,
    }
}

/// A generalized cycle type: multiset of string classes, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gct {
    classes: Vec<UltClass>,
}

impl Gct {
    pub fn new(mut classes: Vec<UltClass>) -> Self {
        classes.sort();
        Gct { classes }
    }

    pub fn classes(&self) -> &[UltClass] {
        &self.classes
    }

    /// Sum of the string lengths.
    pub fn total_length(&self) -> usize {
        self.classes.iter().map(UltClass::len).sum()
    }

    /// Comma-joined canonical strings sorted as plain text, e.g. `T,ULT`.
    pub fn to_text(&self) -> String {
        let mut parts: Vec<String> = self.classes.iter().map(|c| c.to_string()).collect();
        parts.sort();
        parts.join(",")
    }
}

impl fmt::Display for Gct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl FromStr for Gct {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let classes = s
            .split(',')
            .map(|part| Ok(canonicalize_string(&part.trim().parse()?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Gct::new(classes))
    }
}

/// Membership test for the cycle-type constraints on a single class:
/// balanced `U`/`L` counts and no cyclic factor `U T^i U` or `L T^i L`.
/// The factor check is read cyclically so that membership does not depend on
/// the chosen representative.
pub fn is_valid_class(class: &UltClass) -> bool {
    let letters = class.representative().letters();
    let n = letters.len();
    let us = letters.iter().filter(|&&l| l == UltLetter::U).count();
    let ls = letters.iter().filter(|&&l| l == UltLetter::L).count();
    if us != ls {
        return false;
    }
    for start in 0..n {
        let l = letters[start];
        if l == UltLetter::T {
            continue;
        }
        // Scan forward cyclically past T's to the next non-T letter.
        let mut i = (start + 1) % n;
        let mut steps = 0;
        while letters[i] == UltLetter::T && steps < n {
            i = (i + 1) % n;
            steps += 1;
        }
        if steps < n && letters[i] == l {
            return false;
        }
    }
    true
}

fn validate_gct(c: &Gct) -> Result<()> {
    for class in c.classes() {
        if !is_valid_class(class) {
            return Err(Error::InvalidGct {
                reason: format!("string {class} violates the balance or factor rule"),
            });
        }
    }
    Ok(())
}

/// Reads the generalized cycle type off a Brauer diagram by tracing strands:
/// starting from a dot, walk its block edge, record `T` for a through edge,
/// `U` for a top-row edge, `L` for a bottom-row edge, then hop to the column
/// partner and repeat until the walk closes. Each closed walk contributes one
/// string class; the multiset over all walks is the cycle type.
pub fn gct_of_brauer(p: &SetPartition) -> Result<Gct> {
    trace_brauer(p, None)
}

/// Same trace with the starting dots chosen pseudo-randomly; the output is
/// identical to [`gct_of_brauer`] for every seed because classes are
/// canonicalized.
pub fn gct_of_brauer_shuffled(p: &SetPartition, seed: u64) -> Result<Gct> {
    trace_brauer(p, Some(seed))
}

fn trace_brauer(p: &SetPartition, seed: Option<u64>) -> Result<Gct> {
    if !p.is_brauer() {
        return Err(Error::NotBrauer);
    }
    let size = p.size();
    let d = size / 2;
    // partner[e] = the other dot in e's block (1-based dots).
    let mut partner = vec![0usize; size + 1];
    for block in p.blocks() {
        partner[block[0]] = block[1];
        partner[block[1]] = block[0];
    }
    let column = |e: usize| if e <= d { e + d } else { e - d };

    let mut order: Vec<usize> = (1..=size).collect();
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        order.shuffle(&mut rng);
    }

    let mut visited = vec![false; size + 1];
    let mut classes = Vec::new();
    for &start in &order {
        if visited[start] {
            continue;
        }
        let mut letters = Vec::new();
        let mut current = start;
        loop {
            visited[current] = true;
            let next = partner[current];
            visited[next] = true;
            let letter = match (current > d, next > d) {
                (true, true) => UltLetter::U,
                (false, false) => UltLetter::L,
                _ => UltLetter::T,
            };
            letters.push(letter);
            current = column(next);
            if current == start {
                break;
            }
        }
        classes.push(canonicalize_string(&UltString::new(letters)?));
    }
    Ok(Gct::new(classes))
}

/// Reads the cycle type of a disjoint union of directed cycles: each vertex
/// is typed `U` (two arrows in), `L` (two arrows out) or `T` (one each, which
/// includes loop vertices), and each component contributes the vertex types
/// read around its cycle.
pub fn rho(g: &Multidigraph) -> Result<Gct> {
    if !is_cycle_union(g) {
        return Err(Error::InvalidGct {
            reason: "graph is not a disjoint union of cycles".into(),
        });
    }
    let nv = g.num_vertices();
    let mut indeg = vec![0usize; nv];
    let mut outdeg = vec![0usize; nv];
    // Incident arrows per vertex (arrow index, twice for loops).
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (idx, &(s, t)) in g.arrows().iter().enumerate() {
        outdeg[s] += 1;
        indeg[t] += 1;
        incident[s].push(idx);
        if s != t {
            incident[t].push(idx);
        }
    }
    let letter = |v: usize| match (indeg[v], outdeg[v]) {
        (2, 0) => UltLetter::U,
        (0, 2) => UltLetter::L,
        (1, 1) => UltLetter::T,
        _ => unreachable!("cycle-union vertices have undirected degree 2"),
    };

    let mut visited_vertex = vec![false; nv];
    let mut classes = Vec::new();
    for start in 0..nv {
        if visited_vertex[start] {
            continue;
        }
        let mut letters = vec![letter(start)];
        visited_vertex[start] = true;
        // Walk the underlying cycle: leave `start` along its first incident
        // edge and keep leaving each vertex by the other edge.
        let mut used_edge = vec![false; g.num_arrows()];
        let first = incident[start][0];
        used_edge[first] = true;
        let (s, t) = g.arrows()[first];
        let mut current = if s == start { t } else { s };
        while current != start {
            visited_vertex[current] = true;
            letters.push(letter(current));
            let next_edge = incident[current]
                .iter()
                .copied()
                .find(|&e| !used_edge[e])
                .expect("cycle continues");
            used_edge[next_edge] = true;
            let (s, t) = g.arrows()[next_edge];
            current = if s == current { t } else { s };
        }
        classes.push(canonicalize_string(&UltString::new(letters)?));
    }
    Ok(Gct::new(classes))
}

/// Builds the disjoint union of directed cycles with a given cycle type.
/// Each all-`T` string becomes a consistently oriented cycle; otherwise the
/// representative is rotated to start with `U` and the cycle is grown vertex
/// by vertex, closing with an arrow from the last vertex to the first.
pub fn nu(c: &Gct, caps: &Caps) -> Result<Multidigraph> {
    validate_gct(c)?;
    let mut arrows = Vec::new();
    let mut offset = 0usize;
    for class in c.classes() {
        let letters = string_starting_with_u(class);
        let n = letters.len();
        if letters.iter().all(|&l| l == UltLetter::T) {
            // Directed cycle v0 -> v1 -> ... -> v_{n-1} -> v0 (a loop if n = 1).
            for i in 0..n {
                arrows.push((offset + i, offset + (i + 1) % n));
            }
        } else {
            // letters[0] == U. Vertices 0..n in construction order; the arrow
            // between v_{i-1} and v_i points so that the letter at v_i holds,
            // and the closing arrow runs from v_{n-1} to v_0.
            // First arrow: v1 -> v0 (the U at v0 receives).
            arrows.push((offset + 1, offset));
            for i in 1..n - 1 {
                // Letter at position i dictates the arrow between v_i, v_{i+1}.
                match letters[i] {
                    // U: v_i receives another arrow.
                    UltLetter::U => arrows.push((offset + i + 1, offset + i)),
                    // L: v_i emits another arrow.
                    UltLetter::L => arrows.push((offset + i, offset + i + 1)),
                    // T: continue in the direction of the previous arrow.
                    UltLetter::T => {
                        let &(_, prev_target) = arrows.last().unwrap();
                        if prev_target == offset + i {
                            arrows.push((offset + i, offset + i + 1));
                        } else {
                            arrows.push((offset + i + 1, offset + i));
                        }
                    }
                }
            }
            // Closing arrow from the last vertex back to the start.
            arrows.push((offset + n - 1, offset));
        }
        offset += n;
    }
    let labeled = crate::graphs::LabeledMultidigraph::new(offset, arrows)?;
    crate::graphs::canonicalize(&labeled, caps)
}

/// A representative of the class that starts with `U` when the string
/// contains one (the canonical representative already does, since `U` is the
/// smallest letter); all-`T` strings are returned as-is.
fn string_starting_with_u(class: &UltClass) -> Vec<UltLetter> {
    class.representative().letters().to_vec()
}

/// All canonical string classes of length `len` satisfying the cycle-type
/// constraints, sorted.
pub fn valid_classes_of_length(len: usize) -> Vec<UltClass> {
    let mut found = std::collections::BTreeSet::new();
    let mut word = vec![UltLetter::U; len];
    enumerate_words(&mut word, 0, &mut |w| {
        let s = UltString::new(w.to_vec()).expect("nonempty");
        let class = canonicalize_string(&s);
        if class.representative() == &s && is_valid_class(&class) {
            found.insert(class);
        }
    });
    found.into_iter().collect()
}

fn enumerate_words(
    word: &mut Vec<UltLetter>,
    pos: usize,
    f: &mut impl FnMut(&[UltLetter]),
) {
    if pos == word.len() {
        f(word);
        return;
    }
    for l in UltLetter::ALL {
        word[pos] = l;
        enumerate_words(word, pos + 1, f);
    }
}

/// All generalized cycle types of total length `d`, in deterministic order
/// (sorted by text form).
pub fn enumerate_gct(d: usize, caps: &Caps) -> Result<Vec<Gct>> {
    caps.check_partition_size(2 * d)?;
    let by_length: BTreeMap<usize, Vec<UltClass>> = (1..=d)
        .map(|len| (len, valid_classes_of_length(len)))
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<UltClass> = Vec::new();
    fn extend(
        remaining: usize,
        min_len: usize,
        by_length: &BTreeMap<usize, Vec<UltClass>>,
        current: &mut Vec<UltClass>,
        out: &mut Vec<Gct>,
    ) {
        if remaining == 0 {
            out.push(Gct::new(current.clone()));
            return;
        }
        for len in min_len..=remaining {
            for class in &by_length[&len] {
                // Keep multisets sorted to avoid duplicates: within the same
                // length, require non-decreasing class order.
                if let Some(last) = current.last() {
                    if last.len() == len && class < last {
                        continue;
                    }
                }
                current.push(class.clone());
                extend(remaining - len, len, by_length, current, out);
                current.pop();
            }
        }
    }
    extend(d, 1, &by_length, &mut current, &mut out);
    out.sort_by_key(|g| g.to_text());
    out.dedup();
    Ok(out)
}
