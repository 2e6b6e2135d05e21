//! Multidigraphs and their correspondence with set partitions: the
//! edge-labeled bijection, canonical forms for unlabeled graphs, edge
//! relabeling, and the censuses of unlabeled multidigraphs with a fixed
//! number of arrows.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::partitions::{Permutation, RgsIter, SetPartition};
use crate::{Caps, Error, Result};

/// Directed multigraph with `d` arrows carrying labels `1..=d` by position:
/// `arrows[k]` is the arrow labeled `k + 1`. Vertices are `0..num_vertices`
/// and every vertex is incident to some arrow.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledMultidigraph {
    num_vertices: usize,
    arrows: Vec<(usize, usize)>,
}

impl LabeledMultidigraph {
    pub fn new(num_vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let mut covered = vec![false; num_vertices];
        for &(s, t) in &arrows {
            if s >= num_vertices || t >= num_vertices {
                return Err(Error::Parse(format!(
                    "arrow ({s}, {t}) outside vertex range 0..{num_vertices}"
                )));
            }
            covered[s] = true;
            covered[t] = true;
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(Error::IsolatedVertex { vertex: v });
        }
        Ok(LabeledMultidigraph {
            num_vertices,
            arrows,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }
}

/// Unlabeled multidigraph stored only in canonical form, so equality of
/// values is graph isomorphism. No isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multidigraph {
    num_vertices: usize,
    arrows: Vec<(usize, usize)>,
}

impl Multidigraph {
    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    /// Sorted arrow multiset under the canonical vertex labeling.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }
}

impl fmt::Display for Multidigraph {
    /// Text form `n=<k>; <s>-><t>,...` with 1-based canonical vertex labels.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; ", self.num_vertices)?;
        for (i, (s, t)) in self.arrows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}->{}", s + 1, t + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Multidigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("multidigraph text: {m}"));
        let rest = s.strip_prefix("n=").ok_or_else(|| bad("missing n="))?;
        let (n_str, arrows_str) = rest.split_once(';').ok_or_else(|| bad("missing ;"))?;
        let n: usize = n_str.trim().parse().map_err(|_| bad("vertex count"))?;
        let mut arrows = Vec::new();
        let arrows_str = arrows_str.trim();
        if !arrows_str.is_empty() {
            for part in arrows_str.split(',') {
                let (a, b) = part.trim().split_once("->").ok_or_else(|| bad("arrow"))?;
                let s: usize = a.trim().parse().map_err(|_| bad("source"))?;
                let t: usize = b.trim().parse().map_err(|_| bad("target"))?;
                if s == 0 || t == 0 || s > n || t > n {
                    return Err(bad("vertex label out of range"));
                }
                arrows.push((s - 1, t - 1));
            }
        }
        // Re-canonicalize: parsed text need not be canonical.
        canonicalize_raw(n, &arrows)
    }
}

/// The edge-labeled multidigraph of a set partition of `[1, 2d]`: one vertex
/// per block (canonical block order) and, for each `1 <= k <= d`, an arrow
/// labeled `k` from the block containing `k` to the block containing `k + d`.
pub fn psi(p: &SetPartition) -> Result<LabeledMultidigraph> {
    if p.size() % 2 != 0 {
        return Err(Error::SizeMismatch {
            left: p.size(),
            right: p.size() + 1,
        });
    }
    let d = p.size() / 2;
    let rgs = p.to_rgs();
    let arrows = (0..d).map(|k| (rgs[k], rgs[k + d])).collect();
    LabeledMultidigraph::new(p.num_blocks(), arrows)
}

/// Inverse of [`psi`]: vertex `v` becomes the block collecting the labels `k`
/// of arrows leaving `v` and the labels `k + d` of arrows entering `v`.
pub fn psi_inverse(g: &LabeledMultidigraph) -> Result<SetPartition> {
    let d = g.num_arrows();
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); g.num_vertices()];
    for (k, &(s, t)) in g.arrows().iter().enumerate() {
        blocks[s].push(k + 1);
        blocks[t].push(k + 1 + d);
    }
    if let Some(v) = blocks.iter().position(Vec::is_empty) {
        return Err(Error::IsolatedVertex { vertex: v });
    }
    SetPartition::new(2 * d, blocks)
}

/// Permutes arrow labels: the arrow formerly labeled `k` carries label
/// `σ(k)` afterwards, so `psi(σ.π) = relabel_edges(psi(π), σ)` up to the
/// vertex reindexing induced by block renaming.
pub fn relabel_edges(
    g: &LabeledMultidigraph,
    sigma: &Permutation,
) -> Result<LabeledMultidigraph> {
    if sigma.degree() != g.num_arrows() {
        return Err(Error::SizeMismatch {
            left: sigma.degree(),
            right: g.num_arrows(),
        });
    }
    let mut arrows = vec![(0usize, 0usize); g.num_arrows()];
    for (k, &arrow) in g.arrows().iter().enumerate() {
        arrows[sigma.apply(k + 1) - 1] = arrow;
    }
    LabeledMultidigraph::new(g.num_vertices(), arrows)
}

/// Iteratively refines vertex colors from (out-degree, in-degree, loops) by
/// the multiset of (direction, neighbor color) over incident non-loop arrows.
/// Returns stable color ids ordered by the underlying invariant keys.
fn refine_colors(nv: usize, arrows: &[(usize, usize)]) -> Vec<usize> {
    // Initial signature (in-degree, out-degree, loops), loops kept separate;
    // the ordering puts pure sources before pure sinks so small graphs get
    // their natural labels.
    let mut colors: Vec<usize> = {
        let mut keys: Vec<(usize, usize, usize)> = vec![(0, 0, 0); nv];
        for &(s, t) in arrows {
            if s == t {
                keys[s].2 += 1;
            } else {
                keys[s].1 += 1;
                keys[t].0 += 1;
            }
        }
        rank_keys(&keys)
    };
    loop {
        let mut keys: Vec<(usize, Vec<(u8, usize)>)> = colors
            .iter()
            .map(|&c| (c, Vec::new()))
            .collect();
        for &(s, t) in arrows {
            if s == t {
                continue;
            }
            keys[s].1.push((0, colors[t]));
            keys[t].1.push((1, colors[s]));
        }
        for k in &mut keys {
            k.1.sort_unstable();
        }
        let next = rank_keys(&keys);
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

fn rank_keys<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap())
        .collect()
}

/// Canonical labeling of a connected graph: vertices are grouped into color
/// classes; new labels are assigned class block by class block; among the
/// class-preserving assignments the lexicographically minimal sorted arrow
/// list wins.
fn canonical_component(nv: usize, arrows: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let colors = refine_colors(nv, arrows);
    let num_classes = colors.iter().copied().max().map_or(0, |m| m + 1);
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); num_classes];
    for (v, &c) in colors.iter().enumerate() {
        classes[c].push(v);
    }
    let mut offsets = Vec::with_capacity(num_classes);
    let mut acc = 0;
    for class in &classes {
        offsets.push(acc);
        acc += class.len();
    }

    let mut assignment = vec![usize::MAX; nv];
    let mut best: Option<Vec<(usize, usize)>> = None;
    assign_classes(
        0,
        &classes,
        &offsets,
        arrows,
        &mut assignment,
        &mut best,
    );
    best.expect("at least one labeling")
}

fn assign_classes(
    class_idx: usize,
    classes: &[Vec<usize>],
    offsets: &[usize],
    arrows: &[(usize, usize)],
    assignment: &mut Vec<usize>,
    best: &mut Option<Vec<(usize, usize)>>,
) {
    if class_idx == classes.len() {
        let mut relabeled: Vec<(usize, usize)> = arrows
            .iter()
            .map(|&(s, t)| (assignment[s], assignment[t]))
            .collect();
        relabeled.sort_unstable();
        match best {
            None => *best = Some(relabeled),
            Some(b) if relabeled < *b => *best = Some(relabeled),
            _ => {}
        }
        return;
    }
    // All orderings of this class over its block of new indices.
    let members = &classes[class_idx];
    let base = offsets[class_idx];
    permute_into(members, 0, base, assignment, &mut |assignment| {
        assign_classes(class_idx + 1, classes, offsets, arrows, assignment, best)
    });
}

fn permute_into(
    members: &[usize],
    depth: usize,
    base: usize,
    assignment: &mut Vec<usize>,
    f: &mut impl FnMut(&mut Vec<usize>),
) {
    if depth == members.len() {
        f(assignment);
        return;
    }
    for i in 0..members.len() {
        let v = members[i];
        if assignment[v] != usize::MAX {
            continue;
        }
        assignment[v] = base + depth;
        permute_into(members, depth + 1, base, assignment, f);
        assignment[v] = usize::MAX;
    }
}

/// Canonical form of a raw arrow list: connected components are canonicalized
/// independently, ordered by their canonical forms, and reassembled with
/// consecutive vertex blocks.
fn canonicalize_raw(nv: usize, arrows: &[(usize, usize)]) -> Result<Multidigraph> {
    let mut covered = vec![false; nv];
    for &(s, t) in arrows {
        if s >= nv || t >= nv {
            return Err(Error::Parse("arrow endpoint out of range".into()));
        }
        covered[s] = true;
        covered[t] = true;
    }
    if let Some(v) = covered.iter().position(|c| !c) {
        return Err(Error::IsolatedVertex { vertex: v });
    }

    // Connected components, ignoring direction.
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(s, t) in arrows {
        let (a, b) = (find(&mut parent, s), find(&mut parent, t));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut comp_vertices: Vec<Vec<usize>> = Vec::new();
    let mut comp_of_root: Vec<Option<usize>> = vec![None; nv];
    for v in 0..nv {
        let r = find(&mut parent, v);
        let idx = match comp_of_root[r] {
            Some(i) => i,
            None => {
                comp_of_root[r] = Some(comp_vertices.len());
                comp_vertices.push(Vec::new());
                comp_vertices.len() - 1
            }
        };
        comp_vertices[idx].push(v);
    }

    let mut components: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
    for vertices in &comp_vertices {
        let local: std::collections::HashMap<usize, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let local_arrows: Vec<(usize, usize)> = arrows
            .iter()
            .filter(|(s, _)| local.contains_key(s))
            .map(|&(s, t)| (local[&s], local[&t]))
            .collect();
        let canonical = canonical_component(vertices.len(), &local_arrows);
        components.push((vertices.len(), canonical));
    }
    components.sort();

    let mut out_arrows = Vec::with_capacity(arrows.len());
    let mut offset = 0;
    for (k, comp_arrows) in &components {
        out_arrows.extend(comp_arrows.iter().map(|&(s, t)| (s + offset, t + offset)));
        offset += k;
    }
    out_arrows.sort_unstable();
    Ok(Multidigraph {
        num_vertices: nv,
        arrows: out_arrows,
    })
}

/// Canonical form of an edge-labeled graph after forgetting the labels.
pub fn canonicalize(g: &LabeledMultidigraph, caps: &Caps) -> Result<Multidigraph> {
    caps.check("graph vertices", g.num_vertices(), caps.max_partition_size)?;
    canonicalize_raw(g.num_vertices(), g.arrows())
}

/// The unlabeled multidigraph of a set partition: [`psi`] followed by
/// [`canonicalize`].
pub fn phi(p: &SetPartition, caps: &Caps) -> Result<Multidigraph> {
    canonicalize(&psi(p)?, caps)
}

/// True iff every connected component's underlying undirected multigraph is
/// a cycle. Equivalently, every vertex has undirected degree exactly two,
/// counting loops twice; arrow orientations are arbitrary.
pub fn is_cycle_union(g: &Multidigraph) -> bool {
    degrees_all_two(g.num_vertices, &g.arrows)
}

fn degrees_all_two(nv: usize, arrows: &[(usize, usize)]) -> bool {
    let mut deg = vec![0usize; nv];
    for &(s, t) in arrows {
        deg[s] += 1;
        deg[t] += 1;
    }
    deg.iter().all(|&v| v == 2)
}

/// Options for [`census`].
#[derive(Debug, Clone, Copy, Default)]
pub struct CensusOptions {
    /// Keep only graphs with at most this many vertices.
    pub max_vertices: Option<usize>,
    /// Keep only disjoint unions of directed cycles.
    pub cycles_only: bool,
}

/// All unlabeled multidigraphs with `d` arrows (and no isolated vertices),
/// computed as the images of all set partitions of `[1, 2d]`, deduplicated by
/// canonical form and sorted. With `cycles_only` the survivors are exactly
/// the images of the perfect matchings; `max_vertices` keeps graphs with few
/// enough vertices.
pub fn census(d: usize, options: CensusOptions, caps: &Caps) -> Result<Vec<Multidigraph>> {
    if d == 0 {
        return Err(Error::Parse("census needs d >= 1".into()));
    }
    caps.check_partition_size(2 * d)?;
    let m = 2 * d;
    // Parallelize over restricted-growth prefixes; the final sorted merge
    // keeps the result independent of chunking and thread count.
    let prefix_len = m.min(4);
    let prefixes: Vec<Vec<usize>> = RgsIter::new(prefix_len).collect();
    let sets: Vec<HashSet<Multidigraph>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut set = HashSet::new();
            for rgs in RgsIter::with_prefix(m, prefix) {
                let nv = rgs.iter().copied().max().unwrap() + 1;
                if let Some(maxv) = options.max_vertices {
                    if nv > maxv {
                        continue;
                    }
                }
                let arrows: Vec<(usize, usize)> =
                    (0..d).map(|k| (rgs[k], rgs[k + d])).collect();
                if options.cycles_only && !degrees_all_two(nv, &arrows) {
                    continue;
                }
                let g = canonicalize_raw(nv, &arrows).expect("covering arrows");
                if options.cycles_only && !is_cycle_union(&g) {
                    continue;
                }
                set.insert(g);
            }
            set
        })
        .collect();
    let mut all: Vec<Multidigraph> = sets.into_iter().flatten().collect();
    all.sort();
    all.dedup();
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{
        conjugate_by, conjugation_orbits, enumerate_partitions,
    };
    use rand::{Rng, SeedableRng};

    fn caps() -> Caps {
        Caps::default()
    }

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn psi_small_examples() {
        // d = 1, {{1, 1'}}: one vertex, one loop.
        let g = psi(&sp("1 2")).unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.arrows(), &[(0, 0)]);

        // d = 1, {{1}, {1'}}: arrow between two vertices.
        let g = psi(&sp("1|2")).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.arrows(), &[(0, 1)]);

        // d = 2, {{1,2}, {1',2'}}: two parallel arrows.
        let g = psi(&sp("1 2|3 4")).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.arrows(), &[(0, 1), (0, 1)]);
    }

    #[test]
    fn psi_inverse_examples() {
        let loop_graph = LabeledMultidigraph::new(1, vec![(0, 0)]).unwrap();
        assert_eq!(psi_inverse(&loop_graph).unwrap(), sp("1 2"));
        let arrow = LabeledMultidigraph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(psi_inverse(&arrow).unwrap(), sp("1|2"));
    }

    #[test]
    fn psi_bijection_roundtrip() {
        for d in 1..=5usize {
            for p in enumerate_partitions(2 * d, &caps()).unwrap() {
                let g = psi(&p).unwrap();
                assert_eq!(psi_inverse(&g).unwrap(), p);
            }
        }
    }

    #[test]
    fn isolated_vertices_are_rejected() {
        assert!(matches!(
            LabeledMultidigraph::new(2, vec![(0, 0)]),
            Err(Error::IsolatedVertex { vertex: 1 })
        ));
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for d in 1..=5usize {
            let parts = enumerate_partitions(2 * d, &caps()).unwrap();
            for _ in 0..60 {
                let p = &parts[rng.gen_range(0..parts.len())];
                let g = psi(p).unwrap();
                let canonical = canonicalize(&g, &caps()).unwrap();
                // Random vertex relabeling of the same graph.
                let nv = g.num_vertices();
                let mut relabel: Vec<usize> = (0..nv).collect();
                for i in (1..nv).rev() {
                    relabel.swap(i, rng.gen_range(0..=i));
                }
                let moved: Vec<(usize, usize)> = g
                    .arrows()
                    .iter()
                    .map(|&(s, t)| (relabel[s], relabel[t]))
                    .collect();
                let g2 = LabeledMultidigraph::new(nv, moved).unwrap();
                assert_eq!(canonicalize(&g2, &caps()).unwrap(), canonical);
            }
        }
    }

    #[test]
    fn canonical_forms_distinguish_non_isomorphic() {
        let loop_graph = canonicalize(
            &LabeledMultidigraph::new(1, vec![(0, 0)]).unwrap(),
            &caps(),
        )
        .unwrap();
        let arrow = canonicalize(
            &LabeledMultidigraph::new(2, vec![(0, 1)]).unwrap(),
            &caps(),
        )
        .unwrap();
        assert_ne!(loop_graph, arrow);

        // Two presentations of the directed 2-cycle with swapped names.
        let c1 = canonicalize(
            &LabeledMultidigraph::new(2, vec![(0, 1), (1, 0)]).unwrap(),
            &caps(),
        )
        .unwrap();
        let c2 = canonicalize(
            &LabeledMultidigraph::new(2, vec![(1, 0), (0, 1)]).unwrap(),
            &caps(),
        )
        .unwrap();
        assert_eq!(c1, c2);
        // A loop is its own canonical form.
        assert_eq!(loop_graph.arrows(), &[(0, 0)]);
    }

    #[test]
    fn relabeling_theorem_via_partitions() {
        // psi(σ.π) = relabel_edges(psi(π), σ) as partitions, for random pairs.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for d in 1..=5usize {
            let parts = enumerate_partitions(2 * d, &caps()).unwrap();
            let perms = Permutation::all(d);
            for _ in 0..200 {
                let p = &parts[rng.gen_range(0..parts.len())];
                let sigma = &perms[rng.gen_range(0..perms.len())];
                let relabeled = relabel_edges(&psi(p).unwrap(), sigma).unwrap();
                let conj = conjugate_by(sigma, p).unwrap();
                assert_eq!(psi_inverse(&relabeled).unwrap(), conj);
                // Unlabeled images agree as well.
                assert_eq!(
                    canonicalize(&relabeled, &caps()).unwrap(),
                    phi(&conj, &caps()).unwrap()
                );
            }
        }
    }

    #[test]
    fn relabel_edges_composes() {
        let g = psi(&sp("1|2 3|4")).unwrap();
        let sigma = Permutation::transposition(2, 1).unwrap();
        let id = Permutation::identity(2);
        assert_eq!(relabel_edges(&g, &id).unwrap(), g);
        let twice =
            relabel_edges(&relabel_edges(&g, &sigma).unwrap(), &sigma.inverse()).unwrap();
        assert_eq!(twice, g);
    }

    #[test]
    fn phi_examples() {
        // Two disjoint loops.
        let g = phi(&sp("1 3|2 4"), &caps()).unwrap();
        assert_eq!(g.to_string(), "n=2; 1->1,2->2");
        // Parallel arrow pair.
        let g = phi(&sp("1 2|3 4"), &caps()).unwrap();
        assert_eq!(g.to_string(), "n=2; 1->2,1->2");
    }

    #[test]
    fn census_counts_small() {
        let c1 = census(1, CensusOptions::default(), &caps()).unwrap();
        assert_eq!(c1.len(), 2);
        let c2 = census(2, CensusOptions::default(), &caps()).unwrap();
        assert_eq!(c2.len(), 11);
        let cyc2 = census(
            2,
            CensusOptions {
                cycles_only: true,
                ..Default::default()
            },
            &caps(),
        )
        .unwrap();
        assert_eq!(cyc2.len(), 3);
        let small = census(
            1,
            CensusOptions {
                max_vertices: Some(1),
                ..Default::default()
            },
            &caps(),
        )
        .unwrap();
        assert_eq!(small.len(), 1); // only the loop
    }

    #[test]
    fn census_matches_orbit_counts() {
        for d in 1..=4usize {
            let parts = enumerate_partitions(2 * d, &caps()).unwrap();
            let orbits = conjugation_orbits(d, &parts).unwrap();
            let graphs = census(d, CensusOptions::default(), &caps()).unwrap();
            assert_eq!(orbits.len(), graphs.len(), "d = {d}");
        }
        for d in 1..=5usize {
            let brauer: Vec<SetPartition> = enumerate_partitions(2 * d, &caps())
                .unwrap()
                .into_iter()
                .filter(|p| p.is_brauer())
                .collect();
            let orbits = conjugation_orbits(d, &brauer).unwrap();
            let graphs = census(
                d,
                CensusOptions {
                    cycles_only: true,
                    ..Default::default()
                },
                &caps(),
            )
            .unwrap();
            assert_eq!(orbits.len(), graphs.len(), "Brauer d = {d}");
        }
    }

    #[test]
    fn conjugate_partitions_map_to_equal_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for d in 1..=4usize {
            let parts = enumerate_partitions(2 * d, &caps()).unwrap();
            let perms = Permutation::all(d);
            for _ in 0..50 {
                let p = &parts[rng.gen_range(0..parts.len())];
                let sigma = &perms[rng.gen_range(0..perms.len())];
                let q = conjugate_by(sigma, p).unwrap();
                assert_eq!(phi(p, &caps()).unwrap(), phi(&q, &caps()).unwrap());
            }
        }
    }

    /// Brute-force census by direct generation: all arrow multisets over at
    /// most 2d vertices, deduplicated by canonical form. Independent of psi.
    fn census_by_direct_generation(d: usize) -> Vec<Multidigraph> {
        let mut found = HashSet::new();
        for nv in 1..=2 * d {
            let pairs: Vec<(usize, usize)> = (0..nv)
                .flat_map(|s| (0..nv).map(move |t| (s, t)))
                .collect();
            // Non-decreasing index tuples = multisets of size d.
            let mut stack = vec![(Vec::<usize>::new(), 0usize)];
            while let Some((tuple, start)) = stack.pop() {
                if tuple.len() == d {
                    let arrows: Vec<(usize, usize)> =
                        tuple.iter().map(|&i| pairs[i]).collect();
                    let mut covered = vec![false; nv];
                    for &(s, t) in &arrows {
                        covered[s] = true;
                        covered[t] = true;
                    }
                    if covered.iter().all(|&c| c) {
                        found.insert(canonicalize_raw(nv, &arrows).unwrap());
                    }
                    continue;
                }
                for i in start..pairs.len() {
                    let mut next = tuple.clone();
                    next.push(i);
                    stack.push((next, i));
                }
            }
        }
        let mut out: Vec<Multidigraph> = found.into_iter().collect();
        out.sort();
        out
    }

    #[test]
    fn census_agrees_with_direct_generation() {
        for d in 1..=3usize {
            let via_partitions = census(d, CensusOptions::default(), &caps()).unwrap();
            let direct = census_by_direct_generation(d);
            assert_eq!(via_partitions, direct, "d = {d}");
        }
    }

    #[test]
    fn cycle_union_predicate() {
        let loop_graph: Multidigraph = "n=1; 1->1".parse().unwrap();
        assert!(is_cycle_union(&loop_graph));
        let parallel: Multidigraph = "n=2; 1->2,1->2".parse().unwrap();
        assert!(is_cycle_union(&parallel));
        let arrow: Multidigraph = "n=2; 1->2".parse().unwrap();
        assert!(!is_cycle_union(&arrow));
    }

    #[test]
    fn brauer_images_are_exactly_the_cycle_unions() {
        for d in 1..=5usize {
            let mut brauer_images = HashSet::new();
            for p in enumerate_partitions(2 * d, &caps()).unwrap() {
                let g = phi(&p, &caps()).unwrap();
                if p.is_brauer() {
                    assert!(is_cycle_union(&g), "Brauer {p} gave non-cycle {g}");
                    brauer_images.insert(g);
                } else {
                    assert!(!is_cycle_union(&g), "non-Brauer {p} gave cycle {g}");
                }
            }
            let cycles = census(
                d,
                CensusOptions {
                    cycles_only: true,
                    ..Default::default()
                },
                &caps(),
            )
            .unwrap();
            let cycle_set: HashSet<Multidigraph> = cycles.into_iter().collect();
            assert_eq!(brauer_images, cycle_set, "d = {d}");
        }
    }

    #[test]
    fn census_vertex_bounds() {
        for d in 1..=3usize {
            let all = census(d, CensusOptions::default(), &caps()).unwrap();
            assert!(all
                .iter()
                .all(|g| g.num_vertices() >= 1 && g.num_vertices() <= 2 * d));
            let bounded = census(
                d,
                CensusOptions {
                    max_vertices: Some(2 * d),
                    ..Default::default()
                },
                &caps(),
            )
            .unwrap();
            assert_eq!(all, bounded);
        }
    }

    #[test]
    fn graph_text_roundtrip() {
        for g in census(3, CensusOptions::default(), &caps()).unwrap() {
            let text = g.to_string();
            assert_eq!(text.parse::<Multidigraph>().unwrap(), g);
        }
    }
}
