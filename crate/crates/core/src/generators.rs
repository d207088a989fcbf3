//! Named constructions and seeded random instances.
//!
//! Randomness uses `ChaCha8Rng::seed_from_u64`; the identity is recorded in
//! the metadata header of every emitted graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::copies::supports_t;
use crate::error::{invalid, Result};
use crate::hypergraph::{Bipartition, FiveGraph, ThreeGraph, Vertex};
use crate::tiling::RainbowInstance;

pub const RNG_NAME: &str = "chacha8/seed_from_u64";

/// Extremal construction: `|A| = 2n/5 - 1`, `|B| = 3n/5 + 1`, edges are all
/// triples meeting `A`. `A` is `0..|A|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalGraph {
    pub graph: ThreeGraph,
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
}

pub fn gen_h_ext(n: usize) -> Result<ExtremalGraph> {
    if !n.is_multiple_of(5) || n < 10 {
        return invalid(format!("h_ext needs n divisible by 5 and n >= 10, got {n}"));
    }
    let a_size = 2 * n / 5 - 1;
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if x < a_size {
                    edges.push([x, y, z]);
                }
            }
        }
    }
    Ok(ExtremalGraph {
        graph: ThreeGraph::new(n, edges)?,
        a: (0..a_size).collect(),
        b: (a_size..n).collect(),
    })
}

pub fn gen_complete(n: usize) -> Result<ThreeGraph> {
    if n < 3 {
        return invalid(format!("complete 3-graph needs n >= 3, got {n}"));
    }
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                edges.push([x, y, z]);
            }
        }
    }
    ThreeGraph::new(n, edges)
}

/// All transversal triples of three consecutive parts of the given sizes.
pub fn gen_tripartite(sizes: [usize; 3]) -> Result<ThreeGraph> {
    let n: usize = sizes.iter().sum();
    let start = [0, sizes[0], sizes[0] + sizes[1]];
    let mut edges = Vec::new();
    for x in start[0]..start[1] {
        for y in start[1]..start[2] {
            for z in start[2]..n {
                edges.push([x, y, z]);
            }
        }
    }
    ThreeGraph::new(n, edges)
}

/// Each triple is kept with probability `p`; then every pair whose codegree is
/// below `delta_floor` receives uniformly random completing edges until it
/// reaches the floor. Pairs are repaired in lexicographic order, repeated
/// until a full pass changes nothing.
pub fn gen_random_codegree(n: usize, delta_floor: usize, p: f64, seed: u64) -> Result<ThreeGraph> {
    if n < 3 {
        return invalid(format!("random_codegree needs n >= 3, got {n}"));
    }
    if delta_floor > n - 2 {
        return invalid(format!("codegree floor {delta_floor} unreachable on {n} vertices (max {})", n - 2));
    }
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("edge probability {p} outside [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present = vec![false; n * n * n];
    let idx = |x: usize, y: usize, z: usize| {
        let mut t = [x, y, z];
        t.sort_unstable();
        (t[0] * n + t[1]) * n + t[2]
    };
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if rng.random_bool(p) {
                    present[idx(x, y, z)] = true;
                }
            }
        }
    }
    loop {
        let mut changed = false;
        for u in 0..n {
            for v in u + 1..n {
                let mut missing: Vec<usize> = Vec::new();
                let mut have = 0;
                for w in (0..n).filter(|&w| w != u && w != v) {
                    if present[idx(u, v, w)] {
                        have += 1;
                    } else {
                        missing.push(w);
                    }
                }
                while have < delta_floor {
                    let pos = rng.random_range(0..missing.len());
                    let w = missing.swap_remove(pos);
                    present[idx(u, v, w)] = true;
                    have += 1;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if present[idx(x, y, z)] {
                    edges.push([x, y, z]);
                }
            }
        }
    }
    ThreeGraph::new(n, edges)
}

/// The auxiliary 5-graph of (3,2)-split sets that support a copy of T.
pub fn gen_support_5graph(graph: &ThreeGraph, a: &[Vertex], b: &[Vertex]) -> Result<FiveGraph> {
    let n = graph.n();
    let mut seen = vec![false; n];
    for &v in a.iter().chain(b) {
        if v >= n || seen[v] {
            return invalid("A and B must partition the vertex set");
        }
        seen[v] = true;
    }
    if seen.iter().any(|s| !s) {
        return invalid("A and B must partition the vertex set");
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let mut edges = Vec::new();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            for k in j + 1..a.len() {
                for x in 0..b.len() {
                    for y in x + 1..b.len() {
                        let set = [a[i], a[j], a[k], b[x], b[y]];
                        if supports_t(graph, &set)? {
                            edges.push(set);
                        }
                    }
                }
            }
        }
    }
    FiveGraph::new(n, edges, Some(Bipartition { a, b }))
}

fn default_p() -> f64 {
    0.5
}

/// Declarative instance description, serialised as JSON with a `kind` tag.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GenSpec {
    HExt { n: usize },
    Complete { n: usize },
    Tripartite { sizes: [usize; 3] },
    RandomCodegree {
        n: usize,
        delta_floor: usize,
        seed: u64,
        #[serde(default = "default_p")]
        p: f64,
    },
    RainbowFamily { n: usize, members: Vec<GenSpec> },
    Support5graph { base: Box<GenSpec>, a: Vec<Vertex> },
}

/// Output of [`GenSpec::build`].
#[derive(Clone, Debug, PartialEq)]
pub enum Generated {
    Three(ThreeGraph),
    Five(FiveGraph),
    Rainbow(RainbowInstance),
}

impl GenSpec {
    pub fn build_three(&self) -> Result<ThreeGraph> {
        match self {
            GenSpec::HExt { n } => Ok(gen_h_ext(*n)?.graph),
            GenSpec::Complete { n } => gen_complete(*n),
            GenSpec::Tripartite { sizes } => gen_tripartite(*sizes),
            GenSpec::RandomCodegree { n, delta_floor, seed, p } => gen_random_codegree(*n, *delta_floor, *p, *seed),
            other => invalid(format!("{} does not describe a 3-graph", other.kind())),
        }
    }

    pub fn build(&self) -> Result<Generated> {
        match self {
            GenSpec::RainbowFamily { n, members } => Ok(Generated::Rainbow(gen_rainbow_family(*n, members)?)),
            GenSpec::Support5graph { base, a } => {
                let graph = base.build_three()?;
                let mut in_a = vec![false; graph.n()];
                for &v in a {
                    if v >= graph.n() {
                        return invalid(format!("vertex {v} outside 0..{}", graph.n()));
                    }
                    in_a[v] = true;
                }
                let b: Vec<Vertex> = (0..graph.n()).filter(|&v| !in_a[v]).collect();
                Ok(Generated::Five(gen_support_5graph(&graph, a, &b)?))
            }
            _ => Ok(Generated::Three(self.build_three()?)),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GenSpec::HExt { .. } => "h_ext",
            GenSpec::Complete { .. } => "complete",
            GenSpec::Tripartite { .. } => "tripartite",
            GenSpec::RandomCodegree { .. } => "random_codegree",
            GenSpec::RainbowFamily { .. } => "rainbow_family",
            GenSpec::Support5graph { .. } => "support_5graph",
        }
    }

    /// Header comment lines describing this spec.
    pub fn metadata(&self) -> Vec<String> {
        let mut lines = vec![format!("kind={}", self.kind())];
        lines.push(format!("spec={}", serde_json::to_string(self).unwrap_or_default()));
        if self.uses_rng() {
            lines.push(format!("rng={RNG_NAME}"));
        }
        lines
    }

    fn uses_rng(&self) -> bool {
        match self {
            GenSpec::RandomCodegree { .. } => true,
            GenSpec::RainbowFamily { members, .. } => members.iter().any(GenSpec::uses_rng),
            GenSpec::Support5graph { base, .. } => base.uses_rng(),
            _ => false,
        }
    }
}

pub fn gen_rainbow_family(n: usize, members: &[GenSpec]) -> Result<RainbowInstance> {
    if !n.is_multiple_of(5) {
        return invalid(format!("rainbow family needs 5 | n, got {n}"));
    }
    if members.len() != 3 * n / 5 {
        return invalid(format!("rainbow family on {n} vertices needs {} members, got {}", 3 * n / 5, members.len()));
    }
    let graphs = members.iter().map(GenSpec::build_three).collect::<Result<Vec<_>>>()?;
    RainbowInstance::new(n, graphs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copies::enumerate_copies;

    #[test]
    fn h_ext_sizes_and_codegree() {
        let ext = gen_h_ext(10).unwrap();
        assert_eq!((ext.a.len(), ext.b.len()), (3, 7));
        assert_eq!(ext.graph.edge_count(), 120 - 35);
        assert_eq!(ext.graph.min_codegree().unwrap(), 3);
        assert_eq!(ext.graph.induced(&ext.b).unwrap().0.edge_count(), 0);
        assert!(gen_h_ext(12).is_err());
        assert!(gen_h_ext(5).is_err());
    }

    #[test]
    fn every_copy_in_h_ext_meets_a_twice() {
        for n in [10, 15] {
            let ext = gen_h_ext(n).unwrap();
            let a_size = ext.a.len();
            let copies = enumerate_copies(&ext.graph);
            assert!(!copies.is_empty());
            assert!(copies.iter().all(|t| t.roles().iter().filter(|&&v| v < a_size).count() >= 2));
        }
    }

    #[test]
    fn complete_and_tripartite_counts() {
        assert_eq!(gen_complete(5).unwrap().edge_count(), 10);
        assert_eq!(gen_tripartite([3, 3, 3]).unwrap().edge_count(), 27);
        assert!(enumerate_copies(&gen_tripartite([2, 4, 3]).unwrap()).is_empty());
    }

    #[test]
    fn random_codegree_floor_extremes() {
        assert_eq!(gen_random_codegree(8, 6, 0.3, 1).unwrap(), gen_complete(8).unwrap());
        // With floor 0 the repair loop never fires: replaying the sampling gives the same graph.
        let g = gen_random_codegree(9, 0, 0.4, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut expected = Vec::new();
        for x in 0..9 {
            for y in x + 1..9 {
                for z in y + 1..9 {
                    if rng.random_bool(0.4) {
                        expected.push([x, y, z]);
                    }
                }
            }
        }
        assert_eq!(g.edges(), expected.as_slice());
        assert!(gen_random_codegree(6, 5, 0.5, 0).is_err());
    }

    #[test]
    fn random_codegree_meets_floor_for_many_seeds() {
        for seed in 0..100 {
            let g = gen_random_codegree(15, 6, 0.2, seed).unwrap();
            assert!(g.min_codegree().unwrap() >= 6, "seed {seed}");
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = gen_random_codegree(12, 4, 0.3, 99).unwrap();
        let b = gen_random_codegree(12, 4, 0.3, 99).unwrap();
        assert_eq!(a.to_text(&[]), b.to_text(&[]));
        assert_ne!(a, gen_random_codegree(12, 4, 0.3, 100).unwrap());
    }

    #[test]
    fn support_graph_of_complete_host() {
        let k10 = gen_complete(10).unwrap();
        let a: Vec<usize> = (0..6).collect();
        let b: Vec<usize> = (6..10).collect();
        let j = gen_support_5graph(&k10, &a, &b).unwrap();
        assert_eq!(j.edges().len(), 20 * 6);
        let empty = gen_support_5graph(&ThreeGraph::empty(10), &a, &b).unwrap();
        assert!(empty.edges().is_empty());
        assert!(gen_support_5graph(&k10, &a[..5], &b).is_err());
    }

    #[test]
    fn support_graph_of_h_ext_matches_naive_scan() {
        let ext = gen_h_ext(10).unwrap();
        let j = gen_support_5graph(&ext.graph, &ext.a, &ext.b).unwrap();
        // Naive: every 5-subset, keep (3,2) splits containing some copy of T.
        let copies = enumerate_copies(&ext.graph);
        let mut expected = Vec::new();
        for mask in 0u32..1 << 10 {
            if mask.count_ones() != 5 {
                continue;
            }
            let set: Vec<usize> = (0..10).filter(|v| mask >> v & 1 == 1).collect();
            if set.iter().filter(|&&v| v < 3).count() != 3 {
                continue;
            }
            if copies.iter().any(|t| t.vertex_set().to_vec() == set) {
                expected.push(<[usize; 5]>::try_from(set).unwrap());
            }
        }
        expected.sort_unstable();
        assert_eq!(j.edges(), expected.as_slice());
        assert!(!expected.is_empty());
    }

    #[test]
    fn spec_json_round_trip() {
        let spec: GenSpec = serde_json::from_str(r#"{"kind":"random_codegree","n":15,"delta_floor":6,"seed":3}"#).unwrap();
        assert_eq!(spec, GenSpec::RandomCodegree { n: 15, delta_floor: 6, seed: 3, p: 0.5 });
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<GenSpec>(&text).unwrap(), spec);
        assert!(spec.metadata().iter().any(|l| l.contains("chacha8")));
    }

    #[test]
    fn rainbow_family_shapes() {
        let members = vec![GenSpec::HExt { n: 10 }; 6];
        let inst = gen_rainbow_family(10, &members).unwrap();
        assert_eq!(inst.family().len(), 6);
        assert!(gen_rainbow_family(10, &members[..5]).is_err());
        let seeded: Vec<GenSpec> = (0..6)
            .map(|s| GenSpec::RandomCodegree { n: 10, delta_floor: 3, seed: s, p: 0.3 })
            .collect();
        assert_eq!(gen_rainbow_family(10, &seeded).unwrap(), gen_rainbow_family(10, &seeded).unwrap());
    }
}
