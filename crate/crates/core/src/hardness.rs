//! Vertex-cover reductions to coupled games with pure ambiguous commitments.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::game::{CoupledGame, FollowerGame, TieBreak};
use crate::rational::Rational;
use crate::solvers::{pure_subset_bruteforce, SolveError, SolveReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HardnessError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph needs at least one vertex")]
    NoVertices,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} outside 1..={vertex_count}")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("graph has {0} connected components; solve them separately")]
    DisconnectedGraph(usize),
    #[error("a single vertex with no edges has nothing to reduce")]
    Degenerate,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Undirected simple graph on vertices `1..=vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, HardnessError> {
        if vertex_count == 0 {
            return Err(HardnessError::NoVertices);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > vertex_count {
                    return Err(HardnessError::VertexOutOfRange { vertex: w, vertex_count });
                }
            }
            if u == v {
                return Err(HardnessError::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph { vertex_count, edges: set })
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i, i + 1))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        Graph::new(n, (1..=n).map(|i| (i, i % n + 1))).expect("valid cycle")
    }

    /// `K_{1,leaves}` with centre 1.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (2..=leaves + 1).map(|i| (1, i))).expect("valid star")
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)))).expect("valid clique")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (1..=self.vertex_count).filter(|&u| u != v && self.adjacent(u, v)).collect()
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count + 1];
        let mut out = Vec::new();
        for start in 1..=self.vertex_count {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Subgraph induced by `vertices` (sorted), relabelled to `1..=len`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let index = |v: usize| vertices.binary_search(&v).ok().map(|i| i + 1);
        let edges = self.edges().filter_map(|(u, v)| Some((index(u)?, index(v)?)));
        Graph::new(vertices.len(), edges).expect("induced subgraph is valid")
    }

    pub fn covers(&self, set: &[usize]) -> bool {
        self.edges().all(|(u, v)| set.contains(&u) || set.contains(&v))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n_v = {}\n", self.vertex_count);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl FromStr for Graph {
    type Err = HardnessError;

    /// Header `n_v = <int>` then one `u v` edge per line. Blank lines and
    /// `#` comments are skipped.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line, message: &str| HardnessError::Parse { line, message: message.to_string() };
        let (hl, header) = lines.next().ok_or_else(|| err(1, "missing header `n_v = <int>`"))?;
        let count = header
            .split_once('=')
            .filter(|(k, _)| k.trim() == "n_v")
            .and_then(|(_, v)| v.trim().parse::<usize>().ok())
            .ok_or_else(|| err(hl, "expected header `n_v = <int>`"))?;
        let mut edges = Vec::new();
        for (ln, l) in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            let [u, v] = parts[..] else {
                return Err(err(ln, "expected two vertex indices"));
            };
            let parse = |s: &str| s.parse::<usize>().map_err(|_| err(ln, &format!("bad vertex index {s:?}")));
            edges.push((parse(u)?, parse(v)?));
        }
        Graph::new(count, edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Include, Exclude, Cover and Minimization games.
    Full,
    /// Cover and Minimization games only.
    Pure,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::Pure => "pure",
        }
    }

    pub fn follower_count(self, n_v: usize) -> usize {
        match self {
            Variant::Full => 3 * n_v + 1,
            Variant::Pure => n_v + 1,
        }
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Variant::Full),
            "pure" => Ok(Variant::Pure),
            _ => Err(format!("unknown variant {s:?} (expected full or pure)")),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn int(v: i64) -> Rational {
    Rational::from(v)
}

/// Two-column game with follower rows chosen per leader action and the
/// leader paid `reward` whenever the follower plays column `a`.
fn two_column(name: String, n: usize, row: impl Fn(usize) -> [i64; 2], reward: &Rational) -> FollowerGame {
    let follower = (1..=n).map(|j| row(j).iter().map(|&x| int(x)).collect()).collect();
    let leader = vec![vec![reward.clone(), Rational::zero()]; n];
    FollowerGame::new(name, follower, leader)
}

fn include_game(n: usize, i: usize) -> FollowerGame {
    let w = int((n * n) as i64);
    two_column(format!("I{i}"), n, |j| if j == i { [1, 1] } else { [1, 2] }, &w)
}

fn exclude_game(n: usize, i: usize) -> FollowerGame {
    let w = int((n * n) as i64);
    two_column(format!("E{i}"), n, |j| if j == i { [0, 1] } else { [1, 1] }, &w)
}

fn cover_game(g: &Graph, i: usize) -> FollowerGame {
    let n = g.vertex_count();
    two_column(format!("C{i}"), n, |j| if j == i || g.adjacent(i, j) { [0, -1] } else { [0, 1] }, &Rational::one())
}

fn minimization_game(n: usize) -> FollowerGame {
    let identity: Vec<Vec<Rational>> =
        (0..n).map(|r| (0..n).map(|c| if r == c { Rational::one() } else { Rational::zero() }).collect()).collect();
    FollowerGame::new("M", identity.clone(), identity)
}

fn check_reducible(g: &Graph) -> Result<(), HardnessError> {
    if g.vertex_count() == 1 {
        return Err(HardnessError::Degenerate);
    }
    match g.components().len() {
        1 => Ok(()),
        c => Err(HardnessError::DisconnectedGraph(c)),
    }
}

/// Reduction with Include, Exclude, Cover and Minimization followers, in
/// that order; leader action `j` is vertex `j + 1`.
pub fn reduce_full(g: &Graph) -> Result<CoupledGame, HardnessError> {
    check_reducible(g)?;
    let n = g.vertex_count();
    let mut followers: Vec<FollowerGame> = (1..=n).map(|i| include_game(n, i)).collect();
    followers.extend((1..=n).map(|i| exclude_game(n, i)));
    followers.extend((1..=n).map(|i| cover_game(g, i)));
    followers.push(minimization_game(n));
    Ok(CoupledGame::new(n, followers).expect("reduction is well formed"))
}

/// Reduction with Cover and Minimization followers only.
pub fn reduce_pure(g: &Graph) -> Result<CoupledGame, HardnessError> {
    check_reducible(g)?;
    let n = g.vertex_count();
    let mut followers: Vec<FollowerGame> = (1..=n).map(|i| cover_game(g, i)).collect();
    followers.push(minimization_game(n));
    Ok(CoupledGame::new(n, followers).expect("reduction is well formed"))
}

pub fn reduce(g: &Graph, variant: Variant) -> Result<CoupledGame, HardnessError> {
    match variant {
        Variant::Full => reduce_full(g),
        Variant::Pure => reduce_pure(g),
    }
}

#[derive(Debug, Clone)]
pub struct VcSolution {
    /// Selected vertices, 1-based and sorted.
    pub cover: Vec<usize>,
    pub value: Rational,
    pub report: SolveReport,
}

/// Solves the reduction of a connected graph by pure-subset enumeration
/// under lexicographic tie-breaking and reads the optimal subset as vertices.
pub fn solve_vc_via_game(g: &Graph, variant: Variant, budget: u64) -> Result<VcSolution, HardnessError> {
    let game = reduce(g, variant)?;
    let report = pure_subset_bruteforce(&game, TieBreak::LexicographicFirst, budget)?;
    let cover = report.commitment.pure_indices().expect("pure subset commitment").iter().map(|i| i + 1).collect();
    Ok(VcSolution { cover, value: report.value.clone(), report })
}

#[derive(Debug, Clone)]
pub struct ComponentSolution {
    /// Component vertices in the original labelling.
    pub vertices: Vec<usize>,
    /// Absent for isolated vertices, which need no cover.
    pub solution: Option<VcSolution>,
    /// Selected vertices in the original labelling.
    pub cover: Vec<usize>,
}

/// Solves every connected component separately and unions the covers.
pub fn solve_by_components(g: &Graph, variant: Variant, budget: u64) -> Result<(Vec<ComponentSolution>, Vec<usize>), HardnessError> {
    let mut parts = Vec::new();
    let mut union = Vec::new();
    for vertices in g.components() {
        if vertices.len() == 1 {
            parts.push(ComponentSolution { vertices, solution: None, cover: Vec::new() });
            continue;
        }
        let sol = solve_vc_via_game(&g.induced(&vertices), variant, budget)?;
        let cover: Vec<usize> = sol.cover.iter().map(|&i| vertices[i - 1]).collect();
        union.extend(cover.iter().copied());
        parts.push(ComponentSolution { vertices, solution: Some(sol), cover });
    }
    union.sort_unstable();
    Ok((parts, union))
}

/// Smallest vertex set covering every edge; ties go to the lexicographically
/// first set.
pub fn brute_force_min_vc(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    assert!(n < 32, "brute force is limited to small graphs");
    (0u32..1 << n)
        .map(|mask| (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect::<Vec<_>>())
        .filter(|s| g.covers(s))
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .expect("the full vertex set covers every edge")
}
