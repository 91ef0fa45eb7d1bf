//! Symbolic closure of the comparison step over word states, viewed as a
//! graph with one winner/loser labeled edge per possible comparison outcome,
//! plus the verifier for the non-degeneracy conditions that force escape to
//! the simplex boundary.

use crate::induction::{right_step_words, WinnerSide, WordOutcome};
use crate::perm::{Letter, PermWords};
use crate::scalar::Scalar;
use num_bigint::BigInt;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("state {0} has its gap in the middle slot; the closure is not defined there")]
    GapInMiddle(String),
    #[error("closure exceeded {0} vertices")]
    CapExceeded(usize),
    #[error("edges {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error("invalid seed: {0}")]
    BadSeed(String),
}

/// Edge target: another state or the degenerate rotation exit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Target {
    Vertex(usize),
    Rotation,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub from: usize,
    pub to: Target,
    pub winner: Letter,
    pub loser: Letter,
    pub loser_is_gap: bool,
    /// The child state was reflected to keep its gap in the right half.
    pub flipped: bool,
}

impl Edge {
    /// Label of the edge: the letter that loses.
    pub fn label(&self) -> Letter {
        self.loser
    }

    /// Elementary length update: identity plus one unit in the (winner,
    /// loser) slot. Applying the inverse to the length vector subtracts the
    /// loser length from the winner length.
    pub fn matrix(&self) -> Mat4 {
        let mut m = Mat4::identity();
        m.0[self.winner.index()][self.loser.index()] += 1;
        m
    }
}

/// 4x4 integer matrix over the letter coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat4(pub [[BigInt; 4]; 4]);

impl Mat4 {
    pub fn identity() -> Mat4 {
        let mut m = Mat4(Default::default());
        for i in 0..4 {
            m.0[i][i] = BigInt::from(1);
        }
        m
    }

    pub fn mul(&self, other: &Mat4) -> Mat4 {
        let mut out = Mat4(Default::default());
        for i in 0..4 {
            for k in 0..4 {
                if self.0[i][k] == BigInt::from(0) {
                    continue;
                }
                for j in 0..4 {
                    out.0[i][j] += &self.0[i][k] * &other.0[k][j];
                }
            }
        }
        out
    }

    pub fn det(&self) -> BigInt {
        // Laplace expansion along the first row; fine for 4x4.
        fn det3(m: &[[BigInt; 3]; 3]) -> BigInt {
            &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
                - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
                + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
        }
        let mut acc = BigInt::from(0);
        for col in 0..4 {
            if self.0[0][col] == BigInt::from(0) {
                continue;
            }
            let mut minor: [[BigInt; 3]; 3] = Default::default();
            for r in 1..4 {
                let mut cc = 0;
                for c in 0..4 {
                    if c == col {
                        continue;
                    }
                    minor[r - 1][cc] = self.0[r][c].clone();
                    cc += 1;
                }
            }
            let term = &self.0[0][col] * det3(&minor);
            if col % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().flatten().all(|x| *x >= BigInt::from(0))
    }
}

/// Vertex payload: a normalized word state, or a named abstract vertex for
/// hand-built test systems.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum VertexData {
    State(PermWords),
    Named(String),
}

impl std::fmt::Display for VertexData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VertexData::State(w) => write!(f, "{w}"),
            VertexData::Named(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialSystem {
    vertices: Vec<VertexData>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    /// Out-labels of each vertex in the full system, kept when rotation
    /// edges are pruned so the escape check still sees the original cells.
    full_labels: Vec<Vec<Letter>>,
    /// Labels of the rotation exit edges per vertex, kept through pruning:
    /// an escape path may end by leaving through a rotation exit.
    exit_labels: Vec<Vec<Letter>>,
    pruned: bool,
}

fn exit_labels_of(n: usize, out: &[Vec<usize>], edges: &[Edge]) -> Vec<Vec<Letter>> {
    (0..n)
        .map(|v| {
            out[v]
                .iter()
                .filter(|&&i| edges[i].to == Target::Rotation)
                .map(|&i| edges[i].label())
                .collect()
        })
        .collect()
}

/// Normalizes a word state so its gap sits in the right half, recording
/// whether a reflection was needed.
fn normalize(words: PermWords) -> Result<(PermWords, bool), GraphError> {
    match words.gap_index() {
        3 | 4 => Ok((words, false)),
        0 | 1 => Ok((words.flipped(), true)),
        _ => Err(GraphError::GapInMiddle(words.to_string())),
    }
}

impl SimplicialSystem {
    /// Breadth-first closure of the comparison step from the seed states.
    /// Both possible winners are explored at every state; rotation stops
    /// become edges to the rotation exit.
    pub fn build(seeds: &[PermWords], vertex_cap: usize) -> Result<SimplicialSystem, GraphError> {
        let mut vertices: Vec<PermWords> = Vec::new();
        let mut index: HashMap<PermWords, usize> = HashMap::new();
        let mut edges: Vec<Edge> = Vec::new();
        let mut queue: std::collections::VecDeque<usize> = Default::default();
        for seed in seeds {
            seed.validate().map_err(|e| GraphError::BadSeed(e.to_string()))?;
            let (norm, _) = normalize(*seed)?;
            if !index.contains_key(&norm) {
                let id = vertices.len();
                index.insert(norm, id);
                vertices.push(norm);
                queue.push_back(id);
            }
        }
        while let Some(v) = queue.pop_front() {
            let words = vertices[v];
            let top = words.w0[4];
            let bottom = words.w1[4].letter();
            if top == bottom {
                // the compared lengths coincide for every parameter choice,
                // so the state is a forced tie: a sink of the closure
                continue;
            }
            for side in [WinnerSide::Top, WinnerSide::Bottom] {
                match right_step_words(&words, side) {
                    WordOutcome::Rotation { winner } => {
                        edges.push(Edge {
                            from: v,
                            to: Target::Rotation,
                            winner,
                            // the plain letter loses to the gap here
                            loser: words.w0[4],
                            loser_is_gap: false,
                            flipped: false,
                        });
                    }
                    WordOutcome::Unsupported(msg) => {
                        return Err(GraphError::BadSeed(format!(
                            "state {words} is not closed under the step: {msg}"
                        )));
                    }
                    WordOutcome::Words { words: child, winner, loser, loser_is_gap } => {
                        let (norm, flipped) = normalize(child)?;
                        let to = match index.get(&norm) {
                            Some(&id) => id,
                            None => {
                                let id = vertices.len();
                                if id >= vertex_cap {
                                    return Err(GraphError::CapExceeded(vertex_cap));
                                }
                                index.insert(norm, id);
                                vertices.push(norm);
                                queue.push_back(id);
                                id
                            }
                        };
                        edges.push(Edge {
                            from: v,
                            to: Target::Vertex(to),
                            winner,
                            loser,
                            loser_is_gap,
                            flipped,
                        });
                    }
                }
            }
        }
        let mut out = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.from].push(i);
        }
        let full_labels = (0..vertices.len())
            .map(|v| out[v].iter().map(|&i| edges[i].label()).collect())
            .collect();
        let exit_labels = exit_labels_of(vertices.len(), &out, &edges);
        Ok(SimplicialSystem {
            vertices: vertices.into_iter().map(VertexData::State).collect(),
            edges,
            out,
            full_labels,
            exit_labels,
            pruned: false,
        })
    }

    /// Hand-built system, mainly for negative tests of the verifier.
    /// Edges are `(from, to, winner, loser)`; `None` target is the rotation
    /// exit.
    pub fn from_parts(
        names: Vec<String>,
        raw_edges: Vec<(usize, Option<usize>, Letter, Letter)>,
    ) -> SimplicialSystem {
        let edges: Vec<Edge> = raw_edges
            .into_iter()
            .map(|(from, to, winner, loser)| Edge {
                from,
                to: to.map(Target::Vertex).unwrap_or(Target::Rotation),
                winner,
                loser,
                loser_is_gap: false,
                flipped: false,
            })
            .collect();
        let mut out = vec![Vec::new(); names.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.from].push(i);
        }
        let full_labels = (0..names.len())
            .map(|v| out[v].iter().map(|&i| edges[i].label()).collect())
            .collect();
        let exit_labels = exit_labels_of(names.len(), &out, &edges);
        SimplicialSystem {
            vertices: names.into_iter().map(VertexData::Named).collect(),
            edges,
            out,
            full_labels,
            exit_labels,
            pruned: false,
        }
    }

    pub fn vertices(&self) -> &[VertexData] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Drops the rotation exit edges, keeping the full out-label record.
    pub fn pruned(&self) -> SimplicialSystem {
        let keep: Vec<usize> = (0..self.edges.len())
            .filter(|&i| matches!(self.edges[i].to, Target::Vertex(_)))
            .collect();
        let edges: Vec<Edge> = keep.iter().map(|&i| self.edges[i].clone()).collect();
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.from].push(i);
        }
        SimplicialSystem {
            vertices: self.vertices.clone(),
            edges,
            out,
            full_labels: self.full_labels.clone(),
            exit_labels: self.exit_labels.clone(),
            pruned: true,
        }
    }

    /// Applies the inverse elementary matrix of the edge chosen by comparing
    /// the two designated letters at `v`, then renormalizes to unit sum.
    /// Returns the edge index, the target and the new vector.
    pub fn winlose_apply<T: Scalar>(
        &self,
        v: usize,
        lambda: &[T; 4],
    ) -> Result<Option<(usize, Target, [T; 4])>, GraphError> {
        for &ei in &self.out[v] {
            let e = &self.edges[ei];
            let lw = lambda[e.winner.index()].clone();
            let ll = lambda[e.loser.index()].clone();
            if lw > ll {
                let mut next = lambda.clone();
                next[e.winner.index()] = lw - ll;
                let total: T = next.iter().cloned().fold(T::zero(), |a, b| a + b);
                for x in next.iter_mut() {
                    *x = x.clone() / total.clone();
                }
                return Ok(Some((ei, e.to, next)));
            }
        }
        // tie or no matching edge (possible at pruned dead ends)
        Ok(None)
    }

    /// Product of the edge matrices along a path, checking composability.
    pub fn path_matrix(&self, path: &[usize]) -> Result<Mat4, GraphError> {
        let mut acc = Mat4::identity();
        let mut at: Option<usize> = None;
        for (k, &ei) in path.iter().enumerate() {
            let e = &self.edges[ei];
            if let Some(v) = at {
                if e.from != v {
                    return Err(GraphError::NotComposable(path[k - 1], ei));
                }
            }
            acc = acc.mul(&e.matrix());
            at = match e.to {
                Target::Vertex(u) => Some(u),
                Target::Rotation => {
                    if k + 1 != path.len() {
                        return Err(GraphError::NotComposable(ei, path[k + 1]));
                    }
                    None
                }
            };
        }
        Ok(acc)
    }

    /// For every letter, checks that no infinite run can avoid the letter as
    /// loser or as winner. The edges a run uses infinitely often form a
    /// strongly connected set in which every losing letter also wins: losing
    /// keeps a length unchanged, and repeating an edge infinitely often
    /// forces its loser length to zero, which only winning achieves. The
    /// check therefore looks for a feasible limit set inside the subgraph
    /// avoiding the letter; finding none proves the letter cannot be
    /// avoided forever. Plain cycle acyclicity would be too strong: the
    /// closure contains loops where one letter beats all the others in
    /// turn, which no length vector can traverse forever.
    pub fn check_every_letter_wins_loses(&self) -> WinLoseReport {
        let mut letters = Vec::new();
        for l in Letter::ALL {
            let loses_witness = self.feasible_limit_set(|e| e.loser != l);
            let wins_witness = self.feasible_limit_set(|e| e.winner != l);
            letters.push(LetterCycleCheck { letter: l, loses_witness, wins_witness });
        }
        WinLoseReport { letters }
    }

    /// Largest edge set inside the filter that could be traversed infinitely
    /// often: strongly connected pieces in which every loser also wins.
    /// Returns `None` when the set is empty.
    fn feasible_limit_set<F: Fn(&Edge) -> bool>(&self, keep: F) -> Option<Vec<usize>> {
        let mut alive: Vec<bool> = self
            .edges
            .iter()
            .map(|e| keep(e) && matches!(e.to, Target::Vertex(_)))
            .collect();
        loop {
            let mut changed = false;
            let comp = self.scc_ids(&alive);
            // drop edges that leave their strongly connected component
            for (i, e) in self.edges.iter().enumerate() {
                if !alive[i] {
                    continue;
                }
                let Target::Vertex(u) = e.to else { unreachable!() };
                if comp[e.from] != comp[u] {
                    alive[i] = false;
                    changed = true;
                }
            }
            // drop edges whose loser never wins within the component
            let mut wins: HashMap<(usize, Letter), bool> = HashMap::new();
            for (i, e) in self.edges.iter().enumerate() {
                if alive[i] {
                    wins.insert((comp[e.from], e.winner), true);
                }
            }
            for (i, e) in self.edges.iter().enumerate() {
                if alive[i] && !wins.contains_key(&(comp[e.from], e.loser)) {
                    alive[i] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let survivors: Vec<usize> = (0..self.edges.len()).filter(|&i| alive[i]).collect();
        if survivors.is_empty() {
            None
        } else {
            Some(survivors)
        }
    }

    /// Strongly connected component ids over the alive edge set.
    fn scc_ids(&self, alive: &[bool]) -> Vec<usize> {
        let n = self.vertices.len();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut ids = vec![usize::MAX; n];
        let mut next_index = 0usize;
        let mut next_id = 0usize;
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            while !call.is_empty() {
                let top = call.len() - 1;
                let v = call[top].0;
                if call[top].1 == 0 {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                }
                let mut recursed = false;
                while call[top].1 < self.out[v].len() {
                    let ei = self.out[v][call[top].1];
                    call[top].1 += 1;
                    if !alive[ei] {
                        continue;
                    }
                    let Target::Vertex(u) = self.edges[ei].to else { continue };
                    if index[u] == usize::MAX {
                        call.push((u, 0));
                        recursed = true;
                        break;
                    } else if on_stack[u] {
                        low[v] = low[v].min(index[u]);
                    }
                }
                if recursed {
                    continue;
                }
                if low[v] == index[v] {
                    loop {
                        let u = stack.pop().expect("tarjan stack");
                        on_stack[u] = false;
                        ids[u] = next_id;
                        if u == v {
                            break;
                        }
                    }
                    next_id += 1;
                }
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
            }
        }
        ids
    }

    /// Subgraph for a letter set: at each vertex keep only the edges whose
    /// label is in the set, unless none is, in which case keep all.
    pub fn subgraph_for(&self, letters: &[Letter]) -> SimplicialSystem {
        let in_set = |l: Letter| letters.contains(&l);
        let mut keep: Vec<usize> = Vec::new();
        for v in 0..self.vertices.len() {
            let labeled: Vec<usize> = self.out[v]
                .iter()
                .copied()
                .filter(|&i| in_set(self.edges[i].label()))
                .collect();
            if labeled.is_empty() {
                keep.extend(self.out[v].iter().copied());
            } else {
                keep.extend(labeled);
            }
        }
        keep.sort_unstable();
        let edges: Vec<Edge> = keep.iter().map(|&i| self.edges[i].clone()).collect();
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.from].push(i);
        }
        SimplicialSystem {
            vertices: self.vertices.clone(),
            edges,
            out,
            full_labels: self.full_labels.clone(),
            exit_labels: self.exit_labels.clone(),
            pruned: self.pruned,
        }
    }

    /// Strongly connected components with at least one edge (size > 1, or a
    /// single vertex with a self loop).
    fn cyclic_sccs(&self) -> Vec<Vec<usize>> {
        let alive = vec![true; self.edges.len()];
        let ids = self.scc_ids(&alive);
        let count = ids.iter().copied().max().map_or(0, |m| m + 1);
        let mut comps: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (v, &id) in ids.iter().enumerate() {
            comps[id].push(v);
        }
        let mut sccs: Vec<Vec<usize>> = comps
            .into_iter()
            .filter(|comp| {
                comp.len() > 1
                    || self.out[comp[0]].iter().any(|&i| {
                        matches!(self.edges[i].to, Target::Vertex(u) if u == comp[0])
                    })
            })
            .collect();
        for c in sccs.iter_mut() {
            c.sort_unstable();
        }
        sccs.sort();
        sccs
    }

    /// Two-part non-degeneracy check on the pruned system: every letter wins
    /// and loses on every cycle, and for every proper letter subset, every
    /// vertex of a cyclic component of the subset graph either compares at
    /// most one subset letter or can escape the component along subset
    /// labeled edges.
    pub fn verify_strongly_nondegenerating(&self) -> Verdict {
        let winlose = self.check_every_letter_wins_loses();
        let mut subsets = Vec::new();
        for mask in 1u8..15 {
            let letters: Vec<Letter> = Letter::ALL
                .into_iter()
                .filter(|l| mask & (1 << l.index()) != 0)
                .collect();
            let sub = self.subgraph_for(&letters);
            let mut failures = Vec::new();
            for comp in sub.cyclic_sccs() {
                for &v in &comp {
                    let in_set: Vec<Letter> = self.full_labels[v]
                        .iter()
                        .copied()
                        .filter(|l| letters.contains(l))
                        .collect();
                    let mut distinct = in_set.clone();
                    distinct.sort_unstable();
                    distinct.dedup();
                    if distinct.len() <= 1 {
                        continue;
                    }
                    if !self.escapes(v, &comp, &letters) {
                        failures.push(SubsetFailure { vertex: v, component: comp.clone() });
                    }
                }
            }
            subsets.push(SubsetCheck { letters, failures });
        }
        Verdict { winlose, subsets }
    }

    /// Breadth-first search from `v` along edges labeled in the set, looking
    /// for a vertex outside the component. A rotation exit with a label in
    /// the set also counts: the full graph keeps those edges even when this
    /// system is pruned.
    fn escapes(&self, v: usize, comp: &[usize], letters: &[Letter]) -> bool {
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = std::collections::VecDeque::from([v]);
        seen[v] = true;
        while let Some(w) = queue.pop_front() {
            if !comp.contains(&w) {
                return true;
            }
            if self.exit_labels[w].iter().any(|l| letters.contains(l)) {
                return true;
            }
            for &ei in &self.out[w] {
                let e = &self.edges[ei];
                if !letters.contains(&e.label()) {
                    continue;
                }
                match e.to {
                    Target::Rotation => return true,
                    Target::Vertex(u) => {
                        if !seen[u] {
                            seen[u] = true;
                            queue.push_back(u);
                        }
                    }
                }
            }
        }
        false
    }

    /// Deterministic text dump, one line per vertex and per edge.
    pub fn to_text(&self) -> String {
        let mut s = String::from("# itm comparison graph v1\n");
        for (i, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("vertex {i} {v}\n"));
        }
        for e in &self.edges {
            let to = match e.to {
                Target::Vertex(u) => u.to_string(),
                Target::Rotation => "rotation".into(),
            };
            s.push_str(&format!(
                "edge {} -> {} winner={} loser={} gap={} flip={}\n",
                e.from, to, e.winner, e.loser, e.loser_is_gap, e.flipped
            ));
        }
        s
    }

    /// Graphviz dump with the same ordering as `to_text`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph comparison {\n  rankdir=LR;\n");
        for (i, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  v{i} [label=\"{v}\"];\n"));
        }
        if self.edges.iter().any(|e| e.to == Target::Rotation) {
            s.push_str("  rot [label=\"rotation\", shape=doublecircle];\n");
        }
        for e in &self.edges {
            let to = match e.to {
                Target::Vertex(u) => format!("v{u}"),
                Target::Rotation => "rot".into(),
            };
            let style = if e.loser_is_gap { ", style=dashed" } else { "" };
            s.push_str(&format!(
                "  v{} -> {} [label=\"{} beats {}\"{}];\n",
                e.from, to, e.winner, e.loser, style
            ));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LetterCycleCheck {
    pub letter: Letter,
    /// Feasible limit edge set on which the letter never loses, if any.
    pub loses_witness: Option<Vec<usize>>,
    /// Feasible limit edge set on which the letter never wins, if any.
    pub wins_witness: Option<Vec<usize>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WinLoseReport {
    pub letters: Vec<LetterCycleCheck>,
}

impl WinLoseReport {
    pub fn pass(&self) -> bool {
        self.letters
            .iter()
            .all(|c| c.loses_witness.is_none() && c.wins_witness.is_none())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubsetFailure {
    pub vertex: usize,
    pub component: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubsetCheck {
    pub letters: Vec<Letter>,
    pub failures: Vec<SubsetFailure>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub winlose: WinLoseReport,
    pub subsets: Vec<SubsetCheck>,
}

impl Verdict {
    pub fn pass(&self) -> bool {
        self.winlose.pass() && self.subsets.iter().all(|s| s.failures.is_empty())
    }

    /// One line per check, ending with PASS or FAIL.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.winlose.letters {
            out.push_str(&format!(
                "letter {} loses on every infinite run: {}\n",
                c.letter,
                if c.loses_witness.is_none() { "ok" } else { "violated" }
            ));
            out.push_str(&format!(
                "letter {} wins on every infinite run: {}\n",
                c.letter,
                if c.wins_witness.is_none() { "ok" } else { "violated" }
            ));
        }
        for s in &self.subsets {
            let set: String = s.letters.iter().map(|l| l.as_char()).collect();
            if s.failures.is_empty() {
                out.push_str(&format!("subset {set}: ok\n"));
            } else {
                for f in &s.failures {
                    out.push_str(&format!(
                        "subset {set}: vertex {} trapped in component {:?}\n",
                        f.vertex, f.component
                    ));
                }
            }
        }
        out.push_str(if self.pass() { "verdict: PASS\n" } else { "verdict: FAIL\n" });
        out
    }
}
