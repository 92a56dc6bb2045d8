//! Ribbon graphs with multiplicities.
//!
//! Half-edges are addressed by index. Indices follow the lexicographic order
//! of the half-edge tokens, so comparing indices compares tokens.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ValidationKind {
    DuplicateHalfEdge,
    UnpairedHalfEdge,
    FixedPointPairing,
    Disconnected,
    BadMultiplicity,
}

impl fmt::Display for ValidationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph ({kind}): {detail}")]
    Validation { kind: ValidationKind, detail: String },
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown half-edge `{0}`")]
    UnknownHalfEdge(String),
}

impl GraphError {
    pub fn validation_kind(&self) -> Option<ValidationKind> {
        match self {
            GraphError::Validation { kind, .. } => Some(*kind),
            _ => None,
        }
    }
}

fn invalid(kind: ValidationKind, detail: impl Into<String>) -> GraphError {
    GraphError::Validation {
        kind,
        detail: detail.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

/// A slot of the cyclic order at a vertex once virtual edges are added.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Slot {
    VirtualMinus(usize),
    Real(usize),
    VirtualPlus(usize),
}

impl Slot {
    pub fn half(self) -> usize {
        match self {
            Slot::VirtualMinus(h) | Slot::Real(h) | Slot::VirtualPlus(h) => h,
        }
    }

    pub fn is_virtual(self) -> bool {
        !matches!(self, Slot::Real(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedCyclicOrder {
    pub vertex: usize,
    pub sequence: Vec<Slot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleProfile {
    pub betti: usize,
    /// The unique cycle when `betti == 1`; a fundamental basis otherwise.
    pub cycle_lengths: Vec<usize>,
    pub odd_basis_cycles: usize,
    pub even_basis_cycles: usize,
}

#[derive(Debug, Clone)]
pub struct BrauerGraph {
    half_names: Vec<String>,
    half_index: BTreeMap<String, usize>,
    vertex_names: Vec<String>,
    vertex_index: BTreeMap<String, usize>,
    edge_names: Vec<String>,
    edge_index: BTreeMap<String, usize>,
    source: Vec<usize>,
    partner: Vec<usize>,
    next: Vec<usize>,
    edge_of: Vec<usize>,
    multiplicity: Vec<u32>,
}

impl PartialEq for BrauerGraph {
    fn eq(&self, other: &Self) -> bool {
        self.half_names == other.half_names
            && self.vertex_names == other.vertex_names
            && self.source == other.source
            && self.partner == other.partner
            && self.next == other.next
            && self.multiplicity == other.multiplicity
    }
}

impl Eq for BrauerGraph {}

struct RawVertex {
    name: String,
    mult: i64,
    halves: Vec<String>,
    line: usize,
}

struct RawEdge {
    name: String,
    a: String,
    b: String,
    line: usize,
}

fn valid_token(t: &str) -> bool {
    !t.is_empty()
        && !t.contains([':', '#', '='])
        && !t.ends_with('+')
        && !t.ends_with('-')
}

pub fn parse_graph(text: &str) -> Result<BrauerGraph, GraphError> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let perr = |m: &str| GraphError::Parse {
            line,
            message: m.to_string(),
        };
        let (head, tail) = content
            .split_once(':')
            .ok_or_else(|| perr("missing `:`"))?;
        let mut head_tokens = head.split_whitespace();
        let kind = head_tokens.next().ok_or_else(|| perr("empty declaration"))?;
        let name = head_tokens
            .next()
            .ok_or_else(|| perr("missing name"))?
            .to_string();
        if !valid_token(&name) {
            return Err(perr("bad name"));
        }
        let halves: Vec<String> = tail.split_whitespace().map(str::to_string).collect();
        if let Some(bad) = halves.iter().find(|h| !valid_token(h)) {
            return Err(perr(&format!("bad half-edge token `{bad}`")));
        }
        match kind {
            "vertex" => {
                let mult_tok = head_tokens.next().ok_or_else(|| perr("missing mult=<k>"))?;
                let value = mult_tok
                    .strip_prefix("mult=")
                    .ok_or_else(|| perr("expected mult=<k>"))?;
                let mult: i64 = value
                    .parse()
                    .map_err(|_| perr("multiplicity is not an integer"))?;
                if head_tokens.next().is_some() {
                    return Err(perr("trailing tokens before `:`"));
                }
                if halves.is_empty() {
                    return Err(perr("vertex without half-edges"));
                }
                vertices.push(RawVertex {
                    name,
                    mult,
                    halves,
                    line,
                });
            }
            "edge" => {
                if head_tokens.next().is_some() {
                    return Err(perr("trailing tokens before `:`"));
                }
                if halves.len() != 2 {
                    return Err(perr("an edge lists exactly two half-edges"));
                }
                edges.push(RawEdge {
                    name,
                    a: halves[0].clone(),
                    b: halves[1].clone(),
                    line,
                });
            }
            other => return Err(perr(&format!("unknown declaration `{other}`"))),
        }
    }
    build(vertices, edges)
}

fn build(vertices: Vec<RawVertex>, edges: Vec<RawEdge>) -> Result<BrauerGraph, GraphError> {
    use ValidationKind::*;
    if vertices.is_empty() {
        return Err(GraphError::Parse {
            line: 0,
            message: "no vertices".into(),
        });
    }
    let mut vertex_index = BTreeMap::new();
    for v in &vertices {
        if v.mult < 1 {
            return Err(invalid(
                BadMultiplicity,
                format!("vertex {} has multiplicity {}", v.name, v.mult),
            ));
        }
        if vertex_index.insert(v.name.clone(), 0).is_some() {
            return Err(GraphError::Parse {
                line: v.line,
                message: format!("vertex `{}` declared twice", v.name),
            });
        }
    }
    let mut seen = BTreeSet::new();
    for v in &vertices {
        for h in &v.halves {
            if !seen.insert(h.clone()) {
                return Err(invalid(DuplicateHalfEdge, format!("`{h}` listed twice")));
            }
        }
    }
    let mut paired = BTreeMap::new();
    let mut edge_index = BTreeMap::new();
    for e in &edges {
        if edge_index.insert(e.name.clone(), 0).is_some() {
            return Err(GraphError::Parse {
                line: e.line,
                message: format!("edge `{}` declared twice", e.name),
            });
        }
        if e.a == e.b {
            return Err(invalid(
                FixedPointPairing,
                format!("edge {} pairs `{}` with itself", e.name, e.a),
            ));
        }
        for h in [&e.a, &e.b] {
            if !seen.contains(h) {
                return Err(invalid(
                    UnpairedHalfEdge,
                    format!("`{h}` in edge {} is not at any vertex", e.name),
                ));
            }
            if paired.insert(h.clone(), e.name.clone()).is_some() {
                return Err(invalid(DuplicateHalfEdge, format!("`{h}` in two edges")));
            }
        }
    }
    if let Some(h) = seen.iter().find(|h| !paired.contains_key(*h)) {
        return Err(invalid(UnpairedHalfEdge, format!("`{h}` has no partner")));
    }

    let half_names: Vec<String> = seen.into_iter().collect();
    let half_index: BTreeMap<String, usize> = half_names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), i))
        .collect();
    let vertex_names: Vec<String> = vertex_index.keys().cloned().collect();
    for (i, n) in vertex_names.iter().enumerate() {
        vertex_index.insert(n.clone(), i);
    }
    let edge_names: Vec<String> = edge_index.keys().cloned().collect();
    for (i, n) in edge_names.iter().enumerate() {
        edge_index.insert(n.clone(), i);
    }
    let n = half_names.len();
    let mut source = vec![0; n];
    let mut next = vec![0; n];
    let mut multiplicity = vec![1; vertex_names.len()];
    for v in &vertices {
        let vi = vertex_index[&v.name];
        multiplicity[vi] = v.mult as u32;
        let ids: Vec<usize> = v.halves.iter().map(|h| half_index[h]).collect();
        for (k, &h) in ids.iter().enumerate() {
            source[h] = vi;
            next[h] = ids[(k + 1) % ids.len()];
        }
    }
    let mut partner = vec![0; n];
    let mut edge_of = vec![0; n];
    for e in &edges {
        let (a, b) = (half_index[&e.a], half_index[&e.b]);
        partner[a] = b;
        partner[b] = a;
        edge_of[a] = edge_index[&e.name];
        edge_of[b] = edge_index[&e.name];
    }
    let g = BrauerGraph {
        half_names,
        half_index,
        vertex_names,
        vertex_index,
        edge_names,
        edge_index,
        source,
        partner,
        next,
        edge_of,
        multiplicity,
    };
    if !g.is_connected() {
        return Err(invalid(Disconnected, "the graph is not connected"));
    }
    Ok(g)
}

impl BrauerGraph {
    pub fn half_count(&self) -> usize {
        self.half_names.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn half_name(&self, h: usize) -> &str {
        &self.half_names[h]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edge_names[e]
    }

    pub fn half(&self, token: &str) -> Result<usize, GraphError> {
        self.half_index
            .get(token)
            .copied()
            .ok_or_else(|| GraphError::UnknownHalfEdge(token.to_string()))
    }

    pub fn vertex(&self, name: &str) -> Result<usize, GraphError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, name: &str) -> Result<usize, GraphError> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownEdge(name.to_string()))
    }

    pub fn source(&self, h: usize) -> usize {
        self.source[h]
    }

    pub fn partner(&self, h: usize) -> usize {
        self.partner[h]
    }

    pub fn next(&self, h: usize) -> usize {
        self.next[h]
    }

    pub fn prev(&self, h: usize) -> usize {
        // valencies are small; walking the orbit avoids a second table
        let mut x = h;
        while self.next[x] != h {
            x = self.next[x];
        }
        x
    }

    /// `σ^k(h)` for any integer `k`.
    pub fn rotate(&self, h: usize, k: i64) -> usize {
        let val = self.valency(self.source[h]) as i64;
        let mut x = h;
        for _ in 0..k.rem_euclid(val) {
            x = self.next[x];
        }
        x
    }

    pub fn edge_of(&self, h: usize) -> usize {
        self.edge_of[h]
    }

    /// The two half-edges of an edge, smaller token first.
    pub fn edge_halves(&self, e: usize) -> (usize, usize) {
        let a = self.edge_of.iter().position(|&x| x == e).expect("edge index");
        let b = self.partner[a];
        (a.min(b), a.max(b))
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (a, b) = self.edge_halves(e);
        self.source[a] == self.source[b]
    }

    pub fn multiplicity(&self, v: usize) -> u32 {
        self.multiplicity[v]
    }

    pub fn half_multiplicity(&self, h: usize) -> u32 {
        self.multiplicity[self.source[h]]
    }

    pub fn valency(&self, v: usize) -> usize {
        self.source.iter().filter(|&&s| s == v).count()
    }

    pub fn half_valency(&self, h: usize) -> usize {
        self.valency(self.source[h])
    }

    pub fn is_truncated(&self, h: usize) -> bool {
        self.next[h] == h && self.multiplicity[self.source[h]] == 1
    }

    /// Half-edges at `v` in cyclic order, starting from the smallest token.
    pub fn cyclic_order(&self, v: usize) -> Vec<usize> {
        let Some(start) = (0..self.half_count()).find(|&h| self.source[h] == v) else {
            return Vec::new();
        };
        let mut out = vec![start];
        let mut x = self.next[start];
        while x != start {
            out.push(x);
            x = self.next[x];
        }
        out
    }

    /// Index of `h` in `cyclic_order(source(h))`.
    pub fn position_at_vertex(&self, h: usize) -> usize {
        self.cyclic_order(self.source[h])
            .iter()
            .position(|&x| x == h)
            .expect("half-edge at its own vertex")
    }

    pub fn same_multiplicity_free(&self, other: &BrauerGraph) -> bool {
        self.half_names == other.half_names
            && self.vertex_names == other.vertex_names
            && self.source == other.source
            && self.partner == other.partner
            && self.next == other.next
    }

    /// Copy with new multiplicities, given by vertex index.
    pub fn with_multiplicities(&self, mult: &[u32]) -> BrauerGraph {
        assert_eq!(mult.len(), self.vertex_count());
        assert!(mult.iter().all(|&m| m >= 1));
        let mut g = self.clone();
        g.multiplicity = mult.to_vec();
        g
    }

    fn is_connected(&self) -> bool {
        let nv = self.vertex_count();
        let mut seen = vec![false; nv];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for h in 0..self.half_count() {
                if self.source[h] == v {
                    let w = self.source[self.partner[h]];
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in 0..self.vertex_count() {
            let halves: Vec<&str> = self
                .cyclic_order(v)
                .into_iter()
                .map(|h| self.half_name(h))
                .collect();
            out.push_str(&format!(
                "vertex {} mult={}: {}\n",
                self.vertex_names[v],
                self.multiplicity[v],
                halves.join(" ")
            ));
        }
        for e in 0..self.edge_count() {
            let (a, b) = self.edge_halves(e);
            out.push_str(&format!(
                "edge {}: {} {}\n",
                self.edge_names[e],
                self.half_name(a),
                self.half_name(b)
            ));
        }
        out
    }

    pub fn augmented_cyclic_order(&self, vertex: &str) -> Result<AugmentedCyclicOrder, GraphError> {
        let v = self.vertex(vertex)?;
        Ok(self.augmented_order_at(v))
    }

    pub fn augmented_order_at(&self, v: usize) -> AugmentedCyclicOrder {
        let sequence = self
            .cyclic_order(v)
            .into_iter()
            .flat_map(|h| [Slot::VirtualMinus(h), Slot::Real(h), Slot::VirtualPlus(h)])
            .collect();
        AugmentedCyclicOrder {
            vertex: v,
            sequence,
        }
    }

    /// Position of a slot in the augmented order at its vertex.
    pub fn slot_position(&self, s: Slot) -> usize {
        let k = self.position_at_vertex(s.half());
        match s {
            Slot::VirtualMinus(_) => 3 * k,
            Slot::Real(_) => 3 * k + 1,
            Slot::VirtualPlus(_) => 3 * k + 2,
        }
    }

    /// Whether the slots, all at one vertex, occur in this cyclic order.
    /// Repeated slots never form a cyclic subordering.
    pub fn is_cyclic_subordering(&self, slots: &[Slot]) -> bool {
        if slots.is_empty() {
            return true;
        }
        let v = self.source[slots[0].half()];
        if slots.iter().any(|s| self.source[s.half()] != v) {
            return false;
        }
        let pos: Vec<usize> = slots.iter().map(|&s| self.slot_position(s)).collect();
        let distinct: BTreeSet<usize> = pos.iter().copied().collect();
        if distinct.len() != pos.len() {
            return false;
        }
        let descents = (0..pos.len())
            .filter(|&i| pos[i] > pos[(i + 1) % pos.len()])
            .count();
        descents <= 1
    }

    pub fn cycle_profile(&self) -> CycleProfile {
        let betti = self.edge_count() + 1 - self.vertex_count();
        let mut cycle_lengths = Vec::new();
        if betti == 1 {
            cycle_lengths.push(self.core_edges().len());
        } else if betti >= 2 {
            cycle_lengths = self.fundamental_cycle_lengths();
        }
        let odd = cycle_lengths.iter().filter(|&&l| l % 2 == 1).count();
        CycleProfile {
            betti,
            odd_basis_cycles: odd,
            even_basis_cycles: cycle_lengths.len() - odd,
            cycle_lengths,
        }
    }

    /// Edges left after repeatedly removing vertices of valency one.
    fn core_edges(&self) -> BTreeSet<usize> {
        let mut alive: BTreeSet<usize> = (0..self.edge_count()).collect();
        loop {
            let mut val = vec![0usize; self.vertex_count()];
            for h in 0..self.half_count() {
                if alive.contains(&self.edge_of[h]) {
                    val[self.source[h]] += 1;
                }
            }
            let leaf_edge = (0..self.half_count())
                .find(|&h| alive.contains(&self.edge_of[h]) && val[self.source[h]] == 1);
            match leaf_edge {
                Some(h) => {
                    alive.remove(&self.edge_of[h]);
                }
                None => return alive,
            }
        }
    }

    fn fundamental_cycle_lengths(&self) -> Vec<usize> {
        let nv = self.vertex_count();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv];
        let mut depth = vec![usize::MAX; nv];
        let mut tree_edges = BTreeSet::new();
        depth[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for h in self.cyclic_order(v) {
                let w = self.source[self.partner[h]];
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((v, self.edge_of[h]));
                    tree_edges.insert(self.edge_of[h]);
                    queue.push_back(w);
                }
            }
        }
        let mut lengths = Vec::new();
        for e in 0..self.edge_count() {
            if tree_edges.contains(&e) {
                continue;
            }
            let (a, b) = self.edge_halves(e);
            let (mut x, mut y) = (self.source[a], self.source[b]);
            let mut len = 1;
            while x != y {
                if depth[x] < depth[y] {
                    std::mem::swap(&mut x, &mut y);
                }
                x = parent[x].expect("non-root has a parent").0;
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    pub fn is_tilting_discrete(&self) -> bool {
        let p = self.cycle_profile();
        p.betti == 0 || (p.betti == 1 && p.cycle_lengths[0] % 2 == 1)
    }

    pub fn opposite(&self) -> BrauerGraph {
        let mut g = self.clone();
        for h in 0..self.half_count() {
            g.next[self.next[h]] = h;
        }
        g
    }

    pub fn flip(&self, edge: &str, direction: Direction) -> Result<BrauerGraph, GraphError> {
        let e = self.edge(edge)?;
        Ok(match direction {
            Direction::Left => self.left_flip(e),
            Direction::Right => self.opposite().left_flip(e).opposite(),
        })
    }

    fn left_flip(&self, edge: usize) -> BrauerGraph {
        if self.edge_count() == 1 {
            return self.clone();
        }
        let (e0, e1) = self.edge_halves(edge);
        let in_e = |h: usize| h == e0 || h == e1;
        let bar = |h: usize| self.partner[h];

        // cyclic orders with both halves of E taken out
        let mut next = self.next.clone();
        for f in (0..self.half_count()).filter(|&f| !in_e(f)) {
            let mut g = self.next[f];
            while in_e(g) {
                g = self.next[g];
            }
            next[f] = g;
        }
        let mut prev = vec![usize::MAX; self.half_count()];
        for f in (0..self.half_count()).filter(|&f| !in_e(f)) {
            prev[next[f]] = f;
        }

        // each half whose predecessor lies outside E moves to just before
        // the far end of that predecessor; a half preceded by its partner
        // rides along behind it
        let mut source = self.source.clone();
        let mut out = next.clone();
        for e in [e0, e1] {
            let p = self.prev(e);
            if p == e {
                out[e] = e;
                continue;
            }
            if in_e(p) {
                continue;
            }
            let anchor = bar(p);
            let tail = if self.next[e] == bar(e) { bar(e) } else { e };
            source[e] = self.source[anchor];
            source[tail] = self.source[anchor];
            out[prev[anchor]] = e;
            if tail != e {
                out[e] = tail;
            }
            out[tail] = anchor;
        }

        let mut g = self.clone();
        g.source = source;
        g.next = out;
        g
    }

    /// Checks that `next` is a permutation whose orbits are the vertex fibres.
    pub fn check_rotation_system(&self) -> bool {
        let n = self.half_count();
        let mut hit = vec![false; n];
        for h in 0..n {
            if hit[self.next[h]] {
                return false;
            }
            hit[self.next[h]] = true;
        }
        for h in 0..n {
            if self.source[self.next[h]] != self.source[h] {
                return false;
            }
        }
        for v in 0..self.vertex_count() {
            let fibre = self.source.iter().filter(|&&s| s == v).count();
            if fibre == 0 || self.cyclic_order(v).len() != fibre {
                return false;
            }
        }
        (0..n).all(|h| self.partner[h] != h && self.partner[self.partner[h]] == h)
            && self.is_connected()
    }
}

impl fmt::Display for BrauerGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
