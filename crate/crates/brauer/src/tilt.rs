//! Walks as two-term complexes, Hom-vanishing, complete sets and the Hasse quiver.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::ribbon::{BrauerGraph, Slot};
use crate::walks::{
    check_pair, discrete_length_bound, enumerate_admissible_walks, maximal_runs, signed_walk, Oriented, Sign,
    SignedWalk,
};

/// A path `[e]^k (e|σ^j(e))`, or the socle element of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PathLabel {
    Path { start: usize, power: u32, steps: usize },
    Socle { edge: usize },
}

impl PathLabel {
    /// The short path `(x|y)` between two half-edges at one vertex.
    pub fn between(g: &BrauerGraph, x: usize, y: usize) -> PathLabel {
        let mut steps = 0;
        let mut h = x;
        while h != y {
            h = g.next(h);
            steps += 1;
        }
        PathLabel::Path {
            start: x,
            power: 0,
            steps,
        }
    }

    pub fn end(&self, g: &BrauerGraph) -> Option<usize> {
        match *self {
            PathLabel::Path { start, steps, .. } => Some(g.rotate(start, steps as i64)),
            PathLabel::Socle { .. } => None,
        }
    }

    /// Edge of the left idempotent.
    pub fn head_edge(&self, g: &BrauerGraph) -> usize {
        match *self {
            PathLabel::Path { start, .. } => g.edge_of(start),
            PathLabel::Socle { edge } => edge,
        }
    }

    /// Edge of the right idempotent.
    pub fn tail_edge(&self, g: &BrauerGraph) -> usize {
        match *self {
            PathLabel::Path { .. } => g.edge_of(self.end(g).expect("path")),
            PathLabel::Socle { edge } => edge,
        }
    }

    pub fn is_short(&self, g: &BrauerGraph) -> bool {
        match *self {
            PathLabel::Path { start, power, steps } => {
                power == 0 && steps > 0 && steps < g.half_valency(start)
            }
            PathLabel::Socle { .. } => false,
        }
    }

    pub fn to_text(&self, g: &BrauerGraph) -> String {
        match *self {
            PathLabel::Path { start, power, .. } => {
                let end = self.end(g).expect("path");
                let head = if power > 0 {
                    format!("[{}]^{} ", g.half_name(start), power)
                } else {
                    String::new()
                };
                format!("{head}({}|{})", g.half_name(start), g.half_name(end))
            }
            PathLabel::Socle { edge } => format!("soc({})", g.edge_name(edge)),
        }
    }
}

/// `T⁻¹ --d--> T⁰`, summands listed in walk order; `differential[r][c]` maps
/// the `c`-th summand of `T⁻¹` into the `r`-th summand of `T⁰`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoTermComplex {
    pub degree0: Vec<usize>,
    pub degree_minus1: Vec<usize>,
    pub differential: Vec<Vec<Option<PathLabel>>>,
}

impl TwoTermComplex {
    pub fn new(degree0: Vec<usize>, degree_minus1: Vec<usize>) -> TwoTermComplex {
        let differential = vec![vec![None; degree_minus1.len()]; degree0.len()];
        TwoTermComplex {
            degree0,
            degree_minus1,
            differential,
        }
    }

    pub fn entries(&self) -> Vec<(usize, usize, PathLabel)> {
        let mut out = Vec::new();
        for (r, row) in self.differential.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if let Some(p) = x {
                    out.push((r, c, *p));
                }
            }
        }
        out
    }

    /// Summand multisets and labelled entries, forgetting summand order.
    pub fn same_up_to_reordering(&self, other: &TwoTermComplex) -> bool {
        let key = |t: &TwoTermComplex| {
            let mut d0 = t.degree0.clone();
            let mut d1 = t.degree_minus1.clone();
            d0.sort();
            d1.sort();
            let mut es: Vec<_> = t
                .entries()
                .into_iter()
                .map(|(r, c, p)| (t.degree0[r], t.degree_minus1[c], p))
                .collect();
            es.sort();
            (d0, d1, es)
        };
        key(self) == key(other)
    }

    pub fn to_text(&self, g: &BrauerGraph) -> String {
        let names = |v: &[usize]| {
            if v.is_empty() {
                "0".to_string()
            } else {
                v.iter()
                    .map(|&e| format!("P{}", g.edge_name(e)))
                    .collect::<Vec<_>>()
                    .join(" + ")
            }
        };
        let mut s = format!("{} -> {}", names(&self.degree_minus1), names(&self.degree0));
        for (r, c, p) in self.entries() {
            let _ = write!(s, "\n  d[{r},{c}] = {}", p.to_text(g));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TiltError {
    #[error("entry d[{row},{col}] is not a short path")]
    NotShortString { row: usize, col: usize },
    #[error("edge {0} occurs in both degrees")]
    SummandOverlap(String),
    #[error("the complex is not connected")]
    Disconnected,
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("infinitely many admissible walks; supply a cap")]
    NotEnumerable,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

pub fn complex_of_walk(g: &BrauerGraph, w: &SignedWalk) -> TwoTermComplex {
    complex_of_oriented(g, &w.forward(g))
}

pub fn complex_of_oriented(g: &BrauerGraph, x: &Oriented) -> TwoTermComplex {
    let mut row = vec![0; x.len()];
    let mut t = TwoTermComplex::new(Vec::new(), Vec::new());
    for (a, (&h, &s)) in x.halves.iter().zip(&x.signs).enumerate() {
        let e = g.edge_of(h);
        if s == Sign::Plus {
            row[a] = t.degree0.len();
            t.degree0.push(e);
        } else {
            row[a] = t.degree_minus1.len();
            t.degree_minus1.push(e);
        }
    }
    t.differential = vec![vec![None; t.degree_minus1.len()]; t.degree0.len()];
    for a in 0..x.len().saturating_sub(1) {
        let (h, k) = (x.halves[a], x.halves[a + 1]);
        if x.signs[a] == Sign::Plus {
            t.differential[row[a]][row[a + 1]] = Some(PathLabel::between(g, g.partner(h), k));
        } else {
            t.differential[row[a + 1]][row[a]] = Some(PathLabel::between(g, k, g.partner(h)));
        }
    }
    t
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Node {
    Zero(usize),
    Minus(usize),
}

pub fn walk_of_complex(g: &BrauerGraph, t: &TwoTermComplex) -> Result<SignedWalk, TiltError> {
    let (n0, n1) = (t.degree0.len(), t.degree_minus1.len());
    if t.differential.len() != n0 || t.differential.iter().any(|r| r.len() != n1) {
        return Err(TiltError::Malformed("matrix shape".into()));
    }
    let s0: BTreeSet<usize> = t.degree0.iter().copied().collect();
    if let Some(&e) = t.degree_minus1.iter().find(|e| s0.contains(e)) {
        return Err(TiltError::SummandOverlap(g.edge_name(e).to_string()));
    }
    for (r, c, p) in t.entries() {
        if !p.is_short(g) {
            return Err(TiltError::NotShortString { row: r, col: c });
        }
        if p.head_edge(g) != t.degree0[r] || p.tail_edge(g) != t.degree_minus1[c] {
            return Err(TiltError::Malformed(format!(
                "entry d[{r},{c}] does not connect its summands"
            )));
        }
    }
    match (n0, n1) {
        (0, 0) => return Err(TiltError::Malformed("zero complex".into())),
        (1, 0) | (0, 1) => {
            let e = if n0 == 1 { t.degree0[0] } else { t.degree_minus1[0] };
            let sign = if n0 == 1 { Sign::Plus } else { Sign::Minus };
            let h = g.edge_halves(e).0;
            return signed_walk(g, &[h], sign).map_err(|e| TiltError::Malformed(e.to_string()));
        }
        _ => {}
    }
    let entries = t.entries();
    let total = n0 + n1;
    if entries.len() != total - 1 {
        return Err(TiltError::Disconnected);
    }
    let index = |n: Node| match n {
        Node::Zero(r) => r,
        Node::Minus(c) => n0 + c,
    };
    let mut adj: Vec<Vec<(Node, PathLabel)>> = vec![Vec::new(); total];
    for &(r, c, p) in &entries {
        adj[r].push((Node::Minus(c), p));
        adj[n0 + c].push((Node::Zero(r), p));
    }
    if adj.iter().any(|a| a.len() > 2) {
        return Err(TiltError::Malformed("a summand has more than two neighbours".into()));
    }
    let start = (0..n0)
        .map(Node::Zero)
        .chain((0..n1).map(Node::Minus))
        .find(|&n| adj[index(n)].len() == 1)
        .ok_or(TiltError::Disconnected)?;
    let mut order = vec![start];
    let mut labels = Vec::new();
    let mut prev: Option<Node> = None;
    let mut cur = start;
    loop {
        let step = adj[index(cur)].iter().find(|(n, _)| Some(*n) != prev).copied();
        match step {
            Some((n, p)) if order.len() < total => {
                labels.push(p);
                order.push(n);
                prev = Some(cur);
                cur = n;
            }
            _ => break,
        }
    }
    if order.len() != total {
        return Err(TiltError::Disconnected);
    }
    let mut halves: Vec<Option<usize>> = vec![None; total];
    let mut assign = |k: usize, h: usize| -> Result<(), TiltError> {
        match halves[k] {
            Some(old) if old != h => Err(TiltError::Malformed(
                "entries disagree on a half-edge".into(),
            )),
            _ => {
                halves[k] = Some(h);
                Ok(())
            }
        }
    };
    for (k, p) in labels.iter().enumerate() {
        let (PathLabel::Path { start: s, .. }, Some(e)) = (p, p.end(g)) else {
            unreachable!("short paths only");
        };
        match order[k] {
            Node::Zero(_) => {
                assign(k, g.partner(*s))?;
                assign(k + 1, e)?;
            }
            Node::Minus(_) => {
                assign(k, g.partner(e))?;
                assign(k + 1, *s)?;
            }
        }
    }
    let seq: Vec<usize> = halves.into_iter().map(|h| h.expect("assigned")).collect();
    let first = match start {
        Node::Zero(_) => Sign::Plus,
        Node::Minus(_) => Sign::Minus,
    };
    signed_walk(g, &seq, first).map_err(|e| TiltError::Malformed(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum U2Case {
    I,
    II,
    III,
    IV,
}

/// Orientations are `w` for the target walk and `w'` for the source walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct U2Witness {
    pub w: Vec<usize>,
    pub w_prime: Vec<usize>,
    pub i: usize,
    pub j: usize,
    pub case: U2Case,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct L2Witness {
    pub w: Vec<usize>,
    pub w_prime: Vec<usize>,
    pub i: usize,
    pub j: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub vanishes: bool,
    pub u2_witness: Option<U2Witness>,
    pub l2_witness: Option<L2Witness>,
}

fn u2_case(g: &BrauerGraph, w: &Oriented, i: usize, v: &Oriented, j: usize) -> Option<U2Case> {
    let (a, c) = (w.at(i), v.at(j));
    if g.source(a) != g.source(c) {
        return None;
    }
    if a == c {
        return Some(U2Case::I);
    }
    let (a, c) = (Slot::Real(a), Slot::Real(c));
    let (b, d) = (w.before(g, i), v.before(g, j));
    if b == d && g.is_cyclic_subordering(&[a, c, b]) {
        Some(U2Case::II)
    } else if g.is_cyclic_subordering(&[a, c, d, b]) {
        Some(U2Case::III)
    } else if g.is_cyclic_subordering(&[a, c, b, d]) {
        Some(U2Case::IV)
    } else {
        None
    }
}

fn find_u2(g: &BrauerGraph, target: &SignedWalk, source: &SignedWalk) -> Option<U2Witness> {
    for w in target.both(g) {
        for v in source.both(g) {
            for i in (1..=w.len()).filter(|&i| w.sign(i) == Sign::Plus) {
                for j in (1..=v.len()).filter(|&j| v.sign(j) == Sign::Minus) {
                    if let Some(case) = u2_case(g, &w, i, &v, j) {
                        return Some(U2Witness {
                            w: w.halves.clone(),
                            w_prime: v.halves.clone(),
                            i,
                            j,
                            case,
                        });
                    }
                }
            }
        }
    }
    None
}

fn find_l2(g: &BrauerGraph, target: &SignedWalk, source: &SignedWalk) -> Option<L2Witness> {
    for w in target.both(g) {
        for v in source.both(g) {
            for (i, j, len) in maximal_runs(&w, &v) {
                if (0..len).any(|k| w.sign(i + k) != v.sign(j + k)) {
                    continue;
                }
                let t1 = Slot::Real(w.at(i));
                let tl_bar = Slot::Real(g.partner(w.at(i + len - 1)));
                if g.is_cyclic_subordering(&[v.before(g, j), w.before(g, i), t1])
                    && g.is_cyclic_subordering(&[tl_bar, v.after(j + len), w.after(i + len)])
                {
                    return Some(L2Witness {
                        w: w.halves.clone(),
                        w_prime: v.halves.clone(),
                        i,
                        j,
                        len,
                    });
                }
            }
        }
    }
    None
}

/// Whether `Hom(T_source, T_target[1])` vanishes in the homotopy category.
pub fn hom_vanishes_into_shift(g: &BrauerGraph, source: &SignedWalk, target: &SignedWalk) -> HomReport {
    let u2_witness = find_u2(g, target, source);
    let l2_witness = find_l2(g, target, source);
    HomReport {
        vanishes: u2_witness.is_none() && l2_witness.is_none(),
        u2_witness,
        l2_witness,
    }
}

/// A complete admissible set, walks sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompleteSet {
    pub walks: Vec<SignedWalk>,
}

impl CompleteSet {
    pub fn new(mut walks: Vec<SignedWalk>) -> CompleteSet {
        walks.sort();
        CompleteSet { walks }
    }

    pub fn serialize(&self, g: &BrauerGraph) -> Vec<String> {
        let mut out: Vec<String> = self.walks.iter().map(|w| w.to_text(g)).collect();
        out.sort();
        out
    }

    pub fn label(&self, g: &BrauerGraph) -> String {
        format!("{{{}}}", self.serialize(g).join(", "))
    }

    pub fn is_all_stalks(&self, sign: Sign) -> bool {
        self.walks.iter().all(|w| w.len() == 1 && w.signs()[0] == sign)
    }
}

/// Maximal cliques by Bron–Kerbosch with pivoting; `adj[i]` excludes `i`.
pub fn maximal_cliques(adj: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    fn go(
        adj: &[BTreeSet<usize>],
        r: &mut Vec<usize>,
        p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = *p
            .union(&x)
            .max_by_key(|&&u| (p.intersection(&adj[u]).count(), std::cmp::Reverse(u)))
            .expect("nonempty");
        let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
        let mut p = p;
        for v in candidates {
            r.push(v);
            let p2 = p.intersection(&adj[v]).copied().collect();
            let x2 = x.intersection(&adj[v]).copied().collect();
            go(adj, r, p2, x2, out);
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    let all = (0..adj.len()).collect();
    go(adj, &mut Vec::new(), all, BTreeSet::new(), &mut out);
    for c in &mut out {
        c.sort();
    }
    out.sort();
    out
}

/// Complete admissible sets. Without a cap the graph must be tilting-discrete;
/// with a cap on an infinite graph only cliques of full size are kept.
pub fn enumerate_two_term_tilting(
    g: &BrauerGraph,
    cap: Option<usize>,
) -> Result<Vec<CompleteSet>, TiltError> {
    if cap.is_none() && !g.is_tilting_discrete() {
        return Err(TiltError::NotEnumerable);
    }
    let n = g.edge_count();
    let bound = discrete_length_bound(g);
    let en = enumerate_admissible_walks(g, cap.or(bound).expect("checked above"));
    if cap.is_none() && !en.stabilized {
        return Err(TiltError::InternalInvariantViolation(
            "signed walks longer than twice the edge count".into(),
        ));
    }
    let ws = en.walks;
    let mut adj = vec![BTreeSet::new(); ws.len()];
    for a in 0..ws.len() {
        for b in a + 1..ws.len() {
            if check_pair(g, &ws[a], &ws[b]).compatible() {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    let all_edges: BTreeSet<usize> = (0..n).collect();
    let mut sets = Vec::new();
    for clique in maximal_cliques(&adj) {
        let walks: Vec<SignedWalk> = clique.iter().map(|&k| ws[k].clone()).collect();
        let covered: BTreeSet<usize> = walks.iter().flat_map(|w| w.edges(g)).collect();
        let full = walks.len() == n && covered == all_edges;
        if !full {
            if en.stabilized {
                return Err(TiltError::InternalInvariantViolation(format!(
                    "maximal compatible set of size {} covering {} of {} edges",
                    walks.len(),
                    covered.len(),
                    n
                )));
            }
            continue;
        }
        sets.push(CompleteSet::new(walks));
    }
    sets.sort();
    Ok(sets)
}

/// `S >= S'`: `Hom(T_S, T_{S'}[1]) = 0`.
pub fn order_ge(g: &BrauerGraph, s: &CompleteSet, t: &CompleteSet) -> bool {
    s.walks
        .iter()
        .all(|x| t.walks.iter().all(|y| hom_vanishes_into_shift(g, x, y).vanishes))
}

#[derive(Debug, Clone)]
pub struct TwoTiltPoset {
    pub sets: Vec<CompleteSet>,
    /// `ge[a][b]` iff `sets[a] >= sets[b]`.
    pub ge: Vec<Vec<bool>>,
}

pub fn two_tilt_poset(g: &BrauerGraph, cap: Option<usize>) -> Result<TwoTiltPoset, TiltError> {
    let sets = enumerate_two_term_tilting(g, cap)?;
    let ge = sets
        .iter()
        .map(|s| sets.iter().map(|t| order_ge(g, s, t)).collect())
        .collect();
    Ok(TwoTiltPoset { sets, ge })
}

impl TwoTiltPoset {
    pub fn is_partial_order(&self) -> bool {
        let n = self.sets.len();
        (0..n).all(|a| self.ge[a][a])
            && (0..n).all(|a| (0..n).all(|b| a == b || !(self.ge[a][b] && self.ge[b][a])))
            && (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| !(self.ge[a][b] && self.ge[b][c]) || self.ge[a][c]))
            })
    }

    pub fn maxima(&self) -> Vec<usize> {
        let n = self.sets.len();
        (0..n).filter(|&a| (0..n).all(|b| self.ge[a][b])).collect()
    }

    pub fn minima(&self) -> Vec<usize> {
        let n = self.sets.len();
        (0..n).filter(|&a| (0..n).all(|b| self.ge[b][a])).collect()
    }

    /// Cover relations, from the larger set to the smaller.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.sets.len();
        let gt = |a: usize, b: usize| a != b && self.ge[a][b];
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if gt(a, b) && !(0..n).any(|c| gt(a, c) && gt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HasseNode {
    pub id: usize,
    pub walks: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HasseQuiver {
    pub nodes: Vec<HasseNode>,
    pub arrows: Vec<(usize, usize)>,
}

impl HasseQuiver {
    pub fn is_connected(&self) -> bool {
        let n = self.nodes.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for &(x, y) in &self.arrows {
                for (p, q) in [(x, y), (y, x)] {
                    if p == a && !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn sources(&self) -> Vec<usize> {
        let n = self.nodes.len();
        (0..n).filter(|&a| self.arrows.iter().all(|&(_, y)| y != a)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        let n = self.nodes.len();
        (0..n).filter(|&a| self.arrows.iter().all(|&(x, _)| x != a)).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n");
        for node in &self.nodes {
            let label = format!("{{{}}}", node.walks.join(", ")).replace('"', "\\\"");
            let _ = writeln!(s, "  n{} [label=\"{}\"];", node.id, label);
        }
        for (a, b) in &self.arrows {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub fn hasse_of_poset(g: &BrauerGraph, poset: &TwoTiltPoset) -> HasseQuiver {
    HasseQuiver {
        nodes: poset
            .sets
            .iter()
            .enumerate()
            .map(|(id, s)| HasseNode {
                id,
                walks: s.serialize(g),
            })
            .collect(),
        arrows: poset.covers(),
    }
}

/// The Hasse quiver of complete sets. On a fully enumerated graph it must be
/// connected, with the all-plus stalks as its only source and the all-minus
/// stalks as its only sink.
pub fn hasse_quiver(g: &BrauerGraph, cap: Option<usize>) -> Result<HasseQuiver, TiltError> {
    let poset = two_tilt_poset(g, cap)?;
    let q = hasse_of_poset(g, &poset);
    if discrete_length_bound(g).is_some_and(|b| cap.map_or(true, |c| c >= b)) {
        let sources = q.sources();
        let sinks = q.sinks();
        let ok = q.is_connected()
            && sources.len() == 1
            && sinks.len() == 1
            && poset.sets[sources[0]].is_all_stalks(Sign::Plus)
            && poset.sets[sinks[0]].is_all_stalks(Sign::Minus);
        if !ok {
            return Err(TiltError::InternalInvariantViolation(
                "Hasse quiver is not an interval between the stalk sets".into(),
            ));
        }
    }
    Ok(q)
}
