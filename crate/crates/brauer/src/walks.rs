//! Signed walks and the compatibility conditions between them.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ribbon::{BrauerGraph, Slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("walk text: {0}")]
    Parse(String),
    #[error("unknown half-edge `{0}`")]
    UnknownHalfEdge(String),
    #[error("not a walk: {0}")]
    NotAWalk(String),
    #[error("no signature exists: {0}")]
    NoSignature(String),
    #[error("signs do not alternate: {0}")]
    SignMismatch(String),
}

/// A signed walk `{w, w̄}`, stored as its canonical half-walk: the smaller of
/// `w` and `w̄` in token order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedWalk {
    halves: Vec<usize>,
    signs: Vec<Sign>,
}

impl PartialOrd for SignedWalk {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignedWalk {
    /// Length, then canonical sequence, then first sign.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.halves.len(), &self.halves, self.signs[0]).cmp(&(
            other.halves.len(),
            &other.halves,
            other.signs[0],
        ))
    }
}

/// One orientation of a signed walk, with the two boundary virtual edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oriented {
    pub halves: Vec<usize>,
    pub signs: Vec<Sign>,
    pub start: Slot,
    pub end: Slot,
}

impl Oriented {
    pub fn len(&self) -> usize {
        self.halves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halves.is_empty()
    }

    /// `e_i` for `1 <= i <= m`, 1-based.
    pub fn at(&self, i: usize) -> usize {
        self.halves[i - 1]
    }

    pub fn sign(&self, i: usize) -> Sign {
        self.signs[i - 1]
    }

    /// The slot `ē_{i-1}` for `1 <= i <= m+1`, with `e_0` at `i = 1`.
    pub fn before(&self, g: &BrauerGraph, i: usize) -> Slot {
        if i == 1 {
            self.start
        } else {
            Slot::Real(g.partner(self.halves[i - 2]))
        }
    }

    /// The slot `e_k` for `1 <= k <= m+1`, with `e_{m+1}` at `k = m+1`.
    pub fn after(&self, k: usize) -> Slot {
        if k == self.halves.len() + 1 {
            self.end
        } else {
            Slot::Real(self.halves[k - 1])
        }
    }

    /// Sign attached to a neighbourhood slot at position `i` (`before`) or
    /// `k` (`after`); virtual edges carry the opposite of their neighbour.
    pub fn before_sign(&self, i: usize) -> Sign {
        if i == 1 {
            self.signs[0].flip()
        } else {
            self.signs[i - 2]
        }
    }

    pub fn after_sign(&self, k: usize) -> Sign {
        if k == self.halves.len() + 1 {
            self.signs[k - 2].flip()
        } else {
            self.signs[k - 1]
        }
    }
}

fn virtual_before(first: usize, sign: Sign) -> Slot {
    match sign {
        Sign::Plus => Slot::VirtualMinus(first),
        Sign::Minus => Slot::VirtualPlus(first),
    }
}

impl SignedWalk {
    pub fn halves(&self) -> &[usize] {
        &self.halves
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.halves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halves.is_empty()
    }

    /// Edges met by the walk.
    pub fn edges(&self, g: &BrauerGraph) -> BTreeSet<usize> {
        self.halves.iter().map(|&h| g.edge_of(h)).collect()
    }

    /// The stored half-walk `w` with its boundary virtual edges.
    pub fn forward(&self, g: &BrauerGraph) -> Oriented {
        orient(g, self.halves.clone(), self.signs.clone())
    }

    /// The reversed half-walk `w̄`.
    pub fn backward(&self, g: &BrauerGraph) -> Oriented {
        let halves = self.halves.iter().rev().map(|&h| g.partner(h)).collect();
        let signs = self.signs.iter().rev().copied().collect();
        orient(g, halves, signs)
    }

    pub fn both(&self, g: &BrauerGraph) -> [Oriented; 2] {
        [self.forward(g), self.backward(g)]
    }

    /// The same walk with every sign flipped.
    pub fn negated(&self) -> SignedWalk {
        SignedWalk {
            halves: self.halves.clone(),
            signs: self.signs.iter().map(|s| s.flip()).collect(),
        }
    }

    pub fn to_text(&self, g: &BrauerGraph) -> String {
        self.halves
            .iter()
            .zip(&self.signs)
            .map(|(&h, s)| format!("{}{}", g.half_name(h), s))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn orient(g: &BrauerGraph, halves: Vec<usize>, signs: Vec<Sign>) -> Oriented {
    let m = halves.len();
    let start = virtual_before(halves[0], signs[0]);
    let end = virtual_before(g.partner(halves[m - 1]), signs[m - 1]);
    Oriented {
        halves,
        signs,
        start,
        end,
    }
}

/// Builds a signed walk from a half-edge sequence and the sign of its first entry.
pub fn signed_walk(g: &BrauerGraph, halves: &[usize], first: Sign) -> Result<SignedWalk, WalkError> {
    if halves.is_empty() {
        return Err(WalkError::Parse("empty walk".into()));
    }
    for i in 1..halves.len() {
        if g.source(halves[i]) != g.source(g.partner(halves[i - 1])) {
            return Err(WalkError::NotAWalk(format!(
                "`{}` does not start where `{}` ends",
                g.half_name(halves[i]),
                g.half_name(halves[i - 1])
            )));
        }
    }
    let mut signs = Vec::with_capacity(halves.len());
    let mut s = first;
    for _ in halves {
        signs.push(s);
        s = s.flip();
    }
    let mut edge_sign = vec![None; g.edge_count()];
    for (&h, &s) in halves.iter().zip(&signs) {
        let e = g.edge_of(h);
        match edge_sign[e] {
            Some(prev) if prev != s => {
                return Err(WalkError::NoSignature(format!(
                    "edge {} would need both signs",
                    g.edge_name(e)
                )))
            }
            _ => edge_sign[e] = Some(s),
        }
    }
    Ok(canonical(g, halves.to_vec(), signs))
}

fn canonical(g: &BrauerGraph, halves: Vec<usize>, signs: Vec<Sign>) -> SignedWalk {
    let rev: Vec<usize> = halves.iter().rev().map(|&h| g.partner(h)).collect();
    if rev < halves {
        let rsigns = signs.iter().rev().copied().collect();
        SignedWalk {
            halves: rev,
            signs: rsigns,
        }
    } else {
        SignedWalk { halves, signs }
    }
}

/// Parses `1+ 2- 3+`; signs after the first token may be omitted.
pub fn make_signed_walk(g: &BrauerGraph, text: &str) -> Result<SignedWalk, WalkError> {
    let mut halves = Vec::new();
    let mut given = Vec::new();
    for tok in text.split_whitespace() {
        let (name, sign) = if let Some(n) = tok.strip_suffix('+') {
            (n, Some(Sign::Plus))
        } else if let Some(n) = tok.strip_suffix('-') {
            (n, Some(Sign::Minus))
        } else {
            (tok, None)
        };
        let h = g
            .half(name)
            .map_err(|_| WalkError::UnknownHalfEdge(name.to_string()))?;
        halves.push(h);
        given.push(sign);
    }
    let first = match given.first() {
        None => return Err(WalkError::Parse("empty walk".into())),
        Some(None) => return Err(WalkError::Parse("the first token needs a sign".into())),
        Some(Some(s)) => *s,
    };
    let mut expected = first;
    for (k, s) in given.iter().enumerate() {
        if let Some(s) = s {
            if *s != expected {
                return Err(WalkError::SignMismatch(format!(
                    "position {} is marked {} but alternation gives {}",
                    k + 1,
                    s,
                    expected
                )));
            }
        }
        expected = expected.flip();
    }
    signed_walk(g, &halves, first)
}

/// Which half-walks of the two walks a common subwalk was read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum HalfPair {
    /// `(w, w')`
    Same,
    /// `(w, w̄')`
    SecondReversed,
    /// `(w̄, w')`
    FirstReversed,
    /// `(w̄, w̄')`
    BothReversed,
}

impl HalfPair {
    fn flags(self) -> (bool, bool) {
        match self {
            HalfPair::Same => (false, false),
            HalfPair::SecondReversed => (false, true),
            HalfPair::FirstReversed => (true, false),
            HalfPair::BothReversed => (true, true),
        }
    }

    fn from_flags(a: bool, b: bool) -> HalfPair {
        match (a, b) {
            (false, false) => HalfPair::Same,
            (false, true) => HalfPair::SecondReversed,
            (true, false) => HalfPair::FirstReversed,
            (true, true) => HalfPair::BothReversed,
        }
    }
}

/// A maximal common subwalk, indexed by where it occurs (1-based offsets).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubwalkSite {
    pub half_pair: HalfPair,
    pub i: usize,
    pub j: usize,
    pub len: usize,
    pub sequence: Vec<usize>,
}

impl SubwalkSite {
    /// The run read through the other orientation of both walks.
    fn involuted(&self, m: usize, n: usize) -> (HalfPair, usize, usize) {
        let (a, b) = self.half_pair.flags();
        (
            HalfPair::from_flags(!a, !b),
            m + 2 - self.i - self.len,
            n + 2 - self.j - self.len,
        )
    }
}

/// Orientations selected by a pairing.
pub fn oriented_pair(
    g: &BrauerGraph,
    w: &SignedWalk,
    w2: &SignedWalk,
    pair: HalfPair,
) -> (Oriented, Oriented) {
    let (a, b) = pair.flags();
    let x = if a { w.backward(g) } else { w.forward(g) };
    let y = if b { w2.backward(g) } else { w2.forward(g) };
    (x, y)
}

pub(crate) fn maximal_runs(x: &Oriented, y: &Oriented) -> Vec<(usize, usize, usize)> {
    let (m, n) = (x.len(), y.len());
    let mut out = Vec::new();
    for i in 1..=m {
        for j in 1..=n {
            if x.at(i) != y.at(j) {
                continue;
            }
            if i > 1 && j > 1 && x.at(i - 1) == y.at(j - 1) {
                continue;
            }
            let mut len = 1;
            while i + len <= m && j + len <= n && x.at(i + len) == y.at(j + len) {
                len += 1;
            }
            out.push((i, j, len));
        }
    }
    out
}

/// All maximal common subwalks of `w` and `w2`, one representative for each
/// class under reversing both walks (and, when `w == w2`, swapping them).
pub fn common_subwalk_sites(g: &BrauerGraph, w: &SignedWalk, w2: &SignedWalk) -> Vec<SubwalkSite> {
    let same = w == w2;
    let (m, n) = (w.len(), w2.len());
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for pair in [
        HalfPair::Same,
        HalfPair::SecondReversed,
        HalfPair::FirstReversed,
        HalfPair::BothReversed,
    ] {
        let (x, y) = oriented_pair(g, w, w2, pair);
        for (i, j, len) in maximal_runs(&x, &y) {
            let site = SubwalkSite {
                half_pair: pair,
                i,
                j,
                len,
                sequence: x.halves[i - 1..i - 1 + len].to_vec(),
            };
            let mut keys = vec![(pair, i, j), site.involuted(m, n)];
            if same {
                let swapped: Vec<_> = keys
                    .iter()
                    .map(|&(p, a, b)| {
                        let (f1, f2) = p.flags();
                        (HalfPair::from_flags(f2, f1), b, a)
                    })
                    .collect();
                keys.extend(swapped);
            }
            let key = *keys.iter().min().expect("nonempty");
            if seen.insert(key) {
                out.push(site);
            }
        }
    }
    out
}

/// An intersecting vertex: two neighbourhoods with four distinct members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionSite {
    pub vertex: usize,
    /// Position `i` in the stored half-walk of the first walk.
    pub i: usize,
    pub j: usize,
    pub neighborhood_w: [Slot; 2],
    pub neighborhood_w2: [Slot; 2],
    pub signs_w: [Sign; 2],
    pub signs_w2: [Sign; 2],
}

impl IntersectionSite {
    pub fn members(&self) -> [Slot; 4] {
        [
            self.neighborhood_w[0],
            self.neighborhood_w[1],
            self.neighborhood_w2[0],
            self.neighborhood_w2[1],
        ]
    }

    pub fn virtual_count(&self) -> usize {
        self.members().iter().filter(|s| s.is_virtual()).count()
    }
}

struct Neighborhood {
    pos: usize,
    vertex: usize,
    slots: [Slot; 2],
    signs: [Sign; 2],
}

fn neighborhoods(g: &BrauerGraph, x: &Oriented) -> Vec<Neighborhood> {
    (1..=x.len() + 1)
        .map(|i| {
            let a = x.before(g, i);
            let b = x.after(i);
            Neighborhood {
                pos: i,
                vertex: g.source(b.half()),
                slots: [a, b],
                signs: [x.before_sign(i), x.after_sign(i)],
            }
        })
        .collect()
}

pub fn intersection_sites(g: &BrauerGraph, w: &SignedWalk, w2: &SignedWalk) -> Vec<IntersectionSite> {
    let same = w == w2;
    let xs = neighborhoods(g, &w.forward(g));
    let ys = neighborhoods(g, &w2.forward(g));
    let mut out = Vec::new();
    for a in &xs {
        for b in &ys {
            if same && b.pos <= a.pos {
                continue;
            }
            if a.vertex != b.vertex {
                continue;
            }
            let members = [a.slots[0], a.slots[1], b.slots[0], b.slots[1]];
            let distinct: BTreeSet<Slot> = members.iter().copied().collect();
            if distinct.len() == 4 {
                out.push(IntersectionSite {
                    vertex: a.vertex,
                    i: a.pos,
                    j: b.pos,
                    neighborhood_w: a.slots,
                    neighborhood_w2: b.slots,
                    signs_w: a.signs,
                    signs_w2: b.signs,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub sign_ok: bool,
    pub nc1_failures: Vec<SubwalkSite>,
    pub nc2_failures: Vec<SubwalkSite>,
    pub nc3_failures: Vec<IntersectionSite>,
}

impl PairReport {
    pub fn compatible(&self) -> bool {
        self.sign_ok
            && self.nc1_failures.is_empty()
            && self.nc2_failures.is_empty()
            && self.nc3_failures.is_empty()
    }
}

pub fn sign_condition(g: &BrauerGraph, w: &SignedWalk, w2: &SignedWalk) -> bool {
    let (x, y) = (w.forward(g), w2.forward(g));
    let (m, n) = (x.len(), y.len());
    // (vertex, sign) at the two ends of each walk
    let ends_x = [
        (g.source(x.at(1)), x.sign(1)),
        (g.source(g.partner(x.at(m))), x.sign(m)),
    ];
    let ends_y = [
        (g.source(y.at(1)), y.sign(1)),
        (g.source(g.partner(y.at(n))), y.sign(n)),
    ];
    ends_x
        .iter()
        .all(|(u, s)| ends_y.iter().all(|(v, t)| u != v || s == t))
}

fn nc1_holds(x: &Oriented, y: &Oriented, site: &SubwalkSite) -> bool {
    (0..site.len).all(|k| x.sign(site.i + k) == y.sign(site.j + k))
}

fn nc2_holds(g: &BrauerGraph, x: &Oriented, y: &Oriented, site: &SubwalkSite) -> bool {
    let (i, j, l) = (site.i, site.j, site.len);
    let start_exempt = i == 1 && j == 1;
    let end_exempt = i + l - 1 == x.len() && j + l - 1 == y.len();
    let t1 = Slot::Real(x.at(i));
    let tl_bar = Slot::Real(g.partner(x.at(i + l - 1)));
    let (bi, bj) = (x.before(g, i), y.before(g, j));
    let (ai, aj) = (x.after(i + l), y.after(j + l));
    let first = (start_exempt || g.is_cyclic_subordering(&[t1, bi, bj]))
        && (end_exempt || g.is_cyclic_subordering(&[tl_bar, aj, ai]));
    let second = (start_exempt || g.is_cyclic_subordering(&[t1, bj, bi]))
        && (end_exempt || g.is_cyclic_subordering(&[tl_bar, ai, aj]));
    first || second
}

/// The two allowed signed patterns, with either neighbourhood in the leading role.
fn nc3_holds(g: &BrauerGraph, site: &IntersectionSite) -> bool {
    let orient = |slots: [Slot; 2], signs: [Sign; 2]| {
        if signs[0] == Sign::Plus {
            (slots[0], slots[1])
        } else {
            (slots[1], slots[0])
        }
    };
    let p = orient(site.neighborhood_w, site.signs_w);
    let q = orient(site.neighborhood_w2, site.signs_w2);
    [(p, q), (q, p)].iter().any(|&((a, b), (c, d))| {
        g.is_cyclic_subordering(&[a, b, c, d]) || g.is_cyclic_subordering(&[a, b, d, c])
    })
}

pub fn check_pair(g: &BrauerGraph, w: &SignedWalk, w2: &SignedWalk) -> PairReport {
    let sign_ok = sign_condition(g, w, w2);
    let mut nc1_failures = Vec::new();
    let mut nc2_failures = Vec::new();
    for site in common_subwalk_sites(g, w, w2) {
        let (x, y) = oriented_pair(g, w, w2, site.half_pair);
        if !nc1_holds(&x, &y, &site) {
            nc1_failures.push(site.clone());
        }
        if !nc2_holds(g, &x, &y, &site) {
            nc2_failures.push(site);
        }
    }
    let nc3_failures = intersection_sites(g, w, w2)
        .into_iter()
        .filter(|s| s.virtual_count() <= 1 && !nc3_holds(g, s))
        .collect();
    PairReport {
        sign_ok,
        nc1_failures,
        nc2_failures,
        nc3_failures,
    }
}

pub fn compatible(g: &BrauerGraph, w: &SignedWalk, w2: &SignedWalk) -> bool {
    check_pair(g, w, w2).compatible()
}

pub fn is_admissible(g: &BrauerGraph, w: &SignedWalk) -> bool {
    compatible(g, w, w)
}

pub fn is_admissible_set(g: &BrauerGraph, ws: &[SignedWalk]) -> bool {
    (0..ws.len()).all(|a| (a..ws.len()).all(|b| compatible(g, &ws[a], &ws[b])))
}

/// Every signed walk of length at most `cap`, sorted, plus whether the search
/// ran out of walks before reaching `cap + 1`.
pub fn enumerate_signed_walks(g: &BrauerGraph, cap: usize) -> (Vec<SignedWalk>, bool) {
    let mut found = BTreeSet::new();
    let mut exhausted = true;
    let mut stack: Vec<(Vec<usize>, Sign)> = Vec::new();
    for h in 0..g.half_count() {
        for s in [Sign::Plus, Sign::Minus] {
            stack.push((vec![h], s));
        }
    }
    while let Some((path, first)) = stack.pop() {
        let walk = match signed_walk(g, &path, first) {
            Ok(w) => w,
            Err(_) => continue,
        };
        if path.len() > cap {
            exhausted = false;
            continue;
        }
        found.insert(walk);
        let last = *path.last().expect("nonempty");
        let v = g.source(g.partner(last));
        for next in g.cyclic_order(v) {
            let mut longer = path.clone();
            longer.push(next);
            stack.push((longer, first));
        }
    }
    (found.into_iter().collect(), exhausted)
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub walks: Vec<SignedWalk>,
    /// No signed walk is longer than the cap, so `walks` is all of them.
    pub stabilized: bool,
}

/// Length beyond which no signed walk exists on a tilting-discrete graph.
/// Occurrences of an edge share a position parity, so a walk may cross a
/// tree edge twice (out to the odd cycle and back) but never more.
pub fn discrete_length_bound(g: &BrauerGraph) -> Option<usize> {
    g.is_tilting_discrete().then(|| 2 * g.edge_count())
}

pub fn enumerate_admissible_walks(g: &BrauerGraph, cap: usize) -> Enumeration {
    let (all, stabilized) = enumerate_signed_walks(g, cap);
    let walks = all.into_iter().filter(|w| is_admissible(g, w)).collect();
    Enumeration { walks, stabilized }
}
