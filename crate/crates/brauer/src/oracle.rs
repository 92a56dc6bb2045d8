//! Homological cross-check: the path basis of the Brauer graph algebra,
//! string modules, Hom dimensions by counting common substrings, and exact
//! linear algebra over the rationals.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::ribbon::BrauerGraph;
use crate::tilt::{complex_of_walk, hom_vanishes_into_shift, PathLabel, TwoTermComplex};
use crate::walks::{check_pair, enumerate_signed_walks, is_admissible, Oriented, Sign, SignedWalk};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Trivial(usize),
    /// Path of positive length `len < 𝔪·val` starting at a half-edge.
    Path(usize, usize),
    Socle(usize),
}

/// Monomial basis of the algebra with its multiplication table.
#[derive(Debug, Clone)]
pub struct PathAlgebra {
    pub basis: Vec<Elem>,
    index: HashMap<Elem, usize>,
    left: Vec<usize>,
    right: Vec<usize>,
    period: Vec<usize>,
    next: Vec<usize>,
}

impl PathAlgebra {
    pub fn new(g: &BrauerGraph) -> PathAlgebra {
        let mut basis = Vec::new();
        for e in 0..g.edge_count() {
            basis.push(Elem::Trivial(e));
            basis.push(Elem::Socle(e));
        }
        for h in 0..g.half_count() {
            if g.is_truncated(h) {
                continue;
            }
            let full = g.half_multiplicity(h) as usize * g.half_valency(h);
            for len in 1..full {
                basis.push(Elem::Path(h, len));
            }
        }
        basis.sort();
        let index = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let left = basis
            .iter()
            .map(|b| match *b {
                Elem::Trivial(e) | Elem::Socle(e) => e,
                Elem::Path(h, _) => g.edge_of(h),
            })
            .collect();
        let right = basis
            .iter()
            .map(|b| match *b {
                Elem::Trivial(e) | Elem::Socle(e) => e,
                Elem::Path(h, len) => g.edge_of(g.rotate(h, len as i64)),
            })
            .collect();
        let period = (0..g.half_count())
            .map(|h| g.half_multiplicity(h) as usize * g.half_valency(h))
            .collect();
        let next = (0..g.half_count()).map(|h| g.next(h)).collect();
        PathAlgebra {
            basis,
            index,
            left,
            right,
            period,
            next,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn idx(&self, b: Elem) -> Option<usize> {
        self.index.get(&b).copied()
    }

    /// Edge of the left idempotent.
    pub fn left(&self, b: usize) -> usize {
        self.left[b]
    }

    pub fn right(&self, b: usize) -> usize {
        self.right[b]
    }

    fn rotate(&self, mut h: usize, k: usize) -> usize {
        for _ in 0..k {
            h = self.next[h];
        }
        h
    }

    /// `a · b`, a basis element or zero.
    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        if self.right[a] != self.left[b] {
            return None;
        }
        match (self.basis[a], self.basis[b]) {
            (Elem::Trivial(_), _) => Some(b),
            (_, Elem::Trivial(_)) => Some(a),
            (Elem::Socle(_), _) | (_, Elem::Socle(_)) => None,
            (Elem::Path(h, l), Elem::Path(h2, l2)) => {
                if h2 != self.rotate(h, l) {
                    return None;
                }
                let full = self.period[h];
                match (l + l2).cmp(&full) {
                    std::cmp::Ordering::Less => self.idx(Elem::Path(h, l + l2)),
                    std::cmp::Ordering::Equal => self.idx(Elem::Socle(self.left[a])),
                    std::cmp::Ordering::Greater => None,
                }
            }
        }
    }

    /// Basis of `1_E Λ 1_F`.
    pub fn hom_basis(&self, e: usize, f: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&b| self.left[b] == e && self.right[b] == f)
            .collect()
    }

    pub fn projective_dim(&self, e: usize) -> usize {
        (0..self.dim()).filter(|&b| self.left[b] == e).count()
    }

    pub fn of_label(&self, g: &BrauerGraph, p: PathLabel) -> Option<usize> {
        match p {
            PathLabel::Socle { edge } => self.idx(Elem::Socle(edge)),
            PathLabel::Path { start, power, steps } => {
                let len = power as usize * g.half_valency(start) + steps;
                if len == 0 {
                    self.idx(Elem::Trivial(g.edge_of(start)))
                } else if len == self.period[start] {
                    self.idx(Elem::Socle(g.edge_of(start)))
                } else {
                    self.idx(Elem::Path(start, len))
                }
            }
        }
    }
}

/// `Σ_E 𝔪(s(e))val(s(e)) + 𝔪(s(ē))val(s(ē))`.
pub fn algebra_dim_formula(g: &BrauerGraph) -> usize {
    (0..g.half_count())
        .map(|h| g.half_multiplicity(h) as usize * g.half_valency(h))
        .sum()
}

/// `α_{h,σh}`, or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    fn inv(self) -> Letter {
        Letter {
            arrow: self.arrow,
            inverse: !self.inverse,
        }
    }
}

/// A word in arrows and inverse arrows, read left to right from a vertex of
/// colour `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StringWord {
    pub start: usize,
    pub letters: Vec<Letter>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("invalid string: {0}")]
    InvalidString(String),
}

impl StringWord {
    pub fn trivial(edge: usize) -> StringWord {
        StringWord {
            start: edge,
            letters: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Builds a word from letters; the start colour is read off the first letter.
    pub fn from_letters(g: &BrauerGraph, letters: Vec<Letter>, fallback: usize) -> StringWord {
        let start = match letters.first() {
            None => fallback,
            Some(l) if l.inverse => g.edge_of(g.next(l.arrow)),
            Some(l) => g.edge_of(l.arrow),
        };
        StringWord { start, letters }
    }

    pub fn inverse(&self, g: &BrauerGraph) -> StringWord {
        let letters: Vec<Letter> = self.letters.iter().rev().map(|l| l.inv()).collect();
        let end = *self.colors(g).last().expect("nonempty");
        StringWord { start: end, letters }
    }

    /// Vertex colours `c_0, …, c_L` of the coefficient quiver.
    pub fn colors(&self, g: &BrauerGraph) -> Vec<usize> {
        let mut out = vec![self.start];
        for l in &self.letters {
            out.push(if l.inverse {
                g.edge_of(l.arrow)
            } else {
                g.edge_of(g.next(l.arrow))
            });
        }
        out
    }

    pub fn check(&self, g: &BrauerGraph) -> Result<(), OracleError> {
        let bad = |m: String| Err(OracleError::InvalidString(m));
        let mut cur = self.start;
        let mut run = 0usize;
        for (k, l) in self.letters.iter().enumerate() {
            if g.is_truncated(l.arrow) {
                return bad(format!("letter {k} uses a truncated half-edge"));
            }
            let (from, to) = if l.inverse {
                (g.edge_of(g.next(l.arrow)), g.edge_of(l.arrow))
            } else {
                (g.edge_of(l.arrow), g.edge_of(g.next(l.arrow)))
            };
            if from != cur {
                return bad(format!("letter {k} does not compose"));
            }
            cur = to;
            if k == 0 {
                run = 1;
                continue;
            }
            let p = self.letters[k - 1];
            match (p.inverse, l.inverse) {
                (false, false) => {
                    if l.arrow != g.next(p.arrow) {
                        return bad(format!("letters {}..{k} form a zero relation", k - 1));
                    }
                    run += 1;
                }
                (true, true) => {
                    if p.arrow != g.next(l.arrow) {
                        return bad(format!("letters {}..{k} form a zero relation", k - 1));
                    }
                    run += 1;
                }
                _ => {
                    if p.arrow == l.arrow {
                        return bad(format!("letter {k} cancels its predecessor"));
                    }
                    run = 1;
                }
            }
            let full = g.half_multiplicity(l.arrow) as usize * g.half_valency(l.arrow);
            if run >= full {
                return bad(format!("run ending at letter {k} reaches the socle"));
            }
        }
        Ok(())
    }

    /// The smaller of the word and its inverse.
    pub fn canonical(&self, g: &BrauerGraph) -> StringWord {
        let inv = self.inverse(g);
        if inv < *self {
            inv
        } else {
            self.clone()
        }
    }

    pub fn to_text(&self, g: &BrauerGraph) -> String {
        if self.letters.is_empty() {
            return format!("1_{}", g.edge_name(self.start));
        }
        self.letters
            .iter()
            .map(|l| {
                let base = format!("({}|{})", g.half_name(l.arrow), g.half_name(g.next(l.arrow)));
                if l.inverse {
                    format!("{base}^-1")
                } else {
                    base
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Heights of the vertices: direct letters go down one step.
    pub fn heights(&self) -> Vec<i64> {
        let mut h = vec![0i64];
        for l in &self.letters {
            let last = *h.last().expect("nonempty");
            h.push(if l.inverse { last + 1 } else { last - 1 });
        }
        h
    }

    /// Loewy-style text: one row per vertex, indented by depth.
    pub fn loewy_text(&self, g: &BrauerGraph) -> String {
        let hs = self.heights();
        let top = *hs.iter().max().expect("nonempty");
        let mut s = String::new();
        for (c, h) in self.colors(g).iter().zip(&hs) {
            let _ = writeln!(s, "{}{}", "  ".repeat((top - h) as usize), g.edge_name(*c));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum HomTarget {
    String(StringWord),
    Projective(usize),
    Zero,
}

/// Direct word of the path `(x|y)`, possibly empty.
fn path_word(g: &BrauerGraph, x: usize, y: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    let mut h = x;
    while h != y {
        out.push(Letter {
            arrow: h,
            inverse: false,
        });
        h = g.next(h);
    }
    out
}

/// `η_h` as a direct word.
fn eta(g: &BrauerGraph, h: usize) -> Vec<Letter> {
    if g.is_truncated(h) {
        return Vec::new();
    }
    let full = g.half_multiplicity(h) as usize * g.half_valency(h);
    let mut out = Vec::new();
    let mut x = h;
    for _ in 0..full - 1 {
        out.push(Letter {
            arrow: x,
            inverse: false,
        });
        x = g.next(x);
    }
    out
}

fn inv(w: Vec<Letter>) -> Vec<Letter> {
    w.into_iter().rev().map(|l| l.inv()).collect()
}

/// Strings of `H⁰(T_W)` and `H⁻¹(T_W)`.
pub fn strings_of_walk(g: &BrauerGraph, w: &SignedWalk) -> (HomTarget, HomTarget) {
    let x = w.forward(g);
    if x.len() == 1 {
        let e = g.edge_of(x.at(1));
        return match x.sign(1) {
            Sign::Plus => (HomTarget::Projective(e), HomTarget::Zero),
            Sign::Minus => (HomTarget::Zero, HomTarget::Projective(e)),
        };
    }
    let m = m_word(g, &x);
    let n = n_word(g, &x);
    let fallback_m = g.edge_of(first_with(&x, Sign::Plus));
    let fallback_n = g.edge_of(first_with(&x, Sign::Minus));
    (
        HomTarget::String(StringWord::from_letters(g, m, fallback_m)),
        HomTarget::String(StringWord::from_letters(g, n, fallback_n)),
    )
}

fn first_with(x: &Oriented, s: Sign) -> usize {
    (1..=x.len()).find(|&i| x.sign(i) == s).map(|i| x.at(i)).expect("both signs occur")
}

fn m_word(g: &BrauerGraph, x: &Oriented) -> Vec<Letter> {
    let l = x.len();
    let bar = |h: usize| g.partner(h);
    let mut out = Vec::new();
    for a in (1..=l).filter(|&a| x.sign(a) == Sign::Plus) {
        if a == 1 {
            out.extend(inv(eta(g, x.at(1))));
        } else if a == 2 && x.sign(1) == Sign::Minus {
            out.extend(inv(path_word(g, x.at(2), g.prev(bar(x.at(1))))));
        } else {
            out.extend(inv(path_word(g, x.at(a), bar(x.at(a - 1)))));
        }
        if a == l {
            out.extend(eta(g, bar(x.at(l))));
        } else if a + 1 == l {
            out.extend(path_word(g, bar(x.at(a)), g.prev(x.at(l))));
        } else {
            out.extend(path_word(g, bar(x.at(a)), x.at(a + 1)));
        }
    }
    out
}

fn n_word(g: &BrauerGraph, x: &Oriented) -> Vec<Letter> {
    let l = x.len();
    let bar = |h: usize| g.partner(h);
    let mut out = Vec::new();
    match x.sign(1) {
        Sign::Plus => out.extend(path_word(g, g.next(bar(x.at(1))), x.at(2))),
        Sign::Minus => out.extend(eta(g, g.next(x.at(1)))),
    }
    for a in (2..l).filter(|&a| x.sign(a) == Sign::Plus) {
        out.extend(inv(path_word(g, x.at(a), bar(x.at(a - 1)))));
        out.extend(path_word(g, bar(x.at(a)), x.at(a + 1)));
    }
    match x.sign(l) {
        Sign::Minus => out.extend(inv(eta(g, g.next(bar(x.at(l)))))),
        Sign::Plus => out.extend(inv(path_word(g, g.next(x.at(l)), bar(x.at(l - 1))))),
    }
    out
}

/// `P_E / soc P_E`, as a source string.
pub fn projective_top_string(g: &BrauerGraph, e: usize) -> StringWord {
    let (h, hb) = g.edge_halves(e);
    let mut letters = inv(eta(g, h));
    letters.extend(eta(g, hb));
    StringWord::from_letters(g, letters, e)
}

/// `rad P_E`, as a target string.
pub fn projective_radical_string(g: &BrauerGraph, e: usize) -> StringWord {
    let (h, hb) = g.edge_halves(e);
    let mut letters = eta(g, g.next(h));
    letters.extend(inv(eta(g, g.next(hb))));
    let mut w = StringWord::from_letters(g, letters, e);
    if w.letters.is_empty() {
        w.start = e;
    }
    w
}

fn one_edge_local(g: &BrauerGraph) -> bool {
    g.edge_count() == 1 && (0..g.half_count()).all(|h| g.is_truncated(h))
}

/// Number of factor substrings of `src` that are substrings of `dst` as submodules.
pub fn cb_count(g: &BrauerGraph, src: &StringWord, dst: &StringWord) -> usize {
    let (hs, cs) = (src.heights(), src.colors(g));
    let (ht, ct) = (dst.heights(), dst.colors(g));
    let factor = |a: usize, b: usize| {
        (a == 0 || hs[a - 1] < hs[a]) && (b + 1 == hs.len() || hs[b + 1] < hs[b])
    };
    let sub = |c: usize, d: usize| {
        (c == 0 || ht[c - 1] > ht[c]) && (d + 1 == ht.len() || ht[d + 1] > ht[d])
    };
    let dst_inv: Vec<Letter> = inv(dst.letters.clone());
    let m = dst.letters.len();
    let mut count = 0;
    for a in 0..hs.len() {
        for b in a..hs.len() {
            if !factor(a, b) {
                continue;
            }
            let piece = &src.letters[a..b];
            for c in 0..ht.len() {
                let d = c + (b - a);
                if d >= ht.len() || !sub(c, d) {
                    continue;
                }
                if a == b {
                    if cs[a] == ct[c] {
                        count += 1;
                    }
                    continue;
                }
                if &dst.letters[c..d] == piece {
                    count += 1;
                }
                // the same interval of `dst` read backwards
                if dst_inv[m - d..m - c] == *piece {
                    count += 1;
                }
            }
        }
    }
    count
}

pub fn hom_dim(g: &BrauerGraph, alg: &PathAlgebra, x: &HomTarget, y: &HomTarget) -> usize {
    match (x, y) {
        (HomTarget::Zero, _) | (_, HomTarget::Zero) => 0,
        (HomTarget::Projective(e), HomTarget::Projective(f)) => alg.hom_basis(*f, *e).len(),
        (HomTarget::Projective(e), HomTarget::String(w)) => {
            if one_edge_local(g) {
                return w.colors(g).iter().filter(|&&c| c == *e).count();
            }
            cb_count(g, &projective_top_string(g, *e), w)
        }
        (HomTarget::String(w), HomTarget::Projective(e)) => {
            cb_count(g, w, &projective_radical_string(g, *e))
        }
        (HomTarget::String(v), HomTarget::String(w)) => cb_count(g, v, w),
    }
}

/// `T_W ⊕ T_W'` is pretilting, tested through `Hom(M, N)` of the string modules.
pub fn pretilting_oracle(g: &BrauerGraph, alg: &PathAlgebra, w: &SignedWalk, w2: &SignedWalk) -> bool {
    let (m1, n1) = strings_of_walk(g, w);
    let (m2, n2) = strings_of_walk(g, w2);
    [(&m1, &n2), (&m2, &n1), (&m1, &n1), (&m2, &n2)]
        .iter()
        .all(|(x, y)| hom_dim(g, alg, x, y) == 0)
}

/// `Hom(T_source, T_target[1]) = 0` read off `Hom(M_target, N_source)`.
pub fn shift_hom_vanishes(g: &BrauerGraph, alg: &PathAlgebra, source: &SignedWalk, target: &SignedWalk) -> bool {
    let (m, _) = strings_of_walk(g, target);
    let (_, n) = strings_of_walk(g, source);
    hom_dim(g, alg, &m, &n) == 0
}

/// Minimal projective presentation of a string module.
pub fn min_proj_presentation(g: &BrauerGraph, s: &StringWord) -> Result<TwoTermComplex, OracleError> {
    s.check(g)?;
    let hs = s.heights();
    let cs = s.colors(g);
    let n = hs.len();
    let lower = |i: usize, j: Option<usize>| j.map_or(true, |j| hs[j] < hs[i]);
    let peaks: Vec<usize> = (0..n)
        .filter(|&i| lower(i, i.checked_sub(1)) && lower(i, (i + 1 < n).then_some(i + 1)))
        .collect();
    let label = |start: usize, len: usize| {
        let full = g.half_multiplicity(start) as usize * g.half_valency(start);
        if len == full {
            PathLabel::Socle {
                edge: g.edge_of(start),
            }
        } else {
            let val = g.half_valency(start);
            PathLabel::Path {
                start,
                power: (len / val) as u32,
                steps: len % val,
            }
        }
    };
    // arm of a peak on one side: its first half-edge and length
    let arm = |p: usize, right: bool| -> (Option<usize>, usize) {
        let mut len = 0;
        let mut first = None;
        let mut k = p;
        loop {
            let (letter, nk) = if right {
                if k + 1 >= n {
                    break;
                }
                (s.letters[k], k + 1)
            } else {
                if k == 0 {
                    break;
                }
                (s.letters[k - 1], k - 1)
            };
            let down = if right { !letter.inverse } else { letter.inverse };
            if !down {
                break;
            }
            if first.is_none() {
                first = Some(letter.arrow);
            }
            len += 1;
            k = nk;
        }
        (first, len)
    };
    let mut t = TwoTermComplex::new(peaks.iter().map(|&p| cs[p]).collect(), Vec::new());
    let mut entries: Vec<(usize, usize, PathLabel)> = Vec::new();
    let add_gen = |t: &mut TwoTermComplex, color: usize| {
        t.degree_minus1.push(color);
        t.degree_minus1.len() - 1
    };
    if one_edge_local(g) {
        let e = cs[0];
        let c = add_gen(&mut t, e);
        entries.push((0, c, PathLabel::Socle { edge: e }));
    } else {
        for (r, &p) in peaks.iter().enumerate() {
            let (lh, ll) = arm(p, false);
            let (rh, rl) = arm(p, true);
            let (e1, e2) = g.edge_halves(cs[p]);
            let other = |h: Option<usize>| {
                h.map(|h| if h == e1 { e2 } else { e1 })
            };
            let lh = lh.or(other(rh));
            let rh = rh.or(other(lh));
            let sides: Vec<(Option<usize>, usize, bool)> = if lh.is_none() && rh.is_none() {
                vec![(Some(e1), 0, false), (Some(e2), 0, true)]
            } else {
                vec![(lh, ll, false), (rh, rl, true)]
            };
            for (h, len, right) in sides {
                let h = h.expect("half chosen");
                let reaches_end = if right { p + len + 1 == n } else { p == len };
                if !reaches_end {
                    continue;
                }
                if g.is_truncated(h) {
                    continue;
                }
                let full = g.half_multiplicity(h) as usize * g.half_valency(h);
                if len + 1 == full {
                    continue;
                }
                let color = g.edge_of(g.rotate(h, (len + 1) as i64));
                let c = add_gen(&mut t, color);
                entries.push((r, c, label(h, len + 1)));
            }
            if let Some(&q) = peaks.get(r + 1) {
                let v = (p..=q).min_by_key(|&i| hs[i]).expect("nonempty");
                let c = add_gen(&mut t, cs[v]);
                let (a, la) = arm(p, true);
                let (b, lb) = arm(q, false);
                entries.push((r, c, label(a.expect("descends"), la)));
                entries.push((r + 1, c, label(b.expect("descends"), lb)));
            }
        }
    }
    t.differential = vec![vec![None; t.degree_minus1.len()]; t.degree0.len()];
    for (r, c, p) in entries {
        t.differential[r][c] = Some(p);
    }
    Ok(t)
}

/// A module with a monomial basis: `act[b][x]` is `x · b`.
#[derive(Debug, Clone)]
pub struct ExplicitModule {
    pub colors: Vec<usize>,
    pub act: Vec<Vec<Option<usize>>>,
}

impl ExplicitModule {
    pub fn dim(&self) -> usize {
        self.colors.len()
    }

    pub fn of_string(g: &BrauerGraph, alg: &PathAlgebra, w: &StringWord) -> ExplicitModule {
        let colors = w.colors(g);
        let n = colors.len();
        let arrow_step = |i: usize, h: usize| -> Option<usize> {
            if i + 1 < n {
                let l = w.letters[i];
                if !l.inverse && l.arrow == h {
                    return Some(i + 1);
                }
            }
            if i > 0 {
                let l = w.letters[i - 1];
                if l.inverse && l.arrow == h {
                    return Some(i - 1);
                }
            }
            None
        };
        let act = alg
            .basis
            .iter()
            .map(|b| {
                (0..n)
                    .map(|i| match *b {
                        Elem::Trivial(e) => (colors[i] == e).then_some(i),
                        Elem::Socle(_) => None,
                        Elem::Path(h, len) => {
                            let mut cur = Some(i);
                            let mut x = h;
                            for _ in 0..len {
                                cur = cur.and_then(|c| arrow_step(c, x));
                                x = g.next(x);
                            }
                            cur
                        }
                    })
                    .collect()
            })
            .collect();
        ExplicitModule { colors, act }
    }

    pub fn projective(alg: &PathAlgebra, e: usize) -> ExplicitModule {
        let elems: Vec<usize> = (0..alg.dim()).filter(|&b| alg.left(b) == e).collect();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let colors = elems.iter().map(|&b| alg.right(b)).collect();
        let act = (0..alg.dim())
            .map(|b| {
                elems
                    .iter()
                    .map(|&x| alg.mul(x, b).map(|y| pos[&y]))
                    .collect()
            })
            .collect();
        ExplicitModule { colors, act }
    }

    pub fn of_target(g: &BrauerGraph, alg: &PathAlgebra, t: &HomTarget) -> ExplicitModule {
        match t {
            HomTarget::String(w) => ExplicitModule::of_string(g, alg, w),
            HomTarget::Projective(e) => ExplicitModule::projective(alg, *e),
            HomTarget::Zero => ExplicitModule {
                colors: Vec::new(),
                act: vec![Vec::new(); alg.dim()],
            },
        }
    }
}

/// Rank over the rationals of sparse integer rows.
pub fn rational_rank(rows: &[Vec<(usize, i64)>]) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    for row in rows {
        let mut r: BTreeMap<usize, BigRational> = BTreeMap::new();
        for &(c, v) in row {
            let e = r.entry(c).or_insert_with(BigRational::zero);
            *e += BigRational::from_integer(BigInt::from(v));
        }
        r.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, lv)) = r.iter().next() else { break };
            let Some(p) = pivots.get(&lead) else { break };
            let factor = lv.clone() / p[&lead].clone();
            for (&c, pv) in p {
                let e = r.entry(c).or_insert_with(BigRational::zero);
                *e -= factor.clone() * pv;
            }
            r.retain(|_, v| !v.is_zero());
        }
        if let Some((&lead, _)) = r.iter().next() {
            let lv = r[&lead].clone();
            let normalized = r.into_iter().map(|(c, v)| (c, v / lv.clone())).collect();
            pivots.insert(lead, normalized);
        }
    }
    debug_assert!(pivots.values().all(|p| p.values().next().map_or(false, |v| v.is_one())));
    pivots.len()
}

/// `dim Hom_Λ(M, N)` from the intertwining equations.
pub fn linear_hom_dim(alg: &PathAlgebra, m: &ExplicitModule, n: &ExplicitModule) -> usize {
    let mut var = HashMap::new();
    for x in 0..m.dim() {
        for y in 0..n.dim() {
            if m.colors[x] == n.colors[y] {
                let k = var.len();
                var.insert((y, x), k);
            }
        }
    }
    let mut rows = Vec::new();
    for b in 0..alg.dim() {
        if matches!(alg.basis[b], Elem::Trivial(_)) {
            continue;
        }
        for x in 0..m.dim() {
            let mut eqs: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
            if let Some(xb) = m.act[b][x] {
                for z in 0..n.dim() {
                    if let Some(&k) = var.get(&(z, xb)) {
                        eqs.entry(z).or_default().push((k, 1));
                    }
                }
            }
            for y in 0..n.dim() {
                if let (Some(z), Some(&k)) = (n.act[b][y], var.get(&(y, x))) {
                    eqs.entry(z).or_default().push((k, -1));
                }
            }
            rows.extend(eqs.into_values());
        }
    }
    var.len() - rational_rank(&rows)
}

/// `dim Hom_K(T', T[1])` in the homotopy category.
pub fn homotopy_hom_dim(g: &BrauerGraph, alg: &PathAlgebra, source: &TwoTermComplex, target: &TwoTermComplex) -> usize {
    let (t0, t1) = (&target.degree0, &target.degree_minus1);
    let (s0, s1) = (&source.degree0, &source.degree_minus1);
    let mut coord = HashMap::new();
    for a in 0..t0.len() {
        for c in 0..s1.len() {
            for b in alg.hom_basis(t0[a], s1[c]) {
                let k = coord.len();
                coord.insert((a, c, b), k);
            }
        }
    }
    let elem = |p: Option<PathLabel>| p.and_then(|p| alg.of_label(g, p));
    let mut rows = Vec::new();
    for b in 0..t1.len() {
        for c in 0..s1.len() {
            for x in alg.hom_basis(t1[b], s1[c]) {
                let mut row = Vec::new();
                for a in 0..t0.len() {
                    if let Some(d) = elem(target.differential[a][b]) {
                        if let Some(y) = alg.mul(d, x) {
                            row.push((coord[&(a, c, y)], 1));
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    for a in 0..t0.len() {
        for c2 in 0..s0.len() {
            for y in alg.hom_basis(t0[a], s0[c2]) {
                let mut row = Vec::new();
                for c in 0..s1.len() {
                    if let Some(d) = elem(source.differential[c2][c]) {
                        if let Some(z) = alg.mul(y, d) {
                            row.push((coord[&(a, c, z)], 1));
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    coord.len() - rational_rank(&rows)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CrosscheckReport {
    pub walks: usize,
    pub pairs: usize,
    pub disagreements: Vec<String>,
}

/// Compares admissibility, compatibility and Hom-vanishing with the string-module oracle
/// over every signed walk of length at most `cap`.
pub fn crosscheck_bijection(g: &BrauerGraph, cap: usize) -> CrosscheckReport {
    let alg = PathAlgebra::new(g);
    let (ws, _) = enumerate_signed_walks(g, cap);
    let strings: Vec<_> = ws.iter().map(|w| strings_of_walk(g, w)).collect();
    let vanish = |a: usize, b: usize| hom_dim(g, &alg, &strings[b].0, &strings[a].1) == 0;
    let mut report = CrosscheckReport {
        walks: ws.len(),
        ..Default::default()
    };
    let adm: Vec<bool> = ws.iter().map(|w| is_admissible(g, w)).collect();
    for a in 0..ws.len() {
        for b in a..ws.len() {
            report.pairs += 1;
            let (x, y) = (&ws[a], &ws[b]);
            let oracle = vanish(a, b) && vanish(b, a);
            let comb = if a == b { adm[a] } else { check_pair(g, x, y).compatible() };
            if oracle != comb {
                report.disagreements.push(format!(
                    "{{{}}} and {{{}}}: combinatorics says {}, oracle says {}",
                    x.to_text(g),
                    y.to_text(g),
                    comb,
                    oracle
                ));
            }
            for (s, t, k) in [(a, b, (x, y)), (b, a, (y, x))] {
                if a == b && s != a {
                    continue;
                }
                let c = hom_vanishes_into_shift(g, k.0, k.1).vanishes;
                if c != vanish(s, t) {
                    report.disagreements.push(format!(
                        "Hom(T[{}], T[{}][1]): combinatorics says vanishing={}, oracle says {}",
                        k.0.to_text(g),
                        k.1.to_text(g),
                        c,
                        !c
                    ));
                }
            }
        }
    }
    report
}

/// All valid strings with at most `max_len` letters, canonical representatives only.
pub fn enumerate_strings(g: &BrauerGraph, max_len: usize) -> Vec<StringWord> {
    let mut out = std::collections::BTreeSet::new();
    let mut stack: Vec<StringWord> = (0..g.edge_count()).map(StringWord::trivial).collect();
    while let Some(w) = stack.pop() {
        if w.check(g).is_err() {
            continue;
        }
        out.insert(w.canonical(g));
        if w.len() == max_len {
            continue;
        }
        let end = *w.colors(g).last().expect("nonempty");
        for h in 0..g.half_count() {
            for inverse in [false, true] {
                let from = if inverse { g.edge_of(g.next(h)) } else { g.edge_of(h) };
                if from != end {
                    continue;
                }
                let mut v = w.clone();
                v.letters.push(Letter { arrow: h, inverse });
                stack.push(v);
            }
        }
    }
    out.into_iter().collect()
}

/// Homotopy-category version of `Hom(T_source, T_target[1]) = 0` for walks.
pub fn homotopy_vanishes(g: &BrauerGraph, alg: &PathAlgebra, source: &SignedWalk, target: &SignedWalk) -> bool {
    homotopy_hom_dim(g, alg, &complex_of_walk(g, source), &complex_of_walk(g, target)) == 0
}
