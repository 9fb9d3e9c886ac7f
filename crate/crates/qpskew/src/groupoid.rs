//! Words in the fundamental groupoid of the dual graph of a triangulation,
//! the orbifold quotient by `e_P² = 1`, and the dictionary between curves on
//! the double cover and orbifold curves on the base.
//!
//! The dual graph has a node per triangle and an edge per internal arc; the
//! radius of a self-folded triangle becomes a loop `e<P>` at that triangle,
//! of order two in the orbifold groupoid. Words are written in traversal
//! order, one letter per edge crossed, with `'` for a traversal against the
//! edge's orientation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::surface::{double_cover, DoubleCover, SurfaceError, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("letter {0} does not start where the word stands")]
    InconsistentEndpoints(String),
    #[error("word is not a loop")]
    NotALoop,
    #[error("cyclic word is not conjugate to its inverse")]
    NotSymmetric,
    #[error("cyclic word is not primitive")]
    NotPrimitive,
    #[error("unknown letter {0}")]
    UnknownLetter(String),
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("not a word between self-folded triangles: {0}")]
    NotTagged(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

impl GroupoidError {
    pub fn name(&self) -> &'static str {
        match self {
            GroupoidError::InconsistentEndpoints(_) => "InconsistentEndpoints",
            GroupoidError::NotALoop => "NotALoop",
            GroupoidError::NotSymmetric => "NotSymmetric",
            GroupoidError::NotPrimitive => "NotPrimitive",
            GroupoidError::UnknownLetter(_) => "UnknownLetter",
            GroupoidError::UnknownNode(_) => "UnknownNode",
            GroupoidError::NotTagged(_) => "NotTagged",
            GroupoidError::Surface(e) => e.name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    /// A loop of order two around a puncture.
    pub orbifold: bool,
}

/// One traversal of an edge. Orbifold loops are always stored with `inv = false`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub edge: usize,
    pub inv: bool,
}

/// A reduced word together with its endpoints (needed for the empty word).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupoidWord {
    pub start: usize,
    pub end: usize,
    pub letters: Vec<Letter>,
}

impl GroupoidWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_loop(&self) -> bool {
        self.start == self.end
    }
}

/// A conjugacy class of loops: cyclically reduced, least rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord {
    pub node: usize,
    pub letters: Vec<Letter>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
    /// Whether each node is a self-folded triangle.
    pub self_folded: Vec<bool>,
}

/// The dual graph of a valid triangulation.
pub fn dual_graph(t: &Triangulation) -> Result<DualGraph, GroupoidError> {
    t.validate()?;
    Ok(build_graph(t))
}

fn build_graph(t: &Triangulation) -> DualGraph {
    let nodes: Vec<String> = t.triangles.iter().map(|tri| tri.id.clone()).collect();
    let self_folded = (0..nodes.len()).map(|i| t.is_self_folded(i)).collect();
    let mut edges = Vec::new();
    for a in t.arcs() {
        let slots = t.slots(&a);
        let (s, d) = (slots[0].0, slots.get(1).map_or(slots[0].0, |x| x.0));
        match t.self_folded.iter().find(|sf| sf.radius == a) {
            Some(sf) => edges.push(Edge { name: format!("e{}", sf.puncture), src: s, tgt: s, orbifold: true }),
            None => edges.push(Edge { name: a.clone(), src: s, tgt: d, orbifold: false }),
        }
    }
    DualGraph { nodes, edges, self_folded }
}

impl DualGraph {
    pub fn node(&self, name: &str) -> Result<usize, GroupoidError> {
        self.nodes.iter().position(|n| n == name).ok_or_else(|| GroupoidError::UnknownNode(name.into()))
    }

    pub fn edge_named(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn orbifold_loops(&self) -> usize {
        self.edges.iter().filter(|e| e.orbifold).count()
    }

    /// The orbifold loop at a self-folded node.
    pub fn loop_at(&self, node: usize) -> Option<usize> {
        self.edges.iter().position(|e| e.orbifold && e.src == node)
    }

    pub fn letter(&self, edge: usize, inv: bool) -> Letter {
        Letter { edge, inv: inv && !self.edges[edge].orbifold }
    }

    pub fn src(&self, x: Letter) -> usize {
        let e = &self.edges[x.edge];
        if x.inv {
            e.tgt
        } else {
            e.src
        }
    }

    pub fn tgt(&self, x: Letter) -> usize {
        let e = &self.edges[x.edge];
        if x.inv {
            e.src
        } else {
            e.tgt
        }
    }

    pub fn inverse_letter(&self, x: Letter) -> Letter {
        self.letter(x.edge, !x.inv)
    }

    pub fn is_orbifold(&self, x: Letter) -> bool {
        self.edges[x.edge].orbifold
    }

    /// `x y` reduces to the empty word.
    fn cancels(&self, x: Letter, y: Letter) -> bool {
        x.edge == y.edge && (self.edges[x.edge].orbifold || x.inv != y.inv)
    }

    /// Letters leaving `node`, each orbifold loop once.
    pub fn out_letters(&self, node: usize) -> Vec<Letter> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.src == node {
                out.push(self.letter(i, false));
            }
            if e.tgt == node && !e.orbifold {
                out.push(self.letter(i, true));
            }
        }
        out
    }

    pub fn letter_name(&self, x: Letter) -> String {
        let name = &self.edges[x.edge].name;
        if !x.inv {
            name.clone()
        } else if name.ends_with('\'') || self.edge_named(&format!("{name}'")).is_some() {
            format!("{name}^-1")
        } else {
            format!("{name}'")
        }
    }

    fn parse_letter(&self, tok: &str) -> Result<Letter, GroupoidError> {
        if let Some(e) = self.edge_named(tok) {
            return Ok(self.letter(e, false));
        }
        let base = tok.strip_suffix("^-1").or_else(|| tok.strip_suffix('\''));
        match base.and_then(|b| self.edge_named(b)) {
            Some(e) => Ok(self.letter(e, true)),
            None => Err(GroupoidError::UnknownLetter(tok.into())),
        }
    }

    /// Parses letters separated by spaces or commas.
    pub fn parse_letters(&self, text: &str) -> Result<Vec<Letter>, GroupoidError> {
        text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(|t| self.parse_letter(t)).collect()
    }

    /// Parses and reduces a word starting at the named node.
    pub fn word(&self, start: &str, text: &str) -> Result<GroupoidWord, GroupoidError> {
        let s = self.node(start)?;
        self.reduce(s, &self.parse_letters(text)?)
    }

    /// Free reduction together with `e_P e_P → 1` and `e_P⁻¹ → e_P`.
    ///
    /// A single left-to-right pass with a stack computes the normal form; the
    /// rewriting system is length-decreasing and its critical pairs resolve,
    /// so any order of reductions reaches the same word.
    pub fn reduce(&self, start: usize, letters: &[Letter]) -> Result<GroupoidWord, GroupoidError> {
        let mut cur = start;
        let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
        for &x in letters {
            let x = self.letter(x.edge, x.inv);
            if self.src(x) != cur {
                return Err(GroupoidError::InconsistentEndpoints(self.letter_name(x)));
            }
            cur = self.tgt(x);
            match stack.last() {
                Some(&y) if self.cancels(y, x) => {
                    stack.pop();
                }
                _ => stack.push(x),
            }
        }
        Ok(GroupoidWord { start, end: cur, letters: stack })
    }

    pub fn identity(&self, node: usize) -> GroupoidWord {
        GroupoidWord { start: node, end: node, letters: Vec::new() }
    }

    pub fn inverse(&self, w: &GroupoidWord) -> GroupoidWord {
        GroupoidWord { start: w.end, end: w.start, letters: w.letters.iter().rev().map(|&x| self.inverse_letter(x)).collect() }
    }

    /// `a` followed by `b`.
    pub fn compose(&self, a: &GroupoidWord, b: &GroupoidWord) -> Result<GroupoidWord, GroupoidError> {
        if a.end != b.start {
            let first = b.letters.first().map(|&x| self.letter_name(x)).unwrap_or_default();
            return Err(GroupoidError::InconsistentEndpoints(first));
        }
        let all: Vec<Letter> = a.letters.iter().chain(&b.letters).copied().collect();
        self.reduce(a.start, &all)
    }

    /// Number of arcs of the double cover crossed by a lift of the word: a
    /// passage `l e_P l'` around a puncture counts once.
    pub fn crossings(&self, w: &GroupoidWord) -> usize {
        let n = w.letters.len();
        let inner = (1..n.saturating_sub(1)).filter(|&i| self.is_orbifold(w.letters[i])).count();
        n - 2 * inner
    }

    pub fn show(&self, w: &GroupoidWord) -> String {
        if w.letters.is_empty() {
            return format!("1@{}", self.nodes[w.start]);
        }
        w.letters.iter().map(|&x| self.letter_name(x)).collect::<Vec<_>>().join(" ")
    }

    /// The conjugacy class of a loop.
    pub fn cyclic_normal_form(&self, w: &GroupoidWord) -> Result<CyclicWord, GroupoidError> {
        if !w.is_loop() {
            return Err(GroupoidError::NotALoop);
        }
        let reduced = self.reduce(w.start, &w.letters)?;
        let mut l = reduced.letters;
        let mut node = reduced.start;
        let (mut i, mut j) = (0, l.len());
        while j - i >= 2 && self.cancels(l[j - 1], l[i]) {
            node = self.tgt(l[i]);
            i += 1;
            j -= 1;
        }
        l = l[i..j].to_vec();
        Ok(self.least_rotation(node, l))
    }

    fn least_rotation(&self, node: usize, l: Vec<Letter>) -> CyclicWord {
        if l.is_empty() {
            return CyclicWord { node, letters: l };
        }
        let n = l.len();
        let best = (0..n).map(|k| (0..n).map(|i| l[(k + i) % n]).collect::<Vec<_>>()).min().expect("nonempty");
        CyclicWord { node: self.src(best[0]), letters: best }
    }

    pub fn cyclic_inverse(&self, c: &CyclicWord) -> CyclicWord {
        let l: Vec<Letter> = c.letters.iter().rev().map(|&x| self.inverse_letter(x)).collect();
        self.least_rotation(c.node, l)
    }

    /// `[γ] = [γ⁻¹]`.
    pub fn is_symmetric(&self, c: &CyclicWord) -> bool {
        self.cyclic_inverse(c) == *c
    }

    /// Not a proper power and of infinite order. In a free product of
    /// infinite cyclic and order-two groups the only cyclically reduced
    /// torsion elements are the order-two generators themselves.
    pub fn is_primitive(&self, c: &CyclicWord) -> bool {
        let n = c.letters.len();
        if n == 0 || (n == 1 && self.is_orbifold(c.letters[0])) {
            return false;
        }
        (1..n).filter(|d| n % d == 0).all(|d| (0..n).any(|i| c.letters[i] != c.letters[(i + d) % n]))
    }

    /// If `c = [α²]`, the class `[α]`.
    pub fn square_root(&self, c: &CyclicWord) -> Option<CyclicWord> {
        let n = c.letters.len();
        if n == 0 || n % 2 == 1 || c.letters[..n / 2] != c.letters[n / 2..] {
            return None;
        }
        Some(self.least_rotation(c.node, c.letters[..n / 2].to_vec()))
    }

    pub fn cyclic_crossings(&self, c: &CyclicWord) -> usize {
        let n = c.letters.len();
        if n <= 1 {
            return n;
        }
        n - 2 * c.letters.iter().filter(|&&x| self.is_orbifold(x)).count()
    }

    pub fn show_cyclic(&self, c: &CyclicWord) -> String {
        format!("[{}]", c.letters.iter().map(|&x| self.letter_name(x)).collect::<Vec<_>>().join(" "))
    }

    /// The loop at the class's base node.
    pub fn cyclic_as_word(&self, c: &CyclicWord) -> GroupoidWord {
        GroupoidWord { start: c.node, end: c.node, letters: c.letters.clone() }
    }

    /// Reduced words of positive length with at most `max_letters` letters
    /// leaving `start`.
    fn walks(&self, start: usize, max_letters: usize, visit: &mut dyn FnMut(&GroupoidWord)) {
        let mut word = self.identity(start);
        self.walks_from(&mut word, max_letters, visit);
    }

    fn walks_from(&self, word: &mut GroupoidWord, max_letters: usize, visit: &mut dyn FnMut(&GroupoidWord)) {
        if !word.letters.is_empty() {
            visit(word);
        }
        if word.letters.len() == max_letters {
            return;
        }
        for x in self.out_letters(word.end) {
            if word.letters.last().is_some_and(|&y| self.cancels(y, x)) {
                continue;
            }
            let end = word.end;
            word.letters.push(x);
            word.end = self.tgt(x);
            self.walks_from(word, max_letters, visit);
            word.letters.pop();
            word.end = end;
        }
    }
}

/// The result of lifting a base word to the cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lift {
    Word(GroupoidWord),
    /// The word (a loop) goes around punctures an odd number of times, or it
    /// starts or ends inside a self-folded triangle.
    NoLift,
}

/// The covering of dual graphs `Γ̃ → Γ` induced by the double cover.
#[derive(Debug, Clone)]
pub struct Covering {
    pub base: DualGraph,
    pub cover: DualGraph,
    /// Cover node ↦ base node.
    pub node_projection: Vec<usize>,
    /// Cover node ↦ is on the `+` sheet.
    pub sheet: Vec<bool>,
    pub node_sigma: Vec<usize>,
    /// Image under `σ` of the forward traversal of each cover edge.
    edge_sigma: Vec<Letter>,
    /// Image in the base of the forward traversal of each cover edge.
    edge_projection: Vec<Vec<Letter>>,
    /// `(cover node, base letter)` ↦ the cover letter over it.
    lift_table: BTreeMap<(usize, Letter), Letter>,
    /// Self-folded base node ↦ the cover edge crossing the puncture.
    puncture_edge: BTreeMap<usize, usize>,
}

impl Covering {
    pub fn new(t: &Triangulation) -> Result<Self, GroupoidError> {
        let dc = double_cover(t)?;
        Ok(Self::from_cover(t, &dc))
    }

    pub fn from_cover(t: &Triangulation, dc: &DoubleCover) -> Self {
        let base = build_graph(t);
        let cover = build_graph(&dc.triangulation);
        let node_projection: Vec<usize> =
            cover.nodes.iter().map(|n| base.node(&dc.sheets[n].0).expect("sheet of a base triangle")).collect();
        let sheet: Vec<bool> = cover.nodes.iter().map(|n| dc.sheets[n].1).collect();
        let node_sigma: Vec<usize> = (0..cover.nodes.len())
            .map(|i| (0..cover.nodes.len()).find(|&j| node_projection[j] == node_projection[i] && sheet[j] != sheet[i]).expect("two sheets"))
            .collect();
        let mut edge_sigma = Vec::new();
        let mut edge_projection = Vec::new();
        let mut puncture_edge = BTreeMap::new();
        for (i, e) in cover.edges.iter().enumerate() {
            let image = cover.edge_named(&dc.sigma[&e.name]).expect("σ permutes arcs");
            let forward = cover.edges[image].src == node_sigma[e.src] && cover.edges[image].tgt == node_sigma[e.tgt];
            edge_sigma.push(cover.letter(image, !forward));
            let (ps, pt) = (node_projection[e.src], node_projection[e.tgt]);
            match t.self_folded.iter().find(|sf| dc.new_arcs.get(&sf.puncture) == Some(&e.name)) {
                Some(sf) => {
                    let l = base.edge_named(&sf.loop_edge).expect("loop edge is an arc");
                    let fold = base.node(&sf.triangle).expect("self-folded node");
                    let ep = base.loop_at(fold).expect("orbifold loop");
                    let into = base.letter(l, base.edges[l].src != ps);
                    edge_projection.push(vec![into, base.letter(ep, false), base.inverse_letter(into)]);
                    puncture_edge.insert(fold, i);
                }
                None => {
                    let b = base.edge_named(&dc.projection[&e.name]).expect("projection lands on an arc");
                    let forward = base.edges[b].src == ps && base.edges[b].tgt == pt;
                    edge_projection.push(vec![base.letter(b, !forward)]);
                }
            }
        }
        let mut lift_table = BTreeMap::new();
        for c in 0..cover.nodes.len() {
            for x in cover.out_letters(c) {
                if puncture_edge.values().any(|&e| e == x.edge) {
                    continue;
                }
                let img = &edge_projection[x.edge];
                let y = if x.inv { base.inverse_letter(img[0]) } else { img[0] };
                lift_table.insert((c, y), x);
            }
        }
        Covering { base, cover, node_projection, sheet, node_sigma, edge_sigma, edge_projection, lift_table, puncture_edge }
    }

    fn sigma_letter(&self, x: Letter) -> Letter {
        let y = self.edge_sigma[x.edge];
        if x.inv {
            self.cover.inverse_letter(y)
        } else {
            y
        }
    }

    /// The deck transformation applied to a cover word.
    pub fn sigma_word(&self, w: &GroupoidWord) -> GroupoidWord {
        GroupoidWord {
            start: self.node_sigma[w.start],
            end: self.node_sigma[w.end],
            letters: w.letters.iter().map(|&x| self.sigma_letter(x)).collect(),
        }
    }

    pub fn sigma_cyclic(&self, c: &CyclicWord) -> CyclicWord {
        let l: Vec<Letter> = c.letters.iter().map(|&x| self.sigma_letter(x)).collect();
        self.cover.least_rotation(self.node_sigma[c.node], l)
    }

    /// The image of a cover word in the orbifold groupoid of the base.
    pub fn project(&self, w: &GroupoidWord) -> GroupoidWord {
        let mut out = Vec::new();
        for &x in &w.letters {
            let img = &self.edge_projection[x.edge];
            if x.inv {
                out.extend(img.iter().rev().map(|&y| self.base.inverse_letter(y)));
            } else {
                out.extend(img.iter().copied());
            }
        }
        self.base.reduce(self.node_projection[w.start], &out).expect("projection of a walk is a walk")
    }

    pub fn project_cyclic(&self, c: &CyclicWord) -> CyclicWord {
        let w = self.project(&self.cover.cyclic_as_word(c));
        self.base.cyclic_normal_form(&w).expect("projection of a loop is a loop")
    }

    /// Lifts a reduced base word starting on the given sheet. Loops must lift
    /// to loops, which happens exactly when they go around punctures an even
    /// number of times.
    pub fn lift(&self, w: &GroupoidWord, plus: bool) -> Lift {
        let b = &self.base;
        if b.self_folded[w.start] || b.self_folded[w.end] {
            return Lift::NoLift;
        }
        let Ok(w) = b.reduce(w.start, &w.letters) else { return Lift::NoLift };
        let start = match (0..self.cover.nodes.len()).find(|&c| self.node_projection[c] == w.start && self.sheet[c] == plus) {
            Some(c) => c,
            None => return Lift::NoLift,
        };
        let mut cur = start;
        let mut out = Vec::new();
        let mut i = 0;
        while i < w.letters.len() {
            let x = w.letters[i];
            let into = b.tgt(x);
            if b.self_folded[into] {
                // after reduction a visit to a self-folded node is `l e_P l'`
                let e = self.puncture_edge[&into];
                let y = self.cover.letter(e, self.cover.edges[e].src != cur);
                out.push(y);
                cur = self.cover.tgt(y);
                i += 3;
                continue;
            }
            match self.lift_table.get(&(cur, x)) {
                Some(&y) => {
                    out.push(y);
                    cur = self.cover.tgt(y);
                }
                None => return Lift::NoLift,
            }
            i += 1;
        }
        if w.is_loop() && cur != start {
            return Lift::NoLift;
        }
        Lift::Word(GroupoidWord { start, end: cur, letters: out })
    }

    /// Number of orbifold letters in a base word.
    pub fn puncture_passages(&self, w: &GroupoidWord) -> usize {
        w.letters.iter().filter(|&&x| self.base.is_orbifold(x)).count()
    }
}

/// Orbifold words between boundary marked points, sorted as in the
/// classification of string modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringClasses {
    /// `(γ, γ⁻¹)` with `γ ≠ γ⁻¹`, the smaller word first.
    pub pairs: Vec<(GroupoidWord, GroupoidWord)>,
    /// Words with `γ = γ⁻¹`, i.e. `γ = v e_P v'`.
    pub involutions: Vec<GroupoidWord>,
    /// Two tagged arcs `v` and `v e_P` for each involution.
    pub tagged: Vec<GroupoidWord>,
}

/// All reduced orbifold words between non-self-folded nodes crossing at most
/// `max_len` arcs of the cover.
pub fn classify_strings(cov: &Covering, max_len: usize) -> StringClasses {
    let g = &cov.base;
    let mut seen: BTreeSet<GroupoidWord> = BTreeSet::new();
    for s in 0..g.nodes.len() {
        if g.self_folded[s] {
            continue;
        }
        g.walks(s, 3 * max_len, &mut |w| {
            if !g.self_folded[w.end] && g.crossings(w) <= max_len {
                let inv = g.inverse(w);
                seen.insert(if inv < *w { inv } else { w.clone() });
            }
        });
    }
    let mut out = StringClasses { pairs: Vec::new(), involutions: Vec::new(), tagged: Vec::new() };
    for w in seen {
        let inv = g.inverse(&w);
        if inv == w {
            let half = w.letters.len() / 2;
            let v = GroupoidWord { start: w.start, end: g.tgt(w.letters[half - 1]), letters: w.letters[..half].to_vec() };
            out.tagged.push(v.clone());
            let mut tagged = v.clone();
            tagged.letters.push(w.letters[half]);
            out.tagged.push(tagged);
            out.involutions.push(w);
        } else {
            out.pairs.push((w, inv));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandClass {
    pub word: CyclicWord,
    /// Goes around punctures an even number of times, so that it lifts to a
    /// closed curve on the cover; otherwise its square does.
    pub lifts: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandClasses {
    /// Primitive classes with `[γ] ≠ [γ⁻¹]`, one representative per pair.
    pub asymmetric: Vec<BandClass>,
    /// Primitive classes with `[γ] = [γ⁻¹]`.
    pub symmetric: Vec<BandClass>,
}

/// Primitive conjugacy classes of the orbifold group crossing at most
/// `max_len` arcs of the cover, up to inversion.
pub fn classify_bands(cov: &Covering, max_len: usize) -> BandClasses {
    let g = &cov.base;
    let mut seen: BTreeSet<CyclicWord> = BTreeSet::new();
    for s in 0..g.nodes.len() {
        if g.self_folded[s] {
            continue;
        }
        g.walks(s, 3 * max_len, &mut |w| {
            if w.is_loop() {
                let c = g.cyclic_normal_form(w).expect("a loop");
                if g.is_primitive(&c) && g.cyclic_crossings(&c) <= max_len {
                    let inv = g.cyclic_inverse(&c);
                    seen.insert(if inv < c { inv } else { c });
                }
            }
        });
    }
    let mut out = BandClasses { asymmetric: Vec::new(), symmetric: Vec::new() };
    for c in seen {
        let lifts = c.letters.iter().filter(|&&x| g.is_orbifold(x)).count() % 2 == 0;
        let class = BandClass { word: c.clone(), lifts };
        if g.is_symmetric(&c) {
            out.symmetric.push(class);
        } else {
            out.asymmetric.push(class);
        }
    }
    out
}

/// The ways of writing a symmetric class as `[e_P u e_Q u']`, as
/// `(u, position of e_P)` for each fixed letter of the reversal symmetry.
fn symmetric_splittings(g: &DualGraph, c: &CyclicWord) -> Vec<GroupoidWord> {
    let n = c.letters.len();
    let mut out = Vec::new();
    if n < 2 || n % 2 == 1 {
        return out;
    }
    for i in 0..n {
        let at = |k: usize| c.letters[(i + k) % n];
        if !g.is_orbifold(at(0)) || !g.is_orbifold(at(n / 2)) {
            continue;
        }
        let u: Vec<Letter> = (1..n / 2).map(at).collect();
        let back: Vec<Letter> = (n / 2 + 1..n).map(at).collect();
        let u_inv: Vec<Letter> = u.iter().rev().map(|&x| g.inverse_letter(x)).collect();
        if back == u_inv {
            out.push(GroupoidWord { start: g.src(at(0)), end: g.src(at(n / 2)), letters: u });
        }
    }
    out
}

/// The tagged arc `e_P^{ε₁} u e_Q^{ε₂}` between self-folded triangles attached
/// to a symmetric primitive class `[e_P u e_Q u']`.
///
/// Of the two splittings `(P, u, Q)` and `(Q, u', P)` the one with the
/// smaller `u` is used.
pub fn band_to_tagged(g: &DualGraph, c: &CyclicWord, eps1: bool, eps2: bool) -> Result<GroupoidWord, GroupoidError> {
    if !g.is_primitive(c) {
        return Err(GroupoidError::NotPrimitive);
    }
    if !g.is_symmetric(c) {
        return Err(GroupoidError::NotSymmetric);
    }
    let u = symmetric_splittings(g, c).into_iter().min().expect("a symmetric reduced class has two fixed letters");
    let mut letters = Vec::new();
    if eps1 {
        letters.push(g.letter(g.loop_at(u.start).expect("orbifold loop"), false));
    }
    letters.extend(u.letters.iter().copied());
    if eps2 {
        letters.push(g.letter(g.loop_at(u.end).expect("orbifold loop"), false));
    }
    Ok(GroupoidWord { start: u.start, end: u.end, letters })
}

/// The inverse of [`band_to_tagged`]: `w ↦ ([e_P u e_Q u'], ε₁, ε₂)`.
pub fn tagged_to_band(g: &DualGraph, w: &GroupoidWord) -> Result<(CyclicWord, bool, bool), GroupoidError> {
    let (ep, eq) = match (g.loop_at(w.start), g.loop_at(w.end)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(GroupoidError::NotTagged(g.show(w))),
    };
    let mut u = w.letters.clone();
    let eps1 = u.first().is_some_and(|x| x.edge == ep);
    if eps1 {
        u.remove(0);
    }
    let eps2 = u.last().is_some_and(|x| x.edge == eq);
    if eps2 {
        u.pop();
    }
    let mut loop_letters = vec![g.letter(ep, false)];
    loop_letters.extend(u.iter().copied());
    loop_letters.push(g.letter(eq, false));
    loop_letters.extend(u.iter().rev().map(|&x| g.inverse_letter(x)));
    let c = g.cyclic_normal_form(&GroupoidWord { start: w.start, end: w.start, letters: loop_letters })?;
    Ok((c, eps1, eps2))
}

/// A plain-text report of a classification, one class per line.
pub fn report_strings(cov: &Covering, s: &StringClasses) -> String {
    let g = &cov.base;
    let mut out = String::new();
    for (w, inv) in &s.pairs {
        let _ = writeln!(out, "pair {} | {}", g.show(w), g.show(inv));
    }
    for w in &s.involutions {
        let _ = writeln!(out, "involution {}", g.show(w));
    }
    for w in &s.tagged {
        let _ = writeln!(out, "tagged {} -> {}", g.nodes[w.start], g.show(w));
    }
    out
}

pub fn report_bands(cov: &Covering, b: &BandClasses) -> String {
    let g = &cov.base;
    let mut out = String::new();
    for c in &b.asymmetric {
        let _ = writeln!(out, "asymmetric {} lifts={}", g.show_cyclic(&c.word), c.lifts);
    }
    for c in &b.symmetric {
        let _ = writeln!(out, "symmetric {} lifts={}", g.show_cyclic(&c.word), c.lifts);
    }
    out
}
