//! Quivers, paths, linear combinations of paths, potentials and cyclic
//! derivatives.
//!
//! Paths are written `a1 a2 ... am` and composed right to left, so `am` is
//! traversed first: the source of the path is `s(am)` and its target `t(a1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{fmt_q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("cannot compose: source of left factor {left} differs from target of right factor {right}")]
    CompositionMismatch { left: String, right: String },
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("term {0} of a potential is not a cycle of length at least 2")]
    NotACycle(String),
    #[error("invalid quiver morphism: {0}")]
    InvalidMorphism(String),
}

impl AlgebraError {
    pub fn name(&self) -> &'static str {
        match self {
            AlgebraError::CompositionMismatch { .. } => "CompositionMismatch",
            AlgebraError::UnknownArrow(_) => "UnknownArrow",
            AlgebraError::UnknownVertex(_) => "UnknownVertex",
            AlgebraError::DuplicateId(_) => "DuplicateId",
            AlgebraError::NotACycle(_) => "NotACycle",
            AlgebraError::InvalidMorphism(_) => "InvalidMorphism",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// A finite quiver; vertices and arrows keep their declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    arrow_index: BTreeMap<String, usize>,
    vertex_set: BTreeSet<String>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: impl Into<String>) -> Result<(), AlgebraError> {
        let v = v.into();
        if !self.vertex_set.insert(v.clone()) {
            return Err(AlgebraError::DuplicateId(v));
        }
        self.vertices.push(v);
        Ok(())
    }

    pub fn add_arrow(
        &mut self,
        id: impl Into<String>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) -> Result<(), AlgebraError> {
        let (id, src, tgt) = (id.into(), src.into(), tgt.into());
        for v in [&src, &tgt] {
            if !self.vertex_set.contains(v) {
                return Err(AlgebraError::UnknownVertex(v.clone()));
            }
        }
        if self.arrow_index.contains_key(&id) {
            return Err(AlgebraError::DuplicateId(id));
        }
        self.arrow_index.insert(id.clone(), self.arrows.len());
        self.arrows.push(Arrow { id, src, tgt });
        Ok(())
    }

    /// Builds a quiver from string slices; panics on malformed input.
    pub fn from_lists(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Self {
        let mut q = Quiver::new();
        for v in vertices {
            q.add_vertex(*v).expect("vertex");
        }
        for (a, s, t) in arrows {
            q.add_arrow(*a, *s, *t).expect("arrow");
        }
        q
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertex_set.contains(v)
    }

    pub fn arrow(&self, id: &str) -> Result<&Arrow, AlgebraError> {
        self.arrow_index
            .get(id)
            .map(|&i| &self.arrows[i])
            .ok_or_else(|| AlgebraError::UnknownArrow(id.to_string()))
    }

    pub fn src(&self, a: &str) -> Result<&str, AlgebraError> {
        Ok(&self.arrow(a)?.src)
    }

    pub fn tgt(&self, a: &str) -> Result<&str, AlgebraError> {
        Ok(&self.arrow(a)?.tgt)
    }

    pub fn arrows_from(&self, v: &str) -> impl Iterator<Item = &Arrow> {
        let v = v.to_string();
        self.arrows.iter().filter(move |a| a.src == v)
    }

    pub fn arrows_to(&self, v: &str) -> impl Iterator<Item = &Arrow> {
        let v = v.to_string();
        self.arrows.iter().filter(move |a| a.tgt == v)
    }

    /// Multiset of (source, target) pairs, for shape comparisons.
    pub fn arrow_counts(&self) -> BTreeMap<(String, String), usize> {
        let mut m = BTreeMap::new();
        for a in &self.arrows {
            *m.entry((a.src.clone(), a.tgt.clone())).or_insert(0) += 1;
        }
        m
    }

    /// All paths of length exactly `len`.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        if len == 0 {
            return self.vertices.iter().map(|v| Path::trivial(v)).collect();
        }
        let mut out: Vec<Path> = self.arrows.iter().map(|a| Path::arrow_of(a)).collect();
        for _ in 1..len {
            let mut next = Vec::new();
            for p in &out {
                for a in self.arrows_from(&p.tgt) {
                    next.push(p.then_arrow(a));
                }
            }
            out = next;
        }
        out
    }
}

/// A path: either trivial at a vertex or a nonempty composable arrow sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub src: String,
    pub tgt: String,
    /// Arrows in written order; the last one is traversed first.
    pub arrows: Vec<String>,
}

impl Path {
    pub fn trivial(v: &str) -> Self {
        Path { src: v.to_string(), tgt: v.to_string(), arrows: Vec::new() }
    }

    pub fn arrow_of(a: &Arrow) -> Self {
        Path { src: a.src.clone(), tgt: a.tgt.clone(), arrows: vec![a.id.clone()] }
    }

    pub fn arrow(q: &Quiver, id: &str) -> Result<Self, AlgebraError> {
        Ok(Path::arrow_of(q.arrow(id)?))
    }

    /// The path `ids[0] ids[1] ... ids[m-1]` in written order.
    pub fn from_arrows(q: &Quiver, ids: &[&str]) -> Result<Self, AlgebraError> {
        let mut it = ids.iter().rev();
        let first = it.next().ok_or_else(|| AlgebraError::UnknownArrow(String::new()))?;
        let mut p = Path::arrow(q, first)?;
        for id in it {
            p = compose(&Path::arrow(q, id)?, &p)?;
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.src == self.tgt && !self.arrows.is_empty()
    }

    /// `a` composed after this path (so `a` is written on the left).
    fn then_arrow(&self, a: &Arrow) -> Path {
        debug_assert_eq!(a.src, self.tgt);
        let mut arrows = vec![a.id.clone()];
        arrows.extend(self.arrows.iter().cloned());
        Path { src: self.src.clone(), tgt: a.tgt.clone(), arrows }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e_{}", self.src)
        } else {
            write!(f, "{}", self.arrows.join(" "))
        }
    }
}

/// `p ∘ q`: first `q`, then `p`.
pub fn compose(p: &Path, q: &Path) -> Result<Path, AlgebraError> {
    if p.src != q.tgt {
        return Err(AlgebraError::CompositionMismatch { left: p.to_string(), right: q.to_string() });
    }
    let mut arrows = p.arrows.clone();
    arrows.extend(q.arrows.iter().cloned());
    Ok(Path { src: q.src.clone(), tgt: p.tgt.clone(), arrows })
}

/// Finite rational linear combination of paths; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PathExpr {
    terms: BTreeMap<Path, Q>,
}

impl PathExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_path(p: Path) -> Self {
        Self::term(Q::one(), p)
    }

    pub fn term(c: Q, p: Path) -> Self {
        let mut e = Self::zero();
        e.add_term(c, p);
        e
    }

    pub fn add_term(&mut self, c: Q, p: Path) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Path, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Path) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &PathExpr) -> PathExpr {
        let mut out = self.clone();
        for (p, c) in &o.terms {
            out.add_term(c.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, o: &PathExpr) -> PathExpr {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> PathExpr {
        if c.is_zero() {
            return PathExpr::zero();
        }
        PathExpr { terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect() }
    }

    /// Product `self · o`; non-composable pairs contribute zero.
    pub fn mul(&self, o: &PathExpr) -> PathExpr {
        let mut out = PathExpr::zero();
        for (p, a) in &self.terms {
            for (r, b) in &o.terms {
                if let Ok(pr) = compose(p, r) {
                    out.add_term(a * b, pr);
                }
            }
        }
        out
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }
}

impl fmt::Display for PathExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in &self.terms {
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if mag.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{}*{p}", fmt_q(&mag))?;
            }
        }
        Ok(())
    }
}

/// Rotation of a cycle so that its arrow sequence is lexicographically least.
pub fn canonical_rotation(q: &Quiver, cycle: &Path) -> Result<Path, AlgebraError> {
    let m = cycle.arrows.len();
    let best = (0..m)
        .map(|k| {
            let mut r = cycle.arrows[k..].to_vec();
            r.extend_from_slice(&cycle.arrows[..k]);
            r
        })
        .min()
        .unwrap_or_default();
    let v = q.tgt(&best[0])?.to_string();
    Ok(Path { src: v.clone(), tgt: v, arrows: best })
}

/// A potential: a combination of cycles, each stored in canonical rotation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Potential {
    expr: PathExpr,
}

impl Potential {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Canonicalizes every cycle of `expr`.
    pub fn new(q: &Quiver, expr: &PathExpr) -> Result<Self, AlgebraError> {
        let mut out = PathExpr::zero();
        for (p, c) in expr.terms() {
            if !p.is_cycle() || p.len() < 2 {
                return Err(AlgebraError::NotACycle(p.to_string()));
            }
            out.add_term(c.clone(), canonical_rotation(q, p)?);
        }
        Ok(Potential { expr: out })
    }

    pub fn expr(&self) -> &PathExpr {
        &self.expr
    }

    pub fn is_zero(&self) -> bool {
        self.expr.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Potential {
        Potential { expr: self.expr.scale(c) }
    }

    pub fn add(&self, o: &Potential) -> Potential {
        Potential { expr: self.expr.add(&o.expr) }
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)
    }
}

/// Cyclic equivalence: equality of canonical forms.
pub fn cyclically_equivalent(s1: &Potential, s2: &Potential) -> bool {
    s1 == s2
}

/// `∂_a S`: for each occurrence of `a` in a cycle, rotate it to the front
/// and keep the remaining word.
pub fn cyclic_derivative(q: &Quiver, s: &Potential, a: &str) -> Result<PathExpr, AlgebraError> {
    let arrow = q.arrow(a)?;
    let mut out = PathExpr::zero();
    for (cycle, c) in s.expr().terms() {
        let m = cycle.arrows.len();
        for k in 0..m {
            if cycle.arrows[k] != a {
                continue;
            }
            let mut rest = cycle.arrows[k + 1..].to_vec();
            rest.extend_from_slice(&cycle.arrows[..k]);
            let p = Path { src: arrow.tgt.clone(), tgt: arrow.src.clone(), arrows: rest };
            out.add_term(c.clone(), p);
        }
    }
    Ok(out)
}

/// Quiver with potential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qp {
    pub quiver: Quiver,
    pub potential: Potential,
}

impl Qp {
    pub fn new(quiver: Quiver, potential: Potential) -> Self {
        Qp { quiver, potential }
    }

    /// Jacobian relations `∂_a S`, one per arrow (zero ones omitted).
    pub fn relations(&self) -> Vec<(String, PathExpr)> {
        self.quiver
            .arrows()
            .iter()
            .filter_map(|a| {
                let d = cyclic_derivative(&self.quiver, &self.potential, &a.id).ok()?;
                (!d.is_zero()).then(|| (a.id.clone(), d))
            })
            .collect()
    }
}

/// Vertices to vertices, arrows to scalar multiples of arrows.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuiverMorphism {
    pub vertex_map: BTreeMap<String, String>,
    pub arrow_map: BTreeMap<String, (Q, String)>,
}

impl QuiverMorphism {
    pub fn identity(q: &Quiver) -> Self {
        QuiverMorphism {
            vertex_map: q.vertices().iter().map(|v| (v.clone(), v.clone())).collect(),
            arrow_map: q.arrows().iter().map(|a| (a.id.clone(), (Q::one(), a.id.clone()))).collect(),
        }
    }

    /// Checks totality and that endpoints are respected.
    pub fn validate(&self, from: &Quiver, to: &Quiver) -> Result<(), AlgebraError> {
        for v in from.vertices() {
            let w = self.vertex_map.get(v).ok_or_else(|| AlgebraError::InvalidMorphism(format!("vertex {v} unmapped")))?;
            if !to.has_vertex(w) {
                return Err(AlgebraError::InvalidMorphism(format!("vertex {v} maps to unknown {w}")));
            }
        }
        for a in from.arrows() {
            let (c, b) = self
                .arrow_map
                .get(&a.id)
                .ok_or_else(|| AlgebraError::InvalidMorphism(format!("arrow {} unmapped", a.id)))?;
            if c.is_zero() {
                return Err(AlgebraError::InvalidMorphism(format!("arrow {} has zero scalar", a.id)));
            }
            let b = to.arrow(b).map_err(|_| AlgebraError::InvalidMorphism(format!("arrow {} maps to unknown {b}", a.id)))?;
            if self.vertex_map[&a.src] != b.src || self.vertex_map[&a.tgt] != b.tgt {
                return Err(AlgebraError::InvalidMorphism(format!("arrow {} endpoints not respected", a.id)));
            }
        }
        Ok(())
    }

    /// True iff both the vertex and the arrow maps are bijective.
    pub fn is_isomorphism(&self, from: &Quiver, to: &Quiver) -> bool {
        if self.validate(from, to).is_err() {
            return false;
        }
        let vs: BTreeSet<&String> = self.vertex_map.values().collect();
        let as_: BTreeSet<&String> = self.arrow_map.values().map(|(_, b)| b).collect();
        vs.len() == from.vertices().len()
            && vs.len() == to.vertices().len()
            && as_.len() == from.arrows().len()
            && as_.len() == to.arrows().len()
    }

    pub fn apply_path(&self, p: &Path) -> Result<(Q, Path), AlgebraError> {
        let map_v = |v: &str| {
            self.vertex_map.get(v).cloned().ok_or_else(|| AlgebraError::InvalidMorphism(format!("vertex {v} unmapped")))
        };
        let mut c = Q::one();
        let mut arrows = Vec::with_capacity(p.arrows.len());
        for a in &p.arrows {
            let (s, b) =
                self.arrow_map.get(a).ok_or_else(|| AlgebraError::InvalidMorphism(format!("arrow {a} unmapped")))?;
            c *= s;
            arrows.push(b.clone());
        }
        Ok((c, Path { src: map_v(&p.src)?, tgt: map_v(&p.tgt)?, arrows }))
    }

    pub fn compose_after(&self, first: &QuiverMorphism) -> QuiverMorphism {
        QuiverMorphism {
            vertex_map: first.vertex_map.iter().map(|(k, v)| (k.clone(), self.vertex_map[v].clone())).collect(),
            arrow_map: first
                .arrow_map
                .iter()
                .map(|(k, (c, b))| {
                    let (d, e) = &self.arrow_map[b];
                    (k.clone(), (c * d, e.clone()))
                })
                .collect(),
        }
    }
}

/// Coefficient-wise image of `x` under `m`.
pub fn apply_quiver_morphism(m: &QuiverMorphism, x: &PathExpr) -> Result<PathExpr, AlgebraError> {
    let mut out = PathExpr::zero();
    for (p, c) in x.terms() {
        let (s, img) = m.apply_path(p)?;
        out.add_term(c * s, img);
    }
    Ok(out)
}

/// Image of a potential, re-canonicalized in the target quiver.
pub fn apply_to_potential(m: &QuiverMorphism, to: &Quiver, s: &Potential) -> Result<Potential, AlgebraError> {
    Potential::new(to, &apply_quiver_morphism(m, s.expr())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn cylinder() -> Quiver {
        Quiver::from_lists(
            &["1", "2", "3", "3'", "4", "5"],
            &[
                ("a", "2", "1"),
                ("b", "1", "5"),
                ("c", "4", "5"),
                ("d", "2", "3"),
                ("d'", "2", "3'"),
                ("e", "3", "4"),
                ("e'", "3'", "4"),
                ("f", "4", "2"),
            ],
        )
    }

    fn pot(q_: &Quiver, cycles: &[&[&str]]) -> Potential {
        let mut e = PathExpr::zero();
        for c in cycles {
            e.add_term(q(1), Path::from_arrows(q_, c).unwrap());
        }
        Potential::new(q_, &e).unwrap()
    }

    #[test]
    fn compose_trivial_and_mismatch() {
        let qv = cylinder();
        let e4 = Path::trivial("4");
        let f = Path::arrow(&qv, "f").unwrap();
        let e = Path::arrow(&qv, "e").unwrap();
        assert_eq!(compose(&e4, &e4).unwrap(), e4);
        assert_eq!(compose(&f, &e).unwrap().arrows, vec!["f", "e"]);
        assert!(matches!(compose(&e, &f), Err(AlgebraError::CompositionMismatch { .. })));
    }

    #[test]
    fn cyclic_derivatives_of_the_cylinder_potential() {
        let qv = cylinder();
        let s = pot(&qv, &[&["f", "e", "d"], &["f", "e'", "d'"]]);
        let de = cyclic_derivative(&qv, &s, "e").unwrap();
        assert_eq!(de, PathExpr::from_path(Path::from_arrows(&qv, &["d", "f"]).unwrap()));
        let df = cyclic_derivative(&qv, &s, "f").unwrap();
        let want = PathExpr::from_path(Path::from_arrows(&qv, &["e", "d"]).unwrap())
            .add(&PathExpr::from_path(Path::from_arrows(&qv, &["e'", "d'"]).unwrap()));
        assert_eq!(df, want);
        assert!(cyclic_derivative(&qv, &s, "a").unwrap().is_zero());
        assert!(matches!(cyclic_derivative(&qv, &s, "zz"), Err(AlgebraError::UnknownArrow(_))));
    }

    #[test]
    fn rotations_are_identified() {
        let qv = cylinder();
        let a = pot(&qv, &[&["f", "e", "d"]]);
        let b = pot(&qv, &[&["e", "d", "f"]]);
        let c = pot(&qv, &[&["f", "e'", "d'"]]);
        assert!(cyclically_equivalent(&a, &b));
        assert!(!cyclically_equivalent(&a, &c));
        assert!(cyclically_equivalent(&Potential::zero(), &Potential::zero()));
    }

    #[test]
    fn morphism_image_and_endpoint_check() {
        let qv = cylinder();
        let mut m = QuiverMorphism::identity(&qv);
        for (x, y) in [("3", "3'"), ("3'", "3")] {
            m.vertex_map.insert(x.into(), y.into());
        }
        for (x, y) in [("d", "d'"), ("d'", "d"), ("e", "e'"), ("e'", "e")] {
            m.arrow_map.insert(x.into(), (q(1), y.into()));
        }
        m.validate(&qv, &qv).unwrap();
        let s = pot(&qv, &[&["f", "e", "d"]]);
        assert_eq!(apply_to_potential(&m, &qv, &s).unwrap(), pot(&qv, &[&["f", "e'", "d'"]]));
        m.arrow_map.insert("d".into(), (q(1), "d".into()));
        assert!(matches!(m.validate(&qv, &qv), Err(AlgebraError::InvalidMorphism(_))));
    }

    #[test]
    fn potential_rejects_open_paths() {
        let qv = cylinder();
        let e = PathExpr::from_path(Path::from_arrows(&qv, &["e", "d"]).unwrap());
        assert!(matches!(Potential::new(&qv, &e), Err(AlgebraError::NotACycle(_))));
    }
}
