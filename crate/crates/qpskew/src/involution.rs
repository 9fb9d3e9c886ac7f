//! Order-two actions on quivers, the fixed/moved vertex partition, and
//! admissible choices of orbit representatives.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;
use thiserror::Error;

use crate::algebra::{apply_quiver_morphism, AlgebraError, Path, PathExpr, Potential, Quiver, QuiverMorphism};
use crate::linalg::Q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvolutionError {
    #[error("not an involution at {0}")]
    NotInvolution(String),
    #[error("arrow {0} is not sent to an arrow between the image endpoints")]
    EndpointsNotRespected(String),
    #[error("arrow {0} has both endpoints fixed but is moved")]
    FixedArrowViolation(String),
    #[error("action mentions unknown element {0}")]
    UnknownElement(String),
}

impl InvolutionError {
    pub fn name(&self) -> &'static str {
        match self {
            InvolutionError::NotInvolution(_) => "NotInvolution",
            InvolutionError::EndpointsNotRespected(_) => "EndpointsNotRespected",
            InvolutionError::FixedArrowViolation(_) => "FixedArrowViolation",
            InvolutionError::UnknownElement(_) => "UnknownElement",
        }
    }
}

/// A vertex permutation and an arrow permutation, meant to square to the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    vertex: BTreeMap<String, String>,
    arrow: BTreeMap<String, String>,
}

impl Involution {
    pub fn identity(q: &Quiver) -> Self {
        Involution {
            vertex: q.vertices().iter().map(|v| (v.clone(), v.clone())).collect(),
            arrow: q.arrows().iter().map(|a| (a.id.clone(), a.id.clone())).collect(),
        }
    }

    /// Built from transpositions; unlisted elements are fixed.
    pub fn from_swaps(q: &Quiver, vertex_swaps: &[(&str, &str)], arrow_swaps: &[(&str, &str)]) -> Result<Self, InvolutionError> {
        let vs: Vec<(String, String)> = vertex_swaps.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        let as_: Vec<(String, String)> = arrow_swaps.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        Self::from_swap_lists(q, &vs, &as_)
    }

    pub fn from_swap_lists(q: &Quiver, vertex_swaps: &[(String, String)], arrow_swaps: &[(String, String)]) -> Result<Self, InvolutionError> {
        let mut s = Self::identity(q);
        for (a, b) in vertex_swaps {
            for x in [a, b] {
                if !q.has_vertex(x) {
                    return Err(InvolutionError::UnknownElement(x.clone()));
                }
            }
            s.vertex.insert(a.clone(), b.clone());
            s.vertex.insert(b.clone(), a.clone());
        }
        for (a, b) in arrow_swaps {
            for x in [a, b] {
                if q.arrow(x).is_err() {
                    return Err(InvolutionError::UnknownElement(x.clone()));
                }
            }
            s.arrow.insert(a.clone(), b.clone());
            s.arrow.insert(b.clone(), a.clone());
        }
        Ok(s)
    }

    /// Built from full maps (used for actions that are not given as swaps).
    pub fn from_maps(vertex: BTreeMap<String, String>, arrow: BTreeMap<String, String>) -> Self {
        Involution { vertex, arrow }
    }

    pub fn vertex<'a>(&'a self, v: &'a str) -> &'a str {
        self.vertex.get(v).map(String::as_str).unwrap_or(v)
    }

    pub fn arrow<'a>(&'a self, a: &'a str) -> &'a str {
        self.arrow.get(a).map(String::as_str).unwrap_or(a)
    }

    pub fn vertex_map(&self) -> &BTreeMap<String, String> {
        &self.vertex
    }

    pub fn arrow_map(&self) -> &BTreeMap<String, String> {
        &self.arrow
    }

    /// Swapped pairs `(a, b)` with `a < b`, vertices then arrows.
    pub fn swaps(&self) -> (Vec<(String, String)>, Vec<(String, String)>) {
        let pick = |m: &BTreeMap<String, String>| {
            m.iter().filter(|(a, b)| a < b).map(|(a, b)| (a.clone(), b.clone())).collect()
        };
        (pick(&self.vertex), pick(&self.arrow))
    }

    pub fn as_morphism(&self) -> QuiverMorphism {
        QuiverMorphism {
            vertex_map: self.vertex.clone(),
            arrow_map: self.arrow.iter().map(|(a, b)| (a.clone(), (Q::one(), b.clone()))).collect(),
        }
    }

    pub fn apply_path(&self, p: &Path) -> Path {
        Path {
            src: self.vertex(&p.src).to_string(),
            tgt: self.vertex(&p.tgt).to_string(),
            arrows: p.arrows.iter().map(|a| self.arrow(a).to_string()).collect(),
        }
    }

    pub fn apply(&self, x: &PathExpr) -> Result<PathExpr, AlgebraError> {
        apply_quiver_morphism(&self.as_morphism(), x)
    }
}

/// Fixed vertices `V` and moved vertices `W`, both in quiver order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub v: Vec<String>,
    pub w: Vec<String>,
}

impl Partition {
    pub fn is_fixed(&self, x: &str) -> bool {
        self.v.iter().any(|y| y == x)
    }
}

/// Checks the standing assumptions on an action and returns `(V, W)`.
pub fn validate_action(q: &Quiver, s: &Involution) -> Result<Partition, InvolutionError> {
    for v in q.vertices() {
        let img = s.vertex(v);
        if !q.has_vertex(img) {
            return Err(InvolutionError::UnknownElement(img.to_string()));
        }
        if s.vertex(img) != v {
            return Err(InvolutionError::NotInvolution(v.clone()));
        }
    }
    for a in q.arrows() {
        let img = s.arrow(&a.id);
        if q.arrow(img).is_err() {
            return Err(InvolutionError::UnknownElement(img.to_string()));
        }
        if s.arrow(img) != a.id {
            return Err(InvolutionError::NotInvolution(a.id.clone()));
        }
    }
    for a in q.arrows() {
        let b = q.arrow(s.arrow(&a.id)).expect("checked above");
        if b.src != s.vertex(&a.src) || b.tgt != s.vertex(&a.tgt) {
            return Err(InvolutionError::EndpointsNotRespected(a.id.clone()));
        }
    }
    for a in q.arrows() {
        if s.vertex(&a.src) == a.src && s.vertex(&a.tgt) == a.tgt && s.arrow(&a.id) != a.id {
            return Err(InvolutionError::FixedArrowViolation(a.id.clone()));
        }
    }
    let (v, w) = q.vertices().iter().cloned().partition(|x| s.vertex(x) == x);
    Ok(Partition { v, w })
}

/// Representatives of vertex orbits in `W` and of arrow orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitChoice {
    pub o_w: BTreeSet<String>,
    pub o_arrows: BTreeSet<String>,
    pub admissible: bool,
}

impl OrbitChoice {
    pub fn has_vertex(&self, v: &str) -> bool {
        self.o_w.contains(v)
    }

    pub fn has_arrow(&self, a: &str) -> bool {
        self.o_arrows.contains(a)
    }
}

/// Vertex orbits of `W` in quiver order, each as `(first, second)` with `first < second`.
pub fn w_orbits(q: &Quiver, s: &Involution) -> Vec<(String, String)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in q.vertices() {
        let w = s.vertex(v);
        if w == v || seen.contains(v) {
            continue;
        }
        seen.insert(v.clone());
        seen.insert(w.to_string());
        let (a, b) = if v.as_str() < w { (v.clone(), w.to_string()) } else { (w.to_string(), v.clone()) };
        out.push((a, b));
    }
    out
}

/// Searches for an admissible choice, orbit by orbit, trying the smaller
/// representative first.
pub fn find_admissible(q: &Quiver, s: &Involution) -> Result<Option<OrbitChoice>, InvolutionError> {
    let part = validate_action(q, s)?;
    let orbits = w_orbits(q, s);
    let mut chosen: BTreeSet<String> = BTreeSet::new();
    if !search(q, &part, &orbits, 0, &mut chosen) {
        return Ok(None);
    }
    let o_arrows = admissible_arrows(q, &part, &chosen);
    Ok(Some(OrbitChoice { o_w: chosen, o_arrows, admissible: true }))
}

fn search(q: &Quiver, part: &Partition, orbits: &[(String, String)], k: usize, chosen: &mut BTreeSet<String>) -> bool {
    if k == orbits.len() {
        return true;
    }
    let decided: BTreeSet<String> = orbits[..=k].iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    for cand in [&orbits[k].0, &orbits[k].1] {
        chosen.insert(cand.clone());
        let rejected = |x: &str| decided.contains(x) && !part.is_fixed(x) && !chosen.contains(x);
        // an arrow touching a chosen vertex must not touch a rejected one
        let ok = q.arrows().iter().all(|a| {
            let touches = chosen.contains(&a.src) || chosen.contains(&a.tgt);
            !touches || !(rejected(&a.src) || rejected(&a.tgt))
        });
        if ok && search(q, part, orbits, k + 1, chosen) {
            return true;
        }
        chosen.remove(cand);
    }
    false
}

fn admissible_arrows(q: &Quiver, part: &Partition, o_w: &BTreeSet<String>) -> BTreeSet<String> {
    let good = |v: &str| part.is_fixed(v) || o_w.contains(v);
    q.arrows().iter().filter(|a| good(&a.src) && good(&a.tgt)).map(|a| a.id.clone()).collect()
}

/// Independent admissibility predicate, straight from the definition.
pub fn is_admissible(q: &Quiver, s: &Involution, choice: &OrbitChoice) -> bool {
    let Ok(part) = validate_action(q, s) else { return false };
    // one representative per vertex orbit
    for (a, b) in w_orbits(q, s) {
        if choice.o_w.contains(&a) == choice.o_w.contains(&b) {
            return false;
        }
    }
    if choice.o_w.iter().any(|v| part.is_fixed(v) || !q.has_vertex(v)) {
        return false;
    }
    let in_vo = |v: &str| part.is_fixed(v) || choice.o_w.contains(v);
    for a in q.arrows() {
        let touches = choice.o_w.contains(&a.src) || choice.o_w.contains(&a.tgt);
        if touches && !(in_vo(&a.src) && in_vo(&a.tgt)) {
            return false;
        }
    }
    let expected: BTreeSet<String> =
        q.arrows().iter().filter(|a| in_vo(&a.src) && in_vo(&a.tgt)).map(|a| a.id.clone()).collect();
    if expected != choice.o_arrows {
        return false;
    }
    // representatives: each arrow orbit met exactly once
    q.arrows().iter().all(|a| {
        let b = s.arrow(&a.id);
        let orbit: BTreeSet<&str> = [a.id.as_str(), b].into_iter().collect();
        let n = orbit.iter().filter(|x| expected.contains(**x)).count();
        n == 1
    })
}

/// A choice of representatives that need not be admissible: the smaller
/// vertex of each orbit, and for each arrow orbit the member whose endpoints
/// best match that choice (smaller id on ties).
pub fn any_choice(q: &Quiver, s: &Involution) -> Result<OrbitChoice, InvolutionError> {
    if let Some(c) = find_admissible(q, s)? {
        return Ok(c);
    }
    let part = validate_action(q, s)?;
    let o_w: BTreeSet<String> = w_orbits(q, s).into_iter().map(|(a, _)| a).collect();
    let score = |id: &str| {
        let a = q.arrow(id).expect("known arrow");
        [&a.src, &a.tgt].iter().filter(|v| part.is_fixed(v) || o_w.contains(v.as_str())).count()
    };
    let mut o_arrows = BTreeSet::new();
    for a in q.arrows() {
        let b = s.arrow(&a.id).to_string();
        if o_arrows.contains(&b) {
            continue;
        }
        let pick = if b == a.id || (score(&a.id), std::cmp::Reverse(&a.id)) >= (score(&b), std::cmp::Reverse(&b)) {
            a.id.clone()
        } else {
            b
        };
        o_arrows.insert(pick);
    }
    Ok(OrbitChoice { o_w, o_arrows, admissible: false })
}

/// True iff `σ(S)` is cyclically equivalent to `S`.
pub fn check_potential_invariance(q: &Quiver, pot: &Potential, s: &Involution) -> bool {
    let Ok(img) = s.apply(pot.expr()) else { return false };
    Potential::new(q, &img).map(|p| &p == pot).unwrap_or(false)
}
