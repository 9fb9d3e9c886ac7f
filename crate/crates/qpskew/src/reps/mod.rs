//! Finite-dimensional representations of Jacobian algebras: string and band
//! modules, induction and restriction along a skew group algebra, and exact
//! isomorphism testing and decomposition over the rationals.
//!
//! A representation is covariant: the matrix of an arrow `a: s → t` has
//! `dim t` rows and `dim s` columns.

mod functors;
mod induce;
mod linear;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, Path, PathExpr, Qp, Quiver, QuiverMorphism};
use crate::involution::Involution;
use crate::linalg::{fmt_q, Matrix, Q};
use crate::skew::SkewError;
use crate::surface::SurfaceError;

pub use functors::CoverFunctors;
pub use induce::{induce, restrict};
pub use linear::{
    decompose, decompose_seeded, decompose_with_bound, end_basis, hom_basis, is_isomorphic, DEFAULT_DIMENSION_BOUND, DEFAULT_SEED,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("band word is a proper power")]
    NotPrimitive,
    #[error("band parameter must be nonzero")]
    ZeroLambda,
    #[error("matrix of {0} has the wrong shape")]
    ShapeMismatch(String),
    #[error("relation ∂{0} S does not vanish")]
    RelationViolated(String),
    #[error("total dimension {dim} exceeds the bound {bound}")]
    DimensionBound { dim: usize, bound: usize },
    #[error("splitting needs a root of {0}")]
    FieldObstruction(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

impl RepError {
    pub fn name(&self) -> &'static str {
        match self {
            RepError::InvalidWord(_) => "InvalidWord",
            RepError::NotPrimitive => "NotPrimitive",
            RepError::ZeroLambda => "ZeroLambda",
            RepError::ShapeMismatch(_) => "ShapeMismatch",
            RepError::RelationViolated(_) => "RelationViolated",
            RepError::DimensionBound { .. } => "DimensionBound",
            RepError::FieldObstruction(_) => "FieldObstruction",
            RepError::Algebra(e) => e.name(),
            RepError::Skew(e) => e.name(),
            RepError::Surface(e) => e.name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub quiver: Quiver,
    dims: BTreeMap<String, usize>,
    maps: BTreeMap<String, Matrix>,
}

impl Representation {
    /// Missing dimensions are 0 and missing arrow matrices are zero.
    pub fn new(quiver: &Quiver, dims: BTreeMap<String, usize>, maps: BTreeMap<String, Matrix>) -> Result<Self, RepError> {
        for v in dims.keys() {
            if !quiver.has_vertex(v) {
                return Err(AlgebraError::UnknownVertex(v.clone()).into());
            }
        }
        let mut r = Representation { quiver: quiver.clone(), dims: BTreeMap::new(), maps: BTreeMap::new() };
        for v in quiver.vertices() {
            r.dims.insert(v.clone(), dims.get(v).copied().unwrap_or(0));
        }
        for a in maps.keys() {
            quiver.arrow(a)?;
        }
        for a in quiver.arrows() {
            let shape = (r.dims[&a.tgt], r.dims[&a.src]);
            let m = maps.get(&a.id).cloned().unwrap_or_else(|| Matrix::zeros(shape.0, shape.1));
            if m.shape() != shape {
                return Err(RepError::ShapeMismatch(a.id.clone()));
            }
            r.maps.insert(a.id.clone(), m);
        }
        Ok(r)
    }

    pub fn zero(quiver: &Quiver) -> Self {
        Self::new(quiver, BTreeMap::new(), BTreeMap::new()).expect("zero representation")
    }

    /// One-dimensional at `v`, zero elsewhere.
    pub fn simple(quiver: &Quiver, v: &str) -> Result<Self, RepError> {
        Self::new(quiver, BTreeMap::from([(v.to_string(), 1)]), BTreeMap::new())
    }

    pub fn dim(&self, v: &str) -> usize {
        self.dims.get(v).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<String, usize> {
        &self.dims
    }

    pub fn map(&self, a: &str) -> &Matrix {
        &self.maps[a]
    }

    pub fn maps(&self) -> &BTreeMap<String, Matrix> {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Dimensions in the quiver's vertex order.
    pub fn dim_vector(&self) -> Vec<usize> {
        self.quiver.vertices().iter().map(|v| self.dims[v]).collect()
    }

    pub fn eval_path(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.dim(&p.src));
        for a in p.arrows.iter().rev() {
            m = self.maps[a].mul(&m);
        }
        m
    }

    pub fn eval_expr(&self, x: &PathExpr, src: &str, tgt: &str) -> Matrix {
        let mut m = Matrix::zeros(self.dim(tgt), self.dim(src));
        for (p, c) in x.terms() {
            m = m.add(&self.eval_path(p).scale(c));
        }
        m
    }

    /// Checks that every cyclic derivative of the potential acts by zero.
    pub fn check_relations(&self, qp: &Qp) -> Result<(), RepError> {
        for (a, rel) in qp.relations() {
            let arr = qp.quiver.arrow(&a)?;
            // ∂_a S runs from the target of a to its source
            if !self.eval_expr(&rel, &arr.tgt, &arr.src).is_zero() {
                return Err(RepError::RelationViolated(a));
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, o: &Representation) -> Representation {
        let dims = self.dims.iter().map(|(v, d)| (v.clone(), d + o.dim(v))).collect();
        let maps = self.maps.iter().map(|(a, m)| (a.clone(), m.direct_sum(&o.maps[a]))).collect();
        Representation { quiver: self.quiver.clone(), dims, maps }
    }

    pub fn direct_sum_all(parts: &[Representation], quiver: &Quiver) -> Representation {
        parts.iter().fold(Representation::zero(quiver), |acc, r| acc.direct_sum(r))
    }

    /// `R^σ`: the space at `v` is `R(σv)` and the arrow `a` acts as `R(σa)`.
    pub fn twist(&self, s: &Involution) -> Representation {
        let dims = self.quiver.vertices().iter().map(|v| (v.clone(), self.dim(s.vertex(v)))).collect();
        let maps = self.quiver.arrows().iter().map(|a| (a.id.clone(), self.maps[s.arrow(&a.id)].clone())).collect();
        Representation { quiver: self.quiver.clone(), dims, maps }
    }

    /// Transports along an isomorphism `m: Q → Q'` with `m(a) = c·b`, so that
    /// `b` acts as `R(a)/c`.
    pub fn push_forward(&self, m: &QuiverMorphism, to: &Quiver) -> Result<Representation, RepError> {
        let dims = m.vertex_map.iter().map(|(v, w)| (w.clone(), self.dim(v))).collect();
        let mut maps = BTreeMap::new();
        for (a, (c, b)) in &m.arrow_map {
            maps.insert(b.clone(), self.maps[a].scale(&c.recip()));
        }
        Representation::new(to, dims, maps)
    }

    /// Restriction of scalars along `m: Q' → Q`: the arrow `a` of `Q'` acts
    /// as `c·R(b)` where `m(a) = c·b`.
    pub fn pull_back(&self, m: &QuiverMorphism, from: &Quiver) -> Result<Representation, RepError> {
        let dims = m.vertex_map.iter().map(|(v, w)| (v.clone(), self.dim(w))).collect();
        let mut maps = BTreeMap::new();
        for (a, (c, b)) in &m.arrow_map {
            maps.insert(a.clone(), self.maps[b].scale(c));
        }
        Representation::new(from, dims, maps)
    }

    /// Offsets of the vertex blocks in the total space.
    pub(crate) fn offsets(&self) -> BTreeMap<String, usize> {
        let mut off = BTreeMap::new();
        let mut acc = 0;
        for v in self.quiver.vertices() {
            off.insert(v.clone(), acc);
            acc += self.dims[v];
        }
        off
    }

    /// Machine-readable lines: `dim v n` and `map a r c e11 e12 …` (row major).
    pub fn to_machine(&self) -> String {
        let mut out = Vec::new();
        for v in self.quiver.vertices() {
            out.push(format!("dim {v} {}", self.dims[v]));
        }
        for a in self.quiver.arrows() {
            let m = &self.maps[&a.id];
            if m.rows() == 0 || m.cols() == 0 {
                continue;
            }
            let mut line = format!("map {} {} {}", a.id, m.rows(), m.cols());
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    line.push(' ');
                    line.push_str(&fmt_q(m.get(r, c)));
                }
            }
            out.push(line);
        }
        out.join("\n")
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dv: Vec<String> = self.quiver.vertices().iter().map(|v| format!("{v}:{}", self.dims[v])).collect();
        writeln!(f, "dims {}", dv.join(" "))?;
        for a in self.quiver.arrows() {
            let m = &self.maps[&a.id];
            if m.is_zero() {
                continue;
            }
            let rows: Vec<String> = (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| fmt_q(m.get(r, c))).collect::<Vec<_>>().join(" "))
                .collect();
            writeln!(f, "{} ({}->{}): [{}]", a.id, a.src, a.tgt, rows.join("; "))?;
        }
        Ok(())
    }
}

/// One step of a walk: the arrow and whether it is traversed along its direction.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Step {
    arrow: String,
    direct: bool,
}

fn step_between(q: &Quiver, x: &str, y: &str) -> Result<Step, RepError> {
    let fw: Vec<&str> = q.arrows().iter().filter(|a| a.src == x && a.tgt == y).map(|a| a.id.as_str()).collect();
    let bw: Vec<&str> = q.arrows().iter().filter(|a| a.src == y && a.tgt == x).map(|a| a.id.as_str()).collect();
    match (fw.as_slice(), bw.as_slice()) {
        ([a], []) => Ok(Step { arrow: a.to_string(), direct: true }),
        ([], [a]) => Ok(Step { arrow: a.to_string(), direct: false }),
        ([], []) => Err(RepError::InvalidWord(format!("no arrow between {x} and {y}"))),
        _ => Err(RepError::InvalidWord(format!("several arrows between {x} and {y}"))),
    }
}

fn walk(q: &Quiver, word: &[String], cyclic: bool) -> Result<Vec<Step>, RepError> {
    for v in word {
        if !q.has_vertex(v) {
            return Err(RepError::InvalidWord(format!("unknown arc {v}")));
        }
    }
    let n = word.len();
    let edges = if cyclic { n } else { n.saturating_sub(1) };
    let steps: Vec<Step> = (0..edges).map(|k| step_between(q, &word[k], &word[(k + 1) % n])).collect::<Result<_, _>>()?;
    // a walk may not immediately undo its previous step
    let pairs = if cyclic { edges } else { edges.saturating_sub(1) };
    for k in 0..pairs {
        let (s, t) = (&steps[k], &steps[(k + 1) % edges]);
        if s.arrow == t.arrow && s.direct != t.direct {
            return Err(RepError::InvalidWord(format!("walk backtracks along {}", s.arrow)));
        }
    }
    Ok(steps)
}

/// The string module of a walk given by the sequence of vertices it visits.
///
/// Consecutive vertices must be joined by exactly one arrow; the module has
/// one basis vector per position and each step maps one basis vector to the
/// next along the arrow.
pub fn string_module(qp: &Qp, word: &[String]) -> Result<Representation, RepError> {
    if word.is_empty() {
        return Err(RepError::InvalidWord("empty word".into()));
    }
    let steps = walk(&qp.quiver, word, false)?;
    let r = build_walk_module(&qp.quiver, word, &steps, 1, None)?;
    r.check_relations(qp).map_err(|e| RepError::InvalidWord(format!("walk meets a relation ({e})")))?;
    Ok(r)
}

/// Lexicographically least rotation of a cyclic word whose first step is
/// direct; the least rotation overall if no step is direct.
pub fn band_base_rotation(q: &Quiver, word: &[String]) -> Result<Vec<String>, RepError> {
    let steps = walk(q, word, true)?;
    let n = word.len();
    let rot = |k: usize| -> Vec<String> { (0..n).map(|i| word[(k + i) % n].clone()).collect() };
    let direct: Vec<usize> = (0..n).filter(|&k| steps[k].direct).collect();
    let pool: Vec<usize> = if direct.is_empty() { (0..n).collect() } else { direct };
    Ok(pool.into_iter().map(rot).min().expect("nonempty word"))
}

/// True when the cyclic word is not a proper power of a shorter one.
pub fn is_primitive_cyclic(word: &[String]) -> bool {
    let n = word.len();
    (1..n).filter(|d| n % d == 0).all(|d| (0..n).any(|i| word[i] != word[(i + d) % n]))
}

/// The band module of a cyclic walk with parameter `λ` and block size `n`.
///
/// Each position carries `k^n`; every step acts by the identity except the
/// first step after rotating to [`band_base_rotation`], which carries the
/// Jordan block `J_n(λ)` (or its inverse if the step runs against its arrow),
/// so that the monodromy along the walk is `J_n(λ)`.
pub fn band_module(qp: &Qp, word: &[String], lambda: &Q, n: usize) -> Result<Representation, RepError> {
    if lambda.is_zero() {
        return Err(RepError::ZeroLambda);
    }
    if word.len() < 2 {
        return Err(RepError::InvalidWord("a band visits at least two arcs".into()));
    }
    if !is_primitive_cyclic(word) {
        return Err(RepError::NotPrimitive);
    }
    let rotated = band_base_rotation(&qp.quiver, word)?;
    let steps = walk(&qp.quiver, &rotated, true)?;
    let r = build_walk_module(&qp.quiver, &rotated, &steps, n.max(1), Some(lambda))?;
    r.check_relations(qp).map_err(|e| RepError::InvalidWord(format!("walk meets a relation ({e})")))?;
    Ok(r)
}

pub fn jordan_block(n: usize, lambda: &Q) -> Matrix {
    let mut j = Matrix::scalar(n, lambda.clone());
    for i in 0..n.saturating_sub(1) {
        j.set(i, i + 1, Q::one());
    }
    j
}

fn build_walk_module(
    q: &Quiver,
    word: &[String],
    steps: &[Step],
    n: usize,
    lambda: Option<&Q>,
) -> Result<Representation, RepError> {
    // position k occupies the slot index[k] inside its vertex
    let mut dims: BTreeMap<String, usize> = BTreeMap::new();
    let mut slot = Vec::new();
    for v in word {
        let d = dims.entry(v.clone()).or_insert(0);
        slot.push(*d);
        *d += n;
    }
    let mut maps: BTreeMap<String, Matrix> = BTreeMap::new();
    for a in q.arrows() {
        maps.insert(a.id.clone(), Matrix::zeros(dims.get(&a.tgt).copied().unwrap_or(0), dims.get(&a.src).copied().unwrap_or(0)));
    }
    let len = word.len();
    for (k, st) in steps.iter().enumerate() {
        let (from, to) = if st.direct { (k, (k + 1) % len) } else { ((k + 1) % len, k) };
        let block = match (k, lambda) {
            (0, Some(l)) => {
                let j = jordan_block(n, l);
                if st.direct {
                    j
                } else {
                    j.inverse().expect("λ is nonzero")
                }
            }
            _ => Matrix::identity(n),
        };
        let m = maps.get_mut(&st.arrow).expect("arrow");
        let mut cur = m.submatrix(slot[to], slot[from], n, n);
        cur = cur.add(&block);
        m.paste(slot[to], slot[from], &cur);
    }
    Representation::new(q, dims, maps)
}

/// Parses a word written with spaces or commas between arcs.
pub fn parse_word(s: &str) -> Vec<String> {
    s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(|t| t.to_string()).collect()
}
