//! The skew group quiver `Q_G` and potential `S_G`, the maps `ι` and `ι′`,
//! the dual action `σ̂`, and the isomorphism of the double skew quiver with
//! the original quiver.
//!
//! Naming in `Q_G`: a fixed vertex `i` gives `i+` and `i-`; an orbit `{j, σj}`
//! gives a single vertex named after its representative. A representative
//! arrow `α` gives `α+` and `α-`, except when both endpoints are moved, where
//! it gives a single arrow keeping the bare name `α`.

pub mod group_algebra;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::algebra::{AlgebraError, Path, PathExpr, Potential, Qp, Quiver, QuiverMorphism};
use crate::involution::{
    check_potential_invariance, is_admissible, validate_action, w_orbits, Involution, InvolutionError, OrbitChoice,
    Partition,
};
use crate::linalg::{q, qr, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkewError {
    #[error(transparent)]
    Action(#[from] InvolutionError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("orbit choice does not cover orbit {0}")]
    IncompleteChoice(String),
    #[error("potential is not invariant under the action")]
    NotInvariant,
    #[error("orbit choice is not admissible")]
    ChoiceNotAdmissible,
    #[error("isomorphism check failed: {0}")]
    IsomorphismFailure(String),
}

impl SkewError {
    pub fn name(&self) -> &'static str {
        match self {
            SkewError::Action(e) => e.name(),
            SkewError::Algebra(e) => e.name(),
            SkewError::IncompleteChoice(_) => "IncompleteChoice",
            SkewError::NotInvariant => "NotInvariant",
            SkewError::ChoiceNotAdmissible => "ChoiceNotAdmissible",
            SkewError::IsomorphismFailure(_) => "IsomorphismFailure",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
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

    pub fn suffix(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    pub fn value(self) -> Q {
        match self {
            Sign::Plus => Q::one(),
            Sign::Minus => -Q::one(),
        }
    }
}

/// Which endpoints of an arrow are fixed (`V`) or moved (`W`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArrowCase {
    VV,
    VW,
    WV,
    WW,
}

impl ArrowCase {
    pub fn of(part: &Partition, src: &str, tgt: &str) -> ArrowCase {
        match (part.is_fixed(src), part.is_fixed(tgt)) {
            (true, true) => ArrowCase::VV,
            (true, false) => ArrowCase::VW,
            (false, true) => ArrowCase::WV,
            (false, false) => ArrowCase::WW,
        }
    }
}

/// Where a vertex of `Q_G` comes from: `e_base^sign`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexProv {
    pub base: String,
    pub sign: Sign,
    pub fixed: bool,
}

/// Where an arrow of `Q_G` comes from: `rep^sign` for a representative arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowProv {
    pub rep: String,
    pub sign: Sign,
    pub case: ArrowCase,
}

/// The skew quiver with its provenance tables.
#[derive(Debug, Clone)]
pub struct SkewContext {
    pub base: Quiver,
    pub sigma: Involution,
    pub part: Partition,
    pub choice: OrbitChoice,
    pub quiver_g: Quiver,
    pub vertex_prov: BTreeMap<String, VertexProv>,
    pub arrow_prov: BTreeMap<String, ArrowProv>,
    pub potential_g: Option<Potential>,
}

impl SkewContext {
    /// Name of the `Q_G` vertex `e_v^s` (the sign is ignored for moved vertices).
    pub fn vertex_name(&self, v: &str, s: Sign) -> String {
        if self.part.is_fixed(v) {
            format!("{v}{}", s.suffix())
        } else {
            self.orbit_rep(v).to_string()
        }
    }

    /// The chosen representative of the orbit of a moved vertex.
    pub fn orbit_rep<'a>(&'a self, v: &'a str) -> &'a str {
        if self.choice.o_w.contains(v) {
            v
        } else {
            self.sigma.vertex(v)
        }
    }

    /// `(representative, μ)` with `β = σ^μ(representative)`.
    pub fn arrow_rep<'a>(&'a self, beta: &'a str) -> (&'a str, bool) {
        if self.choice.o_arrows.contains(beta) {
            (beta, false)
        } else {
            (self.sigma.arrow(beta), true)
        }
    }

    /// Name of the `Q_G` arrow `α^s` for a representative `α`.
    pub fn arrow_name(&self, rep: &str, s: Sign) -> String {
        let a = self.base.arrow(rep).expect("representative arrow");
        match ArrowCase::of(&self.part, &a.src, &a.tgt) {
            ArrowCase::WW => rep.to_string(),
            _ => format!("{rep}{}", s.suffix()),
        }
    }

    fn g_path(&self, arrow: &str) -> Path {
        Path::arrow(&self.quiver_g, arrow).expect("arrow of Q_G")
    }

    fn g_vertex(&self, v: &str) -> Path {
        Path::trivial(v)
    }

    pub fn qp_g(&self) -> Option<Qp> {
        self.potential_g.as_ref().map(|s| Qp::new(self.quiver_g.clone(), s.clone()))
    }
}

/// Builds `Q_G` for a validated action and a complete orbit choice.
pub fn skew_quiver(q: &Quiver, s: &Involution, choice: &OrbitChoice) -> Result<SkewContext, SkewError> {
    let part = validate_action(q, s)?;
    for (a, b) in w_orbits(q, s) {
        if choice.o_w.contains(&a) == choice.o_w.contains(&b) {
            return Err(SkewError::IncompleteChoice(format!("{{{a}, {b}}}")));
        }
    }
    for a in q.arrows() {
        let b = s.arrow(&a.id);
        if choice.o_arrows.contains(&a.id) == choice.o_arrows.contains(b) && a.id != b {
            return Err(SkewError::IncompleteChoice(format!("{{{}, {b}}}", a.id)));
        }
        if a.id == b && !choice.o_arrows.contains(&a.id) {
            return Err(SkewError::IncompleteChoice(a.id.clone()));
        }
    }
    let mut ctx = SkewContext {
        base: q.clone(),
        sigma: s.clone(),
        part: part.clone(),
        choice: choice.clone(),
        quiver_g: Quiver::new(),
        vertex_prov: BTreeMap::new(),
        arrow_prov: BTreeMap::new(),
        potential_g: None,
    };
    let mut qg = Quiver::new();
    for v in q.vertices() {
        if part.is_fixed(v) {
            for sg in [Sign::Plus, Sign::Minus] {
                let name = format!("{v}{}", sg.suffix());
                qg.add_vertex(name.clone())?;
                ctx.vertex_prov.insert(name, VertexProv { base: v.clone(), sign: sg, fixed: true });
            }
        } else if choice.o_w.contains(v) {
            qg.add_vertex(v.clone())?;
            ctx.vertex_prov.insert(v.clone(), VertexProv { base: v.clone(), sign: Sign::Plus, fixed: false });
        }
    }
    for a in q.arrows() {
        if !choice.o_arrows.contains(&a.id) {
            continue;
        }
        let case = ArrowCase::of(&part, &a.src, &a.tgt);
        let signs: &[Sign] = if case == ArrowCase::WW { &[Sign::Plus] } else { &[Sign::Plus, Sign::Minus] };
        for &sg in signs {
            let (ss, st) = match case {
                ArrowCase::VV => (sg, sg),
                ArrowCase::VW => (sg, Sign::Plus),
                ArrowCase::WV => (Sign::Plus, sg),
                ArrowCase::WW => (Sign::Plus, Sign::Plus),
            };
            let name = ctx.arrow_name(&a.id, sg);
            qg.add_arrow(name.clone(), ctx.vertex_name(&a.src, ss), ctx.vertex_name(&a.tgt, st))?;
            ctx.arrow_prov.insert(name, ArrowProv { rep: a.id.clone(), sign: sg, case });
        }
    }
    ctx.quiver_g = qg;
    Ok(ctx)
}

/// `ι` of a single arrow of `Q` (any member of its orbit).
pub fn iota_arrow(ctx: &SkewContext, beta: &str) -> PathExpr {
    let (rep, mu) = ctx.arrow_rep(beta);
    let a = ctx.base.arrow(rep).expect("arrow");
    let case = ArrowCase::of(&ctx.part, &a.src, &a.tgt);
    let plus = PathExpr::from_path(ctx.g_path(&ctx.arrow_name(rep, Sign::Plus)));
    match case {
        ArrowCase::WW => plus,
        ArrowCase::VV => plus.add(&PathExpr::from_path(ctx.g_path(&ctx.arrow_name(rep, Sign::Minus)))),
        ArrowCase::VW | ArrowCase::WV => {
            let minus = PathExpr::from_path(ctx.g_path(&ctx.arrow_name(rep, Sign::Minus)));
            if mu {
                plus.sub(&minus)
            } else {
                plus.add(&minus)
            }
        }
    }
}

/// `ι(w) = 2^s ι(α₁)⋯ι(α_r)`, `s` counting the arrows `α₁ … α_{r−1}` that
/// start at a moved vertex. On a trivial path, `ι(e_i) = i⁺ + i⁻` for a fixed
/// vertex and half the orbit vertex for a moved one.
pub fn iota(ctx: &SkewContext, w: &Path) -> PathExpr {
    if w.arrows.is_empty() {
        let v = &w.src;
        return if ctx.part.is_fixed(v) {
            PathExpr::from_path(ctx.g_vertex(&ctx.vertex_name(v, Sign::Plus)))
                .add(&PathExpr::from_path(ctx.g_vertex(&ctx.vertex_name(v, Sign::Minus))))
        } else {
            PathExpr::term(qr(1, 2), ctx.g_vertex(&ctx.vertex_name(v, Sign::Plus)))
        };
    }
    let r = w.arrows.len();
    let mut s = 0u32;
    let mut acc: Option<PathExpr> = None;
    for (k, a) in w.arrows.iter().enumerate() {
        if k + 1 < r && !ctx.part.is_fixed(ctx.base.src(a).expect("arrow")) {
            s += 1;
        }
        let term = iota_arrow(ctx, a);
        acc = Some(match acc {
            None => term,
            Some(x) => x.mul(&term),
        });
    }
    acc.expect("nonempty").scale(&q(1 << s))
}

/// Linear extension of [`iota`].
pub fn iota_expr(ctx: &SkewContext, x: &PathExpr) -> PathExpr {
    let mut out = PathExpr::zero();
    for (p, c) in x.terms() {
        out = out.add(&iota(ctx, p).scale(c));
    }
    out
}

/// Keeps the terms of `x` starting at `src` (if given) and ending at `tgt` (if given).
fn cut(x: &PathExpr, tgt: Option<&str>, src: Option<&str>) -> PathExpr {
    let mut out = PathExpr::zero();
    for (p, c) in x.terms() {
        if tgt.is_none_or(|t| p.tgt == t) && src.is_none_or(|s| p.src == s) {
            out.add_term(c.clone(), p.clone());
        }
    }
    out
}

/// `ι(σw)` from `ι(w)` by idempotent cuts at the fixed endpoints.
pub fn iota_sigma(ctx: &SkewContext, w: &Path) -> PathExpr {
    let x = iota(ctx, w);
    let (i, j) = (&w.src, &w.tgt);
    let vi = ctx.part.is_fixed(i);
    let vj = ctx.part.is_fixed(j);
    let ip = ctx.vertex_name(i, Sign::Plus);
    let im = ctx.vertex_name(i, Sign::Minus);
    let jp = ctx.vertex_name(j, Sign::Plus);
    let jm = ctx.vertex_name(j, Sign::Minus);
    match (vi, vj) {
        (true, true) => cut(&x, Some(&jp), Some(&ip))
            .add(&cut(&x, Some(&jm), Some(&im)))
            .sub(&cut(&x, Some(&jp), Some(&im)))
            .sub(&cut(&x, Some(&jm), Some(&ip))),
        (true, false) => cut(&x, None, Some(&ip)).sub(&cut(&x, None, Some(&im))),
        (false, true) => cut(&x, Some(&jp), None).sub(&cut(&x, Some(&jm), None)),
        (false, false) => x,
    }
}

/// `ι′` of one cycle: rotate to a fixed base vertex when there is one and
/// apply `ι`; a cycle through moved vertices only gets `2ι`. Terms that are
/// not cycles are commutators and vanish in the space of potentials.
pub fn iota_prime(ctx: &SkewContext, cycle: &Path) -> Result<PathExpr, SkewError> {
    let m = cycle.arrows.len();
    let base_pos = (0..m).find(|&k| {
        let v = ctx.base.tgt(&cycle.arrows[k]).expect("arrow");
        ctx.part.is_fixed(v)
    });
    let raw = match base_pos {
        Some(k) => {
            let mut arrows = cycle.arrows[k..].to_vec();
            arrows.extend_from_slice(&cycle.arrows[..k]);
            let v = ctx.base.tgt(&arrows[0])?.to_string();
            iota(ctx, &Path { src: v.clone(), tgt: v, arrows })
        }
        None => iota(ctx, cycle).scale(&q(2)),
    };
    let mut out = PathExpr::zero();
    for (p, c) in raw.terms() {
        if p.src == p.tgt {
            out.add_term(c.clone(), p.clone());
        }
    }
    Ok(out)
}

/// `S_G = ι′(S)`; fails unless `S` is invariant up to cyclic equivalence.
pub fn skew_potential(ctx: &SkewContext, s: &Potential) -> Result<Potential, SkewError> {
    if !check_potential_invariance(&ctx.base, s, &ctx.sigma) {
        return Err(SkewError::NotInvariant);
    }
    let mut total = PathExpr::zero();
    for (w, c) in s.expr().terms() {
        total = total.add(&iota_prime(ctx, w)?.scale(c));
    }
    Ok(Potential::new(&ctx.quiver_g, &total)?)
}

/// Skew quiver and potential in one step.
pub fn skew_qp(qp: &Qp, s: &Involution, choice: &OrbitChoice) -> Result<SkewContext, SkewError> {
    let mut ctx = skew_quiver(&qp.quiver, s, choice)?;
    ctx.potential_g = Some(skew_potential(&ctx, &qp.potential)?);
    Ok(ctx)
}

/// `δ_v`: `+1` on chosen representatives, `−1` on the other orbit member.
fn delta(ctx: &SkewContext, v: &str) -> Q {
    if ctx.choice.o_w.contains(v) {
        Q::one()
    } else {
        -Q::one()
    }
}

/// The dual action on `Q_G` with its signs: `i^± ↦ i^∓` on fixed vertices,
/// orbit vertices fixed, `α^± ↦ δ α^∓` (`δ` the product of the `δ` of the moved
/// endpoints of the representative), and `α ↦ δ_i δ_j α` on arrows between
/// moved vertices.
pub fn dual_action_signed(ctx: &SkewContext) -> QuiverMorphism {
    let mut m = QuiverMorphism::default();
    for (name, prov) in &ctx.vertex_prov {
        let img = if prov.fixed { ctx.vertex_name(&prov.base, prov.sign.flip()) } else { name.clone() };
        m.vertex_map.insert(name.clone(), img);
    }
    for (name, prov) in &ctx.arrow_prov {
        let a = ctx.base.arrow(&prov.rep).expect("arrow");
        let (c, img) = match prov.case {
            ArrowCase::VV => (Q::one(), ctx.arrow_name(&prov.rep, prov.sign.flip())),
            ArrowCase::VW => (delta(ctx, &a.tgt), ctx.arrow_name(&prov.rep, prov.sign.flip())),
            ArrowCase::WV => (delta(ctx, &a.src), ctx.arrow_name(&prov.rep, prov.sign.flip())),
            ArrowCase::WW => (delta(ctx, &a.src) * delta(ctx, &a.tgt), name.clone()),
        };
        m.arrow_map.insert(name.clone(), (c, img));
    }
    m
}

/// The dual action as a plain involution of `Q_G`; requires an admissible
/// choice, for which every sign is `+1`.
pub fn dual_action(ctx: &SkewContext) -> Result<Involution, SkewError> {
    if !is_admissible(&ctx.base, &ctx.sigma, &ctx.choice) {
        return Err(SkewError::ChoiceNotAdmissible);
    }
    let m = dual_action_signed(ctx);
    debug_assert!(m.arrow_map.values().all(|(c, _)| c.is_one()));
    Ok(Involution::from_maps(
        m.vertex_map.clone(),
        m.arrow_map.iter().map(|(k, (_, v))| (k.clone(), v.clone())).collect(),
    ))
}

/// The admissible choice for the second skew: `i+` for each fixed `i`, and the
/// arrows of `Q_G` with endpoints among orbit vertices and `i+` vertices.
pub fn second_choice(ctx: &SkewContext) -> OrbitChoice {
    let o_w: BTreeSet<String> = ctx.part.v.iter().map(|i| ctx.vertex_name(i, Sign::Plus)).collect();
    let good = |v: &str| o_w.contains(v) || !ctx.vertex_prov[v].fixed;
    let o_arrows =
        ctx.quiver_g.arrows().iter().filter(|a| good(&a.src) && good(&a.tgt)).map(|a| a.id.clone()).collect();
    OrbitChoice { o_w, o_arrows, admissible: true }
}

/// Outcome of the double skew comparison.
#[derive(Debug, Clone)]
pub struct DoubleSkewReport {
    /// `Q → Q_Ĝ`.
    pub xi: QuiverMorphism,
    pub second: SkewContext,
    pub paths_checked: usize,
}

impl fmt::Display for DoubleSkewReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "double skew: OK")?;
        writeln!(f, "vertices: {}", self.second.quiver_g.vertices().len())?;
        writeln!(f, "arrows: {}", self.second.quiver_g.arrows().len())?;
        for (v, w) in &self.xi.vertex_map {
            writeln!(f, "xi {v} -> {w}")?;
        }
        for (a, (_, b)) in &self.xi.arrow_map {
            writeln!(f, "xi {a} -> {b}")?;
        }
        write!(f, "scaling law checked on {} paths", self.paths_checked)
    }
}

/// The vertex and arrow map `Q → Q_Ĝ`.
pub fn xi_map(ctx: &SkewContext) -> QuiverMorphism {
    let mut m = QuiverMorphism::default();
    for v in ctx.base.vertices() {
        let img = if ctx.part.is_fixed(v) {
            format!("{v}+")
        } else if ctx.choice.o_w.contains(v) {
            format!("{v}+")
        } else {
            format!("{}-", ctx.sigma.vertex(v))
        };
        m.vertex_map.insert(v.clone(), img);
    }
    for a in ctx.base.arrows() {
        let (rep, mu) = ctx.arrow_rep(&a.id);
        let case = ArrowCase::of(&ctx.part, &a.src, &a.tgt);
        let img = match case {
            ArrowCase::VV => format!("{rep}+"),
            ArrowCase::VW | ArrowCase::WV => format!("{rep}+{}", if mu { "-" } else { "+" }),
            ArrowCase::WW => format!("{rep}{}", if mu { "-" } else { "+" }),
        };
        m.arrow_map.insert(a.id.clone(), (Q::one(), img));
    }
    m
}

/// Number of arrows crossing between fixed and moved vertices in the
/// direction opposite to the start of `w`.
fn crossing_count(ctx: &SkewContext, w: &Path) -> u32 {
    let start_fixed = ctx.part.is_fixed(&w.src);
    w.arrows
        .iter()
        .filter(|a| {
            let arr = ctx.base.arrow(a).expect("arrow");
            let (sf, tf) = (ctx.part.is_fixed(&arr.src), ctx.part.is_fixed(&arr.tgt));
            if start_fixed {
                !sf && tf
            } else {
                sf && !tf
            }
        })
        .count() as u32
}

/// Builds `Q_Ĝ` from the dual action, checks that `ξ` is an equivariant
/// quiver isomorphism, and checks the scaling law of `ι_G ∘ ι` on every path
/// of length at most `max_len`.
pub fn double_skew_check(q: &Quiver, s: &Involution, choice: &OrbitChoice, max_len: usize) -> Result<DoubleSkewReport, SkewError> {
    let ctx = skew_quiver(q, s, choice)?;
    let hat = dual_action(&ctx)?;
    let choice2 = second_choice(&ctx);
    if !is_admissible(&ctx.quiver_g, &hat, &choice2) {
        return Err(SkewError::IsomorphismFailure("second orbit choice is not admissible".into()));
    }
    let ctx2 = skew_quiver(&ctx.quiver_g, &hat, &choice2)?;
    let xi = xi_map(&ctx);
    if !xi.is_isomorphism(q, &ctx2.quiver_g) {
        let why = xi.validate(q, &ctx2.quiver_g).err().map(|e| e.to_string()).unwrap_or_else(|| "not bijective".into());
        return Err(SkewError::IsomorphismFailure(why));
    }
    // equivariance: ξ∘σ = σ̂̂∘ξ
    let hat2 = dual_action_signed(&ctx2);
    let lhs = xi.compose_after(&s.as_morphism());
    let rhs = hat2.compose_after(&xi);
    if lhs != rhs {
        let witness = lhs
            .arrow_map
            .iter()
            .find(|(k, v)| rhs.arrow_map.get(*k) != Some(v))
            .map(|(k, _)| format!("arrow {k}"))
            .unwrap_or_else(|| "vertex map".into());
        return Err(SkewError::IsomorphismFailure(format!("not equivariant at {witness}")));
    }
    // ξ⁻¹ : Q_Ĝ → Q
    let mut xi_inv = QuiverMorphism::default();
    for (k, v) in &xi.vertex_map {
        xi_inv.vertex_map.insert(v.clone(), k.clone());
    }
    for (k, (_, v)) in &xi.arrow_map {
        xi_inv.arrow_map.insert(v.clone(), (Q::one(), k.clone()));
    }
    let mut checked = 0;
    for len in 0..=max_len {
        for w in q.paths_of_length(len) {
            let img = iota_expr(&ctx2, &iota(&ctx, &w));
            let back = crate::algebra::apply_quiver_morphism(&xi_inv, &img)?;
            let m = w.len() as i32;
            let p = crossing_count(&ctx, &w) as i32;
            let both_moved = !ctx.part.is_fixed(&w.src) && !ctx.part.is_fixed(&w.tgt);
            let want = if both_moved {
                let sw = s.apply_path(&w);
                PathExpr::from_path(w.clone()).add(&PathExpr::from_path(sw)).scale(&pow2(m + p - 1))
            } else {
                PathExpr::from_path(w.clone()).scale(&pow2(m + p))
            };
            if back != want {
                return Err(SkewError::IsomorphismFailure(format!("scaling law fails on {w}: got {back}, want {want}")));
            }
            checked += 1;
        }
    }
    Ok(DoubleSkewReport { xi, second: ctx2, paths_checked: checked })
}

fn pow2(e: i32) -> Q {
    if e >= 0 {
        q(1i64 << e)
    } else {
        qr(1, 1i64 << (-e))
    }
}

/// The rescaling of `Q` used to turn transported relations back into the
/// original ones: `¼` on arrows from a fixed to a moved vertex, `½` otherwise.
pub fn zeta_scalars(ctx: &SkewContext) -> BTreeMap<String, Q> {
    ctx.base
        .arrows()
        .iter()
        .map(|a| {
            let c = if ArrowCase::of(&ctx.part, &a.src, &a.tgt) == ArrowCase::VW { qr(1, 4) } else { qr(1, 2) };
            (a.id.clone(), c)
        })
        .collect()
}

#[cfg(test)]
mod tests;
