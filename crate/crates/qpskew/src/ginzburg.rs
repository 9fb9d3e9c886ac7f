//! Ginzburg dg algebras at generator level, the extension of an action to
//! them, and the comparison between skewing the dg algebra and taking the
//! dg algebra of the skewed quiver with potential.
//!
//! The graded quiver keeps every arrow `a` in degree 0, adds a reverse `a*` in
//! degree −1, and a loop `t_v` in degree −2 at every vertex `v`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::algebra::{
    apply_quiver_morphism, cyclic_derivative, AlgebraError, Path, PathExpr, Qp, Quiver, QuiverMorphism,
};
use crate::involution::{is_admissible, validate_action, Involution, OrbitChoice};
use crate::linalg::{fmt_q, q, Q};
use crate::skew::{self, ArrowCase, SkewContext, SkewError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GinzburgError {
    #[error("d² ≠ 0 on generator {0}")]
    DifferentialNotSquareZero(String),
    #[error("action does not commute with d on generator {0}")]
    DoesNotCommuteWithDifferential(String),
    #[error("mismatch at generator {generator}: {left} vs {right}{hint}")]
    MismatchAtGenerator { generator: String, left: String, right: String, hint: String },
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl GinzburgError {
    pub fn name(&self) -> &'static str {
        match self {
            GinzburgError::DifferentialNotSquareZero(_) => "DifferentialNotSquareZero",
            GinzburgError::DoesNotCommuteWithDifferential(_) => "DoesNotCommuteWithDifferential",
            GinzburgError::MismatchAtGenerator { .. } => "MismatchAtGenerator",
            GinzburgError::Skew(e) => e.name(),
            GinzburgError::Algebra(e) => e.name(),
        }
    }
}

/// Name of the degree −1 reverse of an arrow.
pub fn bar(a: &str) -> String {
    format!("{a}*")
}

/// Name of the degree −2 loop at a vertex.
pub fn loop_name(v: &str) -> String {
    format!("t_{v}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    Arrow,
    Reverse,
    Loop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedQuiver {
    pub quiver: Quiver,
    pub degree: BTreeMap<String, i32>,
    /// For each generator: its kind and the arrow or vertex of the original quiver.
    pub origin: BTreeMap<String, (GenKind, String)>,
}

impl GradedQuiver {
    pub fn path_degree(&self, p: &Path) -> i32 {
        p.arrows.iter().map(|a| self.degree[a]).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ginzburg {
    pub graded: GradedQuiver,
    pub d: BTreeMap<String, PathExpr>,
}

impl Ginzburg {
    /// Extends `d` to a path by the graded Leibniz rule.
    pub fn apply_d_path(&self, p: &Path) -> PathExpr {
        let mut out = PathExpr::zero();
        let mut sign_deg = 0;
        // arrows are written left to right: p = a₁ a₂ ⋯ a_m
        for (k, a) in p.arrows.iter().enumerate() {
            let da = &self.d[a];
            if !da.is_zero() {
                let left = &p.arrows[..k];
                let right = &p.arrows[k + 1..];
                let mut term = PathExpr::zero();
                for (mid, c) in da.terms() {
                    let mut arrows = left.to_vec();
                    arrows.extend(mid.arrows.iter().cloned());
                    arrows.extend(right.iter().cloned());
                    term.add_term(c.clone(), Path { src: p.src.clone(), tgt: p.tgt.clone(), arrows });
                }
                let s = if sign_deg % 2 == 0 { Q::one() } else { -Q::one() };
                out = out.add(&term.scale(&s));
            }
            sign_deg += self.graded.degree[a];
        }
        out
    }

    pub fn apply_d(&self, x: &PathExpr) -> PathExpr {
        let mut out = PathExpr::zero();
        for (p, c) in x.terms() {
            out = out.add(&self.apply_d_path(p).scale(c));
        }
        out
    }

    /// Generators on which `d ∘ d` does not vanish.
    pub fn square_defects(&self) -> Vec<String> {
        self.d.iter().filter(|(_, v)| !self.apply_d(v).is_zero()).map(|(k, _)| k.clone()).collect()
    }
}

impl fmt::Display for Ginzburg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.graded.quiver.arrows() {
            writeln!(f, "deg {} = {}; d({}) = {}", a.id, self.graded.degree[&a.id], a.id, self.d[&a.id])?;
        }
        Ok(())
    }
}

/// Builds the graded quiver of `q`.
pub fn graded_quiver(q: &Quiver) -> Result<GradedQuiver, AlgebraError> {
    let mut g = Quiver::new();
    let mut degree = BTreeMap::new();
    let mut origin = BTreeMap::new();
    for v in q.vertices() {
        g.add_vertex(v.clone())?;
    }
    for a in q.arrows() {
        g.add_arrow(a.id.clone(), a.src.clone(), a.tgt.clone())?;
        degree.insert(a.id.clone(), 0);
        origin.insert(a.id.clone(), (GenKind::Arrow, a.id.clone()));
    }
    for a in q.arrows() {
        g.add_arrow(bar(&a.id), a.tgt.clone(), a.src.clone())?;
        degree.insert(bar(&a.id), -1);
        origin.insert(bar(&a.id), (GenKind::Reverse, a.id.clone()));
    }
    for v in q.vertices() {
        g.add_arrow(loop_name(v), v.clone(), v.clone())?;
        degree.insert(loop_name(v), -2);
        origin.insert(loop_name(v), (GenKind::Loop, v.clone()));
    }
    Ok(GradedQuiver { quiver: g, degree, origin })
}

/// The Ginzburg data of a QP; `d²` is checked on every generator.
pub fn ginzburg(qp: &Qp) -> Result<Ginzburg, GinzburgError> {
    let graded = graded_quiver(&qp.quiver)?;
    let mut d = BTreeMap::new();
    for a in qp.quiver.arrows() {
        d.insert(a.id.clone(), PathExpr::zero());
        d.insert(bar(&a.id), cyclic_derivative(&qp.quiver, &qp.potential, &a.id)?);
    }
    for v in qp.quiver.vertices() {
        let mut x = PathExpr::zero();
        for a in qp.quiver.arrows() {
            if &a.tgt == v {
                x.add_term(Q::one(), Path::from_arrows(&graded.quiver, &[&a.id, &bar(&a.id)])?);
            }
            if &a.src == v {
                x.add_term(-Q::one(), Path::from_arrows(&graded.quiver, &[&bar(&a.id), &a.id])?);
            }
        }
        d.insert(loop_name(v), x);
    }
    let g = Ginzburg { graded, d };
    if let Some(bad) = g.square_defects().into_iter().next() {
        return Err(GinzburgError::DifferentialNotSquareZero(bad));
    }
    Ok(g)
}

/// The action on the graded quiver: `a* ↦ σ(a)*`, `t_v ↦ t_σv`. Checked to
/// commute with `d` on every generator.
pub fn extend_action_to_ginzburg(qp: &Qp, s: &Involution) -> Result<Involution, GinzburgError> {
    validate_action(&qp.quiver, s).map_err(SkewError::from)?;
    let g = ginzburg(qp)?;
    let sg = lift_involution(&qp.quiver, s);
    for gen in g.graded.quiver.arrows() {
        let lhs = sg.apply(&g.d[&gen.id])?;
        let rhs = &g.d[sg.arrow(&gen.id)];
        if &lhs != rhs {
            return Err(GinzburgError::DoesNotCommuteWithDifferential(gen.id.clone()));
        }
    }
    Ok(sg)
}

fn lift_involution(q: &Quiver, s: &Involution) -> Involution {
    let vertex = s.vertex_map().clone();
    let mut arrow = BTreeMap::new();
    for a in q.arrows() {
        let b = s.arrow(&a.id);
        arrow.insert(a.id.clone(), b.to_string());
        arrow.insert(bar(&a.id), bar(b));
    }
    for v in q.vertices() {
        arrow.insert(loop_name(v), loop_name(s.vertex(v)));
    }
    Involution::from_maps(vertex, arrow)
}

/// One row of the comparison table.
#[derive(Debug, Clone)]
pub struct CompareRow {
    pub generator: String,
    pub scalar: Q,
    pub transported: PathExpr,
    pub skewed: PathExpr,
}

#[derive(Debug, Clone)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{}\tzeta={}\tzeta(d_G x) = {}\td(zeta x) = {}", r.generator, fmt_q(&r.scalar), r.transported, r.skewed)?;
        }
        write!(f, "ginzburg-check: OK ({} generators)", self.rows.len())
    }
}

/// The rescaling `ζ` on the Ginzburg generators of `(Q_G, S_G)`: 1, 4 or 8 on
/// reverses by the endpoint case of the underlying arrow of `Q`, and 1 or 4 on
/// loops at vertices coming from fixed or moved vertices.
fn zeta_scalar(ctx: &SkewContext, kind: GenKind, origin: &str) -> Q {
    match kind {
        GenKind::Arrow => Q::one(),
        GenKind::Reverse => match ctx.arrow_prov[origin].case {
            ArrowCase::VV => Q::one(),
            ArrowCase::VW | ArrowCase::WV => q(4),
            ArrowCase::WW => q(8),
        },
        GenKind::Loop => {
            if ctx.vertex_prov[origin].fixed {
                Q::one()
            } else {
                q(4)
            }
        }
    }
}

/// Compares (A) the skew of the Ginzburg data of `qp` with (B) the Ginzburg
/// data of the skewed QP. Every generator `x` of (B) is checked to satisfy
/// `ζ(d_B x) = d_A(ζ x)`, where `ζ` identifies generators of (B) with scalar
/// multiples of generators of (A).
pub fn skew_ginzburg_compare(qp: &Qp, s: &Involution, choice: &OrbitChoice) -> Result<CompareReport, GinzburgError> {
    if !is_admissible(&qp.quiver, s, choice) {
        return Err(SkewError::ChoiceNotAdmissible.into());
    }
    let sbar = extend_action_to_ginzburg(qp, s)?;
    let g = ginzburg(qp)?;
    // (A) skew the graded quiver with the extended action and choice
    let mut arrows_bar: BTreeSet<String> = BTreeSet::new();
    for a in &choice.o_arrows {
        arrows_bar.insert(a.clone());
        arrows_bar.insert(bar(a));
    }
    let part = validate_action(&qp.quiver, s).map_err(SkewError::from)?;
    for v in qp.quiver.vertices() {
        if part.is_fixed(v) || choice.o_w.contains(v) {
            arrows_bar.insert(loop_name(v));
        }
    }
    let choice_bar = OrbitChoice { o_w: choice.o_w.clone(), o_arrows: arrows_bar, admissible: true };
    let ctx_bar = skew::skew_quiver(&g.graded.quiver, &sbar, &choice_bar)?;
    // (B) skew QP, then Ginzburg
    let ctx = skew::skew_qp(qp, s, choice)?;
    let gb = ginzburg(&ctx.qp_g().expect("potential computed"))?;

    // ζ: generators of (B) ↦ scalar multiples of generators of (A)
    let mut zeta = QuiverMorphism::default();
    for v in gb.graded.quiver.vertices() {
        zeta.vertex_map.insert(v.clone(), v.clone());
    }
    for a in ctx_bar.quiver_g.arrows() {
        let prov = &ctx_bar.arrow_prov[&a.id];
        let (kind, orig) = g.graded.origin[&prov.rep].clone();
        let b_name = match kind {
            GenKind::Arrow => ctx.arrow_name(&orig, prov.sign),
            GenKind::Reverse => bar(&ctx.arrow_name(&orig, prov.sign)),
            GenKind::Loop => loop_name(&ctx.vertex_name(&orig, prov.sign)),
        };
        let b_origin = &gb.graded.origin[&b_name].1;
        let c = zeta_scalar(&ctx, kind, b_origin);
        zeta.arrow_map.insert(b_name, (c, a.id.clone()));
    }
    zeta.validate(&gb.graded.quiver, &ctx_bar.quiver_g)?;

    let mut rows = Vec::new();
    for gen in gb.graded.quiver.arrows() {
        let (c, a_name) = zeta.arrow_map[&gen.id].clone();
        let transported = apply_quiver_morphism(&zeta, &gb.d[&gen.id])?;
        let prov = &ctx_bar.arrow_prov[&a_name];
        let rep = g.graded.quiver.arrow(&prov.rep)?;
        let (ss, st) = match prov.case {
            ArrowCase::VV => (prov.sign, prov.sign),
            ArrowCase::VW => (prov.sign, skew::Sign::Plus),
            ArrowCase::WV => (skew::Sign::Plus, prov.sign),
            ArrowCase::WW => (skew::Sign::Plus, skew::Sign::Plus),
        };
        let img = skew::iota_expr(&ctx_bar, &g.d[&rep.id]);
        let tgt = ctx_bar.vertex_name(&rep.tgt, st);
        let src = ctx_bar.vertex_name(&rep.src, ss);
        let mut d_a = PathExpr::zero();
        for (p, k) in img.terms() {
            if p.tgt == tgt && p.src == src {
                d_a.add_term(k.clone(), p.clone());
            }
        }
        let skewed = d_a.scale(&c);
        if transported != skewed {
            let hint = ratio_hint(&transported, &d_a);
            return Err(GinzburgError::MismatchAtGenerator {
                generator: gen.id.clone(),
                left: transported.to_string(),
                right: skewed.to_string(),
                hint,
            });
        }
        rows.push(CompareRow { generator: gen.id.clone(), scalar: c, transported, skewed });
    }
    Ok(CompareReport { rows })
}

/// If `x = c · y` for a single scalar `c`, names that scalar.
fn ratio_hint(x: &PathExpr, y: &PathExpr) -> String {
    let mut ratio: Option<Q> = None;
    for (p, c) in x.terms() {
        let d = y.coeff(p);
        if num_traits::Zero::is_zero(&d) {
            return String::new();
        }
        let r = c / d;
        if ratio.as_ref().is_some_and(|x| *x != r) {
            return String::new();
        }
        ratio = Some(r);
    }
    if x.terms().len() != y.terms().len() {
        return String::new();
    }
    ratio.map(|r| format!(" (scalar {} would match)", fmt_q(&r))).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Potential;
    use crate::involution::find_admissible;
    use proptest::prelude::*;

    fn cylinder() -> (Qp, Involution) {
        let q = Quiver::from_lists(
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
        );
        let mut x = PathExpr::from_path(Path::from_arrows(&q, &["f", "e", "d"]).unwrap());
        x = x.add(&PathExpr::from_path(Path::from_arrows(&q, &["f", "e'", "d'"]).unwrap()));
        let pot = Potential::new(&q, &x).unwrap();
        let s = Involution::from_swaps(&q, &[("3", "3'")], &[("d", "d'"), ("e", "e'")]).unwrap();
        (Qp::new(q, pot), s)
    }

    #[test]
    fn a2_loops() {
        let q = Quiver::from_lists(&["1", "2"], &[("a", "1", "2")]);
        let g = ginzburg(&Qp::new(q, Potential::zero())).unwrap();
        let gq = &g.graded.quiver;
        assert!(g.d["a*"].is_zero());
        assert_eq!(g.d["t_1"], PathExpr::from_path(Path::from_arrows(gq, &["a*", "a"]).unwrap()).scale(&-Q::one()));
        assert_eq!(g.d["t_2"], PathExpr::from_path(Path::from_arrows(gq, &["a", "a*"]).unwrap()));
    }

    #[test]
    fn single_vertex_loop() {
        let q = Quiver::from_lists(&["x"], &[]);
        let g = ginzburg(&Qp::new(q, Potential::zero())).unwrap();
        assert_eq!(g.graded.quiver.arrows().len(), 1);
        assert!(g.d["t_x"].is_zero());
    }

    #[test]
    fn cylinder_differential() {
        let (qp, _) = cylinder();
        let g = ginzburg(&qp).unwrap();
        let gq = &g.graded.quiver;
        assert_eq!(g.d["e*"], PathExpr::from_path(Path::from_arrows(gq, &["d", "f"]).unwrap()));
        let want = PathExpr::from_path(Path::from_arrows(gq, &["e", "d"]).unwrap())
            .add(&PathExpr::from_path(Path::from_arrows(gq, &["e'", "d'"]).unwrap()));
        assert_eq!(g.d["f*"], want);
    }

    #[test]
    fn cylinder_action_commutes() {
        let (qp, s) = cylinder();
        let sg = extend_action_to_ginzburg(&qp, &s).unwrap();
        assert_eq!(sg.arrow("e*"), "e'*");
        assert_eq!(sg.arrow("t_3"), "t_3'");
        assert_eq!(sg.arrow("f*"), "f*");
        let bad = Qp::new(qp.quiver.clone(), Potential::new(&qp.quiver, &PathExpr::from_path(Path::from_arrows(&qp.quiver, &["f", "e", "d"]).unwrap())).unwrap());
        assert_eq!(extend_action_to_ginzburg(&bad, &s).unwrap_err().name(), "DoesNotCommuteWithDifferential");
    }

    #[test]
    fn cylinder_compare() {
        let (qp, s) = cylinder();
        let choice = find_admissible(&qp.quiver, &s).unwrap().unwrap();
        let rep = skew_ginzburg_compare(&qp, &s, &choice).unwrap();
        assert!(rep.rows.iter().any(|r| r.scalar == q(4)));
        assert_eq!(rep.rows.len(), ctx_rows(&qp, &s));
    }

    fn ctx_rows(qp: &Qp, s: &Involution) -> usize {
        let c = find_admissible(&qp.quiver, s).unwrap().unwrap();
        let ctx = skew::skew_quiver(&qp.quiver, s, &c).unwrap();
        2 * ctx.quiver_g.arrows().len() + ctx.quiver_g.vertices().len()
    }

    #[test]
    fn moved_triangle_compare_uses_eight() {
        let q = Quiver::from_lists(
            &["x", "y", "y'", "z", "z'"],
            &[("a", "x", "y"), ("a'", "x", "y'"), ("c", "y", "z"), ("c'", "y'", "z'"), ("b", "z", "x"), ("b'", "z'", "x")],
        );
        let s = Involution::from_swaps(&q, &[("y", "y'"), ("z", "z'")], &[("a", "a'"), ("b", "b'"), ("c", "c'")]).unwrap();
        let x = PathExpr::from_path(Path::from_arrows(&q, &["b", "c", "a"]).unwrap())
            .add(&PathExpr::from_path(Path::from_arrows(&q, &["b'", "c'", "a'"]).unwrap()));
        let qp = Qp::new(q.clone(), Potential::new(&q, &x).unwrap());
        let choice = find_admissible(&q, &s).unwrap().unwrap();
        let rep = skew_ginzburg_compare(&qp, &s, &choice).unwrap();
        assert!(rep.rows.iter().any(|r| r.scalar == crate::linalg::q(8) && !r.skewed.is_zero()));
    }

    #[test]
    fn trivial_action_compare_has_unit_scalars() {
        let (qp, _) = cylinder();
        let id = Involution::identity(&qp.quiver);
        let choice = find_admissible(&qp.quiver, &id).unwrap().unwrap();
        let rep = skew_ginzburg_compare(&qp, &id, &choice).unwrap();
        assert!(rep.rows.iter().all(|r| r.scalar.is_one()));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn d_squares_to_zero(n in 1usize..4, ends in proptest::collection::vec((0usize..4, 0usize..4), 1..6), coeffs in proptest::collection::vec(-3i64..4, 8)) {
            let verts: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut quiver = Quiver::new();
            for v in &verts { quiver.add_vertex(v.clone()).unwrap(); }
            for (k, (x, y)) in ends.iter().enumerate() {
                quiver.add_arrow(format!("a{k}"), verts[x % n].clone(), verts[y % n].clone()).unwrap();
            }
            let cycles: Vec<Path> = (2..=3).flat_map(|l| quiver.paths_of_length(l)).filter(|p| p.is_cycle()).collect();
            let mut x = PathExpr::zero();
            for (p, c) in cycles.iter().zip(coeffs.iter()) {
                x.add_term(q(*c), p.clone());
            }
            let pot = Potential::new(&quiver, &x).unwrap();
            let g = ginzburg(&Qp::new(quiver, pot));
            prop_assert!(g.is_ok());
        }
    }
}
