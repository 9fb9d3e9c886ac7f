//! Induction to the skew group algebra and restriction back.
//!
//! Induction is computed inside the concrete algebra `kQ ⊗ kG`: the module
//! `ΛG ⊗_Λ M = M ⊕ σ⊗M` is built on the doubled space, cut by the idempotents
//! of the skew quiver, and each arrow of the skew quiver acts by the element
//! it names. Restriction uses the closed formulas obtained by the same
//! bookkeeping in the other direction.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{RepError, Representation};
use crate::algebra::Path;
use crate::linalg::{Matrix, Q};
use crate::skew::group_algebra::{GroupAlgebra, SkewElem};
use crate::skew::{ArrowCase, Sign, SkewContext};

/// The doubled space `M ⊕ σ⊗M`: at vertex `v` the blocks `M(v)` and `M(σv)`.
struct Doubled<'a> {
    ctx: &'a SkewContext,
    r: &'a Representation,
    off: BTreeMap<(String, bool), usize>,
    n: usize,
}

impl<'a> Doubled<'a> {
    fn new(ctx: &'a SkewContext, r: &'a Representation) -> Self {
        let mut off = BTreeMap::new();
        let mut n = 0;
        for v in ctx.base.vertices() {
            for copy in [false, true] {
                off.insert((v.clone(), copy), n);
                n += r.dim(&Self::space(ctx, v, copy));
            }
        }
        Doubled { ctx, r, off, n }
    }

    fn space(ctx: &SkewContext, v: &str, copy: bool) -> String {
        if copy {
            ctx.sigma.vertex(v).to_string()
        } else {
            v.to_string()
        }
    }

    fn block_dim(&self, v: &str, copy: bool) -> usize {
        self.r.dim(&Self::space(self.ctx, v, copy))
    }

    /// `p ⊗ 1` acts by `M(p)` on the first copy and by `M(σp)` on the second.
    fn path(&self, p: &Path) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for copy in [false, true] {
            let path = if copy { self.ctx.sigma.apply_path(p) } else { p.clone() };
            let block = self.r.eval_path(&path);
            m.paste(self.off[&(p.tgt.clone(), copy)], self.off[&(p.src.clone(), copy)], &block);
        }
        m
    }

    /// `1 ⊗ σ` exchanges the two copies and moves `v` to `σv`.
    fn sigma(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for v in self.ctx.base.vertices() {
            let sv = self.ctx.sigma.vertex(v).to_string();
            for copy in [false, true] {
                let d = self.block_dim(v, copy);
                m.paste(self.off[&(sv.clone(), !copy)], self.off[&(v.clone(), copy)], &Matrix::identity(d));
            }
        }
        m
    }

    fn element(&self, x: &SkewElem) -> Matrix {
        let s = self.sigma();
        let mut m = Matrix::zeros(self.n, self.n);
        for ((p, g), c) in x.terms() {
            let mut t = self.path(p);
            if *g {
                t = t.mul(&s);
            }
            m = m.add(&t.scale(c));
        }
        m
    }
}

/// Columns scaled so that the first nonzero entry of each is 1.
fn normalize_columns(b: &Matrix) -> Matrix {
    let cols: Vec<Vec<Q>> = (0..b.cols())
        .map(|c| {
            let col = b.col(c);
            let lead = col.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(Q::one);
            col.iter().map(|x| x / &lead).collect()
        })
        .collect();
    Matrix::from_cols(b.rows(), &cols)
}

/// Induces a representation of `Q` to the skew quiver `Q_G` of `ctx`.
pub fn induce(ctx: &SkewContext, r: &Representation) -> Result<Representation, RepError> {
    let alg = GroupAlgebra::from_context(ctx);
    let dbl = Doubled::new(ctx, r);
    let mut bases: BTreeMap<String, Matrix> = BTreeMap::new();
    for v in ctx.quiver_g.vertices() {
        let prov = &ctx.vertex_prov[v];
        let e = dbl.element(&alg.idempotent(&prov.base, prov.sign));
        bases.insert(v.clone(), normalize_columns(&e.column_space()));
    }
    let dims: BTreeMap<String, usize> = bases.iter().map(|(v, b)| (v.clone(), b.cols())).collect();
    let mut maps = BTreeMap::new();
    for a in ctx.quiver_g.arrows() {
        let prov = &ctx.arrow_prov[&a.id];
        let m = dbl.element(&alg.arrow_element(&prov.rep, prov.sign));
        let (bs, bt) = (&bases[&a.src], &bases[&a.tgt]);
        let img = m.mul(bs);
        let block = if bt.cols() == 0 || bs.cols() == 0 {
            Matrix::zeros(bt.cols(), bs.cols())
        } else {
            bt.solve_matrix(&img).expect("arrow element maps between idempotent images")
        };
        maps.insert(a.id.clone(), block);
    }
    let out = Representation::new(&ctx.quiver_g, dims, maps)?;
    if let Some(qp) = ctx.qp_g() {
        out.check_relations(&qp)?;
    }
    Ok(out)
}

/// Restricts a representation of `Q_G` to `Q`.
///
/// A fixed vertex `i` carries `N(i⁺) ⊕ N(i⁻)` and both members of a moved
/// orbit carry the space of the orbit vertex. With `ρ` the representative of
/// the orbit of an arrow `α` and `μ = 0` when `α = ρ`, `μ = 1` otherwise:
/// between fixed vertices `α` acts by `diag(N(ρ⁺), N(ρ⁻))`; from fixed to moved
/// by `(N(ρ⁺)  (−1)^μ N(ρ⁻))`; from moved to fixed by `2 (N(ρ⁺); (−1)^μ N(ρ⁻))`;
/// between moved vertices by `2 N(ρ)`.
pub fn restrict(ctx: &SkewContext, n: &Representation) -> Result<Representation, RepError> {
    let plus = |v: &str| ctx.vertex_name(v, Sign::Plus);
    let minus = |v: &str| ctx.vertex_name(v, Sign::Minus);
    let mut dims = BTreeMap::new();
    for v in ctx.base.vertices() {
        let d = if ctx.part.is_fixed(v) { n.dim(&plus(v)) + n.dim(&minus(v)) } else { n.dim(&plus(v)) };
        dims.insert(v.clone(), d);
    }
    let two = Q::from_integer(2.into());
    let mut maps = BTreeMap::new();
    for a in ctx.base.arrows() {
        let (rep, mu) = ctx.arrow_rep(&a.id);
        let sign = if mu { -Q::one() } else { Q::one() };
        let np = n.map(&ctx.arrow_name(rep, Sign::Plus)).clone();
        let m = match ArrowCase::of(&ctx.part, &a.src, &a.tgt) {
            ArrowCase::VV => np.direct_sum(n.map(&ctx.arrow_name(rep, Sign::Minus))),
            ArrowCase::VW => np.hstack(&n.map(&ctx.arrow_name(rep, Sign::Minus)).scale(&sign)),
            ArrowCase::WV => np.vstack(&n.map(&ctx.arrow_name(rep, Sign::Minus)).scale(&sign)).scale(&two),
            ArrowCase::WW => np.scale(&two),
        };
        maps.insert(a.id.clone(), m);
    }
    Representation::new(&ctx.base, dims, maps)
}
