//! A direct model of the skew group algebra `kQ ⊗ kG` for `G = {1, σ}`.
//!
//! Elements are finite sums `Σ c · (p ⊗ g)` with `p` a path of `Q` and
//! `g ∈ {1, σ}`, multiplied by `(p ⊗ g)(p' ⊗ g') = p·g(p') ⊗ gg'`. This is the
//! concrete algebra in which idempotents, arrows of the skew quiver, the maps
//! `ι`, `E` and the dual action are evaluated from their definitions. The
//! closed formulas in [`super`] are checked against it.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{compose, Path, PathExpr, Quiver};
use crate::involution::{Involution, Partition};
use crate::linalg::{fmt_q, q, qr, Q};

use super::{ArrowCase, Sign, SkewContext};

/// An element of `kQ ⊗ kG`; `true` in the key marks the `σ` component.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SkewElem {
    terms: BTreeMap<(Path, bool), Q>,
}

impl SkewElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(p: Path, g: bool) -> Self {
        let mut e = Self::zero();
        e.add_term(Q::one(), p, g);
        e
    }

    pub fn add_term(&mut self, c: Q, p: Path, g: bool) {
        if c.is_zero() {
            return;
        }
        let key = (p, g);
        let v = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(Path, bool), Q> {
        &self.terms
    }

    pub fn add(&self, o: &SkewElem) -> SkewElem {
        let mut out = self.clone();
        for ((p, g), c) in &o.terms {
            out.add_term(c.clone(), p.clone(), *g);
        }
        out
    }

    pub fn sub(&self, o: &SkewElem) -> SkewElem {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> SkewElem {
        let mut out = SkewElem::zero();
        for ((p, g), x) in &self.terms {
            out.add_term(x * c, p.clone(), *g);
        }
        out
    }

    /// The `1 ⊗ (…)`-part as a path expression, if the `σ` part vanishes.
    pub fn untwisted_part(&self) -> PathExpr {
        let mut e = PathExpr::zero();
        for ((p, g), c) in &self.terms {
            if !g {
                e.add_term(c.clone(), p.clone());
            }
        }
        e
    }
}

impl fmt::Display for SkewElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((p, g), c)| format!("{}*({p} ⊗ {})", fmt_q(c), if *g { "σ" } else { "1" }))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The ambient algebra together with the data needed to build its special elements.
pub struct GroupAlgebra<'a> {
    pub quiver: &'a Quiver,
    pub sigma: &'a Involution,
    pub part: &'a Partition,
    pub o_w: Vec<String>,
}

impl<'a> GroupAlgebra<'a> {
    pub fn from_context(ctx: &'a SkewContext) -> Self {
        GroupAlgebra { quiver: &ctx.base, sigma: &ctx.sigma, part: &ctx.part, o_w: ctx.choice.o_w.iter().cloned().collect() }
    }

    pub fn mul(&self, x: &SkewElem, y: &SkewElem) -> SkewElem {
        let mut out = SkewElem::zero();
        for ((p, g), a) in &x.terms {
            for ((r, h), b) in &y.terms {
                let gr = if *g { self.sigma.apply_path(r) } else { r.clone() };
                if let Ok(prod) = compose(p, &gr) {
                    out.add_term(a * b, prod, g ^ h);
                }
            }
        }
        out
    }

    pub fn mul3(&self, x: &SkewElem, y: &SkewElem, z: &SkewElem) -> SkewElem {
        self.mul(&self.mul(x, y), z)
    }

    pub fn one(&self) -> SkewElem {
        let mut e = SkewElem::zero();
        for v in self.quiver.vertices() {
            e.add_term(Q::one(), Path::trivial(v), false);
        }
        e
    }

    pub fn path(&self, p: &Path) -> SkewElem {
        SkewElem::basis(p.clone(), false)
    }

    /// `e_i^±`.
    pub fn idempotent(&self, i: &str, s: Sign) -> SkewElem {
        let mut e = SkewElem::zero();
        let half = qr(1, 2);
        let sg = if s == Sign::Plus { half.clone() } else { -half.clone() };
        let mut verts = vec![i.to_string()];
        if !self.part.is_fixed(i) {
            verts.push(self.sigma.vertex(i).to_string());
        }
        for v in verts {
            e.add_term(half.clone(), Path::trivial(&v), false);
            e.add_term(sg.clone(), Path::trivial(&v), true);
        }
        e
    }

    /// `α^± = e_t^± (α ⊗ 1) e_s^±`, with the sign pattern fixed by the endpoint case.
    pub fn arrow_element(&self, alpha: &str, s: Sign) -> SkewElem {
        let a = self.quiver.arrow(alpha).expect("arrow of the base quiver");
        let case = ArrowCase::of(self.part, &a.src, &a.tgt);
        let (st, ss) = match case {
            ArrowCase::VV => (s, s),
            ArrowCase::VW => (Sign::Plus, s),
            ArrowCase::WV => (s, Sign::Plus),
            ArrowCase::WW => (Sign::Plus, Sign::Plus),
        };
        let p = Path::arrow_of(a);
        self.mul3(&self.idempotent(&a.tgt, st), &self.path(&p), &self.idempotent(&a.src, ss))
    }

    /// `ē = Σ_V (e_i^+ + e_i^-) + Σ_{o(W)} e_j^+`.
    pub fn e_bar(&self) -> SkewElem {
        let mut e = SkewElem::zero();
        for i in &self.part.v {
            e = e.add(&self.idempotent(i, Sign::Plus)).add(&self.idempotent(i, Sign::Minus));
        }
        for j in &self.o_w {
            e = e.add(&self.idempotent(j, Sign::Plus));
        }
        e
    }

    /// `ε = Σ_V e_i ⊗ 1 + Σ_{o(W)} (e_j − e_σj) ⊗ 1`.
    pub fn epsilon(&self) -> SkewElem {
        let mut e = SkewElem::zero();
        for i in &self.part.v {
            e.add_term(Q::one(), Path::trivial(i), false);
        }
        for j in &self.o_w {
            e.add_term(Q::one(), Path::trivial(j), false);
            e.add_term(-Q::one(), Path::trivial(self.sigma.vertex(j)), false);
        }
        e
    }

    /// Conjugation by `ε`.
    pub fn conj_epsilon(&self, x: &SkewElem) -> SkewElem {
        let eps = self.epsilon();
        self.mul3(&eps, x, &eps)
    }

    /// `σ̂ ⋆ (λ ⊗ h) = λ ⊗ σ̂(h)h` with `σ̂(σ) = −1`.
    pub fn hat_star(&self, x: &SkewElem) -> SkewElem {
        let mut out = SkewElem::zero();
        for ((p, g), c) in &x.terms {
            out.add_term(if *g { -c.clone() } else { c.clone() }, p.clone(), *g);
        }
        out
    }

    /// The twisted dual action `σ̂ · x = E(σ̂ ⋆ x)`.
    pub fn hat_dot(&self, x: &SkewElem) -> SkewElem {
        self.conj_epsilon(&self.hat_star(x))
    }

    /// `ι(λ) = ē (λ ⊗ 1) ē`, straight from the definition.
    pub fn iota(&self, p: &Path) -> SkewElem {
        let eb = self.e_bar();
        self.mul3(&eb, &self.path(p), &eb)
    }

    /// Realizes an element of `kQ_G` inside `kQ ⊗ kG` by sending each vertex
    /// and arrow of `Q_G` to the idempotent or arrow element it names.
    pub fn realize(&self, ctx: &SkewContext, x: &PathExpr) -> SkewElem {
        let mut out = SkewElem::zero();
        for (p, c) in x.terms() {
            let mut acc = if p.arrows.is_empty() {
                self.vertex_element(ctx, &p.src)
            } else {
                self.vertex_element(ctx, &p.tgt)
            };
            for a in &p.arrows {
                let prov = &ctx.arrow_prov[a];
                acc = self.mul(&acc, &self.arrow_element(&prov.rep, prov.sign));
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    fn vertex_element(&self, ctx: &SkewContext, v: &str) -> SkewElem {
        let prov = &ctx.vertex_prov[v];
        self.idempotent(&prov.base, prov.sign)
    }

    /// Scalar helper for tests.
    pub fn scalar(&self, c: i64) -> SkewElem {
        self.one().scale(&q(c))
    }
}
