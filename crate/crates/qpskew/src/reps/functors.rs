//! The two induction functors between a triangulated surface and its double
//! cover, at the level of modules over the Jacobian algebras.

use super::induce::{induce, restrict};
use super::{RepError, Representation};
use num_traits::One;

use crate::algebra::{Qp, QuiverMorphism};
use crate::involution::{find_admissible, Involution};
use crate::linalg::Q;
use crate::skew::{dual_action, second_choice, skew_qp, xi_map, zeta_scalars, SkewContext, SkewError};
use crate::surface::{double_cover, AdjacencyQp, DoubleCover, Triangulation};

/// Everything needed to move modules between `Q(τ)` and `Q(τ̃)`.
#[derive(Debug, Clone)]
pub struct CoverFunctors {
    pub base: AdjacencyQp,
    /// The skew of `Q(τ)`, identified with `Q(τ̃)` through the cover witness.
    pub base_ctx: SkewContext,
    pub cover: DoubleCover,
    /// The skew of `Q(τ)_G` under the dual action, identified with `Q(τ)` by `ξ`.
    pub dual_ctx: SkewContext,
    pub xi: QuiverMorphism,
}

impl CoverFunctors {
    pub fn new(t: &Triangulation) -> Result<Self, RepError> {
        let base = t.adjacency_qp()?;
        let choice = find_admissible(&base.qp.quiver, &base.sigma)
            .map_err(SkewError::from)?
            .ok_or(SkewError::ChoiceNotAdmissible)?;
        let base_ctx = skew_qp(&base.qp, &base.sigma, &choice)?;
        let cover = double_cover(t)?;
        let hat = dual_action(&base_ctx)?;
        let qp_g = base_ctx.qp_g().expect("skew potential");
        let dual_ctx = skew_qp(&qp_g, &hat, &second_choice(&base_ctx))?;
        // ξ with the arrows rescaled by ζ⁻¹, so that pulling back turns the
        // transported relations into the relations of Q(τ) on the nose
        let mut xi = xi_map(&base_ctx);
        let zeta = zeta_scalars(&base_ctx);
        for (a, (c, _)) in xi.arrow_map.iter_mut() {
            *c = Q::one() / &zeta[a];
        }
        Ok(CoverFunctors { base, base_ctx, cover, dual_ctx, xi })
    }

    pub fn base_qp(&self) -> &Qp {
        &self.base.qp
    }

    pub fn cover_qp(&self) -> &Qp {
        &self.cover.qp
    }

    pub fn base_sigma(&self) -> &Involution {
        &self.base.sigma
    }

    pub fn cover_sigma(&self) -> &Involution {
        &self.cover.involution
    }

    /// Induction from `Q(τ)` to the cover: `ΛG ⊗_Λ −` for `Λ = Jac(Q(τ))`,
    /// read on `Q(τ̃)` through the cover witness.
    pub fn to_cover(&self, r: &Representation) -> Result<Representation, RepError> {
        r.check_relations(self.base_qp())?;
        let n = induce(&self.base_ctx, r)?;
        let out = n.pull_back(&self.cover.witness, &self.cover.qp.quiver)?;
        out.check_relations(self.cover_qp())?;
        Ok(out)
    }

    /// Induction from the cover back to `Q(τ)` along the dual action; this is
    /// the functor that carries string and band modules of the cover to
    /// modules over `Jac(Q(τ))`.
    pub fn to_base(&self, r: &Representation) -> Result<Representation, RepError> {
        r.check_relations(self.cover_qp())?;
        let on_skew = r.push_forward(&self.cover.witness, &self.base_ctx.quiver_g)?;
        let n = induce(&self.dual_ctx, &on_skew)?;
        let out = n.pull_back(&self.xi, &self.base.qp.quiver)?;
        out.check_relations(self.base_qp())?;
        Ok(out)
    }

    /// Restriction from `Q(τ̃)` back to `Q(τ)`, the right adjoint side of `F`.
    pub fn restrict_to_base(&self, r: &Representation) -> Result<Representation, RepError> {
        let on_skew = r.push_forward(&self.cover.witness, &self.base_ctx.quiver_g)?;
        let out = restrict(&self.base_ctx, &on_skew)?;
        out.check_relations(self.base_qp())?;
        Ok(out)
    }
}
