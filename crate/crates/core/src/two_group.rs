//! Finite 2-groups `(G, A, ▷, α)` and the derived factors built from `α`.
//!
//! Products in `A` are written additively, so `α(x)/α(y)` becomes `α(x) - α(y)`.

use crate::abelian::{AElem, Character, FinAbGroup, GModule};
use crate::cochain::{cocycle_failure, Cochain, ModuleCoeffs};
use crate::error::TwoGroupError;
use crate::group::{CosetFrame, DoubleCosetFrame, Element, FiniteGroup, Subgroup};
use crate::phase::Phase;

#[derive(Clone, Debug)]
pub struct TwoGroup {
    group: FiniteGroup,
    module: GModule,
    alpha: Cochain<AElem>,
}

impl TwoGroup {
    /// Validates that `alpha` is a normalised twisted 3-cocycle on `G`.
    pub fn new(group: FiniteGroup, module: GModule, alpha: Cochain<AElem>) -> Result<Self, TwoGroupError> {
        assert_eq!(alpha.degree(), 3, "Postnikov class must have degree 3");
        assert!(alpha.domain().is_whole(), "Postnikov class must be defined on the whole group");
        if let Some(w) = alpha.normalisation_failure(&0) {
            return Err(TwoGroupError::NotNormalised { witness: w });
        }
        if let Some(w) = cocycle_failure(&group, &alpha, &ModuleCoeffs(&module)) {
            return Err(TwoGroupError::NotACocycle { witness: w });
        }
        Ok(TwoGroup { group, module, alpha })
    }

    /// `(G, 1, trivial, 1)`.
    pub fn from_group(group: FiniteGroup) -> Self {
        let module = GModule::trivial(&group, FinAbGroup::trivial());
        let alpha = Cochain::constant(&Subgroup::whole(&group), 3, 0);
        TwoGroup { group, module, alpha }
    }

    /// `(G, A, ▷, 1)`.
    pub fn split(group: FiniteGroup, module: GModule) -> Self {
        let alpha = Cochain::constant(&Subgroup::whole(&group), 3, 0);
        TwoGroup { group, module, alpha }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn a(&self) -> &FinAbGroup {
        self.module.module()
    }

    pub fn alpha(&self) -> &Cochain<AElem> {
        &self.alpha
    }

    #[inline]
    pub fn al(&self, a: Element, b: Element, c: Element) -> AElem {
        *self.alpha.at3(a, b, c)
    }

    pub fn add(&self, x: AElem, y: AElem) -> AElem {
        self.a().add(x, y)
    }

    pub fn sub(&self, x: AElem, y: AElem) -> AElem {
        self.a().sub(x, y)
    }

    pub fn pair(&self, lambda: &Character, a: AElem) -> Phase {
        self.a().pair(lambda, a)
    }

    /// `g ▷ λ`.
    pub fn act_char(&self, g: Element, lambda: &Character) -> Character {
        self.module.act_on_character(&self.group, g, lambda)
    }

    /// `θ_g = α(g, g^{-1}, g)^{-1}`.
    pub fn theta(&self, g: Element) -> AElem {
        let gi = self.group.inv(g);
        self.a().neg(self.al(g, gi, g))
    }

    /// `ξ_{g,h} = α(h^{-1}, g^{-1}, g) / α(h^{-1} g^{-1}, g, h)`.
    pub fn xi(&self, g: Element, h: Element) -> AElem {
        let gr = &self.group;
        let (gi, hi) = (gr.inv(g), gr.inv(h));
        self.sub(self.al(hi, gi, g), self.al(gr.mul(hi, gi), g, h))
    }

    /// `γ_x(h, k) = α(h, x, k^x) / (α(h, k, x) α(x, h^x, k^x))`.
    pub fn gamma(&self, x: Element, h: Element, k: Element) -> AElem {
        let gr = &self.group;
        let (hx, kx) = (gr.conj_inv(x, h), gr.conj_inv(x, k));
        self.sub(self.al(h, x, kx), self.add(self.al(h, k, x), self.al(x, hx, kx)))
    }

    /// `β_{x,y}(k) = α(k, x, y) α(x, y, k^{xy}) / α(x, k^x, y)`.
    pub fn beta(&self, x: Element, y: Element, k: Element) -> AElem {
        let gr = &self.group;
        let kx = gr.conj_inv(x, k);
        let kxy = gr.conj_inv(gr.mul(x, y), k);
        self.sub(self.add(self.al(k, x, y), self.al(x, y, kxy)), self.al(x, kx, y))
    }

    /// `κ_x = β_{x^{-1}, x}`.
    pub fn kappa(&self, x: Element, k: Element) -> AElem {
        self.beta(self.group.inv(x), x, k)
    }

    /// The correction `φ_i(g, h)` for the 2-cochain of an induced representation.
    pub fn induction_phi(&self, frame: &CosetFrame, i: usize, g: Element, h: Element) -> AElem {
        let gr = &self.group;
        let act = frame.action();
        let ri_inv = gr.inv(frame.rep(i));
        let gi = frame.little(gr, g, i);
        let j = act.apply(gr.inv(g), i);
        let h_j = frame.little(gr, h, j);
        let k = act.apply(gr.inv(gr.mul(g, h)), i);
        let rk_inv = gr.inv(frame.rep(k));
        let rj_inv = gr.inv(frame.rep(j));
        self.sub(self.add(self.al(ri_inv, g, h), self.al(gi, h_j, rk_inv)), self.al(gi, rj_inv, h))
    }

    /// `ε_h(u')(k) = u'(h, k^h) / u'(k, h)`.
    pub fn epsilon(&self, u: &Cochain<Phase>, h: Element, k: Element) -> Phase {
        let kh = self.group.conj_inv(h, k);
        *u.at2(h, kh) - *u.at2(k, h)
    }
}

/// Data attached to one pair `(i, j)` of a double-coset frame and an
/// element `g`, shared by the induced-intertwiner phase factors.
#[derive(Clone, Copy, Debug)]
pub struct FrameStep {
    pub target: usize,
    pub source: usize,
    pub moved_target: usize,
    pub moved_source: usize,
    /// `t^{-1}_{g▷ij} g_{g▷j} t_{ij} ∈ H ∩ ˣH'`.
    pub little: Element,
    pub t: Element,
    pub t_prime: Element,
    pub moved_t: Element,
    pub moved_t_prime: Element,
    /// `g_{g▷j} = r_{g▷j}^{-1} g r_j`.
    pub g_source: Element,
    /// `g'_{g▷i} = r'^{-1}_{g▷i} g r'_i`.
    pub g_target: Element,
}

/// Cosets and the double-coset frame for the pair of subgroups of an intertwiner.
pub struct IntertwinerFrames<'a> {
    pub source: &'a CosetFrame,
    pub target: &'a CosetFrame,
    pub frame: &'a DoubleCosetFrame,
}

impl IntertwinerFrames<'_> {
    pub fn step(&self, gr: &FiniteGroup, g: Element, target: usize, source: usize) -> Option<FrameStep> {
        let e = *self.frame.entry(target, source)?;
        let mi = self.target.action().apply(g, target);
        let mj = self.source.action().apply(g, source);
        let me = *self.frame.entry(mi, mj).expect("frame index set is G-stable");
        let g_source = gr.mul_all(&[gr.inv(self.source.rep(mj)), g, self.source.rep(source)]);
        let g_target = gr.mul_all(&[gr.inv(self.target.rep(mi)), g, self.target.rep(target)]);
        let little = gr.mul_all(&[gr.inv(me.t), g_source, e.t]);
        Some(FrameStep {
            target,
            source,
            moved_target: mi,
            moved_source: mj,
            little,
            t: e.t,
            t_prime: e.t_prime,
            moved_t: me.t,
            moved_t_prime: me.t_prime,
            g_source,
            g_target,
        })
    }
}

impl TwoGroup {
    /// The `A`-valued factor `μ / ˣμ' · ω` of an induced intertwiner.
    pub fn intertwiner_alpha_factor(&self, fr: &IntertwinerFrames<'_>, g: Element, s: &FrameStep) -> AElem {
        let gr = &self.group;
        let x = fr.frame.x();
        let inv = |a| gr.inv(a);
        let rj_inv = inv(fr.source.rep(s.source));
        let rmj_inv = inv(fr.source.rep(s.moved_source));
        let ri_inv = inv(fr.target.rep(s.target));
        let rmi_inv = inv(fr.target.rep(s.moved_target));
        let gij_x = gr.conj_inv(x, s.little);
        let mu = self.sub(
            self.add(self.al(inv(s.moved_t), rmj_inv, g), self.al(s.little, inv(s.t), rj_inv)),
            self.al(inv(s.moved_t), s.g_source, rj_inv),
        );
        let mu_p = self.sub(
            self.add(self.al(inv(s.moved_t_prime), rmi_inv, g), self.al(gij_x, inv(s.t_prime), ri_inv)),
            self.al(inv(s.moved_t_prime), s.g_target, ri_inv),
        );
        let rt = inv(gr.mul(fr.target.rep(s.target), s.t_prime));
        let rt_moved = inv(gr.mul(fr.target.rep(s.moved_target), s.moved_t_prime));
        let omega = self.sub(
            self.al(x, gij_x, rt),
            self.add(self.al(x, rt_moved, g), self.al(s.little, x, rt)),
        );
        self.add(self.sub(mu, self.module.act(x, mu_p)), omega)
    }

    /// `ν(u) / ν'(u')` for an induced intertwiner.
    pub fn intertwiner_nu_factor(
        &self,
        fr: &IntertwinerFrames<'_>,
        u: &Cochain<Phase>,
        u_prime: &Cochain<Phase>,
        s: &FrameStep,
    ) -> Phase {
        let gr = &self.group;
        let x = fr.frame.x();
        let gij_x = gr.conj_inv(x, s.little);
        let nu = *u.at2(s.little, gr.inv(s.t)) - *u.at2(gr.inv(s.moved_t), s.g_source);
        let nu_p = *u_prime.at2(gij_x, gr.inv(s.t_prime)) - *u_prime.at2(gr.inv(s.moved_t_prime), s.g_target);
        nu - nu_p
    }
}
