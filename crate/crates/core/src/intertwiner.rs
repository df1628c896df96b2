//! Intertwiners between 2-representations: classification of irreducible
//! intertwiners `(x, ψ)`, induction to matrix form `(V, φ)`, composition in
//! both forms, duals and adjoints, and decomposition of matrix intertwiners
//! into irreducibles.

use num_complex::Complex64;
use rand::Rng;

use crate::cochain::{Cochain, U1};
use crate::cohomology::{coboundary_witness, d_u1};
use crate::error::RepError;
use crate::group::{CosetFrame, DoubleCosetFrame, DoubleCosets, Element, Subgroup};
use crate::linalg::{self, c, CMat};
use crate::phase::{Phase, Sign};
use crate::projrep::{
    attach_invariant_form, character_inner, decompose, epsilon_dual, hyperbolic_pair, induce_projrep,
    irreducible_projreps, twist_projrep, HermSpace, ProjRep, TwistMode,
};
use crate::two_group::{IntertwinerFrames, TwoGroup};
use crate::two_rep::{
    induce, intertwiner_cocycle, intertwiner_sign, positive_filter, Flavour, Irr2Rep, Quintuple2Rep, Violation,
};

/// Tolerance for matrix identities in verification and decomposition.
pub const MATRIX_TOL: f64 = 1e-9;

/// The part of a hom-space supported on one double coset `H x H'`.
#[derive(Clone, Debug)]
pub struct HomSector {
    /// Canonical (smallest) representative of the double coset.
    pub x: Element,
    /// `K = H ∩ ˣH'`.
    pub k: Subgroup,
    /// `ˣu' / u · ⟨λ, γ_x⟩` on `K`.
    pub cocycle: Cochain<Phase>,
    /// `ε = p / ˣp'` for the unitary flavour.
    pub sign: Option<Cochain<Sign>>,
    /// Irreducible projective representations of `K` with the sector cocycle.
    pub plain: Vec<ProjRep>,
}

/// An irreducible intertwiner `(x, ψ)`.
#[derive(Clone, Debug)]
pub struct IrrIntertwiner {
    pub source: Irr2Rep,
    pub target: Irr2Rep,
    pub x: Element,
    /// Index of the sector in the hom-space it was classified in.
    pub sector: usize,
    /// `ψ` with its Hermitian form.
    pub rep: ProjRep,
    /// Indices into the sector's `plain` list: one entry, or two when `ψ`
    /// is the hyperbolic pair of an irreducible and its `ε`-twist.
    pub components: Vec<usize>,
}

impl IrrIntertwiner {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn is_paired(&self) -> bool {
        self.components.len() == 2
    }
}

/// A double coset left out of a hom-space, with the reason.
#[derive(Clone, Debug)]
pub struct SkippedCoset {
    pub x: Element,
    pub reason: String,
}

/// All irreducible intertwiners `ρ → ρ'`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Irr2Rep,
    pub target: Irr2Rep,
    pub sectors: Vec<HomSector>,
    pub irreducibles: Vec<IrrIntertwiner>,
    pub skipped: Vec<SkippedCoset>,
}

impl HomSpace {
    pub fn sector_of(&self, x: Element) -> Option<usize> {
        self.sectors.iter().position(|s| s.x == x)
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }
}

/// Classifies the irreducible intertwiners `ρ → ρ'`.
///
/// For each double coset passing the character filter (and the sign filter
/// `q = ˣq'` for the positive flavour), the irreducible projective
/// representations of `K = H ∩ ˣH'` are equipped with forms: the standard
/// form for the ordinary and positive flavours, an invariant form for `ε`
/// for the unitary flavour, or, when none exists, the hyperbolic form on
/// `ψ ⊕ ψ^ε`.
pub fn classify<R: Rng>(tg: &TwoGroup, source: &Irr2Rep, target: &Irr2Rep, rng: &mut R) -> Result<HomSpace, RepError> {
    if source.flavour() != target.flavour() {
        return Err(RepError::FlavourMismatch(format!("{} vs {}", source.flavour(), target.flavour())));
    }
    let gr = tg.group();
    let flavour = source.flavour();
    let dcs = DoubleCosets::new(gr, source.subgroup(), target.subgroup());
    let mut sectors = Vec::new();
    let mut irreducibles = Vec::new();
    let mut skipped = Vec::new();
    for &x in dcs.reps() {
        if tg.act_char(x, target.character()) != *source.character() {
            skipped.push(SkippedCoset { x, reason: "characters differ".into() });
            continue;
        }
        if flavour == Flavour::Positive && !positive_filter(tg, source, target, x) {
            skipped.push(SkippedCoset { x, reason: "sign cochains differ".into() });
            continue;
        }
        let cocycle = intertwiner_cocycle(tg, source, target, x);
        let k = cocycle.domain().clone();
        let plain = irreducible_projreps(gr, &k, &cocycle, rng)?;
        let sign = (flavour == Flavour::Unitary).then(|| intertwiner_sign(tg, source, target, x));
        let sector = sectors.len();
        let mut push = |rep: ProjRep, components: Vec<usize>| {
            irreducibles.push(IrrIntertwiner { source: source.clone(), target: target.clone(), x, sector, rep, components });
        };
        match &sign {
            None => {
                for (a, p) in plain.iter().enumerate() {
                    push(p.clone(), vec![a]);
                }
            }
            Some(eps) => {
                for (a, p) in plain.iter().enumerate() {
                    if let Some(formed) = attach_invariant_form(p, eps) {
                        push(formed, vec![a]);
                        continue;
                    }
                    let partner = partner_index(&plain, &epsilon_dual(p, eps))?;
                    if partner > a {
                        push(hyperbolic_pair(p, eps), vec![a, partner]);
                    }
                }
            }
        }
        sectors.push(HomSector { x, k, cocycle, sign, plain });
    }
    Ok(HomSpace { source: source.clone(), target: target.clone(), sectors, irreducibles, skipped })
}

fn partner_index(plain: &[ProjRep], rep: &ProjRep) -> Result<usize, RepError> {
    let chi = rep.character();
    plain
        .iter()
        .position(|p| p.dim() == rep.dim() && (character_inner(&p.character(), &chi) - c(1.0)).norm() < 1e-6)
        .ok_or_else(|| RepError::Decomposition("ε-twisted representation not found among irreducibles".into()))
}

/// A matrix intertwiner `(V, φ)` between two quintuples.
///
/// Entries are indexed by `i·n + j` with `i` a point of the target and
/// `j` a point of the source; zero spaces have dimension 0.
#[derive(Clone, Debug)]
pub struct MatIntertwiner {
    source: Quintuple2Rep,
    target: Quintuple2Rep,
    spaces: Vec<HermSpace>,
    maps: Vec<Vec<CMat>>,
}

impl MatIntertwiner {
    pub fn new(source: Quintuple2Rep, target: Quintuple2Rep, spaces: Vec<HermSpace>, maps: Vec<Vec<CMat>>) -> Self {
        assert_eq!(spaces.len(), source.dim() * target.dim());
        MatIntertwiner { source, target, spaces, maps }
    }

    /// `id_ρ = (1_n, Id_n)`.
    pub fn identity(q5: &Quintuple2Rep, group_order: usize) -> Self {
        let n = q5.dim();
        let spaces = (0..n * n).map(|k| HermSpace::standard(usize::from(k / n == k % n))).collect();
        let maps = (0..group_order)
            .map(|_| (0..n * n).map(|k| linalg::identity(usize::from(k / n == k % n))).collect())
            .collect();
        MatIntertwiner { source: q5.clone(), target: q5.clone(), spaces, maps }
    }

    pub fn source(&self) -> &Quintuple2Rep {
        &self.source
    }

    pub fn target(&self) -> &Quintuple2Rep {
        &self.target
    }

    pub fn space(&self, i: usize, j: usize) -> &HermSpace {
        &self.spaces[i * self.source.dim() + j]
    }

    /// `φ(g)_{ij}: V_{ij} → V_{g ▷ (ij)}`.
    pub fn map(&self, g: Element, i: usize, j: usize) -> &CMat {
        &self.maps[g][i * self.source.dim() + j]
    }

    pub fn map_mut(&mut self, g: Element, i: usize, j: usize) -> &mut CMat {
        let n = self.source.dim();
        &mut self.maps[g][i * n + j]
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(|s| s.dim()).sum()
    }

    fn moved(&self, g: Element, i: usize, j: usize) -> (usize, usize) {
        (self.target.action().apply(g, i), self.source.action().apply(g, j))
    }
}

struct Frames {
    source: CosetFrame,
    target: CosetFrame,
    dc: DoubleCosetFrame,
}

impl Frames {
    fn new(tg: &TwoGroup, source: &Irr2Rep, target: &Irr2Rep, x: Element) -> Self {
        let gr = tg.group();
        let s = CosetFrame::new(gr, source.subgroup());
        let t = CosetFrame::new(gr, target.subgroup());
        let dc = DoubleCosetFrame::new(gr, &s, &t, x);
        Frames { source: s, target: t, dc }
    }

    fn view(&self) -> IntertwinerFrames<'_> {
        IntertwinerFrames { source: &self.source, target: &self.target, frame: &self.dc }
    }
}

/// The scalar `ν/ν' · ⟨λ, μ/ˣμ' · ω⟩` multiplying `ψ(g_{ij})`.
fn frame_phase(
    tg: &TwoGroup,
    source: &Irr2Rep,
    target: &Irr2Rep,
    fr: &IntertwinerFrames<'_>,
    g: Element,
    step: &crate::two_group::FrameStep,
) -> Phase {
    tg.intertwiner_nu_factor(fr, source.cochain(), target.cochain(), step)
        + tg.pair(source.character(), tg.intertwiner_alpha_factor(fr, g, step))
}

/// Induces `(x, ψ)` to a matrix intertwiner between `Ind ρ` and `Ind ρ'`.
/// `x` may be any element; `ψ` must be a representation of `H ∩ ˣH'`
/// with the intertwiner cocycle at `x`.
pub fn induce_intertwiner_at(
    tg: &TwoGroup,
    source: &Irr2Rep,
    target: &Irr2Rep,
    x: Element,
    rep: &ProjRep,
) -> Result<MatIntertwiner, RepError> {
    let gr = tg.group();
    let expected = intertwiner_cocycle(tg, source, target, x);
    if rep.subgroup() != expected.domain() || !rep.cocycle().same_values(&expected) {
        return Err(RepError::CocycleRepresentativeMismatch);
    }
    let frames = Frames::new(tg, source, target, x);
    let fr = frames.view();
    let (n, m) = (frames.source.index(), frames.target.index());
    let mut spaces = vec![HermSpace::standard(0); m * n];
    let p = source.hom_sign();
    let pp = target.hom_sign();
    for e in frames.dc.entries() {
        let s = if source.flavour() == Flavour::Unitary { *p.at1(e.t) * *pp.at1(e.t_prime) } else { Sign::Plus };
        spaces[e.target * n + e.source] = rep.space().scaled(s);
    }
    let maps = gr
        .elements()
        .map(|g| {
            let mut row = vec![CMat::zeros(0, 0); m * n];
            for e in frames.dc.entries() {
                let step = fr.step(gr, g, e.target, e.source).expect("entry of the frame");
                let ph = frame_phase(tg, source, target, &fr, g, &step);
                row[e.target * n + e.source] = rep.matrix(step.little) * ph.to_complex();
            }
            row
        })
        .collect();
    Ok(MatIntertwiner { source: induce(tg, source), target: induce(tg, target), spaces, maps })
}

pub fn induce_intertwiner(tg: &TwoGroup, eta: &IrrIntertwiner) -> Result<MatIntertwiner, RepError> {
    induce_intertwiner_at(tg, &eta.source, &eta.target, eta.x, &eta.rep)
}

/// Exhaustive check of the support constraint, `φ(e) = id`, the
/// composition rule, the conjugation rule and (positive flavour) unitarity.
pub fn verify_intertwiner(tg: &TwoGroup, eta: &MatIntertwiner) -> Vec<Violation> {
    let gr = tg.group();
    let (src, tgt) = (&eta.source, &eta.target);
    let flavour = src.flavour();
    let (n, m) = (src.dim(), tgt.dim());
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let d = eta.space(i, j).dim();
            if d == 0 {
                continue;
            }
            if tgt.characters()[i] != src.characters()[j] {
                out.push(Violation::new("support-character", vec![], i * n + j, d, 0));
            }
            if flavour == Flavour::Positive {
                if let Some(g) = gr.elements().find(|&g| tgt.s(i, g) != src.s(j, g)) {
                    out.push(Violation::new("support-sign", vec![g], i * n + j, tgt.s(i, g), src.s(j, g)));
                }
                if !eta.space(i, j).is_positive() {
                    out.push(Violation::new("positivity", vec![], i * n + j, "indefinite", "positive"));
                }
            }
            if linalg::distance(eta.map(0, i, j), &linalg::identity(d)) > MATRIX_TOL {
                out.push(Violation::new("identity", vec![0], i * n + j, "φ(e)", "id"));
            }
            for g in gr.elements() {
                let (gi, gj) = eta.moved(g, i, j);
                let phi = eta.map(g, i, j);
                if phi.shape() != (eta.space(gi, gj).dim(), d) {
                    out.push(Violation::new("shape", vec![g], i * n + j, format!("{:?}", phi.shape()), d));
                    continue;
                }
                for h in gr.elements() {
                    let (hi, hj) = eta.moved(h, i, j);
                    let gh = gr.mul(g, h);
                    let (ghi, ghj) = eta.moved(gh, i, j);
                    let lhs = eta.map(g, hi, hj) * eta.map(h, i, j);
                    let ph = tgt.c(ghi, g, h) - src.c(ghj, g, h);
                    let rhs = eta.map(gh, i, j) * ph.to_complex();
                    let dist = linalg::distance(&lhs, &rhs);
                    if dist > MATRIX_TOL {
                        out.push(Violation::new("composition", vec![g, h], i * n + j, format!("{dist:.3e}"), 0));
                    }
                }
                if flavour == Flavour::Ordinary {
                    continue;
                }
                let Some(inv) = linalg::inverse(phi) else {
                    out.push(Violation::new("invertibility", vec![g], i * n + j, "singular", "invertible"));
                    continue;
                };
                let adj = eta.space(i, j).adjoint_of(phi, eta.space(gi, gj)).expect("nondegenerate form");
                let ratio = src.s(gj, g) * tgt.s(gi, g);
                let dist = linalg::distance(&adj, &(&inv * c(ratio.value())));
                if dist > MATRIX_TOL {
                    out.push(Violation::new("conjugation", vec![g], i * n + j, format!("{dist:.3e}"), 0));
                }
                if flavour == Flavour::Positive {
                    let dist = linalg::distance(&(phi.adjoint() * phi), &linalg::identity(d));
                    if dist > MATRIX_TOL {
                        out.push(Violation::new("unitarity", vec![g], i * n + j, format!("{dist:.3e}"), 0));
                    }
                }
            }
        }
    }
    out
}

/// `(V', φ') ∘ (V, φ) = (V' ⊠ V, φ' ⊠ φ)`, with `outer` applied after `inner`.
pub fn compose_matrix(outer: &MatIntertwiner, inner: &MatIntertwiner) -> Result<MatIntertwiner, RepError> {
    if inner.target != outer.source {
        return Err(RepError::SourceTargetMismatch);
    }
    let (n, mid, p) = (inner.source.dim(), inner.target.dim(), outer.target.dim());
    let group_order = inner.maps.len();
    // per entry (i, j): list of (k, offset, dim)
    let mut layout: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); p * n];
    let mut spaces = Vec::with_capacity(p * n);
    for i in 0..p {
        for j in 0..n {
            let mut parts = Vec::new();
            let mut off = 0;
            for k in 0..mid {
                let d = outer.space(i, k).dim() * inner.space(k, j).dim();
                if d > 0 {
                    layout[i * n + j].push((k, off, d));
                    parts.push(outer.space(i, k).tensor(inner.space(k, j)));
                    off += d;
                }
            }
            let refs: Vec<&HermSpace> = parts.iter().collect();
            spaces.push(if refs.is_empty() { HermSpace::standard(0) } else { HermSpace::direct_sum(&refs) });
        }
    }
    let mut maps = Vec::with_capacity(group_order);
    for g in 0..group_order {
        let mut row = Vec::with_capacity(p * n);
        for i in 0..p {
            for j in 0..n {
                let (gi, gj) = (outer.target.action().apply(g, i), inner.source.action().apply(g, j));
                let mut mat = CMat::zeros(spaces[gi * n + gj].dim(), spaces[i * n + j].dim());
                for &(k, off, d) in &layout[i * n + j] {
                    let gk = inner.target.action().apply(g, k);
                    let &(_, toff, td) =
                        layout[gi * n + gj].iter().find(|e| e.0 == gk).expect("G-stable block structure");
                    let block = linalg::kron(outer.map(g, i, k), inner.map(g, k, j));
                    debug_assert_eq!(block.shape(), (td, d));
                    mat.view_mut((toff, off), (td, d)).copy_from(&block);
                }
                row.push(mat);
            }
        }
        maps.push(row);
    }
    Ok(MatIntertwiner { source: inner.source.clone(), target: outer.target.clone(), spaces, maps })
}

/// Multiplicities of the irreducibles of `hom` in a matrix intertwiner
/// between the induced quintuples of `hom.source` and `hom.target`.
///
/// For each sector the block at the base pair is a projective
/// representation of `K`; it is compared with the base blocks of the
/// induced irreducibles through twisted characters. The scalar factor
/// relating the base block to `ψ` is the same for every `ψ` and cancels.
pub fn decompose_matrix(tg: &TwoGroup, eta: &MatIntertwiner, hom: &HomSpace) -> Result<Vec<usize>, RepError> {
    let gr = tg.group();
    let n = eta.source.dim();
    if n != hom.source.dim(tg) || eta.target.dim() != hom.target.dim(tg) {
        return Err(RepError::SourceTargetMismatch);
    }
    let mut mult = vec![0usize; hom.irreducibles.len()];
    let mut accounted = 0;
    for (s, sector) in hom.sectors.iter().enumerate() {
        let frames = Frames::new(tg, &hom.source, &hom.target, sector.x);
        let fr = frames.view();
        let (i0, j0) = frames.dc.base();
        let d = eta.space(i0, j0).dim();
        if d == 0 {
            continue;
        }
        let chi: Vec<Complex64> = sector
            .k
            .members()
            .iter()
            .map(|&k| {
                let step = fr.step(gr, k, i0, j0).expect("base entry");
                let f = frame_phase(tg, &hom.source, &hom.target, &fr, k, &step);
                eta.map(k, i0, j0).trace() * f.to_complex().conj()
            })
            .collect();
        let plain_mult = integral_multiplicities(&chi, &sector.plain, d)?;
        for (idx, irr) in hom.irreducibles.iter().enumerate().filter(|(_, r)| r.sector == s) {
            let a = irr.components[0];
            if let Some(&b) = irr.components.get(1) {
                if plain_mult[a] != plain_mult[b] {
                    return Err(RepError::Decomposition("paired components occur with different multiplicities".into()));
                }
            }
            mult[idx] = plain_mult[a];
            accounted += plain_mult[a] * irr.dim() * frames.dc.entries().len();
        }
    }
    if accounted != eta.total_dim() {
        return Err(RepError::Decomposition(format!(
            "irreducibles account for {accounted} of {} dimensions",
            eta.total_dim()
        )));
    }
    Ok(mult)
}

fn integral_multiplicities(chi: &[Complex64], plain: &[ProjRep], dim: usize) -> Result<Vec<usize>, RepError> {
    let mut out = Vec::with_capacity(plain.len());
    let mut total = 0;
    for p in plain {
        let ip = character_inner(chi, &p.character());
        let m = ip.re.round();
        if (ip - c(m)).norm() > 1e-6 || m < 0.0 {
            return Err(RepError::Decomposition(format!("non-integral multiplicity {ip}")));
        }
        out.push(m as usize);
        total += m as usize * p.dim();
    }
    if total != dim {
        return Err(RepError::Decomposition(format!("multiplicities account for {total} of {dim} dimensions")));
    }
    Ok(out)
}

/// Makes the cocycle of `rep` equal to `target` exactly, rescaling by a
/// trivialising 1-cochain when the two differ by a coboundary.
fn conform_cocycle(tg: &TwoGroup, rep: ProjRep, target: &Cochain<Phase>) -> Result<ProjRep, RepError> {
    if rep.cocycle().same_values(target) {
        return Ok(rep);
    }
    let diff = target.sub(rep.cocycle());
    let f = coboundary_witness(tg.group(), &diff, &U1)?
        .ok_or_else(|| RepError::Decomposition("cocycle differs from the expected one in cohomology".into()))?;
    Ok(rep.rescaled(tg.group(), &f))
}

/// Multiplicities in `hom` of the (possibly reducible) intertwiner `(y, rep)`,
/// where `y` is any element of its double coset.
pub fn identify(tg: &TwoGroup, hom: &HomSpace, y: Element, rep: &ProjRep) -> Result<Vec<usize>, RepError> {
    let gr = tg.group();
    let dcs = DoubleCosets::new(gr, hom.source.subgroup(), hom.target.subgroup());
    let target = intertwiner_cocycle(tg, &hom.source, &hom.target, y);
    let rep = conform_cocycle(tg, rep.clone(), &target)?;
    let canonical = dcs.canonical_rep(y);
    let mut mult = vec![0usize; hom.irreducibles.len()];
    if canonical == y {
        let Some(s) = hom.sector_of(y) else {
            return Err(RepError::Decomposition(format!("double coset of {y} is excluded from the hom-space")));
        };
        let plain_mult = decompose(&rep, &hom.sectors[s].plain)?;
        for (idx, irr) in hom.irreducibles.iter().enumerate().filter(|(_, r)| r.sector == s) {
            mult[idx] = plain_mult[irr.components[0]];
            if let Some(&b) = irr.components.get(1) {
                if plain_mult[b] != mult[idx] {
                    return Err(RepError::Decomposition("paired components occur with different multiplicities".into()));
                }
            }
        }
        return Ok(mult);
    }
    let mat = induce_intertwiner_at(tg, &hom.source, &hom.target, y, &rep)?;
    decompose_matrix(tg, &mat, hom)
}

/// One term of the composition formula: the element `y = x h x'` and the
/// induced representation of `H ∩ ʸH''`.
#[derive(Clone, Debug)]
pub struct CompositionTerm {
    pub h: Element,
    pub y: Element,
    pub rep: ProjRep,
}

/// The terms of `(x, ψ) ∘ (x', ψ')` for `η_1 = (x, ψ): ρ → ρ'` followed by
/// `η_2 = (x', ψ'): ρ' → ρ''`, one per double coset
/// `[h] ∈ (H^x ∩ H') \ H' / (H' ∩ ˣ'H'')`.
pub fn composition_terms(tg: &TwoGroup, first: &IrrIntertwiner, second: &IrrIntertwiner) -> Result<Vec<CompositionTerm>, RepError> {
    if first.target != second.source {
        return Err(RepError::NotChainable("target of the first differs from source of the second".into()));
    }
    let gr = tg.group();
    let (rho, rho1, rho2) = (&first.source, &first.target, &second.target);
    let (x, xp) = (first.x, second.x);
    let (h0, h1, h2) = (rho.subgroup(), rho1.subgroup(), rho2.subgroup());
    let left = h0.conjugate(gr, gr.inv(x)).intersect(h1);
    let right = h1.intersect(&h2.conjugate(gr, xp));
    let dcs = DoubleCosets::new(gr, &left, &right);
    let lambda = rho.character();
    let u1 = rho1.cochain();
    let mut terms = Vec::new();
    for &h in dcs.reps().iter().filter(|&&h| h1.contains(h)) {
        let xh = gr.mul(x, h);
        let y = gr.mul(xh, xp);
        let k0 = h0.intersect(&h1.conjugate(gr, x)).intersect(&h2.conjugate(gr, y));
        let k = h0.intersect(&h2.conjugate(gr, y));
        let f = Cochain::from_fn(&k0, 1, Phase::ZERO, |t| {
            let kk = t[0];
            tg.epsilon(u1, h, gr.conj_inv(x, kk))
                - tg.pair(lambda, tg.add(tg.beta(x, h, kk), tg.beta(xh, xp, kk)))
        });
        let mats: Vec<CMat> = k0
            .members()
            .iter()
            .map(|&kk| linalg::kron(first.rep.matrix(kk), second.rep.matrix(gr.conj_inv(xh, kk))) * f.at1(kk).to_complex())
            .collect();
        let base = Cochain::from_fn(&k0, 2, Phase::ZERO, |t| {
            *first.rep.cocycle().at2(t[0], t[1]) + *second.rep.cocycle().at2(gr.conj_inv(xh, t[0]), gr.conj_inv(xh, t[1]))
        });
        let cocycle = base.add(&d_u1(gr, &f));
        let space = first.rep.space().tensor(second.rep.space());
        let theta = ProjRep::from_matrices(&k0, cocycle, mats).with_space(space, None);
        let target = intertwiner_cocycle(tg, rho, rho2, y);
        let theta = conform_cocycle(tg, theta, &target.restrict(&k0))?;
        let rep = induce_projrep(gr, &theta, &k, &target)?;
        terms.push(CompositionTerm { h, y, rep });
    }
    Ok(terms)
}

/// `(x x', (ψ ⊗ ˣψ') / ⟨λ, β_{x,x'}⟩)`, valid when all three subgroups
/// coincide with a normal subgroup `H`.
pub fn normal_composition(tg: &TwoGroup, first: &IrrIntertwiner, second: &IrrIntertwiner) -> Option<(Element, ProjRep)> {
    let gr = tg.group();
    let h = first.source.subgroup();
    if first.target.subgroup() != h || second.target.subgroup() != h || !h.is_normal(gr) {
        return None;
    }
    let (x, xp) = (first.x, second.x);
    let lambda = first.source.character();
    let mats = h
        .members()
        .iter()
        .map(|&k| {
            let ph = -tg.pair(lambda, tg.beta(x, xp, k));
            linalg::kron(first.rep.matrix(k), second.rep.matrix(gr.conj_inv(x, k))) * ph.to_complex()
        })
        .collect();
    let target = intertwiner_cocycle(tg, &first.source, &second.target, gr.mul(x, xp));
    Some((gr.mul(x, xp), ProjRep::from_matrices(h, target, mats)))
}

/// Multiplicities in `hom` (from `first.source` to `second.target`) of the
/// composite of `first` followed by `second`. When the normal-subgroup
/// formula applies its result is checked against the general one.
pub fn compose_irreducible(
    tg: &TwoGroup,
    first: &IrrIntertwiner,
    second: &IrrIntertwiner,
    hom: &HomSpace,
) -> Result<Vec<usize>, RepError> {
    if hom.source != first.source || hom.target != second.target {
        return Err(RepError::SourceTargetMismatch);
    }
    let terms = composition_terms(tg, first, second)?;
    if let Some((y, short)) = normal_composition(tg, first, second) {
        let agrees = terms.len() == 1
            && terms[0].y == y
            && terms[0].rep.matrices().iter().zip(short.matrices()).all(|(a, b)| linalg::approx_eq(a, b, MATRIX_TOL));
        if !agrees {
            return Err(RepError::Decomposition("normal-subgroup composition disagrees with the general formula".into()));
        }
    }
    let mut mult = vec![0usize; hom.irreducibles.len()];
    for term in &terms {
        for (m, k) in mult.iter_mut().zip(identify(tg, hom, term.y, &term.rep)?) {
            *m += k;
        }
    }
    Ok(mult)
}

/// Source and target of a transformed intertwiner `ρ → ρ'`.
pub fn transformed_ends(tg: &TwoGroup, source: &Irr2Rep, target: &Irr2Rep, mode: TwistMode) -> (Irr2Rep, Irr2Rep) {
    match mode {
        TwistMode::Dual1 => (target.dual(tg), source.dual(tg)),
        TwistMode::Dual2 | TwistMode::Adjoint => (target.clone(), source.clone()),
    }
}

/// `η^{∨_1}`, `η^{∨_2}` or `η^{†_1}` as `(x^{-1}, ψ')`, decomposed in `hom`
/// (which must run between the transformed ends).
pub fn transform(tg: &TwoGroup, eta: &IrrIntertwiner, mode: TwistMode, hom: &HomSpace) -> Result<Vec<usize>, RepError> {
    let (s, t) = transformed_ends(tg, &eta.source, &eta.target, mode);
    if hom.source != s || hom.target != t {
        return Err(RepError::SourceTargetMismatch);
    }
    let rep = twist_projrep(tg, &eta.rep, eta.x, eta.target.character(), mode);
    identify(tg, hom, tg.group().inv(eta.x), &rep)
}

/// The matrix versions `φ^{∨_1}(g)_{ij} = φ(g)_{ji}`,
/// `φ^{∨_2}(g)_{ij} = (φ(g)_{ji}^{-1})^T` and `φ^{†_1}(g)_{ij} = conj φ(g)_{ji}`.
pub fn transform_matrix(tg: &TwoGroup, eta: &MatIntertwiner, mode: TwistMode) -> MatIntertwiner {
    let (n, m) = (eta.source.dim(), eta.target.dim());
    let (source, target) = match mode {
        TwistMode::Dual1 => (eta.target.dual(tg), eta.source.dual(tg)),
        _ => (eta.target.clone(), eta.source.clone()),
    };
    // new entry (j, i) with j a point of the old source, i of the old target
    let idx = |j: usize, i: usize| j * m + i;
    let mut spaces = vec![HermSpace::standard(0); n * m];
    for i in 0..m {
        for j in 0..n {
            let sp = eta.space(i, j);
            spaces[idx(j, i)] = match mode {
                TwistMode::Dual1 => sp.clone(),
                TwistMode::Dual2 => HermSpace::from_form(linalg::inverse(sp.form()).expect("nondegenerate").transpose()),
                TwistMode::Adjoint => HermSpace::from_form(sp.form().map(|z| z.conj())),
            };
        }
    }
    let maps = eta
        .maps
        .iter()
        .map(|row| {
            let mut out = vec![CMat::zeros(0, 0); n * m];
            for i in 0..m {
                for j in 0..n {
                    let phi = &row[i * n + j];
                    out[idx(j, i)] = match mode {
                        TwistMode::Dual1 => phi.clone(),
                        TwistMode::Dual2 => linalg::inverse(phi).expect("invertible").transpose(),
                        TwistMode::Adjoint => phi.map(|z| z.conj()),
                    };
                }
            }
            out
        })
        .collect();
    MatIntertwiner { source, target, spaces, maps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::two_rep::enumerate_irreducibles;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    #[test]
    fn identity_intertwiner_induces_to_identity() {
        let tg = TwoGroup::from_group(FiniteGroup::symmetric(3));
        for r in enumerate_irreducibles(&tg, Flavour::Positive).unwrap().irreducibles {
            let hom = classify(&tg, &r, &r, &mut rng()).unwrap();
            let id = hom.irreducibles.iter().find(|e| e.x == 0 && e.dim() == 1 && e.components == [0]).unwrap();
            let mat = induce_intertwiner(&tg, id).unwrap();
            let q5 = induce(&tg, &r);
            let want = MatIntertwiner::identity(&q5, 6);
            for g in 0..6 {
                for i in 0..q5.dim() {
                    for j in 0..q5.dim() {
                        assert!(linalg::approx_eq(mat.map(g, i, j), want.map(g, i, j), 1e-12));
                    }
                }
            }
        }
    }

    #[test]
    fn endomorphisms_of_the_trivial_rep_are_class_functions() {
        for (g, classes) in [(FiniteGroup::cyclic(2), 2), (FiniteGroup::symmetric(3), 3), (FiniteGroup::klein(), 4)] {
            let tg = TwoGroup::from_group(g);
            let one = Irr2Rep::trivial(&tg, Flavour::Positive);
            assert_eq!(classify(&tg, &one, &one, &mut rng()).unwrap().len(), classes);
        }
    }

    #[test]
    fn induced_intertwiners_verify_and_decompose() {
        for g in [FiniteGroup::symmetric(3), FiniteGroup::cyclic(4)] {
            let tg = TwoGroup::from_group(g);
            for flavour in [Flavour::Unitary, Flavour::Positive] {
                let irr = enumerate_irreducibles(&tg, flavour).unwrap().irreducibles;
                for a in &irr {
                    for b in &irr {
                        let hom = classify(&tg, a, b, &mut rng()).unwrap();
                        for (k, eta) in hom.irreducibles.iter().enumerate() {
                            let mat = induce_intertwiner(&tg, eta).unwrap();
                            assert_eq!(verify_intertwiner(&tg, &mat), vec![]);
                            let mut want = vec![0; hom.len()];
                            want[k] = 1;
                            assert_eq!(decompose_matrix(&tg, &mat, &hom).unwrap(), want);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn perturbed_intertwiner_fails() {
        let tg = TwoGroup::from_group(FiniteGroup::symmetric(3));
        let irr = enumerate_irreducibles(&tg, Flavour::Positive).unwrap().irreducibles;
        let r = irr.iter().find(|r| r.subgroup().order() < 6).unwrap();
        let hom = classify(&tg, r, r, &mut rng()).unwrap();
        let mut mat = induce_intertwiner(&tg, &hom.irreducibles[0]).unwrap();
        let (i, j) = (0..mat.target().dim())
            .flat_map(|i| (0..mat.source().dim()).map(move |j| (i, j)))
            .find(|&(i, j)| mat.space(i, j).dim() > 0)
            .unwrap();
        *mat.map_mut(1, i, j) *= c(2.0);
        let fails = verify_intertwiner(&tg, &mat);
        assert!(fails.iter().any(|f| f.condition == "composition"));
        assert!(fails.iter().any(|f| f.condition == "unitarity"));
    }

    fn all_homs(tg: &TwoGroup, flavour: Flavour) -> (Vec<Irr2Rep>, Vec<Vec<HomSpace>>) {
        let irr = enumerate_irreducibles(tg, flavour).unwrap().irreducibles;
        let homs = irr.iter().map(|a| irr.iter().map(|b| classify(tg, a, b, &mut rng()).unwrap()).collect()).collect();
        (irr, homs)
    }

    fn check_composition(tg: &TwoGroup, flavour: Flavour) {
        let (irr, homs) = all_homs(tg, flavour);
        let n = irr.len();
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for e1 in &homs[a][b].irreducibles {
                        for e2 in &homs[b][cc].irreducibles {
                            let got = compose_irreducible(tg, e1, e2, &homs[a][cc]).unwrap();
                            let m1 = induce_intertwiner(tg, e1).unwrap();
                            let m2 = induce_intertwiner(tg, e2).unwrap();
                            let composed = compose_matrix(&m2, &m1).unwrap();
                            assert_eq!(verify_intertwiner(tg, &composed), vec![]);
                            assert_eq!(decompose_matrix(tg, &composed, &homs[a][cc]).unwrap(), got);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn composition_matches_matrix_composition() {
        for g in [FiniteGroup::symmetric(3), FiniteGroup::klein()] {
            let tg = TwoGroup::from_group(g);
            for flavour in [Flavour::Ordinary, Flavour::Unitary, Flavour::Positive] {
                check_composition(&tg, flavour);
            }
        }
    }

    #[test]
    fn composition_matches_with_nontrivial_postnikov_class() {
        let tg = crate::two_group::tests::z2_nontrivial();
        for flavour in [Flavour::Ordinary, Flavour::Unitary, Flavour::Positive] {
            check_composition(&tg, flavour);
        }
    }

    #[test]
    fn transforms_match_matrix_transforms() {
        let tg = TwoGroup::from_group(FiniteGroup::symmetric(3));
        for flavour in [Flavour::Unitary, Flavour::Positive] {
            let (irr, homs) = all_homs(&tg, flavour);
            for (a, row) in homs.iter().enumerate() {
                for (b, hom) in row.iter().enumerate() {
                    for eta in &hom.irreducibles {
                        let mat = induce_intertwiner(&tg, eta).unwrap();
                        for mode in [TwistMode::Dual1, TwistMode::Dual2, TwistMode::Adjoint] {
                            let (s, t) = transformed_ends(&tg, &irr[a], &irr[b], mode);
                            let target_hom = classify(&tg, &s, &t, &mut rng()).unwrap();
                            let got = transform(&tg, eta, mode, &target_hom).unwrap();
                            let tm = transform_matrix(&tg, &mat, mode);
                            assert_eq!(verify_intertwiner(&tg, &tm), vec![], "{mode:?}");
                            assert_eq!(decompose_matrix(&tg, &tm, &target_hom).unwrap(), got, "{mode:?}");
                        }
                    }
                }
            }
        }
    }
}
