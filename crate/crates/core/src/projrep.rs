//! Projective representations of subgroups with a fixed `U(1)`-valued
//! 2-cocycle: irreducible decomposition, invariant Hermitian forms,
//! twists and induction.

use num_complex::Complex64;
use rand::Rng;

use crate::abelian::Character;
use crate::cochain::{cocycle_failure, Cochain, U1};
use crate::error::{CohomologyError, RepError};
use crate::group::{CosetFrame, Element, FiniteGroup, Subgroup};
use crate::linalg::{self, c, CMat, TOL};
use crate::phase::{Phase, Sign};
use crate::two_group::TwoGroup;

/// A finite-dimensional space with a nondegenerate Hermitian form.
#[derive(Clone, Debug)]
pub struct HermSpace {
    form: CMat,
    positive: bool,
}

impl HermSpace {
    pub fn standard(dim: usize) -> Self {
        HermSpace { form: linalg::identity(dim), positive: true }
    }

    /// `[[0, I], [I, 0]]` on `C^d ⊕ C^d`.
    pub fn hyperbolic(d: usize) -> Self {
        let mut form = CMat::zeros(2 * d, 2 * d);
        for k in 0..d {
            form[(k, d + k)] = c(1.0);
            form[(d + k, k)] = c(1.0);
        }
        HermSpace { form, positive: d == 0 }
    }

    pub fn from_form(form: CMat) -> Self {
        let positive = linalg::approx_eq(&form, &linalg::identity(form.nrows()), TOL);
        HermSpace { form, positive }
    }

    pub fn dim(&self) -> usize {
        self.form.nrows()
    }

    pub fn form(&self) -> &CMat {
        &self.form
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    /// Numbers of positive and negative eigenvalues of the form.
    pub fn signature(&self) -> (usize, usize) {
        let (vals, _) = linalg::hermitian_eigen(&self.form);
        (vals.iter().filter(|&&v| v > 0.0).count(), vals.iter().filter(|&&v| v < 0.0).count())
    }

    pub fn scaled(&self, s: Sign) -> Self {
        if s == Sign::Plus {
            return self.clone();
        }
        HermSpace { form: &self.form * c(-1.0), positive: self.dim() == 0 }
    }

    pub fn tensor(&self, other: &HermSpace) -> Self {
        HermSpace { form: linalg::kron(&self.form, &other.form), positive: self.positive && other.positive }
    }

    pub fn direct_sum(parts: &[&HermSpace]) -> Self {
        let forms: Vec<&CMat> = parts.iter().map(|p| &p.form).collect();
        HermSpace { form: linalg::block_diagonal(&forms), positive: parts.iter().all(|p| p.positive) }
    }

    /// Adjoint of `m: self → target` with respect to the two forms.
    pub fn adjoint_of(&self, m: &CMat, target: &HermSpace) -> Option<CMat> {
        Some(linalg::inverse(&self.form)? * m.adjoint() * &target.form)
    }
}

/// Matrices `ψ(k)` for `k ∈ K` with `ψ(g)ψ(h) = ω(g,h) ψ(gh)`.
#[derive(Clone, Debug)]
pub struct ProjRep {
    subgroup: Subgroup,
    cocycle: Cochain<Phase>,
    space: HermSpace,
    matrices: Vec<CMat>,
    sign_character: Option<Cochain<Sign>>,
}

impl ProjRep {
    /// Wraps matrices indexed by position in `subgroup.members()`.
    pub fn from_matrices(subgroup: &Subgroup, cocycle: Cochain<Phase>, matrices: Vec<CMat>) -> Self {
        assert_eq!(matrices.len(), subgroup.order());
        let dim = matrices.first().map_or(0, |m| m.nrows());
        ProjRep {
            subgroup: subgroup.clone(),
            cocycle,
            space: HermSpace::standard(dim),
            matrices,
            sign_character: None,
        }
    }

    /// Builds a representation from a function on group elements.
    pub fn from_fn(subgroup: &Subgroup, cocycle: Cochain<Phase>, f: impl Fn(Element) -> CMat) -> Self {
        let mats = subgroup.members().iter().map(|&k| f(k)).collect();
        Self::from_matrices(subgroup, cocycle, mats)
    }

    pub fn trivial(subgroup: &Subgroup) -> Self {
        Self::from_fn(subgroup, Cochain::zero(subgroup, 2), |_| linalg::identity(1))
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn cocycle(&self) -> &Cochain<Phase> {
        &self.cocycle
    }

    pub fn space(&self) -> &HermSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn sign_character(&self) -> Option<&Cochain<Sign>> {
        self.sign_character.as_ref()
    }

    pub fn matrix(&self, k: Element) -> &CMat {
        &self.matrices[self.subgroup.position(k).expect("element of the subgroup")]
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.matrices
    }

    pub fn with_space(mut self, space: HermSpace, sign_character: Option<Cochain<Sign>>) -> Self {
        assert_eq!(space.dim(), self.dim());
        self.space = space;
        self.sign_character = sign_character;
        self
    }

    /// Twisted character, indexed by position in the subgroup.
    pub fn character(&self) -> Vec<Complex64> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    /// Checks `ψ(e) = 1` and the projective product rule.
    pub fn check(&self, group: &FiniteGroup, tol: f64) -> Result<(), RepError> {
        if !linalg::approx_eq(self.matrix(0), &linalg::identity(self.dim()), tol) {
            return Err(RepError::NotProjective { g: 0, h: 0 });
        }
        for &g in self.subgroup.members() {
            for &h in self.subgroup.members() {
                let lhs = self.matrix(g) * self.matrix(h);
                let rhs = self.matrix(group.mul(g, h)) * self.cocycle.at2(g, h).to_complex();
                if !linalg::approx_eq(&lhs, &rhs, tol) {
                    return Err(RepError::NotProjective { g, h });
                }
            }
        }
        Ok(())
    }

    /// First element violating `ψ(h)^† = ε(h) ψ(h)^{-1}` on the attached form.
    pub fn conjugation_failure(&self, tol: f64) -> Option<Element> {
        let eps = self.sign_character.as_ref()?;
        let b = self.space.form();
        self.subgroup.members().iter().copied().find(|&h| {
            let m = self.matrix(h);
            let lhs = m.adjoint() * b * m;
            !linalg::approx_eq(&lhs, &(b * c(eps.at1(h).value())), tol)
        })
    }

    /// `ψ ↦ f·ψ` for a phase-valued function `f`, with the cocycle changed by `df`.
    pub fn rescaled(&self, group: &FiniteGroup, f: &Cochain<Phase>) -> ProjRep {
        let df = crate::cohomology::d_u1(group, f);
        let mats = self
            .subgroup
            .members()
            .iter()
            .zip(&self.matrices)
            .map(|(&k, m)| m * f.at1(k).to_complex())
            .collect();
        ProjRep {
            subgroup: self.subgroup.clone(),
            cocycle: self.cocycle.add(&df),
            space: self.space.clone(),
            matrices: mats,
            sign_character: self.sign_character.clone(),
        }
    }

    /// Restriction to a subgroup.
    pub fn restrict(&self, sub: &Subgroup) -> ProjRep {
        ProjRep {
            subgroup: sub.clone(),
            cocycle: self.cocycle.restrict(sub),
            space: self.space.clone(),
            matrices: sub.members().iter().map(|&k| self.matrix(k).clone()).collect(),
            sign_character: self.sign_character.as_ref().map(|e| e.restrict(sub)),
        }
    }

    pub fn direct_sum(parts: &[&ProjRep]) -> ProjRep {
        let first = parts[0];
        let mats = (0..first.subgroup.order())
            .map(|p| {
                let blocks: Vec<&CMat> = parts.iter().map(|r| &r.matrices[p]).collect();
                linalg::block_diagonal(&blocks)
            })
            .collect();
        let spaces: Vec<&HermSpace> = parts.iter().map(|r| &r.space).collect();
        ProjRep {
            subgroup: first.subgroup.clone(),
            cocycle: first.cocycle.clone(),
            space: HermSpace::direct_sum(&spaces),
            matrices: mats,
            sign_character: first.sign_character.clone(),
        }
    }
}

fn cocycle_check(group: &FiniteGroup, cocycle: &Cochain<Phase>) -> Result<(), RepError> {
    if let Some(w) = cocycle_failure(group, cocycle, &U1) {
        return Err(RepError::Cohomology(CohomologyError::NotACocycle { witness: w }));
    }
    Ok(())
}

/// The twisted regular representation `L(g) e_h = ω(g,h) e_{gh}`.
pub fn regular_projrep(subgroup: &Subgroup, cocycle: &Cochain<Phase>, group: &FiniteGroup) -> ProjRep {
    let n = subgroup.order();
    ProjRep::from_fn(subgroup, cocycle.clone(), |g| {
        let mut m = CMat::zeros(n, n);
        for (a, &h) in subgroup.members().iter().enumerate() {
            let b = subgroup.position(group.mul(g, h)).unwrap();
            m[(b, a)] = cocycle.at2(g, h).to_complex();
        }
        m
    })
}

/// All irreducible representations of the twisted group algebra, sorted by
/// dimension and then by character (the trivial representation first when
/// the cocycle vanishes). Matrices are unitary.
pub fn irreducible_projreps<R: Rng>(
    group: &FiniteGroup,
    subgroup: &Subgroup,
    cocycle: &Cochain<Phase>,
    rng: &mut R,
) -> Result<Vec<ProjRep>, RepError> {
    cocycle_check(group, cocycle)?;
    let reg = regular_projrep(subgroup, cocycle, group);
    let n = subgroup.order();
    let mut irreps: Vec<ProjRep> = Vec::new();
    let mut stack = vec![linalg::identity(n)];
    while let Some(q) = stack.pop() {
        let k = q.ncols();
        let restricted: Vec<CMat> = reg.matrices.iter().map(|m| q.adjoint() * m * &q).collect();
        let norm: f64 = restricted.iter().map(|m| m.trace().norm_sqr()).sum::<f64>() / n as f64;
        if (norm - 1.0).abs() < 1e-6 {
            let chi: Vec<Complex64> = restricted.iter().map(|m| m.trace()).collect();
            let seen = irreps.iter().any(|r| {
                r.dim() == k && r.character().iter().zip(&chi).all(|(a, b)| (a - b).norm() < 1e-6)
            });
            if !seen {
                irreps.push(ProjRep::from_matrices(subgroup, cocycle.clone(), restricted));
            }
            continue;
        }
        let mut attempts = 0;
        let blocks = loop {
            attempts += 1;
            if attempts > 50 {
                return Err(RepError::Decomposition("commutant splitting did not converge".into()));
            }
            let x = linalg::random_hermitian(k, rng);
            let mut avg = CMat::zeros(k, k);
            for m in &restricted {
                avg += m * &x * m.adjoint();
            }
            avg /= c(n as f64);
            let (vals, vecs) = linalg::hermitian_eigen(&avg);
            let mut groups: Vec<Vec<usize>> = Vec::new();
            for (i, v) in vals.iter().enumerate() {
                match groups.last_mut() {
                    Some(g) if (vals[*g.last().unwrap()] - v).abs() < 1e-7 => g.push(i),
                    _ => groups.push(vec![i]),
                }
            }
            if groups.len() > 1 {
                break groups
                    .into_iter()
                    .map(|g| CMat::from_fn(k, g.len(), |r, j| vecs[(r, g[j])]))
                    .collect::<Vec<_>>();
            }
        };
        for b in blocks {
            stack.push(&q * b);
        }
    }
    let total: usize = irreps.iter().map(|r| r.dim() * r.dim()).sum();
    if total != n {
        return Err(RepError::Decomposition(format!("dimension count {total} differs from group order {n}")));
    }
    irreps.sort_by_key(sort_key);
    Ok(irreps)
}

fn sort_key(r: &ProjRep) -> (usize, Vec<(i64, i64)>) {
    (r.dim(), r.character().iter().map(|z| (-linalg::key(z.re), -linalg::key(z.im))).collect())
}

/// Multiplicities of each irreducible in `rep`, by twisted character inner products.
pub fn decompose(rep: &ProjRep, irreps: &[ProjRep]) -> Result<Vec<usize>, RepError> {
    let chi = rep.character();
    let n = rep.subgroup.order() as f64;
    let mut mult = Vec::with_capacity(irreps.len());
    let mut dims = 0;
    for irr in irreps {
        if irr.subgroup != rep.subgroup || !irr.cocycle.same_values(&rep.cocycle) {
            return Err(RepError::CocycleRepresentativeMismatch);
        }
        let ip: Complex64 = chi.iter().zip(irr.character()).map(|(a, b)| a * b.conj()).sum::<Complex64>() / n;
        let m = ip.re.round();
        if (ip - c(m)).norm() > 1e-6 || m < 0.0 {
            return Err(RepError::Decomposition(format!("non-integral multiplicity {ip}")));
        }
        mult.push(m as usize);
        dims += m as usize * irr.dim();
    }
    if dims != rep.dim() {
        return Err(RepError::Decomposition(format!("multiplicities account for {dims} of {} dimensions", rep.dim())));
    }
    Ok(mult)
}

/// `ψ^ε(h) = ε(h) (ψ(h)^{-1})^†`, which has the same cocycle as `ψ`.
pub fn epsilon_dual(rep: &ProjRep, eps: &Cochain<Sign>) -> ProjRep {
    let mats = rep
        .subgroup
        .members()
        .iter()
        .zip(&rep.matrices)
        .map(|(&h, m)| linalg::inverse(m).expect("invertible").adjoint() * c(eps.at1(h).value()))
        .collect();
    ProjRep::from_matrices(&rep.subgroup, rep.cocycle.clone(), mats)
}

/// Equips `rep` with a nondegenerate Hermitian form `B` such that
/// `ψ(h)^* B ψ(h) = ε(h) B`, changing basis so that `B` is diagonal `±1`.
/// Returns `None` if no nonzero solution exists.
pub fn attach_invariant_form(rep: &ProjRep, eps: &Cochain<Sign>) -> Option<ProjRep> {
    let d = rep.dim();
    let trivial_eps = eps.is_trivial();
    if trivial_eps && rep.matrices.iter().all(|m| linalg::approx_eq(&(m.adjoint() * m), &linalg::identity(d), 1e-9)) {
        return Some(rep.clone().with_space(HermSpace::standard(d), Some(eps.clone())));
    }
    // unknown B as a vector of d^2 entries, column-major
    let members = rep.subgroup.members();
    let mut sys = CMat::zeros(members.len() * d * d, d * d);
    for (k, (&h, m)) in members.iter().zip(&rep.matrices).enumerate() {
        let e = eps.at1(h).value();
        // vec(M^* B M) = (M^T ⊗ M^*) vec(B)
        let op = linalg::kron(&m.transpose(), &m.adjoint()) - linalg::identity(d * d) * c(e);
        sys.view_mut((k * d * d, 0), (d * d, d * d)).copy_from(&op);
    }
    let ns = linalg::null_space(&sys, 1e-10);
    if ns.ncols() == 0 {
        return None;
    }
    let b = CMat::from_fn(d, d, |r, col| ns[(col * d + r, 0)]);
    let mut herm = &b + b.adjoint();
    if herm.norm() < 1e-6 {
        herm = (&b - b.adjoint()) * Complex64::new(0.0, 1.0);
    }
    let (vals, vecs) = linalg::hermitian_eigen(&herm);
    if vals.iter().any(|v| v.abs() < 1e-8) {
        return None;
    }
    let npos = vals.iter().filter(|&&v| v > 0.0).count();
    let flip = if trivial_eps { npos == 0 } else { 2 * npos < d };
    // order eigenvalues so the positive part of the final form comes first
    let mut order: Vec<usize> = (0..d).collect();
    let sgn = if flip { -1.0 } else { 1.0 };
    order.sort_by(|&a, &b| (sgn * vals[b]).partial_cmp(&(sgn * vals[a])).unwrap());
    // B' = sgn B = P^* J P with P = |D|^{1/2} U^*
    let p = CMat::from_fn(d, d, |r, col| vecs[(col, order[r])].conj() * vals[order[r]].abs().sqrt());
    let p_inv = linalg::inverse(&p)?;
    let j = CMat::from_fn(d, d, |r, col| if r == col { c((sgn * vals[order[r]]).signum()) } else { c(0.0) });
    let mats = rep.matrices.iter().map(|m| &p * m * &p_inv).collect();
    let out = ProjRep::from_matrices(&rep.subgroup, rep.cocycle.clone(), mats)
        .with_space(HermSpace::from_form(j), Some(eps.clone()));
    Some(out)
}

/// `ψ ⊕ ψ^ε` with the hyperbolic form, which always satisfies the
/// conjugation rule for `ε`.
pub fn hyperbolic_pair(rep: &ProjRep, eps: &Cochain<Sign>) -> ProjRep {
    let dual = epsilon_dual(rep, eps);
    let mats = rep.matrices.iter().zip(&dual.matrices).map(|(a, b)| linalg::block_diagonal(&[a, b])).collect();
    ProjRep::from_matrices(&rep.subgroup, rep.cocycle.clone(), mats)
        .with_space(HermSpace::hyperbolic(rep.dim()), Some(eps.clone()))
}

/// Transformations of an intertwiner's representation under duals and adjoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistMode {
    Dual1,
    Dual2,
    Adjoint,
}

/// The representation `k ↦ f(k)·T(ψ(ˣk))` of `x^{-1} K x`, where
/// `f = ⟨λ', κ_x⟩^{∓1}` and `T` is the identity, inverse-transpose or
/// complex conjugation.
pub fn twist_projrep(tg: &TwoGroup, rep: &ProjRep, x: Element, lambda_prime: &Character, mode: TwistMode) -> ProjRep {
    let gr = tg.group();
    let k_new = rep.subgroup.conjugate(gr, gr.inv(x));
    let f = Cochain::from_fn(&k_new, 1, Phase::ZERO, |t| {
        let kap = tg.pair(lambda_prime, tg.kappa(x, t[0]));
        if mode == TwistMode::Dual1 {
            -kap
        } else {
            kap
        }
    });
    let sign = if mode == TwistMode::Dual1 { 1 } else { -1 };
    let base = Cochain::from_fn(&k_new, 2, Phase::ZERO, |t| *rep.cocycle.at2(gr.conj(x, t[0]), gr.conj(x, t[1])) * sign);
    let df = crate::cohomology::d_u1(gr, &f);
    let cocycle = base.add(&df);
    let mats = k_new
        .members()
        .iter()
        .map(|&k| {
            let m = rep.matrix(gr.conj(x, k));
            let t = match mode {
                TwistMode::Dual1 => m.clone(),
                TwistMode::Dual2 => linalg::inverse(m).expect("invertible").transpose(),
                TwistMode::Adjoint => m.map(|z| z.conj()),
            };
            t * f.at1(k).to_complex()
        })
        .collect();
    let form = match mode {
        TwistMode::Dual1 => rep.space.form().clone(),
        TwistMode::Dual2 => linalg::inverse(rep.space.form()).expect("nondegenerate").transpose(),
        TwistMode::Adjoint => rep.space.form().map(|z| z.conj()),
    };
    let eps = rep
        .sign_character
        .as_ref()
        .map(|e| Cochain::from_fn(&k_new, 1, Sign::Plus, |t| *e.at1(gr.conj(x, t[0]))));
    ProjRep::from_matrices(&k_new, cocycle, mats).with_space(HermSpace::from_form(form), eps)
}

/// Induction from `K_0` to `K ⊃ K_0` for a target cocycle on `K` restricting
/// to the cocycle of `rep`.
pub fn induce_projrep(
    group: &FiniteGroup,
    rep: &ProjRep,
    k: &Subgroup,
    target: &Cochain<Phase>,
) -> Result<ProjRep, RepError> {
    let k0 = &rep.subgroup;
    if !target.restrict(k0).same_values(&rep.cocycle) {
        return Err(RepError::CocycleRepresentativeMismatch);
    }
    if k0 == k {
        return Ok(rep.clone());
    }
    // left cosets K/K_0 inside K
    let mut reps: Vec<Element> = Vec::new();
    let mut coset_of = vec![usize::MAX; group.order()];
    for &a in k.members() {
        if coset_of[a] == usize::MAX {
            for &h in k0.members() {
                coset_of[group.mul(a, h)] = reps.len();
            }
            reps.push(a);
        }
    }
    let m = reps.len();
    let d = rep.dim();
    let mats = k
        .members()
        .iter()
        .map(|&g| {
            let mut out = CMat::zeros(m * d, m * d);
            for (a, &ca) in reps.iter().enumerate() {
                let gca = group.mul(g, ca);
                let b = coset_of[gca];
                let h = group.mul(group.inv(reps[b]), gca);
                let ph = *target.at2(g, ca) - *target.at2(reps[b], h);
                out.view_mut((b * d, a * d), (d, d)).copy_from(&(rep.matrix(h) * ph.to_complex()));
            }
            out
        })
        .collect();
    let spaces: Vec<&HermSpace> = std::iter::repeat_n(&rep.space, m).collect();
    Ok(ProjRep::from_matrices(k, target.clone(), mats).with_space(HermSpace::direct_sum(&spaces), None))
}

/// The frame of left cosets of `K_0` in `K` used by [`induce_projrep`].
pub fn induction_frame(group: &FiniteGroup, k0: &Subgroup) -> CosetFrame {
    CosetFrame::new(group, k0)
}

/// Inner product of twisted characters, `(1/|K|) Σ χ_a conj(χ_b)`.
pub fn character_inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let n = a.len() as f64;
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum::<Complex64>() / n
}
