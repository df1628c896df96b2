//! 2-representations: irreducible data `(H, λ, u, p|q)`, the expanded
//! quintuples `(n, σ, χ, c, s)`, induction, reduction, verification of the
//! coherence conditions, duals and equivalence tests.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abelian::Character;
use crate::cochain::{cocycle_failure, differential, Cochain, Permuted, U1, Z2};
use crate::cohomology::{
    coboundary_witness, count_sign_cocycles, covariant_1cochains, d_u1, h2_representatives, left_twist,
    sign_homomorphisms, solve_inhomogeneous,
};
use crate::error::RepError;
use crate::group::{CosetFrame, Element, PermAction, Subgroup};
use crate::modlin::{self, ModMatrix};
use crate::phase::{Phase, Sign};
use crate::two_group::TwoGroup;

/// Which 2-category the representations live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Flavour {
    /// No dagger structure; sign data is ignored.
    Ordinary,
    /// Hermitian spaces, sign data `p ∈ Hom(H, Z_2)`.
    Unitary,
    /// Hilbert spaces, sign data an `H`-covariant `q ∈ C^1(G, Z_2)`.
    Positive,
}

impl FromStr for Flavour {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ordinary" => Ok(Flavour::Ordinary),
            "unitary" => Ok(Flavour::Unitary),
            "positive" => Ok(Flavour::Positive),
            other => Err(format!("unknown flavour {other:?}; expected ordinary, unitary or positive")),
        }
    }
}

impl fmt::Display for Flavour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavour::Ordinary => "ordinary",
            Flavour::Unitary => "unitary",
            Flavour::Positive => "positive",
        })
    }
}

/// `⟨λ, α|_K⟩` as a 3-cochain on `K`.
pub fn alpha_pairing(tg: &TwoGroup, lambda: &Character, k: &Subgroup) -> Cochain<Phase> {
    Cochain::from_fn(k, 3, Phase::ZERO, |t| tg.pair(lambda, tg.al(t[0], t[1], t[2])))
}

/// `⟨λ, γ_x⟩` as a 2-cochain on `K`.
pub fn gamma_pairing(tg: &TwoGroup, lambda: &Character, x: Element, k: &Subgroup) -> Cochain<Phase> {
    Cochain::from_fn(k, 2, Phase::ZERO, |t| tg.pair(lambda, tg.gamma(x, t[0], t[1])))
}

/// An irreducible 2-representation `(H, λ, u, p)` or `(H, λ, u, q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Irr2Rep {
    flavour: Flavour,
    subgroup: Subgroup,
    character: Character,
    cochain: Cochain<Phase>,
    /// On `H` for the ordinary and unitary flavours, on `G` for the positive one.
    sign: Cochain<Sign>,
}

impl Irr2Rep {
    /// Validates invariance of `λ`, `du = ⟨λ, α|_H⟩` and the law of the sign datum.
    pub fn new(
        tg: &TwoGroup,
        flavour: Flavour,
        subgroup: Subgroup,
        character: Character,
        cochain: Cochain<Phase>,
        sign: Cochain<Sign>,
    ) -> Result<Self, RepError> {
        let gr = tg.group();
        if cochain.domain() != &subgroup || cochain.degree() != 2 {
            return Err(RepError::Invalid("2-cochain must live on the subgroup".into()));
        }
        if let Some(&h) = subgroup.members().iter().find(|&&h| tg.act_char(h, &character) != character) {
            return Err(RepError::Invalid(format!("character is not invariant under element {h}")));
        }
        let du = d_u1(gr, &cochain);
        if !du.same_values(&alpha_pairing(tg, &character, &subgroup)) {
            return Err(RepError::Invalid("du differs from the pairing of the character with α".into()));
        }
        if sign.degree() != 1 || !sign.at1(0).eq(&Sign::Plus) {
            return Err(RepError::Invalid("sign datum must be a normalised 1-cochain".into()));
        }
        match flavour {
            Flavour::Ordinary | Flavour::Unitary => {
                if sign.domain() != &subgroup {
                    return Err(RepError::Invalid("sign datum must live on the subgroup".into()));
                }
                if flavour == Flavour::Ordinary && !sign.is_trivial() {
                    return Err(RepError::Invalid("ordinary 2-representations carry no sign datum".into()));
                }
                if cocycle_failure(gr, &sign, &Z2).is_some() {
                    return Err(RepError::Invalid("sign datum is not a homomorphism".into()));
                }
            }
            Flavour::Positive => {
                if !sign.domain().is_whole() {
                    return Err(RepError::Invalid("positive sign datum must live on the whole group".into()));
                }
                for &h in subgroup.members() {
                    for g in gr.elements() {
                        if *sign.at1(gr.mul(h, g)) != *sign.at1(h) * *sign.at1(g) {
                            return Err(RepError::Invalid(format!("sign datum is not covariant at ({h}, {g})")));
                        }
                    }
                }
            }
        }
        Ok(Irr2Rep { flavour, subgroup, character, cochain, sign })
    }

    /// The trivial 2-representation `(G, 1, 1, 1)`.
    pub fn trivial(tg: &TwoGroup, flavour: Flavour) -> Self {
        let g = Subgroup::whole(tg.group());
        Irr2Rep {
            flavour,
            character: tg.a().trivial_character(),
            cochain: Cochain::zero(&g, 2),
            sign: Cochain::trivial_signs(&g, 1),
            subgroup: g,
        }
    }

    pub fn flavour(&self) -> Flavour {
        self.flavour
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn cochain(&self) -> &Cochain<Phase> {
        &self.cochain
    }

    /// The stored sign datum: `p` on `H`, or `q` on `G` for the positive flavour.
    pub fn sign(&self) -> &Cochain<Sign> {
        &self.sign
    }

    /// The homomorphism `p = q|_H` (trivial for the ordinary flavour).
    pub fn hom_sign(&self) -> Cochain<Sign> {
        match self.flavour {
            Flavour::Positive => self.sign.restrict(&self.subgroup),
            _ => self.sign.clone(),
        }
    }

    pub fn dim(&self, tg: &TwoGroup) -> usize {
        tg.group().order() / self.subgroup.order()
    }

    /// `ρ^{∨_1} = (H, λ^*, u^*, p)`.
    pub fn dual(&self, tg: &TwoGroup) -> Irr2Rep {
        Irr2Rep {
            flavour: self.flavour,
            subgroup: self.subgroup.clone(),
            character: self.character.conjugate(tg.a()),
            cochain: self.cochain.neg(),
            sign: self.sign.clone(),
        }
    }

    /// The image under forgetting to the next weaker flavour: positive data
    /// `q` maps to `q|_H`, unitary data maps to the ordinary triple.
    pub fn forget(&self) -> Irr2Rep {
        let (flavour, sign) = match self.flavour {
            Flavour::Positive => (Flavour::Unitary, self.hom_sign()),
            _ => (Flavour::Ordinary, Cochain::trivial_signs(&self.subgroup, 1)),
        };
        Irr2Rep { flavour, sign, ..self.clone() }
    }

    /// A positive preimage of unitary data: `q(h r) := p(h)` on right cosets `H r`.
    pub fn positive_lift(&self, tg: &TwoGroup) -> Irr2Rep {
        assert_eq!(self.flavour, Flavour::Unitary);
        let gr = tg.group();
        let mut vals = vec![None; gr.order()];
        for g in gr.elements() {
            if vals[g].is_none() {
                for &h in self.subgroup.members() {
                    vals[gr.mul(h, g)] = Some(*self.sign.at1(h));
                }
            }
        }
        let whole = Subgroup::whole(gr);
        let q = Cochain::from_fn(&whole, 1, Sign::Plus, |t| vals[t[0]].unwrap());
        Irr2Rep { flavour: Flavour::Positive, sign: q, ..self.clone() }
    }
}

/// `ˣu' - u + ⟨λ, γ_x⟩` on `K = H ∩ ˣH'`: the cocycle of intertwiners `ρ → ρ'` at `x`.
pub fn intertwiner_cocycle(tg: &TwoGroup, source: &Irr2Rep, target: &Irr2Rep, x: Element) -> Cochain<Phase> {
    let gr = tg.group();
    let k = source.subgroup.intersect(&target.subgroup.conjugate(gr, x));
    let twisted = left_twist(gr, &target.cochain, x, Phase::ZERO).restrict(&k);
    twisted.sub(&source.cochain.restrict(&k)).add(&gamma_pairing(tg, &source.character, x, &k))
}

/// The sign character `ε = p / ˣp'` on `H ∩ ˣH'`.
pub fn intertwiner_sign(tg: &TwoGroup, source: &Irr2Rep, target: &Irr2Rep, x: Element) -> Cochain<Sign> {
    let gr = tg.group();
    let k = source.subgroup.intersect(&target.subgroup.conjugate(gr, x));
    let p = source.hom_sign();
    let pp = target.hom_sign();
    Cochain::from_fn(&k, 1, Sign::Plus, |t| *p.at1(t[0]) * *pp.at1(gr.conj_inv(x, t[0])))
}

/// Whether `q(g) = q'(x^{-1} g) q'(x^{-1})` for all `g`, i.e. `q = ˣq'`.
pub fn positive_filter(tg: &TwoGroup, source: &Irr2Rep, target: &Irr2Rep, x: Element) -> bool {
    let gr = tg.group();
    let xi = gr.inv(x);
    gr.elements().all(|g| *source.sign.at1(g) == *target.sign.at1(gr.mul(xi, g)) * *target.sign.at1(xi))
}

/// Searches for `x` with `ρ' = ˣρ`, returning the smallest such `x`.
///
/// The test is the existence of a one-dimensional invertible intertwiner
/// `ρ → ρ'` at `y = x^{-1}`: `H = ʸH'`, `λ = ʸλ'`, the class of
/// `ʸu' / u · ⟨λ, γ_y⟩` vanishes, and the sign data agree for the flavour.
pub fn are_equivalent(tg: &TwoGroup, a: &Irr2Rep, b: &Irr2Rep) -> Result<Option<Element>, RepError> {
    if a.flavour != b.flavour {
        return Err(RepError::FlavourMismatch(format!("{} vs {}", a.flavour, b.flavour)));
    }
    let gr = tg.group();
    if a.subgroup.order() != b.subgroup.order() {
        return Ok(None);
    }
    let mut found = None;
    for y in gr.elements() {
        if b.subgroup.conjugate(gr, y) != a.subgroup || tg.act_char(y, &b.character) != a.character {
            continue;
        }
        let signs_ok = match a.flavour {
            Flavour::Ordinary => true,
            Flavour::Unitary => intertwiner_sign(tg, a, b, y).is_trivial(),
            Flavour::Positive => positive_filter(tg, a, b, y),
        };
        if !signs_ok {
            continue;
        }
        let w = intertwiner_cocycle(tg, a, b, y);
        if coboundary_witness(gr, &w, &U1)?.is_some() {
            let x = gr.inv(y);
            if found.is_none_or(|f| x < f) {
                found = Some(x);
            }
        }
    }
    Ok(found)
}

/// The expanded data `(n, σ, χ, c, s)` of a 2-representation.
#[derive(Clone, Debug)]
pub struct Quintuple2Rep {
    flavour: Flavour,
    action: PermAction,
    characters: Vec<Character>,
    cochain: Cochain<Vec<Phase>>,
    signs: Cochain<Vec<Sign>>,
    frame: Option<CosetFrame>,
}

impl PartialEq for Quintuple2Rep {
    fn eq(&self, other: &Self) -> bool {
        self.flavour == other.flavour
            && self.action == other.action
            && self.characters == other.characters
            && self.cochain == other.cochain
            && self.signs == other.signs
    }
}

impl Quintuple2Rep {
    pub fn new(
        flavour: Flavour,
        action: PermAction,
        characters: Vec<Character>,
        cochain: Cochain<Vec<Phase>>,
        signs: Cochain<Vec<Sign>>,
    ) -> Self {
        assert_eq!(characters.len(), action.degree());
        Quintuple2Rep { flavour, action, characters, cochain, signs, frame: None }
    }

    pub fn flavour(&self) -> Flavour {
        self.flavour
    }

    pub fn dim(&self) -> usize {
        self.action.degree()
    }

    pub fn action(&self) -> &PermAction {
        &self.action
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn cochain(&self) -> &Cochain<Vec<Phase>> {
        &self.cochain
    }

    pub fn signs(&self) -> &Cochain<Vec<Sign>> {
        &self.signs
    }

    pub fn frame(&self) -> Option<&CosetFrame> {
        self.frame.as_ref()
    }

    /// `c_i(g, h)`.
    pub fn c(&self, i: usize, g: Element, h: Element) -> Phase {
        self.cochain.at2(g, h)[i]
    }

    /// `s_i(g)`.
    pub fn s(&self, i: usize, g: Element) -> Sign {
        self.signs.at1(g)[i]
    }

    pub fn set_cochain(&mut self, cochain: Cochain<Vec<Phase>>) {
        self.cochain = cochain;
    }

    pub fn set_signs(&mut self, signs: Cochain<Vec<Sign>>) {
        self.signs = signs;
    }

    /// `ρ^{∨_1} = (n, σ, χ^*, c^*, s)`.
    pub fn dual(&self, tg: &TwoGroup) -> Quintuple2Rep {
        Quintuple2Rep {
            characters: self.characters.iter().map(|l| l.conjugate(tg.a())).collect(),
            cochain: self.cochain.map(Vec::new(), |v| v.iter().map(|p| -*p).collect()),
            ..self.clone()
        }
    }

    /// `(ℓ_0)_i(g) = c_{g^{-1} ▷ i}(g^{-1}, g)`.
    pub fn base_unitarisation(&self, tg: &TwoGroup) -> Cochain<Vec<Phase>> {
        let gr = tg.group();
        let whole = Subgroup::whole(gr);
        Cochain::from_fn(&whole, 1, Vec::new(), |t| {
            let g = t[0];
            let gi = gr.inv(g);
            (0..self.dim()).map(|i| self.c(self.action.apply(gi, i), gi, g)).collect()
        })
    }

    /// `ℓ = s · ℓ_0`.
    pub fn unitarisation(&self, tg: &TwoGroup) -> Cochain<Vec<Phase>> {
        let l0 = self.base_unitarisation(tg);
        let whole = Subgroup::whole(tg.group());
        Cochain::from_fn(&whole, 1, Vec::new(), |t| {
            l0.at1(t[0]).iter().zip(self.signs.at1(t[0])).map(|(p, s)| *p + s.to_phase()).collect()
        })
    }
}

/// `Ind(λ, u, p|q)`, built from the deterministic coset frame of `H`.
pub fn induce(tg: &TwoGroup, rho: &Irr2Rep) -> Quintuple2Rep {
    let gr = tg.group();
    let frame = CosetFrame::new(gr, &rho.subgroup);
    let n = frame.index();
    let act = frame.action().clone();
    let whole = Subgroup::whole(gr);
    let characters = (0..n).map(|i| tg.act_char(frame.rep(i), &rho.character)).collect();
    let cochain = Cochain::from_fn(&whole, 2, Vec::new(), |t| {
        let (g, h) = (t[0], t[1]);
        (0..n)
            .map(|i| {
                let gi = frame.little(gr, g, i);
                let j = act.apply(gr.inv(g), i);
                let hj = frame.little(gr, h, j);
                tg.pair(&rho.character, tg.induction_phi(&frame, i, g, h)) + *rho.cochain.at2(gi, hj)
            })
            .collect()
    });
    let signs = Cochain::from_fn(&whole, 1, Vec::new(), |t| {
        let g = t[0];
        (0..n)
            .map(|i| match rho.flavour {
                Flavour::Ordinary => Sign::Plus,
                Flavour::Unitary => *rho.sign.at1(frame.little(gr, g, i)),
                Flavour::Positive => {
                    let ri = gr.inv(frame.rep(i));
                    *rho.sign.at1(gr.mul(ri, g)) * *rho.sign.at1(ri)
                }
            })
            .collect()
    });
    Quintuple2Rep { flavour: rho.flavour, action: act, characters, cochain, signs, frame: Some(frame) }
}

/// Recovers `(H, λ, u, p|q)` at the base point `0`.
pub fn reduce(tg: &TwoGroup, q5: &Quintuple2Rep) -> Result<Irr2Rep, RepError> {
    let gr = tg.group();
    if q5.dim() == 0 || !q5.action.is_transitive(gr) {
        return Err(RepError::NotTransitive);
    }
    let (_, h) = q5.action.orbit(gr, 0);
    let u = Cochain::from_fn(&h, 2, Phase::ZERO, |t| q5.c(0, t[0], t[1]));
    let sign = match q5.flavour {
        Flavour::Ordinary => Cochain::trivial_signs(&h, 1),
        Flavour::Unitary => Cochain::from_fn(&h, 1, Sign::Plus, |t| q5.s(0, t[0])),
        Flavour::Positive => Cochain::from_fn(&Subgroup::whole(gr), 1, Sign::Plus, |t| q5.s(0, t[0])),
    };
    Irr2Rep::new(tg, q5.flavour, h, q5.characters[0].clone(), u, sign)
}

/// One violated instance of a coherence condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: String,
    /// Group elements the condition was evaluated at.
    pub args: Vec<Element>,
    /// Index of the component (point of `[n]`, or flattened pair).
    pub index: usize,
    pub lhs: String,
    pub rhs: String,
}

impl Violation {
    pub fn new(condition: &str, args: Vec<Element>, index: usize, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        Violation { condition: condition.into(), args, index, lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

/// Exhaustively checks the character condition, `d_σ c = ⟨χ, α⟩`, the
/// sign cocycle condition and both unitarisation conditions with `ℓ = s·ℓ_0`.
pub fn verify_quintuple(tg: &TwoGroup, q5: &Quintuple2Rep) -> Vec<Violation> {
    let gr = tg.group();
    let n = q5.dim();
    let act = &q5.action;
    let mut out = Vec::new();
    for g in gr.elements() {
        for i in 0..n {
            let lhs = &q5.characters[act.apply(g, i)];
            let rhs = tg.act_char(g, &q5.characters[i]);
            if *lhs != rhs {
                out.push(Violation::new("character", vec![g], i, format!("{lhs:?}"), format!("{rhs:?}")));
            }
        }
    }
    if let Some(t) = q5.cochain.normalisation_failure(&vec![Phase::ZERO; n]) {
        out.push(Violation::new("normalisation", t.clone(), 0, format!("{:?}", q5.cochain.get(&t)), "0"));
    }
    let perm = Permuted::new(U1, act);
    let dc = differential(gr, &q5.cochain, &perm);
    for (t, v) in dc.iter() {
        for (i, (vi, chi)) in v.iter().zip(&q5.characters).enumerate() {
            let rhs = tg.pair(chi, tg.al(t[0], t[1], t[2]));
            if *vi != rhs {
                out.push(Violation::new("twisted-cocycle", t.clone(), i, vi, rhs));
            }
        }
    }
    if q5.flavour != Flavour::Ordinary {
        let zperm = Permuted::new(Z2, act);
        let ds = differential(gr, &q5.signs, &zperm);
        for (t, v) in ds.iter() {
            for (i, s) in v.iter().enumerate() {
                if *s != Sign::Plus {
                    out.push(Violation::new("sign-cocycle", t.clone(), i, s, Sign::Plus));
                }
            }
        }
        out.extend(unitarisation_failures(tg, q5, &q5.unitarisation(tg)));
    }
    out
}

/// Checks both unitarisation conditions for a given `ℓ`.
pub fn unitarisation_failures(tg: &TwoGroup, q5: &Quintuple2Rep, ell: &Cochain<Vec<Phase>>) -> Vec<Violation> {
    let gr = tg.group();
    let act = &q5.action;
    let mut out = Vec::new();
    for g in gr.elements() {
        let gi = gr.inv(g);
        for i in 0..q5.dim() {
            let lhs = ell.at1(gi)[act.apply(gi, i)] - ell.at1(g)[i];
            let rhs = tg.pair(&q5.characters[i], tg.theta(g));
            if lhs != rhs {
                out.push(Violation::new("unitarisation-inverse", vec![g], i, lhs, rhs));
            }
        }
        for h in gr.elements() {
            let gh = gr.mul(g, h);
            let ghi = gr.inv(gh);
            for i in 0..q5.dim() {
                let lhs = ell.at1(h)[act.apply(gi, i)] + ell.at1(g)[i] - ell.at1(gh)[i];
                let m = act.apply(ghi, i);
                let rhs = q5.c(i, g, h) + q5.c(m, gr.inv(h), gi) + tg.pair(&q5.characters[m], tg.xi(g, h));
                if lhs != rhs {
                    out.push(Violation::new("unitarisation-product", vec![g, h], i, lhs, rhs));
                }
            }
        }
    }
    out
}

/// Number of solutions `δ` with values in `μ_N` of the homogeneous
/// unitarisation conditions, i.e. of ratios `ℓ / ℓ_0` between solutions.
pub fn unitarisation_ratio_count(tg: &TwoGroup, q5: &Quintuple2Rep, modulus: i64) -> u128 {
    let gr = tg.group();
    let n = q5.dim();
    let act = &q5.action;
    let var = |g: Element, i: usize| g * n + i;
    let order = gr.order();
    let mut m = ModMatrix::zeros(modulus, order * n + order * order * n, order * n);
    let mut row = 0;
    for g in gr.elements() {
        let gi = gr.inv(g);
        for i in 0..n {
            m.add_to(row, var(gi, act.apply(gi, i)), 1);
            m.add_to(row, var(g, i), -1);
            row += 1;
        }
    }
    for g in gr.elements() {
        let gi = gr.inv(g);
        for h in gr.elements() {
            for i in 0..n {
                m.add_to(row, var(h, act.apply(gi, i)), 1);
                m.add_to(row, var(g, i), 1);
                m.add_to(row, var(gr.mul(g, h), i), -1);
                row += 1;
            }
        }
    }
    modlin::kernel_size(&m)
}

/// `|Z^1_σ(G, Z_2^n)|`.
pub fn sign_cocycle_count(tg: &TwoGroup, q5: &Quintuple2Rep) -> u128 {
    count_sign_cocycles(tg.group(), &Permuted::new(Z2, &q5.action))
}

/// Witness of an equivalence of quintuples: a permutation `τ` with
/// `σ' = τστ^{-1}` and `χ' = ᵗχ`, a 1-cochain `ϑ` with `dϑ = c' / ᵗc`, and
/// for the unitary flavour a `z` with `dz = s' / ᵗs`.
#[derive(Clone, Debug)]
pub struct QuintupleWitness {
    pub tau: Vec<usize>,
    pub theta: Cochain<Vec<Phase>>,
    pub z: Option<Cochain<Vec<Sign>>>,
}

fn conjugating_permutations(
    gr: &crate::group::FiniteGroup,
    a: &PermAction,
    b: &PermAction,
    accept: &dyn Fn(usize, usize) -> bool,
) -> Vec<Vec<usize>> {
    let n = a.degree();
    let mut orbit_reps = Vec::new();
    let mut seen = vec![false; n];
    for j in 0..n {
        if !seen[j] {
            for s in a.orbit(gr, j).0 {
                seen[s] = true;
            }
            orbit_reps.push(j);
        }
    }
    #[allow(clippy::too_many_arguments)]
    fn extend(
        gr: &crate::group::FiniteGroup,
        a: &PermAction,
        b: &PermAction,
        reps: &[usize],
        tau: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        accept: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some((&j0, rest)) = reps.split_first() else {
            out.push(tau.iter().map(|t| t.unwrap()).collect());
            return;
        };
        for i0 in 0..b.degree() {
            if used[i0] {
                continue;
            }
            let mut assigned = Vec::new();
            let mut ok = true;
            for g in gr.elements() {
                let (j, i) = (a.apply(g, j0), b.apply(g, i0));
                match tau[j] {
                    Some(t) if t != i => ok = false,
                    Some(_) => {}
                    None if used[i] || !accept(j, i) => ok = false,
                    None => {
                        tau[j] = Some(i);
                        used[i] = true;
                        assigned.push(j);
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok {
                extend(gr, a, b, rest, tau, used, accept, out);
            }
            for j in assigned {
                used[tau[j].unwrap()] = false;
                tau[j] = None;
            }
        }
    }
    let mut out = Vec::new();
    let mut tau = vec![None; n];
    let mut used = vec![false; n];
    extend(gr, a, b, &orbit_reps, &mut tau, &mut used, accept, &mut out);
    out
}

/// Searches permutations `τ` conjugating `σ` to `σ'` (found by backtracking
/// over orbits) for which the remaining data match in cohomology, exactly
/// for positive sign data.
pub fn are_equivalent_quintuples(
    tg: &TwoGroup,
    a: &Quintuple2Rep,
    b: &Quintuple2Rep,
) -> Result<Option<QuintupleWitness>, RepError> {
    if a.flavour != b.flavour {
        return Err(RepError::FlavourMismatch(format!("{} vs {}", a.flavour, b.flavour)));
    }
    let gr = tg.group();
    if a.dim() != b.dim() {
        return Ok(None);
    }
    let n = a.dim();
    let accept = |j: usize, i: usize| a.characters[j] == b.characters[i];
    let whole = Subgroup::whole(gr);
    for tau in conjugating_permutations(gr, &a.action, &b.action, &accept) {
        let mut tau_inv = vec![0; n];
        for (j, &i) in tau.iter().enumerate() {
            tau_inv[i] = j;
        }
        let diff = Cochain::from_fn(&whole, 2, Vec::new(), |t| {
            (0..n).map(|i| b.c(i, t[0], t[1]) - a.c(tau_inv[i], t[0], t[1])).collect::<Vec<_>>()
        });
        let Ok(Some(theta)) = coboundary_witness(gr, &diff, &Permuted::new(U1, &b.action)) else {
            continue;
        };
        let sdiff = Cochain::from_fn(&whole, 1, Vec::new(), |t| {
            (0..n).map(|i| b.s(i, t[0]) * a.s(tau_inv[i], t[0])).collect::<Vec<_>>()
        });
        let z = match a.flavour {
            Flavour::Ordinary => None,
            Flavour::Positive => {
                if sdiff.iter().any(|(_, v)| v.iter().any(|s| *s != Sign::Plus)) {
                    continue;
                }
                None
            }
            Flavour::Unitary => match coboundary_witness(gr, &sdiff, &Permuted::new(Z2, &b.action)) {
                Ok(Some(z)) => Some(z),
                _ => continue,
            },
        };
        return Ok(Some(QuintupleWitness { tau, theta, z }));
    }
    Ok(None)
}

/// A pair `(H, λ)` for which `⟨λ, α|_H⟩` is not a coboundary.
#[derive(Clone, Debug)]
pub struct Obstruction {
    pub subgroup: Subgroup,
    pub character: Character,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub flavour: Flavour,
    pub irreducibles: Vec<Irr2Rep>,
    pub obstructed: Vec<Obstruction>,
}

/// Sign data available on `H` for a flavour, trivial first.
pub fn sign_data(tg: &TwoGroup, flavour: Flavour, h: &Subgroup) -> Vec<Cochain<Sign>> {
    match flavour {
        Flavour::Ordinary => vec![Cochain::trivial_signs(h, 1)],
        Flavour::Unitary => sign_homomorphisms(tg.group(), h),
        Flavour::Positive => covariant_1cochains(tg.group(), h),
    }
}

/// One representative per equivalence class of irreducible 2-representations.
///
/// Subgroups are taken up to conjugacy, larger subgroups first; for each,
/// invariant characters in index order, second cohomology classes (trivial
/// first) and sign data (trivial first). Candidates equivalent to an
/// earlier one are dropped.
pub fn enumerate_irreducibles(tg: &TwoGroup, flavour: Flavour) -> Result<Classification, RepError> {
    let gr = tg.group();
    let mut classes = gr.subgroup_classes();
    classes.sort_by(|a, b| b[0].order().cmp(&a[0].order()).then_with(|| a[0].members().cmp(b[0].members())));
    let mut irreducibles = Vec::new();
    let mut obstructed = Vec::new();
    for class in classes {
        let h = &class[0];
        let start = irreducibles.len();
        for lambda in tg.module().invariant_characters(gr, h) {
            let target = alpha_pairing(tg, &lambda, h);
            let Some(u0) = solve_inhomogeneous(gr, &target, &U1)? else {
                obstructed.push(Obstruction { subgroup: h.clone(), character: lambda });
                continue;
            };
            for w in h2_representatives(gr, h) {
                let u = u0.add(&w);
                for sign in sign_data(tg, flavour, h) {
                    let cand = Irr2Rep::new(tg, flavour, h.clone(), lambda.clone(), u.clone(), sign)?;
                    let mut new = true;
                    for prev in &irreducibles[start..] {
                        if are_equivalent(tg, prev, &cand)?.is_some() {
                            new = false;
                            break;
                        }
                    }
                    if new {
                        irreducibles.push(cand);
                    }
                }
            }
        }
    }
    Ok(Classification { flavour, irreducibles, obstructed })
}
