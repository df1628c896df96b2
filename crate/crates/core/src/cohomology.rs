//! Solving cochain equations exactly: coboundary tests, trivialisers,
//! second cohomology representatives and covariant sign cochains.
//!
//! `U(1)`-valued problems are solved over the finite subgroup of `N`-th roots
//! of unity with `N = |K| · M`, where `M` is the order of the target values;
//! `|K|` annihilates the cohomology of `K`, so nothing is lost.

use std::collections::HashSet;

use crate::cochain::{cocycle_failure, differential, tuples, Cochain, Coefficients, Permuted, U1, Z2};
use crate::error::CohomologyError;
use crate::group::{Element, FiniteGroup, Subgroup};
use crate::modlin::{self, ModMatrix};
use crate::phase::{Phase, Sign};

/// Coefficients with finitely many components, each a copy of `U(1)` or
/// `Z_2`, permuted by the group action.
pub trait LinearCoefficients: Coefficients {
    fn components(&self) -> usize;
    /// Component `i` of `g·v` is component `source(g, i)` of `v`.
    fn source(&self, g: Element, i: usize) -> usize;
    fn encode(&self, v: &Self::Value, modulus: i64) -> Option<Vec<i64>>;
    fn decode(&self, xs: &[i64], modulus: i64) -> Self::Value;
    fn value_order(&self, v: &Self::Value) -> i64;
    /// Modulus to work over for a problem on `K` whose data has order `target_order`.
    fn working_modulus(&self, group_order: usize, target_order: i64) -> i64;
}

impl LinearCoefficients for U1 {
    fn components(&self) -> usize {
        1
    }
    fn source(&self, _g: Element, i: usize) -> usize {
        i
    }
    fn encode(&self, v: &Phase, modulus: i64) -> Option<Vec<i64>> {
        v.scaled(modulus).map(|x| vec![x])
    }
    fn decode(&self, xs: &[i64], modulus: i64) -> Phase {
        Phase::new(xs[0], modulus)
    }
    fn value_order(&self, v: &Phase) -> i64 {
        v.order()
    }
    fn working_modulus(&self, group_order: usize, target_order: i64) -> i64 {
        group_order as i64 * target_order
    }
}

impl LinearCoefficients for Z2 {
    fn components(&self) -> usize {
        1
    }
    fn source(&self, _g: Element, i: usize) -> usize {
        i
    }
    fn encode(&self, v: &Sign, _modulus: i64) -> Option<Vec<i64>> {
        Some(vec![i64::from(v.bit())])
    }
    fn decode(&self, xs: &[i64], _modulus: i64) -> Sign {
        Sign::from_bit(xs[0] % 2 != 0)
    }
    fn value_order(&self, v: &Sign) -> i64 {
        if v.bit() {
            2
        } else {
            1
        }
    }
    fn working_modulus(&self, _group_order: usize, _target_order: i64) -> i64 {
        2
    }
}

impl<C: LinearCoefficients> LinearCoefficients for Permuted<C> {
    fn components(&self) -> usize {
        self.degree()
    }
    fn source(&self, g: Element, i: usize) -> usize {
        self.pulled(g, i)
    }
    fn encode(&self, v: &Self::Value, modulus: i64) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(v.len());
        for x in v {
            out.extend(self.base().encode(x, modulus)?);
        }
        Some(out)
    }
    fn decode(&self, xs: &[i64], modulus: i64) -> Self::Value {
        xs.iter().map(|&x| self.base().decode(&[x], modulus)).collect()
    }
    fn value_order(&self, v: &Self::Value) -> i64 {
        use num_integer::Integer;
        v.iter().fold(1, |acc, x| acc.lcm(&self.base().value_order(x)))
    }
    fn working_modulus(&self, group_order: usize, target_order: i64) -> i64 {
        self.base().working_modulus(group_order, target_order)
    }
}

/// Matrix of `d: C^n → C^{n+1}` restricted to normalised cochains on `K`.
struct CoboundaryMatrix {
    matrix: ModMatrix,
    nonid: Vec<Element>,
}

fn position_in(nonid: &[Element], t: &[Element]) -> Option<usize> {
    let m = nonid.len();
    let mut idx = 0;
    for &a in t {
        idx = idx * m + nonid.binary_search(&a).ok()?;
    }
    Some(idx)
}

fn coboundary_matrix<C: LinearCoefficients>(
    group: &FiniteGroup,
    k: &Subgroup,
    degree: usize,
    coeffs: &C,
    modulus: i64,
) -> CoboundaryMatrix {
    let nonid: Vec<Element> = k.members().iter().copied().filter(|&a| a != 0).collect();
    let m = nonid.len();
    let comps = coeffs.components();
    let ncols = comps * m.pow(degree as u32);
    let nrows = comps * m.pow(degree as u32 + 1);
    let mut mat = ModMatrix::zeros(modulus, nrows, ncols);
    let col = |i: usize, t: &[Element]| position_in(&nonid, t).map(|p| p * comps + i);
    let mut args = Vec::with_capacity(degree);
    for (r_t, t) in tuples(&nonid, degree + 1).enumerate() {
        for i in 0..comps {
            let row = r_t * comps + i;
            if let Some(c) = col(coeffs.source(t[0], i), &t[1..]) {
                mat.add_to(row, c, 1);
            }
            for j in 1..=degree {
                args.clear();
                args.extend_from_slice(&t[..j - 1]);
                args.push(group.mul(t[j - 1], t[j]));
                args.extend_from_slice(&t[j + 1..]);
                if let Some(c) = col(i, &args) {
                    mat.add_to(row, c, if j % 2 == 1 { -1 } else { 1 });
                }
            }
            if let Some(c) = col(i, &t[..degree]) {
                mat.add_to(row, c, if (degree + 1) % 2 == 1 { -1 } else { 1 });
            }
        }
    }
    CoboundaryMatrix { matrix: mat, nonid }
}

fn encode_cochain<C: LinearCoefficients>(
    c: &Cochain<C::Value>,
    nonid: &[Element],
    coeffs: &C,
    modulus: i64,
) -> Result<Vec<i64>, CohomologyError> {
    let mut out = Vec::new();
    for t in tuples(nonid, c.degree()) {
        out.extend(coeffs.encode(c.get(&t), modulus).ok_or(CohomologyError::Unrepresentable)?);
    }
    Ok(out)
}

fn decode_cochain<C: LinearCoefficients>(
    k: &Subgroup,
    degree: usize,
    xs: &[i64],
    nonid: &[Element],
    coeffs: &C,
    modulus: i64,
) -> Cochain<C::Value> {
    let comps = coeffs.components();
    Cochain::from_fn(k, degree, coeffs.zero(), |t| match position_in(nonid, t) {
        Some(p) => coeffs.decode(&xs[p * comps..(p + 1) * comps], modulus),
        None => coeffs.zero(),
    })
}

/// A normalised `ϑ` with `dϑ = target`, or `None` if the closed target is
/// not a coboundary.
pub fn solve_inhomogeneous<C: LinearCoefficients>(
    group: &FiniteGroup,
    target: &Cochain<C::Value>,
    coeffs: &C,
) -> Result<Option<Cochain<C::Value>>, CohomologyError> {
    assert!(target.degree() >= 1, "target must have positive degree");
    if let Some(w) = target.normalisation_failure(&coeffs.zero()) {
        return Err(CohomologyError::NotNormalised { witness: w });
    }
    if let Some(w) = cocycle_failure(group, target, coeffs) {
        return Err(CohomologyError::TargetNotClosed { witness: w });
    }
    Ok(solve_unchecked(group, target, coeffs))
}

fn solve_unchecked<C: LinearCoefficients>(
    group: &FiniteGroup,
    target: &Cochain<C::Value>,
    coeffs: &C,
) -> Option<Cochain<C::Value>> {
    let k = target.domain();
    let order = target.iter().fold(1i64, |acc, (_, v)| num_integer::lcm(acc, coeffs.value_order(v)));
    let modulus = coeffs.working_modulus(k.order(), order);
    let degree = target.degree() - 1;
    let cb = coboundary_matrix(group, k, degree, coeffs, modulus);
    let b = encode_cochain(target, &cb.nonid, coeffs, modulus).ok()?;
    let x = modlin::solve(&cb.matrix, &b)?;
    Some(decode_cochain(k, degree, &x, &cb.nonid, coeffs, modulus))
}

/// Whether a cocycle is a coboundary; returns a trivialiser if so.
pub fn coboundary_witness<C: LinearCoefficients>(
    group: &FiniteGroup,
    c: &Cochain<C::Value>,
    coeffs: &C,
) -> Result<Option<Cochain<C::Value>>, CohomologyError> {
    if let Some(w) = cocycle_failure(group, c, coeffs) {
        return Err(CohomologyError::NotACocycle { witness: w });
    }
    if let Some(w) = c.normalisation_failure(&coeffs.zero()) {
        return Err(CohomologyError::NotNormalised { witness: w });
    }
    Ok(solve_unchecked(group, c, coeffs))
}

pub fn is_coboundary<C: LinearCoefficients>(
    group: &FiniteGroup,
    c: &Cochain<C::Value>,
    coeffs: &C,
) -> Result<bool, CohomologyError> {
    coboundary_witness(group, c, coeffs).map(|w| w.is_some())
}

/// `c = dϑ`, for a degree-0 `ϑ` valued in a permuted tuple module.
pub fn degree_zero_trivialiser<C: LinearCoefficients>(
    group: &FiniteGroup,
    c: &Cochain<C::Value>,
    coeffs: &C,
) -> Option<Cochain<C::Value>> {
    solve_unchecked(group, c, coeffs)
}

/// Representatives of `H^2(K, U(1))`, the first being the trivial class.
///
/// Classes are found by a breadth-first search over sums of generators of
/// the `|K|`-torsion 2-cocycles; the representatives are the first found,
/// in a deterministic order.
pub fn h2_representatives(group: &FiniteGroup, k: &Subgroup) -> Vec<Cochain<Phase>> {
    let modulus = k.order() as i64;
    let zero = Cochain::zero(k, 2);
    if modulus == 1 {
        return vec![zero];
    }
    let cb = coboundary_matrix(group, k, 2, &U1, modulus);
    let gens: Vec<Cochain<Phase>> = modlin::kernel(&cb.matrix)
        .iter()
        .map(|x| decode_cochain(k, 2, x, &cb.nonid, &U1, modulus))
        .collect();
    let mut reps = vec![zero];
    let mut frontier = 0;
    while frontier < reps.len() {
        let r = reps[frontier].clone();
        frontier += 1;
        for gen in &gens {
            let c = r.add(gen);
            let new = reps.iter().all(|s| solve_unchecked(group, &c.sub(s), &U1).is_none());
            if new {
                reps.push(c);
            }
        }
    }
    reps
}

/// Sign cochains `q` on `G` with `q(hg) = q(h) q(g)` for `h ∈ H`.
///
/// Such `q` restrict to a homomorphism on `H` and are otherwise free on
/// the right cosets `Hg ≠ H`.
pub fn covariant_1cochains(group: &FiniteGroup, h: &Subgroup) -> Vec<Cochain<Sign>> {
    let homs = sign_homomorphisms(group, h);
    let mut right_reps = Vec::new();
    let mut seen = vec![false; group.order()];
    for g in group.elements() {
        if !seen[g] {
            for &x in h.members() {
                seen[group.mul(x, g)] = true;
            }
            right_reps.push(g);
        }
    }
    let free = &right_reps[1..];
    let whole = Subgroup::whole(group);
    let mut out = Vec::new();
    for p in &homs {
        for bits in 0u64..(1u64 << free.len()) {
            let mut vals = vec![Sign::Plus; group.order()];
            for (k, &r) in right_reps.iter().enumerate() {
                let base = if k == 0 { Sign::Plus } else { Sign::from_bit(bits >> (k - 1) & 1 == 1) };
                for &x in h.members() {
                    vals[group.mul(x, r)] = *p.at1(x) * base;
                }
            }
            out.push(Cochain::from_fn(&whole, 1, Sign::Plus, |t| vals[t[0]]));
        }
    }
    out
}

/// `Hom(H, Z_2)`, trivial homomorphism first.
pub fn sign_homomorphisms(group: &FiniteGroup, h: &Subgroup) -> Vec<Cochain<Sign>> {
    let trivial = Cochain::trivial_signs(h, 1);
    if h.order() == 1 {
        return vec![trivial];
    }
    let cb = coboundary_matrix(group, h, 1, &Z2, 2);
    let gens: Vec<Vec<i64>> = modlin::kernel(&cb.matrix);
    let mut found: Vec<Vec<i64>> = vec![vec![0; cb.matrix.cols()]];
    let mut set: HashSet<Vec<i64>> = found.iter().cloned().collect();
    let mut i = 0;
    while i < found.len() {
        let cur = found[i].clone();
        i += 1;
        for gen in &gens {
            let s: Vec<i64> = cur.iter().zip(gen).map(|(a, b)| (a + b) % 2).collect();
            if set.insert(s.clone()) {
                found.push(s);
            }
        }
    }
    found.sort();
    found.iter().map(|x| decode_cochain(h, 1, x, &cb.nonid, &Z2, 2)).collect()
}

/// `(ˣc)(k_1..k_n) = c(x^{-1} k_1 x, …)`, a cochain on `x K x^{-1}`.
pub fn left_twist<V: Clone>(group: &FiniteGroup, c: &Cochain<V>, x: Element, fill: V) -> Cochain<V> {
    let dom = c.domain().conjugate(group, x);
    Cochain::from_fn(&dom, c.degree(), fill, |t| {
        let args: Vec<Element> = t.iter().map(|&k| group.conj_inv(x, k)).collect();
        c.get(&args).clone()
    })
}

/// Number of sign-valued 1-cocycles for a permutation action, `|Z^1_σ(G, Z_2^n)|`.
pub fn count_sign_cocycles(group: &FiniteGroup, coeffs: &Permuted<Z2>) -> u128 {
    let k = Subgroup::whole(group);
    let cb = coboundary_matrix(group, &k, 1, coeffs, 2);
    modlin::kernel_size(&cb.matrix)
}

/// Differential helper for `U(1)`-valued cochains.
pub fn d_u1(group: &FiniteGroup, c: &Cochain<Phase>) -> Cochain<Phase> {
    differential(group, c, &U1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermAction;

    /// Brute force over all normalised 1-cochains with values in `μ_N`.
    fn brute_is_coboundary(group: &FiniteGroup, c: &Cochain<Phase>, n: i64) -> bool {
        let k = c.domain();
        let nonid: Vec<Element> = k.members().iter().copied().filter(|&a| a != 0).collect();
        let total = (n as usize).pow(nonid.len() as u32);
        (0..total).any(|mut code| {
            let mut vals = vec![Phase::ZERO; group.order()];
            for &a in &nonid {
                vals[a] = Phase::new((code % n as usize) as i64, n);
                code /= n as usize;
            }
            let th = Cochain::from_fn(k, 1, Phase::ZERO, |t| vals[t[0]]);
            d_u1(group, &th).same_values(c)
        })
    }

    fn klein_pauli(g: &FiniteGroup) -> Cochain<Phase> {
        // u((a1,b1),(a2,b2)) = (-1)^{a1 b2}
        let k = Subgroup::whole(g);
        Cochain::from_fn(&k, 2, Phase::ZERO, |t| {
            let (a1, b2) = (t[0] % 2, t[1] / 2);
            Phase::new((a1 * b2) as i64, 2)
        })
    }

    #[test]
    fn h2_orders() {
        let cases = [
            (FiniteGroup::cyclic(2), 1),
            (FiniteGroup::cyclic(4), 1),
            (FiniteGroup::klein(), 2),
            (FiniteGroup::symmetric(3), 1),
            (FiniteGroup::dihedral(4), 2),
            (FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4)), 2),
            (FiniteGroup::direct_product(&FiniteGroup::cyclic(3), &FiniteGroup::cyclic(3)), 3),
        ];
        for (g, expected) in cases {
            let reps = h2_representatives(&g, &Subgroup::whole(&g));
            assert_eq!(reps.len(), expected, "order {}", g.order());
            for r in &reps {
                assert!(cocycle_failure(&g, r, &U1).is_none());
            }
        }
    }

    #[test]
    fn pauli_cocycle_is_not_a_coboundary() {
        let g = FiniteGroup::klein();
        let u = klein_pauli(&g);
        assert!(cocycle_failure(&g, &u, &U1).is_none());
        assert!(!is_coboundary(&g, &u, &U1).unwrap());
        assert!(!brute_is_coboundary(&g, &u, 8));
        // its symmetrisation is a coboundary
        let sym = Cochain::from_fn(&Subgroup::whole(&g), 2, Phase::ZERO, |t| *u.at2(t[0], t[1]) + *u.at2(t[1], t[0]));
        assert!(is_coboundary(&g, &sym, &U1).unwrap());
    }

    #[test]
    fn trivialisers_solve_the_equation() {
        let g = FiniteGroup::symmetric(3);
        let k = Subgroup::whole(&g);
        let th = Cochain::from_fn(&k, 1, Phase::ZERO, |t| if t[0] == 0 { Phase::ZERO } else { Phase::new(t[0] as i64, 7) });
        let c = d_u1(&g, &th);
        let sol = solve_inhomogeneous(&g, &c, &U1).unwrap().unwrap();
        assert!(d_u1(&g, &sol).same_values(&c));
    }

    #[test]
    fn unclosed_target_is_rejected() {
        let g = FiniteGroup::cyclic(3);
        let k = Subgroup::whole(&g);
        let c = Cochain::from_fn(&k, 2, Phase::ZERO, |t| if t == [1, 1] { Phase::new(1, 3) } else { Phase::ZERO });
        assert!(matches!(solve_inhomogeneous(&g, &c, &U1), Err(CohomologyError::TargetNotClosed { .. })));
        assert!(matches!(is_coboundary(&g, &c, &U1), Err(CohomologyError::NotACocycle { .. })));
    }

    #[test]
    fn coboundary_test_matches_brute_force_on_cyclic_groups() {
        for n in 2..=4usize {
            let g = FiniteGroup::cyclic(n);
            let k = Subgroup::whole(&g);
            // carry cocycles c(a,b) = exp(2πi m ⌊(a+b)/n⌋ / n^2) are all trivial, with
            // trivialisers valued in n^3-th roots of unity
            for m in 0..n as i64 {
                let c = Cochain::from_fn(&k, 2, Phase::ZERO, |t| Phase::new(m * ((t[0] + t[1]) / n) as i64, (n * n) as i64));
                assert!(cocycle_failure(&g, &c, &U1).is_none());
                assert!(is_coboundary(&g, &c, &U1).unwrap());
                assert!(brute_is_coboundary(&g, &c, (n * n * n) as i64));
            }
        }
    }

    #[test]
    fn sign_homomorphism_counts() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(sign_homomorphisms(&s3, &Subgroup::whole(&s3)).len(), 2);
        let v = FiniteGroup::klein();
        assert_eq!(sign_homomorphisms(&v, &Subgroup::whole(&v)).len(), 4);
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(sign_homomorphisms(&z4, &Subgroup::whole(&z4)).len(), 2);
        assert!(sign_homomorphisms(&z4, &Subgroup::whole(&z4))[0].is_trivial());
    }

    #[test]
    fn covariant_cochains_satisfy_the_rule() {
        let g = FiniteGroup::symmetric(3);
        for h in g.subgroups() {
            let qs = covariant_1cochains(&g, &h);
            let homs = sign_homomorphisms(&g, &h).len();
            assert_eq!(qs.len(), homs << (g.order() / h.order() - 1));
            for q in &qs {
                for &x in h.members() {
                    for a in g.elements() {
                        assert_eq!(*q.at1(g.mul(x, a)), *q.at1(x) * *q.at1(a));
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_degree_one_coboundaries() {
        let g = FiniteGroup::cyclic(2);
        let act = PermAction::from_images(&g, 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let coeffs = Permuted::new(Z2, &act);
        // Z^1_σ(Z2, Z2^2) ≅ Z2^2 (Shapiro: H^1 = Hom(1, Z2) = 0, B^1 ≅ Z2^2 / Z2)
        assert_eq!(count_sign_cocycles(&g, &coeffs), 2);
        let k = Subgroup::whole(&g);
        let z = Cochain::constant(&k, 0, vec![Sign::Minus, Sign::Plus]);
        let dz = differential(&g, &z, &coeffs);
        assert!(is_coboundary(&g, &dz, &coeffs).unwrap());
    }

    #[test]
    fn left_twist_moves_the_domain() {
        let g = FiniteGroup::symmetric(3);
        let h = Subgroup::generated(&g, &[1]);
        let c = Cochain::from_fn(&h, 1, Phase::ZERO, |t| if t[0] == 0 { Phase::ZERO } else { Phase::HALF });
        let x = 3;
        let tw = left_twist(&g, &c, x, Phase::ZERO);
        assert_eq!(tw.domain(), &h.conjugate(&g, x));
        for &k in h.members() {
            assert_eq!(tw.at1(g.conj(x, k)), c.at1(k));
        }
    }
}
