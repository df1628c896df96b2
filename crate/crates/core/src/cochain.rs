//! Normalised cochains on a subgroup with values in a coefficient module.

use std::fmt::Debug;

use crate::abelian::{AElem, GModule};
use crate::group::{Element, FiniteGroup, PermAction, Subgroup};
use crate::phase::{Phase, Sign};

/// A function `K^n → V` on a subgroup `K` of a parent group, stored densely
/// over tuples of parent-group elements. Entries outside `K^n` are unused
/// and ignored by equality.
#[derive(Clone, Debug)]
pub struct Cochain<V> {
    degree: usize,
    parent_order: usize,
    domain: Subgroup,
    values: Vec<V>,
}

impl<V: Clone> Cochain<V> {
    pub fn from_fn(domain: &Subgroup, degree: usize, fill: V, mut f: impl FnMut(&[Element]) -> V) -> Self {
        let n = domain.parent_order();
        let mut values = vec![fill; n.pow(degree as u32)];
        for t in tuples(domain.members(), degree) {
            values[flat(n, &t)] = f(&t);
        }
        Cochain { degree, parent_order: n, domain: domain.clone(), values }
    }

    pub fn constant(domain: &Subgroup, degree: usize, v: V) -> Self {
        let n = domain.parent_order();
        Cochain { degree, parent_order: n, domain: domain.clone(), values: vec![v; n.pow(degree as u32)] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    #[inline]
    pub fn get(&self, args: &[Element]) -> &V {
        debug_assert_eq!(args.len(), self.degree);
        debug_assert!(args.iter().all(|&a| self.domain.contains(a)), "argument {args:?} outside domain");
        &self.values[flat(self.parent_order, args)]
    }

    /// `f(a)` for a 1-cochain.
    #[inline]
    pub fn at1(&self, a: Element) -> &V {
        self.get(&[a])
    }

    #[inline]
    pub fn at2(&self, a: Element, b: Element) -> &V {
        self.get(&[a, b])
    }

    #[inline]
    pub fn at3(&self, a: Element, b: Element, c: Element) -> &V {
        self.get(&[a, b, c])
    }

    pub fn set(&mut self, args: &[Element], v: V) {
        let i = flat(self.parent_order, args);
        self.values[i] = v;
    }

    pub fn restrict(&self, sub: &Subgroup) -> Self {
        assert!(sub.is_subgroup_of(&self.domain), "restriction to a non-subgroup");
        let mut c = self.clone();
        c.domain = sub.clone();
        c
    }

    pub fn map<W: Clone>(&self, fill: W, mut f: impl FnMut(&V) -> W) -> Cochain<W> {
        Cochain::from_fn(&self.domain, self.degree, fill, |t| f(self.get(t)))
    }

    /// Iterates over `(args, value)` for all tuples of domain elements.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<Element>, &V)> + '_ {
        tuples(self.domain.members(), self.degree).map(move |t| {
            let v = &self.values[flat(self.parent_order, &t)];
            (t, v)
        })
    }

    /// First tuple containing the identity where the value is not `zero`.
    pub fn normalisation_failure(&self, zero: &V) -> Option<Vec<Element>>
    where
        V: PartialEq,
    {
        self.iter().find(|(t, v)| t.contains(&0) && *v != zero).map(|(t, _)| t)
    }
}

impl<V: Clone + PartialEq> Cochain<V> {
    /// Equality of values on the common domain.
    pub fn same_values(&self, other: &Cochain<V>) -> bool {
        self.domain == other.domain && self.degree == other.degree && self.iter().all(|(t, v)| v == other.get(&t))
    }
}

impl<V: Clone + PartialEq> PartialEq for Cochain<V> {
    fn eq(&self, other: &Self) -> bool {
        self.parent_order == other.parent_order && self.same_values(other)
    }
}

impl Cochain<Phase> {
    pub fn zero(domain: &Subgroup, degree: usize) -> Self {
        Self::constant(domain, degree, Phase::ZERO)
    }

    pub fn add(&self, other: &Self) -> Self {
        Cochain::from_fn(&self.domain, self.degree, Phase::ZERO, |t| *self.get(t) + *other.get(t))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Cochain::from_fn(&self.domain, self.degree, Phase::ZERO, |t| *self.get(t) - *other.get(t))
    }

    pub fn neg(&self) -> Self {
        self.map(Phase::ZERO, |v| -*v)
    }

    pub fn value_order(&self) -> i64 {
        crate::phase::lcm_orders(self.iter().map(|(_, v)| v))
    }
}

impl Cochain<Sign> {
    pub fn trivial_signs(domain: &Subgroup, degree: usize) -> Self {
        Self::constant(domain, degree, Sign::Plus)
    }

    pub fn is_trivial(&self) -> bool {
        self.iter().all(|(_, v)| *v == Sign::Plus)
    }
}

#[inline]
fn flat(n: usize, args: &[Element]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

/// All `degree`-tuples of `members`, in lexicographic order of positions.
pub fn tuples(members: &[Element], degree: usize) -> impl Iterator<Item = Vec<Element>> + '_ {
    let m = members.len();
    let total = m.pow(degree as u32);
    (0..total).map(move |mut code| {
        let mut t = vec![0; degree];
        for k in (0..degree).rev() {
            t[k] = members[code % m];
            code /= m;
        }
        t
    })
}

/// A coefficient module for cochains: an abelian group written additively
/// with a left action of the parent group.
pub trait Coefficients {
    type Value: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn act(&self, g: Element, a: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.add(a, &self.neg(b))
    }
}

/// `U(1)` with trivial action; values are exact roots of unity.
#[derive(Clone, Copy, Debug, Default)]
pub struct U1;

/// `Z_2 = {±1}` with trivial action.
#[derive(Clone, Copy, Debug, Default)]
pub struct Z2;

/// A finite abelian group with a group action.
#[derive(Clone, Copy, Debug)]
pub struct ModuleCoeffs<'a>(pub &'a GModule);

/// Tuples `V^n` with the group acting by `(g·v)_i = v_{g^{-1} ▷ i}`.
#[derive(Clone, Debug)]
pub struct Permuted<C> {
    base: C,
    degree: usize,
    /// `pull[g][i] = g^{-1} ▷ i`.
    pull: Vec<Vec<usize>>,
}

impl<C> Permuted<C> {
    pub fn new(base: C, action: &PermAction) -> Self {
        let degree = action.degree();
        let pull = action
            .images()
            .iter()
            .map(|img| {
                let mut inv = vec![0; degree];
                for (i, &j) in img.iter().enumerate() {
                    inv[j] = i;
                }
                inv
            })
            .collect();
        Permuted { base, degree, pull }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> &C {
        &self.base
    }

    /// `g^{-1} ▷ i`.
    #[inline]
    pub fn pulled(&self, g: Element, i: usize) -> usize {
        self.pull[g][i]
    }
}

impl Coefficients for U1 {
    type Value = Phase;
    fn zero(&self) -> Phase {
        Phase::ZERO
    }
    fn add(&self, a: &Phase, b: &Phase) -> Phase {
        *a + *b
    }
    fn neg(&self, a: &Phase) -> Phase {
        -*a
    }
    fn act(&self, _g: Element, a: &Phase) -> Phase {
        *a
    }
}

impl Coefficients for Z2 {
    type Value = Sign;
    fn zero(&self) -> Sign {
        Sign::Plus
    }
    fn add(&self, a: &Sign, b: &Sign) -> Sign {
        *a * *b
    }
    fn neg(&self, a: &Sign) -> Sign {
        *a
    }
    fn act(&self, _g: Element, a: &Sign) -> Sign {
        *a
    }
}

impl Coefficients for ModuleCoeffs<'_> {
    type Value = AElem;
    fn zero(&self) -> AElem {
        0
    }
    fn add(&self, a: &AElem, b: &AElem) -> AElem {
        self.0.module().add(*a, *b)
    }
    fn neg(&self, a: &AElem) -> AElem {
        self.0.module().neg(*a)
    }
    fn act(&self, g: Element, a: &AElem) -> AElem {
        self.0.act(g, *a)
    }
}

impl<C: Coefficients> Coefficients for Permuted<C> {
    type Value = Vec<C::Value>;
    fn zero(&self) -> Self::Value {
        vec![self.base.zero(); self.degree]
    }
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Self::Value) -> Self::Value {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn act(&self, g: Element, a: &Self::Value) -> Self::Value {
        (0..self.degree).map(|i| self.base.act(g, &a[self.pull[g][i]])).collect()
    }
}

/// The coboundary `dc` of an `n`-cochain, an `(n+1)`-cochain on the same domain:
/// `(dc)(g_1..g_{n+1}) = g_1·c(g_2..) + Σ (-1)^i c(..g_i g_{i+1}..) + (-1)^{n+1} c(g_1..g_n)`.
pub fn differential<C: Coefficients>(group: &FiniteGroup, c: &Cochain<C::Value>, coeffs: &C) -> Cochain<C::Value> {
    let n = c.degree();
    Cochain::from_fn(c.domain(), n + 1, coeffs.zero(), |t| {
        let mut acc = coeffs.act(t[0], c.get(&t[1..]));
        let mut args = Vec::with_capacity(n);
        for i in 1..=n {
            args.clear();
            args.extend_from_slice(&t[..i - 1]);
            args.push(group.mul(t[i - 1], t[i]));
            args.extend_from_slice(&t[i + 1..]);
            let term = c.get(&args);
            acc = if i % 2 == 1 { coeffs.sub(&acc, term) } else { coeffs.add(&acc, term) };
        }
        let last = c.get(&t[..n]);
        if (n + 1) % 2 == 1 {
            coeffs.sub(&acc, last)
        } else {
            coeffs.add(&acc, last)
        }
    })
}

/// First tuple where `dc` is nonzero, or `None` if `c` is a cocycle.
pub fn cocycle_failure<C: Coefficients>(group: &FiniteGroup, c: &Cochain<C::Value>, coeffs: &C) -> Option<Vec<Element>> {
    let zero = coeffs.zero();
    differential(group, c, coeffs).iter().find(|(_, v)| **v != zero).map(|(t, _)| t)
}
