//! Finite abelian groups as products of cyclic factors, their characters,
//! and group actions by automorphisms.

use std::collections::VecDeque;

use crate::error::ModuleError;
use crate::group::{Element, FiniteGroup, Subgroup};
use crate::phase::Phase;

/// `Z_{n_1} × … × Z_{n_k}`. Elements are indexed in mixed radix with the
/// first factor varying fastest; the zero element has index 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    factors: Vec<u64>,
    order: usize,
}

/// Index of an element of a [`FinAbGroup`].
pub type AElem = usize;

impl FinAbGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self, ModuleError> {
        if factors.contains(&0) {
            return Err(ModuleError::ZeroFactor);
        }
        let order = factors.iter().product::<u64>() as usize;
        Ok(FinAbGroup { factors, order })
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new(), order: 1 }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(vec![n]).expect("positive order")
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<AElem> {
        0..self.order
    }

    pub fn coords(&self, mut a: AElem) -> Vec<u64> {
        self.factors
            .iter()
            .map(|&n| {
                let c = a as u64 % n;
                a /= n as usize;
                c
            })
            .collect()
    }

    /// Index of the element with the given exponents, reduced mod each factor.
    pub fn index(&self, coords: &[i64]) -> AElem {
        let mut idx = 0usize;
        for (&c, &n) in coords.iter().zip(&self.factors).rev() {
            idx = idx * n as usize + c.rem_euclid(n as i64) as usize;
        }
        idx
    }

    pub fn zero(&self) -> AElem {
        0
    }

    pub fn add(&self, a: AElem, b: AElem) -> AElem {
        let (x, y) = (self.coords(a), self.coords(b));
        let s: Vec<i64> = x.iter().zip(&y).map(|(&p, &q)| (p + q) as i64).collect();
        self.index(&s)
    }

    pub fn neg(&self, a: AElem) -> AElem {
        let s: Vec<i64> = self.coords(a).iter().map(|&p| -(p as i64)).collect();
        self.index(&s)
    }

    pub fn sub(&self, a: AElem, b: AElem) -> AElem {
        self.add(a, self.neg(b))
    }

    pub fn basis(&self, k: usize) -> AElem {
        let mut c = vec![0i64; self.rank()];
        c[k] = 1;
        self.index(&c)
    }

    /// All characters, indexed like the elements (identity first).
    pub fn dual_characters(&self) -> Vec<Character> {
        self.elements().map(|a| Character { exponents: self.coords(a) }).collect()
    }

    pub fn trivial_character(&self) -> Character {
        Character { exponents: vec![0; self.rank()] }
    }

    pub fn character(&self, exponents: &[i64]) -> Character {
        Character {
            exponents: exponents.iter().zip(&self.factors).map(|(&c, &n)| c.rem_euclid(n as i64) as u64).collect(),
        }
    }

    /// `λ(a) = exp(2πi Σ c_m a_m / n_m)`.
    pub fn pair(&self, lambda: &Character, a: AElem) -> Phase {
        self.coords(a)
            .iter()
            .zip(&lambda.exponents)
            .zip(&self.factors)
            .map(|((&x, &c), &n)| Phase::new((x * c) as i64, n as i64))
            .sum()
    }
}

/// A character of a [`FinAbGroup`], stored by its exponents on the cyclic factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    exponents: Vec<u64>,
}

impl Character {
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&c| c == 0)
    }

    /// Complex conjugate character.
    pub fn conjugate(&self, a: &FinAbGroup) -> Character {
        let neg: Vec<i64> = self.exponents.iter().map(|&c| -(c as i64)).collect();
        a.character(&neg)
    }
}

/// A finite abelian group with a left action of a finite group by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    module: FinAbGroup,
    group_order: usize,
    table: Vec<Vec<AElem>>,
    trivial: bool,
}

impl GModule {
    pub fn trivial(g: &FiniteGroup, a: FinAbGroup) -> Self {
        let id: Vec<AElem> = a.elements().collect();
        GModule { group_order: g.order(), table: vec![id; g.order()], module: a, trivial: true }
    }

    /// Builds the action from integer matrices for a generating set; the
    /// action of element `g` on exponent vectors is `a ↦ M_g a`.
    pub fn from_generators(
        g: &FiniteGroup,
        a: FinAbGroup,
        gens: &[(Element, Vec<Vec<i64>>)],
    ) -> Result<Self, ModuleError> {
        let mut gen_tables = Vec::new();
        for (el, m) in gens {
            gen_tables.push((*el, matrix_table(&a, *el, m)?));
        }
        let mut table: Vec<Option<Vec<AElem>>> = vec![None; g.order()];
        table[0] = Some(a.elements().collect());
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            let tx = table[x].clone().unwrap();
            for (s, ts) in &gen_tables {
                let y = g.mul(*s, x);
                let ty: Vec<AElem> = tx.iter().map(|&v| ts[v]).collect();
                match &table[y] {
                    Some(existing) if existing != &ty => return Err(ModuleError::Inconsistent { element: y }),
                    Some(_) => {}
                    None => {
                        table[y] = Some(ty);
                        queue.push_back(y);
                    }
                }
            }
        }
        let table: Vec<Vec<AElem>> = table
            .into_iter()
            .enumerate()
            .map(|(x, t)| t.ok_or(ModuleError::Incomplete { element: x }))
            .collect::<Result<_, _>>()?;
        Self::from_table(g, a, table)
    }

    /// Validates a full action table `table[g][a] = g ▷ a`.
    pub fn from_table(g: &FiniteGroup, a: FinAbGroup, table: Vec<Vec<AElem>>) -> Result<Self, ModuleError> {
        for x in g.elements() {
            for v in a.elements() {
                for w in a.elements() {
                    if table[x][a.add(v, w)] != a.add(table[x][v], table[x][w]) {
                        return Err(ModuleError::NotAutomorphism { element: x });
                    }
                }
            }
            let mut seen = vec![false; a.order()];
            for &v in &table[x] {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(ModuleError::NotAutomorphism { element: x });
                }
            }
        }
        for x in g.elements() {
            for y in g.elements() {
                let xy = g.mul(x, y);
                if a.elements().any(|v| table[xy][v] != table[x][table[y][v]]) {
                    return Err(ModuleError::NotHomomorphism { a: x, b: y });
                }
            }
        }
        let trivial = table.iter().all(|t| t.iter().enumerate().all(|(i, &v)| i == v));
        Ok(GModule { group_order: g.order(), module: a, table, trivial })
    }

    pub fn module(&self) -> &FinAbGroup {
        &self.module
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// `g ▷ a`.
    #[inline]
    pub fn act(&self, g: Element, a: AElem) -> AElem {
        self.table[g][a]
    }

    /// `(g ▷ λ)(a) = λ(g^{-1} ▷ a)`.
    pub fn act_on_character(&self, group: &FiniteGroup, g: Element, lambda: &Character) -> Character {
        if self.trivial {
            return lambda.clone();
        }
        let gi = group.inv(g);
        let exps: Vec<i64> = (0..self.module.rank())
            .map(|k| {
                let p = self.module.pair(lambda, self.act(gi, self.module.basis(k)));
                p.scaled(self.module.factors()[k] as i64).expect("character value order divides factor")
            })
            .collect();
        self.module.character(&exps)
    }

    /// Characters fixed by every element of `h`, in index order.
    pub fn invariant_characters(&self, group: &FiniteGroup, h: &Subgroup) -> Vec<Character> {
        self.module
            .dual_characters()
            .into_iter()
            .filter(|l| h.members().iter().all(|&x| &self.act_on_character(group, x, l) == l))
            .collect()
    }
}

fn matrix_table(a: &FinAbGroup, el: Element, m: &[Vec<i64>]) -> Result<Vec<AElem>, ModuleError> {
    let k = a.rank();
    if m.len() != k || m.iter().any(|r| r.len() != k) {
        return Err(ModuleError::Shape { rank: k });
    }
    let f = a.factors();
    for (r, row) in m.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            // Z_{n_c} -> Z_{n_r}, 1 ↦ v is well defined iff n_r | v n_c
            if (v * f[c] as i64).rem_euclid(f[r] as i64) != 0 {
                return Err(ModuleError::IllDefined { row: r, col: c });
            }
        }
    }
    let table: Vec<AElem> = a
        .elements()
        .map(|v| {
            let x = a.coords(v);
            let y: Vec<i64> = m.iter().map(|row| row.iter().zip(&x).map(|(&e, &xc)| e * xc as i64).sum()).collect();
            a.index(&y)
        })
        .collect();
    let mut seen = vec![false; a.order()];
    for &v in &table {
        if std::mem::replace(&mut seen[v], true) {
            return Err(ModuleError::NotAutomorphism { element: el });
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mixed_radix_indexing() {
        let a = FinAbGroup::new(vec![2, 3]).unwrap();
        assert_eq!(a.order(), 6);
        assert_eq!(a.coords(5), vec![1, 2]);
        assert_eq!(a.index(&[1, 2]), 5);
        assert_eq!(a.add(5, 5), a.index(&[0, 1]));
        assert_eq!(a.neg(a.index(&[1, 1])), a.index(&[1, 2]));
    }

    #[test]
    fn character_pairing() {
        let a = FinAbGroup::cyclic(4);
        let l = a.character(&[1]);
        assert_eq!(a.pair(&l, 1), Phase::new(1, 4));
        assert_eq!(a.pair(&l, 2), Phase::HALF);
        assert_eq!(a.dual_characters().len(), 4);
        assert!(a.dual_characters()[0].is_trivial());
    }

    #[test]
    fn inversion_action_on_z3() {
        let g = FiniteGroup::cyclic(2);
        let a = FinAbGroup::cyclic(3);
        let m = GModule::from_generators(&g, a.clone(), &[(1, vec![vec![-1]])]).unwrap();
        assert!(!m.is_trivial());
        assert_eq!(m.act(1, 1), 2);
        let l = a.character(&[1]);
        assert_eq!(m.act_on_character(&g, 1, &l), a.character(&[2]));
        let inv = m.invariant_characters(&g, &Subgroup::whole(&g));
        assert_eq!(inv, vec![a.trivial_character()]);
    }

    #[test]
    fn bad_matrices_are_rejected() {
        let g = FiniteGroup::cyclic(2);
        // doubling is not an automorphism of Z4
        assert!(matches!(
            GModule::from_generators(&g, FinAbGroup::cyclic(4), &[(1, vec![vec![2]])]),
            Err(ModuleError::NotAutomorphism { .. }) | Err(ModuleError::NotHomomorphism { .. })
        ));
        // multiplication by 2 on Z3 has order 2 and is fine; on Z5 it has order 4
        assert!(GModule::from_generators(&g, FinAbGroup::cyclic(3), &[(1, vec![vec![2]])]).is_ok());
        assert!(GModule::from_generators(&g, FinAbGroup::cyclic(5), &[(1, vec![vec![2]])]).is_err());
        // Z2 -> Z3 component is ill defined
        assert!(matches!(
            GModule::from_generators(&g, FinAbGroup::new(vec![2, 3]).unwrap(), &[(1, vec![vec![1, 0], vec![1, 1]])]),
            Err(ModuleError::IllDefined { .. })
        ));
    }

    proptest! {
        #[test]
        fn characters_are_homomorphisms(n1 in 1u64..6, n2 in 1u64..6, c1 in 0i64..6, c2 in 0i64..6, a in 0usize..36, b in 0usize..36) {
            let grp = FinAbGroup::new(vec![n1, n2]).unwrap();
            let (a, b) = (a % grp.order(), b % grp.order());
            let l = grp.character(&[c1, c2]);
            prop_assert_eq!(grp.pair(&l, grp.add(a, b)), grp.pair(&l, a) + grp.pair(&l, b));
            prop_assert_eq!(grp.pair(&l.conjugate(&grp), a), -grp.pair(&l, a));
        }
    }
}
