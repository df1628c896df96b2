//! Finite groups given by multiplication tables, together with subgroups,
//! left cosets, permutation actions and double cosets.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::GroupError;

/// Elements are indices into the multiplication table; the identity is 0.
pub type Element = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Element>,
    inverse: Vec<Element>,
    names: Vec<String>,
    source_index: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a square table `rows[a][b] = a*b`.
    ///
    /// If the identity is not element 0 it is swapped into position 0;
    /// [`FiniteGroup::source_index`] recovers the original label.
    pub fn from_multiplication_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { row: i, len: row.len(), expected: n });
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(GroupError::OutOfRange { row: i, value: v });
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| rows[e][g] == g && rows[g][e] == g))
            .ok_or(GroupError::NoIdentity)?;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, identity);
        let mut old_to_new = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            old_to_new[old] = new;
        }
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = old_to_new[rows[perm[a]][perm[b]]];
            }
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a * n + b] == 0 && table[b * n + a] == 0) {
                Some(b) => inverse[a] = b,
                None => return Err(GroupError::NoInverse { element: perm[a] }),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(GroupError::NotAssociative { a: perm[a], b: perm[b], c: perm[c] });
                    }
                }
            }
        }
        let names = perm.iter().map(|p| p.to_string()).collect();
        Ok(FiniteGroup { order: n, table, inverse, names, source_index: perm })
    }

    /// Builds a group from a product closure on `0..order` with identity 0.
    fn from_product(order: usize, names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Self {
        let rows: Vec<Vec<usize>> = (0..order).map(|a| (0..order).map(|b| mul(a, b)).collect()).collect();
        let mut g = Self::from_multiplication_table(&rows).expect("builtin group table is valid");
        debug_assert_eq!(g.source_index, (0..order).collect::<Vec<_>>());
        g.names = names;
        g
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Cyclic group of order `n`; element `k` is the `k`-th power of the generator.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs positive order");
        let names = (0..n).map(|k| if k == 0 { "e".to_string() } else { format!("g^{k}") }).collect();
        Self::from_product(n, names, |a, b| (a + b) % n)
    }

    /// Dihedral group of order `2n`; `r^k s^b` has index `k + n*b`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1, "dihedral group needs n >= 1");
        let names = (0..2 * n)
            .map(|i| {
                let (k, b) = (i % n, i / n);
                match (k, b) {
                    (0, 0) => "e".to_string(),
                    (k, 0) => format!("r^{k}"),
                    (0, _) => "s".to_string(),
                    (k, _) => format!("r^{k}s"),
                }
            })
            .collect();
        Self::from_product(2 * n, names, |x, y| {
            let (k1, b1) = (x % n, x / n);
            let (k2, b2) = (y % n, y / n);
            let k = if b1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
            k + n * ((b1 + b2) % 2)
        })
    }

    /// Symmetric group on `n` points, elements in lexicographic order of
    /// their image lists; the product is composition `(ab)(i) = a(b(i))`.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let lookup: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let names = perms.iter().map(|p| cycle_notation(p)).collect();
        Self::from_product(perms.len(), names, |a, b| {
            let c: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
            lookup[&c]
        })
    }

    /// Klein four-group; `(a, b)` has index `a + 2b`.
    pub fn klein() -> Self {
        Self::direct_product(&Self::cyclic(2), &Self::cyclic(2))
    }

    /// Direct product; `(a, b)` has index `a + |G|*b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, n) = (g.order, h.order);
        let names = (0..m * n)
            .map(|i| {
                if i == 0 {
                    "e".to_string()
                } else {
                    format!("({},{})", g.names[i % m], h.names[i / m])
                }
            })
            .collect();
        Self::from_product(m * n, names, |x, y| {
            g.mul(x % m, y % m) + m * h.mul(x / m, y / m)
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inverse[a]
    }

    pub fn mul_all(&self, xs: &[Element]) -> Element {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    /// `x h x^{-1}`.
    pub fn conj(&self, x: Element, h: Element) -> Element {
        self.mul(self.mul(x, h), self.inv(x))
    }

    /// `x^{-1} h x`.
    pub fn conj_inv(&self, x: Element, h: Element) -> Element {
        self.mul(self.mul(self.inv(x), h), x)
    }

    pub fn element_order(&self, a: Element) -> usize {
        let mut k = 1;
        let mut p = a;
        while p != 0 {
            p = self.mul(p, a);
            k += 1;
        }
        k
    }

    pub fn name(&self, a: Element) -> &str {
        &self.names[a]
    }

    /// Label of `a` in the table the group was built from.
    pub fn source_index(&self, a: Element) -> usize {
        self.source_index[a]
    }

    /// Internal index of the element with the given source label.
    pub fn from_source_index(&self, label: usize) -> Option<Element> {
        self.source_index.iter().position(|&s| s == label)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// All subgroups, sorted by order and then by member list.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let cyclic: BTreeSet<Vec<Element>> =
            self.elements().map(|a| Subgroup::generated(self, &[a]).members).collect();
        let mut found = cyclic.clone();
        let mut frontier: Vec<Vec<Element>> = found.iter().cloned().collect();
        while let Some(s) = frontier.pop() {
            for c in &cyclic {
                if c.iter().all(|x| s.binary_search(x).is_ok()) {
                    continue;
                }
                let gens: Vec<Element> = s.iter().chain(c.iter()).copied().collect();
                let joined = Subgroup::generated(self, &gens).members;
                if found.insert(joined.clone()) {
                    frontier.push(joined);
                }
            }
        }
        let mut subs: Vec<Subgroup> =
            found.into_iter().map(|m| Subgroup { parent_order: self.order, members: m }).collect();
        subs.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        subs
    }

    /// Subgroups grouped into conjugacy classes; classes and their members
    /// are in the order of [`FiniteGroup::subgroups`].
    pub fn subgroup_classes(&self) -> Vec<Vec<Subgroup>> {
        let mut classes: Vec<Vec<Subgroup>> = Vec::new();
        for s in self.subgroups() {
            match classes.iter_mut().find(|cls| self.are_conjugate(&cls[0], &s)) {
                Some(cls) => cls.push(s),
                None => classes.push(vec![s]),
            }
        }
        classes
    }

    pub fn are_conjugate(&self, a: &Subgroup, b: &Subgroup) -> bool {
        a.order() == b.order() && self.elements().any(|x| &a.conjugate(self, x) == b)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = vec![start + 1];
        seen[start] = true;
        let mut i = p[start];
        while i != start {
            seen[i] = true;
            cyc.push(i + 1);
            i = p[i];
        }
        let body: Vec<String> = cyc.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("({})", body.join(" ")));
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

/// A subgroup stored as a sorted member list of its parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<Element>,
}

impl Subgroup {
    /// Validates that `members` is closed under products and contains the identity.
    pub fn new(g: &FiniteGroup, members: impl IntoIterator<Item = Element>) -> Result<Self, GroupError> {
        let set: BTreeSet<Element> = members.into_iter().collect();
        if let Some(&x) = set.iter().find(|&&x| x >= g.order()) {
            return Err(GroupError::OutOfRange { row: 0, value: x });
        }
        if !set.contains(&0) {
            return Err(GroupError::NotASubgroup);
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&g.mul(a, b)) {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        Ok(Subgroup { parent_order: g.order(), members: set.into_iter().collect() })
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup { parent_order: g.order(), members: g.elements().collect() }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup { parent_order: g.order(), members: vec![0] }
    }

    pub fn generated(g: &FiniteGroup, gens: &[Element]) -> Self {
        let mut seen = vec![false; g.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = g.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup { parent_order: g.order(), members: (0..g.order()).filter(|&x| seen[x]).collect() }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Position of `x` in the member list.
    pub fn position(&self, x: Element) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent_order
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            parent_order: self.parent_order,
            members: self.members.iter().copied().filter(|&x| other.contains(x)).collect(),
        }
    }

    /// `x H x^{-1}`.
    pub fn conjugate(&self, g: &FiniteGroup, x: Element) -> Subgroup {
        let mut members: Vec<Element> = self.members.iter().map(|&h| g.conj(x, h)).collect();
        members.sort_unstable();
        Subgroup { parent_order: self.parent_order, members }
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        g.elements().all(|x| &self.conjugate(g, x) == self)
    }

    pub fn sort_key(&self) -> (usize, &[Element]) {
        (self.members.len(), &self.members)
    }
}

/// Left cosets `G/H` with representatives `r_i`, where `r_0 = e` and each
/// representative is the smallest element of its coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetFrame {
    subgroup: Subgroup,
    reps: Vec<Element>,
    coset_of: Vec<usize>,
    action: PermAction,
}

impl CosetFrame {
    pub fn new(g: &FiniteGroup, h: &Subgroup) -> Self {
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if coset_of[x] == usize::MAX {
                for &k in h.members() {
                    coset_of[g.mul(x, k)] = reps.len();
                }
                reps.push(x);
            }
        }
        let images = g
            .elements()
            .map(|a| reps.iter().map(|&r| coset_of[g.mul(a, r)]).collect())
            .collect();
        let action = PermAction::from_images_unchecked(reps.len(), images);
        CosetFrame { subgroup: h.clone(), reps, coset_of, action }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, i: usize) -> Element {
        self.reps[i]
    }

    pub fn reps(&self) -> &[Element] {
        &self.reps
    }

    pub fn coset_of(&self, x: Element) -> usize {
        self.coset_of[x]
    }

    /// Left multiplication action on cosets.
    pub fn action(&self) -> &PermAction {
        &self.action
    }

    /// `r_i^{-1} g r_{g^{-1} ▷ i}`, an element of `H`.
    pub fn little(&self, g: &FiniteGroup, x: Element, i: usize) -> Element {
        let j = self.action.apply(g.inv(x), i);
        g.mul_all(&[g.inv(self.reps[i]), x, self.reps[j]])
    }
}

/// A permutation action of a group on `0..degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermAction {
    degree: usize,
    images: Vec<Vec<usize>>,
}

impl PermAction {
    /// Validates that each image list is a permutation and that `g ↦ σ_g`
    /// is a homomorphism.
    pub fn from_images(g: &FiniteGroup, degree: usize, images: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        if images.len() != g.order() {
            return Err(GroupError::BadAction(format!(
                "expected {} permutations, got {}",
                g.order(),
                images.len()
            )));
        }
        for (a, p) in images.iter().enumerate() {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(GroupError::BadAction(format!("image of element {a} is not a permutation")));
            }
        }
        let act = Self::from_images_unchecked(degree, images);
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                if (0..degree).any(|i| act.apply(ab, i) != act.apply(a, act.apply(b, i))) {
                    return Err(GroupError::BadAction(format!("not a homomorphism at ({a}, {b})")));
                }
            }
        }
        Ok(act)
    }

    pub(crate) fn from_images_unchecked(degree: usize, images: Vec<Vec<usize>>) -> Self {
        PermAction { degree, images }
    }

    pub fn trivial(g: &FiniteGroup, degree: usize) -> Self {
        PermAction { degree, images: vec![(0..degree).collect(); g.order()] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn apply(&self, g: Element, i: usize) -> usize {
        self.images[g][i]
    }

    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }

    /// Orbit of `point` (in discovery order) and its stabiliser.
    pub fn orbit(&self, g: &FiniteGroup, point: usize) -> (Vec<usize>, Subgroup) {
        let mut orbit = vec![point];
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut k = 0;
        while k < orbit.len() {
            let i = orbit[k];
            for a in g.elements() {
                let j = self.apply(a, i);
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                }
            }
            k += 1;
        }
        let stab = Subgroup {
            parent_order: g.order(),
            members: g.elements().filter(|&a| self.apply(a, point) == point).collect(),
        };
        (orbit, stab)
    }

    pub fn is_transitive(&self, g: &FiniteGroup) -> bool {
        self.degree == 0 || self.orbit(g, 0).0.len() == self.degree
    }

    /// Index `p` with `σ_g(p) = i`.
    pub fn preimage(&self, g: Element, i: usize) -> usize {
        self.images[g].iter().position(|&x| x == i).expect("permutation")
    }
}

/// Double cosets `H \ G / K`, each represented by its smallest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCosets {
    left: Subgroup,
    right: Subgroup,
    reps: Vec<Element>,
    class_of: Vec<usize>,
}

impl DoubleCosets {
    pub fn new(g: &FiniteGroup, left: &Subgroup, right: &Subgroup) -> Self {
        let mut class_of = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if class_of[x] == usize::MAX {
                for &h in left.members() {
                    for &k in right.members() {
                        class_of[g.mul_all(&[h, x, k])] = reps.len();
                    }
                }
                reps.push(x);
            }
        }
        DoubleCosets { left: left.clone(), right: right.clone(), reps, class_of }
    }

    pub fn reps(&self) -> &[Element] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_of(&self, x: Element) -> usize {
        self.class_of[x]
    }

    pub fn canonical_rep(&self, x: Element) -> Element {
        self.reps[self.class_of[x]]
    }

    pub fn left(&self) -> &Subgroup {
        &self.left
    }

    pub fn right(&self) -> &Subgroup {
        &self.right
    }

    pub fn members(&self, class: usize) -> Vec<Element> {
        (0..self.class_of.len()).filter(|&x| self.class_of[x] == class).collect()
    }
}

/// One entry of the index set of a double coset: the pair `(i, j)` of a
/// target coset `i` and a source coset `j`, with factors `t ∈ H`,
/// `t' ∈ H'` such that `r_j^{-1} r'_i = t x t'^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameEntry {
    pub target: usize,
    pub source: usize,
    pub t: Element,
    pub t_prime: Element,
}

/// The index set `I_x ⊂ G/H' × G/H` of a double coset `H x H'`, together
/// with the factorisation data used to induce intertwiners.
///
/// `x` need not be the canonical representative of its double coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCosetFrame {
    x: Element,
    n_target: usize,
    n_source: usize,
    base: (usize, usize),
    entries: Vec<FrameEntry>,
    lookup: Vec<Option<usize>>,
}

impl DoubleCosetFrame {
    /// `source` is the frame of `G/H`, `target` the frame of `G/H'`.
    pub fn new(g: &FiniteGroup, source: &CosetFrame, target: &CosetFrame, x: Element) -> Self {
        let h = source.subgroup();
        let hp = target.subgroup();
        let (n, np) = (source.index(), target.index());
        let i0 = target.coset_of(x);
        let base_t_prime = g.mul(g.inv(target.rep(i0)), x);
        let mut entries = Vec::new();
        let mut lookup = vec![None; np * n];
        for i in 0..np {
            for j in 0..n {
                let z = g.mul(g.inv(source.rep(j)), target.rep(i));
                let (t, tp) = if (i, j) == (i0, 0) {
                    (0, base_t_prime)
                } else {
                    // t' = z^{-1} t x must lie in H'
                    let zi = g.inv(z);
                    match h.members().iter().map(|&t| (t, g.mul_all(&[zi, t, x]))).find(|&(_, tp)| hp.contains(tp)) {
                        Some(pair) => pair,
                        None => continue,
                    }
                };
                lookup[i * n + j] = Some(entries.len());
                entries.push(FrameEntry { target: i, source: j, t, t_prime: tp });
            }
        }
        DoubleCosetFrame { x, n_target: np, n_source: n, base: (i0, 0), entries, lookup }
    }

    pub fn x(&self) -> Element {
        self.x
    }

    /// The base pair `(i0, 0)` with `r'_{i0} ∈ x H'` and `t = e`.
    pub fn base(&self) -> (usize, usize) {
        self.base
    }

    pub fn entries(&self) -> &[FrameEntry] {
        &self.entries
    }

    pub fn entry(&self, target: usize, source: usize) -> Option<&FrameEntry> {
        self.lookup[target * self.n_source + source].map(|k| &self.entries[k])
    }

    pub fn contains(&self, target: usize, source: usize) -> bool {
        self.lookup[target * self.n_source + source].is_some()
    }

    pub fn n_target(&self) -> usize {
        self.n_target
    }

    pub fn n_source(&self) -> usize {
        self.n_source
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_groups_have_expected_orders() {
        assert_eq!(FiniteGroup::cyclic(5).order(), 5);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::klein().order(), 4);
        assert!(FiniteGroup::klein().is_abelian());
        assert!(!FiniteGroup::symmetric(3).is_abelian());
        assert!(!FiniteGroup::dihedral(3).is_abelian());
    }

    #[test]
    fn identity_is_moved_to_zero() {
        // Z2 with identity labelled 1
        let g = FiniteGroup::from_multiplication_table(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.source_index(0), 1);
        assert_eq!(g.from_source_index(0), Some(1));
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(matches!(
            FiniteGroup::from_multiplication_table(&[vec![0, 1], vec![1, 1]]),
            Err(GroupError::NoInverse { .. })
        ));
        assert!(matches!(
            FiniteGroup::from_multiplication_table(&[vec![1, 0], vec![1, 0]]),
            Err(GroupError::NoIdentity)
        ));
        // a commutative loop of order 5 that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_multiplication_table(&loop5),
            Err(GroupError::NotAssociative { .. })
        ));
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(FiniteGroup::symmetric(3).subgroups().len(), 6);
        assert_eq!(FiniteGroup::klein().subgroups().len(), 5);
        assert_eq!(FiniteGroup::cyclic(12).subgroups().len(), 6);
        assert_eq!(FiniteGroup::dihedral(4).subgroups().len(), 10);
        assert_eq!(FiniteGroup::symmetric(4).subgroups().len(), 30);
        assert_eq!(FiniteGroup::symmetric(3).subgroup_classes().len(), 4);
        assert_eq!(FiniteGroup::symmetric(4).subgroup_classes().len(), 11);
    }

    #[test]
    fn coset_frame_of_s3() {
        let g = FiniteGroup::symmetric(3);
        let h = Subgroup::generated(&g, &[1]);
        let f = CosetFrame::new(&g, &h);
        assert_eq!(f.index(), 3);
        assert_eq!(f.rep(0), 0);
        for a in g.elements() {
            for i in 0..3 {
                let l = f.little(&g, a, i);
                assert!(h.contains(l));
                let j = f.action().apply(g.inv(a), i);
                assert_eq!(g.mul(f.rep(i), l), g.mul(a, f.rep(j)));
            }
        }
    }

    #[test]
    fn orbit_stabiliser() {
        let g = FiniteGroup::symmetric(3);
        let h = Subgroup::generated(&g, &[1]);
        let f = CosetFrame::new(&g, &h);
        let (orbit, stab) = f.action().orbit(&g, 0);
        assert_eq!(orbit.len(), 3);
        assert_eq!(stab, h);
    }

    #[test]
    fn double_coset_frames_factorise() {
        let g = FiniteGroup::symmetric(3);
        let subs = g.subgroups();
        for h in &subs {
            for hp in &subs {
                let (fs, ft) = (CosetFrame::new(&g, h), CosetFrame::new(&g, hp));
                let dc = DoubleCosets::new(&g, h, hp);
                let mut total = 0;
                for y in g.elements() {
                    let frame = DoubleCosetFrame::new(&g, &fs, &ft, y);
                    for e in frame.entries() {
                        let lhs = g.mul(g.inv(fs.rep(e.source)), ft.rep(e.target));
                        assert_eq!(lhs, g.mul_all(&[e.t, y, g.inv(e.t_prime)]));
                        assert!(h.contains(e.t) && hp.contains(e.t_prime));
                    }
                    let (i0, j0) = frame.base();
                    assert_eq!(frame.entry(i0, j0).unwrap().t, 0);
                    if dc.canonical_rep(y) == y {
                        total += frame.entries().len();
                        assert_eq!(ft.rep(i0), y, "canonical rep is a coset rep");
                    }
                }
                assert_eq!(total, fs.index() * ft.index());
            }
        }
    }
}
