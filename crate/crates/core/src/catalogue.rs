//! Labelled tables of irreducible 2-representations and intertwiners for a
//! fixed 2-group and flavour: hom tables, fusion of labelled intertwiners,
//! duals and adjoints by label, and the coherence battery.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::RepError;
use crate::intertwiner::{
    classify, compose_irreducible, compose_matrix, decompose_matrix, induce_intertwiner, transform, transformed_ends,
    verify_intertwiner, HomSpace, IrrIntertwiner, MATRIX_TOL,
};
use crate::linalg;
use crate::projrep::TwistMode;
use crate::two_group::TwoGroup;
use crate::two_rep::{enumerate_irreducibles, induce, verify_quintuple, Classification, Flavour, Irr2Rep, Violation};

/// Default seed for the randomised splitting of projective representations.
pub const DEFAULT_SEED: u64 = 0xC0C1C1E;

/// Position of an irreducible intertwiner: `homs[source][target].irreducibles[index]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorphismId {
    pub source: usize,
    pub target: usize,
    pub index: usize,
}

/// A formal sum of irreducible intertwiners between two fixed objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fusion {
    pub source: usize,
    pub target: usize,
    pub multiplicities: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Catalogue {
    tg: TwoGroup,
    seed: u64,
    classification: Classification,
    object_labels: Vec<String>,
    homs: Vec<Vec<HomSpace>>,
    morphism_labels: Vec<Vec<Vec<String>>>,
}

impl Catalogue {
    pub fn build(tg: &TwoGroup, flavour: Flavour, seed: u64) -> Result<Self, RepError> {
        let classification = enumerate_irreducibles(tg, flavour)?;
        let irr = &classification.irreducibles;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut homs = Vec::with_capacity(irr.len());
        for a in irr {
            let mut row = Vec::with_capacity(irr.len());
            for b in irr {
                row.push(classify(tg, a, b, &mut rng)?);
            }
            homs.push(row);
        }
        let z2 = is_plain_z2(tg);
        let object_labels: Vec<String> = if z2 {
            irr.iter().map(z2_object_label).collect()
        } else {
            (0..irr.len()).map(|a| format!("R{a}")).collect()
        };
        let morphism_labels = homs
            .iter()
            .enumerate()
            .map(|(a, row)| {
                row.iter()
                    .enumerate()
                    .map(|(b, hom)| {
                        let mut generic = 0;
                        hom.irreducibles
                            .iter()
                            .map(|eta| {
                                if a == b && is_identity(eta) {
                                    "1".to_string()
                                } else if z2 {
                                    z2_morphism_label(&object_labels[a], &object_labels[b])
                                } else {
                                    generic += 1;
                                    format!("{}>{}#{}", object_labels[a], object_labels[b], generic)
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Catalogue { tg: tg.clone(), seed, classification, object_labels, homs, morphism_labels })
    }

    pub fn two_group(&self) -> &TwoGroup {
        &self.tg
    }

    pub fn flavour(&self) -> Flavour {
        self.classification.flavour
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }

    pub fn objects(&self) -> &[Irr2Rep] {
        &self.classification.irreducibles
    }

    pub fn object_label(&self, a: usize) -> &str {
        &self.object_labels[a]
    }

    pub fn object_labels(&self) -> &[String] {
        &self.object_labels
    }

    pub fn hom(&self, a: usize, b: usize) -> &HomSpace {
        &self.homs[a][b]
    }

    pub fn morphism(&self, id: MorphismId) -> &IrrIntertwiner {
        &self.homs[id.source][id.target].irreducibles[id.index]
    }

    pub fn morphism_label(&self, id: MorphismId) -> &str {
        &self.morphism_labels[id.source][id.target][id.index]
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorphismId> + '_ {
        let n = self.objects().len();
        (0..n).flat_map(move |a| {
            (0..n).flat_map(move |b| (0..self.homs[a][b].len()).map(move |index| MorphismId { source: a, target: b, index }))
        })
    }

    pub fn object_index(&self, label: &str) -> Result<usize, RepError> {
        let l = normalise_label(label);
        self.object_labels.iter().position(|o| *o == l).ok_or_else(|| RepError::UnknownLabel(label.to_string()))
    }

    /// All intertwiners carrying `label` (several for the identity `1`).
    pub fn lookup(&self, label: &str) -> Result<Vec<MorphismId>, RepError> {
        let l = normalise_label(label);
        let found: Vec<MorphismId> = self.morphisms().filter(|&id| self.morphism_label(id) == l).collect();
        if found.is_empty() {
            return Err(RepError::UnknownLabel(label.to_string()));
        }
        Ok(found)
    }

    /// Resolves a composable chain written left to right as `η_1 ∘ … ∘ η_m`
    /// (so `η_m` is applied first). The assignment must be unique.
    pub fn resolve_chain(&self, labels: &[&str]) -> Result<Vec<MorphismId>, RepError> {
        if labels.is_empty() {
            return Err(RepError::NotChainable("empty chain".into()));
        }
        let candidates: Vec<Vec<MorphismId>> = labels.iter().map(|l| self.lookup(l)).collect::<Result<_, _>>()?;
        let mut found = Vec::new();
        let mut current = Vec::new();
        chains(&candidates, 0, &mut current, &mut found);
        match found.len() {
            0 => Err(RepError::NotChainable(format!("no composable reading of {}", labels.join(", ")))),
            1 => Ok(found.pop().unwrap()),
            k => Err(RepError::NotChainable(format!("{k} composable readings of {}", labels.join(", ")))),
        }
    }

    /// Composes a chain of labelled intertwiners (`labels[0]` applied last)
    /// and decomposes the result into irreducibles.
    pub fn fuse(&self, labels: &[&str]) -> Result<Fusion, RepError> {
        let chain = self.resolve_chain(labels)?;
        let first = *chain.last().unwrap();
        let mut acc = Fusion { source: first.source, target: first.target, multiplicities: unit(self.hom(first.source, first.target).len(), first.index) };
        for &next in chain.iter().rev().skip(1) {
            let hom = self.hom(acc.source, next.target);
            let mut out = vec![0; hom.len()];
            for (k, &m) in acc.multiplicities.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                let eta = &self.hom(acc.source, acc.target).irreducibles[k];
                let part = compose_irreducible(&self.tg, eta, self.morphism(next), hom)?;
                for (o, p) in out.iter_mut().zip(part) {
                    *o += m * p;
                }
            }
            acc = Fusion { source: acc.source, target: next.target, multiplicities: out };
        }
        Ok(acc)
    }

    /// `η^{∨_1}`, `η^{∨_2}` or `η^{†_1}` for a single labelled intertwiner.
    pub fn transform_label(&self, label: &str, mode: TwistMode) -> Result<Fusion, RepError> {
        let id = self.resolve_chain(&[label])?[0];
        self.transform(id, mode)
    }

    pub fn transform(&self, id: MorphismId, mode: TwistMode) -> Result<Fusion, RepError> {
        let eta = self.morphism(id);
        let (s, t) = transformed_ends(&self.tg, &eta.source, &eta.target, mode);
        let find = |r: &Irr2Rep| {
            self.objects()
                .iter()
                .position(|o| o == r)
                .ok_or_else(|| RepError::Invalid("dual 2-representation is not among the enumerated ones".into()))
        };
        let (a, b) = (find(&s)?, find(&t)?);
        let multiplicities = transform(&self.tg, eta, mode, self.hom(a, b))?;
        Ok(Fusion { source: a, target: b, multiplicities })
    }

    /// `"1⊕u₋⊕u₋"`-style rendering, `"0"` for the empty sum.
    pub fn format_fusion(&self, f: &Fusion) -> String {
        let labels = &self.morphism_labels[f.source][f.target];
        let parts: Vec<&str> = f
            .multiplicities
            .iter()
            .enumerate()
            .flat_map(|(k, &m)| std::iter::repeat_n(labels[k].as_str(), m))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("⊕")
        }
    }

    pub fn hom_table(&self) -> Vec<HomRow> {
        let n = self.objects().len();
        let mut rows = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let hom = self.hom(a, b);
                let generators = hom
                    .irreducibles
                    .iter()
                    .enumerate()
                    .map(|(k, eta)| Generator {
                        label: self.morphism_labels[a][b][k].clone(),
                        coset_rep: eta.x,
                        dim: eta.dim(),
                        paired: eta.is_paired(),
                    })
                    .collect();
                rows.push(HomRow {
                    source: self.object_labels[a].clone(),
                    target: self.object_labels[b].clone(),
                    generators,
                    skipped: hom.skipped.iter().map(|s| (s.x, s.reason.clone())).collect(),
                });
            }
        }
        rows
    }

    /// Every chainable pair `(η_1, η_2)` of irreducible intertwiners, `η_1` applied first.
    pub fn chainable_pairs(&self) -> Vec<(MorphismId, MorphismId)> {
        let ids: Vec<MorphismId> = self.morphisms().collect();
        let mut out = Vec::new();
        for &a in &ids {
            for &b in ids.iter().filter(|b| b.source == a.target) {
                out.push((a, b));
            }
        }
        out
    }

    /// Compares the composition formula for `η_2 ∘ η_1` against the
    /// decomposition of the composite of the induced matrix intertwiners.
    pub fn composition_check(&self, first: MorphismId, second: MorphismId) -> Result<Option<String>, RepError> {
        let hom = self.hom(first.source, second.target);
        let formula = compose_irreducible(&self.tg, self.morphism(first), self.morphism(second), hom)?;
        let m1 = induce_intertwiner(&self.tg, self.morphism(first))?;
        let m2 = induce_intertwiner(&self.tg, self.morphism(second))?;
        let composed = compose_matrix(&m2, &m1)?;
        let matrix = decompose_matrix(&self.tg, &composed, hom)?;
        if formula == matrix {
            Ok(None)
        } else {
            let f = |m: Vec<usize>| self.format_fusion(&Fusion { source: first.source, target: second.target, multiplicities: m });
            Ok(Some(format!("formula gives {}, matrices give {}", f(formula), f(matrix))))
        }
    }

    /// Runs the coherence battery: every induced irreducible passes
    /// `verify_quintuple`, every induced irreducible intertwiner passes
    /// `verify_intertwiner`, and compositions agree with the matrix oracle
    /// on up to `max_pairs` chainable pairs (all of them if `None`).
    pub fn coherence_battery(&self, max_pairs: Option<usize>) -> Result<Vec<Failure>, RepError> {
        let mut out = Vec::new();
        for (a, r) in self.objects().iter().enumerate() {
            for v in verify_quintuple(&self.tg, &induce(&self.tg, r)) {
                out.push(Failure { subject: self.object_labels[a].clone(), violation: v });
            }
        }
        for id in self.morphisms().collect::<Vec<_>>() {
            let subject = || format!("{}: {}→{}", self.morphism_label(id), self.object_labels[id.source], self.object_labels[id.target]);
            let mat = induce_intertwiner(&self.tg, self.morphism(id))?;
            for v in verify_intertwiner(&self.tg, &mat) {
                out.push(Failure { subject: subject(), violation: v });
            }
            let eta = self.morphism(id);
            if eta.rep.check(self.tg.group(), MATRIX_TOL).is_err() {
                out.push(Failure { subject: subject(), violation: Violation::new("projective-rep", vec![], 0, "ψ", "projective") });
            }
        }
        let pairs = self.chainable_pairs();
        let take = max_pairs.unwrap_or(pairs.len()).min(pairs.len());
        for &(p, q) in &pairs[..take] {
            if let Some(msg) = self.composition_check(p, q)? {
                out.push(Failure {
                    subject: format!("{} ∘ {}", self.morphism_label(q), self.morphism_label(p)),
                    violation: Violation::new("composition-oracle", vec![], 0, msg, "agreement"),
                });
            }
        }
        Ok(out)
    }
}

fn unit(len: usize, k: usize) -> Vec<usize> {
    let mut v = vec![0; len];
    v[k] = 1;
    v
}

fn chains(cands: &[Vec<MorphismId>], pos: usize, cur: &mut Vec<MorphismId>, found: &mut Vec<Vec<MorphismId>>) {
    if pos == cands.len() {
        found.push(cur.clone());
        return;
    }
    for &c in &cands[pos] {
        // cur[pos-1] is applied after c, so its source is c's target
        if cur.last().is_some_and(|prev: &MorphismId| prev.source != c.target) {
            continue;
        }
        cur.push(c);
        chains(cands, pos + 1, cur, found);
        cur.pop();
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub label: String,
    pub coset_rep: usize,
    pub dim: usize,
    /// Whether the generator is a hyperbolic pair `ψ ⊕ ψ^ε`.
    pub paired: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomRow {
    pub source: String,
    pub target: String,
    pub generators: Vec<Generator>,
    pub skipped: Vec<(usize, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub subject: String,
    pub violation: Violation,
}

fn is_identity(eta: &IrrIntertwiner) -> bool {
    eta.x == 0 && eta.dim() == 1 && eta.rep.matrices().iter().all(|m| linalg::approx_eq(m, &linalg::identity(1), MATRIX_TOL))
}

/// `G = Z_2` with `A` trivial, where the fixed naming scheme applies.
fn is_plain_z2(tg: &TwoGroup) -> bool {
    tg.group().order() == 2 && tg.a().order() == 1
}

fn z2_object_label(r: &Irr2Rep) -> String {
    let base = if r.subgroup().is_whole() { "1" } else { "2" };
    let signed = match r.flavour() {
        Flavour::Ordinary => false,
        Flavour::Unitary => r.subgroup().is_whole(),
        Flavour::Positive => true,
    };
    if !signed {
        return base.to_string();
    }
    let plus = r.sign().is_trivial();
    format!("{base}{}", if plus { '₊' } else { '₋' })
}

fn z2_morphism_label(source: &str, target: &str) -> String {
    let dim = |s: &str| s.chars().next().unwrap();
    let sub = |s: &str| s.chars().nth(1);
    let (letter, subscript) = match (dim(source), dim(target)) {
        ('1', '1') if source == target => ('u', sub(source)),
        ('1', '1') => ('z', sub(source)),
        ('2', '2') => ('v', sub(source)),
        ('1', _) => ('x', sub(source)),
        _ => ('y', sub(target)),
    };
    let mut out = letter.to_string();
    out.extend(subscript);
    out
}

/// Accepts ASCII `+`/`-` (optionally after `_`) for the subscripts `₊`/`₋`.
pub fn normalise_label(label: &str) -> String {
    let trimmed = label.trim();
    if trimmed.contains('>') {
        return trimmed.to_string();
    }
    trimmed.replace('_', "").replace('+', "₊").replace('-', "₋")
}

/// Counts of labels in a rendered fusion string, for order-insensitive comparison.
pub fn fusion_counts(s: &str) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    if s != "0" {
        for part in s.split('⊕') {
            *out.entry(normalise_label(part)).or_insert(0) += 1;
        }
    }
    out
}
