//! JSON specifications of 2-groups and the reports emitted by the CLI.
//!
//! A specification looks like
//!
//! ```json
//! {
//!   "group": "cyclic 2",
//!   "one_form": [2],
//!   "action": "trivial",
//!   "postnikov": [{"args": [1, 1, 1], "value": [1]}]
//! }
//! ```
//!
//! `group` is a builtin name (`trivial`, `cyclic N`, `dihedral N`,
//! `symmetric N`, `klein`) or `{"table": [[...], ...]}` with
//! `table[a][b] = a·b`. `one_form` lists the orders of the cyclic factors
//! of `A` (empty or absent for `A = 1`). `action` is `"trivial"` or a list
//! of `{"element": g, "matrix": M}` for generators `g`, with `M` acting on
//! exponent vectors. `postnikov` lists the nonzero values of `α` as
//! exponent vectors; group elements are indices into the builtin ordering
//! or the given table.

use serde::{Deserialize, Serialize};

use crate::abelian::{FinAbGroup, GModule};
use crate::catalogue::{Catalogue, Failure, Fusion, HomRow};
use crate::cochain::Cochain;
use crate::error::SpecError;
use crate::group::{FiniteGroup, Subgroup};
use crate::two_group::TwoGroup;
use crate::two_rep::Flavour;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Builtin(String),
    Table { table: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorAction {
    pub element: usize,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Named(String),
    Generators(Vec<GeneratorAction>),
}

impl Default for ActionSpec {
    fn default() -> Self {
        ActionSpec::Named("trivial".into())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PostnikovEntry {
    pub args: [usize; 3],
    pub value: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoGroupSpec {
    pub group: GroupSpec,
    #[serde(default)]
    pub one_form: Vec<u64>,
    #[serde(default)]
    pub action: ActionSpec,
    #[serde(default)]
    pub postnikov: Vec<PostnikovEntry>,
}

pub fn parse_spec(text: &str) -> Result<TwoGroupSpec, SpecError> {
    Ok(serde_json::from_str(text)?)
}

/// Canonical JSON form of a specification.
pub fn emit_spec(spec: &TwoGroupSpec) -> String {
    serde_json::to_string_pretty(spec).expect("specification serialises")
}

pub fn builtin_group(name: &str) -> Result<FiniteGroup, SpecError> {
    let words: Vec<&str> = name.split_whitespace().collect();
    let arg = |k: usize| -> Result<usize, SpecError> {
        words
            .get(k)
            .and_then(|w| w.parse().ok())
            .filter(|&n: &usize| n >= 1)
            .ok_or_else(|| SpecError::Malformed(format!("group: {name:?} needs a positive size")))
    };
    match words.first().copied() {
        Some("trivial") if words.len() == 1 => Ok(FiniteGroup::trivial()),
        Some("klein") if words.len() == 1 => Ok(FiniteGroup::klein()),
        Some("cyclic") if words.len() == 2 => Ok(FiniteGroup::cyclic(arg(1)?)),
        Some("dihedral") if words.len() == 2 => Ok(FiniteGroup::dihedral(arg(1)?)),
        Some("symmetric") if words.len() == 2 => {
            let n = arg(1)?;
            if n > 5 {
                return Err(SpecError::Malformed(format!("group: symmetric {n} is too large")));
            }
            Ok(FiniteGroup::symmetric(n))
        }
        _ => Err(SpecError::Malformed(format!("group: unknown builtin {name:?}"))),
    }
}

/// Validates a specification and builds the 2-group.
pub fn build_two_group(spec: &TwoGroupSpec) -> Result<TwoGroup, SpecError> {
    let group = match &spec.group {
        GroupSpec::Builtin(name) => builtin_group(name)?,
        GroupSpec::Table { table } => FiniteGroup::from_multiplication_table(table)?,
    };
    let element = |field: &str, label: usize| {
        group
            .from_source_index(label)
            .ok_or_else(|| SpecError::Malformed(format!("{field}: element {label} out of range")))
    };
    let a = FinAbGroup::new(spec.one_form.clone())?;
    let module = match &spec.action {
        ActionSpec::Named(s) if s == "trivial" => GModule::trivial(&group, a.clone()),
        ActionSpec::Named(s) => return Err(SpecError::Malformed(format!("action: unknown value {s:?}"))),
        ActionSpec::Generators(gens) => {
            let gens = gens
                .iter()
                .map(|g| Ok((element("action", g.element)?, g.matrix.clone())))
                .collect::<Result<Vec<_>, SpecError>>()?;
            GModule::from_generators(&group, a.clone(), &gens)?
        }
    };
    let mut alpha = Cochain::constant(&Subgroup::whole(&group), 3, a.zero());
    for entry in &spec.postnikov {
        if entry.value.len() != a.rank() {
            return Err(SpecError::Malformed(format!(
                "postnikov: value {:?} needs {} coordinates",
                entry.value,
                a.rank()
            )));
        }
        let args = [element("postnikov", entry.args[0])?, element("postnikov", entry.args[1])?, element("postnikov", entry.args[2])?];
        alpha.set(&args, a.index(&entry.value));
    }
    Ok(TwoGroup::new(group, module, alpha)?)
}

pub fn load_two_group(text: &str) -> Result<TwoGroup, SpecError> {
    build_two_group(&parse_spec(text)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Classification,
    Homs,
    Fusion,
    Verify,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObjectRow {
    pub label: String,
    pub subgroup: Vec<String>,
    pub character: Vec<u64>,
    pub dim: usize,
    pub trivial_sign: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionRow {
    pub subgroup: Vec<String>,
    pub character: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionRow {
    pub input: Vec<String>,
    pub transform: Option<String>,
    pub source: String,
    pub target: String,
    pub result: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Entries {
    Classification { objects: Vec<ObjectRow>, obstructed: Vec<ObstructionRow> },
    Homs { homs: Vec<HomRow> },
    Fusion { fusion: FusionRow },
    Verify { checked_pairs: usize, failures: Vec<Failure> },
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub kind: ReportKind,
    pub flavour: Flavour,
    pub seed: u64,
    pub version: &'static str,
    pub entries: Entries,
}

impl Report {
    fn new(cat: &Catalogue, kind: ReportKind, entries: Entries) -> Self {
        Report { kind, flavour: cat.flavour(), seed: cat.seed(), version: env!("CARGO_PKG_VERSION"), entries }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// True unless this is a verification report with failures.
    pub fn passed(&self) -> bool {
        !matches!(&self.entries, Entries::Verify { failures, .. } if !failures.is_empty())
    }

    /// Plain-text table for the terminal.
    pub fn render(&self) -> String {
        let mut out = format!("{} ({} flavour, seed {})\n", self.kind_name(), self.flavour, self.seed);
        match &self.entries {
            Entries::Classification { objects, obstructed } => {
                out += &format!("{:<8} {:>4}  {:<24} {:<10} sign\n", "label", "dim", "subgroup", "character");
                for o in objects {
                    out += &format!(
                        "{:<8} {:>4}  {:<24} {:<10} {}\n",
                        o.label,
                        o.dim,
                        o.subgroup.join(" "),
                        format!("{:?}", o.character),
                        if o.trivial_sign { "trivial" } else { "nontrivial" }
                    );
                }
                for o in obstructed {
                    out += &format!("obstructed: subgroup {{{}}} character {:?}\n", o.subgroup.join(" "), o.character);
                }
            }
            Entries::Homs { homs } => {
                for row in homs {
                    let gens: Vec<String> = row.generators.iter().map(|g| format!("{} (dim {})", g.label, g.dim)).collect();
                    let body = if gens.is_empty() { "0".to_string() } else { gens.join(", ") };
                    out += &format!("Hom({}, {}) = {}\n", row.source, row.target, body);
                }
            }
            Entries::Fusion { fusion } => {
                let lhs = match &fusion.transform {
                    Some(t) => format!("{}({})", t, fusion.input.join(" ∘ ")),
                    None => fusion.input.join(" ∘ "),
                };
                out += &format!("{lhs} = {} : {} → {}\n", fusion.result, fusion.source, fusion.target);
            }
            Entries::Verify { checked_pairs, failures } => {
                out += &format!("composition pairs checked: {checked_pairs}\n");
                for f in failures {
                    let v = &f.violation;
                    out += &format!("FAIL {} {} at {:?}/{}: {} vs {}\n", f.subject, v.condition, v.args, v.index, v.lhs, v.rhs);
                }
                out += if failures.is_empty() { "all checks passed\n" } else { "verification failed\n" };
            }
        }
        out
    }

    fn kind_name(&self) -> &'static str {
        match self.kind {
            ReportKind::Classification => "classification",
            ReportKind::Homs => "homs",
            ReportKind::Fusion => "fusion",
            ReportKind::Verify => "verify",
        }
    }
}

fn element_names(cat: &Catalogue, h: &Subgroup) -> Vec<String> {
    h.members().iter().map(|&g| cat.two_group().group().name(g).to_string()).collect()
}

pub fn cmd_classify(cat: &Catalogue) -> Report {
    let tg = cat.two_group();
    let objects = cat
        .objects()
        .iter()
        .enumerate()
        .map(|(a, r)| ObjectRow {
            label: cat.object_label(a).to_string(),
            subgroup: element_names(cat, r.subgroup()),
            character: r.character().exponents().to_vec(),
            dim: r.dim(tg),
            trivial_sign: r.sign().is_trivial(),
        })
        .collect();
    let obstructed = cat
        .classification()
        .obstructed
        .iter()
        .map(|o| ObstructionRow { subgroup: element_names(cat, &o.subgroup), character: o.character.exponents().to_vec() })
        .collect();
    Report::new(cat, ReportKind::Classification, Entries::Classification { objects, obstructed })
}

pub fn cmd_homs(cat: &Catalogue) -> Report {
    Report::new(cat, ReportKind::Homs, Entries::Homs { homs: cat.hom_table() })
}

/// Composes the labelled chain, or applies `transform` to a single label.
pub fn cmd_fuse(
    cat: &Catalogue,
    labels: &[&str],
    transform: Option<crate::projrep::TwistMode>,
) -> Result<Report, crate::error::RepError> {
    let f: Fusion = match transform {
        Some(mode) => {
            if labels.len() != 1 {
                return Err(crate::error::RepError::NotChainable("a transform takes exactly one label".into()));
            }
            cat.transform_label(labels[0], mode)?
        }
        None => cat.fuse(labels)?,
    };
    let fusion = FusionRow {
        input: labels.iter().map(|l| crate::catalogue::normalise_label(l)).collect(),
        transform: transform.map(|m| serde_json::to_value(m).unwrap().as_str().unwrap().to_string()),
        source: cat.object_label(f.source).to_string(),
        target: cat.object_label(f.target).to_string(),
        result: cat.format_fusion(&f),
    };
    Ok(Report::new(cat, ReportKind::Fusion, Entries::Fusion { fusion }))
}

pub fn cmd_verify(cat: &Catalogue, max_pairs: Option<usize>) -> Result<Report, crate::error::RepError> {
    let failures = cat.coherence_battery(max_pairs)?;
    let total = cat.chainable_pairs().len();
    let checked_pairs = max_pairs.map_or(total, |m| m.min(total));
    Ok(Report::new(cat, ReportKind::Verify, Entries::Verify { checked_pairs, failures }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::DEFAULT_SEED;

    #[test]
    fn minimal_spec_is_plain_z2() {
        let tg = load_two_group(r#"{"group": "cyclic 2"}"#).unwrap();
        assert_eq!(tg.group().order(), 2);
        assert_eq!(tg.a().order(), 1);
    }

    #[test]
    fn postnikov_entry_gives_the_nontrivial_class() {
        let text = r#"{"group": "cyclic 2", "one_form": [2], "postnikov": [{"args": [1, 1, 1], "value": [1]}]}"#;
        let tg = load_two_group(text).unwrap();
        assert_eq!(tg.al(1, 1, 1), 1);
        let bad = r#"{"group": "cyclic 3", "one_form": [3], "postnikov": [{"args": [1, 1, 1], "value": [1]}]}"#;
        assert!(matches!(load_two_group(bad), Err(SpecError::TwoGroup(_))));
    }

    #[test]
    fn malformed_specs_name_the_field() {
        let e = load_two_group(r#"{"group": {"table": [[0, 1], [1]]}}"#).unwrap_err();
        assert!(e.to_string().contains("row 1"), "{e}");
        let e = load_two_group(r#"{"group": "cyclic"}"#).unwrap_err();
        assert!(e.to_string().contains("group"), "{e}");
        let e = load_two_group(r#"{"group": "cyclic 2", "actions": "trivial"}"#).unwrap_err();
        assert!(e.to_string().contains("actions"), "{e}");
        let e = load_two_group(r#"{"group": "cyclic 2", "action": [{"element": 5, "matrix": [[1]]}]}"#).unwrap_err();
        assert!(e.to_string().contains("action"), "{e}");
    }

    #[test]
    fn table_and_action_specs() {
        let text = r#"{"group": {"table": [[1, 0], [0, 1]]}, "one_form": [3], "action": [{"element": 0, "matrix": [[-1]]}]}"#;
        let tg = load_two_group(text).unwrap();
        // table element 1 is the identity, so element 0 of the table is the generator
        assert_eq!(tg.module().act(1, 1), 2);
    }

    #[test]
    fn emit_parse_round_trip() {
        let text = r#"{"group": "dihedral 3", "one_form": [2], "action": "trivial", "postnikov": []}"#;
        let spec = parse_spec(text).unwrap();
        let canon = emit_spec(&spec);
        assert_eq!(emit_spec(&parse_spec(&canon).unwrap()), canon);
    }

    #[test]
    fn reports_are_deterministic() {
        let tg = load_two_group(r#"{"group": "symmetric 3"}"#).unwrap();
        let run = || {
            let cat = Catalogue::build(&tg, Flavour::Positive, DEFAULT_SEED).unwrap();
            cmd_homs(&cat).to_json() + &cmd_classify(&cat).to_json()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn z2_reports() {
        let tg = load_two_group(r#"{"group": "cyclic 2"}"#).unwrap();
        let cat = Catalogue::build(&tg, Flavour::Positive, DEFAULT_SEED).unwrap();
        let Entries::Classification { objects, .. } = cmd_classify(&cat).entries else { panic!() };
        assert_eq!(objects.iter().map(|o| o.label.as_str()).collect::<Vec<_>>(), ["1₊", "1₋", "2₊", "2₋"]);
        let cat = Catalogue::build(&tg, Flavour::Unitary, DEFAULT_SEED).unwrap();
        let r = cmd_fuse(&cat, &["z+", "z-"], None).unwrap();
        let Entries::Fusion { fusion } = &r.entries else { panic!() };
        assert_eq!(fusion.result, "1⊕1⊕u₋⊕u₋");
        assert!(cmd_verify(&cat, None).unwrap().passed());
    }
}
