//! Acceptance suite: runs every criterion, prints one PASS/FAIL line each
//! with its wall time, and exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tworep_core::catalogue::{Catalogue, MorphismId, DEFAULT_SEED};
use tworep_core::cohomology::h2_representatives;
use tworep_core::group::{FiniteGroup, Subgroup};
use tworep_core::intertwiner::{classify, induce_intertwiner, verify_intertwiner};
use tworep_core::phase::Phase;
use tworep_core::projrep::TwistMode;
use tworep_core::two_group::TwoGroup;
use tworep_core::two_rep::{
    enumerate_irreducibles, induce, sign_cocycle_count, unitarisation_failures, unitarisation_ratio_count,
    verify_quintuple, Flavour, Irr2Rep,
};
use tworep_core::zoo::{z2_with_alpha, zoo};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn z2() -> TwoGroup {
    TwoGroup::from_group(FiniteGroup::cyclic(2))
}

fn catalogue(tg: &TwoGroup, flavour: Flavour) -> Result<Catalogue, String> {
    Catalogue::build(tg, flavour, DEFAULT_SEED).map_err(|e| e.to_string())
}

fn fuse(cat: &Catalogue, labels: &[&str]) -> Result<String, String> {
    cat.fuse(labels).map(|f| cat.format_fusion(&f)).map_err(|e| format!("{labels:?}: {e}"))
}

fn expect_fuse(cat: &Catalogue, labels: &[&str], want: &str) -> Result<(), String> {
    let got = fuse(cat, labels)?;
    ensure(got == want, || format!("{} = {got}, expected {want}", labels.join(" ∘ ")))
}

fn expect_transform(cat: &Catalogue, label: &str, mode: TwistMode, want: &str) -> Result<(), String> {
    let got = cat.transform_label(label, mode).map(|f| cat.format_fusion(&f)).map_err(|e| e.to_string())?;
    ensure(got == want, || format!("{mode:?}({label}) = {got}, expected {want}"))
}

fn z2_positive_classification() -> Outcome {
    let cl = enumerate_irreducibles(&z2(), Flavour::Positive).map_err(|e| e.to_string())?;
    let dims: Vec<usize> = cl.irreducibles.iter().map(|r| r.dim(&z2())).collect();
    ensure(dims == [1, 1, 2, 2], || format!("dims {dims:?}"))?;
    Ok(format!("dims {dims:?}"))
}

fn z2_positive_tables() -> Outcome {
    let cat = catalogue(&z2(), Flavour::Positive)?;
    let sub = ["₊", "₋"];
    for (i, si) in sub.iter().enumerate() {
        for (j, sj) in sub.iter().enumerate() {
            let hom = |a: &str, b: &str| -> Result<Vec<(String, usize)>, String> {
                let a = cat.object_index(a).map_err(|e| e.to_string())?;
                let b = cat.object_index(b).map_err(|e| e.to_string())?;
                let n = cat.objects().len();
                Ok(cat.hom_table()[a * n + b].generators.iter().map(|g| (g.label.clone(), g.dim)).collect())
            };
            let delta = |v: Vec<(String, usize)>| if i == j { v } else { Vec::new() };
            let cases = [
                (format!("1{si}"), format!("1{sj}"), delta(vec![("1".into(), 1), (format!("u{si}"), 1)])),
                (format!("2{si}"), format!("2{sj}"), delta(vec![("1".into(), 1), (format!("v{si}"), 1)])),
                (format!("1{si}"), format!("2{sj}"), delta(vec![(format!("x{si}"), 1)])),
                (format!("2{si}"), format!("1{sj}"), delta(vec![(format!("y{si}"), 1)])),
            ];
            for (a, b, want) in cases {
                let got = hom(&a, &b)?;
                ensure(got == want, || format!("Hom({a}, {b}) = {got:?}, expected {want:?}"))?;
            }
        }
        let l = |s: &str| format!("{s}{si}");
        expect_fuse(&cat, &[&l("u"), &l("u")], "1")?;
        expect_fuse(&cat, &[&l("v"), &l("v")], "1")?;
        expect_fuse(&cat, &[&l("x"), &l("u")], &l("x"))?;
        expect_fuse(&cat, &[&l("v"), &l("x")], &l("x"))?;
        expect_fuse(&cat, &[&l("y"), &l("v")], &l("y"))?;
        expect_fuse(&cat, &[&l("u"), &l("y")], &l("y"))?;
        expect_fuse(&cat, &[&l("x"), &l("y")], &format!("1⊕{}", l("v")))?;
        expect_fuse(&cat, &[&l("y"), &l("x")], &format!("1⊕{}", l("u")))?;
        for mode in [TwistMode::Dual1, TwistMode::Dual2, TwistMode::Adjoint] {
            expect_transform(&cat, &l("x"), mode, &l("y"))?;
            expect_transform(&cat, &l("y"), mode, &l("x"))?;
            expect_transform(&cat, &l("u"), mode, &l("u"))?;
            expect_transform(&cat, &l("v"), mode, &l("v"))?;
        }
    }
    for (a, r) in cat.objects().iter().enumerate() {
        ensure(r.dual(cat.two_group()) == *r, || format!("{} is not self-dual", cat.object_label(a)))?;
    }
    Ok("16 hom spaces, 16 fusion rules, 24 transforms".into())
}

fn z2_unitary() -> Outcome {
    let cat = catalogue(&z2(), Flavour::Unitary)?;
    ensure(cat.object_labels() == ["1₊", "1₋", "2"], || format!("objects {:?}", cat.object_labels()))?;
    let rules: [(&[&str], &str); 10] = [
        (&["x+", "z-"], "x₋⊕x₋"),
        (&["x-", "z+"], "x₊⊕x₊"),
        (&["z+", "y+"], "y₋⊕y₋"),
        (&["z-", "y-"], "y₊⊕y₊"),
        (&["z+", "z-"], "1⊕1⊕u₋⊕u₋"),
        (&["z-", "z+"], "1⊕1⊕u₊⊕u₊"),
        (&["u+", "z-"], "z₋"),
        (&["z-", "u-"], "z₋"),
        (&["z+", "u+"], "z₊"),
        (&["u-", "z+"], "z₊"),
    ];
    for (labels, want) in rules {
        expect_fuse(&cat, labels, want)?;
    }
    for mode in [TwistMode::Dual1, TwistMode::Dual2, TwistMode::Adjoint] {
        expect_transform(&cat, "z+", mode, "z₋")?;
        expect_transform(&cat, "z-", mode, "z₊")?;
    }
    Ok("3 simples, 10 composition rules, 6 transforms".into())
}

fn coherence_battery() -> Outcome {
    let (mut quintuples, mut intertwiners) = (0, 0);
    for (name, tg) in zoo() {
        for flavour in [Flavour::Ordinary, Flavour::Unitary, Flavour::Positive] {
            let irr = enumerate_irreducibles(&tg, flavour).map_err(|e| e.to_string())?.irreducibles;
            let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
            for a in &irr {
                let fails = verify_quintuple(&tg, &induce(&tg, a));
                ensure(fails.is_empty(), || format!("{name} {flavour}: quintuple {:?}", fails[0]))?;
                quintuples += 1;
                for b in &irr {
                    let hom = classify(&tg, a, b, &mut rng).map_err(|e| e.to_string())?;
                    for eta in &hom.irreducibles {
                        let mat = induce_intertwiner(&tg, eta).map_err(|e| e.to_string())?;
                        let fails = verify_intertwiner(&tg, &mat);
                        ensure(fails.is_empty(), || format!("{name} {flavour}: intertwiner {:?}", fails[0]))?;
                        intertwiners += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{quintuples} quintuples, {intertwiners} intertwiners, 0 failures"))
}

fn obstruction() -> Outcome {
    let tg = z2_with_alpha();
    // a normalised 2-cochain on Z_2 has one unknown u(g, g); try every value in μ_24
    let gr = tg.group();
    let lambda = tg.a().character(&[1]);
    let oracle_solvable = (0..24).any(|k| {
        let u = |a: usize, b: usize| if a == 1 && b == 1 { Phase::new(k, 24) } else { Phase::ZERO };
        gr.elements().all(|a| {
            gr.elements().all(|b| {
                gr.elements().all(|c| {
                    let du = u(b, c) - u(gr.mul(a, b), c) + u(a, gr.mul(b, c)) - u(a, b);
                    du == tg.pair(&lambda, tg.al(a, b, c))
                })
            })
        })
    });
    ensure(!oracle_solvable, || "oracle found a solution".into())?;
    for flavour in [Flavour::Ordinary, Flavour::Unitary, Flavour::Positive] {
        let cl = enumerate_irreducibles(&tg, flavour).map_err(|e| e.to_string())?;
        ensure(cl.obstructed.len() == 1, || format!("{flavour}: {} obstructions", cl.obstructed.len()))?;
        let o = &cl.obstructed[0];
        ensure(o.subgroup.is_whole() && !o.character.is_trivial(), || format!("{flavour}: wrong obstruction {o:?}"))?;
    }
    Ok("(H = Z2, λ nontrivial) obstructed in all flavours".into())
}

fn composition_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut checked = 0;
    for (name, tg) in zoo() {
        for flavour in [Flavour::Ordinary, Flavour::Unitary, Flavour::Positive] {
            let cat = catalogue(&tg, flavour)?;
            let mut pairs: Vec<(MorphismId, MorphismId)> = cat.chainable_pairs();
            pairs.shuffle(&mut rng);
            for &(p, q) in pairs.iter().take(12) {
                if let Some(msg) = cat.composition_check(p, q).map_err(|e| e.to_string())? {
                    return Err(format!(
                        "{name} {flavour}: {} ∘ {}: {msg}",
                        cat.morphism_label(q),
                        cat.morphism_label(p)
                    ));
                }
                checked += 1;
            }
        }
    }
    ensure(checked >= 100, || format!("only {checked} pairs sampled"))?;
    Ok(format!("{checked} random chainable pairs agree"))
}

fn conjugacy_class_count(g: &FiniteGroup) -> usize {
    let mut seen = vec![false; g.order()];
    let mut count = 0;
    for a in g.elements() {
        if !seen[a] {
            count += 1;
            for x in g.elements() {
                seen[g.conj(x, a)] = true;
            }
        }
    }
    count
}

fn endomorphism_counts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut counts = Vec::new();
    for (g, want) in [(FiniteGroup::cyclic(2), 2), (FiniteGroup::symmetric(3), 3), (FiniteGroup::klein(), 4)] {
        ensure(conjugacy_class_count(&g) == want, || "class-count oracle disagrees".into())?;
        let tg = TwoGroup::from_group(g);
        let one = Irr2Rep::trivial(&tg, Flavour::Positive);
        let n = classify(&tg, &one, &one, &mut rng).map_err(|e| e.to_string())?.len();
        ensure(n == want, || format!("End(1) has {n} irreducibles, expected {want}"))?;
        counts.push(n);
    }
    let tg = TwoGroup::from_group(FiniteGroup::klein());
    let whole = Subgroup::whole(tg.group());
    let pauli = h2_representatives(tg.group(), &whole)
        .into_iter()
        .find(|c| !c.iter().all(|(_, v)| v.is_zero()))
        .ok_or("no nontrivial class on Z2xZ2")?;
    let sign = tworep_core::cochain::Cochain::trivial_signs(&whole, 1);
    let rho = Irr2Rep::new(&tg, Flavour::Positive, whole, tg.a().trivial_character(), pauli, sign)
        .map_err(|e| e.to_string())?;
    let one = Irr2Rep::trivial(&tg, Flavour::Positive);
    let hom = classify(&tg, &one, &rho, &mut rng).map_err(|e| e.to_string())?;
    let dims: Vec<usize> = hom.irreducibles.iter().map(|e| e.dim()).collect();
    ensure(dims == [2], || format!("Hom(1, Pauli) dims {dims:?}"))?;
    Ok(format!("End(1) = {counts:?}, Hom(1, Pauli) = one of dim 2"))
}

fn torsor_and_schur() -> Outcome {
    let mut checked = 0;
    for (name, tg) in zoo() {
        for flavour in [Flavour::Unitary, Flavour::Positive] {
            for r in enumerate_irreducibles(&tg, flavour).map_err(|e| e.to_string())?.irreducibles {
                let q5 = induce(&tg, &r);
                let base = q5.base_unitarisation(&tg);
                let fails = unitarisation_failures(&tg, &q5, &base);
                ensure(fails.is_empty(), || format!("{name}: ℓ0 fails {:?}", fails[0]))?;
                let fails = unitarisation_failures(&tg, &q5, &q5.unitarisation(&tg));
                ensure(fails.is_empty(), || format!("{name}: s·ℓ0 fails {:?}", fails[0]))?;
                if tg.group().order() <= 6 {
                    let z1 = sign_cocycle_count(&tg, &q5);
                    let ratios = unitarisation_ratio_count(&tg, &q5, 24);
                    ensure(ratios == z1, || format!("{name}: {ratios} ratios vs |Z1| = {z1}"))?;
                }
                checked += 1;
            }
        }
    }
    let klein = FiniteGroup::klein();
    let h2 = h2_representatives(&klein, &Subgroup::whole(&klein)).len();
    ensure(h2 == 2, || format!("|H2(Z2xZ2, U(1))| = {h2}"))?;
    Ok(format!("{checked} quintuples, |H2(Z2xZ2)| = 2"))
}

fn main() {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("1 Z2 positive classification", Duration::from_secs(1), z2_positive_classification),
        ("2 Z2 positive hom and fusion tables", Duration::from_secs(5), z2_positive_tables),
        ("3 Z2 unitary flavour", Duration::from_secs(5), z2_unitary),
        ("4 coherence battery", Duration::from_secs(120), coherence_battery),
        ("5 obstruction detection", Duration::from_secs(5), obstruction),
        ("6 composition oracle", Duration::from_secs(300), composition_oracle),
        ("7 End(1) counts", Duration::from_secs(5), endomorphism_counts),
        ("8 torsor and Schur", Duration::from_secs(60), torsor_and_schur),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > budget => Err(format!("{msg}; took {took:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {name} ({took:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({took:.2?}): {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 8 acceptance criteria passed");
}
