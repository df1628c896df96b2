//! Property tests for the invariants of groups, cohomology, projective
//! representations, 2-representations and intertwiners.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tworep_core::abelian::{FinAbGroup, GModule};
use tworep_core::catalogue::{Catalogue, DEFAULT_SEED};
use tworep_core::cochain::{differential, Cochain, U1};
use tworep_core::cohomology::{
    coboundary_witness, covariant_1cochains, h2_representatives, sign_homomorphisms, solve_inhomogeneous,
};
use tworep_core::group::{CosetFrame, DoubleCosetFrame, DoubleCosets, FiniteGroup, Subgroup};
use tworep_core::intertwiner::classify;
use tworep_core::phase::Phase;
use tworep_core::projrep::{attach_invariant_form, irreducible_projreps, TwistMode};
use tworep_core::two_group::TwoGroup;
use tworep_core::two_rep::{are_equivalent, enumerate_irreducibles, positive_filter, Flavour};
use tworep_core::zoo::zoo;

fn groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::cyclic(6),
        FiniteGroup::klein(),
        FiniteGroup::symmetric(3),
        FiniteGroup::dihedral(4),
    ]
}

fn group_and_subgroup() -> impl Strategy<Value = (FiniteGroup, Subgroup)> {
    (0..groups().len(), any::<prop::sample::Index>()).prop_map(|(g, k)| {
        let g = groups().swap_remove(g);
        let subs = g.subgroups();
        let h = subs[k.index(subs.len())].clone();
        (g, h)
    })
}

fn phase_cochain(h: &Subgroup, degree: usize, den: i64, seed: u64) -> Cochain<Phase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Cochain::from_fn(h, degree, Phase::ZERO, |t| {
        if t.contains(&0) {
            Phase::ZERO
        } else {
            Phase::new(rand::Rng::gen_range(&mut rng, 0..den), den)
        }
    })
}

fn flavours() -> impl Strategy<Value = Flavour> {
    prop_oneof![Just(Flavour::Ordinary), Just(Flavour::Unitary), Just(Flavour::Positive)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coset_actions_are_homomorphisms_with_stabiliser_h((g, h) in group_and_subgroup()) {
        let frame = CosetFrame::new(&g, &h);
        let act = frame.action();
        for a in g.elements() {
            for b in g.elements() {
                for i in 0..frame.index() {
                    prop_assert_eq!(act.apply(g.mul(a, b), i), act.apply(a, act.apply(b, i)));
                    // little-group cocycle identity (ab)_i = a_i · b_{a^{-1} ▷ i}
                    let j = act.apply(g.inv(a), i);
                    prop_assert_eq!(frame.little(&g, g.mul(a, b), i), g.mul(frame.little(&g, a, i), frame.little(&g, b, j)));
                }
            }
        }
        let (_, stab) = act.orbit(&g, 0);
        prop_assert_eq!(stab, h);
    }

    #[test]
    fn double_coset_frames_cover_and_factorise((g, h) in group_and_subgroup(), k in any::<prop::sample::Index>()) {
        let subs = g.subgroups();
        let h2 = &subs[k.index(subs.len())];
        let dcs = DoubleCosets::new(&g, &h, h2);
        let total: usize = (0..dcs.len()).map(|c| dcs.members(c).len()).sum();
        prop_assert_eq!(total, g.order());
        let (sf, tf) = (CosetFrame::new(&g, &h), CosetFrame::new(&g, h2));
        for &x in dcs.reps() {
            let frame = DoubleCosetFrame::new(&g, &sf, &tf, x);
            for e in frame.entries() {
                // r_j^{-1} r'_i = t · x · t'^{-1}
                let lhs = g.mul(g.inv(sf.rep(e.source)), tf.rep(e.target));
                let rhs = g.mul_all(&[e.t, x, g.inv(e.t_prime)]);
                prop_assert_eq!(lhs, rhs);
                prop_assert!(h.contains(e.t) && h2.contains(e.t_prime));
            }
        }
    }

    #[test]
    fn characters_pair_additively_and_act(a in 0usize..5, b in 0usize..5, e in 0i64..5, x in 0usize..4, y in 0usize..4) {
        let g = FiniteGroup::cyclic(4);
        let m = GModule::from_generators(&g, FinAbGroup::cyclic(5), &[(1, vec![vec![2]])]).unwrap();
        let tg = TwoGroup::split(g.clone(), m);
        let lambda = tg.a().character(&[e]);
        prop_assert_eq!(tg.pair(&lambda, tg.add(a, b)), tg.pair(&lambda, a) + tg.pair(&lambda, b));
        prop_assert_eq!(tg.act_char(0, &lambda), lambda.clone());
        prop_assert_eq!(tg.act_char(x, &tg.act_char(y, &lambda)), tg.act_char(g.mul(x, y), &lambda));
    }

    #[test]
    fn solving_reproduces_coboundary_targets((g, h) in group_and_subgroup(), seed in any::<u64>()) {
        let u = phase_cochain(&h, 1, 12, seed);
        let target = differential(&g, &u, &U1);
        let solved = solve_inhomogeneous(&g, &target, &U1).unwrap().expect("coboundary target is solvable");
        prop_assert!(differential(&g, &solved, &U1).same_values(&target));
        let v = phase_cochain(&h, 2, 6, seed);
        let dd = differential(&g, &differential(&g, &v, &U1), &U1);
        prop_assert!(dd.iter().all(|(_, p)| p.is_zero()));
    }

    #[test]
    fn h2_classes_are_distinct_and_exhaustive((g, h) in group_and_subgroup(), pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let reps = h2_representatives(&g, &h);
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[..i] {
                prop_assert!(coboundary_witness(&g, &a.sub(b), &U1).unwrap().is_none());
            }
        }
        // a representative moved by a random coboundary is cohomologous to it alone
        let k = pick.index(reps.len());
        let f = phase_cochain(&h, 1, 24, seed);
        let w = reps[k].add(&differential(&g, &f, &U1));
        let hits: Vec<usize> = (0..reps.len())
            .filter(|&j| coboundary_witness(&g, &w.sub(&reps[j]), &U1).unwrap().is_some())
            .collect();
        prop_assert_eq!(hits, vec![k]);
    }

    #[test]
    fn covariant_cochain_counts(gi in 0..7usize) {
        let g = groups().swap_remove(gi);
        let whole = Subgroup::whole(&g);
        prop_assert_eq!(covariant_1cochains(&g, &whole).len(), sign_homomorphisms(&g, &whole).len());
        prop_assert_eq!(covariant_1cochains(&g, &Subgroup::trivial(&g)).len(), 1 << (g.order() - 1));
    }

    #[test]
    fn projective_irreducibles_fill_the_twisted_algebra((g, h) in group_and_subgroup(), pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let reps = h2_representatives(&g, &h);
        let w = &reps[pick.index(reps.len())];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let irr = irreducible_projreps(&g, &h, w, &mut rng).unwrap();
        prop_assert_eq!(irr.iter().map(|r| r.dim() * r.dim()).sum::<usize>(), h.order());
        for sign in sign_homomorphisms(&g, &h) {
            for r in &irr {
                if let Some(formed) = attach_invariant_form(r, &sign) {
                    prop_assert!(formed.conjugation_failure(1e-9).is_none());
                    prop_assert!(formed.check(&g, 1e-9).is_ok());
                }
            }
        }
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(z in 0..6usize, flavour in flavours()) {
        let (_, tg) = zoo().swap_remove(z);
        let irr = enumerate_irreducibles(&tg, flavour).unwrap().irreducibles;
        for (i, a) in irr.iter().enumerate() {
            prop_assert!(are_equivalent(&tg, a, a).unwrap().is_some());
            for b in &irr[..i] {
                prop_assert_eq!(are_equivalent(&tg, a, b).unwrap().is_some(), are_equivalent(&tg, b, a).unwrap().is_some());
                prop_assert!(are_equivalent(&tg, a, b).unwrap().is_none());
            }
        }
    }

    #[test]
    fn forgetting_flavour_respects_equivalence(z in 0..6usize) {
        let (_, tg) = zoo().swap_remove(z);
        let pos = enumerate_irreducibles(&tg, Flavour::Positive).unwrap().irreducibles;
        let uni = enumerate_irreducibles(&tg, Flavour::Unitary).unwrap().irreducibles;
        // every positive class lands in exactly one unitary class, and every
        // unitary class has a positive preimage
        let mut hit = vec![false; uni.len()];
        for p in &pos {
            let f = p.forget();
            let found: Vec<usize> = (0..uni.len()).filter(|&k| are_equivalent(&tg, &f, &uni[k]).unwrap().is_some()).collect();
            prop_assert_eq!(found.len(), 1);
            hit[found[0]] = true;
        }
        prop_assert!(hit.iter().all(|&h| h));
        for u in &uni {
            prop_assert_eq!(&u.positive_lift(&tg).forget(), u);
        }
    }

    #[test]
    fn hom_support_matches_direct_scan(z in 0..6usize, flavour in flavours()) {
        let (_, tg) = zoo().swap_remove(z);
        let irr = enumerate_irreducibles(&tg, flavour).unwrap().irreducibles;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for a in &irr {
            for b in &irr {
                let hom = classify(&tg, a, b, &mut rng).unwrap();
                let scan = tg.group().elements().any(|x| {
                    tg.act_char(x, b.character()) == *a.character()
                        && (flavour != Flavour::Positive || positive_filter(&tg, a, b, x))
                });
                prop_assert_eq!(!hom.is_empty(), scan);
            }
        }
    }

    #[test]
    fn transforms_are_involutions(z in 0..6usize, flavour in prop_oneof![Just(Flavour::Unitary), Just(Flavour::Positive)]) {
        let (_, tg) = zoo().swap_remove(z);
        let cat = Catalogue::build(&tg, flavour, DEFAULT_SEED).unwrap();
        for id in cat.morphisms().collect::<Vec<_>>() {
            for mode in [TwistMode::Dual1, TwistMode::Dual2, TwistMode::Adjoint] {
                let Ok(once) = cat.transform(id, mode) else { continue };
                let k = once.multiplicities.iter().position(|&m| m == 1).unwrap();
                prop_assert_eq!(once.multiplicities.iter().sum::<usize>(), 1);
                let back_id = tworep_core::catalogue::MorphismId { source: once.source, target: once.target, index: k };
                let twice = cat.transform(back_id, mode).unwrap();
                prop_assert_eq!((twice.source, twice.target), (id.source, id.target));
                let mut want = vec![0; twice.multiplicities.len()];
                want[id.index] = 1;
                prop_assert_eq!(twice.multiplicities, want);
            }
        }
    }

    #[test]
    fn adjoint_of_an_equivalence_is_its_inverse(z in 0..6usize, flavour in prop_oneof![Just(Flavour::Unitary), Just(Flavour::Positive)]) {
        let (_, tg) = zoo().swap_remove(z);
        let cat = Catalogue::build(&tg, flavour, DEFAULT_SEED).unwrap();
        for id in cat.morphisms().collect::<Vec<_>>() {
            if cat.morphism_label(id) != "1" {
                continue;
            }
            let adj = cat.transform(id, TwistMode::Adjoint).unwrap();
            let k = adj.multiplicities.iter().position(|&m| m == 1).unwrap();
            prop_assert_eq!(cat.morphism_label(tworep_core::catalogue::MorphismId { source: adj.source, target: adj.target, index: k }), "1");
        }
    }

    #[test]
    fn sampled_compositions_agree_with_matrices(z in 0..6usize, flavour in flavours(), pick in any::<prop::sample::Index>()) {
        let (_, tg) = zoo().swap_remove(z);
        let cat = Catalogue::build(&tg, flavour, DEFAULT_SEED).unwrap();
        let pairs = cat.chainable_pairs();
        let (p, q) = pairs[pick.index(pairs.len())];
        prop_assert_eq!(cat.composition_check(p, q).unwrap(), None);
    }
}
