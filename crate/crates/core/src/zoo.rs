//! A fixed list of small 2-groups used by the coherence checks.

use crate::abelian::{FinAbGroup, GModule};
use crate::cochain::Cochain;
use crate::group::{FiniteGroup, Subgroup};
use crate::two_group::TwoGroup;

/// `(Z_2, Z_2, trivial action, α)` with `α(g, g, g)` the generator.
pub fn z2_with_alpha() -> TwoGroup {
    let g = FiniteGroup::cyclic(2);
    let m = GModule::trivial(&g, FinAbGroup::cyclic(2));
    let alpha = Cochain::from_fn(&Subgroup::whole(&g), 3, 0, |t| usize::from(t == [1, 1, 1]));
    TwoGroup::new(g, m, alpha).expect("generator of H^3(Z_2, Z_2) is a cocycle")
}

/// `(Z_2, Z_3)` with the generator acting by inversion and `α` trivial.
pub fn z2_on_z3() -> TwoGroup {
    let g = FiniteGroup::cyclic(2);
    let m = GModule::from_generators(&g, FinAbGroup::cyclic(3), &[(1, vec![vec![-1]])]).expect("inversion is an action");
    TwoGroup::split(g, m)
}

/// Named members: four ordinary groups, one 2-group with nontrivial
/// Postnikov class and one with a nontrivial action on `A`.
pub fn zoo() -> Vec<(&'static str, TwoGroup)> {
    vec![
        ("Z2", TwoGroup::from_group(FiniteGroup::cyclic(2))),
        ("Z4", TwoGroup::from_group(FiniteGroup::cyclic(4))),
        ("Z2xZ2", TwoGroup::from_group(FiniteGroup::klein())),
        ("S3", TwoGroup::from_group(FiniteGroup::symmetric(3))),
        ("Z2[alpha]", z2_with_alpha()),
        ("Z2|Z3", z2_on_z3()),
    ]
}
