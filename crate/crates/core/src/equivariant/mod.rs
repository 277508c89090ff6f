//! Finite simplicial groupoids, the double complexes `A^p(Γ_q)` of their
//! nerves, total complexes and equivariant classification.

mod group;
mod groupoid;
mod total;

use num_rational::BigRational;

pub use group::{FiniteGroup, GroupAction};
pub use groupoid::{nerve_level, ActionGroupoid, CechGroupoid, SimplicialGroupoid};
pub use total::{TotalCochain, TotalComplex};

use crate::algebra::{solve_rational_system, FgAbelianGroup, MixedVector};
use crate::error::{Error, Result};
use crate::simplicial::{Presheaf, SimplicialObject};

/// The integer total complex of a groupoid nerve, with enough levels for
/// `H^k`.
pub fn integer_total_complex(gpd: &dyn SimplicialGroupoid, k: usize) -> Result<TotalComplex> {
    Ok(TotalComplex::new(gpd.nerve(k + 1)?, Presheaf::Integer, k + 1))
}

/// `H^k(Γ_•; ℤ)`.
pub fn equivariant_cohomology(gpd: &dyn SimplicialGroupoid, k: usize) -> Result<FgAbelianGroup> {
    Ok(integer_total_complex(gpd, k)?.integer_cohomology(k)?.group().clone())
}

/// The integer total complex matching a total complex with `DC_s` (or integer)
/// coefficients.
pub fn integer_shadow(total: &TotalComplex) -> TotalComplex {
    TotalComplex::new(total.object().clone(), Presheaf::Integer, total.n_max())
}

/// Integer parts of a `DC_s` total cochain (the `c` slots).
pub fn integer_part(x: &TotalCochain) -> TotalCochain {
    TotalCochain { degree: x.degree, parts: x.parts.iter().map(|p| MixedVector::new(p.ints.clone(), Vec::new())).collect() }
}

/// Class of the integer part of `x` in `H^n(Γ_•; ℤ)`.
///
/// `integers` must be the integer shadow of `total`.
pub fn equivariant_char_class(total: &TotalComplex, integers: &TotalComplex, x: &TotalCochain) -> Result<Vec<num_bigint::BigInt>> {
    if !matches!(total.presheaf(), Presheaf::Diff { .. }) {
        return Err(Error::InvalidComplex("characteristic classes need differential cochain coefficients".into()));
    }
    if !total.is_cocycle(x)? {
        return Err(Error::NotACocycle("total cochain is not δ-closed".into()));
    }
    let c = integers.flatten(&integer_part(x));
    integers.integer_cohomology(x.degree)?.class_of(&c.ints)
}

/// A `DC_s` total cocycle whose integer part is the given integer total
/// cocycle: the rational parts solve the remaining linear conditions.
pub fn lift_total_cocycle(total: &TotalComplex, c: &TotalCochain) -> Result<TotalCochain> {
    let n = c.degree;
    let delta = total.differential(n)?;
    let ints = MixedVector::concat(&c.parts).ints;
    if !delta.int_block().mul_vec(&ints)?.iter().all(num_traits::Zero::is_zero) {
        return Err(Error::NotACocycle("integer total cochain is not closed".into()));
    }
    let from_ints = delta.int_to_rat_block().mul_vec(&crate::algebra::to_rational_vec(&ints))?;
    let rhs: Vec<BigRational> = from_ints.into_iter().map(|v| -v).collect();
    let rats = solve_rational_system(delta.rat_block(), &rhs)?.ok_or_else(|| Error::NoCanonicalLift {
        degree: n,
        height: match total.presheaf() {
            Presheaf::Diff { s } => s,
            _ => 0,
        },
    })?;
    Ok(total.unflatten(n, &MixedVector::new(ints, rats)))
}

/// Equivariant data in the format of local objects with gluing arrows:
/// `a ∈ A^n(Γ_0)`, `e ∈ A^{n−1}(Γ_1)`, `t ∈ A^{n−2}(Γ_2)` and so on, without
/// the top component, subject to
/// `da = 0`, `de = ∂_0a − ∂_1a`, `dt = ∂_1e − ∂_0e − ∂_2e` and `∂t ∈ im d`
/// (in degree 3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantTriple {
    pub degree: usize,
    pub components: Vec<MixedVector>,
}

impl EquivariantTriple {
    /// The unique total cocycle extending the data; `Err(q)` names the
    /// lowest failing condition.
    pub fn to_total(&self, total: &TotalComplex) -> Result<std::result::Result<TotalCochain, usize>> {
        total.complete_truncated(self.degree, &self.components)
    }

    pub fn from_total(x: &TotalCochain) -> Self {
        let keep = x.degree.min(x.parts.len());
        Self { degree: x.degree, components: x.parts[..keep].to_vec() }
    }
}

/// The nerve of the trivial groupoid on the base complex of an object.
pub fn constant_object(x: std::sync::Arc<crate::simplicial::SimplicialComplex>, q_max: usize) -> Result<SimplicialObject> {
    let action = GroupAction::new(FiniteGroup::trivial(), (*x).clone(), vec![x.vertices()])?;
    ActionGroupoid::new(action).nerve(q_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cohomology_group, IntegerMatrix};
    use crate::fixtures;
    use std::sync::Arc;

    fn pt(n: usize) -> ActionGroupoid {
        ActionGroupoid::new(fixtures::trivial_action(n, fixtures::point()))
    }

    #[test]
    fn cyclic_group_cohomology_of_a_point() {
        let g = pt(2);
        assert_eq!(equivariant_cohomology(&g, 0).unwrap(), FgAbelianGroup::free(1));
        assert!(equivariant_cohomology(&g, 1).unwrap().is_trivial());
        assert_eq!(equivariant_cohomology(&g, 2).unwrap(), FgAbelianGroup::cyclic(2));
        assert!(equivariant_cohomology(&g, 3).unwrap().is_trivial());
        assert_eq!(equivariant_cohomology(&g, 4).unwrap(), FgAbelianGroup::cyclic(2));
    }

    #[test]
    fn trivial_group_matches_the_base() {
        let x = fixtures::rp2();
        let obj = constant_object(Arc::new(x.clone()), 3).unwrap();
        let total = TotalComplex::new(obj, Presheaf::Integer, 3);
        for k in 0..=2 {
            let plain = cohomology_group(
                &if k == 0 { IntegerMatrix::zeros(x.count(0), 0) } else { x.coboundary_matrix(k - 1) },
                &x.coboundary_matrix(k),
            )
            .unwrap();
            assert_eq!(total.integer_cohomology(k).unwrap().group(), &plain, "k={k}");
        }
    }

    #[test]
    fn delta_squares_to_zero() {
        let obj = ActionGroupoid::new(fixtures::trivial_action(3, fixtures::circle())).nerve(3).unwrap();
        for f in [Presheaf::Integer, Presheaf::Diff { s: 1 }, Presheaf::Diff { s: 3 }] {
            let total = TotalComplex::new(obj.clone(), f, 3);
            for n in 0..2 {
                let dd = total.differential(n + 1).unwrap().compose(total.differential(n).unwrap()).unwrap();
                assert!(dd.is_zero(), "{f:?} n={n}");
            }
        }
    }

    #[test]
    fn triple_round_trip() {
        let obj = ActionGroupoid::new(fixtures::trivial_action(2, fixtures::circle())).nerve(4).unwrap();
        let total = TotalComplex::new(obj, Presheaf::Diff { s: 1 }, 4);
        let ints = integer_shadow(&total);
        let h = ints.integer_cohomology(3).unwrap();
        let c = ints.unflatten(3, &MixedVector::new(h.generator(0), Vec::new()));
        let x = lift_total_cocycle(&total, &c).unwrap();
        let triple = EquivariantTriple::from_total(&x);
        assert_eq!(triple.components.len(), 3);
        assert_eq!(triple.to_total(&total).unwrap().unwrap(), x);
    }
}
