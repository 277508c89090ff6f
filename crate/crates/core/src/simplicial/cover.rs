use std::sync::Arc;

use super::complex::{Simplex, SimplicialComplex};
use super::map::SimplicialMap;
use crate::error::{Error, Result};

/// A cover of a complex by subcomplexes, with the choice function
/// `λ(σ) = ` the first member containing `σ`.
#[derive(Clone, Debug)]
pub struct Cover {
    base: Arc<SimplicialComplex>,
    members: Vec<Arc<SimplicialComplex>>,
    /// `choice[k][i]` is `λ` of the i-th k-simplex
    choice: Vec<Vec<usize>>,
}

impl Cover {
    pub fn new(base: Arc<SimplicialComplex>, members: Vec<SimplicialComplex>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidCover("a cover needs at least one member".into()));
        }
        for (a, m) in members.iter().enumerate() {
            if !m.is_subcomplex_of(&base) {
                let bad = m.all_simplices().find(|s| !base.contains(s)).cloned().unwrap_or_default();
                return Err(Error::InvalidCover(format!("member {a} contains {bad:?}, which is not in the base")));
            }
        }
        let mut choice = Vec::new();
        for k in 0..=base.dim().unwrap_or(0) {
            let mut level = Vec::with_capacity(base.count(k));
            for s in base.simplices(k) {
                match members.iter().position(|m| m.contains(s)) {
                    Some(a) => level.push(a),
                    None => return Err(Error::InvalidCover(format!("simplex {s:?} is not covered"))),
                }
            }
            choice.push(level);
        }
        Ok(Self { base, members: members.into_iter().map(Arc::new).collect(), choice })
    }

    /// Closed stars of the vertices, in vertex order.
    pub fn star_cover(base: Arc<SimplicialComplex>) -> Result<Self> {
        let maximal = base.maximal_simplices();
        let members = base
            .vertices()
            .into_iter()
            .map(|v| {
                let gens: Vec<&Simplex> = maximal.iter().filter(|s| s.contains(&v)).collect();
                SimplicialComplex::from_simplices(&gens)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, members)
    }

    /// Closures of the maximal simplices, in lexicographic order.
    pub fn facet_cover(base: Arc<SimplicialComplex>) -> Result<Self> {
        let mut maximal = base.maximal_simplices();
        maximal.sort();
        let members = maximal.iter().map(|s| SimplicialComplex::from_simplices(&[s])).collect::<Result<Vec<_>>>()?;
        Self::new(base, members)
    }

    /// Two members: the closures of the first and second half of the maximal
    /// simplices in lexicographic order.
    pub fn two_set_cover(base: Arc<SimplicialComplex>) -> Result<Self> {
        let mut maximal = base.maximal_simplices();
        maximal.sort();
        if maximal.len() < 2 {
            return Self::new(base.clone(), vec![(*base).clone()]);
        }
        let half = maximal.len().div_ceil(2);
        let members = vec![SimplicialComplex::from_simplices(&maximal[..half])?, SimplicialComplex::from_simplices(&maximal[half..])?];
        Self::new(base, members)
    }

    /// The preimage cover `{f^{-1}(U_α)}` of the source of `f`.
    pub fn pullback(&self, f: &SimplicialMap) -> Result<Self> {
        if **f.target() != *self.base {
            return Err(Error::InvalidCover("map does not land in the covered complex".into()));
        }
        let members = self.members.iter().map(|u| f.source().filter(|s| u.contains(&f.image_set(s)))).collect();
        Self::new(f.source().clone(), members)
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    pub fn members(&self) -> &[Arc<SimplicialComplex>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `λ(σ)`.
    pub fn choice(&self, s: &[usize]) -> Option<usize> {
        let k = s.len().checked_sub(1)?;
        Some(self.choice.get(k)?[self.base.index_of(s)?])
    }

    /// `U_{α_0} ∩ … ∩ U_{α_q}`.
    pub fn intersection(&self, indices: &[usize]) -> SimplicialComplex {
        let mut it = indices.iter();
        let first = it.next().expect("nonempty index tuple");
        let mut acc = (*self.members[*first]).clone();
        for &a in it {
            acc = acc.intersection(&self.members[a]);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn stars_of_the_circle() {
        let x = Arc::new(fixtures::circle());
        let c = Cover::star_cover(x).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.members()[0].maximal_simplices(), vec![vec![0, 1], vec![0, 2]]);
        assert_eq!(c.choice(&[1, 2]), Some(1));
    }

    #[test]
    fn uncovered_simplex_is_named() {
        let x = Arc::new(fixtures::circle());
        let a = SimplicialComplex::from_simplices(&[[0, 1], [1, 2]]).unwrap();
        let err = Cover::new(x, vec![a]).unwrap_err();
        assert_eq!(err, Error::InvalidCover("simplex [0, 2] is not covered".into()));
    }

    #[test]
    fn facet_cover_of_the_three_sphere() {
        let x = Arc::new(fixtures::boundary_4simplex());
        let c = Cover::facet_cover(x).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(c.intersection(&[0, 1, 2, 3]).count(0), 1);
        assert!(c.intersection(&[0, 1, 2, 3, 4]).is_empty());
    }
}
