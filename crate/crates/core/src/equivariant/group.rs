use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

/// A finite group given by its multiplication table, `table[g][h] = g·h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidAction("multiplication table must be square with entries in range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidAction("no identity element".into()))?;
        for g in 0..n {
            if !(0..n).any(|h| table[g][h] == identity) {
                return Err(Error::InvalidAction(format!("element {g} has no inverse")));
            }
            for h in 0..n {
                for k in 0..n {
                    if table[table[g][h]][k] != table[g][table[h][k]] {
                        return Err(Error::InvalidAction(format!("not associative at ({g}, {h}, {k})")));
                    }
                }
            }
        }
        Ok(Self { table, identity })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
        Self::from_table(table).expect("cyclic group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// A left action of a finite group on a complex by simplicial automorphisms,
/// given by one vertex permutation per group element.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: FiniteGroup,
    complex: Arc<SimplicialComplex>,
    /// `perms[g][v]` for every vertex label `v`
    perms: Vec<Vec<usize>>,
}

impl GroupAction {
    /// `perms[g]` lists the images of the vertices of `complex` in vertex order.
    pub fn new(group: FiniteGroup, complex: SimplicialComplex, perms: Vec<Vec<usize>>) -> Result<Self> {
        if perms.len() != group.order() {
            return Err(Error::InvalidAction(format!("{} permutations for a group of order {}", perms.len(), group.order())));
        }
        let verts = complex.vertices();
        let bound = complex.label_bound();
        let mut full = Vec::with_capacity(perms.len());
        for (g, p) in perms.iter().enumerate() {
            if p.len() != verts.len() {
                return Err(Error::InvalidAction(format!("permutation {g} has {} entries for {} vertices", p.len(), verts.len())));
            }
            let mut m = vec![usize::MAX; bound];
            for (&v, &w) in verts.iter().zip(p) {
                m[v] = w;
            }
            let mut img = p.clone();
            img.sort_unstable();
            if img != verts {
                return Err(Error::InvalidAction(format!("element {g} does not permute the vertices")));
            }
            for s in complex.all_simplices() {
                let mut t: Vec<usize> = s.iter().map(|&v| m[v]).collect();
                t.sort_unstable();
                if !complex.contains(&t) {
                    return Err(Error::InvalidAction(format!("element {g} sends {s:?} to the non-simplex {t:?}")));
                }
            }
            full.push(m);
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                if let Some(&v) = verts.iter().find(|&&v| full[gh][v] != full[g][full[h][v]]) {
                    return Err(Error::InvalidAction(format!("not a homomorphism: ({g}·{h}) and {g}∘{h} differ at vertex {v}")));
                }
            }
        }
        if let Some(&v) = verts.iter().find(|&&v| full[group.identity()][v] != v) {
            return Err(Error::InvalidAction(format!("identity moves vertex {v}")));
        }
        Ok(Self { group, complex: Arc::new(complex), perms: full })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    /// `g · v`.
    pub fn act(&self, g: usize, v: usize) -> usize {
        self.perms[g][v]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn non_associative_table_rejected() {
        let t = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 2, 0]];
        assert!(FiniteGroup::from_table(t).is_err());
    }

    #[test]
    fn non_simplicial_action_rejected() {
        // swapping 0 and 1 on a path 0-1-2 sends [1,2] to [0,2]
        let x = SimplicialComplex::from_simplices(&[[0, 1], [1, 2]]).unwrap();
        let err = GroupAction::new(FiniteGroup::cyclic(2), x, vec![vec![0, 1, 2], vec![1, 0, 2]]).unwrap_err();
        assert!(matches!(err, Error::InvalidAction(_)));
    }

    #[test]
    fn antipodal_map_is_an_action() {
        let a = fixtures::antipodal_action();
        assert_eq!(a.act(1, 3), 9);
    }
}
