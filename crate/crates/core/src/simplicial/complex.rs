use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;

use crate::algebra::IntegerMatrix;
use crate::error::{Error, Result};

/// A simplex as a strictly increasing list of vertex labels.
pub type Simplex = Vec<usize>;

/// A finite abstract simplicial complex, closed under faces.
///
/// Vertex labels are arbitrary `usize` values ordered as integers. Simplices of
/// each dimension are stored in lexicographic order, which fixes the basis of
/// every cochain group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

fn check_simplex(s: &[usize]) -> Result<Simplex> {
    if s.is_empty() {
        return Err(Error::MalformedComplex("empty simplex".into()));
    }
    let mut v = s.to_vec();
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::MalformedComplex(format!("simplex {s:?} repeats a vertex")));
    }
    Ok(v)
}

impl SimplicialComplex {
    /// Face closure of the given simplices (vertex order within each simplex
    /// is irrelevant; repeated vertices are rejected).
    pub fn from_simplices<S: AsRef<[usize]>>(generators: &[S]) -> Result<Self> {
        let mut sets: Vec<BTreeSet<Simplex>> = Vec::new();
        for g in generators {
            let s = check_simplex(g.as_ref())?;
            let top = s.len() - 1;
            if sets.len() <= top {
                sets.resize_with(top + 1, BTreeSet::new);
            }
            if sets[top].contains(&s) {
                continue;
            }
            // all nonempty subsets
            let n = s.len();
            for mask in 1u64..(1u64 << n) {
                let face: Simplex = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                sets[face.len() - 1].insert(face);
            }
        }
        Ok(Self::from_sets(sets))
    }

    /// Complex on vertices `0..vertices` generated by the given simplices.
    pub fn with_vertices<S: AsRef<[usize]>>(vertices: usize, generators: &[S]) -> Result<Self> {
        for g in generators {
            if let Some(&v) = g.as_ref().iter().find(|&&v| v >= vertices) {
                return Err(Error::MalformedComplex(format!("vertex {v} out of range 0..{vertices}")));
            }
        }
        let mut all: Vec<Vec<usize>> = (0..vertices).map(|v| vec![v]).collect();
        all.extend(generators.iter().map(|g| g.as_ref().to_vec()));
        Self::from_simplices(&all)
    }

    fn from_sets(sets: Vec<BTreeSet<Simplex>>) -> Self {
        let mut simplices: Vec<Vec<Simplex>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        while simplices.last().is_some_and(|l| l.is_empty()) {
            simplices.pop();
        }
        let index = simplices.iter().map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        Self { simplices, index }
    }

    pub fn empty() -> Self {
        Self { simplices: Vec::new(), index: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn simplex(&self, k: usize, i: usize) -> &Simplex {
        &self.simplices[k][i]
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        let k = s.len().checked_sub(1)?;
        self.index.get(k)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices(0).iter().map(|s| s[0]).collect()
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    pub fn total_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    /// Simplices that are not a face of any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (k, level) in self.simplices.iter().enumerate() {
            for s in level {
                let covered = self.simplices.get(k + 1).is_some_and(|up| up.iter().any(|t| s.iter().all(|v| t.binary_search(v).is_ok())));
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.all_simplices().all(|s| other.contains(s))
    }

    /// The subcomplex of simplices satisfying `keep`; `keep` must be closed
    /// under taking faces for the result to be meaningful.
    pub fn filter(&self, mut keep: impl FnMut(&Simplex) -> bool) -> Self {
        let sets = self.simplices.iter().map(|level| level.iter().filter(|s| keep(s)).cloned().collect()).collect();
        Self::from_sets(sets)
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> Self {
        self.filter(|s| other.contains(s))
    }

    /// Relabels vertices by `v ↦ offset + v`.
    pub fn shifted(&self, offset: usize) -> Self {
        let sets = self.simplices.iter().map(|level| level.iter().map(|s| s.iter().map(|v| v + offset).collect()).collect()).collect();
        Self::from_sets(sets)
    }

    /// Disjoint union of complexes; the i-th part has its vertices shifted by
    /// `offsets[i]`, which must keep the parts disjoint.
    pub fn disjoint_union(parts: &[(&SimplicialComplex, usize)]) -> Self {
        let top = parts.iter().map(|(p, _)| p.simplices.len()).max().unwrap_or(0);
        let mut sets: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); top];
        for (p, off) in parts {
            for (k, level) in p.simplices.iter().enumerate() {
                for s in level {
                    sets[k].insert(s.iter().map(|v| v + off).collect());
                }
            }
        }
        Self::from_sets(sets)
    }

    /// Largest vertex label plus one.
    pub fn label_bound(&self) -> usize {
        self.simplices(0).last().map_or(0, |s| s[0] + 1)
    }

    /// Matrix of the coboundary `C^k → C^{k+1}`, with
    /// `(dx)(σ) = Σ_i (−1)^i x(σ without its i-th vertex)`.
    pub fn coboundary_matrix(&self, k: usize) -> IntegerMatrix {
        let rows = self.count(k + 1);
        let cols = self.count(k);
        let mut m = IntegerMatrix::zeros(rows, cols);
        for (r, s) in self.simplices(k + 1).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let c = self.index_of(&face).expect("face closure");
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.set(r, c, BigInt::from(sign));
            }
        }
        m
    }

    /// Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_a_triangle() {
        let x = SimplicialComplex::from_simplices(&[[2, 0, 1]]).unwrap();
        assert_eq!(x.count(0), 3);
        assert_eq!(x.count(1), 3);
        assert_eq!(x.count(2), 1);
        assert_eq!(x.simplices(1), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(x.maximal_simplices(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn repeated_vertex_rejected() {
        assert!(matches!(SimplicialComplex::from_simplices(&[[1, 1]]), Err(Error::MalformedComplex(_))));
    }

    #[test]
    fn coboundary_squares_to_zero_on_a_tetrahedron() {
        let x = SimplicialComplex::from_simplices(&[[0, 1, 2, 3]]).unwrap();
        for k in 0..3 {
            let dd = x.coboundary_matrix(k + 1).mul(&x.coboundary_matrix(k)).unwrap();
            assert!(dd.is_zero());
        }
        assert_eq!(x.euler_characteristic(), 1);
    }

    #[test]
    fn disjoint_union_and_intersection() {
        let a = SimplicialComplex::from_simplices(&[[0, 1], [1, 2]]).unwrap();
        let b = SimplicialComplex::from_simplices(&[[1, 2], [2, 3]]).unwrap();
        let i = a.intersection(&b);
        assert_eq!(i.maximal_simplices(), vec![vec![1, 2]]);
        let u = SimplicialComplex::disjoint_union(&[(&a, 0), (&b, 10)]);
        assert_eq!(u.count(0), 6);
        assert!(u.contains(&[12, 13]));
    }
}
