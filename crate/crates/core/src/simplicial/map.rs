use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::cochain::Cochain;
use super::complex::{Simplex, SimplicialComplex};
use crate::algebra::IntegerMatrix;
use crate::error::{Error, Result};

const UNMAPPED: usize = usize::MAX;

/// A vertex map between complexes sending simplices to simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    /// indexed by source vertex label
    vertex_map: Vec<usize>,
}

/// Sign of the permutation sorting `v` (which must have distinct entries).
pub(crate) fn sort_sign(v: &mut [usize]) -> i32 {
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

impl SimplicialMap {
    /// `vertex_map` lists `(source vertex, target vertex)` pairs; every source
    /// vertex must be mapped.
    pub fn new(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut vertex_map = vec![UNMAPPED; source.label_bound()];
        for (a, b) in pairs {
            if !source.contains(&[a]) {
                return Err(Error::NotSimplicial(format!("{a} is not a source vertex")));
            }
            vertex_map[a] = b;
        }
        if let Some(v) = source.vertices().into_iter().find(|&v| vertex_map[v] == UNMAPPED) {
            return Err(Error::NotSimplicial(format!("source vertex {v} is not mapped")));
        }
        let map = Self { source, target, vertex_map };
        for s in map.source.all_simplices() {
            let mut img: Vec<usize> = s.iter().map(|&v| map.vertex_map[v]).collect();
            img.sort_unstable();
            img.dedup();
            if !map.target.contains(&img) {
                return Err(Error::NotSimplicial(format!("image {img:?} of {s:?} is not a simplex")));
            }
        }
        Ok(map)
    }

    pub fn from_fn(source: Arc<SimplicialComplex>, target: Arc<SimplicialComplex>, f: impl Fn(usize) -> usize) -> Result<Self> {
        let pairs: Vec<_> = source.vertices().into_iter().map(|v| (v, f(v))).collect();
        Self::new(source, target, pairs)
    }

    pub fn identity(x: Arc<SimplicialComplex>) -> Self {
        let vertex_map = (0..x.label_bound()).collect();
        Self { source: x.clone(), target: x, vertex_map }
    }

    pub fn inclusion(sub: Arc<SimplicialComplex>, ambient: Arc<SimplicialComplex>) -> Result<Self> {
        if !sub.is_subcomplex_of(&ambient) {
            return Err(Error::NotSimplicial("not a subcomplex".into()));
        }
        let vertex_map = (0..sub.label_bound()).collect();
        Ok(Self { source: sub, target: ambient, vertex_map })
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    /// Image of a simplex as a sorted vertex set (possibly of lower dimension).
    pub fn image_set(&self, s: &[usize]) -> Simplex {
        let mut img: Vec<usize> = s.iter().map(|&v| self.vertex_map[v]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Nondegenerate image of a simplex with the orientation sign, or `None`
    /// if two vertices collapse.
    pub fn oriented_image(&self, s: &[usize]) -> Option<(Simplex, i32)> {
        let mut img: Vec<usize> = s.iter().map(|&v| self.vertex_map[v]).collect();
        let sign = sort_sign(&mut img);
        if img.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((img, sign))
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SimplicialMap) -> Result<Self> {
        if *self.target != *g.source {
            return Err(Error::NotSimplicial("maps are not composable".into()));
        }
        let vertex_map = self.vertex_map.iter().map(|&v| if v == UNMAPPED { UNMAPPED } else { g.vertex_map[v] }).collect();
        Ok(Self { source: self.source.clone(), target: g.target.clone(), vertex_map })
    }

    /// Matrix of `f^*: C^k(target) → C^k(source)`.
    ///
    /// A simplex whose image is degenerate pulls back to zero; otherwise the
    /// value picks up the sign of the permutation that sorts the image, so that
    /// pullback commutes with the coboundary also for order-reversing maps.
    pub fn pullback_matrix(&self, k: usize) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.source.count(k), self.target.count(k));
        for (r, s) in self.source.simplices(k).iter().enumerate() {
            if let Some((img, sign)) = self.oriented_image(s) {
                let c = self.target.index_of(&img).expect("validated map");
                m.set(r, c, BigInt::from(sign));
            }
        }
        m
    }
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        *self.source == *other.source
            && *self.target == *other.target
            && self.source.vertices().iter().all(|&v| self.vertex_map[v] == other.vertex_map[v])
    }
}

/// `(f^*x)(σ) = ±x(f(σ))` for nondegenerate images, else 0.
pub fn pullback_cochain(f: &SimplicialMap, x: &Cochain) -> Result<Cochain> {
    let k = x.degree();
    if x.values().len() != f.target.count(k) {
        return Err(Error::DimensionMismatch("cochain does not live on the map's target".into()));
    }
    let values = f
        .source
        .simplices(k)
        .iter()
        .map(|s| match f.oriented_image(s) {
            Some((img, sign)) => {
                let v = x.values()[f.target.index_of(&img).expect("validated map")].clone();
                if sign < 0 {
                    -v
                } else {
                    v
                }
            }
            None => BigRational::zero(),
        })
        .collect();
    Ok(Cochain::from_raw(x.kind(), k, values))
}
