use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::complex::SimplicialComplex;
use super::cover::Cover;
use super::map::SimplicialMap;
use super::presheaf::Presheaf;
use crate::algebra::{IntegerMatrix, MixedMap};
use crate::error::{Error, Result};

/// Levels `Γ_0, …, Γ_{q_max}` with face maps `∂_i: Γ_q → Γ_{q−1}`,
/// `0 ≤ i ≤ q`. Degeneracies are not needed anywhere and are not stored.
#[derive(Clone, Debug)]
pub struct SimplicialObject {
    levels: Vec<Arc<SimplicialComplex>>,
    /// `faces[q][i]`; `faces[0]` is empty
    faces: Vec<Vec<SimplicialMap>>,
    /// true when every level above `top` is empty
    exhausted: bool,
}

impl SimplicialObject {
    /// Checks the face counts and the identities `∂_i∂_j = ∂_{j−1}∂_i`, `i < j`.
    pub fn new(levels: Vec<Arc<SimplicialComplex>>, faces: Vec<Vec<SimplicialMap>>) -> Result<Self> {
        if levels.len() != faces.len() {
            return Err(Error::DimensionMismatch("one list of face maps per level expected".into()));
        }
        for (q, f) in faces.iter().enumerate() {
            let want = if q == 0 { 0 } else { q + 1 };
            if f.len() != want {
                return Err(Error::DimensionMismatch(format!("level {q} has {} face maps, expected {want}", f.len())));
            }
        }
        let obj = Self { levels, faces, exhausted: false };
        obj.check_identities()?;
        Ok(obj)
    }

    pub fn check_identities(&self) -> Result<()> {
        for q in 2..self.levels.len() {
            for v in self.levels[q].vertices() {
                for j in 0..=q {
                    for i in 0..j {
                        let lhs = self.faces[q - 1][i].vertex(self.faces[q][j].vertex(v));
                        let rhs = self.faces[q - 1][j - 1].vertex(self.faces[q][i].vertex(v));
                        if lhs != rhs {
                            return Err(Error::InvalidComplex(format!("face identity fails for i={i}, j={j} at level {q}, vertex {v}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Declares that all levels above the stored ones are empty.
    pub fn exhausted(mut self) -> Self {
        self.exhausted = true;
        self
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    /// Whether level q is known: stored, or implied empty.
    pub fn has_level(&self, q: usize) -> bool {
        q <= self.top() || self.exhausted
    }

    /// Highest stored level.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, q: usize) -> Option<&Arc<SimplicialComplex>> {
        self.levels.get(q)
    }

    pub fn face(&self, q: usize, i: usize) -> &SimplicialMap {
        &self.faces[q][i]
    }

    /// `Σ_i (−1)^i ∂_i^*: C^k(Γ_q) → C^k(Γ_{q+1})`.
    pub fn coface_matrix(&self, q: usize, k: usize) -> IntegerMatrix {
        let src = &self.levels[q];
        let dst = &self.levels[q + 1];
        let mut m = IntegerMatrix::zeros(dst.count(k), src.count(k));
        for (i, f) in self.faces[q + 1].iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for (r, s) in dst.simplices(k).iter().enumerate() {
                if let Some((img, o)) = f.oriented_image(s) {
                    let c = src.index_of(&img).expect("face map image");
                    *m.get_mut(r, c) += BigInt::from(sign * o);
                }
            }
        }
        m
    }

    /// `∂ = Σ_i (−1)^i ∂_i^*: A^p(Γ_q) → A^p(Γ_{q+1})`.
    pub fn coface(&self, presheaf: Presheaf, q: usize, p: usize) -> MixedMap {
        presheaf.slotwise(&self.levels[q], &self.levels[q + 1], p, |k| self.coface_matrix(q, k))
    }
}

/// Čech levels of a cover: level q is the disjoint union of the nonempty
/// intersections `U_{α_0…α_q}`.
///
/// With `strict` the index tuples are strictly increasing (the alternating
/// Čech complex); otherwise all ordered tuples are used, which gives the nerve
/// of the Čech groupoid. In level q the piece with index j has its vertices
/// shifted by `j · stride`, where `stride` bounds the base labels.
#[derive(Clone, Debug)]
pub struct CechLevels {
    cover: Cover,
    strict: bool,
    stride: usize,
    tuples: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
    pieces: Vec<Vec<Arc<SimplicialComplex>>>,
    object: SimplicialObject,
    augmentation: SimplicialMap,
}

/// Strictly increasing Čech levels up to `q_max` (fewer if they run empty).
pub fn build_cech_levels(cover: &Cover, q_max: usize) -> Result<CechLevels> {
    CechLevels::build(cover, q_max, true)
}

impl CechLevels {
    pub fn build(cover: &Cover, q_max: usize, strict: bool) -> Result<Self> {
        if cover.is_empty() {
            return Err(Error::InvalidCover("empty cover".into()));
        }
        let base = cover.base().clone();
        let stride = base.label_bound().max(1);
        let n = cover.len();
        let mut tuples: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|a| vec![a]).collect()];
        let mut pieces: Vec<Vec<Arc<SimplicialComplex>>> = vec![cover.members().to_vec()];
        let mut exhausted = false;
        while tuples.len() <= q_max {
            let prev_t = tuples.last().unwrap();
            let prev_p = pieces.last().unwrap();
            let mut next_t = Vec::new();
            let mut next_p = Vec::new();
            for (t, p) in prev_t.iter().zip(prev_p) {
                let start = if strict { t.last().unwrap() + 1 } else { 0 };
                for b in start..n {
                    let inter = p.intersection(&cover.members()[b]);
                    if !inter.is_empty() {
                        let mut nt = t.clone();
                        nt.push(b);
                        next_t.push(nt);
                        next_p.push(Arc::new(inter));
                    }
                }
            }
            if next_t.is_empty() {
                exhausted = true;
                break;
            }
            tuples.push(next_t);
            pieces.push(next_p);
        }
        let lookup: Vec<HashMap<Vec<usize>, usize>> =
            tuples.iter().map(|l| l.iter().enumerate().map(|(j, t)| (t.clone(), j)).collect()).collect();
        let levels: Vec<Arc<SimplicialComplex>> = pieces
            .iter()
            .map(|ps| {
                let parts: Vec<(&SimplicialComplex, usize)> = ps.iter().enumerate().map(|(j, p)| (p.as_ref(), j * stride)).collect();
                Arc::new(SimplicialComplex::disjoint_union(&parts))
            })
            .collect();
        let mut faces = vec![Vec::new()];
        for q in 1..levels.len() {
            let mut fq = Vec::with_capacity(q + 1);
            for i in 0..=q {
                let f = SimplicialMap::from_fn(levels[q].clone(), levels[q - 1].clone(), |v| {
                    let (j, x) = (v / stride, v % stride);
                    let mut t = tuples[q][j].clone();
                    t.remove(i);
                    lookup[q - 1][&t] * stride + x
                })?;
                fq.push(f);
            }
            faces.push(fq);
        }
        let augmentation = SimplicialMap::from_fn(levels[0].clone(), base, |v| v % stride)?;
        let mut object = SimplicialObject::new(levels, faces)?;
        if exhausted {
            object = object.exhausted();
        }
        Ok(Self { cover: cover.clone(), strict, stride, tuples, lookup, pieces, object, augmentation })
    }

    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        self.cover.base()
    }

    pub fn object(&self) -> &SimplicialObject {
        &self.object
    }

    pub fn top(&self) -> usize {
        self.object.top()
    }

    pub fn level(&self, q: usize) -> Option<&Arc<SimplicialComplex>> {
        self.object.level(q)
    }

    pub fn tuples(&self, q: usize) -> &[Vec<usize>] {
        self.tuples.get(q).map_or(&[], |t| t.as_slice())
    }

    pub fn piece_index(&self, q: usize, tuple: &[usize]) -> Option<usize> {
        self.lookup.get(q)?.get(tuple).copied()
    }

    /// The intersection belonging to piece j of level q, with base labels.
    pub fn piece(&self, q: usize, j: usize) -> &Arc<SimplicialComplex> {
        &self.pieces[q][j]
    }

    /// `U_{α_0…α_q} → Γ_q`.
    pub fn piece_inclusion(&self, q: usize, j: usize) -> SimplicialMap {
        let off = j * self.stride;
        SimplicialMap::from_fn(self.pieces[q][j].clone(), self.object.levels[q].clone(), |v| v + off).expect("piece embeds in its level")
    }

    /// `π: Γ_0 → X`.
    pub fn augmentation(&self) -> &SimplicialMap {
        &self.augmentation
    }

    /// Splits a level-q simplex into (piece index, base simplex).
    pub fn decode(&self, s: &[usize]) -> (usize, Vec<usize>) {
        let j = s[0] / self.stride;
        (j, s.iter().map(|v| v % self.stride).collect())
    }

    /// Matrix of the contraction `h: C^k(level q) → C^k(level q−1)`, where
    /// level −1 is the base (`q = 0`).
    ///
    /// `(hx)_{α_0…α_{q−1}}(σ) = x_{λ(σ) α_0 … α_{q−1}}(σ)`, reading `x` as an
    /// alternating function of its index tuple.
    pub fn contraction_matrix(&self, q: usize, k: usize) -> Result<IntegerMatrix> {
        if !self.strict {
            return Err(Error::InvalidCover("the contraction needs strictly increasing index tuples".into()));
        }
        let src = &self.object.levels[q];
        let dst: &SimplicialComplex = if q == 0 { self.cover.base() } else { &self.object.levels[q - 1] };
        let mut m = IntegerMatrix::zeros(dst.count(k), src.count(k));
        for (r, s) in dst.simplices(k).iter().enumerate() {
            let (tuple, sigma): (&[usize], Vec<usize>) = if q == 0 {
                (&[], s.clone())
            } else {
                let (j, sigma) = self.decode(s);
                (&self.tuples[q - 1][j], sigma)
            };
            let lambda = self.cover.choice(&sigma).expect("covered simplex");
            if tuple.contains(&lambda) {
                continue;
            }
            let pos = tuple.partition_point(|&a| a < lambda);
            let mut t = tuple.to_vec();
            t.insert(pos, lambda);
            let j = self.lookup[q][&t];
            let shifted: Vec<usize> = sigma.iter().map(|v| v + j * self.stride).collect();
            let c = src.index_of(&shifted).expect("σ lies in the intersection");
            m.set(r, c, BigInt::from(if pos % 2 == 0 { 1 } else { -1 }));
        }
        Ok(m)
    }

    /// The contraction on `A^p`, slot by slot.
    pub fn contraction(&self, presheaf: Presheaf, q: usize, p: usize) -> Result<MixedMap> {
        let src = &self.object.levels[q];
        let dst: &SimplicialComplex = if q == 0 { self.cover.base() } else { &self.object.levels[q - 1] };
        let mats = (0..=p).map(|k| self.contraction_matrix(q, k)).collect::<Result<Vec<_>>>()?;
        Ok(presheaf.slotwise(src, dst, p, |k| mats[k].clone()))
    }

    /// The augmented Čech differential into level q: `π^*` for `q = 0`,
    /// otherwise the alternating sum of face pullbacks.
    pub fn augmented_coface(&self, presheaf: Presheaf, q: usize, p: usize) -> MixedMap {
        if q == 0 {
            presheaf.pullback(&self.augmentation, p)
        } else {
            self.object.coface(presheaf, q - 1, p)
        }
    }
}

/// `h` on one row: see [`CechLevels::contraction`].
pub fn cech_contraction(levels: &CechLevels, presheaf: Presheaf, q: usize, p: usize) -> Result<MixedMap> {
    levels.contraction(presheaf, q, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MixedModule;
    use crate::fixtures;

    #[test]
    fn star_cover_of_the_circle() {
        let cover = Cover::star_cover(Arc::new(fixtures::circle())).unwrap();
        let l = build_cech_levels(&cover, 5).unwrap();
        assert_eq!(l.top(), 2);
        assert_eq!(l.tuples(1).len(), 3);
        assert_eq!(l.tuples(2), &[vec![0, 1, 2]]);
        assert_eq!(l.piece(2, 0).vertices(), vec![0, 1, 2]);
        assert_eq!(l.piece(2, 0).count(1), 0);
    }

    #[test]
    fn single_member_cover() {
        let x = Arc::new(fixtures::torus());
        let cover = Cover::new(x.clone(), vec![(*x).clone()]).unwrap();
        let l = build_cech_levels(&cover, 3).unwrap();
        assert_eq!(l.top(), 0);
    }

    fn check_homotopy(l: &CechLevels, f: Presheaf) {
        let base_dim = l.base().dim().unwrap();
        for p in 0..=base_dim + 1 {
            // level −1
            let pi = l.augmented_coface(f, 0, p);
            let h0 = l.contraction(f, 0, p).unwrap();
            assert_eq!(h0.compose(&pi).unwrap(), MixedMap::identity(f.module(l.base(), p)));
            for q in 0..=l.top() {
                let m = f.module(l.level(q).unwrap(), p);
                let down = l.augmented_coface(f, q, p).compose(&l.contraction(f, q, p).unwrap()).unwrap();
                let total = if q < l.top() {
                    let up = l.contraction(f, q + 1, p).unwrap().compose(&l.object().coface(f, q, p)).unwrap();
                    down.add(&up).unwrap()
                } else {
                    down
                };
                assert_eq!(total, MixedMap::identity(m), "q={q} p={p}");
            }
        }
        let _ = MixedModule::ZERO;
    }

    #[test]
    fn contraction_is_a_homotopy_on_augmented_rows() {
        for x in [fixtures::circle(), fixtures::boundary_tetrahedron(), fixtures::torus()] {
            let x = Arc::new(x);
            for cover in [Cover::star_cover(x.clone()).unwrap(), Cover::two_set_cover(x.clone()).unwrap()] {
                let l = build_cech_levels(&cover, 10).unwrap();
                check_homotopy(&l, Presheaf::Integer);
                check_homotopy(&l, Presheaf::Diff { s: 2 });
            }
        }
    }

    #[test]
    fn face_identities_on_the_tetrahedron_stars() {
        let cover = Cover::star_cover(Arc::new(fixtures::boundary_tetrahedron())).unwrap();
        let l = build_cech_levels(&cover, 10).unwrap();
        assert_eq!(l.top(), 3);
        l.object().check_identities().unwrap();
    }
}
