use std::sync::Arc;

use super::group::GroupAction;
use crate::error::Result;
use crate::simplicial::{CechLevels, Cover, SimplicialComplex, SimplicialMap, SimplicialObject};

/// A finite groupoid in simplicial complexes, presented by its nerve.
pub trait SimplicialGroupoid {
    /// Levels `Γ_0, …, Γ_{q_max}` with their face maps.
    fn nerve(&self, q_max: usize) -> Result<SimplicialObject>;
}

/// The action groupoid `G ⋉ X`: `Γ_q = G^q × X`.
///
/// Faces on `(g_1, …, g_q, x)`: `∂_0` drops `g_1`, `∂_i` multiplies
/// `g_i g_{i+1}`, and `∂_q` gives `(g_1, …, g_{q−1}, g_q · x)`.
#[derive(Clone, Debug)]
pub struct ActionGroupoid {
    action: GroupAction,
}

impl ActionGroupoid {
    pub fn new(action: GroupAction) -> Self {
        Self { action }
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// Piece index of `(g_1, …, g_q)`, with `g_1` most significant.
    fn encode(&self, gs: &[usize]) -> usize {
        let n = self.action.group().order();
        gs.iter().fold(0, |acc, &g| acc * n + g)
    }

    fn decode(&self, mut j: usize, q: usize) -> Vec<usize> {
        let n = self.action.group().order();
        let mut gs = vec![0; q];
        for slot in gs.iter_mut().rev() {
            *slot = j % n;
            j /= n;
        }
        gs
    }
}

impl SimplicialGroupoid for ActionGroupoid {
    fn nerve(&self, q_max: usize) -> Result<SimplicialObject> {
        let x = self.action.complex();
        let group = self.action.group();
        let stride = x.label_bound().max(1);
        let levels: Vec<Arc<SimplicialComplex>> = (0..=q_max)
            .map(|q| {
                let copies = group.order().pow(q as u32);
                let parts: Vec<(&SimplicialComplex, usize)> = (0..copies).map(|j| (x.as_ref(), j * stride)).collect();
                Arc::new(SimplicialComplex::disjoint_union(&parts))
            })
            .collect();
        let mut faces = vec![Vec::new()];
        for q in 1..=q_max {
            let mut fq = Vec::new();
            for i in 0..=q {
                let f = SimplicialMap::from_fn(levels[q].clone(), levels[q - 1].clone(), |v| {
                    let (j, mut p) = (v / stride, v % stride);
                    let mut gs = self.decode(j, q);
                    if i == 0 {
                        gs.remove(0);
                    } else if i < q {
                        gs[i - 1] = group.mul(gs[i - 1], gs[i]);
                        gs.remove(i);
                    } else {
                        p = self.action.act(gs[q - 1], p);
                        gs.pop();
                    }
                    self.encode(&gs) * stride + p
                })?;
                fq.push(f);
            }
            faces.push(fq);
        }
        SimplicialObject::new(levels, faces)
    }
}

/// The Čech groupoid `∐ U_α ×_X U_β ⇉ ∐ U_α` of a cover; `Γ_q` runs over
/// all ordered `(q+1)`-tuples of members.
#[derive(Clone, Debug)]
pub struct CechGroupoid {
    cover: Cover,
}

impl CechGroupoid {
    pub fn new(cover: Cover) -> Self {
        Self { cover }
    }
}

impl SimplicialGroupoid for CechGroupoid {
    fn nerve(&self, q_max: usize) -> Result<SimplicialObject> {
        Ok(CechLevels::build(&self.cover, q_max, false)?.object().clone())
    }
}

/// `Γ_q` and its face maps.
pub fn nerve_level(gpd: &dyn SimplicialGroupoid, q: usize) -> Result<(Arc<SimplicialComplex>, Vec<SimplicialMap>)> {
    let obj = gpd.nerve(q)?;
    let faces = (0..if q == 0 { 0 } else { q + 1 }).map(|i| obj.face(q, i).clone()).collect();
    Ok((obj.level(q).unwrap().clone(), faces))
}
