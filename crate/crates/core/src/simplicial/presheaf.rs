//! Cochain presheaves: graded groups `A^p(X)` built slot-wise from simplicial
//! cochain groups, with a differential and strictly functorial pullbacks.

use num_rational::BigRational;

use super::complex::SimplicialComplex;
use super::map::SimplicialMap;
use crate::algebra::{IntegerMatrix, MixedMap, MixedModule, MixedVector, RationalMatrix};

/// The coefficient systems used throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Presheaf {
    /// `C^p(X; ℤ)`
    Integer,
    /// `C^p(X; ℚ)`
    Rational,
    /// The differential cochains `DC_s^p(X)`: `(c, h, ω)` with `ω` present
    /// only from degree `s` on.
    Diff { s: usize },
}

/// One cochain group inside `A^p(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub name: &'static str,
    pub integral: bool,
    pub degree: usize,
}

impl Presheaf {
    /// Integral slots come first in the integer coordinates, rational slots in
    /// the rational coordinates, each in the listed order.
    pub fn slots(&self, p: usize) -> Vec<Slot> {
        match *self {
            Presheaf::Integer => vec![Slot { name: "c", integral: true, degree: p }],
            Presheaf::Rational => vec![Slot { name: "x", integral: false, degree: p }],
            Presheaf::Diff { s } => {
                let mut v = vec![Slot { name: "c", integral: true, degree: p }];
                if p >= 1 {
                    v.push(Slot { name: "h", integral: false, degree: p - 1 });
                }
                if p >= s {
                    v.push(Slot { name: "omega", integral: false, degree: p });
                }
                v
            }
        }
    }

    pub fn module(&self, x: &SimplicialComplex, p: usize) -> MixedModule {
        let mut m = MixedModule::ZERO;
        for slot in self.slots(p) {
            if slot.integral {
                m.int_rank += x.count(slot.degree);
            } else {
                m.rat_dim += x.count(slot.degree);
            }
        }
        m
    }

    /// `d: A^p(X) → A^{p+1}(X)`. For differential cochains this is
    /// `d(c, h, ω) = (dc, ω − c − dh, dω)`.
    pub fn differential(&self, x: &SimplicialComplex, p: usize) -> MixedMap {
        let d = |k: usize| x.coboundary_matrix(k);
        match *self {
            Presheaf::Integer => MixedMap::from_integer(d(p)),
            Presheaf::Rational => MixedMap::from_rational(d(p).to_rational()),
            Presheaf::Diff { s } => {
                let n = |k: usize| x.count(k);
                let has_omega = p >= s;
                let has_omega_out = p + 1 >= s;
                let h_in = if p >= 1 { n(p - 1) } else { 0 };
                let om_in = if has_omega { n(p) } else { 0 };
                let om_out = if has_omega_out { n(p + 1) } else { 0 };
                let zz = d(p);
                let mut zq = RationalMatrix::zeros(n(p) + om_out, n(p));
                zq.place(0, 0, &RationalMatrix::identity(n(p)).neg());
                let mut qq = RationalMatrix::zeros(n(p) + om_out, h_in + om_in);
                if p >= 1 {
                    qq.place(0, 0, &d(p - 1).to_rational().neg());
                }
                if has_omega {
                    qq.place(0, h_in, &RationalMatrix::identity(n(p)));
                    qq.place(n(p), h_in, &d(p).to_rational());
                }
                MixedMap::new(zz, zq, qq).expect("differential block shapes")
            }
        }
    }

    /// The map `A^p(src) → A^p(dst)` acting on every slot of simplex degree
    /// `k` by the integer matrix `f(k)` (of shape `dst.count(k) × src.count(k)`).
    pub fn slotwise(&self, src: &SimplicialComplex, dst: &SimplicialComplex, p: usize, f: impl Fn(usize) -> IntegerMatrix) -> MixedMap {
        let dom = self.module(src, p);
        let cod = self.module(dst, p);
        let mut zz = IntegerMatrix::zeros(cod.int_rank, dom.int_rank);
        let mut qq = RationalMatrix::zeros(cod.rat_dim, dom.rat_dim);
        let (mut ri, mut ci, mut rq, mut cq) = (0, 0, 0, 0);
        for slot in self.slots(p) {
            let m = f(slot.degree);
            debug_assert_eq!((m.rows(), m.cols()), (dst.count(slot.degree), src.count(slot.degree)));
            if slot.integral {
                zz.place(ri, ci, &m);
                ri += m.rows();
                ci += m.cols();
            } else {
                qq.place(rq, cq, &m.to_rational());
                rq += m.rows();
                cq += m.cols();
            }
        }
        MixedMap::new(zz, RationalMatrix::zeros(cod.rat_dim, dom.int_rank), qq).expect("slotwise shapes")
    }

    /// `f^*: A^p(target) → A^p(source)`.
    pub fn pullback(&self, f: &SimplicialMap, p: usize) -> MixedMap {
        self.slotwise(f.target(), f.source(), p, |k| f.pullback_matrix(k))
    }

    /// Splits a vector of `A^p(X)` into its slots, all as rational values.
    pub fn split_slots(&self, x: &SimplicialComplex, p: usize, v: &MixedVector) -> Vec<(Slot, Vec<BigRational>)> {
        let (mut i, mut r) = (0, 0);
        self.slots(p)
            .into_iter()
            .map(|slot| {
                let n = x.count(slot.degree);
                let vals = if slot.integral {
                    i += n;
                    v.ints[i - n..i].iter().map(|z| BigRational::from_integer(z.clone())).collect()
                } else {
                    r += n;
                    v.rats[r - n..r].to_vec()
                };
                (slot, vals)
            })
            .collect()
    }

    /// Inverse of [`Presheaf::split_slots`]; integral slots must hold integers.
    pub fn join_slots(&self, p: usize, parts: &[Vec<BigRational>]) -> MixedVector {
        let mut out = MixedVector::default();
        for (slot, vals) in self.slots(p).iter().zip(parts) {
            if slot.integral {
                out.ints.extend(vals.iter().map(|q| {
                    debug_assert!(q.is_integer());
                    q.to_integer()
                }));
            } else {
                out.rats.extend(vals.iter().cloned());
            }
        }
        out
    }
}
