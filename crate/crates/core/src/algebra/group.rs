use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntegerMatrix;
use super::smith::{smith_normal_form, SmithDecomposition};
use crate::error::{Error, Result};

/// ℤ^r ⊕ ℤ/t_1 ⊕ ... ⊕ ℤ/t_m in canonical form: each t_i > 1 and t_i | t_{i+1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_factors(0, &[BigInt::from(order)])
    }

    /// Builds the canonical form from arbitrary nonnegative cyclic factors.
    ///
    /// Zero factors contribute free summands, unit factors are dropped, and
    /// the remaining torsion is rearranged into a divisibility chain.
    pub fn from_factors(free_rank: usize, factors: &[BigInt]) -> Self {
        let mut free_rank = free_rank;
        let mut diag = Vec::new();
        for f in factors {
            if f.is_zero() {
                free_rank += 1;
            } else {
                diag.push(f.clone());
            }
        }
        let n = diag.len();
        let snf = smith_normal_form(&IntegerMatrix::diagonal(n, n, &diag));
        let torsion = snf.factors.into_iter().filter(|d| !d.is_one()).collect();
        Self { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of class coordinates (torsion summands first, then free ones).
    pub fn coordinate_count(&self) -> usize {
        self.torsion.len() + self.free_rank
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("ℤ/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// `ker(d_out) / im(d_in)` with explicit coordinates.
///
/// Cocycles are first written in a basis of `ker(d_out)` obtained from the
/// right Smith transform of `d_out`; the coboundary lattice is then
/// diagonalised by a second Smith reduction. Class coordinates list the
/// torsion summands (reduced into `[0, t_i)`) followed by the free ones.
#[derive(Clone, Debug)]
pub struct Cohomology {
    group: FgAbelianGroup,
    /// rows of V_out^{-1} that give kernel-basis coordinates
    to_kernel: IntegerMatrix,
    /// kernel basis, as columns
    kernel: IntegerMatrix,
    image_snf: SmithDecomposition,
    d_out: IntegerMatrix,
    /// indices (into the image Smith basis) of coordinates kept in the class vector
    kept: Vec<usize>,
    moduli: Vec<Option<BigInt>>,
}

impl Cohomology {
    pub fn new(d_in: &IntegerMatrix, d_out: &IntegerMatrix) -> Result<Self> {
        if d_out.cols() != d_in.rows() {
            return Err(Error::DimensionMismatch(format!(
                "incoming differential lands in dimension {} but outgoing starts from {}",
                d_in.rows(),
                d_out.cols()
            )));
        }
        if !d_out.mul(d_in)?.is_zero() {
            return Err(Error::InvalidComplex("composite of consecutive differentials is nonzero".into()));
        }
        let n = d_out.cols();
        let out_snf = smith_normal_form(d_out);
        let r = out_snf.rank();
        let to_kernel = out_snf.v_inv.submatrix(r..n, 0..n);
        let kernel = out_snf.v.submatrix(0..n, r..n);
        let image_coords = to_kernel.mul(d_in)?;
        let image_snf = smith_normal_form(&image_coords);
        let rho = image_snf.rank();
        let m = n - r;
        let mut kept = Vec::new();
        let mut moduli = Vec::new();
        let mut torsion = Vec::new();
        for (i, d) in image_snf.factors.iter().enumerate() {
            if !d.is_one() {
                kept.push(i);
                moduli.push(Some(d.clone()));
                torsion.push(d.clone());
            }
        }
        for i in rho..m {
            kept.push(i);
            moduli.push(None);
        }
        let group = FgAbelianGroup { free_rank: m - rho, torsion };
        Ok(Self { group, to_kernel, kernel, image_snf, d_out: d_out.clone(), kept, moduli })
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn is_cocycle(&self, z: &[BigInt]) -> Result<bool> {
        Ok(self.d_out.mul_vec(z)?.iter().all(Zero::is_zero))
    }

    /// Coordinates of the class of the cocycle `z`.
    pub fn class_of(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        if !self.is_cocycle(z)? {
            return Err(Error::NotACocycle("integer cochain is not closed".into()));
        }
        let w = self.to_kernel.mul_vec(z)?;
        let u = self.image_snf.u.mul_vec(&w)?;
        Ok(self
            .kept
            .iter()
            .zip(&self.moduli)
            .map(|(&i, m)| match m {
                Some(m) => u[i].mod_floor(m),
                None => u[i].clone(),
            })
            .collect())
    }

    pub fn is_coboundary(&self, z: &[BigInt]) -> Result<bool> {
        Ok(self.class_of(z)?.iter().all(Zero::is_zero))
    }

    /// A cocycle representing the `j`-th class coordinate generator.
    pub fn generator(&self, j: usize) -> Vec<BigInt> {
        let i = self.kept[j];
        let w = self.image_snf.u_inv.column(i);
        self.kernel.mul_vec(&w).expect("kernel shape")
    }

    /// A cocycle with the given class coordinates.
    pub fn representative(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut z = vec![BigInt::zero(); self.kernel.rows()];
        for (j, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (zi, gi) in z.iter_mut().zip(self.generator(j)) {
                *zi += c * gi;
            }
        }
        z
    }
}

/// `H = ker(d_out)/im(d_in)` as a canonical group.
pub fn cohomology_group(d_in: &IntegerMatrix, d_out: &IntegerMatrix) -> Result<FgAbelianGroup> {
    Ok(Cohomology::new(d_in, d_out)?.group().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::int_vec;

    #[test]
    fn canonical_form() {
        let g = FgAbelianGroup::from_factors(1, &int_vec(&[1, 6, 4, 0]));
        assert_eq!(g.free_rank, 2);
        assert_eq!(g.torsion, int_vec(&[2, 12]));
        assert_eq!(g.to_string(), "ℤ^2 ⊕ ℤ/2 ⊕ ℤ/12");
        assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
    }

    #[test]
    fn multiplication_by_two() {
        let two = IntegerMatrix::from_rows_i64(&[vec![2]]).unwrap();
        assert!(cohomology_group(&IntegerMatrix::zeros(1, 1), &two).unwrap().is_trivial());
        let h = Cohomology::new(&two, &IntegerMatrix::zeros(0, 1)).unwrap();
        assert_eq!(h.group(), &FgAbelianGroup::cyclic(2));
        assert_eq!(h.class_of(&int_vec(&[3])).unwrap(), int_vec(&[1]));
        assert!(h.is_coboundary(&int_vec(&[4])).unwrap());
    }

    #[test]
    fn rejects_non_complex() {
        let a = IntegerMatrix::from_rows_i64(&[vec![1]]).unwrap();
        assert!(matches!(Cohomology::new(&a, &a), Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn generators_have_unit_coordinates() {
        // ℤ^3 modulo the image of diag(2, 0, 0)-ish relations
        let d_in = IntegerMatrix::from_rows_i64(&[vec![2, 4], vec![0, 6], vec![0, 0]]).unwrap();
        let d_out = IntegerMatrix::zeros(0, 3);
        let h = Cohomology::new(&d_in, &d_out).unwrap();
        assert_eq!(h.group().to_string(), "ℤ ⊕ ℤ/2 ⊕ ℤ/6");
        for j in 0..h.group().coordinate_count() {
            let mut e = vec![BigInt::zero(); 3];
            e[j] = BigInt::one();
            assert_eq!(h.class_of(&h.generator(j)).unwrap(), e);
        }
    }
}
