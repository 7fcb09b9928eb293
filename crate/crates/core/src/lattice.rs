//! Sublattices of `Z^N` given by generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::linalg::{IntMatrix, Matrix};
use crate::snf::{smith_normal_form, SmithForm};

/// Z-basis of the integer kernel `{x : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(m);
    let rank = s.rank();
    (rank..m.cols()).map(|j| s.v.column(j)).collect()
}

/// Some integer `x` with `m x = b`, if one exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = smith_normal_form(m);
    let ub = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, val) in ub.iter().enumerate() {
        let di = if i < m.cols() { s.d[(i, i)].clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !val.is_zero() {
                return None;
            }
        } else {
            if !val.is_multiple_of(&di) {
                return None;
            }
            y[i] = val / di;
        }
    }
    Some(s.v.mul_vec(&y))
}

#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    /// Basis vectors, linearly independent.
    basis: Vec<Vec<BigInt>>,
    smith: SmithForm,
}

impl Lattice {
    pub fn from_generators(dim: usize, gens: &[Vec<BigInt>]) -> Self {
        let basis = if gens.is_empty() {
            Vec::new()
        } else {
            let m = Matrix::from_fn(dim, gens.len(), |i, j| gens[j][i].clone());
            let s = smith_normal_form(&m);
            let mv = m.mul(&s.v);
            (0..s.rank()).map(|j| mv.column(j)).collect()
        };
        Lattice::from_basis(dim, basis)
    }

    fn from_basis(dim: usize, basis: Vec<Vec<BigInt>>) -> Self {
        let m = Matrix::from_fn(dim, basis.len(), |i, j| basis[j][i].clone());
        let smith = smith_normal_form(&m);
        Lattice { dim, basis, smith }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim, "vector of wrong dimension");
        let k = self.basis.len();
        if k == 0 {
            return v.iter().all(|x| x.is_zero()).then(Vec::new);
        }
        let uv = self.smith.u.mul_vec(v);
        let mut y = vec![BigInt::zero(); k];
        for (i, val) in uv.iter().enumerate() {
            if i < k {
                let di = &self.smith.d[(i, i)];
                if !val.is_multiple_of(di) {
                    return None;
                }
                y[i] = val / di;
            } else if !val.is_zero() {
                return None;
            }
        }
        Some(self.smith.v.mul_vec(&y))
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn intersection(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim, "lattices in different ambient spaces");
        let k1 = self.basis.len();
        let k2 = other.basis.len();
        if k1 == 0 || k2 == 0 {
            return Lattice::from_basis(self.dim, Vec::new());
        }
        let joint = Matrix::from_fn(self.dim, k1 + k2, |i, j| {
            if j < k1 {
                self.basis[j][i].clone()
            } else {
                -other.basis[j - k1][i].clone()
            }
        });
        let gens: Vec<Vec<BigInt>> = integer_kernel(&joint)
            .into_iter()
            .map(|kv| {
                let mut x = vec![BigInt::zero(); self.dim];
                for (j, c) in kv.iter().take(k1).enumerate() {
                    for (i, xi) in x.iter_mut().enumerate() {
                        *xi += c * &self.basis[j][i];
                    }
                }
                x
            })
            .collect();
        Lattice::from_generators(self.dim, &gens)
    }
}
