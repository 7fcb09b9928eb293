//! Rational polyhedral cones `{y ∈ R^k : H y >= 0}`: extreme rays by double description,
//! a pulling triangulation, and Hilbert bases from fundamental parallelepipeds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::diophantine::Limits;
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, Matrix};
use crate::snf::smith_normal_form;

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

fn rank_of(vectors: &[&Vec<BigInt>], k: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_fn(vectors.len(), k, |i, j| vectors[i][j].clone()).rank()
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|x| x.count_ones() as usize).sum()
    }
    fn contains(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

/// Extreme rays (primitive, sorted) of a pointed full-dimensional cone `H y >= 0`.
pub fn extreme_rays(h: &[Vec<BigInt>], k: usize) -> Result<Vec<Vec<BigInt>>> {
    let q = h.len();
    let mut basis_rows: Vec<usize> = Vec::new();
    for i in 0..q {
        let mut trial: Vec<&Vec<BigInt>> = basis_rows.iter().map(|&j| &h[j]).collect();
        trial.push(&h[i]);
        if rank_of(&trial, k) == trial.len() {
            basis_rows.push(i);
            if basis_rows.len() == k {
                break;
            }
        }
    }
    if basis_rows.len() < k {
        return Err(Error::NotPointed);
    }
    let hb = Matrix::from_fn(k, k, |i, j| BigRational::from_integer(h[basis_rows[i]][j].clone()));
    let inv = linalg::inverse(&hb).expect("independent rows");
    let dot = |a: &[BigInt], b: &[BigInt]| linalg::dot_int(a, b);
    let mut rays: Vec<(Vec<BigInt>, Bits)> = (0..k)
        .map(|j| {
            let v = linalg::primitive_integer(&inv.column(j));
            let mut z = Bits::new(q);
            for (t, &row) in basis_rows.iter().enumerate() {
                if t != j {
                    z.set(row);
                }
            }
            (v, z)
        })
        .collect();
    for i in (0..q).filter(|i| !basis_rows.contains(i)) {
        let vals: Vec<BigInt> = rays.iter().map(|(v, _)| dot(&h[i], v)).collect();
        let mut next: Vec<(Vec<BigInt>, Bits)> = Vec::new();
        for (idx, (v, z)) in rays.iter().enumerate() {
            if !vals[idx].is_negative() {
                let mut z = z.clone();
                if vals[idx].is_zero() {
                    z.set(i);
                }
                next.push((v.clone(), z));
            }
        }
        for a in 0..rays.len() {
            if !vals[a].is_positive() {
                continue;
            }
            for b in 0..rays.len() {
                if !vals[b].is_negative() {
                    continue;
                }
                let common = rays[a].1.and(&rays[b].1);
                if k >= 2 && common.count() < k - 2 {
                    continue;
                }
                let adjacent = !(0..rays.len()).any(|c| c != a && c != b && rays[c].1.contains(&common));
                if !adjacent {
                    continue;
                }
                let nv: Vec<BigInt> = rays[b].0.iter().zip(&rays[a].0).map(|(wb, ua)| &vals[a] * wb - &vals[b] * ua).collect();
                let mut z = common;
                z.set(i);
                next.push((primitive(nv), z));
            }
        }
        rays = next;
    }
    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|(v, _)| v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Pulling triangulation of the cone spanned by `rays` (with facet normals `h`), as index sets.
pub fn pulling_triangulation(h: &[Vec<BigInt>], rays: &[Vec<BigInt>], k: usize) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..rays.len()).collect();
    let mut out = Vec::new();
    pull(h, rays, k, &all, k, &mut out);
    out
}

fn pull(h: &[Vec<BigInt>], rays: &[Vec<BigInt>], k: usize, face: &[usize], dim: usize, out: &mut Vec<Vec<usize>>) {
    if face.len() == dim {
        out.push(face.to_vec());
        return;
    }
    let apex = face[0];
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for row in h {
        let sub: Vec<usize> = face.iter().copied().filter(|&i| linalg::dot_int(row, &rays[i]).is_zero()).collect();
        if sub.len() == face.len() || sub.contains(&apex) || facets.contains(&sub) {
            continue;
        }
        let vs: Vec<&Vec<BigInt>> = sub.iter().map(|&i| &rays[i]).collect();
        if rank_of(&vs, k) == dim - 1 {
            facets.push(sub);
        }
    }
    for f in facets {
        let mut sub = Vec::new();
        pull(h, rays, k, &f, dim - 1, &mut sub);
        for mut s in sub {
            s.insert(0, apex);
            out.push(s);
        }
    }
}

/// Nonzero lattice points `Σ q_i v_i` with `0 <= q_i < 1` for linearly independent `v_i`.
pub fn parallelepiped_points(gens: &[Vec<BigInt>], k: usize, cap: usize) -> Result<Vec<Vec<BigInt>>> {
    let v = Matrix::from_fn(k, gens.len(), |i, j| gens[j][i].clone());
    let s = smith_normal_form(&v);
    let d: Vec<BigInt> = (0..k).map(|i| s.d[(i, i)].clone()).collect();
    let order = d.iter().fold(BigInt::one(), |a, x| a * x);
    if order > BigInt::from(cap) {
        return Err(Error::Overflow(format!("parallelepiped with {order} points")));
    }
    let uinv = linalg::inverse(&s.u.to_rational()).expect("unimodular");
    let vinv = linalg::inverse(&v.to_rational()).expect("independent generators");
    let vr = v.to_rational();
    let mut out = Vec::new();
    let mut counter = vec![BigInt::zero(); k];
    loop {
        if counter.iter().any(|x| !x.is_zero()) {
            let kq: Vec<BigRational> = counter.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            let x = uinv.mul_vec(&kq);
            let coeffs: Vec<BigRational> = vinv.mul_vec(&x).into_iter().map(|c| &c - c.floor()).collect();
            let p = vr.mul_vec(&coeffs);
            out.push(p.into_iter().map(|c| c.to_integer()).collect());
        }
        let mut i = 0;
        loop {
            if i == k {
                return Ok(out);
            }
            counter[i] += 1;
            if counter[i] < d[i] {
                break;
            }
            counter[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// Hilbert basis of `{y ∈ Z^k : H y >= 0}` for a pointed full-dimensional cone, sorted.
pub fn hilbert_basis(h: &[Vec<BigInt>], k: usize, limits: Limits) -> Result<Vec<Vec<BigInt>>> {
    let rays = extreme_rays(h, k)?;
    let simplices = pulling_triangulation(h, &rays, k);
    let mut cands: Vec<Vec<BigInt>> = rays.clone();
    for s in &simplices {
        let gens: Vec<Vec<BigInt>> = s.iter().map(|&i| rays[i].clone()).collect();
        cands.extend(parallelepiped_points(&gens, k, limits.max_nodes)?);
        if cands.len() > limits.max_nodes {
            return Err(Error::Overflow("too many Hilbert basis candidates".into()));
        }
    }
    cands.sort();
    cands.dedup();
    // a strictly positive grading: the sum of the facet normals
    let grade: Vec<BigInt> = (0..k).map(|j| h.iter().map(|row| &row[j]).sum()).collect();
    let mut keyed: Vec<(BigInt, Vec<BigInt>)> = cands.into_iter().map(|c| (linalg::dot_int(&grade, &c), c)).collect();
    keyed.sort();
    let in_cone = |y: &[BigInt]| h.iter().all(|row| !linalg::dot_int(row, y).is_negative());
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for (g, c) in &keyed {
        let reducible = keyed.iter().take_while(|(g2, _)| g2 < g).any(|(_, c2)| {
            let diff: Vec<BigInt> = c.iter().zip(c2).map(|(a, b)| a - b).collect();
            in_cone(&diff)
        });
        if !reducible {
            basis.push(c.clone());
        }
    }
    basis.sort();
    Ok(basis)
}

/// `|det|` of a square integer matrix given by columns.
pub fn lattice_volume(gens: &[Vec<BigInt>], k: usize) -> BigInt {
    let m: IntMatrix = Matrix::from_fn(k, gens.len(), |i, j| gens[j][i].clone());
    m.determinant().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diophantine::cone_hilbert_basis;

    fn v(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn rays_of_square_cone() {
        // x >= |z|, y >= |z|
        let h = v(&[&[1, 0, 1], &[1, 0, -1], &[0, 1, 1], &[0, 1, -1]]);
        let rays = extreme_rays(&h, 3).unwrap();
        assert_eq!(rays, v(&[&[0, 1, 0], &[1, 0, 0], &[1, 1, -1], &[1, 1, 1]]));
        let tri = pulling_triangulation(&h, &rays, 3);
        assert_eq!(tri.len(), 2);
        for s in &tri {
            let gens: Vec<_> = s.iter().map(|&i| rays[i].clone()).collect();
            assert!(!lattice_volume(&gens, 3).is_zero());
        }
        let hb = hilbert_basis(&h, 3, Limits::default()).unwrap();
        let mut cd = cone_hilbert_basis(&h, 3, Limits::default()).unwrap();
        cd.sort();
        assert_eq!(hb, cd);
    }

    #[test]
    fn wedge_basis() {
        let h = v(&[&[0, 1], &[2, -1]]);
        assert_eq!(hilbert_basis(&h, 2, Limits::default()).unwrap(), v(&[&[1, 0], &[1, 1], &[1, 2]]));
        let h = v(&[&[0, 1], &[5, -2]]);
        let a = hilbert_basis(&h, 2, Limits::default()).unwrap();
        let mut b = cone_hilbert_basis(&h, 2, Limits::default()).unwrap();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn parallelepiped_count() {
        let gens = v(&[&[1, 0], &[1, 3]]);
        let pts = parallelepiped_points(&gens, 2, 100).unwrap();
        assert_eq!(pts, v(&[&[1, 1], &[1, 2]]));
    }
}
