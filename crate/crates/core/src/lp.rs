//! Exact rational feasibility for systems of linear inequalities.
//!
//! Phase-one simplex with Bland's rule on an integer tableau. Only feasibility is
//! needed: positivity functionals, interior points of chambers and redundancy
//! of facet inequalities all reduce to "is `A x >= b` solvable".

use num_rational::BigRational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Finds some `x` with `a x >= b` (componentwise), or `None` if none exists.
pub fn find_point(a: &[Vec<BigRational>], b: &[BigRational], dim: usize) -> Option<Vec<BigRational>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    if a.is_empty() {
        return Some(vec![BigRational::zero(); dim]);
    }
    // x = xp - xm, a x - s = b, rows negated where b < 0 so the right side is nonnegative
    let nvar = 2 * dim + a.len();
    let mut rows = Vec::with_capacity(a.len());
    let mut rhs = Vec::with_capacity(a.len());
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), dim, "row of wrong width");
        let flip = bi.is_negative();
        let sign = |x: BigRational| if flip { -x } else { x };
        let mut r = vec![BigRational::zero(); nvar];
        for j in 0..dim {
            r[j] = sign(row[j].clone());
            r[dim + j] = sign(-row[j].clone());
        }
        r[2 * dim + i] = sign(-BigRational::from_integer(1.into()));
        rows.push(r);
        rhs.push(sign(bi.clone()));
    }
    let z = phase_one(rows, rhs)?;
    Some((0..dim).map(|j| &z[j] - &z[dim + j]).collect())
}

/// Finds `z >= 0` with `rows z = rhs`, given `rhs >= 0`.
///
/// Fraction-free tableau: every entry is an integer over the common denominator `den`.
fn phase_one(rows: Vec<Vec<BigRational>>, rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let k = rows.len();
    let n = rows[0].len();
    let width = n + k;
    // columns 0..width, then the right-hand side
    let mut t: Vec<Vec<BigInt>> = rows
        .iter()
        .zip(&rhs)
        .enumerate()
        .map(|(i, (r, b))| {
            let l = r.iter().chain(std::iter::once(b)).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut out: Vec<BigInt> = r.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
            out.extend((0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            out.push((b * BigRational::from_integer(l)).to_integer());
            out
        })
        .collect();
    let mut basis: Vec<usize> = (n..width).collect();
    // reduced costs of the phase-one objective (sum of artificials)
    let mut cost: Vec<BigInt> = (0..=width)
        .map(|j| if j < n || j == width { -t.iter().map(|r| r[j].clone()).sum::<BigInt>() } else { BigInt::zero() })
        .collect();
    let mut den = BigInt::one();
    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<usize> = None;
        for i in 0..k {
            if t[i][enter].is_positive() {
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let lhs = &t[i][width] * &t[l][enter];
                        let rhs = &t[l][width] * &t[i][enter];
                        lhs < rhs || (lhs == rhs && basis[i] < basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
        }
        // the phase-one objective is bounded below by zero
        let l = leave.expect("phase-one simplex cannot be unbounded");
        let piv = t[l][enter].clone();
        let pivot_row = t[l].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != l {
                let f = row[enter].clone();
                for j in 0..=width {
                    row[j] = (&row[j] * &piv - &f * &pivot_row[j]) / &den;
                }
            }
        }
        let f = cost[enter].clone();
        for j in 0..=width {
            cost[j] = (&cost[j] * &piv - &f * &pivot_row[j]) / &den;
        }
        den = piv;
        basis[l] = enter;
    }
    // feasible iff every artificial left in the basis sits at zero
    if basis.iter().zip(&t).any(|(&b, row)| b >= n && row[width].is_positive()) {
        return None;
    }
    let mut z = vec![BigRational::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            z[b] = BigRational::new(t[i][width].clone(), den.clone());
        }
    }
    Some(z)
}
