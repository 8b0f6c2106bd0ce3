//! Small exact linear algebra over the rationals and the integers.
//!
//! Matrices are row-major `Vec<Vec<_>>`; sizes stay tiny (rank <= 5, a few
//! dozen rows), so plain Gaussian elimination with exact pivots is enough.

use num_traits::{One, Signed, Zero};

use crate::rat::{Int, Rat};
use crate::{Error, Result};

pub type RatMat = Vec<Vec<Rat>>;
pub type IntMat = Vec<Vec<Int>>;

pub fn identity_int(n: usize) -> IntMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

pub fn mat_mul_int(a: &IntMat, b: &IntMat) -> IntMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![Int::zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut s = Int::zero();
            for t in 0..k {
                s += &a[i][t] * &b[t][j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn mat_transpose_int(a: &IntMat) -> IntMat {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn mat_vec_int(a: &IntMat, v: &[Int]) -> Vec<Int> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn mat_vec_rat(a: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn int_to_rat_mat(a: &IntMat) -> RatMat {
    a.iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect()
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub fn det_int(m: &IntMat) -> Result<Int> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::DimensionMismatch("determinant needs a square matrix".into()));
        }
    }
    if n == 0 {
        return Ok(Int::one());
    }
    let mut a = m.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(Int::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(sign * a[n - 1][n - 1].clone())
}

/// Reduced row echelon form; returns pivot column indices.
pub fn rref(a: &mut RatMat) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let s = &a[r][j] * &f;
                    a[i][j] -= s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_rat(a: &RatMat) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

/// Solves the square system `a x = b` exactly; `SingularSystem` if `a` is not
/// invertible.
pub fn solve_rat(a: &RatMat, b: &[Rat]) -> Result<Vec<Rat>> {
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if a.iter().any(|r| r.len() != n) || b.len() != n {
        return Err(Error::DimensionMismatch("solve needs a square system".into()));
    }
    let mut m: RatMat = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return Err(Error::SingularSystem);
    }
    Ok((0..n).map(|i| m[i][n].clone()).collect())
}

/// Basis of the right kernel `{x : a x = 0}`.
pub fn kernel_rat(a: &RatMat) -> Vec<Vec<Rat>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    if cols == 0 {
        return Vec::new();
    }
    if a.is_empty() {
        return (0..cols)
            .map(|j| (0..cols).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
    }
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square rational matrix.
pub fn inverse_rat(a: &RatMat) -> Result<RatMat> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rat> = (0..n).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect();
        cols.push(solve_rat(a, &e)?);
    }
    // cols[j] is the j-th column of the inverse.
    Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

/// All k-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // Advance the rightmost index that can still move.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] + (k - i) < n {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Lattice basis of `{x in Z^n : <v, x> = 0}` for a nonzero integer vector
/// `v`, built from an extended-gcd chain of unimodular column operations.
pub fn integer_kernel_of_vector(v: &[Int]) -> Result<IntMat> {
    let n = v.len();
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::InvalidInput("kernel of the zero vector".into()));
    }
    // Column-reduce v by unimodular U so that v U = (g, 0, ..., 0).
    let mut u = identity_int(n);
    let mut w: Vec<Int> = v.to_vec();
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| !w[i].is_zero()).collect();
        if nonzero.len() <= 1 {
            break;
        }
        // Pick the entry of least absolute value and reduce the others by it.
        let &k = nonzero
            .iter()
            .min_by(|&&i, &&j| w[i].abs().cmp(&w[j].abs()))
            .unwrap();
        for &i in &nonzero {
            if i == k {
                continue;
            }
            let q = &w[i] / &w[k]; // truncated division keeps |remainder| < |w[k]|
            if !q.is_zero() {
                w[i] = &w[i] - &q * &w[k];
                for r in 0..n {
                    let s = &q * &u[r][k];
                    u[r][i] = &u[r][i] - s;
                }
            } else {
                // Force a strict reduction via a swap.
                w.swap(i, k);
                for r in 0..n {
                    u[r].swap(i, k);
                }
            }
        }
    }
    let pos = (0..n).find(|&i| !w[i].is_zero()).unwrap();
    let kernel: IntMat = (0..n)
        .filter(|&j| j != pos)
        .map(|j| (0..n).map(|r| u[r][j].clone()).collect())
        .collect();
    Ok(kernel) // rows are lattice basis vectors
}

/// An integer vector `x` with `<v, x> = target`, when `gcd(v)` divides the
/// target.
pub fn integer_solution_of(v: &[Int], target: &Int) -> Result<Vec<Int>> {
    let n = v.len();
    let mut u = identity_int(n);
    let mut w: Vec<Int> = v.to_vec();
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| !w[i].is_zero()).collect();
        if nonzero.is_empty() {
            return Err(Error::InvalidInput("no integer solution against the zero vector".into()));
        }
        if nonzero.len() == 1 {
            let pos = nonzero[0];
            let g = w[pos].clone();
            if (target % &g).is_zero() {
                let q = target / &g;
                // v . (column pos of U) = g, so scale that column.
                return Ok((0..n).map(|r| &u[r][pos] * &q).collect());
            }
            return Err(Error::InvalidInput("target not divisible by the gcd".into()));
        }
        let &k = nonzero
            .iter()
            .min_by(|&&i, &&j| w[i].abs().cmp(&w[j].abs()))
            .unwrap();
        for &i in &nonzero {
            if i == k {
                continue;
            }
            let q = &w[i] / &w[k];
            w[i] = &w[i] - &q * &w[k];
            for r in 0..n {
                let s = &q * &u[r][k];
                u[r][i] = &u[r][i] - s;
            }
        }
    }
}

/// Completes a primitive integer vector to a basis of `Z^n`: returns a
/// unimodular matrix whose first column is `v`.
pub fn complete_to_basis(v: &[Int]) -> Result<IntMat> {
    let n = v.len();
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::InvalidInput("cannot complete the zero vector".into()));
    }
    let mut u = identity_int(n);
    let mut w: Vec<Int> = v.to_vec();
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| !w[i].is_zero()).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let &k = nonzero
            .iter()
            .min_by(|&&i, &&j| w[i].abs().cmp(&w[j].abs()))
            .unwrap();
        for &i in &nonzero {
            if i == k {
                continue;
            }
            let q = &w[i] / &w[k];
            if !q.is_zero() {
                w[i] = &w[i] - &q * &w[k];
                for r in 0..n {
                    let s = &q * &u[r][k];
                    u[r][i] = &u[r][i] - s;
                }
            } else {
                w.swap(i, k);
                for r in 0..n {
                    u[r].swap(i, k);
                }
            }
        }
    }
    let pos = (0..n).find(|&i| !w[i].is_zero()).ok_or(Error::SingularSystem)?;
    if w[pos].abs() != Int::one() {
        return Err(Error::InvalidInput("vector is not primitive".into()));
    }
    // Move column pos to the front: v^T U' = sign * e_1^T, i.e. U'^T v =
    // sign * e_1, so B = U'^{-T} (first column rescaled by sign) is
    // unimodular with B e_1 = v.
    let sign = w[pos].clone();
    for r in 0..n {
        u[r].swap(0, pos);
    }
    let ut: RatMat = (0..n)
        .map(|i| (0..n).map(|j| Rat::from_integer(u[j][i].clone())).collect())
        .collect();
    let inv = inverse_rat(&ut)?;
    let mut basis = vec![vec![Int::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let x = if j == 0 { &inv[i][j] * Rat::from_integer(sign.clone()) } else { inv[i][j].clone() };
            debug_assert!(x.is_integer());
            basis[i][j] = x.to_integer();
        }
    }
    debug_assert_eq!(
        (0..n).map(|r| basis[r][0].clone()).collect::<Vec<_>>(),
        v.to_vec()
    );
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn im(rows: &[&[i64]]) -> IntMat {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    fn rm(rows: &[&[i64]]) -> RatMat {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn bareiss_determinants() {
        assert_eq!(det_int(&im(&[&[1, 0], &[0, 1]])).unwrap(), int(1));
        assert_eq!(det_int(&im(&[&[1, 1], &[0, 2]])).unwrap(), int(2));
        assert_eq!(
            det_int(&im(&[&[1, 0, 0], &[1, 1, 0], &[0, 1, 1]])).unwrap(),
            int(1)
        );
        assert_eq!(det_int(&im(&[&[2, 4], &[1, 2]])).unwrap(), int(0));
        assert_eq!(
            det_int(&im(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]])).unwrap(),
            int(-2)
        );
    }

    #[test]
    fn solve_and_kernel() {
        let a = rm(&[&[1, 1], &[0, 1]]);
        let x = solve_rat(&a, &[rat(3), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        assert!(matches!(
            solve_rat(&rm(&[&[1, 2], &[2, 4]]), &[rat(0), rat(1)]),
            Err(Error::SingularSystem)
        ));
        let k = kernel_rat(&rm(&[&[1, 2, 3]]));
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Rat = v.iter().zip([rat(1), rat(2), rat(3)].iter()).map(|(a, b)| a * b).sum();
            assert_eq!(s, rat(0));
        }
    }

    #[test]
    fn integer_kernel_and_completion() {
        let v = vec![int(2), int(3), int(5)];
        let k = integer_kernel_of_vector(&v).unwrap();
        assert_eq!(k.len(), 2);
        for row in &k {
            let s: Int = row.iter().zip(&v).map(|(a, b)| a * b).sum();
            assert_eq!(s, int(0));
        }
        let prim = vec![int(2), int(2), int(1)];
        let b = complete_to_basis(&prim).unwrap();
        assert_eq!(det_int(&b).unwrap().abs(), int(1));
        for r in 0..3 {
            assert_eq!(b[r][0], prim[r]);
        }
    }
}
