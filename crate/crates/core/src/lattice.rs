//! Exact vectors in the dual lattices `M` (weights, basis `f_1..f_l`) and
//! `N` (one-parameter subgroups, basis `e_1..e_l`), with `<f_i, e_j> =
//! delta_ij`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::linalg;
use crate::rat::{gcd_all, Int, Rat};
use crate::{Error, Result};

/// A weight-side vector: exact rational coordinates in the `f`-basis of
/// `M_R`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MVec(pub Vec<Rat>);

/// A one-parameter-subgroup vector: exact integer coordinates in the
/// `e`-basis of `N`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NVec(pub Vec<Int>);

impl fmt::Debug for MVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for NVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl MVec {
    pub fn zero(l: usize) -> Self {
        MVec(vec![Rat::zero(); l])
    }

    pub fn unit(l: usize, i: usize) -> Self {
        let mut v = vec![Rat::zero(); l];
        v[i] = Rat::from_integer(Int::from(1));
        MVec(v)
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        MVec(xs.iter().map(|&x| Rat::from_integer(Int::from(x))).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// True when every coordinate is an integer, i.e. the vector lies in `M`.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        MVec(self.0.iter().map(|x| x * c).collect())
    }
}

impl NVec {
    pub fn zero(l: usize) -> Self {
        NVec(vec![Int::zero(); l])
    }

    pub fn unit(l: usize, i: usize) -> Self {
        let mut v = vec![Int::zero(); l];
        v[i] = Int::from(1);
        NVec(v)
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        NVec(xs.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// Divides out the gcd of the coordinates (sign preserved).
    pub fn primitive(&self) -> Self {
        let g = gcd_all(&self.0);
        if g.is_zero() || g == Int::from(1) {
            return self.clone();
        }
        NVec(self.0.iter().map(|x| x / &g).collect())
    }

    pub fn is_primitive(&self) -> bool {
        gcd_all(&self.0) == Int::from(1)
    }

    /// True when every coordinate is non-negative (vector lies in the
    /// orthant `sigma(e_1..e_l)`).
    pub fn in_orthant(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.0.iter().map(|x| Rat::from_integer(x.clone())).collect()
    }
}

impl Add for &MVec {
    type Output = MVec;
    fn add(self, rhs: &MVec) -> MVec {
        MVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &MVec {
    type Output = MVec;
    fn sub(self, rhs: &MVec) -> MVec {
        MVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &MVec {
    type Output = MVec;
    fn neg(self) -> MVec {
        MVec(self.0.iter().map(|a| -a).collect())
    }
}

impl Add for &NVec {
    type Output = NVec;
    fn add(self, rhs: &NVec) -> NVec {
        NVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &NVec {
    type Output = NVec;
    fn sub(self, rhs: &NVec) -> NVec {
        NVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &NVec {
    type Output = NVec;
    fn neg(self) -> NVec {
        NVec(self.0.iter().map(|a| -a).collect())
    }
}

/// The dual pairing `<m, n> = sum_i m_i n_i` (the bases are dual).
pub fn pair(m: &MVec, n: &NVec) -> Result<Rat> {
    if m.len() != n.len() {
        return Err(Error::DimensionMismatch(format!(
            "pair: lengths {} and {}",
            m.len(),
            n.len()
        )));
    }
    Ok(m.0
        .iter()
        .zip(&n.0)
        .map(|(a, b)| a * Rat::from_integer(b.clone()))
        .sum())
}

/// Pairing that panics on length mismatch; for internal use where lengths
/// are already validated.
pub(crate) fn pair_unchecked(m: &MVec, n: &NVec) -> Rat {
    m.0.iter()
        .zip(&n.0)
        .map(|(a, b)| a * Rat::from_integer(b.clone()))
        .sum()
}

/// True iff the given `l` vectors of length `l` form a `Z`-basis of `N`
/// (integer determinant `+-1`).
pub fn is_lattice_basis(vs: &[NVec]) -> Result<bool> {
    let l = vs.len();
    if vs.iter().any(|v| v.len() != l) {
        return Err(Error::DimensionMismatch(
            "is_lattice_basis expects l vectors of length l".into(),
        ));
    }
    let m: linalg::IntMat = vs.iter().map(|v| v.0.clone()).collect();
    Ok(linalg::det_int(&m)?.abs() == Int::from(1))
}

/// Recovers the unique linear form `m` with `<m, ray_i> = value_i` from a
/// square, linearly independent set of rays.
pub fn solve_linear_form(rays: &[NVec], values: &[Rat]) -> Result<MVec> {
    let l = rays.len();
    if rays.iter().any(|r| r.len() != l) || values.len() != l {
        return Err(Error::DimensionMismatch(
            "solve_linear_form expects a square system".into(),
        ));
    }
    // <m, r> = sum_j m_j r_j: rows of the system are the rays.
    let a: linalg::RatMat = rays.iter().map(|r| r.to_rat()).collect();
    Ok(MVec(linalg::solve_rat(&a, values)?))
}

/// A coset `v + M` inside `M_R`; two representatives are equivalent iff
/// their difference is integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCoset {
    pub basepoint: MVec,
}

impl LatticeCoset {
    pub fn new(basepoint: MVec) -> Self {
        LatticeCoset { basepoint }
    }

    pub fn rank(&self) -> usize {
        self.basepoint.len()
    }

    pub fn contains(&self, m: &MVec) -> bool {
        m.len() == self.basepoint.len() && (m - &self.basepoint).is_integral()
    }

    pub fn same_coset(&self, other: &LatticeCoset) -> bool {
        self.contains(&other.basepoint)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn dual_basis_pairings() {
        let f1 = MVec::from_ints(&[1, 0]);
        let e1 = NVec::from_ints(&[1, 0]);
        let e2 = NVec::from_ints(&[0, 1]);
        assert_eq!(pair(&f1, &e1).unwrap(), rat(1));
        assert_eq!(pair(&f1, &e2).unwrap(), rat(0));
        let zero = MVec::zero(2);
        assert_eq!(pair(&zero, &e2).unwrap(), rat(0));
        let m = MVec(vec![ratio(3, 2), rat(-1)]);
        let n = NVec::from_ints(&[2, 5]);
        assert_eq!(pair(&m, &n).unwrap(), rat(-2));
        assert!(pair(&m, &NVec::from_ints(&[1])).is_err());
    }

    #[test]
    fn lattice_basis_checks() {
        let e1 = NVec::from_ints(&[1, 0]);
        let e2 = NVec::from_ints(&[0, 1]);
        assert!(is_lattice_basis(&[e1.clone(), e2.clone()]).unwrap());
        let skew = NVec::from_ints(&[1, 2]);
        assert!(!is_lattice_basis(&[e1.clone(), skew]).unwrap());
        let a = NVec::from_ints(&[1, 1, 0]);
        let b = NVec::from_ints(&[0, 1, 1]);
        let c = NVec::from_ints(&[0, 0, 1]);
        assert!(is_lattice_basis(&[a, b, c]).unwrap());
        assert!(is_lattice_basis(&[e1, e2, NVec::from_ints(&[0, 0])]).is_err());
    }

    #[test]
    fn linear_form_solutions() {
        let e1 = NVec::from_ints(&[1, 0]);
        let e2 = NVec::from_ints(&[0, 1]);
        let m = solve_linear_form(&[e1.clone(), e2.clone()], &[rat(0), rat(1)]).unwrap();
        assert_eq!(m, MVec::from_ints(&[0, 1]));
        let m2 =
            solve_linear_form(&[e1.clone(), NVec::from_ints(&[1, 1])], &[rat(0), rat(1)]).unwrap();
        assert_eq!(m2, MVec::from_ints(&[0, 1]));
        let m3 = solve_linear_form(&[e1.clone(), e2], &[rat(-2), rat(-1)]).unwrap();
        assert_eq!(m3, MVec::from_ints(&[-2, -1]));
        assert!(matches!(
            solve_linear_form(&[e1.clone(), e1], &[rat(0), rat(1)]),
            Err(Error::SingularSystem)
        ));
    }

    #[test]
    fn coset_membership() {
        let coset = LatticeCoset::new(MVec(vec![ratio(1, 2), rat(0)]));
        assert!(coset.contains(&MVec(vec![ratio(5, 2), rat(-3)])));
        assert!(!coset.contains(&MVec(vec![rat(1), rat(0)])));
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-20i64..=20, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
    }

    proptest! {
        #[test]
        fn pairing_is_bilinear(
            a in proptest::collection::vec(arb_rat(), 3),
            b in proptest::collection::vec(arb_rat(), 3),
            n in proptest::collection::vec(-9i64..=9, 3),
        ) {
            let ma = MVec(a);
            let mb = MVec(b);
            let nv = NVec::from_ints(&n);
            let lhs = pair(&(&ma + &mb), &nv).unwrap();
            let rhs = pair(&ma, &nv).unwrap() + pair(&mb, &nv).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn solve_then_pair_round_trips(
            rays in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 3), 3),
            vals in proptest::collection::vec(arb_rat(), 3),
        ) {
            let rays: Vec<NVec> = rays.iter().map(|r| NVec::from_ints(r)).collect();
            if let Ok(m) = solve_linear_form(&rays, &vals) {
                for (r, v) in rays.iter().zip(&vals) {
                    prop_assert_eq!(pair(&m, r).unwrap(), v.clone());
                }
            }
        }

        #[test]
        fn basis_check_permutation_and_sign_invariant(
            rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 3),
            swap in 0usize..3,
            flip in 0usize..3,
        ) {
            let vs: Vec<NVec> = rows.iter().map(|r| NVec::from_ints(r)).collect();
            let base = is_lattice_basis(&vs).unwrap();
            let mut tweaked = vs.clone();
            tweaked.swap(0, swap);
            tweaked[flip] = -&tweaked[flip];
            prop_assert_eq!(is_lattice_basis(&tweaked).unwrap(), base);
        }
    }
}
