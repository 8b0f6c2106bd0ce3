//! Restricted root systems, the bases `{f_i}` / `{g_i}`, the finite
//! restricted Weyl group `W^1`, dominance and the chamber `C^+`.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * `f_i` is the negative of the `i`-th simple restricted root and `-g_i`
//!   is the `i`-th fundamental weight of the reduced root system sharing a
//!   basis with the (possibly non-reduced) restricted system. The Cartan
//!   matrix `A` of that reduced system is the basis change `f_i = sum_j
//!   A[j][i] g_j`, so the "dotted" coordinates of `m = sum x_i f_i` are
//!   `x-dot = A x`.
//! * `m` is dominant iff every dotted coordinate is `<= 0` (the chamber is
//!   `C^+ = sigma(-g_1..-g_l)`), regular iff every one is `< 0`.
//! * `W^1` acts on `M` by `s_j(m) = m - x-dot_j(m) f_j`; the action on `N`
//!   is contragredient, pinned by `<w m, w n> = <m, n>`.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use crate::lattice::{MVec, NVec};
use crate::linalg::{self, IntMat, RatMat};
use crate::rat::{Int, Rat};
use crate::{Caps, Error, Result};

#[derive(Clone, Debug)]
pub struct RestrictedRootSystem {
    pub label: String,
    pub rank: usize,
    /// Cartan matrix of the reduced subsystem sharing a basis with the
    /// restricted system (for `BC_r` this is the `B_r` matrix).
    pub cartan: IntMat,
    cartan_inv: RatMat,
}

impl RestrictedRootSystem {
    pub fn new(label: impl Into<String>, cartan: IntMat) -> Result<Self> {
        let rank = cartan.len();
        if rank == 0 || cartan.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidInput("Cartan matrix must be square and non-empty".into()));
        }
        let two = Int::from(2);
        for i in 0..rank {
            if cartan[i][i] != two {
                return Err(Error::InvalidInput("Cartan diagonal must be 2".into()));
            }
            for j in 0..rank {
                if i != j && cartan[i][j].is_positive() {
                    return Err(Error::InvalidInput(
                        "Cartan off-diagonal entries must be non-positive".into(),
                    ));
                }
            }
        }
        let cartan_inv = linalg::inverse_rat(&linalg::int_to_rat_mat(&cartan))
            .map_err(|_| Error::InvalidInput("Cartan matrix must be invertible".into()))?;
        Ok(RestrictedRootSystem { label: label.into(), rank, cartan, cartan_inv })
    }

    /// Built-in catalog: `A1..A4`, `B2..B4`, `C2..C4`, `D4`, `BC1..BC4`,
    /// `G2`, `F4` and `x`-separated products such as `A1xA2`.
    pub fn from_label(label: &str) -> Result<Self> {
        let parts: Vec<&str> = label.split(['x', 'X']).collect();
        if parts.len() > 1 {
            let mut blocks = Vec::new();
            for p in &parts {
                blocks.push(Self::from_label(p)?);
            }
            let rank: usize = blocks.iter().map(|b| b.rank).sum();
            let mut cartan = vec![vec![Int::zero(); rank]; rank];
            let mut off = 0;
            for b in &blocks {
                for i in 0..b.rank {
                    for j in 0..b.rank {
                        cartan[off + i][off + j] = b.cartan[i][j].clone();
                    }
                }
                off += b.rank;
            }
            return Self::new(label.to_uppercase().replace('X', "x"), cartan);
        }
        let up = label.trim().to_uppercase();
        let (family, rank_str) = up.split_at(up.find(|c: char| c.is_ascii_digit()).ok_or_else(
            || Error::InvalidInput(format!("unknown root system label {label:?}")),
        )?);
        let l: usize = rank_str
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad rank in label {label:?}")))?;
        let cartan = match (family, l) {
            ("A", 1..=4) => cartan_a(l),
            ("B", 2..=4) => cartan_b(l),
            ("C", 2..=4) => cartan_c(l),
            ("D", 4) => cartan_d4(),
            // Same Weyl group and dominance as B_l; the non-reduced doubling
            // only changes the spherical lattice configuration.
            ("BC", 1) => cartan_a(1),
            ("BC", 2..=4) => cartan_b(l),
            ("G", 2) => vec![
                vec![Int::from(2), Int::from(-1)],
                vec![Int::from(-3), Int::from(2)],
            ],
            ("F", 4) => vec![
                vec![Int::from(2), Int::from(-1), Int::from(0), Int::from(0)],
                vec![Int::from(-1), Int::from(2), Int::from(-2), Int::from(0)],
                vec![Int::from(0), Int::from(-1), Int::from(2), Int::from(-1)],
                vec![Int::from(0), Int::from(0), Int::from(-1), Int::from(2)],
            ],
            _ => return Err(Error::InvalidInput(format!("unknown root system label {label:?}"))),
        };
        Self::new(up, cartan)
    }

    /// Dotted coordinates of `m`: the coefficients of `m` in the `g`-basis,
    /// `x-dot = A x`.
    pub fn dotted_coords(&self, m: &MVec) -> Result<Vec<Rat>> {
        if m.len() != self.rank {
            return Err(Error::DimensionMismatch("dotted_coords: wrong length".into()));
        }
        Ok(linalg::mat_vec_rat(&linalg::int_to_rat_mat(&self.cartan), &m.0))
    }

    /// `g_j` written in `f`-coordinates (column `j` of the inverse Cartan).
    pub fn g_basis_vector(&self, j: usize) -> MVec {
        MVec((0..self.rank).map(|i| self.cartan_inv[i][j].clone()).collect())
    }

    /// Matrix of `s_j` on `f`-coordinates: `m - x-dot_j(m) f_j`.
    pub fn simple_reflection(&self, j: usize) -> Result<IntMat> {
        if j >= self.rank {
            return Err(Error::InvalidInput(format!("reflection index {j} out of range")));
        }
        let mut s = linalg::identity_int(self.rank);
        for k in 0..self.rank {
            let d = &s[j][k] - &self.cartan[j][k];
            s[j][k] = d;
        }
        Ok(s)
    }

    pub fn is_dominant(&self, m: &MVec) -> Result<bool> {
        Ok(self.dotted_coords(m)?.iter().all(|x| !x.is_positive()))
    }

    pub fn is_regular(&self, m: &MVec) -> Result<bool> {
        Ok(self.dotted_coords(m)?.iter().all(|x| x.is_negative()))
    }

    /// Applies simple reflections at positive dotted coordinates (smallest
    /// index first) until `m` becomes dominant; returns the group element
    /// achieving it together with the dominant representative.
    pub fn dominant_representative(&self, m: &MVec) -> Result<(WeylElement, MVec)> {
        let mut w = WeylElement::identity(self.rank);
        let mut cur = m.clone();
        // Bounded by the longest-element length; the generous cap only trips
        // on a broken Cartan input.
        let cap = 10_000usize;
        for _ in 0..cap {
            let dotted = self.dotted_coords(&cur)?;
            match dotted.iter().position(|x| x.is_positive()) {
                None => return Ok((w, cur)),
                Some(j) => {
                    let s = self.weyl_generator(j)?;
                    cur = s.apply_m(&cur);
                    w = s.compose(&w);
                }
            }
        }
        Err(Error::InvariantBreach("dominant_representative did not terminate".into()))
    }

    pub fn weyl_generator(&self, j: usize) -> Result<WeylElement> {
        let m_mat = self.simple_reflection(j)?;
        let n_mat = linalg::mat_transpose_int(&m_mat);
        Ok(WeylElement { m_mat, n_mat })
    }

    /// Breadth-first closure of the simple reflections.
    pub fn generate_weyl_group(&self, caps: &Caps) -> Result<WeylGroup> {
        let gens: Vec<WeylElement> =
            (0..self.rank).map(|j| self.weyl_generator(j)).collect::<Result<_>>()?;
        let mut seen: HashSet<IntMat> = HashSet::new();
        let id = WeylElement::identity(self.rank);
        seen.insert(id.m_mat.clone());
        let mut elements = vec![id];
        let mut frontier = 0;
        while frontier < elements.len() {
            let cur = elements[frontier].clone();
            frontier += 1;
            for g in &gens {
                let next = g.compose(&cur);
                if seen.insert(next.m_mat.clone()) {
                    if elements.len() >= caps.weyl_elements {
                        return Err(Error::CapExceeded(format!(
                            "Weyl group larger than {}",
                            caps.weyl_elements
                        )));
                    }
                    elements.push(next);
                }
            }
        }
        Ok(WeylGroup { rank: self.rank, generators: gens, elements })
    }
}

fn cartan_a(l: usize) -> IntMat {
    let mut a = linalg::identity_int(l);
    for i in 0..l {
        a[i][i] = Int::from(2);
        if i + 1 < l {
            a[i][i + 1] = Int::from(-1);
            a[i + 1][i] = Int::from(-1);
        }
    }
    a
}

fn cartan_b(l: usize) -> IntMat {
    let mut a = cartan_a(l);
    // Last simple root short: <alpha_{l-1}, alpha_l-check> = -2.
    a[l - 1][l - 2] = Int::from(-2);
    a
}

fn cartan_c(l: usize) -> IntMat {
    let mut a = cartan_a(l);
    a[l - 2][l - 1] = Int::from(-2);
    a
}

fn cartan_d4() -> IntMat {
    let m = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]];
    m.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()
}

/// One element of `W^1`, acting on `M` (f-coordinates) and on `N`
/// (contragredient matrix).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub m_mat: IntMat,
    pub n_mat: IntMat,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement { m_mat: linalg::identity_int(rank), n_mat: linalg::identity_int(rank) }
    }

    pub fn is_identity(&self) -> bool {
        self.m_mat == linalg::identity_int(self.m_mat.len())
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            m_mat: linalg::mat_mul_int(&self.m_mat, &other.m_mat),
            n_mat: linalg::mat_mul_int(&self.n_mat, &other.n_mat),
        }
    }

    pub fn apply_m(&self, m: &MVec) -> MVec {
        MVec(linalg::mat_vec_rat(&linalg::int_to_rat_mat(&self.m_mat), &m.0))
    }

    pub fn apply_n(&self, n: &NVec) -> NVec {
        NVec(linalg::mat_vec_int(&self.n_mat, &n.0))
    }
}

/// The full restricted Weyl group, enumerated.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub rank: usize,
    pub generators: Vec<WeylElement>,
    pub elements: Vec<WeylElement>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// A lattice `Lambda_X` in `M_R` containing `M`, given by `l` generators in
/// f-coordinates. Supplied as configuration; never derived from an
/// involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalLattice {
    pub generators: Vec<MVec>,
    inv: RatMat,
}

impl SphericalLattice {
    pub fn new(generators: Vec<MVec>) -> Result<Self> {
        let l = generators.len();
        if l == 0 || generators.iter().any(|g| g.len() != l) {
            return Err(Error::InvalidInput("lattice needs l generators of length l".into()));
        }
        // Columns are the generators.
        let mat: RatMat = (0..l)
            .map(|i| (0..l).map(|j| generators[j].0[i].clone()).collect())
            .collect();
        let inv = linalg::inverse_rat(&mat)
            .map_err(|_| Error::InvalidInput("lattice generators must be independent".into()))?;
        let lat = SphericalLattice { generators, inv };
        // M must be a finite-index sublattice.
        for i in 0..l {
            if !lat.contains(&MVec::unit(l, i)) {
                return Err(Error::InvalidInput(
                    "lattice must contain M (all f-basis vectors)".into(),
                ));
            }
        }
        Ok(lat)
    }

    /// The lattice `M` itself (pure-toric mode).
    pub fn standard(l: usize) -> Self {
        let gens = (0..l).map(|i| MVec::unit(l, i)).collect();
        Self::new(gens).expect("standard lattice is valid")
    }

    /// Default spherical configuration: the lattice spanned by the `g_i`.
    pub fn default_for(rs: &RestrictedRootSystem) -> Self {
        let gens = (0..rs.rank).map(|j| rs.g_basis_vector(j)).collect();
        Self::new(gens).expect("g-basis lattice is valid")
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn contains(&self, m: &MVec) -> bool {
        if m.len() != self.rank() {
            return false;
        }
        linalg::mat_vec_rat(&self.inv, &m.0).iter().all(|x| x.is_integer())
    }

    /// All dotted coordinates of all generators must be integral for the
    /// Weyl group to preserve cosets of `M` inside `Lambda_X`.
    pub fn weyl_compatible(&self, rs: &RestrictedRootSystem) -> Result<bool> {
        for g in &self.generators {
            if !rs.dotted_coords(g)?.iter().all(|x| x.is_integer()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
