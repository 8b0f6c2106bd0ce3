//! Simplicial cones and fans in `N`, supported in the orthant
//! `sigma(e_1..e_l)` or complete, with exact validity, properness and
//! smoothness tests, star subdivision and Weyl symmetrization.
//!
//! Fans are stored by their maximal cones over a canonical ray table; since
//! every cone is simplicial, the face closure is exactly the set of subsets
//! of the maximal ray sets and never needs to be materialized.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::lattice::NVec;
use crate::linalg::{self, IntMat, RatMat};
use crate::rat::{Int, Rat};
use crate::roots::WeylGroup;
use crate::{Error, Result};

/// A pointed simplicial rational cone, given by its primitive extreme rays.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    pub rays: Vec<NVec>,
}

impl Cone {
    pub fn new(mut rays: Vec<NVec>) -> Result<Self> {
        if rays.iter().any(|r| r.is_zero()) {
            return Err(Error::InvalidInput("cone rays must be nonzero".into()));
        }
        if rays.iter().any(|r| !r.is_primitive()) {
            return Err(Error::InvalidInput("cone rays must be primitive".into()));
        }
        rays.sort();
        rays.dedup();
        let mat: RatMat = rays.iter().map(|r| r.to_rat()).collect();
        if linalg::rank_rat(&mat) != rays.len() {
            return Err(Error::InvalidInput("cone rays must be linearly independent".into()));
        }
        Ok(Cone { rays })
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    pub fn ambient_rank(&self) -> usize {
        self.rays.first().map(|r| r.len()).unwrap_or(0)
    }

    fn geometry(&self) -> ConeGeometry {
        let k = self.dim();
        let l = self.ambient_rank();
        // Rows of `rays_rows` are the rays; functionals pair against them.
        let rays_rows: RatMat = self.rays.iter().map(|r| r.to_rat()).collect();
        let equalities = linalg::kernel_rat(&rays_rows);
        // Left-inverse functionals: lambda_i(ray_j) = delta_ij on the span,
        // lambda = (R^T R)^{-1} R^T with R the column matrix of rays.
        let mut gram = vec![vec![Rat::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                gram[i][j] = (0..l)
                    .map(|t| &rays_rows[i][t] * &rays_rows[j][t])
                    .sum();
            }
        }
        let gram_inv = linalg::inverse_rat(&gram).expect("Gram matrix of independent rays");
        let mut functionals = vec![vec![Rat::zero(); l]; k];
        for i in 0..k {
            for t in 0..l {
                functionals[i][t] = (0..k).map(|j| &gram_inv[i][j] * &rays_rows[j][t]).sum();
            }
        }
        ConeGeometry { equalities, functionals }
    }

    /// Exact membership `v` in the cone.
    pub fn contains(&self, v: &NVec) -> bool {
        self.contains_rat(&v.to_rat())
    }

    pub(crate) fn contains_rat(&self, v: &[Rat]) -> bool {
        let geom = self.geometry();
        for eq in &geom.equalities {
            let s: Rat = eq.iter().zip(v).map(|(a, b)| a * b).sum();
            if !s.is_zero() {
                return false;
            }
        }
        geom.functionals.iter().all(|f| {
            let s: Rat = f.iter().zip(v).map(|(a, b)| a * b).sum();
            !s.is_negative()
        })
    }

    /// Extreme rays of the intersection of two cones, as primitive vectors.
    /// Returns `None` when the intersection is not pointed (cannot happen
    /// for cones of a genuine fan).
    pub fn intersection_rays(&self, other: &Cone) -> Option<Vec<NVec>> {
        let l = self.ambient_rank();
        let g1 = self.geometry();
        let g2 = other.geometry();
        let mut equalities = g1.equalities.clone();
        equalities.extend(g2.equalities.clone());
        let kernel = if equalities.is_empty() {
            (0..l)
                .map(|j| {
                    (0..l)
                        .map(|i| if i == j { Rat::from_integer(Int::from(1)) } else { Rat::zero() })
                        .collect()
                })
                .collect::<Vec<Vec<Rat>>>()
        } else {
            linalg::kernel_rat(&equalities)
        };
        let d = kernel.len();
        if d == 0 {
            return Some(Vec::new());
        }
        let mut g: RatMat = Vec::new();
        for f in g1.functionals.iter().chain(g2.functionals.iter()) {
            g.push(
                (0..d)
                    .map(|c| f.iter().zip(&kernel[c]).map(|(a, b)| a * b).sum())
                    .collect(),
            );
        }
        // Lineality inside the common span means a non-pointed intersection.
        if !linalg::kernel_rat(&g).is_empty() {
            return None;
        }
        let mut rays: BTreeSet<NVec> = BTreeSet::new();
        for subset in linalg::combinations(g.len(), d - 1) {
            let sub: RatMat = subset.iter().map(|&i| g[i].clone()).collect();
            let ker = if sub.is_empty() {
                if d == 1 {
                    vec![vec![Rat::from_integer(Int::from(1))]]
                } else {
                    continue;
                }
            } else {
                linalg::kernel_rat(&sub)
            };
            if ker.len() != 1 {
                continue;
            }
            for dir in [1i64, -1] {
                let u: Vec<Rat> = ker[0]
                    .iter()
                    .map(|x| x * Rat::from_integer(Int::from(dir)))
                    .collect();
                let feasible = g.iter().all(|row| {
                    let s: Rat = row.iter().zip(&u).map(|(a, b)| a * b).sum();
                    !s.is_negative()
                });
                if feasible {
                    let amb: Vec<Rat> = (0..l)
                        .map(|i| (0..d).map(|c| &kernel[c][i] * &u[c]).sum())
                        .collect();
                    if let Some(nv) = rat_dir_to_primitive(&amb) {
                        rays.insert(nv);
                    }
                }
            }
        }
        Some(rays.into_iter().collect())
    }
}

struct ConeGeometry {
    /// Rows spanning the annihilator of the cone's span.
    equalities: RatMat,
    /// Dual coordinates on the span: functional `i` is 1 on ray `i`, 0 on
    /// the others.
    functionals: RatMat,
}

/// Clears denominators and divides by the gcd; `None` for the zero vector.
fn rat_dir_to_primitive(v: &[Rat]) -> Option<NVec> {
    let mut lcm = Int::from(1);
    for x in v {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let nv = NVec(ints);
    if nv.is_zero() {
        None
    } else {
        Some(nv.primitive())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FanKind {
    Open,
    Complete,
}

/// Validation outcome; an empty violation list means the fan is well formed.
#[derive(Clone, Debug, Default)]
pub struct FanReport {
    pub violations: Vec<String>,
}

impl FanReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A simplicial fan over a canonical ray table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub rank: usize,
    pub rays: Vec<NVec>,
    /// Sorted ray-index sets of the maximal cones, canonically ordered.
    pub max_cones: Vec<Vec<usize>>,
    pub kind: FanKind,
}

impl Fan {
    /// Builds and fully validates a fan.
    pub fn new(rank: usize, rays: Vec<NVec>, max_cones: Vec<Vec<usize>>, kind: FanKind) -> Result<Fan> {
        let fan = Self::new_unchecked(rank, rays, max_cones, kind)?;
        let report = fan.validate();
        if !report.is_valid() {
            return Err(Error::InvalidFan(report.violations.join("; ")));
        }
        Ok(fan)
    }

    /// Builds the canonical representation without running the validity
    /// oracle (used by `validate-fan` style reporting).
    pub fn new_unchecked(
        rank: usize,
        rays: Vec<NVec>,
        max_cones: Vec<Vec<usize>>,
        kind: FanKind,
    ) -> Result<Fan> {
        if rays.iter().any(|r| r.len() != rank) {
            return Err(Error::DimensionMismatch("ray length differs from fan rank".into()));
        }
        for c in &max_cones {
            if c.iter().any(|&i| i >= rays.len()) {
                return Err(Error::InvalidInput("max cone references a missing ray".into()));
            }
        }
        // Canonical order: sort rays, remap indices, sort each cone, sort
        // the cone list.
        let mut order: Vec<usize> = (0..rays.len()).collect();
        order.sort_by(|&a, &b| rays[a].cmp(&rays[b]));
        let mut remap = vec![0usize; rays.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let sorted_rays: Vec<NVec> = order.iter().map(|&i| rays[i].clone()).collect();
        let mut cones: Vec<Vec<usize>> = max_cones
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.iter().map(|&i| remap[i]).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        cones.sort();
        cones.dedup();
        Ok(Fan { rank, rays: sorted_rays, max_cones: cones, kind })
    }

    pub fn cone(&self, idx: &[usize]) -> Cone {
        Cone { rays: idx.iter().map(|&i| self.rays[i].clone()).collect() }
    }

    pub fn ray_index(&self, ray: &NVec) -> Option<usize> {
        self.rays.iter().position(|r| r == ray)
    }

    /// Distinct `d`-dimensional cones as sorted ray-index sets (faces of the
    /// maximal cones; valid because all cones are simplicial).
    pub fn cones_of_dim(&self, d: usize) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in &self.max_cones {
            if c.len() < d {
                continue;
            }
            for subset in linalg::combinations(c.len(), d) {
                out.insert(subset.iter().map(|&i| c[i]).collect());
            }
        }
        out.into_iter().collect()
    }

    /// True when the index set spans a face of some cone of the fan.
    pub fn has_face(&self, idx: &[usize]) -> bool {
        let set: BTreeSet<usize> = idx.iter().copied().collect();
        self.max_cones
            .iter()
            .any(|c| set.iter().all(|i| c.contains(i)))
    }

    /// Checks every structural fan invariant and reports all violations.
    pub fn validate(&self) -> FanReport {
        let mut report = FanReport::default();
        let mut seen = BTreeSet::new();
        for (i, r) in self.rays.iter().enumerate() {
            if r.is_zero() {
                report.violations.push(format!("ray {i} is zero"));
            } else if !r.is_primitive() {
                report.violations.push(format!("ray {i} = {r:?} is not primitive"));
            }
            if !seen.insert(r.clone()) {
                report.violations.push(format!("duplicate ray {r:?}"));
            }
            if self.kind == FanKind::Open && !r.in_orthant() {
                report
                    .violations
                    .push(format!("open fan has ray {r:?} outside the positive orthant"));
            }
        }
        if self.max_cones.is_empty() {
            report.violations.push("fan has no maximal cones".into());
        }
        let mut cones: Vec<Cone> = Vec::new();
        for (ci, c) in self.max_cones.iter().enumerate() {
            let cone = self.cone(c);
            let mat: RatMat = cone.rays.iter().map(|r| r.to_rat()).collect();
            if linalg::rank_rat(&mat) != cone.rays.len() {
                report
                    .violations
                    .push(format!("maximal cone {ci} is not simplicial (dependent rays)"));
            }
            cones.push(cone);
        }
        for i in 0..self.max_cones.len() {
            for j in i + 1..self.max_cones.len() {
                let a: BTreeSet<usize> = self.max_cones[i].iter().copied().collect();
                let b: BTreeSet<usize> = self.max_cones[j].iter().copied().collect();
                if a.is_subset(&b) || b.is_subset(&a) {
                    report
                        .violations
                        .push(format!("maximal cone {i} is contained in maximal cone {j}"));
                    continue;
                }
                match cones[i].intersection_rays(&cones[j]) {
                    None => report.violations.push(format!(
                        "intersection of maximal cones {i} and {j} is not pointed"
                    )),
                    Some(rays) => {
                        let ok = rays.iter().all(|r| {
                            cones[i].rays.contains(r) && cones[j].rays.contains(r)
                        });
                        if !ok {
                            report.violations.push(format!(
                                "intersection of maximal cones {i} and {j} is not a common face"
                            ));
                        }
                    }
                }
            }
        }
        if self.kind == FanKind::Complete && report.is_valid() && !self.support_is_complete() {
            report
                .violations
                .push("complete fan's maximal cones do not cover N_R".into());
        }
        report
    }

    /// Every facet of every maximal cone, with the list of maximal cones it
    /// belongs to.
    fn facet_incidence(&self) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut map: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, c) in self.max_cones.iter().enumerate() {
            if c.is_empty() {
                continue;
            }
            for drop in 0..c.len() {
                let facet: Vec<usize> =
                    c.iter().enumerate().filter(|&(k, _)| k != drop).map(|(_, &v)| v).collect();
                map.entry(facet).or_default().push(ci);
            }
        }
        map
    }

    fn all_max_cones_full_dim(&self) -> bool {
        self.max_cones.iter().all(|c| c.len() == self.rank)
    }

    /// Exact test: the union of the maximal cones is all of `N_R`.
    fn support_is_complete(&self) -> bool {
        if self.max_cones.is_empty() || !self.all_max_cones_full_dim() {
            return false;
        }
        self.facet_incidence().values().all(|cones| cones.len() == 2)
    }

    /// Exact test: the union of the maximal cones equals the orthant
    /// `sigma(e_1..e_l)`. Interior facets must be shared by exactly two
    /// maximal cones; free facets must lie in a coordinate hyperplane.
    pub fn is_proper_over_orthant(&self) -> Result<bool> {
        if self.kind != FanKind::Open {
            return Err(Error::Unsupported("properness test needs an open fan".into()));
        }
        if self.max_cones.is_empty() || !self.all_max_cones_full_dim() {
            return Ok(false);
        }
        if self.rays.iter().any(|r| !r.in_orthant()) {
            return Ok(false);
        }
        for (facet, cones) in self.facet_incidence() {
            match cones.len() {
                2 => {}
                1 => {
                    // Free facet: all rays must share a vanishing coordinate.
                    let on_boundary = (0..self.rank).any(|coord| {
                        facet.iter().all(|&ri| self.rays[ri].0[coord].is_zero())
                    });
                    if !on_boundary {
                        return Ok(false);
                    }
                }
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Smoothness: the rays of every maximal cone extend to a `Z`-basis of
    /// `N` (for full-dimensional cones: determinant `+-1`; in general all
    /// elementary divisors are 1, tested through gcds of maximal minors).
    pub fn is_smooth(&self) -> Result<bool> {
        for c in &self.max_cones {
            let k = c.len();
            let rows: IntMat = c.iter().map(|&i| self.rays[i].0.clone()).collect();
            let mut g = Int::zero();
            for cols in linalg::combinations(self.rank, k) {
                let minor: IntMat = rows
                    .iter()
                    .map(|r| cols.iter().map(|&j| r[j].clone()).collect())
                    .collect();
                g = num_integer::gcd(g, linalg::det_int(&minor)?.abs());
                if g == Int::from(1) {
                    break;
                }
            }
            if g != Int::from(1) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Star subdivision at the face spanned by `gamma` (given by ray
    /// indices): inserts the primitive ray through the sum of the face's
    /// rays and re-tiles every maximal cone containing the face.
    pub fn star_subdivision(&self, gamma: &[usize]) -> Result<Fan> {
        let mut g: Vec<usize> = gamma.to_vec();
        g.sort_unstable();
        g.dedup();
        if g.len() < 2 {
            return Err(Error::InvalidInput("star subdivision needs a face of dimension >= 2".into()));
        }
        if !self.has_face(&g) {
            return Err(Error::InvalidInput("subdivision face is not a cone of the fan".into()));
        }
        let mut sum = NVec::zero(self.rank);
        for &i in &g {
            sum = &sum + &self.rays[i];
        }
        let new_ray = sum.primitive();
        if self.rays.contains(&new_ray) {
            return Err(Error::InvalidInput("subdivision ray already present in the fan".into()));
        }
        let mut rays = self.rays.clone();
        rays.push(new_ray);
        let new_idx = rays.len() - 1;
        let mut cones = Vec::new();
        for c in &self.max_cones {
            if g.iter().all(|i| c.contains(i)) {
                for &drop in &g {
                    let mut replaced: Vec<usize> =
                        c.iter().copied().filter(|&i| i != drop).collect();
                    replaced.push(new_idx);
                    cones.push(replaced);
                }
            } else {
                cones.push(c.clone());
            }
        }
        Fan::new(self.rank, rays, cones, self.kind)
    }

    /// The complete fan `{w . gamma : w in W, gamma in Delta}`; the input
    /// must be open and proper over the orthant, which is the fundamental
    /// chamber of the contragredient `W`-action on `N`.
    pub fn symmetrize(&self, w: &WeylGroup) -> Result<Fan> {
        if w.rank != self.rank {
            return Err(Error::DimensionMismatch("Weyl group rank differs from fan rank".into()));
        }
        if !self.is_proper_over_orthant()? {
            return Err(Error::Unsupported(
                "symmetrize needs a fan proper over the orthant".into(),
            ));
        }
        let mut rays: Vec<NVec> = Vec::new();
        let mut ray_idx: BTreeMap<NVec, usize> = BTreeMap::new();
        let mut cones: BTreeSet<Vec<usize>> = BTreeSet::new();
        for el in &w.elements {
            for c in &self.max_cones {
                let mut image = Vec::with_capacity(c.len());
                for &i in c {
                    let r = el.apply_n(&self.rays[i]);
                    debug_assert!(r.is_primitive());
                    let idx = *ray_idx.entry(r.clone()).or_insert_with(|| {
                        rays.push(r);
                        rays.len() - 1
                    });
                    image.push(idx);
                }
                image.sort_unstable();
                cones.insert(image);
            }
        }
        Fan::new(self.rank, rays, cones.into_iter().collect(), FanKind::Complete)
    }

    /// The star fan of a ray: the images in `N / Z rho(tau)` of all cones
    /// containing the ray, together with the projection used to compute
    /// them.
    pub fn star_fan(&self, tau: usize) -> Result<StarFan> {
        if tau >= self.rays.len() {
            return Err(Error::InvalidInput("star_fan: no such ray".into()));
        }
        if self.rank < 2 {
            return Err(Error::Unsupported("star_fan needs ambient rank >= 2".into()));
        }
        let rho = &self.rays[tau];
        // For a unit ray the quotient is plain coordinate deletion, which
        // keeps boundary star fans inside the quotient orthant; otherwise
        // complete the primitive ray to a basis.
        let unit_pos = (0..self.rank).find(|&i| *rho == NVec::unit(self.rank, i));
        let proj: IntMat = if let Some(p) = unit_pos {
            (0..self.rank)
                .filter(|&r| r != p)
                .map(|r| {
                    (0..self.rank)
                        .map(|c| if c == r { Int::from(1) } else { Int::zero() })
                        .collect()
                })
                .collect()
        } else {
            let basis = linalg::complete_to_basis(&rho.0)?;
            let inv = linalg::inverse_rat(&linalg::int_to_rat_mat(&basis))?;
            // Rows 1..l of basis^{-1} (integral since the basis is
            // unimodular).
            (1..self.rank)
                .map(|r| {
                    inv[r]
                        .iter()
                        .map(|x| {
                            debug_assert!(x.is_integer());
                            x.to_integer()
                        })
                        .collect()
                })
                .collect()
        };
        let project = |n: &NVec| NVec(linalg::mat_vec_int(&proj, &n.0));
        let mut rays: Vec<NVec> = Vec::new();
        let mut sources: Vec<usize> = Vec::new();
        let mut ray_idx: BTreeMap<NVec, usize> = BTreeMap::new();
        let mut cones: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut touched = false;
        for c in &self.max_cones {
            if !c.contains(&tau) {
                continue;
            }
            touched = true;
            let mut image = Vec::new();
            for &i in c {
                if i == tau {
                    continue;
                }
                let r = project(&self.rays[i]).primitive();
                let idx = *ray_idx.entry(r.clone()).or_insert_with(|| {
                    rays.push(r);
                    sources.push(i);
                    rays.len() - 1
                });
                image.push(idx);
            }
            image.sort_unstable();
            cones.insert(image);
        }
        if !touched {
            return Err(Error::InvalidInput("ray is not used by any maximal cone".into()));
        }
        let cones: Vec<Vec<usize>> = cones.into_iter().collect();
        // Classify the quotient fan: complete when every facet pairs up,
        // otherwise the support must land in the quotient orthant.
        let probe =
            Fan::new_unchecked(self.rank - 1, rays.clone(), cones.clone(), FanKind::Complete)?;
        let fan = if probe.validate().is_valid() {
            probe
        } else {
            Fan::new(self.rank - 1, rays, cones, FanKind::Open).map_err(|e| {
                Error::Unsupported(format!(
                    "star fan support is neither complete nor inside the quotient orthant: {e}"
                ))
            })?
        };
        Ok(StarFan { ray: tau, projection: proj, fan, ray_sources: sources })
    }
}

/// Quotient description of the star of a ray.
#[derive(Clone, Debug)]
pub struct StarFan {
    /// Index of the ray in the ambient fan.
    pub ray: usize,
    /// Integer matrix `(l-1) x l` projecting `N` onto `N / Z rho(tau)`.
    pub projection: IntMat,
    pub fan: Fan,
    /// For each star-fan ray, the index of an ambient ray mapping onto it.
    pub ray_sources: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::roots::RestrictedRootSystem;
    use crate::Caps;

    fn nv(xs: &[i64]) -> NVec {
        NVec::from_ints(xs)
    }

    pub(crate) fn blowup2() -> Fan {
        catalog::fan_ex1(2, 2).unwrap()
    }

    #[test]
    fn chamber_fan_is_valid_and_proper() {
        let f = catalog::fan_chamber(2).unwrap();
        assert!(f.validate().is_valid());
        assert!(f.is_proper_over_orthant().unwrap());
        assert!(f.is_smooth().unwrap());
    }

    #[test]
    fn overlapping_cones_are_rejected() {
        let rays = vec![nv(&[1, 0]), nv(&[0, 1]), nv(&[1, 1]), nv(&[1, -1])];
        let fan = Fan::new_unchecked(
            2,
            rays,
            vec![vec![0, 1], vec![2, 3]],
            FanKind::Open,
        )
        .unwrap();
        let report = fan.validate();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.contains("not a common face")));
    }

    #[test]
    fn tangent_lower_dimensional_intersection_is_caught() {
        // Two 2-cones in rank 3 meeting in a ray interior to both: invalid.
        let rays = vec![nv(&[1, 0, 0]), nv(&[0, 1, 0]), nv(&[1, 1, 1]), nv(&[1, 1, -1])];
        let fan =
            Fan::new_unchecked(3, rays, vec![vec![0, 1], vec![2, 3]], FanKind::Open).unwrap();
        assert!(!fan.validate().is_valid());
    }

    #[test]
    fn blowup_fan_is_valid_proper_smooth() {
        let f = blowup2();
        assert!(f.validate().is_valid());
        assert!(f.is_proper_over_orthant().unwrap());
        assert!(f.is_smooth().unwrap());
        assert_eq!(f.max_cones.len(), 2);
        assert_eq!(f.rays.len(), 3);
    }

    #[test]
    fn missing_piece_is_not_proper() {
        let rays = vec![nv(&[1, 0]), nv(&[1, 1])];
        let fan = Fan::new(2, rays, vec![vec![0, 1]], FanKind::Open).unwrap();
        assert!(!fan.is_proper_over_orthant().unwrap());
    }

    #[test]
    fn singular_cone_detected() {
        let rays = vec![nv(&[1, 0]), nv(&[1, 2])];
        let fan = Fan::new(2, rays, vec![vec![0, 1]], FanKind::Open).unwrap();
        assert!(!fan.is_smooth().unwrap());
    }

    #[test]
    fn star_subdivision_of_chamber() {
        let f = catalog::fan_chamber(2).unwrap();
        let sub = f.star_subdivision(&[0, 1]).unwrap();
        assert_eq!(sub.rays.len(), 3);
        assert_eq!(sub.max_cones.len(), 2);
        assert!(sub.rays.contains(&nv(&[1, 1])));
        assert!(sub.is_proper_over_orthant().unwrap());
        assert!(sub.is_smooth().unwrap());
    }

    #[test]
    fn iterated_subdivision_produces_chain_rays() {
        // ex3_1 pattern: v_i = i(e_1 + .. + e_{l-1}) + e_l.
        let f = catalog::fan_ex3_1(3, 2).unwrap();
        assert!(f.rays.contains(&nv(&[1, 1, 1])));
        assert!(f.rays.contains(&nv(&[2, 2, 1])));
        assert!(f.is_proper_over_orthant().unwrap());
        assert!(f.is_smooth().unwrap());
        let g = catalog::fan_ex3_2(3, 1).unwrap();
        assert!(g.rays.contains(&nv(&[1, 2, 2])));
        assert!(g.is_proper_over_orthant().unwrap());
    }

    #[test]
    fn symmetrize_counts_chambers() {
        let caps = Caps::default();
        let chamber = catalog::fan_chamber(2).unwrap();
        let a1a1 = RestrictedRootSystem::from_label("A1xA1")
            .unwrap()
            .generate_weyl_group(&caps)
            .unwrap();
        let c = chamber.symmetrize(&a1a1).unwrap();
        assert_eq!(c.max_cones.len(), 4);
        assert!(c.validate().is_valid());

        let a2 = RestrictedRootSystem::from_label("A2")
            .unwrap()
            .generate_weyl_group(&caps)
            .unwrap();
        let c2 = chamber.symmetrize(&a2).unwrap();
        assert_eq!(c2.max_cones.len(), 6);

        let blow = blowup2();
        let c3 = blow.symmetrize(&a1a1).unwrap();
        assert_eq!(c3.max_cones.len(), 8);

        let g2 = RestrictedRootSystem::from_label("G2")
            .unwrap()
            .generate_weyl_group(&caps)
            .unwrap();
        let c4 = blow.symmetrize(&g2).unwrap();
        assert_eq!(c4.max_cones.len(), 24);
        assert!(c4.validate().is_valid());
    }

    #[test]
    fn symmetrize_restricts_back_to_input() {
        let caps = Caps::default();
        let blow = blowup2();
        let w = RestrictedRootSystem::from_label("B2")
            .unwrap()
            .generate_weyl_group(&caps)
            .unwrap();
        let c = blow.symmetrize(&w).unwrap();
        // Cones of the complete fan lying inside the orthant are exactly the
        // input's maximal cones.
        let orthant = catalog::fan_chamber(2).unwrap().cone(&[0, 1]);
        let inside: BTreeSet<Vec<NVec>> = c
            .max_cones
            .iter()
            .map(|idx| c.cone(idx).rays)
            .filter(|rays| rays.iter().all(|r| orthant.contains(r)))
            .collect();
        let original: BTreeSet<Vec<NVec>> =
            blow.max_cones.iter().map(|idx| blow.cone(idx).rays).collect();
        assert_eq!(inside, original);
        // Chamber-count identity when the chamber action is simply
        // transitive.
        assert_eq!(c.max_cones.len(), w.order() * blow.max_cones.len());
    }

    #[test]
    fn star_fan_shapes() {
        let blow = blowup2();
        let diag = blow.ray_index(&nv(&[1, 1])).unwrap();
        let star = blow.star_fan(diag).unwrap();
        assert_eq!(star.fan.rank, 1);
        assert_eq!(star.fan.rays.len(), 2);
        assert_eq!(star.fan.kind, FanKind::Complete);

        let chamber = catalog::fan_chamber(2).unwrap();
        let e1 = chamber.ray_index(&nv(&[1, 0])).unwrap();
        let star2 = chamber.star_fan(e1).unwrap();
        assert_eq!(star2.fan.rays.len(), 1);
        assert_eq!(star2.fan.kind, FanKind::Open);

        let z2 = catalog::fan_ex3_1(3, 2).unwrap();
        let v1 = z2.ray_index(&nv(&[1, 1, 1])).unwrap();
        let star3 = z2.star_fan(v1).unwrap();
        assert_eq!(star3.fan.max_cones.len(), 4);
        assert_eq!(star3.fan.kind, FanKind::Complete);
    }
}
