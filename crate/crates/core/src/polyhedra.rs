//! Exact H-representation polyhedra in `M_R`: the polyhedron `Q_h`, the
//! polytope `P_h`, vertex enumeration by subset solving, lattice-point and
//! minimal-layer enumeration, the weight sets `Pi(Z,h)`, `Pi(Z^c,h)`,
//! `Pi(Y,h)` and face restriction to divisors.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::bundle::{CompletePLFunction, PLFunction};
use crate::lattice::{pair_unchecked, LatticeCoset, MVec, NVec};
use crate::linalg::{self, RatMat};
use crate::rat::{floor_int, Int, Rat};
use crate::roots::{RestrictedRootSystem, WeylGroup};
use crate::{Caps, Error, Result};

/// `{m : <m, normal_i> >= bound_i}` together with the coset `v + M` whose
/// lattice points are of interest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    pub normals: Vec<NVec>,
    pub bounds: Vec<Rat>,
    pub coset: LatticeCoset,
}

/// A finite set of points, all inside one coset of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePointSet {
    pub points: Vec<MVec>,
    pub coset: LatticeCoset,
}

impl LatticePointSet {
    pub fn contains(&self, m: &MVec) -> bool {
        self.points.binary_search(m).is_ok()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl HPolyhedron {
    pub fn new(normals: Vec<NVec>, bounds: Vec<Rat>, coset: LatticeCoset) -> Result<Self> {
        if normals.len() != bounds.len() {
            return Err(Error::DimensionMismatch("one bound per normal".into()));
        }
        let rank = coset.rank();
        if normals.iter().any(|n| n.len() != rank) {
            return Err(Error::DimensionMismatch("normal length differs from rank".into()));
        }
        if normals.iter().any(|n| n.is_zero()) {
            return Err(Error::InvalidInput("zero normal in H-representation".into()));
        }
        // Deduplicate exact repetitions, keeping the strongest bound for a
        // repeated normal.
        let mut seen: Vec<(NVec, Rat)> = Vec::new();
        for (n, b) in normals.into_iter().zip(bounds) {
            if let Some(entry) = seen.iter_mut().find(|(m, _)| *m == n) {
                if b > entry.1 {
                    entry.1 = b;
                }
            } else {
                seen.push((n, b));
            }
        }
        let (normals, bounds) = seen.into_iter().unzip();
        Ok(HPolyhedron { normals, bounds, coset })
    }

    pub fn rank(&self) -> usize {
        self.coset.rank()
    }

    pub fn contains(&self, m: &MVec) -> bool {
        m.len() == self.rank()
            && self
                .normals
                .iter()
                .zip(&self.bounds)
                .all(|(n, b)| pair_unchecked(m, n) >= *b)
    }

    pub fn contains_lattice_point(&self, m: &MVec) -> bool {
        self.coset.contains(m) && self.contains(m)
    }

    /// Intersection with another H-polyhedron over the same coset.
    pub fn intersect(&self, other: &HPolyhedron) -> Result<HPolyhedron> {
        if !self.coset.same_coset(&other.coset) {
            return Err(Error::InvalidInput("intersection of different cosets".into()));
        }
        let mut normals = self.normals.clone();
        normals.extend(other.normals.clone());
        let mut bounds = self.bounds.clone();
        bounds.extend(other.bounds.clone());
        HPolyhedron::new(normals, bounds, self.coset.clone())
    }

    /// `m - self`: the reflection of the polyhedron through `m/2`.
    pub fn reflected_through(&self, m: &MVec) -> Result<HPolyhedron> {
        if m.len() != self.rank() {
            return Err(Error::DimensionMismatch("reflection point length".into()));
        }
        let normals: Vec<NVec> = self.normals.iter().map(|n| -n).collect();
        let bounds: Vec<Rat> = self
            .normals
            .iter()
            .zip(&self.bounds)
            .map(|(n, b)| b - pair_unchecked(m, n))
            .collect();
        let base = m - &self.coset.basepoint;
        HPolyhedron::new(normals, bounds, LatticeCoset::new(base))
    }

    fn normal_rows(&self) -> RatMat {
        self.normals.iter().map(|n| n.to_rat()).collect()
    }

    /// Lineality space of the recession cone (nonzero => no vertices).
    fn lineality(&self) -> Vec<Vec<Rat>> {
        linalg::kernel_rat(&self.normal_rows())
    }

    /// Exact boundedness: the recession cone `{x : <x, n_i> >= 0}` is `{0}`.
    pub fn is_bounded(&self) -> bool {
        if !self.lineality().is_empty() {
            return false;
        }
        let l = self.rank();
        let rows = self.normal_rows();
        if rows.len() < l {
            return false;
        }
        // Any nonzero recession direction shows up as a feasible kernel
        // vector of l-1 of the constraints.
        for subset in linalg::combinations(rows.len(), l - 1) {
            let sub: RatMat = subset.iter().map(|&i| rows[i].clone()).collect();
            let ker = if sub.is_empty() {
                if l == 1 {
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
                let u: Vec<Rat> =
                    ker[0].iter().map(|x| x * Rat::from_integer(Int::from(dir))).collect();
                let feasible = rows.iter().all(|row| {
                    let s: Rat = row.iter().zip(&u).map(|(a, b)| a * b).sum();
                    !s.is_negative()
                });
                if feasible {
                    return false;
                }
            }
        }
        true
    }

    /// Exact vertex set by exhaustive subset solving; empty when the
    /// polyhedron is empty. `Unsupported` when the polyhedron has lineality.
    pub fn vertex_set(&self, caps: &Caps) -> Result<Vec<MVec>> {
        let l = self.rank();
        if l > caps.vertex_rank {
            return Err(Error::CapExceeded(format!(
                "vertex enumeration capped at rank {}",
                caps.vertex_rank
            )));
        }
        if !self.lineality().is_empty() {
            return Err(Error::Unsupported("polyhedron has lineality: no vertices".into()));
        }
        let rows = self.normal_rows();
        let mut vertices: BTreeSet<MVec> = BTreeSet::new();
        for subset in linalg::combinations(rows.len(), l) {
            let a: RatMat = subset.iter().map(|&i| rows[i].clone()).collect();
            let b: Vec<Rat> = subset.iter().map(|&i| self.bounds[i].clone()).collect();
            match linalg::solve_rat(&a, &b) {
                Ok(x) => {
                    let m = MVec(x);
                    if self.contains(&m) {
                        vertices.insert(m);
                    }
                }
                Err(Error::SingularSystem) => continue,
                Err(e) => return Err(e),
            }
        }
        Ok(vertices.into_iter().collect())
    }

    /// Spec-facing vertex enumeration: an empty polyhedron is an error here.
    pub fn vertices(&self, caps: &Caps) -> Result<Vec<MVec>> {
        let v = self.vertex_set(caps)?;
        if v.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        Ok(v)
    }

    /// All lattice points of a bounded polyhedron (box scan over the coset,
    /// exact membership filter).
    pub fn lattice_points(&self, caps: &Caps) -> Result<LatticePointSet> {
        if !self.is_bounded() {
            return Err(Error::Unsupported("lattice_points needs a bounded polyhedron".into()));
        }
        let vertices = self.vertex_set(caps)?;
        let points = self.scan_box(&vertices, &Rat::zero(), caps, |m| self.contains(m))?;
        Ok(LatticePointSet { points, coset: self.coset.clone() })
    }

    /// The minimal layer `{m in Q : m - f_i not in Q for all i}` of a
    /// polyhedron whose recession cone is exactly the positive orthant of
    /// `M_R` (normals in the orthant, every coordinate bounded below).
    pub fn minimal_lattice_points(&self, caps: &Caps) -> Result<LatticePointSet> {
        let l = self.rank();
        if self.normals.iter().any(|n| !n.in_orthant()) {
            return Err(Error::Unsupported(
                "minimal layer needs all normals in the positive orthant".into(),
            ));
        }
        for i in 0..l {
            let unit = NVec::unit(l, i);
            if !self.normals.contains(&unit) {
                return Err(Error::Unsupported(
                    "minimal layer needs every coordinate bounded below (unit normals present)"
                        .into(),
                ));
            }
        }
        let vertices = self.vertex_set(caps)?;
        // Minimal points lie in conv(vertices) + [0,1)^l: any deeper point
        // recedes by some f_i and stays inside.
        let one = Rat::from_integer(Int::from(1));
        let points = self.scan_box(&vertices, &one, caps, |m| {
            if !self.contains(m) {
                return false;
            }
            (0..l).all(|i| {
                let shifted = m - &MVec::unit(l, i);
                !self.contains(&shifted)
            })
        })?;
        Ok(LatticePointSet { points, coset: self.coset.clone() })
    }

    /// Enumerates coset points inside the bounding box of `vertices`
    /// (inflated by `pad` on the upper side), filtered by `keep`.
    fn scan_box<F: Fn(&MVec) -> bool>(
        &self,
        vertices: &[MVec],
        pad: &Rat,
        caps: &Caps,
        keep: F,
    ) -> Result<Vec<MVec>> {
        let l = self.rank();
        if vertices.is_empty() {
            return Ok(Vec::new());
        }
        let base = &self.coset.basepoint;
        let mut lo = Vec::with_capacity(l);
        let mut hi = Vec::with_capacity(l);
        let mut total: u128 = 1;
        for j in 0..l {
            let mut min = vertices[0].0[j].clone();
            let mut max = vertices[0].0[j].clone();
            for v in vertices.iter().skip(1) {
                if v.0[j] < min {
                    min = v.0[j].clone();
                }
                if v.0[j] > max {
                    max = v.0[j].clone();
                }
            }
            max += pad;
            // Integer offsets k with base_j + k in [min, max].
            let k_lo = -floor_int(&(&base.0[j] - &min));
            let k_hi = floor_int(&(&max - &base.0[j]));
            if k_hi < k_lo {
                return Ok(Vec::new());
            }
            let width = (&k_hi - &k_lo + Int::from(1))
                .try_into()
                .map_err(|_| Error::CapExceeded("lattice box too large".into()))?;
            total = total.saturating_mul(width);
            lo.push(k_lo);
            hi.push(k_hi);
        }
        if total > caps.lattice_points as u128 {
            return Err(Error::CapExceeded(format!(
                "box scan of {total} points exceeds the cap of {}",
                caps.lattice_points
            )));
        }
        let mut out = Vec::new();
        let mut current: Vec<Int> = lo.clone();
        'outer: loop {
            let m = MVec(
                (0..l)
                    .map(|j| &base.0[j] + Rat::from_integer(current[j].clone()))
                    .collect(),
            );
            if keep(&m) {
                out.push(m);
            }
            // Odometer increment.
            for j in (0..l).rev() {
                if current[j] < hi[j] {
                    current[j] += Int::from(1);
                    for (jj, c) in current.iter_mut().enumerate().skip(j + 1) {
                        *c = lo[jj].clone();
                    }
                    continue 'outer;
                }
                if j == 0 {
                    break 'outer;
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// `Q_h`: one inequality per ray of the open fan, coset `v_h + M`.
pub fn polyhedron_q(h: &PLFunction) -> Result<HPolyhedron> {
    HPolyhedron::new(
        h.fan.rays.clone(),
        h.ray_values.clone(),
        LatticeCoset::new(h.base_vertex()),
    )
}

/// `P_h`: one inequality per ray of the complete fan. Bounded whenever the
/// fan is genuinely complete; an unbounded outcome is reported as an error.
pub fn polytope_p(hc: &CompletePLFunction) -> Result<HPolyhedron> {
    let p = HPolyhedron::new(
        hc.fan.rays.clone(),
        hc.ray_values.clone(),
        LatticeCoset::new(hc.linear_parts[0].clone()),
    )?;
    if !p.is_bounded() {
        return Err(Error::Unsupported(
            "polytope expected to be bounded; the fan does not span N_R".into(),
        ));
    }
    Ok(p)
}

/// The dominance constraints `x-dot_j <= 0` as an H-polyhedron over a coset.
pub fn dominant_chamber(rs: &RestrictedRootSystem, coset: LatticeCoset) -> Result<HPolyhedron> {
    let mut normals = Vec::with_capacity(rs.rank);
    let mut bounds = Vec::with_capacity(rs.rank);
    for j in 0..rs.rank {
        normals.push(NVec(rs.cartan[j].iter().map(|x| -x.clone()).collect()));
        bounds.push(Rat::zero());
    }
    HPolyhedron::new(normals, bounds, coset)
}

/// The three weight sets of a bundle: `Pi(Z,h)` as an (infinite) polyhedron
/// description, `Pi(Z^c,h)` and `Pi(Y,h)` as finite point sets.
#[derive(Clone, Debug)]
pub struct PiSets {
    pub pi_z: HPolyhedron,
    pub pi_zc: LatticePointSet,
    pub pi_y: LatticePointSet,
}

/// Computes the weight sets and cross-checks the two routes to `Pi(Y,h)`:
/// dominant points of `P_h` against dominant lattice points of `Q_h`.
pub fn pi_sets(
    h: &PLFunction,
    rs: &RestrictedRootSystem,
    w: &WeylGroup,
    fan_c: Option<&crate::fan::Fan>,
    caps: &Caps,
) -> Result<PiSets> {
    let hc = match fan_c {
        Some(f) => h.weyl_extend_into(w, f)?,
        None => h.weyl_extend(w)?,
    };
    let q = polyhedron_q(h)?;
    let p = polytope_p(&hc)?;
    if !q.coset.same_coset(&p.coset) {
        return Err(Error::InvariantBreach("Q and P cosets disagree".into()));
    }
    let pi_zc = p.lattice_points(caps)?;
    let dominant: Vec<MVec> = pi_zc
        .points
        .iter()
        .filter(|m| rs.is_dominant(m).unwrap_or(false))
        .cloned()
        .collect();
    let pi_y = LatticePointSet { points: dominant, coset: pi_zc.coset.clone() };
    // Independent route: Pi(Z,h) cap Lambda^+ through the bounded region
    // Q cap C^+.
    let qc = q.intersect(&dominant_chamber(rs, q.coset.clone())?)?;
    let via_q = qc.lattice_points(caps)?;
    if via_q.points != pi_y.points {
        return Err(Error::InvariantBreach(
            "Pi(Z,h) cap Lambda+ differs from Pi(Z^c,h) cap Lambda+".into(),
        ));
    }
    Ok(PiSets { pi_z: q, pi_zc, pi_y })
}

/// A face `{<m, tau> = level}` of a polyhedron, re-expressed over the
/// sublattice `tau-perp cap M`: `point = basepoint + sum mu_i basis_i`.
#[derive(Clone, Debug)]
pub struct FaceRestriction {
    pub poly: HPolyhedron,
    pub basepoint: MVec,
    pub basis: Vec<MVec>,
}

impl FaceRestriction {
    /// Lifts quotient coordinates back to the ambient space.
    pub fn lift(&self, mu: &MVec) -> MVec {
        let mut out = self.basepoint.clone();
        for (c, b) in mu.0.iter().zip(&self.basis) {
            out = &out + &b.scale(c);
        }
        out
    }
}

/// Restricts `K` to the facet where the constraint with normal `tau` is
/// tight; `level` must equal that constraint's bound.
pub fn face_restriction(k: &HPolyhedron, tau: &NVec, level: &Rat) -> Result<FaceRestriction> {
    let l = k.rank();
    let idx = k
        .normals
        .iter()
        .position(|n| n == tau)
        .ok_or_else(|| Error::InvalidInput("face normal is not a constraint".into()))?;
    if k.bounds[idx] != *level {
        return Err(Error::InvalidInput(format!(
            "face level {level} differs from the constraint bound {}",
            k.bounds[idx]
        )));
    }
    // A coset point on the face: basepoint + z with <z, tau> = delta.
    let delta = level - pair_unchecked(&k.coset.basepoint, tau);
    if !delta.is_integer() {
        return Err(Error::EmptyFace);
    }
    let z = linalg::integer_solution_of(&tau.0, &delta.to_integer())
        .map_err(|_| Error::EmptyFace)?;
    let basepoint = &k.coset.basepoint + &MVec(z.iter().map(|x| Rat::from_integer(x.clone())).collect());
    let kernel = linalg::integer_kernel_of_vector(&tau.0)?;
    let basis: Vec<MVec> = kernel
        .iter()
        .map(|row| MVec(row.iter().map(|x| Rat::from_integer(x.clone())).collect()))
        .collect();
    let mut normals = Vec::new();
    let mut bounds = Vec::new();
    for (ci, n) in k.normals.iter().enumerate() {
        if ci == idx {
            continue;
        }
        let projected = NVec(basis.iter().map(|b| pair_unchecked(b, n).to_integer()).collect());
        let bound = &k.bounds[ci] - pair_unchecked(&basepoint, n);
        if projected.is_zero() {
            if bound.is_positive() {
                return Err(Error::EmptyFace);
            }
            continue;
        }
        normals.push(projected);
        bounds.push(bound);
    }
    let poly = HPolyhedron::new(normals, bounds, LatticeCoset::new(MVec::zero(l - 1)))?;
    Ok(FaceRestriction { poly, basepoint, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::PLFunction;
    use crate::catalog;
    use crate::rat::{rat, ratio};
    use crate::roots::SphericalLattice;

    fn caps() -> Caps {
        Caps::default()
    }

    fn blowup_bundle(e1: i64, e2: i64, diag: i64) -> PLFunction {
        let fan = catalog::fan_ex1(2, 2).unwrap();
        PLFunction::from_ray_values(
            &fan,
            vec![rat(e2), rat(e1), rat(diag)],
            SphericalLattice::standard(2),
        )
        .unwrap()
    }

    fn a1a1_octagon() -> (RestrictedRootSystem, WeylGroup, PLFunction) {
        let rs = RestrictedRootSystem::from_label("A1xA1").unwrap();
        let w = rs.generate_weyl_group(&caps()).unwrap();
        let fan = catalog::fan_ex1(2, 2).unwrap();
        let h = PLFunction::from_ray_values(
            &fan,
            vec![rat(-2), rat(-2), rat(-3)],
            SphericalLattice::default_for(&rs),
        )
        .unwrap();
        (rs, w, h)
    }

    #[test]
    fn q_of_the_blowup_bundle() {
        let h = blowup_bundle(0, 0, 1);
        let q = polyhedron_q(&h).unwrap();
        let v = q.vertices(&caps()).unwrap();
        assert_eq!(v, vec![MVec::from_ints(&[0, 1]), MVec::from_ints(&[1, 0])]);
        assert!(!q.is_bounded());
        let minimal = q.minimal_lattice_points(&caps()).unwrap();
        assert_eq!(
            minimal.points,
            vec![MVec::from_ints(&[0, 1]), MVec::from_ints(&[1, 0])]
        );
    }

    #[test]
    fn octagon_vertices_and_lattice_points() {
        let (rs, w, h) = a1a1_octagon();
        let hc = h.weyl_extend(&w).unwrap();
        let p = polytope_p(&hc).unwrap();
        assert!(p.is_bounded());
        let vertices = p.vertices(&caps()).unwrap();
        assert_eq!(vertices.len(), 8);
        for v in &vertices {
            let a = v.0[0].clone().abs();
            let b = v.0[1].clone().abs();
            assert!(
                (a == rat(2) && b == rat(1)) || (a == rat(1) && b == rat(2)),
                "unexpected vertex {v:?}"
            );
        }
        let pts = p.lattice_points(&caps()).unwrap();
        assert_eq!(pts.len(), 21);
        let sets = pi_sets(&h, &rs, &w, None, &caps()).unwrap();
        assert_eq!(sets.pi_zc.len(), 21);
        assert_eq!(sets.pi_y.len(), 8);
        for m in &sets.pi_y.points {
            assert!(rs.is_dominant(m).unwrap());
        }
    }

    #[test]
    fn orbit_union_recovers_pi_zc() {
        let (_, w, h) = a1a1_octagon();
        let rs = RestrictedRootSystem::from_label("A1xA1").unwrap();
        let sets = pi_sets(&h, &rs, &w, None, &caps()).unwrap();
        let mut orbit: BTreeSet<MVec> = BTreeSet::new();
        for m in &sets.pi_y.points {
            for el in &w.elements {
                orbit.insert(el.apply_m(m));
            }
        }
        let zc: BTreeSet<MVec> = sets.pi_zc.points.iter().cloned().collect();
        assert_eq!(orbit, zc);
    }

    #[test]
    fn unbounded_input_rejected_for_lattice_points() {
        let h = blowup_bundle(0, 0, 1);
        let q = polyhedron_q(&h).unwrap();
        assert!(matches!(q.lattice_points(&caps()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn minimal_layer_of_shifted_region() {
        // Q = {x1 >= -4, x2 >= -4, x1 + x2 >= -6}.
        let coset = LatticeCoset::new(MVec::zero(2));
        let q = HPolyhedron::new(
            vec![NVec::from_ints(&[1, 0]), NVec::from_ints(&[0, 1]), NVec::from_ints(&[1, 1])],
            vec![rat(-4), rat(-4), rat(-6)],
            coset,
        )
        .unwrap();
        let minimal = q.minimal_lattice_points(&caps()).unwrap();
        assert_eq!(
            minimal.points,
            vec![
                MVec::from_ints(&[-4, -2]),
                MVec::from_ints(&[-3, -3]),
                MVec::from_ints(&[-2, -4]),
            ]
        );
    }

    #[test]
    fn minimal_layer_of_translated_orthant() {
        let coset = LatticeCoset::new(MVec::from_ints(&[3, -1]));
        let q = HPolyhedron::new(
            vec![NVec::from_ints(&[1, 0]), NVec::from_ints(&[0, 1])],
            vec![rat(3), rat(-1)],
            coset,
        )
        .unwrap();
        let minimal = q.minimal_lattice_points(&caps()).unwrap();
        assert_eq!(minimal.points, vec![MVec::from_ints(&[3, -1])]);
    }

    #[test]
    fn empty_and_degenerate_polyhedra() {
        let coset = LatticeCoset::new(MVec::zero(2));
        // x1 >= 1 and -x1 >= 0 is empty.
        let empty = HPolyhedron::new(
            vec![NVec::from_ints(&[1, 0]), NVec::from_ints(&[-1, 0]), NVec::from_ints(&[0, 1]), NVec::from_ints(&[0, -1])],
            vec![rat(1), rat(0), rat(0), rat(0)],
            coset.clone(),
        )
        .unwrap();
        assert!(empty.is_bounded());
        assert!(empty.lattice_points(&caps()).unwrap().is_empty());
        assert!(matches!(empty.vertices(&caps()), Err(Error::EmptyPolyhedron)));
        // A single point.
        let point = HPolyhedron::new(
            vec![
                NVec::from_ints(&[1, 0]),
                NVec::from_ints(&[-1, 0]),
                NVec::from_ints(&[0, 1]),
                NVec::from_ints(&[0, -1]),
            ],
            vec![rat(2), rat(-2), rat(5), rat(-5)],
            coset.clone(),
        )
        .unwrap();
        let pts = point.lattice_points(&caps()).unwrap();
        assert_eq!(pts.points, vec![MVec::from_ints(&[2, 5])]);
        // Single point off the coset.
        let off = HPolyhedron::new(
            vec![
                NVec::from_ints(&[1, 0]),
                NVec::from_ints(&[-1, 0]),
                NVec::from_ints(&[0, 1]),
                NVec::from_ints(&[0, -1]),
            ],
            vec![ratio(1, 2), ratio(-1, 2), rat(0), rat(0)],
            coset.clone(),
        )
        .unwrap();
        assert!(off.lattice_points(&caps()).unwrap().is_empty());
        // A segment from (0,0) to (2,0).
        let seg = HPolyhedron::new(
            vec![
                NVec::from_ints(&[1, 0]),
                NVec::from_ints(&[-1, 0]),
                NVec::from_ints(&[0, 1]),
                NVec::from_ints(&[0, -1]),
            ],
            vec![rat(0), rat(-2), rat(0), rat(0)],
            coset,
        )
        .unwrap();
        assert_eq!(seg.lattice_points(&caps()).unwrap().len(), 3);
    }

    #[test]
    fn face_restriction_of_blowup_q() {
        let h = blowup_bundle(0, 0, 1);
        let q = polyhedron_q(&h).unwrap();
        let tau = NVec::from_ints(&[1, 1]);
        let face = face_restriction(&q, &tau, &rat(1)).unwrap();
        let pts = face.poly.lattice_points(&caps()).unwrap();
        assert_eq!(pts.len(), 2);
        let lifted: BTreeSet<MVec> = pts.points.iter().map(|mu| face.lift(mu)).collect();
        let expect: BTreeSet<MVec> =
            [MVec::from_ints(&[1, 0]), MVec::from_ints(&[0, 1])].into_iter().collect();
        assert_eq!(lifted, expect);
        for m in &lifted {
            assert!(q.contains_lattice_point(m));
        }
        // Wrong level is rejected.
        assert!(face_restriction(&q, &tau, &rat(2)).is_err());
    }

    #[test]
    fn face_of_translated_orthant_is_lower_orthant() {
        let coset = LatticeCoset::new(MVec::zero(3));
        let q = HPolyhedron::new(
            vec![
                NVec::from_ints(&[1, 0, 0]),
                NVec::from_ints(&[0, 1, 0]),
                NVec::from_ints(&[0, 0, 1]),
            ],
            vec![rat(2), rat(3), rat(4)],
            coset,
        )
        .unwrap();
        let face = face_restriction(&q, &NVec::from_ints(&[1, 0, 0]), &rat(2)).unwrap();
        assert_eq!(face.poly.rank(), 2);
        assert_eq!(face.poly.normals.len(), 2);
        // Unbounded face: a translated rank-2 orthant.
        assert!(!face.poly.is_bounded());
        let v = face.poly.vertices(&caps()).unwrap();
        assert_eq!(v.len(), 1);
        let lifted = face.lift(&v[0]);
        assert_eq!(lifted, MVec::from_ints(&[2, 3, 4]));
    }
}
