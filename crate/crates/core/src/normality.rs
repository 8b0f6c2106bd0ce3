//! Surjectivity of section multiplication as lattice-point Minkowski
//! decomposition: the open-side check over minimal layers of `Q`, the
//! complete-side check over `P` with Weyl reduction to the dominant
//! chamber, the constructive equivalence transfer between them, and the
//! saturation diagnostic.

use num_traits::{Signed, Zero};

use crate::bundle::PLFunction;
use crate::fan::Fan;
use crate::lattice::{MVec, NVec};
use crate::polyhedra::{dominant_chamber, pi_sets, polyhedron_q, polytope_p, HPolyhedron};
use crate::rat::{floor_int, Int, Rat};
use crate::roots::{RestrictedRootSystem, WeylGroup};
use crate::{Caps, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Surjective,
    NotSurjective,
    Unsupported,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Open,
    Complete,
}

/// One decomposition `m = m1 + m2` found during a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointWitness {
    pub m: MVec,
    pub m1: MVec,
    pub m2: MVec,
}

/// Machine-readable outcome of a multiplication-surjectivity check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub mode: CheckMode,
    /// Points that had to be decomposed (the minimal layer on the open
    /// side, the dominant lattice points on the complete side).
    pub points_checked: usize,
    /// One decomposition per checked point, in checked order.
    pub witnesses: Vec<PointWitness>,
    /// For `NotSurjective`: a point admitting no decomposition, certified
    /// by the exhaustive search over the bounded intersection region.
    pub counterexample: Option<MVec>,
    pub detail: String,
}

fn require_common_fan(h: &PLFunction, k: &PLFunction) -> Result<()> {
    if h.fan != k.fan {
        return Err(Error::InvalidInput("checks need both bundles on one fan".into()));
    }
    if h.lattice != k.lattice {
        return Err(Error::InvalidInput("checks need a common weight lattice".into()));
    }
    Ok(())
}

/// Lexicographically first lattice point of `Q_h cap (m - Q_k)`, if any.
fn first_split(
    qh: &HPolyhedron,
    qk: &HPolyhedron,
    m: &MVec,
    caps: &Caps,
) -> Result<Option<MVec>> {
    let region = qh.intersect(&qk.reflected_through(m)?)?;
    let points = region.lattice_points(caps)?;
    Ok(points.points.into_iter().next())
}

/// Open-side check: every point of the minimal layer of `Q_{h+k}` must
/// split as `Q_h`-point plus `Q_k`-point; decomposability propagates from
/// the minimal layer to all of `Q_{h+k} cap (v+M)` along the recession
/// directions `f_i`.
pub fn check_sum_open(h: &PLFunction, k: &PLFunction, caps: &Caps) -> Result<CheckReport> {
    require_common_fan(h, k)?;
    if !h.is_convex() || !k.is_convex() {
        return Err(Error::Unsupported("open check needs convex support functions".into()));
    }
    let hk = h.add(k)?;
    let qh = polyhedron_q(h)?;
    let qk = polyhedron_q(k)?;
    let qhk = polyhedron_q(&hk)?;
    let minimal = qhk.minimal_lattice_points(caps)?;
    let mut witnesses = Vec::new();
    for m in &minimal.points {
        match first_split(&qh, &qk, m, caps)? {
            Some(m1) => {
                let m2 = m - &m1;
                debug_assert!(qh.contains_lattice_point(&m1));
                debug_assert!(qk.contains_lattice_point(&m2));
                witnesses.push(PointWitness { m: m.clone(), m1, m2 });
            }
            None => {
                return Ok(CheckReport {
                    verdict: Verdict::NotSurjective,
                    mode: CheckMode::Open,
                    points_checked: minimal.len(),
                    witnesses,
                    counterexample: Some(m.clone()),
                    detail: format!(
                        "minimal point {m:?} of Q_(h+k) admits no lattice decomposition"
                    ),
                });
            }
        }
    }
    Ok(CheckReport {
        verdict: Verdict::Surjective,
        mode: CheckMode::Open,
        points_checked: minimal.len(),
        witnesses,
        counterexample: None,
        detail: format!("all {} minimal points decompose", minimal.len()),
    })
}

fn require_regular_convex(
    h: &PLFunction,
    rs: &RestrictedRootSystem,
    name: &str,
) -> Result<()> {
    if !h.is_convex() {
        return Err(Error::Unsupported(format!("{name} must be convex")));
    }
    for part in &h.linear_parts {
        if !rs.is_regular(part)? {
            return Err(Error::Unsupported(format!(
                "{name} must have regular linear parts on every maximal cone"
            )));
        }
    }
    Ok(())
}

/// Complete-side check over `P`-polytopes; by the Weyl symmetry only
/// dominant points need an explicit decomposition.
pub fn check_sum_complete(
    h: &PLFunction,
    k: &PLFunction,
    rs: &RestrictedRootSystem,
    w: &WeylGroup,
    fan_c: Option<&Fan>,
    caps: &Caps,
) -> Result<CheckReport> {
    require_common_fan(h, k)?;
    require_regular_convex(h, rs, "h")?;
    require_regular_convex(k, rs, "k")?;
    let owned;
    let fan_c = match fan_c {
        Some(f) => f,
        None => {
            owned = h.fan.symmetrize(w)?;
            &owned
        }
    };
    let hk = h.add(k)?;
    let ph = polytope_p(&h.weyl_extend_into(w, fan_c)?)?;
    let pk = polytope_p(&k.weyl_extend_into(w, fan_c)?)?;
    let phk = polytope_p(&hk.weyl_extend_into(w, fan_c)?)?;
    let all = phk.lattice_points(caps)?;
    let ph_points = ph.lattice_points(caps)?;
    let mut witnesses = Vec::new();
    let mut dominant_count = 0usize;
    for m in &all.points {
        if !rs.is_dominant(m)? {
            continue;
        }
        dominant_count += 1;
        let hit = ph_points.points.iter().find(|p| {
            let rest = m - p;
            pk.contains(&rest)
        });
        match hit {
            Some(p) => witnesses.push(PointWitness {
                m: m.clone(),
                m1: p.clone(),
                m2: m - p,
            }),
            None => {
                return Ok(CheckReport {
                    verdict: Verdict::NotSurjective,
                    mode: CheckMode::Complete,
                    points_checked: dominant_count,
                    witnesses,
                    counterexample: Some(m.clone()),
                    detail: format!(
                        "dominant point {m:?} of P_(h+k) admits no lattice decomposition"
                    ),
                });
            }
        }
    }
    Ok(CheckReport {
        verdict: Verdict::Surjective,
        mode: CheckMode::Complete,
        points_checked: dominant_count,
        witnesses,
        counterexample: None,
        detail: format!(
            "all {dominant_count} dominant points of {} lattice points decompose",
            all.len()
        ),
    })
}

/// Runs the open and complete checks and insists on agreement; a
/// disagreement would falsify the implementation, not the reduction
/// theorem, and is reported as an invariant breach.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub open: CheckReport,
    pub complete: CheckReport,
    pub agree: bool,
}

pub fn check_equivalence(
    h: &PLFunction,
    k: &PLFunction,
    rs: &RestrictedRootSystem,
    w: &WeylGroup,
    fan_c: Option<&Fan>,
    caps: &Caps,
) -> Result<EquivalenceReport> {
    let open = check_sum_open(h, k, caps)?;
    let complete = check_sum_complete(h, k, rs, w, fan_c, caps)?;
    let agree = open.verdict == complete.verdict;
    Ok(EquivalenceReport { open, complete, agree })
}

/// Walks an open-side decomposition `m = p0 + q0` into a complete-side one
/// by moving `f_j` steps from `q` to `p` at positive dotted coordinates of
/// `q`; `p` stays inside `P_h` by the reflection-and-convexity argument,
/// asserted at every step.
pub struct TransferOutcome {
    pub p: MVec,
    pub q: MVec,
    pub steps: Vec<usize>,
}

#[allow(clippy::too_many_arguments)]
pub fn transfer_decomposition(
    h: &PLFunction,
    k: &PLFunction,
    rs: &RestrictedRootSystem,
    w: &WeylGroup,
    fan_c: Option<&Fan>,
    m: &MVec,
    p0: &MVec,
    q0: &MVec,
    caps: &Caps,
) -> Result<TransferOutcome> {
    let _ = caps;
    require_common_fan(h, k)?;
    let owned;
    let fan_c = match fan_c {
        Some(f) => f,
        None => {
            owned = h.fan.symmetrize(w)?;
            &owned
        }
    };
    let ph = polytope_p(&h.weyl_extend_into(w, fan_c)?)?;
    let pk = polytope_p(&k.weyl_extend_into(w, fan_c)?)?;
    let qk = polyhedron_q(k)?;
    if &(p0 + q0) != m {
        return Err(Error::InvalidInput("transfer needs m = p0 + q0".into()));
    }
    if !ph.contains_lattice_point(p0) || !rs.is_dominant(p0)? {
        return Err(Error::InvalidInput("p0 must lie in P_h cap C+ on the right coset".into()));
    }
    if !qk.contains_lattice_point(q0) {
        return Err(Error::InvalidInput("q0 must lie in Q_k on the right coset".into()));
    }
    if !rs.is_dominant(m)? {
        return Err(Error::InvalidInput("transfer expects a dominant target".into()));
    }
    let l = h.rank();
    let mut p = p0.clone();
    let mut q = q0.clone();
    let mut steps = Vec::new();
    // Each step lowers the coordinate sum of q by one; q stays in a bounded
    // region, so the exact budget below cannot be exceeded.
    let barycenter = NVec(vec![Int::from(1); l]);
    let coord_sum = |v: &MVec| -> Rat { v.0.iter().sum() };
    let budget = {
        let min_sum = k.evaluate(&barycenter)?;
        let slack = coord_sum(&q) - min_sum;
        floor_int(&slack) + Int::from(1)
    };
    let mut guard = Int::zero();
    loop {
        if pk.contains(&q) {
            return Ok(TransferOutcome { p, q, steps });
        }
        if guard >= budget {
            return Err(Error::InvariantBreach("transfer exceeded its step budget".into()));
        }
        guard += Int::from(1);
        let dotted = rs.dotted_coords(&q)?;
        let Some(j) = dotted.iter().position(|x| x.is_positive()) else {
            return Err(Error::InvariantBreach(
                "q is dominant but outside P_k during transfer".into(),
            ));
        };
        let fj = MVec::unit(l, j);
        let p_next = &p + &fj;
        let q_next = &q - &fj;
        if !ph.contains(&p_next) {
            return Err(Error::InvariantBreach(format!(
                "transfer step {j} pushed p outside P_h"
            )));
        }
        if !qk.contains(&q_next) {
            return Err(Error::InvariantBreach(format!(
                "transfer step {j} pushed q outside Q_k"
            )));
        }
        steps.push(j);
        p = p_next;
        q = q_next;
    }
}

/// Constructive descent `p = p' + sum c_i f_i` with `p' in P_h cap C^+`,
/// subtracting `f_j` at the smallest positive dotted coordinate.
pub struct ExpressOutcome {
    pub reduced: MVec,
    pub counts: Vec<Int>,
    pub steps: Vec<usize>,
}

pub fn express_q_point(
    h: &PLFunction,
    rs: &RestrictedRootSystem,
    w: &WeylGroup,
    fan_c: Option<&Fan>,
    p: &MVec,
    caps: &Caps,
) -> Result<ExpressOutcome> {
    let _ = caps;
    let status = h.status(Some(rs))?;
    if !status.ample {
        return Err(Error::Unsupported("descent needs an ample spherical bundle".into()));
    }
    let qh = polyhedron_q(h)?;
    if !qh.contains_lattice_point(p) {
        return Err(Error::InvalidInput("point must lie in Q_h on the coset v_h + M".into()));
    }
    let owned;
    let fan_c = match fan_c {
        Some(f) => f,
        None => {
            owned = h.fan.symmetrize(w)?;
            &owned
        }
    };
    let ph = polytope_p(&h.weyl_extend_into(w, fan_c)?)?;
    let l = h.rank();
    let barycenter = NVec(vec![Int::from(1); l]);
    let coord_sum = |v: &MVec| -> Rat { v.0.iter().sum() };
    let budget = floor_int(&(coord_sum(p) - h.evaluate(&barycenter)?)) + Int::from(1);
    let mut guard = Int::zero();
    let mut cur = p.clone();
    let mut counts = vec![Int::zero(); l];
    let mut steps = Vec::new();
    loop {
        let dotted = rs.dotted_coords(&cur)?;
        let Some(j) = dotted.iter().position(|x| x.is_positive()) else {
            if !ph.contains(&cur) {
                return Err(Error::InvariantBreach(
                    "dominant descent endpoint escaped P_h".into(),
                ));
            }
            return Ok(ExpressOutcome { reduced: cur, counts, steps });
        };
        if guard >= budget {
            return Err(Error::InvariantBreach("descent exceeded its step budget".into()));
        }
        guard += Int::from(1);
        let next = &cur - &MVec::unit(l, j);
        if !qh.contains(&next) {
            return Err(Error::InvariantBreach(format!(
                "descent step at coordinate {j} left Q_h"
            )));
        }
        counts[j] += Int::from(1);
        steps.push(j);
        cur = next;
    }
}

/// Wall check backing the descent: for every vertex of `P_h cap H_j` the
/// points `p' +- f_j / 2` stay inside `Q_h`.
#[derive(Clone, Debug)]
pub struct RjReport {
    pub supported: bool,
    pub ok: bool,
    pub wall_vertices: Vec<MVec>,
    pub detail: String,
}

pub fn check_rj(
    h: &PLFunction,
    rs: &RestrictedRootSystem,
    w: &WeylGroup,
    fan_c: Option<&Fan>,
    j: usize,
    caps: &Caps,
) -> Result<RjReport> {
    if j >= rs.rank {
        return Err(Error::InvalidInput("wall index out of range".into()));
    }
    let status = h.status(Some(rs))?;
    if !status.ample {
        return Ok(RjReport {
            supported: false,
            ok: false,
            wall_vertices: Vec::new(),
            detail: "unsupported: the bundle is not ample spherical".into(),
        });
    }
    let owned;
    let fan_c = match fan_c {
        Some(f) => f,
        None => {
            owned = h.fan.symmetrize(w)?;
            &owned
        }
    };
    let ph = polytope_p(&h.weyl_extend_into(w, fan_c)?)?;
    let qh = polyhedron_q(h)?;
    // The wall H_j: dotted coordinate j vanishes.
    let wall_normal = NVec(rs.cartan[j].clone());
    let wall = HPolyhedron::new(
        vec![wall_normal.clone(), -&wall_normal],
        vec![Rat::zero(), Rat::zero()],
        ph.coset.clone(),
    )?;
    let slice = ph.intersect(&wall)?;
    let vertices = slice.vertex_set(caps)?;
    let half = Rat::new(Int::from(1), Int::from(2));
    let mut ok = true;
    for v in &vertices {
        let mut plus = v.clone();
        plus.0[j] = &v.0[j] + &half;
        let mut minus = v.clone();
        minus.0[j] = &v.0[j] - &half;
        if !qh.contains(&plus) || !qh.contains(&minus) {
            ok = false;
        }
    }
    Ok(RjReport {
        supported: true,
        ok,
        wall_vertices: vertices,
        detail: if ok {
            format!("all wall-{j} vertex shifts stay inside Q_h")
        } else {
            format!("some wall-{j} vertex shift leaves Q_h")
        },
    })
}

/// Saturation diagnostic for the combinatorial product set
/// `S = (Pi(Z^c,h) + Pi(Z^c,k)) cap Lambda^+`. A violation does not falsify
/// the source statement, which concerns the representation-level image.
#[derive(Clone, Debug)]
pub struct SaturationReport {
    pub saturated: bool,
    pub product_size: usize,
    pub violations: Vec<(MVec, MVec)>,
    pub note: String,
}

pub fn check_saturation(
    h: &PLFunction,
    k: &PLFunction,
    rs: &RestrictedRootSystem,
    w: &WeylGroup,
    fan_c: Option<&Fan>,
    caps: &Caps,
) -> Result<SaturationReport> {
    require_common_fan(h, k)?;
    let sets_h = pi_sets(h, rs, w, fan_c, caps)?;
    let sets_k = pi_sets(k, rs, w, fan_c, caps)?;
    let hk = h.add(k)?;
    let sets_hk = pi_sets(&hk, rs, w, fan_c, caps)?;
    let mut sums: Vec<MVec> = Vec::new();
    for a in &sets_h.pi_zc.points {
        for b in &sets_k.pi_zc.points {
            let s = a + b;
            if rs.is_dominant(&s)? && !sums.contains(&s) {
                sums.push(s);
            }
        }
    }
    sums.sort();
    let in_s = |m: &MVec| sums.binary_search(m).is_ok();
    let mut violations = Vec::new();
    for nu in &sums {
        for nu_prime in &sets_hk.pi_y.points {
            let diff = nu_prime - nu;
            let descends = diff.is_integral()
                && diff.0.iter().all(|x| !x.is_negative())
                && !diff.is_zero();
            if descends && !in_s(nu_prime) {
                violations.push((nu.clone(), nu_prime.clone()));
            }
        }
    }
    Ok(SaturationReport {
        saturated: violations.is_empty(),
        product_size: sums.len(),
        violations,
        note: "S is the combinatorial sum set; a violation would not contradict the \
               representation-level statement"
            .into(),
    })
}

/// The two l1 identities for an ample spherical bundle: `Q_h cap C^+ = P_h
/// cap C^+` (vertices and lattice points) and the module generation
/// statement over the minimal layer.
#[derive(Clone, Debug)]
pub struct L1Report {
    pub vertices_agree: bool,
    pub lattice_points_agree: bool,
    pub minimal_layer_descends: bool,
    pub minimal_layer_size: usize,
}

pub fn check_l1(
    h: &PLFunction,
    rs: &RestrictedRootSystem,
    w: &WeylGroup,
    fan_c: Option<&Fan>,
    caps: &Caps,
) -> Result<L1Report> {
    let status = h.status(Some(rs))?;
    if !status.ample {
        return Err(Error::Unsupported("l1 identities need an ample spherical bundle".into()));
    }
    let owned;
    let fan_c_ref = match fan_c {
        Some(f) => f,
        None => {
            owned = h.fan.symmetrize(w)?;
            &owned
        }
    };
    let q = polyhedron_q(h)?;
    let p = polytope_p(&h.weyl_extend_into(w, fan_c_ref)?)?;
    let chamber = dominant_chamber(rs, q.coset.clone())?;
    let qc = q.intersect(&chamber)?;
    let pc = p.intersect(&chamber)?;
    let vertices_agree = qc.vertex_set(caps)? == pc.vertex_set(caps)?;
    let lattice_points_agree = qc.lattice_points(caps)?.points == pc.lattice_points(caps)?.points;
    let minimal = q.minimal_lattice_points(caps)?;
    let mut minimal_layer_descends = true;
    for m in &minimal.points {
        let out = express_q_point(h, rs, w, Some(fan_c_ref), m, caps)?;
        // Exact reconstruction.
        let mut recon = out.reduced.clone();
        for (i, c) in out.counts.iter().enumerate() {
            recon = &recon + &MVec::unit(h.rank(), i).scale(&Rat::from_integer(c.clone()));
        }
        if recon != *m || !rs.is_dominant(&out.reduced)? {
            minimal_layer_descends = false;
        }
    }
    Ok(L1Report {
        vertices_agree,
        lattice_points_agree,
        minimal_layer_descends,
        minimal_layer_size: minimal.len(),
    })
}

/// Re-verifies every reported witness through direct inequality arithmetic
/// on freshly built polyhedra; used as the independent soundness pass.
pub fn verify_witnesses(
    report: &CheckReport,
    h: &PLFunction,
    k: &PLFunction,
    rs_w: Option<(&RestrictedRootSystem, &WeylGroup, Option<&Fan>)>,
) -> Result<bool> {
    let (a, b): (HPolyhedron, HPolyhedron) = match report.mode {
        CheckMode::Open => (polyhedron_q(h)?, polyhedron_q(k)?),
        CheckMode::Complete => {
            let Some((_, w, fan_c)) = rs_w else {
                return Err(Error::InvalidInput(
                    "complete-mode verification needs the Weyl data".into(),
                ));
            };
            let owned;
            let fan_c = match fan_c {
                Some(f) => f,
                None => {
                    owned = h.fan.symmetrize(w)?;
                    &owned
                }
            };
            (
                polytope_p(&h.weyl_extend_into(w, fan_c)?)?,
                polytope_p(&k.weyl_extend_into(w, fan_c)?)?,
            )
        }
    };
    for wtn in &report.witnesses {
        if &(&wtn.m1 + &wtn.m2) != &wtn.m {
            return Ok(false);
        }
        if !a.contains_lattice_point(&wtn.m1) || !b.contains_lattice_point(&wtn.m2) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Helper shared with the splitters: exhaustive decomposability of a single
/// point (the brute-force oracle).
pub fn decomposes(
    qh: &HPolyhedron,
    qk: &HPolyhedron,
    m: &MVec,
    caps: &Caps,
) -> Result<Option<(MVec, MVec)>> {
    Ok(first_split(qh, qk, m, caps)?.map(|m1| {
        let m2 = m - &m1;
        (m1, m2)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rat::rat;
    use crate::roots::SphericalLattice;

    fn caps() -> Caps {
        Caps::default()
    }

    fn blowup_bundle(vals: [i64; 3], lattice: SphericalLattice) -> PLFunction {
        let fan = catalog::fan_ex1(2, 2).unwrap();
        PLFunction::from_ray_values(
            &fan,
            vals.iter().map(|&v| rat(v)).collect(),
            lattice,
        )
        .unwrap()
    }

    fn a1a1() -> (RestrictedRootSystem, WeylGroup) {
        let rs = RestrictedRootSystem::from_label("A1xA1").unwrap();
        let w = rs.generate_weyl_group(&caps()).unwrap();
        (rs, w)
    }

    #[test]
    fn open_check_on_the_blowup_square() {
        let std = SphericalLattice::standard(2);
        let h = blowup_bundle([0, 0, 1], std.clone());
        let report = check_sum_open(&h, &h, &caps()).unwrap();
        assert_eq!(report.verdict, Verdict::Surjective);
        // Minimal layer of Q_{2h} = {x >= 0, x1 + x2 >= 2}.
        assert_eq!(report.points_checked, 3);
        for w in &report.witnesses {
            assert_eq!(&(&w.m1 + &w.m2), &w.m);
        }
        assert!(verify_witnesses(&report, &h, &h, None).unwrap());
    }

    #[test]
    fn linear_bundles_are_trivially_surjective() {
        let fan = catalog::fan_chamber(2).unwrap();
        let std = SphericalLattice::standard(2);
        let h = PLFunction::from_ray_values(&fan, vec![rat(2), rat(-1)], std.clone()).unwrap();
        let k = PLFunction::from_ray_values(&fan, vec![rat(0), rat(4)], std).unwrap();
        let report = check_sum_open(&h, &k, &caps()).unwrap();
        assert_eq!(report.verdict, Verdict::Surjective);
        assert_eq!(report.points_checked, 1);
    }

    #[test]
    fn complete_check_and_equivalence_on_the_octagon() {
        let (rs, w) = a1a1();
        let lat = SphericalLattice::default_for(&rs);
        let h = blowup_bundle([-2, -2, -3], lat);
        let eq = check_equivalence(&h, &h, &rs, &w, None, &caps()).unwrap();
        assert!(eq.agree);
        assert_eq!(eq.open.verdict, Verdict::Surjective);
        assert_eq!(eq.complete.verdict, Verdict::Surjective);
        assert!(verify_witnesses(&eq.complete, &h, &h, Some((&rs, &w, None))).unwrap());
    }

    #[test]
    fn empty_sections_are_vacuously_surjective() {
        // Strictly convex but far from dominant: P_h may be empty.
        let (rs, w) = a1a1();
        let lat = SphericalLattice::default_for(&rs);
        let h = blowup_bundle([2, 2, 3], lat);
        // Parts are not regular, so the complete check is unsupported.
        assert!(matches!(
            check_sum_complete(&h, &h, &rs, &w, None, &caps()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn open_monotone_consistency_spot_check() {
        let std = SphericalLattice::standard(2);
        let h = blowup_bundle([0, 0, 1], std);
        let qh = polyhedron_q(&h).unwrap();
        let q2 = polyhedron_q(&h.add(&h).unwrap()).unwrap();
        let m = MVec::from_ints(&[1, 1]);
        let up = MVec::from_ints(&[2, 1]);
        assert!(decomposes(&qh, &qh, &m, &caps()).unwrap().is_some());
        assert!(q2.contains_lattice_point(&up));
        assert!(decomposes(&qh, &qh, &up, &caps()).unwrap().is_some());
    }

    #[test]
    fn transfer_runs_and_validates() {
        let (rs, w) = a1a1();
        let lat = SphericalLattice::default_for(&rs);
        let h = blowup_bundle([-2, -2, -3], lat);
        let m = MVec::from_ints(&[-4, -2]);
        let p0 = MVec::from_ints(&[-2, -1]);
        let q0 = MVec::from_ints(&[-2, -1]);
        let out = transfer_decomposition(&h, &h, &rs, &w, None, &m, &p0, &q0, &caps()).unwrap();
        assert!(out.steps.is_empty());
        assert_eq!(out.p, p0);

        // A deep q0: push the P_k point one f_1 beyond the polytope.
        let m2 = MVec::from_ints(&[-1, -2]);
        let p02 = MVec::from_ints(&[-2, -1]);
        let q02 = MVec::from_ints(&[1, -1]);
        let out2 =
            transfer_decomposition(&h, &h, &rs, &w, None, &m2, &p02, &q02, &caps()).unwrap();
        assert_eq!(&out2.p + &out2.q, m2);
        let pk = polytope_p(&h.weyl_extend(&w).unwrap()).unwrap();
        assert!(pk.contains_lattice_point(&out2.q));
        assert!(pk.contains_lattice_point(&out2.p));
    }

    #[test]
    fn express_descends_to_the_dominant_polytope() {
        let (rs, w) = a1a1();
        let lat = SphericalLattice::default_for(&rs);
        let h = blowup_bundle([-2, -2, -3], lat);
        let p = MVec::from_ints(&[2, -2]);
        let out = express_q_point(&h, &rs, &w, None, &p, &caps()).unwrap();
        assert!(rs.is_dominant(&out.reduced).unwrap());
        assert_eq!(out.reduced, MVec::from_ints(&[0, -2]));
        assert_eq!(out.counts, vec![Int::from(2), Int::from(0)]);
        // Trivial case: already dominant.
        let q = MVec::from_ints(&[-1, -1]);
        let out2 = express_q_point(&h, &rs, &w, None, &q, &caps()).unwrap();
        assert_eq!(out2.reduced, q);
        assert!(out2.counts.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn rj_and_l1_hold_on_the_octagon() {
        let (rs, w) = a1a1();
        let lat = SphericalLattice::default_for(&rs);
        let h = blowup_bundle([-2, -2, -3], lat.clone());
        for j in 0..2 {
            let rep = check_rj(&h, &rs, &w, None, j, &caps()).unwrap();
            assert!(rep.supported && rep.ok, "wall {j}: {}", rep.detail);
            assert!(!rep.wall_vertices.is_empty());
        }
        let l1 = check_l1(&h, &rs, &w, None, &caps()).unwrap();
        assert!(l1.vertices_agree);
        assert!(l1.lattice_points_agree);
        assert!(l1.minimal_layer_descends);
        assert!(l1.minimal_layer_size > 0);
        // Non-ample input is flagged unsupported.
        let flat = blowup_bundle([0, 0, 0], lat);
        let rep = check_rj(&flat, &rs, &w, None, 0, &caps()).unwrap();
        assert!(!rep.supported);
    }

    #[test]
    fn saturation_on_small_examples() {
        let (rs, w) = a1a1();
        let lat = SphericalLattice::default_for(&rs);
        let h = blowup_bundle([-2, -2, -3], lat);
        let rep = check_saturation(&h, &h, &rs, &w, None, &caps()).unwrap();
        assert!(rep.saturated, "violations: {:?}", rep.violations);
        assert!(rep.product_size > 0);
    }
}
