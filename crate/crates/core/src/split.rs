//! Constructive lattice-point splitting for the built-in fan families, each
//! producing an explicit witness `m = m1 + m2` that is re-validated by exact
//! membership before it is returned.

use num_traits::{Signed, Zero};

use crate::bundle::PLFunction;
use crate::catalog;
use crate::lattice::{pair_unchecked, MVec, NVec};
use crate::normality::{check_sum_open, CheckReport};
use crate::polyhedra::{polyhedron_q, HPolyhedron};
use crate::rat::{eps, floor_int, Int, Rat};
use crate::{Caps, Error, Result};

/// A split `m = m1 + m2` with its construction trace.
#[derive(Clone, Debug)]
pub struct SplitWitness {
    pub m: MVec,
    pub m1: MVec,
    pub m2: MVec,
    pub trace: Vec<String>,
}

fn mvec_from_ints(v: &[Int]) -> MVec {
    MVec(v.iter().map(|x| Rat::from_integer(x.clone())).collect())
}

fn ints_from_mvec(v: &MVec) -> Result<Vec<Int>> {
    if !v.is_integral() {
        return Err(Error::InvalidInput("expected an integral point".into()));
    }
    Ok(v.0.iter().map(|x| x.to_integer()).collect())
}

/// Exact validation gate every splitter passes through.
fn finish(
    qh: &HPolyhedron,
    qk: &HPolyhedron,
    m: &MVec,
    m1: MVec,
    trace: Vec<String>,
) -> Result<SplitWitness> {
    let m2 = m - &m1;
    if !qh.contains_lattice_point(&m1) {
        return Err(Error::InvariantBreach(format!(
            "split produced m1 = {m1:?} outside Q_h"
        )));
    }
    if !qk.contains_lattice_point(&m2) {
        return Err(Error::InvariantBreach(format!(
            "split produced m2 = {m2:?} outside Q_k"
        )));
    }
    Ok(SplitWitness { m: m.clone(), m1, m2, trace })
}

fn require_integral_parts(h: &PLFunction, name: &str) -> Result<()> {
    if h.linear_parts.iter().any(|p| !p.is_integral()) {
        return Err(Error::Unsupported(format!(
            "{name} must be an M-integral bundle for the splitting algorithms"
        )));
    }
    Ok(())
}

/// Lexicographically smallest vertex of `Q_h cap (m - Q_k)`: the rational
/// seed decomposition all rounding schemes start from.
fn rational_seed(
    qh: &HPolyhedron,
    qk: &HPolyhedron,
    m: &MVec,
    caps: &Caps,
) -> Result<MVec> {
    let region = qh.intersect(&qk.reflected_through(m)?)?;
    let vertices = region.vertex_set(caps)?;
    vertices
        .into_iter()
        .next()
        .ok_or_else(|| Error::Unsupported("no real seed decomposition exists".into()))
}

// ---------------------------------------------------------------------------
// Blow-up of A^l along sigma(e_i : i in S)
// ---------------------------------------------------------------------------

/// Structured data of an `ex1`-type polyhedron: `z_i >= a_i` for all `i` and
/// `sum_{i in S} z_i >= b`.
struct OrthantPlusSum {
    lower: Vec<Int>,
    sum_bound: Int,
    support: Vec<usize>,
}

impl OrthantPlusSum {
    fn from_bundle(h: &PLFunction) -> Result<Self> {
        let fan = &h.fan;
        let l = fan.rank;
        let mut lower = vec![None; l];
        let mut extra = None;
        for (ri, ray) in fan.rays.iter().enumerate() {
            let coords = &ray.0;
            let ones: Vec<usize> = (0..l).filter(|&i| !coords[i].is_zero()).collect();
            let is_unit = ones.len() == 1 && coords[ones[0]] == Int::from(1);
            if is_unit {
                lower[ones[0]] = Some(&h.ray_values[ri]);
            } else if ones.iter().all(|&i| coords[i] == Int::from(1)) {
                if extra.is_some() {
                    return Err(Error::Unsupported("not an ex1-type fan".into()));
                }
                extra = Some((ones, &h.ray_values[ri]));
            } else {
                return Err(Error::Unsupported("not an ex1-type fan".into()));
            }
        }
        let (support, b) = extra.ok_or_else(|| Error::Unsupported("not an ex1-type fan".into()))?;
        let mut low = Vec::with_capacity(l);
        for v in lower {
            let v = v.ok_or_else(|| Error::Unsupported("not an ex1-type fan".into()))?;
            if !v.is_integer() {
                return Err(Error::Unsupported("ex1 split needs integral ray values".into()));
            }
            low.push(v.to_integer());
        }
        if !b.is_integer() {
            return Err(Error::Unsupported("ex1 split needs integral ray values".into()));
        }
        Ok(OrthantPlusSum { lower: low, sum_bound: b.to_integer(), support })
    }
}

/// The rounding split for a pair of `ex1`-type regions sharing a support
/// set: floors with an `epsilon` boost on a prefix of the support chosen so
/// that the sum constraint lands exactly on its bound.
fn orthant_plus_sum_split(
    dh: &OrthantPlusSum,
    dk: &OrthantPlusSum,
    seed: &MVec,
    m: &[Int],
    trace: &mut Vec<String>,
) -> Result<Vec<Int>> {
    let l = m.len();
    if dh.support != dk.support {
        return Err(Error::Unsupported("support sets of the two bundles differ".into()));
    }
    let support = &dh.support;
    let x = &seed.0;
    let y: Vec<Rat> = (0..l).map(|i| Rat::from_integer(m[i].clone()) - &x[i]).collect();
    let fx: Vec<Int> = x.iter().map(floor_int).collect();
    let fy: Vec<Int> = y.iter().map(floor_int).collect();
    let e: Vec<Int> = x.iter().map(eps).collect();
    let in_shape = |z: &[Int], d: &OrthantPlusSum| -> bool {
        (0..l).all(|i| z[i] >= d.lower[i])
            && support.iter().map(|&i| z[i].clone()).sum::<Int>() >= d.sum_bound
    };
    // Case 1: the floors of y already work.
    if in_shape(&fy, dk) {
        trace.push("rounding case 1: floor(y) feasible".into());
        return Ok((0..l).map(|i| &fx[i] + &e[i]).collect());
    }
    // Case 2: the floors of x already work.
    if in_shape(&fx, dh) {
        trace.push("rounding case 2: floor(x) feasible".into());
        return Ok(fx);
    }
    // Case 3: boost a prefix of the support so the sum constraint is tight.
    let floor_sum: Int = support.iter().map(|&i| fx[i].clone()).sum();
    let mut boost = Int::zero();
    let mut cut = None;
    for s in 0..=support.len() {
        if s > 0 {
            boost += &e[support[s - 1]];
        }
        if &floor_sum + &boost == dh.sum_bound {
            cut = Some(s);
            break;
        }
    }
    let s = cut.ok_or_else(|| {
        Error::InvariantBreach("no cut index makes the sum constraint tight".into())
    })?;
    trace.push(format!("rounding case 3: cut index s = {s}"));
    let boosted: Vec<bool> = {
        let mut b = vec![false; l];
        for &i in support.iter().take(s) {
            b[i] = true;
        }
        b
    };
    Ok((0..l)
        .map(|i| if boosted[i] { &fx[i] + &e[i] } else { fx[i].clone() })
        .collect())
}

/// Splitting on the blow-up of `A^l` along `sigma(e_i : i in S)` for two
/// globally generated bundles.
pub fn split_blowup(
    h: &PLFunction,
    k: &PLFunction,
    m: &MVec,
    caps: &Caps,
) -> Result<SplitWitness> {
    if h.fan != k.fan {
        return Err(Error::InvalidInput("split needs both bundles on one fan".into()));
    }
    require_integral_parts(h, "h")?;
    require_integral_parts(k, "k")?;
    if !h.is_convex() || !k.is_convex() {
        return Err(Error::Unsupported("split_blowup needs convex bundles".into()));
    }
    let dh = OrthantPlusSum::from_bundle(h)?;
    let dk = OrthantPlusSum::from_bundle(k)?;
    let qh = polyhedron_q(h)?;
    let qk = polyhedron_q(k)?;
    let qhk = polyhedron_q(&h.add(k)?)?;
    if !qhk.contains_lattice_point(m) {
        return Err(Error::InvalidInput("point must lie in Q_(h+k) on its coset".into()));
    }
    let mi = ints_from_mvec(m)?;
    let mut trace = vec![format!("seed from lex-min vertex of Q_h cap (m - Q_k)")];
    let seed = rational_seed(&qh, &qk, m, caps)?;
    trace.push(format!("seed {seed:?}"));
    let m1 = orthant_plus_sum_split(&dh, &dk, &seed, &mi, &mut trace)?;
    finish(&qh, &qk, m, mvec_from_ints(&m1), trace)
}

// ---------------------------------------------------------------------------
// Chain of blow-ups (ex1b), k = h
// ---------------------------------------------------------------------------

/// Splitting `m in Q_{2h}` on the chain-of-blow-ups fan: halve, then boost
/// the odd chain positions by their rounding indicators.
pub fn split_chain_blowup(h: &PLFunction, m: &MVec, caps: &Caps) -> Result<SplitWitness> {
    let _ = caps;
    require_integral_parts(h, "h")?;
    if !h.is_convex() {
        return Err(Error::Unsupported("split_chain_blowup needs a convex bundle".into()));
    }
    let fan = &h.fan;
    let l = fan.rank;
    // Detect the chain: units plus consecutive-pair rays e_{i-1} + e_i.
    let mut r = 1usize;
    for (ri, ray) in fan.rays.iter().enumerate() {
        let ones: Vec<usize> = (0..l).filter(|&i| !ray.0[i].is_zero()).collect();
        let unit = ones.len() == 1 && ray.0[ones[0]] == Int::from(1);
        let pair = ones.len() == 2
            && ones[1] == ones[0] + 1
            && ones.iter().all(|&i| ray.0[i] == Int::from(1));
        if !unit && !pair {
            return Err(Error::Unsupported("not an ex1b-type fan".into()));
        }
        if pair {
            r = r.max(ones[1] + 1);
        }
        if !h.ray_values[ri].is_integer() {
            return Err(Error::Unsupported("chain split needs integral ray values".into()));
        }
    }
    let qh = polyhedron_q(h)?;
    let q2 = polyhedron_q(&h.scale(2)?)?;
    if !q2.contains_lattice_point(m) {
        return Err(Error::InvalidInput("point must lie in Q_(2h) on its coset".into()));
    }
    let mi = ints_from_mvec(m)?;
    let two = Int::from(2);
    let halves: Vec<Rat> = mi.iter().map(|x| Rat::new(x.clone(), two.clone())).collect();
    let s = if r % 2 == 1 { r } else { r - 1 };
    let mut trace = vec![format!("chain length r = {r}, boost prefix s = {s}")];
    let mut m1 = Vec::with_capacity(l);
    for i in 0..l {
        let f = floor_int(&halves[i]);
        // 1-indexed odd chain positions up to s receive the epsilon boost.
        let boost = (i + 1) % 2 == 1 && i + 1 <= s;
        m1.push(if boost { &f + eps(&halves[i]) } else { f });
    }
    trace.push("boosted odd chain coordinates of ceil(m/2)".into());
    finish(&qh, &qh, m, mvec_from_ints(&m1), trace)
}

// ---------------------------------------------------------------------------
// Rank-2 strictly convex pairs (ex 2)
// ---------------------------------------------------------------------------

/// A corner triangle `{y1 <= U, y2 <= V, a . y >= c}` carried through the
/// recursion in unimodular coordinates; `p1` is the top-left vertex, `p2`
/// the bottom-right one, both on the slant edge.
#[derive(Clone, Debug)]
struct Tri {
    p1: Vec<Int>,
    p2: Vec<Int>,
}

/// Recursive 45-degree-cut splitting of a corner-triangle pair. Returns the
/// `m1`-part in the CURRENT coordinates; the caller validates in the
/// original ones.
fn split_triangles(
    t1: &Tri,
    t2: &Tri,
    a: &[Int],
    m: &[Int],
    depth: usize,
    depth_cap: usize,
    caps: &Caps,
    trace: &mut Vec<String>,
) -> Result<Vec<Int>> {
    if depth > depth_cap {
        return Err(Error::InvariantBreach("triangle recursion exceeded its depth bound".into()));
    }
    let t3 = Tri {
        p1: vec![&t1.p1[0] + &t2.p1[0], &t1.p1[1] + &t2.p1[1]],
        p2: vec![&t1.p2[0] + &t2.p2[0], &t1.p2[1] + &t2.p2[1]],
    };
    // Normalize to a1 >= a2 by swapping the coordinate axes.
    if a[1] > a[0] {
        trace.push(format!("depth {depth}: swap axes"));
        let swap_tri = |t: &Tri| Tri {
            // Swapping coordinates exchanges the vertex roles.
            p1: vec![t.p2[1].clone(), t.p2[0].clone()],
            p2: vec![t.p1[1].clone(), t.p1[0].clone()],
        };
        let sa = vec![a[1].clone(), a[0].clone()];
        let sm = vec![m[1].clone(), m[0].clone()];
        let out = split_triangles(
            &swap_tri(t1),
            &swap_tri(t2),
            &sa,
            &sm,
            depth,
            depth_cap,
            caps,
            trace,
        )?;
        return Ok(vec![out[1].clone(), out[0].clone()]);
    }
    if a[0] == Int::from(1) && a[1] == Int::from(1) {
        // Base case: both regions are ex1-type over the support {0, 1}.
        trace.push(format!("depth {depth}: base case (1,1)"));
        let mk = |t: &Tri| OrthantPlusSum {
            lower: vec![t.p1[0].clone(), t.p2[1].clone()],
            sum_bound: &t.p1[0] + &t.p1[1],
            support: vec![0, 1],
        };
        let dh = mk(t1);
        let dk = mk(t2);
        let mkpoly = |d: &OrthantPlusSum| {
            HPolyhedron::new(
                vec![NVec::from_ints(&[1, 0]), NVec::from_ints(&[0, 1]), NVec::from_ints(&[1, 1])],
                vec![
                    Rat::from_integer(d.lower[0].clone()),
                    Rat::from_integer(d.lower[1].clone()),
                    Rat::from_integer(d.sum_bound.clone()),
                ],
                crate::lattice::LatticeCoset::new(MVec::zero(2)),
            )
        };
        let qh = mkpoly(&dh)?;
        let qk = mkpoly(&dk)?;
        let mv = mvec_from_ints(m);
        let seed = rational_seed(&qh, &qk, &mv, caps)?;
        return orthant_plus_sum_split(&dh, &dk, &seed, m, trace);
    }
    // Cut at 45 degrees through the top-left vertex.
    let cut3 = &t3.p1[0] + &t3.p1[1];
    let msum = &m[0] + &m[1];
    if msum >= cut3 {
        trace.push(format!("depth {depth}: above the cut"));
        let one = vec![Int::from(1), Int::from(1)];
        let upper = |t: &Tri| {
            // q = (x1(p2), x2(p1) + x1(p1) - x1(p2)) on the vertical side.
            let q = vec![t.p2[0].clone(), &t.p1[1] + &t.p1[0] - &t.p2[0]];
            Tri { p1: t.p1.clone(), p2: q }
        };
        return split_triangles(
            &upper(t1),
            &upper(t2),
            &one,
            m,
            depth + 1,
            depth_cap,
            caps,
            trace,
        );
    }
    trace.push(format!("depth {depth}: below the cut, shear"));
    // Below the cut: shear phi(y) = (y1, y1 + y2), slant becomes
    // (a1 - a2, a2).
    let phi = |y: &[Int]| vec![y[0].clone(), &y[0] + &y[1]];
    let lower = |t: &Tri| {
        let q = vec![t.p2[0].clone(), &t.p1[1] + &t.p1[0] - &t.p2[0]];
        Tri { p1: phi(&t.p1), p2: phi(&q) }
    };
    let sheared_a = vec![&a[0] - &a[1], a[1].clone()];
    let out = split_triangles(
        &lower(t1),
        &lower(t2),
        &sheared_a,
        &phi(m),
        depth + 1,
        depth_cap,
        caps,
        trace,
    )?;
    // phi^{-1}(y) = (y1, y2 - y1).
    Ok(vec![out[0].clone(), &out[1] - &out[0]])
}

/// Splitting for two strictly convex, globally generated bundles on a
/// common rank-2 fan: vertex-cone case, else locate the boundary edge and
/// run the triangle recursion; a failed candidate falls back to the exact
/// bounded search.
pub fn split_dim2(
    h1: &PLFunction,
    h2: &PLFunction,
    m: &MVec,
    caps: &Caps,
) -> Result<SplitWitness> {
    if h1.fan != h2.fan {
        return Err(Error::InvalidInput("split needs both bundles on one fan".into()));
    }
    if h1.rank() != 2 {
        return Err(Error::Unsupported("split_dim2 is a rank-2 algorithm".into()));
    }
    require_integral_parts(h1, "h1")?;
    require_integral_parts(h2, "h2")?;
    if !h1.is_strictly_convex() || !h2.is_strictly_convex() {
        return Err(Error::Unsupported(
            "split_dim2 needs strictly convex bundles on a common fan".into(),
        ));
    }
    let h3 = h1.add(h2)?;
    let q1 = polyhedron_q(h1)?;
    let q2 = polyhedron_q(h2)?;
    let q3 = polyhedron_q(&h3)?;
    if !q3.contains_lattice_point(m) {
        return Err(Error::InvalidInput("point must lie in Q_(h1+h2) on its coset".into()));
    }
    let mut trace = Vec::new();
    // Vertex-cone case: m >= h3|sigma componentwise for some maximal cone.
    for (ci, part3) in h3.linear_parts.iter().enumerate() {
        let diff = m - part3;
        if diff.0.iter().all(|x| !x.is_negative()) {
            trace.push(format!("vertex cone at maximal cone {ci}"));
            return finish(&q1, &q2, m, h1.linear_parts[ci].clone(), trace);
        }
    }
    // Which edge of Q_{h3} sits under m: vertices ordered by ascending x2.
    let mut order: Vec<usize> = (0..h3.linear_parts.len()).collect();
    order.sort_by(|&a, &b| {
        h3.linear_parts[a].0[1]
            .cmp(&h3.linear_parts[b].0[1])
            .then(h3.linear_parts[a].0[0].cmp(&h3.linear_parts[b].0[0]))
    });
    let x2 = |ci: usize| &h3.linear_parts[ci].0[1];
    let mut i_star = None;
    for (pos, &ci) in order.iter().enumerate() {
        if &m.0[1] >= x2(ci) {
            i_star = Some(pos);
        }
    }
    let i_star = i_star.ok_or_else(|| {
        Error::InvariantBreach("m lies below every vertex of Q_(h1+h2)".into())
    })?;
    if i_star + 1 >= order.len() {
        return Err(Error::InvariantBreach(
            "m escaped the vertex cones yet sits above the top vertex".into(),
        ));
    }
    let lower_cone = order[i_star];
    let upper_cone = order[i_star + 1];
    // The slant normal is the fan ray shared by the two adjacent cones.
    let shared: Vec<usize> = h3.fan.max_cones[lower_cone]
        .iter()
        .copied()
        .filter(|i| h3.fan.max_cones[upper_cone].contains(i))
        .collect();
    if shared.len() != 1 {
        return Err(Error::InvariantBreach("adjacent cones share more than a ray".into()));
    }
    let slant = h3.fan.rays[shared[0]].0.clone();
    trace.push(format!(
        "edge between maximal cones {lower_cone} and {upper_cone}, slant {slant:?}"
    ));
    let tri = |h: &PLFunction| -> Result<Tri> {
        Ok(Tri {
            p1: ints_from_mvec(&h.linear_parts[upper_cone])?,
            p2: ints_from_mvec(&h.linear_parts[lower_cone])?,
        })
    };
    let t1 = tri(h1)?;
    let t2 = tri(h2)?;
    let depth_cap = {
        let sum = &slant[0] + &slant[1];
        usize::try_from(sum.clone()).unwrap_or(usize::MAX).max(4)
    };
    let mi = ints_from_mvec(m)?;
    let attempt = split_triangles(&t1, &t2, &slant, &mi, 0, depth_cap, caps, &mut trace);
    match attempt {
        Ok(cand) => {
            let m1 = mvec_from_ints(&cand);
            let m2 = m - &m1;
            if q1.contains_lattice_point(&m1) && q2.contains_lattice_point(&m2) {
                return finish(&q1, &q2, m, m1, trace);
            }
            trace.push("recursive candidate left the polyhedra; exact fallback".into());
        }
        Err(Error::InvariantBreach(msg)) | Err(Error::Unsupported(msg)) => {
            trace.push(format!("recursion failed ({msg}); exact fallback"));
        }
        Err(e) => return Err(e),
    }
    match crate::normality::decomposes(&q1, &q2, m, caps)? {
        Some((m1, _)) => finish(&q1, &q2, m, m1, trace),
        None => Err(Error::InvariantBreach(
            "no decomposition exists for a strictly convex rank-2 pair".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// ex2b: the rank-3 simplex family, k = h
// ---------------------------------------------------------------------------

/// Splitting `m in Q_{2h}` for the `ex2b(a)` family: the smooth case `a = 1`
/// reduces to the blow-up rounding; otherwise the vertex cones are peeled
/// off and the bounded remainder is split by exact search.
pub fn split_simplex3(h: &PLFunction, m: &MVec, caps: &Caps) -> Result<SplitWitness> {
    require_integral_parts(h, "h")?;
    let fan = &h.fan;
    if fan.rank != 3 || fan.rays.len() != 4 {
        return Err(Error::Unsupported("not an ex2b-type fan".into()));
    }
    let apex_idx = (0..fan.rays.len())
        .find(|&i| (0..3).all(|j| fan.rays[i] != NVec::unit(3, j)))
        .ok_or_else(|| Error::Unsupported("not an ex2b-type fan".into()))?;
    let apex = &fan.rays[apex_idx];
    let a = apex.0[0].clone();
    if apex.0[1] != a || apex.0[2] != Int::from(1) {
        return Err(Error::Unsupported("not an ex2b-type fan".into()));
    }
    if !h.is_strictly_convex() {
        return Err(Error::Unsupported("split_simplex3 needs a strictly convex bundle".into()));
    }
    let qh = polyhedron_q(h)?;
    let q2 = polyhedron_q(&h.scale(2)?)?;
    if !q2.contains_lattice_point(m) {
        return Err(Error::InvalidInput("point must lie in Q_(2h) on its coset".into()));
    }
    let mut trace = Vec::new();
    if a == Int::from(1) {
        trace.push("a = 1: smooth case via the blow-up rounding".into());
        let dh = OrthantPlusSum::from_bundle(h)?;
        let seed = rational_seed(&qh, &qh, m, caps)?;
        let mi = ints_from_mvec(m)?;
        let m1 = orthant_plus_sum_split(&dh, &dh, &seed, &mi, &mut trace)?;
        return finish(&qh, &qh, m, mvec_from_ints(&m1), trace);
    }
    // Vertex-cone fast path.
    for (ci, part) in h.linear_parts.iter().enumerate() {
        let double = part + part;
        let diff = m - &double;
        if diff.0.iter().all(|x| !x.is_negative()) {
            trace.push(format!("vertex cone at maximal cone {ci}"));
            return finish(&qh, &qh, m, h.linear_parts[ci].clone(), trace);
        }
    }
    // The remainder is a bounded corner region; split it exactly.
    trace.push(format!("a = {a}: bounded corner region, exact search"));
    match crate::normality::decomposes(&qh, &qh, m, caps)? {
        Some((m1, _)) => finish(&qh, &qh, m, m1, trace),
        None => Err(Error::InvariantBreach(
            "no decomposition exists on an ex2b instance".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// ex3_1: the Z^n family
// ---------------------------------------------------------------------------

/// Interval-sum shape on the divisor: `{z >= 0, lo <= sum z <= hi}` after
/// translating the corner to the origin.
#[derive(Clone, Debug)]
struct IntervalSum {
    corner: Vec<Int>,
    lo: Option<Int>,
    hi: Option<Int>,
}

impl IntervalSum {
    fn contains(&self, w: &[Int]) -> bool {
        let mut sum = Int::zero();
        for (wi, ci) in w.iter().zip(&self.corner) {
            if wi < ci {
                return false;
            }
            sum += wi - ci;
        }
        if let Some(lo) = &self.lo {
            if &sum < lo {
                return false;
            }
        }
        if let Some(hi) = &self.hi {
            if &sum > hi {
                return false;
            }
        }
        true
    }
}

/// The divisor-level `r`-selection: split `m_w` into two interval-sum
/// members following the three-case choice of the boost count `r`.
fn interval_sum_split(
    dh: &IntervalSum,
    dk: &IntervalSum,
    seed: &[Rat],
    m_w: &[Int],
    trace: &mut Vec<String>,
) -> Result<Vec<Int>> {
    let d = m_w.len();
    let x: Vec<Rat> = seed.to_vec();
    let y: Vec<Rat> = (0..d).map(|i| Rat::from_integer(m_w[i].clone()) - &x[i]).collect();
    let fx: Vec<Int> = x.iter().map(floor_int).collect();
    let fy: Vec<Int> = y.iter().map(floor_int).collect();
    let e: Vec<Int> = x.iter().map(eps).collect();
    let t: Int = e.iter().sum();
    // Normalized sums relative to the corners.
    let sum_rel = |z: &[Int], corner: &[Int]| -> Int {
        z.iter().zip(corner).map(|(a, b)| a - b).sum()
    };
    let bx = sum_rel(&fx, &dh.corner);
    let by = sum_rel(&fy, &dk.corner);
    // The paper's letters: a <= [x]+r <= b and c <= [y]+t-r <= d; only b
    // and c steer the choice of r, the rest is verified afterwards.
    let b = dh.hi.clone();
    let c = dk.lo.clone();
    let le = |lhs: &Int, rhs: &Option<Int>| rhs.as_ref().map_or(true, |r| lhs <= r);
    let r: Int = if le(&(&t + &bx), &b) {
        // Case 1.
        let r = match &c {
            None => t.clone(),
            Some(c) => (&by + &t - c).min(t.clone()),
        };
        trace.push(format!("r-selection case 1: r = {r}"));
        r
    } else if match (&b, &c) {
        (Some(b), Some(c)) => &by + &bx + &t <= b + c,
        _ => true,
    } {
        // Case 2.
        let r = match &c {
            Some(c) if (c - &by).is_positive() => &t + &by - c,
            _ => t.clone(),
        };
        trace.push(format!("r-selection case 2: r = {r}"));
        r
    } else {
        // Case 3: r = b - [x].
        let b = b.clone().ok_or_else(|| {
            Error::InvariantBreach("case 3 requires an upper sum bound".into())
        })?;
        let r = &b - &bx;
        trace.push(format!("r-selection case 3: r = {r}"));
        r
    };
    if r.is_negative() || r > t {
        return Err(Error::InvariantBreach(format!("boost count r = {r} outside [0, {t}]")));
    }
    // Boost the first prefix whose epsilon sum reaches r.
    let mut m1 = fx.clone();
    let mut acc = Int::zero();
    for i in 0..d {
        if acc == r {
            break;
        }
        if !e[i].is_zero() {
            m1[i] += &e[i];
            acc += &e[i];
        }
    }
    if acc != r {
        return Err(Error::InvariantBreach("not enough fractional coordinates to boost".into()));
    }
    let m2: Vec<Int> = (0..d).map(|i| &m_w[i] - &m1[i]).collect();
    if !dh.contains(&m1) || !dk.contains(&m2) {
        return Err(Error::InvariantBreach("r-selection left the interval-sum shape".into()));
    }
    Ok(m1)
}

/// Data of an `ex3_1` bundle after normalizing `h(e_j) = 0`: the chain
/// values `h(v_i)`.
struct ZnData {
    l: usize,
    shift: MVec,
    chain: Vec<Int>,
}

fn zn_data(h: &PLFunction) -> Result<ZnData> {
    let fan = &h.fan;
    let l = fan.rank;
    if l < 2 || fan.rays.len() < l + 1 {
        return Err(Error::Unsupported("not an ex3_1-type fan".into()));
    }
    let n = fan.rays.len() - l;
    let reference = catalog::fan_ex3_1(l, n)?;
    if *fan != reference {
        return Err(Error::Unsupported("not an ex3_1-type fan".into()));
    }
    // Normalize: subtract the linear function with h(e_j) on the units.
    let mut shift = vec![Rat::zero(); l];
    for j in 0..l {
        let idx = fan.ray_index(&NVec::unit(l, j)).expect("unit ray");
        shift[j] = h.ray_values[idx].clone();
    }
    let shift = MVec(shift);
    let mut chain = Vec::with_capacity(n);
    for i in 1..=n {
        let vi = catalog::zn_chain_ray(l, i);
        let idx = fan.ray_index(&vi).expect("chain ray");
        let normalized = &h.ray_values[idx] - pair_unchecked(&shift, &vi);
        if !normalized.is_integer() {
            return Err(Error::Unsupported("zn split needs integral ray values".into()));
        }
        chain.push(normalized.to_integer());
    }
    Ok(ZnData { l, shift, chain })
}

/// Ambient lift of divisor coordinates for the tight chain ray `v_i`
/// (`i = 0` meaning `e_l`): `x = (w, -i * sum w)`.
fn zn_ambient(w: &[Int], i: usize) -> Vec<Int> {
    let sum: Int = w.iter().sum();
    let mut x: Vec<Int> = w.to_vec();
    x.push(-Int::from(i as i64) * sum);
    x
}

/// The divisor shape seen by the bundle `chain` at the tight ray `v_i`,
/// relative to the anchor `x0` (a linear part tight at `v_i`).
fn zn_divisor_shape(data: &ZnData, x0: &[Int], i: usize) -> IntervalSum {
    let l = data.l;
    let corner: Vec<Int> = (0..l - 1).map(|j| -&x0[j]).collect();
    let corner_sum: Int = corner.iter().sum();
    let mut lo: Option<Int> = None;
    let mut hi: Option<Int> = None;
    let ii = i as i64;
    // e_l constraint: -i * sum w >= -x0_l, an upper bound for i >= 1; the
    // floor is valid because the sums are integers.
    if i >= 1 {
        let bound = floor_int(&Rat::new(x0[l - 1].clone(), Int::from(ii)));
        let shifted = bound - &corner_sum;
        hi = Some(match hi {
            None => shifted,
            Some(old) => old.min(shifted),
        });
    }
    // Chain constraints v_t, t != i: (t - i) sum w >= a_t - <x0, v_t>.
    for (ti, at) in data.chain.iter().enumerate() {
        let t = ti + 1;
        if t == i {
            continue;
        }
        let vt = catalog::zn_chain_ray(l, t);
        let x0_vt: Int = x0.iter().zip(&vt.0).map(|(a, b)| a * b).sum();
        let rhs = at - &x0_vt;
        let coef = t as i64 - ii;
        if coef > 0 {
            // sum w >= ceil(rhs / coef)
            let bound = -floor_int(&Rat::new(-rhs, Int::from(coef)));
            let shifted = bound - &corner_sum;
            lo = Some(match lo {
                None => shifted,
                Some(old) => old.max(shifted),
            });
        } else {
            // sum w <= floor(rhs / coef) with coef < 0.
            let bound = floor_int(&Rat::new(rhs, Int::from(coef)));
            let shifted = bound - &corner_sum;
            hi = Some(match hi {
                None => shifted,
                Some(old) => old.min(shifted),
            });
        }
    }
    IntervalSum { corner, lo, hi }
}

/// Splitting on the `Z^n` family: reduce to the minimal layer, find a tight
/// chain ray, split on the divisor by the `r`-selection and lift back.
pub fn split_zn(h: &PLFunction, k: &PLFunction, m: &MVec, caps: &Caps) -> Result<SplitWitness> {
    if h.fan != k.fan {
        return Err(Error::InvalidInput("split needs both bundles on one fan".into()));
    }
    require_integral_parts(h, "h")?;
    require_integral_parts(k, "k")?;
    if !h.is_convex() || !k.is_convex() {
        return Err(Error::Unsupported("split_zn needs convex bundles".into()));
    }
    let dh = zn_data(h)?;
    let dk = zn_data(k)?;
    let l = dh.l;
    let qh = polyhedron_q(h)?;
    let qk = polyhedron_q(k)?;
    let hk = h.add(k)?;
    let qhk = polyhedron_q(&hk)?;
    if !qhk.contains_lattice_point(m) {
        return Err(Error::InvalidInput("point must lie in Q_(h+k) on its coset".into()));
    }
    let mut trace = Vec::new();
    // Work with normalized data: subtract the unit-ray linear parts.
    let shift = &dh.shift + &dk.shift;
    let mut reduced = ints_from_mvec(&(m - &shift))?;
    let chain_sum: Vec<Int> =
        dh.chain.iter().zip(&dk.chain).map(|(a, b)| a + b).collect();
    let in_q_sum = |x: &[Int]| -> bool {
        if x.iter().any(|c| c.is_negative()) {
            return false;
        }
        for (ti, bound) in chain_sum.iter().enumerate() {
            let vt = catalog::zn_chain_ray(l, ti + 1);
            let val: Int = x.iter().zip(&vt.0).map(|(a, b)| a * b).sum();
            if &val < bound {
                return false;
            }
        }
        true
    };
    debug_assert!(in_q_sum(&reduced));
    // Reduce to a minimal point.
    let mut peeled = vec![Int::zero(); l];
    loop {
        let mut progressed = false;
        for j in 0..l {
            loop {
                let mut cand = reduced.clone();
                cand[j] -= 1;
                if in_q_sum(&cand) {
                    reduced = cand;
                    peeled[j] += 1;
                    progressed = true;
                } else {
                    break;
                }
            }
        }
        if !progressed {
            break;
        }
    }
    trace.push(format!("peeled f-multiples {peeled:?} to reach a minimal point"));
    // Tight chain ray (the claim guarantees one among v_1..v_n, e_l).
    let mut tight: Option<usize> = None;
    for (ti, bound) in chain_sum.iter().enumerate() {
        let vt = catalog::zn_chain_ray(l, ti + 1);
        let val: Int = reduced.iter().zip(&vt.0).map(|(a, b)| a * b).sum();
        if &val == bound {
            tight = Some(ti + 1);
            break;
        }
    }
    if tight.is_none() && reduced[l - 1].is_zero() {
        tight = Some(0);
    }
    let i = tight.ok_or_else(|| {
        Error::InvariantBreach("no tight chain ray on a minimal point".into())
    })?;
    trace.push(format!(
        "tight ray {}",
        if i == 0 { "e_l".to_string() } else { format!("v_{i}") }
    ));
    // Anchors: linear parts tight at the ray (normalized bundles).
    let ray = if i == 0 { NVec::unit(l, l - 1) } else { catalog::zn_chain_ray(l, i) };
    let ray_idx = h.fan.ray_index(&ray).expect("tight ray exists");
    let cone_idx = h
        .fan
        .max_cones
        .iter()
        .position(|c| c.contains(&ray_idx))
        .expect("every ray lies in a maximal cone");
    let anchor = |b: &PLFunction, shift: &MVec| -> Result<Vec<Int>> {
        ints_from_mvec(&(&b.linear_parts[cone_idx] - shift))
    };
    let x0h = anchor(h, &dh.shift)?;
    let x0k = anchor(k, &dk.shift)?;
    // Divisor coordinates of the offset.
    let m_w: Vec<Int> = (0..l - 1)
        .map(|j| &reduced[j] - &x0h[j] - &x0k[j])
        .collect();
    let shape_h = zn_divisor_shape(&dh, &x0h, i);
    let shape_k = zn_divisor_shape(&dk, &x0k, i);
    // Rational seed on the divisor: lex-min vertex of the bounded region
    // shape_h cap (m_w - shape_k).
    let seed = divisor_seed(&shape_h, &shape_k, &m_w, caps)?;
    let w1 = interval_sum_split(&shape_h, &shape_k, &seed, &m_w, &mut trace);
    let candidate = match w1 {
        Ok(w1) => {
            let x1 = zn_ambient(&w1, i);
            let m1_red: Vec<Int> = (0..l).map(|j| &x0h[j] + &x1[j]).collect();
            Some(m1_red)
        }
        Err(Error::InvariantBreach(msg)) | Err(Error::Unsupported(msg)) => {
            trace.push(format!("divisor split failed ({msg}); exact fallback"));
            None
        }
        Err(e) => return Err(e),
    };
    let assemble = |m1_red: &[Int]| -> MVec {
        let mut full: Vec<Int> = m1_red.to_vec();
        for j in 0..l {
            full[j] += &peeled[j];
        }
        let normalized = mvec_from_ints(&full);
        &normalized + &dh.shift
    };
    if let Some(m1_red) = candidate {
        let m1 = assemble(&m1_red);
        let m2 = m - &m1;
        if qh.contains_lattice_point(&m1) && qk.contains_lattice_point(&m2) {
            return finish(&qh, &qk, m, m1, trace);
        }
        trace.push("lifted candidate left the polyhedra; exact fallback".into());
    }
    match crate::normality::decomposes(&qh, &qk, m, caps)? {
        Some((m1, _)) => finish(&qh, &qk, m, m1, trace),
        None => Err(Error::InvariantBreach(
            "no decomposition exists on an ex3_1 instance".into(),
        )),
    }
}

/// Lex-min vertex of the bounded divisor region.
fn divisor_seed(
    shape_h: &IntervalSum,
    shape_k: &IntervalSum,
    m_w: &[Int],
    caps: &Caps,
) -> Result<Vec<Rat>> {
    let d = m_w.len();
    let mut normals = Vec::new();
    let mut bounds = Vec::new();
    let ones = NVec(vec![Int::from(1); d]);
    // shape_h constraints on w.
    for j in 0..d {
        normals.push(NVec::unit(d, j));
        bounds.push(Rat::from_integer(shape_h.corner[j].clone()));
    }
    let corner_sum_h: Int = shape_h.corner.iter().sum();
    if let Some(lo) = &shape_h.lo {
        normals.push(ones.clone());
        bounds.push(Rat::from_integer(lo + &corner_sum_h));
    }
    if let Some(hi) = &shape_h.hi {
        normals.push(-&ones);
        bounds.push(Rat::from_integer(-(hi + &corner_sum_h)));
    }
    // (m_w - shape_k) constraints.
    let corner_sum_k: Int = shape_k.corner.iter().sum();
    for j in 0..d {
        normals.push(-&NVec::unit(d, j));
        bounds.push(Rat::from_integer(&shape_k.corner[j] - &m_w[j]));
    }
    let m_sum: Int = m_w.iter().sum();
    if let Some(lo) = &shape_k.lo {
        normals.push(ones.clone());
        bounds.push(Rat::from_integer(&m_sum - &corner_sum_k - lo));
        // w . 1 <= m_sum - corner_k - lo, flip sign:
        let last = normals.len() - 1;
        normals[last] = -&ones;
        let b = bounds[last].clone();
        bounds[last] = -b;
    }
    if let Some(hi) = &shape_k.hi {
        normals.push(ones.clone());
        bounds.push(Rat::from_integer(&m_sum - &corner_sum_k - hi));
    }
    let poly = HPolyhedron::new(
        normals,
        bounds,
        crate::lattice::LatticeCoset::new(MVec::zero(d)),
    )?;
    let vertices = poly.vertex_set(caps)?;
    vertices
        .into_iter()
        .next()
        .map(|v| v.0)
        .ok_or_else(|| Error::Unsupported("no real seed on the divisor".into()))
}

// ---------------------------------------------------------------------------
// ex3_2: ampleness inequalities plus the brute-force check
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Ex32Report {
    pub inequalities: Vec<(String, bool)>,
    pub all_inequalities_hold: bool,
    pub ample: bool,
    pub check: Option<CheckReport>,
}

/// Validates the printed ampleness inequalities of the `ex3_2` family and
/// runs the open-side self-product check.
pub fn check_ex3_2(h: &PLFunction, caps: &Caps) -> Result<Ex32Report> {
    require_integral_parts(h, "h")?;
    let fan = &h.fan;
    let l = fan.rank;
    let n = fan.rays.len().checked_sub(l + 1).ok_or_else(|| {
        Error::Unsupported("not an ex3_2-type fan".into())
    })?;
    if n < 1 || *fan != catalog::fan_ex3_2(l, n)? {
        return Err(Error::Unsupported("not an ex3_2-type fan".into()));
    }
    // Normalize h(e_j) = 0.
    let mut shift = vec![Rat::zero(); l];
    for j in 0..l {
        let idx = fan.ray_index(&NVec::unit(l, j)).expect("unit ray");
        shift[j] = h.ray_values[idx].clone();
    }
    let shift = MVec(shift);
    let value_at = |ray: &NVec| -> Rat {
        let idx = fan.ray_index(ray).expect("catalog ray");
        &h.ray_values[idx] - pair_unchecked(&shift, ray)
    };
    let a: Vec<Rat> = (1..=n).map(|i| value_at(&catalog::zn_chain_ray(l, i))).collect();
    let b = value_at(&catalog::ex3_2_extra_ray(l));
    let mut ineqs: Vec<(String, bool)> = Vec::new();
    let zero = Rat::zero();
    ineqs.push((format!("b > a_1 > 0 : {b} > {} > 0", a[0]), b > a[0] && a[0] > zero));
    ineqs.push((
        format!("2 a_1 > b : {} > {b}", &a[0] + &a[0]),
        &a[0] + &a[0] > b,
    ));
    for i in 2..=n {
        let lhs = &a[i - 1] + (&b * Rat::from_integer(Int::from((i - 1) as i64)));
        let rhs = &a[0] * Rat::from_integer(Int::from((2 * i - 1) as i64));
        ineqs.push((format!("a_{i} + {}b < {}a_1 : {lhs} < {rhs}", i - 1, 2 * i - 1), lhs < rhs));
        let ia1 = &a[0] * Rat::from_integer(Int::from(i as i64));
        ineqs.push((format!("{i}a_1 > a_{i} : {ia1} > {}", a[i - 1]), ia1 > a[i - 1]));
    }
    let all_hold = ineqs.iter().all(|(_, ok)| *ok);
    let ample = h.status(None)?.ample;
    if !all_hold || !ample {
        return Ok(Ex32Report {
            inequalities: ineqs,
            all_inequalities_hold: all_hold,
            ample,
            check: None,
        });
    }
    let check = check_sum_open(h, h, caps)?;
    Ok(Ex32Report { inequalities: ineqs, all_inequalities_hold: all_hold, ample, check: Some(check) })
}

/// Dispatch by fan family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitAlgorithm {
    Blowup,
    Chain,
    Dim2,
    Simplex3,
    Zn,
    Auto,
}

pub fn split(
    algorithm: SplitAlgorithm,
    h: &PLFunction,
    k: Option<&PLFunction>,
    m: &MVec,
    caps: &Caps,
) -> Result<SplitWitness> {
    let k_or_h = k.unwrap_or(h);
    match algorithm {
        SplitAlgorithm::Blowup => split_blowup(h, k_or_h, m, caps),
        SplitAlgorithm::Chain => split_chain_blowup(h, m, caps),
        SplitAlgorithm::Dim2 => split_dim2(h, k_or_h, m, caps),
        SplitAlgorithm::Simplex3 => split_simplex3(h, m, caps),
        SplitAlgorithm::Zn => split_zn(h, k_or_h, m, caps),
        SplitAlgorithm::Auto => {
            let attempts = [
                SplitAlgorithm::Blowup,
                SplitAlgorithm::Chain,
                SplitAlgorithm::Zn,
                SplitAlgorithm::Simplex3,
                SplitAlgorithm::Dim2,
            ];
            for alg in attempts {
                match split(alg, h, k, m, caps) {
                    Ok(w) => return Ok(w),
                    Err(Error::Unsupported(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::Unsupported("no splitting algorithm matches this input".into()))
        }
    }
}
