//! Piecewise-linear support functions on open fans, their Weyl extensions to
//! the complete fan, and the convexity / dominance criteria that detect
//! global generation and ampleness.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::fan::{Fan, FanKind};
use crate::lattice::{pair_unchecked, MVec, NVec};
use crate::rat::{Int, Rat};
use crate::roots::{RestrictedRootSystem, SphericalLattice, WeylGroup};
use crate::{Error, Result};

/// A support function `h` on an open fan, stored by its ray values with the
/// per-cone linear parts derived and validated at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunction {
    pub fan: Fan,
    pub ray_values: Vec<Rat>,
    pub linear_parts: Vec<MVec>,
    pub lattice: SphericalLattice,
}

/// The Weyl-invariant extension of a support function to the complete fan.
#[derive(Clone, Debug)]
pub struct CompletePLFunction {
    pub fan: Fan,
    pub ray_values: Vec<Rat>,
    pub linear_parts: Vec<MVec>,
}

/// Global-generation / ampleness verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BundleStatus {
    pub gg: bool,
    pub ample: bool,
}

fn solve_parts(fan: &Fan, values: &[Rat]) -> Result<Vec<MVec>> {
    if values.len() != fan.rays.len() {
        return Err(Error::DimensionMismatch(format!(
            "expected one value per ray ({} rays, {} values)",
            fan.rays.len(),
            values.len()
        )));
    }
    let mut parts = Vec::with_capacity(fan.max_cones.len());
    for cone in &fan.max_cones {
        if cone.len() != fan.rank {
            return Err(Error::Unsupported(
                "support functions need full-dimensional maximal cones".into(),
            ));
        }
        let rays: Vec<NVec> = cone.iter().map(|&i| fan.rays[i].clone()).collect();
        let vals: Vec<Rat> = cone.iter().map(|&i| values[i].clone()).collect();
        parts.push(crate::lattice::solve_linear_form(&rays, &vals)?);
    }
    Ok(parts)
}

impl PLFunction {
    /// Builds the function from ray values, checking every invariant: the
    /// per-cone parts reproduce the values, differences of parts are in `M`
    /// (they vanish on common faces automatically), and every part lies in
    /// the configured lattice.
    pub fn from_ray_values(fan: &Fan, values: Vec<Rat>, lattice: SphericalLattice) -> Result<Self> {
        if fan.kind != FanKind::Open {
            return Err(Error::Unsupported("support functions live on open fans".into()));
        }
        if lattice.rank() != fan.rank {
            return Err(Error::DimensionMismatch("lattice rank differs from fan rank".into()));
        }
        let parts = solve_parts(fan, &values)?;
        for (ci, part) in parts.iter().enumerate() {
            if !lattice.contains(part) {
                return Err(Error::InvalidInput(format!(
                    "linear part {part:?} on maximal cone {ci} is outside the configured lattice"
                )));
            }
        }
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                if !(&parts[i] - &parts[j]).is_integral() {
                    return Err(Error::InvalidInput(format!(
                        "parts on maximal cones {i} and {j} do not differ by a lattice vector of M"
                    )));
                }
            }
        }
        Ok(PLFunction { fan: fan.clone(), ray_values: values, linear_parts: parts, lattice })
    }

    pub fn rank(&self) -> usize {
        self.fan.rank
    }

    /// Index of the designated base chamber: the maximal cone containing
    /// the barycenter direction `e_1 + .. + e_l`, ties broken by the
    /// lexicographically smallest ray set.
    pub fn base_chamber(&self) -> usize {
        base_chamber_of(&self.fan)
    }

    /// `v_h = h|sigma_0`.
    pub fn base_vertex(&self) -> MVec {
        self.linear_parts[self.base_chamber()].clone()
    }

    pub fn value_on_ray(&self, ray_idx: usize) -> &Rat {
        &self.ray_values[ray_idx]
    }

    /// Evaluates at a point of the support; the function is undefined
    /// (`-infinity`) outside the support of an open fan.
    pub fn evaluate(&self, v: &NVec) -> Result<Rat> {
        evaluate_on(&self.fan, &self.linear_parts, v)
    }

    pub fn is_convex(&self) -> bool {
        convex_by_ray_criterion(&self.fan, &self.linear_parts, &self.ray_values)
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.is_convex() && parts_pairwise_distinct(&self.linear_parts)
    }

    /// Global generation and ampleness. With a root system the criteria are
    /// convexity plus dominance (resp. strict convexity plus regularity) of
    /// every linear part; in pure-toric mode (no root system) only the
    /// convexity side is tested.
    pub fn status(&self, rs: Option<&RestrictedRootSystem>) -> Result<BundleStatus> {
        let convex = self.is_convex();
        let strict = convex && parts_pairwise_distinct(&self.linear_parts);
        match rs {
            None => Ok(BundleStatus { gg: convex, ample: strict }),
            Some(rs) => {
                let mut dominant = true;
                let mut regular = true;
                for part in &self.linear_parts {
                    dominant &= rs.is_dominant(part)?;
                    regular &= rs.is_regular(part)?;
                }
                Ok(BundleStatus { gg: convex && dominant, ample: strict && regular })
            }
        }
    }

    /// The `W`-invariant extension `h^c` with `h^c|w.sigma = w.(h|sigma)`,
    /// over a precomputed symmetrization of the fan.
    pub fn weyl_extend_into(&self, w: &WeylGroup, fan_c: &Fan) -> Result<CompletePLFunction> {
        if fan_c.kind != FanKind::Complete {
            return Err(Error::Unsupported("weyl_extend needs the symmetrized fan".into()));
        }
        let mut parts: Vec<Option<MVec>> = vec![None; fan_c.max_cones.len()];
        let mut cone_index: BTreeMap<Vec<NVec>, usize> = BTreeMap::new();
        for (ci, c) in fan_c.max_cones.iter().enumerate() {
            cone_index.insert(fan_c.cone(c).rays, ci);
        }
        for el in &w.elements {
            for (ci, c) in self.fan.max_cones.iter().enumerate() {
                let mut rays: Vec<NVec> =
                    c.iter().map(|&i| el.apply_n(&self.fan.rays[i])).collect();
                rays.sort();
                let &target = cone_index.get(&rays).ok_or_else(|| {
                    Error::InvariantBreach("image cone missing from the symmetrized fan".into())
                })?;
                let part = el.apply_m(&self.linear_parts[ci]);
                match &parts[target] {
                    None => parts[target] = Some(part),
                    Some(existing) if *existing == part => {}
                    Some(_) => {
                        return Err(Error::InvariantBreach(
                            "conflicting linear parts during Weyl extension".into(),
                        ))
                    }
                }
            }
        }
        let parts: Vec<MVec> = parts
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvariantBreach("symmetrized fan not covered".into()))?;
        let mut values = vec![Rat::zero(); fan_c.rays.len()];
        let mut filled = vec![false; fan_c.rays.len()];
        for (ci, c) in fan_c.max_cones.iter().enumerate() {
            for &ri in c {
                let v = pair_unchecked(&parts[ci], &fan_c.rays[ri]);
                if filled[ri] {
                    if values[ri] != v {
                        return Err(Error::InvariantBreach(
                            "inconsistent ray values during Weyl extension".into(),
                        ));
                    }
                } else {
                    values[ri] = v;
                    filled[ri] = true;
                }
            }
        }
        Ok(CompletePLFunction { fan: fan_c.clone(), ray_values: values, linear_parts: parts })
    }

    /// Convenience wrapper that symmetrizes the fan first.
    pub fn weyl_extend(&self, w: &WeylGroup) -> Result<CompletePLFunction> {
        let fan_c = self.fan.symmetrize(w)?;
        self.weyl_extend_into(w, &fan_c)
    }

    /// Pointwise sum on a common fan.
    pub fn add(&self, other: &PLFunction) -> Result<PLFunction> {
        if self.fan != other.fan {
            return Err(Error::InvalidInput("sum of bundles needs a common fan".into()));
        }
        let values: Vec<Rat> =
            self.ray_values.iter().zip(&other.ray_values).map(|(a, b)| a + b).collect();
        PLFunction::from_ray_values(&self.fan, values, self.lattice.clone())
    }

    pub fn scale(&self, c: i64) -> Result<PLFunction> {
        let factor = Rat::from_integer(Int::from(c));
        let values: Vec<Rat> = self.ray_values.iter().map(|v| v * &factor).collect();
        PLFunction::from_ray_values(&self.fan, values, self.lattice.clone())
    }
}

impl CompletePLFunction {
    pub fn evaluate(&self, v: &NVec) -> Result<Rat> {
        evaluate_on(&self.fan, &self.linear_parts, v)
    }

    pub fn is_convex(&self) -> bool {
        convex_by_ray_criterion(&self.fan, &self.linear_parts, &self.ray_values)
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.is_convex() && parts_pairwise_distinct(&self.linear_parts)
    }
}

fn base_chamber_of(fan: &Fan) -> usize {
    let barycenter = NVec(vec![Int::from(1); fan.rank]);
    let mut best: Option<(Vec<NVec>, usize)> = None;
    for (ci, c) in fan.max_cones.iter().enumerate() {
        let cone = fan.cone(c);
        if cone.contains(&barycenter) {
            let key = cone.rays;
            if best.as_ref().map_or(true, |(k, _)| key < *k) {
                best = Some((key, ci));
            }
        }
    }
    best.expect("a proper fan covers the barycenter").1
}

/// Shared evaluation: locate a maximal cone containing `v`, pair with its
/// linear part.
fn evaluate_on(fan: &Fan, parts: &[MVec], v: &NVec) -> Result<Rat> {
    for (ci, c) in fan.max_cones.iter().enumerate() {
        if fan.cone(c).contains(v) {
            return Ok(pair_unchecked(&parts[ci], v));
        }
    }
    Err(Error::Unsupported(format!("{v:?} lies outside the support of the fan")))
}

/// Convexity through the ray criterion: `<h|sigma, rho(tau)> >= h(rho(tau))`
/// for every maximal cone and every ray, equivalent to
/// `h(v + v') >= h(v) + h(v')` on the support.
fn convex_by_ray_criterion(fan: &Fan, parts: &[MVec], values: &[Rat]) -> bool {
    for part in parts {
        for (ri, ray) in fan.rays.iter().enumerate() {
            if pair_unchecked(part, ray) < values[ri] {
                return false;
            }
        }
    }
    true
}

fn parts_pairwise_distinct(parts: &[MVec]) -> bool {
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if parts[i] == parts[j] {
                return false;
            }
        }
    }
    true
}

/// The divisor basis function `d^tau`: ray values `-1` at `tau` and `0`
/// elsewhere. On the Y side only non-unit rays index the Picard basis;
/// pure-toric callers may pass any ray.
pub fn divisor_function(
    fan: &Fan,
    tau: usize,
    lattice: SphericalLattice,
    y_side: bool,
) -> Result<PLFunction> {
    if tau >= fan.rays.len() {
        return Err(Error::InvalidInput("divisor_function: no such ray".into()));
    }
    if y_side {
        let is_unit = (0..fan.rank).any(|i| fan.rays[tau] == NVec::unit(fan.rank, i));
        if is_unit {
            return Err(Error::Unsupported(
                "Y-side divisor basis excludes the coordinate rays".into(),
            ));
        }
    }
    let mut values = vec![Rat::zero(); fan.rays.len()];
    values[tau] = -Rat::from_integer(Int::from(1));
    PLFunction::from_ray_values(fan, values, lattice)
}

/// Writes `h = lambda + sum_tau a_tau d^tau` with `a_tau = <lambda,
/// rho(tau)> - h(rho(tau))`; all coefficients must come out as non-negative
/// integers.
pub fn decompose_weight_plus_divisors(h: &PLFunction, lambda: &MVec) -> Result<Vec<Int>> {
    if lambda.len() != h.rank() {
        return Err(Error::DimensionMismatch("weight length differs from fan rank".into()));
    }
    let mut out = Vec::with_capacity(h.fan.rays.len());
    for (ri, ray) in h.fan.rays.iter().enumerate() {
        let a = pair_unchecked(lambda, ray) - &h.ray_values[ri];
        if a.is_negative() {
            return Err(Error::InvalidInput(format!(
                "weight is not in Pi(Z,h): coefficient at ray {ri} is {a}"
            )));
        }
        if !a.is_integer() {
            return Err(Error::InvalidInput(format!(
                "non-integral divisor coefficient {a} at ray {ri}"
            )));
        }
        out.push(a.to_integer());
    }
    Ok(out)
}
