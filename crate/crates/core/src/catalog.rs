//! Built-in fan families used throughout the checks and splitters.

use crate::fan::{Fan, FanKind};
use crate::lattice::NVec;
use crate::rat::Int;
use crate::{Error, Result};

/// `Delta_0`: the single cone `sigma(e_1..e_l)` with its faces.
pub fn fan_chamber(l: usize) -> Result<Fan> {
    if l == 0 {
        return Err(Error::InvalidInput("rank must be positive".into()));
    }
    let rays: Vec<NVec> = (0..l).map(|i| NVec::unit(l, i)).collect();
    Fan::new(l, rays, vec![(0..l).collect()], FanKind::Open)
}

/// Blow-up of `A^l` along the stable subvariety of `sigma(e_1..e_r)`:
/// inserts the ray `e_1 + .. + e_r`.
pub fn fan_ex1(l: usize, r: usize) -> Result<Fan> {
    if r < 2 || r > l {
        return Err(Error::InvalidInput("ex1 needs 2 <= r <= l".into()));
    }
    let fan = fan_chamber(l)?;
    let face: Vec<usize> = (0..r)
        .map(|i| fan.ray_index(&NVec::unit(l, i)).expect("unit ray present"))
        .collect();
    fan.star_subdivision(&face)
}

/// Chain of blow-ups along `sigma(e_1,e_2), sigma(e_2,e_3), ...,
/// sigma(e_{r-1},e_r)`.
pub fn fan_ex1b(l: usize, r: usize) -> Result<Fan> {
    if r < 2 || r > l {
        return Err(Error::InvalidInput("ex1b needs 2 <= r <= l".into()));
    }
    let mut fan = fan_chamber(l)?;
    for i in 1..r {
        let a = fan.ray_index(&NVec::unit(l, i - 1)).expect("unit ray present");
        let b = fan.ray_index(&NVec::unit(l, i)).expect("unit ray present");
        fan = fan.star_subdivision(&[a, b])?;
    }
    Ok(fan)
}

/// Rank-3 family with maximal cones `sigma(e_1,e_2,u)`, `sigma(e_1,e_3,u)`,
/// `sigma(e_2,e_3,u)` for `u = a e_1 + a e_2 + e_3`; smooth iff `a = 1`.
pub fn fan_ex2b(a: i64) -> Result<Fan> {
    if a < 1 {
        return Err(Error::InvalidInput("ex2b needs a >= 1".into()));
    }
    let rays = vec![
        NVec::unit(3, 0),
        NVec::unit(3, 1),
        NVec::unit(3, 2),
        NVec(vec![Int::from(a), Int::from(a), Int::from(1)]),
    ];
    let fan = Fan::new(
        3,
        rays,
        vec![vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        FanKind::Open,
    )?;
    debug_assert!(fan.is_proper_over_orthant()?);
    Ok(fan)
}

/// The `i`-th chain ray of the `Z^n` family:
/// `v_i = i(e_1 + .. + e_{l-1}) + e_l`.
pub fn zn_chain_ray(l: usize, i: usize) -> NVec {
    let mut v = vec![Int::from(i as i64); l];
    v[l - 1] = Int::from(1);
    NVec(v)
}

/// `Z^n`: iterated blow-ups of `A^l` along `sigma(e_1..e_l)` and then
/// `sigma(e_1..e_{l-1}, v_i)` for `i = 1..n-1`.
pub fn fan_ex3_1(l: usize, n: usize) -> Result<Fan> {
    if l < 2 || n < 1 {
        return Err(Error::InvalidInput("ex3_1 needs l >= 2 and n >= 1".into()));
    }
    let mut fan = fan_chamber(l)?;
    for i in 0..n {
        let mut face = Vec::new();
        for j in 0..l - 1 {
            face.push(fan.ray_index(&NVec::unit(l, j)).expect("unit ray present"));
        }
        let apex = if i == 0 { NVec::unit(l, l - 1) } else { zn_chain_ray(l, i) };
        face.push(fan.ray_index(&apex).expect("chain ray present"));
        fan = fan.star_subdivision(&face)?;
    }
    Ok(fan)
}

/// Blow-up of `Z^n` along the stable subvariety of
/// `sigma(v_1, e_2, .., e_l)`: inserts `w = e_1 + 2(e_2 + .. + e_l)`.
pub fn fan_ex3_2(l: usize, n: usize) -> Result<Fan> {
    let fan = fan_ex3_1(l, n)?;
    let mut face = vec![fan.ray_index(&zn_chain_ray(l, 1)).expect("v_1 present")];
    for j in 1..l {
        face.push(fan.ray_index(&NVec::unit(l, j)).expect("unit ray present"));
    }
    fan.star_subdivision(&face)
}

/// The ray `w = e_1 + 2(e_2 + .. + e_l)` added by `fan_ex3_2`.
pub fn ex3_2_extra_ray(l: usize) -> NVec {
    let mut v = vec![Int::from(2); l];
    v[0] = Int::from(1);
    NVec(v)
}

/// Resolves `name(params)` catalog references.
///
/// Accepted names: `chamber:l`, `blowup2`, `ex1:l:r`, `ex1b:l:r`, `ex2b:a`,
/// `ex3_1:l:n`, `ex3_2:l:n`.
pub fn fan_by_name(name: &str, params: &[i64]) -> Result<Fan> {
    let usize_param = |i: usize| -> Result<usize> {
        let v = *params
            .get(i)
            .ok_or_else(|| Error::InvalidInput(format!("catalog {name} needs parameter {i}")))?;
        usize::try_from(v).map_err(|_| Error::InvalidInput(format!("negative parameter for {name}")))
    };
    match name {
        "chamber" => fan_chamber(usize_param(0)?),
        "blowup2" => fan_ex1(2, 2),
        "ex1" => fan_ex1(usize_param(0)?, usize_param(1)?),
        "ex1b" => fan_ex1b(usize_param(0)?, usize_param(1)?),
        "ex2b" => fan_ex2b(*params.first().ok_or_else(|| {
            Error::InvalidInput("catalog ex2b needs parameter a".into())
        })?),
        "ex3_1" | "ex3-1" => fan_ex3_1(usize_param(0)?, usize_param(1)?),
        "ex3_2" | "ex3-2" => fan_ex3_2(usize_param(0)?, usize_param(1)?),
        _ => Err(Error::InvalidInput(format!("unknown catalog fan {name:?}"))),
    }
}
