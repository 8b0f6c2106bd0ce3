//! Command-line front end: job resolution, dispatch and batch runs. All
//! output is JSON on standard output (`--format csv` flattens summaries).

use serde_json::{json, Value};

use crate::bundle::PLFunction;
use crate::catalog;
use crate::fan::Fan;
use crate::json as jsonio;
use crate::lattice::MVec;
use crate::normality::{
    check_equivalence, check_l1, check_rj, check_saturation, check_sum_complete, check_sum_open,
};
use crate::polyhedra::{pi_sets, polyhedron_q, polytope_p};
use crate::rat::parse_rat;
use crate::roots::{RestrictedRootSystem, WeylGroup};
use crate::split::{check_ex3_2, split, SplitAlgorithm};
use crate::{Caps, Error, Result};

/// One resolved request; the batch manifest is a JSON list of these.
#[derive(Clone, Debug, Default)]
pub struct JobSpec {
    pub verb: String,
    pub root: Option<Value>,
    pub fan: Option<String>,
    pub bundles: Vec<Value>,
    pub mode: Option<String>,
    pub point: Option<String>,
    pub algorithm: Option<String>,
    pub wall: Option<usize>,
    pub side: Option<String>,
    pub witnesses: bool,
}

impl JobSpec {
    pub fn from_manifest_entry(v: &Value) -> Result<JobSpec> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidInput("manifest entries must be objects".into()))?;
        let verb = obj
            .get("verb")
            .and_then(|x| x.as_str())
            .ok_or_else(|| Error::InvalidInput("manifest entry needs a \"verb\"".into()))?
            .to_string();
        let fan = match obj.get("fan") {
            None => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(other) => Some(other.to_string()),
        };
        let bundles = match obj.get("bundles") {
            None => Vec::new(),
            Some(Value::Array(a)) => a.clone(),
            Some(single) => vec![single.clone()],
        };
        Ok(JobSpec {
            verb,
            root: obj.get("root").cloned(),
            fan,
            bundles,
            mode: obj.get("mode").and_then(|x| x.as_str()).map(String::from),
            point: obj.get("m").and_then(|x| x.as_str()).map(String::from),
            algorithm: obj.get("algorithm").and_then(|x| x.as_str()).map(String::from),
            wall: obj.get("j").and_then(|x| x.as_u64()).map(|x| x as usize),
            side: obj.get("side").and_then(|x| x.as_str()).map(String::from),
            witnesses: obj.get("witnesses").and_then(|x| x.as_bool()).unwrap_or(false),
        })
    }
}

fn read_ref(arg: &str) -> Result<String> {
    if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

/// Resolves `catalog:name[:p1[:p2]]`, inline JSON, or `@file`.
pub fn resolve_fan(arg: &str) -> Result<Fan> {
    let text = read_ref(arg)?;
    let trimmed = text.trim();
    if let Some(rest) = trimmed.strip_prefix("catalog:") {
        let mut parts = rest.split(':');
        let name = parts
            .next()
            .ok_or_else(|| Error::InvalidInput("empty catalog reference".into()))?;
        let params: Vec<i64> = parts
            .map(|p| {
                p.parse::<i64>()
                    .map_err(|_| Error::InvalidInput(format!("bad catalog parameter {p:?}")))
            })
            .collect::<Result<_>>()?;
        return catalog::fan_by_name(name, &params);
    }
    let v: Value = serde_json::from_str(trimmed)
        .map_err(|e| Error::InvalidInput(format!("fan is neither catalog:.. nor JSON: {e}")))?;
    let dto: jsonio::FanDto = serde_json::from_value(v)
        .map_err(|e| Error::InvalidInput(format!("bad fan JSON: {e}")))?;
    jsonio::fan_from_dto(&dto, true)
}

fn resolve_fan_unchecked(arg: &str) -> Result<Fan> {
    let text = read_ref(arg)?;
    let trimmed = text.trim();
    if trimmed.starts_with("catalog:") {
        return resolve_fan(arg);
    }
    let v: Value = serde_json::from_str(trimmed)
        .map_err(|e| Error::InvalidInput(format!("fan is neither catalog:.. nor JSON: {e}")))?;
    let dto: jsonio::FanDto = serde_json::from_value(v)
        .map_err(|e| Error::InvalidInput(format!("bad fan JSON: {e}")))?;
    jsonio::fan_from_dto(&dto, false)
}

pub fn resolve_root(arg: &Value) -> Result<RestrictedRootSystem> {
    if let Some(s) = arg.as_str() {
        if let Some(path) = s.strip_prefix('@') {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("bad root JSON: {e}")))?;
            return jsonio::root_from_value(&v);
        }
        if s.trim_start().starts_with('{') {
            let v: Value = serde_json::from_str(s)
                .map_err(|e| Error::InvalidInput(format!("bad root JSON: {e}")))?;
            return jsonio::root_from_value(&v);
        }
    }
    jsonio::root_from_value(arg)
}

fn resolve_bundle(arg: &Value, fan: &Fan, rs: Option<&RestrictedRootSystem>) -> Result<PLFunction> {
    if let Some(s) = arg.as_str() {
        let text = read_ref(s)?;
        let trimmed = text.trim();
        if trimmed.starts_with('{') || trimmed.starts_with('[') {
            let v: Value = serde_json::from_str(trimmed)
                .map_err(|e| Error::InvalidInput(format!("bad bundle JSON: {e}")))?;
            return jsonio::bundle_from_value(&v, fan, rs);
        }
        return jsonio::bundle_from_value(&Value::String(trimmed.to_string()), fan, rs);
    }
    jsonio::bundle_from_value(arg, fan, rs)
}

fn parse_point(s: &str, rank: usize) -> Result<MVec> {
    let cleaned = s
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .replace('\u{2212}', "-");
    let coords: Vec<&str> = cleaned.split(',').collect();
    if coords.len() != rank {
        return Err(Error::InvalidInput(format!(
            "point has {} coordinates, the fan rank is {rank}",
            coords.len()
        )));
    }
    Ok(MVec(coords.iter().map(|c| parse_rat(c)).collect::<Result<_>>()?))
}

struct Resolved {
    fan: Fan,
    rs: Option<RestrictedRootSystem>,
    weyl: Option<WeylGroup>,
    bundles: Vec<PLFunction>,
}

fn resolve(job: &JobSpec, caps: &Caps) -> Result<Resolved> {
    let fan = match &job.fan {
        Some(f) => resolve_fan(f)?,
        None => return Err(Error::InvalidInput(format!("verb {} needs --fan", job.verb))),
    };
    let rs = match &job.root {
        Some(r) => Some(resolve_root(r)?),
        None => None,
    };
    let weyl = match &rs {
        Some(rs) => Some(rs.generate_weyl_group(caps)?),
        None => None,
    };
    let bundles: Vec<PLFunction> = job
        .bundles
        .iter()
        .map(|b| resolve_bundle(b, &fan, rs.as_ref()))
        .collect::<Result<_>>()?;
    Ok(Resolved { fan, rs, weyl, bundles })
}

fn one_bundle(r: &Resolved) -> Result<&PLFunction> {
    r.bundles
        .first()
        .ok_or_else(|| Error::InvalidInput("this verb needs --bundle".into()))
}

fn two_bundles(r: &Resolved) -> Result<(&PLFunction, &PLFunction)> {
    let h = one_bundle(r)?;
    let k = r.bundles.get(1).unwrap_or(h);
    Ok((h, k))
}

fn need_root<'a>(
    r: &'a Resolved,
    verb: &str,
) -> Result<(&'a RestrictedRootSystem, &'a WeylGroup)> {
    match (&r.rs, &r.weyl) {
        (Some(rs), Some(w)) => Ok((rs, w)),
        _ => Err(Error::InvalidInput(format!("verb {verb} needs --root"))),
    }
}

/// Dispatches one job; the returned JSON is the command output.
pub fn run(job: &JobSpec, caps: &Caps) -> Result<Value> {
    match job.verb.as_str() {
        "validate-fan" => {
            let fan_arg = job
                .fan
                .as_ref()
                .ok_or_else(|| Error::InvalidInput("validate-fan needs --fan".into()))?;
            let fan = resolve_fan_unchecked(fan_arg)?;
            let report = fan.validate();
            let proper = if report.is_valid() && fan.kind == crate::fan::FanKind::Open {
                Some(fan.is_proper_over_orthant()?)
            } else {
                None
            };
            let smooth = if report.is_valid() { Some(fan.is_smooth()?) } else { None };
            Ok(json!({
                "fan": jsonio::fan_to_value(&fan)?,
                "valid": report.is_valid(),
                "violations": report.violations,
                "smooth": smooth,
                "proper_over_orthant": proper,
            }))
        }
        "symmetrize" => {
            let r = resolve(job, caps)?;
            let (_, w) = need_root(&r, "symmetrize")?;
            let complete = r.fan.symmetrize(w)?;
            jsonio::fan_to_value(&complete)
        }
        "ample" => {
            let r = resolve(job, caps)?;
            let h = one_bundle(&r)?;
            let status = h.status(r.rs.as_ref())?;
            Ok(json!({"gg": status.gg, "ample": status.ample}))
        }
        "polytope" => {
            let r = resolve(job, caps)?;
            let h = one_bundle(&r)?;
            let side = job.side.as_deref().unwrap_or("q");
            match side {
                "q" => {
                    let q = polyhedron_q(h)?;
                    let vertices = q.vertex_set(caps)?;
                    let minimal = q.minimal_lattice_points(caps)?;
                    Ok(json!({
                        "side": "q",
                        "vertices": vertices.iter().map(jsonio::mvec_to_value).collect::<Vec<_>>(),
                        "minimal_points": minimal.points.iter().map(jsonio::mvec_to_value).collect::<Vec<_>>(),
                        "recession": "orthant",
                    }))
                }
                "p" => {
                    let (_, w) = need_root(&r, "polytope --side p")?;
                    let hc = h.weyl_extend(w)?;
                    let p = polytope_p(&hc)?;
                    let vertices = p.vertex_set(caps)?;
                    let pts = p.lattice_points(caps)?;
                    Ok(json!({
                        "side": "p",
                        "vertices": vertices.iter().map(jsonio::mvec_to_value).collect::<Vec<_>>(),
                        "lattice_points": pts.len(),
                        "recession": "zero",
                    }))
                }
                other => Err(Error::InvalidInput(format!("unknown side {other:?}"))),
            }
        }
        "pi-sets" => {
            let r = resolve(job, caps)?;
            let h = one_bundle(&r)?;
            let (rs, w) = need_root(&r, "pi-sets")?;
            let sets = pi_sets(h, rs, w, None, caps)?;
            Ok(json!({
                "pi_z": {
                    "normals": sets.pi_z.normals.iter().map(|n| n.0.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "bounds": sets.pi_z.bounds.iter().map(crate::rat::format_rat).collect::<Vec<_>>(),
                    "coset_basepoint": jsonio::mvec_to_value(&sets.pi_z.coset.basepoint),
                },
                "pi_zc": sets.pi_zc.points.iter().map(jsonio::mvec_to_value).collect::<Vec<_>>(),
                "pi_y": sets.pi_y.points.iter().map(jsonio::mvec_to_value).collect::<Vec<_>>(),
                "counts": {"pi_zc": sets.pi_zc.len(), "pi_y": sets.pi_y.len()},
            }))
        }
        "check" => {
            let r = resolve(job, caps)?;
            let (h, k) = two_bundles(&r)?;
            let mode = job.mode.as_deref().unwrap_or("open");
            match mode {
                "open" => {
                    let rep = check_sum_open(h, k, caps)?;
                    Ok(jsonio::check_report_to_value(&rep, job.witnesses))
                }
                "complete" => {
                    let (rs, w) = need_root(&r, "check --mode complete")?;
                    let rep = check_sum_complete(h, k, rs, w, None, caps)?;
                    Ok(jsonio::check_report_to_value(&rep, job.witnesses))
                }
                "equivalence" => {
                    let (rs, w) = need_root(&r, "check --mode equivalence")?;
                    let rep = check_equivalence(h, k, rs, w, None, caps)?;
                    Ok(jsonio::equivalence_to_value(&rep, job.witnesses))
                }
                other => Err(Error::InvalidInput(format!("unknown mode {other:?}"))),
            }
        }
        "split" => {
            let r = resolve(job, caps)?;
            let h = one_bundle(&r)?;
            let k = r.bundles.get(1);
            let m = parse_point(
                job.point
                    .as_deref()
                    .ok_or_else(|| Error::InvalidInput("split needs --m".into()))?,
                r.fan.rank,
            )?;
            let algorithm = match job.algorithm.as_deref().unwrap_or("auto") {
                "blowup" => SplitAlgorithm::Blowup,
                "chain" => SplitAlgorithm::Chain,
                "dim2" => SplitAlgorithm::Dim2,
                "simplex3" => SplitAlgorithm::Simplex3,
                "zn" => SplitAlgorithm::Zn,
                "auto" => SplitAlgorithm::Auto,
                other => return Err(Error::InvalidInput(format!("unknown algorithm {other:?}"))),
            };
            let w = split(algorithm, h, k, &m, caps)?;
            Ok(jsonio::split_witness_to_value(&w))
        }
        "saturation" => {
            let r = resolve(job, caps)?;
            let (h, k) = two_bundles(&r)?;
            let (rs, w) = need_root(&r, "saturation")?;
            let rep = check_saturation(h, k, rs, w, None, caps)?;
            Ok(json!({
                "saturated": rep.saturated,
                "product_size": rep.product_size,
                "violations": rep.violations.iter().map(|(a, b)| json!([jsonio::mvec_to_value(a), jsonio::mvec_to_value(b)])).collect::<Vec<_>>(),
                "note": rep.note,
            }))
        }
        "rj-check" => {
            let r = resolve(job, caps)?;
            let h = one_bundle(&r)?;
            let (rs, w) = need_root(&r, "rj-check")?;
            let walls: Vec<usize> = match job.wall {
                Some(j) => vec![j],
                None => (0..rs.rank).collect(),
            };
            let fan_c = r.fan.symmetrize(w)?;
            let mut out = Vec::new();
            for j in walls {
                let rep = check_rj(h, rs, w, Some(&fan_c), j, caps)?;
                out.push(json!({
                    "j": j,
                    "supported": rep.supported,
                    "ok": rep.ok,
                    "wall_vertices": rep.wall_vertices.iter().map(jsonio::mvec_to_value).collect::<Vec<_>>(),
                    "detail": rep.detail,
                }));
            }
            Ok(json!({"walls": out}))
        }
        "l1-check" => {
            let r = resolve(job, caps)?;
            let h = one_bundle(&r)?;
            let (rs, w) = need_root(&r, "l1-check")?;
            let rep = check_l1(h, rs, w, None, caps)?;
            Ok(json!({
                "vertices_agree": rep.vertices_agree,
                "lattice_points_agree": rep.lattice_points_agree,
                "minimal_layer_descends": rep.minimal_layer_descends,
                "minimal_layer_size": rep.minimal_layer_size,
            }))
        }
        "ex3-2-check" => {
            let r = resolve(job, caps)?;
            let h = one_bundle(&r)?;
            let rep = check_ex3_2(h, caps)?;
            Ok(json!({
                "inequalities": rep.inequalities.iter().map(|(s, ok)| json!({"inequality": s, "holds": ok})).collect::<Vec<_>>(),
                "all_inequalities_hold": rep.all_inequalities_hold,
                "ample": rep.ample,
                "check": rep.check.as_ref().map(|c| jsonio::check_report_to_value(c, job.witnesses)),
            }))
        }
        other => Err(Error::InvalidInput(format!("unknown verb {other:?}"))),
    }
}

/// Batch outcome: per-job results plus the aggregate flags that drive the
/// exit status.
pub struct BatchOutcome {
    pub report: Value,
    pub any_error: bool,
    pub any_disagreement: bool,
}

pub fn run_batch(manifest_text: &str, caps: &Caps) -> Result<BatchOutcome> {
    let manifest: Value = serde_json::from_str(manifest_text)
        .map_err(|e| Error::InvalidInput(format!("bad manifest JSON: {e}")))?;
    let entries = manifest
        .as_array()
        .ok_or_else(|| Error::InvalidInput("manifest must be a JSON list of jobs".into()))?;
    let mut rows = Vec::new();
    let mut any_error = false;
    let mut any_disagreement = false;
    for (idx, entry) in entries.iter().enumerate() {
        let row = match JobSpec::from_manifest_entry(entry).and_then(|job| {
            let out = run(&job, caps)?;
            Ok((job.verb.clone(), out))
        }) {
            Ok((verb, out)) => {
                if out.get("agree").and_then(|a| a.as_bool()) == Some(false) {
                    any_disagreement = true;
                }
                json!({"index": idx, "verb": verb, "ok": true, "result": out})
            }
            Err(e) => {
                any_error = true;
                json!({"index": idx, "ok": false, "error": e.to_string()})
            }
        };
        rows.push(row);
    }
    Ok(BatchOutcome {
        report: json!({
            "jobs": rows,
            "total": entries.len(),
            "errors": any_error,
            "disagreements": any_disagreement,
        }),
        any_error,
        any_disagreement,
    })
}

/// Flattens a JSON object into `key,value` CSV rows (one row per top-level
/// scalar; arrays and objects are reported by size).
pub fn to_csv(v: &Value) -> String {
    let mut out = String::from("key,value\n");
    if let Some(obj) = v.as_object() {
        for (k, val) in obj {
            let rendered = match val {
                Value::Array(a) => format!("[{} entries]", a.len()),
                Value::Object(_) => "[object]".to_string(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k},{}\n", rendered.replace(',', ";")));
        }
    } else {
        out.push_str(&format!("value,{v}\n"));
    }
    out
}
