//! JSON loaders. Structural errors are collected with their JSON paths rather
//! than reported one at a time; relations the loader closes are noted.

use std::sync::Arc;

use serde_json::{Map, Value};

use crate::bits::PointSet;
use crate::bundle::QVBundle;
use crate::frame::Locale;
use crate::hyper::Carrier;
use crate::linfq::{parse_vector, FqLinearMap, FqSpace, FqSubspace};
use crate::linloc::{build_linloc, extend_from_lines, LinLocale};
use crate::order::{validate_lattice, FinLattice, Level, RawOrder, ValidationReport};
use crate::space::{CtsMap, FinSpace};
use crate::{Caps, Error, Result};

/// A loaded object with the loader's closure notes.
#[derive(Debug, Clone)]
pub struct Loaded<T> {
    pub value: T,
    pub notes: Vec<String>,
}

#[derive(Default)]
struct Errors(Vec<String>);

impl Errors {
    fn push(&mut self, path: &str, msg: impl std::fmt::Display) {
        self.0.push(format!("{path}: {msg}"));
    }

    fn finish(self) -> Result<()> {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidInput(self.0))
        }
    }
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(vec![format!("JSON syntax: {e}")]))
}

fn object<'a>(v: &'a Value, path: &str, errs: &mut Errors) -> Option<&'a Map<String, Value>> {
    let o = v.as_object();
    if o.is_none() {
        errs.push(path, "expected an object");
    }
    o
}

fn field<'a>(o: &'a Map<String, Value>, key: &str, path: &str, errs: &mut Errors) -> Option<&'a Value> {
    let f = o.get(key);
    if f.is_none() {
        errs.push(path, format!("missing field `{key}`"));
    }
    f
}

fn strings(v: &Value, path: &str, errs: &mut Errors) -> Vec<String> {
    let Some(items) = v.as_array() else {
        errs.push(path, "expected an array of strings");
        return Vec::new();
    };
    items
        .iter()
        .enumerate()
        .filter_map(|(i, s)| {
            let s = s.as_str().map(str::to_string);
            if s.is_none() {
                errs.push(&format!("{path}[{i}]"), "expected a string");
            }
            s
        })
        .collect()
}

fn unsigned(v: &Value, path: &str, errs: &mut Errors) -> Option<u64> {
    let n = v.as_u64();
    if n.is_none() {
        errs.push(path, "expected a non-negative integer");
    }
    n
}

/// `{"elements": [...], "leq": [[a, b], ...], "level"?: "poset"|"suplattice"|"frame"}`.
pub fn load_order(v: &Value) -> Result<(RawOrder, Option<Level>)> {
    let mut errs = Errors::default();
    let mut raw = RawOrder { elements: Vec::new(), leq: Vec::new() };
    let mut level = None;
    if let Some(o) = object(v, "$", &mut errs) {
        if let Some(e) = field(o, "elements", "$", &mut errs) {
            raw.elements = strings(e, "$.elements", &mut errs);
        }
        match o.get("leq").map(Value::as_array) {
            None => {}
            Some(None) => errs.push("$.leq", "expected an array of pairs"),
            Some(Some(pairs)) => {
                for (i, p) in pairs.iter().enumerate() {
                    let path = format!("$.leq[{i}]");
                    let pair = strings(p, &path, &mut errs);
                    if pair.len() == 2 {
                        raw.leq.push((pair[0].clone(), pair[1].clone()));
                    } else {
                        errs.push(&path, "expected a pair [a, b]");
                    }
                }
            }
        }
        if let Some(l) = o.get("level") {
            match l.as_str().map(str::parse::<Level>) {
                Some(Ok(parsed)) => level = Some(parsed),
                _ => errs.push("$.level", "expected \"poset\", \"suplattice\" or \"frame\""),
            }
        }
    }
    errs.finish()?;
    Ok((raw, level))
}

/// Loads and validates a lattice, keeping the validation report.
pub fn load_lattice(v: &Value, caps: &Caps) -> Result<(FinLattice, ValidationReport)> {
    let (raw, _) = load_order(v)?;
    let report = validate_lattice(&raw, Level::Suplattice, caps)?;
    let lattice = FinLattice::from_raw(&raw)?;
    Ok((lattice, report))
}

fn closure_notes(report: &ValidationReport) -> Vec<String> {
    let c = &report.closure;
    let mut notes = Vec::new();
    if c.added_reflexive > 0 {
        notes.push(format!("leq closed reflexively: {} pairs added", c.added_reflexive));
    }
    if c.added_transitive > 0 {
        notes.push(format!("leq closed transitively: {} pairs added", c.added_transitive));
    }
    notes
}

pub fn load_locale(v: &Value, caps: &Caps) -> Result<Loaded<Locale>> {
    let (lattice, report) = load_lattice(v, caps)?;
    Ok(Loaded { value: Locale::new(Arc::new(lattice))?, notes: closure_notes(&report) })
}

/// `{"points": [...], "opens": [[...], ...]}` or `{"points": [...], "subbasis": [[...], ...]}`.
pub fn load_space(v: &Value, caps: &Caps) -> Result<Loaded<FinSpace>> {
    load_space_at(v, "$", caps)
}

fn load_space_at(v: &Value, path: &str, caps: &Caps) -> Result<Loaded<FinSpace>> {
    let mut errs = Errors::default();
    let mut points = Vec::new();
    let mut family = Vec::new();
    let mut given_opens = None;
    if let Some(o) = object(v, path, &mut errs) {
        if let Some(p) = field(o, "points", path, &mut errs) {
            points = strings(p, &format!("{path}.points"), &mut errs);
        }
        let (key, is_opens) = match (o.get("opens"), o.get("subbasis")) {
            (Some(_), None) => ("opens", true),
            (None, Some(_)) => ("subbasis", false),
            (None, None) => {
                errs.push(path, "expected `opens` or `subbasis`");
                ("", false)
            }
            (Some(_), Some(_)) => {
                errs.push(path, "give either `opens` or `subbasis`, not both");
                ("", false)
            }
        };
        if !key.is_empty() {
            let fpath = format!("{path}.{key}");
            match o[key].as_array() {
                None => errs.push(&fpath, "expected an array of point arrays"),
                Some(sets) => {
                    for (i, s) in sets.iter().enumerate() {
                        let spath = format!("{fpath}[{i}]");
                        let mut set = PointSet::empty(points.len());
                        for label in strings(s, &spath, &mut errs) {
                            match points.iter().position(|p| *p == label) {
                                Some(x) => set.insert(x),
                                None => errs.push(&spath, format!("unknown point `{label}`")),
                            }
                        }
                        family.push(set);
                    }
                }
            }
            if is_opens {
                given_opens = Some(family.clone());
            }
        }
    }
    errs.finish()?;
    let space = FinSpace::generate(points, family)?;
    let mut notes = Vec::new();
    if let Some(mut given) = given_opens {
        given.sort();
        given.dedup();
        let all = space.opens(caps)?;
        if !given.contains(&space.empty_set()) {
            notes.push("open family missing ∅: added".to_string());
        }
        if !given.contains(&space.full()) {
            notes.push("open family missing the whole space: added".to_string());
        }
        let others = all.iter().filter(|u| !given.contains(u) && !u.is_empty() && !u.is_full()).count();
        if others > 0 {
            notes.push(format!("open family closed under unions and intersections: {others} opens added"));
        }
        if given.iter().any(|u| !space.is_open(u)) {
            return Err(Error::Invariant("generated topology misses a given open".into()));
        }
    }
    Ok(Loaded { value: space, notes })
}

/// `{"q": 2, "dim": 1, "carrier": "discrete" | "indiscrete" | {"opens"|"subbasis": [[vector, ...], ...]}}`.
pub fn load_fq(v: &Value, caps: &Caps) -> Result<FqSpace> {
    load_fq_at(v, "$", caps)
}

fn load_fq_at(v: &Value, path: &str, caps: &Caps) -> Result<FqSpace> {
    let mut errs = Errors::default();
    let (mut q, mut dim) = (None, None);
    let mut carrier = None;
    if let Some(o) = object(v, path, &mut errs) {
        if let Some(f) = field(o, "q", path, &mut errs) {
            q = unsigned(f, &format!("{path}.q"), &mut errs);
        }
        if let Some(f) = field(o, "dim", path, &mut errs) {
            dim = unsigned(f, &format!("{path}.dim"), &mut errs);
        }
        carrier = o.get("carrier");
    }
    errs.finish()?;
    let (q, dim) = (q.expect("checked") as u32, dim.expect("checked") as usize);
    let cpath = format!("{path}.carrier");
    match carrier {
        None => FqSpace::discrete(q, dim),
        Some(Value::String(s)) if s == "discrete" => FqSpace::discrete(q, dim),
        Some(Value::String(s)) if s == "indiscrete" => FqSpace::indiscrete(q, dim),
        Some(c @ Value::Object(o)) => {
            let base = FqSpace::discrete(q, dim)?;
            let mut with_points = o.clone();
            with_points.insert("points".into(), Value::from(base.carrier.labels().to_vec()));
            let mut errs = Errors::default();
            for key in ["opens", "subbasis"] {
                if let Some(Value::Array(sets)) = c.get(key) {
                    for (i, s) in sets.iter().enumerate() {
                        for (j, label) in s.as_array().into_iter().flatten().enumerate() {
                            if let Some(label) = label.as_str() {
                                if let Err(e) = parse_vector(label, q, dim) {
                                    errs.push(&format!("{cpath}.{key}[{i}][{j}]"), e);
                                }
                            }
                        }
                    }
                }
            }
            errs.finish()?;
            let space = load_space_at(&Value::Object(with_points), &cpath, caps)?.value;
            FqSpace::with_carrier(q, dim, &space)
        }
        Some(_) => Err(Error::InvalidInput(vec![format!(
            "{cpath}: expected \"discrete\", \"indiscrete\" or an object with `opens` or `subbasis`"
        )])),
    }
}

/// `{"basis": ["01", ...]}`.
pub fn load_subspace(v: &Value, q: u32, n: usize, path: &str) -> Result<FqSubspace> {
    let mut errs = Errors::default();
    let mut vectors = Vec::new();
    if let Some(o) = object(v, path, &mut errs) {
        if let Some(b) = field(o, "basis", path, &mut errs) {
            let bpath = format!("{path}.basis");
            for (i, s) in strings(b, &bpath, &mut errs).iter().enumerate() {
                match parse_vector(s, q, n) {
                    Ok(vec) => vectors.push(vec),
                    Err(e) => errs.push(&format!("{bpath}[{i}]"), e),
                }
            }
        }
    }
    errs.finish()?;
    FqSubspace::span(q, n, vectors)
}

/// `{"space": <space>, "fq": <fq>, "kappa": {"<point>": {"basis": [...]}, ...}}`.
pub fn load_bundle(v: &Value, caps: &Caps) -> Result<Loaded<QVBundle>> {
    let mut errs = Errors::default();
    let o = object(v, "$", &mut errs);
    let (space_v, fq_v, kappa_v) = match o {
        Some(o) => {
            (field(o, "space", "$", &mut errs), field(o, "fq", "$", &mut errs), field(o, "kappa", "$", &mut errs))
        }
        None => (None, None, None),
    };
    errs.finish()?;
    let space = load_space_at(space_v.expect("checked"), "$.space", caps)?;
    let carrier = Arc::new(Carrier::new(load_fq_at(fq_v.expect("checked"), "$.fq", caps)?, caps)?);
    let kappa = load_kernel(kappa_v.expect("checked"), &space.value, &carrier)?;
    let bundle = QVBundle::from_space(Arc::new(space.value), carrier, kappa, caps)?;
    Ok(Loaded { value: bundle, notes: space.notes })
}

fn load_kernel(v: &Value, space: &FinSpace, carrier: &Carrier) -> Result<Vec<usize>> {
    let mut errs = Errors::default();
    let mut kappa = vec![None; space.len()];
    if let Some(o) = object(v, "$.kappa", &mut errs) {
        for (label, sub) in o {
            let path = format!("$.kappa.{label}");
            let Ok(x) = space.index_of(label) else {
                errs.push(&path, "unknown point");
                continue;
            };
            match load_subspace(sub, carrier.fq.q, carrier.fq.dim, &path).and_then(|s| carrier.sub.index_of(&s)) {
                Ok(i) => kappa[x] = Some(i),
                Err(Error::InvalidInput(list)) => errs.0.extend(list),
                Err(e) => errs.push(&path, e),
            }
        }
        for x in space.points().filter(|&x| kappa[x].is_none()) {
            if o.contains_key(space.label(x)) {
                continue;
            }
            errs.push("$.kappa", format!("no kernel for point `{}`", space.label(x)));
        }
    }
    errs.finish()?;
    Ok(kappa.into_iter().map(|k| k.expect("checked")).collect())
}

/// A point map `{"<source point>": "<target point>", ...}`.
pub fn load_point_map(v: &Value, source: &Arc<FinSpace>, target: &Arc<FinSpace>, path: &str) -> Result<CtsMap> {
    let mut errs = Errors::default();
    let mut table = vec![None; source.len()];
    if let Some(o) = object(v, path, &mut errs) {
        for (from, to) in o {
            let p = format!("{path}.{from}");
            let Ok(x) = source.index_of(from) else {
                errs.push(&p, "unknown source point");
                continue;
            };
            match to.as_str().map(|t| target.index_of(t)) {
                Some(Ok(y)) => table[x] = Some(y),
                Some(Err(_)) => errs.push(&p, format!("unknown target point {to}")),
                None => errs.push(&p, "expected a point label"),
            }
        }
        for x in source.points().filter(|&x| table[x].is_none() && !o.contains_key(source.label(x))) {
            errs.push(path, format!("no image for `{}`", source.label(x)));
        }
    }
    errs.finish()?;
    CtsMap::new(source.clone(), target.clone(), table.into_iter().map(|t| t.expect("checked")).collect())
}

/// Rows of a matrix over `F_q`, as digit strings or integer arrays.
pub fn load_matrix(v: &Value, q: u32, source_dim: usize, target_dim: usize, path: &str) -> Result<FqLinearMap> {
    let mut errs = Errors::default();
    let mut rows = Vec::new();
    match v.as_array() {
        None => errs.push(path, "expected an array of rows"),
        Some(items) => {
            if items.len() != target_dim {
                errs.push(path, format!("expected {target_dim} rows, found {}", items.len()));
            }
            for (i, r) in items.iter().enumerate() {
                let rpath = format!("{path}[{i}]");
                let parsed = match r {
                    Value::String(s) => parse_vector(s, q, source_dim).map_err(|e| e.to_string()),
                    Value::Array(xs) => xs
                        .iter()
                        .map(|x| {
                            x.as_u64()
                                .or_else(|| x.as_str().and_then(|t| t.parse().ok()))
                                .filter(|&d| d < q as u64)
                                .map(|d| d as u32)
                                .ok_or("entry out of range")
                        })
                        .collect::<std::result::Result<Vec<u32>, _>>()
                        .map_err(str::to_string)
                        .and_then(|row| {
                            if row.len() == source_dim {
                                Ok(row)
                            } else {
                                Err(format!("expected {source_dim} entries, found {}", row.len()))
                            }
                        }),
                    _ => Err("expected a digit string or an array".to_string()),
                };
                match parsed {
                    Ok(row) => rows.push(row),
                    Err(e) => errs.push(&rpath, e),
                }
            }
        }
    }
    errs.finish()?;
    FqLinearMap::new(q, source_dim, rows)
}

/// `{"f_flat": {...}, "f_star": [[...], ...]}` for a morphism `source → target`:
/// `f_flat` maps source base points to target base points and `f_star` is a
/// `dim(source carrier) × dim(target carrier)` matrix.
pub fn load_bundle_morphism(v: &Value, source: &QVBundle, target: &QVBundle) -> Result<(CtsMap, FqLinearMap)> {
    let mut errs = Errors::default();
    let o = object(v, "$", &mut errs);
    let (flat_v, star_v) = match o {
        Some(o) => (field(o, "f_flat", "$", &mut errs), field(o, "f_star", "$", &mut errs)),
        None => (None, None),
    };
    errs.finish()?;
    let flat = load_point_map(flat_v.expect("checked"), source.base(), target.base(), "$.f_flat")?;
    let (a, b) = (&target.carrier().fq, &source.carrier().fq);
    let star = load_matrix(star_v.expect("checked"), a.q, a.dim, b.dim, "$.f_star")?;
    Ok((flat, star))
}

/// `{"frame": <lattice>, "fq": <fq>, "sigma": {"<subspace key>": "<element>", ...}}`.
/// `sigma` may be given on lines only, in which case it is extended by joins.
pub fn load_linloc(v: &Value, caps: &Caps) -> Result<Loaded<LinLocale>> {
    let mut errs = Errors::default();
    let o = object(v, "$", &mut errs);
    let (frame_v, fq_v, sigma_v) = match o {
        Some(o) => {
            (field(o, "frame", "$", &mut errs), field(o, "fq", "$", &mut errs), field(o, "sigma", "$", &mut errs))
        }
        None => (None, None, None),
    };
    errs.finish()?;
    let mut loaded = load_locale(frame_v.expect("checked"), caps)?;
    let carrier = Arc::new(Carrier::new(load_fq_at(fq_v.expect("checked"), "$.fq", caps)?, caps)?);
    let locale = loaded.value;
    let lattice = locale.lattice().clone();
    let mut errs = Errors::default();
    let mut table = vec![None; carrier.sub.len()];
    if let Some(o) = object(sigma_v.expect("checked"), "$.sigma", &mut errs) {
        for (key, elem) in o {
            let path = format!("$.sigma.{key}");
            let v = carrier.sub.index_of_key(key);
            let d = elem.as_str().map(|e| lattice.index_of(e));
            match (v, d) {
                (Ok(v), Some(Ok(d))) => table[v] = Some(d),
                (Err(_), _) => errs.push(&path, "unknown subspace key"),
                (_, None) => errs.push(&path, "expected a frame element label"),
                (_, Some(Err(_))) => errs.push(&path, format!("unknown frame element {elem}")),
            }
        }
    }
    errs.finish()?;
    let full = table.iter().all(Option::is_some);
    let sigma = if full {
        table.into_iter().map(|d| d.expect("checked")).collect()
    } else {
        let given: Vec<(usize, usize)> = (0..table.len()).filter_map(|v| table[v].map(|d| (v, d))).collect();
        let lines_only = given.iter().all(|&(v, _)| carrier.sub.subspaces[v].dim() == 1);
        if !lines_only {
            let missing = (0..table.len())
                .filter(|&v| table[v].is_none())
                .map(|v| format!("$.sigma: no value for {} (give every subspace, or lines only)", carrier.sub.key(v)))
                .collect();
            return Err(Error::InvalidInput(missing));
        }
        loaded.notes.push(format!("σ given on {} lines: extended by joins and re-verified", given.len()));
        extend_from_lines(&locale, &carrier, &given)?
    };
    let lin = build_linloc(locale, carrier, sigma, caps)?;
    Ok(Loaded { value: lin, notes: loaded.notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn reflexivity_is_closed_and_noted() {
        let v = json!({"elements": ["0", "1"], "leq": [["0", "1"]]});
        let l = load_locale(&v, &caps()).unwrap();
        assert_eq!(l.value.lattice().len(), 2);
        assert!(l.notes[0].contains("reflexively: 2"));
    }

    #[test]
    fn missing_empty_open_added() {
        let v = json!({"points": ["a", "b"], "opens": [["a"], ["a", "b"]]});
        let s = load_space(&v, &caps()).unwrap();
        assert_eq!(s.notes, vec!["open family missing ∅: added".to_string()]);
        assert!(s.value.is_open(&s.value.set_of(&["a"]).unwrap()));
    }

    #[test]
    fn errors_are_collected_with_paths() {
        let v = json!({"points": ["a"], "opens": [["a", "zz"], ["q"]]});
        let Err(Error::InvalidInput(list)) = load_space(&v, &caps()) else { panic!() };
        assert_eq!(list.len(), 2);
        assert!(list[0].starts_with("$.opens[0]"));
        let b = json!({"basis": ["011", "01"]});
        let Err(Error::InvalidInput(list)) = load_subspace(&b, 2, 2, "$") else { panic!() };
        assert_eq!(list.len(), 1);
        assert!(list[0].starts_with("$.basis[0]"));
    }

    #[test]
    fn bundle_and_linloc_round_trip() {
        let v = json!({
            "space": {"points": ["x0", "x1"], "opens": [[], ["x1"], ["x0", "x1"]]},
            "fq": {"q": 2, "dim": 1, "carrier": "discrete"},
            "kappa": {"x0": {"basis": []}, "x1": {"basis": ["1"]}}
        });
        let b = load_bundle(&v, &caps()).unwrap().value;
        assert_eq!(b.total.len(), 3);
        let l = json!({
            "frame": {"elements": ["0", "m", "1"], "leq": [["0", "m"], ["m", "1"]]},
            "fq": {"q": 2, "dim": 1},
            "sigma": {"1:1": "1"}
        });
        let lin = load_linloc(&l, &caps()).unwrap();
        assert!(lin.notes.iter().any(|n| n.contains("lines")));
        assert_eq!(lin.value.sigma_labels()[1].1, "1");
    }

    #[test]
    fn custom_carrier() {
        let v = json!({"q": 2, "dim": 2, "carrier": {"opens": [["01"]]}});
        let fq = load_fq(&v, &caps()).unwrap();
        assert!(!fq.is_discrete());
        let bad = json!({"q": 2, "dim": 2, "carrier": {"opens": [["012"]]}});
        assert!(matches!(load_fq(&bad, &caps()), Err(Error::InvalidInput(_))));
    }
}
