//! Machine-readable command outputs (schema `lcsc-report/1`).

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::category::{Lcsc, MorphismId, ValidationReport};
use crate::cstar::{verify_relations, AlgebraOptions, RelationReport};
use crate::error::{Error, Result};
use crate::hull::{Hull, DEFAULT_CAP};
use crate::input::{InputSpec, Resolved};
use crate::lemmas::{self, LemmaReport};
use crate::model::{Model, PipelineOptions, Subalgebra, SubalgebraVerdict, REGIME};
use crate::paths::BoundedPaths;
use crate::random::DEFAULT_SEED;
use crate::spectrum::{enumerate_filters, tightness_census};

pub const SCHEMA: &str = "lcsc-report/1";

/// Command-line values; each overrides the document's `options` table.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub tolerance: Option<f64>,
    pub depth: Option<usize>,
    pub cap: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Settings {
    pub tolerance: f64,
    pub depth: Option<usize>,
    pub cap: usize,
    pub seed: u64,
}

impl Settings {
    pub fn new(spec: Option<&InputSpec>, o: &Overrides) -> Self {
        let doc = spec.map(|s| s.options.clone()).unwrap_or_default();
        Settings {
            tolerance: o.tolerance.or(doc.tolerance).unwrap_or(AlgebraOptions::default().tolerance),
            depth: o.depth.or(doc.depth),
            cap: o.cap.or(doc.cap).unwrap_or(DEFAULT_CAP),
            seed: o.seed.or(doc.seed).unwrap_or(DEFAULT_SEED),
        }
    }

    pub fn pipeline(&self) -> PipelineOptions {
        PipelineOptions { cap: self.cap, algebra: AlgebraOptions { tolerance: self.tolerance, ..AlgebraOptions::default() } }
    }
}

/// A report document and the exit code it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub document: Value,
    pub code: i32,
}

fn envelope(command: &str, settings: &Settings, body: Value, code: i32) -> Outcome {
    let mut doc = json!({ "schema": SCHEMA, "command": command, "options": settings });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    Outcome { document: doc, code }
}

fn resolve(spec: &InputSpec, settings: &Settings) -> Result<Resolved> {
    let mut spec = spec.clone();
    spec.options.depth = settings.depth;
    Ok(spec.resolve()?)
}

fn finite(spec: &InputSpec, settings: &Settings, stage: &'static str) -> Result<Lcsc> {
    match resolve(spec, settings)? {
        Resolved::Finite(c) => Ok(c),
        Resolved::Bounded(_) => Err(Error::Unbounded(stage)),
    }
}

pub fn element_label(hull: &Hull, s: usize) -> String {
    let cat = hull.category();
    let pieces = hull.decompose_index(s);
    if pieces.is_empty() {
        return "0".into();
    }
    pieces.iter().map(|&(a, b)| format!("{}·{}*", cat.name(a), cat.name(b))).collect::<Vec<_>>().join(" ∪ ")
}

fn labels(hull: &Hull, set: &BTreeSet<usize>) -> Vec<String> {
    set.iter().map(|&s| element_label(hull, s)).collect()
}

fn names(cat: &Lcsc, ids: impl IntoIterator<Item = MorphismId>) -> Vec<String> {
    ids.into_iter().map(|a| cat.name(a).to_string()).collect()
}

fn category_summary(cat: &Lcsc) -> Value {
    json!({
        "morphisms": cat.len(),
        "objects": names(cat, cat.objects().iter().copied()),
        "rank": cat.rank(),
        "singly_aligned": cat.is_singly_aligned(),
    })
}

fn bounded_summary(paths: &BoundedPaths) -> Value {
    let all = paths.paths();
    json!({
        "depth": paths.depth(),
        "paths": all.len(),
        "names": all.iter().map(|w| paths.name(w)).collect::<Vec<_>>(),
    })
}

fn validation(cat: &Lcsc) -> (ValidationReport, Option<ValidationReport>) {
    let report = cat.validate(true);
    let degree = cat.has_degree().then(|| cat.validate_degree().ok()).flatten();
    (report, degree)
}

pub fn cmd_validate(spec: &InputSpec, settings: &Settings) -> Result<Outcome> {
    match resolve(spec, settings)? {
        Resolved::Bounded(paths) => Ok(envelope(
            "validate",
            settings,
            json!({ "bounded": bounded_summary(&paths), "passed": true, "provenance": "exact",
                    "note": "graph has cycles; only depth-bounded path classes are available" }),
            0,
        )),
        Resolved::Finite(cat) => {
            let (report, degree) = validation(&cat);
            let passed = report.passed && degree.as_ref().is_none_or(|d| d.passed);
            Ok(envelope(
                "validate",
                settings,
                json!({ "category": category_summary(&cat), "passed": passed, "provenance": "exact",
                        "validation": report, "degree": degree }),
                if passed { 0 } else { 1 },
            ))
        }
    }
}

fn checked_hull(cat: &Lcsc, settings: &Settings) -> Result<Hull> {
    let report = cat.validate(false);
    if let Some(f) = report.failures.first() {
        return Err(Error::Invalid(format!("{:?}: {}", f.axiom, f.detail)));
    }
    Ok(Hull::generate(cat, settings.cap)?)
}

pub fn cmd_hull(spec: &InputSpec, settings: &Settings) -> Result<Outcome> {
    let cat = finite(spec, settings, "hull")?;
    let hull = checked_hull(&cat, settings)?;
    let s = hull.semigroup();
    let elements: Vec<Value> = (0..s.len())
        .map(|i| {
            json!({
                "index": i,
                "label": element_label(&hull, i),
                "idempotent": s.is_idempotent(i),
                "map": s.element(i).pairs().map(|(x, y)| [cat.name(x), cat.name(y)]).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(envelope(
        "hull",
        settings,
        json!({ "category": category_summary(&cat), "provenance": "exact", "size": s.len(),
                "idempotents": s.idempotents().len(), "singly_aligned": hull.is_singly_aligned(),
                "elements": elements }),
        0,
    ))
}

pub fn cmd_spectrum(spec: &InputSpec, settings: &Settings) -> Result<Outcome> {
    let cat = finite(spec, settings, "spectrum")?;
    let hull = checked_hull(&cat, settings)?;
    let s = hull.semigroup();
    let e = s.semilattice();
    let census = tightness_census(e)?;
    let filters: Vec<Value> = enumerate_filters(e)
        .into_iter()
        .map(|xi| {
            json!({
                "minimum": element_label(&hull, s.idempotent_element(xi.minimum())),
                "size": xi.elements(e).len(),
                "tight": census.tight.contains(&xi),
            })
        })
        .collect();
    Ok(envelope(
        "spectrum",
        settings,
        json!({ "provenance": "exact", "idempotents": e.len(), "filters": census.filters,
                "ultrafilters": census.ultrafilters, "tight": census.tight.len(),
                "literal_criterion_checked": census.literal_checked, "reduced_criterion_checked": census.reduced_checked,
                "list": filters }),
        0,
    ))
}

fn build_model(spec: &InputSpec, settings: &Settings, stage: &'static str) -> Result<Model> {
    let cat = finite(spec, settings, stage)?;
    Model::build(&cat, &settings.pipeline())
}

fn groupoid_body(model: &Model) -> Value {
    let g = model.groupoid();
    let germs: Vec<Value> = (0..g.len())
        .map(|k| {
            let germ = model.tight.germ(k);
            json!({
                "index": k,
                "element": element_label(&model.hull, germ.element),
                "filter": germ.filter,
                "unit": g.is_unit(k),
                "range": g.range(k),
                "source": g.source(k),
            })
        })
        .collect();
    json!({ "elements": g.len(), "units": g.units().len(), "isotropy": g.isotropy().len(), "germs": germs })
}

pub fn cmd_groupoid(spec: &InputSpec, settings: &Settings) -> Result<Outcome> {
    let model = build_model(spec, settings, "groupoid")?;
    Ok(envelope("groupoid", settings, json!({ "provenance": "exact", "groupoid": groupoid_body(&model) }), 0))
}

fn verdict_json(v: &SubalgebraVerdict) -> Value {
    let mut out = serde_json::to_value(v).expect("verdicts serialize");
    out["verdict"] = json!(v.detection.detects);
    out
}

pub fn cmd_detect(spec: &InputSpec, settings: &Settings, sub: Subalgebra) -> Result<Outcome> {
    let model = build_model(spec, settings, "detect")?;
    let v = model.detect(sub)?;
    let code = if v.detection.detects { 0 } else { 1 };
    Ok(envelope("detect", settings, json!({ "detection": verdict_json(&v) }), code))
}

fn relations(model: &Model) -> RelationReport {
    verify_relations(&model.hull, &model.tight)
}

pub fn cmd_report(spec: &InputSpec, settings: &Settings) -> Result<Outcome> {
    let resolved = resolve(spec, settings)?;
    let cat = match resolved {
        Resolved::Bounded(paths) => {
            let skipped = ["hull", "spectrum", "groupoid", "subsemigroups", "relations", "detection"]
                .map(|stage| json!({ "stage": stage, "reason": "graph has cycles; the hull is infinite" }));
            return Ok(envelope(
                "report",
                settings,
                json!({ "bounded": bounded_summary(&paths), "skipped": skipped }),
                0,
            ));
        }
        Resolved::Finite(c) => c,
    };
    let (report, degree) = validation(&cat);
    if !report.passed {
        return Ok(envelope(
            "report",
            settings,
            json!({ "category": category_summary(&cat),
                    "validation": { "passed": false, "provenance": "exact", "report": report, "degree": degree } }),
            1,
        ));
    }
    let model = Model::build(&cat, &settings.pipeline())?;
    let rel = relations(&model);
    let mut verdicts = Vec::new();
    let mut skipped = Vec::new();
    let mut negative = !rel.passed;
    for sub in Subalgebra::DETECTABLE {
        match model.detect(sub) {
            Ok(v) => {
                negative |= v.predicted && !v.detection.detects;
                verdicts.push(verdict_json(&v));
            }
            Err(Error::NoDegree(what)) => {
                skipped.push(json!({ "stage": format!("detection/{sub}"), "reason": format!("{what} requires a valid degree map") }))
            }
            Err(e) => return Err(e),
        }
    }
    let hull = &model.hull;
    let body = json!({
        "category": category_summary(&cat),
        "validation": { "passed": true, "provenance": "exact", "report": report, "degree": degree },
        "hull": { "size": hull.len(), "idempotents": hull.semigroup().idempotents().len(),
                  "singly_aligned": hull.is_singly_aligned(), "provenance": "exact" },
        "spectrum": { "filters": model.census.filters, "ultrafilters": model.census.ultrafilters,
                      "tight": model.census.tight.len(), "provenance": "exact" },
        "groupoid": groupoid_body(&model),
        "subsemigroups": {
            "siso": labels(hull, &model.siso),
            "f_lambda": labels(hull, &model.f_lambda),
            "s_c": model.s_c.as_ref().map(|s| labels(hull, s)),
            "core": names(&cat, model.core.iter().copied()),
            "cycline": model.cycline.as_ref().map(|p| p.iter().map(|&(a, b)| [cat.name(a), cat.name(b)]).collect::<Vec<_>>()),
            "provenance": "exact",
        },
        "algebra": { "dimension": model.algebra()?.dimension(), "blocks": model.blocks()?.len(),
                     "provenance": "floating", "regime": REGIME },
        "relations": { "passed": rel.passed, "provenance": "exact", "checks": rel.checks },
        "detection": verdicts,
        "skipped": skipped,
    });
    Ok(envelope("report", settings, body, if negative { 1 } else { 0 }))
}

fn lemma_outcome(settings: &Settings, report: LemmaReport, random: Option<usize>) -> Outcome {
    let code = if report.passed { 0 } else { 1 };
    envelope("verify-lemmas", settings, json!({ "random": random, "lemmas": report }), code)
}

/// Lemma suites on one document, or on the fixtures plus `n` random
/// instances when `random` is given.
pub fn cmd_verify_lemmas(spec: Option<&InputSpec>, settings: &Settings, random: Option<usize>) -> Result<Outcome> {
    let opts = settings.pipeline();
    if let Some(n) = random {
        return Ok(lemma_outcome(settings, lemmas::verify_random(n, settings.seed, &opts)?, random));
    }
    let report = match spec {
        Some(spec) => lemmas::verify_category("input", &finite(spec, settings, "verify-lemmas")?, &opts)?,
        None => lemmas::verify_fixtures(&opts)?,
    };
    Ok(lemma_outcome(settings, report, None))
}
