//! End-to-end run: generated submodel, optional saturation and unraveling,
//! bounded repair, the depth conditions, and the filtration with all of its
//! verifiers.
//!
//! Stages that cannot run because an earlier one did not finish cleanly are
//! left out of the report rather than marked as passing.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::filtration::build_filtration;
use crate::io::load_model;
use crate::kripke::{check_axiom_condition, generated_submodel, saturate_to_phi_frame, unravel_closed, PointedModel};
use crate::logic::{model_check, parse_formula, AxiomSet, Formula};
use crate::morphism::PMorphism;
use crate::repair::{verify_bounded_conditions, ConditionScope, RepairState, RepairStatus};

/// Exit code of a run that finished with every stage ok.
pub const EXIT_OK: i32 = 0;
pub const EXIT_TRUNCATED: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "status", content = "witness")]
pub enum Outcome {
    Ok,
    Truncated,
    Violated(String),
}

impl Outcome {
    fn rank(&self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Truncated => 1,
            Outcome::Violated(_) => 2,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Ok => EXIT_OK,
            Outcome::Truncated => EXIT_TRUNCATED,
            Outcome::Violated(_) => EXIT_VIOLATION,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stage {
    pub name: String,
    pub outcome: Outcome,
    pub detail: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientSummary {
    pub worlds: usize,
    pub edges: usize,
    pub input_root_satisfies: bool,
    pub root_satisfies: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub formula: String,
    pub axioms: String,
    pub budget: usize,
    pub max_steps: usize,
    pub outcome: Outcome,
    pub stages: Vec<Stage>,
    pub quotient: Option<QuotientSummary>,
    /// Wall-clock milliseconds per stage; the only nondeterministic field.
    pub timings_ms: BTreeMap<String, u128>,
}

impl PipelineReport {
    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    /// The report as JSON with `timings_ms` removed.
    pub fn to_json_without_timings(&self) -> String {
        let mut value = serde_json::to_value(self).expect("serializable");
        if let Some(obj) = value.as_object_mut() {
            obj.remove("timings_ms");
        }
        crate::io::to_json_pretty(&value)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub saturate: bool,
    pub unravel: bool,
    pub budget: usize,
    pub max_steps: usize,
    pub scope: ConditionScope,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { saturate: false, unravel: false, budget: 2, max_steps: 200, scope: ConditionScope::Bounded }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub report: PipelineReport,
    /// The repaired model, when the repair stage ran.
    pub repaired: Option<PointedModel>,
    /// The quotient, when the filtration was built.
    pub quotient: Option<PointedModel>,
}

struct Recorder {
    stages: Vec<Stage>,
    timings: BTreeMap<String, u128>,
}

impl Recorder {
    fn push(&mut self, name: &str, started: Instant, outcome: Outcome, detail: serde_json::Value) -> bool {
        self.timings.insert(name.to_string(), started.elapsed().as_millis());
        let ok = outcome == Outcome::Ok;
        self.stages.push(Stage { name: name.to_string(), outcome, detail });
        ok
    }
}

/// Runs every stage on an in-memory model. Errors are reserved for
/// malformed input; stage failures land in the report.
pub fn run_pipeline(
    model: &PointedModel,
    phi: &Formula,
    axioms: &AxiomSet,
    options: &PipelineOptions,
) -> Result<PipelineRun> {
    let mut rec = Recorder { stages: Vec::new(), timings: BTreeMap::new() };
    let mut repaired = None;
    let mut quotient_model = None;
    let mut summary = None;

    let t = Instant::now();
    let mut base = generated_submodel(model, model.root())?;
    let input_root_satisfies = model_check(&base, base.root(), phi)?;
    rec.push(
        "load",
        t,
        Outcome::Ok,
        serde_json::json!({ "worlds": base.len(), "edges": base.edge_count(), "root_satisfies": input_root_satisfies }),
    );

    let mut proceed = true;
    if options.saturate {
        let t = Instant::now();
        let before = base.edge_count();
        base = saturate_to_phi_frame(&base, axioms);
        rec.push("saturate", t, Outcome::Ok, serde_json::json!({ "loops_added": base.edge_count() - before }));
    }

    let t = Instant::now();
    let violation = axioms.iter().find_map(|a| {
        check_axiom_condition(&base, a)
            .first()
            .map(|&(x, y)| format!("{a}: ({:?}, {:?})", base.name(x), base.name(y)))
    });
    let frame_outcome = violation.map_or(Outcome::Ok, Outcome::Violated);
    proceed &= rec.push("frame-check", t, frame_outcome, serde_json::Value::Null);

    let mut seed = PMorphism::identity(&base);
    if proceed && options.unravel {
        let t = Instant::now();
        seed = unravel_closed(&base, options.budget);
        rec.push("unravel", t, Outcome::Ok, serde_json::json!({ "worlds": seed.source.len() }));
    }

    if proceed {
        let t = Instant::now();
        let run = RepairState::from_pmorphism(seed).and_then(|s| s.run(axioms, options.budget, options.max_steps));
        match run {
            Ok(run) => {
                let outcome = match run.status {
                    RepairStatus::Saturated => Outcome::Ok,
                    RepairStatus::Truncated => Outcome::Truncated,
                };
                let detail = serde_json::json!({
                    "status": run.status,
                    "steps": run.state.steps(),
                    "worlds": run.state.current().len(),
                    "census": run.census,
                });
                proceed &= rec.push("repair", t, outcome, detail);
                repaired = Some(run.state.current().clone());
            }
            Err(e) => {
                rec.push("repair", t, Outcome::Violated(e.to_string()), serde_json::Value::Null);
                proceed = false;
            }
        }
    }

    if let (true, Some(m)) = (proceed, &repaired) {
        let t = Instant::now();
        let k = phi.modal_depth();
        let report = verify_bounded_conditions(m, axioms, k, options.scope)?;
        let outcome = if report.is_empty() { Outcome::Ok } else { Outcome::Violated(report.to_string()) };
        let detail = serde_json::json!({ "k": k, "scope": options.scope, "frame_only": report.frame_only });
        proceed &= rec.push("conditions", t, outcome, detail);
    }

    if let (true, Some(m)) = (proceed, &repaired) {
        let t = Instant::now();
        match build_filtration(m, phi, axioms, options.scope) {
            Ok(f) => {
                let report = f.verify(axioms);
                let failed = report.failed();
                let outcome =
                    if failed.is_empty() { Outcome::Ok } else { Outcome::Violated(failed.join(", ")) };
                let root_satisfies = model_check(&f.quotient, f.root_class(), phi)?;
                summary = Some(QuotientSummary {
                    worlds: f.quotient.len(),
                    edges: f.quotient.edge_count(),
                    input_root_satisfies,
                    root_satisfies,
                });
                rec.push("filtration", t, outcome, serde_json::to_value(&report).expect("serializable"));
                quotient_model = Some(f.quotient);
            }
            Err(e) => {
                rec.push("filtration", t, Outcome::Violated(e.to_string()), serde_json::Value::Null);
            }
        }
    }

    let outcome = rec
        .stages
        .iter()
        .map(|s| s.outcome.clone())
        .max_by_key(Outcome::rank)
        .unwrap_or(Outcome::Ok);
    let report = PipelineReport {
        formula: phi.to_string(),
        axioms: axioms.to_string(),
        budget: options.budget,
        max_steps: options.max_steps,
        outcome,
        stages: rec.stages,
        quotient: summary,
        timings_ms: rec.timings,
    };
    Ok(PipelineRun { report, repaired, quotient: quotient_model })
}

/// Loads the model, parses the formula and the axiom list, then runs
/// [`run_pipeline`].
pub fn run_pipeline_file(
    model_path: impl AsRef<Path>,
    phi_text: &str,
    axioms_text: &str,
    options: &PipelineOptions,
) -> Result<PipelineRun> {
    let model = load_model(model_path)?;
    let phi = parse_formula(phi_text)?;
    let axioms = AxiomSet::parse(axioms_text)?;
    run_pipeline(&model, &phi, &axioms, options)
}
