use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use densify::bisim::{full_bisim, k_bisim_table};
use densify::filtration::build_filtration;
use densify::io::{load_model, model_to_json, to_json_pretty, ModelFile};
use densify::kripke::{check_axiom_condition, saturate_to_phi_frame, unravel, unravel_closed, PointedModel};
use densify::logic::{model_check, parse_formula, AxiomSet};
use densify::morphism::PMorphism;
use densify::oracle::{sat_oracle, sat_oracle_uncapped};
use densify::pipeline::{run_pipeline_file, PipelineOptions, EXIT_INPUT, EXIT_TRUNCATED, EXIT_VIOLATION};
use densify::repair::{run_repair, verify_bounded_conditions, ConditionScope, RepairStatus};

#[derive(Parser)]
#[command(name = "densify", version, about = "Finite models for density-axiom modal logics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Out {
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its structure.
    Parse {
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        out: Out,
    },
    /// Evaluate a formula at a world.
    Mc {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        world: Option<String>,
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        out: Out,
    },
    /// List violations of each axiom's frame condition.
    FrameCheck {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        axioms: String,
        #[command(flatten)]
        out: Out,
    },
    /// Add self-loops until every axiom's frame condition holds.
    Saturate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        axioms: String,
        #[command(flatten)]
        out: Out,
    },
    /// Unravel into a tree of root paths.
    Unravel {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        bound: usize,
        /// Hand the last level back to the original worlds, keeping a p-morphism.
        #[arg(long)]
        closed: bool,
        #[arg(long)]
        map_out: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Bisimilarity between two models, or the k-bisimilarity table.
    Bisim {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// Build ~_0 .. ~_K instead of full bisimilarity.
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated variables for the table (default: both supports).
        #[arg(long)]
        vars: Option<String>,
        #[command(flatten)]
        out: Out,
    },
    /// Check the pointed, forth and back clauses of a map.
    VerifyPmorphism {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Run bounded defect repair from the identity on a frame.
    Repair {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        axioms: String,
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = 200)]
        max_steps: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Check the depth-graded successor and chain conditions.
    VerifyConditions {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        axioms: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Build and verify the depth-stratified filtration.
    Filtrate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        axioms: String,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Load, repair, filtrate and verify in one go.
    Pipeline {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        axioms: String,
        #[arg(long, default_value_t = 2)]
        budget: usize,
        #[arg(long, default_value_t = 200)]
        max_steps: usize,
        #[arg(long)]
        saturate: bool,
        #[arg(long)]
        unravel: bool,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        quotient_out: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Search small frames for a model of a formula.
    Sat {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        axioms: String,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Lift the five-world guard.
        #[arg(long)]
        allow_large: bool,
        #[command(flatten)]
        out: Out,
    },
}

fn emit(text: &str, out: &Out) -> densify::Result<()> {
    match &out.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn pair_names(left: &PointedModel, right: &PointedModel, pairs: impl Iterator<Item = (usize, usize)>) -> Vec<[String; 2]> {
    pairs.map(|(x, y)| [left.name(x).to_string(), right.name(y).to_string()]).collect()
}

fn scope(strict: bool) -> ConditionScope {
    if strict {
        ConditionScope::Strict
    } else {
        ConditionScope::Bounded
    }
}

fn run(cli: Cli) -> densify::Result<i32> {
    match cli.command {
        Command::Parse { formula, out } => {
            let f = parse_formula(&formula)?;
            let value = json!({
                "formula": f.to_string(),
                "modal_depth": f.modal_depth(),
                "vars": f.prop_vars(),
                "subformulas": f.subformulas().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            });
            emit(&to_json_pretty(&value), &out)?;
            Ok(0)
        }
        Command::Mc { model, world, formula, out } => {
            let m = load_model(model)?;
            let f = parse_formula(&formula)?;
            let w = match world {
                Some(name) => m.world_or_err(&name)?,
                None => m.root(),
            };
            let value = json!({ "world": m.name(w), "formula": f.to_string(), "holds": model_check(&m, w, &f)? });
            emit(&to_json_pretty(&value), &out)?;
            Ok(0)
        }
        Command::FrameCheck { model, axioms, out } => {
            let m = load_model(model)?;
            let axioms = AxiomSet::parse(&axioms)?;
            let mut violations = serde_json::Map::new();
            let mut any = false;
            for a in &axioms {
                let v = check_axiom_condition(&m, a);
                any |= !v.is_empty();
                violations.insert(a.to_string(), json!(pair_names(&m, &m, v.into_iter())));
            }
            emit(&to_json_pretty(&json!({ "ok": !any, "violations": violations })), &out)?;
            Ok(if any { EXIT_VIOLATION } else { 0 })
        }
        Command::Saturate { model, axioms, out } => {
            let m = load_model(model)?;
            let axioms = AxiomSet::parse(&axioms)?;
            emit(&model_to_json(&saturate_to_phi_frame(&m, &axioms)), &out)?;
            Ok(0)
        }
        Command::Unravel { model, bound, closed, map_out, out } => {
            let m = load_model(model)?;
            let f = if closed { unravel_closed(&m, bound) } else { unravel(&m, bound) };
            if let Some(path) = map_out {
                std::fs::write(path, f.to_json())?;
            }
            emit(&model_to_json(&f.source), &out)?;
            Ok(0)
        }
        Command::Bisim { left, right, k, vars, out } => {
            let l = load_model(left)?;
            let r = load_model(right)?;
            let value = match k {
                None => {
                    let rel = full_bisim(&l, &r);
                    json!({ "bisimilar_roots": rel.contains(l.root(), r.root()), "pairs": pair_names(&l, &r, rel.pairs()) })
                }
                Some(k) => {
                    let vars: BTreeSet<String> = match vars {
                        Some(list) => list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
                        None => l.support().union(&r.support()).cloned().collect(),
                    };
                    let table = k_bisim_table(&l, &r, &vars, k);
                    let levels: Vec<Value> =
                        (0..=k).map(|j| json!(pair_names(&l, &r, table.level(j).pairs()))).collect();
                    json!({ "vars": vars, "levels": levels })
                }
            };
            emit(&to_json_pretty(&value), &out)?;
            Ok(0)
        }
        Command::VerifyPmorphism { source, target, map, out } => {
            let s = load_model(source)?;
            let t = load_model(target)?;
            let f = PMorphism::from_json(s, t, &std::fs::read_to_string(map)?)?;
            let report = f.verify();
            emit(&to_json_pretty(&json!({ "ok": report.is_empty(), "report": report })), &out)?;
            Ok(if report.is_empty() { 0 } else { EXIT_VIOLATION })
        }
        Command::Repair { model, axioms, budget, max_steps, out } => {
            let m = load_model(model)?;
            let axioms = AxiomSet::parse(&axioms)?;
            let run = run_repair(&m, &axioms, budget, max_steps)?;
            let state = &run.state;
            let value = json!({
                "status": run.status,
                "steps": state.steps(),
                "census": run.census,
                "model": ModelFile::from_model(state.current()),
                "map": serde_json::from_str::<Value>(&state.pmorphism().to_json()).expect("valid json")["map"],
                "log": state.log(),
            });
            if out.out.is_some() {
                print!("{}", run.census.table());
            } else {
                eprint!("{}", run.census.table());
            }
            emit(&to_json_pretty(&value), &out)?;
            Ok(if run.status == RepairStatus::Truncated { EXIT_TRUNCATED } else { 0 })
        }
        Command::VerifyConditions { model, axioms, k, strict, out } => {
            let m = load_model(model)?;
            let axioms = AxiomSet::parse(&axioms)?;
            let report = verify_bounded_conditions(&m, &axioms, k, scope(strict))?;
            emit(&to_json_pretty(&json!({ "ok": report.is_empty(), "report": report })), &out)?;
            Ok(if report.is_empty() { 0 } else { EXIT_VIOLATION })
        }
        Command::Filtrate { model, formula, axioms, strict, report, out } => {
            let m = load_model(model)?;
            let phi = parse_formula(&formula)?;
            let axioms = AxiomSet::parse(&axioms)?;
            let (value, code) = match build_filtration(&m, &phi, &axioms, scope(strict)) {
                Ok(f) => {
                    let verdict = f.verify(&axioms);
                    emit(&model_to_json(&f.quotient), &out)?;
                    let code = if verdict.is_clean() { 0 } else { EXIT_VIOLATION };
                    (json!({ "ok": verdict.is_clean(), "verifiers": verdict }), code)
                }
                Err(densify::Error::Precondition(msg)) => (json!({ "ok": false, "precondition": msg }), EXIT_VIOLATION),
                Err(e) => return Err(e),
            };
            let text = to_json_pretty(&value);
            match report {
                Some(path) => std::fs::write(path, text)?,
                None => eprint!("{text}"),
            }
            Ok(code)
        }
        Command::Pipeline { model, formula, axioms, budget, max_steps, saturate, unravel, strict, quotient_out, out } => {
            let options = PipelineOptions { saturate, unravel, budget, max_steps, scope: scope(strict) };
            let run = run_pipeline_file(model, &formula, &axioms, &options)?;
            if let (Some(path), Some(q)) = (quotient_out, &run.quotient) {
                std::fs::write(path, model_to_json(q))?;
            }
            emit(&to_json_pretty(&run.report), &out)?;
            Ok(run.report.exit_code())
        }
        Command::Sat { formula, axioms, max_size, allow_large, out } => {
            let phi = parse_formula(&formula)?;
            let axioms = AxiomSet::parse(&axioms)?;
            if max_size > 8 {
                return Err(densify::Error::Precondition(format!("oracle size {max_size} exceeds 8")));
            }
            let found = if allow_large { sat_oracle_uncapped(&phi, &axioms, max_size) } else { sat_oracle(&phi, &axioms, max_size)? };
            let value = json!({
                "satisfiable": found.is_some(),
                "max_size": max_size,
                "model": found.as_ref().map(ModelFile::from_model),
            });
            emit(&to_json_pretty(&value), &out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
