//! Run the whole pipeline on a model file or a built-in example.
//!
//! `cargo run --example pipeline -- model.json "<>p" "2>3"`

use densify::io::model_from_json;
use densify::logic::parse_formula;
use densify::pipeline::{run_pipeline, run_pipeline_file, PipelineOptions};
use densify::AxiomSet;

const TREE: &str = r#"{"worlds":["r","a","b"],"root":"r","edges":[["r","a"],["r","b"]],"valuation":{"p":["a"]}}"#;

fn main() -> densify::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let options = PipelineOptions::default();
    let run = if let [path, formula, axioms] = args.as_slice() {
        run_pipeline_file(std::path::Path::new(path), formula, axioms, &options)?
    } else {
        let model = model_from_json(TREE)?;
        run_pipeline(&model, &parse_formula("<>p & <>~p")?, &AxiomSet::parse("2>3")?, &options)?
    };
    println!("{}", run.report.to_json_without_timings());
    std::process::exit(run.report.exit_code());
}
