//! Parse formulas, print them back, and inspect their structure.
//!
//! `cargo run --example parse -- "<><>p -> [](q | ~p)"`

use densify::logic::parse_formula;

fn main() -> densify::Result<()> {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if inputs.is_empty() {
        vec!["<> <> p -> <> <> <> p".to_string(), "[]p & ~<>false".to_string(), "p & ".to_string()]
    } else {
        inputs
    };
    for text in &inputs {
        match parse_formula(text) {
            Ok(f) => {
                println!("{text:?}");
                println!("  printed      {f}");
                println!("  core form    {}", f.to_core());
                println!("  modal depth  {}", f.modal_depth());
                println!("  variables    {:?}", f.prop_vars());
                println!("  subformulas  {}", f.subformulas().len());
            }
            Err(e) => println!("{text:?}\n  rejected: {e}"),
        }
    }
    Ok(())
}
