//! Sweep the fiber ratio across (0, 1) on a fixed surface and tabulate the
//! resulting metrics as CSV, the same table the `emax sweep` subcommand
//! emits. Uses the embedding API (`RunConfig` + `dispatch`) rather than the
//! binary.
//!
//!     cargo run --example sweep_csv

use emax::cli::{dispatch, Command, OutputFormat, RunConfig};

fn main() {
    let config = RunConfig {
        command: Command::Sweep,
        genus: 0,
        degree: 1,
        samples: 200,
        format: OutputFormat::Csv,
        precision: 12,
        ..RunConfig::default()
    };
    let body = dispatch(&config).unwrap().body;

    let path = std::env::temp_dir().join("emax_sweep_genus0.csv");
    std::fs::write(&path, &body).unwrap();
    println!("wrote {} rows to {}", body.lines().count() - 1, path.display());

    // Columns: x,b,c,A,verdict,eh,kahler_bound,aubin,exceeds_aubin,negative_eh
    let mut exceeds = 0usize;
    let mut first = None;
    for line in body.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        if cells[8] == "true" {
            exceeds += 1;
            first.get_or_insert_with(|| cells[0].to_string());
        }
    }
    println!("rows where EH exceeds the Aubin bound 8*sqrt(6)*pi: {exceeds}");
    if let Some(x) = first {
        println!("first such ratio on this grid: x = {x}");
    }

    println!("\nhead of the table:");
    for line in body.lines().take(6) {
        println!("  {line}");
    }

    // The same sweep on a genus-3 base shows the negative-EH regime instead.
    let config = RunConfig { genus: 3, ..config };
    let body = dispatch(&config).unwrap().body;
    let negative = body.lines().skip(1).filter(|l| l.ends_with(",true")).count();
    println!("\ngenus 3: rows with negative EH: {negative} of {}", body.lines().count() - 1);
}
