//! Producing a report from the bundled fixtures without the binary.
//!
//! Equivalent to
//! `cocycle-forge --command glue --input fixture:sphere3_descent --seed 3`.

use cocycle_forge::cli::{run, Command, Format, RunConfig};

fn main() -> cocycle_forge::Result<()> {
    let mut cfg = RunConfig::new(Command::Glue, "fixture:sphere3_descent");
    cfg.seed = 3;
    let report = run(&cfg)?;
    let r = &report.results[0];
    println!("class {} witness valid {}", r["class"], r["witness_valid"]);

    let mut cfg = RunConfig::new(Command::EquivariantClassify, "fixture:antipodal_s2");
    cfg.degree = 2;
    print!("{}", run(&cfg)?.render(Format::Csv));
    Ok(())
}
