//! Command-line front-end: loads complexes from files or generators, runs
//! check suites and prints one record per check.

pub mod args;
pub mod commands;
pub mod input;
pub mod report;

use anyhow::Result;

use args::{Cli, Command, Common, Format};
use report::Record;

/// What a run prints and its exit status.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

fn render(common: &Common, records: &[Record]) -> Outcome {
    let output = match common.format {
        Format::Text => report::text(records),
        Format::Structured => report::structured(records),
    };
    Outcome { output, code: commands::exit_code(common, records) }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        anyhow::ensure!(j > 0, "--jobs must be positive");
        b = b.num_threads(j);
    }
    Ok(b.build()?)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check(a) => {
            let records = pool(a.common.jobs)?.install(|| commands::check(a))?;
            Ok(render(&a.common, &records))
        }
        Command::Isometry(a) => {
            let records = pool(a.common.jobs)?.install(|| commands::isometry(a))?;
            Ok(render(&a.common, &records))
        }
        Command::Theorems(a) => {
            let records = pool(a.common.jobs)?.install(|| commands::theorems(a))?;
            Ok(render(&a.common, &records))
        }
        Command::Generate(a) => Ok(Outcome { output: commands::generate(a)?, code: 0 }),
    }
}
