use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nrgit::commands;
use nrgit::report::Report;
use nrgit::scenario::{parse_scenario, Options, Scenario};

#[derive(Parser)]
#[command(name = "nrgit", version, about = "Stabiliser conditions, invariant quotients and blow-ups for graded unipotent actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fitting ideals, ss=s, the stabiliser condition and WUU.
    Analyze(Common),
    /// Staged invariant quotient (needs the stabiliser condition).
    Quotient(Common),
    /// Centre, b elements and the a ≠ 0 chart, then its quotient.
    Blowup(Common),
    /// Free-algebra identities and coproduct coefficient lemmas.
    Identities(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    scenario: Option<PathBuf>,
    #[arg(long = "degree-bound")]
    degree_bound: Option<u32>,
    #[arg(long = "pbw-bound")]
    pbw_bound: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Also write the report as JSON to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

impl Common {
    fn apply(&self, o: &mut Options) {
        if let Some(d) = self.degree_bound {
            o.degree_bound = d;
        }
        if let Some(p) = self.pbw_bound {
            o.pbw_bound = p;
        }
        if let Some(s) = self.seed {
            o.seed = s;
        }
    }

    fn load(&self) -> Result<Scenario, String> {
        let path = self.scenario.as_ref().ok_or("--scenario is required for this command")?;
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let mut s = parse_scenario(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        self.apply(&mut s.options);
        Ok(s)
    }
}

fn run(cli: Cli) -> Result<(Report, Option<PathBuf>), String> {
    let (report, common) = match &cli.command {
        Command::Analyze(c) => (commands::analyze(&c.load()?), c),
        Command::Quotient(c) => (commands::quotient(&c.load()?), c),
        Command::Blowup(c) => (commands::blowup(&c.load()?), c),
        Command::Identities(c) => {
            let mut o = match &c.scenario {
                Some(_) => c.load()?.options,
                None => Options::default(),
            };
            c.apply(&mut o);
            (commands::identities(&o), c)
        }
    };
    Ok((report, common.json.clone()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, json)) => {
            print!("{}", report.to_text());
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report.to_json()).expect("reports serialise");
                if let Err(e) = std::fs::write(&path, text + "\n") {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
