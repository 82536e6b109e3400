//! Command-line front end: one verb per pipeline stage.
//!
//! Exit status: 0 every required check passed, 1 a check failed,
//! 2 a distance search ran out of budget, 3 bad input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hgp_surgery::io::{emit_alist, parse_alist, parse_config, run_pipeline, Stage};

const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "hgp-surgery", version, about = "Surgery gadgets on hypergraph product codes")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Config file of `key = value` lines; flags are applied after it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// First classical factor, e.g. `hamming-7-4` or `alist:H.alist`.
    #[arg(long = "c", global = true)]
    c: Option<String>,
    /// Second classical factor.
    #[arg(long = "d", global = true)]
    d: Option<String>,
    /// Comma-separated codewords to measure.
    #[arg(long, global = true)]
    codewords: Option<String>,
    #[arg(long, global = true)]
    family: Option<String>,
    #[arg(long, global = true)]
    orientation: Option<String>,
    #[arg(long, global = true, conflicts_with = "relative")]
    strict: bool,
    /// Relative expansion mode with parameter `t`.
    #[arg(long, global = true, value_name = "T")]
    relative: Option<usize>,
    /// Leave out the faces of the gadget graph.
    #[arg(long, global = true)]
    no_faces: bool,
    /// Candidate budget for each distance search.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads for distance searches.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for alist matrices and the report.
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// Build the base code.
    Build,
    /// Synthesize and check the gadgets.
    Gadget,
    /// Build each deformed code and its measured logicals.
    Deform,
    /// Build the compacted code.
    Compact,
    /// Run every stage and check the fast-surgery conditions.
    Verify,
    /// Toric blocks measured with check-graph gadgets.
    ToricDemo {
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = 2)]
        blocks: usize,
        #[arg(long, default_value = "10,01")]
        selectors: String,
    },
    /// Parse an alist file, write it back and compare.
    Roundtrip { file: PathBuf },
}

fn config_text(opts: &Opts, verb: &Verb) -> Result<String, String> {
    let mut text = match &opts.config {
        Some(p) => fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?,
        None => String::new(),
    };
    let mut put = |k: &str, v: &str| text.push_str(&format!("\n{k} = {v}"));
    if let Verb::ToricDemo { size, blocks, selectors } = verb {
        put("toric", &size.to_string());
        put("blocks", &blocks.to_string());
        put("selectors", selectors);
    } else {
        if let Some(c) = &opts.c {
            put("c", c);
        }
        if let Some(d) = &opts.d {
            put("d", d);
        }
        if let Some(w) = &opts.codewords {
            put("codewords", w);
        }
    }
    if let Some(f) = &opts.family {
        put("family", f);
    }
    if let Some(o) = &opts.orientation {
        put("orientation", o);
    }
    if opts.strict {
        put("mode", "strict");
    }
    if let Some(t) = opts.relative {
        put("mode", &format!("relative:{t}"));
    }
    if opts.no_faces {
        put("faces", "false");
    }
    if let Some(b) = opts.budget {
        put("budget", &b.to_string());
    }
    if let Some(dir) = &opts.output_dir {
        put("output-dir", &dir.display().to_string());
    }
    Ok(text)
}

fn roundtrip(file: &PathBuf) -> Result<u8, String> {
    let text = fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let h = parse_alist(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    let back = parse_alist(&emit_alist(&h)).map_err(|e| e.to_string())?;
    let same = back == h;
    println!("rows = {}\ncols = {}\nrank = {}\nroundtrip = {}", h.rows(), h.cols(), h.rank(), if same { "ok" } else { "mismatch" });
    Ok(if same { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8, String> {
    if let Some(n) = cli.opts.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    let stage = match &cli.verb {
        Verb::Roundtrip { file } => return roundtrip(file),
        Verb::Build => Stage::Build,
        Verb::Gadget => Stage::Gadget,
        Verb::Deform => Stage::Deform,
        Verb::Compact => Stage::Compact,
        Verb::Verify | Verb::ToricDemo { .. } => Stage::Verify,
    };
    let text = config_text(&cli.opts, &cli.verb)?;
    let config = parse_config(&text).map_err(|e| e.to_string())?;
    let report = run_pipeline(&config, stage).map_err(|e| format!("{}: {e}", e.code()))?;
    let rendered = report.render();
    print!("{rendered}");
    eprint!("{}", report.render_timings());
    if let Some(dir) = &config.output_dir {
        fs::write(dir.join("report.txt"), &rendered).map_err(|e| e.to_string())?;
    }
    Ok(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(INPUT_ERROR);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
