use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fbset::classify::{classify, Target};
use fbset::io::{parse, serialize, to_dot, GraphFile, Manifest};
use fbset::reductions::DoubleMode;
use fbset::solvers::{
    solve_bipolar_pipeline, solve_deg2, solve_with, Envelope, Instance, PipelineOutcome, Problem,
    SolveError, SolveOptions, SolveResult, Verdict,
};
use fbset::suite::{run_verify, transform, VerifyConfig};

/// Feedback set problems: classification, reductions, exact solving and
/// reduction checks.
#[derive(Parser)]
#[command(name = "fbset", version)]
struct Cli {
    /// Solver refusal limits, e.g. `80` or `optimum=80,budget=20`.
    /// Defaults to $FBA_SIZE_ENVELOPE, then the built-in limits.
    #[arg(long, global = true)]
    envelope: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the complexity class of the feedback set problem on a graph.
    Classify {
        input: PathBuf,
        /// vertex or arc; both when omitted.
        #[arg(long)]
        target: Option<String>,
    },
    /// Apply a reduction and write the output graph plus a manifest.
    Transform {
        input: PathBuf,
        #[arg(long)]
        op: String,
        #[arg(long)]
        out: PathBuf,
        /// Manifest path; defaults to `<out>.manifest`.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Input budget; prints the mapped budget.
        #[arg(long)]
        k: Option<usize>,
        /// Doubling mode: arcs, parallel or subdivided.
        #[arg(long, default_value = "arcs")]
        mode: String,
    },
    /// Solve fvs, fas, vc, cvc or cfvs exactly (or by a polynomial procedure).
    Solve {
        input: PathBuf,
        #[arg(long)]
        problem: String,
        /// Decide whether a solution of size at most this exists.
        #[arg(long)]
        budget: Option<usize>,
        /// Use the degree-2 procedure or the split-and-embed pipeline.
        #[arg(long)]
        poly: bool,
        /// With --poly, also run the exact solver and compare.
        #[arg(long)]
        verify_against_exact: bool,
    },
    /// Check a reduction on generated instances against the exact solvers.
    Verify {
        #[arg(long)]
        reduction: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render a graph file as DOT.
    ExportDot {
        input: PathBuf,
        /// Manifest whose gadget registry colors the vertices.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Verification(String),
    Usage(String),
    Envelope(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Envelope(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Usage(m) | Failure::Envelope(m) => m,
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Envelope { .. } => Failure::Envelope(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message().is_empty() {
                eprintln!("error: {}", f.message());
            }
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let envelope = match &cli.envelope {
        Some(spec) => {
            Envelope::parse(spec).map_err(|e| Failure::Usage(format!("--envelope: {e}")))?
        }
        None => Envelope::from_env(),
    };
    let opts = SolveOptions::with_envelope(envelope);
    match cli.command {
        Command::Classify { input, target } => cmd_classify(&input, target.as_deref()),
        Command::Transform {
            input,
            op,
            out,
            manifest,
            k,
            mode,
        } => cmd_transform(&input, &op, &out, manifest.as_deref(), k, &mode),
        Command::Solve {
            input,
            problem,
            budget,
            poly,
            verify_against_exact,
        } => cmd_solve(&input, &problem, budget, poly, verify_against_exact, &opts),
        Command::Verify {
            reduction,
            trials,
            max_n,
            seed,
        } => {
            let report = run_verify(&VerifyConfig {
                reduction,
                trials,
                max_n,
                seed,
                opts,
            })
            .map_err(|e| Failure::Usage(e.to_string()))?;
            print!("{report}");
            if report.ok() {
                Ok(())
            } else {
                Err(Failure::Verification(String::new()))
            }
        }
        Command::ExportDot {
            input,
            manifest,
            out,
        } => cmd_export_dot(&input, manifest.as_deref(), out.as_deref()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<GraphFile, Failure> {
    parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_classify(input: &Path, target: Option<&str>) -> Result<(), Failure> {
    let file = load(input)?;
    let targets = match target {
        None => vec![Target::Vertex, Target::Arc],
        Some(t) => {
            vec![Target::parse(t).ok_or_else(|| Failure::Usage(format!("unknown target `{t}`")))?]
        }
    };
    for t in targets {
        println!("{}", classify(&file.graph, t));
    }
    Ok(())
}

fn cmd_transform(
    input: &Path,
    op: &str,
    out: &Path,
    manifest: Option<&Path>,
    k: Option<usize>,
    mode: &str,
) -> Result<(), Failure> {
    let file = load(input)?;
    let mode = DoubleMode::parse(mode)
        .ok_or_else(|| Failure::Usage(format!("unknown doubling mode `{mode}`")))?;
    let art = transform(op, &file, mode).map_err(|e| Failure::Usage(format!("{op}: {e}")))?;
    let result = GraphFile::with_embedding(art.output.clone(), art.embedding.clone());
    write(out, &serialize(&result))?;
    let manifest_path = manifest.map(Path::to_path_buf).unwrap_or_else(|| {
        let mut p = out.as_os_str().to_owned();
        p.push(".manifest");
        PathBuf::from(p)
    });
    let m = Manifest {
        budget: art.budget,
        registry: art.registry.clone(),
    };
    write(&manifest_path, &m.serialize())?;
    println!(
        "{}: {} -> {}, {} vertices, {} edges",
        art.name,
        art.input_problem,
        art.output_problem,
        art.output.vertex_count(),
        art.output.edge_count()
    );
    if let Some(k) = k {
        println!("k' = {}", art.map_budget(k));
    }
    Ok(())
}

fn print_result(r: &SolveResult) {
    match r.verdict {
        Verdict::Optimal(v) => println!("optimum: {v}"),
        Verdict::Yes => println!("decision: yes"),
        Verdict::No => println!("decision: no"),
        Verdict::Infeasible => println!("infeasible"),
    }
    if let Some(c) = &r.certificate {
        let ids: Vec<String> = c.ids().iter().map(usize::to_string).collect();
        println!(
            "{}: {}",
            if c.is_arcs() { "arcs" } else { "vertices" },
            ids.join(" ")
        );
    }
}

fn cmd_solve(
    input: &Path,
    problem: &str,
    budget: Option<usize>,
    poly: bool,
    verify_against_exact: bool,
    opts: &SolveOptions,
) -> Result<(), Failure> {
    let file = load(input)?;
    let problem = Problem::parse(problem)
        .ok_or_else(|| Failure::Usage(format!("unknown problem `{problem}`")))?;
    let mut inst = Instance::new(file.graph.clone(), problem)?;
    if let Some(k) = budget {
        inst = inst.with_budget(k);
    }
    if !poly {
        print_result(&solve_with(&inst, opts)?);
        return Ok(());
    }
    if budget.is_some() {
        return Err(Failure::Usage(
            "--poly computes optima; drop --budget".into(),
        ));
    }
    let d = file
        .graph
        .as_directed()
        .ok_or_else(|| Failure::Usage("--poly needs a directed graph".into()))?;
    let fast = if d.max_degree() <= 2 {
        println!("procedure: disjoint cycles");
        solve_deg2(d, problem)?
    } else if problem == Problem::Fvs {
        match solve_bipolar_pipeline(d, opts)? {
            PipelineOutcome::Applicable(r) => {
                println!("procedure: split graph is planar");
                r
            }
            PipelineOutcome::NotApplicable => {
                return Err(Failure::Usage(
                    "--poly: maximum degree above 2 and the split graph is not planar".into(),
                ))
            }
        }
    } else {
        return Err(Failure::Usage(format!(
            "--poly: no polynomial procedure for {problem} at this degree"
        )));
    };
    print_result(&fast);
    if verify_against_exact {
        let exact = solve_with(&inst, opts)?;
        if exact.value() != fast.value() {
            return Err(Failure::Verification(format!(
                "polynomial value {:?} differs from exact {:?}",
                fast.value(),
                exact.value()
            )));
        }
        println!("exact solver agrees");
    }
    Ok(())
}

fn cmd_export_dot(
    input: &Path,
    manifest: Option<&Path>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let file = load(input)?;
    let manifest = match manifest {
        Some(p) => Some(
            Manifest::parse(&read(p)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        ),
        None => None,
    };
    let dot = to_dot(
        &file.graph,
        file.embedding.as_ref(),
        manifest.as_ref().map(|m| m.registry.as_slice()),
    );
    match out {
        Some(p) => write(p, &dot),
        None => {
            print!("{dot}");
            Ok(())
        }
    }
}
