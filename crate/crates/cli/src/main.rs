use std::path::PathBuf;
use std::process::exit;

use clap::{Args, Parser, Subcommand, ValueEnum};

use boxgraphs::bounds::{check_bound, g_t, BoundReport, Formula};
use boxgraphs::constructions::{
    digit_reversal_family, grouped_family, superlinear_family, trivial_family, ConstructionReport,
};
use boxgraphs::direction::is_2_coherent;
use boxgraphs::family::BoxFamily;
use boxgraphs::hypergraph::{count_hyperedges, find_biclique, BicliqueSearch, DEFAULT_NODE_BUDGET};
use boxgraphs::io::{family_to_json, load_family, save_family};
use boxgraphs::oracle::{zarankiewicz_bruteforce, DEFAULT_ORACLE_BUDGET};
use boxgraphs::random::{
    random_family_for, random_planar_instance, random_restricted_family, seeded, ChaCha8Rng, Rng,
};
use boxgraphs::rational::{decimal6, format_rational, Rational};
use boxgraphs::reductions::{slice_general, slice_restricted};
use boxgraphs::{Error, Result};
use boxgraphs_cli::{
    branch_label, exit_code_for, parse_direction_literal, parse_sizes, ExperimentRow, CSV_HEADER,
};

/// Intersection hypergraphs of axis-parallel boxes: constructions,
/// reductions, bound checks, and small exhaustive searches.
#[derive(Parser)]
#[command(name = "boxgraphs", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a direction vector literal such as "2: {} {1,2}"
    Classify {
        /// Direction vector, e.g. "3: {2,3} {1,3} {1,2}"
        literal: String,
    },
    /// Build a named family and emit it as a family file
    Build(BuildArgs),
    /// Count the hyperedges of a family file
    Count {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check an edge-count inequality against a family file
    Check {
        #[arg(long)]
        file: PathBuf,
        /// One of: restricted-27, planar-27t, one-dim, point-seg, seg-seg, r-seg
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Where to write the family if the inequality fails
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose a family file into planar or lower-dimensional slices
    Slice {
        #[arg(long)]
        file: PathBuf,
        /// Collapse this axis instead of running the planar decomposition
        #[arg(long)]
        axis: Option<usize>,
        /// With --axis: the two parts (1-based) whose boxes are kept, e.g. "1,3"
        #[arg(long)]
        parts: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive maximum edge count over a small coordinate grid
    Oracle {
        /// Direction vector literal
        #[arg(long)]
        f: String,
        /// Part sizes, e.g. "2,2"
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Override the per-axis grid size (use with care: shrinking it can miss optima)
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Where to write an optimal family
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Batch measurements emitted as CSV
    Experiment {
        #[command(subcommand)]
        which: Experiment,
    },
}

#[derive(Args)]
struct BuildArgs {
    /// One of: trivial, grouped, digit-reversal, pipeline
    #[arg(long)]
    construction: String,
    /// Direction vector literal (trivial, grouped, pipeline)
    #[arg(long)]
    f: Option<String>,
    /// Part size or comma-separated sizes (trivial, grouped)
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    t: Option<usize>,
    /// Digit base (digit-reversal, pipeline)
    #[arg(long)]
    b: Option<u64>,
    /// Digit count (digit-reversal, pipeline)
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Experiment {
    /// Edge growth of the digit-reversal family
    Growth {
        /// Take base = digit count in every row
        #[arg(long)]
        b_equals_k: bool,
        /// Fixed base when --b-equals-k is not set
        #[arg(long)]
        b: Option<u64>,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Random pattern-free instances measured against one formula
    Sweep {
        /// One of: restricted-27, planar-27t, one-dim, point-seg, seg-seg, r-seg
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            exit(exit_code_for(&e));
        }
    }
}

fn run(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Classify { literal } => cmd_classify(&literal),
        Cmd::Build(args) => cmd_build(args),
        Cmd::Count { file, format } => cmd_count(&file, format),
        Cmd::Check {
            file,
            formula,
            t,
            budget_nodes,
            out,
        } => cmd_check(&file, &formula, t, budget_nodes, out),
        Cmd::Slice {
            file,
            axis,
            parts,
            out,
        } => cmd_slice(&file, axis, parts.as_deref(), out),
        Cmd::Oracle {
            f,
            n,
            t,
            grid,
            budget_nodes,
            out,
        } => cmd_oracle(&f, &n, t, grid, budget_nodes, out),
        Cmd::Experiment { which } => match which {
            Experiment::Growth {
                b_equals_k,
                b,
                k_max,
                budget_nodes,
                out,
                format,
            } => cmd_growth(b_equals_k, b, k_max, budget_nodes, out, format),
            Experiment::Sweep {
                formula,
                count,
                t,
                seed,
                budget_nodes,
                out,
                format,
            } => cmd_sweep(&formula, count, t, seed, budget_nodes, out, format),
        },
    }
}

fn cmd_classify(literal: &str) -> Result<i32> {
    let f = parse_direction_literal(literal)?;
    let verdict = is_2_coherent(&f);
    println!("direction vector: {f}");
    if verdict.coherent {
        let k = verdict.witness_k.expect("coherent verdicts carry a part");
        let (a, b) = verdict.witness_directions.expect("coherent verdicts carry two axes");
        println!("2-coherent: yes");
        println!("witness: drop part {}, shared axes {{{a},{b}}}", k + 1);
    } else {
        println!("2-coherent: no");
    }
    println!("branch: {}", branch_label(verdict.coherent));
    Ok(0)
}

fn require<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidParameter(format!("missing --{flag}")))
}

fn cmd_build(args: BuildArgs) -> Result<i32> {
    let report: ConstructionReport = match args.construction.as_str() {
        "trivial" => {
            let f = parse_direction_literal(&require(args.f, "f")?)?;
            let sizes = parse_sizes(&require(args.n, "n")?)?;
            if sizes.len() != 1 {
                return Err(Error::InvalidParameter(
                    "trivial takes a single part size".into(),
                ));
            }
            trivial_family(&f, sizes[0], require(args.t, "t")?)?
        }
        "grouped" => {
            let f = parse_direction_literal(&require(args.f, "f")?)?;
            let sizes = parse_sizes(&require(args.n, "n")?)?;
            grouped_family(&f, &sizes, require(args.t, "t")?)?
        }
        "digit-reversal" => digit_reversal_family(require(args.b, "b")?, require(args.k, "k")?)?,
        "pipeline" => {
            let f = parse_direction_literal(&require(args.f, "f")?)?;
            superlinear_family(
                &f,
                require(args.t, "t")?,
                require(args.b, "b")?,
                require(args.k, "k")?,
            )?
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown construction {other:?}"
            )))
        }
    };

    eprintln!(
        "{} [{}]: {} boxes, {} hyperedges, no {} complete pattern",
        report.construction,
        report.params,
        report.family.total_boxes(),
        report.claimed_edges,
        report.claimed_free_t,
    );
    match args.out {
        Some(path) => {
            save_family(&path, &report.family)?;
            println!("wrote {}", path.display());
        }
        None => println!("{:#}", family_to_json(&report.family)),
    }
    Ok(0)
}

fn cmd_count(file: &PathBuf, format: Format) -> Result<i32> {
    let fam = load_family(file)?;
    let edges = count_hyperedges(&fam).edge_count;
    match format {
        Format::Json => {
            let v = serde_json::json!({
                "sizes": fam.part_sizes(),
                "n_total": fam.total_boxes(),
                "edges": edges,
            });
            println!("{v:#}");
        }
        Format::Csv => {
            println!("n_total,edges");
            println!("{},{edges}", fam.total_boxes());
        }
    }
    Ok(0)
}

fn report_json(r: &BoundReport) -> serde_json::Value {
    serde_json::json!({
        "formula": r.formula.id(),
        "sizes": r.sizes,
        "t": r.t,
        "edges": r.measured_edges,
        "bound": format_rational(&r.bound_value),
        "ratio": decimal6(&r.ratio()),
        "satisfied": r.satisfied,
    })
}

fn cmd_check(
    file: &PathBuf,
    formula: &str,
    t: usize,
    budget_nodes: Option<u64>,
    out: Option<PathBuf>,
) -> Result<i32> {
    let fam = load_family(file)?;
    let formula = Formula::parse(formula)?;
    let budget = budget_nodes.unwrap_or(DEFAULT_NODE_BUDGET);
    let report = check_bound(formula, &fam, t, budget)?;
    println!("{:#}", report_json(&report));
    if report.satisfied {
        Ok(0)
    } else {
        let path = out.unwrap_or_else(|| PathBuf::from("counterexample.json"));
        save_family(&path, &fam)?;
        eprintln!("bound violated; counterexample written to {}", path.display());
        Ok(1)
    }
}

fn cmd_slice(
    file: &PathBuf,
    axis: Option<usize>,
    parts: Option<&str>,
    out: Option<PathBuf>,
) -> Result<i32> {
    let fam = load_family(file)?;
    let doc = match axis {
        Some(axis) => {
            let parts = parse_sizes(require(parts, "parts")?)?;
            if parts.len() != 2 || parts.contains(&0) {
                return Err(Error::InvalidParameter(
                    "--parts takes two 1-based part indices".into(),
                ));
            }
            let slices = slice_general(&fam, axis, (parts[0] - 1, parts[1] - 1))?;
            let total: u64 = slices
                .iter()
                .map(|s| count_hyperedges(&s.family).edge_count)
                .sum();
            serde_json::json!({
                "axis": axis,
                "slices": slices.iter().map(|s| serde_json::json!({
                    "value": format_rational(&s.value),
                    "sizes": s.family.part_sizes(),
                    "edges": count_hyperedges(&s.family).edge_count,
                    "family": family_to_json(&s.family),
                })).collect::<Vec<_>>(),
                "total_edges": total,
            })
        }
        None => {
            let dec = slice_restricted(&fam)?;
            serde_json::json!({
                "anchors": dec.slices.len(),
                "slices": dec.slices.iter().map(|s| serde_json::json!({
                    "anchor": s.anchor.coords().iter().map(format_rational).collect::<Vec<_>>(),
                    "traces": s.horizontals.len(),
                    "transversals": s.verticals.len(),
                    "edges": s.edge_count(),
                })).collect::<Vec<_>>(),
                "total_transversals": dec.total_transversals(),
                "total_edges": dec.total_edges(),
            })
        }
    };
    match out {
        Some(path) => {
            std::fs::write(&path, format!("{doc:#}\n")).map_err(Error::from)?;
            println!("wrote {}", path.display());
        }
        None => println!("{doc:#}"),
    }
    Ok(0)
}

fn cmd_oracle(
    f: &str,
    n: &str,
    t: usize,
    grid: Option<usize>,
    budget_nodes: Option<u64>,
    out: Option<PathBuf>,
) -> Result<i32> {
    let f = parse_direction_literal(f)?;
    let sizes = parse_sizes(n)?;
    let budget = budget_nodes.unwrap_or(DEFAULT_ORACLE_BUDGET);
    let res = zarankiewicz_bruteforce(&f, &sizes, t, grid, budget)?;
    let v = serde_json::json!({
        "f": f.to_string(),
        "sizes": sizes,
        "t": t,
        "z": res.z_value,
        "search_space": format_rational(&res.search_space_size),
        "exhausted": res.exhausted,
    });
    println!("{v:#}");
    if let Some(path) = out {
        save_family(&path, &res.witness_family)?;
        eprintln!("witness written to {}", path.display());
    }
    Ok(if res.exhausted { 0 } else { 3 })
}

fn write_rows(rows: &[ExperimentRow], out: Option<&PathBuf>, format: Format) -> Result<()> {
    let text = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).map_err(io_err)?;
            for row in rows {
                w.write_record(row.record()).map_err(io_err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| io_err(csv::Error::from(e.into_error())))?)
                .expect("csv output is utf-8")
        }
        Format::Json => {
            let v: serde_json::Value = rows.iter().map(ExperimentRow::to_json).collect();
            format!("{v:#}\n")
        }
    };
    match out {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn io_err(e: csv::Error) -> Error {
    Error::InvalidParameter(format!("csv output failed: {e}"))
}

fn cmd_growth(
    b_equals_k: bool,
    b: Option<u64>,
    k_max: u32,
    budget_nodes: Option<u64>,
    out: Option<PathBuf>,
    format: Format,
) -> Result<i32> {
    let budget = budget_nodes.unwrap_or(DEFAULT_NODE_BUDGET);
    let mut rows = Vec::new();
    let k_lo = if b_equals_k { 2 } else { 1 };
    let mut truncated = false;
    for k in k_lo..=k_max {
        let b = if b_equals_k {
            u64::from(k)
        } else {
            require(b, "b")?
        };
        let rep = digit_reversal_family(b, k)?;
        let n_points = usize::try_from(b.pow(k)).expect("checked by the builder");
        let sizes = rep.family.part_sizes();
        let g = g_t(&sizes, 2)?;
        let certified = match rep.certify(budget) {
            Ok(true) => "yes",
            Ok(false) => {
                truncated = true;
                "budget"
            }
            Err(e) => return Err(e),
        };
        rows.push(ExperimentRow {
            construction: rep.construction.clone(),
            params: rep.params.clone(),
            n_total: n_points,
            edges: rep.claimed_edges,
            g_value: g,
            ratio: Rational::new(rep.claimed_edges.into(), (n_points as u64).into()),
            free_t: rep.claimed_free_t,
            certified: certified.into(),
        });
        if truncated {
            break;
        }
    }
    write_rows(&rows, out.as_ref(), format)?;
    Ok(if truncated { 3 } else { 0 })
}

/// Draw one random instance for `formula`, returning it with the sizes used.
fn draw_instance(formula: Formula, rng: &mut ChaCha8Rng) -> Result<BoxFamily> {
    use boxgraphs::direction::DirSet;
    use boxgraphs::direction::DirectionVector;
    let sz = |rng: &mut ChaCha8Rng| rng.gen_range(3..=6usize);
    match formula {
        Formula::Restricted27 => {
            let sizes = [sz(rng), sz(rng), sz(rng)];
            Ok(random_restricted_family(rng, 3, &sizes))
        }
        Formula::Planar27T => {
            let (m, n) = (sz(rng), sz(rng));
            let inst = random_planar_instance(rng, m, n, 24);
            boxgraphs::planar::family_from_instance(&inst)
        }
        Formula::OneDim => {
            let r = rng.gen_range(2..=3usize);
            let sets = (0..r)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        DirSet::full(1)
                    } else {
                        DirSet::empty()
                    }
                })
                .collect();
            let f = DirectionVector::new(1, sets)?;
            let sizes: Vec<usize> = (0..r).map(|_| sz(rng)).collect();
            Ok(random_family_for(rng, &f, &sizes, 0, 12))
        }
        Formula::PointSeg => {
            let f = DirectionVector::new(1, vec![DirSet::empty(), DirSet::full(1)])?;
            let sizes = [sz(rng), sz(rng)];
            Ok(random_family_for(rng, &f, &sizes, 0, 12))
        }
        Formula::SegSeg => {
            let f = DirectionVector::new(1, vec![DirSet::full(1), DirSet::full(1)])?;
            let sizes = [sz(rng), sz(rng)];
            Ok(random_family_for(rng, &f, &sizes, 0, 12))
        }
        Formula::RSeg => {
            let f = DirectionVector::new(1, vec![DirSet::full(1); 3])?;
            let sizes = [sz(rng), sz(rng), sz(rng)];
            Ok(random_family_for(rng, &f, &sizes, 0, 12))
        }
    }
}

fn cmd_sweep(
    formula: &str,
    count: usize,
    t: usize,
    seed: u64,
    budget_nodes: Option<u64>,
    out: Option<PathBuf>,
    format: Format,
) -> Result<i32> {
    let formula = Formula::parse(formula)?;
    let budget = budget_nodes.unwrap_or(DEFAULT_NODE_BUDGET);
    let mut rng = seeded(seed);
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    let mut exit = 0;

    let mut i = 0;
    while i < count {
        let fam = draw_instance(formula, &mut rng)?;
        // Rejection-sample until the instance has no complete pattern.
        match find_biclique(&fam, t, budget) {
            Ok(BicliqueSearch::Absent) => {}
            Ok(_) => continue,
            Err(e) => return Err(e),
        }
        let report = match check_bound(formula, &fam, t, budget) {
            Ok(r) => r,
            Err(Error::EmptyInput(_)) => continue,
            Err(Error::BudgetExceeded { .. }) => {
                exit = 3;
                break;
            }
            Err(e) => return Err(e),
        };
        if !report.satisfied {
            let path = PathBuf::from(format!("violation-{}-{i}.json", formula.id()));
            save_family(&path, &fam)?;
            violations.push(path);
        }
        let g = g_t(&report.sizes, t)?;
        rows.push(ExperimentRow {
            construction: format!("random-{}", formula.id()),
            params: format!("i={i};t={t};seed={seed}"),
            n_total: fam.total_boxes(),
            edges: report.measured_edges,
            ratio: Rational::from_integer(report.measured_edges.into()) / &g,
            g_value: g,
            free_t: t,
            certified: "yes".into(),
        });
        i += 1;
    }

    write_rows(&rows, out.as_ref(), format)?;
    if !violations.is_empty() {
        for p in &violations {
            eprintln!("bound violated; counterexample written to {}", p.display());
        }
        return Ok(1);
    }
    Ok(exit)
}
