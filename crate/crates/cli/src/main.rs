//! Command-line front end: enumeration, graph censuses, dimension
//! computations, cycle types, verification suites, and Hilbert tables.
//!
//! Output goes to stdout in the selected format; progress notes go to stderr.
//! Exit codes: 0 on success (including out-of-range dimension requests),
//! 1 when a verification suite fails, 2 on usage or computation errors.

mod cache;
mod verify;

use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use diagcent::gct::enumerate_gct;
use diagcent::graphs::CensusOptions;
use diagcent::invariants::{
    graph_count_dim, hilbert_table, molien_dim_sym, CountGroup, GraphCountResult,
};
use diagcent::partitions::{enumerate_partitions, RgsIter, SetPartition};
use diagcent::schur_weyl::{centralizer_dimension_in_commutant, GroupKind};
use diagcent::Caps;

#[derive(Parser)]
#[command(
    name = "diagcent",
    version,
    about = "Diagram-algebra centralizers, multidigraph censuses, and invariant dimensions"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Cache directory (default: $DIAGCENT_CACHE_DIR, else the platform
    /// cache location).
    #[arg(long, global = true)]
    cache_dir: Option<std::path::PathBuf>,
    /// Recompute everything, neither reading nor writing the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads (default: all logical cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Raise the n^d matrix cap; requires --accept-long-runtimes.
    #[arg(long, global = true)]
    cap_nd: Option<usize>,
    /// Acknowledge that raised caps can take a very long time.
    #[arg(long, global = true)]
    accept_long_runtimes: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List set partitions of [1, 2d] (optionally only perfect matchings).
    Enumerate {
        #[arg(long)]
        d: usize,
        /// Restrict to Brauer diagrams (all blocks of size two).
        #[arg(long)]
        brauer: bool,
    },
    /// Count (and optionally list) unlabeled multidigraphs with d arrows.
    CountGraphs {
        #[arg(long)]
        d: usize,
        /// Keep only graphs with at most this many vertices.
        #[arg(long)]
        max_vertices: Option<usize>,
        /// Keep only disjoint unions of directed cycles.
        #[arg(long)]
        cycles_only: bool,
        /// Print the canonical graphs, not just the count.
        #[arg(long)]
        list: bool,
    },
    /// Dimension of the degree-d conjugation invariants for a group family.
    Dim {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum)]
        method: Method,
    },
    /// Count (and optionally list) generalized cycle types of total length d.
    Gct {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        list: bool,
    },
    /// Run verification suites; nonzero exit on any failure.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Table of invariant dimensions for the permutation group.
    Hilbert {
        #[arg(long, value_enum, default_value_t = HilbertGroup::Sym)]
        group: HilbertGroup,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_d: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Group {
    Sym,
    Orthq,
    Orthq2,
    Symp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Molien,
    Commutant,
    Graph,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HilbertGroup {
    Sym,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn build_caps(global: &GlobalArgs) -> anyhow::Result<Caps> {
    let mut caps = Caps::default();
    if let Some(cap) = global.cap_nd {
        if cap > caps.max_tensor_dim && !global.accept_long_runtimes {
            bail!("--cap-nd above {} requires --accept-long-runtimes", caps.max_tensor_dim);
        }
        // Hard safety ceiling regardless of flags.
        caps.max_tensor_dim = cap.min(1 << 24);
    }
    Ok(caps)
}

/// Returns whether the run counts as fully successful (verify suites may
/// report failures without erroring).
fn run(cli: &Cli) -> anyhow::Result<bool> {
    let caps = build_caps(&cli.global)?;
    let format = cli.global.format;
    match &cli.command {
        Command::Enumerate { d, brauer } => {
            cmd_enumerate(*d, *brauer, format, &caps)?;
            Ok(true)
        }
        Command::CountGraphs {
            d,
            max_vertices,
            cycles_only,
            list,
        } => {
            let options = CensusOptions {
                max_vertices: *max_vertices,
                cycles_only: *cycles_only,
            };
            let store = cache::Store::new(&cli.global.cache_dir, cli.global.no_cache)?;
            let graphs = store.census(*d, options, &caps)?;
            emit_graphs(*d, options, &graphs, *list, format);
            Ok(true)
        }
        Command::Dim {
            group,
            n,
            d,
            method,
        } => {
            let store = cache::Store::new(&cli.global.cache_dir, cli.global.no_cache)?;
            cmd_dim(*group, *n, *d, *method, format, &caps, &store)?;
            Ok(true)
        }
        Command::Gct { d, list } => {
            cmd_gct(*d, *list, format, &caps)?;
            Ok(true)
        }
        Command::Verify { suite, d, n } => {
            let report = verify::run_suite(*suite, *d, *n, &caps)?;
            verify::emit(&report, format == Format::Json);
            Ok(report.all_passed())
        }
        Command::Hilbert { group: _, max_n, max_d } => {
            let table = hilbert_table(
                (1..=*max_n).collect(),
                (0..=*max_d).collect(),
                &caps,
            )?;
            match format {
                Format::Table => {
                    print!("{}", table.to_csv().replace(',', "\t"));
                    for (j, stable) in table.stable_from.iter().enumerate() {
                        match stable {
                            Some(t) => println!(
                                "# d={} stable from n={t}",
                                table.d_values[j]
                            ),
                            None => println!(
                                "# d={} not stable within range",
                                table.d_values[j]
                            ),
                        }
                    }
                }
                Format::Json => println!("{}", serde_json::to_string(&table)?),
                Format::Csv => print!("{}", table.to_csv()),
            }
            Ok(true)
        }
    }
}

fn cmd_enumerate(d: usize, brauer: bool, format: Format, caps: &Caps) -> anyhow::Result<()> {
    caps.check_partition_size(2 * d)
        .context("enumeration size over the cap")?;
    // Stream rather than materialize: Bell(12) partitions would not fit
    // comfortably in memory.
    let mut count = 0usize;
    let mut lines: Vec<String> = Vec::new();
    for rgs in RgsIter::new(2 * d) {
        let p = SetPartition::from_rgs(&rgs);
        if brauer && !p.is_brauer() {
            continue;
        }
        count += 1;
        match format {
            Format::Table => println!("{p}"),
            Format::Csv => println!("{count},{p}"),
            Format::Json => lines.push(p.to_string()),
        }
    }
    match format {
        Format::Table => println!("count: {count}"),
        Format::Csv => {}
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "d": d,
                "brauer": brauer,
                "partitions": lines,
                "count": count,
            })
        ),
    }
    Ok(())
}

fn emit_graphs(
    d: usize,
    options: CensusOptions,
    graphs: &[diagcent::graphs::Multidigraph],
    list: bool,
    format: Format,
) {
    match format {
        Format::Table => {
            if list {
                for g in graphs {
                    println!("{g}");
                }
            }
            println!("count: {}", graphs.len());
        }
        Format::Csv => {
            println!("index,graph");
            for (i, g) in graphs.iter().enumerate() {
                println!("{},{}", i + 1, g);
            }
        }
        Format::Json => {
            let rendered: Option<Vec<String>> =
                list.then(|| graphs.iter().map(|g| g.to_string()).collect());
            println!(
                "{}",
                serde_json::json!({
                    "d": d,
                    "max_vertices": options.max_vertices,
                    "cycles_only": options.cycles_only,
                    "count": graphs.len(),
                    "graphs": rendered,
                })
            );
        }
    }
}

fn cmd_dim(
    group: Group,
    n: usize,
    d: usize,
    method: Method,
    format: Format,
    caps: &Caps,
    store: &cache::Store,
) -> anyhow::Result<()> {
    let result: GraphCountResult = match method {
        Method::Molien => {
            if group != Group::Sym {
                bail!("--method molien is only available for --group sym");
            }
            GraphCountResult::Dimension(molien_dim_sym(n, d, caps)?)
        }
        Method::Graph => match group {
            Group::Sym => {
                if d == 0 || n == 0 {
                    graph_count_dim(CountGroup::Sym, n, d, caps)?
                } else {
                    let graphs = store.census(
                        d,
                        CensusOptions {
                            max_vertices: Some(n),
                            ..Default::default()
                        },
                        caps,
                    )?;
                    GraphCountResult::Dimension(graphs.len() as u64)
                }
            }
            Group::Orthq | Group::Orthq2 => graph_count_dim(CountGroup::Orth, n, d, caps)?,
            Group::Symp => graph_count_dim(CountGroup::Symp, n, d, caps)?,
        },
        Method::Commutant => {
            let kind = match group {
                Group::Sym => GroupKind::Sym,
                Group::Orthq => GroupKind::OrthQ,
                Group::Orthq2 => GroupKind::OrthQPrime,
                Group::Symp => GroupKind::Symp,
            };
            GraphCountResult::Dimension(
                centralizer_dimension_in_commutant(kind, n, d, caps)? as u64
            )
        }
    };
    let group_name = match group {
        Group::Sym => "sym",
        Group::Orthq => "orthq",
        Group::Orthq2 => "orthq2",
        Group::Symp => "symp",
    };
    let method_name = match method {
        Method::Molien => "molien",
        Method::Commutant => "commutant",
        Method::Graph => "graph",
    };
    match format {
        Format::Table => match result {
            GraphCountResult::Dimension(v) => println!("{v}"),
            GraphCountResult::OutOfRange => println!("OUT_OF_RANGE"),
        },
        Format::Csv => match result {
            GraphCountResult::Dimension(v) => {
                println!("group,n,d,method,dimension");
                println!("{group_name},{n},{d},{method_name},{v}");
            }
            GraphCountResult::OutOfRange => {
                println!("group,n,d,method,dimension");
                println!("{group_name},{n},{d},{method_name},OUT_OF_RANGE");
            }
        },
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "group": group_name,
                "n": n,
                "d": d,
                "method": method_name,
                "result": result,
            })
        ),
    }
    Ok(())
}

fn cmd_gct(d: usize, list: bool, format: Format, caps: &Caps) -> anyhow::Result<()> {
    let types = enumerate_gct(d, caps)?;
    match format {
        Format::Table => {
            if list {
                for t in &types {
                    println!("{t}");
                }
            }
            println!("count: {}", types.len());
        }
        Format::Csv => {
            println!("index,cycle_type");
            for (i, t) in types.iter().enumerate() {
                println!("{},{}", i + 1, t);
            }
        }
        Format::Json => {
            let rendered: Option<Vec<String>> =
                list.then(|| types.iter().map(|t| t.to_text()).collect());
            println!(
                "{}",
                serde_json::json!({
                    "d": d,
                    "count": types.len(),
                    "types": rendered,
                })
            );
        }
    }
    Ok(())
}
