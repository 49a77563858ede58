//! Command-line surface for the code analytics toolkit.
//!
//! Exit codes: 0 success, 1 failed assertion or infeasibility, 2 bad
//! input or file format. `LCODE_THREADS` caps worker parallelism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use lcode::analytics::LinearCode;
use lcode::diosys::DiophantineSystem;
use lcode::extension::extension_report;
use lcode::fixtures;
use lcode::gf2::BitMatrix;
use lcode::orbits::{column_orbit_decomposition, MatrixGroup, OrbitPartition};
use lcode::search::{search, SearchConfig, SearchStatus};

#[derive(Parser)]
#[command(
    name = "lcode",
    about = "GF(2) linear code analytics, extension, and orbit-selection search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print n, k, d, max weight, and the weight enumerator of a code
    Analyze { file: PathBuf },
    /// Append zero columns and the all-one row; verify the predicted distance
    Extend {
        file: PathBuf,
        /// number of zero columns to append
        #[arg(long, default_value_t = 1)]
        pad: usize,
        /// write the extended generator in MAT format
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multiplicative order of a square matrix in GL(k,2)
    Order { file: PathBuf },
    /// Orbits of the cyclic group generated by a matrix on nonzero vectors
    Orbits { file: PathBuf },
    /// Build the orbit-selection feasibility system for a group
    System {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        dmax: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Local search for a feasible selection in a DIOSYS file
    Search {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        iters: u64,
        #[arg(long, default_value_t = 10)]
        restarts: u32,
        /// group generator MAT file; enables materializing the found code
        #[arg(long)]
        group: Option<PathBuf>,
        /// write the materialized generator in MAT format
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-derive every published value from the embedded fixtures
    VerifyPaper,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("LCODE_THREADS") {
        match threads.parse::<usize>() {
            Ok(t) if t >= 1 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build_global()
                    .ok();
            }
            _ => {
                eprintln!("LCODE_THREADS must be a positive integer, got {threads:?}");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Input and format problems become Err (exit 2); assertion and
/// feasibility failures return exit code 1 directly.
fn run(command: Command) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match command {
        Command::Analyze { file } => {
            let code = load_code(&file)?;
            let dist = code.weight_distribution()?;
            println!(
                "n={} k={} d={} dmax={}",
                code.length(),
                code.dimension(),
                code.min_distance()?,
                code.max_weight()?
            );
            println!("enumerator: {}", dist.enumerator_string());
            let total = dist.total();
            println!("codewords: {total} (2^{})", code.dimension());
            assert_eq!(total, 1u64 << code.dimension());
            print!("{}", dist.to_lines());
            Ok(ExitCode::SUCCESS)
        }
        Command::Extend { file, pad, out } => {
            let code = load_code(&file)?;
            let report = extension_report(&code, pad)?;
            println!(
                "base: [{},{},{}] max weight {}",
                code.length(),
                code.dimension(),
                code.min_distance()?,
                code.max_weight()?
            );
            println!(
                "extended: [{},{},{}] (predicted d = {}, verified d = {})",
                report.extended.length(),
                report.extended.dimension(),
                report.verified_d,
                report.predicted_d,
                report.verified_d
            );
            println!(
                "enumerator: {}",
                report.extended.weight_distribution()?.enumerator_string()
            );
            if let Some(out) = out {
                fs::write(&out, report.extended.generator().to_mat_string())?;
                println!("wrote {}", out.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Order { file } => {
            let m = load_matrix(&file)?;
            println!("order {}", m.matrix_order()?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbits { file } => {
            let m = load_matrix(&file)?;
            let group = MatrixGroup::generate_cyclic(&m)?;
            let partition = OrbitPartition::compute(&group)?;
            println!(
                "group order {} acting on GF(2)^{}",
                group.order(),
                group.dimension()
            );
            println!("{} orbits (burnside: {})", partition.orbit_count(), group.burnside_count());
            print!("{}", partition.to_lines());
            Ok(ExitCode::SUCCESS)
        }
        Command::System { file, n, d, dmax, out } => {
            let m = load_matrix(&file)?;
            let group = MatrixGroup::generate_cyclic(&m)?;
            let system = DiophantineSystem::build(&group, n, d, dmax)?;
            fs::write(&out, system.to_diosys_string())?;
            println!(
                "system: {} row orbits x {} column orbits, n={} d={} dmax={}",
                system.num_rows(),
                system.num_cols(),
                n,
                d,
                dmax.map_or("-".into(), |v| v.to_string())
            );
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            file,
            seed,
            iters,
            restarts,
            group,
            out,
        } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| format!("{}: {e}", file.display()))?;
            let mut system = DiophantineSystem::parse_diosys(&text)?;
            if let Some(group_file) = &group {
                // rebuild from the group so the found code can be materialized
                let m = load_matrix(group_file)?;
                let g = MatrixGroup::generate_cyclic(&m)?;
                let rebuilt = DiophantineSystem::build(
                    &g,
                    system.target_length(),
                    system.min_weight(),
                    system.max_weight(),
                )?;
                if rebuilt.to_diosys_string() != system.to_diosys_string() {
                    return Err("group file does not generate the loaded system".into());
                }
                system = rebuilt;
            }
            let config = SearchConfig {
                seed,
                max_iterations: iters,
                restarts,
                ..SearchConfig::default()
            };
            let result = search(&system, &config);
            println!(
                "status: {} (best cost {}, {} iterations)",
                match result.status {
                    SearchStatus::Found => "found",
                    SearchStatus::Exhausted => "exhausted",
                },
                result.best_cost,
                result.iterations_used
            );
            for (j, &mult) in result.best_selection.iter().enumerate() {
                if mult > 0 {
                    println!("{j} {mult}");
                }
            }
            if result.status == SearchStatus::Exhausted {
                return Ok(ExitCode::from(1));
            }
            if system.has_orbit_data() {
                let code = system.materialize(&result.best_selection)?;
                println!(
                    "materialized [{},{},{}] code, max weight {}",
                    code.length(),
                    code.dimension(),
                    code.min_distance()?,
                    code.max_weight()?
                );
                let mat = code.generator().to_mat_string();
                match out {
                    Some(path) => {
                        fs::write(&path, mat)?;
                        println!("wrote {}", path.display());
                    }
                    None => print!("{mat}"),
                }
            } else if out.is_some() {
                return Err(
                    "writing the generator needs --group to recover orbit members".into(),
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyPaper => verify_paper(),
    }
}

fn load_matrix(path: &Path) -> Result<BitMatrix, Box<dyn std::error::Error>> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(BitMatrix::parse_mat(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn load_code(path: &Path) -> Result<LinearCode, Box<dyn std::error::Error>> {
    Ok(LinearCode::new(load_matrix(path)?)?)
}

/// Re-derives the published values from the embedded fixtures: group
/// order 10, orbit count 3383 two ways (plus the transpose group), the
/// [47,15,16] distribution with max weight 32, and the [48,16,16]
/// extension. The column-orbit decomposition is reported informationally.
fn verify_paper() -> Result<ExitCode, Box<dyn std::error::Error>> {
    let start = Instant::now();
    let mut failures = 0u32;
    let mut check = |name: &str, ok: bool, detail: String| {
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    let m15 = fixtures::group_generator();
    let order = m15.matrix_order()?;
    check("group order", order == 10, format!("order = {order}, expected 10"));

    let group = MatrixGroup::generate_cyclic(&m15)?;
    let partition = OrbitPartition::compute(&group)?;
    let burnside = group.burnside_count();
    check(
        "orbit count (direct)",
        partition.orbit_count() == 3383,
        format!("{} orbits, expected 3383", partition.orbit_count()),
    );
    check(
        "orbit count (burnside)",
        burnside == 3383,
        format!("{burnside} orbits, expected 3383"),
    );
    let transpose = group.transpose_group()?;
    let t_count = OrbitPartition::compute(&transpose)?.orbit_count();
    check(
        "orbit count (transpose group)",
        t_count == 3383,
        format!("{t_count} orbits, expected 3383"),
    );

    let code = fixtures::fixture_code_47();
    let dist = code.weight_distribution()?;
    let mut expected = vec![0u64; 48];
    for (w, a) in fixtures::EXPECTED_DIST_47 {
        expected[w] = a;
    }
    check(
        "[47,15] weight distribution",
        dist.counts() == expected.as_slice(),
        dist.enumerator_string(),
    );
    check(
        "[47,15] parameters",
        code.min_distance()? == 16 && code.max_weight()? == 32,
        format!("d = {}, max weight = {}", code.min_distance()?, code.max_weight()?),
    );

    let report = extension_report(&code, 1)?;
    let ext_dist = report.extended.weight_distribution()?;
    let mut expected48 = vec![0u64; 49];
    for (w, a) in fixtures::EXPECTED_DIST_48 {
        expected48[w] = a;
    }
    check(
        "[48,16] extension",
        report.extended.length() == 48
            && report.extended.dimension() == 16
            && report.predicted_d == 16
            && report.verified_d == 16
            && ext_dist.counts() == expected48.as_slice(),
        format!(
            "[{},{},{}], {}",
            report.extended.length(),
            report.extended.dimension(),
            report.verified_d,
            ext_dist.enumerator_string()
        ),
    );

    // informational: how the printed generator splits into orbits
    let decomposition = column_orbit_decomposition(&fixtures::generator_47(), &partition)?;
    println!(
        "INFO column-orbit decomposition: {} orbits touched, whole orbits: {}{}",
        decomposition.multiplicity.len(),
        decomposition.whole_orbits,
        if decomposition.whole_orbits {
            ""
        } else {
            " (printed generator may use a different basis than the printed group)"
        }
    );

    println!(
        "{} in {:.2?}",
        if failures == 0 { "all checks passed" } else { "FAILED" },
        start.elapsed()
    );
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
