//! Command-line front end: generation, verification, star decomposition,
//! bound audits, partition families and oracle comparison, with
//! deterministic byte-identical output for identical arguments.
//!
//! Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage or
//! input error, 3 resource cap exceeded.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{audit, compute_flags};
use crate::constructions::{ConstructionSpec, DesignSpec};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexId};
use crate::partition::{build_partition, verify_partition};
use crate::search::{
    find_connecting_chain, find_semicycle, is_edge_maximal, is_edge_minimal, is_hypertree,
    max_chain_length_semicycle_free, oracle_enumerate, random_hypergraph, OracleKind, Verdict,
    Witness,
};
use crate::stars::check_star_equation;

#[derive(Parser)]
#[command(
    name = "khg",
    version,
    about = "Construct, verify, decompose and audit k-uniform hypertrees"
)]
struct Cli {
    /// Worker threads for pair and edge sweeps (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a hypergraph family and emit it in .khg format
    Generate {
        /// labelled-partition | ordered-extension | four-uniform-doubling |
        /// edge-minimal-grid | edge-maximal-matching | single-edge | gluing
        family: String,
        /// Vertex-count parameter (families that take n)
        #[arg(long)]
        n: Option<u32>,
        /// Uniformity parameter (families that take k)
        #[arg(long)]
        k: Option<usize>,
        /// Size parameter m (grid width, doubling exponent)
        #[arg(long)]
        m: Option<u32>,
        /// Source design for ordered-extension: matching | doubling-sts |
        /// steiner-triples
        #[arg(long)]
        design: Option<String>,
        /// Steiner system order for gluing
        #[arg(long)]
        steiner_n: Option<u32>,
        /// Output path; the .khg text goes to stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check hypertree predicates of a .khg file, printing witnesses
    Verify {
        input: PathBuf,
        /// Chain-connected and semicycle-free
        #[arg(long)]
        hypertree: bool,
        /// Hypertree with no chain longer than L edges
        #[arg(long, value_name = "L")]
        l_hypertree: Option<usize>,
        /// Deleting any edge disconnects some pair
        #[arg(long)]
        edge_minimal: bool,
        /// Adding any missing edge creates a semicycle
        #[arg(long)]
        edge_maximal: bool,
        /// Replay witness lines from a file against the input
        #[arg(long, value_name = "FILE")]
        replay: Option<PathBuf>,
    },
    /// Star decomposition and the exact star-count identities
    Stars { input: PathBuf },
    /// Evaluate every applicable edge-count bound against the instance
    Bounds { input: PathBuf },
    /// Build and verify the recursive subset partition for (n, k)
    Partition {
        n: u32,
        k: usize,
        /// Write the family in khgpart format
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare optimized searches against brute-force enumeration
    OracleCompare {
        /// Instance to compare; omitted = seeded random corpus
        input: Option<PathBuf>,
        /// Number of random instances (default 200)
        #[arg(long)]
        random: Option<u32>,
        /// Corpus seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest vertex count in the corpus
        #[arg(long, default_value_t = 7)]
        max_n: u32,
        /// Largest edge count in the corpus
        #[arg(long, default_value_t = 10)]
        max_edges: usize,
        /// Abort enumeration beyond this many visited prefixes
        #[arg(long)]
        max_oracle_nodes: Option<u64>,
    },
}

/// Runs the command line and returns the process exit code. All report
/// output goes to `out`.
pub fn run<I, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = String>,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    if cli.jobs > 0 {
        // ignored if a pool already exists (repeated in-process runs)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    match dispatch(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            match e {
                Error::ResourceCap(_) => 3,
                _ => 2,
            }
        }
    }
}

fn dispatch<W: Write>(command: Command, out: &mut W) -> Result<bool> {
    match command {
        Command::Generate {
            family,
            n,
            k,
            m,
            design,
            steiner_n,
            output,
        } => cmd_generate(&family, n, k, m, design.as_deref(), steiner_n, output, out),
        Command::Verify {
            input,
            hypertree,
            l_hypertree,
            edge_minimal,
            edge_maximal,
            replay,
        } => cmd_verify(
            &input,
            hypertree,
            l_hypertree,
            edge_minimal,
            edge_maximal,
            replay,
            out,
        ),
        Command::Stars { input } => cmd_stars(&input, out),
        Command::Bounds { input } => cmd_bounds(&input, out),
        Command::Partition { n, k, output } => cmd_partition(n, k, output, out),
        Command::OracleCompare {
            input,
            random,
            seed,
            max_n,
            max_edges,
            max_oracle_nodes,
        } => cmd_oracle_compare(input, random, seed, max_n, max_edges, max_oracle_nodes, out),
    }
}

fn parse_family(
    family: &str,
    n: Option<u32>,
    k: Option<usize>,
    m: Option<u32>,
    design: Option<&str>,
    steiner_n: Option<u32>,
) -> Result<ConstructionSpec> {
    let need_n = || n.ok_or_else(|| Error::BadParameter(format!("{family} needs --n")));
    let need_k = || k.ok_or_else(|| Error::BadParameter(format!("{family} needs --k")));
    let need_m = || m.ok_or_else(|| Error::BadParameter(format!("{family} needs --m")));
    match family {
        "labelled-partition" => Ok(ConstructionSpec::LabelledPartition {
            n: need_n()?,
            k: need_k()?,
        }),
        "ordered-extension" => {
            let design = match design {
                Some("matching") => DesignSpec::Matching { n: need_n()? },
                Some("doubling-sts") => DesignSpec::DoublingSts { m: need_m()? },
                Some("steiner-triples") => DesignSpec::SteinerTriples { n: need_n()? },
                Some(other) => {
                    return Err(Error::BadParameter(format!("unknown design {other:?}")))
                }
                None => {
                    return Err(Error::BadParameter(
                        "ordered-extension needs --design".into(),
                    ))
                }
            };
            Ok(ConstructionSpec::OrderedExtension { design })
        }
        "four-uniform-doubling" => Ok(ConstructionSpec::FourUniformDoubling { m: need_m()? }),
        "edge-minimal-grid" => Ok(ConstructionSpec::EdgeMinimalGrid {
            m: need_m()?,
            k: need_k()?,
        }),
        "edge-maximal-matching" => Ok(ConstructionSpec::EdgeMaximalMatching { n: need_n()? }),
        "single-edge" => Ok(ConstructionSpec::SingleEdge { k: need_k()? }),
        "gluing" => {
            let steiner_n = steiner_n
                .ok_or_else(|| Error::BadParameter("gluing needs --steiner-n".into()))?;
            Ok(ConstructionSpec::Gluing {
                base: Box::new(ConstructionSpec::SingleEdge { k: k.unwrap_or(3) }),
                steiner_n,
            })
        }
        other => Err(Error::BadParameter(format!("unknown family {other:?}"))),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate<W: Write>(
    family: &str,
    n: Option<u32>,
    k: Option<usize>,
    m: Option<u32>,
    design: Option<&str>,
    steiner_n: Option<u32>,
    output: Option<PathBuf>,
    out: &mut W,
) -> Result<bool> {
    let spec = parse_family(family, n, k, m, design, steiner_n)?;
    let h = spec.build()?;
    let predicted = spec.predicted_edge_count()?;
    assert_eq!(
        h.edge_count() as u64,
        predicted,
        "construction must match its closed-form edge count"
    );
    match output {
        Some(path) => {
            fs::write(&path, h.to_khg())?;
            writeln!(
                out,
                "wrote {}: k={} n={} m={} (predicted {})",
                path.display(),
                h.k(),
                h.n(),
                h.edge_count(),
                predicted
            )?;
        }
        None => {
            write!(out, "{}", h.to_khg())?;
        }
    }
    Ok(true)
}

fn load(input: &PathBuf) -> Result<Hypergraph> {
    Hypergraph::from_khg(&fs::read_to_string(input)?)
}

fn report_verdict<W: Write>(out: &mut W, label: &str, verdict: &Verdict) -> Result<()> {
    writeln!(
        out,
        "{label}: {}",
        if verdict.holds { "PASS" } else { "FAIL" }
    )?;
    if let Some(w) = &verdict.witness {
        writeln!(out, "{w}")?;
    }
    Ok(())
}

fn cmd_verify<W: Write>(
    input: &PathBuf,
    hypertree: bool,
    l_hypertree: Option<usize>,
    edge_minimal: bool,
    edge_maximal: bool,
    replay: Option<PathBuf>,
    out: &mut W,
) -> Result<bool> {
    let h = load(input)?;
    writeln!(
        out,
        "{}: k={} n={} m={}",
        input.display(),
        h.k(),
        h.n(),
        h.edge_count()
    )?;
    let mut all_ok = true;

    let needs_hypertree =
        hypertree || l_hypertree.is_some() || edge_minimal || edge_maximal;
    let hypertree_verdict = if needs_hypertree {
        Some(is_hypertree(&h))
    } else {
        None
    };

    if hypertree {
        let v = hypertree_verdict.as_ref().expect("computed above");
        report_verdict(out, "hypertree", v)?;
        all_ok &= v.holds;
    }

    if let Some(l) = l_hypertree {
        let v = hypertree_verdict.as_ref().expect("computed above");
        if !v.holds {
            writeln!(out, "l-hypertree({l}): FAIL (not a hypertree)")?;
            if let Some(w) = &v.witness {
                writeln!(out, "{w}")?;
            }
            all_ok = false;
        } else {
            let longest = max_chain_length_semicycle_free(&h, Some(l));
            if longest <= l {
                writeln!(out, "l-hypertree({l}): PASS (longest chain {longest})")?;
            } else {
                writeln!(out, "l-hypertree({l}): FAIL (a chain of {longest} edges exists)")?;
                all_ok = false;
            }
        }
    }

    let extremal = |label: &str,
                    check: fn(&Hypergraph) -> Result<Verdict>,
                    out: &mut W|
     -> Result<bool> {
        match check(&h) {
            Ok(v) => {
                report_verdict(out, label, &v)?;
                Ok(v.holds)
            }
            Err(Error::NotAHypertree) => {
                writeln!(out, "{label}: FAIL (not a hypertree)")?;
                Ok(false)
            }
            Err(e) => Err(e),
        }
    };
    if edge_minimal {
        all_ok &= extremal("edge-minimal", is_edge_minimal, out)?;
    }
    if edge_maximal {
        all_ok &= extremal("edge-maximal", is_edge_maximal, out)?;
    }

    if let Some(path) = replay {
        let text = fs::read_to_string(&path)?;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let witness: Witness = line.parse()?;
            let ok = witness.replay(&h);
            writeln!(out, "replay {line}: {}", if ok { "PASS" } else { "FAIL" })?;
            all_ok &= ok;
        }
    }

    Ok(all_ok)
}

fn cmd_stars<W: Write>(input: &PathBuf, out: &mut W) -> Result<bool> {
    let h = load(input)?;
    match check_star_equation(&h) {
        Ok(ledger) => {
            write!(out, "{ledger}")?;
            Ok(ledger.holds())
        }
        Err(Error::Not2Hypertree) => {
            writeln!(out, "star decomposition needs a 2-hypertree input")?;
            Ok(false)
        }
        Err(e) => Err(e),
    }
}

fn cmd_bounds<W: Write>(input: &PathBuf, out: &mut W) -> Result<bool> {
    let h = load(input)?;
    let flags = compute_flags(&h);
    let report = audit(&h, flags, &input.display().to_string());
    write!(out, "{report}")?;
    write!(out, "{}", report.machine_lines())?;
    Ok(report.passed())
}

fn cmd_partition<W: Write>(
    n: u32,
    k: usize,
    output: Option<PathBuf>,
    out: &mut W,
) -> Result<bool> {
    let family = build_partition(n, k)?;
    let report = verify_partition(&family, k)?;
    writeln!(
        out,
        "partition of the {}-subsets of [{n}]: {} classes",
        k - 1,
        family.class_count()
    )?;
    write!(out, "{report}")?;
    if let Some(path) = output {
        fs::write(&path, family.to_khgpart())?;
        writeln!(out, "wrote {}", path.display())?;
    }
    Ok(report.passed())
}

fn cmd_oracle_compare<W: Write>(
    input: Option<PathBuf>,
    random: Option<u32>,
    seed: u64,
    max_n: u32,
    max_edges: usize,
    max_oracle_nodes: Option<u64>,
    out: &mut W,
) -> Result<bool> {
    if let Some(path) = input {
        let h = load(&path)?;
        let outcome = compare_instance(&h, max_oracle_nodes)?;
        describe_comparison(out, &path.display().to_string(), &h, &outcome)?;
        return Ok(outcome.agrees());
    }
    let count = random.unwrap_or(200);
    writeln!(out, "seed {seed}")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0u32;
    for index in 0..count {
        let h = random_hypergraph(&mut rng, 3, 4, max_n.max(4), max_edges.max(1));
        let outcome = compare_instance(&h, max_oracle_nodes)?;
        if !outcome.agrees() {
            mismatches += 1;
            describe_comparison(out, &format!("instance {index}"), &h, &outcome)?;
        }
    }
    writeln!(out, "{count} instances compared, {mismatches} mismatches")?;
    Ok(mismatches == 0)
}

struct ComparisonOutcome {
    optimized_semicycle: bool,
    oracle_semicycle: bool,
    pairs: usize,
    pair_mismatch: Option<(VertexId, VertexId, bool, bool)>,
}

impl ComparisonOutcome {
    fn agrees(&self) -> bool {
        self.optimized_semicycle == self.oracle_semicycle && self.pair_mismatch.is_none()
    }
}

fn compare_instance(h: &Hypergraph, node_cap: Option<u64>) -> Result<ComparisonOutcome> {
    let optimized_semicycle = find_semicycle(h, None).is_some();
    let oracle_semicycle =
        !oracle_enumerate(h, OracleKind::Semicycles, h.n() as usize, node_cap)?.is_empty();
    let chains = oracle_enumerate(h, OracleKind::Chains, h.edge_count(), node_cap)?;
    let mut pairs = 0;
    let mut pair_mismatch = None;
    'pairs: for a in 1..=h.n() {
        for b in (a + 1)..=h.n() {
            let (u, v) = (VertexId::new(a), VertexId::new(b));
            pairs += 1;
            let optimized = find_connecting_chain(h, u, v, None)?.is_some();
            let oracle = chains.iter().any(|c| c.contains(u) && c.contains(v));
            if optimized != oracle {
                pair_mismatch = Some((u, v, optimized, oracle));
                break 'pairs;
            }
        }
    }
    Ok(ComparisonOutcome {
        optimized_semicycle,
        oracle_semicycle,
        pairs,
        pair_mismatch,
    })
}

fn describe_comparison<W: Write>(
    out: &mut W,
    label: &str,
    h: &Hypergraph,
    outcome: &ComparisonOutcome,
) -> Result<()> {
    let semicycle = if outcome.optimized_semicycle == outcome.oracle_semicycle {
        format!(
            "agree ({})",
            if outcome.oracle_semicycle {
                "present"
            } else {
                "absent"
            }
        )
    } else {
        format!(
            "MISMATCH (optimized {}, oracle {})",
            outcome.optimized_semicycle, outcome.oracle_semicycle
        )
    };
    let pairs = match &outcome.pair_mismatch {
        None => format!("{}/{} agree", outcome.pairs, outcome.pairs),
        Some((u, v, optimized, oracle)) => format!(
            "MISMATCH at ({u},{v}): optimized {optimized}, oracle {oracle}"
        ),
    };
    writeln!(
        out,
        "{label}: k={} n={} m={} semicycle {semicycle}, pairs {pairs}",
        h.k(),
        h.n(),
        h.edge_count()
    )?;
    if !outcome.agrees() {
        write!(out, "{}", h.to_khg())?;
    }
    Ok(())
}
