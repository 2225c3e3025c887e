//! `lpm`: batch queries on lattice path matroids.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 usage or input error,
//! 3 internal invariant breach.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lpm_core::{
    all_intervals, build_poset, bruhat_interval, bruhat_leq, column_intervals, cube_interval_check,
    decorated_permutation, dyck_to_lpm, explain_quotient, flag_diagram, flags_of_lpfm, interval_rank_histogram,
    interval_union_condition, lpfm_from_bruhat_interval, lpm_to_dyck, maximal_chains, narayana, polytope_vertices,
    rank_counts, render_diagram, row_intervals, run_all, run_suite, weak_maxima_in_interval, DyckPath,
    GroundSubset, Lpfm, Lpm, LpmError, Permutation, QuotientVerdict, SUITES,
};

#[derive(Parser)]
#[command(name = "lpm", version, about = "Lattice path matroids, quotients and flags")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Shorthand for `--format json`
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether SUB is a quotient of SUP
    Quotient { sub: String, sup: String },
    /// List the bases of an LPM, or a fundamental set with --exchange
    Bases {
        lpm: String,
        /// A basis B and an element p outside it, e.g. `--exchange 1,4,6,7 5`
        #[arg(long, num_args = 2, value_names = ["BASIS", "ELEMENT"])]
        exchange: Option<Vec<String>>,
    },
    /// Build the quotient poset of all LPMs on [n]
    Poset {
        #[arg(long)]
        n: usize,
        /// Restrict to the interval [BOTTOM, TOP]
        #[arg(long, num_args = 2, value_names = ["BOTTOM", "TOP"])]
        interval: Option<Vec<String>>,
        /// With --interval: list the weak-order maxima of this rank
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Narayana rank counts of the quotient poset, checked against the built poset
    Narayana {
        #[arg(long)]
        n: usize,
    },
    /// Flags of bases of a chain of LPMs; U_{0,n} and U_{n,n} are added when missing
    Flags {
        #[arg(required = true)]
        constituents: Vec<String>,
    },
    /// Bruhat interval [LOW, HIGH] and its LPFM, or a cube check with --cube
    Bruhat {
        low: String,
        high: Option<String>,
        /// Commuting simple transpositions applied to LOW, e.g. `--cube 1,3`
        #[arg(long, value_delimiter = ',')]
        cube: Option<Vec<usize>>,
    },
    /// Decorated permutation and row/column intervals; with --sub, the interval-union test
    Arrows {
        lpm: String,
        #[arg(long)]
        sub: Option<String>,
    },
    /// Dyck path of an LPM, or the LPM of a path with --path
    Dyck {
        lpm: Option<String>,
        #[arg(long)]
        path: Option<String>,
    },
    /// Draw the diagram of an LPM, optionally highlighting a basis
    Diagram {
        lpm: String,
        #[arg(long)]
        basis: Option<String>,
    },
    /// Run the cross-check suites up to ground size K
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long)]
        suite: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Breach(String),
}

impl From<LpmError> for Failure {
    fn from(e: LpmError) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Outcome {
    output: String,
    negative: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { output, negative: false }
    }

    fn verdict(output: String, positive: bool) -> Self {
        Self { output, negative: !positive }
    }
}

type Run = Result<Outcome, Failure>;

fn parse_lpm(s: &str) -> Result<Lpm, Failure> {
    s.parse::<Lpm>().map_err(|e| Failure::Usage(format!("{s:?}: {e}")))
}

fn parse_perm(s: &str) -> Result<Permutation, Failure> {
    s.parse::<Permutation>().map_err(|e| Failure::Usage(format!("{s:?}: {e}")))
}

fn allow(format: Format, allowed: &[Format], verb: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("`{verb}` does not support this output format")))
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn quotient(format: Format, sub: &str, sup: &str) -> Run {
    allow(format, &[Format::Text, Format::Json], "quotient")?;
    let (a, b) = (parse_lpm(sub)?, parse_lpm(sup)?);
    let verdict = explain_quotient(&a, &b);
    let positive = verdict.is_quotient();
    let out = if format == Format::Json {
        pretty(&json!({ "sub": a, "sup": b, "quotient": positive, "detail": verdict }))
    } else {
        let mut s = format!("quotient: {positive}\n");
        match &verdict {
            QuotientVerdict::Quotient { pairing } => {
                let _ = writeln!(s, "greedy pairing: {pairing}");
            }
            QuotientVerdict::GroundMismatch => s.push_str("reason: ground sets differ\n"),
            QuotientVerdict::NotContained => s.push_str("reason: U' ⊄ U or L' ⊄ L\n"),
            QuotientVerdict::BadPair { index, pair, pairing } => {
                let _ = writeln!(s, "greedy pairing: {pairing}");
                let _ = writeln!(s, "first bad pair: {pair} (position {})", index + 1);
            }
        }
        s
    };
    Ok(Outcome::verdict(out, positive))
}

fn bases(format: Format, lpm: &str, exchange: Option<&[String]>) -> Run {
    allow(format, &[Format::Text, Format::Json], "bases")?;
    let m = parse_lpm(lpm)?;
    if let Some([b, p]) = exchange {
        let b = lpm_core::parse_subset(m.n(), b)?;
        let p: usize = p.parse().map_err(|_| Failure::Usage(format!("{p:?} is not an element")))?;
        let fast = m.fundamental_set(&b, p)?;
        if fast != m.fundamental_set_oracle(&b, p)? {
            return Err(Failure::Breach(format!("fundamental set of {b} at {p} disagrees with brute force")));
        }
        let out = if format == Format::Json {
            pretty(&json!({ "lpm": m, "basis": b, "element": p, "fundamental_set": fast }))
        } else {
            format!("B_{p} = {{{fast}}}\n")
        };
        return Ok(Outcome::ok(out));
    }
    let bs = m.bases();
    let (loops, coloops) = m.loops_and_coloops();
    let out = if format == Format::Json {
        pretty(&json!({
            "lpm": m,
            "rank": m.rank(),
            "count": bs.len(),
            "bases": bs.as_slice(),
            "loops": loops,
            "coloops": coloops,
            "dual": m.dual(),
        }))
    } else {
        let mut s = format!("{} rank {} with {} bases\n", m.label(), m.rank(), bs.len());
        for b in bs.iter() {
            let _ = writeln!(s, "  {}", b.compact());
        }
        let _ = writeln!(s, "loops: {{{loops}}}  coloops: {{{coloops}}}");
        let _ = writeln!(s, "dual: {}", m.dual().label());
        s
    };
    Ok(Outcome::ok(out))
}

fn poset(format: Format, n: usize, interval: Option<&[String]>, rank: Option<usize>) -> Run {
    if n > 12 {
        return Err(Failure::Usage(format!("n = {n} is too large for the poset (max 12)")));
    }
    let p = build_poset(n);
    if let Some([bottom, top]) = interval {
        allow(format, &[Format::Text, Format::Json], "poset --interval")?;
        let (b, t) = (parse_lpm(bottom)?, parse_lpm(top)?);
        let members = p.interval(&b, &t)?;
        let chains = maximal_chains(&p, &b, &t)?;
        let hist = interval_rank_histogram(&p, &b, &t)?;
        let maxima = rank.map(|r| weak_maxima_in_interval(&p, &b, &t, r)).transpose()?;
        let out = if format == Format::Json {
            let nodes: Vec<Lpm> = members.iter().map(|&i| *p.node(i)).collect();
            pretty(&json!({
                "bottom": b,
                "top": t,
                "nodes": nodes,
                "maximal_chains": chains.to_string(),
                "rank_histogram": hist,
                "weak_maxima": maxima,
            }))
        } else {
            let mut s = format!("[{}, {}] has {} elements\n", b.label(), t.label(), members.len());
            let _ = writeln!(s, "maximal chains: {chains}");
            let _ = writeln!(s, "rank histogram: {}", join(&hist));
            if let (Some(r), Some(mx)) = (rank, &maxima) {
                let labels: Vec<String> = mx.iter().map(|m| m.label()).collect();
                let _ = writeln!(s, "weak maxima at rank {r}: {}", labels.join(", "));
            }
            s
        };
        return Ok(Outcome::ok(out));
    }
    if rank.is_some() {
        return Err(Failure::Usage("--rank needs --interval".into()));
    }
    let out = match format {
        Format::Json => pretty(&p.to_json()),
        Format::Dot => p.to_dot(),
        Format::Text => {
            let mut s = format!("P_{n}: {} LPMs, {} covers\n", p.len(), p.covers().len());
            let _ = writeln!(s, "rank counts: {}", join(&rank_counts(&p)));
            for (id, m) in p.nodes().iter().enumerate() {
                let children: Vec<String> = p.children(id).iter().map(|&c| p.node(c).label()).collect();
                let _ = writeln!(s, "{id:>5} {} covers {}", m.label(), if children.is_empty() { "-".into() } else { children.join(" ") });
            }
            s
        }
        Format::Svg => return Err(Failure::Usage("`poset` does not support svg".into())),
    };
    Ok(Outcome::ok(out))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn narayana_cmd(format: Format, n: usize) -> Run {
    allow(format, &[Format::Text, Format::Json], "narayana")?;
    if n == 0 || n > 12 {
        return Err(Failure::Usage(format!("n must lie in 1..=12, got {n}")));
    }
    let formula: Vec<u128> = (0..=n).map(|k| narayana(n + 1, n - k + 1)).collect::<Result<_, _>>()?;
    let counted: Vec<u128> = rank_counts(&build_poset(n)).into_iter().map(|c| c as u128).collect();
    if formula != counted {
        return Err(Failure::Breach(format!("rank counts {} differ from {}", join(&counted), join(&formula))));
    }
    let out = if format == Format::Json {
        let counts: Vec<u64> = counted.iter().map(|&c| c as u64).collect();
        pretty(&json!({ "n": n, "rank_counts": counts }))
    } else {
        format!("rank counts: {}\n", join(&counted))
    };
    Ok(Outcome::ok(out))
}

fn flags(format: Format, constituents: &[String]) -> Run {
    let mut chain: Vec<Lpm> = constituents.iter().map(|s| parse_lpm(s)).collect::<Result<_, _>>()?;
    let n = chain[0].n();
    if chain[0].rank() != 0 {
        chain.insert(0, Lpm::uniform(0, n)?);
    }
    if chain[chain.len() - 1].rank() != n {
        chain.push(Lpm::uniform(n, n)?);
    }
    let f = Lpfm::partial(chain)?;
    let vertices = polytope_vertices(&f);
    let diagram = flag_diagram(&f)?;
    if format == Format::Svg {
        return Ok(Outcome::ok(diagram.to_svg()?));
    }
    allow(format, &[Format::Text, Format::Json], "flags")?;
    let full = if f.is_full() { Some(flags_of_lpfm(&f)?) } else { None };
    let out = if format == Format::Json {
        pretty(&json!({
            "lpfm": f.constituents(),
            "full": f.is_full(),
            "flags": full,
            "vertices": vertices,
            "diagram": diagram,
        }))
    } else {
        let mut s = format!("{f}\n");
        if let Some(flags) = &full {
            let _ = writeln!(s, "{} flags of bases", flags.len());
            for b in flags {
                let _ = writeln!(s, "  {b}   π={} τ={}", b.gale_perm(), b.bruhat_perm());
            }
        }
        let _ = writeln!(s, "{} polytope vertices", vertices.len());
        for v in &vertices {
            let _ = writeln!(s, "  ({})", join(v));
        }
        let _ = writeln!(s, "flag diagram in Z^{} with {} points", diagram.dim, diagram.points.len());
        s.push_str(&diagram.to_ascii());
        s
    };
    Ok(Outcome::ok(out))
}

fn bruhat(format: Format, low: &str, high: Option<&str>, cube: Option<&[usize]>) -> Run {
    allow(format, &[Format::Text, Format::Json], "bruhat")?;
    let lo = parse_perm(low)?;
    if let Some(idx) = cube {
        if high.is_some() {
            return Err(Failure::Usage("--cube takes a single permutation".into()));
        }
        let good = cube_interval_check(&lo, idx)?;
        let top = idx.iter().fold(lo.clone(), |t, &i| t.swap_positions(i, i + 1));
        if !good {
            return Err(Failure::Breach(format!("cube [{lo},{top}] fails the interval test")));
        }
        let out = if format == Format::Json {
            pretty(&json!({ "low": lo, "high": top, "lpfm": true }))
        } else {
            format!("[{lo},{top}] is the flag set of an LPFM\n")
        };
        return Ok(Outcome::ok(out));
    }
    let high = high.ok_or_else(|| Failure::Usage("bruhat needs HIGH or --cube".into()))?;
    let hi = parse_perm(high)?;
    if lo.n() != hi.n() {
        return Err(Failure::Usage("permutations have different sizes".into()));
    }
    if !bruhat_leq(&lo, &hi) {
        return Err(Failure::Usage(format!("{lo} is not below {hi} in Bruhat order")));
    }
    let interval = bruhat_interval(&lo, &hi)?;
    let lpfm = lpfm_from_bruhat_interval(&lo, &hi)?;
    let out = if format == Format::Json {
        pretty(&json!({
            "low": lo,
            "high": hi,
            "interval": interval,
            "lpfm": lpfm.as_ref().map(|f| f.constituents()),
        }))
    } else {
        let mut s = format!("[{lo},{hi}] has {} elements: {}\n", interval.len(), join(&interval));
        match &lpfm {
            Some(f) => {
                let _ = writeln!(s, "LPFM: {f}");
            }
            None => s.push_str("LPFM: none\n"),
        }
        s
    };
    Ok(Outcome::verdict(out, lpfm.is_some()))
}

fn arrows(format: Format, lpm: &str, sub: Option<&str>) -> Run {
    allow(format, &[Format::Text, Format::Json], "arrows")?;
    let m = parse_lpm(lpm)?;
    let d = decorated_permutation(&m);
    if let Some(sub) = sub {
        let a = parse_lpm(sub)?;
        let union = interval_union_condition(&a, &m)?;
        if union != lpm_core::is_quotient(&a, &m) {
            return Err(Failure::Breach(format!("interval test and quotient test disagree on {a}, {m}")));
        }
        let out = if format == Format::Json {
            pretty(&json!({ "sub": a, "sup": m, "interval_union": union }))
        } else {
            let mut s = format!("interval union: {union}\n");
            for target in all_intervals(&m)? {
                let parts = lpm_core::contained_intervals(&a, &target)?;
                let names: Vec<String> = parts.iter().map(|i| i.to_string()).collect();
                let _ = writeln!(s, "  {target} ⊇ {}", if names.is_empty() { "-".into() } else { names.join(" ") });
            }
            s
        };
        return Ok(Outcome::verdict(out, union));
    }
    let free = m.is_loop_coloop_free();
    let rows = if free { Some(row_intervals(&m)?) } else { None };
    let cols = if free { Some(column_intervals(&m)?) } else { None };
    let out = if format == Format::Json {
        pretty(&json!({ "lpm": m, "decorated_permutation": d, "rows": rows, "columns": cols }))
    } else {
        let mut s = format!("decorated permutation: {d}\n");
        match (rows, cols) {
            (Some(r), Some(c)) => {
                let _ = writeln!(s, "rows: {}", r.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
                let _ = writeln!(s, "columns: {}", c.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
            }
            _ => s.push_str("intervals: undefined (loops or coloops present)\n"),
        }
        s
    };
    Ok(Outcome::ok(out))
}

fn dyck(format: Format, lpm: Option<&str>, path: Option<&str>) -> Run {
    allow(format, &[Format::Text, Format::Json], "dyck")?;
    let (m, d) = match (lpm, path) {
        (Some(s), None) => {
            let m = parse_lpm(s)?;
            (m, lpm_to_dyck(&m))
        }
        (None, Some(p)) => {
            let d: DyckPath = p.parse()?;
            (dyck_to_lpm(&d, d.n())?, d)
        }
        _ => return Err(Failure::Usage("give exactly one of LPM or --path".into())),
    };
    if dyck_to_lpm(&d, m.n()).ok() != Some(m) || d.peaks() != m.corank() + 1 {
        return Err(Failure::Breach(format!("Dyck bijection fails on {m}")));
    }
    let out = if format == Format::Json {
        pretty(&json!({ "lpm": m, "path": d.to_string(), "peaks": d.peaks(), "valleys": d.valleys() }))
    } else {
        let pts: Vec<String> = d.valleys().iter().map(|(x, y)| format!("({x},{y})")).collect();
        format!("{}\npath: {d}\npeaks: {}\nvalleys: {}\n", m.label(), d.peaks(), pts.join(" "))
    };
    Ok(Outcome::ok(out))
}

fn diagram(format: Format, lpm: &str, basis: Option<&str>) -> Run {
    let m = parse_lpm(lpm)?;
    let b: Option<GroundSubset> = basis.map(|s| lpm_core::parse_subset(m.n(), s)).transpose()?;
    let art = render_diagram(&m, b.as_ref())?;
    let out = match format {
        Format::Text => art.ascii,
        Format::Svg => art.svg,
        Format::Json => pretty(&json!({ "lpm": m, "ascii": art.ascii, "svg": art.svg })),
        Format::Dot => return Err(Failure::Usage("`diagram` does not support dot".into())),
    };
    Ok(Outcome::ok(out))
}

fn verify(format: Format, max_n: usize, suite: Option<&str>) -> Run {
    allow(format, &[Format::Text, Format::Json], "verify")?;
    if max_n > 8 {
        return Err(Failure::Usage(format!("--max-n {max_n} is too large (max 8)")));
    }
    let reports = match suite {
        Some(name) => vec![run_suite(name, max_n)
            .ok_or_else(|| Failure::Usage(format!("unknown suite {name:?}; known: {}", SUITES.join(", "))))?],
        None => run_all(max_n),
    };
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
    let out = if format == Format::Json {
        pretty(&json!({ "max_n": max_n, "suites": reports, "passed": failed.is_empty() }))
    } else {
        let mut s = String::new();
        for r in &reports {
            let status = if r.passed() { "ok" } else { "MISMATCH" };
            let _ = writeln!(s, "{:<28} n<={} {:>10} cases  {status}", r.name, r.max_n, r.cases);
            for e in &r.examples {
                let _ = writeln!(s, "    {e}");
            }
        }
        s
    };
    if failed.is_empty() {
        Ok(Outcome::ok(out))
    } else {
        print!("{out}");
        Err(Failure::Breach(format!("suites with mismatches: {}", failed.join(", "))))
    }
}

fn run(cli: Cli) -> Run {
    let format = if cli.json { Format::Json } else { cli.format };
    match &cli.command {
        Command::Quotient { sub, sup } => quotient(format, sub, sup),
        Command::Bases { lpm, exchange } => bases(format, lpm, exchange.as_deref()),
        Command::Poset { n, interval, rank } => poset(format, *n, interval.as_deref(), *rank),
        Command::Narayana { n } => narayana_cmd(format, *n),
        Command::Flags { constituents } => flags(format, constituents),
        Command::Bruhat { low, high, cube } => bruhat(format, low, high.as_deref(), cube.as_deref()),
        Command::Arrows { lpm, sub } => arrows(format, lpm, sub.as_deref()),
        Command::Dyck { lpm, path } => dyck(format, lpm.as_deref(), path.as_deref()),
        Command::Diagram { lpm, basis } => diagram(format, lpm, basis.as_deref()),
        Command::Verify { max_n, suite } => verify(format, *max_n, suite.as_deref()),
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("LPM_THREADS") else {
        return Ok(());
    };
    let threads: usize = v
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("LPM_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Breach(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if outcome.negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Breach(msg)) => {
            eprintln!("invariant breach: {msg}");
            ExitCode::from(3)
        }
    }
}
