// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! `oneplane`: command-line front end.
//!
//! Exit codes: 0 success, 1 a property or verdict failed, 2 usage, I/O or
//! parse error.

use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use oneplane::drawing::{parse_drawing, serialize_drawing, Drawing};
use oneplane::extension::{trace_sequence, verify_bound, SequenceOptions};
use oneplane::family::{build_hn, find_omega, size_formula};
use oneplane::maximality::{insertable_pairs, is_maximal, saturate, Policy};
use oneplane::oracle::{check_properties, enumerate_maximal, EnumOptions};
use oneplane::structure::{exceptional_edges, find_hermits, find_k4_subgraphs, find_nests};

#[derive(Parser)]
#[command(name = "oneplane", version, about = "Maximal 1-plane drawings: analysis, saturation, bounds")]
struct Cli {
    /// Report layout.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write the main output here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    /// Worker threads for the oracle.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Edge choice: `lex` or `rand:<seed>`.
    #[arg(long, global = true, default_value = "lex", value_parser = parse_policy)]
    policy: Policy,
    /// Sequence preferences used in the bound's proof.
    #[arg(long, global = true)]
    paper_proof_mode: bool,
    /// Oracle progress file.
    #[arg(long, global = true)]
    checkpoint: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sizes, hermits, nests, K4s and exceptional edges.
    Analyze { file: String },
    /// Is the drawing maximal? Lists insertable pairs otherwise.
    Maximal { file: String },
    /// Add edges until maximal; prints the result.
    Saturate { file: String },
    /// K4-extension sequence with every audited rule.
    Sequence { file: String },
    /// Certificate for e >= ceil(7n/3) - 3.
    VerifyBound { file: String },
    /// The extremal drawing H_n, or a table over a range.
    Family {
        n: Option<usize>,
        /// Inclusive range such as `5..50`.
        #[arg(long)]
        table: Option<String>,
    },
    /// Exhaustive enumeration.
    Oracle {
        #[command(subcommand)]
        what: OracleCmd,
    },
    /// Property battery over the fixture corpus.
    Selftest {
        /// Fixture directory; defaults to $ONEPLANE_FIXTURES or the bundled set.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Least size of a maximal drawing of order n.
    M {
        n: usize,
        /// Allow order 7.
        #[arg(long)]
        long_run: bool,
        /// Export the drawings as 1PL files plus index.tsv.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

fn parse_policy(s: &str) -> Result<Policy, String> {
    s.parse()
}

/// Fatal errors; all map to exit code 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Fatal {
        Fatal(e.to_string())
    }
}

/// Ordered report lines. Fields render `key: value` (text) or
/// `key=value` (records); items repeat a key, `key value` in text.
#[derive(Default)]
struct Report {
    lines: Vec<(String, String, bool)>,
}

impl Report {
    fn field(&mut self, k: &str, v: impl ToString) {
        self.lines.push((k.to_string(), v.to_string(), false));
    }

    fn item(&mut self, k: &str, v: impl ToString) {
        self.lines.push((k.to_string(), v.to_string(), true));
    }

    fn render(&self, f: Format) -> String {
        let mut out = String::new();
        for (k, v, item) in &self.lines {
            let line = match (f, item) {
                (Format::Records, _) => format!("{k}={v}"),
                (Format::Text, false) => format!("{k}: {v}"),
                (Format::Text, true) => format!("{k} {v}"),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

fn fixture_dir() -> PathBuf {
    std::env::var_os("ONEPLANE_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures")))
}

/// `H_<n>` names a family member when no such file exists.
fn family_name(name: &str) -> Option<usize> {
    let stem = name.strip_suffix(".1pl").unwrap_or(name);
    stem.strip_prefix("H_").and_then(|n| n.parse().ok())
}

/// Read a drawing: `-` is stdin; a missing path is retried in the
/// fixture directory, then as a family name.
fn load(name: &str) -> Result<Drawing, Fatal> {
    let text = if name == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else if Path::new(name).exists() {
        std::fs::read_to_string(name).map_err(|e| Fatal(format!("{name}: {e}")))?
    } else if let Some(path) = [name.to_string(), format!("{name}.1pl")]
        .iter()
        .map(|f| fixture_dir().join(f))
        .find(|p| p.exists())
    {
        std::fs::read_to_string(path)?
    } else if let Some(n) = family_name(name) {
        return build_hn(n).map_err(|e| Fatal(format!("{name}: {e}")));
    } else {
        return Err(Fatal(format!("{name}: no such file")));
    };
    parse_drawing(&text).map_err(|e| Fatal(format!("{name}: {e}")))
}

fn ids(d: &Drawing, vs: impl IntoIterator<Item = usize>) -> String {
    let v: Vec<&str> = vs.into_iter().map(|v| d.vertex_id(v)).collect();
    if v.is_empty() {
        "-".into()
    } else {
        v.join(",")
    }
}

fn edge_ids(d: &Drawing, es: impl IntoIterator<Item = usize>) -> String {
    let v: Vec<&str> = es.into_iter().map(|e| d.edge(e).id.as_str()).collect();
    if v.is_empty() {
        "-".into()
    } else {
        v.join(",")
    }
}

/// Primary output and exit code.
type Outcome = Result<(String, u8), Fatal>;

fn analyze(cli: &Cli, file: &str) -> Outcome {
    let d = load(file)?;
    let (clean, crossing) = d.classify_edges();
    let mut r = Report::default();
    r.field("n", d.n());
    r.field("e", d.m());
    r.field("crossings", d.crossing_count());
    r.field("clean_edges", clean.len());
    r.field("crossing_edges", crossing.len());
    r.field("faces", d.faces().len());
    r.field("maximal", is_maximal(&d));
    r.field("hermits", ids(&d, find_hermits(&d).iter().map(|h| h.vertex)));
    let nests = find_nests(&d);
    r.field("nests", nests.len());
    for nest in &nests {
        let line = nest.describe(&d);
        r.item("nest", line.strip_prefix("nest ").unwrap_or(&line));
    }
    r.field("k4", find_k4_subgraphs(&d).len());
    r.field("exceptional_edges", edge_ids(&d, exceptional_edges(&d)));
    Ok((r.render(cli.format), 0))
}

fn maximal(cli: &Cli, file: &str) -> Outcome {
    let d = load(file)?;
    let ws = insertable_pairs(&d);
    let mut r = Report::default();
    r.field("maximal", ws.is_empty());
    r.field("insertable", ws.len());
    for w in &ws {
        r.item("witness", w.describe(&d));
    }
    Ok((r.render(cli.format), u8::from(!ws.is_empty())))
}

fn saturate_cmd(cli: &Cli, file: &str) -> Outcome {
    let d = load(file)?;
    let s = saturate(&d, &cli.policy);
    if cli.output.is_none() {
        return Ok((serialize_drawing(&s), 0));
    }
    std::fs::write(cli.output.as_ref().unwrap(), serialize_drawing(&s))?;
    let mut r = Report::default();
    r.field("n", s.n());
    r.field("e", s.m());
    r.field("added", s.m() - d.m());
    r.field("crossings", s.crossing_count());
    print!("{}", r.render(cli.format));
    Ok((String::new(), 0))
}

fn sequence(cli: &Cli, file: &str) -> Outcome {
    let d = load(file)?;
    let opts = SequenceOptions {
        policy: cli.policy.clone(),
        paper_proof_mode: cli.paper_proof_mode,
        ..Default::default()
    };
    let seq = match trace_sequence(&d, &opts) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok((String::new(), 1));
        }
    };
    let mut r = Report::default();
    r.field("n", d.n());
    r.field("e", d.m());
    r.field("base", ids(&d, seq.base));
    r.field("steps", seq.len());
    for st in &seq.steps {
        let nest_star: Vec<String> = st.nest_star.iter().map(|k| format!("{{{},{}}}", k.0, k.1)).collect();
        r.item(
            "step",
            format!(
                "{} {} added={} delta_e={} nest_star={} slack3={} candidates={}",
                st.index,
                st.link.describe(&d),
                ids(&d, st.added.iter().copied()),
                st.delta_e,
                if nest_star.is_empty() { "-".into() } else { nest_star.join(",") },
                st.slack3,
                st.candidates
            ),
        );
    }
    r.field("violations", seq.violations.len());
    for v in &seq.violations {
        r.item("violation", v);
    }
    Ok((r.render(cli.format), u8::from(!seq.violations.is_empty())))
}

fn verify(cli: &Cli, file: &str) -> Outcome {
    let d = load(file)?;
    let cert = match verify_bound(&d) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok((String::new(), 1));
        }
    };
    let code = u8::from(!cert.verdict);
    let out = match cli.format {
        Format::Text => cert.render(),
        Format::Records => {
            let mut r = Report::default();
            r.field("n", cert.n);
            r.field("e", cert.e);
            r.field("bound", cert.bound);
            r.field("slack", cert.slack);
            r.field("verdict", cert.verdict);
            for line in cert.render().lines().skip(1) {
                let depth = (line.len() - line.trim_start().len()) / 2;
                r.item("node", format!("depth={depth} {}", line.trim_start()));
            }
            r.render(cli.format)
        }
    };
    Ok((out, code))
}

/// `a..b`, inclusive.
fn parse_range(s: &str) -> Result<(usize, usize), Fatal> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| Fatal(format!("range `{s}`: expected a..b")))?;
    let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
    if a > b {
        return Err(Fatal(format!("range `{s}` is empty")));
    }
    Ok((a, b))
}

fn family(cli: &Cli, n: Option<usize>, table: Option<&str>) -> Outcome {
    match (n, table) {
        (Some(n), None) => {
            let d = build_hn(n)?;
            Ok((serialize_drawing(&d), 0))
        }
        (None, Some(range)) => {
            let (a, b) = parse_range(range)?;
            let mut r = Report::default();
            let mut bad = false;
            for n in a..=b {
                let d = build_hn(n)?;
                let ok = d.n() == n && d.m() == size_formula(n) && is_maximal(&d);
                bad |= !ok;
                r.item(
                    "row",
                    format!(
                        "n={n} e={} formula={} maximal={} omega={} ok={ok}",
                        d.m(),
                        size_formula(n),
                        is_maximal(&d),
                        find_omega(&d).len()
                    ),
                );
            }
            Ok((r.render(cli.format), u8::from(bad)))
        }
        _ => Err(Fatal("family: give either <n> or --table a..b".into())),
    }
}

fn oracle_m(cli: &Cli, n: usize, long_run: bool, export: Option<&Path>) -> Outcome {
    let opts = EnumOptions {
        long_run,
        jobs: cli.jobs,
        checkpoint: cli.checkpoint.clone(),
        ..Default::default()
    };
    let en = enumerate_maximal(n, &opts)?;
    if let Some(dir) = export {
        en.export(dir)?;
    }
    let m = en.min_edges().expect("maximal drawings exist");
    let mut r = Report::default();
    if cli.format == Format::Records {
        r.field("n", n);
        r.field("m", m);
    }
    r.field("drawings", en.drawings.len());
    r.field("graph_classes", en.graph_classes());
    r.field("graph_classes_at_minimum", en.graph_classes_with(m));
    r.field("graphs_searched", en.graphs_searched);
    for (e, k, g) in en.by_edges() {
        r.item("edges", format!("e={e} drawings={k} graphs={g}"));
    }
    let head = match cli.format {
        Format::Text => format!("m({n}) = {m}\n"),
        Format::Records => String::new(),
    };
    Ok((head + &r.render(cli.format), 0))
}

fn selftest(cli: &Cli, dir: Option<&Path>) -> Outcome {
    let dir = dir.map(Path::to_path_buf).unwrap_or_else(fixture_dir);
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| Fatal(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "1pl"))
        .collect();
    files.sort();
    let mut r = Report::default();
    let (mut checked, mut failed) = (0, 0);
    for path in &files {
        let name = path.file_stem().unwrap().to_string_lossy().to_string();
        let d = parse_drawing(&std::fs::read_to_string(path)?)
            .map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
        if d.n() < 4 || !is_maximal(&d) {
            r.item("fixture", format!("{name} skipped (not maximal)"));
            continue;
        }
        checked += 1;
        let fails = check_properties(&d);
        if fails.is_empty() {
            r.item("fixture", format!("{name} ok"));
        } else {
            failed += 1;
            for f in fails {
                r.item("fixture", format!("{name} FAIL {f}"));
            }
        }
    }
    r.field("checked", checked);
    r.field("failed", failed);
    Ok((r.render(cli.format), u8::from(failed > 0)))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.cmd {
        Cmd::Analyze { file } => analyze(cli, file),
        Cmd::Maximal { file } => maximal(cli, file),
        Cmd::Saturate { file } => saturate_cmd(cli, file),
        Cmd::Sequence { file } => sequence(cli, file),
        Cmd::VerifyBound { file } => verify(cli, file),
        Cmd::Family { n, table } => family(cli, *n, table.as_deref()),
        Cmd::Oracle {
            what: OracleCmd::M { n, long_run, export },
        } => oracle_m(cli, *n, *long_run, export.as_deref()),
        Cmd::Selftest { fixtures } => selftest(cli, fixtures.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            let written = match (&cli.output, &cli.cmd) {
                // saturate writes its drawing itself.
                (Some(_), Cmd::Saturate { .. }) | (None, _) => {
                    print!("{out}");
                    Ok(())
                }
                (Some(path), _) => std::fs::write(path, &out),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
