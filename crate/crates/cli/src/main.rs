//! `dehnword`: data sets, twist words and certificates from the command line.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on usage
//! errors (bad flags, unparsable data sets or words).

use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use dehnword_core::search::{symplectic_method, GoodRule};
use dehnword_core::symplectic::lefschetz_certify;
use dehnword_core::synthesis::{run_method, synthesize_with, MethodTag, SynthesisOptions};
use dehnword_core::{polygon, tables, Budget, DataSet, TwistWord};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dehnword", version, about = "Periodic mapping classes as words in Dehn twists")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct BudgetArgs {
    /// Largest depth (multiplicity of a generator) to search.
    #[arg(long, env = "DEHNWORD_SEARCH_DEPTH", default_value_t = 1)]
    max_depth: u32,
    /// Largest power of the candidate word; defaults to the order.
    #[arg(long)]
    max_power: Option<u32>,
    /// Search timeout in seconds; 0 disables it.
    #[arg(long, env = "DEHNWORD_SEARCH_TIMEOUT", default_value_t = 60)]
    timeout: u64,
    /// Stop after this many candidates.
    #[arg(long)]
    max_candidates: Option<u64>,
    /// Read the good-permutation rule literally.
    #[arg(long)]
    literal: bool,
    /// Accept order and traces without the eigenspace signatures.
    #[arg(long)]
    traces_only: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_depth: self.max_depth,
            max_power: self.max_power,
            max_candidates: self.max_candidates,
            timeout: (self.timeout > 0).then(|| Duration::from_secs(self.timeout)),
            rule: if self.literal { GoodRule::Literal } else { GoodRule::Disjoint },
            require_signatures: !self.traces_only,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the data-set conditions.
    Validate {
        #[arg(short, long)]
        dataset: String,
    },
    /// Riemann-Hurwitz genus of a data set.
    Genus {
        #[arg(short, long)]
        dataset: String,
    },
    /// All data sets of a genus, optionally of one order.
    Enumerate {
        #[arg(short, long)]
        genus: u32,
        #[arg(short, long)]
        order: Option<u32>,
    },
    /// Rotation, Type 1 or Type 2.
    Classify {
        #[arg(short, long)]
        dataset: String,
    },
    /// Produce a certified word for a data set.
    Synthesize {
        #[arg(short, long)]
        dataset: String,
        /// Run a single method (torus, involution, rotation, chain, star,
        /// starFT, symplecticSearch).
        #[arg(short, long)]
        method: Option<String>,
        /// Skip the symplectic search fallback.
        #[arg(long)]
        no_search: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run the Lefschetz certificate on a word.
    Verify {
        #[arg(short, long)]
        word: String,
        #[arg(short, long)]
        dataset: String,
        /// Also require matching eigenspace signatures.
        #[arg(long)]
        strong: bool,
    },
    /// Exhaustive symplectic search.
    Search {
        #[arg(short, long)]
        dataset: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Polygon realization and homology matrix of an irreducible Type 1 data set.
    Polygon {
        #[arg(short, long)]
        dataset: String,
    },
    /// Re-check every row of a bundled word table.
    Tables {
        #[arg(short, long)]
        genus: u32,
        /// Check the words as printed instead of the corrected model words.
        #[arg(long)]
        printed: bool,
    },
}

/// A failed check (exit 1) or a usage problem (exit 2).
enum Failure {
    Check(Value, String),
    Usage(String),
}

type Outcome = Result<(Value, String), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn dataset(s: &str) -> Result<DataSet, Failure> {
    s.parse().map_err(usage)
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Validate { dataset: s } => {
            let d = dataset(&s)?;
            let rep = d.validate();
            let v = serde_json::to_value(&rep).map_err(usage)?;
            if rep.ok {
                Ok((v, format!("{d}: valid, genus {}", rep.genus.unwrap_or(0))))
            } else {
                let names: Vec<_> = rep.failures.iter().map(|c| c.label()).collect();
                Err(Failure::Check(v, format!("{d}: invalid ({})", names.join(", "))))
            }
        }
        Command::Genus { dataset: s } => {
            let d = dataset(&s)?;
            let g = d.genus().map_err(usage)?;
            Ok((json!({ "dataset": d, "genus": g }), g.to_string()))
        }
        Command::Enumerate { genus, order } => {
            if genus == 0 {
                return Err(Failure::Usage("genus must be positive".into()));
            }
            let all = dehnword_core::dataset::enumerate(genus, order);
            let text = all.iter().map(DataSet::to_string).collect::<Vec<_>>().join("\n");
            Ok((json!(all), text))
        }
        Command::Classify { dataset: s } => {
            let d = dataset(&s)?;
            let k = d.classify().map_err(usage)?;
            Ok((json!({ "dataset": d, "class": k }), format!("{k:?}")))
        }
        Command::Synthesize { dataset: s, method, no_search, budget } => {
            let d = dataset(&s)?;
            let opts = SynthesisOptions { search: !no_search, budget: budget.budget() };
            let res = match method {
                Some(m) => run_method(m.parse::<MethodTag>().map_err(usage)?, &d, &opts),
                None => synthesize_with(&d, &opts),
            };
            match res {
                Ok(syn) => {
                    let text = format!("{}\nmethod {}\n{}", syn.word, syn.method, summary(&syn.certificate));
                    let v = json!({
                        "dataset": syn.data_set,
                        "word": syn.word.to_string(),
                        "methodTag": syn.method,
                        "certificate": syn.certificate,
                        "plan": syn.plan,
                    });
                    Ok((v, text))
                }
                Err(e) => Err(Failure::Check(json!({ "dataset": d, "error": e.to_string() }), e.to_string())),
            }
        }
        Command::Verify { word, dataset: s, strong } => {
            let d = dataset(&s)?;
            let g = d.genus().map_err(usage)?;
            let w = TwistWord::parse(&word, g).map_err(usage)?;
            let cert = lefschetz_certify(&w, &d);
            let ok = if strong { cert.strong() } else { cert.pass };
            let v = json!({ "dataset": d, "word": w.to_string(), "pass": ok, "certificate": cert });
            let text = format!("{}\n{}", if ok { "pass" } else { "fail" }, summary(&cert));
            if ok {
                Ok((v, text))
            } else {
                Err(Failure::Check(v, text))
            }
        }
        Command::Search { dataset: s, budget } => {
            let d = dataset(&s)?;
            match symplectic_method(&d, &budget.budget()) {
                Ok(hit) => {
                    let text = format!(
                        "{}\ndepth {} power {}, {} candidates\n{}",
                        hit.word,
                        hit.stratum.depth,
                        hit.stratum.max_power,
                        hit.examined,
                        summary(&hit.certificate)
                    );
                    let v = json!({
                        "dataset": d,
                        "word": hit.word.to_string(),
                        "stratum": hit.stratum,
                        "examined": hit.examined,
                        "certificate": hit.certificate,
                    });
                    Ok((v, text))
                }
                Err(e) => Err(Failure::Check(json!({ "dataset": d, "error": e.to_string() }), e.to_string())),
            }
        }
        Command::Polygon { dataset: s } => {
            let d = dataset(&s)?;
            let rep = polygon::polygon_report(&d).map_err(usage)?;
            let rows: Vec<String> =
                rep.matrix.iter().map(|r| r.iter().map(|x| format!("{x:>3}")).collect::<String>()).collect();
            let text = format!(
                "boundary word {}\nnormal word {}\npairing {:?}\nmatrix (columns are images)\n{}",
                rep.boundary_word,
                rep.normal_word,
                rep.pairing,
                rows.join("\n")
            );
            Ok((serde_json::to_value(&rep).map_err(usage)?, text))
        }
        Command::Tables { genus, printed } => {
            let checks = tables::check_table(genus).map_err(usage)?;
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            let mut passed = 0;
            for c in &checks {
                let cert =
                    if printed { c.printed_certificate.as_ref().unwrap_or(&c.certificate) } else { &c.certificate };
                let ok = cert.strong() && c.row.order == c.row.data_set.n;
                passed += usize::from(ok);
                let word = if printed { &c.row.printed } else { c.row.model.as_ref().unwrap_or(&c.row.printed) };
                lines.push(format!("{} {} {}", if ok { "PASS" } else { "FAIL" }, c.row.data_set, word));
                rows.push(json!({
                    "dataset": c.row.data_set,
                    "word": word,
                    "algorithm": c.row.algorithm,
                    "pass": ok,
                    "printedPass": c.printed_certificate.as_ref().map(|p| p.strong()),
                    "note": c.row.note,
                }));
            }
            lines.push(format!("{passed}/{} rows pass", checks.len()));
            let v = json!({ "genus": genus, "passed": passed, "total": checks.len(), "rows": rows });
            if passed == checks.len() {
                Ok((v, lines.join("\n")))
            } else {
                Err(Failure::Check(v, lines.join("\n")))
            }
        }
    }
}

fn summary(c: &dehnword_core::CertificateReport) -> String {
    let order = match c.order.finite() {
        Some(k) => k.to_string(),
        None => "infinite".into(),
    };
    format!(
        "order {order} (expected {}), traces {}, signatures {}",
        c.expected_order,
        if c.pass { "match" } else { "differ" },
        if c.signatures_match { "match" } else { "differ" }
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_out = cli.json;
    let print = |v: &Value, text: &str| {
        if json_out {
            println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
        } else {
            println!("{text}");
        }
    };
    match run(cli.command) {
        Ok((v, text)) => {
            print(&v, &text);
            ExitCode::SUCCESS
        }
        Err(Failure::Check(v, text)) => {
            print(&v, &text);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
