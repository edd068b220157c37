//! `muw`: completeness of finite word sets from the command line.
//!
//! Exit codes: 0 ok, 1 usage, 2 resource limit or internal failure,
//! 3 invalid input (including word-list parse errors).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use uncompletable::analysis::{
    decompose, reproduce, verify_witness, FamilyKind, ReproRow, StructureReport,
};
use uncompletable::automaton::build_star_trie;
use uncompletable::oracle::{uwl_max_exhaustive, uwl_max_sampled, UwlMaxResult};
use uncompletable::prelude::*;
use uncompletable::words::{family_full_minus, family_s4, family_sk, family_sk_prime};

#[derive(Parser)]
#[command(name = "muw", version, about = "Decide completeness of a finite set of words and compute its minimal uncompletable words")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Cap on distinct subset states stored during a search
    #[arg(long, global = true, default_value_t = 50_000_000)]
    max_subsets: usize,

    /// Wall-clock budget for a search, in seconds
    #[arg(long, global = true, default_value_t = 3600)]
    timeout_s: u64,
}

impl Cli {
    fn limits(&self) -> Limits {
        Limits {
            max_subsets: self.max_subsets,
            timeout: Some(Duration::from_secs(self.timeout_s)),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the set in a word-list file is complete
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute the minimal uncompletable word of the set in a file
    Muw {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also write the trie automaton in DOT format to this path
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Generate a named family as a word-list file
    Family {
        /// Which family to generate
        #[arg(long, value_enum)]
        name: FamilyName,
        /// Maximal word length parameter (required for full_minus, sk, sk_prime)
        #[arg(long)]
        k: Option<usize>,
        /// Excluded word for full_minus
        #[arg(long)]
        u: Option<String>,
        /// Alphabet for full_minus (declaration order matters)
        #[arg(long, default_value = "ab")]
        alphabet: String,
        /// Output path (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a claimed uncompletable word along two independent paths
    Verify {
        file: PathBuf,
        /// The word to verify, written in the set's alphabet
        #[arg(long)]
        witness: String,
        /// Also check that the word's length equals uwl(S)
        #[arg(long)]
        minimal: bool,
        #[arg(long)]
        json: bool,
    },
    /// Recompute the known family length records over a range of k
    Reproduce {
        /// Family to run (repeatable)
        #[arg(long = "family", value_enum, required = true)]
        families: Vec<ReproFamily>,
        #[arg(long)]
        min_k: usize,
        #[arg(long)]
        max_k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Maximize uwl over all subsets of Σ^{≤k} (or a random sample)
    Uwlmax {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        sigma: usize,
        /// Evaluate only this many random subsets (lower bound mode)
        #[arg(long)]
        samples: Option<u64>,
        /// Seed for sampling mode
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Factor a word around an unbordered anchor occurrence by occurrence
    Decompose {
        #[arg(long)]
        word: String,
        /// The unbordered anchor
        #[arg(long)]
        u: String,
        #[arg(long)]
        json: bool,
    },
    /// List the border lengths of a word
    Borders {
        word: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyName {
    #[value(name = "full_minus")]
    FullMinus,
    S4,
    Sk,
    #[value(name = "sk_prime")]
    SkPrime,
    S5,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReproFamily {
    #[value(name = "full_minus")]
    FullMinus,
    Sk,
    #[value(name = "sk_prime")]
    SkPrime,
}

impl From<ReproFamily> for FamilyKind {
    fn from(family: ReproFamily) -> Self {
        match family {
            ReproFamily::FullMinus => FamilyKind::FullMinus,
            ReproFamily::Sk => FamilyKind::Sk,
            ReproFamily::SkPrime => FamilyKind::SkPrime,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            // help and version are successful outcomes, not usage errors
            let _ = error.print();
            return match error.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code(&error))
        }
    }
}

fn exit_code(error: &Error) -> u8 {
    match error {
        Error::InvalidInput(_) | Error::NotApplicable(_) | Error::Parse { .. } => 3,
        Error::ResourceLimit { .. } | Error::Inconsistency(_) => 2,
    }
}

fn read_word_set(path: &PathBuf) -> Result<WordSet> {
    let text = fs::read_to_string(path).map_err(|error| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {error}", path.display()),
    })?;
    WordSet::parse(&text)
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, content).map_err(|error| {
            Error::invalid(format!("cannot write {}: {error}", path.display()))
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Check { file, json } => {
            let set = read_word_set(file)?;
            let automaton = build_star_trie(&set);
            let result = shortest_uncompletable(&automaton, &cli.limits())?;
            if *json {
                println!("{}", search_report(&set, automaton.node_count(), &result));
            } else {
                println!("complete: {}", result.verdict.is_complete());
            }
            Ok(())
        }
        Command::Muw { file, json, dot } => {
            let set = read_word_set(file)?;
            let automaton = build_star_trie(&set);
            if let Some(path) = dot {
                fs::write(path, automaton.to_dot()).map_err(|error| {
                    Error::invalid(format!("cannot write {}: {error}", path.display()))
                })?;
            }
            let result = shortest_uncompletable(&automaton, &cli.limits())?;
            if *json {
                println!("{}", search_report(&set, automaton.node_count(), &result));
            } else {
                println!("complete: {}", result.verdict.is_complete());
                println!("uwl: {}", result.verdict.uwl());
                match &result.verdict {
                    Verdict::Uncompletable { witness, .. } => {
                        println!("witness: {}", set.alphabet().render(witness));
                    }
                    Verdict::Complete => println!("witness: (none)"),
                }
                println!("automaton_nodes: {}", automaton.node_count());
                println!("subset_states: {}", result.stats.subsets_explored);
                println!("elapsed_ms: {}", result.stats.elapsed.as_millis());
            }
            Ok(())
        }
        Command::Family {
            name,
            k,
            u,
            alphabet,
            output,
        } => {
            let set = generate_family(*name, *k, u.as_deref(), alphabet)?;
            write_output(output, &set.to_list_string())
        }
        Command::Verify {
            file,
            witness,
            minimal,
            json,
        } => {
            let set = read_word_set(file)?;
            let word = set.alphabet().parse_word(witness)?;
            let report = verify_witness(&set, &word, *minimal, &cli.limits())?;
            if *json {
                println!(
                    "{}",
                    json!({
                        "witness": witness,
                        "length": report.length,
                        "uncompletable": report.uncompletable,
                        "minimal": report.minimal,
                        "uwl": report.uwl,
                    })
                );
            } else {
                println!("witness: {witness}");
                println!("length: {}", report.length);
                println!("uncompletable: {}", report.uncompletable);
                match report.minimal {
                    Some(minimal) => println!("minimal: {minimal}"),
                    None => println!("minimal: (not checked)"),
                }
                if let Some(value) = report.uwl {
                    println!("uwl: {value}");
                }
            }
            Ok(())
        }
        Command::Reproduce {
            families,
            min_k,
            max_k,
            json,
        } => {
            if min_k > max_k {
                return Err(Error::invalid(format!(
                    "empty range: min_k {min_k} > max_k {max_k}"
                )));
            }
            let kinds: Vec<FamilyKind> = families.iter().map(|&f| f.into()).collect();
            let rows = reproduce(&kinds, *min_k..=*max_k, &cli.limits());
            if *json {
                let rows: Vec<_> = rows.iter().map(row_report).collect();
                println!("{}", json!({ "rows": rows }));
            } else {
                for row in &rows {
                    println!("{}", render_row(row));
                }
            }
            Ok(())
        }
        Command::Uwlmax {
            k,
            sigma,
            samples,
            seed,
            json,
        } => {
            let result = match samples {
                Some(samples) => uwl_max_sampled(*k, *sigma, *samples, *seed, &cli.limits())?,
                None => uwl_max_exhaustive(*k, *sigma, &cli.limits())?,
            };
            if *json {
                println!("{}", uwlmax_report(&result));
            } else {
                let mode = if result.exhaustive {
                    "exhaustive"
                } else {
                    "sampled lower bound"
                };
                println!(
                    "UWL(k={}, sigma={}) {} {} ({mode}, {} subsets evaluated)",
                    result.k,
                    result.sigma,
                    if result.exhaustive { "=" } else { ">=" },
                    result.value,
                    result.subsets_evaluated
                );
                for maximizer in &result.maximizers {
                    let words: Vec<String> = maximizer
                        .words()
                        .iter()
                        .map(|word| maximizer.alphabet().render(word))
                        .collect();
                    println!("maximizer: {}", if words.is_empty() { "(empty set)".into() } else { words.join(" ") });
                }
            }
            Ok(())
        }
        Command::Decompose { word, u, json } => {
            let alphabet = infer_alphabet(&[word, u])?;
            let target = alphabet.parse_word(word)?;
            let anchor = alphabet.parse_word(u)?;
            let decomposition = decompose(&target, &anchor)?;
            let render = |w: &Word| alphabet.render(w);
            if *json {
                println!(
                    "{}",
                    json!({
                        "word": word,
                        "anchor": u,
                        "outer_prefix": render(&decomposition.outer_prefix),
                        "gaps": decomposition.gaps.iter().map(render).collect::<Vec<_>>(),
                        "outer_suffix": render(&decomposition.outer_suffix),
                        "occurrences": decomposition.occurrences(),
                        "max_gap": decomposition.max_gap(),
                    })
                );
            } else {
                let show = |w: &Word| if w.is_empty() { "ε".to_string() } else { render(w) };
                println!("anchor: {u}");
                println!("outer_prefix: {}", show(&decomposition.outer_prefix));
                println!(
                    "gaps: {}",
                    if decomposition.gaps.is_empty() {
                        "(none)".to_string()
                    } else {
                        decomposition.gaps.iter().map(|g| show(g)).collect::<Vec<_>>().join(" ")
                    }
                );
                println!("outer_suffix: {}", show(&decomposition.outer_suffix));
                println!("occurrences: {}", decomposition.occurrences());
                println!("max_gap: {}", decomposition.max_gap());
            }
            Ok(())
        }
        Command::Borders { word, json } => {
            let alphabet = infer_alphabet(&[word])?;
            let parsed = alphabet.parse_word(word)?;
            let lengths = borders(&parsed)?;
            if *json {
                println!(
                    "{}",
                    json!({
                        "word": word,
                        "borders": lengths,
                        "unbordered": lengths.is_empty(),
                    })
                );
            } else {
                println!("{lengths:?}");
            }
            Ok(())
        }
    }
}

/// Alphabet of every character mentioned, in ascending order.
fn infer_alphabet(texts: &[&String]) -> Result<Alphabet> {
    let mut chars: Vec<char> = texts.iter().flat_map(|text| text.chars()).collect();
    chars.sort_unstable();
    chars.dedup();
    Alphabet::new(chars)
}

fn generate_family(
    name: FamilyName,
    k: Option<usize>,
    u: Option<&str>,
    alphabet: &str,
) -> Result<WordSet> {
    let require_k = || k.ok_or_else(|| Error::invalid("this family requires --k"));
    match name {
        FamilyName::FullMinus => {
            let k = require_k()?;
            let alphabet = Alphabet::new(alphabet.chars())?;
            let u = u.ok_or_else(|| Error::invalid("full_minus requires --u"))?;
            let u = alphabet.parse_word(u)?;
            family_full_minus(&alphabet, k, &u)
        }
        FamilyName::S4 => match k {
            Some(k) if k != 4 => Err(Error::invalid("the s4 family is only defined at k = 4")),
            _ => Ok(family_s4()),
        },
        FamilyName::Sk => family_sk(require_k()?),
        FamilyName::SkPrime => family_sk_prime(require_k()?),
        FamilyName::S5 => match k {
            Some(k) if k != 5 => Err(Error::invalid("the s5 family is only defined at k = 5")),
            _ => family_sk(5),
        },
    }
}

fn search_report(set: &WordSet, nodes: usize, result: &SearchResult) -> serde_json::Value {
    let witness = match &result.verdict {
        Verdict::Uncompletable { witness, .. } => {
            serde_json::Value::String(set.alphabet().render(witness))
        }
        Verdict::Complete => serde_json::Value::Null,
    };
    json!({
        "complete": result.verdict.is_complete(),
        "uwl": result.verdict.uwl(),
        "witness": witness,
        "automaton_nodes": nodes,
        "subset_states": result.stats.subsets_explored,
        "elapsed_ms": result.stats.elapsed.as_millis() as u64,
    })
}

fn structure_report(structure: &StructureReport) -> serde_json::Value {
    json!({
        "starts_with_anchor": structure.starts_with_anchor,
        "ends_with_anchor": structure.ends_with_anchor,
        "outer_empty": structure.outer_empty,
        "gap_lengths": structure.gap_lengths,
        "min_gap": structure.min_gap,
        "max_gap": structure.max_gap,
    })
}

fn row_report(row: &ReproRow) -> serde_json::Value {
    let witness = row.witness.as_ref().map(|witness| {
        Alphabet::binary().render(witness)
    });
    json!({
        "family": row.family.name(),
        "k": row.k,
        "set_size": row.set_size,
        "uwl": row.uwl,
        "expected": row.expected,
        "match": row.matches,
        "witness": witness,
        "structure": row.structure.as_ref().map(structure_report),
        "exceeds_quadratic_bound": row.exceeds_quadratic_bound,
        "subset_states": row.stats.as_ref().map(|stats| stats.subsets_explored),
        "elapsed_ms": row.stats.as_ref().map(|stats| stats.elapsed.as_millis() as u64),
        "error": row.error,
    })
}

fn render_row(row: &ReproRow) -> String {
    let mut line = format!("family={} k={}", row.family.name(), row.k);
    if let Some(error) = &row.error {
        line.push_str(&format!(" error={error:?}"));
        return line;
    }
    if let (Some(uwl), Some(matches)) = (row.uwl, row.matches) {
        line.push_str(&format!(
            " uwl={uwl} expected={} match={}",
            row.expected,
            if matches { "yes" } else { "no" }
        ));
    }
    if let Some(structure) = &row.structure {
        line.push_str(&format!(
            " anchored={}",
            if structure.anchored() { "yes" } else { "no" }
        ));
    }
    if let Some(exceeds) = row.exceeds_quadratic_bound {
        line.push_str(&format!(" exceeds_2k2={}", if exceeds { "yes" } else { "no" }));
    }
    if let Some(stats) = &row.stats {
        line.push_str(&format!(
            " subsets={} elapsed_ms={}",
            stats.subsets_explored,
            stats.elapsed.as_millis()
        ));
    }
    line
}

fn uwlmax_report(result: &UwlMaxResult) -> serde_json::Value {
    let maximizers: Vec<Vec<String>> = result
        .maximizers
        .iter()
        .map(|set| {
            set.words()
                .iter()
                .map(|word| set.alphabet().render(word))
                .collect()
        })
        .collect();
    json!({
        "k": result.k,
        "sigma": result.sigma,
        "value": result.value,
        "exhaustive": result.exhaustive,
        "subsets_evaluated": result.subsets_evaluated,
        "maximizers": maximizers,
    })
}
