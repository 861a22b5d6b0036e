//! Thin command-line front end. All logic lives in the library; this module
//! parses arguments, loads fixtures, dispatches, and formats deterministic
//! reports.
//!
//! Exit codes: `0` success or pass, `1` mathematical negative (a violation,
//! rejection or counterexample was found and printed), `2` usage or input
//! errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rand::SeedableRng;

use crate::classify::{classify, TypeWitness};
use crate::fixture;
use crate::order::{
    construct_violation, find_resilient_pair, is_w_order_on_ball, order_distance, Decision,
    ViolationError, WOrderOutcome,
};
use crate::pingpong::{verify_certificate, word_image, VerifyOutcome, WordImageReport};
use crate::rat::fmt_rat;
use crate::witness::no_law_witness;
use crate::word::{random_mixed_sign_word, ReducedWord};

#[derive(Parser, Debug)]
#[command(name = "ordline", version, about = "Exact computations with groups acting on the line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Freely reduce a word.
    Reduce {
        #[arg(long)]
        word: String,
    },
    /// Build a pair of maps violating the verbal property of a word.
    Violate {
        #[arg(long)]
        word: Option<String>,
        /// Run a random corpus of this many mixed-sign words instead.
        #[arg(long)]
        corpus: Option<usize>,
        /// Seed for the corpus generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the witness action as an order fixture.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every hypothesis of a ping-pong certificate file.
    VerifyCert { file: PathBuf },
    /// Replay the containment chain of a word over a certificate.
    WordImage {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Generate an intertwined pair and its verified certificate.
    GenWitness {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Produce a complete no-law witness for a word.
    NoLaw {
        #[arg(long)]
        word: String,
        /// Write the certificate to a file as well.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a marked action into types I/II/III.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        depth: u32,
    },
    /// Operations on dynamically realized left-orders.
    Order {
        #[command(subcommand)]
        command: OrderCommand,
    },
}

#[derive(Subcommand, Debug)]
enum OrderCommand {
    /// Compare two words in the order of a fixture.
    Compare {
        file: PathBuf,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Search a ball for a counterexample to the W-order property.
    CheckW {
        file: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 3)]
        radius: u32,
    },
    /// Distance between two orders at bounded resolution.
    Dist {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, default_value_t = 5)]
        radius: u32,
    },
    /// Exhaustive resilient-pair search.
    Resilient {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        radius: u32,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
    },
}

/// Runs the CLI on the given arguments, returning the full report and the
/// exit code. Pure up to file reads/writes, so reports are byte-reproducible.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (e.to_string(), code);
        }
    };
    match dispatch(cli.command) {
        Ok((report, code)) => (report, code),
        Err(msg) => (format!("error: {msg}\n"), 2),
    }
}

fn parse_word(s: &str) -> Result<ReducedWord, String> {
    ReducedWord::parse(s).map_err(|e| format!("cannot parse word {s:?}: {e}"))
}

fn read_json(path: &PathBuf) -> Result<serde_json::Value, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: invalid JSON: {e}", path.display()))
}

fn write_or_report(out: &Option<PathBuf>, value: &serde_json::Value, report: &mut String) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            let _ = writeln!(report, "wrote {}", path.display());
        }
        None => report.push_str(&text),
    }
    Ok(())
}

fn dispatch(cmd: Command) -> Result<(String, i32), String> {
    let mut report = String::new();
    match cmd {
        Command::Reduce { word } => {
            let w = parse_word(&word)?;
            let _ = writeln!(report, "{w}");
            Ok((report, 0))
        }
        Command::Violate { word, corpus, seed, out } => {
            if let Some(n) = corpus {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let mut checked = 0usize;
                while checked < n {
                    let w = random_mixed_sign_word(&mut rng, 16);
                    let witness = construct_violation(&w)
                        .map_err(|e| format!("corpus word {w}: {e}"))?;
                    let _ = writeln!(
                        report,
                        "{w}: f(0) = {} > 0, g(0) = {} > 0, W(f,g)(0) = {} < 0",
                        fmt_rat(&witness.f_at_origin),
                        fmt_rat(&witness.g_at_origin),
                        fmt_rat(&witness.word_at_origin)
                    );
                    checked += 1;
                }
                let _ = writeln!(report, "corpus of {n} words verified (seed {seed})");
                return Ok((report, 0));
            }
            let word = word.ok_or("either --word or --corpus is required")?;
            let w = parse_word(&word)?;
            match construct_violation(&w) {
                Ok(witness) => {
                    let _ = writeln!(report, "word: {w}");
                    let _ = writeln!(report, "f(0) = {} > 0", fmt_rat(&witness.f_at_origin));
                    let _ = writeln!(report, "g(0) = {} > 0", fmt_rat(&witness.g_at_origin));
                    let _ = writeln!(
                        report,
                        "W(f,g)(0) = {} < 0",
                        fmt_rat(&witness.word_at_origin)
                    );
                    let value = fixture::order_to_json(&witness.order());
                    write_or_report(&out, &value, &mut report)?;
                    Ok((report, 0))
                }
                Err(ViolationError::AllPositive) => {
                    let _ = writeln!(
                        report,
                        "no violating pair exists: every exponent of {w} is positive, and a \
                         product of positive elements is positive in any left-order"
                    );
                    Ok((report, 1))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::VerifyCert { file } => {
            let cert = fixture::certificate_from_json(&read_json(&file)?)
                .map_err(|e| format!("{}: {e}", file.display()))?;
            match verify_certificate(&cert) {
                VerifyOutcome::Ok => {
                    let _ = writeln!(report, "ok");
                    Ok((report, 0))
                }
                VerifyOutcome::Violation(v) => {
                    let _ = writeln!(report, "rejected: {v}");
                    Ok((report, 1))
                }
            }
        }
        Command::WordImage { file, word } => {
            let cert = fixture::certificate_from_json(&read_json(&file)?)
                .map_err(|e| format!("{}: {e}", file.display()))?;
            if let VerifyOutcome::Violation(v) = verify_certificate(&cert) {
                let _ = writeln!(report, "certificate does not verify: {v}");
                return Ok((report, 1));
            }
            let w = parse_word(&word)?;
            match word_image(&cert, &w) {
                Ok(r) => {
                    format_word_image(&mut report, &w, &r);
                    Ok((report, 0))
                }
                Err(e) => {
                    let _ = writeln!(report, "cannot conclude: {e}");
                    Ok((report, 1))
                }
            }
        }
        Command::GenWitness { k, out } => {
            if k == 0 {
                return Err("k must be at least 1".into());
            }
            let pair = crate::witness::gen_intertwined_pair(k);
            let certified =
                crate::witness::build_certificate(&pair).map_err(|e| e.to_string())?;
            let _ = writeln!(
                report,
                "k = {k}: certificate verified for the pair powered by N = {}",
                certified.power
            );
            let value = fixture::certificate_to_json(&certified.certificate);
            write_or_report(&out, &value, &mut report)?;
            Ok((report, 0))
        }
        Command::NoLaw { word, out } => {
            let w = parse_word(&word)?;
            let witness = no_law_witness(&w).map_err(|e| e.to_string())?;
            let _ = writeln!(report, "word: {}", witness.word);
            let _ = writeln!(report, "syllable depth k = {}", witness.k);
            let _ = writeln!(report, "pair power N = {}", witness.power);
            format_word_image(&mut report, &witness.word, &witness.report);
            let _ = writeln!(report, "the word is not a law for this pair");
            if out.is_some() {
                let value = fixture::certificate_to_json(&witness.certificate);
                write_or_report(&out, &value, &mut report)?;
            }
            Ok((report, 0))
        }
        Command::Classify { file, depth } => {
            let act = fixture::action_from_json(&read_json(&file)?, depth)
                .map_err(|e| format!("{}: {e}", file.display()))?;
            let c = classify(&act);
            for line in &c.trace {
                let _ = writeln!(report, "  {line}");
            }
            let _ = writeln!(report, "verdict: {}", c.verdict);
            match &c.witness {
                TypeWitness::GlobalFixed { point } => {
                    let _ = writeln!(report, "witness: common fixed point {}", fmt_rat(point));
                }
                TypeWitness::DiscreteOrbit { base, step } => {
                    let _ = writeln!(
                        report,
                        "witness: invariant progression {} + {} Z",
                        fmt_rat(base),
                        fmt_rat(step)
                    );
                }
                TypeWitness::TranslationNumbers { table } => {
                    let entries: Vec<String> =
                        table.iter().map(|(n, t)| format!("{n} -> {}", fmt_rat(t))).collect();
                    let _ = writeln!(report, "witness: translation numbers {}", entries.join(", "));
                }
                TypeWitness::Periodic { period } => {
                    let _ = writeln!(report, "witness: equivariance period {}", fmt_rat(period));
                }
                TypeWitness::Expansion { word, a, b, image_a, image_b, .. } => {
                    let _ = writeln!(
                        report,
                        "witness: {word} maps {} -> {} and {} -> {}",
                        fmt_rat(a),
                        fmt_rat(image_a),
                        fmt_rat(b),
                        fmt_rat(image_b)
                    );
                }
                TypeWitness::None => {}
            }
            let _ = writeln!(
                report,
                "{}",
                serde_json::to_string(&fixture::classification_to_json(&c)).expect("serializable")
            );
            Ok((report, 0))
        }
        Command::Order { command } => order_dispatch(command),
    }
}

fn order_dispatch(cmd: OrderCommand) -> Result<(String, i32), String> {
    let mut report = String::new();
    let load = |path: &PathBuf| -> Result<crate::order::DynOrder, String> {
        fixture::order_from_json(&read_json(path)?).map_err(|e| format!("{}: {e}", path.display()))
    };
    let check_alphabet = |o: &crate::order::DynOrder, w: &ReducedWord| -> Result<(), String> {
        match w.max_gen() {
            Some(g) if g >= o.alphabet() => Err(format!(
                "word {w} uses generator {:?} but the action has {} generators",
                (b'a' + g as u8) as char,
                o.alphabet()
            )),
            _ => Ok(()),
        }
    };
    match cmd {
        OrderCommand::Compare { file, u, v } => {
            let o = load(&file)?;
            let wu = parse_word(&u)?;
            let wv = parse_word(&v)?;
            check_alphabet(&o, &wu)?;
            check_alphabet(&o, &wv)?;
            let (ord, decision) = o.compare_detailed(&wu, &wv);
            let symbol = match ord {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            let how = match decision {
                Decision::IdenticalWords => "identical words".to_owned(),
                Decision::RefPoint { index, point } => {
                    format!("decided at reference point #{index} = {}", fmt_rat(&point))
                }
                Decision::TieBreak(level) => format!("decided by the {level} tiebreak"),
            };
            let _ = writeln!(report, "{wu} {symbol} {wv}  ({how})");
            Ok((report, 0))
        }
        OrderCommand::CheckW { file, word, radius } => {
            let o = load(&file)?;
            let w = parse_word(&word)?;
            if w.max_gen().is_some_and(|g| g >= 2) {
                return Err(format!("the verbal property takes a two-letter word, got {w}"));
            }
            match is_w_order_on_ball(&o, &w, radius) {
                WOrderOutcome::Pass => {
                    let _ = writeln!(report, "pass up to radius {radius}");
                    Ok((report, 0))
                }
                WOrderOutcome::Counterexample { u, v, substituted } => {
                    let _ = writeln!(
                        report,
                        "counterexample: u = {u}, v = {v} are positive but W(u,v) = {substituted} is negative"
                    );
                    Ok((report, 1))
                }
            }
        }
        OrderCommand::Dist { file1, file2, radius } => {
            let o1 = load(&file1)?;
            let o2 = load(&file2)?;
            let (r, saturated) = crate::order::agreement_radius(&o1, &o2, radius);
            let d = order_distance(&o1, &o2, radius);
            if saturated {
                let _ = writeln!(report, "distance <= {} (agreement radius >= {r})", fmt_rat(&d));
            } else {
                let _ = writeln!(report, "distance = {} (agreement radius {r})", fmt_rat(&d));
            }
            Ok((report, 0))
        }
        OrderCommand::Resilient { file, radius, n_max } => {
            let o = load(&file)?;
            match find_resilient_pair(&o, radius, n_max) {
                None => {
                    let _ = writeln!(report, "no resilient pair in the radius-{radius} ball");
                    Ok((report, 0))
                }
                Some(w) => {
                    let _ = writeln!(
                        report,
                        "resilient pair: f = {}, g = {}, h1 = {}, h2 = {}",
                        w.f, w.g, w.h1, w.h2
                    );
                    if w.failures.is_empty() {
                        let _ = writeln!(report, "chain re-verified for n = 2..={}", w.verified_to);
                    } else {
                        let _ = writeln!(report, "chain FAILED at n in {:?}", w.failures);
                    }
                    Ok((report, 1))
                }
            }
        }
    }
}

fn format_word_image(report: &mut String, word: &ReducedWord, r: &WordImageReport) {
    match r {
        WordImageReport::Chain {
            conjugator_power,
            syllables,
            steps,
            witness,
            image,
            original_witness,
            original_image,
        } => {
            let _ = writeln!(
                report,
                "conjugated by a^{conjugator_power} into the {syllables}-syllable form"
            );
            for s in steps {
                let _ = writeln!(
                    report,
                    "  {}^{} -> image {} inside target #{}",
                    s.map, s.exponent, s.image, s.target_index
                );
            }
            let _ = writeln!(
                report,
                "witness: conjugated word moves {} to {}",
                fmt_rat(witness),
                fmt_rat(image)
            );
            let _ = writeln!(
                report,
                "witness: {word} moves {} to {}",
                fmt_rat(original_witness),
                fmt_rat(original_image)
            );
        }
        WordImageReport::DirectPower { exponent, witness, image } => {
            let _ = writeln!(
                report,
                "pure power of the second letter: g^{exponent} moves {} to {}",
                fmt_rat(witness),
                fmt_rat(image)
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (String, i32) {
        let mut full = vec!["ordline"];
        full.extend_from_slice(args);
        run(full)
    }

    #[test]
    fn reduce_round_trip() {
        let (out, code) = run_cli(&["reduce", "--word", "a b b^-1 a"]);
        assert_eq!(code, 0);
        assert_eq!(out, "a^2\n");
    }

    #[test]
    fn violate_reports_three_inequalities() {
        let (out, code) = run_cli(&["violate", "--word", "a^-1 b a^2"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("f(0) ="));
        assert!(out.contains("W(f,g)(0) ="));
        // deterministic output
        let (again, _) = run_cli(&["violate", "--word", "a^-1 b a^2"]);
        assert_eq!(out, again);
    }

    #[test]
    fn violate_rejects_positive_words_with_exit_one() {
        let (out, code) = run_cli(&["violate", "--word", "a b"]);
        assert_eq!(code, 1);
        assert!(out.contains("no violating pair"));
    }

    #[test]
    fn usage_errors_exit_two() {
        let (_, code) = run_cli(&["violate"]);
        assert_eq!(code, 2);
        let (_, code) = run_cli(&["no-such-command"]);
        assert_eq!(code, 2);
        let (_, code) = run_cli(&["reduce", "--word", "a^"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn gen_witness_verify_cert_round_trip() {
        let dir = std::env::temp_dir().join("ordline-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("k1.json");
        let (out, code) =
            run_cli(&["gen-witness", "--k", "1", "--out", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        let (out, code) = run_cli(&["verify-cert", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(out, "ok\n");
        let (out, code) =
            run_cli(&["word-image", path.to_str().unwrap(), "--word", "a^3"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("witness"));
        // a word too deep for k = 1 is a mathematical negative
        let (out, code) =
            run_cli(&["word-image", path.to_str().unwrap(), "--word", "a b a^-1 b^-1"]);
        assert_eq!(code, 1);
        assert!(out.contains("cannot conclude"));
        std::fs::remove_dir_all(&dir).ok();
    }
}
