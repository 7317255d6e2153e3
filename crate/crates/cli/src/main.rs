use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use zomega::certificate::Record;
use zomega::coding::{b_word, Label};
use zomega::counterexample::{
    adversary_certificate, adversary_point, dense_complement_check, r_member, rhm_cofinal, RVerdict, RhmAvoider,
    Translation,
};
use zomega::hyperspace::FiberCertificate;
use zomega::seq::Word;
use zomega::witness::{k0_level, nwd_certify, Certified, PairCylinder};
use zomega::{RegularCompact, RegularPoint};
use zomega_cli::config::RHM_BUDGET;
use zomega_cli::{store, suites, CliError, SuiteConfig};

/// Exact checks and certificates for regular compact subsets of Z^ω.
/// `println!` that ends the process quietly once stdout is closed.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    }};
}

#[derive(Parser)]
#[command(name = "zomega", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print s ↦ b_s for labels up to the given size.
    GenBs {
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        #[arg(long, default_value_t = 3)]
        max_entry: u64,
    },
    /// Dump the nodes (p, q) of the K₀ tree level by level.
    K0Tree {
        #[arg(long)]
        depth: usize,
    },
    /// Certify that D̄_{s′} inside [p]×[q] avoids the preimage of R + g.
    NwdCert {
        #[arg(long, value_parser = parse_word)]
        p: Word,
        #[arg(long, value_parser = parse_word)]
        q: Word,
        #[command(flatten)]
        g: TranslationArgs,
        #[arg(long, default_value_t = RHM_BUDGET)]
        budget: u64,
    },
    /// Adversary branches with exclusion certificates over a cover of K.
    Adversary {
        #[arg(long = "K")]
        k: RegularCompact,
        #[arg(long, default_value = "-")]
        s: Label,
        #[arg(long = "l", default_value_t = 0)]
        ell: u64,
        #[arg(long, default_value_t = 0)]
        depth: usize,
        /// Only this node of K instead of every node at `depth`.
        #[arg(long, value_parser = parse_word)]
        start: Option<Word>,
    },
    /// Test T(K, x) against T_s + C_{s⌢ℓ} for each `s/ℓ` pair.
    RExclude {
        #[arg(long = "K")]
        k: RegularCompact,
        #[arg(long)]
        x: RegularPoint,
        /// A pair `s/ℓ`, e.g. `1,0/2` or `-/0`; repeatable.
        #[arg(long = "pair", required = true, value_parser = parse_pair)]
        pairs: Vec<(Label, u64)>,
    },
    /// Shrink C_s away from R + g.
    RhmCofinal {
        #[command(flatten)]
        g: TranslationArgs,
        #[arg(long, default_value = "-")]
        s: Label,
        #[arg(long, default_value_t = RHM_BUDGET)]
        budget: u64,
    },
    /// Run an acceptance block (or `all`) and write certificate files.
    RunSuite(RunArgs),
    /// Re-verify every certificate file in a directory.
    Verify { dir: PathBuf },
}

#[derive(Args)]
struct TranslationArgs {
    /// A regular translation vector.
    #[arg(long, conflicts_with_all = ["gk", "gr"], required_unless_present = "gk")]
    g: Option<RegularPoint>,
    /// With `--gr`, the offset g = −t(K) − r.
    #[arg(long, requires = "gr")]
    gk: Option<RegularCompact>,
    #[arg(long, requires = "gk")]
    gr: Option<RegularPoint>,
}

impl TranslationArgs {
    fn get(self) -> Translation {
        match (self.g, self.gk, self.gr) {
            (Some(g), _, _) => Translation::Regular(g),
            (None, Some(k), Some(r)) => Translation::FiberOffset { k, r },
            _ => unreachable!("clap enforces one form"),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, env = "ZOMEGA_SUITE", default_value = "all")]
    suite: String,
    #[arg(long, env = "ZOMEGA_SEED", default_value_t = 7)]
    seed: u64,
    #[arg(long, env = "ZOMEGA_CORPUS_SIZE", default_value_t = 1000)]
    corpus_size: usize,
    #[arg(long, env = "ZOMEGA_MAX_DEPTH", default_value_t = 6)]
    max_depth: usize,
    #[arg(long, env = "ZOMEGA_MAX_LABEL_LEN", default_value_t = 2)]
    max_label_len: usize,
    /// `op=n`; repeatable.
    #[arg(long, env = "ZOMEGA_BUDGET", value_delimiter = ',')]
    budget: Vec<String>,
    #[arg(long, env = "ZOMEGA_MAX_UNKNOWN", default_value_t = 0)]
    max_unknown: u64,
    #[arg(long, env = "ZOMEGA_OUT")]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn config(self) -> Result<(String, SuiteConfig), CliError> {
        let mut cfg = SuiteConfig {
            seed: self.seed,
            corpus_size: self.corpus_size,
            max_depth: self.max_depth,
            max_label_len: self.max_label_len,
            max_unknown: self.max_unknown,
            out: self.out,
            ..SuiteConfig::default()
        };
        cfg.set_budgets(&self.budget)?;
        Ok((self.suite, cfg))
    }
}

fn parse_word(s: &str) -> Result<Word, String> {
    Word::from_csv(s).map_err(|e| e.to_string())
}

fn parse_pair(s: &str) -> Result<(Label, u64), String> {
    let (label, ell) = s.rsplit_once('/').ok_or("expected `s/ℓ`")?;
    let label = label.parse::<Label>().map_err(|e| e.to_string())?;
    let ell = ell.parse().map_err(|_| format!("bad ℓ `{ell}`"))?;
    Ok((label, ell))
}

fn emit(r: &Record) {
    out!("{}", store::seal(r));
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::GenBs { max_len, max_entry } => {
            for s in Label::up_to(max_len, max_entry) {
                let shown = if s.is_empty() { "-".to_string() } else { s.to_string() };
                out!("{shown}\t{}", b_word(&s)?.to_csv());
            }
            Ok(0)
        }
        Command::K0Tree { depth } => {
            for n in 0..=depth {
                for cyl in k0_level(n)? {
                    out!("{n}\t{}\t{}", cyl.p().to_csv(), cyl.q().to_csv());
                }
            }
            Ok(0)
        }
        Command::NwdCert { p, q, g, budget } => {
            let avoider = RhmAvoider { g: g.get() };
            match nwd_certify(&avoider, &PairCylinder::new(p, q)?, budget)? {
                Certified::Yes(cert) => {
                    emit(&Record::nwd(&cert));
                    Ok(0)
                }
                Certified::Unknown { spent } => {
                    eprintln!("unknown after {spent} coordinates");
                    Ok(3)
                }
            }
        }
        Command::Adversary { k, s, ell, depth, start } => {
            match start {
                Some(w0) => {
                    let adv = adversary_point(&k, &s, &w0)?;
                    emit(&Record::exclusion(&adv, ell, &adversary_certificate(&adv, ell)?));
                }
                None => {
                    for e in dense_complement_check(&k, &s, ell, depth)? {
                        emit(&Record::exclusion_entry(&k, &s, ell, &e));
                    }
                }
            }
            Ok(0)
        }
        Command::RExclude { k, x, pairs } => {
            let cert = FiberCertificate::new(k, x)?;
            match r_member(&cert, &pairs)? {
                RVerdict::NotInR { s, ell, c_star } => emit(&Record::inclusion(&cert, &s, ell, &c_star)),
                RVerdict::InRUpTo(checked) => {
                    let listed: Vec<String> = checked.iter().map(|(s, l)| format!("({s})/{l}")).collect();
                    out!("in R up to {}", listed.join(" "));
                }
                other => out!("{other:?}"),
            }
            Ok(0)
        }
        Command::RhmCofinal { g, s, budget } => match rhm_cofinal(&g.get(), &s, budget)? {
            Certified::Yes(cert) => {
                emit(&Record::rhm(&cert));
                Ok(0)
            }
            Certified::Unknown { spent } => {
                eprintln!("unknown after {spent} coordinates");
                Ok(3)
            }
        },
        Command::RunSuite(args) => {
            let (name, cfg) = args.config()?;
            let outcome = suites::run_suite(&name, &cfg, |_, r| out!("{r}"))?;
            Ok(outcome.exit)
        }
        Command::Verify { dir } => {
            let (report, code) = suites::verify_exit(&dir)?;
            for line in &report.rejected {
                eprintln!("rejected {line}");
            }
            if report.files == 0 {
                eprintln!("warning: no .{} files in {}", store::EXTENSION, dir.display());
            }
            out!("files={} records={} rejected={}", report.files, report.records, report.rejected.len());
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on bad arguments, which here means a rejected
    // certificate; usage errors share code 1 with every other error.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
