use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use novsig::engine::{
    cd_drop_report, cover_sphere, sigma_report, sigma_star_report, virtual_search, Report,
};
use novsig::laurent::{complex_from_json, complex_to_json, random_complex, ranicki_verify};
use novsig::presentation::{reidemeister_schreier, Permutation};
use novsig::{abelianize, parse_presentation, EngineOptions, Field, Presentation, Session};

const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_INPUT: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "novsig",
    version,
    about = "Certified Sigma invariants and Novikov homology vanishing"
)]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Coefficient field: `Q` or a prime.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Largest truncation height, in units of the character's smallest positive value.
    #[arg(long, global = true, default_value_t = 64)]
    height_cap: i64,
    /// Knuth-Bendix rule budget.
    #[arg(long, global = true, default_value_t = 200)]
    kb_rules: usize,
    /// Knuth-Bendix maximal rule length.
    #[arg(long, global = true, default_value_t = 40)]
    kb_len: usize,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for commands that sample.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Abelianization and the basis used for characters.
    Abelianize { file: PathBuf },
    /// BNS membership of +chi and -chi.
    Sigma {
        file: PathBuf,
        /// Comma-separated rationals in the printed basis.
        #[arg(long = "char", allow_hyphen_values = true)]
        character: String,
    },
    /// Membership of +chi and -chi in Sigma*_m, given cd(G) = n.
    SigmaStar {
        file: PathBuf,
        #[arg(long = "char", allow_hyphen_values = true)]
        character: String,
        #[arg(long)]
        cd: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Whether ker chi has cohomological dimension cd - 1.
    CdDrop {
        file: PathBuf,
        #[arg(long = "char", allow_hyphen_values = true)]
        character: String,
        #[arg(long)]
        cd: usize,
    },
    /// Cover the character sphere of a free abelian quotient by certified cones.
    CoverSphere {
        file: PathBuf,
        /// `I<d>`, `ab`, or one row per generator: `1,0;0,1`.
        #[arg(long, allow_hyphen_values = true)]
        quotient: String,
        /// Assumed cd(G); defaults to the dimension of the presentation complex.
        #[arg(long)]
        cd: Option<usize>,
        /// Maximal number of sampled characters.
        #[arg(long, default_value_t = 16)]
        budget: usize,
    },
    /// Exact checks over k[t, t^-1].
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Reidemeister-Schreier presentation of a finite-index subgroup.
    Rs {
        file: PathBuf,
        /// Generator images in 1-based one-line notation: `a=2,1;t=1,2`. Repeat to try several subgroups.
        #[arg(long, required = true)]
        perm: Vec<String>,
        /// Search the subgroups for an integral character with cd drop from this cd.
        #[arg(long)]
        cd: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Ranicki's criterion on a complex given as JSON.
    Ranicki { file: PathBuf },
    /// Print a seeded random complex as JSON.
    Random,
}

fn parse_field(s: &str) -> anyhow::Result<Field> {
    match s {
        "Q" | "QQ" | "rationals" => Ok(Field::Rationals),
        _ => {
            let p: u64 = s
                .trim_start_matches("GF")
                .trim_start_matches('F')
                .trim_matches(|c| c == '(' || c == ')')
                .parse()
                .with_context(|| format!("unknown field `{s}`"))?;
            Ok(Field::prime(p)?)
        }
    }
}

fn parse_character(s: &str) -> anyhow::Result<Vec<BigRational>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<BigRational>()
                .with_context(|| format!("bad rational `{x}`"))
        })
        .collect()
}

fn parse_quotient(s: &str, p: &Presentation, session: &Session) -> anyhow::Result<Vec<Vec<i64>>> {
    let n = p.num_generators();
    if s == "ab" {
        return Ok(session.abelianization.free_projection.clone());
    }
    if let Some(d) = s.strip_prefix('I') {
        let d: usize = d.parse().with_context(|| format!("bad quotient `{s}`"))?;
        if d != n {
            bail!("`{s}` needs {d} generators, the presentation has {n}");
        }
        return Ok((0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect());
    }
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .with_context(|| format!("bad integer `{x}`"))
                })
                .collect()
        })
        .collect()
}

fn parse_permutations(s: &str, p: &Presentation) -> anyhow::Result<Vec<Permutation>> {
    let mut images: Vec<Option<Permutation>> = vec![None; p.num_generators()];
    for part in s.split(';').filter(|x| !x.trim().is_empty()) {
        let (name, img) = part
            .split_once('=')
            .with_context(|| format!("expected `gen=images` in `{part}`"))?;
        let g = p
            .generators
            .iter()
            .position(|x| x == name.trim())
            .with_context(|| format!("unknown generator `{}`", name.trim()))?;
        let perm = img
            .split(',')
            .map(|x| match x.trim().parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => bail!("bad point `{x}`"),
            })
            .collect::<anyhow::Result<Permutation>>()?;
        images[g] = Some(perm);
    }
    let n = images
        .iter()
        .flatten()
        .map(Vec::len)
        .max()
        .context("no generator images given")?;
    // unnamed generators act trivially
    Ok(images
        .into_iter()
        .map(|x| x.unwrap_or_else(|| (0..n).collect()))
        .collect())
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> anyhow::Result<Presentation> {
    parse_presentation(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn session(path: &Path, run: &RunConfig) -> anyhow::Result<Session> {
    if run.height_cap < 4 || run.kb_rules == 0 || run.kb_len == 0 {
        bail!("height cap must be at least 4 and Knuth-Bendix bounds positive");
    }
    let options = EngineOptions::with_cap(run.height_cap);
    Ok(Session::new(
        load(path)?,
        parse_field(&run.field)?,
        (run.kb_rules, run.kb_len),
        options,
    )?)
}

fn outcome(conclusive: bool) -> u8 {
    if conclusive {
        0
    } else {
        EXIT_INCONCLUSIVE
    }
}

fn print_report(r: &Report, run: &RunConfig) {
    if run.json {
        println!("{}", r.to_json());
        return;
    }
    println!("group: {}", r.group);
    println!("basis: ({})", r.basis.join(", "));
    for q in &r.queries {
        let degrees = if q.degrees[0] == q.degrees[1] {
            q.degrees[0].to_string()
        } else {
            format!("{}..{}", q.degrees[0], q.degrees[1])
        };
        let mut line = format!(
            "{}({}) {} degrees {}: {}",
            q.sign,
            q.character.join(","),
            q.convention,
            degrees,
            q.verdict
        );
        if let Some(h) = &q.height_used {
            line.push_str(&format!(" (height {h})"));
        }
        if let Some(c) = &q.cone {
            line.push_str(&format!(
                " cone {}",
                serde_json::to_string(&c.strict()).unwrap_or_default()
            ));
        }
        if let Some(d) = &q.detail {
            line.push_str(&format!(" [{d}]"));
        }
        println!("{line}");
    }
    println!("conclusion: {}", r.conclusion);
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let run = &cli.run;
    match &cli.command {
        Command::Abelianize { file } => {
            let p = load(file)?;
            let ab = abelianize(&p);
            let basis = ab.basis_names(&p.generators);
            if run.json {
                let v =
                    serde_json::json!({ "group": p.name, "abelianization": ab, "basis": basis });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else if basis.is_empty() {
                println!("H1 = {}", ab.summary());
            } else {
                println!("H1 = {} (basis: {})", ab.summary(), basis.join(", "));
            }
            Ok(0)
        }
        Command::Sigma { file, character } => {
            let s = session(file, run)?;
            let chi = s.character(&parse_character(character)?)?;
            let (r, _) = sigma_report(&s, &chi)?;
            print_report(&r, run);
            Ok(outcome(r.conclusive))
        }
        Command::SigmaStar {
            file,
            character,
            cd,
            m,
        } => {
            let s = session(file, run)?;
            let chi = s.character(&parse_character(character)?)?;
            let (r, _) = sigma_star_report(&s, &chi, *cd, *m)?;
            print_report(&r, run);
            Ok(outcome(r.conclusive))
        }
        Command::CdDrop {
            file,
            character,
            cd,
        } => {
            let s = session(file, run)?;
            let chi = s.character(&parse_character(character)?)?;
            let (r, _) = cd_drop_report(&s, &chi, *cd)?;
            print_report(&r, run);
            Ok(outcome(r.conclusive))
        }
        Command::CoverSphere {
            file,
            quotient,
            cd,
            budget,
        } => {
            let s = session(file, run)?;
            if *budget == 0 {
                bail!("budget must be positive");
            }
            let q = parse_quotient(quotient, &s.presentation, &s)?;
            let n = cd.unwrap_or_else(|| s.complex.top());
            let r = cover_sphere(&s, &q, n, *budget)?;
            if run.json {
                println!("{}", r.to_json());
            } else {
                println!("group: {}", r.group);
                println!("samples: {}", serde_json::to_string(&r.samples)?);
                for c in &r.cones {
                    println!("cone {}", serde_json::to_string(c)?);
                }
                println!("conclusion: {}", r.conclusion);
            }
            Ok(outcome(r.covered))
        }
        Command::Oracle { command } => match command {
            OracleCommand::Ranicki { file } => {
                let c = complex_from_json(&read(file)?, parse_field(&run.field)?)?;
                let r = ranicki_verify(&c);
                if run.json {
                    println!("{}", serde_json::to_string_pretty(&r)?);
                } else {
                    println!("{r}");
                }
                Ok(outcome(r.agree))
            }
            OracleCommand::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
                println!(
                    "{}",
                    complex_to_json(&random_complex(&mut rng, parse_field(&run.field)?))
                );
                Ok(0)
            }
        },
        Command::Rs { file, perm, cd } => {
            let p = load(file)?;
            let reps: Vec<Vec<Permutation>> = perm
                .iter()
                .map(|s| parse_permutations(s, &p))
                .collect::<anyhow::Result<_>>()?;
            if let Some(n) = cd {
                let options = EngineOptions::with_cap(run.height_cap);
                let field = parse_field(&run.field)?;
                let r = virtual_search(&p, field, (run.kb_rules, run.kb_len), &options, &reps, *n)?;
                if run.json {
                    println!("{}", serde_json::to_string_pretty(&r)?);
                } else {
                    for e in &r.entries {
                        println!(
                            "index {}: {} generators, {} relators",
                            e.index, e.generators, e.relators
                        );
                        if let Some(last) = e.tried.last() {
                            println!("  {}", last.conclusion);
                        }
                    }
                    match r.found {
                        Some(k) => println!("found: subgroup {}", k + 1),
                        None => println!("found: none"),
                    }
                }
                return Ok(outcome(r.found.is_some()));
            }
            let mut out = vec![];
            for rep in &reps {
                let sub = reidemeister_schreier(&p, rep)?;
                let ab = abelianize(&sub);
                out.push((rep.first().map_or(1, Vec::len), sub, ab));
            }
            if run.json {
                let v: Vec<_> = out
                    .iter()
                    .map(|(index, sub, ab)| {
                        serde_json::json!({
                            "index": index,
                            "presentation": sub.to_string(),
                            "abelianization": ab.summary(),
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                for (index, sub, ab) in &out {
                    println!("# index {index}; H1 = {}", ab.summary());
                    print!("{sub}");
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
