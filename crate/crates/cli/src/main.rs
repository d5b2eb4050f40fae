use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gensim_core::corpus;
use gensim_core::engine::general::DEFAULT_PROFILE_CAP;
use gensim_core::engine::monolinear::{clone_report, polynomial_clone};
use gensim_core::engine::unary::{dfa_regex, export_dot, UnaryLanguage};
use gensim_core::morphism::{
    check_g_functor, check_second_isomorphism, parse_map, verify_isomorphism_lemma, ElementMap,
};
use gensim_core::random;
use gensim_core::similarity::{
    check_transitive_triple, Config, EngineChoice, Session, TripleViolation,
};
use gensim_core::{parse_algebra, validate_pair, Algebra};

mod report;

use report::*;

#[derive(Parser)]
#[command(
    name = "gensim",
    version,
    about = "Generalization-based similarity between elements of finite algebras"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Term fragment, and with it the engine.
    #[arg(long, global = true, value_enum, default_value_t = Fragment::Auto)]
    fragment: Fragment,
    /// Variables tracked by the general engine and the oracle.
    #[arg(long, global = true, default_value_t = 2)]
    max_vars: usize,
    /// Term depth explored by the oracle.
    #[arg(long, global = true, default_value_t = 4)]
    max_depth: usize,
    /// Bound on the general engine's profile space.
    #[arg(long, global = true, default_value_t = DEFAULT_PROFILE_CAP)]
    cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized checks of `paper-examples`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fragment {
    Auto,
    Unary,
    Linear,
    Monolinear,
    General,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Relation {
    Leq,
    Approx,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verify {
    Hom,
    Iso,
    GFunctor,
    IsoLemma,
    Sit,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    left: PathBuf,
    /// Defaults to the left algebra.
    #[arg(long)]
    right: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide `a ≲ b` or `a ≈ b`.
    Check {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = Relation::Leq)]
        relation: Relation,
    },
    /// All `≲` and `≈` verdicts between the two carriers.
    Matrix {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Generalization language of an element of a unary algebra.
    Genlang {
        #[arg(long)]
        algebra: PathBuf,
        /// Every element when omitted.
        #[arg(long)]
        element: Option<String>,
    },
    /// Smallest set of shared generalizations singling out `b`.
    Charset {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Unary polynomial functions of an algebra.
    Clone {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Properties of an element map.
    Morphism {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, value_enum)]
        verify: Verify,
        /// Second map, for `--verify sit`.
        #[arg(long)]
        map2: Option<PathBuf>,
        #[arg(long)]
        source2: Option<PathBuf>,
        #[arg(long)]
        target2: Option<PathBuf>,
    },
    /// `a ≈ a` for every element named in both algebras.
    Reflexivity {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Transitivity within one algebra, or across three.
    Transitivity {
        #[arg(long)]
        left: PathBuf,
        #[arg(long, requires = "right")]
        middle: Option<PathBuf>,
        #[arg(long, requires = "middle")]
        right: Option<PathBuf>,
    },
    /// Runs the bundled fixture checks.
    PaperExamples,
}

fn read_algebra(path: &Path) -> Result<Algebra> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_algebra(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_map(path: &Path, source: &Algebra, target: &Algebra) -> Result<ElementMap> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_map(&text, source, target).with_context(|| format!("parsing {}", path.display()))
}

impl Global {
    fn config(&self) -> Result<Config> {
        if self.max_vars == 0 || self.max_depth == 0 || self.cap == 0 {
            bail!("--max-vars, --max-depth and --cap must be positive");
        }
        let engine = match self.fragment {
            Fragment::Auto => EngineChoice::Auto,
            Fragment::Unary => EngineChoice::Unary,
            Fragment::Linear => EngineChoice::Linear,
            Fragment::Monolinear => EngineChoice::Monolinear,
            Fragment::General => EngineChoice::General,
            Fragment::Oracle => EngineChoice::Oracle,
        };
        Ok(Config {
            engine,
            max_vars: self.max_vars,
            max_depth: self.max_depth,
            cap: self.cap,
        })
    }

    fn session(&self, pair: &PairArgs) -> Result<Session> {
        let left = read_algebra(&pair.left)?;
        let right = match &pair.right {
            Some(p) => read_algebra(p)?,
            None => left.clone(),
        };
        self.session_for(&left, &right)
    }

    fn session_for(&self, left: &Algebra, right: &Algebra) -> Result<Session> {
        let config = self.config()?;
        let session = Session::new(validate_pair(left, right)?, config);
        if config.engine == EngineChoice::Auto && !left.signature().is_unary() {
            eprintln!("note: the signature is not unary; verdicts are linear-fragment verdicts");
        }
        Ok(session)
    }

    fn no_dot(&self) -> Result<()> {
        if self.format == Format::Dot {
            bail!("--format dot is only available for genlang with --element");
        }
        Ok(())
    }
}

fn emit<T: Serialize>(
    g: &Global,
    command: &'static str,
    engine: String,
    holds: Option<bool>,
    result: T,
    text: String,
) -> Result<()> {
    match g.format {
        Format::Json => {
            let report = Report {
                command,
                engine,
                holds,
                result,
            };
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        _ => print!("{text}"),
    }
    Ok(())
}

fn code(holds: bool) -> u8 {
    if holds {
        0
    } else {
        1
    }
}

fn violations(vs: &[TripleViolation], names: [&str; 2]) -> Vec<Violation> {
    vs.iter()
        .map(|t| Violation {
            elements: t.elements.to_vec(),
            certificate: CertificateReport::of(&t.certificate, names[0], names[1]),
        })
        .collect()
}

fn run(cli: Cli) -> Result<u8> {
    let g = &cli.global;
    match &cli.command {
        Command::Check {
            pair,
            a,
            b,
            relation,
        } => {
            g.no_dot()?;
            let s = g.session(pair)?;
            let (l, r) = (&s.pair().left, &s.pair().right);
            let (x, y) = (l.require(a)?, r.require(b)?);
            let (v, sym, name) = match relation {
                Relation::Leq => (s.decide_leq(x, y)?, "≲", "leq"),
                Relation::Approx => (s.decide_approx(x, y)?, "≈", "approx"),
            };
            let cert = CertificateReport::of(&v, l.name(), r.name());
            let mut text = format!(
                "{a} {sym} {b} in ({}, {}): {} [{}]\n",
                l.name(),
                r.name(),
                if v.holds { "holds" } else { "does not hold" },
                v.label
            );
            if let Some(c) = &cert {
                text.push_str(&c.text());
                text.push('\n');
            }
            let result = CheckResult {
                relation: name,
                left: l.name().into(),
                right: r.name().into(),
                a: a.clone(),
                b: b.clone(),
                certificate: cert,
            };
            emit(g, "check", v.label.to_string(), Some(v.holds), result, text)?;
            Ok(code(v.holds))
        }
        Command::Matrix { pair } => {
            g.no_dot()?;
            let s = g.session(pair)?;
            let m = s.matrix()?;
            let bools = |vs: &Vec<Vec<gensim_core::similarity::Verdict>>| {
                vs.iter()
                    .map(|row| row.iter().map(|v| v.holds).collect())
                    .collect()
            };
            let text = format!("{}[{}]\n", m.render(), m.label);
            let result = MatrixResult {
                rows: m.rows.clone(),
                cols: m.cols.clone(),
                leq: bools(&m.leq),
                approx: bools(&m.approx),
            };
            emit(g, "matrix", m.label.to_string(), None, result, text)?;
            Ok(0)
        }
        Command::Genlang { algebra, element } => {
            let alg = read_algebra(algebra)?;
            if !alg.signature().is_unary() {
                bail!("genlang needs a unary signature");
            }
            let elems: Vec<_> = match element {
                Some(e) => vec![alg.require(e)?],
                None => alg.elements().collect(),
            };
            if g.format == Format::Dot {
                let [e] = elems[..] else {
                    bail!("--format dot needs --element")
                };
                print!("{}", export_dot(&UnaryLanguage::of(&alg, e)?.var));
                return Ok(0);
            }
            let mut results = Vec::new();
            let mut text = String::new();
            for e in elems {
                let lang = UnaryLanguage::of(&alg, e)?;
                let regex = dfa_regex(&lang.var).to_string();
                text.push_str(&format!("{}: {regex}\n", alg.name_of(e)));
                let mut ground = Vec::new();
                for (c, d) in lang.ground.iter().enumerate() {
                    if !d.is_empty() {
                        let constant = alg.signature().constants[c].clone();
                        let regex = dfa_regex(d).to_string();
                        text.push_str(&format!("{}: ground {constant}: {regex}\n", alg.name_of(e)));
                        ground.push(GroundLanguage { constant, regex });
                    }
                }
                results.push(LanguageResult {
                    algebra: alg.name().into(),
                    element: alg.name_of(e).into(),
                    regex,
                    states: lang.var.state_count(),
                    ground,
                });
            }
            emit(g, "genlang", "exact".into(), None, results, text)?;
            Ok(0)
        }
        Command::Charset {
            pair,
            a,
            b,
            max_size,
        } => {
            g.no_dot()?;
            let s = g.session(pair)?;
            let (x, y) = (s.pair().left.require(a)?, s.pair().right.require(b)?);
            let cs = s.find_characteristic_set(x, y, *max_size)?;
            let terms: Option<Vec<String>> = cs
                .terms
                .as_ref()
                .map(|ts| ts.iter().map(ToString::to_string).collect());
            let text = match &terms {
                Some(ts) => format!("{{ {} }}\n", ts.join(", ")),
                None => format!("no characteristic set with at most {max_size} terms\n"),
            };
            let found = terms.is_some();
            let result = CharsetResult {
                a: a.clone(),
                b: b.clone(),
                max_size: *max_size,
                terms,
            };
            emit(
                g,
                "charset",
                cs.label.to_string(),
                Some(found),
                result,
                text,
            )?;
            Ok(code(found))
        }
        Command::Clone { algebra } => {
            g.no_dot()?;
            let alg = read_algebra(algebra)?;
            let clone = polynomial_clone(&alg);
            let text = clone_report(&alg, &clone);
            let result = CloneResult {
                algebra: alg.name().into(),
                polynomials: text.lines().map(String::from).collect(),
            };
            emit(g, "clone", "exact".into(), None, result, text)?;
            Ok(0)
        }
        Command::Morphism {
            map,
            source,
            target,
            verify,
            map2,
            source2,
            target2,
        } => {
            g.no_dot()?;
            let config = g.config()?;
            let (src, tgt) = (read_algebra(source)?, read_algebra(target)?);
            let f = read_map(map, &src, &tgt)?;
            let mut details = Vec::new();
            let (name, holds, engine) = match verify {
                Verify::Hom => ("hom", f.is_homomorphism(), "exact".to_string()),
                Verify::Iso => ("iso", f.is_isomorphism(), "exact".to_string()),
                Verify::GFunctor => {
                    let v = check_g_functor(&f, config)?;
                    if let Some((e, verdict)) = &v.failure {
                        details.push(format!("{e} is not similar to its image"));
                        if let Some(c) = CertificateReport::of(verdict, src.name(), tgt.name()) {
                            details.push(c.text());
                        }
                    }
                    (
                        "g-functor",
                        v.holds,
                        Session::new(validate_pair(&src, &tgt)?, config)
                            .label()?
                            .to_string(),
                    )
                }
                Verify::IsoLemma => {
                    let r = verify_isomorphism_lemma(&f, config)?;
                    for e in &r.results {
                        let mut line = format!(
                            "{} -> {}: {}",
                            e.element,
                            e.image,
                            if e.equal { "equal" } else { "different" }
                        );
                        if let Some(w) = &e.witness {
                            line.push_str(&format!(" (witness {w})"));
                        }
                        details.push(line);
                    }
                    ("iso-lemma", r.holds(), r.method)
                }
                Verify::Sit => {
                    let (Some(m2), Some(s2), Some(t2)) = (map2, source2, target2) else {
                        bail!("--verify sit needs --map2, --source2 and --target2");
                    };
                    let (s2, t2) = (read_algebra(s2)?, read_algebra(t2)?);
                    let h = read_map(m2, &s2, &t2)?;
                    let r = check_second_isomorphism(&f, &h, config)?;
                    details.push(format!("{} cells checked", r.checked));
                    if !r.overlap_transported {
                        details.push("the maps do not transport the shared element names".into());
                    }
                    for v in &r.violations {
                        details.push(format!(
                            "{} ≈ {}: {} before, {} after",
                            v.left, v.right, v.before, v.after
                        ));
                    }
                    (
                        "sit",
                        r.holds(),
                        Session::new(validate_pair(&src, &s2)?, config)
                            .label()?
                            .to_string(),
                    )
                }
            };
            let mut text = format!(
                "{} {name}: {}\n",
                f.name,
                if holds { "holds" } else { "does not hold" }
            );
            for d in &details {
                text.push_str(&format!("  {d}\n"));
            }
            let result = MorphismResult {
                map: f.name.clone(),
                verify: name,
                details,
            };
            emit(g, "morphism", engine, Some(holds), result, text)?;
            Ok(code(holds))
        }
        Command::Reflexivity { pair } => {
            g.no_dot()?;
            let s = g.session(pair)?;
            let r = s.check_reflexive()?;
            let (l, rn) = (
                s.pair().left.name().to_string(),
                s.pair().right.name().to_string(),
            );
            let holds = r.violations.is_empty();
            let mut text = format!(
                "reflexive on {} shared elements: {}\n",
                r.checked.len(),
                if holds { "yes" } else { "no" }
            );
            let mut vs = Vec::new();
            for (e, v) in &r.violations {
                let cert = CertificateReport::of(v, &l, &rn);
                text.push_str(&format!("  {e} ≉ {e}"));
                if let Some(c) = &cert {
                    text.push_str(&format!(": {}", c.text()));
                }
                text.push('\n');
                vs.push(Violation {
                    elements: vec![e.clone()],
                    certificate: cert,
                });
            }
            let result = ReflexivityResult {
                checked: r.checked.clone(),
                violations: vs,
            };
            emit(
                g,
                "reflexivity",
                r.label.to_string(),
                Some(holds),
                result,
                text,
            )?;
            Ok(code(holds))
        }
        Command::Transitivity {
            left,
            middle,
            right,
        } => {
            g.no_dot()?;
            let a = read_algebra(left)?;
            let (report, algebras, ends) = match (middle, right) {
                (Some(m), Some(r)) => {
                    let (b, c) = (read_algebra(m)?, read_algebra(r)?);
                    g.session_for(&a, &c)?;
                    let rep = check_transitive_triple(&a, &b, &c, g.config()?)?;
                    let names = vec![
                        a.name().to_string(),
                        b.name().to_string(),
                        c.name().to_string(),
                    ];
                    let ends = [a.name().to_string(), c.name().to_string()];
                    (rep, names, ends)
                }
                _ => {
                    let rep = g.session_for(&a, &a)?.check_transitive()?;
                    (
                        rep,
                        vec![a.name().to_string()],
                        [a.name().to_string(), a.name().to_string()],
                    )
                }
            };
            let holds = report.is_transitive();
            let mut text = format!(
                "transitive: {} [{}]\n",
                if holds { "yes" } else { "no" },
                report.label
            );
            for (sym, neg, vs) in [
                ("≲", "⋦", &report.leq_violations),
                ("≈", "≉", &report.approx_violations),
            ] {
                for t in vs {
                    let [x, y, z] = &t.elements;
                    text.push_str(&format!("  {x} {sym} {y}, {y} {sym} {z}, {x} {neg} {z}\n"));
                }
            }
            let names = [ends[0].as_str(), ends[1].as_str()];
            let result = TransitivityResult {
                algebras,
                leq_violations: violations(&report.leq_violations, names),
                approx_violations: violations(&report.approx_violations, names),
            };
            emit(
                g,
                "transitivity",
                report.label.to_string(),
                Some(holds),
                result,
                text,
            )?;
            Ok(code(holds))
        }
        Command::PaperExamples => {
            g.no_dot()?;
            let mut checks: Vec<ExampleLine> = corpus::run_examples()
                .into_iter()
                .map(|c| ExampleLine {
                    location: c.location.into(),
                    passed: c.passed,
                    detail: c.detail,
                })
                .collect();
            checks.push(isomorphism_sweep(g.seed)?);
            let holds = checks.iter().all(|c| c.passed);
            let mut text = String::new();
            for c in &checks {
                text.push_str(&format!(
                    "{} {}: {}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.location,
                    c.detail
                ));
            }
            emit(
                g,
                "paper-examples",
                "mixed".into(),
                Some(holds),
                ExamplesResult {
                    seed: g.seed,
                    checks,
                },
                text,
            )?;
            Ok(code(holds))
        }
    }
}

/// Random monounary algebras against relabeled copies of themselves.
fn isomorphism_sweep(seed: u64) -> Result<ExampleLine> {
    let mut rng = random::rng(seed);
    let rounds = 20;
    let mut failed = Vec::new();
    for i in 0..rounds {
        let a = random::random_monounary(&mut rng, 5);
        let (_, f) = random::isomorphic_copy(&mut rng, &a, "C", "y");
        let lemma = verify_isomorphism_lemma(&f, Config::default())?.holds();
        let functor = check_g_functor(&f, Config::default())?.holds;
        if !(lemma && functor) {
            failed.push(i.to_string());
        }
    }
    Ok(ExampleLine {
        location: "random relabelings".into(),
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{rounds} of {rounds} preserve generalizations and similarity")
        } else {
            format!("rounds {} failed", failed.join(", "))
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
