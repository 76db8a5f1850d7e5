//! `btft`: enumeration, representation matrices, law verification and the
//! exotic separation demo from the command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use brauer_tft::brauer::{enumerate_loop_free, verify_relations, BrauerMorphism};
use brauer_tft::funmod::{check_tensor_iso, Monoidal};
use brauer_tft::qsemiring::laws::{check_matrix_projection, check_semiring_laws};
use brauer_tft::qsemiring::{MatrixShells, RationalForm};
use brauer_tft::rep::{rep, verify_relation_images, DualityStructure};
use brauer_tft::tft::random::{random_cobordism, random_disjoint_pair, random_gluable_pair, EnsembleParams};
use brauer_tft::tft::{exotic_demo, state_sum, verify_disjoint, verify_gluing, verify_rationality, DiscreteCobordism, LawCheck};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "btft", version, about = "Brauer category representations and discrete state sums")]
struct Cli {
    /// Truncation degree of the power series.
    #[arg(long, global = true, env = "BTFT_TRUNC", default_value_t = 64, value_parser = clap::value_parser!(u16).range(8..))]
    trunc: u16,
    /// Keys of Q-values: loop-free diagrams or shell matrices.
    #[arg(long, global = true, env = "BTFT_KEYING", value_enum, default_value_t = Keying::Diagram)]
    keying: Keying,
    /// `example` or a path to a duality file.
    #[arg(long, global = true, env = "BTFT_DUALITY", default_value = "example")]
    duality: String,
    #[arg(long, global = true, env = "BTFT_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for every randomized suite.
    #[arg(long, global = true, env = "BTFT_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Keying {
    Diagram,
    Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every loop-free morphism [M] -> [N].
    Enumerate { m: usize, n: usize },
    /// Emit the representation matrix of a morphism, e.g. `2;0;0;(I1-I2)`.
    Matrix { morphism: String },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Number of random instances (suite-specific default).
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Aggregates of a standard and an exotic ensemble in shell coordinates.
    ExoticDemo,
    /// State sum of a scenario file.
    StateSum { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Relations,
    Semiring,
    Gluing,
    Disjoint,
    Rationality,
    TensorIso,
}

/// Rendered output plus whether every check passed.
struct Report {
    text: String,
    value: Value,
    pass: bool,
}

struct Config {
    trunc: usize,
    keying: Keying,
    duality: DualityStructure,
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match load_duality(&cli.duality) {
        Ok(duality) => Config { trunc: cli.trunc as usize, keying: cli.keying, duality, seed: cli.seed },
        Err(e) => return usage_error(&e),
    };
    let result = match &cli.command {
        Command::Enumerate { m, n } => cmd_enumerate(*m, *n),
        Command::Matrix { morphism } => cmd_matrix(&config, morphism),
        Command::Verify { suite, trials } => cmd_verify(&config, *suite, *trials),
        Command::ExoticDemo => cmd_exotic_demo(&config),
        Command::StateSum { file } => cmd_state_sum(&config, file),
    };
    match result {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Structured => {
                    println!("{}", serde_json::to_string_pretty(&report.value).expect("JSON values serialize"))
                }
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => usage_error(&e),
    }
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn load_duality(source: &str) -> Result<DualityStructure, String> {
    if source == "example" {
        return Ok(DualityStructure::example());
    }
    let text = std::fs::read_to_string(source).map_err(|e| format!("cannot read {source}: {e}"))?;
    DualityStructure::parse(&text).map_err(|e| format!("{source}: {e}"))
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn to_value(x: &impl serde::Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn cmd_enumerate(m: usize, n: usize) -> Result<Report, String> {
    if (m + n) % 2 == 1 {
        return Err(format!("no morphisms [{m}] -> [{n}]: m + n = {} is odd", m + n));
    }
    let all = enumerate_loop_free(m, n);
    let mut text = String::new();
    for f in &all {
        writeln!(text, "{f}").unwrap();
    }
    writeln!(text, "count={}", all.len()).unwrap();
    let encodings: Vec<String> = all.iter().map(|f| f.to_string()).collect();
    let value = json!({ "m": m, "n": n, "count": all.len(), "morphisms": encodings });
    Ok(Report { text, value, pass: true })
}

fn cmd_matrix(config: &Config, encoding: &str) -> Result<Report, String> {
    let f: BrauerMorphism = encoding.trim().parse().map_err(|e| format!("{encoding:?}: {e}"))?;
    let y = rep(&config.duality, &f).map_err(|e| e.to_string())?;
    Ok(Report { text: format!("{y}\n"), value: to_value(&y), pass: true })
}

fn cmd_verify(config: &Config, suite: Suite, trials: Option<usize>) -> Result<Report, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    match suite {
        Suite::Relations => verify_relations_suite(config),
        Suite::Semiring => {
            let trials = trials.unwrap_or(500);
            let laws = check_semiring_laws(&mut rng, trials, config.trunc);
            let mut text = format!("semiring laws on {trials} random triples, N={}\n", config.trunc);
            for l in &laws.laws {
                writeln!(text, "{:<12} {:<32} {} passed={} failed={}", l.semiring, l.law, pass_fail(l.failed == 0), l.passed, l.failed)
                    .unwrap();
            }
            let mut pass = laws.all_hold();
            let mut value = json!({ "laws": to_value(&laws) });
            if config.keying == Keying::Matrix {
                let shells = MatrixShells::new(config.duality.clone());
                let (checked, failure) = check_matrix_projection(&shells, 4, config.trunc).map_err(|e| e.to_string())?;
                writeln!(text, "matrix projection of composition on {checked} pairs {}", pass_fail(failure.is_none())).unwrap();
                if let Some((phi, psi)) = &failure {
                    writeln!(text, "  first failure: {phi} then {psi}").unwrap();
                }
                pass &= failure.is_none();
                value["matrix_projection"] = json!({
                    "checked": checked,
                    "failure": failure.map(|(a, b)| [a.to_string(), b.to_string()]),
                });
            }
            writeln!(text, "result: {}", pass_fail(pass)).unwrap();
            value["pass"] = json!(pass);
            Ok(Report { text, value, pass })
        }
        Suite::Gluing => {
            let params = EnsembleParams::default();
            let checks = (0..trials.unwrap_or(200))
                .map(|_| {
                    let (w1, w2) = random_gluable_pair(&mut rng, &params);
                    verify_gluing(&w1, &w2, config.trunc)
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            Ok(law_summary("gluing", &checks))
        }
        Suite::Disjoint => {
            let params = EnsembleParams { max_fields: 20, ..EnsembleParams::default() };
            let checks = (0..trials.unwrap_or(200))
                .map(|_| {
                    let (w, v) = random_disjoint_pair(&mut rng, &params);
                    verify_disjoint(&w, &v, config.trunc)
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            Ok(law_summary("disjoint union", &checks))
        }
        Suite::Rationality => Ok(rationality_suite(config, &mut rng, trials.unwrap_or(50))),
        Suite::TensorIso => {
            let triples = trials.unwrap_or(100);
            let r = check_tensor_iso(&mut rng, triples, config.trunc);
            let mut text = String::new();
            writeln!(text, "alpha/beta round trips on {} maps: {} failures", r.maps, r.roundtrip_failures).unwrap();
            writeln!(text, "contraction associativity on {} triples: {} failures", r.triples, r.associativity_failures).unwrap();
            writeln!(text, "middle-linearity on {} triples: {} failures", r.triples, r.middle_linearity_failures).unwrap();
            if let Some(w) = &r.first_failure {
                writeln!(text, "first failure: {w}").unwrap();
            }
            writeln!(text, "result: {}", pass_fail(r.holds())).unwrap();
            Ok(Report { text, value: to_value(&r), pass: r.holds() })
        }
    }
}

fn verify_relations_suite(config: &Config) -> Result<Report, String> {
    let diagram = verify_relations();
    let matrix = verify_relation_images(&config.duality).map_err(|e| e.to_string())?;
    let mut text = format!("relations at diagram level and as matrices with dim V = {}\n", config.duality.dim());
    let mut rows = Vec::new();
    for (d, m) in diagram.checks.iter().zip(&matrix) {
        writeln!(text, "{:<28} diagram {}  matrix {}", d.name, pass_fail(d.holds), pass_fail(m.holds)).unwrap();
        rows.push(json!({ "relation": d.name, "diagram": d.holds, "matrix": m.holds }));
    }
    let pass = diagram.all_hold() && matrix.iter().all(|m| m.holds);
    writeln!(text, "result: {}", pass_fail(pass)).unwrap();
    Ok(Report { text, value: json!({ "relations": rows, "pass": pass }), pass })
}

fn law_summary(law: &str, checks: &[LawCheck]) -> Report {
    let failures: Vec<&LawCheck> = checks.iter().filter(|c| !c.holds).collect();
    let entries: usize = checks.iter().map(|c| c.entries_compared).sum();
    let fields: usize = checks.iter().map(|c| c.fields).sum();
    let pass = failures.is_empty();
    let mut text = format!(
        "{law} law on {} random pairs: {} entries compared, {} fields in the combined cobordisms\n",
        checks.len(),
        entries,
        fields
    );
    if let Some(c) = failures.first() {
        writeln!(text, "first failure: {}", c.mismatch.as_deref().unwrap_or("")).unwrap();
    }
    writeln!(text, "failures: {}", failures.len()).unwrap();
    writeln!(text, "result: {}", pass_fail(pass)).unwrap();
    let value = json!({
        "law": law,
        "pairs": checks.len(),
        "entries_compared": entries,
        "fields": fields,
        "failures": failures.len(),
        "first_failure": failures.first().and_then(|c| c.mismatch.clone()),
        "pass": pass,
    });
    Report { text, value, pass }
}

fn rationality_suite(config: &Config, rng: &mut ChaCha8Rng, samples: usize) -> Report {
    const DEPTH: usize = 20;
    let mut table: BTreeMap<(usize, bool, usize), usize> = BTreeMap::new();
    let (mut passed, mut notes) = (0, Vec::new());
    let mut window = 0;
    for i in 0..samples {
        let w = random_cobordism(rng, "w", &EnsembleParams::default());
        let report = verify_rationality(&w, DEPTH, config.trunc);
        window = report.window;
        for RationalForm { r, beta, s } in report.entries.iter().filter_map(|e| e.form) {
            *table.entry((r, beta, s)).or_default() += 1;
        }
        if report.holds {
            passed += 1;
        } else {
            notes.push(format!("ensemble {i}: {}", report.note.unwrap_or_default()));
        }
    }
    let pass = passed == samples;
    let mut text = format!(
        "rationality of {samples} saturated random ensembles, depth {DEPTH}, N={}, window {window}\n",
        config.trunc
    );
    writeln!(text, "{:>3} {:>5} {:>3} {:>6}  form", "r", "beta", "s", "count").unwrap();
    for (&(r, beta, s), count) in &table {
        let form = RationalForm { r, beta, s };
        writeln!(text, "{r:>3} {:>5} {s:>3} {count:>6}  {form}", beta as u8).unwrap();
    }
    for n in &notes {
        writeln!(text, "{n}").unwrap();
    }
    writeln!(text, "passed: {passed}/{samples}").unwrap();
    writeln!(text, "result: {}", pass_fail(pass)).unwrap();
    let rows: Vec<Value> = table
        .iter()
        .map(|(&(r, beta, s), count)| json!({ "r": r, "beta": beta, "s": s, "count": count }))
        .collect();
    let value = json!({
        "samples": samples,
        "depth": DEPTH,
        "trunc": config.trunc,
        "window": window,
        "forms": rows,
        "notes": notes,
        "passed": passed,
        "pass": pass,
    });
    Report { text, value, pass }
}

fn cmd_exotic_demo(config: &Config) -> Result<Report, String> {
    let r = exotic_demo(config.trunc).map_err(|e| e.to_string())?;
    let mut text = format!("aggregates at N={} in shell coordinates of the example structure\n", config.trunc);
    for (side, coords) in [("standard", &r.standard), ("exotic", &r.exotic)] {
        writeln!(text, "{side}:").unwrap();
        for c in coords {
            let exps: Vec<String> = c.series.exponents().map(|e| e.to_string()).collect();
            writeln!(text, "  {:<10} {{{}}}", c.name, exps.join(",")).unwrap();
        }
    }
    writeln!(text, "standard has constant term at 1_{{V⊗V}}: {}", r.standard_has_constant).unwrap();
    writeln!(text, "exotic is a multiple of q: {}", r.exotic_multiple_of_q).unwrap();
    writeln!(text, "1 + a = q a' has no solution (N=8, exhaustive): {}", r.equation_unsolvable).unwrap();
    writeln!(text, "verdict: {}", r.verdict()).unwrap();
    let mut value = to_value(&r);
    value["verdict"] = json!(r.verdict());
    Ok(Report { text, value, pass: r.holds() })
}

fn cmd_state_sum(config: &Config, file: &PathBuf) -> Result<Report, String> {
    let source = std::fs::read_to_string(file).map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let w: DiscreteCobordism = source.parse().map_err(|e| format!("{}: {e}", file.display()))?;
    let z = state_sum(&w, config.trunc);
    let sr = Monoidal { trunc: config.trunc };
    let shells = (config.keying == Keying::Matrix).then(|| MatrixShells::new(config.duality.clone()));
    let mut text = format!("state sum over {} x {} boundary pairs, N={}\n", w.in_keys().len(), w.out_keys().len(), config.trunc);
    let mut rows = Vec::new();
    for index in z.indices() {
        let v = z.get(&sr, &index);
        if v.is_zero() {
            continue;
        }
        let (body, json_value) = match &shells {
            Some(sh) => {
                let projected = v.to_matrix_keys(sh).map_err(|e| e.to_string())?;
                (projected.to_string(), to_value(&projected))
            }
            None => (v.to_string(), to_value(&v)),
        };
        writeln!(text, "({}, {}):", index[0], index[1]).unwrap();
        for line in body.lines() {
            writeln!(text, "  {line}").unwrap();
        }
        rows.push(json!({ "in": index[0], "out": index[1], "value": json_value }));
    }
    Ok(Report { text, value: json!({ "trunc": config.trunc, "entries": rows }), pass: true })
}
