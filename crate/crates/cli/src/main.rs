//! Batch command-line surface over the parallelepiped-algebra workbench.
//!
//! Subcommands: `pip` (lattice enumeration), `algebra` (both constructions
//! plus the isomorphism certificate), `resolve` (Betti tables per engine),
//! `poincare` (rational series, fine and specialized), `verify` (the full
//! cross-check suite), and `koszul` (functional-equation report). All output
//! values are exact; identical invocations produce byte-identical files.

mod render;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fpa_core::fpa::{build_fpa_from_simplex, build_presented, check_isomorphism};
use fpa_core::lattice::{delta2, zb_point};
use fpa_core::resolution::Resolution;
use fpa_core::series::{
    build_transfer_matrix, chi_at_t_one, chi_closed_form, chi_fixed_exponent_form,
    ehrhart_poincare, koszul_check, poincare_rational, specialized_poincare, transfer_series,
};
use fpa_core::treebuilder::build_symbolic_resolution;

use render::{emit, Format, Payload};

#[derive(Parser)]
#[command(
    name = "fpa",
    about = "Exact workbench for fundamental parallelepiped algebras of the delta2 simplex family"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the formatted payload to this path instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Payload format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized reconstruction checks.
    #[arg(long, global = true, default_value_t = 1729)]
    seed: u64,
    /// Worker threads for per-multidegree kernel blocks (1 = sequential).
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Bruteforce,
    Symbolic,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the fundamental parallelepiped and the Hilbert basis.
    Pip {
        #[arg(long)]
        m: u32,
    },
    /// Build both algebra constructions, certify the isomorphism, and print
    /// the Hilbert series.
    Algebra {
        #[arg(long)]
        m: u32,
    },
    /// Resolve the residue field and print Betti data per engine.
    Resolve {
        #[arg(long)]
        m: u32,
        /// Homological degrees to build.
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Engine::Bruteforce)]
        engine: Engine,
    },
    /// Rational Betti series: fine multigraded form, specialized form, and a
    /// truncated expansion.
    Poincare {
        #[arg(long)]
        m: u32,
        /// Expansion order in z.
        #[arg(long, default_value_t = 5)]
        order: u32,
        /// Include the fine multigraded form (needs m >= 2).
        #[arg(long)]
        fine: bool,
    },
    /// Run the full cross-check suite; exits nonzero naming the first
    /// failing comparison.
    Verify {
        #[arg(long)]
        m: u32,
    },
    /// Test the Hilbert-series functional equation to the given order.
    Koszul {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 12)]
        order: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> fpa_core::Result<ExitCode> {
    match &cli.command {
        Command::Pip { m } => pip(cli, *m),
        Command::Algebra { m } => algebra(cli, *m),
        Command::Resolve { m, steps, engine } => resolve(cli, *m, *steps, *engine),
        Command::Poincare { m, order, fine } => poincare(cli, *m, *order, *fine),
        Command::Verify { m } => verify_cmd(cli, *m),
        Command::Koszul { m, order } => koszul(cli, *m, *order),
    }
}

fn pip(cli: &Cli, m: u32) -> fpa_core::Result<ExitCode> {
    let simplex = delta2(m)?;
    let points = simplex.enumerate_pip();
    let hb = simplex.hilbert_basis();
    println!(
        "pip m={m}: {} parallelepiped points (volume {}), hilbert basis {} rays + {} generators",
        points.len(),
        simplex.normalized_volume(),
        hb.ray_generators.len(),
        hb.pip_generators.len()
    );
    let zb: Vec<_> = (0..=4 * m as i64 + 1)
        .map(|b| zb_point(m, b))
        .collect::<fpa_core::Result<_>>()?;
    let json = serde_json::json!({
        "m": m,
        "simplex": simplex.to_json(),
        "pip_points": points.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
        "indexed_points": zb.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
        "hilbert_basis": {
            "rays": hb.ray_generators.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            "pip_generators": hb.pip_generators.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
        },
    });
    let mut csv = String::from("kind,coords\n");
    for p in &points {
        csv.push_str(&format!("pip,{}\n", render::colon_join(p)));
    }
    for p in &hb.ray_generators {
        csv.push_str(&format!("ray,{}\n", render::colon_join(p)));
    }
    for p in &hb.pip_generators {
        csv.push_str(&format!("generator,{}\n", render::colon_join(p)));
    }
    let mut text = String::new();
    for p in &points {
        text.push_str(&format!("pip {p}\n"));
    }
    for p in &hb.ray_generators {
        text.push_str(&format!("ray {p}\n"));
    }
    for p in &hb.pip_generators {
        text.push_str(&format!("generator {p}\n"));
    }
    emit(cli.output.as_deref(), cli.format, Payload { json, csv: Some(csv), text })?;
    Ok(ExitCode::SUCCESS)
}

fn algebra(cli: &Cli, m: u32) -> fpa_core::Result<ExitCode> {
    let presented = build_presented(m)?;
    let semigroup = build_fpa_from_simplex(&delta2(m)?)?;
    let cert = check_isomorphism(m)?;
    let hilbert = presented.hilbert_series();
    println!(
        "algebra m={m}: dimension {} (both forms), isomorphism {}, hilbert series {}",
        presented.dim(),
        if cert.holds { "holds" } else { "FAILS" },
        hilbert
    );
    let json = serde_json::json!({
        "m": m,
        "presented": presented.to_json(),
        "semigroup": semigroup.to_json(),
        "isomorphism": {
            "holds": cert.holds,
            // 1-based, matching the table serialization convention.
            "bijection": cert.bijection.as_ref().map(|b| {
                b.iter().map(|&j| j + 1).collect::<Vec<_>>()
            }),
            "counterexample": cert.counterexample.map(|(i, j)| vec![i + 1, j + 1]),
        },
        "hilbert_series": hilbert.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    let text = format!(
        "dimension {}\nisomorphism {}\nhilbert {}\n",
        presented.dim(),
        cert.holds,
        hilbert
    );
    emit(cli.output.as_deref(), cli.format, Payload { json, csv: None, text })?;
    Ok(if cert.holds { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn resolve(cli: &Cli, m: u32, steps: usize, engine: Engine) -> fpa_core::Result<ExitCode> {
    let mut sections: Vec<(&str, Resolution, fpa_core::fpa::FpaAlgebra)> = Vec::new();
    if engine == Engine::Bruteforce || engine == Engine::Both {
        let alg = build_presented(m)?;
        let res = Resolution::build(&alg, steps, cli.workers)?;
        sections.push(("bruteforce", res, alg));
    }
    let mut json_map = serde_json::Map::new();
    if engine == Engine::Symbolic || engine == Engine::Both {
        if steps < 2 {
            return Err(fpa_core::Error::InvalidParameter(
                "the symbolic engine always builds at least two degrees; use --steps 2 or more"
                    .into(),
            ));
        }
        let sym = build_symbolic_resolution(m, steps)?;
        let alg = sym.algebra().clone();
        sections.push(("symbolic", sym.resolution().clone(), alg));
        // The generator skeleton as a labeled tree, in both export forms.
        let mut tree = fpa_core::treebuilder::WeightedTree::new(m)?;
        tree.grow_to(steps);
        json_map.insert("tree".into(), tree.to_json());
        json_map.insert("tree_text".into(), serde_json::Value::String(tree.to_text()));
    }
    let mut csv = String::new();
    let mut text = String::new();
    for (name, res, alg) in &sections {
        let betti: Vec<String> = res.betti_numbers().iter().map(|b| b.to_string()).collect();
        println!("resolve m={m} engine={name}: betti {}", betti.join(","));
        text.push_str(&format!("# engine: {name}\n{}\n", betti.join(",")));
        csv.push_str(&format!("# engine: {name}\n"));
        csv.push_str(&render::betti_csv(res));
        json_map.insert((*name).to_string(), res.to_json(alg));
    }
    if sections.len() == 2 {
        let same = sections[0].1.betti_numbers() == sections[1].1.betti_numbers();
        println!(
            "resolve m={m}: engine Betti sequences {}",
            if same { "agree" } else { "DISAGREE" }
        );
    }
    emit(
        cli.output.as_deref(),
        cli.format,
        Payload {
            json: serde_json::Value::Object(json_map),
            csv: Some(csv),
            text,
        },
    )?;
    Ok(ExitCode::SUCCESS)
}

fn poincare(cli: &Cli, m: u32, order: u32, fine: bool) -> fpa_core::Result<ExitCode> {
    let specialized = specialized_poincare(m)?;
    let expansion = specialized.expand(order);
    println!(
        "poincare m={m}: specialized ({}) / ({})",
        specialized.numerator, specialized.denominator
    );
    let mut json = serde_json::json!({
        "m": m,
        "order": order,
        "specialized": specialized.to_json(),
        "specialized_expansion": expansion.to_json(),
        "ehrhart": ehrhart_poincare(m)?.to_json(),
    });
    let mut text = format!(
        "specialized: ({}) / ({})\nexpansion: {}\n",
        specialized.numerator, specialized.denominator, expansion
    );
    if fine {
        let rational = poincare_rational(m)?;
        let t = build_transfer_matrix(m)?;
        let computed_chi = chi_at_t_one(&t)?;
        let fine_expansion = rational.expand(order);
        let walk = transfer_series(&t, order);
        println!(
            "poincare m={m}: fine numerator has {} terms; walk series {} the rational expansion",
            rational.numerator.num_terms(),
            if fine_expansion == walk { "matches" } else { "DIVERGES from" }
        );
        let obj = json.as_object_mut().unwrap();
        obj.insert("fine".into(), rational.to_json());
        obj.insert("fine_expansion".into(), fine_expansion.to_json());
        obj.insert(
            "denominator_forms".into(),
            serde_json::json!({
                "computed": computed_chi.to_json(),
                "closed_form": chi_closed_form(m)?.to_json(),
                "fixed_exponent_form": chi_fixed_exponent_form(m)?.to_json(),
            }),
        );
        text.push_str(&format!(
            "fine: ({}) / ({})\nfine expansion: {}\n",
            rational.numerator, rational.denominator, fine_expansion
        ));
    }
    emit(cli.output.as_deref(), cli.format, Payload { json, csv: None, text })?;
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(cli: &Cli, m: u32) -> fpa_core::Result<ExitCode> {
    let checks = verify::run_suite(m, cli.seed, cli.workers)?;
    let mut first_failure: Option<&verify::CheckResult> = None;
    for c in &checks {
        println!("{} {} - {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
        if !c.passed && first_failure.is_none() {
            first_failure = Some(c);
        }
    }
    let json = serde_json::json!({
        "m": m,
        "checks": checks.iter().map(|c| {
            serde_json::json!({ "name": c.name, "passed": c.passed, "detail": c.detail })
        }).collect::<Vec<_>>(),
    });
    let mut csv = String::from("check,passed,detail\n");
    let mut text = String::new();
    for c in &checks {
        csv.push_str(&format!("{},{},{}\n", c.name, c.passed, c.detail.replace(',', ";")));
        text.push_str(&format!("{} {} {}\n", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail));
    }
    // The summary above already is the text payload; avoid printing it twice.
    if cli.output.is_some() || cli.format != Format::Text {
        emit(cli.output.as_deref(), cli.format, Payload { json, csv: Some(csv), text })?;
    }
    match first_failure {
        Some(c) => {
            eprintln!("verification failed: {} - {}", c.name, c.detail);
            Ok(ExitCode::FAILURE)
        }
        None => Ok(ExitCode::SUCCESS),
    }
}

fn koszul(cli: &Cli, m: u32, order: u32) -> fpa_core::Result<ExitCode> {
    let hilbert = build_presented(m)?.hilbert_series();
    let p = specialized_poincare(m)?;
    let report = koszul_check(&hilbert, &p, order);
    let line = match report.first_failure {
        None => format!("KOSZUL: functional equation holds to z^{order}"),
        Some(k) => format!("NOT KOSZUL: functional equation fails at z^{k}"),
    };
    println!("koszul m={m}: {line}");
    let json = serde_json::json!({
        "m": m,
        "order": order,
        "holds": report.holds,
        "first_failure": report.first_failure,
        "hilbert_series": hilbert.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    if cli.output.is_some() || cli.format != Format::Text {
        emit(
            cli.output.as_deref(),
            cli.format,
            Payload { json, csv: None, text: format!("{line}\n") },
        )?;
    }
    Ok(ExitCode::SUCCESS)
}
