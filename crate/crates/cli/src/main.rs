// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use superheis_cli::manifest::{parse_manifest, DEFAULT_MANIFEST};
use superheis_cli::runner::run;
use superheis_core::families::{
    compare_family7_family5, demo_r01, formula, hilbert_spec, shape, used_params, FamilyParams,
    StandardGenerators,
};
use superheis_core::heisgroup::{check_graded_jacobi, sample_group_element};

#[derive(Parser)]
#[command(name = "superheis", version, about = "Verification harness for the 3|3 super Heisenberg group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks listed in a manifest.
    Verify {
        /// Manifest file; the built-in default manifest when omitted.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Override the manifest seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the manifest tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Run a demonstration.
    Demo {
        #[arg(value_enum)]
        which: Demo,
    },
    /// Print each family's parameters, space and formula.
    ListFamilies,
    /// Print the graded Jacobi residual for all 216 basis triples.
    Jacobi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Demo {
    /// The C^(1|1) example with tau(f) = d/dxi.
    R01,
    /// Family 7 at p = 0 against family 5.
    F7Limit,
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn verify(
    manifest: Option<PathBuf>,
    report: Option<PathBuf>,
    seed: Option<u64>,
    tolerance: Option<f64>,
) -> ExitCode {
    let text = match &manifest {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return usage_error(format!("{}: {e}", path.display())),
        },
        None => DEFAULT_MANIFEST.to_string(),
    };
    let mut m = match parse_manifest(&text) {
        Ok(m) => m,
        Err(e) => return usage_error(e),
    };
    if let Some(s) = seed {
        m.seed = s;
    }
    if let Some(t) = tolerance {
        if !(t.is_finite() && t > 0.0) {
            return usage_error("tolerance must be positive");
        }
        m.tolerance = t;
    }
    let r = run(&m);
    print!("{}", r.table());
    if let Some(path) = report {
        if let Err(e) = std::fs::write(&path, r.to_json()) {
            return usage_error(format!("{}: {e}", path.display()));
        }
    }
    ExitCode::from(r.exit_code() as u8)
}

fn demo(which: Demo) -> ExitCode {
    match which {
        Demo::R01 => match demo_r01() {
            Ok(r) => {
                println!("{r}");
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(e),
        },
        Demo::F7Limit => {
            use rand::SeedableRng;
            let s = StandardGenerators::get();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(superheis_cli::manifest::DEFAULT_SEED);
            let gs: Vec<_> = (0..8).map(|_| sample_group_element(&mut rng, &s.pool, &s.slots_g())).collect();
            match compare_family7_family5(1.5, &gs) {
                Ok(r) => {
                    println!("family 7 (p = 0) against family 5, k = 1.5");
                    println!("rho residual on eta-independent vectors: {:e}", r.rho_residual);
                    for (name, d) in ["e0", "e1", "e2", "f0", "f1", "f2"].iter().zip(r.tau_difference) {
                        println!("tau({name}) difference: {d:e}");
                    }
                    println!("tau(f2) difference + d/deta: {:e}", r.f2_minus_d_eta);
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(e),
            }
        }
    }
}

fn list_families() -> ExitCode {
    for id in 1..=7u8 {
        let d = FamilyParams::default_for(id);
        let (p, q) = shape(id).expect("known family");
        let spec = hilbert_spec(id).expect("known family");
        let values: Vec<String> = used_params(id)
            .iter()
            .map(|&name| match name {
                "k" => format!("k = {}", d.k),
                "l" => format!("l = {}", d.l),
                "p" => format!("p = {}", d.p),
                other => format!("{other} (odd)"),
            })
            .collect();
        println!("family {id}");
        println!("  parameters: {}", values.join(", "));
        println!(
            "  space: R^({p}|{q}), {} components, super pairing with {} terms",
            1 << spec.odd_dim(),
            spec.super_pairing().len()
        );
        println!("  rho: {}", formula(id));
    }
    ExitCode::SUCCESS
}

fn jacobi() -> ExitCode {
    let r = check_graded_jacobi();
    for (x, y, z, v) in &r.table {
        println!("{x} {y} {z} {v:e}");
    }
    println!("max residual over {} triples: {:e}", r.table.len(), r.max_residual);
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { manifest, report, seed, tolerance } => verify(manifest, report, seed, tolerance),
        Command::Demo { which } => demo(which),
        Command::ListFamilies => list_families(),
        Command::Jacobi => jacobi(),
    }
}
