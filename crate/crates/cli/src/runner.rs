// SPDX-License-Identifier: Apache-2.0

//! Executes a manifest. Each (family, check) task draws from its own
//! ChaCha stream, so results do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use superheis_core::families::{
    check_berezin_realization, check_bracket_compat, check_domain_closure, check_equivariance,
    check_homomorphism, check_inverse, check_shs, check_unitarity_rho_o, report_mode, used_params, Family,
    SkewConvention, SkewReport, StandardGenerators,
};
use superheis_core::heisgroup::{sample_body, sample_group_element, BodyElement, GroupElement};
use superheis_core::superspace::{default_test_vectors, test_set, SuperFunction, SuperHilbertSpec};
use superheis_core::Result as CoreResult;

use crate::manifest::{Check, FamilyBlock, Manifest};
use crate::report::{CheckRecord, Report, Status};

/// Longest `τ`-word applied by the closure check.
pub const CLOSURE_WORD_LENGTH: usize = 4;
/// Bound on the continuity surrogate constant.
const BOUND_SLACK: f64 = 1e-10;

struct Outcome {
    samples: usize,
    residual: f64,
    status: Option<Status>,
    notes: String,
}

impl Outcome {
    fn new(samples: usize, residual: f64, notes: impl Into<String>) -> Self {
        Outcome { samples, residual, status: None, notes: notes.into() }
    }
}

/// Random stream for one task.
pub fn task_rng(seed: u64, family: u8, check: Check) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(family) * 16 + check as u64);
    rng
}

/// Up to six vectors for the sampled checks: the mixed vectors of the test
/// set plus homogeneous ones spread across components.
pub fn sampled_vectors(space: &std::sync::Arc<SuperHilbertSpec>) -> Vec<SuperFunction> {
    let all = test_set(space);
    let hom = default_test_vectors(space).len();
    let mut out: Vec<SuperFunction> = all[hom..].to_vec();
    let want = 6usize.saturating_sub(out.len()).min(hom);
    if let Some(step) = hom.checked_div(want) {
        let step = step.max(1);
        out.extend(all[..hom].iter().step_by(step).take(want).cloned());
    }
    out
}

fn group_pairs(rng: &mut ChaCha8Rng, n: usize) -> Vec<(GroupElement, GroupElement)> {
    let s = StandardGenerators::get();
    (0..n)
        .map(|_| {
            let g = sample_group_element(rng, &s.pool, &s.slots_g());
            let h = sample_group_element(rng, &s.pool, &s.slots_h());
            (g, h)
        })
        .collect()
}

fn bodies(rng: &mut ChaCha8Rng, n: usize) -> Vec<BodyElement> {
    (0..n).map(|_| sample_body(rng)).collect()
}

fn execute(family: &Family, check: Check, samples: usize, seed: u64, tolerance: f64) -> CoreResult<Outcome> {
    let mut rng = task_rng(seed, family.id(), check);
    let space = family.space();
    let id = family.id();
    Ok(match check {
        Check::Homomorphism => {
            let vectors = sampled_vectors(space);
            let pairs = group_pairs(&mut rng, samples);
            let hom = check_homomorphism(family, &pairs, &vectors)?;
            let gs: Vec<GroupElement> = pairs.iter().map(|p| p.0.clone()).collect();
            let inv = check_inverse(family, &gs, &vectors)?;
            Outcome::new(
                pairs.len() * vectors.len(),
                hom.max(inv),
                format!(
                    "{} pairs x {} vectors; product {:.3e}, inverse {:.3e}",
                    pairs.len(),
                    vectors.len(),
                    hom,
                    inv
                ),
            )
        }
        Check::Unitarity => {
            let vectors = sampled_vectors(space);
            let gs = bodies(&mut rng, samples);
            let r = check_unitarity_rho_o(family, &gs, &vectors)?;
            let mut o = Outcome::new(gs.len() * vectors.len() * vectors.len(), r.max_residual, "");
            if r.report_mode {
                o.status = Some(Status::Flag);
                o.notes = "report mode: rho_o depends on the odd parameter kappa".into();
            }
            o
        }
        Check::Skew => {
            let vectors = default_test_vectors(space);
            let r = SkewReport::compute(family, &vectors)?;
            let n = vectors.len();
            let (a, b) = (r.max_a(), r.max_b());
            let mut o = Outcome::new(
                6 * n * n,
                a,
                format!(
                    "convention A {a:.3e}, convention B {b:.3e}; holding: {}",
                    convention_names(&r.holding(tolerance))
                ),
            );
            if used_params(id).contains(&"kappa") {
                o.notes.push_str("; odd-parameter values use coefficient-only conjugation");
            }
            o
        }
        Check::Bracket => {
            let vectors = sampled_vectors(space);
            let table = check_bracket_compat(family, &vectors)?;
            let (x, y, worst) = table
                .iter()
                .copied()
                .fold((None, None, 0.0f64), |acc, (x, y, r)| if r >= acc.2 { (Some(x), Some(y), r) } else { acc });
            let notes = match (x, y) {
                (Some(x), Some(y)) => format!("{} basis pairs, worst ({x},{y})", table.len()),
                _ => format!("{} basis pairs", table.len()),
            };
            Outcome::new(table.len() * vectors.len(), worst, notes)
        }
        Check::Equivariance => {
            let vectors = sampled_vectors(space);
            let gs = bodies(&mut rng, samples);
            let r = check_equivariance(family, &gs, &vectors)?;
            Outcome::new(gs.len() * 3 * vectors.len(), r, "odd basis vectors f0, f1, f2")
        }
        Check::Closure => {
            let all = test_set(space);
            let start = &all[all.len() - 1..];
            let r = check_domain_closure(family, start, CLOSURE_WORD_LENGTH)?;
            Outcome::new(
                r.words,
                r.failures as f64,
                format!("words up to length {}, {} left the test class", r.max_len, r.failures),
            )
        }
        Check::Shs => {
            let vectors = default_test_vectors(space);
            let r = check_shs(family, &vectors)?;
            let expect_shs2 = id <= 2;
            let mismatch = if r.shs2_holds == expect_shs2 { 0.0 } else { 1.0 };
            let over = (r.bound_constant - 1.0 - BOUND_SLACK).max(0.0);
            let residual = r.shs1_residual.max(r.bound_violation.max(0.0)).max(over).max(mismatch);
            Outcome::new(
                r.pairs,
                residual,
                format!(
                    "SHS1 {:.3e}; SHS2 {} (expected {}); bound constant {:.6}",
                    r.shs1_residual,
                    if r.shs2_holds { "holds" } else { "fails" },
                    if expect_shs2 { "holds" } else { "fails" },
                    r.bound_constant
                ),
            )
        }
        Check::Berezin => {
            let vectors = test_set(space);
            let r = check_berezin_realization(&vectors)?;
            Outcome::new(vectors.len() * vectors.len(), r, "Berezin route against component formula")
        }
    })
}

fn status_for(family: u8, check: Check, residual: f64, tolerance: f64, forced: Option<Status>) -> Status {
    if let Some(s) = forced {
        return s;
    }
    if residual <= tolerance {
        Status::Pass
    } else if report_mode(family) && matches!(check, Check::Skew | Check::Equivariance) {
        Status::Flag
    } else {
        Status::Fail
    }
}

fn run_one(block: &FamilyBlock, check: Check, seed: u64, tolerance: f64) -> CheckRecord {
    let id = block.params.family;
    let record = |samples, max_residual, status, notes| CheckRecord {
        family: id,
        check: check.name().to_string(),
        samples,
        max_residual,
        status,
        notes,
    };
    let family = match Family::new(block.params) {
        Ok(f) => f,
        Err(e) => return record(0, f64::NAN, Status::Fail, e.to_string()),
    };
    match execute(&family, check, block.samples, seed, tolerance) {
        Ok(o) if o.residual.is_finite() => {
            let status = status_for(id, check, o.residual, tolerance, o.status);
            record(o.samples, o.residual, status, o.notes)
        }
        Ok(o) => record(o.samples, f64::NAN, Status::Fail, format!("non-finite residual; {}", o.notes)),
        Err(e) => record(0, f64::NAN, Status::Fail, format!("error: {e}")),
    }
}

/// Runs every enabled check in parallel; the report is in canonical order.
pub fn run(manifest: &Manifest) -> Report {
    let tasks: Vec<(&FamilyBlock, Check)> = manifest
        .families
        .values()
        .flat_map(|b| b.checks.iter().map(move |&c| (b, c)))
        .collect();
    let mut checks: Vec<CheckRecord> = tasks
        .par_iter()
        .map(|&(b, c)| run_one(b, c, manifest.seed, manifest.tolerance))
        .collect();
    checks.sort_by(|a, b| (a.family, &a.check).cmp(&(b.family, &b.check)));
    Report { checks, seed: manifest.seed, tolerance: manifest.tolerance }
}

/// Conventions that hold, for display.
pub fn convention_names(conventions: &[SkewConvention]) -> String {
    if conventions.is_empty() {
        return "none".into();
    }
    conventions
        .iter()
        .map(|c| match c {
            SkewConvention::A => "A",
            SkewConvention::B => "B",
        })
        .collect::<Vec<_>>()
        .join(", ")
}
