// SPDX-License-Identifier: Apache-2.0

//! The `ℝ^{0|1}` example and the `p = 0` limit of family 7.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::Result;
use crate::gaussfun::PolyGauss;
use crate::grassmann::GrassmannElement;
use crate::heisgroup::{Basis, GroupElement};
use crate::superspace::{default_test_vectors, super_inner_product, PairingTerm, SuperFunction, SuperHilbertSpec};

use super::{Family, FamilyParams, StandardGenerators};

/// Outcome of the `ℂ^{1|1}` demonstration with `τ(f) = ∂_ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct DemoR01Report {
    /// Skewness equations in the unknowns `(p₀, p₁)` of the standard form
    /// `diag(p₀, i p₁)`, one row `[c₀, c₁]` per basis pair.
    pub equations: Vec<[Complex64; 2]>,
    pub rank: usize,
    /// Rank after adding the normalization `p₀ = 1`.
    pub augmented_rank: usize,
    pub standard_consistent: bool,
    /// Skew residual of `∂_ξ` for `⟨⟨χ,ψ⟩⟩ = χ̄₀ψ₁ + χ̄₁ψ₀`.
    pub odd_pairing_residual: f64,
    pub tau_squared: f64,
}

impl fmt::Display for DemoR01Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "C^(1|1) with tau(f) = d/dxi, matrix [[0,1],[0,0]] on (psi0, psi1)")?;
        writeln!(f, "(i) standard form <<x,y>> = i^|x| <x,y> gives B = diag(p0, i p1), p0 > 0")?;
        for (n, [c0, c1]) in self.equations.iter().enumerate() {
            if c0.norm() > 0.0 || c1.norm() > 0.0 {
                writeln!(f, "    equation {n}: ({c0}) p0 + ({c1}) p1 = 0")?;
            }
        }
        writeln!(f, "    normalization p0 = 1")?;
        writeln!(
            f,
            "    rank {} vs augmented rank {}: {}",
            self.rank,
            self.augmented_rank,
            if self.standard_consistent { "consistent" } else { "inconsistent, no solution" }
        )?;
        writeln!(f, "(ii) odd pairing <<x,y>> = conj(x0) y1 + conj(x1) y0")?;
        writeln!(f, "    skew residual of d/dxi: {:e}", self.odd_pairing_residual)?;
        write!(f, "(iii) tau(f)^2 residual: {:e}", self.tau_squared)
    }
}

/// Rank of a complex matrix by Gaussian elimination with partial pivoting.
fn rank(rows: &[Vec<Complex64>]) -> usize {
    const EPS: f64 = 1e-12;
    let mut m: Vec<Vec<Complex64>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).max_by(|&i, &j| m[i][c].norm().total_cmp(&m[j][c].norm())) else {
            break;
        };
        if m[pivot][c].norm() <= EPS {
            continue;
        }
        m.swap(r, pivot);
        for i in 0..m.len() {
            if i != r {
                let factor = m[i][c] / m[r][c];
                for j in c..cols {
                    let v = m[r][j];
                    m[i][j] -= factor * v;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn demo_r01() -> Result<DemoR01Report> {
    let i = Complex64::new(0.0, 1.0);
    let (zero, one) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    // τ(f) on coordinates (ψ₀, ψ₁)
    let tau = |v: [Complex64; 2]| [v[1], zero];
    let basis = [[one, zero], [zero, one]];
    // ⟨⟨u,v⟩⟩ = p₀ ū₀v₀ + p₁ i ū₁v₁, as coefficients of (p₀, p₁)
    let form = |u: [Complex64; 2], v: [Complex64; 2]| [u[0].conj() * v[0], i * u[1].conj() * v[1]];
    let mut equations = Vec::new();
    for (s, chi) in basis.iter().enumerate() {
        let sign = if s == 1 { -1.0 } else { 1.0 };
        for psi in &basis {
            let first = form(tau(*chi), *psi);
            let second = form(*chi, tau(*psi));
            equations.push([first[0] + second[0] * sign, first[1] + second[1] * sign]);
        }
    }
    let coefficient_rows: Vec<Vec<Complex64>> = equations.iter().map(|e| vec![e[0], e[1]]).collect();
    let mut augmented: Vec<Vec<Complex64>> = equations.iter().map(|e| vec![e[0], e[1], zero]).collect();
    let mut with_norm = coefficient_rows.clone();
    with_norm.push(vec![one, zero]);
    augmented.push(vec![one, zero, one]);
    let rank_coeff = rank(&with_norm);
    let rank_aug = rank(&augmented);

    let s = StandardGenerators::get();
    let x = s.xi.mask();
    let space = Arc::new(SuperHilbertSpec::new(
        &s.pool,
        0,
        vec![s.xi],
        vec![PairingTerm::new(0, 0, 1.0), PairingTerm::new(x, x, 1.0)],
        vec![PairingTerm::new(0, x, 1.0), PairingTerm::new(x, 0, 1.0)],
    )?);
    let d_xi = |v: &SuperFunction| -> Result<SuperFunction> {
        v.with_body(v.body().try_map_coefficients(|c| c.left_coefficient(s.xi))?)
    };
    let unit = |z: Complex64| PolyGauss::constant(GrassmannElement::scalar(&s.pool, z), 0);
    let vectors = [
        (SuperFunction::from_components(&space, [(0, unit(one))])?, 0u32),
        (SuperFunction::from_components(&space, [(0, unit(Complex64::new(0.3, -1.2)))])?, 0),
        (SuperFunction::from_components(&space, [(x, unit(one))])?, 1),
        (SuperFunction::from_components(&space, [(x, unit(Complex64::new(-0.7, 0.4)))])?, 1),
    ];
    let mut odd_residual: f64 = 0.0;
    let mut squared: f64 = 0.0;
    for (chi, dchi) in &vectors {
        let t_chi = d_xi(chi)?;
        squared = squared.max(d_xi(&t_chi)?.body().residual_norm()?);
        let sign = if dchi % 2 == 0 { 1.0 } else { -1.0 };
        for (psi, _) in &vectors {
            let first = super_inner_product(&t_chi, psi)?;
            let second = super_inner_product(chi, &d_xi(psi)?)?;
            odd_residual = odd_residual.max((&first + &second.scale(sign)).max_abs());
        }
    }
    Ok(DemoR01Report {
        equations,
        rank: rank_coeff,
        augmented_rank: rank_aug,
        standard_consistent: rank_coeff == rank_aug,
        odd_pairing_residual: odd_residual,
        tau_squared: squared,
    })
}

/// Family 7 at `p = 0` against family 5 with the same `k`, `κ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    /// `‖ρ₇(g)ψ − ρ₅(g)ψ‖` on `η`-independent vectors.
    pub rho_residual: f64,
    /// `‖τ₇(X)ψ − τ₅(X)ψ‖` per basis vector, on all test vectors.
    pub tau_difference: [f64; 6],
    /// `‖(τ₇(f₂) − τ₅(f₂))ψ + ∂_η ψ‖`, the difference against `−∂_η`.
    pub f2_minus_d_eta: f64,
}

pub fn compare_family7_family5(k: f64, samples: &[GroupElement]) -> Result<LimitReport> {
    let s = StandardGenerators::get();
    let seven = Family::build(FamilyParams { p: 0.0, k, ..FamilyParams::default_for(7) });
    let five = Family::build(FamilyParams { k, ..FamilyParams::default_for(5) });
    let vectors = default_test_vectors(seven.space());
    let eta_mask = s.eta.mask();
    let flat: Vec<&SuperFunction> = vectors.iter().filter(|v| v.body().support() & eta_mask == 0).collect();
    let mut rho_residual: f64 = 0.0;
    for g in samples {
        for psi in &flat {
            let a = seven.rho(g, psi)?;
            let b = five.rho_unchecked(g, psi)?;
            rho_residual = rho_residual.max(a.distance(&b)?);
        }
    }
    let mut tau_difference = [0.0; 6];
    let mut f2_minus_d_eta: f64 = 0.0;
    for psi in &vectors {
        for x in Basis::ALL {
            let diff = seven.tau(x, psi)?.sub(&five.tau_unchecked(x, psi)?)?;
            tau_difference[x.index()] = f64::max(tau_difference[x.index()], diff.body().residual_norm()?);
            if x == Basis::F2 {
                let d_eta = psi.with_body(psi.body().try_map_coefficients(|c| c.left_coefficient(s.eta))?)?;
                f2_minus_d_eta = f2_minus_d_eta.max(diff.add(&d_eta)?.body().residual_norm()?);
            }
        }
    }
    Ok(LimitReport { rho_residual, tau_difference, f2_minus_d_eta })
}
