// SPDX-License-Identifier: Apache-2.0

//! Representation-theoretic checks. Every check returns a residual, the
//! largest deviation seen over the supplied samples and test vectors.

use crate::error::Result;
use crate::grassmann::GrassmannElement;
use crate::heisgroup::{adjoint_action, bracket, AlgebraVector, Basis, BodyElement, GroupElement};
use crate::superspace::{
    check_shs_conditions, inner_product, super_inner_product, super_inner_product_components, ShsReport,
    SuperFunction,
};

use super::{report_mode, Family, StandardGenerators};

/// `max ‖ρ(g)ρ(h)ψ − ρ(gh)ψ‖`.
pub fn check_homomorphism(
    family: &Family,
    pairs: &[(GroupElement, GroupElement)],
    vectors: &[SuperFunction],
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (g, h) in pairs {
        let gh = g.multiply(h)?;
        for psi in vectors {
            let lhs = family.rho(g, &family.rho(h, psi)?)?;
            let rhs = family.rho(&gh, psi)?;
            worst = worst.max(lhs.distance(&rhs)?);
        }
    }
    Ok(worst)
}

/// `max ‖ρ(g⁻¹)ρ(g)ψ − ψ‖`.
pub fn check_inverse(family: &Family, samples: &[GroupElement], vectors: &[SuperFunction]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for g in samples {
        let inv = g.inverse();
        for psi in vectors {
            let back = family.rho(&inv, &family.rho(g, psi)?)?;
            worst = worst.max(back.distance(psi)?);
        }
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitarityReport {
    pub max_residual: f64,
    /// Set for the families whose `ρ_o` carries odd parameters.
    pub report_mode: bool,
}

/// `max |⟨ρ_o(g)χ, ρ_o(g)ψ⟩ − ⟨χ, ψ⟩|` over all vector pairs.
pub fn check_unitarity_rho_o(
    family: &Family,
    samples: &[BodyElement],
    vectors: &[SuperFunction],
) -> Result<UnitarityReport> {
    let mut worst: f64 = 0.0;
    for g in samples {
        let moved: Vec<SuperFunction> = vectors.iter().map(|v| family.rho_o(g, v)).collect::<Result<_>>()?;
        for (i, chi) in vectors.iter().enumerate() {
            for (j, psi) in vectors.iter().enumerate() {
                let before = inner_product(chi, psi)?;
                let after = inner_product(&moved[i], &moved[j])?;
                worst = worst.max(after.distance(&before));
            }
        }
    }
    Ok(UnitarityReport {
        max_residual: worst,
        report_mode: report_mode(family.id()),
    })
}

/// Sign rule for graded skew-symmetry of `τ(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkewConvention {
    /// `⟨⟨τχ,ψ⟩⟩ + (−1)^{|X||χ|}⟨⟨χ,τψ⟩⟩ = 0`.
    A,
    /// `⟨⟨τχ,ψ⟩⟩ + (−1)^{|X||χ| + |X|}⟨⟨χ,τψ⟩⟩ = 0`.
    B,
}

/// Skew residual of `τ(X)` over homogeneous pairs. Mixed vectors are skipped.
pub fn check_graded_skew(
    family: &Family,
    x: Basis,
    vectors: &[SuperFunction],
    convention: SkewConvention,
) -> Result<f64> {
    let homogeneous: Vec<(&SuperFunction, u32)> = vectors
        .iter()
        .filter_map(|v| v.parity().degree().map(|d| (v, d)))
        .collect();
    let images: Vec<SuperFunction> = homogeneous
        .iter()
        .map(|(v, _)| family.tau(x, v))
        .collect::<Result<_>>()?;
    let dx = x.degree();
    let mut worst: f64 = 0.0;
    for (i, &(chi, dchi)) in homogeneous.iter().enumerate() {
        let mut exponent = dx * dchi;
        if convention == SkewConvention::B {
            exponent += dx;
        }
        let sign = if exponent.is_multiple_of(2) { 1.0 } else { -1.0 };
        for (j, &(psi, _)) in homogeneous.iter().enumerate() {
            let first = super_inner_product(&images[i], psi)?;
            let second = super_inner_product(chi, &images[j])?;
            worst = worst.max((&first + &second.scale(sign)).max_abs());
        }
    }
    Ok(worst)
}

/// Skew residuals of all six basis vectors under both conventions.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewReport {
    pub a: [f64; 6],
    pub b: [f64; 6],
}

impl SkewReport {
    pub fn compute(family: &Family, vectors: &[SuperFunction]) -> Result<SkewReport> {
        let mut report = SkewReport { a: [0.0; 6], b: [0.0; 6] };
        for x in Basis::ALL {
            report.a[x.index()] = check_graded_skew(family, x, vectors, SkewConvention::A)?;
            report.b[x.index()] = check_graded_skew(family, x, vectors, SkewConvention::B)?;
        }
        Ok(report)
    }

    pub fn max_a(&self) -> f64 {
        self.a.iter().fold(0.0, |m: f64, &x| m.max(x))
    }

    pub fn max_b(&self) -> f64 {
        self.b.iter().fold(0.0, |m: f64, &x| m.max(x))
    }

    /// Conventions satisfied at tolerance `tol` on every basis vector.
    pub fn holding(&self, tol: f64) -> Vec<SkewConvention> {
        let mut out = Vec::new();
        if self.max_a() <= tol {
            out.push(SkewConvention::A);
        }
        if self.max_b() <= tol {
            out.push(SkewConvention::B);
        }
        out
    }
}

/// Residual of `τ(X)τ(Y) − (−1)^{|X||Y|}τ(Y)τ(X) − τ([X,Y])` on the 15
/// pairs of distinct basis vectors.
pub fn check_bracket_compat(family: &Family, vectors: &[SuperFunction]) -> Result<Vec<(Basis, Basis, f64)>> {
    let mut out = Vec::with_capacity(15);
    for (n, &x) in Basis::ALL.iter().enumerate() {
        for &y in &Basis::ALL[n + 1..] {
            let sign = if x.degree() * y.degree() == 1 { -1.0 } else { 1.0 };
            let xy = bracket(&AlgebraVector::basis(x), &AlgebraVector::basis(y));
            let pool = &StandardGenerators::get().pool;
            let mut worst: f64 = 0.0;
            for psi in vectors {
                let lhs = family.tau(x, &family.tau(y, psi)?)?;
                let swapped = family.tau(y, &family.tau(x, psi)?)?;
                let rhs = family.tau_vector(&xy, psi)?;
                let diff = lhs.sub(&swapped.scale(&GrassmannElement::scalar(pool, sign)))?.sub(&rhs)?;
                worst = worst.max(diff.body().residual_norm()?);
            }
            out.push((x, y, worst));
        }
    }
    Ok(out)
}

/// `max ‖τ(g·X)ψ − ρ_o(g)τ(X)ρ_o(g⁻¹)ψ‖` for odd basis `X`.
pub fn check_equivariance(family: &Family, samples: &[BodyElement], vectors: &[SuperFunction]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for g in samples {
        let inv = g.inverse();
        for x in Basis::ODD {
            let moved_x = adjoint_action(g, &AlgebraVector::basis(x));
            for psi in vectors {
                let lhs = family.tau_vector(&moved_x, psi)?;
                let rhs = family.rho_o(g, &family.tau(x, &family.rho_o(&inv, psi)?)?)?;
                worst = worst.max(lhs.distance(&rhs)?);
            }
        }
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    /// Words applied, counting every start vector.
    pub words: usize,
    /// Images that left the test class.
    pub failures: usize,
    pub max_len: usize,
}

/// Applies every `τ`-word of length `1..=max_len` to the start vectors and
/// checks each image stays in the Gaussian test class. Zero images are not
/// extended further.
pub fn check_domain_closure(family: &Family, vectors: &[SuperFunction], max_len: usize) -> Result<ClosureReport> {
    let mut report = ClosureReport { words: 0, failures: 0, max_len };
    let mut level: Vec<SuperFunction> = vectors.to_vec();
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(level.len() * 6);
        for v in &level {
            for x in Basis::ALL {
                let image = family.tau(x, v)?;
                report.words += 1;
                if image.validate_class().is_err() {
                    report.failures += 1;
                }
                if !image.body().is_zero() {
                    next.push(image);
                }
            }
        }
        level = next;
    }
    Ok(report)
}

/// `max |⟨⟨χ,ψ⟩⟩_Berezin − ⟨⟨χ,ψ⟩⟩_components|` over all vector pairs.
pub fn check_berezin_realization(vectors: &[SuperFunction]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for chi in vectors {
        for psi in vectors {
            let berezin = super_inner_product(chi, psi)?;
            let displayed = super_inner_product_components(chi, psi)?;
            worst = worst.max(berezin.distance(&displayed));
        }
    }
    Ok(worst)
}

/// Super Hilbert space predicates for the family's space.
pub fn check_shs(family: &Family, vectors: &[SuperFunction]) -> Result<ShsReport> {
    check_shs_conditions(family.space(), vectors)
}
