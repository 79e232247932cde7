// SPDX-License-Identifier: Apache-2.0

//! The seven representation families of `G`.
//!
//! Each family is given by its integrated action `ρ(g)`; `ρ_o` and `τ` are
//! derived from it. All families share one generator pool, laid out by
//! [`StandardGenerators`].

mod checks;
mod demo;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussfun::PolyGauss;
use crate::grassmann::{Generator, GeneratorPool, GeneratorRole, GrassmannElement};
use crate::heisgroup::{AlgebraVector, Basis, BodyElement, GroupElement, SampleSlots};
use crate::superspace::{PairingTerm, SuperFunction, SuperHilbertSpec};

pub use checks::{
    check_berezin_realization, check_bracket_compat, check_domain_closure, check_equivariance,
    check_graded_skew, check_homomorphism, check_inverse, check_shs, check_unitarity_rho_o,
    ClosureReport, SkewConvention, SkewReport, UnitarityReport,
};
pub use demo::{compare_family7_family5, demo_r01, DemoR01Report, LimitReport};

/// The shared pool and named handles into it.
#[derive(Clone, Debug)]
pub struct StandardGenerators {
    pub pool: Arc<GeneratorPool>,
    pub kappa: Generator,
    pub lambda: Generator,
    pub sigma: [Generator; 2],
    pub alpha: Generator,
    pub beta: Generator,
    pub gamma: Generator,
    pub alpha_h: Generator,
    pub beta_h: Generator,
    pub gamma_h: Generator,
    pub xi: Generator,
    pub eta: Generator,
    pub eps: [Generator; 2],
    pub theta: Generator,
}

const LAYOUT: [(&str, GeneratorRole); 15] = [
    ("kappa", GeneratorRole::Parameter),
    ("lambda", GeneratorRole::Parameter),
    ("sigma1", GeneratorRole::Parameter),
    ("sigma2", GeneratorRole::Parameter),
    ("alpha", GeneratorRole::Coordinate),
    ("beta", GeneratorRole::Coordinate),
    ("gamma", GeneratorRole::Coordinate),
    ("alpha_h", GeneratorRole::Coordinate),
    ("beta_h", GeneratorRole::Coordinate),
    ("gamma_h", GeneratorRole::Coordinate),
    ("xi", GeneratorRole::Variable),
    ("eta", GeneratorRole::Variable),
    ("eps1", GeneratorRole::Auxiliary),
    ("eps2", GeneratorRole::Auxiliary),
    ("theta", GeneratorRole::Auxiliary),
];

impl StandardGenerators {
    /// The process-wide instance.
    pub fn get() -> &'static StandardGenerators {
        static CELL: OnceLock<StandardGenerators> = OnceLock::new();
        CELL.get_or_init(|| {
            let pool = GeneratorPool::new(LAYOUT).expect("fixed layout is valid");
            let g = |n: &str| pool.lookup(n).expect("name in layout");
            StandardGenerators {
                kappa: g("kappa"),
                lambda: g("lambda"),
                sigma: [g("sigma1"), g("sigma2")],
                alpha: g("alpha"),
                beta: g("beta"),
                gamma: g("gamma"),
                alpha_h: g("alpha_h"),
                beta_h: g("beta_h"),
                gamma_h: g("gamma_h"),
                xi: g("xi"),
                eta: g("eta"),
                eps: [g("eps1"), g("eps2")],
                theta: g("theta"),
                pool,
            }
        })
    }

    /// Slots for the left factor `g` of a sampled product.
    pub fn slots_g(&self) -> SampleSlots {
        SampleSlots { odd: [self.alpha, self.beta, self.gamma], souls: self.sigma }
    }

    /// Slots for the right factor `h` of a sampled product.
    pub fn slots_h(&self) -> SampleSlots {
        SampleSlots { odd: [self.alpha_h, self.beta_h, self.gamma_h], souls: self.sigma }
    }

    fn el(&self, g: Generator) -> GrassmannElement {
        GrassmannElement::generator(&self.pool, g)
    }
}

/// Parameters of one family. `κ` and `λ` are references into the shared
/// pool; an absent reference stands for zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyParams {
    pub family: u8,
    pub k: f64,
    pub l: f64,
    pub p: f64,
    pub kappa: Option<Generator>,
    pub lambda: Option<Generator>,
}

impl FamilyParams {
    /// Default values `k = 1.5`, `ℓ = 0.7`, `p = 0.5`, `κ`, `λ` the first two
    /// parameter generators.
    pub fn default_for(family: u8) -> FamilyParams {
        let s = StandardGenerators::get();
        FamilyParams {
            family,
            k: 1.5,
            l: 0.7,
            p: 0.5,
            kappa: Some(s.kappa),
            lambda: Some(s.lambda),
        }
    }

    /// Checks the family id and the nonzero-ness conditions.
    pub fn validate(&self) -> Result<()> {
        if !(1..=7).contains(&self.family) {
            return Err(Error::InvalidParams(format!("unknown family {}", self.family)));
        }
        for (name, v) in [("k", self.k), ("l", self.l), ("p", self.p)] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} must be finite")));
            }
        }
        let pool = &StandardGenerators::get().pool;
        for g in [self.kappa, self.lambda].into_iter().flatten() {
            if g.index() >= pool.len() || pool.role(g) != GeneratorRole::Parameter {
                return Err(Error::InvalidParams("odd parameters must be parameter generators".into()));
            }
        }
        let needs = requirements(self.family);
        let f = self.family;
        if needs.k && self.k == 0.0 {
            return Err(Error::InvalidParams(format!("family {f} requires nonzero k")));
        }
        if needs.p && self.p == 0.0 {
            return Err(Error::InvalidParams(format!("family {f} requires nonzero p")));
        }
        if needs.kappa && self.kappa.is_none() {
            return Err(Error::InvalidParams(format!("family {f} requires nonzero kappa")));
        }
        Ok(())
    }
}

/// Which parameters must be nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Requirements {
    pub k: bool,
    pub p: bool,
    pub kappa: bool,
}

pub fn requirements(family: u8) -> Requirements {
    let (k, p, kappa) = match family {
        2 | 4 | 6 => (false, false, true),
        3 => (true, false, false),
        5 => (true, false, true),
        7 => (true, true, true),
        _ => (false, false, false),
    };
    Requirements { k, p, kappa }
}

/// Parameters each family reads, in display order.
pub fn used_params(family: u8) -> &'static [&'static str] {
    match family {
        1 => &["k", "l", "kappa", "lambda"],
        2 => &["kappa"],
        3 => &["k"],
        4 | 5 => &["k", "kappa"],
        6 => &["k", "l", "kappa"],
        7 => &["k", "p", "kappa"],
        _ => &[],
    }
}

/// `(p, q)`: number of even and odd variables of the family's space.
pub fn shape(family: u8) -> Option<(usize, usize)> {
    match family {
        1 => Some((0, 0)),
        2 => Some((2, 0)),
        3..=5 => Some((1, 1)),
        6 => Some((0, 2)),
        7 => Some((1, 2)),
        _ => None,
    }
}

/// Human-readable form of `ρ(a,b,α,β,c,γ)ψ`.
pub fn formula(family: u8) -> &'static str {
    match family {
        1 => "exp(i(ak + bl + alpha kappa + beta lambda)) psi",
        2 => "psi(x+b, y+a) exp(i alpha kappa x) exp(i beta kappa y) exp(i(gamma + (beta a + b alpha)/2) kappa)",
        3 => "psi(x+ka, xi-k alpha) exp(ibx) exp(-i beta xi) exp(ik(c + (ab - alpha beta)/2))",
        4 => "psi(x+a, xi-alpha) exp(ib(k + xi kappa)) exp(i beta kappa x) exp(i(gamma + (beta a - b alpha)/2) kappa)",
        5 => "psi(x+a, xi-alpha) exp(ib(xk + xi kappa)) exp(i beta(x kappa - xi k)) exp(i(gamma + (beta a - b alpha)/2) kappa) exp(ik(c + (ab + beta alpha)/2))",
        6 => "psi(xi-beta, eta-alpha) exp(ia(xi kappa + k)) exp(ib(eta kappa + l)) exp(i(gamma - (beta a + b alpha)/2) kappa)",
        7 => "psi(x+a-pb, xi-alpha, eta-beta) exp(ib(xk + xi kappa + p eta kappa)) exp(i beta(x kappa - xi k)) exp(i(gamma - pb beta + (beta a - b alpha)/2) kappa) exp(ik(c + (ab + beta alpha - pb^2)/2))",
        _ => "",
    }
}

/// Whether checks that presuppose a unitary `ρ_o` run in report mode.
pub fn report_mode(family: u8) -> bool {
    family >= 4
}

/// A family with validated parameters and its Hilbert space.
#[derive(Clone, Debug)]
pub struct Family {
    params: FamilyParams,
    space: Arc<SuperHilbertSpec>,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family {}", self.params.family)
    }
}

impl Family {
    pub fn new(params: FamilyParams) -> Result<Family> {
        params.validate()?;
        Ok(Self::build(params))
    }

    /// Skips the nonzero-ness checks; used for degenerate limits.
    pub(crate) fn build(params: FamilyParams) -> Family {
        let space = Arc::new(hilbert_spec(params.family).expect("family id checked"));
        Family { params, space }
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    pub fn id(&self) -> u8 {
        self.params.family
    }

    pub fn space(&self) -> &Arc<SuperHilbertSpec> {
        &self.space
    }

    fn check_vector(&self, psi: &SuperFunction) -> Result<()> {
        if **psi.space() == *self.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(format!("vector is not in the space of {self}")))
        }
    }

    /// `ρ(g)ψ`: substitution, then the phase factors in printed order.
    pub fn rho(&self, g: &GroupElement, psi: &SuperFunction) -> Result<SuperFunction> {
        self.check_vector(psi)?;
        self.rho_unchecked(g, psi)
    }

    pub(crate) fn rho_unchecked(&self, g: &GroupElement, psi: &SuperFunction) -> Result<SuperFunction> {
        let s = StandardGenerators::get();
        if g.pool().id() != s.pool.id() {
            return Err(Error::PoolMismatch);
        }
        let pool = &s.pool;
        let nvars = psi.body().nvars();
        let i = Complex64::new(0.0, 1.0);
        let sc = |v: f64| GrassmannElement::scalar(pool, v);
        let zero = GrassmannElement::zero(pool);
        let opt = |g: Option<Generator>| g.map_or_else(|| zero.clone(), |g| s.el(g));
        let (k, l, pp) = (sc(self.params.k), sc(self.params.l), sc(self.params.p));
        let kappa = opt(self.params.kappa);
        let lambda = opt(self.params.lambda);
        let (xi, eta) = (s.el(s.xi), s.el(s.eta));
        let (a, b, c) = (g.a(), g.b(), g.c());
        let (alpha, beta, gamma) = (g.alpha(), g.beta(), g.gamma());
        let half = |x: GrassmannElement| x.scale(0.5);
        // exp(i·(constant + Σ lin_v x_v))
        let phase = |constant: GrassmannElement, lin: &[GrassmannElement]| -> Result<PolyGauss> {
            let mut l: Vec<GrassmannElement> = lin.iter().map(|x| x.scale(i)).collect();
            l.resize(nvars, zero.clone());
            PolyGauss::exp_affine(&constant.scale(i), &l)
        };
        let (moved, factors) = match self.params.family {
            1 => {
                let e = &(&(&(a * &k) + &(b * &l)) + &(alpha * &kappa)) + &(beta * &lambda);
                (psi.clone(), vec![phase(e, &[])?])
            }
            2 => {
                let moved = psi.substitute(&[], &[(0, b.clone()), (1, a.clone())])?;
                let inner = gamma + &half(&(beta * a) + &(b * alpha));
                (
                    moved,
                    vec![
                        phase(zero.clone(), &[alpha * &kappa])?,
                        phase(zero.clone(), &[zero.clone(), beta * &kappa])?,
                        phase(&inner * &kappa, &[])?,
                    ],
                )
            }
            3 => {
                let moved = psi.substitute(&[(s.xi, -(&k * alpha))], &[(0, &k * a)])?;
                let central = &k * &(c + &half(&(a * b) - &(alpha * beta)));
                (
                    moved,
                    vec![
                        phase(zero.clone(), std::slice::from_ref(b))?,
                        phase(-(beta * &xi), &[])?,
                        phase(central, &[])?,
                    ],
                )
            }
            4 => {
                let moved = psi.substitute(&[(s.xi, -alpha)], &[(0, a.clone())])?;
                let inner = gamma + &half(&(beta * a) - &(b * alpha));
                (
                    moved,
                    vec![
                        phase(b * &(&k + &(&xi * &kappa)), &[])?,
                        phase(zero.clone(), &[beta * &kappa])?,
                        phase(&inner * &kappa, &[])?,
                    ],
                )
            }
            5 => {
                let moved = psi.substitute(&[(s.xi, -alpha)], &[(0, a.clone())])?;
                let inner = gamma + &half(&(beta * a) - &(b * alpha));
                let central = &k * &(c + &half(&(a * b) + &(beta * alpha)));
                (
                    moved,
                    vec![
                        phase(b * &(&xi * &kappa), &[b * &k])?,
                        phase(-(&(beta * &xi) * &k), &[beta * &kappa])?,
                        phase(&inner * &kappa, &[])?,
                        phase(central, &[])?,
                    ],
                )
            }
            6 => {
                let moved = psi.substitute(&[(s.xi, -beta), (s.eta, -alpha)], &[])?;
                let inner = gamma - &half(&(beta * a) + &(b * alpha));
                (
                    moved,
                    vec![
                        phase(a * &(&(&xi * &kappa) + &k), &[])?,
                        phase(b * &(&(&eta * &kappa) + &l), &[])?,
                        phase(&inner * &kappa, &[])?,
                    ],
                )
            }
            7 => {
                let moved = psi.substitute(&[(s.xi, -alpha), (s.eta, -beta)], &[(0, a - &(&pp * b))])?;
                let inner = &(gamma - &(&(&pp * b) * beta)) + &half(&(beta * a) - &(b * alpha));
                let central = &k * &(c + &half(&(&(a * b) + &(beta * alpha)) - &(&pp * &(b * b))));
                (
                    moved,
                    vec![
                        phase(b * &(&(&xi * &kappa) + &(&pp * &(&eta * &kappa))), &[b * &k])?,
                        phase(-(&(beta * &xi) * &k), &[beta * &kappa])?,
                        phase(&inner * &kappa, &[])?,
                        phase(central, &[])?,
                    ],
                )
            }
            f => return Err(Error::InvalidParams(format!("unknown family {f}"))),
        };
        let mut body = moved.into_body();
        for f in &factors {
            body = body.multiply(f)?;
        }
        psi.with_body(body)
    }

    /// `ρ_o(g)ψ`: `ρ` on a body element.
    pub fn rho_o(&self, g: &BodyElement, psi: &SuperFunction) -> Result<SuperFunction> {
        let s = StandardGenerators::get();
        self.rho(&GroupElement::from_body(&s.pool, g), psi)
    }

    /// `τ(X)ψ` for a basis vector, read off from `ρ` along the coordinate line
    /// of `X`: the `ε₁ε₂` coefficient for even `X`, the left `θ` coefficient
    /// for odd `X`.
    pub fn tau(&self, x: Basis, psi: &SuperFunction) -> Result<SuperFunction> {
        self.check_vector(psi)?;
        self.tau_unchecked(x, psi)
    }

    pub(crate) fn tau_unchecked(&self, x: Basis, psi: &SuperFunction) -> Result<SuperFunction> {
        let s = StandardGenerators::get();
        let pool = &s.pool;
        let body = match x.degree() {
            0 => {
                let eps = GrassmannElement::monomial(pool, &s.eps);
                let moved = self.rho_unchecked(&GroupElement::along(pool, x, eps)?, psi)?;
                moved.body().try_map_coefficients(|c| c.berezin_integral(&s.eps))?
            }
            _ => {
                let moved = self.rho_unchecked(&GroupElement::along(pool, x, s.el(s.theta))?, psi)?;
                moved.body().try_map_coefficients(|c| c.left_coefficient(s.theta))?
            }
        };
        psi.with_body(body)
    }

    /// `τ(X)ψ` extended linearly to any real vector `X`.
    pub fn tau_vector(&self, x: &AlgebraVector, psi: &SuperFunction) -> Result<SuperFunction> {
        let s = StandardGenerators::get();
        let mut out = psi.scale(&GrassmannElement::zero(&s.pool));
        for (b, c) in x.components() {
            out = out.add(&self.tau(b, psi)?.scale(&GrassmannElement::scalar(&s.pool, c)))?;
        }
        Ok(out)
    }

    /// `τ(X₁)τ(X₂)⋯τ(X_n)ψ`.
    pub fn tau_word(&self, word: &[Basis], psi: &SuperFunction) -> Result<SuperFunction> {
        let mut out = psi.clone();
        for &x in word.iter().rev() {
            out = self.tau(x, &out)?;
        }
        Ok(out)
    }
}

/// Hilbert space of a family: grading and both pairings.
pub fn hilbert_spec(family: u8) -> Result<SuperHilbertSpec> {
    let s = StandardGenerators::get();
    let (p, q) = shape(family).ok_or_else(|| Error::InvalidParams(format!("unknown family {family}")))?;
    let (x, y) = (s.xi.mask(), s.eta.mask());
    let t = PairingTerm::new;
    let (vars, scalar, super_) = match q {
        0 => (vec![], vec![t(0, 0, 1.0)], vec![t(0, 0, 1.0)]),
        1 => (
            vec![s.xi],
            vec![t(0, 0, 1.0), t(x, x, 1.0)],
            vec![t(0, x, 1.0), t(x, 0, 1.0)],
        ),
        _ => (
            vec![s.xi, s.eta],
            vec![t(0, 0, 1.0), t(x | y, x | y, 1.0), t(x, x, 1.0), t(y, y, 1.0)],
            vec![t(0, x | y, 1.0), t(x | y, 0, 1.0), t(x, y, 1.0), t(y, x, -1.0)],
        ),
    };
    SuperHilbertSpec::new(&s.pool, p, vars, scalar, super_)
}

#[cfg(test)]
mod tests;
