// SPDX-License-Identifier: Apache-2.0

//! Superfunctions `ψ(x, ξ, η)` with Gaussian-type even dependence, the two
//! pairings of a super Hilbert space, and the standard / modified super
//! Hilbert space predicates.
//!
//! A [`SuperFunction`] is stored in combined form: one [`PolyGauss`] whose
//! Grassmann coefficients may contain the space's odd variables. Component
//! `ψ_S` for an odd-variable subset `S` is the factor in `ψ = Σ_S ξ^S ψ_S`
//! with the variable monomial on the left.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussfun::{Exponent, PolyGauss};
use crate::grassmann::{
    merge_sign, Generator, GeneratorPool, GeneratorRole, GrassmannElement, Mask, Parity,
};

/// One summand `sign * ∫ conj(χ_left) ψ_right` of a pairing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairingTerm {
    pub left: Mask,
    pub right: Mask,
    pub sign: f64,
}

impl PairingTerm {
    pub fn new(left: Mask, right: Mask, sign: f64) -> Self {
        PairingTerm { left, right, sign }
    }
}

/// Shape of `H = C^∞(R^{0|q}; L²(R^p))` together with its scalar product and
/// super scalar product, both given componentwise.
#[derive(Clone, Debug)]
pub struct SuperHilbertSpec {
    pool: Arc<GeneratorPool>,
    p: usize,
    odd_vars: Vec<Generator>,
    scalar: Vec<PairingTerm>,
    super_: Vec<PairingTerm>,
}

impl PartialEq for SuperHilbertSpec {
    fn eq(&self, other: &Self) -> bool {
        self.pool.id() == other.pool.id()
            && self.p == other.p
            && self.odd_vars == other.odd_vars
            && self.scalar == other.scalar
            && self.super_ == other.super_
    }
}

impl SuperHilbertSpec {
    pub fn new(
        pool: &Arc<GeneratorPool>,
        p: usize,
        mut odd_vars: Vec<Generator>,
        scalar: Vec<PairingTerm>,
        super_: Vec<PairingTerm>,
    ) -> Result<Self> {
        if p > 2 {
            return Err(Error::Domain(format!("at most two even variables, got {p}")));
        }
        odd_vars.sort();
        odd_vars.dedup();
        for &v in &odd_vars {
            if v.index() >= pool.len() || pool.role(v) != GeneratorRole::Variable {
                return Err(Error::Domain(format!(
                    "odd variable #{} is not a variable generator",
                    v.index()
                )));
            }
        }
        let var_mask = odd_vars.iter().fold(0, |m, g| m | g.mask());
        for t in scalar.iter().chain(super_.iter()) {
            if (t.left | t.right) & !var_mask != 0 {
                return Err(Error::Domain("pairing refers to a foreign component".into()));
            }
        }
        Ok(SuperHilbertSpec {
            pool: pool.clone(),
            p,
            odd_vars,
            scalar,
            super_,
        })
    }

    pub fn pool(&self) -> &Arc<GeneratorPool> {
        &self.pool
    }

    /// Number of even variables.
    pub fn even_dim(&self) -> usize {
        self.p
    }

    /// Number of odd variables.
    pub fn odd_dim(&self) -> usize {
        self.odd_vars.len()
    }

    pub fn odd_vars(&self) -> &[Generator] {
        &self.odd_vars
    }

    pub fn var_mask(&self) -> Mask {
        self.odd_vars.iter().fold(0, |m, g| m | g.mask())
    }

    pub fn scalar_pairing(&self) -> &[PairingTerm] {
        &self.scalar
    }

    pub fn super_pairing(&self) -> &[PairingTerm] {
        &self.super_
    }

    /// All odd-variable subsets, in increasing mask order.
    pub fn components(&self) -> Vec<Mask> {
        let q = self.odd_vars.len();
        let mut out: Vec<Mask> = (0..(1u32 << q))
            .map(|bits| {
                self.odd_vars
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits & (1 << i) != 0)
                    .fold(0, |m, (_, g)| m | g.mask())
            })
            .collect();
        out.sort();
        out
    }

    /// Parity of the component indexed by `subset`.
    pub fn component_parity(subset: Mask) -> Parity {
        Parity::from_degree(subset.count_ones())
    }
}

/// Element `ψ` of a super Hilbert space, as a test vector.
#[derive(Clone, Debug)]
pub struct SuperFunction {
    space: Arc<SuperHilbertSpec>,
    body: PolyGauss,
}

impl SuperFunction {
    /// Wraps a combined function. Rejects functions over the wrong number of
    /// even variables or carrying odd variables foreign to the space.
    pub fn new(space: &Arc<SuperHilbertSpec>, body: PolyGauss) -> Result<Self> {
        if body.nvars() != space.p {
            return Err(Error::SpaceMismatch(format!(
                "function of {} even variable(s) in a space with {}",
                body.nvars(),
                space.p
            )));
        }
        if body.pool().id() != space.pool.id() {
            return Err(Error::PoolMismatch);
        }
        let foreign = space.pool.role_mask(GeneratorRole::Variable) & !space.var_mask();
        if body.support() & foreign != 0 {
            return Err(Error::SpaceMismatch("function depends on a foreign odd variable".into()));
        }
        Ok(SuperFunction {
            space: space.clone(),
            body,
        })
    }

    /// `Σ_S ξ^S ψ_S`.
    pub fn from_components<I>(space: &Arc<SuperHilbertSpec>, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Mask, PolyGauss)>,
    {
        let mut body = PolyGauss::zero(&space.pool, space.p);
        for (subset, f) in components {
            if subset & !space.var_mask() != 0 {
                return Err(Error::SpaceMismatch("component outside the space".into()));
            }
            let mono = GrassmannElement::from_terms(&space.pool, [(subset, Complex64::new(1.0, 0.0))]);
            body = body.add(&f.scale(&mono));
        }
        Self::new(space, body)
    }

    pub fn space(&self) -> &Arc<SuperHilbertSpec> {
        &self.space
    }

    pub fn body(&self) -> &PolyGauss {
        &self.body
    }

    pub fn into_body(self) -> PolyGauss {
        self.body
    }

    /// Same space, new combined function.
    pub fn with_body(&self, body: PolyGauss) -> Result<Self> {
        Self::new(&self.space, body)
    }

    /// The coefficient function `ψ_S` of the odd monomial `subset`.
    pub fn component(&self, subset: Mask) -> PolyGauss {
        let vars = self.space.var_mask();
        let pool = self.space.pool.clone();
        self.body.map_coefficients(|c| {
            GrassmannElement::from_terms(
                &pool,
                c.terms()
                    .filter(|(m, _)| m & vars == subset)
                    .map(|(m, z)| (m & !vars, z * merge_sign(subset, m & !vars))),
            )
        })
    }

    /// Parity of a homogeneous vector, judged on its odd-variable components.
    pub fn parity(&self) -> Parity {
        let mut seen = [false, false];
        for s in self.space.components() {
            if !self.component(s).is_zero() {
                seen[(s.count_ones() % 2) as usize] = true;
            }
        }
        match seen {
            [_, false] => Parity::Even,
            [false, true] => Parity::Odd,
            [true, true] => Parity::Mixed,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        self.with_body(self.body.add(&other.body))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        self.with_body(self.body.sub(&other.body))
    }

    /// Left multiplication by a Grassmann scalar.
    pub fn scale(&self, factor: &GrassmannElement) -> Self {
        SuperFunction {
            space: self.space.clone(),
            body: self.body.scale(factor),
        }
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if *self.space == *other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch("vectors live in different spaces".into()))
        }
    }

    /// Residual norm of `self - other`, see [`PolyGauss::residual_norm`].
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.check_space(other)?;
        self.body.distance(&other.body)
    }

    /// Exact substitution `ξ -> ξ + shift` for odd variables and
    /// `x_axis -> x_axis + shift` for even ones.
    pub fn substitute(
        &self,
        odd_shifts: &[(Generator, GrassmannElement)],
        even_shifts: &[(usize, GrassmannElement)],
    ) -> Result<Self> {
        let mut replacements = Vec::with_capacity(odd_shifts.len());
        for (g, s) in odd_shifts {
            if !self.space.odd_vars.contains(g) {
                return Err(Error::SpaceMismatch(format!(
                    "`{}` is not an odd variable of the space",
                    self.space.pool.name(*g)
                )));
            }
            if s.parity() != Parity::Odd && !s.is_zero() {
                return Err(Error::Parity("odd variable shifted by a non-odd amount".into()));
            }
            let var = GrassmannElement::generator(&self.space.pool, *g);
            replacements.push((*g, &var + s));
        }
        let mut body = if replacements.is_empty() {
            self.body.clone()
        } else {
            self.body.try_map_coefficients(|c| c.substitute(&replacements))?
        };
        for (axis, s) in even_shifts {
            body = body.translate(*axis, s)?;
        }
        self.with_body(body)
    }

    /// Checks the vector lies in the Gaussian test class of its space: the
    /// right shape, decaying in every term, finite, and free of coordinate
    /// and scratch generators.
    pub fn validate_class(&self) -> Result<()> {
        let pool = &self.space.pool;
        let banned = pool.role_mask(GeneratorRole::Coordinate) | pool.role_mask(GeneratorRole::Auxiliary);
        if self.body.support() & banned != 0 {
            return Err(Error::Domain("vector depends on coordinate or scratch generators".into()));
        }
        if !self.body.is_finite() {
            return Err(Error::Domain("non-finite coefficient".into()));
        }
        if self.space.p > 0 && !self.body.is_integrable() {
            return Err(Error::Domain("term without gaussian decay".into()));
        }
        Self::new(&self.space, self.body.clone()).map(|_| ())
    }
}

fn check_same(chi: &SuperFunction, psi: &SuperFunction) -> Result<()> {
    chi.check_space(psi)
}

fn pairing(terms: &[PairingTerm], chi: &SuperFunction, psi: &SuperFunction) -> Result<GrassmannElement> {
    check_same(chi, psi)?;
    let mut total = GrassmannElement::zero(&chi.space.pool);
    let mut cache_l: BTreeMap<Mask, PolyGauss> = BTreeMap::new();
    let mut cache_r: BTreeMap<Mask, PolyGauss> = BTreeMap::new();
    for t in terms {
        let l = cache_l.entry(t.left).or_insert_with(|| chi.component(t.left)).clone();
        let r = cache_r.entry(t.right).or_insert_with(|| psi.component(t.right)).clone();
        if l.is_zero() || r.is_zero() {
            continue;
        }
        total += &PolyGauss::l2_pair(&l, &r)?.scale(t.sign);
    }
    Ok(total)
}

/// `⟨χ, ψ⟩`, summed componentwise.
pub fn inner_product(chi: &SuperFunction, psi: &SuperFunction) -> Result<GrassmannElement> {
    pairing(&chi.space.scalar, chi, psi)
}

/// `⟨⟨χ, ψ⟩⟩` through the Berezin-Lebesgue integral of `conj(χ) ψ`.
pub fn super_inner_product(chi: &SuperFunction, psi: &SuperFunction) -> Result<GrassmannElement> {
    check_same(chi, psi)?;
    let vars = chi.space.odd_vars.clone();
    let product = chi.body.conj().multiply(&psi.body)?;
    let reduced = product.try_map_coefficients(|c| c.berezin_integral(&vars))?;
    reduced.integrate()
}

/// `⟨⟨χ, ψ⟩⟩` from the space's componentwise formula.
pub fn super_inner_product_components(chi: &SuperFunction, psi: &SuperFunction) -> Result<GrassmannElement> {
    pairing(&chi.space.super_, chi, psi)
}

/// `‖ψ‖` from the scalar product.
pub fn norm(psi: &SuperFunction) -> Result<f64> {
    Ok(inner_product(psi, psi)?.body().re.max(0.0).sqrt())
}

/// Outcome of the super Hilbert space predicates on a finite test suite.
#[derive(Clone, Debug, PartialEq)]
pub struct ShsReport {
    /// Homogeneous pairs examined.
    pub pairs: usize,
    /// `max |⟨x, y⟩|` over even `x` and odd `y`.
    pub shs1_residual: f64,
    /// `max |⟨⟨x, y⟩⟩ - i^{|x|} ⟨x, y⟩|`.
    pub shs2_residual: f64,
    pub shs2_holds: bool,
    /// `max |body ⟨⟨χ, ψ⟩⟩| / (‖χ‖ ‖ψ‖)`: the boundedness surrogate.
    pub bound_constant: f64,
    /// `max(0, |body ⟨⟨χ, ψ⟩⟩| - ‖χ‖ ‖ψ‖)`.
    pub bound_violation: f64,
}

impl ShsReport {
    pub fn shs1_holds(&self, tol: f64) -> bool {
        self.shs1_residual <= tol
    }

    pub fn bounded(&self, tol: f64) -> bool {
        self.bound_violation <= tol
    }
}

/// Evaluates the orthogonality condition, the standard `i^{|x|}` relation and
/// the continuity surrogate on all pairs of homogeneous test vectors.
pub fn check_shs_conditions(space: &Arc<SuperHilbertSpec>, vectors: &[SuperFunction]) -> Result<ShsReport> {
    const HOLD_TOL: f64 = 1e-10;
    let homogeneous: Vec<(&SuperFunction, u32, f64)> = vectors
        .iter()
        .filter(|v| *v.space == **space)
        .filter_map(|v| v.parity().degree().map(|d| (v, d)))
        .map(|(v, d)| norm(v).map(|n| (v, d, n)))
        .collect::<Result<_>>()?;
    let i = Complex64::new(0.0, 1.0);
    let mut report = ShsReport {
        pairs: 0,
        shs1_residual: 0.0,
        shs2_residual: 0.0,
        shs2_holds: true,
        bound_constant: 0.0,
        bound_violation: 0.0,
    };
    for &(x, dx, nx) in &homogeneous {
        for &(y, dy, ny) in &homogeneous {
            report.pairs += 1;
            let sp = inner_product(x, y)?;
            let ssp = super_inner_product(x, y)?;
            if dx != dy {
                report.shs1_residual = report.shs1_residual.max(sp.max_abs());
            }
            let phase = i.powu(dx);
            report.shs2_residual = report.shs2_residual.max(ssp.distance(&sp.scale(phase)));
            let lhs = ssp.body().norm();
            if nx * ny > 0.0 {
                report.bound_constant = report.bound_constant.max(lhs / (nx * ny));
            }
            report.bound_violation = report.bound_violation.max(lhs - nx * ny);
        }
    }
    report.shs2_holds = report.shs2_residual <= HOLD_TOL;
    Ok(report)
}

/// Physicists' Hermite polynomial coefficients, lowest degree first.
fn hermite(n: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 2.0];
    for k in 1..n {
        // H_{k+1} = 2x H_k - 2k H_{k-1}
        let mut next = vec![0.0; k + 2];
        for (d, &c) in cur.iter().enumerate() {
            next[d + 1] += 2.0 * c;
        }
        for (d, &c) in prev.iter().enumerate() {
            next[d] -= 2.0 * k as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_n(x) H_m(y) exp(-(x² + y²)/2)` restricted to the first `nvars` axes.
pub fn hermite_function(pool: &Arc<GeneratorPool>, nvars: usize, degrees: [usize; 2]) -> PolyGauss {
    let one = Complex64::new(1.0, 0.0);
    let mut exponent = Exponent::ZERO;
    for v in 0..nvars {
        exponent.quad[v] = one;
    }
    let hx = hermite(degrees[0]);
    let hy = if nvars == 2 { hermite(degrees[1]) } else { vec![1.0] };
    let mut poly = Vec::new();
    for (i, &a) in hx.iter().enumerate() {
        for (j, &b) in hy.iter().enumerate() {
            if a * b != 0.0 {
                poly.push(([i as u16, j as u16], GrassmannElement::scalar(pool, a * b)));
            }
        }
    }
    PolyGauss::from_term(pool, nvars, exponent, poly)
}

/// `exp(i ω · x) exp(-|x - c|² / 2)`, the modulated translate in the suite.
pub fn modulated_translate(pool: &Arc<GeneratorPool>, nvars: usize, shift: f64, omega: f64) -> PolyGauss {
    let base = hermite_function(pool, nvars, [0, 0]);
    let mut f = base;
    for v in 0..nvars {
        f = f
            .translate(v, &GrassmannElement::scalar(pool, -shift))
            .expect("axis in range");
    }
    let lin: Vec<GrassmannElement> = (0..nvars)
        .map(|_| GrassmannElement::scalar(pool, Complex64::new(0.0, omega)))
        .collect();
    let phase = PolyGauss::exp_affine(&GrassmannElement::zero(pool), &lin).expect("even exponent");
    f.multiply(&phase).expect("same shape")
}

/// Even-variable profiles used to populate each component.
pub fn base_profiles(pool: &Arc<GeneratorPool>, nvars: usize) -> Vec<PolyGauss> {
    match nvars {
        0 => vec![PolyGauss::constant(GrassmannElement::one(pool), 0)],
        1 => {
            let mut v: Vec<PolyGauss> = (0..=3).map(|n| hermite_function(pool, 1, [n, 0])).collect();
            v.push(modulated_translate(pool, 1, 0.5, 0.8));
            v
        }
        _ => {
            let mut v: Vec<PolyGauss> = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2], [3, 0]]
                .iter()
                .map(|&d| hermite_function(pool, 2, d))
                .collect();
            v.push(modulated_translate(pool, 2, 0.5, 0.8));
            v
        }
    }
}

/// `ψ / ‖ψ‖`.
pub fn normalized(psi: &SuperFunction) -> Result<SuperFunction> {
    let n = norm(psi)?;
    if n == 0.0 {
        return Err(Error::Domain("cannot normalize the zero vector".into()));
    }
    Ok(psi.scale(&GrassmannElement::scalar(&psi.space.pool, 1.0 / n)))
}

/// Homogeneous unit test vectors: every base profile placed in every
/// component.
pub fn default_test_vectors(space: &Arc<SuperHilbertSpec>) -> Vec<SuperFunction> {
    let profiles = base_profiles(&space.pool, space.p);
    let mut out = Vec::new();
    for s in space.components() {
        for f in &profiles {
            let v = SuperFunction::from_components(space, [(s, f.clone())]).expect("valid component");
            out.push(normalized(&v).expect("nonzero profile"));
        }
    }
    out
}

/// The homogeneous suite plus unit mixed-parity combinations, at least six
/// vectors.
pub fn test_set(space: &Arc<SuperHilbertSpec>) -> Vec<SuperFunction> {
    let mut out = default_test_vectors(space);
    let homogeneous = out.clone();
    let weights = [
        Complex64::new(1.0, 0.5),
        Complex64::new(-0.3, 0.8),
        Complex64::new(0.6, -0.2),
    ];
    let mut j = 0usize;
    while out.len() < 6 || j < 2 {
        let w = weights[j % weights.len()];
        let mut acc = homogeneous[0].scale(&GrassmannElement::zero(&space.pool));
        for (n, v) in homogeneous.iter().enumerate() {
            let coeff = w.powu((n + j) as u32 % 4 + 1);
            acc = acc.add(&v.scale(&GrassmannElement::scalar(&space.pool, coeff))).expect("same space");
        }
        out.push(normalized(&acc).expect("independent profiles"));
        j += 1;
    }
    out
}
