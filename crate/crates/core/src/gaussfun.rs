// SPDX-License-Identifier: Apache-2.0

//! Closed-form calculus on Gaussian-type test functions of up to two even
//! variables.
//!
//! A [`PolyGauss`] is a finite sum of terms `P(x, y) * exp(Q(x, y))` where
//! `P` is a polynomial with Grassmann coefficients and `Q` is a separable
//! quadratic exponent with plain complex coefficients. Every nilpotent part
//! of an exponent is expanded into the polynomial prefactor, so the class is
//! closed under translation (including by nilpotent amounts), multiplication,
//! differentiation and multiplication by coordinates, and all pairings have
//! closed forms through [`gauss_moment`].

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::{GeneratorPool, GrassmannElement, Mask, Parity};

/// Exponents whose coefficients agree to this relative tolerance are merged.
const MERGE_TOLERANCE: f64 = 1e-12;

/// Polynomial degrees along (x, y).
pub type Degree = [u16; 2];

fn zero_c() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `exp(offset + sum_v -quad[v] x_v^2 / 2 + lin[v] x_v)`.
///
/// The offset only scales the term; two exponents differing in the offset
/// alone describe the same shape and are merged.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exponent {
    pub quad: [Complex64; 2],
    pub lin: [Complex64; 2],
    pub offset: Complex64,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent {
        quad: [Complex64::new(0.0, 0.0); 2],
        lin: [Complex64::new(0.0, 0.0); 2],
        offset: Complex64::new(0.0, 0.0),
    };

    /// Gaussian shape `exp(-quad x^2 / 2 + lin x)` in one variable.
    pub fn one_dim(quad: Complex64, lin: Complex64) -> Exponent {
        Exponent {
            quad: [quad, zero_c()],
            lin: [lin, zero_c()],
            offset: zero_c(),
        }
    }

    fn add(&self, other: &Exponent) -> Exponent {
        Exponent {
            quad: [self.quad[0] + other.quad[0], self.quad[1] + other.quad[1]],
            lin: [self.lin[0] + other.lin[0], self.lin[1] + other.lin[1]],
            offset: self.offset + other.offset,
        }
    }

    fn conj(&self) -> Exponent {
        Exponent {
            quad: [self.quad[0].conj(), self.quad[1].conj()],
            lin: [self.lin[0].conj(), self.lin[1].conj()],
            offset: self.offset.conj(),
        }
    }

    fn values(&self) -> [Complex64; 4] {
        [self.quad[0], self.quad[1], self.lin[0], self.lin[1]]
    }

    fn close_to(&self, other: &Exponent) -> bool {
        self.values()
            .iter()
            .zip(other.values().iter())
            .all(|(a, b)| (a - b).norm() <= MERGE_TOLERANCE * (1.0 + a.norm().max(b.norm())))
    }

    fn sort_key(&self) -> [f64; 8] {
        let v = self.values();
        [v[0].re, v[0].im, v[1].re, v[1].im, v[2].re, v[2].im, v[3].re, v[3].im]
    }
}

#[derive(Clone, Debug)]
pub struct GaussTerm {
    pub exponent: Exponent,
    pub poly: BTreeMap<Degree, GrassmannElement>,
}

/// Grassmann-coefficient polynomial times Gaussian-type exponentials.
#[derive(Clone, Debug)]
pub struct PolyGauss {
    pool: Arc<GeneratorPool>,
    nvars: usize,
    terms: Vec<GaussTerm>,
}

/// `∫ x^n exp(-S x^2 / 2 + T x) dx` over the real line.
pub fn gauss_moment(n: u32, s: Complex64, t: Complex64) -> Result<Complex64> {
    if s.re <= 0.0 {
        return Err(Error::Domain(format!(
            "gaussian moment needs Re S > 0, got S = {s}"
        )));
    }
    let ratio = t / s;
    let (mut prev, mut cur) = (zero_c(), Complex64::new(1.0, 0.0));
    for k in 1..=n {
        let next = ratio * cur + prev * ((k - 1) as f64) / s;
        prev = cur;
        cur = next;
    }
    let prefactor = (Complex64::new(2.0 * PI, 0.0) / s).sqrt() * (t * t / (2.0 * s)).exp();
    Ok(prefactor * cur)
}

fn binomial(n: u16, k: u16) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl PolyGauss {
    pub fn zero(pool: &Arc<GeneratorPool>, nvars: usize) -> Self {
        assert!(nvars <= 2, "at most two even variables");
        PolyGauss {
            pool: pool.clone(),
            nvars,
            terms: Vec::new(),
        }
    }

    /// A Grassmann constant, viewed as a function of `nvars` even variables.
    pub fn constant(value: GrassmannElement, nvars: usize) -> Self {
        let pool = value.pool().clone();
        Self::from_term(&pool, nvars, Exponent::ZERO, [([0, 0], value)])
    }

    pub fn from_term<I>(pool: &Arc<GeneratorPool>, nvars: usize, exponent: Exponent, poly: I) -> Self
    where
        I: IntoIterator<Item = (Degree, GrassmannElement)>,
    {
        let mut f = Self::zero(pool, nvars);
        let mut map = BTreeMap::new();
        for (d, c) in poly {
            debug_assert!(d.iter().skip(nvars).all(|&x| x == 0));
            let slot = map.entry(d).or_insert_with(|| GrassmannElement::zero(pool));
            *slot += &c;
        }
        let mut e = exponent;
        for v in nvars..2 {
            e.quad[v] = zero_c();
            e.lin[v] = zero_c();
        }
        f.terms.push(GaussTerm { exponent: e, poly: map });
        f.tidy();
        f
    }

    /// `exp(constant + sum_v linear[v] x_v)` for even Grassmann-valued
    /// coefficients. Bodies go into the exponent; souls are expanded into
    /// the (finite) polynomial prefactor.
    pub fn exp_affine(constant: &GrassmannElement, linear: &[GrassmannElement]) -> Result<Self> {
        let pool = constant.pool().clone();
        let nvars = linear.len();
        if nvars > 2 {
            return Err(Error::Axis { axis: nvars - 1, nvars: 2 });
        }
        for c in std::iter::once(constant).chain(linear.iter()) {
            if !c.same_pool(constant) {
                return Err(Error::PoolMismatch);
            }
            if c.parity() != Parity::Even {
                return Err(Error::Parity("exponent must be even".into()));
            }
        }
        let mut exponent = Exponent::ZERO;
        exponent.offset = constant.body();
        for (v, l) in linear.iter().enumerate() {
            exponent.lin[v] = l.body();
        }
        // nilpotent part N = soul(constant) + sum_v soul(linear[v]) x_v
        let mut nil = Self::constant(constant.soul(), nvars);
        for (v, l) in linear.iter().enumerate() {
            let mut d = [0, 0];
            d[v] = 1;
            nil = nil.add(&Self::from_term(&pool, nvars, Exponent::ZERO, [(d, l.soul())]));
        }
        let mut total = Self::constant(GrassmannElement::one(&pool), nvars);
        let mut power = total.clone();
        let mut k = 1.0;
        loop {
            power = power.multiply(&nil)?.scale(&GrassmannElement::scalar(&pool, 1.0 / k));
            if power.is_zero() {
                break;
            }
            total = total.add(&power);
            k += 1.0;
        }
        let base = Self::from_term(
            &pool,
            nvars,
            exponent,
            [([0, 0], GrassmannElement::one(&pool))],
        );
        base.multiply(&total)
    }

    pub fn pool(&self) -> &Arc<GeneratorPool> {
        &self.pool
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[GaussTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Union of the Grassmann monomials appearing in any coefficient.
    pub fn support(&self) -> Mask {
        self.terms
            .iter()
            .flat_map(|t| t.poly.values())
            .fold(0, |m, c| m | c.support())
    }

    /// True when every term decays in every variable.
    pub fn is_integrable(&self) -> bool {
        self.terms
            .iter()
            .all(|t| (0..self.nvars).all(|v| t.exponent.quad[v].re > 0.0))
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| {
            t.exponent.values().iter().all(|z| z.re.is_finite() && z.im.is_finite())
                && t.poly.values().all(GrassmannElement::is_finite)
        })
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if axis < self.nvars {
            Ok(())
        } else {
            Err(Error::Axis { axis, nvars: self.nvars })
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.pool.id() != other.pool.id() {
            return Err(Error::PoolMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::Domain(format!(
                "functions of {} and {} even variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    /// Drops zero coefficients and empty terms, merges terms with matching
    /// exponents and sorts terms into a canonical order.
    fn tidy(&mut self) {
        let mut merged: Vec<GaussTerm> = Vec::with_capacity(self.terms.len());
        for term in self.terms.drain(..) {
            match merged.iter_mut().find(|m| m.exponent.close_to(&term.exponent)) {
                Some(m) => {
                    let rescale = (term.exponent.offset - m.exponent.offset).exp();
                    for (d, c) in term.poly {
                        let slot = m.poly.entry(d).or_insert_with(|| GrassmannElement::zero(&self.pool));
                        *slot += &(&c * rescale);
                    }
                }
                None => merged.push(term),
            }
        }
        for t in merged.iter_mut() {
            t.poly.retain(|_, c| !c.is_zero());
        }
        merged.retain(|t| !t.poly.is_empty());
        merged.sort_by(|a, b| {
            let (ka, kb) = (a.exponent.sort_key(), b.exponent.sort_key());
            ka.iter()
                .zip(kb.iter())
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        self.terms = merged;
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other).expect("incompatible PolyGauss sum");
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out.tidy();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&GrassmannElement::scalar(&self.pool, -1.0))
    }

    /// Left multiplication of every coefficient by a Grassmann element.
    pub fn scale(&self, factor: &GrassmannElement) -> Self {
        self.map_coefficients(|c| factor * c)
    }

    /// Right multiplication of every coefficient by a Grassmann element.
    pub fn scale_right(&self, factor: &GrassmannElement) -> Self {
        self.map_coefficients(|c| c * factor)
    }

    pub fn map_coefficients<F>(&self, f: F) -> Self
    where
        F: Fn(&GrassmannElement) -> GrassmannElement,
    {
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            for c in t.poly.values_mut() {
                *c = f(c);
            }
        }
        out.tidy();
        out
    }

    pub fn try_map_coefficients<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&GrassmannElement) -> Result<GrassmannElement>,
    {
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            for c in t.poly.values_mut() {
                *c = f(c)?;
            }
        }
        out.tidy();
        Ok(out)
    }

    /// Pointwise product; coefficients of `self` stay on the left.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.pool, self.nvars);
        for ta in &self.terms {
            for tb in &other.terms {
                let mut poly: BTreeMap<Degree, GrassmannElement> = BTreeMap::new();
                for (da, ca) in &ta.poly {
                    for (db, cb) in &tb.poly {
                        let d = [da[0] + db[0], da[1] + db[1]];
                        let prod = ca * cb;
                        match poly.get_mut(&d) {
                            Some(slot) => *slot += &prod,
                            None => {
                                poly.insert(d, prod);
                            }
                        }
                    }
                }
                out.terms.push(GaussTerm {
                    exponent: ta.exponent.add(&tb.exponent),
                    poly,
                });
            }
        }
        out.tidy();
        Ok(out)
    }

    /// Multiplication by the coordinate `x_axis`.
    pub fn mul_coordinate(&self, axis: usize) -> Result<Self> {
        self.check_axis(axis)?;
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            t.poly = std::mem::take(&mut t.poly)
                .into_iter()
                .map(|(mut d, c)| {
                    d[axis] += 1;
                    (d, c)
                })
                .collect();
        }
        Ok(out)
    }

    /// Exact partial derivative along `axis`.
    pub fn differentiate(&self, axis: usize) -> Result<Self> {
        self.check_axis(axis)?;
        let mut out = Self::zero(&self.pool, self.nvars);
        for t in &self.terms {
            let s = t.exponent.quad[axis];
            let tl = t.exponent.lin[axis];
            let mut poly: BTreeMap<Degree, GrassmannElement> = BTreeMap::new();
            let mut push = |d: Degree, c: GrassmannElement| {
                let slot = poly.entry(d).or_insert_with(|| GrassmannElement::zero(&self.pool));
                *slot += &c;
            };
            for (d, c) in &t.poly {
                if d[axis] > 0 {
                    let mut dd = *d;
                    dd[axis] -= 1;
                    push(dd, c * d[axis] as f64);
                }
                // (-S x + T) from the exponent
                push(*d, c * tl);
                let mut du = *d;
                du[axis] += 1;
                push(du, c * (-s));
            }
            out.terms.push(GaussTerm {
                exponent: t.exponent,
                poly,
            });
        }
        out.tidy();
        Ok(out)
    }

    /// Substitutes `x_axis -> x_axis + shift` for an even shift with real body.
    /// The nilpotent part of the shift is applied through a finite Taylor
    /// expansion.
    pub fn translate(&self, axis: usize, shift: &GrassmannElement) -> Result<Self> {
        self.check_axis(axis)?;
        if shift.parity() != Parity::Even {
            return Err(Error::Parity("translation shift must be even".into()));
        }
        let body = shift.body();
        if body.im.abs() > 1e-12 {
            return Err(Error::Domain(format!("translation body must be real, got {body}")));
        }
        let c = body.re;
        let mut shifted = Self::zero(&self.pool, self.nvars);
        for t in &self.terms {
            let s = t.exponent.quad[axis];
            let tl = t.exponent.lin[axis];
            let mut exponent = t.exponent;
            exponent.lin[axis] = tl - s * c;
            exponent.offset += -s * c * c / 2.0 + tl * c;
            let mut poly: BTreeMap<Degree, GrassmannElement> = BTreeMap::new();
            for (d, coeff) in &t.poly {
                let n = d[axis];
                for j in 0..=n {
                    let w = binomial(n, j) * c.powi((n - j) as i32);
                    let mut dd = *d;
                    dd[axis] = j;
                    let slot = poly.entry(dd).or_insert_with(|| GrassmannElement::zero(&self.pool));
                    *slot += &(coeff * w);
                }
            }
            shifted.terms.push(GaussTerm { exponent, poly });
        }
        shifted.tidy();

        let soul = shift.soul();
        let mut result = shifted.clone();
        let mut derivative = shifted;
        let mut power = GrassmannElement::one(&self.pool);
        let mut n = 1.0;
        loop {
            power = (&power * &soul).scale(1.0 / n);
            if power.is_zero() {
                break;
            }
            derivative = derivative.differentiate(axis)?;
            result = result.add(&derivative.scale(&power));
            n += 1.0;
        }
        Ok(result)
    }

    /// Coefficient-wise complex conjugate of the function.
    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            t.exponent = t.exponent.conj();
            for c in t.poly.values_mut() {
                *c = c.conj();
            }
        }
        out.tidy();
        out
    }

    /// Integral over all even variables.
    pub fn integrate(&self) -> Result<GrassmannElement> {
        let mut total = GrassmannElement::zero(&self.pool);
        for t in &self.terms {
            let mut cache: BTreeMap<(usize, u16), Complex64> = BTreeMap::new();
            let scale = t.exponent.offset.exp();
            for (d, c) in &t.poly {
                let mut weight = scale;
                for v in 0..self.nvars {
                    let m = match cache.get(&(v, d[v])) {
                        Some(&m) => m,
                        None => {
                            let m = gauss_moment(d[v] as u32, t.exponent.quad[v], t.exponent.lin[v])?;
                            cache.insert((v, d[v]), m);
                            m
                        }
                    };
                    weight *= m;
                }
                total += &(c * weight);
            }
        }
        Ok(total)
    }

    /// `∫ conj(f) g` over all even variables.
    pub fn l2_pair(f: &Self, g: &Self) -> Result<GrassmannElement> {
        f.conj().multiply(g)?.integrate()
    }

    /// Value at a point of the even variables.
    pub fn evaluate(&self, point: &[f64]) -> GrassmannElement {
        assert_eq!(point.len(), self.nvars);
        let mut total = GrassmannElement::zero(&self.pool);
        for t in &self.terms {
            let mut q = t.exponent.offset;
            for (v, &x) in point.iter().enumerate() {
                q += -t.exponent.quad[v] * x * x / 2.0 + t.exponent.lin[v] * x;
            }
            let e = q.exp();
            for (d, c) in &t.poly {
                let mono: f64 = point
                    .iter()
                    .enumerate()
                    .map(|(v, &x)| x.powi(d[v] as i32))
                    .product();
                total += &(c * (e * mono));
            }
        }
        total
    }

    /// Upper bound on the L² norm of each Grassmann-monomial component,
    /// maximised over monomials. Each term is measured separately, so the
    /// bound carries no cancellation error.
    pub fn residual_norm(&self) -> Result<f64> {
        if self.nvars == 0 {
            return Ok(self
                .terms
                .iter()
                .flat_map(|t| t.poly.values())
                .fold(0.0, |m, c| m.max(c.max_abs())));
        }
        let mut per_mask: BTreeMap<Mask, f64> = BTreeMap::new();
        for t in &self.terms {
            let mut quad = [zero_c(); 2];
            let mut lin = [zero_c(); 2];
            for v in 0..self.nvars {
                quad[v] = Complex64::new(2.0 * t.exponent.quad[v].re, 0.0);
                lin[v] = Complex64::new(2.0 * t.exponent.lin[v].re, 0.0);
            }
            let mut by_mask: BTreeMap<Mask, Vec<(Degree, Complex64)>> = BTreeMap::new();
            for (d, c) in &t.poly {
                for (m, z) in c.terms() {
                    by_mask.entry(m).or_default().push((*d, z));
                }
            }
            for (m, coeffs) in by_mask {
                let mut sq = zero_c();
                for (da, ca) in &coeffs {
                    for (db, cb) in &coeffs {
                        let mut w = ca.conj() * cb;
                        for v in 0..self.nvars {
                            w *= gauss_moment((da[v] + db[v]) as u32, quad[v], lin[v])?;
                        }
                        sq += w;
                    }
                }
                *per_mask.entry(m).or_insert(0.0) += sq.re.max(0.0).sqrt() * t.exponent.offset.re.exp();
            }
        }
        Ok(per_mask.values().fold(0.0, |a: f64, &b| a.max(b)))
    }

    /// Residual norm of `self - other`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.sub(other).residual_norm()
    }
}
