// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic in a finite complex Grassmann algebra.
//!
//! Monomials are bitmasks over the canonical generator order of a
//! [`GeneratorPool`]; a set bit `i` means generator `i` is present, and the
//! monomial is understood as the product of its generators in ascending
//! order. Elements are sparse maps from monomial to complex coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest number of odd generators a pool may hold.
pub const MAX_GENERATORS: usize = 32;

/// Coefficients below this magnitude are dropped.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

/// A monomial, as a bitmask over a pool's canonical order.
pub type Mask = u32;

/// Index of one odd generator within its pool.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u8);

impl Generator {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn mask(self) -> Mask {
        1 << self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorRole {
    /// Odd parameters such as the `kappa` and `lambda` of a representation family.
    Parameter,
    /// Odd group coordinates.
    Coordinate,
    /// Odd variables of a superfunction.
    Variable,
    /// Scratch generators used for differentiation.
    Auxiliary,
}

/// Parity of a Grassmann element or graded vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    /// `0` for even, `1` for odd, `None` for mixed.
    pub fn degree(self) -> Option<u32> {
        match self {
            Parity::Even => Some(0),
            Parity::Odd => Some(1),
            Parity::Mixed => None,
        }
    }

    pub fn from_degree(d: u32) -> Self {
        if d.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

static NEXT_POOL_ID: AtomicU64 = AtomicU64::new(1);

/// Ordered set of named odd generators. Immutable once built.
#[derive(Debug)]
pub struct GeneratorPool {
    id: u64,
    names: Vec<String>,
    roles: Vec<GeneratorRole>,
}

impl GeneratorPool {
    pub fn new<I, S>(generators: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = (S, GeneratorRole)>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut roles = Vec::new();
        for (name, role) in generators {
            let name = name.into();
            if names.contains(&name) {
                return Err(Error::DuplicateGenerator(name));
            }
            names.push(name);
            roles.push(role);
        }
        if names.len() > MAX_GENERATORS {
            return Err(Error::PoolTooLarge {
                max: MAX_GENERATORS,
                got: names.len(),
            });
        }
        Ok(Arc::new(GeneratorPool {
            id: NEXT_POOL_ID.fetch_add(1, Ordering::Relaxed),
            names,
            roles,
        }))
    }

    /// Process-unique identity of this pool.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn lookup(&self, name: &str) -> Result<Generator> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Generator(i as u8))
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn generator(&self, index: usize) -> Result<Generator> {
        if index < self.names.len() {
            Ok(Generator(index as u8))
        } else {
            Err(Error::UnknownGenerator(format!("#{index}")))
        }
    }

    pub fn name(&self, g: Generator) -> &str {
        &self.names[g.index()]
    }

    pub fn role(&self, g: Generator) -> GeneratorRole {
        self.roles[g.index()]
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.names.len()).map(|i| Generator(i as u8))
    }

    /// Union mask of all generators with the given role.
    pub fn role_mask(&self, role: GeneratorRole) -> Mask {
        self.generators()
            .filter(|&g| self.role(g) == role)
            .fold(0, |m, g| m | g.mask())
    }

    fn contains(&self, g: Generator) -> bool {
        g.index() < self.names.len()
    }
}

/// Sign picked up when the ascending monomial `left` followed by the
/// ascending monomial `right` is reordered into ascending order.
/// The monomials are assumed disjoint.
pub fn merge_sign(left: Mask, right: Mask) -> f64 {
    let mut inversions = 0u32;
    let mut r = right;
    while r != 0 {
        let j = r.trailing_zeros();
        inversions += (left >> j >> 1).count_ones();
        r &= r - 1;
    }
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Element of the complex Grassmann algebra over a pool.
#[derive(Clone)]
pub struct GrassmannElement {
    pool: Arc<GeneratorPool>,
    terms: BTreeMap<Mask, Complex64>,
}

impl GrassmannElement {
    pub fn zero(pool: &Arc<GeneratorPool>) -> Self {
        GrassmannElement {
            pool: pool.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(pool: &Arc<GeneratorPool>, value: impl Into<Complex64>) -> Self {
        Self::from_terms(pool, [(0, value.into())])
    }

    pub fn one(pool: &Arc<GeneratorPool>) -> Self {
        Self::scalar(pool, 1.0)
    }

    pub fn generator(pool: &Arc<GeneratorPool>, g: Generator) -> Self {
        assert!(pool.contains(g), "generator {g:?} not in pool");
        Self::from_terms(pool, [(g.mask(), Complex64::new(1.0, 0.0))])
    }

    /// Product of the listed generators in the given order.
    pub fn monomial(pool: &Arc<GeneratorPool>, gens: &[Generator]) -> Self {
        gens.iter()
            .fold(Self::one(pool), |acc, &g| &acc * &Self::generator(pool, g))
    }

    /// Builds an element from `(mask, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(pool: &Arc<GeneratorPool>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Mask, Complex64)>,
    {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            *out.entry(m).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let mut e = GrassmannElement {
            pool: pool.clone(),
            terms: out,
        };
        e.prune();
        e
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE_THRESHOLD);
    }

    pub fn pool(&self) -> &Arc<GeneratorPool> {
        &self.pool
    }

    pub fn same_pool(&self, other: &Self) -> bool {
        self.pool.id == other.pool.id
    }

    fn check_pool(&self, other: &Self) -> Result<()> {
        if self.same_pool(other) {
            Ok(())
        } else {
            Err(Error::PoolMismatch)
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, Complex64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    /// Number of nonzero monomials.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mask: Mask) -> Complex64 {
        self.terms
            .get(&mask)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Coefficient of the empty monomial.
    pub fn body(&self) -> Complex64 {
        self.coefficient(0)
    }

    /// The nilpotent part.
    pub fn soul(&self) -> Self {
        let mut s = self.clone();
        s.terms.remove(&0);
        s
    }

    /// Union of all monomials carrying a nonzero coefficient.
    pub fn support(&self) -> Mask {
        self.terms.keys().fold(0, |m, &k| m | k)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.terms.values().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn parity(&self) -> Parity {
        let mut seen = [false, false];
        for &m in self.terms.keys() {
            seen[(m.count_ones() % 2) as usize] = true;
        }
        match seen {
            [_, false] => Parity::Even,
            [false, true] => Parity::Odd,
            [true, true] => Parity::Mixed,
        }
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> Self {
        let f = factor.into();
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= f;
        }
        out.prune();
        out
    }

    /// Exterior product, `self` on the left.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_pool(other)?;
        let mut out: BTreeMap<Mask, Complex64> = BTreeMap::new();
        for (&ma, &ca) in &self.terms {
            for (&mb, &cb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let c = ca * cb * merge_sign(ma, mb);
                *out.entry(ma | mb).or_insert(Complex64::new(0.0, 0.0)) += c;
            }
        }
        let mut e = GrassmannElement {
            pool: self.pool.clone(),
            terms: out,
        };
        e.prune();
        Ok(e)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_pool(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            *out.terms.entry(m).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        out.prune();
        Ok(out)
    }

    /// `self^n`.
    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(&self.pool), |acc, _| &acc * self)
    }

    /// Exponential: `exp(body) * sum_k soul^k / k!`, a finite sum.
    pub fn exp(&self) -> Self {
        let soul = self.soul();
        let mut total = Self::one(&self.pool);
        let mut power = Self::one(&self.pool);
        let mut k = 1.0;
        loop {
            power = (&power * &soul).scale(1.0 / k);
            if power.is_zero() {
                break;
            }
            total += &power;
            k += 1.0;
        }
        total.scale(self.body().exp())
    }

    /// Left derivative: for `self = gen*b + c` with `b`, `c` free of `gen`,
    /// returns `b`.
    pub fn left_coefficient(&self, gen: Generator) -> Result<Self> {
        if !self.pool.contains(gen) {
            return Err(Error::UnknownGenerator(format!("#{}", gen.index())));
        }
        let bit = gen.mask();
        let below = bit - 1;
        let terms = self
            .terms
            .iter()
            .filter(|(&m, _)| m & bit != 0)
            .map(|(&m, &c)| {
                let sign = if (m & below).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
                (m & !bit, c * sign)
            });
        Ok(Self::from_terms(&self.pool, terms))
    }

    /// Berezin integral over `gens`. The product of `gens` in ascending
    /// canonical order integrates to `+1`, with the remaining factor read off
    /// to its right.
    pub fn berezin_integral(&self, gens: &[Generator]) -> Result<Self> {
        let mut sorted = gens.to_vec();
        sorted.sort();
        sorted.dedup();
        let mut out = self.clone();
        for g in sorted {
            out = out.left_coefficient(g)?;
        }
        Ok(out)
    }

    /// Complex-conjugates every coefficient; monomials are left fixed.
    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.conj();
        }
        out
    }

    /// Simultaneous substitution of odd generators by odd elements; this is
    /// the algebra homomorphism fixing every other generator.
    pub fn substitute(&self, replacements: &[(Generator, GrassmannElement)]) -> Result<Self> {
        let mut touched: Mask = 0;
        for (g, r) in replacements {
            self.check_pool(r)?;
            if !self.pool.contains(*g) {
                return Err(Error::UnknownGenerator(format!("#{}", g.index())));
            }
            if !matches!(r.parity(), Parity::Odd) && !r.is_zero() {
                return Err(Error::Parity(format!(
                    "replacement for `{}` must be odd",
                    self.pool.name(*g)
                )));
            }
            touched |= g.mask();
        }
        let mut out = Self::zero(&self.pool);
        let mut untouched = BTreeMap::new();
        for (&m, &c) in &self.terms {
            if m & touched == 0 {
                untouched.insert(m, c);
                continue;
            }
            let mut piece = Self::scalar(&self.pool, c);
            let mut rest = m;
            while rest != 0 {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                let g = Generator(i as u8);
                let factor = replacements
                    .iter()
                    .find(|(h, _)| *h == g)
                    .map(|(_, r)| r.clone())
                    .unwrap_or_else(|| Self::generator(&self.pool, g));
                piece = &piece * &factor;
            }
            out += &piece;
        }
        out += &GrassmannElement {
            pool: self.pool.clone(),
            terms: untouched,
        };
        Ok(out)
    }

    /// Largest coefficient-wise difference to `other`.
    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).max_abs()
    }
}

impl PartialEq for GrassmannElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_pool(other) && self.terms == other.terms
    }
}

impl fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)", c.re, c.im)?;
            let mut rest = m;
            while rest != 0 {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                write!(f, "·{}", self.pool.names[i as usize])?;
            }
        }
        Ok(())
    }
}

impl<'a> Mul<&'a GrassmannElement> for &'a GrassmannElement {
    type Output = GrassmannElement;

    fn mul(self, rhs: &'a GrassmannElement) -> GrassmannElement {
        self.product(rhs).expect("grassmann product across pools")
    }
}

impl Mul for GrassmannElement {
    type Output = GrassmannElement;

    fn mul(self, rhs: GrassmannElement) -> GrassmannElement {
        &self * &rhs
    }
}

impl Mul<f64> for &GrassmannElement {
    type Output = GrassmannElement;

    fn mul(self, rhs: f64) -> GrassmannElement {
        self.scale(rhs)
    }
}

impl Mul<f64> for GrassmannElement {
    type Output = GrassmannElement;

    fn mul(self, rhs: f64) -> GrassmannElement {
        self.scale(rhs)
    }
}

impl Mul<Complex64> for &GrassmannElement {
    type Output = GrassmannElement;

    fn mul(self, rhs: Complex64) -> GrassmannElement {
        self.scale(rhs)
    }
}

impl Mul<Complex64> for GrassmannElement {
    type Output = GrassmannElement;

    fn mul(self, rhs: Complex64) -> GrassmannElement {
        self.scale(rhs)
    }
}

impl<'a> Add<&'a GrassmannElement> for &'a GrassmannElement {
    type Output = GrassmannElement;

    fn add(self, rhs: &'a GrassmannElement) -> GrassmannElement {
        self.try_add(rhs).expect("grassmann sum across pools")
    }
}

impl Add for GrassmannElement {
    type Output = GrassmannElement;

    fn add(self, rhs: GrassmannElement) -> GrassmannElement {
        &self + &rhs
    }
}

impl AddAssign<&GrassmannElement> for GrassmannElement {
    fn add_assign(&mut self, rhs: &GrassmannElement) {
        assert!(self.same_pool(rhs), "grassmann sum across pools");
        for (&m, &c) in &rhs.terms {
            *self.terms.entry(m).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        self.prune();
    }
}

impl<'a> Sub<&'a GrassmannElement> for &'a GrassmannElement {
    type Output = GrassmannElement;

    fn sub(self, rhs: &'a GrassmannElement) -> GrassmannElement {
        self + &(-rhs)
    }
}

impl Sub for GrassmannElement {
    type Output = GrassmannElement;

    fn sub(self, rhs: GrassmannElement) -> GrassmannElement {
        &self - &rhs
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;

    fn neg(self) -> GrassmannElement {
        self.scale(-1.0)
    }
}

impl Neg for GrassmannElement {
    type Output = GrassmannElement;

    fn neg(self) -> GrassmannElement {
        self.scale(-1.0)
    }
}
