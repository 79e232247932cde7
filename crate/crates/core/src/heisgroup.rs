// SPDX-License-Identifier: Apache-2.0

//! The 3|3 super Heisenberg group, its body group, its Lie superalgebra and
//! the adjoint action, with checkers for the Harish-Chandra pair axioms.
//!
//! Group coordinates are ordered `(a, b, α, β, c, γ)`. The coordinate lines
//! through the identity match the basis as `e_0 ↔ c`, `e_1 ↔ a`, `e_2 ↔ b`,
//! `f_0 ↔ γ`, `f_1 ↔ α`, `f_2 ↔ β`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::grassmann::{Generator, GeneratorPool, GrassmannElement, Parity};

/// Element of `G`, with Grassmann-valued coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    a: GrassmannElement,
    b: GrassmannElement,
    alpha: GrassmannElement,
    beta: GrassmannElement,
    c: GrassmannElement,
    gamma: GrassmannElement,
}

fn check_even(name: &str, x: &GrassmannElement) -> Result<()> {
    if x.parity() != Parity::Even {
        return Err(Error::Parity(format!("coordinate {name} must be even")));
    }
    if x.body().im.abs() > 1e-12 {
        return Err(Error::Parity(format!("coordinate {name} must have a real body")));
    }
    Ok(())
}

fn check_odd(name: &str, x: &GrassmannElement) -> Result<()> {
    if x.is_zero() || x.parity() == Parity::Odd {
        Ok(())
    } else {
        Err(Error::Parity(format!("coordinate {name} must be odd")))
    }
}

impl GroupElement {
    pub fn new(
        a: GrassmannElement,
        b: GrassmannElement,
        alpha: GrassmannElement,
        beta: GrassmannElement,
        c: GrassmannElement,
        gamma: GrassmannElement,
    ) -> Result<Self> {
        for x in [&b, &alpha, &beta, &c, &gamma] {
            if !x.same_pool(&a) {
                return Err(Error::PoolMismatch);
            }
        }
        check_even("a", &a)?;
        check_even("b", &b)?;
        check_even("c", &c)?;
        check_odd("alpha", &alpha)?;
        check_odd("beta", &beta)?;
        check_odd("gamma", &gamma)?;
        Ok(GroupElement { a, b, alpha, beta, c, gamma })
    }

    pub fn identity(pool: &Arc<GeneratorPool>) -> Self {
        let z = GrassmannElement::zero(pool);
        GroupElement {
            a: z.clone(),
            b: z.clone(),
            alpha: z.clone(),
            beta: z.clone(),
            c: z.clone(),
            gamma: z,
        }
    }

    /// The element of `G_o` with all odd coordinates zero.
    pub fn from_body(pool: &Arc<GeneratorPool>, g: &BodyElement) -> Self {
        let s = |x: f64| GrassmannElement::scalar(pool, x);
        let mut out = Self::identity(pool);
        out.a = s(g.a);
        out.b = s(g.b);
        out.c = s(g.c);
        out
    }

    /// Identity except for one coordinate, set to `value`. Used to walk the
    /// coordinate line of a basis vector.
    pub fn along(pool: &Arc<GeneratorPool>, direction: Basis, value: GrassmannElement) -> Result<Self> {
        let mut out = Self::identity(pool);
        match direction {
            Basis::E0 => out.c = value,
            Basis::E1 => out.a = value,
            Basis::E2 => out.b = value,
            Basis::F0 => out.gamma = value,
            Basis::F1 => out.alpha = value,
            Basis::F2 => out.beta = value,
        }
        Self::new(out.a, out.b, out.alpha, out.beta, out.c, out.gamma)
    }

    pub fn a(&self) -> &GrassmannElement {
        &self.a
    }
    pub fn b(&self) -> &GrassmannElement {
        &self.b
    }
    pub fn alpha(&self) -> &GrassmannElement {
        &self.alpha
    }
    pub fn beta(&self) -> &GrassmannElement {
        &self.beta
    }
    pub fn c(&self) -> &GrassmannElement {
        &self.c
    }
    pub fn gamma(&self) -> &GrassmannElement {
        &self.gamma
    }

    pub fn pool(&self) -> &Arc<GeneratorPool> {
        self.a.pool()
    }

    fn coords(&self) -> [&GrassmannElement; 6] {
        [&self.a, &self.b, &self.alpha, &self.beta, &self.c, &self.gamma]
    }

    /// The group law.
    pub fn multiply(&self, h: &GroupElement) -> Result<GroupElement> {
        if !self.a.same_pool(&h.a) {
            return Err(Error::PoolMismatch);
        }
        let g = self;
        // c + ĉ + ½(a b̂ − b â − α β̂ − β α̂)
        let c_cross = &(&(&(&g.a * &h.b) - &(&g.b * &h.a)) - &(&g.alpha * &h.beta)) - &(&g.beta * &h.alpha);
        // γ + γ̂ + ½(a β̂ − β â + b α̂ − α b̂)
        let gamma_cross =
            &(&(&(&g.a * &h.beta) - &(&g.beta * &h.a)) + &(&g.b * &h.alpha)) - &(&g.alpha * &h.b);
        GroupElement::new(
            &g.a + &h.a,
            &g.b + &h.b,
            &g.alpha + &h.alpha,
            &g.beta + &h.beta,
            &(&g.c + &h.c) + &c_cross.scale(0.5),
            &(&g.gamma + &h.gamma) + &gamma_cross.scale(0.5),
        )
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            a: -&self.a,
            b: -&self.b,
            alpha: -&self.alpha,
            beta: -&self.beta,
            c: -&self.c,
            gamma: -&self.gamma,
        }
    }

    /// Real bodies of the even coordinates.
    pub fn body(&self) -> BodyElement {
        BodyElement::new(self.a.body().re, self.b.body().re, self.c.body().re)
    }

    /// Largest coordinate-wise coefficient difference.
    pub fn distance(&self, other: &GroupElement) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords().iter())
            .fold(0.0, |m, (x, y)| m.max(x.distance(y)))
    }
}

/// Element `(a, b, c)` of the Heisenberg group `G_o`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BodyElement {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl BodyElement {
    pub const IDENTITY: BodyElement = BodyElement { a: 0.0, b: 0.0, c: 0.0 };

    pub fn new(a: f64, b: f64, c: f64) -> Self {
        BodyElement { a, b, c }
    }

    pub fn multiply(&self, h: &BodyElement) -> BodyElement {
        BodyElement {
            a: self.a + h.a,
            b: self.b + h.b,
            c: self.c + h.c + 0.5 * (self.a * h.b - self.b * h.a),
        }
    }

    pub fn inverse(&self) -> BodyElement {
        BodyElement { a: -self.a, b: -self.b, c: -self.c }
    }
}

/// Basis `e_0, e_1, e_2, f_0, f_1, f_2` of the Lie superalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    E0,
    E1,
    E2,
    F0,
    F1,
    F2,
}

impl Basis {
    pub const ALL: [Basis; 6] = [Basis::E0, Basis::E1, Basis::E2, Basis::F0, Basis::F1, Basis::F2];
    pub const ODD: [Basis; 3] = [Basis::F0, Basis::F1, Basis::F2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn parity(self) -> Parity {
        if self.index() < 3 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `0` for even, `1` for odd.
    pub fn degree(self) -> u32 {
        (self.index() >= 3) as u32
    }

    pub fn name(self) -> &'static str {
        ["e0", "e1", "e2", "f0", "f1", "f2"][self.index()]
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Vector of the Lie superalgebra, coordinates in the order
/// `e_0, e_1, e_2, f_0, f_1, f_2`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct AlgebraVector(pub [f64; 6]);

impl AlgebraVector {
    pub const ZERO: AlgebraVector = AlgebraVector([0.0; 6]);

    pub fn basis(b: Basis) -> Self {
        let mut v = [0.0; 6];
        v[b.index()] = 1.0;
        AlgebraVector(v)
    }

    pub fn coefficient(&self, b: Basis) -> f64 {
        self.0[b.index()]
    }

    pub fn parity(&self) -> Parity {
        let even = self.0[..3].iter().any(|&x| x != 0.0);
        let odd = self.0[3..].iter().any(|&x| x != 0.0);
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut v = self.0;
        for (x, y) in v.iter_mut().zip(other.0.iter()) {
            *x += y;
        }
        AlgebraVector(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        AlgebraVector(self.0.map(|x| x * s))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Nonzero `(basis, coefficient)` pairs.
    pub fn components(&self) -> impl Iterator<Item = (Basis, f64)> + '_ {
        Basis::ALL
            .into_iter()
            .map(|b| (b, self.0[b.index()]))
            .filter(|(_, x)| *x != 0.0)
    }
}

/// Structure constants on basis pairs.
fn bracket_basis(x: Basis, y: Basis) -> AlgebraVector {
    use Basis::*;
    match (x, y) {
        (E1, E2) => AlgebraVector::basis(E0),
        (E2, E1) => AlgebraVector::basis(E0).scale(-1.0),
        (F1, F2) | (F2, F1) => AlgebraVector::basis(E0),
        (E1, F2) | (E2, F1) => AlgebraVector::basis(F0),
        (F2, E1) | (F1, E2) => AlgebraVector::basis(F0).scale(-1.0),
        _ => AlgebraVector::ZERO,
    }
}

/// The bilinear super bracket.
pub fn bracket(x: &AlgebraVector, y: &AlgebraVector) -> AlgebraVector {
    let mut out = AlgebraVector::ZERO;
    for (bx, cx) in x.components() {
        for (by, cy) in y.components() {
            out = out.add(&bracket_basis(bx, by).scale(cx * cy));
        }
    }
    out
}

/// `(−1)^{|X||Z|}[X,[Y,Z]] + (−1)^{|Y||X|}[Y,[Z,X]] + (−1)^{|Z||Y|}[Z,[X,Y]]`.
pub fn jacobi_expression(x: Basis, y: Basis, z: Basis) -> AlgebraVector {
    let sign = |p: Basis, q: Basis| if p.degree() * q.degree() == 1 { -1.0 } else { 1.0 };
    let (vx, vy, vz) = (AlgebraVector::basis(x), AlgebraVector::basis(y), AlgebraVector::basis(z));
    bracket(&vx, &bracket(&vy, &vz))
        .scale(sign(x, z))
        .add(&bracket(&vy, &bracket(&vz, &vx)).scale(sign(y, x)))
        .add(&bracket(&vz, &bracket(&vx, &vy)).scale(sign(z, y)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiReport {
    pub table: Vec<(Basis, Basis, Basis, f64)>,
    pub max_residual: f64,
}

/// Graded Jacobi identity over all 216 basis triples.
pub fn check_graded_jacobi() -> JacobiReport {
    let mut table = Vec::with_capacity(216);
    for x in Basis::ALL {
        for y in Basis::ALL {
            for z in Basis::ALL {
                table.push((x, y, z, jacobi_expression(x, y, z).max_abs()));
            }
        }
    }
    let max_residual = table.iter().fold(0.0, |m: f64, t| m.max(t.3));
    JacobiReport { table, max_residual }
}

/// Graded skew-symmetry residual `[X,Y] + (−1)^{|X||Y|}[Y,X]` on all basis pairs.
pub fn graded_skew_residual() -> f64 {
    let mut worst: f64 = 0.0;
    for x in Basis::ALL {
        for y in Basis::ALL {
            let s = if x.degree() * y.degree() == 1 { -1.0 } else { 1.0 };
            let (vx, vy) = (AlgebraVector::basis(x), AlgebraVector::basis(y));
            worst = worst.max(bracket(&vx, &vy).add(&bracket(&vy, &vx).scale(s)).max_abs());
        }
    }
    worst
}

/// Action of `G_o` on the algebra.
pub fn adjoint_action(g: &BodyElement, x: &AlgebraVector) -> AlgebraVector {
    let v = &x.0;
    // (a,b,c)·e_1 = e_1 − b e_0, ·e_2 = e_2 + a e_0, ·f_1 = f_1 + b f_0, ·f_2 = f_2 + a f_0
    AlgebraVector([
        v[0] - g.b * v[1] + g.a * v[2],
        v[1],
        v[2],
        v[3] + g.b * v[4] + g.a * v[5],
        v[4],
        v[5],
    ])
}

/// The same action for a group element with Grassmann-valued even
/// coordinates, used to differentiate along nilpotent directions.
pub fn adjoint_action_graded(g: &GroupElement, x: &AlgebraVector) -> [GrassmannElement; 6] {
    let pool = g.pool();
    let s = |v: f64| GrassmannElement::scalar(pool, v);
    let v = &x.0;
    [
        &(&s(v[0]) - &g.b().scale(v[1])) + &g.a().scale(v[2]),
        s(v[1]),
        s(v[2]),
        &(&s(v[3]) + &g.b().scale(v[4])) + &g.a().scale(v[5]),
        s(v[4]),
        s(v[5]),
    ]
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShcpReport {
    pub samples: usize,
    /// Components leaking between `g_0` and `g_1` under the action.
    pub evenness: f64,
    /// `(g h)·X − g·(h·X)`.
    pub action: f64,
    /// `g·[X,Y] − [g·X, g·Y]`.
    pub automorphism: f64,
    /// `d/dt (exp(tX)·Y)|₀ − [X,Y]` for even basis `X`.
    pub infinitesimal: f64,
}

impl ShcpReport {
    pub fn max_residual(&self) -> f64 {
        self.evenness.max(self.action).max(self.automorphism).max(self.infinitesimal)
    }
}

/// Checks the Harish-Chandra pair axioms on sampled body elements. The
/// infinitesimal part uses a nilpotent `ε = ε₁ε₂` built from two scratch
/// generators.
pub fn check_shcp_axioms(
    samples: &[BodyElement],
    pool: &Arc<GeneratorPool>,
    eps: (Generator, Generator),
) -> Result<ShcpReport> {
    let mut report = ShcpReport {
        samples: samples.len(),
        evenness: 0.0,
        action: 0.0,
        automorphism: 0.0,
        infinitesimal: 0.0,
    };
    for g in samples {
        for x in Basis::ALL {
            let vx = AlgebraVector::basis(x);
            let gx = adjoint_action(g, &vx);
            let leak = match x.parity() {
                Parity::Even => gx.0[3..].iter().fold(0.0, |m: f64, v| m.max(v.abs())),
                _ => gx.0[..3].iter().fold(0.0, |m: f64, v| m.max(v.abs())),
            };
            report.evenness = report.evenness.max(leak);
            for h in samples {
                let lhs = adjoint_action(&g.multiply(h), &vx);
                let rhs = adjoint_action(g, &adjoint_action(h, &vx));
                report.action = report.action.max(lhs.sub(&rhs).max_abs());
            }
            for y in Basis::ALL {
                let vy = AlgebraVector::basis(y);
                let lhs = adjoint_action(g, &bracket(&vx, &vy));
                let rhs = bracket(&gx, &adjoint_action(g, &vy));
                report.automorphism = report.automorphism.max(lhs.sub(&rhs).max_abs());
            }
        }
    }
    let eps_el = GrassmannElement::monomial(pool, &[eps.0, eps.1]);
    let eps_mask = eps.0.mask() | eps.1.mask();
    for x in [Basis::E0, Basis::E1, Basis::E2] {
        let line = GroupElement::along(pool, x, eps_el.clone())?;
        for y in Basis::ALL {
            let moved = adjoint_action_graded(&line, &AlgebraVector::basis(y));
            let derivative = AlgebraVector(moved.map(|c| c.coefficient(eps_mask).re));
            let expected = bracket(&AlgebraVector::basis(x), &AlgebraVector::basis(y));
            report.infinitesimal = report.infinitesimal.max(derivative.sub(&expected).max_abs());
        }
    }
    Ok(report)
}

/// Generators used when drawing random group elements: one fresh odd
/// generator per odd coordinate, plus two parameter generators for souls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleSlots {
    pub odd: [Generator; 3],
    pub souls: [Generator; 2],
}

/// Body element with coordinates uniform in `[-2, 2]`.
pub fn sample_body<R: Rng + ?Sized>(rng: &mut R) -> BodyElement {
    BodyElement::new(rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0))
}

/// Group element with bodies uniform in `[-2, 2]` and random souls in the
/// two soul generators, coefficients in `[-1, 1]`. Odd coordinates are
/// `r₀·own + r₁·s₁ + r₂·s₂`.
pub fn sample_group_element<R: Rng + ?Sized>(
    rng: &mut R,
    pool: &Arc<GeneratorPool>,
    slots: &SampleSlots,
) -> GroupElement {
    let [s1, s2] = slots.souls;
    let pair = GrassmannElement::monomial(pool, &[s1, s2]);
    let mut even = || {
        &GrassmannElement::scalar(pool, rng.gen_range(-2.0..=2.0)) + &pair.scale(rng.gen_range(-1.0..=1.0))
    };
    let (a, b, c) = (even(), even(), even());
    let mut odd = |own: Generator| {
        let mut x = GrassmannElement::generator(pool, own).scale(rng.gen_range(-1.0..=1.0));
        for s in [s1, s2] {
            x += &GrassmannElement::generator(pool, s).scale(rng.gen_range(-1.0..=1.0));
        }
        x
    };
    let (alpha, beta, gamma) = (odd(slots.odd[0]), odd(slots.odd[1]), odd(slots.odd[2]));
    GroupElement { a, b, alpha, beta, c, gamma }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::GeneratorRole;
    use num_complex::Complex64;

    fn pool() -> Arc<GeneratorPool> {
        GeneratorPool::new([
            ("alpha", GeneratorRole::Coordinate),
            ("beta_h", GeneratorRole::Coordinate),
            ("s1", GeneratorRole::Parameter),
            ("s2", GeneratorRole::Parameter),
            ("eps1", GeneratorRole::Auxiliary),
            ("eps2", GeneratorRole::Auxiliary),
        ])
        .unwrap()
    }

    fn gen(p: &Arc<GeneratorPool>, n: &str) -> GrassmannElement {
        GrassmannElement::generator(p, p.lookup(n).unwrap())
    }

    fn real(p: &Arc<GeneratorPool>, x: f64) -> GrassmannElement {
        GrassmannElement::scalar(p, x)
    }

    fn body_el(p: &Arc<GeneratorPool>, a: f64, b: f64, c: f64) -> GroupElement {
        GroupElement::from_body(p, &BodyElement::new(a, b, c))
    }

    #[test]
    fn identity_and_body_product() {
        let p = pool();
        let g = body_el(&p, 0.3, -1.2, 0.5);
        assert_eq!(g.multiply(&GroupElement::identity(&p)).unwrap(), g);
        let prod = body_el(&p, 1.0, 0.0, 0.0).multiply(&body_el(&p, 0.0, 1.0, 0.0)).unwrap();
        assert!(prod.distance(&body_el(&p, 1.0, 1.0, 0.5)) < 1e-15);
    }

    #[test]
    fn odd_product_feeds_central_coordinate() {
        // (0,0,α,0,0,0)·(0,0,0,β̂,0,0) = (0,0,α,β̂,−½αβ̂,0)
        let p = pool();
        let z = GrassmannElement::zero(&p);
        let g = GroupElement::new(z.clone(), z.clone(), gen(&p, "alpha"), z.clone(), z.clone(), z.clone()).unwrap();
        let h = GroupElement::new(z.clone(), z.clone(), z.clone(), gen(&p, "beta_h"), z.clone(), z.clone()).unwrap();
        let prod = g.multiply(&h).unwrap();
        let expected = GroupElement::new(
            z.clone(),
            z.clone(),
            gen(&p, "alpha"),
            gen(&p, "beta_h"),
            (&gen(&p, "alpha") * &gen(&p, "beta_h")).scale(-0.5),
            z,
        )
        .unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn inverse_with_souls() {
        let p = pool();
        let soul = &gen(&p, "s1") * &gen(&p, "s2");
        let g = GroupElement::new(
            &real(&p, 0.7) + &soul,
            real(&p, -0.4),
            &gen(&p, "alpha") + &gen(&p, "s1").scale(0.3),
            gen(&p, "s2"),
            real(&p, 1.1),
            gen(&p, "beta_h"),
        )
        .unwrap();
        let e = GroupElement::identity(&p);
        assert_eq!(GroupElement::identity(&p).inverse(), e);
        assert!(g.multiply(&g.inverse()).unwrap().distance(&e) < 1e-15);
        assert!(g.inverse().multiply(&g).unwrap().distance(&e) < 1e-15);
    }

    #[test]
    fn parity_violations_rejected() {
        let p = pool();
        let z = GrassmannElement::zero(&p);
        let odd = gen(&p, "alpha");
        assert!(GroupElement::new(odd.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone()).is_err());
        assert!(GroupElement::new(z.clone(), z.clone(), real(&p, 1.0), z.clone(), z.clone(), z.clone()).is_err());
        let complex_body = GrassmannElement::scalar(&p, Complex64::new(0.0, 1.0));
        assert!(GroupElement::new(complex_body, z.clone(), z.clone(), z.clone(), z.clone(), z).is_err());
    }

    #[test]
    fn bracket_table() {
        use Basis::*;
        let v = AlgebraVector::basis;
        assert_eq!(bracket(&v(E1), &v(E2)), v(E0));
        assert_eq!(bracket(&v(F1), &v(F2)), v(E0));
        assert_eq!(bracket(&v(F2), &v(F1)), v(E0));
        assert_eq!(bracket(&v(E1), &v(F2)), v(F0));
        assert_eq!(bracket(&v(E2), &v(F1)), v(F0));
        for b in Basis::ALL {
            assert_eq!(bracket(&v(E0), &v(b)), AlgebraVector::ZERO);
            assert_eq!(bracket(&v(F0), &v(b)), AlgebraVector::ZERO);
        }
        assert_eq!(graded_skew_residual(), 0.0);
    }

    #[test]
    fn jacobi_examples() {
        use Basis::*;
        assert_eq!(jacobi_expression(E1, E2, F1).max_abs(), 0.0);
        assert_eq!(jacobi_expression(F1, F1, F2).max_abs(), 0.0);
        let report = check_graded_jacobi();
        assert_eq!(report.table.len(), 216);
        assert_eq!(report.max_residual, 0.0);
    }

    #[test]
    fn adjoint_table() {
        use Basis::*;
        let v = AlgebraVector::basis;
        let g = BodyElement::new(0.3, -0.8, 2.0);
        assert_eq!(adjoint_action(&g, &v(E0)), v(E0));
        assert_eq!(adjoint_action(&BodyElement::new(0.0, 1.0, 0.0), &v(E1)), v(E1).sub(&v(E0)));
        assert_eq!(adjoint_action(&BodyElement::new(1.0, 0.0, 0.0), &v(F2)), v(F2).add(&v(F0)));
        assert_eq!(adjoint_action(&BodyElement::new(0.0, 2.0, 0.0), &v(F1)), v(F1).add(&v(F0).scale(2.0)));
    }

    #[test]
    fn shcp_axioms_hold() {
        let p = pool();
        let samples = [
            BodyElement::new(0.3, -1.2, 0.5),
            BodyElement::new(-1.9, 0.4, 1.1),
            BodyElement::new(1.0, 1.0, -0.7),
        ];
        let eps = (p.lookup("eps1").unwrap(), p.lookup("eps2").unwrap());
        let r = check_shcp_axioms(&samples, &p, eps).unwrap();
        assert!(r.max_residual() <= 1e-12, "{r:?}");
    }

    #[test]
    fn sampled_elements_are_parity_correct() {
        use rand::SeedableRng;
        let p = pool();
        let slots = SampleSlots {
            odd: [p.lookup("alpha").unwrap(), p.lookup("beta_h").unwrap(), p.lookup("eps1").unwrap()],
            souls: [p.lookup("s1").unwrap(), p.lookup("s2").unwrap()],
        };
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let g = sample_group_element(&mut rng, &p, &slots);
            let checked = GroupElement::new(
                g.a().clone(),
                g.b().clone(),
                g.alpha().clone(),
                g.beta().clone(),
                g.c().clone(),
                g.gamma().clone(),
            )
            .unwrap();
            assert_eq!(checked, g);
            let h = sample_body(&mut rng);
            assert!(h.a.abs() <= 2.0 && h.b.abs() <= 2.0 && h.c.abs() <= 2.0);
        }
    }

    #[test]
    fn infinitesimal_action_by_dual_unit() {
        // d/dt((t,0,0)·e_2)|₀ = e_0 = [e_1, e_2]
        let p = pool();
        let eps = GrassmannElement::monomial(&p, &[p.lookup("eps1").unwrap(), p.lookup("eps2").unwrap()]);
        let line = GroupElement::along(&p, Basis::E1, eps.clone()).unwrap();
        let moved = adjoint_action_graded(&line, &AlgebraVector::basis(Basis::E2));
        assert_eq!(moved[0], eps);
    }
}
