use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::biform::BiForm;
use super::tform::{TClass, TForm};
use crate::algebra::{same_algebra, AlgebraHom, AlgebraRef};
use crate::connections::{curvature_formula, Connection, FormMatrix, Idempotent, Matrix, ModuleIso};
use crate::error::{Error, Result};
use crate::exactmath::{factorial, rat, Poly1, Poly2, Rational, Scalar};
use crate::uforms::AbClass;

/// Polynomial family `θ(t)` of connections on a fixed `Im(p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyPath {
    p: Idempotent,
    theta: FormMatrix<Poly1>,
}

impl PolyPath {
    pub fn new(p: Idempotent, theta: FormMatrix<Poly1>) -> Result<Self> {
        if (theta.rows(), theta.cols()) != (p.size(), p.size()) {
            return Err(Error::DimensionMismatch("potential and idempotent differ in size".into()));
        }
        if !same_algebra(theta.algebra(), p.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if theta.entries().iter().any(|e| e.degrees().iter().any(|&d| d != 1)) {
            return Err(Error::Invalid("path potential must have degree 1".into()));
        }
        if p.compress(&theta)? != theta {
            return Err(Error::NotCompressed);
        }
        Ok(PolyPath { p, theta })
    }

    pub fn constant(c: &Connection) -> Self {
        PolyPath { p: c.p().clone(), theta: c.theta().lift() }
    }

    /// `θ(t) = Σ qᵢ(t)·θᵢ` for connections on a common idempotent.
    pub fn interpolate(weights: &[(Poly1, &Connection)]) -> Result<Self> {
        let (_, first) = weights.first().ok_or_else(|| Error::Invalid("no connections to interpolate".into()))?;
        let p = first.p().clone();
        let mut theta = FormMatrix::<Poly1>::zeros(p.algebra(), p.size(), p.size());
        for (q, c) in weights {
            if c.p() != &p {
                return Err(Error::IdempotentMismatch);
            }
            theta = theta.add(&c.theta().lift::<Poly1>().map(|e| e.mul_scalar(q)))?;
        }
        PolyPath::new(p, theta)
    }

    pub fn p(&self) -> &Idempotent {
        &self.p
    }

    pub fn theta(&self) -> &FormMatrix<Poly1> {
        &self.theta
    }

    pub fn algebra(&self) -> &AlgebraRef {
        self.p.algebra()
    }

    pub fn eval(&self, t: &Rational) -> Result<Connection> {
        Connection::new(self.p.clone(), self.theta.map(|e| e.map_coeffs(|_, q| q.eval(t))))
    }

    /// The same family traversed backwards, `θ(1 − t)`.
    pub fn reverse(&self) -> PolyPath {
        self.reparametrize(&Poly1::one_minus_t())
    }

    /// `θ(q(t))`
    pub fn reparametrize(&self, q: &Poly1) -> PolyPath {
        PolyPath { p: self.p.clone(), theta: self.theta.map(|e| e.map_coeffs(|_, c| c.compose(q))) }
    }

    pub fn direct_sum(&self, other: &PolyPath) -> Result<PolyPath> {
        Ok(PolyPath { p: self.p.direct_sum(&other.p)?, theta: self.theta.block_diag(&other.theta)? })
    }

    /// `t ↦ φ*D_t` for a constant isomorphism `φ: Im(p₀) → Im(p)`.
    pub fn pullback(&self, phi: &ModuleIso) -> Result<PolyPath> {
        if phi.target() != &self.p {
            return Err(Error::IdempotentMismatch);
        }
        let (u, v) = (phi.u().lift::<Poly1>(), phi.v().lift::<Poly1>());
        let inner = self.p.matrix().lift::<Poly1>().mul(&u.differential())?.add(&self.theta.mul(&u)?)?;
        let theta = v.mul(&inner)?.mul(&phi.source().matrix().lift())?;
        PolyPath::new(phi.source().clone(), theta)
    }

    /// The induced path `t ↦ (ψ(p), ψ^u θ(t))` over the target algebra.
    pub fn induced(&self, psi: &AlgebraHom) -> Result<PolyPath> {
        PolyPath::new(self.p.extend_scalars(psi)?, self.theta.extend_scalars(psi)?)
    }

    pub fn theta_dot(&self) -> FormMatrix<Poly1> {
        self.theta.map(|e| e.map_coeffs(|_, q| q.derivative()))
    }

    /// `(R(t), S(t))` with `R̃ = R(t) + dt·S(t)`: the curvature of the
    /// family and `S = p·θ̇·p`.
    pub fn tilde_curvature(&self) -> Result<(FormMatrix<Poly1>, FormMatrix<Poly1>)> {
        let p = self.p.matrix().lift::<Poly1>();
        let r = curvature_formula(&p, &self.theta)?;
        let s = p.mul(&self.theta_dot())?.mul(&p)?;
        Ok((r, s))
    }

    /// Curvature of the connection `p∘d̃ + θ` over `Λ•⊗̂Ω^u_•(A)`, computed
    /// directly in the cylinder algebra.
    pub fn cylinder_curvature(&self) -> Result<Matrix<TForm>> {
        let p = self.p.matrix().lift::<Poly1>().map(|e| TForm::from_base(e.clone()));
        let theta = self.theta.map(|e| TForm::from_base(e.clone()));
        curvature_formula(&p, &theta)
    }

    /// `ch_k(D̃) = tr(R̃^k)/k!` in `Λ•⊗̂Ω_ab`, for `k = 0..=k_max`.
    pub fn cylinder_chern(&self, k_max: usize) -> Result<Vec<TClass>> {
        self.algebra().check_degree(2 * k_max)?;
        let r = self.cylinder_curvature()?;
        let mut power = self.p.matrix().lift::<Poly1>().map(|e| TForm::from_base(e.clone()));
        let mut out = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            if k > 0 {
                power = power.mul(&r)?;
            }
            out.push(power.trace()?.project_ab()?.scale(&factorial(k).recip()));
        }
        Ok(out)
    }

    /// `KCS_k = K ch_k(D̃)` for `k = 1..=k_max`; entry `k − 1` has degree
    /// `2k − 1`.
    pub fn kcs(&self, k_max: usize) -> Result<Vec<AbClass>> {
        Ok(self.cylinder_chern(k_max)?.iter().skip(1).map(TClass::homotopy_k).collect())
    }

    /// `(1/(k−1)!) ∫₀¹ tr(S·R^{k−1}) dt`, without the calibrated sign.
    fn closed_form_unsigned(&self, k_max: usize) -> Result<Vec<AbClass>> {
        self.algebra().check_degree(2 * k_max)?;
        let (r, s) = self.tilde_curvature()?;
        let mut acc = s;
        let mut out = Vec::with_capacity(k_max);
        for k in 1..=k_max {
            if k > 1 {
                acc = acc.mul(&r)?;
            }
            let tr = acc.trace_ab()?;
            out.push(tr.map_coeffs(Poly1::integrate_unit).scale(&factorial(k - 1).recip()));
        }
        Ok(out)
    }
}

/// Straight line `θ(t) = (1 − t)θ₀ + tθ₁`, from `c₀` at `t = 0` to `c₁`.
pub fn straight_line(c0: &Connection, c1: &Connection) -> Result<PolyPath> {
    PolyPath::interpolate(&[(Poly1::one_minus_t(), c0), (Poly1::t(), c1)])
}

/// Quadratic interpolation through `c₁, c₂, c₃` at `t = 0, 1/2, 1`.
pub fn three_point_path(c1: &Connection, c2: &Connection, c3: &Connection) -> Result<PolyPath> {
    let [q1, q2, q3] = lagrange_quadratics();
    PolyPath::interpolate(&[(q1, c1), (q2, c2), (q3, c3)])
}

/// `1 − 3t + 2t²`, `4t − 4t²`, `−t + 2t²`: equal to 1 at one of `0, 1/2, 1`
/// and 0 at the others.
pub fn lagrange_quadratics() -> [Poly1; 3] {
    [
        Poly1::new(alloc::vec![rat(1), rat(-3), rat(2)]),
        Poly1::new(alloc::vec![rat(0), rat(4), rat(-4)]),
        Poly1::new(alloc::vec![rat(0), rat(-1), rat(2)]),
    ]
}

pub fn reverse_path(path: &PolyPath) -> PolyPath {
    path.reverse()
}

pub fn kcs(path: &PolyPath, k_max: usize) -> Result<Vec<AbClass>> {
    path.kcs(k_max)
}

/// KCS of the straight line from `c₀` to `c₁`; meaningful modulo exact forms.
pub fn kcs_between(c0: &Connection, c1: &Connection, k_max: usize) -> Result<Vec<AbClass>> {
    straight_line(c0, c1)?.kcs(k_max)
}

pub fn induced_path(path: &PolyPath, psi: &AlgebraHom) -> Result<PolyPath> {
    path.induced(psi)
}

/// The classical closed form of the Chern–Simons transgression,
/// `ε_k (1/(k−1)!) ∫₀¹ tr(S R^{k−1}) dt`, with each sign `ε_k` fixed by
/// agreement with [`PolyPath::kcs`] on a reference path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormKcs {
    signs: Vec<i8>,
}

impl ClosedFormKcs {
    /// Determines `ε_1, …, ε_{k_max}` on paths over `M₂(ℚ)` and `ℚ[x]/(x³)`
    /// drawn from a fixed seed, using the first path on which both sides
    /// are nonzero.
    pub fn calibrate(k_max: usize) -> Result<Self> {
        use rand::SeedableRng;
        let mut signs: Vec<Option<i8>> = alloc::vec![None; k_max];
        for name in ["M2", "trunc3"] {
            let alg = crate::fixtures::fixture(name, 2 * k_max.max(1))?;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6b6373);
            for _ in 0..16 {
                if signs.iter().all(Option::is_some) {
                    break;
                }
                let p = crate::connections::random_idempotent(&alg, 1, &mut rng)?;
                let c0 = crate::connections::random_connection(&p, &mut rng)?;
                let c1 = crate::connections::random_connection(&p, &mut rng)?;
                let path = straight_line(&c0, &c1)?;
                let structural = path.kcs(k_max)?;
                let closed = path.closed_form_unsigned(k_max)?;
                for k in 0..k_max {
                    if signs[k].is_some() || structural[k].is_zero() {
                        continue;
                    }
                    if closed[k] == structural[k] {
                        signs[k] = Some(1);
                    } else if closed[k].neg() == structural[k] {
                        signs[k] = Some(-1);
                    } else {
                        return Err(Error::Invalid(alloc::format!("closed form disagrees with KCS_{} up to sign", k + 1)));
                    }
                }
            }
        }
        let signs = signs
            .into_iter()
            .enumerate()
            .map(|(k, s)| s.ok_or_else(|| Error::Invalid(alloc::format!("no reference path with KCS_{} ≠ 0", k + 1))))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClosedFormKcs { signs })
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Closed-form KCS for `k = 1..=k_max`, with `k_max` at most the
    /// calibrated range.
    pub fn evaluate(&self, path: &PolyPath, k_max: usize) -> Result<Vec<AbClass>> {
        if k_max > self.signs.len() {
            return Err(Error::Invalid(alloc::format!("calibrated only up to k = {}", self.signs.len())));
        }
        let raw = path.closed_form_unsigned(k_max)?;
        Ok(raw.into_iter().zip(&self.signs).map(|(c, &e)| if e < 0 { c.neg() } else { c }).collect())
    }
}

/// Two-parameter family `θ(s, t)` on a fixed `Im(p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bigon {
    p: Idempotent,
    theta: FormMatrix<Poly2>,
}

impl Bigon {
    pub fn p(&self) -> &Idempotent {
        &self.p
    }

    pub fn theta(&self) -> &FormMatrix<Poly2> {
        &self.theta
    }

    /// The path at fixed `s`.
    pub fn ev_s(&self, s: &Rational) -> Result<PolyPath> {
        PolyPath::new(self.p.clone(), self.theta.map(|e| e.map_coeffs(|_, q| q.eval_s(s))))
    }

    /// The family in `s` at fixed `t`, as a path in its own variable.
    pub fn ev_t(&self, t: &Rational) -> Result<PolyPath> {
        PolyPath::new(self.p.clone(), self.theta.map(|e| e.map_coeffs(|_, q| q.eval_t(t))))
    }

    /// Curvature of `p∘d + θ` over `Λ•⊗̂Λ•⊗̂Ω^u_•(A)`.
    pub fn curvature(&self) -> Result<Matrix<BiForm>> {
        let p = self.p.matrix().lift::<Poly2>().map(|e| BiForm::from_one(e.clone()));
        let theta = self.theta.map(|e| BiForm::from_one(e.clone()));
        curvature_formula(&p, &theta)
    }

    /// `K K₁ ch_k(Δ̃)` for `k = 1..=k_max`; entry `k − 1` has degree `2k − 2`
    /// and differential `KCS_k(path at s=0) − KCS_k(path at s=1)`.
    pub fn secondary_transgression(&self, k_max: usize) -> Result<Vec<AbClass>> {
        self.p.algebra().check_degree(2 * k_max)?;
        let r = self.curvature()?;
        let mut power = self.p.matrix().lift::<Poly2>().map(|e| BiForm::from_one(e.clone()));
        let mut out = Vec::with_capacity(k_max);
        for k in 1..=k_max {
            power = power.mul(&r)?;
            let cls = power.trace()?.project_dsdt()?;
            let integrated = cls.map_coeffs(|q| q.integrate_s().integrate_unit());
            out.push(integrated.scale(&factorial(k).recip()));
        }
        Ok(out)
    }
}

/// `θ(s, t) = (1 − s)θ₁(t) + sθ₂(t)` for paths with common endpoints.
pub fn bigon_straight(path1: &PolyPath, path2: &PolyPath) -> Result<Bigon> {
    if path1.p != path2.p {
        return Err(Error::IdempotentMismatch);
    }
    for t in [Rational::zero(), Rational::one()] {
        if path1.eval(&t)? != path2.eval(&t)? {
            return Err(Error::EndpointMismatch);
        }
    }
    let in_t = |m: &FormMatrix<Poly1>, w: Poly2| m.map(|e| e.map_coeffs(|_, q| Poly2::from_t(q).mul_ref(&w)));
    let one_minus_s = Poly2::constant(rat(1)).sub_ref(&Poly2::s());
    let theta = in_t(&path1.theta, one_minus_s).add(&in_t(&path2.theta, Poly2::s()))?;
    Ok(Bigon { p: path1.p.clone(), theta })
}

pub fn secondary_transgression(b: &Bigon, k_max: usize) -> Result<Vec<AbClass>> {
    b.secondary_transgression(k_max)
}
