//! Graded-algebra laws of universal forms, checked against an independent
//! product oracle and as properties over every builtin fixture.

use std::collections::BTreeMap;

use kchern_core::algebra::AlgebraRef;
use kchern_core::connections::random_form;
use kchern_core::exactmath::{rat, Poly1, Poly2, Rational};
use kchern_core::fixtures::{fixture, FIXTURE_NAMES};
use kchern_core::transgression::{BiForm, TForm};
use kchern_core::uforms::{abelianization, de_rham_homology, dimension, GradedForm, UForm, Word};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: usize = 6;

fn alg(index: usize) -> AlgebraRef {
    fixture(FIXTURE_NAMES[index], CAP).unwrap()
}

type Tensor = BTreeMap<Vec<usize>, Rational>;

fn push(t: &mut Tensor, letters: Vec<usize>, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(letters.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        t.remove(&letters);
    }
}

fn basis_product(a: &AlgebraRef, i: usize, j: usize) -> Vec<(usize, Rational)> {
    a.product(i, j).entries().to_vec()
}

/// `(a₀da₁⋯daₙ)·b` by the expansion
/// `(−1)ⁿ a₀a₁ da₂⋯db + Σ (−1)^{n−i} a₀⋯d(aᵢaᵢ₊₁)⋯db + a₀da₁⋯d(aₙb)`,
/// with `d1 = 0` dropping any unit letter.
fn times_element(a: &AlgebraRef, w: &[usize], b: usize) -> Tensor {
    let mut out = Tensor::new();
    let n = w.len() - 1;
    if b == 0 {
        push(&mut out, w.to_vec(), Rational::one());
        return out;
    }
    if n == 0 {
        for (k, c) in basis_product(a, w[0], b) {
            push(&mut out, vec![k], c);
        }
        return out;
    }
    let sign = |e: usize| if e.is_multiple_of(2) { rat(1) } else { rat(-1) };
    for (k, c) in basis_product(a, w[0], w[1]) {
        let mut l = vec![k];
        l.extend_from_slice(&w[2..]);
        l.push(b);
        push(&mut out, l, sign(n) * c);
    }
    for i in 1..n {
        for (k, c) in basis_product(a, w[i], w[i + 1]) {
            if k == 0 {
                continue;
            }
            let mut l = w[..i].to_vec();
            l.push(k);
            l.extend_from_slice(&w[i + 2..]);
            l.push(b);
            push(&mut out, l, sign(n - i) * c);
        }
    }
    for (k, c) in basis_product(a, w[n], b) {
        if k == 0 {
            continue;
        }
        let mut l = w[..n].to_vec();
        l.push(k);
        push(&mut out, l, c);
    }
    out
}

fn oracle_mul(a: &AlgebraRef, x: &UForm, y: &UForm) -> UForm {
    let m = a.dim();
    let mut out = Tensor::new();
    for (wx, cx) in x.terms() {
        for (wy, cy) in y.terms() {
            let ly = wy.letters(m);
            for (mut l, c) in times_element(a, &wx.letters(m), ly[0]) {
                l.extend_from_slice(&ly[1..]);
                push(&mut out, l, c * cx * cy);
            }
        }
    }
    UForm::from_terms(a, out.into_iter().map(|(l, c)| (Word::from_letters(m, &l).unwrap(), c)))
}

fn sign(degree: usize) -> Rational {
    if degree.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

fn forms(a: &AlgebraRef, seed: u64, degrees: &[usize]) -> Vec<UForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    degrees.iter().map(|&d| random_form(a, &mut rng, d, 3)).collect()
}

/// Degrees `(p, q, r)` with `p + q + r + 1 ≤ CAP`.
fn triple() -> impl Strategy<Value = (usize, usize, usize)> {
    (0..=5usize, 0..=5usize, 0..=5usize).prop_filter("fits under cap", |(p, q, r)| p + q + r < CAP)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn d_squares_to_zero(fix in 0..6usize, seed: u64, deg in 0..=4usize) {
        let a = alg(fix);
        let w = &forms(&a, seed, &[deg])[0];
        prop_assert!(w.differential().differential().is_zero());
    }

    #[test]
    fn product_matches_oracle(fix in 0..6usize, seed: u64, (p, q, _) in triple()) {
        let a = alg(fix);
        let f = forms(&a, seed, &[p, q]);
        prop_assert_eq!(f[0].mul(&f[1]).unwrap(), oracle_mul(&a, &f[0], &f[1]));
    }

    #[test]
    fn product_is_associative(fix in 0..6usize, seed: u64, (p, q, r) in triple()) {
        let a = alg(fix);
        let f = forms(&a, seed, &[p, q, r]);
        let left = f[0].mul(&f[1]).unwrap().mul(&f[2]).unwrap();
        let right = f[0].mul(&f[1].mul(&f[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn graded_leibniz(fix in 0..6usize, seed: u64, (p, q, _) in triple()) {
        let a = alg(fix);
        let f = forms(&a, seed, &[p, q]);
        let lhs = f[0].mul(&f[1]).unwrap().differential();
        let rhs = f[0].differential().mul(&f[1]).unwrap().add(&f[0].mul(&f[1].differential()).unwrap().scale(&sign(p)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_is_two_sided(fix in 0..6usize, seed: u64, deg in 0..=5usize) {
        let a = alg(fix);
        let w = &forms(&a, seed, &[deg])[0];
        let one = UForm::one(&a);
        prop_assert_eq!(&one.mul(w).unwrap(), w);
        prop_assert_eq!(&w.mul(&one).unwrap(), w);
    }
}

#[test]
fn word_count_is_m_times_m_minus_one_to_the_n() {
    for (i, name) in FIXTURE_NAMES.iter().enumerate() {
        let a = alg(i);
        let m = a.dim();
        for n in 0..=6 {
            let expected = m * (m - 1).pow(n as u32);
            assert_eq!(dimension(m, n), expected, "{name} degree {n}");
            let mut letters = vec![0; n + 1];
            let mut seen = 0;
            loop {
                if let Some(w) = Word::from_letters(m, &letters) {
                    assert_eq!(w.letters(m), letters);
                    assert!(w.index < expected);
                    seen += 1;
                }
                let mut pos = n + 1;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    letters[pos] += 1;
                    if letters[pos] < m {
                        break;
                    }
                    letters[pos] = 0;
                }
                if letters.iter().all(|&l| l == 0) {
                    break;
                }
            }
            assert_eq!(seen, expected, "{name} degree {n}");
            if n <= 4 {
                assert_eq!(abelianization(&a, n).unwrap().ambient_dim(), expected);
            }
        }
    }
}

#[test]
fn rationals_have_homology_only_in_degree_zero() {
    let a = fixture("Q", CAP).unwrap();
    let dims: Vec<usize> = (0..=5).map(|n| de_rham_homology(&a, n).unwrap().dimension).collect();
    assert_eq!(dims, [1, 0, 0, 0, 0, 0]);
}

#[test]
fn homology_of_every_fixture() {
    let expected: [(&str, [usize; 5]); 6] = [
        ("Q", [1, 0, 0, 0, 0]),
        ("dual", [1, 0, 0, 0, 0]),
        ("trunc3", [1, 0, 0, 0, 0]),
        ("QxQ", [2, 0, 1, 0, 1]),
        ("M2", [1, 0, 0, 0, 0]),
        ("QC2", [2, 0, 1, 0, 1]),
    ];
    for (name, dims) in expected {
        let a = fixture(name, CAP).unwrap();
        let got: Vec<usize> = (0..5).map(|n| de_rham_homology(&a, n).unwrap().dimension).collect();
        assert_eq!(got, dims, "{name}");
        for n in 0..5 {
            for r in de_rham_homology(&a, n).unwrap().representatives {
                assert!(kchern_core::uforms::project_ab(&r.differential()).unwrap().is_zero(), "{name} degree {n}");
            }
        }
    }
}

fn random_poly<R: Rng>(rng: &mut R) -> Poly1 {
    Poly1::new((0..3).map(|_| rat(rng.random_range(-2..=2))).collect())
}

fn random_tform(a: &AlgebraRef, rng: &mut ChaCha8Rng, degree: usize) -> TForm {
    let base = random_form(a, rng, degree, 2);
    let dt = if degree > 0 { random_form(a, rng, degree - 1, 2) } else { UForm::zero(a) };
    let base = base.map_coeffs(|_, c| random_poly(rng).scale(c));
    let dt = dt.map_coeffs(|_, c| random_poly(rng).scale(c));
    TForm::new(base, dt).unwrap()
}

trait Scale {
    fn scale(&self, c: &Rational) -> Self;
}

impl Scale for Poly1 {
    fn scale(&self, c: &Rational) -> Self {
        Poly1::new(self.coeffs().iter().map(|x| x * c).collect())
    }
}

#[test]
fn cylinder_forms_satisfy_dga_laws() {
    for (i, name) in FIXTURE_NAMES.iter().enumerate() {
        let a = alg(i);
        let mut rng = ChaCha8Rng::seed_from_u64(11 + i as u64);
        for _ in 0..20 {
            let (p, q) = (rng.random_range(0..=2), rng.random_range(0..=2));
            let (x, y, z) = (random_tform(&a, &mut rng, p), random_tform(&a, &mut rng, q), random_tform(&a, &mut rng, 1));
            assert!(x.differential().differential().is_zero(), "{name}");
            assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap(), "{name}");
            let lhs = x.mul(&y).unwrap().differential();
            let rhs = x.differential().mul(&y).unwrap().add(&x.mul(&y.differential()).unwrap().scale(&sign(p)));
            assert_eq!(lhs, rhs, "{name}");
        }
    }
}

#[test]
fn homotopy_formula_on_random_cylinder_forms() {
    let mut count = 0;
    for (i, name) in FIXTURE_NAMES.iter().enumerate() {
        let a = alg(i);
        let mut rng = ChaCha8Rng::seed_from_u64(29 + i as u64);
        for _ in 0..34 {
            let deg = rng.random_range(1..=4);
            let w = random_tform(&a, &mut rng, deg);
            let lhs = w.differential().homotopy_k().add(&w.homotopy_k().differential());
            assert_eq!(lhs, w.ev(&rat(1)).sub(&w.ev(&rat(0))), "{name}");
            count += 1;
        }
    }
    assert!(count >= 200);
}

#[test]
fn iterated_integrals_agree_on_the_square_slot() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (i, name) in FIXTURE_NAMES.iter().enumerate() {
        let a = alg(i);
        for _ in 0..9 {
            let deg = rng.random_range(0..=3);
            let top = random_form(&a, &mut rng, deg, 3).map_coeffs(|_, c| {
                let mut q = Poly2::constant(rat(0));
                for _ in 0..3 {
                    let m = Poly2::monomial(c * rat(rng.random_range(-2..=2)), rng.random_range(0..3), rng.random_range(0..3));
                    q = q + m;
                }
                q
            });
            let z = UForm::zero(&a);
            let b = BiForm { one: z.clone(), ds: z.clone(), dt: z, dsdt: top };
            assert_eq!(b.k1().homotopy_k(), b.k2().homotopy_k(), "{name}");
        }
    }
}
