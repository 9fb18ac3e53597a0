use kchern_core::connections::{
    random_automorphism, random_conjugate, random_connection, random_form, random_idempotent, Connection, Idempotent,
    ModuleIso,
};
use kchern_core::exactmath::rat;
use kchern_core::fixtures::{fixture, sample_hom, FIXTURE_NAMES};
use kchern_core::khat::{
    chain_witnesses, hexagon_suite, in_mk, map_a, map_i, map_r, matching_omega, odd_chern, odd_chern_with, verify_kcs_equivalence,
    K1Pair, KCSWitness, KHatGen,
};
use kchern_core::uforms::{project_ab, AbClass, UForm};
use kchern_core::algebra::AlgebraRef;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const K_MAX: usize = 2;

fn alg(name: &str) -> AlgebraRef {
    fixture(name, 6).unwrap()
}

fn size(a: &AlgebraRef) -> usize {
    if a.dim() > 2 {
        1
    } else {
        2
    }
}

fn odd_class(a: &AlgebraRef, rng: &mut ChaCha8Rng) -> AbClass {
    project_ab(&random_form(a, rng, 1, 2).add(&random_form(a, rng, 3, 2))).unwrap()
}

fn random_gen(a: &AlgebraRef, rng: &mut ChaCha8Rng) -> KHatGen {
    let p = random_idempotent(a, size(a), rng).unwrap();
    KHatGen::new(random_connection(&p, rng).unwrap(), odd_class(a, rng)).unwrap()
}

fn graded(cs: &[AbClass], a: &AlgebraRef) -> AbClass {
    cs.iter().fold(AbClass::zero(a), |x, y| x.add(y))
}

#[test]
fn r_is_closed_and_reduces_to_chern() {
    for name in FIXTURE_NAMES {
        let a = alg(name);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_gen(&a, &mut rng);
        let r = map_r(&g, K_MAX).unwrap();
        for c in &r {
            assert!(c.differential().unwrap().is_zero(), "{name}");
        }
        let bare = KHatGen::new(g.conn().clone(), AbClass::zero(&a)).unwrap();
        assert_eq!(map_r(&bare, K_MAX).unwrap(), g.conn().chern(K_MAX).unwrap(), "{name}");
        let omega = odd_class(&a, &mut rng);
        let (g1, g0) = map_a(&a, &omega).unwrap();
        let d = omega.differential().unwrap();
        let r1 = map_r(&g1, K_MAX).unwrap();
        for (k, r) in r1.iter().enumerate() {
            assert_eq!(*r, d.part(2 * k), "{name}: R∘a = d in degree {}", 2 * k);
        }
        assert!(map_r(&g0, K_MAX).unwrap().iter().all(AbClass::is_zero));
        assert_eq!(map_i(&g1).size(), 0);
    }
}

#[test]
fn even_omega_is_rejected() {
    let a = alg("QxQ");
    let e_de_de = project_ab(&UForm::from_letters(&a, &[1, 1, 1], rat(1))).unwrap();
    assert!(KHatGen::zero_module(&a, e_de_de).is_err());
}

#[test]
fn reflexive_and_constructed_witnesses_are_accepted() {
    for name in FIXTURE_NAMES {
        let a = alg(name);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g0 = random_gen(&a, &mut rng);
        let refl = verify_kcs_equivalence(&g0, &g0, &KCSWitness::trivial(g0.p()), K_MAX).unwrap();
        assert!(refl.accepted, "{name}: reflexivity");

        // (p, D, 0) ∼ (p, D′, −KCS(D, D′)) by the identity.
        let d1 = random_connection(g0.p(), &mut rng).unwrap();
        let g_bare = KHatGen::new(g0.conn().clone(), AbClass::zero(&a)).unwrap();
        let omega1 = graded(&kchern_core::transgression::kcs_between(g0.conn(), &d1, K_MAX).unwrap(), &a).neg();
        let g1 = KHatGen::new(d1, omega1).unwrap();
        let w = KCSWitness::trivial(g0.p());
        let v = verify_kcs_equivalence(&g_bare, &g1, &w, K_MAX).unwrap();
        assert!(v.accepted, "{name}: constructed ω");
        for cert in &v.degrees {
            assert!(cert.check().unwrap(), "{name}: certificate in degree {}", cert.degree);
        }
        let back = verify_kcs_equivalence(&g1, &g_bare, &w.inverse(), K_MAX).unwrap();
        assert!(back.accepted, "{name}: symmetry");
    }
}

/// Stabilized witness: `φ = c ⊕ id: M₀ ⊕ N → M₁ ⊕ N` with `c` conjugation
/// onto `M₁ = g M₀ g⁻¹` and `N = A`.
fn stabilized_instance(a: &AlgebraRef, rng: &mut ChaCha8Rng) -> (KHatGen, KHatGen, KCSWitness) {
    let g0 = random_gen(a, rng);
    let conj = random_conjugate(g0.p(), rng).unwrap();
    let n = Idempotent::identity(a, 1);
    let stab = random_connection(&n, rng).unwrap();
    let target = conj.target().direct_sum(&n).unwrap();
    let iso = conj.direct_sum(&ModuleIso::identity(&n)).unwrap();
    assert_eq!(iso.target(), &target);
    let w = KCSWitness::new(stab, iso).unwrap();
    let d1 = random_connection(conj.target(), rng).unwrap();
    let omega1 = matching_omega(&g0, &d1, &w, K_MAX).unwrap();
    (g0, KHatGen::new(d1, omega1).unwrap(), w)
}

#[test]
fn stabilized_and_chained_witnesses_are_accepted() {
    for name in FIXTURE_NAMES {
        let a = alg(name);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (g0, g1, w01) = stabilized_instance(&a, &mut rng);
        assert!(verify_kcs_equivalence(&g0, &g1, &w01, K_MAX).unwrap().accepted, "{name}: stabilized");
        let conj = random_conjugate(g1.p(), &mut rng).unwrap();
        let n12 = random_idempotent(&a, 1, &mut rng).unwrap();
        let stab12 = random_connection(&n12, &mut rng).unwrap();
        let w12 = KCSWitness::new(stab12, conj.direct_sum(&ModuleIso::identity(&n12)).unwrap()).unwrap();
        let d2 = random_connection(conj.target(), &mut rng).unwrap();
        let g2 = KHatGen::new(d2.clone(), matching_omega(&g1, &d2, &w12, K_MAX).unwrap()).unwrap();
        assert!(verify_kcs_equivalence(&g1, &g2, &w12, K_MAX).unwrap().accepted, "{name}: second link");
        let w02 = chain_witnesses(&g1, &g2, &w01, &w12).unwrap();
        assert!(verify_kcs_equivalence(&g0, &g2, &w02, K_MAX).unwrap().accepted, "{name}: chained");
    }
}

#[test]
fn nonexact_perturbation_is_rejected() {
    // Over ℚ[ε] every odd class is exact and over ℚ×ℚ, ℚ[C₂] there are
    // no odd classes, so only these two fixtures admit a perturbation.
    for name in ["trunc3", "M2"] {
        let a = alg(name);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (g0, g1, w) = stabilized_instance(&a, &mut rng);
        let bump = (0..40).map(|_| odd_class(&a, &mut rng)).find(|c| !c.is_exact().unwrap()).expect("a non-exact odd class");
        let perturbed = KHatGen::new(g1.conn().clone(), g1.omega().add(&bump)).unwrap();
        let v = verify_kcs_equivalence(&g0, &perturbed, &w, K_MAX).unwrap();
        assert!(!v.accepted, "{name}");
        assert!(v.degrees.iter().any(|c| !c.is_exact()));
    }
}

#[test]
fn in_mk_examples() {
    let a = alg("M2");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g = random_gen(&a, &mut rng);
    assert!(in_mk(&g, &g, K_MAX).unwrap());
    // E11·dE12 is odd and not closed.
    let open = project_ab(&UForm::from_letters(&a, &[1, 2], rat(1))).unwrap();
    assert!(!open.differential().unwrap().is_zero());
    let (x, z) = map_a(&a, &open).unwrap();
    assert!(!in_mk(&x, &z, K_MAX).unwrap());
    let d_e12 = project_ab(&UForm::from_letters(&a, &[0, 2], rat(1))).unwrap();
    let (x, z) = map_a(&a, &d_e12).unwrap();
    assert!(in_mk(&x, &z, K_MAX).unwrap());
}

fn free_k1(a: &AlgebraRef, n: usize, rng: &mut ChaCha8Rng) -> K1Pair {
    K1Pair::new(random_automorphism(a, n, rng).unwrap()).unwrap()
}

fn exact_difference(x: &[AbClass], y: &[AbClass]) -> bool {
    x.iter().zip(y).all(|(a, b)| a.sub(b).is_exact().unwrap())
}

#[test]
fn odd_chern_laws() {
    for name in FIXTURE_NAMES {
        let a = alg(name);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let n = size(&a);
        let id = K1Pair::new(ModuleIso::identity(&Idempotent::identity(&a, n))).unwrap();
        assert!(odd_chern(&id, K_MAX).unwrap().iter().all(|c| c.is_exact().unwrap()), "{name}: identity");
        let (u1, u2) = (free_k1(&a, n, &mut rng), free_k1(&a, n, &mut rng));
        let lhs = odd_chern(&u1.compose(&u2).unwrap(), K_MAX).unwrap();
        let rhs: Vec<AbClass> =
            odd_chern(&u1, K_MAX).unwrap().iter().zip(odd_chern(&u2, K_MAX).unwrap()).map(|(x, y)| x.add(&y)).collect();
        assert!(exact_difference(&lhs, &rhs), "{name}: composition");
        let v = free_k1(&a, 1, &mut rng);
        let lhs = odd_chern(&u1.direct_sum(&v).unwrap(), K_MAX).unwrap();
        let rhs: Vec<AbClass> =
            odd_chern(&u1, K_MAX).unwrap().iter().zip(odd_chern(&v, K_MAX).unwrap()).map(|(x, y)| x.add(&y)).collect();
        assert!(exact_difference(&lhs, &rhs), "{name}: block sum");
        let other: Connection = random_connection(u1.p(), &mut rng).unwrap();
        assert!(exact_difference(&odd_chern(&u1, K_MAX).unwrap(), &odd_chern_with(&u1, &other, K_MAX).unwrap()), "{name}: connection");
    }
}

#[test]
fn hexagon_passes_on_every_fixture() {
    for name in FIXTURE_NAMES {
        let a = alg(name);
        let psi = sample_hom(name, 6).unwrap();
        for seed in [1, 7, 42] {
            for check in hexagon_suite(&a, Some(&psi), seed, K_MAX).unwrap() {
                assert!(check.passed, "{name} seed {seed}: {} {:?}", check.name, check.counterexample);
                assert!(check.cases > 0);
            }
        }
    }
}
