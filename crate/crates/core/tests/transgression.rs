//! Chern-Simons transgression along polynomial paths of connections.

use kchern_core::connections::{random_conjugate, random_connection, random_idempotent, Connection};
use kchern_core::exactmath::{rat, ratio, Poly1};
use kchern_core::fixtures::{fixture, sample_hom, FIXTURE_NAMES};
use kchern_core::transgression::{bigon_straight, straight_line, three_point_path, ClosedFormKcs, PolyPath};
use kchern_core::uforms::AbClass;
use kchern_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const K_MAX: usize = 2;

/// Fixtures whose abelianization has odd-degree classes, so that KCS forms
/// can be nonzero at all.
const ODD_FIXTURES: [&str; 3] = ["dual", "trunc3", "M2"];

fn endpoints_pair(name: &str, seed: u64) -> (Connection, Connection, Connection) {
    let alg = fixture(name, 6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = if alg.dim() > 2 { 1 } else { 2 };
    let p = random_idempotent(&alg, n, &mut rng).unwrap();
    let c0 = random_connection(&p, &mut rng).unwrap();
    let c1 = random_connection(&p, &mut rng).unwrap();
    let c2 = random_connection(&p, &mut rng).unwrap();
    (c0, c1, c2)
}

#[test]
fn kcs_differential_is_chern_difference() {
    for name in FIXTURE_NAMES {
        let mut nontrivial = 0;
        for seed in 0..4 {
            let (c0, c1, _) = endpoints_pair(name, seed);
            let path = straight_line(&c0, &c1).unwrap();
            let kcs = path.kcs(K_MAX).unwrap();
            let (ch0, ch1) = (c0.chern(K_MAX).unwrap(), c1.chern(K_MAX).unwrap());
            nontrivial += kcs.iter().any(|c| !c.is_zero()) as usize;
            for k in 1..=K_MAX {
                let d = kcs[k - 1].differential().unwrap();
                assert_eq!(d, ch1[k].sub(&ch0[k]), "{name} seed {seed} k {k}");
            }
        }
        assert!(!ODD_FIXTURES.contains(&name) || nontrivial > 0, "{name}: only trivial paths");
    }
}

#[test]
fn reversal_negates_kcs() {
    for name in FIXTURE_NAMES {
        let (c0, c1, _) = endpoints_pair(name, 11);
        let path = straight_line(&c0, &c1).unwrap();
        let fwd = path.kcs(K_MAX).unwrap();
        let back = path.reverse().kcs(K_MAX).unwrap();
        for (a, b) in fwd.iter().zip(&back) {
            assert_eq!(a.neg(), *b, "{name}");
        }
    }
}

#[test]
fn secondary_transgression_bounds_kcs_difference() {
    for name in FIXTURE_NAMES {
        let (c0, c1, c2) = endpoints_pair(name, 5);
        let path1 = straight_line(&c0, &c1).unwrap();
        let path2 = three_point_path(&c0, &c2, &c1).unwrap();
        let bigon = bigon_straight(&path1, &path2).unwrap();
        let pot = bigon.secondary_transgression(K_MAX).unwrap();
        if name != "Q" {
            assert!(!pot[0].is_zero() || !pot[1].is_zero(), "{name}: trivial bigon");
        }
        let (k1, k2) = (path1.kcs(K_MAX).unwrap(), path2.kcs(K_MAX).unwrap());
        for k in 0..K_MAX {
            assert_eq!(pot[k].differential().unwrap(), k1[k].sub(&k2[k]), "{name} k {}", k + 1);
        }
    }
}

#[test]
fn triangle_residual_is_exact() {
    for name in FIXTURE_NAMES {
        let (c1, c2, c3) = endpoints_pair(name, 9);
        let kcs = |a: &Connection, b: &Connection| straight_line(a, b).unwrap().kcs(K_MAX).unwrap();
        let (a, b, c) = (kcs(&c1, &c3), kcs(&c1, &c2), kcs(&c2, &c3));
        for k in 0..K_MAX {
            let r = a[k].sub(&b[k]).sub(&c[k]);
            assert!(r.is_exact().unwrap(), "{name} k {}", k + 1);
        }
    }
}

#[test]
fn dual_numbers_line_has_kcs_one_d_epsilon() {
    let alg = fixture("dual", 6).unwrap();
    let p = kchern_core::connections::Idempotent::identity(&alg, 1);
    let de = kchern_core::uforms::UForm::from_letters(&alg, &[0, 1], rat(1));
    let theta = kchern_core::connections::FormMatrix::from_entries(&alg, 1, 1, vec![de.clone()]).unwrap();
    let c1 = Connection::new(p.clone(), theta).unwrap();
    let c0 = kchern_core::connections::grassmann(&p);
    let path = straight_line(&c0, &c1).unwrap();
    let kcs = path.kcs(1).unwrap();
    assert_eq!(kcs[0], kchern_core::uforms::project_ab(&de).unwrap());
}

#[test]
fn constant_path_has_zero_kcs() {
    for name in FIXTURE_NAMES {
        let (c0, _, _) = endpoints_pair(name, 2);
        assert!(PolyPath::constant(&c0).kcs(K_MAX).unwrap().iter().all(AbClass::is_zero), "{name}");
        assert!(straight_line(&c0, &c0).unwrap().kcs(K_MAX).unwrap().iter().all(AbClass::is_zero), "{name}");
    }
}

#[test]
fn kcs_is_additive_under_direct_sum() {
    for name in FIXTURE_NAMES {
        let (a0, a1, _) = endpoints_pair(name, 3);
        let (b0, b1, _) = endpoints_pair(name, 4);
        let (pa, pb) = (straight_line(&a0, &a1).unwrap(), straight_line(&b0, &b1).unwrap());
        let sum = pa.direct_sum(&pb).unwrap().kcs(K_MAX).unwrap();
        let (x, y) = (pa.kcs(K_MAX).unwrap(), pb.kcs(K_MAX).unwrap());
        for k in 0..K_MAX {
            assert_eq!(sum[k], x[k].add(&y[k]), "{name} k {}", k + 1);
        }
    }
}

#[test]
fn kcs_is_invariant_under_pullback_and_reparametrization() {
    for name in FIXTURE_NAMES {
        let alg = fixture(name, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let n = if alg.dim() > 2 { 1 } else { 2 };
        let p = random_idempotent(&alg, n, &mut rng).unwrap();
        let phi = random_conjugate(&p, &mut rng).unwrap();
        let q = phi.target();
        let path = straight_line(&random_connection(q, &mut rng).unwrap(), &random_connection(q, &mut rng).unwrap()).unwrap();
        let kcs = path.kcs(K_MAX).unwrap();
        assert_eq!(path.pullback(&phi).unwrap().kcs(K_MAX).unwrap(), kcs, "{name}");
        let square = Poly1::new(vec![rat(0), rat(0), rat(1)]);
        assert_eq!(path.reparametrize(&square).kcs(K_MAX).unwrap(), kcs, "{name}");
    }
}

#[test]
fn kcs_is_natural_under_extension_of_scalars() {
    for name in FIXTURE_NAMES {
        let psi = sample_hom(name, 6).unwrap();
        let (c0, c1, _) = endpoints_pair(name, 13);
        let path = straight_line(&c0, &c1).unwrap();
        let mapped: Vec<AbClass> = path.kcs(K_MAX).unwrap().iter().map(|c| psi.apply_class(c).unwrap()).collect();
        assert_eq!(path.induced(&psi).unwrap().kcs(K_MAX).unwrap(), mapped, "{name}");
    }
}

#[test]
fn cylinder_character_restricts_to_endpoint_characters() {
    for name in FIXTURE_NAMES {
        let (c0, c1, c2) = endpoints_pair(name, 14);
        let path = three_point_path(&c0, &c2, &c1).unwrap();
        let cyl = path.cylinder_chern(K_MAX).unwrap();
        let (ch0, ch1) = (c0.chern(K_MAX).unwrap(), c1.chern(K_MAX).unwrap());
        for k in 0..=K_MAX {
            assert_eq!(cyl[k].ev(&rat(0)), ch0[k], "{name} k {k}");
            assert_eq!(cyl[k].ev(&rat(1)), ch1[k], "{name} k {k}");
            assert!(cyl[k].differential().unwrap().base.is_zero(), "{name} k {k}");
        }
    }
}

#[test]
fn closed_form_agrees_with_homotopy_integral() {
    let closed = ClosedFormKcs::calibrate(K_MAX).unwrap();
    assert_eq!(closed.signs().len(), K_MAX);
    for name in FIXTURE_NAMES {
        for seed in 0..25 {
            let (c0, c1, c2) = endpoints_pair(name, 100 + seed);
            let path = if seed % 2 == 0 { straight_line(&c0, &c1).unwrap() } else { three_point_path(&c0, &c2, &c1).unwrap() };
            assert_eq!(closed.evaluate(&path, K_MAX).unwrap(), path.kcs(K_MAX).unwrap(), "{name} seed {seed}");
        }
    }
}

#[test]
fn three_point_path_interpolates_its_nodes() {
    for name in FIXTURE_NAMES {
        let (c0, c1, c2) = endpoints_pair(name, 15);
        let path = three_point_path(&c0, &c1, &c2).unwrap();
        assert_eq!(path.eval(&rat(0)).unwrap(), c0, "{name}");
        assert_eq!(path.eval(&ratio(1, 2)).unwrap(), c1, "{name}");
        assert_eq!(path.eval(&rat(1)).unwrap(), c2, "{name}");
    }
}

#[test]
fn bigon_needs_common_endpoints() {
    let (c0, c1, c2) = endpoints_pair("M2", 16);
    let a = straight_line(&c0, &c1).unwrap();
    let b = straight_line(&c0, &c2).unwrap();
    assert!(matches!(bigon_straight(&a, &b), Err(Error::EndpointMismatch)));
    let alg = fixture("M2", 6).unwrap();
    let other = kchern_core::connections::grassmann(&kchern_core::connections::Idempotent::identity(&alg, 2));
    let c = straight_line(&other, &other).unwrap();
    assert!(bigon_straight(&a, &c).is_err());
}
