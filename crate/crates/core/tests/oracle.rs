use num_bigint::BigInt;
use num_rational::BigRational;

use exlie::golden::golden_table;
use exlie::oracle::{brute_n_gm, brute_n_gms, oracle_budget, orbit_census};
use exlie::rootdata::{distinct_eigenvalues, weight_system, GroupType};
use exlie::Error;

#[test]
fn documented_values() {
    assert_eq!(brute_n_gm(GroupType::G2, 6).unwrap(), 7);
    assert_eq!(brute_n_gm(GroupType::G2, 1).unwrap(), 1);
    assert_eq!(brute_n_gm(GroupType::F4, 2).unwrap(), 3);
    assert_eq!(brute_n_gms(GroupType::G2, 2, 2).unwrap(), 1);
    assert_eq!(brute_n_gms(GroupType::G2, 3, 3).unwrap(), 2);
    for m in 1..=12 {
        assert_eq!(brute_n_gms(GroupType::G2, m, 1).unwrap(), 1, "m = {}", m);
    }
}

#[test]
fn grid_orbits_match_the_published_tables() {
    for (g, id) in [(GroupType::G2, "3"), (GroupType::F4, "5")] {
        let table = golden_table(id).unwrap();
        for m in 1..=oracle_budget(g).unwrap() {
            let census = orbit_census(g, m).unwrap();
            assert_eq!(BigRational::from_integer(BigInt::from(census.orbits)), table.value(m, None).unwrap(), "{} m = {}", g, m);
            assert_eq!(census.by_s.values().sum::<u64>(), census.orbits);
        }
    }
}

#[test]
fn identity_point_has_one_eigenvalue() {
    for g in GroupType::ALL {
        let ws = weight_system(g);
        for m in 1..=10 {
            assert_eq!(distinct_eigenvalues(&ws, &vec![0; g.rank()], m), 1);
        }
    }
}

#[test]
fn budget_is_enforced() {
    assert!(matches!(brute_n_gm(GroupType::G2, 25), Err(Error::Refused { .. })));
    assert!(matches!(brute_n_gm(GroupType::F4, 7), Err(Error::Refused { .. })));
    for g in [GroupType::E6, GroupType::E7, GroupType::E8] {
        assert!(oracle_budget(g).is_none());
        assert!(matches!(brute_n_gms(g, 2, 1), Err(Error::Refused { .. })));
    }
    assert!(matches!(brute_n_gm(GroupType::G2, 0), Err(Error::InvalidModulus)));
}

#[test]
fn thread_count_does_not_change_the_census() {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let a = single.install(|| orbit_census(GroupType::F4, 5).unwrap());
    let b = orbit_census(GroupType::F4, 5).unwrap();
    assert_eq!(a, b);
}
