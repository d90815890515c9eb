use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use exlie::eigenposet::{
    build_m_poset, build_p_matrix, eigen_counter, fix_s_count, find_r, load_poset, poset_from_json, poset_to_json,
    s_value, s_w, save_poset, MPoset, PMatrix,
};
use exlie::golden::{golden_g2_nodes, golden_g2_sw, golden_table};
use exlie::ordercount::{fix_count, n_gm};
use exlie::rootdata::{distinct_eigenvalues, weight_system, GroupType, WeightSystem};
use exlie::weylgroup::{conjugacy_classes, enumerate_group, EmbeddedSource, WeylGroup};
use exlie::Error;

fn poset(g: GroupType) -> Arc<MPoset> {
    static G2: OnceLock<Arc<MPoset>> = OnceLock::new();
    static F4: OnceLock<Arc<MPoset>> = OnceLock::new();
    let cell = match g {
        GroupType::G2 => &G2,
        GroupType::F4 => &F4,
        _ => unreachable!(),
    };
    cell.get_or_init(|| Arc::new(build_m_poset(&weight_system(g)).unwrap())).clone()
}

fn rows_of(p: &PMatrix, rows: &[Vec<i64>]) -> Vec<usize> {
    let mut ix: Vec<usize> = rows.iter().map(|r| p.find(r).expect("row of P")).collect();
    ix.sort_unstable();
    ix
}

/// Rows of `P` vanishing at the grid point `k / m`.
fn vanishing_rows(p: &PMatrix, k: &[i64], m: i64) -> Vec<usize> {
    (0..p.len())
        .filter(|&r| p.rows[r].iter().zip(k).map(|(a, b)| a * b).sum::<i64>().rem_euclid(m) == 0)
        .collect()
}

fn grid(l: usize, m: i64) -> impl Iterator<Item = Vec<i64>> {
    (0..(m as u64).pow(l as u32)).map(move |mut idx| {
        (0..l)
            .map(|_| {
                let d = (idx % m as u64) as i64;
                idx /= m as u64;
                d
            })
            .collect()
    })
}

#[test]
fn g2_nodes_match_the_published_table() {
    let poset = poset(GroupType::G2);
    let p = poset.p_matrix();
    assert_eq!(poset.len(), 19);
    assert_eq!(poset.r(), 2);
    let mut seen = BTreeSet::new();
    for row in golden_g2_nodes().unwrap() {
        for node in &row.nodes {
            let t = poset.find(&rows_of(p, node)).unwrap_or_else(|| panic!("{:?} is not a node", node));
            assert!(seen.insert(t));
            assert_eq!(poset.nodes()[t].svalue, row.s, "s of {:?}", node);
            for m in 1..=24 {
                let g = poset.g_m(t, m).unwrap();
                assert_eq!(BigRational::from_integer(BigInt::from(g)), row.gm.eval(m), "g_m of {:?} at m = {}", node, m);
            }
        }
    }
    assert_eq!(seen.len(), 19);
}

#[test]
fn g2_fixed_rows_match_the_published_table() {
    let ws = weight_system(GroupType::G2);
    let p = build_p_matrix(&ws);
    let wg = WeylGroup::new(GroupType::G2);
    for entry in golden_g2_sw().unwrap() {
        let w = wg.element(&entry.word).unwrap();
        assert_eq!(s_w(&w, &ws, &p).unwrap(), rows_of(&p, &entry.rows), "word {:?}", entry.word);
    }
    let sizes: u64 = golden_g2_sw().unwrap().iter().map(|e| e.size).sum();
    assert_eq!(sizes, 12);
}

#[test]
fn g2_worked_mobius_example() {
    let poset = poset(GroupType::G2);
    let p = poset.p_matrix();
    let s1 = poset.find(&rows_of(p, &[vec![2, 0], vec![2, -2], vec![4, -2]])).unwrap();
    let s2 = poset.find(&rows_of(p, &[vec![2, -1], vec![0, 1], vec![2, 0], vec![2, -2], vec![4, -2]])).unwrap();
    let full = poset.find(&(0..p.len()).collect::<Vec<_>>()).unwrap();
    assert_eq!(poset.mobius(full, s1), 2);
    assert_eq!(poset.mobius(s2, s1), -1);
    for m in 1..=24u64 {
        assert_eq!(poset.f_m(s1, m), BigInt::from(0));
        assert_eq!(poset.f_m(s2, m), BigInt::from(u8::from(m % 2 == 0)));
    }
}

#[test]
fn find_r_values() {
    assert_eq!(find_r(&build_p_matrix(&weight_system(GroupType::G2))).unwrap(), 2);
    let f4 = poset(GroupType::F4);
    assert_eq!(f4.len(), 22075);
    assert_eq!(f4.r(), 4);
    assert_eq!(f4.p_matrix().len(), 84);
    assert_eq!(build_p_matrix(&weight_system(GroupType::E6)).len(), 441);
}

#[test]
fn larger_groups_are_refused() {
    for g in [GroupType::E6, GroupType::E7, GroupType::E8] {
        assert!(matches!(build_m_poset(&weight_system(g)), Err(Error::Refused { .. })));
        assert!(matches!(eigen_counter(g, None), Err(Error::Refused { .. })));
    }
}

fn check_partition_identity(g: GroupType, max_m: u64) {
    let poset = poset(g);
    for m in 1..=max_m {
        let f: Vec<BigInt> = (0..poset.len()).map(|t| poset.f_m(t, m)).collect();
        for s in 0..poset.len() {
            let sum: BigInt = poset.down_set(s).ones().map(|t| &f[t]).sum();
            assert_eq!(sum, BigInt::from(poset.g_m(s, m).unwrap()), "{} node {} m = {}", g, s, m);
        }
    }
}

#[test]
fn f_sums_to_g_over_down_sets() {
    check_partition_identity(GroupType::G2, 24);
    check_partition_identity(GroupType::F4, 24);
}

#[test]
fn f_is_nonnegative() {
    for g in [GroupType::G2, GroupType::F4] {
        let poset = poset(g);
        for m in 1..=100 {
            for t in 0..poset.len() {
                assert!(poset.f_m(t, m) >= BigInt::from(0), "{} node {} m = {}", g, t, m);
            }
        }
    }
}

#[test]
fn g2_f_matches_mobius_inversion() {
    let poset = poset(GroupType::G2);
    for t in 0..poset.len() {
        for m in 1..=24 {
            assert_eq!(poset.f_m(t, m), poset.f_m_by_mobius(t, m).unwrap());
        }
    }
}

/// `f_m(S)` counts the grid points whose vanishing rows are exactly `S`.
fn check_f_against_grid(g: GroupType, max_m: i64) {
    let poset = poset(g);
    let ws = weight_system(g);
    let p = poset.p_matrix();
    for m in 1..=max_m {
        let mut count: HashMap<usize, u64> = HashMap::new();
        for k in grid(ws.group.rank(), m) {
            let rk = vanishing_rows(p, &k, m);
            let t = poset.find(&rk).unwrap_or_else(|| panic!("vanishing rows of {:?} mod {} are not a node", k, m));
            assert_eq!(poset.nodes()[t].svalue as usize, distinct_eigenvalues(&ws, &k, m), "{:?} mod {}", k, m);
            *count.entry(t).or_default() += 1;
        }
        for t in 0..poset.len() {
            assert_eq!(poset.f_m(t, m as u64), BigInt::from(count.get(&t).copied().unwrap_or(0)), "{} node {} m = {}", g, t, m);
        }
    }
}

#[test]
fn f_counts_grid_points_g2() {
    check_f_against_grid(GroupType::G2, 24);
}

#[test]
fn f_counts_grid_points_f4() {
    check_f_against_grid(GroupType::F4, 6);
}

/// For every group the eigenvalue count read off the vanishing rows agrees
/// with a direct count of distinct exponents.
#[test]
fn s_value_agrees_with_direct_count_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in GroupType::ALL {
        let ws: WeightSystem = weight_system(g);
        let p = build_p_matrix(&ws);
        for _ in 0..400 {
            let m = rng.gen_range(1..=30i64);
            let k: Vec<i64> = (0..g.rank()).map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(0..m) }).collect();
            let rk = vanishing_rows(&p, &k, m);
            assert_eq!(s_value(&rk, &p, &ws) as usize, distinct_eigenvalues(&ws, &k, m), "{} k = {:?} m = {}", g, k, m);
        }
    }
}

fn check_fix_split(g: GroupType, max_m: u64, all_elements: bool) {
    let poset = poset(g);
    let ws = weight_system(g);
    let wg = WeylGroup::new(g);
    let elements = if all_elements {
        let en = enumerate_group(&wg, false).unwrap();
        (0..en.len()).map(|i| en.element(&wg, i)).collect::<Vec<_>>()
    } else {
        conjugacy_classes(&wg, &EmbeddedSource).unwrap().classes.into_iter().map(|c| c.representative).collect()
    };
    for w in &elements {
        for m in 1..=max_m {
            let total: BigInt = (1..=poset.s_max()).map(|s| fix_s_count(w, m, s, &poset).unwrap()).sum();
            assert_eq!(total, BigInt::from(fix_count(w, &ws, m).unwrap()), "{} {} m = {}", g, w.word_string(), m);
        }
    }
}

#[test]
fn fixed_points_split_by_s() {
    check_fix_split(GroupType::G2, 12, true);
    check_fix_split(GroupType::F4, 8, false);
}

#[test]
fn eigen_counts_sum_to_class_counts() {
    for (g, max_m) in [(GroupType::G2, 60), (GroupType::F4, 24)] {
        let counter = eigen_counter(g, None).unwrap();
        for m in 1..=max_m {
            let total: BigUint = (1..=counter.s_max()).map(|s| counter.n_gms(m, s).unwrap()).sum();
            assert_eq!(total, n_gm(g, m).unwrap(), "{} m = {}", g, m);
        }
    }
}

#[test]
fn eigen_counts_match_published_tables() {
    for (g, id) in [(GroupType::G2, "9"), (GroupType::F4, "11")] {
        let table = golden_table(id).unwrap();
        let counter = eigen_counter(g, None).unwrap();
        for s in table.columns() {
            for m in 1..=48 {
                let got = BigRational::from_integer(BigInt::from(counter.n_gms(m, s).unwrap()));
                assert_eq!(got, table.value(m, Some(s)).unwrap(), "{} m = {} s = {}", g, m, s);
            }
        }
    }
}

#[test]
fn eigen_count_examples() {
    let g2 = eigen_counter(GroupType::G2, None).unwrap();
    assert_eq!(g2.n_gms(12, 7).unwrap(), BigUint::from(5u8));
    assert!(matches!(g2.n_gms(12, 8), Err(Error::OutOfRange(_))));
    assert!(matches!(g2.n_gms(0, 1), Err(Error::InvalidModulus)));
    let f4 = eigen_counter(GroupType::F4, None).unwrap();
    assert_eq!(f4.n_gms(2, 2).unwrap(), BigUint::from(2u8));
    let periods: Vec<u64> =
        [1, 2, 3, 4, 6, 8].iter().map(|&s| f4.n_gms_symbolic(s).unwrap().to_quasipolynomial().period()).collect();
    assert_eq!(periods, vec![1, 2, 6, 4, 12, 24]);
}

#[test]
fn cache_round_trip_and_tamper_detection() {
    let ws = weight_system(GroupType::G2);
    let original = poset(GroupType::G2);
    let dir = tempfile::tempdir().unwrap();
    let path = save_poset(&original, dir.path()).unwrap();
    let loaded = load_poset(&path, &ws).unwrap();
    assert_eq!(loaded.nodes(), original.nodes());
    assert_eq!(poset_to_json(&loaded).unwrap(), poset_to_json(&original).unwrap());

    let counter = eigen_counter(GroupType::G2, Some(dir.path())).unwrap();
    assert_eq!(counter.n_gms(12, 7).unwrap(), BigUint::from(5u8));

    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["nodes"][3]["s"] = serde_json::json!(1);
    assert!(matches!(poset_from_json(&v.to_string(), &ws), Err(Error::Integrity(_))));

    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["nodes"].as_array_mut().unwrap().remove(5);
    assert!(matches!(poset_from_json(&v.to_string(), &ws), Err(Error::Integrity(_))));

    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["p_digest"] = serde_json::json!("00");
    assert!(matches!(poset_from_json(&v.to_string(), &ws), Err(Error::Integrity(_))));

    assert!(poset_from_json(&text, &weight_system(GroupType::F4)).is_err());
}
