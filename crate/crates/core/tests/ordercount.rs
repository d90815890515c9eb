use exlie::exactlin::{elementary_divisors, kernel_count};
use exlie::golden::{golden_table, ngm_table_id};
use exlie::ordercount::{
    burnside_counter, fix_count, fix_matrix, kaction_fix_matrix, n_gm, n_gm_quasipoly, n_gm_symbolic, table_period,
};
use exlie::rootdata::{weight_system, GroupType};
use exlie::weylgroup::{classes_by_enumeration, WeylGroup};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

#[test]
fn table_values_for_small_m() {
    assert_eq!(n_gm(GroupType::G2, 6).unwrap(), BigUint::from(7u32));
    assert_eq!(n_gm(GroupType::F4, 2).unwrap(), BigUint::from(3u32));
    assert_eq!(n_gm(GroupType::E8, 2).unwrap(), BigUint::from(3u32));
    for g in GroupType::ALL {
        assert_eq!(n_gm(g, 1).unwrap(), BigUint::from(1u32), "{}", g);
    }
}

#[test]
fn burnside_sum_divisible_up_to_200() {
    for g in GroupType::ALL {
        let c = burnside_counter(g).unwrap();
        for m in 1..=200 {
            c.n_gm(m).unwrap();
        }
    }
}

#[test]
fn fitted_tables_match_published_ones() {
    for g in GroupType::ALL {
        let fitted = n_gm_quasipoly(g).unwrap();
        let golden = golden_table(ngm_table_id(g)).unwrap().quasipolynomial(None).unwrap();
        assert_eq!(fitted.period(), table_period(g));
        assert_eq!(fitted, golden, "{}", g);
        let symbolic = n_gm_symbolic(g).unwrap();
        assert_eq!(symbolic.detect_period(), table_period(g), "{}", g);
        assert_eq!(symbolic.to_quasipolynomial(), golden, "{}", g);
    }
}

#[test]
fn e6_odd_multiples_of_three_correct_the_misprint() {
    let dj = golden_table("djokovic").unwrap();
    let printed = dj.quasipolynomial(None).unwrap().polys()[0].clone();
    let text = &dj.blocks[0].rows[0].cells[0];
    let corrected = exlie::quasipoly::parse_poly(&text.replace("688k^3", "648k^3"), 'k').unwrap();
    for k in 0..20u64 {
        let m = 6 * k + 3;
        let direct = BigRational::from_integer(BigInt::from(n_gm(GroupType::E6, m).unwrap()));
        let kq = BigRational::from_integer(k.into());
        assert_eq!(corrected.eval(&kq), direct, "k = {}", k);
        if k >= 1 {
            assert_ne!(printed.eval(&kq), direct, "k = {}", k);
        }
    }
    // 648 vs 688 differs by 40 k^3 in the quartic factor.
    let diff = corrected.sub(&printed);
    assert_eq!(diff.degree(), Some(5));
    assert_eq!(diff.eval(&BigRational::from_integer(0.into())), BigRational::from_integer(0.into()));
}

#[test]
fn fix_systems_agree_with_kaction_minus_identity() {
    for g in GroupType::ALL {
        let c = burnside_counter(g).unwrap();
        let wg = WeylGroup::new(g);
        for class in c.classes() {
            let w = wg.element(&class.word).unwrap();
            let a = elementary_divisors(&fix_matrix(&w, wg.weights()).unwrap().matrix);
            let b = elementary_divisors(&kaction_fix_matrix(&w));
            assert_eq!(a, b, "{} {:?}", g, class.word);
        }
    }
}

#[test]
fn fix_count_is_a_class_function() {
    for g in [GroupType::G2, GroupType::F4] {
        let wg = WeylGroup::new(g);
        let en = classes_by_enumeration(&wg, false).unwrap();
        for (ci, class) in en.table.classes.iter().enumerate() {
            let members: Vec<usize> = (0..en.enumeration.len()).filter(|&i| en.class_of[i] as usize == ci).take(3).collect();
            for m in [2u64, 3, 4, 6] {
                let want = fix_count(&class.representative, wg.weights(), m).unwrap();
                for &i in &members {
                    let w = en.enumeration.element(&wg, i);
                    assert_eq!(fix_count(&w, wg.weights(), m).unwrap(), want);
                }
            }
        }
    }
}

#[test]
fn fix_count_ignores_the_spanning_choice() {
    let ws = weight_system(GroupType::F4);
    let wg = WeylGroup::new(GroupType::F4);
    // Another lattice basis: the last l weights that span.
    let mut alt = None;
    'search: for a in (0..ws.u()).rev() {
        for b in (0..a).rev() {
            for c in (0..b).rev() {
                for d in (0..c).rev() {
                    if let Ok(w) = ws.with_spanning(vec![d, c, b, a]) {
                        if w.spanning != ws.spanning {
                            alt = Some(w);
                            break 'search;
                        }
                    }
                }
            }
        }
    }
    let alt = alt.expect("F4 has more than one spanning set");
    for class in burnside_counter(GroupType::F4).unwrap().classes() {
        let w = wg.element(&class.word).unwrap();
        for m in 1..=12 {
            assert_eq!(fix_count(&w, &ws, m).unwrap(), fix_count(&w, &alt, m).unwrap());
        }
    }
}

#[test]
fn kernel_count_matches_fix_count() {
    let wg = WeylGroup::new(GroupType::G2);
    let w = wg.element(&[1]).unwrap();
    let fs = fix_matrix(&w, wg.weights()).unwrap();
    for m in 1..=10 {
        assert_eq!(kernel_count(&fs.matrix, m).unwrap(), BigUint::from(m));
    }
}
