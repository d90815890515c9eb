use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use exlie::rootdata::{weight_system, GroupType};
use exlie::weylgroup::{
    class_census, class_source, classes_by_enumeration, compose, conjugacy_classes, embedded_class_table,
    enumerate_group, format_class_data, match_against_enumeration, validate_class_table, EmbeddedSource, Fingerprint,
    Violation, WeylGroup, EMBEDDED_CLASS_DATA,
};
use exlie::Error;

#[test]
fn enumeration_orders() {
    for (g, order) in [(GroupType::G2, 12), (GroupType::F4, 1152), (GroupType::E6, 51840)] {
        let en = enumerate_group(&WeylGroup::new(g), false).unwrap();
        assert_eq!(en.len() as u64, order);
        assert_eq!(g.weyl_order(), order);
    }
    assert!(matches!(enumerate_group(&WeylGroup::new(GroupType::E7), false), Err(Error::Refused { .. })));
    assert!(matches!(enumerate_group(&WeylGroup::new(GroupType::E8), true), Err(Error::Refused { .. })));
}

#[test]
fn embedded_tables_validate() {
    let counts: Vec<usize> = GroupType::ALL
        .iter()
        .map(|&g| {
            let wg = WeylGroup::new(g);
            let t = conjugacy_classes(&wg, &EmbeddedSource).unwrap();
            assert_eq!(t.total(), g.weyl_order() as u128);
            t.classes.len()
        })
        .collect();
    assert_eq!(counts, vec![6, 25, 25, 60, 112]);
}

#[test]
fn embedded_tables_match_enumeration() {
    for g in [GroupType::G2, GroupType::F4, GroupType::E6] {
        let wg = WeylGroup::new(g);
        let en = classes_by_enumeration(&wg, false).unwrap();
        let t = embedded_class_table(&wg).unwrap();
        assert!(match_against_enumeration(&t, &en).is_empty(), "{}", g);
        let mut sizes: Vec<u64> = t.classes.iter().map(|c| c.size).collect();
        let mut counted: Vec<u64> = vec![0; en.table.classes.len()];
        for &c in &en.class_of {
            counted[c as usize] += 1;
        }
        sizes.sort_unstable();
        counted.sort_unstable();
        assert_eq!(sizes, counted, "{}", g);
    }
}

#[test]
fn regenerated_class_data_is_identical() {
    let mut tables = Vec::new();
    for g in GroupType::ALL {
        let wg = WeylGroup::new(g);
        tables.push(match g {
            GroupType::E7 | GroupType::E8 => class_census(&wg).unwrap(),
            _ => classes_by_enumeration(&wg, false).unwrap().table,
        });
    }
    assert_eq!(format_class_data(&tables), EMBEDDED_CLASS_DATA);
}

#[test]
fn fingerprints_are_class_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in [GroupType::G2, GroupType::F4, GroupType::E6] {
        let wg = WeylGroup::new(g);
        let en = enumerate_group(&wg, false).unwrap();
        let t = embedded_class_table(&wg).unwrap();
        for c in &t.classes {
            let f = Fingerprint::of(&wg, &c.representative);
            for _ in 0..5 {
                let x = en.element(&wg, rng.gen_range(0..en.len()));
                let conj = compose(&compose(&wg.inverse(&x), &c.representative).unwrap(), &x).unwrap();
                assert_eq!(Fingerprint::of(&wg, &conj), f, "{} {}", g, c.representative.word_string());
                assert_eq!(conj.order(), c.representative.order());
            }
        }
    }
}

#[test]
fn both_realizations_agree() {
    for g in [GroupType::G2, GroupType::F4] {
        let wg = WeylGroup::new(g);
        let ws = weight_system(g);
        let en = enumerate_group(&wg, false).unwrap();
        for i in 0..en.len() {
            let w = en.element(&wg, i);
            assert!(wg.is_compatible(&w));
            for (j, v) in ws.vectors.iter().enumerate() {
                let img = w.sigma.image(j + 1);
                let target = &ws.vectors[img.unsigned_abs() as usize - 1];
                let got: Vec<i64> =
                    (0..g.rank()).map(|c| (0..g.rank()).map(|r| v[r] * w.kaction.get(r, c)).sum()).collect();
                let want: Vec<i64> = target.iter().map(|x| x * img.signum() as i64).collect();
                assert_eq!(got, want, "{} {}", g, w.word_string());
            }
            let word = wg.reduced_word(&w.kaction).unwrap();
            assert_eq!(word.len(), en.length(i));
            assert_eq!(wg.element(&word).unwrap().kaction, w.kaction);
        }
    }
}

#[test]
fn longest_g2_element_is_minus_one() {
    let wg = WeylGroup::new(GroupType::G2);
    let w0 = wg.element(&[2, 1, 2, 1, 2, 1]).unwrap();
    assert!(w0.sigma.is_negation());
    assert_eq!(w0.order(), 2);
    let orders: BTreeMap<u64, u64> = embedded_class_table(&wg)
        .unwrap()
        .classes
        .iter()
        .fold(BTreeMap::new(), |mut acc, c| {
            *acc.entry(c.representative.order()).or_default() += c.size;
            acc
        });
    assert_eq!(orders, BTreeMap::from([(1, 1), (2, 7), (3, 2), (6, 2)]));
}

#[test]
fn validation_catches_broken_tables() {
    let wg = WeylGroup::new(GroupType::F4);
    let good = embedded_class_table(&wg).unwrap();

    let mut t = good.clone();
    t.classes[3].size += 1;
    assert!(validate_class_table(&wg, &t).iter().any(|v| matches!(v, Violation::SizeSum { .. })));

    let mut t = good.clone();
    t.classes[4].representative = t.classes[5].representative.clone();
    assert!(validate_class_table(&wg, &t).iter().any(|v| matches!(v, Violation::DuplicateFingerprint { .. })));

    let mut t = good.clone();
    t.classes.pop();
    assert!(validate_class_table(&wg, &t).iter().any(|v| matches!(v, Violation::ClassCount { .. })));

    let mut t = good;
    t.classes.swap(1, 2);
    assert!(validate_class_table(&wg, &t).is_empty());
}

#[test]
fn class_sources_by_name() {
    let wg = WeylGroup::new(GroupType::G2);
    let a = conjugacy_classes(&wg, class_source("embedded", false).unwrap().as_ref()).unwrap();
    let b = conjugacy_classes(&wg, class_source("enumerate", false).unwrap().as_ref()).unwrap();
    assert_eq!(a.records().len(), b.records().len());
    assert!(matches!(class_source("guess", false), Err(Error::UnknownStrategy { .. })));
}
