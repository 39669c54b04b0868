use std::collections::BTreeSet;

use llab_core::conjecture::{
    analyze, check_defect_laws, check_form11, enumerate_lc, verify_theorem39, EnumerateOptions, Method,
};
use llab_core::cyclotomic::divisors;
use llab_core::powersums::{
    check_block_relations, has_exterior_periodicity, newton_power_sums, power_sums_from_exponents,
};
use llab_core::ramanujan::v2;
use llab_core::IntPoly;

fn members(n: u64) -> Vec<IntPoly> {
    enumerate_lc(n, Method::Naive, &EnumerateOptions::with_workers(4)).unwrap()
}

/// Sign string, first defect, factorization, effective levels.
const N12_TABLE: [(&str, Option<u64>, &str, &[u32]); 8] = [
    ("++++++++++++", None, "Φ2Φ4Φ3Φ6Φ12", &[]),
    ("++++----++++", Some(4), "Φ2Φ4Φ24", &[2]),
    ("++--++++--++", Some(2), "Φ2Φ4Φ12^2", &[1]),
    ("++--++--++--", Some(2), "-Φ1Φ2^2Φ3Φ6Φ12", &[1]),
    ("++----++++--", Some(2), "-Φ1Φ2^2Φ24", &[1, 2]),
    ("++++++------", Some(6), "-Φ1Φ2^2Φ3^2Φ6^2", &[1]),
    ("+++---+++---", Some(3), "-Φ1Φ4Φ3^2Φ12", &[0]),
    ("+++------+++", Some(3), "Φ1^2Φ2Φ3^3Φ6", &[0, 1]),
];

#[test]
fn n12_members_match_the_published_table() {
    let found: BTreeSet<String> = members(12).iter().map(|p| p.sign_string().unwrap()).collect();
    let listed: BTreeSet<String> = N12_TABLE.iter().map(|r| r.0.to_string()).collect();
    assert_eq!(found, listed);
    for (signs, i, factors, t) in N12_TABLE {
        let a = analyze(&IntPoly::from_sign_str(signs).unwrap()).unwrap();
        assert_eq!(a.first_defect(), i, "{signs}");
        assert_eq!(a.factors.to_string(), factors, "{signs}");
        assert_eq!(a.t_eff, t.iter().copied().collect(), "{signs}");
        assert!(a.t_eff.is_subset(&a.t_path));
        assert!(a.form11.is_some(), "{signs}");
    }
}

#[test]
fn naive_and_structured_agree() {
    let opts = EnumerateOptions::with_workers(4);
    for n in 2..=16 {
        assert_eq!(
            enumerate_lc(n, Method::Naive, &opts).unwrap(),
            enumerate_lc(n, Method::Structured, &opts).unwrap(),
            "N = {n}"
        );
    }
}

#[test]
fn both_power_sum_routes_agree() {
    for n in 3..=20 {
        for p in members(n) {
            let a = analyze(&p).unwrap();
            assert_eq!(
                newton_power_sums(&p).unwrap(),
                power_sums_from_exponents(&a.factors),
                "N = {n}"
            );
        }
    }
}

#[test]
fn defect_laws_and_periodicity_up_to_24() {
    for n in 2..=24 {
        for p in members(n) {
            let a = analyze(&p).unwrap();
            let s = a.signs.clone();
            assert!(check_defect_laws(&a).is_empty(), "{s}: {:?}", check_defect_laws(&a));
            for &k in &a.profile.defect_set {
                let s_k = a.profile.get(k).unwrap();
                assert_eq!((s_k + 1).rem_euclid(1 << (v2(k) + 1)), 0, "{s}, k = {k}");
            }
            let divs: BTreeSet<u64> = divisors(n).into_iter().collect();
            assert!(a.k_set.is_subset(&divs), "{s}");
            assert!(a.t_eff.is_subset(&a.t_path), "{s}");
            if let Some(i) = a.first_defect() {
                assert_eq!(a.k_set.first(), Some(&i), "{s}");
                assert!(has_exterior_periodicity(&p, i), "{s}");
                // interior periodicity: S_k = -1 whenever i does not divide k
                assert!(a.profile.defect_set.iter().all(|k| k % i == 0), "{s}");
                let r = check_block_relations(&p, &a.profile, i).unwrap();
                assert!(r.a_violations.is_empty() && r.b_violations.is_empty(), "{s}: {r:?}");
            }
        }
    }
}

#[test]
fn single_least_type_divisor_iff_product_form() {
    for n in 2..=24 {
        let m = members(n);
        for p in &m {
            let a = analyze(p).unwrap();
            assert_eq!(a.k_set.len() <= 1, check_form11(p).is_ok(), "{}", a.signs);
        }
        assert!(verify_theorem39(n, &m, Method::Naive).unwrap().passed());
    }
}
