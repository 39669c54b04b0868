use llab_core::conjecture::{enumerate_lc, EnumerateOptions, Method};
use llab_core::cyclotomic::{divisors, euler_phi, factor_cyclotomic, split_two_adic};
use llab_core::etransform::{
    apply_move, enumerate_chain_weights, normalize_chain, path_to_uniform, predicted_power_sum, reverse_path,
    trace_chain,
};
use llab_core::powersums::{newton_power_sums, power_sums_from_exponents};
use llab_core::ramanujan::{ramanujan_sum, v2};
use llab_core::{Chain, ChainKind, EMove, EPath, Error, ExponentMap, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn phi_weighted_degree(ev: &ExponentMap) -> u64 {
    ev.entries().iter().map(|(&d, &e)| euler_phi(d) * u64::from(e)).sum()
}

fn random_move(rng: &mut ChaCha8Rng, n: u64) -> EMove {
    let (t, odd) = split_two_adic(n);
    let ds = divisors(odd);
    let d = ds[rng.gen_range(0..ds.len())];
    let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
    EMove::new(rng.gen_range(0..=t), d, sign)
}

/// Random maps reachable from the uniform one, paired with the move that led there.
fn random_walk(seed: u64, n: u64, steps: usize) -> Vec<(ExponentMap, EMove, ExponentMap)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ev = ExponentMap::uniform(n);
    let mut out = Vec::new();
    while out.len() < steps {
        let m = random_move(&mut rng, n);
        match apply_move(&ev, &m) {
            Ok(next) => {
                out.push((ev.clone(), m, next.clone()));
                ev = next;
            }
            Err(Error::InvalidMove { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
    out
}

#[test]
fn moves_conserve_chain_sums_and_degree() {
    for n in 2..=64u64 {
        for (_, _, after) in random_walk(n, n, 60) {
            assert!(after.satisfies_chain_sums(), "N = {n}");
            assert_eq!(phi_weighted_degree(&after), n - 1);
        }
    }
}

#[test]
fn single_move_power_sum_law() {
    for n in 3..=64u64 {
        for (before, m, after) in random_walk(1000 + n, n, 20) {
            let (s0, s1) = (power_sums_from_exponents(&before), power_sums_from_exponents(&after));
            for k in 1..=n - 2 {
                let delta = s1.get(k).unwrap() - s0.get(k).unwrap();
                let want = if v2(k) == m.t {
                    m.sign.value() * (1i64 << (m.t + 1)) * ramanujan_sum(m.d, k)
                } else {
                    0
                };
                assert_eq!(delta, want, "N = {n}, k = {k}, move {m:?}");
            }
        }
    }
}

#[test]
fn moves_invert() {
    for (before, m, after) in random_walk(7, 48, 100) {
        assert_eq!(apply_move(&after, &m.inverse()).unwrap(), before);
    }
}

#[test]
fn random_maps_normalize_and_round_trip() {
    for n in 2..=64u64 {
        for (_, _, ev) in random_walk(5000 + n, n, 15) {
            let path = path_to_uniform(&ev).unwrap();
            assert_eq!(path.apply_to(&ev).unwrap().entries(), ExponentMap::uniform(n).entries());
            let back = reverse_path(&path).apply_to(&ExponentMap::uniform(n)).unwrap();
            assert_eq!(back.entries(), ev.entries());
            for k in 1..=n - 2 {
                assert_eq!(
                    predicted_power_sum(&reverse_path(&path), k),
                    power_sums_from_exponents(&ev).get(k).unwrap()
                );
            }
        }
    }
}

#[test]
fn normalization_terminates_for_every_chain_up_to_t6() {
    for t in 0..=6 {
        for (kind, d) in [(ChainKind::Unit, 1), (ChainKind::Regular, 3)] {
            let all = enumerate_chain_weights(t, kind);
            assert!(!all.is_empty());
            for w in all {
                let c = Chain::new(d, w.clone()).unwrap();
                let path = normalize_chain(&c).unwrap_or_else(|e| panic!("{w:?}: {e}"));
                let trace = trace_chain(&c, &path).unwrap();
                assert_eq!(trace.last().unwrap(), &c.normal_form(), "{w:?}");
                assert!(path.len() < 1 << (t + 1));
            }
        }
    }
}

#[test]
fn worked_example_move_for_move() {
    let c = Chain::new(3, vec![2, 4, 1, 0, 0]).unwrap();
    let path = normalize_chain(&c).unwrap();
    assert_eq!(
        path,
        EPath::new(vec![
            EMove::new(0, 3, Sign::Plus),
            EMove::new(1, 3, Sign::Minus),
            EMove::new(2, 3, Sign::Minus),
        ])
    );
    assert_eq!(
        trace_chain(&c, &path).unwrap(),
        vec![
            vec![2, 4, 1, 0, 0],
            vec![3, 3, 1, 0, 0],
            vec![2, 2, 2, 0, 0],
            vec![1, 1, 1, 1, 0]
        ]
    );
}

#[test]
fn residual_patterns_take_one_move() {
    for t in 1..=6u32 {
        let mut w = vec![0; t as usize + 2];
        w[t as usize + 1] = 1;
        let path = normalize_chain(&Chain::new(5, w).unwrap()).unwrap();
        assert_eq!(path, EPath::new(vec![EMove::new(t, 5, Sign::Plus)]));

        let mut u = vec![1; t as usize + 2];
        u[1] = 0;
        u[t as usize + 1] = 0;
        let path = normalize_chain(&Chain::new(1, u).unwrap()).unwrap();
        assert_eq!(path, EPath::new(vec![EMove::new(0, 1, Sign::Minus)]));
    }
}

#[test]
fn predictions_for_all_n12_members() {
    let members = enumerate_lc(12, Method::Naive, &EnumerateOptions::with_workers(2)).unwrap();
    assert_eq!(members.len(), 8);
    for p in members {
        let ev = factor_cyclotomic(&p, 12).unwrap();
        let forward = reverse_path(&path_to_uniform(&ev).unwrap());
        let uniform = ExponentMap::uniform(12).with_sign(ev.outer_sign());
        assert_eq!(forward.apply_to(&uniform).unwrap(), ev);
        let newton = newton_power_sums(&p).unwrap();
        for k in 1..=10 {
            assert_eq!(
                predicted_power_sum(&forward, k),
                power_sums_from_exponents(&ev).get(k).unwrap()
            );
            assert_eq!(predicted_power_sum(&forward, k), newton.get(k).unwrap());
        }
    }
}
