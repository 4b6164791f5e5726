use lramsey_core::bounds::{
    blue_cap, intervals_step, min_packing_sum, nonadjacent_step, prove, prove_golomb,
    prove_golomb_scan, prove_intervals, prove_nonadjacent, prove_partition, reconcile, CapRule,
    GolombReading, GolombTable, IntervalDemand, Method, ScanConfig,
};

/// `(c, [2b-2, 2b-1], [array, array-shifted, ruler-order])`
const GOLDEN: [(i64, [i64; 2], [i64; 3]); 15] = [
    (5, [850, 862], [583, 583, 541]),
    (6, [817, 847], [553, 553, 535]),
    (7, [808, 820], [550, 550, 529]),
    (8, [805, 814], [544, 544, 526]),
    (9, [781, 811], [544, 544, 523]),
    (10, [778, 808], [541, 541, 523]),
    (11, [778, 805], [541, 541, 520]),
    (12, [778, 805], [541, 541, 493]),
    (13, [778, 805], [541, 541, 493]),
    (14, [778, 805], [541, 541, 493]),
    (15, [778, 805], [544, 544, 493]),
    (16, [778, 808], [544, 544, 517]),
    (17, [781, 808], [544, 544, 517]),
    (18, [781, 808], [547, 547, 517]),
    (19, [802, 811], [547, 547, 520]),
];

const READINGS: [GolombReading; 3] = [
    GolombReading::ArrayAtSubdiagonal,
    GolombReading::ArrayAtRulerLength,
    GolombReading::RulerOrder,
];

#[test]
fn partition_golden_per_span() {
    let cfg = ScanConfig::default();
    for (c, by_rule, _) in GOLDEN {
        for (rule, want) in [CapRule::TwoBMinusTwo, CapRule::TwoBMinusOne].into_iter().zip(by_rule) {
            assert_eq!(prove_partition(c, rule, cfg).unwrap().n_result, want, "c = {c}, {rule:?}");
        }
    }
}

#[test]
fn golomb_golden_per_span() {
    let cfg = ScanConfig::default();
    let table = GolombTable::standard();
    for (c, _, by_reading) in GOLDEN {
        for (reading, want) in READINGS.into_iter().zip(by_reading) {
            assert_eq!(
                prove_golomb(c, reading, &table, cfg).unwrap().n_result,
                want,
                "c = {c}, {reading:?}"
            );
        }
    }
}

#[test]
fn golomb_scan_matches_individual_runs() {
    let cfg = ScanConfig::default();
    let table = GolombTable::standard();
    for (idx, reading) in READINGS.into_iter().enumerate() {
        let reports = prove_golomb_scan(reading, &table, cfg).unwrap();
        let got: Vec<(Option<i64>, i64)> = reports.iter().map(|r| (r.c, r.n_result)).collect();
        let want: Vec<(Option<i64>, i64)> = GOLDEN.iter().map(|g| (Some(g.0), g.2[idx])).collect();
        assert_eq!(got, want);
    }
}

#[test]
fn published_chain_is_compared() {
    let cfg = ScanConfig::default();
    for method in Method::ALL {
        let rec = reconcile(method, None, cfg).unwrap();
        let text = rec.to_key_value();
        assert!(text.contains(&format!("reconcile.published={}", method.published_bound())));
        assert!(
            rec.reproduced() || text.contains(".divergent."),
            "{method}: neither reproduced nor a divergent step reported"
        );
    }
    assert!(reconcile(Method::Intervals1804, None, cfg).unwrap().reproduced());
    assert!(reconcile(Method::Nonadjacent1573, None, cfg).unwrap().reproduced());
    assert!(reconcile(Method::Golomb493, None, cfg).unwrap().reproduced());

    let partition = reconcile(Method::Partition772, None, cfg).unwrap();
    let labels: Vec<&str> = partition.readings.iter().map(|r| r.label.as_str()).collect();
    assert_eq!(labels, ["cap_rule=2b-2", "cap_rule=2b-1"]);
}

#[test]
fn interval_traces_satisfy_decomposition() {
    // q * 2(b - 1) + r = ceil(n / 3) - 1
    for s in &prove_intervals(ScanConfig::default()).unwrap().trace {
        let (q, r) = (s.q.unwrap(), s.r.unwrap());
        assert_eq!(q * 2 * (s.b - 1) + r, (s.n + 2) / 3 - 1, "n = {}", s.n);
    }
    for s in &prove_nonadjacent(ScanConfig::default()).unwrap().trace {
        let (q, r) = (s.q.unwrap(), s.r.unwrap());
        assert_eq!(q * 2 * (s.b - 1) + r, s.intervals, "n = {}", s.n);
        assert!(r < 2 * (s.b - 1));
    }
}

#[test]
fn headline_steps() {
    let s = intervals_step(1804).unwrap();
    assert_eq!((s.b, s.q, s.r, s.occupied), (61, Some(5), Some(1), 1807));
    let s = nonadjacent_step(1573).unwrap();
    assert_eq!((s.b, s.q, s.r, s.occupied, s.space), (57, Some(7), Some(2), 3154, 3146));
    assert!(s.contradiction);
}

#[test]
fn provers_are_repeatable() {
    let cfg = ScanConfig::default();
    for method in Method::ALL {
        let a = prove(method, method.published_span(), cfg).unwrap();
        let b = prove(method, method.published_span(), cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_key_value(true), b.to_key_value(true));
    }
}

#[test]
fn blue_cap_is_least_strict_solution() {
    for n in 3..=100_000i64 {
        let b = blue_cap(n).unwrap();
        assert!(b * (b - 1) / 2 > n - 2 && (b - 1) * (b - 2) / 2 <= n - 2, "n = {n}");
    }
}

/// Exhaustive minimum: assign each demand a value of at least its lower
/// bound, no value used more than `cap` times.
fn exhaustive_min(lowers: &[i64], cap: i64, max_value: i64) -> Option<i64> {
    fn go(lowers: &[i64], used: &mut Vec<i64>, cap: i64, max_value: i64) -> Option<i64> {
        let Some((&lo, rest)) = lowers.split_first() else {
            return Some(0);
        };
        let mut best = None;
        for v in lo..=max_value {
            if used[v as usize] < cap {
                used[v as usize] += 1;
                if let Some(s) = go(rest, used, cap, max_value) {
                    best = Some(best.map_or(v + s, |b: i64| b.min(v + s)));
                }
                used[v as usize] -= 1;
            }
        }
        best
    }
    go(lowers, &mut vec![0; max_value as usize + 1], cap, max_value)
}

#[test]
fn packing_matches_exhaustive_search_with_random_instances() {
    use rand::{rngs::StdRng, Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(0x4c52_414d);
    for _ in 0..400 {
        let size = rng.gen_range(1..=8usize);
        let cap = rng.gen_range(1..=3i64);
        let mut lowers: Vec<i64> = (0..size).map(|_| rng.gen_range(0..=3)).collect();
        lowers.sort_unstable();
        let Some(want) = exhaustive_min(&lowers, cap, 6) else { continue };
        let mut demands: Vec<IntervalDemand> = Vec::new();
        for &lo in &lowers {
            match demands.last_mut() {
                Some(d) if d.lower == lo => d.count += 1,
                _ => demands.push(IntervalDemand { lower: lo, count: 1 }),
            }
        }
        assert_eq!(min_packing_sum(&demands, cap), want, "{lowers:?} cap {cap}");
    }
}
