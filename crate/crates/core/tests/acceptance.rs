//! Acceptance checks. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wvg_core::indices::{
    approx, eta_dp, eta_enum_with_limit, kappa_dp_via, kappa_enum_with_limit, Route,
};
use wvg_core::instances::{
    dictator_family, partition_reduction, random_game, tight_split_family, PartitionInstance,
    ReductionVariant,
};
use wvg_core::manipulation::{
    annexation_payoffs, check_merge_bound, check_shapley_annexation, check_split_bound,
    evaluate_annexation, evaluate_merge, evaluate_split, scan_annexation_nonmonotonicity,
    split_game, unanimity_payoffs, UnanimityVariant, Verdict,
};
use wvg_core::{
    compute_banzhaf, compute_shapley, is_dummy, power_index, Coalition, IndexKind, Method,
    PlayerId, SplitAction, WeightedVotingGame,
};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const BZ: IndexKind = IndexKind::BanzhafNormalized;
const SS: IndexKind = IndexKind::ShapleyShubik;

fn game(q: u64, w: &[u64]) -> WeightedVotingGame {
    WeightedVotingGame::from_u64(q, w).unwrap()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn p(id: usize) -> PlayerId {
    PlayerId::new(id)
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn example_split_triple() -> Check {
    let cases = [
        (4, r(1, 6), Verdict::Neutral),
        (5, r(1, 8), Verdict::Harmful),
        (6, r(1, 4), Verdict::Beneficial),
    ];
    let action = SplitAction::new(p(3), [1u32, 1]).unwrap();
    let mut slowest = Duration::ZERO;
    for (q, each, verdict) in cases {
        let g = game(q, &[2, 2, 2]);
        evaluate_split(&g, &action, BZ).unwrap();
        let (report, took) = timed(|| evaluate_split(&g, &action, BZ).unwrap());
        slowest = slowest.max(took);
        let after = power_index(&report.game_after, BZ).unwrap();
        for part in report.remap.targets(p(3)) {
            ensure!(
                after.get(part) == &each,
                "[{q};2,2,2]: sub-player got {}",
                after.get(part)
            );
        }
        ensure!(
            report.verdict() == verdict,
            "[{q};2,2,2]: verdict {}",
            report.verdict()
        );
        ensure!(took < Duration::from_millis(1), "[{q};2,2,2] took {took:?}");
    }
    Ok(format!(
        "1/8, 1/6, 1/4 with expected verdicts; slowest {slowest:?}"
    ))
}

fn annexation_example() -> Check {
    let g = game(13, &[7, 6, 1, 1, 1, 1, 1, 1]);
    let unit = g.coalition([3]).unwrap();
    let report = evaluate_annexation(&g, p(1), &unit, BZ).unwrap();
    ensure!(
        report.game_after == game(13, &[8, 6, 1, 1, 1, 1, 1]),
        "after game {}",
        report.game_after
    );
    let (before, after) = (approx(&report.before), approx(&report.after));
    ensure!((before - 0.48507).abs() <= 5e-6, "before {before}");
    ensure!((after - 0.47826).abs() <= 5e-6, "after {after}");
    ensure!(!report.beneficial, "reported beneficial");
    for method in [Method::enumeration(), Method::DynamicProgramming] {
        let bz = compute_banzhaf(&g, method).unwrap();
        ensure!(
            bz.normalized.get(p(1)) == &report.before,
            "{method:?} disagrees"
        );
    }
    Ok(format!(
        "{} -> {}, {}",
        report.before,
        report.after,
        report.verdict()
    ))
}

fn paradox() -> Check {
    let g = game(9, &[3, 3, 2, 1, 1, 1]);
    let payoffs = annexation_payoffs(&g, p(1), BZ).unwrap();
    let (two, three) = (payoffs[1].clone().unwrap(), payoffs[2].clone().unwrap());
    ensure!(two == r(2, 5), "annexing 2 gives {two}");
    ensure!(three == r(7, 17), "annexing 3 gives {three}");
    ensure!((approx(&three) - 0.411765).abs() <= 5e-7, "7/17 decimal");
    let witnesses = scan_annexation_nonmonotonicity(&g, p(1), BZ).unwrap();
    ensure!(witnesses.contains(&(p(2), p(3))), "witnesses {witnesses:?}");
    Ok(format!(
        "2/5 vs 7/17, witness (2,3) among {} pair(s)",
        witnesses.len()
    ))
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (_, took) = timed(|| -> Check {
        for case in 0..200 {
            let n = rng.gen_range(1..=16);
            let max_w = rng.gen_range(1..=50);
            let g = random_game(n, max_w, rng.gen(), case % 2 == 0).unwrap();
            let (e, d) = (eta_enum_with_limit(&g, 16).unwrap(), eta_dp(&g).unwrap());
            ensure!(e == d, "eta differs on {g}");
            let e = kappa_enum_with_limit(&g, 16).unwrap();
            let d = kappa_dp_via(&g, Route::Deconvolution).unwrap();
            ensure!(e == d, "kappa differs on {g}");
            let e = compute_shapley(&g, Method::Enumeration { limit: 16 }).unwrap();
            let d = compute_shapley(&g, Method::DynamicProgramming).unwrap();
            ensure!(e.index == d.index, "shapley differs on {g}");
        }
        Ok(String::new())
    });
    ensure!(took < Duration::from_secs(60), "took {took:?}");
    Ok(format!("200 games agree exactly in {took:?}"))
}

fn random_positive_game(rng: &mut ChaCha8Rng, max_n: usize, max_w: u64) -> WeightedVotingGame {
    let n = rng.gen_range(2..=max_n);
    random_game(n, max_w, rng.gen(), rng.gen_bool(0.5)).unwrap()
}

fn split_bounds() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cases = 0;
    while cases < 500 {
        let g = random_positive_game(&mut rng, 10, 20);
        let id = PlayerId::from_index(rng.gen_range(0..g.players()));
        let w = g.weight(id).unwrap().to_u64().unwrap();
        if w < 2 {
            continue;
        }
        let cut = rng.gen_range(1..=w / 2);
        let check = check_split_bound(&g, &SplitAction::new(id, [w - cut, cut]).unwrap()).unwrap();
        ensure!(check.doubling_holds(), "doubling fails on {g}, player {id}");
        ensure!(
            check.bound_holds(),
            "2-beta bound fails on {g}, player {id}"
        );
        cases += 1;
    }
    Ok(format!("{cases} splits, no violations"))
}

fn merge_bounds() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let g = random_positive_game(&mut rng, 10, 20);
        let i = rng.gen_range(0..g.players());
        let j = (i + rng.gen_range(1..g.players())) % g.players();
        let check =
            check_merge_bound(&g, PlayerId::from_index(i), PlayerId::from_index(j)).unwrap();
        ensure!(
            check.holds(),
            "merge bound fails on {g}, pair ({}, {})",
            i + 1,
            j + 1
        );
    }
    Ok("500 pairs, no violations".into())
}

fn shapley_annexation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let g = random_positive_game(&mut rng, 12, 20);
        let n = g.players();
        let annexer = rng.gen_range(1..=n);
        let mut annexed: Vec<usize> = (1..=n)
            .filter(|&k| k != annexer && rng.gen_bool(0.4))
            .collect();
        if annexed.is_empty() {
            annexed.push(if annexer == n { 1 } else { annexer + 1 });
        }
        let set = Coalition::new(n, annexed).unwrap();
        let check = check_shapley_annexation(&g, p(annexer), &set).unwrap();
        ensure!(
            check.holds(),
            "{g}: {annexer} annexing {set}: {} -> {}",
            check.before,
            check.after
        );
    }
    Ok("300 annexations, no decrease".into())
}

fn unanimity() -> Check {
    let mut checked = 0;
    for n in 2..=12usize {
        let ones = vec![1u64; n];
        let base = game(n as u64, &ones);
        for kind in [BZ, SS] {
            for m in 1..=12usize {
                let mut w = vec![1 + m as u64];
                w.extend(vec![1u64; n - 1]);
                let g = game((n + m) as u64, &w);
                let report = evaluate_split(
                    &g,
                    &SplitAction::new(p(1), vec![1u64; m + 1]).unwrap(),
                    kind,
                )
                .unwrap();
                let expected = unanimity_payoffs(n, UnanimityVariant::Split { m }).unwrap();
                ensure!(
                    (report.before.clone(), report.after.clone()) == expected,
                    "split n={n} m={m}"
                );
                ensure!(report.beneficial, "split n={n} m={m} not beneficial");
                checked += 1;
            }
            for k in 2..=n {
                let report =
                    evaluate_merge(&base, &Coalition::new(n, 1..=k).unwrap(), kind).unwrap();
                let expected = unanimity_payoffs(n, UnanimityVariant::Merge { k }).unwrap();
                ensure!(
                    (report.before.clone(), report.after.clone()) == expected,
                    "merge n={n} k={k}"
                );
                ensure!(!report.beneficial, "merge n={n} k={k} beneficial");
                let report =
                    evaluate_annexation(&base, p(1), &Coalition::new(n, 2..=k).unwrap(), kind)
                        .unwrap();
                let expected = unanimity_payoffs(n, UnanimityVariant::Annex { k }).unwrap();
                ensure!(
                    (report.before.clone(), report.after.clone()) == expected,
                    "annex n={n} k={k}"
                );
                ensure!(report.beneficial, "annex n={n} k={k} not beneficial");
                checked += 2;
            }
        }
    }
    Ok(format!("{checked} closed forms match the engine"))
}

fn tightness() -> Check {
    let oracle = Method::Enumeration { limit: 26 };
    let mut ratios = Vec::new();
    for n in [8u64, 12, 20] {
        let g = tight_split_family(n).unwrap();
        let (after_game, remap) =
            split_game(&g, &SplitAction::new(p(1), [1u32, 1]).unwrap()).unwrap();
        let before = compute_banzhaf(&g, oracle)
            .unwrap()
            .normalized
            .get(p(1))
            .clone();
        let after = compute_banzhaf(&after_game, oracle).unwrap().normalized;
        let parts: BigRational = remap
            .targets(p(1))
            .iter()
            .map(|&id| after.get(id).clone())
            .sum();
        ratios.push(parts / before);
    }
    ensure!(
        ratios.windows(2).all(|w| w[0] < w[1]),
        "ratios not increasing"
    );
    ensure!(ratios[2] == r(365, 231), "n=20 ratio {}", ratios[2]);
    ensure!(approx(&ratios[2]) > 1.5, "n=20 ratio below 1.5");

    let g = dictator_family(8).unwrap();
    let (after_game, _) = split_game(&g, &SplitAction::new(p(1), [8u32, 8]).unwrap()).unwrap();
    let eta = compute_banzhaf(&after_game, oracle).unwrap().counts;
    ensure!(
        eta.get(p(1)) == &BigUint::from(128u32),
        "eta_1' = {}",
        eta.get(p(1))
    );
    ensure!(
        eta.get(p(3)) == &BigUint::from(40u32),
        "eta_unit = {}",
        eta.get(p(3))
    );
    let shown: Vec<String> = ratios.iter().map(|x| format!("{:.4}", approx(x))).collect();
    Ok(format!("ratios {} ; dictator 128/40", shown.join(" < ")))
}

fn multisets(max_len: usize, max_value: u64) -> Vec<Vec<u64>> {
    fn go(prefix: &mut Vec<u64>, lo: u64, max_len: usize, max_value: u64, out: &mut Vec<Vec<u64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if prefix.len() == max_len {
            return;
        }
        for v in lo..=max_value {
            prefix.push(v);
            go(prefix, v, max_len, max_value, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, max_len, max_value, &mut out);
    out
}

fn reductions() -> Check {
    let variants = [
        ReductionVariant::Split,
        ReductionVariant::Merge,
        ReductionVariant::Annex,
        ReductionVariant::ShapleyMerge,
    ];
    let mut no_instances = 0;
    for values in multisets(10, 4) {
        let instance = PartitionInstance::new(values.clone()).unwrap();
        if instance.has_equal_split() {
            continue;
        }
        no_instances += 1;
        for v in variants {
            let out = partition_reduction(&instance, v).unwrap();
            for id in out.focus_players() {
                ensure!(
                    is_dummy(&out.game, id).unwrap(),
                    "{values:?} {v:?}: player {id} not dummy"
                );
            }
            ensure!(
                !out.evaluate().unwrap().beneficial,
                "{values:?} {v:?}: beneficial"
            );
        }
    }
    let yes = PartitionInstance::new(vec![1, 1]).unwrap();
    let eval = |v| partition_reduction(&yes, v).unwrap().evaluate().unwrap();
    let annex = eval(ReductionVariant::Annex);
    ensure!(
        (annex.before.clone(), annex.after.clone()) == (r(1, 6), r(1, 3)),
        "annex {annex:?}"
    );
    ensure!(annex.beneficial, "annex not beneficial");
    let merge = eval(ReductionVariant::Merge);
    ensure!(
        (merge.before.clone(), merge.after.clone()) == (r(2, 7), r(1, 3)),
        "merge {merge:?}"
    );
    ensure!(merge.beneficial, "merge not beneficial");
    let split = eval(ReductionVariant::Split);
    ensure!(split.delta.is_zero(), "split delta {}", split.delta);
    let ss = eval(ReductionVariant::ShapleyMerge);
    Ok(format!(
        "{no_instances} no-instances clean; A={{1,1}}: annex 1/6->1/3, merge 2/7->1/3, split delta {}, ss-merge {}->{}",
        split.delta, ss.before, ss.after
    ))
}

fn best_of(runs: usize, g: &WeightedVotingGame) -> Duration {
    (0..runs)
        .map(|_| timed(|| eta_dp(g).unwrap()).1)
        .min()
        .unwrap()
}

fn performance() -> Check {
    let g = random_game(100, 10_000, 11, true).unwrap();
    let (bz, took) = timed(|| compute_banzhaf(&g, Method::DynamicProgramming).unwrap());
    ensure!(took < Duration::from_secs(10), "n=100 took {took:?}");
    ensure!(
        bz.normalized.sum() == BigRational::from_integer(1.into()),
        "not efficient"
    );
    let doubled = WeightedVotingGame::from_unsigned(
        g.quota() * 2u32,
        g.weights().iter().map(|w| w * 2u32).collect(),
    )
    .unwrap();
    let (base, twice) = (best_of(3, &g), best_of(3, &doubled));
    let ratio = twice.as_secs_f64() / base.as_secs_f64();
    ensure!(ratio <= 4.5, "doubling the weights cost {ratio:.2}x");
    ensure!(
        eta_dp(&doubled).unwrap() == bz.counts,
        "scaled game changed swing counts"
    );
    Ok(format!(
        "n=100, q={} in {took:?}; doubled weights {ratio:.2}x",
        g.quota()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("split triple on [q;2,2,2]", example_split_triple),
        ("annexation example", annexation_example),
        ("annexation paradox", paradox),
        ("enumeration/DP equivalence", oracle_equivalence),
        ("split doubling and 2-beta bound", split_bounds),
        ("merge bound", merge_bounds),
        ("Shapley-Shubik annexation monotonicity", shapley_annexation),
        ("unanimity closed forms", unanimity),
        ("split tightness trend", tightness),
        ("PARTITION reductions", reductions),
        ("DP performance", performance),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
