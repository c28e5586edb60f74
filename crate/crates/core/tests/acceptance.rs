//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p election-game --test acceptance`. Every check
//! compares the library with the reference code in `oracle/` or with values
//! printed in the source tables; the process exits non-zero if any
//! criterion fails.

mod oracle;

use std::time::{Duration, Instant};

use election_game::coalition::DEFAULT_COALITION_CAP;
use election_game::efficiency::{check_poa_bound, table3_family};
use election_game::sat::{
    build_gadget, compare_batch, gadget_payoffs, gadget_probabilities, CnfFormula,
    DEFAULT_GADGET_EPSILON,
};
use election_game::{
    approx_ratio_all_first, coalition_incentive_delta, enumerate_psne, evaluate, fixtures,
    fpt_psne, is_psne, price_of_anarchy, secce_transform, CoalitionStructure, EgoismMode,
    EnsembleSpec, FptOptions, GameInstance, Hardmax, Profile, SearchLimits, Softmax, WinProb,
};
use oracle::{Raw, Rule};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn lim() -> SearchLimits {
    SearchLimits::default()
}

fn rules() -> [(&'static dyn WinProb, Rule); 2] {
    [(&Hardmax, Rule::Hardmax), (&Softmax, Rule::Softmax)]
}

fn ensemble(
    count: usize,
    max_parties: usize,
    max_candidates: usize,
    seed: u64,
) -> Vec<GameInstance> {
    EnsembleSpec {
        count,
        min_parties: 2,
        max_parties,
        max_candidates,
        beta: 100.0,
        mode: EgoismMode::Egoistic,
        seed,
    }
    .instances()
    .map(|r| r.expect("generator").1)
    .collect()
}

fn within(budget: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    if took > budget {
        Err(format!("took {took:?}, budget {budget:?}"))
    } else {
        Ok(())
    }
}

fn profiles_of(found: &[Profile]) -> Vec<Vec<usize>> {
    found.iter().map(|p| p.choices().to_vec()).collect()
}

/// Softmax payoffs of the no-equilibrium fixture, as printed.
const TABLE2_PAYOFFS: [([usize; 3], [f64; 3]); 8] = [
    ([1, 1, 1], [18.81, 34.64, 28.51]),
    ([1, 1, 2], [23.49, 27.82, 27.38]),
    ([1, 2, 1], [11.27, 34.67, 39.70]),
    ([1, 2, 2], [15.57, 28.09, 38.93]),
    ([2, 1, 1], [18.74, 44.53, 22.84]),
    ([2, 1, 2], [23.18, 38.35, 21.61]),
    ([2, 2, 1], [11.58, 44.25, 33.66]),
    ([2, 2, 2], [15.67, 38.27, 32.77]),
];

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = fixtures::table2();
    let mut worst: f64 = 0.0;
    for (s, expected) in TABLE2_PAYOFFS {
        let e = evaluate(&g, &Softmax, &Profile::from_one_based(&s).unwrap());
        for i in 0..3 {
            let err = (e.payoffs[i] - expected[i]).abs();
            worst = worst.max(err);
            if err > 0.01 {
                return Err(format!(
                    "r_{} at {s:?} = {:.4}, printed {}",
                    i + 1,
                    e.payoffs[i],
                    expected[i]
                ));
            }
        }
    }
    let eq = enumerate_psne(&g, &Softmax, 0.0, lim()).map_err(|e| e.to_string())?;
    if !eq.is_empty() {
        return Err(format!("found equilibria {eq:?}"));
    }
    within(Duration::from_secs(1), start)?;
    Ok(format!(
        "24 payoffs within 0.01 (max error {worst:.4}), no equilibrium"
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let g = fixtures::table1();
    let eq = enumerate_psne(&g, &Hardmax, 0.0, lim()).map_err(|e| e.to_string())?;
    let expected = vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1]];
    if profiles_of(&eq) != expected {
        return Err(format!("equilibria {eq:?}"));
    }
    let r = price_of_anarchy(&g, &Hardmax, 0.0, lim()).map_err(|e| e.to_string())?;
    if r.poa != Some(2.0) || r.optimal_sw != 100.0 {
        return Err(format!("PoA {:?}, optimum {}", r.poa, r.optimal_sw));
    }
    let (opt, poa) = Raw::of(&g).poa(Rule::Hardmax);
    if opt != 100.0 || poa != Some(2.0) {
        return Err(format!("oracle disagrees: optimum {opt}, PoA {poa:?}"));
    }
    within(Duration::from_secs(1), start)?;
    Ok("equilibria (1,1,1) (1,1,2) (1,2,1) (1,2,2), PoA 2.000000, optimum 100".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut shown = Vec::new();
    for m in 2..=5 {
        let g = table3_family(m, 100.0, 1e-6).map_err(|e| e.to_string())?;
        let poa = price_of_anarchy(&g, &Hardmax, 0.0, lim())
            .map_err(|e| e.to_string())?
            .poa
            .ok_or("no equilibrium")?;
        if (poa - m as f64).abs() > 1e-4 {
            return Err(format!("m = {m}: PoA {poa}"));
        }
        if !is_psne(&g, &Hardmax, &g.all_first(), 0.0)
            || !Raw::of(&g).is_psne(Rule::Hardmax, &vec![0; m])
        {
            return Err(format!("m = {m}: all-first is not an equilibrium"));
        }
        shown.push(format!("{poa:.6}"));
    }
    within(Duration::from_secs(1), start)?;
    Ok(format!("PoA for m = 2..5: {}", shown.join(", ")))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut with_eq = 0;
    let mut max_ratio: f64 = 0.0;
    for g in ensemble(500, 4, 3, 4) {
        let raw = Raw::of(&g);
        let m = g.num_parties() as f64;
        for (wp, rule) in rules() {
            let lib = price_of_anarchy(&g, wp, 0.0, lim()).map_err(|e| e.to_string())?;
            let (_, poa) = raw.poa(rule);
            match (lib.poa, poa) {
                (None, None) => {}
                (Some(a), Some(b)) if (a - b).abs() <= 1e-9 * b.max(1.0) => {
                    with_eq += 1;
                    max_ratio = max_ratio.max(a / m);
                    if a > m + 1e-9 {
                        return Err(format!("PoA {a} > m = {m} ({})", wp.name()));
                    }
                }
                (a, b) => return Err(format!("library PoA {a:?}, oracle {b:?} ({})", wp.name())),
            }
            if !check_poa_bound(&g, wp, 0.0, lim()).map_err(|e| e.to_string())? {
                return Err("check_poa_bound reported a violation".into());
            }
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!(
        "1000 runs, {with_eq} with equilibria, max PoA/m = {max_ratio:.4}, no violation"
    ))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let bound = 1.0 + std::f64::consts::E;
    let mut worst: f64 = 1.0;
    let instances = EnsembleSpec {
        count: 1000,
        min_parties: 2,
        max_parties: 5,
        max_candidates: 4,
        beta: 100.0,
        mode: EgoismMode::Egoistic,
        seed: 5,
    };
    for inst in instances.instances() {
        let (seed, g) = inst.map_err(|e| e.to_string())?;
        let r = approx_ratio_all_first(&g, &Softmax).map_err(|e| e.to_string())?;
        let expected = Raw::of(&g).alpha_all_first(Rule::Softmax);
        if (r.alpha - expected).abs() > 1e-12 * expected {
            return Err(format!(
                "seed {seed}: alpha {} vs oracle {expected}",
                r.alpha
            ));
        }
        if r.alpha > bound {
            return Err(format!("seed {seed}: alpha {} > 1 + e", r.alpha));
        }
        worst = worst.max(r.alpha);
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!(
        "1000 instances, worst alpha {worst:.6} <= {bound:.7}"
    ))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut found = 0;
    let mut none = 0;
    let mut evaluated = 0u64;
    for g in ensemble(500, 4, 4, 6) {
        let raw = Raw::of(&g);
        for (wp, rule) in rules() {
            let out = fpt_psne(&g, wp, FptOptions::default()).map_err(|e| e.to_string())?;
            let brute = raw.psne(rule);
            match &out.profile {
                Some(p) if brute.contains(&p.choices().to_vec()) => found += 1,
                Some(p) => return Err(format!("{} returned {p}, not an equilibrium", wp.name())),
                None if brute.is_empty() => none += 1,
                None => return Err(format!("{} found nothing; oracle has {brute:?}", wp.name())),
            }
            let r = &out.reduced;
            let bound = (r.refined_depth as u64).pow(r.k as u32);
            if out.stats.profiles_evaluated > bound {
                return Err(format!(
                    "{} profiles evaluated, bound d~^k = {bound}",
                    out.stats.profiles_evaluated
                ));
            }
            let per_profile = (r.k * (r.refined_depth - 1)) as u64;
            if out.stats.deviation_checks > out.stats.profiles_evaluated * per_profile {
                return Err("deviation checks exceed k(d~ - 1) per profile".into());
            }
            evaluated += out.stats.profiles_evaluated;
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!(
        "1000 runs agree with brute force ({found} found, {none} none), {evaluated} reduced profiles evaluated"
    ))
}

/// Counts equilibria containing a strategy that an earlier candidate of the
/// same party dominates without reference to probabilities.
fn surpassed_in_equilibria(wp: &dyn WinProb) -> Result<(usize, usize, Option<String>), String> {
    let mut checked = 0;
    let mut bad = 0;
    let mut example = None;
    let mut instances = vec![fixtures::table1(), fixtures::table2()];
    instances.extend(ensemble(500, 4, 4, 6));
    for g in instances {
        let raw = Raw::of(&g);
        for s in enumerate_psne(&g, wp, 0.0, lim()).map_err(|e| e.to_string())? {
            checked += 1;
            let hit = (0..g.num_parties()).find_map(|i| {
                (0..s.get(i))
                    .find(|&b| raw.surpasses(i, b, s.get(i)))
                    .map(|b| (i, b))
            });
            if let Some((i, b)) = hit {
                bad += 1;
                example.get_or_insert_with(|| {
                    format!(
                        "{s}: party {} candidate {} is surpassed by candidate {}",
                        i + 1,
                        s.get(i) + 1,
                        b + 1
                    )
                });
            }
        }
    }
    Ok((checked, bad, example))
}

fn criterion_7() -> Outcome {
    let (soft_checked, soft_bad, soft_ex) = surpassed_in_equilibria(&Softmax)?;
    let (hard_checked, hard_bad, hard_ex) = surpassed_in_equilibria(&Hardmax)?;
    let summary = format!(
        "softmax: {soft_bad} of {soft_checked} equilibria contain a surpassed strategy; hardmax: {hard_bad} of {hard_checked}"
    );
    if soft_bad == 0 && hard_bad == 0 {
        Ok(summary)
    } else {
        let ex = hard_ex.or(soft_ex).unwrap_or_default();
        Err(format!("{summary}; e.g. {ex}"))
    }
}

/// Printed special-block values: ((s_{m-1}, s_m), p_{m-1}, r_{m-1}, r_m).
const GADGET_TRUE: [((usize, usize), f64, f64, f64); 4] = [
    ((0, 0), 0.7353, 61.82, 7.09),
    ((0, 1), 0.7104, 61.57, 7.08),
    ((1, 0), 0.7630, 61.75, 20.18),
    ((1, 1), 0.7398, 61.53, 19.78),
];
const GADGET_FALSE: [((usize, usize), f64, f64, f64); 4] = [
    ((0, 0), 0.7568, 63.54, 6.59),
    ((0, 1), 0.7304, 63.05, 6.66),
    ((1, 0), 0.7857, 63.50, 20.07),
    ((1, 1), 0.7615, 63.07, 19.72),
];

/// Special-block values from the construction, with `f` the formula value.
fn gadget_oracle(a: usize, b: usize, f: f64) -> (f64, f64, f64) {
    // social utilities and (u_{m-1}, u_m) of the four special candidates
    let first = [(84.0, 83.0, 1.0), (99.0, 80.0, 19.0)][a];
    let second = [(27.0, 3.0, 24.0), (31.0, 9.0, 22.0)][b];
    let w = |u: f64| (u / 200.0f64).powf(1.0 - f / 10.0);
    let p = w(first.0) / (w(first.0) + w(second.0));
    let q = 1.0 - p;
    (p, p * first.1 + q * second.1, p * first.2 + q * second.2)
}

fn gadget_fixture_check() -> Result<(f64, f64), String> {
    let formulas = [
        (
            CnfFormula::new(4, vec![vec![1, -1]]).unwrap(),
            GADGET_TRUE,
            1.0,
        ),
        (
            CnfFormula::new(4, vec![vec![1], vec![-1]]).unwrap(),
            GADGET_FALSE,
            0.0,
        ),
    ];
    let (mut perr, mut rerr) = (0.0f64, 0.0f64);
    for (f, table, fval) in formulas {
        let gg = build_gadget(&f, DEFAULT_GADGET_EPSILON).map_err(|e| e.to_string())?;
        for ((a, b), p, r1, r2) in table {
            let s = Profile::new(vec![0, 0, a, b]);
            let probs = gadget_probabilities(&gg, &s);
            let r = gadget_payoffs(&gg, &s);
            let (op, or1, or2) = gadget_oracle(a, b, fval);
            for (lib, oracle) in [(probs[2], op), (r[2], or1), (r[3], or2)] {
                if (lib - oracle).abs() > 1e-9 {
                    return Err(format!("{s}: library {lib} vs construction {oracle}"));
                }
            }
            perr = perr.max((probs[2] - p).abs());
            rerr = rerr.max((r[2] - r1).abs()).max((r[3] - r2).abs());
            if (probs[2] - p).abs() > 5e-4 || (probs[3] - (1.0 - p)).abs() > 5e-4 {
                return Err(format!("{s} f={fval}: p = {:.5}, printed {p}", probs[2]));
            }
            if (r[2] - r1).abs() > 0.01 || (r[3] - r2).abs() > 0.01 {
                return Err(format!(
                    "{s} f={fval}: r = ({:.3}, {:.3}), printed ({r1}, {r2})",
                    r[2], r[3]
                ));
            }
            if r[0] != 0.0 || r[1] != 0.0 {
                return Err(format!("{s}: filler payoffs {r:?}"));
            }
        }
    }
    Ok((perr, rerr))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let (perr, rerr) = gadget_fixture_check()?;
    within(Duration::from_secs(1), start)?;
    Ok(format!(
        "8 payoff pairs (max error {rerr:.4}) and 8 probabilities (max error {perr:.5}) match"
    ))
}

fn criterion_9() -> Outcome {
    gadget_fixture_check()?;
    let mut formulas: Vec<(String, CnfFormula)> = vec![
        (
            "v1 & v2".into(),
            CnfFormula::new(2, vec![vec![1], vec![2]]).unwrap(),
        ),
        (
            "v1 & !v1 & (v2 | !v2)".into(),
            CnfFormula::new(2, vec![vec![1], vec![-1], vec![2, -2]]).unwrap(),
        ),
        (
            "tautology/3".into(),
            CnfFormula::new(3, vec![vec![1, -1]]).unwrap(),
        ),
        ("empty/2".into(), CnfFormula::new(2, vec![]).unwrap()),
        (
            "all-sign 2-cnf (unsat)".into(),
            CnfFormula::new(2, vec![vec![1, 2], vec![1, -2], vec![-1, 2], vec![-1, -2]]).unwrap(),
        ),
        (
            "!v1 & !v2 & !v3".into(),
            CnfFormula::new(3, vec![vec![-1], vec![-2], vec![-3]]).unwrap(),
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..50u64 {
        let vars = rng.gen_range(2..=8);
        let clauses = (vars as f64 * rng.gen_range(1.0..6.0)).round() as usize;
        let f = CnfFormula::random_3cnf(vars, clauses, 900 + k).map_err(|e| e.to_string())?;
        formulas.push((format!("random#{k}"), f));
    }
    let report =
        compare_batch(&formulas, DEFAULT_GADGET_EPSILON, lim()).map_err(|e| e.to_string())?;
    for row in &report.rows {
        let sat = oracle::satisfiable(row.formula.num_vars(), row.formula.clauses());
        if sat != row.satisfiable {
            return Err(format!("{}: SAT oracle says {sat}", row.label));
        }
        let gg = build_gadget(&row.formula, DEFAULT_GADGET_EPSILON).map_err(|e| e.to_string())?;
        let exists = gg
            .instance
            .profiles()
            .any(|s| is_psne(&gg.instance, &gg.wp, &s, 0.0));
        if exists != row.psne_exists {
            return Err(format!("{}: existence scan says {exists}", row.label));
        }
    }
    for row in report.findings() {
        println!("    finding: {row}");
    }
    let unsat = report.rows.iter().filter(|r| !r.satisfiable).count();
    Ok(format!(
        "{} formulas ({} unsat): {} agree, {} satisfiable without equilibrium, {} equilibrium without satisfiability",
        report.rows.len(),
        unsat,
        report.agreements(),
        report.sat_without_psne(),
        report.psne_without_sat()
    ))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let spec = EnsembleSpec {
        count: 100,
        min_parties: 2,
        max_parties: 4,
        max_candidates: 2,
        beta: 100.0,
        mode: EgoismMode::StronglyEgoistic,
        seed: 10,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut deltas = 0;
    let mut worst = f64::NEG_INFINITY;
    for inst in spec.instances() {
        let (seed, g) = inst.map_err(|e| e.to_string())?;
        let raw = Raw::of(&g);
        if !raw.is_strongly_egoistic() {
            return Err(format!(
                "seed {seed}: generator output not strongly egoistic"
            ));
        }
        let m = g.num_parties();
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(&mut rng);
        let cuts = rng.gen_range(1..=m);
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); cuts];
        for (k, &i) in order.iter().enumerate() {
            blocks[if k < cuts { k } else { rng.gen_range(0..cuts) }].push(i);
        }
        let cs = CoalitionStructure::new(blocks.clone(), m).map_err(|e| e.to_string())?;
        let cg = secce_transform(&g, &cs, DEFAULT_COALITION_CAP).map_err(|e| e.to_string())?;
        if !Raw::of(&cg.instance).is_egoistic() {
            return Err(format!(
                "seed {seed}: coalition game for {cs} is not egoistic"
            ));
        }
        // every joint choice, every member of a coalition with two or more parties
        for joint in raw.profiles() {
            let choices: Vec<Vec<usize>> = cs
                .blocks()
                .iter()
                .map(|b| b.iter().map(|&i| joint[i]).collect())
                .collect();
            for block in cs.blocks().iter().filter(|b| b.len() >= 2) {
                for &member in block {
                    let d = coalition_incentive_delta(&g, &cs, &Softmax, member, &choices)
                        .map_err(|e| e.to_string())?;
                    let expected =
                        oracle::incentive_delta(&raw, cs.blocks(), Rule::Softmax, member, &choices);
                    if (d.delta - expected).abs() > 1e-9 {
                        return Err(format!(
                            "seed {seed}: delta {} vs oracle {expected}",
                            d.delta
                        ));
                    }
                    if d.delta > 1e-9 {
                        return Err(format!(
                            "seed {seed}: party {} gains {} by leaving {cs}",
                            member + 1,
                            d.delta
                        ));
                    }
                    deltas += 1;
                    worst = worst.max(d.delta);
                }
            }
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!(
        "100 partitions egoistic after merging; {deltas} softmax deltas, largest {worst:.4}"
    ))
}

fn criterion_11() -> Outcome {
    let mut games = ensemble(500, 4, 3, 4);
    games.extend(ensemble(500, 4, 4, 6));
    games.extend([fixtures::table1(), fixtures::table2()]);
    let mut profiles = 0;
    for g in &games {
        let m = g.num_parties() as f64;
        for s in g.profiles() {
            let soc = g.social_vector(&s);
            let lo = soc.iter().sum::<f64>() / m;
            let hi = soc.iter().cloned().fold(f64::MIN, f64::max);
            for (wp, _) in rules() {
                let e = evaluate(g, wp, &s);
                let total: f64 = e.probs.iter().sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(format!("{s}: probabilities sum to {total}"));
                }
                let sw = e.social_welfare;
                if sw < lo - 1e-9 || sw > hi + 1e-9 {
                    return Err(format!("{s} ({}): SW {sw} outside [{lo}, {hi}]", wp.name()));
                }
            }
            profiles += 1;
        }
    }
    Ok(format!(
        "{profiles} profiles over {} games within bounds",
        games.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("softmax fixture payoffs, no equilibrium", criterion_1),
        ("hardmax fixture equilibria and PoA", criterion_2),
        ("PoA tightness family", criterion_3),
        ("PoA at most m on random games", criterion_4),
        ("all-first within 1 + e under softmax", criterion_5),
        ("parameterized search equals brute force", criterion_6),
        ("no surpassed strategy in equilibria", criterion_7),
        ("gadget special-block values", criterion_8),
        ("gadget equilibria vs satisfiability", criterion_9),
        ("coalition games egoistic, leaving never pays", criterion_10),
        ("welfare and probability bounds", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {:>2}: {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {detail}", k + 1);
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
