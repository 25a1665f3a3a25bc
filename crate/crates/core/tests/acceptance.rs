//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p entrench-core --test acceptance`. Exits non-zero
//! when any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use entrench_core::agent::AgentProfile;
use entrench_core::classifier::KeywordStats;
use entrench_core::format::write_profile;
use entrench_core::logic::{self, Formula};
use entrench_core::{ClassifierConfig, EntrenchmentRanking, Mode, Rank};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const TABLE1_TOLERANCE: f64 = 0.001;
const TABLE1_BUDGET: Duration = Duration::from_secs(1);
const SUITE_BUDGET: Duration = Duration::from_secs(60);
const RANDOM_INSTANCES: usize = 1000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn expect_rows(got: &EntrenchmentRanking, want: &EntrenchmentRanking) -> Result<(), String> {
    ensure(rows(got) == rows(want), || format!("got {:?}, want {:?}", rows(got), rows(want)))
}

fn table1() -> Outcome {
    let start = Instant::now();
    let corpus = table1_corpus();
    let mut stats = KeywordStats::new();
    for (d, j) in &corpus {
        stats.record(d, j.is_relevant());
    }
    let cfg = ClassifierConfig::default();
    let mut worst: f64 = 0.0;
    for (k, expected) in TABLE1_KEYWORDS {
        let pre = stats.preference(k, &cfg).map_err(|e| e.to_string())?;
        let err = (pre - expected).abs();
        ensure(err <= TABLE1_TOLERANCE, || format!("{k}: {pre:.4} vs {expected}"))?;
        worst = worst.max(err);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < TABLE1_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("6 keywords, max error {worst:.5}, {elapsed:?}"))
}

fn example1() -> Outcome {
    let (after, _) = table2_before().maxi_adjust(&f("!pkw(art)"), milli(856)).map_err(|e| e.to_string())?;
    expect_rows(&after, &table2_after())?;
    Ok("!pkw(sculpture) 0.785 -> 0.856, !pkw(art) 0 -> 0.856".into())
}

fn example2() -> Outcome {
    let (after, _) = table3_before().maxi_adjust(&f("pkw(sculpture)"), milli(785)).map_err(|e| e.to_string())?;
    expect_rows(&after, &table3_after())?;
    Ok("!pkw(sculpture), !pkw(art) -> 0; pkw(sculpture) -> 0.785".into())
}

fn example3() -> Outcome {
    let before = table4_before();
    let mut targets: Vec<Formula> = vec![f("pkw(business)"), f("pkw(sculpture)")];
    // Least entrenched first.
    targets.sort_by(|a, b| before.rank_of(a).partial_cmp(&before.rank_of(b)).unwrap());
    ensure(targets[0] == f("pkw(sculpture)"), || "pkw(sculpture) should go first".into())?;
    let mut b = before;
    for t in &targets {
        b = b.maxi_adjust(t, Rank::ZERO).map_err(|e| e.to_string())?.0;
    }
    expect_rows(&b, &table4_after())?;
    Ok("pkw(sculpture) then pkw(business) contracted to 0".into())
}

fn filtering() -> Outcome {
    let fmt = |v: [bool; 3]| v.map(|b| if b { 'T' } else { 'F' }).iter().collect::<String>();
    let mut out = Vec::new();
    for (name, ranking, want) in [
        ("t1", table2_after(), [false, false, true]),
        ("t2", table3_after(), [true, true, true]),
        ("t3", table4_after(), [false, false, false]),
    ] {
        let mut p = AgentProfile::default();
        p.ranking = ranking;
        let got = [p.filter(&phi()).relevant, p.filter(&varphi()).relevant, p.filter(&psi()).relevant];
        ensure(got == want, || format!("{name}: got {} want {}", fmt(got), fmt(want)))?;
        out.push(format!("{name}={}", fmt(got)));
    }
    Ok(out.join(" "))
}

fn tweety() -> Outcome {
    let (b, _) = tweety_base().maxi_adjust(&f("penguin(tweety)"), milli(800)).map_err(|e| e.to_string())?;
    let want = [
        ("forall x. penguin(x) -> bird(x)", "0.900"),
        ("penguin(tweety)", "0.800"),
        ("forall x. penguin(x) -> !fly(x)", "0.700"),
        ("forall x. bird(x) -> fly(x)", "0.400"),
    ]
    .map(|(a, r)| (a.to_string(), r.to_string()));
    ensure(rows(&b) == want, || format!("newB = {:?}", rows(&b)))?;
    let (not_fly, fly) = (b.degree(&f("!fly(tweety)")), b.degree(&f("fly(tweety)")));
    ensure(not_fly == milli(700), || format!("degree(!fly) = {not_fly}"))?;
    ensure(fly == milli(400), || format!("degree(fly) = {fly}"))?;
    let incons = b.inconsistency_degree();
    ensure(incons == milli(400), || format!("Incons = {incons}"))?;
    let cut = b.consistent_cut();
    ensure(b.entails_from(&cut, &f("!fly(tweety)")), || "cut does not entail !fly(tweety)".into())?;
    ensure(!b.entails_from(&cut, &f("fly(tweety)")), || "cut entails fly(tweety)".into())?;
    Ok(format!("degree(!fly)={not_fly} degree(fly)={fly} Incons={incons}"))
}

fn cr_baseline() -> Outcome {
    let b = cr_base();
    let neg = f("!pkw(business)");
    let cr = b.cr_revise(&neg, milli(900)).map_err(|e| e.to_string())?;
    ensure(rows(&cr) == vec![("!pkw(business)".to_string(), "0.900".to_string())], || {
        format!("(C-R) revision kept {:?}", rows(&cr))
    })?;
    let (maxi, _) = b.maxi_adjust(&neg, milli(900)).map_err(|e| e.to_string())?;
    for kept in ["pkw(sculpture)", "pkw(art)", "pkw(commerce)"] {
        ensure(maxi.rank_of(&f(kept)) == b.rank_of(&f(kept)), || format!("maxi-adjustment lost {kept}"))?;
    }
    Ok(format!("(C-R) keeps 1 entry; maxi-adjustment keeps {}", maxi.len()))
}

fn random_ranking(rng: &mut StdRng, steps: usize, per1_checked: &mut usize) -> Result<EntrenchmentRanking, String> {
    let mut b = EntrenchmentRanking::new();
    let mut trail = Vec::new();
    for _ in 0..steps {
        let g = random_belief(rng, 6);
        if !logic::is_contingent(&g) {
            continue;
        }
        let i = random_rank(rng);
        b = b.maxi_adjust(&g, i).map_err(|e| e.to_string())?.0;
        trail.push(format!("B*({g}, {i})"));
        let v = b.validate(Mode::Strict);
        ensure(v.is_valid(), || {
            let why: Vec<&str> = v.violations.iter().map(|x| x.message.as_str()).collect();
            format!("after {}: {}", trail.join(", "), why.join("; "))
        })?;
        *per1_checked += 1;
    }
    Ok(b)
}

fn properties() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);

    let mut disagreements = 0;
    for _ in 0..RANDOM_INSTANCES {
        let atoms = rng.gen_range(1..=10);
        let n = rng.gen_range(0..4);
        let premises: Vec<Formula> = (0..n).map(|_| random_formula(&mut rng, atoms, 3)).collect();
        let goal = random_formula(&mut rng, atoms, 3);
        let refs: Vec<&Formula> = premises.iter().collect();
        if logic::entails(&premises, &goal) != tt_entails(&refs, &goal) {
            disagreements += 1;
        }
    }
    ensure(disagreements == 0, || format!("{disagreements} entailment disagreements"))?;

    let mut per1_states = 0;
    let mut contractions = 0;
    for _ in 0..RANDOM_INSTANCES {
        let steps = rng.gen_range(1..=8);
        let b = random_ranking(&mut rng, steps, &mut per1_states)?;
        let g = random_belief(&mut rng, 6);
        if !logic::is_contingent(&g) {
            continue;
        }
        let i = random_rank(&mut rng);
        let (after, _) = b.contract(&g, i).map_err(|e| e.to_string())?;
        let kept: Vec<Formula> = after.cut_above(i).iter().map(|s| s.as_formula().unwrap().clone()).collect();
        ensure(!logic::entails(&kept, &g), || format!("contract({g}, {i}) left it derivable"))?;
        contractions += 1;
    }

    for seed in 0..5 {
        let corpus = random_corpus(&mut StdRng::seed_from_u64(seed), 40);
        let replay = || -> Result<String, String> {
            let mut p = AgentProfile::with_domain(domain(), ClassifierConfig::default(), Mode::Paper)
                .map_err(|e| e.to_string())?;
            for (d, j) in &corpus {
                p = p.learn(d, *j).map_err(|e| e.to_string())?.0;
            }
            Ok(write_profile(&p))
        };
        let (a, b) = (replay()?, replay()?);
        ensure(a == b, || format!("replay of corpus {seed} differs"))?;
    }

    let elapsed = start.elapsed();
    ensure(elapsed < SUITE_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{RANDOM_INSTANCES} entailment checks, {RANDOM_INSTANCES} adjustment sequences \
         ({per1_states} PER1-valid states), {contractions} contractions, 5 byte-identical replays, {elapsed:?}"
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [Criterion; 8] = [
        ("table-1 preference values", table1),
        ("example-1 raising related beliefs", example1),
        ("example-2 contracting related beliefs", example2),
        ("example-3 contracting multiple beliefs", example3),
        ("filtering sequence t1/t2/t3", filtering),
        ("tweety degrees, Incons and cut", tweety),
        ("(C-R) baseline vs maxi-adjustment", cr_baseline),
        ("property suites and replay determinism", properties),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} criteria, {failed} failed, {:?}", criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
