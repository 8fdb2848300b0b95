//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subshift::extension::{anchor_words, cocycle, conjugacy_check, extension_trace, EntryMode, ExtensionTrace};
use subshift::graphspeedup::{enumerated_patterns, speedup_sft, speedup_sofic, Presentation, SftPresentation, SoficPresentation};
use subshift::lr::{golden_for, minimality_probe, proof_bound_check, recurrence_profile, speedup_recurrence_profile};
use subshift::permutation::Permutation;
use subshift::returnwords::return_words;
use subshift::shiftspaces::{complexity, fixed_point_prefix, Substitution};
use subshift::speedup::{speedup_complexity, validate_jump, JumpFunction};
use subshift::words::{subwords, Alphabet, OrbitSegment, Word};

type Outcome = Result<String, String>;

fn fib(len: usize) -> OrbitSegment {
    fixed_point_prefix(&Substitution::fibonacci(), 0, len).unwrap()
}

fn word(text: &str) -> Word {
    Word::parse(&Alphabet::binary(), text).unwrap()
}

fn constant(k: usize) -> JumpFunction {
    JumpFunction::constant(k).unwrap()
}

fn trace(k: usize, window: usize) -> ExtensionTrace {
    extension_trace(&fib(window), &constant(k), &word("1001"), EntryMode::Relaxed).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_flips() -> Outcome {
    let t = trace(2, 10_000);
    let flip = Permutation::parse("(12)", 2).unwrap();
    let bad = t.perms().iter().filter(|p| **p != flip).count();
    ensure(bad == 0 && !t.is_empty(), format!("{bad} of {} steps differ from (12)", t.len()))?;
    Ok(format!("{} steps, all (12)", t.len()))
}

fn c2_three_cycle() -> Outcome {
    let t = trace(3, 10_000);
    let table = t.permutation_table();
    let lookup = |r: &str| {
        let idx = t.returns().iter().position(|x| x.to_string() == r).expect("return word present");
        table[&idx].iter().map(|p| p.to_string()).collect::<Vec<_>>()
    };
    let (short, long) = (lookup("100"), lookup("10010"));
    ensure(short == ["e"] && long == ["(123)"], format!("R -> {short:?}, R' -> {long:?}"))?;
    Ok("psi over 100 = e, over 10010 = (123)".into())
}

fn c3_return_words() -> Outcome {
    let sys = return_words(&fib(10_000), &word("1001")).unwrap();
    let rets: BTreeSet<String> = sys.returns().iter().map(|r| r.to_string()).collect();
    ensure(rets == BTreeSet::from(["100".to_string(), "10010".to_string()]), format!("{rets:?}"))?;
    let names: Vec<&str> = sys.derived()[..7]
        .iter()
        .map(|&d| if sys.returns()[d].to_string() == "100" { "R" } else { "R'" })
        .collect();
    ensure(names == ["R'", "R", "R'", "R'", "R", "R'", "R"], format!("{names:?}"))?;
    Ok(format!("derived begins {}", names.join(" ")))
}

fn c4_complexity() -> Outcome {
    let s = fib(10_000);
    let profile = complexity(&s, 25).map_err(|e| e.to_string())?;
    for n in 1..=25 {
        let brute = subwords(&s, n).unwrap().len();
        ensure(brute == n + 1 && profile.get(n) == Some(n + 1), format!("n = {n}: {brute}"))?;
    }
    Ok("p(n) = n + 1 for n <= 25".into())
}

fn c5_speedup_complexity() -> Outcome {
    let s = fib(10_000);
    let mut notes = Vec::new();
    for k in [2, 3] {
        let sc = speedup_complexity(&s, &constant(k), 15).map_err(|e| e.to_string())?;
        ensure(sc.radius == 0 && sc.k_prime == k as u128, format!("N = {}, K' = {}", sc.radius, sc.k_prime))?;
        if let Some(c) = sc.checks.iter().find(|c| !c.holds()) {
            return Err(format!("p = {k}, n = {}: {} > {}", c.n, c.speedup_count, c.bound));
        }
        notes.push(format!("p={k}: p_S(15) = {}", sc.profile.get(15).unwrap()));
    }
    Ok(notes.join(", "))
}

fn c6_cocycle() -> Outcome {
    let t = trace(3, 10_000);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let o = t.origin() as i64;
    let len = t.len() as i64;
    let mut negative = 0;
    for _ in 0..1000 {
        let m = rng.random_range(-o..=len - o);
        let n = rng.random_range(-(o + m)..=len - o - m);
        if m < 0 || n < 0 {
            negative += 1;
        }
        let lhs = cocycle(&t, m + n).map_err(|e| e.to_string())?;
        let shifted = t.shifted(m).map_err(|e| e.to_string())?;
        let rhs = &cocycle(&t, m).unwrap() * &cocycle(&shifted, n).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, format!("m = {m}, n = {n}: {lhs} vs {rhs}"))?;
    }
    ensure(negative > 0, "no negative index drawn")?;
    Ok(format!("1000 pairs, {negative} with a negative index"))
}

fn c7_conjugacy() -> Outcome {
    let s = fib(10_000);
    let t = trace(3, 10_000);
    let anchors = anchor_words(&s, &word("1001"), 10).unwrap();
    ensure(anchors.len() == 10, format!("only {} anchors", anchors.len()))?;
    let groups: Vec<_> = anchors
        .iter()
        .map(|a| t.local_group(&s, a).map_err(|e| format!("{a}: {e}")))
        .collect::<Result<_, _>>()?;
    for (i, h1) in groups.iter().enumerate() {
        for (j, h2) in groups.iter().enumerate() {
            let g = conjugacy_check(h1, h2).unwrap();
            ensure(g.is_some(), format!("anchors {} and {} not conjugate", anchors[i], anchors[j]))?;
        }
    }
    let orders: BTreeSet<usize> = groups.iter().map(|g| g.order()).collect();
    Ok(format!("10 anchors, orders {orders:?}"))
}

fn c8_linear_recurrence() -> Outcome {
    let mut notes = Vec::new();
    for k in [2, 3] {
        let g = golden_for("fibonacci", k).expect("golden exists");
        let s = fib(g.window);
        let base = recurrence_profile(&s, g.base_n_max).map_err(|e| e.to_string())?;
        let speed = speedup_recurrence_profile(&s, &constant(k), g.speedup_n_max).map_err(|e| e.to_string())?;
        ensure(base.max_ratio() == g.base_max(), format!("base {} vs golden {}", base.max_ratio(), g.base_max()))?;
        ensure(
            speed.max_ratio() == g.speedup_max(),
            format!("speedup {} vs golden {}", speed.max_ratio(), g.speedup_max()),
        )?;
        let scan = extension_trace(&s, &constant(k), &word("1001"), EntryMode::Relaxed).unwrap().gap_scan();
        ensure(scan.all_observed(), "group element never reoccurs")?;
        let rows = proof_bound_check(&speed, base.max_ratio(), scan.ratio, k);
        if let Some(r) = rows.iter().find(|r| !r.holds()) {
            return Err(format!("p = {k}, n = {}: gap {} > {}", r.n, r.gap, r.bound));
        }
        notes.push(format!("p={k}: L = {}, L_S = {}, L* = {}", base.max_ratio(), speed.max_ratio(), scan.ratio));
    }
    Ok(notes.join("; "))
}

fn c9_graph_oracle() -> Outcome {
    let two = constant(2);
    let golden = SftPresentation::golden_mean();
    let even = SoficPresentation::even_shift();
    let sft = speedup_sft(&golden, &two).map_err(|e| e.to_string())?;
    let sofic = speedup_sofic(&even, &two).map_err(|e| e.to_string())?;
    for n in 1..=8 {
        let a = sft.pattern_language(n).unwrap();
        ensure(a == enumerated_patterns(&Presentation::Sft(golden.clone()), &two, n).unwrap(), format!("golden mean n = {n}"))?;
        let b = sofic.pattern_language(n).unwrap();
        ensure(b == enumerated_patterns(&Presentation::Sofic(even.clone()), &two, n).unwrap(), format!("even n = {n}"))?;
    }
    Ok("golden mean and even shift agree for n <= 8".into())
}

fn c10_homeomorphisms() -> Outcome {
    let s = fib(10_000);
    for k in 1..=4 {
        ensure(validate_jump(&constant(k), &s).unwrap().is_homeomorphic(), format!("constant {k} rejected"))?;
    }
    let letter = JumpFunction::table(Alphabet::binary(), 0, [(vec![0], 1), (vec![1], 2)]).unwrap();
    let report = validate_jump(&letter, &s).unwrap();
    ensure(!report.injective() && report.collision() == Some((1, 2, 3)), format!("collision {:?}", report.collision()))?;
    let first_return = JumpFunction::first_return(&s, 3).unwrap();
    ensure(validate_jump(&first_return, &s).unwrap().is_homeomorphic(), "first-return jump rejected")?;
    let probe = minimality_probe(&s, &first_return, 4).map_err(|e| e.to_string())?;
    ensure(!probe.holds(), "first-return speedup looks minimal")?;
    Ok(format!("first-return probe misses {:?} patterns per class", probe.missing_per_class))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("p=2 transitions over 1001 are (12)", c1_flips),
        ("p=3 transitions: e over 100, (123) over 10010", c2_three_cycle),
        ("return words of 1001 and derived prefix", c3_return_words),
        ("Fibonacci complexity n + 1", c4_complexity),
        ("S-pattern complexity bound", c5_speedup_complexity),
        ("cocycle identity", c6_cocycle),
        ("local groups pairwise conjugate", c7_conjugacy),
        ("recurrence goldens and gap bound", c8_linear_recurrence),
        ("speedup presentations vs enumeration", c9_graph_oracle),
        ("homeomorphism validation", c10_homeomorphisms),
    ];
    let total = Instant::now();
    let mut failed = Vec::new();
    println!();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("PASS {:>2} {name}: {note} ({secs:.2}s)", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    println!("total {:.2}s", total.elapsed().as_secs_f64());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
