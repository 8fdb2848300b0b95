use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subshift::extension::{cocycle, extension_trace};
use subshift::graphspeedup::{enumerated_patterns, SpeedupPresentation};
use subshift::lr::{minimality_probe, proof_bound_check, recurrence_profile, speedup_recurrence_profile};
use subshift::permutation::Permutation;
use subshift::returnwords::return_words;
use subshift::shiftspaces::{complexity, primitivity_check};
use subshift::speedup::{orbit_coloring, speedup_complexity, validate_jump};

use crate::{verdict, CliResult, Run};

const COCYCLE_PAIRS: usize = 1000;

struct Report {
    failures: usize,
}

impl Report {
    fn record(&mut self, name: &str, outcome: CliResult<(bool, String)>) {
        let (ok, detail) = match outcome {
            Ok(pair) => pair,
            Err(e) => (false, format!("error[{}]: {e}", e.class())),
        };
        if !ok {
            self.failures += 1;
        }
        if detail.is_empty() {
            println!("{} {name}", verdict(ok));
        } else {
            println!("{} {name}: {detail}", verdict(ok));
        }
    }
}

/// Every invariant that applies to the given shift, jump and word.
pub fn run(run: &Run) -> CliResult<bool> {
    let mut report = Report { failures: 0 };
    let seg = &run.segment;
    let n_max = run.nmax(10);

    report.record("complexity stable and non-decreasing", (|| {
        let p = complexity(seg, n_max)?;
        Ok((p.is_monotone(), format!("counts {:?}", p.counts())))
    })());

    if let Some(sub) = run.source.substitution() {
        let prim = primitivity_check(sub);
        report.record(
            "substitution primitive",
            Ok((prim.primitive, prim.witness_power.map_or_else(String::new, |k| format!("M^{k} > 0")))),
        );
    }

    let jump = run.optional_jump()?;
    let word = run.optional_word()?;

    if let Some(jump) = &jump {
        report.record("jump is a homeomorphic speedup", (|| {
            let v = validate_jump(jump, seg)?;
            Ok((v.is_homeomorphic(), format!("p_max {}", v.p_max)))
        })());
        report.record("orbit number at most p_max", (|| {
            let c = orbit_coloring(seg, jump)?;
            Ok((c.c() <= c.p_max(), format!("c = {}", c.c())))
        })());
        report.record("S-pattern complexity bound", (|| {
            run.require_window(n_max, jump.max_value())?;
            let sc = speedup_complexity(seg, jump, n_max)?;
            Ok((sc.holds(), format!("K' = {}", sc.k_prime)))
        })());
        report.record("speedup minimal (window probe)", (|| {
            let v = minimality_probe(seg, jump, n_max.min(4))?;
            let missing: usize = v.missing_per_class.iter().sum();
            Ok((v.holds(), format!("{} patterns, {missing} missing across classes", v.patterns)))
        })());
    }

    if let Some(w) = &word {
        report.record("return words rebuild the window", (|| {
            let sys = return_words(seg, w)?;
            let occ = sys.occurrences();
            let ok = sys.reconstruct() == seg.letters()[occ[0]..*occ.last().expect("occurrences")];
            Ok((ok, format!("{} return words", sys.returns().len())))
        })());
    }

    if let (Some(jump), Some(w)) = (&jump, &word) {
        match extension_trace(seg, jump, w, run.mode()) {
            Err(e) => report.record("extension trace", Err(e.into())),
            Ok(trace) => {
                report.record("permutation determined by return word", Ok((
                    trace.permutation_table().values().all(|ps| ps.len() == 1),
                    String::new(),
                )));
                report.record("running product matches composed steps", (|| {
                    let mut acc = Permutation::identity(trace.degree());
                    for (k, p) in trace.perms().iter().enumerate() {
                        acc = &acc * p;
                        if acc != trace.cumulative()[k + 1] {
                            return Ok((false, format!("step {k}")));
                        }
                    }
                    Ok((true, String::new()))
                })());
                report.record("cocycle identity on seeded pairs", (|| {
                    let mut rng = ChaCha8Rng::seed_from_u64(run.common.seed);
                    let o = trace.origin() as i64;
                    let len = trace.len() as i64;
                    for _ in 0..COCYCLE_PAIRS {
                        let m = rng.random_range(-o..=len - o);
                        let n = rng.random_range(-(o + m)..=len - o - m);
                        let lhs = cocycle(&trace, m + n)?;
                        let rhs = &cocycle(&trace, m)? * &cocycle(&trace.shifted(m)?, n)?;
                        if lhs != rhs {
                            return Ok((false, format!("m = {m}, n = {n}")));
                        }
                    }
                    Ok((true, format!("{COCYCLE_PAIRS} pairs")))
                })());
                report.record("recurrence proof bound", (|| {
                    let speed_n = (n_max * 3 / 4).max(1);
                    let base = recurrence_profile(seg, n_max)?;
                    let speed = speedup_recurrence_profile(seg, jump, speed_n)?;
                    let scan = trace.gap_scan();
                    let p_max = validate_jump(jump, seg)?.p_max;
                    let rows = proof_bound_check(&speed, base.max_ratio(), scan.ratio, p_max);
                    Ok((rows.iter().all(|r| r.holds()), format!("L = {}, L* = {}", base.max_ratio(), scan.ratio)))
                })());
            }
        }
    }

    if let (Some(graph), Some(jump)) = (run.source.presentation(), &jump) {
        report.record("speedup presentation matches enumeration", (|| {
            let sp = SpeedupPresentation::build(graph, jump)?;
            let n_top = n_max.min(6);
            for n in 1..=n_top {
                if sp.pattern_language(n)? != enumerated_patterns(graph, jump, n)? {
                    return Ok((false, format!("n = {n}")));
                }
            }
            Ok((true, format!("n <= {n_top}")))
        })());
    }

    println!("{} failure(s)", report.failures);
    Ok(report.failures == 0)
}
