//! Browser bindings: return-word decomposition, speedup orbit coloring with
//! transition permutations, and complexity / recurrence profiles.
//!
//! Every export returns a JSON string; failures come back as `{"error": ...}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use subshift::extension::{extension_trace, EntryMode};
use subshift::lr::{recurrence_profile, speedup_recurrence_profile};
use subshift::returnwords::return_words;
use subshift::shiftspaces::{complexity, fixed_point_prefix, mechanical_prefix, Substitution, SturmianSpec};
use subshift::speedup::{orbit_coloring, JumpFunction};
use subshift::words::{OrbitSegment, Word};

const MAX_WINDOW: usize = 200_000;
const SHOWN: usize = 240;

fn segment(shift: &str, window: usize) -> Result<OrbitSegment, String> {
    if window == 0 || window > MAX_WINDOW {
        return Err(format!("window must be between 1 and {MAX_WINDOW}"));
    }
    let seg = match shift {
        "fibonacci" => fixed_point_prefix(&Substitution::fibonacci(), 0, window),
        "thue-morse" => fixed_point_prefix(&Substitution::thue_morse(), 0, window),
        s if s.starts_with("sturmian:") => SturmianSpec::parse(s).and_then(|spec| mechanical_prefix(&spec, window)),
        s => return Err(format!("unknown shift `{s}`")),
    };
    seg.map_err(|e| e.to_string())
}

fn render(result: Result<Value, String>) -> String {
    result.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn returns_json(shift: &str, word: &str, window: usize) -> Result<Value, String> {
    let seg = segment(shift, window)?;
    let w = Word::parse(seg.alphabet(), word).map_err(|e| e.to_string())?;
    let sys = return_words(&seg, &w).map_err(|e| e.to_string())?;
    let shown: Vec<Value> = sys
        .occurrences()
        .windows(2)
        .zip(sys.derived())
        .take_while(|(pair, _)| pair[1] <= SHOWN)
        .map(|(pair, d)| json!({ "start": pair[0], "end": pair[1], "index": d + 1 }))
        .collect();
    Ok(json!({
        "prefix": seg.alphabet().render(&seg.letters()[..seg.len().min(SHOWN)]),
        "returns": sys.returns().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "derived": sys.derived().iter().take(SHOWN).map(|d| d + 1).collect::<Vec<_>>(),
        "blocks": shown,
    }))
}

fn orbits_json(shift: &str, jump: usize, word: &str, window: usize) -> Result<Value, String> {
    let seg = segment(shift, window)?;
    let jump = JumpFunction::constant(jump).map_err(|e| e.to_string())?;
    let coloring = orbit_coloring(&seg, &jump).map_err(|e| e.to_string())?;
    let start = coloring.central().start;
    let end = (start + SHOWN).min(seg.len());
    let mut out = json!({
        "c": coloring.c(),
        "start": start,
        "letters": seg.alphabet().render(&seg.letters()[start..end]),
        "classes": (start..end).map(|i| coloring.label(i).map(|c| c + 1)).collect::<Vec<_>>(),
    });
    if !word.is_empty() {
        let w = Word::parse(seg.alphabet(), word).map_err(|e| e.to_string())?;
        let trace = extension_trace(&seg, &jump, &w, EntryMode::Relaxed).map_err(|e| e.to_string())?;
        let table: Vec<Value> = trace
            .permutation_table()
            .into_iter()
            .map(|(d, ps)| {
                json!({
                    "return": trace.returns()[d].to_string(),
                    "perms": ps.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let group: Vec<String> = trace.generated_group().iter().map(|p| p.to_string()).collect();
        out["table"] = json!(table);
        out["group"] = json!(group);
        out["occurrences"] = json!(trace
            .occurrences()
            .iter()
            .filter(|&&o| (start..end).contains(&o))
            .map(|o| o - start)
            .collect::<Vec<_>>());
    }
    Ok(out)
}

fn profiles_json(shift: &str, jump: usize, n_max: usize, window: usize) -> Result<Value, String> {
    let seg = segment(shift, window)?;
    let counts = complexity(&seg, n_max).map_err(|e| e.to_string())?;
    let base = recurrence_profile(&seg, n_max).map_err(|e| e.to_string())?;
    let ratio = |r: &subshift::Rational| json!([r.numer(), r.denom()]);
    let mut out = json!({
        "complexity": counts.counts(),
        "base": base.rows.iter().map(|r| ratio(&r.ratio)).collect::<Vec<_>>(),
    });
    if jump > 0 {
        let jump = JumpFunction::constant(jump).map_err(|e| e.to_string())?;
        let speed = speedup_recurrence_profile(&seg, &jump, n_max).map_err(|e| e.to_string())?;
        out["speedup"] = json!(speed.rows.iter().map(|r| ratio(&r.ratio)).collect::<Vec<_>>());
    }
    Ok(out)
}

/// Return words of `word` and the derived sequence (1-based indices).
#[wasm_bindgen]
pub fn return_word_view(shift: &str, word: &str, window: usize) -> String {
    render(returns_json(shift, word, window))
}

/// Orbit classes of the constant speedup `jump`; with a non-empty `word`, also
/// the transition permutation observed for each return word.
#[wasm_bindgen]
pub fn orbit_view(shift: &str, jump: usize, word: &str, window: usize) -> String {
    render(orbits_json(shift, jump, word, window))
}

/// Complexity counts and max-gap ratios `[num, den]` for `n = 1..=n_max`;
/// `jump = 0` skips the speedup profile.
#[wasm_bindgen]
pub fn profiles(shift: &str, jump: usize, n_max: usize, window: usize) -> String {
    render(profiles_json(shift, jump, n_max, window))
}
