//! Bundled fixture algebras and the checks run against them.

use crate::algebra::{parse_algebra, validate_pair, Algebra, AlgebraPair, Elem};
use crate::engine::unary::{build_path_automaton, dfa_regex, gen_language, GenDfa};
use crate::morphism::{check_g_functor, parse_map, verify_isomorphism_lemma, ElementMap};
use crate::similarity::{
    check_transitive_triple, Certificate, Config, Direction, EngineChoice, Session,
};
use crate::term::{parse_term, Term};

pub const CHAIN: &str = include_str!("../fixtures/chain.alg");
pub const CHAIN_RENAMED: &str = include_str!("../fixtures/chain_renamed.alg");
pub const CHAIN_RENAMING: &str = include_str!("../fixtures/chain_renaming.map");
pub const SUCCESSOR: &str = include_str!("../fixtures/successor.alg");
pub const SUCCESSOR_SWAPPED: &str = include_str!("../fixtures/successor_swapped.alg");
pub const TRANS_A: &str = include_str!("../fixtures/trans_a.alg");
pub const TRANS_B: &str = include_str!("../fixtures/trans_b.alg");
pub const TRANS_C: &str = include_str!("../fixtures/trans_c.alg");
pub const TRANS_COMBINED: &str = include_str!("../fixtures/trans_combined.alg");
pub const COLLAPSE_SOURCE: &str = include_str!("../fixtures/collapse_source.alg");
pub const COLLAPSE_TARGET: &str = include_str!("../fixtures/collapse_target.alg");
pub const COLLAPSE: &str = include_str!("../fixtures/collapse.map");
pub const SWAP: &str = include_str!("../fixtures/swap.alg");
pub const POWERSET: &str = include_str!("../fixtures/powerset3.alg");

/// Every bundled algebra as `(file stem, text)`.
pub const ALGEBRAS: &[(&str, &str)] = &[
    ("chain", CHAIN),
    ("chain_renamed", CHAIN_RENAMED),
    ("successor", SUCCESSOR),
    ("successor_swapped", SUCCESSOR_SWAPPED),
    ("trans_a", TRANS_A),
    ("trans_b", TRANS_B),
    ("trans_c", TRANS_C),
    ("trans_combined", TRANS_COMBINED),
    ("collapse_source", COLLAPSE_SOURCE),
    ("collapse_target", COLLAPSE_TARGET),
    ("swap", SWAP),
    ("powerset3", POWERSET),
];

/// Parses a bundled fixture; panics on a malformed one.
pub fn load(text: &str) -> Algebra {
    parse_algebra(text).expect("bundled fixture parses")
}

pub fn by_stem(stem: &str) -> Option<Algebra> {
    ALGEBRAS
        .iter()
        .find(|(s, _)| *s == stem)
        .map(|(_, t)| load(t))
}

pub fn pair(left: &str, right: &str) -> AlgebraPair {
    validate_pair(&load(left), &load(right)).expect("bundled fixtures share a signature")
}

pub fn collapse_map() -> ElementMap {
    parse_map(COLLAPSE, &load(COLLAPSE_SOURCE), &load(COLLAPSE_TARGET)).expect("bundled map parses")
}

pub fn chain_renaming() -> ElementMap {
    parse_map(CHAIN_RENAMING, &load(CHAIN), &load(CHAIN_RENAMED)).expect("bundled map parses")
}

/// Subset index of a power-set element name such as `s13` or `e`.
pub fn powerset_mask(name: &str) -> u32 {
    name.strip_prefix('s')
        .map(|d| d.chars().map(|c| 1 << (c.to_digit(10).unwrap() - 1)).sum())
        .unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleCheck {
    pub location: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl ExampleCheck {
    pub fn line(&self) -> String {
        format!(
            "{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.location,
            self.detail
        )
    }
}

fn check(location: &'static str, result: Result<String, String>) -> ExampleCheck {
    match result {
        Ok(detail) => ExampleCheck {
            location,
            passed: true,
            detail,
        },
        Err(detail) => ExampleCheck {
            location,
            passed: false,
            detail,
        },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn words(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..alphabet).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Compares a language with a predicate on all words up to length 8.
fn language_matches(d: &GenDfa, expect: impl Fn(&[usize]) -> bool) -> Result<(), String> {
    for w in words(d.alphabet().len(), 8) {
        if d.accepts(&w) != expect(&w) {
            return Err(format!("disagrees on word of length {}", w.len()));
        }
    }
    Ok(())
}

fn chain_order() -> Result<String, String> {
    let a = load(CHAIN);
    let m = Session::single(&a, Config::default())
        .matrix()
        .map_err(|e| e.to_string())?;
    let rank = |i: usize| i.min(2);
    for i in 0..5 {
        for j in 0..5 {
            ensure(m.leq[i][j].holds == (rank(i) <= rank(j)), || {
                format!("≲ wrong at ({}, {})", m.rows[i], m.cols[j])
            })?;
            ensure(m.approx[i][j].holds == (rank(i) == rank(j)), || {
                format!("≈ wrong at ({}, {})", m.rows[i], m.cols[j])
            })?;
        }
    }
    Ok("a < b < c ≈ d ≈ e over all 25 cells".into())
}

fn chain_languages() -> Result<String, String> {
    let a = load(CHAIN);
    let expected: [fn(usize) -> bool; 5] = [|n| n == 0, |n| n <= 1, |_| true, |_| true, |_| true];
    let mut shown = Vec::new();
    for (e, want) in a.elements().zip(expected) {
        let d = gen_language(&a, e).map_err(|x| x.to_string())?;
        language_matches(&d, |w| want(w.len())).map_err(|m| format!("{}: {m}", a.name_of(e)))?;
        shown.push(dfa_regex(&d).to_string());
    }
    Ok(shown.join(", "))
}

fn successor_order() -> Result<String, String> {
    let n = load(SUCCESSOR);
    let s = Session::single(&n, Config::default());
    for i in 0..=4u32 {
        for j in 0..=4u32 {
            let leq = s.decide_leq(Elem(i), Elem(j)).map_err(|e| e.to_string())?;
            let approx = s
                .decide_approx(Elem(i), Elem(j))
                .map_err(|e| e.to_string())?;
            ensure(leq.holds == (i <= j), || format!("≲ wrong at ({i}, {j})"))?;
            ensure(approx.holds == (i == j), || {
                format!("≈ wrong at ({i}, {j})")
            })?;
        }
    }
    Ok("≲ is ≤ and ≈ is = on 0..4".into())
}

fn reflexivity_failure() -> Result<String, String> {
    let p = pair(SUCCESSOR, SUCCESSOR_SWAPPED);
    let s = Session::new(p.clone(), Config::default());
    let one_l = p.left.require("1").map_err(|e| e.to_string())?;
    let one_r = p.right.require("1").map_err(|e| e.to_string())?;
    let v = s.decide_leq(one_l, one_r).map_err(|e| e.to_string())?;
    ensure(!v.holds, || "1 ≲ 1 unexpectedly holds".into())?;
    let want = parse_term("f(z1)", p.left.signature()).map_err(|e| e.to_string())?;
    match v.dominating() {
        Some((el, ev)) if el == "0" && *ev == want => Ok("1 ⋦ 1, dominated by 0 via f(z1)".into()),
        other => Err(format!("unexpected certificate {other:?}")),
    }
}

fn transitivity_failure() -> Result<String, String> {
    let (a, b, c) = (load(TRANS_A), load(TRANS_B), load(TRANS_C));
    let r = check_transitive_triple(&a, &b, &c, Config::default()).map_err(|e| e.to_string())?;
    let hit = |v: &[crate::similarity::TripleViolation]| {
        v.iter()
            .any(|t| t.elements == ["a", "b", "c"].map(String::from))
    };
    ensure(hit(&r.leq_violations), || {
        "no ≲ violation at (a, b, c) across the three pairs".into()
    })?;
    let d = load(TRANS_COMBINED);
    let rd = Session::single(&d, Config::default())
        .check_transitive()
        .map_err(|e| e.to_string())?;
    ensure(hit(&rd.leq_violations), || {
        "no ≲ violation at (a, b, c) in the combined algebra".into()
    })?;
    Ok(format!(
        "a ≲ b, b ≲ c, a ⋦ c; combined algebra has {} ≲ and {} ≈ violations",
        rd.leq_violations.len(),
        rd.approx_violations.len()
    ))
}

fn collapse_map_check() -> Result<String, String> {
    let f = collapse_map();
    ensure(f.is_homomorphism(), || "F is not a homomorphism".into())?;
    let g = check_g_functor(&f, Config::default()).map_err(|e| e.to_string())?;
    ensure(!g.holds, || "F is unexpectedly a g-functor".into())?;
    let p = validate_pair(f.target(), f.source()).map_err(|e| e.to_string())?;
    let s = Session::new(p.clone(), Config::default());
    let fa = f.apply(f.source().require("a").map_err(|e| e.to_string())?);
    let a = p.right.require("a").map_err(|e| e.to_string())?;
    let v = s.decide_leq(fa, a).map_err(|e| e.to_string())?;
    let want = parse_term("f(z1)", p.left.signature()).map_err(|e| e.to_string())?;
    match (&v.holds, &v.certificate) {
        (
            false,
            Certificate::Dominating {
                direction: Direction::Forward,
                element,
                evidence,
            },
        ) if element == "b" && *evidence == want => {
            Ok("homomorphism, not a g-functor; F(a) ⋦ a dominated by b via f(z1)".into())
        }
        _ => Err(format!("unexpected verdict {v:?}")),
    }
}

fn swap_automata() -> Result<String, String> {
    let s = load(SWAP);
    let (a, b) = (Elem(0), Elem(1));
    let even_f = |w: &[usize]| w.iter().filter(|&&c| c == 0).count() % 2 == 0;
    let aa = build_path_automaton(&s, a, a).map_err(|e| e.to_string())?;
    let ba = build_path_automaton(&s, b, a).map_err(|e| e.to_string())?;
    language_matches(&aa, even_f).map_err(|m| format!("a to a: {m}"))?;
    language_matches(&ba, |w| !even_f(w)).map_err(|m| format!("b to a: {m}"))?;
    let ga = gen_language(&s, a).map_err(|e| e.to_string())?;
    ensure(ga.is_universal(), || "Gen(a) is not every word".into())?;
    Ok("even and odd f-counts; their union is every word".into())
}

fn powerset_law() -> Result<String, String> {
    let p = load(POWERSET);
    let m = Session::single(&p, Config::with_engine(EngineChoice::Monolinear))
        .matrix()
        .map_err(|e| e.to_string())?;
    let full = 0b111;
    let masks: Vec<u32> = p.carrier().iter().map(|n| powerset_mask(n)).collect();
    let maximal = |x: u32| x != full && x.count_ones() == 2;
    for (i, &x) in masks.iter().enumerate() {
        for (j, &y) in masks.iter().enumerate() {
            let cell = || format!("({}, {})", m.rows[i], m.cols[j]);
            if x != full {
                ensure(m.leq[i][j].holds == (x & !y == 0), || {
                    format!("≲ wrong at {}", cell())
                })?;
                if y != full {
                    ensure(m.approx[i][j].holds == (x == y), || {
                        format!("≈ wrong at {}", cell())
                    })?;
                }
            } else if maximal(y) {
                ensure(m.leq[i][j].holds, || format!("U ⋦ maximal {}", m.cols[j]))?;
            }
        }
    }
    Ok("A ≲ B iff A ⊆ B, ≈ iff equal, U below every maximal proper subset".into())
}

fn renaming_lemma() -> Result<String, String> {
    let f = chain_renaming();
    let r = verify_isomorphism_lemma(&f, Config::default()).map_err(|e| e.to_string())?;
    ensure(r.holds(), || {
        "a generalization set changed under renaming".into()
    })?;
    let g = check_g_functor(&f, Config::default()).map_err(|e| e.to_string())?;
    ensure(g.holds, || "renaming is not a g-functor".into())?;
    Ok(format!(
        "Gen preserved for all {} elements ({})",
        r.results.len(),
        r.method
    ))
}

fn characteristic_set() -> Result<String, String> {
    let p = pair(TRANS_B, TRANS_C);
    let s = Session::new(p.clone(), Config::default());
    let (b, c) = (
        p.left.require("b").map_err(|e| e.to_string())?,
        p.right.require("c").map_err(|e| e.to_string())?,
    );
    let cs = s
        .find_characteristic_set(b, c, 3)
        .map_err(|e| e.to_string())?;
    match cs.terms {
        Some(ts) if ts.len() == 1 => Ok(format!(
            "{{ {} }}",
            ts.iter()
                .map(Term::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        )),
        other => Err(format!("expected a singleton, got {other:?}")),
    }
}

/// Runs every fixture check, in a fixed order.
pub fn run_examples() -> Vec<ExampleCheck> {
    vec![
        check("chain order", chain_order()),
        check("chain generalization languages", chain_languages()),
        check("truncated successor order", successor_order()),
        check("reflexivity counterexample", reflexivity_failure()),
        check("transitivity counterexample", transitivity_failure()),
        check("collapsing homomorphism", collapse_map_check()),
        check("renaming isomorphism", renaming_lemma()),
        check("swap algebra automata", swap_automata()),
        check("power-set monolinear law", powerset_law()),
        check("characteristic set", characteristic_set()),
    ]
}
