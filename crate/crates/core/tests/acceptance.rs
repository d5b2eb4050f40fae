//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed; exits non-zero if any fail.

use std::time::Instant;

use gensim_core::algebra::{OpSymbol, Signature};
use gensim_core::corpus::{self, load};
use gensim_core::engine::general::{GeneralEngine, DEFAULT_PROFILE_CAP};
use gensim_core::engine::linear::LinearEngine;
use gensim_core::engine::monolinear::MonolinearEngine;
use gensim_core::engine::unary::{
    build_path_automaton, dfa_equivalent, dfa_union, gen_language, UnaryEngine,
};
use gensim_core::engine::GenEngine;
use gensim_core::morphism::{check_g_functor, check_second_isomorphism, verify_isomorphism_lemma};
use gensim_core::oracle::{bounded_function_verdicts, brute_force_gen_in, PairOracle};
use gensim_core::random;
use gensim_core::similarity::{Certificate, Config, Direction, EngineChoice, Session};
use gensim_core::term::{is_generalization, parse_term, Interpretation, DEFAULT_ENUMERATION_CAP};
use gensim_core::{validate_pair, Algebra, AlgebraBuilder, AlgebraPair, Elem, Fragment, Term};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn triples(pair: &AlgebraPair) -> Vec<(Elem, Elem, Elem)> {
    let mut out = Vec::new();
    for a in pair.left.elements() {
        for b in pair.right.elements() {
            for c in pair.right.elements() {
                if b != c {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

fn chain_order() -> Outcome {
    let a = load(corpus::CHAIN);
    let m = Session::single(&a, Config::default()).matrix().map_err(e)?;
    // a < b < c ≈ d ≈ e
    let rank = [0, 1, 2, 2, 2];
    for i in 0..5 {
        for j in 0..5 {
            ensure(m.leq[i][j].holds == (rank[i] <= rank[j]), || {
                format!("≲ at ({}, {})", m.rows[i], m.cols[j])
            })?;
            ensure(m.approx[i][j].holds == (rank[i] == rank[j]), || {
                format!("≈ at ({}, {})", m.rows[i], m.cols[j])
            })?;
        }
    }
    Ok("25 cells".into())
}

fn chain_languages() -> Outcome {
    let a = load(corpus::CHAIN);
    // Reference languages from path automata of a separate algebra:
    // p -f-> q -f-> r -f-> r, and a loop s -f-> s.
    let refs = AlgebraBuilder::new("Ref", ["p", "q", "r", "s"])
        .unary("f", &[("p", "q"), ("q", "r"), ("r", "r"), ("s", "s")])
        .build()
        .map_err(e)?;
    let el = |n: &str| refs.elem(n).unwrap();
    let eps = build_path_automaton(&refs, el("p"), el("p")).map_err(e)?;
    let one = build_path_automaton(&refs, el("p"), el("q")).map_err(e)?;
    let eps_or_f = dfa_union(&eps, &one).map_err(e)?;
    let star = build_path_automaton(&refs, el("s"), el("s")).map_err(e)?;
    let expected = [&eps, &eps_or_f, &star, &star, &star];
    let states = [2, 3, 1, 1, 1];
    for (x, (want, n)) in a.elements().zip(expected.iter().zip(states)) {
        let d = gen_language(&a, x).map_err(e)?;
        ensure(dfa_equivalent(&d, want).map_err(e)?, || {
            format!("language of {}", a.name_of(x))
        })?;
        ensure(d.state_count() == n, || {
            format!(
                "{} has {} states, expected {n}",
                a.name_of(x),
                d.state_count()
            )
        })?;
    }
    Ok("{ε}, {ε,f}, f*, f*, f*".into())
}

fn successor_order() -> Outcome {
    let n = load(corpus::SUCCESSOR);
    let s = Session::single(&n, Config::default());
    for i in 0..=4u32 {
        for j in 0..=4u32 {
            let (x, y) = (
                n.require(&i.to_string()).map_err(e)?,
                n.require(&j.to_string()).map_err(e)?,
            );
            ensure(s.decide_leq(x, y).map_err(e)?.holds == (i <= j), || {
                format!("≲ at ({i}, {j})")
            })?;
            ensure(s.decide_approx(x, y).map_err(e)?.holds == (i == j), || {
                format!("≈ at ({i}, {j})")
            })?;
        }
    }
    Ok("0..4".into())
}

fn reflexivity_failure() -> Outcome {
    let p = corpus::pair(corpus::SUCCESSOR, corpus::SUCCESSOR_SWAPPED);
    let s = Session::new(p.clone(), Config::default());
    let v = s
        .decide_leq(
            p.left.require("1").map_err(e)?,
            p.right.require("1").map_err(e)?,
        )
        .map_err(e)?;
    ensure(!v.holds, || "1 ≲ 1 holds".into())?;
    let want = parse_term("f(z1)", p.left.signature()).map_err(e)?;
    match v.dominating() {
        Some((d, ev)) if d == "0" && *ev == want => Ok("dominated by 0, evidence f(z1)".into()),
        other => Err(format!("certificate {other:?}")),
    }
}

fn transitivity_failure() -> Outcome {
    let (a, b, c) = (
        load(corpus::TRANS_A),
        load(corpus::TRANS_B),
        load(corpus::TRANS_C),
    );
    let leq = |x: &Algebra, y: &Algebra, m: &str, n: &str| -> Result<bool, String> {
        let s = Session::for_algebras(x, y, Config::default()).map_err(e)?;
        Ok(
            s.decide_leq(x.require(m).map_err(e)?, y.require(n).map_err(e)?)
                .map_err(e)?
                .holds,
        )
    };
    ensure(leq(&a, &b, "a", "b")?, || "a ⋦ b".into())?;
    ensure(leq(&b, &c, "b", "c")?, || "b ⋦ c".into())?;
    ensure(!leq(&a, &c, "a", "c")?, || "a ≲ c".into())?;
    let d = load(corpus::TRANS_COMBINED);
    let r = Session::single(&d, Config::default())
        .check_transitive()
        .map_err(e)?;
    let want = ["a", "b", "c"].map(String::from);
    ensure(r.leq_violations.iter().any(|t| t.elements == want), || {
        "combined algebra has no (a, b, c) violation".into()
    })?;
    Ok(format!(
        "combined algebra: {} ≲ violations",
        r.leq_violations.len()
    ))
}

fn collapse() -> Outcome {
    let f = corpus::collapse_map();
    ensure(f.is_homomorphism(), || "not a homomorphism".into())?;
    ensure(
        !check_g_functor(&f, Config::default()).map_err(e)?.holds,
        || "is a g-functor".into(),
    )?;
    let p = validate_pair(f.target(), f.source()).map_err(e)?;
    let s = Session::new(p.clone(), Config::default());
    let fa = f.apply(f.source().require("a").map_err(e)?);
    let a = p.right.require("a").map_err(e)?;
    let v = s.decide_leq(fa, a).map_err(e)?;
    ensure(!v.holds, || "F(a) ≲ a holds".into())?;
    let Certificate::Dominating {
        direction: Direction::Forward,
        element,
        evidence,
    } = &v.certificate
    else {
        return Err(format!("certificate {:?}", v.certificate));
    };
    // Strict inclusion Gen(c,a) ⊊ Gen(c,element): evidence is in the larger set only.
    let dom = p.right.require(element).map_err(e)?;
    let in_left = is_generalization(evidence, &p.left, fa).map_err(e)?;
    let in_dom = is_generalization(evidence, &p.right, dom).map_err(e)?;
    let in_a = is_generalization(evidence, &p.right, a).map_err(e)?;
    ensure(in_left && in_dom && !in_a, || {
        format!("{evidence} does not separate")
    })?;
    let sub = s.forward().map_err(e)?.gen_subset(fa, a, dom);
    ensure(sub.holds, || {
        "Gen(c,a) is not included in the dominating set".into()
    })?;
    Ok(format!("dominated by {element}, evidence {evidence}"))
}

fn isomorphisms() -> Outcome {
    let mut rng = random::rng(0x1507);
    let cfg = Config::default();
    let mut passed = 0;
    for _ in 0..100 {
        let a = random::random_monounary(&mut rng, 5);
        let (_, f) = random::isomorphic_copy(&mut rng, &a, "C", "y");
        if verify_isomorphism_lemma(&f, cfg).map_err(e)?.holds()
            && check_g_functor(&f, cfg).map_err(e)?.holds
        {
            passed += 1;
        }
    }
    ensure(passed == 100, || {
        format!("lemma and g-functor: {passed}/100")
    })?;
    let mut sit = 0;
    for _ in 0..50 {
        let a = random::random_monounary(&mut rng, 5);
        let b = random::random_monounary(&mut rng, 5);
        let b = b
            .renamed(
                "B",
                &(0..b.size()).map(|i| format!("w{i}")).collect::<Vec<_>>(),
            )
            .map_err(e)?;
        let (_, f) = random::isomorphic_copy(&mut rng, &a, "C", "y");
        let (_, g) = random::isomorphic_copy(&mut rng, &b, "D", "v");
        let r = check_second_isomorphism(&f, &g, cfg).map_err(e)?;
        if r.holds() && r.overlap_transported {
            sit += 1;
        }
    }
    ensure(sit == 50, || format!("second isomorphism: {sit}/50"))?;
    Ok("100/100 lemma and g-functor, 50/50 second isomorphism".into())
}

fn powerset() -> Outcome {
    let p = load(corpus::POWERSET);
    let m = Session::single(&p, Config::with_engine(EngineChoice::Monolinear))
        .matrix()
        .map_err(e)?;
    let masks: Vec<u32> = p
        .carrier()
        .iter()
        .map(|n| corpus::powerset_mask(n))
        .collect();
    let full = 0b111;
    let mut cells = 0;
    for (i, &x) in masks.iter().enumerate() {
        for (j, &y) in masks.iter().enumerate() {
            cells += 1;
            let at = || format!("({}, {})", m.rows[i], m.cols[j]);
            if x != full {
                ensure(m.leq[i][j].holds == (x & !y == 0), || {
                    format!("≲ at {}", at())
                })?;
                if y != full {
                    ensure(m.approx[i][j].holds == (x == y), || {
                        format!("≈ at {}", at())
                    })?;
                }
            } else if y != full && y.count_ones() == 2 {
                ensure(m.leq[i][j].holds, || format!("U ⋦ {}", m.cols[j]))?;
            }
        }
    }
    Ok(format!("{cells} pairs"))
}

/// Multiplication on positive integers, undefined above 144.
struct BoundedProduct;

impl Interpretation for BoundedProduct {
    type Value = u64;

    fn apply(&self, op: &str, args: &[u64]) -> Option<u64> {
        match (op, args) {
            ("m", [x, y]) => Some(x * y).filter(|&p| p <= 144),
            _ => None,
        }
    }

    fn constant(&self, name: &str) -> Option<u64> {
        name.parse().ok()
    }
}

fn divisibility() -> Outcome {
    let sig = Signature {
        operations: vec![OpSymbol {
            name: "m".into(),
            arity: 2,
        }],
        constants: (1..=12).map(|k: u64| k.to_string()).collect(),
    };
    let domain: Vec<u64> = (1..=12).collect();
    for a in 1..=12u64 {
        let gen = brute_force_gen_in(
            &BoundedProduct,
            &sig,
            &domain,
            &a,
            2,
            1,
            Fragment::Monolinear,
            DEFAULT_ENUMERATION_CAP,
        )
        .map_err(e)?;
        for k in 1..=12u64 {
            for t in [format!("m({k}, z1)"), format!("m(z1, {k})")] {
                let t = parse_term(&t, &sig).map_err(e)?;
                ensure(gen.contains(&t) == (a % k == 0), || format!("{t} at {a}"))?;
            }
        }
    }
    Ok("144 (k, a) pairs, both argument orders".into())
}

fn agree(engines: &[(&str, &dyn GenEngine)], pair: &AlgebraPair) -> Result<(), String> {
    for (a, b, c) in triples(pair) {
        let (base_name, base) = engines[0];
        let want = base.gen_subset(a, b, c).holds;
        for (name, eng) in &engines[1..] {
            ensure(eng.gen_subset(a, b, c).holds == want, || {
                format!(
                    "{name} and {base_name} disagree on Gen({},{}) ⊆ Gen({},{}) in ({}, {})",
                    pair.left.name_of(a),
                    pair.right.name_of(b),
                    pair.left.name_of(a),
                    pair.right.name_of(c),
                    pair.left.name(),
                    pair.right.name()
                )
            })?;
        }
    }
    Ok(())
}

fn coherence() -> Outcome {
    let mut rng = random::rng(0xC0DE);
    let mut queries = 0;
    // Disagreements where the engine's separator is a real one deeper than the bound.
    let mut deep: Vec<String> = Vec::new();
    for round in 0..200 {
        let pair = random::random_pair(&mut rng, 3);
        let linear = LinearEngine::new(&pair).map_err(e)?;
        let oracle =
            PairOracle::new(&pair, 4, 16, Fragment::Linear, DEFAULT_ENUMERATION_CAP).map_err(e)?;
        for (a, b, c) in triples(&pair) {
            queries += 1;
            let got = linear.gen_subset(a, b, c);
            if got.holds == oracle.gen_subset(a, b, c).holds {
                continue;
            }
            let query = format!(
                "round {round}: Gen({},{}) ⊆ Gen({},{})",
                pair.left.name_of(a),
                pair.right.name_of(b),
                pair.left.name_of(a),
                pair.right.name_of(c)
            );
            let t = got
                .separator
                .ok_or_else(|| format!("{query}: linear holds, brute force fails"))?;
            let real = is_generalization(&t, &pair.left, a).map_err(e)?
                && is_generalization(&t, &pair.right, b).map_err(e)?
                && !is_generalization(&t, &pair.right, c).map_err(e)?;
            ensure(real && t.depth() > 4, || {
                format!("{query}: separator {t} rejected")
            })?;
            deep.push(format!("{query} by {t} (depth {})", t.depth()));
        }
    }
    ensure(deep.is_empty(), || {
        format!(
            "{} of {queries} random queries disagree only because the separating term is deeper than 4: {}",
            deep.len(),
            deep.join("; ")
        )
    })?;
    let unary: Vec<(&str, &str)> = vec![
        (corpus::CHAIN, corpus::CHAIN),
        (corpus::CHAIN, corpus::CHAIN_RENAMED),
        (corpus::SUCCESSOR, corpus::SUCCESSOR),
        (corpus::SUCCESSOR, corpus::SUCCESSOR_SWAPPED),
        (corpus::SUCCESSOR_SWAPPED, corpus::SUCCESSOR),
        (corpus::TRANS_A, corpus::TRANS_B),
        (corpus::TRANS_B, corpus::TRANS_C),
        (corpus::TRANS_A, corpus::TRANS_C),
        (corpus::TRANS_C, corpus::TRANS_A),
        (corpus::TRANS_COMBINED, corpus::TRANS_COMBINED),
        (corpus::COLLAPSE_SOURCE, corpus::COLLAPSE_TARGET),
        (corpus::COLLAPSE_TARGET, corpus::COLLAPSE_SOURCE),
        (corpus::SWAP, corpus::SWAP),
    ];
    for (l, r) in unary {
        let pair = corpus::pair(l, r);
        let u = UnaryEngine::new(&pair).map_err(e)?;
        let lin = LinearEngine::new(&pair).map_err(e)?;
        let mono = MonolinearEngine::new(&pair).map_err(e)?;
        let gen = GeneralEngine::new(&pair, 1, DEFAULT_PROFILE_CAP).map_err(e)?;
        let oracle =
            PairOracle::new(&pair, 8, 1, Fragment::General, DEFAULT_ENUMERATION_CAP).map_err(e)?;
        agree(
            &[
                ("unary", &u),
                ("linear", &lin),
                ("monolinear", &mono),
                ("general", &gen),
                ("brute force", &oracle),
            ],
            &pair,
        )?;
    }
    Ok(format!("{queries} random queries, 13 fixture pairs"))
}

fn variable_collapse() -> Outcome {
    let mut rng = random::rng(0xB001);
    for round in 0..50 {
        let pair = random::random_boolean_pair(&mut rng);
        let qs = triples(&pair);
        let engine = GeneralEngine::new(&pair, 4, DEFAULT_PROFILE_CAP).map_err(e)?;
        let truth = bounded_function_verdicts(&pair, 5, 4, &qs).map_err(e)?;
        for (q, want) in qs.iter().zip(truth) {
            ensure(engine.gen_subset(q.0, q.1, q.2).holds == want, || {
                format!("round {round}: query {q:?}")
            })?;
        }
    }
    Ok("50 pairs".into())
}

fn characteristic_set() -> Outcome {
    let p = corpus::pair(corpus::TRANS_B, corpus::TRANS_C);
    let s = Session::new(p.clone(), Config::default());
    let cs = s
        .find_characteristic_set(
            p.left.require("b").map_err(e)?,
            p.right.require("c").map_err(e)?,
            3,
        )
        .map_err(e)?;
    let want: Vec<Term> = vec![parse_term("g(f(z1))", p.left.signature()).map_err(e)?];
    let shown = |ts: &Option<Vec<Term>>| match ts {
        Some(ts) => format!(
            "{{ {} }}",
            ts.iter()
                .map(Term::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ),
        None => "none".into(),
    };
    ensure(cs.terms.as_ref() == Some(&want), || {
        format!("got {}, expected {{ g(f(z1)) }}", shown(&cs.terms))
    })?;
    Ok(shown(&cs.terms))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("chain order", chain_order),
        ("chain generalization languages", chain_languages),
        ("truncated successor order", successor_order),
        ("reflexivity counterexample", reflexivity_failure),
        ("transitivity counterexample", transitivity_failure),
        ("collapsing homomorphism", collapse),
        ("isomorphism invariance", isomorphisms),
        ("power-set monolinear law", powerset),
        ("divisibility oracle", divisibility),
        ("cross-engine coherence", coherence),
        ("variable collapse", variable_collapse),
        ("characteristic set", characteristic_set),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (status, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{status} {:>2} {name}: {detail} ({:.2?})",
            i + 1,
            start.elapsed()
        );
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
