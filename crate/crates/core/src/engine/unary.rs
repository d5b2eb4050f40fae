//! Generalization languages of finite unary algebras as regular languages.
//!
//! A term `f1(f2(...fk(z)...))` is a word over the operation symbols. The
//! automata here read words in application order (innermost symbol first),
//! so an algebra's transition graph is literally its automaton; terms are
//! spelled by reversing the word.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rustc_hash::FxHashMap;

use super::linear::reachable_profiles;
use super::{check_elem, EngineError, Exactness, GenEngine, RangeProfile, SubsetVerdict};
use crate::algebra::{Algebra, AlgebraPair, Elem, Signature};
use crate::elemset::ElemSet;
use crate::term::Term;

mod regex;

pub use regex::Regex;

/// Complete deterministic automaton over a set of unary operation symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenDfa {
    alphabet: Vec<String>,
    /// `delta[state][symbol]`.
    delta: Vec<Vec<u32>>,
    start: u32,
    finals: Vec<bool>,
    /// Display names for the states, when they stand for elements.
    names: Option<Vec<String>>,
}

impl GenDfa {
    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn start(&self) -> usize {
        self.start as usize
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals[s]
    }

    pub fn next(&self, s: usize, symbol: usize) -> usize {
        self.delta[s][symbol] as usize
    }

    pub fn state_name(&self, s: usize) -> String {
        match &self.names {
            Some(n) => n[s].clone(),
            None => format!("q{s}"),
        }
    }

    /// Runs a word given in application order.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut s = self.start();
        for &c in word {
            s = self.next(s, c);
        }
        self.finals[s]
    }

    /// Whether a term `w(z)` over a single variable is in the language.
    /// `None` if the term is not of that shape over this alphabet.
    pub fn accepts_term(&self, term: &Term) -> Option<bool> {
        let (word, leaf) = term_to_word(term, &self.alphabet)?;
        matches!(leaf, Term::Var(_)).then(|| self.accepts(&word))
    }

    pub fn is_empty(&self) -> bool {
        !reachable(self)
            .iter()
            .zip(&self.finals)
            .any(|(r, f)| *r && *f)
    }

    pub fn is_universal(&self) -> bool {
        reachable(self)
            .iter()
            .zip(&self.finals)
            .all(|(r, f)| !*r || *f)
    }

    /// The same language with states renamed `q0, q1, ...`.
    fn anonymous(mut self) -> Self {
        self.names = None;
        self
    }
}

fn reachable(d: &GenDfa) -> Vec<bool> {
    let mut seen = vec![false; d.state_count()];
    let mut queue = VecDeque::from([d.start()]);
    seen[d.start()] = true;
    while let Some(s) = queue.pop_front() {
        for &t in &d.delta[s] {
            if !std::mem::replace(&mut seen[t as usize], true) {
                queue.push_back(t as usize);
            }
        }
    }
    seen
}

fn unary_alphabet(algebra: &Algebra) -> Result<Vec<String>, EngineError> {
    let sig = algebra.signature();
    if let Some(op) = sig.operations.iter().find(|o| o.arity != 1) {
        return Err(EngineError::NotUnary(op.name.clone()));
    }
    Ok(sig.operations.iter().map(|o| o.name.clone()).collect())
}

/// The algebra's transition graph started at `from`, accepting at `to`.
pub fn build_path_automaton(
    algebra: &Algebra,
    from: Elem,
    to: Elem,
) -> Result<GenDfa, EngineError> {
    let alphabet = unary_alphabet(algebra)?;
    let delta = algebra
        .elements()
        .map(|x| {
            (0..alphabet.len())
                .map(|op| algebra.apply1(op, x).0)
                .collect()
        })
        .collect();
    Ok(GenDfa {
        alphabet,
        delta,
        start: from.0,
        finals: algebra.elements().map(|x| x == to).collect(),
        names: Some(algebra.carrier().to_vec()),
    })
}

/// Words `w` such that `w(z)` generalizes `a`: the union over all start
/// elements of the path automata into `a`, determinized and minimized.
pub fn gen_language(algebra: &Algebra, a: Elem) -> Result<GenDfa, EngineError> {
    let alphabet = unary_alphabet(algebra)?;
    let n = algebra.size();
    let mut ids: FxHashMap<ElemSet, u32> = FxHashMap::default();
    let mut sets = vec![ElemSet::full(n)];
    ids.insert(sets[0].clone(), 0);
    let mut delta: Vec<Vec<u32>> = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        let mut row = Vec::with_capacity(alphabet.len());
        for op in 0..alphabet.len() {
            let img = ElemSet::from_elems(n, sets[i].iter().map(|x| algebra.apply1(op, x)));
            let next = sets.len() as u32;
            let id = *ids.entry(img.clone()).or_insert_with(|| {
                sets.push(img);
                next
            });
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let finals = sets.iter().map(|s| s.contains(a)).collect();
    Ok(dfa_minimize(&GenDfa {
        alphabet,
        delta,
        start: 0,
        finals,
        names: None,
    }))
}

/// Ground words over constant `c`: `w` with `w(c)` equal to `a`.
pub fn ground_language(algebra: &Algebra, constant: usize, a: Elem) -> Result<GenDfa, EngineError> {
    let from = algebra.constant_elems()[constant];
    Ok(dfa_minimize(&build_path_automaton(algebra, from, a)?))
}

fn same_alphabet(x: &GenDfa, y: &GenDfa) -> Result<(), EngineError> {
    if x.alphabet != y.alphabet {
        return Err(EngineError::AlphabetMismatch);
    }
    Ok(())
}

/// Reachable part of the product automaton.
fn product(x: &GenDfa, y: &GenDfa, accept: impl Fn(bool, bool) -> bool) -> GenDfa {
    let k = x.alphabet.len();
    let mut ids: FxHashMap<(u32, u32), u32> = FxHashMap::default();
    let mut states = vec![(x.start, y.start)];
    ids.insert(states[0], 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (p, q) = states[i];
        let mut row = Vec::with_capacity(k);
        for c in 0..k {
            let t = (x.delta[p as usize][c], y.delta[q as usize][c]);
            let next = states.len() as u32;
            let id = *ids.entry(t).or_insert_with(|| {
                states.push(t);
                next
            });
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let finals = states
        .iter()
        .map(|&(p, q)| accept(x.finals[p as usize], y.finals[q as usize]))
        .collect();
    GenDfa {
        alphabet: x.alphabet.clone(),
        delta,
        start: 0,
        finals,
        names: None,
    }
}

pub fn dfa_intersect(x: &GenDfa, y: &GenDfa) -> Result<GenDfa, EngineError> {
    same_alphabet(x, y)?;
    Ok(dfa_minimize(&product(x, y, |a, b| a && b)))
}

pub fn dfa_union(x: &GenDfa, y: &GenDfa) -> Result<GenDfa, EngineError> {
    same_alphabet(x, y)?;
    Ok(dfa_minimize(&product(x, y, |a, b| a || b)))
}

pub fn dfa_complement(x: &GenDfa) -> GenDfa {
    let mut d = x.clone().anonymous();
    for f in &mut d.finals {
        *f = !*f;
    }
    d
}

/// Shortest word in `L(x) \ L(y)`, in application order. Among the shortest,
/// the one whose term spelling (outermost symbol first) is lexicographically
/// least in alphabet order.
pub fn shortest_difference(x: &GenDfa, y: &GenDfa) -> Result<Option<Vec<usize>>, EngineError> {
    same_alphabet(x, y)?;
    let p = product(x, y, |a, b| a && !b);
    let n = p.state_count();
    let mut layers = vec![vec![false; n]];
    layers[0][p.start()] = true;
    let mut len = None;
    for step in 0..=n {
        if layers[step].iter().zip(&p.finals).any(|(r, f)| *r && *f) {
            len = Some(step);
            break;
        }
        let mut next = vec![false; n];
        for (s, _) in layers[step].iter().enumerate().filter(|(_, r)| **r) {
            for &t in &p.delta[s] {
                next[t as usize] = true;
            }
        }
        layers.push(next);
    }
    let Some(len) = len else { return Ok(None) };
    let mut targets: Vec<bool> = layers[len]
        .iter()
        .zip(&p.finals)
        .map(|(r, f)| *r && *f)
        .collect();
    let mut spelled = Vec::with_capacity(len);
    for step in (0..len).rev() {
        let (c, prev) = (0..p.alphabet.len())
            .find_map(|c| {
                let prev: Vec<bool> = (0..n)
                    .map(|s| layers[step][s] && targets[p.delta[s][c] as usize])
                    .collect();
                prev.iter().any(|&b| b).then_some((c, prev))
            })
            .expect("layer predecessor exists");
        spelled.push(c);
        targets = prev;
    }
    spelled.reverse();
    Ok(Some(spelled))
}

/// Decides `L(x) ⊆ L(y)`; a failing verdict carries the shortest separating
/// word as a term in `z1`.
pub fn dfa_subset(x: &GenDfa, y: &GenDfa) -> Result<SubsetVerdict, EngineError> {
    Ok(match shortest_difference(x, y)? {
        None => SubsetVerdict::holds(),
        Some(w) => SubsetVerdict::fails(word_to_term(&w, &x.alphabet, Term::var(1))),
    })
}

pub fn dfa_equivalent(x: &GenDfa, y: &GenDfa) -> Result<bool, EngineError> {
    Ok(dfa_subset(x, y)?.holds && dfa_subset(y, x)?.holds)
}

/// Minimal equivalent automaton, states numbered in breadth-first order
/// from the start state.
pub fn dfa_minimize(x: &GenDfa) -> GenDfa {
    let live = reachable(x);
    let states: Vec<usize> = (0..x.state_count()).filter(|&s| live[s]).collect();
    let k = x.alphabet.len();
    let mut class = vec![0u32; x.state_count()];
    for &s in &states {
        class[s] = x.finals[s] as u32;
    }
    let mut count = 0;
    loop {
        let mut ids: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
        let mut next = vec![0u32; x.state_count()];
        for &s in &states {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[s]);
            sig.extend(x.delta[s].iter().map(|&t| class[t as usize]));
            let fresh = ids.len() as u32;
            next[s] = *ids.entry(sig).or_insert(fresh);
        }
        let new_count = ids.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    let mut order: Vec<Option<u32>> = vec![None; count];
    let mut reps = Vec::new();
    let mut queue = VecDeque::from([x.start()]);
    order[class[x.start()] as usize] = Some(0);
    reps.push(x.start());
    while let Some(s) = queue.pop_front() {
        for &t in &x.delta[s] {
            let c = class[t as usize] as usize;
            if order[c].is_none() {
                order[c] = Some(reps.len() as u32);
                reps.push(t as usize);
                queue.push_back(t as usize);
            }
        }
    }
    let renum = |s: u32| order[class[s as usize] as usize].expect("reachable class");
    GenDfa {
        alphabet: x.alphabet.clone(),
        delta: reps
            .iter()
            .map(|&s| x.delta[s].iter().map(|&t| renum(t)).collect())
            .collect(),
        start: 0,
        finals: reps.iter().map(|&s| x.finals[s]).collect(),
        names: None,
    }
}

fn dot_id(name: &str) -> String {
    let plain = name
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if plain {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// Graphviz rendering, one edge per transition.
pub fn export_dot(x: &GenDfa) -> String {
    let mut out = String::from("digraph gen {\n  rankdir=LR;\n  __start [shape=point];\n");
    let ids: Vec<String> = (0..x.state_count())
        .map(|s| dot_id(&x.state_name(s)))
        .collect();
    for (s, id) in ids.iter().enumerate() {
        let shape = if x.finals[s] {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(out, "  {id} [shape={shape}];");
    }
    let _ = writeln!(out, "  __start -> {};", ids[x.start()]);
    for (s, row) in x.delta.iter().enumerate() {
        for (c, &t) in row.iter().enumerate() {
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                ids[s],
                ids[t as usize],
                dot_label(&x.alphabet[c])
            );
        }
    }
    out.push_str("}\n");
    out
}

fn dot_label(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Regular expression for the language, spelled outermost symbol first.
pub fn dfa_regex(x: &GenDfa) -> Regex {
    regex::eliminate(x).reversed()
}

/// Builds `w(inner)` from a word in application order.
pub fn word_to_term(word: &[usize], alphabet: &[String], inner: Term) -> Term {
    word.iter()
        .fold(inner, |t, &c| Term::App(alphabet[c].clone(), vec![t]))
}

/// Splits a unary term into its word (application order) and innermost leaf.
pub fn term_to_word(term: &Term, alphabet: &[String]) -> Option<(Vec<usize>, Term)> {
    let mut word = Vec::new();
    let mut t = term;
    while let Term::App(op, args) = t {
        if args.len() != 1 {
            return None;
        }
        word.push(alphabet.iter().position(|s| s == op)?);
        t = &args[0];
    }
    word.reverse();
    Some((word, t.clone()))
}

/// Generalization language of one element: variable words plus one ground
/// language per constant.
#[derive(Clone, Debug)]
pub struct UnaryLanguage {
    pub var: GenDfa,
    pub ground: Vec<GenDfa>,
}

impl UnaryLanguage {
    pub fn of(algebra: &Algebra, a: Elem) -> Result<Self, EngineError> {
        let var = gen_language(algebra, a)?;
        let ground = (0..algebra.signature().constants.len())
            .map(|c| ground_language(algebra, c, a))
            .collect::<Result<_, _>>()?;
        Ok(UnaryLanguage { var, ground })
    }

    pub fn intersect(&self, other: &UnaryLanguage) -> Result<Self, EngineError> {
        Ok(UnaryLanguage {
            var: dfa_intersect(&self.var, &other.var)?,
            ground: self
                .ground
                .iter()
                .zip(&other.ground)
                .map(|(x, y)| dfa_intersect(x, y))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn contains(&self, term: &Term) -> bool {
        let Some((word, leaf)) = term_to_word(term, &self.var.alphabet) else {
            return false;
        };
        match leaf {
            Term::Var(_) => self.var.accepts(&word),
            Term::Const(_) => false,
            Term::App(..) => unreachable!(),
        }
    }

    /// Like [`contains`](Self::contains) but resolving constants by `sig`.
    pub fn contains_in(&self, term: &Term, sig: &Signature) -> bool {
        let Some((word, leaf)) = term_to_word(term, &self.var.alphabet) else {
            return false;
        };
        match leaf {
            Term::Var(_) => self.var.accepts(&word),
            Term::Const(c) => sig
                .const_index(&c)
                .is_some_and(|i| self.ground[i].accepts(&word)),
            Term::App(..) => unreachable!(),
        }
    }

    /// Least separating term of `self \ other` in witness order.
    pub fn difference_witness(
        &self,
        other: &UnaryLanguage,
        sig: &Signature,
    ) -> Result<Option<Term>, EngineError> {
        let mut best: Option<Term> = None;
        let mut consider = |t: Term| {
            if best
                .as_ref()
                .map_or(true, |b| crate::term::witness_cmp(sig, &t, b).is_lt())
            {
                best = Some(t);
            }
        };
        if let Some(w) = shortest_difference(&self.var, &other.var)? {
            consider(word_to_term(&w, &self.var.alphabet, Term::var(1)));
        }
        for (c, (x, y)) in self.ground.iter().zip(&other.ground).enumerate() {
            if let Some(w) = shortest_difference(x, y)? {
                consider(word_to_term(
                    &w,
                    &x.alphabet,
                    Term::constant(&sig.constants[c]),
                ));
            }
        }
        Ok(best)
    }
}

/// Language report lines: `element c: regex f*`, plus one `ground` line per
/// constant with a non-empty ground language.
pub fn language_report(algebra: &Algebra) -> Result<String, EngineError> {
    let mut out = String::new();
    for a in algebra.elements() {
        let lang = UnaryLanguage::of(algebra, a)?;
        let _ = writeln!(
            out,
            "element {}: regex {}",
            algebra.name_of(a),
            dfa_regex(&lang.var)
        );
        for (c, g) in lang.ground.iter().enumerate() {
            if !g.is_empty() {
                let name = &algebra.signature().constants[c];
                let _ = writeln!(
                    out,
                    "element {}: ground {name}: regex {}",
                    algebra.name_of(a),
                    dfa_regex(g)
                );
            }
        }
    }
    Ok(out)
}

/// Exact engine for unary signatures, deciding inclusions on automata.
pub struct UnaryEngine {
    pair: AlgebraPair,
    left: Vec<UnaryLanguage>,
    right: Vec<UnaryLanguage>,
    profiles: Vec<RangeProfile>,
}

impl UnaryEngine {
    pub fn new(pair: &AlgebraPair) -> Result<Self, EngineError> {
        let langs = |alg: &Algebra| -> Result<Vec<UnaryLanguage>, EngineError> {
            alg.elements().map(|a| UnaryLanguage::of(alg, a)).collect()
        };
        let left = langs(&pair.left)?;
        let right = langs(&pair.right)?;
        // Range pairs of unary terms are those of the linear fragment.
        let profiles = reachable_profiles(pair)?.profiles().to_vec();
        Ok(UnaryEngine {
            pair: pair.clone(),
            left,
            right,
            profiles,
        })
    }

    pub fn left_language(&self, a: Elem) -> &UnaryLanguage {
        &self.left[a.index()]
    }

    pub fn right_language(&self, b: Elem) -> &UnaryLanguage {
        &self.right[b.index()]
    }

    /// `Gen(a,b)` as a language.
    pub fn joint_language(&self, a: Elem, b: Elem) -> UnaryLanguage {
        self.left[a.index()]
            .intersect(&self.right[b.index()])
            .expect("languages of a validated pair share an alphabet")
    }
}

impl GenEngine for UnaryEngine {
    fn label(&self) -> Exactness {
        Exactness::Exact
    }

    fn pair(&self) -> &AlgebraPair {
        &self.pair
    }

    fn gen_subset(&self, a: Elem, b: Elem, b_prime: Elem) -> SubsetVerdict {
        check_elem(&self.pair, a, b, b_prime);
        if b == b_prime {
            return SubsetVerdict::holds();
        }
        let joint = self.joint_language(a, b);
        let sep = joint
            .difference_witness(&self.right[b_prime.index()], self.pair.left.signature())
            .expect("languages of a validated pair share an alphabet");
        sep.map_or_else(SubsetVerdict::holds, SubsetVerdict::fails)
    }

    fn range_profiles(&self) -> &[RangeProfile] {
        &self.profiles
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraBuilder;

    fn swap_algebra() -> Algebra {
        AlgebraBuilder::new("A", ["a", "b"])
            .unary("f", &[("a", "b"), ("b", "a")])
            .unary("g", &[("a", "a"), ("b", "b")])
            .build()
            .unwrap()
    }

    fn example_one() -> Algebra {
        AlgebraBuilder::new("A", ["a", "b", "c"])
            .unary("f", &[("a", "b"), ("b", "c"), ("c", "c")])
            .build()
            .unwrap()
    }

    fn word(d: &GenDfa, s: &str) -> Vec<usize> {
        s.chars()
            .map(|c| {
                d.alphabet()
                    .iter()
                    .position(|x| x == &c.to_string())
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn path_automata_of_swap_algebra() {
        let a = swap_algebra();
        let (ea, eb) = (a.elem("a").unwrap(), a.elem("b").unwrap());
        let aa = build_path_automaton(&a, ea, ea).unwrap();
        for w in ["gg", "ff", ""] {
            assert!(aa.accepts(&word(&aa, w)), "{w}");
        }
        assert!(!aa.accepts(&word(&aa, "f")));
        let ba = build_path_automaton(&a, eb, ea).unwrap();
        assert!(ba.accepts(&word(&ba, "f")));
        assert!(!ba.accepts(&[]));
        assert!(export_dot(&aa).contains("a -> b [label=\"f\"]"));
    }

    #[test]
    fn one_element_accepts_everything() {
        let b = AlgebraBuilder::new("B", ["b"])
            .unary("f", &[("b", "b")])
            .build()
            .unwrap();
        let d = build_path_automaton(&b, Elem(0), Elem(0)).unwrap();
        assert!(d.is_universal());
        assert_eq!(dfa_minimize(&d).state_count(), 1);
    }

    #[test]
    fn swap_language_is_universal() {
        let a = swap_algebra();
        let l = gen_language(&a, a.elem("a").unwrap()).unwrap();
        assert!(l.is_universal());
        assert!(dfa_complement(&l).is_empty());
        assert_eq!(l.state_count(), 1);
    }

    #[test]
    fn example_one_languages() {
        let a = example_one();
        let la = gen_language(&a, Elem(0)).unwrap();
        let lb = gen_language(&a, Elem(1)).unwrap();
        let lc = gen_language(&a, Elem(2)).unwrap();
        assert_eq!(dfa_regex(&la).to_string(), "ε");
        assert_eq!(dfa_regex(&lb).to_string(), "f?");
        assert_eq!(dfa_regex(&lc).to_string(), "f*");
        assert_eq!(lb.state_count(), 3);
        let bc = dfa_intersect(&lb, &lc).unwrap();
        assert!(dfa_equivalent(&bc, &lb).unwrap());
        let v = dfa_subset(&lb, &la).unwrap();
        assert_eq!(v.separator.unwrap().to_string(), "f(z1)");
        assert!(dfa_subset(&la, &lb).unwrap().holds);
        let v = dfa_subset(&lc, &lb).unwrap();
        assert_eq!(v.separator.unwrap().to_string(), "f(f(z1))");
        assert!(dfa_subset(&lc, &lc).unwrap().holds);
    }

    #[test]
    fn disjoint_intersection_is_empty() {
        let a = example_one();
        let la = gen_language(&a, Elem(0)).unwrap();
        let lc = gen_language(&a, Elem(2)).unwrap();
        let plus = dfa_intersect(&lc, &dfa_complement(&la)).unwrap();
        assert!(dfa_intersect(&la, &plus).unwrap().is_empty());
        assert_eq!(
            dfa_regex(&dfa_intersect(&la, &plus).unwrap()).to_string(),
            "∅"
        );
    }

    #[test]
    fn lex_least_outermost_spelling() {
        // Accept words ending (outermost) in g after an f somewhere inside.
        let a = AlgebraBuilder::new("A", ["p", "q", "r"])
            .unary("f", &[("p", "q"), ("q", "q"), ("r", "r")])
            .unary("g", &[("p", "p"), ("q", "r"), ("r", "r")])
            .build()
            .unwrap();
        let from_p = build_path_automaton(&a, Elem(0), Elem(2)).unwrap();
        let empty = dfa_intersect(&from_p, &dfa_complement(&from_p)).unwrap();
        let w = shortest_difference(&from_p, &empty).unwrap().unwrap();
        assert_eq!(
            word_to_term(&w, from_p.alphabet(), Term::var(1)).to_string(),
            "g(f(z1))"
        );
    }

    #[test]
    fn alphabet_mismatch() {
        let a = example_one();
        let b = swap_algebra();
        let x = gen_language(&a, Elem(0)).unwrap();
        let y = gen_language(&b, Elem(0)).unwrap();
        assert_eq!(
            dfa_intersect(&x, &y).unwrap_err(),
            EngineError::AlphabetMismatch
        );
    }

    #[test]
    fn non_unary_rejected() {
        let m = AlgebraBuilder::new("M", ["0", "1"])
            .op_fn("m", 2, |t| t[0] & t[1])
            .build()
            .unwrap();
        assert!(matches!(
            gen_language(&m, Elem(0)),
            Err(EngineError::NotUnary(_))
        ));
    }

    #[test]
    fn constants_use_ground_languages() {
        let a = AlgebraBuilder::new("A", ["a", "b", "c"])
            .unary("f", &[("a", "b"), ("b", "c"), ("c", "c")])
            .constants(["a"])
            .build()
            .unwrap();
        let la = UnaryLanguage::of(&a, Elem(1)).unwrap();
        let sig = a.signature();
        assert!(la.contains_in(&"f(a)".parse().unwrap(), sig));
        assert!(!la.contains_in(&"a".parse().unwrap(), sig));
        assert!(la.contains_in(&"f(z1)".parse().unwrap(), sig));
        let eng = UnaryEngine::new(&AlgebraPair::single(&a)).unwrap();
        // Gen(b) contains f(a) but Gen(c) does not; f(a) precedes f(z1).
        let v = eng.gen_subset(Elem(1), Elem(1), Elem(2));
        assert_eq!(v.separator.unwrap().to_string(), "f(a)");
        let report = language_report(&a).unwrap();
        assert!(report.contains("element b: ground a: regex f"), "{report}");
    }
}
