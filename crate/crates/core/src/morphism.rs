//! Maps between algebras of a shared signature and the checks built on them.

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{validate_pair, Algebra, AlgebraError, AlgebraPair, Elem};
use crate::engine::unary::{dfa_equivalent, UnaryLanguage};
use crate::similarity::{Config, Session, SimilarityError, Verdict};
use crate::term::Term;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: map is declared for `{found}` but `{expected}` was supplied")]
    AlgebraMismatch {
        line: usize,
        expected: String,
        found: String,
    },
    #[error("line {line}: unknown element `{name}` of `{algebra}`")]
    UnknownElement {
        line: usize,
        algebra: String,
        name: String,
    },
    #[error("line {line}: element `{name}` is mapped twice")]
    DuplicateElement { line: usize, name: String },
    #[error("element `{0}` is not mapped")]
    Unmapped(String),
    #[error("constant `{constant}` is sent to `{image}` instead of its counterpart `{expected}`")]
    ConstantNotPreserved {
        constant: String,
        image: String,
        expected: String,
    },
    #[error(transparent)]
    Signature(#[from] AlgebraError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MorphismError {
    #[error("`{0}` is not an isomorphism")]
    NotIsomorphism(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Similarity(#[from] SimilarityError),
}

/// A total map from the carrier of `source` to that of `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementMap {
    pub name: String,
    source: Algebra,
    target: Algebra,
    /// The source and target as a validated pair.
    pair: AlgebraPair,
    table: Vec<Elem>,
}

impl ElementMap {
    /// Checks signatures and constant preservation.
    pub fn new(
        name: &str,
        source: &Algebra,
        target: &Algebra,
        table: Vec<Elem>,
    ) -> Result<Self, MapError> {
        let pair = validate_pair(source, target)?;
        if table.len() != source.size() {
            let missing = source.carrier()[table.len().min(source.size() - 1)].clone();
            return Err(MapError::Unmapped(missing));
        }
        for (i, (&ca, &cb)) in pair
            .left
            .constant_elems()
            .iter()
            .zip(pair.right.constant_elems())
            .enumerate()
        {
            if table[ca.index()] != cb {
                return Err(MapError::ConstantNotPreserved {
                    constant: source.signature().constants[i].clone(),
                    image: target.name_of(table[ca.index()]).to_string(),
                    expected: target.name_of(cb).to_string(),
                });
            }
        }
        Ok(ElementMap {
            name: name.to_string(),
            source: source.clone(),
            target: target.clone(),
            pair,
            table,
        })
    }

    pub fn identity(algebra: &Algebra) -> Self {
        ElementMap::new("id", algebra, algebra, algebra.elements().collect())
            .expect("identity is well formed")
    }

    /// The map sending each element to the element of the same name.
    pub fn by_names(name: &str, source: &Algebra, target: &Algebra) -> Result<Self, MapError> {
        let table = source
            .carrier()
            .iter()
            .map(|n| {
                target.elem(n).ok_or_else(|| MapError::UnknownElement {
                    line: 0,
                    algebra: target.name().to_string(),
                    name: n.clone(),
                })
            })
            .collect::<Result<_, _>>()?;
        ElementMap::new(name, source, target, table)
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.table[a.index()]
    }

    /// Renders in `.map` format.
    pub fn render(&self) -> String {
        let mut out = format!(
            "map {} : {} -> {}\n",
            self.name,
            self.source.name(),
            self.target.name()
        );
        for a in self.source.elements() {
            let _ = writeln!(
                out,
                "{} -> {}",
                self.source.name_of(a),
                self.target.name_of(self.apply(a))
            );
        }
        out
    }

    pub fn is_homomorphism(&self) -> bool {
        let (a, b) = (&self.pair.left, &self.pair.right);
        let sig = a.signature();
        for op in 0..sig.operations.len() {
            let k = sig.arity(op);
            let mut args = vec![Elem(0); k];
            loop {
                let image: Vec<Elem> = args.iter().map(|&x| self.apply(x)).collect();
                if self.apply(a.apply(op, &args)) != b.apply(op, &image) {
                    return false;
                }
                if !crate::term::advance(&mut args, a.size()) {
                    break;
                }
            }
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.size() != self.target.size() {
            return false;
        }
        let mut hit = vec![false; self.target.size()];
        self.table
            .iter()
            .all(|b| !std::mem::replace(&mut hit[b.index()], true))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_bijective() && self.is_homomorphism()
    }

    pub fn inverse(&self) -> Option<ElementMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut table = vec![Elem(0); self.table.len()];
        for (a, b) in self.table.iter().enumerate() {
            table[b.index()] = Elem::from_index(a);
        }
        ElementMap::new(
            &format!("{}^-1", self.name),
            &self.target,
            &self.source,
            table,
        )
        .ok()
    }
}

/// Reads a `.map` file: a `map <name> : <source> -> <target>` header and one
/// `a -> c` line per source element. `#` starts a comment.
pub fn parse_map(text: &str, source: &Algebra, target: &Algebra) -> Result<ElementMap, MapError> {
    let mut name = None;
    let mut table: Vec<Option<Elem>> = vec![None; source.size()];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |message: &str| MapError::Syntax {
            line,
            message: message.to_string(),
        };
        if name.is_none() {
            let rest = content
                .strip_prefix("map")
                .filter(|r| r.starts_with(char::is_whitespace))
                .ok_or_else(|| syntax("expected `map <name> : <source> -> <target>`"))?;
            let (n, algs) = rest
                .split_once(':')
                .ok_or_else(|| syntax("expected `:` after the map name"))?;
            let (s, t) = algs
                .split_once("->")
                .ok_or_else(|| syntax("expected `<source> -> <target>`"))?;
            let n = n.trim();
            if n.is_empty() || n.contains(char::is_whitespace) {
                return Err(syntax("invalid map name"));
            }
            for (found, alg) in [(s.trim(), source), (t.trim(), target)] {
                if found != alg.name() {
                    return Err(MapError::AlgebraMismatch {
                        line,
                        expected: alg.name().to_string(),
                        found: found.to_string(),
                    });
                }
            }
            name = Some(n.to_string());
            continue;
        }
        let (a, b) = content
            .split_once("->")
            .ok_or_else(|| syntax("expected `<element> -> <element>`"))?;
        let (a, b) = (a.trim(), b.trim());
        let lookup = |alg: &Algebra, n: &str| {
            alg.elem(n).ok_or_else(|| MapError::UnknownElement {
                line,
                algebra: alg.name().to_string(),
                name: n.to_string(),
            })
        };
        let ea = lookup(source, a)?;
        let eb = lookup(target, b)?;
        if table[ea.index()].replace(eb).is_some() {
            return Err(MapError::DuplicateElement {
                line,
                name: a.to_string(),
            });
        }
    }
    let name = name.ok_or(MapError::Syntax {
        line: 1,
        message: "missing `map` header".into(),
    })?;
    let table = table
        .iter()
        .enumerate()
        .map(|(i, e)| e.ok_or_else(|| MapError::Unmapped(source.carrier()[i].clone())))
        .collect::<Result<_, _>>()?;
    ElementMap::new(&name, source, target, table)
}

/// Per-element outcome of comparing `Gen_A(a)` with `Gen_B(F(a))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenEquality {
    pub element: String,
    pub image: String,
    pub equal: bool,
    /// A term in exactly one of the two sets.
    pub witness: Option<Term>,
}

#[derive(Clone, Debug)]
pub struct LemmaReport {
    /// `automata` for unary signatures, otherwise the engine label.
    pub method: String,
    pub results: Vec<GenEquality>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.results.iter().all(|r| r.equal)
    }
}

/// Certifies `Gen_A(a) = Gen_B(F(a))` for every `a`.
pub fn verify_isomorphism_lemma(
    f: &ElementMap,
    config: Config,
) -> Result<LemmaReport, MorphismError> {
    if !f.is_isomorphism() {
        return Err(MorphismError::NotIsomorphism(f.name.clone()));
    }
    let (a_alg, b_alg) = (&f.pair.left, &f.pair.right);
    let mut results = Vec::new();
    if a_alg.signature().is_unary() {
        let sig = a_alg.signature();
        for a in a_alg.elements() {
            let b = f.apply(a);
            let la = UnaryLanguage::of(a_alg, a).map_err(SimilarityError::from)?;
            let lb = UnaryLanguage::of(b_alg, b).map_err(SimilarityError::from)?;
            let mut equal = dfa_equivalent(&la.var, &lb.var).map_err(SimilarityError::from)?;
            for (x, y) in la.ground.iter().zip(&lb.ground) {
                equal &= dfa_equivalent(x, y).map_err(SimilarityError::from)?;
            }
            let witness = if equal {
                None
            } else {
                let one = la
                    .difference_witness(&lb, sig)
                    .map_err(SimilarityError::from)?;
                let other = lb
                    .difference_witness(&la, sig)
                    .map_err(SimilarityError::from)?;
                one.or(other)
            };
            results.push(GenEquality {
                element: a_alg.name_of(a).to_string(),
                image: b_alg.name_of(b).to_string(),
                equal,
                witness,
            });
        }
        return Ok(LemmaReport {
            method: "automata".into(),
            results,
        });
    }
    let session = Session::new(f.pair.clone(), config);
    let engine = session.forward()?;
    for a in a_alg.elements() {
        let b = f.apply(a);
        let odd = engine
            .range_profiles()
            .iter()
            .find(|p| p.left.contains(a) != p.right.contains(b));
        results.push(GenEquality {
            element: a_alg.name_of(a).to_string(),
            image: b_alg.name_of(b).to_string(),
            equal: odd.is_none(),
            witness: odd.map(|p| p.witness.clone()),
        });
    }
    Ok(LemmaReport {
        method: engine.label().to_string(),
        results,
    })
}

#[derive(Clone, Debug)]
pub struct GFunctorVerdict {
    pub holds: bool,
    /// The first element not similar to its image, with the failing verdict.
    pub failure: Option<(String, Verdict)>,
}

/// Whether `a ≈ F(a)` in `(A,B)` for every `a`.
pub fn check_g_functor(f: &ElementMap, config: Config) -> Result<GFunctorVerdict, MorphismError> {
    let session = Session::new(f.pair.clone(), config);
    for a in f.source.elements() {
        let v = session.decide_approx(a, f.apply(a))?;
        if !v.holds {
            return Ok(GFunctorVerdict {
                holds: false,
                failure: Some((f.source.name_of(a).to_string(), v)),
            });
        }
    }
    Ok(GFunctorVerdict {
        holds: true,
        failure: None,
    })
}

#[derive(Clone, Debug)]
pub struct SitViolation {
    pub left: String,
    pub right: String,
    pub before: bool,
    pub after: bool,
}

#[derive(Clone, Debug)]
pub struct SitReport {
    pub checked: usize,
    pub violations: Vec<SitViolation>,
    /// Whether the maps send name-sharing elements to name-sharing elements
    /// and vice versa. Similarity excludes a same-named competitor, so the
    /// equivalence can only be expected when this holds.
    pub overlap_transported: bool,
}

impl SitReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares `a ≈ b` in `(A,B)` with `F(a) ≈ G(b)` in `(C,D)` for all cells.
pub fn check_second_isomorphism(
    f: &ElementMap,
    g: &ElementMap,
    config: Config,
) -> Result<SitReport, MorphismError> {
    for m in [f, g] {
        if !m.is_isomorphism() {
            return Err(MorphismError::NotIsomorphism(m.name.clone()));
        }
    }
    let before = Session::for_algebras(&f.source, &g.source, config)?;
    let after = Session::for_algebras(&f.target, &g.target, config)?;
    let (mb, ma) = (before.matrix()?, after.matrix()?);
    let mut violations = Vec::new();
    let mut transported = true;
    for a in f.source.elements() {
        for b in g.source.elements() {
            let (fa, gb) = (f.apply(a), g.apply(b));
            let twins = before.pair().right_twin(a) == Some(b);
            let twins_after = after.pair().right_twin(fa) == Some(gb);
            transported &= twins == twins_after;
            let x = mb.approx[a.index()][b.index()].holds;
            let y = ma.approx[fa.index()][gb.index()].holds;
            if x != y {
                violations.push(SitViolation {
                    left: f.source.name_of(a).to_string(),
                    right: g.source.name_of(b).to_string(),
                    before: x,
                    after: y,
                });
            }
        }
    }
    Ok(SitReport {
        checked: f.source.size() * g.source.size(),
        violations,
        overlap_transported: transported,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraBuilder;

    fn source_h() -> Algebra {
        AlgebraBuilder::new("A", ["a", "b"])
            .unary("f", &[("a", "b"), ("b", "b")])
            .build()
            .unwrap()
    }

    fn target_h() -> Algebra {
        AlgebraBuilder::new("B", ["c"])
            .unary("f", &[("c", "c")])
            .build()
            .unwrap()
    }

    fn chain() -> Algebra {
        AlgebraBuilder::new("A", ["a", "b", "c", "d", "e"])
            .unary(
                "f",
                &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "c")],
            )
            .build()
            .unwrap()
    }

    fn renamed_chain() -> Algebra {
        chain()
            .renamed("A2", &["v", "w", "x", "y", "u"].map(String::from))
            .unwrap()
    }

    #[test]
    fn collapse_is_homomorphism_not_g_functor() {
        let (a, b) = (source_h(), target_h());
        let f = parse_map("map F : A -> B\na -> c\nb -> c\n", &a, &b).unwrap();
        assert!(f.is_homomorphism());
        assert!(!f.is_isomorphism());
        let v = check_g_functor(&f, Config::default()).unwrap();
        assert!(!v.holds);
        assert_eq!(v.failure.unwrap().0, "a");
        assert!(matches!(
            verify_isomorphism_lemma(&f, Config::default()),
            Err(MorphismError::NotIsomorphism(_))
        ));
    }

    #[test]
    fn swapping_breaks_commutation() {
        let a = chain();
        let swap = parse_map(
            "map S : A -> A\na -> a\nb -> b\nc -> d\nd -> c\ne -> e\n",
            &a,
            &a,
        )
        .unwrap();
        assert!(!swap.is_homomorphism());
        assert!(ElementMap::identity(&a).is_isomorphism());
    }

    #[test]
    fn renaming_is_isomorphism() {
        let (a, r) = (chain(), renamed_chain());
        let f = parse_map(
            "map R : A -> A2\na -> v\nb -> w\nc -> x\nd -> y\ne -> u\n",
            &a,
            &r,
        )
        .unwrap();
        assert!(f.is_isomorphism());
        let rep = verify_isomorphism_lemma(&f, Config::default()).unwrap();
        assert_eq!(rep.results.len(), 5);
        assert!(rep.holds());
        assert_eq!(rep.method, "automata");
        assert!(check_g_functor(&f, Config::default()).unwrap().holds);
        let inv = f.inverse().unwrap();
        assert_eq!(inv.apply(Elem(4)), Elem(4));
        let sit = check_second_isomorphism(&f, &f, Config::default()).unwrap();
        assert!(sit.holds());
        assert!(sit.overlap_transported);
        assert_eq!(parse_map(&f.render(), &a, &r).unwrap(), f);
    }

    #[test]
    fn map_errors() {
        let (a, b) = (source_h(), target_h());
        assert!(matches!(
            parse_map("map F : A -> C\n", &a, &b),
            Err(MapError::AlgebraMismatch { .. })
        ));
        assert!(
            matches!(parse_map("map F : A -> B\na -> c\n", &a, &b), Err(MapError::Unmapped(n)) if n == "b")
        );
        assert!(matches!(
            parse_map("map F : A -> B\na -> c\na -> c\n", &a, &b),
            Err(MapError::DuplicateElement { line: 3, .. })
        ));
        assert!(matches!(
            parse_map("map F : A -> B\na -> q\n", &a, &b),
            Err(MapError::UnknownElement { line: 2, .. })
        ));
        assert!(matches!(
            parse_map("a -> c\n", &a, &b),
            Err(MapError::Syntax { line: 1, .. })
        ));
        let ka = AlgebraBuilder::new("K", ["0", "1"])
            .unary("f", &[("0", "1"), ("1", "0")])
            .constants(["0"])
            .build()
            .unwrap();
        assert!(matches!(
            parse_map("map F : K -> K\n0 -> 1\n1 -> 0\n", &ka, &ka),
            Err(MapError::ConstantNotPreserved { .. })
        ));
    }

    #[test]
    fn lemma_on_binary_signature() {
        let m = AlgebraBuilder::new("M", ["0", "1", "2"])
            .op_fn("m", 2, |t| (t[0] + t[1]) % 3)
            .build()
            .unwrap();
        let r = m.renamed("N", &["x", "y", "z"].map(String::from)).unwrap();
        let f = ElementMap::new("F", &m, &r, m.elements().collect()).unwrap();
        let rep = verify_isomorphism_lemma(&f, Config::default()).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.method, "linear-fragment");
    }
}
