//! Generalization-based similarity of elements and of algebras.

use std::cell::OnceCell;
use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{validate_pair, Algebra, AlgebraError, AlgebraPair, Elem};
use crate::engine::general::{GeneralEngine, DEFAULT_PROFILE_CAP};
use crate::engine::linear::LinearEngine;
use crate::engine::monolinear::MonolinearEngine;
use crate::engine::unary::UnaryEngine;
use crate::engine::{EngineError, Exactness, GenEngine};
use crate::oracle::{OracleError, PairOracle};
use crate::term::{witness_cmp, Fragment, Term, DEFAULT_ENUMERATION_CAP};

/// Which engine decides inclusions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineChoice {
    /// Unary engine for unary signatures, linear engine otherwise.
    #[default]
    Auto,
    Unary,
    Linear,
    Monolinear,
    General,
    /// Brute-force enumeration up to `max_depth`.
    Oracle,
}

impl EngineChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            EngineChoice::Auto => "auto",
            EngineChoice::Unary => "unary",
            EngineChoice::Linear => "linear",
            EngineChoice::Monolinear => "monolinear",
            EngineChoice::General => "general",
            EngineChoice::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub engine: EngineChoice,
    /// Variables tracked by the general engine and the oracle.
    pub max_vars: usize,
    /// Term depth explored by the oracle.
    pub max_depth: usize,
    /// Bound on the general engine's profile space.
    pub cap: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            engine: EngineChoice::Auto,
            max_vars: 2,
            max_depth: 4,
            cap: DEFAULT_PROFILE_CAP,
        }
    }
}

impl Config {
    pub fn with_engine(engine: EngineChoice) -> Self {
        Config {
            engine,
            ..Config::default()
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SimilarityError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("the unary engine needs a unary signature")]
    NotUnary,
    #[error("`{0}` must be at least 1")]
    ZeroBound(&'static str),
}

/// `Forward` is the pair as given, `Backward` the swapped pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    None,
    /// `element` on the competing side has `Gen(a,b) ⊊ Gen(a,element)`;
    /// `evidence` lies in the larger set only.
    Dominating {
        direction: Direction,
        element: String,
        evidence: Term,
    },
    /// An element with no similar partner on the other side.
    NoPartner {
        direction: Direction,
        element: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub certificate: Certificate,
    pub label: Exactness,
}

impl Verdict {
    fn yes(label: Exactness) -> Self {
        Verdict {
            holds: true,
            certificate: Certificate::None,
            label,
        }
    }

    /// The dominating element and evidence, if any.
    pub fn dominating(&self) -> Option<(&str, &Term)> {
        match &self.certificate {
            Certificate::Dominating {
                element, evidence, ..
            } => Some((element, evidence)),
            _ => None,
        }
    }

    fn flipped(mut self) -> Self {
        match &mut self.certificate {
            Certificate::Dominating { direction, .. }
            | Certificate::NoPartner { direction, .. } => {
                *direction = match direction {
                    Direction::Forward => Direction::Backward,
                    Direction::Backward => Direction::Forward,
                }
            }
            Certificate::None => {}
        }
        self
    }
}

fn build_engine(
    pair: &AlgebraPair,
    config: &Config,
) -> Result<Box<dyn GenEngine>, SimilarityError> {
    let unary = pair.left.signature().is_unary();
    Ok(match config.engine {
        EngineChoice::Auto if unary => Box::new(UnaryEngine::new(pair)?),
        EngineChoice::Auto | EngineChoice::Linear => Box::new(LinearEngine::new(pair)?),
        EngineChoice::Unary if !unary => return Err(SimilarityError::NotUnary),
        EngineChoice::Unary => Box::new(UnaryEngine::new(pair)?),
        EngineChoice::Monolinear => Box::new(MonolinearEngine::new(pair)?),
        EngineChoice::General => {
            if config.max_vars == 0 {
                return Err(SimilarityError::ZeroBound("max_vars"));
            }
            Box::new(GeneralEngine::new(pair, config.max_vars, config.cap)?)
        }
        EngineChoice::Oracle => {
            if config.max_vars == 0 {
                return Err(SimilarityError::ZeroBound("max_vars"));
            }
            Box::new(PairOracle::new(
                pair,
                config.max_depth,
                config.max_vars,
                Fragment::General,
                DEFAULT_ENUMERATION_CAP,
            )?)
        }
    })
}

/// A pair with its engines, built on first use in each direction.
pub struct Session {
    pair: AlgebraPair,
    config: Config,
    forward: OnceCell<Box<dyn GenEngine>>,
    backward: OnceCell<Box<dyn GenEngine>>,
}

impl Session {
    pub fn new(pair: AlgebraPair, config: Config) -> Self {
        Session {
            pair,
            config,
            forward: OnceCell::new(),
            backward: OnceCell::new(),
        }
    }

    /// Validates `left` and `right` as a pair.
    pub fn for_algebras(
        left: &Algebra,
        right: &Algebra,
        config: Config,
    ) -> Result<Self, SimilarityError> {
        Ok(Session::new(validate_pair(left, right)?, config))
    }

    pub fn single(algebra: &Algebra, config: Config) -> Self {
        Session::new(AlgebraPair::single(algebra), config)
    }

    pub fn pair(&self) -> &AlgebraPair {
        &self.pair
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn forward(&self) -> Result<&dyn GenEngine, SimilarityError> {
        engine_in(&self.forward, &self.pair, &self.config)
    }

    pub fn backward(&self) -> Result<&dyn GenEngine, SimilarityError> {
        if self.pair.is_single() {
            return self.forward();
        }
        engine_in(&self.backward, &self.pair.swapped(), &self.config)
    }

    pub fn label(&self) -> Result<Exactness, SimilarityError> {
        Ok(self.forward()?.label())
    }

    /// `a ≲ b`, with `a` on the left and `b` on the right.
    pub fn decide_leq(&self, a: Elem, b: Elem) -> Result<Verdict, SimilarityError> {
        Ok(leq_with(self.forward()?, a, b))
    }

    /// `a ≈ b`: `a ≲ b` here and `b ≲ a` in the swapped pair.
    pub fn decide_approx(&self, a: Elem, b: Elem) -> Result<Verdict, SimilarityError> {
        let fwd = self.decide_leq(a, b)?;
        if !fwd.holds {
            return Ok(fwd);
        }
        let back = leq_with(self.backward()?, b, a);
        Ok(if back.holds { fwd } else { back.flipped() })
    }

    /// Every left element has a similar right element.
    pub fn decide_algebra_leq(&self) -> Result<Verdict, SimilarityError> {
        let m = self.matrix()?;
        Ok(algebra_leq_from(
            &m,
            &self.pair,
            Direction::Forward,
            m.label,
        ))
    }

    pub fn decide_algebra_approx(&self) -> Result<Verdict, SimilarityError> {
        let m = self.matrix()?;
        let fwd = algebra_leq_from(&m, &self.pair, Direction::Forward, m.label);
        if !fwd.holds {
            return Ok(fwd);
        }
        for b in self.pair.right.elements() {
            if !self
                .pair
                .left
                .elements()
                .any(|a| m.approx[a.index()][b.index()].holds)
            {
                return Ok(Verdict {
                    holds: false,
                    certificate: Certificate::NoPartner {
                        direction: Direction::Backward,
                        element: self.pair.right.name_of(b).to_string(),
                    },
                    label: m.label,
                });
            }
        }
        Ok(fwd)
    }

    pub fn matrix(&self) -> Result<SimilarityMatrix, SimilarityError> {
        let fwd = self.forward()?;
        let back = self.backward()?;
        let leq: Vec<Vec<Verdict>> = self
            .pair
            .left
            .elements()
            .map(|a| {
                self.pair
                    .right
                    .elements()
                    .map(|b| leq_with(fwd, a, b))
                    .collect()
            })
            .collect();
        let back_leq: Vec<Vec<Verdict>> = self
            .pair
            .right
            .elements()
            .map(|b| {
                self.pair
                    .left
                    .elements()
                    .map(|a| leq_with(back, b, a))
                    .collect()
            })
            .collect();
        let approx = leq
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| {
                        if !v.holds {
                            v.clone()
                        } else if !back_leq[j][i].holds {
                            back_leq[j][i].clone().flipped()
                        } else {
                            v.clone()
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(SimilarityMatrix {
            rows: self.pair.left.carrier().to_vec(),
            cols: self.pair.right.carrier().to_vec(),
            leq,
            approx,
            label: fwd.label(),
        })
    }

    /// Whether `Gen_A(a) ⊆ Gen_B(b)` holds over the engine's terms.
    pub fn gen_included(&self, a: Elem, b: Elem) -> Result<bool, SimilarityError> {
        Ok(self
            .forward()?
            .range_profiles()
            .iter()
            .all(|p| !p.left.contains(a) || p.right.contains(b)))
    }

    /// Smallest set of witnesses shared by `a` and `b` that no admissible
    /// competitor of `b` shares; sets larger than `max_size` are not tried.
    pub fn find_characteristic_set(
        &self,
        a: Elem,
        b: Elem,
        max_size: usize,
    ) -> Result<CharacteristicSet, SimilarityError> {
        let engine = self.forward()?;
        let sig = self.pair.left.signature();
        let competitors: Vec<Elem> = self
            .pair
            .right
            .elements()
            .filter(|&c| c != b && self.pair.right_twin(a) != Some(c))
            .collect();
        let full: u64 = if competitors.len() >= 64 {
            u64::MAX
        } else {
            (1 << competitors.len()) - 1
        };
        // Best witness per excluded-competitor mask, in witness order.
        let mut options: Vec<(u64, &Term)> = Vec::new();
        for p in engine.range_profiles() {
            if !(p.left.contains(a) && p.right.contains(b)) {
                continue;
            }
            let mask = competitors
                .iter()
                .enumerate()
                .filter(|(_, c)| !p.right.contains(**c))
                .fold(0u64, |m, (i, _)| m | 1 << i);
            match options.iter_mut().find(|(m, _)| *m == mask) {
                Some((_, t)) if witness_cmp(sig, &p.witness, t) == Ordering::Less => {
                    *t = &p.witness
                }
                Some(_) => {}
                None => options.push((mask, &p.witness)),
            }
        }
        options.sort_by(|x, y| witness_cmp(sig, x.1, y.1));
        let label = engine.label();
        for size in 1..=max_size.min(options.len()) {
            let mut best: Option<Vec<&Term>> = None;
            let mut pick = Vec::with_capacity(size);
            cover_search(&options, full, size, 0, 0, &mut pick, &mut |chosen| {
                let mut set: Vec<&Term> = chosen.to_vec();
                set.sort_by(|x, y| witness_cmp(sig, x, y));
                if best
                    .as_ref()
                    .map_or(true, |b| set_cmp(sig, &set, b) == Ordering::Less)
                {
                    best = Some(set);
                }
            });
            if let Some(terms) = best {
                return Ok(CharacteristicSet {
                    terms: Some(terms.into_iter().cloned().collect()),
                    max_size,
                    label,
                });
            }
        }
        Ok(CharacteristicSet {
            terms: None,
            max_size,
            label,
        })
    }

    /// `a ≈ a` for every element named in both algebras.
    pub fn check_reflexive(&self) -> Result<ReflexivityReport, SimilarityError> {
        let mut checked = Vec::new();
        let mut violations = Vec::new();
        for (a, b) in self.pair.overlap() {
            let name = self.pair.left.name_of(a).to_string();
            let v = self.decide_approx(a, b)?;
            if !v.holds {
                violations.push((name.clone(), v));
            }
            checked.push(name);
        }
        Ok(ReflexivityReport {
            checked,
            violations,
            label: self.label()?,
        })
    }

    /// Transitivity of `≲` and `≈` over all triples of one algebra.
    pub fn check_transitive(&self) -> Result<TransitivityReport, SimilarityError> {
        let m = self.matrix()?;
        let n = m.rows.len();
        let leq = |i: usize, j: usize| m.leq[i][j].holds;
        let approx = |i: usize, j: usize| m.approx[i][j].holds;
        let mut report = TransitivityReport {
            label: m.label,
            ..TransitivityReport::default()
        };
        let name = |i: usize| m.rows[i].clone();
        for (i, j, k) in triples(n, n, n) {
            if leq(i, j) && leq(j, k) && !leq(i, k) {
                report.leq_violations.push(TripleViolation {
                    elements: [name(i), name(j), name(k)],
                    certificate: m.leq[i][k].clone(),
                });
            }
            if approx(i, j) && approx(j, k) && !approx(i, k) {
                report.approx_violations.push(TripleViolation {
                    elements: [name(i), name(j), name(k)],
                    certificate: m.approx[i][k].clone(),
                });
            }
        }
        Ok(report)
    }
}

fn engine_in<'s>(
    cell: &'s OnceCell<Box<dyn GenEngine>>,
    pair: &AlgebraPair,
    config: &Config,
) -> Result<&'s dyn GenEngine, SimilarityError> {
    if cell.get().is_none() {
        let e = build_engine(pair, config)?;
        let _ = cell.set(e);
    }
    Ok(cell.get().expect("engine initialized").as_ref())
}

fn triples(x: usize, y: usize, z: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..x).flat_map(move |i| (0..y).flat_map(move |j| (0..z).map(move |k| (i, j, k))))
}

/// `a ≲ b` decided on one engine.
fn leq_with(engine: &dyn GenEngine, a: Elem, b: Elem) -> Verdict {
    let pair = engine.pair();
    let label = engine.label();
    let twin = pair.right_twin(a);
    for c in pair.right.elements() {
        if c == b || twin == Some(c) {
            continue;
        }
        if !engine.gen_subset(a, b, c).holds {
            continue;
        }
        if let Some(evidence) = engine.gen_subset(a, c, b).separator {
            return Verdict {
                holds: false,
                certificate: Certificate::Dominating {
                    direction: Direction::Forward,
                    element: pair.right.name_of(c).to_string(),
                    evidence,
                },
                label,
            };
        }
    }
    Verdict::yes(label)
}

fn algebra_leq_from(
    m: &SimilarityMatrix,
    pair: &AlgebraPair,
    direction: Direction,
    label: Exactness,
) -> Verdict {
    for a in pair.left.elements() {
        if !m.approx[a.index()].iter().any(|v| v.holds) {
            return Verdict {
                holds: false,
                certificate: Certificate::NoPartner {
                    direction,
                    element: pair.left.name_of(a).to_string(),
                },
                label,
            };
        }
    }
    Verdict::yes(label)
}

fn set_cmp(sig: &crate::algebra::Signature, x: &[&Term], y: &[&Term]) -> Ordering {
    let total = |s: &[&Term]| s.iter().map(|t| t.size()).sum::<usize>();
    total(x).cmp(&total(y)).then_with(|| {
        x.iter()
            .zip(y)
            .map(|(a, b)| witness_cmp(sig, a, b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

fn cover_search<'t>(
    options: &[(u64, &'t Term)],
    full: u64,
    size: usize,
    from: usize,
    covered: u64,
    pick: &mut Vec<&'t Term>,
    found: &mut impl FnMut(&[&'t Term]),
) {
    if pick.len() == size {
        if covered == full {
            found(pick);
        }
        return;
    }
    for i in from..options.len() {
        if options.len() - i < size - pick.len() {
            return;
        }
        pick.push(options[i].1);
        cover_search(
            options,
            full,
            size,
            i + 1,
            covered | options[i].0,
            pick,
            found,
        );
        pick.pop();
    }
}

/// `≲` and `≈` verdicts for every cell, rows from the left algebra.
#[derive(Clone, Debug)]
pub struct SimilarityMatrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub leq: Vec<Vec<Verdict>>,
    pub approx: Vec<Vec<Verdict>>,
    pub label: Exactness,
}

impl SimilarityMatrix {
    /// Plain-text table: `≲`/`≈` marks, `·` where neither holds.
    pub fn render(&self) -> String {
        let width = self
            .rows
            .iter()
            .chain(&self.cols)
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1)
            .max(2);
        let mut out = format!("{:width$}", "");
        for c in &self.cols {
            out.push_str(&format!(" {c:>width$}"));
        }
        out.push('\n');
        for (i, r) in self.rows.iter().enumerate() {
            out.push_str(&format!("{r:width$}"));
            for j in 0..self.cols.len() {
                let mark = if self.approx[i][j].holds {
                    "≈"
                } else if self.leq[i][j].holds {
                    "≲"
                } else {
                    "·"
                };
                out.push_str(&format!(" {mark:>width$}"));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicSet {
    /// `None` when no set within `max_size` exists among the engine's witnesses.
    pub terms: Option<Vec<Term>>,
    pub max_size: usize,
    pub label: Exactness,
}

#[derive(Clone, Debug)]
pub struct ReflexivityReport {
    pub checked: Vec<String>,
    pub violations: Vec<(String, Verdict)>,
    pub label: Exactness,
}

#[derive(Clone, Debug)]
pub struct TripleViolation {
    pub elements: [String; 3],
    /// Why the first element is not related to the third.
    pub certificate: Verdict,
}

#[derive(Clone, Debug)]
pub struct TransitivityReport {
    pub leq_violations: Vec<TripleViolation>,
    pub approx_violations: Vec<TripleViolation>,
    pub label: Exactness,
}

impl Default for TransitivityReport {
    fn default() -> Self {
        TransitivityReport {
            leq_violations: Vec::new(),
            approx_violations: Vec::new(),
            label: Exactness::Exact,
        }
    }
}

impl TransitivityReport {
    pub fn is_transitive(&self) -> bool {
        self.leq_violations.is_empty() && self.approx_violations.is_empty()
    }
}

/// Transitivity across three algebras: `a ≲ b` in `(A,B)`, `b ≲ c` in
/// `(B,C)` but not `a ≲ c` in `(A,C)`, and the same for `≈`.
pub fn check_transitive_triple(
    a: &Algebra,
    b: &Algebra,
    c: &Algebra,
    config: Config,
) -> Result<TransitivityReport, SimilarityError> {
    let ab = Session::for_algebras(a, b, config)?.matrix()?;
    let bc = Session::for_algebras(b, c, config)?.matrix()?;
    let ac = Session::for_algebras(a, c, config)?.matrix()?;
    let mut report = TransitivityReport {
        label: ac.label,
        ..TransitivityReport::default()
    };
    for (i, j, k) in triples(a.size(), b.size(), c.size()) {
        let names = || [ab.rows[i].clone(), ab.cols[j].clone(), ac.cols[k].clone()];
        if ab.leq[i][j].holds && bc.leq[j][k].holds && !ac.leq[i][k].holds {
            report.leq_violations.push(TripleViolation {
                elements: names(),
                certificate: ac.leq[i][k].clone(),
            });
        }
        if ab.approx[i][j].holds && bc.approx[j][k].holds && !ac.approx[i][k].holds {
            report.approx_violations.push(TripleViolation {
                elements: names(),
                certificate: ac.approx[i][k].clone(),
            });
        }
    }
    Ok(report)
}

pub fn decide_leq(
    pair: &AlgebraPair,
    a: Elem,
    b: Elem,
    config: Config,
) -> Result<Verdict, SimilarityError> {
    Session::new(pair.clone(), config).decide_leq(a, b)
}

pub fn decide_approx(
    pair: &AlgebraPair,
    a: Elem,
    b: Elem,
    config: Config,
) -> Result<Verdict, SimilarityError> {
    Session::new(pair.clone(), config).decide_approx(a, b)
}

pub fn similarity_matrix(
    pair: &AlgebraPair,
    config: Config,
) -> Result<SimilarityMatrix, SimilarityError> {
    Session::new(pair.clone(), config).matrix()
}
