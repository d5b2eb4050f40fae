//! Decision engines for inclusions between shared generalization sets.
//!
//! Every engine answers `Gen(a,b) ⊆ Gen(a,b')` over the pair it was built
//! for, for the class of terms it covers.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraPair, Elem};
use crate::elemset::ElemSet;
use crate::term::Term;

pub mod general;
pub mod linear;
pub mod monolinear;
pub mod unary;

/// How far an engine's verdicts can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Exactness {
    /// Exact for all terms.
    Exact,
    /// Exact for terms in at most this many variables.
    ExactForVars(usize),
    /// Exact for linear terms.
    LinearFragment,
    /// Exact for monolinear terms.
    MonolinearFragment,
    /// Brute force up to a term depth.
    OracleBounded(usize),
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exactness::Exact => f.write_str("exact"),
            Exactness::ExactForVars(k) => write!(f, "exact-for-{k}-vars"),
            Exactness::LinearFragment => f.write_str("linear-fragment"),
            Exactness::MonolinearFragment => f.write_str("monolinear-fragment"),
            Exactness::OracleBounded(d) => write!(f, "oracle-bounded(depth={d})"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("the signature has a non-unary operation `{0}`")]
    NotUnary(String),
    #[error("carrier of `{algebra}` has {size} elements; this engine supports at most {max}")]
    CarrierTooLarge {
        algebra: String,
        size: usize,
        max: usize,
    },
    #[error("profile space bound {required} exceeds the cap {cap}")]
    CapExceeded { required: String, cap: u64 },
    #[error("variable bound must be at least 1")]
    NoVariables,
    #[error("automata have different alphabets")]
    AlphabetMismatch,
}

/// Ranges of one term (or one class of terms) in both algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeProfile {
    pub left: ElemSet,
    pub right: ElemSet,
    pub witness: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetVerdict {
    pub holds: bool,
    /// A term in `Gen(a,b) \ Gen(a,b')` when the inclusion fails.
    pub separator: Option<Term>,
}

impl SubsetVerdict {
    pub fn holds() -> Self {
        SubsetVerdict {
            holds: true,
            separator: None,
        }
    }

    pub fn fails(separator: Term) -> Self {
        SubsetVerdict {
            holds: false,
            separator: Some(separator),
        }
    }
}

pub trait GenEngine {
    fn label(&self) -> Exactness;

    fn pair(&self) -> &AlgebraPair;

    /// Decides `Gen(a,b) ⊆ Gen(a,b')`, with `a` on the left and `b`, `b'` on
    /// the right.
    fn gen_subset(&self, a: Elem, b: Elem, b_prime: Elem) -> SubsetVerdict;

    /// Range pairs realised by the engine's terms, in witness order, one per
    /// distinct pair.
    fn range_profiles(&self) -> &[RangeProfile];
}

/// First profile (in witness order) with `a ∈ left`, `b ∈ right`, `b' ∉ right`.
pub fn scan_subset(profiles: &[RangeProfile], a: Elem, b: Elem, b_prime: Elem) -> SubsetVerdict {
    if b == b_prime {
        return SubsetVerdict::holds();
    }
    profiles
        .iter()
        .find(|p| p.left.contains(a) && p.right.contains(b) && !p.right.contains(b_prime))
        .map_or_else(SubsetVerdict::holds, |p| {
            SubsetVerdict::fails(p.witness.clone())
        })
}

/// Keeps the first profile for each distinct range pair.
pub(crate) fn dedup_profiles(
    profiles: impl IntoIterator<Item = RangeProfile>,
) -> Vec<RangeProfile> {
    let mut seen = std::collections::HashSet::new();
    profiles
        .into_iter()
        .filter(|p| seen.insert((p.left.clone(), p.right.clone())))
        .collect()
}

pub(crate) fn check_elem(pair: &AlgebraPair, a: Elem, b: Elem, b_prime: Elem) {
    assert!(a.index() < pair.left.size(), "left element out of range");
    assert!(b.index() < pair.right.size(), "right element out of range");
    assert!(
        b_prime.index() < pair.right.size(),
        "right element out of range"
    );
}
