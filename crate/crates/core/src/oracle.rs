//! Generalization sets computed straight from the definition, by enumerating
//! terms and evaluating them. Used as the reference for the engines.

use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraPair, Elem, Signature};
use crate::elemset::ElemSet;
use crate::engine::{
    dedup_profiles, scan_subset, Exactness, GenEngine, RangeProfile, SubsetVerdict,
};
use crate::term::{
    enumerate_terms, eval_in, is_generalization, range_of_term, EnumerationError, Fragment,
    Interpretation, Term, TermError, DEFAULT_ENUMERATION_CAP,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("{0}")]
    Unsupported(String),
}

/// `{ t : t enumerated within the bounds, a ∈ ran(t) }`, in enumeration order.
pub fn brute_force_gen(
    algebra: &Algebra,
    a: Elem,
    max_depth: usize,
    max_vars: usize,
    filter: Fragment,
) -> Result<Vec<Term>, OracleError> {
    let terms = enumerate_terms(
        algebra.signature(),
        max_depth,
        max_vars,
        filter,
        DEFAULT_ENUMERATION_CAP,
    )?;
    let mut out = Vec::new();
    for t in terms {
        if is_generalization(&t, algebra, a)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// Generalizations of `target` in a partial structure, where variables range
/// over `domain` and undefined applications are skipped.
#[allow(clippy::too_many_arguments)]
pub fn brute_force_gen_in<I: Interpretation>(
    interp: &I,
    sig: &Signature,
    domain: &[I::Value],
    target: &I::Value,
    max_depth: usize,
    max_vars: usize,
    filter: Fragment,
    cap: usize,
) -> Result<Vec<Term>, OracleError> {
    let terms = enumerate_terms(sig, max_depth, max_vars, filter, cap)?;
    Ok(terms
        .into_iter()
        .filter(|t| generalizes_in(interp, t, domain, target))
        .collect())
}

/// Whether some assignment over `domain` sends `term` to `target`.
pub fn generalizes_in<I: Interpretation>(
    interp: &I,
    term: &Term,
    domain: &[I::Value],
    target: &I::Value,
) -> bool {
    let vars = term.variables();
    if domain.is_empty() && !vars.is_empty() {
        return false;
    }
    let mut idx = vec![0usize; vars.len()];
    loop {
        let value_of = |v: u32| {
            vars.iter()
                .position(|&w| w == v)
                .map(|i| domain[idx[i]].clone())
        };
        if eval_in(term, interp, &value_of).as_ref() == Some(target) {
            return true;
        }
        let mut k = vars.len();
        loop {
            if k == 0 {
                return false;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < domain.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Enumerated terms of a pair together with their ranges on both sides.
pub struct PairOracle {
    pair: AlgebraPair,
    max_depth: usize,
    terms: Vec<Term>,
    left: Vec<ElemSet>,
    right: Vec<ElemSet>,
    profiles: Vec<RangeProfile>,
}

impl PairOracle {
    pub fn new(
        pair: &AlgebraPair,
        max_depth: usize,
        max_vars: usize,
        filter: Fragment,
        cap: usize,
    ) -> Result<Self, OracleError> {
        let sig = pair.left.signature();
        let terms = enumerate_terms(sig, max_depth, max_vars, filter, cap)?;
        let mut left = Vec::with_capacity(terms.len());
        let mut right = Vec::with_capacity(terms.len());
        for t in &terms {
            left.push(range_of_term(t, &pair.left)?);
            right.push(range_of_term(t, &pair.right)?);
        }
        let mut order: Vec<usize> = (0..terms.len()).collect();
        order.sort_by(|&i, &j| crate::term::witness_cmp(sig, &terms[i], &terms[j]));
        let profiles = dedup_profiles(order.iter().map(|&i| RangeProfile {
            left: left[i].clone(),
            right: right[i].clone(),
            witness: terms[i].clone(),
        }));
        Ok(PairOracle {
            pair: pair.clone(),
            max_depth,
            terms,
            left,
            right,
            profiles,
        })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Enumerated members of `Gen(a,b)`.
    pub fn shared(&self, a: Elem, b: Elem) -> Vec<&Term> {
        (0..self.terms.len())
            .filter(|&i| self.left[i].contains(a) && self.right[i].contains(b))
            .map(|i| &self.terms[i])
            .collect()
    }
}

impl GenEngine for PairOracle {
    fn label(&self) -> Exactness {
        Exactness::OracleBounded(self.max_depth)
    }

    fn pair(&self) -> &AlgebraPair {
        &self.pair
    }

    fn gen_subset(&self, a: Elem, b: Elem, b_prime: Elem) -> SubsetVerdict {
        scan_subset(&self.profiles, a, b, b_prime)
    }

    fn range_profiles(&self) -> &[RangeProfile] {
        &self.profiles
    }
}

/// Decides inclusions over all terms in at most `vars` variables of depth at
/// most `max_depth`. Terms are represented by the functions they induce on
/// `A^vars` and `B^vars`, which is exactly the information their ranges and
/// their compositions depend on. Both carriers must have two elements.
pub fn bounded_function_verdicts(
    pair: &AlgebraPair,
    vars: usize,
    max_depth: usize,
    queries: &[(Elem, Elem, Elem)],
) -> Result<Vec<bool>, OracleError> {
    if pair.left.size() != 2 || pair.right.size() != 2 {
        return Err(OracleError::Unsupported(
            "bounded function oracle needs two-element carriers".into(),
        ));
    }
    if vars == 0 || vars > 5 {
        return Err(OracleError::Unsupported(
            "bounded function oracle supports 1..=5 variables".into(),
        ));
    }
    let rows = 1usize << vars;
    let full = if rows == 32 {
        u32::MAX
    } else {
        (1u32 << rows) - 1
    };
    let sig = pair.left.signature();
    let minterms = |alg: &Algebra| -> Vec<Vec<Vec<bool>>> {
        (0..sig.operations.len())
            .map(|op| {
                let k = sig.arity(op);
                (0..1usize << k)
                    .filter_map(|t| {
                        let args: Vec<Elem> = (0..k)
                            .map(|i| Elem((t >> (k - 1 - i) & 1) as u32))
                            .collect();
                        (alg.apply(op, &args) == Elem(1))
                            .then(|| args.iter().map(|e| e.0 == 1).collect())
                    })
                    .collect()
            })
            .collect()
    };
    let (ml, mr) = (minterms(&pair.left), minterms(&pair.right));
    let eval = |terms: &[Vec<bool>], args: &[u32]| -> u32 {
        let mut out = 0;
        for m in terms {
            let mut acc = full;
            for (x, &bit) in args.iter().zip(m) {
                acc &= if bit { *x } else { !*x & full };
            }
            out |= acc;
        }
        out
    };
    let pack = |l: u32, r: u32| (l as u64) << 32 | r as u64;
    let in_range = |bits: u32, e: Elem| if e.0 == 1 { bits != 0 } else { bits != full };

    let mut open: Vec<bool> = queries.iter().map(|q| q.1 != q.2).collect();
    let mut remaining = open.iter().filter(|&&o| o).count();
    let check = |key: u64, open: &mut Vec<bool>, remaining: &mut usize| {
        let (l, r) = ((key >> 32) as u32, key as u32);
        for (q, o) in queries.iter().zip(open.iter_mut()) {
            if *o && in_range(l, q.0) && in_range(r, q.1) && !in_range(r, q.2) {
                *o = false;
                *remaining -= 1;
            }
        }
    };

    let mut seen: FxHashSet<u64> = FxHashSet::default();
    let mut all: Vec<u64> = Vec::new();
    for i in 0..vars {
        let proj = (0..rows).fold(0u32, |acc, r| acc | ((r >> (vars - 1 - i) & 1) as u32) << r);
        if seen.insert(pack(proj, proj)) {
            all.push(pack(proj, proj));
        }
    }
    for (ca, cb) in pair
        .left
        .constant_elems()
        .iter()
        .zip(pair.right.constant_elems())
    {
        let c = |e: &Elem| if e.0 == 1 { full } else { 0 };
        let key = pack(c(ca), c(cb));
        if seen.insert(key) {
            all.push(key);
        }
    }
    for &k in &all {
        check(k, &mut open, &mut remaining);
    }
    let mut la = Vec::new();
    let mut ra = Vec::new();
    // Functions first reached at the previous depth; every new tuple uses one.
    let mut fresh = (0usize, all.len());
    for depth in 1..=max_depth {
        if remaining == 0 {
            break;
        }
        let last = depth == max_depth;
        let (fs, fe) = fresh;
        let mut visit =
            |key: u64, all: &mut Vec<u64>, open: &mut Vec<bool>, remaining: &mut usize| {
                if last {
                    check(key, open, remaining);
                } else if seen.insert(key) {
                    all.push(key);
                    check(key, open, remaining);
                }
                *remaining == 0
            };
        'ops: for op in 0..sig.operations.len() {
            let k = sig.arity(op);
            for j in 0..k {
                let ranges: Vec<(usize, usize)> = (0..k)
                    .map(|p| match p.cmp(&j) {
                        std::cmp::Ordering::Less => (0, fs),
                        std::cmp::Ordering::Equal => (fs, fe),
                        std::cmp::Ordering::Greater => (0, fe),
                    })
                    .collect();
                if ranges.iter().any(|r| r.0 == r.1) {
                    continue;
                }
                if k == 2 {
                    for i0 in ranges[0].0..ranges[0].1 {
                        let (xl, xr) = ((all[i0] >> 32) as u32, all[i0] as u32);
                        // Per row, y -> op(x, y) is fixed by its values at y = 0 and y = 1.
                        let zero = pack(eval(&ml[op], &[xl, 0]), eval(&mr[op], &[xr, 0]));
                        let one = pack(eval(&ml[op], &[xl, full]), eval(&mr[op], &[xr, full]));
                        for i1 in ranges[1].0..ranges[1].1 {
                            let key = zero ^ (all[i1] & (one ^ zero));
                            if visit(key, &mut all, &mut open, &mut remaining) {
                                break 'ops;
                            }
                        }
                    }
                    continue;
                }
                let mut idx: Vec<usize> = ranges.iter().map(|r| r.0).collect();
                'tuples: loop {
                    la.clear();
                    ra.clear();
                    for &i in &idx {
                        la.push((all[i] >> 32) as u32);
                        ra.push(all[i] as u32);
                    }
                    let key = pack(eval(&ml[op], &la), eval(&mr[op], &ra));
                    if visit(key, &mut all, &mut open, &mut remaining) {
                        break 'ops;
                    }
                    let mut p = k;
                    while p > 0 {
                        p -= 1;
                        idx[p] += 1;
                        if idx[p] < ranges[p].1 {
                            continue 'tuples;
                        }
                        idx[p] = ranges[p].0;
                    }
                    break;
                }
            }
        }
        fresh = (fe, all.len());
    }
    Ok(queries
        .iter()
        .zip(&open)
        .map(|(q, o)| *o || q.1 == q.2)
        .collect())
}
