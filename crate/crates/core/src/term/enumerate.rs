use thiserror::Error;

use super::{Fragment, Term, VarRank};
use crate::algebra::Signature;

pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("term enumeration exceeds the cap of {cap} terms")]
    CapExceeded { cap: usize },
    #[error("max_vars must be at least 1")]
    NoVariables,
}

/// Placeholder leaf filled with a variable after shape generation.
const HOLE: u32 = 0;

/// All canonical terms within the bounds, sorted by depth, size and then
/// symbol order (variables first, then operations, then constants).
pub fn enumerate_terms(
    sig: &Signature,
    max_depth: usize,
    max_vars: usize,
    filter: Fragment,
    cap: usize,
) -> Result<Vec<Term>, EnumerationError> {
    if max_vars == 0 {
        return Err(EnumerationError::NoVariables);
    }
    let hole_limit = match filter {
        Fragment::Ground => 0,
        Fragment::Monolinear => 1,
        Fragment::Linear => max_vars,
        Fragment::General => usize::MAX,
    };

    // Every kept shape yields at least one term, so the cap bounds shapes too.
    let mut by_depth: Vec<Vec<(Term, usize)>> = Vec::new();
    let mut total = 0usize;
    let mut leaves = vec![(Term::Var(HOLE), 1)];
    leaves.extend(sig.constants.iter().map(|c| (Term::Const(c.clone()), 0)));
    leaves.retain(|(_, h)| *h <= hole_limit);
    total += leaves.len();
    by_depth.push(leaves);

    for depth in 1..=max_depth {
        let mut level = Vec::new();
        for op in &sig.operations {
            let pool: Vec<&(Term, usize)> = by_depth.iter().flatten().collect();
            let newest_start = pool.len() - by_depth[depth - 1].len();
            let mut idx = vec![0usize; op.arity];
            'tuples: loop {
                if idx.iter().any(|&i| i >= newest_start) {
                    let holes: usize = idx.iter().map(|&i| pool[i].1).sum();
                    if holes <= hole_limit {
                        let args = idx.iter().map(|&i| pool[i].0.clone()).collect();
                        level.push((Term::App(op.name.clone(), args), holes));
                        total += 1;
                        if total > cap {
                            return Err(EnumerationError::CapExceeded { cap });
                        }
                    }
                }
                for k in (0..op.arity).rev() {
                    idx[k] += 1;
                    if idx[k] < pool.len() {
                        continue 'tuples;
                    }
                    idx[k] = 0;
                }
                break;
            }
        }
        by_depth.push(level);
    }

    let mut out = Vec::new();
    for (shape, holes) in by_depth.into_iter().flatten() {
        match filter {
            Fragment::Ground => out.push(shape),
            Fragment::Monolinear => {
                if holes == 1 {
                    out.push(fill(&shape, &[1]));
                }
            }
            Fragment::Linear => {
                if holes <= max_vars {
                    let labels: Vec<u32> = (1..=holes as u32).collect();
                    out.push(fill(&shape, &labels));
                }
            }
            Fragment::General => {
                let mut labels = vec![1u32; holes];
                loop {
                    out.push(fill(&shape, &labels));
                    if out.len() > cap {
                        return Err(EnumerationError::CapExceeded { cap });
                    }
                    if !next_growth_string(&mut labels, max_vars as u32) {
                        break;
                    }
                }
            }
        }
        if out.len() > cap {
            return Err(EnumerationError::CapExceeded { cap });
        }
    }
    let mut keyed: Vec<_> = out
        .into_iter()
        .map(|t| (t.order_key(sig, VarRank::First), t))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, t)| t).collect())
}

/// Next restricted growth string (labels start at 1, each label at most one
/// above the running maximum) with labels bounded by `max`.
fn next_growth_string(labels: &mut [u32], max: u32) -> bool {
    for i in (1..labels.len()).rev() {
        let prefix_max = labels[..i].iter().copied().max().unwrap_or(0);
        if labels[i] <= prefix_max && labels[i] < max {
            labels[i] += 1;
            for l in &mut labels[i + 1..] {
                *l = 1;
            }
            return true;
        }
    }
    false
}

fn fill(shape: &Term, labels: &[u32]) -> Term {
    fn go(t: &Term, labels: &[u32], next: &mut usize) -> Term {
        match t {
            Term::Var(_) => {
                let v = labels[*next];
                *next += 1;
                Term::Var(v)
            }
            Term::Const(c) => Term::Const(c.clone()),
            Term::App(op, args) => Term::App(
                op.clone(),
                args.iter().map(|a| go(a, labels, next)).collect(),
            ),
        }
    }
    go(shape, labels, &mut 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::OpSymbol;

    fn sig(ops: &[(&str, usize)], consts: &[&str]) -> Signature {
        Signature {
            operations: ops
                .iter()
                .map(|&(n, a)| OpSymbol {
                    name: n.into(),
                    arity: a,
                })
                .collect(),
            constants: consts.iter().map(|c| c.to_string()).collect(),
        }
    }

    fn show(ts: &[Term]) -> Vec<String> {
        ts.iter().map(Term::to_string).collect()
    }

    #[test]
    fn unary_chain() {
        let ts = enumerate_terms(&sig(&[("f", 1)], &[]), 2, 1, Fragment::General, 100).unwrap();
        assert_eq!(show(&ts), ["z1", "f(z1)", "f(f(z1))"]);
    }

    #[test]
    fn two_unary_depth_one() {
        let ts = enumerate_terms(
            &sig(&[("f", 1), ("g", 1)], &[]),
            1,
            3,
            Fragment::General,
            100,
        )
        .unwrap();
        assert_eq!(show(&ts), ["z1", "f(z1)", "g(z1)"]);
    }

    #[test]
    fn binary_linear_with_constant() {
        let ts = enumerate_terms(&sig(&[("m", 2)], &["a"]), 1, 2, Fragment::Linear, 100).unwrap();
        assert_eq!(
            show(&ts),
            ["z1", "a", "m(z1, z2)", "m(z1, a)", "m(a, z1)", "m(a, a)"]
        );
    }

    #[test]
    fn general_includes_repeats() {
        let ts = enumerate_terms(&sig(&[("m", 2)], &[]), 1, 2, Fragment::General, 100).unwrap();
        assert_eq!(show(&ts), ["z1", "m(z1, z1)", "m(z1, z2)"]);
    }

    #[test]
    fn cap_is_reported() {
        let err =
            enumerate_terms(&sig(&[("m", 2)], &["a"]), 4, 3, Fragment::General, 1000).unwrap_err();
        assert_eq!(err, EnumerationError::CapExceeded { cap: 1000 });
    }

    #[test]
    fn growth_strings() {
        let mut l = vec![1, 1, 1];
        let mut all = vec![l.clone()];
        while next_growth_string(&mut l, 3) {
            all.push(l.clone());
        }
        assert_eq!(all.len(), 5);
        let mut l = vec![1, 1, 1];
        let mut n = 1;
        while next_growth_string(&mut l, 2) {
            n += 1;
        }
        assert_eq!(n, 4);
    }
}
