//! Reachable pairs of simultaneous ranges of linear terms.
//!
//! The range of a linear term is the set-lifted image of its children's
//! ranges, so closing `(carrier A, carrier B)` and the constants under lifted
//! operations yields every range pair a linear term can have.

use std::fmt::Write as _;

use super::{
    check_elem, scan_subset, EngineError, Exactness, GenEngine, RangeProfile, SubsetVerdict,
};
use crate::algebra::{Algebra, AlgebraPair, Elem};
use crate::elemset::ElemSet;
use crate::saturation::{Closure, Leaf, Saturation, SaturationOptions};

pub type LinearProfile = RangeProfile;

/// Largest carrier handled; range sets are packed into one machine word.
pub const MAX_LINEAR_CARRIER: usize = 64;

struct Side<'a> {
    algebra: &'a Algebra,
    /// `images[op][x]`: bit set of `op(x)` for unary operations.
    unary_images: Vec<Option<Vec<u64>>>,
}

impl<'a> Side<'a> {
    fn new(algebra: &'a Algebra) -> Self {
        let sig = algebra.signature();
        let unary_images = (0..sig.operations.len())
            .map(|op| {
                (sig.arity(op) == 1).then(|| {
                    algebra
                        .elements()
                        .map(|x| 1u64 << algebra.apply1(op, x).index())
                        .collect()
                })
            })
            .collect();
        Side {
            algebra,
            unary_images,
        }
    }

    fn full(&self) -> u64 {
        mask_of(self.algebra.size())
    }

    fn lift(&self, op: usize, args: &[u64]) -> u64 {
        if let Some(img) = &self.unary_images[op] {
            let mut out = 0;
            let mut s = args[0];
            while s != 0 {
                out |= img[s.trailing_zeros() as usize];
                s &= s - 1;
            }
            return out;
        }
        let sets: Vec<Vec<Elem>> = args
            .iter()
            .map(|&m| ElemSet::from_mask(self.algebra.size(), m).iter().collect())
            .collect();
        let img = crate::term::image(self.algebra, op, &sets);
        img.iter().fold(0, |acc, e| acc | 1 << e.index())
    }
}

fn mask_of(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

struct LiftedPairs<'a> {
    left: Side<'a>,
    right: Side<'a>,
    dense_shift: Option<usize>,
}

impl Closure for LiftedPairs<'_> {
    type Key = (u64, u64);

    fn apply(&mut self, op: usize, args: &[(u64, u64)]) -> Option<(u64, u64)> {
        let l: Vec<u64> = args.iter().map(|a| a.0).collect();
        let r: Vec<u64> = args.iter().map(|a| a.1).collect();
        Some((self.left.lift(op, &l), self.right.lift(op, &r)))
    }

    fn dense_space(&self) -> Option<usize> {
        self.dense_shift
            .map(|_| 1usize << (self.left.algebra.size() + self.right.algebra.size()))
    }

    fn dense_slot(&self, key: &(u64, u64)) -> usize {
        ((key.0 << self.dense_shift.unwrap()) | key.1) as usize
    }
}

/// All reachable range pairs of linear terms over a pair, with witnesses.
#[derive(Clone, Debug)]
pub struct ProfileFamily {
    pair: AlgebraPair,
    profiles: Vec<LinearProfile>,
}

/// Closes the seeds under set-lifted operations.
pub fn reachable_profiles(pair: &AlgebraPair) -> Result<ProfileFamily, EngineError> {
    for alg in [&pair.left, &pair.right] {
        if alg.size() > MAX_LINEAR_CARRIER {
            return Err(EngineError::CarrierTooLarge {
                algebra: alg.name().to_string(),
                size: alg.size(),
                max: MAX_LINEAR_CARRIER,
            });
        }
    }
    let (na, nb) = (pair.left.size(), pair.right.size());
    let mut closure = LiftedPairs {
        left: Side::new(&pair.left),
        right: Side::new(&pair.right),
        dense_shift: (na + nb <= 16).then_some(nb),
    };
    let sig = pair.left.signature();
    let mut leaves = vec![((closure.left.full(), closure.right.full()), Leaf::Var(1))];
    for (i, (ca, cb)) in pair
        .left
        .constant_elems()
        .iter()
        .zip(pair.right.constant_elems())
        .enumerate()
    {
        leaves.push(((1 << ca.index(), 1 << cb.index()), Leaf::Const(i)));
    }
    let opts = SaturationOptions {
        fresh_vars: true,
        max_depth: None,
    };
    let sat = Saturation::run(&mut closure, sig, leaves, opts, |_| false);
    let profiles = (0..sat.len())
        .map(|id| {
            let (l, r) = sat.entries()[id].key;
            LinearProfile {
                left: ElemSet::from_mask(na, l),
                right: ElemSet::from_mask(nb, r),
                witness: sat.witness(id, sig),
            }
        })
        .collect();
    Ok(ProfileFamily {
        pair: pair.clone(),
        profiles,
    })
}

/// True iff some linear term generalizes both `a` and `b`.
pub fn linear_gen_member(family: &ProfileFamily, a: Elem, b: Elem) -> bool {
    family
        .profiles
        .iter()
        .any(|p| p.left.contains(a) && p.right.contains(b))
}

/// Decides `Gen(a,b) ⊆ Gen(a,b')` over linear terms.
pub fn linear_gen_subset(family: &ProfileFamily, a: Elem, b: Elem, b_prime: Elem) -> SubsetVerdict {
    check_elem(&family.pair, a, b, b_prime);
    scan_subset(&family.profiles, a, b, b_prime)
}

impl ProfileFamily {
    pub fn profiles(&self) -> &[LinearProfile] {
        &self.profiles
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    /// One line per profile: `{a,b} | {c} | witness: g(f(z1))`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for p in &self.profiles {
            let _ = writeln!(
                out,
                "{} | {} | witness: {}",
                p.left.display(&self.pair.left),
                p.right.display(&self.pair.right),
                p.witness
            );
        }
        out
    }
}

/// The linear engine as a [`GenEngine`].
pub struct LinearEngine {
    family: ProfileFamily,
    exact: bool,
}

impl LinearEngine {
    pub fn new(pair: &AlgebraPair) -> Result<Self, EngineError> {
        let family = reachable_profiles(pair)?;
        let exact = pair.left.signature().is_unary();
        Ok(LinearEngine { family, exact })
    }

    pub fn family(&self) -> &ProfileFamily {
        &self.family
    }
}

impl GenEngine for LinearEngine {
    fn label(&self) -> Exactness {
        if self.exact {
            Exactness::Exact
        } else {
            Exactness::LinearFragment
        }
    }

    fn pair(&self) -> &AlgebraPair {
        &self.family.pair
    }

    fn gen_subset(&self, a: Elem, b: Elem, b_prime: Elem) -> SubsetVerdict {
        linear_gen_subset(&self.family, a, b, b_prime)
    }

    fn range_profiles(&self) -> &[RangeProfile] {
        &self.family.profiles
    }
}
