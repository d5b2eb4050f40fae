//! Unrestricted terms, tracked as the pair of functions they induce on a
//! fixed set of argument rows.
//!
//! With `K` variables the rows are all of `A^K` and `B^K`. When `K` reaches
//! `|A|·|B|` a smaller exact representation is used instead: variables are
//! indexed by `A × B`, the left side keeps only the row sending `(x, y)` to
//! `x`, and the right side keeps every row. A separating term can always be
//! rewritten to this shape by merging variables that take the same pair of
//! values in its witnessing assignments; merging only shrinks ranges.

use super::{
    check_elem, dedup_profiles, scan_subset, EngineError, Exactness, GenEngine, RangeProfile,
    SubsetVerdict,
};
use crate::algebra::{Algebra, AlgebraPair, Elem};
use crate::elemset::ElemSet;
use crate::saturation::{Closure, Leaf, Saturation, SaturationOptions};
use crate::term::Term;

/// Default bound on the size of the profile space.
pub const DEFAULT_PROFILE_CAP: u64 = 1 << 40;

const DENSE_LIMIT: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionProfile {
    pub var_count: usize,
    /// Values on the left rows, in row order.
    pub left_fun: Vec<Elem>,
    pub right_fun: Vec<Elem>,
    pub witness: Term,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rows {
    /// All assignments of `k` variables on both sides.
    Full(usize),
    /// Variables indexed by `A × B`; one left row, all right rows.
    Canonical,
}

/// Argument rows of one side: `rows[r][i]` is the value of variable `i`.
struct SideRows<'a> {
    algebra: &'a Algebra,
    rows: Vec<Vec<Elem>>,
    /// Minterms per operation for the two-element case.
    minterms: Vec<Vec<Vec<bool>>>,
}

impl<'a> SideRows<'a> {
    fn new(algebra: &'a Algebra, rows: Vec<Vec<Elem>>) -> Self {
        let sig = algebra.signature();
        let minterms = if algebra.size() == 2 {
            (0..sig.operations.len())
                .map(|op| {
                    let k = sig.arity(op);
                    (0..1usize << k)
                        .filter_map(|t| {
                            let args: Vec<Elem> = (0..k)
                                .map(|i| Elem((t >> (k - 1 - i) & 1) as u32))
                                .collect();
                            (algebra.apply(op, &args) == Elem(1))
                                .then(|| args.iter().map(|e| e.0 == 1).collect())
                        })
                        .collect()
                })
                .collect()
        } else {
            Vec::new()
        };
        SideRows {
            algebra,
            rows,
            minterms,
        }
    }

    fn n(&self) -> u64 {
        self.algebra.size() as u64
    }

    fn row_count(&self) -> usize {
        self.rows.len()
    }

    fn mask(&self) -> u64 {
        mask_of(self.rows.len())
    }

    fn encode(&self, values: impl Iterator<Item = Elem>) -> u64 {
        if self.algebra.size() == 2 {
            values
                .enumerate()
                .fold(0, |acc, (r, v)| acc | (v.0 as u64) << r)
        } else {
            let n = self.n();
            let mut code = 0;
            let mut place = 1;
            for v in values {
                code += v.0 as u64 * place;
                place = place.wrapping_mul(n);
            }
            code
        }
    }

    fn decode(&self, code: u64, out: &mut Vec<Elem>) {
        out.clear();
        if self.algebra.size() == 2 {
            out.extend((0..self.rows.len()).map(|r| Elem((code >> r & 1) as u32)));
        } else {
            let n = self.n();
            let mut c = code;
            for _ in 0..self.rows.len() {
                out.push(Elem((c % n) as u32));
                c /= n;
            }
        }
    }

    fn space(&self) -> u128 {
        (self.n() as u128).saturating_pow(self.rows.len() as u32)
    }

    fn projection(&self, i: usize) -> u64 {
        self.encode(self.rows.iter().map(|row| row[i]))
    }

    fn constant(&self, c: Elem) -> u64 {
        self.encode(self.rows.iter().map(|_| c))
    }

    #[inline]
    fn apply(&self, op: usize, args: &[u64], scratch: &mut [Vec<Elem>; 2]) -> u64 {
        if self.algebra.size() == 2 {
            let mask = self.mask();
            let mut out = 0;
            for m in &self.minterms[op] {
                let mut term = mask;
                for (x, &bit) in args.iter().zip(m) {
                    term &= if bit { *x } else { !*x & mask };
                }
                out |= term;
            }
            return out;
        }
        let k = args.len();
        let rows = self.rows.len();
        let [decoded, tuple] = scratch;
        decoded.clear();
        let mut one = Vec::new();
        for &a in args {
            self.decode(a, &mut one);
            decoded.extend_from_slice(&one);
        }
        let n = self.n();
        let mut code = 0;
        let mut place = 1u64;
        for r in 0..rows {
            tuple.clear();
            tuple.extend((0..k).map(|i| decoded[i * rows + r]));
            code += self.algebra.apply(op, tuple).0 as u64 * place;
            place = place.wrapping_mul(n);
        }
        code
    }
}

fn mask_of(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// All tuples of `n` elements of length `k`, first position most significant.
fn all_rows(n: usize, k: usize) -> Vec<Vec<Elem>> {
    let mut out = Vec::with_capacity(n.pow(k as u32));
    let mut row = vec![Elem(0); k];
    loop {
        out.push(row.clone());
        if !crate::term::advance(&mut row, n) {
            return out;
        }
    }
}

struct FunctionPairs<'a> {
    left: SideRows<'a>,
    right: SideRows<'a>,
    right_space: u64,
    bool_shift: Option<u32>,
    /// Two-element carriers: per operation and argument pattern, the key
    /// bits whose row maps that pattern to 1.
    bool_masks: Option<Vec<Vec<u64>>>,
    scratch: [Vec<Elem>; 2],
    la: Vec<u64>,
    ra: Vec<u64>,
}

impl FunctionPairs<'_> {
    fn pack(&self, l: u64, r: u64) -> u64 {
        match self.bool_shift {
            Some(s) => l << s | r,
            None => l * self.right_space + r,
        }
    }

    fn unpack(&self, key: u64) -> (u64, u64) {
        match self.bool_shift {
            Some(s) => (key >> s, key & mask_of(s as usize)),
            None => (key / self.right_space, key % self.right_space),
        }
    }

    fn bound(&self) -> u128 {
        self.left.space().saturating_mul(self.right.space())
    }
}

impl Closure for FunctionPairs<'_> {
    type Key = u64;

    #[inline]
    fn apply(&mut self, op: usize, args: &[u64]) -> Option<u64> {
        if let Some(masks) = &self.bool_masks {
            if let [x, y] = *args {
                let m = &masks[op];
                return Some((!x & !y & m[0]) | (!x & y & m[1]) | (x & !y & m[2]) | (x & y & m[3]));
            }
            let k = args.len();
            let mut out = 0;
            for (t, &m) in masks[op].iter().enumerate() {
                if m == 0 {
                    continue;
                }
                let mut term = m;
                for (i, &x) in args.iter().enumerate() {
                    term &= if t >> (k - 1 - i) & 1 == 1 { x } else { !x };
                }
                out |= term;
            }
            return Some(out);
        }
        self.la.clear();
        self.ra.clear();
        for &k in args {
            let (l, r) = self.unpack(k);
            self.la.push(l);
            self.ra.push(r);
        }
        let l = self.left.apply(op, &self.la, &mut self.scratch);
        let r = self.right.apply(op, &self.ra, &mut self.scratch);
        Some(self.pack(l, r))
    }

    fn dense_space(&self) -> Option<usize> {
        let b = self.bound();
        (b <= DENSE_LIMIT as u128).then_some(b as usize)
    }

    fn dense_slot(&self, key: &u64) -> usize {
        *key as usize
    }

    fn binary_row(&self, op: usize, x: &u64) -> Option<(u64, u64)> {
        let m = self.bool_masks.as_ref()?.get(op)?;
        if m.len() != 4 {
            return None;
        }
        // Per bit, y -> op(x, y) is constant, identity or negation.
        let one = (!x & m[1]) | (x & m[3]);
        let zero = (!x & m[0]) | (x & m[2]);
        Some((zero, one ^ zero))
    }

    #[inline]
    fn row_apply(&self, row: &(u64, u64), y: &u64) -> u64 {
        row.0 ^ (y & row.1)
    }

    fn key_space(&self) -> Option<u64> {
        u64::try_from(self.bound()).ok()
    }
}

/// Saturated function profiles of a pair together with their decoding data.
pub struct GeneralEngine {
    pair: AlgebraPair,
    rows: Rows,
    var_count: usize,
    functions: Vec<FunctionProfile>,
    profiles: Vec<RangeProfile>,
    exact_all: bool,
}

fn rows_for(pair: &AlgebraPair, k: usize) -> Rows {
    if k >= pair.left.size() * pair.right.size() {
        Rows::Canonical
    } else {
        Rows::Full(k)
    }
}

struct Setup<'a> {
    closure: FunctionPairs<'a>,
    leaves: Vec<(u64, Leaf)>,
    var_count: usize,
}

fn setup<'a>(pair: &'a AlgebraPair, rows: Rows, cap: u64) -> Result<Setup<'a>, EngineError> {
    let (na, nb) = (pair.left.size(), pair.right.size());
    let (var_count, left_rows, right_rows) = match rows {
        Rows::Full(k) => (k, na.checked_pow(k as u32), nb.checked_pow(k as u32)),
        Rows::Canonical => (na * nb, Some(1), nb.checked_pow((na * nb) as u32)),
    };
    let cap = cap.min(1 << 63);
    let too_big = |lr: String, rr: String| EngineError::CapExceeded {
        required: format!("{na}^{lr} * {nb}^{rr}"),
        cap,
    };
    let (Some(lr), Some(rr)) = (left_rows, right_rows) else {
        return Err(too_big("(huge)".into(), "(huge)".into()));
    };
    let bound = (na as u128)
        .saturating_pow(lr.min(u32::MAX as usize) as u32)
        .saturating_mul((nb as u128).saturating_pow(rr.min(u32::MAX as usize) as u32));
    if bound > cap as u128 || lr > 1 << 26 || rr > 1 << 26 {
        return Err(too_big(lr.to_string(), rr.to_string()));
    }
    let left_rows = match rows {
        Rows::Full(k) => all_rows(na, k),
        Rows::Canonical => vec![(0..na * nb).map(|i| Elem::from_index(i / nb)).collect()],
    };
    let right_rows = all_rows(nb, var_count);
    let left = SideRows::new(&pair.left, left_rows);
    let right = SideRows::new(&pair.right, right_rows);
    let bool_shift = (na == 2 && nb == 2).then_some(right.row_count() as u32);
    let right_space = u64::try_from(right.space()).unwrap_or(u64::MAX);
    let bool_masks = bool_shift.map(|shift| {
        let sig = pair.left.signature();
        let (lmask, rmask) = (mask_of(left.row_count()) << shift, mask_of(shift as usize));
        (0..sig.operations.len())
            .map(|op| {
                let k = sig.arity(op);
                (0..1usize << k)
                    .map(|t| {
                        let args: Vec<Elem> = (0..k)
                            .map(|i| Elem((t >> (k - 1 - i) & 1) as u32))
                            .collect();
                        let l = if pair.left.apply(op, &args) == Elem(1) {
                            lmask
                        } else {
                            0
                        };
                        let r = if pair.right.apply(op, &args) == Elem(1) {
                            rmask
                        } else {
                            0
                        };
                        l | r
                    })
                    .collect()
            })
            .collect()
    });
    let closure = FunctionPairs {
        left,
        right,
        right_space,
        bool_shift,
        bool_masks,
        scratch: [Vec::new(), Vec::new()],
        la: Vec::new(),
        ra: Vec::new(),
    };
    let mut leaves = Vec::new();
    for i in 0..var_count {
        let key = closure.pack(closure.left.projection(i), closure.right.projection(i));
        leaves.push((key, Leaf::Var(i as u32 + 1)));
    }
    for (i, (ca, cb)) in pair
        .left
        .constant_elems()
        .iter()
        .zip(pair.right.constant_elems())
        .enumerate()
    {
        let key = closure.pack(closure.left.constant(*ca), closure.right.constant(*cb));
        leaves.push((key, Leaf::Const(i)));
    }
    Ok(Setup {
        closure,
        leaves,
        var_count,
    })
}

/// Every pair of functions on `A^K × B^K` induced by a term in `K` variables.
pub fn saturate_profiles(
    pair: &AlgebraPair,
    k: usize,
    cap: u64,
) -> Result<Vec<FunctionProfile>, EngineError> {
    if k == 0 {
        return Err(EngineError::NoVariables);
    }
    let mut s = setup(pair, Rows::Full(k), cap)?;
    let sig = pair.left.signature();
    let sat = Saturation::run(
        &mut s.closure,
        sig,
        s.leaves,
        SaturationOptions::default(),
        |_| false,
    );
    Ok(collect_functions(&s.closure, &sat, sig, s.var_count))
}

fn collect_functions(
    closure: &FunctionPairs<'_>,
    sat: &Saturation<u64>,
    sig: &crate::algebra::Signature,
    var_count: usize,
) -> Vec<FunctionProfile> {
    let mut lv = Vec::new();
    let mut rv = Vec::new();
    sat.entries()
        .iter()
        .enumerate()
        .map(|(id, e)| {
            let (l, r) = closure.unpack(e.key);
            closure.left.decode(l, &mut lv);
            closure.right.decode(r, &mut rv);
            FunctionProfile {
                var_count,
                left_fun: lv.clone(),
                right_fun: rv.clone(),
                witness: sat.raw_witness(id, sig),
            }
        })
        .collect()
}

impl GeneralEngine {
    /// Saturates with `k` variables, switching to the exact representation
    /// once `k ≥ |A|·|B|`.
    pub fn new(pair: &AlgebraPair, k: usize, cap: u64) -> Result<Self, EngineError> {
        if k == 0 {
            return Err(EngineError::NoVariables);
        }
        let rows = rows_for(pair, k);
        let mut s = setup(pair, rows, cap)?;
        let sig = pair.left.signature();
        let sat = Saturation::run(
            &mut s.closure,
            sig,
            s.leaves,
            SaturationOptions::default(),
            |_| false,
        );
        let functions = collect_functions(&s.closure, &sat, sig, s.var_count);
        let (na, nb) = (pair.left.size(), pair.right.size());
        let profiles = dedup_profiles(functions.iter().map(|f| RangeProfile {
            left: ElemSet::from_elems(na, f.left_fun.iter().copied()),
            right: ElemSet::from_elems(nb, f.right_fun.iter().copied()),
            witness: f.witness.canonical(),
        }));
        let exact_all = rows == Rows::Canonical || sig.is_unary();
        Ok(GeneralEngine {
            pair: pair.clone(),
            rows,
            var_count: s.var_count,
            functions,
            profiles,
            exact_all,
        })
    }

    pub fn functions(&self) -> &[FunctionProfile] {
        &self.functions
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    /// True when variables are indexed by `A × B` (exact for all terms).
    pub fn is_canonical(&self) -> bool {
        self.rows == Rows::Canonical
    }
}

/// Decides `Gen(a,b) ⊆ Gen(a,b')` over saturated profiles.
pub fn general_gen_subset(
    profiles: &[FunctionProfile],
    universe: (usize, usize),
    a: Elem,
    b: Elem,
    b_prime: Elem,
) -> SubsetVerdict {
    if b == b_prime {
        return SubsetVerdict::holds();
    }
    profiles
        .iter()
        .find(|p| {
            let right = ElemSet::from_elems(universe.1, p.right_fun.iter().copied());
            p.left_fun.contains(&a) && right.contains(b) && !right.contains(b_prime)
        })
        .map_or_else(SubsetVerdict::holds, |p| {
            SubsetVerdict::fails(p.witness.clone())
        })
}

/// Decides the given inclusions, stopping the saturation as soon as every
/// inclusion is refuted. Verdicts equal those of [`GeneralEngine`] with the
/// same `k`; separators are valid but not necessarily minimal.
pub fn general_subset_queries(
    pair: &AlgebraPair,
    k: usize,
    cap: u64,
    queries: &[(Elem, Elem, Elem)],
) -> Result<Vec<SubsetVerdict>, EngineError> {
    if k == 0 {
        return Err(EngineError::NoVariables);
    }
    let rows = rows_for(pair, k);
    let mut s = setup(pair, rows, cap)?;
    let sig = pair.left.signature();
    let decode = Decoder::new(&s.closure);
    let mut open: Vec<bool> = queries.iter().map(|q| q.1 != q.2).collect();
    let mut remaining = open.iter().filter(|&&o| o).count();
    let sat = Saturation::run(
        &mut s.closure,
        sig,
        s.leaves,
        SaturationOptions::default(),
        |&key| {
            if remaining == 0 {
                return true;
            }
            let (l, r) = decode.ranges(key);
            for (q, o) in queries.iter().zip(open.iter_mut()) {
                if *o && l.contains(q.0) && r.contains(q.1) && !r.contains(q.2) {
                    *o = false;
                    remaining -= 1;
                }
            }
            remaining == 0
        },
    );
    let ranges: Vec<(ElemSet, ElemSet)> =
        sat.entries().iter().map(|e| decode.ranges(e.key)).collect();
    Ok(queries
        .iter()
        .map(|&(a, b, b2)| {
            if b == b2 {
                return SubsetVerdict::holds();
            }
            ranges
                .iter()
                .position(|(l, r)| l.contains(a) && r.contains(b) && !r.contains(b2))
                .map_or_else(SubsetVerdict::holds, |id| {
                    SubsetVerdict::fails(sat.witness(id, sig))
                })
        })
        .collect())
}

/// Range decoding detached from the closure's mutable state.
struct Decoder {
    na: usize,
    nb: usize,
    left_rows: usize,
    right_rows: usize,
    right_space: u64,
    bool_shift: Option<u32>,
}

impl Decoder {
    fn new(c: &FunctionPairs<'_>) -> Self {
        Decoder {
            na: c.left.algebra.size(),
            nb: c.right.algebra.size(),
            left_rows: c.left.row_count(),
            right_rows: c.right.row_count(),
            right_space: c.right_space,
            bool_shift: c.bool_shift,
        }
    }

    fn ranges(&self, key: u64) -> (ElemSet, ElemSet) {
        match self.bool_shift {
            Some(s) => {
                let (l, r) = (key >> s, key & mask_of(s as usize));
                (
                    bool_range(l, self.left_rows),
                    bool_range(r, self.right_rows),
                )
            }
            None => {
                let (l, r) = (key / self.right_space, key % self.right_space);
                (
                    digit_range(l, self.na, self.left_rows),
                    digit_range(r, self.nb, self.right_rows),
                )
            }
        }
    }
}

fn bool_range(bits: u64, rows: usize) -> ElemSet {
    let mut s = ElemSet::empty(2);
    if bits != mask_of(rows) {
        s.insert(Elem(0));
    }
    if bits != 0 {
        s.insert(Elem(1));
    }
    s
}

fn digit_range(mut code: u64, n: usize, rows: usize) -> ElemSet {
    let mut s = ElemSet::empty(n);
    for _ in 0..rows {
        s.insert(Elem((code % n as u64) as u32));
        code /= n as u64;
    }
    s
}

impl GenEngine for GeneralEngine {
    fn label(&self) -> Exactness {
        if self.exact_all {
            Exactness::Exact
        } else {
            Exactness::ExactForVars(self.var_count)
        }
    }

    fn pair(&self) -> &AlgebraPair {
        &self.pair
    }

    fn gen_subset(&self, a: Elem, b: Elem, b_prime: Elem) -> SubsetVerdict {
        check_elem(&self.pair, a, b, b_prime);
        scan_subset(&self.profiles, a, b, b_prime)
    }

    fn range_profiles(&self) -> &[RangeProfile] {
        &self.profiles
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{validate_pair, AlgebraBuilder};
    use crate::engine::monolinear::polynomial_clone;
    use crate::term::{eval_term, Assignment};

    fn two_unary() -> Algebra {
        AlgebraBuilder::new("T", ["0", "1"])
            .unary("f", &[("0", "1"), ("1", "1")])
            .build()
            .unwrap()
    }

    #[test]
    fn k1_matches_clone() {
        let a = two_unary();
        let fs = saturate_profiles(&AlgebraPair::single(&a), 1, DEFAULT_PROFILE_CAP).unwrap();
        let clone = polynomial_clone(&a);
        assert_eq!(fs.len(), clone.len());
        for (f, p) in fs.iter().zip(&clone) {
            assert_eq!(f.left_fun, p.table);
        }
    }

    #[test]
    fn one_element_single_profile() {
        let b = AlgebraBuilder::new("B", ["b"])
            .unary("f", &[("b", "b")])
            .build()
            .unwrap();
        let fs = saturate_profiles(&AlgebraPair::single(&b), 1, DEFAULT_PROFILE_CAP).unwrap();
        assert_eq!(fs.len(), 1);
    }

    #[test]
    fn idempotent_join_distinguishes_repeats() {
        let u = AlgebraBuilder::new("U", ["e", "s1"])
            .op_fn("m", 2, |t| t[0] | t[1])
            .all_constants()
            .build()
            .unwrap();
        let pair = AlgebraPair::single(&u);
        let fs = saturate_profiles(&pair, 2, DEFAULT_PROFILE_CAP).unwrap();
        let t12: Term = "m(z1, z2)".parse().unwrap();
        let t11: Term = "m(z1, z1)".parse().unwrap();
        let table = |t: &Term| -> Vec<Elem> {
            all_rows(2, 2)
                .iter()
                .map(|row| eval_term(t, &u, &Assignment::from([(1, row[0]), (2, row[1])])).unwrap())
                .collect()
        };
        assert_ne!(table(&t12), table(&t11));
        assert!(fs.iter().any(|f| f.left_fun == table(&t12)));
        assert!(fs.iter().any(|f| f.left_fun == table(&t11)));
        for f in &fs {
            assert_eq!(table(&f.witness), f.left_fun, "{}", f.witness);
        }
    }

    #[test]
    fn transitivity_pair_reverse_fails() {
        let a = AlgebraBuilder::new("A", ["a", "a'"])
            .unary("f", &[("a", "a"), ("a'", "a")])
            .unary("g", &[("a", "a'"), ("a'", "a'")])
            .build()
            .unwrap();
        let c = AlgebraBuilder::new("C", ["c", "c'"])
            .unary("f", &[("c", "c'"), ("c'", "c'")])
            .unary("g", &[("c", "c"), ("c'", "c")])
            .build()
            .unwrap();
        let pair = validate_pair(&a, &c).unwrap();
        let eng = GeneralEngine::new(&pair, 1, DEFAULT_PROFILE_CAP).unwrap();
        assert_eq!(eng.label(), Exactness::Exact);
        let (ea, ec, ec2) = (
            a.elem("a").unwrap(),
            c.elem("c").unwrap(),
            c.elem("c'").unwrap(),
        );
        assert!(eng.gen_subset(ea, ec, ec2).holds);
        let v = eng.gen_subset(ea, ec2, ec);
        assert!(!v.holds);
        let sep = v.separator.unwrap();
        assert!(crate::term::is_generalization(&sep, &a, ea).unwrap());
        assert!(crate::term::is_generalization(&sep, &c, ec2).unwrap());
        assert!(!crate::term::is_generalization(&sep, &c, ec).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let m = AlgebraBuilder::new("M", ["0", "1", "2"])
            .op_fn("m", 2, |t| (t[0] + t[1]) % 3)
            .build()
            .unwrap();
        let err = GeneralEngine::new(&AlgebraPair::single(&m), 3, DEFAULT_PROFILE_CAP)
            .err()
            .unwrap();
        assert!(matches!(err, EngineError::CapExceeded { .. }));
        assert!(GeneralEngine::new(&AlgebraPair::single(&m), 2, 1 << 20).is_err());
        assert!(GeneralEngine::new(&AlgebraPair::single(&m), 2, DEFAULT_PROFILE_CAP).is_ok());
        assert!(GeneralEngine::new(&AlgebraPair::single(&m), 1, DEFAULT_PROFILE_CAP).is_ok());
    }

    #[test]
    fn canonical_mode_for_small_pairs() {
        let x = AlgebraBuilder::new("X", ["0", "1"])
            .op_fn("m", 2, |t| usize::from(t[0] != t[1]))
            .build()
            .unwrap();
        let eng = GeneralEngine::new(&AlgebraPair::single(&x), 4, DEFAULT_PROFILE_CAP).unwrap();
        assert!(eng.is_canonical());
        assert_eq!(eng.label(), Exactness::Exact);
        // m(z1, z1) is constantly 0, so Gen(1) excludes it: Gen(0) ⊄ Gen(1).
        assert!(!eng.gen_subset(Elem(0), Elem(0), Elem(1)).holds);
        assert!(eng.gen_subset(Elem(1), Elem(1), Elem(0)).holds);
    }
}
