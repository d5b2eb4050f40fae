//! Level-by-level closure of a finite set of term semantics under the
//! operations of a signature, keeping a small witness term per semantics.
//!
//! Level `d` holds the semantics first reached by a term of depth `d`. Only
//! tuples containing at least one child from level `d - 1` are tried at
//! level `d`, so each tuple is evaluated once.

use std::cmp::Ordering;
use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::algebra::Signature;
use crate::term::Term;

/// Term semantics that can be combined by operations.
pub trait Closure {
    type Key: Copy + Eq + Hash;

    /// Semantics of `op(args)`, or `None` when the application is not admitted.
    fn apply(&mut self, op: usize, args: &[Self::Key]) -> Option<Self::Key>;

    /// Size of a dense numbering of all keys, when small enough to index flat.
    fn dense_space(&self) -> Option<usize> {
        None
    }

    fn dense_slot(&self, _key: &Self::Key) -> usize {
        unreachable!("dense_slot requires dense_space")
    }

    /// A cheap form of the binary `op` with its first argument fixed to `x`,
    /// evaluated by `row_apply`.
    fn binary_row(&self, _op: usize, _x: &Self::Key) -> Option<(Self::Key, Self::Key)> {
        None
    }

    fn row_apply(&self, _row: &(Self::Key, Self::Key), _y: &Self::Key) -> Self::Key {
        unreachable!("row_apply requires binary_row")
    }

    /// Total number of possible keys, if known; saturation stops once all exist.
    fn key_space(&self) -> Option<u64> {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leaf {
    Var(u32),
    /// Index into the signature's constants.
    Const(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    Leaf(Leaf),
    Apply { op: u32, args_at: u32 },
}

#[derive(Clone, Debug)]
pub struct Entry<K> {
    pub key: K,
    pub recipe: Recipe,
    pub depth: u32,
    pub size: u32,
}

#[derive(Clone, Copy, Debug)]
pub struct SaturationOptions {
    /// Give every variable leaf of a witness its own variable (linear terms).
    pub fresh_vars: bool,
    pub max_depth: Option<usize>,
}

impl Default for SaturationOptions {
    fn default() -> Self {
        SaturationOptions {
            fresh_vars: false,
            max_depth: None,
        }
    }
}

enum Index {
    Dense(Vec<u32>),
    Hashed,
}

const NONE: u32 = u32::MAX;

/// Outcome of a closure run.
pub struct Saturation<K> {
    entries: Vec<Entry<K>>,
    arities: Vec<usize>,
    args: Vec<u32>,
    fresh_vars: bool,
    complete: bool,
    stopped: bool,
}

struct Candidate<K> {
    key: K,
    op: u32,
    args_at: u32,
    size: u32,
}

impl<K: Copy + Eq + Hash> Saturation<K> {
    /// Runs the closure from `leaves`. `observer` sees every key when it is
    /// first reached and may return `true` to abandon the run early.
    pub fn run<C: Closure<Key = K>>(
        closure: &mut C,
        sig: &Signature,
        leaves: Vec<(K, Leaf)>,
        opts: SaturationOptions,
        mut observer: impl FnMut(&K) -> bool,
    ) -> Saturation<K> {
        let arities: Vec<usize> = sig.operations.iter().map(|o| o.arity).collect();
        let mut sat = Saturation {
            entries: Vec::new(),
            arities,
            args: Vec::new(),
            fresh_vars: opts.fresh_vars,
            complete: false,
            stopped: false,
        };
        let mut index = match closure.dense_space() {
            Some(n) => Index::Dense(vec![NONE; n]),
            None => Index::Hashed,
        };
        let mut hashed: FxHashMap<K, u32> = FxHashMap::default();
        let key_space = closure.key_space();
        // Bit per dense slot already in `index`, checked before the full lookup.
        let mut seen: Vec<u64> = closure
            .dense_space()
            .map_or_else(Vec::new, |n| vec![0; n.div_ceil(64)]);

        let mut leaves = leaves;
        leaves.sort_by_key(|(_, l)| leaf_token(*l, opts.fresh_vars));
        for (key, leaf) in leaves {
            if lookup(&index, &hashed, closure, &key) != NONE {
                continue;
            }
            let id = sat.entries.len() as u32;
            store(&mut index, &mut hashed, closure, key, id);
            mark(&mut seen, closure, &key);
            sat.entries.push(Entry {
                key,
                recipe: Recipe::Leaf(leaf),
                depth: 0,
                size: 1,
            });
            if observer(&key) {
                sat.stopped = true;
                return sat;
            }
        }

        let mut keys: Vec<K> = sat.entries.iter().map(|e| e.key).collect();
        let mut frontier = (0usize, keys.len());
        let mut depth = 0usize;
        let mut cands: Vec<Candidate<K>> = Vec::new();
        let mut cand_index = match closure.dense_space() {
            Some(n) => Index::Dense(vec![NONE; n]),
            None => Index::Hashed,
        };
        let mut cand_hashed: FxHashMap<K, u32> = FxHashMap::default();
        let mut buf: Vec<K> = Vec::new();
        let mut idx: Vec<usize> = Vec::new();

        loop {
            if key_space.is_some_and(|s| keys.len() as u64 >= s) {
                sat.complete = true;
                break;
            }
            if frontier.0 == frontier.1 {
                sat.complete = true;
                break;
            }
            if opts.max_depth.is_some_and(|m| depth >= m) {
                break;
            }
            depth += 1;
            let (fs, fe) = frontier;
            cands.clear();
            cand_hashed.clear();

            'ops: for op in 0..sat.arities.len() {
                let k = sat.arities[op];
                for j in 0..k {
                    // Children before position j are old, j is on the frontier.
                    let ranges: Vec<(usize, usize)> = (0..k)
                        .map(|p| match p.cmp(&j) {
                            Ordering::Less => (0, fs),
                            Ordering::Equal => (fs, fe),
                            Ordering::Greater => (0, fe),
                        })
                        .collect();
                    if ranges.iter().any(|r| r.0 == r.1) {
                        continue;
                    }
                    macro_rules! offer {
                        ($idx:expr, $key:expr) => {{
                            let (at, key): (&[usize], K) = ($idx, $key);
                            let mut stop = false;
                            if lookup(&index, &hashed, closure, &key) == NONE {
                                let size = 1 + at.iter().map(|&i| sat.entries[i].size).sum::<u32>();
                                let c = lookup(&cand_index, &cand_hashed, closure, &key);
                                if c == NONE {
                                    let args_at = sat.args.len() as u32;
                                    sat.args.extend(at.iter().map(|&i| i as u32));
                                    store(
                                        &mut cand_index,
                                        &mut cand_hashed,
                                        closure,
                                        key,
                                        cands.len() as u32,
                                    );
                                    cands.push(Candidate {
                                        key,
                                        op: op as u32,
                                        args_at,
                                        size,
                                    });
                                    if observer(&key) {
                                        sat.stopped = true;
                                        stop = true;
                                    } else if key_space
                                        .is_some_and(|s| (keys.len() + cands.len()) as u64 >= s)
                                    {
                                        stop = true;
                                    }
                                } else {
                                    let cur = &cands[c as usize];
                                    let better = size < cur.size
                                        || (size == cur.size
                                            && sat.cmp_apply(op as u32, at, cur.op, cur.args_at)
                                                == Ordering::Less);
                                    if better {
                                        let args_at = sat.args.len() as u32;
                                        sat.args.extend(at.iter().map(|&i| i as u32));
                                        cands[c as usize] = Candidate {
                                            key,
                                            op: op as u32,
                                            args_at,
                                            size,
                                        };
                                    }
                                }
                            }
                            stop
                        }};
                    }
                    if k == 2 {
                        for i0 in ranges[0].0..ranges[0].1 {
                            let x = keys[i0];
                            if let (false, Some(row)) =
                                (seen.is_empty(), closure.binary_row(op, &x))
                            {
                                for i1 in ranges[1].0..ranges[1].1 {
                                    let key = closure.row_apply(&row, &keys[i1]);
                                    let slot = closure.dense_slot(&key);
                                    if seen[slot >> 6] >> (slot & 63) & 1 == 0
                                        && offer!(&[i0, i1], key)
                                    {
                                        break 'ops;
                                    }
                                }
                                continue;
                            }
                            for i1 in ranges[1].0..ranges[1].1 {
                                if let Some(key) = closure.apply(op, &[x, keys[i1]]) {
                                    if !seen.is_empty() {
                                        let slot = closure.dense_slot(&key);
                                        if seen[slot >> 6] >> (slot & 63) & 1 == 1 {
                                            continue;
                                        }
                                    }
                                    if offer!(&[i0, i1], key) {
                                        break 'ops;
                                    }
                                }
                            }
                        }
                        continue;
                    }
                    idx.clear();
                    idx.extend(ranges.iter().map(|r| r.0));
                    'tuples: loop {
                        buf.clear();
                        buf.extend(idx.iter().map(|&i| keys[i]));
                        if let Some(key) = closure.apply(op, &buf) {
                            if offer!(&idx, key) {
                                break 'ops;
                            }
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

            for c in &cands {
                clear(&mut cand_index, closure, &c.key);
            }
            let mut order: Vec<usize> = (0..cands.len()).collect();
            order.sort_by(|&x, &y| {
                let (cx, cy) = (&cands[x], &cands[y]);
                cx.size
                    .cmp(&cy.size)
                    .then_with(|| sat.cmp_recipes(cx.op, cx.args_at, cy.op, cy.args_at))
            });
            let start = keys.len();
            for &ci in &order {
                let c = &cands[ci];
                let id = sat.entries.len() as u32;
                store(&mut index, &mut hashed, closure, c.key, id);
                mark(&mut seen, closure, &c.key);
                sat.entries.push(Entry {
                    key: c.key,
                    recipe: Recipe::Apply {
                        op: c.op,
                        args_at: c.args_at,
                    },
                    depth: depth as u32,
                    size: c.size,
                });
                keys.push(c.key);
            }
            if sat.stopped {
                return sat;
            }
            frontier = (start, keys.len());
        }
        sat
    }

    pub fn entries(&self) -> &[Entry<K>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when the closure reached its fixpoint.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// True when the observer cut the run short.
    pub fn was_stopped(&self) -> bool {
        self.stopped
    }

    pub fn args(&self, id: usize) -> &[u32] {
        match self.entries[id].recipe {
            Recipe::Apply { op, args_at } => {
                let k = self.arities[op as usize];
                &self.args[args_at as usize..args_at as usize + k]
            }
            Recipe::Leaf(_) => &[],
        }
    }

    /// Materializes the witness of entry `id` in canonical variable form.
    pub fn witness(&self, id: usize, sig: &Signature) -> Term {
        let mut next = 0u32;
        self.build(id, sig, &mut next).canonical()
    }

    /// The witness with the leaves' own variables, not renumbered.
    pub fn raw_witness(&self, id: usize, sig: &Signature) -> Term {
        let mut next = 0u32;
        self.build(id, sig, &mut next)
    }

    fn build(&self, id: usize, sig: &Signature, next: &mut u32) -> Term {
        match self.entries[id].recipe {
            Recipe::Leaf(Leaf::Var(v)) => {
                if self.fresh_vars {
                    *next += 1;
                    Term::Var(*next)
                } else {
                    Term::Var(v)
                }
            }
            Recipe::Leaf(Leaf::Const(c)) => Term::Const(sig.constants[c].clone()),
            Recipe::Apply { op, .. } => {
                let args = self
                    .args(id)
                    .iter()
                    .map(|&a| self.build(a as usize, sig, next))
                    .collect();
                Term::App(sig.operations[op as usize].name.clone(), args)
            }
        }
    }

    /// Preorder symbol comparison of two entries' witnesses.
    pub fn lex_cmp(&self, i: usize, j: usize) -> Ordering {
        if i == j {
            return Ordering::Equal;
        }
        match (self.entries[i].recipe, self.entries[j].recipe) {
            (Recipe::Apply { op: a, args_at: x }, Recipe::Apply { op: b, args_at: y }) => {
                self.cmp_recipes(a, x, b, y)
            }
            (Recipe::Apply { .. }, Recipe::Leaf(_)) => Ordering::Less,
            (Recipe::Leaf(_), Recipe::Apply { .. }) => Ordering::Greater,
            (Recipe::Leaf(x), Recipe::Leaf(y)) => {
                leaf_token(x, self.fresh_vars).cmp(&leaf_token(y, self.fresh_vars))
            }
        }
    }

    fn cmp_recipes(&self, a: u32, x: u32, b: u32, y: u32) -> Ordering {
        a.cmp(&b).then_with(|| {
            let k = self.arities[a as usize];
            for p in 0..k {
                let o = self.lex_cmp(
                    self.args[x as usize + p] as usize,
                    self.args[y as usize + p] as usize,
                );
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    fn cmp_apply(&self, a: u32, args: &[usize], b: u32, y: u32) -> Ordering {
        a.cmp(&b).then_with(|| {
            for (p, &i) in args.iter().enumerate() {
                let o = self.lex_cmp(i, self.args[y as usize + p] as usize);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

fn leaf_token(l: Leaf, fresh_vars: bool) -> (u8, u32) {
    match l {
        Leaf::Const(c) => (0, c as u32),
        Leaf::Var(v) => (1, if fresh_vars { 0 } else { v }),
    }
}

#[inline]
fn lookup<C: Closure>(index: &Index, hashed: &FxHashMap<C::Key, u32>, c: &C, key: &C::Key) -> u32 {
    match index {
        Index::Dense(v) => v[c.dense_slot(key)],
        Index::Hashed => hashed.get(key).copied().unwrap_or(NONE),
    }
}

#[inline]
fn mark<C: Closure>(seen: &mut [u64], c: &C, key: &C::Key) {
    if !seen.is_empty() {
        let slot = c.dense_slot(key);
        seen[slot >> 6] |= 1 << (slot & 63);
    }
}

#[inline]
fn store<C: Closure>(
    index: &mut Index,
    hashed: &mut FxHashMap<C::Key, u32>,
    c: &C,
    key: C::Key,
    id: u32,
) {
    match index {
        Index::Dense(v) => v[c.dense_slot(&key)] = id,
        Index::Hashed => {
            hashed.insert(key, id);
        }
    }
}

fn clear<C: Closure>(index: &mut Index, c: &C, key: &C::Key) {
    if let Index::Dense(v) = index {
        v[c.dense_slot(key)] = NONE;
    }
}
