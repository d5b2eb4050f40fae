//! Seeded generators for random algebras, pairs and relabelings.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{validate_pair, Algebra, AlgebraBuilder, AlgebraPair, Elem};
use crate::morphism::ElementMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Operation symbols with their arities.
pub type Shape = Vec<(String, usize)>;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn table(rng: &mut impl Rng, n: usize, arity: usize) -> Vec<Elem> {
    (0..n.pow(arity as u32))
        .map(|_| Elem::from_index(rng.gen_range(0..n)))
        .collect()
}

/// Builds an algebra with random tables over the given carrier and shape.
pub fn random_tables(
    rng: &mut impl Rng,
    name: &str,
    carrier: Vec<String>,
    shape: &Shape,
    constants: &[String],
) -> Algebra {
    let n = carrier.len();
    let mut b = AlgebraBuilder::new(name, carrier);
    for (op, arity) in shape {
        b = b.op_table(op, *arity, table(rng, n, *arity));
    }
    b.constants(constants.iter().cloned())
        .build()
        .expect("random tables are well formed")
}

/// Monounary algebra with `1..=max_size` elements and one operation `f`.
pub fn random_monounary(rng: &mut impl Rng, max_size: usize) -> Algebra {
    let n = rng.gen_range(1..=max_size);
    random_tables(rng, "R", names("x", n), &vec![("f".into(), 1)], &[])
}

/// Unary algebra with `1..=max_size` elements and `1..=max_ops` operations.
pub fn random_unary(rng: &mut impl Rng, max_size: usize, max_ops: usize) -> Algebra {
    let n = rng.gen_range(1..=max_size);
    let k = rng.gen_range(1..=max_ops);
    let shape: Shape = ["f", "g", "h", "k"]
        .iter()
        .take(k)
        .map(|s| (s.to_string(), 1))
        .collect();
    random_tables(rng, "R", names("x", n), &shape, &[])
}

/// One or two operations, at most one of them binary.
pub fn random_shape(rng: &mut impl Rng) -> Shape {
    let count = rng.gen_range(1..=2);
    let binary_at = if rng.gen_bool(0.5) {
        Some(rng.gen_range(0..count))
    } else {
        None
    };
    (0..count)
        .map(|i| {
            let arity = if Some(i) == binary_at { 2 } else { 1 };
            (["f", "g"][i].to_string(), arity)
        })
        .collect()
}

/// Two algebras with `1..=max_size` elements over one random shape. Carriers
/// are drawn from a common name pool, so they may share names. Constants are
/// only added to shapes without a binary operation.
pub fn random_pair(rng: &mut impl Rng, max_size: usize) -> AlgebraPair {
    let shape = random_shape(rng);
    let (na, nb) = (rng.gen_range(1..=max_size), rng.gen_range(1..=max_size));
    let pool = names("e", na.max(nb) + max_size);
    let mut left: Vec<String> = pool.clone();
    left.shuffle(rng);
    left.truncate(na);
    let mut right: Vec<String> = pool;
    right.shuffle(rng);
    right.truncate(nb);
    let unary = shape.iter().all(|(_, k)| *k == 1);
    let shared: Vec<String> = left.iter().filter(|e| right.contains(e)).cloned().collect();
    let constants: Vec<String> = if unary && !shared.is_empty() && rng.gen_bool(0.3) {
        vec![shared[rng.gen_range(0..shared.len())].clone()]
    } else {
        Vec::new()
    };
    let a = random_tables(rng, "A", left, &shape, &constants);
    let b = random_tables(rng, "B", right, &shape, &constants);
    validate_pair(&a, &b).expect("shared shape and constants")
}

/// Two-element algebras `{0,1}` over a random shape, without constants.
pub fn random_boolean_pair(rng: &mut impl Rng) -> AlgebraPair {
    let shape = random_shape(rng);
    let a = random_tables(rng, "A", names("", 2), &shape, &[]);
    let b = random_tables(rng, "B", names("", 2), &shape, &[]);
    validate_pair(&a, &b).expect("shared shape")
}

/// A copy of `algebra` with shuffled carrier order and fresh names
/// `{prefix}0, {prefix}1, ...`, together with the isomorphism onto it.
/// Constants keep their names so the copy stays over the same signature.
pub fn isomorphic_copy(
    rng: &mut impl Rng,
    algebra: &Algebra,
    name: &str,
    prefix: &str,
) -> (Algebra, ElementMap) {
    let n = algebra.size();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let mut carrier: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    for &c in algebra.constant_elems() {
        carrier[perm[c.index()]] = algebra.name_of(c).to_string();
    }
    let sig = algebra.signature();
    let mut b = AlgebraBuilder::new(name, carrier);
    for (op, sym) in sig.operations.iter().enumerate() {
        b = b.op_fn(&sym.name, sym.arity, |args| {
            let orig: Vec<Elem> = args.iter().map(|&x| Elem::from_index(inv[x])).collect();
            perm[algebra.apply(op, &orig).index()]
        });
    }
    let copy = b
        .constants(sig.constants.iter().cloned())
        .build()
        .expect("relabeling is well formed");
    let table = (0..n).map(|i| Elem::from_index(perm[i])).collect();
    let map = ElementMap::new("iso", algebra, &copy, table).expect("relabeling is a valid map");
    (copy, map)
}
