//! Unary polynomials: the functions induced by terms with exactly one
//! variable occurrence, where the remaining argument positions hold ground
//! terms.

use std::fmt::Write as _;

use rustc_hash::FxHashMap;

use super::{
    check_elem, dedup_profiles, scan_subset, EngineError, Exactness, GenEngine, RangeProfile,
    SubsetVerdict,
};
use crate::algebra::{Algebra, AlgebraPair, Elem};
use crate::elemset::ElemSet;
use crate::saturation::{Closure, Leaf, Saturation, SaturationOptions};
use crate::term::Term;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnaryPolynomial {
    pub table: Vec<Elem>,
    pub witness: Term,
}

impl UnaryPolynomial {
    pub fn range(&self, universe: usize) -> ElemSet {
        ElemSet::from_elems(universe, self.table.iter().copied())
    }

    /// `[a->b, b->c, ...]  witness: f(z1)`.
    pub fn report_line(&self, algebra: &Algebra) -> String {
        let cells: Vec<String> = self
            .table
            .iter()
            .enumerate()
            .map(|(x, y)| {
                format!(
                    "{}->{}",
                    algebra.name_of(Elem::from_index(x)),
                    algebra.name_of(*y)
                )
            })
            .collect();
        format!("[{}]  witness: {}", cells.join(", "), self.witness)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum MonoKey {
    /// Values of a ground term in both algebras.
    Ground(u32, u32),
    /// Interned polynomial tables in both algebras.
    Poly(u32, u32),
}

#[derive(Default)]
struct Interner {
    tables: Vec<Vec<Elem>>,
    ids: FxHashMap<Vec<Elem>, u32>,
}

impl Interner {
    fn intern(&mut self, t: Vec<Elem>) -> u32 {
        if let Some(&id) = self.ids.get(&t) {
            return id;
        }
        let id = self.tables.len() as u32;
        self.tables.push(t.clone());
        self.ids.insert(t, id);
        id
    }
}

struct Plugging<'a> {
    left: &'a Algebra,
    right: &'a Algebra,
    tables: [Interner; 2],
    buf: Vec<Elem>,
}

impl Plugging<'_> {
    fn side(&mut self, s: usize, op: usize, args: &[MonoKey], hole: usize) -> u32 {
        let alg = if s == 0 { self.left } else { self.right };
        let pick = |k: &MonoKey| match *k {
            MonoKey::Ground(l, r) | MonoKey::Poly(l, r) => {
                if s == 0 {
                    l
                } else {
                    r
                }
            }
        };
        let inner = self.tables[s].tables[pick(&args[hole]) as usize].clone();
        let mut out = Vec::with_capacity(alg.size());
        self.buf.clear();
        self.buf.extend(args.iter().map(|k| Elem(pick(k))));
        for x in 0..alg.size() {
            self.buf[hole] = inner[x];
            out.push(alg.apply(op, &self.buf));
        }
        self.tables[s].intern(out)
    }
}

impl Closure for Plugging<'_> {
    type Key = MonoKey;

    fn apply(&mut self, op: usize, args: &[MonoKey]) -> Option<MonoKey> {
        let mut holes = args
            .iter()
            .enumerate()
            .filter(|(_, k)| matches!(k, MonoKey::Poly(..)));
        match (holes.next(), holes.next()) {
            (None, _) => {
                let l: Vec<Elem> = args
                    .iter()
                    .map(|k| match k {
                        MonoKey::Ground(l, _) => Elem(*l),
                        _ => unreachable!(),
                    })
                    .collect();
                let r: Vec<Elem> = args
                    .iter()
                    .map(|k| match k {
                        MonoKey::Ground(_, r) => Elem(*r),
                        _ => unreachable!(),
                    })
                    .collect();
                Some(MonoKey::Ground(
                    self.left.apply(op, &l).0,
                    self.right.apply(op, &r).0,
                ))
            }
            (Some((hole, _)), None) => {
                let l = self.side(0, op, args, hole);
                let r = self.side(1, op, args, hole);
                Some(MonoKey::Poly(l, r))
            }
            _ => None,
        }
    }
}

/// Pairs of polynomials realised by one monolinear term in both algebras.
pub struct PolynomialPairs {
    pub pair: AlgebraPair,
    /// `(left, right)` polynomials in witness order.
    pub polys: Vec<(UnaryPolynomial, UnaryPolynomial)>,
}

/// Saturates monolinear terms over both algebras at once.
pub fn polynomial_pairs(pair: &AlgebraPair) -> PolynomialPairs {
    let sig = pair.left.signature();
    let identity = |a: &Algebra| a.elements().collect::<Vec<_>>();
    let mut closure = Plugging {
        left: &pair.left,
        right: &pair.right,
        tables: [Interner::default(), Interner::default()],
        buf: Vec::new(),
    };
    let id_l = closure.tables[0].intern(identity(&pair.left));
    let id_r = closure.tables[1].intern(identity(&pair.right));
    let mut leaves = vec![(MonoKey::Poly(id_l, id_r), Leaf::Var(1))];
    for (i, (ca, cb)) in pair
        .left
        .constant_elems()
        .iter()
        .zip(pair.right.constant_elems())
        .enumerate()
    {
        leaves.push((MonoKey::Ground(ca.0, cb.0), Leaf::Const(i)));
    }
    let sat = Saturation::run(
        &mut closure,
        sig,
        leaves,
        SaturationOptions::default(),
        |_| false,
    );
    let mut polys = Vec::new();
    for (id, e) in sat.entries().iter().enumerate() {
        if let MonoKey::Poly(l, r) = e.key {
            let witness = sat.witness(id, sig);
            polys.push((
                UnaryPolynomial {
                    table: closure.tables[0].tables[l as usize].clone(),
                    witness: witness.clone(),
                },
                UnaryPolynomial {
                    table: closure.tables[1].tables[r as usize].clone(),
                    witness,
                },
            ));
        }
    }
    PolynomialPairs {
        pair: pair.clone(),
        polys,
    }
}

/// Distinct unary polynomial functions of one algebra, each with a witness.
pub fn polynomial_clone(algebra: &Algebra) -> Vec<UnaryPolynomial> {
    let pairs = polynomial_pairs(&AlgebraPair::single(algebra));
    let mut seen = std::collections::HashSet::new();
    pairs
        .polys
        .into_iter()
        .map(|(l, _)| l)
        .filter(|p| seen.insert(p.table.clone()))
        .collect()
}

/// Polynomials of `clone` whose range contains `a`.
pub fn m_gen_signature(
    algebra: &Algebra,
    clone: &[UnaryPolynomial],
    a: Elem,
) -> Result<Vec<UnaryPolynomial>, crate::algebra::AlgebraError> {
    if a.index() >= algebra.size() {
        return Err(crate::algebra::AlgebraError::UnknownElement(
            a.0.to_string(),
        ));
    }
    Ok(clone
        .iter()
        .filter(|p| p.table.contains(&a))
        .cloned()
        .collect())
}

/// Clone report, one line per polynomial.
pub fn clone_report(algebra: &Algebra, clone: &[UnaryPolynomial]) -> String {
    let mut out = String::new();
    for p in clone {
        let _ = writeln!(out, "{}", p.report_line(algebra));
    }
    out
}

/// Monolinear fragment engine.
pub struct MonolinearEngine {
    pair: AlgebraPair,
    profiles: Vec<RangeProfile>,
}

impl MonolinearEngine {
    pub fn new(pair: &AlgebraPair) -> Result<Self, EngineError> {
        let pp = polynomial_pairs(pair);
        let (na, nb) = (pair.left.size(), pair.right.size());
        let profiles = dedup_profiles(pp.polys.into_iter().map(|(l, r)| RangeProfile {
            left: l.range(na),
            right: r.range(nb),
            witness: l.witness,
        }));
        Ok(MonolinearEngine {
            pair: pair.clone(),
            profiles,
        })
    }
}

impl GenEngine for MonolinearEngine {
    fn label(&self) -> Exactness {
        if self.pair.left.signature().is_unary() && self.pair.left.signature().constants.is_empty()
        {
            Exactness::Exact
        } else {
            Exactness::MonolinearFragment
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
    use crate::algebra::AlgebraBuilder;
    use crate::term::{eval_term, Assignment};

    pub(crate) fn power_set(u: usize) -> Algebra {
        let names: Vec<String> = (0..1usize << u).map(|m| subset_name(m, u)).collect();
        AlgebraBuilder::new("P", names)
            .op_fn("m", 2, |t| t[0] | t[1])
            .all_constants()
            .build()
            .unwrap()
    }

    pub(crate) fn subset_name(mask: usize, u: usize) -> String {
        let elems: Vec<String> = (0..u)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| (i + 1).to_string())
            .collect();
        if elems.is_empty() {
            "e".into()
        } else {
            format!("s{}", elems.join(""))
        }
    }

    #[test]
    fn power_set_polynomials_are_joins() {
        let p = power_set(2);
        let clone = polynomial_clone(&p);
        assert_eq!(clone.len(), 4);
        for poly in &clone {
            let c = poly.table[0];
            for x in p.elements() {
                assert_eq!(poly.table[x.index()].index(), x.index() | c.index());
            }
        }
        assert_eq!(clone[0].witness.to_string(), "z1");
    }

    #[test]
    fn m_gen_of_singletons() {
        let p = power_set(2);
        let clone = polynomial_clone(&p);
        let one = p.elem("s1").unwrap();
        let sig = m_gen_signature(&p, &clone, one).unwrap();
        let consts: Vec<usize> = sig.iter().map(|q| q.table[0].index()).collect();
        assert_eq!(consts, [0, 1]);
        let empty = p.elem("e").unwrap();
        assert_eq!(m_gen_signature(&p, &clone, empty).unwrap().len(), 1);
    }

    #[test]
    fn chain_polynomials_iterate_f() {
        let a = AlgebraBuilder::new("A", ["a", "b", "c", "d", "e"])
            .unary(
                "f",
                &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "c")],
            )
            .build()
            .unwrap();
        let clone = polynomial_clone(&a);
        let ws: Vec<String> = clone.iter().map(|p| p.witness.to_string()).collect();
        // f^5 = f^2 on this carrier.
        assert_eq!(
            ws,
            ["z1", "f(z1)", "f(f(z1))", "f(f(f(z1)))", "f(f(f(f(z1))))"]
        );
        assert_eq!(
            clone[1].report_line(&a),
            "[a->b, b->c, c->d, d->e, e->c]  witness: f(z1)"
        );
    }

    #[test]
    fn one_element_clone() {
        let b = AlgebraBuilder::new("B", ["b"])
            .unary("f", &[("b", "b")])
            .build()
            .unwrap();
        assert_eq!(polynomial_clone(&b).len(), 1);
    }

    #[test]
    fn witnesses_evaluate_to_tables() {
        let p = power_set(3);
        for poly in polynomial_clone(&p) {
            assert_eq!(poly.witness.fragment(), crate::term::Fragment::Monolinear);
            for x in p.elements() {
                let v = eval_term(&poly.witness, &p, &Assignment::from([(1, x)])).unwrap();
                assert_eq!(v, poly.table[x.index()]);
            }
        }
    }

    #[test]
    fn ground_subterms_fill_positions() {
        // Only `a` is distinguished; s(a) = b is reachable only as a ground term.
        let alg = AlgebraBuilder::new("G", ["a", "b", "c"])
            .op_fn("s", 1, |t| (t[0] + 1) % 3)
            .op_fn("p", 2, |t| if t[0] == 1 { t[1] } else { 0 })
            .constants(["a"])
            .build()
            .unwrap();
        let clone = polynomial_clone(&alg);
        assert!(clone.iter().any(
            |p| p.table == alg.elements().collect::<Vec<_>>() && p.witness.to_string() == "z1"
        ));
        // p(s(a), z1) is the identity again, p(a, z1) is constantly a.
        assert!(clone.iter().any(|p| p.table.iter().all(|&e| e == Elem(0))));
    }
}
