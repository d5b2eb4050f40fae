//! Terms over a signature: syntax, evaluation, ranges and the fragment
//! classification used to pick an engine.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{is_variable_name, Algebra, Elem, Signature};
use crate::elemset::ElemSet;

mod enumerate;

pub use enumerate::{enumerate_terms, EnumerationError, DEFAULT_ENUMERATION_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    /// `z<n>`.
    Var(u32),
    Const(String),
    App(String, Vec<Term>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fragment {
    Ground,
    Monolinear,
    Linear,
    General,
}

impl Fragment {
    /// Whether a term tagged `tag` belongs to this fragment.
    ///
    /// Ground terms are linear but not monolinear (they have no variable).
    pub fn admits(self, tag: Fragment) -> bool {
        match self {
            Fragment::Ground => tag == Fragment::Ground,
            Fragment::Monolinear => tag == Fragment::Monolinear,
            Fragment::Linear => tag != Fragment::General,
            Fragment::General => true,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Fragment::Ground => "ground",
            Fragment::Monolinear => "monolinear",
            Fragment::Linear => "linear",
            Fragment::General => "general",
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TermError {
    #[error("term syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
    #[error("`{op}` expects {expected} arguments, got {got}")]
    ArityMismatch {
        op: String,
        expected: usize,
        got: usize,
    },
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("unbound variable z{0}")]
    UnboundVariable(u32),
    #[error("range of an empty term set is undefined")]
    EmptySet,
}

/// Assignment of variables (by number) to elements.
pub type Assignment = BTreeMap<u32, Elem>;

impl Term {
    pub fn var(n: u32) -> Term {
        Term::Var(n)
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(name.to_string())
    }

    pub fn app(op: &str, args: Vec<Term>) -> Term {
        Term::App(op.to_string(), args)
    }

    /// `op(op(...op(inner)))` with `n` applications of a unary symbol.
    pub fn unary_power(op: &str, n: usize, inner: Term) -> Term {
        (0..n).fold(inner, |t, _| Term::app(op, vec![t]))
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
            _ => 0,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            _ => 1,
        }
    }

    fn visit_vars(&self, f: &mut impl FnMut(u32)) {
        match self {
            Term::Var(v) => f(*v),
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.visit_vars(f)),
        }
    }

    /// Distinct variables in order of first occurrence.
    pub fn variables(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.visit_vars(&mut |v| {
            if !out.contains(&v) {
                out.push(v);
            }
        });
        out
    }

    pub fn occurrences(&self) -> usize {
        let mut n = 0;
        self.visit_vars(&mut |_| n += 1);
        n
    }

    pub fn fragment(&self) -> Fragment {
        let occ = self.occurrences();
        let distinct = self.variables().len();
        match (occ, distinct) {
            (0, _) => Fragment::Ground,
            (1, 1) => Fragment::Monolinear,
            (o, d) if o == d => Fragment::Linear,
            _ => Fragment::General,
        }
    }

    pub fn is_linear(&self) -> bool {
        self.fragment() != Fragment::General
    }

    /// Renames variables to z1, z2, ... by first occurrence.
    pub fn canonical(&self) -> Term {
        let order = self.variables();
        self.map_vars(&|v| order.iter().position(|&w| w == v).unwrap() as u32 + 1)
    }

    pub fn is_canonical(&self) -> bool {
        self.variables()
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i as u32 + 1)
    }

    pub fn map_vars(&self, f: &impl Fn(u32) -> u32) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(*v)),
            Term::Const(c) => Term::Const(c.clone()),
            Term::App(op, args) => {
                Term::App(op.clone(), args.iter().map(|a| a.map_vars(f)).collect())
            }
        }
    }

    /// Shifts every variable index up by `by`.
    pub fn shift_vars(&self, by: u32) -> Term {
        self.map_vars(&|v| v + by)
    }

    /// Checks arities and symbols against a signature.
    pub fn check(&self, sig: &Signature) -> Result<(), TermError> {
        match self {
            Term::Var(_) => Ok(()),
            Term::Const(c) => match sig.const_index(c) {
                Some(_) => Ok(()),
                None => Err(TermError::UnknownConstant(c.clone())),
            },
            Term::App(op, args) => {
                let i = sig
                    .op_index(op)
                    .ok_or_else(|| TermError::UnknownOperation(op.clone()))?;
                let expected = sig.arity(i);
                if expected != args.len() {
                    return Err(TermError::ArityMismatch {
                        op: op.clone(),
                        expected,
                        got: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.check(sig))
            }
        }
    }

    /// `exists z1 ... zn . y = t`, or `y = t` for ground terms.
    pub fn g_formula(&self) -> String {
        let t = self.canonical();
        let vars = t.variables();
        if vars.is_empty() {
            format!("y = {t}")
        } else {
            let names: Vec<String> = vars.iter().map(|v| format!("z{v}")).collect();
            format!("exists {} . y = {t}", names.join(" "))
        }
    }

    pub fn order_key(&self, sig: &Signature, vars: VarRank) -> OrderKey {
        let mut tokens = Vec::with_capacity(self.size());
        self.push_tokens(sig, vars, &mut tokens);
        OrderKey {
            depth: self.depth() as u32,
            size: tokens.len() as u32,
            tokens,
        }
    }

    fn push_tokens(&self, sig: &Signature, vars: VarRank, out: &mut Vec<(u8, u32)>) {
        let (var_class, op_class, const_class) = match vars {
            VarRank::First => (0, 1, 2),
            VarRank::Last => (2, 0, 1),
        };
        match self {
            Term::Var(v) => out.push((var_class, *v)),
            Term::Const(c) => out.push((
                const_class,
                sig.const_index(c).map_or(u32::MAX, |i| i as u32),
            )),
            Term::App(op, args) => {
                out.push((op_class, sig.op_index(op).map_or(u32::MAX, |i| i as u32)));
                args.iter().for_each(|a| a.push_tokens(sig, vars, out));
            }
        }
    }
}

/// Where variables sit in the symbol order used for lexicographic ties.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarRank {
    /// Enumeration order: variables, then operations, then constants.
    First,
    /// Witness order: operations, then constants, then variables.
    Last,
}

/// Sort key: depth, then node count, then preorder symbol sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrderKey {
    depth: u32,
    size: u32,
    tokens: Vec<(u8, u32)>,
}

/// Compares two terms in witness order.
pub fn witness_cmp(sig: &Signature, a: &Term, b: &Term) -> Ordering {
    a.order_key(sig, VarRank::Last)
        .cmp(&b.order_key(sig, VarRank::Last))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "z{v}"),
            Term::Const(c) => f.write_str(c),
            Term::App(op, args) => {
                write!(f, "{op}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for Term {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Term, TermError> {
        let mut p = TermParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let t = p.term()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

/// Parses a term and checks it against `sig`.
pub fn parse_term(s: &str, sig: &Signature) -> Result<Term, TermError> {
    let t: Term = s.parse()?;
    t.check(sig)?;
    Ok(t)
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn error(&self, message: &str) -> TermError {
        TermError::Syntax {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Term, TermError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric()
                || matches!(self.src[self.pos], b'_' | b'\'' | b'.'))
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a symbol"));
        }
        let name = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string();
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b'(') {
            self.pos += 1;
            let mut args = vec![self.term()?];
            loop {
                self.skip_ws();
                match self.src.get(self.pos) {
                    Some(b',') => {
                        self.pos += 1;
                        args.push(self.term()?);
                    }
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected `,` or `)`")),
                }
            }
            return Ok(Term::App(name, args));
        }
        if is_variable_name(&name) {
            let n = name[1..]
                .parse()
                .map_err(|_| self.error("variable index too large"))?;
            Ok(Term::Var(n))
        } else {
            Ok(Term::Const(name))
        }
    }
}

/// Evaluates `term` bottom-up through the algebra's tables.
pub fn eval_term(
    term: &Term,
    algebra: &Algebra,
    assignment: &Assignment,
) -> Result<Elem, TermError> {
    match term {
        Term::Var(v) => assignment
            .get(v)
            .copied()
            .ok_or(TermError::UnboundVariable(*v)),
        Term::Const(c) => algebra
            .signature()
            .const_index(c)
            .map(|i| algebra.constant_elems()[i])
            .ok_or_else(|| TermError::UnknownConstant(c.clone())),
        Term::App(op, args) => {
            let i = algebra
                .signature()
                .op_index(op)
                .ok_or_else(|| TermError::UnknownOperation(op.clone()))?;
            let expected = algebra.signature().arity(i);
            if expected != args.len() {
                return Err(TermError::ArityMismatch {
                    op: op.clone(),
                    expected,
                    got: args.len(),
                });
            }
            let vals = args
                .iter()
                .map(|a| eval_term(a, algebra, assignment))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(algebra.apply(i, &vals))
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Instr {
    Push(Elem),
    Load(usize),
    Apply(usize, usize),
}

/// A term resolved against one algebra, evaluated with a value stack.
#[derive(Clone, Debug)]
pub struct CompiledTerm<'a> {
    algebra: &'a Algebra,
    code: Vec<Instr>,
    vars: Vec<u32>,
}

impl<'a> CompiledTerm<'a> {
    pub fn new(term: &Term, algebra: &'a Algebra) -> Result<Self, TermError> {
        term.check(algebra.signature())?;
        let vars = term.variables();
        let mut code = Vec::with_capacity(term.size());
        Self::emit(term, algebra, &vars, &mut code);
        Ok(CompiledTerm {
            algebra,
            code,
            vars,
        })
    }

    fn emit(term: &Term, algebra: &Algebra, vars: &[u32], code: &mut Vec<Instr>) {
        let sig = algebra.signature();
        match term {
            Term::Var(v) => code.push(Instr::Load(vars.iter().position(|w| w == v).unwrap())),
            Term::Const(c) => code.push(Instr::Push(
                algebra.constant_elems()[sig.const_index(c).unwrap()],
            )),
            Term::App(op, args) => {
                args.iter().for_each(|a| Self::emit(a, algebra, vars, code));
                code.push(Instr::Apply(sig.op_index(op).unwrap(), args.len()));
            }
        }
    }

    /// Variables in slot order.
    pub fn variables(&self) -> &[u32] {
        &self.vars
    }

    /// Evaluates with slot `i` bound to `values[i]`.
    pub fn eval(&self, values: &[Elem], stack: &mut Vec<Elem>) -> Elem {
        stack.clear();
        for ins in &self.code {
            match *ins {
                Instr::Push(e) => stack.push(e),
                Instr::Load(i) => stack.push(values[i]),
                Instr::Apply(op, k) => {
                    let at = stack.len() - k;
                    let v = self.algebra.apply(op, &stack[at..]);
                    stack.truncate(at);
                    stack.push(v);
                }
            }
        }
        stack[0]
    }

    /// Range over all assignments of the carrier to the variables.
    pub fn range(&self) -> ElemSet {
        let n = self.algebra.size();
        let mut out = ElemSet::empty(n);
        let mut values = vec![Elem(0); self.vars.len()];
        let mut stack = Vec::new();
        loop {
            out.insert(self.eval(&values, &mut stack));
            if !advance(&mut values, n) {
                return out;
            }
        }
    }
}

/// Odometer step over `carrier^len`; false once every tuple was visited.
pub(crate) fn advance(values: &mut [Elem], n: usize) -> bool {
    for v in values.iter_mut().rev() {
        if v.index() + 1 < n {
            v.0 += 1;
            return true;
        }
        *v = Elem(0);
    }
    false
}

/// Range by enumerating every assignment.
pub fn range_by_assignments(term: &Term, algebra: &Algebra) -> Result<ElemSet, TermError> {
    Ok(CompiledTerm::new(term, algebra)?.range())
}

/// Set-lifted bottom-up evaluation where each variable denotes the whole
/// carrier. Equals the range when no variable repeats.
pub fn lifted_range(term: &Term, algebra: &Algebra) -> Result<ElemSet, TermError> {
    term.check(algebra.signature())?;
    Ok(lift(term, algebra))
}

fn lift(term: &Term, algebra: &Algebra) -> ElemSet {
    let n = algebra.size();
    let sig = algebra.signature();
    match term {
        Term::Var(_) => ElemSet::full(n),
        Term::Const(c) => {
            ElemSet::singleton(n, algebra.constant_elems()[sig.const_index(c).unwrap()])
        }
        Term::App(op, args) => {
            let sets: Vec<Vec<Elem>> = args
                .iter()
                .map(|a| lift(a, algebra).iter().collect())
                .collect();
            image(algebra, sig.op_index(op).unwrap(), &sets)
        }
    }
}

/// `{ f(o1..ok) : oi ∈ sets[i] }`.
pub(crate) fn image(algebra: &Algebra, op: usize, sets: &[Vec<Elem>]) -> ElemSet {
    let mut out = ElemSet::empty(algebra.size());
    if sets.iter().any(Vec::is_empty) {
        return out;
    }
    let mut idx = vec![0usize; sets.len()];
    let mut args: Vec<Elem> = sets.iter().map(|s| s[0]).collect();
    loop {
        out.insert(algebra.apply(op, &args));
        let mut k = sets.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < sets[k].len() {
                args[k] = sets[k][idx[k]];
                break;
            }
            idx[k] = 0;
            args[k] = sets[k][0];
        }
    }
}

/// `{ t^A(o) : o ∈ A^vars(t) }`.
pub fn range_of_term(term: &Term, algebra: &Algebra) -> Result<ElemSet, TermError> {
    if term.is_linear() {
        lifted_range(term, algebra)
    } else {
        range_by_assignments(term, algebra)
    }
}

/// Intersection of the ranges of a nonempty set of terms.
pub fn range_of_set<'t>(
    terms: impl IntoIterator<Item = &'t Term>,
    algebra: &Algebra,
) -> Result<ElemSet, TermError> {
    let mut out: Option<ElemSet> = None;
    for t in terms {
        let r = range_of_term(t, algebra)?;
        match &mut out {
            None => out = Some(r),
            Some(acc) => acc.intersect_with(&r),
        }
    }
    out.ok_or(TermError::EmptySet)
}

/// Whether `term` generalizes `a`, i.e. `a` lies in its range.
pub fn is_generalization(term: &Term, algebra: &Algebra, a: Elem) -> Result<bool, TermError> {
    Ok(range_of_term(term, algebra)?.contains(a))
}

pub fn classify_fragment(term: &Term) -> Fragment {
    term.fragment()
}

/// A structure in which terms can be evaluated, possibly partially.
pub trait Interpretation {
    type Value: Clone + PartialEq;

    /// `None` when the operation is undefined at `args`.
    fn apply(&self, op: &str, args: &[Self::Value]) -> Option<Self::Value>;

    fn constant(&self, name: &str) -> Option<Self::Value>;
}

impl Interpretation for Algebra {
    type Value = Elem;

    fn apply(&self, op: &str, args: &[Elem]) -> Option<Elem> {
        let i = self.signature().op_index(op)?;
        (self.signature().arity(i) == args.len()).then(|| Algebra::apply(self, i, args))
    }

    fn constant(&self, name: &str) -> Option<Elem> {
        let i = self.signature().const_index(name)?;
        Some(self.constant_elems()[i])
    }
}

/// Evaluates in an arbitrary interpretation; `None` if any step is undefined.
pub fn eval_in<I: Interpretation>(
    term: &Term,
    interp: &I,
    value_of: &impl Fn(u32) -> Option<I::Value>,
) -> Option<I::Value> {
    match term {
        Term::Var(v) => value_of(*v),
        Term::Const(c) => interp.constant(c),
        Term::App(op, args) => {
            let vals = args
                .iter()
                .map(|a| eval_in(a, interp, value_of))
                .collect::<Option<Vec<_>>>()?;
            interp.apply(op, &vals)
        }
    }
}
