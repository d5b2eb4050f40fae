//! Finite algebras over a shared signature, the `.alg` text format and
//! validated pairs.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

mod parse;

pub use parse::{parse_algebra, ParseError};

/// Index of a carrier element, in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Elem {
        Elem(i as u32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpSymbol {
    pub name: String,
    pub arity: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    pub operations: Vec<OpSymbol>,
    pub constants: Vec<String>,
}

impl Signature {
    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.operations.iter().position(|o| o.name == name)
    }

    pub fn const_index(&self, name: &str) -> Option<usize> {
        self.constants.iter().position(|c| c == name)
    }

    pub fn arity(&self, op: usize) -> usize {
        self.operations[op].arity
    }

    pub fn max_arity(&self) -> usize {
        self.operations.iter().map(|o| o.arity).max().unwrap_or(0)
    }

    /// True when every operation is unary.
    pub fn is_unary(&self) -> bool {
        self.operations.iter().all(|o| o.arity == 1)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("invalid element name `{0}`")]
    InvalidElementName(String),
    #[error("duplicate operation `{0}`")]
    DuplicateOperation(String),
    #[error("invalid operation symbol `{0}`")]
    InvalidOperationSymbol(String),
    #[error("operation `{0}` must have arity at least 1")]
    NullaryOperation(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
    #[error("constant `{name}` clashes with {what}")]
    ConstantClash { name: String, what: &'static str },
    #[error("missing table row {op}({})", .tuple.join(", "))]
    MissingRow { op: String, tuple: Vec<String> },
    #[error("duplicate table row {op}({})", .tuple.join(", "))]
    DuplicateRow { op: String, tuple: Vec<String> },
    #[error("row {op}({}) has {got} arguments, expected {expected}", .tuple.join(", "))]
    RowArity {
        op: String,
        tuple: Vec<String>,
        got: usize,
        expected: usize,
    },
    #[error("output `{value}` of {op} is not in the carrier")]
    OutOfCarrier { op: String, value: String },
    #[error("table of `{op}` has {got} entries, expected {expected}")]
    TableSize {
        op: String,
        got: usize,
        expected: usize,
    },
    #[error("signature mismatch at `{symbol}`: {detail}")]
    SignatureMismatch { symbol: String, detail: String },
}

pub(crate) fn is_element_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '.'))
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Matches the variable syntax `z[0-9]+`.
pub fn is_variable_name(s: &str) -> bool {
    s.len() > 1 && s.starts_with('z') && s[1..].bytes().all(|b| b.is_ascii_digit())
}

/// A finite algebra. Immutable once built.
#[derive(Clone, Debug)]
pub struct Algebra {
    name: String,
    carrier: Vec<String>,
    index: HashMap<String, Elem>,
    signature: Signature,
    tables: Vec<Vec<Elem>>,
    constants: Vec<Elem>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.carrier == other.carrier
            && self.signature == other.signature
            && self.tables == other.tables
    }
}

impl Eq for Algebra {}

impl Algebra {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.carrier.len()).map(Elem::from_index)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn name_of(&self, e: Elem) -> &str {
        &self.carrier[e.index()]
    }

    pub fn elem(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    /// Like [`Algebra::elem`] but reports the missing name.
    pub fn require(&self, name: &str) -> Result<Elem, AlgebraError> {
        self.elem(name)
            .ok_or_else(|| AlgebraError::UnknownElement(name.to_string()))
    }

    /// Elements named by the signature's constant symbols, in signature order.
    pub fn constant_elems(&self) -> &[Elem] {
        &self.constants
    }

    pub fn is_distinguished(&self, e: Elem) -> bool {
        self.constants.contains(&e)
    }

    pub fn table(&self, op: usize) -> &[Elem] {
        &self.tables[op]
    }

    /// Row index of an argument tuple; the first argument is most significant.
    #[inline]
    pub fn row_index(&self, args: &[Elem]) -> usize {
        let n = self.carrier.len();
        args.iter().fold(0, |acc, a| acc * n + a.index())
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[Elem]) -> Elem {
        debug_assert_eq!(args.len(), self.signature.operations[op].arity);
        self.tables[op][self.row_index(args)]
    }

    #[inline]
    pub fn apply1(&self, op: usize, x: Elem) -> Elem {
        self.tables[op][x.index()]
    }

    /// Renders the algebra in the `.alg` format.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("algebra {}\n", self.name));
        out.push_str(&format!("elements {}\n", self.carrier.join(" ")));
        if self.constants.is_empty() {
            out.push_str("constants none\n");
        } else {
            out.push_str(&format!(
                "constants {}\n",
                self.signature.constants.join(" ")
            ));
        }
        let n = self.size();
        for (i, op) in self.signature.operations.iter().enumerate() {
            out.push_str(&format!("op {}/{}\n", op.name, op.arity));
            let mut tuple = vec![0usize; op.arity];
            for row in 0..n.pow(op.arity as u32) {
                let mut r = row;
                for slot in tuple.iter_mut().rev() {
                    *slot = r % n;
                    r /= n;
                }
                let names: Vec<&str> = tuple.iter().map(|&t| self.carrier[t].as_str()).collect();
                let value = self.name_of(self.tables[i][row]);
                if op.arity == 1 {
                    out.push_str(&format!("  {} -> {}\n", names[0], value));
                } else {
                    out.push_str(&format!("  ({}) -> {}\n", names.join(", "), value));
                }
            }
        }
        out.push_str("end\n");
        out
    }

    /// Same structure under new element names, given in carrier order.
    pub fn renamed(&self, name: &str, names: &[String]) -> Result<Algebra, AlgebraError> {
        let mut b = AlgebraBuilder::new(name, names.iter().cloned());
        for (i, op) in self.signature.operations.iter().enumerate() {
            b = b.op_table(&op.name, op.arity, self.tables[i].clone());
        }
        let consts = self.constants.iter().map(|c| names[c.index()].clone());
        b.constants(consts).build()
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

enum TableSpec {
    Dense(Vec<Elem>),
    Rows(Vec<(Vec<String>, String)>),
}

/// Programmatic construction with the same validation as the parser.
pub struct AlgebraBuilder {
    name: String,
    carrier: Vec<String>,
    ops: Vec<(String, usize, TableSpec)>,
    constants: ConstSpec,
}

enum ConstSpec {
    None,
    All,
    Some(Vec<String>),
}

impl AlgebraBuilder {
    pub fn new<S: Into<String>>(name: &str, elements: impl IntoIterator<Item = S>) -> Self {
        AlgebraBuilder {
            name: name.to_string(),
            carrier: elements.into_iter().map(Into::into).collect(),
            ops: Vec::new(),
            constants: ConstSpec::None,
        }
    }

    /// Dense table, row-major with the first argument most significant.
    pub fn op_table(mut self, symbol: &str, arity: usize, table: Vec<Elem>) -> Self {
        self.ops
            .push((symbol.to_string(), arity, TableSpec::Dense(table)));
        self
    }

    /// Table given by named rows, e.g. `[(&["a"], "b")]`.
    pub fn op_rows(mut self, symbol: &str, arity: usize, rows: &[(&[&str], &str)]) -> Self {
        let rows = rows
            .iter()
            .map(|(args, v)| (args.iter().map(|s| s.to_string()).collect(), v.to_string()))
            .collect();
        self.ops
            .push((symbol.to_string(), arity, TableSpec::Rows(rows)));
        self
    }

    pub(crate) fn op_rows_owned(
        mut self,
        symbol: &str,
        arity: usize,
        rows: Vec<(Vec<String>, String)>,
    ) -> Self {
        self.ops
            .push((symbol.to_string(), arity, TableSpec::Rows(rows)));
        self
    }

    /// Unary operation from `(input, output)` name pairs.
    pub fn unary(self, symbol: &str, map: &[(&str, &str)]) -> Self {
        let rows: Vec<(Vec<&str>, &str)> = map.iter().map(|(x, y)| (vec![*x], *y)).collect();
        let rows: Vec<(&[&str], &str)> = rows.iter().map(|(a, v)| (a.as_slice(), *v)).collect();
        self.op_rows(symbol, 1, &rows)
    }

    /// Table computed from element indices.
    pub fn op_fn(self, symbol: &str, arity: usize, f: impl Fn(&[usize]) -> usize) -> Self {
        let n = self.carrier.len();
        let mut table = Vec::with_capacity(n.pow(arity as u32));
        let mut tuple = vec![0usize; arity];
        for row in 0..n.pow(arity as u32) {
            let mut r = row;
            for slot in tuple.iter_mut().rev() {
                *slot = r % n;
                r /= n;
            }
            table.push(Elem::from_index(f(&tuple)));
        }
        self.op_table(symbol, arity, table)
    }

    pub fn constants<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.constants = ConstSpec::Some(names.into_iter().map(Into::into).collect());
        self
    }

    pub fn all_constants(mut self) -> Self {
        self.constants = ConstSpec::All;
        self
    }

    pub fn build(self) -> Result<Algebra, AlgebraError> {
        if self.carrier.is_empty() {
            return Err(AlgebraError::EmptyCarrier);
        }
        let mut index = HashMap::new();
        for (i, e) in self.carrier.iter().enumerate() {
            if !is_element_name(e) {
                return Err(AlgebraError::InvalidElementName(e.clone()));
            }
            if index.insert(e.clone(), Elem::from_index(i)).is_some() {
                return Err(AlgebraError::DuplicateElement(e.clone()));
            }
        }
        let n = self.carrier.len();
        let mut signature = Signature::default();
        let mut tables = Vec::new();
        for (symbol, arity, spec) in self.ops {
            if !is_identifier(&symbol) || is_variable_name(&symbol) {
                return Err(AlgebraError::InvalidOperationSymbol(symbol));
            }
            if arity == 0 {
                return Err(AlgebraError::NullaryOperation(symbol));
            }
            if signature.op_index(&symbol).is_some() {
                return Err(AlgebraError::DuplicateOperation(symbol));
            }
            let rows = n.pow(arity as u32);
            let table = match spec {
                TableSpec::Dense(t) => {
                    if t.len() != rows {
                        return Err(AlgebraError::TableSize {
                            op: symbol,
                            got: t.len(),
                            expected: rows,
                        });
                    }
                    if let Some(bad) = t.iter().find(|e| e.index() >= n) {
                        return Err(AlgebraError::OutOfCarrier {
                            op: symbol,
                            value: bad.0.to_string(),
                        });
                    }
                    t
                }
                TableSpec::Rows(given) => {
                    let mut slots: Vec<Option<Elem>> = vec![None; rows];
                    for (args, value) in given {
                        if args.len() != arity {
                            return Err(AlgebraError::RowArity {
                                op: symbol,
                                got: args.len(),
                                expected: arity,
                                tuple: args,
                            });
                        }
                        let mut row = 0;
                        for a in &args {
                            let e = index
                                .get(a)
                                .ok_or_else(|| AlgebraError::UnknownElement(a.clone()))?;
                            row = row * n + e.index();
                        }
                        let v = *index
                            .get(&value)
                            .ok_or_else(|| AlgebraError::OutOfCarrier {
                                op: symbol.clone(),
                                value: value.clone(),
                            })?;
                        if slots[row].replace(v).is_some() {
                            return Err(AlgebraError::DuplicateRow {
                                op: symbol,
                                tuple: args,
                            });
                        }
                    }
                    let mut table = Vec::with_capacity(rows);
                    for (row, slot) in slots.into_iter().enumerate() {
                        match slot {
                            Some(v) => table.push(v),
                            None => {
                                return Err(AlgebraError::MissingRow {
                                    tuple: decode_row(row, arity, &self.carrier),
                                    op: symbol,
                                })
                            }
                        }
                    }
                    table
                }
            };
            signature.operations.push(OpSymbol {
                name: symbol,
                arity,
            });
            tables.push(table);
        }
        let names: Vec<String> = match self.constants {
            ConstSpec::None => Vec::new(),
            ConstSpec::All => self.carrier.clone(),
            ConstSpec::Some(v) => v,
        };
        let mut constants = Vec::new();
        for c in names {
            let e = *index
                .get(&c)
                .ok_or_else(|| AlgebraError::UnknownElement(c.clone()))?;
            if constants.contains(&e) {
                continue;
            }
            if signature.op_index(&c).is_some() {
                return Err(AlgebraError::ConstantClash {
                    name: c,
                    what: "an operation symbol",
                });
            }
            if is_variable_name(&c) {
                return Err(AlgebraError::ConstantClash {
                    name: c,
                    what: "the variable syntax",
                });
            }
            constants.push(e);
            signature.constants.push(c);
        }
        Ok(Algebra {
            name: self.name,
            carrier: self.carrier,
            index,
            signature,
            tables,
            constants,
        })
    }
}

fn decode_row(mut row: usize, arity: usize, carrier: &[String]) -> Vec<String> {
    let n = carrier.len();
    let mut tuple = vec![String::new(); arity];
    for slot in tuple.iter_mut().rev() {
        *slot = carrier[row % n].clone();
        row /= n;
    }
    tuple
}

/// Two algebras over the same signature, with the right algebra's operations
/// and constants reordered to match the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPair {
    pub left: Algebra,
    pub right: Algebra,
    right_twin: Vec<Option<Elem>>,
    left_twin: Vec<Option<Elem>>,
}

impl AlgebraPair {
    /// A pair of an algebra with itself.
    pub fn single(a: &Algebra) -> AlgebraPair {
        validate_pair(a, a).expect("an algebra matches its own signature")
    }

    /// Right element with the same name as left element `a`.
    pub fn right_twin(&self, a: Elem) -> Option<Elem> {
        self.right_twin[a.index()]
    }

    /// Left element with the same name as right element `b`.
    pub fn left_twin(&self, b: Elem) -> Option<Elem> {
        self.left_twin[b.index()]
    }

    /// Names shared by both carriers, in left declaration order.
    pub fn overlap(&self) -> Vec<(Elem, Elem)> {
        self.left
            .elements()
            .filter_map(|a| self.right_twin(a).map(|b| (a, b)))
            .collect()
    }

    pub fn swapped(&self) -> AlgebraPair {
        validate_pair(&self.right, &self.left).expect("swapping preserves the signature")
    }

    pub fn is_single(&self) -> bool {
        self.left == self.right
    }
}

/// Checks that both algebras share a signature and records the name overlap.
pub fn validate_pair(left: &Algebra, right: &Algebra) -> Result<AlgebraPair, AlgebraError> {
    let ls = left.signature();
    let rs = right.signature();
    for op in &ls.operations {
        match rs.operations.iter().find(|o| o.name == op.name) {
            None => {
                return Err(AlgebraError::SignatureMismatch {
                    symbol: op.name.clone(),
                    detail: format!("missing from `{}`", right.name()),
                })
            }
            Some(o) if o.arity != op.arity => {
                return Err(AlgebraError::SignatureMismatch {
                    symbol: op.name.clone(),
                    detail: format!("arity {} vs {}", op.arity, o.arity),
                })
            }
            Some(_) => {}
        }
    }
    if let Some(op) = rs
        .operations
        .iter()
        .find(|o| ls.op_index(&o.name).is_none())
    {
        return Err(AlgebraError::SignatureMismatch {
            symbol: op.name.clone(),
            detail: format!("missing from `{}`", left.name()),
        });
    }
    for c in &ls.constants {
        if rs.const_index(c).is_none() {
            return Err(AlgebraError::SignatureMismatch {
                symbol: c.clone(),
                detail: format!("constant not distinguished in `{}`", right.name()),
            });
        }
    }
    if let Some(c) = rs.constants.iter().find(|c| ls.const_index(c).is_none()) {
        return Err(AlgebraError::SignatureMismatch {
            symbol: c.clone(),
            detail: format!("constant not distinguished in `{}`", left.name()),
        });
    }

    let mut right = right.clone();
    if right.signature != left.signature {
        let tables = ls
            .operations
            .iter()
            .map(|op| right.tables[rs.op_index(&op.name).unwrap()].clone())
            .collect();
        let constants = ls
            .constants
            .iter()
            .map(|c| right.elem(c).unwrap())
            .collect();
        right.tables = tables;
        right.constants = constants;
        right.signature = ls.clone();
    }
    let right_twin = left.carrier.iter().map(|n| right.elem(n)).collect();
    let left_twin = right.carrier.iter().map(|n| left.elem(n)).collect();
    Ok(AlgebraPair {
        left: left.clone(),
        right,
        right_twin,
        left_twin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> Algebra {
        AlgebraBuilder::new("A", ["a", "b", "c", "d", "e"])
            .unary(
                "f",
                &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "c")],
            )
            .build()
            .unwrap()
    }

    #[test]
    fn builder_matches_rows() {
        let a = chain();
        assert_eq!(a.size(), 5);
        let f = a.signature().op_index("f").unwrap();
        assert_eq!(a.name_of(a.apply1(f, a.elem("e").unwrap())), "c");
    }

    #[test]
    fn missing_row_reports_tuple() {
        let err = AlgebraBuilder::new("A", ["a", "b"])
            .unary("f", &[("a", "b")])
            .build()
            .unwrap_err();
        assert_eq!(
            err,
            AlgebraError::MissingRow {
                op: "f".into(),
                tuple: vec!["b".into()]
            }
        );
    }

    #[test]
    fn constant_clashing_with_op_rejected() {
        let err = AlgebraBuilder::new("A", ["f", "b"])
            .unary("f", &[("f", "b"), ("b", "b")])
            .all_constants()
            .build()
            .unwrap_err();
        assert!(matches!(err, AlgebraError::ConstantClash { .. }));
    }

    #[test]
    fn binary_table_order() {
        let a = AlgebraBuilder::new("M", ["0", "1", "2"])
            .op_fn("m", 2, |t| (t[0] * 3 + t[1]) % 3)
            .build()
            .unwrap();
        let m = 0;
        assert_eq!(a.apply(m, &[Elem(1), Elem(2)]), Elem(2));
        assert_eq!(a.apply(m, &[Elem(2), Elem(0)]), Elem(0));
    }

    #[test]
    fn pair_reorders_right_ops() {
        let a = AlgebraBuilder::new("A", ["x", "y"])
            .unary("f", &[("x", "y"), ("y", "y")])
            .unary("g", &[("x", "x"), ("y", "x")])
            .build()
            .unwrap();
        let b = AlgebraBuilder::new("B", ["p"])
            .unary("g", &[("p", "p")])
            .unary("f", &[("p", "p")])
            .build()
            .unwrap();
        let pair = validate_pair(&a, &b).unwrap();
        assert_eq!(pair.right.signature(), a.signature());
        assert!(pair.overlap().is_empty());
    }

    #[test]
    fn pair_mismatch_names_symbol() {
        let a = AlgebraBuilder::new("A", ["x"])
            .unary("f", &[("x", "x")])
            .build()
            .unwrap();
        let b = AlgebraBuilder::new("B", ["x"])
            .unary("f", &[("x", "x")])
            .unary("g", &[("x", "x")])
            .build()
            .unwrap();
        let err = validate_pair(&a, &b).unwrap_err();
        assert!(matches!(err, AlgebraError::SignatureMismatch { ref symbol, .. } if symbol == "g"));
        assert!(validate_pair(&b, &a).is_err());
    }

    #[test]
    fn pair_constants_must_agree() {
        let a = AlgebraBuilder::new("A", ["x", "y"])
            .unary("f", &[("x", "x"), ("y", "y")])
            .constants(["x"])
            .build()
            .unwrap();
        let b = AlgebraBuilder::new("B", ["x", "y"])
            .unary("f", &[("x", "x"), ("y", "y")])
            .build()
            .unwrap();
        assert!(validate_pair(&a, &b).is_err());
    }

    #[test]
    fn chain_overlap_by_name() {
        let a = AlgebraBuilder::new("A", ["0", "1", "2", "3"])
            .unary("f", &[("0", "1"), ("1", "2"), ("2", "3"), ("3", "3")])
            .build()
            .unwrap();
        let b = AlgebraBuilder::new("B", ["1", "0", "2", "3"])
            .unary("f", &[("1", "0"), ("0", "2"), ("2", "3"), ("3", "3")])
            .build()
            .unwrap();
        let pair = validate_pair(&a, &b).unwrap();
        let names: Vec<&str> = pair.overlap().iter().map(|&(x, _)| a.name_of(x)).collect();
        assert_eq!(names, ["0", "1", "2", "3"]);
        assert_eq!(pair.right_twin(a.elem("0").unwrap()), b.elem("0"));
    }

    #[test]
    fn render_reparses_equal() {
        let a = chain();
        assert_eq!(parse_algebra(&a.render()).unwrap(), a);
    }
}
