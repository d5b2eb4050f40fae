use thiserror::Error;

use super::{is_element_name, is_identifier, Algebra, AlgebraBuilder, AlgebraError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: AlgebraError,
    },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Invalid { line, .. } => *line,
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

struct PendingOp {
    symbol: String,
    arity: usize,
    line: usize,
    rows: Vec<(Vec<String>, String)>,
}

enum Constants {
    None,
    All,
    Names(Vec<String>),
}

/// Parses one algebra in the `.alg` format.
pub fn parse_algebra(text: &str) -> Result<Algebra, ParseError> {
    let mut name: Option<String> = None;
    let mut elements: Option<(Vec<String>, usize)> = None;
    let mut constants = (Constants::None, 0usize);
    let mut ops: Vec<PendingOp> = Vec::new();
    let mut ended = false;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let indent = content.len() - content.trim_start().len();
        let body = content.trim();
        if body.is_empty() {
            continue;
        }
        if ended {
            return Err(syntax(line, indent + 1, "content after `end`"));
        }
        let (keyword, rest) = match body.find(char::is_whitespace) {
            Some(k) => (&body[..k], body[k..].trim()),
            None => (body, ""),
        };
        let rest_col = indent + 1 + (body.len() - rest.len());
        if name.is_none() {
            if keyword != "algebra" {
                return Err(syntax(line, indent + 1, "expected `algebra <name>`"));
            }
            if rest.is_empty() || rest.contains(char::is_whitespace) {
                return Err(syntax(line, rest_col, "expected a single algebra name"));
            }
            name = Some(rest.to_string());
            continue;
        }
        match keyword {
            "algebra" => return Err(syntax(line, indent + 1, "only one algebra per file")),
            "elements" => {
                if elements.is_some() {
                    return Err(syntax(line, indent + 1, "`elements` declared twice"));
                }
                let mut names: Vec<String> = Vec::new();
                for (col, tok) in tokens(rest, rest_col) {
                    if !is_element_name(tok) {
                        return Err(syntax(line, col, format!("invalid element name `{tok}`")));
                    }
                    if names.iter().any(|n| n == tok) {
                        return Err(ParseError::Invalid {
                            line,
                            source: AlgebraError::DuplicateElement(tok.to_string()),
                        });
                    }
                    names.push(tok.to_string());
                }
                if names.is_empty() {
                    return Err(syntax(line, rest_col, "expected at least one element"));
                }
                elements = Some((names, line));
            }
            "constants" => {
                let Some((carrier, _)) = &elements else {
                    return Err(syntax(line, indent + 1, "`constants` before `elements`"));
                };
                let spec = match rest {
                    "none" => Constants::None,
                    "all" => Constants::All,
                    "" => {
                        return Err(syntax(
                            line,
                            rest_col,
                            "expected `none`, `all` or element names",
                        ))
                    }
                    _ => {
                        let mut names = Vec::new();
                        for (col, tok) in tokens(rest, rest_col) {
                            if !carrier.iter().any(|c| c == tok) {
                                return Err(syntax(line, col, format!("unknown element `{tok}`")));
                            }
                            names.push(tok.to_string());
                        }
                        Constants::Names(names)
                    }
                };
                constants = (spec, line);
            }
            "op" => {
                if elements.is_none() {
                    return Err(syntax(line, indent + 1, "`op` before `elements`"));
                }
                let Some((sym, arity)) = rest.split_once('/') else {
                    return Err(syntax(line, rest_col, "expected `op <symbol>/<arity>`"));
                };
                let (sym, arity) = (sym.trim(), arity.trim());
                if !is_identifier(sym) {
                    return Err(syntax(
                        line,
                        rest_col,
                        format!("invalid operation symbol `{sym}`"),
                    ));
                }
                let arity: usize = arity.parse().map_err(|_| {
                    syntax(
                        line,
                        rest_col + sym.len() + 1,
                        format!("invalid arity `{arity}`"),
                    )
                })?;
                if arity == 0 {
                    return Err(ParseError::Invalid {
                        line,
                        source: AlgebraError::NullaryOperation(sym.to_string()),
                    });
                }
                if ops.iter().any(|o| o.symbol == sym) {
                    return Err(ParseError::Invalid {
                        line,
                        source: AlgebraError::DuplicateOperation(sym.to_string()),
                    });
                }
                ops.push(PendingOp {
                    symbol: sym.to_string(),
                    arity,
                    line,
                    rows: Vec::new(),
                });
            }
            "end" => {
                if !rest.is_empty() {
                    return Err(syntax(line, rest_col, "unexpected text after `end`"));
                }
                ended = true;
            }
            _ => {
                let Some(op) = ops.last_mut() else {
                    return Err(syntax(line, indent + 1, format!("unexpected `{keyword}`")));
                };
                let carrier = &elements.as_ref().unwrap().0;
                let row = parse_row(body, line, indent + 1, op, carrier)?;
                op.rows.push(row);
            }
        }
    }

    let Some(name) = name else {
        return Err(syntax(1, 1, "empty input, expected `algebra <name>`"));
    };
    let Some((carrier, elements_line)) = elements else {
        return Err(syntax(
            text.lines().count().max(1),
            1,
            "missing `elements` line",
        ));
    };
    let mut builder = AlgebraBuilder::new(&name, carrier);
    for op in &ops {
        builder = builder.op_rows_owned(&op.symbol, op.arity, op.rows.clone());
    }
    builder = match constants.0 {
        Constants::None => builder,
        Constants::All => builder.all_constants(),
        Constants::Names(v) => builder.constants(v),
    };
    builder.build().map_err(|source| {
        let line = match &source {
            AlgebraError::MissingRow { op, .. }
            | AlgebraError::DuplicateRow { op, .. }
            | AlgebraError::OutOfCarrier { op, .. }
            | AlgebraError::RowArity { op, .. } => ops
                .iter()
                .find(|o| &o.symbol == op)
                .map(|o| o.line)
                .unwrap_or(elements_line),
            AlgebraError::ConstantClash { .. } => constants.1,
            _ => elements_line,
        };
        ParseError::Invalid { line, source }
    })
}

fn tokens(s: &str, base_col: usize) -> impl Iterator<Item = (usize, &str)> {
    let start = s.as_ptr() as usize;
    s.split_whitespace()
        .map(move |t| (base_col + (t.as_ptr() as usize - start), t))
}

fn parse_row(
    body: &str,
    line: usize,
    col: usize,
    op: &PendingOp,
    carrier: &[String],
) -> Result<(Vec<String>, String), ParseError> {
    let Some(arrow) = body.find("->") else {
        return Err(syntax(line, col, "expected `(<args>) -> <element>`"));
    };
    let lhs = body[..arrow].trim();
    let rhs = body[arrow + 2..].trim();
    let rhs_col =
        col + arrow + 2 + (body[arrow + 2..].len() - body[arrow + 2..].trim_start().len());
    let args: Vec<&str> = if let Some(inner) = lhs.strip_prefix('(') {
        let Some(inner) = inner.strip_suffix(')') else {
            return Err(syntax(line, col, "unbalanced parenthesis"));
        };
        inner.split(',').map(str::trim).collect()
    } else if op.arity == 1 {
        vec![lhs]
    } else {
        return Err(syntax(
            line,
            col,
            "arguments of a non-unary row need parentheses",
        ));
    };
    if args.len() != op.arity {
        return Err(ParseError::Invalid {
            line,
            source: AlgebraError::RowArity {
                op: op.symbol.clone(),
                tuple: args.iter().map(|s| s.to_string()).collect(),
                got: args.len(),
                expected: op.arity,
            },
        });
    }
    for a in &args {
        if a.is_empty() {
            return Err(syntax(line, col, "empty argument"));
        }
        if !carrier.iter().any(|c| c == a) {
            return Err(ParseError::Invalid {
                line,
                source: AlgebraError::UnknownElement(a.to_string()),
            });
        }
    }
    if rhs.is_empty() || rhs.contains(char::is_whitespace) {
        return Err(syntax(line, rhs_col, "expected a single output element"));
    }
    if !carrier.iter().any(|c| c == rhs) {
        return Err(ParseError::Invalid {
            line,
            source: AlgebraError::OutOfCarrier {
                op: op.symbol.clone(),
                value: rhs.to_string(),
            },
        });
    }
    let args: Vec<String> = args.into_iter().map(String::from).collect();
    if op.rows.iter().any(|(r, _)| *r == args) {
        return Err(ParseError::Invalid {
            line,
            source: AlgebraError::DuplicateRow {
                op: op.symbol.clone(),
                tuple: args,
            },
        });
    }
    Ok((args, rhs.to_string()))
}
