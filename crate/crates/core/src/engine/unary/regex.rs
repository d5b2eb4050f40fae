//! Display regular expressions obtained by state elimination.

use std::fmt;

use super::GenDfa;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regex {
    Empty,
    Epsilon,
    Symbol(String),
    Concat(Vec<Regex>),
    Alt(Vec<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    fn concat(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, _) | (_, Regex::Empty) => Regex::Empty,
            (Regex::Epsilon, x) | (x, Regex::Epsilon) => x,
            (Regex::Concat(mut xs), Regex::Concat(ys)) => {
                xs.extend(ys);
                Regex::Concat(xs)
            }
            (Regex::Concat(mut xs), y) => {
                xs.push(y);
                Regex::Concat(xs)
            }
            (x, Regex::Concat(mut ys)) => {
                ys.insert(0, x);
                Regex::Concat(ys)
            }
            (x, y) => Regex::Concat(vec![x, y]),
        }
    }

    fn alt(a: Regex, b: Regex) -> Regex {
        let mut parts = Vec::new();
        for r in [a, b] {
            match r {
                Regex::Empty => {}
                Regex::Alt(xs) => parts.extend(xs),
                x => parts.push(x),
            }
        }
        let mut out: Vec<Regex> = Vec::new();
        for p in parts {
            if !out.contains(&p) {
                out.push(p);
            }
        }
        // ε is absorbed by a starred alternative.
        if out.iter().any(|r| matches!(r, Regex::Star(_))) {
            out.retain(|r| *r != Regex::Epsilon);
        }
        match out.len() {
            0 => Regex::Empty,
            1 => out.pop().unwrap(),
            _ => Regex::Alt(out),
        }
    }

    fn star(r: Regex) -> Regex {
        match r {
            Regex::Empty | Regex::Epsilon => Regex::Epsilon,
            Regex::Star(x) => Regex::Star(x),
            Regex::Alt(xs) if xs.contains(&Regex::Epsilon) => {
                let rest: Vec<Regex> = xs.into_iter().filter(|x| *x != Regex::Epsilon).collect();
                Regex::star(rest.into_iter().fold(Regex::Empty, Regex::alt))
            }
            x => Regex::Star(Box::new(x)),
        }
    }

    /// The expression for the reversed language.
    pub fn reversed(self) -> Regex {
        match self {
            Regex::Concat(xs) => Regex::Concat(xs.into_iter().rev().map(Regex::reversed).collect()),
            Regex::Alt(xs) => Regex::Alt(xs.into_iter().map(Regex::reversed).collect()),
            Regex::Star(x) => Regex::Star(Box::new(x.reversed())),
            x => x,
        }
    }

    fn is_atom(&self) -> bool {
        matches!(
            self,
            Regex::Empty | Regex::Epsilon | Regex::Symbol(_) | Regex::Star(_)
        )
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group = |f: &mut fmt::Formatter<'_>, r: &Regex| {
            if r.is_atom() {
                write!(f, "{r}")
            } else {
                write!(f, "({r})")
            }
        };
        match self {
            Regex::Empty => f.write_str("∅"),
            Regex::Epsilon => f.write_str("ε"),
            Regex::Symbol(s) => f.write_str(s),
            Regex::Concat(xs) => {
                for x in xs {
                    if matches!(x, Regex::Alt(_)) && !is_optional(x) {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
            Regex::Alt(xs) if is_optional(self) => {
                let rest: Vec<Regex> = xs
                    .iter()
                    .filter(|x| **x != Regex::Epsilon)
                    .cloned()
                    .collect();
                let inner = if rest.len() == 1 {
                    rest[0].clone()
                } else {
                    Regex::Alt(rest)
                };
                group(f, &inner)?;
                f.write_str("?")
            }
            Regex::Alt(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Regex::Star(x) => {
                group(f, x)?;
                f.write_str("*")
            }
        }
    }
}

fn is_optional(r: &Regex) -> bool {
    matches!(r, Regex::Alt(xs) if xs.contains(&Regex::Epsilon))
}

/// State elimination in application order; dead states are dropped first.
pub(super) fn eliminate(d: &GenDfa) -> Regex {
    let n = d.state_count();
    let mut live = vec![false; n];
    for s in 0..n {
        live[s] = d.is_final(s);
    }
    loop {
        let mut changed = false;
        for s in 0..n {
            if !live[s] && d.delta[s].iter().any(|&t| live[t as usize]) {
                live[s] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if !live[d.start()] {
        return Regex::Empty;
    }
    // Nodes 0..n are states, n is the initial node and n+1 the final node.
    let size = n + 2;
    let mut edge = vec![vec![Regex::Empty; size]; size];
    edge[n][d.start()] = Regex::Epsilon;
    for s in (0..n).filter(|&s| live[s]) {
        if d.is_final(s) {
            edge[s][n + 1] = Regex::Epsilon;
        }
        for (c, &t) in d.delta[s].iter().enumerate() {
            if live[t as usize] {
                let cur = std::mem::replace(&mut edge[s][t as usize], Regex::Empty);
                edge[s][t as usize] = Regex::alt(cur, Regex::Symbol(d.alphabet[c].clone()));
            }
        }
    }
    for k in (0..n).filter(|&k| live[k]) {
        let self_loop = Regex::star(edge[k][k].clone());
        let ins: Vec<usize> = (0..size)
            .filter(|&i| i != k && edge[i][k] != Regex::Empty)
            .collect();
        let outs: Vec<usize> = (0..size)
            .filter(|&j| j != k && edge[k][j] != Regex::Empty)
            .collect();
        for &i in &ins {
            for &j in &outs {
                let through = Regex::concat(
                    Regex::concat(edge[i][k].clone(), self_loop.clone()),
                    edge[k][j].clone(),
                );
                let cur = std::mem::replace(&mut edge[i][j], Regex::Empty);
                edge[i][j] = Regex::alt(cur, through);
            }
        }
        for i in 0..size {
            edge[i][k] = Regex::Empty;
            edge[k][i] = Regex::Empty;
        }
    }
    edge[n][n + 1].clone()
}
