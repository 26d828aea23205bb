//! Construction files.
//!
//! One statement per line; `#` starts a comment.
//!
//! ```text
//! file      := { line '\n' }
//! line      := [ statement ] [ '#' any* ]
//! statement := 'let' ident '=' call
//!            | 'report' [ kind ] arg { arg }
//! kind      := 'group' | 'geography' | 'csv'
//! call      := ident '(' [ value { ',' value } ] ')'
//! value     := integer | ident | presentation | call
//! arg       := integer | ident | presentation
//! ident     := (letter | '_') { letter | digit | '_' | '\'' }
//! integer   := ['-'] digit { digit }
//! ```
//!
//! Presentations use the shared `< gens | rels >` text form.
//!
//! Operations:
//!
//! | call | result |
//! |------|--------|
//! | `elliptic(n)`, `stipsicz(n)`, `elbow(n)`, `s11()`, `product_torus(g)`, `thurston()`, `mg(<P>)` | catalog block |
//! | `fiber_sum(x, y, F, G, opts...)` | sum of blocks `x`, `y` along `F`, `G` |
//! | `resolve(x, L, parts...)` | `x` with a new surface `L` smoothing the given surfaces |
//! | `build_a()`, `build_z(n)`, `build_v(n)`, `build_w(n)`, `elliptic_with_j(n)`, `build_mgn(<P>, n)` | pipeline stages |
//!
//! `fiber_sum` options: `carry(left|right, S [, R])`, `connect(SL, SR, L)`,
//! `basis(i1, ..., i2g)`, `name(N)`. `resolve` parts: `S` or `copies(S, k)`.
//!
//! Reports: `report x` (invariants), `report group x`,
//! `report geography x`, `report csv theorem1 nmin nmax [<P>]`.

use std::collections::BTreeSet;
use std::fmt;

use fibersum_core::Presentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("{pos}: {message}")]
    Parse { pos: Pos, message: String },
    #[error("{pos}: '{name}' is not declared before use")]
    Dangling { pos: Pos, name: String },
    #[error("{pos}: '{name}' is already declared")]
    Duplicate { pos: Pos, name: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Ident(String),
    Pres(Presentation),
    Call(Call),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Call {
    pub op: String,
    pub args: Vec<Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportKind {
    Invariants,
    Group,
    Geography,
    Csv,
}

impl ReportKind {
    fn keyword(self) -> Option<&'static str> {
        match self {
            ReportKind::Invariants => None,
            ReportKind::Group => Some("group"),
            ReportKind::Geography => Some("geography"),
            ReportKind::Csv => Some("csv"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Let { name: String, call: Call },
    Report { kind: ReportKind, args: Vec<Value> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub pos: Pos,
    pub statement: Statement,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstructionFile {
    pub statements: Vec<Located>,
}

/// Argument positions of `op` that name earlier declarations.
pub fn reference_positions(op: &str) -> &'static [usize] {
    match op {
        "fiber_sum" => &[0, 1],
        "resolve" => &[0],
        _ => &[],
    }
}

struct Line<'a> {
    text: &'a str,
    line: usize,
    /// Byte offset into `text`.
    at: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Line<'a> {
    fn pos_at(&self, byte: usize) -> Pos {
        Pos { line: self.line, column: self.text[..byte].chars().count() + 1 }
    }

    fn pos(&self) -> Pos {
        self.pos_at(self.at)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, DslError> {
        Err(DslError::Parse { pos: self.pos(), message: message.into() })
    }

    fn rest(&self) -> &'a str {
        &self.text[self.at..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.at = self.text.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), DslError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn ident(&mut self) -> Result<String, DslError> {
        self.skip_ws();
        let rest = self.rest();
        match rest.chars().next() {
            Some(c) if is_ident_start(c) => {}
            _ => return self.err("expected identifier"),
        }
        let len = rest.find(|c: char| !is_ident_char(c)).unwrap_or(rest.len());
        self.at += len;
        Ok(rest[..len].to_string())
    }

    fn integer(&mut self) -> Result<i64, DslError> {
        self.skip_ws();
        let start = self.at;
        let rest = self.rest();
        let sign = usize::from(rest.starts_with('-'));
        let digits = rest[sign..].find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len() - sign);
        let text = &rest[..sign + digits];
        match text.parse() {
            Ok(v) => {
                self.at += text.len();
                Ok(v)
            }
            Err(_) => Err(DslError::Parse { pos: self.pos_at(start), message: "expected integer".into() }),
        }
    }

    fn presentation(&mut self) -> Result<Presentation, DslError> {
        self.skip_ws();
        let start = self.at;
        let Some(len) = self.rest().find('>') else {
            return self.err("unterminated presentation");
        };
        let text = &self.rest()[..=len];
        match text.parse::<Presentation>() {
            Ok(p) => {
                self.at += len + 1;
                Ok(p)
            }
            Err(e) => Err(DslError::Parse {
                pos: self.pos_at(start + e.offset.min(text.len())),
                message: e.message,
            }),
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn value(&mut self) -> Result<Value, DslError> {
        match self.peek() {
            Some('<') => Ok(Value::Pres(self.presentation()?)),
            Some(c) if c == '-' || c.is_ascii_digit() => Ok(Value::Int(self.integer()?)),
            Some(c) if is_ident_start(c) => {
                let name = self.ident()?;
                if self.peek() == Some('(') {
                    Ok(Value::Call(self.call_args(name)?))
                } else {
                    Ok(Value::Ident(name))
                }
            }
            _ => self.err("expected value"),
        }
    }

    fn call_args(&mut self, op: String) -> Result<Call, DslError> {
        self.expect('(')?;
        let mut args = Vec::new();
        if !self.eat(')') {
            loop {
                args.push(self.value()?);
                if self.eat(')') {
                    break;
                }
                self.expect(',')?;
            }
        }
        Ok(Call { op, args })
    }

    fn statement(&mut self) -> Result<Statement, DslError> {
        let keyword = self.ident()?;
        match keyword.as_str() {
            "let" => {
                let name = self.ident()?;
                self.expect('=')?;
                let op = self.ident()?;
                let call = self.call_args(op)?;
                Ok(Statement::Let { name, call })
            }
            "report" => {
                let mut args = Vec::new();
                while !self.at_end() {
                    let v = self.value()?;
                    if matches!(v, Value::Call(_)) {
                        return self.err("calls are not allowed in reports");
                    }
                    args.push(v);
                }
                let kind = match args.first() {
                    Some(Value::Ident(k)) if k == "group" && args.len() > 1 => ReportKind::Group,
                    Some(Value::Ident(k)) if k == "geography" && args.len() > 1 => ReportKind::Geography,
                    Some(Value::Ident(k)) if k == "csv" && args.len() > 1 => ReportKind::Csv,
                    _ => ReportKind::Invariants,
                };
                if kind != ReportKind::Invariants {
                    args.remove(0);
                }
                if args.is_empty() {
                    return self.err("report needs an argument");
                }
                Ok(Statement::Report { kind, args })
            }
            other => Err(DslError::Parse {
                pos: self.pos_at(self.at - other.len()),
                message: format!("unknown statement '{other}'"),
            }),
        }
    }
}

/// Parses a construction file and checks that references form a DAG.
pub fn parse(src: &str) -> Result<ConstructionFile, DslError> {
    let mut statements = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let text = match raw.find('#') {
            Some(c) => &raw[..c],
            None => raw,
        };
        let mut line = Line { text, line: i + 1, at: 0 };
        if line.at_end() {
            continue;
        }
        let pos = line.pos();
        let statement = line.statement()?;
        if !line.at_end() {
            return line.err("trailing input");
        }
        statements.push(Located { pos, statement });
    }
    let file = ConstructionFile { statements };
    check(&file)?;
    Ok(file)
}

/// Every referenced name must be declared on an earlier line, and names
/// are declared once, so declaration order is a topological order.
pub fn check(file: &ConstructionFile) -> Result<(), DslError> {
    let mut declared = BTreeSet::new();
    for s in &file.statements {
        match &s.statement {
            Statement::Let { name, call } => {
                for &i in reference_positions(&call.op) {
                    if let Some(Value::Ident(r)) = call.args.get(i) {
                        if !declared.contains(r.as_str()) {
                            return Err(DslError::Dangling { pos: s.pos, name: r.clone() });
                        }
                    }
                }
                if !declared.insert(name.as_str()) {
                    return Err(DslError::Duplicate { pos: s.pos, name: name.clone() });
                }
            }
            Statement::Report { kind, args } => {
                if matches!(kind, ReportKind::Csv) {
                    continue;
                }
                if let Some(Value::Ident(r)) = args.first() {
                    if !declared.contains(r.as_str()) {
                        return Err(DslError::Dangling { pos: s.pos, name: r.clone() });
                    }
                }
            }
        }
    }
    Ok(())
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Ident(s) => f.write_str(s),
            Value::Pres(p) => write!(f, "{p}"),
            Value::Call(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.op)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Let { name, call } => write!(f, "let {name} = {call}"),
            Statement::Report { kind, args } => {
                f.write_str("report")?;
                if let Some(k) = kind.keyword() {
                    write!(f, " {k}")?;
                }
                for a in args {
                    write!(f, " {a}")?;
                }
                Ok(())
            }
        }
    }
}

/// Canonical text: one statement per line, comments dropped.
impl fmt::Display for ConstructionFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{}", s.statement)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lets_and_reports() {
        let f = parse("# block A\nlet s = s11()\nlet a = fiber_sum(s, s, F, F, carry(left, T, T1))  # sum\nreport a\n").unwrap();
        assert_eq!(f.statements.len(), 3);
        assert_eq!(f.statements[1].pos, Pos { line: 3, column: 1 });
        let Statement::Let { call, .. } = &f.statements[1].statement else { panic!() };
        assert_eq!(call.op, "fiber_sum");
        assert_eq!(
            call.args[4],
            Value::Call(Call {
                op: "carry".into(),
                args: vec![Value::Ident("left".into()), Value::Ident("T".into()), Value::Ident("T1".into())]
            })
        );
    }

    #[test]
    fn presentations_and_negative_integers() {
        let f = parse("let m = build_mgn(<x, y | [x,y]>, 2)\nlet b = fiber_sum(m, m, T0, T0, basis(2, -1))\n").unwrap();
        let Statement::Let { call, .. } = &f.statements[0].statement else { panic!() };
        assert_eq!(call.args[0], Value::Pres("<x, y | [x,y]>".parse().unwrap()));
        let Statement::Let { call, .. } = &f.statements[1].statement else { panic!() };
        let Value::Call(basis) = &call.args[4] else { panic!() };
        assert_eq!(basis.args[1], Value::Int(-1));
    }

    #[test]
    fn errors_carry_line_and_column() {
        let e = parse("let a = s11()\nlet b = elbow(\n").unwrap_err();
        assert_eq!(e, DslError::Parse { pos: Pos { line: 2, column: 15 }, message: "expected value".into() });
        let e = parse("let a = mg(<x | y>)").unwrap_err();
        assert!(matches!(e, DslError::Parse { pos: Pos { line: 1, column: 17 }, .. }), "{e}");
        let e = parse("frobnicate\n").unwrap_err();
        assert!(e.to_string().starts_with("1:1: unknown statement"));
    }

    #[test]
    fn dangling_and_duplicate_names() {
        let e = parse("let a = fiber_sum(x, x, F, F)\n").unwrap_err();
        assert_eq!(e, DslError::Dangling { pos: Pos { line: 1, column: 1 }, name: "x".into() });
        let e = parse("let a = s11()\nlet a = s11()\n").unwrap_err();
        assert!(matches!(e, DslError::Duplicate { .. }));
        let e = parse("report q\n").unwrap_err();
        assert!(matches!(e, DslError::Dangling { .. }));
    }

    #[test]
    fn pretty_printer_round_trips() {
        let src = "let s=s11()   # x\n\nlet a =fiber_sum( s,s ,F,F,carry(left,T,T1),carry(right,T,T2))\nreport   group a\nreport csv theorem1 2 10 <x|>\n";
        let f = parse(src).unwrap();
        let printed = f.to_string();
        assert_eq!(
            printed,
            "let s = s11()\nlet a = fiber_sum(s, s, F, F, carry(left, T, T1), carry(right, T, T2))\nreport group a\nreport csv theorem1 2 10 < x | >\n"
        );
        let g = parse(&printed).unwrap();
        assert_eq!(
            g.statements.iter().map(|s| &s.statement).collect::<Vec<_>>(),
            f.statements.iter().map(|s| &s.statement).collect::<Vec<_>>()
        );
    }
}
