//! Prefix expressions over graph generators:
//! `(+ a b ...)`, `(* a b ...)`, `(- a)`, `(- a b ...)`, integers, vertex
//! and edge names, and `e*` for the ghost edge of `e`.

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Name(String),
    Ghost(String),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Sub(Vec<Expr>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("at byte {pos}: {msg}")]
pub struct SexprError {
    pub pos: usize,
    pub msg: String,
}

fn err(pos: usize, msg: impl Into<String>) -> SexprError {
    SexprError { pos, msg: msg.into() }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

#[derive(Debug, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
    End,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> (usize, Tok<'a>) {
        let rest = &self.src[self.pos..];
        let skipped = rest.len() - rest.trim_start().len();
        self.pos += skipped;
        let start = self.pos;
        let rest = &self.src[start..];
        match rest.chars().next() {
            None => (start, Tok::End),
            Some('(') => {
                self.pos += 1;
                (start, Tok::Open)
            }
            Some(')') => {
                self.pos += 1;
                (start, Tok::Close)
            }
            Some(_) => {
                let len = rest.find(|c: char| c.is_whitespace() || c == '(' || c == ')').unwrap_or(rest.len());
                self.pos += len;
                (start, Tok::Atom(&rest[..len]))
            }
        }
    }
}

fn atom(pos: usize, s: &str) -> Result<Expr, SexprError> {
    if s.starts_with(|c: char| c.is_ascii_digit()) || (s.starts_with('-') && s.len() > 1) {
        return s.parse().map(Expr::Int).map_err(|_| err(pos, format!("bad integer {s}")));
    }
    match s.strip_suffix('*') {
        Some("") => Err(err(pos, "operator outside a list")),
        Some(base) if base.ends_with('*') => Err(err(pos, format!("bad name {s}"))),
        Some(base) => Ok(Expr::Ghost(base.to_string())),
        None if s == "+" || s == "-" => Err(err(pos, "operator outside a list")),
        None => Ok(Expr::Name(s.to_string())),
    }
}

fn parse_expr(lx: &mut Lexer<'_>) -> Result<Expr, SexprError> {
    match lx.next() {
        (pos, Tok::Atom(s)) => atom(pos, s),
        (pos, Tok::Open) => {
            let op = match lx.next() {
                (_, Tok::Atom(op @ ("+" | "*" | "-"))) => op,
                (p, t) => return Err(err(p, format!("expected +, * or -, found {t:?}"))),
            };
            let mut args = Vec::new();
            loop {
                let save = lx.pos;
                match lx.next() {
                    (_, Tok::Close) => break,
                    (p, Tok::End) => return Err(err(p, format!("unclosed list opened at byte {pos}"))),
                    _ => {
                        lx.pos = save;
                        args.push(parse_expr(lx)?);
                    }
                }
            }
            if args.is_empty() {
                return Err(err(pos, format!("({op}) needs an argument")));
            }
            Ok(match op {
                "+" => Expr::Add(args),
                "*" => Expr::Mul(args),
                _ => Expr::Sub(args),
            })
        }
        (pos, Tok::Close) => Err(err(pos, "unexpected )")),
        (pos, Tok::End) => Err(err(pos, "empty expression")),
    }
}

pub fn parse_leavitt(src: &str) -> Result<Expr, SexprError> {
    let mut lx = Lexer { src, pos: 0 };
    let e = parse_expr(&mut lx)?;
    match lx.next() {
        (_, Tok::End) => Ok(e),
        (pos, _) => Err(err(pos, "trailing input")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_forms() {
        let e = parse_leavitt("(+ (* e e*) (- v 2) -3)").unwrap();
        assert_eq!(
            e,
            Expr::Add(vec![
                Expr::Mul(vec![Expr::Name("e".into()), Expr::Ghost("e".into())]),
                Expr::Sub(vec![Expr::Name("v".into()), Expr::Int(2)]),
                Expr::Int(-3),
            ])
        );
        assert_eq!(parse_leavitt("  w ").unwrap(), Expr::Name("w".into()));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_leavitt("(+ v").unwrap_err().pos, 4);
        assert_eq!(parse_leavitt("(/ v w)").unwrap_err().pos, 1);
        assert_eq!(parse_leavitt("v w").unwrap_err().pos, 2);
        assert_eq!(parse_leavitt("(*)").unwrap_err().pos, 0);
        assert_eq!(parse_leavitt(")").unwrap_err().pos, 0);
        assert!(parse_leavitt("e**").is_err());
        assert!(parse_leavitt("").is_err());
    }
}
