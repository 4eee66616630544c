//! Parser for the scalar text encoding: rational arithmetic expressions over
//! named parameters, e.g. `(u01*u10-3/2*u00^2)/((u01-u10)*u02)`.
//!
//! Division by a parenthesized product divides by each factor in turn, so the
//! printed form of a [`RatFunc`] parses back to the same factored denominator.

use num_bigint::BigInt;

use super::{ParamPoly, RatFunc, Rational, Scalar, Var};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

#[derive(Debug)]
enum Node {
    Num(BigInt),
    Ident(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i64),
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in `{}`", self.pos, self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: i64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    return Ok(Node::Pow(Box::new(base), if neg { -e } else { e }));
                }
                _ => return Err(self.err("expected integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Node::Num(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Node::Ident(s))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            _ => Err(self.err("expected number, name or `(`")),
        }
    }
}

fn eval(node: &Node) -> Result<RatFunc> {
    Ok(match node {
        Node::Num(n) => RatFunc::from_rational(&Rational::from(n.clone())),
        Node::Ident(s) => RatFunc::from_poly(ParamPoly::var(Var::new(s))),
        Node::Neg(x) => -eval(x)?,
        Node::Add(a, b) => eval(a)? + eval(b)?,
        Node::Sub(a, b) => eval(a)? - eval(b)?,
        Node::Mul(a, b) => eval(a)? * eval(b)?,
        Node::Div(a, b) => divide_by(eval(a)?, b)?,
        Node::Pow(x, e) => eval(x)?.powi(*e)?,
    })
}

fn divide_by(acc: RatFunc, node: &Node) -> Result<RatFunc> {
    match node {
        Node::Mul(a, b) => divide_by(divide_by(acc, a)?, b),
        Node::Pow(x, e) if *e >= 0 => {
            let mut acc = acc;
            for _ in 0..*e {
                acc = divide_by(acc, x)?;
            }
            Ok(acc)
        }
        Node::Neg(x) => Ok(-divide_by(acc, x)?),
        _ => {
            let d = eval(node)?;
            Ok(acc * d.inv()?)
        }
    }
}

/// Parses a rational-function expression.
pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks: &toks, pos: 0, src: s };
    let node = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    eval(&node)
}

/// Parses an expression that must evaluate to a rational constant.
pub fn parse_rational(s: &str) -> Result<Rational> {
    parse_ratfunc(s)?.as_constant().ok_or_else(|| Error::Parse(format!("expected a rational constant, got `{s}`")))
}
