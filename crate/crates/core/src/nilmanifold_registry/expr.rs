//! Dimension formulas and parameter predicates of the registry tables.
//!
//! Formulas: integers, parameter names, `+ - * / ^` and parentheses,
//! evaluated exactly. Predicates: comparisons (`>= <= > < = !=`) and parity
//! tests (`n odd`, `n even`), joined with `and`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::RegistryError;

pub type Parameters = BTreeMap<String, i64>;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(i64),
    Ident(String),
    Op(char),
    Cmp(Comparison),
    LParen,
    RParen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Comparison {
    Ge,
    Le,
    Gt,
    Lt,
    Eq,
    Ne,
}

fn tokenize(src: &str) -> Result<Vec<Token>, RegistryError> {
    let err = |msg: String| RegistryError::Parse { input: src.to_string(), message: msg };
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Token::Num(text.parse().map_err(|_| err(format!("number {text} out of range")))?));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            '+' | '-' | '*' | '/' | '^' => {
                out.push(Token::Op(c));
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '>' | '<' | '=' | '!' | '≥' | '≤' | '≠' => {
                let next = chars.get(i + 1).copied();
                let (cmp, width) = match (c, next) {
                    ('>', Some('=')) => (Comparison::Ge, 2),
                    ('<', Some('=')) => (Comparison::Le, 2),
                    ('!', Some('=')) => (Comparison::Ne, 2),
                    ('=', Some('=')) => (Comparison::Eq, 2),
                    ('>', _) => (Comparison::Gt, 1),
                    ('<', _) => (Comparison::Lt, 1),
                    ('=', _) => (Comparison::Eq, 1),
                    ('≥', _) => (Comparison::Ge, 1),
                    ('≤', _) => (Comparison::Le, 1),
                    ('≠', _) => (Comparison::Ne, 1),
                    _ => return Err(err(format!("unexpected '{c}'"))),
                };
                out.push(Token::Cmp(cmp));
                i += width;
            }
            _ => return Err(err(format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

/// Parsed arithmetic expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    Num(i64),
    Var(String),
    Neg(Box<Formula>),
    Bin(char, Box<Formula>, Box<Formula>),
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, RegistryError> {
        Ok(Self { src, tokens: tokenize(src)?, pos: 0 })
    }

    fn err(&self, message: impl Into<String>) -> RegistryError {
        RegistryError::Parse { input: self.src.to_string(), message: message.into() }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn done(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    // sum := product (('+' | '-') product)*
    fn sum(&mut self) -> Result<Formula, RegistryError> {
        let mut left = self.product()?;
        while let Some(Token::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            left = Formula::Bin(op, Box::new(left), Box::new(self.product()?));
        }
        Ok(left)
    }

    // product := unary (('*' | '/') unary)*
    fn product(&mut self) -> Result<Formula, RegistryError> {
        let mut left = self.unary()?;
        while let Some(Token::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            left = Formula::Bin(op, Box::new(left), Box::new(self.unary()?));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, RegistryError> {
        if let Some(Token::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(Formula::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    // power := atom ('^' unary)?, right associative
    fn power(&mut self) -> Result<Formula, RegistryError> {
        let base = self.atom()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.pos += 1;
            return Ok(Formula::Bin('^', Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Formula, RegistryError> {
        match self.next() {
            Some(Token::Num(v)) => Ok(Formula::Num(v)),
            Some(Token::Ident(name)) => Ok(Formula::Var(name)),
            Some(Token::LParen) => {
                let inner = self.sum()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(self.err("missing ')'")),
                }
            }
            other => Err(self.err(format!("expected a number, name or '(', found {other:?}"))),
        }
    }
}

impl Formula {
    pub fn parse(src: &str) -> Result<Self, RegistryError> {
        let mut p = Parser::new(src)?;
        let f = p.sum()?;
        if !p.done() {
            return Err(p.err("trailing input"));
        }
        Ok(f)
    }

    /// Names of the parameters that occur.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Self::Num(_) => {}
            Self::Var(v) => out.push(v.clone()),
            Self::Neg(a) => a.collect_vars(out),
            Self::Bin(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn eval(&self, params: &Parameters) -> Result<BigRational, RegistryError> {
        Ok(match self {
            Self::Num(v) => BigRational::from_integer(BigInt::from(*v)),
            Self::Var(name) => {
                let v = params.get(name).ok_or_else(|| RegistryError::MissingParameter(name.clone()))?;
                BigRational::from_integer(BigInt::from(*v))
            }
            Self::Neg(a) => -a.eval(params)?,
            Self::Bin(op, a, b) => {
                let (x, y) = (a.eval(params)?, b.eval(params)?);
                match op {
                    '+' => x + y,
                    '-' => x - y,
                    '*' => x * y,
                    '/' => {
                        if y.is_zero() {
                            return Err(RegistryError::Domain("division by zero".into()));
                        }
                        x / y
                    }
                    '^' => {
                        if !y.is_integer() || y.is_negative() {
                            return Err(RegistryError::Domain(format!("exponent {y} is not a natural number")));
                        }
                        let e = y.to_integer().to_u32().ok_or_else(|| RegistryError::Domain("exponent too large".into()))?;
                        (0..e).fold(BigRational::one(), |acc, _| acc * &x)
                    }
                    _ => unreachable!("operator set fixed by the parser"),
                }
            }
        })
    }

    /// Value that must be an integer.
    pub fn eval_integer(&self, params: &Parameters) -> Result<i64, RegistryError> {
        let v = self.eval(params)?;
        if !v.is_integer() {
            return Err(RegistryError::Domain(format!("formula evaluates to the non-integer {v}")));
        }
        v.to_integer().to_i64().ok_or_else(|| RegistryError::Domain("value out of range".into()))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Clause {
    Compare(Formula, Comparison, Formula),
    Parity(String, bool),
}

/// Conjunction of comparisons and parity tests.
#[derive(Debug, Clone, PartialEq)]
pub struct Predicate {
    source: String,
    clauses: Vec<Clause>,
}

impl Predicate {
    pub fn parse(src: &str) -> Result<Self, RegistryError> {
        let mut p = Parser::new(src)?;
        let mut clauses = Vec::new();
        loop {
            // `n odd` / `n even`
            if let (Some(Token::Ident(name)), Some(Token::Ident(kind))) =
                (p.tokens.get(p.pos).cloned(), p.tokens.get(p.pos + 1).cloned())
            {
                if kind == "odd" || kind == "even" {
                    p.pos += 2;
                    clauses.push(Clause::Parity(name, kind == "odd"));
                    if !p.eat_and() {
                        break;
                    }
                    continue;
                }
            }
            let left = p.sum()?;
            let cmp = match p.next() {
                Some(Token::Cmp(c)) => c,
                other => return Err(p.err(format!("expected a comparison, found {other:?}"))),
            };
            let right = p.sum()?;
            clauses.push(Clause::Compare(left, cmp, right));
            if !p.eat_and() {
                break;
            }
        }
        if !p.done() {
            return Err(p.err("trailing input"));
        }
        Ok(Self { source: src.to_string(), clauses })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.clauses {
            match c {
                Clause::Compare(a, _, b) => {
                    a.collect_vars(&mut out);
                    b.collect_vars(&mut out);
                }
                Clause::Parity(v, _) => out.push(v.clone()),
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn eval(&self, params: &Parameters) -> Result<bool, RegistryError> {
        for c in &self.clauses {
            let holds = match c {
                Clause::Compare(a, cmp, b) => {
                    let (x, y) = (a.eval(params)?, b.eval(params)?);
                    match cmp {
                        Comparison::Ge => x >= y,
                        Comparison::Le => x <= y,
                        Comparison::Gt => x > y,
                        Comparison::Lt => x < y,
                        Comparison::Eq => x == y,
                        Comparison::Ne => x != y,
                    }
                }
                Clause::Parity(name, odd) => {
                    let v = params.get(name).ok_or_else(|| RegistryError::MissingParameter(name.clone()))?;
                    (v.rem_euclid(2) == 1) == *odd
                }
            };
            if !holds {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl Parser<'_> {
    fn eat_and(&mut self) -> bool {
        if let Some(Token::Ident(w)) = self.peek() {
            if w == "and" {
                self.pos += 1;
                return true;
            }
        }
        false
    }
}
