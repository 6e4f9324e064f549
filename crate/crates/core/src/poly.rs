//! Monomials, monomial orders and sparse multivariate polynomials over a
//! prime field, plus a small parser for the ASCII input syntax
//! (`"x^2 + 3*x*y"`, `*` optional, variables declared up front).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Exponent vector, one entry per ambient variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn variable(index: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` when this is a positive power of variable `i` alone.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { monomial: self, vars }
    }
}

pub struct MonomialDisplay<'a> {
    monomial: &'a Monomial,
    vars: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomial.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.monomial.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.vars[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                // smaller exponent in the last differing variable is larger
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Sparse polynomial; never stores a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    field: PrimeField,
    nvars: usize,
    #[serde(with = "term_list")]
    terms: BTreeMap<Monomial, u32>,
}

mod term_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(terms: &BTreeMap<Monomial, u32>, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(terms.iter())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<Monomial, u32>, D::Error> {
        let list: Vec<(Monomial, u32)> = Vec::deserialize(d)?;
        Ok(list.into_iter().filter(|(_, c)| *c != 0).collect())
    }
}

impl Polynomial {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Polynomial { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u32) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn term(field: PrimeField, m: Monomial, c: u32) -> Self {
        let nvars = m.nvars();
        let mut p = Self::zero(field, nvars);
        p.add_term(m, c);
        p
    }

    pub fn variable(field: PrimeField, index: usize, nvars: usize) -> Self {
        Self::term(field, Monomial::variable(index, nvars), 1)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn add_term(&mut self, m: Monomial, c: u32) {
        let c = c % self.field.characteristic();
        if c == 0 {
            return;
        }
        let k = self.field;
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = k.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, u32)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0)).map(|(m, &c)| (m, c))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        for (m, c) in other.terms() {
            r.add_term(m.clone(), c);
        }
        r
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.field.neg(1))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let mut r = Self::zero(self.field, self.nvars);
        for (m, a) in self.terms() {
            r.add_term(m.clone(), self.field.mul(a, c));
        }
        r
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let mut r = Self::zero(self.field, self.nvars);
        for (n, a) in self.terms() {
            r.add_term(n.mul(m), self.field.mul(a, c));
        }
        r
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut r = Self::zero(self.field, self.nvars);
        for (m, c) in other.terms() {
            for (n, a) in self.terms() {
                r.add_term(n.mul(m), self.field.mul(a, c));
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Self::constant(self.field, self.nvars, 1);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(self.field.inv(c).expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, u32)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> PolynomialDisplay<'a> {
        PolynomialDisplay { poly: self, vars }
    }

    /// Parses `s` over the declared variables.
    pub fn parse(s: &str, vars: &[String], field: PrimeField) -> Result<Polynomial> {
        let tokens = tokenize(s, vars)?;
        let mut parser = Parser { tokens, pos: 0, field, nvars: vars.len() };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!("unexpected trailing input in {s:?}")));
        }
        Ok(p)
    }
}

pub struct PolynomialDisplay<'a> {
    poly: &'a Polynomial,
    vars: &'a [String],
}

impl fmt::Display for PolynomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let k = self.poly.field;
        for (idx, (m, c)) in self.poly.sorted_terms(MonomialOrder::DegRevLex).into_iter().enumerate() {
            let s = k.to_signed(c);
            let mag = s.unsigned_abs();
            if idx == 0 {
                if s < 0 {
                    write!(f, "-")?;
                }
            } else if s < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", m.display(self.vars))?;
            } else {
                write!(f, "{mag}*{}", m.display(self.vars))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Num(u64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

/// Splits an identifier into declared variable names, longest match first.
fn split_identifier(ident: &str, vars: &[String]) -> Option<Vec<usize>> {
    if ident.is_empty() {
        return Some(Vec::new());
    }
    let mut candidates: Vec<(usize, &String)> =
        vars.iter().enumerate().filter(|(_, v)| ident.starts_with(v.as_str())).collect();
    candidates.sort_by_key(|c| std::cmp::Reverse(c.1.len()));
    for (i, v) in candidates {
        if let Some(mut rest) = split_identifier(&ident[v.len()..], vars) {
            rest.insert(0, i);
            return Some(rest);
        }
    }
    None
}

fn tokenize(s: &str, vars: &[String]) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '(' => {
                out.push(Token::LParen);
                i += 1
            }
            ')' => {
                out.push(Token::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n = text.parse::<u64>().map_err(|_| Error::Parse(format!("number too large: {text}")))?;
                out.push(Token::Num(n));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let ident: String = chars[start..i].iter().collect();
                let parts = split_identifier(&ident, vars)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {ident:?}")))?;
                for (j, v) in parts.into_iter().enumerate() {
                    if j > 0 {
                        out.push(Token::Star);
                    }
                    out.push(Token::Var(v));
                }
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    field: PrimeField,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.field, self.nvars);
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.product()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(Token::Num(_)) | Some(Token::Var(_)) | Some(Token::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Token::Num(e)) if e <= u32::MAX as u64 => Ok(base.pow(e as u32)),
                _ => Err(Error::Parse("expected a non-negative integer exponent after '^'".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.next() {
            Some(Token::Num(n)) => {
                let c = self.field.reduce(n);
                Ok(Polynomial::constant(self.field, self.nvars, c))
            }
            Some(Token::Var(v)) => Ok(Polynomial::variable(self.field, v, self.nvars)),
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(e),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            Some(Token::Minus) => Ok(self.atom()?.neg()),
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn k() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn degrevlex_orders_as_expected() {
        let o = MonomialOrder::DegRevLex;
        let x2 = Monomial::new(vec![2, 0]);
        let xy = Monomial::new(vec![1, 1]);
        let y3 = Monomial::new(vec![0, 3]);
        assert_eq!(o.cmp(&x2, &xy), Ordering::Greater);
        assert_eq!(o.cmp(&y3, &x2), Ordering::Greater);
        // x*z < y^2 in degrevlex, but x*z > y^2 in lex
        let xz = Monomial::new(vec![1, 0, 1]);
        let y2 = Monomial::new(vec![0, 2, 0]);
        assert_eq!(o.cmp(&xz, &y2), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&xz, &y2), Ordering::Greater);
    }

    #[test]
    fn parses_ascii_syntax() {
        let v = vars(&["x", "y"]);
        let p = Polynomial::parse("x^2 + 3*x*y", &v, k()).unwrap();
        assert_eq!(p.coefficient(&Monomial::new(vec![2, 0])), 1);
        assert_eq!(p.coefficient(&Monomial::new(vec![1, 1])), 3);
        assert_eq!(p.len(), 2);
        let q = Polynomial::parse("3xy + x x", &v, k()).unwrap();
        assert_eq!(p, q);
        let r = Polynomial::parse("-(x - y)^2", &v, k()).unwrap();
        assert_eq!(r.coefficient(&Monomial::new(vec![1, 1])), 2);
        assert_eq!(r.coefficient(&Monomial::new(vec![2, 0])), 100);
        assert_eq!(Polynomial::parse("x^2 - 1", &vars(&["x"]), k()).unwrap().constant_term(), 100);
    }

    #[test]
    fn parse_errors() {
        let v = vars(&["x"]);
        assert!(Polynomial::parse("x + z", &v, k()).is_err());
        assert!(Polynomial::parse("x^", &v, k()).is_err());
        assert!(Polynomial::parse("(x", &v, k()).is_err());
        assert!(Polynomial::parse("x $", &v, k()).is_err());
    }

    #[test]
    fn display_round_trips() {
        let v = vars(&["x", "y"]);
        for s in ["x^2 - 1", "x*y + y", "0", "-x + 7*y^2"] {
            let p = Polynomial::parse(s, &v, k()).unwrap();
            let shown = p.display(&v).to_string();
            assert_eq!(Polynomial::parse(&shown, &v, k()).unwrap(), p, "{s} -> {shown}");
        }
    }

    #[test]
    fn multi_letter_variables() {
        let v = vars(&["a", "ab", "b"]);
        let p = Polynomial::parse("ab*b", &v, k()).unwrap();
        assert_eq!(p.leading_monomial(MonomialOrder::DegRevLex).unwrap(), &Monomial::new(vec![0, 1, 1]));
        let q = Polynomial::parse("aab", &v, k()).unwrap();
        assert_eq!(q.leading_monomial(MonomialOrder::DegRevLex).unwrap(), &Monomial::new(vec![1, 1, 0]));
    }
}
