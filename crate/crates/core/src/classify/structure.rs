//! Structure strings for Hall subgroups and the order they imply.
//!
//! Grammar, all binary operators sharing one precedence and associating to
//! the left:
//!
//! ```text
//! expr    := postfix (op postfix)*
//! op      := "×" | "x" | ":" | "." | "∘" | "wr" | "/"
//! postfix := atom ("^" integer)*
//! atom    := integer | "(" expr ")" | name | name "(" args ")"
//! ```
//!
//! `∘` is a central product over a common central subgroup of order 2,
//! `A wr B` has order `|A|^deg(B)·|B|`, and `A / m` divides by the integer m.
//! `Hall(expr)` stands for a π-Hall subgroup of `expr` and has order equal
//! to the π-part of the inner order.

use crate::arith::{pi_part, PrimeSet, Sign};
use crate::groups::{order, GroupSpec, Sporadic};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("structure parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
    #[error("structure evaluation error: {0}")]
    Eval(String),
}

#[derive(Debug, Clone)]
struct Val {
    order: BigUint,
    degree: Option<u64>,
}

impl Val {
    fn plain(order: BigUint) -> Self {
        Val { order, degree: None }
    }
}

const NAMED: &[(&str, u64)] = &[
    ("Q8", 8),
    ("L3(4)", 20_160),
    ("G2(2)", 12_096),
    ("Omega7(2)", 1_451_520),
    ("Omega8+(2)", 174_182_400),
    ("W(G2)", 12),
    ("W(F4)", 1_152),
    ("W(E6)", 51_840),
    ("W(E7)", 2_903_040),
    ("W(E8)", 696_729_600),
];

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    pi: &'a PrimeSet,
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, StructureError> {
        Err(StructureError::Parse {
            at: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<u64> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return None;
        }
        self.pos += digits.len();
        digits.parse().ok()
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let mut end = 0;
        for (i, c) in rest.char_indices() {
            let ok = if i == 0 {
                c.is_ascii_alphabetic()
            } else {
                c.is_ascii_alphanumeric() || ((c == '+' || c == '-') && rest[i + 1..].starts_with('('))
            };
            if !ok {
                break;
            }
            end = i + c.len_utf8();
        }
        if end == 0 {
            return None;
        }
        // a lone `x` or `wr` is an operator, not a name
        let word = &rest[..end];
        if word == "x" || word == "wr" {
            return None;
        }
        self.pos += end;
        Some(word)
    }

    fn op(&mut self) -> Option<&'static str> {
        self.skip_ws();
        let rest = self.rest();
        for (tok, name) in [("×", "×"), ("∘", "∘"), (":", ":"), (".", "."), ("/", "/")] {
            if rest.starts_with(tok) {
                self.pos += tok.len();
                return Some(name);
            }
        }
        for (word, name) in [("wr", "wr"), ("x", "×")] {
            if rest.starts_with(word)
                && !rest[word.len()..].starts_with(|c: char| c.is_ascii_alphanumeric())
            {
                self.pos += word.len();
                return Some(name);
            }
        }
        None
    }

    fn expr(&mut self) -> Result<Val, StructureError> {
        let mut acc = self.postfix()?;
        while let Some(op) = self.op() {
            let rhs = self.postfix()?;
            acc = combine(acc, op, rhs)?;
        }
        Ok(acc)
    }

    fn postfix(&mut self) -> Result<Val, StructureError> {
        let mut v = self.atom()?;
        while self.eat("^") {
            let Some(k) = self.number() else {
                return self.err("expected an exponent after `^`");
            };
            let k = u32::try_from(k).map_err(|_| StructureError::Eval("exponent too large".into()))?;
            v = Val::plain(v.order.pow(k));
        }
        Ok(v)
    }

    fn int_arg(&mut self) -> Result<u64, StructureError> {
        match self.number() {
            Some(v) => Ok(v),
            None => self.err("expected an integer argument"),
        }
    }

    fn close(&mut self) -> Result<(), StructureError> {
        if self.eat(")") {
            Ok(())
        } else {
            self.err("expected `)`")
        }
    }

    fn atom(&mut self) -> Result<Val, StructureError> {
        self.skip_ws();
        let start = self.pos;
        if let Some(n) = self.number() {
            return Ok(Val {
                order: big(n),
                degree: None,
            });
        }
        if self.eat("(") {
            let v = self.expr()?;
            self.close()?;
            return Ok(v);
        }
        for (name, ord) in NAMED {
            if self.rest().starts_with(name) {
                self.pos += name.len();
                return Ok(Val::plain(big(*ord)));
            }
        }
        let Some(name) = self.ident() else {
            return self.err("expected a number, `(` or a name");
        };
        if !self.eat("(") {
            return self.bare_name(name, start);
        }
        match name {
            "Z" => {
                let m = self.int_arg()?;
                self.close()?;
                Ok(Val {
                    order: big(m),
                    degree: Some(m),
                })
            }
            "D" => {
                let m = self.int_arg()?;
                self.close()?;
                Ok(Val::plain(big(m)))
            }
            "Sym" | "Alt" => {
                let n = self.int_arg()?;
                self.close()?;
                Ok(symmetric(name == "Alt", n))
            }
            "SL2" => {
                let q = self.int_arg()?;
                self.close()?;
                Ok(Val::plain(big(q) * (big(q) * q - 1u32)))
            }
            "GL2" => {
                let q = self.int_arg()?;
                if !self.eat(",") {
                    return self.err("GL2 takes (q, sign)");
                }
                let s = if self.eat("+") {
                    Sign::Plus
                } else if self.eat("-") {
                    Sign::Minus
                } else {
                    return self.err("expected a sign");
                };
                self.close()?;
                let base = big(q) * (big(q) * q - 1u32);
                Ok(Val::plain(base * s.q_minus(q)))
            }
            "Hall" => {
                let inner = self.expr()?;
                self.close()?;
                Ok(Val {
                    order: pi_part(&inner.order, self.pi),
                    degree: inner.degree,
                })
            }
            _ => {
                // fall back to a group description such as PSL(2,7)
                let mut depth = 1;
                while depth > 0 {
                    let Some(c) = self.rest().chars().next() else {
                        return self.err("unbalanced parentheses");
                    };
                    self.pos += c.len_utf8();
                    match c {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        _ => {}
                    }
                }
                let text = &self.text[start..self.pos];
                match GroupSpec::parse_valid(text.trim()) {
                    Ok(spec) => Ok(Val::plain(order(&spec).order.value().clone())),
                    Err(e) => {
                        self.pos = start;
                        self.err(format!("unknown atom `{}`: {e}", text.trim()))
                    }
                }
            }
        }
    }

    fn bare_name(&mut self, name: &str, start: usize) -> Result<Val, StructureError> {
        for (prefix, alt) in [("Sym", false), ("Alt", true)] {
            if let Some(n) = name.strip_prefix(prefix).and_then(|d| d.parse::<u64>().ok()) {
                return Ok(symmetric(alt, n));
            }
        }
        if let Some(s) = Sporadic::from_name(name) {
            return Ok(Val::plain(s.order_value()));
        }
        self.pos = start;
        self.err(format!("unknown name `{name}`"))
    }
}

fn symmetric(alt: bool, n: u64) -> Val {
    let mut order = factorial(n);
    if alt && n >= 2 {
        order /= 2u32;
    }
    Val {
        order,
        degree: Some(n),
    }
}

fn combine(a: Val, op: &str, b: Val) -> Result<Val, StructureError> {
    let order = match op {
        "×" | ":" | "." => a.order * b.order,
        "∘" => {
            let prod = a.order * b.order;
            if prod.is_odd() {
                return Err(StructureError::Eval("central product of odd-order factors".into()));
            }
            prod / 2u32
        }
        "wr" => {
            let deg = b
                .degree
                .ok_or_else(|| StructureError::Eval("wreath top has no permutation degree".into()))?;
            let deg = u32::try_from(deg).map_err(|_| StructureError::Eval("degree too large".into()))?;
            a.order.pow(deg) * b.order
        }
        "/" => {
            if b.order.is_zero() || !(&a.order % &b.order).is_zero() {
                return Err(StructureError::Eval(format!("{} is not divisible by {}", a.order, b.order)));
            }
            a.order / b.order
        }
        _ => unreachable!("operator table"),
    };
    Ok(Val::plain(order))
}

/// Order implied by a structure string; `Hall(...)` atoms are taken with
/// respect to `pi`.
pub fn structure_order(text: &str, pi: &PrimeSet) -> Result<BigUint, StructureError> {
    let mut p = Parser { text, pos: 0, pi };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.err("trailing input");
    }
    Ok(v.order)
}
