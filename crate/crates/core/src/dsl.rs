//! Text syntax for games and strategies.
//!
//! Types, loosest first: `-o` (right), `+`, `&`, `*` (all right-nested), `^n`,
//! atoms `1`, `Bool`, `QBit`, `N<k>` and parentheses. The Unicode connectives
//! `⊸ ⊕ ⊗` are accepted too.
//!
//! Strategies, loosest first: `;` (left), `+` (left), `*` (right), prefix
//! scalars `(re,im).e` and `w[n,k].e`, then atoms: `name[T,…]`,
//! `name(e,…)`, `perm[n]{bits->bits,…}` and parentheses.

use std::fmt;

use crate::compose::compose;
use crate::constructors::{bool_game, lollipop, oplus, point_game, power, qbit, tensor, unit_game, with};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::gates;
use crate::scalar::{self, Scalar};
use crate::strategy::Morphism;
use crate::structural as st;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeExpr {
    One,
    Bool,
    QBit,
    N(usize),
    Tensor(Box<TypeExpr>, Box<TypeExpr>),
    Lolli(Box<TypeExpr>, Box<TypeExpr>),
    With(Box<TypeExpr>, Box<TypeExpr>),
    Oplus(Box<TypeExpr>, Box<TypeExpr>),
    Power(Box<TypeExpr>, usize),
}

impl TypeExpr {
    fn level(&self) -> u8 {
        match self {
            TypeExpr::Lolli(..) => 0,
            TypeExpr::Oplus(..) => 1,
            TypeExpr::With(..) => 2,
            TypeExpr::Tensor(..) => 3,
            TypeExpr::Power(..) => 4,
            _ => 5,
        }
    }

    pub fn eval(&self) -> Result<Game> {
        Ok(match self {
            TypeExpr::One => unit_game(),
            TypeExpr::Bool => bool_game(),
            TypeExpr::QBit => qbit(),
            TypeExpr::N(k) => point_game(*k)?,
            TypeExpr::Tensor(a, b) => tensor(&a.eval()?, &b.eval()?),
            TypeExpr::Lolli(a, b) => lollipop(&a.eval()?, &b.eval()?),
            TypeExpr::With(a, b) => with(&a.eval()?, &b.eval()?),
            TypeExpr::Oplus(a, b) => oplus(&a.eval()?, &b.eval()?),
            TypeExpr::Power(a, n) => power(&a.eval()?, *n)?,
        })
    }
}

fn write_child<T: fmt::Display>(f: &mut fmt::Formatter<'_>, child: &T, paren: bool) -> fmt::Result {
    if paren { write!(f, "({child})") } else { write!(f, "{child}") }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, op) = match self {
            TypeExpr::One => return f.write_str("1"),
            TypeExpr::Bool => return f.write_str("Bool"),
            TypeExpr::QBit => return f.write_str("QBit"),
            TypeExpr::N(k) => return write!(f, "N<{k}>"),
            TypeExpr::Power(a, n) => {
                write_child(f, a, a.level() <= 4)?;
                return write!(f, "^{n}");
            }
            TypeExpr::Tensor(a, b) => (a, b, " * "),
            TypeExpr::Lolli(a, b) => (a, b, " -o "),
            TypeExpr::With(a, b) => (a, b, " & "),
            TypeExpr::Oplus(a, b) => (a, b, " + "),
        };
        let l = self.level();
        write_child(f, a, a.level() <= l)?;
        f.write_str(op)?;
        write_child(f, b, b.level() < l)
    }
}

/// Structural witnesses, instantiated at explicit types.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Id,
    Twist,
    Assoc,
    AssocInv,
    App,
    Proj1,
    Proj2,
    InjL,
    InjR,
    TwistWith,
    AssocWith,
    AssocWithInv,
    TwistPlus,
    AssocPlus,
    AssocPlusInv,
    Dist,
    DistInv,
    DistLeft,
    DistLeftInv,
    DistLolliWith,
    DistLolliWithInv,
    DistTensorWith,
}

const WITNESSES: [(Witness, &str, usize); 22] = [
    (Witness::Id, "id", 1),
    (Witness::Twist, "twist", 2),
    (Witness::Assoc, "assoc", 3),
    (Witness::AssocInv, "associnv", 3),
    (Witness::App, "app", 2),
    (Witness::Proj1, "proj1", 2),
    (Witness::Proj2, "proj2", 2),
    (Witness::InjL, "injl", 2),
    (Witness::InjR, "injr", 2),
    (Witness::TwistWith, "twistwith", 2),
    (Witness::AssocWith, "assocwith", 3),
    (Witness::AssocWithInv, "assocwithinv", 3),
    (Witness::TwistPlus, "twistplus", 2),
    (Witness::AssocPlus, "assocplus", 3),
    (Witness::AssocPlusInv, "assocplusinv", 3),
    (Witness::Dist, "dist", 3),
    (Witness::DistInv, "distinv", 3),
    (Witness::DistLeft, "distleft", 3),
    (Witness::DistLeftInv, "distleftinv", 3),
    (Witness::DistLolliWith, "distlolliwith", 3),
    (Witness::DistLolliWithInv, "distlolliwithinv", 3),
    (Witness::DistTensorWith, "disttensorwith", 3),
];

impl Witness {
    fn entry(self) -> (&'static str, usize) {
        let (_, name, arity) = WITNESSES.iter().find(|(w, ..)| *w == self).expect("listed");
        (name, *arity)
    }

    pub fn name(self) -> &'static str {
        self.entry().0
    }

    pub fn arity(self) -> usize {
        self.entry().1
    }

    fn eval(self, g: &[Game]) -> Result<Morphism> {
        use Witness::*;
        match self {
            Id => st::identity(&g[0]),
            Twist => st::twist_tensor(&g[0], &g[1]),
            Assoc => st::assoc_tensor(&g[0], &g[1], &g[2]),
            AssocInv => st::assoc_tensor_inv(&g[0], &g[1], &g[2]),
            App => st::app(&g[0], &g[1]),
            Proj1 => st::proj1(&g[0], &g[1]),
            Proj2 => st::proj2(&g[0], &g[1]),
            InjL => st::injl(&g[0], &g[1]),
            InjR => st::injr(&g[0], &g[1]),
            TwistWith => st::twist_with(&g[0], &g[1]),
            AssocWith => st::assoc_with(&g[0], &g[1], &g[2]),
            AssocWithInv => st::assoc_with_inv(&g[0], &g[1], &g[2]),
            TwistPlus => st::twist_oplus(&g[0], &g[1]),
            AssocPlus => st::assoc_oplus(&g[0], &g[1], &g[2]),
            AssocPlusInv => st::assoc_oplus_inv(&g[0], &g[1], &g[2]),
            Dist => st::dist(&g[0], &g[1], &g[2]),
            DistInv => st::dist_inv(&g[0], &g[1], &g[2]),
            DistLeft => st::dist_left(&g[0], &g[1], &g[2]),
            DistLeftInv => st::dist_left_inv(&g[0], &g[1], &g[2]),
            DistLolliWith => st::dist_lolli_with(&g[0], &g[1], &g[2]),
            DistLolliWithInv => st::dist_lolli_with_inv(&g[0], &g[1], &g[2]),
            DistTensorWith => st::dist_tensor_with(&g[0], &g[1], &g[2]),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarLit {
    Complex(f64, f64),
    /// `exp(2πik/n)`.
    Root(u32, i64),
}

impl ScalarLit {
    pub fn value(self) -> Scalar {
        match self {
            ScalarLit::Complex(re, im) => Scalar::new(re, im),
            ScalarLit::Root(n, k) => scalar::root_of_unity(n, k),
        }
    }
}

impl fmt::Display for ScalarLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarLit::Complex(re, im) => write!(f, "({re:?},{im:?})"),
            ScalarLit::Root(n, k) => write!(f, "w[{n},{k}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StrategyExpr {
    Witness(Witness, Vec<TypeExpr>),
    SqrtNot,
    /// NOT on `QBit`.
    Not,
    Toffoli,
    SqrtTwist(TypeExpr),
    Shift(usize),
    Clock(usize),
    Diag(usize),
    Perm(usize, Vec<usize>),
    Curry(Box<StrategyExpr>),
    Cntrl(Box<StrategyExpr>),
    Pair(Box<StrategyExpr>, Box<StrategyExpr>),
    Copair(Box<StrategyExpr>, Box<StrategyExpr>),
    Tensor(Box<StrategyExpr>, Box<StrategyExpr>),
    Seq(Box<StrategyExpr>, Box<StrategyExpr>),
    Add(Box<StrategyExpr>, Box<StrategyExpr>),
    Scale(ScalarLit, Box<StrategyExpr>),
}

impl StrategyExpr {
    fn level(&self) -> u8 {
        match self {
            StrategyExpr::Seq(..) => 0,
            StrategyExpr::Add(..) => 1,
            StrategyExpr::Tensor(..) => 2,
            StrategyExpr::Scale(..) => 3,
            _ => 4,
        }
    }

    pub fn eval(&self) -> Result<Morphism> {
        let typed = |r: Result<Morphism>| {
            r.map_err(|e| match e {
                Error::GameMismatch(msg) | Error::NotReversible(msg) => Error::Type { node: self.to_string(), msg },
                other => other,
            })
        };
        match self {
            StrategyExpr::Witness(w, args) => {
                let games = args.iter().map(TypeExpr::eval).collect::<Result<Vec<_>>>()?;
                typed(w.eval(&games))
            }
            StrategyExpr::SqrtNot => gates::sqrt_not(),
            StrategyExpr::Not => gates::not_gate(),
            StrategyExpr::Toffoli => gates::toffoli(),
            StrategyExpr::SqrtTwist(t) => gates::sqrt_twist(&t.eval()?),
            StrategyExpr::Shift(n) => gates::schwinger_shift(*n),
            StrategyExpr::Clock(n) => gates::schwinger_clock(*n),
            StrategyExpr::Diag(n) => gates::bool_diag(*n),
            StrategyExpr::Perm(n, table) => gates::perm_strategy(&gates::BitPermutation::new(*n, table.clone())?),
            StrategyExpr::Curry(e) => typed(st::curry(&e.eval()?)),
            StrategyExpr::Cntrl(e) => typed(gates::cntrl(&e.eval()?)),
            StrategyExpr::Pair(a, b) => typed(st::pairing(&a.eval()?, &b.eval()?)),
            StrategyExpr::Copair(a, b) => typed(st::copair(&a.eval()?, &b.eval()?)),
            StrategyExpr::Tensor(a, b) => typed(st::tensor_morphisms(&a.eval()?, &b.eval()?)),
            StrategyExpr::Seq(a, b) => typed(compose(&a.eval()?, &b.eval()?)),
            StrategyExpr::Add(a, b) => typed(a.eval()?.add(&b.eval()?)),
            StrategyExpr::Scale(z, e) => Ok(e.eval()?.scale(z.value())),
        }
    }
}

fn bits(x: usize, n: usize) -> String {
    (0..n).rev().map(|i| if (x >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, open: &str, items: &[T], close: &str) -> fmt::Result {
    f.write_str(open)?;
    for (i, t) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{t}")?;
    }
    f.write_str(close)
}

impl fmt::Display for StrategyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use StrategyExpr::*;
        match self {
            Witness(w, args) => {
                f.write_str(w.name())?;
                write_list(f, "[", args, "]")
            }
            SqrtNot => f.write_str("sqrtnot"),
            Not => f.write_str("not"),
            Toffoli => f.write_str("toffoli"),
            SqrtTwist(t) => write!(f, "sqrttwist[{t}]"),
            Shift(n) => write!(f, "shift[{n}]"),
            Clock(n) => write!(f, "clock[{n}]"),
            Diag(n) => write!(f, "diag[{n}]"),
            Perm(n, table) => {
                let rows: Vec<String> = table.iter().enumerate().map(|(x, y)| format!("{}->{}", bits(x, *n), bits(*y, *n))).collect();
                write!(f, "perm[{n}]")?;
                write_list(f, "{", &rows, "}")
            }
            Curry(e) => write!(f, "curry({e})"),
            Cntrl(e) => write!(f, "cntrl({e})"),
            Pair(a, b) => write!(f, "pair({a},{b})"),
            Copair(a, b) => write!(f, "copair({a},{b})"),
            Scale(z, e) => {
                write!(f, "{z}.")?;
                write_child(f, e, e.level() < 3)
            }
            Tensor(a, b) | Seq(a, b) | Add(a, b) => {
                let l = self.level();
                let (op, right_assoc) = match self {
                    Tensor(..) => (" * ", true),
                    Seq(..) => (" ; ", false),
                    _ => (" + ", false),
                };
                let (pl, pr) = if right_assoc { (a.level() <= l, b.level() < l) } else { (a.level() < l, b.level() <= l) };
                write_child(f, a, pl)?;
                f.write_str(op)?;
                write_child(f, b, pr)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(&'static str),
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    const SYMS: [&str; 19] =
        ["-o", "->", "⊸", "⊕", "⊗", "(", ")", "[", "]", "{", "}", "<", ">", ",", ";", "+", "*", "&", "^"];
    'outer: while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        for s in SYMS {
            let sc: Vec<char> = s.chars().collect();
            if chars[i..].starts_with(&sc) {
                out.push((i, Tok::Sym(s)));
                i += sc.len();
                continue 'outer;
            }
        }
        let start = i;
        if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if c.is_ascii_digit() || ((c == '-' || c == '.') && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            if c == '-' {
                i += 1;
            }
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                // a dot followed by a letter ends the number: `(1,0).id`
                if chars[i] == '.' && !chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                    break;
                }
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '-' || chars[j] == '+') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            out.push((start, Tok::Num(chars[start..i].iter().collect())));
        } else if c == '.' {
            out.push((i, Tok::Sym(".")));
            i += 1;
        } else {
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser { toks: lex(text)?, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.at + k).min(self.toks.len() - 1)].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(x) if *x == s) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) { Ok(()) } else { self.err(format!("expected `{s}`")) }
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() == Tok::End { Ok(()) } else { self.err("unexpected trailing input") }
    }

    fn int(&mut self) -> Result<usize> {
        match self.peek().clone() {
            Tok::Num(s) => match s.parse() {
                Ok(n) => {
                    self.next();
                    Ok(n)
                }
                Err(_) => self.err(format!("expected a non-negative integer, found `{s}`")),
            },
            _ => self.err("expected an integer"),
        }
    }

    fn float(&mut self) -> Result<f64> {
        match self.peek().clone() {
            Tok::Num(s) => match s.parse() {
                Ok(x) => {
                    self.next();
                    Ok(x)
                }
                Err(_) => self.err(format!("bad number `{s}`")),
            },
            _ => self.err("expected a number"),
        }
    }

    fn ty(&mut self) -> Result<TypeExpr> {
        let a = self.ty_sum()?;
        if self.eat("-o") || self.eat("⊸") {
            return Ok(TypeExpr::Lolli(Box::new(a), Box::new(self.ty()?)));
        }
        Ok(a)
    }

    fn ty_sum(&mut self) -> Result<TypeExpr> {
        let a = self.ty_with()?;
        if self.eat("+") || self.eat("⊕") {
            return Ok(TypeExpr::Oplus(Box::new(a), Box::new(self.ty_sum()?)));
        }
        Ok(a)
    }

    fn ty_with(&mut self) -> Result<TypeExpr> {
        let a = self.ty_tensor()?;
        if self.eat("&") {
            return Ok(TypeExpr::With(Box::new(a), Box::new(self.ty_with()?)));
        }
        Ok(a)
    }

    fn ty_tensor(&mut self) -> Result<TypeExpr> {
        let a = self.ty_power()?;
        if self.eat("*") || self.eat("⊗") {
            return Ok(TypeExpr::Tensor(Box::new(a), Box::new(self.ty_tensor()?)));
        }
        Ok(a)
    }

    fn ty_power(&mut self) -> Result<TypeExpr> {
        let mut a = self.ty_atom()?;
        while self.eat("^") {
            let n = self.int()?;
            if n == 0 {
                return self.err("exponent must be at least 1");
            }
            a = TypeExpr::Power(Box::new(a), n);
        }
        Ok(a)
    }

    fn ty_atom(&mut self) -> Result<TypeExpr> {
        match self.peek().clone() {
            Tok::Sym("(") => {
                self.next();
                let t = self.ty()?;
                self.expect(")")?;
                Ok(t)
            }
            Tok::Num(s) if s == "1" => {
                self.next();
                Ok(TypeExpr::One)
            }
            Tok::Ident(s) => {
                self.next();
                match s.as_str() {
                    "Bool" => Ok(TypeExpr::Bool),
                    "QBit" => Ok(TypeExpr::QBit),
                    "N" => {
                        self.expect("<")?;
                        let k = self.int()?;
                        if k == 0 {
                            return self.err("N<k> needs k ≥ 1");
                        }
                        self.expect(">")?;
                        Ok(TypeExpr::N(k))
                    }
                    _ => {
                        self.at -= 1;
                        self.err(format!("unknown type `{s}`"))
                    }
                }
            }
            _ => self.err("expected a type"),
        }
    }

    fn st(&mut self) -> Result<StrategyExpr> {
        let mut a = self.st_sum()?;
        while self.eat(";") {
            a = StrategyExpr::Seq(Box::new(a), Box::new(self.st_sum()?));
        }
        Ok(a)
    }

    fn st_sum(&mut self) -> Result<StrategyExpr> {
        let mut a = self.st_tensor()?;
        while self.eat("+") {
            a = StrategyExpr::Add(Box::new(a), Box::new(self.st_tensor()?));
        }
        Ok(a)
    }

    fn st_tensor(&mut self) -> Result<StrategyExpr> {
        let a = self.st_scaled()?;
        if self.eat("*") {
            return Ok(StrategyExpr::Tensor(Box::new(a), Box::new(self.st_tensor()?)));
        }
        Ok(a)
    }

    /// `(re,im).` with a lookahead, so that `(e)` still parses as grouping.
    fn complex_prefix(&self) -> bool {
        matches!(
            (self.peek(), self.peek_at(1), self.peek_at(2), self.peek_at(3), self.peek_at(4), self.peek_at(5)),
            (Tok::Sym("("), Tok::Num(_), Tok::Sym(","), Tok::Num(_), Tok::Sym(")"), Tok::Sym("."))
        )
    }

    fn st_scaled(&mut self) -> Result<StrategyExpr> {
        if self.complex_prefix() {
            self.next();
            let re = self.float()?;
            self.expect(",")?;
            let im = self.float()?;
            self.expect(")")?;
            self.expect(".")?;
            return Ok(StrategyExpr::Scale(ScalarLit::Complex(re, im), Box::new(self.st_scaled()?)));
        }
        if matches!(self.peek(), Tok::Ident(s) if s == "w") && *self.peek_at(1) == Tok::Sym("[") {
            self.next();
            self.expect("[")?;
            let n = self.int()?;
            if n == 0 {
                return self.err("root of unity of order 0");
            }
            self.expect(",")?;
            let neg = matches!(self.peek(), Tok::Num(s) if s.starts_with('-'));
            let k = if neg {
                let Tok::Num(s) = self.peek().clone() else { unreachable!() };
                let v: i64 = s.parse().or_else(|_| self.err("bad exponent"))?;
                self.next();
                v
            } else {
                self.int()? as i64
            };
            self.expect("]")?;
            self.expect(".")?;
            return Ok(StrategyExpr::Scale(ScalarLit::Root(n as u32, k), Box::new(self.st_scaled()?)));
        }
        self.st_atom()
    }

    fn types(&mut self) -> Result<Vec<TypeExpr>> {
        self.expect("[")?;
        let mut out = vec![self.ty()?];
        while self.eat(",") {
            out.push(self.ty()?);
        }
        self.expect("]")?;
        Ok(out)
    }

    fn args(&mut self) -> Result<Vec<StrategyExpr>> {
        self.expect("(")?;
        let mut out = vec![self.st()?];
        while self.eat(",") {
            out.push(self.st()?);
        }
        self.expect(")")?;
        Ok(out)
    }

    fn bracket_int(&mut self) -> Result<usize> {
        self.expect("[")?;
        let n = self.int()?;
        self.expect("]")?;
        Ok(n)
    }

    fn bitstring(&mut self, n: usize) -> Result<usize> {
        match self.peek().clone() {
            Tok::Num(s) if s.len() == n && s.chars().all(|c| c == '0' || c == '1') => {
                self.next();
                Ok(usize::from_str_radix(&s, 2).expect("binary digits"))
            }
            _ => self.err(format!("expected a {n}-bit string")),
        }
    }

    fn perm(&mut self) -> Result<StrategyExpr> {
        let n = self.bracket_int()?;
        if !(1..=3).contains(&n) {
            return self.err("perm supports 1 to 3 bits");
        }
        self.expect("{")?;
        let mut table = vec![None; 1 << n];
        loop {
            let pos = self.pos();
            let x = self.bitstring(n)?;
            self.expect("->")?;
            let y = self.bitstring(n)?;
            if table[x].replace(y).is_some() {
                return Err(Error::Syntax { pos, msg: format!("input {} listed twice", bits(x, n)) });
            }
            if !self.eat(",") {
                break;
            }
        }
        self.expect("}")?;
        let table: Option<Vec<usize>> = table.into_iter().collect();
        match table {
            Some(t) => Ok(StrategyExpr::Perm(n, t)),
            None => self.err("perm table must list every input"),
        }
    }

    fn st_atom(&mut self) -> Result<StrategyExpr> {
        use StrategyExpr as S;
        let start = self.at;
        match self.next() {
            Tok::Sym("(") => {
                let e = self.st()?;
                self.expect(")")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if let Some((w, _, arity)) = WITNESSES.iter().find(|(_, n, _)| *n == name) {
                    let pos = self.pos();
                    let args = self.types()?;
                    if args.len() != *arity {
                        return Err(Error::Syntax {
                            pos,
                            msg: format!("{name} takes {arity} type argument(s), got {}", args.len()),
                        });
                    }
                    return Ok(S::Witness(*w, args));
                }
                let two = |p: &mut Self, f: fn(Box<S>, Box<S>) -> S| -> Result<S> {
                    let pos = p.pos();
                    let mut a = p.args()?;
                    if a.len() != 2 {
                        return Err(Error::Syntax { pos, msg: format!("{name} takes two strategies") });
                    }
                    let b = a.pop().expect("two");
                    let a = a.pop().expect("two");
                    Ok(f(Box::new(a), Box::new(b)))
                };
                let one = |p: &mut Self, f: fn(Box<S>) -> S| -> Result<S> {
                    let pos = p.pos();
                    let mut a = p.args()?;
                    if a.len() != 1 {
                        return Err(Error::Syntax { pos, msg: format!("{name} takes one strategy") });
                    }
                    Ok(f(Box::new(a.pop().expect("one"))))
                };
                match name.as_str() {
                    "sqrtnot" => Ok(S::SqrtNot),
                    "not" => Ok(S::Not),
                    "toffoli" => Ok(S::Toffoli),
                    "sqrttwist" => {
                        let pos = self.pos();
                        let mut t = self.types()?;
                        if t.len() != 1 {
                            return Err(Error::Syntax { pos, msg: "sqrttwist takes one type".into() });
                        }
                        Ok(S::SqrtTwist(t.pop().expect("one")))
                    }
                    "shift" => Ok(S::Shift(self.bracket_int()?)),
                    "clock" => Ok(S::Clock(self.bracket_int()?)),
                    "diag" => Ok(S::Diag(self.bracket_int()?)),
                    "perm" => self.perm(),
                    "curry" => one(self, S::Curry),
                    "cntrl" => one(self, S::Cntrl),
                    "pair" => two(self, S::Pair),
                    "copair" => two(self, S::Copair),
                    _ => {
                        self.at = start;
                        self.err(format!("unknown strategy `{name}`"))
                    }
                }
            }
            _ => {
                self.at = start;
                self.err("expected a strategy")
            }
        }
    }
}

pub fn parse_type(text: &str) -> Result<TypeExpr> {
    let mut p = Parser::new(text)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_strategy(text: &str) -> Result<StrategyExpr> {
    let mut p = Parser::new(text)?;
    let e = p.st()?;
    p.finish()?;
    Ok(e)
}
