//! Expression parsing and printing for noncommutative polynomials.
//!
//! Precedence: power > unary minus > product (left-associative,
//! order-preserving) > sum. Juxtaposition is not multiplication; `*` is
//! required. `/` divides by invertible elements only (scalars in a PBW
//! algebra, coefficient-field elements in an Ore ring), which covers
//! rational-literal coefficients like `1/2` and rational-function
//! coefficients like `(x+1)/x`. Evaluation runs through the ring's own
//! multiplication, so arbitrary non-normal-form input normalizes correctly.

use std::fmt;
use std::sync::Arc;

use crate::field::Field;
use crate::ore::{OrePoly, OreRing, SkewField};
use crate::pbw::{GAlgebra, PbwPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    Syntax { offset: usize, message: String },
    UnknownSymbol { offset: usize, name: String },
    ExponentOverflow { offset: usize },
    /// Division by something that is not an invertible element of the ring.
    NonUnitDivisor { offset: usize },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { offset, message } => {
                write!(f, "syntax error at byte {}: {}", offset, message)
            }
            ParseError::UnknownSymbol { offset, name } => {
                write!(f, "unknown symbol {:?} at byte {}", name, offset)
            }
            ParseError::ExponentOverflow { offset } => {
                write!(f, "exponent out of range at byte {}", offset)
            }
            ParseError::NonUnitDivisor { offset } => {
                write!(f, "division by a non-invertible element at byte {}", offset)
            }
        }
    }
}

impl std::error::Error for ParseError {}

/// Expression tree. Products preserve operand order; powers have nonnegative
/// integer exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int { digits: String, offset: usize },
    Sym { name: String, offset: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Int(src[start..i].to_string()), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] as char == '_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(src[start..i].to_string()), start));
            }
            other => {
                return Err(ParseError::Syntax {
                    offset: i,
                    message: format!("unexpected character {:?}", other),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn eof_err(&self) -> ParseError {
        ParseError::Syntax {
            offset: self.end,
            message: "unexpected end of input".into(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        while let Some((tok, _)) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = Expr::Add(Box::new(acc), Box::new(rhs));
                }
                Tok::Minus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = Expr::Add(Box::new(acc), Box::new(Expr::Neg(Box::new(rhs))));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while let Some((tok, off)) = self.peek().cloned() {
            match tok {
                Tok::Star => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = Expr::Mul(Box::new(acc), Box::new(rhs));
                }
                Tok::Slash => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = Expr::Div(Box::new(acc), Box::new(rhs), off);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some((Tok::Minus, _)) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some((Tok::Caret, off)) = self.peek().cloned() {
            self.pos += 1;
            match self.peek().cloned() {
                Some((Tok::Int(digits), doff)) => {
                    self.pos += 1;
                    let e: u32 = digits
                        .parse()
                        .map_err(|_| ParseError::ExponentOverflow { offset: doff })?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                Some((Tok::Minus, moff)) => {
                    return Err(ParseError::Syntax {
                        offset: moff,
                        message: "negative exponents are not allowed".into(),
                    })
                }
                _ => {
                    return Err(ParseError::Syntax {
                        offset: off,
                        message: "'^' must be followed by a nonnegative integer".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            None => Err(self.eof_err()),
            Some((Tok::LParen, open)) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some((Tok::RParen, _)) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(ParseError::Syntax {
                        offset: open,
                        message: "unbalanced parenthesis".into(),
                    }),
                }
            }
            Some((Tok::Int(digits), offset)) => {
                self.pos += 1;
                Ok(Expr::Int { digits, offset })
            }
            Some((Tok::Ident(name), offset)) => {
                self.pos += 1;
                Ok(Expr::Sym { name, offset })
            }
            Some((tok, offset)) => Err(ParseError::Syntax {
                offset,
                message: format!("unexpected token {:?}", tok),
            }),
        }
    }
}

/// Parse a source string into an expression tree.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if let Some((tok, offset)) = p.peek() {
        return Err(ParseError::Syntax {
            offset: *offset,
            message: format!(
                "trailing input {:?} (note: juxtaposition is not multiplication)",
                tok
            ),
        });
    }
    Ok(e)
}

/// Rings that expressions evaluate into.
pub trait ExprRing {
    type Val: Clone;
    fn int_digits(&self, digits: &str) -> Self::Val;
    fn lookup(&self, name: &str) -> Option<Self::Val>;
    fn add(&self, a: &Self::Val, b: &Self::Val) -> Self::Val;
    fn neg(&self, a: &Self::Val) -> Self::Val;
    fn mul(&self, a: &Self::Val, b: &Self::Val) -> Self::Val;
    fn one(&self) -> Self::Val;
    /// Inverse, defined exactly for invertible ring elements.
    fn inv_unit(&self, a: &Self::Val) -> Option<Self::Val>;
}

/// Fold decimal digits into a field element (handles literals of any size).
fn fold_digits<K: Field>(k: &K, digits: &str) -> K::Elem {
    let ten = k.from_i64(10);
    let mut acc = k.zero();
    for d in digits.bytes() {
        let v = k.from_i64((d - b'0') as i64);
        acc = k.add(&k.mul(&acc, &ten), &v);
    }
    acc
}

impl<K: Field> ExprRing for Arc<GAlgebra<K>> {
    type Val = PbwPoly<K>;

    fn int_digits(&self, digits: &str) -> PbwPoly<K> {
        self.scalar(fold_digits(self.field(), digits))
    }

    fn lookup(&self, name: &str) -> Option<PbwPoly<K>> {
        if let Some(i) = self.names().iter().position(|n| n == name) {
            return Some(self.gen(i));
        }
        named_scalar(self.field(), name).map(|c| self.scalar(c))
    }

    fn add(&self, a: &PbwPoly<K>, b: &PbwPoly<K>) -> PbwPoly<K> {
        a.add(b).expect("same ring")
    }

    fn neg(&self, a: &PbwPoly<K>) -> PbwPoly<K> {
        a.neg()
    }

    fn mul(&self, a: &PbwPoly<K>, b: &PbwPoly<K>) -> PbwPoly<K> {
        a.mul(b).expect("same ring")
    }

    fn one(&self) -> PbwPoly<K> {
        GAlgebra::one(self)
    }

    fn inv_unit(&self, a: &PbwPoly<K>) -> Option<PbwPoly<K>> {
        if !a.is_unit() {
            return None;
        }
        let c = a.leading_coeff()?;
        Some(self.scalar(self.field().inv(&c).ok()?))
    }
}

impl<K: SkewField> ExprRing for Arc<OreRing<K>> {
    type Val = OrePoly<K>;

    fn int_digits(&self, digits: &str) -> OrePoly<K> {
        self.scalar(fold_digits(self.field(), digits))
    }

    fn lookup(&self, name: &str) -> Option<OrePoly<K>> {
        if name == OreRing::symbol(&**self) {
            return Some(self.op());
        }
        named_scalar(self.field(), name).map(|c| self.scalar(c))
    }

    fn add(&self, a: &OrePoly<K>, b: &OrePoly<K>) -> OrePoly<K> {
        a.add(b).expect("same ring")
    }

    fn neg(&self, a: &OrePoly<K>) -> OrePoly<K> {
        a.neg()
    }

    fn mul(&self, a: &OrePoly<K>, b: &OrePoly<K>) -> OrePoly<K> {
        a.mul(b).expect("same ring")
    }

    fn one(&self) -> OrePoly<K> {
        OreRing::one(self)
    }

    fn inv_unit(&self, a: &OrePoly<K>) -> Option<OrePoly<K>> {
        if a.degree() != Some(0) {
            return None;
        }
        let c = a.leading_coeff()?;
        Some(self.scalar(self.field().inv(c).ok()?))
    }
}

/// Field-specific scalar symbols: `i` over QQ(i), the indeterminate of a
/// rational function field (recursively through towers).
pub fn named_scalar<K: Field>(field: &K, name: &str) -> Option<K::Elem> {
    field.parse(name).ok().filter(|_| {
        // only single identifiers that the field itself understands (the
        // parse covers numbers too, but the lexer routes digits elsewhere)
        name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
    })
}

/// Evaluate an expression tree in a ring.
pub fn eval<R: ExprRing>(ring: &R, expr: &Expr) -> Result<R::Val, ParseError> {
    match expr {
        Expr::Int { digits, .. } => Ok(ring.int_digits(digits)),
        Expr::Sym { name, offset } => {
            ring.lookup(name).ok_or_else(|| ParseError::UnknownSymbol {
                offset: *offset,
                name: name.clone(),
            })
        }
        Expr::Neg(e) => Ok(ring.neg(&eval(ring, e)?)),
        Expr::Add(a, b) => Ok(ring.add(&eval(ring, a)?, &eval(ring, b)?)),
        Expr::Mul(a, b) => Ok(ring.mul(&eval(ring, a)?, &eval(ring, b)?)),
        Expr::Div(a, b, offset) => {
            let num = eval(ring, a)?;
            let den = eval(ring, b)?;
            let inv = ring
                .inv_unit(&den)
                .ok_or(ParseError::NonUnitDivisor { offset: *offset })?;
            Ok(ring.mul(&num, &inv))
        }
        Expr::Pow(base, e) => {
            let b = eval(ring, base)?;
            let mut acc = ring.one();
            for _ in 0..*e {
                acc = ring.mul(&acc, &b);
            }
            Ok(acc)
        }
    }
}

/// Parse and evaluate in one step.
pub fn parse_in<R: ExprRing>(ring: &R, src: &str) -> Result<R::Val, ParseError> {
    let e = parse(src)?;
    eval(ring, &e)
}

/// Canonical rendering of a PBW polynomial: terms in descending monomial
/// order, generators in PBW order inside each monomial. Round-trips through
/// the parser.
pub fn print_pbw<K: Field>(f: &PbwPoly<K>) -> String {
    let ring = f.ring();
    let k = ring.field();
    if f.is_zero() {
        return "0".to_string();
    }
    let mut monos: Vec<_> = f.terms().keys().cloned().collect();
    monos.sort_by(|a, b| ring.cmp_mono(b, a));
    let mut out = String::new();
    let mut first = true;
    for m in monos {
        let c = f.coeff_of(&m);
        let (neg, mag) = if k.display_negative(&c) {
            (true, k.neg(&c))
        } else {
            (false, c)
        };
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono_str = {
            let mut parts = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    parts.push(ring.names()[i].clone());
                } else {
                    parts.push(format!("{}^{}", ring.names()[i], e));
                }
            }
            parts.join("*")
        };
        let cs = k.format(&mag);
        let atom = if k.format_atomic(&mag) {
            cs
        } else {
            format!("({})", cs)
        };
        if mono_str.is_empty() {
            out.push_str(&atom);
        } else if k.is_one(&mag) {
            out.push_str(&mono_str);
        } else {
            out.push_str(&atom);
            out.push('*');
            out.push_str(&mono_str);
        }
    }
    out
}

/// Canonical rendering of an Ore polynomial (delegates to the ring-aware
/// formatter).
pub fn print_ore<K: SkewField>(f: &OrePoly<K>) -> String {
    f.format()
}

/// Render a single PBW monomial, e.g. `x1*x2^3`; the empty monomial is `1`.
pub fn print_mono<K: Field>(ring: &GAlgebra<K>, m: &crate::pbw::Mono) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(ring.names()[i].clone());
        } else {
            parts.push(format!("{}^{}", ring.names()[i], e));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{rat, Rationals};
    use crate::field::{GaussianRationals, PrimeField, RatFuncField};
    use crate::ore::differential_ring;
    use crate::pbw::builtins::*;
    use crate::pbw::sample_poly;
    use rand::SeedableRng;

    #[test]
    fn commutator_normalizes() {
        let w = weyl(Rationals, 1).unwrap();
        let f = parse_in(&w, "d*x - x*d").unwrap();
        assert_eq!(f, GAlgebra::one(&w));
    }

    #[test]
    fn precedence_examples() {
        let w = weyl(Rationals, 1).unwrap();
        let xd2 = parse_in(&w, "x*d^2").unwrap();
        let expect = w.gen(0).mul(&w.gen(1).pow(2).unwrap()).unwrap();
        assert_eq!(xd2, expect);
        // d*x*d = x*d^2 + d
        let dxd = parse_in(&w, "d*x*d").unwrap();
        let expect = expect.add(&w.gen(1)).unwrap();
        assert_eq!(dxd, expect);
        // unary minus binds tighter than product, looser than power
        let e = parse_in(&w, "-x^2").unwrap();
        assert_eq!(e, w.gen(0).pow(2).unwrap().neg());
        assert_eq!(parse_in(&w, "-1/2*x^2").unwrap(), e.scale(&rat(1, 2)));
    }

    #[test]
    fn print_examples() {
        let w = weyl(Rationals, 1).unwrap();
        let xd1 = parse_in(&w, "x*d + 1").unwrap();
        assert_eq!(print_pbw(&xd1), "x*d + 1");
        assert_eq!(print_pbw(&GAlgebra::zero(&w)), "0");
        let e = parse_in(&w, "-1/2*x^2").unwrap();
        assert_eq!(print_pbw(&e), "-1/2*x^2");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let w = weyl(Rationals, 1).unwrap();
        match parse_in(&w, "x*(d + 1").unwrap_err() {
            ParseError::Syntax { offset, .. } => assert_eq!(offset, 2),
            e => panic!("unexpected {:?}", e),
        }
        match parse_in(&w, "x*y").unwrap_err() {
            ParseError::UnknownSymbol { offset, name } => {
                assert_eq!((offset, name.as_str()), (2, "y"));
            }
            e => panic!("unexpected {:?}", e),
        }
        match parse_in(&w, "x^-2").unwrap_err() {
            ParseError::Syntax { offset, .. } => assert_eq!(offset, 2),
            e => panic!("unexpected {:?}", e),
        }
        match parse_in(&w, "2 x").unwrap_err() {
            ParseError::Syntax { offset, .. } => assert_eq!(offset, 2),
            e => panic!("unexpected {:?}", e),
        }
        match parse_in(&w, "x/d").unwrap_err() {
            ParseError::NonUnitDivisor { offset } => assert_eq!(offset, 1),
            e => panic!("unexpected {:?}", e),
        }
        assert!(parse_in(&w, "").is_err());
        match parse_in(&w, "x^99999999999").unwrap_err() {
            ParseError::ExponentOverflow { offset } => assert_eq!(offset, 2),
            e => panic!("unexpected {:?}", e),
        }
    }

    #[test]
    fn scalar_symbols() {
        // i over QQ(i)
        let w = weyl(GaussianRationals, 1).unwrap();
        let f = parse_in(&w, "i*x").unwrap();
        assert_eq!(print_pbw(&f), "i*x");
        assert_eq!(parse_in(&w, &print_pbw(&f)).unwrap(), f);
        // (1+i) coefficient gets parenthesized
        let g = parse_in(&w, "(1+i)*x + i").unwrap();
        assert_eq!(parse_in(&w, &print_pbw(&g)).unwrap(), g);
    }

    #[test]
    fn ore_expressions() {
        let ring = differential_ring(RatFuncField::new(Rationals, "x")).unwrap();
        let f = parse_in(&ring, "D*x - x*D").unwrap();
        assert_eq!(f, OreRing::one(&ring));
        let g = parse_in(&ring, "D + 1/x").unwrap();
        assert_eq!(print_ore(&g), "D + (1)/(x)");
        assert_eq!(parse_in(&ring, &print_ore(&g)).unwrap(), g);
    }

    #[test]
    fn roundtrip_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let f3 = PrimeField::new(3).unwrap();
        macro_rules! roundtrip {
            ($ring:expr, $n:expr) => {
                let ring = $ring;
                for _ in 0..$n {
                    let f = sample_poly(&ring, 4, 4, &mut rng);
                    let s = print_pbw(&f);
                    let back = parse_in(&ring, &s).expect(&s);
                    assert_eq!(back, f, "roundtrip failed for {}", s);
                }
            };
        }
        roundtrip!(weyl(Rationals, 1).unwrap(), 10_000);
        roundtrip!(weyl(Rationals, 2).unwrap(), 2_000);
        roundtrip!(shift(Rationals).unwrap(), 2_000);
        roundtrip!(qshift(Rationals, rat(2, 1)).unwrap(), 2_000);
        roundtrip!(qweyl(Rationals, 1, rat(2, 1)).unwrap(), 2_000);
        roundtrip!(integration(Rationals).unwrap(), 2_000);
        roundtrip!(polynomial(Rationals, 2).unwrap(), 2_000);
        roundtrip!(quantum_affine_uniform(f3, 2, 2).unwrap(), 2_000);
        roundtrip!(weyl(GaussianRationals, 1).unwrap(), 2_000);
    }
}
