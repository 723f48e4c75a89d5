//! Univariate rational function fields K(x) over any exact base field,
//! including nested towers such as QQ(c)(n).

use std::cmp::Ordering;

use rand::RngCore;

use super::poly::Poly;
use super::{Field, FieldError};

/// Reduced fraction of dense univariate polynomials: gcd(num, den) = 1 and
/// den monic and nonzero.
#[derive(Clone, Debug)]
pub struct RatFunc<K: Field> {
    pub num: Poly<K>,
    pub den: Poly<K>,
}

impl<K: Field> PartialEq for RatFunc<K> {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl<K: Field> Eq for RatFunc<K> {}

impl<K: Field> std::hash::Hash for RatFunc<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

/// The field K(x) for a named indeterminate x.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFuncField<K: Field> {
    base: K,
    var: String,
}

impl<K: Field> RatFuncField<K> {
    pub fn new(base: K, var: &str) -> Self {
        RatFuncField {
            base,
            var: var.to_string(),
        }
    }

    pub fn base(&self) -> &K {
        &self.base
    }

    pub fn var_name(&self) -> &str {
        &self.var
    }

    /// The indeterminate as a field element.
    pub fn var(&self) -> RatFunc<K> {
        self.from_poly(Poly::var(&self.base))
    }

    pub fn from_poly(&self, p: Poly<K>) -> RatFunc<K> {
        RatFunc {
            num: p,
            den: Poly::one(&self.base),
        }
    }

    pub fn from_base(&self, c: K::Elem) -> RatFunc<K> {
        self.from_poly(Poly::constant(&self.base, c))
    }

    /// Build num/den in lowest terms with monic denominator.
    pub fn fraction(&self, num: Poly<K>, den: Poly<K>) -> Result<RatFunc<K>, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.reduce(num, den))
    }

    fn reduce(&self, num: Poly<K>, den: Poly<K>) -> RatFunc<K> {
        let k = &self.base;
        if num.is_zero() {
            return RatFunc {
                num: Poly::zero(),
                den: Poly::one(k),
            };
        }
        let g = num.gcd(k, &den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(k, &g), den.div_exact(k, &g))
        };
        self.monicize(num, den)
    }

    /// Scale an already-coprime pair so the denominator is monic.
    fn monicize(&self, num: Poly<K>, den: Poly<K>) -> RatFunc<K> {
        let k = &self.base;
        if num.is_zero() {
            return RatFunc {
                num: Poly::zero(),
                den: Poly::one(k),
            };
        }
        let lead = den.leading().expect("nonzero denominator").clone();
        if k.is_one(&lead) {
            RatFunc { num, den }
        } else {
            let li = k.inv(&lead).expect("nonzero leading coefficient");
            RatFunc {
                num: num.scale(k, &li),
                den: den.scale(k, &li),
            }
        }
    }

    /// Degree-0 elements are exactly the constants of the base field.
    pub fn as_base(&self, a: &RatFunc<K>) -> Option<K::Elem> {
        if a.den.degree() == Some(0) && a.num.degree().map_or(true, |d| d == 0) {
            Some(a.num.coeff_or_zero(&self.base, 0))
        } else {
            None
        }
    }

    /// Substitute x -> inner (a polynomial) in a rational function.
    pub fn compose_var(&self, a: &RatFunc<K>, inner: &Poly<K>) -> RatFunc<K> {
        let num = a.num.compose(&self.base, inner);
        let den = a.den.compose(&self.base, inner);
        self.reduce(num, den)
    }

    /// d/dx by the quotient rule.
    pub fn derivative(&self, a: &RatFunc<K>) -> RatFunc<K> {
        let k = &self.base;
        let num = a
            .num
            .derivative(k)
            .mul(k, &a.den)
            .sub(k, &a.num.mul(k, &a.den.derivative(k)));
        let den = a.den.mul(k, &a.den);
        self.reduce(num, den)
    }
}

impl<K: Field> Field for RatFuncField<K> {
    type Elem = RatFunc<K>;

    fn zero(&self) -> RatFunc<K> {
        self.from_poly(Poly::zero())
    }
    fn one(&self) -> RatFunc<K> {
        self.from_poly(Poly::one(&self.base))
    }
    fn is_zero(&self, a: &RatFunc<K>) -> bool {
        a.num.is_zero()
    }
    fn add(&self, a: &RatFunc<K>, b: &RatFunc<K>) -> RatFunc<K> {
        let k = &self.base;
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        // Henrici's scheme: with reduced inputs, gcd work stays confined to
        // the common denominator part.
        let g = a.den.gcd(k, &b.den);
        if g.degree() == Some(0) {
            let num = a.num.mul(k, &b.den).add(k, &b.num.mul(k, &a.den));
            let den = a.den.mul(k, &b.den);
            return self.monicize(num, den);
        }
        let d1g = a.den.div_exact(k, &g);
        let d2g = b.den.div_exact(k, &g);
        let t = a.num.mul(k, &d2g).add(k, &b.num.mul(k, &d1g));
        if t.is_zero() {
            return self.zero();
        }
        let g2 = t.gcd(k, &g);
        let num = t.div_exact(k, &g2);
        let den = d1g.mul(k, &b.den.div_exact(k, &g2));
        self.monicize(num, den)
    }
    fn sub(&self, a: &RatFunc<K>, b: &RatFunc<K>) -> RatFunc<K> {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &RatFunc<K>) -> RatFunc<K> {
        RatFunc {
            num: a.num.neg(&self.base),
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &RatFunc<K>, b: &RatFunc<K>) -> RatFunc<K> {
        let k = &self.base;
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        // cross-cancel before multiplying; inputs are reduced, so the result
        // is reduced by unique factorization
        let g1 = a.num.gcd(k, &b.den);
        let g2 = b.num.gcd(k, &a.den);
        let n = a.num.div_exact(k, &g1).mul(k, &b.num.div_exact(k, &g2));
        let d = a.den.div_exact(k, &g2).mul(k, &b.den.div_exact(k, &g1));
        self.monicize(n, d)
    }
    fn inv(&self, a: &RatFunc<K>) -> Result<RatFunc<K>, FieldError> {
        if a.num.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.monicize(a.den.clone(), a.num.clone()))
    }
    fn from_i64(&self, n: i64) -> RatFunc<K> {
        self.from_base(self.base.from_i64(n))
    }
    fn cmp_elems(&self, a: &RatFunc<K>, b: &RatFunc<K>) -> Ordering {
        a.num
            .cmp_polys(&self.base, &b.num)
            .then_with(|| a.den.cmp_polys(&self.base, &b.den))
    }
    fn sample(&self, rng: &mut dyn RngCore) -> RatFunc<K> {
        let k = &self.base;
        let deg_n = (rng.next_u32() % 3) as usize;
        let deg_d = (rng.next_u32() % 2) as usize;
        let num = Poly::from_coeffs(k, (0..=deg_n).map(|_| k.sample(rng)).collect());
        let mut den = Poly::zero();
        while den.is_zero() {
            den = Poly::from_coeffs(k, (0..=deg_d).map(|_| k.sample(rng)).collect());
        }
        self.reduce(num, den)
    }
    fn format(&self, a: &RatFunc<K>) -> String {
        let num = a.num.format(&self.base, &self.var);
        if a.den.degree() == Some(0) {
            num
        } else {
            format!("({})/({})", num, a.den.format(&self.base, &self.var))
        }
    }
    fn format_atomic(&self, a: &RatFunc<K>) -> bool {
        if a.den.degree() != Some(0) {
            return true; // rendered as (num)/(den)
        }
        match a.num.degree() {
            None => true,
            Some(0) => self.base.format_atomic(&a.num.coeff_or_zero(&self.base, 0)),
            Some(_) => a.num.coeffs().iter().filter(|c| !self.base.is_zero(c)).count() == 1,
        }
    }
    fn display_negative(&self, a: &RatFunc<K>) -> bool {
        a.num
            .leading()
            .map_or(false, |l| self.base.display_negative(l))
    }
    fn parse(&self, s: &str) -> Result<RatFunc<K>, FieldError> {
        parse_ratfunc(self, s)
    }
    fn name(&self) -> String {
        format!("{}({})", self.base.name(), self.var)
    }
}

// A small expression evaluator for rational-function literals. All of
// + - * / ^ are total here (field arithmetic), unlike the main expression
// parser for noncommutative rings.
struct RfParser<'a, K: Field> {
    field: &'a RatFuncField<K>,
    chars: Vec<char>,
    pos: usize,
}

fn parse_ratfunc<K: Field>(field: &RatFuncField<K>, s: &str) -> Result<RatFunc<K>, FieldError> {
    let mut p = RfParser {
        field,
        chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    let v = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(FieldError::BadLiteral(s.to_string()));
    }
    Ok(v)
}

impl<'a, K: Field> RfParser<'a, K> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bad(&self) -> FieldError {
        FieldError::BadLiteral(self.chars.iter().collect())
    }

    fn expr(&mut self) -> Result<RatFunc<K>, FieldError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.field.add(&acc, &t);
                }
                '-' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.field.sub(&acc, &t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc<K>, FieldError> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.field.mul(&acc, &f);
                }
                '/' => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.field.div(&acc, &f)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFunc<K>, FieldError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            let f = self.factor()?;
            return Ok(self.field.neg(&f));
        }
        let mut base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let mut digits = String::new();
            while let Some(c) = self.peek() {
                if c.is_ascii_digit() {
                    digits.push(c);
                    self.pos += 1;
                } else {
                    break;
                }
            }
            let e: u32 = digits.parse().map_err(|_| self.bad())?;
            let mut acc = self.field.one();
            for _ in 0..e {
                acc = self.field.mul(&acc, &base);
            }
            base = acc;
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc<K>, FieldError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.bad());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let n: i64 = digits.parse().map_err(|_| self.bad())?;
                Ok(self.field.from_i64(n))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(c) = self.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        name.push(c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                if name == self.field.var {
                    Ok(self.field.var())
                } else {
                    // Delegate unknown symbols to the base field (supports
                    // towers such as QQ(c)(n) and the literal `i` in QQ(i)).
                    let c = self.field.base.parse(&name)?;
                    Ok(self.field.from_base(c))
                }
            }
            _ => Err(self.bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{rat, Rationals};
    use super::*;

    fn qx() -> RatFuncField<Rationals> {
        RatFuncField::new(Rationals, "x")
    }

    #[test]
    fn inverse_pair() {
        let f = qx();
        // (x+1)/x * x/(x+1) = 1
        let a = f.parse("(x+1)/x").unwrap();
        let b = f.parse("x/(x+1)").unwrap();
        assert_eq!(f.mul(&a, &b), f.one());
    }

    #[test]
    fn canonical_monic_denominator() {
        let f = qx();
        let a = f.parse("1/(2*x+2)").unwrap();
        assert!(f.base().is_one(a.den.leading().unwrap()));
        assert_eq!(f.format(&a), "(1/2)/(x + 1)");
        assert_eq!(f.parse(&f.format(&a)).unwrap(), a);
    }

    #[test]
    fn derivative_quotient_rule() {
        let f = qx();
        // d/dx (1/x) = -1/x^2
        let a = f.parse("1/x").unwrap();
        assert_eq!(f.derivative(&a), f.parse("-1/x^2").unwrap());
    }

    #[test]
    fn composition_shift() {
        let f = qx();
        let a = f.parse("1/(x-1)").unwrap();
        let xp1 = Poly::from_coeffs(&Rationals, vec![rat(1, 1), rat(1, 1)]);
        assert_eq!(f.compose_var(&a, &xp1), f.parse("1/x").unwrap());
    }

    #[test]
    fn nested_tower() {
        // QQ(c)(n): rational functions in n whose coefficients live in QQ(c)
        let qc = RatFuncField::new(Rationals, "c");
        let qcn = RatFuncField::new(qc, "n");
        let e = qcn.parse("(n+c)/(n+c+1)").unwrap();
        let shifted = qcn.compose_var(&e, &{
            let base = qcn.base().clone();
            Poly::from_coeffs(&base, vec![base.one(), base.one()])
        });
        assert_eq!(shifted, qcn.parse("(n+c+1)/(n+c+2)").unwrap());
    }
}
