//! Dense univariate polynomials over a generic exact field.
//!
//! Coefficients are stored in ascending degree order; the vector is empty for
//! the zero polynomial and its last entry is nonzero otherwise. Operations
//! take the coefficient field descriptor as context.

use std::cmp::Ordering;

use super::{Field, FieldError};

#[derive(Clone, Debug)]
pub struct Poly<K: Field> {
    coeffs: Vec<K::Elem>,
}

impl<K: Field> PartialEq for Poly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<K: Field> Eq for Poly<K> {}

impl<K: Field> std::hash::Hash for Poly<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<K: Field> Poly<K> {
    pub fn from_coeffs(k: &K, mut coeffs: Vec<K::Elem>) -> Self {
        while coeffs.last().map_or(false, |c| k.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(k: &K, c: K::Elem) -> Self {
        Self::from_coeffs(k, vec![c])
    }

    pub fn one(k: &K) -> Self {
        Self::constant(k, k.one())
    }

    /// The indeterminate.
    pub fn var(k: &K) -> Self {
        Poly {
            coeffs: vec![k.zero(), k.one()],
        }
    }

    /// c * x^d
    pub fn monomial(k: &K, c: K::Elem, d: usize) -> Self {
        if k.is_zero(&c) {
            return Self::zero();
        }
        let mut coeffs = vec![k.zero(); d + 1];
        coeffs[d] = c;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[K::Elem] {
        &self.coeffs
    }

    pub fn coeff<'a>(&'a self, i: usize) -> &'a K::Elem
    where
        K::Elem: 'a,
    {
        &self.coeffs[i]
    }

    /// Coefficient of x^i, defaulting to zero beyond the degree.
    pub fn coeff_or_zero(&self, k: &K, i: usize) -> K::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn leading(&self) -> Option<&K::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, k: &K, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(k.add(&self.coeff_or_zero(k, i), &other.coeff_or_zero(k, i)));
        }
        Self::from_coeffs(k, out)
    }

    pub fn sub(&self, k: &K, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(k.sub(&self.coeff_or_zero(k, i), &other.coeff_or_zero(k, i)));
        }
        Self::from_coeffs(k, out)
    }

    pub fn neg(&self, k: &K) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect(),
        }
    }

    pub fn scale(&self, k: &K, c: &K::Elem) -> Self {
        if k.is_zero(c) {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| k.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, k: &K, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if k.is_zero(b) {
                    continue;
                }
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        Self::from_coeffs(k, out)
    }

    pub fn divrem(&self, k: &K, divisor: &Self) -> Result<(Self, Self), FieldError> {
        if divisor.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let dlead = k.inv(divisor.leading().unwrap())?;
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let qlen = rem.len() - ddeg;
        let mut quo = vec![k.zero(); qlen];
        for i in (0..qlen).rev() {
            let c = k.mul(&rem[i + ddeg], &dlead);
            if k.is_zero(&c) {
                continue;
            }
            quo[i] = c.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = k.sub(&rem[i + j], &k.mul(&c, d));
            }
        }
        Ok((Self::from_coeffs(k, quo), Self::from_coeffs(k, rem)))
    }

    /// Monic gcd; gcd(0, 0) = 0. Remainders are re-normalized monic at each
    /// step, which keeps coefficient growth in towers of fraction fields
    /// under control.
    pub fn gcd(&self, k: &K, other: &Self) -> Self {
        let mut a = self.make_monic(k);
        let mut b = other.make_monic(k);
        while !b.is_zero() {
            let (_, r) = a.divrem(k, &b).expect("nonzero divisor");
            a = b;
            b = r.make_monic(k);
        }
        a
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, k: &K, divisor: &Self) -> Self {
        let (q, r) = self.divrem(k, divisor).expect("nonzero divisor");
        assert!(r.is_zero(), "division was not exact");
        q
    }

    pub fn make_monic(&self, k: &K) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if k.is_one(l) => self.clone(),
            Some(l) => self.scale(k, &k.inv(l).expect("nonzero leading coefficient")),
        }
    }

    pub fn derivative(&self, k: &K) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(k.mul(c, &k.from_i64(i as i64)));
        }
        Self::from_coeffs(k, out)
    }

    pub fn eval(&self, k: &K, x: &K::Elem) -> K::Elem {
        let mut acc = k.zero();
        for c in self.coeffs.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    /// Substitute another polynomial for the indeterminate.
    pub fn compose(&self, k: &K, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(k, inner).add(k, &Self::constant(k, c.clone()));
        }
        acc
    }

    /// Divide by x^m (requires the low coefficients to vanish).
    pub fn shift_down(&self, m: usize) -> Self {
        Poly {
            coeffs: self.coeffs[m..].to_vec(),
        }
    }

    /// Deterministic order: by degree, then coefficients from the top down.
    pub fn cmp_polys(&self, k: &K, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| {
                for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                    let o = k.cmp_elems(a, b);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }

    /// Render with the given variable name, e.g. `x^2 - 1/2*x + 3`.
    pub fn format(&self, k: &K, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let (neg, mag) = if k.display_negative(c) {
                (true, k.neg(c))
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let cs = k.format(&mag);
            let atom = if k.format_atomic(&mag) { cs } else { format!("({})", cs) };
            if i == 0 {
                out.push_str(&atom);
            } else {
                let pow = if i == 1 {
                    var.to_string()
                } else {
                    format!("{}^{}", var, i)
                };
                if k.is_one(&mag) {
                    out.push_str(&pow);
                } else {
                    out.push_str(&atom);
                    out.push('*');
                    out.push_str(&pow);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{rat, Rationals};
    use super::*;

    fn p(coeffs: &[i64]) -> Poly<Rationals> {
        Poly::from_coeffs(&Rationals, coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn divrem_roundtrip() {
        let k = Rationals;
        let a = p(&[2, 0, -3, 1]); // x^3 - 3x^2 + 2
        let b = p(&[-1, 1]); // x - 1
        let (q, r) = a.divrem(&k, &b).unwrap();
        assert_eq!(q.mul(&k, &b).add(&k, &r), a);
        assert_eq!(r, p(&[0])); // 1 is a root
    }

    #[test]
    fn gcd_and_compose() {
        let k = Rationals;
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[1, 1]); // x + 1
        assert_eq!(a.gcd(&k, &b), b.make_monic(&k));
        // (x+1) o (x-1) = x
        let id = b.compose(&k, &p(&[-1, 1]));
        assert_eq!(id, p(&[0, 1]));
    }

    #[test]
    fn format_readable() {
        let k = Rationals;
        let f = Poly::from_coeffs(&k, vec![rat(3, 1), rat(-1, 2), rat(1, 1)]);
        assert_eq!(f.format(&k, "x"), "x^2 - 1/2*x + 3");
    }
}
