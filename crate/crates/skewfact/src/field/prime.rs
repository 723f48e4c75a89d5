//! Prime fields F_p with p <= 2^31, so products of residues fit in u64.

use std::cmp::Ordering;

use rand::RngCore;

use super::poly::Poly;
use super::{FactorField, Field, FieldError, RootsResult, SolvableField};

/// F_p for a prime p <= 2^31. Elements are reduced residues in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p < 2 || p > (1 << 31) || !is_prime(p) {
            return Err(FieldError::BadModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Result<u64, FieldError> {
        if *a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        // Fermat: a^(p-2) mod p.
        let mut base = *a;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Ok(acc)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn cmp_elems(&self, a: &u64, b: &u64) -> Ordering {
        a.cmp(b)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> u64 {
        rng.next_u64() % self.p
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn format_atomic(&self, _a: &u64) -> bool {
        true
    }
    fn parse(&self, s: &str) -> Result<u64, FieldError> {
        let s = s.trim();
        let (neg, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        // Accept a/b with b invertible, so q parameters can be written
        // uniformly across fields.
        if let Some((n, d)) = digits.split_once('/') {
            let n = self.parse(n)?;
            let d = self.parse(d)?;
            let v = self.div(&n, &d)?;
            return Ok(if neg { self.neg(&v) } else { v });
        }
        let v: u64 = digits
            .parse()
            .map_err(|_| FieldError::BadLiteral(s.to_string()))?;
        let v = v % self.p;
        Ok(if neg { self.neg(&v) } else { v })
    }
    fn name(&self) -> String {
        format!("F{}", self.p)
    }
}

impl SolvableField for PrimeField {
    /// Exhaustive and exact root scan over all residues.
    fn univariate_roots(&self, f: &Poly<Self>) -> Result<RootsResult<u64>, FieldError> {
        if f.is_zero() {
            return Err(FieldError::ZeroPolynomial);
        }
        let mut work = f.clone();
        let mut roots = Vec::new();
        for r in 0..self.p {
            if work.degree() == Some(0) {
                break;
            }
            if self.is_zero(&work.eval(self, &r)) {
                let linear = Poly::from_coeffs(self, vec![self.neg(&r), 1]);
                let mut mult = 0usize;
                loop {
                    let (q, rem) = work.divrem(self, &linear)?;
                    if rem.is_zero() {
                        work = q;
                        mult += 1;
                        if work.degree() == Some(0) {
                            break;
                        }
                    } else {
                        break;
                    }
                }
                roots.push((r, mult));
            }
        }
        let complete = work.degree() == Some(0);
        Ok(RootsResult { roots, complete })
    }
}

impl FactorField for PrimeField {
    fn element_count(&self) -> Option<u64> {
        Some(self.p)
    }
    fn element_at(&self, index: u64) -> u64 {
        debug_assert!(index < self.p);
        index
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_arithmetic() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.mul(&3, &4), 2); // 12 mod 5
        assert_eq!(f5.inv(&3).unwrap(), 2);
        assert_eq!(f5.sub(&1, &4), 2);
        assert!(PrimeField::new(6).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn exhaustive_roots() {
        let f5 = PrimeField::new(5).unwrap();
        // x^2 - 1 over F_5: roots 1 and 4
        let f = Poly::from_coeffs(&f5, vec![4, 0, 1]);
        let r = f5.univariate_roots(&f).unwrap();
        assert_eq!(r.roots, vec![(1, 1), (4, 1)]);
        assert!(r.complete);
        // x^2 + 1 over F_3 has no roots
        let f3 = PrimeField::new(3).unwrap();
        let g = Poly::from_coeffs(&f3, vec![1, 0, 1]);
        let r = f3.univariate_roots(&g).unwrap();
        assert!(r.roots.is_empty());
        assert!(!r.complete);
    }
}
