//! The field of rationals with arbitrary-precision representation, plus
//! exact rational root extraction for univariate polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::RngCore;

use super::poly::Poly;
use super::{Field, FieldError, RootsResult, SolvableField};

/// Exact rational number; numerator and positive denominator are always
/// coprime and zero is canonically 0/1.
pub type Rational = BigRational;

/// The field of rational numbers.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        BigRational::zero()
    }
    fn one(&self) -> Rational {
        BigRational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Result<Rational, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(a.recip())
    }
    fn from_i64(&self, n: i64) -> Rational {
        BigRational::from(BigInt::from(n))
    }
    fn cmp_elems(&self, a: &Rational, b: &Rational) -> Ordering {
        a.cmp(b)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Rational {
        let num = (rng.next_u32() % 19) as i64 - 9;
        let den = (rng.next_u32() % 9) as i64 + 1;
        rat(num, den)
    }
    fn format(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn format_atomic(&self, _a: &Rational) -> bool {
        true
    }
    fn display_negative(&self, a: &Rational) -> bool {
        a.is_negative()
    }
    fn parse(&self, s: &str) -> Result<Rational, FieldError> {
        BigRational::from_str(s.trim()).map_err(|_| FieldError::BadLiteral(s.to_string()))
    }
    fn name(&self) -> String {
        "QQ".to_string()
    }
}

impl SolvableField for Rationals {
    fn univariate_roots(&self, f: &Poly<Self>) -> Result<RootsResult<Rational>, FieldError> {
        rational_roots(f)
    }
}

impl super::FactorField for Rationals {
    fn element_count(&self) -> Option<u64> {
        None
    }
    fn element_at(&self, _index: u64) -> Rational {
        unreachable!("the rationals are not enumerable")
    }
}

/// All rational roots of a nonzero polynomial over the rationals, with
/// multiplicities. Candidates come from the rational root theorem applied to
/// the integer-cleared polynomial; each candidate is verified by exact
/// evaluation, and found roots are deflated to determine multiplicity.
/// `complete` is false exactly when non-rational roots remain over the
/// closure.
pub fn rational_roots(f: &Poly<Rationals>) -> Result<RootsResult<Rational>, FieldError> {
    let k = Rationals;
    if f.is_zero() {
        return Err(FieldError::ZeroPolynomial);
    }
    let mut work = f.clone();
    let mut roots: Vec<(Rational, usize)> = Vec::new();

    // Split off x^m.
    let mut zero_mult = 0usize;
    while work.degree() != Some(0) && k.is_zero(work.coeff(0)) {
        work = work.shift_down(1);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((k.zero(), zero_mult));
    }
    if work.degree() == Some(0) {
        return Ok(RootsResult { roots, complete: true });
    }

    // Clear denominators: integer coefficients, content removed.
    let ints = clear_denominators(&work);
    let a0 = ints.first().expect("constant term present").clone();
    let an = ints.last().expect("leading term present").clone();
    debug_assert!(!a0.is_zero() && !an.is_zero());

    let p_divs = divisors(&a0.magnitude().clone());
    let q_divs = divisors(&an.magnitude().clone());
    let mut candidates: Vec<Rational> = Vec::new();
    for p in &p_divs {
        for q in &q_divs {
            if p.gcd(q).is_one() {
                let r = BigRational::new(BigInt::from(p.clone()), BigInt::from(q.clone()));
                candidates.push(-r.clone());
                candidates.push(r);
            }
        }
    }
    candidates.sort();
    candidates.dedup();

    for cand in candidates {
        if work.eval(&k, &cand).is_zero() {
            let mut mult = 0usize;
            let linear = Poly::from_coeffs(&k, vec![-cand.clone(), k.one()]);
            loop {
                let (quo, rem) = work.divrem(&k, &linear).expect("nonzero divisor");
                if rem.is_zero() {
                    work = quo;
                    mult += 1;
                    if work.degree() == Some(0) {
                        break;
                    }
                } else {
                    break;
                }
            }
            roots.push((cand, mult));
            if work.degree() == Some(0) {
                break;
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let complete = work.degree() == Some(0);
    Ok(RootsResult { roots, complete })
}

/// Integer coefficient vector of `f` after multiplying by the lcm of the
/// denominators and dividing by the gcd of the numerators.
fn clear_denominators(f: &Poly<Rationals>) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in f.coeffs() {
        if !c.is_zero() {
            lcm = lcm.lcm(c.denom());
        }
    }
    let mut ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in &mut ints {
            *c /= &content;
        }
    }
    ints
}

/// All positive divisors of `n` (n > 0), via full factorization.
pub fn divisors(n: &BigUint) -> Vec<BigUint> {
    let factors = factorize(n);
    let mut divs = vec![BigUint::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e + 1));
        let mut pw = BigUint::one();
        for _ in 0..=e {
            for d in &divs {
                next.push(d * &pw);
            }
            pw *= &p;
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Prime factorization of a positive integer: trial division by small primes
/// followed by Brent's variant of Pollard rho with Miller-Rabin primality
/// checks.
pub fn factorize(n: &BigUint) -> BTreeMap<BigUint, usize> {
    let mut map = BTreeMap::new();
    let mut n = n.clone();
    assert!(!n.is_zero(), "factorize(0)");
    for small in 2u64..10_000 {
        let p = BigUint::from(small);
        if (&p * &p) > n {
            break;
        }
        while (&n % &p).is_zero() {
            *map.entry(p.clone()).or_insert(0) += 1;
            n /= &p;
        }
    }
    if n.is_one() {
        return map;
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            *map.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    map
}

fn is_probable_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u32) {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    // n - 1 = d * 2^s
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    // Deterministic for n < 3.3 * 10^24 with this base set; the candidate
    // verification step keeps root extraction sound regardless.
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(a);
        if (&a % n).is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = BigUint::from(2u32);
        let mut d = BigUint::one();
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if d != one && &d != n {
            return d;
        }
        c += 1u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[(i64, i64)]) -> Poly<Rationals> {
        Poly::from_coeffs(&Rationals, coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn arithmetic_canonical() {
        let k = Rationals;
        // 1/2 + 1/3 = 5/6
        assert_eq!(k.add(&rat(1, 2), &rat(1, 3)), rat(5, 6));
        assert_eq!(k.format(&rat(-3, 7)), "-3/7");
        assert_eq!(k.parse("-3/7").unwrap(), rat(-3, 7));
        assert_eq!(k.parse("5").unwrap(), rat(5, 1));
        assert_eq!(rat(2, 4), rat(1, 2));
    }

    #[test]
    fn roots_x2_minus_1() {
        // x^2 - 1 -> {1, -1}, splits completely
        let r = rational_roots(&poly(&[(-1, 1), (0, 1), (1, 1)])).unwrap();
        assert_eq!(r.roots, vec![(rat(-1, 1), 1), (rat(1, 1), 1)]);
        assert!(r.complete);
    }

    #[test]
    fn roots_x2_minus_2() {
        // x^2 - 2 -> {}, irrational roots flagged
        let r = rational_roots(&poly(&[(-2, 1), (0, 1), (1, 1)])).unwrap();
        assert!(r.roots.is_empty());
        assert!(!r.complete);
    }

    #[test]
    fn roots_linear() {
        // 2x - 3 -> {3/2}
        let r = rational_roots(&poly(&[(-3, 1), (2, 1)])).unwrap();
        assert_eq!(r.roots, vec![(rat(3, 2), 1)]);
        assert!(r.complete);
    }

    #[test]
    fn roots_with_multiplicity_and_zero() {
        // x^3 (x-1)^2 -> 0 with mult 3, 1 with mult 2
        // coeffs of x^5 - 2x^4 + x^3
        let r = rational_roots(&poly(&[(0, 1), (0, 1), (0, 1), (1, 1), (-2, 1), (1, 1)])).unwrap();
        assert_eq!(r.roots, vec![(rat(0, 1), 3), (rat(1, 1), 2)]);
        assert!(r.complete);
    }

    #[test]
    fn roots_of_zero_polynomial_rejected() {
        let z = Poly::from_coeffs(&Rationals, vec![]);
        assert!(rational_roots(&z).is_err());
    }

    #[test]
    fn factorize_small() {
        let f = factorize(&BigUint::from(360u32));
        let expect: Vec<(u32, usize)> = vec![(2, 3), (3, 2), (5, 1)];
        let got: Vec<(u32, usize)> = f
            .iter()
            .map(|(p, e)| (p.to_string().parse().unwrap(), *e))
            .collect();
        assert_eq!(got, expect);
        assert_eq!(divisors(&BigUint::from(12u32)).len(), 6);
    }

    #[test]
    fn factorize_semiprime() {
        // forces the rho path
        let n = BigUint::from(1_000_003u64) * BigUint::from(998_244_353u64);
        let f = factorize(&n);
        assert_eq!(f.len(), 2);
        assert!(f.contains_key(&BigUint::from(1_000_003u64)));
    }
}
