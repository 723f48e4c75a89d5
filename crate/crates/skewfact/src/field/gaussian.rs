//! Gaussian rationals QQ(i), the coefficient field of the conjugation
//! examples.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use rand::RngCore;

use super::rational::{rat, Rational, Rationals};
use super::{Field, FieldError};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn conjugate(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// re^2 + im^2 as a rational.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

/// The field QQ(i).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct GaussianRationals;

pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    GaussianRational::new(re, im)
}

impl Field for GaussianRationals {
    type Elem = GaussianRational;

    fn zero(&self) -> GaussianRational {
        gauss(Rational::zero(), Rational::zero())
    }
    fn one(&self) -> GaussianRational {
        gauss(Rational::one(), Rational::zero())
    }
    fn is_zero(&self, a: &GaussianRational) -> bool {
        a.re.is_zero() && a.im.is_zero()
    }
    fn add(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        gauss(&a.re + &b.re, &a.im + &b.im)
    }
    fn sub(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        gauss(&a.re - &b.re, &a.im - &b.im)
    }
    fn neg(&self, a: &GaussianRational) -> GaussianRational {
        gauss(-a.re.clone(), -a.im.clone())
    }
    fn mul(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        gauss(
            &a.re * &b.re - &a.im * &b.im,
            &a.re * &b.im + &a.im * &b.re,
        )
    }
    fn inv(&self, a: &GaussianRational) -> Result<GaussianRational, FieldError> {
        let n = a.norm();
        if n.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(gauss(&a.re / &n, -(&a.im / &n)))
    }
    fn from_i64(&self, n: i64) -> GaussianRational {
        gauss(rat(n, 1), Rational::zero())
    }
    fn cmp_elems(&self, a: &GaussianRational, b: &GaussianRational) -> Ordering {
        a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
    }
    fn sample(&self, rng: &mut dyn RngCore) -> GaussianRational {
        let k = Rationals;
        gauss(k.sample(rng), k.sample(rng))
    }
    fn format(&self, a: &GaussianRational) -> String {
        if a.im.is_zero() {
            return a.re.to_string();
        }
        let im_part = |im: &Rational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if *im == -Rational::one() {
                "-i".to_string()
            } else {
                format!("{}*i", im)
            }
        };
        if a.re.is_zero() {
            return im_part(&a.im);
        }
        if a.im.is_negative() {
            let mag = -a.im.clone();
            let tail = if mag.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", mag)
            };
            format!("{}-{}", a.re, tail)
        } else {
            format!("{}+{}", a.re, im_part(&a.im))
        }
    }
    fn format_atomic(&self, a: &GaussianRational) -> bool {
        a.im.is_zero() || a.re.is_zero()
    }
    fn display_negative(&self, a: &GaussianRational) -> bool {
        if a.im.is_zero() {
            a.re.is_negative()
        } else if a.re.is_zero() {
            a.im.is_negative()
        } else {
            false
        }
    }
    fn parse(&self, s: &str) -> Result<GaussianRational, FieldError> {
        parse_gaussian(s).ok_or_else(|| FieldError::BadLiteral(s.to_string()))
    }
    fn name(&self) -> String {
        "QQ(i)".to_string()
    }
}

/// Accepts `a`, `i`, `-i`, `b*i`, `a+b*i`, `a-b*i` with rational a, b.
fn parse_gaussian(s: &str) -> Option<GaussianRational> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    // Split at the last top-level '+'/'-' that is not the leading sign.
    let bytes = s.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let c = bytes[idx] as char;
        if (c == '+' || c == '-') && bytes[idx - 1] as char != '/' && bytes[idx - 1] as char != '*'
        {
            split = Some(idx);
            break;
        }
    }
    let parse_imag = |part: &str| -> Option<Rational> {
        let body = part.strip_suffix('i')?;
        let body = body.strip_suffix('*').unwrap_or(body);
        if body.is_empty() {
            Some(Rational::one())
        } else if body == "-" {
            Some(-Rational::one())
        } else {
            body.parse().ok()
        }
    };
    if s.ends_with('i') {
        match split {
            Some(idx) => {
                let (re_s, im_s) = s.split_at(idx);
                let re: Rational = re_s.parse().ok()?;
                let im = parse_imag(im_s)?;
                Some(gauss(re, im))
            }
            None => Some(gauss(Rational::zero(), parse_imag(&s)?)),
        }
    } else {
        let re: Rational = s.parse().ok()?;
        Some(gauss(re, Rational::zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_involution() {
        let z = gauss(rat(3, 5), rat(4, 5));
        let c = z.conjugate();
        assert_eq!(c, gauss(rat(3, 5), rat(-4, 5)));
        assert_eq!(c.conjugate(), z);
        // real fixed point
        let r = gauss(rat(1, 1), rat(0, 1));
        assert_eq!(r.conjugate(), r);
        // 0 + 1i -> 0 - 1i
        let i = gauss(rat(0, 1), rat(1, 1));
        assert_eq!(i.conjugate(), gauss(rat(0, 1), rat(-1, 1)));
    }

    #[test]
    fn inverse_and_norm() {
        let k = GaussianRationals;
        let z = gauss(rat(3, 5), rat(4, 5));
        assert_eq!(z.norm(), rat(1, 1));
        assert_eq!(k.mul(&z, &k.inv(&z).unwrap()), k.one());
    }

    #[test]
    fn parse_print_roundtrip() {
        let k = GaussianRationals;
        for s in ["3/5+4/5*i", "3/5-4/5*i", "-2", "i", "-i", "7/3*i", "0"] {
            let z = k.parse(s).unwrap();
            assert_eq!(k.format(&z), *s, "roundtrip {}", s);
        }
        assert_eq!(k.parse("3/5 + 4/5*i").unwrap(), gauss(rat(3, 5), rat(4, 5)));
    }
}
