//! Root extraction over QQ(i): a Gaussian rational z = u + iv is a root of f
//! exactly when (u, v) is a rational point of the bivariate system given by
//! the real and imaginary parts of f(u + iv), which is solved exactly by the
//! Groebner machinery over QQ.

use super::groebner::{MExp, MOrder, MPoly, PolyCtx, SolveError};
use crate::field::gaussian::{gauss, GaussianRational, GaussianRationals};
use crate::field::poly::Poly;
use crate::field::rational::Rationals;
use crate::field::{FactorField, Field, FieldError, RootsResult, SolvableField};

impl FactorField for GaussianRationals {
    fn element_count(&self) -> Option<u64> {
        None
    }
    fn element_at(&self, _index: u64) -> GaussianRational {
        unreachable!("the Gaussian rationals are not enumerable")
    }
}

impl SolvableField for GaussianRationals {
    fn univariate_roots(
        &self,
        f: &Poly<Self>,
    ) -> Result<RootsResult<GaussianRational>, FieldError> {
        if f.is_zero() {
            return Err(FieldError::ZeroPolynomial);
        }
        if f.degree() == Some(0) {
            return Ok(RootsResult {
                roots: Vec::new(),
                complete: true,
            });
        }
        let ctx = PolyCtx::new(Rationals, 2, MOrder::Lex);
        let q = Rationals;
        // Real and imaginary parts of f(u + iv) as polynomials in (u, v):
        // iterate (A, B) = Re/Im of (u+iv)^k.
        let mut re_pow = ctx.constant(q.one());
        let mut im_pow = MPoly::<Rationals>::zero();
        let u: MExp = smallvec::smallvec![1, 0];
        let v: MExp = smallvec::smallvec![0, 1];
        let mut p_re = MPoly::<Rationals>::zero();
        let mut p_im = MPoly::<Rationals>::zero();
        for c in f.coeffs() {
            // c = a + bi contributes (a*A - b*B) + i(a*B + b*A)
            let a_re = ctx.mul_term(&re_pow, &ctx.exp_zero(), &c.re);
            let b_im = ctx.mul_term(&im_pow, &ctx.exp_zero(), &c.im);
            p_re = ctx.add(&p_re, &ctx.sub(&a_re, &b_im));
            let a_im = ctx.mul_term(&im_pow, &ctx.exp_zero(), &c.re);
            let b_re = ctx.mul_term(&re_pow, &ctx.exp_zero(), &c.im);
            p_im = ctx.add(&p_im, &ctx.add(&a_im, &b_re));
            // multiply (A + iB) by (u + iv)
            let new_re = ctx.sub(
                &ctx.mul_term(&re_pow, &u, &q.one()),
                &ctx.mul_term(&im_pow, &v, &q.one()),
            );
            let new_im = ctx.add(
                &ctx.mul_term(&re_pow, &v, &q.one()),
                &ctx.mul_term(&im_pow, &u, &q.one()),
            );
            re_pow = new_re;
            im_pow = new_im;
        }
        let outcome = match ctx.solve_system(vec![p_re, p_im]) {
            Ok(o) => o,
            Err(SolveError::PositiveDimensional) => unreachable!(
                "Re/Im parts of a nonconstant Gaussian polynomial are coprime"
            ),
            Err(SolveError::Field(e)) => return Err(e),
        };
        let mut work = f.clone();
        let mut roots = Vec::new();
        for sol in outcome.solutions {
            let z = gauss(sol[0].clone(), sol[1].clone());
            let linear = Poly::from_coeffs(self, vec![self.neg(&z), self.one()]);
            let mut mult = 0usize;
            loop {
                let (quo, rem) = work.divrem(self, &linear)?;
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
            debug_assert!(mult > 0, "solver emitted a non-root");
            roots.push((z, mult));
        }
        roots.sort_by(|a, b| self.cmp_elems(&a.0, &b.0));
        let complete = work.degree() == Some(0);
        Ok(RootsResult { roots, complete })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::rat;

    fn k() -> GaussianRationals {
        GaussianRationals
    }

    #[test]
    fn roots_of_x2_plus_1() {
        // x^2 + 1 -> {i, -i} over QQ(i)
        let f = Poly::from_coeffs(&k(), vec![k().one(), k().zero(), k().one()]);
        let r = k().univariate_roots(&f).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(r.complete);
        let vals: Vec<GaussianRational> = r.roots.iter().map(|(z, _)| z.clone()).collect();
        assert!(vals.contains(&gauss(rat(0, 1), rat(1, 1))));
        assert!(vals.contains(&gauss(rat(0, 1), rat(-1, 1))));
    }

    #[test]
    fn mixed_roots_with_multiplicity() {
        // (x - (1+2i))^2 (x - 3)
        let z = gauss(rat(1, 1), rat(2, 1));
        let lin_z = Poly::from_coeffs(&k(), vec![k().neg(&z), k().one()]);
        let three = Poly::from_coeffs(&k(), vec![k().from_i64(-3), k().one()]);
        let f = lin_z.mul(&k(), &lin_z).mul(&k(), &three);
        let r = k().univariate_roots(&f).unwrap();
        assert!(r.complete);
        assert_eq!(r.roots.len(), 2);
        assert!(r.roots.contains(&(z, 2)));
        assert!(r.roots.contains(&(k().from_i64(3), 1)));
    }

    #[test]
    fn incomplete_over_gaussians() {
        // x^2 - 2 has no roots in QQ(i)
        let f = Poly::from_coeffs(&k(), vec![k().from_i64(-2), k().zero(), k().one()]);
        let r = k().univariate_roots(&f).unwrap();
        assert!(r.roots.is_empty());
        assert!(!r.complete);
    }
}
