//! Executable regression gallery: exact verification of the displayed
//! two-factor identities over localized operator rings (differential, shift,
//! q-shift, conjugation), plus distinctness sweeps certifying that the
//! families give pairwise inequivalent factorizations up to central units.

use std::fmt;

use num_traits::One;
use rayon::prelude::*;

use crate::field::rational::{rat, Rational, Rationals};
use crate::field::{Field, GaussianRational, GaussianRationals, RatFunc, RatFuncField};
use crate::ore::{
    conjugation_ring, differential_ring, qshift_ring, shift_ring, OreError, OrePoly, SkewField,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GalleryError {
    BadParameter(String),
    Ore(OreError),
}

impl fmt::Display for GalleryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GalleryError::BadParameter(s) => write!(f, "bad parameter: {}", s),
            GalleryError::Ore(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for GalleryError {}

impl From<OreError> for GalleryError {
    fn from(e: OreError) -> Self {
        GalleryError::Ore(e)
    }
}

/// One verified identity: both sides printed in canonical form; `verified`
/// is exact equality of the normal forms, no tolerance.
#[derive(Clone, Debug)]
pub struct IdentityCase {
    pub name: String,
    pub ring: String,
    pub parameters: String,
    pub lhs: String,
    pub rhs: String,
    pub verified: bool,
}

fn case<K: SkewField>(
    name: &str,
    ring: String,
    parameters: String,
    lhs: &OrePoly<K>,
    rhs: &OrePoly<K>,
) -> IdentityCase {
    IdentityCase {
        name: name.to_string(),
        ring,
        parameters,
        lhs: lhs.format(),
        rhs: rhs.format(),
        verified: lhs == rhs,
    }
}

fn qx() -> RatFuncField<Rationals> {
    RatFuncField::new(Rationals, "x")
}

type Rf = RatFunc<Rationals>;

fn linear(field: &RatFuncField<Rationals>, a: &Rational, b: &Rational) -> Rf {
    // a*x + b
    use crate::field::poly::Poly;
    field.from_poly(Poly::from_coeffs(&Rationals, vec![b.clone(), a.clone()]))
}

/// D^2 = (D + f)(D - f) with f = b/(bx - c) in the differential ring over
/// QQ(x); f' = -f^2 makes the product telescope.
pub fn verify_rat_weyl(b: &Rational, c: &Rational) -> Result<(IdentityCase, OrePoly<RatFuncField<Rationals>>), GalleryError> {
    use num_traits::Zero;
    if b.is_zero() && c.is_zero() {
        return Err(GalleryError::BadParameter("(b, c) must be nonzero".into()));
    }
    let field = qx();
    let ring = differential_ring(field.clone())?;
    let f = if b.is_zero() {
        field.zero()
    } else {
        let num = linear(&field, &Rational::zero(), b);
        let den = linear(&field, b, &-c.clone());
        field
            .fraction(num.num.clone(), den.num.clone())
            .expect("denominator nonzero")
    };
    let d = ring.op();
    let lhs = d.pow(2)?;
    let left = d.add(&ring.scalar(f.clone()))?;
    let right = d.sub(&ring.scalar(f.clone()))?;
    let rhs = left.mul(&right)?;
    let params = format!("b={}, c={}", b, c);
    Ok((
        case("rat-weyl", ring.field().name(), params, &lhs, &rhs),
        right,
    ))
}

/// s^2 - 2(x+2)s + (x+2)(x+1) =
/// (s - (x+2)E/sE)(s - (x+1)sE/E) with E = c1*x + c2 in the shift ring
/// (the shift variable is named x here).
pub fn verify_rat_shift(c1: &Rational, c2: &Rational) -> Result<(IdentityCase, OrePoly<RatFuncField<Rationals>>), GalleryError> {
    use num_traits::Zero;
    if c1.is_zero() && c2.is_zero() {
        return Err(GalleryError::BadParameter("(c1, c2) must be nonzero".into()));
    }
    let field = qx();
    let ring = shift_ring(field.clone())?;
    let e = linear(&field, c1, c2);
    let se = ring.sigma(&e);
    let xp1 = field.parse("x+1").expect("literal");
    let xp2 = field.parse("x+2").expect("literal");
    let a_coeff = field.mul(&xp2, &field.div(&e, &se).expect("nonzero"));
    let b_coeff = field.mul(&xp1, &field.div(&se, &e).expect("nonzero"));
    let s = ring.op();
    // lhs = s^2 - 2(x+2) s + (x+2)(x+1)
    let lhs = s
        .pow(2)?
        .sub(&s.scale(&field.mul(&field.from_i64(2), &xp2)))?
        .add(&ring.scalar(field.mul(&xp2, &xp1)))?;
    let left = s.sub(&ring.scalar(a_coeff))?;
    let right = s.sub(&ring.scalar(b_coeff))?;
    let rhs = left.mul(&right)?;
    let params = format!("c1={}, c2={}", c1, c2);
    Ok((
        case("rat-shift", ring.field().name(), params, &lhs, &rhs),
        right,
    ))
}

/// The shift identity verified once and for all in the specialized form
/// c1 = 1, c2 = c with c symbolic: coefficients live in the nested field
/// QQ(c)(n).
pub fn verify_rat_shift_symbolic() -> Result<IdentityCase, GalleryError> {
    use crate::field::poly::Poly;
    let qc = RatFuncField::new(Rationals, "c");
    let field = RatFuncField::new(qc.clone(), "n");
    let ring = shift_ring(field.clone())?;
    // E = n + c: coefficients (c, 1) in the outer variable n
    let e = field.from_poly(Poly::from_coeffs(&qc, vec![qc.var(), qc.one()]));
    let se = ring.sigma(&e);
    let np1 = field.parse("n+1").expect("literal");
    let np2 = field.parse("n+2").expect("literal");
    let a_coeff = field.mul(&np2, &field.div(&e, &se).expect("nonzero"));
    let b_coeff = field.mul(&np1, &field.div(&se, &e).expect("nonzero"));
    let s = ring.op();
    let lhs = s
        .pow(2)?
        .sub(&s.scale(&field.mul(&field.from_i64(2), &np2)))?
        .add(&ring.scalar(field.mul(&np2, &np1)))?;
    let rhs = s
        .sub(&ring.scalar(a_coeff))?
        .mul(&s.sub(&ring.scalar(b_coeff))?)?;
    Ok(case(
        "rat-shift-symbolic",
        ring.field().name(),
        "c1=1, c2=c (symbolic)".into(),
        &lhs,
        &rhs,
    ))
}

/// sq^2 - (1+q)sq + q = (sq - q*y/sy)(sq - sy/y) with y = c1*x + c2 in the
/// q-shift ring. Equivalently the left coefficient is
/// 1 - c2(1-q)/(c1*q*x + c2) and the right one q + c2(1-q)/(c1*x + c2): the
/// left denominator is the sigma-image of the right one.
pub fn verify_rat_qshift(
    c1: &Rational,
    c2: &Rational,
    q: &Rational,
) -> Result<(IdentityCase, OrePoly<RatFuncField<Rationals>>), GalleryError> {
    use num_traits::Zero;
    if q.is_zero() {
        return Err(GalleryError::BadParameter("q must be nonzero".into()));
    }
    if c1.is_zero() && c2.is_zero() {
        return Err(GalleryError::BadParameter("(c1, c2) must be nonzero".into()));
    }
    let field = qx();
    let ring = qshift_ring(field.clone(), field.from_base(q.clone()))?;
    let y = linear(&field, c1, c2);
    let sy = ring.sigma(&y);
    let qq = field.from_base(q.clone());
    let a_coeff = field.mul(&qq, &field.div(&y, &sy).expect("nonzero"));
    let b_coeff = field.div(&sy, &y).expect("nonzero");
    let s = ring.op();
    let lhs = s
        .pow(2)?
        .sub(&s.scale(&field.add(&field.one(), &qq)))?
        .add(&ring.scalar(qq.clone()))?;
    let left = s.sub(&ring.scalar(a_coeff))?;
    let right = s.sub(&ring.scalar(b_coeff))?;
    let rhs = left.mul(&right)?;
    let params = format!("c1={}, c2={}, q={}", c1, c2, q);
    Ok((
        case("rat-qshift", ring.field().name(), params, &lhs, &rhs),
        right,
    ))
}

/// t^2 - 1 = (t - conj(w))(t + w) for unit-norm w in the conjugation ring
/// over QQ(i).
pub fn verify_conjugation(
    w: &GaussianRational,
) -> Result<(IdentityCase, OrePoly<GaussianRationals>), GalleryError> {
    if !w.norm().is_one() {
        return Err(GalleryError::BadParameter(format!(
            "w must have unit norm, got |w|^2 = {}",
            w.norm()
        )));
    }
    let k = GaussianRationals;
    let ring = conjugation_ring()?;
    let t = ring.op();
    let lhs = t.pow(2)?.sub(&ring.one())?;
    let left = t.sub(&ring.scalar(w.conjugate()))?;
    let right = t.add(&ring.scalar(w.clone()))?;
    let rhs = left.mul(&right)?;
    let params = format!("w={}", k.format(w));
    Ok((
        case("conjugation", k.name(), params, &lhs, &rhs),
        right,
    ))
}

/// The four identity families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    RatWeyl,
    RatShift,
    RatQShift,
    Conjugation,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::RatWeyl => "rat-weyl",
            Family::RatShift => "rat-shift",
            Family::RatQShift => "rat-qshift",
            Family::Conjugation => "conjugation",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "rat-weyl" => Some(Family::RatWeyl),
            "rat-shift" => Some(Family::RatShift),
            "rat-qshift" => Some(Family::RatQShift),
            "conjugation" => Some(Family::Conjugation),
            _ => None,
        }
    }
}

/// Result of a distinctness sweep: all cases verified and the normalized
/// right factors pairwise inequivalent up to central units.
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub family: String,
    pub cases: Vec<IdentityCase>,
    pub all_verified: bool,
    pub pairwise_distinct: bool,
    pub pairs_checked: usize,
}

fn sweep_distinct<K: SkewField>(factors: &[OrePoly<K>]) -> (bool, usize) {
    let mut checked = 0usize;
    for i in 0..factors.len() {
        for j in (i + 1)..factors.len() {
            checked += 1;
            let fi = factors[i].normalize().expect("nonzero factor");
            let fj = factors[j].normalize().expect("nonzero factor");
            if fi.equal_up_to_center(&fj) {
                return (false, checked);
            }
        }
    }
    (true, checked)
}

/// First `n` unit-norm Gaussian rationals from the primitive Pythagorean
/// parameterization (m^2-n^2, 2mn, m^2+n^2).
pub fn pythagorean_units(n: usize) -> Vec<GaussianRational> {
    let mut out = Vec::new();
    let mut m: i64 = 2;
    'outer: loop {
        for k in 1..m {
            if (m - k) % 2 == 1 && num_integer::gcd(m, k) == 1 {
                let hyp = m * m + k * k;
                let w = GaussianRational::new(rat(m * m - k * k, hyp), rat(2 * m * k, hyp));
                out.push(w);
                if out.len() == n {
                    break 'outer;
                }
            }
        }
        m += 1;
    }
    out
}

/// Verify `samples` parameter choices in distinct projective classes and
/// certify that the right factors are pairwise inequivalent up to central
/// units. `q` parameterizes the q-shift family only.
pub fn distinctness_sweep(
    family: Family,
    samples: usize,
    q: &Rational,
) -> Result<SweepReport, GalleryError> {
    assert!(samples >= 2, "a sweep needs at least two samples");
    match family {
        Family::RatWeyl => {
            let results: Result<Vec<_>, _> = (0..samples)
                .into_par_iter()
                .map(|k| verify_rat_weyl(&rat(1, 1), &rat(k as i64, 1)))
                .collect();
            let results = results?;
            let (cases, factors): (Vec<_>, Vec<_>) = results.into_iter().unzip();
            let (distinct, checked) = sweep_distinct(&factors);
            Ok(SweepReport {
                family: family.name().into(),
                all_verified: cases.iter().all(|c| c.verified),
                cases,
                pairwise_distinct: distinct,
                pairs_checked: checked,
            })
        }
        Family::RatShift => {
            let results: Result<Vec<_>, _> = (0..samples)
                .into_par_iter()
                .map(|k| verify_rat_shift(&rat(1, 1), &rat(k as i64, 1)))
                .collect();
            let results = results?;
            let (cases, factors): (Vec<_>, Vec<_>) = results.into_iter().unzip();
            let (distinct, checked) = sweep_distinct(&factors);
            Ok(SweepReport {
                family: family.name().into(),
                all_verified: cases.iter().all(|c| c.verified),
                cases,
                pairwise_distinct: distinct,
                pairs_checked: checked,
            })
        }
        Family::RatQShift => {
            let results: Result<Vec<_>, _> = (0..samples)
                .into_par_iter()
                .map(|k| verify_rat_qshift(&rat(1, 1), &rat(k as i64, 1), q))
                .collect();
            let results = results?;
            let (cases, factors): (Vec<_>, Vec<_>) = results.into_iter().unzip();
            let (distinct, checked) = sweep_distinct(&factors);
            Ok(SweepReport {
                family: family.name().into(),
                all_verified: cases.iter().all(|c| c.verified),
                cases,
                pairwise_distinct: distinct,
                pairs_checked: checked,
            })
        }
        Family::Conjugation => {
            let units = pythagorean_units(samples);
            let results: Result<Vec<_>, _> = units
                .par_iter()
                .map(verify_conjugation)
                .collect();
            let results = results?;
            let (cases, factors): (Vec<_>, Vec<_>) = results.into_iter().unzip();
            let (distinct, checked) = sweep_distinct(&factors);
            Ok(SweepReport {
                family: family.name().into(),
                all_verified: cases.iter().all(|c| c.verified),
                cases,
                pairwise_distinct: distinct,
                pairs_checked: checked,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_weyl_examples() {
        // (b, c) = (1, 0): D^2 = (D + 1/x)(D - 1/x)
        let (case, _) = verify_rat_weyl(&rat(1, 1), &rat(0, 1)).unwrap();
        assert!(case.verified, "lhs={} rhs={}", case.lhs, case.rhs);
        // (b, c) = (0, 1): f = 0, trivial splitting
        let (case, _) = verify_rat_weyl(&rat(0, 1), &rat(1, 1)).unwrap();
        assert!(case.verified);
        // (b, c) = (2, 3)
        let (case, _) = verify_rat_weyl(&rat(2, 1), &rat(3, 1)).unwrap();
        assert!(case.verified);
        assert!(verify_rat_weyl(&rat(0, 1), &rat(0, 1)).is_err());
    }

    #[test]
    fn rat_shift_examples() {
        for (c1, c2) in [(1, 5), (0, 1), (2, -1)] {
            let (case, _) = verify_rat_shift(&rat(c1, 1), &rat(c2, 1)).unwrap();
            assert!(case.verified, "({}, {}): lhs={} rhs={}", c1, c2, case.lhs, case.rhs);
        }
    }

    #[test]
    fn rat_shift_symbolic() {
        let case = verify_rat_shift_symbolic().unwrap();
        assert!(case.verified, "lhs={} rhs={}", case.lhs, case.rhs);
    }

    #[test]
    fn rat_qshift_examples() {
        // specialized display c1 = c-1, c2 = 1 at c = 2, q = 3
        let (case, _) = verify_rat_qshift(&rat(1, 1), &rat(1, 1), &rat(3, 1)).unwrap();
        assert!(case.verified, "lhs={} rhs={}", case.lhs, case.rhs);
        // q = 1 degenerates to (s-1)^2
        let (case, _) = verify_rat_qshift(&rat(2, 1), &rat(1, 1), &rat(1, 1)).unwrap();
        assert!(case.verified);
        // (1, 1), q = 2
        let (case, _) = verify_rat_qshift(&rat(1, 1), &rat(1, 1), &rat(2, 1)).unwrap();
        assert!(case.verified);
        assert!(verify_rat_qshift(&rat(1, 1), &rat(1, 1), &rat(0, 1)).is_err());
    }

    #[test]
    fn conjugation_examples() {
        use crate::field::gaussian::gauss;
        for (re, im) in [(rat(3, 5), rat(4, 5)), (rat(1, 1), rat(0, 1)), (rat(5, 13), rat(12, 13))] {
            let w = gauss(re, im);
            let (case, _) = verify_conjugation(&w).unwrap();
            assert!(case.verified, "w: lhs={} rhs={}", case.lhs, case.rhs);
        }
        let bad = gauss(rat(1, 2), rat(1, 2));
        assert!(verify_conjugation(&bad).is_err());
    }

    #[test]
    fn sweeps_distinct() {
        for family in [
            Family::RatWeyl,
            Family::RatShift,
            Family::RatQShift,
            Family::Conjugation,
        ] {
            let report = distinctness_sweep(family, 4, &rat(2, 1)).unwrap();
            assert!(report.all_verified, "{} not verified", report.family);
            assert!(report.pairwise_distinct, "{} collided", report.family);
            assert_eq!(report.pairs_checked, 6);
        }
    }

    #[test]
    fn pythagorean_units_are_units() {
        let units = pythagorean_units(10);
        assert_eq!(units.len(), 10);
        for w in &units {
            assert!(w.norm().is_one());
        }
        let mut dedup = units.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 10);
    }
}
