//! Brute-force factorization census over small prime fields: the independent
//! ground-truth oracle for the ansatz factorizer. For each split, every
//! projectively normalized left factor is enumerated and the right factor is
//! recovered by exact linear elimination against directly multiplied basis
//! products.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use rand::RngCore;
use rayon::prelude::*;

use crate::factor::{bounds, canonical_pair, FactorError};
use crate::field::{FactorField, Field};
use crate::pbw::{GAlgebra, Mono, PbwPoly, TermMap};
use crate::solve::linalg::solve_linear;

/// Census result for one element.
#[derive(Clone, Debug)]
pub struct CensusReport<K: Field> {
    pub element: PbwPoly<K>,
    pub pairs: Vec<(PbwPoly<K>, PbwPoly<K>)>,
    pub count: usize,
    pub bound_two_factor: BigUint,
    pub within_bound: bool,
}

fn require_finite<K: FactorField>(ring: &Arc<GAlgebra<K>>) -> Result<u64, FactorError> {
    ring.field().element_count().ok_or_else(|| {
        FactorError::UnsupportedField(format!(
            "census requires a finite field, got {}",
            ring.field().name()
        ))
    })
}

/// Complete enumeration of the two-factor decompositions of `a` over F_p.
pub fn census_two<K: FactorField>(
    a: &PbwPoly<K>,
    budget: u64,
) -> Result<CensusReport<K>, FactorError> {
    let ring = a.ring().clone();
    let p = require_finite(&ring)?;
    if a.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    if !ring.gr_check().admissible {
        return Err(FactorError::InadmissibleRing);
    }
    if a.is_unit() {
        return Err(FactorError::UnitInput);
    }
    let k = ring.field().clone();
    let degree = a.weighted_degree().expect("nonzero");
    let report = bounds(&ring, degree);
    let mut pairs: Vec<(PbwPoly<K>, PbwPoly<K>)> = Vec::new();
    for n1 in 1..degree {
        let n2 = degree - n1;
        let v_basis = ring.monomials_up_to(n1);
        let w_basis = ring.monomials_up_to(n2);
        let u_basis = ring.monomials_up_to(n1 + n2);
        let u_index: HashMap<&Mono, usize> =
            u_basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let alpha: Vec<K::Elem> = {
            let mut v = vec![k.zero(); u_basis.len()];
            for (m, c) in a.terms() {
                v[*u_index.get(m).expect("degree bound")] = c.clone();
            }
            v
        };
        // budget: p^{g(n1)} normalized candidates per split
        let mut combos_bound: u64 = 1;
        for _ in 0..v_basis.len() {
            combos_bound = combos_bound.checked_mul(p).filter(|&c| c <= budget).ok_or_else(
                || {
                    FactorError::TooLarge(format!(
                        "split ({}, {}) needs more than {} candidates",
                        n1, n2, budget
                    ))
                },
            )?;
        }
        for s in 0..v_basis.len() {
            let free = v_basis.len() - s - 1;
            let mut combos: u64 = 1;
            for _ in 0..free {
                combos *= p;
            }
            let mut coords = vec![k.zero(); v_basis.len()];
            coords[s] = k.one();
            for combo in 0..combos {
                let mut rest = combo;
                for f in 0..free {
                    coords[s + 1 + f] = k.element_at(rest % p);
                    rest /= p;
                }
                let b = combine(&ring, &v_basis, &coords);
                if b.is_unit() {
                    continue;
                }
                // columns: coordinates of b * w_j, by direct multiplication
                let mut rows = vec![vec![k.zero(); w_basis.len()]; u_basis.len()];
                for (j, w) in w_basis.iter().enumerate() {
                    let prod = b.mul(&ring.monomial(w.clone(), k.one()))?;
                    for (m, c) in prod.terms() {
                        rows[*u_index.get(m).expect("filtration closed")][j] = c.clone();
                    }
                }
                let Some(sol) = solve_linear(&k, &rows, &alpha) else {
                    continue;
                };
                let mut space: u64 = 1;
                for _ in 0..sol.nullspace.len() {
                    space *= p;
                }
                for t in 0..space {
                    let mut y = sol.particular.clone();
                    let mut rest = t;
                    for nv in &sol.nullspace {
                        let cf = k.element_at(rest % p);
                        rest /= p;
                        if k.is_zero(&cf) {
                            continue;
                        }
                        for (yj, b) in y.iter_mut().zip(nv.iter()) {
                            *yj = k.add(yj, &k.mul(&cf, b));
                        }
                    }
                    let c = combine(&ring, &w_basis, &y);
                    if c.is_unit() || c.is_zero() {
                        continue;
                    }
                    let (bm, cm) = canonical_pair(&b, &c);
                    if bm.mul(&cm)? != *a {
                        return Err(FactorError::SoundnessViolation(
                            "census pair does not multiply back".into(),
                        ));
                    }
                    pairs.push((bm, cm));
                }
            }
        }
    }
    pairs.sort_by(|(b1, c1), (b2, c2)| b1.cmp_canonical(b2).then_with(|| c1.cmp_canonical(c2)));
    pairs.dedup_by(|x, y| x.0 == y.0 && x.1 == y.1);
    let count = pairs.len();
    let within_bound = BigUint::from(count) <= report.two_factor;
    Ok(CensusReport {
        element: a.clone(),
        pairs,
        count,
        bound_two_factor: report.two_factor,
        within_bound,
    })
}

fn combine<K: Field>(ring: &Arc<GAlgebra<K>>, basis: &[Mono], coords: &[K::Elem]) -> PbwPoly<K> {
    let k = ring.field();
    let mut terms: TermMap<K> = BTreeMap::new();
    for (m, c) in basis.iter().zip(coords.iter()) {
        if !k.is_zero(c) {
            terms.insert(m.clone(), c.clone());
        }
    }
    ring.from_terms(terms)
}

/// Paranoid self-check of the oracle: enumerate *both* factors exhaustively
/// (cost p^{g(n1)+g(n2)}) and compare products directly. Intended for p <= 3
/// and degree <= 2.
pub fn paranoid_census_two<K: FactorField>(
    a: &PbwPoly<K>,
    budget: u64,
) -> Result<CensusReport<K>, FactorError> {
    let ring = a.ring().clone();
    let p = require_finite(&ring)?;
    if a.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    if a.is_unit() {
        return Err(FactorError::UnitInput);
    }
    let k = ring.field().clone();
    let degree = a.weighted_degree().expect("nonzero");
    let report = bounds(&ring, degree);
    let mut pairs: Vec<(PbwPoly<K>, PbwPoly<K>)> = Vec::new();
    for n1 in 1..degree {
        let n2 = degree - n1;
        let v_basis = ring.monomials_up_to(n1);
        let w_basis = ring.monomials_up_to(n2);
        let mut total: u64 = 1;
        for _ in 0..(v_basis.len() + w_basis.len()) {
            total = total.checked_mul(p).filter(|&c| c <= budget).ok_or_else(|| {
                FactorError::TooLarge("paranoid census too large".into())
            })?;
        }
        let vn = v_basis.len();
        for combo in 0..total {
            let mut rest = combo;
            let mut bc = vec![k.zero(); vn];
            for slot in bc.iter_mut() {
                *slot = k.element_at(rest % p);
                rest /= p;
            }
            let mut cc = vec![k.zero(); w_basis.len()];
            for slot in cc.iter_mut() {
                *slot = k.element_at(rest % p);
                rest /= p;
            }
            let b = combine(&ring, &v_basis, &bc);
            let c = combine(&ring, &w_basis, &cc);
            if b.is_zero() || c.is_zero() || b.is_unit() || c.is_unit() {
                continue;
            }
            if b.mul(&c)? == *a {
                pairs.push(canonical_pair(&b, &c));
            }
        }
    }
    pairs.sort_by(|(b1, c1), (b2, c2)| b1.cmp_canonical(b2).then_with(|| c1.cmp_canonical(c2)));
    pairs.dedup_by(|x, y| x.0 == y.0 && x.1 == y.1);
    let count = pairs.len();
    let within_bound = BigUint::from(count) <= report.two_factor;
    Ok(CensusReport {
        element: a.clone(),
        pairs,
        count,
        bound_two_factor: report.two_factor,
        within_bound,
    })
}

/// Uniformly random element of V_deg that is neither zero nor a unit.
pub fn random_element<K: FactorField>(
    ring: &Arc<GAlgebra<K>>,
    deg: u64,
    rng: &mut dyn RngCore,
) -> PbwPoly<K> {
    let p = ring.field().element_count().expect("finite field");
    let basis = ring.monomials_up_to(deg);
    loop {
        let coords: Vec<K::Elem> = (0..basis.len())
            .map(|_| ring.field().element_at(rng.next_u64() % p))
            .collect();
        let f = combine(ring, &basis, &coords);
        if !f.is_zero() && !f.is_unit() {
            return f;
        }
    }
}

/// Census of all monomials of degree 1..=degree_bound plus `sample` random
/// elements per degree level. Fails loudly if any report violates the
/// two-factor bound.
pub fn census_sweep<K: FactorField>(
    ring: &Arc<GAlgebra<K>>,
    degree_bound: u64,
    sample: usize,
    seed: u64,
    budget: u64,
) -> Result<Vec<CensusReport<K>>, FactorError> {
    require_finite(ring)?;
    let mut elements: Vec<PbwPoly<K>> = Vec::new();
    for m in ring.monomials_up_to(degree_bound) {
        if !m.is_unit() {
            elements.push(ring.monomial(m, ring.field().one()));
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    use rand::SeedableRng;
    for deg in 1..=degree_bound {
        for _ in 0..sample {
            elements.push(random_element(ring, deg, &mut rng));
        }
    }
    let reports: Result<Vec<CensusReport<K>>, FactorError> = elements
        .par_iter()
        .map(|a| census_two(a, budget))
        .collect();
    let reports = reports?;
    for r in &reports {
        if !r.within_bound {
            return Err(FactorError::BoundViolation(format!(
                "census count {} exceeds bound {}",
                r.count, r.bound_two_factor
            )));
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::{factor_two, DEFAULT_BUDGET};
    use crate::field::PrimeField;
    use crate::pbw::builtins::{polynomial, shift, weyl};

    #[test]
    fn census_xd_f3_matches_solver_and_paranoid() {
        let f3 = PrimeField::new(3).unwrap();
        let w = weyl(f3, 1).unwrap();
        let x = w.gen(0);
        let d = w.gen(1);
        let xd = x.mul(&d).unwrap();
        let census = census_two(&xd, DEFAULT_BUDGET).unwrap();
        assert_eq!(census.count, 1);
        assert_eq!(census.pairs, vec![(x.clone(), d.clone())]);
        let solver = factor_two(&xd, DEFAULT_BUDGET).unwrap();
        assert_eq!(census.pairs, solver.pairs);
        let paranoid = paranoid_census_two(&xd, DEFAULT_BUDGET).unwrap();
        assert_eq!(census.pairs, paranoid.pairs);
    }

    #[test]
    fn census_irreducible_d() {
        let f3 = PrimeField::new(3).unwrap();
        let w = weyl(f3, 1).unwrap();
        let d = w.gen(1);
        let census = census_two(&d, DEFAULT_BUDGET).unwrap();
        assert_eq!(census.count, 0);
        assert!(census.within_bound);
    }

    #[test]
    fn census_x_squared_f2() {
        let f2 = PrimeField::new(2).unwrap();
        let p1 = polynomial(f2, 1).unwrap();
        let x = p1.gen(0);
        let x2 = x.pow(2).unwrap();
        let census = census_two(&x2, DEFAULT_BUDGET).unwrap();
        assert_eq!(census.pairs, vec![(x.clone(), x.clone())]);
        let paranoid = paranoid_census_two(&x2, DEFAULT_BUDGET).unwrap();
        assert_eq!(census.pairs, paranoid.pairs);
    }

    #[test]
    fn sweep_shift_f3_sound() {
        let f3 = PrimeField::new(3).unwrap();
        let s = shift(f3).unwrap();
        let reports = census_sweep(&s, 2, 5, 42, DEFAULT_BUDGET).unwrap();
        // 5 monomials of degree 1..2 plus 2 * 5 random elements
        assert_eq!(reports.len(), 15);
        for r in &reports {
            assert!(r.within_bound);
            for (b, c) in &r.pairs {
                assert_eq!(b.mul(c).unwrap(), r.element);
            }
        }
    }

    #[test]
    fn census_rejects_rationals() {
        use crate::field::Rationals;
        let w = weyl(Rationals, 1).unwrap();
        let x = w.gen(0);
        assert!(matches!(
            census_two(&x.pow(2).unwrap(), DEFAULT_BUDGET),
            Err(FactorError::UnsupportedField(_))
        ));
    }
}
