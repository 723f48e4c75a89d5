//! Factorization by the bilinear ansatz: expand candidate factors over
//! filtration bases, so `a = b c` becomes the quadratic system
//! `sum_{i,j} gamma_{i,j,l} x_i y_j = alpha_l`; solve it exactly per degree
//! split, normalize and deduplicate up to central units, recurse to
//! irreducible chains, and report the growth-function bounds.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::field::{FactorField, Field, FieldError};
use crate::pbw::{GAlgebra, Mono, PbwError, PbwPoly, TermMap};
use crate::solve::groebner::{MOrder, MPoly, PolyCtx, SolveError};
use crate::solve::linalg::solve_linear;

/// Default enumeration budget per degree split (finite-field backends).
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorError {
    ZeroInput,
    UnitInput,
    InadmissibleRing,
    BadSplit(String),
    /// Enumeration budget exceeded.
    TooLarge(String),
    /// An infinite solution family; impossible for admissible rings, so it
    /// signals a modeling error.
    PositiveDimensional(String),
    /// An emitted count exceeded a proven bound; mathematically impossible.
    BoundViolation(String),
    /// An emitted factor pair failed re-multiplication; solver defect.
    SoundnessViolation(String),
    /// Operation not available over this coefficient field.
    UnsupportedField(String),
    Pbw(PbwError),
    Field(FieldError),
}

impl fmt::Display for FactorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorError::ZeroInput => write!(f, "cannot factor zero"),
            FactorError::UnitInput => write!(f, "cannot factor a unit"),
            FactorError::InadmissibleRing => {
                write!(f, "ring admits no compatible weighted filtration")
            }
            FactorError::BadSplit(s) => write!(f, "bad degree split: {}", s),
            FactorError::TooLarge(s) => write!(f, "enumeration budget exceeded: {}", s),
            FactorError::PositiveDimensional(s) => {
                write!(f, "positive-dimensional solution family: {}", s)
            }
            FactorError::BoundViolation(s) => write!(f, "bound violated: {}", s),
            FactorError::SoundnessViolation(s) => write!(f, "soundness check failed: {}", s),
            FactorError::UnsupportedField(s) => write!(f, "unsupported field: {}", s),
            FactorError::Pbw(e) => write!(f, "{}", e),
            FactorError::Field(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for FactorError {}

impl From<PbwError> for FactorError {
    fn from(e: PbwError) -> Self {
        FactorError::Pbw(e)
    }
}

impl From<FieldError> for FactorError {
    fn from(e: FieldError) -> Self {
        FactorError::Field(e)
    }
}

/// The quadratic system of one degree split: bases of V_{n1}, V_{n2} and
/// V_{n1+n2}, the structure tensor gamma with `v_i w_j = sum_l gamma[i][j][l]
/// u_l`, and the coordinates alpha of the target.
pub struct BilinearSystem<K: Field> {
    pub ring: Arc<GAlgebra<K>>,
    pub n1: u64,
    pub n2: u64,
    pub v_basis: Vec<Mono>,
    pub w_basis: Vec<Mono>,
    pub u_basis: Vec<Mono>,
    /// gamma[i][j] is the sparse list of (l, coefficient).
    pub gamma: Vec<Vec<Vec<(usize, K::Elem)>>>,
    pub alpha: Vec<K::Elem>,
}

/// One normalized solution: x has a leading run of zeros then a one at
/// `norm_index`; substituting into every equation gives exact equality.
#[derive(Clone, Debug)]
pub struct SolutionVector<K: Field> {
    pub x: Vec<K::Elem>,
    pub y: Vec<K::Elem>,
    pub norm_index: usize,
}

/// Build the bilinear system of one degree split.
pub fn build_system<K: Field>(
    a: &PbwPoly<K>,
    n1: u64,
    n2: u64,
) -> Result<BilinearSystem<K>, FactorError> {
    let ring = a.ring().clone();
    if !ring.gr_check().admissible {
        return Err(FactorError::InadmissibleRing);
    }
    if n1 == 0 || n2 == 0 {
        return Err(FactorError::BadSplit("split parts must be >= 1".into()));
    }
    match a.weighted_degree() {
        None => return Err(FactorError::ZeroInput),
        Some(d) if d > n1 + n2 => {
            return Err(FactorError::BadSplit(format!(
                "target degree {} exceeds split total {}",
                d,
                n1 + n2
            )))
        }
        Some(_) => {}
    }
    let v_basis = ring.monomials_up_to(n1);
    let w_basis = ring.monomials_up_to(n2);
    let u_basis = ring.monomials_up_to(n1 + n2);
    let u_index: HashMap<&Mono, usize> = u_basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let k = ring.field().clone();
    let mut gamma = Vec::with_capacity(v_basis.len());
    for v in &v_basis {
        let mut row = Vec::with_capacity(w_basis.len());
        for w in &w_basis {
            let prod = ring.mul_mono(v, w);
            let mut entry: Vec<(usize, K::Elem)> = prod
                .into_iter()
                .map(|(m, c)| {
                    let l = *u_index
                        .get(&m)
                        .expect("product stays inside the split filtration level");
                    (l, c)
                })
                .collect();
            entry.sort_by_key(|(l, _)| *l);
            row.push(entry);
        }
        gamma.push(row);
    }
    let mut alpha = vec![k.zero(); u_basis.len()];
    for (m, c) in a.terms() {
        let l = *u_index.get(m).expect("degree checked above");
        alpha[l] = c.clone();
    }
    Ok(BilinearSystem {
        ring,
        n1,
        n2,
        v_basis,
        w_basis,
        u_basis,
        gamma,
        alpha,
    })
}

/// Finite-field backend: enumerate every projectively normalized x over
/// F_p^p and solve the remaining linear system in y exactly. Complete.
pub fn solve_ff<K: FactorField>(
    sys: &BilinearSystem<K>,
    budget: u64,
) -> Result<Vec<SolutionVector<K>>, FactorError> {
    let k = sys.ring.field().clone();
    let p = k
        .element_count()
        .expect("finite-field backend requires a finite field");
    let pn = sys.v_basis.len();
    let qn = sys.w_basis.len();
    let tn = sys.u_basis.len();
    let mut out = Vec::new();
    let mut spent: u64 = 0;
    for s in 0..pn {
        let free = pn - s - 1;
        let mut combos: u64 = 1;
        for _ in 0..free {
            combos = combos
                .checked_mul(p)
                .filter(|&c| c.saturating_add(spent) <= budget)
                .ok_or_else(|| {
                    FactorError::TooLarge(format!(
                        "normalization slice {} needs more than {} candidates",
                        s + 1,
                        budget
                    ))
                })?;
        }
        spent = spent.saturating_add(combos);
        if spent > budget {
            return Err(FactorError::TooLarge(format!(
                "split ({}, {}) exceeds the enumeration budget",
                sys.n1, sys.n2
            )));
        }
        let mut x = vec![k.zero(); pn];
        x[s] = k.one();
        for combo in 0..combos {
            let mut rest = combo;
            for f in 0..free {
                x[s + 1 + f] = k.element_at(rest % p);
                rest /= p;
            }
            // rows: sum_j (sum_i gamma[i][j][l] x_i) y_j = alpha_l
            let mut rows = vec![vec![k.zero(); qn]; tn];
            for (i, xi) in x.iter().enumerate().skip(s) {
                if k.is_zero(xi) {
                    continue;
                }
                for j in 0..qn {
                    for (l, g) in &sys.gamma[i][j] {
                        rows[*l][j] = k.add(&rows[*l][j], &k.mul(xi, g));
                    }
                }
            }
            let Some(sol) = solve_linear(&k, &rows, &sys.alpha) else {
                continue;
            };
            // enumerate the affine solution space (usually a point)
            let dim = sol.nullspace.len();
            let mut space: u64 = 1;
            for _ in 0..dim {
                space = space.checked_mul(p).filter(|&c| c <= budget).ok_or_else(|| {
                    FactorError::TooLarge("solution space enumeration too large".into())
                })?;
            }
            for t in 0..space {
                let mut y = sol.particular.clone();
                let mut rest = t;
                for basis_vec in &sol.nullspace {
                    let c = k.element_at(rest % p);
                    rest /= p;
                    if k.is_zero(&c) {
                        continue;
                    }
                    for (yj, nv) in y.iter_mut().zip(basis_vec.iter()) {
                        *yj = k.add(yj, &k.mul(&c, nv));
                    }
                }
                out.push(SolutionVector {
                    x: x.clone(),
                    y,
                    norm_index: s,
                });
            }
        }
    }
    Ok(out)
}

/// Rational backend: per normalization slice, form the quadric ideal plus
/// the slice equations, compute a lexicographic Groebner basis, check
/// zero-dimensionality and back-substitute with exact in-field roots.
/// Diagnostics record pruned non-rational branches.
pub fn solve_groebner<K: crate::field::SolvableField>(
    sys: &BilinearSystem<K>,
) -> Result<(Vec<SolutionVector<K>>, Vec<String>), FactorError> {
    let k = sys.ring.field().clone();
    let pn = sys.v_basis.len();
    let qn = sys.w_basis.len();
    let tn = sys.u_basis.len();
    let mut out = Vec::new();
    let mut diagnostics = Vec::new();
    for s in 0..pn {
        let nx = pn - s - 1;
        let nvars = nx + qn;
        let ctx = PolyCtx::new(k.clone(), nvars, MOrder::Lex);
        let mut polys: Vec<MPoly<K>> = Vec::with_capacity(tn);
        for l in 0..tn {
            let mut terms = Vec::new();
            for i in s..pn {
                for j in 0..qn {
                    for (ll, g) in &sys.gamma[i][j] {
                        if *ll != l {
                            continue;
                        }
                        let mut exp = ctx.exp_zero();
                        if i > s {
                            exp[i - s - 1] += 1;
                        }
                        exp[nx + j] += 1;
                        terms.push((exp, g.clone()));
                    }
                }
            }
            terms.push((ctx.exp_zero(), k.neg(&sys.alpha[l])));
            polys.push(ctx.normalize(terms));
        }
        let outcome = match ctx.solve_system(polys) {
            Ok(o) => o,
            Err(SolveError::PositiveDimensional) => {
                return Err(FactorError::PositiveDimensional(format!(
                    "normalization slice {} of split ({}, {})",
                    s + 1,
                    sys.n1,
                    sys.n2
                )))
            }
            Err(SolveError::Field(e)) => return Err(FactorError::Field(e)),
        };
        if outcome.missed_nonrational {
            diagnostics.push(format!(
                "split ({},{}) slice {}: non-rational branch over {} not pursued",
                sys.n1,
                sys.n2,
                s + 1,
                k.name()
            ));
        }
        for sol in outcome.solutions {
            let mut x = vec![k.zero(); pn];
            x[s] = k.one();
            for (f, val) in sol[..nx].iter().enumerate() {
                x[s + 1 + f] = val.clone();
            }
            let y = sol[nx..].to_vec();
            out.push(SolutionVector {
                x,
                y,
                norm_index: s,
            });
        }
    }
    Ok((out, diagnostics))
}

/// All two-factor decompositions of `target` up to central units, with the
/// growth-function bounds evaluated alongside.
#[derive(Clone, Debug)]
pub struct FactorizationSet<K: Field> {
    pub target: PbwPoly<K>,
    /// Canonical pairs: left factor monic in the monomial order, right factor
    /// carrying the compensating scalar. Sorted deterministically.
    pub pairs: Vec<(PbwPoly<K>, PbwPoly<K>)>,
    /// Maximal chains of irreducible factors (factor_all only).
    pub chains: Vec<Vec<PbwPoly<K>>>,
    /// True when no solver branch was pruned for leaving the base field.
    pub exhaustive: bool,
    pub diagnostics: Vec<String>,
    pub bounds: BoundsReport,
}

/// Bounds from the filtration growth function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub degree: u64,
    pub growth: u64,
    /// (n1, n2, 2^{g(n1)+g(n2)}) per split.
    pub per_split: Vec<(u64, u64, BigUint)>,
    /// floor(n/4 * 4^g): the stated two-factor bound.
    pub two_factor: BigUint,
    /// (n-1) * 4^{g-1}: the sharper bound from the recursion argument,
    /// recorded for diagnostics only.
    pub two_factor_proof: BigUint,
    /// 2^{n*g}: bound on the total number of factorizations.
    pub total: BigUint,
}

/// Evaluate the counting bounds for elements of V_n.
pub fn bounds<K: Field>(ring: &Arc<GAlgebra<K>>, n: u64) -> BoundsReport {
    assert!(n >= 1, "bounds need n >= 1");
    let g = ring.growth(n);
    let four = BigUint::from(4u32);
    let two = BigUint::from(2u32);
    let two_factor = BigUint::from(n) * four.pow((g - 1) as u32);
    let two_factor_proof = BigUint::from(n - 1) * four.pow((g - 1) as u32);
    let total = two.pow((n * g) as u32);
    let mut per_split = Vec::new();
    for n1 in 1..n {
        let n2 = n - n1;
        let e = ring.growth(n1) + ring.growth(n2);
        per_split.push((n1, n2, two.pow(e as u32)));
    }
    BoundsReport {
        degree: n,
        growth: g,
        per_split,
        two_factor,
        two_factor_proof,
        total,
    }
}

fn combine<K: Field>(
    ring: &Arc<GAlgebra<K>>,
    basis: &[Mono],
    coords: &[K::Elem],
) -> PbwPoly<K> {
    let k = ring.field();
    let mut terms: TermMap<K> = BTreeMap::new();
    for (m, c) in basis.iter().zip(coords.iter()) {
        if !k.is_zero(c) {
            terms.insert(m.clone(), c.clone());
        }
    }
    ring.from_terms(terms)
}

/// Canonical form of a factor pair: scale the left factor monic and fold the
/// scalar into the right factor; the product is unchanged.
pub fn canonical_pair<K: Field>(
    b: &PbwPoly<K>,
    c: &PbwPoly<K>,
) -> (PbwPoly<K>, PbwPoly<K>) {
    let (bm, lead) = b.monic().expect("nonzero left factor");
    (bm, c.scale(&lead))
}

fn validate_target<K: Field>(a: &PbwPoly<K>) -> Result<u64, FactorError> {
    if a.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    if !a.ring().gr_check().admissible {
        return Err(FactorError::InadmissibleRing);
    }
    if a.is_unit() {
        return Err(FactorError::UnitInput);
    }
    Ok(a.weighted_degree().expect("nonzero"))
}

fn solve_split<K: FactorField>(
    sys: &BilinearSystem<K>,
    budget: u64,
) -> Result<(Vec<SolutionVector<K>>, Vec<String>), FactorError> {
    if sys.ring.field().element_count().is_some() {
        Ok((solve_ff(sys, budget)?, Vec::new()))
    } else {
        solve_groebner(sys)
    }
}

/// Enumerate all factorizations `target = b * c` with non-unit factors, up to
/// central units. Every emitted pair is verified by re-multiplication and the
/// counts are checked against the stated bounds.
pub fn factor_two<K: FactorField>(
    a: &PbwPoly<K>,
    budget: u64,
) -> Result<FactorizationSet<K>, FactorError> {
    let degree = validate_target(a)?;
    let ring = a.ring().clone();
    let report = bounds(&ring, degree);
    let mut pairs: Vec<(PbwPoly<K>, PbwPoly<K>)> = Vec::new();
    let mut diagnostics = Vec::new();
    for n1 in 1..degree {
        let n2 = degree - n1;
        let sys = build_system(a, n1, n2)?;
        let (sols, diags) = solve_split(&sys, budget)?;
        diagnostics.extend(diags);
        for sol in sols {
            let b = combine(&ring, &sys.v_basis, &sol.x);
            let c = combine(&ring, &sys.w_basis, &sol.y);
            if b.is_unit() || c.is_unit() || c.is_zero() {
                continue;
            }
            let (bm, cm) = canonical_pair(&b, &c);
            let product = bm.mul(&cm)?;
            if product != *a {
                return Err(FactorError::SoundnessViolation(format!(
                    "pair from split ({}, {}) does not multiply back to the target",
                    n1, n2
                )));
            }
            pairs.push((bm, cm));
        }
    }
    pairs.sort_by(|(b1, c1), (b2, c2)| {
        b1.cmp_canonical(b2).then_with(|| c1.cmp_canonical(c2))
    });
    pairs.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);

    let count = BigUint::from(pairs.len());
    if count > report.two_factor {
        return Err(FactorError::BoundViolation(format!(
            "{} pairs exceed the two-factor bound {}",
            pairs.len(),
            report.two_factor
        )));
    }
    let split_sum: BigUint = report
        .per_split
        .iter()
        .map(|(_, _, b)| b.clone())
        .fold(BigUint::from(0u32), |acc, b| acc + b);
    if !report.per_split.is_empty() && count > split_sum {
        return Err(FactorError::BoundViolation(format!(
            "{} pairs exceed the per-split sum {}",
            pairs.len(),
            split_sum
        )));
    }
    let exhaustive = diagnostics.is_empty();
    Ok(FactorizationSet {
        target: a.clone(),
        pairs,
        chains: Vec::new(),
        exhaustive,
        diagnostics,
        bounds: report,
    })
}

/// Irreducibility verdict; `field_relative` marks elements irreducible over
/// the base field while non-rational solver branches were pruned (they may
/// factor over an extension).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    pub field_relative: bool,
}

pub fn is_irreducible<K: FactorField>(
    a: &PbwPoly<K>,
    budget: u64,
) -> Result<IrreducibilityReport, FactorError> {
    let fs = factor_two(a, budget)?;
    Ok(IrreducibilityReport {
        irreducible: fs.pairs.is_empty(),
        field_relative: fs.pairs.is_empty() && !fs.exhaustive,
    })
}

/// All maximal chains of irreducible factors multiplying to `target`,
/// obtained by recursing on both factors of every two-factor split. Chains
/// are deduplicated up to central-unit rescaling with unit product.
pub fn factor_all<K: FactorField>(
    a: &PbwPoly<K>,
    budget: u64,
) -> Result<FactorizationSet<K>, FactorError> {
    let degree = validate_target(a)?;
    let ring = a.ring().clone();
    let mut memo: HashMap<PbwPoly<K>, Vec<Vec<PbwPoly<K>>>> = HashMap::new();
    let mut all_exhaustive = true;
    let mut diagnostics = Vec::new();
    let chains = chains_rec(a, budget, &mut memo, &mut all_exhaustive, &mut diagnostics)?;

    let mut canonical: Vec<Vec<PbwPoly<K>>> = chains
        .into_iter()
        .map(|ch| canonicalize_chain(&ch))
        .collect();
    canonical.sort_by(|x, y| cmp_chains(x, y));
    canonical.dedup();
    for ch in &canonical {
        let mut prod = ring.one();
        for f in ch {
            prod = prod.mul(f)?;
        }
        if prod != *a {
            return Err(FactorError::SoundnessViolation(
                "chain does not multiply back to the target".into(),
            ));
        }
    }
    let top = factor_two(a, budget)?;
    let report = top.bounds.clone();
    let count = BigUint::from(canonical.len());
    if count > report.total {
        return Err(FactorError::BoundViolation(format!(
            "{} chains exceed the total bound {}",
            canonical.len(),
            report.total
        )));
    }
    debug_assert!(degree >= 1);
    let exhaustive = all_exhaustive && top.exhaustive;
    diagnostics.extend(top.diagnostics.iter().cloned());
    diagnostics.sort();
    diagnostics.dedup();
    Ok(FactorizationSet {
        target: a.clone(),
        pairs: top.pairs,
        chains: canonical,
        exhaustive,
        diagnostics,
        bounds: report,
    })
}

fn chains_rec<K: FactorField>(
    f: &PbwPoly<K>,
    budget: u64,
    memo: &mut HashMap<PbwPoly<K>, Vec<Vec<PbwPoly<K>>>>,
    all_exhaustive: &mut bool,
    diagnostics: &mut Vec<String>,
) -> Result<Vec<Vec<PbwPoly<K>>>, FactorError> {
    if let Some(hit) = memo.get(f) {
        return Ok(hit.clone());
    }
    let fs = factor_two(f, budget)?;
    if !fs.exhaustive {
        *all_exhaustive = false;
        diagnostics.extend(fs.diagnostics.iter().cloned());
    }
    let result: Vec<Vec<PbwPoly<K>>> = if fs.pairs.is_empty() {
        vec![vec![f.clone()]]
    } else {
        let mut out = Vec::new();
        for (b, c) in &fs.pairs {
            let left = chains_rec(b, budget, memo, all_exhaustive, diagnostics)?;
            let right = chains_rec(c, budget, memo, all_exhaustive, diagnostics)?;
            for lc in &left {
                for rc in &right {
                    let mut chain = lc.clone();
                    chain.extend(rc.iter().cloned());
                    out.push(chain);
                }
            }
        }
        out
    };
    memo.insert(f.clone(), result.clone());
    Ok(result)
}

/// Scale every factor monic and fold the accumulated scalar into the last
/// factor; the ordered product is unchanged because the scalars are central.
fn canonicalize_chain<K: Field>(chain: &[PbwPoly<K>]) -> Vec<PbwPoly<K>> {
    let k = chain[0].ring().field().clone();
    let mut lambda = k.one();
    let mut out: Vec<PbwPoly<K>> = Vec::with_capacity(chain.len());
    for f in chain {
        let (m, lead) = f.monic().expect("chain factors are nonzero");
        lambda = k.mul(&lambda, &lead);
        out.push(m);
    }
    if let Some(last) = out.last_mut() {
        *last = last.scale(&lambda);
    }
    out
}

fn cmp_chains<K: Field>(a: &[PbwPoly<K>], b: &[PbwPoly<K>]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.iter().zip(b.iter()) {
            let o = x.cmp_canonical(y);
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{rat, Rationals};
    use crate::field::PrimeField;
    use crate::pbw::builtins::{polynomial, weyl};

    #[test]
    fn build_system_weyl_split_1_1() {
        let w = weyl(Rationals, 1).unwrap();
        let x = w.gen(0);
        let d = w.gen(1);
        let xd = x.mul(&d).unwrap();
        let sys = build_system(&xd, 1, 1).unwrap();
        assert_eq!(sys.v_basis.len(), 3);
        assert_eq!(sys.w_basis.len(), 3);
        assert_eq!(sys.u_basis.len(), 6);
        // gamma for (d, x): d*x = x*d + 1 hits two basis slots
        let di = sys
            .v_basis
            .iter()
            .position(|m| *m == Mono::gen(2, 1))
            .unwrap();
        let xi = sys
            .w_basis
            .iter()
            .position(|m| *m == Mono::gen(2, 0))
            .unwrap();
        assert_eq!(sys.gamma[di][xi].len(), 2);
        // alpha has exactly one nonzero slot (at x*d), and it is 1
        let nonzero: Vec<usize> = sys
            .alpha
            .iter()
            .enumerate()
            .filter(|(_, c)| !Rationals.is_zero(c))
            .map(|(l, _)| l)
            .collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(sys.u_basis[nonzero[0]], Mono(smallvec::smallvec![1, 1]));
        // degree precondition
        let too_big = x.pow(3).unwrap();
        assert!(matches!(
            build_system(&too_big, 1, 1),
            Err(FactorError::BadSplit(_))
        ));
    }

    #[test]
    fn factor_xd_over_q() {
        let w = weyl(Rationals, 1).unwrap();
        let x = w.gen(0);
        let d = w.gen(1);
        let xd = x.mul(&d).unwrap();
        let fs = factor_two(&xd, DEFAULT_BUDGET).unwrap();
        assert!(fs.exhaustive);
        assert_eq!(fs.pairs, vec![(x.clone(), d.clone())]);
    }

    #[test]
    fn factor_dx_over_q() {
        let w = weyl(Rationals, 1).unwrap();
        let x = w.gen(0);
        let d = w.gen(1);
        let dx = d.mul(&x).unwrap(); // x*d + 1
        let fs = factor_two(&dx, DEFAULT_BUDGET).unwrap();
        assert_eq!(fs.pairs, vec![(d.clone(), x.clone())]);
    }

    #[test]
    fn factor_d_squared_over_q() {
        let w = weyl(Rationals, 1).unwrap();
        let d = w.gen(1);
        let d2 = d.pow(2).unwrap();
        let fs = factor_two(&d2, DEFAULT_BUDGET).unwrap();
        assert_eq!(fs.pairs, vec![(d.clone(), d.clone())]);
    }

    #[test]
    fn irreducibles() {
        let w = weyl(Rationals, 1).unwrap();
        let d = w.gen(1);
        let rep = is_irreducible(&d, DEFAULT_BUDGET).unwrap();
        assert!(rep.irreducible && !rep.field_relative);
        // x^2 + 1 in QQ[x] is irreducible with a field-relative qualifier
        let p1 = polynomial(Rationals, 1).unwrap();
        let x = p1.gen(0);
        let f = x.pow(2).unwrap().add(&p1.one()).unwrap();
        let rep = is_irreducible(&f, DEFAULT_BUDGET).unwrap();
        assert!(rep.irreducible && rep.field_relative);
        // x*d is reducible
        let xd = w.gen(0).mul(&d).unwrap();
        assert!(!is_irreducible(&xd, DEFAULT_BUDGET).unwrap().irreducible);
    }

    #[test]
    fn factor_all_xdx() {
        let w = weyl(Rationals, 1).unwrap();
        let x = w.gen(0);
        let d = w.gen(1);
        let xdx = x.mul(&d).unwrap().mul(&x).unwrap();
        let fs = factor_all(&xdx, DEFAULT_BUDGET).unwrap();
        assert!(fs.exhaustive);
        assert_eq!(fs.chains, vec![vec![x.clone(), d.clone(), x.clone()]]);
        // two-factor pairs: (x, d*x form) and (x*d, x)
        assert_eq!(fs.pairs.len(), 2);
    }

    #[test]
    fn unit_and_zero_rejected() {
        let w = weyl(Rationals, 1).unwrap();
        assert_eq!(
            factor_two(&w.scalar(rat(5, 1)), DEFAULT_BUDGET).unwrap_err(),
            FactorError::UnitInput
        );
        assert_eq!(
            factor_two(&w.zero(), DEFAULT_BUDGET).unwrap_err(),
            FactorError::ZeroInput
        );
        assert_eq!(
            factor_all(&w.one(), DEFAULT_BUDGET).unwrap_err(),
            FactorError::UnitInput
        );
    }

    #[test]
    fn ff_backend_x_squared_f2() {
        let f2 = PrimeField::new(2).unwrap();
        let p1 = polynomial(f2, 1).unwrap();
        let x = p1.gen(0);
        let x2 = x.pow(2).unwrap();
        let fs = factor_two(&x2, DEFAULT_BUDGET).unwrap();
        assert!(fs.exhaustive);
        assert_eq!(fs.pairs, vec![(x.clone(), x.clone())]);
    }

    #[test]
    fn ff_backend_xd_f3() {
        let f3 = PrimeField::new(3).unwrap();
        let w = weyl(f3, 1).unwrap();
        let x = w.gen(0);
        let d = w.gen(1);
        let xd = x.mul(&d).unwrap();
        let fs = factor_two(&xd, DEFAULT_BUDGET).unwrap();
        assert_eq!(fs.pairs, vec![(x.clone(), d.clone())]);
    }

    #[test]
    fn bounds_weyl_degree_two() {
        let w = weyl(Rationals, 1).unwrap();
        let b = bounds(&w, 2);
        assert_eq!(b.growth, 6);
        assert_eq!(b.two_factor, BigUint::from(2048u32));
        assert_eq!(b.total, BigUint::from(4096u32));
        assert_eq!(b.per_split, vec![(1, 1, BigUint::from(64u32))]);
        assert_eq!(b.two_factor_proof, BigUint::from(1024u32));
    }
}
