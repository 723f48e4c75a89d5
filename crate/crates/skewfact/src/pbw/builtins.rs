//! Constructors for the builtin operator algebras.

use std::sync::Arc;

use super::{GAlgebra, Mono, PbwError, TermMap};
use crate::field::Field;

fn gen_names(prefixes: &[&str], n: usize) -> Vec<String> {
    if n == 1 {
        prefixes.iter().map(|p| p.to_string()).collect()
    } else {
        let mut names = Vec::new();
        for p in prefixes {
            for i in 1..=n {
                names.push(format!("{}{}", p, i));
            }
        }
        names
    }
}

/// The n-th Weyl algebra: generators x1..xn, d1..dn with d_i x_i = x_i d_i + 1
/// and all other pairs commuting.
pub fn weyl<K: Field>(field: K, n: usize) -> Result<Arc<GAlgebra<K>>, PbwError> {
    if n == 0 {
        return Err(PbwError::BadParameter("weyl: n must be >= 1".into()));
    }
    let names = gen_names(&["x", "d"], n);
    let ngens = 2 * n;
    let mut rels = Vec::new();
    for i in 0..n {
        let mut d = TermMap::<K>::new();
        d.insert(Mono::unit(ngens), field.one());
        rels.push((i, n + i, field.one(), d));
    }
    GAlgebra::new(field, names, vec![1; ngens], rels, false)
}

/// The first shift algebra: s x = x s + s.
pub fn shift<K: Field>(field: K) -> Result<Arc<GAlgebra<K>>, PbwError> {
    let mut d = TermMap::<K>::new();
    d.insert(Mono::gen(2, 1), field.one());
    let rels = vec![(0, 1, field.one(), d)];
    GAlgebra::new(field, vec!["x".into(), "s".into()], vec![1, 1], rels, false)
}

/// The first q-shift algebra: sq x = q x sq.
pub fn qshift<K: Field>(field: K, q: K::Elem) -> Result<Arc<GAlgebra<K>>, PbwError> {
    if field.is_zero(&q) {
        return Err(PbwError::BadParameter("qshift: q must be nonzero".into()));
    }
    let rels = vec![(0, 1, q, TermMap::<K>::new())];
    GAlgebra::new(field, vec!["x".into(), "sq".into()], vec![1, 1], rels, false)
}

/// The n-th q-Weyl algebra: dq_i x_i = q x_i dq_i + 1, other pairs commuting.
pub fn qweyl<K: Field>(field: K, n: usize, q: K::Elem) -> Result<Arc<GAlgebra<K>>, PbwError> {
    if n == 0 {
        return Err(PbwError::BadParameter("qweyl: n must be >= 1".into()));
    }
    if field.is_zero(&q) {
        return Err(PbwError::BadParameter("qweyl: q must be nonzero".into()));
    }
    let names = gen_names(&["x", "dq"], n);
    let ngens = 2 * n;
    let mut rels = Vec::new();
    for i in 0..n {
        let mut d = TermMap::<K>::new();
        d.insert(Mono::unit(ngens), field.one());
        rels.push((i, n + i, q.clone(), d));
    }
    GAlgebra::new(field, names, vec![1; ngens], rels, false)
}

/// Coordinate ring of quantum affine n-space. `entries` lists q_{i,j} for
/// pairs i < j (0-based); omitted pairs default to 1. The stored relation is
/// x_j x_i = q_{i,j}^{-1} x_i x_j.
pub fn quantum_affine<K: Field>(
    field: K,
    n: usize,
    entries: Vec<((usize, usize), K::Elem)>,
) -> Result<Arc<GAlgebra<K>>, PbwError> {
    if n == 0 {
        return Err(PbwError::BadParameter("qaffine: n must be >= 1".into()));
    }
    let names = gen_names(&["x"], n);
    let mut rels = Vec::new();
    for ((i, j), q) in entries {
        if i >= j || j >= n {
            return Err(PbwError::BadParameter(format!(
                "qaffine: bad pair ({}, {})",
                i + 1,
                j + 1
            )));
        }
        if field.is_zero(&q) {
            return Err(PbwError::BadParameter(
                "qaffine: parameters must be nonzero".into(),
            ));
        }
        let c = field.inv(&q).expect("nonzero");
        rels.push((i, j, c, TermMap::<K>::new()));
    }
    GAlgebra::new(field, names, vec![1; n], rels, false)
}

/// Uniform quantum affine space: q_{i,j} = q for all i < j.
pub fn quantum_affine_uniform<K: Field>(
    field: K,
    n: usize,
    q: K::Elem,
) -> Result<Arc<GAlgebra<K>>, PbwError> {
    let mut entries = Vec::new();
    for j in 1..n {
        for i in 0..j {
            entries.push(((i, j), q.clone()));
        }
    }
    quantum_affine(field, n, entries)
}

/// The integration operator algebra I x = x I - I^2. The relation is
/// homogeneous for deg(x) = deg(I) = 1, so the presentation is registered as
/// graded rather than strictly filtered.
pub fn integration<K: Field>(field: K) -> Result<Arc<GAlgebra<K>>, PbwError> {
    let mut d = TermMap::<K>::new();
    d.insert(Mono::gen_pow(2, 1, 2), field.neg(&field.one()));
    let rels = vec![(0, 1, field.one(), d)];
    GAlgebra::new(field, vec!["x".into(), "I".into()], vec![1, 1], rels, true)
}

/// Commutative polynomial ring on n generators.
pub fn polynomial<K: Field>(field: K, n: usize) -> Result<Arc<GAlgebra<K>>, PbwError> {
    if n == 0 {
        return Err(PbwError::BadParameter("poly: n must be >= 1".into()));
    }
    let names = gen_names(&["x"], n);
    GAlgebra::new(field, names, vec![1; n], Vec::new(), false)
}

/// The three-generator presentation x2 x1 = x1 x2 x3 (x3 central), which has
/// a PBW basis but no admissible weighted filtration.
pub fn pbw_counterexample<K: Field>(field: K) -> Result<Arc<GAlgebra<K>>, PbwError> {
    let mut d = TermMap::<K>::new();
    d.insert(Mono(smallvec::smallvec![1, 1, 1]), field.one());
    let rels = vec![(0, 1, field.one(), d)];
    GAlgebra::new(
        field,
        vec!["x1".into(), "x2".into(), "x3".into()],
        vec![1, 1, 1],
        rels,
        false,
    )
}
