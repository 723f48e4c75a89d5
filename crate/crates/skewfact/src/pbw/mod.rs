//! Presentations of PBW algebras (generators with straightening relations
//! `x_j x_i = c_ij x_i x_j + d_ij` for i < j), sparse polynomials on the PBW
//! basis, weighted filtrations, growth counting and the associated-graded
//! admissibility check.

pub mod builtins;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use smallvec::SmallVec;

use crate::field::Field;

/// Exponent vector of a PBW monomial; always exactly `n` entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mono(pub SmallVec<[u32; 6]>);

impl Mono {
    pub fn unit(n: usize) -> Self {
        Mono(SmallVec::from_elem(0, n))
    }

    pub fn gen(n: usize, i: usize) -> Self {
        let mut m = Self::unit(n);
        m.0[i] = 1;
        m
    }

    pub fn gen_pow(n: usize, i: usize, e: u32) -> Self {
        let mut m = Self::unit(n);
        m.0[i] = e;
        m
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn product(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Highest generator index with nonzero exponent.
    fn max_index(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    /// Lowest generator index with nonzero exponent.
    fn min_index(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    fn without(&self, idx: usize) -> Mono {
        let mut m = self.clone();
        m.0[idx] = 0;
        m
    }
}

/// Sparse coefficient map on PBW monomials (no zero entries stored).
pub type TermMap<K> = BTreeMap<Mono, <K as Field>::Elem>;

fn term_map_add<K: Field>(k: &K, map: &mut TermMap<K>, mono: Mono, coeff: &K::Elem) {
    if k.is_zero(coeff) {
        return;
    }
    match map.get_mut(&mono) {
        Some(c) => {
            let s = k.add(c, coeff);
            if k.is_zero(&s) {
                map.remove(&mono);
            } else {
                *c = s;
            }
        }
        None => {
            map.insert(mono, coeff.clone());
        }
    }
}

/// Errors from PBW arithmetic and presentation handling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PbwError {
    RingMismatch,
    ZeroInput,
    BadParameter(String),
    BadPresentation(String),
}

impl fmt::Display for PbwError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PbwError::RingMismatch => write!(f, "operands belong to different rings"),
            PbwError::ZeroInput => write!(f, "zero input"),
            PbwError::BadParameter(s) => write!(f, "bad parameter: {}", s),
            PbwError::BadPresentation(s) => write!(f, "bad presentation: {}", s),
        }
    }
}

impl std::error::Error for PbwError {}

/// One straightening relation `x_j x_i = c * x_i x_j + d` for a pair i < j.
#[derive(Clone, Debug)]
pub struct Relation<K: Field> {
    pub c: K::Elem,
    pub d: TermMap<K>,
}

/// A PBW algebra presentation: generators, straightening relations, weights.
///
/// `graded` marks presentations registered as honestly graded (homogeneous
/// relations, e.g. the integration operator algebra); the admissibility check
/// then requires tails of weighted degree exactly `w_i + w_j` instead of
/// strictly smaller.
pub struct GAlgebra<K: Field> {
    field: K,
    names: Vec<String>,
    weights: Vec<u64>,
    graded: bool,
    /// Relations indexed by `pair_index(i, j)` for i < j.
    relations: Vec<Relation<K>>,
    /// Normal forms of x_j^a * x_i^b keyed by (j, a, i, b), j > i.
    swap_cache: RwLock<HashMap<(usize, u32, usize, u32), TermMap<K>>>,
}

impl<K: Field> fmt::Debug for GAlgebra<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GAlgebra")
            .field("field", &self.field.name())
            .field("names", &self.names)
            .field("weights", &self.weights)
            .field("graded", &self.graded)
            .finish()
    }
}

impl<K: Field> PartialEq for GAlgebra<K> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.names == other.names
            && self.weights == other.weights
            && self.graded == other.graded
            && self.relations.len() == other.relations.len()
            && self
                .relations
                .iter()
                .zip(other.relations.iter())
                .all(|(a, b)| a.c == b.c && a.d == b.d)
    }
}

fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// Rewriting fuel per top-level monomial product. Exhaustion means the
/// straightening system is not terminating for this presentation.
const REWRITE_FUEL: u64 = 50_000_000;

impl<K: Field> GAlgebra<K> {
    /// Build a presentation. `relations` lists (i, j, c, d) with 0-based
    /// i < j; omitted pairs default to commuting (c = 1, d = 0).
    pub fn new(
        field: K,
        names: Vec<String>,
        weights: Vec<u64>,
        relations: Vec<(usize, usize, K::Elem, TermMap<K>)>,
        graded: bool,
    ) -> Result<Arc<Self>, PbwError> {
        let n = names.len();
        if n == 0 {
            return Err(PbwError::BadPresentation("no generators".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            if !seen.insert(name.clone()) {
                return Err(PbwError::BadPresentation(format!(
                    "duplicate generator name {:?}",
                    name
                )));
            }
        }
        if weights.len() != n {
            return Err(PbwError::BadPresentation("weights length mismatch".into()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(PbwError::BadPresentation(
                "weights must be strictly positive".into(),
            ));
        }
        let mut rels: Vec<Relation<K>> = (0..n * (n - 1) / 2)
            .map(|_| Relation {
                c: field.one(),
                d: TermMap::<K>::new(),
            })
            .collect();
        for (i, j, c, d) in relations {
            if i >= j || j >= n {
                return Err(PbwError::BadPresentation(format!(
                    "relation indices ({}, {}) out of range",
                    i, j
                )));
            }
            if field.is_zero(&c) {
                return Err(PbwError::BadPresentation(format!(
                    "c_{{{},{}}} must be nonzero",
                    i + 1,
                    j + 1
                )));
            }
            for mono in d.keys() {
                if mono.0.len() != n {
                    return Err(PbwError::BadPresentation(
                        "tail monomial arity mismatch".into(),
                    ));
                }
            }
            rels[pair_index(i, j)] = Relation { c, d };
        }
        Ok(Arc::new(GAlgebra {
            field,
            names,
            weights,
            graded,
            relations: rels,
            swap_cache: RwLock::new(HashMap::new()),
        }))
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn relation(&self, i: usize, j: usize) -> &Relation<K> {
        &self.relations[pair_index(i, j)]
    }

    pub fn wdeg_mono(&self, m: &Mono) -> u64 {
        self.wdeg_mono_with(&self.weights, m)
    }

    pub fn wdeg_mono_with(&self, weights: &[u64], m: &Mono) -> u64 {
        m.0.iter()
            .zip(weights.iter())
            .map(|(&e, &w)| e as u64 * w)
            .sum()
    }

    /// Weighted-degree-lexicographic order: compare weighted degrees, ties
    /// broken lexicographically by generator index.
    pub fn cmp_mono(&self, a: &Mono, b: &Mono) -> Ordering {
        self.wdeg_mono(a)
            .cmp(&self.wdeg_mono(b))
            .then_with(|| a.0.cmp(&b.0))
    }

    /// Normal form of the product of two PBW monomials.
    pub fn mul_mono(&self, a: &Mono, b: &Mono) -> TermMap<K> {
        let mut fuel = REWRITE_FUEL;
        self.mul_mono_inner(a, b, &mut fuel)
    }

    fn mul_mono_inner(&self, a: &Mono, b: &Mono, fuel: &mut u64) -> TermMap<K> {
        assert!(
            *fuel > 0,
            "straightening did not terminate; presentation is not admissible"
        );
        *fuel -= 1;
        let k = &self.field;
        let (h, l) = match (a.max_index(), b.min_index()) {
            (Some(h), Some(l)) => (h, l),
            _ => {
                let mut out = TermMap::<K>::new();
                out.insert(a.product(b), k.one());
                return out;
            }
        };
        if h <= l {
            let mut out = TermMap::<K>::new();
            out.insert(a.product(b), k.one());
            return out;
        }
        let core = self.swap_pow(h, a.0[h], l, b.0[l], fuel);
        let a_rest = a.without(h);
        let b_rest = b.without(l);
        let mut out = TermMap::<K>::new();
        for (m, c) in &core {
            let left = self.mul_mono_inner(&a_rest, m, fuel);
            for (m2, c2) in &left {
                let right = self.mul_mono_inner(m2, &b_rest, fuel);
                let cc = k.mul(c, c2);
                for (m3, c3) in &right {
                    term_map_add::<K>(k, &mut out, m3.clone(), &k.mul(&cc, c3));
                }
            }
        }
        out
    }

    /// Memoized normal form of x_j^a * x_i^b for j > i.
    fn swap_pow(&self, j: usize, a: u32, i: usize, b: u32, fuel: &mut u64) -> TermMap<K> {
        debug_assert!(j > i && a >= 1 && b >= 1);
        let key = (j, a, i, b);
        if let Some(hit) = self.swap_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let k = &self.field;
        let n = self.ngens();
        let res: TermMap<K> = if a == 1 && b == 1 {
            let rel = self.relation(i, j);
            let mut out = rel.d.clone();
            let mut m = Mono::unit(n);
            m.0[i] = 1;
            m.0[j] = 1;
            term_map_add::<K>(k, &mut out, m, &rel.c);
            out
        } else if b == 1 {
            // x_j^a x_i = x_j * (x_j^{a-1} x_i)
            let inner = self.swap_pow(j, a - 1, i, 1, fuel);
            let g = Mono::gen(n, j);
            let mut out = TermMap::<K>::new();
            for (m, c) in &inner {
                for (m2, c2) in self.mul_mono_inner(&g, m, fuel) {
                    term_map_add::<K>(k, &mut out, m2, &k.mul(c, &c2));
                }
            }
            out
        } else {
            // x_j^a x_i^b = (x_j^a x_i) * x_i^{b-1}
            let inner = self.swap_pow(j, a, i, 1, fuel);
            let rest = Mono::gen_pow(n, i, b - 1);
            let mut out = TermMap::<K>::new();
            for (m, c) in &inner {
                for (m2, c2) in self.mul_mono_inner(m, &rest, fuel) {
                    term_map_add::<K>(k, &mut out, m2, &k.mul(c, &c2));
                }
            }
            out
        };
        self.swap_cache.write().unwrap().insert(key, res.clone());
        res
    }

    /// Number of PBW monomials of weighted degree <= n (dimension of the
    /// filtration level V_n).
    pub fn growth(&self, n: u64) -> u64 {
        fn count(weights: &[u64], idx: usize, rem: u64) -> u64 {
            if idx == weights.len() {
                return 1;
            }
            let mut total = 0u64;
            let mut used = 0u64;
            while used <= rem {
                total = total
                    .checked_add(count(weights, idx + 1, rem - used))
                    .expect("growth overflow");
                used += weights[idx];
            }
            total
        }
        count(&self.weights, 0, n)
    }

    /// All PBW monomials of weighted degree <= n, ascending in the canonical
    /// monomial order.
    pub fn monomials_up_to(&self, n: u64) -> Vec<Mono> {
        let ngens = self.ngens();
        let mut out = Vec::new();
        let mut current = Mono::unit(ngens);
        fn rec<K: Field>(
            ring: &GAlgebra<K>,
            idx: usize,
            rem: u64,
            current: &mut Mono,
            out: &mut Vec<Mono>,
        ) {
            if idx == ring.ngens() {
                out.push(current.clone());
                return;
            }
            let w = ring.weights[idx];
            let mut e = 0u32;
            loop {
                let used = e as u64 * w;
                if used > rem {
                    break;
                }
                current.0[idx] = e;
                rec(ring, idx + 1, rem - used, current, out);
                e += 1;
            }
            current.0[idx] = 0;
        }
        rec(self, 0, n, &mut current, &mut out);
        out.sort_by(|a, b| self.cmp_mono(a, b));
        out
    }

    /// Admissibility of the weighted filtration: every tail monomial must
    /// have weighted degree strictly below w_i + w_j (exactly equal for
    /// presentations registered as graded). When the check passes, the
    /// associated graded algebra is the quantum affine space on the c_ij and
    /// in particular a domain.
    pub fn gr_check(&self) -> GrReport {
        self.gr_check_with(&self.weights, self.graded)
    }

    pub fn gr_check_with(&self, weights: &[u64], graded: bool) -> GrReport {
        let mut violations = Vec::new();
        let n = self.ngens();
        for j in 1..n {
            for i in 0..j {
                let bound = weights[i] + weights[j];
                for mono in self.relations[pair_index(i, j)].d.keys() {
                    let deg = self.wdeg_mono_with(weights, mono);
                    let ok = if graded { deg == bound } else { deg < bound };
                    if !ok {
                        violations.push(GrViolation {
                            i,
                            j,
                            monomial: mono.clone(),
                            degree: deg,
                            bound,
                        });
                    }
                }
            }
        }
        GrReport {
            admissible: violations.is_empty(),
            violations,
        }
    }

    /// First weight vector in lexicographic order over [1, max_weight]^n for
    /// which the strict filtered check passes.
    pub fn find_weights(&self, max_weight: u64) -> Option<Vec<u64>> {
        assert!(max_weight >= 1);
        let n = self.ngens();
        let mut w = vec![1u64; n];
        loop {
            if self.gr_check_with(&w, false).admissible {
                return Some(w);
            }
            // lexicographic increment
            let mut idx = n;
            loop {
                if idx == 0 {
                    return None;
                }
                idx -= 1;
                if w[idx] < max_weight {
                    w[idx] += 1;
                    for v in w[idx + 1..].iter_mut() {
                        *v = 1;
                    }
                    break;
                }
            }
        }
    }

    // ---- element constructors ----

    pub fn zero(self: &Arc<Self>) -> PbwPoly<K> {
        PbwPoly {
            ring: self.clone(),
            terms: TermMap::<K>::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> PbwPoly<K> {
        self.scalar(self.field.one())
    }

    pub fn scalar(self: &Arc<Self>, c: K::Elem) -> PbwPoly<K> {
        let mut terms = TermMap::<K>::new();
        if !self.field.is_zero(&c) {
            terms.insert(Mono::unit(self.ngens()), c);
        }
        PbwPoly {
            ring: self.clone(),
            terms,
        }
    }

    pub fn gen(self: &Arc<Self>, i: usize) -> PbwPoly<K> {
        let mut terms = TermMap::<K>::new();
        terms.insert(Mono::gen(self.ngens(), i), self.field.one());
        PbwPoly {
            ring: self.clone(),
            terms,
        }
    }

    pub fn monomial(self: &Arc<Self>, m: Mono, c: K::Elem) -> PbwPoly<K> {
        let mut terms = TermMap::<K>::new();
        if !self.field.is_zero(&c) {
            terms.insert(m, c);
        }
        PbwPoly {
            ring: self.clone(),
            terms,
        }
    }

    pub fn from_terms(self: &Arc<Self>, terms: TermMap<K>) -> PbwPoly<K> {
        let filtered = terms
            .into_iter()
            .filter(|(_, c)| !self.field.is_zero(c))
            .collect();
        PbwPoly {
            ring: self.clone(),
            terms: filtered,
        }
    }
}

/// A violation of the filtration condition: tail monomial of d_ij too large.
#[derive(Clone, Debug)]
pub struct GrViolation {
    pub i: usize,
    pub j: usize,
    pub monomial: Mono,
    pub degree: u64,
    pub bound: u64,
}

#[derive(Clone, Debug)]
pub struct GrReport {
    pub admissible: bool,
    pub violations: Vec<GrViolation>,
}

/// Sparse polynomial on the PBW basis of its ring.
#[derive(Clone, Debug)]
pub struct PbwPoly<K: Field> {
    ring: Arc<GAlgebra<K>>,
    terms: TermMap<K>,
}

impl<K: Field> PartialEq for PbwPoly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.same_ring(other)
    }
}

impl<K: Field> Eq for PbwPoly<K> {}

impl<K: Field> std::hash::Hash for PbwPoly<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl<K: Field> PbwPoly<K> {
    pub fn ring(&self) -> &Arc<GAlgebra<K>> {
        &self.ring
    }

    pub fn terms(&self) -> &TermMap<K> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_ring(&self, other: &Self) -> Result<(), PbwError> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(PbwError::RingMismatch)
        }
    }

    pub fn coeff_of(&self, m: &Mono) -> K::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PbwError> {
        self.check_ring(other)?;
        let k = &self.ring.field;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            term_map_add::<K>(k, &mut terms, m.clone(), c);
        }
        Ok(PbwPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PbwError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let k = &self.ring.field;
        PbwPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), k.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let k = &self.ring.field;
        if k.is_zero(c) {
            return PbwPoly {
                ring: self.ring.clone(),
                terms: TermMap::<K>::new(),
            };
        }
        PbwPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, co)| (m.clone(), k.mul(co, c)))
                .collect(),
        }
    }

    /// Normal-form product (rewrites through the straightening relations).
    pub fn mul(&self, other: &Self) -> Result<Self, PbwError> {
        self.check_ring(other)?;
        let k = &self.ring.field;
        let mut terms = TermMap::<K>::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = self.ring.mul_mono(ma, mb);
                let c = k.mul(ca, cb);
                for (m, cm) in prod {
                    term_map_add::<K>(k, &mut terms, m, &k.mul(&c, &cm));
                }
            }
        }
        Ok(PbwPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn pow(&self, e: u32) -> Result<Self, PbwError> {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Weighted degree under the ring weights; None encodes deg(0) = -infinity.
    pub fn weighted_degree(&self) -> Option<u64> {
        self.weighted_degree_with(self.ring.weights())
    }

    pub fn weighted_degree_with(&self, weights: &[u64]) -> Option<u64> {
        self.terms
            .keys()
            .map(|m| self.ring.wdeg_mono_with(weights, m))
            .max()
    }

    /// Largest monomial in the canonical order.
    pub fn leading_mono(&self) -> Option<&Mono> {
        self.terms.keys().max_by(|a, b| self.ring.cmp_mono(a, b))
    }

    pub fn leading_coeff(&self) -> Option<K::Elem> {
        self.leading_mono().map(|m| self.terms[m].clone())
    }

    /// Sum of the terms of maximal weighted degree.
    pub fn leading_form(&self) -> Result<Self, PbwError> {
        self.leading_form_with(&self.ring.weights().to_vec())
    }

    pub fn leading_form_with(&self, weights: &[u64]) -> Result<Self, PbwError> {
        let top = self
            .weighted_degree_with(weights)
            .ok_or(PbwError::ZeroInput)?;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| self.ring.wdeg_mono_with(weights, m) == top)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Ok(PbwPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Units of an admissible ring are exactly the nonzero scalars.
    pub fn is_unit(&self) -> bool {
        self.weighted_degree() == Some(0)
    }

    /// Scale so the leading coefficient is one; returns the original leading
    /// coefficient alongside.
    pub fn monic(&self) -> Option<(Self, K::Elem)> {
        let lc = self.leading_coeff()?;
        let k = &self.ring.field;
        let inv = k.inv(&lc).expect("leading coefficient nonzero");
        Some((self.scale(&inv), lc))
    }

    /// Deterministic order on polynomials of one ring.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        let k = &self.ring.field;
        let mut a: Vec<_> = self.terms.iter().collect();
        let mut b: Vec<_> = other.terms.iter().collect();
        a.sort_by(|x, y| self.ring.cmp_mono(x.0, y.0));
        b.sort_by(|x, y| self.ring.cmp_mono(x.0, y.0));
        for ((ma, ca), (mb, cb)) in a.iter().rev().zip(b.iter().rev()) {
            let o = self
                .ring
                .cmp_mono(ma, mb)
                .then_with(|| k.cmp_elems(ca, cb));
            if o != Ordering::Equal {
                return o;
            }
        }
        a.len().cmp(&b.len())
    }
}

/// Reference multiplication by naive word rewriting, used to cross-check the
/// memoized normal-form algorithm.
pub fn naive_word_mul<K: Field>(ring: &Arc<GAlgebra<K>>, a: &Mono, b: &Mono) -> TermMap<K> {
    let k = ring.field();
    // letters of a then b
    let mut word: Vec<usize> = Vec::new();
    for (i, &e) in a.0.iter().enumerate() {
        word.extend(std::iter::repeat(i).take(e as usize));
    }
    for (i, &e) in b.0.iter().enumerate() {
        word.extend(std::iter::repeat(i).take(e as usize));
    }
    let mut out = TermMap::<K>::new();
    let mut queue: Vec<(Vec<usize>, K::Elem)> = vec![(word, k.one())];
    while let Some((w, coeff)) = queue.pop() {
        match w.windows(2).position(|p| p[0] > p[1]) {
            None => {
                let mut m = Mono::unit(ring.ngens());
                for &g in &w {
                    m.0[g] += 1;
                }
                term_map_add::<K>(k, &mut out, m, &coeff);
            }
            Some(pos) => {
                let (j, i) = (w[pos], w[pos + 1]);
                let rel = ring.relation(i, j);
                // swapped word scaled by c_ij
                let mut swapped = w.clone();
                swapped.swap(pos, pos + 1);
                queue.push((swapped, k.mul(&coeff, &rel.c)));
                // tail words
                for (m, c) in &rel.d {
                    let mut tail_word: Vec<usize> = w[..pos].to_vec();
                    for (g, &e) in m.0.iter().enumerate() {
                        tail_word.extend(std::iter::repeat(g).take(e as usize));
                    }
                    tail_word.extend_from_slice(&w[pos + 2..]);
                    queue.push((tail_word, k.mul(&coeff, c)));
                }
            }
        }
    }
    out
}

/// Random sparse element of V_max_deg with small coefficients, for property
/// tests and sweeps.
pub fn sample_poly<K: Field>(
    ring: &Arc<GAlgebra<K>>,
    max_deg: u64,
    max_terms: usize,
    rng: &mut dyn rand::RngCore,
) -> PbwPoly<K> {
    let basis = ring.monomials_up_to(max_deg);
    let k = ring.field().clone();
    let nterms = 1 + (rng.next_u32() as usize) % max_terms;
    let mut terms = TermMap::<K>::new();
    for _ in 0..nterms {
        let m = basis[(rng.next_u32() as usize) % basis.len()].clone();
        let c = k.sample(rng);
        term_map_add::<K>(&k, &mut terms, m, &c);
    }
    ring.from_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::builtins::*;
    use super::*;
    use crate::field::rational::{rat, Rationals};
    use crate::field::PrimeField;
    use rand::{RngCore, SeedableRng};

    #[test]
    fn weyl_commutator() {
        let w = weyl(Rationals, 1).unwrap();
        let x = w.gen(0);
        let d = w.gen(1);
        // d*x = x*d + 1
        let dx = d.mul(&x).unwrap();
        let expect = x.mul(&d).unwrap().add(&w.one()).unwrap();
        assert_eq!(dx, expect);
        // d^2 * x = x*d^2 + 2d
        let d2x = d.mul(&d).unwrap().mul(&x).unwrap();
        let expect2 = x
            .mul(&d.pow(2).unwrap())
            .unwrap()
            .add(&d.scale(&rat(2, 1)))
            .unwrap();
        assert_eq!(d2x, expect2);
        // 1 * f = f
        assert_eq!(w.one().mul(&dx).unwrap(), dx);
    }

    #[test]
    fn naive_oracle_agrees() {
        let rings: Vec<Arc<GAlgebra<Rationals>>> = vec![
            weyl(Rationals, 1).unwrap(),
            shift(Rationals).unwrap(),
            integration(Rationals).unwrap(),
            qshift(Rationals, rat(2, 1)).unwrap(),
        ];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for ring in &rings {
            let basis = ring.monomials_up_to(3);
            for _ in 0..40 {
                let a = &basis[(rng.next_u32() as usize) % basis.len()];
                let b = &basis[(rng.next_u32() as usize) % basis.len()];
                assert_eq!(
                    ring.mul_mono(a, b),
                    naive_word_mul(ring, a, b),
                    "mismatch on {:?} * {:?}",
                    a,
                    b
                );
            }
        }
    }

    #[test]
    fn growth_weyl_matches_formula() {
        let w = weyl(Rationals, 1).unwrap();
        assert_eq!(w.growth(2), 6);
        assert_eq!(w.growth(0), 1);
        for n in 0..=10u64 {
            assert_eq!(w.growth(n), (n + 1) * (n + 2) / 2);
            assert_eq!(w.monomials_up_to(n).len() as u64, w.growth(n));
        }
        let p2 = polynomial(Rationals, 2).unwrap();
        assert_eq!(p2.growth(3), 10);
    }

    #[test]
    fn weighted_degree_and_leading_form() {
        let w = weyl(Rationals, 1).unwrap();
        let x = w.gen(0);
        let d = w.gen(1);
        let xd = x.mul(&d).unwrap();
        assert_eq!(xd.weighted_degree(), Some(2));
        assert_eq!(w.zero().weighted_degree(), None);
        // x^2*d + x with weights (2,1) has degree 5
        let f = x.pow(2).unwrap().mul(&d).unwrap().add(&x).unwrap();
        assert_eq!(f.weighted_degree_with(&[2, 1]), Some(5));
        // leading form of x*d + 1
        let g = xd.add(&w.one()).unwrap();
        assert_eq!(g.leading_form().unwrap(), xd);
        // homogeneous input is its own leading form
        let h = x.add(&d).unwrap();
        assert_eq!(h.leading_form().unwrap(), h);
        // x^2 + x*d + d with weights (1,2): top stratum is x*d (degree 3)
        let mix = x
            .pow(2)
            .unwrap()
            .add(&xd)
            .unwrap()
            .add(&d)
            .unwrap();
        assert_eq!(mix.leading_form_with(&[1, 2]).unwrap(), xd);
    }

    #[test]
    fn unit_detection() {
        let w = weyl(Rationals, 1).unwrap();
        assert!(w.scalar(rat(5, 1)).is_unit());
        assert!(!w.gen(0).is_unit());
        assert!(!w.zero().is_unit());
    }

    #[test]
    fn gr_check_discriminates() {
        let w = weyl(Rationals, 1).unwrap();
        assert!(w.gr_check().admissible);
        let s = shift(Rationals).unwrap();
        assert!(s.gr_check().admissible);
        assert_eq!(s.find_weights(2), Some(vec![1, 1]));
        let bad = pbw_counterexample(Rationals).unwrap();
        let report = bad.gr_check();
        assert!(!report.admissible);
        assert_eq!(report.violations.len(), 1);
        assert_eq!((report.violations[0].i, report.violations[0].j), (0, 1));
        assert_eq!(bad.find_weights(5), None);
        // integration algebra: graded convention at weights (1,1), and the
        // strict filtered search still finds (2,1)
        let int = integration(Rationals).unwrap();
        assert!(int.gr_check().admissible);
        assert_eq!(int.find_weights(2), Some(vec![2, 1]));
    }

    #[test]
    fn quantum_affine_inverse_side() {
        // q_{1,2} = 3 over F_7: stored c_{12} = 3^{-1} = 5
        let f7 = PrimeField::new(7).unwrap();
        let q = quantum_affine(f7, 2, vec![((0, 1), 3)]).unwrap();
        assert_eq!(q.relation(0, 1).c, 5);
        let x1 = q.gen(0);
        let x2 = q.gen(1);
        // x2*x1 = 5*x1*x2
        assert_eq!(
            x2.mul(&x1).unwrap(),
            x1.mul(&x2).unwrap().scale(&5)
        );
    }

    #[test]
    fn ring_mismatch_detected() {
        let w1 = weyl(Rationals, 1).unwrap();
        let s = shift(Rationals).unwrap();
        assert_eq!(
            w1.gen(0).mul(&s.gen(0)).unwrap_err(),
            PbwError::RingMismatch
        );
    }
}
