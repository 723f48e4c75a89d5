//! Sparse multivariate polynomials over an exact field, Buchberger's
//! algorithm with the coprimality and chain criteria, and exact solving of
//! zero-dimensional systems by lexicographic elimination and
//! back-substitution.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use smallvec::SmallVec;

use crate::field::poly::Poly;
use crate::field::{Field, FieldError, SolvableField};

pub type MExp = SmallVec<[u32; 8]>;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MOrder {
    /// Lexicographic, v0 > v1 > ... ; the solving order.
    Lex,
    /// Graded reverse lexicographic; cheaper for plain ideal membership.
    GrevLex,
}

/// Terms sorted descending in the context order, no zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<K: Field> {
    pub terms: Vec<(MExp, K::Elem)>,
}

impl<K: Field> MPoly<K> {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Option<&MExp> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lc(&self) -> Option<&K::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn is_constant(&self) -> bool {
        self.terms
            .first()
            .map_or(true, |(m, _)| m.iter().all(|&e| e == 0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    /// The ideal is not zero-dimensional: an infinite solution family.
    PositiveDimensional,
    Field(FieldError),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::PositiveDimensional => {
                write!(f, "ideal is positive-dimensional (infinite solution set)")
            }
            SolveError::Field(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for SolveError {}

impl From<FieldError> for SolveError {
    fn from(e: FieldError) -> Self {
        SolveError::Field(e)
    }
}

/// Polynomial-ring context: coefficient field, variable count, monomial order.
#[derive(Clone, Debug)]
pub struct PolyCtx<K: Field> {
    pub field: K,
    pub nvars: usize,
    pub order: MOrder,
}

impl<K: Field> PolyCtx<K> {
    pub fn new(field: K, nvars: usize, order: MOrder) -> Self {
        PolyCtx {
            field,
            nvars,
            order,
        }
    }

    pub fn cmp_exp(&self, a: &MExp, b: &MExp) -> Ordering {
        match self.order {
            MOrder::Lex => a.cmp(b),
            MOrder::GrevLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
                        match x.cmp(y) {
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                            Ordering::Equal => {}
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }

    pub fn exp_zero(&self) -> MExp {
        SmallVec::from_elem(0, self.nvars)
    }

    pub fn exp_var(&self, v: usize) -> MExp {
        let mut e = self.exp_zero();
        e[v] = 1;
        e
    }

    fn exp_add(&self, a: &MExp, b: &MExp) -> MExp {
        a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
    }

    fn exp_div(&self, a: &MExp, b: &MExp) -> Option<MExp> {
        let mut out = MExp::with_capacity(self.nvars);
        for (x, y) in a.iter().zip(b.iter()) {
            if x < y {
                return None;
            }
            out.push(x - y);
        }
        Some(out)
    }

    fn exp_lcm(&self, a: &MExp, b: &MExp) -> MExp {
        a.iter().zip(b.iter()).map(|(x, y)| *x.max(y)).collect()
    }

    pub fn normalize(&self, mut terms: Vec<(MExp, K::Elem)>) -> MPoly<K> {
        terms.sort_by(|a, b| self.cmp_exp(&b.0, &a.0));
        let mut out: Vec<(MExp, K::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = self.field.add(&last.1, &c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !self.field.is_zero(c));
        MPoly { terms: out }
    }

    pub fn constant(&self, c: K::Elem) -> MPoly<K> {
        if self.field.is_zero(&c) {
            MPoly::zero()
        } else {
            MPoly {
                terms: vec![(self.exp_zero(), c)],
            }
        }
    }

    pub fn add(&self, f: &MPoly<K>, g: &MPoly<K>) -> MPoly<K> {
        let mut terms = f.terms.clone();
        terms.extend(g.terms.iter().cloned());
        self.normalize(terms)
    }

    pub fn sub(&self, f: &MPoly<K>, g: &MPoly<K>) -> MPoly<K> {
        let mut terms = f.terms.clone();
        terms.extend(g.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))));
        self.normalize(terms)
    }

    pub fn mul_term(&self, f: &MPoly<K>, exp: &MExp, coeff: &K::Elem) -> MPoly<K> {
        if self.field.is_zero(coeff) {
            return MPoly::zero();
        }
        MPoly {
            terms: f
                .terms
                .iter()
                .map(|(m, c)| (self.exp_add(m, exp), self.field.mul(c, coeff)))
                .collect(),
        }
    }

    pub fn mul(&self, f: &MPoly<K>, g: &MPoly<K>) -> MPoly<K> {
        let mut terms = Vec::with_capacity(f.terms.len() * g.terms.len());
        for (m, c) in &f.terms {
            for (m2, c2) in &g.terms {
                terms.push((self.exp_add(m, m2), self.field.mul(c, c2)));
            }
        }
        self.normalize(terms)
    }

    pub fn make_monic(&self, f: &MPoly<K>) -> MPoly<K> {
        match f.lc() {
            None => MPoly::zero(),
            Some(lc) if self.field.is_one(lc) => f.clone(),
            Some(lc) => {
                let li = self.field.inv(lc).expect("nonzero leading coefficient");
                MPoly {
                    terms: f
                        .terms
                        .iter()
                        .map(|(m, c)| (m.clone(), self.field.mul(c, &li)))
                        .collect(),
                }
            }
        }
    }

    /// Full normal form of `f` modulo `basis` (every term reduced).
    pub fn reduce(&self, f: &MPoly<K>, basis: &[MPoly<K>]) -> MPoly<K> {
        let mut p = f.clone();
        let mut tail: Vec<(MExp, K::Elem)> = Vec::new();
        'outer: while let Some((lm, lc)) = p.terms.first().cloned() {
            for g in basis {
                if let Some(glm) = g.lm() {
                    if let Some(q) = self.exp_div(&lm, glm) {
                        let factor = self
                            .field
                            .div(&lc, g.lc().unwrap())
                            .expect("nonzero leading coefficient");
                        let sub = self.mul_term(g, &q, &factor);
                        p = self.sub(&p, &sub);
                        continue 'outer;
                    }
                }
            }
            tail.push((lm, lc));
            p.terms.remove(0);
        }
        MPoly { terms: tail }
    }

    fn s_poly(&self, f: &MPoly<K>, g: &MPoly<K>) -> MPoly<K> {
        let lf = f.lm().unwrap().clone();
        let lg = g.lm().unwrap().clone();
        let l = self.exp_lcm(&lf, &lg);
        let qf = self.exp_div(&l, &lf).unwrap();
        let qg = self.exp_div(&l, &lg).unwrap();
        let cf = self.field.inv(f.lc().unwrap()).unwrap();
        let cg = self.field.inv(g.lc().unwrap()).unwrap();
        let a = self.mul_term(f, &qf, &cf);
        let b = self.mul_term(g, &qg, &cg);
        self.sub(&a, &b)
    }

    /// Reduced Groebner basis by Buchberger's algorithm. S-pairs are handled
    /// in ascending lcm-degree order; the coprimality criterion and the chain
    /// criterion prune the queue.
    pub fn buchberger(&self, gens: Vec<MPoly<K>>) -> Vec<MPoly<K>> {
        let mut basis: Vec<MPoly<K>> = Vec::new();
        for g in gens {
            if !g.is_zero() {
                basis.push(self.make_monic(&g));
            }
        }
        if basis.is_empty() {
            return basis;
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for j in 1..basis.len() {
            for i in 0..j {
                pairs.push((i, j));
            }
        }
        let mut done: HashSet<(usize, usize)> = HashSet::new();
        while !pairs.is_empty() {
            // normal selection: minimal lcm degree
            let mut best = 0usize;
            let mut best_deg = u64::MAX;
            for (idx, (i, j)) in pairs.iter().enumerate() {
                let l = self.exp_lcm(basis[*i].lm().unwrap(), basis[*j].lm().unwrap());
                let d: u64 = l.iter().map(|&e| e as u64).sum();
                if d < best_deg {
                    best_deg = d;
                    best = idx;
                }
            }
            let (i, j) = pairs.swap_remove(best);
            done.insert((i, j));
            let li = basis[i].lm().unwrap().clone();
            let lj = basis[j].lm().unwrap().clone();
            let lcm = self.exp_lcm(&li, &lj);
            // coprimality criterion
            if lcm == self.exp_add(&li, &lj) {
                continue;
            }
            // chain criterion
            let mut skip = false;
            for (k, g) in basis.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                if self.exp_div(&lcm, g.lm().unwrap()).is_some() {
                    let p1 = (i.min(k), i.max(k));
                    let p2 = (j.min(k), j.max(k));
                    if done.contains(&p1) && done.contains(&p2) {
                        skip = true;
                        break;
                    }
                }
            }
            if skip {
                continue;
            }
            let s = self.s_poly(&basis[i], &basis[j]);
            let r = self.reduce(&s, &basis);
            if !r.is_zero() {
                let r = self.make_monic(&r);
                let new_idx = basis.len();
                basis.push(r);
                for t in 0..new_idx {
                    pairs.push((t, new_idx));
                }
            }
        }
        self.interreduce(basis)
    }

    fn interreduce(&self, mut basis: Vec<MPoly<K>>) -> Vec<MPoly<K>> {
        // drop redundant leading monomials
        loop {
            let mut removed = false;
            'scan: for i in 0..basis.len() {
                for j in 0..basis.len() {
                    if i != j
                        && self
                            .exp_div(basis[i].lm().unwrap(), basis[j].lm().unwrap())
                            .is_some()
                    {
                        basis.remove(i);
                        removed = true;
                        break 'scan;
                    }
                }
            }
            if !removed {
                break;
            }
        }
        // fully reduce tails
        let mut out: Vec<MPoly<K>> = Vec::with_capacity(basis.len());
        for i in 0..basis.len() {
            let others: Vec<MPoly<K>> = basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let r = self.reduce(&basis[i], &others);
            if !r.is_zero() {
                out.push(self.make_monic(&r));
            }
        }
        out.sort_by(|a, b| self.cmp_exp(b.lm().unwrap(), a.lm().unwrap()));
        out
    }

    /// Every variable appears as a pure power among the leading monomials
    /// (or the basis contains a constant: empty variety).
    pub fn is_zero_dimensional(&self, gb: &[MPoly<K>]) -> bool {
        if gb.iter().any(|g| g.is_constant() && !g.is_zero()) {
            return true;
        }
        (0..self.nvars).all(|v| {
            gb.iter().any(|g| {
                g.lm().map_or(false, |m| {
                    m[v] > 0 && m.iter().enumerate().all(|(i, &e)| i == v || e == 0)
                })
            })
        })
    }
}

/// All base-field solutions of a zero-dimensional system plus a flag for
/// branches whose roots live outside the field.
#[derive(Clone, Debug)]
pub struct SolveOutcome<K: Field> {
    pub solutions: Vec<Vec<K::Elem>>,
    pub missed_nonrational: bool,
}

impl<K: SolvableField> PolyCtx<K> {
    /// Lexicographic Groebner basis, zero-dimensionality check, then
    /// back-substitution with exact in-field root extraction. Complete for
    /// base-field solutions; `missed_nonrational` records pruned branches.
    pub fn solve_system(&self, gens: Vec<MPoly<K>>) -> Result<SolveOutcome<K>, SolveError> {
        assert!(matches!(self.order, MOrder::Lex), "solving requires lex");
        let gens: Vec<MPoly<K>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            if self.nvars == 0 {
                return Ok(SolveOutcome {
                    solutions: vec![Vec::new()],
                    missed_nonrational: false,
                });
            }
            return Err(SolveError::PositiveDimensional);
        }
        let gb = self.buchberger(gens);
        if gb.iter().any(|g| g.is_constant() && !g.is_zero()) {
            return Ok(SolveOutcome {
                solutions: Vec::new(),
                missed_nonrational: false,
            });
        }
        if !self.is_zero_dimensional(&gb) {
            return Err(SolveError::PositiveDimensional);
        }
        let mut outcome = SolveOutcome {
            solutions: Vec::new(),
            missed_nonrational: false,
        };
        let mut assign: Vec<Option<K::Elem>> = vec![None; self.nvars];
        self.back_substitute(&gb, &mut assign, &mut outcome)?;
        Ok(outcome)
    }

    fn back_substitute(
        &self,
        gb: &[MPoly<K>],
        assign: &mut Vec<Option<K::Elem>>,
        outcome: &mut SolveOutcome<K>,
    ) -> Result<(), SolveError> {
        // next unassigned variable, last-first (smallest in lex)
        let var = match (0..self.nvars).rev().find(|&v| assign[v].is_none()) {
            None => {
                let point: Vec<K::Elem> = assign.iter().map(|a| a.clone().unwrap()).collect();
                if gb
                    .iter()
                    .all(|g| self.field.is_zero(&self.eval(g, &point)))
                {
                    outcome.solutions.push(point);
                }
                return Ok(());
            }
            Some(v) => v,
        };
        // gather nonzero substituted polynomials univariate in `var`
        let mut eliminant: Option<Poly<K>> = None;
        for g in gb {
            let h = self.substitute(g, assign);
            if h.is_zero() {
                continue;
            }
            let support = self.support(&h);
            if support.iter().all(|&v| v == var) {
                let uni = self.to_univariate(&h, var);
                eliminant = Some(match eliminant {
                    None => uni,
                    Some(e) => e.gcd(&self.field, &uni),
                });
            }
        }
        let eliminant = match eliminant {
            Some(e) if !e.is_zero() => e,
            // cannot happen for a zero-dimensional lex basis
            _ => return Err(SolveError::PositiveDimensional),
        };
        if eliminant.degree() == Some(0) {
            return Ok(()); // inconsistent branch
        }
        let roots = self.field.univariate_roots(&eliminant)?;
        if !roots.complete {
            outcome.missed_nonrational = true;
        }
        for (root, _mult) in roots.roots {
            assign[var] = Some(root);
            self.back_substitute(gb, assign, outcome)?;
        }
        assign[var] = None;
        Ok(())
    }

    fn eval(&self, f: &MPoly<K>, point: &[K::Elem]) -> K::Elem {
        let mut acc = self.field.zero();
        for (m, c) in &f.terms {
            let mut t = c.clone();
            for (v, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = self.field.mul(&t, &point[v]);
                }
            }
            acc = self.field.add(&acc, &t);
        }
        acc
    }

    /// Evaluate at the assigned variables, leaving the rest symbolic.
    fn substitute(&self, f: &MPoly<K>, assign: &[Option<K::Elem>]) -> MPoly<K> {
        let mut terms = Vec::with_capacity(f.terms.len());
        for (m, c) in &f.terms {
            let mut coeff = c.clone();
            let mut exp = m.clone();
            for (v, a) in assign.iter().enumerate() {
                if let Some(val) = a {
                    for _ in 0..m[v] {
                        coeff = self.field.mul(&coeff, val);
                    }
                    exp[v] = 0;
                }
            }
            terms.push((exp, coeff));
        }
        self.normalize(terms)
    }

    fn support(&self, f: &MPoly<K>) -> Vec<usize> {
        let mut vars = Vec::new();
        for v in 0..self.nvars {
            if f.terms.iter().any(|(m, _)| m[v] > 0) {
                vars.push(v);
            }
        }
        vars
    }

    fn to_univariate(&self, f: &MPoly<K>, var: usize) -> Poly<K> {
        let deg = f
            .terms
            .iter()
            .map(|(m, _)| m[var] as usize)
            .max()
            .unwrap_or(0);
        let mut coeffs = vec![self.field.zero(); deg + 1];
        for (m, c) in &f.terms {
            coeffs[m[var] as usize] = self.field.add(&coeffs[m[var] as usize], c);
        }
        Poly::from_coeffs(&self.field, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{rat, Rationals};
    use smallvec::smallvec;

    fn ctx(nvars: usize) -> PolyCtx<Rationals> {
        PolyCtx::new(Rationals, nvars, MOrder::Lex)
    }

    fn mp(ctx: &PolyCtx<Rationals>, terms: &[(&[u32], i64)]) -> MPoly<Rationals> {
        ctx.normalize(
            terms
                .iter()
                .map(|(m, c)| (MExp::from_slice(m), rat(*c, 1)))
                .collect(),
        )
    }

    #[test]
    fn groebner_of_simple_ideal() {
        // x^2 + y^2 - 1, x - y: solutions x = y = +-1/sqrt(2) (irrational)
        let c = ctx(2);
        let f = mp(&c, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -1)]);
        let g = mp(&c, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let gb = c.buchberger(vec![f, g]);
        assert!(c.is_zero_dimensional(&gb));
        let out = c.solve_system(vec![
            mp(&c, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -1)]),
            mp(&c, &[(&[1, 0], 1), (&[0, 1], -1)]),
        ])
        .unwrap();
        assert!(out.solutions.is_empty());
        assert!(out.missed_nonrational);
    }

    #[test]
    fn solve_rational_points() {
        // x^2 - 1, y - x: (1, 1), (-1, -1)
        let c = ctx(2);
        let sys = vec![
            mp(&c, &[(&[2, 0], 1), (&[0, 0], -1)]),
            mp(&c, &[(&[0, 1], 1), (&[1, 0], -1)]),
        ];
        let out = c.solve_system(sys).unwrap();
        assert!(!out.missed_nonrational);
        let mut sols: Vec<(Rational, Rational)> = out
            .solutions
            .into_iter()
            .map(|s| (s[0].clone(), s[1].clone()))
            .collect();
        sols.sort();
        use crate::field::rational::Rational;
        assert_eq!(
            sols,
            vec![(rat(-1, 1), rat(-1, 1)), (rat(1, 1), rat(1, 1))]
        );
    }

    #[test]
    fn inconsistent_system_is_empty() {
        let c = ctx(1);
        // x - 1, x - 2
        let sys = vec![
            mp(&c, &[(&[1], 1), (&[0], -1)]),
            mp(&c, &[(&[1], 1), (&[0], -2)]),
        ];
        let out = c.solve_system(sys).unwrap();
        assert!(out.solutions.is_empty());
        assert!(!out.missed_nonrational);
    }

    #[test]
    fn positive_dimensional_detected() {
        let c = ctx(2);
        // single curve x*y - 1
        let sys = vec![mp(&c, &[(&[1, 1], 1), (&[0, 0], -1)])];
        assert_eq!(
            c.solve_system(sys).unwrap_err(),
            SolveError::PositiveDimensional
        );
    }

    #[test]
    fn grevlex_ordering_sane() {
        let c = PolyCtx::new(Rationals, 3, MOrder::GrevLex);
        // x*z^2 vs y^3: degrees equal; grevlex compares last differing index
        let a: MExp = smallvec![1, 0, 2];
        let b: MExp = smallvec![0, 3, 0];
        // smaller exponent in the last position wins
        assert_eq!(c.cmp_exp(&b, &a), Ordering::Greater);
    }

    #[test]
    fn multiplicity_branch() {
        let c = ctx(2);
        // (x - 1)^2, y - x: single solution (1,1)
        let sys = vec![
            mp(&c, &[(&[2, 0], 1), (&[1, 0], -2), (&[0, 0], 1)]),
            mp(&c, &[(&[0, 1], 1), (&[1, 0], -1)]),
        ];
        let out = c.solve_system(sys).unwrap();
        assert_eq!(out.solutions.len(), 1);
        assert!(!out.missed_nonrational);
    }
}
