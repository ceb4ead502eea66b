//! Straightening engine producing PBW normal forms.
//!
//! Both algebras have a Poincare-Birkhoff-Witt basis of ordered monomials
//! \(a^{i_1}_{j_1} \cdots a^{i_k}_{j_k}\) with \((i_t, j_t)\) weakly increasing
//! in the row-major generator order. [`PbwEngine::normal_form`] rewrites any
//! polynomial onto that basis by repeatedly applying the defining relations to
//! adjacent inversions.
//!
//! The rewrite of a single inversion is [`PbwEngine::straighten_pair`]; the
//! engine folds letters onto an already ordered prefix and memoizes each
//! `(prefix, letter)` product, so repeated normal forms of related words share
//! work. A step budget guards against runaway recursion.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::{Cell, RefCell};
use core::fmt;

use crate::ncpoly::{Algebra, Gen, NCPoly, NcError, Word};
use crate::scalars::RatFunc;

/// Default step budget: plenty for every desk-scale computation here.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PbwError {
    /// The straightening recursion exceeded its step budget.
    StepBudgetExceeded { budget: u64 },
    Nc(NcError),
}

impl fmt::Display for PbwError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PbwError::StepBudgetExceeded { budget } => {
                write!(f, "straightening exceeded the step budget of {}", budget)
            }
            PbwError::Nc(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for PbwError {}

impl From<NcError> for PbwError {
    fn from(e: NcError) -> Self {
        PbwError::Nc(e)
    }
}

/// Normal-form engine for one algebra at one matrix size.
pub struct PbwEngine {
    algebra: Algebra,
    n: u8,
    cache: RefCell<BTreeMap<(Word, Gen), NCPoly>>,
    steps: Cell<u64>,
    budget: u64,
}

impl PbwEngine {
    pub fn new(algebra: Algebra, n: u8) -> Self {
        Self::with_budget(algebra, n, DEFAULT_BUDGET)
    }

    pub fn with_budget(algebra: Algebra, n: u8, budget: u64) -> Self {
        PbwEngine {
            algebra,
            n,
            cache: RefCell::new(BTreeMap::new()),
            steps: Cell::new(0),
            budget,
        }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// Straightening steps consumed so far.
    pub fn steps(&self) -> u64 {
        self.steps.get()
    }

    pub fn reset_steps(&self) {
        self.steps.set(0);
    }

    pub fn cache_len(&self) -> usize {
        self.cache.borrow().len()
    }

    /// All generators in basis order.
    pub fn gens(&self) -> Vec<Gen> {
        let mut v = Vec::with_capacity((self.n as usize) * (self.n as usize));
        for i in 1..=self.n {
            for j in 1..=self.n {
                v.push(Gen::new(i, j));
            }
        }
        v
    }

    /// A single generator as a polynomial.
    pub fn gen(&self, row: u8, col: u8) -> NCPoly {
        NCPoly::gen(self.algebra, self.n, Gen::new(row, col)).expect("generator in range")
    }

    pub fn zero(&self) -> NCPoly {
        NCPoly::zero(self.algebra, self.n)
    }

    pub fn one(&self) -> NCPoly {
        NCPoly::one(self.algebra, self.n)
    }

    pub fn scalar(&self, c: RatFunc) -> NCPoly {
        NCPoly::scalar(self.algebra, self.n, c)
    }

    /// Rewrite of the inversion `h * g` where `h > g`, as a combination of
    /// words that are closer to ordered. Pure table lookup, no recursion;
    /// some output words may themselves contain inversions.
    pub fn straighten_pair(&self, h: Gen, g: Gen) -> NCPoly {
        debug_assert!(h > g, "straighten_pair needs an inversion");
        match self.algebra {
            Algebra::Frt => self.straighten_frt(h, g),
            Algebra::Rea => self.straighten_rea(h, g),
        }
    }

    fn straighten_frt(&self, h: Gen, g: Gen) -> NCPoly {
        let (r1, c1) = (h.row, h.col);
        let (r2, c2) = (g.row, g.col);
        let mut out = self.zero();
        if r1 == r2 || c1 == c2 {
            // one shared index: letters q-commute
            out.add_term(Word(vec![g, h]), &RatFunc::q_pow(-1));
        } else if c1 < c2 {
            // antidiagonal pair: letters commute
            out.add_term(Word(vec![g, h]), &RatFunc::one());
        } else {
            // diagonal pair, r1 > r2 and c1 > c2
            out.add_term(Word(vec![g, h]), &RatFunc::one());
            out.add_term(
                Word(vec![Gen::new(r2, c1), Gen::new(r1, c2)]),
                &RatFunc::q_minus_qinv().neg(),
            );
        }
        out
    }

    fn straighten_rea(&self, h: Gen, g: Gen) -> NCPoly {
        // h = a^i_m, g = a^j_n with (i, m) > (j, n)
        let (i, m) = (h.row, h.col);
        let (j, n) = (g.row, g.col);
        let nn = self.n;
        let qq = RatFunc::q_minus_qinv();
        let mut out = self.zero();
        let d = |a: u8, b: u8| if a == b { 1i64 } else { 0 };
        if j < i {
            out.add_term(Word(vec![g, h]), &RatFunc::q_pow(d(i, n) + d(n, m) - d(m, j)));
            if n > m {
                let c = RatFunc::q_pow(d(i, m) - d(j, m)).mul(&qq);
                out.add_term(Word(vec![Gen::new(j, m), Gen::new(i, n)]), &c);
            }
            if i == n {
                let c = qq.mul(&RatFunc::q_pow(d(n, m) - d(j, m)));
                for p in (i + 1)..=nn {
                    out.add_term(Word(vec![Gen::new(j, p), Gen::new(p, m)]), &c);
                }
            }
            if i == m && n > m {
                let c = qq.mul(&qq);
                for p in (i + 1)..=nn {
                    out.add_term(Word(vec![Gen::new(j, p), Gen::new(p, n)]), &c);
                }
            }
            if j == m {
                let c = RatFunc::q_pow(-1).mul(&qq).neg();
                for p in (j + 1)..=nn {
                    out.add_term(Word(vec![Gen::new(i, p), Gen::new(p, n)]), &c);
                }
            }
        } else {
            // same row, n < m
            out.add_term(Word(vec![g, h]), &RatFunc::q_pow(d(i, n) - d(i, m) - 1));
            if i == n {
                let c = RatFunc::q_pow(-1).mul(&qq);
                for p in (i + 1)..=nn {
                    out.add_term(Word(vec![Gen::new(i, p), Gen::new(p, m)]), &c);
                }
            }
            if i == m {
                let c = RatFunc::q_pow(-1).mul(&qq).neg();
                for p in (i + 1)..=nn {
                    out.add_term(Word(vec![Gen::new(i, p), Gen::new(p, n)]), &c);
                }
            }
        }
        out
    }

    /// Every defining relation as a pair `(inversion word, rewrite)`.
    pub fn relations(&self) -> Vec<(Word, NCPoly)> {
        let gens = self.gens();
        let mut out = Vec::new();
        for &h in &gens {
            for &g in &gens {
                if h > g {
                    out.push((Word(vec![h, g]), self.straighten_pair(h, g)));
                }
            }
        }
        out
    }

    fn tick(&self) -> Result<(), PbwError> {
        let s = self.steps.get() + 1;
        if s > self.budget {
            return Err(PbwError::StepBudgetExceeded { budget: self.budget });
        }
        self.steps.set(s);
        Ok(())
    }

    /// Normal form of `u * g` where `u` is already ordered. Result is a
    /// combination of ordered words. Memoized on `(u, g)`.
    pub fn rightmul_word(&self, u: &Word, g: Gen) -> Result<NCPoly, PbwError> {
        match u.0.last() {
            None => {
                return Ok(NCPoly::monomial(self.algebra, self.n, Word::single(g), RatFunc::one())?)
            }
            Some(&last) if last <= g => {
                return Ok(NCPoly::monomial(self.algebra, self.n, u.push(g), RatFunc::one())?)
            }
            _ => {}
        }
        let key = (u.clone(), g);
        if let Some(p) = self.cache.borrow().get(&key) {
            return Ok(p.clone());
        }
        self.tick()?;
        let mut prefix = u.clone();
        let h = prefix.0.pop().expect("nonempty by the match above");
        let rewritten = self.straighten_pair(h, g);
        let mut acc = self.zero();
        for (w, c) in rewritten.terms() {
            debug_assert_eq!(w.degree(), 2, "relations are quadratic");
            let (g1, g2) = (w.0[0], w.0[1]);
            let p1 = self.rightmul_word(&prefix, g1)?;
            for (v, cv) in p1.terms() {
                let p2 = self.rightmul_word(v, g2)?;
                let scale = c.mul(cv);
                for (w2, c2) in p2.terms() {
                    acc.add_term(w2.clone(), &c2.mul(&scale));
                }
            }
        }
        self.cache.borrow_mut().insert(key, acc.clone());
        Ok(acc)
    }

    /// Normal form of a single free word.
    pub fn nf_word(&self, w: &Word) -> Result<NCPoly, PbwError> {
        let mut acc = self.one();
        for &g in &w.0 {
            let mut next = self.zero();
            for (u, c) in acc.terms() {
                let p = self.rightmul_word(u, g)?;
                for (v, cv) in p.terms() {
                    next.add_term(v.clone(), &cv.mul(c));
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Normal form of an arbitrary polynomial.
    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly, PbwError> {
        if p.algebra() != self.algebra {
            return Err(NcError::AlgebraMismatch.into());
        }
        if p.n() != self.n {
            return Err(NcError::SizeMismatch { left: self.n, right: p.n() }.into());
        }
        let mut acc = self.zero();
        for (w, c) in p.terms() {
            let nf = self.nf_word(w)?;
            for (v, cv) in nf.terms() {
                acc.add_term(v.clone(), &cv.mul(c));
            }
        }
        Ok(acc)
    }

    /// Normal form of a product.
    pub fn mul_nf(&self, p: &NCPoly, q: &NCPoly) -> Result<NCPoly, PbwError> {
        self.normal_form(&p.mul(q)?)
    }

    /// Normal form of the commutator `p*q - q*p`.
    pub fn commutator_nf(&self, p: &NCPoly, q: &NCPoly) -> Result<NCPoly, PbwError> {
        let pq = self.mul_nf(p, q)?;
        let qp = self.mul_nf(q, p)?;
        Ok(pq.sub(&qp)?)
    }

    /// Export memoized products as `(prefix * letter, normal form)` records,
    /// keyed by the concatenated word.
    pub fn cache_entries(&self) -> Vec<(Word, NCPoly)> {
        self.cache
            .borrow()
            .iter()
            .map(|((u, g), p)| (u.push(*g), p.clone()))
            .collect()
    }

    /// Seed the memo with a previously exported record. Returns false and
    /// ignores the record unless it has the expected shape: a nonempty word
    /// with ordered prefix, and an ordered-word polynomial of equal degree.
    pub fn cache_insert(&self, w: &Word, nf: &NCPoly) -> bool {
        if w.0.is_empty() || nf.algebra() != self.algebra || nf.n() != self.n {
            return false;
        }
        let mut prefix = w.clone();
        let g = prefix.0.pop().expect("nonempty");
        if !prefix.is_ordered() {
            return false;
        }
        if let Some(&last) = prefix.0.last() {
            if last <= g {
                // trivial append, never cached
                return false;
            }
        } else {
            return false;
        }
        if !nf.terms().all(|(v, _)| v.is_ordered() && v.degree() == w.degree()) {
            return false;
        }
        self.cache.borrow_mut().insert((prefix, g), nf.clone());
        true
    }
}
