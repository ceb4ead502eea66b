//! Matrices over the reflection algebra and the central elements they carry.
//!
//! The generator matrix supports exact products with entrywise normal forms
//! and a weighted trace; the power traces `s_k` come from its matrix powers,
//! while the elementary family `c_k` is assembled either from truncated
//! minors or from a direct sum over permutations of each row subset.  The
//! identities tying the two families together are exposed as residual
//! computations: the characteristic identity, the power-sum recursion with
//! an exact coefficient fit, the counit specialization, corner-block
//! closure, and the clique decomposition of minor sums.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::minors::ptmin;
use crate::ncpoly::{Algebra, Gen, NCPoly, NcError, Word};
use crate::pbw::{PbwEngine, PbwError};
use crate::qcomb::{cliques, complement, subsets, wt, Bij};
use crate::rmatrix::{unpack, TensorOp};
use crate::scalars::RatFunc;
use crate::twist::minor_preimage;

/// Square matrix with entries in the reflection algebra on `n` letters,
/// indexed by packed base-`n` tuples over `slots` tensor factors.  The
/// plain generator matrix is the one-slot case; multi-slot matrices carry
/// one generator copy per factor for fused traces.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    n: u8,
    slots: u8,
    entries: BTreeMap<(u32, u32), NCPoly>,
}

impl QMatrix {
    pub fn zero(n: u8, slots: u8) -> Self {
        QMatrix { n, slots, entries: BTreeMap::new() }
    }

    pub fn identity(n: u8, slots: u8) -> Self {
        let mut m = Self::zero(n, slots);
        for idx in 0..m.dim() {
            m.entries.insert((idx, idx), NCPoly::one(Algebra::Rea, n));
        }
        m
    }

    /// The generator matrix: entry `(i, j)` is `a^i_j` (1-based labels).
    pub fn generators(n: u8) -> Self {
        Self::generators_at(n, 1, 1)
    }

    /// One generator copy acting on the given tensor factor (1-based) and
    /// identically on the rest.
    pub fn generators_at(n: u8, slots: u8, slot: u8) -> Self {
        debug_assert!(1 <= slot && slot <= slots);
        let mut m = Self::zero(n, slots);
        for col in 0..m.dim() {
            let digits = unpack(n, slots, col);
            for d in 0..n {
                let mut dd = digits.clone();
                dd[slot as usize - 1] = d;
                let row = crate::rmatrix::pack(n, &dd);
                let g = Gen::new(d + 1, digits[slot as usize - 1] + 1);
                let p = NCPoly::monomial(Algebra::Rea, n, Word::single(g), RatFunc::one())
                    .expect("indices in range");
                m.entries.insert((row, col), p);
            }
        }
        m
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn slots(&self) -> u8 {
        self.slots
    }

    pub fn dim(&self) -> u32 {
        (self.n as u32).pow(self.slots as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, row: u32, col: u32) -> NCPoly {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(|| NCPoly::zero(Algebra::Rea, self.n))
    }

    pub fn set_entry(&mut self, row: u32, col: u32, p: NCPoly) {
        if p.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), p);
        }
    }

    pub fn add_entry(&mut self, row: u32, col: u32, p: &NCPoly) {
        let v = self.entry(row, col).add(p).expect("same algebra");
        self.set_entry(row, col, v);
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.n == other.n && self.slots == other.slots);
        let mut out = self.clone();
        for (&(r, c), p) in &other.entries {
            out.add_entry(r, c, p);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.slots);
        }
        QMatrix {
            n: self.n,
            slots: self.slots,
            entries: self.entries.iter().map(|(&k, p)| (k, p.scale(c))).collect(),
        }
    }

    /// Left factor written first in every entry product, then straightened.
    pub fn mul_nf(&self, other: &Self, engine: &PbwEngine) -> Result<Self, PbwError> {
        debug_assert!(self.n == other.n && self.slots == other.slots);
        let rows = rows_of(&other.entries);
        let mut prod: BTreeMap<(u32, u32), NCPoly> = BTreeMap::new();
        for (&(r, m), left) in &self.entries {
            let Some(row) = rows.get(&m) else { continue };
            for &(c, right) in row {
                let term = left.mul(right).expect("same algebra");
                match prod.get_mut(&(r, c)) {
                    Some(acc) => *acc = acc.add(&term).expect("same algebra"),
                    None => {
                        prod.insert((r, c), term);
                    }
                }
            }
        }
        let mut out = Self::zero(self.n, self.slots);
        for ((r, c), p) in prod {
            out.set_entry(r, c, engine.normal_form(&p)?);
        }
        Ok(out)
    }

    pub fn pow_nf(&self, k: u32, engine: &PbwEngine) -> Result<Self, PbwError> {
        let mut out = Self::identity(self.n, self.slots);
        for _ in 0..k {
            out = out.mul_nf(self, engine)?;
        }
        Ok(out)
    }

    /// Multiply every entry by the polynomial on the left and straighten.
    pub fn scale_poly_nf(&self, p: &NCPoly, engine: &PbwEngine) -> Result<Self, PbwError> {
        let mut out = Self::zero(self.n, self.slots);
        for (&(r, c), e) in &self.entries {
            out.set_entry(r, c, engine.normal_form(&p.mul(e).expect("same algebra"))?);
        }
        Ok(out)
    }

    /// Scalar operator applied on the left: `(t·M)^r_c = Σ_m t^r_m M^m_c`.
    pub fn lcompose(&self, t: &TensorOp) -> Self {
        debug_assert!(t.n() == self.n && t.slots() == self.slots);
        let rows = rows_of(&self.entries);
        let mut out = Self::zero(self.n, self.slots);
        for (&(r, m), v) in t.terms() {
            let Some(row) = rows.get(&m) else { continue };
            for &(c, p) in row {
                out.add_entry(r, c, &p.scale(v));
            }
        }
        out
    }

    /// Scalar operator applied on the right: `(M·t)^r_c = Σ_m M^r_m t^m_c`.
    pub fn rcompose(&self, t: &TensorOp) -> Self {
        debug_assert!(t.n() == self.n && t.slots() == self.slots);
        let mut trows: BTreeMap<u32, Vec<(u32, &RatFunc)>> = BTreeMap::new();
        for (&(m, c), v) in t.terms() {
            trows.entry(m).or_default().push((c, v));
        }
        let mut out = Self::zero(self.n, self.slots);
        for (&(r, m), p) in &self.entries {
            let Some(row) = trows.get(&m) else { continue };
            for &(c, v) in row {
                out.add_entry(r, c, &p.scale(v));
            }
        }
        out
    }

    /// Weighted trace: diagonal entries summed against `q^{-2i}` per slot
    /// label `i` (1-based), multiplied over the slots.
    pub fn trace_q(&self) -> NCPoly {
        let mut out = NCPoly::zero(Algebra::Rea, self.n);
        for (&(r, c), p) in &self.entries {
            if r != c {
                continue;
            }
            let e: i64 = unpack(self.n, self.slots, r)
                .iter()
                .map(|&d| -2 * (i64::from(d) + 1))
                .sum();
            out = out.add(&p.scale(&RatFunc::q_pow(e))).expect("same algebra");
        }
        out
    }

    pub fn normal_form(&self, engine: &PbwEngine) -> Result<Self, PbwError> {
        let mut out = Self::zero(self.n, self.slots);
        for (&(r, c), p) in &self.entries {
            out.set_entry(r, c, engine.normal_form(p)?);
        }
        Ok(out)
    }
}

fn rows_of(entries: &BTreeMap<(u32, u32), NCPoly>) -> BTreeMap<u32, Vec<(u32, &NCPoly)>> {
    let mut rows: BTreeMap<u32, Vec<(u32, &NCPoly)>> = BTreeMap::new();
    for (&(r, c), p) in entries {
        rows.entry(r).or_default().push((c, p));
    }
    rows
}

/// Weighted trace of the identity: `Σ_{i=1}^{n} q^{-2i}`.
pub fn qdim(n: u8) -> RatFunc {
    let mut out = RatFunc::zero();
    for i in 1..=i64::from(n) {
        out = out.add(&RatFunc::q_pow(-2 * i));
    }
    out
}

fn inversions(word: &[u8]) -> u64 {
    let mut count = 0;
    for a in 0..word.len() {
        for b in a + 1..word.len() {
            if word[a] > word[b] {
                count += 1;
            }
        }
    }
    count
}

fn permute(arr: &mut [u8], at: usize, f: &mut impl FnMut(&[u8])) {
    if at == arr.len() {
        f(arr);
        return;
    }
    for i in at..arr.len() {
        arr.swap(at, i);
        permute(arr, at + 1, f);
        arr.swap(at, i);
    }
}

/// Direct permutation sum for the k-th central element: over each row
/// subset `I`, every rearrangement of its columns contributes
/// `q^{-2 wt(I)} (-q)^{l} q^{e}` with `l` the inversion count of the
/// rearrangement extended by the identity off `I`, and `e` its exceedance.
pub fn ck_direct(n: u8, k: usize) -> NCPoly {
    let mut out = NCPoly::zero(Algebra::Rea, n);
    for i_set in subsets(n, k) {
        let pre = RatFunc::q_pow(-2 * wt(&i_set));
        let mut arr = i_set.clone();
        permute(&mut arr, 0, &mut |cols| {
            let mut full: Vec<u8> = (1..=n).collect();
            for (t, &i) in i_set.iter().enumerate() {
                full[i as usize - 1] = cols[t];
            }
            let exc = i_set.iter().zip(cols.iter()).filter(|&(&i, &c)| c > i).count();
            let coeff = pre
                .mul(&RatFunc::neg_q_pow(inversions(&full) as i64))
                .mul(&RatFunc::q_pow(exc as i64));
            let w = Word(i_set.iter().zip(cols.iter()).map(|(&r, &c)| Gen::new(r, c)).collect());
            let mono = NCPoly::monomial(Algebra::Rea, n, w, coeff).expect("indices in range");
            out = out.add(&mono).expect("same algebra");
        });
    }
    out
}

/// The k-th central element as a sum of truncated minors, one diagonal
/// minor per k-subset with the complement as auxiliary set.
pub fn ck_minors(n: u8, k: usize) -> NCPoly {
    let mut out = NCPoly::zero(Algebra::Rea, n);
    for i_set in subsets(n, k) {
        let u = complement(n, &i_set);
        out = out.add(&ptmin(n, &u, &i_set, &i_set)).expect("same algebra");
    }
    out
}

/// The k-th central element; the two computation paths must agree.
pub fn ck(n: u8, k: usize) -> NCPoly {
    let m = ck_minors(n, k);
    debug_assert_eq!(m, ck_direct(n, k));
    m
}

/// The k-th power trace: weighted trace of the k-th matrix power of the
/// generator matrix, in normal form.  `k = 0` gives the scalar weighted
/// dimension.
pub fn sk(engine: &PbwEngine, k: u32) -> Result<NCPoly, PbwError> {
    let a = QMatrix::generators(engine.n());
    Ok(a.pow_nf(k, engine)?.trace_q())
}

/// Generators whose commutator with `p` does not vanish, with residuals.
pub fn centrality_residuals(
    engine: &PbwEngine,
    p: &NCPoly,
) -> Result<Vec<(Gen, NCPoly)>, PbwError> {
    let mut out = Vec::new();
    for g in engine.gens() {
        let r = engine.commutator_nf(p, &engine.gen(g.row, g.col))?;
        if !r.is_zero() {
            out.push((g, r));
        }
    }
    Ok(out)
}

/// Matrix residual of the characteristic identity
/// `Σ_{k=0}^{n} (-q²)^{n-k} c_{n-k} A^k`; identically zero.
pub fn qch_residual(engine: &PbwEngine) -> Result<QMatrix, PbwError> {
    let n = engine.n();
    let a = QMatrix::generators(n);
    let mut acc = QMatrix::zero(n, 1);
    let mut pow = QMatrix::identity(n, 1);
    for k in 0..=u32::from(n) {
        let m = u32::from(n) - k;
        let mut coeff = RatFunc::q_pow(2 * i64::from(m));
        if m % 2 == 1 {
            coeff = coeff.neg();
        }
        let term = pow.scale_poly_nf(&ck(n, m as usize), engine)?.scale(&coeff);
        acc = acc.add(&term);
        if k < u32::from(n) {
            pow = pow.mul_nf(&a, engine)?;
        }
    }
    Ok(acc)
}

/// Exact solve of `rhs = Σ_j x_j·columns[j]` on word coefficients.
/// Returns the solution (free coordinates set to zero) and whether it is
/// unique, or `None` when the system is inconsistent.
pub fn solve_in_span(columns: &[NCPoly], rhs: &NCPoly) -> Option<(Vec<RatFunc>, bool)> {
    let m = columns.len();
    let mut words: Vec<Word> = Vec::new();
    for p in columns.iter().chain(core::iter::once(rhs)) {
        for (w, _) in p.terms() {
            if !words.contains(w) {
                words.push(w.clone());
            }
        }
    }
    let nrows = words.len();
    let mut mat: Vec<Vec<RatFunc>> = words
        .iter()
        .map(|w| {
            let mut row: Vec<RatFunc> = columns.iter().map(|p| p.coeff(w)).collect();
            row.push(rhs.coeff(w));
            row
        })
        .collect();
    let mut used = vec![false; nrows];
    let mut pivot_row: Vec<Option<usize>> = vec![None; m];
    let mut rank = 0;
    for col in 0..m {
        let Some(pr) = (0..nrows).find(|&r| !used[r] && !mat[r][col].is_zero()) else {
            continue;
        };
        used[pr] = true;
        pivot_row[col] = Some(pr);
        rank += 1;
        let inv = mat[pr][col].inv().expect("pivot is nonzero");
        for v in mat[pr].iter_mut() {
            *v = v.mul(&inv);
        }
        for r in 0..nrows {
            if r == pr || mat[r][col].is_zero() {
                continue;
            }
            let f = mat[r][col].clone();
            for c in 0..=m {
                let delta = f.mul(&mat[pr][c]);
                mat[r][c] = mat[r][c].sub(&delta);
            }
        }
    }
    for r in 0..nrows {
        if !used[r] && !mat[r][m].is_zero() {
            return None;
        }
    }
    let sol = (0..m)
        .map(|c| pivot_row[c].map(|r| mat[r][m].clone()).unwrap_or_else(RatFunc::zero))
        .collect();
    Some((sol, rank == m))
}

/// Closed-form coefficient of the degree-matched power-sum recursion
/// `[k]·c_k = Σ_{j=1}^{k} (−q^{-2})^{k-j}·c_{j-1}·s_{k-j+1}`, solved for
/// `c_k`: returns `(−q^{-2})^{k-j} / [k]`.
///
/// At `q = 1` this is `(−1)^{k-j}/k`, recovering the classical Girard
/// recursion `k·e_k = Σ_i (−1)^{i-1}·e_{k-i}·p_i`.
pub fn newton_coeff(k: u32, j: u32) -> RatFunc {
    debug_assert!(1 <= j && j <= k);
    let e = i64::from(k - j);
    RatFunc::neg_qinv_pow(e)
        .mul(&RatFunc::q_pow(-e))
        .mul(&RatFunc::qint(k).inv().expect("[k] is nonzero"))
}

/// Exact coefficient fits for the power-sum recursion.
///
/// Two shapes are attempted.  The degree-dropping shape
/// `[k]·s_k = Σ_{j=1}^{k} λ_j·c_{j-1}·s_{k-j}` pairs a degree-k left side
/// with degree-(k-1) products, so it admits no solution under either
/// reading of the degree-zero trace; both fits are reported rather than
/// assumed.  The degree-matched shape `c_k = Σ_{j=1}^{k} λ_j·c_{j-1}·s_{k-j+1}`
/// has the unique solution `λ_j = newton_coeff(k, j)`.
pub struct NewtonFit {
    pub k: u32,
    pub drop_s0_one: Option<Vec<RatFunc>>,
    pub drop_s0_qdim: Option<Vec<RatFunc>>,
    pub matched: Option<Vec<RatFunc>>,
    pub matched_unique: bool,
}

pub fn fit_newton(engine: &PbwEngine, k: u32) -> Result<NewtonFit, PbwError> {
    let n = engine.n();
    debug_assert!(1 <= k && k <= u32::from(n));
    let a = QMatrix::generators(n);
    let mut pow = QMatrix::identity(n, 1);
    let mut s: Vec<NCPoly> = Vec::new();
    for _ in 0..=k {
        s.push(pow.trace_q());
        pow = pow.mul_nf(&a, engine)?;
    }
    let c: Vec<NCPoly> = (0..=k as usize).map(|j| ck(n, j)).collect();

    let drop_cols = |s0: RatFunc| -> Result<Vec<NCPoly>, PbwError> {
        (1..=k as usize)
            .map(|j| {
                let tail = if k as usize == j { engine.scalar(s0.clone()) } else { s[k as usize - j].clone() };
                engine.mul_nf(&c[j - 1], &tail)
            })
            .collect()
    };
    let rhs_drop = s[k as usize].scale(&RatFunc::qint(k));
    let drop_one = solve_in_span(&drop_cols(RatFunc::one())?, &rhs_drop);
    let drop_qdim = solve_in_span(&drop_cols(qdim(n))?, &rhs_drop);

    let matched_cols: Vec<NCPoly> = (1..=k as usize)
        .map(|j| engine.mul_nf(&c[j - 1], &s[k as usize - j + 1]))
        .collect::<Result<_, _>>()?;
    let matched = solve_in_span(&matched_cols, &c[k as usize]);
    let (matched, matched_unique) = match matched {
        Some((sol, unique)) => (Some(sol), unique),
        None => (None, false),
    };
    Ok(NewtonFit {
        k,
        drop_s0_one: drop_one.map(|(sol, _)| sol),
        drop_s0_qdim: drop_qdim.map(|(sol, _)| sol),
        matched,
        matched_unique,
    })
}

/// Normal form of `c_k − Σ_j newton_coeff(k, j)·c_{j-1}·s_{k-j+1}`; zero.
pub fn newton_residual(engine: &PbwEngine, k: u32) -> Result<NCPoly, PbwError> {
    let n = engine.n();
    let mut acc = ck(n, k as usize);
    for j in 1..=k {
        let prod = engine.mul_nf(&ck(n, j as usize - 1), &sk(engine, k - j + 1)?)?;
        acc = acc.sub(&prod.scale(&newton_coeff(k, j))).expect("same algebra");
    }
    engine.normal_form(&acc)
}

/// Algebra map killing the off-diagonal generators: a word maps to 1 when
/// every letter is diagonal, else to 0.
pub fn counit(p: &NCPoly) -> RatFunc {
    p.fold_words(|w| {
        if w.0.iter().all(|g| g.row == g.col) {
            RatFunc::one()
        } else {
            RatFunc::zero()
        }
    })
}

/// Every straightening relation has the same counit on both sides; this is
/// what makes [`counit`] well defined on normal forms.
pub fn counit_respects_relations(engine: &PbwEngine) -> bool {
    engine.relations().iter().all(|(w, nf)| {
        let lhs = if w.0.iter().all(|g| g.row == g.col) { RatFunc::one() } else { RatFunc::zero() };
        lhs == counit(nf)
    })
}

/// Counit of the k-th central element by an independent path: the subset
/// sum `Σ_{#I=k} q^{-2 wt(I)}`.
pub fn counit_ck(n: u8, k: usize) -> RatFunc {
    let mut out = RatFunc::zero();
    for i_set in subsets(n, k) {
        out = out.add(&RatFunc::q_pow(-2 * wt(&i_set)));
    }
    out
}

/// Coefficients, by ascending power, of the signed characteristic
/// polynomial under the counit: the coefficient of `t^m` is
/// `(-1)^{n-m}·ε(c_{n-m})`.  The polynomial factors as
/// `Π_{i=1}^{n} (t − q^{-2i})`; the operator identity instead carries the
/// weights `(-q²)^{n-m}`, related to this one by substituting `q²t` for `t`.
pub fn counit_char_coeffs(n: u8) -> Vec<RatFunc> {
    (0..=n)
        .map(|m| {
            let e = counit(&ck(n, (n - m) as usize));
            if (n - m) % 2 == 1 {
                e.neg()
            } else {
                e
            }
        })
        .collect()
}

/// Reindex every generator by a fixed offset into an `n_target`-letter
/// algebra: `a^i_j ↦ a^{i+offset}_{j+offset}`.
pub fn shift_generators(p: &NCPoly, n_target: u8, offset: u8) -> Result<NCPoly, NcError> {
    let mut out = NCPoly::zero(p.algebra(), n_target);
    for (w, c) in p.terms() {
        let shifted = Word(w.0.iter().map(|g| Gen::new(g.row + offset, g.col + offset)).collect());
        out = out.add(&NCPoly::monomial(p.algebra(), n_target, shifted, c.clone())?)?;
    }
    Ok(out)
}

/// Quantum determinant of the trailing corner block on rows and columns
/// `k..n`: the top central element of the block reindexed from an
/// `(n-k+1)`-letter algebra.  It commutes with every corner generator.
pub fn corner_det(n: u8, k: u8) -> NCPoly {
    debug_assert!(1 <= k && k <= n);
    let m = n - k + 1;
    shift_generators(&ck(m, m as usize), n, k - 1).expect("indices stay in range")
}

/// The two sides of the clique decomposition at level `k` over `(I, J)`:
/// the truncated-minor sum, and the minor preimages weighted by
/// `(-q)` to the length of the order-preserving bijection relative to the
/// complement of each enlarged row set.  The sides are equal.
pub fn clique_sum_sides(n: u8, k: usize, i_set: &[u8], j_set: &[u8]) -> (NCPoly, NCPoly) {
    let mut lhs = NCPoly::zero(Algebra::Rea, n);
    let mut rhs = NCPoly::zero(Algebra::Rea, n);
    for (ip, jp) in cliques(n, k, i_set, j_set) {
        let mut uni: Vec<u8> = i_set.iter().chain(ip.iter()).copied().collect();
        uni.sort_unstable();
        uni.dedup();
        let u = complement(n, &uni);
        lhs = lhs.add(&ptmin(n, &u, &ip, &jp)).expect("same algebra");
        let tau = Bij::order_preserving(&ip, &jp);
        let c = RatFunc::neg_q_pow(tau.ell_u(&u) as i64);
        rhs = rhs.add(&minor_preimage(n, &ip, &jp).scale(&c)).expect("same algebra");
    }
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::parse;
    use crate::scalars::{rat, Rational};

    fn rea(n: u8, s: &str) -> NCPoly {
        parse(s, Algebra::Rea, n).expect("parsable")
    }

    #[test]
    fn generator_matrix_and_trace() {
        let eng = PbwEngine::new(Algebra::Rea, 2);
        let a = QMatrix::generators(2);
        assert_eq!(a.pow_nf(0, &eng).unwrap(), QMatrix::identity(2, 1));
        assert_eq!(a.pow_nf(1, &eng).unwrap(), a.normal_form(&eng).unwrap());
        assert_eq!(QMatrix::identity(2, 1).trace_q(), rea(2, "q^-2 + q^-4"));
        assert_eq!(a.trace_q(), rea(2, "q^-2*a[1,1] + q^-4*a[2,2]"));
        let sq = a.pow_nf(2, &eng).unwrap();
        let direct = eng
            .normal_form(&rea(2, "a[1,1]*a[1,1] + a[1,2]*a[2,1]"))
            .unwrap();
        assert_eq!(sq.entry(0, 0), direct);
        // one-letter algebra: the square trace is q^-2 a^2
        let eng1 = PbwEngine::new(Algebra::Rea, 1);
        assert_eq!(sk(&eng1, 2).unwrap(), rea(1, "q^-2*a[1,1]*a[1,1]"));
    }

    #[test]
    fn printed_central_elements() {
        assert_eq!(ck(2, 1), rea(2, "q^-2*a[1,1] + q^-4*a[2,2]"));
        assert_eq!(ck(2, 2), rea(2, "q^-6*(a[1,1]*a[2,2] - q^2*a[1,2]*a[2,1])"));
        assert_eq!(ck(3, 1), rea(3, "q^-2*a[1,1] + q^-4*a[2,2] + q^-6*a[3,3]"));
        assert_eq!(
            ck(3, 2),
            rea(
                3,
                "q^-6*(a[1,1]*a[2,2] - q^2*a[1,2]*a[2,1]) + q^-8*(a[1,1]*a[3,3] - q^4*a[1,3]*a[3,1]) \
                 + q^-10*(a[2,2]*a[3,3] - q^2*a[2,3]*a[3,2])"
            )
        );
        assert_eq!(
            ck(3, 3),
            rea(
                3,
                "q^-12*(a[1,1]*a[2,2]*a[3,3] - q^2*a[1,1]*a[2,3]*a[3,2] - q^2*a[1,2]*a[2,1]*a[3,3] \
                 - q^4*a[1,3]*a[2,2]*a[3,1] + q^4*a[1,2]*a[2,3]*a[3,1] + q^3*a[1,3]*a[2,1]*a[3,2])"
            )
        );
    }

    #[test]
    fn central_element_paths_agree() {
        for n in 1..=4u8 {
            for k in 0..=n as usize {
                assert_eq!(ck_direct(n, k), ck_minors(n, k), "n={} k={}", n, k);
            }
        }
    }

    #[test]
    fn power_traces_match_first_central_element() {
        for n in 1..=4u8 {
            let eng = PbwEngine::new(Algebra::Rea, n);
            assert_eq!(sk(&eng, 1).unwrap(), ck(n, 1));
            assert_eq!(sk(&eng, 0).unwrap(), eng.scalar(qdim(n)));
        }
    }

    #[test]
    fn central_elements_commute_with_generators() {
        for n in 2..=3u8 {
            let eng = PbwEngine::new(Algebra::Rea, n);
            for k in 1..=n as usize {
                let res = centrality_residuals(&eng, &ck(n, k)).unwrap();
                assert!(res.is_empty(), "c n={} k={} fails at {:?}", n, k, res.first());
            }
            for k in 1..=3u32 {
                let res = centrality_residuals(&eng, &sk(&eng, k).unwrap()).unwrap();
                assert!(res.is_empty(), "s n={} k={} fails at {:?}", n, k, res.first());
            }
        }
    }

    #[test]
    fn perturbed_element_is_not_central() {
        let eng = PbwEngine::new(Algebra::Rea, 2);
        let bad = ck(2, 1).add(&rea(2, "q*a[1,1]")).unwrap();
        assert!(!centrality_residuals(&eng, &bad).unwrap().is_empty());
    }

    #[test]
    fn characteristic_identity_vanishes() {
        for n in 1..=3u8 {
            let eng = PbwEngine::new(Algebra::Rea, n);
            let r = qch_residual(&eng).unwrap();
            assert!(r.is_zero(), "n={} residual {:?}", n, r.entries.iter().next());
        }
    }

    #[test]
    fn span_solver_handles_rank_cases() {
        let one = rea(2, "a[1,1]");
        let two = rea(2, "a[2,2]");
        let both = rea(2, "a[1,1] + 2*a[2,2]");
        let (sol, unique) = solve_in_span(&[one.clone(), two.clone()], &both).unwrap();
        assert!(unique);
        assert_eq!(sol[0], RatFunc::one());
        assert_eq!(sol[1], RatFunc::from_int(2));
        // inconsistent target
        assert!(solve_in_span(&[one.clone()], &two).is_none());
        // dependent columns still solve, flagged as non-unique
        let (_, unique) = solve_in_span(&[one.clone(), one.clone()], &one).unwrap();
        assert!(!unique);
    }

    #[test]
    fn power_sum_recursion_fits() {
        for n in 2..=4u8 {
            let eng = PbwEngine::new(Algebra::Rea, n);
            for k in 1..=3u32.min(u32::from(n)) {
                let fit = fit_newton(&eng, k).unwrap();
                // degree k left side cannot land in the degree k-1 span
                assert!(fit.drop_s0_one.is_none(), "n={} k={}", n, k);
                assert!(fit.drop_s0_qdim.is_none(), "n={} k={}", n, k);
                let sol = fit.matched.expect("degree-matched shape solves");
                assert!(fit.matched_unique, "n={} k={}", n, k);
                for j in 1..=k {
                    assert_eq!(
                        sol[j as usize - 1],
                        newton_coeff(k, j),
                        "n={} k={} j={}",
                        n,
                        k,
                        j
                    );
                }
                assert!(newton_residual(&eng, k).unwrap().is_zero());
            }
        }
        // q = 1 limit of the coefficients is the classical Girard recursion
        for k in 1..=4u32 {
            for j in 1..=k {
                let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
                assert_eq!(
                    newton_coeff(k, j).eval_q1().unwrap(),
                    Rational::new(sign.into(), i64::from(k).into())
                );
            }
        }
    }

    #[test]
    fn perturbed_recursion_has_no_solution() {
        let n = 2u8;
        let eng = PbwEngine::new(Algebra::Rea, n);
        let k = 2usize;
        let s1 = sk(&eng, 1).unwrap();
        let s2 = sk(&eng, 2).unwrap();
        let bad_c1 = ck(n, 1).add(&rea(n, "q^5*a[1,2]")).unwrap();
        let cols = vec![s2.clone(), eng.mul_nf(&bad_c1, &s1).unwrap()];
        assert!(solve_in_span(&cols, &ck(n, k)).is_none());
    }

    #[test]
    fn counit_is_an_algebra_map() {
        assert_eq!(counit(&rea(2, "a[1,2]*a[2,1]")), RatFunc::zero());
        assert_eq!(counit(&rea(2, "3*a[1,1]*a[2,2] + q*a[1,1]")), RatFunc::from_int(3).add(&RatFunc::q_pow(1)));
        for n in 1..=4u8 {
            for alg in [Algebra::Rea, Algebra::Frt] {
                let eng = PbwEngine::new(alg, n);
                assert!(counit_respects_relations(&eng), "{:?} n={}", alg, n);
            }
        }
    }

    #[test]
    fn counit_char_poly_factors() {
        for n in 1..=4u8 {
            for k in 0..=n as usize {
                assert_eq!(counit(&ck(n, k)), counit_ck(n, k), "n={} k={}", n, k);
            }
            // assemble Π (t - q^{-2i}) by convolution, ascending powers of t
            let mut poly: Vec<RatFunc> = vec![RatFunc::one()];
            for i in 1..=i64::from(n) {
                let root = RatFunc::q_pow(-2 * i);
                let mut next: Vec<RatFunc> = vec![RatFunc::zero(); poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d + 1] = next[d + 1].add(c);
                    next[d] = next[d].sub(&c.mul(&root));
                }
                poly = next;
            }
            assert_eq!(counit_char_coeffs(n), poly, "n={}", n);
        }
    }

    #[test]
    fn corner_blocks_close_and_centralize() {
        let n = 3u8;
        let eng = PbwEngine::new(Algebra::Rea, n);
        for k in 1..=n {
            // closure: products of corner generators stay in the corner
            for g in eng.gens().iter().filter(|g| g.row >= k && g.col >= k) {
                for h in eng.gens().iter().filter(|g| g.row >= k && g.col >= k) {
                    let p = eng
                        .mul_nf(&eng.gen(g.row, g.col), &eng.gen(h.row, h.col))
                        .unwrap();
                    for (w, _) in p.terms() {
                        assert!(
                            w.0.iter().all(|x| x.row >= k && x.col >= k),
                            "k={} {:?}*{:?} leaves the corner",
                            k,
                            g,
                            h
                        );
                    }
                }
            }
            let d = corner_det(n, k);
            for g in eng.gens().iter().filter(|g| g.row >= k && g.col >= k) {
                let r = eng.commutator_nf(&d, &eng.gen(g.row, g.col)).unwrap();
                assert!(r.is_zero(), "k={} generator {:?}", k, g);
            }
        }
        assert_eq!(corner_det(n, 1), ck(n, n as usize));
        assert_eq!(corner_det(3, 3), rea(3, "q^-2*a[3,3]"));
    }

    #[test]
    fn clique_sums_collapse_to_minor_sums() {
        for n in 2..=3u8 {
            for k in 1..=n as usize {
                // empty base pair: both sides are the k-th central element
                let (lhs, rhs) = clique_sum_sides(n, k, &[], &[]);
                assert_eq!(lhs, ck(n, k));
                assert_eq!(lhs, rhs, "n={} k={} empty base", n, k);
                for m in 1..k {
                    for i_set in subsets(n, m) {
                        for j_set in subsets(n, m) {
                            let (lhs, rhs) = clique_sum_sides(n, k, &i_set, &j_set);
                            assert_eq!(lhs, rhs, "n={} k={} I={:?} J={:?}", n, k, i_set, j_set);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn classical_limit_is_principal_minor_sum() {
        // at q = 1 the central element degenerates to the subset sum of
        // ordinary principal minors of a commuting matrix of indeterminates
        for n in 2..=3u8 {
            for k in 1..=n as usize {
                let classical = ck(n, k).eval_q1().unwrap();
                let mut got: BTreeMap<Vec<(u8, u8)>, Rational> = BTreeMap::new();
                for (w, c) in classical {
                    let mut key: Vec<(u8, u8)> = w.0.iter().map(|g| (g.row, g.col)).collect();
                    key.sort_unstable();
                    let e = got.entry(key).or_insert_with(|| rat(0));
                    *e = &*e + &c;
                }
                got.retain(|_, v| *v != rat(0));
                let mut want: BTreeMap<Vec<(u8, u8)>, Rational> = BTreeMap::new();
                for i_set in subsets(n, k) {
                    let mut arr = i_set.clone();
                    permute(&mut arr, 0, &mut |cols| {
                        let mut full: Vec<u8> = (1..=n).collect();
                        for (t, &i) in i_set.iter().enumerate() {
                            full[i as usize - 1] = cols[t];
                        }
                        let sign = if inversions(&full) % 2 == 0 { rat(1) } else { rat(-1) };
                        let mut key: Vec<(u8, u8)> =
                            i_set.iter().zip(cols.iter()).map(|(&r, &c)| (r, c)).collect();
                        key.sort_unstable();
                        let e = want.entry(key).or_insert_with(|| rat(0));
                        *e = &*e + &sign;
                    });
                }
                want.retain(|_, v| *v != rat(0));
                assert_eq!(got, want, "n={} k={}", n, k);
            }
        }
    }

    #[test]
    fn central_monomials_are_independent() {
        // products Π c_k^{e_k} of total degree ≤ 3 stay linearly independent
        for n in 2..=3u8 {
            let eng = PbwEngine::new(Algebra::Rea, n);
            let mut monos: Vec<NCPoly> = Vec::new();
            let tuples: Vec<Vec<u32>> = match n {
                2 => vec![
                    vec![0, 0],
                    vec![1, 0],
                    vec![2, 0],
                    vec![3, 0],
                    vec![0, 1],
                    vec![1, 1],
                ],
                _ => vec![
                    vec![0, 0, 0],
                    vec![1, 0, 0],
                    vec![2, 0, 0],
                    vec![3, 0, 0],
                    vec![0, 1, 0],
                    vec![1, 1, 0],
                    vec![0, 0, 1],
                ],
            };
            for t in &tuples {
                let mut p = eng.one();
                for (idx, &e) in t.iter().enumerate() {
                    for _ in 0..e {
                        p = eng.mul_nf(&p, &ck(n, idx + 1)).unwrap();
                    }
                }
                monos.push(p);
            }
            // the zero vector is in the span only trivially: full column rank
            let zero = eng.zero();
            let (sol, unique) = solve_in_span(&monos, &zero).unwrap();
            assert!(unique, "n={}", n);
            assert!(sol.iter().all(|c| c.is_zero()));
        }
    }
}
