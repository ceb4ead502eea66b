//! The R-matrix of the vector representation and its Schur-Weyl action.
//!
//! Operators on tensor powers of the N-dimensional vector space are stored
//! sparsely: entry `(row, col)` is the coefficient of the output basis vector
//! `row` in the image of the input basis vector `col`, where a basis vector
//! of the k-fold tensor power is encoded as a big-endian base-N integer over
//! 0-based digits.
//!
//! On two slots the braiding is
//!
//! ```text
//! R(v_i ⊗ v_i) = q v_i ⊗ v_i
//! R(v_i ⊗ v_j) = v_i ⊗ v_j + (q - q^{-1}) v_j ⊗ v_i (i < j)
//! R(v_i ⊗ v_j) = v_i ⊗ v_j                          (i > j)
//! ```
//!
//! `flip ∘ R` on adjacent slots generates a Hecke algebra action with
//! eigenvalues `q` and `-q^{-1}`; the antisymmetrizer of level k acts with
//! rank `C(N, k)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::hecke::HeckeElt;
use crate::scalars::RatFunc;

/// Sparse linear operator on the k-th tensor power of an N-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorOp {
    n: u8,
    slots: u8,
    entries: BTreeMap<(u32, u32), RatFunc>,
}

/// Pack 0-based digits into a big-endian base-n index.
pub fn pack(n: u8, digits: &[u8]) -> u32 {
    digits.iter().fold(0u32, |acc, &d| {
        debug_assert!(d < n);
        acc * n as u32 + d as u32
    })
}

/// Unpack a base-n index into `slots` digits.
pub fn unpack(n: u8, slots: u8, mut idx: u32) -> Vec<u8> {
    let mut out = alloc::vec![0u8; slots as usize];
    for t in (0..slots as usize).rev() {
        out[t] = (idx % n as u32) as u8;
        idx /= n as u32;
    }
    debug_assert_eq!(idx, 0);
    out
}

impl TensorOp {
    pub fn zero(n: u8, slots: u8) -> Self {
        TensorOp { n, slots, entries: BTreeMap::new() }
    }

    pub fn identity(n: u8, slots: u8) -> Self {
        let mut op = Self::zero(n, slots);
        for idx in 0..op.dim() {
            op.entries.insert((idx, idx), RatFunc::one());
        }
        op
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

    pub fn entry(&self, row: u32, col: u32) -> RatFunc {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn set_entry(&mut self, row: u32, col: u32, c: RatFunc) {
        if c.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), c);
        }
    }

    pub fn add_entry(&mut self, row: u32, col: u32, c: &RatFunc) {
        let v = self.entry(row, col).add(c);
        self.set_entry(row, col, v);
    }

    /// Nonzero entries as `((row, col), coefficient)`, in index order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &RatFunc)> {
        self.entries.iter()
    }

    /// Two-slot matrix element with 1-based vector labels: the coefficient
    /// of `v_{out1} ⊗ v_{out2}` in the image of `v_{in1} ⊗ v_{in2}`.
    pub fn coeff_io(&self, in1: u8, in2: u8, out1: u8, out2: u8) -> RatFunc {
        debug_assert_eq!(self.slots, 2);
        self.entry(pack(self.n, &[out1 - 1, out2 - 1]), pack(self.n, &[in1 - 1, in2 - 1]))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.n == other.n && self.slots == other.slots);
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_entry(r, c, v);
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
        TensorOp {
            n: self.n,
            slots: self.slots,
            entries: self.entries.iter().map(|(&k, v)| (k, v.mul(c))).collect(),
        }
    }

    /// Operator composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert!(self.n == other.n && self.slots == other.slots);
        // group self's entries by column for the contraction
        let mut by_col: BTreeMap<u32, Vec<(u32, &RatFunc)>> = BTreeMap::new();
        for (&(r, c), v) in &self.entries {
            by_col.entry(c).or_default().push((r, v));
        }
        let mut out = Self::zero(self.n, self.slots);
        for (&(mid, col), v) in &other.entries {
            if let Some(rows) = by_col.get(&mid) {
                for (r, w) in rows {
                    out.add_entry(*r, col, &w.mul(v));
                }
            }
        }
        out
    }

    /// Transpose on the second slot of a two-slot operator.
    pub fn transpose_second(&self) -> Self {
        debug_assert_eq!(self.slots, 2);
        let n = self.n as u32;
        let mut out = Self::zero(self.n, 2);
        for (&(r, c), v) in &self.entries {
            let (a, b) = (r / n, r % n);
            let (s, t) = (c / n, c % n);
            out.add_entry(a * n + t, s * n + b, v);
        }
        out
    }

    /// Dense Gaussian inverse; errors are impossible for the operators built
    /// here, so a singular input panics.
    pub fn inverse(&self) -> Self {
        let dim = self.dim() as usize;
        let mut rows: Vec<BTreeMap<u32, RatFunc>> = alloc::vec![BTreeMap::new(); dim];
        for (&(r, c), v) in &self.entries {
            rows[r as usize].insert(c, v.clone());
        }
        let mut aug: Vec<BTreeMap<u32, RatFunc>> =
            (0..dim).map(|i| BTreeMap::from([(i as u32, RatFunc::one())])).collect();
        for col in 0..dim as u32 {
            let piv = (col as usize..dim)
                .find(|&r| rows[r].get(&col).is_some_and(|v| !v.is_zero()))
                .expect("operator is invertible");
            rows.swap(col as usize, piv);
            aug.swap(col as usize, piv);
            let inv = rows[col as usize][&col].inv().expect("nonzero pivot");
            scale_row(&mut rows[col as usize], &inv);
            scale_row(&mut aug[col as usize], &inv);
            for r in 0..dim {
                if r == col as usize {
                    continue;
                }
                if let Some(f) = rows[r].get(&col).cloned() {
                    if f.is_zero() {
                        continue;
                    }
                    let (prow, paug) = (rows[col as usize].clone(), aug[col as usize].clone());
                    axpy_row(&mut rows[r], &prow, &f);
                    axpy_row(&mut aug[r], &paug, &f);
                }
            }
        }
        let mut out = Self::zero(self.n, self.slots);
        for (r, row) in aug.into_iter().enumerate() {
            for (c, v) in row {
                out.set_entry(r as u32, c, v);
            }
        }
        out
    }

    /// Embed a two-slot operator into `slots` tensor factors, acting on the
    /// (1-based) positions `a < b` and identically elsewhere.
    pub fn lift(&self, slots: u8, a: usize, b: usize) -> Self {
        debug_assert_eq!(self.slots, 2);
        debug_assert!(1 <= a && a < b && b <= slots as usize);
        let n = self.n;
        let mut out = TensorOp::zero(n, slots);
        let dim = out.dim();
        for col in 0..dim {
            let digits = unpack(n, slots, col);
            let sub_in = pack(n, &[digits[a - 1], digits[b - 1]]);
            for (&(r2, c2), v) in &self.entries {
                if c2 != sub_in {
                    continue;
                }
                let sub_out = unpack(n, 2, r2);
                let mut dd = digits.clone();
                dd[a - 1] = sub_out[0];
                dd[b - 1] = sub_out[1];
                out.add_entry(pack(n, &dd), col, v);
            }
        }
        out
    }

    /// Rank over the rational-function field, by Gaussian elimination on the
    /// sparse rows.
    pub fn rank(&self) -> usize {
        let mut rows: BTreeMap<u32, BTreeMap<u32, RatFunc>> = BTreeMap::new();
        for (&(r, c), v) in &self.entries {
            rows.entry(r).or_default().insert(c, v.clone());
        }
        let mut rows: Vec<BTreeMap<u32, RatFunc>> = rows.into_values().collect();
        let mut rank = 0;
        while let Some(best) = (rank..rows.len()).min_by_key(|&i| rows[i].len()) {
            rows.swap(rank, best);
            let (&piv_col, piv_val) = rows[rank].iter().next().expect("rows are nonempty");
            let inv = piv_val.inv().expect("nonzero leading entry");
            let prow: BTreeMap<u32, RatFunc> = {
                scale_row(&mut rows[rank], &inv);
                rows[rank].clone()
            };
            let mut r = rank + 1;
            while r < rows.len() {
                if let Some(f) = rows[r].get(&piv_col).cloned() {
                    axpy_row(&mut rows[r], &prow, &f);
                }
                if rows[r].is_empty() {
                    rows.swap_remove(r);
                } else {
                    r += 1;
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}

fn scale_row(row: &mut BTreeMap<u32, RatFunc>, f: &RatFunc) {
    for v in row.values_mut() {
        *v = v.mul(f);
    }
}

/// `row -= f * pivot`, dropping cancellations.
fn axpy_row(row: &mut BTreeMap<u32, RatFunc>, pivot: &BTreeMap<u32, RatFunc>, f: &RatFunc) {
    for (c, pv) in pivot {
        let cur = row.get(c).cloned().unwrap_or_else(RatFunc::zero);
        let nv = cur.sub(&f.mul(pv));
        if nv.is_zero() {
            row.remove(c);
        } else {
            row.insert(*c, nv);
        }
    }
}

/// The braiding on two slots.
pub fn build_r(n: u8) -> TensorOp {
    let mut op = TensorOp::zero(n, 2);
    let qq = RatFunc::q_minus_qinv();
    for i in 0..n {
        for j in 0..n {
            let col = pack(n, &[i, j]);
            if i == j {
                op.add_entry(col, col, &RatFunc::q_pow(1));
            } else {
                op.add_entry(col, col, &RatFunc::one());
                if i < j {
                    op.add_entry(pack(n, &[j, i]), col, &qq);
                }
            }
        }
    }
    op
}

/// The vector flip `v ⊗ w -> w ⊗ v`.
pub fn build_flip(n: u8) -> TensorOp {
    let mut op = TensorOp::zero(n, 2);
    for i in 0..n {
        for j in 0..n {
            op.add_entry(pack(n, &[j, i]), pack(n, &[i, j]), &RatFunc::one());
        }
    }
    op
}

/// `R21 = flip ∘ R ∘ flip`.
pub fn build_r21(n: u8) -> TensorOp {
    let f = build_flip(n);
    f.compose(&build_r(n)).compose(&f)
}

/// The second-transpose-inverse dual braiding `((R^{t2})^{-1})^{t2}`, in
/// closed form: `q^{-1}` on repeated indices, `1` off-diagonal, and exchange
/// terms `-(q - q^{-1}) q^{-2(j-i)}` sending `v_i ⊗ v_j` to `v_j ⊗ v_i` for
/// `i < j`.
pub fn build_rtilde(n: u8) -> TensorOp {
    let mut op = TensorOp::zero(n, 2);
    let qq = RatFunc::q_minus_qinv();
    for i in 0..n {
        for j in 0..n {
            let col = pack(n, &[i, j]);
            if i == j {
                op.add_entry(col, col, &RatFunc::q_pow(-1));
            } else {
                op.add_entry(col, col, &RatFunc::one());
                if i < j {
                    let c = qq.neg().mul(&RatFunc::q_pow(-2 * (j as i64 - i as i64)));
                    op.add_entry(pack(n, &[j, i]), col, &c);
                }
            }
        }
    }
    op
}

/// Schur-Weyl image of the generator T_i on `slots` tensor factors:
/// `flip ∘ R` acting on slots `i, i+1`.
pub fn rho_ti(n: u8, slots: u8, i: usize) -> TensorOp {
    build_flip(n).compose(&build_r(n)).lift(slots, i, i + 1)
}

/// Schur-Weyl image of a Hecke element on `slots` tensor factors.
pub fn rho(n: u8, slots: u8, h: &HeckeElt) -> TensorOp {
    debug_assert_eq!(h.n(), slots);
    let mut out = TensorOp::zero(n, slots);
    for (w, c) in h.terms() {
        let mut acc = TensorOp::identity(n, slots);
        for i in w.reduced_word() {
            acc = acc.compose(&rho_ti(n, slots, i));
        }
        out = out.add(&acc.scale(c));
    }
    out
}
