//! Quantum minors over row and column subsets.
//!
//! Two combinatorial families are built here, both normalized by the weight
//! prefactor `q^{-wt(I)-wt(J)}`:
//!
//! * column-determinant minors in the quadratic exchange algebra, summing
//!   `(-q)^{inversions}` over permutations of the column set;
//! * truncated minors in the reflection algebra, summing over all bijections
//!   `I -> J` weighted by the aux-set length statistic and exceedance.
//!
//! Both satisfy a first-row Laplace expansion, exposed separately so the
//! closed sums and the recursions can be compared term by term.

use alloc::vec::Vec;

use crate::ncpoly::{Algebra, Gen, NCPoly, Word};
use crate::qcomb::{bijections, gamma, subsets, wt};
use crate::scalars::RatFunc;

fn weight_prefactor(i_set: &[u8], j_set: &[u8]) -> RatFunc {
    RatFunc::q_pow(-wt(i_set) - wt(j_set))
}

/// Column-determinant minor on rows `I` and columns `J` in the exchange
/// algebra: `q^{-wt(I)-wt(J)} sum_s (-q)^{l(s)} x^{i_1}_{s(j_1)} ...`.
pub fn dlmin(n: u8, i_set: &[u8], j_set: &[u8]) -> NCPoly {
    debug_assert_eq!(i_set.len(), j_set.len());
    let mut out = NCPoly::zero(Algebra::Frt, n);
    let pre = weight_prefactor(i_set, j_set);
    for sigma in bijections(j_set, j_set) {
        let c = pre.mul(&RatFunc::neg_q_pow(sigma.ell_u(&[]) as i64));
        let letters: Vec<Gen> = i_set
            .iter()
            .zip(j_set.iter())
            .map(|(&r, &j)| Gen { row: r, col: sigma.apply(j) })
            .collect();
        let mono = NCPoly::monomial(Algebra::Frt, n, Word(letters), c).expect("indices in range");
        out = out.add(&mono).expect("same algebra");
    }
    out
}

/// Truncated minor on rows `I`, columns `J`, and aux set `U` in the
/// reflection algebra: bijections weighted by `(-q)^{l_U} q^{e}`.
pub fn ptmin(n: u8, u_set: &[u8], i_set: &[u8], j_set: &[u8]) -> NCPoly {
    debug_assert_eq!(i_set.len(), j_set.len());
    let mut out = NCPoly::zero(Algebra::Rea, n);
    let pre = weight_prefactor(i_set, j_set);
    for tau in bijections(i_set, j_set) {
        let c = pre
            .mul(&RatFunc::neg_q_pow(tau.ell_u(u_set) as i64))
            .mul(&RatFunc::q_pow(tau.exceedance() as i64));
        let letters: Vec<Gen> =
            i_set.iter().map(|&r| Gen { row: r, col: tau.apply(r) }).collect();
        let mono = NCPoly::monomial(Algebra::Rea, n, Word(letters), c).expect("indices in range");
        out = out.add(&mono).expect("same algebra");
    }
    out
}

/// Sum of the diagonal column-determinant minors over all k-subsets; these
/// are the coinvariants of the adjoint coaction.
pub fn dl_coinv(n: u8, k: usize) -> NCPoly {
    let mut out = NCPoly::zero(Algebra::Frt, n);
    for i_set in subsets(n, k) {
        out = out.add(&dlmin(n, &i_set, &i_set)).expect("same algebra");
    }
    out
}

/// First-row Laplace expansion of `dlmin`:
/// `sum_m (-q)^{m-1} q^{-i_1-j_m} x^{i_1}_{j_m} dlmin(I \ i_1, J \ j_m)`.
pub fn row_expand_dl(n: u8, i_set: &[u8], j_set: &[u8]) -> NCPoly {
    debug_assert!(!i_set.is_empty());
    let mut out = NCPoly::zero(Algebra::Frt, n);
    let i1 = i_set[0];
    let rest_i: Vec<u8> = i_set[1..].to_vec();
    for (m, &jm) in j_set.iter().enumerate() {
        let rest_j: Vec<u8> = j_set.iter().copied().filter(|&x| x != jm).collect();
        let c = RatFunc::neg_q_pow(m as i64).mul(&RatFunc::q_pow(-(i1 as i64) - jm as i64));
        let head = NCPoly::monomial(
            Algebra::Frt,
            n,
            Word::single(Gen { row: i1, col: jm }),
            c,
        )
        .expect("indices in range");
        out = out
            .add(&head.mul(&dlmin(n, &rest_i, &rest_j)).expect("same algebra"))
            .expect("same algebra");
    }
    out
}

/// First-row Laplace expansion of `ptmin`:
/// `sum_m (-q)^{m-1+gamma_U(m)} q^{theta(j_m-i_1)-i_1-j_m} a^{i_1}_{j_m} ptmin_U(...)`.
pub fn row_expand_pt(n: u8, u_set: &[u8], i_set: &[u8], j_set: &[u8]) -> NCPoly {
    debug_assert!(!i_set.is_empty());
    let mut out = NCPoly::zero(Algebra::Rea, n);
    let i1 = i_set[0];
    let rest_i: Vec<u8> = i_set[1..].to_vec();
    for m in 1..=j_set.len() {
        let jm = j_set[m - 1];
        let rest_j: Vec<u8> = j_set.iter().copied().filter(|&x| x != jm).collect();
        let theta = i64::from(jm > i1);
        let c = RatFunc::neg_q_pow(m as i64 - 1 + gamma(u_set, i_set, j_set, m) as i64)
            .mul(&RatFunc::q_pow(theta - i1 as i64 - jm as i64));
        let head = NCPoly::monomial(
            Algebra::Rea,
            n,
            Word::single(Gen { row: i1, col: jm }),
            c,
        )
        .expect("indices in range");
        out = out
            .add(&head.mul(&ptmin(n, u_set, &rest_i, &rest_j)).expect("same algebra"))
            .expect("same algebra");
    }
    out
}
