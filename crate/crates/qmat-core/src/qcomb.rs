//! Combinatorics of index sets and bijections between them.
//!
//! Sets are strictly increasing `Vec<u8>` over `1..=n`. A [`Bij`] carries a
//! sorted domain and the aligned image values; the order-preserving bijection
//! between two sets is [`Bij::order_preserving`]. The statistics here
//! (weight, length relative to an auxiliary set, exceedance, the `gamma`,
//! `X`, `Y` exponents) drive the minor expansions and the clique sums; the
//! tests pin down their additivity and telescoping behaviour exhaustively at
//! small `n`.

use alloc::vec::Vec;

/// Sum of the elements of a set.
pub fn wt(set: &[u8]) -> i64 {
    set.iter().map(|&x| x as i64).sum()
}

/// Inversions of a permutation in one-line notation (`perm[i]` is the image
/// of `i+1`).
pub fn perm_length(perm: &[u8]) -> u64 {
    let mut inv = 0;
    for a in 0..perm.len() {
        for b in (a + 1)..perm.len() {
            if perm[a] > perm[b] {
                inv += 1;
            }
        }
    }
    inv
}

/// Number of positions with `perm[i] > i+1`.
pub fn perm_exceedance(perm: &[u8]) -> u64 {
    perm.iter()
        .enumerate()
        .filter(|(i, &v)| v as usize > i + 1)
        .count() as u64
}

/// A bijection between two equal-size subsets of `[n]`, stored as a sorted
/// domain with aligned images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bij {
    dom: Vec<u8>,
    img: Vec<u8>,
}

impl Bij {
    /// `dom` must be strictly increasing; `img` holds the image of each
    /// domain element in order and must be duplicate-free.
    pub fn new(dom: Vec<u8>, img: Vec<u8>) -> Self {
        debug_assert_eq!(dom.len(), img.len());
        debug_assert!(dom.windows(2).all(|w| w[0] < w[1]));
        Bij { dom, img }
    }

    /// The unique order-preserving bijection between two sorted sets.
    pub fn order_preserving(dom: &[u8], cod: &[u8]) -> Self {
        debug_assert_eq!(dom.len(), cod.len());
        Bij { dom: dom.to_vec(), img: cod.to_vec() }
    }

    pub fn dom(&self) -> &[u8] {
        &self.dom
    }

    pub fn img(&self) -> &[u8] {
        &self.img
    }

    pub fn apply(&self, a: u8) -> u8 {
        let i = self.dom.iter().position(|&x| x == a).expect("element of the domain");
        self.img[i]
    }

    /// Number of domain elements mapped strictly above themselves.
    pub fn exceedance(&self) -> u64 {
        self.dom
            .iter()
            .zip(&self.img)
            .filter(|(&a, &b)| b > a)
            .count() as u64
    }

    /// Length relative to an auxiliary set `u_set`: extend by the identity on
    /// `u_set`, then count inversions over all pairs in the extended domain.
    /// `u_set` must be disjoint from the domain.
    pub fn ell_u(&self, u_set: &[u8]) -> u64 {
        debug_assert!(u_set.iter().all(|u| !self.dom.contains(u)));
        let mut pts: Vec<(u8, u8)> = self
            .dom
            .iter()
            .zip(&self.img)
            .map(|(&a, &b)| (a, b))
            .chain(u_set.iter().map(|&u| (u, u)))
            .collect();
        pts.sort_unstable();
        let vals: Vec<u8> = pts.iter().map(|&(_, v)| v).collect();
        perm_length(&vals)
    }
}

/// All bijections from `dom` onto `cod` (equal sizes), enumerated by
/// permuting the image values.
pub fn bijections(dom: &[u8], cod: &[u8]) -> Vec<Bij> {
    debug_assert_eq!(dom.len(), cod.len());
    let mut out = Vec::new();
    let mut img = cod.to_vec();
    permute(&mut img, 0, &mut |arr| {
        out.push(Bij::new(dom.to_vec(), arr.to_vec()));
    });
    out
}

fn permute(arr: &mut [u8], k: usize, f: &mut impl FnMut(&[u8])) {
    if k == arr.len() {
        f(arr);
        return;
    }
    for i in k..arr.len() {
        arr.swap(k, i);
        permute(arr, k + 1, f);
        arr.swap(k, i);
    }
}

/// All k-element subsets of `1..=n`, each sorted, in lexicographic order.
pub fn subsets(n: u8, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: u8, n: u8, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for v in start..=n {
            if (n - v + 1) as usize >= need {
                cur.push(v);
                rec(v + 1, n, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

/// Complement of a sorted set inside `1..=n`.
pub fn complement(n: u8, set: &[u8]) -> Vec<u8> {
    (1..=n).filter(|v| !set.contains(v)).collect()
}

/// Sorted union with one extra element (which must be absent).
pub fn with_elem(set: &[u8], x: u8) -> Vec<u8> {
    debug_assert!(!set.contains(&x));
    let mut v = set.to_vec();
    let pos = v.iter().position(|&y| y > x).unwrap_or(v.len());
    v.insert(pos, x);
    v
}

/// Set minus one element (which must be present).
pub fn without_elem(set: &[u8], x: u8) -> Vec<u8> {
    debug_assert!(set.contains(&x));
    set.iter().copied().filter(|&y| y != x).collect()
}

/// 1-based position of `r` in `set` with `r` adjoined if absent.
pub fn ind(set: &[u8], r: u8) -> usize {
    set.iter().filter(|&&x| x < r).count() + 1
}

/// Number of elements of `set` strictly between `a` and `b` (in either order).
pub fn count_between(set: &[u8], a: u8, b: u8) -> u64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    set.iter().filter(|&&x| lo < x && x < hi).count() as u64
}

/// `gamma_U^{IJ}(m)`: elements of `u_set` strictly between the smallest
/// element of `i_set` and the m-th element of `j_set` (1-based).
pub fn gamma(u_set: &[u8], i_set: &[u8], j_set: &[u8], m: usize) -> u64 {
    count_between(u_set, i_set[0], j_set[m - 1])
}

/// The expansion clique: all `(i2, j2)` with `i2` above `max(i_set)`,
/// `i_set ∪ i2 = j_set ∪ j2` as sets, and `|i2| = |j2| = k - |i_set|`.
pub fn cliques(n: u8, k: usize, i_set: &[u8], j_set: &[u8]) -> Vec<(Vec<u8>, Vec<u8>)> {
    debug_assert_eq!(i_set.len(), j_set.len());
    let m = i_set.len();
    debug_assert!(m <= k);
    let lo = i_set.last().map_or(1, |&x| x + 1);
    let mut out = Vec::new();
    if k - m > n.saturating_sub(lo.saturating_sub(1)) as usize {
        return out;
    }
    for extra in subsets_from(lo, n, k - m) {
        let mut full = i_set.to_vec();
        full.extend_from_slice(&extra);
        full.sort_unstable();
        if j_set.iter().all(|j| full.contains(j)) {
            let j2: Vec<u8> = full.iter().copied().filter(|v| !j_set.contains(v)).collect();
            if j2.len() == k - m {
                out.push((extra, j2));
            }
        }
    }
    out
}

fn subsets_from(lo: u8, n: u8, k: usize) -> Vec<Vec<u8>> {
    if lo > n {
        return if k == 0 { alloc::vec![Vec::new()] } else { Vec::new() };
    }
    subsets(n - lo + 1, k)
        .into_iter()
        .map(|s| s.into_iter().map(|v| v + lo - 1).collect())
        .collect()
}

/// Forward clique re-indexing: member `(i2, j2)` of the clique over
/// `(i_set, j_set)` together with a choice `1 <= m <= |j2|` maps to
/// `(s, t, i2 - min(i2), j2 - j2[m-1])`, a member of the clique over
/// `(i_set + s, j_set + t)`.
pub fn beta(i2: &[u8], j2: &[u8], m: usize) -> (u8, u8, Vec<u8>, Vec<u8>) {
    let s = i2[0];
    let t = j2[m - 1];
    (s, t, without_elem(i2, s), without_elem(j2, t))
}

/// Inverse of [`beta`]: re-adjoin `s` and `t`, recovering the removal index.
pub fn beta_inv(i2: &[u8], j2: &[u8], s: u8, t: u8) -> (Vec<u8>, Vec<u8>, usize) {
    let full_j = with_elem(j2, t);
    let m = ind(j2, t);
    debug_assert_eq!(full_j[m - 1], t);
    (with_elem(i2, s), full_j, m)
}

/// Exponent `X` in definition form: `ind_{j2}(t) - 1` plus the number of
/// auxiliary elements strictly between `s` and `t`.
pub fn x_def(u_set: &[u8], i2: &[u8], j2: &[u8], s: u8, t: u8) -> i64 {
    let m = ind(j2, t);
    let ip = with_elem(i2, s);
    let jp = if j2.contains(&t) { j2.to_vec() } else { with_elem(j2, t) };
    (m as i64) - 1 + gamma(u_set, &ip, &jp, m) as i64
}

/// Exponent `X` in closed form, valid off the diagonal `s == t`; on the
/// diagonal it exceeds [`x_def`] by exactly one.
pub fn x_closed(u_set: &[u8], i_set: &[u8], i2: &[u8], j_set: &[u8], s: u8, t: u8) -> i64 {
    let mut all = u_set.to_vec();
    all.extend_from_slice(i_set);
    all.extend_from_slice(i2);
    let (lo, hi) = if s < t { (s, t) } else { (t, s) };
    let closed = i_set.iter().filter(|&&x| lo <= x && x <= hi).count() as i64;
    count_between(&all, s, t) as i64 + 1 + ind(i_set, s) as i64 - ind(j_set, t) as i64
        - 2 * closed
}

/// Exponent `Y` for the non-minimal residual terms of a row expansion swap:
/// `X(s, r)` plus the length of the order bijection from the swapped row set
/// `(i2 - t + r)` onto `j2`, taken relative to the complement-correct
/// auxiliary set `(u_set - r) + t`, plus `#(i2 ∩ (r, t))`.
///
/// Requires `s < t`, `t ∈ i2`, `r ∈ (s, t] - i2`, and `u_set` disjoint from
/// `i_set ∪ {s} ∪ i2`.
pub fn y_exponent(
    u_set: &[u8],
    i2: &[u8],
    j2: &[u8],
    s: u8,
    t: u8,
    r: u8,
) -> i64 {
    debug_assert!(s < t && i2.contains(&t) && !i2.contains(&r) && s < r && r <= t);
    let x = x_def(u_set, i2, j2, s, r);
    let dom = with_elem(&without_elem(i2, t), r);
    let tau = Bij::order_preserving(&dom, j2);
    let mut aux: Vec<u8> = u_set.iter().copied().filter(|&z| z != r && z != s).collect();
    aux = with_elem(&aux, t);
    x + tau.ell_u(&aux) as i64 + count_between(i2, r, t) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    #[test]
    fn basic_statistics() {
        assert_eq!(wt(&[1, 3, 4]), 8);
        assert_eq!(perm_length(&[3, 1, 2]), 2);
        assert_eq!(perm_exceedance(&[3, 1, 2]), 1);
        assert_eq!(ind(&[2, 4, 7], 4), 2);
        assert_eq!(ind(&[2, 4, 7], 5), 3);
        assert_eq!(count_between(&[1, 3, 5, 7], 2, 6), 2);
        assert_eq!(count_between(&[1, 3, 5, 7], 6, 2), 2);
        let tau = Bij::order_preserving(&[2, 4], &[1, 3]);
        assert_eq!(tau.apply(2), 1);
        assert_eq!(tau.exceedance(), 0);
        assert_eq!(tau.ell_u(&[5]), 0);
        assert_eq!(tau.ell_u(&[]), 0);
        let sigma = Bij::new(vec![1, 4], vec![4, 1]);
        assert_eq!(sigma.ell_u(&[]), 1);
        // an identity strand past the crossing adds nothing
        assert_eq!(sigma.ell_u(&[5]), 1);
        // an identity strand between the crossing strands cuts both
        assert_eq!(sigma.ell_u(&[2]), 3);
    }

    #[test]
    fn subsets_and_cliques() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(5, 0), vec![Vec::<u8>::new()]);
        // with empty base sets the clique is the diagonal family
        let c = cliques(4, 2, &[], &[]);
        assert_eq!(c.len(), 6);
        assert!(c.iter().all(|(i2, j2)| i2 == j2));
        // base sets of size one
        let c = cliques(4, 2, &[1], &[3]);
        // i2 = {x} with x > 1, {1, x} must contain 3, j2 = {1,x} - {3}
        assert_eq!(c, vec![(vec![3], vec![1])]);
    }

    #[test]
    fn length_exceedance_additivity() {
        // Removing the smallest domain element i1 (mapped to the m-th image
        // element) changes exceedance by theta(j_m - i1) and length by
        // m - 1 + gamma(m).
        for n in 2..=5u8 {
            for k in 1..=n as usize {
                for i_set in subsets(n, k) {
                    for j_set in subsets(n, k) {
                        let mut shared: Vec<u8> = (1..=n)
                            .filter(|v| !i_set.contains(v) && !j_set.contains(v))
                            .collect();
                        let mut u_sets = vec![Vec::new()];
                        if !shared.is_empty() {
                            u_sets.push(core::mem::take(&mut shared));
                        }
                        for u_set in u_sets {
                            for tau in bijections(&i_set, &j_set) {
                                let i1 = i_set[0];
                                let jm = tau.apply(i1);
                                let m = ind(&j_set, jm);
                                let rest_dom = without_elem(&i_set, i1);
                                let rest_img: Vec<u8> =
                                    rest_dom.iter().map(|&a| tau.apply(a)).collect();
                                let tau_m = Bij::new(rest_dom, rest_img);
                                let de = tau.exceedance() as i64 - tau_m.exceedance() as i64;
                                assert_eq!(de, if jm > i1 { 1 } else { 0 });
                                let dl = tau.ell_u(&u_set) as i64 - tau_m.ell_u(&u_set) as i64;
                                assert_eq!(
                                    dl,
                                    (m as i64) - 1 + gamma(&u_set, &i_set, &j_set, m) as i64
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    /// Quantifies over every clique configuration at size `n`, calling `f`
    /// with `(i_set, j_set, s, t, i2, j2, full_complement_u)`.
    fn for_each_config(
        n: u8,
        k: usize,
        f: &mut impl FnMut(&[u8], &[u8], u8, u8, &[u8], &[u8], &[u8]),
    ) {
        for m in 0..k {
            for i_set in subsets(n, m) {
                for j_set in subsets(n, m) {
                    let lo = i_set.last().map_or(1, |&x| x + 1);
                    for s in lo..=n {
                        for t in 1..=n {
                            if j_set.contains(&t) {
                                continue;
                            }
                            let is = with_elem(&i_set, s);
                            let jt = with_elem(&j_set, t);
                            for (i2, j2) in cliques(n, k, &is, &jt) {
                                let mut used = is.clone();
                                used.extend_from_slice(&i2);
                                used.sort_unstable();
                                let u = complement(n, &used);
                                f(&i_set, &j_set, s, t, &i2, &j2, &u);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn x_closed_form_matches_definition() {
        // Off the diagonal the two expressions agree for every auxiliary
        // subset; on the diagonal the closed form overshoots by one.
        for n in 2..=5u8 {
            for k in 1..=n as usize {
                for_each_config(n, k, &mut |i_set, j_set, s, t, i2, j2, u_full| {
                    let mut u_sets = vec![Vec::new(), u_full.to_vec()];
                    if u_full.len() >= 2 {
                        u_sets.push(vec![u_full[0]]);
                    }
                    for u in u_sets {
                        let d = x_def(&u, i2, j2, s, t);
                        let c = x_closed(&u, i_set, i2, j_set, s, t);
                        if s == t {
                            assert_eq!(d, c - 1);
                        } else {
                            assert_eq!(d, c);
                        }
                    }
                });
            }
        }
    }

    #[test]
    fn y_telescopes_with_boundary_values() {
        // Over r in (s,t] - i2 (s < t), consecutive Y values differ by 2;
        // the bottom value is ell(tau over the enlarged sets) + ind(t) - 1
        // and the top value is X(s,t) + ell(tau_{i2,j2}) - 2. Together these
        // collapse a geometric sum of residual terms into a single power.
        let mut configs = 0u64;
        for n in 2..=6u8 {
            for k in 1..=n as usize {
                for_each_config(n, k, &mut |_i, _j, s, t, i2, j2, u| {
                    if s >= t {
                        return;
                    }
                    let rs: Vec<u8> =
                        ((s + 1)..=t).filter(|r| !i2.contains(r)).collect();
                    if rs.is_empty() {
                        return;
                    }
                    configs += 1;
                    let ys: Vec<i64> =
                        rs.iter().map(|&r| y_exponent(u, i2, j2, s, t, r)).collect();
                    for w in ys.windows(2) {
                        assert_eq!(w[1] - w[0], 2);
                    }
                    let dom = with_elem(i2, s);
                    let img = with_elem(j2, t);
                    let bottom = Bij::order_preserving(&dom, &img).ell_u(u) as i64
                        + ind(j2, t) as i64
                        - 1;
                    assert_eq!(ys[0], bottom);
                    let top = x_def(u, i2, j2, s, t)
                        + Bij::order_preserving(i2, j2).ell_u(u) as i64
                        - 2;
                    assert_eq!(*ys.last().unwrap(), top);
                });
            }
        }
        assert!(configs > 200);
    }

    #[test]
    fn gamma_additivity_when_s_dominates() {
        // For s >= t, adjoining (s -> t) to the order bijection adds exactly
        // the gamma count at t's index.
        for n in 2..=6u8 {
            for k in 1..=n as usize {
                for_each_config(n, k, &mut |_i, _j, s, t, i2, j2, u| {
                    if s < t {
                        return;
                    }
                    let dom = with_elem(i2, s);
                    let img = with_elem(j2, t);
                    let lhs = Bij::order_preserving(&dom, &img).ell_u(u);
                    let m = ind(j2, t);
                    let rhs = Bij::order_preserving(i2, j2).ell_u(u)
                        + gamma(u, &dom, &img, m);
                    assert_eq!(lhs, rhs);
                });
            }
        }
    }

    #[test]
    fn clique_reindexing_is_a_bijection() {
        // beta maps (clique member, removal index) pairs onto the disjoint
        // union of the enlarged cliques, and beta_inv undoes it.
        for n in 2..=6u8 {
            for k in 1..=n as usize {
                for m in 0..k {
                    for i_set in subsets(n, m) {
                        for j_set in subsets(n, m) {
                            let members = cliques(n, k, &i_set, &j_set);
                            let mut seen = BTreeSet::new();
                            let mut domain = 0usize;
                            for (i2, j2) in &members {
                                for mm in 1..=(k - m) {
                                    domain += 1;
                                    let (s, t, i2r, j2r) = beta(i2, j2, mm);
                                    // lands above max(i_set), outside j_set
                                    assert!(s > i_set.last().copied().unwrap_or(0));
                                    assert!(!j_set.contains(&t));
                                    // lands in the enlarged clique
                                    let is = with_elem(&i_set, s);
                                    let jt = with_elem(&j_set, t);
                                    assert!(cliques(n, k, &is, &jt)
                                        .iter()
                                        .any(|(a, b)| a == &i2r && b == &j2r));
                                    // roundtrip
                                    let (i2b, j2b, mb) = beta_inv(&i2r, &j2r, s, t);
                                    assert_eq!(&i2b, i2);
                                    assert_eq!(&j2b, j2);
                                    assert_eq!(mb, mm);
                                    assert!(seen.insert((s, t, i2r, j2r)));
                                }
                            }
                            // codomain size matches: every enlarged-clique
                            // member is hit exactly once
                            let mut codomain = 0usize;
                            let lo = i_set.last().map_or(1, |&x| x + 1);
                            for s in lo..=n {
                                for t in 1..=n {
                                    if j_set.contains(&t) {
                                        continue;
                                    }
                                    let is = with_elem(&i_set, s);
                                    let jt = with_elem(&j_set, t);
                                    codomain += cliques(n, k, &is, &jt).len();
                                }
                            }
                            assert_eq!(domain, codomain);
                            assert_eq!(domain, seen.len());
                        }
                    }
                }
            }
        }
    }
}
