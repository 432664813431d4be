//! Brute-force oracles.
//!
//! Everything here is computed by walking the combinatorial objects and
//! applying the verbal definitions literally, with no generating functions
//! involved. These are the reference values the series routes are checked
//! against, so they are kept deliberately naive.

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Largest `n` the sweep drivers enumerate partitions for by default.
pub const DEFAULT_ENUM_CAP: usize = 60;
/// Largest `n` for the `2^n` subset oracle by default.
pub const DEFAULT_SUBSET_CAP: usize = 25;

/// A partition stored as weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts into weakly decreasing order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Option<Self> {
        if parts.contains(&0) {
            return None;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(value, multiplicity)` pairs, largest value first.
    pub fn multiplicities(&self) -> Multiplicities<'_> {
        Multiplicities {
            parts: &self.parts,
            pos: 0,
        }
    }

    pub fn multiplicity(&self, value: u32) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    /// Smallest positive integer that is not a part.
    pub fn mex(&self) -> u32 {
        let mut candidate = 1;
        for &p in self.parts.iter().rev() {
            if p == candidate {
                candidate += 1;
            } else if p > candidate {
                break;
            }
        }
        candidate
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

pub struct Multiplicities<'a> {
    parts: &'a [u32],
    pos: usize,
}

impl Iterator for Multiplicities<'_> {
    type Item = (u32, usize);

    fn next(&mut self) -> Option<Self::Item> {
        let value = *self.parts.get(self.pos)?;
        let run = self.parts[self.pos..]
            .iter()
            .take_while(|&&p| p == value)
            .count();
        self.pos += run;
        Some((value, run))
    }
}

/// Every partition of `n` exactly once, in reverse-lexicographic order
/// (`n` first, `1+1+...+1` last). `n = 0` yields the empty partition.
pub fn partitions(n: usize) -> Partitions {
    let first = if n == 0 { Vec::new() } else { vec![n as u32] };
    Partitions { next: Some(first) }
}

pub struct Partitions {
    next: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Partition { parts: current })
    }
}

fn successor(parts: &[u32]) -> Option<Vec<u32>> {
    let i = parts.iter().rposition(|&p| p > 1)?;
    let mut next = parts[..i].to_vec();
    let x = parts[i] - 1;
    // the decremented part plus the trailing ones, redistributed in parts <= x
    let mut rem = parts[i] + (parts.len() - 1 - i) as u32;
    while rem > 0 {
        let part = x.min(rem);
        next.push(part);
        rem -= part;
    }
    Some(next)
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidModulus(k));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::NonPositive(n));
    }
    Ok(())
}

fn check_ell(ell: u32) -> Result<()> {
    if ell == 0 {
        return Err(Error::InvalidEll(ell));
    }
    Ok(())
}

/// Sum over partitions of `n` of the distinct part values congruent to `p`
/// mod `k`, each value counted once per partition.
pub fn a_kp_enum(n: usize, k: u32, p: u32) -> Result<BigInt> {
    check_n(n)?;
    check_k(k)?;
    if p >= k {
        return Err(Error::InvalidResidue { k, p });
    }
    let total: u64 = partitions(n)
        .map(|lambda| {
            lambda
                .multiplicities()
                .filter(|&(v, _)| v % k == p)
                .map(|(v, _)| u64::from(v))
                .sum::<u64>()
        })
        .sum();
    Ok(total.into())
}

/// Sum over partitions of `n` of the distinct part values divisible by `k`.
pub fn a_k_enum(n: usize, k: u32) -> Result<BigInt> {
    a_kp_enum(n, k, 0)
}

/// Sum over partitions of `n` of the distinct part values occurring at least
/// `k` times.
pub fn b_k_enum(n: usize, k: u32) -> Result<BigInt> {
    check_n(n)?;
    check_k(k)?;
    let total: u64 = partitions(n)
        .map(|lambda| {
            lambda
                .multiplicities()
                .filter(|&(_, m)| m >= k as usize)
                .map(|(v, _)| u64::from(v))
                .sum::<u64>()
        })
        .sum();
    Ok(total.into())
}

/// For one `n`, how many partitions carry each value with each exact
/// multiplicity. All `a`/`b` statistics at `n` reduce to weighted sums over
/// this table, so a sweep enumerates the partitions of `n` only once.
#[derive(Clone, Debug)]
pub struct MultiplicityCensus {
    n: usize,
    // counts[v][m]: partitions of n in which v occurs exactly m times (m >= 1)
    counts: Vec<Vec<u64>>,
}

impl MultiplicityCensus {
    pub fn of(n: usize) -> Self {
        let mut counts: Vec<Vec<u64>> = (0..=n).map(|v| vec![0; n / v.max(1) + 1]).collect();
        for lambda in partitions(n) {
            for (v, m) in lambda.multiplicities() {
                counts[v as usize][m] += 1;
            }
        }
        Self { n, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn containing(&self, v: usize) -> u64 {
        self.counts[v].iter().sum()
    }

    pub fn a_kp(&self, k: u32, p: u32) -> BigInt {
        let k = k as usize;
        let total: u64 = (1..=self.n)
            .filter(|v| v % k == p as usize)
            .map(|v| v as u64 * self.containing(v))
            .sum();
        total.into()
    }

    pub fn b_k(&self, k: u32) -> BigInt {
        let total: u64 = (1..=self.n)
            .map(|v| {
                let at_least: u64 = self.counts[v].iter().skip(k as usize).sum();
                v as u64 * at_least
            })
            .sum();
        total.into()
    }
}

/// The `ell` for which `lambda` is counted by `M_ell`: its least missing
/// positive integer, provided the parts above it outnumber those below it
/// (multiplicity counted).
pub fn m_ell_class(lambda: &Partition) -> Option<u32> {
    let ell = lambda.mex();
    let above = lambda.parts().iter().filter(|&&x| x > ell).count();
    let below = lambda.parts().iter().filter(|&&x| x < ell).count();
    (above > below).then_some(ell)
}

/// Partitions of `n` whose least missing positive integer is `ell` and whose
/// parts above `ell` outnumber those below it (multiplicity counted).
pub fn m_ell_enum(n: usize, ell: u32) -> Result<u64> {
    check_ell(ell)?;
    Ok(partitions(n)
        .filter(|lambda| m_ell_class(lambda) == Some(ell))
        .count() as u64)
}

/// `[M_1(n), ..., M_ell_max(n)]` from one walk over the partitions of `n`.
pub fn m_ell_census(n: usize, ell_max: u32) -> Vec<u64> {
    let mut counts = vec![0u64; ell_max as usize];
    for lambda in partitions(n) {
        if let Some(ell) = m_ell_class(&lambda).filter(|&e| e <= ell_max) {
            counts[ell as usize - 1] += 1;
        }
    }
    counts
}

/// Partitions of `n` into distinct parts.
pub fn q_enum(n: usize) -> u64 {
    partitions(n)
        .filter(|lambda| lambda.multiplicities().all(|(_, m)| m == 1))
        .count() as u64
}

/// The partitions counted by the `MP_ell` generating function: some part
/// exceeds `2ell-1`, the smallest such part is odd and occurs exactly `ell`
/// times, every other odd part occurs at most once, and even parts are
/// unrestricted.
pub fn mp_ell_enum(n: usize, ell: u32) -> Result<u64> {
    check_ell(ell)?;
    let threshold = 2 * ell - 1;
    Ok(partitions(n)
        .filter(|lambda| {
            let mut special = None;
            for (v, m) in lambda.multiplicities() {
                if v > threshold {
                    special = Some((v, m));
                }
            }
            let Some((s, ms)) = special else {
                return false;
            };
            if s % 2 == 0 || ms != ell as usize {
                return false;
            }
            lambda
                .multiplicities()
                .all(|(v, m)| v == s || v % 2 == 0 || m == 1)
        })
        .count() as u64)
}

/// Word-for-word reading of the verbal definition: if some part exceeds
/// `2ell-1` the first such part is odd and occurs exactly `ell` times, and
/// all other parts occur at most once. Partitions with no part above
/// `2ell-1` satisfy the condition vacuously.
///
/// This disagrees with the generating function (for example it gives 3 at
/// `n = 5, ell = 3` where the series gives 0) and is kept only so the
/// discrepancy can be reported.
pub fn mp_ell_enum_literal(n: usize, ell: u32) -> Result<u64> {
    check_ell(ell)?;
    let threshold = 2 * ell - 1;
    Ok(partitions(n)
        .filter(|lambda| {
            let special = lambda
                .multiplicities()
                .filter(|&(v, _)| v > threshold)
                .last();
            if let Some((s, ms)) = special {
                if s % 2 == 0 || ms != ell as usize {
                    return false;
                }
            }
            lambda
                .multiplicities()
                .all(|(v, m)| m == 1 || special.is_some_and(|(s, _)| s == v))
        })
        .count() as u64)
}

/// Subsets of `{1..n}` containing an element strictly larger than the sum
/// of the others, with the default cap.
pub fn c_subset_oracle(n: usize) -> Result<u64> {
    c_subset_oracle_capped(n, DEFAULT_SUBSET_CAP)
}

pub fn c_subset_oracle_capped(n: usize, cap: usize) -> Result<u64> {
    if n > cap || n >= 64 {
        return Err(Error::EnumerationCap { n, cap });
    }
    let mut count = 0;
    for mask in 1u64..(1u64 << n) {
        let top = 63 - mask.leading_zeros() as u64;
        let mut rest = mask & !(1 << top);
        let mut sum = 0;
        while rest != 0 {
            sum += u64::from(rest.trailing_zeros()) + 1;
            rest &= rest - 1;
        }
        // the largest element is the only candidate for dominance
        if top + 1 > sum {
            count += 1;
        }
    }
    Ok(count)
}

/// A partition with one overlined part-occurrence and optionally one
/// colored part-occurrence, both divisible by `k`. Marks attach to
/// occurrences, so an overlined 3 and a colored 3 need the value 3 twice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OverpartitionMarked {
    pub base: Partition,
    pub overlined: u32,
    pub colored: Option<u32>,
}

impl std::fmt::Display for OverpartitionMarked {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut overline_done = false;
        let mut color_done = self.colored.is_none();
        for (i, &p) in self.base.parts().iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if !overline_done && p == self.overlined {
                overline_done = true;
                write!(f, "[{p}]")?;
            } else if !color_done && Some(p) == self.colored {
                color_done = true;
                write!(f, "{{{p}}}")?;
            } else {
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

/// Values divisible by `k` that can carry the overline in `lambda`, one per
/// distinct value.
pub fn overline_marks(lambda: &Partition, k: u32) -> impl Iterator<Item = u32> + '_ {
    lambda
        .multiplicities()
        .map(|(v, _)| v)
        .filter(move |v| v % k == 0)
}

/// `(overlined, colored)` mark placements on `lambda` counted by `A_k`.
/// The colored occurrence must be a different occurrence from the overlined one.
pub fn overline_color_marks(
    lambda: &Partition,
    k: u32,
) -> impl Iterator<Item = (u32, Option<u32>)> + '_ {
    overline_marks(lambda, k).flat_map(move |v| {
        let colored = lambda
            .multiplicities()
            .filter(move |&(w, m)| w % k == 0 && (w != v || m > 1))
            .map(|(w, _)| Some(w));
        std::iter::once(None).chain(colored).map(move |c| (v, c))
    })
}

/// `P_k(n)`: overpartitions of `n` with exactly one part divisible by `k`
/// overlined.
pub fn overpartitions_p(n: usize, k: u32) -> Result<impl Iterator<Item = OverpartitionMarked>> {
    check_n(n)?;
    check_k(k)?;
    Ok(partitions(n).flat_map(move |lambda| {
        overline_marks(&lambda, k)
            .map(|v| OverpartitionMarked {
                base: lambda.clone(),
                overlined: v,
                colored: None,
            })
            .collect::<Vec<_>>()
    }))
}

/// `A_k(n)`: as [`overpartitions_p`], additionally allowing at most one other
/// occurrence of a part divisible by `k` to be colored.
pub fn overpartitions_a(n: usize, k: u32) -> Result<impl Iterator<Item = OverpartitionMarked>> {
    check_n(n)?;
    check_k(k)?;
    Ok(partitions(n).flat_map(move |lambda| {
        overline_color_marks(&lambda, k)
            .map(|(overlined, colored)| OverpartitionMarked {
                base: lambda.clone(),
                overlined,
                colored,
            })
            .collect::<Vec<_>>()
    }))
}

/// For each `k` in `ks`, the sum of overlined parts over `P_k(n)` and the
/// size of `A_k(n)`, from one walk over the partitions of `n`.
pub fn overpartition_census(n: usize, ks: &[u32]) -> Result<Vec<(u64, u64)>> {
    check_n(n)?;
    for &k in ks {
        check_k(k)?;
    }
    let mut out = vec![(0u64, 0u64); ks.len()];
    for lambda in partitions(n) {
        for (slot, &k) in out.iter_mut().zip(ks) {
            slot.0 += overline_marks(&lambda, k).map(u64::from).sum::<u64>();
            slot.1 += overline_color_marks(&lambda, k).count() as u64;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_recurrence(n: usize) -> Vec<u64> {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut acc = 0;
            for j in 1i64.. {
                let g1 = (j * (3 * j - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let s = if j % 2 == 1 { 1 } else { -1 };
                acc += s * p[m - g1];
                let g2 = (j * (3 * j + 1) / 2) as usize;
                if g2 <= m {
                    acc += s * p[m - g2];
                }
            }
            p[m] = acc;
        }
        p.into_iter().map(|x| x as u64).collect()
    }

    #[test]
    fn partitions_of_five_in_order() {
        let listed: Vec<String> = partitions(5).map(|l| l.to_string()).collect();
        assert_eq!(
            listed,
            ["5", "4+1", "3+2", "3+1+1", "2+2+1", "2+1+1+1", "1+1+1+1+1"]
        );
    }

    #[test]
    fn empty_partition_of_zero() {
        let all: Vec<_> = partitions(0).collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn counts_match_recurrence() {
        let p = p_recurrence(60);
        assert_eq!(partitions(10).count(), 42);
        for (n, &want) in p.iter().enumerate() {
            assert_eq!(partitions(n).count() as u64, want, "p({n})");
        }
    }

    #[test]
    fn partitions_are_valid_and_distinct() {
        let mut seen = std::collections::HashSet::new();
        for lambda in partitions(18) {
            assert_eq!(lambda.n(), 18);
            assert!(lambda.parts().windows(2).all(|w| w[0] >= w[1]));
            assert!(seen.insert(lambda));
        }
    }

    #[test]
    fn worked_examples() {
        assert_eq!(a_k_enum(5, 3).unwrap(), 6.into());
        assert_eq!(a_kp_enum(5, 3, 0).unwrap(), 6.into());
        assert_eq!(a_kp_enum(5, 3, 1).unwrap(), 9.into());
        assert_eq!(a_kp_enum(5, 3, 2).unwrap(), 11.into());
        assert_eq!(b_k_enum(5, 3).unwrap(), 2.into());
        assert_eq!(m_ell_enum(5, 3).unwrap(), 0);
    }

    #[test]
    fn b_values_by_hand() {
        // 4: only 1+1+1+1 has a part repeated 3 times
        assert_eq!(b_k_enum(4, 3).unwrap(), 1.into());
        // 7: 1 in 4+1+1+1, 3+1+1+1+1, 2+2+1+1+1, 2+1*5, 1*7 (5 partitions) plus 2 in 2+2+2+1
        assert_eq!(b_k_enum(7, 3).unwrap(), 7.into());
        for k in 2..6u32 {
            for n in 1..k as usize {
                assert_eq!(b_k_enum(n, k).unwrap(), 0.into());
            }
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            a_kp_enum(5, 3, 3),
            Err(Error::InvalidResidue { .. })
        ));
        assert!(matches!(a_kp_enum(5, 0, 0), Err(Error::InvalidModulus(0))));
        assert!(matches!(b_k_enum(0, 2), Err(Error::NonPositive(0))));
        assert!(m_ell_enum(3, 0).is_err());
        assert!(mp_ell_enum(3, 0).is_err());
        assert!(overpartitions_p(0, 1).is_err());
    }

    #[test]
    fn census_agrees_with_direct_sums() {
        for n in 1..=20 {
            let census = MultiplicityCensus::of(n);
            for k in 1..=5 {
                assert_eq!(census.b_k(k), b_k_enum(n, k).unwrap());
                for p in 0..k {
                    assert_eq!(census.a_kp(k, p), a_kp_enum(n, k, p).unwrap());
                }
            }
        }
    }

    #[test]
    fn residues_partition_a() {
        for n in 1..=40 {
            let census = MultiplicityCensus::of(n);
            let a = census.a_kp(1, 0);
            for k in 1..=6 {
                assert_eq!(census.a_kp(k, 0), a_k_enum(n, k).unwrap());
                let total: BigInt = (0..k).map(|p| census.a_kp(k, p)).sum();
                assert_eq!(total, a, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn mex_and_m_ell() {
        assert_eq!(Partition::new(vec![3, 1, 2]).unwrap().mex(), 4);
        assert_eq!(Partition::new(vec![3, 3]).unwrap().mex(), 1);
        assert_eq!(Partition::new(vec![]).unwrap().mex(), 1);
        assert_eq!(m_ell_enum(3, 4).unwrap(), 0);
        assert_eq!(m_ell_enum(0, 1).unwrap(), 0);
        // M_1(n): partitions with no 1s, i.e. p(n) - p(n-1)
        let p = p_recurrence(20);
        for n in 1..=20 {
            assert_eq!(m_ell_enum(n, 1).unwrap(), p[n] - p[n - 1]);
        }
    }

    #[test]
    fn distinct_part_counts() {
        assert_eq!(q_enum(0), 1);
        assert_eq!(q_enum(5), 3);
        let expected = [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(q_enum(n), e);
        }
    }

    #[test]
    fn subset_oracle() {
        assert_eq!(c_subset_oracle(0).unwrap(), 0);
        assert_eq!(c_subset_oracle(1).unwrap(), 1);
        assert_eq!(c_subset_oracle(2).unwrap(), 3);
        assert_eq!(c_subset_oracle(3).unwrap(), 6);
        assert!(matches!(
            c_subset_oracle(26),
            Err(Error::EnumerationCap { n: 26, cap: 25 })
        ));
        assert!(c_subset_oracle_capped(10, 5).is_err());
    }

    #[test]
    fn overpartition_displays() {
        let p: Vec<String> = overpartitions_p(6, 3)
            .unwrap()
            .map(|o| o.to_string())
            .collect();
        assert_eq!(p, ["[6]", "[3]+3", "[3]+2+1", "[3]+1+1+1"]);
        let a: Vec<String> = overpartitions_a(6, 3)
            .unwrap()
            .map(|o| o.to_string())
            .collect();
        assert_eq!(a, ["[6]", "[3]+3", "[3]+{3}", "[3]+2+1", "[3]+1+1+1"]);
    }

    #[test]
    fn overlined_sum_is_a_k() {
        for k in 1..=4 {
            for n in 1..=16 {
                let s: u64 = overpartitions_p(n, k)
                    .unwrap()
                    .map(|o| u64::from(o.overlined))
                    .sum();
                assert_eq!(BigInt::from(s), a_k_enum(n, k).unwrap());
            }
        }
    }

    #[test]
    fn single_pass_censuses_match_streams() {
        let ks = [1, 2, 3, 4];
        for n in 1..=14 {
            let census = overpartition_census(n, &ks).unwrap();
            for (&k, &(sum, a)) in ks.iter().zip(&census) {
                let s: u64 = overpartitions_p(n, k)
                    .unwrap()
                    .map(|o| u64::from(o.overlined))
                    .sum();
                assert_eq!(sum, s, "n={n} k={k}");
                assert_eq!(
                    a,
                    overpartitions_a(n, k).unwrap().count() as u64,
                    "n={n} k={k}"
                );
            }
            let m = m_ell_census(n, 4);
            for ell in 1..=4 {
                assert_eq!(
                    m[ell as usize - 1],
                    m_ell_enum(n, ell).unwrap(),
                    "n={n} ell={ell}"
                );
            }
        }
    }

    #[test]
    fn mp_small_values() {
        // MP_1 support starts at 3 (the partition 3)
        let series_mp1 = [0, 0, 0, 1, 1, 1, 1, 2, 3, 3, 3, 5, 7, 7, 8, 12];
        for (n, &e) in series_mp1.iter().enumerate() {
            assert_eq!(mp_ell_enum(n, 1).unwrap(), e, "MP_1({n})");
        }
        for n in 0..21 {
            assert_eq!(mp_ell_enum(n, 3).unwrap(), 0);
        }
        assert_eq!(mp_ell_enum(21, 3).unwrap(), 1);
        assert_eq!(mp_ell_enum_literal(5, 3).unwrap(), 3);
    }
}
