//! Series-backed statistic tables.
//!
//! Each statistic is read off as the coefficients of its closed-form
//! generating function. `M_ell` additionally has two further evaluation
//! routes (a Gaussian-binomial sum and partition-number differences) so that
//! the three can be checked against one another.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{
    self, euler_product, gaussian_binomial, geometric_kernel, pentagonal_series, theta_truncated,
    Factors, ProductSpec, Sign, TruncatedSeries,
};
pub use crate::table::{Params, StatId, StatTable};

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidModulus(k));
    }
    Ok(())
}

fn check_ell(ell: u32) -> Result<()> {
    if ell == 0 {
        return Err(Error::InvalidEll(ell));
    }
    Ok(())
}

fn table(stat: StatId, params: Params, s: TruncatedSeries) -> StatTable {
    StatTable::new(stat, params, s.into_coeffs())
}

fn sign_power(exponent: u32) -> BigInt {
    if exponent.is_multiple_of(2) {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// `1/(q;q)_inf`.
pub fn partition_series(order: usize) -> TruncatedSeries {
    euler_product(order)
        .invert()
        .expect("(q;q)_inf has unit constant term")
}

/// `(-q;q)_inf`, the distinct-parts generating function.
pub fn distinct_series(order: usize) -> TruncatedSeries {
    let spec = ProductSpec::new(Sign::Plus, 1, 1).expect("valid spec");
    series::product(&[(spec, Factors::Infinite)], order)
}

pub fn partition_table(order: usize) -> StatTable {
    table(StatId::P, Params::none(), partition_series(order))
}

pub fn distinct_table(order: usize) -> StatTable {
    table(StatId::Q, Params::none(), distinct_series(order))
}

/// `b_k(n)` from `q^k / ((1-q^k)^2 (q;q)_inf)`.
pub fn b_k_series(k: u32, order: usize) -> Result<StatTable> {
    check_k(k)?;
    let s = partition_series(order).mul(&geometric_kernel(k, order)?)?;
    Ok(table(StatId::Bk, Params::k(k), s))
}

/// `a_{k,p}(n)` from `(p q^p + (k-p) q^{p+k}) / ((1-q^k)^2 (q;q)_inf)`.
pub fn a_kp_series(k: u32, p: u32, order: usize) -> Result<StatTable> {
    Ok(table(StatId::Akp, Params::kp(k, p), a_kp_raw(k, p, order)?))
}

/// `a_k(n)`, the `p = 0` case `k q^k / ((1-q^k)^2 (q;q)_inf)`.
pub fn a_k_series(k: u32, order: usize) -> Result<StatTable> {
    Ok(table(StatId::Ak, Params::k(k), a_kp_raw(k, 0, order)?))
}

fn a_kp_raw(k: u32, p: u32, order: usize) -> Result<TruncatedSeries> {
    check_k(k)?;
    if p >= k {
        return Err(Error::InvalidResidue { k, p });
    }
    let (ku, pu) = (k as usize, p as usize);
    let numerator = &TruncatedSeries::monomial(order, pu, p)
        + &TruncatedSeries::monomial(order, pu + ku, k - p);
    let one_minus = &TruncatedSeries::one(order) - &TruncatedSeries::monomial(order, ku, 1);
    let denominator = one_minus.mul(&one_minus)?;
    partition_series(order)
        .mul(&numerator)?
        .mul(&denominator.invert()?)
}

/// `c_k(n) = sum_{j=1}^{floor(n/k)} j Q((n - kj)/2)`, with `Q` of a
/// non-integer argument taken as zero and `Q(0) = 1`.
pub fn c_k_table(k: u32, order: usize) -> Result<StatTable> {
    check_k(k)?;
    let q = distinct_series(order / 2);
    let values = (0..=order)
        .map(|n| {
            let mut acc = BigInt::zero();
            for j in 1..=n / k as usize {
                let rest = n - k as usize * j;
                if rest.is_multiple_of(2) {
                    acc += q.coeff(rest / 2) * BigInt::from(j);
                }
            }
            acc
        })
        .collect();
    Ok(StatTable::new(StatId::Ck, Params::k(k), values))
}

/// `c(n)` for `n = 0..=order`, read as `c_2(2n)`.
pub fn c_table(order: usize) -> StatTable {
    let c2 = c_k_table(2, 2 * order).expect("k = 2 is valid");
    let values = (0..=order).map(|n| c2.values()[2 * n].clone()).collect();
    StatTable::new(StatId::C, Params::none(), values)
}

/// `M_ell` as `(-1)^(ell-1) ( (1/(q;q)_inf) * sum_{n=-(ell-1)}^{ell} (-1)^n q^{n(3n-1)/2} - 1 )`.
pub fn m_ell_pentagonal(ell: u32, order: usize) -> Result<TruncatedSeries> {
    check_ell(ell)?;
    let s = partition_series(order).mul(&pentagonal_series(Some(ell), order))?;
    let s = &s - &TruncatedSeries::one(order);
    Ok(s.scale(&sign_power(ell - 1)))
}

/// `M_ell` as `sum_{n>=ell} q^{C(ell,2) + (ell+1)n} / (q;q)_n * [n-1 choose ell-1]`.
pub fn m_ell_gaussian(ell: u32, order: usize) -> Result<TruncatedSeries> {
    check_ell(ell)?;
    let ell_u = ell as usize;
    let base = ell_u * (ell_u - 1) / 2;
    let mut total = TruncatedSeries::zero(order);
    let mut inv_poch = TruncatedSeries::one(order);
    for n in 1.. {
        let one_minus = &TruncatedSeries::one(order) - &TruncatedSeries::monomial(order, n, 1);
        inv_poch = inv_poch.mul(&one_minus.invert()?)?;
        if n < ell_u {
            continue;
        }
        let exponent = base + (ell_u + 1) * n;
        if exponent > order {
            break;
        }
        let rest = order - exponent;
        let gauss = gaussian_binomial(n as i64 - 1, ell as i64 - 1, rest);
        let term = inv_poch.truncate(rest)?.mul(&gauss)?;
        let shifted = TruncatedSeries::from_coeffs(
            order,
            std::iter::repeat_n(BigInt::zero(), exponent).chain(term.into_coeffs()),
        );
        total = &total + &shifted;
    }
    Ok(total)
}

/// `M_ell(n) = (-1)^(ell-1) sum_{j=0}^{ell-1} (-1)^j (p(n - j(3j+1)/2) - p(n - (j+1)(3j+2)/2))`
/// for `n >= 1`. At `n = 0` that expression is the constant `(-1)^(ell-1)`
/// rather than a count, so the entry is set to `M_ell(0) = 0`.
pub fn m_ell_pdiff(ell: u32, order: usize) -> Result<Vec<BigInt>> {
    check_ell(ell)?;
    let p = partition_table(order);
    let sign = sign_power(ell - 1);
    let mut values = vec![BigInt::zero(); order + 1];
    for (n, slot) in values.iter_mut().enumerate().skip(1) {
        let n = n as i64;
        let mut acc = BigInt::zero();
        for j in 0..i64::from(ell) {
            let d = p.at(n - j * (3 * j + 1) / 2) - p.at(n - (j + 1) * (3 * j + 2) / 2);
            if j % 2 == 0 {
                acc += d;
            } else {
                acc -= d;
            }
        }
        *slot = &sign * acc;
    }
    Ok(values)
}

/// `M_ell(n)` table, computed by the truncated pentagonal route and
/// cross-checked against the Gaussian-binomial sum.
pub fn m_ell_series(ell: u32, order: usize) -> Result<StatTable> {
    let pent = m_ell_pentagonal(ell, order)?;
    let gauss = m_ell_gaussian(ell, order)?;
    if let Some(n) = (0..=order).find(|&n| pent.coeff(n) != gauss.coeff(n)) {
        return Err(Error::RouteDisagreement { ell, n });
    }
    Ok(table(StatId::MEll, Params::ell(ell), pent))
}

/// `MP_ell(n)` from `(-1)^(ell-1) ( (-q;q^2)_inf / (q^2;q^2)_inf * theta_ell - 1 )`
/// with `theta_ell = sum_{j=0}^{2ell-1} (-q)^{j(j+1)/2}`.
pub fn mp_ell_series(ell: u32, order: usize) -> Result<StatTable> {
    check_ell(ell)?;
    let odd = ProductSpec::new(Sign::Plus, 1, 2)?;
    let even = ProductSpec::new(Sign::Minus, 2, 2)?;
    let f = series::product(&[(odd, Factors::Infinite)], order)
        .mul(&series::product(&[(even, Factors::Infinite)], order).invert()?)?;
    let s = &f.mul(&theta_truncated(ell, order)?)? - &TruncatedSeries::one(order);
    let s = s.scale(&sign_power(ell - 1));
    if let Some(n) = (0..=order).find(|&n| crate::table::is_negative(s.coeff(n))) {
        return Err(Error::NegativeCoefficient { ell, n });
    }
    Ok(table(StatId::MpEll, Params::ell(ell), s))
}

/// `n/k` when `k | n`, else `0`.
pub fn divisor_indicator_term(n: u64, k: u32) -> BigInt {
    assert!(k >= 1, "k must be positive");
    if n.is_multiple_of(u64::from(k)) {
        BigInt::from(n / u64::from(k))
    } else {
        BigInt::zero()
    }
}

/// Computes any table by id, validating the parameters the id needs.
/// `c` with a `k` gives `c_k`; `a` with a `p` gives `a_{k,p}`.
pub fn compute(stat: StatId, params: Params, order: usize) -> Result<StatTable> {
    let need_k = || {
        params
            .k
            .ok_or_else(|| Error::InvalidConfig(format!("{stat} needs k")))
    };
    let need_ell = || {
        params
            .ell
            .ok_or_else(|| Error::InvalidConfig(format!("{stat} needs ell")))
    };
    match stat {
        StatId::Ak => a_k_series(need_k()?, order),
        StatId::Akp => {
            let p = params
                .p
                .ok_or_else(|| Error::InvalidConfig("a_kp needs p".into()))?;
            a_kp_series(need_k()?, p, order)
        }
        StatId::Bk => b_k_series(need_k()?, order),
        StatId::Ck => c_k_table(need_k()?, order),
        StatId::MEll => m_ell_series(need_ell()?, order),
        StatId::MpEll => mp_ell_series(need_ell()?, order),
        StatId::Q => Ok(distinct_table(order)),
        StatId::P => Ok(partition_table(order)),
        StatId::C => Ok(c_table(order)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate;

    fn int(v: &BigInt) -> i64 {
        i64::try_from(v).unwrap()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(int(b_k_series(3, 10).unwrap().at(5)), 2);
        assert_eq!(int(a_k_series(3, 10).unwrap().at(5)), 6);
        assert_eq!(int(a_kp_series(3, 0, 10).unwrap().at(5)), 6);
        assert_eq!(int(a_kp_series(3, 1, 10).unwrap().at(5)), 9);
        assert_eq!(int(a_kp_series(3, 2, 10).unwrap().at(5)), 11);
        assert_eq!(int(m_ell_series(3, 10).unwrap().at(5)), 0);
        assert_eq!(int(partition_table(10).at(5)), 7);
    }

    #[test]
    fn b_vanishes_below_k() {
        for k in 1..=6 {
            let b = b_k_series(k, 12).unwrap();
            for n in 0..k as i64 {
                assert!(b.at(n).is_zero());
            }
            assert!(!b.at(k as i64).is_zero());
        }
    }

    #[test]
    fn b_2_matches_enumeration() {
        let b = b_k_series(2, 30).unwrap();
        for n in 1..=30 {
            assert_eq!(b.at(n as i64), &enumerate::b_k_enum(n, 2).unwrap());
        }
    }

    #[test]
    fn parity_special_cases() {
        // a_e: 2q^2/(1-q^2)^2 ; a_o: q(1+q^2)/(1-q^2)^2 ; a: q/(1-q)^2
        let n = 40;
        let p = partition_series(n);
        let sq = |k: usize| {
            let one_minus = &TruncatedSeries::one(n) - &TruncatedSeries::monomial(n, k, 1);
            one_minus.mul(&one_minus).unwrap().invert().unwrap()
        };
        let even = p
            .mul(&TruncatedSeries::monomial(n, 2, 2))
            .unwrap()
            .mul(&sq(2))
            .unwrap();
        let odd_num = &TruncatedSeries::monomial(n, 1, 1) + &TruncatedSeries::monomial(n, 3, 1);
        let odd = p.mul(&odd_num).unwrap().mul(&sq(2)).unwrap();
        let all = p
            .mul(&TruncatedSeries::monomial(n, 1, 1))
            .unwrap()
            .mul(&sq(1))
            .unwrap();
        assert_eq!(a_kp_series(2, 0, n).unwrap().values(), even.coeffs());
        assert_eq!(a_kp_series(2, 1, n).unwrap().values(), odd.coeffs());
        assert_eq!(a_k_series(1, n).unwrap().values(), all.coeffs());
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            a_kp_series(3, 3, 5),
            Err(Error::InvalidResidue { k: 3, p: 3 })
        ));
        assert!(matches!(b_k_series(0, 5), Err(Error::InvalidModulus(0))));
        assert!(matches!(m_ell_series(0, 5), Err(Error::InvalidEll(0))));
        assert!(mp_ell_series(0, 5).is_err());
        assert!(compute(StatId::Bk, Params::none(), 5).is_err());
    }

    #[test]
    fn c_k_values() {
        let c2 = c_k_table(2, 12).unwrap();
        assert_eq!(int(c2.at(6)), 6);
        for k in 1..=5u32 {
            let c = c_k_table(k, 10).unwrap();
            for n in 0..k as i64 {
                assert!(c.at(n).is_zero());
            }
        }
        // c_3(5) = 1*Q(1); c_4(6) = 1*Q(1)
        assert_eq!(int(c_k_table(3, 6).unwrap().at(5)), 1);
        assert_eq!(int(c_k_table(4, 6).unwrap().at(6)), 1);
    }

    #[test]
    fn c_bridge_small() {
        let c = c_table(12);
        for n in 0..=12 {
            assert_eq!(
                int(c.at(n as i64)) as u64,
                enumerate::c_subset_oracle(n).unwrap(),
                "c({n})"
            );
        }
    }

    #[test]
    fn m_routes_agree() {
        for ell in 1..=4 {
            let pent = m_ell_pentagonal(ell, 60).unwrap();
            let gauss = m_ell_gaussian(ell, 60).unwrap();
            let pdiff = m_ell_pdiff(ell, 60).unwrap();
            assert_eq!(pent, gauss, "ell={ell}");
            assert_eq!(pent.coeffs(), pdiff.as_slice(), "ell={ell}");
            for n in 0..=25 {
                assert_eq!(
                    int(pent.coeff(n)) as u64,
                    enumerate::m_ell_enum(n, ell).unwrap(),
                    "M_{ell}({n})"
                );
            }
        }
    }

    #[test]
    fn mp_first_support() {
        let mp1 = mp_ell_series(1, 20).unwrap();
        assert!(mp1.at(0).is_zero() && mp1.at(1).is_zero() && mp1.at(2).is_zero());
        assert_eq!(int(mp1.at(3)), 1);
        let mp3 = mp_ell_series(3, 30).unwrap();
        assert!((0..21).all(|n| mp3.at(n).is_zero()));
        assert_eq!(int(mp3.at(21)), 1);
        assert!(mp_ell_series(1, 200).is_ok());
    }

    #[test]
    fn mp_matches_enumeration() {
        for ell in 1..=3 {
            let mp = mp_ell_series(ell, 30).unwrap();
            for n in 0..=30 {
                assert_eq!(
                    int(mp.at(n as i64)) as u64,
                    enumerate::mp_ell_enum(n, ell).unwrap(),
                    "MP_{ell}({n})"
                );
            }
        }
    }

    #[test]
    fn indicator_simplification() {
        // (1 + (-1)^([k|n] + 1)) / 2 * n / k, evaluated literally
        fn raw(n: u64, k: u32) -> BigInt {
            let bracket = u32::from(n.is_multiple_of(u64::from(k)));
            let factor = (1 + (-1i64).pow(bracket + 1)) / 2;
            if factor == 0 {
                return BigInt::zero();
            }
            BigInt::from(factor) * BigInt::from(n) / BigInt::from(k)
        }
        for k in 1..=7 {
            for n in 0..=50 {
                assert_eq!(divisor_indicator_term(n, k), raw(n, k));
            }
        }
        assert_eq!(divisor_indicator_term(6, 3), BigInt::from(2));
        assert_eq!(divisor_indicator_term(5, 3), BigInt::zero());
        assert_eq!(divisor_indicator_term(0, 4), BigInt::zero());
    }

    #[test]
    fn compute_dispatch() {
        let t = compute(StatId::Akp, Params::kp(3, 2), 5).unwrap();
        assert_eq!(int(t.at(5)), 11);
        assert_eq!(
            compute(StatId::Q, Params::none(), 0).unwrap().values(),
            [BigInt::from(1)]
        );
        assert_eq!(compute(StatId::C, Params::none(), 3).unwrap().key(), "c");
    }
}
