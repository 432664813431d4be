//! Identity sweeps.
//!
//! Each suite evaluates both sides of one family of identities at every cell
//! of a parameter grid and records the cells where they differ. Failures are
//! data: a sweep never stops early, and its report lists every failing cell
//! in a fixed order so that reports are reproducible regardless of how many
//! threads evaluated them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::enumerate::{self, MultiplicityCensus, DEFAULT_ENUM_CAP, DEFAULT_SUBSET_CAP};
use crate::error::{Error, Result};
use crate::series::{self, pentagonal, triangular, TruncatedSeries};
use crate::stats::{self, divisor_indicator_term, Params, StatId, StatTable};
use crate::table::serialize_json_int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    ThmGfA,
    ThmGfAp,
    ThmGfB,
    ThmComb1,
    ThmComb2,
    ThmComb3,
    TruncEq,
    TruncNonneg,
    TruncInfsum,
    Gen17Eq,
    Gen17Nonneg,
    Gen17Infsum,
    Gen17K2,
    Gen17Displayed,
    P1,
    P2,
    P3,
    PfT2,
    MGauss,
    MEnum,
    BridgeC,
    Euler,
    BadExponent,
}

impl IdentityId {
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::ThmGfA => "ThmGF-a",
            IdentityId::ThmGfAp => "ThmGF-ap",
            IdentityId::ThmGfB => "ThmGF-b",
            IdentityId::ThmComb1 => "ThmComb-1",
            IdentityId::ThmComb2 => "ThmComb-2",
            IdentityId::ThmComb3 => "ThmComb-3",
            IdentityId::TruncEq => "Trunc-eq",
            IdentityId::TruncNonneg => "Trunc-nonneg",
            IdentityId::TruncInfsum => "Trunc-infsum",
            IdentityId::Gen17Eq => "Gen17-eq",
            IdentityId::Gen17Nonneg => "Gen17-nonneg",
            IdentityId::Gen17Infsum => "Gen17-infsum",
            IdentityId::Gen17K2 => "Gen17-k2",
            IdentityId::Gen17Displayed => "Gen17-displayed",
            IdentityId::P1 => "P1",
            IdentityId::P2 => "P2",
            IdentityId::P3 => "P3",
            IdentityId::PfT2 => "PfT2",
            IdentityId::MGauss => "M-gauss",
            IdentityId::MEnum => "M-enum",
            IdentityId::BridgeC => "Bridge-c",
            IdentityId::Euler => "Euler",
            IdentityId::BadExponent => "BadExponent",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Grid coordinates of one check. Ordered by `n` first so the first failure
/// in a sorted list is the smallest counterexample.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CaseParams {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
}

impl CaseParams {
    fn n(n: usize) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }

    fn k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }

    fn p(mut self, p: u32) -> Self {
        self.p = Some(p);
        self
    }

    fn ell(mut self, ell: u32) -> Self {
        self.ell = Some(ell);
        self
    }
}

impl fmt::Display for CaseParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        if let Some(p) = self.p {
            write!(f, " p={p}")?;
        }
        if let Some(ell) = self.ell {
            write!(f, " ell={ell}")?;
        }
        Ok(())
    }
}

/// Both sides of one identity at one grid cell. For inequality identities
/// `rhs` is zero and the case passes when `lhs >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCase {
    pub identity: IdentityId,
    #[serde(flatten)]
    pub params: CaseParams,
    #[serde(serialize_with = "serialize_json_int")]
    pub lhs: BigInt,
    #[serde(serialize_with = "serialize_json_int")]
    pub rhs: BigInt,
    pub pass: bool,
}

impl IdentityCase {
    pub fn equality(identity: IdentityId, params: CaseParams, lhs: BigInt, rhs: BigInt) -> Self {
        let pass = lhs == rhs;
        Self {
            identity,
            params,
            lhs,
            rhs,
            pass,
        }
    }

    pub fn nonnegative(identity: IdentityId, params: CaseParams, lhs: BigInt) -> Self {
        let pass = !lhs.is_negative();
        Self {
            identity,
            params,
            lhs,
            rhs: BigInt::zero(),
            pass,
        }
    }

    fn sort_key(&self) -> (IdentityId, CaseParams) {
        (self.identity, self.params)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Gf,
    Comb,
    Trunc,
    TruncCorollaries,
    Gen17,
    Overpartition,
    MRoutes,
    CBridge,
    Euler,
    /// Counterexample search for the displayed `[k|n] c_k(n)` form.
    Gen17Displayed,
    /// Counterexample search for the `(-1)^j` exponent.
    BadExponent,
}

impl Suite {
    /// The suites `verify all` runs; every one of them is expected to pass.
    pub const IDENTITIES: [Suite; 9] = [
        Suite::Gf,
        Suite::Comb,
        Suite::Trunc,
        Suite::TruncCorollaries,
        Suite::Gen17,
        Suite::Overpartition,
        Suite::MRoutes,
        Suite::CBridge,
        Suite::Euler,
    ];

    pub const WITNESSES: [Suite; 2] = [Suite::Gen17Displayed, Suite::BadExponent];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gf => "gf",
            Suite::Comb => "comb",
            Suite::Trunc => "trunc",
            Suite::TruncCorollaries => "trunc-corollaries",
            Suite::Gen17 => "gen17",
            Suite::Overpartition => "overpartition",
            Suite::MRoutes => "m-routes",
            Suite::CBridge => "c-bridge",
            Suite::Euler => "euler",
            Suite::Gen17Displayed => "gen17-displayed",
            Suite::BadExponent => "bad-exponent",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::IDENTITIES
            .into_iter()
            .chain(Suite::WITNESSES)
            .find(|s| s.name() == name)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Suite {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Parameter grid for a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    /// Largest `n` checked by series-backed suites.
    pub n_max: usize,
    pub k_range: RangeInclusive<u32>,
    pub ell_range: RangeInclusive<u32>,
    /// Largest `n` for suites that enumerate partitions.
    pub enum_cap: usize,
    /// Largest `n` for the `2^n` subset oracle.
    pub subset_cap: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            n_max: 60,
            k_range: 1..=4,
            ell_range: 1..=3,
            enum_cap: DEFAULT_ENUM_CAP,
            subset_cap: DEFAULT_SUBSET_CAP,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.k_range.is_empty() || *self.k_range.start() == 0 {
            return bad(format!(
                "k range {:?} must be non-empty and start at >= 1",
                self.k_range
            ));
        }
        if self.ell_range.is_empty() || *self.ell_range.start() == 0 {
            return bad(format!(
                "ell range {:?} must be non-empty and start at >= 1",
                self.ell_range
            ));
        }
        if self.subset_cap >= 64 {
            return bad(format!("subset cap {} must be below 64", self.subset_cap));
        }
        Ok(())
    }

    fn k_max(&self) -> u32 {
        *self.k_range.end()
    }

    /// Series truncation order; shifted sums read up to `n + k`.
    pub fn series_order(&self) -> usize {
        self.n_max + self.k_max().max(2) as usize + 1
    }

    fn enum_max(&self) -> usize {
        self.n_max.min(self.enum_cap)
    }

    fn subset_max(&self) -> usize {
        self.n_max.min(self.subset_cap)
    }

    fn ks(&self) -> impl Iterator<Item = u32> + Clone {
        self.k_range.clone()
    }

    fn ells(&self) -> impl Iterator<Item = u32> + Clone {
        self.ell_range.clone()
    }

    fn describe(&self, n_max: usize, with_k: bool, with_ell: bool) -> String {
        let mut s = format!("n=1..={n_max}");
        if with_k {
            s += &format!(" k={}..={}", self.k_range.start(), self.k_range.end());
        }
        if with_ell {
            s += &format!(" ell={}..={}", self.ell_range.start(), self.ell_range.end());
        }
        s
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub range: String,
    pub total: usize,
    pub failed: usize,
    pub passed: bool,
    pub failures: Vec<IdentityCase>,
    /// Not serialized: JSON reports must be reproducible byte for byte.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    fn from_cases(
        suite: Suite,
        range: String,
        mut cases: Vec<IdentityCase>,
        started: Instant,
    ) -> Self {
        cases.sort_by_key(IdentityCase::sort_key);
        let total = cases.len();
        let failures: Vec<_> = cases.into_iter().filter(|c| !c.pass).collect();
        Self {
            suite,
            range,
            total,
            failed: failures.len(),
            passed: failures.is_empty(),
            failures,
            wall_time: started.elapsed(),
        }
    }

    /// Smallest failing cell.
    pub fn first_failure(&self) -> Option<&IdentityCase> {
        self.failures.iter().min_by_key(|c| (c.params, c.identity))
    }
}

/// Every series-backed table a sweep reads, computed once up front.
#[derive(Clone, Debug)]
pub struct Tables {
    order: usize,
    map: BTreeMap<(StatId, Params), StatTable>,
}

impl Tables {
    pub fn build(cfg: &SweepConfig) -> Result<Self> {
        cfg.validate()?;
        let order = cfg.series_order();
        let mut keys = vec![
            (StatId::P, Params::none()),
            (StatId::Q, Params::none()),
            (StatId::C, Params::none()),
        ];
        let mut ks: Vec<u32> = cfg.ks().collect();
        ks.extend([1, 2]);
        ks.sort_unstable();
        ks.dedup();
        for &k in &ks {
            keys.push((StatId::Ak, Params::k(k)));
            keys.push((StatId::Bk, Params::k(k)));
            keys.push((StatId::Ck, Params::k(k)));
            keys.extend((0..k).map(|p| (StatId::Akp, Params::kp(k, p))));
        }
        for ell in cfg.ells() {
            keys.push((StatId::MEll, Params::ell(ell)));
            keys.push((StatId::MpEll, Params::ell(ell)));
        }
        let tables: Vec<StatTable> = keys
            .into_par_iter()
            .map(|(stat, params)| match stat {
                // M_ell goes in unchecked; the m-routes suite does the cross-checking
                StatId::MEll => {
                    let ell = params.ell.expect("ell set");
                    let s = stats::m_ell_pentagonal(ell, order)?;
                    Ok(StatTable::new(stat, params, s.into_coeffs()))
                }
                _ => stats::compute(stat, params, order),
            })
            .collect::<Result<_>>()?;
        let map = tables
            .into_iter()
            .map(|t| ((t.stat(), t.params()), t))
            .collect();
        Ok(Self { order, map })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, stat: StatId, params: Params) -> &StatTable {
        self.map
            .get(&(stat, params))
            .unwrap_or_else(|| panic!("table {stat}/{params} was not built"))
    }

    fn b(&self, k: u32) -> &StatTable {
        self.get(StatId::Bk, Params::k(k))
    }

    fn c_k(&self, k: u32) -> &StatTable {
        self.get(StatId::Ck, Params::k(k))
    }

    fn m(&self, ell: u32) -> &StatTable {
        self.get(StatId::MEll, Params::ell(ell))
    }

    fn mp(&self, ell: u32) -> &StatTable {
        self.get(StatId::MpEll, Params::ell(ell))
    }

    /// Adds `delta` to one entry of a built table.
    pub fn perturb(&mut self, stat: StatId, params: Params, n: usize, delta: i64) {
        self.map
            .get_mut(&(stat, params))
            .unwrap_or_else(|| panic!("table {stat}/{params} was not built"))
            .perturb(n, delta);
    }
}

fn signed(negative: bool, v: BigInt) -> BigInt {
    if negative {
        -v
    } else {
        v
    }
}

fn odd(e: u32) -> bool {
    e % 2 == 1
}

fn over_n<F>(n_max: usize, cell: F) -> Vec<IdentityCase>
where
    F: Fn(usize) -> Vec<IdentityCase> + Sync + Send,
{
    (1..=n_max).into_par_iter().flat_map_iter(cell).collect()
}

fn gf_cases(cfg: &SweepConfig, t: &Tables) -> Vec<IdentityCase> {
    over_n(cfg.enum_max(), |n| {
        let census = MultiplicityCensus::of(n);
        let ni = n as i64;
        let mut out = Vec::new();
        for k in cfg.ks() {
            let at = CaseParams::n(n).k(k);
            out.push(IdentityCase::equality(
                IdentityId::ThmGfA,
                at,
                t.get(StatId::Ak, Params::k(k)).at(ni).clone(),
                census.a_kp(k, 0),
            ));
            for p in 0..k {
                out.push(IdentityCase::equality(
                    IdentityId::ThmGfAp,
                    at.p(p),
                    t.get(StatId::Akp, Params::kp(k, p)).at(ni).clone(),
                    census.a_kp(k, p),
                ));
            }
            out.push(IdentityCase::equality(
                IdentityId::ThmGfB,
                at,
                t.b(k).at(ni).clone(),
                census.b_k(k),
            ));
        }
        out
    })
}

fn comb_cases(cfg: &SweepConfig, t: &Tables) -> Vec<IdentityCase> {
    over_n(cfg.n_max, |n| {
        let ni = n as i64;
        let mut out = Vec::new();
        for k in cfg.ks() {
            let b = t.b(k);
            let at = CaseParams::n(n).k(k);
            out.push(IdentityCase::equality(
                IdentityId::ThmComb1,
                at,
                t.get(StatId::Ak, Params::k(k)).at(ni).clone(),
                b.at(ni) * BigInt::from(k),
            ));
            for p in 1..k {
                let (kk, pp) = (i64::from(k), i64::from(p));
                let rhs =
                    b.at(ni - pp) * BigInt::from(k - p) + b.at(ni + kk - pp) * BigInt::from(p);
                out.push(IdentityCase::equality(
                    IdentityId::ThmComb2,
                    at.p(p),
                    t.get(StatId::Akp, Params::kp(k, p)).at(ni).clone(),
                    rhs,
                ));
            }
        }
        let b2 = t.b(2);
        out.push(IdentityCase::equality(
            IdentityId::ThmComb3,
            CaseParams::n(n),
            t.get(StatId::Ak, Params::k(1)).at(ni).clone(),
            b2.at(ni + 1) + b2.at(ni) * 2 + b2.at(ni - 1),
        ));
        out
    })
}

/// `sum_{j=-(ell-1)}^{ell} (-1)^j b_k(n - j(3j-1)/2)`.
fn truncated_pentagonal_sum(b: &StatTable, n: i64, ell: u32) -> BigInt {
    let ell = i64::from(ell);
    (-(ell - 1)..=ell)
        .map(|j| signed(j.rem_euclid(2) == 1, b.at(n - pentagonal(j)).clone()))
        .sum()
}

/// `sum_{j in Z} (-1)^j b_k(n - j(3j-1)/2)`; only finitely many terms have a
/// non-negative argument.
fn bilateral_pentagonal_sum(b: &StatTable, n: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for m in 0i64.. {
        let (g_pos, g_neg) = (pentagonal(m), pentagonal(-m));
        if g_pos > n && g_neg > n {
            break;
        }
        acc += signed(m % 2 == 1, b.at(n - g_pos).clone());
        if m > 0 {
            acc += signed(m % 2 == 1, b.at(n - g_neg).clone());
        }
    }
    acc
}

fn trunc_lhs(t: &Tables, k: u32, ell: u32, n: usize) -> BigInt {
    let inner =
        truncated_pentagonal_sum(t.b(k), n as i64, ell) - divisor_indicator_term(n as u64, k);
    signed(odd(ell - 1), inner)
}

fn trunc_cases(cfg: &SweepConfig, t: &Tables) -> Vec<IdentityCase> {
    over_n(cfg.n_max, |n| {
        let mut out = Vec::new();
        for k in cfg.ks() {
            for ell in cfg.ells() {
                let m = t.m(ell);
                let rhs: BigInt = (1..=n / k as usize)
                    .map(|j| m.at((n - k as usize * j) as i64) * BigInt::from(j))
                    .sum();
                out.push(IdentityCase::equality(
                    IdentityId::TruncEq,
                    CaseParams::n(n).k(k).ell(ell),
                    trunc_lhs(t, k, ell, n),
                    rhs,
                ));
            }
        }
        out
    })
}

fn trunc_corollary_cases(cfg: &SweepConfig, t: &Tables) -> Vec<IdentityCase> {
    over_n(cfg.n_max, |n| {
        let mut out = Vec::new();
        for k in cfg.ks() {
            for ell in cfg.ells() {
                out.push(IdentityCase::nonnegative(
                    IdentityId::TruncNonneg,
                    CaseParams::n(n).k(k).ell(ell),
                    trunc_lhs(t, k, ell, n),
                ));
            }
            out.push(IdentityCase::equality(
                IdentityId::TruncInfsum,
                CaseParams::n(n).k(k),
                bilateral_pentagonal_sum(t.b(k), n as i64),
                divisor_indicator_term(n as u64, k),
            ));
        }
        out
    })
}

/// How the sign of the `j`-th triangular term is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaSign {
    /// `(-1)^{j(j+1)/2}`.
    Triangular,
    /// `(-1)^j`, the uncorrected exponent.
    Index,
}

impl ThetaSign {
    fn negative(self, j: u64) -> bool {
        match self {
            ThetaSign::Triangular => triangular(j) % 2 == 1,
            ThetaSign::Index => j % 2 == 1,
        }
    }
}

/// `sum_{j=0}^{terms-1} sign_j b(n - j(j+1)/2)`.
fn triangular_sum(b: &StatTable, n: i64, terms: u64, rule: ThetaSign) -> BigInt {
    (0..terms)
        .map(|j| (j, triangular(j) as i64))
        .take_while(|&(_, tj)| tj <= n)
        .map(|(j, tj)| signed(rule.negative(j), b.at(n - tj).clone()))
        .sum()
}

fn gen17_rhs(t: &Tables, k: u32, ell: u32, n: usize) -> BigInt {
    let (c, mp) = (t.c_k(k), t.mp(ell));
    (0..=n)
        .map(|j| c.at(j as i64) * mp.at((n - j) as i64))
        .sum()
}

/// `(-1)^(ell-1) (sum_{j<2ell} (-1)^{T_j} b_k(n - T_j) - subtrahend)`.
fn gen17_lhs(t: &Tables, k: u32, ell: u32, n: usize, subtrahend: &BigInt) -> BigInt {
    let s = triangular_sum(t.b(k), n as i64, 2 * u64::from(ell), ThetaSign::Triangular);
    signed(odd(ell - 1), s - subtrahend)
}

/// The k = 2 specialisation written with `c(n/2)` for even `n`, using the
/// given sign rule inside the sum.
fn gen17_k2_case(t: &Tables, ell: u32, n: usize, rule: ThetaSign, id: IdentityId) -> IdentityCase {
    let b = t.b(2);
    let c = t.get(StatId::C, Params::none());
    let s = triangular_sum(b, n as i64, 2 * u64::from(ell), rule);
    let sub = if n.is_multiple_of(2) {
        c.at((n / 2) as i64).clone()
    } else {
        BigInt::zero()
    };
    let lhs = signed(odd(ell - 1), s - sub);
    let mp = t.mp(ell);
    let rhs: BigInt = (1..=n / 2)
        .map(|j| c.at(j as i64) * mp.at((n - 2 * j) as i64))
        .sum();
    IdentityCase::equality(id, CaseParams::n(n).k(2).ell(ell), lhs, rhs)
}

fn gen17_cases(cfg: &SweepConfig, t: &Tables) -> Vec<IdentityCase> {
    over_n(cfg.n_max, |n| {
        let ni = n as i64;
        let mut out = Vec::new();
        for k in cfg.ks() {
            let ck = t.c_k(k).at(ni).clone();
            for ell in cfg.ells() {
                let at = CaseParams::n(n).k(k).ell(ell);
                let lhs = gen17_lhs(t, k, ell, n, &ck);
                out.push(IdentityCase::nonnegative(
                    IdentityId::Gen17Nonneg,
                    at,
                    lhs.clone(),
                ));
                out.push(IdentityCase::equality(
                    IdentityId::Gen17Eq,
                    at,
                    lhs,
                    gen17_rhs(t, k, ell, n),
                ));
            }
            let b = t.b(k);
            let full = triangular_sum(b, ni, u64::MAX, ThetaSign::Triangular);
            out.push(IdentityCase::equality(
                IdentityId::Gen17Infsum,
                CaseParams::n(n).k(k),
                full,
                ck,
            ));
        }
        for ell in cfg.ells() {
            out.push(gen17_k2_case(
                t,
                ell,
                n,
                ThetaSign::Triangular,
                IdentityId::Gen17K2,
            ));
        }
        out
    })
}

fn gen17_displayed_cases(cfg: &SweepConfig, t: &Tables) -> Vec<IdentityCase> {
    over_n(cfg.n_max, |n| {
        let mut out = Vec::new();
        for k in cfg.ks() {
            let sub = if n % k as usize == 0 {
                t.c_k(k).at(n as i64).clone()
            } else {
                BigInt::zero()
            };
            for ell in cfg.ells() {
                out.push(IdentityCase::equality(
                    IdentityId::Gen17Displayed,
                    CaseParams::n(n).k(k).ell(ell),
                    gen17_lhs(t, k, ell, n, &sub),
                    gen17_rhs(t, k, ell, n),
                ));
            }
        }
        out
    })
}

fn bad_exponent_cases(cfg: &SweepConfig, t: &Tables) -> Vec<IdentityCase> {
    over_n(cfg.n_max, |n| {
        cfg.ells()
            .map(|ell| gen17_k2_case(t, ell, n, ThetaSign::Index, IdentityId::BadExponent))
            .collect()
    })
}

fn overpartition_cases(cfg: &SweepConfig, t: &Tables) -> Vec<IdentityCase> {
    let order = cfg.enum_max();
    // (q^k/(1-q^k)) * (1/(1-q^k)) * 1/(q;q)_inf, assembled factor by factor
    let a_counting: BTreeMap<u32, TruncatedSeries> = cfg
        .ks()
        .map(|k| {
            let ku = k as usize;
            let one_minus = &TruncatedSeries::one(order) - &TruncatedSeries::monomial(order, ku, 1);
            let geometric = one_minus.invert().expect("unit constant");
            let overlined = TruncatedSeries::monomial(order, ku, 1)
                .mul(&geometric)
                .expect("same order");
            let s = overlined
                .mul(&geometric)
                .and_then(|s| s.mul(&stats::partition_series(order)))
                .expect("same order");
            (k, s)
        })
        .collect();
    let ks: Vec<u32> = cfg.ks().collect();
    over_n(order, |n| {
        let census = enumerate::overpartition_census(n, &ks).expect("n, k >= 1");
        let mut out = Vec::new();
        for (&k, &(overlined_sum, a_count)) in ks.iter().zip(&census) {
            let at = CaseParams::n(n).k(k);
            out.push(IdentityCase::equality(
                IdentityId::P1,
                at,
                t.get(StatId::Ak, Params::k(k)).at(n as i64).clone(),
                overlined_sum.into(),
            ));
            out.push(IdentityCase::equality(
                IdentityId::P2,
                at,
                a_count.into(),
                a_counting[&k].coeff(n).clone(),
            ));
            out.push(IdentityCase::equality(
                IdentityId::P3,
                at,
                overlined_sum.into(),
                BigInt::from(k) * a_count,
            ));
        }
        out
    })
}

fn m_route_cases(cfg: &SweepConfig, t: &Tables) -> Result<Vec<IdentityCase>> {
    let order = cfg.n_max;
    let routes: Vec<(u32, TruncatedSeries, Vec<BigInt>)> = cfg
        .ells()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|ell| {
            Ok((
                ell,
                stats::m_ell_gaussian(ell, order)?,
                stats::m_ell_pdiff(ell, order)?,
            ))
        })
        .collect::<Result<_>>()?;
    let enum_max = cfg.enum_max();
    let ell_max = *cfg.ell_range.end();
    Ok(over_n(order, |n| {
        let counted = (n <= enum_max).then(|| enumerate::m_ell_census(n, ell_max));
        let mut out = Vec::new();
        for (ell, gauss, pdiff) in &routes {
            let at = CaseParams::n(n).ell(*ell);
            let m = t.m(*ell).at(n as i64);
            out.push(IdentityCase::equality(
                IdentityId::PfT2,
                at,
                pdiff[n].clone(),
                m.clone(),
            ));
            out.push(IdentityCase::equality(
                IdentityId::MGauss,
                at,
                gauss.coeff(n).clone(),
                m.clone(),
            ));
            if let Some(counted) = &counted {
                let c = counted[*ell as usize - 1];
                out.push(IdentityCase::equality(
                    IdentityId::MEnum,
                    at,
                    c.into(),
                    m.clone(),
                ));
            }
        }
        out
    }))
}

fn c_bridge_cases(cfg: &SweepConfig, t: &Tables) -> Result<Vec<IdentityCase>> {
    let c = t.get(StatId::C, Params::none());
    (1..=cfg.subset_max())
        .into_par_iter()
        .map(|n| {
            let subsets = enumerate::c_subset_oracle_capped(n, cfg.subset_cap)?;
            Ok(IdentityCase::equality(
                IdentityId::BridgeC,
                CaseParams::n(n),
                c.at(n as i64).clone(),
                subsets.into(),
            ))
        })
        .collect()
}

fn euler_cases(cfg: &SweepConfig) -> Vec<IdentityCase> {
    let product = series::euler_product(cfg.n_max);
    let pent = series::pentagonal_series(None, cfg.n_max);
    (1..=cfg.n_max)
        .map(|n| {
            IdentityCase::equality(
                IdentityId::Euler,
                CaseParams::n(n),
                product.coeff(n).clone(),
                pent.coeff(n).clone(),
            )
        })
        .collect()
}

/// Runs one suite against prebuilt tables.
pub fn run_suite(suite: Suite, cfg: &SweepConfig, tables: &Tables) -> Result<VerificationReport> {
    cfg.validate()?;
    if tables.order() < cfg.series_order() {
        return Err(Error::InvalidConfig(format!(
            "tables built to order {} but the sweep needs {}",
            tables.order(),
            cfg.series_order()
        )));
    }
    let started = Instant::now();
    let (cases, range) = match suite {
        Suite::Gf => (
            gf_cases(cfg, tables),
            cfg.describe(cfg.enum_max(), true, false),
        ),
        Suite::Comb => (
            comb_cases(cfg, tables),
            cfg.describe(cfg.n_max, true, false),
        ),
        Suite::Trunc => (
            trunc_cases(cfg, tables),
            cfg.describe(cfg.n_max, true, true),
        ),
        Suite::TruncCorollaries => (
            trunc_corollary_cases(cfg, tables),
            cfg.describe(cfg.n_max, true, true),
        ),
        Suite::Gen17 => (
            gen17_cases(cfg, tables),
            cfg.describe(cfg.n_max, true, true),
        ),
        Suite::Gen17Displayed => (
            gen17_displayed_cases(cfg, tables),
            cfg.describe(cfg.n_max, true, true),
        ),
        Suite::BadExponent => (
            bad_exponent_cases(cfg, tables),
            cfg.describe(cfg.n_max, false, true) + " k=2",
        ),
        Suite::Overpartition => (
            overpartition_cases(cfg, tables),
            cfg.describe(cfg.enum_max(), true, false),
        ),
        Suite::MRoutes => (
            m_route_cases(cfg, tables)?,
            cfg.describe(cfg.n_max, false, true),
        ),
        Suite::CBridge => (
            c_bridge_cases(cfg, tables)?,
            cfg.describe(cfg.subset_max(), false, false),
        ),
        Suite::Euler => (euler_cases(cfg), cfg.describe(cfg.n_max, false, false)),
    };
    Ok(VerificationReport::from_cases(suite, range, cases, started))
}

/// Builds the tables once and runs the given suites in order.
pub fn run_suites(cfg: &SweepConfig, suites: &[Suite]) -> Result<Vec<VerificationReport>> {
    let tables = Tables::build(cfg)?;
    suites.iter().map(|&s| run_suite(s, cfg, &tables)).collect()
}

/// Every identity suite at the configured ranges.
pub fn run_all(cfg: &SweepConfig) -> Result<Vec<VerificationReport>> {
    run_suites(cfg, &Suite::IDENTITIES)
}

fn single(k: u32, ell: u32, n_max: usize) -> SweepConfig {
    SweepConfig {
        n_max,
        k_range: k..=k,
        ell_range: ell..=ell,
        ..SweepConfig::default()
    }
}

/// The truncated pentagonal identity for `b_k` and `M_ell` at every `n <= n_max`.
pub fn verify_trunc(k: u32, ell: u32, n_max: usize) -> Result<VerificationReport> {
    Ok(run_suites(&single(k, ell, n_max), &[Suite::Trunc])?.remove(0))
}

/// Non-negativity for every `ell <= ell_max`, and the bilateral sum.
pub fn verify_trunc_corollaries(k: u32, ell_max: u32, n_max: usize) -> Result<VerificationReport> {
    let cfg = SweepConfig {
        ell_range: 1..=ell_max,
        ..single(k, 1, n_max)
    };
    Ok(run_suites(&cfg, &[Suite::TruncCorollaries])?.remove(0))
}

/// The truncated theta identity for `b_k` and `MP_ell` with both corollaries.
pub fn verify_gen17(k: u32, ell: u32, n_max: usize) -> Result<VerificationReport> {
    Ok(run_suites(&single(k, ell, n_max), &[Suite::Gen17])?.remove(0))
}

/// Overpartition sum, counting series, and merge identities.
pub fn verify_overpartition_identities(k: u32, n_max: usize) -> Result<VerificationReport> {
    let cfg = SweepConfig {
        enum_cap: n_max,
        ..single(k, 1, n_max)
    };
    Ok(run_suites(&cfg, &[Suite::Overpartition])?.remove(0))
}

/// Smallest `(n, ell)`, `ell <= ell_max`, at which the `k = 2` triangular
/// identity fails when written with `(-1)^j` instead of `(-1)^{j(j+1)/2}`.
pub fn find_bad_exponent_counterexample(
    n_max: usize,
    ell_max: u32,
) -> Result<Option<(usize, u32)>> {
    let cfg = SweepConfig {
        ell_range: 1..=ell_max,
        ..single(2, 1, n_max)
    };
    let report = run_suites(&cfg, &[Suite::BadExponent])?.remove(0);
    Ok(report
        .first_failure()
        .map(|c| (c.params.n, c.params.ell.expect("ell recorded"))))
}
