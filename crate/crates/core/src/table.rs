//! Statistic tables and their on-disk forms.
//!
//! CSV is a two-column `n,value` file with decimal integers of arbitrary
//! width. JSON writes integers as numbers while they fit in a double's
//! 53-bit mantissa and as decimal strings beyond that.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatId {
    Ak,
    Akp,
    Bk,
    Ck,
    MEll,
    MpEll,
    Q,
    P,
    C,
}

impl StatId {
    pub const ALL: [StatId; 9] = [
        StatId::Ak,
        StatId::Akp,
        StatId::Bk,
        StatId::Ck,
        StatId::MEll,
        StatId::MpEll,
        StatId::Q,
        StatId::P,
        StatId::C,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StatId::Ak => "a_k",
            StatId::Akp => "a_kp",
            StatId::Bk => "b_k",
            StatId::Ck => "c_k",
            StatId::MEll => "M_ell",
            StatId::MpEll => "MP_ell",
            StatId::Q => "Q",
            StatId::P => "p",
            StatId::C => "c",
        }
    }
}

impl fmt::Display for StatId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StatId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown statistic '{s}'")))
    }
}

impl Serialize for StatId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// The `k`, `p`, `ell` parameters a statistic carries (absent ones are `None`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
}

impl Params {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn k(k: u32) -> Self {
        Self {
            k: Some(k),
            ..Self::default()
        }
    }

    pub fn kp(k: u32, p: u32) -> Self {
        Self {
            k: Some(k),
            p: Some(p),
            ell: None,
        }
    }

    pub fn ell(ell: u32) -> Self {
        Self {
            ell: Some(ell),
            ..Self::default()
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fields = [("k", self.k), ("p", self.p), ("ell", self.ell)];
        let mut first = true;
        for (name, value) in fields {
            if let Some(v) = value {
                if !first {
                    f.write_str(",")?;
                }
                first = false;
                write!(f, "{name}={v}")?;
            }
        }
        Ok(())
    }
}

/// Values of one statistic for `n = 0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatTable {
    stat: StatId,
    params: Params,
    values: Vec<BigInt>,
}

impl StatTable {
    pub fn new(stat: StatId, params: Params, values: Vec<BigInt>) -> Self {
        assert!(!values.is_empty(), "a table holds at least n = 0");
        Self {
            stat,
            params,
            values,
        }
    }

    pub fn stat(&self) -> StatId {
        self.stat
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Largest `n` held.
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    /// `"stat/params"`, e.g. `a_kp/k=3,p=2`, or the bare stat name.
    pub fn key(&self) -> String {
        table_key(self.stat, self.params)
    }

    /// Value at `n`; negative indices read as zero. Panics past the order,
    /// since that value was never computed.
    pub fn at(&self, n: i64) -> &BigInt {
        if n < 0 {
            return &BigInt::ZERO;
        }
        let i = n as usize;
        assert!(
            i <= self.order(),
            "{}: index {i} past truncation order {}",
            self.key(),
            self.order()
        );
        &self.values[i]
    }

    pub fn get(&self, n: i64) -> Result<&BigInt> {
        if n >= 0 && n as usize > self.order() {
            return Err(Error::OutOfRange {
                index: n as usize,
                order: self.order(),
            });
        }
        Ok(self.at(n))
    }

    /// Adds `delta` to one entry. Used to inject faults in mutation tests.
    pub fn perturb(&mut self, n: usize, delta: i64) {
        self.values[n] += delta;
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(["n", "value"])?;
        for (n, v) in self.values.iter().enumerate() {
            w.write_record([n.to_string(), v.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads back a table written by [`StatTable::write_csv`]. Rows must be
    /// contiguous from `n = 0`.
    pub fn read_csv<R: Read>(stat: StatId, params: Params, input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let headers = r.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["n", "value"] {
            return Err(Error::Parse(format!("unexpected header {headers:?}")));
        }
        let mut values = Vec::new();
        for record in r.records() {
            let record = record?;
            let n: usize = record[0]
                .parse()
                .map_err(|_| Error::Parse(format!("bad index '{}'", &record[0])))?;
            if n != values.len() {
                return Err(Error::Parse(format!(
                    "expected row n={}, got {n}",
                    values.len()
                )));
            }
            let v: BigInt = record[1]
                .parse()
                .map_err(|_| Error::Parse(format!("bad value '{}'", &record[1])))?;
            values.push(v);
        }
        if values.is_empty() {
            return Err(Error::Parse("no rows".into()));
        }
        Ok(Self::new(stat, params, values))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "stat": self.stat,
            "params": self.params,
            "values": self.values.iter().map(json_int).collect::<Vec<_>>(),
        })
    }

    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        let width = self.order().to_string().len().max(1);
        writeln!(out, "# {}", self.key())?;
        for (n, v) in self.values.iter().enumerate() {
            writeln!(out, "{n:>width$}  {v}")?;
        }
        Ok(())
    }
}

pub fn table_key(stat: StatId, params: Params) -> String {
    let p = params.to_string();
    if p.is_empty() {
        stat.name().to_string()
    } else {
        format!("{}/{p}", stat.name())
    }
}

const JSON_SAFE: i64 = 1 << 53;

/// A JSON number when `|v| <= 2^53`, otherwise a decimal string.
pub fn json_int(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(small) if small.abs() <= JSON_SAFE => Value::from(small),
        _ => Value::String(v.to_string()),
    }
}

/// serde adapter for [`json_int`].
pub fn serialize_json_int<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    json_int(v).serialize(s)
}

pub(crate) fn is_negative(v: &BigInt) -> bool {
    v.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn key_formats() {
        assert_eq!(table_key(StatId::Akp, Params::kp(3, 2)), "a_kp/k=3,p=2");
        assert_eq!(table_key(StatId::P, Params::none()), "p");
        assert_eq!(table_key(StatId::MEll, Params::ell(4)), "M_ell/ell=4");
        assert_eq!("MP_ell".parse::<StatId>().unwrap(), StatId::MpEll);
        assert!("zz".parse::<StatId>().is_err());
    }

    #[test]
    fn negative_indices_read_zero() {
        let t = StatTable::new(StatId::P, Params::none(), vec![1.into(), 1.into()]);
        assert_eq!(t.at(-3), &BigInt::from(0));
        assert!(matches!(
            t.get(2),
            Err(Error::OutOfRange { index: 2, order: 1 })
        ));
    }

    #[test]
    fn json_switches_to_strings_past_2_53() {
        assert_eq!(
            json_int(&BigInt::from(JSON_SAFE)),
            json!(9007199254740992i64)
        );
        assert_eq!(
            json_int(&(BigInt::from(JSON_SAFE) + 1)),
            json!("9007199254740993")
        );
        assert_eq!(json_int(&BigInt::from(-5)), json!(-5));
        assert_eq!(
            json_int(&-(BigInt::from(JSON_SAFE) + BigInt::from(1))),
            json!("-9007199254740993")
        );
    }

    #[test]
    fn csv_layout() {
        let t = StatTable::new(
            StatId::Q,
            Params::none(),
            vec![1.into(), 1.into(), 1.into()],
        );
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,value\n0,1\n1,1\n2,1\n");
    }

    #[test]
    fn csv_rejects_gaps() {
        let bad = "n,value\n0,1\n2,5\n";
        assert!(StatTable::read_csv(StatId::P, Params::none(), bad.as_bytes()).is_err());
        let header = "idx,value\n0,1\n";
        assert!(StatTable::read_csv(StatId::P, Params::none(), header.as_bytes()).is_err());
    }

    proptest! {
        #[test]
        fn csv_round_trip(vals in proptest::collection::vec(any::<i128>(), 1..40), scale in 0u32..4) {
            let factor = BigInt::from(10).pow(scale * 20);
            let values: Vec<BigInt> = vals.into_iter().map(|v| BigInt::from(v) * &factor).collect();
            let t = StatTable::new(StatId::Bk, Params::k(2), values);
            let mut buf = Vec::new();
            t.write_csv(&mut buf).unwrap();
            let back = StatTable::read_csv(StatId::Bk, Params::k(2), buf.as_slice()).unwrap();
            prop_assert_eq!(back, t);
        }
    }
}
