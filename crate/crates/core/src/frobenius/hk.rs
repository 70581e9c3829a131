use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{is_m_primary, krull_dim, length, Ideal};

use super::power::{frobenius_power, FrobeniusExponent};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HkRow {
    pub e: u32,
    pub q: u64,
    pub length: u64,
    /// `length / q^d`, exact.
    pub ratio: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HkRowText {
    pub e: u32,
    pub q: u64,
    pub length: u64,
    pub ratio_num: String,
    pub ratio_den: String,
}

/// `l(A/I^[q])` and `l(A/I^[q])/q^d` for `e = 0..=emax`. No limit is taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HkTable {
    pub d: i64,
    pub rows: Vec<HkRow>,
}

pub(crate) fn ratio(length: u64, q: u64, d: i64) -> BigRational {
    let den: BigInt = Pow::pow(BigInt::from(q), d.max(0) as u32);
    BigRational::new(BigInt::from(length), den)
}

impl HkTable {
    pub fn last_ratio(&self) -> Option<&BigRational> {
        self.rows.last().map(|r| &r.ratio)
    }

    pub fn rows_text(&self) -> Vec<HkRowText> {
        self.rows
            .iter()
            .map(|r| HkRowText {
                e: r.e,
                q: r.q,
                length: r.length,
                ratio_num: r.ratio.numer().to_string(),
                ratio_den: r.ratio.denom().to_string(),
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("e,q,length,ratio_num,ratio_den\n");
        for r in self.rows_text() {
            s.push_str(&format!("{},{},{},{},{}\n", r.e, r.q, r.length, r.ratio_num, r.ratio_den));
        }
        s
    }

    pub fn all_ratios_one(&self) -> bool {
        self.rows.iter().all(|r| r.ratio.is_one())
    }
}

pub fn hilbert_kunz(i: &Ideal, emax: u32) -> Result<HkTable> {
    if !is_m_primary(i)? {
        return Err(Error::NotMPrimary);
    }
    let d = krull_dim(&Ideal::zero(i.ring()))?;
    let p = i.ring().characteristic();
    let rows = (0..=emax)
        .into_par_iter()
        .map(|e| {
            let q = FrobeniusExponent::new(p, e)?;
            let l = length(&frobenius_power(i, q)?)?;
            Ok(HkRow { e, q: q.q, length: l, ratio: ratio(l, q.q, d) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HkTable { d, rows })
}
