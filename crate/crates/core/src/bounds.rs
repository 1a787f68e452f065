//! The asymptotic bracket for OCC(n, d), lower estimates of the growth
//! constant, and the almost super-multiplicativity inequality where it can be
//! decided from known counts.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::constructions::{extend_peak, frobenius_rep, PeakedSet};
use crate::count_table::CountTable;
use crate::error::{Error, Result};
use crate::lattice::{closure, edge_boundary_size, LatticeSet, Vertex};

/// Significant digits used when rendering exact powers of two.
pub const RENDER_DIGITS: usize = 30;

pub const UPPER_CONSTANT_CAVEAT: &str =
    "the constant C in the upper bound is unspecified; values are illustrative only";

fn check_multiple(d: usize, n: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Dimension(format!("d must be at least 2, got {d}")));
    }
    if n == 0 || !n.is_multiple_of(2 * d) {
        return Err(Error::InvalidInput(format!(
            "n = {n} is not a positive multiple of 2d = {}",
            2 * d
        )));
    }
    Ok(())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// 1 + 2^{-2d}.
pub fn slab_rate(d: usize) -> BigRational {
    BigRational::one() + BigRational::new(BigInt::one(), BigInt::one() << (2 * d))
}

/// (n/2d)(1 + 2^{-2d}), the base-2 exponent of the lower endpoint.
pub fn lower_exponent(d: usize, n: usize) -> BigRational {
    rat(n as i64, 2 * d as i64) * slab_rate(d)
}

/// (n/2d)(1 + C·(ln d)^{3/2}/√d), the base-2 exponent of the upper endpoint.
pub fn upper_exponent(d: usize, n: usize, c_upper: f64) -> f64 {
    let df = d as f64;
    n as f64 / (2.0 * df) * (1.0 + c_upper * df.ln().powf(1.5) / df.sqrt())
}

/// 2^e for a non-negative rational e, truncated to `digits` significant
/// digits. Uses exact integer roots, so every printed digit is correct.
pub fn pow2_decimal(e: &BigRational, digits: usize) -> Result<String> {
    if e.is_negative() {
        return Err(Error::InvalidInput("exponent must be non-negative".into()));
    }
    let p = e.numer().to_biguint().expect("non-negative");
    let q = e.denom().to_biguint().expect("positive");
    let (Some(p), Some(q)) = (p.to_usize(), q.to_u32()) else {
        return Err(Error::InvalidInput("exponent too large to render".into()));
    };
    // 10^k · 2^{p/q} has about digits + 2 integer digits.
    let int_digits = (p as f64 / q as f64 * std::f64::consts::LOG10_2).floor() as i64 + 1;
    let k = digits as i64 + 2 - int_digits;
    let radicand = if k >= 0 {
        (BigUint::one() << p) * BigUint::from(10u32).pow(k as u32 * q)
    } else {
        (BigUint::one() << p) / BigUint::from(10u32).pow((-k) as u32 * q)
    };
    let scaled = radicand.nth_root(q).to_string();
    // scaled = floor(2^{p/q} · 10^k); the decimal point sits k places from the right.
    let point = scaled.len() as i64 - k;
    let sig: String = scaled.chars().take(digits).collect();
    let mut out = String::new();
    if point > 0 && point as usize <= digits {
        let (a, b) = sig.split_at(point as usize);
        out.push_str(a);
        if !b.is_empty() {
            out.push('.');
            out.push_str(b);
        }
    } else {
        let _ = write!(out, "{}.{}e{}", &sig[..1], &sig[1..], point - 1);
    }
    Ok(out)
}

/// Whether count < 2^e, decided exactly.
fn below_pow2(count: u64, e: &BigRational) -> bool {
    let p = e.numer().to_biguint().expect("non-negative");
    let q = e.denom().to_u32().expect("small denominator");
    let lhs = BigUint::from(count).pow(q);
    let Some(p) = p.to_usize() else { return true };
    lhs < (BigUint::one() << p)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub d: usize,
    pub n: usize,
    /// Exact base-2 exponent of the lower endpoint.
    pub lower_exponent: String,
    pub lower: String,
    pub c_upper: f64,
    pub upper_exponent: f64,
    pub upper: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub occ: Option<u64>,
    /// Exact lower bound on log2 μ(d) from the slab construction.
    pub mu_lower: String,
    pub note: String,
    pub caveat: String,
}

/// Both endpoints of 2^{(n/2d)(1+2^{-2d})} <= OCC(n,d) <= 2^{(n/2d)(1+C·ln^{3/2}d/√d)}
/// together with the cached exact count, if any. Counts outside the bracket
/// are reported, never treated as failures: the bracket is asymptotic.
pub fn theorem_bracket(
    d: usize,
    n: usize,
    c_upper: f64,
    table: Option<&CountTable>,
) -> Result<BoundsReport> {
    check_multiple(d, n)?;
    let le = lower_exponent(d, n);
    let ue = upper_exponent(d, n, c_upper);
    let occ = table.and_then(|t| t.occ_series(d).get(&n).copied());
    let note = match occ {
        None => "no exact count available".to_string(),
        Some(c) if below_pow2(c, &le) => {
            "below asymptotic lower bound (expected: theorem requires large n)".to_string()
        }
        Some(c) if (c as f64).log2() > ue => {
            format!("above the upper bound for C = {c_upper}")
        }
        Some(_) => "inside the bracket".to_string(),
    };
    Ok(BoundsReport {
        d,
        n,
        lower_exponent: le.to_string(),
        lower: pow2_decimal(&le, RENDER_DIGITS)?,
        c_upper,
        upper_exponent: ue,
        upper: ue.exp2(),
        occ,
        mu_lower: slab_rate(d).to_string(),
        note,
        caveat: UPPER_CONSTANT_CAVEAT.to_string(),
    })
}

/// Writes reports as CSV with header `d,n,occ,lower,upper(C),mu_lower`.
pub fn bounds_csv(reports: &[BoundsReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["d", "n", "occ", "lower", "upper(C)", "mu_lower"])?;
    for r in reports {
        w.write_record([
            r.d.to_string(),
            r.n.to_string(),
            r.occ.map(|c| c.to_string()).unwrap_or_default(),
            r.lower.clone(),
            format!("{:e}", r.upper),
            r.mu_lower.clone(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthTerm {
    /// Index of b_j = a_{j-6d} / 16 j².
    pub j: usize,
    pub a_index: usize,
    pub log2_b_root: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub d: usize,
    /// Exact log2 μ(d) lower bound 1 + 2^{-2d}.
    pub slab_bound: String,
    pub slab_bound_value: f64,
    pub terms: Vec<GrowthTerm>,
    /// max over terms of log2 b_j^{1/j}.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence_bound: Option<f64>,
    /// The larger of the two bounds on log2 μ(d).
    pub log2_mu_lower: f64,
    pub partial: bool,
}

/// Lower bounds on log2 μ(d) from b_j = a_{j-6d}/16j², a_k = OCC(2dk, d),
/// which is super-multiplicative for j > 6d so μ(d) >= sup_j b_j^{1/j}, and
/// from the slab construction.
pub fn growth_estimate(d: usize, series: &BTreeMap<usize, u64>) -> Result<GrowthReport> {
    if d < 2 {
        return Err(Error::Dimension(format!("d must be at least 2, got {d}")));
    }
    let mut terms = Vec::new();
    for (&n, &count) in series {
        if n % (2 * d) != 0 || count == 0 {
            continue;
        }
        let k = n / (2 * d);
        let j = k + 6 * d;
        let log2_b = (count as f64).log2() - 4.0 - 2.0 * (j as f64).log2();
        terms.push(GrowthTerm {
            j,
            a_index: k,
            log2_b_root: log2_b / j as f64,
        });
    }
    let sequence_bound = terms.iter().map(|t| t.log2_b_root).reduce(f64::max);
    let slab = slab_rate(d);
    let slab_value = slab.to_f64().expect("small rational");
    Ok(GrowthReport {
        d,
        slab_bound: slab.to_string(),
        slab_bound_value: slab_value,
        partial: terms.is_empty(),
        log2_mu_lower: sequence_bound.map_or(slab_value, |b| b.max(slab_value)),
        sequence_bound,
        terms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Holds,
    /// The right side is at most a known lower bound on the left side.
    Vacuous,
    Unknown,
    /// Only possible with an exact left-hand count below the right side.
    Fails,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupermultReport {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub verdict: Verdict,
    /// OCC(n)·OCC(m) / (m/d)^{d/(d-1)}, when both counts are known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<u64>,
    /// Known lower bound on OCC(n+m+k) used for a vacuous verdict.
    pub lhs_lower: u64,
}

/// An odd cutset containing the origin with exactly `n` boundary edges,
/// built by extending the peak of 0^+ with diagonal and straight bumps.
pub fn staircase_cutset(d: usize, n: usize) -> Result<LatticeSet> {
    check_multiple(d, n)?;
    let units = (n / (2 * d))
        .checked_sub(2 * d - 1)
        .ok_or_else(|| Error::InvalidInput(format!("n = {n} is below the minimum 2d(2d-1)")))?;
    let (r, s) = frobenius_rep(units, d)?;
    let plus = closure(&LatticeSet::singleton(Vertex::origin(d)));
    let base = PeakedSet {
        set: plus,
        peak: Vertex::origin(d),
    };
    let out = extend_peak(&base, r, s)?.set;
    debug_assert_eq!(edge_boundary_size(&out), n);
    Ok(out)
}

/// Decides OCC(n+m+k) >= OCC(n)·OCC(m)/(m/d)^{d/(d-1)} where possible.
///
/// The inequality is compared as OCC(n+m+k)^{d-1} · m^d >= (OCC(n)·OCC(m))^{d-1} · d^d
/// in integers. Without an exact left side, a right side of at most 1 is
/// settled by exhibiting one cutset with n+m+k boundary edges.
pub fn supermult_check(
    d: usize,
    n: usize,
    m: usize,
    k: usize,
    table: &CountTable,
) -> Result<SupermultReport> {
    for x in [n, m, k] {
        check_multiple(d, x)?;
    }
    if k < 12 * d * d {
        return Err(Error::InvalidInput(format!(
            "k = {k} must be at least 12d² = {}",
            12 * d * d
        )));
    }
    let series = table.occ_series(d);
    let (on, om, ol) = (series.get(&n), series.get(&m), series.get(&(n + m + k)));
    let mut report = SupermultReport {
        d,
        n,
        m,
        k,
        verdict: Verdict::Unknown,
        rhs: None,
        lhs: ol.copied(),
        lhs_lower: 0,
    };
    let (Some(&on), Some(&om)) = (on, om) else {
        return Ok(report);
    };
    let e = (d - 1) as u32;
    let rhs_scaled = BigUint::from(on * om).pow(e) * BigUint::from(d).pow(d as u32);
    let denom = BigUint::from(m).pow(d as u32);
    report.rhs = Some((on * om) as f64 / (m as f64 / d as f64).powf(d as f64 / (d as f64 - 1.0)));
    let holds_for = |lhs: u64| BigUint::from(lhs).pow(e) * &denom >= rhs_scaled;
    if let Some(&lhs) = ol {
        report.lhs_lower = lhs;
        report.verdict = if holds_for(lhs) {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        return Ok(report);
    }
    if rhs_scaled.is_zero() {
        report.verdict = Verdict::Vacuous;
        return Ok(report);
    }
    if holds_for(1) {
        staircase_cutset(d, n + m + k)?;
        report.lhs_lower = 1;
        report.verdict = Verdict::Vacuous;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count_table::{CountRow, ORACLE_VERSION};

    fn table(d: usize, rows: &[(usize, u64)]) -> CountTable {
        let mut t = CountTable::in_memory();
        for &(n, count) in rows {
            t.record(CountRow {
                d,
                n,
                r: 1,
                mode: "contains".into(),
                count,
                oracle_version: ORACLE_VERSION.into(),
                seconds: 0.0,
            })
            .unwrap();
        }
        t
    }

    #[test]
    fn exact_lower_exponents() {
        assert_eq!(lower_exponent(2, 12), rat(51, 16));
        assert_eq!(lower_exponent(2, 16), rat(17, 4));
        assert_eq!(lower_exponent(2, 24), lower_exponent(2, 12) * rat(2, 1));
    }

    #[test]
    fn rendering() {
        assert_eq!(pow2_decimal(&rat(3, 1), 6).unwrap(), "8.00000");
        assert_eq!(pow2_decimal(&rat(1, 2), 10).unwrap(), "1.414213562");
        assert_eq!(pow2_decimal(&rat(200, 1), 5).unwrap(), "1.6069e60");
        let r = pow2_decimal(&rat(51, 16), 30).unwrap();
        assert!(r.starts_with("9.11"), "{r}");
        assert_eq!(r.len(), 31);
        assert!(pow2_decimal(&rat(17, 4), 30).unwrap().starts_with("19.02"));
    }

    #[test]
    fn bracket_reports_small_counts_below() {
        let t = table(2, &[(12, 1)]);
        let r = theorem_bracket(2, 12, 1.0, Some(&t)).unwrap();
        assert_eq!(r.lower_exponent, "51/16");
        assert!(r.note.starts_with("below asymptotic lower bound"));
        assert!(theorem_bracket(2, 14, 1.0, None).is_err());
        let csv = bounds_csv(&[r]).unwrap();
        assert!(csv.starts_with("d,n,occ,lower,upper(C),mu_lower\n2,12,1,9.11"));
    }

    #[test]
    fn growth_bounds() {
        let empty = growth_estimate(2, &BTreeMap::new()).unwrap();
        assert_eq!(empty.slab_bound, "17/16");
        assert_eq!(empty.log2_mu_lower, 1.0625);
        assert!(empty.partial);
        let t = table(2, &[(12, 1), (16, 4), (20, 26)]);
        let g = growth_estimate(2, &t.occ_series(2)).unwrap();
        assert!(g.sequence_bound.unwrap() < 1.0625);
        assert_eq!(g.log2_mu_lower, 1.0625);
    }

    #[test]
    fn supermult_small_triple_is_vacuous() {
        let t = table(2, &[(12, 1)]);
        let r = supermult_check(2, 12, 12, 48, &t).unwrap();
        assert_eq!(r.verdict, Verdict::Vacuous);
        assert!((r.rhs.unwrap() - 1.0 / 36.0).abs() < 1e-12);
        assert!(supermult_check(2, 12, 12, 44, &t).is_err());
        assert_eq!(
            supermult_check(2, 12, 16, 48, &t).unwrap().verdict,
            Verdict::Unknown
        );
    }

    #[test]
    fn staircases_have_requested_boundary() {
        for (d, n) in [(2, 12), (2, 36), (2, 72), (3, 30), (3, 84)] {
            let s = staircase_cutset(d, n).unwrap();
            assert_eq!(edge_boundary_size(&s), n);
            assert!(s.contains(&Vertex::origin(d)));
        }
    }
}
