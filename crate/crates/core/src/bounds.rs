//! Closed-form upper bounds on the maximal volume `s(d,k)` of a lattice
//! d-simplex with exactly `k` interior lattice points, and on the analogous
//! polytope quantity `p(d,k)`.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, serde_exact};
use crate::error::{Error, Result};
use crate::sylvester::{s, zpw_volume};
use crate::tau::{default_tolerance, tau_lower_bound};
use crate::Rational;

/// Largest dimension for which [`bounds_report`] computes `tau_d` itself.
pub const TAU_REPORT_MAX_DIM: usize = 6;

fn check_dk(d: usize, k: u64) -> Result<()> {
    if d == 0 || k == 0 {
        return Err(Error::Domain(format!("need d, k >= 1, got d = {d}, k = {k}")));
    }
    Ok(())
}

/// `k (d+1) (s_d - 1)^2 / d!`
pub fn theorem12_bound(d: usize, k: u64) -> Result<Rational> {
    check_dk(d, k)?;
    let sd1 = s(d) - 1u32;
    Ok(Rational::new(
        BigInt::from(k) * (d + 1) * &sd1 * &sd1,
        factorial(d),
    ))
}

/// `k / (d! tau)`, valid whenever `tau` does not exceed `tau_d`.
pub fn theorem32_bound(d: usize, k: u64, tau_lower: &Rational) -> Result<Rational> {
    check_dk(d, k)?;
    if !tau_lower.is_positive() {
        return Err(Error::Domain(format!("tau lower bound must be positive, got {tau_lower}")));
    }
    Ok(Rational::from_integer(k.into()) / (Rational::from_integer(factorial(d)) * tau_lower))
}

/// `k 2^(3d-2) 15^((d-1) 2^(d+1)) / d!`, the bound this work improves on.
pub fn pikhurko_old_bound(d: usize, k: u64) -> Result<Rational> {
    check_dk(d, k)?;
    if d > 24 {
        return Err(Error::Domain(format!("d = {d} makes the 15-power exponent unreasonably large")));
    }
    let two = BigInt::from(2u32).pow(3 * d as u32 - 2);
    let exp = (d as u64 - 1) << (d + 1);
    let fifteen = Pow::pow(BigInt::from(15u32), exp);
    Ok(Rational::new(BigInt::from(k) * two * fifteen, factorial(d)))
}

/// `1 / ((d+1)(s_{d+1} - 1))`, a lower bound on the smallest barycentric
/// coordinate of the max-min interior point.
pub fn thm15a_threshold(d: usize) -> Result<Rational> {
    check_dk(d, 1)?;
    Ok(Rational::new(BigInt::one(), BigInt::from(d + 1) * (s(d + 1) - 1u32)))
}

/// `(d (2d+1) (s_{2d+1} - 1))^d k`, an upper bound on `p(d,k)`.
pub fn thm15b_bound(d: usize, k: u64) -> Result<BigInt> {
    check_dk(d, k)?;
    let base = BigInt::from(d * (2 * d + 1)) * (s(2 * d + 1) - 1u32);
    Ok(Pow::pow(base, d as u32) * k)
}

/// `log10 |x|` of a nonzero rational, exact to double precision even for
/// values far outside the `f64` range.
pub fn log10_abs(x: &Rational) -> f64 {
    log10_int(x.numer()) - log10_int(x.denom())
}

fn log10_int(n: &BigInt) -> f64 {
    let digits = n.abs().to_string();
    let keep = digits.len().min(17);
    let lead: f64 = digits[..keep].parse().unwrap();
    lead.log10() + (digits.len() - keep) as f64
}

/// Renders with 6 significant digits.
pub fn render_sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        format!("{:.*}", (5 - mag).max(0) as usize, v)
    } else {
        format!("{v:.5e}")
    }
}

/// Exact value together with a readable `log10` rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HugeRational {
    #[serde(with = "serde_exact::rational")]
    pub exact: Rational,
    pub log10: String,
}

impl HugeRational {
    pub fn new(exact: Rational) -> Self {
        let log10 = render_sig6(log10_abs(&exact));
        HugeRational { exact, log10 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HugeInt {
    #[serde(with = "serde_exact::bigint")]
    pub exact: BigInt,
    pub log10: String,
}

impl HugeInt {
    pub fn new(exact: BigInt) -> Self {
        let log10 = render_sig6(log10_int(&exact));
        HugeInt { exact, log10 }
    }
}

/// A published value quoted as is.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiteratureValue {
    pub source: String,
    pub statement: String,
    #[serde(with = "serde_exact::rational")]
    pub value: Rational,
}

/// Known small-dimension values of `s(d,k)` from the literature.
pub fn literature_value(d: usize, k: u64) -> Option<LiteratureValue> {
    match (d, k) {
        (2, 1) => Some(LiteratureValue {
            source: "Scott".into(),
            statement: "s(2,1) = 9/2".into(),
            value: Rational::new(9.into(), 2.into()),
        }),
        (2, _) => Some(LiteratureValue {
            source: "Scott".into(),
            statement: "s(2,k) = 2(k+1) for k >= 2".into(),
            value: Rational::from_integer(BigInt::from(2 * (k + 1))),
        }),
        (3, _) => Some(LiteratureValue {
            source: "Pikhurko".into(),
            statement: "s(3,k) <= 14.106 k".into(),
            value: Rational::new(BigInt::from(14106u64 * k), 1000.into()),
        }),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub d: usize,
    pub k: u64,
    #[serde(with = "serde_exact::rational")]
    pub zpw_volume: Rational,
    #[serde(with = "serde_exact::rational")]
    pub thm12_bound: Rational,
    #[serde(with = "serde_exact::rational_opt")]
    pub tau_lower: Option<Rational>,
    #[serde(with = "serde_exact::rational_opt")]
    pub thm32_bound: Option<Rational>,
    pub pikhurko_old_bound: HugeRational,
    #[serde(with = "serde_exact::rational")]
    pub thm15a_threshold: Rational,
    pub thm15b_bound: HugeInt,
    #[serde(with = "serde_exact::rational")]
    pub ratio_thm12_over_zpw: Rational,
    pub literature: Option<LiteratureValue>,
}

impl BoundsReport {
    /// Column names for [`BoundsReport::csv_record`].
    pub const CSV_HEADER: [&'static str; 14] = [
        "d",
        "k",
        "zpw_volume",
        "thm12_bound",
        "tau_lower",
        "thm32_bound",
        "pikhurko_old_bound",
        "pikhurko_old_bound_log10",
        "thm15a_threshold",
        "thm15b_bound",
        "thm15b_bound_log10",
        "ratio_thm12_over_zpw",
        "literature_source",
        "literature_value",
    ];

    pub fn csv_record(&self) -> Vec<String> {
        let opt = |r: &Option<Rational>| r.as_ref().map(ToString::to_string).unwrap_or_default();
        vec![
            self.d.to_string(),
            self.k.to_string(),
            self.zpw_volume.to_string(),
            self.thm12_bound.to_string(),
            opt(&self.tau_lower),
            opt(&self.thm32_bound),
            self.pikhurko_old_bound.exact.to_string(),
            self.pikhurko_old_bound.log10.clone(),
            self.thm15a_threshold.to_string(),
            self.thm15b_bound.exact.to_string(),
            self.thm15b_bound.log10.clone(),
            self.ratio_thm12_over_zpw.to_string(),
            self.literature.as_ref().map(|l| l.source.clone()).unwrap_or_default(),
            self.literature.as_ref().map(|l| l.value.to_string()).unwrap_or_default(),
        ]
    }
}

/// Every bound for `(d, k)`, with `tau_d` computed when `d` is at most
/// [`TAU_REPORT_MAX_DIM`].
pub fn bounds_report(d: usize, k: u64) -> Result<BoundsReport> {
    let tau = if d <= TAU_REPORT_MAX_DIM {
        check_dk(d, k)?;
        Some(tau_lower_bound(d, &default_tolerance())?.lower_bound)
    } else {
        None
    };
    bounds_report_with_tau(d, k, tau)
}

pub fn bounds_report_with_tau(d: usize, k: u64, tau_lower: Option<Rational>) -> Result<BoundsReport> {
    let zpw = zpw_volume(d, k)?;
    let thm12 = theorem12_bound(d, k)?;
    let thm32 = tau_lower
        .as_ref()
        .map(|t| theorem32_bound(d, k, t))
        .transpose()?;
    let ratio = &thm12 / &zpw;
    Ok(BoundsReport {
        d,
        k,
        zpw_volume: zpw,
        thm12_bound: thm12,
        tau_lower,
        thm32_bound: thm32,
        pikhurko_old_bound: HugeRational::new(pikhurko_old_bound(d, k)?),
        thm15a_threshold: thm15a_threshold(d)?,
        thm15b_bound: HugeInt::new(thm15b_bound(d, k)?),
        ratio_thm12_over_zpw: ratio,
        literature: literature_value(d, k),
    })
}

/// `k (d+1) / (k+1)`: the ratio of the Theorem 1.2 bound to the ZPW volume.
pub fn sandwich_ratio(d: usize, k: u64) -> Rational {
    Rational::new(BigInt::from(k) * (d + 1), BigInt::from(k + 1))
}

/// Decimal value of a rational for display only.
pub fn approx(x: &Rational) -> Option<f64> {
    if x.is_zero() {
        return Some(0.0);
    }
    let v = x.numer().to_f64()? / x.denom().to_f64()?;
    v.is_finite().then_some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn theorem12_examples() {
        assert_eq!(theorem12_bound(3, 1).unwrap(), q("24"));
        assert_eq!(theorem12_bound(2, 1).unwrap(), q("6"));
        assert_eq!(theorem12_bound(4, 2).unwrap(), q("735"));
        assert!(theorem12_bound(0, 1).is_err());
    }

    #[test]
    fn theorem32_examples() {
        assert_eq!(theorem32_bound(2, 1, &q("1/9")).unwrap(), q("9/2"));
        assert_eq!(theorem32_bound(3, 1, &q("13/1536")).unwrap(), q("256/13"));
        assert_eq!(theorem32_bound(4, 1, &q("1/8820")).unwrap(), q("735/2"));
        assert!(matches!(theorem32_bound(2, 1, &q("0")), Err(Error::Domain(_))));
        assert!(theorem32_bound(2, 1, &q("-1/9")).is_err());
    }

    #[test]
    fn pikhurko_examples() {
        assert_eq!(pikhurko_old_bound(1, 1).unwrap(), q("2"));
        assert_eq!(pikhurko_old_bound(2, 1).unwrap(), q("20503125000"));
        let p3 = pikhurko_old_bound(3, 1).unwrap();
        assert_eq!(p3, q("920405084317843616008758544921875000000"));
        let r = HugeRational::new(p3);
        assert_eq!(r.log10, "38.9640");
    }

    #[test]
    fn thm15_examples() {
        assert_eq!(thm15a_threshold(1).unwrap(), q("1/4"));
        assert_eq!(thm15a_threshold(2).unwrap(), q("1/18"));
        assert_eq!(thm15a_threshold(3).unwrap(), q("1/168"));
        assert_eq!(thm15b_bound(1, 1).unwrap(), BigInt::from(18));
        assert_eq!(thm15b_bound(1, 2).unwrap(), BigInt::from(36));
        assert_eq!(thm15b_bound(2, 1).unwrap(), BigInt::from(326163600u64));
    }

    #[test]
    fn rendering() {
        assert_eq!(render_sig6(38.96397901), "38.9640");
        assert_eq!(render_sig6(2.0), "2.00000");
        assert_eq!(render_sig6(1234567.0), "1.23457e6");
        assert_eq!(log10_int(&BigInt::from(1000)), 3.0);
    }

    #[test]
    fn literature_constants() {
        assert_eq!(literature_value(2, 1).unwrap().value, q("9/2"));
        assert_eq!(literature_value(2, 3).unwrap().value, q("8"));
        assert_eq!(literature_value(3, 2).unwrap().value, q("14106/500"));
        assert!(literature_value(4, 1).is_none());
    }

    #[test]
    fn report_round_trip() {
        let r = bounds_report(3, 2).unwrap();
        assert_eq!(r.ratio_thm12_over_zpw, sandwich_ratio(3, 2));
        assert_eq!(r.tau_lower, Some(q("13/1536")));
        let json = serde_json::to_string(&r).unwrap();
        let back: BoundsReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.csv_record().len(), BoundsReport::CSV_HEADER.len());
    }
}
