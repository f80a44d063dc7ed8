//! The constant `tau_d`: the minimum of `beta_1 ... beta_d` over sorted,
//! normalized, nonnegative `beta` satisfying for every `t`
//!
//! ```text
//! prod_{i<=t} (beta_i - beta_{d+1}) <= sum_{j>t} (beta_j - beta_{d+1}) + (d+1) beta_{d+1}
//! ```
//!
//! Optimal points reduce to univariate polynomials `f_l` on intervals
//! between consecutive Sylvester reciprocals. Each `f_l` is minimized with
//! certified exact arithmetic: endpoint values plus isolated critical points.

use log::warn;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{serde_exact, RootIsolator};
use crate::error::{Error, Result};
use crate::simplex::BetaVector;
use crate::sylvester::s;
use crate::{Rational, RationalPolynomial, RootEnclosure};

/// Default enclosure width for minima at irrational critical points.
pub fn default_tolerance() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u32).pow(30))
}

/// Default cap on grid points visited by [`grid_oracle`].
pub const DEFAULT_GRID_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Strict,
    Tight,
    Violated,
}

impl Status {
    /// Status of `a >= b`.
    fn of_ge(a: &Rational, b: &Rational) -> Status {
        match a.cmp(b) {
            std::cmp::Ordering::Greater => Status::Strict,
            std::cmp::Ordering::Equal => Status::Tight,
            std::cmp::Ordering::Less => Status::Violated,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsConstraint {
    pub t: usize,
    #[serde(with = "serde_exact::rational")]
    pub lhs: Rational,
    #[serde(with = "serde_exact::rational")]
    pub rhs: Rational,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// `beta_{d+1} >= 0`
    pub nonnegative: Status,
    /// `ord[0]` is `1 >= beta_1`, `ord[t]` is `beta_t >= beta_{t+1}`.
    pub ord: Vec<Status>,
    /// One entry per `t = 1..=d`.
    pub ps: Vec<PsConstraint>,
}

impl FeasibilityReport {
    pub fn ps_tight(&self, t: usize) -> bool {
        self.ps[t - 1].status == Status::Tight
    }

    pub fn ord_tight(&self, t: usize) -> bool {
        self.ord[t] == Status::Tight
    }
}

/// Sides of the product-sum constraint of the optimization problem at `t`.
pub fn ps_constraint_sides(beta: &[Rational], t: usize) -> (Rational, Rational) {
    let d = beta.len() - 1;
    let last = &beta[d];
    let lhs = beta[..t]
        .iter()
        .fold(Rational::one(), |acc, b| acc * (b - last));
    let rhs = beta[t..]
        .iter()
        .fold(Rational::zero(), |acc, b| acc + (b - last))
        + Rational::from_integer((d + 1).into()) * last;
    (lhs, rhs)
}

/// Exact evaluation of every constraint of the optimization problem.
pub fn is_feasible(beta: &BetaVector, d: usize) -> Result<FeasibilityReport> {
    if beta.len() != d + 1 {
        return Err(Error::Domain(format!(
            "{} coordinates given for d = {d}",
            beta.len()
        )));
    }
    let b = beta.entries();
    let mut ord = vec![Status::of_ge(&Rational::one(), &b[0])];
    ord.extend((1..=d).map(|t| Status::of_ge(&b[t - 1], &b[t])));
    let nonnegative = Status::of_ge(&b[d], &Rational::zero());
    let ps: Vec<PsConstraint> = (1..=d)
        .map(|t| {
            let (lhs, rhs) = ps_constraint_sides(b, t);
            PsConstraint {
                t,
                status: Status::of_ge(&rhs, &lhs),
                lhs,
                rhs,
            }
        })
        .collect();
    let feasible = nonnegative != Status::Violated
        && ord.iter().all(|s| *s != Status::Violated)
        && ps.iter().all(|c| c.status != Status::Violated);
    Ok(FeasibilityReport {
        feasible,
        nonnegative,
        ord,
        ps,
    })
}

/// Structural properties every feasible point must have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma31Report {
    /// Every coordinate is strictly positive.
    pub all_positive: bool,
    /// Per `t = 1..=d`: not both `ORD(t)` and `PS(t)` are tight.
    pub ord_or_ps_strict: Vec<bool>,
    /// Largest `l` with `PS(1..=l)` all tight.
    pub tight_prefix: usize,
    /// Per `i = 1..=tight_prefix`: `beta_i - beta_{d+1} = 1/s_i`.
    pub sylvester_relation: Vec<bool>,
    pub holds: bool,
}

pub fn check_lemma31(beta: &BetaVector, d: usize) -> Result<Lemma31Report> {
    let report = is_feasible(beta, d)?;
    if !report.feasible {
        return Err(Error::Domain("beta is not feasible".into()));
    }
    let b = beta.entries();
    let all_positive = b.iter().all(Signed::is_positive);
    let ord_or_ps_strict: Vec<bool> = (1..=d)
        .map(|t| !(report.ord_tight(t) && report.ps_tight(t)))
        .collect();
    let tight_prefix = (1..=d).take_while(|&t| report.ps_tight(t)).count();
    let sylvester_relation: Vec<bool> = (1..=tight_prefix)
        .map(|i| &b[i - 1] - &b[d] == Rational::new(BigInt::one(), s(i)))
        .collect();
    let holds = all_positive
        && ord_or_ps_strict.iter().all(|&x| x)
        && sylvester_relation.iter().all(|&x| x);
    Ok(Lemma31Report {
        all_positive,
        ord_or_ps_strict,
        tight_prefix,
        sylvester_relation,
        holds,
    })
}

/// `f_l` together with the interval its argument `beta_{d+1}` is confined to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateProblem {
    pub d: usize,
    pub ell: usize,
    pub poly: RationalPolynomial,
    /// `1 / ((d+1)(s_{l+1} - 1))`
    pub lo: Rational,
    /// `1 / ((d+1)(s_l - 1))`
    pub hi: Rational,
}

fn check_ell(d: usize, ell: usize) -> Result<()> {
    if d == 0 || ell == 0 || ell > d {
        return Err(Error::Domain(format!("need 1 <= l <= d, got l = {ell}, d = {d}")));
    }
    Ok(())
}

fn ell_interval(d: usize, ell: usize) -> (Rational, Rational) {
    let dp1 = BigInt::from(d + 1);
    let lo = Rational::new(BigInt::one(), &dp1 * (s(ell + 1) - 1u32));
    let hi = Rational::new(BigInt::one(), &dp1 * (s(ell) - 1u32));
    (lo, hi)
}

/// `f_l(a) = prod_{i<l} (1/s_i + a) * (1/(s_l - 1) - d a) * a^(d-l)`
pub fn build_univariate(d: usize, ell: usize) -> Result<UnivariateProblem> {
    check_ell(d, ell)?;
    let mut poly = RationalPolynomial::constant(Rational::one());
    for i in 1..ell {
        let factor = RationalPolynomial::linear(Rational::new(BigInt::one(), s(i)), Rational::one());
        poly = &poly * &factor;
    }
    let middle = RationalPolynomial::linear(
        Rational::new(BigInt::one(), s(ell) - 1u32),
        -Rational::from_integer(d.into()),
    );
    poly = &(&poly * &middle) * &RationalPolynomial::monomial(d - ell);
    let (lo, hi) = ell_interval(d, ell);
    Ok(UnivariateProblem { d, ell, poly, lo, hi })
}

/// Where a minimum is attained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Location {
    Exact {
        #[serde(with = "serde_exact::rational")]
        alpha: Rational,
    },
    Enclosure {
        #[serde(with = "serde_exact::rational")]
        lo: Rational,
        #[serde(with = "serde_exact::rational")]
        hi: Rational,
    },
}

impl Location {
    pub fn exact_alpha(&self) -> Option<&Rational> {
        match self {
            Location::Exact { alpha } => Some(alpha),
            Location::Enclosure { .. } => None,
        }
    }

    /// A point inside the location.
    pub fn representative(&self) -> &Rational {
        match self {
            Location::Exact { alpha } => alpha,
            Location::Enclosure { lo, .. } => lo,
        }
    }
}

/// Certified enclosure `min_lower <= min f_l <= min_upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnivariateMinimum {
    pub ell: usize,
    #[serde(with = "serde_exact::rational")]
    pub min_lower: Rational,
    #[serde(with = "serde_exact::rational")]
    pub min_upper: Rational,
    pub attained_at: Location,
    /// Number of critical points of `f_l` inside the interval.
    pub critical_points: usize,
}

impl UnivariateMinimum {
    pub fn is_exact(&self) -> bool {
        self.min_lower == self.min_upper && self.attained_at.exact_alpha().is_some()
    }
}

struct Candidate {
    enc: RootEnclosure<Rational>,
    lower: Rational,
}

/// Minimizes `f_l` over its interval.
///
/// The minimum is taken over both endpoints and every critical point, with
/// critical points isolated by Sturm sequences. Values at irrational
/// critical points are bounded by interval evaluation over their
/// enclosures, which are refined until the certified gap is at most
/// `tolerance`.
pub fn minimize_univariate(p: &UnivariateProblem, tolerance: &Rational) -> Result<UnivariateMinimum> {
    if !tolerance.is_positive() {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let f = &p.poly;
    let exact = |x: &Rational| Candidate {
        enc: RootEnclosure::exact(x.clone()),
        lower: f.eval(x),
    };
    let deriv = f.derivative();
    let (isolator, crits) = if deriv.is_zero() {
        (None, Vec::new())
    } else {
        let iso = RootIsolator::new(&deriv)?;
        let crits = iso.isolate(&p.lo, &p.hi)?;
        (Some(iso), crits)
    };
    let critical_points = crits.len();

    let mut cands = vec![exact(&p.lo)];
    let mut upper = f.eval(&p.lo).min(f.eval(&p.hi));
    for enc in crits {
        if enc.is_exact() {
            let c = exact(&enc.lo);
            upper = upper.min(c.lower.clone());
            cands.push(c);
        } else {
            upper = upper.min(f.eval(&enc.lo)).min(f.eval(&enc.hi));
            let lower = f.eval_interval(&enc.lo, &enc.hi).0;
            cands.push(Candidate { enc, lower });
        }
    }
    cands.push(exact(&p.hi));

    loop {
        let lower = cands.iter().map(|c| &c.lower).min().unwrap().clone();
        if &upper - &lower <= *tolerance {
            break;
        }
        let iso = isolator.as_ref().expect("inexact candidates imply critical points");
        for c in cands.iter_mut() {
            if c.enc.is_exact() || c.lower >= upper {
                continue;
            }
            let half = c.enc.width() / Rational::from_integer(2.into());
            c.enc = iso.refine(&c.enc, &half);
            let lo_v = f.eval(&c.enc.lo);
            let hi_v = f.eval(&c.enc.hi);
            upper = upper.min(lo_v.clone()).min(hi_v);
            c.lower = if c.enc.is_exact() {
                lo_v
            } else {
                f.eval_interval(&c.enc.lo, &c.enc.hi).0
            };
        }
    }

    let best = cands
        .iter()
        .reduce(|a, b| if b.lower < a.lower { b } else { a })
        .unwrap();
    let attained_at = if best.enc.is_exact() {
        Location::Exact {
            alpha: best.enc.lo.clone(),
        }
    } else {
        Location::Enclosure {
            lo: best.enc.lo.clone(),
            hi: best.enc.hi.clone(),
        }
    };
    Ok(UnivariateMinimum {
        ell: p.ell,
        min_lower: best.lower.clone(),
        min_upper: upper,
        attained_at,
        critical_points,
    })
}

/// The point with `beta_{d+1} = alpha` parameterized by `f_l`:
/// `beta_i = 1/s_i + alpha` for `i < l`, `beta_l = 1/(s_l - 1) - d alpha`,
/// `beta_i = alpha` for `i > l`.
pub fn reconstruct_beta(d: usize, ell: usize, alpha: &Rational) -> Result<BetaVector> {
    check_ell(d, ell)?;
    let (lo, hi) = ell_interval(d, ell);
    if alpha < &lo || alpha > &hi {
        return Err(Error::Domain(format!(
            "alpha = {alpha} outside [{lo}, {hi}] for l = {ell}"
        )));
    }
    let mut b = Vec::with_capacity(d + 1);
    for i in 1..ell {
        b.push(Rational::new(BigInt::one(), s(i)) + alpha);
    }
    b.push(
        Rational::new(BigInt::one(), s(ell) - 1u32) - Rational::from_integer(d.into()) * alpha,
    );
    b.extend(std::iter::repeat_n(alpha.clone(), d + 1 - ell));
    BetaVector::new(b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauResult {
    pub d: usize,
    /// Certified lower bound on `tau_d`.
    #[serde(with = "serde_exact::rational")]
    pub lower_bound: Rational,
    /// Objective at the reconstructed point when it is feasible, hence an
    /// upper bound on `tau_d`.
    #[serde(with = "serde_exact::rational_opt")]
    pub upper_bound: Option<Rational>,
    pub attaining_ell: usize,
    pub attaining_alpha: Location,
    pub attaining_beta: BetaVector,
    pub attaining_feasible: bool,
    /// `lower_bound == tau_d`, proven by a feasible point with that value.
    pub is_exact: bool,
    pub per_ell: Vec<UnivariateMinimum>,
    /// Minimum over the grid oracle, when requested.
    #[serde(default, with = "serde_exact::rational_opt")]
    pub grid_upper: Option<Rational>,
}

/// `min_l f*_l`, a certified lower bound on `tau_d`, with the attaining
/// point checked for feasibility.
pub fn tau_lower_bound(d: usize, tolerance: &Rational) -> Result<TauResult> {
    if d == 0 {
        return Err(Error::Domain("d must be at least 1".into()));
    }
    let per_ell = (1..=d)
        .map(|ell| minimize_univariate(&build_univariate(d, ell)?, tolerance))
        .collect::<Result<Vec<_>>>()?;
    let best = per_ell
        .iter()
        .reduce(|a, b| if b.min_lower < a.min_lower { b } else { a })
        .unwrap();
    let beta = reconstruct_beta(d, best.ell, best.attained_at.representative())?;
    let feasible = is_feasible(&beta, d)?.feasible;
    let objective = beta.objective();
    let is_exact = feasible
        && best.attained_at.exact_alpha().is_some()
        && objective == best.min_lower;
    Ok(TauResult {
        d,
        lower_bound: best.min_lower.clone(),
        upper_bound: feasible.then_some(objective),
        attaining_ell: best.ell,
        attaining_alpha: best.attained_at.clone(),
        attaining_beta: beta,
        attaining_feasible: feasible,
        is_exact,
        per_ell,
        grid_upper: None,
    })
}

/// `1 / ((d+1)(s_d - 1)^2)`. Proven to bound `tau_d` from below for
/// `d >= 4`; smaller `d` is allowed with a warning.
pub fn lemma51_bound(d: usize) -> Result<Rational> {
    if d == 0 {
        return Err(Error::Domain("d must be at least 1".into()));
    }
    if d < 4 {
        warn!("lemma51_bound({d}): the bound is only established for d >= 4");
    }
    let sd1 = s(d) - 1u32;
    Ok(Rational::new(
        BigInt::one(),
        BigInt::from(d + 1) * &sd1 * &sd1,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridOracleResult {
    pub d: usize,
    pub steps: u64,
    /// Smallest objective among feasible grid points.
    #[serde(with = "serde_exact::rational")]
    pub value: Rational,
    pub beta: BetaVector,
    pub points_examined: u64,
    pub feasible_points: u64,
}

/// Number of non-increasing `parts`-tuples of nonnegative integers with sum `n`.
pub fn count_sorted_compositions(n: u64, parts: usize) -> BigInt {
    // partitions of n into at most `parts` parts
    let n = n as usize;
    let mut table = vec![BigInt::zero(); n + 1];
    table[0] = BigInt::one();
    for k in 1..=parts {
        for m in k..=n {
            let add = table[m - k].clone();
            table[m] += add;
        }
    }
    table[n].clone()
}

/// Exhaustive minimum of the objective over feasible points of the grid
/// `{0, 1/N, ..., 1}^(d+1)`, restricted to sorted points summing to 1.
///
/// This is an upper envelope of `tau_d` that tightens as `N` grows.
/// Ties keep the lexicographically largest point.
pub fn grid_oracle(d: usize, steps: u64) -> Result<GridOracleResult> {
    grid_oracle_with_budget(d, steps, DEFAULT_GRID_BUDGET)
}

pub fn grid_oracle_with_budget(d: usize, steps: u64, budget: u64) -> Result<GridOracleResult> {
    if d == 0 || steps < (d as u64 + 1) {
        return Err(Error::Domain(format!("need d >= 1 and N >= d+1, got d = {d}, N = {steps}")));
    }
    let total = count_sorted_compositions(steps, d + 1);
    if total > BigInt::from(budget) {
        return Err(Error::Budget {
            needed: total.to_string(),
            budget,
        });
    }
    let first_min = steps.div_ceil(d as u64 + 1);
    let slices: Vec<u64> = (first_min..=steps).rev().collect();
    let results: Vec<SliceBest> = slices
        .par_iter()
        .map(|&c1| scan_slice(d, steps, c1))
        .collect::<Result<_>>()?;
    let mut examined = 0;
    let mut feasible_points = 0;
    let mut best: Option<(Rational, Vec<u64>)> = None;
    for r in results {
        examined += r.examined;
        feasible_points += r.feasible;
        if let Some((v, c)) = r.best {
            if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                best = Some((v, c));
            }
        }
    }
    let (value, comp) = best.ok_or_else(|| {
        Error::Domain(format!("no feasible grid point for d = {d}, N = {steps}"))
    })?;
    Ok(GridOracleResult {
        d,
        steps,
        value,
        beta: to_beta(&comp, steps),
        points_examined: examined,
        feasible_points,
    })
}

struct SliceBest {
    best: Option<(Rational, Vec<u64>)>,
    examined: u64,
    feasible: u64,
}

fn to_beta(comp: &[u64], steps: u64) -> BetaVector {
    BetaVector::new(
        comp.iter()
            .map(|&c| Rational::new(c.into(), steps.into()))
            .collect(),
    )
    .expect("compositions sum to N")
}

fn scan_slice(d: usize, steps: u64, c1: u64) -> Result<SliceBest> {
    let mut out = SliceBest {
        best: None,
        examined: 0,
        feasible: 0,
    };
    let mut comp = vec![c1];
    fill(d, steps, steps - c1, &mut comp, &mut out)?;
    Ok(out)
}

// descending lexicographic order, so the first minimizer found is the
// lexicographically largest
fn fill(d: usize, steps: u64, rest: u64, comp: &mut Vec<u64>, out: &mut SliceBest) -> Result<()> {
    let left = (d + 1 - comp.len()) as u64;
    if left == 0 {
        if rest != 0 {
            return Ok(());
        }
        out.examined += 1;
        let beta = to_beta(comp, steps);
        if is_feasible(&beta, d)?.feasible {
            out.feasible += 1;
            let v = beta.objective();
            if out.best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                out.best = Some((v, comp.clone()));
            }
        }
        return Ok(());
    }
    let cap = (*comp.last().unwrap()).min(rest);
    let floor = rest.div_ceil(left);
    if floor > cap {
        return Ok(());
    }
    for c in (floor..=cap).rev() {
        comp.push(c);
        fill(d, steps, rest - c, comp, out)?;
        comp.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn beta(v: &[&str]) -> BetaVector {
        BetaVector::new(v.iter().map(|s| q(s)).collect()).unwrap()
    }

    fn poly(c: &[&str]) -> RationalPolynomial {
        RationalPolynomial::new(c.iter().map(|s| q(s)).collect())
    }

    #[test]
    fn feasibility_examples() {
        let r = is_feasible(&beta(&["1/4", "1/4", "1/4", "1/4"]), 3).unwrap();
        assert!(r.feasible);
        assert_eq!(r.ord[0], Status::Strict);
        assert!(r.ord[1..].iter().all(|s| *s == Status::Tight));
        assert!(r.ps.iter().all(|c| c.status == Status::Strict));

        let r = is_feasible(&beta(&["2/3", "1/6", "1/6"]), 2).unwrap();
        assert!(r.feasible);
        assert_eq!((r.ps[0].lhs.clone(), r.ps[0].rhs.clone()), (q("1/2"), q("1/2")));
        assert_eq!(r.ps[0].status, Status::Tight);

        let r = is_feasible(&beta(&["1", "0", "0"]), 2).unwrap();
        assert!(!r.feasible);
        assert_eq!(r.ps[0].status, Status::Violated);
        assert_eq!((r.ps[0].lhs.clone(), r.ps[0].rhs.clone()), (q("1"), q("0")));

        assert!(is_feasible(&beta(&["1/2", "1/2"]), 2).is_err());
    }

    #[test]
    fn lemma31_examples() {
        let r = check_lemma31(&beta(&["2/3", "1/6", "1/6"]), 2).unwrap();
        assert_eq!(r.tight_prefix, 1);
        assert_eq!(r.sylvester_relation, vec![true]);
        assert!(r.holds);

        let r = check_lemma31(&beta(&["13/24", "9/24", "1/24", "1/24"]), 3).unwrap();
        assert_eq!(r.tight_prefix, 2);
        assert_eq!(r.sylvester_relation, vec![true, true]);
        assert!(r.holds);

        let r = check_lemma31(&beta(&["1/4", "1/4", "1/4", "1/4"]), 3).unwrap();
        assert_eq!(r.tight_prefix, 0);
        assert!(r.all_positive && r.holds);

        assert!(check_lemma31(&beta(&["1", "0", "0"]), 2).is_err());
    }

    #[test]
    fn univariate_examples() {
        let p = build_univariate(2, 1).unwrap();
        assert_eq!(p.poly, poly(&["0", "1", "-2"]));
        assert_eq!((p.lo.clone(), p.hi.clone()), (q("1/6"), q("1/3")));

        let p = build_univariate(3, 2).unwrap();
        let expect = &(&poly(&["1/2", "1"]) * &poly(&["1/2", "-3"])) * &poly(&["0", "1"]);
        assert_eq!(p.poly, expect);
        assert_eq!((p.lo.clone(), p.hi.clone()), (q("1/24"), q("1/8")));

        let p = build_univariate(1, 1).unwrap();
        assert_eq!(p.poly, poly(&["1", "-1"]));
        assert_eq!((p.lo.clone(), p.hi.clone()), (q("1/4"), q("1/2")));

        assert!(build_univariate(3, 0).is_err());
        assert!(build_univariate(3, 4).is_err());
    }

    #[test]
    fn minimization_examples() {
        let tol = default_tolerance();
        let m = minimize_univariate(&build_univariate(2, 1).unwrap(), &tol).unwrap();
        assert_eq!((m.min_lower.clone(), m.min_upper.clone()), (q("1/9"), q("1/9")));
        assert_eq!(m.attained_at, Location::Exact { alpha: q("1/6") });
        assert_eq!(m.critical_points, 1);

        let m = minimize_univariate(&build_univariate(3, 1).unwrap(), &tol).unwrap();
        assert_eq!(m.min_lower, q("5/512"));
        assert_eq!(m.attained_at, Location::Exact { alpha: q("1/8") });

        let m = minimize_univariate(&build_univariate(3, 3).unwrap(), &tol).unwrap();
        assert_eq!(m.min_lower, q("13/1536"));
        assert_eq!(m.attained_at, Location::Exact { alpha: q("1/24") });
        assert!(m.is_exact());
    }

    #[test]
    fn irrational_minimum_is_enclosed() {
        // x^3 - 2x on [0, 2] has its minimum at sqrt(2/3)
        let p = UnivariateProblem {
            d: 0,
            ell: 0,
            poly: poly(&["0", "-2", "0", "1"]),
            lo: q("0"),
            hi: q("2"),
        };
        let tol = q("1/1000000000000");
        let m = minimize_univariate(&p, &tol).unwrap();
        assert!(matches!(m.attained_at, Location::Enclosure { .. }));
        assert!(&m.min_upper - &m.min_lower <= tol);
        // true minimum -(4/3) sqrt(2/3) = -1.0886621079...
        assert!(m.min_lower < q("-10886621079/10000000000"));
        assert!(m.min_upper > q("-10886621080/10000000000"));
    }

    #[test]
    fn reconstruction_examples() {
        assert_eq!(reconstruct_beta(2, 1, &q("1/6")).unwrap(), beta(&["2/3", "1/6", "1/6"]));
        assert_eq!(
            reconstruct_beta(3, 2, &q("1/24")).unwrap(),
            beta(&["13/24", "9/24", "1/24", "1/24"])
        );
        assert_eq!(reconstruct_beta(1, 1, &q("1/2")).unwrap(), beta(&["1/2", "1/2"]));
        assert!(reconstruct_beta(2, 1, &q("1/2")).is_err());
    }

    #[test]
    fn tau_small_dimensions() {
        let tol = default_tolerance();
        let t = tau_lower_bound(2, &tol).unwrap();
        assert_eq!(t.lower_bound, q("1/9"));
        assert_eq!((t.attaining_ell, t.attaining_alpha.clone()), (1, Location::Exact { alpha: q("1/6") }));
        assert_eq!(t.attaining_beta, beta(&["2/3", "1/6", "1/6"]));
        assert!(t.is_exact);

        let t = tau_lower_bound(3, &tol).unwrap();
        assert_eq!(t.lower_bound, q("13/1536"));
        assert_eq!(t.attaining_ell, 2);
        assert_eq!(t.attaining_beta, beta(&["13/24", "9/24", "1/24", "1/24"]));
        assert!(t.is_exact);

        let t = tau_lower_bound(4, &tol).unwrap();
        assert!(t.lower_bound >= q("1/8820"));
    }

    #[test]
    fn lemma51_examples() {
        assert_eq!(lemma51_bound(4).unwrap(), q("1/8820"));
        assert_eq!(lemma51_bound(5).unwrap(), Rational::new(1.into(), BigInt::from(6 * 1806 * 1806)));
        assert_eq!(lemma51_bound(2).unwrap(), q("1/12"));
        assert!(lemma51_bound(2).unwrap() <= q("1/9"));
    }

    #[test]
    fn grid_examples() {
        let g = grid_oracle(2, 6).unwrap();
        assert_eq!(g.value, q("1/9"));
        assert_eq!(g.beta, beta(&["4/6", "1/6", "1/6"]));
        assert_eq!(grid_oracle(2, 12).unwrap().value, q("1/9"));
        let g = grid_oracle(3, 24).unwrap();
        assert_eq!(g.value, q("13/1536"));
        assert_eq!(g.beta, beta(&["13/24", "9/24", "1/24", "1/24"]));
        assert!(matches!(grid_oracle_with_budget(3, 200, 10), Err(Error::Budget { .. })));
        assert!(grid_oracle(3, 3).is_err());
    }

    #[test]
    fn composition_count() {
        // partitions of 6 into at most 3 parts: 6, 51, 42, 411, 33, 321, 222
        assert_eq!(count_sorted_compositions(6, 3), BigInt::from(7));
    }
}
