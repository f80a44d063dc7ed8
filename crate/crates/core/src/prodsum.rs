//! Product-sum inequalities and the interior-point improvement step.
//!
//! For sorted barycentric coordinates `beta_1 >= ... >= beta_{d+1}` the
//! product-sum inequality at `t` reads
//!
//! ```text
//! beta_1 * ... * beta_t <= beta_{t+1} + ... + beta_{d+1}
//! ```
//!
//! and the generalized form replaces each factor by `beta_i - beta_{d+1}`.
//! When the generalized form fails at an interior lattice point `x`, a
//! short integer vector in the image of the matrix built by
//! [`build_ps_matrix`] yields a lattice point `q` whose smallest barycentric
//! coordinate is strictly larger than that of `x`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{serde_exact, ExactScalar, Matrix};
use crate::error::{Error, Result};
use crate::simplex::{BetaVector, LatticePoint, LatticeSimplex};
use crate::{Rational, RationalMatrix};

/// Default node budget for the small-image-vector search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PsKind {
    /// `prod beta_i <= sum_{j>t} beta_j`
    ProductSum,
    /// `prod (beta_i - beta_{d+1}) <= sum_{j>t} beta_j`
    Generalized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsRecord {
    pub t: usize,
    #[serde(with = "serde_exact::rational")]
    pub lhs: Rational,
    #[serde(with = "serde_exact::rational")]
    pub rhs: Rational,
    pub holds: bool,
    pub tight: bool,
}

impl PsRecord {
    fn new(t: usize, lhs: Rational, rhs: Rational) -> Self {
        PsRecord {
            t,
            holds: lhs <= rhs,
            tight: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

/// One record per `t = 1..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsCheckReport {
    pub kind: PsKind,
    pub records: Vec<PsRecord>,
}

impl PsCheckReport {
    pub fn all_hold(&self) -> bool {
        self.records.iter().all(|r| r.holds)
    }

    /// Smallest `t` at which the inequality fails.
    pub fn first_violation(&self) -> Option<usize> {
        self.records.iter().find(|r| !r.holds).map(|r| r.t)
    }

    pub fn record(&self, t: usize) -> Option<&PsRecord> {
        self.records.get(t.checked_sub(1)?)
    }
}

/// `(prod_{i<=t} beta_i, sum_{j>t} beta_j)`
pub fn product_sum_sides<T: ExactScalar>(beta: &[T], t: usize) -> (T, T) {
    let lhs = beta[..t].iter().fold(T::one(), |acc, b| acc * b.clone());
    let rhs = beta[t..].iter().fold(T::zero(), |acc, b| acc + b.clone());
    (lhs, rhs)
}

/// `(prod_{i<=t} (beta_i - beta_{d+1}), sum_{j>t} beta_j)`
pub fn generalized_sides<T: ExactScalar>(beta: &[T], t: usize) -> (T, T) {
    let last = beta.last().unwrap().clone();
    let lhs = beta[..t]
        .iter()
        .fold(T::one(), |acc, b| acc * (b.clone() - last.clone()));
    let rhs = beta[t..].iter().fold(T::zero(), |acc, b| acc + b.clone());
    (lhs, rhs)
}

/// The `(t+1) x (t+1)` matrix whose rows encode the conditions on
/// `(m_1, ..., m_t, m)`: diagonal `1/(beta_i - beta_{d+1})`, last column
/// `-beta_i/(beta_i - beta_{d+1})`, last row `(-1, ..., -1, 1)`.
pub fn ps_matrix<T: ExactScalar>(beta: &[T], t: usize) -> Result<Matrix<T>> {
    let d = beta.len().saturating_sub(1);
    if t == 0 || t > d {
        return Err(Error::Domain(format!("t = {t} outside 1..={d}")));
    }
    let last = beta[d].clone();
    let mut a = Matrix::zeros(t + 1, t + 1);
    for i in 0..t {
        let gap = beta[i].clone() - last.clone();
        if gap.is_zero() {
            return Err(Error::Domain(format!(
                "beta_{} equals beta_{}; the matrix is undefined",
                i + 1,
                d + 1
            )));
        }
        a[(i, i)] = T::one() / gap.clone();
        a[(i, t)] = -(beta[i].clone() / gap);
        a[(t, i)] = -T::one();
    }
    a[(t, t)] = T::one();
    Ok(a)
}

fn check_sorted_beta(beta: &BetaVector) -> Result<()> {
    if !beta.is_sorted() {
        return Err(Error::Domain("beta must be sorted descending".into()));
    }
    if beta
        .entries()
        .iter()
        .any(|b| !b.is_positive() || *b >= Rational::one())
    {
        return Err(Error::Domain("beta entries must lie in (0, 1)".into()));
    }
    Ok(())
}

/// Evaluates the product-sum inequalities for every `t`.
pub fn check_product_sum(beta: &BetaVector) -> Result<PsCheckReport> {
    check_sorted_beta(beta)?;
    let b = beta.entries();
    Ok(PsCheckReport {
        kind: PsKind::ProductSum,
        records: (1..b.len())
            .map(|t| {
                let (l, r) = product_sum_sides(b, t);
                PsRecord::new(t, l, r)
            })
            .collect(),
    })
}

/// Evaluates the generalized product-sum inequalities for every `t`.
pub fn check_generalized(beta: &BetaVector) -> Result<PsCheckReport> {
    check_sorted_beta(beta)?;
    let b = beta.entries();
    Ok(PsCheckReport {
        kind: PsKind::Generalized,
        records: (1..b.len())
            .map(|t| {
                let (l, r) = generalized_sides(b, t);
                PsRecord::new(t, l, r)
            })
            .collect(),
    })
}

pub fn build_ps_matrix(beta: &BetaVector, t: usize) -> Result<RationalMatrix> {
    if !beta.is_sorted() {
        return Err(Error::Domain("beta must be sorted descending".into()));
    }
    ps_matrix(beta.entries(), t)
}

/// Lexicographically smallest nonzero integer `y` with `||A y||_inf < 1`,
/// normalized so its first nonzero entry is positive.
///
/// Requires `0 < |det A| < 1`; such a `y` then always exists. Every
/// solution lies in the ball `||A y||_2^2 < n`. The lattice `A Z^n` is
/// LLL-reduced and the ball enumerated level by level over the
/// Gram-Schmidt basis, so all solutions are found exactly and the smallest
/// is returned.
pub fn find_small_image_vector(a: &RationalMatrix) -> Result<Vec<BigInt>> {
    find_small_image_vector_with_budget(a, DEFAULT_SEARCH_BUDGET)
}

/// As [`find_small_image_vector`], failing once more than `budget`
/// enumeration nodes have been visited.
pub fn find_small_image_vector_with_budget(a: &RationalMatrix, budget: u64) -> Result<Vec<BigInt>> {
    let det = a.det()?;
    if det.is_zero() || det.abs() >= Rational::one() {
        return Err(Error::Precondition(format!(
            "need 0 < |det A| < 1, got det A = {det}"
        )));
    }
    let n = a.rows();
    let cols = a.transpose().to_rows();
    let (basis, u) = lll_reduce(cols);
    let gs = GramSchmidt::new(&basis);
    let mut search = BallSearch {
        a,
        gs: &gs,
        u: &u,
        best: None,
        visited: 0,
        budget,
    };
    let mut c = vec![BigInt::zero(); n];
    search.descend(n, &mut c, Rational::from_integer(n.into()))?;
    let y = search.best.ok_or_else(|| {
        Error::Invariant("no short image vector although 0 < |det A| < 1".into())
    })?;
    let image = a.mul_vec(&y.iter().map(|v| Rational::from_integer(v.clone())).collect::<Vec<_>>())?;
    if y.iter().all(Zero::is_zero) || image.iter().any(|v| v.abs() >= Rational::one()) {
        return Err(Error::Invariant(format!("bad short vector {y:?}")));
    }
    Ok(y)
}

fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    x.iter().zip(y).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

struct GramSchmidt {
    /// `mu[i][j] = <b_i, b*_j> / <b*_j, b*_j>` for `j < i`
    mu: Vec<Vec<Rational>>,
    /// `<b*_i, b*_i>`
    norms: Vec<Rational>,
}

impl GramSchmidt {
    fn new(b: &[Vec<Rational>]) -> Self {
        let n = b.len();
        let mut star: Vec<Vec<Rational>> = Vec::with_capacity(n);
        let mut mu = vec![vec![Rational::zero(); n]; n];
        let mut norms = Vec::with_capacity(n);
        for i in 0..n {
            let mut v = b[i].clone();
            for j in 0..i {
                mu[i][j] = dot(&b[i], &star[j]) / &norms[j];
                for (vk, sk) in v.iter_mut().zip(&star[j]) {
                    *vk -= &mu[i][j] * sk;
                }
            }
            norms.push(dot(&v, &v));
            star.push(v);
        }
        GramSchmidt { mu, norms }
    }
}

/// LLL with `delta = 3/4` on the vectors `b`, returning the reduced basis
/// and integer vectors `u_i` with `reduced_i = sum_j u_i[j] b_j`.
fn lll_reduce(mut b: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<Vec<BigInt>>) {
    let n = b.len();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    let delta = Rational::new(3.into(), 4.into());
    let half = Rational::new(1.into(), 2.into());
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let mu = GramSchmidt::new(&b).mu[k][j].clone();
            let r = (mu + &half).floor();
            if r.is_zero() {
                continue;
            }
            let ri = r.to_integer();
            for l in 0..n {
                let bj = &r * &b[j][l];
                b[k][l] -= bj;
                let uj = &ri * &u[j][l];
                u[k][l] -= uj;
            }
        }
        let gs = GramSchmidt::new(&b);
        let m = &gs.mu[k][k - 1];
        if gs.norms[k] >= (&delta - m * m) * &gs.norms[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            u.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    (b, u)
}

struct BallSearch<'a> {
    a: &'a RationalMatrix,
    gs: &'a GramSchmidt,
    u: &'a [Vec<BigInt>],
    best: Option<Vec<BigInt>>,
    visited: u64,
    budget: u64,
}

impl BallSearch<'_> {
    /// Fixes `c[level - 1]` given `c[level..]`, with `rem` the squared
    /// radius left over for levels below.
    fn descend(&mut self, level: usize, c: &mut [BigInt], rem: Rational) -> Result<()> {
        if level == 0 {
            self.offer(c);
            return Ok(());
        }
        let i = level - 1;
        let n = c.len();
        let center = -(i + 1..n).fold(Rational::zero(), |acc, j| acc + &self.gs.mu[j][i] * &c[j]);
        let norm = &self.gs.norms[i];
        // (c_i - center)^2 * norm <= rem, so |c_i - center| <= sqrt(rem / norm)
        let ratio = &rem / norm;
        let reach = ratio.floor().to_integer().sqrt() + 1u32;
        let lo = center.floor().to_integer() - &reach;
        let hi = center.ceil().to_integer() + &reach;
        let mut v = lo;
        while v <= hi {
            let off = Rational::from_integer(v.clone()) - &center;
            let used = &off * &off * norm;
            if used <= rem {
                self.visited += 1;
                if self.visited > self.budget {
                    return Err(Error::Budget {
                        needed: format!("more than {}", self.budget),
                        budget: self.budget,
                    });
                }
                c[i] = v.clone();
                self.descend(i, c, &rem - used)?;
            }
            v += 1u32;
        }
        c[i] = BigInt::zero();
        Ok(())
    }

    fn offer(&mut self, c: &[BigInt]) {
        if c.iter().all(Zero::is_zero) {
            return;
        }
        let n = c.len();
        let mut y: Vec<BigInt> = (0..n)
            .map(|j| c.iter().zip(self.u).map(|(ci, ui)| ci * &ui[j]).sum())
            .collect();
        let yr: Vec<Rational> = y.iter().map(|v| Rational::from_integer(v.clone())).collect();
        let fits = self
            .a
            .mul_vec(&yr)
            .is_ok_and(|img| img.iter().all(|v| v.abs() < Rational::one()));
        if !fits {
            return;
        }
        if y.iter().find(|v| !v.is_zero()).is_some_and(Signed::is_negative) {
            y.iter_mut().for_each(|v| *v = -&*v);
        }
        if self.best.as_ref().is_none_or(|b| y < *b) {
            self.best = Some(y);
        }
    }
}

/// Data of one improvement step `x -> q = (m+1) x - m r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImprovementWitness {
    #[serde(with = "serde_exact::lattice_coords")]
    pub point: LatticePoint,
    /// The violated index used for the step.
    pub t: usize,
    #[serde(with = "serde_exact::bigint")]
    pub m: BigInt,
    #[serde(with = "serde_exact::bigint_vec")]
    pub m_parts: Vec<BigInt>,
    /// Vertex indices carrying the `t` largest coordinates.
    pub vertices_used: Vec<usize>,
    #[serde(with = "serde_exact::rational_vec")]
    pub r: Vec<Rational>,
    #[serde(with = "serde_exact::lattice_coords")]
    pub q: LatticePoint,
    #[serde(with = "serde_exact::rational")]
    pub old_gamma: Rational,
    #[serde(with = "serde_exact::rational")]
    pub new_gamma: Rational,
}

/// One improvement step from the interior lattice point `x`.
///
/// Returns `None` when the generalized product-sum inequalities already
/// hold at `x` for every `t`.
pub fn improve_point(s: &LatticeSimplex, x: &[BigInt]) -> Result<Option<ImprovementWitness>> {
    let beta = s.barycentric_int(x)?;
    if !beta.all_positive() {
        return Err(Error::Domain(format!("point {x:?} is not interior")));
    }
    let sorted = beta.sorted();
    let report = check_generalized(&sorted.beta)?;
    let Some(t) = report.first_violation() else {
        return Ok(None);
    };
    let a = build_ps_matrix(&sorted.beta, t)?;
    let det = a.det()?;
    if !(det.is_positive() && det < Rational::one()) {
        return Err(Error::Invariant(format!(
            "violation at t = {t} but det A = {det} is outside (0, 1)"
        )));
    }
    let mut y = find_small_image_vector(&a)?;
    if y[t].is_negative() {
        y.iter_mut().for_each(|v| *v = -v.clone());
    }
    let m = y[t].clone();
    if m.is_zero() {
        return Err(Error::Invariant("short vector has m = 0".into()));
    }
    let m_parts = y[..t].to_vec();
    if m_parts.iter().sum::<BigInt>() != m {
        return Err(Error::Invariant(format!(
            "m_1 + ... + m_t != m for {y:?}"
        )));
    }
    let used: Vec<usize> = sorted.order[..t].to_vec();
    let d = s.dimension();
    let mut weighted = vec![BigInt::zero(); d];
    for (mi, &vi) in m_parts.iter().zip(&used) {
        for (c, w) in weighted.iter_mut().enumerate() {
            *w += mi * &s.vertices()[vi][c];
        }
    }
    let r: Vec<Rational> = weighted
        .iter()
        .map(|w| Rational::new(w.clone(), m.clone()))
        .collect();
    let q: Vec<BigInt> = x
        .iter()
        .zip(&weighted)
        .map(|(xi, w)| (&m + 1u32) * xi - w)
        .collect();
    let old_gamma = sorted.beta.min();
    let new_beta = s.barycentric_int(&q)?;
    let new_gamma = new_beta.min();
    if new_gamma <= old_gamma || !new_beta.all_positive() {
        return Err(Error::Invariant(format!(
            "step from {x:?} to {q:?} did not raise the minimum coordinate ({old_gamma} -> {new_gamma})"
        )));
    }
    Ok(Some(ImprovementWitness {
        point: x.to_vec(),
        t,
        m,
        m_parts,
        vertices_used: used,
        r,
        q,
        old_gamma,
        new_gamma,
    }))
}

/// Iterates [`improve_point`] until the generalized inequalities hold.
/// Returns every step taken and the final point.
pub fn improve_until_stable(
    s: &LatticeSimplex,
    x: &[BigInt],
) -> Result<(Vec<ImprovementWitness>, LatticePoint)> {
    let mut steps: Vec<ImprovementWitness> = Vec::new();
    let mut current = x.to_vec();
    while let Some(w) = improve_point(s, &current)? {
        current = w.q.clone();
        steps.push(w);
    }
    Ok((steps, current))
}
