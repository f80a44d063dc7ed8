//! Lattice simplices: barycentric coordinates, volume, interior lattice
//! points and the interior point maximizing the smallest barycentric
//! coordinate.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::serde_exact;
use crate::arith::{factorial, Matrix};
use crate::error::{Error, Result};
use crate::{Rational, RationalMatrix};

/// Cell budget for bounding-box scans.
pub const DEFAULT_CELL_BUDGET: u64 = 100_000_000;

/// Integer point of `Z^d`.
pub type LatticePoint = Vec<BigInt>;

/// Full-dimensional simplex with integer vertices.
///
/// Construction precomputes the adjugate of the edge matrix
/// `E = [v_2 - v_1, ..., v_{d+1} - v_1]` so barycentric coordinates of a
/// point cost one integer matrix-vector product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SimplexJson", into = "SimplexJson")]
pub struct LatticeSimplex {
    dimension: usize,
    vertices: Vec<LatticePoint>,
    edge_det: BigInt,
    // adj(E), so that E^{-1} = adj / edge_det
    adjugate: Vec<Vec<BigInt>>,
}

/// On-disk form: `{"dimension": d, "vertices": [[...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplexJson {
    pub dimension: usize,
    #[serde(with = "serde_exact::lattice_coords::nested")]
    pub vertices: Vec<LatticePoint>,
}

impl TryFrom<SimplexJson> for LatticeSimplex {
    type Error = Error;

    fn try_from(j: SimplexJson) -> Result<Self> {
        let s = LatticeSimplex::new(j.vertices)?;
        if s.dimension != j.dimension {
            return Err(Error::Dimension(format!(
                "declared dimension {} but vertices live in dimension {}",
                j.dimension, s.dimension
            )));
        }
        Ok(s)
    }
}

impl From<LatticeSimplex> for SimplexJson {
    fn from(s: LatticeSimplex) -> Self {
        SimplexJson {
            dimension: s.dimension,
            vertices: s.vertices,
        }
    }
}

impl LatticeSimplex {
    /// Builds a simplex from `d+1` vertices of length `d`. Fails with
    /// [`Error::Singular`] when the vertices are affinely dependent.
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        let d = vertices.len().checked_sub(1).unwrap_or(0);
        if d == 0 {
            return Err(Error::Dimension(
                "a simplex needs at least two vertices".into(),
            ));
        }
        if let Some(v) = vertices.iter().find(|v| v.len() != d) {
            return Err(Error::Dimension(format!(
                "vertex of length {} in a simplex with {} vertices",
                v.len(),
                d + 1
            )));
        }
        let edges = edge_matrix(&vertices);
        let edge_det = edges.det()?;
        if edge_det.is_zero() {
            return Err(Error::Singular);
        }
        let inv = edges.inverse()?;
        let adjugate = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let a = &inv[(i, j)] * &edge_det;
                        debug_assert!(a.is_integer());
                        a.to_integer()
                    })
                    .collect()
            })
            .collect();
        Ok(LatticeSimplex {
            dimension: d,
            vertices,
            edge_det: edge_det.to_integer(),
            adjugate,
        })
    }

    pub fn from_i64(vertices: &[&[i64]]) -> Result<Self> {
        Self::new(
            vertices
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// `d! vol(S)`, a positive integer.
    pub fn normalized_volume(&self) -> BigInt {
        self.edge_det.abs()
    }

    /// `|det(v_2 - v_1, ..., v_{d+1} - v_1)| / d!`
    pub fn volume(&self) -> Rational {
        Rational::new(self.normalized_volume(), factorial(self.dimension))
    }

    /// Barycentric coordinates of a rational point with respect to the
    /// stored vertex order.
    pub fn barycentric(&self, x: &[Rational]) -> Result<BetaVector> {
        self.check_len(x.len())?;
        let det = Rational::from_integer(self.edge_det.clone());
        let diff: Vec<Rational> = x
            .iter()
            .zip(&self.vertices[0])
            .map(|(a, b)| a - Rational::from_integer(b.clone()))
            .collect();
        let tail: Vec<Rational> = self
            .adjugate
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&diff)
                    .fold(Rational::zero(), |acc, (a, b)| {
                        acc + Rational::from_integer(a.clone()) * b
                    })
                    / &det
            })
            .collect();
        Ok(BetaVector::from_tail(tail))
    }

    /// Barycentric coordinates of a lattice point.
    pub fn barycentric_int(&self, x: &[BigInt]) -> Result<BetaVector> {
        self.check_len(x.len())?;
        let diff: Vec<BigInt> = x.iter().zip(&self.vertices[0]).map(|(a, b)| a - b).collect();
        let tail = self
            .adjugate
            .iter()
            .map(|row| {
                let w: BigInt = row.iter().zip(&diff).map(|(a, b)| a * b).sum();
                Rational::new(w, self.edge_det.clone())
            })
            .collect();
        Ok(BetaVector::from_tail(tail))
    }

    /// `sum_i beta_i v_i`, the inverse of [`LatticeSimplex::barycentric`].
    pub fn point_from_barycentric(&self, beta: &[Rational]) -> Result<Vec<Rational>> {
        if beta.len() != self.dimension + 1 {
            return Err(Error::Dimension(format!(
                "{} barycentric coordinates for {} vertices",
                beta.len(),
                self.dimension + 1
            )));
        }
        Ok((0..self.dimension)
            .map(|c| {
                beta.iter()
                    .zip(&self.vertices)
                    .fold(Rational::zero(), |acc, (b, v)| {
                        acc + b * Rational::from_integer(v[c].clone())
                    })
            })
            .collect())
    }

    pub fn is_interior(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.barycentric_int(x)?.all_positive())
    }

    /// Per-coordinate open range of the vertex bounding box, as inclusive
    /// integer bounds. Interior points never touch the box faces.
    pub fn interior_box(&self) -> Vec<(BigInt, BigInt)> {
        (0..self.dimension)
            .map(|c| {
                let lo = self.vertices.iter().map(|v| &v[c]).min().unwrap();
                let hi = self.vertices.iter().map(|v| &v[c]).max().unwrap();
                (lo + 1u32, hi - 1u32)
            })
            .collect()
    }

    /// Number of cells scanned by [`LatticeSimplex::interior_points`].
    pub fn interior_box_cells(&self) -> BigInt {
        self.interior_box()
            .iter()
            .map(|(lo, hi)| {
                if hi < lo {
                    BigInt::zero()
                } else {
                    hi - lo + 1u32
                }
            })
            .product()
    }

    /// All interior lattice points, sorted lexicographically.
    pub fn interior_points(&self) -> Result<Vec<LatticePoint>> {
        self.interior_points_with_budget(DEFAULT_CELL_BUDGET)
    }

    pub fn interior_points_with_budget(&self, budget: u64) -> Result<Vec<LatticePoint>> {
        let cells = self.interior_box_cells();
        if cells > BigInt::from(budget) {
            return Err(Error::Budget {
                needed: cells.to_string(),
                budget,
            });
        }
        if cells.is_zero() {
            return Ok(Vec::new());
        }
        let mut points = match FastFrame::new(self) {
            Some(frame) => frame.scan(),
            None => self.scan_exact()?,
        };
        points.sort();
        Ok(points)
    }

    fn scan_exact(&self) -> Result<Vec<LatticePoint>> {
        let bx = self.interior_box();
        let mut out = Vec::new();
        let mut x: Vec<BigInt> = bx.iter().map(|(lo, _)| lo.clone()).collect();
        loop {
            if self.is_interior(&x)? {
                out.push(x.clone());
            }
            let mut c = 0;
            loop {
                if c == self.dimension {
                    return Ok(out);
                }
                if x[c] < bx[c].1 {
                    x[c] += 1u32;
                    break;
                }
                x[c] = bx[c].0.clone();
                c += 1;
            }
        }
    }

    /// The interior lattice point with the largest minimum barycentric
    /// coordinate; the lexicographically smallest one on ties.
    pub fn maxmin_point(&self) -> Result<MaxMinResult> {
        self.maxmin_among(&self.interior_points()?)
    }

    /// Same as [`LatticeSimplex::maxmin_point`] over a precomputed list of
    /// interior points (sorted lexicographically).
    pub fn maxmin_among(&self, interior: &[LatticePoint]) -> Result<MaxMinResult> {
        let mut best: Option<(Rational, &LatticePoint, BetaVector)> = None;
        for x in interior {
            let beta = self.barycentric_int(x)?;
            let gamma = beta.min();
            if best.as_ref().is_none_or(|(g, _, _)| gamma > *g) {
                best = Some((gamma, x, beta));
            }
        }
        let (gamma, point, beta) = best.ok_or(Error::EmptyInterior)?;
        let sorted = beta.sorted();
        Ok(MaxMinResult {
            point: point.clone(),
            beta: sorted.beta,
            order: sorted.order,
            gamma,
        })
    }

    /// Both sides of `vol(S) <= k / (d! beta_1 ... beta_d)` at the interior
    /// point `x`, with `beta` sorted descending and `k` the interior count.
    pub fn check_volume_bound(&self, x: &[BigInt]) -> Result<VolumeBoundCheck> {
        let k = self.interior_points()?.len();
        self.check_volume_bound_with_count(x, k)
    }

    pub fn check_volume_bound_with_count(
        &self,
        x: &[BigInt],
        interior_count: usize,
    ) -> Result<VolumeBoundCheck> {
        let beta = self.barycentric_int(x)?;
        if !beta.all_positive() {
            return Err(Error::Domain(format!(
                "point {x:?} is not an interior point"
            )));
        }
        let sorted = beta.sorted().beta;
        let product = sorted.entries()[..self.dimension]
            .iter()
            .fold(Rational::one(), |acc, b| acc * b);
        let denom = Rational::from_integer(factorial(self.dimension)) * product;
        let bound = Rational::from_integer(interior_count.into()) / denom;
        let volume = self.volume();
        Ok(VolumeBoundCheck {
            holds: volume <= bound,
            volume,
            bound,
            interior_count,
        })
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.dimension {
            return Err(Error::Dimension(format!(
                "point of length {n} in dimension {}",
                self.dimension
            )));
        }
        Ok(())
    }
}

fn edge_matrix(vertices: &[LatticePoint]) -> RationalMatrix {
    let d = vertices.len() - 1;
    let mut m = Matrix::zeros(d, d);
    for j in 0..d {
        for i in 0..d {
            m[(i, j)] = Rational::from_integer(&vertices[j + 1][i] - &vertices[0][i]);
        }
    }
    m
}

/// Machine-integer copy of the frame, used when every intermediate product
/// of the interior test provably fits in `i128`.
struct FastFrame {
    d: usize,
    origin: Vec<i128>,
    adj: Vec<Vec<i128>>,
    det: i128,
    bx: Vec<(i128, i128)>,
}

impl FastFrame {
    fn new(s: &LatticeSimplex) -> Option<Self> {
        let bx: Vec<(i128, i128)> = s
            .interior_box()
            .iter()
            .map(|(lo, hi)| Some((lo.to_i128()?, hi.to_i128()?)))
            .collect::<Option<_>>()?;
        let origin: Vec<i128> = s.vertices[0].iter().map(ToPrimitive::to_i128).collect::<Option<_>>()?;
        // |x_i - origin_i| is bounded by the box extent around the origin
        let reach = bx
            .iter()
            .zip(&origin)
            .map(|(&(lo, hi), &o)| (lo - o).abs().max((hi - o).abs()))
            .max()?;
        let adj_max = s.adjugate.iter().flatten().map(|a| a.abs()).max()?;
        let bound = adj_max * BigInt::from(reach) * BigInt::from(s.dimension + 1)
            + s.edge_det.abs();
        if bound.bits() > 120 {
            return None;
        }
        Some(FastFrame {
            d: s.dimension,
            origin,
            adj: s
                .adjugate
                .iter()
                .map(|r| r.iter().map(|a| a.to_i128().unwrap()).collect())
                .collect(),
            det: s.edge_det.to_i128()?,
            bx,
        })
    }

    fn interior(&self, x: &[i128]) -> bool {
        let sd = self.det.signum();
        let mut total = 0i128;
        for row in &self.adj {
            let w: i128 = row
                .iter()
                .zip(x.iter().zip(&self.origin))
                .map(|(a, (xi, oi))| a * (xi - oi))
                .sum();
            if w * sd <= 0 {
                return false;
            }
            total += w;
        }
        (self.det - total) * sd > 0
    }

    fn scan(&self) -> Vec<LatticePoint> {
        let (lo0, hi0) = self.bx[0];
        let firsts: Vec<i128> = (lo0..=hi0).collect();
        firsts
            .par_iter()
            .flat_map_iter(|&x0| {
                let mut out = Vec::new();
                let mut x: Vec<i128> = self.bx.iter().map(|b| b.0).collect();
                x[0] = x0;
                loop {
                    if self.interior(&x) {
                        out.push(x.iter().map(|&v| BigInt::from(v)).collect());
                    }
                    let mut c = 1;
                    loop {
                        if c == self.d {
                            return out;
                        }
                        if x[c] < self.bx[c].1 {
                            x[c] += 1;
                            break;
                        }
                        x[c] = self.bx[c].0;
                        c += 1;
                    }
                }
            })
            .collect()
    }
}

/// Barycentric coordinates `beta_1, ..., beta_{d+1}`; they always sum to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BetaRepr", into = "BetaRepr")]
pub struct BetaVector(Vec<Rational>);

#[derive(Serialize, Deserialize)]
struct BetaRepr(#[serde(with = "serde_exact::rational_vec")] Vec<Rational>);

impl TryFrom<BetaRepr> for BetaVector {
    type Error = Error;

    fn try_from(r: BetaRepr) -> Result<Self> {
        BetaVector::new(r.0)
    }
}

impl From<BetaVector> for BetaRepr {
    fn from(b: BetaVector) -> Self {
        BetaRepr(b.0)
    }
}

impl BetaVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::Dimension(format!(
                "{} barycentric coordinates; need at least 2",
                entries.len()
            )));
        }
        let sum: Rational = entries.iter().sum();
        if !sum.is_one() {
            return Err(Error::Domain(format!(
                "barycentric coordinates sum to {sum}, not 1"
            )));
        }
        Ok(BetaVector(entries))
    }

    /// Completes `beta_2..beta_{d+1}` with `beta_1 = 1 - sum`.
    fn from_tail(tail: Vec<Rational>) -> Self {
        let first = Rational::one() - tail.iter().sum::<Rational>();
        let mut v = Vec::with_capacity(tail.len() + 1);
        v.push(first);
        v.extend(tail);
        BetaVector(v)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `d` for a vector of `d+1` coordinates.
    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn min(&self) -> Rational {
        self.0.iter().min().unwrap().clone()
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(Signed::is_positive)
    }

    /// Non-increasing order.
    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Stable descending sort. `order[i]` is the original index of the
    /// `i`-th largest coordinate.
    pub fn sorted(&self) -> SortedBeta {
        let mut order: Vec<usize> = (0..self.0.len()).collect();
        order.sort_by(|&a, &b| match self.0[b].cmp(&self.0[a]) {
            Ordering::Equal => a.cmp(&b),
            o => o,
        });
        SortedBeta {
            beta: BetaVector(order.iter().map(|&i| self.0[i].clone()).collect()),
            order,
        }
    }

    /// `beta_1 * ... * beta_d`
    pub fn objective(&self) -> Rational {
        self.0[..self.0.len() - 1]
            .iter()
            .fold(Rational::one(), |acc, b| acc * b)
    }
}

/// A descending view of a [`BetaVector`] plus the vertex permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortedBeta {
    pub beta: BetaVector,
    pub order: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxMinResult {
    #[serde(with = "serde_exact::lattice_coords")]
    pub point: LatticePoint,
    /// Sorted descending.
    pub beta: BetaVector,
    /// Vertex index carrying each sorted coordinate.
    pub order: Vec<usize>,
    #[serde(with = "serde_exact::rational")]
    pub gamma: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeBoundCheck {
    #[serde(with = "serde_exact::rational")]
    pub volume: Rational,
    #[serde(with = "serde_exact::rational")]
    pub bound: Rational,
    pub holds: bool,
    pub interior_count: usize,
}
