//! Self-check harness: recomputes the library's invariants on fixed inputs
//! and on a seeded random corpus, and reports every check with a witness
//! for the first failure.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{pikhurko_old_bound, theorem12_bound, theorem32_bound, thm15a_threshold};
use crate::corpus::{random_corpus, CorpusConfig};
use crate::error::Result;
use crate::prodsum::{check_generalized, check_product_sum, improve_until_stable};
use crate::simplex::{LatticePoint, LatticeSimplex, DEFAULT_CELL_BUDGET};
use crate::sylvester::{sylvester_unit_identity, sylvester_upto, zpw_simplex, zpw_volume};
use crate::tau::{build_univariate, default_tolerance, grid_oracle, lemma51_bound, tau_lower_bound};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub max_dim: usize,
    pub seed: u64,
    pub corpus_size: usize,
    /// Total bounding-box cells the corpus scans may visit. Simplices past
    /// the budget are skipped and the report is flagged incomplete.
    pub cell_budget: u64,
    /// Test fixture: perturbs the Sylvester oracle so the harness must fail.
    #[serde(default)]
    pub corrupt_oracle: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_dim: 3,
            seed: CorpusConfig::default().seed,
            corpus_size: 100,
            cell_budget: DEFAULT_CELL_BUDGET,
            corrupt_oracle: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    /// Number of instances examined.
    pub cases: u64,
    /// Data of the first failing instance.
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyAllReport {
    pub config: VerifyConfig,
    pub status: CheckStatus,
    /// Part of the corpus was skipped because of the cell budget.
    pub incomplete: bool,
    pub corpus_checked: usize,
    pub corpus_skipped: usize,
    /// The corpus was empty, so every corpus check passed vacuously.
    pub no_checks_run: bool,
    pub checks: Vec<CheckRecord>,
}

impl VerifyAllReport {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Accumulates one named check.
struct Check {
    name: &'static str,
    cases: u64,
    witness: Option<Value>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            cases: 0,
            witness: None,
        }
    }

    fn case(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn error(&mut self, context: Value, e: &crate::Error) {
        self.case(false, || json!({ "context": context, "error": e.to_string() }));
    }

    fn merge(&mut self, other: Check) {
        self.cases += other.cases;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }

    fn finish(self) -> CheckRecord {
        CheckRecord {
            name: self.name.into(),
            status: if self.witness.is_none() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            cases: self.cases,
            witness: self.witness,
        }
    }
}

fn simplex_json(s: &LatticeSimplex) -> Value {
    serde_json::to_value(s).expect("simplex serializes")
}

fn point_json(x: &[BigInt]) -> Value {
    Value::Array(x.iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn verify_all(cfg: &VerifyConfig) -> VerifyAllReport {
    let mut checks = vec![
        check_sylvester(cfg),
        check_zpw(cfg),
        check_zpw_product_sum(),
    ];

    let corpus = random_corpus(&CorpusConfig {
        seed: cfg.seed,
        size: cfg.corpus_size,
        max_dim: cfg.max_dim.min(3),
        ..CorpusConfig::default()
    });
    let mut spent = BigInt::from(0u32);
    let budget = BigInt::from(cfg.cell_budget);
    let admitted: Vec<&LatticeSimplex> = corpus
        .iter()
        .take_while(|s| {
            spent += s.interior_box_cells();
            spent <= budget
        })
        .collect();
    let corpus_checked = admitted.len();
    let corpus_skipped = corpus.len() - corpus_checked;

    let per_simplex: Vec<[Check; 5]> = admitted.par_iter().map(|s| corpus_checks(s)).collect();
    let mut merged = corpus_check_set();
    for set in per_simplex {
        for (acc, c) in merged.iter_mut().zip(set) {
            acc.merge(c);
        }
    }
    checks.extend(merged.into_iter().map(Check::finish));

    checks.push(check_tau(cfg));
    checks.push(check_seams());
    checks.push(check_bound_orderings());

    let status = if checks.iter().all(|c| c.status == CheckStatus::Pass) {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    let no_checks_run = corpus_checked == 0;
    VerifyAllReport {
        config: cfg.clone(),
        status,
        incomplete: corpus_skipped > 0,
        corpus_checked,
        corpus_skipped,
        no_checks_run,
        checks,
    }
}

fn check_sylvester(cfg: &VerifyConfig) -> CheckRecord {
    let mut c = Check::new("sylvester-recurrence");
    let n = 8;
    let cached = sylvester_upto(n);
    // s_{i+1} = s_i^2 - s_i + 1, an independent path from the running product
    let mut expected = vec![BigInt::from(2u32)];
    while expected.len() < n {
        let last = expected.last().unwrap();
        expected.push(last * last - last + 1u32);
    }
    if cfg.corrupt_oracle {
        expected[3] += 1u32;
    }
    for (i, (got, want)) in cached.iter().zip(&expected).enumerate() {
        c.case(got == want, || {
            json!({ "index": i + 1, "computed": got.to_string(), "oracle": want.to_string() })
        });
    }
    for l in 1..=n {
        match sylvester_unit_identity(l) {
            Ok(v) => c.case(v == Rational::one(), || json!({ "identity_l": l, "value": v.to_string() })),
            Err(e) => c.error(json!({ "identity_l": l }), &e),
        }
    }
    c.finish()
}

fn check_zpw(cfg: &VerifyConfig) -> CheckRecord {
    let mut c = Check::new("zpw-interior-and-volume");
    for d in 1..=cfg.max_dim.min(3) {
        for k in 1..=3u64 {
            let ctx = json!({ "d": d, "k": k });
            let run = || -> Result<(usize, bool, bool)> {
                let s = zpw_simplex(d, k)?;
                let pts = s.interior_points()?;
                let vol_ok = s.volume() == zpw_volume(d, k)?;
                let mut eq12 = true;
                for x in &pts {
                    eq12 &= s.check_volume_bound_with_count(x, pts.len())?.holds;
                }
                Ok((pts.len(), vol_ok, eq12))
            };
            match run() {
                Ok((n, vol_ok, eq12)) => c.case(n as u64 == k && vol_ok && eq12, || {
                    json!({ "d": d, "k": k, "interior": n, "volume_matches": vol_ok, "volume_bound_holds": eq12 })
                }),
                Err(e) => c.error(ctx, &e),
            }
        }
    }
    c.finish()
}

fn check_zpw_product_sum() -> CheckRecord {
    let mut c = Check::new("zpw-product-sum-tightness");
    let run = || -> Result<(Vec<bool>, bool)> {
        let s = zpw_simplex(3, 1)?;
        let x = s.interior_points()?.remove(0);
        let beta = s.barycentric_int(&x)?.sorted().beta;
        let r = check_product_sum(&beta)?;
        Ok((r.records.iter().map(|x| x.tight).collect(), r.all_hold()))
    };
    match run() {
        Ok((tight, holds)) => c.case(holds && tight == [true, true, false], || {
            json!({ "tight": tight, "all_hold": holds })
        }),
        Err(e) => c.error(json!({ "d": 3, "k": 1 }), &e),
    }
    c.finish()
}

fn corpus_check_set() -> [Check; 5] {
    [
        Check::new("corpus-generalized-product-sum"),
        Check::new("corpus-volume-bound"),
        Check::new("corpus-maxmin-threshold"),
        Check::new("corpus-improvement"),
        Check::new("corpus-barycentric-round-trip"),
    ]
}

fn corpus_checks(s: &LatticeSimplex) -> [Check; 5] {
    let [mut gen, mut vol, mut thr, mut imp, mut rt] = corpus_check_set();
    let sj = || json!({ "simplex": simplex_json(s) });
    let pts: Vec<LatticePoint> = match s.interior_points() {
        Ok(p) => p,
        Err(e) => {
            gen.error(sj(), &e);
            return [gen, vol, thr, imp, rt];
        }
    };
    match s.maxmin_among(&pts) {
        Ok(mm) => {
            match check_generalized(&mm.beta) {
                Ok(r) => gen.case(r.all_hold(), || {
                    json!({ "simplex": simplex_json(s), "point": point_json(&mm.point), "first_violation": r.first_violation() })
                }),
                Err(e) => gen.error(sj(), &e),
            }
            match thm15a_threshold(s.dimension()) {
                Ok(t) => thr.case(mm.gamma >= t, || {
                    json!({ "simplex": simplex_json(s), "gamma": mm.gamma.to_string(), "threshold": t.to_string() })
                }),
                Err(e) => thr.error(sj(), &e),
            }
        }
        Err(e) => gen.error(sj(), &e),
    }
    for x in &pts {
        match s.check_volume_bound_with_count(x, pts.len()) {
            Ok(v) => vol.case(v.holds, || {
                json!({ "simplex": simplex_json(s), "point": point_json(x), "volume": v.volume.to_string(), "bound": v.bound.to_string() })
            }),
            Err(e) => vol.error(sj(), &e),
        }
        match s.barycentric_int(x) {
            Ok(b) => {
                let xr: Vec<Rational> = x.iter().map(|c| Rational::from_integer(c.clone())).collect();
                let back = s.point_from_barycentric(b.entries());
                rt.case(back.as_ref().is_ok_and(|p| *p == xr), || {
                    json!({ "simplex": simplex_json(s), "point": point_json(x) })
                });
            }
            Err(e) => rt.error(sj(), &e),
        }
        match improve_until_stable(s, x) {
            Ok((steps, last)) => {
                let increasing = steps.windows(2).all(|w| w[0].new_gamma < w[1].new_gamma)
                    && steps.iter().all(|w| w.old_gamma < w.new_gamma);
                let settled = s
                    .barycentric_int(&last)
                    .and_then(|b| check_generalized(&b.sorted().beta))
                    .is_ok_and(|r| r.all_hold());
                let interior = s.is_interior(&last).unwrap_or(false);
                imp.case(increasing && settled && interior, || {
                    json!({ "simplex": simplex_json(s), "start": point_json(x), "steps": steps.len(), "final": point_json(&last) })
                });
            }
            Err(e) => imp.error(json!({ "simplex": simplex_json(s), "start": point_json(x) }), &e),
        }
    }
    [gen, vol, thr, imp, rt]
}

fn check_tau(cfg: &VerifyConfig) -> CheckRecord {
    let mut c = Check::new("tau-cross-checks");
    let tol = default_tolerance();
    let grid_steps = [(2usize, 18u64), (3, 24)];
    for &(d, n) in grid_steps.iter().filter(|(d, _)| *d <= cfg.max_dim.max(2)) {
        let run = || -> Result<(Rational, bool, Rational)> {
            let t = tau_lower_bound(d, &tol)?;
            let g = grid_oracle(d, n)?;
            Ok((t.lower_bound, t.is_exact, g.value))
        };
        match run() {
            Ok((lb, exact, grid)) => c.case(exact && lb == grid, || {
                json!({ "d": d, "grid_steps": n, "lower_bound": lb.to_string(), "grid": grid.to_string(), "is_exact": exact })
            }),
            Err(e) => c.error(json!({ "d": d }), &e),
        }
    }
    for d in 4..=5 {
        let run = || -> Result<(Rational, Rational)> {
            Ok((tau_lower_bound(d, &tol)?.lower_bound, lemma51_bound(d)?))
        };
        match run() {
            Ok((lb, l51)) => c.case(lb >= l51, || {
                json!({ "d": d, "lower_bound": lb.to_string(), "lemma51": l51.to_string() })
            }),
            Err(e) => c.error(json!({ "d": d }), &e),
        }
    }
    c.finish()
}

fn check_seams() -> CheckRecord {
    let mut c = Check::new("univariate-seams");
    for d in 2..=6 {
        for ell in 1..d {
            let run = || -> Result<(Rational, Rational)> {
                let a = build_univariate(d, ell)?;
                let b = build_univariate(d, ell + 1)?;
                Ok((a.poly.eval(&a.lo), b.poly.eval(&b.hi)))
            };
            match run() {
                Ok((left, right)) => c.case(left == right && left.is_positive(), || {
                    json!({ "d": d, "ell": ell, "f_ell": left.to_string(), "f_next": right.to_string() })
                }),
                Err(e) => c.error(json!({ "d": d, "ell": ell }), &e),
            }
        }
    }
    c.finish()
}

fn check_bound_orderings() -> CheckRecord {
    let mut c = Check::new("bound-orderings");
    for d in 1..=8usize {
        for k in 1..=5u64 {
            let run = || -> Result<(Rational, Rational)> { Ok((zpw_volume(d, k)?, theorem12_bound(d, k)?)) };
            match run() {
                Ok((z, b)) => {
                    let upper = &z * Rational::from_integer((d + 1).into());
                    c.case(z <= b && b <= upper, || {
                        json!({ "d": d, "k": k, "zpw": z.to_string(), "thm12": b.to_string() })
                    });
                }
                Err(e) => c.error(json!({ "d": d, "k": k }), &e),
            }
        }
    }
    for d in 1..=6 {
        let run = || -> Result<(Rational, Rational)> { Ok((theorem12_bound(d, 1)?, pikhurko_old_bound(d, 1)?)) };
        match run() {
            // both sides are 2 at d = 1
            Ok((b, p)) => c.case(if d == 1 { b == p } else { b < p }, || {
                json!({ "d": d, "thm12": b.to_string(), "pikhurko_old": p.to_string() })
            }),
            Err(e) => c.error(json!({ "d": d }), &e),
        }
    }
    let tol = default_tolerance();
    for d in 1..=4 {
        for k in 1..=5u64 {
            let run = || -> Result<(Rational, Rational)> {
                let tau = tau_lower_bound(d, &tol)?.lower_bound;
                Ok((theorem32_bound(d, k, &tau)?, zpw_volume(d, k)?))
            };
            match run() {
                Ok((b, z)) => c.case(b >= z, || {
                    json!({ "d": d, "k": k, "thm32": b.to_string(), "zpw": z.to_string() })
                }),
                Err(e) => c.error(json!({ "d": d, "k": k }), &e),
            }
        }
    }
    c.finish()
}
