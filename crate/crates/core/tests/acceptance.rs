//! Acceptance criteria 1-11. Prints one line per criterion and exits
//! non-zero if any fails. DEVIATION marks a criterion whose literal
//! statement is false while its corrected form is verified.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use simplexvol::bounds::{pikhurko_old_bound, theorem12_bound, thm15a_threshold};
use simplexvol::corpus::{random_corpus, CorpusConfig};
use simplexvol::prodsum::{check_generalized, check_product_sum, find_small_image_vector, improve_point};
use simplexvol::simplex::{LatticePoint, LatticeSimplex};
use simplexvol::sylvester::{zpw_simplex, zpw_volume, SylvesterCache};
use simplexvol::tau::{build_univariate, default_tolerance, grid_oracle, reconstruct_beta, tau_lower_bound};
use simplexvol::{Matrix, Rational, RationalMatrix};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Deviation,
    Fail,
}

struct Outcome {
    status: Status,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        status: Status::Pass,
        detail: detail.into(),
    }
}

fn deviation(detail: impl Into<String>) -> Outcome {
    Outcome {
        status: Status::Deviation,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        status: Status::Fail,
        detail: detail.into(),
    }
}

fn q(s: &str) -> Rational {
    simplexvol::arith::parse_rational(s).unwrap()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn criterion1() -> Outcome {
    let cache = SylvesterCache::new();
    let start = Instant::now();
    let got = cache.up_to(6);
    let elapsed = start.elapsed();
    // second path: s_{i+1} = s_i^2 - s_i + 1
    let mut oracle = vec![BigInt::from(2)];
    while oracle.len() < 6 {
        let s = oracle.last().unwrap();
        oracle.push(s * s - s + 1u32);
    }
    let literal = ints(&[2, 3, 7, 43, 1807, 3263443]);
    if got != oracle || got != literal {
        return fail(format!("got {got:?}"));
    }
    if elapsed >= Duration::from_millis(1) {
        return fail(format!("took {elapsed:?}, budget 1 ms"));
    }
    pass(format!("s_1..s_6 = 2, 3, 7, 43, 1807, 3263443 in {elapsed:?}"))
}

fn criterion2() -> Outcome {
    for d in 1..=4 {
        for k in 1..=5u64 {
            let s = zpw_simplex(d, k).unwrap();
            let n = s.interior_points().unwrap().len();
            let vol = s.volume();
            let expect = zpw_volume(d, k).unwrap();
            // independent closed form from the vertex coordinates
            let axis: BigInt = s.vertices()[1..].iter().enumerate().map(|(i, v)| v[i].clone()).product();
            let direct = Rational::new(axis, (1..=d as u64).product::<u64>().into());
            if n as u64 != k || vol != expect || vol != direct {
                return fail(format!("d = {d}, k = {k}: {n} interior points, volume {vol}"));
            }
        }
    }
    pass("all d <= 4, k <= 5: k interior points and volume (k+1)(s_d-1)^2/d!")
}

fn criterion3() -> Outcome {
    let s = zpw_simplex(3, 1).unwrap();
    let pts = s.interior_points().unwrap();
    if pts.len() != 1 {
        return fail(format!("{} interior points", pts.len()));
    }
    let beta = s.barycentric_int(&pts[0]).unwrap().sorted().beta;
    let expect = vec![q("1/2"), q("1/3"), q("1/12"), q("1/12")];
    if beta.entries() != expect.as_slice() {
        return fail(format!("beta = {:?}", beta.entries()));
    }
    let r = check_product_sum(&beta).unwrap();
    let tight: Vec<bool> = r.records.iter().map(|x| x.tight).collect();
    if tight != [true, true, false] || !r.all_hold() {
        return fail(format!("tightness {tight:?}"));
    }
    pass("beta = (1/2, 1/3, 1/12, 1/12); tight at t = 1, 2; strict at t = 3")
}

struct CorpusRun {
    simplices: usize,
    eq16_failures: Vec<String>,
    threshold_failures: Vec<String>,
    improvement_failures: Vec<String>,
    starts: usize,
    steps: usize,
    elapsed: Duration,
}

fn improvement_chain(s: &LatticeSimplex, x: &LatticePoint) -> Result<usize, String> {
    let mut current = x.clone();
    let mut gamma = s.barycentric_int(x).map_err(|e| e.to_string())?.min();
    let mut steps = 0;
    loop {
        match improve_point(s, &current).map_err(|e| e.to_string())? {
            None => break,
            Some(w) => {
                let beta = s.barycentric_int(&w.q).map_err(|e| e.to_string())?;
                if !beta.all_positive() || beta.min() <= gamma || w.new_gamma != beta.min() {
                    return Err(format!("step {steps} from {current:?} did not raise gamma"));
                }
                gamma = beta.min();
                current = w.q;
                steps += 1;
            }
        }
    }
    let sorted = s.barycentric_int(&current).unwrap().sorted().beta;
    if !check_generalized(&sorted).unwrap().all_hold() {
        return Err(format!("final point {current:?} violates the generalized inequalities"));
    }
    Ok(steps)
}

fn corpus_run() -> CorpusRun {
    let start = Instant::now();
    let corpus = random_corpus(&CorpusConfig::default());
    let per: Vec<_> = corpus
        .par_iter()
        .map(|s| {
            let pts = s.interior_points().unwrap();
            let mm = s.maxmin_among(&pts).unwrap();
            let eq16 = check_generalized(&mm.beta).unwrap().all_hold();
            let thr = mm.gamma >= thm15a_threshold(s.dimension()).unwrap();
            let mut imp_fail = None;
            let mut steps = 0;
            for x in &pts {
                match improvement_chain(s, x) {
                    Ok(n) => steps += n,
                    Err(e) => {
                        imp_fail.get_or_insert(e);
                    }
                }
            }
            (eq16, thr, imp_fail, pts.len(), steps, serde_json::to_string(s).unwrap())
        })
        .collect();
    let mut run = CorpusRun {
        simplices: corpus.len(),
        eq16_failures: vec![],
        threshold_failures: vec![],
        improvement_failures: vec![],
        starts: 0,
        steps: 0,
        elapsed: Duration::ZERO,
    };
    for (eq16, thr, imp, n, steps, js) in per {
        if !eq16 {
            run.eq16_failures.push(js.clone());
        }
        if !thr {
            run.threshold_failures.push(js.clone());
        }
        if let Some(e) = imp {
            run.improvement_failures.push(format!("{js}: {e}"));
        }
        run.starts += n;
        run.steps += steps;
    }
    run.elapsed = start.elapsed();
    run
}

fn criterion4(run: &CorpusRun) -> Outcome {
    if run.simplices != 500 {
        return fail(format!("corpus has {} simplices", run.simplices));
    }
    if let Some(w) = run.eq16_failures.first() {
        return fail(format!("{} failures, first {w}", run.eq16_failures.len()));
    }
    if run.elapsed >= Duration::from_secs(60) {
        return fail(format!("took {:?}", run.elapsed));
    }
    pass(format!("500 simplices, max-min point satisfies every generalized inequality ({:?} incl. criteria 5 and 10 corpus work)", run.elapsed))
}

fn criterion5(run: &CorpusRun) -> Outcome {
    let s = LatticeSimplex::from_i64(&[&[0], &[5]]).unwrap();
    let w = improve_point(&s, &ints(&[1])).unwrap();
    let ok = w.as_ref().is_some_and(|w| {
        w.m == BigInt::one() && w.m_parts == ints(&[1]) && w.q == ints(&[2]) && w.old_gamma == q("1/5") && w.new_gamma == q("2/5")
    });
    if !ok {
        return fail(format!("[0,5] at 1 gave {w:?}"));
    }
    if let Some(e) = run.improvement_failures.first() {
        return fail(e.clone());
    }
    pass(format!(
        "[0,5]: m = 1, m_1 = 1, q = 2, gamma 1/5 -> 2/5; corpus: {} starts, {} steps, all terminate with gamma strictly increasing",
        run.starts, run.steps
    ))
}

fn criterion6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(1..=4usize);
        let entries: Vec<Rational> = (0..n * n)
            .map(|_| Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into()))
            .collect();
        let b = Matrix::new(n, n, entries).unwrap();
        let det = b.det().unwrap().abs();
        if det.is_zero() {
            continue;
        }
        let mut k = 1u32;
        while Rational::from_integer(BigInt::from(k).pow(n as u32)) <= det {
            k += 1;
        }
        let k = Rational::from_integer((k + rng.gen_range(0..2u32)).into());
        let a: RationalMatrix = Matrix::new(n, n, b.entries().iter().map(|x| x / &k).collect()).unwrap();
        let adet = a.det().unwrap();
        if adet.is_zero() || adet.abs() >= Rational::one() {
            return fail(format!("generator produced det {adet}"));
        }
        let y = match find_small_image_vector(&a) {
            Ok(y) => y,
            Err(e) => return fail(format!("matrix {a}: {e}")),
        };
        let yr: Vec<Rational> = y.iter().map(|v| Rational::from_integer(v.clone())).collect();
        let img = a.mul_vec(&yr).unwrap();
        if y.iter().all(Zero::is_zero) || img.iter().any(|v| v.abs() >= Rational::one()) {
            return fail(format!("matrix {a}: bad y = {y:?}"));
        }
        done += 1;
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(10) {
        return fail(format!("took {elapsed:?}"));
    }
    pass(format!("100 matrices, n <= 4: nonzero y with ||Ay||_inf < 1 verified exactly in {elapsed:?}"))
}

fn criterion7() -> Outcome {
    let start = Instant::now();
    let tol = default_tolerance();
    let cases = [
        (2usize, "1/9", vec!["2/3", "1/6", "1/6"], 18u64),
        (3, "13/1536", vec!["13/24", "9/24", "1/24", "1/24"], 24),
    ];
    for (d, value, beta, n) in cases {
        let t = tau_lower_bound(d, &tol).unwrap();
        let beta: Vec<Rational> = beta.iter().map(|s| q(s)).collect();
        if t.lower_bound != q(value) || !t.is_exact || !t.attaining_feasible || t.attaining_beta.entries() != beta.as_slice() {
            return fail(format!("d = {d}: {} at {:?}", t.lower_bound, t.attaining_beta.entries()));
        }
        let g = grid_oracle(d, n).unwrap();
        if g.value != q(value) {
            return fail(format!("grid oracle d = {d}, N = {n} gave {}", g.value));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        return fail(format!("took {elapsed:?}"));
    }
    pass(format!("tau_2 = 1/9, tau_3 = 13/1536, feasible attaining beta, grid oracle N = 18, 24 agrees ({elapsed:?})"))
}

fn criterion8() -> Outcome {
    let start = Instant::now();
    let t = tau_lower_bound(4, &default_tolerance()).unwrap();
    let elapsed = start.elapsed();
    if t.lower_bound < q("1/8820") {
        return fail(format!("tau_4 >= {} < 1/8820", t.lower_bound));
    }
    if elapsed >= Duration::from_secs(10) {
        return fail(format!("took {elapsed:?}"));
    }
    pass(format!("tau_4 >= {} >= 1/8820 (exact: {}) in {elapsed:?}", t.lower_bound, t.is_exact))
}

fn criterion9() -> Outcome {
    let start = Instant::now();
    for d in 1..=8usize {
        for k in 1..=5u64 {
            let z = zpw_volume(d, k).unwrap();
            let b = theorem12_bound(d, k).unwrap();
            if !(z <= b && b <= &z * Rational::from_integer((d + 1).into())) {
                return fail(format!("sandwich fails at d = {d}, k = {k}"));
            }
        }
    }
    let mut equal_at = vec![];
    for d in 1..=6 {
        let b = theorem12_bound(d, 1).unwrap();
        let p = pikhurko_old_bound(d, 1).unwrap();
        if b > p {
            return fail(format!("thm12 > old bound at d = {d}"));
        }
        if b == p {
            equal_at.push(d);
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        return fail(format!("took {elapsed:?}"));
    }
    if equal_at != [1] {
        return fail(format!("strict improvement fails at d in {equal_at:?}"));
    }
    deviation(format!(
        "sandwich exact for d <= 8, k <= 5; thm12 < old bound strictly for 2 <= d <= 6, \
         but at d = 1 both equal 2, so the strict inequality as stated fails there ({elapsed:?})"
    ))
}

fn criterion10(run: &CorpusRun) -> Outcome {
    if let Some(w) = run.threshold_failures.first() {
        return fail(format!("{} failures, first {w}", run.threshold_failures.len()));
    }
    pass("gamma of the max-min point >= 1/((d+1)(s_{d+1}-1)) on all 500 corpus simplices")
}

fn criterion11() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in 1..=6 {
        for ell in 1..=d {
            let p = build_univariate(d, ell).unwrap();
            if ell < d {
                let next = build_univariate(d, ell + 1).unwrap();
                if p.lo != next.hi || p.poly.eval(&p.lo) != next.poly.eval(&next.hi) {
                    return fail(format!("seam d = {d}, l = {ell}"));
                }
            }
            for _ in 0..100 {
                let den: i64 = rng.gen_range(1..=1_000_000);
                let num: i64 = rng.gen_range(0..=den);
                let alpha = &p.lo + (&p.hi - &p.lo) * Rational::new(num.into(), den.into());
                let beta = reconstruct_beta(d, ell, &alpha).unwrap();
                if beta.objective() != p.poly.eval(&alpha) {
                    return fail(format!("d = {d}, l = {ell}, alpha = {alpha}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(5) {
        return fail(format!("took {elapsed:?}"));
    }
    pass(format!("seams agree for d <= 6; objective = f_l(alpha) on 100 random alpha per (d, l) ({elapsed:?})"))
}

fn main() -> ExitCode {
    let run = corpus_run();
    let results = [
        criterion1(),
        criterion2(),
        criterion3(),
        criterion4(&run),
        criterion5(&run),
        criterion6(),
        criterion7(),
        criterion8(),
        criterion9(),
        criterion10(&run),
        criterion11(),
    ];
    let mut all = true;
    for (i, r) in results.iter().enumerate() {
        let label = match r.status {
            Status::Pass => "PASS",
            Status::Deviation => "DEVIATION",
            Status::Fail => "FAIL",
        };
        println!("criterion {:>2}: {label}  {}", i + 1, r.detail);
        all &= r.status != Status::Fail;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
