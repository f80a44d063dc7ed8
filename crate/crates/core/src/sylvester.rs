//! The Sylvester sequence `2, 3, 7, 43, 1807, ...` and the Zaks-Perles-Wills
//! simplices built from it.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::simplex::LatticeSimplex;
use crate::Rational;

/// Memoized Sylvester numbers. `values[i]` holds `s_{i+1}`.
///
/// Extension is lazy and guarded by a lock, so one cache can be shared
/// between threads.
#[derive(Debug)]
pub struct SylvesterCache {
    inner: RwLock<Inner>,
}

#[derive(Debug)]
struct Inner {
    values: Vec<BigInt>,
    // product of all cached values
    product: BigInt,
}

impl SylvesterCache {
    pub fn new() -> Self {
        SylvesterCache {
            inner: RwLock::new(Inner {
                values: Vec::new(),
                product: BigInt::one(),
            }),
        }
    }

    /// `s_i` for `i >= 1`.
    pub fn get(&self, i: usize) -> Result<BigInt> {
        if i == 0 {
            return Err(Error::Domain("Sylvester index starts at 1".into()));
        }
        {
            let inner = self.inner.read().unwrap();
            if let Some(v) = inner.values.get(i - 1) {
                return Ok(v.clone());
            }
        }
        let mut inner = self.inner.write().unwrap();
        while inner.values.len() < i {
            let next = &inner.product + 1u32;
            inner.product *= &next;
            inner.values.push(next);
        }
        Ok(inner.values[i - 1].clone())
    }

    /// `s_1, ..., s_n`.
    pub fn up_to(&self, n: usize) -> Vec<BigInt> {
        if n == 0 {
            return Vec::new();
        }
        self.get(n).expect("n >= 1");
        self.inner.read().unwrap().values[..n].to_vec()
    }
}

impl Default for SylvesterCache {
    fn default() -> Self {
        Self::new()
    }
}

fn global() -> &'static SylvesterCache {
    static CACHE: OnceLock<SylvesterCache> = OnceLock::new();
    CACHE.get_or_init(SylvesterCache::new)
}

/// `s_i` from the process-wide cache.
pub fn sylvester(i: usize) -> Result<BigInt> {
    global().get(i)
}

/// `s_1, ..., s_n` from the process-wide cache.
pub fn sylvester_upto(n: usize) -> Vec<BigInt> {
    global().up_to(n)
}

pub(crate) fn s(i: usize) -> BigInt {
    sylvester(i).expect("index >= 1")
}

/// `1/s_1 + ... + 1/s_l + 1/(s_1 ... s_l)`, which is always exactly 1.
pub fn sylvester_unit_identity(l: usize) -> Result<Rational> {
    if l == 0 {
        return Err(Error::Domain("identity needs l >= 1".into()));
    }
    let values = sylvester_upto(l);
    let mut sum = Rational::zero();
    let mut product = BigInt::one();
    for v in &values {
        sum += Rational::new(BigInt::one(), v.clone());
        product *= v;
    }
    Ok(sum + Rational::new(BigInt::one(), product))
}

fn check_dk(d: usize, k: u64) -> Result<()> {
    if d == 0 || k == 0 {
        return Err(Error::Domain(format!(
            "need d >= 1 and k >= 1, got d = {d}, k = {k}"
        )));
    }
    Ok(())
}

/// `conv(o, s_1 e_1, ..., s_{d-1} e_{d-1}, (k+1)(s_d - 1) e_d)`.
///
/// Vertex order is `o` followed by the axis vertices.
pub fn zpw_simplex(d: usize, k: u64) -> Result<LatticeSimplex> {
    check_dk(d, k)?;
    let mut vertices = vec![vec![BigInt::zero(); d]];
    for i in 1..=d {
        let mut v = vec![BigInt::zero(); d];
        v[i - 1] = if i < d {
            s(i)
        } else {
            BigInt::from(k + 1) * (s(d) - 1u32)
        };
        vertices.push(v);
    }
    LatticeSimplex::new(vertices)
}

/// `(k+1)(s_d - 1)^2 / d!`
pub fn zpw_volume(d: usize, k: u64) -> Result<Rational> {
    check_dk(d, k)?;
    let sd1 = s(d) - 1u32;
    Ok(Rational::new(
        BigInt::from(k + 1) * &sd1 * &sd1,
        factorial(d),
    ))
}
