//! Real root isolation with Sturm sequences.
//!
//! The polynomial is first reduced to its square-free part so every root is
//! simple and sign changes are reliable. Rational roots are found exactly:
//! if `p` has integer coefficients with leading coefficient `L`, any
//! rational root `r` satisfies `L*r ∈ Z`, so once an isolating interval is
//! narrower than `1/|L|` it holds at most one candidate.

use serde::{Deserialize, Serialize};

use super::{sign, ExactScalar, Polynomial};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` holding exactly one real root.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RootEnclosure<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: ExactScalar> RootEnclosure<T> {
    pub fn exact(x: T) -> Self {
        RootEnclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn midpoint(&self) -> T {
        (self.lo.clone() + self.hi.clone()) / T::from_i64(2)
    }
}

/// Square-free part of a polynomial together with its Sturm chain.
#[derive(Clone, Debug)]
pub struct RootIsolator<T> {
    square_free: Polynomial<T>,
    chain: Vec<Polynomial<T>>,
    lead: T,
}

impl<T: ExactScalar> RootIsolator<T> {
    pub fn new(p: &Polynomial<T>) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let square_free = p.square_free().clear_denominators();
        let lead = square_free.leading().unwrap().abs();
        let mut chain = vec![square_free.clone()];
        let mut next = square_free.derivative();
        while !next.is_zero() {
            let (_, r) = chain.last().unwrap().div_rem(&next);
            chain.push(next);
            next = -&r;
        }
        Ok(RootIsolator {
            square_free,
            chain,
            lead,
        })
    }

    pub fn square_free(&self) -> &Polynomial<T> {
        &self.square_free
    }

    pub fn chain(&self) -> &[Polynomial<T>] {
        &self.chain
    }

    /// Sign variations of the Sturm chain at `x`, zeros skipped.
    pub fn variations(&self, x: &T) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.chain {
            let s = sign(&p.eval(x));
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct roots in the half-open interval `(lo, hi]`.
    pub fn count_half_open(&self, lo: &T, hi: &T) -> usize {
        self.variations(lo) - self.variations(hi)
    }

    /// Number of distinct roots in `[lo, hi]`.
    pub fn count(&self, lo: &T, hi: &T) -> usize {
        let at_lo = usize::from(self.square_free.eval(lo).is_zero());
        at_lo + self.count_half_open(lo, hi)
    }

    /// One enclosure per distinct root in `[lo, hi]`, in increasing order.
    pub fn isolate(&self, lo: &T, hi: &T) -> Result<Vec<RootEnclosure<T>>> {
        if lo >= hi {
            return Err(Error::Precondition(format!(
                "isolation interval [{lo}, {hi}] is empty or degenerate"
            )));
        }
        let mut out = Vec::new();
        if self.square_free.eval(lo).is_zero() {
            out.push(RootEnclosure::exact(lo.clone()));
        }
        // explicit stack, right halves pushed first so output stays sorted
        let mut stack = vec![(lo.clone(), hi.clone(), self.count_half_open(lo, hi))];
        while let Some((a, b, n)) = stack.pop() {
            match n {
                0 => {}
                1 => out.push(self.single(a, b)),
                _ => {
                    let m = (a.clone() + b.clone()) / T::from_i64(2);
                    let left = self.count_half_open(&a, &m);
                    stack.push((m.clone(), b, n - left));
                    stack.push((a, m, left));
                }
            }
        }
        Ok(out)
    }

    /// Exactly one root in `(a, b]`.
    fn single(&self, mut a: T, mut b: T) -> RootEnclosure<T> {
        let p = &self.square_free;
        if p.eval(&b).is_zero() {
            return RootEnclosure::exact(b);
        }
        let two = T::from_i64(2);
        // a can only be a root when it is the outer lower bound; step away
        while p.eval(&a).is_zero() {
            let m = (a.clone() + b.clone()) / two.clone();
            if p.eval(&m).is_zero() {
                return RootEnclosure::exact(m);
            }
            if self.count_half_open(&a, &m) == 1 {
                b = m;
            } else {
                a = m;
            }
        }
        let enc = RootEnclosure { lo: a, hi: b };
        // narrow below 1/|lead| and test the single rational candidate
        let width = T::one() / self.lead.clone();
        let enc = self.bisect_below(enc, &width);
        if enc.is_exact() {
            return enc;
        }
        let scaled_lo = enc.lo.clone() * self.lead.clone();
        let candidate = T::from_int(scaled_lo.floor_int()) + T::one();
        if candidate < enc.hi.clone() * self.lead.clone() {
            let r = candidate / self.lead.clone();
            if p.eval(&r).is_zero() {
                return RootEnclosure::exact(r);
            }
        }
        enc
    }

    fn bisect_below(&self, mut enc: RootEnclosure<T>, width: &T) -> RootEnclosure<T> {
        let p = &self.square_free;
        let sign_lo = sign(&p.eval(&enc.lo));
        while !enc.is_exact() && enc.width() >= *width {
            let m = enc.midpoint();
            let s = sign(&p.eval(&m));
            if s == 0 {
                return RootEnclosure::exact(m);
            }
            if s == sign_lo {
                enc.lo = m;
            } else {
                enc.hi = m;
            }
        }
        enc
    }

    /// Shrinks an enclosure produced by [`RootIsolator::isolate`] until it
    /// is narrower than `width` (or exact).
    pub fn refine(&self, enc: &RootEnclosure<T>, width: &T) -> RootEnclosure<T> {
        if enc.is_exact() {
            return enc.clone();
        }
        self.bisect_below(enc.clone(), width)
    }
}

/// Isolates every distinct real root of `p` in `[lo, hi]`.
pub fn isolate_roots<T: ExactScalar>(
    p: &Polynomial<T>,
    lo: &T,
    hi: &T,
) -> Result<Vec<RootEnclosure<T>>> {
    RootIsolator::new(p)?.isolate(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rational;
    use crate::{Rational, RationalPolynomial};

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn poly(c: &[&str]) -> RationalPolynomial {
        Polynomial::new(c.iter().map(|s| q(s)).collect())
    }

    #[test]
    fn linear_root_is_exact() {
        let r = isolate_roots(&poly(&["1", "-4"]), &q("0"), &q("1")).unwrap();
        assert_eq!(r, vec![RootEnclosure::exact(q("1/4"))]);
    }

    #[test]
    fn quadratic_critical_point() {
        let r = isolate_roots(&poly(&["0", "2", "-9"]), &q("1/8"), &q("1/4")).unwrap();
        assert_eq!(r, vec![RootEnclosure::exact(q("2/9"))]);
    }

    #[test]
    fn no_real_roots() {
        let r = isolate_roots(&poly(&["1", "0", "1"]), &q("-10"), &q("10")).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(
            isolate_roots(&RationalPolynomial::zero(), &q("0"), &q("1")),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn irrational_roots_and_refinement() {
        let p = poly(&["-2", "0", "1"]);
        let iso = RootIsolator::new(&p).unwrap();
        let r = iso.isolate(&q("-2"), &q("2")).unwrap();
        assert_eq!(r.len(), 2);
        for enc in &r {
            assert!(!enc.is_exact());
            assert!(sign(&p.eval(&enc.lo)) * sign(&p.eval(&enc.hi)) < 0);
            let fine = iso.refine(enc, &q("1/1000000"));
            assert!(fine.width() < q("1/1000000"));
            assert!(fine.lo >= enc.lo && fine.hi <= enc.hi);
        }
        assert!(r[0].hi < r[1].lo);
    }

    #[test]
    fn endpoint_and_repeated_roots() {
        // x^2 (x - 1)^3 on [0, 1]: roots exactly at both endpoints
        let x = poly(&["0", "1"]);
        let xm1 = poly(&["-1", "1"]);
        let p = &(&(&x * &x) * &(&xm1 * &xm1)) * &xm1;
        let r = isolate_roots(&p, &q("0"), &q("1")).unwrap();
        assert_eq!(
            r,
            vec![RootEnclosure::exact(q("0")), RootEnclosure::exact(q("1"))]
        );
    }

    #[test]
    fn root_just_above_a_root_endpoint() {
        // roots 0 and 1/1000 (irrational companion avoided on purpose)
        let p = &poly(&["0", "1"]) * &poly(&["-1", "1000"]);
        let r = isolate_roots(&p, &q("0"), &q("1")).unwrap();
        assert_eq!(
            r,
            vec![RootEnclosure::exact(q("0")), RootEnclosure::exact(q("1/1000"))]
        );
    }

    #[test]
    fn rejects_empty_interval() {
        assert!(isolate_roots(&poly(&["1", "1"]), &q("1"), &q("1")).is_err());
    }
}
