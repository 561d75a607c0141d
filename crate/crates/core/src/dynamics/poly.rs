//! Dense integer polynomials and exact real-root isolation.
//!
//! Isolation uses Descartes' rule of signs with dyadic bisection (the
//! Vincent–Collins–Akritas scheme): every node of the search is an open dyadic
//! interval together with an integer polynomial whose roots in `(0, 1)`
//! correspond to the roots of the input inside that interval. All arithmetic is
//! exact, so an interval reported as isolating contains exactly one root.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::DynamicsError;

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                match other.coeffs.get(i) {
                    Some(b) => a - b,
                    None => a,
                }
            })
            .collect();
        IntPoly::new(out)
    }

    pub fn scale(&self, factor: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Floating-point Horner evaluation.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// Sign of `p(num / 2^exp)`, computed exactly.
    pub fn sign_at(&self, point: &Dyadic) -> Ordering {
        let Some(d) = self.degree() else {
            return Ordering::Equal;
        };
        // 2^(exp*d) * p(num/2^exp) = sum c_i num^i 2^(exp*(d-i))
        let e = point.exp as usize;
        let mut acc = self.coeffs[d].clone();
        for i in (0..d).rev() {
            acc *= &point.num;
            if !self.coeffs[i].is_zero() {
                acc += &self.coeffs[i] << (e * (d - i));
            }
        }
        acc.sign_ordering()
    }

    fn variations(coeffs: &[BigInt]) -> usize {
        let mut last = Sign::NoSign;
        let mut count = 0;
        for c in coeffs {
            let s = c.sign();
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        match self.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

/// Exact binary fraction `num / 2^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    pub num: BigInt,
    pub exp: u32,
}

impl Dyadic {
    /// `num * 2^(-exp)` for any sign of `exp`.
    pub fn new(num: BigInt, exp: i64) -> Self {
        if exp < 0 {
            Dyadic {
                num: num << ((-exp) as usize),
                exp: 0,
            }
            .normalized()
        } else {
            Dyadic {
                num,
                exp: exp as u32,
            }
            .normalized()
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0).min(self.exp as u64) as u32;
        if tz > 0 {
            self.num >>= tz as usize;
            self.exp -= tz;
        }
        self
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }

    pub fn midpoint(&self, other: &Dyadic) -> Dyadic {
        let e = self.exp.max(other.exp);
        let a = &self.num << (e - self.exp) as usize;
        let b = &other.num << (e - other.exp) as usize;
        Dyadic::new(a + b, e as i64 + 1)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.exp as usize)
    }

    /// Nearest double (ties resolved by the bigint conversion).
    pub fn to_f64(&self) -> f64 {
        let bits = self.num.bits();
        if bits <= 1000 {
            self.num.to_f64().unwrap_or(f64::NAN) * pow2(-(self.exp as i32))
        } else {
            let shift = bits - 900;
            let top = (&self.num >> shift as usize).to_f64().unwrap_or(f64::NAN);
            top * pow2(shift as i32 - self.exp as i32)
        }
    }

    /// Largest double `<=` this value.
    pub fn to_f64_down(&self) -> f64 {
        let mut x = self.to_f64();
        let exact = self.to_rational();
        while BigRational::from_float(x).is_some_and(|r| r > exact) {
            x = x.next_down();
        }
        x
    }

    /// Smallest double `>=` this value.
    pub fn to_f64_up(&self) -> f64 {
        let mut x = self.to_f64();
        let exact = self.to_rational();
        while BigRational::from_float(x).is_some_and(|r| r < exact) {
            x = x.next_up();
        }
        x
    }
}

fn pow2(e: i32) -> f64 {
    if (-1022..=1023).contains(&e) {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else {
        2f64.powi(e)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

/// A real root certified by exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealRoot {
    /// The root is this dyadic rational.
    Exact(Dyadic),
    /// The open interval `(lo, hi)` contains exactly one root.
    Isolated { lo: Dyadic, hi: Dyadic },
}

impl RealRoot {
    pub fn approx(&self) -> f64 {
        match self {
            RealRoot::Exact(x) => x.to_f64(),
            RealRoot::Isolated { lo, hi } => lo.midpoint(hi).to_f64(),
        }
    }

    fn neg(&self) -> RealRoot {
        match self {
            RealRoot::Exact(x) => RealRoot::Exact(x.neg()),
            RealRoot::Isolated { lo, hi } => RealRoot::Isolated {
                lo: hi.neg(),
                hi: lo.neg(),
            },
        }
    }

    /// Closed interval bounds as rationals.
    pub fn bounds(&self) -> (BigRational, BigRational) {
        match self {
            RealRoot::Exact(x) => (x.to_rational(), x.to_rational()),
            RealRoot::Isolated { lo, hi } => (lo.to_rational(), hi.to_rational()),
        }
    }
}

/// Taylor shift `q(x) -> q(x + 1)` in place.
fn taylor_shift_one(c: &mut [BigInt]) {
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let (lo, hi) = c.split_at_mut(j + 1);
            lo[j] += &hi[0];
        }
    }
}

/// Descartes bound on the number of roots in `(0, 1)`.
fn unit_interval_variations(q: &[BigInt]) -> usize {
    let mut r: Vec<BigInt> = q.iter().rev().cloned().collect();
    taylor_shift_one(&mut r);
    IntPoly::variations(&r)
}

/// Strip a common power of two from the coefficients.
fn strip_twos(c: &mut [BigInt]) {
    let tz = c
        .iter()
        .filter(|x| !x.is_zero())
        .filter_map(|x| x.trailing_zeros())
        .min()
        .unwrap_or(0);
    if tz > 0 {
        for x in c.iter_mut() {
            *x >>= tz as usize;
        }
    }
}

/// Exponent `e` with every root of modulus below `2^e`.
///
/// Fujiwara's bound `|z| <= 2 max_i |c_{d-i}/c_d|^(1/i)`, with each ratio
/// over-estimated by a power of two read off the bit lengths.
fn root_bound_exponent(coeffs: &[BigInt]) -> i64 {
    let d = coeffs.len() - 1;
    let lead_bits = coeffs[d].bits() as i64;
    let mut best = i64::MIN;
    for i in 1..=d {
        let c = &coeffs[d - i];
        if c.is_zero() {
            continue;
        }
        // |c/c_d| < 2^(bits(c) - bits(c_d) + 1)
        let e = c.bits() as i64 - lead_bits + 1;
        best = best.max(e.div_euclid(i as i64) + i64::from(e.rem_euclid(i as i64) != 0));
    }
    (best + 1).max(1)
}

/// Bisection depth after which isolation gives up; reached only for
/// polynomials with repeated roots.
const MAX_ISOLATION_DEPTH: u32 = 4096;

/// Isolate the roots of a square-free polynomial lying in `(0, ∞)`.
fn isolate_positive(p: &IntPoly) -> Result<Vec<RealRoot>, DynamicsError> {
    let Some(d) = p.degree() else {
        return Err(DynamicsError::Isolation("zero polynomial".into()));
    };
    if d == 0 {
        return Ok(Vec::new());
    }
    // strip x^m factors: roots at 0 are not positive
    let lowest = p.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let coeffs = &p.coeffs[lowest..];
    let d = coeffs.len() - 1;
    if d == 0 {
        return Ok(Vec::new());
    }

    let bound_exp = root_bound_exponent(coeffs);

    // q(x) = p(2^bound_exp * x) has its positive roots in (0, 1).
    let mut root_poly: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c << (bound_exp as usize * i))
        .collect();
    strip_twos(&mut root_poly);

    let mut out = Vec::new();
    // (poly, c, j): the node covers (c/2^j, (c+1)/2^j) in scaled coordinates
    let mut stack = vec![(root_poly, BigInt::zero(), 0u32)];
    while let Some((q, c, j)) = stack.pop() {
        if j > MAX_ISOLATION_DEPTH {
            return Err(DynamicsError::Isolation(
                "bisection depth exceeded; polynomial is not square-free".into(),
            ));
        }
        let vars = unit_interval_variations(&q);
        if vars == 0 {
            continue;
        }
        let to_actual = |num: BigInt, level: u32| Dyadic::new(num, level as i64 - bound_exp);
        if vars == 1 {
            out.push(RealRoot::Isolated {
                lo: to_actual(c.clone(), j),
                hi: to_actual(&c + 1, j),
            });
            continue;
        }
        let deg = q.len() - 1;
        // left half: 2^deg q(x/2)
        let mut left: Vec<BigInt> = q.iter().enumerate().map(|(i, a)| a << (deg - i)).collect();
        strip_twos(&mut left);
        // right half: left(x + 1)
        let mut right = left.clone();
        taylor_shift_one(&mut right);
        let c2 = &c << 1;
        if right[0].is_zero() {
            out.push(RealRoot::Exact(to_actual(&c2 + 1, j + 1)));
            right.remove(0);
        }
        strip_twos(&mut right);
        stack.push((right, &c2 + 1, j + 1));
        stack.push((left, c2, j + 1));
    }
    Ok(out)
}

/// Isolate every real root of a square-free integer polynomial.
///
/// Returned roots are sorted and their intervals pairwise disjoint.
pub fn isolate_real_roots(p: &IntPoly) -> Result<Vec<RealRoot>, DynamicsError> {
    if p.is_zero() {
        return Err(DynamicsError::Isolation("zero polynomial".into()));
    }
    let mut roots = isolate_positive(p)?;
    if p.coeffs[0].is_zero() {
        roots.push(RealRoot::Exact(Dyadic::zero()));
    }
    let reflected = p.reflect();
    let negative: Vec<RealRoot> = if reflected == *p {
        roots
            .iter()
            .filter(|r| !matches!(r, RealRoot::Exact(x) if x.num.is_zero()))
            .map(RealRoot::neg)
            .collect()
    } else {
        isolate_positive(&reflected)?
            .iter()
            .map(RealRoot::neg)
            .collect()
    };
    roots.extend(negative);
    roots.sort_by(|x, y| {
        let (a, _) = x.bounds();
        let (b, _) = y.bounds();
        a.cmp(&b)
    });
    Ok(roots)
}

/// Shrink an isolating interval by bisection, `steps` times.
///
/// Returns an exact root if a bisection point happens to be one.
pub fn refine_root(p: &IntPoly, root: &RealRoot, steps: u32) -> RealRoot {
    let RealRoot::Isolated { lo, hi } = root else {
        return root.clone();
    };
    let dp = p.derivative();
    // sign just inside each end (the ends may themselves be other roots)
    let mut s_lo = match p.sign_at(lo) {
        Ordering::Equal => dp.sign_at(lo),
        s => s,
    };
    let s_hi = match p.sign_at(hi) {
        Ordering::Equal => dp.sign_at(hi).reverse(),
        s => s,
    };
    debug_assert_ne!(s_lo, s_hi);
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    for _ in 0..steps {
        let mid = lo.midpoint(&hi);
        let s = p.sign_at(&mid);
        if s == Ordering::Equal {
            return RealRoot::Exact(mid);
        }
        if s == s_lo {
            lo = mid;
            s_lo = s;
        } else {
            hi = mid;
        }
    }
    RealRoot::Isolated { lo, hi }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn refined(p: &IntPoly) -> Vec<f64> {
        isolate_real_roots(p)
            .unwrap()
            .iter()
            .map(|r| refine_root(p, r, 60).approx())
            .collect()
    }

    #[test]
    fn arithmetic() {
        let p = IntPoly::from_i64(&[-1, 0, 1]);
        let q = IntPoly::from_i64(&[0, 2]);
        assert_eq!(
            p.mul(&p).sub(&q.mul(&q)),
            IntPoly::from_i64(&[1, 0, -6, 0, 1])
        );
        assert_eq!(
            p.mul(&q).scale(&BigInt::from(2)),
            IntPoly::from_i64(&[0, -4, 0, 4])
        );
        assert_eq!(p.sub(&p), IntPoly::zero());
        assert_eq!(p.degree(), Some(2));
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(p.derivative(), q);
    }

    #[test]
    fn dyadic_conversions() {
        let d = Dyadic::new(BigInt::from(3), 2);
        assert_eq!(d.to_f64(), 0.75);
        assert_eq!(Dyadic::new(BigInt::from(6), 3), d);
        assert_eq!(Dyadic::new(BigInt::from(3), -2).to_f64(), 12.0);
        let third = Dyadic::new((BigInt::one() << 200usize) / 3, 200);
        assert!(third.to_f64_down() <= third.to_f64_up());
        let exact = third.to_rational();
        assert!(BigRational::from_float(third.to_f64_down()).unwrap() <= exact);
        assert!(BigRational::from_float(third.to_f64_up()).unwrap() >= exact);
    }

    #[test]
    fn sign_at_dyadic_points() {
        let p = IntPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(p.sign_at(&Dyadic::new(BigInt::from(1), 0)), Ordering::Equal);
        assert_eq!(p.sign_at(&Dyadic::new(BigInt::from(1), 1)), Ordering::Less);
        assert_eq!(
            p.sign_at(&Dyadic::new(BigInt::from(-3), 1)),
            Ordering::Greater
        );
    }

    #[test]
    fn isolates_plus_minus_one() {
        let p = IntPoly::from_i64(&[-1, 0, 1]);
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots
            .iter()
            .all(|r| matches!(refine_root(&p, r, 60), RealRoot::Exact(_))));
        assert_eq!(refined(&p), vec![-1.0, 1.0]);
    }

    #[test]
    fn isolates_irrational_roots() {
        // x^4 - 6x^2 + 1 = 0  <=>  x = ±1 ± √2
        let p = IntPoly::from_i64(&[1, 0, -6, 0, 1]);
        let s2 = std::f64::consts::SQRT_2;
        let want = [-1.0 - s2, 1.0 - s2, s2 - 1.0, 1.0 + s2];
        for (got, want) in refined(&p).iter().zip(want) {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
        }
    }

    #[test]
    fn non_even_polynomial() {
        // (x - 3)(x + 1/2)(x - 1/4) * 8 = 8x^3 - 22x^2 - 7x + 3
        let p = IntPoly::from_i64(&[3, -7, -22, 8]);
        assert_eq!(refined(&p), vec![-0.5, 0.25, 3.0]);
    }

    #[test]
    fn root_at_zero_and_no_real_roots() {
        assert_eq!(refined(&IntPoly::x()), vec![0.0]);
        let roots = isolate_real_roots(&IntPoly::from_i64(&[1, 0, 1])).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn repeated_root_is_reported() {
        let p = IntPoly::from_i64(&[2, 0, -3, 0, 1]); // (x^2-1)(x^2-2)
        assert_eq!(isolate_real_roots(&p).unwrap().len(), 4);
        let sq = IntPoly::from_i64(&[-2, 0, 1]);
        let r = isolate_real_roots(&sq.mul(&sq));
        assert!(matches!(r, Err(DynamicsError::Isolation(_))));
    }

    #[test]
    fn refine_handles_root_on_interval_end() {
        // roots 0.5 and 0.75; (0.5, 1) isolates 0.75 with a root on its left end
        let p = IntPoly::from_i64(&[3, -10, 8]);
        let r = RealRoot::Isolated {
            lo: Dyadic::new(BigInt::from(1), 1),
            hi: Dyadic::new(BigInt::from(7), 3),
        };
        match refine_root(&p, &r, 10) {
            RealRoot::Exact(x) => assert_eq!(x.to_f64(), 0.75),
            RealRoot::Isolated { lo, hi } => {
                assert!(lo.to_f64() <= 0.75 && 0.75 <= hi.to_f64());
            }
        }
    }
}
