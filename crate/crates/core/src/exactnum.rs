//! Exact arithmetic in Q and in the prime cyclotomic field Q(zeta_p).
//!
//! A [`CycNum`] stores an element of Q(zeta_p) as a vector of p-1 rational
//! coefficients with respect to the power basis 1, zeta, ..., zeta^{p-2}.
//! The relation 1 + zeta + ... + zeta^{p-1} = 0 is used to eliminate the
//! zeta^{p-1} coordinate, so the representation is unique and equality is a
//! plain coefficient comparison. All operations are exact; the complex
//! embedding exists only as a floating-point cross-check and never feeds a
//! decision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational num/den from machine integers.
pub fn rat_frac(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Trial-division primality test, restricted to odd primes.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn check_odd_prime(p: u64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{p} is not an odd prime")))
    }
}

/// Element of Q(zeta_p) in canonical power-basis form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycNum {
    prime: u64,
    coeffs: Vec<Rational>,
}

impl CycNum {
    /// Canonical representative of `sum_j raw[j] * zeta^j` (raw length <= p).
    ///
    /// Reduction subtracts the zeta^{p-1} coordinate from every coordinate,
    /// which is exactly the substitution zeta^{p-1} = -1 - zeta - ... - zeta^{p-2}.
    pub fn reduce(p: u64, raw: &[Rational]) -> Result<CycNum> {
        check_odd_prime(p)?;
        let n = p as usize;
        if raw.len() > n {
            return Err(Error::InvalidParameter(format!(
                "raw coefficient vector of length {} exceeds p = {p}",
                raw.len()
            )));
        }
        let mut full = vec![Rational::zero(); n];
        for (j, c) in raw.iter().enumerate() {
            full[j] = c.clone();
        }
        let last = full[n - 1].clone();
        let coeffs = full[..n - 1].iter().map(|c| c - &last).collect();
        Ok(CycNum { prime: p, coeffs })
    }

    pub fn zero(p: u64) -> Result<CycNum> {
        Self::from_rational(p, Rational::zero())
    }

    pub fn one(p: u64) -> Result<CycNum> {
        Self::from_rational(p, Rational::one())
    }

    pub fn from_rational(p: u64, q: Rational) -> Result<CycNum> {
        check_odd_prime(p)?;
        let mut coeffs = vec![Rational::zero(); p as usize - 1];
        coeffs[0] = q;
        Ok(CycNum { prime: p, coeffs })
    }

    pub fn from_int(p: u64, n: i64) -> Result<CycNum> {
        Self::from_rational(p, rat(n))
    }

    /// zeta^e for any integer exponent (taken mod p).
    pub fn root_of_unity(p: u64, e: i64) -> Result<CycNum> {
        check_odd_prime(p)?;
        let e = e.rem_euclid(p as i64) as usize;
        let mut raw = vec![Rational::zero(); e + 1];
        raw[e] = Rational::one();
        Self::reduce(p, &raw)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Canonical coefficients, length p-1.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same_field(&self, other: &CycNum) -> Result<()> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(Error::IncompatibleField(self.prime, other.prime))
        }
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum> {
        self.check_same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycNum { prime: self.prime, coeffs })
    }

    pub fn try_sub(&self, other: &CycNum) -> Result<CycNum> {
        self.check_same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycNum { prime: self.prime, coeffs })
    }

    pub fn negate(&self) -> CycNum {
        CycNum {
            prime: self.prime,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Exact product; convolution of exponents mod p followed by reduction.
    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum> {
        self.check_same_field(other)?;
        let p = self.prime as usize;
        let mut raw = vec![Rational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[(i + j) % p] += a * b;
            }
        }
        CycNum::reduce(self.prime, &raw)
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, s: &Rational) -> CycNum {
        CycNum {
            prime: self.prime,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiplication by zeta^e (an exponent shift).
    pub fn mul_root(&self, e: i64) -> CycNum {
        let p = self.prime as usize;
        let e = e.rem_euclid(self.prime as i64) as usize;
        let mut raw = vec![Rational::zero(); p];
        for (j, c) in self.coeffs.iter().enumerate() {
            raw[(j + e) % p] = c.clone();
        }
        CycNum::reduce(self.prime, &raw).expect("prime already validated")
    }

    /// Galois automorphism zeta -> zeta^k, for gcd(k, p) = 1.
    pub fn galois(&self, k: u64) -> Result<CycNum> {
        let p = self.prime;
        if k % p == 0 {
            return Err(Error::InvalidParameter(format!(
                "galois exponent {k} is not invertible mod {p}"
            )));
        }
        let mut raw = vec![Rational::zero(); p as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            let idx = ((j as u64) * (k % p)) % p;
            raw[idx as usize] += c;
        }
        CycNum::reduce(p, &raw)
    }

    /// Field trace Tr_{Q(zeta)/Q}, returned as a rational.
    ///
    /// Equals (p-1) c_0 - sum_{j >= 1} c_j since Tr(zeta^j) = -1 for j != 0.
    pub fn rational_trace(&self) -> Rational {
        let p = rat(self.prime as i64);
        let mut t = &self.coeffs[0] * (&p - rat(1));
        for c in &self.coeffs[1..] {
            t -= c;
        }
        t
    }

    /// Floating-point evaluation at zeta = exp(2 pi i / p).
    ///
    /// Cross-check only; the error stays below 1e-9 for coefficient
    /// magnitudes below 1e6 at desk-scale primes.
    pub fn embed_complex(&self) -> Complex64 {
        let p = self.prime as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            let x = c.to_f64().unwrap_or(f64::NAN);
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / p;
            acc += Complex64::new(theta.cos(), theta.sin()) * x;
        }
        acc
    }

    /// Number of nonzero canonical coefficients.
    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.try_add(rhs).expect("cyclotomic field mismatch")
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.try_sub(rhs).expect("cyclotomic field mismatch")
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.try_mul(rhs).expect("cyclotomic field mismatch")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.negate()
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if j == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "z^{j}")?;
            } else {
                write!(f, "{mag}*z^{j}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| rat(n)).collect()
    }

    #[test]
    fn rejects_bad_primes() {
        for p in [0, 1, 2, 4, 9, 15] {
            assert!(CycNum::reduce(p, &[]).is_err(), "p = {p} accepted");
        }
    }

    #[test]
    fn reduce_examples() {
        // 1 + zeta + zeta^2 = 0 at p = 3.
        let a = CycNum::reduce(3, &rv(&[1, 1, 1])).unwrap();
        assert!(a.is_zero());
        // zeta^2 = -1 - zeta.
        let b = CycNum::reduce(3, &rv(&[0, 0, 1])).unwrap();
        assert_eq!(b.coeffs(), &rv(&[-1, -1])[..]);
        // Already canonical at p = 5.
        let c = CycNum::reduce(5, &rv(&[2, 0, 0, 0, 0])).unwrap();
        assert_eq!(c.coeffs(), &rv(&[2, 0, 0, 0])[..]);
    }

    #[test]
    fn reduce_is_idempotent() {
        let a = CycNum::reduce(7, &rv(&[3, -1, 0, 4, 0, 0, 2])).unwrap();
        let again = CycNum::reduce(7, a.coeffs()).unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn multiply_examples() {
        let p = 3;
        // (1 + zeta)(1 + zeta^2) = 1.
        let a = CycNum::reduce(p, &rv(&[1, 1])).unwrap();
        let b = CycNum::reduce(p, &rv(&[1, 0, 1])).unwrap();
        assert_eq!(&a * &b, CycNum::one(p).unwrap());
        // (1 + 2 zeta)^2 = -3, the squared Gaussian sum.
        let g = CycNum::reduce(p, &rv(&[1, 2])).unwrap();
        assert_eq!(&g * &g, CycNum::from_int(p, -3).unwrap());
        // a * 1 = a.
        let one = CycNum::one(p).unwrap();
        assert_eq!(&g * &one, g);
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = CycNum::one(3).unwrap();
        let b = CycNum::one(5).unwrap();
        assert!(matches!(a.try_mul(&b), Err(Error::IncompatibleField(3, 5))));
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn galois_examples() {
        // p = 3, zeta -> zeta^2 sends 1 + 3 zeta to -2 - 3 zeta.
        let a = CycNum::reduce(3, &rv(&[1, 3])).unwrap();
        assert_eq!(a.galois(2).unwrap().coeffs(), &rv(&[-2, -3])[..]);
        assert_eq!(a.galois(1).unwrap(), a);
        assert!(a.galois(3).is_err());
        assert!(a.galois(0).is_err());
    }

    #[test]
    fn galois_composition() {
        let a = CycNum::reduce(7, &rv(&[2, -1, 5, 0, 0, 3])).unwrap();
        let lhs = a.galois(3).unwrap().galois(5).unwrap();
        let rhs = a.galois(3 * 5 % 7).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_examples() {
        let z = CycNum::root_of_unity(3, 1).unwrap();
        assert_eq!(z.rational_trace(), rat(-1));
        let a = CycNum::reduce(3, &rv(&[1, 3])).unwrap();
        assert_eq!(a.rational_trace(), rat(-1));
        let q = CycNum::from_rational(5, rat_frac(7, 2)).unwrap();
        assert_eq!(q.rational_trace(), rat(4) * rat_frac(7, 2));
    }

    #[test]
    fn trace_is_sum_of_conjugates() {
        let a = CycNum::reduce(11, &rv(&[4, 1, 0, -2, 7, 0, 0, 0, 3, 1])).unwrap();
        let mut s = CycNum::zero(11).unwrap();
        for k in 1..11 {
            s = &s + &a.galois(k).unwrap();
        }
        assert_eq!(s.to_rational().unwrap(), a.rational_trace());
    }

    #[test]
    fn embed_examples() {
        let vanishing = CycNum::reduce(3, &rv(&[1, 1, 1])).unwrap();
        assert!(vanishing.embed_complex().norm() < 1e-12);
        let g5 = CycNum::reduce(5, &rv(&[1, 2, 0, 0, 2])).unwrap();
        let v = g5.embed_complex();
        assert!((v.re - 5f64.sqrt()).abs() < 1e-9);
        assert!(v.im.abs() < 1e-9);
        let g3 = CycNum::reduce(3, &rv(&[1, 2])).unwrap();
        let w = g3.embed_complex();
        assert!(w.re.abs() < 1e-9);
        assert!((w.im - 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn mul_root_matches_multiplication() {
        let a = CycNum::reduce(7, &rv(&[1, 2, 3, 4, 5, 6])).unwrap();
        for e in 0..7 {
            let z = CycNum::root_of_unity(7, e).unwrap();
            assert_eq!(a.mul_root(e), &a * &z);
        }
    }
}
