//! Sign determination for tower elements.
//!
//! Exact zero is decided by the normal form. For nonzero sums of radical
//! monomials the sign is certified numerically: each `sqrt(p)` is enclosed in
//! a rational interval of width shrinking below 1e-30 until the enclosure of
//! the sum excludes zero. Elements containing function symbols only get a
//! sign when it follows from the declared positivity flags.

use super::{FieldSpec, Monomial, Rat, Scalar};
use num::bigint::BigInt;
use num::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Zero,
    Positive,
    Negative,
    /// Could not be certified in the tower (symbolic or imaginary content).
    Unknown,
}

impl Scalar {
    /// Certified sign; `Unknown` never co-occurs with an actually-zero value.
    pub fn sign(&self, field: &FieldSpec) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        if self.terms.keys().any(|m| m.imag) {
            return Sign::Unknown;
        }
        if self.terms.keys().any(|m| !m.syms.is_empty()) {
            // A single term of declared-positive symbols has the sign of its
            // rational coefficient; anything symbolic beyond that is Unknown.
            if self.terms.len() == 1 {
                let (m, c) = self.terms.iter().next().unwrap();
                let all_positive = m
                    .syms
                    .keys()
                    .all(|&(s, _)| field.symbols[s].positive);
                if all_positive {
                    return if c.is_positive() {
                        Sign::Positive
                    } else {
                        Sign::Negative
                    };
                }
            }
            return Sign::Unknown;
        }
        // Pure radical sum: interval refinement. Start at 1e-30 and sharpen.
        let mut digits: u32 = 30;
        for _ in 0..4 {
            let (lo, hi) = interval(self, digits);
            if lo.is_positive() {
                return Sign::Positive;
            }
            if hi.is_negative() {
                return Sign::Negative;
            }
            digits *= 2;
        }
        Sign::Unknown
    }

    /// `true` only when positivity is certified.
    pub fn is_certified_positive(&self, field: &FieldSpec) -> bool {
        self.sign(field) == Sign::Positive
    }
}

/// Rational enclosure of a radical sum with per-radical width 10^-digits.
fn interval(x: &Scalar, digits: u32) -> (Rat, Rat) {
    let mut lo = Rat::zero();
    let mut hi = Rat::zero();
    for (m, c) in &x.terms {
        let (mlo, mhi) = monomial_interval(m, digits);
        let (tlo, thi) = if c.is_positive() {
            (c * &mlo, c * &mhi)
        } else {
            (c * &mhi, c * &mlo)
        };
        lo += tlo;
        hi += thi;
    }
    (lo, hi)
}

fn monomial_interval(m: &Monomial, digits: u32) -> (Rat, Rat) {
    let mut lo = Rat::one();
    let mut hi = Rat::one();
    for p in &m.primes {
        let (plo, phi) = sqrt_interval(*p, digits);
        // all factors positive
        lo *= plo;
        hi *= phi;
    }
    (lo, hi)
}

/// `[lo, hi]` with `lo <= sqrt(p) <= hi` and `hi - lo <= 10^-digits`.
fn sqrt_interval(p: u64, digits: u32) -> (Rat, Rat) {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = BigInt::from(p) * &scale * &scale;
    let root = scaled.sqrt(); // floor square root
    let lo = Rat::new(root.clone(), scale.clone());
    let hi = Rat::new(root + BigInt::one(), scale);
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, sqrt_of_rat};

    #[test]
    fn signs_of_radical_sums() {
        let f = FieldSpec::rational();
        let s2 = sqrt_of_rat(&int(2)).unwrap();
        // 1.4142... - 1.4 > 0
        let x = s2.sub(&Scalar::from_rat(rat(7, 5)));
        assert_eq!(x.sign(&f), Sign::Positive);
        // 1.4142... - 1.5 < 0
        let y = s2.sub(&Scalar::from_rat(rat(3, 2)));
        assert_eq!(y.sign(&f), Sign::Negative);
        // exact zero
        assert_eq!(s2.sub(&s2).sign(&f), Sign::Zero);
        // a close call: sqrt(2) - 665857/470832 (a continued-fraction
        // convergent, off by ~1.6e-12) still gets certified
        let conv = Scalar::from_rat(rat(665_857, 470_832));
        assert_eq!(s2.sub(&conv).sign(&f), Sign::Negative);
    }

    #[test]
    fn imaginary_content_is_unknown() {
        let f = FieldSpec::rational();
        assert_eq!(Scalar::i().sign(&f), Sign::Unknown);
    }
}
