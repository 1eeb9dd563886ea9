//! Exact scalars of the form `Σ q_d·√d` with `d` squarefree.
//!
//! Every moment in this crate is a sum of products of square roots of edge
//! weights, so it lives in this ring. Keys are kept squarefree and
//! coefficients nonzero, which makes structural equality the same as
//! numerical equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::Result;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SurdScalar {
    terms: BTreeMap<BigUint, BigRational>,
}

impl SurdScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut s = Self::zero();
        s.add_term(BigUint::one(), q);
        s
    }

    /// `coeff·√radicand`; `radicand` must be squarefree.
    pub fn monomial(coeff: BigRational, radicand: BigUint) -> Self {
        debug_assert!(!radicand.is_zero());
        let mut s = Self::zero();
        s.add_term(radicand, coeff);
        s
    }

    /// Exact square root of a positive rational whose numerator and
    /// denominator fit in 64 bits.
    pub fn sqrt_of(r: &BigRational) -> Result<Self> {
        let exps = arith::factor_rational(r)?;
        Ok(Self::sqrt_from_exponents(
            exps.iter().map(|(&p, &e)| (p, e)),
        ))
    }

    /// Square root of `Π p^e` given its prime-exponent map.
    pub fn sqrt_from_exponents(exps: impl IntoIterator<Item = (u64, i64)>) -> Self {
        // √(Π p^e) = Π p^{⌊e/2⌋} · √(Π_{e odd} p), with negative exponents
        // rationalized: p^{-(2k+1)/2} = p^{-(k+1)}·√p.
        let mut coeff = BigRational::one();
        let mut radicand = BigUint::one();
        for (p, e) in exps {
            let (half, odd) = e.div_mod_floor(&2);
            coeff *= arith::pow(&BigRational::from_integer(BigInt::from(p)), half);
            if odd == 1 {
                radicand *= BigUint::from(p);
            }
        }
        Self::monomial(coeff, radicand)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigRational)> {
        self.terms.iter()
    }

    /// The rational value when no irrational part is present.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(d, c)| (d.clone(), c * q)).collect(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, c)| arith::to_f64(c) * d.to_f64().unwrap_or(f64::NAN).sqrt())
            .sum()
    }

    fn add_term(&mut self, radicand: BigUint, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(radicand).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }
}

impl From<BigRational> for SurdScalar {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl AddAssign<&SurdScalar> for SurdScalar {
    fn add_assign(&mut self, rhs: &SurdScalar) {
        for (d, c) in &rhs.terms {
            self.add_term(d.clone(), c.clone());
        }
    }
}

impl Add for &SurdScalar {
    type Output = SurdScalar;
    fn add(self, rhs: &SurdScalar) -> SurdScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for SurdScalar {
    type Output = SurdScalar;
    fn add(mut self, rhs: SurdScalar) -> SurdScalar {
        self += &rhs;
        self
    }
}

impl Neg for &SurdScalar {
    type Output = SurdScalar;
    fn neg(self) -> SurdScalar {
        SurdScalar {
            terms: self.terms.iter().map(|(d, c)| (d.clone(), -c)).collect(),
        }
    }
}

impl Sub for &SurdScalar {
    type Output = SurdScalar;
    fn sub(self, rhs: &SurdScalar) -> SurdScalar {
        self + &(-rhs)
    }
}

impl Mul for &SurdScalar {
    type Output = SurdScalar;
    fn mul(self, rhs: &SurdScalar) -> SurdScalar {
        let mut out = SurdScalar::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                // √d1·√d2 = g·√(d1/g · d2/g) with g = gcd(d1, d2); the
                // cofactors are coprime and squarefree.
                let g = d1.gcd(d2);
                let radicand = (d1 / &g) * (d2 / &g);
                let coeff = c1 * c2 * BigRational::from_integer(BigInt::from(g));
                out.add_term(radicand, coeff);
            }
        }
        out
    }
}

impl Mul for SurdScalar {
    type Output = SurdScalar;
    fn mul(self, rhs: SurdScalar) -> SurdScalar {
        &self * &rhs
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical rendering, e.g. `2*sqrt(3)` or `1/2 + 3*sqrt(2)`.
impl fmt::Display for SurdScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            if d.is_one() {
                f.write_str(&fmt_coeff(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "sqrt({d})")?;
            } else {
                write!(f, "{}*sqrt({d})", fmt_coeff(&magnitude))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};
    use proptest::prelude::*;

    fn root(n: i64, d: i64) -> SurdScalar {
        SurdScalar::sqrt_of(&ratio(n, d)).unwrap()
    }

    #[test]
    fn square_roots_are_canonical() {
        assert_eq!(root(6, 1).to_string(), "sqrt(6)");
        assert_eq!(root(12, 1).to_string(), "2*sqrt(3)");
        assert_eq!(root(1, 3).to_string(), "1/3*sqrt(3)");
        assert_eq!(root(4, 9).to_string(), "2/3");
        assert_eq!(root(1, 1), SurdScalar::one());
    }

    #[test]
    fn products_merge_radicands() {
        assert_eq!(&root(2, 1) * &root(3, 1), root(6, 1));
        assert_eq!(&root(6, 1) * &root(6, 1), SurdScalar::from(int(6)));
        assert_eq!(
            &root(6, 1) * &root(10, 1),
            SurdScalar::from(int(2)) * root(15, 1)
        );
        // 6·√(1/3) = 2√3
        assert_eq!(root(1, 3).scale(&int(6)).to_string(), "2*sqrt(3)");
    }

    #[test]
    fn display_mixed() {
        let x = SurdScalar::from(ratio(1, 2)) + root(18, 1);
        assert_eq!(x.to_string(), "1/2 + 3*sqrt(2)");
        let y = &SurdScalar::zero() - &x;
        assert_eq!(y.to_string(), "-1/2 - 3*sqrt(2)");
        assert_eq!((&x - &x).to_string(), "0");
        assert!((&x - &x).is_zero());
    }

    fn small_surd() -> impl Strategy<Value = SurdScalar> {
        proptest::collection::vec((-5i64..=5, 1i64..=4, 1u64..=30), 0..4).prop_map(|terms| {
            terms
                .into_iter()
                .fold(SurdScalar::zero(), |acc, (n, d, r)| {
                    acc + root(r as i64, 1).scale(&ratio(n, d))
                })
        })
    }

    proptest! {
        #[test]
        fn ring_laws_hold_exactly(a in small_surd(), b in small_surd(), c in small_surd()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            let f = (&a * &b).to_f64();
            prop_assert!((f - a.to_f64() * b.to_f64()).abs() <= 1e-9 * (1.0 + f.abs()));
        }
    }
}
