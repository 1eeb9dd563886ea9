//! Exact rational helpers: parsing and printing `p/q` strings, integer
//! factorization, and prime-exponent vectors of positive rationals.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest numerator or denominator accepted in an input weight.
pub const MAX_WEIGHT_COMPONENT: u64 = 1 << 63;

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;
const RHO_ITERATION_BUDGET: u64 = 4_000_000;
const RHO_SEEDS: u64 = 8;

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses a positive rational written as `p/q` or `p`.
pub fn parse_positive_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let parse = |s: &str| -> Result<u64> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!(
                "`{text}` is not a rational of the form p/q"
            )));
        }
        let value: BigUint = s
            .parse()
            .map_err(|_| Error::Parse(format!("`{text}` is not a rational of the form p/q")))?;
        match value.to_u64() {
            Some(v) if v <= MAX_WEIGHT_COMPONENT => Ok(v),
            _ => Err(Error::Parse(format!(
                "`{text}` has a component larger than 2^63"
            ))),
        }
    };
    let (n, d) = (parse(num)?, parse(den)?);
    if n == 0 || d == 0 {
        return Err(Error::Parse(format!("`{text}` is not a positive rational")));
    }
    Ok(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Canonical `p/q` rendering (denominator always printed).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn pow(base: &BigRational, exp: i64) -> BigRational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), exp.unsigned_abs() as usize)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's variant of Pollard rho; `None` when the budget runs out.
fn rho_divisor(n: u64, seed: u64) -> Option<u64> {
    let c = seed;
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q) = (seed.wrapping_mul(0x9e37_79b9) % n, 1u64, 1u64);
    let (mut x, mut ys) = (y, y);
    let mut g = 1;
    let mut spent = 0u64;
    const BATCH: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += BATCH;
            spent += BATCH;
            if spent > RHO_ITERATION_BUDGET {
                return None;
            }
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn split_cofactor(n: u64, out: &mut BTreeMap<u64, u32>) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    if n < TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT || is_prime(n) {
        // Anything below limit^2 left after trial division is prime.
        *out.entry(n).or_default() += 1;
        return Ok(());
    }
    let divisor = (1..=RHO_SEEDS)
        .find_map(|seed| rho_divisor(n, seed))
        .ok_or_else(|| Error::WeightNotFactorable(n.to_string()))?;
    split_cofactor(divisor, out)?;
    split_cofactor(n / divisor, out)
}

/// Prime factorization: trial division up to 10^6, then Pollard rho.
pub fn factor_u64(mut n: u64) -> Result<BTreeMap<u64, u32>> {
    let mut out = BTreeMap::new();
    if n == 0 {
        return Err(Error::WeightNotFactorable("0".into()));
    }
    for p in std::iter::once(2).chain((3..TRIAL_DIVISION_LIMIT).step_by(2)) {
        if p * p > n {
            break;
        }
        while n.is_multiple_of(p) {
            *out.entry(p).or_default() += 1;
            n /= p;
        }
    }
    split_cofactor(n, &mut out)?;
    Ok(out)
}

fn big_to_u64(n: &BigInt) -> Result<u64> {
    n.to_u64()
        .ok_or_else(|| Error::WeightNotFactorable(n.to_string()))
}

/// Prime-exponent map of a positive rational (`p ↦ v_p(r)`, zero exponents
/// omitted). Numerator and denominator must fit in 64 bits.
pub fn factor_rational(r: &BigRational) -> Result<BTreeMap<u64, i64>> {
    if !r.is_positive() {
        return Err(Error::PreconditionViolated(format!(
            "{} is not a positive rational",
            format_rational(r)
        )));
    }
    let mut out: BTreeMap<u64, i64> = BTreeMap::new();
    for (p, e) in factor_u64(big_to_u64(r.numer())?)? {
        *out.entry(p).or_default() += e as i64;
    }
    for (p, e) in factor_u64(big_to_u64(r.denom())?)? {
        *out.entry(p).or_default() -= e as i64;
    }
    out.retain(|_, e| *e != 0);
    Ok(out)
}

/// Rebuilds `Π p_i^{e_i}`.
pub fn rational_from_exponents(primes: &[u64], exponents: &[BigInt]) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (p, e) in primes.iter().zip(exponents) {
        let k = e.abs().to_usize().expect("exponent fits in usize");
        let factor = num_traits::pow(BigInt::from(*p), k);
        if e.is_positive() {
            num *= factor;
        } else if !e.is_zero() {
            den *= factor;
        }
    }
    BigRational::new(num, den)
}

/// Divides out the given primes from `r`; returns their exponents, or `None`
/// when another prime remains.
pub fn exponents_over(r: &BigRational, primes: &[u64]) -> Option<Vec<BigInt>> {
    let mut num = r.numer().abs();
    let mut den = r.denom().clone();
    let mut exps = Vec::with_capacity(primes.len());
    for &p in primes {
        let p = BigInt::from(p);
        let mut e = 0i64;
        while !num.is_zero() && (&num % &p).is_zero() {
            num /= &p;
            e += 1;
        }
        while (&den % &p).is_zero() {
            den /= &p;
            e -= 1;
        }
        exps.push(BigInt::from(e));
    }
    (num.is_one() && den.is_one()).then_some(exps)
}

/// Renders `x` with 15 significant digits in plain decimal notation.
pub fn format_sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-6..=15).contains(&magnitude) {
        return format!("{:.14e}", x);
    }
    let decimals = (14 - magnitude).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_formats() {
        assert_eq!(parse_positive_rational("6/1").unwrap(), int(6));
        assert_eq!(parse_positive_rational("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_positive_rational("7").unwrap(), int(7));
        assert_eq!(format_rational(&ratio(1, 3)), "1/3");
        assert_eq!(format_rational(&int(2)), "2/1");
        for bad in ["0/1", "1/0", "-1/2", "a/b", "", "1/2/3", "1.5"] {
            assert!(parse_positive_rational(bad).is_err(), "{bad}");
        }
        assert!(parse_positive_rational("9223372036854775808/1").is_ok());
        assert!(parse_positive_rational("9223372036854775809/1").is_err());
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(1_000_000_007));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn factors_large_semiprimes() {
        // Both factors are above the trial-division limit.
        let (p, q) = (1_000_003u64, 2_147_483_647u64);
        let f = factor_u64(p * q).unwrap();
        assert_eq!(f.into_iter().collect::<Vec<_>>(), vec![(p, 1), (q, 1)]);
        let f = factor_u64(1 << 63).unwrap();
        assert_eq!(f.into_iter().collect::<Vec<_>>(), vec![(2, 63)]);
        let f = factor_u64(2 * 3 * 3 * 1_000_003 * 1_000_033).unwrap();
        assert_eq!(f[&3], 2);
        assert_eq!(f[&1_000_033], 1);
    }

    #[test]
    fn rational_exponents_round_trip() {
        let r = ratio(12, 35);
        let f = factor_rational(&r).unwrap();
        assert_eq!(
            f.into_iter().collect::<Vec<_>>(),
            vec![(2, 2), (3, 1), (5, -1), (7, -1)]
        );
        let primes = [2, 3, 5, 7];
        let exps = exponents_over(&r, &primes).unwrap();
        assert_eq!(rational_from_exponents(&primes, &exps), r);
        assert!(exponents_over(&ratio(11, 2), &primes).is_none());
    }

    #[test]
    fn sig15() {
        assert_eq!(format_sig15(6f64.sqrt()), "2.44948974278318");
        assert_eq!(format_sig15(0.0), "0");
        assert_eq!(format_sig15(3.0), "3");
        assert_eq!(format_sig15(-0.5), "-0.5");
    }
}
