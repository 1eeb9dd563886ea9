//! Free-dimension bookkeeping for interpolated free group factors.
//!
//! These are the closed-form identities used when checking that a diffuse
//! corner is large enough to be freely complemented.

use num_rational::BigRational;
use num_traits::One;

/// Free dimension of `L(F_t)` amplified by a projection of trace `gamma`:
/// `1 + (t - 1)/gamma²`. Requires `t ≥ 1`.
pub fn amplify(t: &BigRational, gamma: &BigRational) -> BigRational {
    debug_assert!(*t >= BigRational::one());
    BigRational::one() + (t - BigRational::one()) / (gamma * gamma)
}

/// Which free-product decomposition the unknown algebra `B` sits in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplementShape {
    /// `L(F_t) ⊕ ℂ = (ℂ_a ⊕ ℂ_{b+c}) * (B_b ⊕ ℂ_{a+c})` with `c = 1 - a - b`:
    /// `t_B = (t(a+b)² - 4ab)/b²`.
    ThreeBlock,
    /// `L(F_t) = (ℂ_a ⊕ ℂ_b) * (B_b ⊕ ℂ_a)` with `a + b = 1`:
    /// `t_B = (t + 2(a² + b² - 1))/b²`.
    TwoBlock,
}

/// Free dimension `t_B` that `B` must have for the decomposition to hold.
pub fn complement_free_dimension(
    shape: ComplementShape,
    t: &BigRational,
    a: &BigRational,
    b: &BigRational,
) -> BigRational {
    let two = BigRational::from_integer(2.into());
    match shape {
        ComplementShape::ThreeBlock => {
            let s = a + b;
            (t * &s * &s - BigRational::from_integer(4.into()) * a * b) / (b * b)
        }
        ComplementShape::TwoBlock => (t + two * (a * a + b * b - BigRational::one())) / (b * b),
    }
}

/// Free dimension `2 - (b - a)²/b²` of the smallest corner in the
/// three-block case.
pub fn minimal_corner_free_dimension(a: &BigRational, b: &BigRational) -> BigRational {
    let d = b - a;
    BigRational::one() + (BigRational::one() - &d * &d / (b * b))
}
