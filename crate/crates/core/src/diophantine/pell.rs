use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::poly::CommPoly;

/// The variable Pell pairs are written in.
pub const PELL_VAR: &str = "T";

/// `(T + R)ⁿ = X + R·Y` with `R² = T² − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellPair {
    pub n: u32,
    pub x: CommPoly,
    pub y: CommPoly,
}

/// Runs the two-term recurrence `n` times from `(1, 0)`.
pub fn pell_pair(n: u32) -> PellPair {
    let t = CommPoly::var(PELL_VAR);
    let disc = &t.pow(2) - &CommPoly::one();
    let (mut x, mut y) = (CommPoly::one(), CommPoly::zero());
    for _ in 0..n {
        let next_x = &(&t * &x) + &(&disc * &y);
        let next_y = &x + &(&t * &y);
        x = next_x;
        y = next_y;
    }
    PellPair { n, x, y }
}

/// Signed member of the solution family: `X₋ₙ = Xₙ`, `Y₋ₙ = −Yₙ`.
pub fn pell_pair_signed(n: i64) -> (CommPoly, CommPoly) {
    let p = pell_pair(n.unsigned_abs() as u32);
    if n < 0 {
        (p.x, -&p.y)
    } else {
        (p.x, p.y)
    }
}

/// `Y = Σₖ C(n, 2k+1) (T² − 1)ᵏ T^(n−1−2k)`, evaluated term by term.
pub fn pell_closed_form(n: u32) -> CommPoly {
    assert!(n >= 1, "closed form needs n >= 1");
    let t = CommPoly::var(PELL_VAR);
    let disc = &t.pow(2) - &CommPoly::one();
    let mut y = CommPoly::zero();
    for k in 0..=n / 2 {
        if 2 * k + 1 > n {
            break;
        }
        let c = binomial(BigInt::from(n), BigInt::from(2 * k + 1));
        let term = &disc.pow(k) * &t.pow(n - 1 - 2 * k);
        y = &y + &term.scale(&BigRational::from_integer(c));
    }
    y
}
