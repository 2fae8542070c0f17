//! Scalars relating fibre integrals to higher-degree Chern and residue Chern forms.

use std::fmt;
use std::str::FromStr;

use series_core::{int, Scalar};

use crate::error::{Result, VerifyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(VerifyError::Domain(format!("parity must be even or odd, got '{s}'"))),
        }
    }
}

fn double_factorial(n: i64) -> i64 {
    (1..=n).rev().step_by(2).product()
}

/// Even n: (−1)ʲ j! / (2π√−1)^{n/2}.
/// Odd n: (−1)ʲ (2j−1)!! / ((2π√−1)^{(n+1)/2} 2^{j−1}).
pub fn residue_scale(n: u32, j: u32, parity: Parity) -> Result<Scalar> {
    let actual = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
    if actual != parity {
        return Err(VerifyError::Domain(format!("fibre dimension {n} is not {parity}")));
    }
    let sign = if j % 2 == 0 { 1 } else { -1 };
    let (num, power, two) = match parity {
        Parity::Even => ((1..=j as i64).product::<i64>(), n / 2, 1i64),
        Parity::Odd => {
            if j == 0 {
                return Err(VerifyError::Domain("odd residue forms need j >= 1".into()));
            }
            (double_factorial(2 * j as i64 - 1), (n + 1) / 2, 1i64 << (j - 1))
        }
    };
    let denom = Scalar::two_pi_i().pow(power).scale(&int(two));
    let inv = denom.inverse().expect("monomial");
    Ok(inv.scale(&int(sign * num)))
}
