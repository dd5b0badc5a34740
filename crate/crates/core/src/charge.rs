use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

/// Fibre charge `q`, stored as the integer `2q`.
///
/// Half-integer charges belong to non-spin bases, integer charges to spin
/// bases. The value is the eigenvalue bookkeeping of `L_K ψ = −iqψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Charge {
    twice: i32,
}

impl Charge {
    pub const fn from_twice(twice: i32) -> Self {
        Self { twice }
    }

    /// `q = 1/2`.
    pub const HALF: Charge = Charge::from_twice(1);
    /// `q = 1`.
    pub const ONE: Charge = Charge::from_twice(2);

    pub const fn twice(self) -> i32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice) * 0.5
    }

    pub const fn is_zero(self) -> bool {
        self.twice == 0
    }

    /// Integer charges occur for spin bases, half-integers for non-spin ones.
    pub const fn is_spin_case(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn nonzero(self) -> crate::Result<Self> {
        if self.is_zero() {
            Err(crate::Error::ZeroCharge)
        } else {
            Ok(self)
        }
    }
}

impl Neg for Charge {
    type Output = Charge;
    fn neg(self) -> Charge {
        Charge::from_twice(-self.twice)
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integer_and_integer_charges() {
        assert_eq!(Charge::HALF.value(), 0.5);
        assert!(!Charge::HALF.is_spin_case());
        assert!(Charge::from_twice(-4).is_spin_case());
        assert_eq!((-Charge::ONE).value(), -1.0);
        assert_eq!(Charge::from_twice(3).to_string(), "3/2");
        assert!(Charge::from_twice(0).nonzero().is_err());
    }
}
