use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::{fmt_rational, serde_rational, sign, Rational};

/// `main + eps * e` for a formal infinitesimal `e > 0`. Orders lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EpsWeight {
    #[serde(with = "serde_rational")]
    pub main: Rational,
    #[serde(with = "serde_rational", default = "Rational::zero")]
    pub eps: Rational,
}

impl EpsWeight {
    pub fn new(main: Rational, eps: Rational) -> Self {
        EpsWeight { main, eps }
    }

    pub fn exact(main: Rational) -> Self {
        EpsWeight { main, eps: Rational::zero() }
    }

    pub fn sign(&self) -> Ordering {
        match sign(&self.main) {
            Ordering::Equal => sign(&self.eps),
            s => s,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }
}

impl fmt::Display for EpsWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eps.is_zero() {
            return f.write_str(&fmt_rational(&self.main));
        }
        let eps = if self.eps == Rational::from_integer(1.into()) {
            "e".to_string()
        } else if self.eps == Rational::from_integer((-1).into()) {
            "-e".to_string()
        } else {
            format!("{}e", fmt_rational(&self.eps))
        };
        if self.main.is_zero() {
            f.write_str(&eps)
        } else if eps.starts_with('-') {
            write!(f, "{}{}", fmt_rational(&self.main), eps)
        } else {
            write!(f, "{}+{}", fmt_rational(&self.main), eps)
        }
    }
}
