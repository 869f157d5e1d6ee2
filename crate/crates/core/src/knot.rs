//! Two-bridge knots in Schubert normal form.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::word::{FreeWord, Gen};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid two-bridge knot b({m},{n}): {reason}")]
pub struct InvalidKnot {
    pub m: i64,
    pub n: i64,
    pub reason: &'static str,
}

/// The Schubert form `b(m, n)`: `m > 0` odd, `n` odd, `-m < n < m`,
/// `gcd(m, n) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct TwoBridgeKnot {
    m: i64,
    n: i64,
}

impl TwoBridgeKnot {
    pub fn new(m: i64, n: i64) -> Result<Self, InvalidKnot> {
        let bad = |reason| Err(InvalidKnot { m, n, reason });
        if m <= 0 || m % 2 == 0 {
            return bad("m must be a positive odd integer");
        }
        if n % 2 == 0 {
            return bad("n must be odd");
        }
        if n <= -m || n >= m {
            return bad("n must satisfy -m < n < m");
        }
        if m.gcd(&n) != 1 {
            return bad("m and n must be coprime");
        }
        Ok(TwoBridgeKnot { m, n })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// All valid knots with `m <= max_m`, ordered by `(m, n)`.
    pub fn all_up_to(max_m: i64) -> Vec<TwoBridgeKnot> {
        let mut out = Vec::new();
        for m in (3..=max_m).step_by(2) {
            for n in (-m + 1..m).filter(|n| n % 2 != 0) {
                if let Ok(k) = TwoBridgeKnot::new(m, n) {
                    out.push(k);
                }
            }
        }
        out
    }

    /// `eps_i = (-1)^floor(i n / m)` for `i = 1..m-1`.
    pub fn epsilon_sequence(&self) -> Vec<i64> {
        (1..self.m)
            .map(|i| if (i * self.n).div_euclid(self.m) % 2 == 0 { 1 } else { -1 })
            .collect()
    }

    /// `a^eps_1 b^eps_2 ... a^eps_{m-2} b^eps_{m-1}`.
    pub fn schubert_word(&self) -> FreeWord {
        let gens = [Gen::A, Gen::B];
        FreeWord::from_syllables(self.epsilon_sequence().into_iter().enumerate().map(|(i, e)| (gens[i % 2], e)))
    }
}

impl TryFrom<(i64, i64)> for TwoBridgeKnot {
    type Error = InvalidKnot;
    fn try_from((m, n): (i64, i64)) -> Result<Self, InvalidKnot> {
        TwoBridgeKnot::new(m, n)
    }
}

impl From<TwoBridgeKnot> for (i64, i64) {
    fn from(k: TwoBridgeKnot) -> Self {
        (k.m, k.n)
    }
}

impl fmt::Display for TwoBridgeKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b({},{})", self.m, self.n)
    }
}
