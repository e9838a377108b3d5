use std::fmt;

use serde::Serialize;

use crate::instance::CoverInstance;

/// A nonnegative rational in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (u128::from(self.num) * u128::from(other.den))
            .cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Result of giving every universe position the same value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FractionalAssignment {
    pub value: Ratio,
    pub universe_size: usize,
    /// Every edge sums to at least one.
    pub feasible: bool,
    /// Every edge sums to exactly one.
    pub tight: bool,
    pub min_edge_sum: Option<Ratio>,
    pub objective: Ratio,
}

pub fn uniform_fractional_check(
    instance: &CoverInstance,
    numerator: u64,
    denominator: u64,
) -> FractionalAssignment {
    let value = Ratio::new(numerator, denominator);
    let mut feasible = true;
    let mut tight = true;
    let mut min_size: Option<u64> = None;
    for e in &instance.edges {
        let size = e.members.count() as u64;
        // size * num / den ≥ 1
        let sum = u128::from(size) * u128::from(value.num);
        feasible &= sum >= u128::from(value.den);
        tight &= sum == u128::from(value.den);
        min_size = Some(min_size.map_or(size, |m| m.min(size)));
    }
    let n = instance.universe_size() as u64;
    FractionalAssignment {
        value,
        universe_size: instance.universe_size(),
        feasible,
        tight: tight && !instance.edges.is_empty(),
        min_edge_sum: min_size.map(|s| Ratio::new(s * value.num, value.den)),
        objective: Ratio::new(n * value.num, value.den),
    }
}
