//! Exhaustive checks of the Möbius plane axioms and the standard circle
//! census of a plane of order `q`.

use serde::Serialize;

use super::{CircleId, MobiusPlane, PointId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AxiomWitness {
    /// Three points lying on `circles` circles instead of exactly one.
    Triple {
        points: [PointId; 3],
        circles: usize,
    },
    /// Circle `circle`, `on` in it, `off` outside: `tangents` circles through
    /// both points meet `circle` only in `on`.
    Tangency {
        circle: CircleId,
        on: PointId,
        off: PointId,
        tangents: usize,
    },
    NoCircles,
    SmallCircle {
        circle: CircleId,
        size: usize,
    },
    CoversAllPoints {
        circle: CircleId,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: u8,
    pub passed: bool,
    pub witness: Option<AxiomWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn axiom(&self, n: u8) -> &AxiomResult {
        &self.results[usize::from(n) - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountItem {
    pub item: u8,
    pub description: &'static str,
    pub expected: u64,
    pub passed: bool,
    /// First offending circle (or point pair for item 1) and the value found.
    pub witness: Option<(Vec<usize>, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub order: u32,
    pub items: Vec<CountItem>,
}

impl CountReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn item(&self, n: u8) -> &CountItem {
        &self.items[usize::from(n) - 1]
    }
}

fn result(axiom: u8, witness: Option<AxiomWitness>) -> AxiomResult {
    AxiomResult {
        axiom,
        passed: witness.is_none(),
        witness,
    }
}

impl MobiusPlane {
    pub fn verify_axioms(&self) -> AxiomReport {
        let n = self.num_points();
        let pairs = self.pair_index();

        // 1: every three distinct points on exactly one circle
        let mut w1 = None;
        let mut tally = vec![0usize; n];
        'outer: for a in 0..n {
            for b in a + 1..n {
                tally.iter_mut().for_each(|t| *t = 0);
                for &z in &pairs[a * n + b] {
                    for &c in self.circle(z) {
                        tally[c] += 1;
                    }
                }
                if let Some(c) = (b + 1..n).find(|&c| tally[c] != 1) {
                    w1 = Some(AxiomWitness::Triple {
                        points: [a, b, c],
                        circles: tally[c],
                    });
                    break 'outer;
                }
            }
        }

        // 2: unique tangent circle through P on z and Q off z
        let mut w2 = None;
        'outer2: for z in 0..self.num_circles() {
            let mask = self.circle_mask(z);
            for &p in self.circle(z) {
                for q in (0..n).filter(|&q| !mask.contains(q)) {
                    let (lo, hi) = (p.min(q), p.max(q));
                    let tangents = pairs[lo * n + hi]
                        .iter()
                        .filter(|&&w| self.circle_mask(w).intersection_count(mask) == 1)
                        .count();
                    if tangents != 1 {
                        w2 = Some(AxiomWitness::Tangency {
                            circle: z,
                            on: p,
                            off: q,
                            tangents,
                        });
                        break 'outer2;
                    }
                }
            }
        }

        // 3: some circle, every circle with at least three points
        let w3 = if self.num_circles() == 0 {
            Some(AxiomWitness::NoCircles)
        } else {
            self.circles()
                .iter()
                .position(|c| c.len() < 3)
                .map(|z| AxiomWitness::SmallCircle {
                    circle: z,
                    size: self.circle(z).len(),
                })
        };

        // 4: every circle misses a point
        let w4 = self
            .circles()
            .iter()
            .position(|c| c.len() >= n)
            .map(|z| AxiomWitness::CoversAllPoints { circle: z });

        AxiomReport {
            results: vec![result(1, w1), result(2, w2), result(3, w3), result(4, w4)],
        }
    }

    /// Checks the six census identities for a plane of order `q`.
    pub fn verify_counts(&self) -> CountReport {
        let q = u64::from(self.order());
        let n = self.num_points();
        let expected = [
            q + 1,
            (q + 1) * q * q / 2,
            q - 1,
            q * q - 1,
            (q * q * q + 2 * q - 3 * q * q) / 2,
            (q * q * q + 3 * q * q - 2) / 2,
        ];
        let descriptions = [
            "circles through two distinct points",
            "circles meeting a circle in two points",
            "circles tangent to a circle at one of its points",
            "circles tangent to a circle",
            "circles skew to a circle",
            "circles meeting a circle in one or two points",
        ];
        let mut witnesses: [Option<(Vec<usize>, u64)>; 6] = Default::default();

        let pairs = self.pair_index();
        'pairs: for a in 0..n {
            for b in a + 1..n {
                let k = pairs[a * n + b].len() as u64;
                if k != expected[0] {
                    witnesses[0] = Some((vec![a, b], k));
                    break 'pairs;
                }
            }
        }

        for z in 0..self.num_circles() {
            let mask = self.circle_mask(z);
            let mut by_size = [0u64; 3];
            let mut tangent_at = vec![0u64; n];
            for w in (0..self.num_circles()).filter(|&w| w != z) {
                let other = self.circle_mask(w);
                let k = other.intersection_count(mask);
                if k <= 2 {
                    by_size[k] += 1;
                }
                if k == 1 {
                    let mut common = other.clone();
                    common.intersect_with(mask);
                    tangent_at[common.first().expect("one common point")] += 1;
                }
            }
            let found = [
                None,
                Some(by_size[2]),
                self.circle(z)
                    .iter()
                    .map(|&p| tangent_at[p])
                    .find(|&t| t != expected[2]),
                Some(by_size[1]),
                Some(by_size[0]),
                Some(by_size[1] + by_size[2]),
            ];
            for (i, f) in found.iter().enumerate().skip(1) {
                let bad = match (i, f) {
                    (2, Some(t)) => Some(*t),
                    (2, None) => None,
                    (_, Some(v)) if *v != expected[i] => Some(*v),
                    _ => None,
                };
                if let (Some(v), None) = (bad, &witnesses[i]) {
                    witnesses[i] = Some((vec![z], v));
                }
            }
        }

        let items = (0..6)
            .map(|i| CountItem {
                item: i as u8 + 1,
                description: descriptions[i],
                expected: expected[i],
                passed: witnesses[i].is_none(),
                witness: witnesses[i].clone(),
            })
            .collect();
        CountReport {
            order: self.order(),
            items,
        }
    }

    /// `pairs[a * n + b]` lists the circles through `a < b`.
    fn pair_index(&self) -> Vec<Vec<CircleId>> {
        let n = self.num_points();
        let mut pairs = vec![Vec::new(); n * n];
        for (z, c) in self.circles().iter().enumerate() {
            for (i, &a) in c.iter().enumerate() {
                for &b in &c[i + 1..] {
                    pairs[a * n + b].push(z);
                }
            }
        }
        pairs
    }
}
