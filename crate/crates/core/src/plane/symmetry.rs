//! Automorphisms of a plane, as permutations of the unified vertex index.

use super::{MobiusPlane, PlaneModel, PointId};

impl MobiusPlane {
    /// Maps a point permutation to the induced vertex permutation (points,
    /// then circles). `None` if some circle is not sent to a circle.
    pub fn induced_permutation(&self, points: &[PointId]) -> Option<Vec<usize>> {
        if points.len() != self.num_points {
            return None;
        }
        let n = self.num_points;
        let mut perm: Vec<usize> = points.to_vec();
        for c in &self.circles {
            let image: Vec<PointId> = c.iter().map(|&p| points[p]).collect();
            perm.push(n + self.find_circle(&image)?);
        }
        Some(perm)
    }

    /// Generators of a group of automorphisms. For the Miquelian model:
    /// `x ↦ x+1`, `x ↦ gx`, `x ↦ 1/x` and the Frobenius map on GF(q²) ∪ {∞};
    /// for the subset model a transposition and a 5-cycle. Empty for
    /// explicit planes.
    pub fn automorphism_generators(&self) -> Vec<Vec<usize>> {
        let point_maps: Vec<Vec<PointId>> = match (self.model, &self.field) {
            (PlaneModel::Miquelian, Some(f)) => {
                let finite = |g: &dyn Fn(u32) -> u32| -> Vec<PointId> {
                    std::iter::once(0)
                        .chain(f.elements().map(|x| 1 + g(x) as usize))
                        .collect()
                };
                let gen = f.generator();
                let mut maps = vec![finite(&|x| f.add(x, 1)), finite(&|x| f.mul(gen, x))];
                let mut inversion: Vec<PointId> = vec![1];
                inversion.extend(f.elements().map(|x| f.inv(x).map_or(0, |y| 1 + y as usize)));
                maps.push(inversion);
                if f.degree() > 1 {
                    maps.push(finite(&|x| f.frobenius(x)));
                }
                maps
            }
            (PlaneModel::Order2Subsets, _) => vec![vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]],
            _ => Vec::new(),
        };
        point_maps
            .iter()
            .map(|m| {
                self.induced_permutation(m)
                    .expect("generator maps circles to circles")
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group_order(gens: &[Vec<usize>]) -> usize {
        let id: Vec<usize> = (0..gens[0].len()).collect();
        let mut seen = std::collections::HashSet::from([id.clone()]);
        let mut stack = vec![id];
        while let Some(g) = stack.pop() {
            for s in gens {
                let h: Vec<usize> = g.iter().map(|&x| s[x]).collect();
                if seen.insert(h.clone()) {
                    stack.push(h);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn generators_preserve_incidence() {
        for q in [2, 3, 4] {
            let plane = MobiusPlane::miquelian(q).unwrap();
            let n = plane.num_points();
            for g in plane.automorphism_generators() {
                for c in 0..plane.num_circles() {
                    for &p in plane.circle(c) {
                        assert!(plane.incident(g[p], g[n + c] - n));
                    }
                }
            }
        }
    }

    #[test]
    fn group_orders() {
        // q²(q⁴ − 1) times the degree of GF(q²) over its prime field
        let m2 = MobiusPlane::miquelian(2).unwrap();
        assert_eq!(group_order(&m2.automorphism_generators()), 120);
        let m3 = MobiusPlane::miquelian(3).unwrap();
        assert_eq!(group_order(&m3.automorphism_generators()), 9 * 80 * 2);
        assert_eq!(
            group_order(&MobiusPlane::order2_subsets().automorphism_generators()),
            120
        );
    }

    #[test]
    fn non_automorphism_rejected() {
        let plane = MobiusPlane::miquelian(3).unwrap();
        let mut swap: Vec<usize> = (0..plane.num_points()).collect();
        swap.swap(0, 1);
        assert!(plane.induced_permutation(&swap).is_none());
    }
}
