//! The permutation group generated by an instance's symmetry generators.

use std::collections::HashSet;

use super::SolverError;
use crate::instance::CoverInstance;

/// Closures larger than this many stored entries are not materialized and
/// the search runs without symmetry.
const MAX_ENTRIES: usize = 1 << 25;

pub(crate) struct Group {
    /// Every group element as a position permutation; element 0 is the
    /// identity.
    pub elements: Vec<Vec<u16>>,
}

impl Group {
    /// Checks the generators and enumerates the group they generate.
    pub fn of_instance(instance: &CoverInstance) -> Result<Option<Group>, SolverError> {
        let gens = &instance.symmetry;
        if gens.is_empty() {
            return Ok(None);
        }
        let n = instance.universe_size();
        let edges: HashSet<&[u64]> = instance.edges.iter().map(|e| e.members.words()).collect();
        for (i, g) in gens.iter().enumerate() {
            let mut seen = vec![false; n];
            if g.len() != n
                || !g
                    .iter()
                    .all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
            {
                return Err(SolverError::InvalidSymmetry(i));
            }
            let maps_edges = instance.edges.iter().all(|e| {
                let image = crate::bitset::BitSet::from_indices(n, e.members.iter().map(|v| g[v]));
                edges.contains(image.words())
            });
            if !maps_edges {
                return Err(SolverError::InvalidSymmetry(i));
            }
        }
        if n > usize::from(u16::MAX) {
            return Ok(None);
        }
        let gens: Vec<Vec<u16>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| x as u16).collect())
            .collect();
        let identity: Vec<u16> = (0..n as u16).collect();
        let mut seen: HashSet<Vec<u16>> = HashSet::from([identity.clone()]);
        let mut elements = vec![identity];
        let mut next = 0;
        while next < elements.len() {
            for s in &gens {
                let h: Vec<u16> = elements[next].iter().map(|&x| s[x as usize]).collect();
                if seen.insert(h.clone()) {
                    if (elements.len() + 1) * n > MAX_ENTRIES {
                        return Ok(None);
                    }
                    elements.push(h);
                }
            }
            next += 1;
        }
        Ok(Some(Group { elements }))
    }
}

/// Orbits of the listed group elements on `positions` (which must be a
/// union of orbits), each sorted, in order of their least member.
pub(crate) fn orbits(
    group: &Group,
    members: &[u32],
    positions: &[usize],
    n: usize,
) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &g in members {
        let perm = &group.elements[g as usize];
        for &v in positions {
            let (a, b) = (find(&mut parent, v), find(&mut parent, perm[v] as usize));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in positions {
        let r = find(&mut parent, v);
        by_root[r].push(v);
    }
    let mut out: Vec<Vec<usize>> = by_root.into_iter().filter(|o| !o.is_empty()).collect();
    out.iter_mut().for_each(|o| o.sort_unstable());
    out.sort_unstable_by_key(|o| o[0]);
    out
}
