//! Exact minimum hitting set by branch and bound.
//!
//! The search runs in rounds of increasing size limit `k`, starting from the
//! root lower bound: each round decides whether a hitting set of size `k`
//! exists. An exhausted round certifies `k + 1` as a lower bound, the first
//! successful round is optimal, and the greedy cover closes the search when
//! `k` reaches its size. Inside a round, branching takes an unhit edge with
//! the fewest available members and tries them in decreasing order of unhit
//! degree; each tried member is excluded from its later siblings.
//!
//! Instances that carry a [`Separation`] get a further bound. Chosen
//! positions split each family into classes of items with equal labels so
//! far, and every class of `m` items still needs `m` distinct label words
//! over the remaining picks. Measuring each word against the majority label
//! of each pick, distinct words have a least total weight, while a pick can
//! add at most `m` minus its majority count to that total.

use std::time::{Duration, Instant};

use serde::Serialize;

use super::symmetry::{orbits, Group};
use super::{greedy_cover, SolverError};
use crate::bitset::BitSet;
use crate::instance::{CoverInstance, Separation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
}

impl Budget {
    pub fn seconds(secs: u64) -> Self {
        Budget {
            time: Some(Duration::from_secs(secs)),
            nodes: None,
        }
    }

    pub fn nodes(nodes: u64) -> Self {
        Budget {
            time: None,
            nodes: Some(nodes),
        }
    }

    pub fn unlimited() -> Self {
        Budget {
            time: None,
            nodes: None,
        }
    }

    fn validate(&self) -> Result<(), SolverError> {
        if self.time.is_some_and(|t| t.is_zero()) || self.nodes == Some(0) {
            return Err(SolverError::ZeroBudget);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Optimal,
    Bounded,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Universe positions of the best hitting set found, sorted.
    pub witness: Vec<usize>,
    pub upper: usize,
    pub lower: usize,
    pub nodes: u64,
    #[serde(serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl SolveOutcome {
    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

/// Edges not marked in `covered`, packed greedily (in edge order) into a
/// family of pairwise disjoint edges; its size bounds the number of extra
/// positions needed.
pub fn disjoint_edge_lower_bound(instance: &CoverInstance, covered: &BitSet) -> usize {
    let mut used = BitSet::new(instance.universe_size());
    let mut order: Vec<usize> = (0..instance.num_edges())
        .filter(|&e| !covered.contains(e))
        .collect();
    order.sort_by_key(|&e| (instance.edges[e].members.count(), e));
    let mut count = 0;
    for e in order {
        let members = &instance.edges[e].members;
        if !members.intersects(&used) {
            used.union_with(members);
            count += 1;
        }
    }
    count
}

pub fn exact_min_hitting_set(
    instance: &CoverInstance,
    budget: Budget,
    initial_upper: Option<&[usize]>,
) -> Result<SolveOutcome, SolverError> {
    budget.validate()?;
    if let Some(e) = instance.first_empty_edge() {
        return Err(SolverError::EmptyEdge(e));
    }
    let start = Instant::now();
    let greedy = greedy_cover(instance)?;
    let mut best: Vec<usize> = greedy.chosen;
    if let Some(seed) = initial_upper {
        if instance.is_hit_by(seed) && seed.len() < best.len() {
            best = seed.to_vec();
        }
    }
    best.sort_unstable();

    let group = Group::of_instance(instance)?;
    let mut search = Search::new(instance, budget, start, group);
    let mut lower = search.root_lower_bound();
    let mut status = SolveStatus::Bounded;
    while lower < best.len() {
        match search.round(lower) {
            Round::Found(mut set) => {
                set.sort_unstable();
                best = set;
                break;
            }
            Round::Exhausted => lower += 1,
            Round::Aborted => break,
        }
    }
    if lower >= best.len() || search.found_in_round {
        lower = best.len();
        status = SolveStatus::Optimal;
    }
    Ok(SolveOutcome {
        status,
        upper: best.len(),
        witness: best,
        lower,
        nodes: search.nodes,
        elapsed: start.elapsed(),
    })
}

enum Round {
    Found(Vec<usize>),
    Exhausted,
    Aborted,
}

struct Search<'a> {
    instance: &'a CoverInstance,
    /// Per universe position, the edges it hits.
    hits: Vec<BitSet>,
    /// Edges sorted by size, for the packing bound.
    by_size: Vec<usize>,
    budget: Budget,
    start: Instant,
    nodes: u64,
    aborted: bool,
    found_in_round: bool,
    limit: usize,
    chosen: Vec<usize>,
    excluded: BitSet,
    /// One scratch "unhit edges" set per depth.
    unhit: Vec<BitSet>,
    degree: Vec<Vec<usize>>,
    sep: Option<SeparationBound<'a>>,
    /// Per depth and family, the class of every item.
    classes: Vec<Vec<Vec<u32>>>,
    group: Option<Group>,
    /// Per depth, the group elements fixing every chosen position; empty
    /// once symmetry is no longer tracked.
    stabilizer: Vec<Vec<u32>>,
}

impl<'a> Search<'a> {
    fn new(
        instance: &'a CoverInstance,
        budget: Budget,
        start: Instant,
        group: Option<Group>,
    ) -> Self {
        let n = instance.universe_size();
        let m = instance.num_edges();
        let mut hits = vec![BitSet::new(m); n];
        for (e, edge) in instance.edges.iter().enumerate() {
            for v in edge.members.iter() {
                hits[v].insert(e);
            }
        }
        let mut by_size: Vec<usize> = (0..m).collect();
        by_size.sort_by_key(|&e| (instance.edges[e].members.count(), e));
        Search {
            instance,
            hits,
            by_size,
            budget,
            start,
            nodes: 0,
            aborted: false,
            found_in_round: false,
            limit: 0,
            chosen: Vec::new(),
            excluded: BitSet::new(n),
            unhit: vec![BitSet::full(m)],
            degree: Vec::new(),
            sep: instance.separation.as_ref().map(SeparationBound::new),
            classes: instance
                .separation
                .iter()
                .map(|s| s.families.iter().map(|f| vec![0; f.items]).collect())
                .collect(),
            stabilizer: vec![group
                .as_ref()
                .map_or(Vec::new(), |g| (0..g.elements.len() as u32).collect())],
            group,
        }
    }

    fn root_lower_bound(&self) -> usize {
        let m = self.instance.num_edges();
        let packing = disjoint_edge_lower_bound(self.instance, &BitSet::new(m));
        let mut deg: Vec<usize> = self.hits.iter().map(|h| h.count()).collect();
        deg.sort_unstable_by(|a, b| b.cmp(a));
        let mut lower = packing.max(degree_bound(&deg, m));
        if let Some(sep) = &self.sep {
            let zeros: Vec<Vec<u32>> = sep.sep.families.iter().map(|f| vec![0; f.items]).collect();
            let excluded = BitSet::new(self.instance.universe_size());
            let cap = self.instance.universe_size();
            while lower < cap && !sep.feasible(&zeros, &excluded, lower) {
                lower += 1;
            }
        }
        lower
    }

    fn round(&mut self, limit: usize) -> Round {
        self.limit = limit;
        self.chosen.clear();
        self.excluded = BitSet::new(self.instance.universe_size());
        self.unhit.truncate(1);
        self.classes.truncate(1);
        self.stabilizer.truncate(1);
        if self.dfs(0) {
            self.found_in_round = true;
            Round::Found(self.chosen.clone())
        } else if self.aborted {
            Round::Aborted
        } else {
            Round::Exhausted
        }
    }

    fn out_of_budget(&mut self) -> bool {
        if let Some(cap) = self.budget.nodes {
            if self.nodes >= cap {
                self.aborted = true;
            }
        }
        if let Some(t) = self.budget.time {
            if self.nodes.is_multiple_of(256) && self.start.elapsed() >= t {
                self.aborted = true;
            }
        }
        self.aborted
    }

    /// True when a hitting set within the limit was found (left in `chosen`).
    fn dfs(&mut self, depth: usize) -> bool {
        if self.unhit[depth].is_empty() {
            return true;
        }
        self.nodes += 1;
        if self.out_of_budget() {
            return false;
        }
        let room = self.limit - self.chosen.len();
        if room == 0 {
            return false;
        }
        let n = self.instance.universe_size();
        if self.degree.len() <= depth {
            self.degree.push(vec![0; n]);
        }
        let unhit_count = self.unhit[depth].count();

        // Degree bound: the `room` largest degrees must reach every unhit edge.
        {
            let deg = &mut self.degree[depth];
            for v in 0..n {
                deg[v] = if self.excluded.contains(v) {
                    0
                } else {
                    self.hits[v].intersection_count(&self.unhit[depth])
                };
            }
            let mut top: Vec<usize> = deg.iter().copied().filter(|&d| d > 0).collect();
            if top.len() > room {
                top.select_nth_unstable_by(room - 1, |a, b| b.cmp(a));
                top.truncate(room);
            }
            if top.iter().sum::<usize>() < unhit_count {
                return false;
            }
        }

        if let Some(sep) = &self.sep {
            if !sep.feasible(&self.classes[depth], &self.excluded, room) {
                return false;
            }
        }

        // Packing bound and branching edge in one pass over unhit edges.
        let mut used = BitSet::new(n);
        let mut packed = 0;
        let mut branch: Option<(usize, usize)> = None;
        for &e in &self.by_size {
            if !self.unhit[depth].contains(e) {
                continue;
            }
            let mut avail = self.instance.edges[e].members.clone();
            avail.difference_with(&self.excluded);
            let size = avail.count();
            if size == 0 {
                return false;
            }
            if branch.is_none_or(|(_, s)| size < s) {
                branch = Some((e, size));
            }
            if !avail.intersects(&used) {
                used.union_with(&avail);
                packed += 1;
                if packed > room {
                    return false;
                }
            }
        }
        let (edge, _) = branch.expect("unhit edge exists");

        let mut candidates: Vec<usize> = self.instance.edges[edge]
            .members
            .iter()
            .filter(|&v| !self.excluded.contains(v))
            .collect();
        let deg = &self.degree[depth];
        candidates.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));

        if self.unhit.len() <= depth + 1 {
            self.unhit.push(BitSet::new(self.instance.num_edges()));
            self.stabilizer.push(Vec::new());
        }
        if let Some(orbit_list) = self.orbit_branching(depth, candidates.len()) {
            return self.branch_on_orbits(depth, orbit_list);
        }
        self.stabilizer[depth + 1].clear();
        let mut tried = Vec::with_capacity(candidates.len());
        let mut found = false;
        for v in candidates {
            if self.descend(depth, v) {
                found = true;
                break;
            }
            if self.aborted {
                break;
            }
            self.excluded.insert(v);
            tried.push(v);
        }
        for v in tried {
            self.excluded.remove(v);
        }
        found
    }

    /// Orbits of positive degree under the node's stabilizer, when there
    /// are fewer of them than `edge_children`.
    fn orbit_branching(&self, depth: usize, edge_children: usize) -> Option<Vec<Vec<usize>>> {
        let group = self.group.as_ref()?;
        let members = &self.stabilizer[depth];
        if members.len() <= 1 {
            return None;
        }
        let deg = &self.degree[depth];
        let n = self.instance.universe_size();
        let free: Vec<usize> = (0..n)
            .filter(|&v| !self.excluded.contains(v) && !self.chosen.contains(&v))
            .collect();
        let mut list: Vec<Vec<usize>> = orbits(group, members, &free, n)
            .into_iter()
            .filter(|o| deg[o[0]] > 0)
            .collect();
        if list.len() >= edge_children {
            return None;
        }
        list.sort_by_key(|o| (std::cmp::Reverse(deg[o[0]]), o[0]));
        Some(list)
    }

    fn branch_on_orbits(&mut self, depth: usize, orbit_list: Vec<Vec<usize>>) -> bool {
        let mut tried: Vec<usize> = Vec::new();
        let mut found = false;
        for orbit in orbit_list {
            let rep = orbit[0];
            let group = self.group.as_ref().expect("orbits need a group");
            let (head, tail) = self.stabilizer.split_at_mut(depth + 1);
            tail[0].clear();
            tail[0].extend(
                head[depth]
                    .iter()
                    .copied()
                    .filter(|&g| group.elements[g as usize][rep] as usize == rep),
            );
            if self.descend(depth, rep) {
                found = true;
                break;
            }
            if self.aborted {
                break;
            }
            for v in orbit {
                self.excluded.insert(v);
                tried.push(v);
            }
        }
        for v in tried {
            self.excluded.remove(v);
        }
        found
    }

    /// Chooses `v` below `depth` and searches on; keeps `v` chosen on success.
    fn descend(&mut self, depth: usize, v: usize) -> bool {
        let (head, tail) = self.unhit.split_at_mut(depth + 1);
        tail[0].clone_from(&head[depth]);
        tail[0].difference_with(&self.hits[v]);
        if let Some(sep) = &self.sep {
            if self.classes.len() <= depth + 1 {
                self.classes.push(self.classes[depth].clone());
            }
            let (head, tail) = self.classes.split_at_mut(depth + 1);
            sep.refine(&head[depth], v, &mut tail[0]);
        }
        self.chosen.push(v);
        if self.dfs(depth + 1) {
            return true;
        }
        self.chosen.pop();
        false
    }
}

struct SeparationBound<'a> {
    sep: &'a Separation,
    /// Per family, the most distinct labels any single position gives.
    alphabet: Vec<usize>,
}

const LETTERS: usize = 5;

impl<'a> SeparationBound<'a> {
    fn new(sep: &'a Separation) -> Self {
        let alphabet = sep
            .families
            .iter()
            .map(|f| {
                f.letters
                    .chunks(f.items.max(1))
                    .map(|row| {
                        let mut seen = [false; LETTERS];
                        row.iter().for_each(|&l| seen[l as usize] = true);
                        seen.iter().filter(|&&b| b).count()
                    })
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        SeparationBound { sep, alphabet }
    }

    /// Splits every class of `parent` by the labels of position `v`.
    fn refine(&self, parent: &[Vec<u32>], v: usize, out: &mut [Vec<u32>]) {
        for ((fam, old), new) in self.sep.families.iter().zip(parent).zip(out.iter_mut()) {
            let row = &fam.letters[v * fam.items..(v + 1) * fam.items];
            let classes = old.iter().max().map_or(0, |&c| c as usize + 1);
            let mut map = vec![u32::MAX; classes * LETTERS];
            let mut next = 0;
            for x in 0..fam.items {
                let key = old[x] as usize * LETTERS + row[x] as usize;
                if map[key] == u32::MAX {
                    map[key] = next;
                    next += 1;
                }
                new[x] = map[key];
            }
        }
    }

    /// Can `room` more positions outside `excluded` make every class a
    /// singleton, as far as the weight count can tell?
    fn feasible(&self, classes: &[Vec<u32>], excluded: &BitSet, room: usize) -> bool {
        let n = self
            .sep
            .families
            .first()
            .map_or(0, |f| f.letters.len() / f.items.max(1));
        let mut total_demand = 0u64;
        let mut total_supply = vec![0u64; n];
        for ((fam, cls), &a) in self.sep.families.iter().zip(classes).zip(&self.alphabet) {
            let count = cls.iter().max().map_or(0, |&c| c as usize + 1);
            let mut size = vec![0usize; count];
            cls.iter().for_each(|&c| size[c as usize] += 1);
            let mut demand = 0u64;
            for &m in size.iter().filter(|&&m| m > 1) {
                match min_word_weight(m, room, a) {
                    Some(w) => demand += w,
                    None => return false,
                }
            }
            if demand == 0 {
                continue;
            }
            let mut freq = vec![0usize; count * LETTERS];
            let mut supply = Vec::with_capacity(n);
            for v in 0..n {
                if excluded.contains(v) {
                    continue;
                }
                let row = &fam.letters[v * fam.items..(v + 1) * fam.items];
                freq.iter_mut().for_each(|f| *f = 0);
                for (x, &c) in cls.iter().enumerate() {
                    freq[c as usize * LETTERS + row[x] as usize] += 1;
                }
                let mut s = 0u64;
                for (c, &m) in size.iter().enumerate() {
                    if m > 1 {
                        let top = freq[c * LETTERS..(c + 1) * LETTERS]
                            .iter()
                            .max()
                            .copied()
                            .unwrap_or(0);
                        s += (m - top) as u64;
                    }
                }
                total_supply[v] += s;
                supply.push(s);
            }
            if top_sum(&mut supply, room) < demand {
                return false;
            }
            total_demand += demand;
        }
        total_demand == 0 || top_sum(&mut total_supply, room) >= total_demand
    }
}

fn top_sum(values: &mut [u64], r: usize) -> u64 {
    if r == 0 {
        return 0;
    }
    if values.len() > r {
        values.select_nth_unstable_by(r - 1, |a, b| b.cmp(a));
        values[..r].iter().sum()
    } else {
        values.iter().sum()
    }
}

/// Least total weight of `m` distinct words of length `r` over `a` letters,
/// weight being the number of non-reference letters. `None` when fewer than
/// `m` words exist.
fn min_word_weight(m: usize, r: usize, a: usize) -> Option<u64> {
    let mut left = m as u128;
    let mut total = 0u128;
    let mut binom = 1u128;
    for w in 0..=r {
        if w > 0 {
            binom = binom * (r - w + 1) as u128 / w as u128;
        }
        let words = binom.saturating_mul((a as u128 - 1).saturating_pow(w as u32));
        let take = words.min(left);
        total += take * w as u128;
        left -= take;
        if left == 0 {
            return Some(total as u64);
        }
    }
    None
}

/// Fewest of the (descending) degrees whose sum reaches `target`.
fn degree_bound(sorted_desc: &[usize], target: usize) -> usize {
    let mut sum = 0;
    for (i, &d) in sorted_desc.iter().enumerate() {
        if sum >= target {
            return i;
        }
        sum += d;
    }
    if sum >= target {
        sorted_desc.len()
    } else {
        usize::MAX
    }
}
