//! Independent oracles for the integration suite. Everything here recomputes
//! answers from first principles, without touching the library's interval
//! tests, trace machinery or rewriting strategy.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use symblob::iso::relation_list;
use symblob::{Blob, CfForm, Field, Rat, RuleSet, TraceWord};

/// Brute-force planar-embedding oracle on a grid: edges are routed as
/// vertex-disjoint self-avoiding paths in a rectangle, and wall touches are
/// grid cells on the west or east border, visited in word order. Separation
/// by a partial path is permanent, so connectivity pruning applies at every
/// step and keeps the search exact but small.
pub struct GridOracle {
    n: u16,
    w: i32,
    h: i32,
    budget: std::cell::Cell<usize>,
    max_len: usize,
}

type Cell = (i32, i32);

impl GridOracle {
    pub fn new(n: u16) -> GridOracle {
        GridOracle::with_height(n, n as i32 + 2)
    }

    /// A custom corridor height: more rows allow more winding but enlarge the
    /// search space.
    pub fn with_height(n: u16, h: i32) -> GridOracle {
        let w = 2 * n as i32;
        GridOracle {
            n,
            w,
            h,
            budget: std::cell::Cell::new(0),
            // Realizable routings cross the width at most once per blob plus
            // once to arrive; anything longer is wandering.
            max_len: (h + 2) as usize + 3 * (w as usize + 2),
        }
    }

    fn terminal(&self, pos: u16) -> Cell {
        let n = self.n;
        if pos < n {
            (2 * pos as i32 + 1, 0)
        } else {
            let j = 2 * n - pos; // bottom point j'
            (2 * j as i32 - 1, self.h)
        }
    }

    fn wall_of(&self, cell: Cell) -> Option<Blob> {
        if cell.0 == 0 {
            Some(Blob::L)
        } else if cell.0 == self.w {
            Some(Blob::R)
        } else {
            None
        }
    }

    fn in_bounds(&self, cell: Cell) -> bool {
        cell.0 >= 0 && cell.0 <= self.w && cell.1 >= 0 && cell.1 <= self.h
    }

    /// Can all decorations touch their walls simultaneously, with every edge
    /// routed disjointly? Words are read from the first endpoint of each
    /// triple.
    pub fn layout_feasible(&self, edges: &[(u16, u16, Vec<Blob>)]) -> bool {
        self.budget.set(120_000_000);
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(edges[i].2.len()));
        let terminals: HashSet<Cell> = edges
            .iter()
            .flat_map(|(a, b, _)| [self.terminal(*a), self.terminal(*b)])
            .collect();
        let mut blocked: HashSet<Cell> = HashSet::new();
        self.solve(edges, &order, 0, &mut blocked, &terminals)
    }

    /// Whether the given edge can be deformed to touch the west (L) or east
    /// (R) wall while the whole matching stays disjointly routed.
    pub fn edge_can_touch(&self, matching: &[(u16, u16)], idx: usize, wall: Blob) -> bool {
        let edges: Vec<(u16, u16, Vec<Blob>)> = matching
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| (a, b, if k == idx { vec![wall] } else { Vec::new() }))
            .collect();
        self.layout_feasible(&edges)
    }

    fn solve(
        &self,
        edges: &[(u16, u16, Vec<Blob>)],
        order: &[usize],
        k: usize,
        blocked: &mut HashSet<Cell>,
        terminals: &HashSet<Cell>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let (a, _, _) = &edges[order[k]];
        let start = self.terminal(*a);
        let mut path = vec![start];
        let mut on_path: HashSet<Cell> = HashSet::from([start]);
        self.path_dfs(
            start,
            0,
            &mut path,
            &mut on_path,
            blocked,
            terminals,
            edges,
            order,
            k,
        )
    }

    /// Free-cell reachability from `from`, treating the partial path and all
    /// placed paths as walls; terminal cells block except the listed goals.
    fn reachable(
        &self,
        from: Cell,
        blocked: &HashSet<Cell>,
        on_path: &HashSet<Cell>,
        terminals: &HashSet<Cell>,
        pass_terminals: &[Cell],
    ) -> HashSet<Cell> {
        let mut seen = HashSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(cur) = queue.pop_front() {
            for d in [(0, 1), (1, 0), (0, -1), (-1, 0)] {
                let nb = (cur.0 + d.0, cur.1 + d.1);
                if !self.in_bounds(nb) || seen.contains(&nb) {
                    continue;
                }
                if blocked.contains(&nb) || on_path.contains(&nb) {
                    continue;
                }
                if terminals.contains(&nb) && !pass_terminals.contains(&nb) {
                    seen.insert(nb);
                    continue; // may stop at a terminal but not pass through
                }
                seen.insert(nb);
                queue.push_back(nb);
            }
        }
        seen
    }

    fn viable(
        &self,
        head: Cell,
        matched: usize,
        on_path: &HashSet<Cell>,
        blocked: &HashSet<Cell>,
        terminals: &HashSet<Cell>,
        edges: &[(u16, u16, Vec<Blob>)],
        order: &[usize],
        k: usize,
    ) -> bool {
        let (_, b, word) = &edges[order[k]];
        let goal = self.terminal(*b);
        let from_head = self.reachable(head, blocked, on_path, terminals, &[goal]);
        if !from_head.contains(&goal) {
            return false;
        }
        if matched < word.len() {
            let wall = word[matched];
            let touches = from_head.iter().any(|&c| self.wall_of(c) == Some(wall));
            if !touches {
                return false;
            }
        }
        // Future edges must stay connectable around the partial path.
        for &idx in &order[k + 1..] {
            let (fa, fb, _) = &edges[idx];
            let s = self.terminal(*fa);
            let g = self.terminal(*fb);
            let region = self.reachable(s, blocked, on_path, terminals, &[s, g]);
            if !region.contains(&g) {
                return false;
            }
        }
        true
    }

    /// True when the ring around the new head contains two or more separate
    /// blocked stretches, i.e. occupying it might split the free region.
    fn closes_region(&self, nb: Cell, on_path: &HashSet<Cell>, blocked: &HashSet<Cell>) -> bool {
        const RING: [(i32, i32); 8] = [
            (-1, -1),
            (0, -1),
            (1, -1),
            (1, 0),
            (1, 1),
            (0, 1),
            (-1, 1),
            (-1, 0),
        ];
        let solid = |c: Cell| -> bool {
            !self.in_bounds(c) || blocked.contains(&c) || (on_path.contains(&c) && c != nb)
        };
        let mut runs = 0;
        for i in 0..8 {
            let here = solid((nb.0 + RING[i].0, nb.1 + RING[i].1));
            let prev = solid((nb.0 + RING[(i + 7) % 8].0, nb.1 + RING[(i + 7) % 8].1));
            if here && !prev {
                runs += 1;
            }
        }
        runs >= 2
    }

    #[allow(clippy::too_many_arguments)]
    fn path_dfs(
        &self,
        cur: Cell,
        matched: usize,
        path: &mut Vec<Cell>,
        on_path: &mut HashSet<Cell>,
        blocked: &mut HashSet<Cell>,
        terminals: &HashSet<Cell>,
        edges: &[(u16, u16, Vec<Blob>)],
        order: &[usize],
        k: usize,
    ) -> bool {
        let budget = self.budget.get();
        assert!(budget > 0, "grid oracle budget exhausted");
        self.budget.set(budget - 1);
        let (_, b, word) = &edges[order[k]];
        let goal = self.terminal(*b);
        for d in [(0, 1), (1, 0), (0, -1), (-1, 0)] {
            let nb = (cur.0 + d.0, cur.1 + d.1);
            if !self.in_bounds(nb) || blocked.contains(&nb) || on_path.contains(&nb) {
                continue;
            }
            if nb == goal {
                if matched == word.len() {
                    for c in path.iter() {
                        blocked.insert(*c);
                    }
                    blocked.insert(goal);
                    if self.solve(edges, order, k + 1, blocked, terminals) {
                        return true;
                    }
                    for c in path.iter() {
                        blocked.remove(c);
                    }
                    blocked.remove(&goal);
                }
                continue;
            }
            if terminals.contains(&nb) {
                continue;
            }
            let mut m = matched;
            while m < word.len() && self.wall_of(nb) == Some(word[m]) {
                m += 1;
            }
            let dist = ((nb.0 - goal.0).abs() + (nb.1 - goal.1).abs()) as usize;
            if path.len() + dist > self.max_len {
                continue;
            }
            path.push(nb);
            on_path.insert(nb);
            // The expensive region checks only fire when this step can close
            // a region off: skipping them is sound (they are pure pruning).
            let worth_checking = path.len() % 2 == 0 || self.closes_region(nb, on_path, blocked);
            if (!worth_checking || self.viable(nb, m, on_path, blocked, terminals, edges, order, k))
                && self.path_dfs(nb, m, path, on_path, blocked, terminals, edges, order, k)
            {
                return true;
            }
            path.pop();
            on_path.remove(&nb);
        }
        false
    }
}

/// Independent enumeration of non-crossing perfect matchings: generate every
/// pairing of the 2n boundary positions, then filter with the circle
/// crossing test.
pub fn matchings_by_filter(n: u16) -> Vec<Vec<(u16, u16)>> {
    fn pairings(points: &[u16]) -> Vec<Vec<(u16, u16)>> {
        if points.is_empty() {
            return vec![Vec::new()];
        }
        let p = points[0];
        let mut out = Vec::new();
        for i in 1..points.len() {
            let q = points[i];
            let rest: Vec<u16> = points[1..].iter().copied().filter(|&r| r != q).collect();
            for mut m in pairings(&rest) {
                m.insert(0, (p, q));
                out.push(m);
            }
        }
        out
    }
    let points: Vec<u16> = (0..2 * n).collect();
    pairings(&points)
        .into_iter()
        .filter(|m| {
            m.iter().enumerate().all(|(i, &(a, b))| {
                m[i + 1..]
                    .iter()
                    .all(|&(c, d)| !((a < c && c < b && b < d) || (c < a && a < d && d < b)))
            })
        })
        .collect()
}

/// Roots of the nesting forest in the (optionally rotated) linear order: the
/// edges that can reach the wall where the circle is cut. Computed by a
/// sweep over sorted intervals, not by the library's pairwise scan.
pub fn forest_roots(n: u16, matching: &[(u16, u16)], east: bool) -> Vec<usize> {
    let m = 2 * n;
    let rot = |p: u16| if east { (p + n) % m } else { p };
    let mut intervals: Vec<(u16, u16, usize)> = matching
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let (x, y) = (rot(a), rot(b));
            (x.min(y), x.max(y), i)
        })
        .collect();
    intervals.sort();
    let mut roots = Vec::new();
    let mut horizon = 0u16;
    for (lo, hi, idx) in intervals {
        if lo >= horizon {
            roots.push(idx);
            horizon = hi;
        }
    }
    roots
}

/// Full commutation class of a word, by adjacent swaps.
pub fn commutation_class(w: &TraceWord) -> Vec<Vec<u8>> {
    let mut seen: HashSet<Vec<u8>> = HashSet::from([w.letters().to_vec()]);
    let mut queue: VecDeque<Vec<u8>> = VecDeque::from([w.letters().to_vec()]);
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            if symblob::commutes(cur[i], cur[i + 1]) && cur[i] != cur[i + 1] {
                let mut next = cur.clone();
                next.swap(i, i + 1);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Every terminal (scalar, class) reachable by applying the defining
/// relations as literal subword replacements, across the whole commutation
/// class, in every order. A confluent system yields a single outcome.
pub fn all_rewrite_outcomes(
    rules: &RuleSet<Rat>,
    w: &TraceWord,
    memo: &mut HashMap<CfForm, HashSet<(Rat, CfForm)>>,
) -> HashSet<(Rat, CfForm)> {
    let key = w.cartier_foata();
    if let Some(done) = memo.get(&key) {
        return done.clone();
    }
    let relations = relation_list(rules);
    let n = w.n();
    let mut next_steps: Vec<(Rat, TraceWord)> = Vec::new();
    for member in commutation_class(w) {
        for (lhs, scalar, rhs) in &relations {
            if lhs.len() > member.len() {
                continue;
            }
            for at in 0..=member.len() - lhs.len() {
                if &member[at..at + lhs.len()] == lhs.as_slice() {
                    let mut out = member[..at].to_vec();
                    out.extend_from_slice(rhs);
                    out.extend_from_slice(&member[at + lhs.len()..]);
                    next_steps.push((scalar.clone(), TraceWord::new(n, out).unwrap()));
                }
            }
        }
    }
    let mut outcomes = HashSet::new();
    if next_steps.is_empty() {
        outcomes.insert((Rat::one(), key.clone()));
    } else {
        for (scalar, shorter) in next_steps {
            for (s, terminal) in all_rewrite_outcomes(rules, &shorter, memo) {
                outcomes.insert((scalar.mul(&s), terminal));
            }
        }
    }
    memo.insert(key, outcomes.clone());
    outcomes
}
