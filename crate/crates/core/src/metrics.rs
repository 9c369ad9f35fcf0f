//! Measurements and certificates for finished runs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::process::{ProcessState, RoundRecord, VertexId};

/// Default size limit for the exact clique and independence solvers.
pub const EXACT_LIMIT: usize = 40;

/// Simple graph underlying a run: loops and parallel edges dropped,
/// neighbours stored sorted in compressed rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleView {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl SimpleView {
    pub fn from_state(state: &ProcessState) -> Self {
        Self::from_records(state.n(), state.edge_log())
    }

    pub fn from_records(n: usize, records: &[RoundRecord]) -> Self {
        Self::from_pairs(n, records.iter().map(|r| (r.square.raw(), r.circle.raw())))
    }

    /// Panics if an endpoint is `>= n`.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut edges: Vec<(u32, u32)> = pairs
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut offsets = vec![0usize; n + 1];
        for &(a, b) in &edges {
            assert!((b as usize) < n, "vertex {b} out of range for n = {n}");
            offsets[a as usize + 1] += 1;
            offsets[b as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut neighbors = vec![0u32; offsets[n]];
        // edges are sorted by (a, b), so both rows come out sorted
        for &(a, b) in &edges {
            neighbors[fill[a as usize]] = b;
            fill[a as usize] += 1;
        }
        for &(a, b) in &edges {
            neighbors[fill[b as usize]] = a;
            fill[b as usize] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        SimpleView { offsets, neighbors }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbors(a).binary_search(&(b as u32)).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |a| {
            self.neighbors(a)
                .iter()
                .map(move |&b| (a, b as usize))
                .filter(|&(a, b)| a < b)
        })
    }
}

/// True iff the vertices are distinct and pairwise adjacent.
pub fn verify_clique(view: &SimpleView, vertices: &[VertexId]) -> bool {
    for (i, a) in vertices.iter().enumerate() {
        if a.index() >= view.n() {
            return false;
        }
        for b in &vertices[i + 1..] {
            if a == b || !view.has_edge(a.index(), b.index()) {
                return false;
            }
        }
    }
    true
}

/// Largest square count and the lowest vertex attaining it.
pub fn max_squares(state: &ProcessState) -> (u32, VertexId) {
    let mut best = (0, VertexId::new(0));
    for (v, &s) in state.squares().iter().enumerate() {
        if s > best.0 {
            best = (s, VertexId::from_index(v));
        }
    }
    best
}

/// A rare pair is a circle placed on `w` in round `t` together with a square
/// landing on `w` in a later round `s > t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RarePairReport {
    /// Pairs per vertex: by the vertex `w` they sit on, or by the square
    /// vertex of round `t` (see [`count_rare_pairs_by_source`]).
    #[serde(skip)]
    pub per_vertex: Vec<u64>,
    pub total: u64,
    pub max: u64,
    /// `Σ_w 2√r_w`.
    pub budget: f64,
    /// `Σ_w 2⌈√r_w⌉`.
    pub budget_ceil: u64,
}

impl RarePairReport {
    fn from_counts(per_vertex: Vec<u64>) -> Self {
        let total = per_vertex.iter().sum();
        let max = per_vertex.iter().copied().max().unwrap_or(0);
        let budget = per_vertex.iter().map(|&r| 2.0 * (r as f64).sqrt()).sum();
        let budget_ceil = per_vertex.iter().map(|&r| 2 * ceil_sqrt(r)).sum();
        RarePairReport {
            per_vertex,
            total,
            max,
            budget,
            budget_ceil,
        }
    }
}

pub fn ceil_sqrt(r: u64) -> u64 {
    let mut s = (r as f64).sqrt() as u64;
    while s * s < r {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= r {
        s -= 1;
    }
    s
}

/// Rare pairs of the whole graph, from the stored square timestamps.
pub fn count_rare_pairs(state: &ProcessState) -> Result<RarePairReport> {
    if !state.tracks_square_times() {
        return Err(Error::Unsupported(
            "square timestamps were not retained; use count_rare_pairs_scan".into(),
        ));
    }
    let n = state.n();
    let mut circle_times: Vec<Vec<u64>> = vec![Vec::new(); n];
    for rec in state.edge_log() {
        circle_times[rec.circle.index()].push(rec.round);
    }
    let counts = (0..n)
        .map(|w| {
            let squares = state.square_times(VertexId::from_index(w)).unwrap_or(&[]);
            // both lists ascending: for each square count earlier circles
            let circles = &circle_times[w];
            let mut i = 0;
            let mut total = 0u64;
            for &s in squares {
                while i < circles.len() && circles[i] < s {
                    i += 1;
                }
                total += i as u64;
            }
            total
        })
        .collect();
    Ok(RarePairReport::from_counts(counts))
}

/// Same count in a single pass over the edge log; needs no timestamps.
pub fn count_rare_pairs_scan(n: usize, records: &[RoundRecord]) -> RarePairReport {
    let mut circles_so_far = vec![0u64; n];
    let mut counts = vec![0u64; n];
    for rec in records {
        counts[rec.square.index()] += circles_so_far[rec.square.index()];
        circles_so_far[rec.circle.index()] += 1;
    }
    RarePairReport::from_counts(counts)
}

/// Rare pairs grouped by the square of round `t`: for every vertex `u`, the
/// number of later squares landing on the circles of `u`'s squares.
pub fn count_rare_pairs_by_source(n: usize, records: &[RoundRecord]) -> RarePairReport {
    let mut remaining = vec![0u64; n];
    for rec in records {
        remaining[rec.square.index()] += 1;
    }
    let mut counts = vec![0u64; n];
    for rec in records {
        // squares strictly after this round
        remaining[rec.square.index()] -= 1;
        counts[rec.square.index()] += remaining[rec.circle.index()];
    }
    RarePairReport::from_counts(counts)
}

/// Rare pairs of `G_t[S]`: only edges with both endpoints in `S` that are
/// not marked removed take part.
pub fn count_rare_pairs_on(
    n: usize,
    records: &[RoundRecord],
    in_set: &[bool],
    removed: &[bool],
) -> RarePairReport {
    let mut circles_so_far = vec![0u64; n];
    let mut counts = vec![0u64; n];
    for (i, rec) in records.iter().enumerate() {
        let (s, c) = (rec.square.index(), rec.circle.index());
        if removed[i] || !in_set[s] || !in_set[c] {
            continue;
        }
        counts[s] += circles_so_far[s];
        circles_so_far[c] += 1;
    }
    RarePairReport::from_counts(counts)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RareDestruction {
    pub removed: usize,
    /// `Σ_w 2⌈√r_w⌉` over the initial counts.
    pub budget: u64,
    /// Rare pairs left afterwards (zero by construction).
    pub remaining: u64,
    /// Rounds whose edges were removed, ascending.
    #[serde(skip)]
    pub removed_rounds: Vec<u64>,
}

/// Removes edges of `G_t[S]` until no rare pair is left.
///
/// For each vertex `w` with `r` rare pairs, `V_w` are the circles and `U_w`
/// the squares on `w` taking part in one. With `s = ⌈√r⌉`: if `|V_w| ≤ s`
/// drop their edges, else if `|U_w| ≤ s` drop those, else drop the `s`
/// youngest squares and the `s` oldest circles.
pub fn destroy_rare_pairs(state: &ProcessState, set: &[VertexId]) -> RareDestruction {
    let n = state.n();
    let log = state.edge_log();
    let mut in_set = vec![false; n];
    for v in set {
        in_set[v.index()] = true;
    }
    let mut removed = vec![false; log.len()];
    let initial = count_rare_pairs_on(n, log, &in_set, &removed);

    // per vertex: indices into the log of circles and squares on it
    let mut circle_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut square_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, rec) in log.iter().enumerate() {
        let (s, c) = (rec.square.index(), rec.circle.index());
        if in_set[s] && in_set[c] {
            circle_at[c].push(i);
            square_at[s].push(i);
        }
    }

    let mut count = 0;
    for w in 0..n {
        if initial.per_vertex[w] == 0 {
            continue;
        }
        let circles: Vec<usize> = circle_at[w]
            .iter()
            .copied()
            .filter(|&i| !removed[i])
            .collect();
        let squares: Vec<usize> = square_at[w]
            .iter()
            .copied()
            .filter(|&i| !removed[i])
            .collect();
        let (Some(&first_circle), Some(&last_square)) = (circles.first(), squares.last()) else {
            continue;
        };
        // log index order is round order
        let v_w: Vec<usize> = circles
            .iter()
            .copied()
            .filter(|&t| t < last_square)
            .collect();
        let u_w: Vec<usize> = squares
            .iter()
            .copied()
            .filter(|&s| s > first_circle)
            .collect();
        let r: u64 = u_w
            .iter()
            .map(|&s| circles.partition_point(|&t| t < s) as u64)
            .sum();
        if r == 0 {
            continue;
        }
        let k = ceil_sqrt(r) as usize;
        let victims: Vec<usize> = if v_w.len() <= k {
            v_w
        } else if u_w.len() <= k {
            u_w
        } else {
            let mut v = v_w[..k].to_vec();
            v.extend_from_slice(&u_w[u_w.len() - k..]);
            v
        };
        for i in victims {
            if !removed[i] {
                removed[i] = true;
                count += 1;
            }
        }
    }
    let remaining = count_rare_pairs_on(n, log, &in_set, &removed).total;
    RareDestruction {
        removed: count,
        budget: initial.budget_ceil,
        remaining,
        removed_rounds: removed
            .iter()
            .enumerate()
            .filter(|(_, &x)| x)
            .map(|(i, _)| log[i].round)
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub degeneracy: usize,
    /// Colour of each vertex, starting at 0.
    pub colors: Vec<u32>,
    pub color_count: usize,
}

/// Degeneracy by minimum-degree peeling with a bucket queue, then a greedy
/// colouring in reverse peeling order.
pub fn degeneracy_and_coloring(view: &SimpleView) -> Coloring {
    let n = view.n();
    if n == 0 {
        return Coloring {
            degeneracy: 0,
            colors: Vec::new(),
            color_count: 0,
        };
    }
    let mut deg: Vec<usize> = (0..n).map(|v| view.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    // vertices sorted by degree, with bucket starts and positions
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let c = *b;
        *b = start;
        start += c;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        vert[pos[v]] = v;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    let mut degeneracy = 0;
    let mut removed = vec![false; n];
    for i in 0..n {
        let v = vert[i];
        degeneracy = degeneracy.max(deg[v]);
        removed[v] = true;
        for &u in view.neighbors(v) {
            let u = u as usize;
            if removed[u] || deg[u] <= deg[v] {
                continue;
            }
            let du = deg[u];
            let pu = pos[u];
            let pw = bin[du];
            let w = vert[pw];
            if u != w {
                vert.swap(pu, pw);
                pos[u] = pw;
                pos[w] = pu;
            }
            bin[du] += 1;
            deg[u] -= 1;
        }
    }

    let mut colors = vec![u32::MAX; n];
    let mut used: Vec<usize> = Vec::new();
    let mut color_count = 0;
    for &v in vert.iter().rev() {
        used.clear();
        used.extend(
            view.neighbors(v)
                .iter()
                .map(|&u| colors[u as usize])
                .filter(|&c| c != u32::MAX)
                .map(|c| c as usize),
        );
        used.sort_unstable();
        used.dedup();
        let c = used
            .iter()
            .enumerate()
            .find(|&(i, &c)| i != c)
            .map_or(used.len(), |(i, _)| i);
        colors[v] = c as u32;
        color_count = color_count.max(c + 1);
    }
    Coloring {
        degeneracy,
        colors,
        color_count,
    }
}

/// True iff no edge joins two vertices of the same colour.
pub fn is_proper_coloring(view: &SimpleView, colors: &[u32]) -> bool {
    colors.len() == view.n() && view.edges().all(|(a, b)| colors[a] != colors[b])
}

/// `Σ_v 1 / (deg(v) + 1)`.
pub fn caro_wei(view: &SimpleView) -> f64 {
    (0..view.n())
        .map(|v| 1.0 / (view.degree(v) as f64 + 1.0))
        .sum()
}

fn check_limit(view: &SimpleView, limit: usize) -> Result<()> {
    if limit > 64 {
        return Err(Error::Config(format!("exact limit {limit} exceeds 64")));
    }
    if view.n() > limit {
        return Err(Error::Unsupported(format!(
            "exact solver limited to n <= {limit}, got n = {}; use the bounds instead",
            view.n()
        )));
    }
    Ok(())
}

fn adjacency_bits(view: &SimpleView, complement: bool) -> Vec<u64> {
    let n = view.n();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    (0..n)
        .map(|v| {
            let mut m = 0u64;
            for &u in view.neighbors(v) {
                m |= 1 << u;
            }
            if complement {
                !m & all & !(1 << v)
            } else {
                m
            }
        })
        .collect()
}

/// Branch and bound with greedy colouring bounds over bit sets.
fn max_clique_bits(adj: &[u64]) -> usize {
    fn expand(adj: &[u64], size: usize, cand: u64, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        // colour classes over cand; vertices in order of class number
        let mut order: Vec<(usize, usize)> = Vec::new();
        let mut rest = cand;
        let mut color = 0;
        while rest != 0 {
            color += 1;
            let mut avail = rest;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                avail &= !(1 << v);
                avail &= !adj[v];
                rest &= !(1 << v);
                order.push((v, color));
            }
        }
        let mut cand = cand;
        for &(v, c) in order.iter().rev() {
            if size + c <= *best {
                return;
            }
            expand(adj, size + 1, cand & adj[v], best);
            cand &= !(1 << v);
        }
    }
    let n = adj.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    expand(adj, 0, all, &mut best);
    best
}

pub fn exact_omega(view: &SimpleView) -> Result<usize> {
    exact_omega_with_limit(view, EXACT_LIMIT)
}

pub fn exact_omega_with_limit(view: &SimpleView, limit: usize) -> Result<usize> {
    check_limit(view, limit)?;
    Ok(max_clique_bits(&adjacency_bits(view, false)))
}

/// Independence number as the clique number of the complement.
pub fn exact_alpha(view: &SimpleView) -> Result<usize> {
    exact_alpha_with_limit(view, EXACT_LIMIT)
}

pub fn exact_alpha_with_limit(view: &SimpleView, limit: usize) -> Result<usize> {
    check_limit(view, limit)?;
    Ok(max_clique_bits(&adjacency_bits(view, true)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliqueCheck {
    pub vertices: Vec<VertexId>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub n: usize,
    pub rounds: u64,
    pub simple_edges: usize,
    pub loops: u64,
    pub clique: Option<CliqueCheck>,
    pub max_squares: u32,
    pub max_squares_vertex: VertexId,
    pub degeneracy: usize,
    pub coloring_size: usize,
    pub caro_wei: f64,
    pub rare_pairs: RarePairReport,
    pub exact_alpha: Option<usize>,
    pub exact_omega: Option<usize>,
}

/// Everything above for one finished run. Exact values are included when
/// `n <= exact_limit`.
pub fn metrics_report(
    state: &ProcessState,
    clique: Option<&[VertexId]>,
    exact_limit: usize,
) -> Result<MetricsReport> {
    let view = SimpleView::from_state(state);
    let coloring = degeneracy_and_coloring(&view);
    let (max_sq, argmax) = max_squares(state);
    let exact = view.n() <= exact_limit.min(64);
    Ok(MetricsReport {
        n: state.n(),
        rounds: state.rounds(),
        simple_edges: view.edge_count(),
        loops: state.loops(),
        clique: clique.map(|c| CliqueCheck {
            vertices: c.to_vec(),
            verified: verify_clique(&view, c),
        }),
        max_squares: max_sq,
        max_squares_vertex: argmax,
        degeneracy: coloring.degeneracy,
        coloring_size: coloring.color_count,
        caro_wei: caro_wei(&view),
        rare_pairs: count_rare_pairs_scan(state.n(), state.edge_log()),
        exact_alpha: if exact {
            Some(exact_alpha_with_limit(&view, exact_limit)?)
        } else {
            None
        },
        exact_omega: if exact {
            Some(exact_omega_with_limit(&view, exact_limit)?)
        } else {
            None
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{run, ProcessOptions, RngConfig, Strategy};
    use crate::strategies::CliqueGrowth;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rec(round: u64, s: u32, c: u32) -> RoundRecord {
        RoundRecord {
            round,
            square: VertexId::new(s),
            circle: VertexId::new(c),
        }
    }

    fn ids(v: &[u32]) -> Vec<VertexId> {
        v.iter().map(|&i| VertexId::new(i)).collect()
    }

    fn complete(n: u32) -> SimpleView {
        SimpleView::from_pairs(
            n as usize,
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))),
        )
    }

    fn cycle(n: u32) -> SimpleView {
        SimpleView::from_pairs(n as usize, (0..n).map(|a| (a, (a + 1) % n)))
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SimpleView {
        let mut pairs = Vec::new();
        for a in 0..n as u32 {
            for b in a + 1..n as u32 {
                if rng.random_bool(p) {
                    pairs.push((a, b));
                }
            }
        }
        SimpleView::from_pairs(n, pairs)
    }

    /// Largest clique by checking every subset.
    fn brute_omega(view: &SimpleView) -> usize {
        let n = view.n();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let ok = members
                .iter()
                .enumerate()
                .all(|(i, &a)| members[i + 1..].iter().all(|&b| view.has_edge(a, b)));
            if ok {
                best = size;
            }
        }
        best
    }

    fn brute_alpha(view: &SimpleView) -> usize {
        let n = view.n();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            if view
                .edges()
                .all(|(a, b)| mask >> a & 1 == 0 || mask >> b & 1 == 0)
            {
                best = size;
            }
        }
        best
    }

    /// Every (circle round, later square round) pair on the same vertex.
    fn brute_rare(n: usize, log: &[RoundRecord]) -> Vec<u64> {
        let mut counts = vec![0u64; n];
        for (i, a) in log.iter().enumerate() {
            for b in &log[i + 1..] {
                if a.circle == b.square {
                    counts[a.circle.index()] += 1;
                }
            }
        }
        counts
    }

    #[test]
    fn simple_view_drops_loops_and_duplicates() {
        let log = vec![rec(1, 0, 1), rec(2, 1, 0), rec(3, 2, 2), rec(4, 2, 0)];
        let v = SimpleView::from_records(3, &log);
        assert_eq!(v.edge_count(), 2);
        assert_eq!(v.neighbors(0), &[1, 2]);
        assert_eq!(v.neighbors(2), &[0]);
        assert!(!v.has_edge(2, 2));
    }

    #[test]
    fn clique_checks() {
        assert!(verify_clique(&cycle(3), &ids(&[0, 1, 2])));
        let path = SimpleView::from_pairs(3, [(0, 1), (1, 2)]);
        assert!(!verify_clique(&path, &ids(&[0, 1, 2])));
        assert!(!verify_clique(&path, &ids(&[1, 1])));
        assert!(!verify_clique(&path, &ids(&[5])));
        assert!(verify_clique(&path, &[]));
    }

    #[test]
    fn rare_pair_hand_trace() {
        let log = vec![rec(1, 0, 2), rec(2, 2, 0)];
        let r = count_rare_pairs_scan(3, &log);
        assert_eq!(r.per_vertex, vec![0, 0, 1]);
        let st = ProcessState::replay(3, &log).unwrap();
        assert_eq!(count_rare_pairs(&st).unwrap(), r);
        let empty = ProcessState::new(4, RngConfig::new(0)).unwrap();
        assert_eq!(count_rare_pairs(&empty).unwrap().total, 0);
    }

    /// Same pairs, credited to the square vertex of the earlier round.
    fn brute_rare_by_source(n: usize, log: &[RoundRecord]) -> Vec<u64> {
        let mut counts = vec![0u64; n];
        for (i, a) in log.iter().enumerate() {
            for b in &log[i + 1..] {
                if a.circle == b.square {
                    counts[a.square.index()] += 1;
                }
            }
        }
        counts
    }

    #[test]
    fn rare_pairs_by_source_hand_trace() {
        // round 1 puts a circle on 2 for square 0; round 2's square lands on 2
        let log = vec![rec(1, 0, 2), rec(2, 2, 0), rec(3, 2, 2)];
        let r = count_rare_pairs_by_source(3, &log);
        assert_eq!(r.per_vertex, vec![2, 0, 0]);
        assert_eq!(r.per_vertex, brute_rare_by_source(3, &log));
        assert_eq!(r.total, count_rare_pairs_scan(3, &log).total);
    }

    #[test]
    fn rare_pairs_need_timestamps() {
        let opts = ProcessOptions {
            track_square_times: false,
        };
        let st = ProcessState::with_options(4, RngConfig::new(0), opts).unwrap();
        assert!(matches!(count_rare_pairs(&st), Err(Error::Unsupported(_))));
    }

    #[test]
    fn rare_pairs_match_brute_force() {
        for seed in 0..10 {
            let n = 50;
            let mut st = ProcessState::new(n, RngConfig::new(seed)).unwrap();
            let mut s = CliqueGrowth::new(n);
            run(&mut st, &mut s, 2000).unwrap();
            let brute = brute_rare(n, st.edge_log());
            assert_eq!(count_rare_pairs(&st).unwrap().per_vertex, brute);
            assert_eq!(count_rare_pairs_scan(n, st.edge_log()).per_vertex, brute);
        }
    }

    #[test]
    fn destroy_on_every_two_edge_log() {
        for n in 1..=4u32 {
            for code in 0..n.pow(4) {
                let d: Vec<u32> = (0..4).map(|i| (code / n.pow(i)) % n).collect();
                let log = vec![rec(1, d[0], d[1]), rec(2, d[2], d[3])];
                let st = ProcessState::replay(n as usize, &log).unwrap();
                let all = ids(&(0..n).collect::<Vec<_>>());
                let before = count_rare_pairs(&st).unwrap();
                let out = destroy_rare_pairs(&st, &all);
                assert_eq!(out.remaining, 0);
                assert!(out.removed as u64 <= out.budget);
                if before.total == 0 {
                    assert_eq!(out.removed, 0);
                } else {
                    assert!((1..=2).contains(&out.removed));
                }
            }
        }
    }

    #[test]
    fn destroy_random_runs() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for seed in 0..20 {
            let n = 200;
            let mut st = ProcessState::new(n, RngConfig::new(seed)).unwrap();
            let mut s = CliqueGrowth::new(n);
            run(&mut st, &mut s, 3000).unwrap();
            let set: Vec<VertexId> = (0..n)
                .filter(|_| rng.random_bool(0.5))
                .map(VertexId::from_index)
                .collect();
            let out = destroy_rare_pairs(&st, &set);
            assert_eq!(out.remaining, 0);
            assert!(out.removed as u64 <= out.budget);
            assert_eq!(out.removed, out.removed_rounds.len());
        }
    }

    #[test]
    fn ceil_sqrt_values() {
        let want = [0, 1, 2, 2, 2, 3, 3, 3, 3, 3, 4];
        for (r, &w) in want.iter().enumerate() {
            assert_eq!(ceil_sqrt(r as u64), w);
        }
        assert_eq!(ceil_sqrt(1 << 40), 1 << 20);
        assert_eq!(ceil_sqrt((1 << 40) + 1), (1 << 20) + 1);
    }

    #[test]
    fn degeneracy_examples() {
        let empty = SimpleView::from_pairs(4, []);
        let c = degeneracy_and_coloring(&empty);
        assert_eq!((c.degeneracy, c.color_count), (0, 1));
        let k5 = degeneracy_and_coloring(&complete(5));
        assert_eq!((k5.degeneracy, k5.color_count), (4, 5));
        let c5 = degeneracy_and_coloring(&cycle(5));
        assert_eq!((c5.degeneracy, c5.color_count), (2, 3));
    }

    /// Degeneracy as the largest minimum degree over all induced subgraphs.
    fn brute_degeneracy(view: &SimpleView) -> usize {
        let n = view.n();
        (1u32..(1 << n))
            .map(|mask| {
                (0..n)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| {
                        view.neighbors(v)
                            .iter()
                            .filter(|&&u| mask >> u & 1 == 1)
                            .count()
                    })
                    .min()
                    .unwrap()
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn degeneracy_matches_subset_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let n = rng.random_range(1..=11);
            let p = rng.random_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let c = degeneracy_and_coloring(&g);
            assert_eq!(c.degeneracy, brute_degeneracy(&g));
            assert!(is_proper_coloring(&g, &c.colors));
            assert!(c.color_count <= c.degeneracy + 1);
        }
    }

    #[test]
    fn caro_wei_examples() {
        assert_eq!(caro_wei(&SimpleView::from_pairs(7, [])), 7.0);
        assert!((caro_wei(&complete(3)) - 1.0).abs() < 1e-15);
        let path = SimpleView::from_pairs(3, [(0, 1), (1, 2)]);
        assert!((caro_wei(&path) - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_omega(&complete(5)).unwrap(), 5);
        assert_eq!(exact_alpha(&complete(5)).unwrap(), 1);
        assert_eq!(exact_omega(&cycle(5)).unwrap(), 2);
        assert_eq!(exact_alpha(&cycle(5)).unwrap(), 2);
        assert_eq!(brute_alpha(&cycle(5)), 2);
        assert_eq!(exact_alpha(&SimpleView::from_pairs(0, [])).unwrap(), 0);
        let big = SimpleView::from_pairs(41, []);
        assert!(matches!(exact_alpha(&big), Err(Error::Unsupported(_))));
        assert_eq!(exact_alpha_with_limit(&big, 64).unwrap(), 41);
        assert!(matches!(
            exact_alpha_with_limit(&big, 65),
            Err(Error::Config(_))
        ));
        let full = SimpleView::from_pairs(64, [(0, 63)]);
        assert_eq!(exact_alpha_with_limit(&full, 64).unwrap(), 63);
    }

    #[test]
    fn exact_matches_subset_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..40 {
            let p = rng.random_range(0.1..0.9);
            let g = random_graph(&mut rng, 15, p);
            assert_eq!(exact_omega(&g).unwrap(), brute_omega(&g));
            assert_eq!(exact_alpha(&g).unwrap(), brute_alpha(&g));
        }
    }

    #[test]
    fn max_squares_reports_lowest_argmax() {
        let st = ProcessState::new(5, RngConfig::new(0)).unwrap();
        assert_eq!(max_squares(&st), (0, VertexId::new(0)));
        let st = ProcessState::replay(4, &[rec(1, 2, 0), rec(2, 1, 0), rec(3, 2, 1), rec(4, 1, 0)])
            .unwrap();
        assert_eq!(max_squares(&st), (2, VertexId::new(1)));
    }

    #[test]
    fn report_is_consistent() {
        let mut st = ProcessState::new(30, RngConfig::new(2)).unwrap();
        let mut s = CliqueGrowth::new(30);
        run(&mut st, &mut s, 60).unwrap();
        let rep = metrics_report(&st, Some(s.clique()), EXACT_LIMIT).unwrap();
        assert!(rep.clique.as_ref().unwrap().verified);
        assert!(rep.coloring_size <= rep.degeneracy + 1);
        assert!(rep.caro_wei <= rep.exact_alpha.unwrap() as f64 + 1e-9);
        assert!(rep.exact_omega.unwrap() >= s.clique().len());
        let json = serde_json::to_value(&rep).unwrap();
        assert!(json["rare_pairs"]["total"].is_u64());
        assert_eq!(s.name(), "alg1");
    }

    proptest! {
        #[test]
        fn simple_view_is_symmetric(pairs in prop::collection::vec((0u32..30, 0u32..30), 0..200)) {
            let v = SimpleView::from_pairs(30, pairs);
            for a in 0..30 {
                let nb = v.neighbors(a);
                prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
                for &b in nb {
                    prop_assert!(b as usize != a);
                    prop_assert!(v.has_edge(b as usize, a));
                }
            }
        }

        #[test]
        fn caro_wei_below_alpha(seed in 0u64..10_000, n in 1usize..=20, p in 0.05f64..0.95) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(&mut rng, n, p);
            prop_assert!(caro_wei(&g) <= exact_alpha(&g).unwrap() as f64 + 1e-9);
        }

        #[test]
        fn coloring_is_proper(seed in 0u64..10_000, n in 1usize..=60, p in 0.0f64..0.5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(&mut rng, n, p);
            let c = degeneracy_and_coloring(&g);
            prop_assert!(is_proper_coloring(&g, &c.colors));
            prop_assert!(c.color_count <= c.degeneracy + 1);
        }

        #[test]
        fn scan_and_timestamp_counts_agree(seq in prop::collection::vec((0u32..8, 0u32..8), 1..200)) {
            let log: Vec<_> = seq.iter().enumerate().map(|(i, &(s, c))| rec(i as u64 + 1, s, c)).collect();
            let st = ProcessState::replay(8, &log).unwrap();
            let brute = brute_rare(8, &log);
            prop_assert_eq!(&count_rare_pairs(&st).unwrap().per_vertex, &brute);
            prop_assert_eq!(&count_rare_pairs_scan(8, &log).per_vertex, &brute);
            prop_assert_eq!(count_rare_pairs_by_source(8, &log).per_vertex, brute_rare_by_source(8, &log));
        }
    }
}
