//! Player strategies.
//!
//! * [`CliqueGrowth`]: grow a clique one vertex at a time; the `j`-th square
//!   on an outside vertex is joined to the `j`-th clique vertex.
//! * [`Circulant`] / [`CirculantStrategy`]: fix `k` target vertices and join
//!   the `j`-th square on target `i` to target `i + j (mod k)`.
//! * [`PartitionStrategy`]: run a circulant on every block of a partition of
//!   the vertex set.
//! * [`GreedyMinDegree`]: always put the circle on a minimum-degree vertex.
//! * [`offline_place`] / [`run_offline`]: the same greedy rule with every
//!   circle placed after all squares are known.

use crate::bounds;
use crate::error::{Error, Result};
use crate::process::{
    Certificate, PartitionCertificate, ProcessState, RoundRecord, RunOutcome, Strategy, VertexId,
};

const NONE: u32 = u32::MAX;

/// Answers the same vertex every round.
#[derive(Debug, Clone)]
pub struct ConstantStrategy(pub VertexId);

impl Strategy for ConstantStrategy {
    fn name(&self) -> String {
        format!("constant:{}", self.0)
    }

    fn decide(&mut self, _: &ProcessState, _: VertexId, _: u64) -> VertexId {
        self.0
    }
}

/// Clique growth.
///
/// The first round creates an edge `u₁ – (u₁ + 1 mod n)`, the initial `K₂`.
/// Afterwards a square on an outside vertex carrying `s` earlier squares is
/// joined to clique vertex `s + 1`; when that was the last clique vertex the
/// square's vertex joins the clique. Squares on clique vertices get the
/// filler answer `square + 1 mod n`.
#[derive(Debug, Clone)]
pub struct CliqueGrowth {
    n: usize,
    clique: Vec<VertexId>,
    in_clique: Vec<bool>,
    /// Round at which the clique reached each order (index 0 is order 1).
    reached_at: Vec<u64>,
    target: Option<usize>,
}

impl CliqueGrowth {
    pub fn new(n: usize) -> Self {
        CliqueGrowth {
            n,
            clique: Vec::new(),
            in_clique: vec![false; n],
            reached_at: Vec::new(),
            target: None,
        }
    }

    /// Stops growing once the clique has `order` vertices.
    pub fn with_target(n: usize, order: usize) -> Self {
        let mut s = Self::new(n);
        s.target = Some(order);
        s
    }

    pub fn clique(&self) -> &[VertexId] {
        &self.clique
    }

    pub fn order(&self) -> usize {
        self.clique.len()
    }

    /// Round at which order `k` was reached.
    pub fn reached_at(&self, k: usize) -> Option<u64> {
        k.checked_sub(1)
            .and_then(|i| self.reached_at.get(i).copied())
    }

    fn finished(&self) -> bool {
        self.target.is_some_and(|k| self.clique.len() >= k)
    }

    fn push(&mut self, v: VertexId, round: u64) {
        self.in_clique[v.index()] = true;
        self.clique.push(v);
        self.reached_at.push(round);
    }

    /// Checks that every outside vertex with `s` squares has its squares
    /// joined to the first `s` clique vertices, in order. Only meaningful
    /// while the target order has not been reached.
    pub fn check_phase_invariant(&self, state: &ProcessState) -> bool {
        let mut seen = vec![0usize; self.n];
        for rec in state.edge_log() {
            let v = rec.square.index();
            if self.in_clique[v] {
                continue;
            }
            let j = seen[v];
            if self.clique.get(j) != Some(&rec.circle) {
                return false;
            }
            seen[v] += 1;
        }
        true
    }
}

impl Strategy for CliqueGrowth {
    fn name(&self) -> String {
        "alg1".into()
    }

    fn decide(&mut self, state: &ProcessState, square: VertexId, round: u64) -> VertexId {
        if self.clique.is_empty() {
            let partner = square.successor(self.n);
            self.push(square, round);
            if partner != square {
                self.push(partner, round);
            }
            return partner;
        }
        if self.in_clique[square.index()] || self.finished() {
            return square.successor(self.n);
        }
        let s = state.squares()[square.index()] as usize;
        let order = self.clique.len();
        debug_assert!(s < order);
        let circle = self.clique[s];
        if s + 1 == order {
            self.push(square, round);
        }
        circle
    }

    fn certificate(&self, _: &ProcessState) -> Option<Certificate> {
        Some(Certificate::Clique {
            vertices: self.clique.clone(),
            completed_at: self.target.and_then(|k| self.reached_at(k)),
        })
    }
}

/// Circulant clique construction on a fixed, ordered target list.
///
/// For odd order `m` every target needs `(m - 1) / 2` squares; for even `m`
/// the first `m / 2` targets need `m / 2` and the rest `m / 2 - 1`. The
/// `j`-th square (within its need) on target `i` is joined to target
/// `i + j mod m`, which covers every unordered pair exactly once.
#[derive(Debug, Clone)]
pub struct Circulant {
    targets: Vec<VertexId>,
    counts: Vec<u32>,
    remaining: usize,
    completed_at: Option<u64>,
}

impl Circulant {
    pub fn new(targets: Vec<VertexId>) -> Self {
        let m = targets.len();
        let remaining = (0..m).filter(|&i| Self::need_of(m, i) > 0).count();
        Circulant {
            counts: vec![0; m],
            remaining,
            completed_at: (remaining == 0).then_some(0),
            targets,
        }
    }

    fn need_of(m: usize, i: usize) -> u32 {
        if m % 2 == 1 {
            ((m - 1) / 2) as u32
        } else if i < m / 2 {
            (m / 2) as u32
        } else {
            (m / 2 - 1) as u32
        }
    }

    /// Squares target `pos` must receive.
    pub fn need(&self, pos: usize) -> u32 {
        Self::need_of(self.targets.len(), pos)
    }

    pub fn order(&self) -> usize {
        self.targets.len()
    }

    pub fn targets(&self) -> &[VertexId] {
        &self.targets
    }

    pub fn square_counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn completed_at(&self) -> Option<u64> {
        self.completed_at
    }

    pub fn is_complete(&self) -> bool {
        self.completed_at.is_some()
    }

    /// Records a square on target `pos`; returns the circle, or `None` when
    /// the square is surplus.
    pub fn on_square(&mut self, pos: usize, round: u64) -> Option<VertexId> {
        let m = self.targets.len();
        let need = self.need(pos);
        self.counts[pos] += 1;
        let j = self.counts[pos];
        if j > need {
            return None;
        }
        if j == need {
            self.remaining -= 1;
            if self.remaining == 0 {
                self.completed_at = Some(round);
            }
        }
        Some(self.targets[(pos + j as usize) % m])
    }
}

/// A single circulant over chosen targets; non-target and surplus squares
/// get the filler answer `square + 1 mod n`.
#[derive(Debug, Clone)]
pub struct CirculantStrategy {
    n: usize,
    name: &'static str,
    circ: Circulant,
    slot: Vec<u32>,
}

impl CirculantStrategy {
    /// Targets `0, 1, …, 2ℓ` (a `K_{2ℓ+1}`).
    pub fn new(n: usize, half: usize) -> Result<Self> {
        let k = 2 * half + 1;
        if k > n {
            return Err(Error::Config(format!(
                "circulant of order {k} does not fit into n = {n}"
            )));
        }
        Self::with_targets(n, (0..k).map(VertexId::from_index).collect())
    }

    pub fn with_targets(n: usize, targets: Vec<VertexId>) -> Result<Self> {
        let mut slot = vec![NONE; n];
        for (i, t) in targets.iter().enumerate() {
            let s = slot
                .get_mut(t.index())
                .ok_or_else(|| Error::Config(format!("target {t} out of range for n = {n}")))?;
            if *s != NONE {
                return Err(Error::Config(format!("target {t} listed twice")));
            }
            *s = i as u32;
        }
        Ok(CirculantStrategy {
            n,
            name: "alg2",
            circ: Circulant::new(targets),
            slot,
        })
    }

    /// The round-robin construction for `t ≥ ω n log n`: order
    /// `min(k, n)` with `k = (2t/n)(1 - ω^{-1/3})` rounded down to an odd
    /// integer.
    pub fn round_robin(n: usize, t: u64) -> Result<Self> {
        let b = bounds::very_large_t_bounds(n, t)?;
        let mut k = b.k.floor().max(1.0) as usize;
        if k < n && k.is_multiple_of(2) {
            k -= 1;
        }
        let k = k.min(n);
        let mut s = Self::with_targets(n, (0..k).map(VertexId::from_index).collect())?;
        s.name = "obs2";
        Ok(s)
    }

    pub fn circulant(&self) -> &Circulant {
        &self.circ
    }
}

impl Strategy for CirculantStrategy {
    fn name(&self) -> String {
        self.name.into()
    }

    fn decide(&mut self, _: &ProcessState, square: VertexId, round: u64) -> VertexId {
        let pos = self.slot[square.index()];
        if pos != NONE {
            if let Some(c) = self.circ.on_square(pos as usize, round) {
                return c;
            }
        }
        square.successor(self.n)
    }

    fn certificate(&self, _: &ProcessState) -> Option<Certificate> {
        Some(Certificate::Clique {
            vertices: self.circ.targets.clone(),
            completed_at: self.circ.completed_at,
        })
    }
}

/// Circulants on consecutive blocks `[ik, (i+1)k)` of the vertex set. The
/// last block may be smaller and runs a circulant of its own order.
#[derive(Debug, Clone)]
pub struct PartitionStrategy {
    n: usize,
    part_size: usize,
    parts: Vec<Circulant>,
    first_only: bool,
}

impl PartitionStrategy {
    /// Part size `2⌈ℓ⌉ + 1` with `ℓ = λ - √(5λ log λ)`, `λ = t/n`.
    pub fn new(n: usize, t: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        let ell = bounds::partition_ell(t as f64 / n as f64)?;
        Self::with_part_size(n, 2 * ell.ceil() as usize + 1)
    }

    pub fn with_part_size(n: usize, part_size: usize) -> Result<Self> {
        if part_size == 0 || n == 0 {
            return Err(Error::Config("part size and n must be positive".into()));
        }
        let parts = (0..n)
            .step_by(part_size)
            .map(|start| {
                let end = (start + part_size).min(n);
                Circulant::new((start..end).map(VertexId::from_index).collect())
            })
            .collect();
        Ok(PartitionStrategy {
            n,
            part_size,
            parts,
            first_only: false,
        })
    }

    /// Same routing; the certificate reports the first completed part.
    pub fn first_success(mut self) -> Self {
        self.first_only = true;
        self
    }

    pub fn part_size(&self) -> usize {
        self.part_size
    }

    pub fn parts(&self) -> &[Circulant] {
        &self.parts
    }

    pub fn part_of(&self, v: VertexId) -> usize {
        v.index() / self.part_size
    }

    pub fn failed(&self) -> usize {
        self.parts.iter().filter(|p| !p.is_complete()).count()
    }

    /// `#parts + (k - 1) · #failed`.
    pub fn alpha_upper(&self) -> usize {
        self.parts.len() + (self.part_size - 1) * self.failed()
    }

    /// Earliest completed part as `(round, part)`, ties to the lower index.
    pub fn first_completion(&self) -> Option<(u64, usize)> {
        self.parts
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.completed_at().map(|r| (r, i)))
            .min()
    }
}

impl Strategy for PartitionStrategy {
    fn name(&self) -> String {
        if self.first_only {
            "partition-first".into()
        } else {
            "partition".into()
        }
    }

    fn decide(&mut self, _: &ProcessState, square: VertexId, round: u64) -> VertexId {
        let v = square.index();
        let part = v / self.part_size;
        let pos = v % self.part_size;
        self.parts[part]
            .on_square(pos, round)
            .unwrap_or_else(|| square.successor(self.n))
    }

    fn certificate(&self, _: &ProcessState) -> Option<Certificate> {
        if self.first_only {
            return self
                .first_completion()
                .map(|(round, part)| Certificate::FirstCompletion {
                    round,
                    part,
                    vertices: self.parts[part].targets.clone(),
                });
        }
        Some(Certificate::Partition(PartitionCertificate {
            parts: self.parts.len(),
            part_size: self.part_size,
            failed: self.failed(),
            alpha_upper: self.alpha_upper(),
            completed_at: self.parts.iter().map(|p| p.completed_at()).collect(),
        }))
    }
}

/// Circle on a minimum-degree vertex, lowest index first, avoiding the
/// square's own vertex when another minimum-degree vertex exists.
///
/// Buckets are kept as per-degree counts over the engine's degree array. The
/// minimum bucket only loses members, so the lowest-index member is found
/// with a cursor that moves forward within a phase: O(n) per phase, O(1)
/// amortised per round since there are at most `2λ + 1` phases.
#[derive(Debug, Clone)]
pub struct GreedyMinDegree {
    bucket: Vec<u64>,
    min: usize,
    cursor: usize,
}

impl GreedyMinDegree {
    pub fn new(n: usize) -> Self {
        GreedyMinDegree {
            bucket: vec![n as u64],
            min: 0,
            cursor: 0,
        }
    }

    /// Starts from whatever graph `state` already holds.
    pub fn from_state(state: &ProcessState) -> Self {
        let mut bucket = Vec::new();
        for &d in state.degree() {
            let d = d as usize;
            if bucket.len() <= d {
                bucket.resize(d + 1, 0);
            }
            bucket[d] += 1;
        }
        let min = bucket.iter().position(|&c| c > 0).unwrap_or(0);
        GreedyMinDegree {
            bucket,
            min,
            cursor: 0,
        }
    }

    pub fn min_degree(&self) -> usize {
        self.min
    }

    /// Vertices per degree value.
    pub fn buckets(&self) -> &[u64] {
        &self.bucket
    }

    fn shift(&mut self, from: usize, to: usize) {
        if self.bucket.len() <= to {
            self.bucket.resize(to + 1, 0);
        }
        self.bucket[from] -= 1;
        self.bucket[to] += 1;
    }
}

impl Strategy for GreedyMinDegree {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn decide(&mut self, state: &ProcessState, square: VertexId, _: u64) -> VertexId {
        let deg = state.degree();
        let q = self.min as u32;
        while deg[self.cursor] != q {
            self.cursor += 1;
        }
        let first = self.cursor;
        if first == square.index() && self.bucket[self.min] > 1 {
            let next = (first + 1..deg.len())
                .find(|&v| deg[v] == q)
                .expect("bucket count says another minimum vertex exists");
            return VertexId::from_index(next);
        }
        VertexId::from_index(first)
    }

    fn observe(&mut self, state: &ProcessState, rec: &RoundRecord) {
        let deg = state.degree();
        if rec.is_loop() {
            let d = deg[rec.square.index()] as usize;
            self.shift(d - 2, d);
        } else {
            for v in [rec.square, rec.circle] {
                let d = deg[v.index()] as usize;
                self.shift(d - 1, d);
            }
        }
        while self.bucket[self.min] == 0 {
            self.min += 1;
            self.cursor = 0;
        }
    }

    fn certificate(&self, state: &ProcessState) -> Option<Certificate> {
        Some(Certificate::DegreeProfile {
            counts: degree_histogram(state.degree()),
        })
    }
}

/// `counts[d]` = number of vertices of degree `d`.
pub fn degree_histogram(degree: &[u32]) -> Vec<u64> {
    let max = degree.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0u64; max + 1];
    for &d in degree {
        counts[d as usize] += 1;
    }
    counts
}

/// Final degrees after placing `circles` circles one at a time on a current
/// minimum-degree vertex (lowest index first), starting from degree =
/// `squares[v]`.
///
/// Computed level by level: with `m` the highest level every vertex can be
/// raised to, each vertex below `m` is lifted to `m` and the leftover
/// circles go to the lowest-index vertices at level `m`.
pub fn offline_place(squares: &[u32], circles: u64) -> Vec<u32> {
    let n = squares.len();
    if n == 0 {
        return Vec::new();
    }
    let max_sq = squares.iter().copied().max().unwrap_or(0) as usize;
    let mut hist = vec![0u64; max_sq + 1];
    for &s in squares {
        hist[s as usize] += 1;
    }
    // cost(m + 1) = cost(m) + #{v : squares[v] <= m}
    let mut m = 0usize;
    let mut cost = 0u64;
    let mut at_or_below = hist[0];
    loop {
        let next = cost + at_or_below;
        if next > circles {
            break;
        }
        cost = next;
        m += 1;
        at_or_below += hist.get(m).copied().unwrap_or(0);
    }
    let mut extra = circles - cost;
    squares
        .iter()
        .map(|&s| {
            if (s as usize) <= m {
                let bump = if extra > 0 {
                    extra -= 1;
                    1
                } else {
                    0
                };
                m as u32 + bump
            } else {
                s
            }
        })
        .collect()
}

/// Offline variant: draws `rounds` squares, then places every circle with
/// [`offline_place`] and writes the rounds into `state`.
pub fn run_offline(state: &mut ProcessState, rounds: u64) -> Result<RunOutcome> {
    if rounds == 0 {
        return Err(Error::InvalidArgument(
            "round count must be at least 1".into(),
        ));
    }
    let n = state.n();
    let drawn: Vec<VertexId> = (0..rounds).map(|_| state.draw_square()).collect();
    let mut sq = state.squares().to_vec();
    let mut deg = state.degree().to_vec();
    for v in &drawn {
        sq[v.index()] += 1;
        deg[v.index()] += 1;
    }
    let target = offline_place(&deg, rounds);
    let mut circles = Vec::with_capacity(rounds as usize);
    for v in 0..n {
        for _ in deg[v]..target[v] {
            circles.push(VertexId::from_index(v));
        }
    }
    debug_assert_eq!(circles.len() as u64, rounds);
    for (square, circle) in drawn.into_iter().zip(circles) {
        state.apply_decision(square, circle)?;
    }
    Ok(RunOutcome {
        rounds,
        certificate: Some(Certificate::DegreeProfile {
            counts: degree_histogram(state.degree()),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{verify_clique, SimpleView};
    use crate::process::{run, run_scripted, RngConfig};

    fn v(i: u32) -> VertexId {
        VertexId::new(i)
    }

    fn squares(seq: &[u32]) -> Vec<VertexId> {
        seq.iter().map(|&i| v(i)).collect()
    }

    #[test]
    fn clique_growth_first_moves() {
        let mut st = ProcessState::new(10, RngConfig::new(0)).unwrap();
        let mut s = CliqueGrowth::new(10);
        run_scripted(&mut st, &mut s, &squares(&[4])).unwrap();
        assert_eq!(s.clique(), &[v(4), v(5)]);
        // outside vertex with no squares goes to v1
        let c = s.decide(&st, v(7), 2);
        assert_eq!(c, v(4));
        st.apply_decision(v(7), c).unwrap();
        // second square on it goes to v2 and promotes it
        let c = s.decide(&st, v(7), 3);
        assert_eq!(c, v(5));
        st.apply_decision(v(7), c).unwrap();
        assert_eq!(s.order(), 3);
        assert_eq!(s.clique()[2], v(7));
        // clique square gets filler
        assert_eq!(s.decide(&st, v(5), 4), v(6));
    }

    #[test]
    fn clique_growth_hand_trace_n4() {
        // square 1 lands on the bootstrap partner: filler moves only
        let mut st = ProcessState::new(4, RngConfig::new(0)).unwrap();
        let mut s = CliqueGrowth::new(4);
        run_scripted(&mut st, &mut s, &squares(&[0, 1, 1])).unwrap();
        assert_eq!(s.clique(), &[v(0), v(1)]);
        let circles: Vec<_> = st.edge_log().iter().map(|r| r.circle).collect();
        assert_eq!(circles, vec![v(1), v(2), v(2)]);
        assert!(verify_clique(&SimpleView::from_state(&st), s.clique()));

        // two squares on an outside vertex close a triangle
        let mut st = ProcessState::new(4, RngConfig::new(0)).unwrap();
        let mut s = CliqueGrowth::new(4);
        run_scripted(&mut st, &mut s, &squares(&[0, 2, 2])).unwrap();
        assert_eq!(s.clique(), &[v(0), v(1), v(2)]);
        assert_eq!(s.reached_at(3), Some(3));
        assert!(verify_clique(&SimpleView::from_state(&st), s.clique()));
        assert!(s.check_phase_invariant(&st));
    }

    #[test]
    fn clique_growth_single_vertex() {
        let mut st = ProcessState::new(1, RngConfig::new(0)).unwrap();
        let mut s = CliqueGrowth::new(1);
        run(&mut st, &mut s, 5).unwrap();
        assert_eq!(s.clique(), &[v(0)]);
    }

    #[test]
    fn clique_growth_random_runs_keep_invariants() {
        for seed in 0..20 {
            let n = 300;
            let mut st = ProcessState::new(n, RngConfig::new(seed)).unwrap();
            let mut s = CliqueGrowth::new(n);
            let mut phase_ends = 0;
            for _ in 0..2000 {
                let sq = st.draw_square();
                let before = s.order();
                let round = st.rounds() + 1;
                let c = s.decide(&st, sq, round);
                st.apply_decision(sq, c).unwrap();
                if round > 1 && s.order() > before {
                    phase_ends += 1;
                }
            }
            assert!(s.check_phase_invariant(&st));
            let view = SimpleView::from_state(&st);
            assert!(verify_clique(&view, s.clique()));
            assert_eq!(s.order(), 2 + phase_ends);
        }
    }

    #[test]
    fn clique_growth_stops_at_target() {
        let mut st = ProcessState::new(50, RngConfig::new(1)).unwrap();
        let mut s = CliqueGrowth::with_target(50, 4);
        let out = run(&mut st, &mut s, 5000).unwrap();
        assert_eq!(s.order(), 4);
        match out.certificate {
            Some(Certificate::Clique { completed_at, .. }) => assert!(completed_at.is_some()),
            other => panic!("unexpected {other:?}"),
        }
    }

    /// Every unordered pair of targets gets exactly one circulant edge.
    fn pair_coverage(m: usize) {
        let targets: Vec<_> = (0..m as u32).map(v).collect();
        let mut c = Circulant::new(targets);
        let mut seen = std::collections::HashMap::new();
        let mut round = 0;
        for pos in 0..m {
            for _ in 0..c.need(pos) {
                round += 1;
                let circle = c.on_square(pos, round).unwrap();
                let key = (pos.min(circle.index()), pos.max(circle.index()));
                assert_ne!(key.0, key.1);
                *seen.entry(key).or_insert(0) += 1;
            }
        }
        assert!(c.is_complete());
        assert_eq!(seen.len(), m * (m - 1) / 2);
        assert!(seen.values().all(|&x| x == 1));
        assert_eq!(c.on_square(0, round + 1), None);
    }

    #[test]
    fn circulant_covers_pairs_once() {
        for m in 2..40 {
            pair_coverage(m);
        }
    }

    #[test]
    fn circulant_half_two() {
        let mut st = ProcessState::new(5, RngConfig::new(0)).unwrap();
        let mut s = CirculantStrategy::new(5, 2).unwrap();
        // j-th square on v0 → v1, v2
        assert_eq!(s.decide(&st, v(0), 1), v(1));
        st.apply_decision(v(0), v(1)).unwrap();
        assert_eq!(s.decide(&st, v(0), 2), v(2));
        st.apply_decision(v(0), v(2)).unwrap();
        // third square is surplus
        assert_eq!(s.decide(&st, v(0), 3), v(1));
        st.apply_decision(v(0), v(1)).unwrap();
        let mut round = 4;
        for t in 1..5u32 {
            for _ in 0..2 {
                let c = s.decide(&st, v(t), round);
                st.apply_decision(v(t), c).unwrap();
                round += 1;
            }
        }
        assert_eq!(s.circulant().completed_at(), Some(round - 1));
        let view = SimpleView::from_state(&st);
        assert!(verify_clique(&view, s.circulant().targets()));
    }

    #[test]
    fn circulant_non_target_gets_filler() {
        let st = ProcessState::new(10, RngConfig::new(0)).unwrap();
        let mut s = CirculantStrategy::new(10, 1).unwrap();
        assert_eq!(s.decide(&st, v(6), 1), v(7));
        assert_eq!(s.decide(&st, v(9), 2), v(0));
        assert!(s.circulant().square_counts().iter().all(|&c| c == 0));
    }

    #[test]
    fn circulant_triangle_all_sequences_n3() {
        // every sequence of length 5 over 3 vertices; completion happens
        // exactly when each vertex has a square, and then it is a triangle
        for code in 0..3u32.pow(5) {
            let seq: Vec<u32> = (0..5).map(|i| (code / 3u32.pow(i)) % 3).collect();
            let mut st = ProcessState::new(3, RngConfig::new(0)).unwrap();
            let mut s = CirculantStrategy::new(3, 1).unwrap();
            run_scripted(&mut st, &mut s, &squares(&seq)).unwrap();
            let first_all = (1..=seq.len()).find(|&r| (0..3).all(|x| seq[..r].contains(&x)));
            assert_eq!(s.circulant().completed_at(), first_all.map(|r| r as u64));
            if first_all.is_some() {
                assert!(verify_clique(
                    &SimpleView::from_state(&st),
                    &[v(0), v(1), v(2)]
                ));
            }
        }
    }

    #[test]
    fn round_robin_is_circulant_on_prefix() {
        let n = 1000;
        let t = (10.0 * n as f64 * (n as f64).ln()) as u64;
        let s = CirculantStrategy::round_robin(n, t).unwrap();
        let k = s.circulant().order();
        assert_eq!(k % 2, 1);
        let b = bounds::very_large_t_bounds(n, t).unwrap();
        assert!(k as f64 <= b.k && b.k < k as f64 + 2.0);
        assert_eq!(s.circulant().targets()[0], v(0));
    }

    #[test]
    fn partition_routing() {
        let mut p = PartitionStrategy::with_part_size(10, 5).unwrap();
        assert_eq!(p.parts().len(), 2);
        assert_eq!(p.part_of(v(7)), 1);
        let st = ProcessState::new(10, RngConfig::new(0)).unwrap();
        // square on 7 (position 2 in part 1) goes to position 3 of part 1
        assert_eq!(p.decide(&st, v(7), 1), v(8));
        assert_eq!(p.parts()[1].square_counts()[2], 1);
        assert_eq!(p.parts()[0].square_counts().iter().sum::<u32>(), 0);
    }

    #[test]
    fn partition_certificate_counts() {
        let n = 10;
        let mut st = ProcessState::new(n, RngConfig::new(0)).unwrap();
        let mut p = PartitionStrategy::with_part_size(n, 5).unwrap();
        // complete part 1 only
        let seq: Vec<u32> = (5..10).flat_map(|x| [x, x]).collect();
        let out = run_scripted(&mut st, &mut p, &squares(&seq)).unwrap();
        match out.certificate.unwrap() {
            Certificate::Partition(c) => {
                assert_eq!(c.parts, 2);
                assert_eq!(c.failed, 1);
                assert_eq!(c.alpha_upper, 2 + 4);
                assert_eq!(c.completed_at, vec![None, Some(10)]);
            }
            other => panic!("{other:?}"),
        }
        let mut first = PartitionStrategy::with_part_size(n, 5)
            .unwrap()
            .first_success();
        let mut st = ProcessState::new(n, RngConfig::new(0)).unwrap();
        let out = run_scripted(&mut st, &mut first, &squares(&seq)).unwrap();
        assert_eq!(
            out.certificate,
            Some(Certificate::FirstCompletion {
                round: 10,
                part: 1,
                vertices: (5..10).map(v).collect()
            })
        );
        let mut st = ProcessState::new(n, RngConfig::new(0)).unwrap();
        let mut first = PartitionStrategy::with_part_size(n, 5)
            .unwrap()
            .first_success();
        assert_eq!(
            run_scripted(&mut st, &mut first, &squares(&[0, 1]))
                .unwrap()
                .certificate,
            None
        );
    }

    #[test]
    fn partition_remainder_is_complete_clique() {
        // n = 16, k = 5: last part has a single vertex; n = 18: last part has 3
        for n in [16usize, 17, 18, 19] {
            let mut st = ProcessState::new(n, RngConfig::new(n as u64)).unwrap();
            let mut p = PartitionStrategy::with_part_size(n, 5).unwrap();
            run(&mut st, &mut p, 2000).unwrap();
            let view = SimpleView::from_state(&st);
            for part in p.parts() {
                assert!(part.is_complete());
                assert!(verify_clique(&view, part.targets()));
            }
        }
    }

    /// First round at which some part induces a clique, found by rebuilding
    /// the simple graph after every round.
    fn first_clique_round(n: usize, k: usize, st: &ProcessState) -> Option<(u64, usize)> {
        let log = st.edge_log();
        for r in 1..=log.len() {
            let prefix = ProcessState::replay(n, &log[..r]).unwrap();
            let view = SimpleView::from_state(&prefix);
            for (i, start) in (0..n).step_by(k).enumerate() {
                let members: Vec<_> = (start..(start + k).min(n))
                    .map(VertexId::from_index)
                    .collect();
                if verify_clique(&view, &members) {
                    return Some((r as u64, i));
                }
            }
        }
        None
    }

    #[test]
    fn first_completion_matches_exhaustive_oracle() {
        // n = 15 split into parts of 3: all 15^4 square sequences
        let n = 15;
        for code in 0..15u32.pow(4) {
            let seq: Vec<u32> = (0..4).map(|i| (code / 15u32.pow(i)) % 15).collect();
            let mut st = ProcessState::new(n, RngConfig::new(0)).unwrap();
            let mut p = PartitionStrategy::with_part_size(n, 3)
                .unwrap()
                .first_success();
            run_scripted(&mut st, &mut p, &squares(&seq)).unwrap();
            let got = p.first_completion();
            // only check sequences that touch a whole part; others must be None
            let oracle = if seq.len() >= 3 {
                first_clique_round(n, 3, &st)
            } else {
                None
            };
            assert_eq!(got, oracle, "{seq:?}");
        }
    }

    #[test]
    fn first_completion_matches_oracle_part_size_five() {
        let n = 15;
        for seed in 0..200 {
            let mut st = ProcessState::new(n, RngConfig::new(seed)).unwrap();
            let mut p = PartitionStrategy::with_part_size(n, 5)
                .unwrap()
                .first_success();
            run(&mut st, &mut p, 40).unwrap();
            assert_eq!(
                p.first_completion(),
                first_clique_round(n, 5, &st),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn partition_needs_positive_ell() {
        assert!(matches!(
            PartitionStrategy::new(100, 500),
            Err(Error::Config(_))
        ));
        let p = PartitionStrategy::new(10_000, 500_000).unwrap();
        assert_eq!(p.part_size(), 39);
        assert_eq!(p.parts().len(), 257);
    }

    #[test]
    fn greedy_tie_breaks() {
        let st = ProcessState::new(3, RngConfig::new(0)).unwrap();
        let mut g = GreedyMinDegree::new(3);
        assert_eq!(g.decide(&st, v(1), 1), v(0));
        assert_eq!(g.decide(&st, v(0), 1), v(1));

        let mut st = ProcessState::new(3, RngConfig::new(0)).unwrap();
        st.apply_decision(v(0), v(1)).unwrap();
        st.apply_decision(v(0), v(2)).unwrap();
        assert_eq!(st.degree(), &[2, 1, 1]);
        let mut g = GreedyMinDegree::from_state(&st);
        assert_eq!(g.min_degree(), 1);
        assert_eq!(g.decide(&st, v(2), 3), v(1));
        assert_eq!(g.decide(&st, v(1), 3), v(2));
    }

    #[test]
    fn greedy_loop_only_when_forced() {
        let mut st = ProcessState::new(2, RngConfig::new(0)).unwrap();
        st.apply_decision(v(0), v(0)).unwrap();
        let mut g = GreedyMinDegree::from_state(&st);
        // vertex 1 is the unique minimum: a square on it must loop
        assert_eq!(g.decide(&st, v(1), 2), v(1));
        let rec = st.apply_decision(v(1), v(1)).unwrap();
        g.observe(&st, &rec);
        assert_eq!(g.buckets()[2], 2);
        assert_eq!(g.min_degree(), 2);
    }

    struct Checked(GreedyMinDegree);

    impl Strategy for Checked {
        fn name(&self) -> String {
            "checked".into()
        }
        fn decide(&mut self, st: &ProcessState, sq: VertexId, r: u64) -> VertexId {
            let c = self.0.decide(st, sq, r);
            let min = *st.degree().iter().min().unwrap();
            assert_eq!(st.degree()[c.index()], min);
            let lowest = st.degree().iter().position(|&d| d == min).unwrap();
            if lowest != sq.index() {
                assert_eq!(c.index(), lowest);
            }
            c
        }
        fn observe(&mut self, st: &ProcessState, rec: &RoundRecord) {
            self.0.observe(st, rec);
            assert_eq!(
                self.0.buckets()[..],
                degree_histogram(st.degree())[..self.0.buckets().len()]
            );
            assert_eq!(
                self.0.min_degree() as u32,
                *st.degree().iter().min().unwrap()
            );
        }
    }

    #[test]
    fn greedy_buckets_track_engine() {
        for seed in 0..10 {
            let n = 200;
            let mut st = ProcessState::new(n, RngConfig::new(seed)).unwrap();
            let mut g = Checked(GreedyMinDegree::new(n));
            run(&mut st, &mut g, 1500).unwrap();
            assert!(st.check_conservation());
        }
    }

    #[test]
    fn offline_place_examples() {
        assert_eq!(offline_place(&[3, 0, 0], 3), vec![3, 2, 1]);
        assert_eq!(offline_place(&[2, 2, 2, 2], 8), vec![4, 4, 4, 4]);
        assert_eq!(offline_place(&[0, 0], 0), vec![0, 0]);
        assert_eq!(offline_place(&[], 0), Vec::<u32>::new());
    }

    /// One circle at a time, lowest-index minimum.
    fn greedy_one_by_one(squares: &[u32], circles: u64) -> Vec<u32> {
        let mut d = squares.to_vec();
        for _ in 0..circles {
            let min = *d.iter().min().unwrap();
            let i = d.iter().position(|&x| x == min).unwrap();
            d[i] += 1;
        }
        d
    }

    /// Minimum achievable maximum degree over every placement.
    fn best_max_degree(squares: &[u32], circles: u64) -> u32 {
        fn rec(d: &mut Vec<u32>, left: u64, from: usize) -> u32 {
            if left == 0 {
                return *d.iter().max().unwrap();
            }
            let mut best = u32::MAX;
            for i in from..d.len() {
                d[i] += 1;
                best = best.min(rec(d, left - 1, i));
                d[i] -= 1;
            }
            best
        }
        rec(&mut squares.to_vec(), circles, 0)
    }

    #[test]
    fn offline_place_exhaustive_small() {
        for n in 1..=6usize {
            for t in 0..=6u64 {
                // every square distribution of t squares on n vertices
                let mut stack = vec![(vec![0u32; n], 0usize, t)];
                while let Some((sq, from, left)) = stack.pop() {
                    if left == 0 {
                        let placed = offline_place(&sq, t);
                        assert_eq!(placed, greedy_one_by_one(&sq, t), "{sq:?}");
                        assert_eq!(*placed.iter().max().unwrap(), best_max_degree(&sq, t));
                        continue;
                    }
                    for i in from..n {
                        let mut next = sq.clone();
                        next[i] += 1;
                        stack.push((next, i, left - 1));
                    }
                }
            }
        }
    }

    #[test]
    fn offline_run_conserves() {
        let mut st = ProcessState::new(1000, RngConfig::new(3)).unwrap();
        run_offline(&mut st, 1000).unwrap();
        assert!(st.check_conservation());
        assert_eq!(st.degree(), &offline_place(st.squares(), 1000)[..]);
    }
}
