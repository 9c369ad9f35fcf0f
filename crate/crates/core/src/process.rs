//! The semi-random process itself.
//!
//! Every round a vertex (the *square*) is drawn uniformly at random and the
//! player answers with a vertex of its choice (the *circle*); the edge
//! square–circle is added to a multigraph that starts empty. Vertices are
//! 0-indexed: vertex `i` here is vertex `i + 1` in the usual `[n] = {1..n}`
//! notation. Rounds are 1-indexed.
//!
//! The engine keeps only counts and the oriented edge log. Loops and parallel
//! edges are stored as they happen; [`crate::metrics::SimpleView`] derives the
//! simple graph on demand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex of the process, in `[0, n)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(u32);

impl VertexId {
    pub const fn new(index: u32) -> Self {
        VertexId(index)
    }

    /// Panics if `index` does not fit in 32 bits.
    pub fn from_index(index: usize) -> Self {
        VertexId(u32::try_from(index).expect("vertex index exceeds u32"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn raw(self) -> u32 {
        self.0
    }

    /// `(self + 1) mod n`, the filler answer used by several strategies.
    #[inline]
    pub fn successor(self, n: usize) -> Self {
        VertexId::from_index((self.index() + 1) % n)
    }
}

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One round of the process: `square` arrived, the player put `circle`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: u64,
    pub square: VertexId,
    pub circle: VertexId,
}

impl RoundRecord {
    #[inline]
    pub fn is_loop(&self) -> bool {
        self.square == self.circle
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngConfig {
    pub seed: u64,
}

impl RngConfig {
    pub fn new(seed: u64) -> Self {
        RngConfig { seed }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ProcessOptions {
    /// Keep the per-vertex list of rounds at which squares landed. Needed for
    /// rare-pair counting; costs 8 bytes per round.
    pub track_square_times: bool,
}

impl Default for ProcessOptions {
    fn default() -> Self {
        ProcessOptions {
            track_square_times: true,
        }
    }
}

/// Evolving multigraph of one run.
#[derive(Clone, Debug)]
pub struct ProcessState {
    n: usize,
    seed: u64,
    rng: ChaCha8Rng,
    edge_log: Vec<RoundRecord>,
    squares: Vec<u32>,
    circles: Vec<u32>,
    degree: Vec<u32>,
    square_times: Option<Vec<Vec<u64>>>,
    loops: u64,
}

impl ProcessState {
    /// Empty graph on `n` vertices.
    pub fn new(n: usize, rng: RngConfig) -> Result<Self> {
        Self::with_options(n, rng, ProcessOptions::default())
    }

    pub fn with_options(n: usize, rng: RngConfig, options: ProcessOptions) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidArgument(format!("n = {n} exceeds u32 range")));
        }
        Ok(ProcessState {
            n,
            seed: rng.seed,
            rng: ChaCha8Rng::seed_from_u64(rng.seed),
            edge_log: Vec::new(),
            squares: vec![0; n],
            circles: vec![0; n],
            degree: vec![0; n],
            square_times: options.track_square_times.then(|| vec![Vec::new(); n]),
            loops: 0,
        })
    }

    /// Rebuilds a state from a recorded edge log. Rounds must be `1..=T` in
    /// order.
    pub fn replay(n: usize, records: &[RoundRecord]) -> Result<Self> {
        let mut state = ProcessState::new(n, RngConfig::new(0))?;
        state.edge_log.reserve(records.len());
        for (i, rec) in records.iter().enumerate() {
            let expected = i as u64 + 1;
            if rec.round != expected {
                return Err(Error::InvalidArgument(format!(
                    "edge log round {} found where {expected} was expected",
                    rec.round
                )));
            }
            state.apply_decision(rec.square, rec.circle)?;
        }
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of rounds played so far (`T`).
    pub fn rounds(&self) -> u64 {
        self.edge_log.len() as u64
    }

    pub fn edge_log(&self) -> &[RoundRecord] {
        &self.edge_log
    }

    pub fn squares(&self) -> &[u32] {
        &self.squares
    }

    pub fn circles(&self) -> &[u32] {
        &self.circles
    }

    /// Multigraph degree: squares plus circles, a loop counts twice.
    pub fn degree(&self) -> &[u32] {
        &self.degree
    }

    pub fn loops(&self) -> u64 {
        self.loops
    }

    pub fn tracks_square_times(&self) -> bool {
        self.square_times.is_some()
    }

    /// Rounds at which squares landed on `v`, increasing. `None` in
    /// low-memory mode.
    pub fn square_times(&self, v: VertexId) -> Option<&[u64]> {
        self.square_times
            .as_ref()
            .map(|st| st[v.index()].as_slice())
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() < self.n {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "vertex {v} out of range for n = {}",
                self.n
            )))
        }
    }

    /// Draws the next square uniformly from `[0, n)`. Graph counts are not
    /// touched.
    #[inline]
    pub fn draw_square(&mut self) -> VertexId {
        VertexId(self.rng.random_range(0..self.n as u32))
    }

    /// Adds the edge `square -> circle` as the next round.
    pub fn apply_decision(&mut self, square: VertexId, circle: VertexId) -> Result<RoundRecord> {
        self.check_vertex(square)?;
        self.check_vertex(circle)?;
        let round = self.rounds() + 1;
        let rec = RoundRecord {
            round,
            square,
            circle,
        };
        self.edge_log.push(rec);
        self.squares[square.index()] += 1;
        self.circles[circle.index()] += 1;
        self.degree[square.index()] += 1;
        self.degree[circle.index()] += 1;
        if square == circle {
            self.loops += 1;
        }
        if let Some(st) = self.square_times.as_mut() {
            st[square.index()].push(round);
        }
        Ok(rec)
    }

    /// Checks that the counters are exactly the tallies of the edge log.
    pub fn check_conservation(&self) -> bool {
        let t = self.rounds();
        let sq: u64 = self.squares.iter().map(|&x| x as u64).sum();
        let ci: u64 = self.circles.iter().map(|&x| x as u64).sum();
        let deg: u64 = self.degree.iter().map(|&x| x as u64).sum();
        if sq != t || ci != t || deg != 2 * t {
            return false;
        }
        let loops = self.edge_log.iter().filter(|r| r.is_loop()).count() as u64;
        if loops != self.loops {
            return false;
        }
        if let Some(st) = self.square_times.as_ref() {
            for (v, times) in st.iter().enumerate() {
                if times.len() != self.squares[v] as usize {
                    return false;
                }
                if times.windows(2).any(|w| w[0] >= w[1]) {
                    return false;
                }
            }
        }
        true
    }
}

/// What a strategy can prove about the graph it built.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A vertex set claimed to induce a complete graph. `completed_at` is
    /// the round in which the strategy's target order was reached, if any.
    Clique {
        vertices: Vec<VertexId>,
        completed_at: Option<u64>,
    },
    /// Outcome of the clique-partition strategy.
    Partition(PartitionCertificate),
    /// First part of a partition to complete its clique.
    FirstCompletion {
        round: u64,
        part: usize,
        vertices: Vec<VertexId>,
    },
    /// Histogram of multigraph degrees at the end of the run.
    DegreeProfile { counts: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionCertificate {
    pub parts: usize,
    pub part_size: usize,
    pub failed: usize,
    /// Upper bound on the independence number: one vertex from every
    /// completed part, every vertex from a failed one.
    pub alpha_upper: usize,
    /// Completion round of each part, `None` for failed parts.
    pub completed_at: Vec<Option<u64>>,
}

/// The player's decision rule.
///
/// `decide` sees the current graph read-only plus the square of the round and
/// answers the circle. Strategies keep whatever private memory they need.
pub trait Strategy {
    fn name(&self) -> String;

    fn decide(&mut self, state: &ProcessState, square: VertexId, round: u64) -> VertexId;

    /// Called after the engine applied the round's edge.
    fn observe(&mut self, _state: &ProcessState, _record: &RoundRecord) {}

    fn certificate(&self, _state: &ProcessState) -> Option<Certificate> {
        None
    }
}

impl<S: Strategy + ?Sized> Strategy for Box<S> {
    fn name(&self) -> String {
        (**self).name()
    }

    fn decide(&mut self, state: &ProcessState, square: VertexId, round: u64) -> VertexId {
        (**self).decide(state, square, round)
    }

    fn observe(&mut self, state: &ProcessState, record: &RoundRecord) {
        (**self).observe(state, record)
    }

    fn certificate(&self, state: &ProcessState) -> Option<Certificate> {
        (**self).certificate(state)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunOutcome {
    pub rounds: u64,
    pub certificate: Option<Certificate>,
}

/// Plays `rounds` rounds with squares drawn from the state's generator.
pub fn run<S: Strategy + ?Sized>(
    state: &mut ProcessState,
    strategy: &mut S,
    rounds: u64,
) -> Result<RunOutcome> {
    if rounds == 0 {
        return Err(Error::InvalidArgument(
            "round count must be at least 1".into(),
        ));
    }
    state.edge_log.reserve(rounds as usize);
    for _ in 0..rounds {
        let square = state.draw_square();
        play_round(state, strategy, square)?;
    }
    Ok(RunOutcome {
        rounds,
        certificate: strategy.certificate(state),
    })
}

/// Plays one round per entry of `squares` instead of drawing them. Used for
/// exhaustive small-instance checks and hand traces.
pub fn run_scripted<S: Strategy + ?Sized>(
    state: &mut ProcessState,
    strategy: &mut S,
    squares: &[VertexId],
) -> Result<RunOutcome> {
    for &square in squares {
        state.check_vertex(square)?;
        play_round(state, strategy, square)?;
    }
    Ok(RunOutcome {
        rounds: squares.len() as u64,
        certificate: strategy.certificate(state),
    })
}

#[inline]
fn play_round<S: Strategy + ?Sized>(
    state: &mut ProcessState,
    strategy: &mut S,
    square: VertexId,
) -> Result<()> {
    let round = state.rounds() + 1;
    let circle = strategy.decide(state, square, round);
    if circle.index() >= state.n {
        return Err(Error::StrategyFault {
            round,
            vertex: circle.raw() as u64,
            n: state.n,
        });
    }
    let rec = state.apply_decision(square, circle)?;
    strategy.observe(state, &rec);
    Ok(())
}
