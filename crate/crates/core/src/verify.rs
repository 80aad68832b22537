//! Seeded property suites over random structures.
//!
//! Each suite draws its samples from a ChaCha stream seeded by the caller and
//! reports the number of violations together with a description of the first
//! few.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::decomposition::{
    components_via_oracle, equivalence_partition, level_partition, monomorphic_partition,
    threshold_for, Equivalence, Partition,
};
use crate::error::{Error, Result};
use crate::kind::Kind;
use crate::morphism::is_interval;
use crate::profile::{profile_series, profile_series_generic};
use crate::structure::{natural_order, Structure};

const MAX_DETAILS: usize = 5;

/// Draws a structure of `kind` on `n` vertices: half of the time with
/// independent tuples at a random density, otherwise a blow-up of a random
/// quotient (uniform blocks, uniform connections) with a few flipped tuples.
pub fn sample(kind: Kind, n: usize, rng: &mut impl Rng) -> Structure {
    let ordered = kind.is_ordered();
    let loops = matches!(kind, Kind::Binary | Kind::OrderedBinary);
    let symmetric = matches!(kind, Kind::Graph | Kind::OrderedGraph);
    let mut m = vec![vec![false; n]; n];
    if rng.gen_bool(0.5) {
        let density = rng.gen_range(0.1..0.9);
        for (u, row) in m.iter_mut().enumerate() {
            for (v, cell) in row.iter_mut().enumerate() {
                *cell = rng.gen_bool(density);
                if u == v && !loops {
                    *cell = false;
                }
            }
        }
    } else {
        let blocks = rng.gen_range(1..=n.max(1));
        let block_of: Vec<usize> = if ordered {
            let mut cuts: Vec<usize> = (1..n).filter(|_| rng.gen_ratio(blocks as u32, n as u32)).collect();
            cuts.push(n);
            let mut b = 0;
            (0..n)
                .map(|v| {
                    while v >= cuts[b] {
                        b += 1;
                    }
                    b
                })
                .collect()
        } else {
            (0..n).map(|_| rng.gen_range(0..blocks)).collect()
        };
        let count = block_of.iter().max().map_or(0, |&b| b + 1);
        let bits = |rng: &mut ChaCha8Rng, len: usize| -> Vec<bool> { (0..len).map(|_| rng.gen()).collect() };
        let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
        let loop_bit = bits(&mut local, count);
        let forward = bits(&mut local, count);
        let backward = bits(&mut local, count);
        let between = bits(&mut local, count * count);
        for u in 0..n {
            for v in 0..n {
                let (a, b) = (block_of[u], block_of[v]);
                m[u][v] = if u == v {
                    loops && loop_bit[a]
                } else if a == b {
                    // within a block only the order may break symmetry
                    if ordered && u > v {
                        backward[a]
                    } else {
                        forward[a]
                    }
                } else {
                    between[a * count + b]
                };
            }
        }
        for _ in 0..rng.gen_range(0..=2) {
            if n > 0 {
                let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if u != v || loops {
                    m[u][v] = !m[u][v];
                }
            }
        }
    }
    if symmetric {
        for u in 0..n {
            for v in 0..u {
                m[u][v] = m[v][u];
            }
        }
    }
    let mut tuples = Vec::new();
    for (u, row) in m.iter().enumerate() {
        for (v, &cell) in row.iter().enumerate() {
            if cell {
                tuples.push(vec![u, v]);
            }
        }
    }
    let relations = if ordered {
        vec![natural_order(n), tuples]
    } else {
        vec![tuples]
    };
    Structure::new(kind.signature(), n, relations, ordered).expect("sampled structure is valid")
}

/// A tournament: exactly one arc between any two distinct vertices.
pub fn sample_tournament(n: usize, rng: &mut impl Rng) -> Structure {
    let mut tuples = Vec::new();
    let blocks = rng.gen_range(1..=n.max(1));
    let block_of: Vec<usize> = (0..n).map(|_| rng.gen_range(0..blocks)).collect();
    let structured = rng.gen_bool(0.5);
    let mut orient = vec![vec![false; blocks]; blocks];
    for a in 0..blocks {
        for b in (a + 1)..blocks {
            orient[a][b] = rng.gen();
            orient[b][a] = !orient[a][b];
        }
    }
    for u in 0..n {
        for v in (u + 1)..n {
            let forward = if structured && block_of[u] != block_of[v] {
                orient[block_of[u]][block_of[v]]
            } else if structured {
                true
            } else {
                rng.gen()
            };
            tuples.push(if forward { vec![u, v] } else { vec![v, u] });
        }
    }
    Structure::new(Kind::Digraph.signature(), n, vec![tuples], false).expect("tournament is valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Equivalence classes against the brute-force block oracle.
    Lemma2,
    /// `≃_{≤t}` equals `≃_R` at the registered thresholds.
    Lemma3,
    /// Single-level `≃_k` equals `≃_{≤k}` once `n >= 2k+1`.
    Lemma3Level,
    /// Classes of size at least 3 of ordered structures are intervals.
    Lemma4,
    /// Intervals inside one `≃_{≤1}` class lie inside one component.
    Lemma4Converse,
    /// Two classes whose union is an interval are separated by a singleton.
    Lemma5,
    /// Block counts of `≃_{≤2}` and `≃_{≤3}` on tournaments (reported only).
    Tournament,
    /// Ordered profile counting against permutation-minimized codes.
    Consistency,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Lemma2,
        Suite::Lemma3,
        Suite::Lemma3Level,
        Suite::Lemma4,
        Suite::Lemma4Converse,
        Suite::Lemma5,
        Suite::Tournament,
        Suite::Consistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma2 => "lemma2",
            Suite::Lemma3 => "lemma3",
            Suite::Lemma3Level => "lemma3_level",
            Suite::Lemma4 => "lemma4",
            Suite::Lemma4Converse => "lemma4_converse",
            Suite::Lemma5 => "lemma5",
            Suite::Tournament => "tournament",
            Suite::Consistency => "consistency",
        }
    }

    /// Default largest domain size.
    pub fn default_n(self) -> usize {
        match self {
            Suite::Lemma2 => 7,
            Suite::Lemma3 => 13,
            Suite::Lemma3Level => 10,
            Suite::Lemma4 | Suite::Lemma4Converse | Suite::Lemma5 => 9,
            Suite::Tournament => 12,
            Suite::Consistency => 8,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub samples: usize,
    pub violations: usize,
    /// Whether the suite asserts anything; reporting suites always pass.
    pub asserts: bool,
    pub details: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Settings of one suite run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub samples: usize,
    /// Largest domain size; suites with fixed ranges clamp to them.
    pub n: usize,
    pub seed: u64,
}

// Outcome of one sample: None when it holds, a description otherwise.
type Check = Result<Option<String>>;

fn run_samples(
    suite: Suite,
    config: &SuiteConfig,
    asserts: bool,
    check: impl Fn(usize, &mut ChaCha8Rng) -> Check + Sync,
) -> Result<SuiteReport> {
    let mut master = ChaCha8Rng::seed_from_u64(config.seed);
    let seeds: Vec<u64> = (0..config.samples).map(|_| master.gen()).collect();
    let outcomes: Vec<Option<String>> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| check(i, &mut ChaCha8Rng::seed_from_u64(s)))
        .collect::<Result<_>>()?;
    let failures: Vec<String> = outcomes.into_iter().flatten().collect();
    let violations = if asserts { failures.len() } else { 0 };
    Ok(SuiteReport {
        suite,
        samples: config.samples,
        violations,
        asserts,
        details: failures.into_iter().take(if asserts { MAX_DETAILS } else { usize::MAX }).collect(),
    })
}

fn mismatch(what: &str, s: &Structure, left: &Partition, right: &Partition) -> Option<String> {
    (left != right).then(|| {
        format!(
            "{what}: {:?} vs {:?} on {}",
            left.blocks(),
            right.blocks(),
            s.to_json()
        )
    })
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    let n = config.n;
    match suite {
        Suite::Lemma2 => run_samples(suite, config, true, |i, rng| {
            let kind = [Kind::Graph, Kind::Digraph, Kind::Binary, Kind::OrderedGraph, Kind::OrderedBinary][i % 5];
            let s = sample(kind, rng.gen_range(1..=n.max(1)), rng);
            let left = monomorphic_partition(&s)?;
            let right = components_via_oracle(&s)?;
            Ok(mismatch("components vs oracle", &s, &left, &right))
        }),
        Suite::Lemma3 => run_samples(suite, config, true, |i, rng| {
            let (kind, lo, hi) = match i % 7 {
                0..=3 => (Kind::OrderedGraph, 5, 13),
                4 | 5 => (Kind::Digraph, 7, 13),
                _ => (Kind::Binary, 13, 15),
            };
            let size = rng.gen_range(lo..=hi.min(n.max(lo)));
            let s = sample(kind, size, rng);
            let t = threshold_for(kind)?.min(size - 2);
            let left = equivalence_partition(&s, t)?;
            let right = monomorphic_partition(&s)?;
            Ok(mismatch(&format!("{kind} threshold {t}"), &s, &left, &right))
        }),
        Suite::Lemma3Level => run_samples(suite, config, true, |i, rng| {
            let k = 1 + i % 3;
            let lo = 2 * k + 1;
            let size = rng.gen_range(lo..=(lo + 3).min(n.max(lo)));
            let kind = [Kind::Graph, Kind::Digraph, Kind::Binary][i % 3];
            let s = sample(kind, size, rng);
            let right = equivalence_partition(&s, k)?;
            Ok(match level_partition(&s, k) {
                Ok(left) => mismatch(&format!("≃_{k} vs ≃_≤{k}"), &s, &left, &right),
                Err(e) => Some(format!("≃_{k}: {e} on {}", s.to_json())),
            })
        }),
        Suite::Lemma4 => run_samples(suite, config, true, |_, rng| {
            let s = sample(Kind::OrderedBinary, rng.gen_range(1..=n.max(1)), rng);
            let classes = monomorphic_partition(&s)?;
            for b in classes.blocks().iter().filter(|b| b.len() >= 3) {
                let contiguous = b.windows(2).all(|w| s.rank(w[1]) == s.rank(w[0]) + 1);
                if !is_interval(&s, b)? || !contiguous {
                    return Ok(Some(format!("class {b:?} is not an interval in {}", s.to_json())));
                }
            }
            Ok(None)
        }),
        Suite::Lemma4Converse => run_samples(suite, config, true, |_, rng| {
            let size = rng.gen_range(2..=n.max(2));
            let s = sample(Kind::OrderedBinary, size, rng);
            let one = equivalence_partition(&s, 1.min(size - 2))?;
            let classes = monomorphic_partition(&s)?;
            let order = s.vertices_in_order();
            for lo in 0..size {
                for hi in (lo + 2)..=size {
                    let range = &order[lo..hi];
                    let inside_one = range.iter().all(|&v| one.same_block(v, range[0]));
                    if inside_one && is_interval(&s, range)? && !range.iter().all(|&v| classes.same_block(v, range[0])) {
                        return Ok(Some(format!("interval {range:?} splits in {}", s.to_json())));
                    }
                }
            }
            Ok(None)
        }),
        Suite::Lemma5 => run_samples(suite, config, true, |_, rng| {
            let size = rng.gen_range(3..=n.max(3));
            let s = sample(Kind::OrderedBinary, size, rng);
            let classes = monomorphic_partition(&s)?;
            let eq = Equivalence::default();
            let blocks = classes.blocks();
            for a in 0..blocks.len() {
                for b in (a + 1)..blocks.len() {
                    let mut ranks: Vec<usize> = blocks[a].iter().chain(&blocks[b]).map(|&v| s.rank(v)).collect();
                    ranks.sort_unstable();
                    if ranks.windows(2).any(|w| w[1] != w[0] + 1) {
                        continue;
                    }
                    let separated = blocks[a].iter().any(|&x| {
                        blocks[b].iter().any(|&y| {
                            (0..size)
                                .filter(|&z| z != x && z != y)
                                .any(|z| !eq.f_equivalent_raw(&s, x, y, &[z]))
                        })
                    });
                    if !separated {
                        return Ok(Some(format!(
                            "classes {:?} and {:?} not separated by a singleton in {}",
                            blocks[a],
                            blocks[b],
                            s.to_json()
                        )));
                    }
                }
            }
            Ok(None)
        }),
        Suite::Tournament => run_samples(suite, config, false, |i, rng| {
            let size = 4 + i % (n.max(4) - 3);
            let t = sample_tournament(size, rng);
            let two = equivalence_partition(&t, 2)?.len();
            let three = equivalence_partition(&t, 3.min(size - 2))?.len();
            Ok(Some(format!("n={size} blocks(≤2)={two} blocks(≤3)={three}")))
        }),
        Suite::Consistency => run_samples(suite, config, true, |i, rng| {
            let kind = [Kind::OrderedGraph, Kind::OrderedDigraph, Kind::OrderedBinary][i % 3];
            let size = rng.gen_range(1..=n.max(1));
            let s = sample(kind, size, rng);
            let fast = profile_series(&s, size)?;
            let generic = profile_series_generic(&s, size)?;
            Ok((fast != generic).then(|| {
                format!("{:?} vs {:?} on {}", fast.values(), generic.values(), s.to_json())
            }))
        }),
    }
}
