//! Ages, profiles, bounds of hereditary classes and growth classification.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_code, code_from_packed, generic_code, BitWriter, Code, Layout};
use crate::catalog::{generate, CatalogSpec};
use crate::decomposition::monomorphic_partition;
use crate::error::{Error, Result};
use crate::kind::Kind;
use crate::structure::{natural_order, Structure};
use crate::subsets::{combinations, for_each_combination};

/// Exact counts `φ(0), φ(1), …, φ(N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileSeries {
    values: Vec<u64>,
}

impl ProfileSeries {
    pub fn new(values: Vec<u64>) -> Result<ProfileSeries> {
        match values.first() {
            None => Err(Error::InsufficientData("empty profile series".into())),
            Some(&1) => Ok(ProfileSeries { values }),
            Some(v) => Err(Error::InvalidArgument(format!("φ(0) must be 1, got {v}"))),
        }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Largest `n` covered.
    pub fn last(&self) -> usize {
        self.values.len() - 1
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "phi"]).expect("in-memory write");
        for (n, v) in self.values.iter().enumerate() {
            w.serialize((n, v)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii csv")
    }

    /// Parses `n,phi` rows; `n` must run through `0, 1, 2, …`.
    pub fn from_csv(text: &str) -> Result<ProfileSeries> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let headers = r
            .headers()
            .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        if headers.iter().collect::<Vec<_>>() != ["n", "phi"] {
            return Err(Error::InvalidArgument("csv header must be `n,phi`".into()));
        }
        let mut values = Vec::new();
        for (i, row) in r.deserialize::<(usize, u64)>().enumerate() {
            let (n, v) = row.map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
            if n != i {
                return Err(Error::InvalidArgument(format!("row {i} has n = {n}")));
            }
            values.push(v);
        }
        ProfileSeries::new(values)
    }
}

fn check_size(r: &Structure, n: usize) -> Result<()> {
    if n > r.n() {
        return Err(Error::InvalidArgument(format!(
            "size {n} exceeds the domain size {}",
            r.n()
        )));
    }
    Ok(())
}

/// Codes of the isomorphism types of `n`-element induced substructures.
pub fn age(r: &Structure, n: usize) -> Result<BTreeSet<Code>> {
    check_size(r, n)?;
    Ok(ages(r, n)?.pop().expect("level n present"))
}

/// `age(r, j)` for every `j <= n_max`.
///
/// Ordered structures are enumerated in one pass over increasing subsets,
/// extending the packed code by one block per added vertex.
pub fn ages(r: &Structure, n_max: usize) -> Result<Vec<BTreeSet<Code>>> {
    check_size(r, n_max)?;
    if r.is_ordered() {
        Ok(ordered_ages(r, n_max))
    } else {
        Ok(generic_ages(r, n_max))
    }
}

/// Like [`age`], but always with permutation-minimized codes.
pub fn age_generic(r: &Structure, n: usize) -> Result<BTreeSet<Code>> {
    check_size(r, n)?;
    Ok(generic_ages(r, n).pop().expect("level n present"))
}

pub fn profile_series(r: &Structure, n_max: usize) -> Result<ProfileSeries> {
    let levels = ages(r, n_max)?;
    ProfileSeries::new(levels.iter().map(|l| l.len() as u64).collect())
}

pub fn profile_series_generic(r: &Structure, n_max: usize) -> Result<ProfileSeries> {
    check_size(r, n_max)?;
    let levels = generic_ages(r, n_max);
    ProfileSeries::new(levels.iter().map(|l| l.len() as u64).collect())
}

fn generic_ages(r: &Structure, n_max: usize) -> Vec<BTreeSet<Code>> {
    let all: Vec<usize> = (0..r.n()).collect();
    (0..=n_max)
        .map(|j| {
            combinations(&all, j)
                .par_iter()
                .map(|s| generic_code(&r.induced_sorted(s)))
                .collect::<HashSet<Code>>()
                .into_iter()
                .collect()
        })
        .collect()
}

// Subsets are grown in order, so adding a vertex appends exactly one block.
struct OrderedDfs<'a> {
    r: &'a Structure,
    layout: &'a Layout,
    order: &'a [usize],
    n_max: usize,
    labels: Vec<usize>,
    bits: BitWriter,
    buf: Vec<usize>,
    seen: Vec<HashSet<Vec<u8>>>,
}

impl OrderedDfs<'_> {
    fn push(&mut self, v: usize) {
        let p = self.labels.len();
        self.labels.push(v);
        let bits = &mut self.bits;
        self.layout
            .write_block(self.r, &self.labels, p, &mut self.buf, |b| bits.push(b));
    }

    fn record(&mut self) {
        let level = &mut self.seen[self.labels.len()];
        if !level.contains(self.bits.bytes()) {
            level.insert(self.bits.bytes().to_vec());
        }
    }

    fn run(&mut self, next: usize) {
        self.record();
        if self.labels.len() == self.n_max {
            return;
        }
        for i in next..self.order.len() {
            let mark = self.bits.len();
            self.push(self.order[i]);
            self.run(i + 1);
            self.labels.pop();
            self.bits.truncate(mark);
        }
    }
}

fn ordered_ages(r: &Structure, n_max: usize) -> Vec<BTreeSet<Code>> {
    let layout = Layout::new(r.signature(), n_max, true);
    let order = r.vertices_in_order();
    let all: Vec<usize> = (0..order.len()).collect();
    let depth = n_max.min(3);
    let fresh = || OrderedDfs {
        r,
        layout: &layout,
        order: &order,
        n_max,
        labels: Vec::new(),
        bits: BitWriter::default(),
        buf: Vec::new(),
        seen: vec![HashSet::new(); n_max + 1],
    };
    // shallow levels directly, deeper ones from every prefix of length `depth`
    let mut shallow = fresh();
    for j in 0..depth {
        for_each_combination(&all, j, |prefix| {
            for &i in prefix {
                shallow.push(order[i]);
            }
            shallow.record();
            shallow.labels.clear();
            shallow.bits.truncate(0);
            true
        });
    }
    let prefixes = combinations(&all, depth);
    let parts: Vec<Vec<HashSet<Vec<u8>>>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut dfs = fresh();
            for &i in prefix {
                dfs.push(order[i]);
            }
            dfs.run(prefix.last().map_or(0, |&i| i + 1));
            dfs.seen
        })
        .collect();
    let mut merged = shallow.seen;
    for part in parts {
        for (level, set) in merged.iter_mut().zip(part) {
            level.extend(set);
        }
    }
    merged
        .into_iter()
        .enumerate()
        .map(|(j, set)| {
            set.into_iter()
                .map(|bytes| code_from_packed(true, j, &bytes))
                .collect()
        })
        .collect()
}

/// Structures of `kind` on `n_old + 1` vertices restricting to `base` on the
/// first `n_old`; for ordered kinds the new vertex is the maximum.
fn extensions(kind: Kind, base: &Structure) -> Vec<Structure> {
    let n_old = base.n();
    let v = n_old;
    let sig = kind.signature();
    // each slot is a group of tuples switched on together
    let mut slots: Vec<(usize, Vec<[usize; 2]>)> = Vec::new();
    let first = usize::from(kind.is_ordered());
    for rel in first..sig.len() {
        let loops_only = matches!(kind, Kind::OrderedLoops(_));
        let loops = matches!(kind, Kind::Binary | Kind::OrderedBinary | Kind::OrderedLoops(_));
        let symmetric = matches!(kind, Kind::Graph | Kind::OrderedGraph);
        if loops {
            slots.push((rel, vec![[v, v]]));
        }
        if loops_only {
            continue;
        }
        for u in 0..n_old {
            if symmetric {
                slots.push((rel, vec![[u, v], [v, u]]));
            } else {
                slots.push((rel, vec![[u, v]]));
                slots.push((rel, vec![[v, u]]));
            }
        }
    }
    assert!(slots.len() < 32, "too many extension slots");
    let mut out = Vec::with_capacity(1 << slots.len());
    for mask in 0u32..(1u32 << slots.len()) {
        let mut relations: Vec<Vec<Vec<usize>>> = base.relations().to_vec();
        if kind.is_ordered() {
            relations[0] = natural_order(n_old + 1);
        }
        for (i, (rel, tuples)) in slots.iter().enumerate() {
            if mask >> i & 1 == 1 {
                relations[*rel].extend(tuples.iter().map(|t| t.to_vec()));
            }
        }
        out.push(
            Structure::new(sig.clone(), n_old + 1, relations, kind.is_ordered())
                .expect("extension of a valid structure"),
        );
    }
    out
}

fn empty_structure(kind: Kind) -> Structure {
    let sig = kind.signature();
    Structure::new(sig.clone(), 0, vec![Vec::new(); sig.len()], kind.is_ordered())
        .expect("empty structure")
}

fn check_kind_compatible(kind: Kind, s: &Structure) -> Result<()> {
    let sig = kind.signature();
    if *s.signature() != sig {
        return Err(Error::SignatureMismatch {
            left: sig.arities().to_vec(),
            right: s.signature().arities().to_vec(),
        });
    }
    if s.is_ordered() != kind.is_ordered() {
        return Err(Error::InvalidArgument(format!(
            "structure ordered flag does not match kind {kind}"
        )));
    }
    Ok(())
}

// Whether some subset through the last vertex has a code in `codes`.
fn hits_through_last(s: &Structure, codes: &BTreeMap<usize, HashSet<Code>>) -> bool {
    let last = s.n() - 1;
    let old: Vec<usize> = (0..last).collect();
    codes.iter().any(|(&size, set)| {
        size >= 1
            && size <= s.n()
            && !for_each_combination(&old, size - 1, |rest| {
                let mut a = rest.to_vec();
                a.push(last);
                !set.contains(&canonical_code(&s.induced_sorted(&a)))
            })
    })
}

/// Representatives of the members of `Forb(bounds)` within `kind`, size by size.
pub fn forb_levels(bounds: &[Structure], kind: Kind, n_max: usize) -> Result<Vec<Vec<Structure>>> {
    if bounds.is_empty() {
        return Err(Error::InvalidArgument("no bounds given".into()));
    }
    let mut by_size: BTreeMap<usize, HashSet<Code>> = BTreeMap::new();
    for b in bounds {
        check_kind_compatible(kind, b)?;
        by_size.entry(b.n()).or_default().insert(canonical_code(b));
    }
    let mut levels = vec![if by_size.contains_key(&0) {
        Vec::new()
    } else {
        vec![empty_structure(kind)]
    }];
    for _ in 1..=n_max {
        let prev = levels.last().expect("nonempty");
        let found: BTreeMap<Code, Structure> = prev
            .par_iter()
            .flat_map_iter(|s| extensions(kind, s))
            .filter(|e| !hits_through_last(e, &by_size))
            .map(|e| (canonical_code(&e), e))
            .collect();
        levels.push(found.into_values().collect());
    }
    Ok(levels)
}

/// Number of `n`-element structures of `kind`, up to isomorphism, embedding no bound.
pub fn forb_profile(bounds: &[Structure], kind: Kind, n: usize) -> Result<u64> {
    Ok(forb_levels(bounds, kind, n)?[n].len() as u64)
}

fn deletion_codes(s: &Structure) -> impl Iterator<Item = Code> + '_ {
    (0..s.n()).map(move |v| {
        let rest: Vec<usize> = (0..s.n()).filter(|&u| u != v).collect();
        canonical_code(&s.induced_sorted(&rest))
    })
}

/// Minimal non-members of size at most `n_max` of the hereditary class whose
/// members of size `j` have codes `age_codes[j]`.
pub fn bounds_up_to(age_codes: &[BTreeSet<Code>], kind: Kind, n_max: usize) -> Result<BTreeSet<Code>> {
    if age_codes.len() <= n_max {
        return Err(Error::InsufficientData(format!(
            "code sets given up to size {}, bounds requested up to {n_max}",
            age_codes.len() as isize - 1
        )));
    }
    let sig = kind.signature();
    let mut members: Vec<Vec<Structure>> = Vec::with_capacity(n_max + 1);
    for (j, level) in age_codes.iter().take(n_max + 1).enumerate() {
        let mut decoded = Vec::with_capacity(level.len());
        for c in level {
            if c.n() != j {
                return Err(Error::InvalidArgument(format!("code of size {} at level {j}", c.n())));
            }
            if c.is_ordered() != kind.is_ordered() {
                return Err(Error::InvalidArgument(format!("code flag does not match kind {kind}")));
            }
            let s = c.decode(&sig)?;
            if j > 0 && deletion_codes(&s).any(|d| !age_codes[j - 1].contains(&d)) {
                return Err(Error::NotHereditary(format!(
                    "a member of size {j} has a one-point deletion missing at size {}",
                    j - 1
                )));
            }
            decoded.push(s);
        }
        members.push(decoded);
    }
    if members[0].is_empty() {
        return Err(Error::NotHereditary("the empty structure is missing".into()));
    }
    let mut out = BTreeSet::new();
    for j in 1..=n_max {
        let found: BTreeSet<Code> = members[j - 1]
            .par_iter()
            .flat_map_iter(|s| extensions(kind, s))
            .filter_map(|e| {
                let c = canonical_code(&e);
                let minimal = !age_codes[j].contains(&c)
                    && deletion_codes(&e).all(|d| age_codes[j - 1].contains(&d));
                minimal.then_some(c)
            })
            .collect();
        out.extend(found);
    }
    Ok(out)
}

/// Coefficients `a_j(r)` of `φ(n) = Σ_j a_j(n mod p) n^j` on the tail `n >= tail_start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomialFit {
    pub degree: usize,
    pub period: usize,
    pub tail_start: usize,
    /// `coefficients[r][j]` multiplies `n^j` when `n ≡ r (mod period)`.
    pub coefficients: Vec<Vec<BigRational>>,
    /// Sum of absolute deviations over the tail.
    pub residual: BigRational,
    /// Tail points per residue class beyond those used for interpolation.
    pub checked: Vec<usize>,
}

impl QuasiPolynomialFit {
    /// Zero residual with every residue class checked at least once.
    pub fn is_exact(&self) -> bool {
        self.residual.is_zero() && self.checked.iter().all(|&c| c > 0)
    }

    pub fn eval(&self, n: usize) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(n));
        let mut acc = BigRational::zero();
        for a in self.coefficients[n % self.period].iter().rev() {
            acc = acc * &x + a;
        }
        acc
    }
}

// Gaussian elimination on an invertible system.
fn solve(mut m: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Vec<BigRational> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("Vandermonde systems are invertible");
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = &m[r][col] / &m[col][col];
                for c in col..n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
                let delta = &factor * &rhs[col];
                rhs[r] -= delta;
            }
        }
    }
    (0..n).map(|i| &rhs[i] / &m[i][i]).collect()
}

pub fn fit_quasi_polynomial(
    series: &ProfileSeries,
    degree: usize,
    period: usize,
    tail_start: usize,
) -> Result<QuasiPolynomialFit> {
    if period == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    let values = series.values();
    let big = |v: u64| BigRational::from_integer(BigInt::from(v));
    let mut coefficients = Vec::with_capacity(period);
    let mut checked = Vec::with_capacity(period);
    for r in 0..period {
        let points: Vec<usize> = (tail_start..values.len()).filter(|n| n % period == r).collect();
        if points.len() < degree + 1 {
            return Err(Error::InsufficientData(format!(
                "residue {r} mod {period} has {} tail points, degree {degree} needs {}",
                points.len(),
                degree + 1
            )));
        }
        let used = &points[..=degree];
        let matrix = used
            .iter()
            .map(|&n| {
                let x = BigRational::from_integer(BigInt::from(n));
                let mut row = Vec::with_capacity(degree + 1);
                let mut pow = BigRational::from_integer(BigInt::from(1));
                for _ in 0..=degree {
                    row.push(pow.clone());
                    pow *= &x;
                }
                row
            })
            .collect();
        let rhs = used.iter().map(|&n| big(values[n])).collect();
        coefficients.push(solve(matrix, rhs));
        checked.push(points.len() - degree - 1);
    }
    let mut fit = QuasiPolynomialFit {
        degree,
        period,
        tail_start,
        coefficients,
        residual: BigRational::zero(),
        checked,
    };
    let residual = (tail_start..values.len())
        .map(|n| (fit.eval(n) - big(values[n])).abs())
        .fold(BigRational::zero(), |a, b| a + b);
    fit.residual = residual;
    Ok(fit)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthKind {
    QuasiPolynomial,
    Exponential,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthVerdict {
    pub kind: GrowthKind,
    pub degree: Option<usize>,
    pub period: Option<usize>,
    /// Least ratio `φ(n+1)/φ(n)` over the examined window.
    pub ratio: Option<f64>,
    /// `φ(n+2) >= φ(n+1) + φ(n)` on the examined window.
    pub fibonacci_dominance: bool,
    pub diagnostics: Vec<String>,
}

/// Search limits for [`classify_growth`].
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthConfig {
    pub d_max: usize,
    pub p_max: usize,
    /// Defaults to half the series length.
    pub tail_start: Option<usize>,
    pub min_len: usize,
    pub ratio_threshold: f64,
}

impl Default for GrowthConfig {
    fn default() -> Self {
        GrowthConfig {
            d_max: 3,
            p_max: 4,
            tail_start: None,
            min_len: 5,
            ratio_threshold: 1.3,
        }
    }
}

pub fn classify_growth(series: &ProfileSeries, config: &GrowthConfig) -> GrowthVerdict {
    let values = series.values();
    let last = series.last();
    let mut verdict = GrowthVerdict {
        kind: GrowthKind::Inconclusive,
        degree: None,
        period: None,
        ratio: None,
        fibonacci_dominance: false,
        diagnostics: Vec::new(),
    };
    if values.len() < config.min_len {
        verdict
            .diagnostics
            .push(format!("series has {} values, need {}", values.len(), config.min_len));
        return verdict;
    }
    let window = 4.max(last / 3);
    if window <= last {
        let from = last - window;
        verdict.fibonacci_dominance = (from..last.saturating_sub(1))
            .all(|n| values[n + 2] >= values[n + 1] + values[n]);
        if values[from..last].iter().all(|&v| v > 0) {
            let r = (from..last)
                .map(|n| values[n + 1] as f64 / values[n] as f64)
                .fold(f64::INFINITY, f64::min);
            verdict.ratio = Some(r);
        }
    }
    let tail = config.tail_start.unwrap_or(last / 2);
    for d in 0..=config.d_max {
        for p in 1..=config.p_max {
            match fit_quasi_polynomial(series, d, p, tail) {
                Ok(fit) if fit.is_exact() => {
                    verdict.kind = GrowthKind::QuasiPolynomial;
                    verdict.degree = Some(d);
                    verdict.period = Some(p);
                    verdict
                        .diagnostics
                        .push(format!("exact fit from n = {tail}, checks per residue {:?}", fit.checked));
                    return verdict;
                }
                Ok(fit) => verdict.diagnostics.push(format!(
                    "d={d} p={p}: residual {}",
                    fit.residual.to_f64().unwrap_or(f64::NAN)
                )),
                Err(_) => {}
            }
        }
    }
    match verdict.ratio {
        Some(r) if r >= config.ratio_threshold => verdict.kind = GrowthKind::Exponential,
        Some(r) => verdict
            .diagnostics
            .push(format!("tail ratio {r:.4} below {}", config.ratio_threshold)),
        None => verdict
            .diagnostics
            .push(format!("no ratio window of length {window}")),
    }
    verdict
}

/// Component count of a prefix against the fitted degree of its profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub components: usize,
    pub series: ProfileSeries,
    pub verdict: GrowthVerdict,
    pub expected_degree: usize,
    pub agrees: bool,
}

pub fn infinite_component_degree_check(spec: &CatalogSpec, k: usize, n_max: usize) -> Result<DegreeReport> {
    let r = generate(&spec.resized(k))?;
    let components = monomorphic_partition(&r)?.len();
    let series = profile_series(&r, n_max)?;
    let verdict = classify_growth(&series, &GrowthConfig::default());
    let expected_degree = components.saturating_sub(1);
    let agrees = verdict.kind == GrowthKind::QuasiPolynomial && verdict.degree == Some(expected_degree);
    Ok(DegreeReport {
        components,
        series,
        verdict,
        expected_degree,
        agrees,
    })
}
