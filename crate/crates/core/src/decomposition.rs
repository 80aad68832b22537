//! F-equivalence, k-equivalence and monomorphic components.
//!
//! `x ≃_F y` holds when the restrictions to `{x} ∪ F` and `{y} ∪ F` are
//! isomorphic; `≃_k` quantifies over all `k`-subsets `F` avoiding `x` and
//! `y`, `≃_{≤k}` over all sizes up to `k`. On a finite structure the full
//! relation `≃_R` is `≃_{≤ n-2}`, and its classes are the monomorphic
//! components. The brute-force block oracle at the end of this module checks
//! the defining property of a monomorphic block directly and shares nothing
//! with the equivalence machinery except the isomorphism test.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::for_each_word;
use crate::catalog::{generate, CatalogSpec};
use crate::error::{Error, Result};
use crate::kind::Kind;
use crate::morphism::isomorphic_unchecked;
use crate::structure::Structure;
use crate::subsets::for_each_combination;

/// A set partition of `{0..n-1}`, blocks sorted internally and by minimum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr", into = "PartitionRepr")]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionRepr {
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<PartitionRepr> for Partition {
    type Error = Error;
    fn try_from(r: PartitionRepr) -> Result<Self> {
        let n = r.blocks.iter().map(Vec::len).sum();
        Partition::from_blocks(n, r.blocks)
    }
}

impl From<Partition> for PartitionRepr {
    fn from(p: Partition) -> Self {
        PartitionRepr { blocks: p.blocks }
    }
}

impl Partition {
    pub fn from_blocks(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Partition> {
        let mut block_of = vec![usize::MAX; n];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                if v >= n {
                    return Err(Error::OutOfRange { vertex: v, n });
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::InvalidArgument(format!("vertex {v} in two blocks")));
                }
                block_of[v] = i;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidArgument(format!("vertex {v} not covered")));
        }
        Ok(Partition { blocks, block_of })
    }

    pub fn singletons(n: usize) -> Partition {
        Partition {
            blocks: (0..n).map(|v| vec![v]).collect(),
            block_of: (0..n).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn same_block(&self, u: usize, v: usize) -> bool {
        self.block_of[u] == self.block_of[v]
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.block_of.len() == coarser.block_of.len()
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&v| coarser.same_block(v, b[0])))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("partition serializes")
    }
}

/// How `x ≃_F y` is decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FEquivalence {
    /// The two restrictions are isomorphic by any bijection.
    #[default]
    Abstract,
    /// The bijection fixing `F` pointwise and sending `x` to `y` is an isomorphism.
    Pointwise,
}

/// Settings for the equivalence computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Equivalence {
    pub mode: FEquivalence,
    /// Caps the subset size used by [`Equivalence::monomorphic_partition`].
    pub threshold: Option<usize>,
}

impl Equivalence {
    pub fn pointwise() -> Self {
        Equivalence {
            mode: FEquivalence::Pointwise,
            threshold: None,
        }
    }

    pub fn f_equivalent(&self, r: &Structure, x: usize, y: usize, f: &[usize]) -> Result<bool> {
        r.check_vertex(x)?;
        r.check_vertex(y)?;
        if x == y {
            return Err(Error::InvalidArgument("x and y must differ".into()));
        }
        for &z in f {
            r.check_vertex(z)?;
            if z == x || z == y {
                return Err(Error::InvalidArgument(format!("{z} is both compared and in F")));
            }
        }
        let mut f = f.to_vec();
        f.sort_unstable();
        f.dedup();
        Ok(self.f_equivalent_raw(r, x, y, &f))
    }

    pub(crate) fn f_equivalent_raw(&self, r: &Structure, x: usize, y: usize, f: &[usize]) -> bool {
        if pointwise_preserved(r, x, y, f, true) {
            return true;
        }
        if self.mode == FEquivalence::Pointwise {
            return false;
        }
        if r.is_ordered() {
            return ordered_f_equivalent(r, x, y, f);
        }
        let with = |v: usize| {
            let mut s = f.to_vec();
            let at = s.partition_point(|&z| z < v);
            s.insert(at, v);
            r.induced_sorted(&s)
        };
        isomorphic_unchecked(&with(x), &with(y))
    }

    /// `x ≃_F y` for every `k`-subset `F` of the domain minus `{x, y}`.
    pub fn k_equivalent(&self, r: &Structure, x: usize, y: usize, k: usize) -> Result<bool> {
        self.check_pair(r, x, y, k)?;
        Ok(self.level_raw(r, x, y, k))
    }

    /// `x ≃_{k'} y` for every `k' <= k`.
    pub fn le_k_equivalent(&self, r: &Structure, x: usize, y: usize, k: usize) -> Result<bool> {
        self.check_pair(r, x, y, k)?;
        Ok((0..=k).all(|j| self.level_raw(r, x, y, j)))
    }

    fn check_pair(&self, r: &Structure, x: usize, y: usize, k: usize) -> Result<()> {
        r.check_vertex(x)?;
        r.check_vertex(y)?;
        if x == y {
            return Err(Error::InvalidArgument("x and y must differ".into()));
        }
        if k + 2 > r.n() {
            return Err(Error::InvalidArgument(format!(
                "k = {k} out of range for a domain of size {}",
                r.n()
            )));
        }
        Ok(())
    }

    fn level_raw(&self, r: &Structure, x: usize, y: usize, k: usize) -> bool {
        let rest: Vec<usize> = (0..r.n()).filter(|&v| v != x && v != y).collect();
        for_each_combination(&rest, k, |f| self.f_equivalent_raw(r, x, y, f))
    }

    /// Classes of `≃_{≤ k_max}`.
    pub fn equivalence_partition(&self, r: &Structure, k_max: usize) -> Result<Partition> {
        check_k(r, k_max)?;
        self.partition_by(r, |x, y| (0..=k_max).all(|j| self.level_raw(r, x, y, j)))
    }

    /// Classes of the single-level relation `≃_k`.
    pub fn level_partition(&self, r: &Structure, k: usize) -> Result<Partition> {
        check_k(r, k)?;
        self.partition_by(r, |x, y| self.level_raw(r, x, y, k))
    }

    /// Classes of `≃_R`, realized as `≃_{≤ n-2}` (or the configured threshold).
    pub fn monomorphic_partition(&self, r: &Structure) -> Result<Partition> {
        let n = r.n();
        if n < 2 {
            return Ok(Partition::singletons(n).merged_all());
        }
        let k = self.threshold.map_or(n - 2, |t| t.min(n - 2));
        self.equivalence_partition(r, k)
    }

    fn partition_by(
        &self,
        r: &Structure,
        related: impl Fn(usize, usize) -> bool + Sync,
    ) -> Result<Partition> {
        let n = r.n();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| ((x + 1)..n).map(move |y| (x, y)))
            .collect();
        let verdicts: Vec<bool> = pairs.par_iter().map(|&(x, y)| related(x, y)).collect();
        let mut rel = vec![vec![false; n]; n];
        for (&(x, y), &v) in pairs.iter().zip(&verdicts) {
            rel[x][y] = v;
            rel[y][x] = v;
        }
        for (x, row) in rel.iter_mut().enumerate() {
            row[x] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if !rel[x][y] {
                    continue;
                }
                if let Some(z) = (0..n).find(|&z| rel[y][z] && !rel[x][z]) {
                    return Err(Error::Inconsistent(format!(
                        "pairwise equivalence is not transitive: {x}~{y}, {y}~{z}, not {x}~{z}"
                    )));
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut seen = vec![false; n];
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let block: Vec<usize> = (x..n).filter(|&y| rel[x][y]).collect();
            for &y in &block {
                seen[y] = true;
            }
            blocks.push(block);
        }
        Partition::from_blocks(n, blocks)
    }
}

impl Partition {
    fn merged_all(self) -> Partition {
        let n = self.block_of.len();
        if n == 0 {
            return self;
        }
        Partition {
            blocks: vec![(0..n).collect()],
            block_of: vec![0; n],
        }
    }
}

// The only candidate isomorphism between ordered restrictions is the
// rank-preserving bijection.
fn ordered_f_equivalent(r: &Structure, x: usize, y: usize, f: &[usize]) -> bool {
    let sorted = |v: usize| {
        let mut s: Vec<usize> = f.to_vec();
        s.push(v);
        s.sort_unstable_by_key(|&u| r.rank(u));
        s
    };
    let (a, b) = (sorted(x), sorted(y));
    let m = a.len();
    let mut ta = Vec::new();
    let mut tb = Vec::new();
    for (rel, &arity) in r.signature().arities().iter().enumerate().skip(1) {
        if arity == 2 {
            for i in 0..m {
                for j in 0..m {
                    if r.holds2(rel, a[i], a[j]) != r.holds2(rel, b[i], b[j]) {
                        return false;
                    }
                }
            }
            continue;
        }
        let mut same = true;
        for_each_word(m, arity, |idx| {
            if !same {
                return;
            }
            ta.clear();
            tb.clear();
            ta.extend(idx.iter().map(|&i| a[i]));
            tb.extend(idx.iter().map(|&i| b[i]));
            same = r.holds(rel, &ta) == r.holds(rel, &tb);
        });
        if !same {
            return false;
        }
    }
    true
}

fn check_k(r: &Structure, k: usize) -> Result<()> {
    if k + 2 > r.n() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} out of range for a domain of size {}",
            r.n()
        )));
    }
    Ok(())
}

/// Whether swapping `x` for `y` preserves membership of every tuple over
/// `others ∪ {x}` that contains `x` (all-`x` tuples only with `diagonal`).
pub(crate) fn pointwise_preserved(
    r: &Structure,
    x: usize,
    y: usize,
    others: &[usize],
    diagonal: bool,
) -> bool {
    if r.signature().is_binary() {
        for (rel, &arity) in r.signature().arities().iter().enumerate() {
            if arity == 1 {
                if diagonal && r.holds(rel, &[x]) != r.holds(rel, &[y]) {
                    return false;
                }
                continue;
            }
            if diagonal && r.holds2(rel, x, x) != r.holds2(rel, y, y) {
                return false;
            }
            for &z in others {
                if r.holds2(rel, z, x) != r.holds2(rel, z, y)
                    || r.holds2(rel, x, z) != r.holds2(rel, y, z)
                {
                    return false;
                }
            }
        }
        return true;
    }
    let marker = others.len();
    let mut with_x = Vec::new();
    let mut with_y = Vec::new();
    let mut same = true;
    for (rel, &arity) in r.signature().arities().iter().enumerate() {
        for_each_word(marker + 1, arity, |idx| {
            let marked = idx.iter().filter(|&&i| i == marker).count();
            if !same || marked == 0 || (marked == arity && !diagonal) {
                return;
            }
            with_x.clear();
            with_y.clear();
            for &i in idx {
                with_x.push(if i == marker { x } else { others[i] });
                with_y.push(if i == marker { y } else { others[i] });
            }
            same = r.holds(rel, &with_x) == r.holds(rel, &with_y);
        });
        if !same {
            return false;
        }
    }
    true
}

pub fn f_equivalent(r: &Structure, x: usize, y: usize, f: &[usize]) -> Result<bool> {
    Equivalence::default().f_equivalent(r, x, y, f)
}

pub fn k_equivalent(r: &Structure, x: usize, y: usize, k: usize) -> Result<bool> {
    Equivalence::default().k_equivalent(r, x, y, k)
}

pub fn le_k_equivalent(r: &Structure, x: usize, y: usize, k: usize) -> Result<bool> {
    Equivalence::default().le_k_equivalent(r, x, y, k)
}

pub fn equivalence_partition(r: &Structure, k_max: usize) -> Result<Partition> {
    Equivalence::default().equivalence_partition(r, k_max)
}

pub fn level_partition(r: &Structure, k: usize) -> Result<Partition> {
    Equivalence::default().level_partition(r, k)
}

pub fn monomorphic_partition(r: &Structure) -> Result<Partition> {
    Equivalence::default().monomorphic_partition(r)
}

/// Direct check of the monomorphic-block property: for every `A`, `A'`
/// agreeing outside `block` with traces of equal size at most `k_max`, the
/// induced structures are isomorphic.
pub fn is_monomorphic_block_oracle(r: &Structure, block: &[usize], k_max: usize) -> Result<bool> {
    for &v in block {
        r.check_vertex(v)?;
    }
    let mut inside = vec![false; r.n()];
    for &v in block {
        inside[v] = true;
    }
    let members: Vec<usize> = (0..r.n()).filter(|&v| inside[v]).collect();
    let outside: Vec<usize> = (0..r.n()).filter(|&v| !inside[v]).collect();
    if outside.len() >= usize::BITS as usize - 1 {
        return Err(Error::InvalidArgument("domain too large for the oracle".into()));
    }
    let top = k_max.min(members.len());
    for mask in 0u64..(1u64 << outside.len()) {
        let base: Vec<usize> = outside
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        for j in 1..=top {
            let mut first: Option<Structure> = None;
            let ok = for_each_combination(&members, j, |trace| {
                let mut a: Vec<usize> = base.iter().chain(trace).copied().collect();
                a.sort_unstable();
                let s = r.induced_sorted(&a);
                match &first {
                    None => {
                        first = Some(s);
                        true
                    }
                    Some(f) => isomorphic_unchecked(f, &s),
                }
            });
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Maximal monomorphic blocks found with the oracle alone.
///
/// Vertices are added greedily to the first block they extend, then blocks
/// are merged while some union is still a block. Exponential in `n`.
pub fn components_via_oracle(r: &Structure) -> Result<Partition> {
    let n = r.n();
    let is_block = |b: &[usize]| is_monomorphic_block_oracle(r, b, b.len());
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let mut placed = false;
        for b in blocks.iter_mut() {
            let mut cand = b.clone();
            cand.push(v);
            if is_block(&cand)? {
                *b = cand;
                placed = true;
                break;
            }
        }
        if !placed {
            blocks.push(vec![v]);
        }
    }
    loop {
        let mut merged = None;
        'search: for i in 0..blocks.len() {
            for j in (i + 1)..blocks.len() {
                let cand: Vec<usize> = blocks[i].iter().chain(&blocks[j]).copied().collect();
                if is_block(&cand)? {
                    merged = Some((i, j, cand));
                    break 'search;
                }
            }
        }
        match merged {
            Some((i, j, cand)) => {
                blocks.remove(j);
                blocks[i] = cand;
            }
            None => break,
        }
    }
    Partition::from_blocks(n, blocks)
}

/// Subset size past which `≃_{≤k}` and `≃_R` agree for the given kind.
pub fn threshold_for(kind: Kind) -> Result<usize> {
    match kind {
        Kind::Binary => Ok(6),
        Kind::Digraph => Ok(3),
        Kind::OrderedGraph => Ok(2),
        other => Err(Error::UnknownKind(format!("no threshold registered for {other}"))),
    }
}

/// Number of monomorphic components of each prefix `generate(spec, k)`.
pub fn component_count_series(spec: &CatalogSpec, sizes: &[usize]) -> Result<Vec<usize>> {
    sizes
        .iter()
        .map(|&k| Ok(monomorphic_partition(&generate(&spec.resized(k))?)?.len()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{CatalogSpec, Family};
    use crate::structure::{graph, natural_order, Signature};

    fn k(n: usize) -> Structure {
        let mut e = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                e.push((i, j));
            }
        }
        graph(n, &e)
    }

    fn p3() -> Structure {
        graph(3, &[(0, 1), (1, 2)])
    }

    // disjoint edges {2i, 2i+1}
    fn m(pairs: usize) -> Structure {
        let e: Vec<_> = (0..pairs).map(|i| (2 * i, 2 * i + 1)).collect();
        graph(2 * pairs, &e)
    }

    fn blocks(p: &Partition) -> Vec<Vec<usize>> {
        p.blocks().to_vec()
    }

    #[test]
    fn f_equivalence_examples() {
        assert!(f_equivalent(&k(3), 0, 1, &[2]).unwrap());
        assert!(f_equivalent(&p3(), 0, 2, &[1]).unwrap());
        assert!(!f_equivalent(&p3(), 0, 1, &[2]).unwrap());
        assert!(!f_equivalent(&m(2), 0, 2, &[1]).unwrap());
        assert!(f_equivalent(&p3(), 0, 1, &[1]).is_err());
        assert!(f_equivalent(&p3(), 1, 1, &[]).is_err());
    }

    #[test]
    fn k_equivalence_examples() {
        let k5 = k(5);
        for j in 0..=3 {
            assert!(k_equivalent(&k5, 1, 4, j).unwrap());
        }
        assert!(!k_equivalent(&m(2), 0, 2, 1).unwrap());
        assert!(k_equivalent(&m(2), 0, 2, 4).is_err());
        // k = 0 compares the one-point restrictions, i.e. loops
        let looped = Structure::new(
            Signature::binary(1),
            3,
            vec![vec![vec![0, 0], vec![1, 2]]],
            false,
        )
        .unwrap();
        assert!(!k_equivalent(&looped, 0, 1, 0).unwrap());
        assert!(k_equivalent(&looped, 1, 2, 0).unwrap());
    }

    #[test]
    fn matching_components() {
        let m3 = m(3);
        assert_eq!(
            blocks(&equivalence_partition(&m3, 4).unwrap()),
            vec![vec![0, 1], vec![2, 3], vec![4, 5]]
        );
        assert_eq!(
            blocks(&monomorphic_partition(&m3).unwrap()),
            vec![vec![0, 1], vec![2, 3], vec![4, 5]]
        );
    }

    #[test]
    fn chain_is_one_block() {
        let c = generate(&CatalogSpec::new(Family::Chain, 5)).unwrap();
        assert_eq!(equivalence_partition(&c, 3).unwrap().len(), 1);
        // pointwise: neighbours are related but 0 and 2 are not
        assert!(matches!(
            Equivalence::pointwise().monomorphic_partition(&c),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn half_graph_is_rigid() {
        let h = generate(&CatalogSpec::new(Family::HalfGraph, 4)).unwrap();
        assert_eq!(equivalence_partition(&h, 6).unwrap(), Partition::singletons(8));
    }

    #[test]
    fn chain2_has_two_components() {
        let c = generate(&CatalogSpec::new(Family::Chain2, 6)).unwrap();
        assert_eq!(
            blocks(&monomorphic_partition(&c).unwrap()),
            vec![vec![0, 1, 2], vec![3, 4, 5]]
        );
        assert_eq!(monomorphic_partition(&k(4)).unwrap().len(), 1);
    }

    #[test]
    fn tiny_domains() {
        assert!(monomorphic_partition(&graph(0, &[])).unwrap().is_empty());
        assert_eq!(monomorphic_partition(&graph(1, &[])).unwrap().len(), 1);
        assert!(equivalence_partition(&graph(1, &[]), 0).is_err());
    }

    #[test]
    fn oracle_examples() {
        let m3 = m(3);
        for v in 0..6 {
            assert!(is_monomorphic_block_oracle(&m3, &[v], 1).unwrap());
        }
        assert!(is_monomorphic_block_oracle(&m3, &[0, 1], 2).unwrap());
        assert!(!is_monomorphic_block_oracle(&m3, &[0, 2], 2).unwrap());
        assert_eq!(
            components_via_oracle(&m3).unwrap(),
            monomorphic_partition(&m3).unwrap()
        );
        assert_eq!(components_via_oracle(&k(4)).unwrap().len(), 1);
    }

    #[test]
    fn oracle_on_ordered_structures() {
        let c = generate(&CatalogSpec::new(Family::Chain2, 5)).unwrap();
        assert_eq!(
            components_via_oracle(&c).unwrap(),
            monomorphic_partition(&c).unwrap()
        );
        let sig = Signature::binary(2);
        let r = Structure::new(
            sig,
            4,
            vec![natural_order(4), vec![vec![0, 3], vec![1, 1]]],
            true,
        )
        .unwrap();
        assert_eq!(
            components_via_oracle(&r).unwrap(),
            monomorphic_partition(&r).unwrap()
        );
    }

    #[test]
    fn thresholds() {
        assert_eq!(threshold_for(Kind::Binary).unwrap(), 6);
        assert_eq!(threshold_for(Kind::Digraph).unwrap(), 3);
        assert_eq!(threshold_for(Kind::OrderedGraph).unwrap(), 2);
        assert!(threshold_for(Kind::Chain).is_err());
    }

    #[test]
    fn component_counts() {
        let g1 = CatalogSpec::new(Family::G(1), 0);
        assert_eq!(
            component_count_series(&g1, &[1, 2, 3, 4, 5]).unwrap(),
            vec![1, 2, 3, 4, 5]
        );
        let chain = CatalogSpec::new(Family::Chain, 0);
        assert_eq!(
            component_count_series(&chain, &[2, 3, 4, 5]).unwrap(),
            vec![1, 1, 1, 1]
        );
        let half = CatalogSpec::new(Family::HalfGraph, 0);
        assert_eq!(
            component_count_series(&half, &[2, 3, 4, 5]).unwrap(),
            vec![4, 6, 8, 10]
        );
    }

    #[test]
    fn refinement_chain() {
        let r = generate(&CatalogSpec::new(Family::G(5), 3)).unwrap();
        let mut prev = equivalence_partition(&r, 0).unwrap();
        for j in 1..=4 {
            let next = equivalence_partition(&r, j).unwrap();
            assert!(next.refines(&prev));
            prev = next;
        }
    }

    #[test]
    fn partition_validation_and_json() {
        assert!(Partition::from_blocks(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_blocks(3, vec![vec![0, 1]]).is_err());
        let p = Partition::from_blocks(4, vec![vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(p.to_json(), r#"{"blocks":[[0,2],[1,3]]}"#);
        let back: Partition = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(back, p);
    }
}
