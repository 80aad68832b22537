//! Finite-scale Ramsey extraction: monochromatic subsets, separating witness
//! systems, invariant restrictions and the two-alternative witness for
//! ordered digraphs.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::for_each_word;
use crate::decomposition::{equivalence_partition, monomorphic_partition, Equivalence};
use crate::error::{Error, Result};
use crate::morphism::{isomorphic, order_interval};
use crate::structure::{Signature, Structure};
use crate::subsets::for_each_combination;

/// A coloring of the 2-subsets of `{0..m-1}` by small integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairColoring {
    m: usize,
    colors: Vec<usize>,
}

impl PairColoring {
    /// Colors `{i, j}` (called with `i < j`); equal keys give equal colors,
    /// numbered in order of first appearance.
    pub fn from_fn<K: Ord>(m: usize, mut color: impl FnMut(usize, usize) -> K) -> PairColoring {
        let mut ids: BTreeMap<K, usize> = BTreeMap::new();
        let mut colors = Vec::with_capacity(m * m.saturating_sub(1) / 2);
        for i in 0..m {
            for j in (i + 1)..m {
                let next = ids.len();
                colors.push(*ids.entry(color(i, j)).or_insert(next));
            }
        }
        PairColoring { m, colors }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn palette(&self) -> usize {
        self.colors.iter().max().map_or(0, |&c| c + 1)
    }

    pub fn color(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        assert!(i != j && j < self.m, "pair ({i}, {j}) outside the ground set");
        // pairs (a, b) with a < i come first
        let before = i * (2 * self.m - i - 1) / 2;
        self.colors[before + j - i - 1]
    }

    pub fn is_monochromatic(&self, set: &[usize]) -> bool {
        let mut color = None;
        for (a, &x) in set.iter().enumerate() {
            for &y in &set[a + 1..] {
                let c = self.color(x, y);
                if *color.get_or_insert(c) != c {
                    return false;
                }
            }
        }
        true
    }
}

/// The lexicographically least `target`-subset whose pairs share one color.
pub fn ramsey_subset(coloring: &PairColoring, target: usize) -> Result<Vec<usize>> {
    if target < 2 {
        return Err(Error::InvalidArgument("target must be at least 2".into()));
    }
    fn grow(
        c: &PairColoring,
        target: usize,
        chosen: &mut Vec<usize>,
        color: Option<usize>,
        next: usize,
    ) -> bool {
        if chosen.len() == target {
            return true;
        }
        let need = target - chosen.len();
        for v in next..c.m {
            if c.m - v < need {
                break;
            }
            let mut col = color;
            let fits = chosen.iter().all(|&u| {
                let k = c.color(u, v);
                *col.get_or_insert(k) == k
            });
            if fits {
                chosen.push(v);
                if grow(c, target, chosen, col, v + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(target);
    if grow(coloring, target, &mut chosen, None, 0) {
        Ok(chosen)
    } else {
        Err(Error::SearchFailed(format!(
            "no monochromatic {target}-subset among {} points",
            coloring.m
        )))
    }
}

/// Representatives `f(0..)` of distinct `≃_{≤k}` classes and, for each pair,
/// a set `{g_i(n, n')}` of at most `k` vertices separating them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSystem {
    pub k: usize,
    pub f: Vec<usize>,
    /// `g[n][n' - n - 1]` for `n < n'`, sorted.
    pub g: Vec<Vec<Vec<usize>>>,
}

impl WitnessSystem {
    pub fn witness(&self, n: usize, n2: usize) -> &[usize] {
        let (a, b) = if n < n2 { (n, n2) } else { (n2, n) };
        &self.g[a][b - a - 1]
    }

    /// Re-checks every separation with the default equivalence.
    pub fn validate(&self, r: &Structure) -> Result<()> {
        for n in 0..self.f.len() {
            for n2 in (n + 1)..self.f.len() {
                let w = self.witness(n, n2);
                if w.len() > self.k
                    || Equivalence::default().f_equivalent(r, self.f[n], self.f[n2], w)?
                {
                    return Err(Error::Inconsistent(format!(
                        "witness {w:?} does not separate f({n}) and f({n2})"
                    )));
                }
            }
        }
        Ok(())
    }
}

// First separating set, largest size first, over candidates sorted by
// distance from `x` in the order (index order when unordered).
fn separating_set(r: &Structure, x: usize, y: usize, k: usize) -> Option<Vec<usize>> {
    let eq = Equivalence::default();
    let pos = |v: usize| if r.is_ordered() { r.rank(v) } else { v };
    let mut rest: Vec<usize> = (0..r.n()).filter(|&v| v != x && v != y).collect();
    rest.sort_by_key(|&v| (pos(v).abs_diff(pos(x)), pos(v)));
    (0..=k.min(rest.len())).rev().find_map(|size| {
        let mut found = None;
        for_each_combination(&rest, size, |f| {
            let mut f = f.to_vec();
            f.sort_unstable();
            if eq.f_equivalent_raw(r, x, y, &f) {
                true
            } else {
                found = Some(f);
                false
            }
        });
        found
    })
}

pub fn witness_system(r: &Structure, k: usize, target: usize) -> Result<WitnessSystem> {
    let classes = equivalence_partition(r, k)?;
    if classes.len() < target {
        return Err(Error::SearchFailed(format!(
            "{} classes of ≃_≤{k}, {target} requested",
            classes.len()
        )));
    }
    let f: Vec<usize> = classes.blocks()[..target].iter().map(|b| b[0]).collect();
    let g = (0..target)
        .into_par_iter()
        .map(|n| {
            ((n + 1)..target)
                .map(|n2| {
                    separating_set(r, f[n], f[n2], k).ok_or_else(|| {
                        Error::Inconsistent(format!(
                            "{} and {} lie in distinct classes but nothing separates them",
                            f[n], f[n2]
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let system = WitnessSystem { k, f, g };
    system.validate(r)?;
    Ok(system)
}

/// Equalities and relation memberships among the entries of a tuple.
fn labeled_type(r: &Structure, t: &[usize]) -> Vec<bool> {
    let m = t.len();
    let mut bits = Vec::new();
    for i in 0..m {
        for j in 0..m {
            bits.push(t[i] == t[j]);
        }
    }
    let mut buf = Vec::new();
    for (rel, &arity) in r.signature().arities().iter().enumerate() {
        for_each_word(m, arity, |idx| {
            buf.clear();
            buf.extend(idx.iter().map(|&i| t[i]));
            bits.push(r.holds(rel, &buf));
        });
    }
    bits
}

/// Output of [`invariant_restriction`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvariantRestriction {
    pub system: WitnessSystem,
    /// `rows[n] = [f(n), g_0(n, n+1), …]`, padded by repeating the last entry.
    pub rows: Vec<Vec<usize>>,
    /// Row indices whose pairs all have the same labeled type.
    pub homogeneous: Vec<usize>,
    /// Labeled type of the concatenation of two homogeneous rows.
    pub pair_type: Vec<bool>,
    /// Vertices of the restriction, increasing.
    pub vertices: Vec<usize>,
    pub structure: Structure,
    pub classes: usize,
    pub transcript: Vec<String>,
}

impl InvariantRestriction {
    fn row_len(&self) -> usize {
        self.rows[0].len()
    }

    fn pair_bit(&self, rel: usize, p: usize, q: usize) -> bool {
        let m = 2 * self.row_len();
        let sig = self.structure.signature();
        let mut offset = m * m;
        for a in &sig.arities()[..rel] {
            offset += m.pow(*a as u32);
        }
        offset += if sig.arity(rel) == 1 { p } else { p * m + q };
        self.pair_type[offset]
    }

    /// The structure on `count` rows all of whose pairs realize the homogeneous type.
    pub fn extend(&self, count: usize) -> Result<Structure> {
        let sig: Signature = self.structure.signature().clone();
        if sig.max_arity() > 2 {
            return Err(Error::InvalidArgument(
                "extension is defined for unary and binary signatures".into(),
            ));
        }
        let len = self.row_len();
        let m = 2 * len;
        let eq = |p: usize, q: usize| self.pair_type[p * m + q];
        if (0..len).any(|p| (len..m).any(|q| eq(p, q))) {
            return Err(Error::InvalidArgument("homogeneous rows share vertices".into()));
        }
        // first occurrence of each distinct entry within a row
        let slots: Vec<usize> = (0..len).filter(|&p| (0..p).all(|q| !eq(q, p))).collect();
        let s = slots.len();
        let id = |row: usize, slot: usize| row * s + slot;
        let mut relations = vec![Vec::new(); sig.len()];
        for (rel, tuples) in relations.iter_mut().enumerate() {
            for i in 0..count {
                for (a, &p) in slots.iter().enumerate() {
                    if sig.arity(rel) == 1 {
                        if self.pair_bit(rel, p, 0) {
                            tuples.push(vec![id(i, a)]);
                        }
                        continue;
                    }
                    for j in 0..count {
                        for (b, &q) in slots.iter().enumerate() {
                            let holds = match i.cmp(&j) {
                                std::cmp::Ordering::Equal => self.pair_bit(rel, p, q),
                                std::cmp::Ordering::Less => self.pair_bit(rel, p, len + q),
                                std::cmp::Ordering::Greater => self.pair_bit(rel, len + p, q),
                            };
                            if holds {
                                tuples.push(vec![id(i, a), id(j, b)]);
                            }
                        }
                    }
                }
            }
        }
        Structure::new(sig, count * s, relations, self.structure.is_ordered())
    }
}

pub fn invariant_restriction(r: &Structure, k: usize, target: usize) -> Result<InvariantRestriction> {
    if !r.is_ordered() {
        return Err(Error::NotOrdered);
    }
    let available = equivalence_partition(r, k)?.len();
    if available < target {
        return Err(Error::SearchFailed(format!(
            "{available} classes of ≃_≤{k}, {target} requested"
        )));
    }
    let system = witness_system(r, k, available)?;
    let mut transcript = vec![format!(
        "witness system: {available} classes, f = {:?}",
        system.f
    )];
    let width = 1 + system.g.iter().flatten().map(Vec::len).max().unwrap_or(0);
    let rows: Vec<Vec<usize>> = (0..available.saturating_sub(1))
        .map(|n| {
            let mut row = vec![system.f[n]];
            row.extend_from_slice(system.witness(n, n + 1));
            while row.len() < width {
                row.push(*row.last().expect("row starts with f(n)"));
            }
            row
        })
        .collect();
    let types: Vec<Vec<Vec<bool>>> = (0..rows.len())
        .into_par_iter()
        .map(|i| {
            ((i + 1)..rows.len())
                .map(|j| {
                    let t: Vec<usize> = rows[i].iter().chain(&rows[j]).copied().collect();
                    labeled_type(r, &t)
                })
                .collect()
        })
        .collect();
    let coloring = PairColoring::from_fn(rows.len(), |i, j| types[i][j - i - 1].clone());
    transcript.push(format!(
        "{} rows of width {width}, {} pair colors",
        rows.len(),
        coloring.palette()
    ));
    let homogeneous = ramsey_subset(&coloring, target)?;
    if !coloring.is_monochromatic(&homogeneous) {
        return Err(Error::Inconsistent("Ramsey output is not monochromatic".into()));
    }
    transcript.push(format!("homogeneous rows {homogeneous:?}"));
    let pair_type = types[homogeneous[0]][homogeneous[1] - homogeneous[0] - 1].clone();
    let mut vertices: Vec<usize> = homogeneous.iter().flat_map(|&h| rows[h].clone()).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let structure = r.induced_sorted(&vertices);
    let classes = monomorphic_partition(&structure)?.len();
    transcript.push(format!(
        "restriction to {} vertices has {classes} monomorphic components",
        vertices.len()
    ));
    if classes < target {
        return Err(Error::SearchFailed(format!(
            "restriction keeps {classes} components, fewer than {target}"
        )));
    }
    let mut out = InvariantRestriction {
        system,
        rows,
        homogeneous,
        pair_type,
        vertices,
        structure,
        classes,
        transcript,
    };
    if out.structure.signature().max_arity() <= 2 {
        match out.extend(out.homogeneous.len()) {
            Ok(e) => {
                if !isomorphic(&e, &out.structure)? {
                    return Err(Error::Inconsistent(
                        "extension on the homogeneous rows differs from the restriction".into(),
                    ));
                }
                out.transcript
                    .push("extension on the homogeneous rows is isomorphic to the restriction".into());
            }
            Err(e) => out.transcript.push(format!("no extension: {e}")),
        }
    }
    Ok(out)
}

/// The two alternatives for an ordered digraph with many classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DichotomyWitness {
    /// Pairwise 0-equivalent, pairwise not 1-equivalent.
    Single { a: Vec<usize> },
    /// Each side within one `≃_{≤1}` class, in pairwise distinct components,
    /// strictly alternating in the order.
    Double { a1: Vec<usize>, a2: Vec<usize> },
}

/// A witness together with the checks that certify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedWitness {
    pub witness: DichotomyWitness,
    pub transcript: Vec<String>,
}

fn check_ordered_digraph(g: &Structure) -> Result<()> {
    if !g.is_ordered() {
        return Err(Error::NotOrdered);
    }
    if *g.signature() != Signature::binary(2) {
        return Err(Error::InvalidArgument(
            "expected an order and one binary relation".into(),
        ));
    }
    Ok(())
}

/// Re-derives every defining condition of `w` on `g`.
pub fn validate_witness(g: &Structure, w: &DichotomyWitness) -> Result<Vec<String>> {
    check_ordered_digraph(g)?;
    let eq = Equivalence::default();
    let mut lines = Vec::new();
    let mut require = |ok: bool, line: String| {
        lines.push(format!("{line}: {}", if ok { "ok" } else { "FAILED" }));
        if ok {
            Ok(())
        } else {
            Err(Error::Inconsistent(line))
        }
    };
    match w {
        DichotomyWitness::Single { a } => {
            for (i, &x) in a.iter().enumerate() {
                for &y in &a[i + 1..] {
                    require(eq.k_equivalent(g, x, y, 0)?, format!("{x} ≃_0 {y}"))?;
                    require(!eq.k_equivalent(g, x, y, 1)?, format!("{x} ≄_1 {y}"))?;
                }
            }
        }
        DichotomyWitness::Double { a1, a2 } => {
            require(a1.iter().all(|x| !a2.contains(x)), "A1 and A2 disjoint".into())?;
            let components = monomorphic_partition(g)?;
            for (side, other) in [(a1, a2), (a2, a1)] {
                for (i, &x) in side.iter().enumerate() {
                    for &y in &side[i + 1..] {
                        require(eq.k_equivalent(g, x, y, 1)?, format!("{x} ≃_1 {y}"))?;
                        require(
                            !components.same_block(x, y),
                            format!("{x} and {y} in distinct components"),
                        )?;
                        let between = order_interval(g, x, y)?;
                        require(
                            between.iter().any(|z| other.contains(z)),
                            format!("interval ({x}, {y}) meets the other side"),
                        )?;
                    }
                }
            }
        }
    }
    Ok(lines)
}

fn single_search(g: &Structure, target: usize) -> Result<Option<Vec<usize>>> {
    let eq = Equivalence::default();
    let n = g.n();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| ((x + 1)..n).map(move |y| (x, y)))
        .collect();
    // pairs are listed in coloring_index order
    let good: Vec<bool> = pairs
        .par_iter()
        .map(|&(x, y)| Ok(eq.k_equivalent(g, x, y, 0)? && !eq.k_equivalent(g, x, y, 1)?))
        .collect::<Result<_>>()?;
    let order = g.vertices_in_order();
    let mut chosen = Vec::new();
    fn grow(
        order: &[usize],
        good: &dyn Fn(usize, usize) -> bool,
        target: usize,
        chosen: &mut Vec<usize>,
        next: usize,
    ) -> bool {
        if chosen.len() == target {
            return true;
        }
        for i in next..order.len() {
            if order.len() - i < target - chosen.len() {
                break;
            }
            let v = order[i];
            if chosen.iter().all(|&u| good(u, v)) {
                chosen.push(v);
                if grow(order, good, target, chosen, i + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let good = |x: usize, y: usize| good[coloring_index(n, x, y)];
    Ok(grow(&order, &good, target, &mut chosen, 0).then_some(chosen))
}

fn coloring_index(n: usize, x: usize, y: usize) -> usize {
    let (i, j) = if x < y { (x, y) } else { (y, x) };
    i * (2 * n - i - 1) / 2 + j - i - 1
}

fn double_search(g: &Structure, target: usize) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if g.n() < 3 {
        return Ok(None);
    }
    let level = equivalence_partition(g, 1)?;
    let components = monomorphic_partition(g)?;
    let order = g.vertices_in_order();
    let classes = level.len();
    struct Search<'a> {
        level: &'a crate::decomposition::Partition,
        components: &'a crate::decomposition::Partition,
        order: &'a [usize],
        target: usize,
        sides: [Vec<usize>; 2],
    }
    impl Search<'_> {
        // extend side `turn` with a vertex of class `class[turn]` after position `next`
        fn grow(&mut self, class: [usize; 2], turn: usize, next: usize) -> bool {
            if self.sides[0].len() == self.target && self.sides[1].len() == self.target {
                return true;
            }
            for i in next..self.order.len() {
                let v = self.order[i];
                if self.level.block_of(v) != class[turn]
                    || self.sides[turn]
                        .iter()
                        .any(|&u| self.components.same_block(u, v))
                {
                    continue;
                }
                self.sides[turn].push(v);
                if self.grow(class, 1 - turn, i + 1) {
                    return true;
                }
                self.sides[turn].pop();
            }
            false
        }
    }
    let mut search = Search {
        level: &level,
        components: &components,
        order: &order,
        target,
        sides: [Vec::new(), Vec::new()],
    };
    for c1 in 0..classes {
        for c2 in 0..classes {
            if search.grow([c1, c2], 0, 0) {
                let [a1, a2] = std::mem::take(&mut search.sides);
                return Ok(Some((a1, a2)));
            }
            search.sides = [Vec::new(), Vec::new()];
        }
    }
    Ok(None)
}

/// The first witness found, trying the single alternative first.
pub fn dichotomy_witness(g: &Structure, target: usize) -> Result<CertifiedWitness> {
    let all = dichotomy_witness_all(g, target)?;
    all.into_iter().next().ok_or_else(|| {
        Error::SearchFailed(format!("neither alternative realized at size {target}"))
    })
}

/// Every alternative realized at size `target` (single first).
pub fn dichotomy_witness_all(g: &Structure, target: usize) -> Result<Vec<CertifiedWitness>> {
    check_ordered_digraph(g)?;
    if target < 2 {
        return Err(Error::InvalidArgument("target must be at least 2".into()));
    }
    let mut out = Vec::new();
    if g.n() >= 3 {
        if let Some(a) = single_search(g, target)? {
            out.push(DichotomyWitness::Single { a });
        }
        if let Some((a1, a2)) = double_search(g, target)? {
            out.push(DichotomyWitness::Double { a1, a2 });
        }
    }
    out.into_iter()
        .map(|witness| {
            let transcript = validate_witness(g, &witness)?;
            Ok(CertifiedWitness {
                witness,
                transcript,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, CatalogOptions, CatalogSpec, EdgeRule, Family};
    use crate::structure::graph;

    #[test]
    fn ramsey_examples() {
        let constant = PairColoring::from_fn(6, |_, _| 0);
        assert_eq!(ramsey_subset(&constant, 4).unwrap(), vec![0, 1, 2, 3]);
        let parity = PairColoring::from_fn(5, |i, j| (i + j) % 2);
        assert_eq!(ramsey_subset(&parity, 3).unwrap(), vec![0, 2, 4]);
        assert!(matches!(ramsey_subset(&constant, 7), Err(Error::SearchFailed(_))));
        assert!(ramsey_subset(&constant, 1).is_err());
        // R(3,3) = 6: the pentagon coloring has no monochromatic triangle
        let pentagon = PairColoring::from_fn(5, |i, j| (j - i) % 5 == 1 || (j - i) % 5 == 4);
        assert!(ramsey_subset(&pentagon, 3).is_err());
    }

    #[test]
    fn coloring_indexing() {
        let c = PairColoring::from_fn(7, |i, j| i * 10 + j);
        for i in 0..7 {
            for j in (i + 1)..7 {
                assert_eq!(c.color(i, j), c.color(j, i));
                assert_eq!(c.color(i, j), coloring_index(7, i, j));
            }
        }
    }

    #[test]
    fn witness_examples() {
        let m4 = generate(&CatalogSpec::new(Family::G(1), 4)).unwrap();
        let w = witness_system(&m4, 1, 3).unwrap();
        assert_eq!(w.f, vec![0, 1, 2]);
        for n in 0..3 {
            for n2 in (n + 1)..3 {
                assert_eq!(w.witness(n, n2), &[w.f[n] + 4]);
            }
        }
        let k5 = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert!(matches!(witness_system(&k5, 1, 2), Err(Error::SearchFailed(_))));
        let h = generate(&CatalogSpec::new(Family::HalfGraph, 5)).unwrap();
        let w = witness_system(&h, 1, 4).unwrap();
        assert_eq!(w.f, vec![0, 1, 2, 3]);
        for n in 0..4 {
            for n2 in (n + 1)..4 {
                let z = w.witness(n, n2)[0];
                assert!(z >= 5);
                assert_ne!(h.holds2(0, w.f[n], z), h.holds2(0, w.f[n2], z));
            }
        }
    }

    fn ordered_matching(k: usize, reflexive: bool) -> Structure {
        let opts = CatalogOptions {
            reflexive,
            ..Default::default()
        };
        generate(&CatalogSpec::with_options(Family::OrderedTwoLayer, k, opts)).unwrap()
    }

    fn ordered_half_graph(k: usize) -> Structure {
        let opts = CatalogOptions {
            base_rule: EdgeRule::Le,
            ..Default::default()
        };
        generate(&CatalogSpec::with_options(Family::OrderedTwoLayer, k, opts)).unwrap()
    }

    #[test]
    fn matching_restriction_is_a_matching() {
        let r = ordered_matching(6, false);
        let out = invariant_restriction(&r, 1, 4).unwrap();
        assert_eq!(out.classes, 4);
        assert!(isomorphic(&out.structure, &ordered_matching(4, false)).unwrap());
        assert!(isomorphic(&out.extend(7).unwrap(), &ordered_matching(7, false)).unwrap());
        let chain = generate(&CatalogSpec::new(Family::Chain, 6)).unwrap();
        assert!(matches!(
            invariant_restriction(&chain, 1, 2),
            Err(Error::SearchFailed(_))
        ));
    }

    #[test]
    fn half_graph_restriction_keeps_classes() {
        let out = invariant_restriction(&ordered_half_graph(8), 1, 4).unwrap();
        assert!(out.classes >= 4);
        assert_eq!(monomorphic_partition(&out.structure).unwrap().len(), out.classes);
    }

    #[test]
    fn dichotomy_examples() {
        let w = dichotomy_witness(&ordered_matching(6, true), 4).unwrap();
        assert_eq!(w.witness, DichotomyWitness::Single { a: vec![0, 2, 4, 6] });
        assert!(w.transcript.iter().all(|l| l.ends_with("ok")));
        let c2 = generate(&CatalogSpec::new(Family::Chain2, 6)).unwrap();
        let c2 = Structure::new(
            Signature::binary(2),
            6,
            c2.relations().to_vec(),
            true,
        )
        .unwrap();
        assert!(matches!(dichotomy_witness(&c2, 3), Err(Error::SearchFailed(_))));
        let w = dichotomy_witness(&ordered_half_graph(8), 3).unwrap();
        validate_witness(&ordered_half_graph(8), &w.witness).unwrap();
    }

    #[test]
    fn forged_witness_fails_validation() {
        let g = ordered_matching(4, true);
        let bad = DichotomyWitness::Single { a: vec![0, 1] };
        assert!(matches!(validate_witness(&g, &bad), Err(Error::Inconsistent(_))));
    }
}
