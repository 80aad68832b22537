//! Finite prefixes of the infinite obstruction graphs and auxiliary families.
//!
//! Two-layer families live on `{0..k-1} x {0,1}`. Unordered families relabel
//! `(n, i)` to `n + k*i`; ordered ones interleave the layers as
//! `a0 < b0 < a1 < b1 < ...` and relabel `(n, i)` to `2n + i`, so the order
//! is the natural one (or its reverse for the ω* variants). An optional apex
//! becomes vertex 0 and shifts everything else up by one.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::{natural_order, Signature, Structure};

/// Cross-layer edge rule between `(n,0)` and `(m,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum EdgeRule {
    /// `n = m`
    #[default]
    Eq,
    /// `n <= m`
    Le,
    /// `n != m`
    Ne,
}

impl EdgeRule {
    pub fn holds(self, n: usize, m: usize) -> bool {
        match self {
            EdgeRule::Eq => n == m,
            EdgeRule::Le => n <= m,
            EdgeRule::Ne => n != m,
        }
    }
}

impl FromStr for EdgeRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eq" => Ok(EdgeRule::Eq),
            "le" => Ok(EdgeRule::Le),
            "ne" => Ok(EdgeRule::Ne),
            _ => Err(Error::InvalidOptions(format!("unknown edge rule `{s}`"))),
        }
    }
}

/// Whether a layer is independent or a clique.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum LayerRule {
    #[default]
    Empty,
    Full,
}

impl FromStr for LayerRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "empty" => Ok(LayerRule::Empty),
            "full" => Ok(LayerRule::Full),
            _ => Err(Error::InvalidOptions(format!("unknown layer rule `{s}`"))),
        }
    }
}

/// Direction of cross-layer arcs in ordered two-layer digraphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Both arcs (a graph).
    #[default]
    Both,
    /// From layer A to layer B.
    Forward,
    /// From layer B to layer A.
    Backward,
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "both" => Ok(Direction::Both),
            "forward" => Ok(Direction::Forward),
            "backward" => Ok(Direction::Backward),
            _ => Err(Error::InvalidOptions(format!("unknown direction `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// One of the ten unordered obstruction graphs `G1..G10`.
    G(u8),
    Matching,
    HalfGraph,
    Complete,
    Chain,
    Chain2,
    ChainMarked,
    OrderedTwoLayer,
}

impl Family {
    pub const ALL: [Family; 17] = [
        Family::G(1),
        Family::G(2),
        Family::G(3),
        Family::G(4),
        Family::G(5),
        Family::G(6),
        Family::G(7),
        Family::G(8),
        Family::G(9),
        Family::G(10),
        Family::Matching,
        Family::HalfGraph,
        Family::Complete,
        Family::Chain,
        Family::Chain2,
        Family::ChainMarked,
        Family::OrderedTwoLayer,
    ];

    pub fn description(self) -> &'static str {
        match self {
            Family::G(1) => "A, B independent; (n,0)~(m,1) iff n = m",
            Family::G(2) => "A, B independent; (n,0)~(m,1) iff n <= m",
            Family::G(3) => "A, B independent; (n,0)~(m,1) iff n != m",
            Family::G(4) => "G1 with A a clique",
            Family::G(5) => "G2 with A a clique",
            Family::G(6) => "G2 with B a clique",
            Family::G(7) => "G3 with A a clique",
            Family::G(8) => "A, B cliques; (n,0)~(m,1) iff n = m",
            Family::G(9) => "A, B cliques; (n,0)~(m,1) iff n <= m",
            Family::G(10) => "A, B cliques; (n,0)~(m,1) iff n != m",
            Family::G(_) => "unregistered",
            Family::Matching => "alias of G1",
            Family::HalfGraph => "alias of G2",
            Family::Complete => "complete graph on k vertices",
            Family::Chain => "linear order on k elements",
            Family::Chain2 => "chain split into two consecutive intervals, the second looped",
            Family::ChainMarked => {
                "chain split into `parts` intervals; interval j >= 1 looped in relation j"
            }
            Family::OrderedTwoLayer => {
                "ordered digraph on interleaved layers a0<b0<a1<...; cross rule + layer rules"
            }
        }
    }

    fn is_ordered(self) -> bool {
        matches!(
            self,
            Family::Chain | Family::Chain2 | Family::ChainMarked | Family::OrderedTwoLayer
        )
    }

    fn two_layer(self) -> bool {
        matches!(
            self,
            Family::G(_) | Family::Matching | Family::HalfGraph | Family::OrderedTwoLayer
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::G(i) => write!(f, "G{i}"),
            Family::Matching => f.write_str("matching"),
            Family::HalfGraph => f.write_str("half_graph"),
            Family::Complete => f.write_str("complete"),
            Family::Chain => f.write_str("chain"),
            Family::Chain2 => f.write_str("chain2"),
            Family::ChainMarked => f.write_str("chain_marked"),
            Family::OrderedTwoLayer => f.write_str("ordered_two_layer"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Some(i) = s.strip_prefix('G').or_else(|| s.strip_prefix('g')) {
            return match i.parse::<u8>() {
                Ok(i @ 1..=10) => Ok(Family::G(i)),
                _ => Err(Error::UnknownFamily(s.into())),
            };
        }
        match s {
            "matching" => Ok(Family::Matching),
            "half_graph" => Ok(Family::HalfGraph),
            "complete" => Ok(Family::Complete),
            "chain" => Ok(Family::Chain),
            "chain2" => Ok(Family::Chain2),
            "chain_marked" => Ok(Family::ChainMarked),
            "ordered_two_layer" => Ok(Family::OrderedTwoLayer),
            _ => Err(Error::UnknownFamily(s.into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CatalogOptions {
    pub reflexive: bool,
    pub base_rule: EdgeRule,
    pub layers: (LayerRule, LayerRule),
    pub direction: Direction,
    /// Extra least vertex, adjacent to layer A and/or layer B.
    pub apex: Option<(bool, bool)>,
    /// Reverse the linear order (ω* instead of ω).
    pub reverse_order: bool,
    /// Number of intervals for `chain_marked`.
    pub parts: usize,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions {
            reflexive: false,
            base_rule: EdgeRule::Eq,
            layers: (LayerRule::Empty, LayerRule::Empty),
            direction: Direction::Both,
            apex: None,
            reverse_order: false,
            parts: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CatalogSpec {
    pub family: Family,
    pub size: usize,
    pub options: CatalogOptions,
}

impl CatalogSpec {
    pub fn new(family: Family, size: usize) -> Self {
        CatalogSpec {
            family,
            size,
            options: CatalogOptions::default(),
        }
    }

    pub fn with_options(family: Family, size: usize, options: CatalogOptions) -> Self {
        CatalogSpec {
            family,
            size,
            options,
        }
    }

    /// Same family and options at another size.
    pub fn resized(&self, size: usize) -> Self {
        CatalogSpec {
            size,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let o = &self.options;
        let d = CatalogOptions::default();
        let fam = self.family;
        if let Family::G(i) = fam {
            if !(1..=10).contains(&i) {
                return Err(Error::UnknownFamily(fam.to_string()));
            }
        }
        let bad = |what: &str| {
            Err(Error::InvalidOptions(format!(
                "{what} does not apply to family {fam}"
            )))
        };
        if fam != Family::OrderedTwoLayer
            && (o.base_rule != d.base_rule || o.layers != d.layers || o.direction != d.direction)
        {
            return bad("base rule, layer rules and direction");
        }
        if !fam.is_ordered() && o.reverse_order {
            return bad("order reversal");
        }
        if o.apex.is_some() && !fam.two_layer() {
            return bad("an apex");
        }
        if o.reflexive && matches!(fam, Family::Chain | Family::Chain2 | Family::ChainMarked) {
            return bad("reflexivity");
        }
        if fam == Family::ChainMarked {
            if o.parts == 0 {
                return Err(Error::InvalidOptions("chain_marked needs parts >= 1".into()));
            }
        } else if o.parts != d.parts {
            return bad("parts");
        }
        Ok(())
    }

    /// Vertices of `generate(self)` inducing exactly `generate(self.resized(smaller))`.
    pub fn prefix_vertices(&self, smaller: usize) -> Result<Vec<usize>> {
        if smaller > self.size {
            return Err(Error::InvalidArgument(format!(
                "prefix size {smaller} exceeds {}",
                self.size
            )));
        }
        let k = self.size;
        let shift = usize::from(self.options.apex.is_some());
        let mut out: Vec<usize> = (0..shift).collect();
        match self.family {
            Family::G(_) | Family::Matching | Family::HalfGraph => {
                out.extend((0..smaller).map(|n| n + shift));
                out.extend((0..smaller).map(|n| n + k + shift));
            }
            Family::OrderedTwoLayer => out.extend(shift..shift + 2 * smaller),
            Family::Complete | Family::Chain => out.extend(0..smaller),
            Family::Chain2 | Family::ChainMarked => {
                let parts = self.parts();
                let big = part_sizes(k, parts);
                let small = part_sizes(smaller, parts);
                let mut start = 0;
                for (b, s) in big.iter().zip(&small) {
                    out.extend(start..start + s);
                    start += b;
                }
            }
        }
        Ok(out)
    }

    fn parts(&self) -> usize {
        match self.family {
            Family::Chain2 => 2,
            _ => self.options.parts,
        }
    }
}

fn part_sizes(k: usize, parts: usize) -> Vec<usize> {
    (0..parts)
        .map(|j| k / parts + usize::from(j < k % parts))
        .collect()
}

/// Builds the finite prefix described by `spec`.
pub fn generate(spec: &CatalogSpec) -> Result<Structure> {
    spec.validate()?;
    let k = spec.size;
    let o = &spec.options;
    match spec.family {
        Family::G(i) => {
            let (rule, a, b) = match i {
                1 => (EdgeRule::Eq, LayerRule::Empty, LayerRule::Empty),
                2 => (EdgeRule::Le, LayerRule::Empty, LayerRule::Empty),
                3 => (EdgeRule::Ne, LayerRule::Empty, LayerRule::Empty),
                4 => (EdgeRule::Eq, LayerRule::Full, LayerRule::Empty),
                5 => (EdgeRule::Le, LayerRule::Full, LayerRule::Empty),
                6 => (EdgeRule::Le, LayerRule::Empty, LayerRule::Full),
                7 => (EdgeRule::Ne, LayerRule::Full, LayerRule::Empty),
                8 => (EdgeRule::Eq, LayerRule::Full, LayerRule::Full),
                9 => (EdgeRule::Le, LayerRule::Full, LayerRule::Full),
                10 => (EdgeRule::Ne, LayerRule::Full, LayerRule::Full),
                _ => unreachable!("validated"),
            };
            Ok(two_layer_graph(k, rule, (a, b), o))
        }
        Family::Matching => Ok(two_layer_graph(k, EdgeRule::Eq, Default::default(), o)),
        Family::HalfGraph => Ok(two_layer_graph(k, EdgeRule::Le, Default::default(), o)),
        Family::Complete => {
            let mut rel = Vec::new();
            for u in 0..k {
                for v in 0..k {
                    if u != v || o.reflexive {
                        rel.push(vec![u, v]);
                    }
                }
            }
            Structure::new(Signature::binary(1), k, vec![rel], false)
        }
        Family::Chain => Structure::new(
            Signature::binary(1),
            k,
            vec![order_relation(k, o.reverse_order)],
            true,
        ),
        Family::Chain2 | Family::ChainMarked => {
            let parts = spec.parts();
            let sizes = part_sizes(k, parts);
            let mut relations = vec![order_relation(k, o.reverse_order)];
            let mut start = sizes[0];
            for &s in &sizes[1..] {
                relations.push((start..start + s).map(|v| vec![v, v]).collect());
                start += s;
            }
            Structure::new(Signature::binary(parts), k, relations, true)
        }
        Family::OrderedTwoLayer => Ok(ordered_two_layer(k, o)),
    }
}

fn order_relation(n: usize, reverse: bool) -> Vec<Vec<usize>> {
    let mut rel = natural_order(n);
    if reverse {
        for t in &mut rel {
            t.swap(0, 1);
        }
    }
    rel
}

fn two_layer_graph(
    k: usize,
    rule: EdgeRule,
    layers: (LayerRule, LayerRule),
    o: &CatalogOptions,
) -> Structure {
    let shift = usize::from(o.apex.is_some());
    let a = |n: usize| n + shift;
    let b = |n: usize| n + k + shift;
    let mut edges = Vec::new();
    for n in 0..k {
        for m in 0..k {
            if rule.holds(n, m) {
                edges.push((a(n), b(m)));
            }
            if n < m {
                if layers.0 == LayerRule::Full {
                    edges.push((a(n), a(m)));
                }
                if layers.1 == LayerRule::Full {
                    edges.push((b(n), b(m)));
                }
            }
        }
    }
    if let Some((to_a, to_b)) = o.apex {
        for n in 0..k {
            if to_a {
                edges.push((0, a(n)));
            }
            if to_b {
                edges.push((0, b(n)));
            }
        }
    }
    let total = 2 * k + shift;
    let mut rel = crate::structure::symmetric(&edges);
    if o.reflexive {
        rel.extend((0..total).map(|v| vec![v, v]));
    }
    Structure::new(Signature::binary(1), total, vec![rel], false).expect("valid two-layer graph")
}

fn ordered_two_layer(k: usize, o: &CatalogOptions) -> Structure {
    let shift = usize::from(o.apex.is_some());
    let a = |n: usize| 2 * n + shift;
    let b = |n: usize| 2 * n + 1 + shift;
    let total = 2 * k + shift;
    let mut rel = Vec::new();
    let mut arc = |u: usize, v: usize, dir: Direction| match dir {
        Direction::Both => {
            rel.push(vec![u, v]);
            rel.push(vec![v, u]);
        }
        Direction::Forward => rel.push(vec![u, v]),
        Direction::Backward => rel.push(vec![v, u]),
    };
    for n in 0..k {
        for m in 0..k {
            if o.base_rule.holds(n, m) {
                arc(a(n), b(m), o.direction);
            }
            if n < m {
                if o.layers.0 == LayerRule::Full {
                    arc(a(n), a(m), Direction::Both);
                }
                if o.layers.1 == LayerRule::Full {
                    arc(b(n), b(m), Direction::Both);
                }
            }
        }
    }
    if let Some((to_a, to_b)) = o.apex {
        for n in 0..k {
            if to_a {
                arc(0, a(n), o.direction);
            }
            if to_b {
                arc(0, b(n), o.direction);
            }
        }
    }
    if o.reflexive {
        rel.extend((0..total).map(|v| vec![v, v]));
    }
    Structure::new(
        Signature::binary(2),
        total,
        vec![order_relation(total, o.reverse_order), rel],
        true,
    )
    .expect("valid ordered two-layer digraph")
}

/// Shape constraints for random relations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RandomOptions {
    /// Binary relations are made symmetric.
    pub symmetric: bool,
    /// No tuple with all entries equal.
    pub irreflexive: bool,
}

/// Seeded random structure; relation 0 is the natural order when `ordered`.
pub fn random_structure(
    signature: &Signature,
    n: usize,
    density: f64,
    ordered: bool,
    seed: u64,
    options: RandomOptions,
) -> Result<Structure> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidArgument(format!(
            "density {density} outside [0, 1]"
        )));
    }
    if ordered && signature.arity(0) != 2 {
        return Err(Error::InvalidArgument(
            "ordered structures need a binary relation 0".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut relations = Vec::with_capacity(signature.len());
    for (i, &arity) in signature.arities().iter().enumerate() {
        if ordered && i == 0 {
            relations.push(natural_order(n));
            continue;
        }
        let mut rel = Vec::new();
        crate::canon::for_each_word(n, arity, |t| {
            let diagonal = t.iter().all(|&v| v == t[0]);
            if options.irreflexive && diagonal {
                return;
            }
            if options.symmetric && arity == 2 && t[0] > t[1] {
                return;
            }
            if rng.gen_bool(density) {
                rel.push(t.to_vec());
                if options.symmetric && arity == 2 && !diagonal {
                    rel.push(vec![t[1], t[0]]);
                }
            }
        });
        relations.push(rel);
    }
    Structure::new(signature.clone(), n, relations, ordered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::isomorphic;

    fn edges(s: &Structure) -> Vec<(usize, usize)> {
        s.relation(0)
            .iter()
            .filter(|t| t[0] < t[1])
            .map(|t| (t[0], t[1]))
            .collect()
    }

    fn complement(s: &Structure) -> Structure {
        let n = s.n();
        let mut rel = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && !s.holds2(0, u, v) {
                    rel.push(vec![u, v]);
                }
            }
        }
        Structure::new(s.signature().clone(), n, vec![rel], false).unwrap()
    }

    #[test]
    fn g1_is_a_perfect_matching() {
        let g = generate(&CatalogSpec::new(Family::G(1), 3)).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(edges(&g), vec![(0, 3), (1, 4), (2, 5)]);
    }

    #[test]
    fn g2_is_the_half_graph() {
        let g = generate(&CatalogSpec::new(Family::G(2), 2)).unwrap();
        assert_eq!(edges(&g), vec![(0, 2), (0, 3), (1, 3)]);
        assert_eq!(g, generate(&CatalogSpec::new(Family::HalfGraph, 2)).unwrap());
    }

    #[test]
    fn chain_is_a_bare_order() {
        let c = generate(&CatalogSpec::new(Family::Chain, 4)).unwrap();
        assert!(c.is_ordered());
        assert_eq!(c.n(), 4);
        assert_eq!(c.signature().arities(), &[2]);
        assert_eq!(c.relation(0).len(), 10);
    }

    #[test]
    fn chain2_loops_mark_the_second_interval() {
        let c = generate(&CatalogSpec::new(Family::Chain2, 6)).unwrap();
        assert_eq!(c.relation(1), &[vec![3, 3], vec![4, 4], vec![5, 5]]);
        let mut o = CatalogOptions::default();
        o.parts = 3;
        let c3 = generate(&CatalogSpec::with_options(Family::ChainMarked, 7, o)).unwrap();
        assert_eq!(c3.signature().arities(), &[2, 2, 2]);
        assert_eq!(c3.relation(1), &[vec![3, 3], vec![4, 4]]);
        assert_eq!(c3.relation(2), &[vec![5, 5], vec![6, 6]]);
    }

    #[test]
    fn layer_rules_match_the_definitions() {
        // G4 = G1 plus a clique on A, G6 = G2 plus a clique on B
        let k = 4;
        let g1 = generate(&CatalogSpec::new(Family::G(1), k)).unwrap();
        let g4 = generate(&CatalogSpec::new(Family::G(4), k)).unwrap();
        let g2 = generate(&CatalogSpec::new(Family::G(2), k)).unwrap();
        let g6 = generate(&CatalogSpec::new(Family::G(6), k)).unwrap();
        for u in 0..2 * k {
            for v in 0..2 * k {
                if u == v {
                    continue;
                }
                let (la, lb) = (u < k, v < k);
                let cross = la != lb;
                assert_eq!(
                    g4.holds2(0, u, v),
                    if cross { g1.holds2(0, u, v) } else { la }
                );
                assert_eq!(
                    g6.holds2(0, u, v),
                    if cross { g2.holds2(0, u, v) } else { !la }
                );
            }
        }
    }

    #[test]
    fn dual_pairs() {
        for k in 1..=5 {
            let g = |i| generate(&CatalogSpec::new(Family::G(i), k)).unwrap();
            assert_eq!(complement(&g(1)), g(10));
            assert_eq!(complement(&g(3)), g(8));
            // the complement of G4 swaps the roles of the layers
            assert!(isomorphic(&complement(&g(4)), &g(7)).unwrap());
        }
    }

    #[test]
    fn prefix_coherence() {
        let mut ordered = CatalogOptions::default();
        ordered.base_rule = EdgeRule::Le;
        ordered.reflexive = true;
        let specs = [
            CatalogSpec::new(Family::G(3), 0),
            CatalogSpec::new(Family::G(9), 0),
            CatalogSpec::new(Family::Chain2, 0),
            CatalogSpec::with_options(Family::OrderedTwoLayer, 0, ordered),
            CatalogSpec::with_options(
                Family::G(5),
                0,
                CatalogOptions {
                    apex: Some((true, false)),
                    ..Default::default()
                },
            ),
        ];
        for spec in specs {
            for k in 0..6 {
                let big = spec.resized(k + 1);
                let prefix = generate(&big)
                    .unwrap()
                    .induced(&big.prefix_vertices(k).unwrap())
                    .unwrap();
                assert_eq!(prefix, generate(&spec.resized(k)).unwrap(), "{spec:?} k={k}");
            }
        }
    }

    #[test]
    fn ordered_two_layer_interleaves() {
        let s = generate(&CatalogSpec::new(Family::OrderedTwoLayer, 3)).unwrap();
        assert!(s.is_ordered());
        assert_eq!(
            s.relation(1),
            &[
                vec![0, 1],
                vec![1, 0],
                vec![2, 3],
                vec![3, 2],
                vec![4, 5],
                vec![5, 4]
            ]
        );
        let mut o = CatalogOptions::default();
        o.reverse_order = true;
        o.direction = Direction::Forward;
        let r = generate(&CatalogSpec::with_options(Family::OrderedTwoLayer, 3, o)).unwrap();
        assert_eq!(r.vertices_in_order(), vec![5, 4, 3, 2, 1, 0]);
        assert_eq!(r.relation(1), &[vec![0, 1], vec![2, 3], vec![4, 5]]);
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!("G11".parse::<Family>(), Err(Error::UnknownFamily(_))));
        assert!(matches!("blob".parse::<Family>(), Err(Error::UnknownFamily(_))));
        let mut o = CatalogOptions::default();
        o.base_rule = EdgeRule::Le;
        assert!(matches!(
            generate(&CatalogSpec::with_options(Family::G(1), 3, o)),
            Err(Error::InvalidOptions(_))
        ));
        let mut o = CatalogOptions::default();
        o.reverse_order = true;
        assert!(generate(&CatalogSpec::with_options(Family::HalfGraph, 3, o)).is_err());
        let mut o = CatalogOptions::default();
        o.parts = 0;
        assert!(generate(&CatalogSpec::with_options(Family::ChainMarked, 3, o)).is_err());
    }

    #[test]
    fn random_structures() {
        let sig = Signature::binary(1);
        let e = random_structure(&sig, 5, 0.0, false, 1, RandomOptions::default()).unwrap();
        assert!(e.relation(0).is_empty());
        let o = random_structure(&sig, 5, 0.0, true, 1, RandomOptions::default()).unwrap();
        assert_eq!(o.relation(0).len(), 15);
        let full = random_structure(
            &sig,
            5,
            1.0,
            false,
            1,
            RandomOptions {
                symmetric: true,
                irreflexive: true,
            },
        )
        .unwrap();
        assert_eq!(full, generate(&CatalogSpec::new(Family::Complete, 5)).unwrap());
        let sig2 = Signature::new(vec![2, 2, 3]).unwrap();
        let a = random_structure(&sig2, 6, 0.4, true, 99, RandomOptions::default()).unwrap();
        let b = random_structure(&sig2, 6, 0.4, true, 99, RandomOptions::default()).unwrap();
        assert_eq!(a, b);
        assert!(random_structure(&sig, 3, 1.5, false, 0, RandomOptions::default()).is_err());
    }
}
