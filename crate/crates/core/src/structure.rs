//! Finite relational structures on the domain `{0..n-1}`.
//!
//! Relations are kept as sorted, duplicate-free tuple lists (the interchange
//! form) alongside a membership index: a bit per vertex for unary relations,
//! a bit matrix for binary ones and a hash set for everything wider.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The list of arities of the relations of a structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Signature(Vec<usize>);

impl Signature {
    pub fn new(arities: Vec<usize>) -> Result<Self> {
        if arities.is_empty() {
            return Err(Error::EmptySignature);
        }
        if arities.contains(&0) {
            return Err(Error::ZeroArity);
        }
        Ok(Signature(arities))
    }

    /// `k` binary relations.
    pub fn binary(k: usize) -> Self {
        Signature(vec![2; k.max(1)])
    }

    pub fn arities(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn arity(&self, relation: usize) -> usize {
        self.0[relation]
    }

    pub fn max_arity(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// All relations have arity at most two.
    pub fn is_binary(&self) -> bool {
        self.max_arity() <= 2
    }
}

impl TryFrom<Vec<usize>> for Signature {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Signature::new(v)
    }
}

impl From<Signature> for Vec<usize> {
    fn from(s: Signature) -> Self {
        s.0
    }
}

#[derive(Clone, Debug)]
pub(crate) struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            words,
            bits: vec![0; words * n],
        }
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }
}

#[derive(Clone, Debug)]
enum Index {
    Unary(Vec<bool>),
    Binary(BitMatrix),
    Wide(HashSet<Vec<usize>>),
}

/// A finite relational structure. Immutable once built.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "StructureRepr", into = "StructureRepr")]
pub struct Structure {
    signature: Signature,
    n: usize,
    relations: Vec<Vec<Vec<usize>>>,
    ordered: bool,
    index: Vec<Index>,
    // vertices listed by increasing position in relation 0 (ordered only)
    by_rank: Vec<usize>,
    rank: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureRepr {
    signature: Vec<usize>,
    n: usize,
    ordered: bool,
    relations: Vec<Vec<Vec<usize>>>,
}

impl TryFrom<StructureRepr> for Structure {
    type Error = Error;
    fn try_from(r: StructureRepr) -> Result<Self> {
        Structure::new(Signature::new(r.signature)?, r.n, r.relations, r.ordered)
    }
}

impl From<Structure> for StructureRepr {
    fn from(s: Structure) -> Self {
        StructureRepr {
            signature: s.signature.0,
            n: s.n,
            ordered: s.ordered,
            relations: s.relations,
        }
    }
}

impl PartialEq for Structure {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature
            && self.n == other.n
            && self.ordered == other.ordered
            && self.relations == other.relations
    }
}

impl Eq for Structure {}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Structure")
            .field("signature", &self.signature.0)
            .field("n", &self.n)
            .field("ordered", &self.ordered)
            .field("relations", &self.relations)
            .finish()
    }
}

impl Structure {
    /// Validates and canonicalizes a structure.
    pub fn new(
        signature: Signature,
        n: usize,
        mut relations: Vec<Vec<Vec<usize>>>,
        ordered: bool,
    ) -> Result<Self> {
        if relations.len() != signature.len() {
            return Err(Error::RelationCount {
                expected: signature.len(),
                found: relations.len(),
            });
        }
        for (i, rel) in relations.iter_mut().enumerate() {
            let arity = signature.arity(i);
            for t in rel.iter() {
                if t.len() != arity {
                    return Err(Error::ArityMismatch {
                        relation: i,
                        expected: arity,
                        found: t.len(),
                    });
                }
                if let Some(&v) = t.iter().find(|&&v| v >= n) {
                    return Err(Error::OutOfRange { vertex: v, n });
                }
            }
            rel.sort_unstable();
            rel.dedup();
        }
        let mut s = Structure::from_sorted(signature, n, relations, false);
        if ordered {
            s.install_order()?;
        }
        Ok(s)
    }

    /// Builds without validation; tuples must already be sorted, unique and in range.
    pub(crate) fn from_sorted(
        signature: Signature,
        n: usize,
        relations: Vec<Vec<Vec<usize>>>,
        ordered: bool,
    ) -> Self {
        let index = relations
            .iter()
            .zip(signature.arities())
            .map(|(rel, &arity)| match arity {
                1 => {
                    let mut v = vec![false; n];
                    for t in rel {
                        v[t[0]] = true;
                    }
                    Index::Unary(v)
                }
                2 => {
                    let mut m = BitMatrix::new(n);
                    for t in rel {
                        m.set(t[0], t[1]);
                    }
                    Index::Binary(m)
                }
                _ => Index::Wide(rel.iter().cloned().collect()),
            })
            .collect();
        let mut s = Structure {
            signature,
            n,
            relations,
            ordered: false,
            index,
            by_rank: Vec::new(),
            rank: Vec::new(),
        };
        if ordered {
            s.install_order()
                .expect("restriction of a linear order is a linear order");
        }
        s
    }

    fn install_order(&mut self) -> Result<()> {
        if self.signature.arity(0) != 2 {
            return Err(Error::NotLinearOrder("relation 0 is not binary".into()));
        }
        let n = self.n;
        let mut rank = vec![0usize; n];
        for u in 0..n {
            if !self.holds2(0, u, u) {
                return Err(Error::NotLinearOrder(format!("missing loop at {u}")));
            }
            for v in (u + 1)..n {
                match (self.holds2(0, u, v), self.holds2(0, v, u)) {
                    (true, true) => {
                        return Err(Error::NotLinearOrder(format!(
                            "{u} and {v} violate antisymmetry"
                        )))
                    }
                    (false, false) => {
                        return Err(Error::NotLinearOrder(format!(
                            "{u} and {v} are incomparable"
                        )))
                    }
                    (true, false) => rank[v] += 1,
                    (false, true) => rank[u] += 1,
                }
            }
        }
        // a total antisymmetric relation is transitive iff its scores are distinct
        let mut by_rank = vec![usize::MAX; n];
        for (v, &r) in rank.iter().enumerate() {
            if by_rank[r] != usize::MAX {
                return Err(Error::NotLinearOrder("relation is not transitive".into()));
            }
            by_rank[r] = v;
        }
        self.ordered = true;
        self.rank = rank;
        self.by_rank = by_rank;
        Ok(())
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    pub fn relations(&self) -> &[Vec<Vec<usize>>] {
        &self.relations
    }

    pub fn relation(&self, i: usize) -> &[Vec<usize>] {
        &self.relations[i]
    }

    /// Membership of `tuple` in relation `rel`.
    #[inline]
    pub fn holds(&self, rel: usize, tuple: &[usize]) -> bool {
        match &self.index[rel] {
            Index::Unary(v) => v[tuple[0]],
            Index::Binary(m) => m.get(tuple[0], tuple[1]),
            Index::Wide(set) => set.contains(tuple),
        }
    }

    /// Membership of `(u, v)` in the binary relation `rel`.
    #[inline]
    pub fn holds2(&self, rel: usize, u: usize, v: usize) -> bool {
        match &self.index[rel] {
            Index::Binary(m) => m.get(u, v),
            _ => panic!("relation {rel} is not binary"),
        }
    }

    /// Position of `v` in the linear order (ordered structures only).
    pub fn rank(&self, v: usize) -> usize {
        assert!(self.ordered, "rank of an unordered structure");
        self.rank[v]
    }

    /// Vertices listed in increasing order. The identity for unordered structures.
    pub fn vertices_in_order(&self) -> Vec<usize> {
        if self.ordered {
            self.by_rank.clone()
        } else {
            (0..self.n).collect()
        }
    }

    pub(crate) fn by_rank(&self) -> &[usize] {
        &self.by_rank
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::OutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_same_signature(&self, other: &Structure) -> Result<()> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch {
                left: self.signature.0.clone(),
                right: other.signature.0.clone(),
            });
        }
        Ok(())
    }

    /// The substructure induced on `subset`, relabeled by its increasing enumeration.
    pub fn induced(&self, subset: &[usize]) -> Result<Structure> {
        let mut verts = subset.to_vec();
        verts.sort_unstable();
        verts.dedup();
        for &v in &verts {
            self.check_vertex(v)?;
        }
        Ok(self.induced_sorted(&verts))
    }

    pub(crate) fn induced_sorted(&self, verts: &[usize]) -> Structure {
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            new_id[v] = i;
        }
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .filter(|t| t.iter().all(|&v| new_id[v] != usize::MAX))
                    .map(|t| t.iter().map(|&v| new_id[v]).collect())
                    .collect()
            })
            .collect();
        Structure::from_sorted(self.signature.clone(), verts.len(), relations, self.ordered)
    }

    /// Same tuples, ordered flag dropped.
    pub fn forget_order(&self) -> Structure {
        Structure::from_sorted(
            self.signature.clone(),
            self.n,
            self.relations.clone(),
            false,
        )
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Structure> {
        if perm.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "permutation of length {} for domain of size {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
        }
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                let mut r: Vec<Vec<usize>> = rel
                    .iter()
                    .map(|t| t.iter().map(|&v| perm[v]).collect())
                    .collect();
                r.sort_unstable();
                r
            })
            .collect();
        Ok(Structure::from_sorted(
            self.signature.clone(),
            self.n,
            relations,
            self.ordered,
        ))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("structure serializes")
    }

    pub fn from_json(s: &str) -> Result<Structure> {
        Ok(serde_json::from_str(s)?)
    }
}

/// The reflexive natural order `{(i, j) : i <= j}` on `{0..n-1}`.
pub fn natural_order(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            out.push(vec![i, j]);
        }
    }
    out
}

/// Symmetric closure of a list of undirected edges, as binary tuples.
pub fn symmetric(edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    edges
        .iter()
        .flat_map(|&(u, v)| [vec![u, v], vec![v, u]])
        .collect()
}

/// Convenience constructor for a simple graph.
pub fn graph(n: usize, edges: &[(usize, usize)]) -> Structure {
    Structure::new(Signature::binary(1), n, vec![symmetric(edges)], false)
        .expect("valid graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_on_three_vertices() {
        let s = Structure::new(
            Signature::new(vec![2]).unwrap(),
            3,
            vec![vec![vec![1, 0], vec![0, 1], vec![1, 2], vec![2, 1]]],
            false,
        )
        .unwrap();
        assert_eq!(
            s.relation(0),
            &[vec![0, 1], vec![1, 0], vec![1, 2], vec![2, 1]]
        );
        assert!(s.holds2(0, 1, 2));
        assert!(!s.holds2(0, 0, 2));
    }

    #[test]
    fn two_chain_with_empty_graph() {
        let s = Structure::new(
            Signature::new(vec![2, 2]).unwrap(),
            2,
            vec![vec![vec![0, 0], vec![0, 1], vec![1, 1]], vec![]],
            true,
        )
        .unwrap();
        assert!(s.is_ordered());
        assert_eq!(s.vertices_in_order(), vec![0, 1]);
    }

    #[test]
    fn order_must_be_antisymmetric() {
        let err = Structure::new(
            Signature::new(vec![2, 2]).unwrap(),
            2,
            vec![vec![vec![0, 1], vec![1, 0]], vec![]],
            true,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotLinearOrder(_)));
    }

    #[test]
    fn order_must_be_transitive() {
        // 0 < 1 < 2 < 0 with loops: total, antisymmetric, cyclic
        let rel = vec![
            vec![0, 0],
            vec![1, 1],
            vec![2, 2],
            vec![0, 1],
            vec![1, 2],
            vec![2, 0],
        ];
        let err = Structure::new(Signature::binary(1), 3, vec![rel], true).unwrap_err();
        assert!(matches!(err, Error::NotLinearOrder(_)));
    }

    #[test]
    fn non_natural_order_is_ranked() {
        // 2 < 0 < 1
        let rel = vec![
            vec![0, 0],
            vec![1, 1],
            vec![2, 2],
            vec![2, 0],
            vec![2, 1],
            vec![0, 1],
        ];
        let s = Structure::new(Signature::binary(1), 3, vec![rel], true).unwrap();
        assert_eq!(s.vertices_in_order(), vec![2, 0, 1]);
        assert_eq!(s.rank(2), 0);
    }

    #[test]
    fn rejects_bad_tuples() {
        let sig = Signature::new(vec![2]).unwrap();
        assert!(matches!(
            Structure::new(sig.clone(), 2, vec![vec![vec![0, 1, 1]]], false),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            Structure::new(sig.clone(), 2, vec![vec![vec![0, 2]]], false),
            Err(Error::OutOfRange { vertex: 2, n: 2 })
        ));
        assert!(matches!(
            Structure::new(sig, 2, vec![], false),
            Err(Error::RelationCount { .. })
        ));
        assert_eq!(Signature::new(vec![]), Err(Error::EmptySignature));
        assert_eq!(Signature::new(vec![2, 0]), Err(Error::ZeroArity));
    }

    #[test]
    fn induced_examples() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        let ends = p3.induced(&[0, 2]).unwrap();
        assert_eq!(ends.n(), 2);
        assert!(ends.relation(0).is_empty());
        assert_eq!(p3.induced(&[0, 1, 2]).unwrap(), p3);
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(k3.induced(&[0, 1]).unwrap(), graph(2, &[(0, 1)]));
        assert!(p3.induced(&[0, 3]).is_err());
    }

    #[test]
    fn ternary_relations_are_indexed() {
        let s = Structure::new(
            Signature::new(vec![3, 1]).unwrap(),
            3,
            vec![vec![vec![2, 1, 0], vec![0, 1, 2]], vec![vec![1]]],
            false,
        )
        .unwrap();
        assert!(s.holds(0, &[2, 1, 0]));
        assert!(!s.holds(0, &[1, 2, 0]));
        assert!(s.holds(1, &[1]));
        let sub = s.induced(&[1, 2]).unwrap();
        assert!(sub.relation(0).is_empty());
        assert_eq!(sub.relation(1), &[vec![0]]);
    }

    #[test]
    fn json_round_trip() {
        let s = Structure::new(
            Signature::new(vec![2, 2]).unwrap(),
            3,
            vec![natural_order(3), vec![vec![2, 0]]],
            true,
        )
        .unwrap();
        let text = s.to_json();
        assert_eq!(
            text,
            r#"{"signature":[2,2],"n":3,"ordered":true,"relations":[[[0,0],[0,1],[0,2],[1,1],[1,2],[2,2]],[[2,0]]]}"#
        );
        let back = Structure::from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn json_rejects_unknown_fields_and_bad_orders() {
        assert!(Structure::from_json(
            r#"{"signature":[2],"n":1,"ordered":false,"relations":[[]],"extra":1}"#
        )
        .is_err());
        assert!(Structure::from_json(
            r#"{"signature":[2],"n":2,"ordered":true,"relations":[[[0,0],[1,1]]]}"#
        )
        .is_err());
    }
}
