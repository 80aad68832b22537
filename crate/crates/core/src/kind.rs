use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::structure::{Signature, Structure};

/// Classes of finite structures that can be enumerated exhaustively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Symmetric irreflexive binary relation.
    Graph,
    /// Irreflexive binary relation.
    Digraph,
    /// Any binary relation, loops included.
    Binary,
    /// Linear order plus a symmetric irreflexive relation.
    OrderedGraph,
    /// Linear order plus an irreflexive relation.
    OrderedDigraph,
    /// Linear order plus any binary relation.
    OrderedBinary,
    /// A bare linear order.
    Chain,
    /// Linear order plus `m` relations made of loops only (unary marks).
    OrderedLoops(usize),
}

impl Kind {
    pub fn signature(self) -> Signature {
        match self {
            Kind::Graph | Kind::Digraph | Kind::Binary | Kind::Chain => Signature::binary(1),
            Kind::OrderedGraph | Kind::OrderedDigraph | Kind::OrderedBinary => Signature::binary(2),
            Kind::OrderedLoops(m) => Signature::binary(m + 1),
        }
    }

    pub fn is_ordered(self) -> bool {
        !matches!(self, Kind::Graph | Kind::Digraph | Kind::Binary)
    }

    /// The most specific kind admitting `s`, if any.
    pub fn infer(s: &Structure) -> Option<Kind> {
        let m = s.signature().len().saturating_sub(1);
        let mut candidates = vec![
            Kind::Chain,
            Kind::Graph,
            Kind::Digraph,
            Kind::Binary,
            Kind::OrderedGraph,
            Kind::OrderedDigraph,
            Kind::OrderedBinary,
        ];
        if m >= 1 {
            candidates.insert(1, Kind::OrderedLoops(m));
        }
        candidates.into_iter().find(|k| k.admits(s))
    }

    /// Whether `s` belongs to this kind.
    pub fn admits(self, s: &Structure) -> bool {
        if *s.signature() != self.signature() || s.is_ordered() != self.is_ordered() {
            return false;
        }
        let n = s.n();
        let symmetric = |rel: usize| {
            s.relation(rel)
                .iter()
                .all(|t| s.holds2(rel, t[1], t[0]))
        };
        let irreflexive = |rel: usize| s.relation(rel).iter().all(|t| t[0] != t[1]);
        match self {
            Kind::Graph => symmetric(0) && irreflexive(0),
            Kind::Digraph => irreflexive(0),
            Kind::Binary | Kind::Chain | Kind::OrderedBinary => true,
            Kind::OrderedGraph => symmetric(1) && irreflexive(1),
            Kind::OrderedDigraph => irreflexive(1),
            Kind::OrderedLoops(m) => {
                (1..=m).all(|rel| s.relation(rel).iter().all(|t| t[0] == t[1] && t[0] < n))
            }
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Graph => f.write_str("graph"),
            Kind::Digraph => f.write_str("digraph"),
            Kind::Binary => f.write_str("binary"),
            Kind::OrderedGraph => f.write_str("ordered_graph"),
            Kind::OrderedDigraph => f.write_str("ordered_digraph"),
            Kind::OrderedBinary => f.write_str("ordered_binary"),
            Kind::Chain => f.write_str("chain"),
            Kind::OrderedLoops(1) => f.write_str("ordered_loops"),
            Kind::OrderedLoops(m) => write!(f, "ordered_loops{m}"),
        }
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "graph" => Kind::Graph,
            "digraph" => Kind::Digraph,
            "binary" => Kind::Binary,
            "ordered_graph" => Kind::OrderedGraph,
            "ordered_digraph" => Kind::OrderedDigraph,
            "ordered_binary" => Kind::OrderedBinary,
            "chain" => Kind::Chain,
            "ordered_loops" => Kind::OrderedLoops(1),
            other => match other.strip_prefix("ordered_loops").map(str::parse::<usize>) {
                Some(Ok(m)) if m >= 1 => Kind::OrderedLoops(m),
                _ => return Err(Error::UnknownKind(s.into())),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, CatalogSpec, Family};

    #[test]
    fn tokens_round_trip() {
        for k in [
            Kind::Graph,
            Kind::Digraph,
            Kind::Binary,
            Kind::OrderedGraph,
            Kind::OrderedDigraph,
            Kind::OrderedBinary,
            Kind::Chain,
            Kind::OrderedLoops(1),
            Kind::OrderedLoops(3),
        ] {
            assert_eq!(k.to_string().parse::<Kind>().unwrap(), k);
        }
        assert!("ordered_loops0".parse::<Kind>().is_err());
        assert!("hypergraph".parse::<Kind>().is_err());
    }

    #[test]
    fn catalog_members_belong_to_their_kinds() {
        let g = generate(&CatalogSpec::new(Family::G(7), 3)).unwrap();
        assert!(Kind::Graph.admits(&g));
        assert!(Kind::Digraph.admits(&g));
        assert!(!Kind::OrderedGraph.admits(&g));
        let c = generate(&CatalogSpec::new(Family::Chain2, 5)).unwrap();
        assert!(Kind::OrderedLoops(1).admits(&c));
        let t = generate(&CatalogSpec::new(Family::OrderedTwoLayer, 3)).unwrap();
        assert!(Kind::OrderedGraph.admits(&t));
        assert!(!Kind::OrderedLoops(1).admits(&t));
        assert_eq!(Kind::infer(&g), Some(Kind::Graph));
        assert_eq!(Kind::infer(&c), Some(Kind::OrderedLoops(1)));
        assert_eq!(Kind::infer(&t), Some(Kind::OrderedGraph));
        let chain = generate(&CatalogSpec::new(Family::Chain, 3)).unwrap();
        assert_eq!(Kind::infer(&chain), Some(Kind::Chain));
    }
}
