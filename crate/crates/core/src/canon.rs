//! Canonical codes.
//!
//! A code is a header (`flag`, `n`) followed by the membership bits of every
//! relation under a chosen labeling, written block by block: block `p` holds,
//! for each relation in turn, the bits of all tuples over `{0..=p}` whose
//! largest entry is `p`, in lexicographic order. Ordered structures use the
//! labeling forced by the order (relation 0 is then implied and skipped);
//! everything else takes the lexicographically least bit string over all
//! labelings.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::{natural_order, Signature, Structure};

const FLAG_GENERIC: u8 = 0;
const FLAG_ORDERED: u8 = 1;
const HEADER: usize = 5;

/// Isomorphism-invariant fingerprint of a structure.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Code(Vec<u8>);

impl Code {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Result<Code> {
        if !s.len().is_multiple_of(2) {
            return Err(Error::MalformedCode("odd hex length".into()));
        }
        let bytes = (0..s.len())
            .step_by(2)
            .map(|i| {
                u8::from_str_radix(&s[i..i + 2], 16)
                    .map_err(|e| Error::MalformedCode(e.to_string()))
            })
            .collect::<Result<Vec<u8>>>()?;
        if bytes.len() < HEADER {
            return Err(Error::MalformedCode("missing header".into()));
        }
        Ok(Code(bytes))
    }

    /// Domain size recorded in the header.
    pub fn n(&self) -> usize {
        u32::from_be_bytes([self.0[1], self.0[2], self.0[3], self.0[4]]) as usize
    }

    pub fn is_ordered(&self) -> bool {
        self.0[0] == FLAG_ORDERED
    }

    /// Rebuilds the canonically labeled representative.
    pub fn decode(&self, signature: &Signature) -> Result<Structure> {
        let n = self.n();
        let ordered = match self.0[0] {
            FLAG_GENERIC => false,
            FLAG_ORDERED => true,
            f => return Err(Error::MalformedCode(format!("unknown flag {f}"))),
        };
        let skip = usize::from(ordered);
        let payload = &self.0[HEADER..];
        let mut bit = 0usize;
        let mut relations: Vec<Vec<Vec<usize>>> = vec![Vec::new(); signature.len()];
        if ordered {
            if signature.arity(0) != 2 {
                return Err(Error::MalformedCode("ordered code needs binary relation 0".into()));
            }
            relations[0] = natural_order(n);
        }
        for p in 0..n {
            for (rel, &arity) in signature.arities().iter().enumerate().skip(skip) {
                for t in block_tuples(p, arity) {
                    let byte = payload
                        .get(bit / 8)
                        .ok_or_else(|| Error::MalformedCode("truncated payload".into()))?;
                    if byte >> (7 - bit % 8) & 1 == 1 {
                        relations[rel].push(t);
                    }
                    bit += 1;
                }
            }
        }
        if payload.len() != bit.div_ceil(8) {
            return Err(Error::MalformedCode("payload length mismatch".into()));
        }
        Structure::new(signature.clone(), n, relations, ordered)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code({})", self.to_hex())
    }
}

impl TryFrom<String> for Code {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Code::from_hex(&s)
    }
}

impl From<Code> for String {
    fn from(c: Code) -> Self {
        c.to_hex()
    }
}

/// MSB-first bit packer with truncation, shared by every code producer.
#[derive(Clone, Default)]
pub(crate) struct BitWriter {
    bytes: Vec<u8>,
    len: usize,
}

impl BitWriter {
    #[inline]
    pub(crate) fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().unwrap() |= 1 << (7 - self.len % 8);
        }
        self.len += 1;
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    pub(crate) fn truncate(&mut self, len: usize) {
        self.bytes.truncate(len.div_ceil(8));
        if !len.is_multiple_of(8) {
            *self.bytes.last_mut().unwrap() &= 0xffu8 << (8 - len % 8);
        }
        self.len = len;
    }

    pub(crate) fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub(crate) fn into_code(self, ordered: bool, n: usize) -> Code {
        let mut out = Vec::with_capacity(HEADER + self.bytes.len());
        out.push(if ordered { FLAG_ORDERED } else { FLAG_GENERIC });
        out.extend_from_slice(&(n as u32).to_be_bytes());
        out.extend_from_slice(&self.bytes);
        Code(out)
    }
}

pub(crate) fn code_from_packed(ordered: bool, n: usize, packed: &[u8]) -> Code {
    let mut out = Vec::with_capacity(HEADER + packed.len());
    out.push(if ordered { FLAG_ORDERED } else { FLAG_GENERIC });
    out.extend_from_slice(&(n as u32).to_be_bytes());
    out.extend_from_slice(packed);
    Code(out)
}

/// Tuples over `{0..=p}` of the given arity whose maximum is `p`, lexicographic.
pub(crate) fn block_tuples(p: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_word(p + 1, arity, |t| {
        if t.contains(&p) {
            out.push(t.to_vec());
        }
    });
    out
}

/// Calls `f` on every word of the given length over `{0..alphabet-1}`, lexicographically.
pub(crate) fn for_each_word(alphabet: usize, len: usize, mut f: impl FnMut(&[usize])) {
    if alphabet == 0 && len > 0 {
        return;
    }
    let mut w = vec![0usize; len];
    loop {
        f(&w);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if w[i] + 1 < alphabet {
                w[i] += 1;
                for x in w.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Per-position tuple layouts for a signature, reused across many codes.
pub(crate) struct Layout {
    // blocks[p][rel] = tuples of block p for relation rel
    blocks: Vec<Vec<Vec<Vec<usize>>>>,
    offsets: Vec<usize>,
    skip: usize,
}

impl Layout {
    pub(crate) fn new(signature: &Signature, n: usize, skip_order: bool) -> Layout {
        let skip = usize::from(skip_order);
        let mut blocks = Vec::with_capacity(n);
        let mut offsets = vec![0];
        for p in 0..n {
            let block: Vec<Vec<Vec<usize>>> = signature
                .arities()
                .iter()
                .map(|&a| block_tuples(p, a))
                .collect();
            let width: usize = block.iter().skip(skip).map(Vec::len).sum();
            offsets.push(offsets[p] + width);
            blocks.push(block);
        }
        Layout {
            blocks,
            offsets,
            skip,
        }
    }

    /// Bits of block `p` under `labels` (position -> vertex), via `sink`.
    #[inline]
    pub(crate) fn write_block(
        &self,
        s: &Structure,
        labels: &[usize],
        p: usize,
        buf: &mut Vec<usize>,
        mut sink: impl FnMut(bool),
    ) {
        for (rel, tuples) in self.blocks[p].iter().enumerate().skip(self.skip) {
            for t in tuples {
                buf.clear();
                buf.extend(t.iter().map(|&i| labels[i]));
                sink(s.holds(rel, buf));
            }
        }
    }

    pub(crate) fn total_bits(&self) -> usize {
        *self.offsets.last().unwrap()
    }
}

/// Canonical code: forced labeling for ordered structures, permutation
/// minimization otherwise.
pub fn canonical_code(s: &Structure) -> Code {
    if s.is_ordered() {
        ordered_code(s)
    } else {
        generic_code(s)
    }
}

/// Code under the order-forced labeling.
pub fn ordered_code(s: &Structure) -> Code {
    assert!(s.is_ordered(), "ordered_code on an unordered structure");
    let layout = Layout::new(s.signature(), s.n(), true);
    let labels = s.by_rank();
    let mut w = BitWriter::default();
    let mut buf = Vec::new();
    for p in 0..s.n() {
        layout.write_block(s, labels, p, &mut buf, |b| w.push(b));
    }
    w.into_code(true, s.n())
}

/// Least encoding over all `n!` labelings, ignoring any ordered flag.
///
/// The search fixes positions left to right and abandons a branch as soon as
/// its prefix exceeds the best complete encoding found so far. At each
/// position it tries only one vertex from each class of unplaced vertices
/// whose transposition is an automorphism: such branches yield identical
/// encodings.
pub fn generic_code(s: &Structure) -> Code {
    let n = s.n();
    let layout = Layout::new(s.signature(), n, false);
    let twin_class = transposition_classes(s);
    let mut search = MinSearch {
        s,
        layout: &layout,
        twin_class,
        labels: vec![0; n],
        used: vec![false; n],
        cur: vec![0; layout.total_bits()],
        best: None,
        buf: Vec::new(),
    };
    search.run(0);
    let best = search.best.unwrap_or_default();
    let mut w = BitWriter::default();
    for b in best {
        w.push(b == 1);
    }
    w.into_code(false, n)
}

struct MinSearch<'a> {
    s: &'a Structure,
    layout: &'a Layout,
    twin_class: Vec<usize>,
    labels: Vec<usize>,
    used: Vec<bool>,
    cur: Vec<u8>,
    best: Option<Vec<u8>>,
    buf: Vec<usize>,
}

impl MinSearch<'_> {
    fn run(&mut self, p: usize) {
        let n = self.s.n();
        if p == n {
            let better = match &self.best {
                None => true,
                Some(b) => self.cur < *b,
            };
            if better {
                self.best = Some(self.cur.clone());
            }
            return;
        }
        let (start, end) = (self.layout.offsets[p], self.layout.offsets[p + 1]);
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            let class = self.twin_class[v];
            if (0..v).any(|u| !self.used[u] && self.twin_class[u] == class) {
                continue;
            }
            self.labels[p] = v;
            let mut pos = start;
            let cur = &mut self.cur;
            self.layout
                .write_block(self.s, &self.labels, p, &mut self.buf, |b| {
                    cur[pos] = u8::from(b);
                    pos += 1;
                });
            if let Some(best) = &self.best {
                if self.cur[..end].cmp(&best[..end]) == Ordering::Greater {
                    continue;
                }
            }
            self.used[v] = true;
            self.run(p + 1);
            self.used[v] = false;
        }
    }
}

/// Classes of the relation "swapping u and v is an automorphism".
pub(crate) fn transposition_classes(s: &Structure) -> Vec<usize> {
    let n = s.n();
    let mut class: Vec<usize> = (0..n).collect();
    for v in 0..n {
        if class[v] != v {
            continue;
        }
        for w in (v + 1)..n {
            if class[w] == w && swap_is_automorphism(s, v, w) {
                class[w] = v;
            }
        }
    }
    class
}

pub(crate) fn swap_is_automorphism(s: &Structure, u: usize, v: usize) -> bool {
    let swap = |x: usize| {
        if x == u {
            v
        } else if x == v {
            u
        } else {
            x
        }
    };
    if s.signature().is_binary() {
        for (rel, &arity) in s.signature().arities().iter().enumerate() {
            if arity == 1 {
                if s.holds(rel, &[u]) != s.holds(rel, &[v]) {
                    return false;
                }
                continue;
            }
            if s.holds2(rel, u, u) != s.holds2(rel, v, v)
                || s.holds2(rel, u, v) != s.holds2(rel, v, u)
            {
                return false;
            }
            for w in 0..s.n() {
                if w == u || w == v {
                    continue;
                }
                if s.holds2(rel, u, w) != s.holds2(rel, v, w)
                    || s.holds2(rel, w, u) != s.holds2(rel, w, v)
                {
                    return false;
                }
            }
        }
        return true;
    }
    let mut buf = Vec::new();
    for (rel, tuples) in s.relations().iter().enumerate() {
        for t in tuples {
            buf.clear();
            buf.extend(t.iter().map(|&x| swap(x)));
            if !s.holds(rel, &buf) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::graph;

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    // unpruned minimum over all labelings, as an oracle for the pruned search
    fn brute_force_code(s: &Structure) -> Code {
        let layout = Layout::new(s.signature(), s.n(), false);
        let mut best: Option<Vec<u8>> = None;
        let mut buf = Vec::new();
        for labels in all_permutations(s.n()) {
            let mut bits = Vec::new();
            for p in 0..s.n() {
                layout.write_block(s, &labels, p, &mut buf, |b| bits.push(u8::from(b)));
            }
            if best.as_ref().is_none_or(|b| bits < *b) {
                best = Some(bits);
            }
        }
        let mut w = BitWriter::default();
        for b in best.unwrap() {
            w.push(b == 1);
        }
        w.into_code(false, s.n())
    }

    #[test]
    fn block_tuples_layout() {
        assert_eq!(block_tuples(0, 2), vec![vec![0, 0]]);
        assert_eq!(
            block_tuples(1, 2),
            vec![vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(block_tuples(2, 1), vec![vec![2]]);
        assert_eq!(block_tuples(1, 3).len(), 7);
    }

    #[test]
    fn isolated_vertex_position_does_not_matter() {
        let a = graph(3, &[(0, 1)]);
        let b = graph(3, &[(1, 2)]);
        assert_eq!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn path_and_triangle_differ() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_ne!(canonical_code(&p3), canonical_code(&k3));
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        let samples = [
            graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
            graph(6, &[(0, 3), (1, 4), (2, 5)]),
            graph(5, &[]),
            graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]),
            Structure::new(
                Signature::new(vec![2, 1]).unwrap(),
                4,
                vec![
                    vec![vec![0, 1], vec![1, 2], vec![2, 0], vec![3, 3]],
                    vec![vec![2]],
                ],
                false,
            )
            .unwrap(),
            Structure::new(
                Signature::new(vec![3]).unwrap(),
                4,
                vec![vec![vec![0, 1, 2], vec![1, 2, 3], vec![3, 3, 0]]],
                false,
            )
            .unwrap(),
        ];
        for s in &samples {
            assert_eq!(generic_code(s), brute_force_code(s), "{s:?}");
        }
    }

    #[test]
    fn ordered_code_is_deterministic_and_decodes() {
        let s = Structure::new(
            Signature::new(vec![2, 2]).unwrap(),
            3,
            vec![natural_order(3), vec![vec![0, 2], vec![1, 1]]],
            true,
        )
        .unwrap();
        let rebuilt = Structure::from_json(&s.to_json()).unwrap();
        let c = canonical_code(&s);
        assert_eq!(c.as_bytes(), canonical_code(&rebuilt).as_bytes());
        assert!(c.is_ordered());
        assert_eq!(c.decode(s.signature()).unwrap(), s);
    }

    #[test]
    fn ordered_edges_in_opposite_directions_differ() {
        let sig = Signature::new(vec![2, 2]).unwrap();
        let a = Structure::new(sig.clone(), 2, vec![natural_order(2), vec![vec![0, 1]]], true)
            .unwrap();
        let b = Structure::new(sig, 2, vec![natural_order(2), vec![vec![1, 0]]], true).unwrap();
        assert_ne!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn generic_code_decodes_to_isomorphic_copy() {
        let s = graph(5, &[(0, 4), (4, 2), (2, 1)]);
        let c = canonical_code(&s);
        let d = c.decode(s.signature()).unwrap();
        assert_eq!(canonical_code(&d), c);
    }

    #[test]
    fn hex_round_trip_and_errors() {
        let c = canonical_code(&graph(3, &[(0, 1)]));
        let h = c.to_hex();
        assert_eq!(h, h.to_lowercase());
        assert_eq!(Code::from_hex(&h).unwrap(), c);
        assert!(Code::from_hex("abc").is_err());
        assert!(Code::from_hex("00").is_err());
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, format!("\"{h}\""));
    }

    #[test]
    fn empty_structure_code() {
        let e = graph(0, &[]);
        let c = canonical_code(&e);
        assert_eq!(c.n(), 0);
        assert_eq!(c.decode(e.signature()).unwrap(), e);
    }
}
