//! Isomorphism, embedding and Fraïssé intervals.

use crate::canon::{block_tuples, for_each_word, ordered_code};
use crate::error::{Error, Result};
use crate::structure::Structure;

/// Whether some bijection preserves every relation in both directions.
///
/// Two ordered structures are compared through their unique order-preserving
/// bijection only.
pub fn isomorphic(r: &Structure, s: &Structure) -> Result<bool> {
    r.check_same_signature(s)?;
    Ok(isomorphic_unchecked(r, s))
}

pub(crate) fn isomorphic_unchecked(r: &Structure, s: &Structure) -> bool {
    if r.n() != s.n() {
        return false;
    }
    if r.relations()
        .iter()
        .zip(s.relations())
        .any(|(a, b)| a.len() != b.len())
    {
        return false;
    }
    if r.is_ordered() && s.is_ordered() {
        return ordered_code(r) == ordered_code(s);
    }
    Matcher::new(r, s, true).run().is_some()
}

/// Whether `p` is isomorphic to an induced substructure of `r`.
pub fn embeds(p: &Structure, r: &Structure) -> Result<bool> {
    Ok(find_embedding(p, r)?.is_some())
}

/// An embedding of `p` into `r` as the list of images, if one exists.
pub fn find_embedding(p: &Structure, r: &Structure) -> Result<Option<Vec<usize>>> {
    p.check_same_signature(r)?;
    if p.n() > r.n() {
        return Ok(None);
    }
    Ok(Matcher::new(p, r, false).run())
}

// Vertex invariant: per relation and per tuple position, the number of
// tuples with the vertex there.
fn invariants(s: &Structure) -> Vec<Vec<usize>> {
    let width: usize = s.signature().arities().iter().sum();
    let mut inv = vec![vec![0usize; width]; s.n()];
    let mut base = 0;
    for (rel, &arity) in s.signature().arities().iter().enumerate() {
        for t in s.relation(rel) {
            for (pos, &v) in t.iter().enumerate() {
                inv[v][base + pos] += 1;
            }
        }
        base += arity;
    }
    inv
}

/// Backtracking injective matcher from `src` into `dst`, checking induced
/// relations incrementally. With `bijective`, vertex invariants must agree.
struct Matcher<'a> {
    src: &'a Structure,
    dst: &'a Structure,
    order: Vec<usize>,
    images: Vec<usize>,
    used: Vec<bool>,
    monotone: bool,
    inv: Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)>,
    // layouts[d][rel]: tuples over positions 0..=d containing d
    layouts: Vec<Vec<Vec<Vec<usize>>>>,
    buf_src: Vec<usize>,
    buf_dst: Vec<usize>,
}

impl<'a> Matcher<'a> {
    fn new(src: &'a Structure, dst: &'a Structure, bijective: bool) -> Self {
        let monotone = src.is_ordered() && dst.is_ordered();
        let order = if monotone {
            src.vertices_in_order()
        } else {
            // most constrained vertices first
            let inv = invariants(src);
            let mut v: Vec<usize> = (0..src.n()).collect();
            v.sort_by_key(|&x| std::cmp::Reverse(inv[x].iter().sum::<usize>()));
            v
        };
        let layouts = (0..src.n())
            .map(|d| {
                src.signature()
                    .arities()
                    .iter()
                    .map(|&a| block_tuples(d, a))
                    .collect()
            })
            .collect();
        Matcher {
            src,
            dst,
            order,
            images: Vec::with_capacity(src.n()),
            used: vec![false; dst.n()],
            monotone,
            inv: bijective.then(|| (invariants(src), invariants(dst))),
            layouts,
            buf_src: Vec::new(),
            buf_dst: Vec::new(),
        }
    }

    fn run(mut self) -> Option<Vec<usize>> {
        if self.extend(0) {
            let mut map = vec![0; self.src.n()];
            for (i, &v) in self.order.iter().enumerate() {
                map[v] = self.images[i];
            }
            Some(map)
        } else {
            None
        }
    }

    fn consistent(&mut self, d: usize) -> bool {
        for (rel, tuples) in self.layouts[d].iter().enumerate() {
            for t in tuples {
                self.buf_src.clear();
                self.buf_src.extend(t.iter().map(|&i| self.order[i]));
                self.buf_dst.clear();
                self.buf_dst.extend(t.iter().map(|&i| self.images[i]));
                if self.src.holds(rel, &self.buf_src) != self.dst.holds(rel, &self.buf_dst) {
                    return false;
                }
            }
        }
        true
    }

    fn extend(&mut self, d: usize) -> bool {
        if d == self.src.n() {
            return true;
        }
        let v = self.order[d];
        let start = if self.monotone {
            self.images.last().map_or(0, |&w| self.dst.rank(w) + 1)
        } else {
            0
        };
        for pos in start..self.dst.n() {
            let w = if self.monotone {
                self.dst.by_rank()[pos]
            } else {
                pos
            };
            if self.used[w] {
                continue;
            }
            if let Some((a, b)) = &self.inv {
                if a[v] != b[w] {
                    continue;
                }
            }
            self.images.push(w);
            if self.consistent(d) {
                self.used[w] = true;
                if self.extend(d + 1) {
                    return true;
                }
                self.used[w] = false;
            }
            self.images.pop();
        }
        false
    }
}

/// Whether `set` is an interval of `r` in Fraïssé's sense: any two of its
/// elements can be exchanged inside every tuple whose other entries lie
/// outside `set` without changing membership.
pub fn is_interval(r: &Structure, set: &[usize]) -> Result<bool> {
    for &v in set {
        r.check_vertex(v)?;
    }
    let mut inside = vec![false; r.n()];
    for &v in set {
        inside[v] = true;
    }
    let members: Vec<usize> = (0..r.n()).filter(|&v| inside[v]).collect();
    let outside: Vec<usize> = (0..r.n()).filter(|&v| !inside[v]).collect();
    let Some((&x0, rest)) = members.split_first() else {
        return Ok(true);
    };
    if outside.is_empty() {
        return Ok(true);
    }
    if r.signature().is_binary() {
        for &y in rest {
            for (rel, &arity) in r.signature().arities().iter().enumerate() {
                if arity != 2 {
                    continue;
                }
                for &z in &outside {
                    if r.holds2(rel, z, x0) != r.holds2(rel, z, y)
                        || r.holds2(rel, x0, z) != r.holds2(rel, y, z)
                    {
                        return Ok(false);
                    }
                }
            }
        }
        return Ok(true);
    }
    // tuples over the outside plus one marked slot standing for x0 or y
    let marker = outside.len();
    let mut with_x = Vec::new();
    let mut with_y = Vec::new();
    for &y in rest {
        for (rel, &arity) in r.signature().arities().iter().enumerate() {
            let mut same = true;
            for_each_word(marker + 1, arity, |idx| {
                let marked = idx.iter().filter(|&&i| i == marker).count();
                if !same || marked == 0 || marked == arity {
                    return;
                }
                with_x.clear();
                with_y.clear();
                for &i in idx {
                    with_x.push(if i == marker { x0 } else { outside[i] });
                    with_y.push(if i == marker { y } else { outside[i] });
                }
                same = r.holds(rel, &with_x) == r.holds(rel, &with_y);
            });
            if !same {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Elements strictly between `x` and `y` in the linear order.
pub fn order_interval(r: &Structure, x: usize, y: usize) -> Result<Vec<usize>> {
    if !r.is_ordered() {
        return Err(Error::NotOrdered);
    }
    r.check_vertex(x)?;
    r.check_vertex(y)?;
    let (lo, hi) = {
        let (a, b) = (r.rank(x), r.rank(y));
        (a.min(b), a.max(b))
    };
    let mut out: Vec<usize> = r.by_rank()[(lo + 1).min(hi)..hi].to_vec();
    out.sort_unstable();
    Ok(out)
}
