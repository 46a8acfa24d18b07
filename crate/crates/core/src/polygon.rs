//! `(d+2)`-angulations of a convex `n`-gon with vertices labelled `0..n`.
//!
//! Used both as the finite world inside an overarc of an ∞-gon diagram and
//! as a brute-force oracle for mutation counts.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arcs::{crosses, is_overarc, Arc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("no (d+2)-angulations for d={d}, n={n}: need d ≥ 1, d+2 ≤ n ≤ {MAX_VERTICES} and n ≡ 2 (mod d)")]
    InvalidSize { d: i64, n: i64 },
    #[error("{0} is not an admissible diagonal of the polygon")]
    InvalidDiagonal(Arc),
    #[error("diagonals {0} and {1} cross")]
    Crossing(Arc, Arc),
    #[error("face below {top} has {size} vertices, expected {expected}")]
    BadFace { top: Arc, size: usize, expected: i64 },
    #[error("{0} is not a diagonal of the angulation")]
    NotADiagonal(Arc),
    #[error("{0} is neither a side nor a diagonal")]
    EdgeNotPresent(Arc),
    #[error("edge {edge} has no face on its {side:?} side")]
    NoFace { edge: Arc, side: EdgeSide },
    #[error("count overflows 128 bits")]
    Overflow,
    #[error("malformed polygon JSON: {0}")]
    Json(String),
}

/// Which face of an edge: the one spanned by the vertices between its
/// endpoints, or the one on the far side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeSide {
    Inner,
    Outer,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolygonAngulation {
    d: i64,
    n: i64,
    diagonals: BTreeSet<Arc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolygon {
    d: i64,
    n: i64,
    diagonals: Vec<Arc>,
}

impl Serialize for PolygonAngulation {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        RawPolygon { d: self.d, n: self.n, diagonals: self.diagonals.iter().copied().collect() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PolygonAngulation {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawPolygon::deserialize(de)?;
        PolygonAngulation::new(raw.d, raw.n, raw.diagonals).map_err(serde::de::Error::custom)
    }
}

/// Largest polygon accepted.
pub const MAX_VERTICES: i64 = 1 << 16;

fn check_size(d: i64, n: i64) -> Result<(), PolygonError> {
    if d < 1 || n > MAX_VERTICES || n < d + 2 || (n - 2) % d != 0 {
        return Err(PolygonError::InvalidSize { d, n });
    }
    Ok(())
}

impl PolygonAngulation {
    pub fn new(d: i64, n: i64, diagonals: impl IntoIterator<Item = Arc>) -> Result<Self, PolygonError> {
        check_size(d, n)?;
        let mut set = BTreeSet::new();
        for a in diagonals {
            let len = a.length();
            if a.t() < 0 || a.u() > n - 1 || len < 2 || len > n - 2 || (len - 1) % d != 0 || !set.insert(a) {
                return Err(PolygonError::InvalidDiagonal(a));
            }
        }
        let list: Vec<Arc> = set.iter().copied().collect();
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                if crosses(*a, *b) {
                    return Err(PolygonError::Crossing(*a, *b));
                }
            }
        }
        let p = PolygonAngulation { d, n, diagonals: set };
        for top in std::iter::once(p.outer_side()).chain(list) {
            let size = p.inner_face(top).len();
            if size as i64 != d + 2 {
                return Err(PolygonError::BadFace { top, size, expected: d + 2 });
            }
        }
        Ok(p)
    }

    pub fn from_json(s: &str) -> Result<Self, PolygonError> {
        serde_json::from_str(s).map_err(|e| PolygonError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polygon serialization is infallible")
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn diagonals(&self) -> &BTreeSet<Arc> {
        &self.diagonals
    }

    /// Number of `(d+2)`-gons, `(n − 2)/d`.
    pub fn face_count(&self) -> i64 {
        (self.n - 2) / self.d
    }

    /// The side `(0, n−1)`.
    pub fn outer_side(&self) -> Arc {
        Arc::new_unchecked(0, self.n - 1)
    }

    fn is_side(&self, e: Arc) -> bool {
        e.length() == 1 || e == self.outer_side()
    }

    fn is_edge(&self, e: Arc) -> bool {
        e.t() >= 0 && e.u() < self.n && (self.is_side(e) || self.diagonals.contains(&e))
    }

    fn inner_face(&self, top: Arc) -> Vec<i64> {
        let mut out = vec![top.t()];
        let mut v = top.t();
        while v < top.u() {
            let bound = if v == top.t() { top.u() - 1 } else { top.u() };
            v = self
                .diagonals
                .range(Arc::new_unchecked(v, v + 1)..)
                .take_while(|a| a.t() == v)
                .filter(|a| a.u() <= bound)
                .map(|a| a.u())
                .max()
                .unwrap_or(v + 1);
            out.push(v);
        }
        out
    }

    /// Smallest edge strictly enclosing `e`, using `(0, n−1)` as the outermost.
    fn enclosing(&self, e: Arc) -> Arc {
        self.diagonals
            .iter()
            .copied()
            .filter(|r| is_overarc(*r, e))
            .min_by_key(|r| r.length())
            .unwrap_or(self.outer_side())
    }

    /// Vertices of the face on the given side of `edge`, sorted.
    pub fn face_along_edge(&self, edge: Arc, side: EdgeSide) -> Result<Vec<i64>, PolygonError> {
        if !self.is_edge(edge) {
            return Err(PolygonError::EdgeNotPresent(edge));
        }
        let no_face = Err(PolygonError::NoFace { edge, side });
        match side {
            EdgeSide::Inner if edge.length() == 1 => no_face,
            EdgeSide::Inner => Ok(self.inner_face(edge)),
            EdgeSide::Outer if edge == self.outer_side() => no_face,
            EdgeSide::Outer => Ok(self.inner_face(self.enclosing(edge))),
        }
    }

    /// Every diagonal `t*` (including `t`) such that replacing `t` by `t*`
    /// gives an angulation. Always `d + 1` of them.
    pub fn polygon_mutations(&self, t: Arc) -> Result<Vec<Arc>, PolygonError> {
        if !self.diagonals.contains(&t) {
            return Err(PolygonError::NotADiagonal(t));
        }
        let mut merged: BTreeSet<i64> = self.face_along_edge(t, EdgeSide::Inner)?.into_iter().collect();
        merged.extend(self.face_along_edge(t, EdgeSide::Outer)?);
        let w: Vec<i64> = merged.into_iter().collect();
        let d = self.d as usize;
        debug_assert_eq!(w.len(), 2 * d + 2);
        let mut out: Vec<Arc> = (0..=d).map(|k| Arc::new_unchecked(w[k], w[k + d + 1])).collect();
        out.sort();
        Ok(out)
    }

    /// `(A \ {removed}) ∪ {added}`, re-validated.
    pub fn replace(&self, removed: Arc, added: Arc) -> Result<PolygonAngulation, PolygonError> {
        if !self.diagonals.contains(&removed) {
            return Err(PolygonError::NotADiagonal(removed));
        }
        let diagonals = self.diagonals.iter().copied().filter(|a| *a != removed).chain(std::iter::once(added));
        PolygonAngulation::new(self.d, self.n, diagonals)
    }
}

/// Diagonal sets of the angulations of the sub-polygon `lo..=hi` with base `(lo, hi)`.
fn dissections(d: i64, lo: i64, hi: i64) -> Vec<Vec<Arc>> {
    if hi - lo == 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut face = vec![lo];
    choose_face(d, hi, &mut face, &mut out);
    out
}

/// Extends the partial face `face` (starting at the base's left end) by
/// vertices with gaps `≡ 1 (mod d)` until it has `d + 2` vertices ending at `hi`.
fn choose_face(d: i64, hi: i64, face: &mut Vec<i64>, out: &mut Vec<Vec<Arc>>) {
    let placed = face.len() as i64;
    let last = *face.last().expect("face starts with the base vertex");
    if placed == d + 1 {
        // The closing gap must also be ≡ 1 (mod d).
        if (hi - last - 1) % d != 0 || hi <= last {
            return;
        }
        face.push(hi);
        let mut partial: Vec<Vec<Arc>> = vec![Vec::new()];
        for pair in face.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let subs = dissections(d, a, b);
            let mut next = Vec::with_capacity(partial.len() * subs.len());
            for p in &partial {
                for s in &subs {
                    let mut v = p.clone();
                    if b - a > 1 {
                        v.push(Arc::new_unchecked(a, b));
                    }
                    v.extend_from_slice(s);
                    next.push(v);
                }
            }
            partial = next;
        }
        out.extend(partial);
        face.pop();
        return;
    }
    let remaining_gaps = d + 2 - placed;
    let mut next = last + 1;
    while hi - next >= remaining_gaps - 1 {
        face.push(next);
        choose_face(d, hi, face, out);
        face.pop();
        next += d;
    }
}

/// All `(d+2)`-angulations of the `n`-gon, in a deterministic order.
pub fn enumerate_angulations(d: i64, n: i64) -> Result<Vec<PolygonAngulation>, PolygonError> {
    check_size(d, n)?;
    Ok(dissections(d, 0, n - 1)
        .into_iter()
        .map(|diagonals| PolygonAngulation { d, n, diagonals: diagonals.into_iter().collect() })
        .collect())
}

/// Number of `(d+2)`-angulations of the `n`-gon, by dynamic programming on
/// the face containing the base edge.
pub fn count_angulations(d: i64, n: i64) -> Result<u128, PolygonError> {
    check_size(d, n)?;
    let span = (n - 1) as usize;
    let d = d as usize;
    // ways[s]: angulations of a sub-polygon whose base has span s.
    let mut ways = vec![0u128; span + 1];
    ways[1] = 1;
    // seq[c][s]: weighted ways to split span s into c admissible gaps.
    let mut seq = vec![vec![0u128; span + 1]; d + 2];
    seq[0][0] = 1;
    for s in 1..=span {
        if s > 1 && (s - 1) % d == 0 {
            ways[s] = seq[d + 1 - 1].iter().enumerate().try_fold(0u128, |acc, (prefix, &w)| {
                if w == 0 || prefix >= s {
                    return Ok(acc);
                }
                let last = s - prefix;
                w.checked_mul(ways[last]).and_then(|x| acc.checked_add(x)).ok_or(PolygonError::Overflow)
            })?;
        }
        for c in 1..=d + 1 {
            let mut total = 0u128;
            for g in 1..=s {
                if ways[g] == 0 || seq[c - 1][s - g] == 0 {
                    continue;
                }
                total = seq[c - 1][s - g]
                    .checked_mul(ways[g])
                    .and_then(|x| total.checked_add(x))
                    .ok_or(PolygonError::Overflow)?;
            }
            seq[c][s] = total;
        }
    }
    Ok(ways[span])
}
