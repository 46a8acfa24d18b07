//! Arc arithmetic on the integer line.
//!
//! An [`Arc`] is an ordered pair `(t, u)` with `t < u`. Whether it is
//! `d`-admissible depends on a [`Context`] and is checked where arcs enter a
//! diagram, so the same type can label diagonals of finite polygons.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArcError {
    #[error("malformed arc ({t},{u}): left endpoint must be smaller than right endpoint")]
    Malformed { t: i64, u: i64 },
    #[error("arc ({t},{u}) is not {d}-admissible")]
    Inadmissible { t: i64, u: i64, d: i64 },
    #[error("invalid parameter d={0}: must be between 1 and {MAX_D}")]
    InvalidD(i64),
    #[error("cannot parse arc from {0:?}: expected T,U")]
    Parse(String),
    #[error("arc ({t},{u}) has an endpoint beyond ±{COORD_LIMIT}")]
    OutOfRange { t: i64, u: i64 },
}

/// Largest endpoint magnitude accepted anywhere; keeps all derived
/// quantities (lengths, windows, tail instances) far from `i64` overflow.
pub const COORD_LIMIT: i64 = 1 << 40;

/// Largest accepted `d`.
pub const MAX_D: i64 = 1 << 20;

/// The parameter `d >= 1` of the category (generated by a `(d+1)`-spherical object).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "i64")]
pub struct Context {
    d: i64,
}

impl Context {
    pub fn new(d: i64) -> Result<Self, ArcError> {
        if !(1..=MAX_D).contains(&d) {
            return Err(ArcError::InvalidD(d));
        }
        Ok(Context { d })
    }

    #[inline]
    pub fn d(&self) -> i64 {
        self.d
    }

    /// Length of the shortest admissible arc, `d + 1`.
    #[inline]
    pub fn min_length(&self) -> i64 {
        self.d + 1
    }

    pub fn is_admissible(&self, a: Arc) -> bool {
        is_admissible(*self, a)
    }

    /// Rejects arcs that are not admissible for this context.
    pub fn check(&self, a: Arc) -> Result<Arc, ArcError> {
        if self.is_admissible(a) {
            Ok(a)
        } else {
            Err(ArcError::Inadmissible { t: a.t, u: a.u, d: self.d })
        }
    }
}

impl From<Context> for i64 {
    fn from(c: Context) -> i64 {
        c.d
    }
}

impl<'de> Deserialize<'de> for Context {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let d = i64::deserialize(de)?;
        Context::new(d).map_err(serde::de::Error::custom)
    }
}

/// An arc `(t, u)` joining two integers, `t < u`.
///
/// Ordered lexicographically by `(t, u)`. Serialized as `[t, u]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Arc {
    t: i64,
    u: i64,
}

impl Arc {
    pub fn new(t: i64, u: i64) -> Result<Self, ArcError> {
        if t.unsigned_abs() > COORD_LIMIT.unsigned_abs() || u.unsigned_abs() > COORD_LIMIT.unsigned_abs() {
            return Err(ArcError::OutOfRange { t, u });
        }
        if t >= u {
            return Err(ArcError::Malformed { t, u });
        }
        Ok(Arc { t, u })
    }

    /// Callers guarantee `t < u`.
    #[inline]
    pub(crate) fn new_unchecked(t: i64, u: i64) -> Self {
        debug_assert!(t < u, "arc ({t},{u}) is malformed");
        Arc { t, u }
    }

    #[inline]
    pub fn t(&self) -> i64 {
        self.t
    }

    #[inline]
    pub fn u(&self) -> i64 {
        self.u
    }

    #[inline]
    pub fn length(&self) -> i64 {
        self.u - self.t
    }

    /// The arc translated by `n` (both endpoints move by `n`).
    #[inline]
    pub fn translate(&self, n: i64) -> Arc {
        Arc { t: self.t + n, u: self.u + n }
    }

    #[inline]
    pub fn has_endpoint(&self, s: i64) -> bool {
        self.t == s || self.u == s
    }

    pub fn crosses(&self, other: &Arc) -> bool {
        crosses(*self, *other)
    }

    /// True when `self` is an overarc of `other`.
    pub fn covers(&self, other: &Arc) -> bool {
        is_overarc(*self, *other)
    }
}

impl TryFrom<(i64, i64)> for Arc {
    type Error = ArcError;

    fn try_from((t, u): (i64, i64)) -> Result<Self, Self::Error> {
        Arc::new(t, u)
    }
}

impl From<Arc> for (i64, i64) {
    fn from(a: Arc) -> Self {
        (a.t, a.u)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.t, self.u)
    }
}

/// Parses `"T,U"`, optionally wrapped in parentheses or brackets.
impl FromStr for Arc {
    type Err = ArcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| trimmed.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
            .unwrap_or(trimmed);
        let (a, b) = inner.split_once(',').ok_or_else(|| ArcError::Parse(s.to_string()))?;
        let t = a.trim().parse::<i64>().map_err(|_| ArcError::Parse(s.to_string()))?;
        let u = b.trim().parse::<i64>().map_err(|_| ArcError::Parse(s.to_string()))?;
        Arc::new(t, u)
    }
}

/// `u - t >= 2` and `u - t ≡ 1 (mod d)`.
pub fn is_admissible(ctx: Context, a: Arc) -> bool {
    let len = a.length();
    len >= 2 && (len - 1).rem_euclid(ctx.d) == 0
}

/// Strict interleaving of endpoints.
pub fn crosses(a: Arc, b: Arc) -> bool {
    (a.t < b.t && b.t < a.u && a.u < b.u) || (b.t < a.t && a.t < b.u && b.u < a.u)
}

/// `r` is an overarc of `t`: `r ≠ t` and `r.t ≤ t.t < t.u ≤ r.u`.
pub fn is_overarc(r: Arc, t: Arc) -> bool {
    r != t && r.t <= t.t && t.u <= r.u
}

/// All admissible arcs with both endpoints in `[lo, hi]`, lexicographic.
pub fn admissible_arcs_in_window(ctx: Context, lo: i64, hi: i64) -> Vec<Arc> {
    let mut out = Vec::new();
    for v in lo..=hi {
        let mut w = v + ctx.min_length();
        while w <= hi {
            out.push(Arc::new_unchecked(v, w));
            w += ctx.d;
        }
    }
    out
}
