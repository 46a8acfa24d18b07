//! Finite descriptions of infinite arc families.
//!
//! Every tail is normalized into [`Family`] values: arcs
//! `(t + k·Δt, u + k·Δu)` for `k ≥ 0`. All queries on families are closed
//! form, which keeps diagram queries exact and terminating.

use serde::{Deserialize, Serialize};

use crate::arcs::{Arc, Context, COORD_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// How a periodic motif repeats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Translate by `−k·period`.
    Left,
    /// Translate by `+k·period`.
    Right,
    /// Move the left endpoint by `−k·period` and the right one by `+k·period`.
    Outward,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
#[derive(Default)]
pub enum TailSpec {
    #[default]
    None,
    Periodic {
        motif: Vec<Arc>,
        period: i64,
        direction: Direction,
    },
    /// Arcs `(anchor, anchor + first_length + k·length_step)` on the right
    /// side, mirrored on the left. `filler_motif` lies in the band between the
    /// first two fountain arcs and is translated by `k·length_step` into band `k`.
    Fountain {
        anchor: i64,
        side: Side,
        first_length: i64,
        length_step: i64,
        #[serde(default)]
        filler_motif: Vec<Arc>,
    },
}


/// Arcs `base + k·(dt, du)`, `k ≥ 0`. Steps are never both zero and `du ≥ dt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Family {
    pub base: Arc,
    pub dt: i64,
    pub du: i64,
}

/// Partners of one vertex inside one family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Incidence {
    None,
    /// Finitely many partners, with their extremes.
    Finite { min: i64, max: i64 },
    /// The vertex is the fixed left endpoint of the family (a right-fountain).
    RightFountain { min_partner: i64 },
    /// The vertex is the fixed right endpoint of the family (a left-fountain).
    LeftFountain { max_partner: i64 },
}

/// Smallest `k ≥ 0` with `x + k·step = target`, or all `k` when `step = 0` and `x = target`.
fn solve_endpoint(x: i64, step: i64, target: i64) -> Option<Option<i64>> {
    if step == 0 {
        return (x == target).then_some(None);
    }
    let diff = target - x;
    if diff % step != 0 {
        return None;
    }
    let k = diff / step;
    (k >= 0).then_some(Some(k))
}

/// `k ≥ 0` range where `x + k·step ∈ [lo, hi]`, `None` for empty, `hi` bound
/// `None` for unbounded.
fn k_range(x: i64, step: i64, lo: i64, hi: i64) -> Option<(i64, Option<i64>)> {
    if lo > hi {
        return None;
    }
    match step.signum() {
        0 => (lo <= x && x <= hi).then_some((0, None)),
        1 => {
            let kmin = div_ceil(lo - x, step).max(0);
            let kmax = div_floor(hi - x, step);
            (kmax >= kmin).then_some((kmin, Some(kmax)))
        }
        _ => {
            // x + k·step decreasing in k.
            let s = -step;
            let kmin = div_ceil(x - hi, s).max(0);
            let kmax = div_floor(x - lo, s);
            (kmax >= kmin).then_some((kmin, Some(kmax)))
        }
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// `k ≥ 0` range where `x + k·step ≤ bound` (`le = true`) or `≥ bound`.
fn k_half(x: i64, step: i64, bound: i64, le: bool) -> Option<(i64, Option<i64>)> {
    // Normalize to `x' + k·step' ≤ bound'`.
    let (x, step, bound) = if le { (x, step, bound) } else { (-x, -step, -bound) };
    match step.signum() {
        0 => (x <= bound).then_some((0, None)),
        1 => {
            let kmax = div_floor(bound - x, step);
            (kmax >= 0).then_some((0, Some(kmax)))
        }
        _ => Some((div_ceil(x - bound, -step).max(0), None)),
    }
}

fn intersect(a: (i64, Option<i64>), b: (i64, Option<i64>)) -> Option<(i64, Option<i64>)> {
    let lo = a.0.max(b.0);
    let hi = match (a.1, b.1) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    };
    match hi {
        Some(h) if h < lo => None,
        _ => Some((lo, hi)),
    }
}

impl Family {
    #[inline]
    pub fn instance(&self, k: i64) -> Arc {
        Arc::new_unchecked(self.base.t() + k * self.dt, self.base.u() + k * self.du)
    }

    /// Left endpoint fixed: the family is a right-fountain at `base.t`.
    pub fn right_fountain(&self) -> Option<i64> {
        (self.dt == 0).then_some(self.base.t())
    }

    /// Right endpoint fixed: the family is a left-fountain at `base.u`.
    pub fn left_fountain(&self) -> Option<i64> {
        (self.du == 0).then_some(self.base.u())
    }

    pub fn index_of(&self, a: Arc) -> Option<i64> {
        let kt = solve_endpoint(self.base.t(), self.dt, a.t())?;
        let ku = solve_endpoint(self.base.u(), self.du, a.u())?;
        match (kt, ku) {
            (Some(x), Some(y)) => (x == y).then_some(x),
            (Some(x), None) | (None, Some(x)) => Some(x),
            (None, None) => Some(0),
        }
    }

    pub(crate) fn incidence(&self, s: i64) -> Incidence {
        if self.dt == 0 && self.base.t() == s {
            return Incidence::RightFountain { min_partner: self.base.u() };
        }
        if self.du == 0 && self.base.u() == s {
            return Incidence::LeftFountain { max_partner: self.base.t() };
        }
        let mut partners = Vec::with_capacity(2);
        if let Some(Some(k)) = solve_endpoint(self.base.t(), self.dt, s) {
            partners.push(self.instance(k).u());
        }
        if let Some(Some(k)) = solve_endpoint(self.base.u(), self.du, s) {
            partners.push(self.instance(k).t());
        }
        match (partners.iter().min(), partners.iter().max()) {
            (Some(&min), Some(&max)) => Incidence::Finite { min, max },
            _ => Incidence::None,
        }
    }

    /// Longest arc `(s, w)` of the family with `w ≤ bound`.
    pub(crate) fn longest_from_below(&self, s: i64, bound: i64) -> Option<i64> {
        if self.dt == 0 {
            if self.base.t() != s {
                return None;
            }
            let (_, kmax) = k_range(self.base.u(), self.du, self.base.u(), bound)?;
            return kmax.map(|k| self.instance(k).u());
        }
        let k = solve_endpoint(self.base.t(), self.dt, s)??;
        let a = self.instance(k);
        (a.u() <= bound).then_some(a.u())
    }

    /// `k` range of instances with both endpoints in `[lo, hi]`; always finite.
    pub fn within(&self, lo: i64, hi: i64) -> Option<(i64, i64)> {
        let a = k_range(self.base.t(), self.dt, lo, hi)?;
        let b = k_range(self.base.u(), self.du, lo, hi)?;
        let (kmin, kmax) = intersect(a, b)?;
        Some((kmin, kmax.expect("a family moves at least one endpoint")))
    }

    /// `k` ranges of instances with the left (resp. right) endpoint in `[lo, hi]`.
    pub fn touching(&self, lo: i64, hi: i64) -> [Option<(i64, Option<i64>)>; 2] {
        [
            k_range(self.base.t(), self.dt, lo, hi),
            k_range(self.base.u(), self.du, lo, hi),
        ]
    }

    /// The instance minimizing `(length, left endpoint)` among those that are
    /// overarcs of `inner`.
    pub fn min_overarc(&self, inner: Arc) -> Option<Arc> {
        let left = k_half(self.base.t(), self.dt, inner.t(), true)?;
        let right = k_half(self.base.u(), self.du, inner.u(), false)?;
        let (kmin, kmax) = intersect(left, right)?;
        // Length and left endpoint are linear in k, so the optimum over the
        // interval minus the single excluded instance sits near an end.
        let mut candidates = vec![kmin, kmin + 1];
        if let Some(h) = kmax {
            candidates.extend([h - 1, h]);
        }
        let mut best: Option<Arc> = None;
        for k in candidates {
            if k < kmin || kmax.is_some_and(|h| k > h) {
                continue;
            }
            let a = self.instance(k);
            if a == inner {
                continue;
            }
            if best.is_none_or(|b| (a.length(), a.t()) < (b.length(), b.t())) {
                best = Some(a);
            }
        }
        best
    }
}

impl TailSpec {
    /// Arc families generated by this tail. Repetition `k` of the tail is
    /// instance `k` of every family.
    pub fn families(&self) -> Vec<Family> {
        match self {
            TailSpec::None => Vec::new(),
            TailSpec::Periodic { motif, period, direction } => {
                let (dt, du) = match direction {
                    Direction::Left => (-period, -period),
                    Direction::Right => (*period, *period),
                    Direction::Outward => (-period, *period),
                };
                motif.iter().map(|&base| Family { base, dt, du }).collect()
            }
            TailSpec::Fountain { anchor, side, first_length, length_step, filler_motif } => {
                let (main, filler_step) = match side {
                    Side::Right => (
                        Family {
                            base: Arc::new_unchecked(*anchor, anchor + first_length),
                            dt: 0,
                            du: *length_step,
                        },
                        *length_step,
                    ),
                    Side::Left => (
                        Family {
                            base: Arc::new_unchecked(anchor - first_length, *anchor),
                            dt: -length_step,
                            du: 0,
                        },
                        -length_step,
                    ),
                };
                std::iter::once(main)
                    .chain(filler_motif.iter().map(|&base| Family { base, dt: filler_step, du: filler_step }))
                    .collect()
            }
        }
    }

    /// Structural checks that do not need the rest of the diagram.
    pub fn check(&self, ctx: Context) -> Result<(), String> {
        let d = ctx.d();
        let bounded = |name: &str, v: i64| {
            if v.unsigned_abs() > COORD_LIMIT.unsigned_abs() {
                Err(format!("{name} {v} exceeds ±{COORD_LIMIT}"))
            } else {
                Ok(())
            }
        };
        match self {
            TailSpec::None => Ok(()),
            TailSpec::Periodic { motif, period, direction } => {
                bounded("period", *period)?;
                if *period <= 0 {
                    return Err(format!("periodic tail period must be positive, got {period}"));
                }
                if motif.is_empty() {
                    return Err("periodic tail motif is empty".into());
                }
                if *direction == Direction::Outward && (2 * period) % d != 0 {
                    return Err(format!(
                        "outward period {period} changes arc lengths by a non-multiple of d={d}"
                    ));
                }
                Ok(())
            }
            TailSpec::Fountain { anchor, side, first_length, length_step, filler_motif } => {
                bounded("anchor", *anchor)?;
                bounded("first_length", *first_length)?;
                bounded("length_step", *length_step)?;
                if *first_length < d + 1 || (first_length - 1) % d != 0 {
                    return Err(format!("fountain first_length {first_length} is not ≡ 1 (mod {d}) and ≥ {}", d + 1));
                }
                if *length_step <= 0 || length_step % d != 0 {
                    return Err(format!("fountain length_step {length_step} is not a positive multiple of {d}"));
                }
                let (lo, hi) = match side {
                    Side::Right => (anchor + first_length, anchor + first_length + length_step),
                    Side::Left => (anchor - first_length - length_step, anchor - first_length),
                };
                for a in filler_motif {
                    if a.t() < lo || a.u() > hi {
                        return Err(format!("filler arc {a} leaves the first fountain band [{lo},{hi}]"));
                    }
                }
                Ok(())
            }
        }
    }

    /// The tail after moving repetitions `0..k` out of it.
    pub fn advanced(&self, k: i64) -> TailSpec {
        match self {
            TailSpec::None => TailSpec::None,
            TailSpec::Periodic { motif, period, direction } => {
                let shift = |a: &Arc| match direction {
                    Direction::Left => a.translate(-k * period),
                    Direction::Right => a.translate(k * period),
                    Direction::Outward => Arc::new_unchecked(a.t() - k * period, a.u() + k * period),
                };
                TailSpec::Periodic { motif: motif.iter().map(shift).collect(), period: *period, direction: *direction }
            }
            TailSpec::Fountain { anchor, side, first_length, length_step, filler_motif } => {
                let step = match side {
                    Side::Right => k * length_step,
                    Side::Left => -k * length_step,
                };
                TailSpec::Fountain {
                    anchor: *anchor,
                    side: *side,
                    first_length: first_length + k * length_step,
                    length_step: *length_step,
                    filler_motif: filler_motif.iter().map(|a| a.translate(step)).collect(),
                }
            }
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, TailSpec::None)
    }
}
