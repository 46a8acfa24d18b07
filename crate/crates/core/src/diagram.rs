//! Arc diagrams of the ∞-gon, presented as a finite core plus two tails.
//!
//! A diagram stands for a subcategory of the category: its arcs are the
//! indecomposable objects it contains. Infinite diagrams are handled through
//! the arithmetic families of their tails, so every query here terminates.
//! Maximality is certified on a window, not globally.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arcs::{crosses, is_admissible, Arc, ArcError, Context, COORD_LIMIT};
use crate::tail::{Family, Incidence, Side, TailSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error("arc {0} occurs more than once")]
    DuplicateArc(Arc),
    #[error("invalid {side} tail: {reason}")]
    InvalidTail { side: &'static str, reason: String },
    #[error("diagram has two distinct {side}-fountains at {first} and {second}")]
    MultipleFountains { side: &'static str, first: i64, second: i64 },
    #[error("window too small: need at least [{lo},{hi}]")]
    WindowTooSmall { lo: i64, hi: i64 },
    #[error("empty window [{lo},{hi}]")]
    EmptyWindow { lo: i64, hi: i64 },
    #[error("window [{lo},{hi}] reaches beyond ±{COORD_LIMIT}")]
    WindowOutOfRange { lo: i64, hi: i64 },
    #[error("arc {0} is not in the diagram")]
    NotPresent(Arc),
    #[error("arc {0} is already in the diagram")]
    AlreadyPresent(Arc),
    #[error("malformed diagram JSON: {0}")]
    Json(String),
}

/// Where an arc of a diagram lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Core,
    /// Repetition `rep` of the left or right tail.
    Tail { side: Side, rep: i64 },
}

/// An extreme partner of a vertex: finite, or unbounded (`s` is a fountain on that side).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInfinity,
    Finite(i64),
    PosInfinity,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInfinity => f.write_str("-inf"),
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::PosInfinity => f.write_str("+inf"),
        }
    }
}

/// Leftmost and rightmost partner of a vertex over all incident arcs.
/// An isolated vertex reaches only itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reach {
    pub leftmost: Bound,
    pub rightmost: Bound,
}

impl Reach {
    /// True when all partners lie in `[v, w]`.
    pub fn within(&self, v: i64, w: i64) -> bool {
        self.leftmost >= Bound::Finite(v) && self.rightmost <= Bound::Finite(w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    LocallyFinite,
    LeftFountain { p: i64 },
    RightFountain { p: i64 },
    Fountain { p: i64 },
    TwoFountains { left: i64, right: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Crossing { arcs: [Arc; 2] },
    Addable { arc: Arc },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub noncrossing: bool,
    pub maximal_on_window: bool,
    pub window: [i64; 2],
    pub witnesses: Vec<Witness>,
    pub classification: Classification,
    pub weakly_cluster_tilting: bool,
    pub cluster_tilting: bool,
    pub left_approximating: bool,
    pub right_approximating: bool,
}

/// Arcs touching a window. `truncated` is set when a fountain anchored in
/// the window makes the true set infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowArcs {
    pub arcs: Vec<Arc>,
    pub truncated: bool,
}

/// The bounded region directly below `top`, with its vertices in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub top: Arc,
    pub vertices: Vec<i64>,
}

/// Cap on the number of witnesses carried by a report.
const MAX_WITNESSES: usize = 64;

/// Repetitions of each tail realized by structural checks and the minimum window.
const CHECKED_REPS: i64 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcDiagram {
    ctx: Context,
    core: BTreeSet<Arc>,
    left_tail: TailSpec,
    right_tail: TailSpec,
    families: Vec<(Side, Family)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    d: Context,
    core: Vec<Arc>,
    #[serde(default)]
    left_tail: TailSpec,
    #[serde(default)]
    right_tail: TailSpec,
}

impl Serialize for ArcDiagram {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        RawDiagram {
            d: self.ctx,
            core: self.core.iter().copied().collect(),
            left_tail: self.left_tail.clone(),
            right_tail: self.right_tail.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ArcDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawDiagram::deserialize(de)?;
        ArcDiagram::new(raw.d, raw.core, raw.left_tail, raw.right_tail)
            .map_err(serde::de::Error::custom)
    }
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

impl ArcDiagram {
    pub fn new(
        ctx: Context,
        core: impl IntoIterator<Item = Arc>,
        left_tail: TailSpec,
        right_tail: TailSpec,
    ) -> Result<Self, DiagramError> {
        let mut set = BTreeSet::new();
        for a in core {
            ctx.check(a)?;
            if !set.insert(a) {
                return Err(DiagramError::DuplicateArc(a));
            }
        }
        let mut families = Vec::new();
        for (side, tail) in [(Side::Left, &left_tail), (Side::Right, &right_tail)] {
            let invalid = |reason: String| DiagramError::InvalidTail { side: side_name(side), reason };
            tail.check(ctx).map_err(invalid)?;
            let fs = tail.families();
            for f in &fs {
                if f.du < f.dt || (f.du - f.dt) % ctx.d() != 0 {
                    return Err(invalid(format!("family at {} changes length by a non-multiple of d", f.base)));
                }
                if !is_admissible(ctx, f.base) {
                    return Err(invalid(format!("arc {} is not {}-admissible", f.base, ctx.d())));
                }
            }
            // Repetitions of one tail must not cross each other or the core.
            let realized: Vec<Arc> =
                (0..CHECKED_REPS).flat_map(|k| fs.iter().map(move |f| f.instance(k))).collect();
            for (i, a) in realized.iter().enumerate() {
                for b in realized[i + 1..].iter().chain(set.iter()) {
                    if crosses(*a, *b) {
                        return Err(invalid(format!("translates {a} and {b} cross")));
                    }
                }
            }
            families.extend(fs.into_iter().map(|f| (side, f)));
        }
        for (i, (_, f)) in families.iter().enumerate() {
            for k in 0..CHECKED_REPS {
                let a = f.instance(k);
                if set.contains(&a) {
                    return Err(DiagramError::DuplicateArc(a));
                }
                if families
                    .iter()
                    .enumerate()
                    .any(|(j, (_, g))| j != i && g.index_of(a).is_some())
                {
                    return Err(DiagramError::DuplicateArc(a));
                }
            }
        }
        let diagram = ArcDiagram { ctx, core: set, left_tail, right_tail, families };
        diagram.check_fountains()?;
        Ok(diagram)
    }

    fn check_fountains(&self) -> Result<(), DiagramError> {
        let unique = |side: &'static str, anchors: Vec<i64>| {
            let mut it = anchors.into_iter();
            let first = it.next();
            match (first, it.find(|&x| Some(x) != first)) {
                (Some(first), Some(second)) => Err(DiagramError::MultipleFountains { side, first, second }),
                _ => Ok(()),
            }
        };
        unique("left", self.families.iter().filter_map(|(_, f)| f.left_fountain()).collect())?;
        unique("right", self.families.iter().filter_map(|(_, f)| f.right_fountain()).collect())
    }

    /// A finite diagram.
    pub fn finite(ctx: Context, core: impl IntoIterator<Item = Arc>) -> Result<Self, DiagramError> {
        Self::new(ctx, core, TailSpec::None, TailSpec::None)
    }

    pub fn from_json(s: &str) -> Result<Self, DiagramError> {
        serde_json::from_str(s).map_err(|e| DiagramError::Json(e.to_string()))
    }

    /// Compact JSON with sorted core arcs.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serialization is infallible")
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn d(&self) -> i64 {
        self.ctx.d()
    }

    pub fn core(&self) -> &BTreeSet<Arc> {
        &self.core
    }

    pub fn left_tail(&self) -> &TailSpec {
        &self.left_tail
    }

    pub fn right_tail(&self) -> &TailSpec {
        &self.right_tail
    }

    pub fn families(&self) -> impl Iterator<Item = &Family> {
        self.families.iter().map(|(_, f)| f)
    }

    pub fn locate(&self, a: Arc) -> Option<Location> {
        if self.core.contains(&a) {
            return Some(Location::Core);
        }
        self.families
            .iter()
            .find_map(|(side, f)| f.index_of(a).map(|rep| Location::Tail { side: *side, rep }))
    }

    pub fn contains(&self, a: Arc) -> bool {
        self.locate(a).is_some()
    }

    pub fn left_fountain(&self) -> Option<i64> {
        self.families.iter().find_map(|(_, f)| f.left_fountain())
    }

    pub fn right_fountain(&self) -> Option<i64> {
        self.families.iter().find_map(|(_, f)| f.right_fountain())
    }

    pub fn is_locally_finite(&self) -> bool {
        self.left_fountain().is_none() && self.right_fountain().is_none()
    }

    pub fn classify(&self) -> Classification {
        match (self.left_fountain(), self.right_fountain()) {
            (None, None) => Classification::LocallyFinite,
            (Some(p), None) => Classification::LeftFountain { p },
            (None, Some(p)) => Classification::RightFountain { p },
            (Some(l), Some(r)) if l == r => Classification::Fountain { p: l },
            (Some(left), Some(right)) => Classification::TwoFountains { left, right },
        }
    }

    /// Every left-fountain is a right-fountain.
    pub fn left_approximating(&self) -> bool {
        self.left_fountain().is_none_or(|l| self.right_fountain() == Some(l))
    }

    /// Every right-fountain is a left-fountain.
    pub fn right_approximating(&self) -> bool {
        self.right_fountain().is_none_or(|r| self.left_fountain() == Some(r))
    }

    pub fn reach(&self, s: i64) -> Reach {
        let mut partners = vec![s];
        let mut unbounded_left = false;
        let mut unbounded_right = false;
        for a in self.core.iter() {
            if a.has_endpoint(s) {
                partners.push(if a.t() == s { a.u() } else { a.t() });
            }
        }
        for (_, f) in &self.families {
            match f.incidence(s) {
                Incidence::None => {}
                Incidence::Finite { min, max } => partners.extend([min, max]),
                Incidence::RightFountain { .. } => unbounded_right = true,
                Incidence::LeftFountain { .. } => unbounded_left = true,
            }
        }
        let lo = *partners.iter().min().expect("s itself is a partner");
        let hi = *partners.iter().max().expect("s itself is a partner");
        Reach {
            leftmost: if unbounded_left { Bound::NegInfinity } else { Bound::Finite(lo) },
            rightmost: if unbounded_right { Bound::PosInfinity } else { Bound::Finite(hi) },
        }
    }

    /// Right endpoint of the longest arc `(s, w)` with `w ≤ bound`.
    pub fn longest_right_arc_below(&self, s: i64, bound: i64) -> Option<i64> {
        let core = self
            .core
            .range(Arc::new_unchecked(s, s + 1)..)
            .take_while(|a| a.t() == s)
            .filter(|a| a.u() <= bound)
            .map(|a| a.u())
            .max();
        self.families
            .iter()
            .filter_map(|(_, f)| f.longest_from_below(s, bound))
            .chain(core)
            .max()
    }

    /// Smallest overarc of `t` in the diagram, by length and then left endpoint.
    pub fn min_overarc(&self, t: Arc) -> Option<Arc> {
        self.core
            .iter()
            .copied()
            .filter(|r| r.covers(&t))
            .chain(self.families.iter().filter_map(|(_, f)| f.min_overarc(t)))
            .min_by_key(|a| (a.length(), a.t()))
    }

    /// Arcs with both endpoints in `[lo, hi]`, sorted.
    pub fn arcs_within(&self, lo: i64, hi: i64) -> Vec<Arc> {
        let mut out: BTreeSet<Arc> =
            self.core.iter().copied().filter(|a| lo <= a.t() && a.u() <= hi).collect();
        for (_, f) in &self.families {
            if let Some((kmin, kmax)) = f.within(lo, hi) {
                out.extend((kmin..=kmax).map(|k| f.instance(k)));
            }
        }
        out.into_iter().collect()
    }

    /// Arcs with at least one endpoint in `[lo, hi]`. Infinite fountain
    /// families anchored in the window are cut where the free endpoint leaves
    /// `[lo − horizon, hi + horizon]`, and the result is flagged.
    pub fn arcs_in_window(&self, lo: i64, hi: i64, horizon: i64) -> WindowArcs {
        let mut out: BTreeSet<Arc> = self
            .core
            .iter()
            .copied()
            .filter(|a| (lo <= a.t() && a.t() <= hi) || (lo <= a.u() && a.u() <= hi))
            .collect();
        let mut truncated = false;
        for (_, f) in &self.families {
            for range in f.touching(lo, hi).into_iter().flatten() {
                let (kmin, kmax) = match range {
                    (kmin, Some(kmax)) => (kmin, kmax),
                    (kmin, None) => {
                        truncated = true;
                        let outer = f.within(lo - horizon, hi + horizon).map_or(kmin - 1, |(_, k)| k);
                        (kmin, outer)
                    }
                };
                out.extend((kmin..=kmax).map(|k| f.instance(k)));
            }
        }
        WindowArcs { arcs: out.into_iter().collect(), truncated }
    }

    /// Smallest window containing the core and the first three repetitions of each tail.
    pub fn min_window(&self) -> (i64, i64) {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        let arcs = self
            .core
            .iter()
            .copied()
            .chain(self.families.iter().flat_map(|(_, f)| (0..CHECKED_REPS).map(|k| f.instance(k))));
        for a in arcs {
            lo = lo.min(a.t());
            hi = hi.max(a.u());
        }
        if lo > hi {
            (0, 0)
        } else {
            (lo, hi)
        }
    }

    pub fn check_window(&self, lo: i64, hi: i64) -> Result<(), DiagramError> {
        if lo > hi {
            return Err(DiagramError::EmptyWindow { lo, hi });
        }
        if lo.unsigned_abs() > COORD_LIMIT.unsigned_abs() || hi.unsigned_abs() > COORD_LIMIT.unsigned_abs() {
            return Err(DiagramError::WindowOutOfRange { lo, hi });
        }
        let (mlo, mhi) = self.min_window();
        if lo > mlo || hi < mhi {
            return Err(DiagramError::WindowTooSmall { lo: mlo.min(lo), hi: mhi.max(hi) });
        }
        Ok(())
    }

    /// Pairs of crossing arcs among those realized around the window. Sweeps
    /// arcs by left endpoint keeping the chain of arcs still open; if any
    /// crossing exists, one is found against that chain.
    fn crossing_witnesses(&self, lo: i64, hi: i64) -> Vec<[Arc; 2]> {
        let margin = (hi - lo).max(self.ctx.min_length());
        let mut realized = self.arcs_in_window(lo - margin, hi + margin, margin).arcs;
        realized.sort_by_key(|a| (a.t(), std::cmp::Reverse(a.u())));
        let mut open: Vec<Arc> = Vec::new();
        let mut out = Vec::new();
        for a in realized {
            while open.last().is_some_and(|top| top.u() <= a.t()) {
                open.pop();
            }
            for b in open.iter().rev() {
                if b.u() >= a.u() {
                    break;
                }
                if crosses(*b, a) {
                    out.push([*b, a]);
                    if out.len() >= MAX_WITNESSES {
                        return out;
                    }
                }
            }
            open.push(a);
        }
        out
    }

    /// Admissible arcs inside `[lo, hi]` that are not in the diagram and cross none of its arcs.
    pub fn addable_arcs(&self, lo: i64, hi: i64) -> Vec<Arc> {
        let reach: Vec<Reach> = (lo..=hi).map(|s| self.reach(s)).collect();
        let mut out = Vec::new();
        for v in lo..=hi {
            let mut left = Bound::Finite(v);
            let mut right = Bound::Finite(v);
            for w in (v + 1)..=hi {
                // Interior of (v, w) is v+1 ..= w-1.
                if w - 1 > v {
                    let r = reach[(w - 1 - lo) as usize];
                    left = left.min(r.leftmost);
                    right = right.max(r.rightmost);
                }
                if left < Bound::Finite(v) {
                    // Some interior vertex already escapes to the left; longer candidates fail too.
                    break;
                }
                let a = Arc::new_unchecked(v, w);
                if is_admissible(self.ctx, a) && right <= Bound::Finite(w) && !self.contains(a) {
                    out.push(a);
                }
            }
        }
        out
    }

    pub fn validate(&self, lo: i64, hi: i64) -> Result<ValidationReport, DiagramError> {
        self.check_window(lo, hi)?;
        let crossings = self.crossing_witnesses(lo, hi);
        let addable = self.addable_arcs(lo, hi);
        let noncrossing = crossings.is_empty();
        let maximal_on_window = addable.is_empty();
        let mut witnesses: Vec<Witness> =
            crossings.into_iter().map(|arcs| Witness::Crossing { arcs }).collect();
        witnesses.extend(addable.into_iter().map(|arc| Witness::Addable { arc }));
        witnesses.truncate(MAX_WITNESSES);
        let weakly = noncrossing && maximal_on_window;
        let left_approximating = self.left_approximating();
        let right_approximating = self.right_approximating();
        Ok(ValidationReport {
            noncrossing,
            maximal_on_window,
            window: [lo, hi],
            witnesses,
            classification: self.classify(),
            weakly_cluster_tilting: weakly,
            cluster_tilting: weakly && left_approximating && right_approximating,
            left_approximating,
            right_approximating,
        })
    }

    /// The region directly below `top`, walking along the outermost arcs under it.
    pub fn face_below(&self, top: Arc) -> Face {
        let mut vertices = vec![top.t()];
        let mut v = top.t();
        while v < top.u() {
            let bound = if v == top.t() { top.u() - 1 } else { top.u() };
            v = self.longest_right_arc_below(v, bound).unwrap_or(v + 1);
            vertices.push(v);
        }
        Face { top, vertices }
    }

    /// Faces below every arc with both endpoints in the window.
    pub fn bounded_faces(&self, lo: i64, hi: i64) -> Vec<Face> {
        self.arcs_within(lo, hi).into_iter().map(|a| self.face_below(a)).collect()
    }

    /// The same diagram with `a` moved into the core (materializing tail
    /// repetitions up to and including the one holding `a`).
    pub fn materialize(&self, a: Arc) -> Result<ArcDiagram, DiagramError> {
        match self.locate(a).ok_or(DiagramError::NotPresent(a))? {
            Location::Core => Ok(self.clone()),
            Location::Tail { side, rep } => {
                let tail = match side {
                    Side::Left => &self.left_tail,
                    Side::Right => &self.right_tail,
                };
                let mut core = self.core.clone();
                for f in tail.families() {
                    core.extend((0..=rep).map(|k| f.instance(k)));
                }
                let advanced = tail.advanced(rep + 1);
                let (left, right) = match side {
                    Side::Left => (advanced, self.right_tail.clone()),
                    Side::Right => (self.left_tail.clone(), advanced),
                };
                ArcDiagram::new(self.ctx, core, left, right)
            }
        }
    }

    pub fn without(&self, a: Arc) -> Result<ArcDiagram, DiagramError> {
        let mut m = self.materialize(a)?;
        m.core.remove(&a);
        Ok(m)
    }

    pub fn with_arc(&self, a: Arc) -> Result<ArcDiagram, DiagramError> {
        self.ctx.check(a)?;
        if self.contains(a) {
            return Err(DiagramError::AlreadyPresent(a));
        }
        let mut m = self.clone();
        m.core.insert(a);
        Ok(m)
    }

    /// `(D \ {removed}) ∪ {added}`.
    pub fn replace(&self, removed: Arc, added: Arc) -> Result<ArcDiagram, DiagramError> {
        self.without(removed)?.with_arc(added)
    }
}
