//! p-sequences, overarcs and mutation of `(d+2)`-angulations of the ∞-gon.
//!
//! An arc with an overarc is mutated inside the polygon cut out by its
//! smallest overarc. An arc without one lies on the p-sequence running from
//! the left-fountain to a right-fountain, and its replacements are found
//! among pairs `d + 1` steps apart in that sequence refined by the face below
//! the arc.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arcs::{Arc, Context};
use crate::diagram::{ArcDiagram, Bound, DiagramError};
use crate::polygon::{PolygonAngulation, PolygonError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MutationError {
    #[error("arc {0} is not in the diagram")]
    NotPresent(Arc),
    #[error("diagram is not a (d+2)-angulation near {arc}: {reason}")]
    NotVerified { arc: Arc, reason: String },
    #[error("stale option: {0} is no longer in the diagram")]
    StaleOption(Arc),
    #[error("{added} is not a replacement for {removed}")]
    InvalidOption { removed: Arc, added: Arc },
    #[error("max_steps must be at least 1, got {0}")]
    InvalidSteps(i64),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Terminator {
    RightFountain { at: i64 },
    /// No right-fountain within the step budget; the sequence may be infinite.
    HorizonReached { steps: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PSequence {
    pub points: Vec<i64>,
    pub terminator: Terminator,
}

impl PSequence {
    /// Number of steps `m` when the sequence reached a right-fountain.
    pub fn m(&self) -> Option<usize> {
        match self.terminator {
            Terminator::RightFountain { .. } => Some(self.points.len() - 1),
            Terminator::HorizonReached { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MutationOption {
    pub removed: Arc,
    pub added: Arc,
}

/// From `p`: stop at a right-fountain, else jump along the longest arc
/// `(p, q)`, else step to `p + 1`.
pub fn p_sequence(diagram: &ArcDiagram, p0: i64, max_steps: i64) -> Result<PSequence, MutationError> {
    if max_steps < 1 {
        return Err(MutationError::InvalidSteps(max_steps));
    }
    let mut points = vec![p0];
    let mut p = p0;
    for _ in 0..max_steps {
        p = match diagram.reach(p).rightmost {
            Bound::PosInfinity => return Ok(PSequence { points, terminator: Terminator::RightFountain { at: p } }),
            Bound::Finite(q) if q > p => q,
            _ => p + 1,
        };
        points.push(p);
    }
    if diagram.reach(p).rightmost == Bound::PosInfinity {
        return Ok(PSequence { points, terminator: Terminator::RightFountain { at: p } });
    }
    Ok(PSequence { points, terminator: Terminator::HorizonReached { steps: max_steps } })
}

/// Smallest overarc of `t` in the diagram, by length and then left endpoint.
pub fn find_overarc(diagram: &ArcDiagram, t: Arc) -> Option<Arc> {
    diagram.min_overarc(t)
}

/// `a` crosses nothing in `diagram` and is not already in it.
fn addable(diagram: &ArcDiagram, a: Arc) -> bool {
    !diagram.contains(a) && (a.t() + 1..a.u()).all(|s| diagram.reach(s).within(a.t(), a.u()))
}

fn not_verified(arc: Arc, reason: impl Into<String>) -> MutationError {
    MutationError::NotVerified { arc, reason: reason.into() }
}

/// Replacements inside the polygon under `r`. Only the two faces on either
/// side of `t` matter; together they form a `(2d+2)`-gon in which `t` is the
/// single diagonal.
fn polygon_replacements(ctx: Context, diagram: &ArcDiagram, t: Arc, r: Arc) -> Result<Vec<Arc>, MutationError> {
    let d = ctx.d();
    let inner = diagram.face_below(t).vertices;
    let outer = diagram.face_below(r).vertices;
    if inner.len() as i64 != d + 2 || outer.len() as i64 != d + 2 {
        return Err(not_verified(t, format!("faces around it under {r} are not ({})-gons", d + 2)));
    }
    if !outer.windows(2).any(|w| w[0] == t.t() && w[1] == t.u()) {
        return Err(not_verified(t, format!("it does not bound the face below {r}")));
    }
    let mut merged: Vec<i64> = inner.iter().chain(outer.iter()).copied().collect();
    merged.sort_unstable();
    merged.dedup();
    let index = |v: i64| merged.binary_search(&v).expect("face vertex") as i64;
    let diagonal = Arc::new_unchecked(index(t.t()), index(t.u()));
    let hole = PolygonAngulation::new(d, merged.len() as i64, [diagonal])
        .map_err(|e: PolygonError| not_verified(t, format!("region under {r}: {e}")))?;
    Ok(hole
        .polygon_mutations(diagonal)
        .map_err(|e| not_verified(t, e.to_string()))?
        .into_iter()
        .map(|a| Arc::new_unchecked(merged[a.t() as usize], merged[a.u() as usize]))
        .filter(|a| *a != t)
        .collect())
}

fn fountain_replacements(ctx: Context, diagram: &ArcDiagram, t: Arc) -> Result<Vec<Arc>, MutationError> {
    let d = ctx.d();
    let p0 = diagram
        .left_fountain()
        .ok_or_else(|| not_verified(t, "no overarc and no left-fountain"))?;
    let seq = p_sequence(diagram, p0, d + 1)?;
    if seq.m().is_none() {
        return Err(not_verified(t, format!("p-sequence from {p0} reaches no right-fountain in {} steps", d + 1)));
    }
    let j = seq
        .points
        .windows(2)
        .position(|w| w[0] == t.t() && w[1] == t.u())
        .ok_or_else(|| not_verified(t, format!("not a step of the p-sequence {:?}", seq.points)))?;
    let face = diagram.face_below(t);
    if face.vertices.len() as i64 != d + 2 {
        return Err(not_verified(t, format!("face below has {} vertices", face.vertices.len())));
    }
    let mut chain: Vec<i64> = seq.points[..=j].to_vec();
    chain.extend_from_slice(&face.vertices[1..face.vertices.len() - 1]);
    chain.extend_from_slice(&seq.points[j + 1..]);
    let rest = diagram.without(t)?;
    let step = (d + 1) as usize;
    Ok(chain
        .iter()
        .zip(chain.iter().skip(step))
        .map(|(&v, &w)| Arc::new_unchecked(v, w))
        .filter(|a| *a != t && ctx.is_admissible(*a) && addable(&rest, *a))
        .collect())
}

/// Every nontrivial replacement of `t` keeping the diagram an angulation, sorted.
pub fn enumerate_mutations(diagram: &ArcDiagram, t: Arc) -> Result<Vec<MutationOption>, MutationError> {
    if !diagram.contains(t) {
        return Err(MutationError::NotPresent(t));
    }
    let ctx = diagram.ctx();
    let mut added = match find_overarc(diagram, t) {
        Some(r) => polygon_replacements(ctx, diagram, t, r)?,
        None => fountain_replacements(ctx, diagram, t)?,
    };
    added.sort();
    added.dedup();
    Ok(added.into_iter().map(|added| MutationOption { removed: t, added }).collect())
}

/// `(D \ removed) ∪ {added}`. The option must be one that
/// [`enumerate_mutations`] offers for the current diagram.
pub fn mutate(diagram: &ArcDiagram, option: MutationOption) -> Result<ArcDiagram, MutationError> {
    if !diagram.contains(option.removed) {
        return Err(MutationError::StaleOption(option.removed));
    }
    if !enumerate_mutations(diagram, option.removed)?.contains(&option) {
        return Err(MutationError::InvalidOption { removed: option.removed, added: option.added });
    }
    Ok(diagram.replace(option.removed, option.added)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{canonical_fountain, t_ell_diagram, zigzag};

    fn arc(t: i64, u: i64) -> Arc {
        Arc::new(t, u).unwrap()
    }

    fn added(options: &[MutationOption]) -> Vec<Arc> {
        options.iter().map(|o| o.added).collect()
    }

    #[test]
    fn p_sequence_examples() {
        let t1 = t_ell_diagram(2, 1).unwrap();
        let s = p_sequence(&t1, 0, 10).unwrap();
        assert_eq!(s.points, vec![0, 3, 4]);
        assert_eq!(s.terminator, Terminator::RightFountain { at: 4 });
        assert_eq!(s.m(), Some(2));

        let at_fountain = p_sequence(&t1, 4, 1).unwrap();
        assert_eq!(at_fountain.points, vec![4]);

        let z = p_sequence(&zigzag(2), 0, 20).unwrap();
        assert_eq!(z.terminator, Terminator::HorizonReached { steps: 20 });
        assert_eq!(z.points.len(), 21);
        assert_eq!(p_sequence(&t1, 0, 0), Err(MutationError::InvalidSteps(0)));
    }

    #[test]
    fn overarc_examples() {
        assert_eq!(find_overarc(&canonical_fountain(2, 0), arc(0, 3)), Some(arc(0, 5)));
        for d in 2..=4 {
            for ell in 0..d {
                assert_eq!(find_overarc(&t_ell_diagram(d, ell).unwrap(), arc(0, d + 1)), None);
            }
        }
        let ctx = Context::new(2).unwrap();
        let hex = ArcDiagram::finite(ctx, [arc(0, 5), arc(1, 4)]).unwrap();
        assert_eq!(find_overarc(&hex, arc(1, 4)), Some(arc(0, 5)));
    }

    #[test]
    fn fountain_options() {
        let f = canonical_fountain(2, 0);
        let opts = enumerate_mutations(&f, arc(0, 3)).unwrap();
        assert_eq!(added(&opts), vec![arc(1, 4), arc(2, 5)]);
        assert_eq!(enumerate_mutations(&f, arc(-5, 0)).unwrap().len(), 2);
        assert_eq!(enumerate_mutations(&f, arc(1, 4)), Err(MutationError::NotPresent(arc(1, 4))));
    }

    #[test]
    fn zigzag_flip_d1() {
        let z = zigzag(1);
        for a in z.arcs_within(-6, 6) {
            assert_eq!(enumerate_mutations(&z, a).unwrap().len(), 1, "{a}");
        }
    }

    #[test]
    fn t_ell_options() {
        for d in 2..=5 {
            for ell in 0..d {
                let t = t_ell_diagram(d, ell).unwrap();
                let expected: Vec<Arc> = (1..=ell).map(|p| arc(p, p + d + 1)).collect();
                assert_eq!(added(&enumerate_mutations(&t, arc(0, d + 1)).unwrap()), expected, "d={d} ell={ell}");
            }
        }
    }

    #[test]
    fn mutate_round_trip() {
        let t2 = t_ell_diagram(3, 2).unwrap();
        let option = MutationOption { removed: arc(0, 4), added: arc(1, 5) };
        let m = mutate(&t2, option).unwrap();
        assert!(m.contains(arc(1, 5)) && !m.contains(arc(0, 4)));
        assert!(t2.contains(arc(0, 4)));
        let (lo, hi) = m.min_window();
        assert!(m.validate(lo - 6, hi + 6).unwrap().weakly_cluster_tilting);
        let back = added(&enumerate_mutations(&m, arc(1, 5)).unwrap());
        assert!(back.contains(&arc(0, 4)), "{back:?}");
        assert_eq!(mutate(&m, option), Err(MutationError::StaleOption(arc(0, 4))));
        assert_eq!(
            mutate(&t2, MutationOption { removed: arc(0, 4), added: arc(3, 7) }),
            Err(MutationError::InvalidOption { removed: arc(0, 4), added: arc(3, 7) })
        );
    }

    #[test]
    fn mutating_a_tail_arc_materializes_it() {
        let f = canonical_fountain(1, 0);
        let opts = enumerate_mutations(&f, arc(0, 4)).unwrap();
        assert_eq!(added(&opts), vec![arc(3, 5)]);
        let m = mutate(&f, opts[0]).unwrap();
        let (lo, hi) = m.min_window();
        let r = m.validate(lo - 4, hi + 4).unwrap();
        assert!(r.weakly_cluster_tilting, "{r:?}");
    }

    #[test]
    fn option_json_shape() {
        let o = MutationOption { removed: arc(0, 3), added: arc(1, 4) };
        assert_eq!(serde_json::to_string(&o).unwrap(), r#"{"removed":[0,3],"added":[1,4]}"#);
        let s = PSequence { points: vec![0, 3, 4], terminator: Terminator::RightFountain { at: 4 } };
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"points":[0,3,4],"terminator":{"kind":"right_fountain","at":4}}"#
        );
    }
}
