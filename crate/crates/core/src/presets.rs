//! Named diagrams: the canonical fountain, the locally finite zigzag and the
//! family `T_ℓ` whose arc `(0, d+1)` has exactly `ℓ` mutations.

use thiserror::Error;

use crate::arcs::{Arc, Context};
use crate::diagram::ArcDiagram;
use crate::tail::{Direction, Side, TailSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresetError {
    #[error("invalid parameter d={0}: must be at least 1")]
    InvalidD(i64),
    #[error("ell={ell} out of range 0..={max} for d={d}")]
    EllOutOfRange { d: i64, ell: i64, max: i64 },
}

fn fountain_tail(d: i64, anchor: i64, side: Side) -> TailSpec {
    TailSpec::Fountain { anchor, side, first_length: d + 1, length_step: d, filler_motif: Vec::new() }
}

fn context(d: i64) -> Result<Context, PresetError> {
    Context::new(d).map_err(|_| PresetError::InvalidD(d))
}

/// Fountain at `p`: arcs `(p, p+d+1+kd)` and `(p−d−1−kd, p)`, `k ≥ 0`. The
/// bands between consecutive arcs are `(d+2)`-gons on consecutive integers.
pub fn try_canonical_fountain(d: i64, p: i64) -> Result<ArcDiagram, PresetError> {
    let ctx = context(d)?;
    Ok(ArcDiagram::new(ctx, [], fountain_tail(d, p, Side::Left), fountain_tail(d, p, Side::Right))
        .expect("canonical fountain is well formed"))
}

/// # Panics
/// If `d < 1`.
pub fn canonical_fountain(d: i64, p: i64) -> ArcDiagram {
    try_canonical_fountain(d, p).expect("d >= 1")
}

/// Locally finite nested chain `A_0 = (0, d+1)`, `A_{2k+1} = A_{2k} + (−d, 0)`,
/// `A_{2k+2} = A_{2k+1} + (0, d)`. Each tail carries one parity class.
pub fn try_zigzag(d: i64) -> Result<ArcDiagram, PresetError> {
    let ctx = context(d)?;
    let odd = TailSpec::Periodic {
        motif: vec![Arc::new_unchecked(-d, d + 1)],
        period: d,
        direction: Direction::Outward,
    };
    let even = TailSpec::Periodic {
        motif: vec![Arc::new_unchecked(0, d + 1)],
        period: d,
        direction: Direction::Outward,
    };
    Ok(ArcDiagram::new(ctx, [], odd, even).expect("zigzag is well formed"))
}

/// # Panics
/// If `d < 1`.
pub fn zigzag(d: i64) -> ArcDiagram {
    try_zigzag(d).expect("d >= 1")
}

/// `T_ℓ`: left-fountain at 0, right-fountain at `d+1+ℓ`, the arc `(0, d+1)`
/// and bare base segments between `d+1` and `d+1+ℓ`.
pub fn t_ell_diagram(d: i64, ell: i64) -> Result<ArcDiagram, PresetError> {
    let ctx = context(d)?;
    if ell < 0 || ell > d - 1 {
        return Err(PresetError::EllOutOfRange { d, ell, max: d - 1 });
    }
    let core = [Arc::new_unchecked(0, d + 1)];
    Ok(ArcDiagram::new(ctx, core, fountain_tail(d, 0, Side::Left), fountain_tail(d, d + 1 + ell, Side::Right))
        .expect("T_ell is well formed"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Classification;

    fn arc(t: i64, u: i64) -> Arc {
        Arc::new(t, u).unwrap()
    }

    #[test]
    fn fountain_arcs() {
        let f = canonical_fountain(2, 0);
        for a in [arc(0, 3), arc(0, 5), arc(0, 7), arc(-3, 0), arc(-5, 0)] {
            assert!(f.contains(a));
        }
        assert!(!f.contains(arc(0, 4)));
        let g = canonical_fountain(1, 0);
        for a in [arc(0, 2), arc(0, 3), arc(0, 4), arc(-2, 0), arc(-3, 0)] {
            assert!(g.contains(a));
        }
        assert_eq!(canonical_fountain(3, 5).classify(), Classification::Fountain { p: 5 });
    }

    #[test]
    fn zigzag_recurrence() {
        let z = zigzag(2);
        let mut a = arc(0, 3);
        for k in 0..10 {
            assert!(z.contains(a), "A_{k} = {a}");
            a = if k % 2 == 0 { Arc::new(a.t() - 2, a.u()).unwrap() } else { Arc::new(a.t(), a.u() + 2).unwrap() };
        }
        for s in -12..=12 {
            let n = z.arcs_in_window(s, s, 0).arcs.len();
            assert!(n <= 3, "vertex {s} has {n} arcs");
        }
        assert_eq!(z.classify(), Classification::LocallyFinite);
    }

    #[test]
    fn t_ell_shape() {
        let t = t_ell_diagram(3, 2).unwrap();
        assert!(t.contains(arc(0, 4)));
        assert_eq!(t.left_fountain(), Some(0));
        assert_eq!(t.right_fountain(), Some(6));
        assert_eq!(t_ell_diagram(3, 3), Err(PresetError::EllOutOfRange { d: 3, ell: 3, max: 2 }));
        assert_eq!(t_ell_diagram(3, -1), Err(PresetError::EllOutOfRange { d: 3, ell: -1, max: 2 }));
        assert_eq!(t_ell_diagram(0, 0), Err(PresetError::InvalidD(0)));
    }

    #[test]
    fn presets_validate() {
        for d in 1..=5 {
            for diagram in [canonical_fountain(d, 0), zigzag(d), canonical_fountain(d, -3)] {
                let (lo, hi) = diagram.min_window();
                let r = diagram.validate(lo - 2 * d, hi + 2 * d).unwrap();
                assert!(r.weakly_cluster_tilting && r.cluster_tilting, "d={d}: {r:?}");
            }
            for ell in 0..d {
                let t = t_ell_diagram(d, ell).unwrap();
                let (lo, hi) = t.min_window();
                let r = t.validate(lo - 2 * d, hi + 2 * d).unwrap();
                assert!(r.weakly_cluster_tilting && !r.cluster_tilting, "d={d} ell={ell}: {r:?}");
            }
        }
    }
}
