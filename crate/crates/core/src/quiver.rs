//! Coordinates on the Auslander–Reiten quiver.
//!
//! Indecomposable objects are admissible arcs `(t, u)`. The quiver has `d`
//! components of shape `ZA∞`; within a component the arrows are
//! `(t, u) → (t, u + d)` and `(t, u) → (t + d, u)`, the bottom row holds the
//! arcs of length `d + 1`, and `Σ(t, u) = (t − 1, u − 1)` moves between
//! components. Hom spaces between indecomposables have dimension 0 or 1 and
//! are read off from the hammock regions `F±`.

use std::collections::BTreeSet;

use crate::arcs::{is_admissible, Arc, ArcError, Context};

/// An indecomposable object, i.e. an admissible arc seen as a vertex of the quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuiverObject {
    arc: Arc,
}

impl QuiverObject {
    pub fn new(ctx: Context, arc: Arc) -> Result<Self, ArcError> {
        ctx.check(arc).map(|arc| QuiverObject { arc })
    }

    pub fn from_coords(ctx: Context, t: i64, u: i64) -> Result<Self, ArcError> {
        Self::new(ctx, Arc::new(t, u)?)
    }

    #[inline]
    pub fn arc(&self) -> Arc {
        self.arc
    }

    /// Component label `u mod d`. Not canonical; any labeling compatible
    /// with `Σ` would do.
    #[inline]
    pub fn component_index(&self, ctx: Context) -> i64 {
        self.arc.u().rem_euclid(ctx.d())
    }

    fn shifted(&self, n: i64) -> QuiverObject {
        QuiverObject { arc: self.arc.translate(n) }
    }
}

impl From<QuiverObject> for Arc {
    fn from(x: QuiverObject) -> Arc {
        x.arc
    }
}

/// `Σⁿ(t, u) = (t − n, u − n)`; negative `n` desuspends.
pub fn suspend(_ctx: Context, x: QuiverObject, n: i64) -> QuiverObject {
    x.shifted(-n)
}

/// Serre functor `S = Σ^{d+1}`.
pub fn serre(ctx: Context, x: QuiverObject) -> QuiverObject {
    x.shifted(-(ctx.d() + 1))
}

pub fn serre_inverse(ctx: Context, x: QuiverObject) -> QuiverObject {
    x.shifted(ctx.d() + 1)
}

/// AR translation `τ = SΣ⁻¹`, one step left inside a component.
pub fn tau(ctx: Context, x: QuiverObject) -> QuiverObject {
    x.shifted(-ctx.d())
}

/// `z ∈ F⁺(x)`: the upward strip to the right of `x`, bounded by the
/// sectional path from `x` up and by the path up from the base vertex
/// `(s − d − 1, s)`.
pub fn in_f_plus(ctx: Context, x: QuiverObject, z: QuiverObject) -> bool {
    let (r, s) = (x.arc.t(), x.arc.u());
    let (t, u) = (z.arc.t(), z.arc.u());
    (u - s).rem_euclid(ctx.d()) == 0 && r <= t && t < s - ctx.d() && s <= u
}

/// `z ∈ F⁻(x)`, equivalently `x ∈ F⁺(z)`.
pub fn in_f_minus(ctx: Context, x: QuiverObject, z: QuiverObject) -> bool {
    in_f_plus(ctx, z, x)
}

/// `dim Hom(x, y)`: 1 for `y ∈ F⁺(x) ∪ F⁻(Sx)`, else 0.
pub fn hom_dim(ctx: Context, x: QuiverObject, y: QuiverObject) -> u8 {
    u8::from(in_f_plus(ctx, x, y) || in_f_minus(ctx, serre(ctx, x), y))
}

/// The same dimension via `x ∈ F⁺(S⁻¹y) ∪ F⁻(y)`.
pub fn hom_dim_dual(ctx: Context, x: QuiverObject, y: QuiverObject) -> u8 {
    u8::from(in_f_plus(ctx, serre_inverse(ctx, y), x) || in_f_minus(ctx, y, x))
}

/// Degrees `ℓ ∈ 1..=d` with `Hom(x, Σ^ℓ y) ≠ 0`.
pub fn ext_profile(ctx: Context, x: QuiverObject, y: QuiverObject) -> BTreeSet<i64> {
    (1..=ctx.d())
        .filter(|&l| hom_dim(ctx, x, suspend(ctx, y, l)) == 1)
        .collect()
}

/// Convenience wrapper over [`hom_dim`] for raw arcs.
pub fn hom_dim_arcs(ctx: Context, x: Arc, y: Arc) -> Result<u8, ArcError> {
    Ok(hom_dim(ctx, QuiverObject::new(ctx, x)?, QuiverObject::new(ctx, y)?))
}

pub fn ext_profile_arcs(ctx: Context, x: Arc, y: Arc) -> Result<BTreeSet<i64>, ArcError> {
    Ok(ext_profile(ctx, QuiverObject::new(ctx, x)?, QuiverObject::new(ctx, y)?))
}

/// True when the pair of arcs admits no extension in degrees `1..=d` in
/// either direction (by the Calabi–Yau symmetry one direction suffices).
pub fn ext_orthogonal(ctx: Context, x: Arc, y: Arc) -> bool {
    debug_assert!(is_admissible(ctx, x) && is_admissible(ctx, y));
    ext_profile(ctx, QuiverObject { arc: x }, QuiverObject { arc: y }).is_empty()
}
