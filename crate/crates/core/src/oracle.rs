//! Slow reference implementations, independent of the closed forms, used to
//! cross-check them in tests.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::arcs::{admissible_arcs_in_window, crosses, Arc, Context};
use crate::diagram::{ArcDiagram, DiagramError};

/// `dim Hom(x, y)` for every admissible `y` with endpoints in `[lo, hi]`,
/// by knitting the mesh relations of the quiver: forward from `x` for maps
/// inside its component, backward from `Σ^{d+1} x` for the Serre-dual part.
pub fn knitted_hom_row(ctx: Context, x: Arc, lo: i64, hi: i64) -> BTreeMap<Arc, u8> {
    let d = ctx.d();
    let sx = x.translate(-(d + 1));
    let margin = d + 1;
    let grid = admissible_arcs_in_window(ctx, lo.min(x.t()) - margin, hi.max(x.u()) + margin);
    let mut order = grid.clone();
    order.sort_by_key(|a| (a.t() + a.u(), a.t()));

    let same_component = |a: Arc, b: Arc| (a.u() - b.u()).rem_euclid(d) == 0;
    let get = |m: &HashMap<Arc, i64>, t: i64, u: i64| -> i64 {
        Arc::new(t, u).ok().and_then(|a| m.get(&a).copied()).unwrap_or(0)
    };

    let mut forward: HashMap<Arc, i64> = HashMap::new();
    for &z in &order {
        let h = if z == x {
            1
        } else if same_component(z, x) {
            let (t, u) = (z.t(), z.u());
            (get(&forward, t, u - d) + get(&forward, t - d, u) - get(&forward, t - d, u - d)).max(0)
        } else {
            0
        };
        forward.insert(z, h);
    }

    let mut backward: HashMap<Arc, i64> = HashMap::new();
    for &z in order.iter().rev() {
        let h = if z == sx {
            1
        } else if same_component(z, sx) {
            let (t, u) = (z.t(), z.u());
            (get(&backward, t, u + d) + get(&backward, t + d, u) - get(&backward, t + d, u + d)).max(0)
        } else {
            0
        };
        backward.insert(z, h);
    }

    grid.into_iter()
        .filter(|a| lo <= a.t() && a.u() <= hi)
        .map(|a| {
            let h = forward[&a] + backward[&a];
            (a, u8::try_from(h).expect("hom dimensions are small"))
        })
        .collect()
}

/// All maximal sets of pairwise noncrossing admissible diagonals of the
/// `n`-gon, by exhaustive backtracking.
pub fn brute_force_angulations(d: i64, n: i64) -> BTreeSet<BTreeSet<Arc>> {
    let ctx = Context::new(d).expect("d >= 1");
    let diagonals: Vec<Arc> = admissible_arcs_in_window(ctx, 0, n - 1)
        .into_iter()
        .filter(|a| *a != Arc::new(0, n - 1).unwrap())
        .collect();
    let mut out = BTreeSet::new();
    let mut chosen = Vec::new();
    backtrack(&diagonals, 0, &mut chosen, &mut out);
    out
}

fn backtrack(all: &[Arc], i: usize, chosen: &mut Vec<Arc>, out: &mut BTreeSet<BTreeSet<Arc>>) {
    if i == all.len() {
        let maximal = all.iter().all(|a| chosen.contains(a) || chosen.iter().any(|c| crosses(*a, *c)));
        if maximal {
            out.insert(chosen.iter().copied().collect());
        }
        return;
    }
    let a = all[i];
    if !chosen.iter().any(|c| crosses(a, *c)) {
        chosen.push(a);
        backtrack(all, i + 1, chosen, out);
        chosen.pop();
    }
    backtrack(all, i + 1, chosen, out);
}

/// Replacements of `t` found by scanning every admissible arc in `[lo, hi]`
/// that crosses nothing in `D \ t`.
pub fn brute_force_mutations(diagram: &ArcDiagram, t: Arc, lo: i64, hi: i64) -> Result<Vec<Arc>, DiagramError> {
    let rest = diagram.without(t)?;
    Ok(rest.addable_arcs(lo, hi).into_iter().filter(|a| *a != t).collect())
}
