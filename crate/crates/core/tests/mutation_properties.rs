use infgon::arcs::{crosses, Arc};
use infgon::diagram::ArcDiagram;
use infgon::mutation::{enumerate_mutations, find_overarc, mutate, p_sequence, Terminator};
use infgon::oracle::brute_force_mutations;
use infgon::presets::{canonical_fountain, t_ell_diagram, zigzag};
use proptest::prelude::*;

fn presets(d: i64) -> Vec<ArcDiagram> {
    let mut out = vec![canonical_fountain(d, 0), zigzag(d), canonical_fountain(d, 2)];
    out.extend((0..d).map(|ell| t_ell_diagram(d, ell).unwrap()));
    out
}

fn padded_window(diagram: &ArcDiagram) -> (i64, i64) {
    let (lo, hi) = diagram.min_window();
    let pad = 3 * (diagram.d() + 1);
    (lo - pad, hi + pad)
}

/// Checks every arc of the diagram's core region against the brute-force
/// scan and the structural guarantees on options.
fn check_diagram(diagram: &ArcDiagram) {
    let d = diagram.d();
    let (lo, hi) = diagram.min_window();
    let (wlo, whi) = padded_window(diagram);
    assert!(diagram.validate(wlo, whi).unwrap().weakly_cluster_tilting);
    for t in diagram.arcs_within(lo, hi) {
        let options = enumerate_mutations(diagram, t).unwrap();
        let added: Vec<Arc> = options.iter().map(|o| o.added).collect();
        assert!(added.len() as i64 <= d, "{t}: {added:?}");
        assert_eq!(added, brute_force_mutations(diagram, t, wlo, whi).unwrap(), "{t} in {}", diagram.to_json());
        if find_overarc(diagram, t).is_some() {
            assert_eq!(added.len() as i64, d, "{t}");
        }
        for (i, a) in added.iter().enumerate() {
            for b in &added[i + 1..] {
                assert!(crosses(*a, *b), "options {a} and {b} for {t} are compatible");
            }
        }
        for o in options {
            let m = mutate(diagram, o).unwrap();
            let (mlo, mhi) = padded_window(&m);
            assert!(m.validate(mlo, mhi).unwrap().weakly_cluster_tilting, "{t} -> {}", o.added);
        }
    }
}

#[test]
fn presets_agree_with_brute_force() {
    for d in 1..=4 {
        for p in presets(d) {
            check_diagram(&p);
        }
    }
}

#[test]
fn cluster_tilting_presets_have_exactly_d_options() {
    for d in 1..=4 {
        for p in [canonical_fountain(d, 0), zigzag(d)] {
            let (lo, hi) = p.min_window();
            for t in p.arcs_within(lo, hi) {
                assert_eq!(enumerate_mutations(&p, t).unwrap().len() as i64, d, "d={d} {t}");
            }
        }
    }
}

#[test]
fn p_sequences_from_left_fountains() {
    for d in 1..=5 {
        for p in presets(d) {
            let Some(p0) = p.left_fountain() else { continue };
            let seq = p_sequence(&p, p0, 4 * d).unwrap();
            let m = seq.m().expect("reaches a right-fountain");
            assert!(m as i64 <= d);
            assert_eq!(seq.terminator, Terminator::RightFountain { at: *seq.points.last().unwrap() });
            for (l, &pl) in seq.points.iter().enumerate() {
                assert_eq!((pl - p0 - l as i64).rem_euclid(d), 0);
            }
            for w in seq.points.windows(2) {
                let step = Arc::new(w[0], w[1]).unwrap();
                assert!(step.length() == 1 || p.contains(step));
            }
        }
    }
}

fn walk(start: &ArcDiagram, choices: &[(usize, usize)]) -> ArcDiagram {
    let mut current = start.clone();
    for &(arc_pick, option_pick) in choices {
        let (lo, hi) = current.min_window();
        let arcs = current.arcs_within(lo, hi);
        let t = arcs[arc_pick % arcs.len()];
        let options = enumerate_mutations(&current, t).unwrap();
        if options.is_empty() {
            continue;
        }
        current = mutate(&current, options[option_pick % options.len()]).unwrap();
    }
    current
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_mutation_walks_stay_consistent(
        d in 1i64..=3,
        preset in 0usize..8,
        choices in prop::collection::vec((0usize..64, 0usize..8), 0..8),
    ) {
        let all = presets(d);
        let start = &all[preset % all.len()];
        let end = walk(start, &choices);
        check_diagram(&end);
        prop_assert_eq!(ArcDiagram::from_json(&end.to_json()).unwrap(), end);
    }
}
