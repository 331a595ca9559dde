//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured values. Run with `cargo test --test acceptance` (add
//! `-- --nocapture` to see the lines for passing tests).

mod common;

use std::time::Instant;

use chardom_core::area::{char_area_full, char_area_limit, char_area_union, Region};
use chardom_core::construct::{build_full_tree, slide_terminal_path, Topology};
use chardom_core::geom::{angle_at, Point, Tolerance};
use chardom_core::scenario::{
    check_monotonicity, default_jump_threshold, detect_jump, run_catch22, scenario_fig1,
    scenario_fig2, AreaRule, JUMP_LEVELS,
};
use chardom_core::spanning::{brute_force_mist, mist, mst_unrestricted};
use chardom_core::tree::full_components;

use common::{fermat_oracle, random_full_tree, square_tree_oracle, Rng};

const SQRT3: f64 = 1.7320508075688772;

fn p(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

#[test]
fn criterion_1_fermat_closed_form() {
    let started = Instant::now();
    let tol = Tolerance::default();
    let corners = [p(0.0, 0.0), p(1.0, 0.0), p(0.5, SQRT3 / 2.0)];
    let expected_point = p(0.5, SQRT3 / 6.0);

    // independent oracle agrees with the closed form before we assert it
    let (oracle_point, oracle_len) = fermat_oracle(corners[0], corners[1], corners[2]);
    assert!(
        oracle_point.dist(expected_point) < 1e-5,
        "oracle point {oracle_point:?}"
    );
    assert!((oracle_len - SQRT3).abs() < 1e-9, "oracle length {oracle_len}");

    let topology = Topology::new(3, 1, vec![(0, 3), (1, 3), (2, 3)]).unwrap();
    let tree = build_full_tree(&topology, &corners, &tol).unwrap();
    let length = tree.total_length();
    let steiner = tree.steiner_points[0];
    assert!((length - SQRT3).abs() < 1e-6, "length {length}");
    assert!(
        steiner.dist(expected_point) < 1e-6,
        "steiner point {steiner:?}"
    );

    let mst = mst_unrestricted(&corners);
    assert!((mst.length - 2.0).abs() < 1e-12, "mst {}", mst.length);
    let ratio = length / mst.length;
    assert!((ratio - SQRT3 / 2.0).abs() < 1e-6, "ratio {ratio}");

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 1: PASS (length {length:.9}, steiner ({:.9}, {:.9}), ratio {ratio:.7}, {elapsed:?})",
        steiner.x, steiner.y
    );
}

#[test]
fn criterion_2_square_closed_form() {
    let tol = Tolerance::default();
    let corners = [p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)];
    let expected = 1.0 + SQRT3;

    let oracle_len = square_tree_oracle(&corners);
    assert!(
        (oracle_len - expected).abs() < 1e-5,
        "oracle length {oracle_len}"
    );

    let topology = Topology::new(4, 2, vec![(0, 4), (1, 4), (4, 5), (2, 5), (3, 5)]).unwrap();
    let tree = build_full_tree(&topology, &corners, &tol).unwrap();
    let length = tree.total_length();
    assert!((length - expected).abs() < 1e-6, "length {length}");

    let adj = tree.adjacency();
    let mut worst: f64 = 0.0;
    for (v, nbrs) in adj.iter().enumerate() {
        for i in 0..nbrs.len() {
            for j in (i + 1)..nbrs.len() {
                let ang =
                    angle_at(tree.vertex(v), tree.vertex(nbrs[i]), tree.vertex(nbrs[j]), &tol)
                        .unwrap();
                worst = worst.max((ang - 2.0 * std::f64::consts::PI / 3.0).abs());
            }
        }
    }
    assert!(worst < 1e-6, "worst angle deviation {worst}");
    println!("criterion 2: PASS (length {length:.9}, worst angle deviation {worst:.2e})");
}

#[test]
fn criterion_3_containment_random_full_trees() {
    let started = Instant::now();
    let tol = Tolerance::default();
    let mut rng = Rng::new(0x5EED_0003);
    let mut checked = 0;
    for case in 0..100 {
        let n = 3 + case % 3; // n in {3, 4, 5}
        let (_, tree) = random_full_tree(&mut rng, n, &tol);
        let area = char_area_full(&tree, &tol).unwrap();
        for v in 0..tree.vertex_count() {
            assert!(
                area.contains_point(tree.vertex(v), &tol),
                "vertex {v} of case {case} escaped its area"
            );
        }
        for &(u, w) in &tree.edges {
            let mid = tree.vertex(u).lerp(tree.vertex(w), 0.5);
            assert!(
                area.contains_point(mid, &tol),
                "edge ({u},{w}) midpoint of case {case} escaped its area"
            );
        }
        checked += 1;
    }
    let elapsed = started.elapsed();
    assert_eq!(checked, 100);
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!("criterion 3: PASS (100 random full trees contained, {elapsed:?})");
}

#[test]
fn criterion_4_oracle_equivalence() {
    let started = Instant::now();
    let tol = Tolerance::default();
    let mut rng = Rng::new(0x5EED_0004);
    let mut scenes = 0;
    while scenes < 200 {
        let n = 3 + scenes % 4; // n in {3, 4, 5, 6}
        let (_, tree) = random_full_tree(&mut rng, n, &tol);

        // full area at t = 0
        let full = Region::single(char_area_full(&tree, &tol).unwrap());
        compare(&tree.terminals, &full, &tol);

        // union and limit areas at the degenerate endpoint of a random slide
        let moving = rng.usize_below(n);
        let path = slide_terminal_path(&tree, moving).unwrap();
        let Ok(end) = path.tree_at(1.0, &tol) else {
            continue;
        };
        if end.is_full() {
            continue; // two-terminal shrink: nothing to decompose
        }
        let Ok(union_areas) = char_area_union(&end, &tol) else {
            continue;
        };
        compare(&end.terminals, &Region::union(union_areas), &tol);
        let Ok(limit) = char_area_limit(&path, &tol) else {
            continue;
        };
        compare(&end.terminals, &Region::single(limit), &tol);

        scenes += 1;
    }

    fn compare(terminals: &[Point], region: &Region, tol: &Tolerance) {
        let fast = mist(terminals, region, tol);
        let slow = brute_force_mist(terminals, region, tol).unwrap();
        assert_eq!(fast.feasible, slow.feasible);
        if fast.feasible {
            assert!(
                (fast.length - slow.length).abs() < 1e-9,
                "lengths {} vs {}",
                fast.length,
                slow.length
            );
            assert_eq!(fast.edges, slow.edges, "edge sets differ");
        }
    }

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!("criterion 4: PASS (200 scenes, mist = brute force under full/union/limit, {elapsed:?})");
}

#[test]
fn criterion_5_fig1_jump() {
    let started = Instant::now();
    let tol = Tolerance::default();
    let (_, path) = scenario_fig1();
    let threshold = default_jump_threshold(&path, &tol).unwrap();

    let union = detect_jump(&path, AreaRule::Union, &JUMP_LEVELS, threshold, &tol).unwrap();
    assert!(union.jump_persists, "union report: {union:?}");
    assert!(
        union.jump_size >= threshold,
        "jump {} below threshold {threshold}",
        union.jump_size
    );
    let coarsest_step = 1.0 / (JUMP_LEVELS[0] - 1) as f64;
    let t_stars: Vec<f64> = union.levels.iter().map(|l| l.t_star).collect();
    for pair in t_stars.windows(2) {
        assert!(
            (pair[1] - pair[0]).abs() < coarsest_step,
            "jump location drifted: {t_stars:?}"
        );
    }

    let limit = detect_jump(&path, AreaRule::Limit, &JUMP_LEVELS, threshold, &tol).unwrap();
    assert!(!limit.jump_persists, "limit report: {limit:?}");

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "criterion 5: PASS (union jump {:.6} at t*={:.6} over threshold {:.6}; limit max |dL| {:.2e}; {elapsed:?})",
        union.jump_size,
        union.levels.last().unwrap().t_star,
        threshold,
        limit.jump_size
    );
}

#[test]
fn criterion_6_fig2_monotonicity() {
    let tol = Tolerance::default();
    let (_, path) = scenario_fig2();

    let limit = check_monotonicity(&path, AreaRule::Limit, &tol).unwrap();
    assert!(!limit.violations.is_empty(), "no violation found");
    for &(idx, witness) in &limit.violations {
        let comp = &limit.component_areas[idx];
        assert!(
            comp.contains_point(witness, &tol),
            "witness not in component {idx}"
        );
        assert!(
            !limit.total_area.contains_point(witness, &tol),
            "witness not outside the limit area"
        );
    }

    let union = check_monotonicity(&path, AreaRule::Union, &tol).unwrap();
    assert!(union.violations.is_empty(), "{:?}", union.violations);

    // the larger component's area contains the smaller one's
    let comps = &limit.component_areas;
    assert_eq!(comps.len(), 2);
    let (large, small) = if comps[0].walk.len() >= comps[1].walk.len() {
        (&comps[0], &comps[1])
    } else {
        (&comps[1], &comps[0])
    };
    let rep = chardom_core::area::region_contains_region(
        &Region::single(large.clone()),
        &Region::single(small.clone()),
        &tol,
    );
    assert!(rep.contained, "larger does not contain smaller: {rep:?}");

    // the larger component's area also contains the limit area itself —
    // containment runs in exactly the wrong direction
    let limit_area = char_area_limit(&path, &tol).unwrap();
    let rep = chardom_core::area::region_contains_region(
        &Region::single(large.clone()),
        &Region::single(limit_area),
        &tol,
    );
    assert!(rep.contained, "larger does not contain the limit area: {rep:?}");

    println!(
        "criterion 6: PASS ({} limit violation(s) with verified witness; union clean; larger ⊇ smaller and larger ⊇ limit)",
        limit.violations.len()
    );
}

#[test]
fn criterion_7_catch22_conjunction() {
    let tol = Tolerance::default();
    let report = run_catch22(&tol).unwrap();
    assert!(report.fig1_union.jump_persists);
    assert!(!report.fig1_limit.jump_persists);
    assert!(report.fig2_union.violations.is_empty());
    assert!(!report.fig2_limit.violations.is_empty());
    assert!(report.holds());
    println!(
        "criterion 7: PASS (union: jump & monotone; limit: continuous & non-monotone — no rule passes both)"
    );
}

#[test]
fn criterion_8_tree_length_continuity() {
    let tol = Tolerance::default();
    for (name, path) in [("fig1", scenario_fig1().1), ("fig2", scenario_fig2().1)] {
        let steps = 201;
        let speed = path.speed();
        let dt = 1.0 / (steps - 1) as f64;
        let mut prev: Option<f64> = None;
        let mut worst: f64 = 0.0;
        for k in 0..steps {
            let t = k as f64 * dt;
            let tree = path.tree_at(t, &tol).unwrap();
            let len = tree.total_length();
            if let Some(last) = prev {
                let bound = speed * dt + 1e-6;
                let diff = (len - last).abs();
                worst = worst.max(diff - speed * dt);
                assert!(
                    diff <= bound,
                    "{name}: |dL| = {diff} exceeds Lipschitz bound {bound} at t = {t}"
                );
            }
            prev = Some(len);
        }
        println!(
            "criterion 8: PASS on {name} (tree length Lipschitz along 201 samples, max excess {worst:.2e})"
        );
    }
}

/// Supporting check of criterion 5/6 structure: both frozen endpoints split
/// into exactly two full components and the designated edge flip happens.
#[test]
fn frozen_scene_structure() {
    let tol = Tolerance::default();

    let (scene1, path1) = scenario_fig1();
    assert!(scene1.tree.is_full());
    let end1 = path1.tree_at(1.0, &tol).unwrap();
    assert!(!end1.is_full());
    assert_eq!(full_components(&end1).len(), 2);

    // the MIST edge that the union rule drops at t = 1
    let near = path1.tree_at(1.0 - 1e-3, &tol).unwrap();
    let near_region = Region::single(char_area_full(&near, &tol).unwrap());
    let near_mist = mist(&near.terminals, &near_region, &tol);
    let union_region = Region::union(char_area_union(&end1, &tol).unwrap());
    let dropped: Vec<(usize, usize)> = near_mist
        .edges
        .iter()
        .copied()
        .filter(|&(i, j)| {
            !chardom_core::spanning::edge_is_inner(
                end1.terminals[i],
                end1.terminals[j],
                &union_region,
                &tol,
            )
        })
        .collect();
    assert!(
        !dropped.is_empty(),
        "no former MIST edge becomes non-inner at t = 1"
    );
    for &(i, j) in &dropped {
        assert!(chardom_core::spanning::edge_is_inner(
            near.terminals[i],
            near.terminals[j],
            &near_region,
            &tol,
        ));
    }

    let (scene2, path2) = scenario_fig2();
    assert!(scene2.tree.is_full());
    let end2 = path2.tree_at(1.0, &tol).unwrap();
    assert!(!end2.is_full());
    let comps = full_components(&end2);
    assert_eq!(comps.len(), 2);
    let sizes: Vec<usize> = comps.iter().map(|c| c.subtree.terminal_count()).collect();
    assert!(sizes.contains(&3) && sizes.contains(&5), "sizes {sizes:?}");
}
