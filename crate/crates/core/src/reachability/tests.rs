use super::*;
use crate::freespace::{build_diagram, FreeSpaceConfig};
use crate::geom::{Point, Trajectory};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn walk(rng: &mut ChaCha8Rng, n: usize) -> Trajectory {
    let mut p = Point::new(0.0, 0.0);
    let mut pts = vec![p];
    let mut h: f64 = 0.0;
    for _ in 1..n {
        h += rng.gen_range(-1.5..1.5);
        p = p + Point::new(h.cos(), h.sin()) * rng.gen_range(0.3..1.2);
        pts.push(p);
    }
    Trajectory::new(pts).unwrap()
}

fn find(g: &ReachabilityGraph, p: (f64, f64)) -> Option<NodeId> {
    g.points()
        .iter()
        .position(|c| (c.position.0 - p.0).abs() < 1e-12 && (c.position.1 - p.1).abs() < 1e-12)
        .map(|i| i as NodeId)
}

#[test]
fn empty_diagram_gives_empty_graph() {
    let a = Trajectory::from_xy(&[(0., 0.), (1., 0.)]).unwrap();
    let b = Trajectory::from_xy(&[(0., 9.), (1., 9.)]).unwrap();
    let fs = build_diagram(&a, &b, FreeSpaceConfig::new(1.0, 0.1).unwrap()).unwrap();
    let g = build_graph(&fs);
    assert_eq!(g.num_critical(), 0);
    assert_eq!(g.num_edges(), 0);
    assert!(extract_boundary_critical_points(&fs).is_empty());
}

#[test]
fn single_segment_diagonal() {
    let t = Trajectory::from_xy(&[(0., 0.), (4., 0.)]).unwrap();
    let fs = build_diagram(&t, &t, FreeSpaceConfig::new(0.5, 0.2).unwrap()).unwrap();
    let g = build_graph(&fs);
    let a = find(&g, (0.0, 0.0)).unwrap();
    let b = find(&g, (4.0, 4.0)).unwrap();
    assert!(g.closure(a).contains(&b));
    assert!(!g.closure(b).contains(&a));
    // all critical points sit on the diagram border for a single cell
    for c in g.points() {
        let (x, y) = c.position;
        assert!(x == 0.0 || x == 4.0 || y == 0.0 || y == 4.0);
    }
    let q = g.rightmost_reachable(&fs, 0, (1.0, 1.2)).unwrap().unwrap();
    assert_eq!(q.position.1, 4.0);
    assert_eq!(q.position.0, 4.0);
    assert!(g.rightmost_reachable(&fs, 0, (3.0, 0.5)).is_err());
}

#[test]
fn identical_curves_diagonal_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let t = walk(&mut rng, 30);
    let fs = build_diagram(&t, &t, FreeSpaceConfig::new(0.2, 0.2).unwrap()).unwrap();
    let g = build_graph(&fs);
    let start = find(&g, (0.0, 0.0)).unwrap();
    let l = t.total_length();
    let end = find(&g, (l, l)).unwrap();
    assert!(g.closure(start).contains(&end));
    // every diagonal corner is a critical point reachable from the origin
    let reach = g.closure(start);
    for &x in fs.x_breaks() {
        let v = find(&g, (x, x)).unwrap();
        assert!(reach.contains(&v));
    }
}

#[test]
fn per_row_vertical_point_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..20 {
        let p = walk(&mut rng, 25);
        let fs = build_diagram(
            &p,
            &p,
            FreeSpaceConfig::new(rng.gen_range(0.3..2.0), 0.3).unwrap(),
        )
        .unwrap();
        let g = build_graph(&fs);
        for (i, s) in g.rows.iter().enumerate() {
            let mut pts: Vec<NodeId> = s
                .bounds
                .iter()
                .filter(|b| !b.iv.is_empty())
                .flat_map(|b| [b.lo_node, b.hi_node])
                .collect();
            pts.sort_unstable();
            pts.dedup();
            assert!(pts.len() <= 2 * fs.row_cells(i).len() + 2);
        }
    }
}

#[test]
fn edges_point_forward() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let p = walk(&mut rng, 40);
    let fs = build_diagram(&p, &p, FreeSpaceConfig::new(1.0, 0.3).unwrap()).unwrap();
    let g = build_graph(&fs);
    for v in 0..g.num_critical() as NodeId {
        let a = g.position(v).unwrap();
        for w in g.expand(v) {
            let b = g.position(w).unwrap();
            assert!(b.0 >= a.0 && b.1 >= a.1, "{a:?} -> {b:?}");
        }
    }
}

#[test]
fn greedy_point_matches_coinciding_critical_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..6 {
        let p = walk(&mut rng, 20);
        let q = walk(&mut rng, 15);
        let fs = build_diagram(
            &p,
            &q,
            FreeSpaceConfig::new(rng.gen_range(0.5..2.5), 0.3).unwrap(),
        )
        .unwrap();
        let mut g = build_graph(&fs);
        for v in 0..g.num_critical() as NodeId {
            let pos = g.position(v).unwrap();
            let want = g.closure(v);
            let gv = g.insert_greedy_point(&fs, pos).unwrap();
            let mut got = g.closure(gv);
            got.retain(|&w| w != gv);
            for w in &want {
                assert!(
                    got.contains(w) || *w == v,
                    "v={v} {:?} w={w} {:?} runs={:?}",
                    g.points()[v as usize],
                    g.points()[*w as usize],
                    g.nodes[v as usize].runs
                );
            }
            for w in &got {
                assert!(
                    want.contains(w),
                    "extra v={v} {:?} w={w} {:?}",
                    g.points()[v as usize],
                    g.points()[*w as usize]
                );
            }
            g.remove_greedy_point(gv).unwrap();
        }
    }
}

#[test]
fn greedy_point_rejects_black_points() {
    let t = Trajectory::from_xy(&[(0., 0.), (4., 0.)]).unwrap();
    let fs = build_diagram(&t, &t, FreeSpaceConfig::new(0.5, 0.2).unwrap()).unwrap();
    let mut g = build_graph(&fs);
    assert!(g.insert_greedy_point(&fs, (0.0, 3.0)).is_err());
    let v = g.insert_greedy_point(&fs, (3.9, 4.0)).unwrap();
    assert!(g.remove_greedy_point(v + 1).is_err());
    g.remove_greedy_point(v).unwrap();
}
