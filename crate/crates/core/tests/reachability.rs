mod common;

use common::{bfs_rightmost, monotone_reachable, vline, walk};
use packsc::freespace::{build_diagram, FreeSpaceConfig};
use packsc::reachability::{build_graph, NodeId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn closure_matches_exact_reachability_on_small_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 100 {
        let (np, nq) = (rng.gen_range(2..5), rng.gen_range(2..5));
        let p = walk(&mut rng, np, (0.5, 1.5));
        let q = walk(&mut rng, nq, (0.5, 1.5));
        let cfg = FreeSpaceConfig::new(rng.gen_range(0.4..2.0), 0.3).unwrap();
        let fsd = build_diagram(&p, &q, cfg).unwrap();
        if fsd.cells.is_empty() || fsd.cells.len() > 8 {
            continue;
        }
        done += 1;
        let g = build_graph(&fsd);
        for a in 0..g.num_critical() as NodeId {
            let reach = g.closure(a);
            let pa = g.position(a).unwrap();
            for b in 0..g.num_critical() as NodeId {
                let pb = g.position(b).unwrap();
                let want = monotone_reachable(&fsd, pa, pb);
                assert_eq!(reach.binary_search(&b).is_ok(), want, "{pa:?} -> {pb:?}");
            }
        }
    }
}

#[test]
fn rightmost_reachable_matches_grid_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 1000 {
        let p = walk(&mut rng, 12, (0.3, 1.0));
        let q = walk(&mut rng, 6, (0.3, 1.0));
        let cfg = FreeSpaceConfig::new(rng.gen_range(0.5..2.5), 0.3).unwrap();
        let fsd = build_diagram(&p, &q, cfg).unwrap();
        let g = build_graph(&fsd);
        for _ in 0..10 {
            let row = rng.gen_range(0..fsd.num_rows());
            let ids: Vec<usize> = fsd.row_cells(row).collect();
            if ids.is_empty() {
                continue;
            }
            let cell = &fsd.cells[ids[rng.gen_range(0..ids.len())]];
            // a white point on the cell's left edge, or inside
            let x = if rng.gen_bool(0.5) { cell.origin.0 } else { rng.gen_range(cell.origin.0..cell.end.0) };
            let iv = vline(&fsd, x, cell.origin.1, cell.end.1);
            if iv.is_empty() {
                continue;
            }
            let y = if rng.gen_bool(0.3) { iv.lo } else { rng.gen_range(iv.lo..=iv.hi) };
            let targets: Vec<f64> = g
                .points()
                .iter()
                .map(|c| c.position)
                .filter(|&(px, py)| {
                    py == fsd.y_breaks()[row + 1]
                        && fsd.row_cells(row).any(|id| fsd.cells[id].origin.0 <= px && px <= fsd.cells[id].end.0)
                })
                .map(|c| c.0)
                .collect();
            let got = g.rightmost_reachable(&fsd, row, (x, y)).unwrap().map(|c| c.position.0);
            let want = bfs_rightmost(&fsd, row, (x, y), &targets, 512);
            assert_eq!(got, want, "row {row} from ({x}, {y})");
            done += 1;
        }
    }
}

#[test]
fn edges_expand_only_to_reachable_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let p = walk(&mut rng, 10, (0.3, 1.0));
        let q = walk(&mut rng, 10, (0.3, 1.0));
        let fsd = build_diagram(&p, &q, FreeSpaceConfig::new(rng.gen_range(0.5..2.0), 0.3).unwrap()).unwrap();
        let g = build_graph(&fsd);
        for a in 0..g.num_critical() as NodeId {
            let pa = g.position(a).unwrap();
            for b in g.expand(a) {
                assert!(monotone_reachable(&fsd, pa, g.position(b).unwrap()));
            }
        }
    }
}
