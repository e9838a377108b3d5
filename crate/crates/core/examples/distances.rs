//! Distances in the incidence graph, closed form against BFS.
//!
//! cargo run --example distances -- 3

use mobius_metric::metric::{all_vertices, bfs_distances, distance, Vertex};
use mobius_metric::MobiusPlane;

fn main() -> anyhow::Result<()> {
    let q: u32 = std::env::args().nth(1).map_or(Ok(3), |s| s.parse())?;
    let plane = MobiusPlane::miquelian(q)?;
    let vertices = all_vertices(&plane);

    for source in [Vertex::Point(0), Vertex::Circle(0)] {
        let bfs = bfs_distances(&plane, source);
        let mut histogram = [0usize; 5];
        for &v in &vertices {
            let d = distance(&plane, source, v)?;
            assert_eq!(Some(u32::from(d)), bfs[v.index(&plane)]);
            histogram[usize::from(d)] += 1;
        }
        println!("from {source}: vertices at distance 0..4 = {histogram:?}");
    }

    let (a, b) = (Vertex::Circle(0), Vertex::Circle(1));
    println!(
        "d({a}, {b}) = {} with {} common points",
        distance(&plane, a, b)?,
        plane.intersection_size(0, 1)
    );
    Ok(())
}
