//! Builds a Miquelian Möbius plane, checks it, and writes it as JSON.
//!
//! cargo run --example build_plane -- 4 plane.json

use mobius_metric::MobiusPlane;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let q: u32 = args.next().map_or(Ok(4), |s| s.parse())?;
    let plane = MobiusPlane::miquelian(q)?;
    println!(
        "M({q}): {} points, {} circles, {} circles per point",
        plane.num_points(),
        plane.num_circles(),
        plane.through(0).len()
    );
    println!("axioms hold: {}", plane.verify_axioms().all_passed());
    println!(
        "incidence counts hold: {}",
        plane.verify_counts().all_passed()
    );

    let residue = plane.affine_residue(0)?;
    println!(
        "residue at {}: {} lines in {} parallel classes, affine: {}",
        plane.point_label(0),
        residue.lines.len(),
        residue.parallel_classes.len(),
        residue.is_affine_plane(q as usize)
    );

    let circle = plane.circle(0);
    let labels: Vec<String> = circle.iter().map(|&p| plane.point_label(p)).collect();
    println!("circle 0 = {{{}}}", labels.join(", "));

    if let Some(path) = args.next() {
        std::fs::write(&path, serde_json::to_string_pretty(&plane.to_document())?)?;
        let text = std::fs::read_to_string(&path)?;
        let back = MobiusPlane::from_document(&serde_json::from_str(&text)?)?;
        println!("wrote {path}; reload has {} circles", back.num_circles());
    }
    Ok(())
}
