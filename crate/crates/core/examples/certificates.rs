//! Solves, writes a certificate, and re-checks it against a reloaded plane.
//!
//! cargo run --release --example certificates

use mobius_metric::certificate::{Certificate, Claim, SolveRecord};
use mobius_metric::instance::resolve_all_instance;
use mobius_metric::metric::Vertex;
use mobius_metric::solver::{exact_min_hitting_set, Budget};
use mobius_metric::MobiusPlane;

fn main() -> anyhow::Result<()> {
    let plane = MobiusPlane::miquelian(3)?;
    let inst = resolve_all_instance(&plane);
    let out = exact_min_hitting_set(&inst, Budget::seconds(30), None)?;
    let record = SolveRecord::new(&inst, &out);
    let cert = Certificate::new(
        &plane,
        Claim::Resolving,
        inst.kind.tag(),
        out.status.into(),
        out.lower,
        record.witness.clone(),
        vec![record],
    );
    let json = serde_json::to_string_pretty(&cert)?;
    println!("{json}");

    // A verifier only needs the plane document and the certificate.
    let plane_json = serde_json::to_string(&plane.to_document())?;
    let reloaded = MobiusPlane::from_document(&serde_json::from_str(&plane_json)?)?;
    let parsed: Certificate = serde_json::from_str(&json)?;
    parsed.verify(&reloaded)?;
    eprintln!("certificate verified");

    let mut forged = parsed;
    forged.witness[0] = Vertex::Circle(reloaded.num_circles() - 1);
    forged.witness.sort_unstable();
    forged.witness.dedup();
    eprintln!("forged witness: {:?}", forged.verify(&reloaded).err());
    Ok(())
}
