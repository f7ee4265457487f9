//! Re-derives the frozen lattice plans in `plans/` by containment search.
//!
//! Run with `cargo run --release -p firecontain --example derive_plans`.

use std::path::Path;

use firecontain::fire::search::{containment_search, ContainmentQuery, Goal};
use firecontain::fire::Schedule;
use firecontain::strategy::lattice::{Lattice, LatticePlanFile};
use firecontain::{generate, FamilySpec, Result};

fn derive(
    name: &str,
    lattice: Lattice,
    reference: &str,
    schedule: Schedule,
    query: ContainmentQuery,
    interior: usize,
) -> Result<LatticePlanFile> {
    let spec: FamilySpec = reference.parse()?;
    let g = generate(&spec)?;
    let c = spec.center();
    let d = g.distances_from(c);
    let allowed = (0..g.n()).filter(|&v| d[v] <= interior).collect();
    let query = ContainmentQuery { allowed: Some(allowed), ..query };
    let found = containment_search(&g, c, schedule, &query)?;
    let trace = found.trace().expect("a plan exists on the reference instance");
    LatticePlanFile::from_protections(name, lattice, interior, &spec, &g, schedule, &trace.protections())
}

fn main() -> Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("plans");
    let hex = derive(
        "hex_containment",
        Lattice::Hex,
        "hex_patch:4",
        Schedule::front_loaded(4, 3),
        ContainmentQuery { goal: Goal::MinimumBurn, ..ContainmentQuery::new(6) },
        4,
    )?;
    let rect = derive(
        "rect_containment",
        Lattice::Rect,
        "rect_grid:17x17",
        Schedule::constant(2),
        ContainmentQuery { round_cap: Some(8), ..ContainmentQuery::new(18) },
        8,
    )?;
    for plan in [hex, rect] {
        let file = dir.join(if plan.lattice == Lattice::Hex { "hex.json" } else { "rect.json" });
        let json = serde_json::to_string_pretty(&plan)?;
        std::fs::write(&file, json + "\n").expect("plans directory is writable");
        println!("{}: {} burned in {} rounds", plan.name, plan.burn_bound, plan.round_bound);
    }
    Ok(())
}
