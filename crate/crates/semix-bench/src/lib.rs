//! Shared setup for the benchmark targets: loads bundled fixtures and builds
//! the standard data the benches exercise.

use std::path::Path;
use std::sync::Arc;

use semix_core::mixed::build_mixed_datum;
use semix_core::{FiniteGroup, MixedDatum, Scenario};

pub fn load_group(name: &str) -> Arc<FiniteGroup> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures/groups")
        .join(name);
    let text = std::fs::read_to_string(path).expect("fixture exists");
    Arc::new(FiniteGroup::from_group_file(&text, 1024).expect("fixture parses"))
}

pub fn scenario(name: &str) -> Scenario {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(format!("{name}.toml"));
    Scenario::load(&path).expect("scenario loads")
}

pub fn datum_from_scenario(name: &str) -> MixedDatum {
    let sc = scenario(name);
    let text = std::fs::read_to_string(&sc.group_file).expect("group file");
    let g = Arc::new(FiniteGroup::from_group_file(&text, 1024).expect("group parses"));
    build_mixed_datum(
        g,
        &sc.g0_generators,
        sc.tau_prime.as_ref().expect("pinned scenario"),
        &sc.signature,
        &sc.hyperbolic,
        &sc.branch,
    )
    .expect("datum assembles")
}
