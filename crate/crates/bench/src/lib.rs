//! Fixtures shared by the benchmarks.

use levilab::catalog::{build_case, standard_cartan_menu, CaseSpec};
use levilab::verify::random_regular_etas;
use levilab::{BasePoint, WeightSystem};

/// Weight system and a strongly regular base point for a catalog case and menu index.
pub fn fixture(name: &str, index: usize) -> (WeightSystem, BasePoint) {
    let spec = CaseSpec::parse(name).expect("catalog name");
    let setup = build_case(&spec).expect("catalog case builds");
    let d = standard_cartan_menu(&spec).expect("menu").swap_remove(index);
    let w = WeightSystem::build(&setup, &d).expect("decomposition");
    let eta = random_regular_etas(&w, 1, 1).remove(0);
    let base = BasePoint::new(d, eta).expect("base point");
    (w, base)
}
