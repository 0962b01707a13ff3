//! Numerical CR geometry of closed `(G1 x G2)`-orbits in complex semisimple groups.
//!
//! A case is a complex semisimple Lie algebra with a compact real form (given by
//! `theta`) and two commuting antilinear involutions `sigma1`, `sigma2`. From a
//! standard Cartan datum `(n, c)` the library computes the extended weight
//! decomposition under `ad(c)` and `tau_n`, the isotropy data of the orbit
//! through `z = n exp(i eta)`, its intrinsic Levi form, the Levi cone, rank-one
//! signatures and q-completeness counts.
//!
//! ```
//! use levilab::{build_named, fundamental_cartan, levi_matrix, BasePoint, WeightSystem};
//!
//! let setup = build_named("sl2:s11-theta:k=1").unwrap();
//! let datum = fundamental_cartan(&setup).unwrap();
//! let system = WeightSystem::build(&setup, &datum).unwrap();
//! let report = levi_matrix(&system, &BasePoint::new(datum, vec![0.3]).unwrap()).unwrap();
//! assert_eq!(report.scalar.unwrap().inertia, (1, 1, 0));
//! assert!(report.cone.cone_full);
//! ```

pub mod cartan;
pub mod catalog;
pub mod cone;
pub mod domains;
pub mod error;
pub mod leviform;
pub mod liecore;
pub mod linalg;
pub mod orbit;
pub mod tolerance;
pub mod verify;
pub mod weights;

pub use cartan::{fundamental_cartan, make_datum, BasePoint, CartanDatum};
pub use catalog::{build_case, build_named, standard_cartan_menu, CaseSpec, CATALOG};
pub use domains::{domain_report, DomainReport};
pub use error::{Error, Result};
pub use leviform::{cone_verdict, levi_matrix, levi_pairing, quadratic_blocks, ConeCase, LeviBlock, LeviReport};
pub use liecore::{LieAlgebra, RealFormSetup};
pub use orbit::{orbit_profile, OrbitProfile};
pub use tolerance::Tolerances;
pub use weights::{ExtendedWeight, WeightSystem};
