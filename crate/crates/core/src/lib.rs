//! Exact matching-count machinery for small graphs: matching vectors and
//! polynomials, characteristic polynomials, graph and matching energy, the
//! matching-count quasi-order, named extremal families, isomorphism-free
//! enumeration and a verification harness for the extremal claims.

pub mod canon;
pub mod cycle;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod matching;
pub mod order;
pub mod poly;
pub mod quad;
pub mod roots;
pub mod spectral;
pub mod verify;

pub use canon::{are_isomorphic, canonical_key, CanonicalKey};
pub use cycle::{cycle_structure, BicyclicStructure};
pub use enumerate::{count_class, enumerate_class, enumerate_connected, EnumQuery};
pub use error::{Error, Result};
pub use families::{build, list_supported, FamilySpec};
pub use graph::{Graph, GraphClass};
pub use matching::{matching_polynomial, matching_vector, MatchingCache, MatchingVector};
pub use order::{compare_coeff, compare_matching, Dominance, QuasiOrderResult};
pub use poly::IntPolynomial;
pub use spectral::{char_poly, eigenvalues, energy_report, graph_energy, matching_energy, tre, CharPoly, EnergyReport, MeMethod};
pub use verify::{all_pass, emit_report_csv, emit_report_json, verify_identity, verify_theorem, ClaimId, IdentityId, Status, VerificationReport, Witness};
