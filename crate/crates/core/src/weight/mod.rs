//! Weight filtration dimensions from the Mayer–Vietoris spectral sequence.

mod e1;
mod isolated;
mod local;
mod poly;
mod spectral;
mod table;

pub use e1::{build_e1, E1Page};
pub use isolated::{isolated_resolution_e1, IsolatedResolution, IsolatedResolutionDoc};
pub use local::{rational_matrix, JsonRational, LocalSystem, LocalSystemDoc, RestrictionDoc, StratumDims};
pub use poly::{bundle_poincare, projective_space, Polynomial};
pub use spectral::{DoubleComplex, Pages};
pub use table::{kunneth_product, weight_table, weight_table_of, TableEntry, WeightTable};

use crate::error::Result;
use crate::homology::{betti, BettiVector};
use crate::snc::{dual_complex, SncConfiguration};

/// `dim W₀H^i`: the Betti numbers of the dual complex.
pub fn w0(c: &SncConfiguration) -> Result<BettiVector> {
    betti(&dual_complex(c)?, false)
}
