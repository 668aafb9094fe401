//! Order reduction, gauge transforms and coupling compression.

mod compress;
mod gadget;
mod gauge;
mod reduce;

pub use compress::{compress_couplings, energy_scale, ChipRange, DEFAULT_STRONG_THRESHOLD};
pub use gadget::{
    better_gadget_set, gadget_library_from_str, gadget_library_to_string, synthesize_gadget,
    verify_gadget, GadgetCheck, GadgetSet, GadgetSpec, DEFAULT_COEFF_BOUND, ROLE_A, ROLE_AUX,
    ROLE_B, ROLE_C, ROLE_PAIRS,
};
pub use gauge::{apply_gauge, GaugeTransform};
pub use reduce::{reduce_cubic, AuxAssignment, ReductionMap};

use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub fn load_gadget_library<T: Scalar>(path: impl AsRef<Path>) -> Result<GadgetSet<T>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    gadget_library_from_str(&text, &path.display().to_string())
}

pub fn save_gadget_library<T: Scalar>(set: &GadgetSet<T>, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, gadget_library_to_string(set)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
