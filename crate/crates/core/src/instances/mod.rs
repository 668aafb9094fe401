//! Instance families and their file format.

mod generators;
mod graph;
mod heavy_hex;
mod io;
mod regular;

pub use generators::{
    gen_hoso_instance, gen_maxcut_instance, gen_planar_spin_glass, maxcut_name, parse_maxcut_name,
    planar_sg_metadata, Family, InstanceMetadata, Provenance, ReductionRecord, Source, TripleRule,
};
pub use graph::{cut_to_energy, cut_value, energy_to_cut, maxcut_to_ising, Edge, Graph};
pub use heavy_hex::{gen_heavy_hex, HeavyHexTopology, TopologySpec};
pub use io::{instance_from_str, instance_to_string, load_instance, save_instance, Instance};
pub use regular::{gen_random_regular, gen_random_regular_with_retries, DEFAULT_REGULAR_RETRIES};
