//! State-vector simulation of digitized transverse-field annealing.

mod schedule;
mod state;

pub use schedule::{AnnealSchedule, Profile};
pub use state::{measure, residual_energy, trotter_anneal, QuantumState, MAX_SIM_SPINS};

pub const DEFAULT_GATE_DEPTH: u32 = 4;
pub const DEFAULT_GATE_TIME_NS: f64 = 84.0;

/// Hardware time of `slices` Trotter slices, in microseconds.
pub fn digitized_time(slices: usize, gate_depth: u32, gate_time_ns: f64) -> f64 {
    slices as f64 * gate_depth as f64 * gate_time_ns / 1000.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digitized_time_examples() {
        assert!(
            (digitized_time(1, DEFAULT_GATE_DEPTH, DEFAULT_GATE_TIME_NS) - 0.336).abs() < 1e-12
        );
        assert_eq!(
            digitized_time(0, DEFAULT_GATE_DEPTH, DEFAULT_GATE_TIME_NS),
            0.0
        );
        assert!(
            (digitized_time(100, DEFAULT_GATE_DEPTH, DEFAULT_GATE_TIME_NS) - 33.6).abs() < 1e-9
        );
    }
}
