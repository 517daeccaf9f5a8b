//! Shared inputs for the benchmarks.

use simpson_cert::{lookup, FunctionSpec, Interval};

/// A corpus function and its default interval.
pub fn fixture(name: &str) -> (FunctionSpec, Interval) {
    let f = lookup(name).unwrap_or_else(|| panic!("unknown corpus function {name}"));
    let iv = f.default_interval();
    (f, iv)
}
