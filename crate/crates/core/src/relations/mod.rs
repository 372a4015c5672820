//! The relation catalog and the exact sweeps that prove it.

pub mod catalog;
pub mod term;
mod verify;

pub use catalog::{catalog, full_catalog, Kind, RelationSpec, Sides};
pub use term::{Gen, Term};
pub use verify::{
    all_tuples, find_spec, limit_sweep, residual_in, select_tuples, tuple_count, verify, verify_all, verify_specs, Exact,
    Failure, IndexMode, KernelGens, Status, SweepOptions, VerifyReport,
};
pub(crate) use verify::{clip, collect, plan, timed};
