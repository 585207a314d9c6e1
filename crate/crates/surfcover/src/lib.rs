//! Exact-arithmetic toolkit for checking configurations of singular plane
//! curves over Q(i), divisor classes on iterated blow-ups of the plane, and
//! the numerical invariants of the double and bidouble covers they support.
//!
//! Everything is computed over exact Gaussian rationals; there is no floating
//! point anywhere in the crate. The primary interface is the `examples/`
//! directory (one runnable example per capability, `cargo run --example
//! <name>`), together with a thin `surfcover` binary exposing the same
//! operations as subcommands:
//!
//! * `verify_pgq0`, `verify_pgq1`, `verify_pgq2` - the three built-in
//!   scenario verifications, each emitting a JSON report,
//! * `resolve_curve` - resolution trees of curve singularities,
//! * `irreducibility` - absolute irreducibility of plane curves,
//! * `intersection_budget` - local intersection numbers and their totals,
//! * `linear_system` - linear systems of curves with assigned base points,
//! * `prop1_table` - the double-cover invariant table,
//! * `cover_lattice` - pullback lattices and contraction bookkeeping.

pub mod covers;
pub mod exactfield;
pub mod linsys;
pub mod picard;
pub mod poly;
pub mod scenario;
pub mod singularity;
