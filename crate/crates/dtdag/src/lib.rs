//! Double-threshold digraphs.
//!
//! A dag `G` is a `(t1, t2)` double-threshold digraph if every vertex can be
//! given a utility value `alpha(v)` such that each edge `(u, v)` forces
//! `alpha(v) - alpha(u) >= t1` while each non-adjacent pair keeps
//! `|alpha(v) - alpha(u)| <= t2`. Feasibility depends only on the ratio
//! `t2/t1`; the minimum satisfiable ratio `lambda(G)` measures how far the
//! dag is from a weak order (`lambda = 0`) or a semiorder (`lambda = 1`).
//!
//! The crate provides
//! * [`dag`] — validated dag representation, orderings, weak-order detection;
//! * [`feasibility`] — the reindexed Bellman–Ford decision procedure that
//!   returns either a satisfying utility assignment or a forcing-cycle
//!   certificate of infeasibility;
//! * [`lambda`] — exact `lambda(G)` via a reindexed minimum-cycle-mean
//!   computation, with dual certificates (assignment + forcing cycle);
//! * [`clique`] — k-clique enumeration and the block dynamic program for
//!   maximum (weighted) clique on clique-extendable orderings;
//! * [`approx`] — `floor(lambda)+1`-factor approximations for independent
//!   set, coloring and clique cover;
//! * [`oracle`] — brute-force ground truth and instance generators;
//! * [`io`] — instance file format and machine-readable result documents.
//!
//! All core numerics are exact. The algorithms are generic over a signed
//! integer scalar (see [`Weight`]); `i64` is the default used by the CLI and
//! the type aliases below.

pub mod approx;
pub mod clique;
pub mod dag;
pub mod error;
pub mod feasibility;
pub mod io;
pub mod lambda;
pub mod oracle;
mod weight;

pub use crate::dag::{Dag, DegeneracyClass, Hop};
pub use crate::error::Error;
pub use crate::feasibility::{
    check_feasible, verify_assignment, verify_forcing_cycle, Feasibility, ForcingCycle, StepKind,
    Thresholds, UtilityAssignment,
};
pub use crate::lambda::{certify_lambda, compute_lambda, min_cycle_mean, LambdaCertificate};
pub use crate::weight::{Rational, Weight};

/// Default scalar for thresholds, utilities and dynamic-programming weights.
pub type DefaultWeight = i64;
/// Exact rational over the default scalar (lambda values, cycle ratios, means).
pub type Ratio64 = Rational<DefaultWeight>;
/// Thresholds over the default scalar.
pub type Thresholds64 = Thresholds<DefaultWeight>;
/// Utility assignment over the default scalar.
pub type Assignment64 = UtilityAssignment<DefaultWeight>;
/// Lambda certificate over the default scalar.
pub type LambdaCertificate64 = LambdaCertificate<DefaultWeight>;
