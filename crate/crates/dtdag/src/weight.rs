use std::fmt::{Debug, Display};
use std::hash::Hash;

use num::traits::{Bounded, CheckedAdd, CheckedMul, CheckedSub, NumCast};
use num::{Integer, Signed};

/// Exact rational over a [`Weight`] scalar.
pub type Rational<W> = num::rational::Ratio<W>;

/// Signed integer scalar used for thresholds, utilities and walk weights.
///
/// Every quantity the algorithms manipulate is an integer combination of
/// `t1` and `t2`, so the whole core is generic over the integer type rather
/// than tied to one width. `i64` and `i128` satisfy the bound; `i64` is the
/// crate default.
pub trait Weight:
    Integer
    + Signed
    + NumCast
    + Bounded
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Copy
    + Default
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Weight for T where
    T: Integer
        + Signed
        + NumCast
        + Bounded
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Copy
        + Default
        + Hash
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Converts a count (vertices, edges, hops) into the weight scalar.
///
/// Counts are bounded by the instance size; a scalar too narrow to hold them
/// is a caller error, so this panics rather than propagating.
pub(crate) fn w<W: Weight>(x: usize) -> W {
    NumCast::from(x).expect("count does not fit in the weight scalar")
}
