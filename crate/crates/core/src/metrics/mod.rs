//! Word metrics on Cayley graphs and distortion of cyclic subgroups.
//!
//! Exact lengths come from breadth-first search ([`ball`], [`WordMetric`]).
//! Beyond BFS range, [`word_length_bounds`] gives a certified interval: an
//! explicit word on top and a coordinate-growth bound below.
//! [`distortion_profile`] tabulates these intervals along `x^k` and
//! classifies the growth.

mod ball;
mod bounds;
mod distortion;

pub use ball::{ball, symmetric_letters, word_length_exact, BallStop, BallTable, WordMetric};
pub use bounds::{
    horner_word, sol_digits, sol_word, upper_word, word_length_bounds, LengthInterval,
    LowerMethod, LowerWitness, SOL_DIGIT_CAP,
};
pub use distortion::{
    check_strict_distortion, classify, default_schedule, distortion_profile, linear_fit,
    write_profile_csv, Classification, DistortionProfile, LinearFit, ProfileOptions, Sample,
    StrictDistortionCheck, BAND_SLACK_BITS, LOGARITHMIC_EXPONENT, R2_THRESHOLD,
    UNDISTORTED_EXPONENT,
};
