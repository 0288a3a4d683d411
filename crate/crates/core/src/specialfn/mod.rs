//! Special functions used by the asymptotic formulas.
//!
//! Everything here is a deterministic pure function of its arguments.

mod barnes;
mod elliptic;
mod theta;
mod zeta;

pub use barnes::{ln_a, ln_barnes_g_pair};
pub use elliptic::{
    elliptic_e, elliptic_k, elliptic_ke_with_complement, elliptic_pair, EllipticPair,
};
pub use theta::{theta3, theta3_complex, theta3_direct, theta3_modular, ThetaArgs};
pub use zeta::{constants, widom_dyson_ln_c0, zeta_prime_minus_one, Constants, EULER_GAMMA};

/// Bernoulli numbers `B_2, B_4, …, B_20`.
pub(crate) const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];
