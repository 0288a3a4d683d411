//! Large-`s` asymptotics of `ln D(s, γ)` across the `(s, v)` quarter-plane.
//!
//! - Gaussian gap (`γ = 1`): `ln D = −s²/2 − ¼ ln s + ln c₀ + O(1/s)`.
//! - Fixed or slowly growing `v < s^{1/3}`:
//!   `ln D = −4vs/π + (2v²/π²) ln(4s) + 2 ln[G(1 + iv/π)G(1 − iv/π)] + …`.
//! - Stokes ladder, `κ = 1 − (u/2)(ln s)/s`: the Gaussian value times one
//!   factor per Stokes curve crossed.
//! - Elliptic, `0 < κ < 1 − ¼(ln s)^{4/3}/s`:
//!   `ln D = −s²(1 − a²)/2 + vsV + ln θ(sV|τ) + ln A(v) + ln B(s, v)`.

mod formulas;
mod modulus;
mod regime;

pub use formulas::{
    eq2_ln_d, eq3_ln_d, eq5_ln_d, eq6_ln_d, eq6_with_data, ladder_factors, BMode, Eq6Evaluation,
    LadderFactors,
};
pub use modulus::{
    kappa_of_a, small_kappa_expansion, solve_modulus, EllipticData, SmallKappaExpansion,
};
pub use regime::{
    classify, elliptic_edge_v, ladder_cap, q_from_u, regime_label, saturation_edge_v,
    stokes_curve_v, stokes_q, Regime, RegimeInfo, StokesIndex,
};
