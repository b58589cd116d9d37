//! Orbit theorems on `V ⊕ V`: qualifying-orbit census, pair existence, the
//! small-centralizer lemma, the `f(d)` scanner and direct checks on `Γ(p^d)`.

mod census;
mod fd;
mod gamma;
mod pair;

pub use census::{
    pair_qualifies, qualifying_orbits, qualifying_orbits_with, threshold, OrbitReport, Unit, UnitCount, Witness,
    WITNESS_LIMIT,
};
pub use fd::{certify, fd_csv, fd_scan, fd_value, FdRow, Sign, LOG_BITS, SQRT_BITS};
pub use gamma::{gamma_direct_check, subgroups_up_to_conjugacy, GammaCase, SmallSubgroup, LEFTOVER};
pub use pair::{
    pair_exists, pair_exists_with, regular_orbit_small_centralizer, regular_orbit_small_centralizer_for,
    LemmaReport, PairReport,
};
