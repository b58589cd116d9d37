//! Size caps shared by every algorithm in the crate.
//!
//! Exceeding a cap is always reported as [`Error::CapExceeded`](crate::Error::CapExceeded);
//! nothing is silently truncated. Caps can be loaded from a TOML file where every
//! key is optional and falls back to the default.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    /// Largest admissible field order p^k.
    pub field_order: u64,
    /// Largest permutation degree.
    pub degree: usize,
    /// Largest group order for which elements may be enumerated.
    pub enumeration_order: u64,
    /// Largest number of points of V+V an orbit census may touch.
    pub orbit_points: u64,
    /// Dixon: largest number of conjugacy classes.
    pub dixon_classes: usize,
    /// Dixon: largest group order.
    pub dixon_order: u64,
    /// Largest number of normal subgroups kept in a lattice search.
    pub normal_lattice: usize,
    /// Random candidate steps for the Hall subgroup search.
    pub hall_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            field_order: 531_441, // 3^12
            degree: 4096,
            enumeration_order: 1_000_000,
            orbit_points: 10_000_000,
            dixon_classes: 40,
            dixon_order: 100_000,
            normal_lattice: 5000,
            hall_budget: 100_000,
        }
    }
}

impl Limits {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidParameters(format!("limits: {e}")))
    }

    pub(crate) fn check(what: &'static str, value: u128, cap: u128) -> Result<()> {
        if value > cap {
            Err(Error::CapExceeded { what, value, cap })
        } else {
            Ok(())
        }
    }
}
