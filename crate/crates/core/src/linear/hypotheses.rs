//! Hypotheses of the orbit theorems for a module `V` of `G`: faithfulness,
//! the characteristic policy, and complete reducibility of `V` restricted to
//! `O_π(G)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::group::MatrixGroup;
use crate::linear::socle::socle_and_complete_reducibility;
use crate::perm::PermGroup;
use crate::pi::PiSet;
use crate::radicals::o_pi;

/// Characteristic policy. `Strict` requires every component characteristic
/// to lie in π; `Lenient` does not restrict it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strict,
    #[default]
    Lenient,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::Lenient => "lenient",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "strict" => Ok(Mode::Strict),
            "lenient" => Ok(Mode::Lenient),
            other => Err(Error::InvalidParameters(format!(
                "mode must be strict or lenient, got {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub mode: Mode,
    pub faithful: bool,
    /// Every component characteristic lies in π.
    pub characteristic_in_pi: bool,
    pub o_pi_order: u128,
    /// Complete reducibility of each component restricted to `O_π(G)`.
    pub completely_reducible: Vec<bool>,
    pub eligible_strict: bool,
    pub eligible_lenient: bool,
    /// Eligibility under `mode`.
    pub eligible: bool,
}

pub fn check_hypotheses(m: &MatrixGroup, pi: &PiSet, mode: Mode) -> Result<HypothesisReport> {
    let core = o_pi(&m.perm_image()?.group, pi)?;
    check_hypotheses_with(m, &core, pi, mode)
}

/// As [`check_hypotheses`], reusing an already computed `O_π(G)`.
pub fn check_hypotheses_with(m: &MatrixGroup, core: &PermGroup, pi: &PiSet, mode: Mode) -> Result<HypothesisReport> {
    let faithful = m.perm_image()?.faithful;
    let characteristic_in_pi = m
        .space()
        .components()
        .iter()
        .all(|c| pi.contains(c.field.p() as u64));
    let completely_reducible = (0..m.space().components().len())
        .map(|c| socle_and_complete_reducibility(m, core, c).map(|r| r.completely_reducible))
        .collect::<Result<Vec<bool>>>()?;
    let eligible_lenient = faithful && completely_reducible.iter().all(|&b| b);
    let eligible_strict = eligible_lenient && characteristic_in_pi;
    Ok(HypothesisReport {
        mode,
        faithful,
        characteristic_in_pi,
        o_pi_order: core.order(),
        completely_reducible,
        eligible_strict,
        eligible_lenient,
        eligible: match mode {
            Mode::Strict => eligible_strict,
            Mode::Lenient => eligible_lenient,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::linear::Matrix;
    use crate::perm::Permutation;
    use crate::Limits;

    fn pi(s: &str) -> PiSet {
        s.parse().unwrap()
    }

    #[test]
    fn gl23_depends_on_mode() {
        let g = MatrixGroup::general_linear(make_field(3, 1).unwrap(), 2, Limits::default()).unwrap();
        let strict = check_hypotheses(&g, &pi("2"), Mode::Strict).unwrap();
        assert!(!strict.eligible);
        assert!(!strict.characteristic_in_pi);
        let lenient = check_hypotheses(&g, &pi("2"), Mode::Lenient).unwrap();
        assert!(lenient.eligible);
        assert_eq!(lenient.o_pi_order, 8);
        assert_eq!(lenient.completely_reducible, vec![true]);
    }

    #[test]
    fn gamma_8_strict() {
        let g = MatrixGroup::semilinear(2, 3, Limits::default()).unwrap();
        let r = check_hypotheses(&g, &pi("2,3"), Mode::Strict).unwrap();
        assert!(r.eligible);
        // the normal Singer cycle has order 7, so no non-trivial normal {2,3}-subgroup
        assert_eq!(r.o_pi_order, 1);
        let r = check_hypotheses(&g, &pi("3,7"), Mode::Strict).unwrap();
        assert!(!r.eligible);
        assert!(r.eligible_lenient);
    }

    #[test]
    fn non_faithful_is_ineligible() {
        let f = make_field(3, 1).unwrap();
        let g = MatrixGroup::from_matrices(f.clone(), 1, vec![Matrix::scalar(f, 1, 2)], Limits::default())
            .unwrap()
            .with_abstract(4, vec![Permutation::from_cycles(4, "(0 1 2 3)").unwrap()])
            .unwrap();
        let r = check_hypotheses(&g, &pi("2"), Mode::Lenient).unwrap();
        assert!(!r.faithful);
        assert!(!r.eligible);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("Strict".parse::<Mode>().unwrap(), Mode::Strict);
        assert_eq!(Mode::Lenient.to_string(), "lenient");
        assert!("loose".parse::<Mode>().is_err());
    }
}
