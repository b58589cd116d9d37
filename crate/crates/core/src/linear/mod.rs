//! Matrix groups over finite fields acting on `V`, verified through their
//! permutation images on the points of `V`.

mod group;
mod hypotheses;
mod matrix;
mod socle;
mod space;

pub use group::{MatrixGroup, PermImage};
pub use hypotheses::{check_hypotheses, check_hypotheses_with, HypothesisReport, Mode};
pub use matrix::Matrix;
pub use socle::{socle_and_complete_reducibility, SocleReport};
pub use space::{Component, ModuleSpace, Vector};
