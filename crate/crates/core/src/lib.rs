//! Minimal additive complements of eventually periodic integer sets.
//!
//! A set `C` is a minimal complement to `W` if `C + W = Z` and no proper
//! subset of `C` has this property. For `W` eventually periodic and bounded
//! below, existence reduces to finite residue conditions on a subset
//! `C ⊆ Z/TZ`. This crate provides:
//!
//! * [`sets`]: raw and canonical descriptions of such sets;
//! * [`criteria`]: the residue conditions, certificate search and [`decide`];
//! * [`witness`]: explicit windows of a minimal complement built from a
//!   certificate, with coverage and minimality verification;
//! * [`thm4`]: an inductive construction of a non-eventually-periodic set
//!   with gaps in `{1, 2}` that has a minimal complement;
//! * [`oracle`]: slow reference implementations for cross-checking;
//! * [`format`] and [`record`]: the text/JSON file formats used by the CLI.

pub mod criteria;
pub mod error;
pub mod format;
pub mod oracle;
pub mod record;
pub mod residue;
mod search;
pub mod sets;
mod stopwatch;
pub mod thm4;
pub mod witness;

pub use criteria::{
    check_singleton, cond_a, cond_b_necessary, cond_b_sufficient, decide, find_certificate,
    Certificate, ConditionContext, Outcome, Reason, SearchConfig, Variant, Verdict,
};
pub use error::{CriteriaError, FormatError, SetError, Thm4Error, WitnessError};
pub use format::{parse_set, write_canonical, write_raw, Resolved, SetInput};
pub use oracle::{naive_find_certificate, verify_complement_window, window_sumset, WindowSet};
pub use residue::ResidueSubset;
pub use sets::{canonicalize, reflect, CanonicalSet, Margins, Orientation, RawSet};
pub use thm4::{
    thm4_generate, thm4_init, thm4_resume, thm4_step, thm4_verify, SlackSpec, Thm4Report, Thm4State,
};
pub use witness::{build_witness, verify_coverage, verify_local_minimality, WitnessWindow};
