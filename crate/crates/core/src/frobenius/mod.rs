//! Frobenius powers, closure verdicts, Hilbert-Kunz tables and truncated
//! test ideals.

mod candidate;
mod checks;
mod hk;
mod power;
mod strategy;
mod tau;
mod verdict;

pub use candidate::{tight_closure_candidate, CandidateEntry, ClosureCandidate};
pub use checks::{
    f_injectivity_check, f_rationality_check, regular_sequence_failure, strong_test_ideal_check, test_exponent_search,
    TestExponentSearch,
};
pub(crate) use checks::gb_text;
pub use hk::{hilbert_kunz, HkRow, HkRowText, HkTable};
pub(crate) use hk::ratio;
pub use power::{frobenius_power, FrobeniusExponent};
pub use strategy::{is_nonzerodivisor, TestElement, TestElementStrategy, DEFAULT_TEST_POWER};
pub use tau::{check_gorenstein_sop, tau_truncated, truncation, TauLevel, TauLevelText, TauTruncation};
pub use verdict::{
    frobenius_closure_test, tight_closure_test, CertificateSummary, ClosureVerdict, EvidenceRow, Provenance,
    TestExponentCertificate, Verdict,
};

/// Default `emax`: `q <= p^3`.
pub const DEFAULT_EMAX: u32 = 3;
