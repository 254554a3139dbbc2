//! Unavoidable-set certificates: file format, verification and a grid
//! falsifier.

pub mod falsify;
pub mod figures;
pub mod format;
pub mod layout;
pub mod verify;

pub use falsify::{falsify, FalsificationResult, Grid, Witness};
pub use format::{
    certificate_file_to_json, load_certificate_file, parse_certificate_file, Certificate, CertificateFile, Color,
    ConfigPoint, Configuration,
};
pub use verify::{count_bound, verify_certificate, verify_file, CertificateReport, CountBound, RegionReport};
