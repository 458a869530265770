//! Command-line front end for coxlab: setup records, commands, and reports.

pub mod commands;
pub mod record;
pub mod report;

pub use commands::{construct, multiplicity, star_search, table_m, verify_all, VerifyOptions};
pub use record::{load_records, parse_records, RecordError, SetupRecord};
pub use report::{ExitStatus, Format, Report, SCHEMA};
