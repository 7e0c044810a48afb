//! Front-end pieces of the `serex` binary: the matroid file format, report
//! shapes, and the command implementations. Split out as a library so the
//! integration and acceptance suites can drive commands in-process.

pub mod format;
pub mod report;
pub mod run;
