//! Check suites shared by the `brown` binary and its acceptance tests.

pub mod suite;
