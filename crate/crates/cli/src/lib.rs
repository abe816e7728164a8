//! Command line front end and JSON service for `cpos-core`.

pub mod app;
pub mod server;
