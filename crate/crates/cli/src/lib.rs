//! Library surface of the command-line frontend, exposed so integration
//! and acceptance tests can drive the full pipeline in-process.

pub mod corpus;
pub mod pipeline;
pub mod report;
