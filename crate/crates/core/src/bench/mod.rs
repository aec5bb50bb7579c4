pub mod experiment;
pub mod ingest;
pub mod report;
pub mod sample;
pub mod synthetic;
