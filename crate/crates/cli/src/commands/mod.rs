pub mod features;
pub mod fit;
pub mod ingest;
pub mod pipeline;
pub mod report;
pub mod score;
pub mod simulate;
pub mod vol;
