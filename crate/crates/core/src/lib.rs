pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod qm;
pub mod factor;
pub mod metrics;
pub mod pipeline;
pub mod verify;
