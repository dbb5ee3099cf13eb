//! Scenario loading, pipelines, and serializers behind the `conemorse`
//! binary, exposed as a library so the command logic is testable without
//! spawning processes.

pub mod pipeline;
pub mod render;
pub mod report;
pub mod scenario;

pub use pipeline::{
    enumerate, flow_batch, morse_pipeline, FlowBatch, MorsePipelineOutput, PipelineError,
    SampleRow,
};
pub use render::develop_svg;
pub use scenario::{parse_scenario, Scenario, ScenarioError};
