//! Verification harness around `gerst-core`: an interchange file format,
//! exhaustive and randomized instance generators, reproducible search
//! campaigns, and plain-text renderings.
//!
//! Campaigns are pure functions of their configuration. Every instance a
//! campaign visits derives from `(seed, cursor)` alone, so runs can be
//! replayed, resumed at any cursor, and distributed over worker threads
//! without changing a byte of the output log. The `parallel` feature
//! (enabled by default) fans campaigns out over a rayon thread pool; without
//! it everything runs sequentially through the same code path.

pub mod campaign;
pub mod enumerate;
pub mod format;
pub mod gen;
pub mod render;

pub use campaign::{run_campaign, CampaignConfig, CampaignError, CampaignOutput, Mode};
pub use enumerate::{enumerate_compatible_plans, PlanBounds};
pub use format::{FormatError, Instance, InstanceRecord, Provenance, Results};
pub use gen::{
    derive_seed, random_compatible_plan, random_floor_plan, random_gluing, random_point_gluing,
    random_scaffolded_tower, GluingBounds,
};
pub use render::{RenderError, RenderFormat};
