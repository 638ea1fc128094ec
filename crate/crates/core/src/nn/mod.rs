//! Deterministic feed-forward model with a shared backbone and per-task heads.
//!
//! The backbone is a stack of fully connected layers over a flattened grid.
//! Each task owns a head (a linear map from the last backbone layer to a
//! per-cell channel map) plus one auxiliary head per deep-supervision tap,
//! emitting coarser maps used against average-pooled targets. Parameters live
//! in a flat f32 vector with an ordered segment table, which is the unit
//! exchanged in federation; all internal math runs in f64.

mod arch;
mod gradcheck;
mod loss;
mod model;
mod optim;
mod params;

pub use arch::{Activation, Layout, ModelArch, ParamKind, Segment, SegmentId, SegmentOwner, TaskKind};
pub use gradcheck::gradient_check;
pub use loss::{combined_loss, soft_dice, LossConfig, OutputGrads};
pub use model::{batch_loss_and_grad, forward, loss_and_grad_full, Outputs};
pub use optim::{adamw_step, FreezeMask, OptimizerState};
pub use params::{init_params, ParamVector};
