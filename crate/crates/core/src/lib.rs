//! Desk-scale federated learning with semi-supervised knowledge distillation.
//!
//! The crate is organized around the lifecycle of a multi-hospital training
//! consortium run on synthetic data:
//!
//! - [`nn`] — a small deterministic feed-forward model with a shared backbone,
//!   per-task heads, deep supervision, the combined cross-entropy + Dice loss,
//!   and an AdamW optimizer with segment freezing.
//! - [`data`] — synthetic cohort generation (heterogeneous clients, partial
//!   labels, unlabeled pools), CT-style intensity normalization, landmark
//!   heatmap encoding/decoding, and the on-disk shard format.
//! - [`fed`] — round orchestration: participant selection, local training with
//!   an optional proximal term, sample-weighted averaging, evaluation.
//! - [`transport`] — the hub-and-spoke wire protocol: length-prefixed frames,
//!   challenge-response authentication, client polling, and an in-process
//!   loopback with the same semantics.
//! - [`pipeline`] — the three-stage pipeline: federated per-task teachers,
//!   pseudo-labeling of unlabeled shards, multi-head student distillation,
//!   head-only finetuning, and last-layer downstream transfer.
//! - [`qa`] — privacy-preserving label quality analysis from landmark
//!   geometry alone: 120° hinge registration, the RCC–NCC frame, swap and
//!   outlier detection, inter-observer statistics.

pub mod data;
pub mod error;
pub mod fed;
pub mod nn;
pub mod pipeline;
pub mod qa;
pub mod rng;
pub mod tensor;
pub mod transport;

pub use error::{Error, Result};
