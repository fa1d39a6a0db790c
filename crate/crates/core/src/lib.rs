//! Multi-level cubic Bézier motion representation.
//!
//! The crate fits a smooth cubic Bézier chain through every joint of a
//! motion-capture trajectory (one anchor per frame, solved as a tridiagonal
//! system per axis), degrades the chain to coarser temporal resolutions
//! while preserving the motion trend (anchor subsampling plus closed-form
//! least-squares control lengths along reused tangents), and packs the
//! hierarchy into `M x K x 9` levels. It also provides the curve resampling
//! and block-causal token mask used by downstream sequence models, synthetic
//! fixtures with frame-drop policies, and the standard motion metrics.
//!
//! The `motioncurve` CLI in this workspace chains the operations:
//! synth, fit, degrade, resample, bridge, eval, and analyze.

pub mod analysis;
pub mod degradation;
pub mod error;
pub mod fitting;
pub mod geometry;
pub mod io;
pub mod metrics;
pub mod reconstruction;
pub mod synth;

pub use degradation::{
    build_multilevel, degrade_chain, extract_unit_tangent, fit_segment_lengths,
    multilevel_from_finest, pack_level, select_anchor_indices, unpack_level, AnchorTangent,
    MotionLevel, MultiLevelMotion, Schedule, SegmentLengths,
};
pub use error::{Error, Result};
pub use fitting::{fit_smooth_chain, fit_trajectory, solve_tridiagonal, Trajectory, TridiagonalSystem};
pub use geometry::{
    eval_chain, eval_chain_derivative, eval_segment, eval_segment_derivative, segment_of_time,
    BezierChain, CubicSegment, Vec3,
};
pub use metrics::{accel_error, mpjpe, representation_loss, rmse, MetricReport};
pub use reconstruction::{
    bridge_gaps, build_block_causal_mask, resample_level, AttentionMask, TokenKind, TokenSpan,
};
pub use synth::{add_noise, gen_trajectory, make_frame_mask, FrameMask, MaskPolicy, MotionKind, SynthSpec};
