//! Dense-array numeric core: 2-D tensors, a reverse-mode autodiff tape, an
//! adaptive-moment optimizer, and a finite-difference gradient checker.
//!
//! Training tensors are `f32`; gradient checking instantiates the same
//! generic code at `f64`, where the 1e-4 finite-difference tolerance is
//! actually reachable.

pub mod gradcheck;
pub mod graph;
pub mod optim;
pub mod tensor;

pub use gradcheck::{check_gradients, GradCheckReport};
pub use graph::{Gradients, Graph, NodeId};
pub use optim::{cosine_lr, AdamParams, AdamState};
pub use tensor::{Dtype, Scalar, Tensor};

use std::collections::BTreeMap;

/// Named parameter set, ordered by name for deterministic iteration.
pub type ParamMap<T> = BTreeMap<String, Tensor<T>>;
