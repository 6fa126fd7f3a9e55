//! Adaptive-moment optimizer with bias correction and a cosine learning-rate
//! schedule.

use super::tensor::{Scalar, Tensor};
use super::ParamMap;
use crate::error::{Error, Result};

/// Moment-decay hyperparameters.
#[derive(Debug, Clone)]
pub struct AdamParams {
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl Default for AdamParams {
    fn default() -> Self {
        Self {
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

/// First/second moment accumulators plus step count.
pub struct AdamState<T: Scalar> {
    pub hyper: AdamParams,
    m: ParamMap<T>,
    v: ParamMap<T>,
    step: u64,
}

impl<T: Scalar> AdamState<T> {
    pub fn new(hyper: AdamParams) -> Self {
        Self {
            hyper,
            m: ParamMap::new(),
            v: ParamMap::new(),
            step: 0,
        }
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }

    /// One update over every parameter with a matching gradient.
    ///
    /// Parameters without a gradient entry are left untouched; accumulator
    /// shapes are created lazily and must keep matching their parameter.
    pub fn step(&mut self, params: &mut ParamMap<T>, grads: &ParamMap<T>, lr: f64) -> Result<()> {
        self.step += 1;
        let t = self.step as i32;
        let b1 = T::from_f64_c(self.hyper.beta1);
        let b2 = T::from_f64_c(self.hyper.beta2);
        let eps = T::from_f64_c(self.hyper.eps);
        let one = T::one();
        let bias1 = one - b1.powi(t);
        let bias2 = one - b2.powi(t);
        let lr_t = T::from_f64_c(lr);

        for (name, p) in params.iter_mut() {
            let Some(g) = grads.get(name) else { continue };
            if g.shape() != p.shape() {
                return Err(Error::ShapeMismatch(format!(
                    "gradient for {name}: {:?} vs parameter {:?}",
                    g.shape(),
                    p.shape()
                )));
            }
            let m = self
                .m
                .entry(name.clone())
                .or_insert_with(|| Tensor::zeros(p.rows(), p.cols()));
            let v = self
                .v
                .entry(name.clone())
                .or_insert_with(|| Tensor::zeros(p.rows(), p.cols()));
            for ((pv, gv), (mv, vv)) in p
                .data_mut()
                .iter_mut()
                .zip(g.data())
                .zip(m.data_mut().iter_mut().zip(v.data_mut().iter_mut()))
            {
                *mv = b1 * *mv + (one - b1) * *gv;
                *vv = b2 * *vv + (one - b2) * *gv * *gv;
                let m_hat = *mv / bias1;
                let v_hat = *vv / bias2;
                *pv = *pv - lr_t * m_hat / (v_hat.sqrt() + eps);
            }
        }
        Ok(())
    }
}

/// Cosine annealing from `lr_start` to `lr_end` over `total` steps.
///
/// `step = 0` returns `lr_start`; `step >= total` returns exactly `lr_end`.
pub fn cosine_lr(lr_start: f64, lr_end: f64, step: usize, total: usize) -> f64 {
    if total == 0 || step >= total {
        return lr_end;
    }
    let progress = step as f64 / total as f64;
    lr_end + 0.5 * (lr_start - lr_end) * (1.0 + (std::f64::consts::PI * progress).cos())
}
