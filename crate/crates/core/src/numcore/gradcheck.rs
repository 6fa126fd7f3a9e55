//! Central finite-difference gradient verification.
//!
//! The checker is the independent oracle for every analytic gradient in this
//! crate: it re-evaluates the loss with perturbed parameters and never touches
//! the backward pass.

use super::tensor::{Scalar, Tensor};
use super::ParamMap;
use rand::Rng;

/// Result of a finite-difference sweep.
#[derive(Debug, Clone)]
pub struct GradCheckReport {
    /// Largest relative error across sampled entries.
    pub max_rel_error: f64,
    /// (parameter name, flat index, analytic, numeric) for the worst entry.
    pub worst: Option<(String, usize, f64, f64)>,
    pub samples: usize,
}

impl GradCheckReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_rel_error < tol
    }
}

/// Compare analytic gradients against central differences on randomly
/// sampled parameter entries.
///
/// `loss_fn` must be a pure function of the parameter map. `h` is the
/// perturbation half-width (1e-5 is appropriate at f64).
pub fn check_gradients<T, F>(
    loss_fn: F,
    params: &ParamMap<T>,
    analytic: &ParamMap<T>,
    samples: usize,
    h: f64,
    rng: &mut impl Rng,
) -> GradCheckReport
where
    T: Scalar,
    F: Fn(&ParamMap<T>) -> f64,
{
    // Flat index space over all parameter entries, in name order.
    let layout: Vec<(String, usize)> = params
        .iter()
        .map(|(name, t)| (name.clone(), t.len()))
        .collect();
    let total: usize = layout.iter().map(|(_, n)| n).sum();
    assert!(total > 0, "empty parameter set");

    let mut report = GradCheckReport {
        max_rel_error: 0.0,
        worst: None,
        samples,
    };

    for _ in 0..samples {
        let flat = rng.gen_range(0..total);
        let (name, index) = locate(&layout, flat);

        let mut perturbed = clone_params(params);
        bump(&mut perturbed, &name, index, h);
        let up = loss_fn(&perturbed);
        bump(&mut perturbed, &name, index, -2.0 * h);
        let down = loss_fn(&perturbed);
        let numeric = (up - down) / (2.0 * h);

        let analytic_v = analytic
            .get(&name)
            .map(|t| t.data()[index].to_f64_c())
            .unwrap_or(0.0);
        let denom = analytic_v.abs().max(numeric.abs()).max(1e-8);
        let rel = (analytic_v - numeric).abs() / denom;
        if rel > report.max_rel_error {
            report.max_rel_error = rel;
            report.worst = Some((name.clone(), index, analytic_v, numeric));
        }
    }
    report
}

fn locate(layout: &[(String, usize)], mut flat: usize) -> (String, usize) {
    for (name, n) in layout {
        if flat < *n {
            return (name.clone(), flat);
        }
        flat -= n;
    }
    unreachable!("flat index out of range")
}

fn clone_params<T: Scalar>(params: &ParamMap<T>) -> ParamMap<T> {
    params
        .iter()
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect()
}

fn bump<T: Scalar>(params: &mut ParamMap<T>, name: &str, index: usize, delta: f64) {
    let t: &mut Tensor<T> = params.get_mut(name).expect("parameter exists");
    let v = t.data()[index];
    t.data_mut()[index] = v + T::from_f64_c(delta);
}
