//! Reverse-mode autodiff tape over dense 2-D tensors.
//!
//! Nodes are recorded eagerly in construction order, which is already a
//! topological order; the backward pass visits them strictly in reverse, so
//! gradients are bitwise deterministic for a fixed graph. No op mutates its
//! inputs.

use super::tensor::{Scalar, Tensor};
use crate::error::{Error, Result};

/// Handle to a node in a [`Graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeId(pub(crate) usize);

#[derive(Debug, Clone)]
enum Op<T: Scalar> {
    Leaf,
    Matmul,
    Add,
    Sub,
    Mul,
    /// (m,n) + broadcast (1,n)
    RowAdd,
    /// (m,n) * broadcast (1,n)
    RowMul,
    Scale(T),
    AddConst(T),
    Tanh,
    Gelu,
    Softmax,
    /// inputs: x, gamma (1,n), beta (1,n); normalizes the last axis.
    LayerNorm,
    /// inputs: a, b; output (1,1) mean squared error.
    Mse,
    Transpose,
    NarrowCols {
        start: usize,
        len: usize,
    },
    ConcatCols,
    ConcatRows,
}

#[derive(Debug, Clone)]
enum Aux<T> {
    None,
    /// Saved normalized activations and per-row 1/std for layer norm.
    LayerNorm { xhat: Vec<T>, inv_std: Vec<T> },
}

struct Node<T: Scalar> {
    op: Op<T>,
    inputs: Vec<NodeId>,
    value: Tensor<T>,
    aux: Aux<T>,
    needs_grad: bool,
}

/// Autodiff tape. Values are computed eagerly as nodes are added.
pub struct Graph<T: Scalar> {
    nodes: Vec<Node<T>>,
}

/// Per-node gradients produced by [`Graph::backward`].
pub struct Gradients<T> {
    by_node: Vec<Option<Tensor<T>>>,
}

impl<T: Scalar> Gradients<T> {
    pub fn get(&self, id: NodeId) -> Option<&Tensor<T>> {
        self.by_node[id.0].as_ref()
    }

    /// Gradient for a node, or zeros of the given shape if the node was
    /// unreachable from the loss.
    pub fn get_or_zeros(&self, id: NodeId, rows: usize, cols: usize) -> Tensor<T> {
        match &self.by_node[id.0] {
            Some(g) => g.clone(),
            None => Tensor::zeros(rows, cols),
        }
    }
}

impl<T: Scalar> Default for Graph<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> Graph<T> {
    pub fn new() -> Self {
        Self { nodes: Vec::new() }
    }

    pub fn with_capacity(n: usize) -> Self {
        Self {
            nodes: Vec::with_capacity(n),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn value(&self, id: NodeId) -> &Tensor<T> {
        &self.nodes[id.0].value
    }

    fn push(&mut self, op: Op<T>, inputs: Vec<NodeId>, value: Tensor<T>, aux: Aux<T>) -> NodeId {
        let needs_grad = match op {
            Op::Leaf => false,
            _ => inputs.iter().any(|i| self.nodes[i.0].needs_grad),
        };
        self.nodes.push(Node {
            op,
            inputs,
            value,
            aux,
            needs_grad,
        });
        NodeId(self.nodes.len() - 1)
    }

    /// Leaf that never receives a gradient (data, targets).
    pub fn constant(&mut self, value: Tensor<T>) -> NodeId {
        self.push(Op::Leaf, vec![], value, Aux::None)
    }

    /// Leaf that participates in differentiation.
    pub fn param(&mut self, value: Tensor<T>) -> NodeId {
        let id = self.push(Op::Leaf, vec![], value, Aux::None);
        self.nodes[id.0].needs_grad = true;
        id
    }

    fn shape(&self, id: NodeId) -> [usize; 2] {
        self.nodes[id.0].value.shape()
    }

    pub fn matmul(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        let [m, k] = self.shape(a);
        let [k2, n] = self.shape(b);
        if k != k2 {
            return Err(Error::ShapeMismatch(format!(
                "matmul {m}x{k} by {k2}x{n}"
            )));
        }
        let value = matmul_nn(self.value(a), self.value(b));
        Ok(self.push(Op::Matmul, vec![a, b], value, Aux::None))
    }

    fn binary_same_shape(&mut self, op: Op<T>, a: NodeId, b: NodeId) -> Result<NodeId> {
        if self.shape(a) != self.shape(b) {
            return Err(Error::ShapeMismatch(format!(
                "elementwise op on {:?} vs {:?}",
                self.shape(a),
                self.shape(b)
            )));
        }
        let (va, vb) = (self.value(a), self.value(b));
        let data = match op {
            Op::Add => va.data().iter().zip(vb.data()).map(|(&x, &y)| x + y).collect(),
            Op::Sub => va.data().iter().zip(vb.data()).map(|(&x, &y)| x - y).collect(),
            Op::Mul => va.data().iter().zip(vb.data()).map(|(&x, &y)| x * y).collect(),
            _ => unreachable!(),
        };
        let value = Tensor::from_vec(data, va.rows(), va.cols())?;
        Ok(self.push(op, vec![a, b], value, Aux::None))
    }

    pub fn add(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        self.binary_same_shape(Op::Add, a, b)
    }

    pub fn sub(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        self.binary_same_shape(Op::Sub, a, b)
    }

    pub fn mul(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        self.binary_same_shape(Op::Mul, a, b)
    }

    fn row_broadcast(&mut self, op: Op<T>, a: NodeId, v: NodeId) -> Result<NodeId> {
        let [m, n] = self.shape(a);
        let [vr, vn] = self.shape(v);
        if vr != 1 || vn != n {
            return Err(Error::ShapeMismatch(format!(
                "row broadcast needs (1,{n}), got ({vr},{vn})"
            )));
        }
        let va = self.value(a);
        let vv = self.value(v);
        let mut out = Tensor::zeros(m, n);
        for r in 0..m {
            let src = va.row_slice(r);
            let dst = &mut out.data_mut()[r * n..(r + 1) * n];
            match op {
                Op::RowAdd => {
                    for j in 0..n {
                        dst[j] = src[j] + vv.data()[j];
                    }
                }
                Op::RowMul => {
                    for j in 0..n {
                        dst[j] = src[j] * vv.data()[j];
                    }
                }
                _ => unreachable!(),
            }
        }
        Ok(self.push(op, vec![a, v], out, Aux::None))
    }

    /// Broadcast-add a row vector to every row.
    pub fn row_add(&mut self, a: NodeId, v: NodeId) -> Result<NodeId> {
        self.row_broadcast(Op::RowAdd, a, v)
    }

    /// Broadcast-multiply every row by a row vector.
    pub fn row_mul(&mut self, a: NodeId, v: NodeId) -> Result<NodeId> {
        self.row_broadcast(Op::RowMul, a, v)
    }

    pub fn scale(&mut self, a: NodeId, c: T) -> NodeId {
        let value = self.value(a).map(|x| x * c);
        self.push(Op::Scale(c), vec![a], value, Aux::None)
    }

    pub fn add_const(&mut self, a: NodeId, c: T) -> NodeId {
        let value = self.value(a).map(|x| x + c);
        self.push(Op::AddConst(c), vec![a], value, Aux::None)
    }

    pub fn tanh(&mut self, a: NodeId) -> NodeId {
        let value = self.value(a).map(|x| x.tanh());
        self.push(Op::Tanh, vec![a], value, Aux::None)
    }

    pub fn gelu(&mut self, a: NodeId) -> NodeId {
        let value = self.value(a).map(gelu_forward);
        self.push(Op::Gelu, vec![a], value, Aux::None)
    }

    /// Numerically stable softmax over the last axis.
    pub fn softmax(&mut self, a: NodeId) -> NodeId {
        let va = self.value(a);
        let [m, n] = va.shape();
        let mut out = Tensor::zeros(m, n);
        for r in 0..m {
            let src = va.row_slice(r);
            let max = src.iter().cloned().fold(T::neg_infinity(), T::max);
            let dst = &mut out.data_mut()[r * n..(r + 1) * n];
            let mut sum = T::zero();
            for j in 0..n {
                let e = (src[j] - max).exp();
                dst[j] = e;
                sum += e;
            }
            for v in dst.iter_mut() {
                *v /= sum;
            }
        }
        self.push(Op::Softmax, vec![a], out, Aux::None)
    }

    /// Layer norm over the last axis with learnable scale/shift.
    pub fn layer_norm(&mut self, x: NodeId, gamma: NodeId, beta: NodeId) -> Result<NodeId> {
        let [m, n] = self.shape(x);
        for (name, id) in [("gamma", gamma), ("beta", beta)] {
            let [r, c] = self.shape(id);
            if r != 1 || c != n {
                return Err(Error::ShapeMismatch(format!(
                    "layer_norm {name} needs (1,{n}), got ({r},{c})"
                )));
            }
        }
        let eps = 1e-5;
        let vx = self.value(x);
        let vg = self.value(gamma);
        let vb = self.value(beta);
        let mut out = Tensor::zeros(m, n);
        let mut xhat = vec![T::zero(); m * n];
        let mut inv_std = vec![T::zero(); m];
        let inv_n = T::from_f64_c(1.0 / n as f64);
        for r in 0..m {
            let src = vx.row_slice(r);
            let mut mean = T::zero();
            for &v in src {
                mean += v;
            }
            mean *= inv_n;
            let mut var = T::zero();
            for &v in src {
                let d = v - mean;
                var += d * d;
            }
            var *= inv_n;
            let inv = (var + T::from_f64_c(eps)).sqrt().recip();
            inv_std[r] = inv;
            let dst = &mut out.data_mut()[r * n..(r + 1) * n];
            for j in 0..n {
                let h = (src[j] - mean) * inv;
                xhat[r * n + j] = h;
                dst[j] = h * vg.data()[j] + vb.data()[j];
            }
        }
        Ok(self.push(
            Op::LayerNorm,
            vec![x, gamma, beta],
            out,
            Aux::LayerNorm { xhat, inv_std },
        ))
    }

    /// Mean squared error over all entries, reduced to a 1x1 tensor.
    pub fn mse(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        if self.shape(a) != self.shape(b) {
            return Err(Error::ShapeMismatch(format!(
                "mse on {:?} vs {:?}",
                self.shape(a),
                self.shape(b)
            )));
        }
        let va = self.value(a);
        let vb = self.value(b);
        let inv_n = T::from_f64_c(1.0 / va.len() as f64);
        let mut acc = T::zero();
        for (&x, &y) in va.data().iter().zip(vb.data()) {
            let d = x - y;
            acc += d * d;
        }
        let value = Tensor::scalar(acc * inv_n);
        Ok(self.push(Op::Mse, vec![a, b], value, Aux::None))
    }

    pub fn transpose(&mut self, a: NodeId) -> NodeId {
        let va = self.value(a);
        let [m, n] = va.shape();
        let mut out = Tensor::zeros(n, m);
        for r in 0..m {
            for c in 0..n {
                out.set(c, r, va.at(r, c));
            }
        }
        self.push(Op::Transpose, vec![a], out, Aux::None)
    }

    /// Column slice [start, start+len).
    pub fn narrow_cols(&mut self, a: NodeId, start: usize, len: usize) -> Result<NodeId> {
        let [m, n] = self.shape(a);
        if start + len > n {
            return Err(Error::ShapeMismatch(format!(
                "narrow_cols [{start}, {}) of {n} columns",
                start + len
            )));
        }
        let va = self.value(a);
        let mut out = Tensor::zeros(m, len);
        for r in 0..m {
            let src = &va.row_slice(r)[start..start + len];
            out.data_mut()[r * len..(r + 1) * len].copy_from_slice(src);
        }
        Ok(self.push(Op::NarrowCols { start, len }, vec![a], out, Aux::None))
    }

    pub fn concat_cols(&mut self, parts: &[NodeId]) -> Result<NodeId> {
        if parts.is_empty() {
            return Err(Error::ShapeMismatch("concat_cols of zero tensors".into()));
        }
        let m = self.shape(parts[0])[0];
        let mut total = 0;
        for &p in parts {
            let [r, c] = self.shape(p);
            if r != m {
                return Err(Error::ShapeMismatch(format!(
                    "concat_cols row mismatch {r} vs {m}"
                )));
            }
            total += c;
        }
        let mut out = Tensor::zeros(m, total);
        let mut offset = 0;
        for &p in parts {
            let v = self.value(p).clone();
            let c = v.cols();
            for r in 0..m {
                out.data_mut()[r * total + offset..r * total + offset + c]
                    .copy_from_slice(v.row_slice(r));
            }
            offset += c;
        }
        Ok(self.push(Op::ConcatCols, parts.to_vec(), out, Aux::None))
    }

    pub fn concat_rows(&mut self, parts: &[NodeId]) -> Result<NodeId> {
        if parts.is_empty() {
            return Err(Error::ShapeMismatch("concat_rows of zero tensors".into()));
        }
        let n = self.shape(parts[0])[1];
        let mut total = 0;
        for &p in parts {
            let [r, c] = self.shape(p);
            if c != n {
                return Err(Error::ShapeMismatch(format!(
                    "concat_rows col mismatch {c} vs {n}"
                )));
            }
            total += r;
        }
        let mut out = Tensor::zeros(total, n);
        let mut offset = 0;
        for &p in parts {
            let v = self.value(p);
            out.data_mut()[offset * n..(offset + v.rows()) * n].copy_from_slice(v.data());
            offset += v.rows();
        }
        Ok(self.push(Op::ConcatRows, parts.to_vec(), out, Aux::None))
    }

    /// Reverse-mode backward pass from a scalar loss node.
    pub fn backward(&self, loss: NodeId) -> Result<Gradients<T>> {
        let [lr, lc] = self.shape(loss);
        if lr != 1 || lc != 1 {
            return Err(Error::ShapeMismatch(format!(
                "backward needs a scalar loss, got {lr}x{lc}"
            )));
        }
        let mut grads: Vec<Option<Tensor<T>>> = vec![None; self.nodes.len()];
        grads[loss.0] = Some(Tensor::scalar(T::one()));

        for idx in (0..=loss.0).rev() {
            let node = &self.nodes[idx];
            if !node.needs_grad {
                continue;
            }
            let Some(gout) = grads[idx].take() else {
                continue;
            };
            self.accumulate_input_grads(idx, &gout, &mut grads);
            // Leaves keep their gradient for extraction.
            if matches!(node.op, Op::Leaf) {
                grads[idx] = Some(gout);
            }
        }
        Ok(Gradients { by_node: grads })
    }

    fn accumulate_input_grads(
        &self,
        idx: usize,
        gout: &Tensor<T>,
        grads: &mut [Option<Tensor<T>>],
    ) {
        let node = &self.nodes[idx];
        let add_to = |grads: &mut [Option<Tensor<T>>], target: NodeId, g: Tensor<T>| {
            if !self.nodes[target.0].needs_grad {
                return;
            }
            match &mut grads[target.0] {
                Some(existing) => {
                    for (e, v) in existing.data_mut().iter_mut().zip(g.data()) {
                        *e += *v;
                    }
                }
                slot @ None => *slot = Some(g),
            }
        };

        match &node.op {
            Op::Leaf => {}
            Op::Matmul => {
                let a = self.value(node.inputs[0]);
                let b = self.value(node.inputs[1]);
                if self.nodes[node.inputs[0].0].needs_grad {
                    add_to(grads, node.inputs[0], matmul_nt(gout, b));
                }
                if self.nodes[node.inputs[1].0].needs_grad {
                    add_to(grads, node.inputs[1], matmul_tn(a, gout));
                }
            }
            Op::Add => {
                add_to(grads, node.inputs[0], gout.clone());
                add_to(grads, node.inputs[1], gout.clone());
            }
            Op::Sub => {
                add_to(grads, node.inputs[0], gout.clone());
                add_to(grads, node.inputs[1], gout.map(|v| -v));
            }
            Op::Mul => {
                let a = self.value(node.inputs[0]);
                let b = self.value(node.inputs[1]);
                let ga = Tensor::from_vec(
                    gout.data().iter().zip(b.data()).map(|(&g, &y)| g * y).collect(),
                    gout.rows(),
                    gout.cols(),
                )
                .unwrap();
                let gb = Tensor::from_vec(
                    gout.data().iter().zip(a.data()).map(|(&g, &x)| g * x).collect(),
                    gout.rows(),
                    gout.cols(),
                )
                .unwrap();
                add_to(grads, node.inputs[0], ga);
                add_to(grads, node.inputs[1], gb);
            }
            Op::RowAdd => {
                add_to(grads, node.inputs[0], gout.clone());
                add_to(grads, node.inputs[1], sum_rows(gout));
            }
            Op::RowMul => {
                let a = self.value(node.inputs[0]);
                let v = self.value(node.inputs[1]);
                let [m, n] = gout.shape();
                let mut ga = Tensor::zeros(m, n);
                let mut gv = Tensor::zeros(1, n);
                for r in 0..m {
                    for c in 0..n {
                        let g = gout.at(r, c);
                        ga.set(r, c, g * v.data()[c]);
                        gv.data_mut()[c] += g * a.at(r, c);
                    }
                }
                add_to(grads, node.inputs[0], ga);
                add_to(grads, node.inputs[1], gv);
            }
            Op::Scale(c) => {
                let c = *c;
                add_to(grads, node.inputs[0], gout.map(|v| v * c));
            }
            Op::AddConst(_) => {
                add_to(grads, node.inputs[0], gout.clone());
            }
            Op::Tanh => {
                let y = &node.value;
                let g = Tensor::from_vec(
                    gout.data()
                        .iter()
                        .zip(y.data())
                        .map(|(&g, &t)| g * (T::one() - t * t))
                        .collect(),
                    gout.rows(),
                    gout.cols(),
                )
                .unwrap();
                add_to(grads, node.inputs[0], g);
            }
            Op::Gelu => {
                let x = self.value(node.inputs[0]);
                let g = Tensor::from_vec(
                    gout.data()
                        .iter()
                        .zip(x.data())
                        .map(|(&g, &v)| g * gelu_backward(v))
                        .collect(),
                    gout.rows(),
                    gout.cols(),
                )
                .unwrap();
                add_to(grads, node.inputs[0], g);
            }
            Op::Softmax => {
                let y = &node.value;
                let [m, n] = y.shape();
                let mut gx = Tensor::zeros(m, n);
                for r in 0..m {
                    let yr = y.row_slice(r);
                    let gr = gout.row_slice(r);
                    let mut dot = T::zero();
                    for j in 0..n {
                        dot += gr[j] * yr[j];
                    }
                    let dst = &mut gx.data_mut()[r * n..(r + 1) * n];
                    for j in 0..n {
                        dst[j] = yr[j] * (gr[j] - dot);
                    }
                }
                add_to(grads, node.inputs[0], gx);
            }
            Op::LayerNorm => {
                let Aux::LayerNorm { xhat, inv_std } = &node.aux else {
                    unreachable!()
                };
                let gamma = self.value(node.inputs[1]);
                let [m, n] = node.value.shape();
                let inv_n = T::from_f64_c(1.0 / n as f64);
                let mut gx = Tensor::zeros(m, n);
                let mut ggamma = Tensor::zeros(1, n);
                let mut gbeta = Tensor::zeros(1, n);
                for r in 0..m {
                    let gr = gout.row_slice(r);
                    let hr = &xhat[r * n..(r + 1) * n];
                    let mut mean_dh = T::zero();
                    let mut mean_dh_h = T::zero();
                    for j in 0..n {
                        let dh = gr[j] * gamma.data()[j];
                        mean_dh += dh;
                        mean_dh_h += dh * hr[j];
                        ggamma.data_mut()[j] += gr[j] * hr[j];
                        gbeta.data_mut()[j] += gr[j];
                    }
                    mean_dh *= inv_n;
                    mean_dh_h *= inv_n;
                    let dst = &mut gx.data_mut()[r * n..(r + 1) * n];
                    for j in 0..n {
                        let dh = gr[j] * gamma.data()[j];
                        dst[j] = inv_std[r] * (dh - mean_dh - hr[j] * mean_dh_h);
                    }
                }
                add_to(grads, node.inputs[0], gx);
                add_to(grads, node.inputs[1], ggamma);
                add_to(grads, node.inputs[2], gbeta);
            }
            Op::Mse => {
                let a = self.value(node.inputs[0]);
                let b = self.value(node.inputs[1]);
                let g = gout.item();
                let coef = g * T::from_f64_c(2.0 / a.len() as f64);
                let ga = Tensor::from_vec(
                    a.data()
                        .iter()
                        .zip(b.data())
                        .map(|(&x, &y)| coef * (x - y))
                        .collect(),
                    a.rows(),
                    a.cols(),
                )
                .unwrap();
                let gb = ga.map(|v| -v);
                add_to(grads, node.inputs[0], ga);
                add_to(grads, node.inputs[1], gb);
            }
            Op::Transpose => {
                let [m, n] = gout.shape();
                let mut g = Tensor::zeros(n, m);
                for r in 0..m {
                    for c in 0..n {
                        g.set(c, r, gout.at(r, c));
                    }
                }
                add_to(grads, node.inputs[0], g);
            }
            Op::NarrowCols { start, len } => {
                let [m, n] = self.shape(node.inputs[0]);
                let mut g = Tensor::zeros(m, n);
                for r in 0..m {
                    let src = gout.row_slice(r);
                    g.data_mut()[r * n + start..r * n + start + len].copy_from_slice(src);
                }
                add_to(grads, node.inputs[0], g);
            }
            Op::ConcatCols => {
                let [m, _] = gout.shape();
                let mut offset = 0;
                for &p in &node.inputs {
                    let c = self.shape(p)[1];
                    if self.nodes[p.0].needs_grad {
                        let mut g = Tensor::zeros(m, c);
                        for r in 0..m {
                            let src = &gout.row_slice(r)[offset..offset + c];
                            g.data_mut()[r * c..(r + 1) * c].copy_from_slice(src);
                        }
                        add_to(grads, p, g);
                    }
                    offset += c;
                }
            }
            Op::ConcatRows => {
                let n = gout.cols();
                let mut offset = 0;
                for &p in &node.inputs {
                    let r = self.shape(p)[0];
                    if self.nodes[p.0].needs_grad {
                        let mut g = Tensor::zeros(r, n);
                        g.data_mut()
                            .copy_from_slice(&gout.data()[offset * n..(offset + r) * n]);
                        add_to(grads, p, g);
                    }
                    offset += r;
                }
            }
        }
    }
}

/// C = A * B.
fn matmul_nn<T: Scalar>(a: &Tensor<T>, b: &Tensor<T>) -> Tensor<T> {
    let [m, _k] = a.shape();
    let n = b.cols();
    let mut out = Tensor::zeros(m, n);
    for i in 0..m {
        let arow = a.row_slice(i);
        let orow = &mut out.data_mut()[i * n..(i + 1) * n];
        for (kk, &av) in arow.iter().enumerate() {
            let brow = &b.data()[kk * n..(kk + 1) * n];
            for j in 0..n {
                orow[j] += av * brow[j];
            }
        }
    }
    out
}

/// C = A * B^T (both row-major, cache-friendly dot products).
fn matmul_nt<T: Scalar>(a: &Tensor<T>, b: &Tensor<T>) -> Tensor<T> {
    let [m, k] = a.shape();
    let bn = b.rows();
    debug_assert_eq!(k, b.cols());
    let mut out = Tensor::zeros(m, bn);
    for i in 0..m {
        let arow = a.row_slice(i);
        for j in 0..bn {
            let brow = b.row_slice(j);
            let mut acc = T::zero();
            for kk in 0..k {
                acc += arow[kk] * brow[kk];
            }
            out.set(i, j, acc);
        }
    }
    out
}

/// C = A^T * B.
fn matmul_tn<T: Scalar>(a: &Tensor<T>, b: &Tensor<T>) -> Tensor<T> {
    let [m, k] = a.shape();
    let n = b.cols();
    let mut out = Tensor::zeros(k, n);
    for i in 0..m {
        let arow = a.row_slice(i);
        let brow = b.row_slice(i);
        for (kk, &av) in arow.iter().enumerate() {
            let orow = &mut out.data_mut()[kk * n..(kk + 1) * n];
            for j in 0..n {
                orow[j] += av * brow[j];
            }
        }
    }
    out
}

fn sum_rows<T: Scalar>(t: &Tensor<T>) -> Tensor<T> {
    let [m, n] = t.shape();
    let mut out = Tensor::zeros(1, n);
    for r in 0..m {
        let src = t.row_slice(r);
        for j in 0..n {
            out.data_mut()[j] += src[j];
        }
    }
    out
}

/// Tanh approximation of GELU.
fn gelu_forward<T: Scalar>(x: T) -> T {
    let c = T::from_f64_c((2.0 / std::f64::consts::PI).sqrt());
    let k = T::from_f64_c(0.044715);
    let half = T::from_f64_c(0.5);
    let u = c * (x + k * x * x * x);
    half * x * (T::one() + u.tanh())
}

fn gelu_backward<T: Scalar>(x: T) -> T {
    let c = T::from_f64_c((2.0 / std::f64::consts::PI).sqrt());
    let k = T::from_f64_c(0.044715);
    let half = T::from_f64_c(0.5);
    let three = T::from_f64_c(3.0);
    let u = c * (x + k * x * x * x);
    let t = u.tanh();
    let du = c * (T::one() + three * k * x * x);
    half * (T::one() + t) + half * x * (T::one() - t * t) * du
}
