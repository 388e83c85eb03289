//! Reverse-mode automatic differentiation over dense f64 tensors.
//!
//! A [`Tensor`] is a flat row-major buffer plus a shape. When an op runs
//! under a recording [`Ctx`], the result is bound to a node on the active
//! [`Tape`]; [`Tape::backward`] replays the recorded closures in reverse
//! to accumulate gradients for requested leaves.
//!
//! Everything is f64 and single-threaded: the point is exact, reproducible
//! gradients (checked against finite differences), not throughput.

mod ops;
mod tape;

pub use ops::Ctx;
pub use tape::{Gradients, NodeId, Tape};

use std::sync::Arc;

use crate::error::{Error, Result};

/// Dense multi-dimensional f64 array. `shape == []` is a scalar.
///
/// The buffer is behind an `Arc`, so clones are cheap and backward closures
/// can capture operand data without copying. Mutation (`data_mut`) is
/// copy-on-write.
#[derive(Clone, Debug)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Arc<Vec<f64>>,
    node: Option<NodeId>,
}

impl Tensor {
    pub fn from_vec(shape: Vec<usize>, data: Vec<f64>) -> Result<Tensor> {
        if shape.iter().any(|&d| d == 0) {
            return Err(Error::shape("from_vec", format!("zero dimension in {shape:?}")));
        }
        let numel: usize = shape.iter().product();
        if numel != data.len() {
            return Err(Error::shape(
                "from_vec",
                format!("shape {shape:?} wants {numel} elements, got {}", data.len()),
            ));
        }
        Ok(Tensor { shape, data: Arc::new(data), node: None })
    }

    pub fn scalar(v: f64) -> Tensor {
        Tensor { shape: vec![], data: Arc::new(vec![v]), node: None }
    }

    pub fn zeros(shape: &[usize]) -> Tensor {
        Tensor::full(shape, 0.0)
    }

    pub fn full(shape: &[usize], v: f64) -> Tensor {
        let numel: usize = shape.iter().product();
        Tensor { shape: shape.to_vec(), data: Arc::new(vec![v; numel]), node: None }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Copy-on-write access to the buffer. Detaches from any tape node:
    /// mutated values no longer correspond to what the tape recorded.
    pub fn data_mut(&mut self) -> &mut Vec<f64> {
        self.node = None;
        Arc::make_mut(&mut self.data)
    }

    /// The value of a single-element tensor.
    pub fn item(&self) -> f64 {
        assert_eq!(self.len(), 1, "item() on tensor of {} elements", self.len());
        self.data[0]
    }

    /// Element at a full multi-index (row-major). Test/oracle convenience.
    pub fn at(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.rank());
        let mut flat = 0;
        for (i, (&ix, &d)) in idx.iter().zip(&self.shape).enumerate() {
            assert!(ix < d, "index {ix} out of bounds for dim {i} of size {d}");
            flat = flat * d + ix;
        }
        self.data[flat]
    }

    pub fn node(&self) -> Option<NodeId> {
        self.node
    }

    /// Same data, no tape binding.
    pub fn detach(&self) -> Tensor {
        Tensor { shape: self.shape.clone(), data: Arc::clone(&self.data), node: None }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Shape and every bit pattern equal. Used by determinism tests.
    pub fn bits_eq(&self, other: &Tensor) -> bool {
        self.shape == other.shape
            && self
                .data
                .iter()
                .zip(other.data.iter())
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }

    pub(crate) fn data_arc(&self) -> Arc<Vec<f64>> {
        Arc::clone(&self.data)
    }

    pub(crate) fn with_node(mut self, node: NodeId) -> Tensor {
        self.node = Some(node);
        self
    }

    pub(crate) fn from_parts(shape: Vec<usize>, data: Vec<f64>) -> Tensor {
        debug_assert_eq!(shape.iter().product::<usize>(), data.len());
        Tensor { shape, data: Arc::new(data), node: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_vec_checks_numel() {
        assert!(Tensor::from_vec(vec![2, 3], vec![0.0; 6]).is_ok());
        assert!(Tensor::from_vec(vec![2, 3], vec![0.0; 5]).is_err());
        assert!(Tensor::from_vec(vec![2, 0], vec![]).is_err());
    }

    #[test]
    fn scalar_has_empty_shape() {
        let s = Tensor::scalar(3.5);
        assert_eq!(s.shape(), &[] as &[usize]);
        assert_eq!(s.len(), 1);
        assert_eq!(s.item(), 3.5);
    }

    #[test]
    fn at_indexes_row_major() {
        let t = Tensor::from_vec(vec![2, 3], (0..6).map(|i| i as f64).collect()).unwrap();
        assert_eq!(t.at(&[0, 0]), 0.0);
        assert_eq!(t.at(&[0, 2]), 2.0);
        assert_eq!(t.at(&[1, 0]), 3.0);
    }

    #[test]
    fn data_mut_is_copy_on_write() {
        let a = Tensor::from_vec(vec![2], vec![1.0, 2.0]).unwrap();
        let mut b = a.clone();
        b.data_mut()[0] = 9.0;
        assert_eq!(a.data(), &[1.0, 2.0]);
        assert_eq!(b.data(), &[9.0, 2.0]);
    }
}
