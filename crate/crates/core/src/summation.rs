//! Compensated (Neumaier) summation.
//!
//! The Matsubara sums accumulate 10⁴–10⁶ terms spanning many orders of
//! magnitude; naive summation loses digits and, worse, loses them
//! differently depending on chunking. All reductions in this crate go
//! through this accumulator in a fixed ascending order, which makes
//! results bit-identical across runs and thread counts.

/// Neumaier variant of Kahan summation: also compensates when the incoming
/// term is larger than the running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}
