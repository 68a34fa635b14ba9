//! Eigenvalue multisets.

/// Ascending eigenvalues, with grouping into `(value, multiplicity)` pairs on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMultiset {
    values: Vec<f64>,
}

impl SpectrumMultiset {
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn multiplicity_near(&self, target: f64, tol: f64) -> usize {
        self.values.iter().filter(|v| (*v - target).abs() <= tol).count()
    }

    /// Consecutive values closer than `tol` (relative to `max(1, |v|)`) share a group.
    pub fn grouped(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for &v in &self.values {
            match out.last_mut() {
                Some((head, count, sum)) if (v - *head).abs() <= tol * head.abs().max(1.0) => {
                    *count += 1;
                    *sum += v;
                }
                _ => out.push((v, 1, v)),
            }
        }
        out.into_iter()
            .map(|(_, count, sum)| (sum / count as f64, count))
            .collect()
    }

    /// Largest entrywise gap between two sorted spectra; `None` on length mismatch.
    pub fn max_abs_diff(&self, other: &[f64]) -> Option<f64> {
        if self.values.len() != other.len() {
            return None;
        }
        let mut other = other.to_vec();
        other.sort_by(f64::total_cmp);
        Some(
            self.values
                .iter()
                .zip(&other)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        )
    }

    pub fn shifted(&self, by: f64) -> Self {
        Self::from_values(self.values.iter().map(|v| v + by).collect())
    }
}
