use super::dictionary::{dot, Dictionary};
use crate::error::{domain, Result};

/// Output of [`omp`].
#[derive(Clone, Debug, PartialEq)]
pub struct SparseCoding {
    /// Atoms in selection order.
    pub indices: Vec<usize>,
    /// Least-squares weights, aligned with `indices`.
    pub coefficients: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
    /// Residual norm after each iteration.
    pub residual_history: Vec<f64>,
}

impl SparseCoding {
    pub fn reconstruct(&self, dict: &Dictionary) -> Vec<f64> {
        dict.synthesize(&self.indices, &self.coefficients)
    }
}

/// Lower-triangular Cholesky factor of the Gram matrix of the selected
/// atoms, grown one row at a time.
struct GramCholesky {
    rows: Vec<Vec<f64>>,
}

impl GramCholesky {
    fn forward(&self, rhs: &[f64]) -> Vec<f64> {
        let mut z = Vec::with_capacity(rhs.len());
        for (i, row) in self.rows.iter().enumerate() {
            let s: f64 = row[..i].iter().zip(&z).map(|(l, v)| l * v).sum();
            z.push((rhs[i] - s) / row[i]);
        }
        z
    }

    fn backward(&self, z: &[f64]) -> Vec<f64> {
        let n = z.len();
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|k| self.rows[k][i] * x[k]).sum();
            x[i] = (z[i] - s) / self.rows[i][i];
        }
        x
    }

    /// Adds an atom with cross products `cross` against the selected atoms
    /// and squared norm `norm2`. Returns false if it is numerically
    /// dependent on them.
    fn push(&mut self, cross: &[f64], norm2: f64) -> bool {
        let mut w = self.forward(cross);
        let d2 = norm2 - w.iter().map(|v| v * v).sum::<f64>();
        if d2 <= 1e-12 * norm2 {
            return false;
        }
        w.push(d2.sqrt());
        self.rows.push(w);
        true
    }
}

/// Orthogonal Matching Pursuit.
///
/// Each iteration picks the unselected atom with the largest absolute
/// correlation with the residual, re-fits all selected atoms by least
/// squares (Cholesky on the Gram matrix) and recomputes the residual. Stops
/// after `sparsity` atoms, when the residual norm is at most `tolerance`, or
/// when no atom correlates with the residual any more.
pub fn omp(
    signal: &[f64],
    dict: &Dictionary,
    sparsity: usize,
    tolerance: f64,
) -> Result<SparseCoding> {
    if signal.len() != dict.dim() {
        return Err(domain(format!(
            "signal has {} samples, dictionary dimension is {}",
            signal.len(),
            dict.dim()
        )));
    }
    if sparsity == 0 || sparsity > dict.len() {
        return Err(domain(format!(
            "sparsity must be in 1..={}, got {sparsity}",
            dict.len()
        )));
    }
    let signal_norm = dot(signal, signal).sqrt();
    let floor = 1e-12 * signal_norm.max(1.0);
    let mut residual = signal.to_vec();
    let mut residual_norm = signal_norm;
    let mut selected: Vec<usize> = Vec::with_capacity(sparsity);
    let mut is_selected = vec![false; dict.len()];
    let mut rhs: Vec<f64> = Vec::with_capacity(sparsity);
    let mut chol = GramCholesky {
        rows: Vec::with_capacity(sparsity),
    };
    let mut coefficients = Vec::new();
    let mut history = Vec::with_capacity(sparsity);

    while selected.len() < sparsity && residual_norm > tolerance {
        let corr = dict.correlate(&residual);
        let mut best: Option<(usize, f64)> = None;
        for (j, c) in corr.iter().enumerate() {
            if !is_selected[j] && best.is_none_or(|(_, b)| c.abs() > b) {
                best = Some((j, c.abs()));
            }
        }
        let Some((j, magnitude)) = best else { break };
        if magnitude <= floor {
            break;
        }
        let atom = dict.atom(j);
        let cross: Vec<f64> = selected.iter().map(|&s| dot(dict.atom(s), atom)).collect();
        if !chol.push(&cross, dot(atom, atom)) {
            break;
        }
        selected.push(j);
        is_selected[j] = true;
        rhs.push(dot(atom, signal));

        coefficients = chol.backward(&chol.forward(&rhs));
        residual.copy_from_slice(signal);
        for (&s, &c) in selected.iter().zip(&coefficients) {
            for (r, a) in residual.iter_mut().zip(dict.atom(s)) {
                *r -= c * a;
            }
        }
        residual_norm = dot(&residual, &residual).sqrt();
        history.push(residual_norm);
    }

    Ok(SparseCoding {
        iterations: selected.len(),
        indices: selected,
        coefficients,
        residual_norm,
        residual_history: history,
    })
}
