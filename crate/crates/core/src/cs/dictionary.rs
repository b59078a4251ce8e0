use crate::error::{domain, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    /// Orthonormal Haar basis in standard layout; correlations use the fast
    /// transform.
    Haar,
    Dense,
}

/// A set of atoms (signal-length columns) for sparse coding.
#[derive(Clone, Debug, PartialEq)]
pub struct Dictionary {
    dim: usize,
    /// Atom `j` occupies `atoms[j * dim..(j + 1) * dim]`.
    atoms: Vec<f64>,
    kind: Kind,
}

impl Dictionary {
    /// A dictionary from explicit atoms, each of length `dim`.
    pub fn from_atoms(dim: usize, atoms: &[Vec<f64>]) -> Result<Dictionary> {
        if dim == 0 || atoms.is_empty() {
            return Err(domain(
                "dictionary needs a positive dimension and at least one atom",
            ));
        }
        if let Some(j) = atoms.iter().position(|a| a.len() != dim) {
            return Err(domain(format!(
                "atom {j} has length {} instead of {dim}",
                atoms[j].len()
            )));
        }
        Ok(Dictionary {
            dim,
            atoms: atoms.concat(),
            kind: Kind::Dense,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.atoms.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom(&self, j: usize) -> &[f64] {
        &self.atoms[j * self.dim..(j + 1) * self.dim]
    }

    /// `⟨atom_j, signal⟩` for every atom.
    pub fn correlate(&self, signal: &[f64]) -> Vec<f64> {
        match self.kind {
            Kind::Haar => haar_analysis(signal),
            Kind::Dense => self.correlate_dense(signal),
        }
    }

    /// Correlations by explicit inner products, `O(dim · len)`.
    pub fn correlate_dense(&self, signal: &[f64]) -> Vec<f64> {
        (0..self.len()).map(|j| dot(self.atom(j), signal)).collect()
    }

    /// `Σ coefficients[i] · atom(indices[i])`.
    pub fn synthesize(&self, indices: &[usize], coefficients: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (&j, &c) in indices.iter().zip(coefficients) {
            for (o, a) in out.iter_mut().zip(self.atom(j)) {
                *o += c * a;
            }
        }
        out
    }

    /// `max |DᵀD − I|` over all atom pairs.
    pub fn max_gram_deviation(&self) -> f64 {
        let n = self.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let g = dot(self.atom(i), self.atom(j));
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The full-depth orthonormal Haar basis of dimension `n = 2^m`.
///
/// Atom 0 is the constant `1/√n`. Atom `2^j + k` (level `j < m`, shift
/// `k < 2^j`) is `+a` on the first half and `-a` on the second half of the
/// support `[k·n/2^j, (k+1)·n/2^j)`, with `a = √(2^j / n)`.
pub fn haar_dictionary(n: usize) -> Result<Dictionary> {
    if n < 2 || !n.is_power_of_two() {
        return Err(domain(format!(
            "Haar dictionary size must be a power of two >= 2, got {n}"
        )));
    }
    let mut atoms = vec![0.0; n * n];
    let scale = 1.0 / (n as f64).sqrt();
    atoms[..n].fill(scale);
    let levels = n.trailing_zeros();
    for j in 0..levels {
        let count = 1usize << j;
        let support = n >> j;
        let amp = (count as f64 / n as f64).sqrt();
        for k in 0..count {
            let atom = &mut atoms[(count + k) * n..(count + k + 1) * n];
            let start = k * support;
            atom[start..start + support / 2].fill(amp);
            atom[start + support / 2..start + support].fill(-amp);
        }
    }
    Ok(Dictionary {
        dim: n,
        atoms,
        kind: Kind::Haar,
    })
}

/// Haar coefficients in the layout of [`haar_dictionary`], by repeated
/// pairwise averaging and differencing.
pub fn haar_analysis(signal: &[f64]) -> Vec<f64> {
    let n = signal.len();
    debug_assert!(n.is_power_of_two());
    let mut out = vec![0.0; n];
    let mut approx = signal.to_vec();
    let mut len = n;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    while len > 1 {
        let half = len / 2;
        for i in 0..half {
            let (a, b) = (approx[2 * i], approx[2 * i + 1]);
            out[half + i] = (a - b) * r;
            approx[i] = (a + b) * r;
        }
        len = half;
    }
    out[0] = approx[0];
    out
}
