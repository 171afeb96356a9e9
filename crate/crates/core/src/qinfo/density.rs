use num_complex::Complex64;

use super::eigen::eigenvalues_hermitian;
use super::measures::PSD_TOLERANCE;
use crate::error::{Error, Result};
use crate::params::Flavor;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-10;

/// Density matrix over a set of flavor-mode qubits.
///
/// Entries are stored row-major. The label at position `i` owns bit
/// `n − 1 − i` of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    labels: Vec<Flavor>,
    dim: usize,
    data: Vec<Complex64>,
}

impl DensityMatrix {
    /// Builds a state, checking shape, label uniqueness, Hermiticity and trace.
    ///
    /// Positivity is not checked here; see [`DensityMatrix::check_physical`].
    pub fn new(labels: Vec<Flavor>, data: Vec<Complex64>) -> Result<Self> {
        let rho = Self::from_entries_unchecked(labels, data)?;
        let dev = rho.hermiticity_defect();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = rho.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace { trace: tr });
        }
        Ok(rho)
    }

    /// Builds a matrix checking only its shape and labels.
    ///
    /// Used for intermediate results and for deliberately unphysical inputs.
    pub fn from_entries_unchecked(labels: Vec<Flavor>, data: Vec<Complex64>) -> Result<Self> {
        if labels.is_empty() || labels.len() > 3 {
            return Err(Error::DimensionMismatch(format!(
                "expected 1 to 3 flavor modes, got {}",
                labels.len()
            )));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[i + 1..].contains(a) {
                return Err(Error::DimensionMismatch(format!("duplicate mode label {a}")));
            }
        }
        let dim = 1usize << labels.len();
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {dim}x{dim} matrix",
                data.len()
            )));
        }
        Ok(DensityMatrix { labels, dim, data })
    }

    /// `|ψ⟩⟨ψ|` for a state vector over `labels`.
    pub fn from_pure(labels: Vec<Flavor>, psi: &[Complex64]) -> Result<Self> {
        let dim = psi.len();
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                data[i * dim + j] = psi[i] * psi[j].conj();
            }
        }
        Self::new(labels, data)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn labels(&self) -> &[Flavor] {
        &self.labels
    }

    #[inline]
    pub fn n_modes(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        // Tr ρ² = Σ |ρ_ij|² for Hermitian ρ.
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Real parts of the diagonal.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i).re).collect()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Position of `label` among this state's modes.
    pub fn position(&self, label: Flavor) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Bit of the basis index owned by `label`.
    fn bit_of(&self, label: Flavor) -> Option<usize> {
        self.position(label).map(|p| self.labels.len() - 1 - p)
    }

    /// Full check: Hermitian, unit trace, eigenvalues ≥ −1e-10.
    pub fn check_physical(&self) -> Result<()> {
        let dev = self.hermiticity_defect();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace { trace: tr });
        }
        let spec = eigenvalues_hermitian(self)?;
        let min = spec.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -PSD_TOLERANCE {
            return Err(Error::NotPositive { eigenvalue: min });
        }
        Ok(())
    }

    /// Reduced state on the modes in `keep`; output modes follow this state's order.
    pub fn partial_trace(&self, keep: &[Flavor]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidPartition("keep-set is empty".into()));
        }
        let mut kept_bits = Vec::with_capacity(keep.len());
        let mut kept_labels = Vec::with_capacity(keep.len());
        for &l in &self.labels {
            if keep.contains(&l) {
                kept_labels.push(l);
                kept_bits.push(self.bit_of(l).expect("own label"));
            }
        }
        for k in keep {
            if self.position(*k).is_none() {
                return Err(Error::InvalidPartition(format!("mode {k} not present")));
            }
        }
        if kept_labels.len() != keep.len() {
            return Err(Error::InvalidPartition("duplicate labels in keep-set".into()));
        }
        if kept_labels.len() == self.labels.len() {
            return Err(Error::InvalidPartition("keep-set covers every mode".into()));
        }
        let traced_bits: Vec<usize> = self
            .labels
            .iter()
            .filter(|l| !keep.contains(l))
            .map(|&l| self.bit_of(l).expect("own label"))
            .collect();

        // Scatter the bits of a sub-index onto their full-index positions.
        let scatter = |sub: usize, bits: &[usize]| -> usize {
            bits.iter()
                .enumerate()
                .map(|(i, &b)| ((sub >> (bits.len() - 1 - i)) & 1) << b)
                .sum()
        };

        let out_dim = 1usize << kept_bits.len();
        let env_dim = 1usize << traced_bits.len();
        let mut out = vec![Complex64::new(0.0, 0.0); out_dim * out_dim];
        for r in 0..out_dim {
            let rf = scatter(r, &kept_bits);
            for c in 0..out_dim {
                let cf = scatter(c, &kept_bits);
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..env_dim {
                    let tf = scatter(t, &traced_bits);
                    acc += self.get(rf | tf, cf | tf);
                }
                out[r * out_dim + c] = acc;
            }
        }
        DensityMatrix::from_entries_unchecked(kept_labels, out)
    }

    /// Same state with its qubits rearranged into `order`.
    pub fn reorder(&self, order: &[Flavor]) -> Result<DensityMatrix> {
        if order.len() != self.labels.len() || order.iter().any(|l| self.position(*l).is_none()) {
            return Err(Error::InvalidPartition(format!(
                "{order:?} is not a rearrangement of {:?}",
                self.labels
            )));
        }
        let n = order.len();
        let bits: Vec<usize> = order.iter().map(|&l| self.bit_of(l).expect("own label")).collect();
        let map = |idx: usize| -> usize { (0..n).map(|i| ((idx >> (n - 1 - i)) & 1) << bits[i]).sum() };
        let mut data = vec![Complex64::new(0.0, 0.0); self.dim * self.dim];
        for r in 0..self.dim {
            let rf = map(r);
            for c in 0..self.dim {
                data[r * self.dim + c] = self.get(rf, map(c));
            }
        }
        DensityMatrix::from_entries_unchecked(order.to_vec(), data)
    }

    /// Relabels the modes through `perm` (`perm[f.index()]` is the new label
    /// of mode `f`) and returns the result in this state's mode order.
    ///
    /// For the canonical order this is the state obtained by swapping flavor
    /// roles, e.g. the content of mode `e` moves to mode `μ`.
    pub fn permute_modes(&self, perm: [Flavor; 3]) -> Result<DensityMatrix> {
        let relabeled: Vec<Flavor> = self.labels.iter().map(|l| perm[l.index()]).collect();
        let tmp = DensityMatrix::from_entries_unchecked(relabeled, self.data.clone())?;
        tmp.reorder(&self.labels)
    }

    /// Scales every entry; used to build unphysical negative controls.
    pub fn scaled(&self, factor: f64) -> DensityMatrix {
        DensityMatrix {
            labels: self.labels.clone(),
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Flavor::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn basis(n: usize, k: usize) -> Vec<Complex64> {
        let mut v = vec![c(0.0); n];
        v[k] = c(1.0);
        v
    }

    #[test]
    fn product_state_reduction() {
        // |100⟩ in (e, μ, τ) order is index 4.
        let rho = DensityMatrix::from_pure(vec![E, Mu, Tau], &basis(8, 4)).unwrap();
        let r_mu = rho.partial_trace(&[Mu]).unwrap();
        assert_eq!(r_mu.get(0, 0), c(1.0));
        assert_eq!(r_mu.get(1, 1), c(0.0));
        let r_e = rho.partial_trace(&[E]).unwrap();
        assert_eq!(r_e.get(1, 1), c(1.0));
    }

    #[test]
    fn rejects_bad_keep_sets() {
        let rho = DensityMatrix::from_pure(vec![E, Mu, Tau], &basis(8, 4)).unwrap();
        assert!(matches!(rho.partial_trace(&[]), Err(Error::InvalidPartition(_))));
        assert!(matches!(
            rho.partial_trace(&[E, Mu, Tau]),
            Err(Error::InvalidPartition(_))
        ));
        let r = rho.partial_trace(&[E, Mu]).unwrap();
        assert!(matches!(r.partial_trace(&[Tau]), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn rejects_non_hermitian_and_bad_trace() {
        let mut d = vec![c(0.0); 4];
        d[0] = c(1.0);
        d[1] = Complex64::new(0.0, 0.1);
        assert!(matches!(
            DensityMatrix::new(vec![E], d),
            Err(Error::NotHermitian { .. })
        ));
        let d = vec![c(0.45), c(0.0), c(0.0), c(0.45)];
        assert!(matches!(DensityMatrix::new(vec![E], d), Err(Error::BadTrace { .. })));
    }

    #[test]
    fn reorder_moves_content() {
        // |100⟩ over (e, μ, τ) becomes |010⟩ when e is listed second.
        let rho = DensityMatrix::from_pure(vec![E, Mu, Tau], &basis(8, 4)).unwrap();
        let r = rho.reorder(&[Mu, E, Tau]).unwrap();
        assert_eq!(r.get(2, 2), c(1.0));
        assert_eq!(r.labels(), &[Mu, E, Tau]);
    }

    #[test]
    fn permute_modes_swaps_flavor_roles() {
        let rho = DensityMatrix::from_pure(vec![E, Mu, Tau], &basis(8, 4)).unwrap();
        let swapped = rho.permute_modes([Tau, Mu, E]).unwrap();
        // The excitation moved from mode e to mode τ: |001⟩ = index 1.
        assert_eq!(swapped.get(1, 1), c(1.0));
        assert_eq!(swapped.labels(), &[E, Mu, Tau]);
    }

    #[test]
    fn physical_check_flags_negative_eigenvalue() {
        let d = vec![c(1.2), c(0.0), c(0.0), c(-0.2)];
        let rho = DensityMatrix::new(vec![E], d).unwrap();
        assert!(matches!(rho.check_physical(), Err(Error::NotPositive { .. })));
    }
}
