//! Normalized complex amplitude vectors, over the full computational basis
//! {0,1}ⁿ or over the symmetric-weight (Dicke) basis {0,…,n}.

use crate::bits::binomial;
use crate::error::{Error, Result};
use ndarray::Array1;
use num_complex::Complex64;
use rand::Rng;

/// Which basis the amplitudes index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateBasis {
    /// dim = 2ⁿ, index z is a big-endian bit string.
    Computational { n: usize },
    /// dim = n+1, index k is a Hamming weight.
    Dicke { n: usize },
}

impl StateBasis {
    pub fn n(&self) -> usize {
        match *self {
            StateBasis::Computational { n } | StateBasis::Dicke { n } => n,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            StateBasis::Computational { n } => 1usize << n,
            StateBasis::Dicke { n } => n + 1,
        }
    }
}

/// A normalized state vector. Construction checks the norm to 1e−6; evolution
/// routines track drift beyond that themselves instead of renormalizing.
#[derive(Clone, Debug)]
pub struct StateVector {
    amps: Array1<Complex64>,
    basis: StateBasis,
}

impl StateVector {
    pub fn new(amps: Array1<Complex64>, basis: StateBasis) -> Result<Self> {
        if amps.len() != basis.dim() {
            return Err(Error::Shape(format!(
                "state has {} amplitudes, basis needs {}",
                amps.len(),
                basis.dim()
            )));
        }
        let state = StateVector { amps, basis };
        let norm = state.norm();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(Error::Contract(format!("state norm {norm} is not 1")));
        }
        Ok(state)
    }

    pub(crate) fn new_unchecked(amps: Array1<Complex64>, basis: StateBasis) -> Self {
        debug_assert_eq!(amps.len(), basis.dim());
        StateVector { amps, basis }
    }

    /// Uniform superposition over all 2ⁿ strings.
    pub fn uniform(n: usize) -> Self {
        let dim = 1usize << n;
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        StateVector::new_unchecked(Array1::from_elem(dim, amp), StateBasis::Computational { n })
    }

    /// Basis state |z⟩.
    pub fn basis_state(n: usize, z: usize) -> Result<Self> {
        let dim = 1usize << n;
        if z >= dim {
            return Err(Error::Domain(format!("index {z} out of range for n = {n}")));
        }
        let mut amps = Array1::from_elem(dim, Complex64::new(0.0, 0.0));
        amps[z] = Complex64::new(1.0, 0.0);
        Ok(StateVector::new_unchecked(amps, StateBasis::Computational { n }))
    }

    /// The uniform superposition expressed in the Dicke basis: amplitude
    /// √(C(n,k)/2ⁿ) on weight k.
    pub fn dicke_uniform(n: usize) -> Self {
        let scale = 1.0 / (1u128 << n) as f64;
        let amps = (0..=n)
            .map(|k| Complex64::new((binomial(n, k) as f64 * scale).sqrt(), 0.0))
            .collect::<Array1<_>>();
        StateVector::new_unchecked(amps, StateBasis::Dicke { n })
    }

    /// Dicke basis state of weight k.
    pub fn dicke_basis_state(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::Domain(format!("weight {k} out of range for n = {n}")));
        }
        let mut amps = Array1::from_elem(n + 1, Complex64::new(0.0, 0.0));
        amps[k] = Complex64::new(1.0, 0.0);
        Ok(StateVector::new_unchecked(amps, StateBasis::Dicke { n }))
    }

    /// Haar-agnostic random state (uniform amplitude box, then normalized);
    /// deterministic given the generator state.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let dim = 1usize << n;
        let mut amps = Array1::from_shape_fn(dim, |_| {
            Complex64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
        });
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.mapv_inplace(|a| a / norm);
        StateVector::new_unchecked(amps, StateBasis::Computational { n })
    }

    pub fn basis(&self) -> StateBasis {
        self.basis
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &Array1<Complex64> {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨self|other⟩.
    pub fn overlap(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same_basis(other)?;
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// ‖self − other‖₂.
    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        self.check_same_basis(other)?;
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    fn check_same_basis(&self, other: &StateVector) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::Shape(format!(
                "state bases differ: {:?} vs {:?}",
                self.basis, other.basis
            )));
        }
        Ok(())
    }
}
