//! Cost functions, initial/final Hamiltonians, their interpolation, and the
//! symmetric-subspace (Dicke) reduction for weight-symmetric problems.
//!
//! The final Hamiltonian of a cost function f is diagonal in the
//! computational basis, H_f = Σ_z f(z)|z⟩⟨z|. The initial Hamiltonian is
//! built from a second cost function h with h(0ⁿ) = 0 and h(z) ≥ 1 elsewhere
//! as H₀ = W⊗ⁿ · diag(h) · W⊗ⁿ, so its unique ground state is the uniform
//! superposition with energy 0. The path between them is the linear
//! interpolation H(s) = (1−s)·H₀ + s·H_f for s ∈ [0, 1].
//!
//! When both cost functions depend on z only through the Hamming weight w(z),
//! H(s) commutes with every bit permutation and the evolution stays inside
//! the (n+1)-dimensional symmetric subspace spanned by the uniform
//! superpositions |k⟩ of all weight-k strings. In that basis (with h = w)
//!
//!   ⟨k|H(s)|k⟩   = (1−s)·n/2 + s·f(k),
//!   ⟨k+1|H(s)|k⟩ = −(1−s)·√((k+1)(n−k))/2,
//!
//! a real symmetric tridiagonal matrix whose spectrum is a subset of the full
//! 2ⁿ spectrum and contains the two lowest eigenvalues (the ground state is
//! nodeless, hence symmetric, and so is the lowest excitation of these
//! families; the dense cross-check below is part of the test suite).

use crate::bits::{format_bits, parse_bits, weight};
use crate::error::{Error, Result};
use crate::walsh::fwht_real;
use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde_json::{json, Value};

/// Largest qubit count for which dense 2ⁿ×2ⁿ operators are built.
pub const DENSE_LIMIT: usize = 14;

/// Largest qubit count for any cost-function table (state vectors stay
/// affordable well past the dense-operator limit).
pub const STATE_LIMIT: usize = 26;

/// Which representation an operator or computation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Full 2ⁿ computational basis, index = big-endian bit string.
    Computational,
    /// Full 2ⁿ basis in which the initial Hamiltonian is diagonal.
    HadamardDiagonal,
    /// Symmetric subspace, index = Hamming weight, dim = n+1.
    Dicke,
}

/// Computation backend selector shared by the spectral and evolution modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Full 2ⁿ-dimensional space (capped at [`DENSE_LIMIT`] for operators).
    Dense,
    /// (n+1)-dimensional symmetric subspace; weight-symmetric families only.
    Dicke,
}

/// A dense Hermitian matrix with a basis tag. Hermiticity is validated to
/// 1e−12 elementwise on construction through [`HermitianOperator::new`].
#[derive(Clone, Debug)]
pub struct HermitianOperator {
    dim: usize,
    entries: Array2<Complex64>,
    basis: Basis,
}

impl HermitianOperator {
    pub fn new(entries: Array2<Complex64>, basis: Basis) -> Result<Self> {
        let (rows, cols) = entries.dim();
        if rows != cols {
            return Err(Error::Shape(format!("operator matrix is {rows}×{cols}")));
        }
        for i in 0..rows {
            for j in 0..=i {
                let d = entries[[i, j]] - entries[[j, i]].conj();
                if d.norm() > 1e-12 {
                    return Err(Error::Contract(format!(
                        "entries are not Hermitian at ({i},{j}): asymmetry {}",
                        d.norm()
                    )));
                }
            }
        }
        Ok(HermitianOperator { dim: rows, entries, basis })
    }

    /// For matrices Hermitian by construction (diagonals, affine combinations
    /// of validated operators, symmetric builders).
    pub(crate) fn new_unchecked(entries: Array2<Complex64>, basis: Basis) -> Self {
        let dim = entries.nrows();
        debug_assert_eq!(dim, entries.ncols());
        HermitianOperator { dim, entries, basis }
    }

    pub fn from_real(entries: Array2<f64>, basis: Basis) -> Result<Self> {
        let complex = entries.mapv(|x| Complex64::new(x, 0.0));
        HermitianOperator::new(complex, basis)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    /// True when every entry has a zero imaginary part (exactly; the built-in
    /// constructions produce exact zeros).
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|c| c.im == 0.0)
    }

    /// Real parts as a flat row-major buffer (the LAPACK working format).
    pub(crate) fn real_buffer(&self) -> Vec<f64> {
        self.entries.iter().map(|c| c.re).collect()
    }

    pub(crate) fn complex_buffer(&self) -> Vec<Complex64> {
        self.entries.iter().copied().collect()
    }
}

/// Which built-in construction a cost function came from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilyTag {
    HammingWeight,
    /// Needle-in-a-haystack: value 0 at the unknown string u, 1 elsewhere.
    Search { u: usize },
    /// Hamming weight with a decreasing override on the high-weight tail.
    Perturbed { epsilon: f64 },
    Custom,
}

#[derive(Clone, Debug)]
enum CostKind {
    /// f(z) = w(z).
    HammingWeight,
    /// h(z) = 0 at z = 0ⁿ, 1 elsewhere (search-style start).
    IndicatorNonZero,
    /// f(z) = 1 except f(u) = 0.
    SearchTarget { u: usize },
    /// Weight-symmetric table, index = Hamming weight, length n+1.
    ByWeight(Vec<f64>),
    /// Full table over all 2ⁿ strings.
    Dense(Vec<f64>),
}

/// A real-valued function on n-bit strings, the object being minimized (or,
/// as `h`, the diagonal of the initial Hamiltonian in the Hadamard basis).
#[derive(Clone, Debug)]
pub struct CostFunction {
    n: usize,
    kind: CostKind,
    weight_symmetric: bool,
    family_tag: FamilyTag,
}

impl CostFunction {
    fn check_n(n: usize) -> Result<()> {
        if n == 0 || n > STATE_LIMIT {
            return Err(Error::Capacity(format!("qubit count {n} outside 1..={STATE_LIMIT}")));
        }
        Ok(())
    }

    pub fn hamming_weight(n: usize) -> Result<Self> {
        Self::check_n(n)?;
        Ok(CostFunction {
            n,
            kind: CostKind::HammingWeight,
            weight_symmetric: true,
            family_tag: FamilyTag::HammingWeight,
        })
    }

    pub fn indicator_nonzero(n: usize) -> Result<Self> {
        Self::check_n(n)?;
        Ok(CostFunction {
            n,
            kind: CostKind::IndicatorNonZero,
            weight_symmetric: true,
            family_tag: FamilyTag::Custom,
        })
    }

    pub fn search_target(n: usize, u: usize) -> Result<Self> {
        Self::check_n(n)?;
        if u >= 1usize << n {
            return Err(Error::Domain(format!("target {u} out of range for n = {n}")));
        }
        // Weight-symmetric only when u's weight class is a singleton.
        let ws = u == 0 || u == (1usize << n) - 1;
        Ok(CostFunction {
            n,
            kind: CostKind::SearchTarget { u },
            weight_symmetric: ws,
            family_tag: FamilyTag::Search { u },
        })
    }

    /// Weight-symmetric table: `values[k]` is the cost of any weight-k string.
    pub fn by_weight(n: usize, values: Vec<f64>, family_tag: FamilyTag) -> Result<Self> {
        Self::check_n(n)?;
        if values.len() != n + 1 {
            return Err(Error::Shape(format!(
                "weight table has {} entries, need n+1 = {}",
                values.len(),
                n + 1
            )));
        }
        Ok(CostFunction { n, kind: CostKind::ByWeight(values), weight_symmetric: true, family_tag })
    }

    /// Arbitrary table over all 2ⁿ strings.
    pub fn dense(n: usize, values: Vec<f64>) -> Result<Self> {
        Self::check_n(n)?;
        if values.len() != 1usize << n {
            return Err(Error::Shape(format!(
                "dense table has {} entries, need 2ⁿ = {}",
                values.len(),
                1usize << n
            )));
        }
        let ws = {
            // Exhaustive weight-symmetry detection.
            let mut by_w: Vec<Option<f64>> = vec![None; n + 1];
            let mut ok = true;
            for (z, &v) in values.iter().enumerate() {
                match by_w[weight(z)] {
                    None => by_w[weight(z)] = Some(v),
                    Some(w) if w == v => {}
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            ok
        };
        Ok(CostFunction { n, kind: CostKind::Dense(values), weight_symmetric: ws, family_tag: FamilyTag::Custom })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight_symmetric(&self) -> bool {
        self.weight_symmetric
    }

    pub fn family_tag(&self) -> FamilyTag {
        self.family_tag
    }

    /// Value on the string with index z.
    pub fn eval(&self, z: usize) -> f64 {
        debug_assert!(z < 1usize << self.n);
        match &self.kind {
            CostKind::HammingWeight => weight(z) as f64,
            CostKind::IndicatorNonZero => (z != 0) as u8 as f64,
            CostKind::SearchTarget { u } => (z != *u) as u8 as f64,
            CostKind::ByWeight(values) => values[weight(z)],
            CostKind::Dense(values) => values[z],
        }
    }

    /// Value on any weight-k string, when the function is weight-symmetric.
    pub fn eval_weight(&self, k: usize) -> Option<f64> {
        if !self.weight_symmetric || k > self.n {
            return None;
        }
        Some(match &self.kind {
            CostKind::HammingWeight => k as f64,
            CostKind::IndicatorNonZero => (k != 0) as u8 as f64,
            // Reached only when weight-symmetric, i.e. u ∈ {0ⁿ, 1ⁿ}.
            CostKind::SearchTarget { u } => (k != weight(*u)) as u8 as f64,
            CostKind::ByWeight(values) => values[k],
            CostKind::Dense(values) => {
                // First index of weight k: k leading ones.
                let z = ((1usize << k) - 1) << (self.n - k);
                values[z]
            }
        })
    }

    /// max_z |f(z)|; the scale entering derivative-norm bounds.
    pub fn max_abs(&self) -> f64 {
        match &self.kind {
            CostKind::HammingWeight => self.n as f64,
            CostKind::IndicatorNonZero | CostKind::SearchTarget { .. } => 1.0,
            CostKind::ByWeight(values) => values.iter().fold(0.0f64, |m, v| m.max(v.abs())),
            CostKind::Dense(values) => values.iter().fold(0.0f64, |m, v| m.max(v.abs())),
        }
    }

    /// Is this usable as the diagonal h of an initial Hamiltonian
    /// (h(0ⁿ) = 0, h(z) ≥ 1 elsewhere)?
    fn check_as_initial(&self) -> Result<()> {
        let ok = match &self.kind {
            CostKind::HammingWeight | CostKind::IndicatorNonZero => true,
            CostKind::SearchTarget { u } => *u == 0,
            CostKind::ByWeight(values) => values[0] == 0.0 && values[1..].iter().all(|&v| v >= 1.0),
            CostKind::Dense(values) => {
                values[0] == 0.0 && values[1..].iter().all(|&v| v >= 1.0)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Contract(
                "initial cost must satisfy h(0ⁿ) = 0 and h(z) ≥ 1 elsewhere".into(),
            ))
        }
    }
}

/// A minimization problem: final cost f, initial diagonal h, shared n.
#[derive(Clone, Debug)]
pub struct ProblemFamily {
    cost: CostFunction,
    initial_cost: CostFunction,
    n: usize,
}

impl ProblemFamily {
    pub fn new(cost: CostFunction, initial_cost: CostFunction) -> Result<Self> {
        if cost.n() != initial_cost.n() {
            return Err(Error::Shape(format!(
                "cost has n = {}, initial cost has n = {}",
                cost.n(),
                initial_cost.n()
            )));
        }
        initial_cost.check_as_initial()?;
        let n = cost.n();
        Ok(ProblemFamily { cost, initial_cost, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cost(&self) -> &CostFunction {
        &self.cost
    }

    pub fn initial_cost(&self) -> &CostFunction {
        &self.initial_cost
    }

    /// Serialize as {"family": ..., "n": ..., "params": {...}}.
    pub fn to_doc(&self) -> Value {
        match self.cost.family_tag {
            FamilyTag::HammingWeight => json!({"family": "hamming_weight", "n": self.n, "params": {}}),
            FamilyTag::Search { u } => json!({
                "family": "search",
                "n": self.n,
                "params": {"u": format_bits(u, self.n)}
            }),
            FamilyTag::Perturbed { epsilon } => {
                let p = match &self.cost.kind {
                    CostKind::ByWeight(values) => {
                        let threshold = (0.5 + epsilon) * self.n as f64;
                        let first = (0..=self.n).find(|&k| k as f64 > threshold).unwrap_or(self.n);
                        values[first..].to_vec()
                    }
                    _ => vec![-1.0],
                };
                json!({
                    "family": "perturbed",
                    "n": self.n,
                    "params": {"epsilon": epsilon, "p": p}
                })
            }
            FamilyTag::Custom => {
                let values: Vec<f64> = (0..1usize << self.n).map(|z| self.cost.eval(z)).collect();
                json!({"family": "custom", "n": self.n, "params": {"values": values}})
            }
        }
    }
}

/// Built-in family selector with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    HammingWeight,
    Search { u: usize },
    /// Hamming weight except the all-ones string, whose cost is −1.
    PerturbedSpike,
    /// Hamming weight for w(z) ≤ (½+ε)n, the decreasing table p above it;
    /// p must end at the global minimum −1.
    Perturbed { epsilon: f64, p: Vec<f64> },
}

/// Construct a built-in problem family. The initial diagonal h follows the
/// two standard constructions: search uses h(z) = 1 for z ≠ 0ⁿ, everything
/// else uses h = Hamming weight.
pub fn make_family(spec: &FamilySpec, n: usize) -> Result<ProblemFamily> {
    CostFunction::check_n(n)?;
    match spec {
        FamilySpec::HammingWeight => {
            ProblemFamily::new(CostFunction::hamming_weight(n)?, CostFunction::hamming_weight(n)?)
        }
        FamilySpec::Search { u } => {
            ProblemFamily::new(CostFunction::search_target(n, *u)?, CostFunction::indicator_nonzero(n)?)
        }
        FamilySpec::PerturbedSpike => {
            // ε chosen so only the all-ones string crosses the threshold:
            // n−1 ≤ (½+ε)n < n, with the max keeping ε positive at n = 1.
            let epsilon = (0.5 - 1.0 / (2.0 * n as f64)).max(0.25);
            make_family(&FamilySpec::Perturbed { epsilon, p: vec![-1.0] }, n)
        }
        FamilySpec::Perturbed { epsilon, p } => {
            if !(*epsilon > 0.0) {
                return Err(Error::Domain(format!("epsilon must be positive, got {epsilon}")));
            }
            let threshold = (0.5 + epsilon) * n as f64;
            if threshold >= n as f64 {
                return Err(Error::Domain(format!(
                    "(1/2 + ε)·n = {threshold} must stay below n = {n}"
                )));
            }
            let first = (0..=n)
                .find(|&k| k as f64 > threshold)
                .expect("threshold < n guarantees a perturbed weight");
            let region_len = n + 1 - first;
            if p.len() != region_len {
                return Err(Error::Contract(format!(
                    "p covers {} weights, region w > {threshold:.3} has {region_len}",
                    p.len()
                )));
            }
            if p.windows(2).any(|w| w[1] > w[0]) {
                return Err(Error::Contract("p must be decreasing in weight".into()));
            }
            if *p.last().unwrap() != -1.0 {
                return Err(Error::Contract(format!(
                    "p must reach the global minimum −1, ends at {}",
                    p.last().unwrap()
                )));
            }
            let mut values: Vec<f64> = (0..=n).map(|k| k as f64).collect();
            values[first..].copy_from_slice(p);
            let cost = CostFunction::by_weight(n, values, FamilyTag::Perturbed { epsilon: *epsilon })?;
            ProblemFamily::new(cost, CostFunction::hamming_weight(n)?)
        }
    }
}

/// Parse {"family": ..., "n": ..., "params": {...}}.
pub fn family_from_doc(doc: &Value) -> Result<ProblemFamily> {
    let name = doc
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("family document needs a \"family\" string".into()))?;
    let n = doc
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("family document needs an integer \"n\"".into()))? as usize;
    let params = doc.get("params").cloned().unwrap_or_else(|| json!({}));
    match name {
        "hamming_weight" | "hamming" => make_family(&FamilySpec::HammingWeight, n),
        "search" => {
            let u_str = params
                .get("u")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("search family needs params.u as a bit string".into()))?;
            let (u, len) = parse_bits(u_str)?;
            if len != n {
                return Err(Error::Parse(format!("params.u has {len} bits, n = {n}")));
            }
            make_family(&FamilySpec::Search { u }, n)
        }
        "perturbed-spike" | "perturbed_spike" => make_family(&FamilySpec::PerturbedSpike, n),
        "perturbed" => {
            let epsilon = params
                .get("epsilon")
                .and_then(Value::as_f64)
                .ok_or_else(|| Error::Parse("perturbed family needs params.epsilon".into()))?;
            let p = params
                .get("p")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("perturbed family needs params.p as an array".into()))?
                .iter()
                .map(|v| v.as_f64().ok_or_else(|| Error::Parse("params.p holds non-numbers".into())))
                .collect::<Result<Vec<f64>>>()?;
            make_family(&FamilySpec::Perturbed { epsilon, p }, n)
        }
        "custom" => {
            let values = params
                .get("values")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("custom family needs params.values".into()))?
                .iter()
                .map(|v| v.as_f64().ok_or_else(|| Error::Parse("params.values holds non-numbers".into())))
                .collect::<Result<Vec<f64>>>()?;
            let cost = CostFunction::dense(n, values)?;
            ProblemFamily::new(cost, CostFunction::hamming_weight(n)?)
        }
        other => Err(Error::Parse(format!("unknown family {other:?}"))),
    }
}

fn check_dense_limit(n: usize) -> Result<()> {
    if n > DENSE_LIMIT {
        return Err(Error::Capacity(format!(
            "n = {n} exceeds the dense-operator limit {DENSE_LIMIT}"
        )));
    }
    Ok(())
}

/// H_f = Σ_z f(z)|z⟩⟨z|: diagonal in the computational basis.
pub fn build_final_hamiltonian(cost: &CostFunction) -> Result<HermitianOperator> {
    check_dense_limit(cost.n())?;
    let dim = 1usize << cost.n();
    let mut entries = Array2::from_elem((dim, dim), Complex64::new(0.0, 0.0));
    for z in 0..dim {
        entries[[z, z]] = Complex64::new(cost.eval(z), 0.0);
    }
    Ok(HermitianOperator::new_unchecked(entries, Basis::Computational))
}

/// H₀ = W⊗ⁿ · diag(h) · W⊗ⁿ in the computational basis. Its ground state is
/// the uniform superposition with eigenvalue 0.
pub fn build_initial_hamiltonian(initial_cost: &CostFunction) -> Result<HermitianOperator> {
    check_dense_limit(initial_cost.n())?;
    initial_cost.check_as_initial()?;
    let n = initial_cost.n();
    let dim = 1usize << n;
    // (W diag(h) W)[x][y] = 2^{−n} Σ_z (−1)^{(x⊕y)·z} h(z): one transform of
    // the diagonal, then an XOR-indexed fill.
    let mut t: Vec<f64> = (0..dim).map(|z| initial_cost.eval(z)).collect();
    fwht_real(&mut t);
    let scale = 1.0 / (dim as f64).sqrt();
    let entries = Array2::from_shape_fn((dim, dim), |(x, y)| Complex64::new(t[x ^ y] * scale, 0.0));
    Ok(HermitianOperator::new_unchecked(entries, Basis::Computational))
}

/// (1−s)·H₀ + s·H_f.
pub fn interpolate(h0: &HermitianOperator, hf: &HermitianOperator, s: f64) -> Result<HermitianOperator> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("interpolation parameter s = {s} outside [0, 1]")));
    }
    if h0.dim() != hf.dim() || h0.basis() != hf.basis() {
        return Err(Error::Shape(format!(
            "operators disagree: dim {} ({:?}) vs dim {} ({:?})",
            h0.dim(),
            h0.basis(),
            hf.dim(),
            hf.basis()
        )));
    }
    let a = Complex64::new(1.0 - s, 0.0);
    let b = Complex64::new(s, 0.0);
    let entries = h0
        .entries()
        .iter()
        .zip(hf.entries().iter())
        .map(|(x, y)| a * x + b * y)
        .collect::<Array1<_>>()
        .into_shape_with_order((h0.dim(), h0.dim()))
        .expect("same dims");
    Ok(HermitianOperator::new_unchecked(entries, h0.basis()))
}

/// Both dense endpoint operators of a family.
pub fn dense_hamiltonians(family: &ProblemFamily) -> Result<(HermitianOperator, HermitianOperator)> {
    Ok((
        build_initial_hamiltonian(family.initial_cost())?,
        build_final_hamiltonian(family.cost())?,
    ))
}

/// H(s) restricted to the symmetric subspace: the (n+1)×(n+1) tridiagonal
/// matrix in the module docs. Requires a weight-symmetric cost and h = w.
pub fn build_dicke_reduction(family: &ProblemFamily, s: f64) -> Result<HermitianOperator> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("interpolation parameter s = {s} outside [0, 1]")));
    }
    if !family.cost().weight_symmetric() {
        return Err(Error::UnsupportedFamily(
            "symmetric-subspace reduction needs a weight-symmetric cost".into(),
        ));
    }
    if !matches!(family.initial_cost().kind, CostKind::HammingWeight) {
        return Err(Error::UnsupportedFamily(
            "symmetric-subspace reduction is derived for h = Hamming weight".into(),
        ));
    }
    let n = family.n();
    let mut entries = Array2::from_elem((n + 1, n + 1), Complex64::new(0.0, 0.0));
    for k in 0..=n {
        let f_k = family.cost().eval_weight(k).expect("weight-symmetric");
        entries[[k, k]] = Complex64::new((1.0 - s) * n as f64 / 2.0 + s * f_k, 0.0);
        if k < n {
            let coupling = -(1.0 - s) * (((k + 1) * (n - k)) as f64).sqrt() / 2.0;
            entries[[k, k + 1]] = Complex64::new(coupling, 0.0);
            entries[[k + 1, k]] = Complex64::new(coupling, 0.0);
        }
    }
    Ok(HermitianOperator::new_unchecked(entries, Basis::Dicke))
}
