//! Gate-level approximation of the path evolution.
//!
//! The run time T is cut into r slices; slice j evolves under the frozen
//! Hamiltonian H′_j = H(j/r) for a duration T/r. Each slice's exponential is
//! then split into commuting diagonal pieces,
//!
//!   U″_j = W⊗ⁿ · F₀ · W⊗ⁿ · F_f,
//!
//! where F_f multiplies amplitude z by e^{−i(T/r)(j/r)·f(z)}, F₀ does the
//! same with (1−j/r)·h(z), and W⊗ⁿ is the n-fold Hadamard transform — four
//! norm-preserving O(n·2ⁿ) passes, no dense matrices. The module also checks
//! the two error bounds that justify the split: per-slice exactness against
//! the two-exponential product, and the path-perturbation bound
//! ‖U(T)−U′(T)‖ ≤ √(2Tδ) for ‖H−H′‖ ≤ δ.

use crate::error::{Error, Result};
use crate::hamiltonian::{
    dense_hamiltonians, Backend, CostFunction, HermitianOperator, ProblemFamily, STATE_LIMIT,
};
use crate::linalg;
use crate::state::{StateBasis, StateVector};
use crate::walsh::fwht_complex;
use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A discretized run: total delay T split into r equal slices.
#[derive(Clone, Debug)]
pub struct TrotterPlan {
    family: ProblemFamily,
    t: f64,
    r: usize,
}

impl TrotterPlan {
    pub fn new(family: ProblemFamily, t: f64, r: usize) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("total delay must be positive, got {t}")));
        }
        if r == 0 {
            return Err(Error::Domain("step count must be at least 1".into()));
        }
        if family.n() > STATE_LIMIT {
            return Err(Error::Capacity(format!(
                "n = {} exceeds the state-vector limit {STATE_LIMIT}",
                family.n()
            )));
        }
        Ok(TrotterPlan { family, t, r })
    }

    pub fn family(&self) -> &ProblemFamily {
        &self.family
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.family.n()
    }
}

fn require_computational(state: &StateVector) -> Result<usize> {
    match state.basis() {
        StateBasis::Computational { n } => Ok(n),
        StateBasis::Dicke { .. } => Err(Error::Shape(
            "gate-level transforms act on the full 2ⁿ computational register".into(),
        )),
    }
}

/// W⊗ⁿ: the n-fold Hadamard transform (orthonormal, an involution).
pub fn hadamard_transform(state: &StateVector) -> Result<StateVector> {
    let n = require_computational(state)?;
    let mut amps = state.amps().clone();
    fwht_complex(amps.as_slice_mut().expect("contiguous"));
    Ok(StateVector::new_unchecked(amps, StateBasis::Computational { n }))
}

/// Diagonal phase: amplitude z picks up e^{−i·angle_scale·g(z)}.
pub fn apply_phase(state: &StateVector, g: &CostFunction, angle_scale: f64) -> Result<StateVector> {
    let n = require_computational(state)?;
    if g.n() != n {
        return Err(Error::Shape(format!(
            "cost function over {} bits applied to a {n}-bit register",
            g.n()
        )));
    }
    let mut amps = state.amps().clone();
    for (z, a) in amps.iter_mut().enumerate() {
        *a *= Complex64::from_polar(1.0, -angle_scale * g.eval(z));
    }
    Ok(StateVector::new_unchecked(amps, StateBasis::Computational { n }))
}

/// One split slice U″_j = W⊗ⁿ·F₀·W⊗ⁿ·F_f (rightmost factor first).
pub fn trotter_step(state: &StateVector, j: usize, plan: &TrotterPlan) -> Result<StateVector> {
    if j == 0 || j > plan.r {
        return Err(Error::Domain(format!("slice index {j} outside 1..={}", plan.r)));
    }
    let dt = plan.t / plan.r as f64;
    let sj = j as f64 / plan.r as f64;
    let state = apply_phase(state, plan.family.cost(), dt * sj)?;
    let state = hadamard_transform(&state)?;
    let state = apply_phase(&state, plan.family.initial_cost(), dt * (1.0 - sj))?;
    hadamard_transform(&state)
}

/// Apply all r slices in order to an arbitrary start state.
pub fn trotter_evolve_state(plan: &TrotterPlan, start: &StateVector) -> Result<StateVector> {
    let n = require_computational(start)?;
    if n != plan.n() {
        return Err(Error::Shape(format!(
            "start state has {n} bits, plan has {}",
            plan.n()
        )));
    }
    // Same pipeline as trotter_step, fused in place to skip per-slice copies.
    let mut amps = start.amps().clone();
    let dim = amps.len();
    let dt = plan.t / plan.r as f64;
    let f_table: Vec<f64> = (0..dim).map(|z| plan.family.cost().eval(z)).collect();
    let h_table: Vec<f64> = (0..dim).map(|z| plan.family.initial_cost().eval(z)).collect();
    let buf = amps.as_slice_mut().expect("contiguous");
    for j in 1..=plan.r {
        let sj = j as f64 / plan.r as f64;
        let af = dt * sj;
        let ah = dt * (1.0 - sj);
        for (z, a) in buf.iter_mut().enumerate() {
            *a *= Complex64::from_polar(1.0, -af * f_table[z]);
        }
        fwht_complex(buf);
        for (z, a) in buf.iter_mut().enumerate() {
            *a *= Complex64::from_polar(1.0, -ah * h_table[z]);
        }
        fwht_complex(buf);
    }
    Ok(StateVector::new_unchecked(amps, StateBasis::Computational { n }))
}

/// U″(T) applied to the uniform superposition.
pub fn trotter_evolve(plan: &TrotterPlan) -> Result<StateVector> {
    trotter_evolve_state(plan, &StateVector::uniform(plan.n()))
}

/// The un-split reference product U′(T) = e^{−i(T/r)H′_r}⋯e^{−i(T/r)H′₁},
/// each factor applied exactly through an eigendecomposition of H(j/r).
pub fn exact_piecewise_evolve_state(plan: &TrotterPlan, start: &StateVector) -> Result<StateVector> {
    let n = require_computational(start)?;
    if n != plan.n() {
        return Err(Error::Shape(format!(
            "start state has {n} bits, plan has {}",
            plan.n()
        )));
    }
    let (h0, hf) = dense_hamiltonians(&plan.family)?;
    let dim = 1usize << n;
    let dt = plan.t / plan.r as f64;
    let mut psi = start.amps().clone();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); dim];
    for j in 1..=plan.r {
        let sj = j as f64 / plan.r as f64;
        let mut buf: Vec<f64> = h0
            .entries()
            .iter()
            .zip(hf.entries().iter())
            .map(|(a, b)| (1.0 - sj) * a.re + sj * b.re)
            .collect();
        let (values, vectors) = linalg::sym_eigen_inplace(&mut buf, dim)?;
        // coeffs = Vᵀψ, then phases, then ψ = V·coeffs.
        for k in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..dim {
                acc += vectors[k * dim + i] * psi[i];
            }
            coeffs[k] = acc * Complex64::from_polar(1.0, -dt * values[k]);
        }
        for i in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..dim {
                acc += vectors[k * dim + i] * coeffs[k];
            }
            psi[i] = acc;
        }
    }
    Ok(StateVector::new_unchecked(psi, StateBasis::Computational { n }))
}

/// U′(T) applied to the uniform superposition.
pub fn exact_piecewise_evolve(plan: &TrotterPlan) -> Result<StateVector> {
    exact_piecewise_evolve_state(plan, &StateVector::uniform(plan.n()))
}

/// Deterministic probe states for unitary-difference estimates.
fn seeded_states(n: usize, count: usize, seed: u64) -> Vec<StateVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| StateVector::random(n, &mut rng)).collect()
}

/// One row of the discretization sweep.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TrotterSweepRow {
    pub r: usize,
    pub t: f64,
    pub n: usize,
    pub error_vs_reference: f64,
}

/// CSV rows `r,T,n,error_vs_reference`.
pub fn sweep_to_csv(rows: &[TrotterSweepRow]) -> String {
    let mut out = String::from("r,T,n,error_vs_reference\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.r,
            crate::fmt::g17(row.t),
            row.n,
            crate::fmt::g17(row.error_vs_reference),
        ));
    }
    out
}

/// Distance between U″(T) at each r and the converged true evolution U(T),
/// measured as the max final-state distance over 16 seeded probe states (a
/// lower bound on the operator norm that tracks its convergence rate).
pub fn trotter_error_sweep(
    family: &ProblemFamily,
    t: f64,
    r_values: &[usize],
    seed: u64,
) -> Result<Vec<TrotterSweepRow>> {
    const PROBES: usize = 16;
    let n = family.n();
    let probes = seeded_states(n, PROBES, seed);
    let references: Vec<Array1<Complex64>> = probes
        .iter()
        .map(|p| crate::evolution::reference_final_state(family, t, Backend::Dense, p.amps(), 256))
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(r_values.len());
    for &r in r_values {
        let plan = TrotterPlan::new(family.clone(), t, r)?;
        let mut err = 0.0f64;
        for (probe, reference) in probes.iter().zip(&references) {
            let approx = trotter_evolve_state(&plan, probe)?;
            let d = approx
                .amps()
                .iter()
                .zip(reference.iter())
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            err = err.max(d);
        }
        rows.push(TrotterSweepRow { r, t, n, error_vs_reference: err });
    }
    Ok(rows)
}

/// One perturbation trial of the path-distance bound.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Lemma1Trial {
    pub trial: usize,
    pub distance: f64,
    pub bound: f64,
}

#[derive(Clone, Debug)]
pub struct Lemma1Report {
    pub trials: Vec<Lemma1Trial>,
    pub t: f64,
    pub delta: f64,
    pub seed: u64,
}

impl Lemma1Report {
    /// CSV rows `trial,distance,bound`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,distance,bound\n");
        for row in &self.trials {
            out.push_str(&format!(
                "{},{},{}\n",
                row.trial,
                crate::fmt::g17(row.distance),
                crate::fmt::g17(row.bound),
            ));
        }
        out
    }

    pub fn max_distance(&self) -> f64 {
        self.trials.iter().fold(0.0f64, |m, t| m.max(t.distance))
    }

    pub fn median_distance(&self) -> f64 {
        let mut d: Vec<f64> = self.trials.iter().map(|t| t.distance).collect();
        d.sort_by(f64::total_cmp);
        let m = d.len();
        if m % 2 == 1 {
            d[m / 2]
        } else {
            0.5 * (d[m / 2 - 1] + d[m / 2])
        }
    }
}

/// Random Hermitian with operator norm exactly `scale` (zero matrix when
/// `scale` = 0).
fn random_hermitian_scaled(dim: usize, scale: f64, rng: &mut ChaCha8Rng) -> Result<Array2<Complex64>> {
    let mut e = Array2::from_elem((dim, dim), Complex64::new(0.0, 0.0));
    for i in 0..dim {
        e[[i, i]] = Complex64::new(rng.random::<f64>() * 2.0 - 1.0, 0.0);
        for j in 0..i {
            let v = Complex64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0);
            e[[i, j]] = v;
            e[[j, i]] = v.conj();
        }
    }
    if scale == 0.0 {
        return Ok(Array2::from_elem((dim, dim), Complex64::new(0.0, 0.0)));
    }
    let mut buf: Vec<Complex64> = e.iter().copied().collect();
    let (values, _) = linalg::herm_eigen_inplace(&mut buf, dim, false)?;
    let norm = values[0].abs().max(values[dim - 1].abs());
    Ok(e.mapv(|x| x * (scale / norm)))
}

/// Fixed-step RK4 of dψ/ds = −i·T·(H(s)+E)·ψ with step doubling to 1e−7.
fn matrix_path_final(
    h0: &HermitianOperator,
    hf: &HermitianOperator,
    e: &Array2<Complex64>,
    t: f64,
    initial: &Array1<Complex64>,
) -> Result<Array1<Complex64>> {
    let dim = initial.len();
    let apply = |s: f64, v: &Array1<Complex64>, out: &mut Array1<Complex64>| {
        for i in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for jx in 0..dim {
                let h = (1.0 - s) * h0.entries()[[i, jx]] + s * hf.entries()[[i, jx]] + e[[i, jx]];
                acc += h * v[jx];
            }
            out[i] = acc * Complex64::new(0.0, -t);
        }
    };
    let run = |steps: usize| -> Array1<Complex64> {
        let mut psi = initial.clone();
        let mut k1 = Array1::from_elem(dim, Complex64::new(0.0, 0.0));
        let mut k2 = k1.clone();
        let mut k3 = k1.clone();
        let mut k4 = k1.clone();
        let mut tmp = k1.clone();
        let h = 1.0 / steps as f64;
        for j in 0..steps {
            let s0 = j as f64 / steps as f64;
            let sm = (j as f64 + 0.5) / steps as f64;
            let s1 = (j + 1) as f64 / steps as f64;
            apply(s0, &psi, &mut k1);
            for i in 0..dim {
                tmp[i] = psi[i] + 0.5 * h * k1[i];
            }
            apply(sm, &tmp, &mut k2);
            for i in 0..dim {
                tmp[i] = psi[i] + 0.5 * h * k2[i];
            }
            apply(sm, &tmp, &mut k3);
            for i in 0..dim {
                tmp[i] = psi[i] + h * k3[i];
            }
            apply(s1, &tmp, &mut k4);
            let w = h / 6.0;
            for i in 0..dim {
                psi[i] += w * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
            }
        }
        psi
    };
    let mut m = 64usize;
    let mut psi = run(m);
    loop {
        if 2 * m > 1 << 20 {
            return Err(Error::Accuracy(format!(
                "perturbed-path integration did not converge within {} steps",
                1 << 20
            )));
        }
        let next = run(2 * m);
        let change = psi
            .iter()
            .zip(next.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        psi = next;
        m *= 2;
        if change < 1e-7 {
            return Ok(psi);
        }
    }
}

/// Perturbation trials: each trial integrates the true path and a path with
/// a random Hermitian offset of operator norm δ from the same random start,
/// and checks the final-state distance against √(2Tδ) plus the integrator
/// tolerance 1e−4.
pub fn lemma1_check(
    family: &ProblemFamily,
    t: f64,
    delta: f64,
    trials: usize,
    seed: u64,
) -> Result<Lemma1Report> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("total delay must be positive, got {t}")));
    }
    if delta < 0.0 {
        return Err(Error::Domain(format!("perturbation size must be ≥ 0, got {delta}")));
    }
    if trials == 0 {
        return Err(Error::Domain("at least one trial required".into()));
    }
    let (h0, hf) = dense_hamiltonians(family)?;
    let dim = 1usize << family.n();
    let zero = Array2::from_elem((dim, dim), Complex64::new(0.0, 0.0));
    let bound = (2.0 * t * delta).sqrt();
    let tol = 1e-4;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(trials);
    for trial in 0..trials {
        let start = StateVector::random(family.n(), &mut rng);
        let e = random_hermitian_scaled(dim, delta, &mut rng)?;
        let unperturbed = matrix_path_final(&h0, &hf, &zero, t, start.amps())?;
        let perturbed = matrix_path_final(&h0, &hf, &e, t, start.amps())?;
        let distance = unperturbed
            .iter()
            .zip(perturbed.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if distance > bound + tol {
            return Err(Error::DiagnosticFailure(format!(
                "trial {trial}: distance {distance} exceeds √(2Tδ) + {tol} = {}",
                bound + tol
            )));
        }
        rows.push(Lemma1Trial { trial, distance, bound });
    }
    Ok(Lemma1Report { trials: rows, t, delta, seed })
}
