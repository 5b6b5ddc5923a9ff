//! Schrödinger integration of the interpolation path under a delay schedule.
//!
//! The evolution is integrated in the dimensionless path variable s rather
//! than wall-clock time: with a delay factor τ(s) > 0 the equation becomes
//!
//!   dψ/ds = −i · τ(s) · H(s) · ψ,   s ∈ [0, 1],
//!
//! and the physical run time is the total delay T = ∫₀¹ τ(s) ds. A constant
//! schedule has τ ≡ T; the gap-adaptive schedule τ(s) = c/g(s)² concentrates
//! delay where the gap is small, which for the search family brings the
//! total delay down to the quadratic-speedup scale √2ⁿ.
//!
//! Integration is fixed-step classical Runge-Kutta (4th order) with the step
//! count doubled until the final state moves by less than 1e−6, with the
//! norm drift of the unrenormalized state as the accuracy witness.

use crate::error::{Error, Result};
use crate::hamiltonian::{Backend, ProblemFamily, STATE_LIMIT};
use crate::state::{StateBasis, StateVector};
use crate::walsh::fwht_complex;
use ndarray::Array1;
use num_complex::Complex64;
use serde_json::{json, Value};

/// Largest qubit count for matrix-free dense-backend integration (the state
/// vector itself is the limit, not a dense operator).
pub const EVOLVE_LIMIT: usize = 20;

const MAX_STEPS: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScheduleKind {
    Constant,
    Adaptive,
    Custom,
}

/// A delay profile τ(s) with its total delay ∫₀¹ τ(s) ds.
pub struct Schedule {
    kind: ScheduleKind,
    tau: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    total_delay: f64,
    doc: Value,
}

impl Schedule {
    pub fn kind(&self) -> ScheduleKind {
        self.kind
    }

    pub fn tau(&self, s: f64) -> f64 {
        (self.tau)(s)
    }

    pub fn total_delay(&self) -> f64 {
        self.total_delay
    }

    /// JSON description: {"kind": ..., parameters...}.
    pub fn doc(&self) -> Value {
        self.doc.clone()
    }
}

/// τ ≡ T.
pub fn make_constant_schedule(t: f64) -> Result<Schedule> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("total delay must be positive, got {t}")));
    }
    Ok(Schedule {
        kind: ScheduleKind::Constant,
        tau: Box::new(move |_| t),
        total_delay: t,
        doc: json!({"kind": "constant", "T": t}),
    })
}

/// τ(s) = c/g(s)², with the total delay computed by adaptive quadrature to
/// 1e−8 relative accuracy. The gap function must stay strictly positive.
pub fn make_adaptive_schedule(
    gap_fn: impl Fn(f64) -> f64 + Send + Sync + 'static,
    c: f64,
) -> Result<Schedule> {
    if !(c > 0.0) {
        return Err(Error::Domain(format!("adiabaticity constant must be positive, got {c}")));
    }
    let tau = move |s: f64| -> Result<f64> {
        let g = gap_fn(s);
        if !(g > 0.0) {
            return Err(Error::SingularSchedule(format!(
                "gap is {g} at s = {s}; adaptive delay undefined"
            )));
        }
        Ok(c / (g * g))
    };
    let total_delay = adaptive_quadrature(&tau, 1e-8)?;
    Ok(Schedule {
        kind: ScheduleKind::Adaptive,
        tau: Box::new(move |s| tau(s).expect("positivity checked over [0,1] during quadrature")),
        total_delay,
        doc: json!({"kind": "adaptive", "c": c}),
    })
}

/// An arbitrary positive delay profile; the label lands in the JSON doc.
pub fn make_custom_schedule(
    tau_fn: impl Fn(f64) -> f64 + Send + Sync + 'static,
    label: &str,
) -> Result<Schedule> {
    let tau = move |s: f64| -> Result<f64> {
        let t = tau_fn(s);
        if !(t > 0.0) {
            return Err(Error::SingularSchedule(format!("τ({s}) = {t} is not positive")));
        }
        Ok(t)
    };
    let total_delay = adaptive_quadrature(&tau, 1e-8)?;
    Ok(Schedule {
        kind: ScheduleKind::Custom,
        tau: Box::new(move |s| tau(s).expect("positivity checked over [0,1] during quadrature")),
        total_delay,
        doc: json!({"kind": "custom", "label": label}),
    })
}

/// ∫₀¹ f ds by adaptive Simpson with Richardson correction; `rel_tol` is
/// relative to the running estimate.
fn adaptive_quadrature(f: &dyn Fn(f64) -> Result<f64>, rel_tol: f64) -> Result<f64> {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> Result<f64>,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        eps: f64,
        depth: usize,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm)?;
        let frm = f(rm)?;
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if depth == 0 {
            return Err(Error::Accuracy(format!(
                "quadrature failed to converge near [{a}, {b}]"
            )));
        }
        if delta.abs() <= 15.0 * eps {
            return Ok(left + right + delta / 15.0);
        }
        Ok(recurse(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)?
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)?)
    }

    let fa = f(0.0)?;
    let fm = f(0.5)?;
    let fb = f(1.0)?;
    let whole = simpson(fa, fm, fb, 1.0);
    // Scale the absolute tolerance off the coarse estimate, floored away
    // from zero to keep the criterion meaningful for tiny integrals.
    let eps = rel_tol * whole.abs().max(1e-3);
    recurse(f, 0.0, 1.0, fa, fm, fb, whole, eps, 48)
}

/// Total adaptive delay of the search family at c = 1:
/// 2ⁿ·arctan(√(2ⁿ−1))/√(2ⁿ−1).
pub fn closed_form_search_delay(n: usize) -> Result<f64> {
    if n == 0 || n > 1024 {
        return Err(Error::Domain(format!("qubit count {n} outside 1..=1024")));
    }
    let big = 2.0f64.powi(n as i32);
    let root = (big - 1.0).sqrt();
    Ok(big * root.atan() / root)
}

/// Matrix-free application of H(s) for a backend.
enum Propagator {
    /// H(s)ψ = (1−s)·WΛ_hWψ + s·f∘ψ via two in-place transforms; O(n·2ⁿ).
    DenseFwht { dim: usize, h_table: Vec<f64>, f_table: Vec<f64> },
    /// Tridiagonal symmetric-subspace action; O(n).
    DickeTridiag { n: usize, offdiag: Vec<f64>, f_table: Vec<f64> },
}

impl Propagator {
    fn new(family: &ProblemFamily, backend: Backend) -> Result<Self> {
        let n = family.n();
        match backend {
            Backend::Dense => {
                if n > EVOLVE_LIMIT {
                    return Err(Error::Capacity(format!(
                        "n = {n} exceeds the dense-evolution limit {EVOLVE_LIMIT}"
                    )));
                }
                debug_assert!(n <= STATE_LIMIT);
                let dim = 1usize << n;
                let h_table = (0..dim).map(|z| family.initial_cost().eval(z)).collect();
                let f_table = (0..dim).map(|z| family.cost().eval(z)).collect();
                Ok(Propagator::DenseFwht { dim, h_table, f_table })
            }
            Backend::Dicke => {
                // Validates weight symmetry and the h = w requirement.
                crate::hamiltonian::build_dicke_reduction(family, 0.0)?;
                let offdiag = (0..n)
                    .map(|k| -(((k + 1) * (n - k)) as f64).sqrt() / 2.0)
                    .collect();
                let f_table = (0..=n)
                    .map(|k| family.cost().eval_weight(k).expect("weight-symmetric"))
                    .collect();
                Ok(Propagator::DickeTridiag { n, offdiag, f_table })
            }
        }
    }

    fn dim(&self) -> usize {
        match self {
            Propagator::DenseFwht { dim, .. } => *dim,
            Propagator::DickeTridiag { n, .. } => n + 1,
        }
    }

    fn initial_state(&self) -> Array1<Complex64> {
        match self {
            Propagator::DenseFwht { dim, .. } => {
                Array1::from_elem(*dim, Complex64::new(1.0 / (*dim as f64).sqrt(), 0.0))
            }
            Propagator::DickeTridiag { n, .. } => {
                let scale = 0.5f64.powi(*n as i32);
                Array1::from_iter((0..=*n).map(|k| {
                    Complex64::new((crate::bits::binomial(*n, k) as f64 * scale).sqrt(), 0.0)
                }))
            }
        }
    }

    /// out = H(s)·v.
    fn apply(&self, s: f64, v: &Array1<Complex64>, out: &mut Array1<Complex64>) {
        match self {
            Propagator::DenseFwht { dim, h_table, f_table } => {
                out.assign(v);
                let buf = out.as_slice_mut().expect("contiguous");
                fwht_complex(buf);
                for (x, h) in buf.iter_mut().zip(h_table) {
                    *x *= *h;
                }
                fwht_complex(buf);
                let a = 1.0 - s;
                for z in 0..*dim {
                    out[z] = a * out[z] + s * f_table[z] * v[z];
                }
            }
            Propagator::DickeTridiag { n, offdiag, f_table } => {
                let a = 1.0 - s;
                let half_n = *n as f64 / 2.0;
                for k in 0..=*n {
                    let mut acc = (a * half_n + s * f_table[k]) * v[k];
                    if k > 0 {
                        acc += a * offdiag[k - 1] * v[k - 1];
                    }
                    if k < *n {
                        acc += a * offdiag[k] * v[k + 1];
                    }
                    out[k] = acc;
                }
            }
        }
    }

    fn state_basis(&self, n: usize) -> StateBasis {
        match self {
            Propagator::DenseFwht { .. } => StateBasis::Computational { n },
            Propagator::DickeTridiag { .. } => StateBasis::Dicke { n },
        }
    }
}

/// Final state and accuracy witnesses of one integration run.
#[derive(Clone, Debug)]
pub struct EvolutionResult {
    pub final_state: StateVector,
    /// max over the run of |‖ψ‖ − 1| (no renormalization is applied).
    pub norm_drift: f64,
    /// |⟨ground of H(1)|ψ(1)⟩|².
    pub overlap_ground: f64,
    /// Accepted step count.
    pub steps: usize,
}

/// JSON document for a run: family, schedule, delay, and outcome scalars.
pub fn run_doc(family: &ProblemFamily, schedule: &Schedule, result: &EvolutionResult) -> Value {
    json!({
        "family": family.to_doc(),
        "schedule": schedule.doc(),
        "total_delay": schedule.total_delay(),
        "overlap_ground": result.overlap_ground,
        "norm_drift": result.norm_drift,
        "steps": result.steps,
    })
}

struct Rk4Buffers {
    k1: Array1<Complex64>,
    k2: Array1<Complex64>,
    k3: Array1<Complex64>,
    k4: Array1<Complex64>,
    tmp: Array1<Complex64>,
}

impl Rk4Buffers {
    fn new(dim: usize) -> Self {
        let zero = Array1::from_elem(dim, Complex64::new(0.0, 0.0));
        Rk4Buffers { k1: zero.clone(), k2: zero.clone(), k3: zero.clone(), k4: zero.clone(), tmp: zero }
    }
}

/// One fixed-step run; returns (final amplitudes, max norm drift).
fn run_fixed(
    prop: &Propagator,
    schedule: &Schedule,
    steps: usize,
    initial: &Array1<Complex64>,
) -> (Array1<Complex64>, f64) {
    let dim = prop.dim();
    let mut psi = initial.clone();
    let mut bufs = Rk4Buffers::new(dim);
    let h = 1.0 / steps as f64;
    let mut max_drift = 0.0f64;

    // rhs(s, v) = −i·τ(s)·H(s)·v, written into `out`.
    let rhs = |s: f64, v: &Array1<Complex64>, out: &mut Array1<Complex64>| {
        prop.apply(s, v, out);
        let factor = Complex64::new(0.0, -schedule.tau(s));
        for x in out.iter_mut() {
            *x *= factor;
        }
    };

    for j in 0..steps {
        let s0 = j as f64 / steps as f64;
        let s_mid = (j as f64 + 0.5) / steps as f64;
        let s1 = (j + 1) as f64 / steps as f64;

        rhs(s0, &psi, &mut bufs.k1);
        for i in 0..dim {
            bufs.tmp[i] = psi[i] + 0.5 * h * bufs.k1[i];
        }
        rhs(s_mid, &bufs.tmp, &mut bufs.k2);
        for i in 0..dim {
            bufs.tmp[i] = psi[i] + 0.5 * h * bufs.k2[i];
        }
        rhs(s_mid, &bufs.tmp, &mut bufs.k3);
        for i in 0..dim {
            bufs.tmp[i] = psi[i] + h * bufs.k3[i];
        }
        rhs(s1, &bufs.tmp, &mut bufs.k4);
        let w = h / 6.0;
        for i in 0..dim {
            psi[i] += w * (bufs.k1[i] + 2.0 * (bufs.k2[i] + bufs.k3[i]) + bufs.k4[i]);
        }
        let norm = psi.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        max_drift = max_drift.max((norm - 1.0).abs());
    }
    (psi, max_drift)
}

fn l2_distance(a: &Array1<Complex64>, b: &Array1<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Ground state of H(1) without an eigensolve: H(1) is diagonal, so scan the
/// cost table for its unique minimizer.
fn final_ground_index(family: &ProblemFamily, prop: &Propagator) -> Result<usize> {
    let values: Vec<f64> = match prop {
        Propagator::DenseFwht { dim, .. } => (0..*dim).map(|z| family.cost().eval(z)).collect(),
        Propagator::DickeTridiag { n, .. } => (0..=*n)
            .map(|k| family.cost().eval_weight(k).expect("weight-symmetric"))
            .collect(),
    };
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = i;
        }
    }
    let near = values
        .iter()
        .filter(|v| (**v - values[best]).abs() < 1e-12)
        .count();
    if near > 1 {
        return Err(Error::DegenerateGround(format!(
            "{near} states share the minimum cost {}",
            values[best]
        )));
    }
    Ok(best)
}

/// Step-doubling convergence loop shared by the public runs and the gate
/// comparisons: doubles the count until the final state moves by less than
/// 1e−6 and the norm drift stays within 1e−6.
fn converge(
    prop: &Propagator,
    schedule: &Schedule,
    steps: usize,
    initial: &Array1<Complex64>,
) -> Result<(Array1<Complex64>, f64, usize)> {
    let mut m = steps.max(1);
    let (mut psi, _) = run_fixed(prop, schedule, m, initial);
    loop {
        if 2 * m > MAX_STEPS {
            return Err(Error::Accuracy(format!(
                "integration did not converge within {MAX_STEPS} steps \
                 (last change at {m} steps)"
            )));
        }
        let (next, drift) = run_fixed(prop, schedule, 2 * m, initial);
        let change = l2_distance(&next, &psi);
        psi = next;
        m *= 2;
        if change < 1e-6 && drift <= 1e-6 {
            return Ok((psi, drift, m));
        }
    }
}

/// Converged final amplitudes of the true path under a constant delay, from
/// an arbitrary start; the reference oracle for the gate-level comparisons.
pub(crate) fn reference_final_state(
    family: &ProblemFamily,
    t: f64,
    backend: Backend,
    initial: &Array1<Complex64>,
    steps: usize,
) -> Result<Array1<Complex64>> {
    let schedule = make_constant_schedule(t)?;
    let prop = Propagator::new(family, backend)?;
    if initial.len() != prop.dim() {
        return Err(Error::Shape(format!(
            "initial state has dim {}, backend needs {}",
            initial.len(),
            prop.dim()
        )));
    }
    Ok(converge(&prop, &schedule, steps, initial)?.0)
}

/// Integrate the path from the uniform superposition, doubling `steps` until
/// the final state moves by less than 1e−6 between consecutive runs and the
/// norm drift stays within 1e−6.
pub fn integrate(
    family: &ProblemFamily,
    schedule: &Schedule,
    backend: Backend,
    steps: usize,
) -> Result<EvolutionResult> {
    let prop = Propagator::new(family, backend)?;
    let ground_index = final_ground_index(family, &prop)?;
    let initial = prop.initial_state();
    let (psi, drift, m) = converge(&prop, schedule, steps, &initial)?;
    let overlap_ground = psi[ground_index].norm_sqr();
    let final_state = StateVector::new_unchecked(psi, prop.state_basis(family.n()));
    Ok(EvolutionResult { final_state, norm_drift: drift, overlap_ground, steps: m })
}

/// Instantaneous ground state of H(s) in the chosen backend.
pub fn ground_state(family: &ProblemFamily, s: f64, backend: Backend) -> Result<StateVector> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("interpolation parameter s = {s} outside [0, 1]")));
    }
    let op = match backend {
        Backend::Dense => {
            let (h0, hf) = crate::hamiltonian::dense_hamiltonians(family)?;
            crate::hamiltonian::interpolate(&h0, &hf, s)?
        }
        Backend::Dicke => crate::hamiltonian::build_dicke_reduction(family, s)?,
    };
    let (_, state) = crate::spectral::ground_state(&op)?;
    Ok(state)
}

/// |⟨target|final⟩|².
pub fn success_probability(result: &EvolutionResult, target: &StateVector) -> Result<f64> {
    Ok(result.final_state.overlap(target)?.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{make_family, FamilySpec};
    use crate::spectral::closed_form_search_gap;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn constant_schedule_basics() {
        let s = make_constant_schedule(10.0).unwrap();
        assert_eq!(s.kind(), ScheduleKind::Constant);
        assert_abs_diff_eq!(s.total_delay(), 10.0);
        assert_abs_diff_eq!(s.tau(0.3), 10.0);
        assert!(matches!(make_constant_schedule(0.0), Err(Error::Domain(_))));
        assert!(matches!(make_constant_schedule(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn adaptive_schedule_search_closed_form() {
        let s1 = make_adaptive_schedule(|s| closed_form_search_gap(1, s).unwrap(), 1.0).unwrap();
        assert_abs_diff_eq!(s1.total_delay(), FRAC_PI_2, epsilon = 1e-8);
        let s2 = make_adaptive_schedule(|s| closed_form_search_gap(2, s).unwrap(), 1.0).unwrap();
        assert_abs_diff_eq!(s2.total_delay(), 2.4183991523122903, epsilon = 1e-8);
    }

    #[test]
    fn adaptive_schedule_matches_closed_form_across_sizes() {
        for n in 1..=12 {
            for c in [1.0, 5.0] {
                let sched =
                    make_adaptive_schedule(move |s| closed_form_search_gap(n, s).unwrap(), c)
                        .unwrap();
                let expect = c * closed_form_search_delay(n).unwrap();
                assert!(
                    (sched.total_delay() - expect).abs() <= 1e-6 * expect,
                    "n = {n}, c = {c}: {} vs {expect}",
                    sched.total_delay()
                );
            }
        }
    }

    #[test]
    fn adaptive_schedule_rejects_vanishing_gap() {
        let r = make_adaptive_schedule(|s| s - 0.5, 1.0);
        assert!(matches!(r, Err(Error::SingularSchedule(_))));
        assert!(matches!(
            make_adaptive_schedule(|_| 1.0, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn closed_form_delay_values() {
        assert_abs_diff_eq!(closed_form_search_delay(1).unwrap(), FRAC_PI_2, epsilon = 1e-15);
        // Quadratic-speedup scale: value/√2ⁿ approaches π/2.
        let n = 20;
        let scaled = closed_form_search_delay(n).unwrap() / 2.0f64.powf(n as f64 / 2.0);
        assert!((scaled - FRAC_PI_2).abs() / FRAC_PI_2 < 0.01, "scaled = {scaled}");
    }

    #[test]
    fn integrate_hamming_constant_delay_succeeds() {
        let fam = make_family(&FamilySpec::HammingWeight, 4).unwrap();
        let sched = make_constant_schedule(30.0).unwrap();
        for backend in [Backend::Dense, Backend::Dicke] {
            let r = integrate(&fam, &sched, backend, 64).unwrap();
            assert!(r.overlap_ground >= 0.99, "{backend:?}: {}", r.overlap_ground);
            assert!(r.norm_drift <= 1e-6);
            assert!(r.overlap_ground <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn integrate_search_adaptive_succeeds() {
        let n = 6;
        let u = 0b010110;
        let fam = make_family(&FamilySpec::Search { u }, n).unwrap();
        let sched =
            make_adaptive_schedule(move |s| closed_form_search_gap(n, s).unwrap(), 5.0).unwrap();
        let r = integrate(&fam, &sched, Backend::Dense, 256).unwrap();
        assert!(r.overlap_ground >= 0.9, "overlap = {}", r.overlap_ground);
        assert!(r.norm_drift <= 1e-6);
        // overlap_ground is the probability of the target string
        let target = StateVector::basis_state(n, u).unwrap();
        let p = success_probability(&r, &target).unwrap();
        assert_abs_diff_eq!(p, r.overlap_ground, epsilon = 1e-12);
    }

    #[test]
    fn vanishing_delay_leaves_the_state_in_place() {
        let fam = make_family(&FamilySpec::HammingWeight, 3).unwrap();
        let sched = make_constant_schedule(1e-3).unwrap();
        let r = integrate(&fam, &sched, Backend::Dense, 1).unwrap();
        let uniform = StateVector::uniform(3);
        let stay = r.final_state.overlap(&uniform).unwrap().norm_sqr();
        assert!(stay >= 0.999, "stay = {stay}");
    }

    #[test]
    fn ground_state_examples() {
        let fam = make_family(&FamilySpec::HammingWeight, 3).unwrap();
        let gs0 = ground_state(&fam, 0.0, Backend::Dense).unwrap();
        let uniform = StateVector::uniform(3);
        assert!((gs0.overlap(&uniform).unwrap().norm() - 1.0).abs() < 1e-10);
        let gs1 = ground_state(&fam, 1.0, Backend::Dense).unwrap();
        assert!((gs1.amps()[0].norm() - 1.0).abs() < 1e-10);
        // Dicke frame: s = 0 ground is the binomial-amplitude vector.
        let gd = ground_state(&fam, 0.0, Backend::Dicke).unwrap();
        let du = StateVector::dicke_uniform(3);
        assert!((gd.overlap(&du).unwrap().norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn success_probability_edges() {
        let fam = make_family(&FamilySpec::HammingWeight, 2).unwrap();
        let sched = make_constant_schedule(20.0).unwrap();
        let r = integrate(&fam, &sched, Backend::Dense, 64).unwrap();
        let p_self = success_probability(&r, &r.final_state).unwrap();
        assert_abs_diff_eq!(p_self, 1.0, epsilon = 1e-9);
        // The run ends almost exactly at |00⟩, so |11⟩ carries ~nothing.
        let far = StateVector::basis_state(2, 3).unwrap();
        assert!(success_probability(&r, &far).unwrap() < 1e-3);
        let wrong_dim = StateVector::basis_state(3, 0).unwrap();
        assert!(success_probability(&r, &wrong_dim).is_err());
    }

    #[test]
    fn success_monotone_in_adiabaticity_constant() {
        let n = 4;
        let u = 0b1010;
        let fam = make_family(&FamilySpec::Search { u }, n).unwrap();
        let mut last = -1.0f64;
        for c in [0.5, 1.0, 2.0, 4.0, 8.0] {
            let sched =
                make_adaptive_schedule(move |s| closed_form_search_gap(n, s).unwrap(), c).unwrap();
            let r = integrate(&fam, &sched, Backend::Dense, 128).unwrap();
            assert!(
                r.overlap_ground >= last - 0.02,
                "c = {c}: {} after {last}",
                r.overlap_ground
            );
            last = r.overlap_ground;
        }
        assert!(last > 0.9);
    }

    #[test]
    fn spike_fails_at_polynomial_delay_where_weight_succeeds() {
        let n = 8;
        let t = 10.0 * (n * n) as f64;
        let sched = make_constant_schedule(t).unwrap();
        let spike = make_family(&FamilySpec::PerturbedSpike, n).unwrap();
        let r_spike = integrate(&spike, &sched, Backend::Dicke, 1024).unwrap();
        assert!(r_spike.overlap_ground < 0.5, "spike overlap = {}", r_spike.overlap_ground);
        let weight = make_family(&FamilySpec::HammingWeight, n).unwrap();
        let r_weight = integrate(&weight, &sched, Backend::Dicke, 1024).unwrap();
        assert!(r_weight.overlap_ground >= 0.99, "weight overlap = {}", r_weight.overlap_ground);
    }

    #[test]
    fn run_doc_shape() {
        let fam = make_family(&FamilySpec::HammingWeight, 2).unwrap();
        let sched = make_constant_schedule(5.0).unwrap();
        let r = integrate(&fam, &sched, Backend::Dense, 32).unwrap();
        let doc = run_doc(&fam, &sched, &r);
        assert_eq!(doc["family"]["family"], "hamming_weight");
        assert_eq!(doc["schedule"]["kind"], "constant");
        assert!(doc["total_delay"].as_f64().unwrap() > 0.0);
        assert!(doc["overlap_ground"].as_f64().is_some());
        assert!(doc["norm_drift"].as_f64().is_some());
        assert!(doc["steps"].as_u64().is_some());
    }

    #[test]
    fn degenerate_final_ground_is_rejected() {
        // Two strings share the minimum cost.
        let values = vec![0.0, 0.0, 1.0, 1.0];
        let cost = crate::hamiltonian::CostFunction::dense(2, values).unwrap();
        let initial = crate::hamiltonian::CostFunction::hamming_weight(2).unwrap();
        let fam = crate::hamiltonian::ProblemFamily::new(cost, initial).unwrap();
        let sched = make_constant_schedule(1.0).unwrap();
        assert!(matches!(
            integrate(&fam, &sched, Backend::Dense, 8),
            Err(Error::DegenerateGround(_))
        ));
    }
}
