//! Eigenanalysis of interpolation paths: gap curves, minimum-gap search,
//! operator norms, the closed-form gaps of the two solvable families, and
//! the rank-one A/B diagnostic behind the exponential lower bound.
//!
//! The diagnostic views the perturbed-weight path in the eigenbasis of the
//! unperturbed weight path H_w(s). There the Hamiltonian becomes
//! A = diag(λ_y) − s(n+1)·qq†, a diagonal matrix with a rank-one dent whose
//! vector q has exponentially small overlap with the ground direction.
//! Erasing the first row and column off-diagonals gives B, which keeps A₁₁
//! as an exact eigenvalue; at the critical s_c where B's lower block dips
//! below A₁₁, B has a degenerate bottom, and Weyl's inequality turns the
//! small ‖A−B‖ into a small gap of A itself.

use crate::bits::{binomial, weight};
use crate::error::{Error, Result};
use crate::hamiltonian::{
    build_dicke_reduction, dense_hamiltonians, make_family, Backend, Basis, FamilySpec, FamilyTag,
    HermitianOperator, ProblemFamily, DENSE_LIMIT,
};
use crate::linalg;
use crate::state::{StateBasis, StateVector};
use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// Gap data over a grid of interpolation parameters.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub s_grid: Vec<f64>,
    pub lambda0: Vec<f64>,
    pub lambda1: Vec<f64>,
    pub gap: Vec<f64>,
    /// Location of the minimum gap, refined off-grid.
    pub s_star: f64,
    pub g_min: f64,
    /// max_s ‖dH/ds‖ = ‖H_f − H₀‖ (the path is linear in s).
    pub delta_max: f64,
}

impl SpectralReport {
    /// CSV rows `s,lambda0,lambda1,gap`, floats at 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,lambda0,lambda1,gap\n");
        for i in 0..self.s_grid.len() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                crate::fmt::g17(self.s_grid[i]),
                crate::fmt::g17(self.lambda0[i]),
                crate::fmt::g17(self.lambda1[i]),
                crate::fmt::g17(self.gap[i]),
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        crate::fmt::to_json_g17(self)
    }
}

/// Outcome of the rank-one critical-point diagnostic at s_c.
#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundDiagnostic {
    pub n: usize,
    pub s_c: f64,
    /// ‖A−B‖ at s_c: s(n+1)·q₀·√(1−q₀²), the norm of the erased border.
    #[serde(rename = "norm_AB")]
    pub norm_ab: f64,
    /// Gap of A at s_c (equal to the path gap, A being a rotation of H(s)).
    pub gap_at_sc: f64,
    /// s_c·(n+1)/√(2^{n−3}).
    pub bound: f64,
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian
/// operator; column k of the returned matrix is the k-th eigenvector, with
/// the first non-negligible component made real positive so the output is
/// deterministic.
pub fn eigh(h: &HermitianOperator) -> Result<(Vec<f64>, Array2<Complex64>)> {
    let dim = h.dim();
    let mut vectors = Array2::from_elem((dim, dim), Complex64::new(0.0, 0.0));
    let values = if h.is_real() {
        let mut buf = h.real_buffer();
        let (values, vecs) = linalg::sym_eigen_inplace(&mut buf, dim)?;
        for k in 0..dim {
            for i in 0..dim {
                vectors[[i, k]] = Complex64::new(vecs[k * dim + i], 0.0);
            }
        }
        values
    } else {
        let mut buf = h.complex_buffer();
        let (values, vecs) = linalg::herm_eigen_inplace(&mut buf, dim, true)?;
        let vecs = vecs.expect("vectors requested");
        for k in 0..dim {
            for i in 0..dim {
                vectors[[i, k]] = vecs[k * dim + i];
            }
        }
        values
    };
    for k in 0..dim {
        let mut phase = None;
        for i in 0..dim {
            let v = vectors[[i, k]];
            if v.norm() > 1e-12 {
                phase = Some(v / v.norm());
                break;
            }
        }
        if let Some(p) = phase {
            let adjust = p.conj();
            for i in 0..dim {
                vectors[[i, k]] *= adjust;
            }
        }
    }
    Ok((values, vectors))
}

/// Lowest eigenpair as a state vector; the basis tag carries over.
pub fn ground_state(h: &HermitianOperator) -> Result<(f64, StateVector)> {
    let (values, vectors) = eigh(h)?;
    let dim = h.dim();
    if dim > 1 && values[1] - values[0] < 1e-12 {
        return Err(Error::DegenerateGround(format!(
            "two lowest eigenvalues coincide: {} and {}",
            values[0], values[1]
        )));
    }
    let amps = Array1::from_iter((0..dim).map(|i| vectors[[i, 0]]));
    let basis = match h.basis() {
        Basis::Dicke => StateBasis::Dicke { n: dim - 1 },
        _ => {
            let n = dim.trailing_zeros() as usize;
            StateBasis::Computational { n }
        }
    };
    Ok((values[0], StateVector::new(amps, basis)?))
}

/// max |eigenvalue| of a Hermitian operator (its ℓ2-induced norm).
pub fn operator_norm(h: &HermitianOperator) -> Result<f64> {
    let dim = h.dim();
    let values = if h.is_real() {
        let mut buf = h.real_buffer();
        linalg::sym_eigenvalues_inplace(&mut buf, dim)?
    } else {
        let mut buf = h.complex_buffer();
        linalg::herm_eigen_inplace(&mut buf, dim, false)?.0
    };
    Ok(values[0].abs().max(values[dim - 1].abs()))
}

/// Optimal matching distance between two real spectra: with both sorted
/// ascending, the sorted pairing minimizes the max pairwise distance over
/// all permutations, so this equals min_π max_i |a_i − b_{π(i)}|.
pub fn matching_distance(spec_a: &[f64], spec_b: &[f64]) -> Result<f64> {
    if spec_a.len() != spec_b.len() {
        return Err(Error::Shape(format!(
            "spectra have different lengths: {} vs {}",
            spec_a.len(),
            spec_b.len()
        )));
    }
    let mut a = spec_a.to_vec();
    let mut b = spec_b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    Ok(a.iter().zip(&b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())))
}

fn check_unit_interval(s: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("interpolation parameter s = {s} outside [0, 1]")));
    }
    Ok(())
}

/// Gap of the search path: √((2ⁿ + 4(2ⁿ−1)(s²−s))/2ⁿ), minimum 2^{−n/2} at
/// s = ½.
pub fn closed_form_search_gap(n: usize, s: f64) -> Result<f64> {
    if n == 0 || n > 1024 {
        return Err(Error::Domain(format!("qubit count {n} outside 1..=1024")));
    }
    check_unit_interval(s)?;
    let inv = 0.5f64.powi(n as i32);
    Ok((1.0 + 4.0 * (1.0 - inv) * (s * s - s)).sqrt())
}

/// Gap of the Hamming-weight path: √(2s²−2s+1), independent of n, minimum
/// 1/√2 at s = ½.
pub fn closed_form_weight_gap(s: f64) -> Result<f64> {
    check_unit_interval(s)?;
    Ok((2.0 * s * s - 2.0 * s + 1.0).sqrt())
}

/// Two-level building block shared by the diagnostic: eigen-data of the
/// single-qubit path matrix ½[[1−s, s−1], [s−1, 1+s]].
#[derive(Clone, Copy, Debug)]
struct TwoLevel {
    lambda0: f64,
    lambda1: f64,
    /// Second component of the ground eigenvector, (1−s)/N₀.
    a: f64,
    /// Second component of the excited eigenvector, −(s+g)/N₀.
    b: f64,
}

fn two_level(s: f64) -> TwoLevel {
    let g = (2.0 * s * s - 2.0 * s + 1.0).sqrt();
    let n0 = ((s + g) * (s + g) + (1.0 - s) * (1.0 - s)).sqrt();
    TwoLevel {
        lambda0: 0.5 * (1.0 - g),
        lambda1: 0.5 * (1.0 + g),
        a: (1.0 - s) / n0,
        b: -(s + g) / n0,
    }
}

/// |⟨1ⁿ| v₀(s)⊗…⊗v₀(s)⟩|: overlap of the all-ones string with the
/// tensor-power ground state of the weight path. Bounded by 2^{−n/2}.
pub fn all_ones_ground_overlap(n: usize, s: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("qubit count must be ≥ 1".into()));
    }
    check_unit_interval(s)?;
    Ok(two_level(s).a.abs().powi(n as i32))
}

/// The scaling target (n+1)·2^{−(n−3)/2} for the perturbed family's minimum
/// gap.
pub fn spike_gap_bound(n: usize) -> f64 {
    (n + 1) as f64 * 0.5f64.powf((n as f64 - 3.0) / 2.0)
}

/// The perturbed-weight path in the eigenbasis of the unperturbed weight
/// path: A = diag(λ_y) − s(n+1)·qq†, with λ_y = (n−w(y))λ0 + w(y)λ1 and
/// q_y = a^{n−w(y)}·b^{w(y)}.
pub fn build_a(n: usize, s: f64) -> Result<HermitianOperator> {
    if n == 0 {
        return Err(Error::Domain("qubit count must be ≥ 1".into()));
    }
    if n > DENSE_LIMIT {
        return Err(Error::Capacity(format!(
            "n = {n} exceeds the dense-operator limit {DENSE_LIMIT}"
        )));
    }
    check_unit_interval(s)?;
    let tl = two_level(s);
    let dim = 1usize << n;
    let scale = s * (n + 1) as f64;
    let q: Vec<f64> = (0..dim)
        .map(|y| {
            let w = weight(y) as i32;
            tl.a.powi(n as i32 - w) * tl.b.powi(w)
        })
        .collect();
    let mut entries = Array2::from_shape_fn((dim, dim), |(y, x)| {
        Complex64::new(-scale * q[y] * q[x], 0.0)
    });
    for y in 0..dim {
        let w = weight(y) as f64;
        entries[[y, y]] += Complex64::new((n as f64 - w) * tl.lambda0 + w * tl.lambda1, 0.0);
    }
    // The basis is the s-dependent product eigenbasis of the weight path; it
    // coincides with the Hadamard-diagonal basis at s = 0.
    Ok(HermitianOperator::new_unchecked(entries, Basis::HadamardDiagonal))
}

/// A with the first row and column off-diagonals erased; |0…0⟩ becomes an
/// exact eigenvector with eigenvalue A₁₁.
pub fn build_b(a: &HermitianOperator) -> HermitianOperator {
    let dim = a.dim();
    let mut entries = a.entries().clone();
    for j in 1..dim {
        entries[[0, j]] = Complex64::new(0.0, 0.0);
        entries[[j, 0]] = Complex64::new(0.0, 0.0);
    }
    HermitianOperator::new_unchecked(entries, a.basis())
}

/// A₁₁(s) and the minimum eigenvalue of B's lower block, both computed in
/// the weight-collapsed (n+1)-dimensional frame. Within each weight sector
/// the rank-one dent acts only on the q-aligned combination, so the
/// collapsed block diag(λ_k) − s(n+1)·q̃q̃† over k = 1..n (with
/// q̃_k = √C(n,k)·a^{n−k}·b^k) has exactly the lower block's minimum.
fn collapsed_split(n: usize, s: f64) -> Result<(f64, f64)> {
    let tl = two_level(s);
    let scale = s * (n + 1) as f64;
    let q0 = tl.a.powi(n as i32);
    let a11 = n as f64 * tl.lambda0 - scale * q0 * q0;
    let qt: Vec<f64> = (1..=n)
        .map(|k| {
            (binomial(n, k) as f64).sqrt() * tl.a.powi((n - k) as i32) * tl.b.powi(k as i32)
        })
        .collect();
    let mut block = vec![0.0f64; n * n];
    for k in 1..=n {
        for j in 1..=n {
            block[(k - 1) * n + (j - 1)] = -scale * qt[k - 1] * qt[j - 1];
        }
        let kf = k as f64;
        block[(k - 1) * n + (k - 1)] += (n as f64 - kf) * tl.lambda0 + kf * tl.lambda1;
    }
    let values = linalg::sym_eigenvalues_inplace(&mut block, n)?;
    Ok((a11, values[0]))
}

/// Critical parameter where B's lower block dips to A₁₁, by bisection to
/// 1e−9. Works for any n ≤ 64 (the frame is (n+1)-dimensional).
pub(crate) fn critical_s(n: usize) -> Result<f64> {
    if n == 0 || n > 64 {
        return Err(Error::Domain(format!("qubit count {n} outside 1..=64")));
    }
    let phi = |s: f64| -> Result<f64> {
        let (a11, low) = collapsed_split(n, s)?;
        Ok(low - a11)
    };
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let phi_lo = phi(lo)?;
    let phi_hi = phi(hi)?;
    if !(phi_lo > 0.0 && phi_hi < 0.0) {
        return Err(Error::DiagnosticFailure(format!(
            "no level crossing bracketed: φ(0) = {phi_lo}, φ(1) = {phi_hi}"
        )));
    }
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if phi(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Locate s_c and verify the gap chain gap(A) ≤ 2‖A−B‖ ≤ s_c(n+1)/√(2^{n−3})
/// there. The gap of A is read from the symmetric-subspace reduction of the
/// perturbed path (A is a rotation of H(s), so their spectra agree).
pub fn lower_bound_diagnostic(n: usize) -> Result<LowerBoundDiagnostic> {
    if n > DENSE_LIMIT {
        return Err(Error::Capacity(format!(
            "n = {n} exceeds the dense-operator limit {DENSE_LIMIT}"
        )));
    }
    let s_c = critical_s(n)?;
    let tl = two_level(s_c);
    let q0 = tl.a.powi(n as i32);
    let norm_ab = s_c * (n + 1) as f64 * q0 * (1.0 - q0 * q0).sqrt();
    let family = make_family(&FamilySpec::PerturbedSpike, n)?;
    let reduced = build_dicke_reduction(&family, s_c)?;
    let mut buf = reduced.real_buffer();
    let values = linalg::sym_eigenvalues_inplace(&mut buf, n + 1)?;
    let gap_at_sc = values[1] - values[0];
    let bound = s_c * (n + 1) as f64 / (0.5f64.powi(3 - n as i32)).sqrt();
    if gap_at_sc > 2.0 * norm_ab + 1e-9 {
        return Err(Error::DiagnosticFailure(format!(
            "gap at s_c = {gap_at_sc} exceeds 2‖A−B‖ = {}",
            2.0 * norm_ab
        )));
    }
    if gap_at_sc > bound + 1e-9 {
        return Err(Error::DiagnosticFailure(format!(
            "gap at s_c = {gap_at_sc} exceeds the scaling bound {bound}"
        )));
    }
    Ok(LowerBoundDiagnostic { n, s_c, norm_ab, gap_at_sc, bound })
}

/// Per-s evaluator of the two lowest path eigenvalues for a backend.
struct GapEvaluator<'f> {
    family: &'f ProblemFamily,
    backend: Backend,
    /// Dense backend: precomputed H₀ entries (row-major) and f diagonal.
    h0: Vec<f64>,
    f_diag: Vec<f64>,
    dim: usize,
}

impl<'f> GapEvaluator<'f> {
    fn new(family: &'f ProblemFamily, backend: Backend) -> Result<Self> {
        match backend {
            Backend::Dense => {
                let (h0_op, _) = dense_hamiltonians(family)?;
                let dim = h0_op.dim();
                let h0 = h0_op.real_buffer();
                let f_diag = (0..dim).map(|z| family.cost().eval(z)).collect();
                Ok(GapEvaluator { family, backend, h0, f_diag, dim })
            }
            Backend::Dicke => {
                // Validate family support once up front.
                build_dicke_reduction(family, 0.0)?;
                let n = family.n();
                Ok(GapEvaluator {
                    family,
                    backend,
                    h0: Vec::new(),
                    f_diag: Vec::new(),
                    dim: n + 1,
                })
            }
        }
    }

    /// Fill `buf` with H(s) and return its two lowest eigenvalues.
    fn two_lowest(&self, s: f64, buf: &mut Vec<f64>) -> Result<(f64, f64)> {
        buf.clear();
        match self.backend {
            Backend::Dense => {
                buf.extend(self.h0.iter().map(|x| (1.0 - s) * x));
                for z in 0..self.dim {
                    buf[z * self.dim + z] += s * self.f_diag[z];
                }
            }
            Backend::Dicke => {
                let op = build_dicke_reduction(self.family, s)?;
                buf.extend(op.entries().iter().map(|c| c.re));
            }
        }
        let values = linalg::sym_eigenvalues_inplace(buf, self.dim)?;
        Ok((values[0], values[1]))
    }

    fn gap(&self, s: f64, buf: &mut Vec<f64>) -> Result<f64> {
        let (l0, l1) = self.two_lowest(s, buf)?;
        Ok(l1 - l0)
    }

    /// ‖H_f − H₀‖ in this backend's frame.
    fn derivative_norm(&self) -> Result<f64> {
        let mut buf;
        let dim = self.dim;
        match self.backend {
            Backend::Dense => {
                buf = self.h0.iter().map(|x| -x).collect::<Vec<f64>>();
                for z in 0..dim {
                    buf[z * dim + z] += self.f_diag[z];
                }
            }
            Backend::Dicke => {
                let at1 = build_dicke_reduction(self.family, 1.0)?;
                let at0 = build_dicke_reduction(self.family, 0.0)?;
                buf = at1
                    .entries()
                    .iter()
                    .zip(at0.entries().iter())
                    .map(|(x, y)| x.re - y.re)
                    .collect();
            }
        }
        let values = linalg::sym_eigenvalues_inplace(&mut buf, dim)?;
        Ok(values[0].abs().max(values[dim - 1].abs()))
    }
}

/// Golden-section minimization of a unimodal function on [a, b]; returns the
/// best probed point and value.
fn golden_min<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    const INVPHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc < fd { (c, fc) } else { (d, fd) })
}

fn check_grid(s_grid: &[f64]) -> Result<()> {
    if s_grid.is_empty() {
        return Err(Error::Domain("empty s grid".into()));
    }
    for &s in s_grid {
        check_unit_interval(s)?;
    }
    if s_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("s grid must be sorted ascending".into()));
    }
    Ok(())
}

/// Two lowest path eigenvalues over a sorted grid in [0, 1], with the
/// minimum-gap location refined off-grid by golden section (plus a second
/// bracket around the rank-one diagnostic's s_c for perturbed families,
/// whose dip can be far narrower than any reasonable grid).
pub fn gap_curve(family: &ProblemFamily, s_grid: &[f64], backend: Backend) -> Result<SpectralReport> {
    check_grid(s_grid)?;
    let eval = GapEvaluator::new(family, backend)?;
    let pairs: Vec<(f64, f64)> = s_grid
        .par_iter()
        .map_init(Vec::new, |buf, &s| eval.two_lowest(s, buf))
        .collect::<Result<_>>()?;
    let lambda0: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let lambda1: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let gap: Vec<f64> = pairs.iter().map(|p| p.1 - p.0).collect();

    let (s_star, g_min) = refine_minimum(&eval, s_grid, &gap, 1e-7)?;
    let delta_max = eval.derivative_norm()?;
    Ok(SpectralReport {
        s_grid: s_grid.to_vec(),
        lambda0,
        lambda1,
        gap,
        s_star,
        g_min,
        delta_max,
    })
}

fn refine_minimum(
    eval: &GapEvaluator,
    s_grid: &[f64],
    gap: &[f64],
    tol_s: f64,
) -> Result<(f64, f64)> {
    let mut best_i = 0;
    for (i, g) in gap.iter().enumerate() {
        if *g < gap[best_i] {
            best_i = i;
        }
    }
    let mut s_star = s_grid[best_i];
    let mut g_min = gap[best_i];
    let mut buf = Vec::new();
    if s_grid.len() > 1 {
        let lo = s_grid[best_i.saturating_sub(1)];
        let hi = s_grid[(best_i + 1).min(s_grid.len() - 1)];
        if hi > lo {
            let (s_r, g_r) = golden_min(|s| eval.gap(s, &mut buf), lo, hi, tol_s)?;
            if g_r < g_min {
                s_star = s_r;
                g_min = g_r;
            }
        }
    }
    if let FamilyTag::Perturbed { .. } = eval.family.cost().family_tag() {
        let s_c = critical_s(eval.family.n())?;
        let half_width = 0.02f64;
        let lo = (s_c - half_width).max(0.0);
        let hi = (s_c + half_width).min(1.0);
        let (s_r, g_r) = golden_min(|s| eval.gap(s, &mut buf), lo, hi, tol_s)?;
        if g_r < g_min {
            s_star = s_r;
            g_min = g_r;
        }
    }
    Ok((s_star, g_min))
}

/// Standard 101-point grid over [0, 1].
pub fn default_grid() -> Vec<f64> {
    (0..=100).map(|i| i as f64 / 100.0).collect()
}

/// Owned s ↦ gap(s) closure for schedule construction. Family and backend
/// are validated here; the returned closure performs one eigensolve per
/// call, so keep it to small dimensions (adaptive schedules need hundreds
/// of evaluations during quadrature).
pub fn gap_function(
    family: &ProblemFamily,
    backend: Backend,
) -> Result<Box<dyn Fn(f64) -> f64 + Send + Sync>> {
    match backend {
        Backend::Dense => {
            let (h0_op, _) = dense_hamiltonians(family)?;
            let dim = h0_op.dim();
            let h0 = h0_op.real_buffer();
            let f_diag: Vec<f64> = (0..dim).map(|z| family.cost().eval(z)).collect();
            Ok(Box::new(move |s| {
                let mut buf: Vec<f64> = h0.iter().map(|x| (1.0 - s) * x).collect();
                for z in 0..dim {
                    buf[z * dim + z] += s * f_diag[z];
                }
                let values = linalg::sym_eigenvalues_inplace(&mut buf, dim)
                    .expect("eigensolve of a finite symmetric matrix");
                values[1] - values[0]
            }))
        }
        Backend::Dicke => {
            build_dicke_reduction(family, 0.0)?;
            let family = family.clone();
            let dim = family.n() + 1;
            Ok(Box::new(move |s| {
                let op = build_dicke_reduction(&family, s).expect("family validated above");
                let mut buf: Vec<f64> = op.entries().iter().map(|c| c.re).collect();
                let values = linalg::sym_eigenvalues_inplace(&mut buf, dim)
                    .expect("eigensolve of a finite symmetric matrix");
                values[1] - values[0]
            }))
        }
    }
}

/// Grid + golden-section minimum of the gap: (s_star, g_min).
pub fn min_gap(family: &ProblemFamily, backend: Backend, tol_s: f64) -> Result<(f64, f64)> {
    if !(tol_s > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol_s}")));
    }
    let eval = GapEvaluator::new(family, backend)?;
    let grid = default_grid();
    let mut buf = Vec::new();
    let gap: Vec<f64> = grid
        .iter()
        .map(|&s| eval.gap(s, &mut buf))
        .collect::<Result<_>>()?;
    refine_minimum(&eval, &grid, &gap, tol_s)
}
