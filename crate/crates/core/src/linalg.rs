//! Thin bindings to the system LAPACK (provided by OpenBLAS) for dense
//! symmetric / Hermitian eigenproblems.
//!
//! Buffers are row-major. LAPACK reads them column-major, i.e. as the
//! transpose: harmless for real symmetric input, and for complex Hermitian
//! input the transpose is the conjugate, so eigenvalues are unchanged and the
//! returned eigenvectors are conjugated on the way out. Eigenvector k comes
//! back in the contiguous slice `[k*dim .. (k+1)*dim]`.
//!
//! Values-only solves use `dsyev`/`zheev` (tridiagonalize + root-find, no
//! vector backtransform); vector solves use the divide-and-conquer `dsyevd`,
//! measurably faster than `dsyev('V')` at the sizes used here.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::os::raw::{c_char, c_int};
use std::sync::Once;

#[link(name = "openblas")]
extern "C" {
    fn dsyev_(
        jobz: *const c_char,
        uplo: *const c_char,
        n: *const c_int,
        a: *mut f64,
        lda: *const c_int,
        w: *mut f64,
        work: *mut f64,
        lwork: *const c_int,
        info: *mut c_int,
    );
    fn dsyevd_(
        jobz: *const c_char,
        uplo: *const c_char,
        n: *const c_int,
        a: *mut f64,
        lda: *const c_int,
        w: *mut f64,
        work: *mut f64,
        lwork: *const c_int,
        iwork: *mut c_int,
        liwork: *const c_int,
        info: *mut c_int,
    );
    fn zheev_(
        jobz: *const c_char,
        uplo: *const c_char,
        n: *const c_int,
        a: *mut Complex64,
        lda: *const c_int,
        w: *mut f64,
        work: *mut Complex64,
        lwork: *const c_int,
        rwork: *mut f64,
        info: *mut c_int,
    );
    fn openblas_set_num_threads(num: c_int);
}

static BLAS_THREADS: Once = Once::new();

/// Pin OpenBLAS to one thread unless the user chose otherwise; outer-loop
/// parallelism belongs to rayon and BLAS threads would oversubscribe it.
fn pin_blas_threads() {
    BLAS_THREADS.call_once(|| {
        if std::env::var_os("OPENBLAS_NUM_THREADS").is_none() {
            unsafe { openblas_set_num_threads(1) };
        }
    });
}

fn check_info(info: c_int) -> Result<()> {
    if info == 0 {
        Ok(())
    } else {
        Err(Error::Lapack(info))
    }
}

const JOBZ_N: c_char = b'N' as c_char;
const JOBZ_V: c_char = b'V' as c_char;
const UPLO_L: c_char = b'L' as c_char;

/// Eigenvalues (ascending) of a real symmetric matrix, row-major in `a`
/// (length dim²). `a` is destroyed.
pub(crate) fn sym_eigenvalues_inplace(a: &mut [f64], dim: usize) -> Result<Vec<f64>> {
    debug_assert_eq!(a.len(), dim * dim);
    pin_blas_threads();
    let n = dim as c_int;
    let mut w = vec![0.0f64; dim];
    let mut info: c_int = 0;
    let mut wq = [0.0f64];
    let query: c_int = -1;
    unsafe {
        dsyev_(&JOBZ_N, &UPLO_L, &n, a.as_mut_ptr(), &n, w.as_mut_ptr(), wq.as_mut_ptr(), &query, &mut info);
    }
    check_info(info)?;
    let lwork = wq[0] as c_int;
    let mut work = vec![0.0f64; lwork.max(1) as usize];
    unsafe {
        dsyev_(&JOBZ_N, &UPLO_L, &n, a.as_mut_ptr(), &n, w.as_mut_ptr(), work.as_mut_ptr(), &lwork, &mut info);
    }
    check_info(info)?;
    Ok(w)
}

/// Eigenvalues and eigenvectors of a real symmetric matrix, row-major in `a`.
/// Returns (ascending eigenvalues, vectors) with vector k in
/// `vecs[k*dim .. (k+1)*dim]`. `a` is destroyed.
pub(crate) fn sym_eigen_inplace(a: &mut [f64], dim: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    debug_assert_eq!(a.len(), dim * dim);
    pin_blas_threads();
    let n = dim as c_int;
    let mut w = vec![0.0f64; dim];
    let mut info: c_int = 0;
    let (mut wq, mut iwq) = ([0.0f64], [0 as c_int]);
    let query: c_int = -1;
    unsafe {
        dsyevd_(
            &JOBZ_V, &UPLO_L, &n, a.as_mut_ptr(), &n, w.as_mut_ptr(),
            wq.as_mut_ptr(), &query, iwq.as_mut_ptr(), &query, &mut info,
        );
    }
    check_info(info)?;
    let (lwork, liwork) = (wq[0] as c_int, iwq[0]);
    let mut work = vec![0.0f64; lwork.max(1) as usize];
    let mut iwork = vec![0 as c_int; liwork.max(1) as usize];
    unsafe {
        dsyevd_(
            &JOBZ_V, &UPLO_L, &n, a.as_mut_ptr(), &n, w.as_mut_ptr(),
            work.as_mut_ptr(), &lwork, iwork.as_mut_ptr(), &liwork, &mut info,
        );
    }
    check_info(info)?;
    // a now holds eigenvector k contiguously at [k*dim..]; for symmetric real
    // input the transposed view LAPACK saw has the same eigenvectors.
    Ok((w, a.to_vec()))
}

/// Eigenvalues (and optionally eigenvectors) of a complex Hermitian matrix,
/// row-major in `a`. Vector k is returned in `vecs[k*dim .. (k+1)*dim]`,
/// already conjugated back to the row-major convention. `a` is destroyed.
pub(crate) fn herm_eigen_inplace(
    a: &mut [Complex64],
    dim: usize,
    vectors: bool,
) -> Result<(Vec<f64>, Option<Vec<Complex64>>)> {
    debug_assert_eq!(a.len(), dim * dim);
    pin_blas_threads();
    let n = dim as c_int;
    let jobz = if vectors { JOBZ_V } else { JOBZ_N };
    let mut w = vec![0.0f64; dim];
    let mut rwork = vec![0.0f64; (3 * dim).max(1)];
    let mut info: c_int = 0;
    let mut wq = [Complex64::new(0.0, 0.0)];
    let query: c_int = -1;
    unsafe {
        zheev_(
            &jobz, &UPLO_L, &n, a.as_mut_ptr(), &n, w.as_mut_ptr(),
            wq.as_mut_ptr(), &query, rwork.as_mut_ptr(), &mut info,
        );
    }
    check_info(info)?;
    let lwork = wq[0].re as c_int;
    let mut work = vec![Complex64::new(0.0, 0.0); lwork.max(1) as usize];
    unsafe {
        zheev_(
            &jobz, &UPLO_L, &n, a.as_mut_ptr(), &n, w.as_mut_ptr(),
            work.as_mut_ptr(), &lwork, rwork.as_mut_ptr(), &mut info,
        );
    }
    check_info(info)?;
    if vectors {
        // LAPACK diagonalized the transpose = conjugate of the logical matrix,
        // so its eigenvectors are the conjugates of ours.
        let vecs = a.iter().map(|c| c.conj()).collect();
        Ok((w, Some(vecs)))
    } else {
        Ok((w, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sym_values_ascending() {
        // diag(3, 1, 2)
        let mut a = vec![3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0];
        let w = sym_eigenvalues_inplace(&mut a, 3).unwrap();
        assert_abs_diff_eq!(w[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(w[1], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(w[2], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn sym_vectors_reconstruct() {
        let m = [2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0];
        let (w, v) = sym_eigen_inplace(&mut m.to_vec(), 3).unwrap();
        // Σ_k λ_k v_k v_kᵀ = M
        for i in 0..3 {
            for j in 0..3 {
                let mut sum = 0.0;
                for k in 0..3 {
                    sum += w[k] * v[k * 3 + i] * v[k * 3 + j];
                }
                assert_abs_diff_eq!(sum, m[i * 3 + j], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn herm_vectors_reconstruct() {
        // [[1, i], [-i, 2]] — genuinely complex Hermitian.
        let m = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(2.0, 0.0),
        ];
        let (w, v) = herm_eigen_inplace(&mut m.to_vec(), 2, true).unwrap();
        let v = v.unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut sum = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    sum += w[k] * v[k * 2 + i] * v[k * 2 + j].conj();
                }
                assert_abs_diff_eq!(sum.re, m[i * 2 + j].re, epsilon = 1e-12);
                assert_abs_diff_eq!(sum.im, m[i * 2 + j].im, epsilon = 1e-12);
            }
        }
        // golden ratio spectrum of that matrix
        assert_abs_diff_eq!(w[0], (3.0 - 5.0f64.sqrt()) / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(w[1], (3.0 + 5.0f64.sqrt()) / 2.0, epsilon = 1e-12);
    }
}
