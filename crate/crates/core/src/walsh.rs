//! In-place fast Walsh–Hadamard transform with orthonormal scaling: each of
//! the n folds maps (a, b) ↦ ((a+b)/√2, (a−b)/√2), so the full transform is
//! W⊗ⁿ and its own inverse. O(n·2ⁿ) operations, independent of bit order.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

macro_rules! fwht_impl {
    ($name:ident, $ty:ty) => {
        pub(crate) fn $name(data: &mut [$ty]) {
            let len = data.len();
            debug_assert!(len.is_power_of_two());
            let mut h = 1;
            while h < len {
                let mut block = 0;
                while block < len {
                    for i in block..block + h {
                        let a = data[i];
                        let b = data[i + h];
                        data[i] = (a + b) * FRAC_1_SQRT_2;
                        data[i + h] = (a - b) * FRAC_1_SQRT_2;
                    }
                    block += 2 * h;
                }
                h *= 2;
            }
        }
    };
}

fwht_impl!(fwht_complex, Complex64);
fwht_impl!(fwht_real, f64);

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn involution_on_a_real_vector() {
        let orig = vec![0.25, -1.0, 3.5, 0.0, 2.0, 2.0, -0.5, 1.0];
        let mut v = orig.clone();
        fwht_real(&mut v);
        fwht_real(&mut v);
        for (a, b) in v.iter().zip(&orig) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn basis_state_maps_to_signed_uniform() {
        // W⊗² |10⟩ has amplitudes (−1)^{z·(10)}/2 = (1, 1, −1, −1)/2.
        let mut v = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        fwht_complex(&mut v);
        let expect = [0.5, 0.5, -0.5, -0.5];
        for (a, e) in v.iter().zip(expect) {
            assert_abs_diff_eq!(a.re, e, epsilon = 1e-15);
            assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-15);
        }
    }
}
