//! The fast transform written out as explicit dense factors.
//!
//! Iteration `i` of the fast algorithm is the product `F D A P`:
//!
//! * `P` (expansion) duplicates block `i-1`, or for `i = 1` replicates the
//!   signal into all `m` blocks,
//! * `A` (combination) applies the 2-point butterflies (`i = 1`) or the
//!   sum/difference operator `[U | V]` to the duplicated pair,
//! * `D` scales the lower half of each frame by `w_{2^i}^k`,
//! * `F` runs the half-size DIF FFT `R` on that lower half.
//!
//! A final permutation `Γ` bit-reverses every frame. Nothing here is used by
//! the fast path; these matrices exist so tests can check that the kernels
//! implement this exact factorization and the shapes it prescribes.

use num_complex::Complex;

use super::dense::DenseMatrix;
use super::direct::def_matrix;
use crate::error::{Error, Result};
use crate::plan::reverse_bits;
use crate::scalar::MrScalar;
use crate::spectrum::{Layout, MrSpectrum};

/// Largest `m` for which dense factors are built.
pub const MAX_DENSE_LEVELS: usize = 4;

/// `[P, A, D, F]` of one iteration.
#[derive(Clone)]
pub struct StageFactors<T> {
    pub level: usize,
    pub expand: DenseMatrix<T>,
    pub combine: DenseMatrix<T>,
    pub twiddle: DenseMatrix<T>,
    pub complete: DenseMatrix<T>,
}

impl<T: MrScalar> StageFactors<T> {
    pub fn into_array(self) -> [DenseMatrix<T>; 4] {
        [self.expand, self.combine, self.twiddle, self.complete]
    }

    /// `F D A P`.
    pub fn product(&self) -> DenseMatrix<T> {
        self.complete
            .matmul(&self.twiddle)
            .matmul(&self.combine)
            .matmul(&self.expand)
    }
}

fn check_dense(m: usize) -> Result<()> {
    if m == 0 || m > MAX_DENSE_LEVELS {
        return Err(Error::invalid(format!(
            "dense factors are only built for 1 <= m <= {MAX_DENSE_LEVELS}, got {m}"
        )));
    }
    Ok(())
}

fn check_level(m: usize, i: usize) -> Result<()> {
    check_dense(m)?;
    if !(1..=m).contains(&i) {
        return Err(Error::invalid(format!("iteration {i} outside [1, {m}]")));
    }
    Ok(())
}

fn twiddle<T: MrScalar>(size: usize, k: usize) -> Complex<T> {
    let a = -2.0 * std::f64::consts::PI * k as f64 / size as f64;
    Complex::new(T::from_f64(a.cos()), T::from_f64(a.sin()))
}

type M<T> = DenseMatrix<T>;

fn eye<T: MrScalar>(size: usize) -> M<T> {
    M::identity(size)
}

/// `diag(w_size^0, …, w_size^(count-1))`.
fn twiddle_diag<T: MrScalar>(size: usize, count: usize) -> M<T> {
    let values: Vec<_> = (0..count).map(|k| twiddle::<T>(size, k)).collect();
    M::diag(&values)
}

/// Expansion `P` of iteration `i`: `1_{m×1} ⊗ I_N` for `i = 1`, otherwise
/// `I_{(i-2)N} ⊕ (1_{2×1} ⊗ I_N) ⊕ I_{(m-i+1)N}`.
pub fn expansion<T: MrScalar>(m: usize, i: usize) -> Result<M<T>> {
    check_level(m, i)?;
    let n = 1 << m;
    Ok(if i == 1 {
        M::ones(m, 1).kron(&eye(n))
    } else {
        M::direct_sum_all([
            &eye((i - 2) * n),
            &M::ones(2, 1).kron(&eye(n)),
            &eye((m - i + 1) * n),
        ])
    })
}

/// Summation operator `U` of iteration `i >= 2`, `N x N`.
pub fn sum_operator<T: MrScalar>(m: usize, i: usize) -> Result<M<T>> {
    check_level(m, i)?;
    if i < 2 {
        return Err(Error::invalid("U is defined for iterations >= 2"));
    }
    let half = 1 << (i - 1);
    let block = M::ones(1, 2)
        .kron(&eye(half))
        .vstack(&M::zeros(half, 2 * half));
    Ok(eye(1 << (m - i)).kron(&block))
}

/// Difference operator `V` of iteration `i >= 2`, `N x N`.
pub fn difference_operator<T: MrScalar>(m: usize, i: usize) -> Result<M<T>> {
    check_level(m, i)?;
    if i < 2 {
        return Err(Error::invalid("V is defined for iterations >= 2"));
    }
    let half = 1 << (i - 1);
    let minus = Complex::new(-T::one(), T::zero());
    let block = M::zeros(half, 2 * half).vstack(&eye(half).hstack(&eye(half).scale(minus)));
    Ok(eye(1 << (m - i)).kron(&block))
}

/// Combination `A` of iteration `i`.
pub fn combination<T: MrScalar>(m: usize, i: usize) -> Result<M<T>> {
    check_level(m, i)?;
    let n = 1 << m;
    if i == 1 {
        return Ok(eye(n / 2)
            .kron(&M::hadamard2())
            .direct_sum(&eye((m - 1) * n)));
    }
    let uv = sum_operator::<T>(m, i)?.hstack(&difference_operator(m, i)?);
    Ok(M::direct_sum_all([
        &eye((i - 1) * n),
        &uv,
        &eye((m - i) * n),
    ]))
}

/// Frame twiddle block `I_{2^(i-1)} ⊕ diag(w_{2^i}^k)`.
pub fn frame_twiddles<T: MrScalar>(i: usize) -> M<T> {
    let half = 1 << (i - 1);
    eye(half).direct_sum(&twiddle_diag(1 << i, half))
}

/// Twiddle stage `D` of iteration `i`.
pub fn twiddle_stage<T: MrScalar>(m: usize, i: usize) -> Result<M<T>> {
    check_level(m, i)?;
    let n = 1 << m;
    Ok(M::direct_sum_all([
        &eye((i - 1) * n),
        &eye(1 << (m - i)).kron(&frame_twiddles(i)),
        &eye((m - i) * n),
    ]))
}

/// Butterfly factor `S^(j)` of the size-`2^(i-1)` DIF FFT.
pub fn butterfly_factor<T: MrScalar>(i: usize, j: usize) -> M<T> {
    assert!(i >= 2 && (1..i).contains(&j));
    eye(1 << (j - 1)).kron(&M::hadamard2().kron(&eye(1 << (i - j - 1))))
}

/// Twiddle factor `W^(j)` of the size-`2^(i-1)` DIF FFT.
pub fn fft_twiddle_factor<T: MrScalar>(i: usize, j: usize) -> M<T> {
    assert!(i >= 2 && (1..i).contains(&j));
    let half = 1 << (i - j - 1);
    let block = eye(half).direct_sum(&twiddle_diag(1 << (i - j), half));
    eye(1 << (j - 1)).kron(&block)
}

/// `R = (W^(i-1) S^(i-1)) ⋯ (W^(1) S^(1))`, the size-`2^(i-1)` DIF FFT with
/// bit-reversed output.
pub fn dif_fft_matrix<T: MrScalar>(i: usize) -> M<T> {
    assert!(i >= 2);
    let size = 1 << (i - 1);
    (1..i).fold(eye(size), |acc, j| {
        fft_twiddle_factor(i, j)
            .matmul(&butterfly_factor(i, j))
            .matmul(&acc)
    })
}

/// Completion `F` of iteration `i`.
pub fn completion<T: MrScalar>(m: usize, i: usize) -> Result<M<T>> {
    check_level(m, i)?;
    let n = 1 << m;
    if i == 1 {
        return Ok(eye(m * n));
    }
    let frame = eye(1 << (i - 1)).direct_sum(&dif_fft_matrix(i));
    Ok(M::direct_sum_all([
        &eye((i - 1) * n),
        &eye(1 << (m - i)).kron(&frame),
        &eye((m - i) * n),
    ]))
}

/// `[P, A, D, F]` for iteration `i`.
pub fn build_stage_matrices<T: MrScalar>(m: usize, i: usize) -> Result<StageFactors<T>> {
    Ok(StageFactors {
        level: i,
        expand: expansion(m, i)?,
        combine: combination(m, i)?,
        twiddle: twiddle_stage(m, i)?,
        complete: completion(m, i)?,
    })
}

/// Bit-reversal permutation `T` of size `2^i`: row `k` has its one in
/// column `rev(k)`.
pub fn bit_reversal_matrix<T: MrScalar>(i: usize) -> M<T> {
    let size = 1 << i;
    let mut t = M::zeros(size, size);
    for k in 0..size {
        t[(k, reverse_bits(k, i))] = Complex::new(T::one(), T::zero());
    }
    t
}

/// Output permutation `Γ = ⊕_i (I_{2^(m-i)} ⊗ T_{2^i})`.
pub fn build_gamma<T: MrScalar>(m: usize) -> Result<M<T>> {
    check_dense(m)?;
    let blocks: Vec<_> = (1..=m)
        .map(|i| eye(1 << (m - i)).kron(&bit_reversal_matrix(i)))
        .collect();
    Ok(M::direct_sum_all(&blocks))
}

/// `Γ · (F D A P)^(m) ⋯ (F D A P)^(1)` from explicit stage factors.
pub fn compose_pipeline<T: MrScalar>(stages: &[StageFactors<T>], gamma: &M<T>) -> M<T> {
    let first = stages.first().expect("at least one stage");
    let mut acc = first.product();
    for stage in &stages[1..] {
        acc = stage.product().matmul(&acc);
    }
    gamma.matmul(&acc)
}

/// The full `mN x N` matrix of the fast procedure.
pub fn pipeline_matrix<T: MrScalar>(m: usize) -> Result<M<T>> {
    let stages = (1..=m)
        .map(|i| build_stage_matrices(m, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(compose_pipeline(&stages, &build_gamma(m)?))
}

/// The `mN x N` matrix of the definition: `[⊕_i (I_{2^(m-i)} ⊗ E_{2^i})] P`.
pub fn definition_matrix<T: MrScalar>(m: usize) -> Result<M<T>> {
    check_dense(m)?;
    let blocks = (1..=m)
        .map(|i| Ok(eye(1 << (m - i)).kron(&def_matrix(1 << i)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(M::direct_sum_all(&blocks).matmul(&expansion(m, 1)?))
}

/// Runs `x` through the dense factor chain.
pub fn mrdft_dense_pipeline<T: MrScalar>(x: &[Complex<T>], m: usize) -> Result<MrSpectrum<T>> {
    check_dense(m)?;
    if x.len() != 1 << m {
        return Err(Error::invalid(format!(
            "signal length {} does not match 2^{m}",
            x.len()
        )));
    }
    let mut v = x.to_vec();
    for i in 1..=m {
        let s = build_stage_matrices::<T>(m, i)?;
        v = s.expand.mul_vec(&v);
        v = s.combine.mul_vec(&v);
        v = s.twiddle.mul_vec(&v);
        v = s.complete.mul_vec(&v);
    }
    let y = build_gamma::<T>(m)?.mul_vec(&v);
    MrSpectrum::from_parts(m, y, Layout::Natural)
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    #[test]
    fn eight_point_shapes() {
        let s1 = build_stage_matrices::<f64>(3, 1).unwrap();
        assert_eq!(s1.expand.shape(), (24, 8));
        assert_eq!(s1.combine.shape(), (24, 24));
        assert_eq!(s1.twiddle.shape(), (24, 24));
        assert_eq!(s1.complete.shape(), (24, 24));
        for i in 2..=3 {
            let s = build_stage_matrices::<f64>(3, i).unwrap();
            assert_eq!(s.expand.shape(), (32, 24));
            assert_eq!(s.combine.shape(), (24, 32));
            assert_eq!(s.twiddle.shape(), (24, 24));
            assert_eq!(s.complete.shape(), (24, 24));
        }
        assert_eq!(build_gamma::<f64>(3).unwrap().shape(), (24, 24));
    }

    #[test]
    fn first_combination_is_butterflies_plus_identity() {
        let a = combination::<f64>(3, 1).unwrap();
        let want = M::identity(4)
            .kron(&M::hadamard2())
            .direct_sum(&M::identity(16));
        assert_eq!(a, want);
    }

    #[test]
    fn printed_u_and_v_for_four_point_frames() {
        // U_8^(2) = I_2 ⊗ [I_2 I_2; 0], V_8^(2) = I_2 ⊗ [0; I_2 -I_2]
        let u = sum_operator::<f64>(3, 2).unwrap();
        let v = difference_operator::<f64>(3, 2).unwrap();
        let ub = M::from_real_rows(&[
            &[1.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 1.0],
            &[0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
        ]);
        let vb = M::from_real_rows(&[
            &[0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
            &[1.0, 0.0, -1.0, 0.0],
            &[0.0, 1.0, 0.0, -1.0],
        ]);
        assert_eq!(u, M::identity(2).kron(&ub));
        assert_eq!(v, M::identity(2).kron(&vb));
    }

    #[test]
    fn eight_point_twiddle_tail() {
        let d = frame_twiddles::<f64>(3);
        for k in 0..4 {
            assert_eq!(d[(k, k)], c(1.0));
            let w = d[(4 + k, 4 + k)];
            let a = -2.0 * std::f64::consts::PI * k as f64 / 8.0;
            assert!((w - C::new(a.cos(), a.sin())).norm() < 1e-15);
        }
        // embedded as the last 8x8 block of D^(3)
        let big = twiddle_stage::<f64>(3, 3).unwrap();
        assert_eq!(big[(21, 21)], d[(5, 5)]);
    }

    #[test]
    fn printed_fft_factors() {
        // R_2^(2) = W_2^(1) S_2^(1) = H_2
        assert_eq!(dif_fft_matrix::<f64>(2), M::hadamard2());
        // S_4^(1) = H_2 ⊗ I_2, S_4^(2) = I_2 ⊗ H_2
        assert_eq!(
            butterfly_factor::<f64>(3, 1),
            M::hadamard2().kron(&M::identity(2))
        );
        assert_eq!(
            butterfly_factor::<f64>(3, 2),
            M::identity(2).kron(&M::hadamard2())
        );
        // W_4^(2) = I_2 ⊗ (I_1 ⊕ w_2^0) = I_4
        assert_eq!(fft_twiddle_factor::<f64>(3, 2), M::identity(4));
        let w1 = fft_twiddle_factor::<f64>(3, 1);
        assert!((w1[(3, 3)] - C::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn dif_matrix_is_bit_reversed_dft() {
        for i in 2..=5 {
            let size = 1 << (i - 1);
            let r = dif_fft_matrix::<f64>(i);
            let want = bit_reversal_matrix::<f64>(i - 1).matmul(&def_matrix(size).unwrap());
            assert!(r.max_abs_diff(&want) < 1e-12, "i = {i}");
        }
    }

    #[test]
    fn printed_reversal_matrices() {
        assert_eq!(bit_reversal_matrix::<f64>(1), M::identity(2));
        let t4 = M::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ]);
        assert_eq!(bit_reversal_matrix::<f64>(2), t4);
        let t8 = bit_reversal_matrix::<f64>(3);
        assert_eq!(t8[(1, 4)], c(1.0));
        assert_eq!(t8[(3, 6)], c(1.0));
        assert_eq!(t8[(6, 3)], c(1.0));
        assert!(t8.is_permutation());
    }

    #[test]
    fn pipeline_equals_definition() {
        for m in 1..=MAX_DENSE_LEVELS {
            let fast = pipeline_matrix::<f64>(m).unwrap();
            let def = definition_matrix::<f64>(m).unwrap();
            assert_eq!(fast.shape(), (m << m, 1 << m));
            assert!(fast.max_abs_diff(&def) < 1e-12, "m = {m}");
        }
    }

    #[test]
    fn refuses_large_m() {
        assert!(build_stage_matrices::<f64>(5, 1).is_err());
        assert!(build_stage_matrices::<f64>(3, 4).is_err());
        assert!(mrdft_dense_pipeline::<f64>(&vec![c(0.0); 32], 5).is_err());
    }
}
