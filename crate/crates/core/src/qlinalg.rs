//! Dense complex matrix kernel: Hermitian eigendecomposition, matrix
//! functions, Kronecker products, partial traces and the Uhlmann-Jozsa
//! fidelity.
//!
//! Everything here targets small dense operators (dimension <= 64, the
//! largest system-bath product this crate simulates). Matrix functions go
//! through an explicit Jacobi eigendecomposition rather than series
//! expansions; at these sizes that is both simpler and more accurate.

use crate::{C64, Error, Result};

const HERMITICITY_TOL: f64 = 1e-12;
const DM_TRACE_TOL: f64 = 1e-10;
const DM_EIG_TOL: f64 = -1e-10;

/// Square complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimMismatch {
                left: data.len(),
                right: dim * dim,
            });
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_diag_real(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m.set(i, i, C64::new(v, 0.0));
        }
        m
    }

    /// Build from a closure over (row, col).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.data[row * self.dim + col] = value;
    }

    /// Row-major entries; for a density matrix this is exactly the
    /// row-stacked vectorization used by the superoperator convention.
    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut data = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a_ik = self.data[i * n + k];
                if a_ik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a_ik * other.data[k * n + j];
                }
            }
        }
        Self { dim: n, data }
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        let n = self.dim;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..n {
                acc += self.data[i * n + j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// U self U^dag.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.matmul(self).matmul(&u.adjoint())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum (the 1-norm), used to pick the Pade
    /// scaling parameter.
    pub fn norm_1(&self) -> f64 {
        let n = self.dim;
        (0..n)
            .map(|j| (0..n).map(|i| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// (A + A^dag)/2.
    pub fn hermitized(&self) -> Self {
        self.add(&self.adjoint()).scale_re(0.5)
    }

    pub fn unitarity_deviation(&self) -> f64 {
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&Self::identity(self.dim))
    }

    /// Kronecker product self (x) other.
    pub fn tensor(&self, other: &Self) -> Self {
        let na = self.dim;
        let nb = other.dim;
        let n = na * nb;
        let mut out = Self::zeros(n);
        for i in 0..na {
            for j in 0..na {
                let a_ij = self.get(i, j);
                if a_ij.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..nb {
                    for l in 0..nb {
                        out.set(i * nb + k, j * nb + l, a_ij * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Trace out the trailing tensor factor of the given dimension. The
    /// system is always the leading factor in this crate's convention.
    pub fn partial_trace_trailing(&self, bath_dim: usize) -> Result<Self> {
        if bath_dim == 0 || self.dim % bath_dim != 0 {
            return Err(Error::DimMismatch {
                left: self.dim,
                right: bath_dim,
            });
        }
        let sys = self.dim / bath_dim;
        let mut out = Self::zeros(sys);
        for i in 0..sys {
            for j in 0..sys {
                let mut acc = C64::new(0.0, 0.0);
                for b in 0..bath_dim {
                    acc += self.get(i * bath_dim + b, j * bath_dim + b);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }
}

/// Conjugate-transpose of a matrix (free-function form of [`ComplexMatrix::adjoint`]).
pub fn adjoint(m: &ComplexMatrix) -> ComplexMatrix {
    m.adjoint()
}

/// Kronecker product (free-function form of [`ComplexMatrix::tensor`]).
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.tensor(b)
}

/// Eigendecomposition of a Hermitian matrix: `matrix = V diag(values) V^dag`
/// with real eigenvalues in ascending order and unitary `V`.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermEig {
    /// Reassemble V f(diag) V^dag for a spectral function f.
    pub fn apply_spectral(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let mut scaled = ComplexMatrix::zeros(n);
        for i in 0..n {
            let fi = f(self.values[i]);
            for j in 0..n {
                scaled.set(j, i, v.get(j, i) * fi);
            }
        }
        scaled.matmul(&v.adjoint())
    }
}

/// Cyclic-sweep complex Jacobi eigendecomposition for Hermitian matrices.
///
/// Fails with [`Error::NotHermitian`] if the input violates the 1e-12
/// elementwise symmetry tolerance.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermEig> {
    let dev = m.hermiticity_deviation();
    if dev > HERMITICITY_TOL {
        return Err(Error::NotHermitian { max_dev: dev });
    }
    let n = m.dim();
    let mut a = m.hermitized();
    let mut v = ComplexMatrix::identity(n);

    let scale = a.max_abs().max(1.0);
    let stop = 1e-15 * scale;

    for _sweep in 0..100 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a.get(p, q).norm());
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let beta = apq.norm();
                if beta <= stop * 1e-2 {
                    continue;
                }
                let phase = apq / beta;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * beta);
                let t = {
                    let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
                    sign / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // G = I except G[p][p]=c, G[p][q]=s, G[q][p]=-s*conj(phase),
                // G[q][q]=c*conj(phase); apply A <- G^dag A G, V <- V G.
                let g_qp = -s * phase.conj();
                let g_qq = c * phase.conj();
                for i in 0..n {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * c + aiq * g_qp);
                    a.set(i, q, aip * s + aiq * g_qq);
                }
                for j in 0..n {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj * c + aqj * g_qp.conj());
                    a.set(q, j, apj * s + aqj * g_qq.conj());
                }
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * c + viq * g_qp);
                    v.set(i, q, vip * s + viq * g_qq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, j| v.get(i, order[j]));
    Ok(HermEig { values, vectors })
}

/// exp(-i h t) for a Hermitian generator `h` and duration `t`.
pub fn expm_herm_generator(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    Ok(eig.apply_spectral(|lambda| C64::from_polar(1.0, -lambda * t)))
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [-1e-6, 0) are clamped to zero; anything more negative
/// is rejected as genuinely non-PSD.
pub fn sqrtm_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    let min_eig = eig.values.first().copied().unwrap_or(0.0);
    if min_eig < -1e-6 {
        return Err(Error::NotPsd { min_eig });
    }
    Ok(eig.apply_spectral(|l| C64::new(l.max(0.0).sqrt(), 0.0)))
}

/// General matrix exponential by Pade approximation with scaling and
/// squaring. Used for the (non-Hermitian) Lindblad superoperator.
pub fn expm_general(m: &ComplexMatrix) -> ComplexMatrix {
    const THETA_13: f64 = 5.371920351148152;
    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];

    let n = m.dim();
    let norm = m.norm_1();
    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as u32
    } else {
        0
    };
    let a = m.scale_re(1.0 / (2f64.powi(s as i32)));

    let id = ComplexMatrix::identity(n);
    let a2 = a.matmul(&a);
    let a4 = a2.matmul(&a2);
    let a6 = a2.matmul(&a4);

    let u_inner = a6
        .matmul(
            &a6.scale_re(B[13])
                .add(&a4.scale_re(B[11]))
                .add(&a2.scale_re(B[9])),
        )
        .add(&a6.scale_re(B[7]))
        .add(&a4.scale_re(B[5]))
        .add(&a2.scale_re(B[3]))
        .add(&id.scale_re(B[1]));
    let u = a.matmul(&u_inner);
    let v = a6
        .matmul(
            &a6.scale_re(B[12])
                .add(&a4.scale_re(B[10]))
                .add(&a2.scale_re(B[8])),
        )
        .add(&a6.scale_re(B[6]))
        .add(&a4.scale_re(B[4]))
        .add(&a2.scale_re(B[2]))
        .add(&id.scale_re(B[0]));

    let lhs = v.sub(&u);
    let rhs = v.add(&u);
    let mut x = lu_solve(&lhs, &rhs).expect("Pade denominator is nonsingular");
    for _ in 0..s {
        x = x.matmul(&x);
    }
    x
}

/// Solve A X = B by LU decomposition with partial pivoting.
pub fn lu_solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let n = a.dim();
    let mut lu = a.clone();
    let mut x = b.clone();
    for col in 0..n {
        let mut pivot = col;
        let mut best = lu.get(col, col).norm();
        for r in (col + 1)..n {
            let v = lu.get(r, col).norm();
            if v > best {
                best = v;
                pivot = r;
            }
        }
        if best == 0.0 {
            return Err(Error::InvalidState {
                reason: "singular matrix in lu_solve".into(),
            });
        }
        if pivot != col {
            for j in 0..n {
                let tmp = lu.get(col, j);
                lu.set(col, j, lu.get(pivot, j));
                lu.set(pivot, j, tmp);
                let tmp = x.get(col, j);
                x.set(col, j, x.get(pivot, j));
                x.set(pivot, j, tmp);
            }
        }
        let d = lu.get(col, col);
        for r in (col + 1)..n {
            let factor = lu.get(r, col) / d;
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            lu.set(r, col, factor);
            for j in (col + 1)..n {
                let v = lu.get(r, j) - factor * lu.get(col, j);
                lu.set(r, j, v);
            }
            for j in 0..n {
                let v = x.get(r, j) - factor * x.get(col, j);
                x.set(r, j, v);
            }
        }
    }
    for col in (0..n).rev() {
        let d = lu.get(col, col);
        for j in 0..n {
            x.set(col, j, x.get(col, j) / d);
        }
        for r in 0..col {
            let factor = lu.get(r, col);
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                let v = x.get(r, j) - factor * x.get(col, j);
                x.set(r, j, v);
            }
        }
    }
    Ok(x)
}

/// Lower-triangular Cholesky factor of a Hermitian positive-definite matrix.
pub fn cholesky_lower(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = m.dim();
    let mut l = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let mut acc = m.get(i, j);
            for k in 0..j {
                acc -= l.get(i, k) * l.get(j, k).conj();
            }
            if i == j {
                let d = acc.re;
                if d <= 0.0 {
                    return Err(Error::NotPsd { min_eig: d });
                }
                l.set(i, j, C64::new(d.sqrt(), 0.0));
            } else {
                l.set(i, j, acc / l.get(j, j));
            }
        }
    }
    Ok(l)
}

/// Normalized pure state vector.
#[derive(Debug, Clone)]
pub struct PureState {
    dim: usize,
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Requires the amplitudes to be normalized within 1e-12.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidState {
                reason: format!("pure state norm^2 = {norm_sq} is not 1"),
            });
        }
        Ok(Self {
            dim: amplitudes.len(),
            amplitudes,
        })
    }

    /// Normalize and construct; rejects the zero vector.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let norm: f64 = amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm < 1e-9 {
            return Err(Error::InvalidState {
                reason: "cannot normalize a (near-)zero amplitude vector".into(),
            });
        }
        let amps = amplitudes.iter().map(|a| a / norm).collect();
        Self::new(amps)
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Self {
            dim,
            amplitudes: amps,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// <self|other>.
    pub fn inner(&self, other: &Self) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |psi><psi| as a density matrix.
    pub fn density(&self) -> DensityMatrix {
        let n = self.dim;
        let m = ComplexMatrix::from_fn(n, |i, j| {
            self.amplitudes[i] * self.amplitudes[j].conj()
        });
        DensityMatrix::try_new(m).expect("projector of a normalized state is a valid state")
    }
}

/// Hermitian, unit-trace, positive semidefinite state.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-12), trace (1e-10) and PSD (-1e-10).
    pub fn try_new(matrix: ComplexMatrix) -> Result<Self> {
        let dev = matrix.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian { max_dev: dev });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DM_TRACE_TOL || tr.im.abs() > DM_TRACE_TOL {
            return Err(Error::InvalidState {
                reason: format!("trace = {tr} is not 1"),
            });
        }
        let eig = hermitian_eig(&matrix.hermitized())?;
        let min_eig = eig.values.first().copied().unwrap_or(0.0);
        if min_eig < DM_EIG_TOL {
            return Err(Error::NotPsd { min_eig });
        }
        Ok(Self { matrix })
    }

    /// Accept the output of a numerical evolution: tolerates roundoff up to
    /// 1e-8 in Hermiticity, trace and negative eigenvalues, then projects
    /// back onto the physical set (hermitize, clamp, renormalize).
    pub fn from_evolved(matrix: ComplexMatrix) -> Result<Self> {
        let dev = matrix.hermiticity_deviation();
        let tr = matrix.trace();
        if dev > 1e-8 || (tr.re - 1.0).abs() > 1e-8 || tr.im.abs() > 1e-8 {
            return Err(Error::InvalidState {
                reason: format!(
                    "evolved state drifted too far (hermiticity {dev:.2e}, trace {tr})"
                ),
            });
        }
        let herm = matrix.hermitized();
        let eig = hermitian_eig(&herm)?;
        let min_eig = eig.values.first().copied().unwrap_or(0.0);
        if min_eig < -1e-8 {
            return Err(Error::NotPsd { min_eig });
        }
        let total: f64 = eig.values.iter().map(|&l| l.max(0.0)).sum();
        let clean = eig.apply_spectral(|l| C64::new(l.max(0.0) / total, 0.0));
        Ok(Self { matrix: clean })
    }

    pub fn from_pure(state: &PureState) -> Self {
        state.density()
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

/// Uhlmann-Jozsa fidelity F = (Tr sqrt(sqrt(a) b sqrt(a)))^2, clamped to [0, 1].
pub fn fidelity(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let ra = sqrtm_psd(&a.matrix().hermitized())?;
    let inner = ra.matmul(b.matrix()).matmul(&ra).hermitized();
    let eig = hermitian_eig(&inner)?;
    let root_sum: f64 = eig.values.iter().map(|&l| l.max(0.0).sqrt()).sum();
    Ok((root_sum * root_sum).clamp(0.0, 1.0))
}

/// Trace out the bath (trailing factor) of a system-bath density matrix.
pub fn partial_trace_bath(rho: &DensityMatrix, bath_dim: usize) -> Result<DensityMatrix> {
    let reduced = rho.matrix().partial_trace_trailing(bath_dim)?;
    DensityMatrix::from_evolved(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    pub(crate) fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::new(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap()
    }

    fn random_hermitian(dim: usize, seed: u64) -> ComplexMatrix {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        let g = ComplexMatrix::from_fn(dim, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        g.hermitized()
    }

    #[test]
    fn adjoint_of_identity_is_identity() {
        let id = ComplexMatrix::identity(3);
        assert_eq!(adjoint(&id), id);
    }

    #[test]
    fn adjoint_moves_entries_and_conjugates() {
        let m = ComplexMatrix::new(2, vec![c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        let expected =
            ComplexMatrix::new(2, vec![c(0., 0.), c(0., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        assert_eq!(adjoint(&m), expected);

        let z = ComplexMatrix::new(2, vec![c(0., 1.), c(2., 3.), c(0., 0.), c(0., 0.)]).unwrap();
        let back = adjoint(&adjoint(&z));
        assert!(back.max_abs_diff(&z) == 0.0);
    }

    #[test]
    fn eig_of_diagonal_sorts_ascending() {
        let m = ComplexMatrix::from_diag_real(&[3.0, 1.0]);
        let eig = hermitian_eig(&m).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn eig_of_pauli_x() {
        let eig = hermitian_eig(&pauli_x()).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-12);
        assert!((eig.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eig_reconstructs_random_hermitian_8x8() {
        let m = random_hermitian(8, 42);
        let eig = hermitian_eig(&m).unwrap();
        let rebuilt = eig.apply_spectral(|l| c(l, 0.0));
        assert!(rebuilt.max_abs_diff(&m) < 1e-9);
        assert!(eig.vectors.unitarity_deviation() < 1e-9);
        for w in eig.values.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::new(2, vec![c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        assert!(matches!(
            hermitian_eig(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn expm_zero_time_is_identity() {
        let m = random_hermitian(4, 1);
        let u = expm_herm_generator(&m, 0.0).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn expm_half_pi_pauli_x() {
        // exp(-i (pi/2) sigma_x) = -i sigma_x
        let h = pauli_x().scale_re(std::f64::consts::FRAC_PI_2);
        let u = expm_herm_generator(&h, 1.0).unwrap();
        let expected = pauli_x().scale(c(0.0, -1.0));
        assert!(u.max_abs_diff(&expected) < 1e-9);
    }

    #[test]
    fn expm_group_law_and_unitarity() {
        let h = random_hermitian(6, 7);
        let u1 = expm_herm_generator(&h, 0.3).unwrap();
        let u2 = expm_herm_generator(&h, 0.7).unwrap();
        let u12 = expm_herm_generator(&h, 1.0).unwrap();
        assert!(u1.matmul(&u2).max_abs_diff(&u12) < 1e-8);
        assert!(u12.unitarity_deviation() < 1e-9);
    }

    #[test]
    fn sqrtm_diagonal() {
        let m = ComplexMatrix::from_diag_real(&[4.0, 9.0]);
        let r = sqrtm_psd(&m).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::from_diag_real(&[2.0, 3.0])) < 1e-12);
        let id = ComplexMatrix::identity(3);
        assert!(sqrtm_psd(&id).unwrap().max_abs_diff(&id) < 1e-14);
    }

    #[test]
    fn sqrtm_random_psd_squares_back() {
        let g = random_hermitian(5, 3);
        let psd = g.matmul(&g); // square of Hermitian is PSD
        let r = sqrtm_psd(&psd).unwrap();
        assert!(r.matmul(&r).max_abs_diff(&psd) < 1e-8);
        assert!(r.hermiticity_deviation() < 1e-10);
    }

    #[test]
    fn sqrtm_rejects_indefinite() {
        let m = ComplexMatrix::from_diag_real(&[1.0, -1.0]);
        assert!(matches!(sqrtm_psd(&m), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn fidelity_identical_is_one() {
        let rho = DensityMatrix::maximally_mixed(4);
        assert!((fidelity(&rho, &rho).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fidelity_orthogonal_bell_states_is_zero() {
        let s = 1.0 / 2f64.sqrt();
        let singlet =
            PureState::new(vec![c(0., 0.), c(s, 0.), c(-s, 0.), c(0., 0.)]).unwrap();
        let triplet = PureState::new(vec![c(0., 0.), c(s, 0.), c(s, 0.), c(0., 0.)]).unwrap();
        let f = fidelity(&singlet.density(), &triplet.density()).unwrap();
        assert!(f < 1e-10);
    }

    #[test]
    fn fidelity_pure_vs_maximally_mixed() {
        let ket01 = PureState::basis(4, 1).density();
        let mixed = DensityMatrix::maximally_mixed(4);
        let f = fidelity(&ket01, &mixed).unwrap();
        assert!((f - 0.25).abs() < 1e-10);
    }

    #[test]
    fn tensor_identities_and_sigma_z() {
        let i2 = ComplexMatrix::identity(2);
        assert!(tensor(&i2, &i2).max_abs_diff(&ComplexMatrix::identity(4)) == 0.0);
        let z = ComplexMatrix::from_diag_real(&[1.0, -1.0]);
        let zz = tensor(&z, &z);
        assert!(zz.max_abs_diff(&ComplexMatrix::from_diag_real(&[1.0, -1.0, -1.0, 1.0])) == 0.0);
    }

    #[test]
    fn tensor_mixed_product_property() {
        let a = random_hermitian(2, 10);
        let b = random_hermitian(2, 11);
        let p = random_hermitian(2, 12);
        let q = random_hermitian(2, 13);
        let lhs = tensor(&a, &b).matmul(&tensor(&p, &q));
        let rhs = tensor(&a.matmul(&p), &b.matmul(&q));
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn partial_trace_recovers_product_factor() {
        let sys = PureState::basis(4, 2).density();
        let bath = DensityMatrix::maximally_mixed(4);
        let joint = sys.matrix().tensor(bath.matrix());
        let joint = DensityMatrix::try_new(joint).unwrap();
        let reduced = partial_trace_bath(&joint, 4).unwrap();
        assert!(reduced.matrix().max_abs_diff(sys.matrix()) < 1e-10);
    }

    #[test]
    fn partial_trace_with_unit_bath_is_identity_op() {
        let rho = DensityMatrix::maximally_mixed(4);
        let out = partial_trace_bath(&rho, 1).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-12);
    }

    #[test]
    fn partial_trace_of_entangled_state_has_unit_trace() {
        // Bell-like state entangling a 2-dim system with a 2-dim bath.
        let s = 1.0 / 2f64.sqrt();
        let psi = PureState::new(vec![c(s, 0.), c(0., 0.), c(0., 0.), c(s, 0.)]).unwrap();
        let reduced = partial_trace_bath(&psi.density(), 2).unwrap();
        let tr = reduced.matrix().trace();
        assert!((tr.re - 1.0).abs() < 1e-10 && tr.im.abs() < 1e-12);
    }

    #[test]
    fn density_matrix_validation_rejects_bad_inputs() {
        // wrong trace
        let m = ComplexMatrix::identity(4);
        assert!(DensityMatrix::try_new(m).is_err());
        // negative eigenvalue
        let m = ComplexMatrix::from_diag_real(&[1.5, -0.5, 0.0, 0.0]);
        assert!(matches!(
            DensityMatrix::try_new(m),
            Err(Error::NotPsd { .. })
        ));
        // non-Hermitian
        let mut m = ComplexMatrix::from_diag_real(&[0.5, 0.5, 0.0, 0.0]);
        m.set(0, 1, c(0.1, 0.0));
        assert!(matches!(
            DensityMatrix::try_new(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn expm_general_matches_hermitian_route() {
        let h = random_hermitian(4, 21);
        // exp(-i h) both ways
        let direct = expm_herm_generator(&h, 1.0).unwrap();
        let pade = expm_general(&h.scale(c(0.0, -1.0)));
        assert!(direct.max_abs_diff(&pade) < 1e-11);
    }

    #[test]
    fn lu_solve_round_trip() {
        let a = random_hermitian(5, 33).add(&ComplexMatrix::identity(5).scale_re(3.0));
        let b = random_hermitian(5, 34);
        let x = lu_solve(&a, &b).unwrap();
        assert!(a.matmul(&x).max_abs_diff(&b) < 1e-10);
    }

    #[test]
    fn cholesky_reconstructs() {
        let g = random_hermitian(4, 40);
        let pd = g.matmul(&g).add(&ComplexMatrix::identity(4).scale_re(0.5));
        let l = cholesky_lower(&pd).unwrap();
        assert!(l.matmul(&l.adjoint()).max_abs_diff(&pd) < 1e-10);
    }
}
