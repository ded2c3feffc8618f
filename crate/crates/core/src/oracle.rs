//! Brute-force reference over the full `2^N` dimensional Hilbert space.
//!
//! Two independent routes live here. The generic one builds Pauli strings by
//! Kronecker products, evolves them with a Hermitian eigendecomposition of the
//! dense Hamiltonian and takes norms of explicit commutators. The fast one,
//! [`DirectOracle`], block-diagonalises `H'` by the global spin-flip parity
//! `P = X_1 ... X_N` and evaluates the commutator norm inside the two sectors.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::ChainParams;
use crate::pauli::{Pauli, PauliString};

/// Largest chain the dense routes will touch.
pub const MAX_DENSE_QUBITS: usize = 14;

/// Largest chain for the explicit `Q Q^dagger` isotropy check.
pub const MAX_ISOTROPY_QUBITS: usize = 10;

/// Relative off-diagonal tolerance for `Q Q^dagger = c I`.
pub const ISOTROPY_TOLERANCE: f64 = 1e-10;

/// `Q Q^dagger` entries below this are indistinguishable from round-off.
const ROUNDOFF_FLOOR: f64 = 1e-20;

const C0: Complex64 = Complex64::new(0.0, 0.0);

fn guard(n_qubits: usize, limit: usize) -> Result<()> {
    if n_qubits > limit {
        return Err(Error::DimensionGuard { n_qubits, limit });
    }
    Ok(())
}

/// Square complex matrix acting on `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    n_qubits: usize,
    entries: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn new(n_qubits: usize, entries: DMatrix<Complex64>) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for {} qubits",
                entries.nrows(),
                entries.ncols(),
                n_qubits
            )));
        }
        Ok(DenseOperator { n_qubits, entries })
    }

    pub fn identity(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        DenseOperator {
            n_qubits,
            entries: DMatrix::identity(dim, dim),
        }
    }

    pub fn from_real(n_qubits: usize, m: &DMatrix<f64>) -> Result<Self> {
        DenseOperator::new(n_qubits, m.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    pub fn scale(&self, factor: f64) -> Self {
        DenseOperator {
            n_qubits: self.n_qubits,
            entries: self.entries.map(|x| x * factor),
        }
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let ab = &self.entries * &other.entries;
        let ba = &other.entries * &self.entries;
        Ok(DenseOperator {
            n_qubits: self.n_qubits,
            entries: ab - ba,
        })
    }

    pub fn adjoint(&self) -> Self {
        DenseOperator {
            n_qubits: self.n_qubits,
            entries: self.entries.adjoint(),
        }
    }

    /// Largest entry of `|A - A^dagger|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = &self.entries - self.entries.adjoint();
        d.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Normalized inner product `Tr(A^dagger B) / 2^N`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same(other)?;
        let sum: Complex64 = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(sum / self.dim() as f64)
    }

    /// Eigenvalues, assuming the operator is Hermitian.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = SymmetricEigen::new(self.entries.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        v.sort_by(f64::total_cmp);
        v
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} qubits",
                self.n_qubits, other.n_qubits
            )));
        }
        Ok(())
    }
}

/// Kronecker product of the single-site matrices, site 1 leftmost.
pub fn pauli_string_matrix(s: &PauliString) -> Result<DenseOperator> {
    let n = s.len();
    if n == 0 {
        return Err(Error::InvalidParams("empty Pauli string".into()));
    }
    guard(n, MAX_DENSE_QUBITS)?;
    let dim = 1usize << n;
    let mut m = DMatrix::from_element(dim, dim, C0);
    // Each row holds exactly one nonzero: column = row ^ flip mask.
    let mut flip = 0usize;
    for (idx, p) in s.codes().iter().enumerate() {
        if p.flips() {
            flip |= 1 << (n - 1 - idx);
        }
    }
    for row in 0..dim {
        let col = row ^ flip;
        let mut value = Complex64::new(1.0, 0.0);
        for (idx, p) in s.codes().iter().enumerate() {
            let shift = n - 1 - idx;
            let r = (row >> shift) & 1;
            let c = (col >> shift) & 1;
            value *= p.matrix()[r][c];
        }
        m[(row, col)] = value;
    }
    DenseOperator::new(n, m)
}

/// Dense real `H' = -sum X_k - J' sum Z_k Z_{k+1}` with open ends.
pub fn hamiltonian_real(p: ChainParams) -> Result<DMatrix<f64>> {
    guard(p.n_qubits, MAX_DENSE_QUBITS)?;
    let n = p.n_qubits;
    let dim = 1usize << n;
    let mut h = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        h[(i, i)] = -p.j_coupling * bond_sum(i, n);
        for bit in 0..n {
            h[(i ^ (1 << bit), i)] -= 1.0;
        }
    }
    Ok(h)
}

/// `sum_k z_k z_{k+1}` for a basis state.
fn bond_sum(state: usize, n: usize) -> f64 {
    (0..n.saturating_sub(1))
        .map(|b| {
            if ((state >> b) ^ (state >> (b + 1))) & 1 == 0 {
                1.0
            } else {
                -1.0
            }
        })
        .sum()
}

pub fn build_hamiltonian(p: ChainParams) -> Result<DenseOperator> {
    DenseOperator::from_real(p.n_qubits, &hamiltonian_real(p)?)
}

/// Cached spectral decomposition of a Hermitian `H` for repeated evolution.
pub struct HeisenbergPropagator {
    n_qubits: usize,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl HeisenbergPropagator {
    pub fn new(h: &DenseOperator) -> Result<Self> {
        let scale = h.entries.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let defect = h.hermiticity_defect();
        if defect > 1e-12 * scale {
            return Err(Error::NotHermitian(defect));
        }
        let eig = SymmetricEigen::new(h.entries.clone());
        Ok(HeisenbergPropagator {
            n_qubits: h.n_qubits,
            eigenvalues: eig.eigenvalues.iter().copied().collect(),
            eigenvectors: eig.eigenvectors,
        })
    }

    /// `U(s) = exp(i pi s H)`.
    pub fn unitary(&self, s: f64) -> DMatrix<Complex64> {
        let mut vd = self.eigenvectors.clone();
        for (j, lam) in self.eigenvalues.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, std::f64::consts::PI * s * lam);
            for z in vd.column_mut(j).iter_mut() {
                *z *= phase;
            }
        }
        vd * self.eigenvectors.adjoint()
    }

    /// `exp(i pi s H) op exp(-i pi s H)`.
    pub fn evolve(&self, op: &DenseOperator, s: f64) -> Result<DenseOperator> {
        if op.n_qubits != self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} qubits",
                op.n_qubits, self.n_qubits
            )));
        }
        if s == 0.0 {
            return Ok(op.clone());
        }
        let u = self.unitary(s);
        let entries = &u * &op.entries * u.adjoint();
        Ok(DenseOperator {
            n_qubits: self.n_qubits,
            entries,
        })
    }
}

pub fn heisenberg_evolve(op: &DenseOperator, h: &DenseOperator, s: f64) -> Result<DenseOperator> {
    HeisenbergPropagator::new(h)?.evolve(op, s)
}

/// `sqrt(Tr(A^dagger A) / 2^N)`.
pub fn frobenius_norm(op: &DenseOperator) -> f64 {
    let sum: f64 = op.entries.iter().map(|z| z.norm_sqr()).sum();
    (sum / op.dim() as f64).sqrt()
}

/// Largest singular value.
pub fn operator_norm(op: &DenseOperator) -> f64 {
    op.entries
        .clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// `C_k(s)` along the generic route: explicit Pauli matrices, dense evolution
/// and the normalized Frobenius norm of the commutator.
pub fn lr_direct_generic(p: ChainParams, k: usize, s: f64) -> Result<f64> {
    p.check_qubit(k)?;
    let h = build_hamiltonian(p)?;
    let z1 = pauli_string_matrix(&PauliString::from_sites(p.n_qubits, &[(1, Pauli::Z)]))?;
    let zk = pauli_string_matrix(&PauliString::from_sites(p.n_qubits, &[(k, Pauli::Z)]))?;
    let z1s = heisenberg_evolve(&z1, &h, s)?;
    Ok(frobenius_norm(&zk.commutator(&z1s)?))
}

/// One parity sector: its real symmetric block and eigendecomposition.
struct Sector {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

/// Exact `C_k(s)` for chains up to [`MAX_DENSE_QUBITS`].
///
/// Basis states with the site-1 bit clear label the sector vectors
/// `(|i> +- |~i>)/sqrt 2`, `~i` being the full bit complement. In that basis
/// `Z_1` and every `Z_k` are block off-diagonal, so with
/// `W(s) = U_+(s) U_-(s)^dagger` one has
/// `[Z_k, Z_1(s)] = diag(D_k W^dagger - W D_k, D_k W - W^dagger D_k)`,
/// where `D_k` holds the `Z_k` eigenvalues of the representatives.
pub struct DirectOracle {
    params: ChainParams,
    plus: Sector,
    minus: Sector,
    /// `V_+^T V_-`.
    overlap: DMatrix<f64>,
    /// `z_k(i)` for each qubit and representative.
    z_signs: Vec<Vec<f64>>,
}

impl DirectOracle {
    pub fn new(params: ChainParams) -> Result<Self> {
        guard(params.n_qubits, MAX_DENSE_QUBITS)?;
        let (hp, hm) = parity_blocks(params)?;
        let plus = diagonalize(hp);
        let minus = diagonalize(hm);
        let overlap = plus.eigenvectors.transpose() * &minus.eigenvectors;
        let n = params.n_qubits;
        let half = 1usize << (n - 1);
        let z_signs = (1..=n)
            .map(|k| {
                let shift = n - k;
                (0..half)
                    .map(|i| if (i >> shift) & 1 == 0 { 1.0 } else { -1.0 })
                    .collect()
            })
            .collect();
        Ok(DirectOracle {
            params,
            plus,
            minus,
            overlap,
            z_signs,
        })
    }

    pub fn params(&self) -> ChainParams {
        self.params
    }

    /// `W(s) = U_+ U_-^dagger` with `U = exp(i pi s H)`.
    fn sector_transfer(&self, s: f64) -> DMatrix<Complex64> {
        let theta = std::f64::consts::PI * s;
        let half = self.overlap.nrows();
        let mut re = DMatrix::zeros(half, half);
        let mut im = DMatrix::zeros(half, half);
        for b in 0..half {
            let lb = self.minus.eigenvalues[b];
            for a in 0..half {
                let phase = theta * (self.plus.eigenvalues[a] - lb);
                let k = self.overlap[(a, b)];
                re[(a, b)] = k * phase.cos();
                im[(a, b)] = k * phase.sin();
            }
        }
        let vp = &self.plus.eigenvectors;
        let vm_t = self.minus.eigenvectors.transpose();
        let w_re = vp * re * &vm_t;
        let w_im = vp * im * &vm_t;
        DMatrix::from_fn(half, half, |i, j| Complex64::new(w_re[(i, j)], w_im[(i, j)]))
    }

    /// The two diagonal blocks of `[Z_k, Z_1(s)]`.
    fn commutator_blocks(&self, w: &DMatrix<Complex64>, k: usize) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
        let d = &self.z_signs[k - 1];
        let half = w.nrows();
        let first = DMatrix::from_fn(half, half, |i, j| d[i] * w[(j, i)].conj() - w[(i, j)] * d[j]);
        let second = DMatrix::from_fn(half, half, |i, j| d[i] * w[(i, j)] - w[(j, i)].conj() * d[j]);
        (first, second)
    }

    /// `C_k(s)` for every `k = 1..=N`.
    pub fn correlations(&self, s: f64) -> Vec<f64> {
        if s == 0.0 {
            return vec![0.0; self.params.n_qubits];
        }
        let w = self.sector_transfer(s);
        let dim = (2 * w.nrows()) as f64;
        (1..=self.params.n_qubits)
            .map(|k| {
                let d = &self.z_signs[k - 1];
                let half = w.nrows();
                let mut sum = 0.0;
                for j in 0..half {
                    for i in 0..half {
                        let wij = w[(i, j)];
                        let wji = w[(j, i)].conj();
                        sum += (wji * d[i] - wij * d[j]).norm_sqr();
                        sum += (wij * d[i] - wji * d[j]).norm_sqr();
                    }
                }
                (sum / dim).sqrt()
            })
            .collect()
    }

    pub fn correlation(&self, k: usize, s: f64) -> Result<f64> {
        self.params.check_qubit(k)?;
        Ok(self.correlations(s)[k - 1])
    }

    /// Tests `Q Q^dagger = c I` for `Q = [Z_k, Z_1(s)]`; returns `(ok, c)`.
    pub fn isotropy(&self, k: usize, s: f64) -> Result<(bool, f64)> {
        self.params.check_qubit(k)?;
        guard(self.params.n_qubits, MAX_ISOTROPY_QUBITS)?;
        if s == 0.0 {
            return Ok((true, 0.0));
        }
        let w = self.sector_transfer(s);
        let (a, b) = self.commutator_blocks(&w, k);
        let mut diag_max: f64 = 0.0;
        let mut diag_min = f64::INFINITY;
        let mut diag_sum = 0.0;
        let mut off_max: f64 = 0.0;
        for block in [&a, &b] {
            let g = block * block.adjoint();
            for j in 0..g.ncols() {
                for i in 0..g.nrows() {
                    if i == j {
                        let v = g[(i, i)].re;
                        diag_max = diag_max.max(v);
                        diag_min = diag_min.min(v);
                        diag_sum += v;
                        off_max = off_max.max(g[(i, i)].im.abs());
                    } else {
                        off_max = off_max.max(g[(i, j)].norm());
                    }
                }
            }
        }
        let c = diag_sum / (2 * a.nrows()) as f64;
        let scale = diag_max.max(ROUNDOFF_FLOOR);
        let ok = off_max <= ISOTROPY_TOLERANCE * scale && (diag_max - diag_min) <= ISOTROPY_TOLERANCE * scale;
        Ok((ok, c))
    }
}

fn diagonalize(h: DMatrix<f64>) -> Sector {
    let eig = SymmetricEigen::new(h);
    Sector {
        eigenvalues: eig.eigenvalues.iter().copied().collect(),
        eigenvectors: eig.eigenvectors,
    }
}

/// `H'` restricted to the even and odd spin-flip sectors.
///
/// For representatives `i`, `j` (site-1 bit clear),
/// `<j+-|H|i+-> = <j|H|i> +- <j|H|~i>`; only the `X_1` term reaches `~i`.
pub fn parity_blocks(p: ChainParams) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    guard(p.n_qubits, MAX_DENSE_QUBITS)?;
    let n = p.n_qubits;
    let half = 1usize << (n - 1);
    let low_mask = half - 1;
    let mut plus = DMatrix::zeros(half, half);
    let mut minus = DMatrix::zeros(half, half);
    for i in 0..half {
        let diag = -p.j_coupling * bond_sum(i, n);
        plus[(i, i)] += diag;
        minus[(i, i)] += diag;
        for bit in 0..n - 1 {
            let j = i ^ (1 << bit);
            plus[(j, i)] -= 1.0;
            minus[(j, i)] -= 1.0;
        }
        // X_1 |i> = |~(i ^ low_mask)>.
        let j = i ^ low_mask;
        plus[(j, i)] -= 1.0;
        minus[(j, i)] += 1.0;
    }
    Ok((plus, minus))
}

/// `C_k(s) = || [Z_k, Z_1(s)] ||` on the dense oracle.
pub fn lr_direct(p: ChainParams, k: usize, s: f64) -> Result<f64> {
    p.check_qubit(k)?;
    DirectOracle::new(p)?.correlation(k, s)
}

/// Checks that `Q Q^dagger` is a multiple `c I` of the identity.
pub fn commutator_isotropy_check(p: ChainParams, k: usize, s: f64) -> Result<(bool, f64)> {
    guard(p.n_qubits, MAX_ISOTROPY_QUBITS)?;
    DirectOracle::new(p)?.isotropy(k, s)
}

/// Same check through explicit dense matrices; intended for `N <= 6`.
pub fn isotropy_generic(q: &DenseOperator) -> (bool, f64) {
    let g = q.entries() * q.entries().adjoint();
    let dim = g.nrows();
    let diag: Vec<f64> = (0..dim).map(|i| g[(i, i)].re).collect();
    let dmax = diag.iter().copied().fold(0.0, f64::max);
    let dmin = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let c = diag.iter().sum::<f64>() / dim as f64;
    let scale = dmax.max(ROUNDOFF_FLOOR);
    let mut off: f64 = 0.0;
    for j in 0..dim {
        for i in 0..dim {
            if i != j {
                off = off.max(g[(i, j)].norm());
            }
        }
    }
    (
        off <= ISOTROPY_TOLERANCE * scale && dmax - dmin <= ISOTROPY_TOLERANCE * scale,
        c,
    )
}
