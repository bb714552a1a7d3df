//! Qudit operators: generalized Pauli X/Z, the single-qudit DFT, the
//! two-qudit ADD gate, and the register-wide Q(FFFT) permutation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Error;
use crate::field::{Field, FieldElement, FieldOps};
use crate::transform::TransformPlan;
use crate::Result;

use super::state::QuditState;
use super::{DENSE_SIDE_LIMIT, TOLERANCE};

#[derive(Clone)]
enum Kind {
    /// U|j⟩ = |perm[j]⟩.
    Permutation(Vec<usize>),
    /// U|j⟩ = phases[j]·|j⟩.
    Diagonal(Vec<Complex64>),
    /// Dense matrix[row][col].
    Dense(Vec<Vec<Complex64>>),
}

/// An operator on a block of adjacent basis digits (one qudit, a qudit
/// pair, or the leading n-qudit block for Q(FFFT)).
#[derive(Clone)]
pub struct QuditOperator {
    field: Field,
    /// Number of qudits the operator spans.
    span: usize,
    side: usize,
    kind: Kind,
}

/// ω = e^{2πi/p} raised to an integer power.
fn omega_pow(p: u64, e: u64) -> Complex64 {
    let angle = 2.0 * PI * (e % p) as f64 / p as f64;
    Complex64::new(angle.cos(), angle.sin())
}

/// X(α): |θ⟩ -> |θ + α⟩.
pub fn op_x(field: &Field, alpha: &FieldElement) -> QuditOperator {
    let d = field.size() as usize;
    let a = alpha.code();
    let perm: Vec<usize> = (0..d as u64)
        .map(|c| field.add_codes(a, c) as usize)
        .collect();
    QuditOperator {
        field: field.clone(),
        span: 1,
        side: d,
        kind: Kind::Permutation(perm),
    }
}

/// Z(γ): |θ⟩ -> ω^{Tr(γθ)}|θ⟩.
pub fn op_z(field: &Field, gamma: &FieldElement) -> QuditOperator {
    let d = field.size() as usize;
    let phases: Vec<Complex64> = (0..d as u64)
        .map(|c| {
            let t = gamma.mul(&field.from_code(c)).unwrap().trace_int();
            omega_pow(field.p(), t)
        })
        .collect();
    QuditOperator {
        field: field.clone(),
        span: 1,
        side: d,
        kind: Kind::Diagonal(phases),
    }
}

/// DFT: (1/√D) Σ ω^{Tr(θν)} |θ⟩⟨ν|.
pub fn op_dft(field: &Field) -> QuditOperator {
    let d = field.size() as usize;
    let scale = 1.0 / (d as f64).sqrt();
    let elems = field.elements();
    let mut matrix = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for (row, theta) in elems.iter().enumerate() {
        for (col, nu) in elems.iter().enumerate() {
            let t = theta.mul(nu).unwrap().trace_int();
            matrix[row][col] = omega_pow(field.p(), t) * scale;
        }
    }
    QuditOperator {
        field: field.clone(),
        span: 1,
        side: d,
        kind: Kind::Dense(matrix),
    }
}

/// ADD(1,2): |θ1, θ2⟩ -> |θ1, θ1 + θ2⟩ on a qudit pair.
pub fn op_add(field: &Field) -> QuditOperator {
    let d = field.size() as usize;
    let mut perm = vec![0usize; d * d];
    for t1 in 0..d as u64 {
        for t2 in 0..d as u64 {
            let src = (t1 as usize) * d + t2 as usize;
            let dst = (t1 as usize) * d + field.add_codes(t1, t2) as usize;
            perm[src] = dst;
        }
    }
    QuditOperator {
        field: field.clone(),
        span: 2,
        side: d * d,
        kind: Kind::Permutation(perm),
    }
}

/// Q(FFFT): the basis permutation |γ⟩ -> |FFFT(γ)⟩ over F_{p^k'}^n.
pub fn op_qfffft(plan: &TransformPlan) -> Result<QuditOperator> {
    let field = plan.spec().clone();
    let d = field.size() as usize;
    let n = plan.n();
    let mut side = 1u128;
    for _ in 0..n {
        side = side.checked_mul(d as u128).unwrap_or(u128::MAX);
        if side > super::STATE_AMPLITUDE_LIMIT {
            return Err(Error::BudgetExceeded {
                needed: side,
                budget: super::STATE_AMPLITUDE_LIMIT,
            });
        }
    }
    let side = side as usize;
    let mut perm = vec![0usize; side];
    let mut digits = vec![0u64; n];
    for src in 0..side {
        // decode src into element codes, most significant digit first
        let mut rem = src;
        for g in (0..n).rev() {
            digits[g] = (rem % d) as u64;
            rem /= d;
        }
        let vector: Vec<FieldElement> = digits.iter().map(|&c| field.from_code(c)).collect();
        let spectrum = plan.fffft(&vector)?;
        let mut dst = 0usize;
        for e in &spectrum {
            dst = dst * d + e.code() as usize;
        }
        perm[src] = dst;
    }
    Ok(QuditOperator {
        field,
        span: n,
        side,
        kind: Kind::Permutation(perm),
    })
}

impl QuditOperator {
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn span(&self) -> usize {
        self.span
    }

    pub fn is_permutation(&self) -> bool {
        matches!(self.kind, Kind::Permutation(_))
    }

    /// The inverse operator (adjoint for the unitaries built here).
    pub fn inverse(&self) -> QuditOperator {
        let kind = match &self.kind {
            Kind::Permutation(p) => {
                let mut inv = vec![0usize; p.len()];
                for (src, &dst) in p.iter().enumerate() {
                    inv[dst] = src;
                }
                Kind::Permutation(inv)
            }
            Kind::Diagonal(d) => Kind::Diagonal(d.iter().map(Complex64::conj).collect()),
            Kind::Dense(m) => {
                let side = m.len();
                let mut out = vec![vec![Complex64::new(0.0, 0.0); side]; side];
                for r in 0..side {
                    for c in 0..side {
                        out[c][r] = m[r][c].conj();
                    }
                }
                Kind::Dense(out)
            }
        };
        QuditOperator {
            field: self.field.clone(),
            span: self.span,
            side: self.side,
            kind,
        }
    }

    /// Expand to a dense matrix (side capped at `DENSE_SIDE_LIMIT`).
    pub fn to_matrix(&self) -> Result<Vec<Vec<Complex64>>> {
        if self.side > DENSE_SIDE_LIMIT {
            return Err(Error::BudgetExceeded {
                needed: self.side as u128,
                budget: DENSE_SIDE_LIMIT as u128,
            });
        }
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        Ok(match &self.kind {
            Kind::Permutation(p) => {
                let mut m = vec![vec![zero; self.side]; self.side];
                for (col, &row) in p.iter().enumerate() {
                    m[row][col] = one;
                }
                m
            }
            Kind::Diagonal(d) => {
                let mut m = vec![vec![zero; self.side]; self.side];
                for (i, &ph) in d.iter().enumerate() {
                    m[i][i] = ph;
                }
                m
            }
            Kind::Dense(m) => m.clone(),
        })
    }

    /// Apply to the block of `span` adjacent qudits starting at 1-based
    /// position `first` of the register.
    pub fn apply(&self, state: &QuditState, first: usize) -> Result<QuditState> {
        let m = state.num_qudits();
        if first == 0 || first + self.span - 1 > m {
            return Err(Error::IndexOutOfRange { index: first, n: m });
        }
        let d = state.dim_per_qudit();
        // index = prefix·(side·suffix_len) + block·suffix_len + suffix
        let suffix_len = d.pow((m - (first - 1) - self.span) as u32);
        let block_len = self.side * suffix_len;
        let total = state.amplitudes().len();
        let mut out = vec![Complex64::new(0.0, 0.0); total];
        match &self.kind {
            Kind::Permutation(p) => {
                for idx in 0..total {
                    let block = (idx / suffix_len) % self.side;
                    let base = idx - block * suffix_len;
                    let dst = base + p[block] * suffix_len;
                    out[dst] = state.amplitudes()[idx];
                }
            }
            Kind::Diagonal(phases) => {
                for idx in 0..total {
                    let block = (idx / suffix_len) % self.side;
                    out[idx] = phases[block] * state.amplitudes()[idx];
                }
            }
            Kind::Dense(matrix) => {
                for prefix in 0..total / block_len {
                    for suffix in 0..suffix_len {
                        let base = prefix * block_len + suffix;
                        for row in 0..self.side {
                            let mut acc = Complex64::new(0.0, 0.0);
                            for col in 0..self.side {
                                let a = state.amplitudes()[base + col * suffix_len];
                                if a != Complex64::new(0.0, 0.0) {
                                    acc += matrix[row][col] * a;
                                }
                            }
                            out[base + row * suffix_len] = acc;
                        }
                    }
                }
            }
        }
        QuditState::from_amplitudes(state.field(), m, out)
    }

    /// Apply ADD with arbitrary (not necessarily adjacent) control and
    /// target positions (1-based). Only valid for span-2 permutations
    /// built by `op_add`.
    pub fn apply_add_at(
        &self,
        state: &QuditState,
        control: usize,
        target: usize,
    ) -> Result<QuditState> {
        let Kind::Permutation(_) = &self.kind else {
            return Err(Error::NotBasisError);
        };
        let m = state.num_qudits();
        if control == 0 || control > m || target == 0 || target > m || control == target {
            return Err(Error::IndexOutOfRange {
                index: target,
                n: m,
            });
        }
        let d = state.dim_per_qudit();
        let shift_c = d.pow((m - control) as u32);
        let shift_t = d.pow((m - target) as u32);
        let total = state.amplitudes().len();
        let mut out = vec![Complex64::new(0.0, 0.0); total];
        for idx in 0..total {
            let tc = (idx / shift_c) % d;
            let tt = (idx / shift_t) % d;
            let new_t = self.field.add_codes(tc as u64, tt as u64) as usize;
            let dst = idx - tt * shift_t + new_t * shift_t;
            out[dst] = state.amplitudes()[idx];
        }
        QuditState::from_amplitudes(state.field(), m, out)
    }

    /// ‖U·U† − I‖_F, the unitarity defect.
    pub fn unitarity_defect(&self) -> Result<f64> {
        let m = self.to_matrix()?;
        let side = self.side;
        let mut defect = 0.0f64;
        for r in 0..side {
            for c in 0..side {
                // (U U†)[r][c] = Σ_k U[r][k]·conj(U[c][k])
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..side {
                    acc += m[r][k] * m[c][k].conj();
                }
                let expect = if r == c { 1.0 } else { 0.0 };
                defect += (acc - Complex64::new(expect, 0.0)).norm_sqr();
            }
        }
        Ok(defect.sqrt())
    }
}

/// Frobenius distance between two dense matrices.
pub(crate) fn matrix_distance(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    let mut acc = 0.0f64;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            acc += (x - y).norm_sqr();
        }
    }
    acc.sqrt()
}

/// Dense product a·b.
pub(crate) fn matrix_mul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for r in 0..n {
        for k in 0..n {
            let av = a[r][k];
            if av == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..n {
                out[r][c] += av * b[k][c];
            }
        }
    }
    out
}

/// Kronecker product a ⊗ b.
pub(crate) fn kron(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let (na, nb) = (a.len(), b.len());
    let n = na * nb;
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for ra in 0..na {
        for ca in 0..na {
            if a[ra][ca] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for rb in 0..nb {
                for cb in 0..nb {
                    out[ra * nb + rb][ca * nb + cb] = a[ra][ca] * b[rb][cb];
                }
            }
        }
    }
    out
}

/// True when the two matrices agree within the shared tolerance.
pub(crate) fn matrices_equal(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> bool {
    matrix_distance(a, b) < TOLERANCE
}
