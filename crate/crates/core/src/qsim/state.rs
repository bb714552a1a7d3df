//! Qudit register states as dense complex amplitude vectors.

use num_complex::Complex64;

use crate::error::Error;
use crate::field::{Field, FieldOps};
use crate::Result;

use super::{STATE_AMPLITUDE_LIMIT, TOLERANCE};

#[derive(Clone)]
pub struct QuditState {
    field: Field,
    num_qudits: usize,
    amplitudes: Vec<Complex64>,
}

impl QuditState {
    pub fn dim_per_qudit(&self) -> usize {
        self.field.size() as usize
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num_qudits(&self) -> usize {
        self.num_qudits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    fn register_len(field: &Field, num_qudits: usize) -> Result<usize> {
        let d = field.size() as u128;
        let mut len = 1u128;
        for _ in 0..num_qudits {
            len = len.checked_mul(d).unwrap_or(u128::MAX);
            if len > STATE_AMPLITUDE_LIMIT {
                return Err(Error::BudgetExceeded {
                    needed: len,
                    budget: STATE_AMPLITUDE_LIMIT,
                });
            }
        }
        Ok(len as usize)
    }

    /// |θ_1 ... θ_m⟩ from per-qudit element codes.
    pub fn basis(field: &Field, codes: &[u64]) -> Result<QuditState> {
        let len = Self::register_len(field, codes.len())?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); len];
        let mut idx = 0usize;
        for &c in codes {
            idx = idx * field.size() as usize + c as usize;
        }
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(QuditState {
            field: field.clone(),
            num_qudits: codes.len(),
            amplitudes,
        })
    }

    pub fn from_amplitudes(
        field: &Field,
        num_qudits: usize,
        amplitudes: Vec<Complex64>,
    ) -> Result<QuditState> {
        let len = Self::register_len(field, num_qudits)?;
        if amplitudes.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                got: amplitudes.len(),
            });
        }
        Ok(QuditState {
            field: field.clone(),
            num_qudits,
            amplitudes,
        })
    }

    /// Digit of `index` at qudit position (1-based, most significant first).
    pub fn digit(&self, index: usize, position: usize) -> usize {
        let d = self.dim_per_qudit();
        let shift = self.num_qudits - position;
        (index / d.pow(shift as u32)) % d
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() < TOLERANCE
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &QuditState) -> Result<Complex64> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.amplitudes.len(),
                got: other.amplitudes.len(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |⟨self|other⟩| — phase-invariant overlap.
    pub fn fidelity(&self, other: &QuditState) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    /// Exact amplitude-wise distance (no phase forgiveness).
    pub fn distance(&self, other: &QuditState) -> Result<f64> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.amplitudes.len(),
                got: other.amplitudes.len(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    pub fn tensor(&self, other: &QuditState) -> Result<QuditState> {
        let len = Self::register_len(&self.field, self.num_qudits + other.num_qudits)?;
        let mut amplitudes = Vec::with_capacity(len);
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Ok(QuditState {
            field: self.field.clone(),
            num_qudits: self.num_qudits + other.num_qudits,
            amplitudes,
        })
    }

    /// Extend with ancilla qudits in |0⟩.
    pub fn with_ancillas(&self, count: usize) -> Result<QuditState> {
        let anc = QuditState::basis(&self.field, &vec![0u64; count])?;
        self.tensor(&anc)
    }

    /// Dump: one line per basis state with |amplitude| ≥ 1e-12, element
    /// strings for the basis tuple and 12 significant digits for the
    /// amplitude.
    pub fn dump_text(&self) -> String {
        let mut out = String::new();
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            if amp.norm() < 1e-12 {
                continue;
            }
            let digits: Vec<String> = (1..=self.num_qudits)
                .map(|pos| {
                    self.field
                        .from_code(self.digit(idx, pos) as u64)
                        .to_string()
                })
                .collect();
            out.push_str(&format!(
                "|{}>  {:+.12e} {:+.12e}i\n",
                digits.join(","),
                amp.re,
                amp.im
            ));
        }
        out
    }
}

impl std::fmt::Debug for QuditState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "QuditState({} qudits of dim {})",
            self.num_qudits,
            self.dim_per_qudit()
        )
    }
}
