//! The finite field Fourier transform for λ-constacyclic codes.
//!
//! The forward transform is the β-twisted DFT
//! `A_j = Σ_i a_i (βξ^j)^i` with `β^n = λ` and ξ of multiplicative order
//! exactly n; the inverse is `a_i = (1/(nβ^i)) Σ_j ξ^{-ij} A_j`. Both are
//! applied directly in O(n²); block lengths at desk scale never warrant a
//! fast transform.

use std::fmt;

use crate::error::Error;
use crate::field::{Field, FieldElement, FieldOps};
use crate::Result;

/// Precomputed data for one (field, n, β, ξ) transform instance. The
/// forward and inverse Vandermonde rows are cached at construction so a
/// transform costs n(n-1) multiplications and additions, matching the
/// direct-application operation model.
#[derive(Clone)]
pub struct TransformPlan {
    spec: Field,
    n: usize,
    beta: FieldElement,
    xi: FieldElement,
    lambda: FieldElement,
    n_inv: FieldElement,
    /// forward[j][i] = (βξ^j)^i
    forward: Vec<Vec<FieldElement>>,
    /// inverse[i][j] = (1/(nβ^i))·ξ^{-ij}
    inverse: Vec<Vec<FieldElement>>,
}

impl fmt::Debug for TransformPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor_text())
    }
}

impl TransformPlan {
    /// Build a plan from an explicit β. ξ defaults to w^((p^k'-1)/n).
    pub fn new(
        spec: &Field,
        n: usize,
        beta: FieldElement,
        xi: Option<FieldElement>,
    ) -> Result<TransformPlan> {
        if n == 0 {
            return Err(Error::NoSuchRoot { order: 0 });
        }
        if n as u64 % spec.p() == 0 {
            return Err(Error::RepeatedRootPlan);
        }
        if spec.order() % n as u64 != 0 {
            return Err(Error::NoSuchRoot { order: n });
        }
        let xi = match xi {
            Some(x) => x,
            None => spec.elem_from_power((spec.order() / n as u64) as i64),
        };
        if xi.multiplicative_order()? != n as u64 {
            return Err(Error::NoSuchRoot { order: n });
        }
        if beta.is_zero() {
            return Err(Error::ZeroLambda);
        }
        let lambda = beta.pow(n as i64)?;
        let n_inv = spec.from_int(n as i64).inv()?;
        let mut forward = Vec::with_capacity(n);
        let mut base = beta.clone();
        for _ in 0..n {
            let mut row = Vec::with_capacity(n);
            let mut power = spec.one();
            for _ in 0..n {
                row.push(power.clone());
                power = power.mul(&base)?;
            }
            forward.push(row);
            base = base.mul(&xi)?;
        }
        let xi_inv = xi.inv()?;
        let beta_inv = beta.inv()?;
        let mut inverse = Vec::with_capacity(n);
        let mut scale = n_inv.clone(); // (1/n)·β^{-i}
        let mut base = spec.one(); // ξ^{-i}
        for _ in 0..n {
            let mut row = Vec::with_capacity(n);
            let mut power = scale.clone();
            for _ in 0..n {
                row.push(power.clone());
                power = power.mul(&base)?;
            }
            inverse.push(row);
            scale = scale.mul(&beta_inv)?;
            base = base.mul(&xi_inv)?;
        }
        Ok(TransformPlan {
            spec: spec.clone(),
            n,
            beta,
            xi,
            lambda,
            n_inv,
            forward,
            inverse,
        })
    }

    /// Build a plan from λ, discovering the β with β^n = λ whose discrete
    /// log is smallest, preferring solutions inside the designated
    /// subfield GF(p^s).
    pub fn from_lambda(spec: &Field, n: usize, lambda: &FieldElement) -> Result<TransformPlan> {
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        let order = spec.order();
        let target = lambda.discrete_log()?;
        // solve j*n ≡ target (mod order)
        let g = gcd(n as u64, order);
        if target % g != 0 {
            return Err(Error::NoSuchRoot { order: n });
        }
        let step = order / g;
        let n_red = n as u64 / g;
        let t_red = target / g;
        let j0 = mulmod(t_red % step, modinv(n_red % step, step), step);
        // candidates j0 + k*step for k in 0..g, ascending discrete log
        let mut candidates: Vec<u64> = (0..g).map(|k| (j0 + k * step) % order).collect();
        candidates.sort_unstable();
        let sub_index = order / (pow_u64(spec.p(), spec.s()) - 1);
        let in_subfield = |j: u64| j % sub_index == 0;
        let j = candidates
            .iter()
            .copied()
            .find(|&j| in_subfield(j))
            .unwrap_or(candidates[0]);
        let beta = spec.elem_from_power(j as i64);
        debug_assert_eq!(beta.pow(n as i64)?, *lambda);
        TransformPlan::new(spec, n, beta, None)
    }

    pub fn spec(&self) -> &Field {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    pub fn xi(&self) -> &FieldElement {
        &self.xi
    }

    pub fn lambda(&self) -> &FieldElement {
        &self.lambda
    }

    pub fn n_inv(&self) -> &FieldElement {
        &self.n_inv
    }

    /// `FFFT(n=13; beta=w^13; xi=w^2)`
    pub fn descriptor_text(&self) -> String {
        format!("FFFT(n={}; beta={}; xi={})", self.n, self.beta, self.xi)
    }

    /// βξ^j for j = 0..n-1.
    pub fn eval_points(&self) -> Result<Vec<FieldElement>> {
        let mut out = Vec::with_capacity(self.n);
        let mut cur = self.beta.clone();
        for _ in 0..self.n {
            out.push(cur.clone());
            cur = cur.mul(&self.xi)?;
        }
        Ok(out)
    }

    fn check_vector(&self, a: &[FieldElement]) -> Result<()> {
        if a.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: a.len(),
            });
        }
        for x in a {
            if **x.owner() != *self.spec {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(())
    }

    /// Forward transform A_j = Σ_i a_i (βξ^j)^i.
    pub fn fffft(&self, a: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_vector(a)?;
        let mut out = Vec::with_capacity(self.n);
        for row in &self.forward {
            let mut acc = self.spec.zero();
            for (ai, v) in a.iter().zip(row) {
                if !ai.is_zero() {
                    acc = acc.add(&ai.mul(v)?)?;
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Inverse transform a_i = (1/(nβ^i)) Σ_j ξ^{-ij} A_j.
    pub fn ifffft(&self, spectrum: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_vector(spectrum)?;
        let mut out = Vec::with_capacity(self.n);
        for row in &self.inverse {
            let mut acc = self.spec.zero();
            for (aj, v) in spectrum.iter().zip(row) {
                if !aj.is_zero() {
                    acc = acc.add(&aj.mul(v)?)?;
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// λ-constacyclic shift (a_0,...,a_{n-1}) -> (λ a_{n-1}, a_0, ..., a_{n-2}).
    pub fn constacyclic_shift(&self, a: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_vector(a)?;
        let mut out = Vec::with_capacity(self.n);
        out.push(self.lambda.mul(&a[self.n - 1])?);
        out.extend_from_slice(&a[..self.n - 1]);
        Ok(out)
    }

    /// First index violating FFFT(τ_λ(a))_j = βξ^j · FFFT(a)_j, if any.
    pub fn shift_counterexample(&self, a: &[FieldElement]) -> Result<Option<usize>> {
        let spectrum = self.fffft(a)?;
        let shifted = self.fffft(&self.constacyclic_shift(a)?)?;
        let points = self.eval_points()?;
        for j in 0..self.n {
            if shifted[j] != points[j].mul(&spectrum[j])? {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    pub fn check_shift_property(&self, a: &[FieldElement]) -> Result<bool> {
        Ok(self.shift_counterexample(a)?.is_none())
    }

    /// A_j^q = A_{qj mod n} for all j, with q = p^s; by the conjugate
    /// symmetry property this holds exactly when the time-domain vector
    /// lies over GF(p^s).
    pub fn check_conjugate_symmetry(&self, spectrum: &[FieldElement], s: usize) -> Result<bool> {
        self.check_vector(spectrum)?;
        if self.spec.kprime() % s != 0 {
            return Err(Error::NoSuchSubfield {
                s,
                kprime: self.spec.kprime(),
            });
        }
        let q = pow_u64(self.spec.p(), s) as usize;
        for j in 0..self.n {
            let lhs = spectrum[j].pow(q as i64)?;
            if lhs != spectrum[(q * j) % self.n] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Untwisted (cyclic, β = 1) transform 𝒜_m = Σ_i a_i ξ^{im}.
    pub fn untwisted(&self, a: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_vector(a)?;
        let mut out = Vec::with_capacity(self.n);
        let mut base = self.spec.one();
        for _ in 0..self.n {
            let mut acc = self.spec.zero();
            let mut power = self.spec.one();
            for ai in a {
                acc = acc.add(&ai.mul(&power)?)?;
                power = power.mul(&base)?;
            }
            out.push(acc);
            base = base.mul(&self.xi)?;
        }
        Ok(out)
    }

    /// Componentwise product in time corresponds to the mixed cyclic
    /// convolution C_j = (1/n) Σ_k B_k 𝒜_{j-k}, with 𝒜 the untwisted
    /// transform of a.
    pub fn check_convolution(&self, a: &[FieldElement], b: &[FieldElement]) -> Result<bool> {
        self.check_vector(a)?;
        self.check_vector(b)?;
        let mut c = Vec::with_capacity(self.n);
        for i in 0..self.n {
            c.push(a[i].mul(&b[i])?);
        }
        let lhs = self.fffft(&c)?;
        let bt = self.fffft(b)?;
        let at = self.untwisted(a)?;
        for j in 0..self.n {
            let mut acc = self.spec.zero();
            for k in 0..self.n {
                let idx = (j + self.n - k % self.n) % self.n;
                acc = acc.add(&bt[k].mul(&at[idx])?)?;
            }
            if lhs[j] != acc.mul(&self.n_inv)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Reversal: with b_i = a_{(n-i) mod n},
    /// B_j = λ · A'_{(n-j) mod n} + (1 - λ)·a_0, where A' is the transform
    /// taken with β⁻¹ in place of β. For a cyclic plan (β = λ = 1) this is
    /// exactly B_j = A_{(n-j) mod n}. The extra a_0 term is the boundary
    /// of the index substitution i -> n - k: the plain-index reversal
    /// keeps b_0 = a_0, while the quotient-ring reciprocal x^n·a(1/x)
    /// carries λ·a_0 there.
    pub fn check_reversal(&self, a: &[FieldElement]) -> Result<bool> {
        self.check_vector(a)?;
        let b: Vec<FieldElement> = (0..self.n)
            .map(|i| a[(self.n - i) % self.n].clone())
            .collect();
        let bt = self.fffft(&b)?;
        let recip =
            TransformPlan::new(&self.spec, self.n, self.beta.inv()?, Some(self.xi.clone()))?;
        let at = recip.fffft(a)?;
        let boundary = self.spec.one().sub(&self.lambda)?.mul(&a[0])?;
        for j in 0..self.n {
            let rhs = self
                .lambda
                .mul(&at[(self.n - j) % self.n])?
                .add(&boundary)?;
            if bt[j] != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Vectors serialize as comma-separated element strings.
    pub fn vector_text(v: &[FieldElement]) -> String {
        v.iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_vector(&self, text: &str) -> Result<Vec<FieldElement>> {
        let v: Vec<FieldElement> = text
            .split(',')
            .map(|e| self.spec.parse_element(e))
            .collect::<Result<_>>()?;
        self.check_vector(&v)?;
        Ok(v)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn pow_u64(base: u64, e: usize) -> u64 {
    let mut acc = 1u64;
    for _ in 0..e {
        acc *= base;
    }
    acc
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn modinv(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    // extended Euclid over i128
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m as i128) as u64
}
