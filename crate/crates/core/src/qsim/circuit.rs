//! Encoding and syndrome-extraction circuits.
//!
//! The encoder is Q(FFFT)⁻¹ applied to |ψ₀⟩ = |φ⟩_{D_M}|0⟩^{D_Z}|ε⟩^{D_X}.
//! Syndrome extraction runs Q(FFFT), ADD gates from the Z-ancillas into
//! the first δ-1 syndrome qudits, a DFT on the X-ancillas, ADD gates into
//! the last δ-1 syndrome qudits, and then undoes the DFT and Q(FFFT).
//! Measuring the syndrome register yields s_X = αH_{b2}ᵀ and, after the
//! -n rescale of the measured values, s_Z = γH_{b1}ᵀ.

use num_complex::Complex64;

use crate::error::Error;
use crate::field::{Field, FieldElement, FieldOps};
use crate::transform::TransformPlan;
use crate::Result;

use super::layout::CircuitLayout;
use super::operator::{kron, matrix_mul, op_add, op_dft, op_qfffft, op_x, op_z};
use super::state::QuditState;
use super::{DENSE_SIDE_LIMIT, TOLERANCE};

/// ω^e for the field characteristic.
fn omega_pow(p: u64, e: u64) -> Complex64 {
    let angle = 2.0 * std::f64::consts::PI * (e % p) as f64 / p as f64;
    Complex64::new(angle.cos(), angle.sin())
}

/// Apply ⊗_g X(α_g)Z(γ_g) to the first `alpha.len()` qudits of the
/// register: amplitude at |θ⟩ picks up ω^{Σ Tr(γ_g θ_g)} and moves to
/// |θ + α⟩.
pub fn apply_pauli(
    state: &QuditState,
    alpha: &[FieldElement],
    gamma: &[FieldElement],
) -> Result<QuditState> {
    if alpha.len() != gamma.len() || alpha.len() > state.num_qudits() {
        return Err(Error::LengthMismatch {
            expected: state.num_qudits(),
            got: alpha.len(),
        });
    }
    let field = state.field().clone();
    let d = state.dim_per_qudit();
    let m = state.num_qudits();
    let n = alpha.len();
    let total = state.amplitudes().len();
    let suffix = d.pow((m - n) as u32);
    // per-site lookup tables: shift target and phase per digit
    let mut shift: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut phase: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for g in 0..n {
        let a = alpha[g].code();
        shift.push(
            (0..d as u64)
                .map(|c| field.add_codes(a, c) as usize)
                .collect(),
        );
        phase.push(
            (0..d as u64)
                .map(|c| {
                    let t = gamma[g].mul(&field.from_code(c)).unwrap().trace_int();
                    omega_pow(field.p(), t)
                })
                .collect(),
        );
    }
    let mut out = vec![Complex64::new(0.0, 0.0); total];
    for idx in 0..total {
        let amp = state.amplitudes()[idx];
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut rem = idx / suffix;
        let mut digits = vec![0usize; n];
        for g in (0..n).rev() {
            digits[g] = rem % d;
            rem /= d;
        }
        let mut ph = Complex64::new(1.0, 0.0);
        let mut block = 0usize;
        for g in 0..n {
            ph *= phase[g][digits[g]];
            block = block * d + shift[g][digits[g]];
        }
        out[block * suffix + idx % suffix] += amp * ph;
    }
    QuditState::from_amplitudes(&field, m, out)
}

/// S|ψ⟩ = |ψ⟩ within tolerance (exact fixation, not up to phase).
pub fn is_stabilized(
    state: &QuditState,
    alpha: &[FieldElement],
    gamma: &[FieldElement],
) -> Result<bool> {
    let moved = apply_pauli(state, alpha, gamma)?;
    Ok(moved.distance(state)? < TOLERANCE)
}

/// X-type stabilizer generator: α_g = w^l·(βξ^i)^g, g = 0..n-1, with w
/// the primitive element whose powers l = 0..k'-1 span the field over F_p.
pub fn stabilizer_x(plan: &TransformPlan, i: usize, l: usize) -> Result<Vec<FieldElement>> {
    let field = plan.spec().clone();
    let scale = field.primitive().pow(l as i64)?;
    let root = plan.beta().mul(&plan.xi().pow(i as i64)?)?;
    let mut out = Vec::with_capacity(plan.n());
    let mut cur = scale;
    for _ in 0..plan.n() {
        out.push(cur.clone());
        cur = cur.mul(&root)?;
    }
    Ok(out)
}

/// Z-type stabilizer generator: γ_g = w^m·(βξ^j)^g.
pub fn stabilizer_z(plan: &TransformPlan, j: usize, m: usize) -> Result<Vec<FieldElement>> {
    stabilizer_x(plan, j, m)
}

/// |ψ₀⟩: message qudits on D_M (in ascending physical order), |0⟩ on the
/// Z-ancillas, |ε⟩ = DFT⁻¹|0⟩ on the X-ancillas.
pub fn initial_state(
    field: &Field,
    layout: &CircuitLayout,
    phi: &QuditState,
) -> Result<QuditState> {
    if phi.num_qudits() != layout.n_m() {
        return Err(Error::DimensionMismatch {
            expected: layout.n_m(),
            got: phi.num_qudits(),
        });
    }
    let d = field.size() as usize;
    let n = layout.n;
    let mut total = 1usize;
    for _ in 0..n {
        total *= d;
    }
    let eps_amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); total];
    // map physical position -> message slot
    let mut message_slot = vec![usize::MAX; n + 1];
    for (slot, &pos) in layout.d_m.iter().enumerate() {
        message_slot[pos] = slot;
    }
    let n_m = layout.n_m();
    for (idx, amp) in amplitudes.iter_mut().enumerate() {
        let mut rem = idx;
        let mut digits = vec![0usize; n];
        for g in (0..n).rev() {
            digits[g] = rem % d;
            rem /= d;
        }
        let mut factor = Complex64::new(1.0, 0.0);
        let mut message_index = 0usize;
        let mut dead = false;
        for pos in 1..=n {
            let digit = digits[pos - 1];
            if layout.t_z.contains(&pos) {
                if digit != 0 {
                    dead = true;
                    break;
                }
            } else if layout.t_x.contains(&pos) {
                factor *= eps_amp;
            } else {
                message_index = message_index * d + digit;
            }
        }
        if dead {
            continue;
        }
        let phi_amp = if n_m == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            phi.amplitudes()[message_index]
        };
        *amp = phi_amp * factor;
    }
    QuditState::from_amplitudes(field, n, amplitudes)
}

/// Encode: |ψ⟩ = Q(FFFT)⁻¹ |ψ₀⟩.
pub fn encode_state(
    plan: &TransformPlan,
    layout: &CircuitLayout,
    phi: &QuditState,
) -> Result<QuditState> {
    let psi0 = initial_state(plan.spec(), layout, phi)?;
    let q = op_qfffft(plan)?;
    q.inverse().apply(&psi0, 1)
}

/// Classical syndrome oracle s_X = αH_{b2}ᵀ:
/// s_X[j] = Σ_i α_i (βξ^{b2+j-1})^{i-1}.
pub fn syndrome_oracle_x(
    plan: &TransformPlan,
    layout: &CircuitLayout,
    alpha: &[FieldElement],
) -> Result<Vec<FieldElement>> {
    syndrome_oracle(plan, layout.b2, layout.delta, alpha)
}

/// Classical syndrome oracle s_Z = γH_{b1}ᵀ.
pub fn syndrome_oracle_z(
    plan: &TransformPlan,
    layout: &CircuitLayout,
    gamma: &[FieldElement],
) -> Result<Vec<FieldElement>> {
    syndrome_oracle(plan, layout.b1, layout.delta, gamma)
}

fn syndrome_oracle(
    plan: &TransformPlan,
    b: usize,
    delta: usize,
    err: &[FieldElement],
) -> Result<Vec<FieldElement>> {
    let field = plan.spec().clone();
    let mut out = Vec::with_capacity(delta.saturating_sub(1));
    for j in 1..delta {
        let root = plan.beta().mul(&plan.xi().pow((b + j - 1) as i64)?)?;
        let mut acc = field.zero();
        let mut power = field.one();
        for e in err {
            acc = acc.add(&e.mul(&power)?)?;
            power = power.mul(&root)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Result of one syndrome-extraction run.
pub struct SyndromeOutcome {
    pub s_x: Vec<FieldElement>,
    pub s_z: Vec<FieldElement>,
    /// Codeword-register state after the inverse operations, equal to the
    /// erroneous input state up to a global phase.
    pub restored: QuditState,
    /// Intermediate register states |v1⟩..|v4⟩ when tracing was requested.
    pub trace: Vec<(String, QuditState)>,
}

/// Run the syndrome circuit on an erroneous codeword state (n qudits).
/// The 2(δ-1) syndrome qudits are appended internally in |0⟩ and measured
/// at the end. Requires β² = 1, where the measured X-ancilla values are
/// exactly -(1/n)·s_Z components.
pub fn syndrome_extract(
    plan: &TransformPlan,
    layout: &CircuitLayout,
    state: &QuditState,
    want_trace: bool,
) -> Result<SyndromeOutcome> {
    if state.num_qudits() != layout.n {
        return Err(Error::DimensionMismatch {
            expected: layout.n,
            got: state.num_qudits(),
        });
    }
    let field = plan.spec().clone();
    if !plan.beta().mul(plan.beta())?.is_one() {
        return Err(Error::Parse("syndrome circuit requires beta^2 = 1".into()));
    }
    let n = layout.n;
    let n_s = layout.n_s();
    let delta = layout.delta;
    let mut register = state.with_ancillas(n_s)?;
    let mut trace = Vec::new();
    let record = |label: &str, st: &QuditState, trace: &mut Vec<(String, QuditState)>| {
        if want_trace {
            trace.push((label.to_string(), st.clone()));
        }
    };

    // (a) Q(FFFT) on the codeword qudits
    let q = op_qfffft(plan)?;
    register = q.apply(&register, 1)?;
    record("v1", &register, &mut trace);

    // (b) ADD from the Z-ancillas into the first δ-1 syndrome qudits
    let add = op_add(&field);
    for j in 1..delta {
        register = add.apply_add_at(&register, layout.sx_position[j - 1], n + j)?;
    }
    record("v2", &register, &mut trace);

    // (c) DFT on the X-ancillas
    let dft = op_dft(&field);
    for &pos in &layout.t_x {
        register = dft.apply(&register, pos)?;
    }
    record("v3", &register, &mut trace);

    // (d) ADD from the X-ancillas into the last δ-1 syndrome qudits
    for j in 1..delta {
        register = add.apply_add_at(&register, layout.sz_position[j - 1], n + delta - 1 + j)?;
    }
    record("v4", &register, &mut trace);

    // (e) inverses: DFT⁻¹ on the X-ancillas, then Q(FFFT)⁻¹
    let dft_inv = dft.inverse();
    for &pos in &layout.t_x {
        register = dft_inv.apply(&register, pos)?;
    }
    register = q.inverse().apply(&register, 1)?;

    // measure the syndrome register: the amplitudes must be supported on
    // a single syndrome basis value
    let d = field.size() as usize;
    let suffix = d.pow(n_s as u32);
    let total = register.amplitudes().len();
    let blocks = total / suffix;
    let mut measured: Option<usize> = None;
    for s in 0..suffix {
        let mass: f64 = (0..blocks)
            .map(|b| register.amplitudes()[b * suffix + s].norm_sqr())
            .sum();
        if mass > TOLERANCE {
            if measured.is_some() {
                return Err(Error::NotBasisError);
            }
            measured = Some(s);
        }
    }
    let s_index = measured.ok_or(Error::NotBasisError)?;
    // decode syndrome digits, most significant first
    let mut digits = vec![0u64; n_s];
    let mut rem = s_index;
    for g in (0..n_s).rev() {
        digits[g] = (rem % d) as u64;
        rem /= d;
    }
    let s_x: Vec<FieldElement> = digits[..delta - 1]
        .iter()
        .map(|&c| field.from_code(c))
        .collect();
    // measured X-ancilla values are -(1/n)·s_Z[j]; rescale by -n
    let minus_n = field.from_int(-(n as i64));
    let s_z: Vec<FieldElement> = digits[delta - 1..]
        .iter()
        .map(|&c| field.from_code(c).mul(&minus_n))
        .collect::<Result<_>>()?;
    // collapse: restored codeword register
    let amplitudes: Vec<Complex64> = (0..blocks)
        .map(|b| register.amplitudes()[b * suffix + s_index])
        .collect();
    let restored = QuditState::from_amplitudes(&field, n, amplitudes)?;
    Ok(SyndromeOutcome {
        s_x,
        s_z,
        restored,
        trace,
    })
}

/// Deduce the error from the measured syndromes by a bounded-weight
/// search (up to t = ⌊(δ-1)/2⌋ per Pauli type) and apply the inverse.
/// Detection-only layouts (t = 0) fail on any nonzero syndrome.
pub fn deduce_and_recover(
    plan: &TransformPlan,
    layout: &CircuitLayout,
    s_x: &[FieldElement],
    s_z: &[FieldElement],
    state: &QuditState,
) -> Result<QuditState> {
    let t = (layout.delta - 1) / 2;
    let alpha = solve_syndrome(plan, layout.b2, layout.delta, s_x, t)?;
    let gamma = solve_syndrome(plan, layout.b1, layout.delta, s_z, t)?;
    let alpha_inv: Vec<FieldElement> = alpha.iter().map(FieldElement::neg).collect();
    let gamma_inv: Vec<FieldElement> = gamma.iter().map(FieldElement::neg).collect();
    apply_pauli(state, &alpha_inv, &gamma_inv)
}

/// Find the unique error vector of weight ≤ t matching the syndrome.
fn solve_syndrome(
    plan: &TransformPlan,
    b: usize,
    delta: usize,
    syndrome: &[FieldElement],
    t: usize,
) -> Result<Vec<FieldElement>> {
    let field = plan.spec().clone();
    let n = plan.n();
    let zero_vec = vec![field.zero(); n];
    if syndrome.iter().all(FieldElement::is_zero) {
        return Ok(zero_vec);
    }
    if t == 0 {
        return Err(Error::DecodeFailure);
    }
    // weight-bounded enumeration; desk scale keeps t at 1 or 2
    let units: Vec<FieldElement> = field
        .elements()
        .into_iter()
        .filter(|x| !x.is_zero())
        .collect();
    let mut candidate: Option<Vec<FieldElement>> = None;
    let mut supports: Vec<Vec<usize>> = Vec::new();
    for w in 1..=t {
        supports.extend(combinations(n, w));
    }
    for support in &supports {
        let w = support.len();
        let mut digits = vec![0usize; w];
        loop {
            let mut err = zero_vec.clone();
            for (slot, &pos) in support.iter().enumerate() {
                err[pos] = units[digits[slot]].clone();
            }
            if syndrome_oracle(plan, b, delta, &err)? == syndrome {
                if candidate.is_some() {
                    return Err(Error::DecodeFailure);
                }
                candidate = Some(err);
            }
            let mut k = 0;
            loop {
                if k == w {
                    break;
                }
                digits[k] += 1;
                if digits[k] < units.len() {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == w {
                break;
            }
        }
    }
    candidate.ok_or(Error::DecodeFailure)
}

fn combinations(n: usize, w: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..w).collect();
    if w > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = w;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - w {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..w {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Trace of the codespace projector Π = ∏ (1/p) Σ_e S^e over all
/// stabilizer generators; equals (p^k')^{n_m} for a valid CSS layout.
pub fn codespace_projector_trace(plan: &TransformPlan, layout: &CircuitLayout) -> Result<f64> {
    let field = plan.spec().clone();
    let d = field.size() as usize;
    let n = layout.n;
    let side = d.pow(n as u32);
    if side > DENSE_SIDE_LIMIT {
        return Err(Error::BudgetExceeded {
            needed: side as u128,
            budget: DENSE_SIDE_LIMIT as u128,
        });
    }
    let p = field.p() as usize;
    let identity: Vec<Vec<Complex64>> = (0..side)
        .map(|r| {
            (0..side)
                .map(|c| Complex64::new(if r == c { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    let mut projector = identity.clone();
    let mut generators: Vec<Vec<Vec<Complex64>>> = Vec::new();
    for offset in 0..layout.delta.saturating_sub(1) {
        for l in 0..field.kprime() {
            let alpha = stabilizer_x(plan, layout.b1 + offset, l)?;
            generators.push(pauli_matrix(&field, &alpha, None)?);
            let gamma = stabilizer_z(plan, layout.b2 + offset, l)?;
            generators.push(pauli_matrix(&field, &gamma, Some(()))?);
        }
    }
    for g in &generators {
        // (1/p) Σ_{e=0}^{p-1} g^e
        let mut avg = identity.clone();
        let mut power = identity.clone();
        for _ in 1..p {
            power = matrix_mul(&power, g);
            for (ra, rp) in avg.iter_mut().zip(&power) {
                for (a, b) in ra.iter_mut().zip(rp) {
                    *a += b;
                }
            }
        }
        let scale = 1.0 / p as f64;
        for row in avg.iter_mut() {
            for v in row.iter_mut() {
                *v *= scale;
            }
        }
        projector = matrix_mul(&projector, &avg);
    }
    Ok((0..side).map(|i| projector[i][i].re).sum())
}

/// Dense matrix of ⊗ X(v_g) (when `z` is None) or ⊗ Z(v_g).
fn pauli_matrix(field: &Field, v: &[FieldElement], z: Option<()>) -> Result<Vec<Vec<Complex64>>> {
    let mut acc: Option<Vec<Vec<Complex64>>> = None;
    for e in v {
        let op = match z {
            None => op_x(field, e),
            Some(()) => op_z(field, e),
        };
        let m = op.to_matrix()?;
        acc = Some(match acc {
            None => m,
            Some(prev) => kron(&prev, &m),
        });
    }
    Ok(acc.unwrap())
}
