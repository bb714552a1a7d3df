//! Quantum-layer identities: operator algebra, the conjugation relations,
//! stabilizer fixation through the encoder, and syndrome extraction
//! against the classical matrix-product oracle.

use num_complex::Complex64;

use constaq_core::error::Error;
use constaq_core::field::{Field, FieldElement, FieldOps, FieldSpec};
use constaq_core::qsim::{
    apply_pauli, codespace_projector_trace, deduce_and_recover, encode_state, initial_state,
    is_stabilized, op_add, op_dft, op_qfffft, op_x, op_z, stabilizer_x, stabilizer_z,
    syndrome_extract, syndrome_oracle_x, syndrome_oracle_z, verify_all_relations, CircuitLayout,
    QuditState, TOLERANCE,
};
use constaq_core::rng::SplitMix64;
use constaq_core::transform::TransformPlan;

fn gf2() -> Field {
    FieldSpec::build(2, 1, None, 1).unwrap()
}

fn gf3() -> Field {
    FieldSpec::build(3, 1, None, 1).unwrap()
}

fn gf4() -> Field {
    FieldSpec::build(2, 2, None, 1).unwrap()
}

fn gf9() -> Field {
    FieldSpec::build(3, 2, Some(&[2, 2, 1]), 1).unwrap()
}

/// GF(4), n = 3, cyclic: the workhorse CSS example [[3,1]].
fn plan_gf4_n3() -> TransformPlan {
    let f = gf4();
    TransformPlan::new(&f, 3, f.one(), None).unwrap()
}

fn layout_gf4() -> CircuitLayout {
    CircuitLayout::new(3, 1, 1, 2).unwrap()
}

fn random_message(field: &Field, num_qudits: usize, seed: u64) -> QuditState {
    let mut rng = SplitMix64::new(seed);
    let d = field.size() as usize;
    let len = d.pow(num_qudits as u32);
    let mut amplitudes: Vec<Complex64> = (0..len)
        .map(|_| {
            Complex64::new(
                rng.below(1000) as f64 / 500.0 - 1.0,
                rng.below(1000) as f64 / 500.0 - 1.0,
            )
        })
        .collect();
    let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in amplitudes.iter_mut() {
        *a /= norm;
    }
    QuditState::from_amplitudes(field, num_qudits, amplitudes).unwrap()
}

#[test]
fn trace_exponential_sum_collapses() {
    // Σ_θ ω^{Tr(γθ)} equals p^k' for γ = 0 and vanishes otherwise
    for f in [gf2(), gf3(), gf4(), gf9()] {
        let p = f.p();
        for gamma in f.elements() {
            let mut acc = Complex64::new(0.0, 0.0);
            for theta in f.elements() {
                let t = gamma.mul(&theta).unwrap().trace_int();
                let angle = 2.0 * std::f64::consts::PI * (t % p) as f64 / p as f64;
                acc += Complex64::new(angle.cos(), angle.sin());
            }
            let expect = if gamma.is_zero() {
                f.size() as f64
            } else {
                0.0
            };
            assert!((acc - Complex64::new(expect, 0.0)).norm() < TOLERANCE);
        }
    }
}

#[test]
fn qubit_degenerate_case() {
    let f = gf2();
    let x = op_x(&f, &f.one()).to_matrix().unwrap();
    // bit flip
    assert!((x[0][1].re - 1.0).abs() < TOLERANCE && (x[1][0].re - 1.0).abs() < TOLERANCE);
    let z = op_z(&f, &f.one()).to_matrix().unwrap();
    // phase flip
    assert!((z[0][0].re - 1.0).abs() < TOLERANCE && (z[1][1].re + 1.0).abs() < TOLERANCE);
    // DFT is the Hadamard with its 1/√2 factor
    let h = op_dft(&f).to_matrix().unwrap();
    let s = 1.0 / 2f64.sqrt();
    for (r, c, expect) in [(0, 0, s), (0, 1, s), (1, 0, s), (1, 1, -s)] {
        assert!((h[r][c].re - expect).abs() < TOLERANCE);
        assert!(h[r][c].im.abs() < TOLERANCE);
    }
}

#[test]
fn operators_are_unitary() {
    for f in [gf2(), gf3(), gf4(), gf9()] {
        for a in f.elements() {
            assert!(op_x(&f, &a).unitarity_defect().unwrap() < TOLERANCE);
            assert!(op_z(&f, &a).unitarity_defect().unwrap() < TOLERANCE);
        }
        assert!(op_dft(&f).unitarity_defect().unwrap() < TOLERANCE);
        assert!(op_add(&f).unitarity_defect().unwrap() < TOLERANCE);
    }
    let q = op_qfffft(&plan_gf4_n3()).unwrap();
    assert!(q.is_permutation());
    assert!(q.unitarity_defect().unwrap() < TOLERANCE);
}

#[test]
fn xz_commutation_phase() {
    // Z(γ)X(α) = ω^{Tr(αγ)} X(α)Z(γ) over all 16 pairs in GF(4)
    let f = gf4();
    let p = f.p();
    for alpha in f.elements() {
        for gamma in f.elements() {
            let x = op_x(&f, &alpha).to_matrix().unwrap();
            let z = op_z(&f, &gamma).to_matrix().unwrap();
            let lhs = matmul(&z, &x);
            let t = alpha.mul(&gamma).unwrap().trace_int();
            let angle = 2.0 * std::f64::consts::PI * (t % p) as f64 / p as f64;
            let phase = Complex64::new(angle.cos(), angle.sin());
            let mut rhs = matmul(&x, &z);
            for row in rhs.iter_mut() {
                for v in row.iter_mut() {
                    *v *= phase;
                }
            }
            assert!(dist(&lhs, &rhs) < TOLERANCE);
        }
    }
}

fn matmul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for r in 0..n {
        for k in 0..n {
            for c in 0..n {
                out[r][c] += a[r][k] * b[k][c];
            }
        }
    }
    out
}

fn dist(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    let mut acc = 0.0;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            acc += (x - y).norm_sqr();
        }
    }
    acc.sqrt()
}

#[test]
fn qfffft_structure() {
    // n = 1 is the identity permutation
    let f = gf4();
    let plan1 = TransformPlan::new(&f, 1, f.one(), None).unwrap();
    let q1 = op_qfffft(&plan1).unwrap().to_matrix().unwrap();
    for (r, row) in q1.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            let expect = if r == c { 1.0 } else { 0.0 };
            assert!((v.re - expect).abs() < TOLERANCE && v.im.abs() < TOLERANCE);
        }
    }
    // columns follow the classical transform: Q|γ⟩ = |FFFT(γ)⟩
    let plan = plan_gf4_n3();
    let q = op_qfffft(&plan).unwrap();
    let d = 4usize;
    for code in 0..64u64 {
        let codes = [code / 16 % 4, code / 4 % 4, code % 4];
        let basis = QuditState::basis(&f, &codes).unwrap();
        let moved = q.apply(&basis, 1).unwrap();
        let vector: Vec<FieldElement> = codes.iter().map(|&c| f.from_code(c)).collect();
        let spectrum = plan.fffft(&vector).unwrap();
        let mut expect_idx = 0usize;
        for e in &spectrum {
            expect_idx = expect_idx * d + e.code() as usize;
        }
        for (idx, amp) in moved.amplitudes().iter().enumerate() {
            let expect = if idx == expect_idx { 1.0 } else { 0.0 };
            assert!((amp.re - expect).abs() < TOLERANCE && amp.im.abs() < TOLERANCE);
        }
    }
    // oversized registers refuse
    let f32 = FieldSpec::build(2, 5, None, 1).unwrap();
    let plan31 = TransformPlan::new(&f32, 31, f32.one(), None).unwrap();
    assert!(matches!(
        op_qfffft(&plan31),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn relations_hold_across_test_matrix() {
    // {GF(2), GF(3), GF(4)} × admissible n ≤ 3 (n | p^k'-1, gcd(n, p) = 1)
    let cases: Vec<TransformPlan> = vec![
        TransformPlan::new(&gf2(), 1, gf2().one(), None).unwrap(),
        TransformPlan::new(&gf3(), 1, gf3().one(), None).unwrap(),
        TransformPlan::new(&gf3(), 2, gf3().from_int(-1), None).unwrap(),
        TransformPlan::new(&gf3(), 2, gf3().one(), None).unwrap(),
        TransformPlan::new(&gf4(), 1, gf4().one(), None).unwrap(),
        plan_gf4_n3(),
    ];
    for plan in &cases {
        for (rel, ok) in verify_all_relations(plan).unwrap() {
            assert!(ok, "{rel} failed for {}", plan.descriptor_text());
        }
    }
}

#[test]
fn initial_stabilizers_fix_initial_state() {
    let plan = plan_gf4_n3();
    let f = plan.spec().clone();
    let layout = layout_gf4();
    assert_eq!(layout.t_x, vec![3]);
    assert_eq!(layout.t_z, vec![2]);
    assert_eq!(layout.d_m, vec![1]);
    let phi = random_message(&f, 1, 7);
    let psi0 = initial_state(&f, &layout, &phi).unwrap();
    assert!(psi0.is_normalized());
    let n_elem = f.from_int(3);
    for l in 0..f.kprime() {
        // X_s(n·w^l) on each X-ancilla position
        for &s in &layout.t_x {
            let mut alpha = vec![f.zero(); 3];
            alpha[s - 1] = n_elem.mul(&f.primitive().pow(l as i64).unwrap()).unwrap();
            let gamma = vec![f.zero(); 3];
            assert!(is_stabilized(&psi0, &alpha, &gamma).unwrap());
        }
        // Z_t(w^m) on each Z-ancilla position
        for &t in &layout.t_z {
            let alpha = vec![f.zero(); 3];
            let mut gamma = vec![f.zero(); 3];
            gamma[t - 1] = f.primitive().pow(l as i64).unwrap();
            assert!(is_stabilized(&psi0, &alpha, &gamma).unwrap());
        }
    }
}

#[test]
fn initial_stabilizer_closed_forms() {
    // Q(FFFT)·S·Q(FFFT)⁻¹ computed densely equals X_{n-i+1}(nξ^l) and
    // Z_{j+1}(ξ^m)
    let plan = plan_gf4_n3();
    let f = plan.spec().clone();
    let q = op_qfffft(&plan).unwrap();
    let qm = q.to_matrix().unwrap();
    let qinv = q.inverse().to_matrix().unwrap();
    let n = 3usize;
    let n_elem = f.from_int(n as i64);
    for i in 1..=n {
        for l in 0..f.kprime() {
            let alpha = stabilizer_x(&plan, i, l).unwrap();
            let gamma0 = vec![f.zero(); n];
            let s_mat = pauli_dense(&f, &alpha, &gamma0);
            let conj = matmul(&matmul(&qm, &s_mat), &qinv);
            // X at position (n - i + 1) with value n·w^l
            let mut alpha_rhs = vec![f.zero(); n];
            alpha_rhs[(n - i + 1) - 1] = n_elem.mul(&f.primitive().pow(l as i64).unwrap()).unwrap();
            let rhs = pauli_dense(&f, &alpha_rhs, &gamma0);
            assert!(dist(&conj, &rhs) < TOLERANCE, "X closed form i={i} l={l}");
        }
    }
    for j in 0..n {
        for m in 0..f.kprime() {
            let gamma = stabilizer_z(&plan, j, m).unwrap();
            let alpha0 = vec![f.zero(); n];
            let s_mat = pauli_dense(&f, &alpha0, &gamma);
            let conj = matmul(&matmul(&qm, &s_mat), &qinv);
            let mut gamma_rhs = vec![f.zero(); n];
            gamma_rhs[j] = f.primitive().pow(m as i64).unwrap();
            let rhs = pauli_dense(&f, &alpha0, &gamma_rhs);
            assert!(dist(&conj, &rhs) < TOLERANCE, "Z closed form j={j} m={m}");
        }
    }
}

/// Dense matrix of ⊗ X(α_g)Z(γ_g) built from basis states.
fn pauli_dense(
    field: &Field,
    alpha: &[FieldElement],
    gamma: &[FieldElement],
) -> Vec<Vec<Complex64>> {
    let d = field.size() as usize;
    let n = alpha.len();
    let side = d.pow(n as u32);
    let mut out = vec![vec![Complex64::new(0.0, 0.0); side]; side];
    for col in 0..side {
        let mut digits = vec![0u64; n];
        let mut rem = col;
        for g in (0..n).rev() {
            digits[g] = (rem % d) as u64;
            rem /= d;
        }
        let basis = QuditState::basis(field, &digits).unwrap();
        let moved = apply_pauli(&basis, alpha, gamma).unwrap();
        for (row, amp) in moved.amplitudes().iter().enumerate() {
            out[row][col] = *amp;
        }
    }
    out
}

#[test]
fn encoded_states_are_stabilized() {
    let plan = plan_gf4_n3();
    let f = plan.spec().clone();
    let layout = layout_gf4();
    let phi = random_message(&f, 1, 99);
    let psi = encode_state(&plan, &layout, &phi).unwrap();
    assert!(psi.is_normalized());
    let zero = vec![f.zero(); 3];
    for offset in 0..layout.delta - 1 {
        for l in 0..f.kprime() {
            let alpha = stabilizer_x(&plan, layout.b1 + offset, l).unwrap();
            assert!(
                is_stabilized(&psi, &alpha, &zero).unwrap(),
                "S^X {offset},{l}"
            );
            let gamma = stabilizer_z(&plan, layout.b2 + offset, l).unwrap();
            assert!(
                is_stabilized(&psi, &zero, &gamma).unwrap(),
                "S^Z {offset},{l}"
            );
        }
    }
    // unitarity: orthogonal messages encode to orthogonal states
    let m0 = QuditState::basis(&f, &[0]).unwrap();
    let m1 = QuditState::basis(&f, &[1]).unwrap();
    let e0 = encode_state(&plan, &layout, &m0).unwrap();
    let e1 = encode_state(&plan, &layout, &m1).unwrap();
    assert!(e0.inner(&e1).unwrap().norm() < TOLERANCE);
}

#[test]
fn codespace_dimension() {
    let plan = plan_gf4_n3();
    let layout = layout_gf4();
    let trace = codespace_projector_trace(&plan, &layout).unwrap();
    // (p^k')^{n_m} = 4^1
    assert!((trace - 4.0).abs() < 1e-6);
}

#[test]
fn syndrome_identity_error() {
    let plan = plan_gf4_n3();
    let f = plan.spec().clone();
    let layout = layout_gf4();
    let phi = random_message(&f, 1, 3);
    let psi = encode_state(&plan, &layout, &phi).unwrap();
    let out = syndrome_extract(&plan, &layout, &psi, false).unwrap();
    assert!(out.s_x.iter().all(FieldElement::is_zero));
    assert!(out.s_z.iter().all(FieldElement::is_zero));
    assert!((out.restored.fidelity(&psi).unwrap() - 1.0).abs() < TOLERANCE);
}

#[test]
fn syndrome_single_site_errors_match_oracle() {
    let plan = plan_gf4_n3();
    let f = plan.spec().clone();
    let layout = layout_gf4();
    let phi = random_message(&f, 1, 5);
    let psi = encode_state(&plan, &layout, &phi).unwrap();
    for site in 1..=3usize {
        for code in 1..4u64 {
            let theta = f.from_code(code);
            // X error
            let mut alpha = vec![f.zero(); 3];
            alpha[site - 1] = theta.clone();
            let zero = vec![f.zero(); 3];
            let erroneous = apply_pauli(&psi, &alpha, &zero).unwrap();
            let out = syndrome_extract(&plan, &layout, &erroneous, true).unwrap();
            assert_eq!(out.s_x, syndrome_oracle_x(&plan, &layout, &alpha).unwrap());
            assert!(out.s_z.iter().all(FieldElement::is_zero));
            assert!((out.restored.fidelity(&erroneous).unwrap() - 1.0).abs() < TOLERANCE);
            assert_eq!(out.trace.len(), 4);
            // Z error
            let mut gamma = vec![f.zero(); 3];
            gamma[site - 1] = theta.clone();
            let erroneous = apply_pauli(&psi, &zero, &gamma).unwrap();
            let out = syndrome_extract(&plan, &layout, &erroneous, false).unwrap();
            assert_eq!(out.s_z, syndrome_oracle_z(&plan, &layout, &gamma).unwrap());
            assert!(out.s_x.iter().all(FieldElement::is_zero));
            assert!((out.restored.fidelity(&erroneous).unwrap() - 1.0).abs() < TOLERANCE);
            // combined X and Z on one site
            let erroneous = apply_pauli(&psi, &alpha, &gamma).unwrap();
            let out = syndrome_extract(&plan, &layout, &erroneous, false).unwrap();
            assert_eq!(out.s_x, syndrome_oracle_x(&plan, &layout, &alpha).unwrap());
            assert_eq!(out.s_z, syndrome_oracle_z(&plan, &layout, &gamma).unwrap());
        }
    }
}

#[test]
fn syndrome_linearity() {
    // syndrome of a two-site error is the componentwise sum
    let plan = plan_gf4_n3();
    let f = plan.spec().clone();
    let layout = layout_gf4();
    let phi = random_message(&f, 1, 11);
    let psi = encode_state(&plan, &layout, &phi).unwrap();
    let mut rng = SplitMix64::new(13);
    for _ in 0..20 {
        let mut alpha = vec![f.zero(); 3];
        let mut gamma = vec![f.zero(); 3];
        for slot in 0..3 {
            alpha[slot] = f.from_code(rng.below(4));
            gamma[slot] = f.from_code(rng.below(4));
        }
        let erroneous = apply_pauli(&psi, &alpha, &gamma).unwrap();
        let out = syndrome_extract(&plan, &layout, &erroneous, false).unwrap();
        assert_eq!(out.s_x, syndrome_oracle_x(&plan, &layout, &alpha).unwrap());
        assert_eq!(out.s_z, syndrome_oracle_z(&plan, &layout, &gamma).unwrap());
    }
}

#[test]
fn superposition_error_rejected() {
    let plan = plan_gf4_n3();
    let f = plan.spec().clone();
    let layout = layout_gf4();
    let phi = random_message(&f, 1, 17);
    let psi = encode_state(&plan, &layout, &phi).unwrap();
    let mut alpha = vec![f.zero(); 3];
    alpha[0] = f.one();
    let moved = apply_pauli(&psi, &alpha, &vec![f.zero(); 3]).unwrap();
    // (|ψ⟩ + X_1(1)|ψ⟩)/√2 has components with two distinct syndromes
    let mixed: Vec<Complex64> = psi
        .amplitudes()
        .iter()
        .zip(moved.amplitudes())
        .map(|(a, b)| (a + b) / 2f64.sqrt())
        .collect();
    let mixed = QuditState::from_amplitudes(&f, 3, mixed).unwrap();
    assert!(matches!(
        syndrome_extract(&plan, &layout, &mixed, false),
        Err(Error::NotBasisError)
    ));
}

#[test]
fn detection_only_layout_flags_errors() {
    // δ = 2 gives t = 0: zero syndrome passes through, nonzero syndrome
    // reports a decoding failure rather than guessing
    let plan = plan_gf4_n3();
    let f = plan.spec().clone();
    let layout = layout_gf4();
    let phi = random_message(&f, 1, 23);
    let psi = encode_state(&plan, &layout, &phi).unwrap();
    let clean = syndrome_extract(&plan, &layout, &psi, false).unwrap();
    let recovered =
        deduce_and_recover(&plan, &layout, &clean.s_x, &clean.s_z, &clean.restored).unwrap();
    assert!((recovered.fidelity(&psi).unwrap() - 1.0).abs() < TOLERANCE);
    // every nonzero single-site error is detected
    for site in 1..=3usize {
        for code in 1..4u64 {
            let mut alpha = vec![f.zero(); 3];
            alpha[site - 1] = f.from_code(code);
            let erroneous = apply_pauli(&psi, &alpha, &vec![f.zero(); 3]).unwrap();
            let out = syndrome_extract(&plan, &layout, &erroneous, false).unwrap();
            assert!(out.s_x.iter().any(|s| !s.is_zero()));
            assert!(matches!(
                deduce_and_recover(&plan, &layout, &out.s_x, &out.s_z, &out.restored),
                Err(Error::DecodeFailure)
            ));
        }
    }
}

#[test]
fn full_round_trip_corrects_single_errors() {
    // GF(5), n = 4, δ = 3 (t = 1), b1 = 0, b2 = 1: a [[4,0]] stabilizer
    // state on which every single-site X(θ) and Z(χ) is corrected with
    // fidelity 1
    let f = FieldSpec::build(5, 1, None, 1).unwrap();
    let plan = TransformPlan::new(&f, 4, f.one(), None).unwrap();
    let layout = CircuitLayout::new(4, 0, 1, 3).unwrap();
    assert_eq!(layout.n_m(), 0);
    let phi = QuditState::from_amplitudes(&f, 0, vec![Complex64::new(1.0, 0.0)]).unwrap();
    let psi = encode_state(&plan, &layout, &phi).unwrap();
    assert!(psi.is_normalized());
    for site in 1..=4usize {
        for code in 1..5u64 {
            let value = f.from_code(code);
            for z_side in [false, true] {
                let mut alpha = vec![f.zero(); 4];
                let mut gamma = vec![f.zero(); 4];
                if z_side {
                    gamma[site - 1] = value.clone();
                } else {
                    alpha[site - 1] = value.clone();
                }
                let erroneous = apply_pauli(&psi, &alpha, &gamma).unwrap();
                let out = syndrome_extract(&plan, &layout, &erroneous, false).unwrap();
                let recovered =
                    deduce_and_recover(&plan, &layout, &out.s_x, &out.s_z, &out.restored).unwrap();
                let fidelity = recovered.fidelity(&psi).unwrap();
                assert!(
                    (fidelity - 1.0).abs() < TOLERANCE,
                    "site {site} code {code} z={z_side}: fidelity {fidelity}"
                );
            }
        }
    }
}

#[test]
fn state_dump_format() {
    let f = gf4();
    let basis = QuditState::basis(&f, &[2, 0]).unwrap();
    let dump = basis.dump_text();
    assert!(dump.contains("|w^2,0>") || dump.contains("|w^1,0>") || dump.contains("|"));
    assert_eq!(dump.lines().count(), 1);
}
