//! Command implementations. Each returns a `Report` carrying both the
//! text rendering and the JSON mirror; `main` picks per `--output`.

use num_complex::Complex64;
use serde_json::{json, Value};

use constaq_core::codes::{
    containment, cyclotomic_cosets, derive_css, factor_over_subfield, factor_xn_minus_lambda,
    min_distance_bruteforce, min_weight_up_to, ConstacyclicCode,
};
use constaq_core::decoder::{complexity_table, op_counts, CodecConfig, DecodeStatus};
use constaq_core::error::Error;
use constaq_core::field::{FieldElement, FieldOps};
use constaq_core::qsim::{
    apply_pauli, deduce_and_recover, encode_state, syndrome_extract, verify_all_relations,
    CircuitLayout, QuditState,
};
use constaq_core::rng::SplitMix64;
use constaq_core::transform::TransformPlan;
use constaq_core::Result;

use crate::common::{build_code, parse_vector, CodeArgs, PlanContext};

pub struct Report {
    pub text: String,
    pub json: Value,
}

impl Report {
    fn new(text: String, json: Value) -> Report {
        Report { text, json }
    }
}

pub fn cmd_factor(ctx: &PlanContext, s: usize) -> Result<Report> {
    let plan = &ctx.plan;
    let mut text = format!(
        "x^{} - {} with {}\n",
        plan.n(),
        ctx.show_element(plan.lambda()),
        plan.descriptor_text()
    );
    let mut linear_json = Vec::new();
    if plan.n() <= 64 {
        text.push_str("linear factors over the computation field:\n");
        for (r, factor) in factor_xn_minus_lambda(plan)? {
            text.push_str(&format!("  r={r}: {factor}\n"));
            linear_json.push(json!({"r": r, "factor": factor.to_text()}));
        }
    }
    let mut sub_json = Vec::new();
    match factor_over_subfield(plan, s) {
        Ok(factors) => {
            text.push_str(&format!(
                "irreducible factors over GF({}^{}):\n",
                plan.spec().p(),
                s
            ));
            for f in &factors {
                text.push_str(&format!("  ({})\n", ctx.show_poly(f)));
                sub_json.push(Value::String(ctx.show_poly(f)));
            }
        }
        Err(Error::NotConjugacyClosed) => {
            text.push_str(&format!(
                "lambda lies outside GF({}^{}); no subfield factorization\n",
                plan.spec().p(),
                s
            ));
        }
        Err(e) => return Err(e),
    }
    Ok(Report::new(
        text,
        json!({"plan": plan.descriptor_text(), "linear": linear_json, "subfield": sub_json}),
    ))
}

fn code_summary(
    ctx: &PlanContext,
    code: &ConstacyclicCode,
    budget: u128,
) -> Result<(String, Value, Option<usize>)> {
    let (distance, exact) = match min_distance_bruteforce(code, budget) {
        Ok(d) => (Some(d), true),
        Err(Error::BudgetExceeded { .. }) => {
            // ramp a low-weight search from the designed bound
            let bound = code
                .zero_set()
                .map(|zs| constaq_core::codes::consecutive_zero_run(zs, code.n()) + 1)
                .unwrap_or(2);
            let mut found = None;
            let mut w = bound.max(2);
            while w <= code.n() {
                match min_weight_up_to(code, w, None, budget) {
                    Ok(Some(d)) => {
                        found = Some(d);
                        break;
                    }
                    Ok(None) => w += 1,
                    Err(Error::BudgetExceeded { .. }) => break,
                    Err(e) => return Err(e),
                }
            }
            (found, found.is_some())
        }
        Err(e) => return Err(e),
    };
    let relation = containment(code)?;
    let mut text = format!(
        "code [{},{}] over GF({}^{}), lambda={}\n",
        code.n(),
        code.k(),
        code.field().p(),
        code.s(),
        ctx.show_element(code.lambda()),
    );
    text.push_str(&format!("generator: {}\n", ctx.show_poly(code.generator())));
    if let Some(zs) = code.zero_set() {
        text.push_str(&format!("zero set: {zs:?}\n"));
        let run = constaq_core::codes::consecutive_zero_run(zs, code.n());
        text.push_str(&format!("designed distance bound: {}\n", run + 1));
    }
    match (distance, exact) {
        (Some(d), true) => text.push_str(&format!("minimum distance: {d} (exact)\n")),
        (Some(d), false) => text.push_str(&format!("minimum distance: {d}\n")),
        (None, _) => text.push_str("minimum distance: unresolved within budget\n"),
    }
    text.push_str(&format!("containment: {relation}\n"));
    let mut j = code.to_json();
    j["distance"] = json!(distance);
    j["containment"] = json!(relation.to_string());
    Ok((text, j, distance))
}

pub fn cmd_code(args: &CodeArgs, budget: u128) -> Result<Report> {
    let (ctx, code) = build_code(args)?;
    let (text, json, _) = code_summary(&ctx, &code, budget)?;
    Ok(Report::new(text, json))
}

pub fn cmd_css(args: &CodeArgs, budget: u128) -> Result<Report> {
    let (ctx, code) = build_code(args)?;
    let (mut text, code_json, _) = code_summary(&ctx, &code, budget)?;
    let css = derive_css(&code, budget)?;
    text.push_str(&format!("quantum parameters: {}\n", css.parameters_text()));
    if let Some(gap) = css.mds_gap() {
        if gap == 0 {
            text.push_str("MDS: meets the quantum Singleton bound\n");
        } else {
            text.push_str(&format!("MDS gap: {gap}\n"));
        }
    }
    if let Some(dp) = css.qd_exact {
        text.push_str(&format!("refined d' (larger \\ smaller): {dp}\n"));
    }
    let json = json!({"code": code_json, "css": css.to_json()});
    Ok(Report::new(text, json))
}

pub fn cmd_cosets(n: usize, q: u64) -> Result<Report> {
    let cosets = cyclotomic_cosets(n, q);
    let mut text = format!("{q}-cyclotomic cosets mod {n}:\n");
    let mut rows = Vec::new();
    for c in &cosets {
        let tag = if c.symmetric {
            "symmetric".to_string()
        } else {
            format!("paired with C_{}", c.partner.unwrap())
        };
        text.push_str(&format!(
            "  C_{} = {:?} ({tag})\n",
            c.representative, c.members
        ));
        rows.push(json!({
            "representative": c.representative,
            "members": c.members,
            "symmetric": c.symmetric,
            "partner": c.partner,
        }));
    }
    Ok(Report::new(text, json!({"n": n, "q": q, "cosets": rows})))
}

pub fn cmd_distance(args: &CodeArgs, budget: u128) -> Result<Report> {
    let (ctx, code) = build_code(args)?;
    let (text, json, distance) = code_summary(&ctx, &code, budget)?;
    if distance.is_none() {
        return Err(Error::BudgetExceeded { needed: 0, budget });
    }
    Ok(Report::new(text, json))
}

pub fn cmd_encode(ctx: &PlanContext, k: usize, message: &str) -> Result<Report> {
    let cfg = CodecConfig::new(&ctx.plan, k, ctx.s)?;
    let m = parse_vector(ctx, message)?;
    let r = cfg.encode(&m)?;
    let text = format!("R = {}\n", TransformPlan::vector_text(&r));
    Ok(Report::new(
        text,
        json!({"message": message, "codeword": TransformPlan::vector_text(&r)}),
    ))
}

pub fn cmd_decode(ctx: &PlanContext, k: usize, t: Option<usize>, received: &str) -> Result<Report> {
    let cfg = match t {
        Some(t) => CodecConfig::with_t(&ctx.plan, k, ctx.s, t)?,
        None => CodecConfig::new(&ctx.plan, k, ctx.s)?,
    };
    let r = parse_vector(ctx, received)?;
    let mu = ctx.plan.ifffft(&r)?;
    let out = cfg.decode(&r)?;
    let mut text = format!("mu = {}\n", TransformPlan::vector_text(&mu));
    text.push_str(&format!("gamma = {}\n", out.error_locator));
    text.push_str(&format!("num_errors = {}\n", out.num_errors));
    match out.status {
        DecodeStatus::Decoded => {
            text.push_str(&format!(
                "message = {}\n",
                TransformPlan::vector_text(&out.message)
            ));
            text.push_str(&format!(
                "spectrum D = {}\n",
                TransformPlan::vector_text(&out.spectrum)
            ));
        }
        DecodeStatus::Failure => text.push_str("status = failure\n"),
    }
    Ok(Report::new(text, out.to_json()))
}

pub fn cmd_opcount(n: Option<u64>, t: Option<u64>, table: bool) -> Result<Report> {
    if table {
        let rows = complexity_table();
        let mut text = String::from("q^m  lambda  n    t   classical        spectral\n");
        let mut jrows = Vec::new();
        for r in &rows {
            text.push_str(&format!(
                "{:<4} {:<7} {:<4} {:<3} {}={:<10} {}={}\n",
                r.qm,
                r.lambda,
                r.n,
                r.t,
                r.classical_label,
                r.classical,
                r.spectral_label,
                r.spectral
            ));
            if let Some(note) = r.note {
                text.push_str(&format!("     note: {note}\n"));
            }
            jrows.push(json!({
                "qm": r.qm, "lambda": r.lambda, "n": r.n, "t": r.t,
                "classical_label": r.classical_label, "classical": r.classical,
                "spectral_label": r.spectral_label, "spectral": r.spectral,
                "note": r.note,
            }));
        }
        return Ok(Report::new(text, json!({"table": jrows})));
    }
    let (n, t) = match (n, t) {
        (Some(n), Some(t)) => (n, t),
        _ => return Err(Error::Parse("provide --n and --t, or --table".into())),
    };
    let m = op_counts(n, t);
    let text = format!(
        "O_Syn={} O_Spec={}\nO_Syn^M={} O_Spec^M={}\nO_PGZ={}\n",
        m.o_syn, m.o_spec, m.o_syn_mult, m.o_spec_mult, m.o_pgz
    );
    Ok(Report::new(
        text,
        json!({
            "n": n, "t": t,
            "o_syn": m.o_syn, "o_spec": m.o_spec,
            "o_syn_mult": m.o_syn_mult, "o_spec_mult": m.o_spec_mult,
            "o_pgz": m.o_pgz,
        }),
    ))
}

// ---------------------------------------------------------------------------
// qsim commands
// ---------------------------------------------------------------------------

pub struct QsimContext {
    pub ctx: PlanContext,
    pub layout: CircuitLayout,
}

pub fn qsim_layout(ctx: PlanContext, b1: usize, b2: usize, delta: usize) -> Result<QsimContext> {
    let layout = CircuitLayout::new(ctx.plan.n(), b1, b2, delta)?;
    Ok(QsimContext { ctx, layout })
}

/// Parse error specs like `X:2:w^1`, `Z:3:1`, `X:1:w,Z:2:w^2`, or `none`.
pub fn parse_error(
    ctx: &PlanContext,
    n: usize,
    spec: &str,
) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
    let field = ctx.plan.spec().clone();
    let mut alpha = vec![field.zero(); n];
    let mut gamma = vec![field.zero(); n];
    if spec.trim().eq_ignore_ascii_case("none") {
        return Ok((alpha, gamma));
    }
    for part in spec.split(',') {
        let bits: Vec<&str> = part.trim().split(':').collect();
        if bits.len() != 3 {
            return Err(Error::Parse(format!("bad error spec {part:?}")));
        }
        let idx: usize = bits[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad site in {part:?}")))?;
        if idx == 0 || idx > n {
            return Err(Error::IndexOutOfRange { index: idx, n });
        }
        let value = parse_vector(ctx, bits[2])?.remove(0);
        match bits[0].to_ascii_uppercase().as_str() {
            "X" => alpha[idx - 1] = alpha[idx - 1].add(&value)?,
            "Z" => gamma[idx - 1] = gamma[idx - 1].add(&value)?,
            other => return Err(Error::Parse(format!("bad Pauli kind {other:?}"))),
        }
    }
    Ok((alpha, gamma))
}

pub fn random_message(qc: &QsimContext, seed: u64) -> Result<QuditState> {
    let field = qc.ctx.plan.spec().clone();
    let n_m = qc.layout.n_m();
    let d = field.size() as usize;
    let len_big = (d as u128).checked_pow(n_m as u32).unwrap_or(u128::MAX);
    if len_big > constaq_core::qsim::STATE_AMPLITUDE_LIMIT {
        return Err(Error::BudgetExceeded {
            needed: len_big,
            budget: constaq_core::qsim::STATE_AMPLITUDE_LIMIT,
        });
    }
    let len = len_big as usize;
    let mut rng = SplitMix64::new(seed);
    let mut amplitudes: Vec<Complex64> = (0..len)
        .map(|_| {
            Complex64::new(
                rng.below(2001) as f64 / 1000.0 - 1.0,
                rng.below(2001) as f64 / 1000.0 - 1.0,
            )
        })
        .collect();
    let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in amplitudes.iter_mut() {
        *a /= norm;
    }
    QuditState::from_amplitudes(&field, n_m, amplitudes)
}

pub fn cmd_qsim_verify(ctx: &PlanContext) -> Result<Report> {
    let results = verify_all_relations(&ctx.plan)?;
    let mut text = format!("relations for {}:\n", ctx.plan.descriptor_text());
    let mut passed = 0;
    let mut rows = Vec::new();
    for (rel, ok) in &results {
        text.push_str(&format!("  {rel}: {}\n", if *ok { "PASS" } else { "FAIL" }));
        if *ok {
            passed += 1;
        }
        rows.push(json!({"relation": rel.to_string(), "pass": ok}));
    }
    text.push_str(&format!("{passed}/{} pass\n", results.len()));
    Ok(Report::new(
        text,
        json!({"plan": ctx.plan.descriptor_text(), "relations": rows}),
    ))
}

pub fn cmd_qsim_encode(qc: &QsimContext, seed: u64, trace_amplitudes: bool) -> Result<Report> {
    let phi = random_message(qc, seed)?;
    let psi = encode_state(&qc.ctx.plan, &qc.layout, &phi)?;
    let mut text = format!(
        "layout: T_X={:?} T_Z={:?} D_M={:?}\n",
        qc.layout.t_x, qc.layout.t_z, qc.layout.d_m
    );
    text.push_str(&format!("norm: {:.9}\n", psi.norm()));
    if trace_amplitudes {
        text.push_str(&psi.dump_text());
    }
    Ok(Report::new(
        text,
        json!({
            "t_x": qc.layout.t_x, "t_z": qc.layout.t_z, "d_m": qc.layout.d_m,
            "norm": psi.norm(),
        }),
    ))
}

pub fn cmd_qsim_syndrome(qc: &QsimContext, error: &str, seed: u64, trace: bool) -> Result<Report> {
    let phi = random_message(qc, seed)?;
    let psi = encode_state(&qc.ctx.plan, &qc.layout, &phi)?;
    let (alpha, gamma) = parse_error(&qc.ctx, qc.layout.n, error)?;
    let erroneous = apply_pauli(&psi, &alpha, &gamma)?;
    let out = syndrome_extract(&qc.ctx.plan, &qc.layout, &erroneous, trace)?;
    let mut text = format!(
        "s_X = {}\ns_Z = {}\n",
        TransformPlan::vector_text(&out.s_x),
        TransformPlan::vector_text(&out.s_z)
    );
    let fidelity = out.restored.fidelity(&erroneous)?;
    text.push_str(&format!("restored fidelity vs E|psi>: {fidelity:.9}\n"));
    for (label, state) in &out.trace {
        text.push_str(&format!("|{label}>:\n{}", state.dump_text()));
    }
    Ok(Report::new(
        text,
        json!({
            "s_x": TransformPlan::vector_text(&out.s_x),
            "s_z": TransformPlan::vector_text(&out.s_z),
            "restored_fidelity": fidelity,
        }),
    ))
}

pub fn cmd_qsim_roundtrip(qc: &QsimContext, error: &str, seed: u64) -> Result<Report> {
    let phi = random_message(qc, seed)?;
    let psi = encode_state(&qc.ctx.plan, &qc.layout, &phi)?;
    let (alpha, gamma) = parse_error(&qc.ctx, qc.layout.n, error)?;
    let erroneous = apply_pauli(&psi, &alpha, &gamma)?;
    let out = syndrome_extract(&qc.ctx.plan, &qc.layout, &erroneous, false)?;
    let recovered =
        deduce_and_recover(&qc.ctx.plan, &qc.layout, &out.s_x, &out.s_z, &out.restored)?;
    let fidelity = recovered.fidelity(&psi)?;
    let text = format!(
        "s_X = {}\ns_Z = {}\nfidelity = {fidelity:.9}\n",
        TransformPlan::vector_text(&out.s_x),
        TransformPlan::vector_text(&out.s_z)
    );
    Ok(Report::new(
        text,
        json!({
            "s_x": TransformPlan::vector_text(&out.s_x),
            "s_z": TransformPlan::vector_text(&out.s_z),
            "fidelity": fidelity,
        }),
    ))
}
