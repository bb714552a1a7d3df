//! The `repro` meta-command: regenerate the worked examples and the
//! complexity table, then diff against checked-in golden transcripts.

use std::fmt::Write as _;

use constaq_core::codes::{
    code_from_generator, code_from_zero_set, derive_css, factor_over_subfield, min_weight_up_to,
    repeated_root_code, repeated_root_containment, Containment, RepeatedRootSpec,
};
use constaq_core::decoder::{complexity_table, CodecConfig};
use constaq_core::field::{FieldEmbedding, FieldOps, FieldSpec};
use constaq_core::poly::Polynomial;
use constaq_core::qsim::verify_all_relations;
use constaq_core::transform::TransformPlan;
use constaq_core::Result;

const BUDGET: u128 = 1 << 25;

pub const GOLDEN_NAMES: [&str; 6] = [
    "example1",
    "example2",
    "example3",
    "table1",
    "qecc",
    "repeated_root",
];

pub fn generate(name: &str) -> Result<String> {
    match name {
        "example1" => example1(),
        "example2" => example2(),
        "example3" => example3(),
        "table1" => table1(),
        "qecc" => qecc(),
        "repeated_root" => repeated_root(),
        other => Err(constaq_core::Error::Parse(format!(
            "unknown repro section {other:?}"
        ))),
    }
}

pub fn golden(name: &str) -> &'static str {
    match name {
        "example1" => include_str!("../goldens/example1.txt"),
        "example2" => include_str!("../goldens/example2.txt"),
        "example3" => include_str!("../goldens/example3.txt"),
        "table1" => include_str!("../goldens/table1.txt"),
        "qecc" => include_str!("../goldens/qecc.txt"),
        "repeated_root" => include_str!("../goldens/repeated_root.txt"),
        _ => "",
    }
}

fn example1() -> Result<String> {
    let mut out = String::new();
    let small = FieldSpec::build(3, 2, Some(&[2, 2, 1]), 1)?;
    let big = FieldSpec::build(3, 20, None, 2)?;
    let emb = FieldEmbedding::new(&small, &big)?;
    let lambda = emb.embed(&small.elem_from_power(5))?;
    writeln!(out, "x^50 - w^5 over GF(9), splitting field GF(3^20)").unwrap();
    let plan = TransformPlan::from_lambda(&big, 50, &lambda)?;
    let factors = factor_over_subfield(&plan, 2)?;
    let degrees: Vec<usize> = factors.iter().map(|f| f.degree().unwrap()).collect();
    writeln!(out, "factor degrees: {degrees:?}").unwrap();
    let quads: Vec<&Polynomial> = factors.iter().filter(|f| f.degree() == Some(2)).collect();
    let mut g = Polynomial::one(&big);
    for q in &quads {
        g = g.mul(q)?;
    }
    let code = code_from_generator(&big, 50, &lambda, 2, &g)?;
    let d = min_weight_up_to(&code, 3, None, BUDGET)?.unwrap();
    writeln!(out, "[50,40] quadratic-product generator: d = {d}").unwrap();
    for (idx, ten) in factors
        .iter()
        .filter(|f| f.degree() == Some(10))
        .enumerate()
    {
        let code = code_from_generator(&big, 50, &lambda, 2, ten)?;
        let d = min_weight_up_to(&code, 3, None, BUDGET)?.unwrap();
        writeln!(out, "[50,40] degree-10 generator #{idx}: d = {d}").unwrap();
    }
    writeln!(out, "x^50 - 1 over GF(9) (cyclic)").unwrap();
    let plan = TransformPlan::from_lambda(&big, 50, &big.one())?;
    let factors = factor_over_subfield(&plan, 2)?;
    let degrees: Vec<usize> = factors.iter().map(|f| f.degree().unwrap()).collect();
    writeln!(out, "factor degrees: {degrees:?}").unwrap();
    let mut g = Polynomial::one(&big);
    for f in factors.iter().filter(|f| f.degree().unwrap() <= 2) {
        g = g.mul(f)?;
    }
    let code = code_from_generator(&big, 50, &big.one(), 2, &g)?;
    let d = min_weight_up_to(&code, 3, None, BUDGET)?.unwrap();
    writeln!(out, "[50,40] linear-and-quadratic generator: d = {d}").unwrap();
    for (idx, ten) in factors
        .iter()
        .filter(|f| f.degree() == Some(10))
        .enumerate()
    {
        let code = code_from_generator(&big, 50, &big.one(), 2, ten)?;
        let d = min_weight_up_to(&code, 3, None, BUDGET)?.unwrap();
        writeln!(out, "[50,40] degree-10 generator #{idx}: d = {d}").unwrap();
    }
    Ok(out)
}

fn example2() -> Result<String> {
    let mut out = String::new();
    let f = FieldSpec::build(3, 3, Some(&[1, 2, 0, 1]), 1)?;
    let plan = TransformPlan::new(&f, 13, f.from_int(-1), None)?;
    writeln!(out, "{}", plan.descriptor_text()).unwrap();
    let cfg = CodecConfig::new(&plan, 10, 1)?;
    let mut received = vec![f.zero(); 13];
    received[9] = f.primitive();
    writeln!(out, "R = {}", TransformPlan::vector_text(&received)).unwrap();
    let mu = plan.ifffft(&received)?;
    writeln!(out, "mu = {}", TransformPlan::vector_text(&mu)).unwrap();
    let outc = cfg.decode(&received)?;
    writeln!(out, "gamma = {}", outc.error_locator).unwrap();
    writeln!(
        out,
        "message = {}",
        TransformPlan::vector_text(&outc.message)
    )
    .unwrap();
    writeln!(out, "D = {}", TransformPlan::vector_text(&outc.spectrum)).unwrap();
    Ok(out)
}

fn example3() -> Result<String> {
    let mut out = String::new();
    let f = FieldSpec::build(3, 2, Some(&[2, 2, 1]), 1)?;
    let plan = TransformPlan::new(&f, 4, f.primitive().neg(), None)?;
    writeln!(out, "{}", plan.descriptor_text()).unwrap();
    let cfg = CodecConfig::new(&plan, 1, 2)?;
    let received = vec![f.zero(), f.one(), f.one(), f.one()];
    writeln!(out, "R = {}", TransformPlan::vector_text(&received)).unwrap();
    let mu = plan.ifffft(&received)?;
    writeln!(out, "mu = {}", TransformPlan::vector_text(&mu)).unwrap();
    let outc = cfg.decode(&received)?;
    writeln!(out, "gamma = {}", outc.error_locator).unwrap();
    writeln!(
        out,
        "message = {}",
        TransformPlan::vector_text(&outc.message)
    )
    .unwrap();
    writeln!(out, "D = {}", TransformPlan::vector_text(&outc.spectrum)).unwrap();
    Ok(out)
}

fn table1() -> Result<String> {
    let mut out = String::new();
    for r in complexity_table() {
        writeln!(
            out,
            "{} {} n={} t={} {}={} {}={}",
            r.qm, r.lambda, r.n, r.t, r.classical_label, r.classical, r.spectral_label, r.spectral
        )
        .unwrap();
        if let Some(note) = r.note {
            writeln!(out, "  note: {note}").unwrap();
        }
    }
    Ok(out)
}

fn qecc() -> Result<String> {
    let mut out = String::new();
    let f27 = FieldSpec::build(3, 3, Some(&[1, 2, 0, 1]), 1)?;
    let plan = TransformPlan::new(&f27, 13, f27.from_int(-1), None)?;
    let zs: Vec<usize> = (0..10).collect();
    let code = code_from_zero_set(&plan, 3, &zs)?;
    let css = derive_css(&code, BUDGET)?;
    writeln!(
        out,
        "[13,3] weakly-self-dual over GF(27): {} classical {:?}",
        css.parameters_text(),
        css.classical
    )
    .unwrap();
    let f64f = FieldSpec::build(2, 6, Some(&[1, 1, 0, 1, 1, 0, 1]), 1)?;
    let plan7 = TransformPlan::new(&f64f, 7, f64f.one(), None)?;
    let code = code_from_zero_set(&plan7, 6, &[0, 1, 2, 3])?;
    let css = derive_css(&code, BUDGET)?;
    writeln!(
        out,
        "[7,3] weakly-self-dual over GF(64): {} classical {:?}",
        css.parameters_text(),
        css.classical
    )
    .unwrap();
    let code = code_from_zero_set(&plan, 3, &[9, 10, 11, 12])?;
    let css = derive_css(&code, BUDGET)?;
    writeln!(
        out,
        "[13,9] dual-containing over GF(27): {} classical {:?}",
        css.parameters_text(),
        css.classical
    )
    .unwrap();
    Ok(out)
}

fn repeated_root() -> Result<String> {
    let mut out = String::new();
    let f27 = FieldSpec::build(3, 3, Some(&[1, 2, 0, 1]), 1)?;
    let spec = RepeatedRootSpec::new(&f27, 13, 2, &f27.elem_from_power(13), 3)?;
    let exps: Vec<(usize, usize)> = (0..13).map(|r| (r, 5)).collect();
    let code = repeated_root_code(&spec, &exps)?;
    let verdict = repeated_root_containment(&code)?;
    let css = derive_css(&code, BUDGET)?;
    writeln!(
        out,
        "x^117 - w^13 over GF(27), all multiplicities 5: [{},{}] {} -> {}",
        code.n(),
        code.k(),
        verdict,
        css.parameters_text()
    )
    .unwrap();

    let f81 = FieldSpec::build(3, 4, None, 4)?;
    let spec = RepeatedRootSpec::new(&f81, 8, 1, &f81.from_int(2), 4)?;
    let exps: Vec<(usize, usize)> = (0..8)
        .filter(|&r| r != 3 && r != 7)
        .map(|r| (r, 3))
        .collect();
    let code = repeated_root_code(&spec, &exps)?;
    let verdict = repeated_root_containment(&code)?;
    let css = derive_css(&code, BUDGET)?;
    writeln!(
        out,
        "x^24 - 2 over GF(81), six cubed cosets: [{},{}] {} -> {}",
        code.n(),
        code.k(),
        verdict,
        css.parameters_text()
    )
    .unwrap();
    writeln!(
        out,
        "  note: the dual [24,18] contains its weight-2 generator, so d = 2"
    )
    .unwrap();

    let f16 = FieldSpec::build(2, 4, None, 1)?;
    let spec = RepeatedRootSpec::new(&f16, 5, 2, &f16.one(), 1)?;
    let code = repeated_root_code(&spec, &[(0, 3), (1, 3)])?;
    let verdict = repeated_root_containment(&code)?;
    let css = derive_css(&code, BUDGET)?;
    writeln!(
        out,
        "x^20 - 1 over F_2, cubed cosets: [{},{}] {} -> {}",
        code.n(),
        code.k(),
        verdict,
        css.parameters_text()
    )
    .unwrap();
    writeln!(out, "  note: dimension follows the n-2k rule").unwrap();
    assert!(matches!(verdict, Containment::WeaklySelfDual));
    Ok(out)
}

/// Quick live check that the relation grid is still green; part of repro
/// but with no golden (pure pass/fail).
pub fn relations_live() -> Result<bool> {
    let f4 = FieldSpec::build(2, 2, None, 1)?;
    let plan = TransformPlan::new(&f4, 3, f4.one(), None)?;
    Ok(verify_all_relations(&plan)?.iter().all(|(_, ok)| *ok))
}

/// Run every section; returns (name, pass) pairs plus rendered diffs.
pub fn run() -> Result<(Vec<(String, bool)>, String)> {
    let mut results = Vec::new();
    let mut detail = String::new();
    for name in GOLDEN_NAMES {
        let produced = generate(name)?;
        let expected = golden(name);
        let pass = produced == expected;
        if !pass {
            writeln!(detail, "--- {name}: expected").unwrap();
            detail.push_str(expected);
            writeln!(detail, "--- {name}: produced").unwrap();
            detail.push_str(&produced);
        }
        results.push((name.to_string(), pass));
    }
    let relations_ok = relations_live()?;
    results.push(("relations".to_string(), relations_ok));
    Ok((results, detail))
}

/// Rewrite the golden files from the current implementation (dev tool).
pub fn bless() -> Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/goldens");
    std::fs::create_dir_all(dir).map_err(|e| constaq_core::Error::Parse(e.to_string()))?;
    for name in GOLDEN_NAMES {
        let produced = generate(name)?;
        let path = format!("{dir}/{name}.txt");
        std::fs::write(&path, produced).map_err(|e| constaq_core::Error::Parse(e.to_string()))?;
        println!("blessed {path}");
    }
    Ok(())
}
