//! Benchmark fixtures: the reference comparison rows use (n = 62,
//! t = 28) over GF(125) and the small worked-example codecs, so the
//! benches measure exactly those configurations.

use constaq_core::decoder::CodecConfig;
use constaq_core::field::{Field, FieldElement, FieldOps, FieldSpec};
use constaq_core::rng::SplitMix64;
use constaq_core::transform::TransformPlan;

pub fn gf27() -> Field {
    FieldSpec::build(3, 3, Some(&[1, 2, 0, 1]), 1).unwrap()
}

pub fn gf125() -> Field {
    FieldSpec::build(5, 3, None, 1).unwrap()
}

/// (13, 10) codec over GF(27) from the worked example.
pub fn codec_13_10() -> CodecConfig {
    let f = gf27();
    let plan = TransformPlan::new(&f, 13, f.from_int(-1), None).unwrap();
    CodecConfig::new(&plan, 10, 1).unwrap()
}

/// (62, 6) codec over GF(125): t = 28, the largest reference row with
/// q^m = 125.
pub fn codec_62_6() -> CodecConfig {
    let f = gf125();
    let plan = TransformPlan::from_lambda(&f, 62, &f.elem_from_power(62)).unwrap();
    CodecConfig::new(&plan, 6, 3).unwrap()
}

pub fn random_vector(plan: &TransformPlan, seed: u64) -> Vec<FieldElement> {
    let f = plan.spec().clone();
    let mut rng = SplitMix64::new(seed);
    (0..plan.n())
        .map(|_| f.from_code(rng.below(f.size())))
        .collect()
}
