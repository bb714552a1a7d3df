//! Constacyclic (BCH) code construction and classification.
//!
//! A λ-constacyclic code of length n over GF(q) is the set of length-n
//! vectors whose polynomials are divisible by a monic generator g(x)
//! dividing x^n - λ. Simple-root codes carry a transform plan and a zero
//! set of ξ-exponents; repeated-root codes (length L = p^η·n) are built
//! from cyclotomic-coset minimal polynomials raised to per-coset
//! multiplicities. Both feed the CSS quantum construction.

use std::fmt;

use serde_json::json;

use crate::error::Error;
use crate::field::{Field, FieldElement, FieldOps};
use crate::poly::{min_poly, Polynomial};
use crate::transform::TransformPlan;
use crate::Result;

// ---------------------------------------------------------------------------
// cyclotomic cosets
// ---------------------------------------------------------------------------

/// A q-cyclotomic coset modulo n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicCoset {
    pub representative: usize,
    /// Sorted orbit {r·q^j mod n}.
    pub members: Vec<usize>,
    /// True iff (n - r) mod n lies in the coset.
    pub symmetric: bool,
    /// Representative of C_{n-r} when asymmetric.
    pub partner: Option<usize>,
}

/// Partition {0, ..., n-1} into q-cyclotomic cosets.
pub fn cyclotomic_cosets(n: usize, q: u64) -> Vec<CyclotomicCoset> {
    let q = (q % n as u64) as usize;
    let mut seen = vec![false; n];
    let mut cosets = Vec::new();
    for r in 0..n {
        if seen[r] {
            continue;
        }
        let mut members = Vec::new();
        let mut cur = r;
        while !seen[cur] {
            seen[cur] = true;
            members.push(cur);
            cur = cur * q % n;
        }
        members.sort_unstable();
        cosets.push(CyclotomicCoset {
            representative: r,
            members,
            symmetric: false,
            partner: None,
        });
    }
    // classify symmetry and pair up
    let rep_of = |cosets: &[CyclotomicCoset], x: usize| {
        cosets
            .iter()
            .find(|c| c.members.contains(&x))
            .map(|c| c.representative)
            .unwrap()
    };
    let reps: Vec<usize> = cosets.iter().map(|c| c.representative).collect();
    for i in 0..cosets.len() {
        let mirror = (n - reps[i]) % n;
        if cosets[i].members.contains(&mirror) {
            cosets[i].symmetric = true;
        } else {
            cosets[i].partner = Some(rep_of(&cosets, mirror));
        }
    }
    cosets
}

// ---------------------------------------------------------------------------
// code object
// ---------------------------------------------------------------------------

/// Containment relation of a code against its Euclidean dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    WeaklySelfDual,
    DualContaining,
    /// Both inclusions hold (self-dual boundary).
    SelfDual,
    None,
}

impl fmt::Display for Containment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Containment::WeaklySelfDual => "weakly-self-dual",
            Containment::DualContaining => "dual-containing",
            Containment::SelfDual => "self-dual",
            Containment::None => "none",
        };
        write!(f, "{text}")
    }
}

#[derive(Clone)]
enum CodeDetail {
    SimpleRoot {
        plan: TransformPlan,
        /// Sorted ξ-exponents r with g(βξ^r) = 0.
        zero_set: Vec<usize>,
        /// (b, δ) when built as a BCH code from a consecutive root run.
        designed: Option<(usize, usize)>,
    },
    RepeatedRoot {
        spec: RepeatedRootSpec,
        /// Multiplicity e_r per coset representative, aligned with
        /// `spec.cosets`.
        multiplicities: Vec<usize>,
    },
    /// Generator-only view (e.g. a factor picked from a subfield
    /// factorization whose root exponents were not tracked).
    Generic,
}

/// A λ-constacyclic code with generator over the designated subfield.
#[derive(Clone)]
pub struct ConstacyclicCode {
    field: Field,
    s: usize,
    n: usize,
    lambda: FieldElement,
    generator: Polynomial,
    k: usize,
    detail: CodeDetail,
}

impl fmt::Debug for ConstacyclicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}] lambda={} g={}",
            self.n, self.k, self.lambda, self.generator
        )
    }
}

impl ConstacyclicCode {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> &FieldElement {
        &self.lambda
    }

    pub fn generator(&self) -> &Polynomial {
        &self.generator
    }

    /// Alphabet size q = p^s.
    pub fn q(&self) -> u64 {
        let mut q = 1u64;
        for _ in 0..self.s {
            q *= self.field.p();
        }
        q
    }

    pub fn plan(&self) -> Option<&TransformPlan> {
        match &self.detail {
            CodeDetail::SimpleRoot { plan, .. } => Some(plan),
            _ => None,
        }
    }

    pub fn zero_set(&self) -> Option<&[usize]> {
        match &self.detail {
            CodeDetail::SimpleRoot { zero_set, .. } => Some(zero_set),
            _ => None,
        }
    }

    /// (b, δ) for codes built from a designed consecutive root run.
    pub fn designed(&self) -> Option<(usize, usize)> {
        match &self.detail {
            CodeDetail::SimpleRoot { designed, .. } => *designed,
            _ => None,
        }
    }

    pub fn repeated_root(&self) -> Option<(&RepeatedRootSpec, &[usize])> {
        match &self.detail {
            CodeDetail::RepeatedRoot {
                spec,
                multiplicities,
            } => Some((spec, multiplicities)),
            _ => None,
        }
    }

    /// Membership: v(x) is a codeword iff g | v.
    pub fn contains(&self, v: &Polynomial) -> Result<bool> {
        self.generator.divides(v)
    }

    /// h(x) = (x^n - λ)/g(x).
    pub fn check_polynomial(&self) -> Result<Polynomial> {
        Polynomial::x_pow_minus(&self.field, self.n, &self.lambda).div_exact(&self.generator)
    }

    /// Generator h†(x) of the Euclidean dual: the monic reciprocal of h.
    pub fn dual_generator(&self) -> Result<Polynomial> {
        self.check_polynomial()?.reciprocal().monic()
    }

    /// The dual code, a λ⁻¹-constacyclic code of dimension n - k.
    pub fn dual(&self) -> Result<ConstacyclicCode> {
        let h_dagger = self.dual_generator()?;
        let lambda_inv = self.lambda.inv()?;
        let detail = match &self.detail {
            CodeDetail::SimpleRoot { plan, zero_set, .. } => {
                let dual_plan = TransformPlan::new(
                    &self.field,
                    self.n,
                    plan.beta().inv()?,
                    Some(plan.xi().clone()),
                )?;
                let mut dual_zero: Vec<usize> = (0..self.n)
                    .filter(|r| !zero_set.contains(r))
                    .map(|r| (self.n - r) % self.n)
                    .collect();
                dual_zero.sort_unstable();
                CodeDetail::SimpleRoot {
                    plan: dual_plan,
                    zero_set: dual_zero,
                    designed: None,
                }
            }
            CodeDetail::RepeatedRoot { spec, .. } => {
                let (dual_spec, mults) = spec.dual_decomposition(&h_dagger)?;
                CodeDetail::RepeatedRoot {
                    spec: dual_spec,
                    multiplicities: mults,
                }
            }
            CodeDetail::Generic => CodeDetail::Generic,
        };
        Ok(ConstacyclicCode {
            field: self.field.clone(),
            s: self.s,
            n: self.n,
            lambda: lambda_inv,
            k: self.n - self.k,
            generator: h_dagger,
            detail,
        })
    }

    /// Code descriptor JSON.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "field": self.field.descriptor_text(),
            "s": self.s,
            "n": self.n,
            "k": self.k,
            "lambda": self.lambda.to_string(),
            "generator": self.generator.to_json(),
        });
        if let CodeDetail::SimpleRoot { plan, zero_set, .. } = &self.detail {
            v["beta"] = json!(plan.beta().to_string());
            v["zero_set"] = json!(zero_set);
        }
        v
    }
}

// ---------------------------------------------------------------------------
// simple-root construction
// ---------------------------------------------------------------------------

/// The n linear factors of x^n - λ: pairs (r, x - βξ^r).
pub fn factor_xn_minus_lambda(plan: &TransformPlan) -> Result<Vec<(usize, Polynomial)>> {
    let field = plan.spec().clone();
    let points = plan.eval_points()?;
    let mut out = Vec::with_capacity(plan.n());
    for (r, root) in points.iter().enumerate() {
        out.push((
            r,
            Polynomial::from_coeffs(&field, vec![root.neg(), field.one()]),
        ));
    }
    Ok(out)
}

/// Irreducible factors of x^n - λ over GF(p^s): linear factors grouped by
/// Frobenius orbits, each orbit multiplied out as a minimal polynomial.
/// Sorted by (degree, coefficient codes) for determinism.
pub fn factor_over_subfield(plan: &TransformPlan, s: usize) -> Result<Vec<Polynomial>> {
    if !plan.lambda().in_subfield(s)? {
        return Err(Error::NotConjugacyClosed);
    }
    let points = plan.eval_points()?;
    let mut remaining: Vec<bool> = vec![true; plan.n()];
    let mut factors = Vec::new();
    for r in 0..plan.n() {
        if !remaining[r] {
            continue;
        }
        let mp = min_poly(&points[r], s)?;
        // mark every root of this orbit as consumed
        for (j, taken) in remaining.iter_mut().enumerate() {
            if *taken && mp.eval(&points[j])?.is_zero() {
                *taken = false;
            }
        }
        factors.push(mp);
    }
    factors.sort_by_key(|f| {
        (
            f.degree().unwrap_or(0),
            f.coeffs().iter().map(|c| c.code()).collect::<Vec<_>>(),
        )
    });
    Ok(factors)
}

/// Exponent map of twisted conjugation on zero sets: the Frobenius power
/// x -> x^q carries βξ^r to βξ^{(q·r + c_q) mod n} with ξ^{c_q} = β^{q-1}.
fn conjugation_offset(plan: &TransformPlan, q: u64) -> Result<usize> {
    let target = plan.beta().pow((q - 1) as i64)?;
    let mut cur = plan.spec().one();
    for c in 0..plan.n() {
        if cur == target {
            return Ok(c);
        }
        cur = cur.mul(plan.xi())?;
    }
    Err(Error::NotConjugacyClosed)
}

/// Code from an explicit zero set of ξ-exponents. The set must already be
/// closed under q-conjugacy or the generator would leave GF(p^s).
pub fn code_from_zero_set(
    plan: &TransformPlan,
    s: usize,
    zero_set: &[usize],
) -> Result<ConstacyclicCode> {
    let field = plan.spec().clone();
    if field.kprime() % s != 0 {
        return Err(Error::NoSuchSubfield {
            s,
            kprime: field.kprime(),
        });
    }
    let mut set: Vec<usize> = zero_set.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() != zero_set.len() || set.iter().any(|&r| r >= plan.n()) {
        return Err(Error::Parse(
            "zero set must be distinct residues mod n".into(),
        ));
    }
    let points = plan.eval_points()?;
    let mut g = Polynomial::one(&field);
    for &r in &set {
        let factor = Polynomial::from_coeffs(&field, vec![points[r].neg(), field.one()]);
        g = g.mul(&factor)?;
    }
    for c in g.coeffs() {
        if !c.in_subfield(s)? {
            return Err(Error::NotConjugacyClosed);
        }
    }
    if !plan.lambda().in_subfield(s)? {
        return Err(Error::NotConjugacyClosed);
    }
    let k = plan.n() - set.len();
    Ok(ConstacyclicCode {
        field,
        s,
        n: plan.n(),
        lambda: plan.lambda().clone(),
        generator: g,
        k,
        detail: CodeDetail::SimpleRoot {
            plan: plan.clone(),
            zero_set: set,
            designed: None,
        },
    })
}

/// Code from an explicit generator polynomial; g must divide x^n - λ and
/// have coefficients in GF(p^s).
pub fn code_from_generator(
    field: &Field,
    n: usize,
    lambda: &FieldElement,
    s: usize,
    generator: &Polynomial,
) -> Result<ConstacyclicCode> {
    let modulus = Polynomial::x_pow_minus(field, n, lambda);
    if !generator.divides(&modulus)? {
        return Err(Error::Parse("generator must divide x^n - lambda".into()));
    }
    let g = generator.monic()?;
    for c in g.coeffs() {
        if !c.in_subfield(s)? {
            return Err(Error::NotConjugacyClosed);
        }
    }
    let deg = g.degree().unwrap_or(0);
    Ok(ConstacyclicCode {
        field: field.clone(),
        s,
        n,
        lambda: lambda.clone(),
        generator: g,
        k: n - deg,
        detail: CodeDetail::Generic,
    })
}

/// BCH code with consecutive root run βξ^b, ..., βξ^{b+δ-2}; the run is
/// closed under q-conjugacy automatically (LCM of minimal polynomials).
pub fn bch_code(
    plan: &TransformPlan,
    s: usize,
    b: usize,
    delta: usize,
) -> Result<ConstacyclicCode> {
    if delta > plan.n() + 1 {
        return Err(Error::Parse("designed distance exceeds n + 1".into()));
    }
    let mut q = 1u64;
    for _ in 0..s {
        q *= plan.spec().p();
    }
    let offset = conjugation_offset(plan, q)?;
    let mut in_set = vec![false; plan.n()];
    let mut stack: Vec<usize> = (0..delta.saturating_sub(1))
        .map(|j| (b + j) % plan.n())
        .collect();
    while let Some(r) = stack.pop() {
        if in_set[r] {
            continue;
        }
        in_set[r] = true;
        stack.push((r * q as usize + offset) % plan.n());
    }
    let set: Vec<usize> = (0..plan.n()).filter(|&r| in_set[r]).collect();
    let mut code = code_from_zero_set(plan, s, &set)?;
    if let CodeDetail::SimpleRoot { designed, .. } = &mut code.detail {
        *designed = Some((b, delta));
    }
    Ok(code)
}

// ---------------------------------------------------------------------------
// repeated-root codes
// ---------------------------------------------------------------------------

/// Root data for x^L - λ with L = p^η·n, p ∤ n: the simple-root plan of
/// x^n - λ₀ (λ₀ the p^η-th root of λ) plus the coset decomposition.
#[derive(Clone)]
pub struct RepeatedRootSpec {
    base_plan: TransformPlan,
    eta: u32,
    p_eta: usize,
    length: usize,
    lambda: FieldElement,
    cosets: Vec<CyclotomicCoset>,
    /// Minimal polynomial M_r per coset, aligned with `cosets`.
    min_polys: Vec<Polynomial>,
    s: usize,
}

impl RepeatedRootSpec {
    /// λ is the constant of x^L - λ; it must lie in GF(p^s).
    pub fn new(
        field: &Field,
        n: usize,
        eta: u32,
        lambda: &FieldElement,
        s: usize,
    ) -> Result<RepeatedRootSpec> {
        if n as u64 % field.p() == 0 {
            return Err(Error::RepeatedRootPlan);
        }
        if !lambda.in_subfield(s)? {
            return Err(Error::NoSuchSubfield {
                s,
                kprime: field.kprime(),
            });
        }
        let p_eta = (field.p() as u128).pow(eta) as usize;
        let length = p_eta * n;
        // λ₀ = λ^{p^m} with m ≡ -η (mod s) inverts Frobenius^η on GF(p^s)
        let m = (s as u32 * eta.div_ceil(s as u32).max(1) - eta) % s as u32;
        let lambda0 = lambda.frobenius(m as usize);
        debug_assert_eq!(lambda0.frobenius(eta as usize), *lambda);
        let base_plan = TransformPlan::from_lambda(field, n, &lambda0)?;
        let mut q = 1u64;
        for _ in 0..s {
            q *= field.p();
        }
        // orbit structure of the twisted conjugation r -> qr + c_q
        let offset = conjugation_offset(&base_plan, q)?;
        let cosets = affine_cosets(n, q as usize, offset);
        let points = base_plan.eval_points()?;
        let mut min_polys = Vec::with_capacity(cosets.len());
        for coset in &cosets {
            let mut mp = Polynomial::one(field);
            for &i in &coset.members {
                let factor = Polynomial::from_coeffs(field, vec![points[i].neg(), field.one()]);
                mp = mp.mul(&factor)?;
            }
            for c in mp.coeffs() {
                if !c.in_subfield(s)? {
                    return Err(Error::NotConjugacyClosed);
                }
            }
            min_polys.push(mp);
        }
        Ok(RepeatedRootSpec {
            base_plan,
            eta,
            p_eta,
            length,
            lambda: lambda.clone(),
            cosets,
            min_polys,
            s,
        })
    }

    pub fn base_plan(&self) -> &TransformPlan {
        &self.base_plan
    }

    pub fn eta(&self) -> u32 {
        self.eta
    }

    pub fn p_eta(&self) -> usize {
        self.p_eta
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn cosets(&self) -> &[CyclotomicCoset] {
        &self.cosets
    }

    pub fn min_polys(&self) -> &[Polynomial] {
        &self.min_polys
    }

    fn coset_index_of(&self, r: usize) -> usize {
        self.cosets
            .iter()
            .position(|c| c.members.contains(&r))
            .unwrap()
    }

    /// Index pairing of duality: the reciprocal of root β₀ξ^r is
    /// β₀ξ^{(c - r) mod n} with ξ^c = β₀^{-2}; requires λ² = 1.
    fn dual_pair_offset(&self) -> Result<usize> {
        if !self.lambda.mul(&self.lambda)?.is_one() {
            return Err(Error::ContainmentViolated);
        }
        let target = self.base_plan.beta().pow(-2)?;
        let mut cur = self.base_plan.spec().one();
        for c in 0..self.base_plan.n() {
            if cur == target {
                return Ok(c);
            }
            cur = cur.mul(self.base_plan.xi())?;
        }
        Err(Error::ContainmentViolated)
    }

    /// Recover a coset-multiplicity vector from a dual generator.
    fn dual_decomposition(&self, h_dagger: &Polynomial) -> Result<(RepeatedRootSpec, Vec<usize>)> {
        // the dual spec shares n, η and swaps λ -> λ⁻¹, β₀ -> β₀⁻¹
        let field = self.base_plan.spec().clone();
        let lambda_inv = self.lambda.inv()?;
        let dual_spec =
            RepeatedRootSpec::new(&field, self.base_plan.n(), self.eta, &lambda_inv, self.s)?;
        let mults = dual_spec.multiplicities_of(h_dagger)?;
        Ok((dual_spec, mults))
    }

    /// Multiplicity of each M_r in a divisor of x^L - λ.
    pub fn multiplicities_of(&self, g: &Polynomial) -> Result<Vec<usize>> {
        let mut mults = Vec::with_capacity(self.min_polys.len());
        let mut rest = g.clone();
        for mp in &self.min_polys {
            let mut e = 0usize;
            loop {
                let (q, r) = rest.divmod(mp)?;
                if r.is_zero() && e < self.p_eta {
                    rest = q;
                    e += 1;
                } else {
                    break;
                }
            }
            mults.push(e);
        }
        if rest.degree() != Some(0) {
            return Err(Error::NotConjugacyClosed);
        }
        Ok(mults)
    }
}

/// Orbits of r -> (q·r + offset) mod n, with the (n - r) symmetry tags of
/// `cyclotomic_cosets` evaluated on the orbit members.
fn affine_cosets(n: usize, q: usize, offset: usize) -> Vec<CyclotomicCoset> {
    if offset == 0 {
        return cyclotomic_cosets(n, q as u64);
    }
    let mut seen = vec![false; n];
    let mut cosets = Vec::new();
    for r in 0..n {
        if seen[r] {
            continue;
        }
        let mut members = Vec::new();
        let mut cur = r;
        while !seen[cur] {
            seen[cur] = true;
            members.push(cur);
            cur = (cur * q + offset) % n;
        }
        members.sort_unstable();
        let symmetric = members.contains(&((n - r) % n));
        cosets.push(CyclotomicCoset {
            representative: r,
            members,
            symmetric,
            partner: None,
        });
    }
    cosets
}

/// Repeated-root constacyclic code from per-coset multiplicities
/// (representative, e) with 0 ≤ e ≤ p^η; omitted cosets get e = 0.
pub fn repeated_root_code(
    spec: &RepeatedRootSpec,
    exponents: &[(usize, usize)],
) -> Result<ConstacyclicCode> {
    let field = spec.base_plan.spec().clone();
    let mut mults = vec![0usize; spec.cosets.len()];
    for &(rep, e) in exponents {
        if e > spec.p_eta {
            return Err(Error::Parse(format!("multiplicity {e} exceeds p^eta")));
        }
        mults[spec.coset_index_of(rep % spec.base_plan.n())] = e;
    }
    let mut g = Polynomial::one(&field);
    for (idx, &e) in mults.iter().enumerate() {
        g = g.mul(&spec.min_polys[idx].pow(e)?)?;
    }
    let deg = g.degree().unwrap();
    Ok(ConstacyclicCode {
        field,
        s: spec.s,
        n: spec.length,
        lambda: spec.lambda.clone(),
        generator: g,
        k: spec.length - deg,
        detail: CodeDetail::RepeatedRoot {
            spec: spec.clone(),
            multiplicities: mults,
        },
    })
}

/// Containment verdict for a repeated-root code via the multiplicity
/// inequalities: C ⊆ C⊥ iff e_r + e_{σ(r)} ≥ p^η for every coset (which
/// is 2a ≥ p^η on self-paired cosets), and C⊥ ⊆ C iff ≤ throughout, σ
/// being the duality pairing of cosets. Cross-checked against polynomial
/// divisibility of g and h† for L ≤ 128.
pub fn repeated_root_containment(code: &ConstacyclicCode) -> Result<Containment> {
    let (spec, mults) = code.repeated_root().ok_or(Error::RepeatedRootPlan)?;
    let c = spec.dual_pair_offset()?;
    let n = spec.base_plan.n();
    let mut wsd = true;
    let mut dc = true;
    for (idx, coset) in spec.cosets.iter().enumerate() {
        let sigma = (c + n - coset.representative % n) % n;
        let pair_idx = spec.coset_index_of(sigma);
        let total = mults[idx] + mults[pair_idx];
        if total < spec.p_eta {
            wsd = false;
        }
        if total > spec.p_eta {
            dc = false;
        }
    }
    let verdict = match (wsd, dc) {
        (true, true) => Containment::SelfDual,
        (true, false) => Containment::WeaklySelfDual,
        (false, true) => Containment::DualContaining,
        (false, false) => Containment::None,
    };
    if code.n() <= 128 {
        let by_division = containment(code)?;
        if by_division != verdict {
            return Err(Error::ContainmentViolated);
        }
    }
    Ok(verdict)
}

// ---------------------------------------------------------------------------
// duals and containment
// ---------------------------------------------------------------------------

/// Containment against the Euclidean dual by polynomial divisibility:
/// C ⊆ C⊥ iff h† | g, and C⊥ ⊆ C iff g | h†.
pub fn containment(code: &ConstacyclicCode) -> Result<Containment> {
    let h_dagger = code.dual_generator()?;
    let wsd = h_dagger.divides(code.generator())?;
    let dc = code.generator().divides(&h_dagger)?;
    Ok(match (wsd, dc) {
        (true, true) => Containment::SelfDual,
        (true, false) => Containment::WeaklySelfDual,
        (false, true) => Containment::DualContaining,
        (false, false) => Containment::None,
    })
}

/// C ⊆ C⊥. For λ² = 1 the reciprocal-product criterion (x^n - λ divides
/// g·g†) and, on simple-root codes, the zero-set criterion are also
/// evaluated; all routes must agree.
pub fn is_weakly_self_dual(code: &ConstacyclicCode) -> Result<bool> {
    let primary = matches!(
        containment(code)?,
        Containment::WeaklySelfDual | Containment::SelfDual
    );
    if code.lambda().mul(code.lambda())?.is_one() {
        let g = code.generator();
        let product = g.mul(&g.reciprocal())?;
        let modulus = Polynomial::x_pow_minus(&code.field, code.n, code.lambda());
        let by_product = modulus.divides(&product)?;
        if by_product != primary {
            return Err(Error::ContainmentViolated);
        }
        if let Some(zs) = code.zero_set() {
            if zero_set_containment_dual_in_code(code, zs)? != primary {
                return Err(Error::ContainmentViolated);
            }
        }
    }
    Ok(primary)
}

/// C⊥ ⊆ C, with the same cross-checks as `is_weakly_self_dual`.
pub fn is_dual_containing(code: &ConstacyclicCode) -> Result<bool> {
    let primary = matches!(
        containment(code)?,
        Containment::DualContaining | Containment::SelfDual
    );
    if code.lambda().mul(code.lambda())?.is_one() {
        let g = code.generator();
        let product = g.mul(&g.reciprocal())?;
        let modulus = Polynomial::x_pow_minus(&code.field, code.n, code.lambda());
        let by_product = product.divides(&modulus)?;
        if by_product != primary {
            return Err(Error::ContainmentViolated);
        }
        if let Some(zs) = code.zero_set() {
            if zero_set_code_in_dual(code, zs)? != primary {
                return Err(Error::ContainmentViolated);
            }
        }
    }
    Ok(primary)
}

/// Z_{C⊥} ⊆ Z_C with both zero sets in the common βξ^r indexing; the
/// dual's roots β⁻¹ξ^{-u} re-index as (c - u) mod n with ξ^c = β^{-2}.
fn zero_set_containment_dual_in_code(code: &ConstacyclicCode, zs: &[usize]) -> Result<bool> {
    let dual_common = dual_zero_set_common_index(code, zs)?;
    Ok(dual_common.iter().all(|r| zs.contains(r)))
}

fn zero_set_code_in_dual(code: &ConstacyclicCode, zs: &[usize]) -> Result<bool> {
    let dual_common = dual_zero_set_common_index(code, zs)?;
    Ok(zs.iter().all(|r| dual_common.contains(r)))
}

fn dual_zero_set_common_index(code: &ConstacyclicCode, zs: &[usize]) -> Result<Vec<usize>> {
    let plan = code.plan().ok_or(Error::RepeatedRootPlan)?;
    let n = code.n();
    let target = plan.beta().pow(-2)?;
    let mut c = None;
    let mut cur = code.field.one();
    for j in 0..n {
        if cur == target {
            c = Some(j);
            break;
        }
        cur = cur.mul(plan.xi())?;
    }
    let c = c.ok_or(Error::ContainmentViolated)?;
    Ok((0..n)
        .filter(|u| !zs.contains(u))
        .map(|u| (c + n - u) % n)
        .map(|r| r % n)
        .collect())
}

// ---------------------------------------------------------------------------
// distance oracles
// ---------------------------------------------------------------------------

/// Exact minimum distance by enumerating all q^k messages; errors with
/// BudgetExceeded when q^k exceeds the budget.
pub fn min_distance_bruteforce(code: &ConstacyclicCode, budget: u128) -> Result<usize> {
    if code.k == code.n && code.generator.is_one() {
        return Ok(1);
    }
    let q = code.q() as u128;
    let mut total = 1u128;
    for _ in 0..code.k {
        total = total.saturating_mul(q);
        if total > budget {
            return Err(Error::BudgetExceeded {
                needed: total,
                budget,
            });
        }
    }
    let field = &code.field;
    let alphabet = field.subfield_elements(code.s)?;
    // contrib[d][j] = code of alphabet[d] · g_j
    let gen_codes: Vec<u64> = code.generator.coeffs().iter().map(|c| c.code()).collect();
    let contrib: Vec<Vec<u64>> = alphabet
        .iter()
        .map(|m| {
            gen_codes
                .iter()
                .map(|&gc| field.mul_codes(m.code(), gc))
                .collect()
        })
        .collect();
    let mut best = usize::MAX;
    let mut digits = vec![0usize; code.k];
    let mut word = vec![0u64; code.n];
    // odometer over messages, skipping the zero message
    'outer: loop {
        // advance
        let mut pos = 0;
        loop {
            digits[pos] += 1;
            if digits[pos] < alphabet.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
            if pos == code.k {
                break 'outer;
            }
        }
        word.iter_mut().for_each(|slot| *slot = 0);
        for (i, &d) in digits.iter().enumerate() {
            if d == 0 {
                continue;
            }
            for (j, &c) in contrib[d].iter().enumerate() {
                if c != 0 {
                    word[i + j] = field.add_codes(word[i + j], c);
                }
            }
        }
        let wt = word.iter().filter(|&&x| x != 0).count();
        if wt < best {
            best = wt;
            if best == 1 {
                break;
            }
        }
    }
    Ok(best)
}

/// Minimum weight over codewords of weight ≤ wmax, or None if no nonzero
/// codeword that light exists. Exact: constacyclic shifting pins the
/// support to contain position 0 and unit scaling pins that coefficient
/// to 1; the last coefficient is solved rather than scanned. Optionally
/// skips words lying in `exclude` (for coset minimum weights).
pub fn min_weight_up_to(
    code: &ConstacyclicCode,
    wmax: usize,
    exclude: Option<&ConstacyclicCode>,
    budget: u128,
) -> Result<Option<usize>> {
    let field = code.field.clone();
    let n = code.n;
    let g = &code.generator;
    if g.is_one() {
        // whole space: weight-1 words exist (never excludable: the smaller
        // code of a proper CSS pair cannot also be the whole space)
        return Ok(Some(1));
    }
    let deg = g.degree().unwrap();
    let gen_codes: Vec<u64> = g.coeffs().iter().map(|c| c.code()).collect();
    // rows[i] = x^i mod g, as length-deg code vectors
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur = vec![0u64; deg];
    cur[0] = 1;
    rows.push(cur.clone());
    for _ in 1..n {
        // multiply by x and reduce via x^deg ≡ -g[0..deg] (g monic)
        let overflow = cur[deg - 1];
        for j in (1..deg).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if overflow != 0 {
            let neg_over = field.neg_code(overflow);
            for j in 0..deg {
                if gen_codes[j] != 0 {
                    cur[j] = field.add_codes(cur[j], field.mul_codes(neg_over, gen_codes[j]));
                }
            }
        }
        rows.push(cur.clone());
    }

    let units: Vec<u64> = field
        .subfield_elements(code.s)?
        .into_iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.code())
        .collect();
    let qm1 = units.len();
    let in_sub = |c: u64| field.from_code(c).in_subfield(code.s).unwrap_or(false);

    let mut checks: u128 = 0;
    let mut partial = vec![0u64; deg];
    for w in 1..=wmax.min(n) {
        // weight-1: c·x^i in the code iff x^i ≡ 0 mod g, impossible for
        // g with nonzero constant term; handle g = unit·x^j anyway
        if w == 1 {
            if rows[0].iter().all(|&x| x == 0) {
                return Ok(Some(1));
            }
            continue;
        }
        // supports {0, i_1 < ... < i_{w-1}} ⊂ {0} ∪ {1..n-1}
        let mut idx: Vec<usize> = (1..w).collect();
        loop {
            // coefficient odometer over the w-2 middle positions
            let mut digits = vec![0usize; w.saturating_sub(2)];
            'coeffs: loop {
                checks += 1;
                if checks > budget {
                    return Err(Error::BudgetExceeded {
                        needed: checks,
                        budget,
                    });
                }
                // partial = rows[0] + Σ units[d]·rows[idx_middle]
                partial.copy_from_slice(&rows[0]);
                for (slot, &d) in digits.iter().enumerate() {
                    let r = &rows[idx[slot]];
                    let u = units[d];
                    for j in 0..deg {
                        if r[j] != 0 {
                            partial[j] = field.add_codes(partial[j], field.mul_codes(u, r[j]));
                        }
                    }
                }
                // solve the last coefficient from the constraint rows
                let last = idx[w - 2];
                if let Some(clast) = solve_last(&partial, &rows[last], &field) {
                    if in_sub(clast) {
                        let mut support_coeffs: Vec<(usize, u64)> = vec![(0usize, 1u64)];
                        for (slot, &d) in digits.iter().enumerate() {
                            support_coeffs.push((idx[slot], units[d]));
                        }
                        support_coeffs.push((last, clast));
                        if exclude_check(&support_coeffs, exclude, &field, n)? {
                            return Ok(Some(w));
                        }
                    }
                }
                // advance coefficient digits
                let mut pos = 0;
                loop {
                    if pos == digits.len() {
                        break 'coeffs;
                    }
                    digits[pos] += 1;
                    if digits[pos] < qm1 {
                        break;
                    }
                    digits[pos] = 0;
                    pos += 1;
                }
            }
            // advance support combination over {1..n-1}
            let m = w - 1;
            let mut i = m;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if idx[i] != i + n - m {
                    break;
                }
            }
            if i == 0 && idx[0] == n - m {
                break;
            }
            idx[i] += 1;
            for j in i + 1..m {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(None)
}

/// Solve partial + c·row = 0 for a single nonzero c over element codes;
/// None when inconsistent or when the forced c is zero (which would lower
/// the weight).
fn solve_last(partial: &[u64], row: &[u64], field: &Field) -> Option<u64> {
    let mut c: Option<u64> = None;
    for j in 0..partial.len() {
        match (partial[j] == 0, row[j] == 0) {
            (true, true) => continue,
            (false, true) => return None,
            _ => {
                let cand = field.mul_codes(field.neg_code(partial[j]), field.inv_code(row[j]));
                match c {
                    None => {
                        if cand == 0 {
                            return None;
                        }
                        c = Some(cand);
                    }
                    Some(prev) => {
                        if prev != cand {
                            return None;
                        }
                    }
                }
            }
        }
    }
    c
}

fn exclude_check(
    support_coeffs: &[(usize, u64)],
    exclude: Option<&ConstacyclicCode>,
    field: &Field,
    n: usize,
) -> Result<bool> {
    match exclude {
        None => Ok(true),
        Some(small) => {
            let mut coeffs = vec![field.zero(); n];
            for &(i, c) in support_coeffs {
                coeffs[i] = field.from_code(c);
            }
            let v = Polynomial::from_coeffs(field, coeffs);
            Ok(!small.contains(&v)?)
        }
    }
}

/// Longest run of consecutive residues mod n in the zero set, counting
/// wrap-around; the induced distance bound is run + 1.
pub fn consecutive_zero_run(zero_set: &[usize], n: usize) -> usize {
    if zero_set.len() >= n {
        return n;
    }
    let in_set: Vec<bool> = {
        let mut v = vec![false; n];
        for &r in zero_set {
            v[r % n] = true;
        }
        v
    };
    let mut best = 0usize;
    let mut cur = 0usize;
    for i in 0..2 * n {
        if in_set[i % n] {
            cur += 1;
            best = best.max(cur.min(n));
        } else {
            cur = 0;
        }
    }
    best
}

// ---------------------------------------------------------------------------
// CSS derivation
// ---------------------------------------------------------------------------

/// A derived CSS quantum code candidate.
#[derive(Clone)]
pub struct CssCandidate {
    pub containment: Containment,
    pub qn: usize,
    pub qk: usize,
    /// The distance figure of the construction: the classical minimum
    /// distance of the larger code (exact when `qd_resolved`), which
    /// lower-bounds the refined d'.
    pub qd_lower: usize,
    /// True when `qd_lower` is the resolved classical distance rather
    /// than a designed-distance bound.
    pub qd_resolved: bool,
    /// Refined d' = min{wt c : c in larger \ smaller} when computed in
    /// budget; always ≥ qd_lower.
    pub qd_exact: Option<usize>,
    /// (n, k, d) of the two classical codes; d may be None when neither
    /// enumeration nor the low-weight search resolved it.
    pub classical: [(usize, usize, Option<usize>); 2],
}

impl CssCandidate {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.qn,
            "k": self.qk,
            "d_lower": self.qd_lower,
            "d_resolved": self.qd_resolved,
            "d_exact": self.qd_exact,
            "containment": self.containment.to_string(),
            "classical": self.classical
                .iter()
                .map(|(n, k, d)| json!({"n": n, "k": k, "d": d}))
                .collect::<Vec<_>>(),
        })
    }

    /// `[[n,k,d]]` with d the larger code's distance when resolved.
    pub fn parameters_text(&self) -> String {
        if self.qd_resolved {
            format!("[[{},{},{}]]", self.qn, self.qk, self.qd_lower)
        } else {
            format!("[[{},{},>={}]]", self.qn, self.qk, self.qd_lower)
        }
    }

    /// Shortfall against the quantum Singleton bound 2d ≤ n - k + 2.
    pub fn mds_gap(&self) -> Option<i64> {
        self.qd_resolved
            .then(|| (self.qn as i64 - self.qk as i64 + 2) - 2 * self.qd_lower as i64)
    }
}

/// Derive the CSS code of a single classical code: weakly-self-dual codes
/// give [[n, n-2k]] (states built on C⊥/C), dual-containing codes give
/// [[n, 2k-n]] (states on C/C⊥). The distance is taken on the larger
/// code, excluding the smaller one when searching exactly.
pub fn derive_css(code: &ConstacyclicCode, budget: u128) -> Result<CssCandidate> {
    let relation = match code.repeated_root() {
        Some(_) => repeated_root_containment(code)?,
        None => containment(code)?,
    };
    let (bigger, smaller, qk) = match relation {
        Containment::WeaklySelfDual | Containment::SelfDual => {
            (code.dual()?, code.clone(), code.n() - 2 * code.k())
        }
        Containment::DualContaining => (code.clone(), code.dual()?, 2 * code.k() - code.n()),
        Containment::None => return Err(Error::ContainmentViolated),
    };
    let designed = designed_distance_bound(&bigger);
    let d_big = resolve_distance(&bigger, None, designed, budget)?;
    let d_small = resolve_distance(&smaller, None, designed_distance_bound(&smaller), budget)?;
    // the d' refinement is optional; keep its search on a short leash
    let refine_budget = budget.min(4_000_000);
    let qd_exact = resolve_distance(
        &bigger,
        Some(&smaller),
        d_big.unwrap_or(designed),
        refine_budget,
    )?;
    let (qd_lower, qd_resolved) = match d_big {
        Some(d) => (d, true),
        None => (designed, false),
    };
    Ok(CssCandidate {
        containment: relation,
        qn: code.n(),
        qk,
        qd_lower,
        qd_resolved,
        qd_exact,
        classical: [
            (
                code.n(),
                code.k(),
                if matches!(relation, Containment::DualContaining) {
                    d_big
                } else {
                    d_small
                },
            ),
            (
                code.n(),
                code.n() - code.k(),
                if matches!(relation, Containment::DualContaining) {
                    d_small
                } else {
                    d_big
                },
            ),
        ],
    })
}

/// CSS pair: requires C₁⊥ ⊆ C₂ (equivalently g₂ | h₁†); yields
/// [[n, k₁ + k₂ - n]] with distance min(d₁, d₂).
pub fn derive_css_pair(
    c1: &ConstacyclicCode,
    c2: &ConstacyclicCode,
    budget: u128,
) -> Result<CssCandidate> {
    if c1.n() != c2.n() || *c1.field() != *c2.field() {
        return Err(Error::FieldMismatch);
    }
    let h1_dagger = c1.dual_generator()?;
    if !c2.generator().divides(&h1_dagger)? {
        return Err(Error::ContainmentViolated);
    }
    let qk = c1.k() + c2.k() - c1.n();
    let b1 = designed_distance_bound(c1);
    let b2 = designed_distance_bound(c2);
    let d1 = resolve_distance(c1, None, b1, budget)?;
    let d2 = resolve_distance(c2, None, b2, budget)?;
    let (qd_lower, qd_resolved) = match (d1, d2) {
        (Some(a), Some(b)) => (a.min(b), true),
        _ => (b1.min(b2), false),
    };
    Ok(CssCandidate {
        containment: Containment::None,
        qn: c1.n(),
        qk,
        qd_lower,
        qd_resolved,
        qd_exact: None,
        classical: [(c1.n(), c1.k(), d1), (c2.n(), c2.k(), d2)],
    })
}

/// BCH-style designed bound: consecutive zero run + 1 for simple-root
/// codes; 1 otherwise (repeated-root bounds come from the search).
fn designed_distance_bound(code: &ConstacyclicCode) -> usize {
    match code.zero_set() {
        Some(zs) => consecutive_zero_run(zs, code.n()) + 1,
        None => 1,
    }
}

/// Exact distance via enumeration when q^k fits the budget, else a
/// low-weight search ramped up from the designed bound.
fn resolve_distance(
    code: &ConstacyclicCode,
    exclude: Option<&ConstacyclicCode>,
    bound_hint: usize,
    budget: u128,
) -> Result<Option<usize>> {
    if exclude.is_none() {
        if let Ok(d) = min_distance_bruteforce(code, budget) {
            return Ok(Some(d));
        }
    }
    let mut wmax = bound_hint.max(2);
    while wmax <= code.n() {
        match min_weight_up_to(code, wmax, exclude, budget) {
            Ok(Some(d)) => return Ok(Some(d)),
            Ok(None) => wmax += 1,
            Err(Error::BudgetExceeded { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// parity-check matrices
// ---------------------------------------------------------------------------

/// H_b: rows ((βξ^{b+j})^i) for j = 0..δ-2, columns i = 0..n-1.
pub fn parity_check_rows(
    plan: &TransformPlan,
    b: usize,
    delta: usize,
) -> Result<Vec<Vec<FieldElement>>> {
    let mut rows = Vec::new();
    for j in 0..delta.saturating_sub(1) {
        let root = plan
            .beta()
            .mul(&plan.xi().pow(((b + j) % plan.n()) as i64)?)?;
        let mut row = Vec::with_capacity(plan.n());
        let mut cur = plan.spec().one();
        for _ in 0..plan.n() {
            row.push(cur.clone());
            cur = cur.mul(&root)?;
        }
        rows.push(row);
    }
    Ok(rows)
}

/// The stacked CSS check matrix over GF(p^k'): X block rows ξ^l·H_{b1},
/// Z block rows ξ^l·H_{b2}, l = 0..k'-1, in block-diagonal layout
/// [X | 0; 0 | Z]. Returns (matrix, x_rows) with the first x_rows rows
/// forming the X block.
pub fn check_matrix_css(
    c1: &ConstacyclicCode,
    c2: &ConstacyclicCode,
) -> Result<(Vec<Vec<FieldElement>>, usize)> {
    let p1 = c1.plan().ok_or(Error::RepeatedRootPlan)?;
    let p2 = c2.plan().ok_or(Error::RepeatedRootPlan)?;
    let (b1, d1) = c1.designed().ok_or(Error::ContainmentViolated)?;
    let (b2, d2) = c2.designed().ok_or(Error::ContainmentViolated)?;
    let field = c1.field().clone();
    let n = c1.n();
    let kprime = field.kprime();
    let h1 = parity_check_rows(p1, b1, d1)?;
    let h2 = parity_check_rows(p2, b2, d2)?;
    let mut matrix = Vec::new();
    let primitive = field.primitive();
    for (h, offset) in [(&h1, 0usize), (&h2, n)] {
        let mut xi_l = field.one();
        for _ in 0..kprime {
            for row in h.iter() {
                let mut full = vec![field.zero(); 2 * n];
                for (i, v) in row.iter().enumerate() {
                    full[offset + i] = xi_l.mul(v)?;
                }
                matrix.push(full);
            }
            xi_l = xi_l.mul(&primitive)?;
        }
    }
    let x_rows = kprime * h1.len();
    Ok((matrix, x_rows))
}

/// Rank of a matrix over the field (Gaussian elimination).
pub fn matrix_rank(rows: &[Vec<FieldElement>]) -> Result<usize> {
    let mut m: Vec<Vec<FieldElement>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return Ok(0);
    }
    let ncols = m[0].len();
    let mut rank = 0usize;
    for col in 0..ncols {
        let pivot = (rank..nrows).find(|&r| !m[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        m.swap(rank, pivot);
        let inv = m[rank][col].inv()?;
        for j in col..ncols {
            m[rank][j] = m[rank][j].mul(&inv)?;
        }
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..ncols {
                    let t = m[r][j].sub(&factor.mul(&m[rank][j])?)?;
                    m[r][j] = t;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldEmbedding, FieldSpec};

    fn gf9() -> Field {
        FieldSpec::build(3, 2, Some(&[2, 2, 1]), 1).unwrap()
    }

    fn gf27() -> Field {
        FieldSpec::build(3, 3, Some(&[1, 2, 0, 1]), 1).unwrap()
    }

    fn gf64() -> Field {
        FieldSpec::build(2, 6, Some(&[1, 1, 0, 1, 1, 0, 1]), 1).unwrap()
    }

    /// GF(27), n = 13, β = -1, ξ = w²; RS-like codes over the field itself.
    fn plan13() -> TransformPlan {
        let f = gf27();
        TransformPlan::new(&f, 13, f.from_int(-1), None).unwrap()
    }

    #[test]
    fn linear_factorization() {
        let plan = plan13();
        let f = plan.spec().clone();
        let factors = factor_xn_minus_lambda(&plan).unwrap();
        assert_eq!(factors.len(), 13);
        // (x + 1)(x + w^2)(x + w^4)...(x + w^24): root of factor r is
        // βξ^r = -w^{2r}, so the constant term is w^{2r}
        for (r, factor) in &factors {
            assert_eq!(factor.coeff(0), f.elem_from_power(2 * *r as i64));
        }
        let product = factors
            .iter()
            .fold(Polynomial::one(&f), |acc, (_, p)| acc.mul(p).unwrap());
        assert_eq!(
            product,
            Polynomial::x_pow_minus(&f, 13, &f.elem_from_power(13))
        );
    }

    #[test]
    fn linear_factorization_gf9() {
        // x^4 - w^4 = (x + w)(x + w^3)(x + w^5)(x + w^7), β = -w
        let f = gf9();
        let plan = TransformPlan::new(&f, 4, f.primitive().neg(), None).unwrap();
        let factors = factor_xn_minus_lambda(&plan).unwrap();
        let constants: Vec<u64> = factors
            .iter()
            .map(|(_, p)| p.coeff(0).discrete_log().unwrap())
            .collect();
        let mut sorted = constants.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 3, 5, 7]);
    }

    #[test]
    fn cyclotomic_coset_structure() {
        // n = 13, q = 27: all singletons, only C_0 symmetric
        let cosets = cyclotomic_cosets(13, 27);
        assert_eq!(cosets.len(), 13);
        assert!(cosets.iter().all(|c| c.members.len() == 1));
        for c in &cosets {
            if c.representative == 0 {
                assert!(c.symmetric);
            } else {
                assert!(!c.symmetric);
                assert_eq!(c.partner, Some(13 - c.representative));
            }
        }
        // n = 5, q = 2: C_0 and C_1 = {1,2,4,3}, both symmetric (the
        // length-20 binary repeated-root code splits over these cosets)
        let cosets = cyclotomic_cosets(5, 2);
        assert_eq!(cosets.len(), 2);
        assert_eq!(cosets[1].members, vec![1, 2, 3, 4]);
        assert!(cosets.iter().all(|c| c.symmetric));
        // partition property, random-ish parameters
        for (n, q) in [(50, 9u64), (21, 4), (15, 2)] {
            let cosets = cyclotomic_cosets(n, q);
            let mut all: Vec<usize> = cosets.iter().flat_map(|c| c.members.clone()).collect();
            all.sort_unstable();
            assert_eq!(all, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn rs_like_code_and_dual() {
        // zero set {0..9} over GF(27) itself: [13,3] with g of degree 10
        let plan = plan13();
        let f = plan.spec().clone();
        let zs: Vec<usize> = (0..10).collect();
        let code = code_from_zero_set(&plan, 3, &zs).unwrap();
        assert_eq!((code.n(), code.k()), (13, 3));
        assert_eq!(code.generator().degree(), Some(10));
        // dual generator (x + w^6)(x + w^4)(x + w^2)
        let expected = [6i64, 4, 2].iter().fold(Polynomial::one(&f), |acc, &e| {
            acc.mul(&Polynomial::from_coeffs(
                &f,
                vec![f.elem_from_power(e), f.one()],
            ))
            .unwrap()
        });
        assert_eq!(code.dual_generator().unwrap(), expected.monic().unwrap());
        let dual = code.dual().unwrap();
        assert_eq!((dual.n(), dual.k()), (13, 10));
        // g·h = x^n - λ
        let gh = code
            .generator()
            .mul(&code.check_polynomial().unwrap())
            .unwrap();
        assert_eq!(gh, Polynomial::x_pow_minus(&f, 13, code.lambda()));
    }

    #[test]
    fn empty_zero_set_is_whole_space() {
        let plan = plan13();
        let code = code_from_zero_set(&plan, 3, &[]).unwrap();
        assert_eq!(code.k(), 13);
        assert!(code.generator().is_one());
        assert!(is_dual_containing(&code).unwrap());
        assert!(!is_weakly_self_dual(&code).unwrap());
    }

    #[test]
    fn gf64_length7_code() {
        // zero set {0,1,2,3}: roots 1, w^9, w^18, w^27 -> [7,3]
        let f = gf64();
        let plan = TransformPlan::new(&f, 7, f.one(), None).unwrap();
        assert_eq!(plan.xi(), &f.elem_from_power(9));
        let code = code_from_zero_set(&plan, 6, &[0, 1, 2, 3]).unwrap();
        assert_eq!((code.n(), code.k()), (7, 3));
        assert!(is_weakly_self_dual(&code).unwrap());
    }

    #[test]
    fn conjugacy_closure_enforced() {
        // over F_3 the residues {0..9} are not conjugacy closed mod 13
        let plan = plan13();
        let zs: Vec<usize> = (0..10).collect();
        assert!(matches!(
            code_from_zero_set(&plan, 1, &zs),
            Err(Error::NotConjugacyClosed)
        ));
        // bch_code closes automatically: run {1,2} over F_3 pulls in the
        // full cosets {1,3,9} and {2,5,6}
        let code = bch_code(&plan, 1, 1, 3).unwrap();
        assert_eq!(code.zero_set().unwrap(), &[1, 2, 3, 5, 6, 9]);
        for c in code.generator().coeffs() {
            assert!(c.in_subfield(1).unwrap());
        }
    }

    #[test]
    fn orthogonality_bruteforce_small() {
        // every codeword of C is orthogonal to every codeword of C⊥
        let f = gf9();
        let plan = TransformPlan::new(&f, 4, f.primitive().neg(), None).unwrap();
        let code = code_from_zero_set(&plan, 2, &[0, 1, 2]).unwrap(); // [4,1]
        let dual = code.dual().unwrap(); // [4,3]
        let words = |c: &ConstacyclicCode| -> Vec<Vec<FieldElement>> {
            let alphabet = c.field().subfield_elements(c.s()).unwrap();
            let mut out = Vec::new();
            let mut digits = vec![0usize; c.k()];
            loop {
                let mut msg = Polynomial::zero(c.field());
                for (i, &d) in digits.iter().enumerate() {
                    msg = msg
                        .add(&Polynomial::monomial(alphabet[d].clone(), i))
                        .unwrap();
                }
                let word = msg.mul(c.generator()).unwrap();
                let mut v = vec![c.field().zero(); c.n()];
                for (i, coeff) in word.coeffs().iter().enumerate() {
                    v[i] = coeff.clone();
                }
                out.push(v);
                let mut pos = 0;
                loop {
                    if pos == c.k() {
                        return out;
                    }
                    digits[pos] += 1;
                    if digits[pos] < alphabet.len() {
                        break;
                    }
                    digits[pos] = 0;
                    pos += 1;
                }
            }
        };
        let cw = words(&code);
        let dw = words(&dual);
        assert_eq!(cw.len() * dw.len(), 9 * 729);
        for c in &cw {
            for d in &dw {
                let mut acc = f.zero();
                for i in 0..4 {
                    acc = acc.add(&c[i].mul(&d[i]).unwrap()).unwrap();
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn containment_verdicts() {
        let plan = plan13();
        // [13,3] with zero set {0..9}: weakly self-dual
        let zs: Vec<usize> = (0..10).collect();
        let code = code_from_zero_set(&plan, 3, &zs).unwrap();
        assert!(is_weakly_self_dual(&code).unwrap());
        assert!(!is_dual_containing(&code).unwrap());
        // [13,9] with zero set residues {9,10,11,12}: dual-containing
        let code = code_from_zero_set(&plan, 3, &[9, 10, 11, 12]).unwrap();
        assert!(is_dual_containing(&code).unwrap());
        assert!(!is_weakly_self_dual(&code).unwrap());
    }

    #[test]
    fn dual_involution() {
        let plan = plan13();
        let code = code_from_zero_set(&plan, 3, &[2, 3, 4, 9, 11]).unwrap();
        let back = code.dual().unwrap().dual().unwrap();
        assert_eq!(back.generator(), code.generator());
        assert_eq!(back.zero_set().unwrap(), code.zero_set().unwrap());
    }

    #[test]
    fn consecutive_runs() {
        assert_eq!(consecutive_zero_run(&[9, 10, 11, 12], 13), 4);
        assert_eq!(consecutive_zero_run(&[], 13), 0);
        let full: Vec<usize> = (0..8).collect();
        assert_eq!(consecutive_zero_run(&full, 8), 8);
        // wrap-around: {12, 0, 1} mod 13 is a run of 3
        assert_eq!(consecutive_zero_run(&[0, 1, 12], 13), 3);
    }

    #[test]
    fn brute_force_distances_small() {
        let plan = plan13();
        let zs: Vec<usize> = (0..10).collect();
        let code = code_from_zero_set(&plan, 3, &zs).unwrap();
        assert_eq!(min_distance_bruteforce(&code, 1 << 20).unwrap(), 11);
        // BCH bound: d ≥ run + 1 = 11
        assert_eq!(consecutive_zero_run(&zs, 13) + 1, 11);
        // budget refusal
        let dual = code.dual().unwrap();
        assert!(matches!(
            min_distance_bruteforce(&dual, 1 << 20),
            Err(Error::BudgetExceeded { .. })
        ));
        // its distance comes from the low-weight search instead
        assert_eq!(
            min_weight_up_to(&dual, 4, None, u128::MAX).unwrap(),
            Some(4)
        );
        assert_eq!(min_weight_up_to(&dual, 3, None, u128::MAX).unwrap(), None);
    }

    #[test]
    fn low_weight_matches_bruteforce() {
        // cross-check both oracles on an enumerable code
        let plan = plan13();
        let code = code_from_zero_set(&plan, 3, &[9, 10, 11, 12]).unwrap(); // [13,9,5]
        assert_eq!(min_weight_up_to(&code, 5, None, 1 << 24).unwrap(), Some(5));
        assert_eq!(min_weight_up_to(&code, 4, None, 1 << 24).unwrap(), None);
        let dual = code.dual().unwrap(); // [13,4,10], enumerable: 27^4
        let exact = min_distance_bruteforce(&dual, 1 << 21).unwrap();
        assert_eq!(exact, 10);
        // the support search confirms nothing lighter than the bound and
        // bails out by budget rather than scanning high weights
        assert_eq!(min_weight_up_to(&dual, 4, None, 1 << 24).unwrap(), None);
        assert!(matches!(
            min_weight_up_to(&dual, 9, None, 1 << 16),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn css_from_weakly_self_dual() {
        let plan = plan13();
        let zs: Vec<usize> = (0..10).collect();
        let code = code_from_zero_set(&plan, 3, &zs).unwrap();
        let css = derive_css(&code, 1 << 25).unwrap();
        assert_eq!((css.qn, css.qk), (13, 7));
        assert_eq!(css.qd_exact, Some(4));
        assert_eq!(css.parameters_text(), "[[13,7,4]]");
        // MDS: 2d = n - k + 2
        assert_eq!(css.mds_gap(), Some(0));
        // dimension arithmetic: |C⊥| / |C| = 27^7
        assert_eq!(css.qk, code.dual().unwrap().k() - code.k());
    }

    #[test]
    fn css_from_dual_containing() {
        let plan = plan13();
        let code = code_from_zero_set(&plan, 3, &[9, 10, 11, 12]).unwrap();
        let css = derive_css(&code, 1 << 25).unwrap();
        assert_eq!(css.parameters_text(), "[[13,5,5]]");
        assert_eq!(css.qd_lower, 5);
    }

    #[test]
    fn css_gf64() {
        let f = gf64();
        let plan = TransformPlan::new(&f, 7, f.one(), None).unwrap();
        let code = code_from_zero_set(&plan, 6, &[0, 1, 2, 3]).unwrap();
        let css = derive_css(&code, 1 << 25).unwrap();
        assert_eq!(css.parameters_text(), "[[7,1,4]]");
    }

    #[test]
    fn css_dimension_by_coset_counting() {
        // [4,1] ⊆ [4,3] over GF(9): the quotient has q^qk cosets
        let f = gf9();
        let plan = TransformPlan::new(&f, 4, f.primitive().neg(), None).unwrap();
        let code = code_from_zero_set(&plan, 2, &[0, 1, 2]).unwrap();
        let css = derive_css(&code, 1 << 20).unwrap();
        assert_eq!(css.qk, 2);
        let dual = code.dual().unwrap();
        let enumerate = |c: &ConstacyclicCode| -> Vec<Vec<u64>> {
            let alphabet = c.field().subfield_elements(c.s()).unwrap();
            let mut out = Vec::new();
            let mut digits = vec![0usize; c.k()];
            loop {
                let mut msg = Polynomial::zero(c.field());
                for (i, &d) in digits.iter().enumerate() {
                    msg = msg
                        .add(&Polynomial::monomial(alphabet[d].clone(), i))
                        .unwrap();
                }
                let word = msg.mul(c.generator()).unwrap();
                let mut v = vec![0u64; c.n()];
                for (i, coeff) in word.coeffs().iter().enumerate() {
                    v[i] = coeff.code();
                }
                out.push(v);
                let mut pos = 0;
                loop {
                    if pos == c.k() {
                        return out;
                    }
                    digits[pos] += 1;
                    if digits[pos] < alphabet.len() {
                        break;
                    }
                    digits[pos] = 0;
                    pos += 1;
                }
            }
        };
        let small: Vec<Vec<u64>> = enumerate(&code);
        let big = enumerate(&dual);
        // canonical label of v + C: the lexicographically smallest member
        let mut labels = std::collections::HashSet::new();
        for w in &big {
            let mut best: Option<Vec<u64>> = None;
            for c in &small {
                let shifted: Vec<u64> = w.iter().zip(c).map(|(&a, &b)| f.add_codes(a, b)).collect();
                if best.as_ref().is_none_or(|cur| shifted < *cur) {
                    best = Some(shifted);
                }
            }
            labels.insert(best.unwrap());
        }
        let q = 9u64;
        assert_eq!(labels.len() as u64, q.pow(css.qk as u32));
    }

    #[test]
    fn css_pair_matches_single() {
        let plan = plan13();
        let zs: Vec<usize> = (0..10).collect();
        let code = code_from_zero_set(&plan, 3, &zs).unwrap();
        let dual = code.dual().unwrap();
        // pair (C⊥, C⊥) satisfies C⊥⊥ = C ⊆ C⊥
        let css = derive_css_pair(&dual, &dual, 1 << 25).unwrap();
        assert_eq!((css.qn, css.qk), (13, 7));
    }

    #[test]
    fn containment_violated_detected() {
        let plan = plan13();
        // zero set {0..5} gives neither containment: the common-index dual
        // zero set is {1..7}, incomparable with {0..5}
        let zs: Vec<usize> = (0..6).collect();
        let code = code_from_zero_set(&plan, 3, &zs).unwrap();
        assert_eq!(containment(&code).unwrap(), Containment::None);
        assert!(matches!(
            derive_css(&code, 1 << 20),
            Err(Error::ContainmentViolated)
        ));
    }

    #[test]
    fn repeated_root_example_117() {
        // x^117 - w^13 = (x^13 - w^13)^9 over GF(27)
        let f = gf27();
        let lambda = f.elem_from_power(13);
        let spec = RepeatedRootSpec::new(&f, 13, 2, &lambda, 3).unwrap();
        assert_eq!(spec.p_eta(), 9);
        assert_eq!(spec.length(), 117);
        // product of M_r^{p^η} reconstructs x^L - λ
        let mut product = Polynomial::one(&f);
        for mp in spec.min_polys() {
            product = product.mul(&mp.pow(9).unwrap()).unwrap();
        }
        assert_eq!(product, Polynomial::x_pow_minus(&f, 117, &lambda));
        // all multiplicities 5: [117, 52]
        let exps: Vec<(usize, usize)> = (0..13).map(|r| (r, 5)).collect();
        let code = repeated_root_code(&spec, &exps).unwrap();
        assert_eq!((code.n(), code.k()), (117, 52));
        assert_eq!(
            repeated_root_containment(&code).unwrap(),
            Containment::WeaklySelfDual
        );
        // dual has parameters [117, 65]
        assert_eq!(code.dual().unwrap().k(), 65);
        // all multiplicities zero: whole space
        let whole = repeated_root_code(&spec, &[]).unwrap();
        assert_eq!(whole.k(), 117);
    }

    #[test]
    fn repeated_root_example_24() {
        // x^24 - 2 = (x^8 - 2)^3 over GF(81); generator cubes six of the
        // eight linear factors -> [24, 6]
        let f = FieldSpec::build(3, 4, None, 4).unwrap();
        let lambda = f.from_int(2);
        let spec = RepeatedRootSpec::new(&f, 8, 1, &lambda, 4).unwrap();
        assert_eq!(spec.p_eta(), 3);
        assert_eq!(spec.cosets().len(), 8);
        // roots are β₀ξ^j; the held-out pair sits at ξ-exponents 3 and 7
        // (the w^35 and w^75 roots under β₀ = w^5, ξ = w^10)
        // held-out roots are the w^35 and w^75 ones: with β₀ = w^5 and
        // ξ = w^10 those sit at ξ-exponents 3 and 7, which is not a dual
        // pair (σ(3) = 4, σ(7) = 0), so the reciprocal roots stay inside g
        let exps: Vec<(usize, usize)> = (0..8)
            .filter(|&r| r != 3 && r != 7)
            .map(|r| (r, 3))
            .collect();
        let code = repeated_root_code(&spec, &exps).unwrap();
        assert_eq!((code.n(), code.k()), (24, 6));
        assert_eq!(
            repeated_root_containment(&code).unwrap(),
            Containment::WeaklySelfDual
        );
        assert_eq!(code.dual().unwrap().k(), 18);
        // excluding a genuine dual pair instead loses the containment
        let c = spec.dual_pair_offset().unwrap();
        let bad: Vec<(usize, usize)> = (0..8)
            .filter(|&r| r != 3 && r != (c + 8 - 3) % 8)
            .map(|r| (r, 3))
            .collect();
        let bad_code = repeated_root_code(&spec, &bad).unwrap();
        assert_eq!(
            repeated_root_containment(&bad_code).unwrap(),
            Containment::None
        );
    }

    #[test]
    fn repeated_root_example_20() {
        // x^20 - 1 = (x^5 - 1)^4 over F_2 inside GF(16)
        let f = FieldSpec::build(2, 4, None, 1).unwrap();
        let spec = RepeatedRootSpec::new(&f, 5, 2, &f.one(), 1).unwrap();
        assert_eq!(spec.p_eta(), 4);
        assert_eq!(spec.length(), 20);
        assert_eq!(spec.cosets().len(), 2);
        // g = (x+1)^3 (x^4+x^3+x^2+x+1)^3: [20, 5]
        let exps: Vec<(usize, usize)> = vec![(0, 3), (1, 3)];
        let code = repeated_root_code(&spec, &exps).unwrap();
        assert_eq!((code.n(), code.k()), (20, 5));
        assert_eq!(
            repeated_root_containment(&code).unwrap(),
            Containment::WeaklySelfDual
        );
        // h† = h = (x+1)(x^4+x^3+x^2+x+1)
        let h = code.check_polynomial().unwrap();
        assert_eq!(code.dual_generator().unwrap(), h.monic().unwrap());
    }

    #[test]
    fn repeated_root_self_dual_boundary() {
        // p = 2, all multiplicities exactly p^η/2: both containments hold
        let f = FieldSpec::build(2, 4, None, 1).unwrap();
        let spec = RepeatedRootSpec::new(&f, 5, 2, &f.one(), 1).unwrap();
        let exps: Vec<(usize, usize)> = vec![(0, 2), (1, 2)];
        let code = repeated_root_code(&spec, &exps).unwrap();
        assert_eq!(
            repeated_root_containment(&code).unwrap(),
            Containment::SelfDual
        );
    }

    #[test]
    fn example1_subfield_factorization() {
        // x^50 - w^5 over GF(9): five quadratics and four degree-10
        // irreducible factors, computed in the splitting field GF(3^20)
        let small = gf9();
        let big = FieldSpec::build(3, 20, None, 2).unwrap();
        let emb = FieldEmbedding::new(&small, &big).unwrap();
        let lambda = emb.embed(&small.elem_from_power(5)).unwrap();
        let plan = TransformPlan::from_lambda(&big, 50, &lambda).unwrap();
        let factors = factor_over_subfield(&plan, 2).unwrap();
        let degrees: Vec<usize> = factors.iter().map(|f| f.degree().unwrap()).collect();
        assert_eq!(degrees, vec![2, 2, 2, 2, 2, 10, 10, 10, 10]);
        let product = factors
            .iter()
            .fold(Polynomial::one(&big), |acc, p| acc.mul(p).unwrap());
        assert_eq!(product, Polynomial::x_pow_minus(&big, 50, &lambda));
        for f in &factors {
            for c in f.coeffs() {
                assert!(c.in_subfield(2).unwrap());
            }
        }
        // cyclic case: (x+1)(x+2), four quadratics, four degree-10s
        let plan = TransformPlan::from_lambda(&big, 50, &big.one()).unwrap();
        let factors = factor_over_subfield(&plan, 2).unwrap();
        let degrees: Vec<usize> = factors.iter().map(|f| f.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 2, 2, 2, 2, 10, 10, 10, 10]);
    }

    #[test]
    fn check_matrix_structure() {
        let plan = plan13();
        let c1 = bch_code(&plan, 3, 1, 3).unwrap();
        let c2 = bch_code(&plan, 3, 1, 3).unwrap();
        let f = plan.spec().clone();
        let (matrix, x_rows) = check_matrix_css(&c1, &c2).unwrap();
        assert_eq!(matrix.len(), 2 * 3 * 2); // 2 blocks × k'=3 × (δ-1)=2
        assert_eq!(x_rows, 6);
        // block-diagonal: X rows vanish on the right half and vice versa
        for (i, row) in matrix.iter().enumerate() {
            let (live, dead) = if i < x_rows {
                (&row[..13], &row[13..])
            } else {
                (&row[13..], &row[..13])
            };
            assert!(dead.iter().all(FieldElement::is_zero));
            assert!(live.iter().any(|x| !x.is_zero()));
        }
        // b = 1 reduces H_b to H: first row is ((βξ)^i)
        let h = parity_check_rows(&plan, 1, 3).unwrap();
        let bxi = plan.beta().mul(plan.xi()).unwrap();
        for (i, v) in h[0].iter().enumerate() {
            assert_eq!(*v, bxi.pow(i as i64).unwrap());
        }
        // symplectic orthogonality: every X-block row is orthogonal to
        // every Z-block row on the shared n coordinates (H2·H1ᵀ = 0)
        for x_row in &matrix[..x_rows] {
            for z_row in &matrix[x_rows..] {
                let mut acc = f.zero();
                for g in 0..13 {
                    acc = acc.add(&x_row[g].mul(&z_row[13 + g]).unwrap()).unwrap();
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn vandermonde_rank_and_syndrome_orthogonality() {
        // any δ-1 columns of H_b are linearly independent (n ≤ 16)
        let f = gf9();
        let plan = TransformPlan::new(&f, 8, f.one(), None).unwrap();
        let rows = parity_check_rows(&plan, 1, 4).unwrap(); // 3 rows, n=8
        for a in 0..8usize {
            for b in (a + 1)..8 {
                for c in (b + 1)..8 {
                    let sub: Vec<Vec<FieldElement>> = rows
                        .iter()
                        .map(|row| vec![row[a].clone(), row[b].clone(), row[c].clone()])
                        .collect();
                    assert_eq!(matrix_rank(&sub).unwrap(), 3);
                }
            }
        }
        // H·cᵀ = 0 for codewords of the matching BCH code
        let code = bch_code(&plan, 2, 1, 4).unwrap();
        let alphabet = f.subfield_elements(2).unwrap();
        for mcode in 0..81u64 {
            let m0 = &alphabet[(mcode % 9) as usize];
            let m1 = &alphabet[(mcode / 9) as usize];
            let msg = Polynomial::from_coeffs(&f, vec![m0.clone(), m1.clone()]);
            let word = msg.mul(code.generator()).unwrap();
            for row in &rows {
                let mut acc = f.zero();
                for (i, coeff) in word.coeffs().iter().enumerate() {
                    acc = acc.add(&coeff.mul(&row[i]).unwrap()).unwrap();
                }
                assert!(acc.is_zero());
            }
        }
    }
}
