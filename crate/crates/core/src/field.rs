//! Exact arithmetic in GF(p^k') with a designated subfield GF(p^s).
//!
//! Elements are stored as polynomial-basis coefficient vectors over F_p
//! (constant term first) modulo a monic irreducible polynomial of degree
//! k'. Every element also admits an integer code Σ c_i p^i used for log
//! tables and basis indexing in the quantum simulator. Log/antilog tables
//! are built eagerly when the field has at most 2^20 elements; larger
//! fields fall back to baby-step giant-step discrete logs.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Threshold below which full log/antilog tables are precomputed.
const LOG_TABLE_LIMIT: u64 = 1 << 20;

/// Shared handle to a field specification.
pub type Field = Arc<FieldSpec>;

/// JSON mirror of a field descriptor.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub p: u64,
    pub kprime: usize,
    pub modulus: Vec<u64>,
    pub s: usize,
}

/// GF(p^k') = F_p[x]/<modulus>, with subfield GF(p^s), s | k'.
pub struct FieldSpec {
    p: u64,
    kprime: usize,
    s: usize,
    /// Monic irreducible over F_p, constant term first, length kprime+1.
    modulus: Vec<u64>,
    /// Coefficients of the primitive element.
    primitive: Vec<u64>,
    /// p^k' - 1.
    order: u64,
    /// Prime factorization of `order` (distinct primes).
    order_primes: Vec<u64>,
    /// antilog[k] = integer code of w^k, present for small fields.
    antilog: Option<Vec<u64>>,
    /// log[code] = k with antilog[k] = code; log[0] unused.
    log: Option<Vec<u32>>,
    /// add_table[a*size + b] = code of a + b, for fields of ≤ 1024 elements.
    add_table: Option<Vec<u32>>,
    mul_count: AtomicU64,
    add_count: AtomicU64,
    counting: AtomicBool,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor_text())
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.kprime == other.kprime
            && self.s == other.s
            && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// An element of a field spec: length-k' coefficient vector over F_p.
#[derive(Clone)]
pub struct FieldElement {
    owner: Field,
    coeffs: Vec<u64>,
}

// ---------------------------------------------------------------------------
// prime-field polynomial helpers used during construction
// ---------------------------------------------------------------------------

fn pf_norm(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
}

fn pf_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    // m monic
    let mut r: Vec<u64> = a.to_vec();
    pf_norm(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for i in 0..=dm {
                let idx = shift + i;
                let sub = (lead as u128 * m[i] as u128 % p as u128) as u64;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
    }
    pf_norm(&mut r);
    r
}

fn pf_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            let t = prod[i + j] as u128 + ai as u128 * bj as u128;
            prod[i + j] = (t % p as u128) as u64;
        }
    }
    pf_rem(&prod, m, p)
}

fn pf_powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut base = pf_rem(a, m, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = pf_mulmod(&acc, &base, m, p);
        }
        base = pf_mulmod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

fn pf_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    pf_norm(&mut x);
    pf_norm(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        // make y monic for pf_rem
        let lead = *y.last().unwrap();
        let inv = mod_inv(lead, p);
        let monic: Vec<u64> = y
            .iter()
            .map(|&c| (c as u128 * inv as u128 % p as u128) as u64)
            .collect();
        let r = pf_rem(&x, &monic, p);
        x = y;
        y = r;
    }
    x
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn mod_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    a %= p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * a as u128 % p as u128) as u64;
        }
        a = (a as u128 * a as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Irreducibility over F_p by the x^{p^j} - x criterion.
fn pf_is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // x^{p^d} mod f must equal x
    let mut xp = x.clone();
    for _ in 0..d {
        xp = pf_powmod(&xp, p, f, p);
    }
    let mut diff = xp.clone();
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    pf_norm(&mut diff);
    if !(diff.len() == 1 && diff[0] == 0) {
        return false;
    }
    // gcd(x^{p^{d/l}} - x, f) = 1 for every prime l | d
    for l in prime_factors(d as u64) {
        let e = d / l as usize;
        let mut xe = x.clone();
        for _ in 0..e {
            xe = pf_powmod(&xe, p, f, p);
        }
        let mut diff = xe;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        pf_norm(&mut diff);
        let g = pf_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// integer factorization (trial division + Miller-Rabin + Pollard rho)
// ---------------------------------------------------------------------------

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let d = n - 1;
    let r = d.trailing_zeros();
    let d = d >> r;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
        let mut x = 2u64;
        let mut y = 2u64;
        loop {
            x = f(x);
            y = f(f(y));
            if x == y {
                break; // cycle without a factor; retry with a new offset
            }
            let d = gcd_u64(x.abs_diff(y), n);
            if d > 1 && d < n {
                return d;
            }
        }
        c += 1;
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Distinct prime factors of n.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in 2u64.. {
        if p * p > n || p > 100_000 {
            break;
        }
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m <= 1 {
            continue;
        }
        if is_prime_u64(m) {
            if !out.contains(&m) {
                out.push(m);
            }
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    out.sort_unstable();
    out
}

// ---------------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------------

impl FieldSpec {
    /// Rebuild a field from its JSON-mirror descriptor.
    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Field> {
        FieldSpec::build(d.p, d.kprime, Some(&d.modulus), d.s)
    }

    /// Build GF(p^k') with designated subfield GF(p^s). `modulus` is a
    /// constant-first coefficient list of length k'+1, or `None` for the
    /// lexicographically smallest monic irreducible of degree k'.
    pub fn build(p: u64, kprime: usize, modulus: Option<&[u64]>, s: usize) -> Result<Field> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if kprime == 0 || s == 0 || kprime % s != 0 {
            return Err(Error::NoSuchSubfield { s, kprime });
        }
        // keep p^k' within u64 element codes
        let mut size = 1u128;
        for _ in 0..kprime {
            size *= p as u128;
            if size > (1u128 << 62) {
                return Err(Error::Parse(format!("field p^k' = {p}^{kprime} too large")));
            }
        }
        let modulus: Vec<u64> = match modulus {
            Some(m) => {
                if m.len() != kprime + 1 || m[kprime] != 1 {
                    return Err(Error::Parse("modulus must be monic of degree k'".into()));
                }
                let m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                if !pf_is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus);
                }
                m
            }
            None => Self::smallest_irreducible(p, kprime),
        };
        let order = (size - 1) as u64;
        let order_primes = prime_factors(order);
        let mut spec = FieldSpec {
            p,
            kprime,
            s,
            modulus,
            primitive: vec![0; kprime],
            order,
            order_primes,
            antilog: None,
            log: None,
            add_table: None,
            mul_count: AtomicU64::new(0),
            add_count: AtomicU64::new(0),
            counting: AtomicBool::new(false),
        };
        spec.primitive = spec.find_primitive();
        if size as u64 <= LOG_TABLE_LIMIT {
            spec.build_log_tables();
        }
        if size as u64 <= 1024 {
            spec.build_add_table();
        }
        Ok(Arc::new(spec))
    }

    fn smallest_irreducible(p: u64, d: usize) -> Vec<u64> {
        if d == 1 {
            return vec![0, 1]; // F_p[x]/<x> = F_p
        }
        // lexicographic on (c0, c1, ..., c_{d-1}), constant term first;
        // c0 = 0 is divisible by x, so the scan starts at c0 = 1
        let mut coeffs = vec![0u64; d];
        coeffs[0] = 1;
        loop {
            let mut f: Vec<u64> = coeffs.clone();
            f.push(1);
            if pf_is_irreducible(&f, p) {
                return f;
            }
            // increment last position fastest so c0 orders first
            let mut i = d;
            loop {
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                assert!(i > 0, "no irreducible of degree {d} over F_{p}");
            }
        }
    }

    fn find_primitive(&self) -> Vec<u64> {
        // prefer the class of x so printed powers w^k match the fields the
        // literature fixes via a primitive modulus
        if self.kprime > 1 {
            let mut x = vec![0u64; self.kprime];
            x[1] = 1;
            if self.coeffs_have_full_order(&x) {
                return x;
            }
        }
        let mut code = 1u64;
        loop {
            let cand = self.coeffs_from_code(code);
            if self.coeffs_have_full_order(&cand) {
                return cand;
            }
            code += 1;
            assert!(code <= self.order, "no primitive element found");
        }
    }

    fn coeffs_have_full_order(&self, coeffs: &[u64]) -> bool {
        if coeffs.iter().all(|&c| c == 0) {
            return false;
        }
        for &l in &self.order_primes {
            let e = self.order / l;
            if self
                .raw_pow(coeffs, e)
                .iter()
                .enumerate()
                .all(|(i, &c)| (i == 0 && c == 1) || (i != 0 && c == 0))
            {
                return false;
            }
        }
        true
    }

    fn raw_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = pf_mulmod(a, b, &self.modulus, self.p);
        out.resize(self.kprime.max(1), 0);
        out
    }

    fn raw_pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = vec![0u64; self.kprime.max(1)];
        acc[0] = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(&acc, &base);
            }
            base = self.raw_mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn build_log_tables(&mut self) {
        let size = self.order + 1;
        let mut antilog = Vec::with_capacity(self.order as usize);
        let mut log = vec![u32::MAX; size as usize];
        let mut cur = vec![0u64; self.kprime.max(1)];
        cur[0] = 1;
        for k in 0..self.order {
            let code = self.code_of(&cur);
            antilog.push(code);
            log[code as usize] = k as u32;
            cur = self.raw_mul(&cur, &self.primitive);
        }
        self.antilog = Some(antilog);
        self.log = Some(log);
    }

    fn build_add_table(&mut self) {
        let size = self.size() as usize;
        let mut table = vec![0u32; size * size];
        for a in 0..size as u64 {
            let ca = self.coeffs_from_code(a);
            for b in 0..size as u64 {
                let cb = self.coeffs_from_code(b);
                let sum: Vec<u64> = ca
                    .iter()
                    .zip(&cb)
                    .map(|(&x, &y)| (x + y) % self.p)
                    .collect();
                table[(a as usize) * size + b as usize] = self.code_of(&sum) as u32;
            }
        }
        self.add_table = Some(table);
    }

    // -- allocation-free arithmetic on element codes --------------------------
    //
    // These skip the instrumentation counters; the decoder's counted path
    // goes through FieldElement. They exist for the enumeration-heavy
    // searches and the simulator's permutation builders.

    /// Code of a + b.
    #[inline]
    pub fn add_codes(&self, a: u64, b: u64) -> u64 {
        if let Some(table) = &self.add_table {
            return table[(a * self.size() + b) as usize] as u64;
        }
        let mut out = 0u64;
        let mut mult = 1u64;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.kprime.max(1) {
            let digit = (a % self.p + b % self.p) % self.p;
            out += digit * mult;
            mult *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    /// Code of -a.
    #[inline]
    pub fn neg_code(&self, a: u64) -> u64 {
        let mut out = 0u64;
        let mut mult = 1u64;
        let mut a = a;
        for _ in 0..self.kprime.max(1) {
            let digit = (self.p - a % self.p) % self.p;
            out += digit * mult;
            mult *= self.p;
            a /= self.p;
        }
        out
    }

    /// Code of a · b.
    #[inline]
    pub fn mul_codes(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let (Some(log), Some(antilog)) = (&self.log, &self.antilog) {
            let k = (log[a as usize] as u64 + log[b as usize] as u64) % self.order;
            return antilog[k as usize];
        }
        let ca = self.coeffs_from_code(a);
        let cb = self.coeffs_from_code(b);
        self.code_of(&self.raw_mul(&ca, &cb))
    }

    /// Code of a⁻¹ (a must be nonzero).
    #[inline]
    pub fn inv_code(&self, a: u64) -> u64 {
        debug_assert_ne!(a, 0);
        if let (Some(log), Some(antilog)) = (&self.log, &self.antilog) {
            let k = (self.order - log[a as usize] as u64) % self.order;
            return antilog[k as usize];
        }
        let ca = self.coeffs_from_code(a);
        self.code_of(&self.raw_pow(&ca, self.order - 1))
    }

    fn code_of(&self, coeffs: &[u64]) -> u64 {
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            code = code * self.p + c;
        }
        code
    }

    fn coeffs_from_code(&self, mut code: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.kprime.max(1)];
        for c in out.iter_mut() {
            *c = code % self.p;
            code /= self.p;
        }
        out
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn kprime(&self) -> usize {
        self.kprime
    }

    /// Designated subfield degree s (alphabet GF(p^s)).
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements p^k'.
    pub fn size(&self) -> u64 {
        self.order + 1
    }

    /// Multiplicative group order p^k' - 1.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            kprime: self.kprime,
            modulus: self.modulus.clone(),
            s: self.s,
        }
    }

    /// `GF(p^k'; modulus=c0,...,ck'; s=s)`
    pub fn descriptor_text(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!(
            "GF({}^{}; modulus={}; s={})",
            self.p,
            self.kprime,
            coeffs.join(","),
            self.s
        )
    }

    // -- counters -----------------------------------------------------------

    /// Enable or disable the arithmetic counters and reset them.
    pub fn set_counting(&self, on: bool) {
        self.mul_count.store(0, Ordering::Relaxed);
        self.add_count.store(0, Ordering::Relaxed);
        self.counting.store(on, Ordering::Relaxed);
    }

    /// (multiplications, additions) recorded since the last reset.
    pub fn counts(&self) -> (u64, u64) {
        (
            self.mul_count.load(Ordering::Relaxed),
            self.add_count.load(Ordering::Relaxed),
        )
    }

    #[inline]
    fn tick_mul(&self) {
        if self.counting.load(Ordering::Relaxed) {
            self.mul_count.fetch_add(1, Ordering::Relaxed);
        }
    }

    #[inline]
    fn tick_add(&self) {
        if self.counting.load(Ordering::Relaxed) {
            self.add_count.fetch_add(1, Ordering::Relaxed);
        }
    }
}

// ---------------------------------------------------------------------------
// element constructors on the Field handle
// ---------------------------------------------------------------------------

/// Element construction helpers; all take the shared spec handle.
pub trait FieldOps {
    fn zero(&self) -> FieldElement;
    fn one(&self) -> FieldElement;
    /// Constant from the prime subfield.
    fn from_int(&self, c: i64) -> FieldElement;
    fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement;
    fn from_code(&self, code: u64) -> FieldElement;
    /// w^k (k may be negative).
    fn elem_from_power(&self, k: i64) -> FieldElement;
    /// The stored primitive element w.
    fn primitive(&self) -> FieldElement;
    /// Parse `w^k`, `w`, `0`, `1`, `-1`, decimal constants, or `c0,c1,..`.
    fn parse_element(&self, text: &str) -> Result<FieldElement>;
    /// All field elements in code order (0, 1, 2, ...).
    fn elements(&self) -> Vec<FieldElement>;
    /// The p^s elements of the subfield GF(p^s): zero, then ascending
    /// powers of the subfield generator w^((p^k'-1)/(p^s-1)).
    fn subfield_elements(&self, s: usize) -> Result<Vec<FieldElement>>;
}

impl FieldOps for Field {
    fn zero(&self) -> FieldElement {
        FieldElement {
            owner: self.clone(),
            coeffs: vec![0; self.kprime.max(1)],
        }
    }

    fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    fn from_int(&self, c: i64) -> FieldElement {
        let p = self.p as i64;
        let c = ((c % p) + p) % p;
        let mut coeffs = vec![0; self.kprime.max(1)];
        coeffs[0] = c as u64;
        FieldElement {
            owner: self.clone(),
            coeffs,
        }
    }

    fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        let mut v: Vec<u64> = coeffs.iter().map(|&c| c % self.p).collect();
        v.resize(self.kprime.max(1), 0);
        FieldElement {
            owner: self.clone(),
            coeffs: v,
        }
    }

    fn from_code(&self, code: u64) -> FieldElement {
        FieldElement {
            owner: self.clone(),
            coeffs: self.coeffs_from_code(code),
        }
    }

    fn elem_from_power(&self, k: i64) -> FieldElement {
        let order = self.order as i64;
        let k = ((k % order) + order) % order;
        if let Some(antilog) = &self.antilog {
            return self.from_code(antilog[k as usize]);
        }
        FieldElement {
            owner: self.clone(),
            coeffs: self.raw_pow(&self.primitive, k as u64),
        }
    }

    fn primitive(&self) -> FieldElement {
        FieldElement {
            owner: self.clone(),
            coeffs: self.primitive.clone(),
        }
    }

    fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let t = text.trim();
        if let Some(rest) = t.strip_prefix('-') {
            if rest.starts_with('w') {
                return Ok(self.parse_element(rest)?.neg());
            }
        }
        if let Some(rest) = t.strip_prefix("w^") {
            let k: i64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {t:?}")))?;
            return Ok(self.elem_from_power(k));
        }
        if t == "w" {
            return Ok(self.elem_from_power(1));
        }
        if t.contains(',') {
            let coeffs: Vec<u64> = t
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad coefficient in {t:?}")))
                })
                .collect::<Result<_>>()?;
            return Ok(self.from_coeffs(&coeffs));
        }
        let v: i64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("unrecognized element {t:?}")))?;
        Ok(self.from_int(v))
    }

    fn elements(&self) -> Vec<FieldElement> {
        (0..self.size()).map(|c| self.from_code(c)).collect()
    }

    fn subfield_elements(&self, s: usize) -> Result<Vec<FieldElement>> {
        if s == 0 || self.kprime() % s != 0 {
            return Err(Error::NoSuchSubfield {
                s,
                kprime: self.kprime(),
            });
        }
        let mut q = 1u64;
        for _ in 0..s {
            q *= self.p();
        }
        let step = (self.order() / (q - 1)) as i64;
        let mut out = Vec::with_capacity(q as usize);
        out.push(self.zero());
        for j in 0..(q - 1) as i64 {
            out.push(self.elem_from_power(j * step));
        }
        Ok(out)
    }
}

/// A field homomorphism GF(p^s) -> GF(p^k') determined by sending the
/// small field's generator class-of-x to a root of the small modulus
/// inside the big field. The root with smallest discrete log is chosen so
/// the embedding is deterministic.
pub struct FieldEmbedding {
    small: Field,
    big: Field,
    root: FieldElement,
    /// big-element code -> small-element code, for projecting back
    reverse: std::collections::HashMap<u64, u64>,
}

impl FieldEmbedding {
    pub fn new(small: &Field, big: &Field) -> Result<FieldEmbedding> {
        if small.p() != big.p() || big.kprime() % small.kprime() != 0 {
            return Err(Error::NoSuchSubfield {
                s: small.kprime(),
                kprime: big.kprime(),
            });
        }
        if small.size() > (1 << 16) {
            return Err(Error::Parse(
                "embedding table for subfields over 2^16 elements".into(),
            ));
        }
        // the subfield's multiplicative group is generated by W^step
        let step = big.order() / (small.size() - 1);
        let modulus: Vec<FieldElement> = small
            .modulus()
            .iter()
            .map(|&c| big.from_int(c as i64))
            .collect();
        let mut root = None;
        for j in 0..(small.size() - 1) {
            let cand = big.elem_from_power((j * step) as i64);
            // Horner evaluation of the small modulus at cand
            let mut acc = big.zero();
            for c in modulus.iter().rev() {
                acc = acc.mul(&cand)?.add(c)?;
            }
            if acc.is_zero() {
                root = Some(cand);
                break;
            }
        }
        let root = root.ok_or(Error::ReducibleModulus)?;
        let mut embedding = FieldEmbedding {
            small: small.clone(),
            big: big.clone(),
            root,
            reverse: std::collections::HashMap::new(),
        };
        let mut reverse = std::collections::HashMap::with_capacity(small.size() as usize);
        for code in 0..small.size() {
            let img = embedding.embed(&small.from_code(code))?;
            reverse.insert(img.code(), code);
        }
        embedding.reverse = reverse;
        Ok(embedding)
    }

    pub fn small(&self) -> &Field {
        &self.small
    }

    pub fn big(&self) -> &Field {
        &self.big
    }

    pub fn embed(&self, a: &FieldElement) -> Result<FieldElement> {
        let mut acc = self.big.zero();
        for &c in a.coeffs().iter().rev() {
            acc = acc.mul(&self.root)?.add(&self.big.from_int(c as i64))?;
        }
        Ok(acc)
    }

    /// Inverse of `embed`; errors if the element is outside the image.
    pub fn project(&self, a: &FieldElement) -> Result<FieldElement> {
        match self.reverse.get(&a.code()) {
            Some(&code) => Ok(self.small.from_code(code)),
            None => Err(Error::NoSuchSubfield {
                s: self.small.kprime(),
                kprime: self.big.kprime(),
            }),
        }
    }
}

/// Parse a field descriptor: `GF(27;1,2,0,1;s=1)`,
/// `GF(3^3; modulus=1,2,0,1; s=1)`, or `GF(9)` (auto modulus, s=1).
pub fn parse_field_descriptor(text: &str) -> Result<Field> {
    let t = text.trim();
    let inner = t
        .strip_prefix("GF(")
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected GF(...), got {t:?}")))?;
    let parts: Vec<&str> = inner.split(';').map(str::trim).collect();
    let (p, kprime) = parse_size(parts[0])?;
    let mut modulus: Option<Vec<u64>> = None;
    let mut s = 1usize;
    for part in &parts[1..] {
        if let Some(rest) = part.strip_prefix("s=") {
            s = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad s in {t:?}")))?;
        } else {
            let rest = part.strip_prefix("modulus=").unwrap_or(part);
            let coeffs: Vec<u64> = rest
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad modulus in {t:?}")))
                })
                .collect::<Result<_>>()?;
            modulus = Some(coeffs);
        }
    }
    FieldSpec::build(p, kprime, modulus.as_deref(), s)
}

/// Accepts `p^k` or a prime power written in full (e.g. `27`).
fn parse_size(text: &str) -> Result<(u64, usize)> {
    if let Some((base, exp)) = text.split_once('^') {
        let p: u64 = base
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad base in {text:?}")))?;
        let k: usize = exp
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {text:?}")))?;
        return Ok((p, k));
    }
    let n: u64 = text
        .parse()
        .map_err(|_| Error::Parse(format!("bad field size {text:?}")))?;
    if n < 2 {
        return Err(Error::Parse(format!("bad field size {n}")));
    }
    // decompose prime power
    if let Some(&p) = prime_factors(n).first() {
        let mut k = 0usize;
        let mut m = n;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        if m == 1 {
            return Ok((p, k));
        }
    }
    Err(Error::Parse(format!("{n} is not a prime power")))
}

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

impl FieldElement {
    pub fn owner(&self) -> &Field {
        &self.owner
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Mixed-radix integer code Σ c_i p^i.
    pub fn code(&self) -> u64 {
        self.owner.code_of(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn same_owner(&self, other: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(&self.owner, &other.owner) || *self.owner == *other.owner {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_owner(other)?;
        let p = self.owner.p;
        self.owner.tick_add();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(FieldElement {
            owner: self.owner.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_owner(other)?;
        let p = self.owner.p;
        self.owner.tick_add();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Ok(FieldElement {
            owner: self.owner.clone(),
            coeffs,
        })
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.owner.p;
        FieldElement {
            owner: self.owner.clone(),
            coeffs: self.coeffs.iter().map(|&a| (p - a) % p).collect(),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_owner(other)?;
        self.owner.tick_mul();
        if let (Some(log), Some(antilog)) = (&self.owner.log, &self.owner.antilog) {
            if self.is_zero() || other.is_zero() {
                return Ok(self.owner.zero());
            }
            let la = log[self.code() as usize] as u64;
            let lb = log[other.code() as usize] as u64;
            let k = (la + lb) % self.owner.order;
            return Ok(self.owner.from_code(antilog[k as usize]));
        }
        Ok(FieldElement {
            owner: self.owner.clone(),
            coeffs: self.owner.raw_mul(&self.coeffs, &other.coeffs),
        })
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.owner.tick_mul();
        if let (Some(log), Some(antilog)) = (&self.owner.log, &self.owner.antilog) {
            let la = log[self.code() as usize] as u64;
            let k = (self.owner.order - la) % self.owner.order;
            return Ok(self.owner.from_code(antilog[k as usize]));
        }
        Ok(FieldElement {
            owner: self.owner.clone(),
            coeffs: self.owner.raw_pow(&self.coeffs, self.owner.order - 1),
        })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.mul(&other.inv()?)
    }

    /// a^e with negative exponents via the inverse.
    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        if e == 0 {
            return Ok(self.owner.one());
        }
        if self.is_zero() {
            if e < 0 {
                return Err(Error::DivisionByZero);
            }
            return Ok(self.owner.zero());
        }
        let order = self.owner.order as i64;
        let e = ((e % order) + order) % order;
        if let (Some(log), Some(antilog)) = (&self.owner.log, &self.owner.antilog) {
            let la = log[self.code() as usize] as u128;
            let k = (la * e as u128 % self.owner.order as u128) as u64;
            return Ok(self.owner.from_code(antilog[k as usize]));
        }
        Ok(FieldElement {
            owner: self.owner.clone(),
            coeffs: self.owner.raw_pow(&self.coeffs, e as u64),
        })
    }

    /// Frobenius a -> a^(p^e).
    pub fn frobenius(&self, e: usize) -> FieldElement {
        let mut out = self.clone();
        for _ in 0..e {
            out = FieldElement {
                owner: self.owner.clone(),
                coeffs: self.owner.raw_pow(&out.coeffs, self.owner.p),
            };
        }
        out
    }

    /// Field trace Tr_{p^k'/p}(a) = Σ a^{p^i}; lands in the prime subfield.
    pub fn trace(&self) -> FieldElement {
        let mut acc = self.owner.zero();
        let mut term = self.clone();
        for _ in 0..self.owner.kprime {
            acc = acc.add(&term).unwrap();
            term = term.frobenius(1);
        }
        acc
    }

    /// Trace as an integer in [0, p); valid because the trace lies in F_p.
    pub fn trace_int(&self) -> u64 {
        self.trace().coeffs[0]
    }

    /// True iff a lies in the subfield GF(p^s), i.e. a^{p^s} = a.
    pub fn in_subfield(&self, s: usize) -> Result<bool> {
        if s == 0 || self.owner.kprime % s != 0 {
            return Err(Error::NoSuchSubfield {
                s,
                kprime: self.owner.kprime,
            });
        }
        Ok(self.frobenius(s) == *self)
    }

    /// Discrete log base the primitive element.
    pub fn discrete_log(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::LogOfZero);
        }
        if let Some(log) = &self.owner.log {
            return Ok(log[self.code() as usize] as u64);
        }
        self.discrete_log_bsgs()
    }

    /// Baby-step giant-step over the full multiplicative group.
    fn discrete_log_bsgs(&self) -> Result<u64> {
        let order = self.owner.order;
        let m = (order as f64).sqrt().ceil() as u64;
        let w = self.owner.primitive();
        // baby steps: w^j for j in 0..m
        let mut table = std::collections::HashMap::with_capacity(m as usize);
        let mut cur = self.owner.one();
        for j in 0..m {
            table.entry(cur.code()).or_insert(j);
            cur = cur.mul(&w)?;
        }
        // giant steps: a * (w^-m)^i
        let wm_inv = w.pow(m as i64)?.inv()?;
        let mut gamma = self.clone();
        for i in 0..=m {
            if let Some(&j) = table.get(&gamma.code()) {
                return Ok((i as u128 * m as u128 + j as u128).rem_euclid(order as u128) as u64);
            }
            gamma = gamma.mul(&wm_inv)?;
        }
        unreachable!("BSGS must find a logarithm in a cyclic group")
    }

    /// Multiplicative order (unit elements only).
    pub fn multiplicative_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.owner.order;
        for &l in &self.owner.order_primes {
            while ord % l == 0 && self.pow((ord / l) as i64)?.is_one() {
                ord /= l;
            }
        }
        Ok(ord)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && *self.owner == *other.owner
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // prime-subfield constants print as digits, like the worked examples
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            return write!(f, "{}", self.coeffs[0]);
        }
        match self.discrete_log() {
            Ok(k) => write!(f, "w^{k}"),
            Err(_) => write!(f, "({:?})", self.coeffs),
        }
    }
}
