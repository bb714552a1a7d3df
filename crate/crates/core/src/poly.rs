//! Dense univariate polynomials over a field spec.
//!
//! Coefficients are stored constant term first with no trailing zeros; the
//! zero polynomial is the empty vector and its degree is `None` rather
//! than a -1 sentinel. The module also carries the extended Euclidean
//! solver for the decoder's key equation and minimal polynomials over a
//! designated subfield.

use std::fmt;

use crate::error::Error;
use crate::field::{is_prime_u64, prime_factors, Field, FieldElement, FieldOps};
use crate::Result;

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    owner: Field,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero(owner: &Field) -> Polynomial {
        Polynomial {
            owner: owner.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(owner: &Field) -> Polynomial {
        Polynomial::constant(owner.one())
    }

    pub fn constant(c: FieldElement) -> Polynomial {
        let owner = c.owner().clone();
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        Polynomial { owner, coeffs }
    }

    /// Build from a constant-first coefficient list, trimming trailing zeros.
    pub fn from_coeffs(owner: &Field, coeffs: Vec<FieldElement>) -> Polynomial {
        let mut p = Polynomial {
            owner: owner.clone(),
            coeffs,
        };
        p.normalize();
        p
    }

    /// The monomial c * x^k.
    pub fn monomial(c: FieldElement, k: usize) -> Polynomial {
        let owner = c.owner().clone();
        if c.is_zero() {
            return Polynomial::zero(&owner);
        }
        let mut coeffs = vec![owner.zero(); k + 1];
        coeffs[k] = c;
        Polynomial { owner, coeffs }
    }

    /// x^n - lambda.
    pub fn x_pow_minus(owner: &Field, n: usize, lambda: &FieldElement) -> Polynomial {
        let mut coeffs = vec![owner.zero(); n + 1];
        coeffs[0] = lambda.neg();
        coeffs[n] = owner.one();
        Polynomial::from_coeffs(owner, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(FieldElement::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn owner(&self) -> &Field {
        &self.owner
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.owner.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(FieldElement::is_one)
    }

    fn check_owner(&self, other: &Polynomial) -> Result<()> {
        if *self.owner == *other.owner {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_owner(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&other.coeff(i))?);
        }
        Ok(Polynomial::from_coeffs(&self.owner, coeffs))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_owner(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).sub(&other.coeff(i))?);
        }
        Ok(Polynomial::from_coeffs(&self.owner, coeffs))
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            owner: self.owner.clone(),
            coeffs: self.coeffs.iter().map(FieldElement::neg).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.owner));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.mul(c))
            .collect::<Result<_>>()?;
        Ok(Polynomial {
            owner: self.owner.clone(),
            coeffs,
        })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_owner(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.owner));
        }
        let mut coeffs = vec![self.owner.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(Polynomial::from_coeffs(&self.owner, coeffs))
    }

    pub fn pow(&self, e: usize) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.owner);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Long division: self = q*b + r with deg r < deg b.
    pub fn divmod(&self, b: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_owner(b)?;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = b.leading().unwrap().inv()?;
        let mut r = self.clone();
        let mut q = vec![self.owner.zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let factor = r.leading().unwrap().mul(&lead_inv)?;
            let shift = dr - db;
            q[shift] = factor.clone();
            // r -= factor * x^shift * b
            for (j, bc) in b.coeffs.iter().enumerate() {
                let t = r.coeffs[shift + j].sub(&factor.mul(bc)?)?;
                r.coeffs[shift + j] = t;
            }
            r.normalize();
        }
        Ok((Polynomial::from_coeffs(&self.owner, q), r))
    }

    /// Exact division; error if the remainder is nonzero.
    pub fn div_exact(&self, b: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.divmod(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::DecodeFailure)
        }
    }

    pub fn divides(&self, other: &Polynomial) -> Result<bool> {
        if self.is_zero() {
            return Ok(other.is_zero());
        }
        let (_, r) = other.divmod(self)?;
        Ok(r.is_zero())
    }

    /// Horner evaluation.
    pub fn eval(&self, x0: &FieldElement) -> Result<FieldElement> {
        let mut acc = self.owner.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x0)?.add(c)?;
        }
        Ok(acc)
    }

    /// Reciprocal polynomial x^deg * p(1/x).
    pub fn reciprocal(&self) -> Polynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Polynomial::from_coeffs(&self.owner, coeffs)
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> Result<Polynomial> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(l) => self.scale(&l.inv()?),
        }
    }

    /// Substitute x -> c*x.
    pub fn compose_scale(&self, c: &FieldElement) -> Result<Polynomial> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut power = self.owner.one();
        for a in &self.coeffs {
            coeffs.push(a.mul(&power)?);
            power = power.mul(c)?;
        }
        Ok(Polynomial::from_coeffs(&self.owner, coeffs))
    }

    /// Textual form `c0 + c1*x + ...` with elements as in `FieldElement`.
    pub fn to_text(&self) -> String {
        format!("{self}")
    }

    /// JSON form: array of element strings, constant term first.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        )
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "x")?,
                1 => write!(f, "{c}*x")?,
                _ if c.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// key equation
// ---------------------------------------------------------------------------

/// Solve Γ(x)·μ(x) ≡ P(x) mod (x^n - λ) with deg P < n - t by running the
/// extended Euclidean remainder sequence on (x^n - λ, μ) and stopping at
/// the first remainder of degree below n - t.
///
/// Returns (Γ, P). The pair is normalized by the sign (-1)^i of the stop
/// index so that a clean received word yields Γ = 1 and the worked error
/// cases match the long-division quotients directly.
pub fn eeap_solve_key_equation(
    mu: &Polynomial,
    n: usize,
    lambda: &FieldElement,
    t: usize,
) -> Result<(Polynomial, Polynomial)> {
    let (gamma, p, _) = eeap_with_trace(mu, n, lambda, t, false)?;
    Ok((gamma, p))
}

/// One recorded step of the remainder sequence: (u_i, v_i, r_i) with
/// r_i = u_i·(x^n - λ) + v_i·μ.
pub type EeapStep = (Polynomial, Polynomial, Polynomial);

/// As `eeap_solve_key_equation`, optionally recording every (u, v, r)
/// triple so the Bézout identity can be checked step by step.
pub fn eeap_with_trace(
    mu: &Polynomial,
    n: usize,
    lambda: &FieldElement,
    t: usize,
    record: bool,
) -> Result<(Polynomial, Polynomial, Vec<EeapStep>)> {
    let owner = mu.owner().clone();
    let modulus = Polynomial::x_pow_minus(&owner, n, lambda);
    let bound = n - t; // stop when deg r < bound

    // r_{-1} = x^n - λ, r_0 = μ; cofactors track r_i = u_i·a + v_i·μ
    let mut r_prev = modulus;
    let mut r_cur = mu.clone();
    let mut u_prev = Polynomial::one(&owner);
    let mut u_cur = Polynomial::zero(&owner);
    let mut v_prev = Polynomial::zero(&owner);
    let mut v_cur = Polynomial::one(&owner);
    let mut parity = false; // true when the stop index is odd
    let mut trace = Vec::new();

    loop {
        if record {
            trace.push((u_cur.clone(), v_cur.clone(), r_cur.clone()));
        }
        if r_cur.degree().is_none_or(|d| d < bound) {
            break;
        }
        let (q, r) = r_prev.divmod(&r_cur)?;
        let u_next = u_prev.sub(&q.mul(&u_cur)?)?;
        let v_next = v_prev.sub(&q.mul(&v_cur)?)?;
        r_prev = r_cur;
        r_cur = r;
        u_prev = u_cur;
        u_cur = u_next;
        v_prev = v_cur;
        v_cur = v_next;
        parity = !parity;
    }

    if parity {
        Ok((v_cur.neg(), r_cur.neg(), trace))
    } else {
        Ok((v_cur, r_cur, trace))
    }
}

// ---------------------------------------------------------------------------
// minimal polynomials and the binomial irreducibility criterion
// ---------------------------------------------------------------------------

/// Minimal polynomial of `alpha` over the subfield GF(p^s): the monic
/// product of (x - alpha^{q^j}) over the Frobenius orbit, q = p^s.
pub fn min_poly(alpha: &FieldElement, s: usize) -> Result<Polynomial> {
    let owner = alpha.owner().clone();
    if s == 0 || owner.kprime() % s != 0 {
        return Err(Error::NoSuchSubfield {
            s,
            kprime: owner.kprime(),
        });
    }
    let mut orbit = vec![alpha.clone()];
    let mut cur = alpha.frobenius(s);
    while cur != *alpha {
        orbit.push(cur.clone());
        cur = cur.frobenius(s);
    }
    let mut out = Polynomial::one(&owner);
    for root in &orbit {
        let factor = Polynomial::from_coeffs(&owner, vec![root.neg(), owner.one()]);
        out = out.mul(&factor)?;
    }
    Ok(out)
}

/// Serret's criterion: x^n - λ is irreducible over GF(p^s) iff every prime
/// divisor of n divides ord(λ) but not (q-1)/ord(λ), and 4|n implies
/// 4|(q-1).
pub fn is_irreducible_binomial(n: usize, lambda: &FieldElement, s: usize) -> Result<bool> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    if !lambda.in_subfield(s)? {
        return Err(Error::NoSuchSubfield {
            s,
            kprime: lambda.owner().kprime(),
        });
    }
    let p = lambda.owner().p();
    let mut q = 1u64;
    for _ in 0..s {
        q *= p;
    }
    let kappa = lambda.multiplicative_order()?;
    debug_assert_eq!((q - 1) % kappa, 0);
    let cofactor = (q - 1) / kappa;
    for l in prime_factors(n as u64) {
        if kappa % l != 0 || cofactor % l == 0 {
            return Ok(false);
        }
    }
    if n % 4 == 0 && (q - 1) % 4 != 0 {
        return Ok(false);
    }
    Ok(true)
}

/// Multiplicative order of q modulo n (the degree of the splitting field
/// of x^n - 1 over GF(q)).
pub fn multiplicative_order_mod(q: u64, n: u64) -> u64 {
    assert!(n > 1 && gcd(q % n, n) == 1);
    let mut e = 1u64;
    let mut acc = q % n;
    while acc != 1 {
        acc = acc * (q % n) % n;
        e += 1;
    }
    e
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Primality check re-exported for callers validating input.
pub fn is_prime(n: u64) -> bool {
    is_prime_u64(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::rng::SplitMix64;

    fn gf9() -> Field {
        FieldSpec::build(3, 2, Some(&[2, 2, 1]), 1).unwrap()
    }

    fn gf27() -> Field {
        FieldSpec::build(3, 3, Some(&[1, 2, 0, 1]), 1).unwrap()
    }

    fn poly_from_powers(f: &Field, terms: &[(i64, usize)]) -> Polynomial {
        let deg = terms.iter().map(|&(_, k)| k).max().unwrap_or(0);
        let mut coeffs = vec![f.zero(); deg + 1];
        for &(e, k) in terms {
            coeffs[k] = f.elem_from_power(e);
        }
        Polynomial::from_coeffs(f, coeffs)
    }

    fn random_poly(f: &Field, max_deg: usize, rng: &mut SplitMix64) -> Polynomial {
        let deg = rng.below(max_deg as u64 + 1) as usize;
        let coeffs = (0..=deg)
            .map(|_| f.from_code(rng.below(f.size())))
            .collect();
        Polynomial::from_coeffs(f, coeffs)
    }

    #[test]
    fn degree_and_zero_handling() {
        let f = gf9();
        let z = Polynomial::zero(&f);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z.eval(&f.primitive()).unwrap(), f.zero());
        let c = Polynomial::constant(f.from_int(2));
        assert_eq!(c.degree(), Some(0));
    }

    #[test]
    fn divmod_example_step() {
        // (x^4 - w^4) = μ(x)(w^3 x + 2) + (w^7 x + 1) over GF(9)
        let f = gf9();
        let mu = poly_from_powers(&f, &[(7, 1), (2, 2), (5, 3)]);
        let a = Polynomial::x_pow_minus(&f, 4, &f.elem_from_power(4));
        let (q, r) = a.divmod(&mu).unwrap();
        assert_eq!(q, poly_from_powers(&f, &[(4, 0), (3, 1)])); // 2 = w^4
        assert_eq!(r, poly_from_powers(&f, &[(0, 0), (7, 1)]));
        assert_eq!(q.mul(&mu).unwrap().add(&r).unwrap(), a);
    }

    #[test]
    fn self_division_is_unit() {
        let f = gf27();
        let a = poly_from_powers(&f, &[(3, 0), (11, 2), (25, 5)]);
        let (q, r) = a.divmod(&a).unwrap();
        assert!(q.is_one());
        assert!(r.is_zero());
    }

    #[test]
    fn divmod_round_trip_random() {
        let mut rng = SplitMix64::new(0xBEEF);
        for f in [gf9(), gf27()] {
            for _ in 0..1000 {
                let a = random_poly(&f, 20, &mut rng);
                let mut b = random_poly(&f, 20, &mut rng);
                if b.is_zero() {
                    b = Polynomial::one(&f);
                }
                let (q, r) = a.divmod(&b).unwrap();
                assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
                if let (Some(dr), Some(db)) = (r.degree(), b.degree()) {
                    assert!(dr < db);
                }
            }
        }
    }

    #[test]
    fn key_equation_zero_received_word() {
        // single error w at spectral index 9, n = 13 over GF(27)
        let f = gf27();
        let mu_powers: [i64; 13] = [1, 22, 17, 12, 7, 2, 23, 18, 13, 8, 3, 24, 19];
        let coeffs: Vec<_> = mu_powers.iter().map(|&e| f.elem_from_power(e)).collect();
        let mu = Polynomial::from_coeffs(&f, coeffs);
        let lambda = f.elem_from_power(13);
        let (gamma, p) = eeap_solve_key_equation(&mu, 13, &lambda, 1).unwrap();
        assert_eq!(gamma, poly_from_powers(&f, &[(25, 0), (7, 1)]));
        assert!(p.is_zero());
    }

    #[test]
    fn key_equation_single_error() {
        // μ = w^7 x + w^2 x^2 + w^5 x^3 over GF(9), n = 4, λ = w^4, t = 1
        let f = gf9();
        let mu = poly_from_powers(&f, &[(7, 1), (2, 2), (5, 3)]);
        let lambda = f.elem_from_power(4);
        let (gamma, p) = eeap_solve_key_equation(&mu, 4, &lambda, 1).unwrap();
        let expected = poly_from_powers(&f, &[(4, 0), (3, 1)]); // w^3 x + 2
        assert_eq!(gamma, expected);
        assert_eq!(p, expected);
        let m = p.div_exact(&gamma).unwrap();
        assert!(m.is_one());
    }

    #[test]
    fn key_equation_zero_mu() {
        let f = gf9();
        let (gamma, p) =
            eeap_solve_key_equation(&Polynomial::zero(&f), 4, &f.elem_from_power(4), 1).unwrap();
        assert!(gamma.is_one());
        assert!(p.is_zero());
    }

    #[test]
    fn bezout_identity_at_every_step() {
        let mut rng = SplitMix64::new(41);
        let f = gf27();
        let lambda = f.elem_from_power(13);
        let modulus = Polynomial::x_pow_minus(&f, 13, &lambda);
        for _ in 0..50 {
            let mu = random_poly(&f, 12, &mut rng);
            let (_, _, trace) = eeap_with_trace(&mu, 13, &lambda, 2, true).unwrap();
            assert!(!trace.is_empty());
            for (u, v, r) in &trace {
                let lhs = modulus.mul(u).unwrap().add(&mu.mul(v).unwrap()).unwrap();
                assert_eq!(&lhs, r);
            }
        }
    }

    #[test]
    fn key_equation_congruence_holds() {
        // Γ·μ ≡ P mod (x^n - λ) for random μ, with deg P < n - t
        let mut rng = SplitMix64::new(17);
        let f = gf27();
        let lambda = f.elem_from_power(13);
        let modulus = Polynomial::x_pow_minus(&f, 13, &lambda);
        for _ in 0..200 {
            let mu = random_poly(&f, 12, &mut rng);
            let (gamma, p) = eeap_solve_key_equation(&mu, 13, &lambda, 2).unwrap();
            let (_, rem) = gamma
                .mul(&mu)
                .unwrap()
                .sub(&p)
                .unwrap()
                .divmod(&modulus)
                .unwrap();
            assert!(rem.is_zero());
            if let Some(dp) = p.degree() {
                assert!(dp < 11);
            }
        }
    }

    #[test]
    fn min_poly_of_one() {
        let f = gf9();
        let mp = min_poly(&f.one(), 1).unwrap();
        // x - 1 = x + 2
        assert_eq!(mp, poly_from_powers(&f, &[(4, 0), (0, 1)]));
    }

    #[test]
    fn min_poly_gf16_fifth_root() {
        // ξ = w^3 has order 5 in GF(16); its minimal polynomial over F_2 is
        // x^4 + x^3 + x^2 + x + 1
        let f = FieldSpec::build(2, 4, None, 1).unwrap();
        let xi = f.elem_from_power(3);
        assert_eq!(xi.multiplicative_order().unwrap(), 5);
        let mp = min_poly(&xi, 1).unwrap();
        let expect = Polynomial::from_coeffs(&f, vec![f.one(), f.one(), f.one(), f.one(), f.one()]);
        assert_eq!(mp, expect);
    }

    #[test]
    fn min_poly_coeffs_in_subfield() {
        let f = gf27();
        for a in f.elements() {
            let mp = min_poly(&a, 1).unwrap();
            assert!(mp.is_monic());
            for c in mp.coeffs() {
                assert!(c.in_subfield(1).unwrap());
            }
            assert!(mp.eval(&a).unwrap().is_zero());
        }
    }

    #[test]
    fn serret_criterion_matches_brute_force() {
        let f = gf9();
        let w = f.primitive();
        // x^2 - w irreducible (no square roots of w exist)
        assert!(is_irreducible_binomial(2, &w, 2).unwrap());
        assert!(f.elements().iter().all(|a| a.mul(a).unwrap() != w));
        // x^2 - 1 factors
        assert!(!is_irreducible_binomial(2, &f.one(), 2).unwrap());
        // x^4 - w irreducible; brute-force factor check up to degree 2
        assert!(is_irreducible_binomial(4, &w, 2).unwrap());
        let target = Polynomial::x_pow_minus(&f, 4, &w);
        for a in f.elements() {
            assert!(!target.eval(&a).unwrap().is_zero());
            for b in f.elements() {
                let quad = Polynomial::from_coeffs(&f, vec![b.clone(), a.clone(), f.one()]);
                let (_, r) = target.divmod(&quad).unwrap();
                assert!(!r.is_zero());
            }
        }
        assert!(matches!(
            is_irreducible_binomial(2, &f.zero(), 2),
            Err(Error::ZeroLambda)
        ));
    }

    #[test]
    fn order_mod_helper() {
        assert_eq!(multiplicative_order_mod(27, 13), 1);
        assert_eq!(multiplicative_order_mod(9, 50), 10);
        assert_eq!(multiplicative_order_mod(2, 5), 4);
    }

    #[test]
    fn display_form() {
        let f = gf9();
        let p = poly_from_powers(&f, &[(4, 0), (3, 1)]);
        assert_eq!(p.to_text(), "2 + w^3*x");
        assert_eq!(Polynomial::zero(&f).to_text(), "0");
    }
}
