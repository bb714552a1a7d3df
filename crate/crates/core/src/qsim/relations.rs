//! Numerical verification of the Q(FFFT) and DFT conjugation identities.

use num_complex::Complex64;

use crate::field::FieldOps;
use crate::transform::TransformPlan;
use crate::Result;

use super::operator::{
    kron, matrices_equal, matrix_mul, op_dft, op_qfffft, op_x, op_z, QuditOperator,
};
use super::state::QuditState;
use super::TOLERANCE;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// Q X_f(γ) Q⁻¹ = ⊗_j X(γ(βξ^j)^{f-1})
    N1,
    /// Q Z_f(γ) Q⁻¹ = ⊗_j Z((1/(nλ))·γ(βξ^j)^{n-f+1})
    N2,
    /// Q (⊗_i X(γ(βξ^j)^i)) Q⁻¹ = X_{n-j+1}(nγ)
    N3,
    /// Q (⊗_i Z(γ(βξ^j)^i)) Q⁻¹ = Z_{j+1}(γ)
    N4,
    /// X(nξ^l)|ε⟩ = |ε⟩
    N5,
    /// Z(ξ^m)|0⟩ = |0⟩
    N6,
    /// DFT X(γ) DFT⁻¹ = Z(γ)
    N7,
    /// DFT Z(γ) DFT⁻¹ = X(-γ)
    N8,
}

pub const ALL_RELATIONS: [Relation; 8] = [
    Relation::N1,
    Relation::N2,
    Relation::N3,
    Relation::N4,
    Relation::N5,
    Relation::N6,
    Relation::N7,
    Relation::N8,
];

fn single_site(op: &QuditOperator, site: usize, n: usize, d: usize) -> Result<Vec<Vec<Complex64>>> {
    let identity: Vec<Vec<Complex64>> = (0..d)
        .map(|r| {
            (0..d)
                .map(|c| Complex64::new(if r == c { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    let mut acc: Option<Vec<Vec<Complex64>>> = None;
    for pos in 1..=n {
        let m = if pos == site {
            op.to_matrix()?
        } else {
            identity.clone()
        };
        acc = Some(match acc {
            None => m,
            Some(prev) => kron(&prev, &m),
        });
    }
    Ok(acc.unwrap())
}

fn tensor_product(ops: &[QuditOperator]) -> Result<Vec<Vec<Complex64>>> {
    let mut acc: Option<Vec<Vec<Complex64>>> = None;
    for op in ops {
        let m = op.to_matrix()?;
        acc = Some(match acc {
            None => m,
            Some(prev) => kron(&prev, &m),
        });
    }
    Ok(acc.unwrap())
}

fn conjugate_by(
    q: &[Vec<Complex64>],
    q_inv: &[Vec<Complex64>],
    m: &[Vec<Complex64>],
) -> Vec<Vec<Complex64>> {
    matrix_mul(&matrix_mul(q, m), q_inv)
}

/// Verify one relation over every γ in the field and every admissible
/// site index; N5/N6 sweep l, m over 0..k'.
pub fn verify_relation(rel: Relation, plan: &TransformPlan) -> Result<bool> {
    let field = plan.spec().clone();
    let n = plan.n();
    let d = field.size() as usize;
    let points = plan.eval_points()?;
    let gammas = field.elements();
    match rel {
        Relation::N1 | Relation::N2 | Relation::N3 | Relation::N4 => {
            let q = op_qfffft(plan)?;
            let qm = q.to_matrix()?;
            let qinv = q.inverse().to_matrix()?;
            let n_lambda_inv = field.from_int(n as i64).mul(plan.lambda())?.inv()?;
            for gamma in &gammas {
                for site in 1..=n {
                    let ok = match rel {
                        Relation::N1 => {
                            let lhs = conjugate_by(
                                &qm,
                                &qinv,
                                &single_site(&op_x(&field, gamma), site, n, d)?,
                            );
                            let rhs_ops: Vec<QuditOperator> = (0..n)
                                .map(|j| {
                                    let v = gamma
                                        .mul(&points[j].pow((site - 1) as i64).unwrap())
                                        .unwrap();
                                    op_x(&field, &v)
                                })
                                .collect();
                            matrices_equal(&lhs, &tensor_product(&rhs_ops)?)
                        }
                        Relation::N2 => {
                            let lhs = conjugate_by(
                                &qm,
                                &qinv,
                                &single_site(&op_z(&field, gamma), site, n, d)?,
                            );
                            let rhs_ops: Vec<QuditOperator> = (0..n)
                                .map(|j| {
                                    let v = n_lambda_inv
                                        .mul(gamma)
                                        .unwrap()
                                        .mul(&points[j].pow((n - site + 1) as i64).unwrap())
                                        .unwrap();
                                    op_z(&field, &v)
                                })
                                .collect();
                            matrices_equal(&lhs, &tensor_product(&rhs_ops)?)
                        }
                        Relation::N3 => {
                            // site plays the role of j ∈ {1..n}
                            let string_ops: Vec<QuditOperator> = (0..n)
                                .map(|i| {
                                    let v = gamma
                                        .mul(&points[site % n].pow(i as i64).unwrap())
                                        .unwrap();
                                    op_x(&field, &v)
                                })
                                .collect();
                            let lhs = conjugate_by(&qm, &qinv, &tensor_product(&string_ops)?);
                            let n_gamma = field.from_int(n as i64).mul(gamma).unwrap();
                            let rhs = single_site(&op_x(&field, &n_gamma), n - site + 1, n, d)?;
                            matrices_equal(&lhs, &rhs)
                        }
                        Relation::N4 => {
                            // site - 1 plays the role of j ∈ {0..n-1}
                            let j = site - 1;
                            let string_ops: Vec<QuditOperator> = (0..n)
                                .map(|i| {
                                    let v = gamma.mul(&points[j].pow(i as i64).unwrap()).unwrap();
                                    op_z(&field, &v)
                                })
                                .collect();
                            let lhs = conjugate_by(&qm, &qinv, &tensor_product(&string_ops)?);
                            let rhs = single_site(&op_z(&field, gamma), j + 1, n, d)?;
                            matrices_equal(&lhs, &rhs)
                        }
                        _ => unreachable!(),
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Relation::N5 => {
            // |ε⟩ = DFT⁻¹|0⟩ is fixed by X(n·w^l)
            let eps = op_dft(&field)
                .inverse()
                .apply(&QuditState::basis(&field, &[0])?, 1)?;
            let n_elem = field.from_int(n as i64);
            for l in 0..field.kprime() {
                let v = n_elem.mul(&field.primitive().pow(l as i64)?)?;
                let moved = op_x(&field, &v).apply(&eps, 1)?;
                if moved.distance(&eps)? > TOLERANCE {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Relation::N6 => {
            let zero = QuditState::basis(&field, &[0])?;
            for m in 0..field.kprime() {
                let v = field.primitive().pow(m as i64)?;
                let moved = op_z(&field, &v).apply(&zero, 1)?;
                if moved.distance(&zero)? > TOLERANCE {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Relation::N7 | Relation::N8 => {
            let dft = op_dft(&field).to_matrix()?;
            let dft_inv = op_dft(&field).inverse().to_matrix()?;
            for gamma in &gammas {
                let (inner, rhs) = match rel {
                    Relation::N7 => (
                        op_x(&field, gamma).to_matrix()?,
                        op_z(&field, gamma).to_matrix()?,
                    ),
                    Relation::N8 => (
                        op_z(&field, gamma).to_matrix()?,
                        op_x(&field, &gamma.neg()).to_matrix()?,
                    ),
                    _ => unreachable!(),
                };
                let lhs = conjugate_by(&dft, &dft_inv, &inner);
                if !matrices_equal(&lhs, &rhs) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Run all eight relations; returns the per-relation verdicts.
pub fn verify_all_relations(plan: &TransformPlan) -> Result<Vec<(Relation, bool)>> {
    ALL_RELATIONS
        .iter()
        .map(|&rel| Ok((rel, verify_relation(rel, plan)?)))
        .collect()
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for Relation {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Relation> {
        match s.to_ascii_uppercase().as_str() {
            "N1" => Ok(Relation::N1),
            "N2" => Ok(Relation::N2),
            "N3" => Ok(Relation::N3),
            "N4" => Ok(Relation::N4),
            "N5" => Ok(Relation::N5),
            "N6" => Ok(Relation::N6),
            "N7" => Ok(Relation::N7),
            "N8" => Ok(Relation::N8),
            other => Err(crate::error::Error::Parse(format!(
                "unknown relation {other:?}"
            ))),
        }
    }
}
