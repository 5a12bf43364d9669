//! The operations `δ_i` on normalized cycles of a simplicial algebra, by
//! the closed shuffle formula and through the higher EM maps.

use itertools::Itertools;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::chains::{associated_complex, cycle_basis, faces, is_cycle, ChainError, ComplexKind};
use crate::em::{build_dk, em_suspend_n, shuffle_d, EmTransform};
use crate::models::{
    algebra_model, apply_word, evaluate_em, AlgebraModel, F2Element, ModelError, Monomial, SimplicialModel,
    TensorElement,
};
use crate::words::SimplicialWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("need 1 ≤ i ≤ q, got q = {q}, i = {i}")]
    BadRange { q: i64, i: i64 },
    #[error("d_{face} z ≠ 0: z is not a normalized cycle")]
    NotNormalizedCycle { face: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Two disjoint increasing index sequences.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ShufflePair {
    pub mu: Vec<u32>,
    pub nu: Vec<u32>,
}

impl ShufflePair {
    /// `s_{μ_i} … s_{μ_1}`.
    pub fn mu_word(&self) -> SimplicialWord {
        SimplicialWord::degeneracies_applied_in_order(&self.mu)
    }

    pub fn nu_word(&self) -> SimplicialWord {
        SimplicialWord::degeneracies_applied_in_order(&self.nu)
    }
}

fn check_range(q: i64, i: i64) -> Result<(), OpError> {
    if i < 1 || i > q {
        return Err(OpError::BadRange { q, i });
    }
    Ok(())
}

/// Splittings of `{q−i, …, q+i−1}` into `μ` and `ν` of size `i`, in
/// lexicographic order of `μ`.
#[allow(non_snake_case)]
pub fn enumerate_U(q: i64, i: i64) -> Result<Vec<ShufflePair>, OpError> {
    check_range(q, i)?;
    let window: Vec<u32> = ((q - i) as u32..(q + i) as u32).collect();
    Ok(window
        .iter()
        .copied()
        .combinations(i as usize)
        .map(|mu| {
            let nu = window.iter().copied().filter(|x| !mu.contains(x)).collect();
            ShufflePair { mu, nu }
        })
        .collect())
}

/// The part of `U(q, i)` with `μ_1 = q − i`.
#[allow(non_snake_case)]
pub fn enumerate_V(q: i64, i: i64) -> Result<Vec<ShufflePair>, OpError> {
    Ok(enumerate_U(q, i)?.into_iter().filter(|p| p.mu[0] as i64 == q - i).collect())
}

fn sum_of_products(
    a: &AlgebraModel,
    z: &F2Element<Monomial>,
    pairs: &[ShufflePair],
) -> Result<F2Element<Monomial>, OpError> {
    let q = z.degree();
    let degree = q + pairs.first().map_or(0, |p| p.mu.len() as i64);
    let parts: Vec<Result<F2Element<Monomial>, OpError>> = pairs
        .par_iter()
        .map(|p| {
            let x = apply_word(a, &p.nu_word(), z)?;
            let y = apply_word(a, &p.mu_word(), z)?;
            Ok(a.multiply(&x, &y)?)
        })
        .collect();
    let mut out = F2Element::zero(degree);
    for part in parts {
        out.add_assign(&part?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaValue {
    pub value: F2Element<Monomial>,
    pub terms: Vec<ShufflePair>,
    /// Set for `i = 1`, where the result is not a cycle.
    pub warning: Option<String>,
}

/// `δ_i(z) = Σ_{V(q,i)} s_{ν_i}…s_{ν_1}(z) · s_{μ_i}…s_{μ_1}(z)` for a
/// normalized cycle `z` of degree `q`.
pub fn delta_i(a: &AlgebraModel, z: &F2Element<Monomial>, i: i64) -> Result<DeltaValue, OpError> {
    let q = z.degree();
    check_range(q, i)?;
    if let Some(face) = faces(a, z).iter().position(|f| !f.is_zero()) {
        return Err(OpError::NotNormalizedCycle { face });
    }
    let terms = enumerate_V(q, i)?;
    let value = sum_of_products(a, z, &terms)?;
    let warning = (i == 1).then(|| format!("not a cycle: d_{q} δ_1(z) = z^2"));
    Ok(DeltaValue { value, terms, warning })
}

/// `∂z = Σ_r d_r z`.
pub fn boundary(a: &AlgebraModel, z: &F2Element<Monomial>) -> F2Element<Monomial> {
    faces(a, z).iter().fold(F2Element::zero(z.degree() - 1), |acc, f| acc.add(f))
}

/// `μ F (x ⊗ y)`.
pub fn mu_evaluate(
    a: &AlgebraModel,
    f: &EmTransform,
    x: &F2Element<Monomial>,
    y: &F2Element<Monomial>,
) -> Result<F2Element<Monomial>, OpError> {
    let t = TensorElement::tensor(x, y);
    let image = evaluate_em(f, a, a, &t)?;
    Ok(a.multiply_tensor(&image)?)
}

/// `Θ_i(z) = μD^{q−i}(z⊗z) + μD^{q−i−1}(z⊗∂z)`, the second term only when
/// `q − i ≥ 1`.
pub fn theta_i(a: &AlgebraModel, z: &F2Element<Monomial>, i: i64) -> Result<F2Element<Monomial>, OpError> {
    let q = z.degree();
    check_range(q, i)?;
    let k = (q - i) as u32;
    let mut out = mu_evaluate(a, &build_dk(k), z, z)?;
    if k >= 1 {
        let dz = boundary(a, z);
        let second = mu_evaluate(a, &build_dk(k - 1), z, &dz)?;
        if !second.is_zero() {
            out.add_assign(&second);
        }
    }
    Ok(out)
}

/// `μD(z⊗z)` summed directly over `U(q, q)`.
pub fn mu_d_square(a: &AlgebraModel, z: &F2Element<Monomial>) -> Result<F2Element<Monomial>, OpError> {
    let q = z.degree();
    if q < 1 {
        return Err(OpError::BadRange { q, i: q });
    }
    sum_of_products(a, z, &enumerate_U(q, q)?)
}

/// The same value through the shuffle transform.
pub fn mu_d_square_via_em(a: &AlgebraModel, z: &F2Element<Monomial>) -> Result<F2Element<Monomial>, OpError> {
    mu_evaluate(a, &shuffle_d(), z, z)
}

pub type SquareImage = TensorElement<Monomial, Monomial>;

/// `D^k(z⊗z)` and `S^k(D^0)(z⊗z)`.
pub fn dk_square_both_ways(
    a: &AlgebraModel,
    z: &F2Element<Monomial>,
    k: u32,
) -> Result<(SquareImage, SquareImage), OpError> {
    let t = TensorElement::tensor(z, z);
    let direct = evaluate_em(&build_dk(k), a, a, &t)?;
    let suspended = evaluate_em(&em_suspend_n(&build_dk(0), k), a, a, &t)?;
    Ok((direct, suspended))
}

/// Normalized cycles of degree `q` whose `δ` lands inside the truncation:
/// the span of degree-`q` monomials of polynomial degree at most `P / 2`.
pub fn cycle_spanning_set(a: &AlgebraModel, q: usize) -> Vec<F2Element<Monomial>> {
    let labels = a.basis_with_poly(q, 1..=a.max_poly() / 2);
    cycle_basis(a, &labels, q)
}

/// A seeded random element of the span of `basis`.
pub fn random_combination(basis: &[F2Element<Monomial>], degree: i64, rng: &mut impl Rng) -> F2Element<Monomial> {
    basis.iter().filter(|_| rng.gen_bool(0.5)).fold(F2Element::zero(degree), |acc, b| acc.add(b))
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Machine-readable summary of `δ_i` on the fundamental class of `S^q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub q: i64,
    pub i: i64,
    pub degree: i64,
    /// `[ν-word, μ-word]` per term of the closed formula.
    pub terms: Vec<[String; 2]>,
    pub value: Vec<String>,
    pub is_cycle: bool,
    pub homology_class_nonzero: Option<bool>,
    pub equals_theta: bool,
    pub random_cycles_checked: usize,
    pub random_cycles_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// Runs `δ_i` and `Θ_i` on the fundamental class of the sphere algebra,
/// plus `samples` seeded random cycles of the spanning set.
pub fn delta_report(q: i64, i: i64, seed: u64, samples: usize) -> Result<DeltaReport, OpError> {
    check_range(q, i)?;
    let top = (q + i + 1) as usize;
    let a = algebra_model(q as usize, top, 4)?;
    let z = a.fundamental_class();
    let d = delta_i(&a, &z, i)?;
    let theta = theta_i(&a, &z, i)?;
    let cycle = is_cycle(&a, &d.value, ComplexKind::Normalized);
    // Faces and degeneracies keep polynomial degree, so the quadratic part
    // is a direct summand and its homology decides the class.
    let homology_class_nonzero = if cycle {
        let quadratic = a.homogeneous_part(2);
        let c = associated_complex(&quadratic, top);
        Some(!c.is_boundary(&d.value)?)
    } else {
        None
    };
    let mut rng = seeded_rng(seed);
    let span = cycle_spanning_set(&a, q as usize);
    let mut ok = true;
    for _ in 0..samples {
        let y = random_combination(&span, q, &mut rng);
        let dy = delta_i(&a, &y, i)?;
        ok &= dy.value == theta_i(&a, &y, i)? && (i == 1 || is_cycle(&a, &dy.value, ComplexKind::Normalized));
    }
    Ok(DeltaReport {
        q,
        i,
        degree: q + i,
        terms: d.terms.iter().map(|p| [p.nu_word().to_string(), p.mu_word().to_string()]).collect(),
        value: d.value.support().iter().map(|m| a.label_name(m)).collect(),
        is_cycle: cycle,
        homology_class_nonzero,
        equals_theta: d.value == theta,
        random_cycles_checked: samples,
        random_cycles_ok: ok,
        warning: d.warning,
    })
}
