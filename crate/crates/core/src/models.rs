//! Finite truncated simplicial F2-vector spaces and F2-algebras.
//!
//! Simplices of `Δ[n]` are nondecreasing vertex sequences. `∂Δ[n]` keeps the
//! non-surjective ones and `S^n = Δ[n]/∂Δ[n]` the surjective ones, with the
//! collapsed boundary sent to zero. The algebra model is the free commutative
//! (non-unital) algebra on the reduced chains of `S^n`, truncated at a fixed
//! polynomial degree.

use std::collections::BTreeSet;
use std::fmt::{self, Debug};
use std::hash::Hash;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::em::EmTransform;
use crate::words::{Generator, GeneratorKind, SimplicialWord, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{generator} is not defined on degree {degree}")]
    OutOfRange { generator: Generator, degree: i64 },
    #[error("degree {degree} exceeds the truncation bound {max}")]
    TruncationOverflow { degree: i64, max: i64 },
    #[error("polynomial degree {degree} exceeds the truncation bound {max}")]
    PolynomialOverflow { degree: usize, max: usize },
    #[error("degrees differ: {0} vs {1}")]
    DegreeMismatch(i64, i64),
    #[error("invalid model parameters: {0}")]
    Bounds(String),
}

impl From<WordError> for ModelError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::OutOfRange { generator, degree } => ModelError::OutOfRange { generator, degree },
            WordError::Parse(s) => ModelError::Bounds(format!("bad word {s}")),
        }
    }
}

/// A truncated simplicial F2-vector space with a distinguished basis on
/// which every face and degeneracy acts by a basis element or zero.
pub trait SimplicialModel: Sync {
    type Label: Clone + Ord + Hash + Debug + Send + Sync;

    fn max_degree(&self) -> usize;
    fn degree(&self, x: &Self::Label) -> usize;
    /// `d_r x`, for `r ≤ degree(x)` and `degree(x) ≥ 1`.
    fn face(&self, x: &Self::Label, r: usize) -> Option<Self::Label>;
    /// `s_r x`, for `r ≤ degree(x) < max_degree`.
    fn degeneracy(&self, x: &Self::Label, r: usize) -> Option<Self::Label>;
    /// Basis of degree `m`, sorted.
    fn basis(&self, m: usize) -> Vec<Self::Label>;
    fn label_name(&self, x: &Self::Label) -> String;
}

/// A homogeneous element: a set of basis labels of one degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct F2Element<L: Ord> {
    degree: i64,
    support: BTreeSet<L>,
}

impl<L: Ord + Clone> F2Element<L> {
    pub fn zero(degree: i64) -> Self {
        Self { degree, support: BTreeSet::new() }
    }

    pub fn basis(degree: i64, label: L) -> Self {
        Self { degree, support: BTreeSet::from([label]) }
    }

    pub fn from_labels(degree: i64, labels: impl IntoIterator<Item = L>) -> Self {
        let mut x = Self::zero(degree);
        for l in labels {
            x.toggle(l);
        }
        x
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> &BTreeSet<L> {
        &self.support
    }

    pub fn toggle(&mut self, l: L) {
        if !self.support.remove(&l) {
            self.support.insert(l);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for l in &other.support {
            self.toggle(l.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }
}

/// A homogeneous tensor: pairs of labels in bidegree `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement<L: Ord, M: Ord> {
    bidegree: (i64, i64),
    support: BTreeSet<(L, M)>,
}

impl<L: Ord + Clone, M: Ord + Clone> TensorElement<L, M> {
    pub fn zero(bidegree: (i64, i64)) -> Self {
        Self { bidegree, support: BTreeSet::new() }
    }

    pub fn bidegree(&self) -> (i64, i64) {
        self.bidegree
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> &BTreeSet<(L, M)> {
        &self.support
    }

    pub fn toggle(&mut self, l: L, m: M) {
        let key = (l, m);
        if !self.support.remove(&key) {
            self.support.insert(key);
        }
    }

    pub fn tensor(x: &F2Element<L>, y: &F2Element<M>) -> Self {
        let mut t = Self::zero((x.degree(), y.degree()));
        for a in x.support() {
            for b in y.support() {
                t.toggle(a.clone(), b.clone());
            }
        }
        t
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in &other.support {
            self.toggle(a.clone(), b.clone());
        }
    }
}

/// Applies `w` to one basis label; `Ok(None)` means the result is zero.
pub fn apply_word_to_label<M: SimplicialModel>(
    model: &M,
    w: &SimplicialWord,
    x: &M::Label,
) -> Result<Option<M::Label>, ModelError> {
    let mut degree = model.degree(x) as i64;
    let mut current = Some(x.clone());
    for g in w.factors().iter().rev() {
        let r = g.index as usize;
        if g.index as i64 > degree {
            return Err(ModelError::OutOfRange { generator: *g, degree });
        }
        match g.kind {
            GeneratorKind::Face => {
                current = match current {
                    Some(c) if degree >= 1 => model.face(&c, r),
                    _ => None,
                };
                degree -= 1;
            }
            GeneratorKind::Degeneracy => {
                if degree + 1 > model.max_degree() as i64 {
                    return Err(ModelError::TruncationOverflow { degree: degree + 1, max: model.max_degree() as i64 });
                }
                current = current.and_then(|c| model.degeneracy(&c, r));
                degree += 1;
            }
        }
    }
    Ok(current)
}

/// `w(x)`, applied factor by factor and extended linearly.
pub fn apply_word<M: SimplicialModel>(
    model: &M,
    w: &SimplicialWord,
    x: &F2Element<M::Label>,
) -> Result<F2Element<M::Label>, ModelError> {
    let target = w.target_degree(x.degree());
    // Definedness and truncation do not depend on the label.
    if let Some(err) = definedness_error(model, w, x.degree()) {
        return Err(err);
    }
    let mut out = F2Element::zero(target);
    for l in x.support() {
        if let Some(y) = apply_word_to_label(model, w, l)? {
            out.toggle(y);
        }
    }
    Ok(out)
}

fn definedness_error<M: SimplicialModel>(model: &M, w: &SimplicialWord, degree: i64) -> Option<ModelError> {
    let mut d = degree;
    for g in w.factors().iter().rev() {
        if g.index as i64 > d {
            return Some(ModelError::OutOfRange { generator: *g, degree: d });
        }
        d += g.shift();
        if d > model.max_degree() as i64 {
            return Some(ModelError::TruncationOverflow { degree: d, max: model.max_degree() as i64 });
        }
    }
    None
}

/// Evaluates an EM transform on a tensor. Terms whose target has a negative
/// component contribute zero.
pub fn evaluate_em<V: SimplicialModel, W: SimplicialModel>(
    f: &EmTransform,
    v: &V,
    w: &W,
    x: &TensorElement<V::Label, W::Label>,
) -> Result<TensorElement<V::Label, W::Label>, ModelError> {
    let (i, j) = x.bidegree();
    let target = f.target(i, j);
    let mut out = TensorElement::zero(target);
    if target.0 < 0 || target.1 < 0 {
        return Ok(out);
    }
    for t in f.effective_terms_at(i, j).iter() {
        let (lw, rw) = (t.left.to_word(), t.right.to_word());
        for (a, b) in x.support() {
            let la = apply_word_to_label(v, &lw, a)?;
            let rb = apply_word_to_label(w, &rw, b)?;
            if let (Some(la), Some(rb)) = (la, rb) {
                out.toggle(la, rb);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModelKind {
    Delta,
    BoundaryDelta,
    Sphere,
}

/// A simplex as its nondecreasing vertex sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(pub Vec<u8>);

impl Simplex {
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn face(&self, r: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(r);
        Simplex(v)
    }

    pub fn degeneracy(&self, r: usize) -> Simplex {
        let mut v = self.0.clone();
        v.insert(r, v[r]);
        Simplex(v)
    }

    /// Number of distinct vertices.
    pub fn image_size(&self) -> usize {
        self.0.iter().dedup().count()
    }

    /// `s_{i_p} … s_{i_1}` with `i_p > … > i_1` such that this simplex is
    /// the degeneracy word applied to its nondegenerate core.
    pub fn degeneracy_word(&self) -> SimplicialWord {
        let idx: Vec<u32> =
            self.0.windows(2).enumerate().filter(|(_, w)| w[0] == w[1]).map(|(k, _)| k as u32).collect();
        SimplicialWord::degeneracies_applied_in_order(&idx)
    }
}

impl Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `Δ[n]`, `∂Δ[n]` or `S^n`, truncated at `max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialSetModel {
    kind: ModelKind,
    n: usize,
    max_degree: usize,
}

impl SimplicialSetModel {
    pub fn new(kind: ModelKind, n: usize, max_degree: usize) -> Result<Self, ModelError> {
        if n > u8::MAX as usize {
            return Err(ModelError::Bounds(format!("n = {n} too large")));
        }
        if kind == ModelKind::Sphere && n == 0 {
            return Err(ModelError::Bounds("sphere dimension must be at least 1".into()));
        }
        if kind == ModelKind::BoundaryDelta && n == 0 {
            return Err(ModelError::Bounds("boundary of Δ[0] is empty".into()));
        }
        Ok(Self { kind, n, max_degree })
    }

    pub fn delta(n: usize, max_degree: usize) -> Self {
        Self::new(ModelKind::Delta, n, max_degree).expect("valid simplex model")
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn keeps(&self, s: &Simplex) -> bool {
        let full = s.image_size() == self.n + 1;
        match self.kind {
            ModelKind::Delta => true,
            ModelKind::BoundaryDelta => !full,
            ModelKind::Sphere => full,
        }
    }

    /// The top simplex `(0, 1, …, n)`.
    pub fn fundamental(&self) -> Simplex {
        Simplex((0..=self.n as u8).collect())
    }

    /// The image of a `Δ[n]` simplex under the quotient `Δ[n] → S^n`.
    pub fn collapse(s: &Simplex, n: usize) -> Option<Simplex> {
        (s.image_size() == n + 1).then(|| s.clone())
    }
}

pub fn sphere_model(n: usize, max_degree: usize) -> Result<SimplicialSetModel, ModelError> {
    if n < 1 || max_degree < n {
        return Err(ModelError::Bounds(format!(
            "sphere_model needs 1 ≤ n ≤ max_degree, got n = {n}, max_degree = {max_degree}"
        )));
    }
    SimplicialSetModel::new(ModelKind::Sphere, n, max_degree)
}

impl SimplicialModel for SimplicialSetModel {
    type Label = Simplex;

    fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn degree(&self, x: &Simplex) -> usize {
        x.degree()
    }

    fn face(&self, x: &Simplex, r: usize) -> Option<Simplex> {
        let y = x.face(r);
        self.keeps(&y).then_some(y)
    }

    fn degeneracy(&self, x: &Simplex, r: usize) -> Option<Simplex> {
        Some(x.degeneracy(r))
    }

    fn basis(&self, m: usize) -> Vec<Simplex> {
        (0..=self.n as u8).combinations_with_replacement(m + 1).map(Simplex).filter(|s| self.keeps(s)).collect()
    }

    fn label_name(&self, x: &Simplex) -> String {
        match self.kind {
            ModelKind::Sphere => {
                let w = x.degeneracy_word();
                if w.is_identity() {
                    "z".to_string()
                } else {
                    format!("{w} z")
                }
            }
            _ => x.0.iter().map(|v| v.to_string()).collect(),
        }
    }
}

/// A commutative monomial: a sorted multiset of same-degree simplices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<Simplex>);

impl Monomial {
    pub fn polynomial_degree(&self) -> usize {
        self.0.len()
    }

    fn from_factors(mut factors: Vec<Simplex>) -> Self {
        factors.sort();
        Monomial(factors)
    }
}

impl Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `Sym^{1..=P}` of the reduced chains of a simplicial set, degreewise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraModel {
    base: SimplicialSetModel,
    max_poly: usize,
    /// Polynomial degrees kept in `basis`. Faces and degeneracies
    /// preserve polynomial degree, so every range is a subcomplex.
    basis_poly: (usize, usize),
}

pub fn algebra_model(n: usize, max_degree: usize, max_poly: usize) -> Result<AlgebraModel, ModelError> {
    if max_poly < 2 {
        return Err(ModelError::Bounds(format!("polynomial truncation must be at least 2, got {max_poly}")));
    }
    Ok(AlgebraModel { base: sphere_model(n, max_degree)?, max_poly, basis_poly: (1, max_poly) })
}

impl AlgebraModel {
    pub fn base(&self) -> &SimplicialSetModel {
        &self.base
    }

    pub fn max_poly(&self) -> usize {
        self.max_poly
    }

    /// The same algebra with `basis` restricted to polynomial degree `p`.
    pub fn homogeneous_part(&self, p: usize) -> AlgebraModel {
        AlgebraModel { basis_poly: (p, p), ..self.clone() }
    }

    /// The generator `x_σ` for a simplex `σ` of the base.
    pub fn generator(&self, s: Simplex) -> Monomial {
        Monomial(vec![s])
    }

    /// The fundamental class `z` as an element of degree `n`.
    pub fn fundamental_class(&self) -> F2Element<Monomial> {
        F2Element::basis(self.base.n() as i64, self.generator(self.base.fundamental()))
    }

    /// The element `w(z)` for a degeneracy word `w`.
    pub fn degenerate_fundamental(&self, w: &SimplicialWord) -> Result<F2Element<Monomial>, ModelError> {
        apply_word(self, w, &self.fundamental_class())
    }

    pub fn multiply(
        &self,
        x: &F2Element<Monomial>,
        y: &F2Element<Monomial>,
    ) -> Result<F2Element<Monomial>, ModelError> {
        if x.degree() != y.degree() {
            return Err(ModelError::DegreeMismatch(x.degree(), y.degree()));
        }
        let mut out = F2Element::zero(x.degree());
        for a in x.support() {
            for b in y.support() {
                let p = a.polynomial_degree() + b.polynomial_degree();
                if p > self.max_poly {
                    return Err(ModelError::PolynomialOverflow { degree: p, max: self.max_poly });
                }
                let mut f = a.0.clone();
                f.extend(b.0.iter().cloned());
                out.toggle(Monomial::from_factors(f));
            }
        }
        Ok(out)
    }

    /// `μ(x ⊗ y)` summed over a tensor.
    pub fn multiply_tensor(&self, t: &TensorElement<Monomial, Monomial>) -> Result<F2Element<Monomial>, ModelError> {
        let (i, j) = t.bidegree();
        if i != j {
            return Err(ModelError::DegreeMismatch(i, j));
        }
        let mut out = F2Element::zero(i);
        for (a, b) in t.support() {
            out.add_assign(&self.multiply(&F2Element::basis(i, a.clone()), &F2Element::basis(i, b.clone()))?);
        }
        Ok(out)
    }

    /// Monomials of degree `m` with polynomial degree in `poly`.
    pub fn basis_with_poly(&self, m: usize, poly: std::ops::RangeInclusive<usize>) -> Vec<Monomial> {
        let gens = self.base.basis(m);
        let mut out: Vec<Monomial> = poly
            .flat_map(|p| gens.iter().cloned().combinations_with_replacement(p).map(Monomial).collect::<Vec<_>>())
            .collect();
        out.sort();
        out
    }
}

impl SimplicialModel for AlgebraModel {
    type Label = Monomial;

    fn max_degree(&self) -> usize {
        self.base.max_degree()
    }

    fn degree(&self, x: &Monomial) -> usize {
        x.0[0].degree()
    }

    fn face(&self, x: &Monomial, r: usize) -> Option<Monomial> {
        let f: Option<Vec<Simplex>> = x.0.iter().map(|s| self.base.face(s, r)).collect();
        f.map(Monomial::from_factors)
    }

    fn degeneracy(&self, x: &Monomial, r: usize) -> Option<Monomial> {
        let f: Option<Vec<Simplex>> = x.0.iter().map(|s| self.base.degeneracy(s, r)).collect();
        f.map(Monomial::from_factors)
    }

    fn basis(&self, m: usize) -> Vec<Monomial> {
        self.basis_with_poly(m, self.basis_poly.0..=self.basis_poly.1)
    }

    fn label_name(&self, x: &Monomial) -> String {
        x.0.iter().map(|s| self.base.label_name(s).replace(' ', "")).join("·")
    }
}

/// Model dump for golden files.
#[derive(Debug, Clone, Serialize)]
pub struct ModelDump {
    pub max_degree: usize,
    pub degrees: Vec<DegreeDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeDump {
    pub degree: usize,
    pub basis: Vec<String>,
    /// `faces[k][r]` is the label of `d_r` of basis element `k`, or null.
    pub faces: Vec<Vec<Option<String>>>,
    /// Degeneracy tables, omitted in the top degree.
    pub degeneracies: Vec<Vec<String>>,
}

pub fn dump_model<M: SimplicialModel>(model: &M) -> ModelDump {
    let degrees = (0..=model.max_degree())
        .map(|m| {
            let basis = model.basis(m);
            let faces = basis
                .iter()
                .map(|x| {
                    if m == 0 {
                        return Vec::new();
                    }
                    (0..=m).map(|r| model.face(x, r).map(|y| model.label_name(&y))).collect()
                })
                .collect();
            let degeneracies = if m < model.max_degree() {
                basis
                    .iter()
                    .map(|x| {
                        (0..=m)
                            .map(|r| model.degeneracy(x, r).map(|y| model.label_name(&y)).unwrap_or_default())
                            .collect()
                    })
                    .collect()
            } else {
                Vec::new()
            };
            DegreeDump { degree: m, basis: basis.iter().map(|x| model.label_name(x)).collect(), faces, degeneracies }
        })
        .collect();
    ModelDump { max_degree: model.max_degree(), degrees }
}
