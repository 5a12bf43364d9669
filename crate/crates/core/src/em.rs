//! Eilenberg-MacLane type transformations.
//!
//! An [`EmTransform`] is an infinite family `F_{i,j}: V_i ⊗ W_j → V_k ⊗ W_l`
//! with `(k, l)` given by an affine [`IndexFn`]. Each component is a mod-2
//! sum of tensor pairs of simplicial words, materialized lazily at a
//! requested bidegree by [`EmTransform::terms_at`].
//!
//! Terms are kept formally even when the target has a negative component:
//! such a component is the zero map, but its suspension is not. Comparison
//! ([`em_equal`]) and evaluation drop them.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::words::{normalize, NormalForm, SimplicialWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmError {
    #[error("index functions differ: {0} vs {1}")]
    IndexMismatch(IndexFn, IndexFn),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("unknown transform `{0}`")]
    UnknownTransform(String),
}

/// One affine component `(i, j) ↦ a·i + b·j + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Affine {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Affine {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn eval(&self, i: i64, j: i64) -> i64 {
        self.a * i + self.b * j + self.c
    }
}

/// Affine index function `(i, j) ↦ (first(i, j), second(i, j))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexFn {
    pub first: Affine,
    pub second: Affine,
}

impl IndexFn {
    pub const fn new(first: Affine, second: Affine) -> Self {
        Self { first, second }
    }

    /// `(i + di, j + dj)`.
    pub const fn shift(di: i64, dj: i64) -> Self {
        Self::new(Affine::new(1, 0, di), Affine::new(0, 1, dj))
    }

    /// `(i + j − k, i + j − k)`.
    pub const fn diagonal(k: i64) -> Self {
        Self::new(Affine::new(1, 1, -k), Affine::new(1, 1, -k))
    }

    pub fn eval(&self, i: i64, j: i64) -> (i64, i64) {
        (self.first.eval(i, j), self.second.eval(i, j))
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &IndexFn) -> IndexFn {
        let sub = |outer: &Affine| Affine {
            a: outer.a * inner.first.a + outer.b * inner.second.a,
            b: outer.a * inner.first.b + outer.b * inner.second.b,
            c: outer.a * inner.first.c + outer.b * inner.second.c + outer.c,
        };
        IndexFn::new(sub(&self.first), sub(&self.second))
    }

    /// `I_{SF}(i, j) = (1, 1) + I_F(i − 1, j − 1)`.
    pub fn suspend(&self) -> IndexFn {
        let sus = |f: &Affine| Affine { a: f.a, b: f.b, c: f.c - f.a - f.b + 1 };
        IndexFn::new(sus(&self.first), sus(&self.second))
    }

    /// `I_{TF}(i, j) = swap(I_F(j, i))`.
    pub fn twist(&self) -> IndexFn {
        let flip = |f: &Affine| Affine { a: f.b, b: f.a, c: f.c };
        IndexFn::new(flip(&self.second), flip(&self.first))
    }
}

impl fmt::Display for IndexFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: &Affine| {
            let mut s = String::new();
            for (coef, var) in [(x.a, "i"), (x.b, "j")] {
                match coef {
                    0 => {}
                    1 => s.push_str(&format!("{}{var}", if s.is_empty() { "" } else { "+" })),
                    c => s.push_str(&format!("{}{c}{var}", if s.is_empty() || c < 0 { "" } else { "+" })),
                }
            }
            if x.c != 0 || s.is_empty() {
                if s.is_empty() || x.c < 0 {
                    s.push_str(&x.c.to_string());
                } else {
                    s.push_str(&format!("+{}", x.c));
                }
            }
            s
        };
        write!(f, "({}, {})", show(&self.first), show(&self.second))
    }
}

/// `left ⊗ right`, both in normal form at the source bidegree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorWord {
    pub left: NormalForm,
    pub right: NormalForm,
}

impl TensorWord {
    pub fn new(left: NormalForm, right: NormalForm) -> Self {
        Self { left, right }
    }

    pub fn suspend(&self) -> Self {
        Self::new(self.left.suspend(), self.right.suspend())
    }

    pub fn swap(&self) -> Self {
        Self::new(self.right.clone(), self.left.clone())
    }

    pub fn is_null(&self) -> bool {
        self.left.is_null() || self.right.is_null()
    }

    /// `self ∘ inner`; defined whenever `inner` lands where `self` starts.
    pub fn after(&self, inner: &TensorWord) -> TensorWord {
        let left = self.left.after(&inner.left).expect("composable normal forms");
        let right = self.right.after(&inner.right).expect("composable normal forms");
        TensorWord::new(left, right)
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ {}", self.left, self.right)
    }
}

/// A mod-2 multiset of tensor words; inserting twice cancels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermSet {
    terms: BTreeSet<TensorWord>,
}

impl TermSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn toggle(&mut self, t: TensorWord) {
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    pub fn add_all(&mut self, other: TermSet) {
        for t in other.terms {
            self.toggle(t);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &TensorWord> {
        self.terms.iter()
    }

    pub fn contains(&self, t: &TensorWord) -> bool {
        self.terms.contains(t)
    }

    /// Terms that act as nonzero maps.
    pub fn effective(&self) -> TermSet {
        TermSet { terms: self.terms.iter().filter(|t| !t.is_null()).cloned().collect() }
    }

    /// Symmetric difference.
    pub fn difference(&self, other: &TermSet) -> TermSet {
        TermSet { terms: self.terms.symmetric_difference(&other.terms).cloned().collect() }
    }
}

impl FromIterator<TensorWord> for TermSet {
    fn from_iter<I: IntoIterator<Item = TensorWord>>(iter: I) -> Self {
        let mut set = TermSet::new();
        for t in iter {
            set.toggle(t);
        }
        set
    }
}

impl IntoIterator for TermSet {
    type Item = TensorWord;
    type IntoIter = std::collections::btree_set::IntoIter<TensorWord>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Primitive {
    /// Shuffle map `D`.
    Shuffle,
    /// `φ_k`: identity at `(k, k)`, zero elsewhere.
    Phi(i64),
    /// `∂ ⊗ id`.
    BoundaryLeft,
    /// `id ⊗ ∂`.
    BoundaryRight,
    /// `δ = Σ_{r ≤ min(i, j)} d_r ⊗ d_r`.
    Diagonal,
    /// A fixed pair of words, zero wherever a word is undefined.
    Pair(SimplicialWord, SimplicialWord),
}

#[derive(Debug)]
enum Node {
    Primitive(Primitive),
    Sum(Vec<EmTransform>),
    Compose(EmTransform, EmTransform),
    Suspend(EmTransform),
    Twist(EmTransform),
    /// `D^k` through the bidegree case split of its recursive definition.
    HigherEm(u32),
}

/// A lazily materialized Eilenberg-MacLane type transformation.
#[derive(Debug, Clone)]
pub struct EmTransform {
    index: IndexFn,
    node: Arc<Node>,
}

impl EmTransform {
    fn from_node(index: IndexFn, node: Node) -> Self {
        Self { index, node: Arc::new(node) }
    }

    pub fn index_fn(&self) -> IndexFn {
        self.index
    }

    pub fn target(&self, i: i64, j: i64) -> (i64, i64) {
        self.index.eval(i, j)
    }

    pub fn primitive(p: Primitive) -> Self {
        let index = match &p {
            Primitive::Shuffle => IndexFn::diagonal(0),
            Primitive::Phi(k) => IndexFn::diagonal(*k),
            Primitive::BoundaryLeft => IndexFn::shift(-1, 0),
            Primitive::BoundaryRight => IndexFn::shift(0, -1),
            Primitive::Diagonal => IndexFn::shift(-1, -1),
            Primitive::Pair(l, r) => IndexFn::shift(l.degree_shift(), r.degree_shift()),
        };
        Self::from_node(index, Node::Primitive(p))
    }

    /// The zero transform with the given index function.
    pub fn zero(index: IndexFn) -> Self {
        Self::from_node(index, Node::Sum(Vec::new()))
    }

    /// Formal terms at source bidegree `(i, j)`; empty if `i < 0` or `j < 0`.
    pub fn terms_at(&self, i: i64, j: i64) -> TermSet {
        if i < 0 || j < 0 {
            return TermSet::new();
        }
        match &*self.node {
            Node::Primitive(p) => primitive_terms(p, i, j),
            Node::Sum(parts) => {
                let mut acc = TermSet::new();
                for p in parts {
                    acc.add_all(p.terms_at(i, j));
                }
                acc
            }
            Node::Compose(outer, inner) => {
                let inner_terms = inner.terms_at(i, j);
                if inner_terms.is_empty() {
                    return TermSet::new();
                }
                let (k, l) = inner.target(i, j);
                let outer_terms = outer.terms_at(k, l);
                let mut acc = TermSet::new();
                for g in inner_terms.iter() {
                    for f in outer_terms.iter() {
                        acc.toggle(f.after(g));
                    }
                }
                acc
            }
            Node::Suspend(f) => f.terms_at(i - 1, j - 1).into_iter().map(|t| t.suspend()).collect(),
            Node::Twist(f) => f.terms_at(j, i).into_iter().map(|t| t.swap()).collect(),
            Node::HigherEm(k) => higher_em_terms(*k, i, j),
        }
    }

    /// Terms at `(i, j)` that act nontrivially (negative targets dropped).
    pub fn effective_terms_at(&self, i: i64, j: i64) -> TermSet {
        let (k, l) = self.target(i, j);
        if k < 0 || l < 0 {
            return TermSet::new();
        }
        self.terms_at(i, j).effective()
    }
}

impl std::ops::Add for &EmTransform {
    type Output = EmTransform;

    /// Panics on an index mismatch; use [`em_add`] to get a `Result`.
    fn add(self, rhs: &EmTransform) -> EmTransform {
        em_add(self, rhs).expect("sum of EM transforms with different index functions")
    }
}

impl std::ops::Mul for &EmTransform {
    type Output = EmTransform;

    /// Composition, `self ∘ rhs`.
    fn mul(self, rhs: &EmTransform) -> EmTransform {
        em_compose(self, rhs)
    }
}

fn primitive_terms(p: &Primitive, i: i64, j: i64) -> TermSet {
    let face_pair = |left: Option<u32>, right: Option<u32>| {
        let side = |r: Option<u32>, n: i64| match r {
            Some(r) => normalize(&SimplicialWord::face(r), n).expect("face in range"),
            None => NormalForm::identity(n),
        };
        TensorWord::new(side(left, i), side(right, j))
    };
    match p {
        Primitive::Shuffle => shuffle_terms(i as usize, j as usize).collect(),
        Primitive::Phi(k) => {
            if i == *k && j == *k {
                std::iter::once(TensorWord::new(NormalForm::identity(i), NormalForm::identity(j))).collect()
            } else {
                TermSet::new()
            }
        }
        Primitive::BoundaryLeft => (0..=i as u32).map(|r| face_pair(Some(r), None)).collect(),
        Primitive::BoundaryRight => (0..=j as u32).map(|r| face_pair(None, Some(r))).collect(),
        Primitive::Diagonal => (0..=i.min(j) as u32).map(|r| face_pair(Some(r), Some(r))).collect(),
        Primitive::Pair(l, r) => match (normalize(l, i), normalize(r, j)) {
            (Ok(a), Ok(b)) => std::iter::once(TensorWord::new(a, b)).collect(),
            _ => TermSet::new(),
        },
    }
}

/// All `(i, j)`-shuffles `(μ, ν)` of `{0, …, i+j−1}`, `|μ| = i`, ordered
/// lexicographically by `μ`.
pub fn shuffles(i: usize, j: usize) -> Vec<(Vec<u32>, Vec<u32>)> {
    let all: Vec<u32> = (0..(i + j) as u32).collect();
    all.iter()
        .copied()
        .combinations(i)
        .map(|mu| {
            let nu = all.iter().copied().filter(|x| !mu.contains(x)).collect();
            (mu, nu)
        })
        .collect()
}

fn shuffle_terms(i: usize, j: usize) -> impl Iterator<Item = TensorWord> {
    shuffles(i, j).into_iter().map(move |(mu, nu)| {
        // V_i gets the j degeneracies indexed by ν, W_j the i indexed by μ.
        let left = SimplicialWord::degeneracies_applied_in_order(&nu);
        let right = SimplicialWord::degeneracies_applied_in_order(&mu);
        TensorWord::new(
            normalize(&left, i as i64).expect("shuffle degeneracies are in range"),
            normalize(&right, j as i64).expect("shuffle degeneracies are in range"),
        )
    })
}

/// `D^k_{i,j}` by the five-case split:
///
/// ```text
/// k even, i,j ≥ 1:   S(D^{k-1}_{i-1,j-1}) + D^{k-1}_{i-1,j}(d_0 ⊗ id)
/// k odd,  i,j ≥ 1:   S(D^{k-1}_{i-1,j-1}) + D^{k-1}_{i,j-1}(id ⊗ d_0)
/// k even, i ≥ 1, j = 0:  D^{k-1}_{i-1,j}(d_0 ⊗ id)
/// k odd,  i = 0, j ≥ 1:  D^{k-1}_{i,j-1}(id ⊗ d_0)
/// otherwise 0
/// ```
///
/// with `D^0_{i,j} = S(D)_{i,j+1}(id ⊗ s_0) = S(D_{i-1,j})(id ⊗ s_0)`.
fn higher_em_terms(k: u32, i: i64, j: i64) -> TermSet {
    if i < 0 || j < 0 {
        return TermSet::new();
    }
    let nf = |s: &str, n: i64| normalize(&s.parse().expect("valid word"), n).expect("in range");
    if k == 0 {
        if i < 1 {
            return TermSet::new();
        }
        let s0 = TensorWord::new(NormalForm::identity(i), nf("s0", j));
        return shuffle_terms((i - 1) as usize, j as usize).map(|t| t.suspend().after(&s0)).collect();
    }
    let even = k.is_multiple_of(2);
    let mut acc = TermSet::new();
    if i >= 1 && j >= 1 {
        acc.add_all(higher_em_terms(k - 1, i - 1, j - 1).into_iter().map(|t| t.suspend()).collect());
    }
    if even && i >= 1 {
        let d0 = TensorWord::new(nf("d0", i), NormalForm::identity(j));
        for t in higher_em_terms(k - 1, i - 1, j) {
            acc.toggle(t.after(&d0));
        }
    }
    if !even && j >= 1 {
        let d0 = TensorWord::new(NormalForm::identity(i), nf("d0", j));
        for t in higher_em_terms(k - 1, i, j - 1) {
            acc.toggle(t.after(&d0));
        }
    }
    acc
}

pub fn em_add(f: &EmTransform, g: &EmTransform) -> Result<EmTransform, EmError> {
    em_sum(&[f.clone(), g.clone()])
}

/// Sum of several transforms sharing one index function.
pub fn em_sum(parts: &[EmTransform]) -> Result<EmTransform, EmError> {
    let Some(first) = parts.first() else {
        panic!("em_sum of an empty list has no index function; use EmTransform::zero");
    };
    for p in &parts[1..] {
        if p.index != first.index {
            return Err(EmError::IndexMismatch(first.index, p.index));
        }
    }
    Ok(EmTransform::from_node(first.index, Node::Sum(parts.to_vec())))
}

/// `f ∘ g`.
pub fn em_compose(f: &EmTransform, g: &EmTransform) -> EmTransform {
    EmTransform::from_node(f.index.after(&g.index), Node::Compose(f.clone(), g.clone()))
}

/// `𝒯F`.
pub fn em_twist(f: &EmTransform) -> EmTransform {
    EmTransform::from_node(f.index.twist(), Node::Twist(f.clone()))
}

/// `𝒮F`.
pub fn em_suspend(f: &EmTransform) -> EmTransform {
    EmTransform::from_node(f.index.suspend(), Node::Suspend(f.clone()))
}

/// `𝒮^n F`.
pub fn em_suspend_n(f: &EmTransform, n: u32) -> EmTransform {
    (0..n).fold(f.clone(), |acc, _| em_suspend(&acc))
}

pub fn shuffle_d() -> EmTransform {
    EmTransform::primitive(Primitive::Shuffle)
}

pub fn phi(k: i64) -> EmTransform {
    EmTransform::primitive(Primitive::Phi(k))
}

pub fn boundary_left() -> EmTransform {
    EmTransform::primitive(Primitive::BoundaryLeft)
}

pub fn boundary_right() -> EmTransform {
    EmTransform::primitive(Primitive::BoundaryRight)
}

pub fn diagonal_delta() -> EmTransform {
    EmTransform::primitive(Primitive::Diagonal)
}

/// `left ⊗ right` for fixed words, e.g. `pair("d0", "id")`.
pub fn pair(left: &str, right: &str) -> EmTransform {
    EmTransform::primitive(Primitive::Pair(left.parse().expect("valid word"), right.parse().expect("valid word")))
}

pub fn identity() -> EmTransform {
    pair("id", "id")
}

pub fn face0_left() -> EmTransform {
    pair("d0", "id")
}

pub fn face0_right() -> EmTransform {
    pair("id", "d0")
}

pub fn face0_both() -> EmTransform {
    pair("d0", "d0")
}

pub fn degen0_left() -> EmTransform {
    pair("s0", "id")
}

pub fn degen0_right() -> EmTransform {
    pair("id", "s0")
}

/// `D^k` from its bidegree case split.
pub fn build_dk(k: u32) -> EmTransform {
    EmTransform::from_node(IndexFn::diagonal(i64::from(k)), Node::HigherEm(k))
}

/// `D^k` assembled from suspension, composition and sum:
/// `D^0 = 𝒮(D)(id ⊗ s_0)` and
/// `D^k = 𝒮(D^{k−1}) + D^{k−1}(d_0 ⊗ id)` (k even) or
/// `+ D^{k−1}(id ⊗ d_0)` (k odd).
pub fn build_dk_algebraic(k: u32) -> EmTransform {
    let mut d = em_compose(&em_suspend(&shuffle_d()), &degen0_right());
    for level in 1..=k {
        let face = if level % 2 == 0 { face0_left() } else { face0_right() };
        d = em_add(&em_suspend(&d), &em_compose(&d, &face)).expect("matching index functions");
    }
    d
}

/// `A^0 = D^0 + 𝒯D^0 + D` and, for `k ≥ 1`,
/// `A^k = D^k + 𝒯D^k + δD^{k−1} + D^{k−1}(∂ ⊗ id) + D^{k−1}(id ⊗ ∂)`.
pub fn build_ak(k: u32) -> EmTransform {
    let dk = build_dk(k);
    if k == 0 {
        return em_sum(&[dk.clone(), em_twist(&dk), shuffle_d()]).expect("index (i+j, i+j)");
    }
    let prev = build_dk(k - 1);
    em_sum(&[
        dk.clone(),
        em_twist(&dk),
        em_compose(&diagonal_delta(), &prev),
        em_compose(&prev, &boundary_left()),
        em_compose(&prev, &boundary_right()),
    ])
    .expect("index (i+j-k, i+j-k)")
}

/// Bidegrees `(i, j)` with `i, j ≥ 0` and `min_total ≤ i + j ≤ max_total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    pub max_total: i64,
    pub min_total: i64,
}

impl Window {
    pub fn up_to(max_total: i64) -> Self {
        Self { max_total, min_total: 0 }
    }

    pub fn at_least(self, min_total: i64) -> Self {
        Self { min_total, ..self }
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.min_total.max(0)..=self.max_total).flat_map(|total| (0..=total).map(move |i| (i, total - i)))
    }
}

/// A bidegree at which two transforms act differently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub bidegree: (i64, i64),
    /// Terms present on exactly one side after cancellation.
    pub difference: TermSet,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {:?}: ", self.bidegree)?;
        let shown: Vec<String> = self.difference.iter().take(4).map(|t| t.to_string()).collect();
        write!(f, "{}", shown.join(" + "))?;
        if self.difference.len() > 4 {
            write!(f, " + … ({} terms)", self.difference.len())?;
        }
        Ok(())
    }
}

/// Compares `f` and `g` as natural transformations at one bidegree.
pub fn em_equal_at(f: &EmTransform, g: &EmTransform, i: i64, j: i64) -> Option<Witness> {
    let diff = f.effective_terms_at(i, j).difference(&g.effective_terms_at(i, j));
    (!diff.is_empty()).then_some(Witness { bidegree: (i, j), difference: diff })
}

/// Decides `f = g` on every bidegree of the window. Distinct normal-form
/// pairs act independently on `ι_i ⊗ ι_j ∈ Δ[i]_i ⊗ Δ[j]_j`, so
/// syntactic comparison after cancellation is complete.
pub fn em_equal(f: &EmTransform, g: &EmTransform, window: Window) -> Result<Result<(), Witness>, EmError> {
    if f.index != g.index {
        return Err(EmError::IndexMismatch(f.index, g.index));
    }
    for (i, j) in window.bidegrees() {
        if let Some(w) = em_equal_at(f, g, i, j) {
            return Ok(Err(w));
        }
    }
    Ok(Ok(()))
}

/// JSON dump of a transform at one bidegree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransformDump {
    pub bidegree: [i64; 2],
    pub target: [i64; 2],
    pub terms: Vec<[String; 2]>,
}

pub fn dump_at(f: &EmTransform, i: i64, j: i64) -> TransformDump {
    let (k, l) = f.target(i, j);
    TransformDump {
        bidegree: [i, j],
        target: [k, l],
        terms: f.terms_at(i, j).iter().map(|t| [t.left.to_string(), t.right.to_string()]).collect(),
    }
}

/// Resolves names like `D`, `D3`, `A2`, `phi1`, `delta`, `d0|id`.
pub fn transform_by_name(name: &str) -> Result<EmTransform, EmError> {
    let numbered = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<u32>().ok());
    let t = match name {
        "D" => shuffle_d(),
        "delta" => diagonal_delta(),
        "boundary_left" => boundary_left(),
        "boundary_right" => boundary_right(),
        "face0_left" => face0_left(),
        "face0_right" => face0_right(),
        "degen0_right" => degen0_right(),
        _ => {
            if let Some(k) = numbered("D") {
                build_dk(k)
            } else if let Some(k) = numbered("A") {
                build_ak(k)
            } else if let Some(k) = numbered("phi") {
                phi(i64::from(k))
            } else if let Some((l, r)) = name.split_once('|') {
                match (l.parse::<SimplicialWord>(), r.parse::<SimplicialWord>()) {
                    (Ok(l), Ok(r)) => EmTransform::primitive(Primitive::Pair(l, r)),
                    _ => return Err(EmError::UnknownTransform(name.to_string())),
                }
            } else {
                return Err(EmError::UnknownTransform(name.to_string()));
            }
        }
    };
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn term(l: &str, r: &str, i: i64, j: i64) -> TensorWord {
        TensorWord::new(normalize(&l.parse().unwrap(), i).unwrap(), normalize(&r.parse().unwrap(), j).unwrap())
    }

    fn set(items: &[(&str, &str)], i: i64, j: i64) -> TermSet {
        items.iter().map(|(l, r)| term(l, r, i, j)).collect()
    }

    #[test]
    fn index_fn_algebra() {
        assert_eq!(IndexFn::diagonal(0).suspend(), IndexFn::diagonal(1));
        assert_eq!(IndexFn::shift(-1, 0).suspend(), IndexFn::shift(-1, 0));
        assert_eq!(IndexFn::shift(-1, 0).twist(), IndexFn::shift(0, -1));
        assert_eq!(IndexFn::shift(-1, 0).after(&IndexFn::shift(1, 0)), IndexFn::shift(0, 0));
        assert_eq!(IndexFn::diagonal(3).after(&IndexFn::shift(0, -1)).eval(2, 3), (1, 1));
        assert_eq!(IndexFn::diagonal(1).to_string(), "(i+j-1, i+j-1)");
    }

    #[test]
    fn add_cancels_and_checks_index() {
        let d = shuffle_d();
        let zero = em_add(&d, &d).unwrap();
        for (i, j) in Window::up_to(4).bidegrees() {
            assert!(zero.terms_at(i, j).is_empty());
        }
        assert!(em_add(&d, &phi(0)).unwrap().terms_at(0, 0).is_empty());
        assert!(matches!(em_add(&face0_left(), &face0_right()), Err(EmError::IndexMismatch(..))));
    }

    #[test]
    fn compose_examples() {
        let c = em_compose(&face0_left(), &degen0_left());
        assert_eq!(em_equal(&c, &identity(), Window::up_to(6)).unwrap(), Ok(()));
        let z = em_compose(&shuffle_d(), &EmTransform::zero(IndexFn::shift(0, 0)));
        assert!(z.terms_at(2, 2).is_empty());
    }

    #[test]
    fn twist_examples() {
        let t = em_twist(&face0_left());
        assert_eq!(t.index_fn(), face0_right().index_fn());
        assert_eq!(em_equal(&t, &face0_right(), Window::up_to(6)).unwrap(), Ok(()));
        assert_eq!(em_twist(&shuffle_d()).terms_at(1, 1), set(&[("s1", "s0"), ("s0", "s1")], 1, 1));
    }

    #[test]
    fn shuffle_examples() {
        let d = shuffle_d();
        assert_eq!(d.terms_at(0, 3), set(&[("s2 s1 s0", "id")], 0, 3));
        assert_eq!(d.terms_at(1, 1), set(&[("s1", "s0"), ("s0", "s1")], 1, 1));
        assert_eq!(d.terms_at(2, 2).len(), 6);
        assert_eq!(d.terms_at(0, 0), set(&[("id", "id")], 0, 0));
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(phi(2).terms_at(2, 2), set(&[("id", "id")], 2, 2));
        assert!(phi(2).terms_at(2, 3).is_empty());
        assert_eq!(diagonal_delta().terms_at(1, 2), set(&[("d0", "d0"), ("d1", "d1")], 1, 2));
        let b = boundary_left();
        assert_eq!(b.terms_at(0, 3), set(&[("d0", "id")], 0, 3));
        assert_eq!(b.target(0, 3), (-1, 3));
        assert!(b.effective_terms_at(0, 3).is_empty());
        assert_eq!(boundary_right().terms_at(2, 1).len(), 2);
        // s0 d0 is undefined on degree 0
        assert!(pair("id", "s0 d0").terms_at(2, 0).is_empty());
    }

    #[test]
    fn suspension_examples() {
        for k in 0..3 {
            assert_eq!(em_equal(&em_suspend(&phi(k)), &phi(k + 1), Window::up_to(8)).unwrap(), Ok(()));
        }
        let lhs = em_suspend(&diagonal_delta());
        let rhs = em_add(&diagonal_delta(), &face0_both()).unwrap();
        assert_eq!(em_equal(&lhs, &rhs, Window::up_to(6)).unwrap(), Ok(()));
        let s = em_suspend(&degen0_right());
        assert_eq!(s.terms_at(2, 3), set(&[("id", "s1")], 2, 3));
        assert!(s.terms_at(0, 3).is_empty());
        assert!(s.terms_at(3, 0).is_empty());
    }

    #[test]
    fn dk_small_values() {
        assert!(build_dk(0).terms_at(0, 0).is_empty());
        assert_eq!(build_dk(0).terms_at(1, 0), set(&[("id", "s0")], 1, 0));
        assert_eq!(build_dk(1).terms_at(1, 1), set(&[("id", "s0 d0")], 1, 1));
    }

    #[test]
    fn dk_case_split_matches_algebraic_build() {
        for k in 0..=4 {
            let w = em_equal(&build_dk(k), &build_dk_algebraic(k), Window::up_to(8)).unwrap();
            assert_eq!(w, Ok(()), "k = {k}");
            for (i, j) in Window::up_to(7).bidegrees() {
                assert_eq!(build_dk(k).terms_at(i, j), build_dk_algebraic(k).terms_at(i, j));
            }
        }
    }

    #[test]
    fn a0_values() {
        let a0 = build_ak(0);
        assert_eq!(a0.terms_at(0, 0), set(&[("id", "id")], 0, 0));
        for (i, j) in Window::up_to(6).at_least(1).bidegrees() {
            assert!(a0.terms_at(i, j).is_empty(), "({i},{j})");
        }
    }

    #[test]
    fn a2_values() {
        let a2 = build_ak(2);
        assert_eq!(a2.effective_terms_at(2, 2), set(&[("id", "id")], 2, 2));
        for (i, j) in [(3, 1), (1, 3), (2, 3), (3, 2), (3, 3)] {
            assert!(a2.effective_terms_at(i, j).is_empty(), "({i},{j})");
        }
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(transform_by_name("D2").unwrap().index_fn(), IndexFn::diagonal(2));
        assert_eq!(transform_by_name("d0|id").unwrap().index_fn(), IndexFn::shift(-1, 0));
        assert!(transform_by_name("nope").is_err());
        let dump = dump_at(&shuffle_d(), 1, 1);
        assert_eq!(dump.target, [2, 2]);
        assert_eq!(
            serde_json::to_string(&dump).unwrap(),
            r#"{"bidegree":[1,1],"target":[2,2],"terms":[["s0","s1"],["s1","s0"]]}"#
        );
    }

    proptest! {
        #[test]
        fn suspension_of_a_zero_sum_is_zero(k in 0u32..3, i in 0i64..5, j in 0i64..5) {
            let f = build_dk(k);
            let zero = em_add(&f, &f).unwrap();
            prop_assert!(em_suspend(&zero).effective_terms_at(i, j).is_empty());
            prop_assert!(em_twist(&zero).effective_terms_at(i, j).is_empty());
        }

        #[test]
        fn suspension_and_twist_respect_sums(i in 0i64..5, j in 0i64..5) {
            let (f, g) = (build_dk(1), em_twist(&build_dk(1)));
            let sum = em_add(&f, &g).unwrap();
            let s_sum = em_add(&em_suspend(&f), &em_suspend(&g)).unwrap();
            prop_assert!(em_equal_at(&em_suspend(&sum), &s_sum, i, j).is_none());
            let t_sum = em_add(&em_twist(&f), &em_twist(&g)).unwrap();
            prop_assert!(em_equal_at(&em_twist(&sum), &t_sum, i, j).is_none());
        }

        #[test]
        fn suspension_and_twist_respect_composites(i in 0i64..5, j in 0i64..5) {
            let pairs = [
                (diagonal_delta(), shuffle_d()),
                (shuffle_d(), face0_left()),
                (build_dk(1), phi(2)),
            ];
            for (f, g) in &pairs {
                let fg = em_compose(f, g);
                prop_assert!(em_equal_at(&em_suspend(&fg), &em_compose(&em_suspend(f), &em_suspend(g)), i, j).is_none());
                prop_assert!(em_equal_at(&em_twist(&fg), &em_compose(&em_twist(f), &em_twist(g)), i, j).is_none());
            }
        }
    }

    #[test]
    fn twist_is_an_involution() {
        for k in 0..3 {
            let f = build_dk(k);
            for (i, j) in [(0, 0), (1, 2), (3, 1), (2, 2)] {
                assert!(em_equal_at(&em_twist(&em_twist(&f)), &f, i, j).is_none());
            }
        }
        assert_eq!(em_twist(&shuffle_d()).index_fn(), IndexFn::diagonal(0));
    }
}
