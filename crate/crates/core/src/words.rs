//! Formal words in the simplicial generators `d_r` and `s_r`.
//!
//! A [`SimplicialWord`] is written the way composites are written by hand:
//! the rightmost factor acts first, so `"s3 s1 d0"` means `s_3 ∘ s_1 ∘ d_0`.
//! Words carry no source degree. Definedness and the canonical
//! degeneracies-then-faces form are per-degree queries answered by
//! [`normalize`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    Face,
    Degeneracy,
}

/// A single face `d_r` or degeneracy `s_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub index: u32,
}

impl Generator {
    pub const fn face(index: u32) -> Self {
        Self { kind: GeneratorKind::Face, index }
    }

    pub const fn degeneracy(index: u32) -> Self {
        Self { kind: GeneratorKind::Degeneracy, index }
    }

    pub fn is_face(&self) -> bool {
        self.kind == GeneratorKind::Face
    }

    /// Change in simplicial degree caused by this generator.
    pub fn shift(&self) -> i64 {
        match self.kind {
            GeneratorKind::Face => -1,
            GeneratorKind::Degeneracy => 1,
        }
    }

    pub fn suspend(&self) -> Self {
        Self { kind: self.kind, index: self.index + 1 }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::Face => write!(f, "d{}", self.index),
            GeneratorKind::Degeneracy => write!(f, "s{}", self.index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("{generator} is not defined on degree {degree}")]
    OutOfRange { generator: Generator, degree: i64 },
    #[error("cannot parse word `{0}`")]
    Parse(String),
}

/// A finite composite of generators; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplicialWord {
    factors: Vec<Generator>,
}

impl SimplicialWord {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Factors listed in written order (leftmost applies last).
    pub fn new(factors: Vec<Generator>) -> Self {
        Self { factors }
    }

    pub fn face(r: u32) -> Self {
        Self::new(vec![Generator::face(r)])
    }

    pub fn degeneracy(r: u32) -> Self {
        Self::new(vec![Generator::degeneracy(r)])
    }

    /// `s_{idx[last]} … s_{idx[0]}`: the first entry is applied first.
    pub fn degeneracies_applied_in_order(indices: &[u32]) -> Self {
        Self::new(indices.iter().rev().map(|&r| Generator::degeneracy(r)).collect())
    }

    pub fn factors(&self) -> &[Generator] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree_shift(&self) -> i64 {
        self.factors.iter().map(Generator::shift).sum()
    }

    pub fn target_degree(&self, source_degree: i64) -> i64 {
        source_degree + self.degree_shift()
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &SimplicialWord) -> SimplicialWord {
        let mut factors = Vec::with_capacity(self.len() + other.len());
        factors.extend_from_slice(&self.factors);
        factors.extend_from_slice(&other.factors);
        SimplicialWord { factors }
    }

    /// Adds one to every generator index.
    pub fn suspend(&self) -> SimplicialWord {
        SimplicialWord { factors: self.factors.iter().map(Generator::suspend).collect() }
    }

    /// Every generator index lies within the degree it is applied to.
    pub fn is_defined_on(&self, source_degree: i64) -> bool {
        self.check_defined(source_degree).is_ok()
    }

    fn check_defined(&self, source_degree: i64) -> Result<(), WordError> {
        let mut degree = source_degree;
        for g in self.factors.iter().rev() {
            if i64::from(g.index) > degree {
                return Err(WordError::OutOfRange { generator: *g, degree });
            }
            degree += g.shift();
        }
        Ok(())
    }
}

pub fn compose(w1: &SimplicialWord, w2: &SimplicialWord) -> SimplicialWord {
    w1.compose(w2)
}

pub fn suspend_word(w: &SimplicialWord) -> SimplicialWord {
    w.suspend()
}

pub fn target_degree(w: &SimplicialWord, source_degree: i64) -> i64 {
    w.target_degree(source_degree)
}

impl fmt::Display for SimplicialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("id");
        }
        for (k, g) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for SimplicialWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed == "id" || trimmed.is_empty() {
            return Ok(Self::identity());
        }
        let mut factors = Vec::new();
        for tok in trimmed.split_whitespace() {
            let (head, digits) = tok.split_at(1);
            let index: u32 = digits.parse().map_err(|_| WordError::Parse(s.to_string()))?;
            let g = match head {
                "d" => Generator::face(index),
                "s" => Generator::degeneracy(index),
                _ => return Err(WordError::Parse(s.to_string())),
            };
            factors.push(g);
        }
        Ok(Self { factors })
    }
}

/// Canonical form `s_{i_p} … s_{i_1} d_{j_1} … d_{j_q}` of a word at a
/// fixed source degree, with `i_p > … > i_1` and `j_1 < … < j_q`.
///
/// A word landing in degree −1 (only possible as `d_0` on degree 0 at the
/// very end) keeps its face data: its value is the zero map, but its
/// suspension is not.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm {
    source: i64,
    degeneracies: Vec<u32>,
    faces: Vec<u32>,
}

impl NormalForm {
    pub fn identity(source: i64) -> Self {
        Self { source, degeneracies: Vec::new(), faces: Vec::new() }
    }

    pub fn source_degree(&self) -> i64 {
        self.source
    }

    pub fn target_degree(&self) -> i64 {
        self.source + self.degeneracies.len() as i64 - self.faces.len() as i64
    }

    /// Strictly decreasing, in written order.
    pub fn degeneracy_indices(&self) -> &[u32] {
        &self.degeneracies
    }

    /// Strictly increasing, in written order.
    pub fn face_indices(&self) -> &[u32] {
        &self.faces
    }

    /// The form kills every simplex: its target degree is negative.
    pub fn is_null(&self) -> bool {
        self.target_degree() < 0
    }

    pub fn is_identity(&self) -> bool {
        self.degeneracies.is_empty() && self.faces.is_empty()
    }

    pub fn to_word(&self) -> SimplicialWord {
        let mut factors: Vec<Generator> = self.degeneracies.iter().map(|&r| Generator::degeneracy(r)).collect();
        factors.extend(self.faces.iter().map(|&r| Generator::face(r)));
        SimplicialWord { factors }
    }

    pub fn suspend(&self) -> NormalForm {
        NormalForm {
            source: self.source + 1,
            degeneracies: self.degeneracies.iter().map(|r| r + 1).collect(),
            faces: self.faces.iter().map(|r| r + 1).collect(),
        }
    }

    /// `self ∘ inner`, where `self` starts in the target degree of `inner`.
    pub fn after(&self, inner: &NormalForm) -> Result<NormalForm, WordError> {
        debug_assert_eq!(self.source, inner.target_degree());
        normalize(&self.to_word().compose(&inner.to_word()), inner.source)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

/// Outcome of [`normalize_counting`]: the form plus the number of oriented
/// rewrite steps used to reach it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub form: NormalForm,
    pub rewrite_steps: usize,
}

pub fn normalize(w: &SimplicialWord, source_degree: i64) -> Result<NormalForm, WordError> {
    normalize_counting(w, source_degree).map(|n| n.form)
}

/// Rewrites `w` right to left with the simplicial identities, oriented as
///
/// ```text
/// s_i s_j -> s_{j+1} s_i      (i <= j)
/// d_i s_j -> s_{j-1} d_i      (i < j)
/// d_i s_j -> id               (i = j, j+1)
/// d_i s_j -> s_j d_{i-1}      (i > j+1)
/// d_i d_j -> d_j d_{i+1}      (i >= j)
/// ```
///
/// The accumulated suffix is always in normal form, and each new factor is
/// pushed through it.
pub fn normalize_counting(w: &SimplicialWord, source_degree: i64) -> Result<Normalization, WordError> {
    w.check_defined(source_degree)?;

    // Degeneracies are kept in application order (increasing), faces in
    // written order (increasing).
    let mut degens: Vec<u32> = Vec::new();
    let mut faces: Vec<u32> = Vec::new();
    let mut steps = 0usize;

    for g in w.factors.iter().rev() {
        match g.kind {
            GeneratorKind::Degeneracy => {
                // Push s_r from the left through s_{i_p} > … > i_1.
                let r = g.index;
                let mut pos = degens.len();
                while pos > 0 && r <= degens[pos - 1] {
                    degens[pos - 1] += 1;
                    pos -= 1;
                    steps += 1;
                }
                degens.insert(pos, r);
            }
            GeneratorKind::Face => {
                let mut r = g.index;
                let mut cancelled = false;
                // Walk from the last-applied degeneracy inward.
                let mut pos = degens.len();
                while pos > 0 {
                    let j = degens[pos - 1];
                    steps += 1;
                    if r < j {
                        degens[pos - 1] = j - 1;
                        pos -= 1;
                    } else if r == j || r == j + 1 {
                        degens.remove(pos - 1);
                        // The degeneracies applied after the removed one
                        // already had their indices adjusted.
                        cancelled = true;
                        break;
                    } else {
                        r -= 1;
                        pos -= 1;
                    }
                }
                if cancelled {
                    continue;
                }
                let mut k = 0;
                while k < faces.len() && r >= faces[k] {
                    r += 1;
                    k += 1;
                    steps += 1;
                }
                faces.insert(k, r);
            }
        }
    }

    degens.reverse();
    Ok(Normalization { form: NormalForm { source: source_degree, degeneracies: degens, faces }, rewrite_steps: steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> SimplicialWord {
        s.parse().unwrap()
    }

    fn nf(s: &str, n: i64) -> String {
        normalize(&w(s), n).unwrap().to_string()
    }

    #[test]
    fn compose_concatenates() {
        assert_eq!(compose(&w("d0"), &w("s0")), w("d0 s0"));
        assert_eq!(compose(&SimplicialWord::identity(), &w("s1 d2")), w("s1 d2"));
        assert_eq!(compose(&w("s1"), &w("d2")).to_string(), "s1 d2");
        assert_eq!(w("s1 d2").degree_shift(), 0);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(nf("d1 s0", 2), "id");
        assert_eq!(nf("d3 s0", 3), "s0 d2");
        assert_eq!(nf("s0 s0", 1), "s1 s0");
        assert_eq!(nf("d0 d0", 2), "d0 d1");
        assert_eq!(nf("d1 d0", 2), "d0 d2");
        assert_eq!(nf("s0 d0", 3), "s0 d0");
        assert_eq!(nf("d0 s1 s0", 1), "s0");
    }

    #[test]
    fn out_of_range_is_reported() {
        let err = normalize(&w("d3"), 2).unwrap_err();
        assert_eq!(err, WordError::OutOfRange { generator: Generator::face(3), degree: 2 });
        // s_0 cannot act on the (zero) degree -1 space
        assert!(normalize(&w("s0 d0"), 0).is_err());
        assert!(normalize(&w("d2 s1"), 0).is_err());
    }

    #[test]
    fn negative_target_is_null_but_keeps_faces() {
        let form = normalize(&w("d0"), 0).unwrap();
        assert!(form.is_null());
        assert_eq!(form.target_degree(), -1);
        assert_eq!(form.suspend().to_string(), "d1");
        assert!(!form.suspend().is_null());
    }

    #[test]
    fn target_degree_examples() {
        assert_eq!(target_degree(&w("s0"), 2), 3);
        assert_eq!(target_degree(&w("d1 d0"), 5), 3);
        assert_eq!(target_degree(&w("d0"), 0), -1);
    }

    #[test]
    fn suspension_examples() {
        assert_eq!(suspend_word(&w("s0 d1")), w("s1 d2"));
        assert_eq!(suspend_word(&SimplicialWord::identity()), SimplicialWord::identity());
        assert_eq!(suspend_word(&w("d0 d0")), w("d1 d1"));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("s3 s1 d0").factors().len(), 3);
        assert_eq!(w("id").to_string(), "id");
        assert_eq!(w(" s3  s1 d0 ").to_string(), "s3 s1 d0");
        assert!("x1".parse::<SimplicialWord>().is_err());
        assert!("s".parse::<SimplicialWord>().is_err());
    }

    #[test]
    fn normal_form_of_normal_form_is_unchanged() {
        let form = normalize(&w("s2 s0 d1 d3"), 4).unwrap();
        assert_eq!(normalize(&form.to_word(), 4).unwrap(), form);
    }

    fn arb_word() -> impl Strategy<Value = (SimplicialWord, i64)> {
        (0i64..5, proptest::collection::vec((any::<bool>(), 0u32..7), 0..=10)).prop_map(|(source, gens)| {
            let factors = gens
                .into_iter()
                .map(|(face, r)| if face { Generator::face(r) } else { Generator::degeneracy(r) })
                .collect();
            (SimplicialWord::new(factors), source)
        })
    }

    proptest! {
        #[test]
        fn suspension_transfers_definedness((w, source) in arb_word()) {
            prop_assert_eq!(w.is_defined_on(source), w.suspend().is_defined_on(source + 1));
            if let Ok(nf) = normalize(&w, source) {
                prop_assert_eq!(normalize(&w.suspend(), source + 1).unwrap(), nf.suspend());
                prop_assert_eq!(normalize(&nf.to_word(), source).unwrap(), nf);
            }
        }
    }
}
