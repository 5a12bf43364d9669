//! Associated and normalized chain complexes of a model, and their homology.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::f2::{F2Matrix, F2Vector, RowEchelon};
use crate::models::{F2Element, SimplicialModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("element of degree {0} is not a cycle")]
    NotACycle(i64),
    #[error("element of degree {0} does not lie in the complex")]
    NotInComplex(i64),
    #[error("degree {degree} outside 0..={max}")]
    DegreeOutOfRange { degree: i64, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    /// `∂ = Σ d_r` on all of `C_m`.
    Associated,
    /// `N_m = ∩_{r ≥ 1} ker d_r` with differential `d_0`.
    Normalized,
}

#[derive(Debug, Clone)]
struct Degree<L> {
    labels: Vec<L>,
    index: HashMap<L, usize>,
    /// Basis of the complex in this degree, in label coordinates. For the
    /// normalized complex this is a reduced echelon basis.
    basis: RowEchelon,
    /// Row `k` is the differential of basis vector `k`, in the basis
    /// coordinates one degree down. Empty in degree 0.
    differential: F2Matrix,
}

/// A chain complex over F2 truncated at `max_degree`.
#[derive(Debug, Clone)]
pub struct ChainComplexF2<L> {
    kind: ComplexKind,
    degrees: Vec<Degree<L>>,
}

/// Face `d_r` of every label, in label coordinates of degree `m - 1`.
fn face_rows<M: SimplicialModel>(
    model: &M,
    labels: &[M::Label],
    m: usize,
    faces: &[usize],
    down: &HashMap<M::Label, usize>,
) -> Vec<F2Vector> {
    let width = down.len();
    labels
        .par_iter()
        .map(|x| {
            let mut row = F2Vector::zeros(width * faces.len());
            for (block, &r) in faces.iter().enumerate() {
                if let Some(y) = model.face(x, r) {
                    row.flip(block * width + down[&y]);
                }
            }
            debug_assert_eq!(model.degree(x), m);
            row
        })
        .collect()
}

fn sum_blocks(v: &F2Vector, width: usize) -> F2Vector {
    let mut out = F2Vector::zeros(width);
    for k in v.ones() {
        out.flip(k % width);
    }
    out
}

impl<L: Clone + Ord + std::hash::Hash + std::fmt::Debug + Send + Sync> ChainComplexF2<L> {
    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn labels(&self, m: usize) -> &[L] {
        &self.degrees[m].labels
    }

    /// Dimension of the complex in degree `m`.
    pub fn dim(&self, m: usize) -> usize {
        self.degrees[m].basis.rank()
    }

    /// Basis vectors in label coordinates.
    pub fn basis(&self, m: usize) -> Vec<F2Vector> {
        self.degrees[m].basis.basis().cloned().collect()
    }

    pub fn differential(&self, m: usize) -> &F2Matrix {
        &self.degrees[m].differential
    }

    /// Rank of the differential out of degree `m`.
    pub fn rank_d(&self, m: usize) -> usize {
        if m == 0 {
            0
        } else {
            self.degrees[m].differential.rank()
        }
    }

    /// `dim H_m`, defined for `m < max_degree`.
    pub fn homology_rank(&self, m: usize) -> Result<usize, ChainError> {
        if m >= self.max_degree() {
            return Err(ChainError::DegreeOutOfRange { degree: m as i64, max: self.max_degree().saturating_sub(1) });
        }
        Ok(self.dim(m) - self.rank_d(m) - self.rank_d(m + 1))
    }

    fn check_degree(&self, degree: i64) -> Result<usize, ChainError> {
        if degree < 0 || degree as usize > self.max_degree() {
            return Err(ChainError::DegreeOutOfRange { degree, max: self.max_degree() });
        }
        Ok(degree as usize)
    }

    pub fn to_vector(&self, x: &F2Element<L>) -> Result<F2Vector, ChainError> {
        let m = self.check_degree(x.degree())?;
        let deg = &self.degrees[m];
        let ones: Option<Vec<usize>> = x.support().iter().map(|l| deg.index.get(l).copied()).collect();
        ones.map(|o| F2Vector::from_indices(deg.labels.len(), o)).ok_or(ChainError::NotInComplex(x.degree()))
    }

    pub fn to_element(&self, m: usize, v: &F2Vector) -> F2Element<L> {
        F2Element::from_labels(m as i64, v.ones().map(|k| self.degrees[m].labels[k].clone()))
    }

    /// Coordinates of `x` in the complex basis of its degree.
    pub fn coordinates(&self, x: &F2Element<L>) -> Result<F2Vector, ChainError> {
        let v = self.to_vector(x)?;
        self.degrees[x.degree() as usize].basis.coordinates(&v).ok_or(ChainError::NotInComplex(x.degree()))
    }

    fn apply_differential(&self, m: usize, coords: &F2Vector) -> F2Vector {
        let d = &self.degrees[m].differential;
        let mut out = F2Vector::zeros(d.ncols());
        for k in coords.ones() {
            out.xor_assign(&d.rows()[k]);
        }
        out
    }

    pub fn is_cycle(&self, x: &F2Element<L>) -> Result<bool, ChainError> {
        let c = self.coordinates(x)?;
        Ok(x.degree() == 0 || self.apply_differential(x.degree() as usize, &c).is_zero())
    }

    /// Whether `x` is the differential of something one degree up.
    pub fn is_boundary(&self, x: &F2Element<L>) -> Result<bool, ChainError> {
        let m = x.degree() as usize;
        if !self.is_cycle(x)? {
            return Err(ChainError::NotACycle(x.degree()));
        }
        if m >= self.max_degree() {
            return Err(ChainError::DegreeOutOfRange { degree: m as i64 + 1, max: self.max_degree() });
        }
        let c = self.coordinates(x)?;
        let image = RowEchelon::new(self.degrees[m + 1].differential.rows().iter().cloned(), self.dim(m));
        Ok(image.contains(&c))
    }

    /// Whether two cycles represent the same homology class.
    pub fn same_class(&self, z1: &F2Element<L>, z2: &F2Element<L>) -> Result<bool, ChainError> {
        for z in [z1, z2] {
            if !self.is_cycle(z)? {
                return Err(ChainError::NotACycle(z.degree()));
            }
        }
        if z1.degree() != z2.degree() {
            return Ok(z1.is_zero() && z2.is_zero());
        }
        self.is_boundary(&z1.add(z2))
    }

    /// Boundaries `d x` for each basis vector `x` of degree `m + 1`.
    pub fn boundaries(&self, m: usize) -> Vec<F2Element<L>> {
        let basis: Vec<F2Vector> = self.basis(m);
        self.degrees[m + 1]
            .differential
            .rows()
            .iter()
            .map(|row| {
                let mut v = F2Vector::zeros(self.degrees[m].labels.len());
                for k in row.ones() {
                    v.xor_assign(&basis[k]);
                }
                self.to_element(m, &v)
            })
            .collect()
    }

    pub fn betti_table(&self) -> Vec<BettiRow> {
        (0..self.max_degree())
            .map(|m| BettiRow {
                degree: m,
                dim: self.dim(m),
                rank_d: self.rank_d(m),
                betti: self.homology_rank(m).expect("below the top degree"),
            })
            .collect()
    }
}

fn label_index<L: Clone + std::hash::Hash + Eq>(labels: &[L]) -> HashMap<L, usize> {
    labels.iter().cloned().enumerate().map(|(k, l)| (l, k)).collect()
}

/// `C_m` with `∂ = Σ_r d_r`, for `m ≤ max_degree`.
pub fn associated_complex<M: SimplicialModel>(model: &M, max_degree: usize) -> ChainComplexF2<M::Label> {
    let max_degree = max_degree.min(model.max_degree());
    let labels: Vec<Vec<M::Label>> = (0..=max_degree).map(|m| model.basis(m)).collect();
    let indices: Vec<_> = labels.iter().map(|l| label_index(l)).collect();
    let degrees = (0..=max_degree)
        .map(|m| {
            let n = labels[m].len();
            let differential = if m == 0 {
                F2Matrix::new(0, Vec::new())
            } else {
                let faces: Vec<usize> = (0..=m).collect();
                let width = labels[m - 1].len();
                let rows = face_rows(model, &labels[m], m, &faces, &indices[m - 1])
                    .iter()
                    .map(|r| sum_blocks(r, width))
                    .collect();
                F2Matrix::new(width, rows)
            };
            Degree {
                labels: labels[m].clone(),
                index: indices[m].clone(),
                basis: RowEchelon::new((0..n).map(|k| F2Vector::from_indices(n, [k])), n),
                differential,
            }
        })
        .collect();
    ChainComplexF2 { kind: ComplexKind::Associated, degrees }
}

/// `N_m = ∩_{1 ≤ r ≤ m} ker d_r` with differential `d_0`.
pub fn normalized_complex<M: SimplicialModel>(model: &M, max_degree: usize) -> ChainComplexF2<M::Label> {
    let max_degree = max_degree.min(model.max_degree());
    let labels: Vec<Vec<M::Label>> = (0..=max_degree).map(|m| model.basis(m)).collect();
    let indices: Vec<_> = labels.iter().map(|l| label_index(l)).collect();
    let bases: Vec<RowEchelon> = (0..=max_degree)
        .into_par_iter()
        .map(|m| {
            let n = labels[m].len();
            if m == 0 {
                return RowEchelon::new((0..n).map(|k| F2Vector::from_indices(n, [k])), n);
            }
            let faces: Vec<usize> = (1..=m).collect();
            let rows = face_rows(model, &labels[m], m, &faces, &indices[m - 1]);
            let width = labels[m - 1].len() * faces.len();
            RowEchelon::new(F2Matrix::new(width, rows).left_kernel(), n)
        })
        .collect();
    let degrees = (0..=max_degree)
        .map(|m| {
            let differential = if m == 0 {
                F2Matrix::new(0, Vec::new())
            } else {
                let face0 = face_rows(model, &labels[m], m, &[0], &indices[m - 1]);
                let rows = bases[m]
                    .basis()
                    .map(|b| {
                        let mut image = F2Vector::zeros(labels[m - 1].len());
                        for k in b.ones() {
                            image.xor_assign(&face0[k]);
                        }
                        bases[m - 1].coordinates(&image).expect("d_0 preserves normalized chains")
                    })
                    .collect();
                F2Matrix::new(bases[m - 1].rank(), rows)
            };
            Degree { labels: labels[m].clone(), index: indices[m].clone(), basis: bases[m].clone(), differential }
        })
        .collect();
    ChainComplexF2 { kind: ComplexKind::Normalized, degrees }
}

/// Cycle test straight from the face maps: every face vanishes
/// (normalized) or the face sum vanishes (associated).
pub fn is_cycle<M: SimplicialModel>(model: &M, z: &F2Element<M::Label>, kind: ComplexKind) -> bool {
    if z.degree() <= 0 {
        return true;
    }
    let m = z.degree() as usize;
    let face = |r: usize| {
        let mut out = F2Element::zero(z.degree() - 1);
        for x in z.support() {
            if let Some(y) = model.face(x, r) {
                out.toggle(y);
            }
        }
        out
    };
    match kind {
        ComplexKind::Normalized => (0..=m).all(|r| face(r).is_zero()),
        ComplexKind::Associated => (0..=m).fold(F2Element::zero(z.degree() - 1), |acc, r| acc.add(&face(r))).is_zero(),
    }
}

/// A basis of the normalized cycles `Z_m` (every face zero) inside the span
/// of `labels`, all of degree `m`. Vectors come out in reduced echelon form.
pub fn cycle_basis<M: SimplicialModel>(model: &M, labels: &[M::Label], m: usize) -> Vec<F2Element<M::Label>> {
    let n = labels.len();
    if m == 0 {
        return labels.iter().map(|l| F2Element::basis(0, l.clone())).collect();
    }
    let down = model.basis(m - 1);
    let mut index = label_index(&down);
    // faces of a restricted basis can leave `down`; give them fresh columns
    for x in labels {
        for r in 0..=m {
            if let Some(y) = model.face(x, r) {
                let next = index.len();
                index.entry(y).or_insert(next);
            }
        }
    }
    let faces: Vec<usize> = (0..=m).collect();
    let rows = face_rows(model, labels, m, &faces, &index);
    let ker = RowEchelon::new(F2Matrix::new(index.len() * faces.len(), rows).left_kernel(), n);
    ker.basis().map(|v| F2Element::from_labels(m as i64, v.ones().map(|k| labels[k].clone()))).collect()
}

/// Faces `d_r z` for `0 ≤ r ≤ degree(z)`.
pub fn faces<M: SimplicialModel>(model: &M, z: &F2Element<M::Label>) -> Vec<F2Element<M::Label>> {
    (0..=z.degree().max(0) as usize)
        .map(|r| {
            let mut out = F2Element::zero(z.degree() - 1);
            if z.degree() >= 1 {
                for x in z.support() {
                    if let Some(y) = model.face(x, r) {
                        out.toggle(y);
                    }
                }
            }
            out
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiRow {
    pub degree: usize,
    pub dim: usize,
    pub rank_d: usize,
    pub betti: usize,
}

pub fn betti_csv(rows: &[BettiRow]) -> String {
    to_csv(rows)
}

fn to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("plain records serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv")
}

/// Associated table with the normalized Betti numbers alongside.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparedRow {
    pub degree: usize,
    pub dim: usize,
    pub rank_d: usize,
    pub betti: usize,
    pub normalized_dim: usize,
    pub normalized_rank_d: usize,
    pub normalized_betti: usize,
    pub agree: bool,
}

pub fn compare_homology<M: SimplicialModel>(model: &M, max_degree: usize) -> Vec<ComparedRow> {
    let (c, n) = rayon::join(|| associated_complex(model, max_degree), || normalized_complex(model, max_degree));
    c.betti_table()
        .into_iter()
        .zip(n.betti_table())
        .map(|(a, b)| ComparedRow {
            degree: a.degree,
            dim: a.dim,
            rank_d: a.rank_d,
            betti: a.betti,
            normalized_dim: b.dim,
            normalized_rank_d: b.rank_d,
            normalized_betti: b.betti,
            agree: a.betti == b.betti,
        })
        .collect()
}

pub fn compared_csv(rows: &[ComparedRow]) -> String {
    to_csv(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{algebra_model, sphere_model, ModelKind, Simplex, SimplicialSetModel};

    fn composite_is_zero<L: Clone + Ord + std::hash::Hash + std::fmt::Debug + Send + Sync>(
        c: &ChainComplexF2<L>,
    ) -> bool {
        (2..=c.max_degree()).all(|m| {
            let d2 = c.differential(m);
            let d1 = c.differential(m - 1);
            d2.rows().iter().all(|row| {
                let mut acc = F2Vector::zeros(d1.ncols());
                for k in row.ones() {
                    acc.xor_assign(&d1.rows()[k]);
                }
                acc.is_zero()
            })
        })
    }

    #[test]
    fn edge_boundary() {
        let d1 = SimplicialSetModel::delta(1, 3);
        let c = associated_complex(&d1, 3);
        let edge = c.labels(1).iter().position(|s| *s == Simplex(vec![0, 1])).unwrap();
        let row = &c.differential(1).rows()[edge];
        let hit: Vec<_> = row.ones().map(|k| c.labels(0)[k].clone()).collect();
        assert_eq!(hit, vec![Simplex(vec![0]), Simplex(vec![1])]);
    }

    #[test]
    fn squares_vanish() {
        let models = [
            SimplicialSetModel::new(ModelKind::Delta, 2, 4).unwrap(),
            SimplicialSetModel::new(ModelKind::BoundaryDelta, 2, 4).unwrap(),
            sphere_model(2, 4).unwrap(),
        ];
        for m in &models {
            assert!(composite_is_zero(&associated_complex(m, 4)));
            assert!(composite_is_zero(&normalized_complex(m, 4)));
        }
        let a = algebra_model(2, 4, 2).unwrap();
        assert!(composite_is_zero(&associated_complex(&a, 4)));
        assert!(composite_is_zero(&normalized_complex(&a, 4)));
    }

    #[test]
    fn delta1_normalized() {
        let d1 = SimplicialSetModel::delta(1, 3);
        let n = normalized_complex(&d1, 3);
        assert_eq!(n.dim(1), 1);
        let b = n.to_element(1, &n.basis(1)[0]);
        let expected = F2Element::from_labels(1, [Simplex(vec![0, 1]), Simplex(vec![0, 0])]);
        assert_eq!(b, expected);
        assert_eq!(n.homology_rank(0).unwrap(), 1);
        assert_eq!(n.homology_rank(1).unwrap(), 0);
        assert!(n.homology_rank(3).is_err());
    }

    #[test]
    fn sphere2_normalized() {
        let s2 = sphere_model(2, 4).unwrap();
        let n = normalized_complex(&s2, 4);
        assert_eq!(n.dim(2), 1);
        assert_eq!(n.to_element(2, &n.basis(2)[0]), F2Element::basis(2, s2.fundamental()));
        assert_eq!(n.homology_rank(2).unwrap(), 1);
        let c = associated_complex(&s2, 4);
        assert_eq!(c.homology_rank(2).unwrap(), 1);
    }

    #[test]
    fn cycles_and_classes() {
        let s2 = sphere_model(2, 4).unwrap();
        let z = F2Element::basis(2, s2.fundamental());
        assert!(is_cycle(&s2, &z, ComplexKind::Normalized));
        let s0z = F2Element::basis(3, s2.fundamental().degeneracy(0));
        assert!(!is_cycle(&s2, &s0z, ComplexKind::Normalized));
        let n = normalized_complex(&s2, 4);
        assert!(n.same_class(&z, &z).unwrap());
        assert!(!n.same_class(&z, &F2Element::zero(2)).unwrap());
        assert_eq!(n.same_class(&s0z, &s0z), Err(ChainError::NotInComplex(3)));
        let c = associated_complex(&s2, 4);
        assert!(!c.same_class(&z, &F2Element::zero(2)).unwrap());
        // s0 z has ∂ = z + z + d2 s0 z = s0 d1 z = 0 in the associated complex
        assert!(c.is_cycle(&s0z).unwrap());
        assert!(c.is_boundary(&s0z).unwrap());
    }

    #[test]
    fn not_a_cycle() {
        let d1 = SimplicialSetModel::delta(1, 3);
        let c = associated_complex(&d1, 3);
        let e = F2Element::basis(1, Simplex(vec![0, 1]));
        assert_eq!(c.same_class(&e, &e), Err(ChainError::NotACycle(1)));
    }

    #[test]
    fn betti_tables_agree() {
        for m in [
            SimplicialSetModel::delta(1, 4),
            SimplicialSetModel::delta(2, 4),
            SimplicialSetModel::new(ModelKind::BoundaryDelta, 2, 4).unwrap(),
            sphere_model(3, 4).unwrap(),
        ] {
            assert!(compare_homology(&m, 4).iter().all(|r| r.agree), "{m:?}");
        }
        let rows = compare_homology(&SimplicialSetModel::new(ModelKind::BoundaryDelta, 2, 4).unwrap(), 4);
        assert_eq!(rows.iter().map(|r| r.betti).collect::<Vec<_>>(), vec![1, 1, 0, 0]);
        let csv = betti_csv(&associated_complex(&SimplicialSetModel::delta(1, 3), 3).betti_table());
        assert_eq!(csv, "degree,dim,rank_d,betti\n0,2,0,1\n1,3,1,0\n2,4,2,0\n");
    }

    #[test]
    fn rank_nullity() {
        let a = algebra_model(2, 4, 2).unwrap();
        for c in [associated_complex(&a, 4), normalized_complex(&a, 4)] {
            for m in 1..=4 {
                let d = c.differential(m);
                assert_eq!(d.rank() + d.left_kernel().len(), c.dim(m));
            }
        }
    }
}
