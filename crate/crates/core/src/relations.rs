//! Named identities between EM type transformations, checked symbolically
//! bidegree by bidegree.

use rayon::prelude::*;
use serde::Serialize;

use crate::em::{
    boundary_left, boundary_right, build_ak, build_dk, build_dk_algebraic, degen0_right, diagonal_delta, em_add,
    em_compose, em_equal_at, em_sum, em_suspend, face0_both, face0_left, face0_right, identity, pair, phi, shuffle_d,
    EmError, EmTransform, Window,
};
use crate::words::{normalize, NormalForm, SimplicialWord};

/// `lhs = rhs`, asserted on bidegrees with `i + j ≥ min_total`.
#[derive(Debug, Clone)]
pub struct Identity {
    pub label: String,
    pub lhs: EmTransform,
    pub rhs: EmTransform,
    pub min_total: i64,
}

impl Identity {
    fn new(label: impl Into<String>, lhs: EmTransform, rhs: EmTransform) -> Self {
        Self { label: label.into(), lhs, rhs, min_total: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BidegreeResult {
    pub identity: String,
    pub bidegree: (i64, i64),
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub name: String,
    pub max_total: i64,
    pub bidegrees_checked: usize,
    pub pass: bool,
    pub results: Vec<BidegreeResult>,
}

impl RelationReport {
    pub fn first_failure(&self) -> Option<&BidegreeResult> {
        self.results.iter().find(|r| !r.pass)
    }
}

/// Transforms plugged into the "for any F" relations.
fn sample_transforms() -> Vec<(&'static str, EmTransform)> {
    vec![
        ("D", shuffle_d()),
        ("D^0", build_dk(0)),
        ("D^1", build_dk(1)),
        ("D^2", build_dk(2)),
        ("delta", diagonal_delta()),
    ]
}

fn add(f: &EmTransform, g: &EmTransform) -> EmTransform {
    em_add(f, g).expect("catalog sums share index functions")
}

/// The identities behind a catalog key. `d0-intertwining` is word-level
/// and has no EM identities.
pub fn identities(name: &str) -> Result<Vec<Identity>, EmError> {
    let numbered = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<u32>().ok());
    let ids = match name {
        "simp0" => {
            vec![Identity::new("(d0⊗id)(s0⊗id) = id⊗id", em_compose(&face0_left(), &pair("s0", "id")), identity())]
        }
        "simp1" => sample_transforms()
            .into_iter()
            .map(|(fname, f)| {
                let sf = em_suspend(&f);
                Identity::new(
                    format!("S{fname}·S(∂⊗id) + S{fname}·(d0⊗id) = S{fname}·(∂⊗id)"),
                    add(&em_compose(&sf, &em_suspend(&boundary_left())), &em_compose(&sf, &face0_left())),
                    em_compose(&sf, &boundary_left()),
                )
            })
            .collect(),
        "simp2" => vec![Identity::new(
            "(id⊗∂)(id⊗d0) = (id⊗d0)(id⊗∂) + id⊗d0d0",
            em_compose(&boundary_right(), &face0_right()),
            add(&em_compose(&face0_right(), &boundary_right()), &pair("id", "d0 d0")),
        )],
        "simp3" => vec![Identity::new(
            "(id⊗∂)(id⊗s0) = (id⊗s0)(id⊗∂) + id⊗s0d0",
            em_compose(&boundary_right(), &degen0_right()),
            add(&em_compose(&degen0_right(), &boundary_right()), &pair("id", "s0 d0")),
        )],
        "simp4" => vec![Identity::new(
            "S(δ) = δ + d0⊗d0",
            em_suspend(&diagonal_delta()),
            add(&diagonal_delta(), &face0_both()),
        )],
        "simp5" => sample_transforms()
            .into_iter()
            .map(|(fname, f)| {
                Identity::new(
                    format!("(d0⊗d0)S{fname} = {fname}(d0⊗d0)"),
                    em_compose(&face0_both(), &em_suspend(&f)),
                    em_compose(&f, &face0_both()),
                )
            })
            .collect(),
        "D-chain-map" => {
            let d = shuffle_d();
            let lhs = em_sum(&[
                em_compose(&diagonal_delta(), &d),
                em_compose(&d, &boundary_left()),
                em_compose(&d, &boundary_right()),
            ])
            .expect("index (i+j-1, i+j-1)");
            let zero = EmTransform::zero(lhs.index_fn());
            vec![Identity::new("δD + D(∂⊗id) + D(id⊗∂) = 0", lhs, zero)]
        }
        "dwyer-0" => vec![Identity::new(
            "D^0 + TD^0T = D + φ_0",
            add(&build_dk(0), &crate::em::em_twist(&build_dk(0))),
            add(&shuffle_d(), &phi(0)),
        )],
        _ => {
            if let Some(k) = numbered("dwyer-") {
                let mut id = Identity::new(format!("A^{k} = φ_{k}"), build_ak(k), phi(k.into()));
                id.min_total = 2 * i64::from(k);
                vec![id]
            } else if let Some(k) = numbered("lemma3-").filter(|&k| k >= 1) {
                vec![ak_recursion_identity(k)]
            } else if let Some(k) = numbered("dk-def-") {
                vec![Identity::new(
                    format!("D^{k} case split = recursive definition"),
                    build_dk(k),
                    build_dk_algebraic(k),
                )]
            } else {
                return Err(EmError::UnknownRelation(name.to_string()));
            }
        }
    };
    Ok(ids)
}

/// `A^k = S(A^{k−1}) + A^{k−1}(id⊗d0)` for even `k`, `(d0⊗id)` for odd.
pub fn ak_recursion_identity(k: u32) -> Identity {
    let prev = build_ak(k - 1);
    let face = if k.is_multiple_of(2) { face0_right() } else { face0_left() };
    Identity::new(
        format!("A^{k} = S(A^{}) + A^{}({})", k - 1, k - 1, if k.is_multiple_of(2) { "id⊗d0" } else { "d0⊗id" }),
        build_ak(k),
        add(&em_suspend(&prev), &em_compose(&prev, &face)),
    )
}

/// Runs a catalog relation on every bidegree with `i + j ≤ max_total`.
pub fn check_relation(name: &str, max_total: i64) -> Result<RelationReport, EmError> {
    if name == "d0-intertwining" {
        return Ok(check_d0_intertwining(max_total));
    }
    let ids = identities(name)?;
    let mut jobs = Vec::new();
    for (n, id) in ids.iter().enumerate() {
        for bd in Window::up_to(max_total).at_least(id.min_total).bidegrees() {
            jobs.push((n, bd));
        }
    }
    let results: Vec<BidegreeResult> = jobs
        .par_iter()
        .map(|&(n, (i, j))| {
            let id = &ids[n];
            let witness = em_equal_at(&id.lhs, &id.rhs, i, j);
            BidegreeResult {
                identity: id.label.clone(),
                bidegree: (i, j),
                pass: witness.is_none(),
                witness: witness.map(|w| w.to_string()),
            }
        })
        .collect();
    Ok(report(name, max_total, results))
}

fn report(name: &str, max_total: i64, results: Vec<BidegreeResult>) -> RelationReport {
    RelationReport {
        name: name.to_string(),
        max_total,
        bidegrees_checked: results.len(),
        pass: results.iter().all(|r| r.pass),
        results,
    }
}

/// Every normal form with source `n` and target `m`, `n, m ≥ 0`.
pub fn all_normal_forms(n: u32, m: u32) -> Vec<NormalForm> {
    use itertools::Itertools;
    // Faces drop `n - r` vertices of [n] and degeneracies repeat `m - r`
    // of the remaining `r + 1`, for an image of size `r + 1`.
    let mut out = Vec::new();
    for r in 0..=n.min(m) {
        for faces in (0..=n).combinations((n - r) as usize) {
            for degens in (0..m).combinations((m - r) as usize) {
                let mut factors: Vec<_> =
                    degens.iter().rev().map(|&x| crate::words::Generator::degeneracy(x)).collect();
                factors.extend(faces.iter().map(|&x| crate::words::Generator::face(x)));
                out.push(normalize(&SimplicialWord::new(factors), i64::from(n)).expect("canonical words are defined"));
            }
        }
    }
    out
}

/// `d_0 ∘ S(w) = w ∘ d_0` at source degree `n + 1`, for every normal form
/// `w` with source `n` and target `m`, `n + m ≤ max_total`.
pub fn check_d0_intertwining(max_total: i64) -> RelationReport {
    let d0 = SimplicialWord::face(0);
    let pairs: Vec<(u32, u32)> =
        (0..=max_total.max(0) as u32).flat_map(|total| (0..=total).map(move |n| (n, total - n))).collect();
    let results = pairs
        .par_iter()
        .map(|&(n, m)| {
            let mut witness = None;
            for w in all_normal_forms(n, m) {
                let word = w.to_word();
                let lhs = normalize(&d0.compose(&word.suspend()), i64::from(n) + 1);
                let rhs = normalize(&word.compose(&d0), i64::from(n) + 1);
                if lhs != rhs {
                    witness = Some(format!("w = {word}"));
                    break;
                }
            }
            BidegreeResult {
                identity: "d0·S(w) = w·d0".to_string(),
                bidegree: (i64::from(n), i64::from(m)),
                pass: witness.is_none(),
                witness,
            }
        })
        .collect();
    report("d0-intertwining", max_total, results)
}

/// Catalog groups used by the driver.
pub fn group(name: &str, max_k: u32) -> Option<Vec<String>> {
    let simp = ["simp0", "simp1", "simp2", "simp3", "simp4", "simp5", "d0-intertwining"];
    let names: Vec<String> = match name {
        "simp" => simp.iter().map(|s| s.to_string()).collect(),
        "dwyer" => (0..=max_k).map(|k| format!("dwyer-{k}")).collect(),
        "lemma3" => (1..=max_k).map(|k| format!("lemma3-{k}")).collect(),
        "chainmap" => vec!["D-chain-map".to_string()],
        "all" => {
            let mut all: Vec<String> = simp.iter().map(|s| s.to_string()).collect();
            all.push("D-chain-map".to_string());
            all.extend((0..=max_k).map(|k| format!("dk-def-{k}")));
            all.extend((0..=max_k).map(|k| format!("dwyer-{k}")));
            all.extend((1..=max_k).map(|k| format!("lemma3-{k}")));
            all
        }
        _ => return None,
    };
    Some(names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_relation() {
        assert!(matches!(check_relation("simp9", 4), Err(EmError::UnknownRelation(_))));
        assert!(matches!(check_relation("lemma3-0", 4), Err(EmError::UnknownRelation(_))));
    }

    #[test]
    fn simp0_passes() {
        let r = check_relation("simp0", 6).unwrap();
        assert!(r.pass);
        assert_eq!(r.bidegrees_checked, 28);
    }

    #[test]
    fn normal_form_enumeration_counts_monotone_maps() {
        // monotone maps [m] -> [n]: C(n + m + 1, m + 1)
        assert_eq!(all_normal_forms(2, 1).len(), 6);
        assert_eq!(all_normal_forms(1, 2).len(), 4);
        assert_eq!(all_normal_forms(3, 3).len(), 35);
    }

    #[test]
    fn a_broken_identity_reports_a_witness() {
        let id = Identity::new("bad", shuffle_d(), phi(0));
        let w = em_equal_at(&id.lhs, &id.rhs, 1, 1).unwrap();
        assert_eq!(w.bidegree, (1, 1));
        assert_eq!(w.difference.len(), 2);
    }

    #[test]
    fn ak_recursion_k1_breaks_only_at_bidegree_1_0() {
        // A^1 at (1,0) is δD^0 = d0⊗id + d1⊗id, while the recursion gives
        // only A^0(d0⊗id) = d0⊗id there.
        let r = check_relation("lemma3-1", 8).unwrap();
        let failures: Vec<_> = r.results.iter().filter(|b| !b.pass).collect();
        assert_eq!(failures.len(), 1);
        assert_eq!(failures[0].bidegree, (1, 0));
        assert_eq!(failures[0].witness.as_deref(), Some("at (1, 0): d1 ⊗ id"));
        for k in 2..=4 {
            assert!(check_relation(&format!("lemma3-{k}"), 8).unwrap().pass, "k = {k}");
        }
    }
}
