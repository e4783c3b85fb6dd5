//! Linking matrix, boundary homology and basis criteria for 3-handle
//! attaching spheres.

use std::fmt;

use num_traits::Signed;
use thiserror::Error;

use crate::diagram::KirbyDiagram;
use crate::id::Id;
use crate::matrix::{rank_gf2, smith_normal_form, AbelianGroup, IntegerMatrix, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("dimension mismatch: expected {expected}, found {found}")]
pub struct DimensionError {
    pub expected: String,
    pub found: String,
}

/// Row order of the linking matrix: dotted ids sorted, then framed ids
/// sorted.
pub fn component_order(d: &KirbyDiagram) -> Vec<Id> {
    let mut dotted: Vec<Id> = d.one_handles.iter().map(|h| h.id.clone()).collect();
    let mut framed: Vec<Id> = d.two_handles.iter().map(|h| h.id.clone()).collect();
    dotted.sort();
    framed.sort();
    dotted.extend(framed);
    dotted
}

/// Linking matrix of the surgery link of the boundary: every dotted circle
/// becomes a 0-framed unknot.
pub fn linking_matrix(d: &KirbyDiagram) -> IntegerMatrix {
    let ids = component_order(d);
    let rows: Vec<Vec<i64>> = ids
        .iter()
        .map(|a| {
            ids.iter()
                .map(|b| {
                    if a == b {
                        d.self_linking(a)
                    } else {
                        d.linking.get(a, b)
                    }
                })
                .collect()
        })
        .collect();
    IntegerMatrix::from_rows(ids.len(), &rows)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryHomology {
    pub h1: AbelianGroup,
    pub h2_free_rank: usize,
    pub smith: SmithForm,
    pub components: usize,
}

impl BoundaryHomology {
    pub fn rank(&self) -> usize {
        self.smith.rank
    }
}

pub fn boundary_homology(d: &KirbyDiagram) -> BoundaryHomology {
    let lm = linking_matrix(d);
    let smith = smith_normal_form(&lm);
    let m = lm.rows();
    BoundaryHomology {
        h1: AbelianGroup::cokernel(&lm),
        h2_free_rank: m - smith.rank,
        smith,
        components: m,
    }
}

fn check_square<T>(classes: &[Vec<T>]) -> Result<usize, DimensionError> {
    let k = classes.len();
    for v in classes {
        if v.len() != k {
            return Err(DimensionError {
                expected: format!("{k} vectors of length {k}"),
                found: format!("a vector of length {}", v.len()),
            });
        }
    }
    Ok(k)
}

/// Whether `k` vectors of length `k` are a basis of `(Z/2)^k`.
pub fn check_basis_mod2(classes: &[Vec<bool>]) -> Result<bool, DimensionError> {
    let k = check_square(classes)?;
    Ok(rank_gf2(classes) == k)
}

/// Whether `k` integer vectors of length `k` are a basis of `Z^k`, i.e.
/// their determinant is a unit.
pub fn check_basis_integral(classes: &[Vec<i64>]) -> Result<bool, DimensionError> {
    let k = check_square(classes)?;
    let det = IntegerMatrix::from_rows(k, classes).determinant();
    Ok(det.abs() == 1.into())
}

/// Whether the intersection pairing of loops with spheres is the identity.
pub fn meridian_pairing_check(p: &IntegerMatrix) -> Result<bool, DimensionError> {
    if !p.is_square() {
        return Err(DimensionError {
            expected: "a square matrix".into(),
            found: format!("{}x{}", p.rows(), p.cols()),
        });
    }
    Ok(p.is_identity())
}

/// Mod-2 classes of the 3-handle attaching spheres against the dotted
/// circles (map `1a`) in dotted-id order, one row per 3-handle.
pub fn dotted_classes_mod2(d: &KirbyDiagram) -> Vec<Vec<bool>> {
    let mut order: Vec<Id> = d.one_handles.iter().map(|h| h.id.clone()).collect();
    order.sort();
    let mut handles: Vec<_> = d.three_handles.iter().collect();
    handles.sort_by(|a, b| a.id.cmp(&b.id));
    handles
        .iter()
        .map(|h| crate::diagram::ThreeHandleData::mod2(&h.link_1h_attach, &order))
        .collect()
}

/// What can be checked of the hypotheses of the uniqueness results.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HypothesisReport {
    pub three_handles: usize,
    pub four_handles: u32,
    pub h2_free_rank: usize,
    /// `three_handles <= h2_free_rank`, the free rank bounding the rank of
    /// the spherical classes.
    pub within_bound: bool,
    /// 3-handles whose data is all zero.
    pub inessential: Vec<Id>,
    /// No 3-handle has all-zero data.
    pub all_essential: bool,
    /// All-zero 3-handles that no 4-handle can absorb.
    pub uncancelled_inessential: usize,
}

impl HypothesisReport {
    pub fn passes(&self) -> bool {
        self.within_bound && self.all_essential
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |b: bool| if b { "pass" } else { "FAIL" };
        writeln!(f, "3-handles: {}", self.three_handles)?;
        writeln!(f, "4-handles: {}", self.four_handles)?;
        writeln!(f, "H2 free rank of boundary of X2: {}", self.h2_free_rank)?;
        writeln!(
            f,
            "3-handles within free-rank bound ({} <= {}): {}",
            self.three_handles,
            self.h2_free_rank,
            flag(self.within_bound)
        )?;
        write!(
            f,
            "every 3-handle has nonzero data: {}",
            flag(self.all_essential)
        )?;
        if !self.inessential.is_empty() {
            let ids: Vec<String> = self.inessential.iter().map(Id::to_string).collect();
            write!(f, " (all-zero: {})", ids.join(", "))?;
            if self.uncancelled_inessential > 0 {
                write!(
                    f,
                    "\nwarning: {} all-zero 3-handle(s) exceed the 4-handle count",
                    self.uncancelled_inessential
                )?;
            }
            write!(
                f,
                "\nnote: all-zero data may also mean the attaching data was never filled in; confirm it before relying on the flags"
            )?;
        }
        writeln!(f)
    }
}

pub fn hypothesis_report(d: &KirbyDiagram) -> HypothesisReport {
    let h = boundary_homology(d);
    let mut inessential: Vec<Id> = d
        .three_handles
        .iter()
        .filter(|t| t.is_zero())
        .map(|t| t.id.clone())
        .collect();
    inessential.sort();
    let k = d.three_handles.len();
    HypothesisReport {
        three_handles: k,
        four_handles: d.four_handles,
        h2_free_rank: h.h2_free_rank,
        within_bound: k <= h.h2_free_rank,
        all_essential: inessential.is_empty(),
        uncancelled_inessential: inessential.len().saturating_sub(d.four_handles as usize),
        inessential,
    }
}
