//! Finitely presented groups.
//!
//! Generators are numbered from 1. A letter is a nonzero integer: `k` is
//! the generator `g_k` and `-k` its inverse.

mod finite;
mod tietze;
mod wirtinger;

use std::fmt;

use crate::diagram::KirbyDiagram;
use crate::id::{Id, Sign};
use crate::matrix::{AbelianGroup, IntegerMatrix};

pub use finite::{count_homs, FiniteGroup, HomCountError, TargetGroup, STATE_SPACE_LIMIT};
pub use tietze::tietze_simplify;
pub use wirtinger::{longitude, pi1_of_boundary, wirtinger, Wirtinger};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `g^n` for a letter `g`.
    pub fn power(letter: i32, n: i64) -> Word {
        let l = if n < 0 { -letter } else { letter };
        Word(vec![l; n.unsigned_abs() as usize])
    }

    /// Cancels adjacent `x x^-1` pairs.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free reduction followed by cancelling inverse letters at the two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce().0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == -w[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.unsigned_abs() as usize == generator)
            .map(|&l| if l > 0 { 1 } else { -1 })
            .sum()
    }

    pub fn max_generator(&self) -> usize {
        self.0
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn occurrences(&self, generator: usize) -> usize {
        self.0
            .iter()
            .filter(|l| l.unsigned_abs() as usize == generator)
            .count()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, &l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l > 0 {
                write!(f, "g{l}")?;
            } else {
                write!(f, "g{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Self {
        let p = Presentation {
            generators,
            relators,
        };
        assert!(p.is_well_formed(), "relator letter out of range");
        p
    }

    pub fn free(rank: usize) -> Self {
        Presentation {
            generators: rank,
            relators: Vec::new(),
        }
    }

    pub fn is_well_formed(&self) -> bool {
        self.relators
            .iter()
            .all(|r| r.0.iter().all(|&l| l != 0) && r.max_generator() <= self.generators)
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Relators by generators, entry `(i, j)` the exponent sum of `g_{j+1}`
    /// in relator `i`.
    pub fn exponent_matrix(&self) -> IntegerMatrix {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| (1..=self.generators).map(|g| r.exponent_sum(g)).collect())
            .collect();
        IntegerMatrix::from_rows(self.generators, &rows)
    }
}

impl fmt::Display for Presentation {
    /// `gens n` followed by one relator per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens {}", self.generators)?;
        for r in &self.relators {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Abelianization as a finitely generated abelian group.
pub fn abelianization(p: &Presentation) -> AbelianGroup {
    AbelianGroup::cokernel(&p.exponent_matrix().transpose())
}

/// Presentation of the fundamental group of the 4-manifold read off a
/// diagram: one generator per dotted circle, one relator per framed circle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pi1Readoff {
    pub presentation: Presentation,
    /// `generators[k]` is the dotted circle of `g_{k+1}`.
    pub generators: Vec<Id>,
    /// Framed circle of each relator.
    pub relator_sources: Vec<Id>,
    pub warnings: Vec<String>,
}

pub fn pi1_of_x(d: &KirbyDiagram) -> Pi1Readoff {
    let mut generators: Vec<Id> = d.one_handles.iter().map(|h| h.id.clone()).collect();
    generators.sort();
    let mut framed: Vec<_> = d.two_handles.iter().collect();
    framed.sort_by(|a, b| a.id.cmp(&b.id));

    let mut relators = Vec::new();
    let mut relator_sources = Vec::new();
    let mut warnings = Vec::new();
    for f in framed {
        let word = f
            .disc_word
            .iter()
            .map(|l| {
                let k = generators
                    .iter()
                    .position(|g| g == &l.id)
                    .expect("disc word letters are dotted circles") as i32
                    + 1;
                match l.sign {
                    Sign::Plus => k,
                    Sign::Minus => -k,
                }
            })
            .collect();
        relators.push(Word(word));
        relator_sources.push(f.id.clone());
        if f.framing != 0 {
            warnings.push(format!(
                "2-handle {} has framing {}; the read-off presents the group of the handlebody only \
                 when the attaching circles form a 0-framed link of the pictured kind",
                f.id, f.framing
            ));
        }
    }
    Pi1Readoff {
        presentation: Presentation::new(generators.len(), relators),
        generators,
        relator_sources,
        warnings,
    }
}
