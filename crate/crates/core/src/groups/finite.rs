//! Small finite groups and exhaustive homomorphism counting.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::Presentation;

/// Largest `|G|^generators` that `count_homs` will search.
pub const STATE_SPACE_LIMIT: u128 = 100_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TargetGroup {
    /// Symmetric group on `n <= 4` letters.
    Symmetric(u8),
    /// Cyclic group of order `n <= 24`.
    Cyclic(u8),
}

impl TargetGroup {
    pub fn order(self) -> usize {
        match self {
            TargetGroup::Symmetric(n) => (1..=n as usize).product(),
            TargetGroup::Cyclic(n) => n as usize,
        }
    }
}

impl fmt::Display for TargetGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetGroup::Symmetric(n) => write!(f, "s{n}"),
            TargetGroup::Cyclic(n) => write!(f, "z/{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomCountError {
    #[error("unsupported target group `{0}` (expected s1..s4 or z/1..z/24)")]
    UnsupportedTarget(String),
    #[error("search space {state_space} exceeds the limit {STATE_SPACE_LIMIT}; simplify the presentation first")]
    BudgetExceeded { state_space: u128 },
}

impl FromStr for TargetGroup {
    type Err = HomCountError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let bad = || HomCountError::UnsupportedTarget(s.to_string());
        let target = if let Some(n) = lower.strip_prefix("z/") {
            TargetGroup::Cyclic(n.parse().map_err(|_| bad())?)
        } else if let Some(n) = lower.strip_prefix('s') {
            TargetGroup::Symmetric(n.parse().map_err(|_| bad())?)
        } else {
            return Err(bad());
        };
        match target {
            TargetGroup::Symmetric(1..=4) | TargetGroup::Cyclic(1..=24) => Ok(target),
            _ => Err(bad()),
        }
    }
}

/// A finite group given by its multiplication table; element 0 is the
/// identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    mul: Vec<Vec<u8>>,
    inv: Vec<u8>,
}

impl FiniteGroup {
    pub fn new(target: TargetGroup) -> Self {
        match target {
            TargetGroup::Cyclic(n) => {
                let n = n as usize;
                let mul = (0..n)
                    .map(|a| (0..n).map(|b| ((a + b) % n) as u8).collect())
                    .collect();
                let inv = (0..n).map(|a| ((n - a) % n) as u8).collect();
                FiniteGroup { mul, inv }
            }
            TargetGroup::Symmetric(n) => {
                let perms = permutations(n as usize);
                let index = |p: &[u8]| {
                    perms
                        .iter()
                        .position(|q| q == p)
                        .expect("closed under composition")
                };
                let mul = perms
                    .iter()
                    .map(|p| {
                        perms
                            .iter()
                            .map(|q| {
                                let pq: Vec<u8> = q.iter().map(|&i| p[i as usize]).collect();
                                index(&pq) as u8
                            })
                            .collect()
                    })
                    .collect();
                let inv = perms
                    .iter()
                    .map(|p| {
                        let mut r = vec![0u8; p.len()];
                        for (i, &x) in p.iter().enumerate() {
                            r[x as usize] = i as u8;
                        }
                        index(&r) as u8
                    })
                    .collect();
                FiniteGroup { mul, inv }
            }
        }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }
}

/// Permutations in lexicographic order, identity first.
fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = Vec::new();
    fn rec(n: usize, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for x in 0..n as u8 {
            if !current.contains(&x) {
                current.push(x);
                rec(n, current, out);
                current.pop();
            }
        }
    }
    rec(n, &mut current, &mut out);
    out
}

/// Exact number of homomorphisms from the presented group to `target`.
///
/// Generators are assigned in order; each relator is checked as soon as its
/// largest generator is assigned.
pub fn count_homs(p: &Presentation, target: &TargetGroup) -> Result<u64, HomCountError> {
    let group = FiniteGroup::new(*target);
    let state_space = (group.order() as u128)
        .checked_pow(p.generators as u32)
        .unwrap_or(u128::MAX);
    if state_space > STATE_SPACE_LIMIT {
        return Err(HomCountError::BudgetExceeded { state_space });
    }
    let mut by_max: Vec<Vec<&[i32]>> = vec![Vec::new(); p.generators + 1];
    for r in &p.relators {
        by_max[r.max_generator()].push(r.letters());
    }
    if !by_max[0].iter().all(|r| r.is_empty()) {
        return Ok(0);
    }
    let mut assign = vec![0u8; p.generators + 1];
    Ok(search(&group, &by_max, &mut assign, 1))
}

fn holds(group: &FiniteGroup, assign: &[u8], relator: &[i32]) -> bool {
    let mut acc = 0u8;
    for &l in relator {
        let g = assign[l.unsigned_abs() as usize];
        acc = group.mul(acc, if l > 0 { g } else { group.inv(g) });
    }
    acc == 0
}

fn search(group: &FiniteGroup, by_max: &[Vec<&[i32]>], assign: &mut [u8], k: usize) -> u64 {
    if k == by_max.len() {
        return 1;
    }
    let mut total = 0;
    for g in 0..group.order() as u8 {
        assign[k] = g;
        if by_max[k].iter().all(|r| holds(group, assign, r)) {
            total += search(group, by_max, assign, k + 1);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Word;

    #[test]
    fn tables_are_groups() {
        for t in [
            TargetGroup::Symmetric(3),
            TargetGroup::Symmetric(4),
            TargetGroup::Cyclic(5),
        ] {
            let g = FiniteGroup::new(t);
            assert_eq!(g.order(), t.order());
            for a in 0..g.order() as u8 {
                assert_eq!(g.mul(0, a), a);
                assert_eq!(g.mul(a, g.inv(a)), 0);
            }
        }
    }

    #[test]
    fn basic_counts() {
        let s3 = TargetGroup::Symmetric(3);
        assert_eq!(count_homs(&Presentation::free(2), &s3), Ok(36));
        assert_eq!(count_homs(&Presentation::free(0), &s3), Ok(1));
        // <a,b | a^2 = b^3>
        let p = Presentation::new(2, vec![Word(vec![1, 1, -2, -2, -2])]);
        assert_eq!(count_homs(&p, &s3), Ok(12));
        assert_eq!(
            count_homs(&Presentation::free(1), &TargetGroup::Cyclic(7)),
            Ok(7)
        );
    }

    #[test]
    fn budget() {
        let s4 = TargetGroup::Symmetric(4);
        assert!(matches!(
            count_homs(&Presentation::free(6), &s4),
            Err(HomCountError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn parse_targets() {
        assert_eq!(
            "s3".parse::<TargetGroup>().unwrap(),
            TargetGroup::Symmetric(3)
        );
        assert_eq!(
            "Z/12".parse::<TargetGroup>().unwrap(),
            TargetGroup::Cyclic(12)
        );
        assert!("s5".parse::<TargetGroup>().is_err());
        assert!("z/25".parse::<TargetGroup>().is_err());
        assert!("q8".parse::<TargetGroup>().is_err());
    }
}
