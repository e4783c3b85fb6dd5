//! Planar diagram codes for oriented framed links.
//!
//! A crossing lists four edge labels counterclockwise, starting with the
//! incoming under-edge, so the under-strand runs from `edges[0]` to
//! `edges[2]`. For a positive crossing the over-strand runs from `edges[3]`
//! to `edges[1]`; for a negative crossing from `edges[1]` to `edges[3]`.
//! A component without crossings is a single edge label that appears in no
//! crossing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::id::{Id, Sign};

pub type Edge = u32;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Crossing {
    pub edges: [Edge; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(edges: [Edge; 4], sign: Sign) -> Self {
        Crossing { edges, sign }
    }

    pub fn under_in(&self) -> Edge {
        self.edges[0]
    }

    pub fn under_out(&self) -> Edge {
        self.edges[2]
    }

    pub fn over_in(&self) -> Edge {
        match self.sign {
            Sign::Plus => self.edges[3],
            Sign::Minus => self.edges[1],
        }
    }

    pub fn over_out(&self) -> Edge {
        match self.sign {
            Sign::Plus => self.edges[1],
            Sign::Minus => self.edges[3],
        }
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.edges;
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "X[{a},{b},{c},{d}]{s}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ComponentKind {
    Dotted,
    Framed(i64),
}

impl ComponentKind {
    /// Surgery coefficient: dotted circles are treated as 0-framed.
    pub fn framing(self) -> i64 {
        match self {
            ComponentKind::Dotted => 0,
            ComponentKind::Framed(n) => n,
        }
    }
}

/// One link component: its edges in cyclic order along the orientation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PdComponent {
    pub id: Id,
    pub edges: Vec<Edge>,
    pub kind: ComponentKind,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlanarDiagramCode {
    pub crossings: Vec<Crossing>,
    pub components: Vec<PdComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdError {
    #[error("edge {edge} appears {count} times in crossings (expected 2)")]
    EdgeMultiplicity { edge: Edge, count: usize },
    #[error("edge {edge} is entered or left twice; crossing signs disagree with the orientation")]
    Orientation { edge: Edge },
    #[error("edge {edge} is not assigned to any component")]
    Unassigned { edge: Edge },
    #[error("edge {edge} is assigned to more than one component")]
    Reassigned { edge: Edge },
    #[error("component {id} is empty")]
    EmptyComponent { id: Id },
    #[error("component {id}: edge {to} does not follow edge {from} along the orientation")]
    NotACycle { id: Id, from: Edge, to: Edge },
    #[error("component {id} is listed twice")]
    DuplicateComponent { id: Id },
    #[error("unknown component {id}")]
    UnknownComponent { id: Id },
}

impl PlanarDiagramCode {
    /// Checks edge multiplicities, orientation consistency and that the
    /// component lists are exactly the oriented cycles of the diagram.
    pub fn validate(&self) -> Result<(), PdError> {
        let mut count: BTreeMap<Edge, usize> = BTreeMap::new();
        for c in &self.crossings {
            for e in c.edges {
                *count.entry(e).or_default() += 1;
            }
        }
        if let Some((&edge, &n)) = count.iter().find(|(_, &n)| n != 2) {
            return Err(PdError::EdgeMultiplicity { edge, count: n });
        }
        let succ = self.successors()?;

        let mut ids = BTreeSet::new();
        let mut owner: BTreeMap<Edge, &Id> = BTreeMap::new();
        for comp in &self.components {
            if !ids.insert(&comp.id) {
                return Err(PdError::DuplicateComponent {
                    id: comp.id.clone(),
                });
            }
            if comp.edges.is_empty() {
                return Err(PdError::EmptyComponent {
                    id: comp.id.clone(),
                });
            }
            for &e in &comp.edges {
                if owner.insert(e, &comp.id).is_some() {
                    return Err(PdError::Reassigned { edge: e });
                }
            }
            let n = comp.edges.len();
            for i in 0..n {
                let from = comp.edges[i];
                let to = comp.edges[(i + 1) % n];
                let next = match succ.get(&from) {
                    Some(&s) => s,
                    // crossingless loop
                    None if n == 1 => from,
                    None => return Err(PdError::Orientation { edge: from }),
                };
                if next != to {
                    return Err(PdError::NotACycle {
                        id: comp.id.clone(),
                        from,
                        to,
                    });
                }
            }
        }
        if let Some(&edge) = count.keys().find(|e| !owner.contains_key(e)) {
            return Err(PdError::Unassigned { edge });
        }
        Ok(())
    }

    /// Map from each edge to the edge that follows it along the orientation.
    pub fn successors(&self) -> Result<BTreeMap<Edge, Edge>, PdError> {
        let mut succ = BTreeMap::new();
        let mut entered = BTreeSet::new();
        for c in &self.crossings {
            for (from, to) in [(c.under_in(), c.under_out()), (c.over_in(), c.over_out())] {
                if succ.insert(from, to).is_some() {
                    return Err(PdError::Orientation { edge: from });
                }
                if !entered.insert(to) {
                    return Err(PdError::Orientation { edge: to });
                }
            }
        }
        Ok(succ)
    }

    pub fn component(&self, id: &Id) -> Option<&PdComponent> {
        self.components.iter().find(|c| &c.id == id)
    }

    pub fn component_index_of_edges(&self) -> BTreeMap<Edge, usize> {
        let mut map = BTreeMap::new();
        for (i, c) in self.components.iter().enumerate() {
            for &e in &c.edges {
                map.insert(e, i);
            }
        }
        map
    }

    /// Linking number of two distinct components: half the signed count of
    /// crossings between them.
    pub fn linking_number(&self, a: &Id, b: &Id) -> Result<i64, PdError> {
        let owner = self.component_index_of_edges();
        let ia = self.index(a)?;
        let ib = self.index(b)?;
        let total: i64 = self
            .crossings
            .iter()
            .filter(|c| {
                let u = owner.get(&c.under_in());
                let o = owner.get(&c.over_in());
                matches!((u, o), (Some(&u), Some(&o)) if (u == ia && o == ib) || (u == ib && o == ia))
            })
            .map(|c| c.sign.value())
            .sum();
        Ok(total / 2)
    }

    /// Sum of the signs of the self-crossings of a component.
    pub fn writhe(&self, id: &Id) -> Result<i64, PdError> {
        let owner = self.component_index_of_edges();
        let i = self.index(id)?;
        Ok(self
            .crossings
            .iter()
            .filter(|c| owner.get(&c.under_in()) == Some(&i) && owner.get(&c.over_in()) == Some(&i))
            .map(|c| c.sign.value())
            .sum())
    }

    fn index(&self, id: &Id) -> Result<usize, PdError> {
        self.components
            .iter()
            .position(|c| &c.id == id)
            .ok_or_else(|| PdError::UnknownComponent { id: id.clone() })
    }
}
