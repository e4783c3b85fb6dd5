//! Banded unlinks: an unlink whose components carry numbered band slots.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::id::Id;

/// An unlink component with `slots` band attachment points, numbered
/// `0..slots` in cyclic order along its orientation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnlinkComponent {
    pub id: Id,
    pub slots: u32,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SlotRef {
    pub component: Id,
    pub slot: u32,
}

impl fmt::Display for SlotRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.component, self.slot)
    }
}

/// A band between two slots. `coherent` bands respect the orientations of
/// the components they join: band surgery on a coherent band keeps the
/// resolved link oriented.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Band {
    pub id: Id,
    pub a: SlotRef,
    pub b: SlotRef,
    pub coherent: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BandedUnlink {
    pub components: Vec<UnlinkComponent>,
    pub bands: Vec<Band>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnlinkError {
    #[error("identifier {0} is used more than once")]
    DuplicateId(Id),
    #[error("band {band} refers to unknown component {component}")]
    UnknownComponent { band: Id, component: Id },
    #[error("band {band} uses slot {slot}, but the component has only {slots} slots")]
    SlotOutOfRange { band: Id, slot: SlotRef, slots: u32 },
    #[error("band {band} attaches both ends to the same slot {slot}")]
    SameSlot { band: Id, slot: SlotRef },
    #[error("slot {slot} carries more than one band end")]
    SlotReused { slot: SlotRef },
    #[error("slot {slot} carries no band end")]
    SlotUnused { slot: SlotRef },
}

impl BandedUnlink {
    pub fn component(&self, id: &Id) -> Option<&UnlinkComponent> {
        self.components.iter().find(|c| &c.id == id)
    }

    pub fn canonicalize(&mut self) {
        self.components.sort_by(|a, b| a.id.cmp(&b.id));
        self.bands.sort_by(|a, b| a.id.cmp(&b.id));
    }

    /// Every slot carries exactly one band end and each band joins two
    /// distinct slots.
    pub fn validate(&self) -> Result<(), UnlinkError> {
        let mut ids = BTreeSet::new();
        for id in self
            .components
            .iter()
            .map(|c| &c.id)
            .chain(self.bands.iter().map(|b| &b.id))
        {
            if !ids.insert(id) {
                return Err(UnlinkError::DuplicateId(id.clone()));
            }
        }
        let slots: BTreeMap<&Id, u32> = self.components.iter().map(|c| (&c.id, c.slots)).collect();
        let mut used = BTreeSet::new();
        for band in &self.bands {
            for end in [&band.a, &band.b] {
                let Some(&n) = slots.get(&end.component) else {
                    return Err(UnlinkError::UnknownComponent {
                        band: band.id.clone(),
                        component: end.component.clone(),
                    });
                };
                if end.slot >= n {
                    return Err(UnlinkError::SlotOutOfRange {
                        band: band.id.clone(),
                        slot: end.clone(),
                        slots: n,
                    });
                }
            }
            if band.a == band.b {
                return Err(UnlinkError::SameSlot {
                    band: band.id.clone(),
                    slot: band.a.clone(),
                });
            }
            for end in [&band.a, &band.b] {
                if !used.insert(end.clone()) {
                    return Err(UnlinkError::SlotReused { slot: end.clone() });
                }
            }
        }
        for c in &self.components {
            for slot in 0..c.slots {
                let r = SlotRef {
                    component: c.id.clone(),
                    slot,
                };
                if !used.contains(&r) {
                    return Err(UnlinkError::SlotUnused { slot: r });
                }
            }
        }
        Ok(())
    }
}
