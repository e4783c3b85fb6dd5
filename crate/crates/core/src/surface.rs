//! Banded unlinks of surface-knots: resolutions, Euler characteristics and
//! the Kirby diagram of the exterior.
//!
//! A component with `n` slots is cut by its slots into `n` boundary arcs;
//! arc `k` runs from slot `k` to slot `k + 1 (mod n)`. Each slot has a left
//! end (where the arc before it stops) and a right end (where the next arc
//! starts). Band surgery at a slot removes the small piece of circle there
//! and joins the four loose ends through the band's two long edges.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::diagram::{KirbyDiagram, Letter, OneHandle, ThreeHandleData, TwoHandle};
use crate::id::{Id, Sign};
use crate::unlink::{BandedUnlink, SlotRef, UnlinkError};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Which {
    LMinus,
    LPlus,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Which::LMinus => write!(f, "L-"),
            Which::LPlus => write!(f, "L+"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Resolution {
    pub which: Which,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Invalid(#[from] UnlinkError),
    #[error("the surface is non-orientable (band {band} closes an orientation-reversing loop)")]
    NonOrientable { band: Id },
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn classes(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&x| self.find(x) == x)
            .count()
    }
}

/// Indices of slot ends: `2 * base + 2 * slot` is the left end, `+ 1` the
/// right end.
fn slot_bases(b: &BandedUnlink) -> (BTreeMap<&Id, (usize, u32)>, usize) {
    let mut bases = BTreeMap::new();
    let mut total = 0usize;
    for c in &b.components {
        bases.insert(&c.id, (total, c.slots));
        total += c.slots as usize;
    }
    (bases, total)
}

/// Number of components after discarding the bands (`L-`) or after band
/// surgery along all of them (`L+`).
pub fn resolve(b: &BandedUnlink, which: Which) -> Result<Resolution, SurfaceError> {
    b.validate()?;
    let components = match which {
        Which::LMinus => b.components.len(),
        Which::LPlus => plus_components(b),
    };
    Ok(Resolution { which, components })
}

fn plus_components(b: &BandedUnlink) -> usize {
    let (bases, total) = slot_bases(b);
    let end =
        |s: &SlotRef, right: bool| 2 * (bases[&s.component].0 + s.slot as usize) + right as usize;
    let mut uf = UnionFind::new(2 * total);
    for c in &b.components {
        let (base, n) = bases[&c.id];
        for k in 0..n as usize {
            // arc from the right end of slot k to the left end of slot k+1
            let next = (k + 1) % n as usize;
            uf.union(2 * (base + k) + 1, 2 * (base + next));
        }
    }
    for band in &b.bands {
        let (p, q) = (&band.a, &band.b);
        if band.coherent {
            uf.union(end(p, false), end(q, true));
            uf.union(end(p, true), end(q, false));
        } else {
            uf.union(end(p, false), end(q, false));
            uf.union(end(p, true), end(q, true));
        }
    }
    let without_slots = b.components.iter().filter(|c| c.slots == 0).count();
    uf.classes() + without_slots
}

/// `|L-| + |L+| - |M|` with `|M|` the number of bands.
pub fn surface_euler(b: &BandedUnlink) -> Result<i64, SurfaceError> {
    let minus = resolve(b, Which::LMinus)?.components as i64;
    let plus = resolve(b, Which::LPlus)?.components as i64;
    Ok(minus + plus - b.bands.len() as i64)
}

/// `|L+| - 1`, the number of 3-handles of the exterior without 4-handles.
pub fn three_handle_count(b: &BandedUnlink) -> Result<usize, SurfaceError> {
    Ok(resolve(b, Which::LPlus)?.components.saturating_sub(1))
}

/// Orientations of the unlink components (`true` = as given) such that
/// every coherent band joins equally oriented components and every
/// incoherent band oppositely oriented ones.
pub fn orientations(b: &BandedUnlink) -> Result<BTreeMap<Id, bool>, SurfaceError> {
    b.validate()?;
    let mut adj: BTreeMap<&Id, Vec<(&Id, bool, &Id)>> = BTreeMap::new();
    for band in &b.bands {
        let same = band.coherent;
        adj.entry(&band.a.component)
            .or_default()
            .push((&band.b.component, same, &band.id));
        adj.entry(&band.b.component)
            .or_default()
            .push((&band.a.component, same, &band.id));
    }
    let mut orient: BTreeMap<Id, bool> = BTreeMap::new();
    for c in &b.components {
        if orient.contains_key(&c.id) {
            continue;
        }
        orient.insert(c.id.clone(), true);
        let mut stack = vec![&c.id];
        while let Some(x) = stack.pop() {
            let ox = orient[x];
            for &(y, same, band) in adj.get(x).map(Vec::as_slice).unwrap_or(&[]) {
                let want = if same { ox } else { !ox };
                match orient.get(y) {
                    Some(&oy) if oy != want => {
                        return Err(SurfaceError::NonOrientable { band: band.clone() })
                    }
                    Some(_) => {}
                    None => {
                        orient.insert(y.clone(), want);
                        stack.push(y);
                    }
                }
            }
        }
    }
    Ok(orient)
}

/// Kirby diagram of the exterior: a dotted circle per unlink component, a
/// 0-framed circle per band passing once through the discs at each of its
/// ends, and `|L+| - 1` 3-handles. The 3-handle data is left zero; it has to
/// be filled in before the basis criteria are meaningful.
pub fn exterior_kirby(b: &BandedUnlink) -> Result<KirbyDiagram, SurfaceError> {
    let orient = orientations(b)?;
    let h3 = three_handle_count(b)?;
    let mut d = KirbyDiagram::new();
    for c in &b.components {
        d.one_handles.push(OneHandle { id: c.id.clone() });
    }
    for band in &b.bands {
        let sa = if orient[&band.a.component] {
            Sign::Plus
        } else {
            Sign::Minus
        };
        let sb = if orient[&band.b.component] {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let word = vec![
            Letter::new(band.a.component.clone(), sa),
            Letter::new(band.b.component.clone(), sb),
        ];
        let f = TwoHandle {
            id: band.id.clone(),
            framing: 0,
            disc_word: word,
        };
        for c in &b.components {
            let lk = f.exponent_sum(&c.id);
            d.linking.set(&f.id, &c.id, lk);
        }
        d.two_handles.push(f);
    }
    let mut k = 0;
    for _ in 0..h3 {
        let id = loop {
            k += 1;
            let candidate = Id::new(format!("h3_{k}")).expect("valid id");
            if !d.contains_id(&candidate) {
                break candidate;
            }
        };
        d.three_handles.push(ThreeHandleData::empty(id));
    }
    d.canonicalize();
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_unlink;
    use crate::samples;
    use crate::unlink::{Band, UnlinkComponent};

    fn id(s: &str) -> Id {
        Id::new(s).unwrap()
    }

    fn slot(c: &str, s: u32) -> SlotRef {
        SlotRef {
            component: id(c),
            slot: s,
        }
    }

    fn one_band(slots: u32, a: u32, b: u32, coherent: bool) -> BandedUnlink {
        BandedUnlink {
            components: vec![UnlinkComponent { id: id("c"), slots }],
            bands: vec![Band {
                id: id("b"),
                a: slot("c", a),
                b: slot("c", b),
                coherent,
            }],
        }
    }

    #[test]
    fn unknotted_sphere() {
        let b = BandedUnlink {
            components: vec![UnlinkComponent {
                id: id("c"),
                slots: 0,
            }],
            bands: vec![],
        };
        assert_eq!(resolve(&b, Which::LMinus).unwrap().components, 1);
        assert_eq!(resolve(&b, Which::LPlus).unwrap().components, 1);
        assert_eq!(surface_euler(&b).unwrap(), 2);
        assert_eq!(three_handle_count(&b).unwrap(), 0);
        let d = exterior_kirby(&b).unwrap();
        let c = d.counts();
        assert_eq!((c.zero, c.one, c.two, c.three, c.four), (1, 1, 0, 0, 0));
    }

    #[test]
    fn splitting_band() {
        let b = one_band(2, 0, 1, true);
        assert_eq!(resolve(&b, Which::LMinus).unwrap().components, 1);
        assert_eq!(resolve(&b, Which::LPlus).unwrap().components, 2);
    }

    #[test]
    fn twisted_band_keeps_one_component() {
        let b = one_band(2, 0, 1, false);
        assert_eq!(resolve(&b, Which::LPlus).unwrap().components, 1);
    }

    #[test]
    fn spun_trefoil() {
        let b = parse_unlink(samples::SPUN_TREFOIL_BANDED.as_bytes()).unwrap();
        assert_eq!(resolve(&b, Which::LMinus).unwrap().components, 2);
        assert_eq!(resolve(&b, Which::LPlus).unwrap().components, 2);
        assert_eq!(surface_euler(&b).unwrap(), 2);
        assert_eq!(three_handle_count(&b).unwrap(), 1);
        let d = exterior_kirby(&b).unwrap();
        assert!(d.is_valid(), "{:?}", d.validate());
        assert_eq!(d.euler_characteristic(), 0);
    }

    #[test]
    fn torus() {
        let b = parse_unlink(samples::TORUS_BANDED.as_bytes()).unwrap();
        assert_eq!(resolve(&b, Which::LPlus).unwrap().components, 1);
        assert_eq!(surface_euler(&b).unwrap(), 0);
    }

    #[test]
    fn non_orientable_is_rejected() {
        // an incoherent band from a component to itself
        let b = one_band(2, 0, 1, false);
        assert!(matches!(
            exterior_kirby(&b),
            Err(SurfaceError::NonOrientable { .. })
        ));
    }
}
