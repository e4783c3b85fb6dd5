#![allow(dead_code)]

use kd3_core::diagram::{Letter, OneHandle, ThreeHandleData, TwoHandle};
use kd3_core::moves::{MoveKind, MoveRequest};
use kd3_core::unlink::{Band, BandedUnlink, SlotRef, UnlinkComponent};
use kd3_core::{Id, KirbyDiagram, Sign};

/// splitmix64
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }

    pub fn sign(&mut self) -> Sign {
        if self.next() & 1 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> Option<&'a T> {
        if xs.is_empty() {
            None
        } else {
            Some(&xs[self.below(xs.len())])
        }
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i + 1);
            xs.swap(i, j);
        }
    }
}

pub fn id(s: &str) -> Id {
    Id::new(s).unwrap()
}

/// A random valid diagram with at most three dotted circles, three framed
/// circles and two 3-handles.
pub fn random_diagram(rng: &mut Rng) -> KirbyDiagram {
    let mut d = KirbyDiagram::new();
    let dots: Vec<Id> = (0..rng.below(4)).map(|i| id(&format!("d{i}"))).collect();
    let framed: Vec<Id> = (0..rng.below(4)).map(|i| id(&format!("f{i}"))).collect();
    for x in &dots {
        d.one_handles.push(OneHandle { id: x.clone() });
    }
    for f in &framed {
        let len = if dots.is_empty() { 0 } else { rng.below(5) };
        let word: Vec<Letter> = (0..len)
            .map(|_| Letter::new(rng.pick(&dots).unwrap().clone(), rng.sign()))
            .collect();
        let h = TwoHandle {
            id: f.clone(),
            framing: rng.range(-3, 3),
            disc_word: word,
        };
        for x in &dots {
            d.linking.set(f, x, h.exponent_sum(x));
        }
        d.two_handles.push(h);
    }
    for i in 0..framed.len() {
        for j in i + 1..framed.len() {
            d.linking.set(&framed[i], &framed[j], rng.range(-2, 2));
        }
    }
    for t in 0..rng.below(3) {
        let mut h = ThreeHandleData::empty(id(&format!("t{t}")));
        for x in &dots {
            h.link_1h_attach.insert(x.clone(), rng.range(0, 2) as u64);
            h.link_1h_core.insert(x.clone(), rng.range(0, 1) as u64);
        }
        for f in &framed {
            h.link_2h_circle.insert(f.clone(), rng.range(0, 2) as u64);
            h.link_2h_core.insert(f.clone(), rng.range(0, 2) as u64);
        }
        d.three_handles.push(h);
    }
    d.four_handles = rng.below(3) as u32;
    d.canonicalize();
    assert!(d.is_valid(), "{:?}", d.validate());
    d
}

pub fn dotted(d: &KirbyDiagram) -> Vec<Id> {
    d.one_handles.iter().map(|h| h.id.clone()).collect()
}

pub fn framed(d: &KirbyDiagram) -> Vec<Id> {
    d.two_handles.iter().map(|h| h.id.clone()).collect()
}

pub fn threes(d: &KirbyDiagram) -> Vec<Id> {
    d.three_handles.iter().map(|h| h.id.clone()).collect()
}

/// A random slide between existing handles of the right kinds, if any.
pub fn random_slide(d: &KirbyDiagram, rng: &mut Rng) -> Option<MoveRequest> {
    let kinds = [
        MoveKind::Slide11,
        MoveKind::Slide21,
        MoveKind::Slide22,
        MoveKind::Slide31,
        MoveKind::Slide32,
        MoveKind::Slide33,
    ];
    let kind = *rng.pick(&kinds).unwrap();
    let (actors, targets) = match kind {
        MoveKind::Slide11 => (dotted(d), dotted(d)),
        MoveKind::Slide21 => (framed(d), dotted(d)),
        MoveKind::Slide22 => (framed(d), framed(d)),
        MoveKind::Slide31 => (threes(d), dotted(d)),
        MoveKind::Slide32 => (threes(d), framed(d)),
        _ => (threes(d), threes(d)),
    };
    let actor = rng.pick(&actors)?.clone();
    let targets: Vec<Id> = targets.into_iter().filter(|t| t != &actor).collect();
    let target = rng.pick(&targets)?.clone();
    Some(MoveRequest::new(kind, actor, Some(target), rng.sign()))
}

/// A create move with fresh ids followed by the matching cancellation.
pub fn random_pair(rng: &mut Rng, tag: usize) -> [MoveRequest; 2] {
    let a = id(&format!("n{tag}a"));
    let b = id(&format!("n{tag}b"));
    let s = rng.sign();
    match rng.below(3) {
        0 => [
            MoveRequest::new(MoveKind::Create12, a.clone(), Some(b.clone()), s),
            MoveRequest::new(MoveKind::Cancel12, a, Some(b), s),
        ],
        1 => [
            MoveRequest::new(MoveKind::Create23, a.clone(), Some(b.clone()), s),
            MoveRequest::new(MoveKind::Cancel23, a, Some(b), s),
        ],
        _ => [
            MoveRequest::new(MoveKind::Create34, a.clone(), None, s),
            MoveRequest::new(MoveKind::Cancel34, a, None, s),
        ],
    }
}

/// A random banded unlink; every slot carries one band end. With
/// `orientable`, every band is coherent.
pub fn random_banded(rng: &mut Rng, orientable: bool) -> BandedUnlink {
    let n = 1 + rng.below(4);
    let mut slots: Vec<u32> = (0..n).map(|_| rng.below(5) as u32).collect();
    let total: u32 = slots.iter().sum();
    if total % 2 == 1 {
        slots[0] += 1;
    }
    let components: Vec<UnlinkComponent> = slots
        .iter()
        .enumerate()
        .map(|(i, &s)| UnlinkComponent {
            id: id(&format!("c{i}")),
            slots: s,
        })
        .collect();
    let mut ends: Vec<SlotRef> = components
        .iter()
        .flat_map(|c| {
            (0..c.slots).map(move |s| SlotRef {
                component: c.id.clone(),
                slot: s,
            })
        })
        .collect();
    rng.shuffle(&mut ends);
    let bands = ends
        .chunks(2)
        .enumerate()
        .map(|(i, pair)| Band {
            id: id(&format!("b{i}")),
            a: pair[0].clone(),
            b: pair[1].clone(),
            coherent: orientable || rng.next() & 1 == 0,
        })
        .collect();
    let b = BandedUnlink { components, bands };
    b.validate().unwrap();
    b
}
