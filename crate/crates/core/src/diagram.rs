//! Domain types for extended Kirby diagrams and their validation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::id::{Id, Sign};

/// A signed pass of a framed circle through the disc of a dotted circle.
///
/// `Sign::Plus` means the strand crosses the disc along the dotted circle's
/// chosen normal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub id: Id,
    pub sign: Sign,
}

impl Letter {
    pub fn new(id: Id, sign: Sign) -> Self {
        Letter { id, sign }
    }

    pub fn inverse(&self) -> Letter {
        Letter::new(self.id.clone(), self.sign.flip())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.id),
            Sign::Minus => write!(f, "{}^-1", self.id),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneHandle {
    pub id: Id,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoHandle {
    pub id: Id,
    pub framing: i64,
    pub disc_word: Vec<Letter>,
}

impl TwoHandle {
    /// Exponent sum of the letter `dotted` in the disc word.
    pub fn exponent_sum(&self, dotted: &Id) -> i64 {
        self.disc_word
            .iter()
            .filter(|l| &l.id == dotted)
            .map(|l| l.sign.value())
            .sum()
    }
}

/// Attaching data of a 3-handle as interaction counts.
///
/// * `link_1h_attach`: linking of the visible sphere with a dotted circle,
/// * `link_1h_core`: passes along a 1-handle core,
/// * `link_2h_circle`: annuli on the boundary torus of a framed circle,
/// * `link_2h_core`: parallel copies of the meridional disc of a 2-handle.
///
/// Counts are aggregated over all components of the visible part. Only the
/// parities are homology classes; the integers keep the (2-3) cancellation
/// condition ("meets the belt sphere once") expressible.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThreeHandleData {
    pub id: Id,
    pub link_1h_attach: BTreeMap<Id, u64>,
    pub link_1h_core: BTreeMap<Id, u64>,
    pub link_2h_circle: BTreeMap<Id, u64>,
    pub link_2h_core: BTreeMap<Id, u64>,
}

impl ThreeHandleData {
    pub fn empty(id: Id) -> Self {
        ThreeHandleData {
            id,
            link_1h_attach: BTreeMap::new(),
            link_1h_core: BTreeMap::new(),
            link_2h_circle: BTreeMap::new(),
            link_2h_core: BTreeMap::new(),
        }
    }

    /// All-zero data: the sphere is treated as inessential.
    pub fn is_zero(&self) -> bool {
        self.maps().iter().all(|(_, m)| m.values().all(|&v| v == 0))
    }

    pub fn maps(&self) -> [(&'static str, &BTreeMap<Id, u64>); 4] {
        [
            ("1a", &self.link_1h_attach),
            ("1b", &self.link_1h_core),
            ("2a", &self.link_2h_circle),
            ("2b", &self.link_2h_core),
        ]
    }

    /// Parity vector of one map over the given handle order.
    pub fn mod2(map: &BTreeMap<Id, u64>, order: &[Id]) -> Vec<bool> {
        order
            .iter()
            .map(|id| map.get(id).copied().unwrap_or(0) % 2 == 1)
            .collect()
    }

    fn strip_zeros(&mut self) {
        for m in [
            &mut self.link_1h_attach,
            &mut self.link_1h_core,
            &mut self.link_2h_circle,
            &mut self.link_2h_core,
        ] {
            m.retain(|_, v| *v != 0);
        }
    }
}

/// Off-diagonal linking numbers between diagram components.
///
/// Entries are stored once per unordered pair and zero entries are dropped,
/// so the table is symmetric by construction. Diagonal entries are not
/// stored: they are the framings (0 for dotted circles).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LinkingTable {
    entries: BTreeMap<(Id, Id), i64>,
}

impl LinkingTable {
    pub fn new() -> Self {
        Self::default()
    }

    fn key(a: &Id, b: &Id) -> (Id, Id) {
        if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        }
    }

    pub fn get(&self, a: &Id, b: &Id) -> i64 {
        self.entries.get(&Self::key(a, b)).copied().unwrap_or(0)
    }

    /// Sets the entry for an unordered pair of distinct components.
    pub fn set(&mut self, a: &Id, b: &Id, value: i64) {
        assert_ne!(a, b, "self-linking is the framing, not a table entry");
        let key = Self::key(a, b);
        if value == 0 {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
    }

    /// Nonzero entries as `(a, b, value)` with `a < b`.
    pub fn iter(&self) -> impl Iterator<Item = (&Id, &Id, i64)> {
        self.entries.iter().map(|((a, b), v)| (a, b, *v))
    }

    pub fn remove_component(&mut self, id: &Id) {
        self.entries.retain(|(a, b), _| a != id && b != id);
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HandleCounts {
    pub zero: u64,
    pub one: u64,
    pub two: u64,
    pub three: u64,
    pub four: u64,
}

impl fmt::Display for HandleCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{})",
            self.zero, self.one, self.two, self.three, self.four
        )
    }
}

/// A handle decomposition given as an extended Kirby diagram.
///
/// Fields are public so that arbitrary (possibly invalid) diagrams can be
/// assembled and passed to [`KirbyDiagram::validate`]. Operations other
/// than `validate` assume a valid diagram.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KirbyDiagram {
    pub zero_handles: u32,
    pub one_handles: Vec<OneHandle>,
    pub two_handles: Vec<TwoHandle>,
    pub three_handles: Vec<ThreeHandleData>,
    pub four_handles: u32,
    pub linking: LinkingTable,
}

impl Default for KirbyDiagram {
    fn default() -> Self {
        KirbyDiagram {
            zero_handles: 1,
            one_handles: Vec::new(),
            two_handles: Vec::new(),
            three_handles: Vec::new(),
            four_handles: 0,
            linking: LinkingTable::new(),
        }
    }
}

impl KirbyDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn counts(&self) -> HandleCounts {
        HandleCounts {
            zero: self.zero_handles as u64,
            one: self.one_handles.len() as u64,
            two: self.two_handles.len() as u64,
            three: self.three_handles.len() as u64,
            four: self.four_handles as u64,
        }
    }

    /// Alternating sum of the handle counts.
    pub fn euler_characteristic(&self) -> i64 {
        let c = self.counts();
        c.zero as i64 - c.one as i64 + c.two as i64 - c.three as i64 + c.four as i64
    }

    pub fn one_handle(&self, id: &Id) -> Option<&OneHandle> {
        self.one_handles.iter().find(|h| &h.id == id)
    }

    pub fn two_handle(&self, id: &Id) -> Option<&TwoHandle> {
        self.two_handles.iter().find(|h| &h.id == id)
    }

    pub fn two_handle_mut(&mut self, id: &Id) -> Option<&mut TwoHandle> {
        self.two_handles.iter_mut().find(|h| &h.id == id)
    }

    pub fn three_handle(&self, id: &Id) -> Option<&ThreeHandleData> {
        self.three_handles.iter().find(|h| &h.id == id)
    }

    pub fn three_handle_mut(&mut self, id: &Id) -> Option<&mut ThreeHandleData> {
        self.three_handles.iter_mut().find(|h| &h.id == id)
    }

    pub fn is_dotted(&self, id: &Id) -> bool {
        self.one_handle(id).is_some()
    }

    pub fn is_framed(&self, id: &Id) -> bool {
        self.two_handle(id).is_some()
    }

    pub fn contains_id(&self, id: &Id) -> bool {
        self.is_dotted(id) || self.is_framed(id) || self.three_handle(id).is_some()
    }

    /// Dotted ids followed by framed ids: the row order of the linking matrix.
    pub fn component_ids(&self) -> Vec<Id> {
        self.one_handles
            .iter()
            .map(|h| h.id.clone())
            .chain(self.two_handles.iter().map(|h| h.id.clone()))
            .collect()
    }

    /// Diagonal entry of the linking matrix: framing, or 0 for a dotted circle.
    pub fn self_linking(&self, id: &Id) -> i64 {
        self.two_handle(id).map_or(0, |h| h.framing)
    }

    /// Sorts every handle list by id and drops zero 3-handle entries.
    pub fn canonicalize(&mut self) {
        self.one_handles.sort_by(|a, b| a.id.cmp(&b.id));
        self.two_handles.sort_by(|a, b| a.id.cmp(&b.id));
        self.three_handles.sort_by(|a, b| a.id.cmp(&b.id));
        for h in &mut self.three_handles {
            h.strip_zeros();
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Checks every structural invariant; an empty list means valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.zero_handles != 1 {
            out.push(Diagnostic::ZeroHandleCount {
                found: self.zero_handles,
            });
        }

        let mut seen = BTreeSet::new();
        let all_ids = self
            .one_handles
            .iter()
            .map(|h| &h.id)
            .chain(self.two_handles.iter().map(|h| &h.id))
            .chain(self.three_handles.iter().map(|h| &h.id));
        for id in all_ids {
            if !seen.insert(id) {
                out.push(Diagnostic::DuplicateId { id: id.clone() });
            }
        }

        for (a, b, value) in self.linking.iter() {
            for id in [a, b] {
                if !self.is_dotted(id) && !self.is_framed(id) {
                    out.push(Diagnostic::UnknownLinkingId { id: id.clone() });
                }
            }
            if self.is_dotted(a) && self.is_dotted(b) {
                out.push(Diagnostic::DottedDottedLinking {
                    a: a.clone(),
                    b: b.clone(),
                    value,
                });
            }
        }

        for f in &self.two_handles {
            for letter in &f.disc_word {
                if !self.is_dotted(&letter.id) {
                    out.push(Diagnostic::UnknownLetter {
                        framed: f.id.clone(),
                        letter: letter.id.clone(),
                    });
                }
            }
            for d in &self.one_handles {
                let exponent_sum = f.exponent_sum(&d.id);
                let linking = self.linking.get(&f.id, &d.id);
                if exponent_sum != linking {
                    out.push(Diagnostic::WordLinkingMismatch {
                        framed: f.id.clone(),
                        dotted: d.id.clone(),
                        exponent_sum,
                        linking,
                    });
                }
            }
        }

        for h in &self.three_handles {
            for (map, entries) in h.maps() {
                let wants_dotted = map.starts_with('1');
                for id in entries.keys() {
                    let ok = if wants_dotted {
                        self.is_dotted(id)
                    } else {
                        self.is_framed(id)
                    };
                    if !ok {
                        out.push(Diagnostic::ThreeHandleUnknownRef {
                            handle: h.id.clone(),
                            map,
                            id: id.clone(),
                        });
                    }
                }
            }
        }
        out
    }
}

/// A violated diagram invariant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Diagnostic {
    ZeroHandleCount {
        found: u32,
    },
    DuplicateId {
        id: Id,
    },
    DottedDottedLinking {
        a: Id,
        b: Id,
        value: i64,
    },
    WordLinkingMismatch {
        framed: Id,
        dotted: Id,
        exponent_sum: i64,
        linking: i64,
    },
    UnknownLetter {
        framed: Id,
        letter: Id,
    },
    UnknownLinkingId {
        id: Id,
    },
    ThreeHandleUnknownRef {
        handle: Id,
        map: &'static str,
        id: Id,
    },
}

impl Diagnostic {
    /// Stable short name of the violated invariant.
    pub fn code(&self) -> &'static str {
        match self {
            Diagnostic::ZeroHandleCount { .. } => "zero-handle-count",
            Diagnostic::DuplicateId { .. } => "duplicate-id",
            Diagnostic::DottedDottedLinking { .. } => "dotted-dotted-linking",
            Diagnostic::WordLinkingMismatch { .. } => "word-linking-mismatch",
            Diagnostic::UnknownLetter { .. } => "unknown-letter",
            Diagnostic::UnknownLinkingId { .. } => "unknown-linking-id",
            Diagnostic::ThreeHandleUnknownRef { .. } => "three-handle-unknown-ref",
        }
    }

    /// The component ids the diagnostic is about.
    pub fn ids(&self) -> Vec<&Id> {
        match self {
            Diagnostic::ZeroHandleCount { .. } => vec![],
            Diagnostic::DuplicateId { id } | Diagnostic::UnknownLinkingId { id } => vec![id],
            Diagnostic::DottedDottedLinking { a, b, .. } => vec![a, b],
            Diagnostic::WordLinkingMismatch { framed, dotted, .. } => vec![framed, dotted],
            Diagnostic::UnknownLetter { framed, letter } => vec![framed, letter],
            Diagnostic::ThreeHandleUnknownRef { handle, id, .. } => vec![handle, id],
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::ZeroHandleCount { found } => {
                write!(f, "[{}] expected exactly one 0-handle, found {found}", self.code())
            }
            Diagnostic::DuplicateId { id } => {
                write!(f, "[{}] identifier {id} is used more than once", self.code())
            }
            Diagnostic::DottedDottedLinking { a, b, value } => write!(
                f,
                "[{}] dotted circles {a} and {b} are linked ({value}); dotted circles must be split",
                self.code()
            ),
            Diagnostic::WordLinkingMismatch {
                framed,
                dotted,
                exponent_sum,
                linking,
            } => write!(
                f,
                "[{}] word/linking mismatch: {framed} passes {dotted} with exponent sum \
                 {exponent_sum} but link({framed},{dotted}) = {linking}",
                self.code()
            ),
            Diagnostic::UnknownLetter { framed, letter } => write!(
                f,
                "[{}] word of {framed} uses {letter}, which is not a dotted circle",
                self.code()
            ),
            Diagnostic::UnknownLinkingId { id } => write!(
                f,
                "[{}] linking table mentions {id}, which is not a dotted or framed circle",
                self.code()
            ),
            Diagnostic::ThreeHandleUnknownRef { handle, map, id } => write!(
                f,
                "[{}] 3-handle {handle} map {map} refers to {id}, which has the wrong kind or does not exist",
                self.code()
            ),
        }
    }
}
