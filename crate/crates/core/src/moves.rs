//! Handle slides, cancellations and creations as partial transformations of
//! a [`KirbyDiagram`].
//!
//! Every request names an actor (the handle that moves, or the higher-index
//! handle of a pair) and, for moves between two handles, a target:
//!
//! | move | actor | target |
//! |---|---|---|
//! | `slide_1_1` | dotted circle | dotted circle |
//! | `slide_2_1` | framed circle | dotted circle |
//! | `slide_2_2` | framed circle | framed circle |
//! | `slide_3_1` | 3-handle | dotted circle |
//! | `slide_3_2` | 3-handle | framed circle |
//! | `slide_3_3` | 3-handle | 3-handle |
//! | `cancel_1_2`, `create_1_2` | framed circle | dotted circle |
//! | `cancel_2_3`, `create_2_3` | 3-handle | framed circle |
//! | `cancel_3_4`, `create_3_4`, `erase_inessential_3` | 3-handle | none |
//!
//! Creation moves take fresh ids for the new handles.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::diagram::{
    Diagnostic, HandleCounts, KirbyDiagram, Letter, OneHandle, ThreeHandleData, TwoHandle,
};
use crate::groups::{abelianization, pi1_of_x};
use crate::id::{Id, Sign};
use crate::invariants::linking_matrix;
use crate::matrix::{smith_normal_form, AbelianGroup};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum MoveKind {
    Slide11,
    Slide21,
    Slide22,
    Slide31,
    Slide32,
    Slide33,
    Cancel12,
    Cancel23,
    Cancel34,
    Create12,
    Create23,
    Create34,
    EraseInessential3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 13] = [
        MoveKind::Slide11,
        MoveKind::Slide21,
        MoveKind::Slide22,
        MoveKind::Slide31,
        MoveKind::Slide32,
        MoveKind::Slide33,
        MoveKind::Cancel12,
        MoveKind::Cancel23,
        MoveKind::Cancel34,
        MoveKind::Create12,
        MoveKind::Create23,
        MoveKind::Create34,
        MoveKind::EraseInessential3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::Slide11 => "slide_1_1",
            MoveKind::Slide21 => "slide_2_1",
            MoveKind::Slide22 => "slide_2_2",
            MoveKind::Slide31 => "slide_3_1",
            MoveKind::Slide32 => "slide_3_2",
            MoveKind::Slide33 => "slide_3_3",
            MoveKind::Cancel12 => "cancel_1_2",
            MoveKind::Cancel23 => "cancel_2_3",
            MoveKind::Cancel34 => "cancel_3_4",
            MoveKind::Create12 => "create_1_2",
            MoveKind::Create23 => "create_2_3",
            MoveKind::Create34 => "create_3_4",
            MoveKind::EraseInessential3 => "erase_inessential_3",
        }
    }

    pub fn is_slide(self) -> bool {
        matches!(
            self,
            MoveKind::Slide11
                | MoveKind::Slide21
                | MoveKind::Slide22
                | MoveKind::Slide31
                | MoveKind::Slide32
                | MoveKind::Slide33
        )
    }

    pub fn needs_target(self) -> bool {
        !matches!(
            self,
            MoveKind::Cancel34 | MoveKind::Create34 | MoveKind::EraseInessential3
        )
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown move kind `{0}`")]
pub struct UnknownMoveKind(pub String);

impl FromStr for MoveKind {
    type Err = UnknownMoveKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MoveKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownMoveKind(s.to_string()))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MoveRequest {
    pub kind: MoveKind,
    pub actor: Id,
    pub target: Option<Id>,
    pub sign: Sign,
}

impl MoveRequest {
    pub fn new(kind: MoveKind, actor: Id, target: Option<Id>, sign: Sign) -> Self {
        MoveRequest {
            kind,
            actor,
            target,
            sign,
        }
    }
}

impl fmt::Display for MoveRequest {
    /// The move-script line of the request.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let target = self.target.as_ref().map_or("-", Id::as_str);
        write!(
            f,
            "move {} {} {} sign={}",
            self.kind, self.actor, target, self.sign
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("unknown identifier {0}")]
    UnknownId(Id),
    #[error("{0} needs a target")]
    MissingTarget(MoveKind),
    #[error("{kind} is not applicable: {reason}")]
    NotApplicable { kind: MoveKind, reason: String },
    #[error("integer overflow while applying {0}")]
    Overflow(MoveKind),
    #[error("input diagram is invalid ({} diagnostics)", .0.len())]
    InvalidDiagram(Vec<Diagnostic>),
}

/// Outcome of an applicability check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Applicability {
    pub applicable: bool,
    pub reason: String,
}

/// Invariants recorded before and after each move.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantDigest {
    pub counts: HandleCounts,
    pub euler: i64,
    pub snf_divisors: Vec<BigInt>,
    pub snf_rank: usize,
    pub abelianization: AbelianGroup,
}

impl InvariantDigest {
    pub fn of(d: &KirbyDiagram) -> Self {
        let snf = smith_normal_form(&linking_matrix(d));
        InvariantDigest {
            counts: d.counts(),
            euler: d.euler_characteristic(),
            snf_rank: snf.rank,
            snf_divisors: snf.divisors,
            abelianization: abelianization(&pi1_of_x(d).presentation),
        }
    }
}

impl fmt::Display for InvariantDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let divisors: Vec<String> = self.snf_divisors.iter().map(BigInt::to_string).collect();
        write!(
            f,
            "counts={} chi={} snf=[{}] rank={} ab(pi1)={}",
            self.counts,
            self.euler,
            divisors.join(","),
            self.snf_rank,
            self.abelianization
        )
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MoveReport {
    pub request: MoveRequest,
    pub applied: bool,
    pub pre: InvariantDigest,
    pub post: InvariantDigest,
    pub justification: String,
}

impl fmt::Display for MoveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.request)?;
        writeln!(f, "  applied: {}", self.applied)?;
        writeln!(f, "  pre:  {}", self.pre)?;
        writeln!(f, "  post: {}", self.post)?;
        writeln!(f, "  {}", self.justification)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Dotted,
    Framed,
    Three,
}

impl Role {
    fn describe(self) -> &'static str {
        match self {
            Role::Dotted => "a dotted circle",
            Role::Framed => "a framed circle",
            Role::Three => "a 3-handle",
        }
    }

    fn holds(self, d: &KirbyDiagram, id: &Id) -> bool {
        match self {
            Role::Dotted => d.is_dotted(id),
            Role::Framed => d.is_framed(id),
            Role::Three => d.three_handle(id).is_some(),
        }
    }
}

fn roles(kind: MoveKind) -> (Role, Option<Role>) {
    use MoveKind::*;
    match kind {
        Slide11 => (Role::Dotted, Some(Role::Dotted)),
        Slide21 => (Role::Framed, Some(Role::Dotted)),
        Slide22 => (Role::Framed, Some(Role::Framed)),
        Slide31 => (Role::Three, Some(Role::Dotted)),
        Slide32 => (Role::Three, Some(Role::Framed)),
        Slide33 => (Role::Three, Some(Role::Three)),
        Cancel12 | Create12 => (Role::Framed, Some(Role::Dotted)),
        Cancel23 | Create23 => (Role::Three, Some(Role::Framed)),
        Cancel34 | Create34 | EraseInessential3 => (Role::Three, None),
    }
}

fn every_id(d: &KirbyDiagram) -> impl Iterator<Item = &Id> {
    d.one_handles
        .iter()
        .map(|h| &h.id)
        .chain(d.two_handles.iter().map(|h| &h.id))
        .chain(d.three_handles.iter().map(|h| &h.id))
}

fn id_in_use(d: &KirbyDiagram, id: &Id) -> bool {
    every_id(d).any(|x| x == id)
}

/// Checks the applicability predicate of a request. Unknown ids are errors;
/// a failed predicate is a value with a reason.
pub fn applicable(d: &KirbyDiagram, r: &MoveRequest) -> Result<Applicability, MoveError> {
    match check(d, r)? {
        Ok(()) => Ok(Applicability {
            applicable: true,
            reason: "predicate holds".into(),
        }),
        Err(reason) => Ok(Applicability {
            applicable: false,
            reason,
        }),
    }
}

fn check(d: &KirbyDiagram, r: &MoveRequest) -> Result<Result<(), String>, MoveError> {
    let creating = matches!(
        r.kind,
        MoveKind::Create12 | MoveKind::Create23 | MoveKind::Create34
    );
    let (actor_role, target_role) = roles(r.kind);
    let target = match (target_role, &r.target) {
        (Some(_), None) => return Err(MoveError::MissingTarget(r.kind)),
        (Some(_), Some(t)) => Some(t),
        (None, _) => None,
    };

    if creating {
        for id in std::iter::once(&r.actor).chain(target) {
            if id_in_use(d, id) {
                return Ok(Err(format!("identifier {id} is already in use")));
            }
        }
        if target == Some(&r.actor) {
            return Ok(Err("the two new handles need distinct ids".into()));
        }
        return Ok(Ok(()));
    }

    for id in std::iter::once(&r.actor).chain(target) {
        if !id_in_use(d, id) {
            return Err(MoveError::UnknownId(id.clone()));
        }
    }
    if !actor_role.holds(d, &r.actor) {
        return Ok(Err(format!(
            "actor {} is not {}",
            r.actor,
            actor_role.describe()
        )));
    }
    if let (Some(role), Some(t)) = (target_role, target) {
        if !role.holds(d, t) {
            return Ok(Err(format!("target {t} is not {}", role.describe())));
        }
        if t == &r.actor {
            return Ok(Err(format!("{} cannot act on itself", r.actor)));
        }
    }

    let a = &r.actor;
    let reason = match r.kind {
        MoveKind::Cancel12 => {
            let t = target.expect("target checked");
            cancel_12_obstruction(d, a, t)
        }
        MoveKind::Cancel23 => {
            let t = target.expect("target checked");
            cancel_23_obstruction(d, a, t)
        }
        MoveKind::Cancel34 | MoveKind::EraseInessential3 => {
            let h = d.three_handle(a).expect("role checked");
            if !h.is_zero() {
                Some(format!("3-handle {a} has nonzero attaching data"))
            } else if d.four_handles == 0 {
                Some("there is no 4-handle".to_string())
            } else {
                None
            }
        }
        _ => None,
    };
    Ok(reason.map_or(Ok(()), Err))
}

fn cancel_12_obstruction(d: &KirbyDiagram, f: &Id, dot: &Id) -> Option<String> {
    let h = d.two_handle(f).expect("role checked");
    let passes = h.disc_word.iter().filter(|l| &l.id == dot).count();
    if passes != 1 {
        return Some(format!(
            "{f} passes {passes} times through the disc of {dot}; exactly one pass is needed"
        ));
    }
    if let Some(other) = d
        .two_handles
        .iter()
        .find(|o| &o.id != f && o.disc_word.iter().any(|l| &l.id == dot))
    {
        return Some(format!(
            "extra strand: {} also passes through the disc of {dot}",
            other.id
        ));
    }
    for t in &d.three_handles {
        if t.link_1h_core.get(dot).copied().unwrap_or(0) != 0 {
            return Some(format!(
                "3-handle {} runs along the core of {dot}; rerouting it is not expressible",
                t.id
            ));
        }
        if t.link_2h_core.get(f).copied().unwrap_or(0) != 0 {
            return Some(format!(
                "3-handle {} carries meridional discs of {f}; rerouting it is not expressible",
                t.id
            ));
        }
    }
    None
}

fn cancel_23_obstruction(d: &KirbyDiagram, t: &Id, f: &Id) -> Option<String> {
    let h = d.three_handle(t).expect("role checked");
    let hits = h.link_2h_core.get(f).copied().unwrap_or(0);
    if hits != 1 {
        return Some(format!(
            "3-handle {t} meets the belt sphere of {f} {hits} times; exactly once is needed"
        ));
    }
    if let Some((other, _)) = h.link_2h_core.iter().find(|(k, &v)| *k != f && v != 0) {
        return Some(format!("3-handle {t} also runs over the 2-handle {other}"));
    }
    let two = d.two_handle(f).expect("role checked");
    if two.framing != 0 {
        return Some(format!(
            "{f} has framing {}; a cancelling 2-handle is 0-framed",
            two.framing
        ));
    }
    if let Some((a, b, v)) = d.linking.iter().find(|(a, b, _)| *a == f || *b == f) {
        return Some(format!(
            "{f} is linked with {} (lk = {v})",
            if a == f { b } else { a }
        ));
    }
    let word = crate::groups::Word(
        two.disc_word
            .iter()
            .map(|l| {
                let k = d.one_handles.iter().position(|h| h.id == l.id).unwrap_or(0) as i32 + 1;
                k * l.sign.value() as i32
            })
            .collect(),
    );
    if !word.free_reduce().is_empty() {
        return Some(format!("the disc word of {f} is not freely trivial"));
    }
    if let Some(other) = d
        .three_handles
        .iter()
        .find(|o| &o.id != t && o.link_2h_core.get(f).copied().unwrap_or(0) != 0)
    {
        return Some(format!("3-handle {} also runs over {f}", other.id));
    }
    None
}

fn add(kind: MoveKind, a: i64, b: i64) -> Result<i64, MoveError> {
    a.checked_add(b).ok_or(MoveError::Overflow(kind))
}

fn mul(kind: MoveKind, a: i64, b: i64) -> Result<i64, MoveError> {
    a.checked_mul(b).ok_or(MoveError::Overflow(kind))
}

fn add_u(kind: MoveKind, map: &mut BTreeMap<Id, u64>, key: &Id, by: u64) -> Result<(), MoveError> {
    if by == 0 {
        return Ok(());
    }
    let entry = map.entry(key.clone()).or_insert(0);
    *entry = entry.checked_add(by).ok_or(MoveError::Overflow(kind))?;
    Ok(())
}

fn remove_three_entries(d: &mut KirbyDiagram, id: &Id) {
    for t in &mut d.three_handles {
        t.link_1h_attach.remove(id);
        t.link_1h_core.remove(id);
        t.link_2h_circle.remove(id);
        t.link_2h_core.remove(id);
    }
}

/// Applies one move, returning the new diagram and a report. The input is
/// never modified.
pub fn apply_move(
    d: &KirbyDiagram,
    r: &MoveRequest,
) -> Result<(KirbyDiagram, MoveReport), MoveError> {
    let diags = d.validate();
    if !diags.is_empty() {
        return Err(MoveError::InvalidDiagram(diags));
    }
    if let Err(reason) = check(d, r)? {
        return Err(MoveError::NotApplicable {
            kind: r.kind,
            reason,
        });
    }
    let pre = InvariantDigest::of(d);
    let mut out = d.clone();
    let justification = perform(&mut out, r)?;
    let post = InvariantDigest::of(&out);
    Ok((
        out,
        MoveReport {
            request: r.clone(),
            applied: true,
            pre,
            post,
            justification,
        },
    ))
}

fn perform(d: &mut KirbyDiagram, r: &MoveRequest) -> Result<String, MoveError> {
    let kind = r.kind;
    let a = r.actor.clone();
    let t = r.target.clone();
    let s = r.sign.value();
    match kind {
        MoveKind::Slide11 => {
            let b = t.expect("target checked");
            // b -> b a^s
            for f in &mut d.two_handles {
                let mut word = Vec::with_capacity(f.disc_word.len());
                for l in &f.disc_word {
                    if l.id == b {
                        let extra = Letter::new(a.clone(), r.sign.times(l.sign));
                        match l.sign {
                            Sign::Plus => word.extend([l.clone(), extra]),
                            Sign::Minus => word.extend([extra, l.clone()]),
                        }
                    } else {
                        word.push(l.clone());
                    }
                }
                f.disc_word = word;
            }
            let framed: Vec<Id> = d.two_handles.iter().map(|f| f.id.clone()).collect();
            for x in &framed {
                let v = add(
                    kind,
                    d.linking.get(x, &a),
                    mul(kind, s, d.linking.get(x, &b))?,
                )?;
                d.linking.set(x, &a, v);
            }
            Ok(format!(
                "slid dotted circle {a} over {b} (sign {}): letter {b} becomes {b}·{a}^{s} in every disc word; linking with {a} gains {s}·linking with {b}",
                r.sign
            ))
        }
        MoveKind::Slide21 => {
            let dot = t.expect("target checked");
            let lk = d.linking.get(&a, &dot);
            let old = d.self_linking(&a);
            let framing = add(kind, old, mul(kind, 2 * s, lk)?)?;
            let others: Vec<Id> = d
                .two_handles
                .iter()
                .map(|f| f.id.clone())
                .filter(|x| x != &a)
                .collect();
            let mut updates = Vec::new();
            for x in &others {
                updates.push((
                    x.clone(),
                    add(
                        kind,
                        d.linking.get(&a, x),
                        mul(kind, s, d.linking.get(&dot, x))?,
                    )?,
                ));
            }
            d.two_handle_mut(&a).expect("role checked").framing = framing;
            for (x, v) in updates {
                d.linking.set(&a, &x, v);
            }
            Ok(format!(
                "slid {a} over dotted circle {dot} (sign {}): framing {old} -> {framing} (= {old} + 2·({s})·{lk})",
                r.sign
            ))
        }
        MoveKind::Slide22 => {
            let h2 = t.expect("target checked");
            let f1 = d.self_linking(&a);
            let f2 = d.self_linking(&h2);
            let lk = d.linking.get(&a, &h2);
            let framing = add(kind, add(kind, f1, f2)?, mul(kind, 2 * s, lk)?)?;
            let new_lk = add(kind, lk, mul(kind, s, f2)?)?;
            let mut updates = Vec::new();
            for x in d.component_ids() {
                if x == a || x == h2 {
                    continue;
                }
                updates.push((
                    x.clone(),
                    add(
                        kind,
                        d.linking.get(&a, &x),
                        mul(kind, s, d.linking.get(&h2, &x))?,
                    )?,
                ));
            }
            let mut extra = d.two_handle(&h2).expect("role checked").disc_word.clone();
            if r.sign == Sign::Minus {
                extra = extra.iter().rev().map(Letter::inverse).collect();
            }
            for th in &mut d.three_handles {
                let by = th.link_2h_circle.get(&h2).copied().unwrap_or(0);
                add_u(kind, &mut th.link_2h_circle, &a, by)?;
            }
            let h1 = d.two_handle_mut(&a).expect("role checked");
            h1.framing = framing;
            h1.disc_word.extend(extra);
            for (x, v) in updates {
                d.linking.set(&a, &x, v);
            }
            d.linking.set(&a, &h2, new_lk);
            Ok(format!(
                "slid {a} over {h2} (sign {}): framing {f1} -> {framing} (= {f1} + {f2} + 2·({s})·{lk}); lk({a},{h2}) {lk} -> {new_lk}",
                r.sign
            ))
        }
        MoveKind::Slide31 => {
            let j = t.expect("target checked");
            let h = d.three_handle_mut(&a).expect("role checked");
            add_u(kind, &mut h.link_1h_attach, &j, 1)?;
            Ok(format!("slid 3-handle {a} over dotted circle {j}: 1a[{j}] += 1 (connected sum with the dual sphere of {j})"))
        }
        MoveKind::Slide32 => {
            let j = t.expect("target checked");
            let incs: Vec<(Id, u64)> = d
                .two_handles
                .iter()
                .filter(|x| x.id != j)
                .map(|x| (x.id.clone(), d.linking.get(&j, &x.id).unsigned_abs()))
                .collect();
            let h = d.three_handle_mut(&a).expect("role checked");
            add_u(kind, &mut h.link_2h_core, &j, 2)?;
            for (x, l) in incs {
                add_u(
                    kind,
                    &mut h.link_2h_circle,
                    &x,
                    l.checked_mul(2).ok_or(MoveError::Overflow(kind))?,
                )?;
            }
            Ok(format!(
                "slid 3-handle {a} over 2-handle {j}: 2b[{j}] += 2, 2a[x] += 2·|lk({j},x)|"
            ))
        }
        MoveKind::Slide33 => {
            let other = t.expect("target checked");
            let src = d.three_handle(&other).expect("role checked").clone();
            let h = d.three_handle_mut(&a).expect("role checked");
            for (dst, from) in [
                (&mut h.link_1h_attach, &src.link_1h_attach),
                (&mut h.link_1h_core, &src.link_1h_core),
                (&mut h.link_2h_circle, &src.link_2h_circle),
                (&mut h.link_2h_core, &src.link_2h_core),
            ] {
                for (k, &v) in from {
                    add_u(kind, dst, k, v)?;
                }
            }
            Ok(format!(
                "slid 3-handle {a} over 3-handle {other}: data of {other} added pointwise"
            ))
        }
        MoveKind::Cancel12 => {
            let dot = t.expect("target checked");
            d.one_handles.retain(|h| h.id != dot);
            d.two_handles.retain(|h| h.id != a);
            d.linking.remove_component(&dot);
            d.linking.remove_component(&a);
            remove_three_entries(d, &dot);
            remove_three_entries(d, &a);
            Ok(format!(
                "cancelled 1-handle {dot} against 2-handle {a}, which passes its disc once"
            ))
        }
        MoveKind::Cancel23 => {
            let f = t.expect("target checked");
            d.three_handles.retain(|h| h.id != a);
            d.two_handles.retain(|h| h.id != f);
            d.linking.remove_component(&f);
            remove_three_entries(d, &f);
            Ok(format!(
                "cancelled 2-handle {f} against 3-handle {a}, which meets its belt sphere once"
            ))
        }
        MoveKind::Cancel34 | MoveKind::EraseInessential3 => {
            d.three_handles.retain(|h| h.id != a);
            d.four_handles -= 1;
            Ok(if kind == MoveKind::Cancel34 {
                format!("cancelled 3-handle {a} against a 4-handle")
            } else {
                format!("erased inessential 3-handle {a} together with a 4-handle")
            })
        }
        MoveKind::Create12 => {
            let dot = t.expect("target checked");
            d.one_handles.push(OneHandle { id: dot.clone() });
            d.two_handles.push(TwoHandle {
                id: a.clone(),
                framing: 0,
                disc_word: vec![Letter::new(dot.clone(), r.sign)],
            });
            d.linking.set(&a, &dot, s);
            Ok(format!("created cancelling pair: dotted circle {dot} and 0-framed {a} passing its disc once"))
        }
        MoveKind::Create23 => {
            let f = t.expect("target checked");
            d.two_handles.push(TwoHandle {
                id: f.clone(),
                framing: 0,
                disc_word: vec![],
            });
            let mut h = ThreeHandleData::empty(a.clone());
            h.link_2h_core.insert(f.clone(), 1);
            d.three_handles.push(h);
            Ok(format!(
                "created cancelling pair: 0-framed unknot {f} and 3-handle {a} over it"
            ))
        }
        MoveKind::Create34 => {
            d.four_handles = d
                .four_handles
                .checked_add(1)
                .ok_or(MoveError::Overflow(kind))?;
            d.three_handles.push(ThreeHandleData::empty(a.clone()));
            Ok(format!("created cancelling pair: 3-handle {a} with trivial attaching sphere and a 4-handle"))
        }
    }
}

/// Applies moves in order, stopping at the first one that does not apply.
/// The failing move gets a report with `applied = false`. Overflow and an
/// invalid input diagram are errors.
pub fn run_script(
    d: &KirbyDiagram,
    script: &[MoveRequest],
) -> Result<(KirbyDiagram, Vec<MoveReport>), MoveError> {
    let mut current = d.clone();
    let mut reports = Vec::new();
    for r in script {
        match apply_move(&current, r) {
            Ok((next, report)) => {
                current = next;
                reports.push(report);
            }
            Err(e @ (MoveError::Overflow(_) | MoveError::InvalidDiagram(_))) => return Err(e),
            Err(e) => {
                let digest = InvariantDigest::of(&current);
                reports.push(MoveReport {
                    request: r.clone(),
                    applied: false,
                    pre: digest.clone(),
                    post: digest,
                    justification: format!("stopped: {e}"),
                });
                break;
            }
        }
    }
    Ok((current, reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{parse_kirby, serialize_kd3};
    use crate::samples;

    fn id(s: &str) -> Id {
        Id::new(s).unwrap()
    }

    fn req(kind: MoveKind, actor: &str, target: Option<&str>, sign: Sign) -> MoveRequest {
        MoveRequest::new(kind, id(actor), target.map(id), sign)
    }

    fn t2s2() -> KirbyDiagram {
        parse_kirby(samples::T2_S2.as_bytes()).unwrap().diagram
    }

    fn two_framed(f1: i64, f2: i64, lk: i64) -> KirbyDiagram {
        let mut d = KirbyDiagram::new();
        for (name, fr) in [("h1", f1), ("h2", f2)] {
            d.two_handles.push(TwoHandle {
                id: id(name),
                framing: fr,
                disc_word: vec![],
            });
        }
        d.linking.set(&id("h1"), &id("h2"), lk);
        d
    }

    #[test]
    fn slide_2_2_framing() {
        let d = two_framed(0, 0, 1);
        let (out, report) =
            apply_move(&d, &req(MoveKind::Slide22, "h1", Some("h2"), Sign::Plus)).unwrap();
        assert_eq!(out.self_linking(&id("h1")), 2);
        assert!(report.applied);
        assert_eq!(report.pre.snf_divisors, report.post.snf_divisors);
    }

    #[test]
    fn slide_3_1_connected_sum() {
        let (out, _) = apply_move(
            &t2s2(),
            &req(MoveKind::Slide31, "s1", Some("d2"), Sign::Plus),
        )
        .unwrap();
        let h = out.three_handle(&id("s1")).unwrap();
        assert_eq!(h.link_1h_attach.get(&id("d1")), Some(&1));
        assert_eq!(h.link_1h_attach.get(&id("d2")), Some(&1));
    }

    #[test]
    fn create_cancel_2_3_round_trip() {
        let d = t2s2();
        let script = [
            req(MoveKind::Create23, "t9", Some("f9"), Sign::Plus),
            req(MoveKind::Cancel23, "t9", Some("f9"), Sign::Plus),
        ];
        let (out, reports) = run_script(&d, &script).unwrap();
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|r| r.applied));
        assert_eq!(serialize_kd3(&out), serialize_kd3(&d));
    }

    #[test]
    fn create_cancel_1_2_round_trip() {
        let d = t2s2();
        let (mid, _) =
            apply_move(&d, &req(MoveKind::Create12, "f9", Some("d9"), Sign::Minus)).unwrap();
        assert!(mid.is_valid());
        assert_eq!(mid.euler_characteristic(), d.euler_characteristic());
        let (out, _) =
            apply_move(&mid, &req(MoveKind::Cancel12, "f9", Some("d9"), Sign::Plus)).unwrap();
        assert_eq!(serialize_kd3(&out), serialize_kd3(&d));
    }

    #[test]
    fn cancel_1_2_extra_strand() {
        let mut d = KirbyDiagram::new();
        d.one_handles.push(OneHandle { id: id("d") });
        for name in ["f", "g"] {
            d.two_handles.push(TwoHandle {
                id: id(name),
                framing: 0,
                disc_word: vec![Letter::new(id("d"), Sign::Plus)],
            });
            d.linking.set(&id(name), &id("d"), 1);
        }
        let a = applicable(&d, &req(MoveKind::Cancel12, "f", Some("d"), Sign::Plus)).unwrap();
        assert!(!a.applicable);
        assert!(a.reason.contains("extra strand"), "{}", a.reason);
    }

    #[test]
    fn cancel_2_3_predicate() {
        let mut d = KirbyDiagram::new();
        d.two_handles.push(TwoHandle {
            id: id("f"),
            framing: 0,
            disc_word: vec![],
        });
        let mut t = ThreeHandleData::empty(id("t"));
        t.link_2h_core.insert(id("f"), 1);
        d.three_handles.push(t);
        let r = req(MoveKind::Cancel23, "t", Some("f"), Sign::Plus);
        assert!(applicable(&d, &r).unwrap().applicable);
        d.three_handles[0].link_2h_core.insert(id("f"), 3);
        assert!(!applicable(&d, &r).unwrap().applicable);
    }

    #[test]
    fn erase_needs_four_handle() {
        let mut d = KirbyDiagram::new();
        d.three_handles.push(ThreeHandleData::empty(id("t")));
        let r = req(MoveKind::EraseInessential3, "t", None, Sign::Plus);
        assert!(!applicable(&d, &r).unwrap().applicable);
        d.four_handles = 1;
        assert!(applicable(&d, &r).unwrap().applicable);
        let (out, _) = apply_move(&d, &r).unwrap();
        assert_eq!((out.three_handles.len(), out.four_handles), (0, 0));
    }

    #[test]
    fn unknown_ids_and_failed_scripts() {
        let d = t2s2();
        assert_eq!(
            applicable(&d, &req(MoveKind::Slide31, "nope", Some("d1"), Sign::Plus)),
            Err(MoveError::UnknownId(id("nope")))
        );
        let script = [
            req(MoveKind::Slide31, "s1", Some("d2"), Sign::Plus),
            req(MoveKind::Cancel34, "s1", None, Sign::Plus),
            req(MoveKind::Slide31, "s1", Some("d2"), Sign::Plus),
        ];
        let (out, reports) = run_script(&d, &script).unwrap();
        assert_eq!(reports.len(), 2);
        assert!(!reports[1].applied);
        assert_eq!(out.three_handle(&id("s1")).unwrap().link_1h_attach.len(), 2);
        assert_eq!(run_script(&d, &[]).unwrap(), (d.clone(), vec![]));
    }

    #[test]
    fn overflow_is_reported() {
        let d = two_framed(i64::MAX, 1, 0);
        assert_eq!(
            apply_move(&d, &req(MoveKind::Slide22, "h1", Some("h2"), Sign::Plus)).map(|_| ()),
            Err(MoveError::Overflow(MoveKind::Slide22))
        );
    }

    #[test]
    fn kinds_round_trip_names() {
        for k in MoveKind::ALL {
            assert_eq!(k.name().parse::<MoveKind>().unwrap(), k);
        }
    }
}
