//! Tietze reduction.

use super::{Presentation, Word};

/// Simplifies a presentation by free and cyclic reduction, removal of empty
/// and duplicate relators, and elimination of a generator that occurs
/// exactly once in some relator, as long as the total relator length does
/// not grow. Each elimination costs one step of
/// `budget`. The result presents an isomorphic group.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> Presentation {
    let mut p = tidy(p.clone());
    for _ in 0..budget {
        match best_elimination(&p) {
            Some(q) => p = q,
            None => break,
        }
    }
    p
}

fn tidy(mut p: Presentation) -> Presentation {
    let mut seen = std::collections::BTreeSet::new();
    p.relators = p
        .relators
        .into_iter()
        .map(|r| r.cyclic_reduce())
        .filter(|r| !r.is_empty())
        .filter(|r| {
            let inverse = r.inverse();
            let key = if inverse < *r { inverse } else { r.clone() };
            seen.insert(key)
        })
        .collect();
    p
}

/// `r = u g^e v` gives `g = (u^-1 v^-1)^e`.
fn solve(r: &Word, g: usize) -> Word {
    let letters = r.letters();
    let pos = letters
        .iter()
        .position(|l| l.unsigned_abs() as usize == g)
        .expect("generator occurs in relator");
    let u = Word(letters[..pos].to_vec());
    let v = Word(letters[pos + 1..].to_vec());
    let value = u.inverse().concat(&v.inverse());
    if letters[pos] > 0 {
        value
    } else {
        value.inverse()
    }
}

fn substitute(w: &Word, g: usize, value: &Word) -> Word {
    let inverse = value.inverse();
    let mut out = Vec::new();
    for &l in w.letters() {
        let a = l.unsigned_abs() as usize;
        if a == g {
            out.extend_from_slice(if l > 0 {
                value.letters()
            } else {
                inverse.letters()
            });
        } else {
            out.push(if a > g { l - l.signum() } else { l });
        }
    }
    Word(out).free_reduce()
}

fn renumber(w: &Word, g: usize) -> Word {
    Word(
        w.letters()
            .iter()
            .map(|&l| {
                if l.unsigned_abs() as usize > g {
                    l - l.signum()
                } else {
                    l
                }
            })
            .collect(),
    )
}

fn eliminate(p: &Presentation, r: usize, g: usize) -> Presentation {
    let value = renumber(&solve(&p.relators[r], g), g);
    let relators = p
        .relators
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != r)
        .map(|(_, w)| substitute(w, g, &value))
        .collect();
    Presentation {
        generators: p.generators - 1,
        relators,
    }
}

/// The elimination with the smallest resulting total length, if that
/// length does not exceed the current one.
fn best_elimination(p: &Presentation) -> Option<Presentation> {
    let mut best: Option<Presentation> = None;
    for (ri, r) in p.relators.iter().enumerate() {
        for g in 1..=p.generators {
            if r.occurrences(g) != 1 {
                continue;
            }
            let q = tidy(eliminate(p, ri, g));
            if best
                .as_ref()
                .is_none_or(|b| q.total_length() < b.total_length())
            {
                best = Some(q);
            }
        }
    }
    best.filter(|q| q.total_length() <= p.total_length())
}
