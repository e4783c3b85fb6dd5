//! Wirtinger presentations, longitudes and surgery presentations.

use std::collections::BTreeMap;

use super::{Presentation, Word};
use crate::id::{Id, Sign};
use crate::pd::{Edge, PdError, PlanarDiagramCode};

/// Wirtinger presentation of a link complement.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Wirtinger {
    /// One generator per arc; the last crossing relator is dropped.
    pub presentation: Presentation,
    /// All crossing relators, in crossing order.
    pub crossing_relators: Vec<Word>,
    /// Generator number (1-based) of the arc containing each edge.
    pub arc_of_edge: BTreeMap<Edge, usize>,
}

fn find(parent: &mut BTreeMap<Edge, Edge>, e: Edge) -> Edge {
    let mut root = e;
    while parent[&root] != root {
        root = parent[&root];
    }
    let mut cur = e;
    while parent[&cur] != root {
        let next = parent[&cur];
        parent.insert(cur, root);
        cur = next;
    }
    root
}

/// Over-strands are merged into arcs; each crossing gives the relator
/// `x_k^e x_i x_k^-e x_j^-1` where `x_k` is the over-arc, `x_i` and `x_j`
/// the incoming and outgoing under-arcs and `e` the crossing sign.
pub fn wirtinger(pd: &PlanarDiagramCode) -> Result<Wirtinger, PdError> {
    pd.validate()?;
    let mut parent: BTreeMap<Edge, Edge> = BTreeMap::new();
    for comp in &pd.components {
        for &e in &comp.edges {
            parent.insert(e, e);
        }
    }
    for c in &pd.crossings {
        let a = find(&mut parent, c.over_in());
        let b = find(&mut parent, c.over_out());
        if a != b {
            parent.insert(a.max(b), a.min(b));
        }
    }
    let edges: Vec<Edge> = parent.keys().copied().collect();
    let mut root_number = BTreeMap::new();
    let mut arc_of_edge = BTreeMap::new();
    for e in edges {
        let r = find(&mut parent, e);
        let next = root_number.len() + 1;
        let n = *root_number.entry(r).or_insert(next);
        arc_of_edge.insert(e, n);
    }

    let generators = root_number.len();
    let g = |e: Edge| arc_of_edge[&e] as i32;
    let crossing_relators: Vec<Word> = pd
        .crossings
        .iter()
        .map(|c| {
            let k = g(c.over_in());
            let k = match c.sign {
                Sign::Plus => k,
                Sign::Minus => -k,
            };
            Word(vec![k, g(c.under_in()), -k, -g(c.under_out())])
        })
        .collect();
    let mut relators = crossing_relators.clone();
    relators.pop();
    Ok(Wirtinger {
        presentation: Presentation::new(generators, relators),
        crossing_relators,
        arc_of_edge,
    })
}

/// The 0-framed longitude of a component, based at the start of its first
/// edge, in the Wirtinger generators of `w`.
fn longitude_in(pd: &PlanarDiagramCode, w: &Wirtinger, id: &Id) -> Result<Word, PdError> {
    let comp = pd
        .component(id)
        .ok_or_else(|| PdError::UnknownComponent { id: id.clone() })?;
    let under: BTreeMap<Edge, _> = pd.crossings.iter().map(|c| (c.under_in(), c)).collect();
    let mut letters = Vec::new();
    for e in &comp.edges {
        if let Some(c) = under.get(e) {
            let k = w.arc_of_edge[&c.over_in()] as i32;
            letters.push(match c.sign {
                Sign::Plus => k,
                Sign::Minus => -k,
            });
        }
    }
    letters.reverse();
    let writhe = pd.writhe(id)?;
    let meridian = w.arc_of_edge[&comp.edges[0]] as i32;
    Ok(Word(letters).concat(&Word::power(meridian, -writhe)))
}

/// The 0-framed longitude of a component as a word in the Wirtinger
/// generators of the whole diagram.
pub fn longitude(pd: &PlanarDiagramCode, id: &Id) -> Result<Word, PdError> {
    let w = wirtinger(pd)?;
    longitude_in(pd, &w, id)
}

/// Fundamental group of the 3-manifold obtained by surgery on the link,
/// dotted circles taken with framing 0: the Wirtinger presentation plus the
/// relator `longitude * meridian^framing` for each component.
pub fn pi1_of_boundary(pd: &PlanarDiagramCode) -> Result<Presentation, PdError> {
    let w = wirtinger(pd)?;
    let mut p = w.presentation.clone();
    for comp in &pd.components {
        let lambda = longitude_in(pd, &w, &comp.id)?;
        let meridian = w.arc_of_edge[&comp.edges[0]] as i32;
        p.relators.push(
            lambda
                .concat(&Word::power(meridian, comp.kind.framing()))
                .free_reduce(),
        );
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{abelianization, count_homs, TargetGroup};
    use crate::pd::{ComponentKind, PdComponent};
    use crate::samples;

    fn unknot(framing: i64) -> PlanarDiagramCode {
        PlanarDiagramCode {
            crossings: vec![],
            components: vec![PdComponent {
                id: Id::new("U").unwrap(),
                edges: vec![1],
                kind: ComponentKind::Framed(framing),
            }],
        }
    }

    fn s3_count(p: &Presentation) -> u64 {
        count_homs(p, &TargetGroup::Symmetric(3)).unwrap()
    }

    #[test]
    fn unknot_group() {
        let w = wirtinger(&unknot(0)).unwrap();
        assert_eq!(w.presentation, Presentation::free(1));
        assert!(longitude(&unknot(0), &Id::new("U").unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn surgeries_on_the_unknot() {
        assert_eq!(s3_count(&pi1_of_boundary(&unknot(0)).unwrap()), 6);
        assert_eq!(s3_count(&pi1_of_boundary(&unknot(1)).unwrap()), 1);
        assert_eq!(s3_count(&pi1_of_boundary(&unknot(-1)).unwrap()), 1);
        // lens space L(2,1): homs Z/2 -> S3
        assert_eq!(s3_count(&pi1_of_boundary(&unknot(2)).unwrap()), 4);
    }

    #[test]
    fn trefoil() {
        let pd = samples::trefoil_pd();
        let w = wirtinger(&pd).unwrap();
        assert_eq!(w.presentation.generators, 3);
        assert_eq!(w.crossing_relators.len(), 3);
        assert_eq!(s3_count(&w.presentation), 12);
        let lambda = longitude(&pd, &Id::new("K").unwrap()).unwrap();
        assert_eq!((1..=3).map(|g| lambda.exponent_sum(g)).sum::<i64>(), 0);
    }

    #[test]
    fn surgery_link_abelianization() {
        let p = pi1_of_boundary(&samples::spun_trefoil_surgery_pd()).unwrap();
        assert_eq!(abelianization(&p).free_rank, 2);
        assert!(abelianization(&p).torsion.is_empty());
    }
}
