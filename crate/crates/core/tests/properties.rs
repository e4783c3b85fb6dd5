mod common;

use std::collections::BTreeMap;

use common::{id, random_banded, random_diagram, random_pair, random_slide, Rng};
use kd3_core::diagram::{Letter, OneHandle, ThreeHandleData};
use kd3_core::format::{parse_kirby, parse_unlink, serialize_kd3, serialize_unlink};
use kd3_core::groups::{
    abelianization, count_homs, pi1_of_boundary, pi1_of_x, tietze_simplify, wirtinger,
    Presentation, TargetGroup, Word,
};
use kd3_core::invariants::{
    boundary_homology, check_basis_integral, check_basis_mod2, linking_matrix,
};
use kd3_core::matrix::{smith_normal_form, IntegerMatrix};
use kd3_core::moves::{apply_move, InvariantDigest, MoveKind};
use kd3_core::surface::{resolve, Which};
use kd3_core::unlink::BandedUnlink;
use kd3_core::{samples, Id, KirbyDiagram, Sign};
use proptest::prelude::*;

const S3: TargetGroup = TargetGroup::Symmetric(3);

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((1i32..=3, any::<bool>()), 0..10).prop_map(|ls| {
        Word(
            ls.into_iter()
                .map(|(g, inv)| if inv { -g } else { g })
                .collect(),
        )
    })
}

fn presentation() -> impl Strategy<Value = Presentation> {
    prop::collection::vec(word(), 0..4).prop_map(|rs| Presentation::new(3, rs))
}

fn two_b_mod2(d: &KirbyDiagram) -> BTreeMap<Id, BTreeMap<Id, u64>> {
    d.three_handles
        .iter()
        .map(|h| {
            let m = h
                .link_2h_core
                .iter()
                .map(|(k, v)| (k.clone(), v % 2))
                .filter(|&(_, v)| v == 1)
                .collect();
            (h.id.clone(), m)
        })
        .collect()
}

fn codes(d: &KirbyDiagram) -> Vec<&'static str> {
    d.validate().iter().map(|x| x.code()).collect()
}

fn relabel(b: &BandedUnlink, rng: &mut Rng) -> BandedUnlink {
    let mut names: Vec<usize> = (0..b.components.len()).collect();
    rng.shuffle(&mut names);
    let rename: BTreeMap<Id, Id> = b
        .components
        .iter()
        .zip(&names)
        .map(|(c, &n)| (c.id.clone(), id(&format!("r{n}"))))
        .collect();
    let mut out = b.clone();
    for c in &mut out.components {
        c.id = rename[&c.id].clone();
    }
    for (k, band) in out.bands.iter_mut().enumerate() {
        band.id = id(&format!("m{}", b.bands.len() - k));
        band.a.component = rename[&band.a.component].clone();
        band.b.component = rename[&band.b.component].clone();
        if rng.next() & 1 == 0 {
            std::mem::swap(&mut band.a, &mut band.b);
        }
    }
    rng.shuffle(&mut out.components);
    rng.shuffle(&mut out.bands);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kd3_round_trip_is_canonical(seed in any::<u64>()) {
        let d = random_diagram(&mut Rng::new(seed));
        let text = serialize_kd3(&d);
        let back = parse_kirby(text.as_bytes()).unwrap().diagram;
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(serialize_kd3(&back), text);
    }

    #[test]
    fn serialization_ignores_input_order(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let d = random_diagram(&mut rng);
        let mut e = d.clone();
        rng.shuffle(&mut e.one_handles);
        rng.shuffle(&mut e.two_handles);
        rng.shuffle(&mut e.three_handles);
        prop_assert_eq!(serialize_kd3(&e), serialize_kd3(&d));
        prop_assert_eq!(e.euler_characteristic(), d.euler_characteristic());
        e.canonicalize();
        prop_assert_eq!(e, d);
    }

    #[test]
    fn unlink_round_trip(seed in any::<u64>(), orientable in any::<bool>()) {
        let mut b = random_banded(&mut Rng::new(seed), orientable);
        b.canonicalize();
        let text = serialize_unlink(&b);
        prop_assert_eq!(parse_unlink(text.as_bytes()).unwrap(), b);
    }

    #[test]
    fn single_mutation_flips_one_diagnostic(seed in any::<u64>(), which in 0usize..5) {
        let mut rng = Rng::new(seed);
        let mut d = random_diagram(&mut rng);
        let dots = common::dotted(&d);
        let framed = common::framed(&d);
        let expected = match which {
            0 => {
                d.zero_handles = 0;
                "zero-handle-count"
            }
            1 if !dots.is_empty() && !framed.is_empty() => {
                let (f, x) = (&framed[0], &dots[0]);
                let v = d.linking.get(f, x);
                d.linking.set(f, x, v + 1);
                "word-linking-mismatch"
            }
            2 if dots.len() >= 2 => {
                d.linking.set(&dots[0], &dots[1], 1);
                "dotted-dotted-linking"
            }
            3 if !framed.is_empty() => {
                let f = d.two_handle_mut(&framed[0]).unwrap();
                f.disc_word.push(Letter::new(id("ghost"), Sign::Plus));
                "unknown-letter"
            }
            _ => {
                let mut h = ThreeHandleData::empty(id("t9"));
                h.link_1h_attach.insert(id("ghost"), 1);
                d.three_handles.push(h);
                "three-handle-unknown-ref"
            }
        };
        prop_assert_eq!(codes(&d), vec![expected]);
    }

    #[test]
    fn duplicate_id_is_reported_alone(seed in any::<u64>()) {
        let mut d = random_diagram(&mut Rng::new(seed));
        d.three_handles.push(ThreeHandleData::empty(id("dup")));
        d.three_handles.push(ThreeHandleData::empty(id("dup")));
        prop_assert_eq!(codes(&d), vec!["duplicate-id"]);
        d.three_handles.pop();
        d.one_handles.push(OneHandle { id: id("x") });
        prop_assert!(d.is_valid());
    }

    #[test]
    fn smith_form_invariant_under_unimodular_change(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let (r, c) = (1 + rng.below(4), 1 + rng.below(4));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.range(-5, 5)).collect()).collect();
        let a = IntegerMatrix::from_rows(c, &rows);
        let unimodular = |n: usize, rng: &mut Rng| {
            let mut m = IntegerMatrix::identity(n);
            for _ in 0..6 {
                let (i, j) = (rng.below(n), rng.below(n));
                if i != j {
                    let k = rng.range(-2, 2);
                    let mut e = IntegerMatrix::identity(n);
                    e[(i, j)] = k.into();
                    m = m.mul(&e);
                }
            }
            m
        };
        let u = unimodular(r, &mut rng);
        let v = unimodular(c, &mut rng);
        let b = u.mul(&a).mul(&v);
        let (sa, sb) = (smith_normal_form(&a), smith_normal_form(&b));
        prop_assert_eq!(&sa, &sb);
        let t = kd3_core::matrix::smith_normal_form_with_transforms(&a);
        let (left, right) = (t.left.clone().unwrap(), t.right.clone().unwrap());
        prop_assert_eq!(left.mul(&a).mul(&right), t.diagonal(r, c));
    }

    #[test]
    fn integral_basis_is_mod2_basis(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3)) {
        let mod2: Vec<Vec<bool>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(2) == 1).collect()).collect();
        if check_basis_integral(&rows).unwrap() {
            prop_assert!(check_basis_mod2(&mod2).unwrap());
        }
    }

    #[test]
    fn free_reduction_idempotent_and_shorter(w in word()) {
        let r = w.free_reduce();
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(r.free_reduce(), r.clone());
        let c = w.cyclic_reduce();
        prop_assert!(c.len() <= r.len());
        prop_assert_eq!(c.cyclic_reduce(), c);
    }

    #[test]
    fn tietze_preserves_counts(p in presentation()) {
        let q = tietze_simplify(&p, 50);
        prop_assert!(q.total_length() <= p.total_length());
        for t in [S3, TargetGroup::Cyclic(4), TargetGroup::Cyclic(6)] {
            prop_assert_eq!(count_homs(&q, &t).unwrap(), count_homs(&p, &t).unwrap());
        }
        prop_assert_eq!(abelianization(&q), abelianization(&p));
    }

    #[test]
    fn slides_preserve_invariants(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let d = random_diagram(&mut rng);
        if let Some(r) = random_slide(&d, &mut rng) {
            let (e, report) = apply_move(&d, &r).unwrap();
            prop_assert!(e.is_valid(), "{:?}", e.validate());
            prop_assert_eq!(&report.pre, &report.post);
            prop_assert_eq!(InvariantDigest::of(&e), InvariantDigest::of(&d));
            prop_assert_eq!(
                count_homs(&pi1_of_x(&e).presentation, &S3).unwrap(),
                count_homs(&pi1_of_x(&d).presentation, &S3).unwrap()
            );
            if matches!(r.kind, MoveKind::Slide22 | MoveKind::Slide32) {
                prop_assert_eq!(two_b_mod2(&e), two_b_mod2(&d));
            }
        }
    }

    #[test]
    fn create_cancel_pairs_round_trip(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let d = random_diagram(&mut rng);
        let [create, cancel] = random_pair(&mut rng, 0);
        let (mid, _) = apply_move(&d, &create).unwrap();
        prop_assert_eq!(mid.euler_characteristic(), d.euler_characteristic());
        prop_assert!(mid.is_valid());
        let (back, _) = apply_move(&mid, &cancel).unwrap();
        prop_assert_eq!(back.euler_characteristic(), d.euler_characteristic());
        prop_assert_eq!(back, d);
    }

    #[test]
    fn moves_are_deterministic(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let d = random_diagram(&mut rng);
        if let Some(r) = random_slide(&d, &mut rng) {
            prop_assert_eq!(apply_move(&d, &r).unwrap(), apply_move(&d.clone(), &r).unwrap());
        }
    }

    #[test]
    fn resolve_ignores_labels(seed in any::<u64>(), orientable in any::<bool>()) {
        let mut rng = Rng::new(seed);
        let b = random_banded(&mut rng, orientable);
        let c = relabel(&b, &mut rng);
        for w in [Which::LMinus, Which::LPlus] {
            prop_assert_eq!(resolve(&b, w).unwrap().components, resolve(&c, w).unwrap().components);
        }
    }

    #[test]
    fn boundary_rank_matches_linking_matrix(seed in any::<u64>()) {
        let d = random_diagram(&mut Rng::new(seed));
        let h = boundary_homology(&d);
        let m = linking_matrix(&d).rows();
        prop_assert_eq!(h.h2_free_rank, m - h.rank());
        prop_assert_eq!(h.h1.free_rank, h.h2_free_rank);
    }
}

#[test]
fn dropping_any_wirtinger_relator_keeps_hom_counts() {
    let trefoil = samples::trefoil_pd();
    let spun = samples::spun_trefoil_surgery_pd();
    for pd in [&trefoil, &spun] {
        let w = wirtinger(pd).unwrap();
        let gens = w.presentation.generators;
        assert_eq!(w.crossing_relators.len(), pd.crossings.len());
        let mut counts = Vec::new();
        for skip in 0..w.crossing_relators.len() {
            let rels = w
                .crossing_relators
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, r)| r.clone())
                .collect();
            let p = tietze_simplify(&Presentation::new(gens, rels), 1000);
            counts.push(count_homs(&p, &S3).unwrap());
        }
        assert!(counts.windows(2).all(|w| w[0] == w[1]), "{counts:?}");
    }
}

#[test]
fn boundary_group_abelianizes_to_boundary_homology() {
    for (name, text) in samples::ALL {
        let Ok(doc) = parse_kirby(text.as_bytes()) else {
            continue;
        };
        let Some(pd) = doc.surgery_pd else { continue };
        let p = pi1_of_boundary(&pd).unwrap();
        assert_eq!(
            abelianization(&p),
            boundary_homology(&doc.diagram).h1,
            "{name}"
        );
    }
}
