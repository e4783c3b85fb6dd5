//! Worked example documents.

use crate::format::parse_kirby;
use crate::id::{Id, Sign};
use crate::pd::{ComponentKind, Crossing, PdComponent, PlanarDiagramCode};

/// Exterior of the spun trefoil, with the planar diagram of its surgery link.
pub const SPUN_TREFOIL_EXTERIOR: &str = include_str!("../samples/spun_trefoil_exterior.kd3");
/// T²×S² with two 3-handles and no 4-handle.
pub const T2_S2: &str = include_str!("../samples/t2s2.kd3");
/// Banded unlink of the spun trefoil.
pub const SPUN_TREFOIL_BANDED: &str = include_str!("../samples/spun_trefoil_banded.kd3");
/// Banded unlink of an unknotted torus.
pub const TORUS_BANDED: &str = include_str!("../samples/torus_banded.kd3");
pub const UNKNOTTED_SPHERE: &str = include_str!("../samples/unknotted_sphere.kd3");
/// A 0-framed right-handed trefoil.
pub const TREFOIL_SURGERY: &str = include_str!("../samples/trefoil_surgery.kd3");

/// All sample documents by file name.
pub const ALL: [(&str, &str); 6] = [
    ("spun_trefoil_exterior.kd3", SPUN_TREFOIL_EXTERIOR),
    ("t2s2.kd3", T2_S2),
    ("spun_trefoil_banded.kd3", SPUN_TREFOIL_BANDED),
    ("torus_banded.kd3", TORUS_BANDED),
    ("unknotted_sphere.kd3", UNKNOTTED_SPHERE),
    ("trefoil_surgery.kd3", TREFOIL_SURGERY),
];

/// The closure of the 2-braid σ₁³, one component `K` with framing 0.
pub fn trefoil_pd() -> PlanarDiagramCode {
    PlanarDiagramCode {
        crossings: vec![
            Crossing::new([2, 4, 3, 1], Sign::Plus),
            Crossing::new([4, 6, 5, 3], Sign::Plus),
            Crossing::new([6, 2, 1, 5], Sign::Plus),
        ],
        components: vec![PdComponent {
            id: Id::new("K").expect("valid id"),
            edges: vec![1, 4, 5, 2, 3, 6],
            kind: ComponentKind::Framed(0),
        }],
    }
}

/// Surgery link of the boundary of the 2-handlebody of the spun-trefoil
/// exterior: L1, L2 dotted, L3 and L4 0-framed.
pub fn spun_trefoil_surgery_pd() -> PlanarDiagramCode {
    parse_kirby(SPUN_TREFOIL_EXTERIOR.as_bytes())
        .expect("sample parses")
        .surgery_pd
        .expect("sample has a planar diagram")
}
