use std::sync::OnceLock;

use momentkit::geometry::{contains, convex_hull, cut, Halfspace, Polytope, QVector};
use momentkit::lie::{to_dominant, weyl_group, Family, RootSystem, WeylGroup};
use momentkit::rational::{int, rat, Rational};
use proptest::prelude::*;

fn point(dim: usize) -> impl Strategy<Value = QVector> {
    prop::collection::vec(-6i64..=6, dim).prop_map(|c| QVector::from_ints(&c))
}

fn cloud() -> impl Strategy<Value = Vec<QVector>> {
    (1usize..=3).prop_flat_map(|dim| prop::collection::vec(point(dim), 1..=9))
}

fn cloud_with_halfspace() -> impl Strategy<Value = (Vec<QVector>, QVector, i64)> {
    (1usize..=3).prop_flat_map(|dim| {
        (
            prop::collection::vec(point(dim), 1..=9),
            point(dim).prop_filter("nonzero normal", |n| !n.is_zero()),
            -8i64..=8,
        )
    })
}

/// Convex combination with positive weights.
fn combination(points: &[QVector], weights: &[u32]) -> QVector {
    let total: u32 = weights.iter().sum();
    let mut acc = QVector::zeros(points[0].dim());
    for (p, w) in points.iter().zip(weights) {
        acc = &acc + &p.scale(&rat(*w as i64, total as i64));
    }
    acc
}

fn face_rank(p: &Polytope, vertices: &[usize]) -> usize {
    let face: Vec<QVector> = vertices.iter().map(|&i| p.vertices()[i].clone()).collect();
    convex_hull(&face).unwrap().affine_rank()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn hull_is_idempotent(pts in cloud()) {
        let p = convex_hull(&pts).unwrap();
        let again = convex_hull(p.vertices()).unwrap();
        prop_assert_eq!(again.vertices(), p.vertices());
        prop_assert_eq!(again.facets().len(), p.facets().len());
    }

    #[test]
    fn facets_are_supporting_and_full(pts in cloud()) {
        let p = convex_hull(&pts).unwrap();
        for f in p.facets() {
            for v in p.vertices() {
                prop_assert!(f.halfspace.contains(v));
            }
            for &i in &f.vertices {
                prop_assert!(f.halfspace.is_tight(&p.vertices()[i]));
            }
            prop_assert_eq!(face_rank(&p, &f.vertices) + 1, p.affine_rank());
        }
        if p.affine_rank() >= 2 {
            // Every vertex lies on at least `rank` facets.
            for v in p.vertices() {
                prop_assert!(p.facets_containing(v).len() >= p.affine_rank());
            }
        }
        for x in &pts {
            prop_assert!(contains(&p, x).unwrap());
        }
    }

    #[test]
    fn convex_combinations_are_inside(
        pts in cloud(),
        weights in prop::collection::vec(1u32..=5, 9),
    ) {
        let p = convex_hull(&pts).unwrap();
        let x = combination(&pts, &weights[..pts.len()]);
        prop_assert!(contains(&p, &x).unwrap());
    }

    #[test]
    fn cut_is_contained_in_both((pts, normal, offset) in cloud_with_halfspace()) {
        let p = convex_hull(&pts).unwrap();
        let h = Halfspace::new(normal, int(offset)).unwrap();
        let kept: Vec<&QVector> = p.vertices().iter().filter(|v| h.contains(v)).collect();
        match cut(&p, &h).unwrap() {
            None => prop_assert!(kept.is_empty()),
            Some(c) => {
                prop_assert!(c.affine_rank() <= p.affine_rank());
                for v in c.vertices() {
                    prop_assert!(h.contains(v));
                    prop_assert!(contains(&p, v).unwrap());
                }
                for v in kept {
                    prop_assert!(contains(&c, v).unwrap());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn vertices_are_input_points(pts in cloud()) {
        let p = convex_hull(&pts).unwrap();
        for v in p.vertices() {
            prop_assert!(pts.contains(v));
        }
        // No vertex is a convex combination of the others.
        for (i, v) in p.vertices().iter().enumerate() {
            let others: Vec<QVector> = p.vertices().iter().enumerate()
                .filter(|(j, _)| *j != i).map(|(_, w)| w.clone()).collect();
            if !others.is_empty() {
                prop_assert!(!contains(&convex_hull(&others).unwrap(), v).unwrap());
            }
        }
    }

    #[test]
    fn cut_by_a_valid_inequality_is_identity(pts in cloud()) {
        let p = convex_hull(&pts).unwrap();
        for f in p.facets() {
            let c = cut(&p, &f.halfspace).unwrap().unwrap();
            prop_assert_eq!(c.vertices(), p.vertices());
        }
    }
}

fn systems() -> &'static [(RootSystem, WeylGroup)] {
    static SYSTEMS: OnceLock<Vec<(RootSystem, WeylGroup)>> = OnceLock::new();
    SYSTEMS.get_or_init(|| {
        [
            (Family::A, 1),
            (Family::A, 2),
            (Family::A, 3),
            (Family::B, 2),
            (Family::B, 3),
        ]
        .into_iter()
        .map(|(f, r)| {
            let rs = RootSystem::build(f, r).unwrap();
            let w = weyl_group(&rs).unwrap();
            (rs, w)
        })
        .collect()
    })
}

fn weight_in(rs: &RootSystem, coords: &[i64]) -> QVector {
    let v = QVector::from_ints(&coords[..rs.ambient_dim()]);
    if rs.family() == Family::A {
        let mean: Rational = v.sum() / int(v.dim() as i64);
        QVector::new(v.coords().iter().map(|c| c - &mean).collect())
    } else {
        v
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn orbit_times_stabilizer_is_group_order(
        k in 0usize..5,
        coords in prop::collection::vec(-3i64..=3, 4),
    ) {
        let (rs, w) = &systems()[k];
        let v = weight_in(rs, &coords);
        prop_assert_eq!(w.orbit(&v).len() * w.stabilizer(&v).order(), w.order());
    }

    #[test]
    fn to_dominant_is_weyl_invariant(
        k in 0usize..5,
        coords in prop::collection::vec(-3i64..=3, 4),
        pick in any::<prop::sample::Index>(),
    ) {
        let (rs, w) = &systems()[k];
        let v = weight_in(rs, &coords);
        let (g, dom) = to_dominant(rs, &v);
        prop_assert!(rs.is_dominant(&dom));
        prop_assert!(w.contains(&g));
        prop_assert_eq!(g.apply(&v), dom.clone());
        let u = &w.elements()[pick.index(w.order())];
        prop_assert_eq!(to_dominant(rs, &u.apply(&v)).1, dom.clone());
        // Exactly one orbit point is dominant.
        prop_assert_eq!(w.orbit(&v).iter().filter(|x| rs.is_dominant(x)).count(), 1);
    }

    #[test]
    fn weyl_elements_are_orthogonal_root_permutations(k in 0usize..5, pick in any::<prop::sample::Index>()) {
        let (rs, w) = &systems()[k];
        let g = &w.elements()[pick.index(w.order())];
        prop_assert!(g.matrix().is_orthogonal());
        prop_assert!(g.permutes(rs.roots()));
        prop_assert!(g.compose(&g.inverse()).is_identity());
    }
}

#[test]
fn weyl_orders() {
    let orders: Vec<usize> = systems().iter().map(|(_, w)| w.order()).collect();
    assert_eq!(orders, vec![2, 6, 24, 8, 48]);
}
