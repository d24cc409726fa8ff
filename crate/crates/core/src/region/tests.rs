use super::*;
use crate::element::BicyclicElement;

fn e(i: u64, j: u64) -> BicyclicElement {
    BicyclicElement::from_u64(i, j)
}

fn b(v: u64) -> BigUint {
    BigUint::from(v)
}

/// Pointwise window comparison used throughout: the region against a
/// predicate, over `[0, n]²`.
fn window_matches(r: &Region, n: u64, pred: impl Fn(u64, u64) -> bool) {
    for s in 0..=n {
        for t in 0..=n {
            assert_eq!(r.member_u64(s, t), pred(s, t), "point ({s},{t}) of {r}");
        }
    }
}

#[test]
fn membership_examples() {
    let quad2 = Region::quadrant(&b(2));
    assert!(quad2.member(&e(5, 2)));
    // Tail of (1,2) with offset 1 excludes the anchor.
    let tail = e(1, 2).strict_down_set();
    assert!(!tail.member(&e(1, 2)));
    assert!(tail.member(&e(2, 3)));
    let c3 = Region::square(&b(3));
    assert!(!c3.member(&e(3, 4)));
}

#[test]
fn boolean_ops_examples() {
    let quad3 = Region::quadrant(&b(3));
    let down12 = e(1, 2).down_set();
    let inter = quad3.intersect(&down12);
    window_matches(&inter, 40, |s, t| t == s + 1 && s >= 3);

    assert!(Region::full().complement().is_empty());

    let d_neg = e(1, 2).updown_set();
    let d_pos = e(3, 1).updown_set();
    assert!(d_neg.intersect(&d_pos).is_empty());
}

#[test]
fn subset_examples() {
    assert!(Region::quadrant(&b(5)).subset(&Region::quadrant(&b(2))));
    assert!(!e(0, 0).down_set().subset(&Region::quadrant(&b(1))));
    // Quadrant(2) ∩ diagonal 0 is a set of idempotents.
    let idems = e(0, 0).updown_set();
    let tail = Region::quadrant(&b(2)).intersect(&idems);
    assert!(tail.subset(&idems));
    assert!(!idems.subset(&tail));
}

#[test]
fn size_queries() {
    let up = e(9, 4).up_set();
    assert!(up.is_finite());
    assert_eq!(up.cardinality(), Cardinality::Finite(b(5)));
    assert!(!e(0, 0).down_set().is_finite());
    assert!(!Region::quadrant(&b(2)).is_cofinite());
    // Complement of a square is cofinite.
    assert!(Region::square(&b(4)).complement().is_cofinite());
    assert_eq!(Region::empty().cardinality(), Cardinality::Finite(b(0)));
    assert_eq!(Region::full().cardinality(), Cardinality::Infinite);
}

#[test]
fn product_image_examples() {
    let q2 = Region::quadrant(&b(2));
    assert_eq!(q2.product_image(&q2), q2);

    let one = Region::point(&e(0, 0));
    let r = e(3, 1).down_set().union(&Region::square(&b(2)));
    assert_eq!(one.product_image(&r), r);
    assert_eq!(r.product_image(&one), r);

    // Comparability classes are full diagonals; their product is a tail
    // of the sum diagonal. For ↕q · ↕p the tail starts at offset 1: no
    // factor pair multiplies to the identity, as the window confirms.
    let lhs = e(1, 0).updown_set().product_image(&e(0, 1).updown_set());
    window_matches(&lhs, 30, |s, t| s == t && s >= 1);
    for a in 0..=30u64 {
        for b_ in 0..=30u64 {
            let p = e(a + 1, a).mul(&e(b_, b_ + 1));
            assert!(lhs.member(&p));
            assert_ne!(p, e(0, 0));
        }
    }
    // Classes meeting the idempotent diagonal multiply to the full sum
    // diagonal, the stated class identity.
    let lhs = e(0, 1).updown_set().product_image(&e(1, 0).updown_set());
    assert_eq!(lhs, e(1, 1).updown_set());
    let lhs = e(1, 2).updown_set().product_image(&e(1, 3).updown_set());
    assert_eq!(lhs, e(2, 5).updown_set());
}

#[test]
fn inverse_image_examples() {
    let vray = Region::from_cells(vec![Cell::new(
        Ext::fin(3),
        Ext::fin(3),
        Ext::fin(1),
        Ext::PosInf,
        Ext::NegInf,
        Ext::PosInf,
    )
    .unwrap()]);
    let hray = vray.inverse_image();
    window_matches(&hray, 12, |s, t| t == 3 && s >= 1);

    let q = Region::quadrant(&b(4));
    assert_eq!(q.inverse_image(), q);
    assert_eq!(e(1, 2).down_set().inverse_image(), e(2, 1).down_set());
}

#[test]
fn enumerate_examples() {
    assert!(Region::empty().enumerate(5).is_empty());
    let idems = e(0, 0).updown_set();
    assert_eq!(
        idems.enumerate(3),
        vec![e(0, 0), e(1, 1), e(2, 2), e(3, 3)]
    );
    assert_eq!(
        Region::quadrant(&b(2)).enumerate(3),
        vec![e(2, 2), e(2, 3), e(3, 2), e(3, 3)]
    );
}

#[test]
fn canonical_equality_identifies_extensionally_equal_regions() {
    // The full space assembled from two diagonal half-planes.
    let lower = Cell::new(
        Ext::fin(0),
        Ext::PosInf,
        Ext::fin(0),
        Ext::PosInf,
        Ext::NegInf,
        Ext::fin(0),
    )
    .unwrap();
    let upper = Cell::new(
        Ext::fin(0),
        Ext::PosInf,
        Ext::fin(0),
        Ext::PosInf,
        Ext::fin(1),
        Ext::PosInf,
    )
    .unwrap();
    assert_eq!(Region::from_cells(vec![lower, upper]), Region::full());

    // A box assembled from its columns.
    let mut cols = Vec::new();
    for s in 0..4u64 {
        cols.push(
            Cell::new(
                Ext::fin(s as i64),
                Ext::fin(s as i64),
                Ext::fin(0),
                Ext::fin(2),
                Ext::NegInf,
                Ext::PosInf,
            )
            .unwrap(),
        );
    }
    let box_region = Region::from_cells(vec![Cell::new(
        Ext::fin(0),
        Ext::fin(3),
        Ext::fin(0),
        Ext::fin(2),
        Ext::NegInf,
        Ext::PosInf,
    )
    .unwrap()]);
    assert_eq!(Region::from_cells(cols), box_region);
}

#[test]
fn canonicalization_is_idempotent() {
    let samples = [
        Region::full(),
        Region::empty(),
        Region::quadrant(&b(3)),
        e(2, 5).down_set().union(&Region::square(&b(4))),
        Region::square(&b(6)).complement(),
        e(1, 0).updown_set().product_image(&Region::quadrant(&b(2))),
    ];
    for r in &samples {
        let again = Region::from_cells(r.cells().to_vec());
        assert_eq!(&again, r);
        assert_eq!(again.cells(), r.cells());
    }
}

#[test]
fn json_round_trip_and_schema_shape() {
    let r = e(1, 2)
        .down_set()
        .union(&Region::square(&b(3)))
        .union(&Region::quadrant(&b(7)));
    let v = r.to_json_value().unwrap();
    assert!(v.get("cells").unwrap().is_array());
    for cj in v["cells"].as_array().unwrap() {
        assert!(cj["s"]["min"].is_u64());
        assert!(cj["t"].get("max").is_some());
        assert!(cj.get("d").is_some());
    }
    let back = Region::from_json_value(&v).unwrap();
    assert_eq!(back, r);

    // Defaults: omitted mins are 0, omitted d is unconstrained; an
    // empty cell is dropped.
    let parsed = Region::from_json_str(
        r#"{"cells":[{"s":{"max":2},"t":{"max":2}},{"s":{"min":5,"max":4},"t":{"max":null}}]}"#,
    )
    .unwrap();
    assert_eq!(parsed, Region::square(&b(2)));
}

#[test]
fn window_soundness_of_all_ops_on_shapes() {
    let shapes: Vec<Region> = vec![
        Region::empty(),
        Region::full(),
        Region::point(&e(2, 5)),
        Region::quadrant(&b(3)),
        Region::square(&b(4)),
        e(1, 3).down_set(),
        e(4, 2).up_set(),
        e(2, 2).updown_set(),
        Region::square(&b(5)).complement(),
    ];
    let n = 14;
    for a in &shapes {
        let ac = a.complement();
        window_matches(&ac, n, |s, t| !a.member_u64(s, t));
        assert_eq!(ac.complement(), *a);
        let inv = a.inverse_image();
        window_matches(&inv, n, |s, t| a.member_u64(t, s));
        assert_eq!(inv.inverse_image(), *a);
        for c in &shapes {
            let u = a.union(c);
            let i = a.intersect(c);
            let d = a.difference(c);
            window_matches(&u, n, |s, t| a.member_u64(s, t) || c.member_u64(s, t));
            window_matches(&i, n, |s, t| a.member_u64(s, t) && c.member_u64(s, t));
            window_matches(&d, n, |s, t| a.member_u64(s, t) && !c.member_u64(s, t));
            assert_eq!(a.subset(c), d.is_empty());
        }
    }
}

#[test]
fn anti_homomorphism_of_inversion() {
    let a = e(2, 0).updown_set().union(&Region::square(&b(2)));
    let c = Region::quadrant(&b(1));
    let lhs = c.inverse_image().product_image(&a.inverse_image());
    let rhs = a.product_image(&c).inverse_image();
    assert_eq!(lhs, rhs);
}
