use std::f64::consts::PI;

use bongard_core::features::{inside, transform, Transform};
use bongard_core::ingest::segment_with;
use bongard_core::synth::{ShapeKind, ShapeSpec};
use bongard_core::{render, segment, BinaryImage, FillClass, SceneSpec};
use proptest::prelude::*;

fn noise_image(w: usize, h: usize, bits: &[bool]) -> BinaryImage {
    BinaryImage::from_pixels(w, h, bits.to_vec()).unwrap()
}

/// Page-coordinate variance of pixel centres projected on direction `t`,
/// plus the unit-square term.
fn projected_variance(pixels: &[(i32, i32)], t: f64) -> f64 {
    let n = pixels.len() as f64;
    let (dx, dy) = (t.cos(), t.sin());
    let proj: Vec<f64> = pixels.iter().map(|&(x, y)| x as f64 * dx - y as f64 * dy).collect();
    let mean = proj.iter().sum::<f64>() / n;
    proj.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / n + 1.0 / 12.0
}

/// Brute-force principal axis: the direction of largest projected variance,
/// searched on a fine grid, and the square root of the variance ratio.
fn axis_oracle(pixels: &[(i32, i32)]) -> (f64, f64) {
    let steps = 18_000;
    let (mut best_t, mut best_v, mut min_v) = (0.0, f64::NEG_INFINITY, f64::INFINITY);
    for k in 0..steps {
        let t = k as f64 * PI / steps as f64;
        let v = projected_variance(pixels, t);
        if v > best_v {
            best_v = v;
            best_t = t;
        }
        min_v = min_v.min(v);
    }
    (best_t, (best_v / min_v).sqrt())
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}

fn scene(shapes: Vec<ShapeSpec>) -> SceneSpec {
    SceneSpec {
        width: 128,
        height: 128,
        shapes,
    }
}

fn shape_strategy() -> impl Strategy<Value = ShapeSpec> {
    (0usize..3, 10.0f64..22.0, 0.0f64..2.0 * PI, any::<bool>(), 0.4f64..1.0).prop_map(
        |(k, scale, rot, solid, aspect)| {
            let kind = match k {
                0 => ShapeKind::Circle,
                1 => ShapeKind::Triangle,
                _ => ShapeKind::Rectangle { aspect },
            };
            let fill = if solid { FillClass::Solid } else { FillClass::Outline };
            ShapeSpec::new(kind, (64.0, 64.0), scale, rot, fill)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn segmentation_partitions_the_foreground(bits in prop::collection::vec(prop::bool::weighted(0.35), 24 * 20)) {
        let img = noise_image(24, 20, &bits);
        let objs = segment_with(&img, 1);
        let mut owner = std::collections::HashMap::new();
        for (k, o) in objs.iter().enumerate() {
            for (x, y) in o.mask.pixels() {
                prop_assert!(img.get(x as usize, y as usize));
                prop_assert!(owner.insert((x, y), k).is_none(), "pixel in two figures");
            }
        }
        prop_assert_eq!(owner.len(), img.foreground_count());
        // No two figures touch, even diagonally.
        for (&(x, y), &k) in &owner {
            for dy in -1..=1 {
                for dx in -1..=1 {
                    if let Some(&j) = owner.get(&(x + dx, y + dy)) {
                        prop_assert_eq!(j, k);
                    }
                }
            }
        }
    }

    #[test]
    fn segmentation_is_deterministic(bits in prop::collection::vec(prop::bool::weighted(0.4), 30 * 30)) {
        let img = noise_image(30, 30, &bits);
        let a = segment(&img);
        let b = segment(&img);
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(&x.mask, &y.mask);
            prop_assert_eq!(x.attributes, y.attributes);
            prop_assert_eq!(x.shape, y.shape);
            prop_assert_eq!(x.fill, y.fill);
        }
    }

    #[test]
    fn translation_moves_position_only(shape in shape_strategy(), dx in -30i64..30, dy in -30i64..30) {
        let img = render(&scene(vec![shape])).unwrap();
        let moved = img.translated(dx, dy);
        let a = segment(&img);
        let b = segment(&moved);
        prop_assert_eq!(a.len(), 1);
        prop_assert_eq!(b.len(), 1);
        let (p, q) = (&a[0].attributes, &b[0].attributes);
        prop_assert!((q.xpos - p.xpos - dx as f64).abs() < 1e-9);
        prop_assert!((q.ypos - p.ypos + dy as f64).abs() < 1e-9);
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.abs().max(1.0);
        prop_assert!(close(q.size, p.size));
        prop_assert!(angle_gap(q.orientation, p.orientation) < 1e-9);
        prop_assert!(close(q.convexity, p.convexity));
        prop_assert!(close(q.compactness, p.compactness));
        prop_assert!(close(q.elongation, p.elongation));
        prop_assert!(close(q.color, p.color));
        prop_assert_eq!(q.ncorners, p.ncorners);
        prop_assert_eq!(a[0].shape, b[0].shape);
        prop_assert_eq!(a[0].fill, b[0].fill);
    }

    #[test]
    fn scaling_shifts_log_size_and_keeps_shape_measures(shape in shape_strategy()) {
        prop_assume!(shape.fill == FillClass::Solid);
        let mut big = shape.clone();
        big.scale *= 2.0;
        let a = segment(&render(&scene(vec![shape])).unwrap());
        let b = segment(&render(&scene(vec![big])).unwrap());
        let (p, q) = (&a[0].attributes, &b[0].attributes);
        prop_assert!((q.size - p.size - 4f64.ln()).abs() < 0.12, "{} vs {}", p.size, q.size);
        prop_assert!((q.compactness - p.compactness).abs() < 0.1);
        prop_assert!((q.convexity - p.convexity).abs() < 0.06);
        prop_assert!((q.elongation / p.elongation - 1.0).abs() < 0.08);
    }

    #[test]
    fn axis_matches_brute_force_oracle(aspect in 0.2f64..0.7, rot in 0.0f64..PI, scale in 14.0f64..30.0) {
        let spec = ShapeSpec::new(ShapeKind::Rectangle { aspect }, (64.0, 64.0), scale, rot, FillClass::Solid);
        let objs = segment(&render(&scene(vec![spec])).unwrap());
        let pixels: Vec<(i32, i32)> = objs[0].mask.pixels().collect();
        let (t, e) = axis_oracle(&pixels);
        let a = &objs[0].attributes;
        prop_assert!(angle_gap(a.orientation, t) < 0.002, "{} vs {}", a.orientation, t);
        prop_assert!((a.elongation - e).abs() < 1e-3 * e, "{} vs {}", a.elongation, e);
    }

    #[test]
    fn hulls_are_idempotent_and_hole_free(shape in shape_strategy()) {
        let objs = segment(&render(&scene(vec![shape])).unwrap());
        let refs: Vec<_> = objs.iter().collect();
        let hulls = transform(&refs, Transform::Hulls, 128);
        prop_assert_eq!(hulls.len(), objs.len());
        let hull_refs: Vec<_> = hulls.iter().collect();
        let again = transform(&hull_refs, Transform::Hulls, 128);
        for (h, g) in hulls.iter().zip(&again) {
            prop_assert_eq!(&h.mask, &g.mask);
        }
        prop_assert!(transform(&hull_refs, Transform::Holes, 128).is_empty());
    }

    #[test]
    fn inside_is_irreflexive_and_antisymmetric(outer in 30.0f64..40.0, inner in 4.0f64..12.0, off in 0.0f64..10.0, side_by_side in any::<bool>()) {
        let (ring_centre, dot_centre) = if side_by_side {
            ((50.0, 64.0), (50.0 + outer + inner + 6.0, 64.0))
        } else {
            ((64.0, 64.0), (64.0 + off, 64.0))
        };
        let ring = ShapeSpec::new(ShapeKind::Circle, ring_centre, outer, 0.0, FillClass::Outline);
        let dot = ShapeSpec::new(ShapeKind::Circle, dot_centre, inner, 0.0, FillClass::Solid);
        let spec = scene(vec![ring, dot]);
        spec.validate().unwrap();
        let objs = segment(&render(&spec).unwrap());
        for a in &objs {
            prop_assert!(!inside(a, a));
            for b in &objs {
                prop_assert!(!(inside(a, b) && inside(b, a)));
            }
        }
        let nested = objs.iter().any(|a| objs.iter().any(|b| inside(a, b)));
        prop_assert_eq!(nested, objs.len() == 2 && !side_by_side);
    }
}

#[test]
fn bar_at_45_degrees() {
    // 3:1 bar, 60 x 20 before rotation.
    let spec = ShapeSpec::new(
        ShapeKind::Rectangle { aspect: 1.0 / 3.0 },
        (64.0, 64.0),
        30.0,
        PI / 4.0,
        FillClass::Solid,
    );
    let objs = segment(&render(&scene(vec![spec])).unwrap());
    assert_eq!(objs.len(), 1);
    let a = &objs[0].attributes;
    assert!((a.orientation - PI / 4.0).abs() < 0.05, "{}", a.orientation);
    assert!((a.elongation - 3.0).abs() < 0.5, "{}", a.elongation);
    let pixels: Vec<(i32, i32)> = objs[0].mask.pixels().collect();
    let (t, e) = axis_oracle(&pixels);
    assert!(angle_gap(t, PI / 4.0) < 0.05);
    assert!((e - 3.0).abs() < 0.5);
}

#[test]
fn empty_image_has_no_figures() {
    let img = render(&scene(Vec::new())).unwrap();
    assert!(segment(&img).is_empty());
}
