#![allow(dead_code)]

use std::f64::consts::PI;

use bongard_core::synth::{ShapeKind, ShapeSpec, CANVAS};
use bongard_core::{build_problem, render, BinaryImage, FillClass, ProblemContext, SceneSpec};
use rand::Rng;

/// A random scene of up to `max_objects` non-overlapping basic shapes. With
/// some probability one shape is an outline circle holding a small solid
/// figure, so nesting relations occur.
pub fn random_scene<R: Rng>(rng: &mut R, max_objects: usize) -> SceneSpec {
    let n = rng.gen_range(0..=max_objects);
    let mut shapes: Vec<ShapeSpec> = Vec::new();
    let c = CANVAS as f64;
    if n >= 2 && rng.gen_bool(0.3) {
        let r = rng.gen_range(22.0..30.0);
        let centre = (rng.gen_range(r + 3.0..c - r - 3.0), rng.gen_range(r + 3.0..c - r - 3.0));
        shapes.push(ShapeSpec::new(ShapeKind::Circle, centre, r, 0.0, FillClass::Outline));
        shapes.push(ShapeSpec::new(
            basic_kind(rng),
            centre,
            rng.gen_range(5.0..r / 2.0),
            rng.gen_range(0.0..2.0 * PI),
            FillClass::Solid,
        ));
    }
    let mut tries = 0;
    while shapes.len() < n && tries < 500 {
        tries += 1;
        let scale = rng.gen_range(5.0..16.0);
        let fill = if rng.gen_bool(0.5) {
            FillClass::Solid
        } else {
            FillClass::Outline
        };
        let mut s = ShapeSpec::new(basic_kind(rng), (0.0, 0.0), scale, rng.gen_range(0.0..2.0 * PI), fill);
        let r = s.reach();
        s.center = (rng.gen_range(r + 3.0..c - r - 3.0), rng.gen_range(r + 3.0..c - r - 3.0));
        if shapes
            .iter()
            .all(|o| (o.center.0 - s.center.0).hypot(o.center.1 - s.center.1) > o.reach() + r + 4.0)
        {
            shapes.push(s);
        }
    }
    SceneSpec {
        width: CANVAS,
        height: CANVAS,
        shapes,
    }
}

fn basic_kind<R: Rng>(rng: &mut R) -> ShapeKind {
    match rng.gen_range(0..3) {
        0 => ShapeKind::Circle,
        1 => ShapeKind::Triangle,
        _ => ShapeKind::Rectangle {
            aspect: rng.gen_range(0.3..1.0),
        },
    }
}

pub fn random_images<R: Rng>(rng: &mut R, max_objects: usize) -> (Vec<BinaryImage>, Vec<BinaryImage>) {
    let mut side = || -> Vec<BinaryImage> {
        (0..6)
            .map(|_| render(&random_scene(rng, max_objects)).unwrap())
            .collect()
    };
    let left = side();
    let right = side();
    (left, right)
}

pub fn random_problem<R: Rng>(rng: &mut R, max_objects: usize) -> ProblemContext {
    let (left, right) = random_images(rng, max_objects);
    build_problem(&left, &right).unwrap()
}
