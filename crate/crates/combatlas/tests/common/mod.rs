//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::TAU;

use combatlas::geometry::{family_atype, Brick, BrickRegion, PolytopeFamily};
use combatlas::linalg::{int, rational, Rational, SymmetricMatrix};
use combatlas::matroid::{catalog, Matroid};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    rational(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

fn outer(u: &[Rational], sign: i64) -> SymmetricMatrix<Rational> {
    SymmetricMatrix::from_fn(u.len(), |i, j| int(sign) * u[i].clone() * u[j].clone())
}

/// Symmetric rational matrices of order 1..=6: unstructured entries, sums of
/// one positive and several negative rank-one terms, and sums with two
/// positive terms.
pub fn symmetric_matrix<R: Rng>(rng: &mut R) -> SymmetricMatrix<Rational> {
    let n = rng.gen_range(1..=6);
    match rng.gen_range(0..3) {
        0 => {
            let mut m = SymmetricMatrix::zeros(n);
            for i in 0..n {
                for j in i..n {
                    m.set(i, j, if rng.gen_bool(0.2) { int(0) } else { small_rational(rng) });
                }
            }
            m
        }
        kind => {
            let positives = kind;
            let negatives = rng.gen_range(0..=n);
            let mut m = SymmetricMatrix::zeros(n);
            for t in 0..positives + negatives {
                let u: Vec<Rational> = (0..n).map(|_| small_rational(rng)).collect();
                m = m.add(&outer(&u, if t < positives { 1 } else { -1 }));
            }
            m
        }
    }
}

/// Restriction of a random catalog matroid to a random subset of rank at least 2.
pub fn restriction<R: Rng>(rng: &mut R, pool: &[(String, Matroid)]) -> (String, Matroid) {
    loop {
        let (name, mat) = pool.choose(rng).expect("nonempty pool");
        let n = mat.ground_size();
        let mut elements: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.7)).collect();
        elements.sort_unstable();
        let r = mat.restrict(&elements);
        if r.rank() >= 2 {
            return (format!("{name}|{elements:?}"), r);
        }
    }
}

pub fn matroid_pool() -> Vec<(String, Matroid)> {
    catalog::standard(8)
}

/// Unit normals at sorted random angles with consecutive gaps in `[0.15, π - 0.15]`.
pub fn polygon_normals<R: Rng>(rng: &mut R, r: usize) -> Vec<Vec<f64>> {
    loop {
        let mut angles: Vec<f64> = (0..r).map(|_| rng.gen_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let gaps = (0..r).map(|k| if k + 1 < r { angles[k + 1] - angles[k] } else { angles[0] + TAU - angles[k] });
        if gaps.clone().all(|g| (0.15..std::f64::consts::PI - 0.15).contains(&g)) {
            return angles.iter().map(|t| vec![t.cos(), t.sin()]).collect();
        }
    }
}

/// Unit normals sampled uniformly on the sphere.
pub fn sphere_normals<R: Rng>(rng: &mut R, r: usize, m: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(r);
    while out.len() < r {
        let v: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (0.2..=1.0).contains(&n) {
            out.push(v.iter().map(|x| x / n).collect());
        }
    }
    out
}

/// Strongly isomorphic family of `count` bodies: scaled, jittered and
/// translated copies of a base support vector. Draws are rejected until the
/// family is valid.
pub fn random_family<R: Rng>(rng: &mut R, normals: impl Fn(&mut R) -> Vec<Vec<f64>>, count: usize, noise: f64) -> PolytopeFamily {
    loop {
        let us = normals(rng);
        let m = us[0].len();
        let base: Vec<f64> = us.iter().map(|_| 1.0 + rng.gen_range(-noise..noise)).collect();
        let bodies: Vec<(String, Vec<f64>)> = (0..count)
            .map(|k| {
                let lambda = rng.gen_range(0.5..2.0);
                let t: Vec<f64> = (0..m).map(|_| rng.gen_range(-0.3..0.3)).collect();
                let h = us.iter().zip(&base).map(|(u, b)| lambda * (b + rng.gen_range(-noise..noise)) + u.iter().zip(&t).map(|(x, y)| x * y).sum::<f64>()).collect();
                (((b'A' + k as u8) as char).to_string(), h)
            })
            .collect();
        if let Ok(fam) = family_atype(us, bodies, 1e-9) {
            return fam;
        }
    }
}

pub fn polygon_family<R: Rng>(rng: &mut R, count: usize) -> PolytopeFamily {
    random_family(rng, |g| {
        let r = g.gen_range(3..=8);
        polygon_normals(g, r)
    }, count, 0.05)
}

pub fn polytope3_family<R: Rng>(rng: &mut R, count: usize) -> PolytopeFamily {
    random_family(rng, |g| {
        let r = g.gen_range(8..=12);
        sphere_normals(g, r, 3)
    }, count, 0.03)
}

/// `±e_k` in the order `e_1, ..., e_m, -e_1, ..., -e_m`.
pub fn axis_normals(m: usize) -> Vec<Vec<f64>> {
    [1.0, -1.0].iter().flat_map(|&s| (0..m).map(move |k| (0..m).map(|j| if j == k { s } else { 0.0 }).collect())).collect()
}

/// Support vector of the box `[0, a_1] × ... × [0, a_m]`.
pub fn box_support(sides: &[f64]) -> Vec<f64> {
    sides.iter().copied().chain(sides.iter().map(|_| 0.0)).collect()
}

pub fn random_sides<R: Rng>(rng: &mut R, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.gen_range(0.2..3.0)).collect()
}

pub fn box_family(sides: &[Vec<f64>]) -> PolytopeFamily {
    let m = sides[0].len();
    let bodies = sides.iter().enumerate().map(|(k, s)| (((b'A' + k as u8) as char).to_string(), box_support(s))).collect();
    family_atype(axis_normals(m), bodies, 1e-9).expect("boxes are simple")
}

/// Cells of a random grid of at most 3 × 3 with random widths and heights.
pub fn brick_region<R: Rng>(rng: &mut R) -> BrickRegion {
    let cols = rng.gen_range(1..=3);
    let rows = rng.gen_range(1..=3);
    let cuts = |rng: &mut R, k: usize| {
        let mut at = vec![rng.gen_range(-1.0..1.0)];
        for _ in 0..k {
            let last = *at.last().expect("nonempty");
            at.push(last + rng.gen_range(0.2..2.0));
        }
        at
    };
    let xs = cuts(rng, cols);
    let ys = cuts(rng, rows);
    loop {
        let mut bricks = Vec::new();
        for i in 0..cols {
            for j in 0..rows {
                if rng.gen_bool(0.6) {
                    bricks.push(Brick::new(xs[i], xs[i + 1], ys[j], ys[j + 1]).expect("increasing cuts"));
                }
            }
        }
        if !bricks.is_empty() {
            return BrickRegion::new(bricks).expect("grid cells are disjoint");
        }
    }
}

/// `λ r + t` for a random positive `λ` and shift `t`.
pub fn homothetic<R: Rng>(rng: &mut R, r: &BrickRegion) -> BrickRegion {
    let lambda = rng.gen_range(0.3..3.0);
    let (tx, ty) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let bricks = r.bricks.iter().map(|b| Brick::new(lambda * b.x1 + tx, lambda * b.x2 + tx, lambda * b.y1 + ty, lambda * b.y2 + ty).expect("positive scale")).collect();
    BrickRegion::new(bricks).expect("scaled copy stays disjoint")
}

/// Pairs mixing independent regions, homothetic copies and single bricks.
pub fn brick_pair<R: Rng>(rng: &mut R) -> (BrickRegion, BrickRegion) {
    let a = brick_region(rng);
    match rng.gen_range(0..4) {
        0 => {
            let b = homothetic(rng, &a);
            (a, b)
        }
        1 => {
            let single = BrickRegion::single(a.bounding_box());
            let b = homothetic(rng, &single);
            (single, b)
        }
        _ => {
            let b = brick_region(rng);
            (a, b)
        }
    }
}

/// Equality oracle for unions of bricks: both unions are rectangles with the
/// same aspect ratio.
pub fn homothetic_rectangles(a: &BrickRegion, b: &BrickRegion) -> bool {
    if !a.is_rectangle(1e-12) || !b.is_rectangle(1e-12) {
        return false;
    }
    let (p, q) = (a.bounding_box(), b.bounding_box());
    (p.width() * q.height() - p.height() * q.width()).abs() <= 1e-9 * (p.width() * q.height()).max(1.0)
}

/// Permanent of a square matrix by expansion over permutations.
pub fn permanent(m: &[Vec<f64>]) -> f64 {
    fn go(m: &[Vec<f64>], row: usize, used: &mut Vec<bool>) -> f64 {
        if row == m.len() {
            return 1.0;
        }
        let mut s = 0.0;
        for c in 0..m.len() {
            if !used[c] {
                used[c] = true;
                s += m[row][c] * go(m, row + 1, used);
                used[c] = false;
            }
        }
        s
    }
    go(m, 0, &mut vec![false; m.len()])
}

pub fn positive_point<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rational(rng.gen_range(1..=9), rng.gen_range(1..=4))).collect()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
