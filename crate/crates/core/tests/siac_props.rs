use std::sync::Arc;

use hotopo::hofield::{harmonic2d, project, AnalyticField, Element, HighOrderField, Mesh};
use hotopo::demo::{demo_mesh, DemoMeshSpec};
use hotopo::quadrature::gauss_legendre;
use hotopo::siac::{
    adaptive_characteristic_length, bspline_derivative, bspline_eval, direction, lsiac_point,
    solve_kernel_coefficients, CharacteristicLength, LsiacParams, SiacKernel,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `nx` by `ny` squares of side `h` with the lower-left corner at `x0`.
fn squares(nx: usize, ny: usize, h: f64, x0: f64) -> (Vec<[f64; 2]>, Vec<Element>) {
    let mut v = Vec::new();
    for j in 0..=ny {
        for i in 0..=nx {
            v.push([x0 + i as f64 * h, j as f64 * h]);
        }
    }
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let mut e = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            e.push(Element::quad(id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)));
        }
    }
    (v, e)
}

fn square_mesh(n: usize) -> Arc<Mesh> {
    let (v, e) = squares(n, n, 1.0 / n as f64, 0.0);
    Arc::new(Mesh::new(v, e).unwrap())
}

fn triangle_mesh(n: usize) -> Arc<Mesh> {
    Arc::new(demo_mesh(&DemoMeshSpec::triangles(n, n, 0.0, 0)).unwrap())
}

/// `∫ f` over `[a, b]` with 8-point Gauss-Legendre on each unit-spaced
/// subinterval `[a + i, a + i + 1]`.
fn integrate_by_pieces(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let rule = gauss_legendre(8);
    let n = (b - a).round() as usize;
    (0..n).map(|i| rule.integrate(a + i as f64, a + i as f64 + 1.0, &f)).sum()
}

#[test]
fn partition_of_unity() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for order in 1..=8 {
        for _ in 0..1000 {
            let t: f64 = rng.gen_range(-10.0..10.0);
            let s: f64 = (-20..=20).map(|j| bspline_eval(order, t - j as f64).unwrap()).sum();
            assert!((s - 1.0).abs() < 1e-12, "order {order}, t {t}: {s}");
        }
    }
}

proptest! {
    #[test]
    fn bsplines_are_symmetric_nonnegative_and_supported(order in 1usize..=8, t in -6.0f64..6.0) {
        let v = bspline_eval(order, t).unwrap();
        prop_assert!(v >= 0.0);
        if t.abs() >= 0.5 * order as f64 {
            prop_assert_eq!(v, 0.0);
        }
        // Away from knots the half-open indicator does not matter.
        let knot = (t + 0.5 * order as f64).fract().abs() < 1e-9;
        if !knot {
            prop_assert!((v - bspline_eval(order, -t).unwrap()).abs() < 1e-14);
        }
    }
}

#[test]
fn bspline_examples() {
    assert_eq!(bspline_eval(1, 0.25).unwrap(), 1.0);
    assert_eq!(bspline_eval(1, 0.75).unwrap(), 0.0);
    // Ψ² = Ψ¹ ⋆ Ψ¹ and Ψ³ = Ψ² ⋆ Ψ¹, evaluated by quadrature at 0.
    let conv2 = gauss_legendre(4).integrate(-0.5, 0.5, |s| bspline_eval(1, -s).unwrap());
    assert!((bspline_eval(2, 0.0).unwrap() - conv2).abs() < 1e-14);
    assert!((conv2 - 1.0).abs() < 1e-14);
    let conv3 = gauss_legendre(4).integrate(-0.5, 0.0, |s| bspline_eval(2, -s).unwrap())
        + gauss_legendre(4).integrate(0.0, 0.5, |s| bspline_eval(2, -s).unwrap());
    assert!((bspline_eval(3, 0.0).unwrap() - conv3).abs() < 1e-14);
    assert!((conv3 - 0.75).abs() < 1e-14);
    assert!(bspline_eval(0, 0.0).is_err());
}

#[test]
fn bspline_derivative_examples() {
    assert!((bspline_derivative(2, -0.4).unwrap() - 1.0).abs() < 1e-15);
    assert!(bspline_derivative(3, 0.0).unwrap().abs() < 1e-15);
    assert!(bspline_derivative(1, 0.0).is_err());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let step = 1e-6;
    let mut checked = 0;
    while checked < 100 {
        let t: f64 = rng.gen_range(-2.0..2.0);
        if (t + 2.0).fract() < 1e-3 || (t + 2.0).fract() > 1.0 - 1e-3 {
            continue;
        }
        let fd = (bspline_eval(4, t + step).unwrap() - bspline_eval(4, t - step).unwrap()) / (2.0 * step);
        assert!((bspline_derivative(4, t).unwrap() - fd).abs() < 1e-5);
        checked += 1;
    }
}

#[test]
fn linear_spline_kernel_coefficients() {
    // Moment system for k = 1, ℓ = 2: with c = (a, b, a), ∫K = 2a + b = 1 and
    // ∫K t² = 2a(1 + 1/6) + b/6 = 0, whose solution is a = -1/12, b = 7/6.
    let c = solve_kernel_coefficients(1, 2).unwrap();
    let want = [-1.0 / 12.0, 7.0 / 6.0, -1.0 / 12.0];
    for (x, w) in c.iter().zip(want) {
        assert!((x - w).abs() < 1e-13, "{c:?}");
    }
    let k = SiacKernel::new(1, 2, 1.0, 37.0).unwrap();
    assert!((k.eval(0.0, 0) - 7.0 / 6.0).abs() < 1e-13);
    assert_eq!(k.eval(2.5, 0), 0.0);
}

#[test]
fn kernel_moments_vanish() {
    for k in 1..=3 {
        for order in [k + 1, k + 2] {
            let c = solve_kernel_coefficients(k, order).unwrap();
            assert!((c.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            for g in 0..c.len() {
                assert!((c[g] - c[c.len() - 1 - g]).abs() < 1e-15);
            }
            let kernel = SiacKernel::new(k, order, 1.0, 0.0).unwrap();
            let half = kernel.support_half_width();
            assert!((half - 0.5 * (2 * k + order) as f64).abs() < 1e-15);
            for m in 0..=2 * k {
                let moment = integrate_by_pieces(-half, half, |t| kernel.eval(t, 0) * t.powi(m as i32));
                let want = if m == 0 { 1.0 } else { 0.0 };
                assert!((moment - want).abs() < 1e-10, "k={k} order={order} m={m}: {moment}");
            }
        }
    }
}

/// Filter half-order `k` reproduces every monomial of total degree `<= 2k`;
/// the data are exact, so the field is built at degree `2k`.
fn check_reproduction(mesh: Arc<Mesh>, k: usize, deriv: u8, h: Option<f64>, points: &[[f64; 2]]) {
    for a in 0..=2 * k {
        for b in 0..=2 * k - a {
            let f = HighOrderField::interpolate(mesh.clone(), 2 * k, |x, y| x.powi(a as i32) * y.powi(b as i32)).unwrap();
            for theta in [0.0, 90.0, 30.0] {
                let scale = h.map_or(CharacteristicLength::Adaptive, CharacteristicLength::Fixed);
                let params = LsiacParams::new(k, theta).with_deriv(deriv).with_scale(scale);
                let d = direction(theta);
                for &p in points {
                    let got = lsiac_point(&f, p, &params).unwrap();
                    let (x, y) = (p[0], p[1]);
                    let mono = |a: usize, b: usize| {
                        if a == usize::MAX || b == usize::MAX {
                            0.0
                        } else {
                            x.powi(a as i32) * y.powi(b as i32)
                        }
                    };
                    let want = if deriv == 0 {
                        mono(a, b)
                    } else {
                        let dx = a as f64 * mono(a.wrapping_sub(1), b);
                        let dy = b as f64 * mono(a, b.wrapping_sub(1));
                        d[0] * dx + d[1] * dy
                    };
                    assert!((got - want).abs() < 1e-8, "k={k} x^{a} y^{b} θ={theta} deriv={deriv} at {p:?}: {got} vs {want}");
                }
            }
        }
    }
}

fn interior_points(n: usize, lo: f64, hi: f64, seed: u64) -> Vec<[f64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| [rng.gen_range(lo..hi), rng.gen_range(lo..hi)]).collect()
}

#[test]
fn superconvergent_reproduction_on_squares_and_triangles() {
    let pts = interior_points(50, 0.4, 0.6, 3);
    for k in 1..=2 {
        for deriv in [0, 1] {
            check_reproduction(square_mesh(40), k, deriv, None, &pts);
            check_reproduction(triangle_mesh(40), k, deriv, Some(1.0 / 40.0), &pts);
        }
    }
}

#[test]
fn scaling_by_two_on_a_refined_mesh() {
    let pts = interior_points(20, 0.4, 0.6, 4);
    check_reproduction(square_mesh(20), 2, 0, Some(0.05), &pts);
    check_reproduction(square_mesh(40), 2, 0, Some(0.025), &pts);
    check_reproduction(square_mesh(40), 2, 0, Some(0.05), &pts);
}

#[test]
fn adaptive_length_grows_into_coarse_elements() {
    let (mut v, mut e) = squares(10, 10, 0.1, 0.0);
    let (v2, e2) = squares(5, 5, 0.2, 1.0);
    let off = v.len();
    v.extend(v2);
    e.extend(e2.into_iter().map(|el| Element::quad(el.vertices[0] + off, el.vertices[1] + off, el.vertices[2] + off, el.vertices[3] + off)));
    let mesh = Arc::new(Mesh::new(v, e).unwrap());
    let f = HighOrderField::interpolate(mesh.clone(), 1, |_, _| 0.0).unwrap();
    // Oracle: the same fixed point with every element clipped against the
    // support segment.
    let oracle = |p: [f64; 2], k: usize, order: usize| {
        let mut h: f64 = 0.1;
        for _ in 0..10 {
            let half = 0.5 * h * (2 * k + order) as f64;
            let (a, b) = ([p[0] - half, p[1]], [p[0] + half, p[1]]);
            let next = (0..mesh.num_elements())
                .filter(|&el| mesh.clip_segment(el, a, b).is_some_and(|(s0, s1)| s1 > s0))
                .map(|el| mesh.element_size(el))
                .fold(0.0, f64::max);
            if next <= h {
                break;
            }
            h = next;
        }
        h
    };
    for p in [[0.95, 0.5], [0.8, 0.31], [0.5, 0.5]] {
        let h = adaptive_characteristic_length(&f, p, 0.0, 1, 2).unwrap();
        assert_eq!(h, oracle(p, 1, 2), "at {p:?}");
    }
    assert!((adaptive_characteristic_length(&f, [0.95, 0.5], 0.0, 1, 2).unwrap() - 0.2).abs() < 1e-12);
    assert!((adaptive_characteristic_length(&f, [0.5, 0.5], 0.0, 1, 2).unwrap() - 0.1).abs() < 1e-12);
}

/// One-sided limits at `m` along `d`, by linear extrapolation from the two
/// samples at distances `δ` and `2δ` on each side, which cancels the first
/// order term of a continuous function.
fn extrapolated_jump(f: impl Fn([f64; 2]) -> f64, m: [f64; 2], d: [f64; 2], delta: f64) -> f64 {
    let at = |s: f64| f([m[0] + s * d[0], m[1] + s * d[1]]);
    let right = 2.0 * at(delta) - at(2.0 * delta);
    let left = 2.0 * at(-delta) - at(-2.0 * delta);
    (right - left).abs()
}

#[test]
fn filtering_lifts_continuity() {
    let mesh = Arc::new(demo_mesh(&DemoMeshSpec::triangles(16, 16, 0.2, 5)).unwrap());
    let f = project(&AnalyticField::new("h", harmonic2d), mesh.clone(), 2).unwrap();
    let params = LsiacParams::new(2, 0.0);
    let dir = direction(0.0);
    let mut raw_max: f64 = 0.0;
    let mut filtered_max: f64 = 0.0;
    let mut probes = 0;
    for ((a, b), els) in mesh.edges() {
        if probes == 100 {
            break;
        }
        let [e0, e1] = els else { continue };
        let (pa, pb) = (mesh.vertices()[a], mesh.vertices()[b]);
        let m = [0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])];
        if (pb[1] - pa[1]).abs() < 1e-3 || lsiac_point(&f, m, &params).is_err() {
            continue;
        }
        raw_max = raw_max.max((f.eval_in(*e0, m) - f.eval_in(*e1, m)).abs());
        let filtered = |p: [f64; 2]| lsiac_point(&f, p, &params).unwrap();
        filtered_max = filtered_max.max(extrapolated_jump(filtered, m, dir, 1e-7));
        probes += 1;
    }
    assert_eq!(probes, 100);
    assert!(raw_max > 1e-3, "raw jump {raw_max}");
    assert!(filtered_max < 1e-6, "filtered jump {filtered_max}");
}
