use hotopo::demo::{demo_mesh, DemoMeshSpec};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jittered_meshes_are_valid(nx in 1usize..12, ny in 1usize..12, jitter in 0.0f64..0.2999, seed: u64, quads: bool) {
        let mesh = demo_mesh(&DemoMeshSpec { nx, ny, jitter, seed, quads }).unwrap();
        mesh.check_invariants().unwrap();
        let per_cell = if quads { 1 } else { 2 };
        prop_assert_eq!(mesh.num_elements(), per_cell * nx * ny);
        let b = mesh.bbox();
        prop_assert_eq!((b.min, b.max), ([0.0, 0.0], [1.0, 1.0]));
        let area: f64 = (0..mesh.num_elements()).map(|e| {
            let p: Vec<[f64; 2]> = mesh.corners(e).collect();
            let n = p.len();
            (0..n).map(|i| p[i][0] * p[(i + 1) % n][1] - p[(i + 1) % n][0] * p[i][1]).sum::<f64>() / 2.0
        }).sum();
        prop_assert!((area - 1.0).abs() < 1e-12);
    }
}
