use modelspace::cli_io::parse_measure;
use modelspace::hardy_numerics::{model_space_membership, CoefficientSeries, InnerFunctionSpec};
use modelspace::pipeline::{run_pipeline, symmetrize, PipelineConfig};
use modelspace::univalence::winding_count;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;
use std::path::Path;

#[test]
fn witness_on_bundled_measure() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/thin_cantor.json");
    let mu = parse_measure(&path, &std::fs::read(&path).unwrap()).unwrap();
    let w = run_pipeline(&mu, &PipelineConfig::default()).unwrap();
    assert!(w.all_checks_pass());

    // one preimage of g(0.1) inside the certified circle
    let g = &w.g;
    assert_eq!(winding_count(|z| g.eval(z), g.eval(Complex64::new(0.1, 0.0)), 0.995, 1 << 14).unwrap(), 1);

    // the lacunary margin makes Re f̃′ positive
    let fs = &w.provenance.f_sym;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10_000 {
        let z = Complex64::from_polar(rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>());
        assert!(fs.eval_derivative(z).re > 0.0);
    }

    // K_{S₁^{M²}} ⊂ K_{S_μ}: g is checked against the input measure
    let rep = model_space_membership(g, &InnerFunctionSpec::singular(mu), 1e-6).unwrap();
    assert!(rep.pass, "{}", rep.residual);
}

proptest! {
    #[test]
    fn symmetrize_is_a_coefficient_projection(
        c in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..80),
        m in 2usize..9,
    ) {
        let f = CoefficientSeries::new(c.iter().map(|&(a, b)| Complex64::new(a, b)).collect(), 1.0);
        let s = symmetrize(&f, m).unwrap();
        for n in 0..f.len() {
            let want = if n % m == 1 { f.get(n) } else { Complex64::new(0.0, 0.0) };
            prop_assert_eq!(s.get(n), want);
        }
        let twice = symmetrize(&s, m).unwrap();
        prop_assert_eq!(twice.coeffs(), s.coeffs());
        prop_assert!(s.h2_norm() <= f.h2_norm());
    }
}
