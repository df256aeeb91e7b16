use poisson_ddrm::datagen::{gen_dataset, DatasetMix};
use poisson_ddrm::fd::{fd_inverse_estimate, fd_poisson_solve};
use poisson_ddrm::grid::{mae, GridSpec};

#[test]
fn probe_fd_baseline_ranges() {
    let g = GridSpec::new(64).unwrap();
    let pairs = gen_dataset::<f64>(128, &DatasetMix::neural_net_only(), 0xA11CE, g).unwrap();
    let (mut fwd, mut inv) = (0.0, 0.0);
    for p in &pairs {
        fwd += mae(&fd_poisson_solve(&p.f), &p.u).unwrap();
        inv += mae(&fd_inverse_estimate(&p.u), &p.f).unwrap();
    }
    let n = pairs.len() as f64;
    eprintln!("fd-forward = {:.3e} (want 1e-8..1e-5) | fd-inverse = {:.3e} (want 3e-3..5e-2)", fwd / n, inv / n);
    assert!(fwd / n > 1e-8 && fwd / n < 1e-5);
    assert!(inv / n > 3e-3 && inv / n < 5e-2);
}
