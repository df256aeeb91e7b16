use poisson_ddrm::fd::{fd_laplacian, FdEigenTable};
use poisson_ddrm::grid::{mae, GridSpec, ScalarField};
use poisson_ddrm::spectral::{eigenvalues, mode_field, spectral_laplacian};

#[test]
fn probe_worst_eigenrelation_residuals() {
    let g = GridSpec::new(64).unwrap();
    let eig = eigenvalues::<f64>(g);
    let mu = FdEigenTable::<f64>::new(g);
    let mut worst_spec = (0.0f64, 0, 0);
    let mut worst_fd = (0.0f64, 0, 0);
    for n in 1..=64 {
        for m in 1..=64 {
            let s = mode_field::<f64>(g, n, m);
            let lap = spectral_laplacian(&s, &eig);
            let expect = ScalarField::new(g, s.values() * eig.lambda(n, m)).unwrap();
            let e = mae(&lap, &expect).unwrap();
            if e > worst_spec.0 { worst_spec = (e, n, m); }
            let flap = fd_laplacian(&s);
            let fexpect = ScalarField::new(g, s.values() * mu.mu(n, m)).unwrap();
            let e = mae(&flap, &fexpect).unwrap();
            if e > worst_fd.0 { worst_fd = (e, n, m); }
        }
    }
    eprintln!("worst spectral residual {:.3e} at mode ({},{})", worst_spec.0, worst_spec.1, worst_spec.2);
    eprintln!("worst fd residual {:.3e} at mode ({},{})", worst_fd.0, worst_fd.1, worst_fd.2);
    assert!(worst_spec.0 < 1e-10);
    assert!(worst_fd.0 < 1e-10);
}
