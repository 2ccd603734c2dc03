//! Small quadrature toolbox shared by the numerical modules.

use num_complex::Complex64;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, computed by Newton
/// iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Offsets of the three-point Gauss–Legendre rule mapped to `[0, 1]`.
pub const GAUSS3_OFFSETS: [f64; 3] = [0.5 - 0.387_298_334_620_741_7, 0.5, 0.5 + 0.387_298_334_620_741_7];

/// Weights of the three-point rule on `[0, 1]`.
pub const GAUSS3_WEIGHTS: [f64; 3] = [5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0];

/// Composite trapezoid rule on a uniform grid.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => {
            let inner: f64 = values[1..n - 1].iter().sum();
            h * (inner + 0.5 * (values[0] + values[n - 1]))
        }
    }
}

pub fn trapezoid_c(values: &[Complex64], h: f64) -> Complex64 {
    match values.len() {
        0 | 1 => Complex64::new(0.0, 0.0),
        n => {
            let inner: Complex64 = values[1..n - 1].iter().sum();
            (inner + (values[0] + values[n - 1]) * 0.5) * h
        }
    }
}

/// Running trapezoid integral from the left end: `out[j] = ∫_{x_0}^{x_j}`.
pub fn cumulative_from_left(values: &[Complex64], h: f64, out: &mut Vec<Complex64>) {
    out.clear();
    out.reserve(values.len());
    let mut acc = Complex64::new(0.0, 0.0);
    out.push(acc);
    for w in values.windows(2) {
        acc += (w[0] + w[1]) * (0.5 * h);
        out.push(acc);
    }
}

/// Running trapezoid integral to the right end: `out[j] = ∫_{x_j}^{x_{n-1}}`.
pub fn cumulative_to_right(values: &[Complex64], h: f64, out: &mut Vec<Complex64>) {
    let n = values.len();
    out.clear();
    out.resize(n, Complex64::new(0.0, 0.0));
    let mut acc = Complex64::new(0.0, 0.0);
    for j in (0..n.saturating_sub(1)).rev() {
        acc += (values[j] + values[j + 1]) * (0.5 * h);
        out[j] = acc;
    }
}

/// Plain inner product `⟨f, g⟩ = ∫ f ḡ` by the trapezoid rule.
pub fn inner(f: &[Complex64], g: &[Complex64], h: f64) -> Complex64 {
    let prod: Vec<Complex64> = f.iter().zip(g).map(|(a, b)| a * b.conj()).collect();
    trapezoid_c(&prod, h)
}
