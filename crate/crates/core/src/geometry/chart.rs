use nalgebra::{DMatrix, Matrix4, Matrix5, Vector4, Vector5};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::GeometryError;
use crate::pencil::quadruple::PAIRS;

pub const DEFAULT_SIEGEL_C: f64 = 0.5;
pub const DEFAULT_SIEGEL_C_PRIME: f64 = 0.5;
pub const DEFAULT_STEP: f64 = 1e-5;
pub const RICHARDSON_GATE: f64 = 1e-4;

/// Coordinates n(x) nbar(u) a(t) lambda on G_R.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChartPoint {
    pub x: [f64; 16],
    pub u: [f64; 16],
    pub t: [f64; 7],
    pub lambda: f64,
}

impl ChartPoint {
    pub fn identity() -> Self {
        ChartPoint {
            x: [0.0; 16],
            u: [0.0; 16],
            t: [1.0; 7],
            lambda: 1.0,
        }
    }

    pub fn params(&self) -> [f64; 40] {
        let mut p = [0.0; 40];
        p[..16].copy_from_slice(&self.x);
        p[16..32].copy_from_slice(&self.u);
        p[32..39].copy_from_slice(&self.t);
        p[39] = self.lambda;
        p
    }

    pub fn from_params(p: &[f64; 40]) -> Self {
        let mut cp = ChartPoint::identity();
        cp.x.copy_from_slice(&p[..16]);
        cp.u.copy_from_slice(&p[16..32]);
        cp.t.copy_from_slice(&p[32..39]);
        cp.lambda = p[39];
        cp
    }

    /// x, u uniform in [-1/2, 1/2], t_i in [c, 1/c], lambda in [c', 1/c'].
    pub fn random<R: Rng + ?Sized>(rng: &mut R, c: f64, c_prime: f64) -> Self {
        let mut cp = ChartPoint::identity();
        for v in cp.x.iter_mut().chain(cp.u.iter_mut()) {
            *v = rng.gen_range(-0.5..0.5);
        }
        for v in cp.t.iter_mut() {
            *v = rng.gen_range(c..1.0 / c);
        }
        cp.lambda = rng.gen_range(c_prime..1.0 / c_prime);
        cp
    }
}

fn upper_unipotent<const N: usize>(vals: &[f64]) -> [[f64; N]; N] {
    let mut m = [[0.0; N]; N];
    let mut k = 0;
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
        for v in row.iter_mut().skip(i + 1) {
            *v = vals[k];
            k += 1;
        }
    }
    m
}

fn lower_unipotent<const N: usize>(vals: &[f64]) -> [[f64; N]; N] {
    let mut m = [[0.0; N]; N];
    let mut k = 0;
    for (i, row) in m.iter_mut().enumerate() {
        for v in row.iter_mut().take(i) {
            *v = vals[k];
            k += 1;
        }
        row[i] = 1.0;
    }
    m
}

fn diag_from_ratios(t: &[f64]) -> Vec<f64> {
    let n = t.len() + 1;
    (0..n)
        .map(|i| match i {
            0 => t[0],
            _ if i == n - 1 => 1.0 / t[n - 2],
            _ => t[i] / t[i - 1],
        })
        .collect()
}

pub fn chart_to_group(cp: &ChartPoint) -> Result<(Matrix4<f64>, Matrix5<f64>), GeometryError> {
    if cp.lambda <= 0.0 || cp.t.iter().any(|&t| t <= 0.0) {
        return Err(GeometryError::NonPositive);
    }
    let n4 = Matrix4::from_fn(|i, j| upper_unipotent::<4>(&cp.x[..6])[i][j]);
    let n5 = Matrix5::from_fn(|i, j| upper_unipotent::<5>(&cp.x[6..])[i][j]);
    let nb4 = Matrix4::from_fn(|i, j| lower_unipotent::<4>(&cp.u[..6])[i][j]);
    let nb5 = Matrix5::from_fn(|i, j| lower_unipotent::<5>(&cp.u[6..])[i][j]);
    let a4 = Matrix4::from_diagonal(&Vector4::from_column_slice(&diag_from_ratios(&cp.t[..3])));
    let a5 = Matrix5::from_diagonal(&Vector5::from_column_slice(&diag_from_ratios(&cp.t[3..])));
    Ok((n4 * nb4 * a4 * cp.lambda, n5 * nb5 * a5))
}

/// (g4, g5) . y over the reals, with y in coordinate order.
pub fn act_real(g4: &Matrix4<f64>, g5: &Matrix5<f64>, y: &[f64; 40]) -> [f64; 40] {
    let mats: Vec<Matrix5<f64>> = (0..4)
        .map(|l| {
            let mut m = Matrix5::zeros();
            for (k, &(i, j)) in PAIRS.iter().enumerate() {
                m[(i - 1, j - 1)] = y[10 * l + k];
                m[(j - 1, i - 1)] = -y[10 * l + k];
            }
            g5 * m * g5.transpose()
        })
        .collect();
    let mut out = [0.0; 40];
    for r in 0..4 {
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            out[10 * r + k] = (0..4).map(|l| g4[(r, l)] * mats[l][(i - 1, j - 1)]).sum();
        }
    }
    out
}

fn orbit_map(params: &[f64; 40], y: &[f64; 40]) -> Result<[f64; 40], GeometryError> {
    let (g4, g5) = chart_to_group(&ChartPoint::from_params(params))?;
    Ok(act_real(&g4, &g5, y))
}

fn difference_matrix(
    y: &[f64; 40],
    cp: &ChartPoint,
    h: f64,
) -> Result<DMatrix<f64>, GeometryError> {
    let base = cp.params();
    let mut jac = DMatrix::zeros(40, 40);
    for col in 0..40 {
        let step = h * (1.0 + base[col].abs());
        let mut plus = base;
        let mut minus = base;
        plus[col] += step;
        minus[col] -= step;
        let fp = orbit_map(&plus, y)?;
        let fm = orbit_map(&minus, y)?;
        for row in 0..40 {
            jac[(row, col)] = (fp[row] - fm[row]) / (2.0 * step);
        }
    }
    Ok(jac)
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobianValue {
    pub abs_det: f64,
    pub det_h: f64,
    pub det_half: f64,
    pub relative_gap: f64,
    pub condition: f64,
}

/// |det| of the orbit map's derivative at `cp`, from central differences at
/// steps h and h/2 combined by Richardson extrapolation.
pub fn orbit_map_jacobian(
    y: &[f64; 40],
    cp: &ChartPoint,
    h: f64,
) -> Result<JacobianValue, GeometryError> {
    let j1 = difference_matrix(y, cp, h)?;
    let j2 = difference_matrix(y, cp, h / 2.0)?;
    let sv = j2.clone().singular_values();
    let smax = sv.max();
    let smin = sv.min();
    if !(smax.is_finite() && smin > 1e-12 * smax) {
        return Err(GeometryError::IllConditioned(format!(
            "singular values range from {:e} to {:e}",
            smin, smax
        )));
    }
    let d1 = j1.clone().lu().determinant().abs();
    let d2 = j2.clone().lu().determinant().abs();
    let gap = (d1 - d2).abs() / d1.max(d2);
    if !(gap < RICHARDSON_GATE) {
        return Err(GeometryError::IllConditioned(format!(
            "step halving changed the determinant by {:e}",
            gap
        )));
    }
    let extrapolated = (j2 * 4.0 - j1) / 3.0;
    Ok(JacobianValue {
        abs_det: extrapolated.lu().determinant().abs(),
        det_h: d1,
        det_half: d2,
        relative_gap: gap,
        condition: smax / smin,
    })
}

/// |J| lambda (t_1 ... t_7) / lambda^40: the Jacobian against
/// dx du d^x t d^x lambda, divided by the scaling of the discriminant.
pub fn phi(y: &[f64; 40], cp: &ChartPoint, h: f64) -> Result<f64, GeometryError> {
    let j = orbit_map_jacobian(y, cp, h)?;
    let tprod: f64 = cp.t.iter().product();
    Ok(j.abs_det * tprod * cp.lambda / cp.lambda.powi(40))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstancyReport {
    pub samples: Vec<(ChartPoint, f64)>,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub relative_spread: f64,
}

pub fn jacobian_constancy_check_with(
    y: &[f64; 40],
    n_samples: usize,
    seed: u64,
    c: f64,
    c_prime: f64,
    h: f64,
) -> Result<ConstancyReport, GeometryError> {
    use rayon::prelude::*;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<ChartPoint> = (0..n_samples)
        .map(|_| ChartPoint::random(&mut rng, c, c_prime))
        .collect();
    let values: Result<Vec<f64>, GeometryError> =
        points.par_iter().map(|cp| phi(y, cp, h)).collect();
    let values = values?;
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = values.iter().sum::<f64>() / values.len().max(1) as f64;
    Ok(ConstancyReport {
        samples: points.into_iter().zip(values).collect(),
        relative_spread: (max - min) / max,
        min,
        max,
        mean,
    })
}

pub fn jacobian_constancy_check(
    y: &[f64; 40],
    n_samples: usize,
    seed: u64,
) -> Result<ConstancyReport, GeometryError> {
    jacobian_constancy_check_with(
        y,
        n_samples,
        seed,
        DEFAULT_SIEGEL_C,
        DEFAULT_SIEGEL_C_PRIME,
        DEFAULT_STEP,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_chart() {
        let (g4, g5) = chart_to_group(&ChartPoint::identity()).unwrap();
        assert_eq!(g4, Matrix4::identity());
        assert_eq!(g5, Matrix5::identity());
    }

    #[test]
    fn determinants() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let cp = ChartPoint::random(&mut rng, 0.5, 0.5);
            let (g4, g5) = chart_to_group(&cp).unwrap();
            let want = cp.lambda.powi(4);
            assert!((g4.determinant() - want).abs() < 1e-10 * want);
            assert!((g5.determinant() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_non_positive() {
        let mut cp = ChartPoint::identity();
        cp.t[2] = 0.0;
        assert_eq!(chart_to_group(&cp), Err(GeometryError::NonPositive));
    }
}
