use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::region::{Num, Region, RegionSpec, TermSpec};
use super::GeometryError;

pub const DEFAULT_QMC_POINTS: usize = 1_000_000;
pub const DEFAULT_SHIFTS: usize = 16;
pub const MAX_CANDIDATES: f64 = 5e8;

const HALTON_BASES: [u64; 4] = [2, 3, 5, 7];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QmcOptions {
    pub points: usize,
    pub shifts: usize,
    pub seed: u64,
}

impl Default for QmcOptions {
    fn default() -> Self {
        QmcOptions {
            points: DEFAULT_QMC_POINTS,
            shifts: DEFAULT_SHIFTS,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectionVolume {
    pub coords: Vec<usize>,
    pub volume: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeCountReport {
    pub count: u64,
    pub volume: f64,
    /// Three standard errors over the random shifts.
    pub volume_error: f64,
    pub projections: Vec<ProjectionVolume>,
    pub max_projection: f64,
    pub discrepancy: f64,
    /// discrepancy / max(1, max_projection)
    pub ratio: f64,
}

/// Exact number of integer points in the region, enumerating one
/// coordinate at a time so that the work does not grow with the shear.
pub fn lattice_count(region: &Region) -> Result<u64, GeometryError> {
    let n = region.dimension;
    let widths: f64 = (0..n)
        .map(|i| region.hi_f64[i] - region.lo_f64[i] + 3.0)
        .product();
    if widths > MAX_CANDIDATES {
        return Err(GeometryError::InvalidRegion(format!(
            "about {:.1e} candidate points; too many to enumerate",
            widths
        )));
    }
    let order: Vec<usize> = if region.upper {
        (0..n).rev().collect()
    } else {
        (0..n).collect()
    };
    let mut y = vec![0i64; n];
    Ok(enumerate(region, &order, 0, &mut y))
}

fn enumerate(region: &Region, order: &[usize], pos: usize, y: &mut Vec<i64>) -> u64 {
    if pos == order.len() {
        return region.contains_lattice_point(y) as u64;
    }
    let i = order[pos];
    let off: f64 = order[..pos]
        .iter()
        .map(|&j| region.shear_inv_f64[i][j] * y[j] as f64)
        .sum();
    let eps = 1e-7 * (1.0 + off.abs());
    let lo = (region.lo_f64[i] - off - eps).ceil() as i64 - 1;
    let hi = (region.hi_f64[i] - off + eps).floor() as i64 + 1;
    let mut total = 0;
    for v in lo..=hi {
        y[i] = v;
        total += enumerate(region, order, pos + 1, y);
    }
    total
}

fn proper_subsets(n: usize) -> Vec<Vec<usize>> {
    (1..(1usize << n) - 1)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

fn grid_size(dim: usize) -> usize {
    match dim {
        1 => 256,
        2 => 96,
        _ => 32,
    }
}

struct ShiftResult {
    fraction: f64,
    cells: Vec<Vec<bool>>,
}

fn run_shift(
    region: &Region,
    subsets: &[Vec<usize>],
    plo: &[f64],
    phi: &[f64],
    points: usize,
    shift: &[f64],
) -> ShiftResult {
    let n = region.dimension;
    let mut cells: Vec<Vec<bool>> = subsets
        .iter()
        .map(|s| vec![false; grid_size(s.len()).pow(s.len() as u32)])
        .collect();
    let mut inside = 0usize;
    let mut x = vec![0.0; n];
    for k in 1..=points as u64 {
        for d in 0..n {
            let u = (radical_inverse(k, HALTON_BASES[d]) + shift[d]).fract();
            x[d] = region.lo_f64[d] + u * (region.hi_f64[d] - region.lo_f64[d]);
        }
        if !region.contains_unsheared_f64(&x) {
            continue;
        }
        inside += 1;
        let y = region.shear_point_f64(&x);
        for (s, cell) in subsets.iter().zip(cells.iter_mut()) {
            let g = grid_size(s.len());
            let mut idx = 0;
            for &d in s {
                let w = phi[d] - plo[d];
                let c = if w > 0.0 {
                    (((y[d] - plo[d]) / w * g as f64).floor() as i64).clamp(0, g as i64 - 1) as usize
                } else {
                    0
                };
                idx = idx * g + c;
            }
            cell[idx] = true;
        }
    }
    ShiftResult {
        fraction: inside as f64 / points as f64,
        cells,
    }
}

pub fn davenport_count(region: &Region, opts: &QmcOptions) -> Result<LatticeCountReport, GeometryError> {
    let count = lattice_count(region)?;
    let n = region.dimension;
    let subsets = proper_subsets(n);
    let (plo, phi) = region.sheared_box();
    let shifts = opts.shifts.max(2);
    let per_shift = (opts.points / shifts).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let shift_vectors: Vec<Vec<f64>> = (0..shifts)
        .map(|_| (0..n).map(|_| rng.gen::<f64>()).collect())
        .collect();
    let results: Vec<ShiftResult> = shift_vectors
        .par_iter()
        .map(|s| run_shift(region, &subsets, &plo, &phi, per_shift, s))
        .collect();

    let box_vol = region.box_volume();
    let estimates: Vec<f64> = results.iter().map(|r| r.fraction * box_vol).collect();
    let mean = estimates.iter().sum::<f64>() / shifts as f64;
    let var = estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (shifts as f64 - 1.0);
    let volume_error = 3.0 * (var / shifts as f64).sqrt() + 1e-12 * box_vol;

    let projections: Vec<ProjectionVolume> = subsets
        .iter()
        .enumerate()
        .map(|(si, s)| {
            let g = grid_size(s.len());
            let cell_vol: f64 = s.iter().map(|&d| (phi[d] - plo[d]) / g as f64).product();
            let occupied = (0..results[0].cells[si].len())
                .filter(|&c| results.iter().any(|r| r.cells[si][c]))
                .count();
            ProjectionVolume {
                coords: s.clone(),
                volume: occupied as f64 * cell_vol,
            }
        })
        .collect();
    let max_projection = projections.iter().map(|p| p.volume).fold(0.0, f64::max);
    let discrepancy = (count as f64 - mean).abs();
    Ok(LatticeCountReport {
        count,
        volume: mean,
        volume_error,
        projections,
        max_projection,
        discrepancy,
        ratio: discrepancy / max_projection.max(1.0),
    })
}

fn num(v: f64) -> Num {
    Num::Float(v)
}

/// Region `{x : (x - c)^T Q (x - c) <= 1}` with its bounding box, sheared by `shear`.
pub fn ellipsoid_spec(center: &[f64], q: &DMatrix<f64>, shear: Option<Vec<Vec<i64>>>) -> RegionSpec {
    let n = center.len();
    let qinv = q.clone().try_inverse().expect("positive definite");
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i..n {
            let c = if i == j { q[(i, j)] } else { 2.0 * q[(i, j)] };
            let mut e = vec![0u32; n];
            e[i] += 1;
            e[j] += 1;
            terms.push(TermSpec { c: num(c), e });
        }
    }
    let qc = q * DVector::from_column_slice(center);
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = 1;
        terms.push(TermSpec { c: num(-2.0 * qc[i]), e });
    }
    let cqc: f64 = (0..n).map(|i| center[i] * qc[i]).sum();
    terms.push(TermSpec { c: num(cqc - 1.0), e: vec![0; n] });
    let bx = (0..n)
        .map(|i| {
            let r = qinv[(i, i)].sqrt() * (1.0 + 1e-6) + 1e-6;
            [num(center[i] - r), num(center[i] + r)]
        })
        .collect();
    RegionSpec {
        dimension: n,
        bounding_box: Some(bx),
        inequalities: vec![terms],
        shear: shear.map(|s| s.into_iter().map(|r| r.into_iter().map(Num::Int).collect()).collect()),
    }
}

/// Random unipotent triangular matrix whose off-diagonal entries have
/// magnitude up to `max_entry`, log-uniformly spread.
pub fn random_shear<R: Rng + ?Sized>(rng: &mut R, n: usize, max_entry: f64) -> Vec<Vec<i64>> {
    let upper = rng.gen::<bool>();
    let mut s = vec![vec![0i64; n]; n];
    for i in 0..n {
        s[i][i] = 1;
        for j in 0..n {
            if (upper && j > i) || (!upper && j < i) {
                let mag = max_entry.max(1.0).ln() * rng.gen::<f64>();
                let sign = if rng.gen::<bool>() { 1 } else { -1 };
                s[i][j] = sign * mag.exp().round() as i64;
            }
        }
    }
    s
}

/// Random ellipsoid in dimension `n` with semi-axes in [1.5, 8], a random
/// rotation, a random centre in the unit cube, and a random shear.
pub fn random_ellipsoid<R: Rng + ?Sized>(rng: &mut R, n: usize, max_shear: f64) -> RegionSpec {
    let m = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    let rot = m.qr().q();
    let d = DMatrix::from_diagonal(&DVector::from_fn(n, |_, _| {
        let a: f64 = rng.gen_range(1.5..8.0);
        1.0 / (a * a)
    }));
    let q = &rot * d * rot.transpose();
    let q = (&q + q.transpose()) * 0.5;
    let center: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    let shear = (max_shear > 0.0).then(|| random_shear(rng, n, max_shear));
    ellipsoid_spec(&center, &q, shear)
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchReport {
    pub trials: Vec<LatticeCountReport>,
    /// Smallest C with discrepancy <= C max(1, max projection) in every trial.
    pub fitted_c: f64,
}

/// Random ellipsoids alternating between dimensions 2 and 3, sheared by
/// integer unipotents with entries up to `max_shear`.
pub fn ellipsoid_batch(
    trials: usize,
    seed: u64,
    points: usize,
    max_shear: f64,
) -> Result<BatchReport, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let specs: Vec<RegionSpec> = (0..trials)
        .map(|k| random_ellipsoid(&mut rng, 2 + k % 2, max_shear))
        .collect();
    let reports: Result<Vec<LatticeCountReport>, GeometryError> = specs
        .par_iter()
        .enumerate()
        .map(|(k, spec)| {
            let region = Region::from_spec(spec)?;
            davenport_count(
                &region,
                &QmcOptions {
                    points,
                    shifts: DEFAULT_SHIFTS,
                    seed: seed.wrapping_add(k as u64),
                },
            )
        })
        .collect();
    let reports = reports?;
    let fitted_c = reports.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(BatchReport {
        trials: reports,
        fitted_c,
    })
}

/// Translate every coordinate of the unsheared region by `v`.
pub fn translate_spec(spec: &RegionSpec, v: &[i64]) -> Result<RegionSpec, GeometryError> {
    let n = spec.dimension;
    let mut out = spec.clone();
    if let Some(bx) = out.bounding_box.as_mut() {
        for (side, &t) in bx.iter_mut().zip(v) {
            let lo = side[0].to_rational()? + BigRational::from_integer(t.into());
            let hi = side[1].to_rational()? + BigRational::from_integer(t.into());
            *side = [Num::Text(lo.to_string()), Num::Text(hi.to_string())];
        }
    }
    // p(x - v): expand each monomial by the binomial theorem.
    let mut polys = Vec::new();
    for poly in &spec.inequalities {
        let mut acc: Vec<(BigRational, Vec<u32>)> = Vec::new();
        for t in poly {
            let c = t.c.to_rational()?;
            let mut partial: Vec<(BigRational, Vec<u32>)> = vec![(c, vec![0; n])];
            for d in 0..n {
                let k = t.e[d];
                let mut next = Vec::new();
                for (pc, pe) in &partial {
                    let mut binom = BigRational::from_integer(1.into());
                    for j in 0..=k {
                        // C(k, j) x^j (-v)^(k-j)
                        let shift = BigRational::from_integer((-v[d]).into());
                        let mut coeff = pc * &binom;
                        for _ in 0..(k - j) {
                            coeff *= &shift;
                        }
                        let mut e = pe.clone();
                        e[d] = j;
                        next.push((coeff, e));
                        binom = binom * BigRational::from_integer((k - j).into())
                            / BigRational::from_integer((j + 1).into());
                    }
                }
                partial = next;
            }
            acc.extend(partial);
        }
        polys.push(
            acc.into_iter()
                .map(|(c, e)| TermSpec { c: Num::Text(c.to_string()), e })
                .collect(),
        );
    }
    out.inequalities = polys;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> QmcOptions {
        QmcOptions {
            points: 64_000,
            shifts: 16,
            seed: 1,
        }
    }

    #[test]
    fn square() {
        let r = Region::parse_json(r#"{"dimension": 2, "box": [[0, 10], [0, 10]]}"#).unwrap();
        let rep = davenport_count(&r, &small()).unwrap();
        assert_eq!(rep.count, 121);
        assert!((rep.volume - 100.0).abs() < 1e-9);
        assert!((rep.max_projection - 10.0).abs() < 1e-9);
    }

    #[test]
    fn disk_sheared() {
        let base = r#"{"dimension": 2, "box": [[-10, 10], [-10, 10]],
            "inequalities": [[{"c": 1, "e": [2, 0]}, {"c": 1, "e": [0, 2]}, {"c": -100, "e": [0, 0]}]]"#;
        let plain = Region::parse_json(&format!("{}}}", base)).unwrap();
        let sheared =
            Region::parse_json(&format!(r#"{}, "shear": [[1, 1000000], [0, 1]]}}"#, base)).unwrap();
        assert_eq!(lattice_count(&plain).unwrap(), 317);
        assert_eq!(lattice_count(&sheared).unwrap(), 317);
        let rep = davenport_count(&sheared, &small()).unwrap();
        assert!(rep.max_projection > 1.9e7);
        assert!((rep.volume - 100.0 * std::f64::consts::PI).abs() < 1.0);
    }

    #[test]
    fn translation_keeps_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let spec = random_ellipsoid(&mut rng, 3, 1000.0);
        let moved = translate_spec(&spec, &[3, -2, 5]).unwrap();
        let a = lattice_count(&Region::from_spec(&spec).unwrap()).unwrap();
        let b = lattice_count(&Region::from_spec(&moved).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
