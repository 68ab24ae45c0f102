use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::config::Config;
use super::report::record;
use super::{CliError, Command, Table1Command};
use crate::constants::{
    c5_constant, c5_two_route, euler_factor_identities, field_density_constant, s5_class_data,
    wp_series_bound, zeta, ConstantReport,
};
use crate::constants::euler::DEFAULT_SIEVE_LIMIT;
use crate::cusp::table::format_atlas;
use crate::cusp::{coordinate_weight, generate_atlas, haar_exponents, parse_table, verify_against_table, CoordId};
use crate::geometry::davenport::{ellipsoid_batch, QmcOptions, DEFAULT_SHIFTS};
use crate::geometry::{davenport_count, jacobian_constancy_check, phi, sample_box_with, Region};
use crate::local::mass::beta_infinity_report;
use crate::local::{beta_p, fetch_local_fields, fixture_path, load_local_fields, tame_local_fields, FetchConfig};
use crate::pencil::{classify_detailed, parse_quadruples, ClassifyOptions, Quadruple};

pub const EXPECTED_CASES: usize = 152;
pub const JACOBIAN_SPREAD_GATE: f64 = 1e-5;
pub const CONSTANT_ERROR_GATE: f64 = 1e-12;
pub const C5_ROUTE_GATE: f64 = 1e-8;
pub const DAVENPORT_C_GATE: f64 = 32.0;

/// Files read by a command, for the inputs digest.
pub fn input_files(cmd: &Command, cfg: &Config) -> Vec<PathBuf> {
    match cmd {
        Command::Table1(Table1Command::Generate { .. }) => vec![cfg.fixtures_dir.join("table1.txt")],
        Command::Table1(Table1Command::Verify { table }) => vec![table.clone()],
        Command::Classify { input, .. } => vec![input.clone()],
        Command::Beta { table: Some(t), .. } => vec![t.clone()],
        Command::Beta { p: Some(p), table: None, .. } => {
            vec![fixture_path(&cfg.fixtures_dir.join("localfields"), *p)]
        }
        Command::Jacobian { input: Some(i), .. } => vec![i.clone()],
        Command::Davenport { region: Some(r), .. } => vec![r.clone()],
        _ => Vec::new(),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))
}

fn rat(r: &BigRational) -> String {
    r.to_string()
}

fn constant_record(cmd: &str, c: &ConstantReport, verdict: Option<bool>) -> Value {
    record(
        cmd,
        &c.name,
        json!({
            "value": c.value,
            "error_bound": c.error_bound,
            "verdict": verdict,
            "notes": c.notes,
        }),
    )
}

pub fn dispatch(cmd: &Command, cfg: &Config) -> Result<Vec<Value>, CliError> {
    match cmd {
        Command::Table1(t) => table1(t, cfg),
        Command::Weights { coord } => weights(coord.as_deref()),
        Command::Haar => Ok(vec![record(
            "haar",
            "haar_exponents",
            json!({ "value": haar_exponents() }),
        )]),
        Command::Classify { input, detail } => classify(input, *detail, cfg),
        Command::Beta { p, table, infinity } => beta(*p, table.as_deref(), *infinity, cfg),
        Command::Constants { .. } => constants(cfg),
        Command::Identities => identities(),
        Command::WpBound { p } => wp(p),
        Command::Jacobian { samples, input } => jacobian(*samples, input.as_deref(), cfg),
        Command::Davenport {
            region,
            batch,
            max_shear,
            points,
        } => davenport(region.as_deref(), *batch, *max_shear, *points, cfg),
        Command::Sample { radius, count } => sample(*radius, *count, cfg),
        Command::Fetch { p, max_degree } => fetch(*p, *max_degree, cfg),
    }
}

fn table1(t: &Table1Command, cfg: &Config) -> Result<Vec<Value>, CliError> {
    let atlas = generate_atlas();
    let mut out = Vec::new();
    let count_record = |cmd: &str| {
        record(
            cmd,
            "case-count",
            json!({
                "value": atlas.nodes.len(),
                "expected": EXPECTED_CASES,
                "max_depth": atlas.max_depth(),
                "verdict": atlas.nodes.len() == EXPECTED_CASES,
            }),
        )
    };
    match t {
        Table1Command::Generate { out: path } => {
            let cmd = "table1 generate";
            for n in &atlas.nodes {
                out.push(record(
                    cmd,
                    &n.label,
                    json!({
                        "t0": n.t0, "t1": n.t1, "pi": n.pi,
                        "bound_numerator": n.bound_numerator, "depth": n.depth,
                        "value": format!("{}/40", n.bound_numerator),
                    }),
                ));
            }
            out.push(count_record(cmd));
            let bundled = cfg.fixtures_dir.join("table1.txt");
            if bundled.exists() {
                let rows = parse_table(&read(&bundled)?).map_err(|e| CliError::Input(e.to_string()))?;
                let rep = verify_against_table(&atlas, &rows);
                out.push(record(
                    cmd,
                    "bundled-table",
                    json!({
                        "source": bundled.display().to_string(),
                        "matched": rep.matched,
                        "mismatched": rep.mismatched,
                        "unlisted": rep.unlisted,
                        "verdict": rep.all_match() && rows.len() == atlas.nodes.len(),
                    }),
                ));
            }
            if let Some(path) = path {
                std::fs::write(path, format_atlas(&atlas))
                    .map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))?;
            }
        }
        Table1Command::Verify { table } => {
            let cmd = "table1 verify";
            let rows = parse_table(&read(table)?).map_err(|e| CliError::Input(e.to_string()))?;
            let rep = verify_against_table(&atlas, &rows);
            for r in &rep.rows {
                let mut v = serde_json::to_value(r).expect("serializable");
                v["verdict"] = json!(r.ok());
                out.push(record(cmd, &r.label, v));
            }
            out.push(record(
                cmd,
                "unlisted",
                json!({ "value": rep.unlisted, "verdict": rep.unlisted.is_empty() }),
            ));
            out.push(count_record(cmd));
        }
    }
    Ok(out)
}

fn weights(coord: Option<&str>) -> Result<Vec<Value>, CliError> {
    let cmd = "weights";
    let coords: Vec<CoordId> = match coord {
        Some(name) => vec![name
            .parse()
            .map_err(|_| CliError::Usage(format!("unknown coordinate {:?}", name)))?],
        None => CoordId::all().collect(),
    };
    let mut out: Vec<Value> = coords
        .iter()
        .map(|&c| {
            let w = coordinate_weight(c);
            record(cmd, &c.to_string(), json!({ "value": w.to_string(), "exponents": w.exponents }))
        })
        .collect();
    if coord.is_none() {
        let total: crate::cusp::WeightMonomial = coords.iter().map(|&c| coordinate_weight(c)).sum();
        let mut want = [0i64; 8];
        want[0] = 40;
        out.push(record(
            cmd,
            "weight-sum",
            json!({ "value": total.exponents, "verdict": total.exponents == want }),
        ));
    }
    Ok(out)
}

fn classify(input: &Path, detail: bool, cfg: &Config) -> Result<Vec<Value>, CliError> {
    let qs = parse_quadruples(&read(input)?).map_err(|e| CliError::Input(e.to_string()))?;
    let opts = ClassifyOptions {
        retry_cap: cfg.retry_cap,
        prime_budget: cfg.prime_budget,
    };
    let source = input.display().to_string();
    Ok(qs
        .par_iter()
        .enumerate()
        .map(|(k, q)| {
            let seed = cfg.seed.wrapping_add(k as u64);
            let d = classify_detailed(q, seed, &opts);
            let mut body = json!({
                "index": k,
                "value": d.classification,
                "source": source,
                "seed": seed,
            });
            if detail {
                body["char_quintic"] = json!(d.char_quintic.map(|f| f.to_string()));
                body["disc_sign"] = json!(d.disc_sign);
                body["factor_degrees"] = json!(d.factor_degrees);
                body["real_roots"] = json!(d.real_roots);
            }
            record("classify", &format!("q{}", k + 1), body)
        })
        .collect())
}

fn beta(p: Option<u64>, table: Option<&Path>, infinity: bool, cfg: &Config) -> Result<Vec<Value>, CliError> {
    let cmd = "beta";
    let (report, source) = match (p, infinity) {
        (_, true) => (beta_infinity_report(), "real quintic algebras".to_string()),
        (Some(p), false) => {
            let fixture = fixture_path(&cfg.fixtures_dir.join("localfields"), p);
            let (fields, source) = if let Some(t) = table {
                let tab = load_local_fields(t).map_err(|e| CliError::Input(e.to_string()))?;
                (tab.for_prime(p), t.display().to_string())
            } else if fixture.exists() {
                let tab = load_local_fields(&fixture).map_err(|e| CliError::Input(e.to_string()))?;
                (tab.for_prime(p), fixture.display().to_string())
            } else if p > 5 {
                let f = tame_local_fields(p).map_err(|e| CliError::Input(e.to_string()))?;
                (f, "tame enumeration".to_string())
            } else if cfg.network_enabled {
                let path = fetch_local_fields(&FetchConfig::new(cfg.endpoint.clone(), cfg.cache_dir.clone()), p, 5)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                let tab = load_local_fields(&path).map_err(|e| CliError::Input(e.to_string()))?;
                (tab.for_prime(p), path.display().to_string())
            } else {
                return Err(CliError::Input(format!(
                    "no local field table for p = {} (give --table or enable the network)",
                    p
                )));
            };
            let rep = beta_p(p, &fields).map_err(|e| CliError::Input(e.to_string()))?;
            (rep, source)
        }
        (None, false) => return Err(CliError::Usage("beta needs --p or --infinity".into())),
    };
    let name = match report.p {
        Some(p) => format!("beta_{}", p),
        None => "beta_infinity".to_string(),
    };
    Ok(vec![record(
        cmd,
        &name,
        json!({
            "value": rat(&report.total),
            "closed_form": rat(&report.closed_form),
            "prefactor": rat(&report.prefactor),
            "algebras": report.terms.len(),
            "source": source,
            "verdict": report.matches,
        }),
    )])
}

fn constants(cfg: &Config) -> Result<Vec<Value>, CliError> {
    let cmd = "constants";
    let bits = cfg.precision;
    let mut out = Vec::new();
    for k in 2..=5 {
        let z = zeta(k, bits);
        let ok = z.error_bound < CONSTANT_ERROR_GATE;
        out.push(constant_record(cmd, &z, Some(ok)));
    }
    let dens: Vec<ConstantReport> = (0..3).filter_map(|i| field_density_constant(i, bits)).collect();
    for d in &dens {
        out.push(constant_record(cmd, d, Some(d.error_bound < CONSTANT_ERROR_GATE)));
    }
    // c_i * 2 n_i is the same zeta product for every i.
    let scaled: Vec<f64> = dens
        .iter()
        .zip(crate::constants::AUT_ORDERS)
        .map(|(d, n)| d.value_f64() * (2 * n) as f64)
        .collect();
    let spread = scaled.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - scaled.iter().cloned().fold(f64::INFINITY, f64::min);
    out.push(record(
        cmd,
        "denominator-ratios",
        json!({
            "value": crate::constants::AUT_ORDERS.iter().map(|n| 2 * n).collect::<Vec<_>>(),
            "spread": spread,
            "verdict": spread < 1e-12,
        }),
    ));
    let routes = c5_two_route(bits, cfg.p_max, DEFAULT_SIEVE_LIMIT);
    out.push(constant_record(cmd, &routes.route_a, None));
    out.push(constant_record(cmd, &routes.route_b, None));
    out.push(record(
        cmd,
        "c5-two-route",
        json!({
            "value": routes.route_a.value,
            "p_max": cfg.p_max,
            "difference": routes.difference,
            "combined_error": routes.combined_error,
            "overlap": routes.overlap,
            "verdict": routes.overlap && routes.difference < C5_ROUTE_GATE,
        }),
    ));
    out.push(constant_record(cmd, &c5_constant(bits, cfg.p_max), None));
    Ok(out)
}

fn identities() -> Result<Vec<Value>, CliError> {
    let cmd = "identities";
    let mut out: Vec<Value> = euler_factor_identities()
        .iter()
        .map(|c| {
            record(
                cmd,
                &c.name,
                json!({
                    "statement": c.statement,
                    "left": c.left.to_string(),
                    "right": c.right.to_string(),
                    "verdict": c.verdict,
                }),
            )
        })
        .collect();
    let classes = s5_class_data();
    let total: usize = classes.iter().map(|c| c.size).sum();
    let orbit_stabilizer = classes.iter().all(|c| c.size * c.centralizer == 120);
    out.push(record(
        cmd,
        "s5-classes",
        json!({
            "value": classes.iter().map(|c| c.size).collect::<Vec<_>>(),
            "classes": classes,
            "verdict": total == 120 && orbit_stabilizer,
        }),
    ));
    Ok(out)
}

fn wp(ps: &[u64]) -> Result<Vec<Value>, CliError> {
    let cmd = "wp-bound";
    if ps.iter().any(|&p| !crate::algebra::numtheory::is_prime_u64(p)) {
        return Err(CliError::Usage("--p must be prime".into()));
    }
    let bounds: Vec<_> = ps.iter().map(|&p| (p, crate::constants::wp::wp_series_exact(p), wp_series_bound(p))).collect();
    let mut out: Vec<Value> = bounds
        .iter()
        .map(|(p, _, b)| {
            record(
                cmd,
                &format!("p{}", p),
                json!({
                    "value": b.p2_times_k_sum,
                    "k_sum": b.k_sum,
                    "approx": b.p2_times_k_sum_f64,
                    "verdict": b.p2_times_k_sum_f64.is_finite(),
                }),
            )
        })
        .collect();
    if bounds.len() > 1 {
        let scaled: Vec<BigRational> = bounds
            .iter()
            .map(|(p, s, _)| s * BigRational::from_integer(BigInt::from(p * p)))
            .collect();
        let mut sorted = bounds.iter().map(|b| b.0).collect::<Vec<_>>();
        sorted.sort_unstable();
        let in_order = sorted == bounds.iter().map(|b| b.0).collect::<Vec<_>>();
        out.push(record(
            cmd,
            "monotone",
            json!({
                "value": in_order && scaled.windows(2).all(|w| w[1] <= w[0]),
                "verdict": in_order && scaled.windows(2).all(|w| w[1] <= w[0]),
            }),
        ));
    }
    Ok(out)
}

fn jacobian(samples: usize, input: Option<&Path>, cfg: &Config) -> Result<Vec<Value>, CliError> {
    let cmd = "jacobian";
    let q = match input {
        Some(path) => parse_quadruples(&read(path)?)
            .map_err(|e| CliError::Input(e.to_string()))?
            .into_iter()
            .next()
            .ok_or_else(|| CliError::Input(format!("{}: no quadruples", path.display())))?,
        None => Quadruple::random(&mut ChaCha8Rng::seed_from_u64(cfg.seed), 5),
    };
    let y = q.to_f64();
    let rep = jacobian_constancy_check(&y, samples.max(1), cfg.seed)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let mut out: Vec<Value> = rep
        .samples
        .iter()
        .enumerate()
        .map(|(k, (cp, v))| {
            record(cmd, &format!("sample-{}", k), json!({ "value": v, "lambda": cp.lambda, "t": cp.t }))
        })
        .collect();
    out.push(record(
        cmd,
        "spread",
        json!({
            "value": rep.relative_spread,
            "min": rep.min,
            "max": rep.max,
            "seed": cfg.seed,
            "quadruple": q.to_string(),
            "verdict": rep.relative_spread < JACOBIAN_SPREAD_GATE,
        }),
    ));
    let (cp, v) = &rep.samples[0];
    let mut moved = cp.clone();
    moved.lambda *= 2.0;
    let v2 = phi(&y, &moved, crate::geometry::chart::DEFAULT_STEP).map_err(|e| CliError::Input(e.to_string()))?;
    let gap = (v2 - v).abs() / v.abs();
    out.push(record(
        cmd,
        "lambda-invariance",
        json!({ "value": gap, "verdict": gap < 1e-10 }),
    ));
    Ok(out)
}

fn davenport(
    region: Option<&Path>,
    batch: Option<usize>,
    max_shear: f64,
    points: usize,
    cfg: &Config,
) -> Result<Vec<Value>, CliError> {
    let cmd = "davenport";
    let mut out = Vec::new();
    if let Some(path) = region {
        let r = Region::parse_json(&read(path)?).map_err(|e| CliError::Input(e.to_string()))?;
        let rep = davenport_count(
            &r,
            &QmcOptions {
                points,
                shifts: DEFAULT_SHIFTS,
                seed: cfg.seed,
            },
        )
        .map_err(|e| CliError::Input(e.to_string()))?;
        let mut v = serde_json::to_value(&rep).expect("serializable");
        v["value"] = json!(rep.count);
        v["source"] = json!(path.display().to_string());
        out.push(record(cmd, "region", v));
    }
    if let Some(n) = batch {
        let rep = ellipsoid_batch(n, cfg.seed, points, max_shear).map_err(|e| CliError::Input(e.to_string()))?;
        for (k, t) in rep.trials.iter().enumerate() {
            out.push(record(
                cmd,
                &format!("trial-{}", k),
                json!({
                    "value": t.count,
                    "volume": t.volume,
                    "volume_error": t.volume_error,
                    "max_projection": t.max_projection,
                    "ratio": t.ratio,
                }),
            ));
        }
        out.push(record(
            cmd,
            "fitted-c",
            json!({ "value": rep.fitted_c, "gate": DAVENPORT_C_GATE, "verdict": rep.fitted_c <= DAVENPORT_C_GATE }),
        ));
    }
    if out.is_empty() {
        return Err(CliError::Usage("davenport needs --region or --batch".into()));
    }
    Ok(out)
}

fn sample(radius: i64, count: usize, cfg: &Config) -> Result<Vec<Value>, CliError> {
    let cmd = "sample";
    let opts = ClassifyOptions {
        retry_cap: cfg.retry_cap,
        prime_budget: cfg.prime_budget,
    };
    let stats = sample_box_with(radius, count, cfg.seed, &opts);
    let mut out: Vec<Value> = stats
        .counts
        .iter()
        .map(|c| {
            let name = match (c.key.i, c.key.reducible, &c.key.s5) {
                (Some(i), Some(r), Some(s)) => format!(
                    "i={} {} {}",
                    i,
                    if r { "reducible" } else { "irreducible" },
                    s
                ),
                _ => c.key.status.clone(),
            };
            record(cmd, &name, json!({ "value": c.count, "key": c.key }))
        })
        .collect();
    out.push(record(
        cmd,
        "spot-checks",
        json!({
            "value": stats.spot_checks,
            "failures": stats.spot_check_failures,
            "seed": cfg.seed,
            "verdict": stats.spot_check_failures == 0,
        }),
    ));
    Ok(out)
}

fn fetch(p: u64, max_degree: u32, cfg: &Config) -> Result<Vec<Value>, CliError> {
    if !cfg.network_enabled || cfg.endpoint.is_empty() {
        return Err(CliError::Usage(
            "fetch needs network_enabled = true and an endpoint in the configuration".into(),
        ));
    }
    let path = fetch_local_fields(&FetchConfig::new(cfg.endpoint.clone(), cfg.cache_dir.clone()), p, max_degree)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let table = load_local_fields(&path).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(vec![record(
        "fetch",
        &format!("p{}", p),
        json!({
            "value": path.display().to_string(),
            "records": table.records.len(),
            "endpoint": cfg.endpoint,
        }),
    )])
}
