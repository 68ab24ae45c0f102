use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::pencil::{act, classify_with, Classification, ClassifyOptions, GroupElementZ, Quadruple, S5Status};

/// Every `SPOT_CHECK_STRIDE`-th sample is re-classified after a random G_Z move.
pub const SPOT_CHECK_STRIDE: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SampleKey {
    pub status: String,
    pub i: Option<u8>,
    pub reducible: Option<bool>,
    pub s5: Option<String>,
}

impl From<&Classification> for SampleKey {
    fn from(c: &Classification) -> Self {
        match c {
            Classification::DiscZero => SampleKey {
                status: "DiscZero".into(),
                i: None,
                reducible: None,
                s5: None,
            },
            Classification::Classified { i, reducible, s5 } => SampleKey {
                status: "Classified".into(),
                i: Some(*i),
                reducible: Some(*reducible),
                s5: Some(
                    match s5 {
                        S5Status::CertifiedS5 => "CertifiedS5",
                        S5Status::Unknown => "Unknown",
                    }
                    .into(),
                ),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleCount {
    pub key: SampleKey,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleStats {
    pub radius: i64,
    pub n: usize,
    pub seed: u64,
    pub counts: Vec<SampleCount>,
    pub spot_checks: usize,
    pub spot_check_failures: usize,
}

impl SampleStats {
    pub fn spot_check_pass_rate(&self) -> f64 {
        if self.spot_checks == 0 {
            1.0
        } else {
            1.0 - self.spot_check_failures as f64 / self.spot_checks as f64
        }
    }
}

/// Draw `n` quadruples with coordinates uniform in `[-radius, radius]` and
/// tabulate their classifications. Sample `k` uses its own stream seeded
/// from `(seed, k)`, so the result does not depend on scheduling.
pub fn sample_box_with(radius: i64, n: usize, seed: u64, opts: &ClassifyOptions) -> SampleStats {
    let results: Vec<(Classification, Option<bool>)> = (0..n)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let q = Quadruple::random(&mut rng, radius.max(0));
            let cls_seed: u64 = rng.gen();
            let c = classify_with(&q, cls_seed, opts);
            let spot = (k % SPOT_CHECK_STRIDE == 0).then(|| {
                let g = GroupElementZ::random(&mut rng, 6, 2);
                let moved = classify_with(&act(&g, &q), cls_seed, opts);
                moved.orbit_key() == c.orbit_key()
            });
            (c, spot)
        })
        .collect();
    let mut counts: BTreeMap<SampleKey, usize> = BTreeMap::new();
    let mut spot_checks = 0;
    let mut spot_check_failures = 0;
    for (c, spot) in &results {
        *counts.entry(SampleKey::from(c)).or_default() += 1;
        if let Some(ok) = spot {
            spot_checks += 1;
            spot_check_failures += !ok as usize;
        }
    }
    SampleStats {
        radius,
        n,
        seed,
        counts: counts
            .into_iter()
            .map(|(key, count)| SampleCount { key, count })
            .collect(),
        spot_checks,
        spot_check_failures,
    }
}

pub fn sample_box(radius: i64, n: usize, seed: u64) -> SampleStats {
    sample_box_with(radius, n, seed, &ClassifyOptions::default())
}
