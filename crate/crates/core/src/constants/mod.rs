//! Zeta values, Euler products and the exact density identities.

pub mod ball;
pub mod euler;
pub mod identities;
pub mod s5;
pub mod wp;
pub mod zeta;

use serde::Serialize;

pub use ball::{pi, Ball};
pub use euler::{c5_constant, c5_two_route, field_density_constant, C5Routes, AUT_ORDERS};
pub use identities::{euler_factor_identities, IdentityCheck};
pub use s5::{s5_class_data, S5Class};
pub use wp::{wp_series_bound, WpBound};

pub const DEFAULT_BITS: u32 = 192;

#[derive(Clone, Debug, Serialize)]
pub struct ConstantReport {
    pub name: String,
    pub value: String,
    pub error_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub ball: Ball,
}

impl ConstantReport {
    pub fn from_ball(name: &str, ball: Ball, error_bound: f64, notes: Vec<String>) -> Self {
        let bound = error_bound.max(ball.radius_f64());
        let digits = if bound > 0.0 {
            ((-bound.log10()).floor().max(0.0) as usize + 2).min(200)
        } else {
            30
        };
        ConstantReport {
            name: name.into(),
            value: ball.to_decimal(digits),
            error_bound: bound,
            verdict: None,
            notes,
            ball,
        }
    }

    pub fn value_f64(&self) -> f64 {
        self.ball.to_f64()
    }
}

/// zeta(k) for integer k >= 2, to `bits` bits.
pub fn zeta(k: u32, bits: u32) -> ConstantReport {
    let b = zeta::zeta_ball(k, bits);
    let r = b.radius_f64();
    ConstantReport::from_ball(&format!("zeta({})", k), b, r, vec!["Euler-Maclaurin".into()])
}
