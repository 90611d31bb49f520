use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A convex function `Φ` on `[0, ∞)`.
#[derive(Clone)]
pub enum Phi {
    Square,
    /// `x log x` with `0 log 0 = 0`.
    XLogX,
    Custom {
        name: String,
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Phi {
    /// Wraps a user function after checking midpoint convexity on a grid.
    pub fn custom(name: &str, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Phi> {
        let grid: Vec<f64> = (0..=200).map(|i| i as f64 * 0.05).collect();
        for w in grid.windows(3) {
            let mid = f(w[1]);
            let avg = 0.5 * (f(w[0]) + f(w[2]));
            if mid > avg + 1e-12 * avg.abs().max(1.0) {
                return Err(Error::NotConvex(w[1]));
            }
        }
        Ok(Phi::Custom {
            name: name.to_string(),
            f: Arc::new(f),
        })
    }

    pub fn name(&self) -> &str {
        match self {
            Phi::Square => "square",
            Phi::XLogX => "xlogx",
            Phi::Custom { name, .. } => name,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Phi::Square => x * x,
            Phi::XLogX => {
                if x <= 0.0 {
                    0.0
                } else {
                    x * x.ln()
                }
            }
            Phi::Custom { f, .. } => f(x),
        }
    }
}

/// `Ent_μ^Φ(f) = E_μ Φ(f) − Φ(E_μ f)` for non-negative `f`.
pub fn phi_entropy(f: &[f64], mu: &[f64], phi: &Phi) -> Result<f64> {
    if f.len() != mu.len() {
        return Err(Error::DimensionMismatch {
            expected: mu.len(),
            found: f.len(),
        });
    }
    if let Some((index, &value)) = f.iter().enumerate().find(|(_, &v)| v < 0.0 || v.is_nan()) {
        return Err(Error::NegativeEntry { index, value });
    }
    Ok(entropy_unchecked(f, mu, phi))
}

pub(crate) fn entropy_unchecked(f: &[f64], mu: &[f64], phi: &Phi) -> f64 {
    if let Phi::Square = phi {
        // Variance in centred form, which avoids cancellation.
        let mean: f64 = f.iter().zip(mu).map(|(a, m)| a * m).sum();
        return f
            .iter()
            .zip(mu)
            .map(|(a, m)| m * (a - mean) * (a - mean))
            .sum();
    }
    let mean: f64 = f.iter().zip(mu).map(|(a, m)| a * m).sum();
    let e: f64 = f.iter().zip(mu).map(|(a, m)| m * phi.eval(*a)).sum();
    e - phi.eval(mean)
}
