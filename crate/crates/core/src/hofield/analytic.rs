use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type ScalarFn = dyn Fn(f64, f64) -> f64 + Send + Sync;

/// Closed-form scalar function of `(x, y)`.
#[derive(Clone)]
pub struct AnalyticField {
    name: String,
    f: Arc<ScalarFn>,
}

impl fmt::Debug for AnalyticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticField").field("name", &self.name).finish()
    }
}

/// `(sin 2πx + ½ sin 4πx)(sin 2πy + sin 4πy)`: four strong and four weak
/// extrema on the unit square, asymmetric in x and y.
pub fn harmonic2d(x: f64, y: f64) -> f64 {
    ((2.0 * PI * x).sin() + 0.5 * (4.0 * PI * x).sin())
        * ((2.0 * PI * y).sin() + (4.0 * PI * y).sin())
}

impl AnalyticField {
    pub fn new(name: impl Into<String>, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.f)(x, y)
    }

    /// Looks up a built-in by identifier. Velocity pairs expand to their
    /// `u` and `v` components.
    pub fn builtin(id: &str) -> Result<Vec<AnalyticField>> {
        let fields = match id {
            "harmonic2d" => vec![AnalyticField::new("f", harmonic2d)],
            // Rigid rotation about the centre of the unit square.
            "rotation" => vec![
                AnalyticField::new("u", |_, y| -(y - 0.5)),
                AnalyticField::new("v", |x, _| x - 0.5),
            ],
            // Taylor-Green style cellular flow.
            "cells" => vec![
                AnalyticField::new("u", |x, y| (PI * x).sin() * (PI * y).cos()),
                AnalyticField::new("v", |x, y| -(PI * x).cos() * (PI * y).sin()),
            ],
            "x" => vec![AnalyticField::new("f", |x, _| x)],
            "y" => vec![AnalyticField::new("f", |_, y| y)],
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown analytic field '{id}' (expected harmonic2d, rotation, cells, x, y)"
                )))
            }
        };
        Ok(fields)
    }
}
