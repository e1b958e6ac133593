use super::grid::{PLField, ScalarGrid};
use crate::error::{Error, Result};

fn rescale(values: &[f64]) -> Result<Vec<f64>> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(max > min) {
        return Err(Error::ConstantField);
    }
    let span = max - min;
    Ok(values
        .iter()
        .map(|&v| {
            if v == min {
                0.0
            } else if v == max {
                1.0
            } else {
                (v - min) / span
            }
        })
        .collect())
}

/// Affine rescaling of sample values onto `[0, 1]`.
pub trait Normalize: Sized {
    fn normalize(&self) -> Result<Self>;
}

impl Normalize for ScalarGrid {
    fn normalize(&self) -> Result<Self> {
        self.with_values(rescale(self.values())?)
    }
}

impl Normalize for PLField {
    fn normalize(&self) -> Result<Self> {
        self.with_values(rescale(&self.values)?)
    }
}

pub fn normalize<T: Normalize>(g: &T) -> Result<T> {
    g.normalize()
}
