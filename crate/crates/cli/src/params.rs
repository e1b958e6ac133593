//! Parsing and validation of numeric command-line parameters. Everything
//! here runs before any file is read.

use hotopo::hofield::{BBox, MAX_DEGREE};
use hotopo::siac::{CharacteristicLength, LsiacParams, MAX_ORDER};

use crate::args::FilterArgs;
use crate::commands::Failure;

fn usage(msg: String) -> Failure {
    Failure::Usage(msg)
}

/// `NxM` with both parts at least `min`.
pub fn dims(flag: &str, s: &str, min: usize) -> Result<[usize; 2], Failure> {
    let parsed = s
        .split_once(['x', 'X'])
        .and_then(|(a, b)| Some([a.trim().parse().ok()?, b.trim().parse().ok()?]));
    match parsed {
        Some([a, b]) if a >= min && b >= min => Ok([a, b]),
        Some(_) => Err(usage(format!("--{flag} {s}: both sizes must be at least {min}"))),
        None => Err(usage(format!("--{flag} {s}: expected NxM, e.g. 200x200"))),
    }
}

pub fn bbox(s: &str) -> Result<Option<BBox>, Failure> {
    if s == "auto" {
        return Ok(None);
    }
    let parts: Option<Vec<f64>> = s.split(',').map(|p| p.trim().parse().ok()).collect();
    match parts.as_deref() {
        Some(&[x0, y0, x1, y1]) if [x0, y0, x1, y1].iter().all(|v| v.is_finite()) && x1 > x0 && y1 > y0 => {
            Ok(Some(BBox::new([x0, y0], [x1, y1])))
        }
        _ => Err(usage(format!(
            "--bbox {s}: expected 'auto' or xmin,ymin,xmax,ymax with xmax > xmin and ymax > ymin"
        ))),
    }
}

pub fn degree(k: usize) -> Result<usize, Failure> {
    if (1..=MAX_DEGREE).contains(&k) {
        Ok(k)
    } else {
        Err(usage(format!("--degree {k}: must be between 1 and {MAX_DEGREE}")))
    }
}

pub fn factor(m: Option<usize>) -> Result<Option<usize>, Failure> {
    match m {
        Some(0) => Err(usage("--factor must be at least 1".into())),
        m => Ok(m),
    }
}

pub fn epsilon(e: f64) -> Result<f64, Failure> {
    if e.is_finite() && e >= 0.0 {
        Ok(e)
    } else {
        Err(usage(format!("--epsilon {e}: must be finite and non-negative")))
    }
}

pub fn theta(t: f64) -> Result<f64, Failure> {
    if t.is_finite() {
        Ok(t)
    } else {
        Err(usage("--theta must be finite".into()))
    }
}

/// Filter parameters shared by `lsiac` and `vorticity --method lsiac`.
pub fn filter(f: &FilterArgs, theta_deg: f64, deriv: u8) -> Result<LsiacParams, Failure> {
    if f.ksiac < 1 {
        return Err(usage("--ksiac must be at least 1".into()));
    }
    let order = f.spline_order.unwrap_or(f.ksiac + 1);
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(usage(format!("--spline-order {order}: must be between 1 and {MAX_ORDER}")));
    }
    if deriv > 1 {
        return Err(usage(format!("--deriv {deriv}: must be 0 or 1")));
    }
    if deriv == 1 && order < 2 {
        return Err(usage("--deriv 1 needs --spline-order of at least 2".into()));
    }
    let scale = match f.h {
        Some(h) if h.is_finite() && h > 0.0 => CharacteristicLength::Fixed(h),
        Some(h) => return Err(usage(format!("--H {h}: must be positive"))),
        None => CharacteristicLength::Adaptive,
    };
    let params = LsiacParams::new(f.ksiac, theta_deg)
        .with_spline_order(order)
        .with_deriv(deriv)
        .with_scale(scale);
    params.validate().map_err(|e| usage(e.to_string()))?;
    Ok(params)
}

/// `lo:hi:n` threshold specification.
pub fn thresholds(s: &str) -> Result<(f64, f64, usize), Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    let parsed = match parts[..] {
        [lo, hi, n] => lo
            .parse::<f64>()
            .ok()
            .zip(hi.parse::<f64>().ok())
            .zip(n.parse::<usize>().ok()),
        _ => None,
    };
    match parsed {
        Some(((lo, hi), n)) if lo.is_finite() && hi.is_finite() && hi >= lo && n >= 1 => Ok((lo, hi, n)),
        _ => Err(usage(format!("--thresholds {s}: expected lo:hi:n with hi >= lo and n >= 1"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_dimensions() {
        assert_eq!(dims("res", "500x200", 2).unwrap(), [500, 200]);
        assert!(dims("res", "1x5", 2).is_err());
        assert!(dims("res", "12", 2).is_err());
    }

    #[test]
    fn parses_boxes_and_thresholds() {
        assert_eq!(bbox("auto").unwrap(), None);
        assert_eq!(bbox("0,0,1,2").unwrap(), Some(BBox::new([0.0, 0.0], [1.0, 2.0])));
        assert!(bbox("1,0,0,1").is_err());
        assert_eq!(thresholds("0:2:5").unwrap(), (0.0, 2.0, 5));
        assert!(thresholds("0:2").is_err());
    }
}
