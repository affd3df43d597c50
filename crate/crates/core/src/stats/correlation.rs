use crate::{Error, Result};

/// Pearson product-moment correlation.
pub fn pearson_r(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(Error::EmptyInput("pearson_r requires at least two points"));
    }
    super::check_finite(xs, "pearson_r input")?;
    super::check_finite(ys, "pearson_r input")?;
    let mx = super::mean(xs);
    let my = super::mean(ys);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::DegenerateSeries("zero variance"));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn worked_examples() {
        assert!((pearson_r(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson_r(&[1.0, 2.0, 3.0], &[-2.0, -4.0, -6.0]).unwrap() + 1.0).abs() < 1e-15);
        // Deviations (-1.5,-0.5,0.5,1.5) and (-0.5,-1.5,1.5,0.5): 3 / sqrt(5 * 5).
        assert!((pearson_r(&[1.0, 2.0, 3.0, 4.0], &[2.0, 1.0, 4.0, 3.0]).unwrap() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert_eq!(pearson_r(&[1.0, 1.0], &[1.0, 2.0]), Err(Error::DegenerateSeries("zero variance")));
        assert_eq!(pearson_r(&[1.0], &[1.0, 2.0]), Err(Error::LengthMismatch(1, 2)));
        assert!(matches!(pearson_r(&[1.0], &[1.0]), Err(Error::EmptyInput(_))));
    }

    proptest! {
        #[test]
        fn symmetric_and_sign_flipping(pts in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 3..30)) {
            let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
            let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
            let Ok(r) = pearson_r(&xs, &ys) else { return Ok(()) };
            prop_assert!((-1.0..=1.0).contains(&r));
            prop_assert!((r - pearson_r(&ys, &xs).unwrap()).abs() < 1e-12);
            let neg: Vec<f64> = ys.iter().map(|y| -y).collect();
            prop_assert!((r + pearson_r(&xs, &neg).unwrap()).abs() < 1e-12);
        }
    }
}
