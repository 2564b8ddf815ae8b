use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;
use crate::quadrature::SphereQuadrature;

/// One evaluated functional, as written to reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalRecord {
    pub functional: String,
    pub params: Value,
    pub value: f64,
    pub quad_level: u32,
    /// `|value(level) - value(level - 1)|`, absent at level 1.
    pub est_error: Option<f64>,
}

impl FunctionalRecord {
    /// Evaluates `eval` at `level` and at `level - 1` for the error proxy.
    pub fn evaluate<F>(functional: &str, params: Value, dim: usize, level: u32, eval: F) -> Result<Self>
    where
        F: Fn(&SphereQuadrature) -> Result<f64>,
    {
        let value = eval(&SphereQuadrature::build(dim, level)?)?;
        let est_error = if level > 1 {
            let coarse = eval(&SphereQuadrature::build(dim, level - 1)?)?;
            Some((value - coarse).abs())
        } else {
            None
        };
        Ok(Self {
            functional: functional.to_string(),
            params,
            value,
            quad_level: level,
            est_error,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::SmoothBody;
    use crate::functionals::{lp_asa, PExponent};
    use serde_json::json;

    #[test]
    fn record_shape() {
        let e = SmoothBody::ellipsoid(vec![1.0, 1.5]).unwrap();
        let rec = FunctionalRecord::evaluate("lp_asa", json!({"p": 1.0}), 2, 4, |q| {
            lp_asa(&e, PExponent::Finite(1.0), q)
        })
        .unwrap();
        assert_eq!(rec.quad_level, 4);
        assert!(rec.est_error.unwrap() < 1e-6);
        let text = serde_json::to_value(&rec).unwrap();
        for key in ["functional", "params", "value", "quad_level", "est_error"] {
            assert!(text.get(key).is_some(), "{key}");
        }
        let first = FunctionalRecord::evaluate("x", json!({}), 2, 1, |_| Ok(1.0)).unwrap();
        assert_eq!(first.est_error, None);
    }
}
