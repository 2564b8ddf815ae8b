//! Body descriptions as read from JSON files or short inline tokens.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Body, Polytope, SmoothBody};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodySpec {
    Ball {
        radius: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
    },
    Ellipsoid { axes: Vec<f64> },
    Polytope { vertices: Vec<Vec<f64>> },
}

impl BodySpec {
    /// Accepts inline JSON, a path to a JSON file, or one of the tokens
    /// `ball:R`, `ellipsoid:a,b,...`, `square:h`, `cube:h`.
    pub fn parse(token: &str) -> Result<Self> {
        let token = token.trim();
        if token.starts_with('{') {
            return serde_json::from_str(token)
                .map_err(|e| Error::InvalidBody(format!("body JSON: {e}")));
        }
        if let Some((name, args)) = token.split_once(':') {
            let nums = parse_list(args)?;
            let one = |what: &str| -> Result<f64> {
                match nums.as_slice() {
                    [x] => Ok(*x),
                    _ => Err(Error::InvalidBody(format!("{what} takes exactly one number"))),
                }
            };
            return match name {
                "ball" => Ok(BodySpec::Ball {
                    radius: one("ball")?,
                    dim: None,
                }),
                "ellipsoid" => Ok(BodySpec::Ellipsoid { axes: nums }),
                "square" => {
                    let h = one("square")?;
                    Ok(BodySpec::Polytope {
                        vertices: vec![vec![h, h], vec![-h, h], vec![-h, -h], vec![h, -h]],
                    })
                }
                "cube" => {
                    let h = one("cube")?;
                    let mut vertices = Vec::new();
                    for sx in [-h, h] {
                        for sy in [-h, h] {
                            for sz in [-h, h] {
                                vertices.push(vec![sx, sy, sz]);
                            }
                        }
                    }
                    Ok(BodySpec::Polytope { vertices })
                }
                other => Err(Error::InvalidBody(format!("unknown body kind `{other}`"))),
            };
        }
        let path = Path::new(token);
        if path.is_file() {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidBody(format!("{}: {e}", path.display())))?;
            return serde_json::from_str(&text)
                .map_err(|e| Error::InvalidBody(format!("{}: {e}", path.display())));
        }
        Err(Error::InvalidBody(format!(
            "`{token}` is neither a body token, inline JSON, nor a readable file"
        )))
    }

    /// Dimension fixed by the description itself, if any.
    pub fn intrinsic_dim(&self) -> Option<usize> {
        match self {
            BodySpec::Ball { dim, .. } => *dim,
            BodySpec::Ellipsoid { axes } => Some(axes.len()),
            BodySpec::Polytope { vertices } => vertices.first().map(Vec::len),
        }
    }

    /// Builds the body; `dim` is required for balls without a stored dimension
    /// and must agree with the intrinsic dimension otherwise.
    pub fn build(&self, dim: Option<usize>) -> Result<Body> {
        let d = match (self.intrinsic_dim(), dim) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::InvalidBody(format!(
                    "body has dimension {a} but n = {b} was requested"
                )))
            }
            (Some(a), _) => a,
            (None, Some(b)) => b,
            (None, None) => {
                return Err(Error::InvalidBody("ball needs a dimension (pass --n)".into()))
            }
        };
        Ok(match self {
            BodySpec::Ball { radius, .. } => Body::Smooth(SmoothBody::ball(d, *radius)?),
            BodySpec::Ellipsoid { axes } => Body::Smooth(SmoothBody::ellipsoid(axes.clone())?),
            BodySpec::Polytope { vertices } => Body::Polytope(Polytope::from_vertices(vertices.clone())?),
        })
    }

    /// The same description with its dimension made explicit, for canonical output.
    pub fn with_dim(&self, dim: usize) -> Self {
        match self {
            BodySpec::Ball { radius, .. } => BodySpec::Ball {
                radius: *radius,
                dim: Some(dim),
            },
            other => other.clone(),
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidBody(format!("`{x}` is not a number")))
        })
        .collect()
}
