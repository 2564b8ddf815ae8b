use crate::bodies::{SmoothBody, UnitVector};
use crate::error::{Error, Result};
use crate::quadrature::{SpatialRegion, SphereRegion};

fn numbers(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("`{x}` is not a number")))
        })
        .collect()
}

fn scalar(s: &str) -> Result<f64> {
    match numbers(s)?.as_slice() {
        [x] => Ok(*x),
        _ => Err(Error::InvalidArgument(format!("`{s}` must be a single number"))),
    }
}

/// Parses a region token; spatial regions are pulled back through `body`.
///
/// `full`, `cap:x,y,z:angle`, `sector:start,end`, `halfspace:a,..:b`
/// (`<a, x> >= b`), `ball:c,..:r`.
pub fn parse_region(token: &str, body: &SmoothBody) -> Result<SphereRegion> {
    let n = body.dim();
    let mut parts = token.trim().split(':');
    let kind = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.collect();
    let vector = |s: &str| -> Result<Vec<f64>> {
        let v = numbers(s)?;
        if v.len() != n {
            return Err(Error::InvalidArgument(format!(
                "region vector `{s}` needs {n} components"
            )));
        }
        Ok(v)
    };
    let bad = || Error::InvalidArgument(format!("malformed region `{token}`"));
    match (kind, args.as_slice()) {
        ("full", []) => Ok(SphereRegion::Full),
        ("cap", [center, angle]) => Ok(SphereRegion::Cap {
            center: UnitVector::new(vector(center)?)?,
            angle: scalar(angle)?,
        }),
        ("sector", [range]) if n == 2 => match numbers(range)?.as_slice() {
            [start, end] if end > start => Ok(SphereRegion::Sector {
                start: *start,
                end: *end,
            }),
            _ => Err(bad()),
        },
        ("halfspace", [normal, offset]) => Ok(SphereRegion::Pullback {
            body: body.clone(),
            region: SpatialRegion::HalfSpace {
                normal: vector(normal)?,
                offset: scalar(offset)?,
            },
        }),
        ("ball", [center, radius]) => Ok(SphereRegion::Pullback {
            body: body.clone(),
            region: SpatialRegion::Ball {
                center: vector(center)?,
                radius: scalar(radius)?,
            },
        }),
        _ => Err(bad()),
    }
}
