use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One edge of a lower convex hull of points `(index, valuation)`.
///
/// Sign convention: a segment of slope `s` accounts for `length` roots of
/// valuation `-s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NPSegment {
    /// Reduced `(numerator, denominator)`, denominator positive.
    pub slope: (i64, i64),
    pub length: usize,
    pub start: (usize, i64),
    pub end: (usize, i64),
    /// Every input point lying on the segment, endpoints included.
    pub points: Vec<(usize, i64)>,
}

impl NPSegment {
    /// Valuation of the roots this segment accounts for, as a reduced pair.
    pub fn root_valuation(&self) -> (i64, i64) {
        (-self.slope.0, self.slope.1)
    }
}

/// Reduced fraction with positive denominator.
pub(crate) fn reduce(num: i64, den: i64) -> (i64, i64) {
    assert!(den != 0);
    let g = num.gcd(&den);
    let (n, d) = (num / g, den / g);
    if d < 0 {
        (-n, -d)
    } else {
        (n, d)
    }
}

/// Lower convex hull of the points, segments by increasing slope.
pub fn newton_polygon(points: &[(usize, i64)]) -> Result<Vec<NPSegment>> {
    let mut pts: Vec<(usize, i64)> = points.to_vec();
    pts.sort();
    pts.dedup_by(|a, b| {
        if a.0 == b.0 {
            b.1 = b.1.min(a.1);
            true
        } else {
            false
        }
    });
    if pts.len() < 2 {
        return Err(Error::DegeneratePolygon);
    }
    // monotone chain, lower hull; collinear points are dropped from the hull
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 as i128 - a.0 as i128) * (pt.1 as i128 - a.1 as i128)
                - (b.1 as i128 - a.1 as i128) * (pt.0 as i128 - a.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segs = hull
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let on: Vec<(usize, i64)> = pts
                .iter()
                .copied()
                .filter(|p| {
                    p.0 >= a.0
                        && p.0 <= b.0
                        && (p.1 - a.1) as i128 * (b.0 - a.0) as i128
                            == (b.1 - a.1) as i128 * (p.0 - a.0) as i128
                })
                .collect();
            NPSegment {
                slope: reduce(b.1 - a.1, (b.0 - a.0) as i64),
                length: b.0 - a.0,
                start: a,
                end: b,
                points: on,
            }
        })
        .collect();
    Ok(segs)
}
