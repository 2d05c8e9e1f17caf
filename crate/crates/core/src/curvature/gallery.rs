use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use super::{CurvatureError, TOLERANCE};

/// A spherical triangle `v p_k p_{k+1}` of a fan around `v`. Either the third
/// side or the angle at `v` is given.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FanTriangle {
    /// Length of `v p_k`.
    pub a: f64,
    /// Length of `v p_{k+1}`, the edge shared with the next triangle.
    pub b: f64,
    /// Length of `p_k p_{k+1}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    /// Angle at `v`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
}

impl FanTriangle {
    pub fn sides(a: f64, b: f64, c: f64) -> Self {
        FanTriangle { a, b, c: Some(c), angle: None }
    }

    pub fn sas(a: f64, angle: f64, b: f64) -> Self {
        FanTriangle { a, b, c: None, angle: Some(angle) }
    }
}

/// A point of the fan: weights on `(v, p_k, p_{k+1})` of triangle `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FanPoint {
    pub triangle: usize,
    pub weights: [f64; 3],
}

#[derive(Clone, Copy, Debug)]
struct Solved {
    a: f64,
    b: f64,
    c: f64,
    angle: f64,
}

fn law_of_cosines(a: f64, b: f64, angle: f64) -> f64 {
    (a.cos() * b.cos() + a.sin() * b.sin() * angle.cos()).clamp(-1.0, 1.0).acos()
}

fn in_range(x: f64) -> bool {
    x > 0.0 && x < PI
}

fn solve(index: usize, t: &FanTriangle) -> Result<Solved, CurvatureError> {
    let bad = |reason: &str| CurvatureError::InvalidTriangle { index, reason: reason.to_string() };
    if !in_range(t.a) || !in_range(t.b) {
        return Err(bad("sides through v must lie in (0, pi)"));
    }
    let (c, angle) = match (t.c, t.angle) {
        (Some(c), None) => {
            if !in_range(c) {
                return Err(bad("third side must lie in (0, pi)"));
            }
            if c >= t.a + t.b || t.a >= t.b + c || t.b >= t.a + c || t.a + t.b + c >= 2.0 * PI {
                return Err(bad("violates the spherical triangle inequality"));
            }
            let cos = (c.cos() - t.a.cos() * t.b.cos()) / (t.a.sin() * t.b.sin());
            (c, cos.clamp(-1.0, 1.0).acos())
        }
        (None, Some(angle)) => {
            if !in_range(angle) {
                return Err(bad("angle at v must lie in (0, pi)"));
            }
            (law_of_cosines(t.a, t.b, angle), angle)
        }
        _ => return Err(bad("give exactly one of the third side and the angle")),
    };
    Ok(Solved { a: t.a, b: t.b, c, angle })
}

fn polar(r: f64, phi: f64) -> Vector3<f64> {
    Vector3::new(r.sin() * phi.cos(), r.sin() * phi.sin(), r.cos())
}

#[derive(Clone, Debug, Serialize)]
pub struct DevelopmentReport {
    /// Image of `v`, exactly the north pole.
    pub apex: [f64; 3],
    /// Images of `p_0, ..., p_n`.
    pub rim: Vec<[f64; 3]>,
    pub angles: Vec<f64>,
    pub total_angle: f64,
    /// Whether the images of distinct triangles meet only along shared
    /// edges, which for a fan holds exactly when the total angle is below
    /// `2 pi`.
    pub injective: bool,
    /// Per triangle, the largest error between an image side and its length.
    pub triangle_residuals: Vec<f64>,
    /// Per pair of consecutive triangles, the error in `|p_k p_{k+2}|`
    /// against the law of cosines with the summed angle.
    pub cross_residuals: Vec<f64>,
    pub gamma: Vec<[f64; 3]>,
    /// Per segment of the polyline, intrinsic length minus image length.
    pub segment_residuals: Vec<f64>,
    pub gamma_length: f64,
    /// Arc length along the image of the polyline, continued along the great
    /// circle of its last segment, at which it leaves the image of the fan.
    pub exit_parameter: Option<f64>,
    pub max_residual: f64,
}

impl DevelopmentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// A fan developed onto the unit sphere with `v` at the north pole and
/// `p_0` on the meridian of longitude `0`.
#[derive(Clone, Debug)]
pub struct DevelopedFan {
    triangles: Vec<Solved>,
    /// Longitude of `p_k`.
    offsets: Vec<f64>,
}

impl DevelopedFan {
    pub fn new(fan: &[FanTriangle]) -> Result<Self, CurvatureError> {
        if fan.is_empty() {
            return Err(CurvatureError::InvalidFan("no triangles".into()));
        }
        let triangles: Vec<Solved> = fan.iter().enumerate().map(|(i, t)| solve(i, t)).collect::<Result<_, _>>()?;
        for (k, w) in triangles.windows(2).enumerate() {
            if (w[0].b - w[1].a).abs() > TOLERANCE {
                return Err(CurvatureError::InvalidFan(format!(
                    "triangles {k} and {} disagree on their shared edge: {} vs {}",
                    k + 1,
                    w[0].b,
                    w[1].a
                )));
            }
        }
        let mut offsets = vec![0.0];
        for t in &triangles {
            offsets.push(offsets.last().unwrap() + t.angle);
        }
        Ok(DevelopedFan { triangles, offsets })
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    fn corners(&self, k: usize) -> [Vector3<f64>; 3] {
        let t = &self.triangles[k];
        [Vector3::z(), polar(t.a, self.offsets[k]), polar(t.b, self.offsets[k + 1])]
    }

    /// Polar coordinates about `v` inside triangle `k`: distance from `v`
    /// and angle from the edge `v p_k`.
    fn intrinsic(&self, p: &FanPoint) -> Result<(f64, f64), CurvatureError> {
        let t = self
            .triangles
            .get(p.triangle)
            .ok_or_else(|| CurvatureError::InvalidGamma(format!("triangle {} out of range", p.triangle)))?;
        let w = p.weights;
        if w.iter().any(|&x| x.is_nan() || x < 0.0 || !x.is_finite()) || w.iter().sum::<f64>() <= 0.0 {
            return Err(CurvatureError::InvalidGamma(format!("bad weights {w:?}")));
        }
        // The standard model of the triangle: v at the pole, p_k at
        // longitude 0.
        let x = (Vector3::z() * w[0] + polar(t.a, 0.0) * w[1] + polar(t.b, t.angle) * w[2]).normalize();
        let r = x.z.clamp(-1.0, 1.0).acos();
        let phi = if r < 1e-15 { 0.0 } else { x.y.atan2(x.x) };
        Ok((r, phi))
    }

    /// The image of a point.
    pub fn image(&self, p: &FanPoint) -> Result<Vector3<f64>, CurvatureError> {
        let (r, phi) = self.intrinsic(p)?;
        Ok(polar(r, phi + self.offsets[p.triangle]))
    }

    fn contains(&self, x: &Vector3<f64>) -> bool {
        (0..self.len()).any(|k| {
            let [v, p, q] = self.corners(k);
            Matrix3::from_columns(&[v, p, q]).lu().solve(x).is_some_and(|c| c.iter().all(|&y| y >= -1e-12))
        })
    }

    /// Rewrites `p` into `triangle` when it lies on the edge shared with it.
    fn move_to(&self, p: &FanPoint, triangle: usize) -> Option<FanPoint> {
        let w = p.weights;
        let tiny = |x: f64| x <= 1e-12 * w.iter().sum::<f64>();
        if triangle == p.triangle {
            Some(*p)
        } else if triangle == p.triangle + 1 && tiny(w[1]) {
            Some(FanPoint { triangle, weights: [w[0], w[2], 0.0] })
        } else if triangle + 1 == p.triangle && tiny(w[2]) {
            Some(FanPoint { triangle, weights: [w[0], 0.0, w[1]] })
        } else {
            None
        }
    }

    /// Both ends of a segment in one triangle.
    fn common(&self, x: &FanPoint, y: &FanPoint) -> Option<(FanPoint, FanPoint)> {
        [x.triangle, y.triangle].into_iter().find_map(|k| Some((self.move_to(x, k)?, self.move_to(y, k)?)))
    }
}

fn distance(x: &Vector3<f64>, y: &Vector3<f64>) -> f64 {
    // atan2 keeps precision for nearly equal and nearly antipodal points.
    x.cross(y).norm().atan2(x.dot(y))
}

fn intrinsic_distance((r1, p1): (f64, f64), (r2, p2): (f64, f64)) -> f64 {
    law_of_cosines(r1, r2, p1 - p2)
}

/// Develops a fan of spherical triangles around a common vertex onto the
/// unit sphere and pushes a polyline through it.
///
/// Consecutive polyline points must lie in a common triangle; a point on the
/// edge shared by triangles `k` and `k + 1` may be given in either.
pub fn develop_gallery(fan: &[FanTriangle], gamma: &[FanPoint]) -> Result<DevelopmentReport, CurvatureError> {
    let dev = DevelopedFan::new(fan)?;
    let n = dev.len();

    let mut triangle_residuals = Vec::with_capacity(n);
    for k in 0..n {
        let t = dev.triangles[k];
        let [v, p, q] = dev.corners(k);
        let r = [distance(&v, &p) - t.a, distance(&v, &q) - t.b, distance(&p, &q) - t.c];
        triangle_residuals.push(r.iter().fold(0.0f64, |m, x| m.max(x.abs())));
    }
    let mut cross_residuals = Vec::new();
    for k in 0..n.saturating_sub(1) {
        let (s, t) = (dev.triangles[k], dev.triangles[k + 1]);
        let p = polar(s.a, dev.offsets[k]);
        let q = polar(t.b, dev.offsets[k + 2]);
        cross_residuals.push((distance(&p, &q) - law_of_cosines(s.a, t.b, s.angle + t.angle)).abs());
    }

    let mut images = Vec::with_capacity(gamma.len());
    for p in gamma {
        images.push(dev.image(p)?);
    }
    let mut segment_residuals = Vec::new();
    let mut lengths = Vec::new();
    for (i, w) in gamma.windows(2).enumerate() {
        let (x, y) = dev
            .common(&w[0], &w[1])
            .ok_or_else(|| CurvatureError::InvalidGamma(format!("points {i} and {} share no triangle", i + 1)))?;
        let intrinsic = intrinsic_distance(dev.intrinsic(&x)?, dev.intrinsic(&y)?);
        segment_residuals.push((intrinsic - distance(&images[i], &images[i + 1])).abs());
        lengths.push(intrinsic);
    }

    let exit_parameter = (!images.is_empty()).then(|| exit_parameter(&dev, &images, &lengths)).flatten();
    let total_angle = *dev.offsets.last().unwrap();
    let max_residual =
        triangle_residuals.iter().chain(&cross_residuals).chain(&segment_residuals).fold(0.0f64, |m, &x| m.max(x));
    let arr = |v: &Vector3<f64>| [v.x, v.y, v.z];
    Ok(DevelopmentReport {
        apex: [0.0, 0.0, 1.0],
        rim: (0..=n)
            .map(|k| {
                let r = if k < n { dev.triangles[k].a } else { dev.triangles[n - 1].b };
                arr(&polar(r, dev.offsets[k]))
            })
            .collect(),
        angles: dev.triangles.iter().map(|t| t.angle).collect(),
        total_angle,
        injective: total_angle < 2.0 * PI - TOLERANCE,
        triangle_residuals,
        cross_residuals,
        gamma: images.iter().map(arr).collect(),
        segment_residuals,
        gamma_length: lengths.iter().sum(),
        exit_parameter,
        max_residual,
    })
}

/// A great-circle arc `x cos s + d sin s` for `s` in `[0, len]`.
#[derive(Clone, Copy)]
struct Arc {
    x: Vector3<f64>,
    d: Vector3<f64>,
    len: f64,
}

impl Arc {
    fn at(&self, s: f64) -> Vector3<f64> {
        self.x * s.cos() + self.d * s.sin()
    }

    /// Parameters where the arc meets the great circle with normal `n`.
    fn crossings(&self, n: &Vector3<f64>) -> Vec<f64> {
        let (a, b) = (n.dot(&self.x), n.dot(&self.d));
        if a.abs() < 1e-15 && b.abs() < 1e-15 {
            return Vec::new();
        }
        let s0 = (-a).atan2(b).rem_euclid(PI);
        (0..3).map(|k| s0 + k as f64 * PI).filter(|&s| s <= self.len).collect()
    }
}

/// Membership in the image of the fan changes only where the path crosses
/// the great circle of some triangle side, so testing one point between
/// consecutive crossings locates the exit exactly.
fn exit_parameter(dev: &DevelopedFan, path: &[Vector3<f64>], lengths: &[f64]) -> Option<f64> {
    if !dev.contains(&path[0]) {
        return Some(0.0);
    }
    let mut arcs: Vec<(f64, Arc)> = Vec::new();
    let mut t0 = 0.0;
    for (k, &len) in lengths.iter().enumerate() {
        let (x, y) = (path[k], path[k + 1]);
        let perp = y - x * x.dot(&y);
        if len > 1e-12 && perp.norm() > 1e-12 {
            arcs.push((t0, Arc { x, d: perp.normalize(), len }));
        }
        t0 += len;
    }
    // Continue along the great circle of the last proper segment.
    if let Some(&(start, last)) = arcs.last() {
        let y = last.at(last.len);
        let d = last.x * -last.len.sin() + last.d * last.len.cos();
        arcs.push((start + last.len, Arc { x: y, d, len: 2.0 * PI }));
    }
    let normals: Vec<Vector3<f64>> = (0..dev.len())
        .flat_map(|k| {
            let [v, p, q] = dev.corners(k);
            [v.cross(&p), p.cross(&q), q.cross(&v)]
        })
        .collect();
    for (start, arc) in arcs {
        let mut cuts: Vec<f64> = normals.iter().flat_map(|n| arc.crossings(n)).collect();
        cuts.push(0.0);
        cuts.push(arc.len);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        for w in cuts.windows(2) {
            if !dev.contains(&arc.at(0.5 * (w[0] + w[1]))) {
                return Some(start + w[0]);
            }
        }
    }
    None
}
