use serde::Serialize;

use crate::error::{Error, Result};

/// Finite point cloud with a boundary distance and a positive weight `M` at
/// every point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteField {
    pub points: Vec<Vec<f64>>,
    pub dist: Vec<f64>,
    pub m: Vec<f64>,
}

impl DiscreteField {
    pub fn new(points: Vec<Vec<f64>>, dist: Vec<f64>, m: Vec<f64>) -> Result<Self> {
        if points.is_empty() || points.len() != dist.len() || points.len() != m.len() {
            return Err(Error::Invalid("points, dist and M must be non-empty and of equal length".into()));
        }
        let dim = points[0].len();
        if points.iter().any(|p| p.len() != dim || p.iter().any(|x| !x.is_finite())) {
            return Err(Error::Invalid("points must share one dimension and be finite".into()));
        }
        if dist.iter().chain(&m).any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(Error::Range("dist and M must be finite and positive".into()));
        }
        Ok(DiscreteField { points, dist, m })
    }

    /// Square grid of spacing `2/(per_axis - 1)` restricted to the open unit
    /// disk, `dist = 1 − |x|`, weights from `m`.
    pub fn unit_disk(per_axis: usize, m: impl Fn(&[f64]) -> f64) -> Result<Self> {
        if per_axis < 3 {
            return Err(Error::Range("need at least 3 points per axis".into()));
        }
        let step = 2.0 / (per_axis - 1) as f64;
        let (mut pts, mut dist, mut ms) = (Vec::new(), Vec::new(), Vec::new());
        for i in 0..per_axis {
            for j in 0..per_axis {
                let x = vec![-1.0 + i as f64 * step, -1.0 + j as f64 * step];
                let r = x[0].hypot(x[1]);
                if r < 1.0 {
                    ms.push(m(&x));
                    dist.push(1.0 - r);
                    pts.push(x);
                }
            }
        }
        Self::new(pts, dist, ms)
    }

    /// `amplitude / (1 + |x − centre|² / width²)` on [`DiscreteField::unit_disk`].
    pub fn single_peak(per_axis: usize, amplitude: f64, width: f64, centre: [f64; 2]) -> Result<Self> {
        if !(amplitude > 0.0 && width > 0.0) {
            return Err(Error::Range("amplitude and width must be positive".into()));
        }
        Self::unit_disk(per_axis, |x| {
            let d2 = (x[0] - centre[0]).powi(2) + (x[1] - centre[1]).powi(2);
            amplitude / (1.0 + d2 / (width * width))
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.points[i].iter().zip(&self.points[j]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }
}

/// The three properties at a candidate point `x` relative to the start `y₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DoublingChecks {
    /// `M(x) ≥ M(y₀)`.
    pub dominates_start: bool,
    /// `M(x) > 2k / dist(x)`.
    pub large: bool,
    /// `M(z) ≤ 2 M(x)` for every `z` with `|z − x| ≤ k / M(x)`.
    pub locally_doubling: bool,
}

impl DoublingChecks {
    pub fn all(&self) -> bool {
        self.dominates_start && self.large && self.locally_doubling
    }
}

/// Evaluate (a)–(c) at `x` directly from the field.
pub fn check_point(field: &DiscreteField, k: f64, start: usize, x: usize) -> DoublingChecks {
    let mx = field.m[x];
    let radius = k / mx;
    DoublingChecks {
        dominates_start: mx >= field.m[start],
        large: mx > 2.0 * k / field.dist[x],
        locally_doubling: (0..field.len()).all(|z| field.distance(z, x) > radius || field.m[z] <= 2.0 * mx),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum DoublingOutcome {
    Found {
        index: usize,
        point: Vec<f64>,
        m: f64,
        dist: f64,
        start: usize,
        /// Visited indices, starting at `start`.
        path: Vec<usize>,
        checks: DoublingChecks,
    },
    /// No point has `M > 2k/dist`; `slack[i] = 2k/dist(i) − M(i) ≥ 0`.
    None { slack: Vec<f64>, min_slack: f64 },
    /// A violator of (c) fails (b), which only happens when `dist` is not
    /// 1-Lipschitz on the point set.
    Stalled { index: usize, violator: usize, path: Vec<usize> },
}

/// Discrete doubling search. Starts at the point maximising `M · dist` among
/// those with `M > 2k/dist` and jumps to the largest violator of (c) until
/// none is left. Each jump at least doubles `M`, so the number of jumps is at
/// most `log₂(max M / min M)`.
pub fn doubling_point(field: &DiscreteField, k: f64) -> Result<DoublingOutcome> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Range("k must be positive".into()));
    }
    let n = field.len();
    let start = (0..n)
        .filter(|&i| field.m[i] > 2.0 * k / field.dist[i])
        .max_by(|&a, &b| (field.m[a] * field.dist[a]).total_cmp(&(field.m[b] * field.dist[b])).then(b.cmp(&a)));
    let Some(start) = start else {
        let slack: Vec<f64> = (0..n).map(|i| 2.0 * k / field.dist[i] - field.m[i]).collect();
        let min_slack = slack.iter().copied().fold(f64::INFINITY, f64::min);
        return Ok(DoublingOutcome::None { slack, min_slack });
    };
    let mut x = start;
    let mut path = vec![start];
    loop {
        let mx = field.m[x];
        let radius = k / mx;
        let violator = (0..n)
            .filter(|&z| field.m[z] > 2.0 * mx && field.distance(z, x) <= radius)
            .max_by(|&a, &b| field.m[a].total_cmp(&field.m[b]).then(b.cmp(&a)));
        match violator {
            None => {
                return Ok(DoublingOutcome::Found {
                    index: x,
                    point: field.points[x].clone(),
                    m: mx,
                    dist: field.dist[x],
                    start,
                    path,
                    checks: check_point(field, k, start, x),
                })
            }
            Some(z) if field.m[z] <= 2.0 * k / field.dist[z] => {
                return Ok(DoublingOutcome::Stalled { index: x, violator: z, path });
            }
            Some(z) => {
                x = z;
                path.push(z);
            }
        }
    }
}
