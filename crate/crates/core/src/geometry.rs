//! Point sets in axis-aligned boxes.

use crate::error::{Error, Result};
use crate::io::format_g17;
use crate::kernels::distance;

/// Closed box `[a_1, b_1] x ... x [a_d, b_d]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl DomainBox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        if lower.iter().zip(&upper).any(|(a, b)| !(a < b)) {
            return Err(Error::Domain(format!(
                "box bounds must satisfy a < b in every coordinate: {lower:?} vs {upper:?}"
            )));
        }
        Ok(Self { lower, upper })
    }

    pub fn unit(dim: usize) -> Self {
        Self {
            lower: vec![0.0; dim],
            upper: vec![1.0; dim],
        }
    }

    pub fn interval(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![a], vec![b])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(x, (a, b))| *a <= *x && *x <= *b)
    }

    pub fn distance_to_boundary(&self, p: &[f64]) -> f64 {
        p.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(x, (a, b))| (x - a).min(b - x))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn diameter(&self) -> f64 {
        distance(&self.lower, &self.upper)
    }
}

/// Pairwise-distinct points inside a [`DomainBox`], with the separation distance cached.
///
/// Point sets are immutable; [`PointSet::shift`] returns a new set.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
    domain: DomainBox,
    separation: Option<f64>,
}

impl PointSet {
    pub fn new(points: Vec<Vec<f64>>, domain: DomainBox) -> Result<Self> {
        let dim = domain.dim();
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::Domain(format!("non-finite coordinate in {p:?}")));
            }
            if !domain.contains(p) {
                return Err(Error::Domain(format!("point {p:?} lies outside the domain")));
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(dim, coords, domain)
    }

    fn from_flat(dim: usize, coords: Vec<f64>, domain: DomainBox) -> Result<Self> {
        let mut set = Self {
            dim,
            coords,
            domain,
            separation: None,
        };
        set.separation = set.scan_separation()?;
        Ok(set)
    }

    /// Half the minimum pairwise distance by exact O(n^2) scan.
    fn scan_separation(&self) -> Result<Option<f64>> {
        let n = self.len();
        if n < 2 {
            return Ok(None);
        }
        let mut min = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                let d = distance(self.point(i), self.point(j));
                if d == 0.0 {
                    return Err(Error::DuplicatePoints(i, j));
                }
                min = min.min(d);
            }
        }
        Ok(Some(0.5 * min))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn domain(&self) -> &DomainBox {
        &self.domain
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn to_vecs(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }

    /// Coordinates of a one-dimensional set.
    pub fn coords_1d(&self) -> Result<&[f64]> {
        if self.dim != 1 {
            return Err(Error::Unsupported(format!(
                "expected a one-dimensional point set, got dim = {}",
                self.dim
            )));
        }
        Ok(&self.coords)
    }

    /// Separation distance `q_X = 1/2 min_{i != j} |x_i - x_j|`.
    pub fn separation_distance(&self) -> Result<f64> {
        self.separation.ok_or_else(|| {
            Error::Domain(format!(
                "separation distance needs at least two points, got {}",
                self.len()
            ))
        })
    }

    /// Minimum distance of any point to the boundary of the domain box.
    pub fn boundary_distance(&self) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::Domain("boundary distance of an empty set".into()));
        }
        Ok(self
            .iter()
            .map(|p| self.domain.distance_to_boundary(p))
            .fold(f64::INFINITY, f64::min))
    }

    /// Largest pairwise distance; zero for a single point.
    pub fn diameter(&self) -> f64 {
        let n = self.len();
        let mut max: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                max = max.max(distance(self.point(i), self.point(j)));
            }
        }
        max
    }

    /// `X + b`. The domain grows to the union of the old box and its translate.
    pub fn shift(&self, b: &[f64]) -> Result<PointSet> {
        if b.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: b.len(),
            });
        }
        let coords = self
            .coords
            .chunks_exact(self.dim)
            .flat_map(|p| p.iter().zip(b).map(|(x, s)| x + s))
            .collect();
        let lower = self
            .domain
            .lower
            .iter()
            .zip(b)
            .map(|(a, s)| a.min(a + s))
            .collect();
        let upper = self
            .domain
            .upper
            .iter()
            .zip(b)
            .map(|(a, s)| a.max(a + s))
            .collect();
        Ok(Self {
            dim: self.dim,
            coords,
            domain: DomainBox { lower, upper },
            // distances are computed from differences, so keep the exact cached value
            separation: self.separation,
        })
    }

    /// One point per line, comma separated, preceded by a `#` header carrying the box.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# dim={}", self.dim);
        for (a, b) in self.domain.lower.iter().zip(&self.domain.upper) {
            out.push_str(&format!(" [{},{}]", format_g17(*a), format_g17(*b)));
        }
        out.push('\n');
        for p in self.iter() {
            let line: Vec<String> = p.iter().map(|x| format_g17(*x)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<PointSet> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty point file".into()))?;
        let header = header
            .strip_prefix('#')
            .ok_or_else(|| Error::Parse("missing '#' header line".into()))?;
        let mut tokens = header.split_whitespace();
        let dim: usize = tokens
            .next()
            .and_then(|t| t.strip_prefix("dim="))
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("header must start with dim=<d>".into()))?;
        let mut lower = Vec::with_capacity(dim);
        let mut upper = Vec::with_capacity(dim);
        for t in tokens {
            let inner = t
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad interval '{t}'")))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad interval '{t}'")))?;
            lower.push(parse_f64(a)?);
            upper.push(parse_f64(b)?);
        }
        if lower.len() != dim {
            return Err(Error::Parse(format!(
                "header declares dim={dim} but lists {} intervals",
                lower.len()
            )));
        }
        let domain = DomainBox::new(lower, upper)?;
        let points = lines
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split(',').map(parse_f64).collect::<Result<Vec<f64>>>())
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(points, domain)
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not a number: '{s}'")))
}

const HALTON_BASES: [u64; 3] = [2, 3, 5];

/// Van der Corput radical inverse of `index` in `base`.
pub fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut factor = inv;
    let mut value = 0.0;
    while index > 0 {
        value += factor * (index % base) as f64;
        index /= base;
        factor *= inv;
    }
    value
}

/// Halton points with indices `skip + 1 ..= skip + n` in bases (2, 3, 5), inside the unit box.
pub fn halton(n: usize, dim: usize, skip: usize) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::Domain("need at least one Halton point".into()));
    }
    if dim == 0 || dim > HALTON_BASES.len() {
        return Err(Error::Unsupported(format!(
            "Halton generator supports dim 1..=3, got {dim}"
        )));
    }
    let mut coords = Vec::with_capacity(n * dim);
    for i in 0..n {
        let index = (skip + i + 1) as u64;
        coords.extend(HALTON_BASES[..dim].iter().map(|&b| radical_inverse(index, b)));
    }
    PointSet::from_flat(dim, coords, DomainBox::unit(dim))
}

/// `n` equispaced points in `[a, b]`, either including both endpoints or strictly inside.
pub fn equispaced(n: usize, a: f64, b: f64, include_endpoints: bool) -> Result<PointSet> {
    if n < 2 {
        return Err(Error::Domain(format!("need at least two points, got {n}")));
    }
    let domain = DomainBox::interval(a, b)?;
    let coords = if include_endpoints {
        let step = (b - a) / (n - 1) as f64;
        (0..n)
            .map(|i| if i == n - 1 { b } else { a + i as f64 * step })
            .collect()
    } else {
        let step = (b - a) / (n + 1) as f64;
        (0..n).map(|i| a + (i + 1) as f64 * step).collect()
    };
    PointSet::from_flat(1, coords, domain)
}
