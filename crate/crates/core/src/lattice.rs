//! Exact lattice geometry: the simplex family, cone membership, fundamental
//! parallelepiped enumeration and decomposition, Hilbert bases.
//!
//! Points live in `Z^{1+d}` with coordinate 0 as the *height* of the cone
//! embedding: a vertex `v` of a simplex in `Z^d` becomes the ray generator
//! `(1, v)`.  The half-open parallelepiped spanned by the ray generators tiles
//! the cone, so every cone lattice point splits uniquely into a parallelepiped
//! point plus a nonnegative integer combination of rays.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg;
use crate::{Error, Result};

/// A point of the ambient lattice. Coordinate 0 is the height.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LatticePoint {
    coords: Vec<BigInt>,
}

impl LatticePoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticePoint { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticePoint {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        LatticePoint {
            coords: vec![BigInt::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn height(&self) -> &BigInt {
        &self.coords[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn assert_same_dim(&self, other: &Self) {
        assert_eq!(
            self.dim(),
            other.dim(),
            "mixed-dimension lattice arithmetic is rejected"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_dim(other);
        LatticePoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_dim(other);
        LatticePoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        LatticePoint {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coords.iter().map(bigint_json).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn bigint_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(n) => serde_json::Value::from(n),
        None => serde_json::Value::from(v.to_string()),
    }
}

/// A lattice simplex: `d+1` affinely independent vertices in `Z^d`, carried
/// together with the integer matrix whose columns are the embedded rays.
#[derive(Clone, Debug)]
pub struct LatticeSimplex {
    vertices: Vec<LatticePoint>,
    ray_matrix: Vec<Vec<BigInt>>,
    det: BigInt,
    /// `ray_matrix * adj = det * identity`; used for exact barycentric solves.
    adj: Vec<Vec<BigInt>>,
}

/// Result of splitting a cone point into its parallelepiped part and ray part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipDecomposition {
    pub pip_point: LatticePoint,
    pub ray_multiplicities: Vec<BigInt>,
}

/// The minimal additive generating set of the cone semigroup: the ray
/// generators plus the irreducible parallelepiped points.
#[derive(Clone, Debug)]
pub struct HilbertBasis {
    pub ray_generators: Vec<LatticePoint>,
    pub pip_generators: Vec<LatticePoint>,
}

impl LatticeSimplex {
    /// Builds a simplex from `d+1` vertices in `Z^d`. Fails if the vertices
    /// are affinely dependent (singular ray matrix).
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::InvalidParameter("simplex needs vertices".into()));
        }
        let d = n - 1;
        for v in &vertices {
            if v.dim() != d {
                return Err(Error::InvalidParameter(format!(
                    "expected {n} vertices in Z^{d}, found one of dimension {}",
                    v.dim()
                )));
            }
        }
        let mut ray_matrix = vec![vec![BigInt::zero(); n]; n];
        for (i, v) in vertices.iter().enumerate() {
            ray_matrix[0][i] = BigInt::one();
            for j in 0..d {
                ray_matrix[j + 1][i] = v.coords()[j].clone();
            }
        }
        let det = linalg::det(&ray_matrix);
        if det.is_zero() {
            return Err(Error::InvalidParameter(
                "vertices are affinely dependent".into(),
            ));
        }
        let adj = linalg::adjugate(&ray_matrix);
        Ok(LatticeSimplex {
            vertices,
            ray_matrix,
            det,
            adj,
        })
    }

    /// Spatial dimension `d`.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Dimension `1 + d` of the cone embedding.
    pub fn ambient_dim(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn ray_matrix(&self) -> &[Vec<BigInt>] {
        &self.ray_matrix
    }

    /// The `i`-th primitive ray generator `(1, v_i)`.
    pub fn ray(&self, i: usize) -> LatticePoint {
        LatticePoint::new((0..self.ambient_dim()).map(|j| self.ray_matrix[j][i].clone()).collect())
    }

    pub fn rays(&self) -> Vec<LatticePoint> {
        (0..self.ambient_dim()).map(|i| self.ray(i)).collect()
    }

    /// `|det|` of the ray matrix; equals the parallelepiped lattice point count.
    pub fn normalized_volume(&self) -> BigInt {
        self.det.abs()
    }

    /// Exact barycentric coordinates of `w` with respect to the rays.
    pub fn barycentric(&self, w: &LatticePoint) -> Result<Vec<BigRational>> {
        let s = self.scaled_coordinates(w)?;
        let d = BigRational::from(self.normalized_volume());
        Ok(s.into_iter().map(|x| BigRational::from(x) / &d).collect())
    }

    /// `normalized_volume * barycentric(w)`, still integral.
    fn scaled_coordinates(&self, w: &LatticePoint) -> Result<Vec<BigInt>> {
        if w.dim() != self.ambient_dim() {
            return Err(Error::Mismatch(format!(
                "point of dimension {} against simplex cone of dimension {}",
                w.dim(),
                self.ambient_dim()
            )));
        }
        let mut s = linalg::mat_vec(&self.adj, w.coords());
        if self.det.is_negative() {
            for x in &mut s {
                *x = -std::mem::take(x);
            }
        }
        Ok(s)
    }

    /// Whether `w` lies in the closed cone spanned by the rays.
    pub fn contains_in_cone(&self, w: &LatticePoint) -> bool {
        match self.scaled_coordinates(w) {
            Ok(s) => s.iter().all(|x| !x.is_negative()),
            Err(_) => false,
        }
    }

    /// Whether `w` lies in the half-open fundamental parallelepiped.
    pub fn contains_in_pip(&self, w: &LatticePoint) -> bool {
        let vol = self.normalized_volume();
        match self.scaled_coordinates(w) {
            Ok(s) => s.iter().all(|x| !x.is_negative() && *x < vol),
            Err(_) => false,
        }
    }

    /// Splits a cone point into its parallelepiped point and the ray
    /// multiplicities, exactly: `w = pip_point + sum(n_i * ray_i)`.
    pub fn decompose(&self, w: &LatticePoint) -> Result<PipDecomposition> {
        let s = self.scaled_coordinates(w)?;
        let vol = self.normalized_volume();
        if let Some((i, x)) = s.iter().enumerate().find(|(_, x)| x.is_negative()) {
            return Err(Error::NotInCone {
                coordinate: i,
                detail: format!("barycentric coordinate {i} is {x}/{vol} < 0 for {w}"),
            });
        }
        let n: Vec<BigInt> = s
            .iter()
            .map(|x| num_integer::Integer::div_floor(x, &vol))
            .collect();
        let mut pip = w.clone();
        for (i, k) in n.iter().enumerate() {
            if !k.is_zero() {
                pip = pip.sub(&self.ray(i).scaled(k));
            }
        }
        debug_assert!(self.contains_in_pip(&pip));
        Ok(PipDecomposition {
            pip_point: pip,
            ray_multiplicities: n,
        })
    }

    /// All lattice points of the fundamental parallelepiped, sorted by height
    /// and then lexicographically. The count always equals the normalized
    /// volume.
    ///
    /// Scans the integer bounding box of the parallelepiped with an exact
    /// membership test; fine at desk scale (`delta2(m)` for `m <= 6`).
    pub fn enumerate_pip(&self) -> Vec<LatticePoint> {
        let n = self.ambient_dim();
        let m64: Vec<Vec<i64>> = self
            .ray_matrix
            .iter()
            .map(|row| row.iter().map(|x| x.to_i64().expect("ray matrix exceeds i64")).collect())
            .collect();
        let adj64: Vec<Vec<i128>> = self
            .adj
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let v = x.to_i128().expect("adjugate exceeds i128");
                        if self.det.is_negative() { -v } else { v }
                    })
                    .collect()
            })
            .collect();
        let vol = self.normalized_volume().to_i128().expect("volume exceeds i128");

        // Coordinatewise min/max over all corner combinations of the
        // parallelepiped: per coordinate, the negative and positive column
        // entries sum independently.
        let mut lo = vec![0i64; n];
        let mut hi = vec![0i64; n];
        for j in 0..n {
            for i in 0..n {
                let e = m64[j][i];
                if e < 0 {
                    lo[j] += e;
                } else {
                    hi[j] += e;
                }
            }
        }

        let mut points = Vec::new();
        let mut w: Vec<i64> = lo.clone();
        'scan: loop {
            let mut inside = true;
            for row in &adj64 {
                let s: i128 = row.iter().zip(&w).map(|(a, &b)| a * b as i128).sum();
                if s < 0 || s >= vol {
                    inside = false;
                    break;
                }
            }
            if inside {
                points.push(LatticePoint::from_i64(&w));
            }
            // Odometer increment over the box.
            for j in (0..n).rev() {
                if w[j] < hi[j] {
                    w[j] += 1;
                    continue 'scan;
                }
                w[j] = lo[j];
            }
            break;
        }
        points.sort();
        debug_assert_eq!(BigInt::from(points.len()), self.normalized_volume());
        points
    }

    /// The Hilbert basis of the cone semigroup: ray generators plus the
    /// parallelepiped points not expressible as a sum of two nonzero cone
    /// points. Computed by dynamic programming over heights; any
    /// non-ray generator must lie in the parallelepiped, so heights are capped
    /// by the maximal parallelepiped height.
    pub fn hilbert_basis(&self) -> HilbertBasis {
        let pip = self.enumerate_pip();
        let max_h = pip
            .iter()
            .map(|p| p.height().to_i64().expect("height exceeds i64"))
            .max()
            .unwrap_or(0);

        // levels[h] = all cone lattice points of height h, for 1 <= h <= max_h.
        let mut levels: Vec<HashSet<LatticePoint>> = vec![HashSet::new(); (max_h + 1) as usize];
        let rays = self.rays();
        for p in &pip {
            let hp = p.height().to_i64().unwrap();
            let budget = max_h - hp;
            let mut stack = vec![(p.clone(), 0usize, budget)];
            while let Some((point, ray_idx, left)) = stack.pop() {
                let h = point.height().to_i64().unwrap();
                if h >= 1 {
                    levels[h as usize].insert(point.clone());
                }
                if left == 0 || ray_idx == rays.len() {
                    continue;
                }
                // Branch: skip this ray, or add one more copy of it.
                stack.push((point.clone(), ray_idx + 1, left));
                stack.push((point.add(&rays[ray_idx]), ray_idx, left - 1));
            }
        }

        let mut pip_generators = Vec::new();
        for p in &pip {
            if p.is_zero() {
                continue;
            }
            let hp = p.height().to_i64().unwrap();
            let mut reducible = false;
            'outer: for g in 1..hp {
                let rest = (hp - g) as usize;
                for q in &levels[g as usize] {
                    let r = p.sub(q);
                    if levels[rest].contains(&r) {
                        reducible = true;
                        break 'outer;
                    }
                }
            }
            if !reducible {
                pip_generators.push(p.clone());
            }
        }
        HilbertBasis {
            ray_generators: rays,
            pip_generators,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            "normalized_volume": bigint_json(&self.normalized_volume()),
        })
    }
}

/// The `(m+1)`-simplex in `Z^{m+1}` with vertices `e_1, ..., e_{m+1}` and
/// `(-2, ..., -2, -2m-1)`.
pub fn delta2(m: u32) -> Result<LatticeSimplex> {
    if m < 1 {
        return Err(Error::InvalidParameter("delta2 requires m >= 1".into()));
    }
    let d = (m + 1) as usize;
    let mut vertices = Vec::with_capacity(d + 1);
    for i in 0..d {
        let mut coords = vec![0i64; d];
        coords[i] = 1;
        vertices.push(LatticePoint::from_i64(&coords));
    }
    let mut last = vec![-2i64; d];
    last[d - 1] = -(2 * m as i64) - 1;
    vertices.push(LatticePoint::from_i64(&last));
    LatticeSimplex::new(vertices)
}

/// The unimodular simplex in `Z^d` with vertices `e_1, ..., e_d` and the
/// origin; its parallelepiped contains only the origin.
pub fn unit_simplex(d: usize) -> Result<LatticeSimplex> {
    if d == 0 {
        return Err(Error::InvalidParameter("unit simplex needs d >= 1".into()));
    }
    let mut vertices = Vec::with_capacity(d + 1);
    for i in 0..d {
        let mut coords = vec![0i64; d];
        coords[i] = 1;
        vertices.push(LatticePoint::from_i64(&coords));
    }
    vertices.push(LatticePoint::zero(d));
    LatticeSimplex::new(vertices)
}

/// The `b`-th lattice point of the fundamental parallelepiped of `delta2(m)`,
/// for `0 <= b <= 4m+1`.
///
/// Coordinate convention: with `q = floor(b / (2m+1))` and `h = floor(b / 2)`,
/// the point is `(b - m*q - h, -q, ..., -q, -h)`: the height, then `m`
/// repeated coordinates carrying `-q`, then a single final coordinate `-h`.
/// This is the unique block split for which the enumeration agrees with
/// [`LatticeSimplex::enumerate_pip`] on `delta2(m)` (checked in tests for
/// `m <= 5`).
pub fn zb_point(m: u32, b: i64) -> Result<LatticePoint> {
    if m < 1 {
        return Err(Error::InvalidParameter("zb_point requires m >= 1".into()));
    }
    let top = 4 * m as i64 + 1;
    if !(0..=top).contains(&b) {
        return Err(Error::Range(format!(
            "index {b} outside [0, {top}] for m = {m}"
        )));
    }
    let q = b / (2 * m as i64 + 1);
    let h = b / 2;
    let mut coords = Vec::with_capacity(m as usize + 2);
    coords.push(b - m as i64 * q - h);
    for _ in 0..m {
        coords.push(-q);
    }
    coords.push(-h);
    Ok(LatticePoint::from_i64(&coords))
}
