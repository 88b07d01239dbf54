//! Finite staircases in `N^d`.
//!
//! A staircase is a finite downward-closed set of exponent vectors: whenever a
//! point belongs to the set, so does every componentwise-smaller point. The
//! complement of a staircase is the exponent set of a monomial ideal, so all
//! ideal-level reasoning in this crate happens through these point sets.
//!
//! Values are immutable once constructed and stored in canonical form
//! (ascending lexicographic order), which makes equality, hashing and the
//! one-line JSON serialization byte-exact.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ambient dimension accepted by constructors.
pub const MAX_DIM: usize = 8;

/// Binomial coefficient as an exact `u64` (desk scale; no overflow checks).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
    }
    acc as u64
}

/// A point of `N^d`, i.e. the exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<u32>);

impl LatticePoint {
    pub fn new(coords: Vec<u32>) -> Self {
        LatticePoint(coords)
    }

    pub fn origin(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn coord(&self, axis: usize) -> u32 {
        self.0[axis]
    }

    /// Coordinate sum (the total degree of the monomial).
    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    /// The point `self - e_axis`, or `None` when that leaves `N^d`.
    pub fn pred(&self, axis: usize) -> Option<LatticePoint> {
        if self.0[axis] == 0 {
            return None;
        }
        let mut c = self.0.clone();
        c[axis] -= 1;
        Some(LatticePoint(c))
    }

    /// Coordinates as `i64`, for arithmetic with directions and linear forms.
    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&c| c as i64).collect()
    }

    /// Builds a point from signed coordinates, `None` if any is negative.
    pub fn from_i64(coords: &[i64]) -> Option<LatticePoint> {
        let mut out = Vec::with_capacity(coords.len());
        for &c in coords {
            if c < 0 {
                return None;
            }
            out.push(c as u32);
        }
        Some(LatticePoint(out))
    }

    /// Removes the coordinate at `axis`, yielding a point of `N^{d-1}`.
    pub fn without_axis(&self, axis: usize) -> Vec<u32> {
        let mut base = self.0.clone();
        base.remove(axis);
        base
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite downward-closed subset of `N^d`, stored in canonical form.
///
/// Canonical form: pairwise-distinct points in ascending lexicographic order.
/// The serialized text `{"dim":d,"points":[[..],..]}` of a canonical value is
/// the byte-exact equality key used by golden tests.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawStaircase")]
pub struct Staircase {
    dim: usize,
    points: Vec<LatticePoint>,
}

#[derive(Deserialize)]
struct RawStaircase {
    dim: usize,
    points: Vec<LatticePoint>,
}

impl TryFrom<RawStaircase> for Staircase {
    type Error = Error;

    fn try_from(raw: RawStaircase) -> Result<Staircase> {
        Staircase::from_points(raw.dim, raw.points)
    }
}

impl Staircase {
    /// Builds a staircase from an already downward-closed point set.
    ///
    /// Points are sorted and deduplicated; a missing lower neighbor is
    /// rejected with a witness pair.
    pub fn from_points(dim: usize, mut points: Vec<LatticePoint>) -> Result<Staircase> {
        check_dim(dim)?;
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        points.sort();
        points.dedup();
        let e = Staircase { dim, points };
        e.check_closed()?;
        Ok(e)
    }

    /// Builds the downward closure of an arbitrary generating set.
    pub fn downward_closure(dim: usize, generators: Vec<LatticePoint>) -> Result<Staircase> {
        check_dim(dim)?;
        let mut set: BTreeSet<LatticePoint> = BTreeSet::new();
        for g in generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.dim(),
                });
            }
            insert_box(&mut set, &g);
        }
        Ok(Staircase {
            dim,
            points: set.into_iter().collect(),
        })
    }

    /// The empty staircase (complement of the unit ideal).
    pub fn empty(dim: usize) -> Staircase {
        Staircase {
            dim,
            points: Vec::new(),
        }
    }

    /// The regular staircase `R_m`: all points of coordinate sum `< m`.
    ///
    /// Its cardinality is `binomial(m-1+d, d)`; `R_0` is empty and `R_1` is
    /// the origin alone (a simple point).
    pub fn regular(dim: usize, m: u32) -> Staircase {
        assert!((1..=MAX_DIM).contains(&dim), "dimension out of range");
        let mut points = Vec::new();
        let mut cur = vec![0u32; dim];
        emit_below_sum(&mut points, &mut cur, 0, m as u64, 0);
        Staircase { dim, points }
    }

    /// Internal constructor for lists known to be canonical and closed.
    pub(crate) fn from_sorted_unchecked(dim: usize, points: Vec<LatticePoint>) -> Staircase {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        Staircase { dim, points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Cardinality of the point set.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn contains_point(&self, p: &LatticePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// Whether `other` is contained in `self` (as point sets).
    pub fn contains(&self, other: &Staircase) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(other.points.iter().all(|p| self.contains_point(p)))
    }

    /// Points of `other` missing from `self`, in canonical order.
    pub fn missing_from(&self, other: &Staircase) -> Result<Vec<LatticePoint>> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(other
            .points
            .iter()
            .filter(|p| !self.contains_point(p))
            .cloned()
            .collect())
    }

    /// Componentwise maximum over the staircase (all zeros when empty).
    pub fn max_coords(&self) -> Vec<u32> {
        let mut m = vec![0u32; self.dim];
        for p in &self.points {
            for (a, &c) in m.iter_mut().zip(p.coords()) {
                *a = (*a).max(c);
            }
        }
        m
    }

    /// The height function along `axis` (0-based): for each point of
    /// `N^{d-1}` the number of members of the staircase over it, so that
    /// membership is `p in E  <=>  p_axis < h(p without axis)`.
    pub fn height_function(&self, axis: usize) -> HeightFunction {
        assert!(axis < self.dim, "axis out of range");
        let mut support: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        for p in &self.points {
            *support.entry(p.without_axis(axis)).or_insert(0) += 1;
        }
        HeightFunction {
            dim: self.dim - 1,
            support,
        }
    }

    /// The slice `{ m in N^{d-1} : (index, m) in E }` along the first axis.
    ///
    /// Slices of a staircase are staircases and are nested decreasing in
    /// `index`. Requires `dim >= 2`.
    pub fn slice(&self, index: u32) -> Staircase {
        assert!(self.dim >= 2, "slice needs ambient dimension >= 2");
        let points: Vec<LatticePoint> = self
            .points
            .iter()
            .filter(|p| p.coord(0) == index)
            .map(|p| LatticePoint(p.coords()[1..].to_vec()))
            .collect();
        // first-coordinate-major lex order keeps the tails sorted
        Staircase::from_sorted_unchecked(self.dim - 1, points)
    }

    /// Canonical one-line JSON form, the byte-exact equality key.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("staircase serialization cannot fail")
    }

    /// Parses the canonical text form (tolerating non-canonical point order).
    pub fn parse(text: &str) -> Result<Staircase> {
        Ok(serde_json::from_str(text)?)
    }

    fn check_closed(&self) -> Result<()> {
        for p in &self.points {
            for axis in 0..self.dim {
                if let Some(q) = p.pred(axis) {
                    if !self.contains_point(&q) {
                        return Err(Error::NotDownwardClosed {
                            point: p.clone(),
                            missing: q,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Staircase(dim={}, #{})", self.dim, self.points.len())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

fn insert_box(set: &mut BTreeSet<LatticePoint>, corner: &LatticePoint) {
    let dim = corner.dim();
    let mut cur = vec![0u32; dim];
    loop {
        set.insert(LatticePoint(cur.clone()));
        // odometer over the box [0, corner]
        let mut axis = dim;
        while axis > 0 {
            axis -= 1;
            if cur[axis] < corner.coord(axis) {
                cur[axis] += 1;
                for c in cur.iter_mut().skip(axis + 1) {
                    *c = 0;
                }
                break;
            }
            if axis == 0 {
                return;
            }
        }
        if dim == 0 {
            return;
        }
    }
}

fn emit_below_sum(
    out: &mut Vec<LatticePoint>,
    cur: &mut Vec<u32>,
    axis: usize,
    bound: u64,
    used: u64,
) {
    if used >= bound {
        return;
    }
    if axis == cur.len() {
        out.push(LatticePoint(cur.clone()));
        return;
    }
    let room = bound - used; // values 0..room keep the strict inequality
    for v in 0..room {
        cur[axis] = v as u32;
        emit_below_sum(out, cur, axis + 1, bound, used + v);
    }
    cur[axis] = 0;
}

/// A height function on `N^{d-1}`: finitely supported, zero elsewhere.
///
/// A function is the height function of a staircase exactly when it never
/// increases along any coordinate step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeightFunction {
    dim: usize,
    support: BTreeMap<Vec<u32>, u32>,
}

impl HeightFunction {
    pub fn from_support(dim: usize, support: BTreeMap<Vec<u32>, u32>) -> HeightFunction {
        let mut support = support;
        support.retain(|_, v| *v > 0);
        HeightFunction { dim, support }
    }

    pub fn zero(dim: usize) -> HeightFunction {
        HeightFunction {
            dim,
            support: BTreeMap::new(),
        }
    }

    /// Base dimension `d - 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, base: &[u32]) -> u32 {
        self.support.get(base).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = (&Vec<u32>, u32)> {
        self.support.iter().map(|(k, &v)| (k, v))
    }

    /// Sum of all values; equals the cardinality of the defining staircase.
    pub fn total(&self) -> u64 {
        self.support.values().map(|&v| v as u64).sum()
    }

    /// Pointwise sum of height functions (same base dimension).
    pub fn sum(parts: &[&HeightFunction]) -> Result<HeightFunction> {
        let first = parts.first().ok_or(Error::EmptyInput("height sum"))?;
        let dim = first.dim;
        let mut support: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        for h in parts {
            if h.dim != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: h.dim,
                });
            }
            for (base, v) in &h.support {
                *support.entry(base.clone()).or_insert(0) += v;
            }
        }
        Ok(HeightFunction { dim, support })
    }

    /// Checks `h(a+b) <= h(a)`; by induction it suffices to compare each
    /// support point with its unit predecessors.
    pub fn is_monotone(&self) -> bool {
        self.violation().is_none()
    }

    fn violation(&self) -> Option<(Vec<u32>, Vec<u32>)> {
        for (base, &v) in &self.support {
            for axis in 0..self.dim {
                if base[axis] > 0 {
                    let mut below = base.clone();
                    below[axis] -= 1;
                    if self.value(&below) < v {
                        return Some((below, base.clone()));
                    }
                }
            }
        }
        None
    }

    /// Materializes the staircase with this height function along `axis`.
    pub fn to_staircase(&self, axis: usize) -> Result<Staircase> {
        assert!(axis <= self.dim, "axis out of range");
        if let Some((lower, upper)) = self.violation() {
            return Err(Error::NotMonotone { lower, upper });
        }
        let mut points = Vec::with_capacity(self.total() as usize);
        for (base, &h) in &self.support {
            for v in 0..h {
                let mut coords = base.clone();
                coords.insert(axis, v);
                points.push(LatticePoint(coords));
            }
        }
        points.sort();
        Ok(Staircase::from_sorted_unchecked(self.dim + 1, points))
    }
}

/// The shell `S_m`: points of coordinate sum exactly `m`, i.e.
/// `R_{m+1} - R_m`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Shell {
    pub dim: usize,
    pub degree: u32,
}

impl Shell {
    pub fn new(dim: usize, degree: u32) -> Shell {
        Shell { dim, degree }
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        p.dim() == self.dim && p.sum() == self.degree as u64
    }

    /// Cardinality: `binomial(m+d-1, d-1)`.
    pub fn len(&self) -> u64 {
        binomial(self.degree as u64 + self.dim as u64 - 1, self.dim as u64 - 1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Vec<LatticePoint> {
        let upper = Staircase::regular(self.dim, self.degree + 1);
        upper
            .points()
            .iter()
            .filter(|p| p.sum() == self.degree as u64)
            .cloned()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[u32]) -> LatticePoint {
        LatticePoint::new(coords.to_vec())
    }

    #[test]
    fn from_points_accepts_closed_sets() {
        let e = Staircase::from_points(2, vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e, Staircase::regular(2, 2));
    }

    #[test]
    fn downward_closure_of_box_corner() {
        let e = Staircase::downward_closure(2, vec![pt(&[1, 1])]).unwrap();
        assert_eq!(
            e.points(),
            &[pt(&[0, 0]), pt(&[0, 1]), pt(&[1, 0]), pt(&[1, 1])]
        );
    }

    #[test]
    fn missing_origin_is_rejected_with_witness() {
        let err = Staircase::from_points(2, vec![pt(&[1, 0])]).unwrap_err();
        match err {
            Error::NotDownwardClosed { point, missing } => {
                assert_eq!(point, pt(&[1, 0]));
                assert_eq!(missing, pt(&[0, 0]));
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let err = Staircase::from_points(2, vec![pt(&[0, 0, 0])]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn regular_staircase_small_cases() {
        let r22 = Staircase::regular(2, 2);
        assert_eq!(r22.points(), &[pt(&[0, 0]), pt(&[0, 1]), pt(&[1, 0])]);
        assert_eq!(Staircase::regular(3, 1).points(), &[pt(&[0, 0, 0])]);
        assert_eq!(Staircase::regular(3, 2).len() as u64, binomial(4, 3));
        assert!(Staircase::regular(4, 0).is_empty());
    }

    #[test]
    fn regular_cardinality_formula_grid() {
        for d in 1..=6usize {
            for m in 0..=10u32 {
                let r = Staircase::regular(d, m);
                assert_eq!(
                    r.len() as u64,
                    binomial(m as u64 + d as u64 - 1, d as u64),
                    "|R_{m}| in dim {d}"
                );
            }
        }
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(Staircase::regular(2, 3).len(), 6);
        assert_eq!(Staircase::regular(4, 2).len(), 5);
        assert_eq!(Staircase::empty(3).len(), 0);
    }

    #[test]
    fn containment_examples() {
        let r3 = Staircase::regular(2, 3);
        let r2 = Staircase::regular(2, 2);
        assert!(r3.contains(&r2).unwrap());
        assert!(!r2.contains(&r3).unwrap());
        assert!(r3.contains(&r3).unwrap());
        assert!(r2.contains(&Staircase::regular(3, 1)).is_err());
    }

    #[test]
    fn height_function_by_membership_scan() {
        // independent scan over R_2 in N^2 along the first axis
        let e = Staircase::regular(2, 2);
        let h = e.height_function(0);
        assert_eq!(h.value(&[0]), 2);
        assert_eq!(h.value(&[1]), 1);
        assert_eq!(h.value(&[2]), 0);
        assert_eq!(h.total(), e.len() as u64);

        let r1 = Staircase::regular(3, 1);
        let h = r1.height_function(1);
        assert_eq!(h.value(&[0, 0]), 1);
        assert_eq!(h.total(), 1);

        assert_eq!(Staircase::empty(2).height_function(0).total(), 0);
    }

    #[test]
    fn height_total_matches_cardinality_on_all_axes() {
        let e = Staircase::downward_closure(3, vec![pt(&[2, 1, 0]), pt(&[0, 0, 3])]).unwrap();
        for axis in 0..3 {
            let h = e.height_function(axis);
            assert!(h.is_monotone());
            assert_eq!(h.total(), e.len() as u64);
            assert_eq!(h.to_staircase(axis).unwrap(), e);
        }
    }

    #[test]
    fn slices_are_nested_regular_pieces() {
        let r3 = Staircase::regular(2, 3);
        assert_eq!(r3.slice(1), Staircase::regular(1, 2));
        assert_eq!(r3.slice(5), Staircase::empty(1));
        let mut prev = r3.slice(0);
        for i in 1..4 {
            let cur = r3.slice(i);
            assert!(prev.contains(&cur).unwrap());
            prev = cur;
        }
    }

    #[test]
    fn canonical_json_round_trip() {
        let r1 = Staircase::regular(2, 1);
        assert_eq!(r1.to_canonical_json(), r#"{"dim":2,"points":[[0,0]]}"#);
        let e = Staircase::downward_closure(3, vec![pt(&[1, 2, 0])]).unwrap();
        let text = e.to_canonical_json();
        assert_eq!(Staircase::parse(&text).unwrap(), e);
        assert_eq!(Staircase::parse(&text).unwrap().to_canonical_json(), text);
    }

    #[test]
    fn parse_rejects_malformed_and_non_closed() {
        assert!(Staircase::parse("{").is_err());
        assert!(Staircase::parse(r#"{"dim":2,"points":[[1,0]]}"#).is_err());
        assert!(Staircase::parse(r#"{"dim":2,"points":"nope"}"#).is_err());
    }

    #[test]
    fn shell_points_and_count() {
        let s2 = Shell::new(3, 2);
        let pts = s2.points();
        assert_eq!(pts.len() as u64, s2.len());
        assert!(pts.iter().all(|p| p.sum() == 2));
        assert_eq!(Shell::new(4, 0).len(), 1);
    }

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }
}
