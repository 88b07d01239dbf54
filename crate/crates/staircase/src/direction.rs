//! Specialization directions and the line geometry they induce.
//!
//! A direction is a primitive integer vector with entries of both signs, so
//! every line it spans meets `N^d` in finitely many points. The strong form
//! (a single `+1` entry, everything else non-positive) is the condition under
//! which specialization maps staircases to staircases.
//!
//! Lines are indexed by the values of `d-1` integer linear forms vanishing on
//! the direction; the same forms grade the limit-ideal computation, so both
//! subsystems share one canonical line-keying scheme.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{extended_gcd, hermite_reduce, unimodular_inverse};
use crate::lattice::{LatticePoint, MAX_DIM};

/// Validation level for a direction vector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Validity {
    /// Primitive with entries of both signs (finite lines).
    Weak,
    /// One entry equal to 1, all others `<= 0`, at least one negative.
    Strong,
}

/// Checks a raw vector against the requested validity level.
pub fn validate_direction(delta: &[i64], level: Validity) -> bool {
    match level {
        Validity::Weak => {
            is_primitive(delta)
                && delta.iter().any(|&v| v > 0)
                && delta.iter().any(|&v| v < 0)
        }
        Validity::Strong => {
            let positives: Vec<i64> = delta.iter().copied().filter(|&v| v > 0).collect();
            positives == [1] && delta.iter().any(|&v| v < 0)
        }
    }
}

fn is_primitive(delta: &[i64]) -> bool {
    let mut g: i64 = 0;
    for &v in delta {
        g = gcd(g, v.abs());
    }
    g == 1
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// A weakly valid specialization direction.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDirection")]
pub struct Direction {
    delta: Vec<i64>,
}

#[derive(Deserialize)]
struct RawDirection {
    delta: Vec<i64>,
}

impl TryFrom<RawDirection> for Direction {
    type Error = Error;
    fn try_from(raw: RawDirection) -> Result<Direction> {
        Direction::new(raw.delta)
    }
}

impl Direction {
    pub fn new(delta: Vec<i64>) -> Result<Direction> {
        if !(2..=MAX_DIM).contains(&delta.len()) {
            return Err(Error::UnsupportedDimension(delta.len()));
        }
        if !validate_direction(&delta, Validity::Weak) {
            return Err(Error::InvalidDirection(
                delta,
                "must be primitive with entries of both signs",
            ));
        }
        Ok(Direction { delta })
    }

    /// Parses a comma-separated vector such as `1,-1,-1`.
    pub fn parse(text: &str) -> Result<Direction> {
        let entries: std::result::Result<Vec<i64>, _> =
            text.split(',').map(|t| t.trim().parse::<i64>()).collect();
        match entries {
            Ok(delta) => Direction::new(delta),
            Err(_) => Err(Error::InvalidDirection(
                Vec::new(),
                "expected a comma-separated integer vector",
            )),
        }
    }

    pub fn dim(&self) -> usize {
        self.delta.len()
    }

    pub fn delta(&self) -> &[i64] {
        &self.delta
    }

    pub fn is_strongly_valid(&self) -> bool {
        validate_direction(&self.delta, Validity::Strong)
    }

    pub fn require_strong(&self) -> Result<()> {
        if self.is_strongly_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDirection(
                self.delta.clone(),
                "must have a single entry 1 and all other entries <= 0",
            ))
        }
    }

    /// Index of the unique `+1` entry of a strongly valid direction.
    pub fn pivot_axis(&self) -> Option<usize> {
        if self.is_strongly_valid() {
            self.delta.iter().position(|&v| v == 1)
        } else {
            None
        }
    }

    /// All points of `N^d` on the line through `p`, ordered so that the
    /// first element is the far endpoint in the `+delta` sense (the least
    /// element for the line order).
    pub fn line_through(&self, p: &LatticePoint) -> Vec<LatticePoint> {
        debug_assert_eq!(p.dim(), self.dim());
        let base = p.as_i64();
        self.line_from_base(&base)
    }

    /// Same as [`line_through`](Self::line_through) for an integer base point
    /// that may lie outside `N^d`; empty when the line misses the orthant.
    pub(crate) fn line_from_base(&self, base: &[i64]) -> Vec<LatticePoint> {
        let mut t_min = i64::MIN;
        let mut t_max = i64::MAX;
        for (b, &dv) in base.iter().zip(&self.delta) {
            if dv > 0 {
                t_min = t_min.max(ceil_div(-b, dv));
            } else if dv < 0 {
                t_max = t_max.min(floor_div(*b, -dv));
            }
        }
        if t_min > t_max {
            return Vec::new();
        }
        let mut out = Vec::with_capacity((t_max - t_min + 1) as usize);
        let mut t = t_max;
        while t >= t_min {
            let coords: Vec<i64> = base
                .iter()
                .zip(&self.delta)
                .map(|(b, &dv)| b + t * dv)
                .collect();
            out.push(LatticePoint::from_i64(&coords).expect("t range keeps the orthant"));
            t -= 1;
        }
        out
    }

    /// Integer parameter `t` with `p = base + t*delta` (collinearity assumed).
    pub(crate) fn line_parameter(&self, base: &LatticePoint, p: &LatticePoint) -> i64 {
        let axis = self
            .delta
            .iter()
            .position(|&v| v != 0)
            .expect("directions are nonzero");
        let diff = p.coord(axis) as i64 - base.coord(axis) as i64;
        debug_assert_eq!(diff % self.delta[axis], 0);
        diff / self.delta[axis]
    }

    /// The grading forms attached to this direction.
    pub fn grading_forms(&self) -> GradingForms {
        GradingForms::new(self)
    }
}

impl std::fmt::Debug for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Direction({:?})", self.delta)
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    (a + b - 1).div_euclid(b)
}

fn floor_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

/// `d-1` independent integer linear forms vanishing on a direction.
///
/// Two lattice points share all form values exactly when they differ by an
/// integer multiple of the direction, so the form values are a canonical key
/// for the lines of that direction.
#[derive(Clone, Debug)]
pub struct GradingForms {
    delta: Vec<i64>,
    forms: Vec<Vec<i64>>,
    /// Inverse of the unimodular completion `[head; forms]`; used to
    /// reconstruct a line from its key.
    completion_inverse: Vec<Vec<i64>>,
}

impl GradingForms {
    fn new(dir: &Direction) -> GradingForms {
        let d = dir.dim();
        // Build a unimodular U with U * delta = e_1 by accumulating the
        // extended-gcd row operations, then take rows 2..d as the forms.
        let mut u: Vec<Vec<i64>> = (0..d)
            .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut v = dir.delta().to_vec();
        for i in 1..d {
            if v[i] == 0 {
                continue;
            }
            let (g, x, y) = extended_gcd(v[0], v[i]);
            let row0: Vec<i64> = (0..d).map(|j| x * u[0][j] + y * u[i][j]).collect();
            let rowi: Vec<i64> = (0..d)
                .map(|j| -(v[i] / g) * u[0][j] + (v[0] / g) * u[i][j])
                .collect();
            u[0] = row0;
            u[i] = rowi;
            v[0] = g;
            v[i] = 0;
        }
        debug_assert_eq!(v[0].abs(), 1, "directions are primitive");
        if v[0] < 0 {
            for entry in &mut u[0] {
                *entry = -*entry;
            }
        }
        let head = u[0].clone();
        let forms = hermite_reduce(u[1..].to_vec());
        let mut completion = Vec::with_capacity(d);
        completion.push(head);
        completion.extend(forms.iter().cloned());
        let completion_inverse =
            unimodular_inverse(&completion).expect("completion is unimodular");
        debug_assert!(forms
            .iter()
            .all(|f| dot(f, dir.delta()) == 0));
        GradingForms {
            delta: dir.delta().to_vec(),
            forms,
            completion_inverse,
        }
    }

    pub fn dim(&self) -> usize {
        self.delta.len()
    }

    pub fn forms(&self) -> &[Vec<i64>] {
        &self.forms
    }

    /// Line key of a lattice point: the tuple of form values.
    pub fn key(&self, p: &LatticePoint) -> Vec<i64> {
        let coords = p.as_i64();
        self.forms.iter().map(|f| dot(f, &coords)).collect()
    }

    /// All points of `N^d` on the line with the given key, in line order
    /// (least element first). Empty when the line misses the orthant.
    pub fn line_points(&self, dir: &Direction, key: &[i64]) -> Vec<LatticePoint> {
        debug_assert_eq!(key.len(), self.dim() - 1);
        debug_assert_eq!(dir.delta(), self.delta.as_slice());
        // base = completion^{-1} * (0, key): an integer point of the line.
        let d = self.dim();
        let mut rhs = Vec::with_capacity(d);
        rhs.push(0i64);
        rhs.extend_from_slice(key);
        let base: Vec<i64> = (0..d)
            .map(|i| (0..d).map(|j| self.completion_inverse[i][j] * rhs[j]).sum())
            .collect();
        dir.line_from_base(&base)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// All strongly valid directions of the given dimension with negative
/// entries bounded below by `low`, in a fixed deterministic order
/// (largest absolute entry, then lexicographic).
pub fn enumerate_strong_directions(dim: usize, low: i64) -> Vec<Direction> {
    assert!(low <= -1, "bound must allow at least one negative entry");
    let mut out = Vec::new();
    for pivot in 0..dim {
        let others = dim - 1;
        let radix = (-low + 1) as u64;
        let mut counter = vec![0u64; others];
        loop {
            if counter.iter().any(|&c| c > 0) {
                let mut delta = Vec::with_capacity(dim);
                let mut it = counter.iter();
                for axis in 0..dim {
                    if axis == pivot {
                        delta.push(1i64);
                    } else {
                        delta.push(-(*it.next().unwrap() as i64));
                    }
                }
                out.push(Direction::new(delta).expect("constructed strong direction"));
            }
            // odometer
            let mut pos = others;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                counter[pos] += 1;
                if counter[pos] < radix {
                    break;
                }
                counter[pos] = 0;
                if pos == 0 {
                    break;
                }
            }
            if counter.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    out.sort_by_key(|d| {
        (
            d.delta().iter().map(|v| v.abs()).max().unwrap_or(0),
            d.delta().to_vec(),
        )
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validity_levels() {
        assert!(validate_direction(&[1, -1], Validity::Strong));
        assert!(validate_direction(&[1, -2, 0], Validity::Strong));
        assert!(!validate_direction(&[1, 1, -1], Validity::Strong));
        assert!(validate_direction(&[1, 1, -1], Validity::Weak));
        assert!(!validate_direction(&[1, 0], Validity::Weak));
        assert!(!validate_direction(&[2, -2], Validity::Weak));
    }

    #[test]
    fn constructor_rejects_degenerate_vectors() {
        assert!(Direction::new(vec![1, 0]).is_err());
        assert!(Direction::new(vec![2, -4]).is_err());
        assert!(Direction::new(vec![1]).is_err());
        assert!(Direction::new(vec![1, -3]).is_ok());
    }

    #[test]
    fn pivot_axis_of_strong_directions() {
        assert_eq!(Direction::new(vec![1, -1]).unwrap().pivot_axis(), Some(0));
        assert_eq!(
            Direction::new(vec![-3, 0, 1]).unwrap().pivot_axis(),
            Some(2)
        );
        assert_eq!(Direction::new(vec![1, 1, -1]).unwrap().pivot_axis(), None);
    }

    #[test]
    fn grading_forms_examples() {
        let d = Direction::new(vec![1, -1]).unwrap();
        let gf = d.grading_forms();
        assert_eq!(gf.forms(), &[vec![1, 1]]);

        let d = Direction::new(vec![1, -1, -1]).unwrap();
        let gf = d.grading_forms();
        assert_eq!(gf.forms().len(), 2);
        for f in gf.forms() {
            assert_eq!(f.iter().zip(d.delta()).map(|(a, b)| a * b).sum::<i64>(), 0);
        }
    }

    #[test]
    fn keys_separate_exactly_the_lines() {
        let dir = Direction::new(vec![1, -2, 0]).unwrap();
        let gf = dir.grading_forms();
        let p = LatticePoint::new(vec![1, 2, 3]);
        let q = LatticePoint::new(vec![3, 1, 3]); // p + Delta? (1,2,3)+(1,-2,0)=(2,0,3); q is p + 2*Delta shifted wrong
        let on_line = LatticePoint::new(vec![2, 0, 3]);
        assert_eq!(gf.key(&p), gf.key(&on_line));
        assert_ne!(gf.key(&p), gf.key(&q));
    }

    #[test]
    fn line_points_match_line_through() {
        for delta in [vec![1, -1], vec![1, -2]] {
            let dir = Direction::new(delta).unwrap();
            let gf = dir.grading_forms();
            for x in 0..5u32 {
                for y in 0..5u32 {
                    let p = LatticePoint::new(vec![x, y]);
                    assert_eq!(gf.line_points(&dir, &gf.key(&p)), dir.line_through(&p));
                }
            }
        }
    }

    #[test]
    fn line_through_column_direction() {
        let dir = Direction::new(vec![1, -1]).unwrap();
        let line = dir.line_through(&LatticePoint::new(vec![0, 2]));
        assert_eq!(
            line,
            vec![
                LatticePoint::new(vec![2, 0]),
                LatticePoint::new(vec![1, 1]),
                LatticePoint::new(vec![0, 2]),
            ]
        );
    }

    #[test]
    fn strong_direction_enumeration_counts() {
        assert_eq!(enumerate_strong_directions(2, -3).len(), 6);
        assert_eq!(enumerate_strong_directions(3, -3).len(), 45);
        assert_eq!(enumerate_strong_directions(4, -3).len(), 252);
        let all = enumerate_strong_directions(3, -3);
        assert!(all.iter().all(|d| d.is_strongly_valid()));
    }
}
