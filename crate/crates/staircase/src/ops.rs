//! The three staircase operators: sums along an axis, anisotropic dilation,
//! and specialization along a direction.
//!
//! Specialization works on arbitrary finite subsets of `N^d`: per line of the
//! direction it keeps the cardinality and pushes everything to the least
//! available positions. For strongly valid directions it carries staircases
//! to staircases; the limit-ideal module re-derives that fact algebraically.

use std::collections::HashMap;

use serde::Serialize;

use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::lattice::{HeightFunction, LatticePoint, Staircase};

/// The points of one line of a direction that meet a queried set, in line
/// order, together with the canonical anchor of the full line.
#[derive(Clone, Debug, Serialize)]
pub struct LineBucket {
    pub key: Vec<i64>,
    pub representative: LatticePoint,
    pub members: Vec<LatticePoint>,
}

/// The strict line order: `p < q` iff `p = q + i*delta` for some `i >= 1`.
pub fn delta_order_less(p: &LatticePoint, q: &LatticePoint, dir: &Direction) -> Result<bool> {
    check_point_dim(dir.dim(), p)?;
    check_point_dim(dir.dim(), q)?;
    let delta = dir.delta();
    let diff: Vec<i64> = p
        .as_i64()
        .iter()
        .zip(q.as_i64())
        .map(|(a, b)| a - b)
        .collect();
    if diff.iter().all(|&v| v == 0) {
        return Ok(false);
    }
    let axis = delta.iter().position(|&v| v != 0).expect("nonzero direction");
    if diff[axis] % delta[axis] != 0 {
        return Err(Error::NotOnSameLine {
            p: p.clone(),
            q: q.clone(),
        });
    }
    let scale = diff[axis] / delta[axis];
    if diff.iter().zip(delta).any(|(&d, &v)| d != scale * v) {
        return Err(Error::NotOnSameLine {
            p: p.clone(),
            q: q.clone(),
        });
    }
    Ok(scale >= 1)
}

/// Partitions a finite point set into its lines, each bucket sorted in
/// ascending line order and the bucket list sorted by key.
pub fn line_decompose(points: &[LatticePoint], dir: &Direction) -> Result<Vec<LineBucket>> {
    let grouped = group_by_line(points, dir)?;
    let mut out = Vec::with_capacity(grouped.len());
    for (key, mut members) in grouped {
        sort_by_line_order(&mut members, dir);
        let representative = dir.line_through(&members[0])[0].clone();
        out.push(LineBucket {
            key,
            representative,
            members,
        });
    }
    out.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(out)
}

/// Specializes a finite subset of `N^d` along a direction: on each line the
/// set is replaced by the same number of points taken from the least
/// positions of the line. Cardinality is preserved.
pub fn delta_specialize(dir: &Direction, points: &[LatticePoint]) -> Result<Vec<LatticePoint>> {
    let grouped = group_by_line(points, dir)?;
    let mut out = Vec::with_capacity(points.len());
    for members in grouped.into_values() {
        let line = dir.line_through(&members[0]);
        debug_assert!(members.len() <= line.len());
        out.extend(line.into_iter().take(members.len()));
    }
    out.sort();
    Ok(out)
}

/// Staircase-to-staircase specialization along a strongly valid direction.
pub fn delta_specialize_staircase(dir: &Direction, e: &Staircase) -> Result<Staircase> {
    dir.require_strong()?;
    let points = delta_specialize(dir, e.points())?;
    Staircase::from_points(e.dim(), points).map_err(|err| {
        Error::InternalContradiction(format!(
            "specialization of a staircase along {:?} is not a staircase: {err}",
            dir.delta()
        ))
    })
}

/// Applies the specialization to each part of a disjoint decomposition via
/// the order-preserving bijection on every line; the images are disjoint and
/// their union is the specialization of the union.
pub fn delta_on_union(
    dir: &Direction,
    parts: &[Vec<LatticePoint>],
) -> Result<Vec<Vec<LatticePoint>>> {
    let mut union: Vec<LatticePoint> = Vec::new();
    {
        let mut seen: HashMap<&LatticePoint, usize> = HashMap::new();
        for (idx, part) in parts.iter().enumerate() {
            for p in part {
                if let Some(&other) = seen.get(p) {
                    if other != idx {
                        return Err(Error::NotDisjoint(p.clone()));
                    }
                } else {
                    seen.insert(p, idx);
                    union.push(p.clone());
                }
            }
        }
    }
    let grouped = group_by_line(&union, dir)?;
    let mut image_of: HashMap<LatticePoint, LatticePoint> = HashMap::with_capacity(union.len());
    for mut members in grouped.into_values() {
        sort_by_line_order(&mut members, dir);
        let line = dir.line_through(&members[0]);
        for (m, target) in members.into_iter().zip(line) {
            image_of.insert(m, target);
        }
    }
    Ok(parts
        .iter()
        .map(|part| {
            let mut img: Vec<LatticePoint> = part
                .iter()
                .map(|p| image_of.get(p).expect("every member was mapped").clone())
                .collect();
            img.sort();
            img.dedup();
            img
        })
        .collect())
}

/// The sum of staircases along the given axis (0-based): the staircase whose
/// height function along that axis is the sum of the height functions.
pub fn sum_along_axis(axis: usize, staircases: &[Staircase]) -> Result<Staircase> {
    let first = staircases
        .first()
        .ok_or(Error::EmptyInput("sum_along_axis needs at least one staircase"))?;
    let dim = first.dim();
    assert!(axis < dim, "axis out of range");
    for e in staircases {
        if e.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: e.dim(),
            });
        }
    }
    let heights: Vec<HeightFunction> = staircases
        .iter()
        .map(|e| e.height_function(axis))
        .collect();
    let refs: Vec<&HeightFunction> = heights.iter().collect();
    let total = HeightFunction::sum(&refs)?;
    let out = total.to_staircase(axis)?;
    debug_assert_eq!(
        out.len(),
        staircases.iter().map(Staircase::len).sum::<usize>()
    );
    Ok(out)
}

/// Anisotropic dilation: `x` belongs to the dilated staircase exactly when
/// the componentwise floors `[x_i / a_i]` form a point of `e`. The result has
/// cardinality `prod(a) * |e|`.
pub fn dilate(factors: &[u32], e: &Staircase) -> Result<Staircase> {
    if factors.len() != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            found: factors.len(),
        });
    }
    assert!(
        factors.iter().all(|&a| a >= 1),
        "dilation factors must be positive"
    );
    let mut points = Vec::with_capacity(
        e.len() * factors.iter().map(|&a| a as usize).product::<usize>(),
    );
    for m in e.points() {
        // the box of points whose floors give back m
        let lo: Vec<u32> = m
            .coords()
            .iter()
            .zip(factors)
            .map(|(&c, &a)| c * a)
            .collect();
        let mut offset = vec![0u32; e.dim()];
        loop {
            let coords: Vec<u32> = lo.iter().zip(&offset).map(|(&l, &o)| l + o).collect();
            points.push(LatticePoint::new(coords));
            let mut axis = e.dim();
            let mut done = true;
            while axis > 0 {
                axis -= 1;
                if offset[axis] + 1 < factors[axis] {
                    offset[axis] += 1;
                    for o in offset.iter_mut().skip(axis + 1) {
                        *o = 0;
                    }
                    done = false;
                    break;
                }
            }
            if done {
                break;
            }
        }
    }
    points.sort();
    Ok(Staircase::from_sorted_unchecked(e.dim(), points))
}

/// Uniform dilation by a single factor on every axis.
pub fn dilate_uniform(s: u32, e: &Staircase) -> Result<Staircase> {
    dilate(&vec![s; e.dim()], e)
}

fn check_point_dim(dim: usize, p: &LatticePoint) -> Result<()> {
    if p.dim() == dim {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: dim,
            found: p.dim(),
        })
    }
}

fn group_by_line(
    points: &[LatticePoint],
    dir: &Direction,
) -> Result<HashMap<Vec<i64>, Vec<LatticePoint>>> {
    for p in points {
        check_point_dim(dir.dim(), p)?;
    }
    let forms = dir.grading_forms();
    let mut dedup: Vec<LatticePoint> = points.to_vec();
    dedup.sort();
    dedup.dedup();
    let mut grouped: HashMap<Vec<i64>, Vec<LatticePoint>> = HashMap::new();
    for p in dedup {
        grouped.entry(forms.key(&p)).or_default().push(p);
    }
    Ok(grouped)
}

fn sort_by_line_order(members: &mut [LatticePoint], dir: &Direction) {
    let base = members[0].clone();
    // ascending line order = descending parameter along +delta
    members.sort_by_key(|p| -dir.line_parameter(&base, p));
}
