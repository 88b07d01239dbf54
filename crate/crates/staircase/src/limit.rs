//! Algebraic verification that specialization along a strongly valid
//! direction computes a flat limit of monomial ideals.
//!
//! The family substitutes `x_pivot -> t*x_pivot + x^(-delta restricted to
//! the other axes)` into the monomial ideal of a staircase. Grading by the
//! forms vanishing on the direction splits the computation into independent
//! finite-dimensional pieces, one per line. On a line with `k` monomials
//! `m_1 < ... < m_k` (line order) and `l` ideal generators, the substituted
//! generators expand over the basis `t^j m_{k-j}` with binomial coefficients
//! `binom(alpha_i, j)`, where `alpha_i` is the pivot-axis exponent of the
//! `i`-th generator. A fraction-free row reduction of that coefficient
//! matrix exhibits, row by row, a generator whose lowest `t`-order term is a
//! single monomial; those monomials span the limit. The check passes when
//! the limit span on every line equals the monomial complement of the
//! combinatorial specialization, computed independently by the staircase
//! operators.
//!
//! All arithmetic is exact: `i128` with overflow detection, falling back to
//! big integers. Grading forms live with [`Direction`]; this module consumes
//! them through the line keys.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::exact::{bareiss_echelon, Echelon, ExactInt};
use crate::field::Fp;
use crate::lattice::{LatticePoint, Staircase};
use crate::ops::delta_specialize;

/// Default bounding-box margin for line enumeration. Lines missing the
/// staircase entirely are trivially consistent, so the margin only adds a
/// shell of smoke-test lines around the support.
pub const DEFAULT_BOX_MARGIN: u32 = 1;

/// The limit computation restricted to one line of the direction.
#[derive(Clone, Debug)]
pub struct LineLimitProblem {
    /// Values of the grading forms on the line.
    pub key: Vec<i64>,
    /// All points of `N^d` on the line, least element first.
    pub line: Vec<LatticePoint>,
    /// Which line points belong to the staircase.
    pub in_staircase: Vec<bool>,
    /// Pivot-axis exponents of the ideal generators on the line, in line
    /// order; always pairwise distinct.
    pub alphas: Vec<u32>,
    /// Line points outside the specialized staircase (the monomial span the
    /// limit must reproduce), in canonical order.
    pub expected_limit: Vec<LatticePoint>,
}

impl LineLimitProblem {
    /// Number of monomials on the line.
    pub fn k(&self) -> usize {
        self.line.len()
    }

    /// Number of ideal generators on the line: `k - |E on the line|`.
    pub fn l(&self) -> usize {
        self.alphas.len()
    }

    /// The full coefficient matrix `P` with `P[i][j] = binom(alpha_i, j)`.
    pub fn matrix_p(&self) -> Vec<Vec<BigInt>> {
        self.alphas
            .iter()
            .map(|&a| binom_row_big(a, self.k()))
            .collect()
    }
}

/// Per-line verification outcome.
#[derive(Clone, Debug, Serialize)]
pub struct LineReport {
    pub line_key: Vec<i64>,
    pub k: usize,
    pub l: usize,
    #[serde(rename = "detQ")]
    pub det_q: String,
    pub pass: bool,
}

/// Aggregate outcome over all lines meeting the staircase's bounding box.
#[derive(Clone, Debug)]
pub struct LimitReport {
    pub dim: usize,
    pub delta: Vec<i64>,
    pub cardinality: usize,
    pub margin: u32,
    pub lines: usize,
    pub pass: bool,
    pub line_reports: Vec<LineReport>,
}

/// Builds the line problem for a staircase, direction and line key.
pub fn build_line_problem(
    e: &Staircase,
    dir: &Direction,
    key: &[i64],
) -> Result<LineLimitProblem> {
    dir.require_strong()?;
    if e.dim() != dir.dim() {
        return Err(Error::DimensionMismatch {
            expected: dir.dim(),
            found: e.dim(),
        });
    }
    let specialized = delta_specialize(dir, e.points())?;
    let forms = dir.grading_forms();
    let line = forms.line_points(dir, key);
    assemble_problem(e, &specialized, dir, key.to_vec(), line)
}

fn assemble_problem(
    e: &Staircase,
    specialized: &[LatticePoint],
    dir: &Direction,
    key: Vec<i64>,
    line: Vec<LatticePoint>,
) -> Result<LineLimitProblem> {
    if line.is_empty() {
        return Err(Error::EmptyLine(key));
    }
    let pivot = dir.pivot_axis().expect("strong direction");
    let k = line.len();
    let in_staircase: Vec<bool> = line.iter().map(|p| e.contains_point(p)).collect();
    let alphas: Vec<u32> = line
        .iter()
        .zip(&in_staircase)
        .filter(|(_, &inside)| !inside)
        .map(|(p, _)| p.coord(pivot))
        .collect();
    // on a line of a strong direction the pivot exponents run k-1, ..., 0
    debug_assert!(line
        .iter()
        .enumerate()
        .all(|(i, p)| p.coord(pivot) as usize == k - 1 - i));
    let mut expected_limit: Vec<LatticePoint> = line
        .iter()
        .filter(|p| specialized.binary_search(p).is_err())
        .cloned()
        .collect();
    expected_limit.sort();
    Ok(LineLimitProblem {
        key,
        line,
        in_staircase,
        alphas,
        expected_limit,
    })
}

fn binom_row_i128(alpha: u32, k: usize) -> Option<Vec<i128>> {
    let a = alpha as i128;
    let mut row = Vec::with_capacity(k);
    let mut value: i128 = 1;
    for j in 0..k {
        if j as i128 > a {
            row.push(0);
        } else {
            if j > 0 {
                value = value.checked_mul(a - (j as i128 - 1))? / j as i128;
            }
            row.push(value);
        }
    }
    Some(row)
}

fn binom_row_big(alpha: u32, k: usize) -> Vec<BigInt> {
    let a = BigInt::from(alpha);
    let mut row = Vec::with_capacity(k);
    let mut value = BigInt::from(1);
    for j in 0..k {
        if BigInt::from(j) > a {
            row.push(BigInt::from(0));
        } else {
            if j > 0 {
                value = value * (&a - BigInt::from(j - 1)) / BigInt::from(j);
            }
            row.push(value.clone());
        }
    }
    row
}

struct Reduction {
    det_q: String,
    pivot_cols: Vec<usize>,
    full_rank: bool,
}

fn reduce<T: ExactInt>(matrix: Vec<Vec<T>>, l: usize) -> Option<Reduction> {
    let ech: Echelon<T> = bareiss_echelon(matrix)?;
    let identity_structure = ech.pivot_cols.iter().enumerate().all(|(i, &c)| i == c);
    let full_rank = ech.rank() == l;
    let det_q = if identity_structure && full_rank {
        ech.leading_det()
            .expect("pivots occupy the leading columns")
            .to_decimal()
    } else {
        "0".to_string()
    };
    Some(Reduction {
        det_q,
        pivot_cols: ech.pivot_cols,
        full_rank,
    })
}

/// Runs the exact reduction for one line and compares the limit span with
/// the combinatorial specialization.
///
/// A singular leading block would contradict the distinct-exponent
/// Vandermonde argument in characteristic zero, so it is surfaced as an
/// error rather than a failed record.
pub fn verify_line_limit(problem: &LineLimitProblem) -> Result<LineReport> {
    let k = problem.k();
    let l = problem.l();
    if l == 0 {
        return Ok(LineReport {
            line_key: problem.key.clone(),
            k,
            l,
            det_q: "1".to_string(),
            pass: problem.expected_limit.is_empty(),
        });
    }
    let reduction = match problem
        .alphas
        .iter()
        .map(|&a| binom_row_i128(a, k))
        .collect::<Option<Vec<_>>>()
        .and_then(|rows| reduce(rows, l))
    {
        Some(r) => r,
        None => reduce(problem.matrix_p(), l).expect("big-integer route cannot overflow"),
    };
    if !reduction.full_rank || reduction.pivot_cols.iter().enumerate().any(|(i, &c)| i != c) {
        return Err(Error::SingularQ {
            line_key: problem.key.clone(),
            detail: format!(
                "pivot columns {:?} for {} generators with exponents {:?}",
                reduction.pivot_cols, l, problem.alphas
            ),
        });
    }
    // row with pivot column j has lowest t-order term t^j * m_{k-j}
    let mut limit: Vec<LatticePoint> = reduction
        .pivot_cols
        .iter()
        .map(|&j| problem.line[k - 1 - j].clone())
        .collect();
    limit.sort();
    let pass = limit == problem.expected_limit && reduction.det_q != "0";
    Ok(LineReport {
        line_key: problem.key.clone(),
        k,
        l,
        det_q: reduction.det_q,
        pass,
    })
}

/// Verifies the limit on every line meeting the bounding box of the
/// staircase expanded by `margin`. Lines disjoint from the staircase are
/// trivially consistent, so the margin only controls how many of those are
/// exercised.
pub fn verify_limit_ideal(e: &Staircase, dir: &Direction, margin: u32) -> Result<LimitReport> {
    dir.require_strong()?;
    if e.dim() != dir.dim() {
        return Err(Error::DimensionMismatch {
            expected: dir.dim(),
            found: e.dim(),
        });
    }
    let specialized = delta_specialize(dir, e.points())?;
    let forms = dir.grading_forms();
    let bounds: Vec<u32> = e.max_coords().iter().map(|&c| c + margin).collect();
    let mut keys: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut cursor = vec![0u32; e.dim()];
    loop {
        keys.insert(forms.key(&LatticePoint::new(cursor.clone())));
        let mut axis = e.dim();
        let mut done = true;
        while axis > 0 {
            axis -= 1;
            if cursor[axis] < bounds[axis] {
                cursor[axis] += 1;
                for c in cursor.iter_mut().skip(axis + 1) {
                    *c = 0;
                }
                done = false;
                break;
            }
        }
        if done {
            break;
        }
    }
    let mut line_reports = Vec::with_capacity(keys.len());
    let mut pass = true;
    for key in keys {
        let line = forms.line_points(dir, &key);
        let problem = assemble_problem(e, &specialized, dir, key, line)?;
        let report = verify_line_limit(&problem)?;
        pass &= report.pass;
        line_reports.push(report);
    }
    Ok(LimitReport {
        dim: e.dim(),
        delta: dir.delta().to_vec(),
        cardinality: e.len(),
        margin,
        lines: line_reports.len(),
        pass,
        line_reports,
    })
}

/// Characteristic-`p` probe: the primes among `primes` that divide the
/// determinant of the leading block, i.e. the characteristics in which the
/// reduction argument for this line degenerates. Reports facts only; it
/// never passes or fails a line.
pub fn det_q_prime_divisors(problem: &LineLimitProblem, primes: &[u64]) -> Result<Vec<u64>> {
    let l = problem.l();
    let mut out = Vec::new();
    for &p in primes {
        let fp = Fp::new(p)?;
        let mut q = Vec::with_capacity(l);
        for &alpha in &problem.alphas {
            let row_big = binom_row_big(alpha, l);
            q.push(
                row_big
                    .iter()
                    .map(|v| fp.reduce_big(v))
                    .collect::<Vec<u64>>(),
            );
        }
        if fp.det(q) == 0 {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::dilate_uniform;

    fn pt(coords: &[u32]) -> LatticePoint {
        LatticePoint::new(coords.to_vec())
    }

    fn column3() -> Staircase {
        Staircase::from_points(2, vec![pt(&[0, 0]), pt(&[0, 1]), pt(&[0, 2])]).unwrap()
    }

    #[test]
    fn line_problem_of_the_column() {
        let dir = Direction::new(vec![1, -1]).unwrap();
        let e = column3();
        // the line x+y=2 has key given by the form (1,1)
        let problem = build_line_problem(&e, &dir, &[2]).unwrap();
        assert_eq!(problem.k(), 3);
        assert_eq!(problem.l(), 2);
        assert_eq!(problem.alphas, vec![2, 1]);
        let p = problem.matrix_p();
        let as_i64: Vec<Vec<i64>> = p
            .iter()
            .map(|row| row.iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect();
        assert_eq!(as_i64, vec![vec![1, 2, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn line_limit_of_the_column() {
        let dir = Direction::new(vec![1, -1]).unwrap();
        let e = column3();
        let problem = build_line_problem(&e, &dir, &[2]).unwrap();
        let report = verify_line_limit(&problem).unwrap();
        assert!(report.pass);
        assert_eq!(report.det_q, "-1");
        assert_eq!(problem.expected_limit, vec![pt(&[0, 2]), pt(&[1, 1])]);
    }

    #[test]
    fn trivial_lines() {
        let dir = Direction::new(vec![1, -1]).unwrap();
        let e = Staircase::regular(2, 3);
        // l = 0: the line x+y=1 lies inside R_3
        let full = build_line_problem(&e, &dir, &[1]).unwrap();
        assert_eq!(full.l(), 0);
        assert!(verify_line_limit(&full).unwrap().pass);
        // l = k: a line disjoint from the staircase
        let empty = build_line_problem(&e, &dir, &[9]).unwrap();
        assert_eq!(empty.l(), empty.k());
        assert!(verify_line_limit(&empty).unwrap().pass);
    }

    #[test]
    fn limit_agrees_on_fixed_staircases() {
        let dir = Direction::new(vec![1, -1]).unwrap();
        let report = verify_limit_ideal(&Staircase::regular(2, 3), &dir, 1).unwrap();
        assert!(report.pass);
        assert!(report.lines > 0);
    }

    #[test]
    fn limit_agrees_on_doubled_cube() {
        let dir = Direction::new(vec![1, -1, -1]).unwrap();
        let cube = dilate_uniform(2, &Staircase::regular(3, 1)).unwrap();
        let report = verify_limit_ideal(&cube, &dir, 1).unwrap();
        assert!(report.pass, "{:?}", report.line_reports);
    }

    #[test]
    fn limit_agrees_on_the_column() {
        let dir = Direction::new(vec![1, -1]).unwrap();
        let report = verify_limit_ideal(&column3(), &dir, 2).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn characteristic_probe_reports_divisors() {
        let dir = Direction::new(vec![1, -1]).unwrap();
        let e = Staircase::downward_closure(2, vec![pt(&[1, 1])]).unwrap();
        // line x+y=2: generators with pivot exponents 2 and 0, det Q = -2
        let problem = build_line_problem(&e, &dir, &[2]).unwrap();
        assert_eq!(problem.alphas, vec![2, 0]);
        let report = verify_line_limit(&problem).unwrap();
        assert!(report.pass);
        assert_eq!(report.det_q, "-2");
        assert_eq!(
            det_q_prime_divisors(&problem, &[2, 3, 5]).unwrap(),
            vec![2]
        );
    }

    #[test]
    fn line_report_record_shape() {
        let dir = Direction::new(vec![1, -1]).unwrap();
        let problem = build_line_problem(&column3(), &dir, &[2]).unwrap();
        let report = verify_line_limit(&problem).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            r#"{"line_key":[2],"k":3,"l":2,"detQ":"-1","pass":true}"#
        );
    }
}
