//! Dimension counts and theorem verification.
//!
//! Two independent routes certify the vanishing statements. The
//! combinatorial route runs a specialization chain and checks a staircase
//! inclusion. The interpolation oracle picks random points over a large
//! prime field, assembles the matrix of vanishing conditions on forms of the
//! given degree, and computes its exact rank: the resulting dimension is an
//! upper bound for the generic value by semicontinuity, so hitting the
//! virtual dimension certifies it. All oracle certificates are over `F_p`
//! and the reports carry the modulus; exact rational rank is also available
//! for small systems.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::pow::Pow;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chains::verify_key_lemma;
use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::exact::bareiss_echelon;
use crate::field::{Fp, DEFAULT_MODULUS};
use crate::lattice::{binomial, LatticePoint, Staircase};
use crate::ops::{delta_specialize_staircase, dilate_uniform};

/// Cap on `rows * cols` of an oracle matrix.
pub const DEFAULT_MATRIX_ENTRY_BOUND: usize = 50_000;

/// A system of vanishing conditions: one staircase per point of `P^d`, with
/// point coordinates in `F_p`.
#[derive(Clone, Debug)]
pub struct ConditionSystem {
    dim: usize,
    degree: u32,
    modulus: u64,
    conditions: Vec<(Staircase, Vec<u64>)>,
}

impl ConditionSystem {
    pub fn new(
        dim: usize,
        degree: u32,
        modulus: u64,
        conditions: Vec<(Staircase, Vec<u64>)>,
    ) -> Result<ConditionSystem> {
        let fp = Fp::new(modulus)?;
        if modulus <= degree as u64 {
            return Err(Error::FieldTooSmall {
                modulus,
                degree,
            });
        }
        let mut seen: BTreeSet<&[u64]> = BTreeSet::new();
        for (e, point) in &conditions {
            if e.dim() != dim || point.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: if e.dim() != dim { e.dim() } else { point.len() },
                });
            }
            if point.iter().any(|&c| c >= fp.modulus()) {
                return Err(Error::BadHypotheses(
                    "point coordinates must be reduced mod p".into(),
                ));
            }
            if !seen.insert(point) {
                return Err(Error::DuplicatePoints);
            }
        }
        Ok(ConditionSystem {
            dim,
            degree,
            modulus,
            conditions,
        })
    }

    /// Samples pairwise-distinct uniform points for the given staircases.
    pub fn random(
        dim: usize,
        degree: u32,
        modulus: u64,
        staircases: Vec<Staircase>,
        seed: u64,
    ) -> Result<ConditionSystem> {
        let fp = Fp::new(modulus)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut used: BTreeSet<Vec<u64>> = BTreeSet::new();
        let mut conditions = Vec::with_capacity(staircases.len());
        for e in staircases {
            loop {
                let point: Vec<u64> =
                    (0..dim).map(|_| rng.gen_range(0..fp.modulus())).collect();
                if used.insert(point.clone()) {
                    conditions.push((e, point));
                    break;
                }
            }
        }
        ConditionSystem::new(dim, degree, modulus, conditions)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn conditions(&self) -> &[(Staircase, Vec<u64>)] {
        &self.conditions
    }

    pub fn condition_count(&self) -> usize {
        self.conditions.iter().map(|(e, _)| e.len()).sum()
    }
}

/// Outcome of one oracle run.
#[derive(Clone, Debug, Serialize)]
pub struct PostulationResult {
    pub ell: u64,
    pub rank: usize,
    pub ambient: u64,
    pub virtual_dim: i64,
    pub route: String,
    pub seed: u64,
    pub modulus: u64,
}

/// The virtual dimension `binom(delta+d, d) - sum |E_j|`.
pub fn virtual_dimension(dim: usize, degree: u32, conditions: &[Staircase]) -> i64 {
    let ambient = binomial(degree as u64 + dim as u64, dim as u64) as i64;
    let imposed: i64 = conditions.iter().map(|e| e.len() as i64).sum();
    ambient - imposed
}

/// Virtual dimension for `r` fat points of the same multiplicity.
pub fn virtual_dimension_uniform(dim: usize, degree: u32, mu: u32, count: u64) -> i64 {
    let ambient = binomial(degree as u64 + dim as u64, dim as u64) as i64;
    let per_point = binomial(dim as u64 + mu as u64 - 1, dim as u64) as i64;
    ambient - count as i64 * per_point
}

/// Number of monomials of degree `<= degree` outside the staircase; the
/// postulation of the corresponding monomial subscheme.
pub fn monomial_postulation(dim: usize, degree: u32, e: &Staircase) -> u64 {
    assert_eq!(dim, e.dim(), "staircase dimension mismatch");
    let ambient = binomial(degree as u64 + dim as u64, dim as u64);
    let inside = e
        .points()
        .iter()
        .filter(|p| p.sum() <= degree as u64)
        .count() as u64;
    ambient - inside
}

fn monomial_basis(dim: usize, degree: u32) -> Vec<LatticePoint> {
    Staircase::regular(dim, degree + 1).points().to_vec()
}

/// Rows of the condition matrix over `F_p`: for each condition staircase
/// `E` at a point `q` and each exponent `alpha` in `E`, the coefficient of
/// `x^alpha` in `F(x+q)` as a linear form in the coefficients of `F`. The
/// entry at column `beta` is `prod_i binom(beta_i, alpha_i) q_i^(beta_i -
/// alpha_i)`; factorial scalings are omitted since row scaling preserves
/// rank (this needs `p > degree`, enforced at construction).
fn condition_matrix(system: &ConditionSystem, bound: usize) -> Result<Vec<Vec<u64>>> {
    let fp = Fp::new(system.modulus)?;
    let basis = monomial_basis(system.dim, system.degree);
    let rows = system.condition_count();
    let cols = basis.len();
    if rows.saturating_mul(cols) > bound {
        return Err(Error::MatrixTooLarge { rows, cols, bound });
    }
    let binoms = fp.binomial_table(system.degree as usize);
    let mut matrix = Vec::with_capacity(rows);
    for (e, point) in &system.conditions {
        let powers: Vec<Vec<u64>> = point
            .iter()
            .map(|&q| {
                let mut col = Vec::with_capacity(system.degree as usize + 1);
                let mut acc = 1u64 % fp.modulus();
                for _ in 0..=system.degree {
                    col.push(acc);
                    acc = fp.mul(acc, q % fp.modulus());
                }
                col
            })
            .collect();
        for alpha in e.points() {
            let mut row = vec![0u64; cols];
            for (j, beta) in basis.iter().enumerate() {
                let mut entry = 1u64 % fp.modulus();
                let mut zero = false;
                for i in 0..system.dim {
                    let b = beta.coord(i) as usize;
                    let a = alpha.coord(i) as usize;
                    if a > b {
                        zero = true;
                        break;
                    }
                    entry = fp.mul(entry, binoms[b][a]);
                    entry = fp.mul(entry, powers[i][b - a]);
                }
                row[j] = if zero { 0 } else { entry };
            }
            matrix.push(row);
        }
    }
    Ok(matrix)
}

/// Exact dimension of the solution space of the condition system over
/// `F_p`, via dense Gaussian elimination. For random points the result is an
/// upper bound for the generic value by semicontinuity; hitting
/// `max(0, virtual)` certifies the generic dimension over `F_p`.
pub fn oracle_dimension(system: &ConditionSystem, seed: u64) -> Result<PostulationResult> {
    oracle_dimension_bounded(system, seed, DEFAULT_MATRIX_ENTRY_BOUND)
}

pub fn oracle_dimension_bounded(
    system: &ConditionSystem,
    seed: u64,
    bound: usize,
) -> Result<PostulationResult> {
    let fp = Fp::new(system.modulus)?;
    let matrix = condition_matrix(system, bound)?;
    let rank = fp.rank(matrix);
    let ambient = binomial(system.degree as u64 + system.dim as u64, system.dim as u64);
    let staircases: Vec<Staircase> = system
        .conditions
        .iter()
        .map(|(e, _)| e.clone())
        .collect();
    Ok(PostulationResult {
        ell: ambient - rank as u64,
        rank,
        ambient,
        virtual_dim: virtual_dimension(system.dim, system.degree, &staircases),
        route: "oracle".to_string(),
        seed,
        modulus: system.modulus,
    })
}

/// Characteristic-zero variant: exact integer rank of the same condition
/// matrix with the point coordinates read as integers. Slower; intended for
/// small systems sampled with small coordinates.
pub fn oracle_dimension_exact(system: &ConditionSystem, seed: u64) -> Result<PostulationResult> {
    let basis = monomial_basis(system.dim, system.degree);
    let rows = system.condition_count();
    let cols = basis.len();
    if rows.saturating_mul(cols) > DEFAULT_MATRIX_ENTRY_BOUND {
        return Err(Error::MatrixTooLarge {
            rows,
            cols,
            bound: DEFAULT_MATRIX_ENTRY_BOUND,
        });
    }
    let mut matrix: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    for (e, point) in &system.conditions {
        for alpha in e.points() {
            let mut row = Vec::with_capacity(cols);
            for beta in &basis {
                let mut entry = BigInt::from(1);
                let mut zero = false;
                for i in 0..system.dim {
                    let b = beta.coord(i) as u64;
                    let a = alpha.coord(i) as u64;
                    if a > b {
                        zero = true;
                        break;
                    }
                    entry *= BigInt::from(binomial(b, a));
                    entry *= BigInt::from(point[i]).pow(b - a);
                }
                row.push(if zero { BigInt::from(0) } else { entry });
            }
            matrix.push(row);
        }
    }
    let rank = bareiss_echelon(matrix)
        .expect("big-integer elimination cannot overflow")
        .rank();
    let ambient = binomial(system.degree as u64 + system.dim as u64, system.dim as u64);
    let staircases: Vec<Staircase> = system
        .conditions
        .iter()
        .map(|(e, _)| e.clone())
        .collect();
    Ok(PostulationResult {
        ell: ambient - rank as u64,
        rank,
        ambient,
        virtual_dim: virtual_dimension(system.dim, system.degree, &staircases),
        route: "oracle-exact".to_string(),
        seed,
        modulus: system.modulus,
    })
}

/// Convenience wrapper: sample random points for the staircases and run the
/// oracle.
pub fn oracle_at_random_points(
    dim: usize,
    degree: u32,
    modulus: u64,
    staircases: Vec<Staircase>,
    seed: u64,
) -> Result<PostulationResult> {
    let system = ConditionSystem::random(dim, degree, modulus, staircases, seed)?;
    oracle_dimension(&system, seed)
}

/// Sampling range for the exact rational oracle: small coordinates keep the
/// integer growth of the fraction-free elimination manageable.
pub const EXACT_SAMPLING_MODULUS: u64 = 65_537;

/// How an oracle cross-check should run.
#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    pub modulus: u64,
    pub seed: u64,
    /// Exact rational rank on small integer coordinates instead of `F_p`.
    pub exact: bool,
}

/// Dispatches an oracle run according to the options.
pub fn oracle_route(
    dim: usize,
    degree: u32,
    staircases: Vec<Staircase>,
    opts: OracleOptions,
) -> Result<PostulationResult> {
    if opts.exact {
        let system = ConditionSystem::random(
            dim,
            degree,
            EXACT_SAMPLING_MODULUS,
            staircases,
            opts.seed,
        )?;
        oracle_dimension_exact(&system, opts.seed)
    } else {
        oracle_at_random_points(dim, degree, opts.modulus, staircases, opts.seed)
    }
}

/// Structured outcome of a theorem verifier.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    /// Which claim family was verified.
    pub claim: String,
    pub route: String,
    pub d: usize,
    pub delta: u32,
    /// Multiplicity pattern, e.g. `2^16`.
    pub mult: String,
    pub pass: bool,
    pub v: i64,
    pub count: Option<u64>,
    pub ell: Option<u64>,
    pub rank: Option<usize>,
    pub modulus: Option<u64>,
    pub seed: Option<u64>,
    pub sandwich: Option<bool>,
    pub strict_route: Option<bool>,
    pub witness: Option<Staircase>,
    pub notes: Vec<String>,
}

/// The JSONL shape of a verification record.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationRecord {
    pub claim: String,
    pub route: String,
    pub d: usize,
    pub delta: u32,
    pub mult: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u64>,
    pub v: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn record(&self) -> VerificationRecord {
        VerificationRecord {
            claim: self.claim.clone(),
            route: self.route.clone(),
            d: self.d,
            delta: self.delta,
            mult: self.mult.clone(),
            ell: self.ell,
            v: self.v,
            rank: self.rank,
            modulus: self.modulus,
            seed: self.seed,
            pass: self.pass,
        }
    }
}

/// Vanishing at the critical degree: for `r = s^d` fat points of
/// multiplicity `mu` and `delta <= s*mu`, the chain image of `s.R_mu` must
/// contain `R_{delta+1}`. The strict sub-case `delta < s*mu` is also checked
/// through dilation alone when applicable.
pub fn verify_vanishing_theorem(
    s: u32,
    d: usize,
    mu: u32,
    delta: u32,
) -> Result<VerificationReport> {
    verify_vanishing_inner(s, d, mu, delta, None)
}

/// Same as [`verify_vanishing_theorem`] plus an oracle cross-check at random
/// points. An oracle mismatch is recorded as a characteristic-`p` note, not
/// as a failure of the combinatorial route.
pub fn verify_vanishing_with_oracle(
    s: u32,
    d: usize,
    mu: u32,
    delta: u32,
    modulus: u64,
    seed: u64,
) -> Result<VerificationReport> {
    verify_vanishing_inner(
        s,
        d,
        mu,
        delta,
        Some(OracleOptions {
            modulus,
            seed,
            exact: false,
        }),
    )
}

/// Vanishing verification with full control over the oracle cross-check.
pub fn verify_vanishing_full(
    s: u32,
    d: usize,
    mu: u32,
    delta: u32,
    oracle: Option<OracleOptions>,
) -> Result<VerificationReport> {
    verify_vanishing_inner(s, d, mu, delta, oracle)
}

fn verify_vanishing_inner(
    s: u32,
    d: usize,
    mu: u32,
    delta: u32,
    oracle: Option<OracleOptions>,
) -> Result<VerificationReport> {
    if delta > s * mu {
        return Err(Error::BadHypotheses(format!(
            "vanishing needs delta <= s*mu, got delta={delta}, s*mu={}",
            s * mu
        )));
    }
    let chain_report = verify_key_lemma(s, d, mu)?;
    let target = Staircase::regular(d, delta + 1);
    let pass = chain_report.image.contains(&target)?;
    let strict_route = if delta < s * mu {
        let dilated = dilate_uniform(s, &Staircase::regular(d, mu))?;
        Some(dilated.contains(&target)?)
    } else {
        None
    };
    let r = (s as u64).pow(d as u32);
    let mut report = VerificationReport {
        claim: "vanishing".to_string(),
        route: "chain".to_string(),
        d,
        delta,
        mult: format!("{mu}^{r}"),
        pass,
        v: virtual_dimension_uniform(d, delta, mu, r),
        count: None,
        ell: None,
        rank: None,
        modulus: None,
        seed: None,
        sandwich: None,
        strict_route,
        witness: Some(chain_report.image.clone()),
        notes: Vec::new(),
    };
    if !chain_report.missing.is_empty() {
        report
            .notes
            .push("chain fell back to the inductive construction".to_string());
    }
    if let Some(opts) = oracle {
        let staircases = vec![Staircase::regular(d, mu); r as usize];
        let oracle_result = oracle_route(d, delta, staircases, opts)?;
        report.route = "chain+oracle".to_string();
        report.ell = Some(oracle_result.ell);
        report.rank = Some(oracle_result.rank);
        report.modulus = Some(oracle_result.modulus);
        report.seed = Some(opts.seed);
        if pass && oracle_result.ell != 0 {
            report.notes.push(format!(
                "oracle returned ell={} over modulus {}; recorded as a characteristic-p event",
                oracle_result.ell, oracle_result.modulus
            ));
        }
    }
    Ok(report)
}

/// Vanishing below the critical degree needs no chain: `s.R_mu` contains
/// `R_{s*mu}`, so dilation alone settles `delta < s*mu`. Valid for every
/// `s >= 1`.
pub fn verify_strict_theorem(
    s: u32,
    d: usize,
    mu: u32,
    delta: u32,
) -> Result<VerificationReport> {
    if s == 0 || mu == 0 {
        return Err(Error::BadHypotheses("s and mu must be at least 1".into()));
    }
    if delta >= s * mu {
        return Err(Error::BadHypotheses(format!(
            "strict vanishing needs delta < s*mu, got delta={delta}, s*mu={}",
            s * mu
        )));
    }
    let dilated = dilate_uniform(s, &Staircase::regular(d, mu))?;
    let target = Staircase::regular(d, delta + 1);
    let pass = dilated.contains(&target)?;
    let r = (s as u64).pow(d as u32);
    Ok(VerificationReport {
        claim: "strict".to_string(),
        route: "dilation".to_string(),
        d,
        delta,
        mult: format!("{mu}^{r}"),
        pass,
        v: virtual_dimension_uniform(d, delta, mu, r),
        count: None,
        ell: None,
        rank: None,
        modulus: None,
        seed: None,
        sandwich: None,
        strict_route: None,
        witness: Some(dilated),
        notes: Vec::new(),
    })
}

/// Eight fat points in `P^3` have the expected postulation in every degree.
/// The witness staircase is the specialization of the doubled `R_mu` along
/// `(1,-1,-1)`; the monomial count on the witness and the oracle at eight
/// random points must both equal `max(0, v)`.
pub fn verify_eight_points(mu: u32, delta: u32, seed: u64) -> Result<VerificationReport> {
    verify_eight_points_with(mu, delta, DEFAULT_MODULUS, seed)
}

pub fn verify_eight_points_with(
    mu: u32,
    delta: u32,
    modulus: u64,
    seed: u64,
) -> Result<VerificationReport> {
    verify_eight_points_full(
        mu,
        delta,
        OracleOptions {
            modulus,
            seed,
            exact: false,
        },
    )
}

/// Eight-points verification with full control over the oracle route.
pub fn verify_eight_points_full(
    mu: u32,
    delta: u32,
    opts: OracleOptions,
) -> Result<VerificationReport> {
    if mu == 0 {
        return Err(Error::BadHypotheses("mu must be at least 1".into()));
    }
    let seed = opts.seed;
    let dir = Direction::new(vec![1, -1, -1])?;
    let doubled = dilate_uniform(2, &Staircase::regular(3, mu))?;
    let witness = delta_specialize_staircase(&dir, &doubled)?;
    let sandwich = witness.contains(&Staircase::regular(3, 2 * mu))?
        && Staircase::regular(3, 2 * mu + 1).contains(&witness)?;
    let v = virtual_dimension_uniform(3, delta, mu, 8);
    let expected = v.max(0) as u64;
    let count = monomial_postulation(3, delta, &witness);
    let oracle = oracle_route(3, delta, vec![Staircase::regular(3, mu); 8], opts)?;
    debug_assert!(oracle.ell >= expected, "semicontinuity lower bound");
    let mut notes = Vec::new();
    if oracle.ell > expected {
        notes.push(format!(
            "inconclusive: oracle ell={} exceeds expected {expected} (non-generic sample or characteristic-p event)",
            oracle.ell
        ));
    }
    let pass = sandwich && count == expected && oracle.ell == expected;
    Ok(VerificationReport {
        claim: "eight-points".to_string(),
        route: "monomial-count+oracle".to_string(),
        d: 3,
        delta,
        mult: format!("{mu}^8"),
        pass,
        v,
        count: Some(count),
        ell: Some(oracle.ell),
        rank: Some(oracle.rank),
        modulus: Some(oracle.modulus),
        seed: Some(seed),
        sandwich: Some(sandwich),
        strict_route: None,
        witness: Some(witness),
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn virtual_dimension_examples() {
        assert_eq!(virtual_dimension_uniform(2, 4, 1, 16), -1);
        assert_eq!(virtual_dimension_uniform(3, 4, 2, 8), 3);
        assert_eq!(virtual_dimension(3, 4, &[]), 35);
        let hetero = vec![Staircase::regular(2, 2), Staircase::regular(2, 1)];
        assert_eq!(virtual_dimension(2, 3, &hetero), 10 - 4);
    }

    #[test]
    fn monomial_postulation_examples() {
        let r3 = Staircase::regular(3, 3);
        assert_eq!(monomial_postulation(3, 2, &r3), 0);
        assert_eq!(monomial_postulation(3, 4, &Staircase::empty(3)), 35);
        let dir = Direction::new(vec![1, -1, -1]).unwrap();
        let e = delta_specialize_staircase(
            &dir,
            &dilate_uniform(2, &Staircase::regular(3, 2)).unwrap(),
        )
        .unwrap();
        assert_eq!(e.len(), 32);
        assert_eq!(monomial_postulation(3, 4, &e), 3);
    }

    #[test]
    fn oracle_sixteen_simple_points() {
        let result = oracle_at_random_points(
            2,
            4,
            DEFAULT_MODULUS,
            vec![Staircase::regular(2, 1); 16],
            7,
        )
        .unwrap();
        assert_eq!(result.rank, 15);
        assert_eq!(result.ell, 0);
        assert_eq!(result.virtual_dim, -1);
    }

    #[test]
    fn oracle_single_fat_point_is_triangular() {
        for (mu, delta) in [(1u32, 3u32), (2, 3), (3, 5)] {
            let e = Staircase::regular(3, mu);
            let result = oracle_at_random_points(
                3,
                delta,
                DEFAULT_MODULUS,
                vec![e.clone()],
                11,
            )
            .unwrap();
            assert_eq!(result.ell, monomial_postulation(3, delta, &e));
        }
    }

    #[test]
    fn oracle_eight_double_points() {
        let result = oracle_at_random_points(
            3,
            4,
            DEFAULT_MODULUS,
            vec![Staircase::regular(3, 2); 8],
            3,
        )
        .unwrap();
        assert_eq!(result.ell, 3);
    }

    #[test]
    fn oracle_is_monotone_in_degree() {
        let staircases = vec![Staircase::regular(2, 2); 3];
        let system5 =
            ConditionSystem::random(2, 5, DEFAULT_MODULUS, staircases.clone(), 5).unwrap();
        let system6 = ConditionSystem::new(
            2,
            6,
            DEFAULT_MODULUS,
            system5.conditions().to_vec(),
        )
        .unwrap();
        let e5 = oracle_dimension(&system5, 5).unwrap().ell;
        let e6 = oracle_dimension(&system6, 5).unwrap().ell;
        assert!(e6 >= e5);
    }

    #[test]
    fn exact_oracle_agrees_on_small_instance() {
        let system = ConditionSystem::random(2, 4, 65_537, vec![Staircase::regular(2, 1); 16], 9)
            .unwrap();
        let modular = oracle_dimension(&system, 9).unwrap();
        let exact = oracle_dimension_exact(&system, 9).unwrap();
        assert_eq!(modular.rank, exact.rank);
        assert_eq!(exact.ell, 0);
    }

    #[test]
    fn condition_system_validation() {
        assert!(matches!(
            ConditionSystem::new(2, 4, 3, vec![]),
            Err(Error::FieldTooSmall { .. })
        ));
        let dup = vec![
            (Staircase::regular(2, 1), vec![1, 2]),
            (Staircase::regular(2, 1), vec![1, 2]),
        ];
        assert!(matches!(
            ConditionSystem::new(2, 4, DEFAULT_MODULUS, dup),
            Err(Error::DuplicatePoints)
        ));
        assert!(ConditionSystem::new(2, 4, 15, vec![]).is_err());
    }

    #[test]
    fn vanishing_examples() {
        let report = verify_vanishing_theorem(4, 2, 2, 8).unwrap();
        assert!(report.pass);
        assert!(report.strict_route.is_none());

        let report = verify_vanishing_theorem(3, 3, 1, 3).unwrap();
        assert!(report.pass);

        assert!(matches!(
            verify_vanishing_theorem(2, 2, 1, 2),
            Err(Error::UnsupportedCase { s: 2, d: 2 })
        ));
        assert!(verify_vanishing_theorem(4, 2, 2, 9).is_err());
    }

    #[test]
    fn strict_examples() {
        assert!(verify_strict_theorem(2, 2, 3, 5).unwrap().pass);
        assert!(verify_strict_theorem(1, 2, 4, 3).unwrap().pass);
        assert!(verify_strict_theorem(2, 3, 2, 3).unwrap().pass);
        assert!(verify_strict_theorem(2, 2, 3, 6).is_err());
    }

    #[test]
    fn eight_points_examples() {
        let r = verify_eight_points(1, 1, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.ell, Some(0));
        assert_eq!(r.v, 4 - 8);

        let r = verify_eight_points(2, 4, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.ell, Some(3));
        assert_eq!(r.count, Some(3));

        let r = verify_eight_points(2, 3, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.ell, Some(0));
    }

    #[test]
    fn record_serialization_shape() {
        let report = verify_eight_points(1, 1, 42).unwrap();
        let json = serde_json::to_string(&report.record()).unwrap();
        assert!(json.starts_with(
            r#"{"claim":"eight-points","route":"monomial-count+oracle","d":3,"delta":1,"mult":"1^8","ell":0,"v":-4"#
        ));
        assert!(json.ends_with(r#""pass":true}"#));
    }
}
