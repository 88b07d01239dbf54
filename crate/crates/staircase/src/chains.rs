//! Chains of specializations carrying `s.R_mu` onto a staircase that
//! contains `R_{s*mu+1}`.
//!
//! The built-in chains follow the closed-form recipe for each regime of `s`;
//! under the convention used here their nonzero entries sit in the last
//! coordinates, and the dimension induction pads a zero onto the first
//! coordinate before appending the finishing direction `(1,-1,-1,0,...)`.
//! When a built-in chain fails verification the engine falls back to the
//! inductive construction and records which chain was used.

use serde::{Serialize, Serializer};

use crate::direction::{enumerate_strong_directions, Direction};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Staircase, MAX_DIM};
use crate::ops::{delta_specialize, delta_specialize_staircase, dilate_uniform};

/// How a chain was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    BuiltinRemark,
    Induction,
    Search,
}

/// An ordered list of strongly valid directions, applied left to right.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaChain {
    dim: usize,
    directions: Vec<Direction>,
    provenance: Provenance,
}

impl DeltaChain {
    pub fn new(
        dim: usize,
        directions: Vec<Direction>,
        provenance: Provenance,
    ) -> Result<DeltaChain> {
        for dir in &directions {
            if dir.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: dir.dim(),
                });
            }
            dir.require_strong()?;
        }
        Ok(DeltaChain {
            dim,
            directions,
            provenance,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// The raw vectors, first-applied first.
    pub fn vectors(&self) -> Vec<Vec<i64>> {
        self.directions
            .iter()
            .map(|d| d.delta().to_vec())
            .collect()
    }
}

/// Hypotheses of the chain lemma: `s >= 2`, `d >= 2`, and
/// `(s,d)` outside `{(2,2),(2,3),(3,2)}`.
pub fn admissible(s: u32, d: usize) -> bool {
    s >= 2 && (2..=MAX_DIM).contains(&d) && !matches!((s, d), (2, 2) | (2, 3) | (3, 2))
}

fn require_admissible(s: u32, d: usize) -> Result<()> {
    if admissible(s, d) {
        Ok(())
    } else {
        Err(Error::UnsupportedCase { s, d })
    }
}

fn chain_from_vectors(
    dim: usize,
    vectors: Vec<Vec<i64>>,
    provenance: Provenance,
) -> Result<DeltaChain> {
    let directions: Result<Vec<Direction>> =
        vectors.into_iter().map(Direction::new).collect();
    DeltaChain::new(dim, directions?, provenance)
}

/// A direction with `1` at 0-based position `d - i` followed by `-1, -1`.
fn finishing_vector(d: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0i64; d];
    let pos = d - i;
    v[pos] = 1;
    v[pos + 1] = -1;
    v[pos + 2] = -1;
    v
}

fn padded(d: usize, tail: &[i64]) -> Vec<i64> {
    let mut v = vec![0i64; d - tail.len()];
    v.extend_from_slice(tail);
    v
}

fn remark_vectors(s: u32, d: usize) -> Vec<Vec<i64>> {
    let s = s as i64;
    let mut out = Vec::with_capacity(d);
    if s > 3 {
        out.push(padded(d, &[1, -s + 1]));
        out.push(padded(d, &[-s + 2, 1]));
        for i in 3..=d {
            out.push(finishing_vector(d, i));
        }
    } else if s == 3 {
        out.push(padded(d, &[1, -2, 0]));
        out.push(padded(d, &[-3, 0, 1]));
        out.push(padded(d, &[0, 1, -2]));
        for i in 4..=d {
            out.push(finishing_vector(d, i));
        }
    } else {
        out.push(padded(d, &[1, -1, -1, -1]));
        out.push(padded(d, &[-1, 1, -1, 0]));
        out.push(padded(d, &[-1, 0, 1, -1]));
        out.push(padded(d, &[-1, -1, 0, 1]));
        for i in 5..=d {
            out.push(finishing_vector(d, i));
        }
    }
    out
}

/// The closed-form chain for an admissible pair `(s, d)`.
pub fn builtin_chain(s: u32, d: usize) -> Result<DeltaChain> {
    require_admissible(s, d)?;
    chain_from_vectors(d, remark_vectors(s, d), Provenance::BuiltinRemark)
}

/// Chain built by induction on the dimension: extend a `(d-1)`-chain by a
/// leading zero coordinate, then finish with `(1,-1,-1,0,...)`.
pub fn induction_chain(s: u32, d: usize) -> Result<DeltaChain> {
    require_admissible(s, d)?;
    let base_dim = match s {
        2 => 4,
        3 => 3,
        _ => 2,
    };
    if d == base_dim {
        return chain_from_vectors(d, remark_vectors(s, d), Provenance::Induction);
    }
    let prev = induction_chain(s, d - 1)?;
    let mut vectors: Vec<Vec<i64>> = prev
        .vectors()
        .into_iter()
        .map(|v| {
            let mut padded = Vec::with_capacity(d);
            padded.push(0);
            padded.extend(v);
            padded
        })
        .collect();
    let mut last = vec![0i64; d];
    last[0] = 1;
    last[1] = -1;
    last[2] = -1;
    vectors.push(last);
    chain_from_vectors(d, vectors, Provenance::Induction)
}

/// Applies the chain left to right; every intermediate set is checked to be
/// a staircase and cardinality is conserved step by step.
pub fn apply_chain(chain: &DeltaChain, e: &Staircase) -> Result<Staircase> {
    if chain.dim() != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            found: chain.dim(),
        });
    }
    let mut cur = e.clone();
    for dir in chain.directions() {
        let next = delta_specialize_staircase(dir, &cur)?;
        debug_assert_eq!(next.len(), cur.len());
        cur = next;
    }
    Ok(cur)
}

/// Outcome of one chain verification.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub s: u32,
    pub d: usize,
    pub mu: u32,
    #[serde(serialize_with = "serialize_vectors")]
    pub chain: DeltaChain,
    pub pass: bool,
    pub missing: Vec<LatticePoint>,
    pub provenance: Provenance,
    #[serde(skip)]
    pub image: Staircase,
    #[serde(skip)]
    pub target: Staircase,
}

fn serialize_vectors<S: Serializer>(chain: &DeltaChain, ser: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let vectors = chain.vectors();
    let mut seq = ser.serialize_seq(Some(vectors.len()))?;
    for v in vectors {
        seq.serialize_element(&v)?;
    }
    seq.end()
}

/// Verifies that the chain image of `s.R_mu` contains `R_{s*mu+1}`,
/// falling back to the inductive chain when the closed-form one misses.
pub fn verify_key_lemma(s: u32, d: usize, mu: u32) -> Result<ChainReport> {
    require_admissible(s, d)?;
    if mu == 0 {
        return Err(Error::BadHypotheses("mu must be at least 1".into()));
    }
    let source = dilate_uniform(s, &Staircase::regular(d, mu))?;
    let target = Staircase::regular(d, s * mu + 1);
    let run = |chain: DeltaChain| -> Result<ChainReport> {
        let image = apply_chain(&chain, &source)?;
        debug_assert_eq!(image.len(), source.len());
        let missing = image.missing_from(&target)?;
        Ok(ChainReport {
            s,
            d,
            mu,
            pass: missing.is_empty(),
            missing,
            provenance: chain.provenance(),
            chain,
            image,
            target: target.clone(),
        })
    };
    let report = run(builtin_chain(s, d)?)?;
    if report.pass {
        return Ok(report);
    }
    run(induction_chain(s, d)?)
}

/// Fill-the-last-hole test: with `E = R_mu  union P minus {m}` for a set `P`
/// disjoint from `R_mu` and a member `m` of `R_mu`, the specialization of
/// `E` recovers all of `R_mu` as soon as the line of `m` meets `P`.
/// Returns whether that hypothesis holds; when it does, the conclusion is
/// checked and a violation is reported as an internal contradiction.
pub fn check_fill_hole(
    mu: u32,
    p_set: &[LatticePoint],
    m: &LatticePoint,
    dir: &Direction,
) -> Result<bool> {
    dir.require_strong()?;
    let d = dir.dim();
    let r = Staircase::regular(d, mu);
    if m.dim() != d || !r.contains_point(m) {
        return Err(Error::BadHypotheses(format!("{m} is not a point of R_{mu}")));
    }
    let mut extra: Vec<LatticePoint> = p_set.to_vec();
    extra.sort();
    extra.dedup();
    for p in &extra {
        if p.dim() != d {
            return Err(Error::BadHypotheses(format!("{p} has the wrong dimension")));
        }
        if r.contains_point(p) {
            return Err(Error::BadHypotheses(format!("{p} lies inside R_{mu}")));
        }
    }
    let line = dir.line_through(m);
    let hit = line.iter().any(|q| extra.binary_search(q).is_ok());
    if hit {
        let mut e_points: Vec<LatticePoint> = r
            .points()
            .iter()
            .filter(|p| *p != m)
            .cloned()
            .collect();
        e_points.extend(extra.iter().cloned());
        let image = delta_specialize(dir, &e_points)?;
        let covered = r
            .points()
            .iter()
            .all(|p| image.binary_search(p).is_ok());
        if !covered {
            return Err(Error::InternalContradiction(format!(
                "fill-hole hypothesis held at {m} along {:?} but R_{mu} was not recovered",
                dir.delta()
            )));
        }
    }
    Ok(hit)
}

/// Deterministic bounded search for a chain passing the verification at
/// every `mu` up to `mu_probe`. Candidate directions have entries bounded by
/// `entry_bound` and are tried in a fixed order (largest absolute entry,
/// then lexicographic); chains may be shorter than `step_budget`.
pub fn search_chain(
    s: u32,
    d: usize,
    mu_probe: u32,
    entry_bound: i64,
    step_budget: usize,
) -> Result<DeltaChain> {
    if mu_probe == 0 {
        return Err(Error::BadHypotheses("mu_probe must be at least 1".into()));
    }
    if !(2..=MAX_DIM).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    let candidates = enumerate_strong_directions(d, -entry_bound.max(1));
    let probes: Vec<(Vec<LatticePoint>, Staircase)> = (1..=mu_probe)
        .map(|mu| {
            let source = dilate_uniform(s, &Staircase::regular(d, mu))?;
            let target = Staircase::regular(d, s * mu + 1);
            Ok((source.points().to_vec(), target))
        })
        .collect::<Result<_>>()?;

    fn covered(points: &[LatticePoint], target: &Staircase) -> bool {
        target
            .points()
            .iter()
            .all(|p| points.binary_search(p).is_ok())
    }

    fn dfs(
        candidates: &[Direction],
        images: &[Vec<LatticePoint>],
        probes: &[(Vec<LatticePoint>, Staircase)],
        stack: &mut Vec<Direction>,
        budget: usize,
    ) -> Result<bool> {
        if images
            .iter()
            .zip(probes)
            .all(|(img, (_, target))| covered(img, target))
        {
            return Ok(true);
        }
        if stack.len() == budget {
            return Ok(false);
        }
        for cand in candidates {
            let mut next = Vec::with_capacity(images.len());
            for img in images {
                next.push(delta_specialize(cand, img)?);
            }
            stack.push(cand.clone());
            if dfs(candidates, &next, probes, stack, budget)? {
                return Ok(true);
            }
            stack.pop();
        }
        Ok(false)
    }

    let initial: Vec<Vec<LatticePoint>> =
        probes.iter().map(|(source, _)| source.clone()).collect();
    let mut stack = Vec::new();
    if dfs(&candidates, &initial, &probes, &mut stack, step_budget)? {
        DeltaChain::new(d, stack, Provenance::Search)
    } else {
        Err(Error::NotFound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(chain: &DeltaChain) -> Vec<Vec<i64>> {
        chain.vectors()
    }

    #[test]
    fn builtin_chain_examples() {
        assert_eq!(
            vecs(&builtin_chain(4, 2).unwrap()),
            vec![vec![1, -3], vec![-2, 1]]
        );
        assert_eq!(
            vecs(&builtin_chain(3, 3).unwrap()),
            vec![vec![1, -2, 0], vec![-3, 0, 1], vec![0, 1, -2]]
        );
        assert!(matches!(
            builtin_chain(2, 3).unwrap_err(),
            Error::UnsupportedCase { s: 2, d: 3 }
        ));
        assert!(builtin_chain(3, 2).is_err());
        assert!(builtin_chain(2, 2).is_err());
    }

    #[test]
    fn builtin_chain_length_is_dimension() {
        for (s, d) in [(2usize, 4usize), (2, 5), (3, 3), (3, 4), (4, 2), (5, 5)] {
            let chain = builtin_chain(s as u32, d).unwrap();
            assert_eq!(chain.len(), d, "chain length for s={s}, d={d}");
            assert!(chain.directions().iter().all(Direction::is_strongly_valid));
        }
    }

    #[test]
    fn apply_chain_examples() {
        let r3 = Staircase::regular(2, 3);
        let empty = DeltaChain::new(2, vec![], Provenance::Search).unwrap();
        assert_eq!(apply_chain(&empty, &r3).unwrap(), r3);

        let single = DeltaChain::new(
            2,
            vec![Direction::new(vec![1, -1]).unwrap()],
            Provenance::Search,
        )
        .unwrap();
        assert_eq!(apply_chain(&single, &r3).unwrap(), r3);

        let cube = dilate_uniform(3, &Staircase::regular(3, 1)).unwrap();
        let image = apply_chain(&builtin_chain(3, 3).unwrap(), &cube).unwrap();
        assert_eq!(image.len(), 27);
        assert!(image.contains(&Staircase::regular(3, 4)).unwrap());
    }

    #[test]
    fn key_lemma_small_instances() {
        let r = verify_key_lemma(4, 2, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.image.len(), 16);
        assert_eq!(r.target.len(), 15);

        let r = verify_key_lemma(2, 4, 1).unwrap();
        assert!(r.pass, "missing {:?}", r.missing);
    }

    #[test]
    fn key_lemma_uncovered_count_before_chain() {
        // before the chain acts, 3.R_mu misses exactly (mu+1)(mu+2)/2 points
        // of R_{3mu+1}, all with every coordinate divisible by 3
        for mu in 1..=3u32 {
            let source = dilate_uniform(3, &Staircase::regular(3, mu)).unwrap();
            let target = Staircase::regular(3, 3 * mu + 1);
            let missing = source.missing_from(&target).unwrap();
            assert_eq!(missing.len() as u32, (mu + 1) * (mu + 2) / 2);
            assert!(missing
                .iter()
                .all(|p| p.coords().iter().all(|c| c % 3 == 0)));
            let report = verify_key_lemma(3, 3, mu).unwrap();
            assert!(report.pass);
        }
    }

    #[test]
    fn induction_chain_matches_recipe() {
        assert_eq!(
            vecs(&induction_chain(4, 3).unwrap()),
            vec![vec![0, 1, -3], vec![0, -2, 1], vec![1, -1, -1]]
        );
        let c34 = induction_chain(3, 4).unwrap();
        assert_eq!(c34.len(), 4);
        assert_eq!(vecs(&c34)[3], vec![1, -1, -1, 0]);
        let c25 = induction_chain(2, 5).unwrap();
        assert_eq!(c25.len(), 5);
        assert_eq!(vecs(&c25)[4], vec![1, -1, -1, 0, 0]);
        for mu in 1..=2u32 {
            for (s, d) in [(4u32, 3usize), (3, 4), (2, 5)] {
                let chain = induction_chain(s, d).unwrap();
                let source = dilate_uniform(s, &Staircase::regular(d, mu)).unwrap();
                let image = apply_chain(&chain, &source).unwrap();
                let target = Staircase::regular(d, s * mu + 1);
                assert!(image.contains(&target).unwrap(), "s={s} d={d} mu={mu}");
            }
        }
    }

    #[test]
    fn fill_hole_examples() {
        let dir3 = Direction::new(vec![1, -1, -1]).unwrap();
        let m = LatticePoint::new(vec![2, 0, 0]);
        // (1,1,1) = m - dir, outside R_3: the hypothesis holds
        let p = vec![LatticePoint::new(vec![1, 1, 1])];
        assert!(check_fill_hole(3, &p, &m, &dir3).unwrap());
        // a point off the line of m: hypothesis fails
        let q = vec![LatticePoint::new(vec![0, 0, 3])];
        assert!(!check_fill_hole(3, &q, &m, &dir3).unwrap());

        let dir2 = Direction::new(vec![1, -1]).unwrap();
        let m2 = LatticePoint::new(vec![1, 0]);
        let p2 = vec![LatticePoint::new(vec![0, 2])];
        assert!(!check_fill_hole(2, &p2, &m2, &dir2).unwrap());

        // bad hypotheses are rejected
        assert!(check_fill_hole(3, &[LatticePoint::new(vec![0, 0, 0])], &m, &dir3).is_err());
    }

    #[test]
    fn search_finds_and_rejects() {
        let found = search_chain(4, 2, 2, 4, 2).unwrap();
        assert!(found.len() <= 2);
        assert_eq!(found.provenance(), Provenance::Search);
        for mu in 1..=3u32 {
            let source = dilate_uniform(4, &Staircase::regular(2, mu)).unwrap();
            let image = apply_chain(&found, &source).unwrap();
            assert!(image
                .contains(&Staircase::regular(2, 4 * mu + 1))
                .unwrap());
        }

        assert!(matches!(
            search_chain(2, 2, 2, 2, 2).unwrap_err(),
            Error::NotFound
        ));
        assert!(matches!(
            search_chain(4, 2, 1, 4, 0).unwrap_err(),
            Error::NotFound
        ));
    }

    #[test]
    fn chain_report_serializes_to_the_record_shape() {
        let report = verify_key_lemma(4, 2, 1).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with(r#"{"s":4,"d":2,"mu":1,"chain":[[1,-3],[-2,1]],"pass":true"#));
        assert!(json.contains(r#""provenance":"builtin-remark""#));
        assert!(json.contains(r#""missing":[]"#));
    }
}
