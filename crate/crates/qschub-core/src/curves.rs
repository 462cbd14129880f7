//! Combinatorics of rational curves on a marked homogeneous space.
//!
//! The basic dictionary: an irreducible torus-invariant rational curve
//! through the base point corresponds to a positive root `alpha`, and its
//! degree is the pairing `<varpi, alpha^vee>` with the marked weight. Chains
//! of such curves correspond to sequences of positive roots with prescribed
//! running degrees, and the large-degree geometry is captured by a cascade
//! of pairwise orthogonal roots, each the greatest root of the subsystem
//! orthogonal to the previous ones. The cascade word sweeps the whole space,
//! its total degree predicts the minimal degree connecting two general
//! points, and a budgeted cascade predicts the dimension of the locus swept
//! by degree-`d` curves through two general points.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::lie::{Root, RootSystem, Weight, Word};
use crate::qchev::quantum_c1;
use crate::schubert::Space;
use crate::{Error, Result};

/// Degree of the irreducible torus-invariant curve through the base point in
/// the direction of `-alpha`: the pairing `<varpi, alpha^vee>`.
pub fn curve_degree(rs: &RootSystem, varpi: &Weight, alpha: &Root) -> i64 {
    rs.pair(varpi, alpha)
}

/// True iff `a >= b` coefficientwise in simple-root coordinates.
fn dominates(a: &Root, b: &Root) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x >= y)
}

/// `<a, b^vee>`: the Cartan pairing of two roots. Vanishing is symmetric in
/// `a` and `b`, which is all the cascade needs.
fn root_pair(rs: &RootSystem, a: &Root, b: &Root) -> i64 {
    rs.pair(&rs.root_to_weight(a), b)
}

/// The coefficientwise-greatest positive root whose curve degree is at most
/// `d`. Errors when no root qualifies, or when the qualifying roots only
/// have several incomparable maximal elements.
pub fn max_root_of_degree_at_most(rs: &RootSystem, varpi: &Weight, d: i64) -> Result<Root> {
    filtered_max_root(rs, varpi, &rs.positive_roots, Some(d))
}

fn filtered_max_root(
    rs: &RootSystem,
    varpi: &Weight,
    candidates: &[Root],
    d: Option<i64>,
) -> Result<Root> {
    let pool: Vec<&Root> = candidates
        .iter()
        .filter(|a| d.map_or(true, |d| curve_degree(rs, varpi, a) <= d))
        .collect();
    let bound = match d {
        Some(d) => format!("of degree at most {d}"),
        None => String::from("of any degree"),
    };
    if pool.is_empty() {
        return Err(Error::CheckFailed(format!("no positive root {bound}")));
    }
    pool.iter()
        .find(|a| pool.iter().all(|b| dominates(a, b)))
        .map(|a| (*a).clone())
        .ok_or_else(|| {
            Error::CheckFailed(format!(
                "the roots {bound} have no coefficientwise greatest element"
            ))
        })
}

/// Connected component of `roots` containing `seed`, where two roots are
/// adjacent when not orthogonal. On the positive half of a closed subsystem
/// this recovers the irreducible component, because every positive root is
/// non-orthogonal to some root of its own component.
fn component_containing(rs: &RootSystem, roots: &[Root], seed: &Root) -> Vec<Root> {
    let n = roots.len();
    let seed_at = roots
        .iter()
        .position(|r| r == seed)
        .expect("seed root lies in the subsystem");
    let mut member = vec![false; n];
    member[seed_at] = true;
    let mut queue = vec![seed_at];
    while let Some(i) = queue.pop() {
        for j in 0..n {
            if !member[j] && root_pair(rs, &roots[i], &roots[j]) != 0 {
                member[j] = true;
                queue.push(j);
            }
        }
    }
    roots
        .iter()
        .zip(member)
        .filter(|(_, m)| *m)
        .map(|(r, _)| r.clone())
        .collect()
}

/// A sequence of pairwise orthogonal step roots with their curve degrees.
///
/// Step `i+1` is the greatest root, within the remaining degree budget, of
/// the irreducible component through the marked simple root of the subsystem
/// orthogonal to all previous steps. The recorded degrees satisfy
/// `d_i = <varpi, theta_i^vee> >= 1`, the roots are coefficientwise weakly
/// decreasing, and the product of the step reflections (they commute) moves
/// the marked weight to `varpi - sum d_i theta_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cascade {
    /// First marked node (1-based). Degrees are measured against the weight
    /// the cascade was seeded with (the node's fundamental weight for
    /// [`cascade`], the space's marked weight for [`space_cascade`]).
    pub node: usize,
    /// `(theta_i, d_i)` in construction order.
    pub steps: Vec<(Root, i64)>,
    /// Total-degree budget the cascade was built with (`None` = unbounded).
    pub budget: Option<i64>,
}

impl Cascade {
    /// Sum of the step degrees. For the unbounded cascade this is the
    /// predicted minimal total degree of a connecting rational curve between
    /// two general points of the space.
    pub fn total_degree(&self) -> i64 {
        self.steps.iter().map(|(_, d)| d).sum()
    }

    /// `sum d_i theta_i` in simple-root coordinates: the drop
    /// `varpi - w(varpi)` of the cascade word applied to the marked weight.
    pub fn weighted_root_sum(&self, rank: usize) -> Vec<i64> {
        let mut s = vec![0i64; rank];
        for (t, d) in &self.steps {
            for i in 0..rank {
                s[i] += d * t[i];
            }
        }
        s
    }

    /// The product of the step reflections as a canonical reduced word. The
    /// steps are orthogonal, so the factor order does not matter.
    pub fn word(&self, rs: &RootSystem) -> Word {
        let mut w = Word::new();
        for (t, _) in &self.steps {
            let r = rs.reflection_word(t).expect("cascade steps are roots");
            w = rs.mul(&w, &r);
        }
        w
    }
}

/// Run the orthogonal cascade for the marked node, with an optional total
/// degree budget. The construction stops when the budget is exhausted, when
/// the marked simple root is no longer orthogonal to the last step, or when
/// the orthogonal subsystem is empty.
pub fn cascade(rs: &RootSystem, node: usize, budget: Option<i64>) -> Result<Cascade> {
    if node == 0 || node > rs.rank {
        return Err(Error::InvalidNode { node, rank: rs.rank });
    }
    let mut varpi = vec![0i64; rs.rank];
    varpi[node - 1] = 1;
    weight_cascade(rs, &varpi, budget)
}

/// Run the cascade seeded with an arbitrary nonzero dominant weight. The
/// marked simple roots are the nodes where `varpi` is nonzero; the cascade
/// continues only while every marked simple root stays in one irreducible
/// component of the orthogonal subsystem. For a fundamental weight this is
/// exactly [`cascade`]; the doubled series-C adjoint weight `2*varpi_1` and
/// the two-node series-A adjoint weight `varpi_1 + varpi_n` stop after the
/// highest-root step of degree 2.
pub fn weight_cascade(rs: &RootSystem, varpi: &Weight, budget: Option<i64>) -> Result<Cascade> {
    if varpi.len() != rs.rank || varpi.iter().any(|&c| c < 0) || varpi.iter().all(|&c| c == 0) {
        return Err(Error::NotALabel(format!(
            "cascade weight {varpi:?} is not a nonzero dominant weight of rank {}",
            rs.rank
        )));
    }
    // Marked simple roots in root coordinates (unit vectors).
    let marked_alphas: Vec<Root> = (0..rs.rank)
        .filter(|&i| varpi[i] != 0)
        .map(|i| {
            let mut a = vec![0i64; rs.rank];
            a[i] = 1;
            a
        })
        .collect();
    let node = (0..rs.rank).find(|&i| varpi[i] != 0).expect("nonzero weight") + 1;
    let mut remaining = budget;
    let mut current: Vec<Root> = rs.positive_roots.clone();
    let mut steps: Vec<(Root, i64)> = Vec::new();
    loop {
        if current.is_empty() {
            break;
        }
        if let Some(b) = remaining {
            if b <= 0 {
                break;
            }
        }
        let theta = filtered_max_root(rs, varpi, &current, remaining)?;
        let d = curve_degree(rs, varpi, &theta);
        steps.push((theta.clone(), d));
        if let Some(b) = remaining {
            remaining = Some(b - d);
        }
        let orthogonal: Vec<Root> = current
            .iter()
            .filter(|a| root_pair(rs, a, &theta) == 0)
            .cloned()
            .collect();
        if marked_alphas.iter().any(|a| !orthogonal.contains(a)) {
            break;
        }
        current = component_containing(rs, &orthogonal, &marked_alphas[0]);
        if marked_alphas.iter().any(|a| !current.contains(a)) {
            break;
        }
    }
    Ok(Cascade { node, steps, budget })
}

/// Run the cascade of a space from its marked weight. Single-node spaces
/// reduce to [`cascade`] at the marked node; the series-A and series-C
/// adjoint models run with their non-fundamental weights, whose degrees are
/// the ones grading the quantum parameter.
pub fn space_cascade(space: &Space, budget: Option<i64>) -> Result<Cascade> {
    weight_cascade(&space.system, &space.varpi, budget)
}

/// True iff the Schubert variety of `word` is the whole space: its parabolic
/// length reaches the dimension, equivalently the word moves the marked
/// weight to the lowest weight of the orbit. Both criteria are evaluated.
pub fn word_covers_space(space: &Space, word: &[usize]) -> bool {
    let by_length = space.parabolic_length(word) == space.dim;
    let lowest = space.system.apply_wt(&space.w0, &space.varpi);
    let by_weight = space.system.apply_wt(word, &space.varpi) == lowest;
    by_length && by_weight
}

/// A chain of irreducible torus-invariant rational curves from the base
/// point: component `m` folds along the positive root `roots[m]` with degree
/// `degrees[m] = <lambda_m, roots[m]^vee>`, where `lambda_m` is the weight
/// reached by the previous components. The chain ends at the weight
/// `varpi - sum degrees[m] * roots[m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    /// Reflection roots, first component first.
    pub roots: Vec<Root>,
    /// Component degrees.
    pub degrees: Vec<i64>,
}

impl Chain {
    /// Sum of the component degrees.
    pub fn total_degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    /// Weight of the chain's end point.
    pub fn endpoint(&self, rs: &RootSystem, varpi: &Weight) -> Weight {
        let mut lam = varpi.clone();
        for (alpha, d) in self.roots.iter().zip(&self.degrees) {
            let aw = rs.root_to_weight(alpha);
            for i in 0..rs.rank {
                lam[i] -= d * aw[i];
            }
        }
        lam
    }

    /// Check the degree condition of every component against the running
    /// weight from `varpi`.
    pub fn verify(&self, rs: &RootSystem, varpi: &Weight) -> Result<()> {
        if self.roots.len() != self.degrees.len() {
            return Err(Error::CheckFailed(format!(
                "chain with {} roots but {} degrees",
                self.roots.len(),
                self.degrees.len()
            )));
        }
        let mut lam = varpi.clone();
        for (m, (alpha, &d)) in self.roots.iter().zip(&self.degrees).enumerate() {
            if !rs.is_positive_root(alpha) {
                return Err(Error::NotALabel(format!(
                    "chain component {m}: {alpha:?} is not a positive root"
                )));
            }
            let got = rs.pair(&lam, alpha);
            if got != d {
                return Err(Error::CheckFailed(format!(
                    "chain component {m}: running degree {got}, recorded {d}"
                )));
            }
            let aw = rs.root_to_weight(alpha);
            for i in 0..rs.rank {
                lam[i] -= d * aw[i];
            }
        }
        Ok(())
    }
}

/// All chains from the base point with the given component degrees, ending
/// at `endpoint` (weight coordinates). Depth-first over positive roots in
/// the fixed height order, so the result order is deterministic.
pub fn enumerate_chains(space: &Space, degrees: &[i64], endpoint: &Weight) -> Vec<Chain> {
    chains_from(&space.system, &space.varpi, degrees, Some(endpoint))
}

/// All chains from the base point with the given component degrees,
/// regardless of end point.
pub fn enumerate_all_chains(space: &Space, degrees: &[i64]) -> Vec<Chain> {
    chains_from(&space.system, &space.varpi, degrees, None)
}

fn chains_from(
    rs: &RootSystem,
    varpi: &Weight,
    degrees: &[i64],
    endpoint: Option<&Weight>,
) -> Vec<Chain> {
    let mut out = Vec::new();
    let mut prefix: Vec<Root> = Vec::new();
    chain_dfs(rs, varpi.clone(), degrees, endpoint, &mut prefix, &mut out);
    out
}

fn chain_dfs(
    rs: &RootSystem,
    lambda: Weight,
    degrees: &[i64],
    endpoint: Option<&Weight>,
    prefix: &mut Vec<Root>,
    out: &mut Vec<Chain>,
) {
    let m = prefix.len();
    if m == degrees.len() {
        if endpoint.is_none_or(|e| *e == lambda) {
            out.push(Chain {
                roots: prefix.clone(),
                degrees: degrees.to_vec(),
            });
        }
        return;
    }
    for alpha in &rs.positive_roots {
        if rs.pair(&lambda, alpha) == degrees[m] {
            let aw = rs.root_to_weight(alpha);
            let next: Weight = (0..rs.rank).map(|i| lambda[i] - degrees[m] * aw[i]).collect();
            prefix.push(alpha.clone());
            chain_dfs(rs, next, degrees, endpoint, prefix, out);
            prefix.pop();
        }
    }
}

/// All chains of any shape (any number of components, each of positive
/// degree) with the given total degree and end point. When exactly one chain
/// comes back, the curve of that degree through the two points is unique:
/// the torus orbit of a non-invariant curve would otherwise produce a
/// positive-dimensional family with a second fixed point.
pub fn chains_with_total_degree(space: &Space, total: i64, endpoint: &Weight) -> Vec<Chain> {
    let mut out = Vec::new();
    let mut shape: Vec<i64> = Vec::new();
    compositions(total, &mut shape, &mut |shape| {
        out.extend(enumerate_chains(space, shape, endpoint));
    });
    out
}

/// Visit the compositions of `left` into positive parts, first part smallest
/// first.
fn compositions(left: i64, shape: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if left == 0 {
        f(shape);
        return;
    }
    for part in 1..=left {
        shape.push(part);
        compositions(left - part, shape, f);
        shape.pop();
    }
}

/// Dimension bookkeeping for degree-`degree` rational curves through two
/// general points.
///
/// The degree-`degree` chains from one point sweep the Schubert variety of
/// the budgeted cascade word, of dimension `span_dim`; the identity
/// `span_dim + locus_dim + delta3 = c1 * degree` then predicts the dimension
/// of the locus swept by the curves through both points, where `delta3` is
/// the dimension of the family of such curves through three general points
/// of the locus (0 when that family is finite).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocusPrediction {
    /// Total curve degree `d`.
    pub degree: i64,
    /// The budgeted cascade whose word spans the degree-`d` sweep.
    pub cascade: Cascade,
    /// Parabolic length of the cascade word: dimension of the sweep of
    /// degree-`d` curves from one point.
    pub span_dim: i64,
    /// Predicted dimension of the locus of points on degree-`d` curves
    /// through two general points of the sweep.
    pub locus_dim: i64,
    /// True when `degree` exceeds the pairing of the marked weight with the
    /// highest coroot (the degree of the highest-root step), beyond which
    /// the identification of the sweep with a Schubert variety is not
    /// proved by the unique-chain argument.
    pub conjectural: bool,
}

/// Predict the two-point locus dimension in degree `d`, given the
/// three-point fiber dimension `delta3`. Errors when the inputs force a
/// negative dimension or when the space has no single quantum degree.
pub fn predict_locus(space: &Space, d: i64, delta3: i64) -> Result<LocusPrediction> {
    let c1 = quantum_c1(space)?;
    if d < 0 || delta3 < 0 {
        return Err(Error::Unsupported(format!(
            "negative degree or fiber dimension (d = {d}, delta3 = {delta3})"
        )));
    }
    let casc = space_cascade(space, Some(d))?;
    let word = casc.word(&space.system);
    let span_dim = space.parabolic_length(&word) as i64;
    let locus_dim = c1 * d - span_dim - delta3;
    if locus_dim < 0 {
        return Err(Error::CheckFailed(format!(
            "{}: degree {d} with delta3 = {delta3} predicts a negative locus dimension {locus_dim}",
            space.id
        )));
    }
    let proved = d <= curve_degree(&space.system, &space.varpi, &space.system.highest_root);
    Ok(LocusPrediction {
        degree: d,
        cascade: casc,
        span_dim,
        locus_dim,
        conjectural: !proved,
    })
}
