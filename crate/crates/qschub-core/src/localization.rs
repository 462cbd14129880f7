//! Torus fixed-point localization.
//!
//! Schubert classes restrict to torus fixed points as polynomials in the
//! simple roots; the restriction of `sigma_w` at `v` is the subword sum over
//! reduced subwords of `v` multiplying to `w`, with each chosen position
//! contributing the root moved there by the prefix. Restrictions are upper
//! triangular (`sigma_w|_v = 0` unless `w <= v`) and `sigma_x|_x` is the
//! product of the inversions of `x`, so cup products on any parabolic
//! quotient can be expanded by a triangular fixed-point recursion with exact
//! division as a built-in consistency check.
//!
//! This provides a route to structure constants that is independent of both
//! the Chevalley formula and the ring presentations, and it computes
//! degree-one three-point invariants against the point class as classical
//! constants on the adjacent two-step quotient.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::arith::{is_integer, rat, Int, Rat};
use crate::lie::{Root, RootSystem, Word};
use crate::poly::GradedPoly;
use crate::qchev;
use crate::schubert::Space;
use crate::{Error, Result};

/// Candidate-count gate for the fixed-point recursion.
pub const FIXED_POINT_CAP: usize = 20_000;

/// A root-lattice element as a linear polynomial in the simple roots.
fn linear_poly(n: usize, root: &Root) -> GradedPoly {
    let terms: Vec<(Vec<u32>, Rat)> = root
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0)
        .map(|(i, &c)| {
            let mut e = vec![0u32; n];
            e[i] = 1;
            (e, rat(c))
        })
        .collect();
    GradedPoly::from_terms(n, &terms)
}

/// Restriction `sigma_w|_v` computed along an explicitly given reduced word
/// for `v`. The result does not depend on the choice of word.
pub fn restrict_along(rs: &RootSystem, w: &[usize], v_word: &[usize]) -> Result<GradedPoly> {
    let n = rs.rank;
    let w = rs.canonical_word(w);
    if !rs.is_reduced(v_word) {
        return Err(Error::NotMinimal(format!(
            "restriction word {v_word:?} is not reduced"
        )));
    }
    let mut dp: BTreeMap<Word, GradedPoly> = BTreeMap::new();
    dp.insert(Word::new(), GradedPoly::one(n));
    for j in 0..v_word.len() {
        let a = v_word[j];
        let mut alpha = vec![0i64; n];
        alpha[a] = 1;
        let beta = linear_poly(n, &rs.apply_root(&v_word[..j], &alpha));
        let mut next = dp.clone();
        for (u, poly) in &dp {
            if u.len() >= w.len() {
                continue;
            }
            let u2 = rs.mul(u, &[a]);
            if u2.len() != u.len() + 1 {
                continue;
            }
            let add = poly.mul(&beta);
            next.entry(u2)
                .and_modify(|p| *p = p.add(&add))
                .or_insert(add);
        }
        dp = next;
    }
    Ok(dp.remove(&w).unwrap_or_else(|| GradedPoly::zero(n)))
}

/// Restriction `sigma_w|_v` of a Schubert class to a fixed point, as a
/// polynomial in the simple roots. Both arguments may be arbitrary words;
/// for a parabolic quotient any representative of the fixed-point coset
/// gives the same value.
pub fn restrict(rs: &RootSystem, w: &[usize], v: &[usize]) -> GradedPoly {
    let v = rs.canonical_word(v);
    restrict_along(rs, w, &v).expect("canonical words are reduced")
}

/// `sigma_x|_x`: the product of the inversions of `x`.
pub fn self_restriction(rs: &RootSystem, x: &[usize]) -> GradedPoly {
    let n = rs.rank;
    let x = rs.canonical_word(x);
    let mut out = GradedPoly::one(n);
    for j in 0..x.len() {
        let mut alpha = vec![0i64; n];
        alpha[x[j]] = 1;
        out = out.mul(&linear_poly(n, &rs.apply_root(&x[..j], &alpha)));
    }
    out
}

/// Minimal coset representatives for the parabolic generated by `levi`
/// (0-based nodes), up to the given length, sorted by length. Built by the
/// left descent: every representative of length `k+1` is a simple
/// reflection times one of length `k`.
pub fn parabolic_min_reps(rs: &RootSystem, levi: &[usize], max_len: usize) -> Vec<Word> {
    let mut all: Vec<Word> = vec![Word::new()];
    let mut level: BTreeSet<Word> = BTreeSet::new();
    level.insert(Word::new());
    for _ in 1..=max_len {
        let mut next: BTreeSet<Word> = BTreeSet::new();
        for y in &level {
            for i in 0..rs.rank {
                let x = rs.mul(&[i], y);
                if x.len() == y.len() + 1 && rs.min_coset_rep(&x, levi) == x {
                    next.insert(x);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

/// Expand `sigma_u * sigma_v` over the fixed points of the parabolic
/// quotient given by `levi`: returns `(x, c^x)` with polynomial
/// coefficients for every `x` in the support, by the triangular recursion
///
///   c^x = (sigma_u|_x sigma_v|_x - sum_{x' < x} c^{x'} sigma_{x'}|_x) / sigma_x|_x,
///
/// where the division must be exact. With `target` set, only the part of
/// the support below the target is computed (sufficient for reading off
/// `c^target`).
pub fn equivariant_cup(
    rs: &RootSystem,
    levi: &[usize],
    u: &[usize],
    v: &[usize],
    target: Option<&[usize]>,
    cap: usize,
) -> Result<Vec<(Word, GradedPoly)>> {
    let u = rs.min_coset_rep(u, levi);
    let v = rs.min_coset_rep(v, levi);
    let total = u.len() + v.len();
    let target = target.map(|t| rs.min_coset_rep(t, levi));
    let max_len = match &target {
        Some(t) => t.len().min(total),
        None => total,
    };
    let candidates: Vec<Word> = parabolic_min_reps(rs, levi, max_len)
        .into_iter()
        .filter(|x| {
            rs.bruhat_leq(&u, x)
                && rs.bruhat_leq(&v, x)
                && target.as_ref().map_or(true, |t| rs.bruhat_leq(x, t))
        })
        .collect();
    if candidates.len() > cap {
        return Err(Error::Unsupported(format!(
            "fixed-point recursion needs {} candidates, exceeding the capacity {cap}",
            candidates.len()
        )));
    }
    let mut out: Vec<(Word, GradedPoly)> = Vec::new();
    for x in candidates {
        let mut rhs = restrict(rs, &u, &x).mul(&restrict(rs, &v, &x));
        for (xp, c) in &out {
            if rs.bruhat_leq(xp, &x) {
                rhs = rhs.sub(&c.mul(&restrict(rs, xp, &x)));
            }
        }
        if rhs.is_zero() {
            continue;
        }
        let c = rhs.divide_exact(&self_restriction(rs, &x)).ok_or_else(|| {
            Error::CheckFailed(
                "fixed-point recursion: the restriction sum is not divisible \
                 by the self-restriction"
                    .to_string(),
            )
        })?;
        out.push((x, c));
    }
    Ok(out)
}

fn constant_int(p: &GradedPoly) -> Result<Int> {
    if p.is_zero() {
        return Ok(Int::zero());
    }
    let c = p.coeff(&vec![0; p.nvars()]);
    if *p != GradedPoly::constant(p.nvars(), c.clone()) {
        return Err(Error::CheckFailed(
            "structure constant is not a scalar".to_string(),
        ));
    }
    if !is_integer(&c) || c.is_negative() {
        return Err(Error::CheckFailed(format!(
            "structure constant {c} is not a nonnegative integer"
        )));
    }
    Ok(c.to_integer())
}

/// Classical structure constants `c_{u,v}^x` on the parabolic quotient
/// given by `levi`, for the top codimension `l(u) + l(v)`; every constant
/// is checked to be a nonnegative integer.
pub fn cup_constants(
    rs: &RootSystem,
    levi: &[usize],
    u: &[usize],
    v: &[usize],
    cap: usize,
) -> Result<BTreeMap<Word, Int>> {
    let u = rs.min_coset_rep(u, levi);
    let v = rs.min_coset_rep(v, levi);
    let total = u.len() + v.len();
    let all = equivariant_cup(rs, levi, &u, &v, None, cap)?;
    let mut out = BTreeMap::new();
    for (x, c) in all {
        if x.len() == total {
            let val = constant_int(&c)?;
            if !val.is_zero() {
                out.insert(x, val);
            }
        }
    }
    Ok(out)
}

/// The degree-one three-point invariant of `sigma_u`, `sigma_v` and the
/// point class, computed as a classical structure constant on the quotient
/// by the parabolic marked at the Dynkin neighbors of the marked node:
/// strip the final marked letter from both minimal representatives and read
/// off the coefficient of the center class `w_{0,P} w_{0,P cap Q}`.
///
/// Requires `u`, `v` nonidentity with codimensions summing to the quantum
/// degree, and `w` the point class.
pub fn gw_degree_one(space: &Space, u: usize, v: usize, w: usize) -> Result<Int> {
    let c1 = space
        .c1
        .ok_or_else(|| Error::Unsupported(format!("{}: no quantum degree", space.id)))?;
    let point = qchev::point_class(space)?;
    if w != point {
        return Err(Error::Unsupported(
            "degree-one invariants are computed against the point class".to_string(),
        ));
    }
    let uw = space.classes[u].word.clone();
    let vw = space.classes[v].word.clone();
    if uw.is_empty() || vw.is_empty() {
        return Err(Error::Unsupported(
            "degree-one invariants need nonidentity classes".to_string(),
        ));
    }
    if (uw.len() + vw.len()) as i64 != c1 {
        return Err(Error::Unsupported(format!(
            "codimensions {} + {} do not sum to the quantum degree {c1}",
            uw.len(),
            vw.len()
        )));
    }
    let rs = &space.system;
    let [marked] = space.marked.as_slice() else {
        return Err(Error::Unsupported(
            "degree-one invariants need a single marked node".to_string(),
        ));
    };
    let marked = *marked;
    if *uw.last().expect("nonempty") != marked || *vw.last().expect("nonempty") != marked {
        return Err(Error::CheckFailed(
            "a minimal representative does not end with the marked letter".to_string(),
        ));
    }
    // Quotient by the parabolic marked at the Dynkin neighbors of the
    // marked node.
    let neighbors: BTreeSet<usize> = (0..rs.rank)
        .filter(|&j| j != marked && rs.cartan[marked][j] != 0)
        .collect();
    let levi_q: Vec<usize> = (0..rs.rank).filter(|j| !neighbors.contains(j)).collect();
    let uhat = rs.canonical_word(&uw[..uw.len() - 1]);
    let vhat = rs.canonical_word(&vw[..vw.len() - 1]);
    for hat in [&uhat, &vhat] {
        if rs.min_coset_rep(hat, &levi_q) != *hat {
            return Err(Error::CheckFailed(
                "a stripped representative is not minimal for the adjacent quotient"
                    .to_string(),
            ));
        }
    }
    let w0p = rs.longest_element(&space.levi);
    let levi_r: Vec<usize> = space
        .levi
        .iter()
        .copied()
        .filter(|i| levi_q.contains(i))
        .collect();
    let w0r = rs.longest_element(&levi_r);
    let wz = rs.mul(&w0p, &w0r);
    if wz.len() as i64 != c1 - 2 {
        return Err(Error::CheckFailed(format!(
            "center class has length {} instead of {}",
            wz.len(),
            c1 - 2
        )));
    }
    if rs.min_coset_rep(&wz, &levi_q) != wz {
        return Err(Error::CheckFailed(
            "center class is not minimal for the adjacent quotient".to_string(),
        ));
    }
    if !rs.bruhat_leq(&uhat, &wz) || !rs.bruhat_leq(&vhat, &wz) {
        return Ok(Int::zero());
    }
    let all = equivariant_cup(rs, &levi_q, &uhat, &vhat, Some(&wz), FIXED_POINT_CAP)?;
    for (x, c) in all {
        if x == wz {
            return constant_int(&c);
        }
    }
    Ok(Int::zero())
}
