//! Schubert classes of G/P for a marked Dynkin node, with the root labeling
//! special to adjoint and coadjoint spaces.
//!
//! Classes are indexed by minimal coset representatives in W^P, enumerated by
//! BFS on the W-orbit of the defining weight. The class of a representative
//! `u` sits in (complex) degree `l(u)`: degree 0 is the fundamental class and
//! degree `dim` is the point class. For (co)adjoint spaces each class carries
//! the root label `u(varpi)`, and label-based operations (Bruhat rule,
//! Poincaré duality) are cross-checkable against word-based routes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::lie::{Root, RootSystem, Series, Weight, Word};
use crate::{Error, Result};

/// Homogeneity flavor of the marked weight, per the classification tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    Minuscule,
    Cominuscule,
    Adjoint,
    Coadjoint,
    Other,
}

impl core::fmt::Display for Flavor {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let s = match self {
            Flavor::Minuscule => "minuscule",
            Flavor::Cominuscule => "cominuscule",
            Flavor::Adjoint => "adjoint",
            Flavor::Coadjoint => "coadjoint",
            Flavor::Other => "other",
        };
        write!(f, "{s}")
    }
}

/// Identifies a homogeneous space G/P by series, rank, marked node (1-based
/// Bourbaki index), and flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpaceId {
    pub series: Series,
    pub rank: usize,
    /// 1-based simple-root index of the marked node. For adjoint type A the
    /// stabilizer is the non-maximal parabolic at both end nodes; the stored
    /// node is 1 and the true marked set is derived from the weight.
    pub marked_node: usize,
    pub flavor: Flavor,
}

impl core::fmt::Display for SpaceId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}{}/P{} ({})", self.series, self.rank, self.marked_node, self.flavor)
    }
}

/// Node (1-based) of the highest root in weight coordinates, when it is a
/// multiple of one fundamental weight.
pub fn adjoint_node(series: Series, rank: usize) -> Result<usize> {
    let rs = RootSystem::new(series, rank)?;
    single_node(&rs, &rs.highest_root)
        .ok_or_else(|| Error::NotCoadjointLike(format!("{series}{rank}: adjoint weight is not supported by one node")))
}

/// Node (1-based) of the highest short root, when supported on one node.
pub fn coadjoint_node(series: Series, rank: usize) -> Result<usize> {
    let rs = RootSystem::new(series, rank)?;
    single_node(&rs, &rs.highest_short_root)
        .ok_or_else(|| Error::NotCoadjointLike(format!("{series}{rank}: coadjoint weight is not supported by one node")))
}

fn single_node(rs: &RootSystem, root: &Root) -> Option<usize> {
    let wt = rs.root_to_weight(root);
    let nz: Vec<usize> = (0..rs.rank).filter(|&i| wt[i] != 0).collect();
    if nz.len() == 1 {
        Some(nz[0] + 1)
    } else {
        None
    }
}

/// The flavors a (series, rank, 1-based node) admits per the weight tables.
/// A node can admit several (e.g. the C_n node 1 weight is minuscule while
/// 2*varpi_1 is the adjoint weight); `Other` is returned when none applies.
pub fn allowed_flavors(series: Series, rank: usize, node: usize) -> Result<Vec<Flavor>> {
    if !series.rank_ok(rank) {
        return Err(Error::InvalidRank { series: series.letter(), rank });
    }
    if node == 0 || node > rank {
        return Err(Error::InvalidNode { node, rank });
    }
    let n = rank;
    let mut out = Vec::new();
    let minuscule = match series {
        Series::A => true,
        Series::B => node == n,
        Series::C => node == 1,
        Series::D => node == 1 || node == n - 1 || node == n,
        Series::E if n == 6 => node == 1 || node == 6,
        Series::E if n == 7 => node == 7,
        _ => false,
    };
    let cominuscule = match series {
        Series::A => true,
        Series::B => node == 1,
        Series::C => node == n,
        Series::D => node == 1 || node == n - 1 || node == n,
        Series::E if n == 6 => node == 1 || node == 6,
        Series::E if n == 7 => node == 7,
        _ => false,
    };
    if minuscule {
        out.push(Flavor::Minuscule);
    }
    if cominuscule {
        out.push(Flavor::Cominuscule);
    }
    if series == Series::A {
        // The adjoint weight varpi_1 + varpi_n marks both end nodes; the
        // space is stored under node 1 by convention.
        if node == 1 {
            out.push(Flavor::Adjoint);
            out.push(Flavor::Coadjoint);
        }
    } else {
        if adjoint_node(series, rank)? == node {
            out.push(Flavor::Adjoint);
        }
        if coadjoint_node(series, rank)? == node {
            out.push(Flavor::Coadjoint);
        }
    }
    if out.is_empty() {
        out.push(Flavor::Other);
    }
    Ok(out)
}

/// One Schubert class of the space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertClass {
    /// Canonical reduced word of the minimal coset representative.
    pub word: Word,
    /// `l(word)`: the complex degree (codimension) of the class.
    pub length: usize,
    /// Root label `u(varpi)` for (co)adjoint spaces, `None` otherwise.
    pub label: Option<Root>,
}

/// A homogeneous space with its enumerated Schubert basis.
#[derive(Debug, Clone)]
pub struct Space {
    pub id: SpaceId,
    pub system: RootSystem,
    /// Defining weight in fundamental-weight coordinates.
    pub varpi: Weight,
    /// Defining weight in simple-root coordinates, when it is a root
    /// (always for adjoint/coadjoint flavor).
    pub varpi_root: Option<Root>,
    /// 0-based marked nodes (where varpi is nonzero).
    pub marked: Vec<usize>,
    /// 0-based unmarked nodes (the Levi part of P).
    pub levi: Vec<usize>,
    /// Classes sorted by (degree, word).
    pub classes: Vec<SchubertClass>,
    label_index: BTreeMap<Root, usize>,
    word_index: BTreeMap<Word, usize>,
    /// Orbit weight `u(varpi)` (fundamental-weight coordinates) -> class.
    orbit_index: BTreeMap<Weight, usize>,
    /// Complex dimension of the space.
    pub dim: usize,
    /// Degree of the quantum parameter: the flavor-specific first Chern
    /// constant. `None` for the bigraded type-A adjoint case.
    pub c1: Option<i64>,
    /// Longest element of W.
    pub w0: Word,
    /// Longest element of W_P.
    pub w0_levi: Word,
}

impl Space {
    /// Build a space, enumerating all classes.
    pub fn new(id: SpaceId) -> Result<Space> {
        let allowed = allowed_flavors(id.series, id.rank, id.marked_node)?;
        if !allowed.contains(&id.flavor) {
            return Err(Error::NotCoadjointLike(format!(
                "{}{}/P{} does not carry flavor {} (it carries {:?})",
                id.series, id.rank, id.marked_node, id.flavor, allowed
            )));
        }
        let system = RootSystem::new(id.series, id.rank)?;
        let varpi_root = match id.flavor {
            Flavor::Adjoint => Some(system.highest_root.clone()),
            Flavor::Coadjoint => Some(system.highest_short_root.clone()),
            _ => None,
        };
        let varpi: Weight = match &varpi_root {
            Some(r) => system.root_to_weight(r),
            None => {
                let mut v = vec![0i64; id.rank];
                v[id.marked_node - 1] = 1;
                v
            }
        };
        let marked: Vec<usize> = (0..id.rank).filter(|&i| varpi[i] != 0).collect();
        let levi: Vec<usize> = (0..id.rank).filter(|&i| varpi[i] == 0).collect();

        // BFS on the weight orbit; each downward step s_i prepends i to the
        // minimal representative's word. Lexicographically smallest word wins
        // ties at equal BFS level.
        let mut seen: BTreeMap<Weight, Word> = BTreeMap::new();
        let mut level: BTreeMap<Weight, Word> = BTreeMap::new();
        level.insert(varpi.clone(), Vec::new());
        let mut classes: Vec<SchubertClass> = Vec::new();
        while !level.is_empty() {
            let mut next: BTreeMap<Weight, Word> = BTreeMap::new();
            for (mu, word) in &level {
                seen.insert(mu.clone(), word.clone());
                classes.push(SchubertClass {
                    word: word.clone(),
                    length: word.len(),
                    label: None,
                });
                for i in 0..id.rank {
                    if mu[i] > 0 {
                        let nu = system.reflect_wt(i, mu);
                        if seen.contains_key(&nu) {
                            continue;
                        }
                        let mut w = vec![i];
                        w.extend_from_slice(word);
                        match next.get_mut(&nu) {
                            Some(existing) => {
                                if w < *existing {
                                    *existing = w;
                                }
                            }
                            None => {
                                next.insert(nu, w);
                            }
                        }
                    }
                }
            }
            level = next;
        }
        classes.sort_by(|a, b| (a.length, &a.word).cmp(&(b.length, &b.word)));

        // Populate labels for (co)adjoint flavor.
        if let Some(theta) = &varpi_root {
            for c in classes.iter_mut() {
                c.label = Some(system.apply_root(&c.word, theta));
            }
        }
        let label_index: BTreeMap<Root, usize> = classes
            .iter()
            .enumerate()
            .filter_map(|(k, c)| c.label.clone().map(|l| (l, k)))
            .collect();
        let word_index: BTreeMap<Word, usize> =
            classes.iter().enumerate().map(|(k, c)| (c.word.clone(), k)).collect();
        let orbit_index: BTreeMap<Weight, usize> = classes
            .iter()
            .enumerate()
            .map(|(k, c)| (system.apply_wt(&c.word, &varpi), k))
            .collect();
        let dim = classes.last().expect("nonempty").length;

        let c1 = flavor_c1(&system, id.flavor, &varpi_root);
        if id.flavor == Flavor::Adjoint && id.series != Series::A {
            let c1v = c1.expect("adjoint c1");
            if dim as i64 != 2 * c1v - 1 {
                return Err(Error::CheckFailed(format!(
                    "adjoint dimension identity violated: dim={dim}, c1={c1v}"
                )));
            }
        }
        let all: Vec<usize> = (0..id.rank).collect();
        let w0 = system.longest_element(&all);
        let w0_levi = system.longest_element(&levi);
        Ok(Space {
            id,
            system,
            varpi,
            varpi_root,
            marked,
            levi,
            classes,
            label_index,
            word_index,
            orbit_index,
            dim,
            c1,
            w0,
            w0_levi,
        })
    }

    /// The adjoint space of the series (marked at the highest-root node).
    pub fn adjoint(series: Series, rank: usize) -> Result<Space> {
        let node = if series == Series::A { 1 } else { adjoint_node(series, rank)? };
        Space::new(SpaceId { series, rank, marked_node: node, flavor: Flavor::Adjoint })
    }

    /// The coadjoint space of the series (marked at the highest-short-root
    /// node). For simply-laced series this is the adjoint space again.
    pub fn coadjoint(series: Series, rank: usize) -> Result<Space> {
        let node = if series == Series::A { 1 } else { coadjoint_node(series, rank)? };
        Space::new(SpaceId { series, rank, marked_node: node, flavor: Flavor::Coadjoint })
    }

    /// Number of classes.
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Betti numbers: `betti()[k]` counts classes of degree k.
    pub fn betti(&self) -> Vec<usize> {
        let mut b = vec![0usize; self.dim + 1];
        for c in &self.classes {
            b[c.length] += 1;
        }
        b
    }

    /// Index of the class with the given minimal representative.
    pub fn class_by_word(&self, word: &[usize]) -> Result<usize> {
        let w = self.system.min_coset_rep(word, &self.levi);
        self.word_index
            .get(&w)
            .copied()
            .ok_or_else(|| Error::NotMinimal(format!("{w:?} is not a coset representative")))
    }

    /// The orbit weight `u(varpi)` of a class, in fundamental-weight
    /// coordinates.
    pub fn class_weight(&self, class: usize) -> Weight {
        self.system.apply_wt(&self.classes[class].word, &self.varpi)
    }

    /// Index of the class whose orbit weight is `mu`.
    pub fn class_by_weight(&self, mu: &Weight) -> Result<usize> {
        self.orbit_index
            .get(mu)
            .copied()
            .ok_or_else(|| Error::NotALabel(format!("{mu:?} is not in the orbit of varpi")))
    }

    /// Index of the class with the given root label ((co)adjoint only).
    pub fn class_by_label(&self, label: &Root) -> Result<usize> {
        if self.varpi_root.is_none() {
            return Err(Error::NotCoadjointLike(format!(
                "{} carries no root labels",
                self.id
            )));
        }
        self.label_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::NotALabel(format!("{label:?} does not label a class of {}", self.id)))
    }

    /// Root label of a class ((co)adjoint only).
    pub fn root_label(&self, class: usize) -> Result<&Root> {
        self.classes[class]
            .label
            .as_ref()
            .ok_or_else(|| Error::NotCoadjointLike(format!("{} carries no root labels", self.id)))
    }

    /// Length of the minimal coset representative of an arbitrary word.
    pub fn parabolic_length(&self, word: &[usize]) -> usize {
        self.system.min_coset_rep(word, &self.levi).len()
    }

    /// Poincaré dual class: representative route `w0 u w_{0,P}` minimized.
    pub fn poincare_dual(&self, class: usize) -> usize {
        let u = &self.classes[class].word;
        let w = self.system.mul(&self.system.mul(&self.w0, u), &self.w0_levi);
        let rep = self.system.min_coset_rep(&w, &self.levi);
        *self.word_index.get(&rep).expect("dual representative enumerated")
    }

    /// Poincaré dual on labels: `alpha -> w0(alpha)` (equals `-i(alpha)` for
    /// the Weyl involution `i`). (Co)adjoint only.
    pub fn poincare_dual_label(&self, label: &Root) -> Result<Root> {
        self.class_by_label(label)?;
        Ok(self.system.apply_root(&self.w0, label))
    }

    /// Support of a root (0-based nodes with nonzero coordinate, sign
    /// discarded).
    fn support(alpha: &Root) -> Vec<usize> {
        (0..alpha.len()).filter(|&i| alpha[i] != 0).collect()
    }

    /// True iff the union of the supports of `a` and `b` spans a connected
    /// subdiagram of the Dynkin diagram.
    fn supports_connected(&self, a: &Root, b: &Root) -> bool {
        let mut nodes: Vec<usize> = Self::support(a);
        for i in Self::support(b) {
            if !nodes.contains(&i) {
                nodes.push(i);
            }
        }
        if nodes.is_empty() {
            return false;
        }
        // BFS on the subdiagram induced by `nodes`.
        let mut todo = vec![nodes[0]];
        let mut reached = vec![nodes[0]];
        while let Some(i) = todo.pop() {
            for &j in &nodes {
                if !reached.contains(&j) && self.system.cartan[i][j] != 0 {
                    reached.push(j);
                    todo.push(j);
                }
            }
        }
        reached.len() == nodes.len()
    }

    /// Inclusion order on Schubert varieties via root labels:
    /// `X(alpha) ⊆ X(beta)`.
    ///
    /// Rule: labels of the same sign compare coefficientwise
    /// (`alpha <= beta`); a negative `alpha` lies below a positive `beta`
    /// precisely when the union of their supports is connected; a positive
    /// `alpha` is never below a negative `beta` (forced by dimensions).
    pub fn bruhat_leq_labels(&self, alpha: &Root, beta: &Root) -> Result<bool> {
        self.class_by_label(alpha)?;
        self.class_by_label(beta)?;
        let sa = alpha.iter().sum::<i64>().signum();
        let sb = beta.iter().sum::<i64>().signum();
        debug_assert!(sa != 0 && sb != 0);
        Ok(if sa == sb {
            (0..alpha.len()).all(|i| alpha[i] <= beta[i])
        } else if sa < 0 {
            self.supports_connected(alpha, beta)
        } else {
            false
        })
    }

    /// Independent inclusion oracle on representatives: `X(alpha) ⊆ X(beta)`
    /// iff `rep(alpha) >= rep(beta)` in Bruhat order (the label's degree is
    /// the codimension, so smaller varieties have longer representatives).
    pub fn bruhat_leq_words_oracle(&self, alpha: &Root, beta: &Root) -> Result<bool> {
        let ia = self.class_by_label(alpha)?;
        let ib = self.class_by_label(beta)?;
        Ok(self
            .system
            .bruhat_leq(&self.classes[ib].word, &self.classes[ia].word))
    }

    /// Cover relations of the inclusion order on classes, as pairs
    /// `(lower, upper)` of class indices with `deg(lower) = deg(upper) + 1`.
    pub fn hasse_covers(&self) -> Vec<(usize, usize)> {
        let mut covers = Vec::new();
        for (i, ci) in self.classes.iter().enumerate() {
            for (j, cj) in self.classes.iter().enumerate() {
                if ci.length == cj.length + 1
                    && self.system.bruhat_leq(&cj.word, &ci.word)
                {
                    covers.push((i, j));
                }
            }
        }
        covers
    }

    /// True iff `w` (any word) is Λ-minuscule for the dominant weight
    /// `lambda`: some reduced word moves the weight down by exactly one
    /// simple root at every step.
    pub fn is_lambda_minuscule(&self, word: &[usize], lambda: &Weight) -> bool {
        is_lambda_minuscule_in(&self.system, word, lambda)
    }

    /// True iff `w` is Λ-cominuscule: Λ-minuscule for the dual root system
    /// (same node indices, same coefficient vector on the dual fundamental
    /// weights).
    pub fn is_lambda_cominuscule(&self, word: &[usize], lambda: &Weight) -> bool {
        is_lambda_minuscule_in(&self.system.dual(), word, lambda)
    }

    /// Pretty label like `[1, 2, 2]` or `-[1, 0, 0]` for display.
    pub fn label_string(label: &Root) -> String {
        if label.iter().sum::<i64>() < 0 {
            let neg: Vec<i64> = label.iter().map(|x| -x).collect();
            format!("-{neg:?}")
        } else {
            format!("{label:?}")
        }
    }
}

/// Λ-minuscule test inside an explicit root system (used both directly and,
/// with the dual system, for the cominuscule variant).
pub fn is_lambda_minuscule_in(rs: &RootSystem, word: &[usize], lambda: &Weight) -> bool {
    let w = rs.canonical_word(word);
    let mut memo: BTreeMap<(Word, Weight), bool> = BTreeMap::new();
    lambda_minuscule_inner(rs, &w, lambda, &mut memo)
}

fn lambda_minuscule_inner(
    rs: &RootSystem,
    w: &Word,
    lambda: &Weight,
    memo: &mut BTreeMap<(Word, Weight), bool>,
) -> bool {
    if w.is_empty() {
        return true;
    }
    if let Some(&v) = memo.get(&(w.clone(), lambda.clone())) {
        return v;
    }
    let mut ok = false;
    for i in 0..rs.rank {
        // Candidate rightmost letter: needs <lambda, alpha_i^vee> = 1 so
        // that s_i subtracts exactly alpha_i, and must shorten w on the
        // right.
        if lambda[i] != 1 {
            continue;
        }
        let mut ws = w.clone();
        ws.push(i);
        let ws = rs.canonical_word(&ws);
        if ws.len() + 1 == w.len() {
            let moved = rs.reflect_wt(i, lambda);
            if lambda_minuscule_inner(rs, &ws, &moved, memo) {
                ok = true;
                break;
            }
        }
    }
    memo.insert((w.clone(), lambda.clone()), ok);
    ok
}

/// Flavor-specific first Chern constant from the Weyl-vector pairing:
/// `<rho, theta^vee>+1`, `<rho, theta^vee>`, `<rho, Theta^vee>+1`,
/// `<rho, Theta^vee>` for minuscule, coadjoint, cominuscule, adjoint.
fn flavor_c1(rs: &RootSystem, flavor: Flavor, varpi_root: &Option<Root>) -> Option<i64> {
    match flavor {
        Flavor::Adjoint => {
            if rs.series == Series::A {
                None
            } else {
                Some(rs.pair_rho(&rs.highest_root))
            }
        }
        Flavor::Coadjoint => {
            if rs.series == Series::A {
                None
            } else {
                Some(rs.pair_rho(&rs.highest_short_root))
            }
        }
        Flavor::Minuscule => Some(rs.pair_rho(&rs.highest_short_root) + 1),
        Flavor::Cominuscule => Some(rs.pair_rho(&rs.highest_root) + 1),
        Flavor::Other => {
            let _ = varpi_root;
            None
        }
    }
}

/// First Chern constant of G/P_k from the marked node alone: among coroots
/// `alpha^vee` with `<varpi_k, alpha^vee> = 1` and `alpha` of the same length
/// as `alpha_k`, take the coefficientwise maximum and return
/// `<rho, alpha^vee> + 1`.
pub fn c1_from_node(rs: &RootSystem, node0: usize) -> Result<i64> {
    let mut varpi = vec![0i64; rs.rank];
    varpi[node0] = 1;
    let mut simple = vec![0i64; rs.rank];
    simple[node0] = 1;
    let want_norm = rs.norm2_half(&simple);
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    for alpha in &rs.positive_roots {
        if rs.norm2_half(alpha) != want_norm {
            continue;
        }
        let cv = rs.coroot(alpha);
        if crate::arith::dot(&varpi, &cv) == 1 {
            candidates.push(cv);
        }
    }
    if candidates.is_empty() {
        return Err(Error::CheckFailed(format!("no coroot pairs to 1 at node {}", node0 + 1)));
    }
    // The unique coefficientwise maximum, if it exists.
    let best = candidates
        .iter()
        .max_by_key(|c| (c.iter().sum::<i64>(), (*c).clone()))
        .unwrap()
        .clone();
    for c in &candidates {
        if !(0..rs.rank).all(|i| c[i] <= best[i]) {
            return Err(Error::CheckFailed(format!(
                "incomparable maximal coroots at node {}",
                node0 + 1
            )));
        }
    }
    Ok(best.iter().sum::<i64>() + 1)
}
