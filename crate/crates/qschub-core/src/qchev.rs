//! Quantum hyperplane multiplication on coadjoint-like homogeneous spaces.
//!
//! The basis of the (small) quantum cohomology ring is the set of monomials
//! `sigma_w q^d` with `w` a minimal coset representative and `d >= 0`; after
//! inverting `q` the same combinatorics makes sense for every integer `d`.
//! Multiplication by the hyperplane class `h = sigma_{s_marked}` is given by
//! an exact, manifestly positive rule: `h * sigma_w q^d` is a sum over
//! "interacting" affine reflections `s_{beta + k delta}`, each contributing
//! the pairing `<w(varpi), beta^vee>` as coefficient.  Everything in this
//! module is exact integer or rational arithmetic; no floating point.
//!
//! Two independent routes to the interaction set are provided: the
//! production enumeration restricted to `k <= 1` (sound because a shift by
//! `2 delta` forces a grading jump of at least `h^vee + 1 > 2`), and a wide
//! brute-force scan used as an oracle in tests.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith::{int, Int, Rat};
use crate::lie::{Root, RootSystem, Weight};
use crate::schubert::{Flavor, Space};
use crate::{Error, Result};

/// A basis monomial `sigma_w q^d` of the quantum cohomology ring, or of its
/// localization `QH(X)[q^{-1}]` when `d < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QMonomial {
    /// Index into `Space::classes`.
    pub class: usize,
    /// Power of the quantum parameter.
    pub d: i64,
}

impl QMonomial {
    pub fn new(class: usize, d: i64) -> QMonomial {
        QMonomial { class, d }
    }
}

/// An affine reflection root `beta + k delta` with `beta` a finite root in
/// simple-root coordinates and `k >= 0` (for `k = 0`, `beta` is positive).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AffineRoot {
    pub finite: Root,
    pub k: i64,
}

/// An exact linear combination of basis monomials.
///
/// Zero coefficients are never stored, and iteration runs in `(class, d)`
/// order, so equality and serialization are deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassVector {
    terms: BTreeMap<(usize, i64), Rat>,
}

impl ClassVector {
    pub fn zero() -> ClassVector {
        ClassVector::default()
    }

    /// The vector with a single monomial of coefficient one.
    pub fn basis(m: QMonomial) -> ClassVector {
        let mut v = ClassVector::default();
        v.add(m, Rat::one());
        v
    }

    /// Add `c * m`, stripping the entry if it cancels to zero.
    pub fn add(&mut self, m: QMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = (m.class, m.d);
        let slot = self.terms.entry(key).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn plus(&self, other: &ClassVector) -> ClassVector {
        let mut out = self.clone();
        for (m, c) in other.iter_terms() {
            out.add(m, c.clone());
        }
        out
    }

    pub fn scaled(&self, c: &Rat) -> ClassVector {
        let mut out = ClassVector::zero();
        for (m, x) in self.iter_terms() {
            out.add(m, x.clone() * c.clone());
        }
        out
    }

    /// Multiply by `q^shift`.
    pub fn q_shifted(&self, shift: i64) -> ClassVector {
        let mut out = ClassVector::zero();
        for (m, x) in self.iter_terms() {
            out.add(QMonomial::new(m.class, m.d + shift), x.clone());
        }
        out
    }

    pub fn coeff(&self, m: &QMonomial) -> Rat {
        self.terms
            .get(&(m.class, m.d))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (QMonomial, &Rat)> {
        self.terms
            .iter()
            .map(|(&(class, d), c)| (QMonomial::new(class, d), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The quantum degree `c1` of the space, after checking that the marked
/// weight is a fundamental weight (the hyperplane rule below pairs orbit
/// weights against coroots and is stated for a fundamental marking).
///
/// The one family with a non-fundamental marking is the series-C adjoint
/// space, whose underlying variety is a projective space; its quantum ring
/// is covered exactly by the minuscule model `C_n/P_1`, and requesting
/// quantum data on the doubled-weight model is refused rather than served
/// with halved gradings.
pub fn quantum_c1(space: &Space) -> Result<i64> {
    let c1 = space.c1.ok_or_else(|| {
        Error::Unsupported(format!(
            "{}: no single quantum degree on this space",
            space.id
        ))
    })?;
    if space.varpi.iter().any(|&c| c > 1) {
        return Err(Error::Unsupported(format!(
            "{}: marked weight is not fundamental; use the minuscule model of \
             the same underlying variety (series C, node 1)",
            space.id
        )));
    }
    Ok(c1)
}

/// Combined grading `ell_P(w) + d * c1` of a basis monomial.
pub fn monomial_length(space: &Space, m: &QMonomial) -> Result<i64> {
    let c1 = quantum_c1(space)?;
    Ok(mlen(space, c1, m))
}

fn mlen(space: &Space, c1: i64, m: &QMonomial) -> i64 {
    space.classes[m.class].length as i64 + m.d * c1
}

/// Index of the point class (the unique class of top length).
pub fn point_class(space: &Space) -> Result<usize> {
    let n = space.num_classes();
    let top = n - 1;
    if space.classes[top].length != space.dim
        || (n >= 2 && space.classes[n - 2].length == space.dim)
    {
        return Err(Error::CheckFailed(format!(
            "{}: top cohomology is not one-dimensional",
            space.id
        )));
    }
    Ok(top)
}

/// Index of the hyperplane class (the unique class of length one).
pub fn hyperplane_class(space: &Space) -> Result<usize> {
    let ones: Vec<usize> = (0..space.num_classes())
        .filter(|&w| space.classes[w].length == 1)
        .collect();
    if ones.len() != 1 {
        return Err(Error::Unsupported(format!(
            "{}: degree-two cohomology has rank {}, no single hyperplane class",
            space.id,
            ones.len()
        )));
    }
    Ok(ones[0])
}

/// Interacting affine reflections for `h * sigma_w q^d`, enumerated over the
/// window `k <= kmax` of delta-shifts, together with their coefficients and
/// target monomials.
fn steps_in_window(
    space: &Space,
    c1: i64,
    pi: &QMonomial,
    kmax: i64,
) -> Result<Vec<(AffineRoot, i64, QMonomial)>> {
    let rs = &space.system;
    let f = space.class_weight(pi.class);
    let lp = mlen(space, c1, pi);
    let mut out = Vec::new();
    for k in 0..=kmax {
        for base in &rs.positive_roots {
            for sign in [1i64, -1] {
                // `beta + k delta` must be a positive affine root.
                if k == 0 && sign < 0 {
                    continue;
                }
                let beta: Root = base.iter().map(|x| sign * x).collect();
                let c = rs.pair(&f, &beta);
                if c <= 0 {
                    continue;
                }
                // s_{beta + k delta}(f - d delta) = s_beta(f) - (d + k c) delta.
                let bw = rs.root_to_weight(&beta);
                let f2: Weight = f.iter().zip(bw.iter()).map(|(a, b)| a - c * b).collect();
                let class2 = space.class_by_weight(&f2)?;
                let d2 = pi.d + k * c;
                let m2 = QMonomial::new(class2, d2);
                if mlen(space, c1, &m2) == lp + 1 {
                    out.push((AffineRoot { finite: beta, k }, c, m2));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The interacting affine roots of a basis monomial with their coefficients
/// `<w(varpi), beta^vee>`, using the production window `k <= 1`.
///
/// A shift by `2 delta` or more cannot interact: it raises the combined
/// grading by at least `h^vee + 1 > 2` on one step, while one step raises
/// the grading by exactly one.
pub fn interacting_roots(space: &Space, pi: &QMonomial) -> Result<Vec<(AffineRoot, i64)>> {
    let c1 = quantum_c1(space)?;
    Ok(steps_in_window(space, c1, pi, 1)?
        .into_iter()
        .map(|(g, c, _)| (g, c))
        .collect())
}

/// Reference enumeration scanning delta-shifts up to `kmax`; with
/// `kmax >= 2 dim / c1 + 3` every affine reflection that could possibly
/// raise the grading by one is covered.  Must agree with
/// `interacting_roots` — kept as an independent route for tests.
pub fn interacting_roots_exhaustive(
    space: &Space,
    pi: &QMonomial,
    kmax: i64,
) -> Result<Vec<(AffineRoot, i64)>> {
    let c1 = quantum_c1(space)?;
    Ok(steps_in_window(space, c1, pi, kmax)?
        .into_iter()
        .map(|(g, c, _)| (g, c))
        .collect())
}

/// One application of the hyperplane rule to a basis monomial:
/// `h * sigma_w q^d = sum c_gamma sigma_{w'} q^{d'}`, with contributions of
/// distinct reflections to the same target monomial aggregated.
pub fn chevalley_step(space: &Space, pi: &QMonomial) -> Result<Vec<(QMonomial, i64)>> {
    let c1 = quantum_c1(space)?;
    let mut acc: BTreeMap<QMonomial, i64> = BTreeMap::new();
    for (_, c, m2) in steps_in_window(space, c1, pi, 1)? {
        *acc.entry(m2).or_insert(0) += c;
    }
    Ok(acc.into_iter().collect())
}

/// Quantum product by the hyperplane class, extended linearly.
pub fn quantum_chevalley(space: &Space, v: &ClassVector) -> Result<ClassVector> {
    let mut out = ClassVector::zero();
    for (m, coeff) in v.iter_terms() {
        for (m2, c) in chevalley_step(space, &m)? {
            out.add(m2, coeff.clone() * Rat::from(int(c)));
        }
    }
    Ok(out)
}

/// The matrix of quantum multiplication by the hyperplane class over
/// `Z[q]`, stored column-wise: `cols[w]` lists `(w', dq, coeff)` meaning
/// that `h * sigma_w` contains `coeff * sigma_{w'} q^{dq}`.  The operator is
/// `q`-periodic, so the `d = 0` columns describe it completely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HOperator {
    pub n: usize,
    pub cols: Vec<Vec<(usize, i64, i64)>>,
}

/// Build the hyperplane multiplication operator of a space.
pub fn mh_matrix(space: &Space) -> Result<HOperator> {
    let n = space.num_classes();
    let mut cols = Vec::with_capacity(n);
    for w in 0..n {
        let col = chevalley_step(space, &QMonomial::new(w, 0))?
            .into_iter()
            .map(|(m, c)| (m.class, m.d, c))
            .collect();
        cols.push(col);
    }
    Ok(HOperator { n, cols })
}

impl HOperator {
    /// Apply the operator to an exact vector; periodicity reuses the `d = 0`
    /// column data at every `q`-level.
    pub fn apply(&self, v: &ClassVector) -> ClassVector {
        let mut out = ClassVector::zero();
        for (m, coeff) in v.iter_terms() {
            for &(w2, dq, c) in &self.cols[m.class] {
                out.add(
                    QMonomial::new(w2, m.d + dq),
                    coeff.clone() * Rat::from(int(c)),
                );
            }
        }
        out
    }

    /// Apply the classical truncation (the `q^0` part) to an integer vector
    /// indexed by classes.
    pub fn apply_classical(&self, v: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); self.n];
        for (w, col) in self.cols.iter().enumerate() {
            if v[w].is_zero() {
                continue;
            }
            for &(w2, dq, c) in col {
                if dq == 0 {
                    out[w2] += &v[w] * int(c);
                }
            }
        }
        out
    }
}

/// Degree of a Schubert class under the minimal homogeneous embedding: the
/// coefficient of the point class in `h^(dim - ell(w)) . sigma_w`, computed
/// in classical cohomology.
pub fn class_degree(space: &Space, class: usize) -> Result<Int> {
    let op = mh_matrix(space)?;
    let point = point_class(space)?;
    let steps = space.dim - space.classes[class].length;
    let mut v = vec![Int::zero(); space.num_classes()];
    v[class] = Int::one();
    for _ in 0..steps {
        v = op.apply_classical(&v);
    }
    Ok(v[point].clone())
}

/// The classical intersection number `integral of sigma_u . sigma_v . h^m`
/// with `m = dim - ell(u) - ell(v)`, computed via the hyperplane operator
/// and the duality involution.  Errors when the lengths exceed the
/// dimension (no complementary power of `h` exists).
pub fn product_degree(space: &Space, u: usize, v: usize) -> Result<Int> {
    let lu = space.classes[u].length;
    let lv = space.classes[v].length;
    if lu + lv > space.dim {
        return Err(Error::Unsupported(format!(
            "{}: lengths {} + {} exceed the dimension {}",
            space.id, lu, lv, space.dim
        )));
    }
    let m = space.dim - lu - lv;
    let op = mh_matrix(space)?;
    let mut vec_v = vec![Int::zero(); space.num_classes()];
    vec_v[v] = Int::one();
    for _ in 0..m {
        vec_v = op.apply_classical(&vec_v);
    }
    Ok(vec_v[space.poincare_dual(u)].clone())
}

/// The two sides of the weight-drop identity for a basis monomial.
///
/// Left side: the total simple-root coordinate drop from the marked weight
/// to the orbit weight (computed in the root system itself for minuscule and
/// coadjoint flavors, and in the dual root system for cominuscule and
/// adjoint flavors), plus `d` times the coordinate drop of `delta`.
///
/// Right side: the combined grading, plus a carry for the flavors whose
/// weight orbit skips height zero — `floor(l / c1)` in the adjoint case and
/// `floor((l + c1 - height(theta)) / c1)` in the coadjoint case (the phase
/// accounts for the orbit heights of the short root, which run down to
/// `-height(theta)` inside one period; the phase vanishes exactly in the
/// simply-laced case, where the two flavors coincide).
pub fn length_identity_check(space: &Space, m: &QMonomial) -> Result<(i64, i64)> {
    let c1 = quantum_c1(space)?;
    let rs = &space.system;
    let word = &space.classes[m.class].word;
    let l = mlen(space, c1, m);
    match space.id.flavor {
        Flavor::Minuscule | Flavor::Coadjoint => {
            let f = space.class_weight(m.class);
            let diff: Weight = space.varpi.iter().zip(f.iter()).map(|(a, b)| a - b).collect();
            let drop: i64 = rs.weight_to_root_coords(&diff)?.iter().sum();
            let per = RootSystem::height(&rs.highest_root) + 1;
            let lhs = drop + m.d * per;
            let rhs = if space.id.flavor == Flavor::Minuscule {
                l
            } else {
                let phase = c1 - RootSystem::height(&rs.highest_short_root);
                l + (l + phase).div_euclid(c1)
            };
            Ok((lhs, rhs))
        }
        Flavor::Cominuscule | Flavor::Adjoint => {
            let dual = rs.dual();
            let varpi_dual: Weight = if space.id.flavor == Flavor::Adjoint {
                dual.root_to_weight(&rs.coroot(&rs.highest_root))
            } else {
                let mut w = vec![0i64; rs.rank];
                w[space.id.marked_node - 1] = 1;
                w
            };
            let fd = dual.apply_wt(word, &varpi_dual);
            let diff: Weight = varpi_dual
                .iter()
                .zip(fd.iter())
                .map(|(a, b)| a - b)
                .collect();
            let drop: i64 = dual.weight_to_root_coords(&diff)?.iter().sum();
            let per = rs.pair_rho(&rs.highest_root) + 1;
            let lhs = drop + m.d * per;
            let rhs = if space.id.flavor == Flavor::Cominuscule {
                l
            } else {
                l + l.div_euclid(c1)
            };
            Ok((lhs, rhs))
        }
        Flavor::Other => Err(Error::Unsupported(format!(
            "{}: no weight-drop identity for an unflavored space",
            space.id
        ))),
    }
}

/// 1-based indices of the cominuscule nodes: the simple roots occurring
/// with coefficient one in the highest root.  These are the nodes the
/// affine diagram can be rotated onto the affine node.
pub fn cominuscule_nodes(rs: &RootSystem) -> Vec<usize> {
    (0..rs.rank)
        .filter(|&i| rs.highest_root[i] == 1)
        .map(|i| i + 1)
        .collect()
}

/// Extended Cartan matrix with index 0 the affine node (`alpha_0 = delta - Theta`).
pub fn affine_cartan(rs: &RootSystem) -> Vec<Vec<i64>> {
    let n = rs.rank;
    let mut a = vec![vec![0i64; n + 1]; n + 1];
    a[0][0] = 2;
    let theta = &rs.highest_root;
    let theta_wt = rs.root_to_weight(theta);
    for i in 0..n {
        for j in 0..n {
            a[i + 1][j + 1] = rs.cartan[i][j];
        }
        let mut alpha = vec![0i64; n];
        alpha[i] = 1;
        a[0][i + 1] = -rs.pair(&rs.root_to_weight(&alpha), theta);
        a[i + 1][0] = -rs.pair(&theta_wt, &alpha);
    }
    a
}

/// All permutations of the affine diagram that preserve the extended Cartan
/// matrix and send node 0 to `image0`, found by backtracking.
pub fn diagram_automorphisms(aff: &[Vec<i64>], image0: usize) -> Vec<Vec<usize>> {
    fn backtrack(
        aff: &[Vec<i64>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        pos: usize,
        found: &mut Vec<Vec<usize>>,
    ) {
        let n1 = aff.len();
        if pos == n1 {
            found.push(perm.clone());
            return;
        }
        for t in 0..n1 {
            if used[t] {
                continue;
            }
            let consistent = (0..pos)
                .all(|j| aff[t][perm[j]] == aff[pos][j] && aff[perm[j]][t] == aff[j][pos]);
            if consistent {
                perm[pos] = t;
                used[t] = true;
                backtrack(aff, perm, used, pos + 1, found);
                used[t] = false;
            }
        }
    }
    let n1 = aff.len();
    let mut perm = vec![usize::MAX; n1];
    let mut used = vec![false; n1];
    perm[0] = image0;
    used[image0] = true;
    let mut found = Vec::new();
    backtrack(aff, &mut perm, &mut used, 1, &mut found);
    found
}

/// A rotation of the quantum basis induced by an affine diagram rotation.
///
/// `perm` maps affine node indices to affine node indices (0 is the affine
/// node), `vc_word` is the shortest Weyl element moving the cominuscule
/// coweight to its antidominant chamber, and `vc_class` is the class of its
/// coset — the image of the unit class under the rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSymmetry {
    pub node: usize,
    pub perm: Vec<usize>,
    pub vc_word: Vec<usize>,
    pub vc_class: usize,
}

/// Construct the affine basis rotation attached to a cominuscule node.
///
/// Two independent routes are combined: the Weyl-theoretic route computes
/// `v_c = w_0 w_{0,c}` and reads the induced diagram permutation off the
/// images of the simple roots; the diagram route enumerates all extended
/// Cartan automorphisms sending node 0 to `c` by backtracking.  The former
/// must appear among the latter.
pub fn affine_symmetry(space: &Space, node: usize) -> Result<AffineSymmetry> {
    let c1 = quantum_c1(space)?;
    let rs = &space.system;
    if node == 0 || node > rs.rank {
        return Err(Error::InvalidNode {
            node,
            rank: rs.rank,
        });
    }
    if !cominuscule_nodes(rs).contains(&node) {
        return Err(Error::Unsupported(format!(
            "{}: node {} carries coefficient {} > 1 in the highest root, so the \
             affine diagram admits no rotation onto it",
            space.id,
            node,
            rs.highest_root[node - 1]
        )));
    }
    if space.varpi_root.is_none() {
        return Err(Error::NotCoadjointLike(format!(
            "{}: basis rotation is implemented on root-labeled spaces",
            space.id
        )));
    }
    // Weyl route: v_c = w_0 w_{0,c} with w_{0,c} the longest element of the
    // Levi complementary to the node.  The induced affine permutation sends
    // the marked node to the affine node (v_c(alpha_c) = -Theta) and the
    // affine node to the simple root -v_c(Theta); it need not be an
    // involution (the E6 rotations are 3-cycles).
    let levi_c: Vec<usize> = (0..rs.rank).filter(|&i| i != node - 1).collect();
    let vc = rs.mul(&space.w0, &rs.longest_element(&levi_c));
    let neg_theta: Root = rs.highest_root.iter().map(|x| -x).collect();
    let simple_index = |img: &Root| -> Option<usize> {
        (0..rs.rank).find(|&t| {
            img.iter()
                .enumerate()
                .all(|(i, &x)| x == i64::from(i == t))
        })
    };
    let mut perm = vec![usize::MAX; rs.rank + 1];
    let img0: Root = rs
        .apply_root(&vc, &rs.highest_root)
        .iter()
        .map(|x| -x)
        .collect();
    perm[0] = simple_index(&img0).map(|t| t + 1).ok_or_else(|| {
        Error::CheckFailed(format!(
            "{}: -v_c(Theta) = {:?} is not a simple root",
            space.id, img0
        ))
    })?;
    for j in 0..rs.rank {
        let mut alpha = vec![0i64; rs.rank];
        alpha[j] = 1;
        let img = rs.apply_root(&vc, &alpha);
        if img == neg_theta {
            perm[j + 1] = 0;
        } else {
            perm[j + 1] = simple_index(&img).map(|t| t + 1).ok_or_else(|| {
                Error::CheckFailed(format!(
                    "{}: v_c does not permute the affine simple roots (alpha_{} -> {:?})",
                    space.id,
                    j + 1,
                    img
                ))
            })?;
        }
    }
    if perm[node] != 0 {
        return Err(Error::CheckFailed(format!(
            "{}: v_c(alpha_{node}) is not -Theta",
            space.id
        )));
    }
    let mut seen = vec![false; rs.rank + 1];
    for &p in &perm {
        if p > rs.rank || seen[p] {
            return Err(Error::CheckFailed(format!(
                "{}: rotation images are not a permutation: {:?}",
                space.id, perm
            )));
        }
        seen[p] = true;
    }
    // Diagram route: the permutation must preserve the extended Cartan
    // matrix, and must be found independently by backtracking.
    let aff = affine_cartan(rs);
    for i in 0..=rs.rank {
        for j in 0..=rs.rank {
            if aff[perm[i]][perm[j]] != aff[i][j] {
                return Err(Error::CheckFailed(format!(
                    "{}: rotation candidate does not preserve the extended Cartan matrix",
                    space.id
                )));
            }
        }
    }
    if !diagram_automorphisms(&aff, perm[0]).contains(&perm) {
        return Err(Error::CheckFailed(format!(
            "{}: Weyl route and diagram route disagree on the rotation",
            space.id
        )));
    }
    let vc_class = space.class_by_word(&vc)?;
    if space.classes[vc_class].length as i64 != c1 {
        return Err(Error::CheckFailed(format!(
            "{}: rotation image of the unit class has length {}, expected c1 = {}",
            space.id, space.classes[vc_class].length, c1
        )));
    }
    Ok(AffineSymmetry {
        node,
        perm,
        vc_word: vc,
        vc_class,
    })
}

/// Image of a basis monomial under the rotation, computed in affine
/// coordinates: write `w(varpi) - d delta` over the affine simple roots,
/// permute the coordinates, subtract one `delta`, and read the class back
/// off its root label.
pub fn symmetry_monomial(
    space: &Space,
    sym: &AffineSymmetry,
    m: &QMonomial,
) -> Result<QMonomial> {
    let rs = &space.system;
    let f = space.root_label(m.class)?.clone();
    let theta = &rs.highest_root;
    let n = rs.rank;
    // pi = f - d delta = a_0 alpha_0 + sum_i a_i alpha_i with a_0 = -d.
    let a0 = -m.d;
    let mut a = Vec::with_capacity(n + 1);
    a.push(a0);
    for i in 0..n {
        a.push(f[i] + a0 * theta[i]);
    }
    let mut b = vec![0i64; n + 1];
    for (i, &ai) in a.iter().enumerate() {
        b[sym.perm[i]] = ai;
    }
    // Subtract delta = alpha_0 + Theta.
    b[0] -= 1;
    for i in 0..n {
        b[i + 1] -= theta[i];
    }
    let d2 = -b[0];
    let f2: Root = (0..n).map(|i| b[i + 1] - b[0] * theta[i]).collect();
    let class2 = space.class_by_label(&f2)?;
    Ok(QMonomial::new(class2, d2))
}

/// Apply the basis rotation linearly to a vector.
pub fn apply_symmetry(space: &Space, sym: &AffineSymmetry, v: &ClassVector) -> Result<ClassVector> {
    let mut out = ClassVector::zero();
    for (m, c) in v.iter_terms() {
        out.add(symmetry_monomial(space, sym, &m)?, c.clone());
    }
    Ok(out)
}

/// A finite window of the `q`-periodic Bruhat order on basis monomials: all
/// `sigma_w q^d` (with `d` ranging over all integers) whose combined grading
/// lies in `[lo, hi]`, and all hyperplane-rule transitions between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDiagram {
    /// Monomials sorted by (combined grading, class, d).
    pub nodes: Vec<QMonomial>,
    /// Combined grading of each node.
    pub lengths: Vec<i64>,
    /// `(from, to, coefficient)` index pairs into `nodes`; every edge raises
    /// the combined grading by one.
    pub edges: Vec<(usize, usize, i64)>,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Enumerate the window `lo <= ell_P(w) + d c1 <= hi` of the quantum Bruhat
/// graph.
pub fn hasse_diagram(space: &Space, lo: i64, hi: i64) -> Result<HasseDiagram> {
    let c1 = quantum_c1(space)?;
    let mut nodes = Vec::new();
    for (w, cls) in space.classes.iter().enumerate() {
        let l = cls.length as i64;
        let dmin = ceil_div(lo - l, c1);
        let dmax = (hi - l).div_euclid(c1);
        for d in dmin..=dmax {
            nodes.push(QMonomial::new(w, d));
        }
    }
    nodes.sort_by_key(|m| (mlen(space, c1, m), m.class, m.d));
    let lengths: Vec<i64> = nodes.iter().map(|m| mlen(space, c1, m)).collect();
    let index: BTreeMap<(usize, i64), usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, m)| ((m.class, m.d), i))
        .collect();
    let mut edges = Vec::new();
    for (i, m) in nodes.iter().enumerate() {
        if lengths[i] == hi {
            continue;
        }
        for (m2, c) in chevalley_step(space, m)? {
            if let Some(&j) = index.get(&(m2.class, m2.d)) {
                edges.push((i, j, c));
            }
        }
    }
    edges.sort();
    Ok(HasseDiagram {
        nodes,
        lengths,
        edges,
    })
}

fn node_id(m: &QMonomial) -> String {
    if m.d < 0 {
        format!("n{}_m{}", m.class, -m.d)
    } else {
        format!("n{}_{}", m.class, m.d)
    }
}

/// Deterministic Graphviz rendering of a Hasse window.  Fill color encodes
/// the `q`-power band; doubled borders mark the classes whose minimal word
/// is minuscule (resp. cominuscule) for the marked weight, matching the
/// flavor row of the space.
pub fn hasse_dot(space: &Space, hd: &HasseDiagram) -> String {
    const PALETTE: [&str; 6] = [
        "white",
        "lightblue",
        "lightsalmon",
        "palegreen",
        "plum",
        "khaki",
    ];
    let row_one = matches!(
        space.id.flavor,
        Flavor::Minuscule | Flavor::Coadjoint | Flavor::Other
    );
    let mut s = String::new();
    s.push_str("digraph hasse {\n");
    s.push_str("  rankdir=BT;\n");
    s.push_str("  node [shape=box, style=filled];\n");
    for m in &hd.nodes {
        let cls = &space.classes[m.class];
        let base = match &cls.label {
            Some(lab) => format!("\u{3c3}{}", Space::label_string(lab)),
            None => format!("\u{3c3}({})", RootSystem::word_string(&cls.word)),
        };
        let qs = match m.d {
            0 => String::new(),
            1 => " q".to_string(),
            d => format!(" q^{d}"),
        };
        let special = if row_one {
            space.is_lambda_minuscule(&cls.word, &space.varpi)
        } else {
            space.is_lambda_cominuscule(&cls.word, &space.varpi)
        };
        let color = PALETTE[m.d.rem_euclid(6) as usize];
        s += &format!(
            "  {} [label=\"{}{}\", fillcolor=\"{}\"{}];\n",
            node_id(m),
            base,
            qs,
            color,
            if special { ", peripheries=2" } else { "" }
        );
    }
    for &(a, b, c) in &hd.edges {
        s += &format!(
            "  {} -> {} [label=\"{}\"];\n",
            node_id(&hd.nodes[a]),
            node_id(&hd.nodes[b]),
            c
        );
    }
    s.push_str("}\n");
    s
}

/// Deterministic JSON for a class vector: `{"terms":[...]}` with terms in
/// `(class, q)` order.  Root-labeled spaces serialize the label under
/// `"root"`; other spaces serialize the 1-based reduced word under
/// `"word"`.  Coefficients are exact rational strings.
pub fn class_vector_json(space: &Space, v: &ClassVector) -> String {
    let mut s = String::from("{\"terms\":[");
    let mut first = true;
    for (m, c) in v.iter_terms() {
        if !first {
            s.push(',');
        }
        first = false;
        let cls = &space.classes[m.class];
        match &cls.label {
            Some(lab) => {
                s.push_str("{\"root\":[");
                for (i, x) in lab.iter().enumerate() {
                    if i > 0 {
                        s.push(',');
                    }
                    s += &format!("{x}");
                }
            }
            None => {
                s.push_str("{\"word\":[");
                for (i, x) in cls.word.iter().enumerate() {
                    if i > 0 {
                        s.push(',');
                    }
                    s += &format!("{}", x + 1);
                }
            }
        }
        s += &format!("],\"q\":{},\"coeff\":\"{}\"}}", m.d, c);
    }
    s.push_str("]}");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Series;
    use crate::schubert::SpaceId;

    fn space(series: Series, rank: usize, node: usize, flavor: Flavor) -> Space {
        Space::new(SpaceId {
            series,
            rank,
            marked_node: node,
            flavor,
        })
        .unwrap()
    }

    /// Spaces with a single quantum degree, covering all four flavors.
    fn catalog() -> Vec<Space> {
        vec![
            Space::adjoint(Series::G, 2).unwrap(),
            Space::coadjoint(Series::G, 2).unwrap(),
            Space::adjoint(Series::B, 3).unwrap(),
            Space::coadjoint(Series::B, 3).unwrap(),
            Space::coadjoint(Series::C, 3).unwrap(),
            Space::adjoint(Series::F, 4).unwrap(),
            Space::coadjoint(Series::F, 4).unwrap(),
            Space::adjoint(Series::D, 4).unwrap(),
            space(Series::A, 3, 1, Flavor::Minuscule),
            space(Series::A, 3, 2, Flavor::Minuscule),
            space(Series::B, 3, 3, Flavor::Minuscule),
            space(Series::C, 3, 1, Flavor::Minuscule),
            space(Series::B, 3, 1, Flavor::Cominuscule),
            space(Series::C, 3, 3, Flavor::Cominuscule),
        ]
    }

    fn step_triples(space: &Space, class: usize) -> Vec<(usize, i64, i64)> {
        chevalley_step(space, &QMonomial::new(class, 0))
            .unwrap()
            .into_iter()
            .map(|(m, c)| (m.class, m.d, c))
            .collect()
    }

    #[test]
    fn hyperplane_times_unit_is_the_hyperplane() {
        for sp in catalog() {
            let h = hyperplane_class(&sp).unwrap();
            assert_eq!(
                step_triples(&sp, 0),
                vec![(h, 0, 1)],
                "unit column of {}",
                sp.id
            );
        }
    }

    #[test]
    fn type_c_adjoint_is_redirected_to_its_projective_model() {
        let sp = Space::adjoint(Series::C, 3).unwrap();
        assert!(matches!(quantum_c1(&sp), Err(Error::Unsupported(_))));
        assert!(chevalley_step(&sp, &QMonomial::new(0, 0)).is_err());
        // The same underlying variety as a minuscule space: P^5 with q of
        // degree 6 and relation h^6 = q.
        let p5 = space(Series::C, 3, 1, Flavor::Minuscule);
        assert_eq!(quantum_c1(&p5).unwrap(), 6);
        let op = mh_matrix(&p5).unwrap();
        for w in 0..p5.num_classes() {
            let e = ClassVector::basis(QMonomial::new(w, 0));
            let mut x = e.clone();
            for _ in 0..6 {
                x = op.apply(&x);
            }
            assert_eq!(x, e.q_shifted(1), "h^6 = q on P^5, column {w}");
        }
    }

    #[test]
    fn series_a_adjoint_has_no_single_quantum_degree() {
        let sp = Space::adjoint(Series::A, 3).unwrap();
        assert!(sp.c1.is_none());
        assert!(matches!(quantum_c1(&sp), Err(Error::Unsupported(_))));
    }

    #[test]
    fn g2_adjoint_hyperplane_table() {
        let sp = Space::adjoint(Series::G, 2).unwrap();
        assert_eq!(quantum_c1(&sp).unwrap(), 3);
        assert_eq!(sp.num_classes(), 6);
        let expected: [&[(usize, i64, i64)]; 6] = [
            &[(1, 0, 1)],
            &[(2, 0, 3)],
            &[(0, 1, 1), (3, 0, 2)],
            &[(1, 1, 1), (4, 0, 3)],
            &[(2, 1, 1), (5, 0, 1)],
            &[(0, 2, 2), (3, 1, 1)],
        ];
        for (w, want) in expected.iter().enumerate() {
            assert_eq!(step_triples(&sp, w), want.to_vec(), "column {w}");
        }
    }

    #[test]
    fn g2_adjoint_operator_identity() {
        // M^6 = 18 q M^3 + 27 q^2 on the whole basis.
        let sp = Space::adjoint(Series::G, 2).unwrap();
        let op = mh_matrix(&sp).unwrap();
        for w in 0..sp.num_classes() {
            let e = ClassVector::basis(QMonomial::new(w, 0));
            let mut m3 = e.clone();
            for _ in 0..3 {
                m3 = op.apply(&m3);
            }
            let mut m6 = m3.clone();
            for _ in 0..3 {
                m6 = op.apply(&m6);
            }
            let rhs = m3
                .q_shifted(1)
                .scaled(&Rat::from(int(18)))
                .plus(&e.q_shifted(2).scaled(&Rat::from(int(27))));
            assert_eq!(m6, rhs, "column {w}");
        }
    }

    #[test]
    fn five_dimensional_quadric_has_two_agreeing_models() {
        // The coadjoint spaces of G2 and B3 present the same variety (the
        // five-dimensional quadric); their hyperplane operators must be
        // identical as matrices, including all quantum corrections.
        let g = Space::coadjoint(Series::G, 2).unwrap();
        let b = Space::coadjoint(Series::B, 3).unwrap();
        assert_eq!(quantum_c1(&g).unwrap(), 5);
        assert_eq!(quantum_c1(&b).unwrap(), 5);
        assert_eq!(g.num_classes(), 6);
        assert_eq!(b.num_classes(), 6);
        let expected: [&[(usize, i64, i64)]; 6] = [
            &[(1, 0, 1)],
            &[(2, 0, 1)],
            &[(3, 0, 2)],
            &[(4, 0, 1)],
            &[(0, 1, 1), (5, 0, 1)],
            &[(1, 1, 1)],
        ];
        for (w, want) in expected.iter().enumerate() {
            assert_eq!(step_triples(&g, w), want.to_vec(), "G2 column {w}");
            assert_eq!(step_triples(&b, w), want.to_vec(), "B3 column {w}");
        }
        // Operator identity of the odd quadric: M^6 = 4 q M.
        for sp in [&g, &b] {
            let op = mh_matrix(sp).unwrap();
            for w in 0..6 {
                let e = ClassVector::basis(QMonomial::new(w, 0));
                let mut m6 = e.clone();
                for _ in 0..6 {
                    m6 = op.apply(&m6);
                }
                let m1 = op.apply(&e);
                assert_eq!(m6, m1.q_shifted(1).scaled(&Rat::from(int(4))), "column {w}");
            }
        }
    }

    #[test]
    fn projective_space_relations() {
        // P^n from the minuscule node of series A: h^(n+1) = q.
        for (series, rank, node, power) in [
            (Series::A, 1, 1, 2usize),
            (Series::A, 3, 1, 4),
            (Series::C, 3, 1, 6),
        ] {
            let sp = space(series, rank, node, Flavor::Minuscule);
            let op = mh_matrix(&sp).unwrap();
            for w in 0..sp.num_classes() {
                let e = ClassVector::basis(QMonomial::new(w, 0));
                let mut x = e.clone();
                for _ in 0..power {
                    x = op.apply(&x);
                }
                assert_eq!(x, e.q_shifted(1));
            }
        }
    }

    #[test]
    fn window_enumeration_agrees_with_wide_scan() {
        for sp in catalog() {
            let c1 = quantum_c1(&sp).unwrap();
            let kmax = 2 * sp.dim as i64 / c1 + 3;
            for w in 0..sp.num_classes() {
                for d in 0..=2 {
                    let pi = QMonomial::new(w, d);
                    let fast = interacting_roots(&sp, &pi).unwrap();
                    let wide = interacting_roots_exhaustive(&sp, &pi, kmax).unwrap();
                    assert_eq!(fast, wide, "{} class {w} d {d}", sp.id);
                    for (g, _) in &wide {
                        assert!(g.k <= 1, "{}: interaction with k = {}", sp.id, g.k);
                    }
                }
            }
        }
    }

    #[test]
    fn interacting_roots_are_near_simple() {
        // Every interacting affine root is a simple root of the affine
        // diagram or a sum of two; for the flavors graded by the dual root
        // system the statement holds for the coroot on the dual affine
        // diagram.
        for sp in catalog() {
            let rs = &sp.system;
            let row_one = matches!(sp.id.flavor, Flavor::Minuscule | Flavor::Coadjoint);
            let theta_vee = rs.coroot(&rs.highest_root);
            for w in 0..sp.num_classes() {
                for (g, _) in interacting_roots(&sp, &QMonomial::new(w, 0)).unwrap() {
                    let coords: Vec<i64> = if row_one {
                        let mut v = vec![g.k];
                        for i in 0..rs.rank {
                            v.push(g.finite[i] + g.k * rs.highest_root[i]);
                        }
                        v
                    } else {
                        let bv = rs.coroot(&g.finite);
                        let mut v = vec![g.k];
                        for i in 0..rs.rank {
                            v.push(bv[i] + g.k * theta_vee[i]);
                        }
                        v
                    };
                    assert!(
                        coords.iter().all(|&x| x >= 0),
                        "{}: negative affine support {:?}",
                        sp.id,
                        coords
                    );
                    let ht: i64 = coords.iter().sum();
                    assert!(
                        (1..=2).contains(&ht),
                        "{}: affine height {} for {:?}",
                        sp.id,
                        ht,
                        g
                    );
                }
            }
        }
    }

    #[test]
    fn chevalley_is_graded_positive_periodic() {
        for sp in catalog() {
            let c1 = quantum_c1(&sp).unwrap();
            for w in 0..sp.num_classes() {
                let at0 = chevalley_step(&sp, &QMonomial::new(w, 0)).unwrap();
                assert!(!at0.is_empty(), "{} column {w} empty", sp.id);
                for (m2, c) in &at0 {
                    assert!(*c > 0, "{}: negative coefficient", sp.id);
                    assert_eq!(
                        sp.classes[m2.class].length as i64 + m2.d * c1,
                        sp.classes[w].length as i64 + 1,
                        "{}: grading broken in column {w}",
                        sp.id
                    );
                }
                // Periodicity: the d = 5 column is the shift of the d = 0 one.
                let at5 = chevalley_step(&sp, &QMonomial::new(w, 5)).unwrap();
                let shifted: Vec<(QMonomial, i64)> = at0
                    .iter()
                    .map(|(m2, c)| (QMonomial::new(m2.class, m2.d + 5), *c))
                    .collect();
                assert_eq!(at5, shifted, "{} column {w} not periodic", sp.id);
            }
        }
    }

    #[test]
    fn poincare_pairing_is_kronecker() {
        for sp in [
            Space::adjoint(Series::G, 2).unwrap(),
            Space::adjoint(Series::B, 3).unwrap(),
            Space::adjoint(Series::F, 4).unwrap(),
        ] {
            for u in 0..sp.num_classes() {
                for v in 0..sp.num_classes() {
                    if sp.classes[u].length + sp.classes[v].length != sp.dim {
                        continue;
                    }
                    let want = if v == sp.poincare_dual(u) { 1 } else { 0 };
                    assert_eq!(
                        product_degree(&sp, u, v).unwrap(),
                        Int::from(want),
                        "{} pairing ({u}, {v})",
                        sp.id
                    );
                }
            }
        }
    }

    #[test]
    fn point_degree_is_one_and_space_degrees_match() {
        for sp in catalog() {
            let point = point_class(&sp).unwrap();
            assert_eq!(class_degree(&sp, point).unwrap(), Int::one(), "{}", sp.id);
        }
        // Degree of the adjoint space of G2 in its minimal embedding.
        let g2 = Space::adjoint(Series::G, 2).unwrap();
        assert_eq!(class_degree(&g2, 0).unwrap(), Int::from(18));
        // The five-dimensional quadric has degree 2 in both models.
        for sp in [
            Space::coadjoint(Series::G, 2).unwrap(),
            Space::coadjoint(Series::B, 3).unwrap(),
        ] {
            assert_eq!(class_degree(&sp, 0).unwrap(), Int::from(2));
        }
        // Projective space has degree 1.
        let p3 = space(Series::A, 3, 1, Flavor::Minuscule);
        assert_eq!(class_degree(&p3, 0).unwrap(), Int::one());
    }

    #[test]
    fn e6_adjoint_printed_degrees() {
        let sp = Space::adjoint(Series::E, 6).unwrap();
        assert_eq!(sp.dim, 21);
        let degs = |l: usize| -> Vec<Int> {
            let mut v: Vec<Int> = (0..sp.num_classes())
                .filter(|&w| sp.classes[w].length == l)
                .map(|w| class_degree(&sp, w).unwrap())
                .collect();
            v.sort();
            v
        };
        assert_eq!(
            degs(6),
            vec![
                Int::from(4992),
                Int::from(6006),
                Int::from(10920),
                Int::from(10920)
            ]
        );
        assert_eq!(
            degs(7),
            vec![
                Int::from(2925),
                Int::from(2925),
                Int::from(3003),
                Int::from(3003),
                Int::from(4992)
            ]
        );
        // Pairings of the two extra ring generators (lengths 3 and 4).
        let s = sp.class_by_word(&[2, 3, 1]).unwrap();
        let t = sp.class_by_word(&[0, 2, 3, 1]).unwrap();
        assert_eq!(sp.classes[s].length, 3);
        assert_eq!(sp.classes[t].length, 4);
        assert_eq!(product_degree(&sp, s, s).unwrap(), Int::from(37752));
        assert_eq!(product_degree(&sp, s, t).unwrap(), Int::from(7917));
        assert_eq!(product_degree(&sp, t, t).unwrap(), Int::from(1638));
    }

    #[test]
    fn f4_adjoint_printed_degrees() {
        let sp = Space::adjoint(Series::F, 4).unwrap();
        assert_eq!(sp.dim, 15);
        let s42 = sp.class_by_word(&[3, 2, 1, 0]).unwrap();
        assert_eq!(sp.classes[s42].length, 4);
        assert_eq!(product_degree(&sp, s42, s42).unwrap(), Int::from(56));
        let s81 = sp.class_by_word(&[0, 1, 2, 1, 3, 2, 1, 0]).unwrap();
        let s82 = sp.class_by_word(&[1, 0, 2, 1, 3, 2, 1, 0]).unwrap();
        assert_eq!(class_degree(&sp, s81).unwrap(), Int::from(16));
        assert_eq!(class_degree(&sp, s82).unwrap(), Int::from(40));
        // The degree-4 generator s satisfies s.s = 6 s81 + 8 s82 in the
        // middle cohomology, so its self-pairing is 6*16 + 8*40.
        let s = sp.class_by_word(&[1, 2, 1, 0]).unwrap();
        assert_eq!(product_degree(&sp, s, s).unwrap(), Int::from(416));
    }

    #[test]
    fn f4_coadjoint_printed_degrees() {
        let sp = Space::coadjoint(Series::F, 4).unwrap();
        assert_eq!(sp.dim, 15);
        let s81 = sp.class_by_word(&[2, 1, 3, 0, 2, 1, 2, 3]).unwrap();
        let s82 = sp.class_by_word(&[3, 2, 1, 0, 2, 1, 2, 3]).unwrap();
        assert_eq!(sp.classes[s81].length, 8);
        assert_eq!(sp.classes[s82].length, 8);
        assert_eq!(class_degree(&sp, s81).unwrap(), Int::from(5));
        assert_eq!(class_degree(&sp, s82).unwrap(), Int::from(2));
        // The degree-4 generator s satisfies s.s = 2 s81 + 2 s82 (pairing
        // 2*5 + 2*2) and s.h^4 = 5 s81 + 4 s82 (so sigma_s has degree 33).
        let s = sp.class_by_word(&[0, 1, 2, 3]).unwrap();
        assert_eq!(sp.classes[s].length, 4);
        assert_eq!(product_degree(&sp, s, s).unwrap(), Int::from(14));
        assert_eq!(class_degree(&sp, s).unwrap(), Int::from(33));
    }

    #[test]
    fn length_identity_holds_on_all_flavors() {
        for sp in catalog() {
            for w in 0..sp.num_classes() {
                for d in 0..=2 {
                    let m = QMonomial::new(w, d);
                    let (lhs, rhs) = length_identity_check(&sp, &m).unwrap();
                    assert_eq!(lhs, rhs, "{} class {w} d {d}", sp.id);
                }
            }
        }
    }

    #[test]
    fn coadjoint_carry_needs_its_phase() {
        // On the five-dimensional quadric the class of length 3 has already
        // crossed height zero: the weight-drop is 4, not 3, so the naive
        // carry floor(l / c1) (correct for adjoint flavors) would fail.
        let sp = Space::coadjoint(Series::B, 3).unwrap();
        let c1 = quantum_c1(&sp).unwrap();
        let m = QMonomial::new(3, 0);
        let (lhs, rhs) = length_identity_check(&sp, &m).unwrap();
        assert_eq!(lhs, 4);
        assert_eq!(rhs, 4);
        let naive = 3 + (3i64).div_euclid(c1);
        assert_eq!(naive, 3);
        assert_ne!(lhs, naive);
    }

    #[test]
    fn affine_symmetry_rotates_and_commutes() {
        // B3 adjoint: unique cominuscule node 1, rotation image labeled by
        // -alpha_1.
        let b3a = Space::adjoint(Series::B, 3).unwrap();
        assert_eq!(cominuscule_nodes(&b3a.system), vec![1]);
        let sym = affine_symmetry(&b3a, 1).unwrap();
        assert_eq!(
            b3a.root_label(sym.vc_class).unwrap(),
            &vec![-1i64, 0, 0],
            "adjoint rotation image is labeled by minus the node root"
        );
        // B3 coadjoint: rotation image labeled by minus the highest short
        // root (= -alpha_1 - Theta + theta).
        let b3c = Space::coadjoint(Series::B, 3).unwrap();
        let symc = affine_symmetry(&b3c, 1).unwrap();
        assert_eq!(b3c.root_label(symc.vc_class).unwrap(), &vec![-1i64, -1, -1]);
        // C3 coadjoint: the analogous closed form -alpha_3 - Theta + theta
        // is not even a root here; the actual label is -(alpha_2 + alpha_3).
        let c3c = Space::coadjoint(Series::C, 3).unwrap();
        assert_eq!(cominuscule_nodes(&c3c.system), vec![3]);
        let not_a_root = vec![-1i64, 0, -1];
        assert!(!c3c.system.is_root(&not_a_root));
        let symx = affine_symmetry(&c3c, 3).unwrap();
        assert_eq!(c3c.root_label(symx.vc_class).unwrap(), &vec![0i64, -1, -1]);
        assert_eq!(c3c.classes[symx.vc_class].length as i64, 5);
        // Rotation sends the unit monomial to sigma_{v_c} and commutes with
        // hyperplane multiplication on every tested space.
        let d4 = Space::adjoint(Series::D, 4).unwrap();
        let e6 = Space::adjoint(Series::E, 6).unwrap();
        let mut cases: Vec<(Space, usize)> = vec![(b3a, 1), (b3c, 1), (c3c, 3)];
        for node in cominuscule_nodes(&d4.system) {
            cases.push((d4.clone(), node));
        }
        for node in cominuscule_nodes(&e6.system) {
            cases.push((e6.clone(), node));
        }
        for (sp, node) in cases {
            let sym = affine_symmetry(&sp, node).unwrap();
            let unit = symmetry_monomial(&sp, &sym, &QMonomial::new(0, 0)).unwrap();
            assert_eq!(
                unit,
                QMonomial::new(sym.vc_class, 0),
                "{} node {node}: rotation of the unit",
                sp.id
            );
            for w in 0..sp.num_classes() {
                let e = ClassVector::basis(QMonomial::new(w, 0));
                let lhs = apply_symmetry(&sp, &sym, &quantum_chevalley(&sp, &e).unwrap()).unwrap();
                let rhs = quantum_chevalley(&sp, &apply_symmetry(&sp, &sym, &e).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{} node {node} class {w}", sp.id);
            }
        }
    }

    #[test]
    fn no_rotation_on_extreme_types() {
        for sp in [
            Space::adjoint(Series::G, 2).unwrap(),
            Space::coadjoint(Series::G, 2).unwrap(),
            Space::adjoint(Series::F, 4).unwrap(),
            Space::coadjoint(Series::F, 4).unwrap(),
            Space::adjoint(Series::E, 8).unwrap(),
        ] {
            assert!(cominuscule_nodes(&sp.system).is_empty(), "{}", sp.id);
            for node in 1..=sp.system.rank {
                assert!(
                    matches!(affine_symmetry(&sp, node), Err(Error::Unsupported(_))),
                    "{} node {node}",
                    sp.id
                );
            }
            assert!(matches!(
                affine_symmetry(&sp, 0),
                Err(Error::InvalidNode { .. })
            ));
        }
    }

    #[test]
    fn hasse_windows_have_periodic_counts() {
        let g2 = Space::adjoint(Series::G, 2).unwrap();
        let wide = hasse_diagram(&g2, 0, 8).unwrap();
        assert_eq!(wide.nodes.len(), 18);
        assert_eq!(wide.edges.len(), 26);
        for &(a, b, c) in &wide.edges {
            assert_eq!(wide.lengths[b], wide.lengths[a] + 1);
            assert!(c > 0);
        }
        // A window below the fundamental one brings in negative q-powers.
        let low = hasse_diagram(&g2, 0, 2).unwrap();
        assert_eq!(low.nodes.len(), 6);
        assert_eq!(low.edges.len(), 6);
        let dot = hasse_dot(&g2, &low);
        assert!(dot.starts_with("digraph hasse {"));
        assert!(dot.contains("n3_m1"), "negative q-power node id");
        assert!(dot.contains("q^-1"));
        assert!(dot.contains("peripheries=2"));
        assert_eq!(dot, hasse_dot(&g2, &low), "deterministic rendering");
        // Empty window.
        let empty = hasse_diagram(&g2, 5, 3).unwrap();
        assert!(empty.nodes.is_empty() && empty.edges.is_empty());
        // One full period of the largest exceptional adjoint space holds one
        // copy of every class.
        let e8 = Space::adjoint(Series::E, 8).unwrap();
        let c1 = quantum_c1(&e8).unwrap();
        assert_eq!(c1, 29);
        let window = hasse_diagram(&e8, 0, c1 - 1).unwrap();
        assert_eq!(window.nodes.len(), e8.num_classes());
        assert_eq!(window.nodes.len(), 240);
    }

    #[test]
    fn f4_adjoint_quantum_onset() {
        // Quantum corrections start where the first monomial of combined
        // grading c1 = 8 becomes reachable: exactly one of the two length-7
        // columns carries `q * unit` with coefficient 1 (the rank-2 adjoint
        // space shows the same onset, at its length c1 - 1 = 2).
        let sp = Space::adjoint(Series::F, 4).unwrap();
        let op = mh_matrix(&sp).unwrap();
        let mut onset = i64::MAX;
        for (w, col) in op.cols.iter().enumerate() {
            if col.iter().any(|&(_, dq, _)| dq > 0) {
                onset = onset.min(sp.classes[w].length as i64);
            }
        }
        assert_eq!(onset, 7);
        let q_cols_at_7: Vec<Vec<(usize, i64, i64)>> = (0..sp.num_classes())
            .filter(|&w| sp.classes[w].length == 7)
            .map(|w| {
                op.cols[w]
                    .iter()
                    .copied()
                    .filter(|&(_, dq, _)| dq > 0)
                    .collect()
            })
            .filter(|c: &Vec<_>| !c.is_empty())
            .collect();
        assert_eq!(q_cols_at_7, vec![vec![(0, 1, 1)]]);
        // The point column ends the cascade with a doubled q^2 correction,
        // like every adjoint space: h * pt = q sigma_{c1} + 2 q^2 unit.
        let point = point_class(&sp).unwrap();
        let col = &op.cols[point];
        assert_eq!(col.len(), 2);
        assert_eq!(col[0], (0, 2, 2));
        let (mid, dq, c) = col[1];
        assert_eq!((sp.classes[mid].length, dq, c), (8, 1, 1));
    }

    #[test]
    fn json_export_is_deterministic_and_exact() {
        let g2 = Space::adjoint(Series::G, 2).unwrap();
        let v = quantum_chevalley(&g2, &ClassVector::basis(QMonomial::new(2, 0))).unwrap();
        assert_eq!(
            class_vector_json(&g2, &v),
            "{\"terms\":[{\"root\":[3,2],\"q\":1,\"coeff\":\"1\"},{\"root\":[0,-1],\"q\":0,\"coeff\":\"2\"}]}"
        );
        // A space without root labels serializes reduced words (1-based).
        let gr = space(Series::A, 3, 2, Flavor::Minuscule);
        let h = hyperplane_class(&gr).unwrap();
        let v2 = quantum_chevalley(&gr, &ClassVector::basis(QMonomial::new(h, 0))).unwrap();
        assert_eq!(
            class_vector_json(&gr, &v2),
            "{\"terms\":[{\"word\":[1,2],\"q\":0,\"coeff\":\"1\"},{\"word\":[3,2],\"q\":0,\"coeff\":\"1\"}]}"
        );
        assert_eq!(class_vector_json(&gr, &ClassVector::zero()), "{\"terms\":[]}");
    }
}
