//! Root systems of the finite series A–G in Bourbaki numbering.
//!
//! Conventions used throughout the crate:
//! - `cartan[i][j] = <alpha_j, alpha_i^vee>` (rows indexed by coroots);
//! - roots are stored in simple-root coordinates (integer vectors);
//! - weights are stored in fundamental-weight coordinates (integer vectors);
//! - Weyl elements are words in 0-based simple-reflection indices, applied
//!   right to left: `(s_a s_b)(v) = s_a(s_b(v))`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{dot, vec_sub};
use crate::{Error, Result};

/// Cartan series name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    /// Parse a one-letter series name.
    pub fn parse(s: &str) -> Option<Series> {
        match s {
            "A" | "a" => Some(Series::A),
            "B" | "b" => Some(Series::B),
            "C" | "c" => Some(Series::C),
            "D" | "d" => Some(Series::D),
            "E" | "e" => Some(Series::E),
            "F" | "f" => Some(Series::F),
            "G" | "g" => Some(Series::G),
            _ => None,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::E => "E",
            Series::F => "F",
            Series::G => "G",
        }
    }

    /// Valid rank range for the series.
    pub fn rank_ok(self, n: usize) -> bool {
        match self {
            Series::A => n >= 1,
            Series::B | Series::C => n >= 2,
            Series::D => n >= 3,
            Series::E => (6..=8).contains(&n),
            Series::F => n == 4,
            Series::G => n == 2,
        }
    }
}

impl core::fmt::Display for Series {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A root in simple-root coordinates.
pub type Root = Vec<i64>;
/// A weight in fundamental-weight coordinates.
pub type Weight = Vec<i64>;
/// A Weyl-group word: 0-based simple-reflection indices, applied right to left.
pub type Word = Vec<usize>;

/// Bourbaki Cartan matrix for the given series and rank, in the convention
/// `cartan[i][j] = <alpha_j, alpha_i^vee>`.
fn bourbaki_cartan(series: Series, n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match series {
        Series::A => {
            for i in 0..n.saturating_sub(1) {
                link(&mut c, i, i + 1);
            }
        }
        Series::B => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            // alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2.
            c[n - 1][n - 2] = -2;
        }
        Series::C => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            // alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2.
            c[n - 2][n - 1] = -2;
        }
        Series::D => {
            // Chain 1..n-2, with both n-1 and n attached to n-2.
            for i in 0..n - 3 {
                link(&mut c, i, i + 1);
            }
            link(&mut c, n - 3, n - 2);
            link(&mut c, n - 3, n - 1);
        }
        Series::E => {
            // Chain 1-3-4-5-6(-7(-8)), node 2 attached to node 4.
            link(&mut c, 0, 2);
            for i in 2..n - 1 {
                link(&mut c, i, i + 1);
            }
            link(&mut c, 1, 3);
        }
        Series::F => {
            link(&mut c, 0, 1);
            link(&mut c, 1, 2);
            link(&mut c, 2, 3);
            // alpha_3, alpha_4 short: <alpha_2, alpha_3^vee> = -2.
            c[2][1] = -2;
        }
        Series::G => {
            // alpha_1 short, alpha_2 long: <alpha_2, alpha_1^vee> = -3.
            link(&mut c, 0, 1);
            c[0][1] = -3;
        }
    }
    c
}

/// An irreducible (or parabolic sub-) root system with precomputed positive
/// roots, coroots, and norm data.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub series: Series,
    pub rank: usize,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    pub cartan: Vec<Vec<i64>>,
    /// Minimal symmetrizers: `d[i] * cartan[i][j] = d[j] * cartan[j][i]`,
    /// with `d[i] = (alpha_i, alpha_i)/2` normalized so short roots get 1.
    pub dsym: Vec<i64>,
    /// All positive roots, sorted by (height, coordinates).
    pub positive_roots: Vec<Root>,
    index_of: BTreeMap<Root, usize>,
    /// Highest root Theta.
    pub highest_root: Root,
    /// Highest short root theta (equals Theta in the simply-laced case).
    pub highest_short_root: Root,
}

impl RootSystem {
    /// Build the root system for a Bourbaki series and rank.
    pub fn new(series: Series, rank: usize) -> Result<RootSystem> {
        if !series.rank_ok(rank) {
            return Err(Error::InvalidRank { series: series.letter(), rank });
        }
        Ok(Self::from_cartan(series, bourbaki_cartan(series, rank)))
    }

    /// Build a root system from an explicit Cartan matrix (used for dual
    /// systems and orthogonal subsystems). The matrix must be a valid
    /// finite-type generalized Cartan matrix.
    pub fn from_cartan(series: Series, cartan: Vec<Vec<i64>>) -> RootSystem {
        let rank = cartan.len();
        let dsym = symmetrizers(&cartan);
        // Closure generation: orbit of the simple roots under the simple
        // reflections, keeping positive roots only.
        let mut set: BTreeMap<Root, ()> = BTreeMap::new();
        let mut queue: Vec<Root> = Vec::new();
        for i in 0..rank {
            let mut a = vec![0i64; rank];
            a[i] = 1;
            set.insert(a.clone(), ());
            queue.push(a);
        }
        while let Some(a) = queue.pop() {
            for i in 0..rank {
                let p = pairing_root(&cartan, &a, i);
                let mut b = a.clone();
                b[i] -= p;
                if b.iter().all(|&x| x >= 0) && !set.contains_key(&b) {
                    set.insert(b.clone(), ());
                    queue.push(b);
                }
            }
        }
        let mut positive_roots: Vec<Root> = set.into_keys().collect();
        positive_roots.sort_by_key(|a| (a.iter().sum::<i64>(), a.clone()));
        let index_of: BTreeMap<Root, usize> =
            positive_roots.iter().cloned().enumerate().map(|(k, a)| (a, k)).collect();
        let highest_root = positive_roots
            .last()
            .expect("nonempty root system")
            .clone();
        // Norm of a root via the symmetrized form; short roots have d = 1.
        let norm2_half = |a: &Root| -> i64 {
            let mut s = 0i64;
            for i in 0..rank {
                for j in 0..rank {
                    s += a[i] * a[j] * dsym[i] * cartan[i][j];
                }
            }
            s / 2
        };
        let min_d = positive_roots.iter().map(norm2_half).min().unwrap();
        let highest_short_root = positive_roots
            .iter()
            .filter(|a| norm2_half(a) == min_d)
            .max_by_key(|a| (a.iter().sum::<i64>(), (*a).clone()))
            .unwrap()
            .clone();
        RootSystem {
            series,
            rank,
            cartan,
            dsym,
            positive_roots,
            index_of,
            highest_root,
            highest_short_root,
        }
    }

    /// The dual root system (transposed Cartan matrix). The bijection
    /// `alpha -> alpha^vee` sends a root with coordinates `c` to the dual
    /// root with coordinates [`RootSystem::coroot`]` (c)`.
    pub fn dual(&self) -> RootSystem {
        let n = self.rank;
        let mut t = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                t[i][j] = self.cartan[j][i];
            }
        }
        let series = match self.series {
            Series::B => Series::C,
            Series::C => Series::B,
            s => s,
        };
        RootSystem::from_cartan(series, t)
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// True iff `a` (simple-root coordinates) is a positive root.
    pub fn is_positive_root(&self, a: &Root) -> bool {
        self.index_of.contains_key(a)
    }

    /// True iff `a` or `-a` is a positive root.
    pub fn is_root(&self, a: &Root) -> bool {
        self.is_positive_root(a) || self.is_positive_root(&a.iter().map(|x| -x).collect())
    }

    /// Height (coordinate sum) of a root-lattice element: its pairing with
    /// the dual Weyl vector.
    pub fn height(a: &Root) -> i64 {
        a.iter().sum()
    }

    /// `(alpha, alpha)/2` in the normalization where short roots get 1.
    pub fn norm2_half(&self, a: &Root) -> i64 {
        let mut s = 0i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] * a[j] * self.dsym[i] * self.cartan[i][j];
            }
        }
        s / 2
    }

    /// True iff the root is long (maximal norm among roots).
    pub fn is_long(&self, a: &Root) -> bool {
        self.norm2_half(a) == self.norm2_half(&self.highest_root)
    }

    /// Coordinates of `alpha^vee` over the simple coroots:
    /// `c_i^vee = c_i d_i / d_alpha`.
    pub fn coroot(&self, a: &Root) -> Vec<i64> {
        let da = self.norm2_half(a);
        let mut c = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let num = a[i] * self.dsym[i];
            debug_assert_eq!(num % da, 0, "coroot coordinates must be integral");
            c.push(num / da);
        }
        c
    }

    /// `<lambda, alpha^vee>` for a weight in fundamental-weight coordinates
    /// and a root in simple-root coordinates.
    pub fn pair(&self, lambda: &Weight, alpha: &Root) -> i64 {
        dot(lambda, &self.coroot(alpha))
    }

    /// `<alpha, alpha_i^vee>` for a root-lattice element.
    pub fn pair_simple_coroot(&self, alpha: &Root, i: usize) -> i64 {
        pairing_root(&self.cartan, alpha, i)
    }

    /// Fundamental-weight coordinates of a root-lattice element:
    /// `(<alpha, alpha_i^vee>)_i`.
    pub fn root_to_weight(&self, alpha: &Root) -> Weight {
        (0..self.rank).map(|i| pairing_root(&self.cartan, alpha, i)).collect()
    }

    /// The Weyl vector rho (all fundamental-weight coordinates 1).
    pub fn rho(&self) -> Weight {
        vec![1; self.rank]
    }

    /// Simple-root coordinates of a root-lattice element given in
    /// fundamental-weight coordinates (exact integral solve of `C x = wt`).
    pub fn weight_to_root_coords(&self, lambda: &Weight) -> Result<Vec<i64>> {
        use crate::arith::{int, Rat};
        let n = self.rank;
        // Augmented matrix [C | lambda] with C[j][i] = <alpha_i, alpha_j^vee>.
        let mut m: Vec<Vec<Rat>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| Rat::from(int(self.cartan[j][i])))
                    .chain(core::iter::once(Rat::from(int(lambda[j]))))
                    .collect()
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| m[r][col] != Rat::from(int(0)))
                .ok_or_else(|| Error::CheckFailed(String::from("singular Cartan matrix")))?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= p.clone();
            }
            for r in 0..n {
                if r != col && m[r][col] != Rat::from(int(0)) {
                    let f = m[r][col].clone();
                    for c in col..=n {
                        let sub = f.clone() * m[col][c].clone();
                        m[r][c] -= sub;
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(n);
        for row in m.iter().take(n) {
            let v = &row[n];
            if !v.is_integer() {
                return Err(Error::NotALabel(format!(
                    "{lambda:?} is not in the root lattice"
                )));
            }
            out.push(i64::try_from(v.to_integer()).map_err(|_| {
                Error::CheckFailed(String::from("root coordinate overflow"))
            })?);
        }
        Ok(out)
    }

    /// `<rho, alpha^vee>`: the height of the coroot.
    pub fn pair_rho(&self, alpha: &Root) -> i64 {
        self.coroot(alpha).iter().sum()
    }

    /// Simple reflection on fundamental-weight coordinates.
    pub fn reflect_wt(&self, i: usize, lambda: &Weight) -> Weight {
        let c = lambda[i];
        // alpha_i in weight coordinates is the i-th column of the Cartan
        // matrix read as <alpha_i, alpha_j^vee>.
        let mut out = lambda.clone();
        for j in 0..self.rank {
            out[j] -= c * self.cartan[j][i];
        }
        out
    }

    /// Simple reflection on simple-root coordinates.
    pub fn reflect_root(&self, i: usize, alpha: &Root) -> Root {
        let p = pairing_root(&self.cartan, alpha, i);
        let mut out = alpha.clone();
        out[i] -= p;
        out
    }

    /// Apply a word right to left to a weight.
    pub fn apply_wt(&self, word: &[usize], lambda: &Weight) -> Weight {
        let mut v = lambda.clone();
        for &i in word.iter().rev() {
            v = self.reflect_wt(i, &v);
        }
        v
    }

    /// Apply a word right to left to a root-lattice element.
    pub fn apply_root(&self, word: &[usize], alpha: &Root) -> Root {
        let mut v = alpha.clone();
        for &i in word.iter().rev() {
            v = self.reflect_root(i, &v);
        }
        v
    }

    /// Canonical reduced word of the element sending rho to `mu`.
    /// Fails if `mu` is not in the orbit of rho.
    pub fn word_from_rho_image(&self, mu: &Weight) -> Result<Word> {
        let rho = self.rho();
        let mut v = mu.clone();
        let mut word: Word = Vec::new();
        let bound = 4 * self.num_positive() + 4;
        while v != rho {
            let i = (0..self.rank)
                .find(|&i| v[i] < 0)
                .ok_or_else(|| Error::NotALabel(format!("{v:?} is not in the orbit of rho")))?;
            v = self.reflect_wt(i, &v);
            word.push(i);
            if word.len() > bound {
                return Err(Error::NotALabel(format!("{mu:?} is not in the orbit of rho")));
            }
        }
        Ok(word)
    }

    /// Canonical reduced word representing the same element as `word`.
    pub fn canonical_word(&self, word: &[usize]) -> Word {
        let mu = self.apply_wt(word, &self.rho());
        self.word_from_rho_image(&mu).expect("image of rho is in the orbit of rho")
    }

    /// Length of the element represented by `word`.
    pub fn length(&self, word: &[usize]) -> usize {
        self.canonical_word(word).len()
    }

    /// True iff the word is a reduced expression.
    pub fn is_reduced(&self, word: &[usize]) -> bool {
        self.length(word) == word.len()
    }

    /// Product of two words (concatenation, canonicalized).
    pub fn mul(&self, u: &[usize], v: &[usize]) -> Word {
        let mut w = u.to_vec();
        w.extend_from_slice(v);
        self.canonical_word(&w)
    }

    /// Inverse of a word (reversal, canonicalized).
    pub fn inverse(&self, word: &[usize]) -> Word {
        let mut w = word.to_vec();
        w.reverse();
        self.canonical_word(&w)
    }

    /// True iff `i` is a right descent: `w(alpha_i) < 0`.
    pub fn is_right_descent(&self, word: &[usize], i: usize) -> bool {
        let mut a = vec![0i64; self.rank];
        a[i] = 1;
        let img = self.apply_root(word, &a);
        img.iter().all(|&x| x <= 0)
    }

    /// The reflection `s_alpha` as a canonical word, for any root `alpha`.
    pub fn reflection_word(&self, alpha: &Root) -> Result<Word> {
        if !self.is_root(alpha) {
            return Err(Error::NotALabel(format!("{alpha:?} is not a root")));
        }
        let rho = self.rho();
        let k = self.pair(&rho, alpha);
        let aw = self.root_to_weight(alpha);
        let mu: Weight = (0..self.rank).map(|j| rho[j] - k * aw[j]).collect();
        self.word_from_rho_image(&mu)
    }

    /// Longest element of the standard parabolic generated by `levi` nodes
    /// (0-based). With all nodes this is the longest element of the group.
    pub fn longest_element(&self, levi: &[usize]) -> Word {
        let mut word: Word = Vec::new();
        'outer: loop {
            for &i in levi {
                // Right-ascend while w(alpha_i) > 0.
                if !self.is_right_descent(&word, i) {
                    word.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        self.canonical_word(&word)
    }

    /// Minimal representative of the coset `w W_L` for the parabolic
    /// generated by `levi` (0-based): strip right descents in the Levi.
    pub fn min_coset_rep(&self, word: &[usize], levi: &[usize]) -> Word {
        let mut w = self.canonical_word(word);
        'outer: loop {
            for &i in levi {
                if self.is_right_descent(&w, i) {
                    w.push(i);
                    w = self.canonical_word(&w);
                    continue 'outer;
                }
            }
            break;
        }
        w
    }

    /// Bruhat order via the recursive descent criterion
    /// (`u <= w` iff stripping a right descent of `w` preserves the relation
    /// on the appropriate side). This is the independent subword oracle used
    /// to cross-check the root-order rule on labels.
    pub fn bruhat_leq(&self, u: &[usize], w: &[usize]) -> bool {
        let u = self.canonical_word(u);
        let w = self.canonical_word(w);
        self.bruhat_leq_inner(&u, &w)
    }

    fn bruhat_leq_inner(&self, u: &[usize], w: &[usize]) -> bool {
        if u.len() > w.len() {
            return false;
        }
        if w.is_empty() {
            return u.is_empty();
        }
        if u.is_empty() {
            return true;
        }
        // Canonical words are built by left descents, so strip on the left:
        // for a left descent i of w: if i is a left descent of u,
        // u <= w iff s_i u <= s_i w; otherwise u <= w iff u <= s_i w.
        let i = w[0];
        let sw = w[1..].to_vec();
        let siu = {
            let mut t = vec![i];
            t.extend_from_slice(u);
            self.canonical_word(&t)
        };
        if siu.len() < u.len() {
            self.bruhat_leq_inner(&siu, &sw)
        } else {
            self.bruhat_leq_inner(u, &sw)
        }
    }

    /// Pretty form `s2 s4 s3` (1-based indices).
    pub fn word_string(word: &[usize]) -> String {
        if word.is_empty() {
            return String::from("e");
        }
        let parts: Vec<String> = word.iter().map(|i| format!("s{}", i + 1)).collect();
        parts.join(" ")
    }
}

/// `<alpha, alpha_i^vee>` for `alpha` in simple-root coordinates.
fn pairing_root(cartan: &[Vec<i64>], alpha: &Root, i: usize) -> i64 {
    alpha.iter().zip(cartan[i].iter()).map(|(c, a)| c * a).sum()
}

/// Minimal positive symmetrizers for a finite-type Cartan matrix.
fn symmetrizers(cartan: &[Vec<i64>]) -> Vec<i64> {
    let n = cartan.len();
    // Solve d_i c_ij = d_j c_ji over the rationals by propagation, then
    // scale to minimal positive integers.
    let mut num = vec![0i64; n];
    let mut den = vec![0i64; n];
    num[0] = 1;
    den[0] = 1;
    let mut done = vec![false; n];
    done[0] = true;
    loop {
        let mut progressed = false;
        for i in 0..n {
            for j in 0..n {
                if i != j && cartan[i][j] != 0 && done[i] && !done[j] {
                    // d_j = d_i * c_ij / c_ji
                    num[j] = num[i] * cartan[i][j];
                    den[j] = den[i] * cartan[j][i];
                    if num[j].signum() != den[j].signum() {
                        num[j] = -num[j];
                        den[j] = -den[j];
                    }
                    done[j] = true;
                    progressed = true;
                }
            }
        }
        if !progressed {
            break;
        }
    }
    assert!(done.iter().all(|&b| b), "connected Cartan matrix expected");
    let lcm_den = den.iter().fold(1i64, |acc, &d| num_integer::lcm(acc, d.abs()));
    let mut d: Vec<i64> = (0..n).map(|i| num[i] * (lcm_den / den[i])).collect();
    let gcd_all = d.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x.abs()));
    for x in d.iter_mut() {
        *x /= gcd_all;
    }
    d
}

/// Root difference helper re-exported for callers working on labels.
pub fn root_sub(a: &Root, b: &Root) -> Root {
    vec_sub(a, b)
}
