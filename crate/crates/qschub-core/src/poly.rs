//! Exact polynomial and linear-algebra infrastructure: sparse multivariate
//! polynomials with weighted gradings, dense rational matrices with row
//! reduction, and univariate polynomials with Sturm-sequence real-root
//! counting. Everything is computed over arbitrary-precision rationals;
//! no floating point is used anywhere.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{rat, Int, Rat};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Sparse multivariate polynomials
// ---------------------------------------------------------------------------

/// A sparse polynomial with rational coefficients in a fixed number of
/// variables. Terms are keyed by exponent vectors; pairing the polynomial
/// with a weight vector (one integer weight per variable) turns the usual
/// total degree into a weighted grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

/// Weighted degree of a single exponent vector.
pub fn weighted_degree(exps: &[u32], weights: &[i64]) -> i64 {
    exps.iter()
        .zip(weights.iter())
        .map(|(&e, &w)| e as i64 * w)
        .sum()
}

/// All exponent vectors of the given weighted degree. Weights must be
/// strictly positive. The result is sorted in the natural (ascending
/// lexicographic) order on exponent vectors.
pub fn monomials_of_weighted_degree(weights: &[i64], degree: i64) -> Vec<Vec<u32>> {
    fn go(weights: &[i64], degree: i64, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if weights.is_empty() {
            if degree == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let w = weights[0];
        let mut e = 0u32;
        while e as i64 * w <= degree {
            prefix.push(e);
            go(&weights[1..], degree - e as i64 * w, prefix, out);
            prefix.pop();
            e += 1;
        }
    }
    assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
    let mut out = Vec::new();
    if degree >= 0 {
        go(weights, degree, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

impl GradedPoly {
    pub fn zero(nvars: usize) -> Self {
        GradedPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = GradedPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        GradedPoly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exps = vec![0u32; nvars];
        exps[i] = 1;
        GradedPoly::monomial(nvars, exps, Rat::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, coeff: Rat) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = GradedPoly::zero(nvars);
        p.add_term(exps, coeff);
        p
    }

    pub fn from_terms(nvars: usize, terms: &[(Vec<u32>, Rat)]) -> Self {
        let mut p = GradedPoly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        let mut p = GradedPoly::zero(nvars);
        for (c, e) in terms {
            p.add_term(e.to_vec(), rat(*c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &GradedPoly) -> GradedPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> GradedPoly {
        let mut out = GradedPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &GradedPoly) -> GradedPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero(self.nvars);
        }
        let mut out = GradedPoly::zero(self.nvars);
        for (e, k) in &self.terms {
            out.terms.insert(e.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, other: &GradedPoly) -> GradedPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = GradedPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb.iter()).map(|(&a, &b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> GradedPoly {
        let mut out = GradedPoly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// If every term has the same weighted degree, returns it. A zero
    /// polynomial has no well-defined degree.
    pub fn homogeneous_degree(&self, weights: &[i64]) -> Option<i64> {
        assert_eq!(weights.len(), self.nvars);
        let mut degree = None;
        for e in self.terms.keys() {
            let d = weighted_degree(e, weights);
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        degree
    }

    /// Largest weighted degree over all terms (zero polynomial gives None).
    pub fn max_weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        self.terms
            .keys()
            .map(|e| weighted_degree(e, weights))
            .max()
    }

    /// Substitutes a rational constant for one variable. The variable stays
    /// in place (its exponent becomes zero) so the variable count is stable.
    pub fn substitute(&self, var: usize, value: &Rat) -> GradedPoly {
        assert!(var < self.nvars);
        let mut out = GradedPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut pow = Rat::one();
            for _ in 0..e[var] {
                pow *= value;
            }
            let mut exps = e.clone();
            exps[var] = 0;
            out.add_term(exps, c * pow);
        }
        out
    }

    pub fn eval(&self, values: &[Rat]) -> Rat {
        assert_eq!(values.len(), self.nvars);
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term *= &values[i];
                }
            }
            total += term;
        }
        total
    }

    /// Repeatedly rewrites every term divisible by the monomial `lead` using
    /// the relation `rel` (which must contain `lead` with nonzero
    /// coefficient), i.e. substitutes `lead -> lead - rel/c` where `c` is the
    /// coefficient of `lead` in `rel`. Terminates because `rel` is assumed
    /// weighted-homogeneous with `lead` strictly largest in lexicographic
    /// order among its monomials.
    pub fn reduce_by(&self, rel: &GradedPoly, lead: &[u32]) -> GradedPoly {
        assert_eq!(self.nvars, rel.nvars);
        let lc = rel.coeff(lead);
        assert!(!lc.is_zero(), "leading monomial absent from relation");
        let mut tail = rel.clone();
        tail.terms.remove(lead);
        let mut current = self.clone();
        loop {
            let hit = current
                .terms
                .iter()
                .find(|(e, _)| e.iter().zip(lead.iter()).all(|(&a, &b)| a >= b))
                .map(|(e, c)| (e.clone(), c.clone()));
            let Some((e, c)) = hit else {
                return current;
            };
            let quotient: Vec<u32> = e.iter().zip(lead.iter()).map(|(&a, &b)| a - b).collect();
            let factor = GradedPoly::monomial(self.nvars, quotient, -&c / &lc);
            current.terms.remove(&e);
            current = current.add(&factor.mul(&tail));
        }
    }

    /// Exact division: returns `self / divisor` when the division leaves no
    /// remainder, and None otherwise. Uses lexicographic leading terms.
    pub fn divide_exact(&self, divisor: &GradedPoly) -> Option<GradedPoly> {
        assert_eq!(self.nvars, divisor.nvars);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (dlead, dcoeff) = divisor.terms.iter().next_back()?;
        let mut remainder = self.clone();
        let mut quotient = GradedPoly::zero(self.nvars);
        while !remainder.is_zero() {
            let (rlead, rcoeff) = remainder.terms.iter().next_back().unwrap();
            if !rlead.iter().zip(dlead.iter()).all(|(&a, &b)| a >= b) {
                return None;
            }
            let exps: Vec<u32> = rlead.iter().zip(dlead.iter()).map(|(&a, &b)| a - b).collect();
            let term = GradedPoly::monomial(self.nvars, exps, rcoeff / dcoeff);
            remainder = remainder.sub(&term.mul(divisor));
            quotient = quotient.add(&term);
        }
        Some(quotient)
    }

    /// Parses expressions like `"3*h^12 - 18*h^8*s + 24*h^4*s^2 + 8*s^3"` or
    /// `"1/18*h^5 - 5/6*h^2*q"` over the given variable names.
    pub fn parse(src: &str, var_names: &[&str]) -> Result<GradedPoly> {
        let nvars = var_names.len();
        let bytes: Vec<char> = src.chars().collect();
        let mut pos = 0usize;
        let mut poly = GradedPoly::zero(nvars);
        let mut first_term = true;

        fn skip_ws(bytes: &[char], pos: &mut usize) {
            while *pos < bytes.len() && bytes[*pos].is_whitespace() {
                *pos += 1;
            }
        }
        fn parse_uint(bytes: &[char], pos: &mut usize) -> Option<Int> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if *pos == start {
                return None;
            }
            let digits: String = bytes[start..*pos].iter().collect();
            digits.parse::<Int>().ok()
        }
        fn parse_ident(bytes: &[char], pos: &mut usize) -> Option<String> {
            let start = *pos;
            while *pos < bytes.len() && (bytes[*pos].is_ascii_alphanumeric() || bytes[*pos] == '_')
            {
                *pos += 1;
            }
            if *pos == start || bytes[start].is_ascii_digit() {
                *pos = start;
                return None;
            }
            Some(bytes[start..*pos].iter().collect())
        }

        loop {
            skip_ws(&bytes, &mut pos);
            if pos >= bytes.len() {
                break;
            }
            let mut sign = Rat::one();
            if bytes[pos] == '+' {
                pos += 1;
            } else if bytes[pos] == '-' {
                sign = -Rat::one();
                pos += 1;
            } else if !first_term {
                return Err(Error::CheckFailed(format!(
                    "polynomial parse error at offset {pos} in {src:?}: expected + or -"
                )));
            }
            first_term = false;
            skip_ws(&bytes, &mut pos);
            let mut coeff = sign;
            let mut exps = vec![0u32; nvars];
            let mut saw_factor = false;
            if let Some(n) = parse_uint(&bytes, &mut pos) {
                let mut c = Rat::from_integer(n);
                skip_ws(&bytes, &mut pos);
                if pos < bytes.len() && bytes[pos] == '/' {
                    pos += 1;
                    skip_ws(&bytes, &mut pos);
                    let d = parse_uint(&bytes, &mut pos).ok_or_else(|| {
                        Error::CheckFailed(format!("polynomial parse error: denominator in {src:?}"))
                    })?;
                    c /= Rat::from_integer(d);
                }
                coeff *= c;
                saw_factor = true;
            }
            loop {
                skip_ws(&bytes, &mut pos);
                let mut here = pos;
                if saw_factor {
                    if here < bytes.len() && bytes[here] == '*' {
                        here += 1;
                    } else if !(here < bytes.len() && (bytes[here].is_ascii_alphabetic() || bytes[here] == '_')) {
                        break;
                    }
                }
                skip_ws(&bytes, &mut here);
                let Some(name) = parse_ident(&bytes, &mut here) else {
                    break;
                };
                let Some(idx) = var_names.iter().position(|v| *v == name) else {
                    return Err(Error::CheckFailed(format!(
                        "polynomial parse error: unknown variable {name:?} in {src:?}"
                    )));
                };
                pos = here;
                skip_ws(&bytes, &mut pos);
                let mut power = 1u32;
                if pos < bytes.len() && bytes[pos] == '^' {
                    pos += 1;
                    skip_ws(&bytes, &mut pos);
                    let n = parse_uint(&bytes, &mut pos).ok_or_else(|| {
                        Error::CheckFailed(format!("polynomial parse error: exponent in {src:?}"))
                    })?;
                    power = num_traits::ToPrimitive::to_u32(&n).ok_or_else(|| {
                        Error::CheckFailed(format!("exponent too large in {src:?}"))
                    })?;
                }
                exps[idx] += power;
                saw_factor = true;
            }
            if !saw_factor {
                return Err(Error::CheckFailed(format!(
                    "polynomial parse error at offset {pos} in {src:?}: empty term"
                )));
            }
            poly.add_term(exps, coeff);
        }
        Ok(poly)
    }

    /// Deterministic printing in descending lexicographic monomial order,
    /// matching the catalog style `h^8 - 12*s^2 - 16*q`.
    pub fn render(&self, var_names: &[&str]) -> String {
        assert_eq!(var_names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (exps, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            let abs = coeff.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || exps.iter().all(|&e| e == 0) {
                factors.push(abs.to_string());
            }
            for (v, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(var_names[v].to_string()),
                    _ => factors.push(format!("{}^{}", var_names[v], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Dense rational matrices
// ---------------------------------------------------------------------------

/// A dense matrix over arbitrary-precision rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let mut t = Rat::zero();
        for i in 0..self.rows {
            t += self.at(i, i);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    /// In-place reduced row echelon form. Pivots are chosen scanning columns
    /// left to right, so callers control pivot preference by column order.
    /// Returns the pivot columns in ascending order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, pr * self.cols + j);
                }
            }
            let inv = Rat::one() / self.at(r, c).clone();
            for j in c..self.cols {
                let v = self.at(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.at(i, c).is_zero() {
                    continue;
                }
                let f = self.at(i, c).clone();
                for j in c..self.cols {
                    let v = self.at(i, j) - &f * self.at(r, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return Rat::zero();
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(c * n + j, pr * n + j);
                }
                det = -det;
            }
            let pivot = m.at(c, c).clone();
            det *= &pivot;
            let inv = Rat::one() / pivot;
            for i in (c + 1)..n {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c) * &inv;
                for j in c..n {
                    let v = m.at(i, j) - &f * m.at(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Solves `self * x = rhs`; returns None when inconsistent. Free
    /// variables (if any) are set to zero.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = RatMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m.at(r, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = RatMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = RatMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.at(i, n + j).clone());
            }
        }
        Some(out)
    }
}

// ---------------------------------------------------------------------------
// Univariate polynomials and Sturm sequences
// ---------------------------------------------------------------------------

/// A univariate polynomial over rationals, coefficients in ascending order
/// with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn monomial(k: usize, c: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        UniPoly::new(coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|k| k * c).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat(i as i64 + 1))
                .collect(),
        )
    }

    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "univariate division by zero");
        let dl = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![
            Rat::zero();
            self.coeffs.len().saturating_sub(divisor.coeffs.len()) + 1
        ];
        while rem.len() >= divisor.coeffs.len() && !rem.is_empty() {
            let shift = rem.len() - divisor.coeffs.len();
            let factor = rem.last().unwrap() / &dl;
            if !factor.is_zero() {
                quo[shift] = factor.clone();
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] -= &factor * c;
                }
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
        }
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem(divisor).1
    }

    /// Divides out the rational content, leaving coprime integer
    /// coefficients; the sign of the leading coefficient is preserved
    /// (the scaling factor is positive).
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut num_gcd = Int::zero();
        let mut den_lcm = Int::one();
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let content = Rat::new(num_gcd, den_lcm);
        UniPoly::new(self.coeffs.iter().map(|c| c / &content).collect())
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&(Rat::one() / l)),
        }
    }

    /// Monic greatest common divisor via a primitive Euclidean sequence.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None | Some(0) => true,
            _ => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    fn sign_at(&self, x: &Rat) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    fn sign_at_infinity(&self, positive: bool) -> i32 {
        match self.leading() {
            None => 0,
            Some(l) => {
                let base = if l.is_positive() { 1 } else { -1 };
                if positive || self.degree().unwrap() % 2 == 0 {
                    base
                } else {
                    -base
                }
            }
        }
    }

    /// The Sturm chain `p, p', -rem(...)`, each entry scaled by a positive
    /// rational to keep integer coefficients (positive scaling preserves
    /// the sign pattern the chain is read for).
    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = Vec::new();
        let p = self.primitive();
        if p.is_zero() {
            return chain;
        }
        chain.push(p.clone());
        let dp = p.derivative();
        if dp.is_zero() {
            return chain;
        }
        chain.push(dp.primitive());
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                return chain;
            }
            chain.push(r.neg().primitive());
        }
    }

    fn sign_variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut count = 0;
        let mut last = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots (whole real line). The chain handles
    /// repeated roots, so squarefreeness is not required.
    pub fn count_real_roots(&self) -> usize {
        let chain = self.sturm_chain();
        if chain.is_empty() || chain[0].degree() == Some(0) {
            return 0;
        }
        let neg = UniPoly::sign_variations(chain.iter().map(|p| p.sign_at_infinity(false)));
        let pos = UniPoly::sign_variations(chain.iter().map(|p| p.sign_at_infinity(true)));
        neg - pos
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_real_roots_in(&self, a: &Rat, b: &Rat) -> usize {
        assert!(a < b);
        let chain = self.sturm_chain();
        if chain.is_empty() || chain[0].degree() == Some(0) {
            return 0;
        }
        let va = UniPoly::sign_variations(chain.iter().map(|p| p.sign_at(a)));
        let vb = UniPoly::sign_variations(chain.iter().map(|p| p.sign_at(b)));
        va - vb
    }
}

/// Characteristic polynomial of a square rational matrix (monic, variable =
/// the matrix eigenvalue), by the Faddeev–LeVerrier recurrence.
pub fn char_poly(m: &RatMatrix) -> UniPoly {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut aux = RatMatrix::identity(n);
    for k in 1..=n {
        let am = m.mul(&aux);
        let c = -(am.trace() / rat(k as i64));
        coeffs[n - k] = c.clone();
        aux = am;
        for i in 0..n {
            let v = aux.at(i, i) + &c;
            aux.set(i, i, v);
        }
    }
    UniPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use proptest::prelude::*;

    fn p(src: &str, vars: &[&str]) -> GradedPoly {
        GradedPoly::parse(src, vars).expect("parse")
    }

    #[test]
    fn parsing_matches_hand_built_terms_and_printing_round_trips() {
        let vars = ["h", "s", "q"];
        let rel = p("h^8 - 12*s^2 - 16*q", &vars);
        let want = GradedPoly::from_int_terms(
            3,
            &[(1, &[8, 0, 0]), (-12, &[0, 2, 0]), (-16, &[0, 0, 1])],
        );
        assert_eq!(rel, want);
        assert_eq!(rel.render(&vars), "h^8 - 12*s^2 - 16*q");

        let point = p("1/18*h^5 - 5/6*h^2*q", &["h", "q"]);
        assert_eq!(point.coeff(&[5, 0]), ratio(1, 18));
        assert_eq!(point.coeff(&[2, 1]), ratio(-5, 6));
        let reparsed = GradedPoly::parse(&point.render(&["h", "q"]), &["h", "q"]).unwrap();
        assert_eq!(point, reparsed);

        let dense = p("3*h^12-18*h^8*s+24*h^4*s^2+8*s^3", &vars);
        assert_eq!(dense.num_terms(), 4);
        assert_eq!(dense.coeff(&[4, 2, 0]), rat(24));

        assert!(GradedPoly::parse("h + z", &vars).is_err());
    }

    #[test]
    fn weighted_homogeneity_detects_catalog_gradings() {
        let f4 = ["h", "s", "q"];
        let w_f4 = [1, 4, 8];
        assert_eq!(
            p("h^8-12*s^2-16*q", &f4).homogeneous_degree(&w_f4),
            Some(8)
        );
        assert_eq!(
            p("3*h^12-18*h^8*s+24*h^4*s^2+8*s^3", &f4).homogeneous_degree(&w_f4),
            Some(12)
        );
        // mixing the two relations breaks homogeneity
        assert_eq!(
            p("h^8-12*s^2-16*q+s^3", &f4).homogeneous_degree(&w_f4),
            None
        );

        let e8 = ["h", "s", "t", "q"];
        let w_e8 = [1, 6, 10, 29];
        let rels = [
            "h^14*s+6*h^10*t-3*h^8*s^2-12*h^4*s*t-10*h^2*s^3+3*t^2",
            "29*h^24-120*h^18*s+15*h^14*t+45*h^12*s^2-30*h^8*s*t+180*h^6*s^3-30*h^2*s^2*t+5*s^4",
            "-86357*h^30+368652*h^24*s-44640*h^20*t-189720*h^18*s^2+94860*h^14*s*t-473680*h^12*s^3+74400*h^8*s^2*t-1240*h^2*s^3*t+60*h*q",
        ];
        let degrees: Vec<Option<i64>> = rels
            .iter()
            .map(|r| p(r, &e8).homogeneous_degree(&w_e8))
            .collect();
        assert_eq!(degrees, vec![Some(20), Some(24), Some(30)]);
    }

    #[test]
    fn monomial_enumeration_counts_weighted_partitions() {
        // weights 1,4,8: degree 8 has h^8, h^4 s, s^2, q
        let ms = monomials_of_weighted_degree(&[1, 4, 8], 8);
        assert_eq!(ms.len(), 4);
        assert!(ms.contains(&vec![8, 0, 0]));
        assert!(ms.contains(&vec![0, 2, 0]));
        assert!(ms.contains(&vec![0, 0, 1]));
        assert!(ms.contains(&vec![4, 1, 0]));
        assert!(monomials_of_weighted_degree(&[1, 3], -1).is_empty());
        assert_eq!(monomials_of_weighted_degree(&[2, 3], 1).len(), 0);
    }

    #[test]
    fn reduction_rewrites_leading_monomials() {
        // reduce x^2 + y by the relation x^2 - z (leading monomial x^2)
        let vars = ["x", "y", "z"];
        let target = p("x^2 + y", &vars);
        let rel = p("x^2 - z", &vars);
        assert_eq!(target.reduce_by(&rel, &[2, 0, 0]), p("y + z", &vars));
        // higher powers reduce recursively: x^5 -> x*z^2
        let big = p("x^5", &vars);
        assert_eq!(big.reduce_by(&rel, &[2, 0, 0]), p("x*z^2", &vars));
    }

    #[test]
    fn exact_division_succeeds_only_without_remainder() {
        let vars = ["x", "y"];
        let num = p("x^2 - y^2", &vars);
        let den = p("x - y", &vars);
        assert_eq!(num.divide_exact(&den), Some(p("x + y", &vars)));
        assert_eq!(p("x^2 + y^2", &vars).divide_exact(&den), None);
    }

    #[test]
    fn row_reduction_rank_determinant_and_solving_agree_with_hand_results() {
        let m = RatMatrix::from_rows(vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(0), rat(1), rat(4)],
            vec![rat(5), rat(6), rat(0)],
        ]);
        assert_eq!(m.det(), rat(1));
        assert_eq!(m.rank(), 3);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(3));

        let singular = RatMatrix::from_rows(vec![
            vec![rat(1), rat(2)],
            vec![rat(2), rat(4)],
        ]);
        assert_eq!(singular.rank(), 1);
        assert_eq!(singular.det(), rat(0));
        let kernel = singular.kernel();
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0], vec![rat(-2), rat(1)]);
        assert!(singular.solve(&[rat(1), rat(3)]).is_none());
        let x = singular.solve(&[rat(1), rat(2)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(0)]);

        let sys = RatMatrix::from_rows(vec![
            vec![rat(2), rat(1)],
            vec![rat(1), rat(-1)],
        ]);
        assert_eq!(sys.solve(&[rat(3), rat(0)]).unwrap(), vec![rat(1), rat(1)]);
    }

    #[test]
    fn sturm_sequences_count_distinct_real_roots() {
        // three distinct real roots
        let p1 = UniPoly::from_ints(&[-576, -576, -108, 1]);
        assert_eq!(p1.count_real_roots(), 3);
        assert!(p1.is_squarefree());
        // no real roots
        assert_eq!(UniPoly::from_ints(&[1, 0, 1]).count_real_roots(), 0);
        // repeated root collapses to one distinct root
        let sq = UniPoly::from_ints(&[-1, 1]).mul(&UniPoly::from_ints(&[-1, 1]));
        let tripled = sq.mul(&UniPoly::from_ints(&[2, 1]));
        assert_eq!(tripled.count_real_roots(), 2);
        assert!(!tripled.is_squarefree());
        // interval counting on x^3 - x with roots -1, 0, 1
        let cube = UniPoly::from_ints(&[0, -1, 0, 1]);
        assert_eq!(cube.count_real_roots(), 3);
        assert_eq!(cube.count_real_roots_in(&rat(-2), &rat(1)), 3);
        assert_eq!(cube.count_real_roots_in(&rat(-1), &rat(1)), 2);
        assert_eq!(cube.count_real_roots_in(&rat(0), &rat(1)), 1);
    }

    #[test]
    fn gcd_and_division_satisfy_euclid() {
        let a = UniPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = UniPoly::from_ints(&[-1, 0, 0, 1]); // x^3 - 1
        assert_eq!(a.gcd(&b), UniPoly::from_ints(&[-1, 1]).monic());
        let (q, r) = b.div_rem(&a);
        assert_eq!(q.add(&q.neg()), UniPoly::zero());
        assert_eq!(a.mul(&q).add(&r), b);
    }

    #[test]
    fn characteristic_polynomials_match_hand_computations() {
        let diag = RatMatrix::from_rows(vec![vec![rat(2), rat(0)], vec![rat(0), rat(3)]]);
        assert_eq!(char_poly(&diag), UniPoly::from_ints(&[6, -5, 1]));
        // companion matrix of x^3 + 3x - 5
        let comp = RatMatrix::from_rows(vec![
            vec![rat(0), rat(0), rat(5)],
            vec![rat(1), rat(0), rat(-3)],
            vec![rat(0), rat(1), rat(0)],
        ]);
        assert_eq!(char_poly(&comp), UniPoly::from_ints(&[-5, 3, 0, 1]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn polynomial_arithmetic_satisfies_ring_identities(
            a in arb_poly(), b in arb_poly(), c in arb_poly()
        ) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.sub(&a), GradedPoly::zero(2));
        }
    }

    fn arb_poly() -> impl Strategy<Value = GradedPoly> {
        proptest::collection::vec(((0u32..4, 0u32..4), -9i64..10), 0..6).prop_map(|terms| {
            let mut p = GradedPoly::zero(2);
            for ((e0, e1), c) in terms {
                p = p.add(&GradedPoly::monomial(2, vec![e0, e1], rat(c)));
            }
            p
        })
    }
}
