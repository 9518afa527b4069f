//! The ℓ-weight lattice.
//!
//! An [`LMonomial`] is a Laurent monomial in the variables `Y[i,r]` for nodes
//! `1..=n` and integer spectral exponents `r`. The simple ℓ-roots
//! `A[i,r] = Y[i,r-1] Y[i,r+1] Y[i-1,r]^-1 Y[i+1,r]^-1` (with `Y[0,_]` and
//! `Y[n+1,_]` equal to 1) generate the cone used by the partial order [`le`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Laurent monomial in the `Y[i,r]` over a fixed rank.
///
/// Terms are kept sorted by `(i, r)` with no zero exponents, so structural
/// equality is monomial equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "MonomialRepr", into = "MonomialRepr")]
pub struct LMonomial {
    rank: usize,
    terms: Vec<(usize, i32, i32)>,
}

#[derive(Serialize, Deserialize)]
struct MonomialRepr {
    n: usize,
    #[serde(rename = "Y")]
    y: Vec<(usize, i32, i32)>,
}

impl TryFrom<MonomialRepr> for LMonomial {
    type Error = Error;
    fn try_from(repr: MonomialRepr) -> Result<Self> {
        LMonomial::from_terms(repr.n, repr.y)
    }
}

impl From<LMonomial> for MonomialRepr {
    fn from(m: LMonomial) -> Self {
        MonomialRepr { n: m.rank, y: m.terms }
    }
}

fn check_rank(n: usize) -> Result<()> {
    if n == 0 {
        return invalid("rank must be positive");
    }
    Ok(())
}

fn check_node(n: usize, i: usize) -> Result<()> {
    if i == 0 || i > n {
        return invalid(format!("node {i} outside 1..={n}"));
    }
    Ok(())
}

impl LMonomial {
    /// The empty monomial of rank `n`.
    pub fn identity(n: usize) -> Result<Self> {
        check_rank(n)?;
        Ok(LMonomial { rank: n, terms: Vec::new() })
    }

    /// The generator `Y[i,r]`.
    pub fn y(n: usize, i: usize, r: i32) -> Result<Self> {
        check_rank(n)?;
        check_node(n, i)?;
        Ok(LMonomial { rank: n, terms: vec![(i, r, 1)] })
    }

    /// Builds a monomial from `(i, r, e)` triples. Repeated keys add up.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (usize, i32, i32)>) -> Result<Self> {
        check_rank(n)?;
        let mut map: BTreeMap<(usize, i32), i32> = BTreeMap::new();
        for (i, r, e) in terms {
            check_node(n, i)?;
            *map.entry((i, r)).or_insert(0) += e;
        }
        Ok(Self::from_map(n, map))
    }

    fn from_map(n: usize, map: BTreeMap<(usize, i32), i32>) -> Self {
        let terms = map.into_iter().filter(|&(_, e)| e != 0).map(|((i, r), e)| (i, r, e)).collect();
        LMonomial { rank: n, terms }
    }

    /// Builds a monomial from a boundary-tolerant list: nodes `0` and `n+1` are dropped.
    pub(crate) fn from_terms_dropping_boundary(n: usize, terms: impl IntoIterator<Item = (usize, i32, i32)>) -> Self {
        let mut map: BTreeMap<(usize, i32), i32> = BTreeMap::new();
        for (i, r, e) in terms {
            if i >= 1 && i <= n {
                *map.entry((i, r)).or_insert(0) += e;
            }
        }
        Self::from_map(n, map)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nonzero exponents as `(i, r, e)`, sorted by `(i, r)`.
    pub fn terms(&self) -> &[(usize, i32, i32)] {
        &self.terms
    }

    pub fn exponent(&self, i: usize, r: i32) -> i32 {
        self.terms.binary_search_by(|&(a, b, _)| (a, b).cmp(&(i, r))).map(|k| self.terms[k].2).unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn inverse(&self) -> Self {
        LMonomial { rank: self.rank, terms: self.terms.iter().map(|&(i, r, e)| (i, r, -e)).collect() }
    }

    pub fn pow(&self, k: i32) -> Self {
        if k == 0 {
            return LMonomial { rank: self.rank, terms: Vec::new() };
        }
        LMonomial { rank: self.rank, terms: self.terms.iter().map(|&(i, r, e)| (i, r, e * k)).collect() }
    }

    /// Product that reports a rank mismatch instead of panicking.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return invalid(format!("rank mismatch: {} vs {}", self.rank, other.rank));
        }
        Ok(self.merge(other, 1))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return invalid(format!("rank mismatch: {} vs {}", self.rank, other.rank));
        }
        Ok(self.merge(other, -1))
    }

    fn merge(&self, other: &Self, sign: i32) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            let take_a = y == b.len() || (x < a.len() && (a[x].0, a[x].1) < (b[y].0, b[y].1));
            let take_b = x == a.len() || (y < b.len() && (b[y].0, b[y].1) < (a[x].0, a[x].1));
            if take_a {
                out.push(a[x]);
                x += 1;
            } else if take_b {
                out.push((b[y].0, b[y].1, sign * b[y].2));
                y += 1;
            } else {
                let e = a[x].2 + sign * b[y].2;
                if e != 0 {
                    out.push((a[x].0, a[x].1, e));
                }
                x += 1;
                y += 1;
            }
        }
        LMonomial { rank: self.rank, terms: out }
    }

    /// Parses the text rendering (`"Y[1,0] Y[2,3]^-1"`, or `"1"`).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        check_rank(n)?;
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Self::identity(n);
        }
        let mut terms = Vec::new();
        for tok in text.split_whitespace() {
            let bad = || Error::InvalidArgument(format!("cannot parse factor `{tok}`"));
            let body = tok.strip_prefix("Y[").ok_or_else(bad)?;
            let (inner, rest) = body.split_once(']').ok_or_else(bad)?;
            let (i, r) = inner.split_once(',').ok_or_else(bad)?;
            let i: usize = i.trim().parse().map_err(|_| bad())?;
            let r: i32 = r.trim().parse().map_err(|_| bad())?;
            let e: i32 =
                if rest.is_empty() { 1 } else { rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())? };
            terms.push((i, r, e));
        }
        Self::from_terms(n, terms)
    }
}

impl Mul for &LMonomial {
    type Output = LMonomial;
    /// # Panics
    /// On rank mismatch; use [`LMonomial::checked_mul`] for untrusted input.
    fn mul(self, rhs: &LMonomial) -> LMonomial {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        self.merge(rhs, 1)
    }
}

impl Mul for LMonomial {
    type Output = LMonomial;
    fn mul(self, rhs: LMonomial) -> LMonomial {
        &self * &rhs
    }
}

impl Div for &LMonomial {
    type Output = LMonomial;
    /// # Panics
    /// On rank mismatch.
    fn div(self, rhs: &LMonomial) -> LMonomial {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        self.merge(rhs, -1)
    }
}

impl Div for LMonomial {
    type Output = LMonomial;
    fn div(self, rhs: LMonomial) -> LMonomial {
        &self / &rhs
    }
}

impl fmt::Display for LMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "1");
        }
        for (k, &(i, r, e)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "Y[{i},{r}]")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Weight in fundamental-weight coordinates: `coords[j-1]` is the value on `h_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn rank(&self) -> usize {
        self.coords.len()
    }
}

/// Exponents `c[i,r] > 0` with `m = ∏ A[i,r]^c[i,r]`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct LRootDecomposition {
    pub factors: BTreeMap<(usize, i32), u32>,
}

impl LRootDecomposition {
    /// Total number of simple ℓ-root factors at each node, indexed `0..n`.
    pub fn node_totals(&self, n: usize) -> Vec<u64> {
        let mut out = vec![0u64; n];
        for (&(i, _), &c) in &self.factors {
            out[i - 1] += u64::from(c);
        }
        out
    }

    /// Multiplies the factors back out.
    pub fn expand(&self, n: usize) -> Result<LMonomial> {
        let mut acc = LMonomial::identity(n)?;
        for (&(i, r), &c) in &self.factors {
            acc = &acc * &expand_simple_lroot(n, i, r)?.pow(c as i32);
        }
        Ok(acc)
    }
}

/// `Y[i,r] Y[i,r+2] ... Y[i,r+2(k-1)]`.
pub fn y_string(n: usize, i: usize, r: i32, k: u32) -> Result<LMonomial> {
    check_rank(n)?;
    check_node(n, i)?;
    LMonomial::from_terms(n, (0..k as i32).map(|l| (i, r + 2 * l, 1)))
}

/// The simple ℓ-root `A[i,r]` written in the `Y` variables.
pub fn expand_simple_lroot(n: usize, i: usize, r: i32) -> Result<LMonomial> {
    check_rank(n)?;
    check_node(n, i)?;
    Ok(LMonomial::from_terms_dropping_boundary(n, [(i, r - 1, 1), (i, r + 1, 1), (i - 1, r, -1), (i + 1, r, -1)]))
}

/// Product of simple ℓ-roots along a path of nodes.
///
/// Ascending (`from <= to`): `∏_{k=from}^{to} A[k, r+k-from+1]`.
/// Descending (`from > to`): `∏_{k=to}^{from} A[from+to-k, r+k-to+1]`.
pub fn expand_lroot_path(n: usize, from: usize, to: usize, r: i32) -> Result<LMonomial> {
    check_rank(n)?;
    check_node(n, from)?;
    check_node(n, to)?;
    let mut acc = LMonomial::identity(n)?;
    if from <= to {
        for k in from..=to {
            acc = &acc * &expand_simple_lroot(n, k, r + (k - from) as i32 + 1)?;
        }
    } else {
        for k in to..=from {
            acc = &acc * &expand_simple_lroot(n, from + to - k, r + (k - to) as i32 + 1)?;
        }
    }
    Ok(acc)
}

/// The ℓ-root attached to node `i` and spectral parameter `q^x`:
/// `Y[i,x] Y[i,x+2] ∏_{|j-i|=1} Y[j,x+1]^-1`.
///
/// Built directly from `Y` factors, so it serves as an independent check on
/// the shifted `A` indexing (it equals `A[i,x+1]`).
pub fn spectral_lroot(n: usize, i: usize, x: i32) -> Result<LMonomial> {
    check_rank(n)?;
    check_node(n, i)?;
    Ok(LMonomial::from_terms_dropping_boundary(n, [(i, x, 1), (i, x + 2, 1), (i - 1, x + 1, -1), (i + 1, x + 1, -1)]))
}

/// Path of [`spectral_lroot`] factors with the parameter advancing by one per step,
/// starting at `x` on node `from`.
pub fn spectral_lroot_path(n: usize, from: usize, to: usize, x: i32) -> Result<LMonomial> {
    check_rank(n)?;
    check_node(n, from)?;
    check_node(n, to)?;
    let nodes: Vec<usize> = if from <= to { (from..=to).collect() } else { (to..=from).rev().collect() };
    let mut acc = LMonomial::identity(n)?;
    for (step, node) in nodes.into_iter().enumerate() {
        acc = &acc * &spectral_lroot(n, node, x + step as i32)?;
    }
    Ok(acc)
}

pub fn weight_of(m: &LMonomial) -> Weight {
    let mut coords = vec![0i64; m.rank];
    for &(i, _, e) in &m.terms {
        coords[i - 1] += i64::from(e);
    }
    Weight { coords }
}

pub fn is_dominant(m: &LMonomial) -> bool {
    m.terms.iter().all(|&(_, _, e)| e > 0)
}

/// Largest spectral exponent in the support, and whether every factor there is inverted.
pub fn right_negativity(m: &LMonomial) -> Result<(i32, bool)> {
    if m.is_identity() {
        return Err(Error::UndefinedInput("right negativity of the identity monomial".into()));
    }
    let r_max = m.terms.iter().map(|t| t.1).max().unwrap_or_default();
    let neg = m.terms.iter().filter(|t| t.1 == r_max).all(|t| t.2 < 0);
    Ok((r_max, neg))
}

/// Simple-root coordinates of a weight, when they are non-negative integers.
///
/// Uses `C^-1[i][j] = min(i,j) (n+1-max(i,j)) / (n+1)` for the type A Cartan matrix.
pub fn root_coordinates(w: &Weight) -> Option<Vec<u64>> {
    let n = w.rank();
    let h = (n + 1) as i64;
    let mut out = Vec::with_capacity(n);
    for i in 1..=n as i64 {
        let mut num = 0i64;
        for (j0, &c) in w.coords.iter().enumerate() {
            let j = j0 as i64 + 1;
            num += i.min(j) * (h - i.max(j)) * c;
        }
        if num < 0 || num % h != 0 {
            return None;
        }
        out.push((num / h) as u64);
    }
    Some(out)
}

/// Writes `m` as a product of simple ℓ-roots with non-negative exponents, if possible.
///
/// The per-node totals are read off the weight first, which rejects most
/// inputs immediately. The placement is then forced: scanning spectral
/// exponents from the top, `A[i,s]` is the only root contributing to
/// `Y[i,s+1]` at the highest still-unmatched position, so its exponent is
/// determined by the exponent of `m` there and by roots already placed.
pub fn lroot_decompose(m: &LMonomial) -> Option<LRootDecomposition> {
    let n = m.rank;
    if m.is_identity() {
        return Some(LRootDecomposition::default());
    }
    let totals = root_coordinates(&weight_of(m))?;
    let lo = m.terms.iter().map(|t| t.1).min()?;
    let hi = m.terms.iter().map(|t| t.1).max()?;
    // Any root A[i,s] in a decomposition has lo < s < hi; c is indexed [i][s - lo], padded on both sides.
    let width = (hi - lo + 3) as usize;
    let mut c = vec![vec![0i64; width]; n + 2];
    let idx = |s: i32| (s - lo) as usize;
    let mut s = hi - 1;
    while s > lo {
        for i in 1..=n {
            let up = |node: usize, t: i32| if t <= hi + 1 { c[node][idx(t)] } else { 0 };
            let v = i64::from(m.exponent(i, s + 1)) - up(i, s + 2) + up(i - 1, s + 1) + up(i + 1, s + 1);
            if v < 0 {
                return None;
            }
            c[i][idx(s)] = v;
        }
        s -= 1;
    }
    let mut factors = BTreeMap::new();
    for (i, row) in c.iter().enumerate().take(n + 1).skip(1) {
        for (k, &v) in row.iter().enumerate() {
            if v > 0 {
                factors.insert((i, lo + k as i32), v as u32);
            }
        }
    }
    let dec = LRootDecomposition { factors };
    if dec.expand(n).ok()? != *m {
        return None;
    }
    debug_assert_eq!(dec.node_totals(n), totals);
    Some(dec)
}

/// `m1 <= m2` in the ℓ-weight order: `m2 / m1` lies in the cone of simple ℓ-roots.
pub fn le(m1: &LMonomial, m2: &LMonomial) -> Result<bool> {
    let q = m2.checked_div(m1)?;
    Ok(lroot_decompose(&q).is_some())
}

/// Projects onto the nodes in `nodes`, relabelling them `1..=|J|` in order.
pub fn restrict(m: &LMonomial, nodes: &[usize]) -> Result<LMonomial> {
    if nodes.is_empty() {
        return invalid("restriction to an empty node set");
    }
    let mut sorted = nodes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != nodes.len() {
        return invalid("repeated node in restriction set");
    }
    for &i in &sorted {
        check_node(m.rank, i)?;
    }
    let terms = m.terms.iter().filter_map(|&(i, r, e)| sorted.binary_search(&i).ok().map(|pos| (pos + 1, r, e)));
    LMonomial::from_terms(sorted.len(), terms)
}

/// The duality and shift maps, acting on generators and extended multiplicatively.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    /// `Y[i,r] -> Y[n+1-i, r-(n+1)]`
    Star,
    /// `Y[i,r] -> Y[n+1-i, r+(n+1)]`
    StarInv,
    /// `Y[i,r] -> Y[i,-r]`
    Minus,
    /// `Y[i,r] -> Y[n+1-i, -r-(n+1)]`
    Kappa,
    /// `Y[i,r] -> Y[i,r+t]`
    Tau(i32),
}

pub fn transform(m: &LMonomial, kind: Transform) -> LMonomial {
    let n = m.rank;
    let h = (n + 1) as i32;
    let map = |i: usize, r: i32| match kind {
        Transform::Star => (n + 1 - i, r - h),
        Transform::StarInv => (n + 1 - i, r + h),
        Transform::Minus => (i, -r),
        Transform::Kappa => (n + 1 - i, -r - h),
        Transform::Tau(t) => (i, r + t),
    };
    let mut map_out: BTreeMap<(usize, i32), i32> = BTreeMap::new();
    for &(i, r, e) in &m.terms {
        *map_out.entry(map(i, r)).or_insert(0) += e;
    }
    LMonomial::from_map(n, map_out)
}
