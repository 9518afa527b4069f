//! Minimal affinizations and Kirillov–Reshetikhin modules.
//!
//! A [`MinAffSpec`] fixes `λ`, a direction and a global shift. Its Drinfeld
//! polynomial is a product of one q-string per node in the support of `λ`,
//! and its qcharacter is the sum of the monomials of the semi-standard
//! tableaux sharing the shape of the highest tableau.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lweight::{expand_lroot_path, is_dominant, y_string, LMonomial};
use crate::tableaux::{enumerate_semistandard, is_semistandard, monomial_of_tableau, Shape, Tableau};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "inc")]
    Increasing,
    #[serde(rename = "dec")]
    Decreasing,
}

/// Minimal affinization of `V(λ)` for `sl_{n+1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct MinAffSpec {
    n: usize,
    lambda: Vec<u32>,
    dir: Direction,
    shift: i32,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    n: usize,
    lambda: Vec<u32>,
    dir: Direction,
    #[serde(default)]
    shift: i32,
}

impl TryFrom<SpecRepr> for MinAffSpec {
    type Error = Error;
    fn try_from(s: SpecRepr) -> Result<Self> {
        MinAffSpec::new(s.n, s.lambda, s.dir, s.shift)
    }
}

impl From<MinAffSpec> for SpecRepr {
    fn from(s: MinAffSpec) -> Self {
        SpecRepr { n: s.n, lambda: s.lambda, dir: s.dir, shift: s.shift }
    }
}

impl MinAffSpec {
    pub fn new(n: usize, lambda: Vec<u32>, dir: Direction, shift: i32) -> Result<Self> {
        if n == 0 {
            return invalid("rank must be positive");
        }
        if lambda.len() != n {
            return invalid(format!("lambda has {} entries, expected {n}", lambda.len()));
        }
        if lambda.iter().all(|&l| l == 0) {
            return invalid("lambda must be nonzero");
        }
        Ok(MinAffSpec { n, lambda, dir, shift })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &[u32] {
        &self.lambda
    }

    pub fn direction(&self) -> Direction {
        self.dir
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// `λ(h_i)`, 1-based; zero outside `1..=n`.
    pub fn lambda_at(&self, i: usize) -> u32 {
        if i == 0 || i > self.n {
            0
        } else {
            self.lambda[i - 1]
        }
    }

    /// Nodes with `λ(h_i) > 0`, ascending.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.lambda_at(i) > 0).collect()
    }

    /// Largest node in the support.
    pub fn i0(&self) -> usize {
        *self.support().last().expect("nonzero lambda")
    }

    /// `|λ| = Σ λ(h_i)`.
    pub fn size(&self) -> u32 {
        self.lambda.iter().sum()
    }

    /// `Σ_{m=a}^{b} λ(h_m)`, empty when `a > b`.
    pub fn partial_sum(&self, a: usize, b: usize) -> u32 {
        (a.max(1)..=b.min(self.n)).map(|m| self.lambda_at(m)).sum()
    }

    /// Whether the direction carries information (more than one node in the support).
    pub fn is_directional(&self) -> bool {
        self.support().len() > 1
    }

    /// String start `r_i` of node `i` (shift included), for `i` in the support.
    pub fn anchor(&self, i: usize) -> Option<i32> {
        if self.lambda_at(i) == 0 {
            return None;
        }
        let i0 = self.i0();
        let base = 1 - self.lambda_at(i0) as i32 + self.shift;
        let r = match self.dir {
            Direction::Increasing => base - 2 * self.partial_sum(i, i0 - 1) as i32 + i as i32 - i0 as i32,
            Direction::Decreasing => base + 2 * self.partial_sum(i + 1, i0) as i32 + i0 as i32 - i as i32,
        };
        Some(r)
    }

    /// Key used by the qcharacter cache: the direction is irrelevant for a single-node support.
    fn canonical(&self) -> MinAffSpec {
        let mut s = self.clone();
        if !self.is_directional() {
            s.dir = Direction::Increasing;
        }
        s
    }
}

/// KR module with Drinfeld polynomial `Y[node,r,k]`, node 1 or n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "KrRepr", into = "KrRepr")]
pub struct KRSpec {
    n: usize,
    node: usize,
    r: i32,
    k: u32,
}

#[derive(Serialize, Deserialize)]
struct KrRepr {
    n: usize,
    node: usize,
    r: i32,
    k: u32,
}

impl TryFrom<KrRepr> for KRSpec {
    type Error = Error;
    fn try_from(s: KrRepr) -> Result<Self> {
        KRSpec::new(s.n, s.node, s.r, s.k)
    }
}

impl From<KRSpec> for KrRepr {
    fn from(s: KRSpec) -> Self {
        KrRepr { n: s.n, node: s.node, r: s.r, k: s.k }
    }
}

impl KRSpec {
    pub fn new(n: usize, node: usize, r: i32, k: u32) -> Result<Self> {
        if n == 0 {
            return invalid("rank must be positive");
        }
        if node != 1 && node != n {
            return invalid(format!("KR node must be 1 or {n}, got {node}"));
        }
        if k == 0 {
            return invalid("KR length must be positive");
        }
        Ok(KRSpec { n, node, r, k })
    }

    pub fn rank(&self) -> usize {
        self.n
    }
    pub fn node(&self) -> usize {
        self.node
    }
    pub fn r(&self) -> i32 {
        self.r
    }
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn drinfeld(&self) -> LMonomial {
        y_string(self.n, self.node, self.r, self.k).expect("validated")
    }

    /// The same module written as a minimal affinization of `k ω_node`.
    pub fn to_minaff(&self) -> MinAffSpec {
        let mut lambda = vec![0; self.n];
        lambda[self.node - 1] = self.k;
        MinAffSpec { n: self.n, lambda, dir: Direction::Increasing, shift: self.r - (1 - self.k as i32) }
    }
}

/// Finite sum of monomials with positive multiplicities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QChar {
    rank: usize,
    terms: BTreeMap<LMonomial, u64>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    monomial: LMonomial,
    mult: u64,
}

impl Serialize for QChar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<TermRepr> = self.terms.iter().map(|(m, &mult)| TermRepr { monomial: m.clone(), mult }).collect();
        list.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for QChar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let list = Vec::<TermRepr>::deserialize(de)?;
        let rank = list.first().map(|t| t.monomial.rank()).ok_or_else(|| D::Error::custom("empty qcharacter"))?;
        QChar::from_terms(rank, list.into_iter().map(|t| (t.monomial, t.mult))).map_err(D::Error::custom)
    }
}

impl QChar {
    /// Sums repeated monomials; rejects zero multiplicities and rank mismatches.
    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (LMonomial, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (m, mult) in terms {
            if m.rank() != rank {
                return invalid("rank mismatch inside qcharacter");
            }
            if mult == 0 {
                return invalid("zero multiplicity");
            }
            *map.entry(m).or_insert(0) += mult;
        }
        Ok(QChar { rank, terms: map })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<LMonomial, u64> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of multiplicities.
    pub fn dimension(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn multiplicity(&self, m: &LMonomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn dominant_terms(&self) -> Vec<(LMonomial, u64)> {
        self.terms.iter().filter(|(m, _)| is_dominant(m)).map(|(m, &c)| (m.clone(), c)).collect()
    }

    pub fn map_terms(&self, f: impl Fn(&LMonomial) -> LMonomial) -> Result<QChar> {
        QChar::from_terms(self.rank, self.terms.iter().map(|(m, &c)| (f(m), c)))
    }
}

pub fn drinfeld_of_spec(spec: &MinAffSpec) -> LMonomial {
    let mut acc = LMonomial::identity(spec.n).expect("positive rank");
    for i in spec.support() {
        let r = spec.anchor(i).expect("in support");
        acc = &acc * &y_string(spec.n, i, r, spec.lambda_at(i)).expect("node in range");
    }
    acc
}

/// Stairs tableau whose monomial is the Drinfeld polynomial.
pub fn highest_tableau(spec: &MinAffSpec) -> Tableau {
    let nodes: Vec<usize> = match spec.dir {
        Direction::Increasing => spec.support().into_iter().rev().collect(),
        Direction::Decreasing => spec.support(),
    };
    let mut shape = Vec::new();
    let mut cols = Vec::new();
    for i in nodes {
        let r = spec.anchor(i).expect("in support");
        let li = spec.lambda_at(i) as i32;
        for j in 1..=li {
            shape.push((i, r + 2 * (li - j) - i as i32 + 1));
            cols.push((1..=i).collect());
        }
    }
    let shape = Shape::new(shape).expect("stairs shapes are valid");
    Tableau::new(spec.n, shape, cols).expect("contents within range")
}

/// Qcharacter as the sum over the semi-standard tableaux of the highest shape.
///
/// Checks that every monomial occurs once and that the Drinfeld polynomial is
/// the only dominant term.
pub fn qchar(spec: &MinAffSpec) -> Result<QChar> {
    let top = highest_tableau(spec);
    let omega = drinfeld_of_spec(spec);
    if monomial_of_tableau(&top) != omega || !is_semistandard(&top) {
        return Err(Error::InvariantViolation(format!("highest tableau does not reproduce {omega}")));
    }
    let mut terms = BTreeMap::new();
    for t in enumerate_semistandard(spec.n, top.shape()) {
        let m = monomial_of_tableau(&t);
        if terms.insert(m.clone(), 1u64).is_some() {
            return Err(Error::InvariantViolation(format!("monomial {m} occurs twice")));
        }
    }
    let qc = QChar { rank: spec.n, terms };
    let dom = qc.dominant_terms();
    if dom.len() != 1 || dom[0].0 != omega {
        return Err(Error::InvariantViolation(format!("{} dominant terms for {omega}", dom.len())));
    }
    Ok(qc)
}

/// Qcharacter of the KR module `Y[n,r,k]` from partitions `j_1 >= ... >= j_k` in `0..=n`.
///
/// The term of a partition is `Y[n,r,k] ∏_l A[n, n+1-j_l, r+2(k-l)]^-1`, with
/// `j_l = 0` contributing nothing. Independent of the tableau machinery.
pub fn kr_qchar_by_partitions(n: usize, r: i32, k: u32) -> Result<QChar> {
    if k == 0 {
        return invalid("KR length must be positive");
    }
    let top = y_string(n, n, r, k)?;
    let mut terms = Vec::new();
    let mut parts = vec![0usize; k as usize];
    loop {
        let mut m = top.clone();
        for (l0, &j) in parts.iter().enumerate() {
            if j > 0 {
                let x = r + 2 * (k as i32 - l0 as i32 - 1);
                m = &m / &expand_lroot_path(n, n, n + 1 - j, x)?;
            }
        }
        terms.push((m, 1));
        // next weakly decreasing sequence in 0..=n, lexicographic on the reversed tail
        let mut pos = parts.len();
        loop {
            if pos == 0 {
                return QChar::from_terms(n, terms);
            }
            pos -= 1;
            let cap = if pos == 0 { n } else { parts[pos - 1] };
            if parts[pos] < cap {
                parts[pos] += 1;
                for p in parts.iter_mut().skip(pos + 1) {
                    *p = 0;
                }
                break;
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Epsilon {
    /// Anchors follow the increasing relation (sign -1).
    Increasing,
    /// Anchors follow the decreasing relation (sign +1).
    Decreasing,
    /// A single node in the support: both directions apply.
    Both,
}

/// Result of [`recognize_minaff`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Recognized {
    pub lambda: Vec<u32>,
    pub epsilon: Epsilon,
    /// String start at the largest node of the support.
    pub anchor: i32,
}

impl Recognized {
    /// A spec with this Drinfeld polynomial. `Both` maps to the increasing direction.
    pub fn to_spec(&self, n: usize) -> Result<MinAffSpec> {
        let i0 = (1..=n).rev().find(|&i| self.lambda[i - 1] > 0).expect("nonzero lambda");
        let dir = match self.epsilon {
            Epsilon::Decreasing => Direction::Decreasing,
            _ => Direction::Increasing,
        };
        let shift = self.anchor - (1 - self.lambda[i0 - 1] as i32);
        MinAffSpec::new(n, self.lambda.clone(), dir, shift)
    }
}

/// Decides whether a dominant monomial is the Drinfeld polynomial of a minimal affinization.
pub fn recognize_minaff(m: &LMonomial) -> Result<Option<Recognized>> {
    if !is_dominant(m) {
        return invalid(format!("{m} is not dominant"));
    }
    let n = m.rank();
    let mut lambda = vec![0u32; n];
    let mut start = vec![0i32; n];
    for i in 1..=n {
        let rs: Vec<(i32, i32)> = m.terms().iter().filter(|t| t.0 == i).map(|t| (t.1, t.2)).collect();
        if rs.is_empty() {
            continue;
        }
        let single_string = rs.iter().all(|&(_, e)| e == 1) && rs.windows(2).all(|w| w[1].0 == w[0].0 + 2);
        if !single_string {
            return Ok(None);
        }
        lambda[i - 1] = rs.len() as u32;
        start[i - 1] = rs[0].0;
    }
    if lambda.iter().all(|&l| l == 0) {
        return Ok(None);
    }
    let anchor_of = |dir: Direction| -> Result<bool> {
        let i0 = (1..=n).rev().find(|&i| lambda[i - 1] > 0).expect("nonzero");
        let shift = start[i0 - 1] - (1 - lambda[i0 - 1] as i32);
        let spec = MinAffSpec::new(n, lambda.clone(), dir, shift)?;
        Ok(spec.support().into_iter().all(|i| spec.anchor(i) == Some(start[i - 1])))
    };
    let i0 = (1..=n).rev().find(|&i| lambda[i - 1] > 0).expect("nonzero");
    let anchor = start[i0 - 1];
    let support = lambda.iter().filter(|&&l| l > 0).count();
    let epsilon = if support == 1 {
        Epsilon::Both
    } else if anchor_of(Direction::Increasing)? {
        Epsilon::Increasing
    } else if anchor_of(Direction::Decreasing)? {
        Epsilon::Decreasing
    } else {
        return Ok(None);
    };
    Ok(Some(Recognized { lambda, epsilon, anchor }))
}

/// Dimension of the simple `sl_{n+1}`-module of highest weight `λ`.
pub fn weyl_dimension(lambda: &[u32]) -> Result<u128> {
    let n = lambda.len();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..=n + 1 {
        for j in i + 1..=n + 1 {
            let s: u128 = lambda[i - 1..j - 1].iter().map(|&l| u128::from(l)).sum();
            let d = (j - i) as u128;
            num = num.checked_mul(s + d).ok_or_else(|| Error::InvalidArgument("dimension overflow".into()))?;
            den = den.checked_mul(d).ok_or_else(|| Error::InvalidArgument("dimension overflow".into()))?;
        }
    }
    Ok(num / den)
}

/// Shared memo of qcharacters, safe for concurrent use.
#[derive(Default)]
pub struct QCharCache {
    map: RwLock<HashMap<MinAffSpec, Arc<QChar>>>,
}

impl QCharCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, spec: &MinAffSpec) -> Result<Arc<QChar>> {
        let key = spec.canonical();
        if let Some(q) = self.map.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(q));
        }
        let q = Arc::new(qchar(&key)?);
        let mut w = self.map.write().expect("cache lock");
        Ok(Arc::clone(w.entry(key).or_insert(q)))
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(lambda: &[u32], dir: Direction) -> MinAffSpec {
        MinAffSpec::new(lambda.len(), lambda.to_vec(), dir, 0).unwrap()
    }

    #[test]
    fn drinfeld_examples() {
        use Direction::*;
        assert_eq!(drinfeld_of_spec(&spec(&[1, 1], Increasing)).to_string(), "Y[1,-3] Y[2,0]");
        assert_eq!(drinfeld_of_spec(&spec(&[1, 1], Decreasing)).to_string(), "Y[1,3] Y[2,0]");
        assert_eq!(drinfeld_of_spec(&spec(&[1, 0], Increasing)).to_string(), "Y[1,0]");
        assert!(MinAffSpec::new(2, vec![0, 0], Increasing, 0).is_err());
    }

    #[test]
    fn highest_tableaux() {
        let t = highest_tableau(&spec(&[0, 2], Direction::Increasing));
        assert_eq!(t.shape().columns(), &[(2, 0), (2, -2)]);
        assert_eq!(t.columns(), &[vec![1, 2], vec![1, 2]]);
        assert_eq!(monomial_of_tableau(&t).to_string(), "Y[2,-1] Y[2,1]");
        let t = highest_tableau(&spec(&[1], Direction::Increasing));
        assert_eq!(t.shape().columns(), &[(1, 0)]);
        let t = highest_tableau(&spec(&[1, 1], Direction::Decreasing));
        assert_eq!(t.shape().columns(), &[(1, 3), (2, -1)]);
    }

    #[test]
    fn highest_tableau_round_trip() {
        for n in 1..=3usize {
            for lam in lambdas(n, 3) {
                for dir in [Direction::Increasing, Direction::Decreasing] {
                    let s = MinAffSpec::new(n, lam.clone(), dir, 1).unwrap();
                    let t = highest_tableau(&s);
                    assert!(is_semistandard(&t));
                    assert_eq!(monomial_of_tableau(&t), drinfeld_of_spec(&s));
                    if dir == Direction::Increasing {
                        for w in t.shape().columns().windows(2) {
                            assert_eq!(w[0].1 - w[1].1, 2);
                        }
                    }
                }
            }
        }
    }

    pub(crate) fn lambdas(n: usize, max: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Vec<u32>>) {
            if pos == cur.len() {
                if cur.iter().any(|&x| x > 0) {
                    out.push(cur.clone());
                }
                return;
            }
            for v in 0..=left {
                cur[pos] = v;
                rec(cur, pos + 1, left - v, out);
            }
            cur[pos] = 0;
        }
        rec(&mut cur, 0, max, &mut out);
        out
    }

    #[test]
    fn qchar_examples() {
        let q = qchar(&spec(&[1, 0], Direction::Increasing)).unwrap();
        let got: Vec<String> = q.terms().keys().map(|m| m.to_string()).collect();
        let mut want = vec!["Y[1,0]", "Y[1,2]^-1 Y[2,1]", "Y[2,3]^-1"];
        want.sort();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, want);
        assert_eq!(qchar(&spec(&[1, 1], Direction::Increasing)).unwrap().len(), 8);
        assert_eq!(qchar(&spec(&[2], Direction::Increasing)).unwrap().len(), 3);
    }

    #[test]
    fn partition_oracle_examples() {
        let q = kr_qchar_by_partitions(1, 0, 2).unwrap();
        let got: Vec<String> = q.terms().keys().map(|m| m.to_string()).collect();
        for w in ["Y[1,0] Y[1,2]", "Y[1,0] Y[1,4]^-1", "Y[1,2]^-1 Y[1,4]^-1"] {
            assert!(got.contains(&w.to_string()), "{w}");
        }
        assert_eq!(q.len(), 3);
        assert_eq!(kr_qchar_by_partitions(2, 0, 2).unwrap().len(), 6);
    }

    #[test]
    fn dimensions_small() {
        for n in 1..=3usize {
            for lam in lambdas(n, 3) {
                let want = weyl_dimension(&lam).unwrap() as u64;
                for dir in [Direction::Increasing, Direction::Decreasing] {
                    let s = MinAffSpec::new(n, lam.clone(), dir, 0).unwrap();
                    assert_eq!(qchar(&s).unwrap().dimension(), want, "{lam:?} {dir:?}");
                }
            }
        }
        assert_eq!(weyl_dimension(&[1, 1]).unwrap(), 8);
        assert_eq!(weyl_dimension(&[2, 0, 0]).unwrap(), 10);
    }

    #[test]
    fn recognition() {
        let m = LMonomial::parse(2, "Y[1,-3] Y[2,0]").unwrap();
        let r = recognize_minaff(&m).unwrap().unwrap();
        assert_eq!(r.lambda, vec![1, 1]);
        assert_eq!(r.epsilon, Epsilon::Increasing);
        assert_eq!(r.anchor, 0);
        assert_eq!(drinfeld_of_spec(&r.to_spec(2).unwrap()), m);
        assert!(recognize_minaff(&LMonomial::parse(1, "Y[1,0] Y[1,4]").unwrap()).unwrap().is_none());
        let dec = LMonomial::parse(2, "Y[1,3] Y[2,0]").unwrap();
        assert_eq!(recognize_minaff(&dec).unwrap().unwrap().epsilon, Epsilon::Decreasing);
        assert!(recognize_minaff(&LMonomial::parse(2, "Y[1,5] Y[2,0]").unwrap()).unwrap().is_none());
        assert!(recognize_minaff(&LMonomial::parse(1, "Y[1,0]^-1").unwrap()).is_err());
        let single = recognize_minaff(&LMonomial::parse(3, "Y[2,4] Y[2,6]").unwrap()).unwrap().unwrap();
        assert_eq!(single.epsilon, Epsilon::Both);
    }

    #[test]
    fn cache_and_json() {
        let cache = QCharCache::new();
        let a = cache.get(&spec(&[0, 1], Direction::Increasing)).unwrap();
        let b = cache.get(&spec(&[0, 1], Direction::Decreasing)).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);

        let s = MinAffSpec::new(2, vec![1, 1], Direction::Decreasing, -2).unwrap();
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, r#"{"n":2,"lambda":[1,1],"dir":"dec","shift":-2}"#);
        assert_eq!(serde_json::from_str::<MinAffSpec>(&js).unwrap(), s);
        assert!(serde_json::from_str::<MinAffSpec>(r#"{"n":2,"lambda":[0,0],"dir":"inc"}"#).is_err());
        let kr = KRSpec::new(3, 3, -1, 2).unwrap();
        assert_eq!(serde_json::to_string(&kr).unwrap(), r#"{"n":3,"node":3,"r":-1,"k":2}"#);
        assert!(KRSpec::new(3, 2, 0, 1).is_err());
        let q = qchar(&s).unwrap();
        let back: QChar = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        assert_eq!(back, q);
    }
}
