//! Tensor products of a minimal affinization with a KR module.
//!
//! The dominant part of the product qcharacter is always computed by brute
//! force. Closed-form predictions (reducibility conditions, the extra simple
//! factor `λ'`, the dominant list) are checked against it, and any mismatch is
//! reported as [`Error::TheoremViolation`].
//!
//! The normal form is an increasing minimal affinization times a KR module at
//! node `n`. The other three combinations of direction and KR node are
//! reduced to it by a duality transform.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lweight::{expand_lroot_path, le, spectral_lroot_path, transform, y_string, LMonomial, Transform};
use crate::minaff::{
    drinfeld_of_spec, highest_tableau, recognize_minaff, Direction, Epsilon, KRSpec, MinAffSpec, QChar, QCharCache,
};
use crate::tableaux::{is_semistandard, monomial_of_tableau, Tableau};

fn violation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::TheoremViolation(msg.into()))
}

/// Convolution of two qcharacters.
pub fn product_qchar(q1: &QChar, q2: &QChar) -> Result<QChar> {
    if q1.rank() != q2.rank() {
        return invalid(format!("rank mismatch: {} vs {}", q1.rank(), q2.rank()));
    }
    let mut out = std::collections::BTreeMap::new();
    for (a, &ma) in q1.terms() {
        for (b, &mb) in q2.terms() {
            *out.entry(a * b).or_insert(0u64) += ma * mb;
        }
    }
    QChar::from_terms(q1.rank(), out)
}

/// Dominant terms sorted from the top of the ℓ-weight order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Spectrum {
    pub entries: Vec<(LMonomial, u64)>,
    /// Whether every pair of entries is comparable.
    pub chain: bool,
}

/// Filters dominant terms and sorts them descending under [`le`].
///
/// Entries are ranked by how many others lie strictly above them, with ties
/// broken by the canonical monomial order; `chain` is false if some pair is
/// incomparable.
pub fn dominant_spectrum(qc: &QChar) -> Spectrum {
    let dom = qc.dominant_terms();
    let k = dom.len();
    let mut above = vec![0usize; k];
    let mut chain = true;
    for a in 0..k {
        for b in a + 1..k {
            let ab = le(&dom[a].0, &dom[b].0).expect("same rank");
            let ba = le(&dom[b].0, &dom[a].0).expect("same rank");
            if ab {
                above[a] += 1;
            }
            if ba {
                above[b] += 1;
            }
            if !ab && !ba {
                chain = false;
            }
        }
    }
    let mut idx: Vec<usize> = (0..k).collect();
    idx.sort_by(|&x, &y| above[x].cmp(&above[y]).then_with(|| dom[x].0.cmp(&dom[y].0)));
    Spectrum { entries: idx.into_iter().map(|i| dom[i].clone()).collect(), chain }
}

fn require_increasing(spec: &MinAffSpec) -> Result<()> {
    if spec.is_directional() && spec.direction() != Direction::Increasing {
        return invalid("expected an increasing minimal affinization");
    }
    Ok(())
}

fn column_lengths(t: &Tableau) -> Vec<usize> {
    t.shape().columns().iter().map(|c| c.0).collect()
}

/// `d_j`: position of column `j` among the columns of its length.
fn column_rank(spec: &MinAffSpec, j: usize, len: usize) -> i32 {
    j as i32 - spec.partial_sum(len + 1, spec.rank()) as i32
}

/// The tableau `S_{c,f,p}`: columns `c..=f` of the highest tableau get last content `p`.
///
/// Conventions: `f < c`, `c > |λ|` or `p = 0` give the highest tableau itself;
/// `f > |λ|` is clamped. The monomial is cross-checked against the ℓ-root
/// product `ω ∏_{j=c}^{f} A[l_j, p-1, r_{l_j} + 2(λ(h_{l_j}) - d_j)]^-1`.
pub fn family_s(spec: &MinAffSpec, c: usize, f: usize, p: usize) -> Result<(Tableau, LMonomial)> {
    require_increasing(spec)?;
    let n = spec.rank();
    if c == 0 {
        return invalid("column index c starts at 1");
    }
    if p > n + 1 {
        return invalid(format!("p = {p} exceeds n+1"));
    }
    let top = highest_tableau(spec);
    let omega = drinfeld_of_spec(spec);
    let total = spec.size() as usize;
    if f < c || c > total || p == 0 {
        return Ok((top, omega));
    }
    let f = f.min(total);
    let lens = column_lengths(&top);
    if p <= lens[c - 1] {
        return invalid(format!("p = {p} does not exceed the length {} of column {c}", lens[c - 1]));
    }
    let mut cols = top.columns().to_vec();
    for col in cols.iter_mut().take(f).skip(c - 1) {
        *col.last_mut().expect("nonempty column") = p;
    }
    let t = Tableau::new(n, top.shape().clone(), cols)?;
    let m = monomial_of_tableau(&t);
    let mut roots = omega;
    for (j, &l) in lens.iter().enumerate().take(f).skip(c - 1) {
        let x = spec.anchor(l).expect("column node in support")
            + 2 * (spec.lambda_at(l) as i32 - column_rank(spec, j + 1, l));
        roots = &roots / &expand_lroot_path(n, l, p - 1, x)?;
    }
    if roots != m || !is_semistandard(&t) {
        return Err(Error::InvariantViolation(format!("S_{{{c},{f},{p}}}: box product {m} vs root product {roots}")));
    }
    Ok((t, m))
}

/// The tableau `T_{m,p}`: the first `m` columns of the KR rectangle skip content `p`.
///
/// `m > k` is clamped and `p = n+1` gives the rectangle itself. The monomial
/// is checked three ways: box product, `ϖ ∏_{l=1}^{m} A[n,p,r+2(k-l)]^-1`, and
/// the closed form `Y[p-1,s+p-2(m-1),m] Y[p,s+p-2m+3,m]^-1 Y[n,r,k-m]` with
/// `s = r+2(k-p)+n-1`.
pub fn family_t(kr: &KRSpec, m: u32, p: usize) -> Result<(Tableau, LMonomial)> {
    let n = kr.rank();
    if kr.node() != n {
        return invalid("T_{m,p} is defined for KR modules at node n");
    }
    if p == 0 || p > n + 1 {
        return invalid(format!("p = {p} outside 1..={}", n + 1));
    }
    let (r, k) = (kr.r(), kr.k());
    let m = m.min(k);
    let top = highest_tableau(&kr.to_minaff());
    let varpi = kr.drinfeld();
    if p == n + 1 || m == 0 {
        return Ok((top, varpi));
    }
    let gapped: Vec<usize> = (1..p).chain(p + 1..=n + 1).collect();
    let mut cols = top.columns().to_vec();
    for col in cols.iter_mut().take(m as usize) {
        col.clone_from(&gapped);
    }
    let t = Tableau::new(n, top.shape().clone(), cols)?;
    let boxes = monomial_of_tableau(&t);

    let mut roots = varpi.clone();
    for l in 1..=m as i32 {
        roots = &roots / &expand_lroot_path(n, n, p, r + 2 * (k as i32 - l))?;
    }
    let (m_i, p_i) = (m as i32, p as i32);
    let s = r + 2 * (k as i32 - p_i) + n as i32 - 1;
    let mut closed = y_string(n, p, s + p_i - 2 * m_i + 3, m)?.inverse();
    if p > 1 {
        closed = &closed * &y_string(n, p - 1, s + p_i - 2 * (m_i - 1), m)?;
    }
    closed = &closed * &y_string(n, n, s - 2 * (k as i32 - p_i) - n as i32 + 1, k - m)?;
    if boxes != roots || boxes != closed || !is_semistandard(&t) {
        return Err(Error::InvariantViolation(format!(
            "T_{{{m},{p}}}: box {boxes}, roots {roots}, closed form {closed}"
        )));
    }
    Ok((t, boxes))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "irred")]
    Irreducible,
    #[serde(rename = "i")]
    CaseI,
    #[serde(rename = "ii")]
    CaseII,
}

/// Outcome of the reducibility conditions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CaseTag {
    pub case: Case,
    pub p: Option<usize>,
    pub kprime: Option<u32>,
}

impl CaseTag {
    pub fn irreducible() -> Self {
        CaseTag { case: Case::Irreducible, p: None, kprime: None }
    }

    pub fn is_reducible(&self) -> bool {
        self.case != Case::Irreducible
    }
}

/// Which combination of direction and KR node a pair falls into.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Increasing, KR at node `n`.
    Normal,
    /// Decreasing, KR at node 1.
    A,
    /// Increasing, KR at node 1.
    B,
    /// Decreasing, KR at node `n`.
    C,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Normal, Variant::A, Variant::B, Variant::C];

    pub fn direction(self) -> Direction {
        match self {
            Variant::Normal | Variant::B => Direction::Increasing,
            Variant::A | Variant::C => Direction::Decreasing,
        }
    }

    pub fn kr_node(self, n: usize) -> usize {
        match self {
            Variant::Normal | Variant::C => n,
            Variant::A | Variant::B => 1,
        }
    }

    /// The branch of a pair. A spec with one node in its support counts as
    /// increasing, so every rank-one pair is normal.
    pub fn of(spec: &MinAffSpec, kr: &KRSpec) -> Result<Variant> {
        let n = spec.rank();
        if kr.rank() != n {
            return invalid("rank mismatch between the two factors");
        }
        let dir = if spec.is_directional() { spec.direction() } else { Direction::Increasing };
        Ok(match (dir, kr.node() == n) {
            (Direction::Increasing, true) => Variant::Normal,
            (Direction::Decreasing, false) => Variant::A,
            (Direction::Increasing, false) => Variant::B,
            (Direction::Decreasing, true) => Variant::C,
        })
    }

    /// Whether the pair may be read in this branch (single-node supports fit either direction).
    pub fn accepts(self, spec: &MinAffSpec, kr: &KRSpec) -> bool {
        kr.rank() == spec.rank()
            && kr.node() == self.kr_node(spec.rank())
            && (!spec.is_directional() || spec.direction() == self.direction())
    }

    /// Transform taking the pair to normal form.
    fn to_normal(self) -> Option<Transform> {
        match self {
            Variant::Normal => None,
            Variant::A => Some(Transform::StarInv),
            Variant::B => Some(Transform::Kappa),
            Variant::C => Some(Transform::Minus),
        }
    }

    /// Inverse of [`Variant::to_normal`].
    fn back_from_normal(self) -> Option<Transform> {
        match self {
            Variant::Normal => None,
            Variant::A => Some(Transform::Star),
            Variant::B => Some(Transform::Kappa),
            Variant::C => Some(Transform::Minus),
        }
    }

    /// Node correspondence between the branch and normal form.
    fn map_node(self, n: usize, p: usize) -> usize {
        match self {
            Variant::A | Variant::B => n + 1 - p,
            Variant::Normal | Variant::C => p,
        }
    }

    /// Whether `V = MA ⊗ KR` fails to be highest-ℓ-weight in the given case.
    fn v_not_highest(self, case: Case) -> bool {
        match self {
            Variant::B => case == Case::CaseI,
            _ => case == Case::CaseII,
        }
    }
}

/// Value of `r` solving the equation of condition (i) for `(p, k')`.
fn solve_i(v: Variant, spec: &MinAffSpec, p: usize, kp: u32, k: u32) -> i32 {
    let n = spec.rank() as i32;
    let rp = spec.anchor(p).expect("p in support");
    let lp = spec.lambda_at(p) as i32;
    let (p, kp, k) = (p as i32, kp as i32, k as i32);
    match v {
        Variant::Normal => rp + 2 * kp - 2 * k - n + p - 2,
        Variant::A => rp + 2 * kp - 2 * k - p - 1,
        Variant::B => rp + 2 * lp + p + 1 - 2 * kp,
        Variant::C => rp + 2 * lp + n - p + 2 - 2 * kp,
    }
}

/// Value of `r` solving the equation of condition (ii) for `k'`.
fn solve_ii(v: Variant, spec: &MinAffSpec, kp: u32, k: u32) -> i32 {
    let n = spec.rank() as i32;
    let support = spec.support();
    let (i0, i1) = (*support.last().expect("nonzero"), support[0]);
    let (r0, l0) = (spec.anchor(i0).expect("support"), spec.lambda_at(i0) as i32);
    let (r1, l1) = (spec.anchor(i1).expect("support"), spec.lambda_at(i1) as i32);
    let (i0, i1, kp, k) = (i0 as i32, i1 as i32, kp as i32, k as i32);
    match v {
        Variant::Normal => r0 + 2 * l0 + n - i0 + 2 - 2 * kp,
        Variant::A => r1 + 2 * l1 + i1 + 1 - 2 * kp,
        Variant::B => r1 + 2 * kp - 2 * k - i1 - 1,
        Variant::C => r0 + 2 * kp - 2 * k - n + i0 - 2,
    }
}

/// The node `p` attached to `k'` in condition (ii).
fn p_ii(v: Variant, spec: &MinAffSpec, kp: u32) -> usize {
    let n = spec.rank();
    match v {
        Variant::Normal | Variant::C => (1..=n).rev().find(|&i| spec.partial_sum(i, n) >= kp).unwrap_or(1),
        Variant::A | Variant::B => (1..=n).find(|&i| spec.partial_sum(1, i) >= kp).unwrap_or(n),
    }
}

/// Evaluates the two reducibility conditions of a branch on a pair.
///
/// Fails with a theorem violation if a condition has more than one solution
/// or both conditions hold.
pub fn theorem_conditions(v: Variant, spec: &MinAffSpec, kr: &KRSpec) -> Result<CaseTag> {
    if !v.accepts(spec, kr) {
        return invalid(format!("pair does not belong to branch {v:?}"));
    }
    let (r, k) = (kr.r(), kr.k());
    let mut hits_i = Vec::new();
    for p in spec.support() {
        for kp in 1..=spec.lambda_at(p).min(k) {
            if solve_i(v, spec, p, kp, k) == r {
                hits_i.push((p, kp));
            }
        }
    }
    let hits_ii: Vec<u32> = (1..=spec.size().min(k)).filter(|&kp| solve_ii(v, spec, kp, k) == r).collect();
    if hits_i.len() > 1 || hits_ii.len() > 1 || (!hits_i.is_empty() && !hits_ii.is_empty()) {
        return violation(format!("conditions not exclusive: (i) {hits_i:?}, (ii) {hits_ii:?}"));
    }
    Ok(if let Some(&(p, kp)) = hits_i.first() {
        CaseTag { case: Case::CaseI, p: Some(p), kprime: Some(kp) }
    } else if let Some(&kp) = hits_ii.first() {
        CaseTag { case: Case::CaseII, p: Some(p_ii(v, spec, kp)), kprime: Some(kp) }
    } else {
        CaseTag::irreducible()
    })
}

/// Smallest and largest `r` solving either condition of a branch for
/// `k'` in `1..=kprime_max`, widened by `pad`.
pub fn resonant_window(v: Variant, spec: &MinAffSpec, k: u32, kprime_max: u32, pad: u32) -> (i32, i32) {
    let mut rs = Vec::new();
    for kp in 1..=kprime_max {
        for p in spec.support() {
            rs.push(solve_i(v, spec, p, kp, k));
        }
        rs.push(solve_ii(v, spec, kp, k));
    }
    let lo = rs.iter().copied().min().unwrap_or(0) - pad as i32;
    let hi = rs.iter().copied().max().unwrap_or(0) + pad as i32;
    (lo, hi)
}

/// When the normal-form product has more than one dominant term.
///
/// This is the condition pair with the caps on `k'` that make the dominant
/// list nontrivial; it is weaker than reducibility, which additionally needs
/// `k' <= |λ|` in the upper regime and `k' <= k` in the lower one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Resonance {
    None,
    /// `r_{i0} + 2λ(h_{i0}) + n - i0 + 2 = r + 2k'` with `1 <= k' <= k`.
    Upper {
        kprime: u32,
    },
    /// `r + 2k + n - p + 2 = r_p + 2k'` with `1 <= k' <= λ(h_p)`.
    Lower {
        p: usize,
        kprime: u32,
    },
}

pub fn dominant_resonance(spec: &MinAffSpec, kr: &KRSpec) -> Result<Resonance> {
    require_normal(spec, kr)?;
    let (r, k) = (kr.r(), kr.k());
    if let Some(kp) = (1..=k).find(|&kp| solve_ii(Variant::Normal, spec, kp, k) == r) {
        return Ok(Resonance::Upper { kprime: kp });
    }
    for p in spec.support() {
        for kp in 1..=spec.lambda_at(p) {
            if solve_i(Variant::Normal, spec, p, kp, k) == r {
                return Ok(Resonance::Lower { p, kprime: kp });
            }
        }
    }
    Ok(Resonance::None)
}

fn require_normal(spec: &MinAffSpec, kr: &KRSpec) -> Result<()> {
    if !Variant::Normal.accepts(spec, kr) {
        return invalid("expected an increasing minimal affinization and a KR module at node n");
    }
    Ok(())
}

/// Closed-form dominant terms of the normal-form product, from the top down.
///
/// Upper regime: `ω^{S_{1,f,n+1}} ϖ` for `f = 0..=min(k', |λ|)`.
/// Lower regime: `ω ω^{T_{m,p}}` for `m = 0..=min(k', k)`, then
/// `ω^{S_{c,f,p}} ω^{T_{m,p}}` for `k' <= m <= k`, `f = c+m-k'-ε <= |λ|`,
/// `ε ∈ {1, 0}`, with `c = 1 + Σ_{i>=p} λ(h_i)`. Otherwise `{λ}`.
pub fn expected_dominants(spec: &MinAffSpec, kr: &KRSpec) -> Result<Vec<LMonomial>> {
    let n = spec.rank();
    let omega = drinfeld_of_spec(spec);
    let varpi = kr.drinfeld();
    let total = spec.size() as usize;
    let k = kr.k();
    let mut out: Vec<LMonomial> = Vec::new();
    let mut push = |m: LMonomial| {
        if !out.contains(&m) {
            out.push(m);
        }
    };
    match dominant_resonance(spec, kr)? {
        Resonance::None => push(&omega * &varpi),
        Resonance::Upper { kprime } => {
            for f in 0..=(kprime as usize).min(total) {
                push(&family_s(spec, 1, f, n + 1)?.1 * &varpi);
            }
        }
        Resonance::Lower { p, kprime } => {
            let c = 1 + spec.partial_sum(p, n) as usize;
            for m in 0..=kprime.min(k) {
                push(&omega * &family_t(kr, m, p)?.1);
            }
            for m in kprime..=k {
                for eps in [1usize, 0] {
                    let f = (c + (m - kprime) as usize).checked_sub(eps);
                    if let Some(f) = f.filter(|&f| f <= total) {
                        push(&family_s(spec, c, f, p)?.1 * &family_t(kr, m, p)?.1);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Whether `hi / lo` is a single path `A[a,b,x]`.
pub fn single_path_step(hi: &LMonomial, lo: &LMonomial) -> Option<(usize, usize, i32)> {
    let q = hi / lo;
    let n = q.rank();
    let rs: Vec<i32> = q.terms().iter().map(|t| t.1).collect();
    let (min, max) = (*rs.iter().min()?, *rs.iter().max()?);
    for a in 1..=n {
        for b in 1..=n {
            for x in min - n as i32 - 2..=max + 1 {
                if expand_lroot_path(n, a, b, x).ok()? == q {
                    return Some((a, b, x));
                }
            }
        }
    }
    None
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DEntry {
    pub m: LMonomial,
    pub mult: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SocleHead {
    pub socle: LMonomial,
    pub head: LMonomial,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SocleHeads {
    /// `V = MA ⊗ KR`.
    #[serde(rename = "V")]
    pub v: SocleHead,
    /// `V' = KR ⊗ MA`.
    #[serde(rename = "Vprime")]
    pub vprime: SocleHead,
}

/// Classification of one tensor product.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TensorReport {
    pub lambda: LMonomial,
    #[serde(rename = "D")]
    pub d: Vec<DEntry>,
    pub case: Case,
    pub p: Option<usize>,
    pub kprime: Option<u32>,
    pub lambda_prime: Option<LMonomial>,
    pub socle_head: SocleHeads,
    pub variant: Variant,
}

impl TensorReport {
    pub fn tag(&self) -> CaseTag {
        CaseTag { case: self.case, p: self.p, kprime: self.kprime }
    }

    pub fn is_reducible(&self) -> bool {
        self.case != Case::Irreducible
    }
}

fn socle_heads(v: Variant, case: Case, lambda: &LMonomial, lambda_prime: Option<&LMonomial>) -> SocleHeads {
    let lam = lambda.clone();
    let Some(lp) = lambda_prime.cloned() else {
        let both = SocleHead { socle: lam.clone(), head: lam };
        return SocleHeads { v: both.clone(), vprime: both };
    };
    let top_sub = SocleHead { socle: lam.clone(), head: lp.clone() };
    let top_quot = SocleHead { socle: lp, head: lam };
    if v.v_not_highest(case) {
        SocleHeads { v: top_sub, vprime: top_quot }
    } else {
        SocleHeads { v: top_quot, vprime: top_sub }
    }
}

fn brute_spectrum(spec: &MinAffSpec, kr: &KRSpec, cache: &QCharCache) -> Result<Spectrum> {
    let qv = cache.get(spec)?;
    let qw = cache.get(&kr.to_minaff())?;
    let spectrum = dominant_spectrum(&product_qchar(&qv, &qw)?);
    let lambda = &drinfeld_of_spec(spec) * &kr.drinfeld();
    if spectrum.entries.first().map(|e| &e.0) != Some(&lambda) {
        return violation(format!("top dominant term is not {lambda}"));
    }
    Ok(spectrum)
}

fn to_entries(spectrum: Spectrum) -> Vec<DEntry> {
    spectrum.entries.into_iter().map(|(m, mult)| DEntry { m, mult }).collect()
}

/// Brute-force dominant spectrum with the chain and multiplicity-one checks.
fn checked_spectrum(spec: &MinAffSpec, kr: &KRSpec, cache: &QCharCache) -> Result<Vec<DEntry>> {
    let spectrum = brute_spectrum(spec, kr, cache)?;
    let lambda = &spectrum.entries[0].0;
    if !spectrum.chain {
        return violation(format!("dominant terms of {lambda} are not totally ordered"));
    }
    if let Some((m, c)) = spectrum.entries.iter().find(|e| e.1 != 1) {
        return violation(format!("dominant term {m} of {lambda} has multiplicity {c}"));
    }
    Ok(to_entries(spectrum))
}

/// `λ'` for the normal form, computed three ways and required to agree.
fn lambda_prime_normal(spec: &MinAffSpec, kr: &KRSpec, tag: &CaseTag) -> Result<Option<LMonomial>> {
    let (Some(p), Some(kp)) = (tag.p, tag.kprime) else { return Ok(None) };
    let n = spec.rank();
    let omega = drinfeld_of_spec(spec);
    let varpi = kr.drinfeld();
    let lambda = &omega * &varpi;
    let (r, k) = (kr.r(), kr.k() as i32);
    let (tableau, roots, alphas) = match tag.case {
        Case::Irreducible => return Ok(None),
        Case::CaseI => {
            let tableau = &omega * &family_t(kr, kp, p)?.1;
            let mut roots = lambda.clone();
            let mut alphas = lambda.clone();
            let s = r + k - 1;
            for l in 1..=kp as i32 {
                roots = &roots / &expand_lroot_path(n, n, p, r + 2 * (k - l))?;
                alphas = &alphas / &spectral_lroot_path(n, n, p, s + k - 1 - 2 * (l - 1))?;
            }
            (tableau, roots, alphas)
        }
        Case::CaseII => {
            let tableau = &family_s(spec, 1, kp as usize, n + 1)?.1 * &varpi;
            let lens = column_lengths(&highest_tableau(spec));
            let mut roots = lambda.clone();
            for (j, &l) in lens.iter().enumerate().take(kp as usize) {
                let x = spec.anchor(l).expect("support") + 2 * (spec.lambda_at(l) as i32 - column_rank(spec, j + 1, l));
                roots = &roots / &expand_lroot_path(n, l, n, x)?;
            }
            let mut alphas = lambda.clone();
            let d = kp as i32 - spec.partial_sum(p + 1, n) as i32;
            for i in p..=spec.i0() {
                let li = spec.lambda_at(i) as i32;
                if li == 0 {
                    continue;
                }
                let si = spec.anchor(i).expect("support") + li - 1;
                let count = if i == p { d } else { li };
                for m in 1..=count {
                    alphas = &alphas / &spectral_lroot_path(n, i, n, si + li - 1 - 2 * (m - 1))?;
                }
            }
            (tableau, roots, alphas)
        }
    };
    if tableau != roots || tableau != alphas {
        return violation(format!("λ' disagrees: tableau {tableau}, roots {roots}, alpha form {alphas}"));
    }
    Ok(Some(tableau))
}

/// Checks the statement that the pair `(p, k')` encodes a minimal affinization.
fn check_pair_recognition(spec: &MinAffSpec, kr: &KRSpec, tag: &CaseTag) -> Result<()> {
    let (Some(p), Some(kp)) = (tag.p, tag.kprime) else { return Ok(()) };
    let n = spec.rank();
    let rp = spec.anchor(p).expect("support");
    let (r, k) = (kr.r(), kr.k());
    let accept = |m: &LMonomial, want: Epsilon| -> Result<bool> {
        Ok(matches!(recognize_minaff(m)?, Some(rec) if rec.epsilon == want || rec.epsilon == Epsilon::Both))
    };
    let ok = match tag.case {
        Case::Irreducible => true,
        Case::CaseI => {
            let m = &y_string(n, p, rp, spec.lambda_at(p))? * &y_string(n, n, r, k - kp + 1)?;
            accept(&m, Epsilon::Decreasing)?
        }
        Case::CaseII => {
            let len = spec.partial_sum(p, n) - kp + 1;
            let head = &y_string(n, p, rp, len)? * &kr.drinfeld();
            let mut full = head.clone();
            for i in spec.support().into_iter().filter(|&i| i < p) {
                full = &full * &y_string(n, i, spec.anchor(i).expect("support"), spec.lambda_at(i))?;
            }
            accept(&head, Epsilon::Increasing)? && accept(&full, Epsilon::Increasing)?
        }
    };
    if !ok {
        return violation(format!("the pair (p,k') = ({p},{kp}) does not encode a minimal affinization"));
    }
    Ok(())
}

/// Normal-form classification with a fresh cache.
pub fn classify_normal(spec: &MinAffSpec, kr: &KRSpec) -> Result<TensorReport> {
    classify_normal_with(spec, kr, &QCharCache::new())
}

/// Classifies an increasing minimal affinization tensored with a KR module at node `n`.
pub fn classify_normal_with(spec: &MinAffSpec, kr: &KRSpec, cache: &QCharCache) -> Result<TensorReport> {
    require_normal(spec, kr)?;
    let lambda = &drinfeld_of_spec(spec) * &kr.drinfeld();
    let d = checked_spectrum(spec, kr, cache)?;
    let tag = theorem_conditions(Variant::Normal, spec, kr)?;

    let expected = expected_dominants(spec, kr)?;
    let found: Vec<&LMonomial> = d.iter().map(|e| &e.m).collect();
    if found != expected.iter().collect::<Vec<_>>() {
        let show = |v: Vec<&LMonomial>| v.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ");
        return violation(format!("D = [{}], predicted [{}]", show(found), show(expected.iter().collect())));
    }
    for w in d.windows(2) {
        if single_path_step(&w[0].m, &w[1].m).is_none() {
            return violation(format!("{} / {} is not a single ℓ-root path", w[0].m, w[1].m));
        }
    }
    let resonant = dominant_resonance(spec, kr)? != Resonance::None;
    if resonant != (d.len() >= 2) {
        return violation(format!("|D| = {} but resonance is {resonant}", d.len()));
    }
    if tag.is_reducible() && d.len() < 2 {
        return violation("reducible product with a single dominant term");
    }

    let lambda_prime = lambda_prime_normal(spec, kr, &tag)?;
    if let (Some(lp), Some(kp)) = (&lambda_prime, tag.kprime) {
        let at = match tag.case {
            Case::CaseI => d.get(kp as usize).map(|e| &e.m),
            _ => d.last().map(|e| &e.m),
        };
        if at != Some(lp) {
            return violation(format!("λ' = {lp} is not at its predicted position in D"));
        }
    }
    check_pair_recognition(spec, kr, &tag)?;
    let socle_head = socle_heads(Variant::Normal, tag.case, &lambda, lambda_prime.as_ref());
    Ok(TensorReport {
        lambda,
        d,
        case: tag.case,
        p: tag.p,
        kprime: tag.kprime,
        lambda_prime,
        socle_head,
        variant: Variant::Normal,
    })
}

/// Side results of a variant classification.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct VariantDiagnostics {
    /// The transformed dominant list equals the brute-force list as a set.
    pub transported_d_matches: bool,
    /// The brute-force dominant terms are totally ordered.
    pub chain: bool,
    /// Every brute-force dominant term has multiplicity one.
    pub multiplicity_free: bool,
}

impl VariantDiagnostics {
    fn normal() -> Self {
        VariantDiagnostics { transported_d_matches: true, chain: true, multiplicity_free: true }
    }
}

/// Classification of any of the four branches with a fresh cache.
pub fn classify_variant(spec: &MinAffSpec, kr: &KRSpec) -> Result<TensorReport> {
    Ok(classify_variant_with(spec, kr, &QCharCache::new())?.0)
}

/// Classifies a pair in the branch chosen by [`Variant::of`].
pub fn classify_variant_with(
    spec: &MinAffSpec,
    kr: &KRSpec,
    cache: &QCharCache,
) -> Result<(TensorReport, VariantDiagnostics)> {
    classify_as(Variant::of(spec, kr)?, spec, kr, cache)
}

/// Classifies a pair read in a given branch.
///
/// The pair is moved to normal form by the branch's duality transform and
/// classified there. The branch's own conditions must give the same case and
/// `k'` (with `p` matched through the node correspondence), the transported
/// `λ'` must be a dominant term of the product computed directly. The dualities
/// do not carry qcharacters to qcharacters, so the chain and multiplicity-one
/// properties of that product are reported rather than enforced.
pub fn classify_as(
    v: Variant,
    spec: &MinAffSpec,
    kr: &KRSpec,
    cache: &QCharCache,
) -> Result<(TensorReport, VariantDiagnostics)> {
    if !v.accepts(spec, kr) {
        return invalid(format!("pair does not belong to branch {v:?}"));
    }
    let (Some(there), Some(back)) = (v.to_normal(), v.back_from_normal()) else {
        let report = classify_normal_with(spec, kr, cache)?;
        return Ok((report, VariantDiagnostics::normal()));
    };
    let n = spec.rank();
    let omega = drinfeld_of_spec(spec);
    let varpi = kr.drinfeld();
    let lambda = &omega * &varpi;

    let omega_t = transform(&omega, there);
    let rec = recognize_minaff(&omega_t)?
        .filter(|rec| rec.epsilon != Epsilon::Decreasing)
        .ok_or_else(|| Error::InvariantViolation(format!("{omega_t} is not an increasing minimal affinization")))?;
    let spec_t = rec.to_spec(n)?;
    let varpi_t = transform(&varpi, there);
    let start = varpi_t.terms().iter().map(|t| t.1).min().unwrap_or_default();
    let kr_t = KRSpec::new(n, n, start, kr.k())?;
    if kr_t.drinfeld() != varpi_t {
        return Err(Error::InvariantViolation(format!("{varpi_t} is not a KR string at node {n}")));
    }
    let normal = classify_normal_with(&spec_t, &kr_t, cache)?;

    let own = theorem_conditions(v, spec, kr)?;
    let agrees = own.case == normal.case && own.kprime == normal.kprime && own.p == normal.p.map(|p| v.map_node(n, p));
    if !agrees {
        return violation(format!("branch {v:?} gives {own:?}, normal form gives {:?}", normal.tag()));
    }

    let spectrum = brute_spectrum(spec, kr, cache)?;
    let chain = spectrum.chain;
    let multiplicity_free = spectrum.entries.iter().all(|e| e.1 == 1);
    let d = to_entries(spectrum);
    let lambda_prime = normal.lambda_prime.as_ref().map(|m| transform(m, back));
    if let Some(lp) = &lambda_prime {
        if !d.iter().any(|e| &e.m == lp) {
            let shown: Vec<String> = d.iter().map(|e| e.m.to_string()).collect();
            return violation(format!("transported λ' = {lp} is not in D = [{}]", shown.join(", ")));
        }
    }
    if own.is_reducible() && d.len() < 2 {
        return violation("reducible product with a single dominant term");
    }
    let brute: BTreeSet<&LMonomial> = d.iter().map(|e| &e.m).collect();
    let moved: Vec<LMonomial> = normal.d.iter().map(|e| transform(&e.m, back)).collect();
    let transported_d_matches = moved.iter().collect::<BTreeSet<_>>() == brute;

    let socle_head = socle_heads(v, own.case, &lambda, lambda_prime.as_ref());
    let report =
        TensorReport { lambda, d, case: own.case, p: own.p, kprime: own.kprime, lambda_prime, socle_head, variant: v };
    Ok((report, VariantDiagnostics { transported_d_matches, chain, multiplicity_free }))
}

/// One pair of the verification grid, to be read in branch `variant`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GridPoint {
    pub spec: MinAffSpec,
    pub kr: KRSpec,
    pub variant: Variant,
}

/// Nonzero highest weights of rank `n` with `|λ| <= max`, in lexicographic order.
pub fn weights_up_to(n: usize, max: u32) -> Vec<Vec<u32>> {
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
    let mut out = Vec::new();
    rec(&mut vec![0; n], 0, max, &mut out);
    out
}

/// All pairs with rank `<= n_max`, `|λ| <= lambda_sum_max`, `k <= k_max` and
/// `r` in the resonant window of the branch padded by `pad`. Specs have shift 0.
pub fn sweep_grid(
    n_max: usize,
    lambda_sum_max: u32,
    k_max: u32,
    pad: u32,
    variants: &[Variant],
) -> Result<Vec<GridPoint>> {
    if n_max == 0 || lambda_sum_max == 0 || k_max == 0 {
        return invalid("grid bounds must be positive");
    }
    let mut out = Vec::new();
    for n in 1..=n_max {
        for lambda in weights_up_to(n, lambda_sum_max) {
            for &variant in variants {
                let spec = MinAffSpec::new(n, lambda.clone(), variant.direction(), 0)?;
                for k in 1..=k_max {
                    let (lo, hi) = resonant_window(variant, &spec, k, k_max, pad);
                    for r in lo..=hi {
                        let kr = KRSpec::new(n, variant.kr_node(n), r, k)?;
                        out.push(GridPoint { spec: spec.clone(), kr, variant });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minaff::qchar;

    fn inc(lambda: &[u32], shift: i32) -> MinAffSpec {
        MinAffSpec::new(lambda.len(), lambda.to_vec(), Direction::Increasing, shift).unwrap()
    }

    fn mono(n: usize, s: &str) -> LMonomial {
        LMonomial::parse(n, s).unwrap()
    }

    #[test]
    fn products() {
        let a = qchar(&inc(&[1], 0)).unwrap();
        let b = qchar(&KRSpec::new(1, 1, -2, 1).unwrap().to_minaff()).unwrap();
        let p = product_qchar(&a, &b).unwrap();
        assert_eq!(p.len(), 4);
        let dom: Vec<String> = dominant_spectrum(&p).entries.iter().map(|e| e.0.to_string()).collect();
        assert_eq!(dom, vec!["Y[1,-2] Y[1,0]", "1"]);
        let one = QChar::from_terms(1, [(LMonomial::identity(1).unwrap(), 1)]).unwrap();
        assert_eq!(product_qchar(&a, &one).unwrap(), a);
        let c = qchar(&inc(&[1, 0], 0)).unwrap();
        let d = qchar(&KRSpec::new(2, 2, 3, 1).unwrap().to_minaff()).unwrap();
        assert_eq!(product_qchar(&c, &d).unwrap().dimension(), 9);
        assert!(product_qchar(&a, &c).is_err());
    }

    #[test]
    fn spectrum_examples() {
        let a = qchar(&inc(&[1], 0)).unwrap();
        let b = qchar(&KRSpec::new(1, 1, 0, 2).unwrap().to_minaff()).unwrap();
        let s = dominant_spectrum(&product_qchar(&a, &b).unwrap());
        let got: Vec<String> = s.entries.iter().map(|e| e.0.to_string()).collect();
        assert_eq!(got, vec!["Y[1,0]^2 Y[1,2]", "Y[1,0]"]);
        assert!(s.chain);
        let c = qchar(&inc(&[1, 0], 0)).unwrap();
        let d = qchar(&KRSpec::new(2, 2, 3, 1).unwrap().to_minaff()).unwrap();
        let s = dominant_spectrum(&product_qchar(&c, &d).unwrap());
        let got: Vec<String> = s.entries.iter().map(|e| e.0.to_string()).collect();
        assert_eq!(got, vec!["Y[1,0] Y[2,3]", "1"]);
        let single = dominant_spectrum(&qchar(&inc(&[1, 2], 1)).unwrap());
        assert_eq!(single.entries, vec![(drinfeld_of_spec(&inc(&[1, 2], 1)), 1)]);
        // two incomparable dominant monomials
        let q = QChar::from_terms(1, [(mono(1, "Y[1,0]"), 1), (mono(1, "Y[1,7]"), 1)]).unwrap();
        assert!(!dominant_spectrum(&q).chain);
    }

    #[test]
    fn s_family() {
        let spec = inc(&[1, 0], 0);
        let (t, m) = family_s(&spec, 1, 1, 3).unwrap();
        assert_eq!(t.columns(), &[vec![3]]);
        assert_eq!(t.shape().columns(), &[(1, 0)]);
        assert_eq!(m, mono(2, "Y[2,3]^-1"));
        assert_eq!(family_s(&spec, 2, 1, 3).unwrap().1, drinfeld_of_spec(&spec));
        assert_eq!(family_s(&spec, 1, 1, 0).unwrap().1, drinfeld_of_spec(&spec));
        assert_eq!(family_s(&spec, 1, 9, 3).unwrap().1, m);
        assert!(family_s(&spec, 1, 1, 1).is_err());
        let dec = MinAffSpec::new(2, vec![1, 1], Direction::Decreasing, 0).unwrap();
        assert!(family_s(&dec, 1, 1, 3).is_err());
    }

    #[test]
    fn t_family() {
        let kr = KRSpec::new(1, 1, -2, 1).unwrap();
        assert_eq!(family_t(&kr, 1, 1).unwrap().1, mono(1, "Y[1,0]^-1"));
        assert_eq!(family_t(&kr, 0, 1).unwrap().1, kr.drinfeld());
        assert_eq!(family_t(&kr, 1, 2).unwrap().1, kr.drinfeld());
        assert!(family_t(&KRSpec::new(2, 1, 0, 1).unwrap(), 1, 1).is_err());
        for n in 1..=4 {
            for k in 1..=3 {
                let kr = KRSpec::new(n, n, -1, k).unwrap();
                for p in 1..=n + 1 {
                    for m in 0..=k + 1 {
                        family_t(&kr, m, p).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn worked_examples() {
        let r = classify_normal(&inc(&[1], 0), &KRSpec::new(1, 1, -2, 1).unwrap()).unwrap();
        assert_eq!(r.case, Case::CaseI);
        assert_eq!((r.p, r.kprime), (Some(1), Some(1)));
        assert!(r.lambda_prime.as_ref().unwrap().is_identity());
        assert_eq!(r.d.len(), 2);
        assert!(r.socle_head.v.socle.is_identity());

        let r = classify_normal(&inc(&[1, 0], 0), &KRSpec::new(2, 2, 3, 1).unwrap()).unwrap();
        assert_eq!(r.case, Case::CaseII);
        assert_eq!((r.p, r.kprime), (Some(1), Some(1)));
        assert!(r.lambda_prime.as_ref().unwrap().is_identity());
        assert_eq!(r.socle_head.v.socle, r.lambda);

        let r = classify_normal(&inc(&[1, 0], 0), &KRSpec::new(2, 2, 0, 1).unwrap()).unwrap();
        assert_eq!(r.case, Case::Irreducible);
        assert_eq!(r.d.len(), 1);
    }

    #[test]
    fn expected_examples() {
        let spec = inc(&[1], 0);
        let kr = KRSpec::new(1, 1, 0, 2).unwrap();
        let got: Vec<String> = expected_dominants(&spec, &kr).unwrap().iter().map(|m| m.to_string()).collect();
        assert_eq!(got, vec!["Y[1,0]^2 Y[1,2]", "Y[1,0]"]);
        let r = classify_normal(&spec, &kr).unwrap();
        assert_eq!(r.case, Case::Irreducible);
        assert_eq!(r.d.len(), 2);
        let kr = KRSpec::new(2, 2, 0, 1).unwrap();
        assert_eq!(expected_dominants(&inc(&[1, 0], 0), &kr).unwrap().len(), 1);
    }

    #[test]
    fn variant_example() {
        let spec = MinAffSpec::new(2, vec![0, 1], Direction::Decreasing, 0).unwrap();
        assert_eq!(drinfeld_of_spec(&spec), mono(2, "Y[2,0]"));
        let kr = KRSpec::new(2, 1, 3, 1).unwrap();
        let cache = QCharCache::new();
        let (r, diag) = classify_as(Variant::A, &spec, &kr, &cache).unwrap();
        assert_eq!(r.case, Case::CaseII);
        assert!(r.lambda_prime.unwrap().is_identity());
        assert!(diag.transported_d_matches);
        let (rb, _) = classify_as(Variant::B, &spec, &kr, &cache).unwrap();
        assert_eq!(rb.case, Case::CaseI);
        assert_eq!(rb.lambda_prime, Some(LMonomial::identity(2).unwrap()));
        assert_eq!(rb.socle_head, r.socle_head);
    }

    #[test]
    fn rank_one_variants_collapse() {
        let spec = MinAffSpec::new(1, vec![1], Direction::Decreasing, 0).unwrap();
        let kr = KRSpec::new(1, 1, -2, 1).unwrap();
        let a = classify_variant(&spec, &kr).unwrap();
        let b = classify_normal(&inc(&[1], 0), &kr).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn report_json() {
        let r = classify_normal(&inc(&[1], 0), &KRSpec::new(1, 1, -2, 1).unwrap()).unwrap();
        let js = serde_json::to_value(&r).unwrap();
        assert_eq!(js["case"], "i");
        assert_eq!(js["variant"], "normal");
        assert_eq!(js["D"][1]["mult"], 1);
        assert!(js["socle_head"]["Vprime"]["head"].is_object());
        let back: TensorReport = serde_json::from_value(js).unwrap();
        assert_eq!(back, r);
    }
}
