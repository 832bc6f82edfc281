//! Degree-capped exact arithmetic in `Z[[X]]`, the Möbius pair `nu`/`mu`,
//! the collapse map to `Z[t_1..t_r]`, and the number-theoretic-function view.
//!
//! A `GradedSeries` stores the coset `f + J_{cap+1}` of the total-degree
//! filtration: a finite coefficient map together with the cap below which it
//! is exact. All ring operations are exact in every degree `<= cap` of the
//! result.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::grading::{MultiDegree, Partition};
use crate::monomial::{for_each_monomial_over, Monomial};

/// The variable range a series is known to live in: `Z[[X_n]]` or all of
/// `Z[[X]]`. This is bookkeeping about the ambient subring (it gates
/// `to_dirichlet` and records what `restrict_vars` produced); it is not part
/// of a series' value, since `Z[[X_a]]` includes into `Z[[X_b]]` for `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarBound {
    UpTo(u32),
    All,
}

impl VarBound {
    /// Smallest ambient ring containing both.
    pub fn join(self, other: VarBound) -> VarBound {
        match (self, other) {
            (VarBound::UpTo(a), VarBound::UpTo(b)) => VarBound::UpTo(a.max(b)),
            _ => VarBound::All,
        }
    }

    pub fn admits(self, var: u32) -> bool {
        match self {
            VarBound::UpTo(n) => var <= n,
            VarBound::All => true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GradedSeries {
    cap: u32,
    nvars: VarBound,
    coeffs: BTreeMap<Monomial, i64>,
}

// Equality is congruence mod J_{cap+1} at equal caps; the ambient variable
// bound is not part of the value.
impl PartialEq for GradedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.cap == other.cap && self.coeffs == other.coeffs
    }
}

impl Eq for GradedSeries {}

impl Hash for GradedSeries {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.cap.hash(state);
        self.coeffs.hash(state);
    }
}

impl GradedSeries {
    pub fn zero(cap: u32) -> Self {
        GradedSeries {
            cap,
            nvars: VarBound::UpTo(0),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(cap: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Monomial::one(), 1);
        GradedSeries {
            cap,
            nvars: VarBound::UpTo(0),
            coeffs,
        }
    }

    /// Build from terms; coefficients of repeated monomials are summed,
    /// zeros dropped. Errors if a term exceeds the cap.
    pub fn from_terms(
        cap: u32,
        terms: impl IntoIterator<Item = (Monomial, i64)>,
    ) -> Result<Self, Error> {
        let mut coeffs: BTreeMap<Monomial, i64> = BTreeMap::new();
        let mut nvars = VarBound::UpTo(0);
        for (m, c) in terms {
            let tdeg = m.tdeg();
            if tdeg > u64::from(cap) {
                return Err(Error::CapExceeded { tdeg, cap });
            }
            nvars = nvars.join(VarBound::UpTo(m.max_var()));
            let entry = coeffs.entry(m).or_insert(0);
            *entry = entry.checked_add(c).ok_or(Error::ArithmeticOverflow)?;
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(GradedSeries { cap, nvars, coeffs })
    }

    /// The single term `c * m`.
    pub fn term(m: Monomial, c: i64, cap: u32) -> Result<Self, Error> {
        Self::from_terms(cap, [(m, c)])
    }

    pub(crate) fn from_map(cap: u32, nvars: VarBound, coeffs: BTreeMap<Monomial, i64>) -> Self {
        debug_assert!(coeffs.values().all(|&c| c != 0));
        debug_assert!(coeffs.keys().all(|m| m.tdeg() <= u64::from(cap)));
        debug_assert!(coeffs.keys().all(|m| nvars.admits(m.max_var())));
        GradedSeries { cap, nvars, coeffs }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn nvars(&self) -> VarBound {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.coeffs.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// The coefficient of `m`; zero if absent. Errors above the cap, where
    /// the truncated representation cannot answer.
    pub fn coefficient_at(&self, m: &Monomial) -> Result<i64, Error> {
        let tdeg = m.tdeg();
        if tdeg > u64::from(self.cap) {
            return Err(Error::CapExceeded {
                tdeg,
                cap: self.cap,
            });
        }
        Ok(self.coeffs.get(m).copied().unwrap_or(0))
    }

    /// Coefficientwise sum at cap `min(self.cap, other.cap)`.
    pub fn add(&self, other: &GradedSeries) -> Result<GradedSeries, Error> {
        self.combine(other, false)
    }

    /// Coefficientwise difference at cap `min(self.cap, other.cap)`.
    pub fn sub(&self, other: &GradedSeries) -> Result<GradedSeries, Error> {
        self.combine(other, true)
    }

    fn combine(&self, other: &GradedSeries, negate_rhs: bool) -> Result<GradedSeries, Error> {
        let cap = self.cap.min(other.cap);
        let mut coeffs: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (m, &c) in &self.coeffs {
            if m.tdeg() <= u64::from(cap) {
                coeffs.insert(m.clone(), c);
            }
        }
        for (m, &c) in &other.coeffs {
            if m.tdeg() > u64::from(cap) {
                continue;
            }
            let entry = coeffs.entry(m.clone()).or_insert(0);
            *entry = if negate_rhs {
                entry.checked_sub(c)
            } else {
                entry.checked_add(c)
            }
            .ok_or(Error::ArithmeticOverflow)?;
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(GradedSeries {
            cap,
            nvars: self.nvars.join(other.nvars),
            coeffs,
        })
    }

    pub fn negate(&self) -> Result<GradedSeries, Error> {
        GradedSeries::zero(self.cap).sub(self)
    }

    /// Graded convolution product, exact in all degrees `<= min(caps)`.
    pub fn multiply(&self, other: &GradedSeries) -> Result<GradedSeries, Error> {
        let cap = self.cap.min(other.cap);
        // Walk the right factor in ascending total degree so each left term
        // can stop as soon as the degree budget is spent.
        let mut rhs: Vec<(&Monomial, i64, u64)> = other
            .coeffs
            .iter()
            .map(|(m, &c)| (m, c, m.tdeg()))
            .collect();
        rhs.sort_by_key(|&(_, _, t)| t);

        let mut coeffs: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (m1, &c1) in &self.coeffs {
            let t1 = m1.tdeg();
            if t1 > u64::from(cap) {
                continue;
            }
            for &(m2, c2, t2) in &rhs {
                if t1 + t2 > u64::from(cap) {
                    break;
                }
                let prod = m1.mul_checked(m2)?;
                let term = c1.checked_mul(c2).ok_or(Error::ArithmeticOverflow)?;
                let entry = coeffs.entry(prod).or_insert(0);
                *entry = entry.checked_add(term).ok_or(Error::ArithmeticOverflow)?;
            }
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(GradedSeries {
            cap,
            nvars: self.nvars.join(other.nvars),
            coeffs,
        })
    }

    /// Lower the cap, dropping terms above it.
    pub fn truncate_cap(&self, new_cap: u32) -> GradedSeries {
        let cap = self.cap.min(new_cap);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(m, _)| m.tdeg() <= u64::from(cap))
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        GradedSeries {
            cap,
            nvars: self.nvars,
            coeffs,
        }
    }

    /// The truncation map to `Z[[X_n]]`: kill every term involving a
    /// variable of index `> n`.
    pub fn restrict_vars(&self, n: u32) -> GradedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(m, _)| m.max_var() <= n)
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        let nvars = match self.nvars {
            VarBound::UpTo(k) => VarBound::UpTo(k.min(n)),
            VarBound::All => VarBound::UpTo(n),
        };
        GradedSeries {
            cap: self.cap,
            nvars,
            coeffs,
        }
    }

    /// Substitute `x_i -> t_{y(i)}`, summing coefficients by multidegree.
    pub fn collapse(&self, y: &Partition) -> Result<CollapsedSeries, Error> {
        let mut coeffs: BTreeMap<MultiDegree, i64> = BTreeMap::new();
        for (m, &c) in &self.coeffs {
            let deg = m.multi_degree(y);
            let entry = coeffs.entry(deg).or_insert(0);
            *entry = entry.checked_add(c).ok_or(Error::ArithmeticOverflow)?;
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(CollapsedSeries {
            r: y.r(),
            cap: self.cap,
            coeffs,
        })
    }

    /// The image in the ring of number-theoretic functions: the coefficient
    /// of `x1^a1 * ... * xn^an` is attached to `p_1^a1 * ... * p_n^an` with
    /// `p_i` the i-th prime. The domain always includes 1.
    pub fn to_dirichlet(&self) -> Result<BTreeMap<u64, i64>, Error> {
        let n = match self.nvars {
            VarBound::UpTo(n) => n,
            VarBound::All => return Err(Error::UnboundedVariables),
        };
        let primes = first_primes(n as usize);
        let mut map = BTreeMap::new();
        map.insert(1, self.coeffs.get(&Monomial::one()).copied().unwrap_or(0));
        for (m, &c) in &self.coeffs {
            let mut key: u64 = 1;
            for &(i, e) in m.pairs() {
                let p = primes[(i - 1) as usize];
                let pe = p.checked_pow(e).ok_or(Error::ArithmeticOverflow)?;
                key = key.checked_mul(pe).ok_or(Error::ArithmeticOverflow)?;
            }
            map.insert(key, c);
        }
        Ok(map)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<SeriesTermJson> = self
            .terms()
            .map(|(m, c)| SeriesTermJson {
                monomial: m.to_string(),
                coeff: c,
            })
            .collect();
        serde_json::to_value(SeriesJson {
            cap: self.cap,
            terms,
        })
        .expect("series serialization cannot fail")
    }

    pub fn to_json_string(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        let parsed: SeriesJson = serde_json::from_str(s)
            .map_err(|e| Error::parse(format!("invalid series JSON: {e}")))?;
        let mut terms = Vec::with_capacity(parsed.terms.len());
        let mut seen = std::collections::BTreeSet::new();
        for t in parsed.terms {
            let m: Monomial = t.monomial.parse()?;
            if t.coeff == 0 {
                return Err(Error::parse(format!("zero coefficient at {m}")));
            }
            if !seen.insert(m.clone()) {
                return Err(Error::parse(format!("duplicate monomial {m}")));
            }
            terms.push((m, t.coeff));
        }
        GradedSeries::from_terms(parsed.cap, terms)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    cap: u32,
    terms: Vec<SeriesTermJson>,
}

#[derive(Serialize, Deserialize)]
struct SeriesTermJson {
    monomial: String,
    coeff: i64,
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(m, c)| (MonomialLike::X(m), c)))
    }
}

/// All monomials of `[X_n]` with total degree `<= cap`, coefficient 1.
pub fn nu(n: u32, cap: u32) -> GradedSeries {
    let vars: Vec<u32> = (1..=n).collect();
    let mut coeffs = BTreeMap::new();
    for_each_monomial_over(&vars, cap, |m| {
        coeffs.insert(m, 1);
    });
    GradedSeries {
        cap,
        nvars: VarBound::UpTo(n),
        coeffs,
    }
}

/// The truncation of `prod_i (1 - x_i)`: coefficient `(-1)^k` on each
/// squarefree product of `k <= cap` distinct variables from `x1..xn`.
pub fn mu(n: u32, cap: u32) -> GradedSeries {
    let mut coeffs = BTreeMap::new();
    // Subsets by recursion keeps the squarefree support explicit.
    fn rec(
        next: u32,
        n: u32,
        left: u32,
        stack: &mut Vec<(u32, u32)>,
        out: &mut BTreeMap<Monomial, i64>,
    ) {
        let sign = if stack.len().is_multiple_of(2) { 1 } else { -1 };
        out.insert(
            Monomial::from_pairs(stack.iter().copied()).expect("distinct indices"),
            sign,
        );
        if left == 0 {
            return;
        }
        for i in next..=n {
            stack.push((i, 1));
            rec(i + 1, n, left - 1, stack, out);
            stack.pop();
        }
    }
    rec(1, n, cap.min(n), &mut Vec::new(), &mut coeffs);
    GradedSeries {
        cap,
        nvars: VarBound::UpTo(n),
        coeffs,
    }
}

fn first_primes(count: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::with_capacity(count);
    let mut candidate: u64 = 2;
    while primes.len() < count {
        if primes.iter().all(|&p| !candidate.is_multiple_of(p)) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// A finitely supported element of `Z[t_1..t_r]`, cap-truncated like
/// `GradedSeries`. Produced by the partition-collapse map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CollapsedSeries {
    r: u32,
    cap: u32,
    coeffs: BTreeMap<MultiDegree, i64>,
}

impl CollapsedSeries {
    pub fn zero(r: u32, cap: u32) -> Self {
        CollapsedSeries {
            r,
            cap,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(r: u32, cap: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(MultiDegree::zero(r), 1);
        CollapsedSeries { r, cap, coeffs }
    }

    pub fn from_terms(
        r: u32,
        cap: u32,
        terms: impl IntoIterator<Item = (MultiDegree, i64)>,
    ) -> Result<Self, Error> {
        let mut coeffs: BTreeMap<MultiDegree, i64> = BTreeMap::new();
        for (deg, c) in terms {
            if deg.r() != r {
                return Err(Error::parse(format!(
                    "multidegree {deg} has {} components, expected {r}",
                    deg.r()
                )));
            }
            let total = deg.total();
            if total > u64::from(cap) {
                return Err(Error::CapExceeded { tdeg: total, cap });
            }
            let entry = coeffs.entry(deg).or_insert(0);
            *entry = entry.checked_add(c).ok_or(Error::ArithmeticOverflow)?;
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(CollapsedSeries { r, cap, coeffs })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms in ascending graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiDegree, i64)> {
        self.coeffs.iter().map(|(d, &c)| (d, c))
    }

    pub fn coefficient_at(&self, deg: &MultiDegree) -> Result<i64, Error> {
        let total = deg.total();
        if total > u64::from(self.cap) {
            return Err(Error::CapExceeded {
                tdeg: total,
                cap: self.cap,
            });
        }
        Ok(self.coeffs.get(deg).copied().unwrap_or(0))
    }

    pub fn add(&self, other: &CollapsedSeries) -> Result<CollapsedSeries, Error> {
        assert_eq!(self.r, other.r, "mismatched r");
        let cap = self.cap.min(other.cap);
        let mut coeffs: BTreeMap<MultiDegree, i64> = BTreeMap::new();
        for (d, &c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if d.total() > u64::from(cap) {
                continue;
            }
            let entry = coeffs.entry(d.clone()).or_insert(0);
            *entry = entry.checked_add(c).ok_or(Error::ArithmeticOverflow)?;
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(CollapsedSeries {
            r: self.r,
            cap,
            coeffs,
        })
    }

    pub fn multiply(&self, other: &CollapsedSeries) -> Result<CollapsedSeries, Error> {
        assert_eq!(self.r, other.r, "mismatched r");
        let cap = self.cap.min(other.cap);
        let mut coeffs: BTreeMap<MultiDegree, i64> = BTreeMap::new();
        for (d1, &c1) in &self.coeffs {
            for (d2, &c2) in &other.coeffs {
                if d1.total() + d2.total() > u64::from(cap) {
                    continue;
                }
                let term = c1.checked_mul(c2).ok_or(Error::ArithmeticOverflow)?;
                let entry = coeffs.entry(d1.add(d2)).or_insert(0);
                *entry = entry.checked_add(term).ok_or(Error::ArithmeticOverflow)?;
            }
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(CollapsedSeries {
            r: self.r,
            cap,
            coeffs,
        })
    }

    pub fn truncate_cap(&self, new_cap: u32) -> CollapsedSeries {
        let cap = self.cap.min(new_cap);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(d, _)| d.total() <= u64::from(cap))
            .map(|(d, &c)| (d.clone(), c))
            .collect();
        CollapsedSeries {
            r: self.r,
            cap,
            coeffs,
        }
    }

    /// Whether the degree-`<= d` parts of both series agree.
    pub fn agrees_up_to(&self, other: &CollapsedSeries, d: u32) -> bool {
        fn within(
            m: &BTreeMap<MultiDegree, i64>,
            d: u32,
        ) -> impl Iterator<Item = (&MultiDegree, &i64)> {
            m.iter()
                .take_while(move |(deg, _)| deg.total() <= u64::from(d))
        }
        within(&self.coeffs, d).eq(within(&other.coeffs, d))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<CollapsedTermJson> = self
            .terms()
            .map(|(d, c)| CollapsedTermJson {
                deg: d.components().to_vec(),
                coeff: c,
            })
            .collect();
        serde_json::to_value(CollapsedJson {
            r: self.r,
            cap: self.cap,
            terms,
        })
        .expect("series serialization cannot fail")
    }

    pub fn to_json_string(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        let parsed: CollapsedJson = serde_json::from_str(s)
            .map_err(|e| Error::parse(format!("invalid series JSON: {e}")))?;
        if parsed.r == 0 {
            return Err(Error::parse("collapsed series needs r >= 1"));
        }
        let mut terms = Vec::with_capacity(parsed.terms.len());
        let mut seen = std::collections::BTreeSet::new();
        for t in parsed.terms {
            if t.coeff == 0 {
                return Err(Error::parse("zero coefficient in collapsed series"));
            }
            if t.deg.len() != parsed.r as usize {
                return Err(Error::parse(format!(
                    "multidegree has {} components, expected {}",
                    t.deg.len(),
                    parsed.r
                )));
            }
            let deg = MultiDegree::new(t.deg);
            if !seen.insert(deg.clone()) {
                return Err(Error::parse(format!("duplicate multidegree {deg}")));
            }
            terms.push((deg, t.coeff));
        }
        CollapsedSeries::from_terms(parsed.r, parsed.cap, terms)
    }
}

#[derive(Serialize, Deserialize)]
struct CollapsedJson {
    r: u32,
    cap: u32,
    terms: Vec<CollapsedTermJson>,
}

#[derive(Serialize, Deserialize)]
struct CollapsedTermJson {
    deg: Vec<u64>,
    coeff: i64,
}

impl fmt::Display for CollapsedSeries {
    /// `t` when `r = 1`, `t1..tr` otherwise; ascending degree, signs inline.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms().map(|(d, c)| (MonomialLike::T(d, self.r), c)),
        )
    }
}

enum MonomialLike<'a> {
    X(&'a Monomial),
    T(&'a MultiDegree, u32),
}

impl MonomialLike<'_> {
    fn is_unit(&self) -> bool {
        match self {
            MonomialLike::X(m) => m.is_one(),
            MonomialLike::T(d, _) => d.total() == 0,
        }
    }

    fn render(&self) -> String {
        match self {
            MonomialLike::X(m) => m.to_string(),
            MonomialLike::T(d, r) => {
                let mut parts = Vec::new();
                for (k, &e) in d.components().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let var = if *r == 1 {
                        "t".to_string()
                    } else {
                        format!("t{}", k + 1)
                    };
                    if e == 1 {
                        parts.push(var);
                    } else {
                        parts.push(format!("{var}^{e}"));
                    }
                }
                parts.join("*")
            }
        }
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (MonomialLike<'a>, i64)>,
) -> fmt::Result {
    let mut first = true;
    let mut any = false;
    for (m, c) in terms {
        any = true;
        let abs = c.unsigned_abs();
        if first {
            if c < 0 {
                write!(f, "-")?;
            }
            first = false;
        } else if c < 0 {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if m.is_unit() {
            write!(f, "{abs}")?;
        } else if abs == 1 {
            write!(f, "{}", m.render())?;
        } else {
            write!(f, "{abs}*{}", m.render())?;
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}
