//! Macaulay binomial machinery and the classification of polynomial
//! N-graded Hilbert numerators: O-sequence growth bounds, `G_{a,b}`
//! certificates, the degree bound from prescribed numerator prefixes, and
//! the two structural coefficient checks.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::monomial::{for_each_monomial_over, Monomial};
use crate::series::{CollapsedSeries, GradedSeries};

/// Exact binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // acc * (n - k + i) is divisible by i at every step.
        acc = match acc.checked_mul(u128::from(n - k + i)) {
            Some(v) => v / u128::from(i),
            None => return u128::MAX,
        };
    }
    acc
}

/// A dense univariate polynomial prefix: coefficients `a_0..a_cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariateSeries {
    coeffs: Vec<i64>,
}

impl UnivariateSeries {
    /// Requires at least the constant coefficient.
    pub fn new(coeffs: Vec<i64>) -> Result<Self, Error> {
        if coeffs.is_empty() {
            return Err(Error::parse("univariate series needs a constant term"));
        }
        Ok(UnivariateSeries { coeffs })
    }

    /// View a collapsed series with `r = 1` as a dense coefficient list.
    pub fn from_collapsed(c: &CollapsedSeries) -> Result<Self, Error> {
        if c.r() != 1 {
            return Err(Error::parse(format!(
                "expected a univariate series, got r = {}",
                c.r()
            )));
        }
        let mut coeffs = vec![0i64; c.cap() as usize + 1];
        for (deg, v) in c.terms() {
            coeffs[deg.total() as usize] = v;
        }
        Ok(UnivariateSeries { coeffs })
    }

    pub fn cap(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }
}

impl FromStr for UnivariateSeries {
    type Err = Error;

    /// Comma-separated integers: `1,-1,0,2` is `1 - t + 2t^3`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let coeffs = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::parse(format!("invalid coefficient '{}'", p.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        UnivariateSeries::new(coeffs)
    }
}

impl fmt::Display for UnivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let collapsed = CollapsedSeries::from_terms(
            1,
            self.cap(),
            self.coeffs
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != 0)
                .map(|(d, &c)| (crate::grading::MultiDegree::new(vec![d as u64]), c)),
        )
        .expect("dense coefficients are within the cap");
        write!(f, "{collapsed}")
    }
}

/// The greedy binomial expansion `u = C(k_d,d) + C(k_{d-1},d-1) + ...` with
/// `k_d > k_{d-1} > ... >= 1`; `u = 0` has the empty expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacaulayExpansion {
    d: u32,
    terms: Vec<(u64, u32)>, // (k_j, j), descending in j
}

impl MacaulayExpansion {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> &[(u64, u32)] {
        &self.terms
    }

    /// Reconstruct the expanded value.
    pub fn value(&self) -> u64 {
        self.terms
            .iter()
            .map(|&(k, j)| binomial(k, u64::from(j)))
            .sum::<u128>()
            .try_into()
            .expect("expansion reconstructs its u64 input")
    }
}

/// The d-th Macaulay expansion of `u >= 0`, `d >= 1`: greedily take the
/// largest `k` with `C(k, j) <= remainder` for `j = d, d-1, ...`.
pub fn macaulay_expand(u: u64, d: u32) -> MacaulayExpansion {
    assert!(d >= 1, "macaulay expansion needs d >= 1");
    let mut terms = Vec::new();
    let mut rest = u128::from(u);
    let mut j = d;
    while rest > 0 && j >= 1 {
        let jj = u64::from(j);
        // Largest k with C(k, j) <= rest, by doubling then bisecting.
        let mut hi = jj;
        while binomial(hi * 2, jj) <= rest {
            hi *= 2;
        }
        let mut lo = jj; // C(j, j) = 1 <= rest
        let mut hi = hi * 2;
        while lo + 1 < hi {
            let mid = lo + (hi - lo) / 2;
            if binomial(mid, jj) <= rest {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        rest -= binomial(lo, jj);
        terms.push((lo, j));
        j -= 1;
    }
    MacaulayExpansion { d, terms }
}

/// The Macaulay growth bound `u^{<d>}`: shift every binomial of the d-th
/// expansion of `u` by one in both arguments and sum. Saturates at
/// `u64::MAX` (any saturated value exceeds every representable sequence
/// entry, so comparisons stay conservative).
pub fn macaulay_bound(u: u64, d: u32) -> u64 {
    let total: u128 = macaulay_expand(u, d)
        .terms()
        .iter()
        .map(|&(k, j)| binomial(k + 1, u64::from(j) + 1))
        .sum();
    total.try_into().unwrap_or(u64::MAX)
}

/// Macaulay's criterion: `a_0 = 1`, all entries non-negative, and
/// `a_{i+1} <= a_i^{<i>}` for `1 <= i < cap`. Exactly the Hilbert
/// functions of graded algebra quotients, verified through the cap.
pub fn is_o_sequence(h: &UnivariateSeries) -> bool {
    let a = h.coeffs();
    if a[0] != 1 || a.iter().any(|&c| c < 0) {
        return false;
    }
    for i in 1..a.len() - 1 {
        let bound = macaulay_bound(a[i] as u64, i as u32);
        if (a[i + 1] as u64) > bound {
            return false;
        }
    }
    true
}

/// A truncation-relative `G_{a,b}` certificate: `f = (1-t)^b * h` for an
/// O-sequence `h` with `h_1 = a`, valid through the cap. The degenerate
/// quotient `h = 1` fails the `a >= 1` requirement of `G_{a,b}` and is
/// surfaced with `a = 0` and the flag set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certificate {
    pub a: u64,
    pub b: u32,
    pub degenerate: bool,
}

/// Classify a polynomial numerator prefix: for each `b = 1..=b_max`, divide
/// by `(1-t)^b` (iterated cumulative sums, exact through the cap) and
/// report every `b` whose quotient is an O-sequence with `0 < h_1 <= b`.
/// An empty result means no certificate was found below `b_max`.
pub fn classify_numerator(f: &UnivariateSeries, b_max: u32) -> Vec<Certificate> {
    let mut certs = Vec::new();
    if f.coeffs()[0] != 1 {
        return certs;
    }
    let mut h: Vec<i64> = f.coeffs().to_vec();
    'next_b: for b in 1..=b_max {
        // One division by (1 - t) per step.
        for i in 1..h.len() {
            h[i] = match h[i].checked_add(h[i - 1]) {
                Some(v) => v,
                None => break 'next_b,
            };
        }
        let series = UnivariateSeries::new(h.clone()).expect("non-empty");
        if !is_o_sequence(&series) {
            continue;
        }
        if h[1..].iter().all(|&c| c == 0) {
            certs.push(Certificate {
                a: 0,
                b,
                degenerate: true,
            });
        } else if h.len() > 1 {
            let a = h[1] as u64;
            if a >= 1 && a <= u64::from(b) {
                certs.push(Certificate {
                    a,
                    b,
                    degenerate: false,
                });
            }
        }
    }
    certs
}

/// Upper bound for the total degree of a numerator whose collapsed prefix
/// is `1 + a_1 t + ... + a_d t^d`, over ideals generated in degrees `<= d`:
/// the interval-arithmetic chain
///
///   u_1 = max(0, -a_1),
///   u_{i+1} = max(0, -a_{i+1} + sum over even-size lambda of
///             prod_l C(u_l, lambda_l)),
///   bound = sum_i i * u_i,
///
/// where `lambda = (lambda_1..lambda_i)` ranges over the choices of
/// `lambda_l` generators of degree `l` that could produce an lcm of total
/// degree exactly `i+1`: `sum_l l*lambda_l >= i+1` and
/// `lambda_l <= min(u_l, C(i+1, l))` (no degree-(i+1) monomial has more
/// degree-l divisors). Even-size tuples contribute `+1` each to the
/// inclusion-exclusion count, so only they can push the generator count
/// `w_{i+1}` up; the bound keeps a superset of the contributing tuples and
/// therefore stays a valid upper bound.
pub fn numerator_degree_bound(a: &[i64]) -> u64 {
    if a.is_empty() {
        return 0;
    }
    let d = a.len();
    let mut u = vec![0u64; d + 1];
    u[1] = (-a[0]).max(0) as u64;
    for i in 1..d {
        let even_sum = even_tuple_sum(&u[1..=i], i as u32);
        let upper = i128::from(-a[i]) + even_sum as i128;
        u[i + 1] = upper.clamp(0, i64::MAX as i128) as u64;
    }
    let mut bound: u128 = 0;
    for (i, &ui) in u.iter().enumerate().skip(1) {
        bound = bound.saturating_add(i as u128 * u128::from(ui));
    }
    bound.try_into().unwrap_or(u64::MAX)
}

/// Sum of `prod_l C(u_l, lambda_l)` over tuples of even total size with
/// `sum_l l*lambda_l >= i+1` and `lambda_l <= min(u_l, C(i+1, l))`.
fn even_tuple_sum(u: &[u64], i: u32) -> u128 {
    fn rec(
        u: &[u64],
        level: usize,
        target: u64,
        weighted: u64,
        size: u64,
        product: u128,
        acc: &mut u128,
    ) {
        if level == u.len() {
            if weighted >= target && size.is_multiple_of(2) && size > 0 {
                *acc = acc.saturating_add(product);
            }
            return;
        }
        let l = (level + 1) as u64;
        let max_divisors: u64 = binomial(target, l).try_into().unwrap_or(u64::MAX);
        let max_take = u[level].min(max_divisors);
        for take in 0..=max_take {
            let p = product.saturating_mul(binomial(u[level], take));
            rec(
                u,
                level + 1,
                target,
                weighted + l * take,
                size + take,
                p,
                acc,
            );
        }
    }
    let mut acc = 0u128;
    rec(u, 0, u64::from(i) + 1, 0, 0, 1, &mut acc);
    acc
}

/// Björner–Kalai bound: every coefficient is a reduced Euler characteristic
/// of a complex on `r = #support` vertices, so its absolute value is at
/// most the central binomial `C(r-1, floor((r-1)/2))`; the constant term is
/// at most 1 in absolute value.
pub fn bjorner_kalai_check(p: &GradedSeries) -> bool {
    p.terms().all(|(m, c)| {
        let r = m.support_size() as u64;
        let bound = if r == 0 {
            1
        } else {
            binomial(r - 1, (r - 1) / 2)
        };
        u128::from(c.unsigned_abs()) <= bound
    })
}

/// The two divisor-sum conditions characterizing numerators of monomial
/// ideals: every divisor sum `sum_{s|m} c_s` lies in `{0,1}`, and the set
/// where it equals 1 is an order ideal. Verified for all monomials of
/// degree `<= cap` over the variables present.
pub fn pcond_check(p: &GradedSeries) -> bool {
    let vars: Vec<u32> = {
        let mut set = std::collections::BTreeSet::new();
        for (m, _) in p.terms() {
            set.extend(m.support());
        }
        set.into_iter().collect()
    };
    let cap = p.cap();

    // Divisor sums via one prefix pass per variable over the degree simplex.
    let mut sums: BTreeMap<Monomial, i128> = BTreeMap::new();
    for_each_monomial_over(&vars, cap, |m| {
        let c = p.coefficient_at(&m).expect("within cap");
        sums.insert(m, i128::from(c));
    });
    let mut order: Vec<Monomial> = sums.keys().cloned().collect();
    order.sort_by(|a, b| a.tdeg().cmp(&b.tdeg()).then_with(|| a.cmp(b)));
    for &v in &vars {
        let xv = Monomial::var(v);
        for m in &order {
            if m.exponent_of(v) > 0 {
                let pred = m.quotient_exact(&xv).expect("v is in the support");
                let add = sums[&pred];
                *sums.get_mut(m).unwrap() += add;
            }
        }
    }

    for m in &order {
        let s = sums[m];
        if s != 0 && s != 1 {
            return false;
        }
        if s == 1 {
            for v in m.support().collect::<Vec<_>>() {
                let pred = m.quotient_exact(&Monomial::var(v)).expect("in support");
                if sums[&pred] != 1 {
                    return false;
                }
            }
        }
    }
    true
}
