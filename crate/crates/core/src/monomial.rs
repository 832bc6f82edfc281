//! Sparse monomials over the countable variable set `x1, x2, x3, ...`.
//!
//! A monomial is stored as `(variable index, exponent)` pairs with strictly
//! increasing indices and no zero exponents; the empty list is the unit `1`.
//! The derived `Ord` (lexicographic on the pair list) is the canonical order
//! used everywhere deterministic output is needed.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    /// The unit monomial `1`.
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// The variable `x_index`.
    pub fn var(index: u32) -> Self {
        Self::var_pow(index, 1)
    }

    /// `x_index^exp`; `exp = 0` yields `1`.
    pub fn var_pow(index: u32, exp: u32) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        if exp == 0 {
            return Self::one();
        }
        Monomial {
            exps: vec![(index, exp)],
        }
    }

    /// Build from `(index, exponent)` pairs in any order. Zero exponents
    /// are dropped; duplicate indices and index 0 are rejected.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, Error> {
        let mut exps: Vec<(u32, u32)> = pairs.into_iter().filter(|&(_, e)| e != 0).collect();
        exps.sort_unstable();
        for w in exps.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::parse(format!(
                    "duplicate variable index x{}",
                    w[0].0
                )));
            }
        }
        if exps.first().is_some_and(|&(i, _)| i == 0) {
            return Err(Error::parse("variable indices start at 1"));
        }
        Ok(Monomial { exps })
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Total degree: the sum of all exponents.
    pub fn tdeg(&self) -> u64 {
        self.exps.iter().map(|&(_, e)| u64::from(e)).sum()
    }

    /// The exponent of `x_index` (0 if absent).
    pub fn exponent_of(&self, index: u32) -> u32 {
        self.exps
            .binary_search_by_key(&index, |&(i, _)| i)
            .map(|pos| self.exps[pos].1)
            .unwrap_or(0)
    }

    /// Stored `(index, exponent)` pairs, ascending by index.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.exps
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.exps.iter().map(|&(i, _)| i)
    }

    /// Number of distinct variables that occur.
    pub fn support_size(&self) -> usize {
        self.exps.len()
    }

    /// Largest variable index present (0 for the unit).
    pub fn max_var(&self) -> u32 {
        self.exps.last().map_or(0, |&(i, _)| i)
    }

    /// Whether `self` divides `m`, componentwise.
    pub fn divides(&self, m: &Monomial) -> bool {
        self.exps.iter().all(|&(i, e)| e <= m.exponent_of(i))
    }

    /// Componentwise maximum of exponents.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(ia, ea)), Some(&&(ib, eb))) => {
                    if ia < ib {
                        exps.push((ia, ea));
                        a.next();
                    } else if ib < ia {
                        exps.push((ib, eb));
                        b.next();
                    } else {
                        exps.push((ia, ea.max(eb)));
                        a.next();
                        b.next();
                    }
                }
                (Some(_), None) => {
                    exps.extend(a.by_ref().copied());
                    break;
                }
                (None, Some(_)) => {
                    exps.extend(b.by_ref().copied());
                    break;
                }
                (None, None) => break,
            }
        }
        Monomial { exps }
    }

    /// Exact quotient `self / t`; errors unless `t` divides `self`.
    pub fn quotient_exact(&self, t: &Monomial) -> Result<Monomial, Error> {
        if !t.divides(self) {
            return Err(Error::NotDivisible {
                dividend: self.to_string(),
                divisor: t.to_string(),
            });
        }
        let exps = self
            .exps
            .iter()
            .map(|&(i, e)| (i, e - t.exponent_of(i)))
            .filter(|&(_, e)| e != 0)
            .collect();
        Ok(Monomial { exps })
    }

    /// Product (exponent addition) with checked arithmetic.
    pub fn mul_checked(&self, other: &Monomial) -> Result<Monomial, Error> {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(ia, ea)), Some(&&(ib, eb))) => {
                    if ia < ib {
                        exps.push((ia, ea));
                        a.next();
                    } else if ib < ia {
                        exps.push((ib, eb));
                        b.next();
                    } else {
                        let e = ea.checked_add(eb).ok_or(Error::ArithmeticOverflow)?;
                        exps.push((ia, e));
                        a.next();
                        b.next();
                    }
                }
                (Some(_), None) => {
                    exps.extend(a.by_ref().copied());
                    break;
                }
                (None, Some(_)) => {
                    exps.extend(b.by_ref().copied());
                    break;
                }
                (None, None) => break,
            }
        }
        Ok(Monomial { exps })
    }

    /// The truncation map to variables `x1..xn`: `Some(self)` if the
    /// monomial already lives there, `None` (the distinguished zero of
    /// the pointed monoid) otherwise.
    pub fn truncate(&self, n: u32) -> Option<Monomial> {
        if self.max_var() <= n {
            Some(self.clone())
        } else {
            None
        }
    }

    /// Relabel variables through a permutation given as a map on indices.
    /// Indices not mentioned are kept fixed.
    pub fn permute_vars(&self, perm: &std::collections::BTreeMap<u32, u32>) -> Monomial {
        let pairs = self
            .exps
            .iter()
            .map(|&(i, e)| (*perm.get(&i).unwrap_or(&i), e));
        Monomial::from_pairs(pairs).expect("permutation must be injective on the support")
    }
}

/// Enumerate every monomial over the given variables with total degree
/// at most `cap`, in no particular order.
pub(crate) fn for_each_monomial_over(vars: &[u32], cap: u32, mut f: impl FnMut(Monomial)) {
    fn rec(vars: &[u32], budget: u32, stack: &mut Vec<(u32, u32)>, f: &mut impl FnMut(Monomial)) {
        match vars.split_first() {
            None => f(Monomial {
                exps: stack.clone(),
            }),
            Some((&v, rest)) => {
                for e in 0..=budget {
                    if e > 0 {
                        stack.push((v, e));
                    }
                    rec(rest, budget - e, stack, f);
                    if e > 0 {
                        stack.pop();
                    }
                }
            }
        }
    }
    let mut sorted = vars.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    rec(&sorted, cap, &mut Vec::new(), &mut f);
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(i, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Text syntax: `1`, or `*`-separated factors `x<k>` / `x<k>^<e>`
    /// with `k, e >= 1`. Whitespace is ignored; duplicate indices are
    /// rejected.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bytes: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        if bytes.is_empty() {
            return Err(Error::parse("empty monomial"));
        }
        let col = |pos: usize| bytes.get(pos).map_or(s.len() + 1, |&(i, _)| i + 1);

        if bytes.len() == 1 && bytes[0].1 == '1' {
            return Ok(Monomial::one());
        }

        let mut pos = 0;
        let mut pairs = Vec::new();
        loop {
            match bytes.get(pos) {
                Some(&(_, 'x')) => pos += 1,
                _ => return Err(Error::parse_at(col(pos), "expected 'x'")),
            }
            let (index, next) = read_number(&bytes, pos, s)?;
            if index == 0 {
                return Err(Error::parse_at(col(pos), "variable indices start at 1"));
            }
            pos = next;
            let mut exp = 1u32;
            if bytes.get(pos).is_some_and(|&(_, c)| c == '^') {
                pos += 1;
                let (e, next) = read_number(&bytes, pos, s)?;
                if e == 0 {
                    return Err(Error::parse_at(col(pos), "exponents start at 1"));
                }
                exp = e;
                pos = next;
            }
            pairs.push((index, exp));
            match bytes.get(pos) {
                None => break,
                Some(&(_, '*')) => pos += 1,
                Some(&(i, c)) => {
                    return Err(Error::parse_at(
                        i + 1,
                        format!("unexpected character '{c}'"),
                    ))
                }
            }
        }
        Monomial::from_pairs(pairs)
    }
}

fn read_number(bytes: &[(usize, char)], pos: usize, src: &str) -> Result<(u32, usize), Error> {
    let mut end = pos;
    let mut value: u64 = 0;
    while let Some(&(_, c)) = bytes.get(end) {
        match c.to_digit(10) {
            Some(d) => {
                value = value * 10 + u64::from(d);
                if value > u64::from(u32::MAX) {
                    let at = bytes[pos].0 + 1;
                    return Err(Error::parse_at(at, "number too large"));
                }
                end += 1;
            }
            None => break,
        }
    }
    if end == pos {
        let at = bytes.get(pos).map_or(src.len() + 1, |&(i, _)| i + 1);
        return Err(Error::parse_at(at, "expected a number"));
    }
    Ok((value as u32, end))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn divides_examples() {
        assert!(m("x1").divides(&m("x1^2*x2")));
        assert!(Monomial::one().divides(&m("x3^4")));
        assert!(!m("x2^3").divides(&m("x2^2*x3")));
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(m("x1^2*x2").lcm(&m("x2^3*x3")), m("x1^2*x2^3*x3"));
        assert_eq!(m("x1*x4").lcm(&Monomial::one()), m("x1*x4"));
        assert_eq!(m("x2^5").lcm(&m("x2^5")), m("x2^5"));
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(m("x1^2*x2").quotient_exact(&m("x1")).unwrap(), m("x1*x2"));
        assert_eq!(
            m("x1*x2").quotient_exact(&m("x1*x2")).unwrap(),
            Monomial::one()
        );
        assert!(matches!(
            m("x1*x2").quotient_exact(&m("x3")),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(m("x1*x3").truncate(2), None);
        assert_eq!(m("x1*x3").truncate(3), Some(m("x1*x3")));
        assert_eq!(Monomial::one().truncate(1), Some(Monomial::one()));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!("x0".parse::<Monomial>().is_err());
        assert!("x1^0".parse::<Monomial>().is_err());
        assert!("x1*x1".parse::<Monomial>().is_err());
        assert!("y2".parse::<Monomial>().is_err());
        assert!("1*x1".parse::<Monomial>().is_err());
        assert!("".parse::<Monomial>().is_err());
    }

    #[test]
    fn parse_accepts_whitespace_and_order() {
        assert_eq!(m(" x3 * x1^2 "), m("x1^2*x3"));
        assert_eq!(m(" 1 "), Monomial::one());
    }

    #[test]
    fn display_round_trip() {
        for s in ["1", "x1", "x2^7", "x1^2*x3", "x1*x2*x3^4"] {
            assert_eq!(m(s).to_string(), s);
        }
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        proptest::collection::btree_map(1u32..6, 1u32..5, 0..4)
            .prop_map(|map| Monomial::from_pairs(map).unwrap())
    }

    proptest! {
        #[test]
        fn lcm_monoid_laws(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            prop_assert_eq!(a.lcm(&b), b.lcm(&a));
            prop_assert_eq!(a.lcm(&b).lcm(&c), a.lcm(&b.lcm(&c)));
            prop_assert_eq!(a.lcm(&a), a.clone());
            prop_assert_eq!(a.lcm(&Monomial::one()), a.clone());
        }

        #[test]
        fn divides_iff_lcm_absorbs(t in arb_monomial(), mm in arb_monomial()) {
            prop_assert_eq!(t.divides(&mm), t.lcm(&mm) == mm);
        }

        #[test]
        fn lcm_degree_subadditive(a in arb_monomial(), b in arb_monomial()) {
            let l = a.lcm(&b);
            prop_assert!(l.tdeg() <= a.tdeg() + b.tdeg());
            let disjoint = a.support().all(|i| b.exponent_of(i) == 0);
            prop_assert_eq!(l.tdeg() == a.tdeg() + b.tdeg(), disjoint);
        }

        #[test]
        fn truncate_is_identity_beyond_support(mm in arb_monomial(), extra in 0u32..4) {
            let n = mm.max_var() + extra;
            prop_assert_eq!(mm.truncate(n), Some(mm.clone()));
        }
    }
}
