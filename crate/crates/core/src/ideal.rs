//! Monomial (monoid) ideals: minimal generators, membership, truncation,
//! staircase enumeration, and the truncated ideal metrics.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::monomial::Monomial;
use crate::series::{GradedSeries, VarBound};

/// A monomial ideal, stored by its minimal generating set `W(I)`: an
/// antichain under divisibility. The zero ideal has no generators; the unit
/// ideal is represented by the single generator `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// The zero ideal.
    pub fn zero() -> Self {
        MonomialIdeal { gens: Vec::new() }
    }

    /// The unit ideal `(1)`.
    pub fn unit() -> Self {
        MonomialIdeal {
            gens: vec![Monomial::one()],
        }
    }

    /// Minimalize: drop every monomial divisible by another in the list.
    /// Duplicates and redundancies in the input are allowed.
    pub fn generated_by(raw: impl IntoIterator<Item = Monomial>) -> Self {
        let mut gens: Vec<Monomial> = raw.into_iter().collect();
        if gens.iter().any(Monomial::is_one) {
            return Self::unit();
        }
        // Ascending total degree: a proper divisor always has strictly
        // smaller degree, so each element only needs to look left.
        gens.sort_by(|a, b| a.tdeg().cmp(&b.tdeg()).then_with(|| a.cmp(b)));
        gens.dedup();
        let mut kept: Vec<Monomial> = Vec::new();
        for g in gens {
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        kept.sort();
        MonomialIdeal { gens: kept }
    }

    /// The minimal generators, in canonical monomial order.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(Monomial::is_one)
    }

    /// Largest variable index appearing in any generator.
    pub fn max_var(&self) -> u32 {
        self.gens.iter().map(Monomial::max_var).max().unwrap_or(0)
    }

    /// Membership: some minimal generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Keep exactly the generators supported on `x1..xn`. For monomials of
    /// `[X_n]`, membership in the truncation agrees with membership in the
    /// original ideal.
    pub fn truncate_vars(&self, n: u32) -> MonomialIdeal {
        MonomialIdeal {
            gens: self
                .gens
                .iter()
                .filter(|g| g.max_var() <= n)
                .cloned()
                .collect(),
        }
    }

    /// Keep the generators of total degree `<= d`.
    pub fn truncate_below_degree(&self, d: u32) -> MonomialIdeal {
        MonomialIdeal {
            gens: self
                .gens
                .iter()
                .filter(|g| g.tdeg() <= u64::from(d))
                .cloned()
                .collect(),
        }
    }

    /// The staircase complement `q^n(I)` up to the cap: the 0/1 series over
    /// monomials of `[X_n]` with `tdeg <= cap` that are not contained in the
    /// ideal. Enumeration descends variable by variable and abandons a
    /// subtree as soon as a generator divides the current prefix.
    pub fn staircase_complement(&self, n: u32, cap: u32) -> GradedSeries {
        let mut coeffs: BTreeMap<Monomial, i64> = BTreeMap::new();
        if self.is_unit() {
            return GradedSeries::from_map(cap, VarBound::UpTo(n), coeffs);
        }
        // Generators grouped by their largest variable: once that variable's
        // exponent is fixed, divisibility is decided for good.
        let mut by_max_var: BTreeMap<u32, Vec<&Monomial>> = BTreeMap::new();
        for g in &self.gens {
            let mv = g.max_var();
            if mv <= n {
                by_max_var.entry(mv).or_default().push(g);
            }
        }
        fn rec(
            level: u32,
            n: u32,
            budget: u32,
            stack: &mut Vec<(u32, u32)>,
            by_max_var: &BTreeMap<u32, Vec<&Monomial>>,
            out: &mut BTreeMap<Monomial, i64>,
        ) {
            let prefix = Monomial::from_pairs(stack.iter().copied()).expect("distinct indices");
            if let Some(gens) = by_max_var.get(&level) {
                if gens.iter().any(|g| g.divides(&prefix)) {
                    return;
                }
            }
            if level == n {
                out.insert(prefix, 1);
                return;
            }
            let next = level + 1;
            for e in 0..=budget {
                if e > 0 {
                    stack.push((next, e));
                }
                rec(next, n, budget - e, stack, by_max_var, out);
                if e > 0 {
                    stack.pop();
                }
            }
        }
        rec(0, n, cap, &mut Vec::new(), &by_max_var, &mut coeffs);
        GradedSeries::from_map(cap, VarBound::UpTo(n), coeffs)
    }

    /// The characteristic series `chi^n(I)` up to the cap: coefficient 1 on
    /// every monomial of `[X_n]` contained in the ideal. Satisfies
    /// `chi + q = nu`.
    pub fn char_series(&self, n: u32, cap: u32) -> GradedSeries {
        let mut coeffs: BTreeMap<Monomial, i64> = BTreeMap::new();
        let vars: Vec<u32> = (1..=n).collect();
        crate::monomial::for_each_monomial_over(&vars, cap, |m| {
            if self.contains(&m) {
                coeffs.insert(m, 1);
            }
        });
        GradedSeries::from_map(cap, VarBound::UpTo(n), coeffs)
    }

    /// Truncated ideal distance. `Varwise` is `2^{-n}` with `n` the largest
    /// `n <= search_bound` on which the variable truncations agree;
    /// `Degreewise` is `2^{-d}` with `d` the largest degree bound on which
    /// the generator sets of degree `<= d` agree. Immediate disagreement
    /// reports exponent 0; agreement through the whole bound reports
    /// `Indistinguishable`.
    pub fn distance(
        &self,
        other: &MonomialIdeal,
        kind: DistanceKind,
        search_bound: u32,
    ) -> Distance {
        let agree = |k: u32| match kind {
            DistanceKind::Varwise => self.truncate_vars(k) == other.truncate_vars(k),
            DistanceKind::Degreewise => {
                self.truncate_below_degree(k) == other.truncate_below_degree(k)
            }
        };
        if agree(search_bound) {
            return Distance::Indistinguishable;
        }
        // Agreement is downward closed along the truncation tower, so the
        // first disagreement bounds the last agreement.
        let mut last = 0;
        for k in 0..search_bound {
            if agree(k) {
                last = k;
            } else {
                break;
            }
        }
        Distance::Dyadic { neg_log2: last }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceKind {
    Varwise,
    Degreewise,
}

/// A truncated-verification distance: either `2^{-neg_log2}` or
/// indistinguishable within the search bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    Dyadic { neg_log2: u32 },
    Indistinguishable,
}

impl Distance {
    /// Numeric value; `Indistinguishable` maps to 0.
    pub fn as_f64(self) -> f64 {
        match self {
            Distance::Dyadic { neg_log2 } => 0.5f64.powi(neg_log2 as i32),
            Distance::Indistinguishable => 0.0,
        }
    }
}

/// Result of parsing an ideal file: the minimalized ideal plus the input
/// lines that were discarded as duplicates or redundancies.
#[derive(Debug, Clone)]
pub struct IdealFile {
    pub ideal: MonomialIdeal,
    pub redundant: Vec<(usize, Monomial)>,
}

/// Parse the ideal file format: one generator per line in monomial syntax,
/// `#` starts a comment, blank lines ignored, a literal `1` denotes the unit
/// ideal, an empty file the zero ideal.
pub fn parse_ideal_text(src: &str) -> Result<IdealFile, Error> {
    let mut entries: Vec<(usize, Monomial)> = Vec::new();
    for (idx, raw_line) in src.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let m: Monomial = line.parse().map_err(|e| match e {
            Error::Parse { col, msg, .. } => Error::Parse {
                line: line_no,
                col,
                msg,
            },
            other => other,
        })?;
        entries.push((line_no, m));
    }
    let ideal = MonomialIdeal::generated_by(entries.iter().map(|(_, m)| m.clone()));
    let kept: std::collections::BTreeSet<&Monomial> = ideal.gens().iter().collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut redundant = Vec::new();
    for (line, m) in entries {
        if kept.contains(&m) && seen.insert(m.clone()) {
            continue;
        }
        redundant.push((line, m));
    }
    Ok(IdealFile { ideal, redundant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::nu;
    use proptest::prelude::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn ideal(gens: &[&str]) -> MonomialIdeal {
        MonomialIdeal::generated_by(gens.iter().map(|s| m(s)))
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(ideal(&["x1", "x1^2", "x1*x2"]), ideal(&["x1"]));
        assert_eq!(ideal(&[]), MonomialIdeal::zero());
        assert_eq!(ideal(&["x1*x2", "x2*x3"]).gens(), &[m("x1*x2"), m("x2*x3")]);
        assert!(ideal(&["1", "x1"]).is_unit());
    }

    #[test]
    fn contains_examples() {
        assert!(ideal(&["x1^2"]).contains(&m("x1^3*x2")));
        assert!(!ideal(&["x1^2"]).contains(&m("x1")));
        assert!(!MonomialIdeal::zero().contains(&m("x4")));
        assert!(MonomialIdeal::unit().contains(&Monomial::one()));
    }

    #[test]
    fn truncate_examples() {
        let i = ideal(&["x1*x3", "x2^2"]);
        assert_eq!(i.truncate_vars(2), ideal(&["x2^2"]));
        assert_eq!(i.truncate_vars(3), i);

        let j = ideal(&["x1", "x2^3"]);
        assert_eq!(j.truncate_below_degree(2), ideal(&["x1"]));
        assert_eq!(j.truncate_below_degree(3), j);
        assert_eq!(
            MonomialIdeal::zero().truncate_below_degree(5),
            MonomialIdeal::zero()
        );
    }

    #[test]
    fn staircase_examples() {
        let s = ideal(&["x1^2"]).staircase_complement(1, 3);
        assert_eq!(
            s,
            GradedSeries::from_terms(3, [(Monomial::one(), 1), (m("x1"), 1)]).unwrap()
        );
        assert_eq!(MonomialIdeal::zero().staircase_complement(3, 4), nu(3, 4));
        assert!(MonomialIdeal::unit().staircase_complement(2, 3).is_zero());
    }

    #[test]
    fn char_series_examples() {
        let c = ideal(&["x1"]).char_series(1, 2);
        assert_eq!(
            c,
            GradedSeries::from_terms(2, [(m("x1"), 1), (m("x1^2"), 1)]).unwrap()
        );
        assert_eq!(MonomialIdeal::unit().char_series(2, 1), nu(2, 1));
    }

    #[test]
    fn distance_examples() {
        let i = ideal(&["x1"]);
        assert_eq!(
            i.distance(&i, DistanceKind::Varwise, 7),
            Distance::Indistinguishable
        );
        assert_eq!(
            ideal(&["x1"]).distance(&ideal(&["x2"]), DistanceKind::Varwise, 5),
            Distance::Dyadic { neg_log2: 0 }
        );
        assert_eq!(
            ideal(&["x1", "x2^9"]).distance(&ideal(&["x1"]), DistanceKind::Degreewise, 20),
            Distance::Dyadic { neg_log2: 8 }
        );
        assert_eq!(Distance::Dyadic { neg_log2: 3 }.as_f64(), 0.125);
    }

    #[test]
    fn parse_ideal_file() {
        let f = parse_ideal_text("x1^2\nx1*x2\n").unwrap();
        assert_eq!(f.ideal, ideal(&["x1^2", "x1*x2"]));
        assert!(f.redundant.is_empty());

        let f = parse_ideal_text("x1\nx1^2\n").unwrap();
        assert_eq!(f.ideal, ideal(&["x1"]));
        assert_eq!(f.redundant, vec![(2, m("x1^2"))]);

        let err = parse_ideal_text("x1\nx0\n");
        assert!(matches!(err, Err(Error::Parse { line: 2, .. })));

        assert!(parse_ideal_text("").unwrap().ideal.is_zero());
        assert!(parse_ideal_text("# nothing\n\n1\n")
            .unwrap()
            .ideal
            .is_unit());
        let commented = parse_ideal_text("x1*x2 # the first generator\n").unwrap();
        assert_eq!(commented.ideal, ideal(&["x1*x2"]));
    }

    fn arb_monomials() -> impl Strategy<Value = Vec<Monomial>> {
        proptest::collection::vec(
            proptest::collection::btree_map(1u32..5, 1u32..4, 1..3)
                .prop_map(|pairs| Monomial::from_pairs(pairs).unwrap()),
            0..7,
        )
    }

    proptest! {
        #[test]
        fn minimalize_idempotent_and_order_insensitive(gens in arb_monomials(), seed in 0u64..1000) {
            let i = MonomialIdeal::generated_by(gens.clone());
            prop_assert_eq!(MonomialIdeal::generated_by(i.gens().to_vec()), i.clone());
            // A cheap deterministic shuffle.
            let mut shuffled = gens;
            if !shuffled.is_empty() {
                let k = (seed as usize) % shuffled.len();
                shuffled.rotate_left(k);
                shuffled.reverse();
            }
            prop_assert_eq!(MonomialIdeal::generated_by(shuffled), i);
        }

        #[test]
        fn membership_matches_char_series(gens in arb_monomials()) {
            let i = MonomialIdeal::generated_by(gens);
            let chi = i.char_series(4, 5);
            crate::monomial::for_each_monomial_over(&[1, 2, 3, 4], 5, |mono| {
                let stored = chi.coefficient_at(&mono).unwrap();
                assert_eq!(stored == 1, i.contains(&mono));
                assert!(stored == 0 || stored == 1);
            });
        }

        #[test]
        fn staircase_is_an_order_ideal(gens in arb_monomials()) {
            let i = MonomialIdeal::generated_by(gens);
            let q = i.staircase_complement(4, 5);
            for (mono, c) in q.terms() {
                prop_assert_eq!(c, 1);
                for v in mono.support().collect::<Vec<_>>() {
                    let pred = mono.quotient_exact(&Monomial::var(v)).unwrap();
                    prop_assert_eq!(q.coefficient_at(&pred).unwrap(), 1);
                }
            }
            // chi + q = nu
            let total = q.add(&i.char_series(4, 5)).unwrap();
            prop_assert_eq!(total, nu(4, 5));
        }

        #[test]
        fn truncation_tower(gens in arb_monomials(), n1 in 0u32..4, extra in 0u32..4) {
            let i = MonomialIdeal::generated_by(gens);
            let n2 = n1 + extra;
            prop_assert_eq!(
                i.truncate_vars(n2).truncate_vars(n1),
                i.truncate_vars(n1)
            );
        }
    }
}
