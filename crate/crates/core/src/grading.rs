//! Partition gradings: a finite set of classes for the variables, and the
//! r-multidegrees they induce.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::monomial::Monomial;

/// A set-partition of the variables into classes `1..=r`, given by explicit
/// assignments plus a default class for every unassigned index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    r: u32,
    default_class: u32,
    assigned: BTreeMap<u32, u32>,
}

impl Partition {
    pub fn new(
        r: u32,
        default_class: u32,
        assignments: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, Error> {
        if r == 0 {
            return Err(Error::parse("partition needs r >= 1"));
        }
        if default_class == 0 || default_class > r {
            return Err(Error::ClassOutOfRange {
                class: default_class,
                r,
            });
        }
        let mut assigned = BTreeMap::new();
        for (var, class) in assignments {
            if var == 0 {
                return Err(Error::parse("variable indices start at 1"));
            }
            if class == 0 || class > r {
                return Err(Error::ClassOutOfRange { class, r });
            }
            if assigned.insert(var, class).is_some() {
                return Err(Error::parse(format!("variable x{var} assigned twice")));
            }
        }
        Ok(Partition {
            r,
            default_class,
            assigned,
        })
    }

    /// The trivial partition: one class, total degree.
    pub fn total() -> Self {
        Partition {
            r: 1,
            default_class: 1,
            assigned: BTreeMap::new(),
        }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// The class of `x_var`, in `1..=r`.
    pub fn class_of(&self, var: u32) -> u32 {
        *self.assigned.get(&var).unwrap_or(&self.default_class)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Grammar: `total`, or `r=<int>;default=<class>;<class>:<idx>,<idx>,...;...`
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "total" {
            return Ok(Partition::total());
        }
        let mut parts = s.split(';');
        let r: u32 = parts
            .next()
            .and_then(|p| p.trim().strip_prefix("r="))
            .ok_or_else(|| Error::parse("expected 'r=<int>'"))?
            .trim()
            .parse()
            .map_err(|_| Error::parse("invalid r"))?;
        let default_class: u32 = parts
            .next()
            .and_then(|p| p.trim().strip_prefix("default="))
            .ok_or_else(|| Error::parse("expected 'default=<class>'"))?
            .trim()
            .parse()
            .map_err(|_| Error::parse("invalid default class"))?;
        let mut assignments = Vec::new();
        for group in parts {
            let group = group.trim();
            if group.is_empty() {
                continue;
            }
            let (class_str, idx_list) = group.split_once(':').ok_or_else(|| {
                Error::parse(format!("expected '<class>:<indices>' in '{group}'"))
            })?;
            let class: u32 = class_str
                .trim()
                .parse()
                .map_err(|_| Error::parse("invalid class number"))?;
            for idx in idx_list.split(',') {
                let var: u32 = idx.trim().parse().map_err(|_| {
                    Error::parse(format!("invalid variable index '{}'", idx.trim()))
                })?;
                assignments.push((var, class));
            }
        }
        Partition::new(r, default_class, assignments)
    }
}

/// An element of `N^r`: the multidegree of a monomial under a partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiDegree(Vec<u64>);

impl MultiDegree {
    pub fn new(components: Vec<u64>) -> Self {
        assert!(!components.is_empty(), "multidegree needs r >= 1");
        MultiDegree(components)
    }

    pub fn zero(r: u32) -> Self {
        MultiDegree(vec![0; r as usize])
    }

    pub fn components(&self) -> &[u64] {
        &self.0
    }

    pub fn r(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        assert_eq!(self.0.len(), other.0.len(), "mismatched r");
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

// Graded-lexicographic order with t1 > t2 > ... inside a degree slice:
// ascending total degree first, so t1 comes before t2 and collapsed series
// print in the natural reading order.
impl Ord for MultiDegree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiDegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Monomial {
    /// The r-multidegree of the monomial: component `l` sums the exponents
    /// of variables in class `l`. For `r = 1` this is the total degree.
    pub fn multi_degree(&self, y: &Partition) -> MultiDegree {
        let mut vec = vec![0u64; y.r() as usize];
        for &(i, e) in self.pairs() {
            vec[(y.class_of(i) - 1) as usize] += u64::from(e);
        }
        MultiDegree(vec)
    }
}
