//! Degree-indexed generator streams: ideal families in countably many
//! variables with finitely many minimal generators per total degree.

use crate::error::Error;
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// A locally finite family of generators, indexed by total degree. Each
/// call must be deterministic and emit only monomials of the requested
/// degree.
pub trait GeneratorStream {
    fn generators_of_degree(&self, d: u32) -> Vec<Monomial>;
}

/// The stream with no generators (the zero ideal).
pub struct EmptyStream;

impl GeneratorStream for EmptyStream {
    fn generators_of_degree(&self, _d: u32) -> Vec<Monomial> {
        Vec::new()
    }
}

/// The complete-intersection family `x_i^{d_i}` for `i = 1..=r`.
pub struct PowersStream {
    degrees: Vec<u32>,
}

impl PowersStream {
    pub fn new(degrees: Vec<u32>) -> Result<Self, Error> {
        if degrees.is_empty() {
            return Err(Error::parse("powers stream needs at least one degree"));
        }
        if degrees.contains(&0) {
            return Err(Error::parse("powers stream degrees start at 1"));
        }
        Ok(PowersStream { degrees })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }
}

impl GeneratorStream for PowersStream {
    fn generators_of_degree(&self, d: u32) -> Vec<Monomial> {
        self.degrees
            .iter()
            .enumerate()
            .filter(|&(_, &di)| di == d)
            .map(|(i, &di)| Monomial::var_pow(i as u32 + 1, di))
            .collect()
    }
}

/// The two-parameter family `a_i = x1*x2*...*x_{i-1}*x_i^2` for `i >= 1`
/// and `b_j = x1*x2*...*x_{j-2}*x_j^6` for `j >= 2`. At most two
/// generators per degree: `a_{d-1}` in degree `d >= 2` and `b_{d-4}` in
/// degree `d >= 6`.
pub struct Example23Stream;

impl Example23Stream {
    fn a(i: u32) -> Monomial {
        let pairs = (1..i).map(|v| (v, 1)).chain([(i, 2)]);
        Monomial::from_pairs(pairs).expect("distinct indices")
    }

    fn b(j: u32) -> Monomial {
        debug_assert!(j >= 2);
        let pairs = (1..=j.saturating_sub(2)).map(|v| (v, 1)).chain([(j, 6)]);
        Monomial::from_pairs(pairs).expect("distinct indices")
    }
}

impl GeneratorStream for Example23Stream {
    fn generators_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        if d >= 2 {
            out.push(Self::a(d - 1)); // tdeg a_i = i + 1
        }
        if d >= 6 {
            out.push(Self::b(d - 4)); // tdeg b_j = j + 4
        }
        out
    }
}

/// Realize a stream up to a total degree: minimalize everything it emits
/// in degrees `1..=max_degree`.
pub fn realize_stream(
    stream: &dyn GeneratorStream,
    max_degree: u32,
) -> Result<MonomialIdeal, Error> {
    let mut gens = Vec::new();
    for d in 1..=max_degree {
        for m in stream.generators_of_degree(d) {
            if m.tdeg() != u64::from(d) {
                return Err(Error::StreamDegreeMismatch {
                    degree: d,
                    monomial: m.to_string(),
                });
            }
            gens.push(m);
        }
    }
    Ok(MonomialIdeal::generated_by(gens))
}

/// Whether a CLI ideal source names a built-in stream rather than a file.
pub fn is_stream_name(name: &str) -> bool {
    name == "example-23gen" || name.starts_with("powers:")
}

/// Parse a built-in stream name: `example-23gen` or `powers:d1,d2,...,dr`.
pub fn parse_stream_name(name: &str) -> Result<Box<dyn GeneratorStream>, Error> {
    if name == "example-23gen" {
        return Ok(Box::new(Example23Stream));
    }
    if let Some(list) = name.strip_prefix("powers:") {
        let degrees = list
            .split(',')
            .map(|d| {
                d.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse(format!("invalid degree '{}'", d.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Box::new(PowersStream::new(degrees)?));
    }
    Err(Error::parse(format!("unknown stream '{name}'")))
}
