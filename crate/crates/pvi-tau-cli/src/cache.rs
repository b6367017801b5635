//! Persistent cache of lattice values as JSON.
//!
//! Integers are stored as decimal strings so the file is exact and does not
//! depend on the width of a JSON number implementation.

use num_bigint::BigInt;
use num_traits::Signed;
use pvi_tau::exactfield::{Basis, FactoredForm, Rational, ZPoly};
use pvi_tau::taulattice::{KIndex, Lattice, Move, TauEntry};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cannot read or write {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("malformed cache file: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unsupported cache version {0}")]
    Version(u32),
    #[error("entry {index}: {reason}")]
    Entry { index: usize, reason: String },
    #[error("duplicate entry for {0}")]
    Duplicate(KIndex),
    #[error("cached values violate the lattice relations: {0}")]
    Inconsistent(String),
}

/// Exponents keyed by cusp, in the file's field order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuspExponents {
    #[serde(rename = "0")]
    pub zero: i64,
    #[serde(rename = "1")]
    pub one: i64,
    #[serde(rename = "-1")]
    pub minus_one: i64,
    #[serde(rename = "-2")]
    pub minus_two: i64,
    #[serde(rename = "-1/2")]
    pub minus_half: i64,
}

impl CuspExponents {
    fn from_basis(e: &[i64; 5]) -> Self {
        let at = |b: Basis| e[b.index()];
        CuspExponents {
            zero: at(Basis::Z),
            one: at(Basis::ZMinus1),
            minus_one: at(Basis::ZPlus1),
            minus_two: at(Basis::ZPlus2),
            minus_half: at(Basis::TwoZPlus1),
        }
    }

    fn to_basis(&self) -> [i64; 5] {
        let mut e = [0; 5];
        e[Basis::Z.index()] = self.zero;
        e[Basis::ZMinus1.index()] = self.one;
        e[Basis::ZPlus1.index()] = self.minus_one;
        e[Basis::ZPlus2.index()] = self.minus_two;
        e[Basis::TwoZPlus1.index()] = self.minus_half;
        e
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheEntry {
    pub k: [i64; 4],
    pub lead: String,
    pub cusp_exponents: CuspExponents,
    pub remainder: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheFile {
    pub version: u32,
    pub entries: Vec<CacheEntry>,
}

/// Canonical `p/q` with `q > 0` and `gcd(p, q) = 1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let (p, q) = s.split_once('/').ok_or_else(|| format!("lead {s:?} is not of the form p/q"))?;
    let p: BigInt = p.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let q: BigInt = q.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if !q.is_positive() {
        return Err(format!("denominator of {s:?} is not positive"));
    }
    let r = Rational::new(p, q);
    if format_rational(&r) != s {
        return Err(format!("lead {s:?} is not in lowest terms"));
    }
    Ok(r)
}

impl CacheEntry {
    pub fn from_value(k: &KIndex, v: &FactoredForm) -> Self {
        CacheEntry {
            k: k.k(),
            lead: format_rational(v.lead()),
            cusp_exponents: CuspExponents::from_basis(v.exponents()),
            remainder: v.remainder().coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    /// Parses and checks the entry: even index, canonical lead, remainder
    /// primitive with no root in Λ, orders as predicted.
    pub fn to_value(&self) -> Result<(KIndex, FactoredForm), String> {
        let k = KIndex::new(self.k).map_err(|e| e.to_string())?;
        let lead = parse_rational(&self.lead)?;
        let coeffs = self
            .remainder
            .iter()
            .map(|c| c.parse::<BigInt>().map_err(|_| format!("bad remainder coefficient {c:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        let rem = ZPoly::new(coeffs);
        if rem.coeffs().len() != self.remainder.len() {
            return Err("remainder has trailing zero coefficients".into());
        }
        let v = FactoredForm::from_normalized(lead, self.cusp_exponents.to_basis(), rem)
            .map_err(|e| format!("not in canonical factored form ({e})"))?;
        pvi_tau::taulattice::check_orders(&k, &v)?;
        Ok((k, v))
    }
}

impl CacheFile {
    pub fn empty() -> Self {
        CacheFile { version: FORMAT_VERSION, entries: vec![] }
    }

    /// Entries sorted lexicographically by `k`.
    pub fn from_values<'a>(values: impl IntoIterator<Item = (&'a KIndex, &'a FactoredForm)>) -> Self {
        let sorted: BTreeMap<KIndex, &FactoredForm> = values.into_iter().map(|(k, v)| (*k, v)).collect();
        CacheFile { version: FORMAT_VERSION, entries: sorted.iter().map(|(k, v)| CacheEntry::from_value(k, v)).collect() }
    }

    pub fn parse(text: &str) -> Result<Self, CacheError> {
        let file: CacheFile = serde_json::from_str(text)?;
        if file.version != FORMAT_VERSION {
            return Err(CacheError::Version(file.version));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("cache serialises");
        s.push('\n');
        s
    }

    /// Reads `path`; a missing file is an empty cache.
    pub fn load(path: &Path) -> Result<Self, CacheError> {
        match fs::read_to_string(path) {
            Ok(text) => Self::parse(&text),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Self::empty()),
            Err(source) => Err(CacheError::Io { path: path.display().to_string(), source }),
        }
    }

    /// Writes through a temporary file so a crash never leaves a torn cache.
    pub fn save(&self, path: &Path) -> Result<(), CacheError> {
        let io_err = |source| CacheError::Io { path: path.display().to_string(), source };
        let tmp = path.with_extension("tmp");
        let mut f = fs::File::create(&tmp).map_err(io_err)?;
        f.write_all(self.to_json().as_bytes()).map_err(io_err)?;
        f.sync_all().map_err(io_err)?;
        fs::rename(&tmp, path).map_err(io_err)
    }

    /// Validated values, in file order.
    pub fn values(&self) -> Result<Vec<(KIndex, FactoredForm)>, CacheError> {
        let mut seen = BTreeMap::new();
        let mut out = Vec::with_capacity(self.entries.len());
        for (index, e) in self.entries.iter().enumerate() {
            let (k, v) = e.to_value().map_err(|reason| CacheError::Entry { index, reason })?;
            if seen.insert(k, ()).is_some() {
                return Err(CacheError::Duplicate(k));
            }
            out.push((k, v));
        }
        Ok(out)
    }

    /// Inserts every entry into `lat` and checks the lattice relations among
    /// everything now known.
    pub fn load_into(&self, lat: &Lattice) -> Result<(), CacheError> {
        for (k, value) in self.values()? {
            lat.insert(TauEntry { k, value, provenance: Move::Loaded })
                .map_err(|e| CacheError::Inconsistent(e.to_string()))?;
        }
        match lat.verify_relations().first() {
            Some(e) => Err(CacheError::Inconsistent(e.to_string())),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pvi_tau::exactfield::rint;

    fn seed() -> (KIndex, FactoredForm) {
        (KIndex::new([0, -1, -1, 0]).unwrap(), FactoredForm::monomial(rint(-2), [2, 2, 1, -2, 1]))
    }

    #[test]
    fn entry_layout() {
        let (k, v) = seed();
        let e = CacheEntry::from_value(&k, &v);
        assert_eq!(e.lead, "-2/1");
        assert_eq!(e.cusp_exponents, CuspExponents { zero: 2, one: 1, minus_one: 2, minus_two: -2, minus_half: 1 });
        assert_eq!(e.remainder, vec!["1"]);
        assert_eq!(e.to_value().unwrap(), (k, v));
    }

    #[test]
    fn round_trip_is_exact() {
        let (k, v) = seed();
        let file = CacheFile::from_values([(&k, &v)]);
        let text = file.to_json();
        let back = CacheFile::parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn rejects_non_canonical_leads() {
        for bad in ["-4/2", "2", "1/-1", "x/1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(parse_rational("-3/4").unwrap(), Rational::new((-3).into(), 4.into()));
    }

    #[test]
    fn rejects_wrong_orders() {
        let (k, v) = seed();
        let mut e = CacheEntry::from_value(&k, &v);
        e.cusp_exponents.zero = 3;
        assert!(e.to_value().is_err());
        let mut e = CacheEntry::from_value(&k, &v);
        e.k = [0, -1, 0, 0];
        assert!(e.to_value().is_err());
    }

    #[test]
    fn rejects_a_remainder_with_a_cusp_root() {
        let (k, v) = seed();
        let mut e = CacheEntry::from_value(&k, &v);
        e.remainder = vec!["0".into(), "1".into()];
        assert!(e.to_value().is_err());
    }

    #[test]
    fn empty_cache_is_valid() {
        let text = CacheFile::empty().to_json();
        assert_eq!(CacheFile::parse(&text).unwrap().entries.len(), 0);
    }
}
