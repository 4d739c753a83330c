//! Standard lattice constructors and the `oml v1` text format.
//!
//! ```text
//! oml v1
//! elements: 6
//! names: 0 a b a' b' 1
//! covers: 0 1
//! covers: 1 5
//! ...
//! ortho: 5 3 4 1 2 0
//! ```
//!
//! `#` starts a comment. `covers: i j` means `j` covers `i`; the order is the
//! reflexive-transitive closure of the covers. Bottom and top are inferred.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::free;
use crate::lattice::{validate, Element, Oml, RawLattice, ValidationError};

/// Largest lattice any constructor will tabulate unless configured otherwise.
pub const DEFAULT_MAX_SIZE: usize = 4096;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("Boolean exponent {0} out of range 0..=16")]
    BooleanExponent(u32),
    #[error("MO(n) needs at least one block, got {0}")]
    MoBlocks(usize),
    #[error("lattice of {size} elements exceeds the maximum of {max}")]
    TooLarge { size: usize, max: usize },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: element {index} does not exist")]
    DanglingReference { line: usize, index: usize },
    #[error("line {line}: duplicate cover {lower} {upper}")]
    DuplicateCover {
        line: usize,
        lower: usize,
        upper: usize,
    },
    #[error("line {line}: ortho is not a permutation of the elements")]
    OrthoNotPermutation { line: usize },
    #[error("unknown lattice spec `{0}`")]
    UnknownSpec(String),
    #[error("invalid lattice: {error} (witness: {})", witness_names.join(", "))]
    Invalid {
        error: ValidationError,
        witness_names: Vec<String>,
    },
}

fn check_size(size: usize, max: usize) -> Result<(), CatalogError> {
    if size > max {
        Err(CatalogError::TooLarge { size, max })
    } else {
        Ok(())
    }
}

/// The Boolean algebra 2^k: element index is its bitmask.
pub fn boolean_algebra(k: u32) -> Result<Oml, CatalogError> {
    boolean_algebra_max(k, DEFAULT_MAX_SIZE)
}

pub fn boolean_algebra_max(k: u32, max: usize) -> Result<Oml, CatalogError> {
    if k > 16 {
        return Err(CatalogError::BooleanExponent(k));
    }
    let n = 1usize << k;
    check_size(n, max)?;
    let mask = (n - 1) as u32;
    let mut leq = vec![false; n * n];
    let mut meet = vec![0u32; n * n];
    let mut join = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            leq[a * n + b] = a & !b == 0;
            meet[a * n + b] = (a & b) as u32;
            join[a * n + b] = (a | b) as u32;
        }
    }
    let ortho = (0..n as u32).map(|a| !a & mask).collect();
    Ok(Oml::from_tables(leq, meet, join, ortho, None))
}

fn mo_names(n: usize) -> Vec<String> {
    let atom = |i: usize| {
        if n <= 26 {
            ((b'a' + i as u8) as char).to_string()
        } else {
            format!("a{}", i + 1)
        }
    };
    let mut names = vec!["0".to_string()];
    names.extend((0..n).map(atom));
    names.extend((0..n).map(|i| format!("{}'", atom(i))));
    names.push("1".to_string());
    names
}

/// MO(n): bottom, atoms `1..=n`, their complements `n+1..=2n`, then top.
pub fn mo(n: usize) -> Result<Oml, CatalogError> {
    mo_max(n, DEFAULT_MAX_SIZE)
}

pub fn mo_max(n: usize, max: usize) -> Result<Oml, CatalogError> {
    if n < 1 {
        return Err(CatalogError::MoBlocks(n));
    }
    let size = 2 * n + 2;
    check_size(size, max)?;
    let (bottom, top) = (0, size - 1);
    let mut leq = vec![false; size * size];
    let mut meet = vec![0u32; size * size];
    let mut join = vec![0u32; size * size];
    for a in 0..size {
        for b in 0..size {
            let le = a == b || a == bottom || b == top;
            leq[a * size + b] = le;
            let (m, j) = if a == b {
                (a, a)
            } else if le {
                (a, b)
            } else if leq[b * size + a] || b == bottom || a == top {
                (b, a)
            } else {
                (bottom, top)
            };
            meet[a * size + b] = m as u32;
            join[a * size + b] = j as u32;
        }
    }
    let ortho = (0..size)
        .map(|a| match a {
            0 => top,
            _ if a == top => bottom,
            _ if a <= n => a + n,
            _ => a - n,
        } as u32)
        .collect();
    Ok(Oml::from_tables(leq, meet, join, ortho, Some(mo_names(n))))
}

/// Direct product; the pair `(i, j)` has index `i * right.size() + j`.
pub fn product(left: &Oml, right: &Oml) -> Result<Oml, CatalogError> {
    product_max(left, right, DEFAULT_MAX_SIZE)
}

pub fn product_max(left: &Oml, right: &Oml, max: usize) -> Result<Oml, CatalogError> {
    let (p, q) = (left.size(), right.size());
    let n = p.saturating_mul(q);
    check_size(n, max)?;
    let split = |e: Element| (e / q, e % q);
    let mut leq = vec![false; n * n];
    let mut meet = vec![0u32; n * n];
    let mut join = vec![0u32; n * n];
    for a in 0..n {
        let (a1, a2) = split(a);
        for b in 0..n {
            let (b1, b2) = split(b);
            leq[a * n + b] = left.leq(a1, b1) && right.leq(a2, b2);
            meet[a * n + b] = (left.meet(a1, b1) * q + right.meet(a2, b2)) as u32;
            join[a * n + b] = (left.join(a1, b1) * q + right.join(a2, b2)) as u32;
        }
    }
    let ortho = (0..n)
        .map(|a| {
            let (a1, a2) = split(a);
            (left.ortho(a1) * q + right.ortho(a2)) as u32
        })
        .collect();
    let names = (0..n)
        .map(|a| {
            let (a1, a2) = split(a);
            format!("({},{})", left.name(a1), right.name(a2))
        })
        .collect();
    Ok(Oml::from_tables(leq, meet, join, ortho, Some(names)))
}

/// The benzene ring O6: `0 < a < b < 1`, `0 < b′ < a′ < 1`. An ortholattice
/// that violates the orthomodular law.
pub fn benzene() -> RawLattice {
    // 0, a, b, b', a', 1
    let covers = [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)];
    RawLattice::from_covers(6, &covers, vec![5, 4, 3, 2, 1, 0]).with_names(
        ["0", "a", "b", "b'", "a'", "1"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    )
}

/// The lattices every exhaustive property is checked against:
/// `bool0..bool4`, `mo1..mo4`, `prod:bool2,mo2` and `free2`.
pub fn standard_catalog() -> Vec<(String, Oml)> {
    let mut out = Vec::new();
    for k in 0..=4 {
        out.push((format!("bool{k}"), boolean_algebra(k).expect("small")));
    }
    for n in 1..=4 {
        out.push((format!("mo{n}"), mo(n).expect("small")));
    }
    let b2 = boolean_algebra(2).expect("small");
    let m2 = mo(2).expect("small");
    out.push(("prod:bool2,mo2".into(), product(&b2, &m2).expect("small")));
    out.push(("free2".into(), free::make_free().oml));
    out
}

/// Parses the `oml v1` format.
pub fn parse_lattice(text: &str) -> Result<RawLattice, CatalogError> {
    let syntax = |line: usize, msg: &str| CatalogError::Syntax {
        line,
        msg: msg.to_string(),
    };
    let mut seen_magic = false;
    let mut size: Option<usize> = None;
    let mut names: Option<Vec<String>> = None;
    let mut covers: Vec<(Element, Element)> = Vec::new();
    let mut ortho: Option<Vec<Element>> = None;
    let mut last_line = 0;

    for (idx, raw_line) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if !seen_magic {
            if line != "oml v1" {
                return Err(syntax(line_no, "expected `oml v1` header"));
            }
            seen_magic = true;
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(line_no, "expected `key: value`"))?;
        let rest = rest.trim();
        let need_size = || size.ok_or_else(|| syntax(line_no, "`elements:` must come first"));
        let index = |tok: &str, n: usize| -> Result<Element, CatalogError> {
            let i: usize = tok
                .parse()
                .map_err(|_| syntax(line_no, &format!("bad index `{tok}`")))?;
            if i >= n {
                return Err(CatalogError::DanglingReference {
                    line: line_no,
                    index: i,
                });
            }
            Ok(i)
        };
        match key.trim() {
            "elements" => {
                if size.is_some() {
                    return Err(syntax(line_no, "duplicate `elements:`"));
                }
                let n: usize = rest
                    .parse()
                    .map_err(|_| syntax(line_no, "bad element count"))?;
                if n == 0 {
                    return Err(syntax(line_no, "element count must be positive"));
                }
                size = Some(n);
            }
            "names" => {
                let n = need_size()?;
                if names.is_some() {
                    return Err(syntax(line_no, "duplicate `names:`"));
                }
                let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if list.len() != n {
                    return Err(syntax(line_no, &format!("expected {n} names")));
                }
                let mut sorted = list.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != n {
                    return Err(syntax(line_no, "names must be distinct"));
                }
                names = Some(list);
            }
            "covers" => {
                let n = need_size()?;
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(syntax(line_no, "expected `covers: i j`"));
                }
                let (i, j) = (index(toks[0], n)?, index(toks[1], n)?);
                if covers.contains(&(i, j)) {
                    return Err(CatalogError::DuplicateCover {
                        line: line_no,
                        lower: i,
                        upper: j,
                    });
                }
                covers.push((i, j));
            }
            "ortho" => {
                let n = need_size()?;
                if ortho.is_some() {
                    return Err(syntax(line_no, "duplicate `ortho:`"));
                }
                let list = rest
                    .split_whitespace()
                    .map(|t| index(t, n))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut seen = vec![false; n];
                if list.len() != n || list.iter().any(|&o| std::mem::replace(&mut seen[o], true)) {
                    return Err(CatalogError::OrthoNotPermutation { line: line_no });
                }
                ortho = Some(list);
            }
            other => return Err(syntax(line_no, &format!("unknown key `{other}`"))),
        }
    }
    if !seen_magic {
        return Err(syntax(last_line.max(1), "missing `oml v1` header"));
    }
    let size = size.ok_or_else(|| syntax(last_line, "missing `elements:`"))?;
    let ortho = ortho.ok_or_else(|| syntax(last_line, "missing `ortho:`"))?;
    if covers.is_empty() && size > 1 {
        return Err(syntax(last_line, "missing `covers:`"));
    }
    let mut raw = RawLattice::from_covers(size, &covers, ortho);
    raw.names = names;
    Ok(raw)
}

/// Renders `l` in the `oml v1` format. Output is deterministic.
pub fn format_lattice(l: &Oml) -> String {
    let mut out = String::from("oml v1\n");
    let _ = writeln!(out, "elements: {}", l.size());
    if let Some(names) = l.names() {
        let _ = writeln!(out, "names: {}", names.join(" "));
    }
    for (i, j) in l.covers() {
        let _ = writeln!(out, "covers: {i} {j}");
    }
    let ortho: Vec<String> = l.elements().map(|e| l.ortho(e).to_string()).collect();
    let _ = writeln!(out, "ortho: {}", ortho.join(" "));
    out
}

pub fn read_lattice(path: &Path) -> Result<RawLattice, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_lattice(&text)
}

pub fn write_lattice(l: &Oml, path: &Path) -> Result<(), CatalogError> {
    std::fs::write(path, format_lattice(l)).map_err(|source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Validates `raw`, translating a failure into a named witness.
pub fn validate_named(raw: &RawLattice) -> Result<Oml, CatalogError> {
    validate(raw).map_err(|error| CatalogError::Invalid {
        witness_names: error.witness().into_iter().map(|e| raw.name(e)).collect(),
        error,
    })
}

/// A lattice named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeSpec {
    Boolean(u32),
    Mo(usize),
    Product(Box<LatticeSpec>, Box<LatticeSpec>),
    Free2,
    Benzene,
    File(PathBuf),
}

impl LatticeSpec {
    fn parse_simple(s: &str) -> Result<LatticeSpec, CatalogError> {
        let unknown = || CatalogError::UnknownSpec(s.to_string());
        if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err(unknown());
            }
            return Ok(LatticeSpec::File(PathBuf::from(path)));
        }
        match s {
            "free2" => return Ok(LatticeSpec::Free2),
            "benzene" => return Ok(LatticeSpec::Benzene),
            _ => {}
        }
        if let Some(k) = s.strip_prefix("bool") {
            return k.parse().map(LatticeSpec::Boolean).map_err(|_| unknown());
        }
        if let Some(n) = s.strip_prefix("mo") {
            return n.parse().map(LatticeSpec::Mo).map_err(|_| unknown());
        }
        Err(unknown())
    }

    /// Returns the raw order data for specs that are built from raw data
    /// (`benzene`, `file:`), or `None` for tabulated constructors.
    pub fn raw(&self) -> Result<Option<RawLattice>, CatalogError> {
        match self {
            LatticeSpec::Benzene => Ok(Some(benzene())),
            LatticeSpec::File(p) => read_lattice(p).map(Some),
            _ => Ok(None),
        }
    }

    /// Builds and validates the lattice, refusing anything above `max` elements.
    pub fn resolve(&self, max: usize) -> Result<Oml, CatalogError> {
        match self {
            LatticeSpec::Boolean(k) => boolean_algebra_max(*k, max),
            LatticeSpec::Mo(n) => mo_max(*n, max),
            LatticeSpec::Product(a, b) => {
                let (a, b) = (a.resolve(max)?, b.resolve(max)?);
                product_max(&a, &b, max)
            }
            LatticeSpec::Free2 => {
                check_size(96, max)?;
                Ok(free::make_free().oml)
            }
            LatticeSpec::Benzene | LatticeSpec::File(_) => {
                let raw = self.raw()?.expect("raw spec");
                check_size(raw.size, max)?;
                validate_named(&raw)
            }
        }
    }
}

impl FromStr for LatticeSpec {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix("prod:") {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| CatalogError::UnknownSpec(s.to_string()))?;
            return Ok(LatticeSpec::Product(
                Box::new(Self::parse_simple(a)?),
                Box::new(Self::parse_simple(b)?),
            ));
        }
        Self::parse_simple(s)
    }
}
