//! Signed index compositions.
//!
//! An entry `-p` is the barred entry `p̄`: magnitude `p`, sign `-1`, which
//! contributes `(-1)^n / n^p` to the nested sum.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{MzvError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EntrySign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Entry {
    pub magnitude: u32,
    pub sign: EntrySign,
}

impl Entry {
    pub fn new(signed: i64) -> Result<Self> {
        if signed == 0 {
            return Err(MzvError::Domain("index entries must be nonzero".into()));
        }
        let magnitude = u32::try_from(signed.unsigned_abs())
            .map_err(|_| MzvError::Domain(format!("entry {signed} is too large")))?;
        let sign = if signed < 0 { EntrySign::Minus } else { EntrySign::Plus };
        Ok(Entry { magnitude, sign })
    }

    pub fn signed(self) -> i64 {
        match self.sign {
            EntrySign::Plus => self.magnitude as i64,
            EntrySign::Minus => -(self.magnitude as i64),
        }
    }

    pub fn is_alternating(self) -> bool {
        self.sign == EntrySign::Minus
    }
}

/// Strict (`n1 > n2 > ...`) or star (`n1 >= n2 >= ...`) summation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SumKind {
    Strict,
    Star,
}

impl SumKind {
    pub fn keyword(self) -> &'static str {
        match self {
            SumKind::Strict => "zeta",
            SumKind::Star => "zetastar",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedIndex {
    entries: Vec<Entry>,
    kind: SumKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexStats {
    pub depth: usize,
    pub weight: u64,
    pub admissible: bool,
}

impl SignedIndex {
    pub fn new(kind: SumKind, entries: Vec<Entry>) -> Self {
        SignedIndex { entries, kind }
    }

    /// Builds an index from signed integers; negative values are barred.
    pub fn from_signed(kind: SumKind, signed: &[i64]) -> Result<Self> {
        let entries = signed.iter().map(|&s| Entry::new(s)).collect::<Result<Vec<_>>>()?;
        Ok(SignedIndex { entries, kind })
    }

    /// Panicking shorthand for literals known to be valid.
    pub fn strict(signed: &[i64]) -> Self {
        Self::from_signed(SumKind::Strict, signed).expect("nonzero entries")
    }

    /// Panicking shorthand for literals known to be valid.
    pub fn star(signed: &[i64]) -> Self {
        Self::from_signed(SumKind::Star, signed).expect("nonzero entries")
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn kind(&self) -> SumKind {
        self.kind
    }

    pub fn signed(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.signed()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    pub fn weight(&self) -> u64 {
        self.entries.iter().map(|e| e.magnitude as u64).sum()
    }

    pub fn admissible(&self) -> bool {
        match self.entries.first() {
            None => true,
            Some(e) => e.sign == EntrySign::Minus || e.magnitude > 1,
        }
    }

    pub fn stats(&self) -> IndexStats {
        IndexStats { depth: self.depth(), weight: self.weight(), admissible: self.admissible() }
    }

    /// Same entries under the other summation kind.
    pub fn with_kind(&self, kind: SumKind) -> Self {
        SignedIndex { entries: self.entries.clone(), kind }
    }

    /// Leading entry has sign -1.
    pub fn leading_alternating(&self) -> bool {
        self.entries.first().is_some_and(|e| e.is_alternating())
    }
}

fn parse_int_list(body: &str) -> Result<Vec<i64>> {
    let body = body.trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let ok = !tok.is_empty()
                && tok.strip_prefix('-').unwrap_or(tok).bytes().all(|b| b.is_ascii_digit())
                && tok != "-";
            if !ok {
                return Err(MzvError::Syntax(format!("bad integer `{tok}`")));
            }
            tok.parse::<i64>().map_err(|_| MzvError::Syntax(format!("bad integer `{tok}`")))
        })
        .collect()
}

/// Splits `name(args)` into its parts.
fn split_call(text: &str) -> Result<(&str, &str)> {
    let t = text.trim();
    let open = t.find('(').ok_or_else(|| MzvError::Syntax(format!("expected `name(...)`, got `{t}`")))?;
    let body = t[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| MzvError::Syntax(format!("missing closing parenthesis in `{t}`")))?;
    Ok((t[..open].trim(), body))
}

impl FromStr for SignedIndex {
    type Err = MzvError;

    fn from_str(text: &str) -> Result<Self> {
        let (name, body) = split_call(text)?;
        let kind = match name {
            "zeta" => SumKind::Strict,
            "zetastar" => SumKind::Star,
            other => return Err(MzvError::Syntax(format!("unknown function `{other}`"))),
        };
        SignedIndex::from_signed(kind, &parse_int_list(body)?)
    }
}

/// Parses `zeta(...)` / `zetastar(...)`.
pub fn parse_index(text: &str) -> Result<SignedIndex> {
    text.parse()
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind.keyword())?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", e.signed())?;
        }
        f.write_str(")")
    }
}

/// Anything the evaluator accepts: an (alternating) MZV/MZSV or a multiple
/// polylogarithm at 1/2, written `li(s1,...,sk)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Zeta(SignedIndex),
    LiHalf(Vec<u32>),
}

impl FromStr for Target {
    type Err = MzvError;

    fn from_str(text: &str) -> Result<Self> {
        let (name, body) = split_call(text)?;
        if name != "li" {
            return text.parse().map(Target::Zeta);
        }
        let ints = parse_int_list(body)?;
        if ints.is_empty() {
            return Err(MzvError::Domain("li() needs at least one exponent".into()));
        }
        let exps = ints
            .iter()
            .map(|&s| {
                u32::try_from(s)
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| MzvError::Domain(format!("li exponents must be positive, got {s}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Target::LiHalf(exps))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Zeta(ix) => ix.fmt(f),
            Target::LiHalf(exps) => {
                let parts: Vec<String> = exps.iter().map(|e| e.to_string()).collect();
                write!(f, "li({})", parts.join(","))
            }
        }
    }
}

/// `{v}_n`: `v` repeated `n` times.
pub fn rep(v: i64, n: usize) -> impl Iterator<Item = i64> {
    std::iter::repeat_n(v, n)
}
