//! Plain-text file formats. Every file starts with the `# orbitcode v1` line.
//!
//! Code-spec file:
//!
//! ```text
//! # orbitcode v1
//! version=1
//! p=3
//! k=1
//! m=2
//! t=4
//! fieldpoly=2,1,1
//! rho=1
//! ```
//!
//! `fieldpoly` holds residues mod p, low to high; `rho` holds F-symbols.
//! Two optional keys follow when set: `fieldpoly_override=true` accepts a
//! non-default defining polynomial, `rho_check=skip` drops the requirement
//! that ρ has no zero on E^×.
//!
//! Word file: one line of |L| symbols separated by single spaces.

use std::sync::Arc;

use crate::code::{CodeSpec, RhoCheck, Word};
use crate::error::{Error, Result};
use crate::galois::{FieldParams, TowerField};
use crate::polyring::{format_symbols, parse_symbols, PolyRing};

pub const HEADER: &str = "# orbitcode v1";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpecFile {
    pub p: u32,
    pub k: u32,
    pub m: u32,
    pub t: usize,
    pub fieldpoly: Vec<u32>,
    pub rho: Vec<u32>,
    pub fieldpoly_override: bool,
    pub rho_check: RhoCheck,
}

impl CodeSpecFile {
    pub fn from_spec(spec: &CodeSpec, fieldpoly_override: bool) -> Self {
        let field = spec.field();
        let params = field.params();
        CodeSpecFile {
            p: params.p(),
            k: params.k(),
            m: params.m(),
            t: spec.t(),
            fieldpoly: field.defining_poly().to_vec(),
            rho: PolyRing::new(field).to_symbols(spec.rho()),
            fieldpoly_override,
            rho_check: if spec.distance_guarantee() {
                RhoCheck::Enforce
            } else {
                RhoCheck::Skip
            },
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut version = None;
        let (mut p, mut k, mut m, mut t) = (None, None, None, None);
        let (mut fieldpoly, mut rho) = (None, None);
        let mut fieldpoly_override = false;
        let mut rho_check = RhoCheck::Enforce;
        for line in data_lines(text) {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {line:?}")))?;
            let value = value.trim();
            match key.trim() {
                "version" => version = Some(parse_num::<u32>(key, value)?),
                "p" => p = Some(parse_num(key, value)?),
                "k" => k = Some(parse_num(key, value)?),
                "m" => m = Some(parse_num(key, value)?),
                "t" => t = Some(parse_num(key, value)?),
                "fieldpoly" => fieldpoly = Some(parse_symbols(value)?),
                "rho" => rho = Some(parse_symbols(value)?),
                "fieldpoly_override" => fieldpoly_override = parse_bool(value)?,
                "rho_check" => {
                    rho_check = match value {
                        "enforce" => RhoCheck::Enforce,
                        "skip" => RhoCheck::Skip,
                        other => return Err(Error::Parse(format!("bad rho_check {other:?}"))),
                    }
                }
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        match version {
            Some(VERSION) => {}
            Some(v) => return Err(Error::Parse(format!("unsupported version {v}"))),
            None => return Err(Error::Parse("missing version".into())),
        }
        let missing = |name: &str| Error::Parse(format!("missing key {name}"));
        Ok(CodeSpecFile {
            p: p.ok_or_else(|| missing("p"))?,
            k: k.ok_or_else(|| missing("k"))?,
            m: m.ok_or_else(|| missing("m"))?,
            t: t.ok_or_else(|| missing("t"))?,
            fieldpoly: fieldpoly.ok_or_else(|| missing("fieldpoly"))?,
            rho: rho.ok_or_else(|| missing("rho"))?,
            fieldpoly_override,
            rho_check,
        })
    }

    pub fn serialize(&self) -> String {
        let mut out = format!(
            "{HEADER}\nversion={VERSION}\np={}\nk={}\nm={}\nt={}\nfieldpoly={}\nrho={}\n",
            self.p,
            self.k,
            self.m,
            self.t,
            format_symbols(&self.fieldpoly),
            format_symbols(&self.rho)
        );
        if self.fieldpoly_override {
            out.push_str("fieldpoly_override=true\n");
        }
        if self.rho_check == RhoCheck::Skip {
            out.push_str("rho_check=skip\n");
        }
        out
    }

    pub fn params(&self) -> Result<FieldParams> {
        FieldParams::new(self.p, self.k, self.m)
    }

    /// Builds the field; the recorded polynomial must be the default choice
    /// unless the override flag is set.
    pub fn field(&self) -> Result<TowerField> {
        let params = self.params()?;
        if self.fieldpoly_override {
            return TowerField::with_defining_poly(params, &self.fieldpoly);
        }
        let field = TowerField::new(params)?;
        if field.defining_poly() != self.fieldpoly.as_slice() {
            return Err(Error::BadDefiningPolynomial(format!(
                "fieldpoly={} differs from the default {}; set fieldpoly_override=true",
                format_symbols(&self.fieldpoly),
                format_symbols(field.defining_poly())
            )));
        }
        Ok(field)
    }

    pub fn to_spec(&self) -> Result<CodeSpec> {
        let field = Arc::new(self.field()?);
        let rho = PolyRing::new(&field).from_symbols(&self.rho)?;
        CodeSpec::new(field, self.t, rho, self.rho_check)
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Parse(format!("bad value {value:?} for {key}")))
}

fn parse_bool(value: &str) -> Result<bool> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(Error::Parse(format!("bad boolean {other:?}"))),
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Space-separated symbol line.
pub fn format_word_line(symbols: &[u32]) -> String {
    symbols
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_word_file(field: &TowerField, word: &Word) -> String {
    format!("{HEADER}\n{}\n", format_word_line(&word.symbols(field)))
}

/// Reads a single line of `len` symbols, each below q.
pub fn parse_symbol_line(text: &str, q: u64, len: usize) -> Result<Vec<u32>> {
    let mut lines = data_lines(text);
    let line = lines
        .next()
        .ok_or_else(|| Error::Parse("no symbol line".into()))?;
    if lines.next().is_some() {
        return Err(Error::Parse("more than one symbol line".into()));
    }
    let symbols = line
        .split_whitespace()
        .map(|s| {
            let v: u64 = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad symbol {s:?}")))?;
            if v >= q {
                return Err(Error::SymbolOutOfRange { symbol: v, q });
            }
            Ok(v as u32)
        })
        .collect::<Result<Vec<_>>>()?;
    if symbols.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            got: symbols.len(),
        });
    }
    Ok(symbols)
}

pub fn parse_word_file(text: &str, field: &TowerField, len: usize) -> Result<Word> {
    let symbols = parse_symbol_line(text, field.q(), len)?;
    Word::from_symbols(field, &symbols)
}
